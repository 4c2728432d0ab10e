//! Mod-2 reductions of the E-family representations.
//!
//! Matrices have dimension at most 8, so a row is a `u8` bitmask (bit `j`
//! is column `j`, 0-based) and a vector is a `u8` as well. Two actions are
//! available: the column action `v -> M v` (the default; the fixed
//! vector and the invariant forms live there) and the row action
//! `x -> x M`, its dual.

use std::collections::HashMap;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::bfs;
use crate::error::{Error, Result};
use crate::exact::ExactMatrix;
use crate::matrix_reps::{perm_matrix, Representation};
use crate::perm::{factorial, KSubset};
use crate::progenitor::{Family, FamilySpec};
use crate::report::VerificationReport;

pub const MAX_DIM: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Action {
    /// `v -> M v`
    Column,
    /// `x -> x M`
    Row,
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Gf2Matrix {
    dim: usize,
    rows: Vec<u8>,
}

fn parity(x: u8) -> bool {
    x.count_ones() % 2 == 1
}

fn mask(dim: usize) -> u8 {
    if dim >= 8 {
        0xff
    } else {
        (1u8 << dim) - 1
    }
}

impl Gf2Matrix {
    pub fn identity(dim: usize) -> Self {
        assert!(dim <= MAX_DIM, "dimension {dim} exceeds {MAX_DIM}");
        Gf2Matrix {
            dim,
            rows: (0..dim).map(|i| 1u8 << i).collect(),
        }
    }

    pub fn from_rows(rows: Vec<u8>) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 || dim > MAX_DIM {
            return Err(Error::BadDimension {
                got: dim,
                want: format!("1..={MAX_DIM}"),
            });
        }
        if rows.iter().any(|&r| r & !mask(dim) != 0) {
            return Err(Error::Parse("row has bits beyond the dimension".into()));
        }
        Ok(Gf2Matrix { dim, rows })
    }

    /// Rows written as strings of `0`/`1`, first column first.
    pub fn from_strings<S: AsRef<str>>(rows: &[S]) -> Result<Self> {
        let parsed = rows
            .iter()
            .map(|r| {
                let r = r.as_ref();
                if r.len() != rows.len() {
                    return Err(Error::Parse(format!("row {r:?} has wrong length")));
                }
                r.chars().enumerate().try_fold(0u8, |acc, (j, c)| match c {
                    '0' => Ok(acc),
                    '1' => Ok(acc | 1 << j),
                    _ => Err(Error::Parse(format!("bad bit {c:?}"))),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Gf2Matrix::from_rows(parsed)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rows(&self) -> &[u8] {
        &self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i] >> j & 1 == 1
    }

    pub fn row_strings(&self) -> Vec<String> {
        self.rows
            .iter()
            .map(|&r| vector_string(r, self.dim))
            .collect()
    }

    pub fn multiply(&self, other: &Gf2Matrix) -> Result<Gf2Matrix> {
        if self.dim != other.dim {
            return Err(Error::DegreeMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        let rows = self.rows.iter().map(|&r| other.apply_row(r)).collect();
        Ok(Gf2Matrix {
            dim: self.dim,
            rows,
        })
    }

    pub fn transpose(&self) -> Gf2Matrix {
        let rows = (0..self.dim)
            .map(|j| (0..self.dim).fold(0u8, |acc, i| acc | (u8::from(self.get(i, j)) << i)))
            .collect();
        Gf2Matrix {
            dim: self.dim,
            rows,
        }
    }

    pub fn is_identity(&self) -> bool {
        *self == Gf2Matrix::identity(self.dim)
    }

    pub fn is_permutation(&self) -> bool {
        self.rows.iter().all(|r| r.count_ones() == 1)
            && self.rows.iter().fold(0u8, |a, r| a | r) == mask(self.dim)
    }

    /// `M v`.
    pub fn apply(&self, v: u8) -> u8 {
        self.rows
            .iter()
            .enumerate()
            .fold(0u8, |acc, (i, &r)| acc | (u8::from(parity(r & v)) << i))
    }

    /// `x M`.
    pub fn apply_row(&self, x: u8) -> u8 {
        self.rows
            .iter()
            .enumerate()
            .filter(|&(i, _)| x >> i & 1 == 1)
            .fold(0u8, |acc, (_, &r)| acc ^ r)
    }

    pub fn act(&self, action: Action, v: u8) -> u8 {
        match action {
            Action::Column => self.apply(v),
            Action::Row => self.apply_row(v),
        }
    }

    fn sorted_rows(&self, movable: usize) -> Gf2Matrix {
        let mut c = self.clone();
        c.rows[..movable].sort_unstable_by(|a, b| b.cmp(a));
        c
    }
}

impl fmt::Display for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in self.row_strings() {
            writeln!(f, "{r}")?;
        }
        Ok(())
    }
}

impl Serialize for Gf2Matrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.row_strings().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Gf2Matrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<String>::deserialize(d)?;
        Gf2Matrix::from_strings(&rows).map_err(serde::de::Error::custom)
    }
}

/// `0`/`1` string, coordinate 1 first.
pub fn vector_string(v: u8, dim: usize) -> String {
    (0..dim)
        .map(|j| if v >> j & 1 == 1 { '1' } else { '0' })
        .collect()
}

pub fn ones(dim: usize) -> u8 {
    mask(dim)
}

/// Entry `p/q` becomes `p * q^{-1} mod 2`, which for odd `q` is `p mod 2`.
pub fn reduce_mod2(m: &ExactMatrix) -> Result<Gf2Matrix> {
    let dim = m.dim();
    if dim > MAX_DIM {
        return Err(Error::BadDimension {
            got: dim,
            want: format!("1..={MAX_DIM}"),
        });
    }
    let mut rows = vec![0u8; dim];
    for (i, row) in rows.iter_mut().enumerate() {
        for j in 0..dim {
            let x = m.get(i, j);
            if x.denom().is_even() {
                return Err(Error::EvenDenominator(x.to_string()));
            }
            if x.numer().is_odd() {
                *row |= 1 << j;
            }
        }
    }
    Ok(Gf2Matrix { dim, rows })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FormKind {
    /// `Q(x) = sum_{i<j} x_i x_j`, polar form `B(x,y) = Q(x+y)+Q(x)+Q(y)`.
    SumOfDistinctProducts,
    /// `B(x,y) = x J y^T` with `J` all ones.
    BilinearJ,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Gf2QuadraticForm {
    pub kind: FormKind,
    pub dim: usize,
}

impl Gf2QuadraticForm {
    pub fn sum_of_distinct_products(dim: usize) -> Self {
        Gf2QuadraticForm {
            kind: FormKind::SumOfDistinctProducts,
            dim,
        }
    }

    pub fn bilinear_j(dim: usize) -> Self {
        Gf2QuadraticForm {
            kind: FormKind::BilinearJ,
            dim,
        }
    }

    /// `Q(x)`; for the J kind, `B(x,x)`.
    pub fn quadratic(&self, x: u8) -> bool {
        let w = x.count_ones();
        match self.kind {
            FormKind::SumOfDistinctProducts => (w * w.saturating_sub(1) / 2) % 2 == 1,
            FormKind::BilinearJ => w % 2 == 1,
        }
    }

    pub fn bilinear(&self, x: u8, y: u8) -> bool {
        match self.kind {
            FormKind::SumOfDistinctProducts => {
                self.quadratic(x ^ y) ^ self.quadratic(x) ^ self.quadratic(y)
            }
            FormKind::BilinearJ => parity(x) && parity(y),
        }
    }
}

impl fmt::Display for Gf2QuadraticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            FormKind::SumOfDistinctProducts => write!(f, "sum_(i<j) x_i x_j on GF(2)^{}", self.dim),
            FormKind::BilinearJ => write!(f, "x J_{} y^T", self.dim),
        }
    }
}

/// Quadratic kind: `Q(g x) = Q(x)` for all `x`. J kind: `B(g x, g y) = B(x, y)`
/// for all pairs. `g x` is taken in the given action.
pub fn preserves_form(m: &Gf2Matrix, f: &Gf2QuadraticForm, action: Action) -> bool {
    if m.dim() != f.dim {
        return false;
    }
    let all = 0..=mask(f.dim);
    match f.kind {
        FormKind::SumOfDistinctProducts => all
            .into_iter()
            .all(|x| f.quadratic(m.act(action, x)) == f.quadratic(x)),
        FormKind::BilinearJ => all.clone().all(|x| {
            let gx = m.act(action, x);
            (0..=mask(f.dim)).all(|y| f.bilinear(gx, m.act(action, y)) == f.bilinear(x, y))
        }),
    }
}

/// Reduced row echelon form of a list of vectors; returns `(rows, pivots)`.
fn echelon(vectors: &[u8]) -> (Vec<u8>, Vec<usize>) {
    let mut rows: Vec<u8> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    for &v in vectors {
        let mut v = v;
        for (r, &p) in rows.iter().zip(&pivots) {
            if v >> p & 1 == 1 {
                v ^= r;
            }
        }
        if v == 0 {
            continue;
        }
        let p = v.trailing_zeros() as usize;
        for r in rows.iter_mut() {
            if *r >> p & 1 == 1 {
                *r ^= v;
            }
        }
        rows.push(v);
        pivots.push(p);
    }
    (rows, pivots)
}

pub fn rank(vectors: &[u8]) -> usize {
    echelon(vectors).0.len()
}

/// Basis of `{x : c . x = 0 for every constraint c}`, one vector per free
/// column (that column set, the others free columns cleared).
fn null_space(constraints: &[u8], dim: usize) -> Vec<u8> {
    let (rows, pivots) = echelon(constraints);
    (0..dim)
        .filter(|j| !pivots.contains(j))
        .map(|free| {
            rows.iter()
                .zip(&pivots)
                .filter(|(r, _)| *r >> free & 1 == 1)
                .fold(1u8 << free, |acc, (_, &p)| acc | 1 << p)
        })
        .collect()
}

/// Basis of the common fixed space of `gens` in the given action.
pub fn fixed_vectors(gens: &[Gf2Matrix], action: Action) -> Vec<u8> {
    let Some(first) = gens.first() else {
        return Vec::new();
    };
    let dim = first.dim();
    let mut constraints = Vec::new();
    for g in gens {
        // rows of g + I cut out the fixed space of the column action,
        // rows of (g + I)^T that of the row action
        let m = match action {
            Action::Column => g.clone(),
            Action::Row => g.transpose(),
        };
        constraints.extend(m.rows().iter().enumerate().map(|(i, &r)| r ^ (1 << i)));
    }
    null_space(&constraints, dim)
}

/// Smallest invariant subspace containing `v`, as an echelon basis.
pub fn spin(gens: &[Gf2Matrix], v: u8, action: Action) -> Vec<u8> {
    let mut basis = vec![v];
    let mut queue = vec![v];
    while let Some(x) = queue.pop() {
        for g in gens {
            let y = g.act(action, x);
            let before = rank(&basis);
            basis.push(y);
            if rank(&basis) > before {
                queue.push(y);
            } else {
                basis.pop();
            }
        }
    }
    echelon(&basis).0
}

/// `true` iff every nonzero vector spins to the whole space.
pub fn spin_irreducible(gens: &[Gf2Matrix], action: Action) -> bool {
    let Some(first) = gens.first() else {
        return false;
    };
    let dim = first.dim();
    (1..=mask(dim)).all(|v| spin(gens, v, action).len() == dim)
}

/// A module `v^⊥` with generators rewritten in its echelon basis. The
/// subspace is taken in the row action (`x -> x M`), where `v^⊥` is
/// invariant exactly when `v` is fixed by the column action.
#[derive(Clone, Debug)]
pub struct Restriction {
    pub basis: Vec<u8>,
    pub gens: Vec<Gf2Matrix>,
    /// Gram matrix of the carried form on the basis.
    pub gram: Gf2Matrix,
    pub carried: Gf2QuadraticForm,
    free_columns: Vec<usize>,
    dim: usize,
}

impl Restriction {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    fn coords(&self, x: u8) -> Option<u8> {
        let c = self
            .free_columns
            .iter()
            .enumerate()
            .fold(0u8, |acc, (k, &j)| acc | (u8::from(x >> j & 1 == 1) << k));
        let back = self
            .basis
            .iter()
            .enumerate()
            .filter(|&(k, _)| c >> k & 1 == 1)
            .fold(0u8, |acc, (_, &b)| acc ^ b);
        (back == x).then_some(c)
    }

    /// Matrix of `x -> x m` on the subspace, in basis coordinates.
    pub fn restrict(&self, m: &Gf2Matrix) -> Result<Gf2Matrix> {
        if m.dim() != self.dim {
            return Err(Error::DegreeMismatch {
                left: m.dim(),
                right: self.dim,
            });
        }
        let rows = self
            .basis
            .iter()
            .map(|&b| self.coords(m.apply_row(b)).ok_or(Error::NotInvariant))
            .collect::<Result<Vec<_>>>()?;
        Gf2Matrix::from_rows(rows)
    }

    /// Alternating (`B(x,x) = 0`) and nondegenerate.
    pub fn form_is_symplectic(&self) -> bool {
        let alternating = (0..self.dim()).all(|i| !self.gram.get(i, i));
        alternating && rank(self.gram.rows()) == self.dim()
    }

    /// `R G R^T = G` for every restricted generator.
    pub fn form_preserved(&self) -> bool {
        self.gens.iter().all(|r| {
            r.multiply(&self.gram)
                .and_then(|x| x.multiply(&r.transpose()))
                .map(|x| x == self.gram)
                .unwrap_or(false)
        })
    }
}

/// Restricts `gens` to `{x : perp_form(x, v) = 0}` and carries
/// `carried` along as a Gram matrix on the echelon basis.
pub fn restrict_to_perp(
    gens: &[Gf2Matrix],
    v: u8,
    perp_form: &Gf2QuadraticForm,
    carried: &Gf2QuadraticForm,
) -> Result<Restriction> {
    let Some(first) = gens.first() else {
        return Err(Error::BadDimension {
            got: 0,
            want: "at least one generator".into(),
        });
    };
    let dim = first.dim();
    if gens.iter().any(|g| g.apply(v) != v) {
        return Err(Error::NotFixed);
    }
    let functional = (0..dim).fold(0u8, |acc, i| {
        acc | (u8::from(perp_form.bilinear(1 << i, v)) << i)
    });
    let basis = null_space(&[functional], dim);
    let (_, pivots) = echelon(&[functional]);
    let free_columns = (0..dim).filter(|j| !pivots.contains(j)).collect();
    let d = basis.len();
    let gram_rows = (0..d)
        .map(|i| {
            (0..d).fold(0u8, |acc, j| {
                acc | (u8::from(carried.bilinear(basis[i], basis[j])) << j)
            })
        })
        .collect();
    let mut out = Restriction {
        basis,
        gens: Vec::new(),
        gram: Gf2Matrix::from_rows(gram_rows)?,
        carried: *carried,
        free_columns,
        dim,
    };
    out.gens = gens
        .iter()
        .map(|g| out.restrict(g))
        .collect::<Result<_>>()?;
    Ok(out)
}

/// Reduced symmetric generators followed by the reduced adjacent
/// transpositions.
pub fn reduced_generators(rep: &Representation) -> Result<(Vec<Gf2Matrix>, Vec<Gf2Matrix>)> {
    let t = rep
        .generator_images()
        .iter()
        .map(reduce_mod2)
        .collect::<Result<_>>()?;
    let p = rep
        .control_generators()
        .iter()
        .map(|(_, m)| reduce_mod2(m))
        .collect::<Result<_>>()?;
    Ok((t, p))
}

/// Number of cosets of the permutation-matrix subgroup in the mod-2 image.
pub fn gf2_coset_count(spec: &FamilySpec, cap: usize) -> Result<usize> {
    let rep = Representation::new(spec)?;
    let (t, _) = reduced_generators(&rep)?;
    let movable = spec.n();
    let start = Gf2Matrix::identity(spec.dim()).sorted_rows(movable);
    let c = bfs::closure(start, &t, cap, |x, g| {
        Ok(x.multiply(g)?.sorted_rows(movable))
    })?;
    Ok(c.elements.len())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Gf2ImageOrder {
    pub cosets: u64,
    pub control_order: u64,
    pub order: u64,
    pub predicted: Option<u64>,
}

impl Gf2ImageOrder {
    pub fn deviation(&self) -> Option<String> {
        match self.predicted {
            Some(p) if p != self.order => Some(format!(
                "measured mod-2 image order {} differs from predicted {}",
                self.order, p
            )),
            _ => None,
        }
    }
}

/// Order predicted when the centre is the only kernel: faithful for E6,
/// half the group order for E7 and E8.
pub fn predicted_gf2_order(n: usize) -> Option<u64> {
    match n {
        6 => Some(51840),
        7 => Some(2903040 / 2),
        8 => Some(696729600 / 2),
        _ => None,
    }
}

/// Image order as (cosets of the permutation matrices) × n!. Permutation
/// matrices stay distinct mod 2, so S_n embeds.
pub fn gf2_image_order(spec: &FamilySpec, cap: usize) -> Result<Gf2ImageOrder> {
    spec.require(Family::E)?;
    let cosets = gf2_coset_count(spec, cap)? as u64;
    let control_order = factorial(spec.n());
    Ok(Gf2ImageOrder {
        cosets,
        control_order,
        order: cosets * control_order,
        predicted: predicted_gf2_order(spec.n()),
    })
}

fn vec_list(vs: &[u8], dim: usize) -> String {
    if vs.is_empty() {
        return "{0}".into();
    }
    let parts: Vec<String> = vs.iter().map(|&v| vector_string(v, dim)).collect();
    format!("span{{{}}}", parts.join(", "))
}

/// The family's mod-2 checks. E6/E8 use `sum_{i<j} x_i x_j` in the column
/// action; E7 uses `x J y^T` in the row action and the 6-dim module `v^⊥`.
pub fn mod2_suite(spec: &FamilySpec, cap: usize) -> Result<VerificationReport> {
    let rep = Representation::new(spec)?;
    let n = spec.n();
    let dim = spec.dim();
    let mut r = VerificationReport::new(format!("{} mod 2", spec.name()));
    let (t, p) = reduced_generators(&rep)?;
    let all: Vec<Gf2Matrix> = t.iter().chain(&p).cloned().collect();

    match spec.family() {
        Family::A | Family::D => {
            let perms = t.iter().all(Gf2Matrix::is_permutation);
            r.push("reduced generators are permutation matrices", perms, "");
            if spec.family() == Family::D {
                let ok = spec.generators().iter().zip(&t).all(|(s, m)| {
                    let e = s.elements();
                    let tr = crate::perm::Permutation::transposition(n, e[0] + 1, e[1] + 1);
                    tr.and_then(|tr| perm_matrix(&tr, dim))
                        .and_then(|pm| reduce_mod2(&pm))
                        .map(|pm| pm == *m)
                        .unwrap_or(false)
                });
                r.push("t_ij reduces to the matrix of (i,j)", ok, "");
            }
            let cosets = gf2_coset_count(spec, cap)?;
            r.push(
                "image collapses onto S_n",
                cosets == 1,
                format!("{cosets} coset(s) of the permutation matrices"),
            );
            return Ok(r);
        }
        Family::E => {}
    }

    let q = Gf2QuadraticForm::sum_of_distinct_products(dim);
    if n == 6 {
        let t123 = &t[0];
        let ok = (0..6).all(|i| {
            let want = if i < 3 {
                (1u8 << i) | 0b111000
            } else {
                1u8 << i
            };
            t123.rows()[i] == want
        });
        r.push(
            "t_123 reduces to [I J; 0 I]",
            ok,
            t123.row_strings().join(" "),
        );
    }
    let preserved = all.iter().all(|g| preserves_form(g, &q, Action::Column));
    r.push(format!("generators preserve {q}"), preserved, "");
    let fixed = fixed_vectors(&all, Action::Column);
    let irreducible = spin_irreducible(&all, Action::Column);
    match n {
        7 => {
            let j = Gf2QuadraticForm::bilinear_j(dim);
            let ok = all.iter().all(|g| preserves_form(g, &j, Action::Row));
            r.push(format!("generators preserve {j} (row action)"), ok, "");
            r.push(
                "common fixed space is span{1^7}",
                fixed == vec![ones(dim)],
                vec_list(&fixed, dim),
            );
            r.push("7-dim module is reducible", !irreducible, "");
            let res = restrict_to_perp(&all, ones(dim), &j, &q)?;
            r.push("dim v^perp = 6", res.dim() == 6, res.dim().to_string());
            r.push(
                "restricted form is symplectic",
                res.form_is_symplectic(),
                res.gram.row_strings().join(" "),
            );
            r.push("restricted form is preserved", res.form_preserved(), "");
            r.push(
                "6-dim module is irreducible",
                spin_irreducible(&res.gens, Action::Row),
                "",
            );
            let tt = res.restrict(&reduce_mod2(rep.generator(&KSubset::initial(3))?)?)?;
            let pp = res.restrict(&reduce_mod2(&rep.control_matrix(&spec.relator_control())?)?)?;
            let tp = tt.multiply(&pp)?;
            let cube = tp.multiply(&tp)?.multiply(&tp)?;
            r.push("relator holds on v^perp", cube.is_identity(), "");
        }
        _ => {
            r.push("no fixed vectors", fixed.is_empty(), vec_list(&fixed, dim));
            r.push("irreducible by spinning", irreducible, "");
            if n == 8 {
                let image = t[0].apply(ones(dim));
                r.push(
                    "t_123 (1^8) = (0^3,1^5)",
                    image == 0b1111_1000,
                    vector_string(image, dim),
                );
            }
        }
    }

    let order = gf2_image_order(spec, cap)?;
    let detail = format!(
        "{} x {} = {}",
        order.cosets, order.control_order, order.order
    );
    r.push("mod-2 image order measured", true, detail);
    if let Some(w) = order.deviation() {
        r.warnings.push(w);
    }
    Ok(r)
}

/// Reduces every matrix of the representation, keyed by a display label.
pub fn reduced_matrices(rep: &Representation) -> Result<Vec<(String, Gf2Matrix)>> {
    let mut out = Vec::new();
    for (s, m) in rep.spec().generators().iter().zip(rep.generator_images()) {
        out.push((format!("t{s}"), reduce_mod2(m)?));
    }
    for (pi, m) in rep.control_generators() {
        out.push((pi.to_string(), reduce_mod2(m)?));
    }
    Ok(out)
}

/// Tally used by tests and reports: vectors grouped by `Q` value.
pub fn quadratic_profile(f: &Gf2QuadraticForm) -> HashMap<bool, usize> {
    let mut h = HashMap::new();
    for x in 0..=mask(f.dim) {
        *h.entry(f.quadratic(x)).or_insert(0) += 1;
    }
    h
}

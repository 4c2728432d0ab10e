//! Coset and double-coset enumeration over the faithful matrix image.
//!
//! The control group N acts by permutation matrices, so left
//! multiplication by N permutes rows and nothing else. Sorting the rows
//! (those N can move) therefore gives a canonical representative of the
//! right coset `N g`, and right multiplication by N permutes columns, which
//! groups single cosets into double cosets `N g N`.

use std::fmt;
use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::bfs;
use crate::error::{Error, Result};
use crate::exact::ExactMatrix;
use crate::matrix_reps::{evaluate_word, Representation};
use crate::perm::{adjacent_transpositions, factorial, Permutation};
use crate::progenitor::{Family, FamilySpec, Word};

/// Rational matrix stored as `num / den` with a single positive
/// denominator, reduced so that `gcd(den, num...) = 1`. Every operation is
/// overflow-checked; the representation is unique, so equality and hashing
/// on the fields are exact.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ScaledMatrix {
    dim: usize,
    den: i64,
    num: Box<[i64]>,
}

impl ScaledMatrix {
    pub fn from_exact(m: &ExactMatrix) -> Result<Self> {
        let den: BigInt = m.common_denominator();
        let num = m
            .entries()
            .iter()
            .map(|x| {
                (x.numer() * (&den / x.denom()))
                    .to_i64()
                    .ok_or(Error::Overflow)
            })
            .collect::<Result<Vec<_>>>()?;
        let mut out = ScaledMatrix {
            dim: m.dim(),
            den: den.to_i64().ok_or(Error::Overflow)?,
            num: num.into_boxed_slice(),
        };
        out.normalize();
        Ok(out)
    }

    pub fn to_exact(&self) -> ExactMatrix {
        let d = BigInt::from(self.den);
        ExactMatrix::from_fn(self.dim, |i, j| {
            BigRational::new(BigInt::from(self.num[i * self.dim + j]), d.clone())
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn normalize(&mut self) {
        let g = self.num.iter().fold(self.den, |g, &x| g.gcd(&x));
        if g > 1 {
            self.den /= g;
            for x in self.num.iter_mut() {
                *x /= g;
            }
        }
    }

    /// Sorts the first `movable` rows into descending lexicographic order.
    fn sort_rows(&mut self, movable: usize) {
        let n = self.dim;
        let mut rows: Vec<&[i64]> = self.num.chunks(n).take(movable).collect();
        rows.sort_unstable_by(|a, b| b.cmp(a));
        let sorted: Vec<i64> = rows.concat();
        self.num[..sorted.len()].copy_from_slice(&sorted);
    }

    fn multiply(&self, rhs: &SparseFactor) -> Result<ScaledMatrix> {
        let n = self.dim;
        let mut num = vec![0i64; n * n];
        for r in 0..n {
            let row = &self.num[r * n..(r + 1) * n];
            let out = &mut num[r * n..(r + 1) * n];
            for (i, &a) in row.iter().enumerate() {
                if a == 0 {
                    continue;
                }
                for &(j, v) in &rhs.rows[i] {
                    let p = a.checked_mul(v).ok_or(Error::Overflow)?;
                    out[j] = out[j].checked_add(p).ok_or(Error::Overflow)?;
                }
            }
        }
        let mut out = ScaledMatrix {
            dim: n,
            den: self.den.checked_mul(rhs.den).ok_or(Error::Overflow)?,
            num: num.into_boxed_slice(),
        };
        out.normalize();
        Ok(out)
    }
}

/// Right factor in sparse row form: row `i` lists `(column, numerator)`.
#[derive(Clone, Debug)]
pub(crate) struct SparseFactor {
    den: i64,
    rows: Vec<Vec<(usize, i64)>>,
}

impl SparseFactor {
    fn from_exact(m: &ExactMatrix) -> Result<Self> {
        let s = ScaledMatrix::from_exact(m)?;
        let n = s.dim;
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .filter(|&j| s.num[i * n + j] != 0)
                    .map(|j| (j, s.num[i * n + j]))
                    .collect()
            })
            .collect();
        Ok(SparseFactor { den: s.den, rows })
    }
}

/// Number of leading coordinates the control group permutes.
fn movable_rows(spec: &FamilySpec) -> usize {
    spec.n()
}

fn canonical_scaled(m: &ScaledMatrix, movable: usize) -> ScaledMatrix {
    let mut c = m.clone();
    c.sort_rows(movable);
    c
}

/// Row-sorted representative of the coset `N m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalCoset {
    pub canon: ExactMatrix,
    pub witness: Option<Word>,
}

/// Sorts the rows N can move (all of them, or the first n for A_n) in
/// descending lexicographic order of their exact entries, so every
/// permutation matrix in N canonicalizes to the identity.
pub fn canonicalize(m: &ExactMatrix, spec: &FamilySpec) -> CanonicalCoset {
    let dim = m.dim();
    let movable = movable_rows(spec).min(dim);
    let mut rows: Vec<&[BigRational]> = (0..movable).map(|i| m.row(i)).collect();
    rows.sort_by(|a, b| b.cmp(a));
    let canon = ExactMatrix::from_fn(dim, |i, j| {
        if i < movable {
            rows[i][j].clone()
        } else {
            m.get(i, j).clone()
        }
    });
    CanonicalCoset {
        canon,
        witness: None,
    }
}

/// Coset of the evaluated word, with the word kept as witness.
pub fn coset_of(w: &Word, rep: &Representation) -> Result<CanonicalCoset> {
    let m = evaluate_word(w, rep)?;
    let mut c = canonicalize(&m, rep.spec());
    c.witness = Some(w.clone());
    Ok(c)
}

struct ControlAction {
    movable: usize,
    perms: Vec<SparseFactor>,
}

impl ControlAction {
    fn new(rep: &Representation) -> Result<Self> {
        let perms = rep
            .control_generators()
            .iter()
            .map(|(_, m)| SparseFactor::from_exact(m))
            .collect::<Result<_>>()?;
        Ok(ControlAction {
            movable: movable_rows(rep.spec()),
            perms,
        })
    }

    fn orbit(&self, start: ScaledMatrix) -> Result<Vec<ScaledMatrix>> {
        let movable = self.movable;
        let c = bfs::closure(start, &self.perms, usize::MAX, |x, p| {
            Ok(canonical_scaled(&x.multiply(p)?, movable))
        })?;
        Ok(c.elements)
    }
}

/// `|N^(w)| = |N| / |orbit of N w under right multiplication by N|`.
pub fn coset_stabilizer_order(c: &CanonicalCoset, spec: &FamilySpec) -> Result<u64> {
    let rep = Representation::new(spec)?;
    let action = ControlAction::new(&rep)?;
    let start = canonical_scaled(&ScaledMatrix::from_exact(&c.canon)?, action.movable);
    let size = action.orbit(start)?.len() as u64;
    Ok(factorial(spec.n()) / size)
}

/// `[a] = [b]`: both cosets lie in the same N-orbit.
pub fn same_double_coset(a: &Word, b: &Word, spec: &FamilySpec) -> Result<bool> {
    let rep = Representation::new(spec)?;
    let action = ControlAction::new(&rep)?;
    let ca = ScaledMatrix::from_exact(&coset_of(a, &rep)?.canon)?;
    let cb = ScaledMatrix::from_exact(&coset_of(b, &rep)?.canon)?;
    if ca == cb {
        return Ok(true);
    }
    Ok(action.orbit(ca)?.contains(&cb))
}

/// Expected index, when known.
pub fn expected_index(spec: &FamilySpec) -> Option<u64> {
    crate::expected::expected(spec).map(|e| e.index)
}

/// Ten times the expected index for in-scope members; none for experimental ones.
pub fn default_cap(spec: &FamilySpec) -> Option<usize> {
    expected_index(spec).map(|i| 10 * i as usize)
}

/// All cosets `N w` reachable from `N`, with witnesses and double-coset classes.
pub struct CosetTable {
    spec: FamilySpec,
    closure: bfs::Closure<ScaledMatrix>,
    orbits: Vec<Vec<usize>>,
    orbit_of: Vec<usize>,
}

impl CosetTable {
    pub fn spec(&self) -> &FamilySpec {
        &self.spec
    }

    /// The index `|G : N|`.
    pub fn len(&self) -> usize {
        self.closure.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.closure.elements.is_empty()
    }

    /// Shortest, then lexicographically least, word reaching coset `i`.
    pub fn witness(&self, i: usize) -> Word {
        let gens = self.spec.generators();
        let letters = self
            .closure
            .path(i)
            .into_iter()
            .map(|g| gens[g].clone())
            .collect();
        Word::from_parts(Permutation::identity(self.spec.n()), letters)
    }

    pub fn canonical(&self, i: usize) -> ExactMatrix {
        self.closure.elements[i].to_exact()
    }

    pub fn double_cosets(&self) -> &[Vec<usize>] {
        &self.orbits
    }

    pub fn double_coset_of_coset(&self, i: usize) -> usize {
        self.orbit_of[i]
    }

    /// Index of the coset containing `m`, if it was enumerated.
    pub fn locate_matrix(&self, m: &ExactMatrix) -> Result<Option<usize>> {
        let s = canonical_scaled(&ScaledMatrix::from_exact(m)?, movable_rows(&self.spec));
        Ok(self.closure.lookup.get(&s).copied())
    }
}

pub fn enumerate_table(spec: &FamilySpec, cap: usize) -> Result<CosetTable> {
    let rep = Representation::new(spec)?;
    let gens = rep
        .generator_images()
        .iter()
        .map(SparseFactor::from_exact)
        .collect::<Result<Vec<_>>>()?;
    let movable = movable_rows(spec);
    let start = canonical_scaled(
        &ScaledMatrix::from_exact(&ExactMatrix::identity(spec.dim()))?,
        movable,
    );
    let closure = bfs::closure(start, &gens, cap, |x, g| {
        Ok(canonical_scaled(&x.multiply(g)?, movable))
    })?;
    let action = ControlAction::new(&rep)?;
    let orbits = bfs::orbits(&closure.elements, &closure.lookup, &action.perms, |x, p| {
        Ok(canonical_scaled(&x.multiply(p)?, movable))
    })?;
    let mut orbit_of = vec![0; closure.elements.len()];
    for (k, o) in orbits.iter().enumerate() {
        for &i in o {
            orbit_of[i] = k;
        }
    }
    Ok(CosetTable {
        spec: spec.clone(),
        closure,
        orbits,
        orbit_of,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DoubleCosetRecord {
    #[serde(serialize_with = "serialize_display")]
    pub rep_word: Word,
    /// `|N : N^(w)|`, the number of single cosets in `[w]`.
    pub size: u64,
    /// `|N^(w)|`.
    pub stabilizer_order: u64,
}

fn serialize_display<S: serde::Serializer, T: fmt::Display>(
    v: &T,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

#[derive(Clone, Debug, Serialize)]
pub struct EnumerationReport {
    pub family: Family,
    pub n: usize,
    pub index: u64,
    pub rank: usize,
    pub records: Vec<DoubleCosetRecord>,
    pub control_order: u64,
    pub group_order: u64,
    pub elapsed_ms: f64,
}

impl EnumerationReport {
    pub fn sizes(&self) -> Vec<u64> {
        self.records.iter().map(|r| r.size).collect()
    }

    pub fn stabilizer_orders(&self) -> Vec<u64> {
        self.records.iter().map(|r| r.stabilizer_order).collect()
    }

    /// Everything except the timing, for reproducibility comparisons.
    pub fn same_content(&self, other: &EnumerationReport) -> bool {
        self.family == other.family
            && self.n == other.n
            && self.index == other.index
            && self.rank == other.rank
            && self.records == other.records
            && self.group_order == other.group_order
    }

    /// Three-column text table: label, coset stabilizer order, `|N:N^(w)|`.
    pub fn render_table(&self) -> String {
        let labels: Vec<String> = self
            .records
            .iter()
            .map(|r| format!("[{}]", r.rep_word))
            .collect();
        let w = labels.iter().map(|l| l.len()).max().unwrap_or(0).max(9);
        let mut out = String::new();
        out.push_str(&format!(
            "W({}_{}) over S_{}\n",
            self.family, self.n, self.n
        ));
        out.push_str(&format!(
            "{:<w$}  {:>34}  {:>10}\n",
            "Label [w]", "Coset Stabilizing subgroup order", "|N:N^(w)|"
        ));
        for (l, r) in labels.iter().zip(&self.records) {
            out.push_str(&format!(
                "{:<w$}  {:>34}  {:>10}\n",
                l, r.stabilizer_order, r.size
            ));
        }
        out.push_str(&format!(
            "Index: {}, Rank: {}\n|G| = {} x {} = {}\n",
            self.index, self.rank, self.index, self.control_order, self.group_order
        ));
        out
    }
}

impl fmt::Display for EnumerationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_table())
    }
}

/// Breadth-first enumeration of `N \ G`, grouped into double cosets.
pub fn enumerate(spec: &FamilySpec, cap: usize) -> Result<EnumerationReport> {
    let started = Instant::now();
    let table = enumerate_table(spec, cap)?;
    let control_order = factorial(spec.n());
    let records = table
        .orbits
        .iter()
        .map(|o| {
            let size = o.len() as u64;
            DoubleCosetRecord {
                rep_word: table.witness(o[0]),
                size,
                stabilizer_order: control_order / size,
            }
        })
        .collect::<Vec<_>>();
    let index = table.len() as u64;
    Ok(EnumerationReport {
        family: spec.family(),
        n: spec.n(),
        index,
        rank: records.len(),
        records,
        control_order,
        group_order: index.checked_mul(control_order).ok_or(Error::Overflow)?,
        elapsed_ms: started.elapsed().as_secs_f64() * 1e3,
    })
}

/// Adjacent transpositions as permutations, for callers building N-actions.
pub fn control_generators(spec: &FamilySpec) -> Vec<Permutation> {
    adjacent_transpositions(spec.n())
}

/// `true` when the canonical form has no rational entries (it lies in a
/// signed permutation coset).
pub fn is_integral(c: &CanonicalCoset) -> bool {
    c.canon
        .entries()
        .iter()
        .all(|x| x.is_integer() || x.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};
    use crate::matrix_reps::{perm_matrix, sym_gen_matrix};
    use crate::perm::{KSubset, PermGroup};

    fn spec(f: Family, n: usize) -> FamilySpec {
        FamilySpec::new(f, n).unwrap()
    }

    #[test]
    fn scaled_round_trip() {
        let m = ExactMatrix::from_fn(3, |i, j| rat(i as i64 - 2 * j as i64, 6));
        let s = ScaledMatrix::from_exact(&m).unwrap();
        assert_eq!(s.den, 6);
        assert_eq!(s.to_exact(), m);
        let id = ScaledMatrix::from_exact(&ExactMatrix::identity(4)).unwrap();
        assert_eq!(id.den, 1);
    }

    #[test]
    fn scaled_product_matches_exact() {
        let e6 = spec(Family::E, 6);
        let a = sym_gen_matrix(&e6, &KSubset::from_labels(&[1, 2, 3]).unwrap()).unwrap();
        let b = sym_gen_matrix(&e6, &KSubset::from_labels(&[1, 4, 5]).unwrap()).unwrap();
        let fast = ScaledMatrix::from_exact(&a)
            .unwrap()
            .multiply(&SparseFactor::from_exact(&b).unwrap())
            .unwrap();
        assert_eq!(fast.to_exact(), &a * &b);
    }

    #[test]
    fn overflow_is_reported() {
        let big = ExactMatrix::from_fn(2, |i, j| if i == j { int(1 << 40) } else { int(0) });
        let s = ScaledMatrix::from_exact(&big).unwrap();
        let f = SparseFactor::from_exact(&big).unwrap();
        assert_eq!(s.multiply(&f).unwrap_err(), Error::Overflow);
    }

    #[test]
    fn permutation_matrices_canonicalize_to_identity() {
        let e6 = spec(Family::E, 6);
        for p in PermGroup::symmetric(6).elements().iter().step_by(37) {
            let c = canonicalize(&perm_matrix(p, 6).unwrap(), &e6);
            assert!(c.canon.is_identity());
        }
        let a3 = spec(Family::A, 3);
        let p = Permutation::parse_with_degree("(1,3,2)", 3).unwrap();
        assert!(canonicalize(&perm_matrix(&p, 4).unwrap(), &a3)
            .canon
            .is_identity());
        // (1,4) moves the fixed coordinate, so it is not in N
        let t = sym_gen_matrix(&a3, &KSubset::from_labels(&[1]).unwrap()).unwrap();
        assert!(!canonicalize(&t, &a3).canon.is_identity());
    }

    #[test]
    fn e6_generator_not_in_control_group() {
        let e6 = spec(Family::E, 6);
        let t = sym_gen_matrix(&e6, &KSubset::initial(3)).unwrap();
        assert!(!canonicalize(&t, &e6).canon.is_identity());
        assert!(!is_integral(&canonicalize(&t, &e6)));
    }

    #[test]
    fn stabilizer_order_examples() {
        let e6 = spec(Family::E, 6);
        let rep = Representation::new(&e6).unwrap();
        let w = Word::parse(&e6, "t{1,2,3}").unwrap();
        assert_eq!(
            coset_stabilizer_order(&coset_of(&w, &rep).unwrap(), &e6).unwrap(),
            36
        );
        let w = Word::parse(&e6, "t{1,2,3} t{1,4,5}").unwrap();
        assert_eq!(
            coset_stabilizer_order(&coset_of(&w, &rep).unwrap(), &e6).unwrap(),
            24
        );
        let w = Word::identity(6);
        assert_eq!(
            coset_stabilizer_order(&coset_of(&w, &rep).unwrap(), &e6).unwrap(),
            720
        );
    }

    #[test]
    fn same_double_coset_examples() {
        let e6 = spec(Family::E, 6);
        let a = Word::parse(&e6, "t{1,2,3} t{4,5,6} t{1,2,4}").unwrap();
        // relabelled by (1,6)(2,5), so N a N = N b N
        let b = Word::parse(&e6, "t{3,5,6} t{1,2,4} t{4,5,6}").unwrap();
        assert!(same_double_coset(&a, &b, &e6).unwrap());
        let c = Word::parse(&e6, "t{1,2,3} t{1,4,5}").unwrap();
        assert!(
            same_double_coset(&c, &Word::parse(&e6, "t{1,3,5} t{1,2,4}").unwrap(), &e6).unwrap()
        );
        // stabilizer orders 36 and 24 differ
        let single = Word::parse(&e6, "t{1,2,3}").unwrap();
        assert!(!same_double_coset(&single, &c, &e6).unwrap());
        assert!(same_double_coset(&a, &a, &e6).unwrap());

        let d4 = spec(Family::D, 4);
        let x = Word::parse(&d4, "t{1,3} t{2,4}").unwrap();
        let y = Word::parse(&d4, "t{1,2} t{3,4}").unwrap();
        assert!(same_double_coset(&x, &y, &d4).unwrap());
    }

    #[test]
    fn small_enumerations() {
        let r = enumerate(&spec(Family::A, 3), 100).unwrap();
        assert_eq!((r.index, r.rank), (4, 2));
        assert_eq!(r.sizes(), vec![1, 3]);
        assert_eq!(r.group_order, 24);
        let r = enumerate(&spec(Family::D, 5), 1000).unwrap();
        assert_eq!((r.index, r.rank), (16, 3));
        assert_eq!(r.records[2].rep_word.to_string(), "t{1,2} t{3,4}");
        let r = enumerate(&spec(Family::E, 6), 720).unwrap();
        assert_eq!(r.sizes(), vec![1, 20, 30, 20, 1]);
        assert!(r.render_table().contains("Index: 72, Rank: 5"));
        assert!(matches!(
            enumerate(&spec(Family::E, 6), 50),
            Err(Error::CapExceeded { cap: 50 })
        ));
    }

    #[test]
    fn table_locates_words() {
        let e6 = spec(Family::E, 6);
        let table = enumerate_table(&e6, 720).unwrap();
        let rep = Representation::new(&e6).unwrap();
        for i in 0..table.len() {
            let m = evaluate_word(&table.witness(i), &rep).unwrap();
            assert_eq!(table.locate_matrix(&m).unwrap(), Some(i));
            assert_eq!(canonicalize(&m, &e6).canon, table.canonical(i));
        }
        let unrelated = ExactMatrix::from_fn(6, |i, j| if i == j { int(2) } else { int(0) });
        assert_eq!(table.locate_matrix(&unrelated).unwrap(), None);
    }
}

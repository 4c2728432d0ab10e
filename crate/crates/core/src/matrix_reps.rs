//! Exact rational representations of the three families.
//!
//! The control group acts by permutation matrices (`P[i][p(i)] = 1`, so
//! `P_p P_q = P_{pq}` under left-to-right composition). Symmetric
//! generators satisfy the covariance `P_π⁻¹ t_S P_π = t_{Sπ}`:
//!
//! * A_n, dimension n+1: `t_i` is the permutation matrix of `(i, n+1)`.
//! * D_n, dimension n: `t_{ij}` swaps coordinates i and j with both signs flipped.
//! * E_n, dimension n: `t_{123}` has blocks `I_3 - (2/3)J_3 | (1/3)J` over
//!   `0 | I`; other generators are its conjugates.

use std::collections::{HashSet, VecDeque};

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{int, rat, ExactMatrix, Rational};
use crate::perm::{adjacent_transpositions, KSubset, PermGroup, Permutation};
use crate::progenitor::{Family, FamilySpec, Word};
use crate::report::VerificationReport;

/// 0/1 matrix of `p`; points beyond `p`'s degree are fixed.
pub fn perm_matrix(p: &Permutation, dim: usize) -> Result<ExactMatrix> {
    if p.degree() > dim {
        return Err(Error::DegreeMismatch {
            left: p.degree(),
            right: dim,
        });
    }
    Ok(ExactMatrix::from_fn(dim, |i, j| {
        let image = if i < p.degree() { p.image(i) } else { i };
        if image == j {
            Rational::one()
        } else {
            Rational::zero()
        }
    }))
}

/// `t_{123}` for E_n before conjugation.
pub fn e_base_generator(n: usize) -> ExactMatrix {
    ExactMatrix::from_fn(n, |i, j| match (i < 3, j < 3) {
        (true, true) if i == j => rat(1, 3),
        (true, true) => rat(-2, 3),
        (true, false) => rat(1, 3),
        (false, _) if i == j => int(1),
        (false, _) => int(0),
    })
}

/// Permutation sending `{1,2,3}` onto `s` in order, and the remaining points
/// onto the complement in order.
fn standard_carrier(n: usize, s: &KSubset) -> Permutation {
    let mut images: Vec<usize> = s.elements().to_vec();
    images.extend((0..n).filter(|x| !s.contains(*x)));
    Permutation::from_images(images).expect("bijection")
}

/// `P_σ⁻¹ t_{123} P_σ` for a `σ` carrying `{1,2,3}` onto `s`.
pub fn e_generator_via(n: usize, s: &KSubset, sigma: &Permutation) -> Result<ExactMatrix> {
    if sigma.degree() != n {
        return Err(Error::DegreeMismatch {
            left: n,
            right: sigma.degree(),
        });
    }
    if &sigma.image_of_subset(&KSubset::initial(3)) != s {
        return Err(Error::Parse(format!(
            "{sigma} does not carry {{1,2,3}} to {s}"
        )));
    }
    let p = perm_matrix(sigma, n)?;
    let pinv = perm_matrix(&sigma.inverse(), n)?;
    Ok(&(&pinv * &e_base_generator(n)) * &p)
}

/// Matrix of the symmetric generator `t_s`.
pub fn sym_gen_matrix(spec: &FamilySpec, s: &KSubset) -> Result<ExactMatrix> {
    spec.check_subset(s)?;
    let n = spec.n();
    match spec.family() {
        Family::A => {
            let t = Permutation::transposition(n + 1, s.elements()[0] + 1, n + 1)?;
            perm_matrix(&t, n + 1)
        }
        Family::D => {
            let (a, b) = (s.elements()[0], s.elements()[1]);
            Ok(ExactMatrix::from_fn(n, |i, j| {
                if (i == a && j == b) || (i == b && j == a) {
                    int(-1)
                } else if i == j && i != a && i != b {
                    int(1)
                } else {
                    int(0)
                }
            }))
        }
        Family::E => e_generator_via(n, s, &standard_carrier(n, s)),
    }
}

/// Generator images for one family member.
#[derive(Clone, Debug)]
pub struct Representation {
    spec: FamilySpec,
    control: Vec<(Permutation, ExactMatrix)>,
    gens: Vec<ExactMatrix>,
}

impl Representation {
    pub fn new(spec: &FamilySpec) -> Result<Self> {
        let dim = spec.dim();
        let control = adjacent_transpositions(spec.n())
            .into_iter()
            .map(|p| {
                let m = perm_matrix(&p, dim)?;
                Ok((p, m))
            })
            .collect::<Result<Vec<_>>>()?;
        let gens = spec
            .generators()
            .iter()
            .map(|s| sym_gen_matrix(spec, s))
            .collect::<Result<Vec<_>>>()?;
        Ok(Representation {
            spec: spec.clone(),
            control,
            gens,
        })
    }

    pub fn spec(&self) -> &FamilySpec {
        &self.spec
    }

    pub fn dim(&self) -> usize {
        self.spec.dim()
    }

    /// Adjacent transpositions `(i,i+1)` with their matrices.
    pub fn control_generators(&self) -> &[(Permutation, ExactMatrix)] {
        &self.control
    }

    /// Generator matrices in the order of `spec.generators()`.
    pub fn generator_images(&self) -> &[ExactMatrix] {
        &self.gens
    }

    pub fn generator(&self, s: &KSubset) -> Result<&ExactMatrix> {
        self.spec.check_subset(s)?;
        Ok(&self.gens[s.rank(self.spec.n())])
    }

    pub fn control_matrix(&self, p: &Permutation) -> Result<ExactMatrix> {
        if p.degree() != self.spec.n() {
            return Err(Error::DegreeMismatch {
                left: self.spec.n(),
                right: p.degree(),
            });
        }
        perm_matrix(p, self.dim())
    }
}

/// Image of `w` under the homomorphism from the progenitor.
pub fn evaluate_word(w: &Word, rep: &Representation) -> Result<ExactMatrix> {
    let mut m = rep.control_matrix(w.control())?;
    for s in w.letters() {
        m = &m * rep.generator(s)?;
    }
    Ok(m)
}

/// The block constants `a=1, b=-2/3, c=1/3, a'=1, b'=0, c'=0` substituted into
/// the involution and determinant conditions for `t_{123}`.
pub fn block_constant_identities() -> VerificationReport {
    let (a, b, c) = (int(1), rat(-2, 3), rat(1, 3));
    let (a2, b2, c2) = (int(1), int(0), int(0));
    let three = int(3);
    let trace_sum = &a + &a2 + &three * &b + &three * &b2;
    let mut r = VerificationReport::new("E block constants");
    r.push("c(a+a'+3b+3b') = 0", (&c * &trace_sum).is_zero(), "");
    r.push("c'(a+a'+3b+3b') = 0", (&c2 * &trace_sum).is_zero(), "");
    r.push(
        "a^2 = a'^2 = 1",
        (&a * &a).is_one() && (&a2 * &a2).is_one(),
        "",
    );
    let two = int(2);
    let lhs = &two * &a * &b + &three * &b * &b + &three * &c * &c2;
    let lhs2 = &two * &a2 * &b2 + &three * &b2 * &b2 + &three * &c * &c2;
    r.push("2ab+3b^2+3cc' = 0", lhs.is_zero(), lhs.to_string());
    r.push("2a'b'+3b'^2+3cc' = 0", lhs2.is_zero(), lhs2.to_string());
    let det = (&a + &three * &b) * (&a2 + &three * &b2);
    r.push("(a+3b)(a'+3b') = -1", det == int(-1), det.to_string());
    // the constants reproduce the generator for every n
    let ok = (6..=8).all(|n| {
        let built = ExactMatrix::from_fn(n, |i, j| {
            let delta = if i == j { int(1) } else { int(0) };
            match (i < 3, j < 3) {
                (true, true) => &a * &delta + &b,
                (true, false) => c.clone(),
                (false, true) => c2.clone(),
                (false, false) => &a2 * &delta + &b2,
            }
        });
        built == e_base_generator(n)
    });
    r.push("constants rebuild t{1,2,3}", ok, "n = 6, 7, 8");
    r
}

/// Involution, determinant, covariance and relator checks for every generator.
pub fn verify_representation(spec: &FamilySpec) -> Result<VerificationReport> {
    let rep = Representation::new(spec)?;
    let dim = rep.dim();
    let id = ExactMatrix::identity(dim);
    let mut r = VerificationReport::new(format!("representation of W({})", spec.name()));

    let perm_ok = rep
        .control
        .iter()
        .all(|(p, m)| m.as_permutation() == p.extend(dim).ok());
    r.push("control images are permutation matrices", perm_ok, "");

    let bad_inv: Vec<String> = spec
        .generators()
        .iter()
        .zip(&rep.gens)
        .filter(|(_, m)| &(*m * *m) != &id)
        .map(|(s, _)| s.to_string())
        .collect();
    r.push(
        "generators are involutions",
        bad_inv.is_empty(),
        bad_inv.join(" "),
    );

    let bad_det: Vec<String> = spec
        .generators()
        .iter()
        .zip(&rep.gens)
        .filter(|(_, m)| m.determinant() != int(-1))
        .map(|(s, _)| s.to_string())
        .collect();
    r.push(
        "generators have determinant -1",
        bad_det.is_empty(),
        bad_det.join(" "),
    );

    let mut cov_failures = Vec::new();
    for (p, pm) in &rep.control {
        let pinv = perm_matrix(&p.inverse(), dim)?;
        for (s, t) in spec.generators().iter().zip(&rep.gens) {
            let conj = &(&pinv * t) * pm;
            if &conj != rep.generator(&p.image_of_subset(s))? {
                cov_failures.push(format!("{p} on t{s}"));
            }
        }
    }
    r.push(
        "covariance P^-1 t_S P = t_(S.p)",
        cov_failures.is_empty(),
        cov_failures.join(", "),
    );

    let rel = evaluate_word(&spec.relator(), &rep)?;
    r.push(
        "relator evaluates to identity",
        rel.is_identity(),
        spec.relator().to_string(),
    );

    match spec.family() {
        Family::A => {
            let ok = spec.generators().iter().zip(&rep.gens).all(|(s, m)| {
                m.as_permutation().is_some_and(|p| {
                    p == Permutation::transposition(dim, s.elements()[0] + 1, dim).unwrap()
                })
            });
            r.push(format!("t_i = (i,{dim})"), ok, "");
        }
        Family::E => r.extend(block_constant_identities()),
        Family::D => {}
    }
    Ok(r)
}

/// `e_{ij} = (ij) t_{ij}` as a matrix.
pub fn e_element(rep: &Representation, i: usize, j: usize) -> Result<ExactMatrix> {
    let s = KSubset::from_labels(&[i, j])?;
    let p = Permutation::transposition(rep.spec().n(), i, j)?;
    Ok(&rep.control_matrix(&p)? * rep.generator(&s)?)
}

fn matrix_closure(gens: &[ExactMatrix], cap: usize) -> Result<Vec<ExactMatrix>> {
    let Some(first) = gens.first() else {
        return Ok(Vec::new());
    };
    let id = ExactMatrix::identity(first.dim());
    let mut seen: HashSet<ExactMatrix> = HashSet::from([id.clone()]);
    let mut out = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = &x * g;
            if seen.insert(y.clone()) {
                if out.len() >= cap {
                    return Err(Error::CapExceeded { cap });
                }
                out.push(y.clone());
                queue.push_back(y);
            }
        }
    }
    Ok(out)
}

/// Every element of the group generated by `gens` (exhaustive, capped).
pub fn matrix_group_elements(gens: &[ExactMatrix], cap: usize) -> Result<Vec<ExactMatrix>> {
    matrix_closure(gens, cap)
}

/// The D_n structure identities: disjoint generators commute and the
/// elements `e_{ij}` form the even-sign diagonal group of order `2^{n-1}`.
pub fn dn_structure_check(spec: &FamilySpec) -> Result<VerificationReport> {
    spec.require(Family::D)?;
    let n = spec.n();
    if !(4..=8).contains(&n) {
        return Err(Error::OutOfScope {
            family: 'D',
            n,
            reason: "structure check runs for n in 4..=8".into(),
        });
    }
    let rep = Representation::new(spec)?;
    let id = ExactMatrix::identity(n);
    let mut r = VerificationReport::new(format!("D_{n} structure"));

    let mut commute = true;
    for (a, ta) in spec.generators().iter().zip(&rep.gens) {
        for (b, tb) in spec.generators().iter().zip(&rep.gens) {
            if a.intersection_len(b) == 0 && &(ta * tb) != &(tb * ta) {
                commute = false;
            }
        }
    }
    r.push("disjoint t's commute", commute, "");

    let t12 = rep.generator(&KSubset::from_labels(&[1, 2])?)?;
    let t13 = rep.generator(&KSubset::from_labels(&[1, 3])?)?;
    let p23 = perm_matrix(&Permutation::transposition(n, 2, 3)?, n)?;
    r.push("t12 t13 = (23) t12", &(t12 * t13) == &(&p23 * t12), "");

    let mut es = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            es.push(((i, j), e_element(&rep, i, j)?));
        }
    }
    let diagonal_ok = es.iter().all(|((i, j), e)| {
        *e == ExactMatrix::from_fn(n, |a, b| match (a == b, a + 1 == *i || a + 1 == *j) {
            (false, _) => int(0),
            (true, true) => int(-1),
            (true, false) => int(1),
        })
    });
    r.push("e_ij = diag with -1 at i and j", diagonal_ok, "");
    r.push("e_ij^2 = I", es.iter().all(|(_, e)| &(e * e) == &id), "");
    let abelian = es
        .iter()
        .all(|(_, x)| es.iter().all(|(_, y)| &(x * y) == &(y * x)));
    r.push("e_ij pairwise commute", abelian, "");

    let mut rule = true;
    for i in 1..=n {
        for j in 1..=n {
            for k in 1..=n {
                if i == j || j == k || i == k {
                    continue;
                }
                let lhs = &e_element(&rep, i, j)? * &e_element(&rep, i, k)?;
                if lhs != e_element(&rep, j, k)? {
                    rule = false;
                }
            }
        }
    }
    r.push("e_ij e_ik = e_jk", rule, "");

    let gens: Vec<ExactMatrix> = (2..=n)
        .map(|j| e_element(&rep, 1, j))
        .collect::<Result<_>>()?;
    let order = matrix_closure(&gens, 1 << n)?.len();
    let want = 1usize << (n - 1);
    r.push(
        "|<e_1j>| = 2^(n-1)",
        order == want,
        format!("{order} (expected {want})"),
    );
    Ok(r)
}

/// Concrete witness that the permutation module's splitting `<v> + v^⊥`
/// (v the all-ones vector) is not respected by `t_{123}`.
#[derive(Clone, Debug, Serialize)]
pub struct IrreducibilityWitness {
    /// `t · vᵀ`.
    pub column_image_of_ones: Vec<String>,
    /// `v · t`.
    pub row_image_of_ones: Vec<String>,
    pub ones_line_invariant: bool,
    pub perp_invariant: bool,
    /// `x ∈ v^⊥` with `t x ∉ v^⊥`, when one exists.
    pub perp_witness: Option<Vec<String>>,
}

impl IrreducibilityWitness {
    pub fn decomposition_broken(&self) -> bool {
        !self.ones_line_invariant && !self.perp_invariant
    }
}

fn strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

pub fn ones_vector_check(spec: &FamilySpec) -> Result<IrreducibilityWitness> {
    spec.require(Family::E)?;
    let n = spec.n();
    let t = sym_gen_matrix(spec, &KSubset::initial(3))?;
    let ones = vec![int(1); n];
    let col = t.apply(&ones);
    let row = t.apply_row(&ones);
    let ones_line_invariant = col.iter().all(|x| x == &col[0]);
    // {x : Σx = 0} is t-invariant iff every column sum of t is the same
    let perp_invariant = row.iter().all(|x| x == &row[0]);
    let perp_witness = (1..n)
        .map(|j| {
            let mut x = vec![int(0); n];
            x[0] = int(1);
            x[j] = int(-1);
            x
        })
        .find(|x| {
            !t.apply(x)
                .iter()
                .fold(Rational::zero(), |acc, v| acc + v)
                .is_zero()
        })
        .map(|x| strings(&x));
    Ok(IrreducibilityWitness {
        column_image_of_ones: strings(&col),
        row_image_of_ones: strings(&row),
        ones_line_invariant,
        perp_invariant,
        perp_witness,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct DihedralCheck {
    pub dihedral_order: usize,
    /// `⟨t_i, t_j⟩ ∩ N`, as permutations of the control degree.
    pub intersection: Vec<Permutation>,
    pub contained: bool,
}

/// Enumerates `⟨t_i, t_j⟩` in the matrix image and tests whether its
/// intersection with the control group lies in `centralizer`.
///
/// An element counts as lying in N when it is a permutation matrix fixing
/// every coordinate at or beyond `centralizer.degree()`.
pub fn dihedral_intersection_check(
    t_i: &ExactMatrix,
    t_j: &ExactMatrix,
    centralizer: &PermGroup,
) -> Result<DihedralCheck> {
    let dim = t_i.dim();
    let id = ExactMatrix::identity(dim);
    for t in [t_i, t_j] {
        if t.dim() != dim {
            return Err(Error::DegreeMismatch {
                left: dim,
                right: t.dim(),
            });
        }
        if (t * t) != id {
            return Err(Error::NotInvolution);
        }
    }
    let n = centralizer.degree();
    let group = matrix_closure(&[t_i.clone(), t_j.clone()], 100_000)?;
    let mut intersection: Vec<Permutation> = group
        .iter()
        .filter_map(|m| m.as_permutation())
        .filter(|p| (n..dim).all(|x| p.image(x) == x))
        .map(|p| Permutation::from_images(p.images()[..n].to_vec()).expect("restriction"))
        .collect();
    intersection.sort();
    let contained = intersection.iter().all(|p| centralizer.contains(p));
    Ok(DihedralCheck {
        dihedral_order: group.len(),
        intersection,
        contained,
    })
}

/// `⟨t_a, t_b⟩ ∩ N ≤ C_N(Stab_N(a, b))` for the pair of generator indices.
pub fn dihedral_centralizer_check(rep: &Representation, a: &KSubset, b: &KSubset) -> Result<DihedralCheck> {
    let sn = PermGroup::symmetric(rep.spec().n());
    let stab = sn.setwise_stabilizer(&[a.clone(), b.clone()])?;
    let cent = sn.centralizer(&stab)?;
    dihedral_intersection_check(rep.generator(a)?, rep.generator(b)?, &cent)
}

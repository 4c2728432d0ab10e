//! Independent models of W(A_n) and W(D_n), kept free of matrices so that
//! agreement with the representations means something.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::ExactMatrix;
use crate::expected;
use crate::matrix_reps::{matrix_group_elements, Representation};
use crate::perm::{factorial, PermGroup, Permutation};
use crate::progenitor::{Family, FamilySpec, Word};

/// Signed permutation: point `i` goes to `perm(i)` with sign `signs[i]`.
/// As a matrix, row `i` holds `signs[i]` in column `perm(i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SignedPermutation {
    #[serde(serialize_with = "display_str")]
    pub perm: Permutation,
    pub signs: Vec<i8>,
}

fn display_str<S: serde::Serializer>(
    p: &Permutation,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(p)
}

impl SignedPermutation {
    pub fn identity(n: usize) -> Self {
        SignedPermutation {
            perm: Permutation::identity(n),
            signs: vec![1; n],
        }
    }

    pub fn from_permutation(p: Permutation) -> Self {
        let n = p.degree();
        SignedPermutation {
            perm: p,
            signs: vec![1; n],
        }
    }

    pub fn degree(&self) -> usize {
        self.perm.degree()
    }

    /// "This, then `other`", matching the matrix product `self · other`.
    pub fn then(&self, other: &SignedPermutation) -> Result<SignedPermutation> {
        let perm = self.perm.compose(&other.perm)?;
        let signs = (0..self.degree())
            .map(|i| self.signs[i] * other.signs[self.perm.image(i)])
            .collect();
        Ok(SignedPermutation { perm, signs })
    }

    pub fn negative_count(&self) -> usize {
        self.signs.iter().filter(|&&s| s < 0).count()
    }

    pub fn is_even(&self) -> bool {
        self.negative_count() % 2 == 0
    }

    pub fn is_diagonal(&self) -> bool {
        self.perm.is_identity()
    }
}

impl fmt::Display for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self
            .signs
            .iter()
            .map(|&x| if x < 0 { '-' } else { '+' })
            .collect();
        write!(f, "{} [{}]", self.perm, s)
    }
}

/// `t_i -> (i, n+1)`, control elements extended to degree `n+1`.
pub fn a_oracle_map(w: &Word, spec: &FamilySpec) -> Result<Permutation> {
    spec.require(Family::A)?;
    let n = spec.n();
    let mut acc = w.control().extend(n + 1)?;
    for s in w.letters() {
        let t = Permutation::transposition(n + 1, s.labels()[0], n + 1)?;
        acc = acc.compose(&t)?;
    }
    Ok(acc)
}

fn d_letter(n: usize, i: usize, j: usize) -> Result<SignedPermutation> {
    let mut signs = vec![1i8; n];
    signs[i - 1] = -1;
    signs[j - 1] = -1;
    Ok(SignedPermutation {
        perm: Permutation::transposition(n, i, j)?,
        signs,
    })
}

/// `t_ij -> (i,j)` with signs `-1` at `i` and `j`.
pub fn d_oracle_map(w: &Word, spec: &FamilySpec) -> Result<SignedPermutation> {
    spec.require(Family::D)?;
    let n = spec.n();
    let mut acc = SignedPermutation::from_permutation(w.control().clone());
    for s in w.letters() {
        let l = s.labels();
        acc = acc.then(&d_letter(n, l[0], l[1])?)?;
    }
    Ok(acc)
}

/// Exact orders: `(n+1)!`, `2^{n-1} n!`, and the bundled E values.
pub struct OrderTable;

impl OrderTable {
    pub fn order(family: Family, n: usize) -> Option<u64> {
        let spec = FamilySpec::new(family, n).ok()?;
        expected::expected(&spec).map(|e| e.group_order)
    }
}

pub const A_EXHAUSTIVE_MAX: usize = 7;
pub const D_EXHAUSTIVE_MAX: usize = 6;

fn signed_closure(gens: &[SignedPermutation]) -> Result<HashSet<SignedPermutation>> {
    let n = gens.first().map_or(1, SignedPermutation::degree);
    let start = SignedPermutation::identity(n);
    let mut seen = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = x.then(g)?;
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    Ok(seen)
}

/// Closure of the oracle generators (A up to n = 7, D up to n = 6); the
/// table value beyond that, and for E.
pub fn oracle_group_order(family: Family, n: usize) -> Result<u64> {
    let spec = FamilySpec::new(family, n)?;
    match family {
        Family::A if n <= A_EXHAUSTIVE_MAX => {
            let mut gens: Vec<Permutation> = crate::perm::adjacent_transpositions(n)
                .iter()
                .map(|p| p.extend(n + 1))
                .collect::<Result<_>>()?;
            gens.push(Permutation::transposition(n + 1, 1, n + 1)?);
            Ok(PermGroup::new(n + 1, gens)?.order())
        }
        Family::D if n <= D_EXHAUSTIVE_MAX => {
            let mut gens: Vec<SignedPermutation> = crate::perm::adjacent_transpositions(n)
                .into_iter()
                .map(SignedPermutation::from_permutation)
                .collect();
            gens.push(d_letter(n, 1, 2)?);
            Ok(signed_closure(&gens)?.len() as u64)
        }
        _ => OrderTable::order(family, n).ok_or(Error::OutOfScope {
            family: family.letter(),
            n,
            reason: format!("no oracle order for {}", spec.name()),
        }),
    }
}

/// All signed permutation matrices of degree `n` with an even number of
/// `-1` entries.
pub fn even_signed_permutations(n: usize) -> Vec<SignedPermutation> {
    let mut out = Vec::new();
    for p in PermGroup::symmetric(n).elements() {
        for mask in 0u32..(1 << n) {
            if mask.count_ones() % 2 == 1 {
                continue;
            }
            let signs = (0..n)
                .map(|i| if mask >> i & 1 == 1 { -1 } else { 1 })
                .collect();
            out.push(SignedPermutation {
                perm: p.clone(),
                signs,
            });
        }
    }
    out
}

/// Full D_n matrix group versus the even-signed permutations, as sets.
pub fn d_group_matches_even_signed(n: usize) -> Result<bool> {
    let spec = FamilySpec::new(Family::D, n)?;
    let rep = Representation::new(&spec)?;
    let mut gens: Vec<ExactMatrix> = rep.generator_images().to_vec();
    gens.extend(rep.control_generators().iter().map(|(_, m)| m.clone()));
    let cap = 2 * OrderTable::order(Family::D, n).unwrap_or(0) as usize + 1;
    let group = matrix_group_elements(&gens, cap)?;
    let mut seen = HashSet::new();
    for m in &group {
        let Some((perm, signs)) = m.as_signed_permutation() else {
            return Ok(false);
        };
        seen.insert(SignedPermutation { perm, signs });
    }
    let want: HashSet<_> = even_signed_permutations(n).into_iter().collect();
    Ok(seen.len() == group.len() && seen == want)
}

/// `|S_n| = n!` via the control group, for report totals.
pub fn control_order(n: usize) -> u64 {
    factorial(n)
}

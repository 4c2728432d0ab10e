//! Permutations of `{1..n}`, the symmetric control group and its action on
//! k-subsets, plus the brute-force subgroup computations (stabilizers,
//! centralizers, orders) needed at degree at most 8.
//!
//! Conventions: points are 1-based in every constructor that takes labels
//! and in every printed form; storage is 0-based. Products act left to
//! right, so `p.compose(&q)` sends `i` to `q(p(i))`.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use crate::error::{Error, Result};

/// A bijection of `{1..n}` stored as its 0-based image array.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    /// Builds from 0-based images, checking bijectivity.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        if n == 0 {
            return Err(Error::NotAPermutation("degree 0".into()));
        }
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(Error::NotAPermutation(format!("{images:?}")));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation of degree `n` from cycles written with 1-based labels.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut touched = vec![false; n];
        for cycle in cycles {
            for &p in cycle.iter() {
                if p == 0 || p > n {
                    return Err(Error::InvalidPoint {
                        point: p,
                        degree: n,
                    });
                }
                if touched[p - 1] {
                    return Err(Error::NotAPermutation(format!("point {p} repeated")));
                }
                touched[p - 1] = true;
            }
            for (i, &p) in cycle.iter().enumerate() {
                images[p - 1] = cycle[(i + 1) % cycle.len()] - 1;
            }
        }
        Permutation::from_images(images)
    }

    /// The transposition `(a,b)` on 1-based labels.
    pub fn transposition(n: usize, a: usize, b: usize) -> Result<Self> {
        if a == b {
            return Err(Error::NotAPermutation(format!("({a},{b})")));
        }
        Permutation::from_cycles(n, &[&[a, b]])
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// 0-based image of the 0-based point `i`.
    #[inline]
    pub fn image(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// "Apply `self`, then `other`".
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(self.then(other))
    }

    /// Infallible compose for callers that already know the degrees agree.
    pub(crate) fn then(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self.images.iter().map(|&x| other.images[x]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x] = i;
        }
        Permutation { images: inv }
    }

    /// `other^-1 * self * other`, the image of `self` under relabelling by `other`.
    pub fn conjugate_by(&self, other: &Permutation) -> Permutation {
        other.inverse().then(self).then(other)
    }

    pub fn commutes_with(&self, other: &Permutation) -> bool {
        self.then(other) == other.then(self)
    }

    /// Disjoint cycles of length ≥ 2, 0-based, each starting at its least point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.images[start];
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.images[x];
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    /// +1 for even permutations, -1 for odd ones.
    pub fn sign(&self) -> i32 {
        let transpositions: usize = self.cycles().iter().map(|c| c.len() - 1).sum();
        if transpositions % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Extends to a larger degree by fixing the new points.
    pub fn extend(&self, n: usize) -> Result<Permutation> {
        if n < self.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: n,
            });
        }
        let mut images = self.images.clone();
        images.extend(self.degree()..n);
        Ok(Permutation { images })
    }

    pub fn image_of_subset(&self, s: &KSubset) -> KSubset {
        let mut elems: Vec<usize> = s.elems.iter().map(|&x| self.images[x]).collect();
        elems.sort_unstable();
        KSubset { elems }
    }

    /// The induced permutation on the `C(n,k)` k-subsets, indexed in
    /// lexicographic order of their sorted element lists.
    pub fn subset_action(&self, k: usize) -> Result<Permutation> {
        let n = self.degree();
        let subsets = KSubset::all(n, k)?;
        let images = subsets
            .iter()
            .map(|s| self.image_of_subset(s).rank(n))
            .collect();
        Ok(Permutation { images })
    }

    /// Parses cycle notation; the degree is `n`, and every label must lie in `1..=n`.
    pub fn parse_with_degree(s: &str, n: usize) -> Result<Permutation> {
        let cycles = parse_cycles(s)?;
        let refs: Vec<&[usize]> = cycles.iter().map(|c| c.as_slice()).collect();
        Permutation::from_cycles(n, &refs)
    }
}

fn parse_cycles(s: &str) -> Result<Vec<Vec<usize>>> {
    let s = s.trim();
    let mut out = Vec::new();
    let mut rest = s;
    while !rest.is_empty() {
        let open = rest
            .strip_prefix('(')
            .ok_or_else(|| Error::Parse(format!("expected '(' in {s:?}")))?;
        let close = open
            .find(')')
            .ok_or_else(|| Error::Parse(format!("unclosed cycle in {s:?}")))?;
        let body = open[..close].trim();
        if !body.is_empty() {
            let cycle = body
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse::<usize>()
                        .map_err(|e| Error::Parse(format!("{t:?}: {e}")))
                })
                .collect::<Result<Vec<_>>>()?;
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        rest = open[close + 1..].trim_start();
    }
    Ok(out)
}

impl FromStr for Permutation {
    type Err = Error;

    /// Degree is the largest label mentioned (at least 1).
    fn from_str(s: &str) -> Result<Self> {
        let cycles = parse_cycles(s)?;
        let n = cycles.iter().flatten().copied().max().unwrap_or(1);
        let refs: Vec<&[usize]> = cycles.iter().map(|c| c.as_slice()).collect();
        Permutation::from_cycles(n, &refs)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (i, x) in c.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", x + 1)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl serde::Serialize for Permutation {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl std::ops::Mul for &Permutation {
    type Output = Permutation;

    /// Left-to-right product. Panics on a degree mismatch.
    fn mul(self, rhs: &Permutation) -> Permutation {
        self.compose(rhs).expect("permutation degrees differ")
    }
}

/// A k-element subset of `{1..n}`; 0-based sorted storage.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct KSubset {
    elems: Vec<usize>,
}

impl KSubset {
    /// From 1-based labels in any order; labels must be distinct and nonzero.
    pub fn from_labels(labels: &[usize]) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::Parse("empty subset".into()));
        }
        let mut elems = Vec::with_capacity(labels.len());
        for &l in labels {
            if l == 0 {
                return Err(Error::InvalidPoint {
                    point: 0,
                    degree: 0,
                });
            }
            elems.push(l - 1);
        }
        elems.sort_unstable();
        if elems.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Parse(format!("repeated label in {labels:?}")));
        }
        Ok(KSubset { elems })
    }

    pub(crate) fn from_sorted_zero_based(elems: Vec<usize>) -> Self {
        debug_assert!(elems.windows(2).all(|w| w[0] < w[1]));
        KSubset { elems }
    }

    /// `{1..k}`.
    pub fn initial(k: usize) -> Self {
        KSubset {
            elems: (0..k).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    /// 0-based elements.
    pub fn elements(&self) -> &[usize] {
        &self.elems
    }

    /// 1-based labels.
    pub fn labels(&self) -> Vec<usize> {
        self.elems.iter().map(|x| x + 1).collect()
    }

    pub fn max_label(&self) -> usize {
        self.elems.last().map_or(0, |x| x + 1)
    }

    pub fn contains(&self, point: usize) -> bool {
        self.elems.binary_search(&point).is_ok()
    }

    pub fn intersection_len(&self, other: &KSubset) -> usize {
        self.elems.iter().filter(|x| other.contains(**x)).count()
    }

    /// All k-subsets of `{1..n}` in lexicographic order.
    pub fn all(n: usize, k: usize) -> Result<Vec<KSubset>> {
        if k == 0 || k > n {
            return Err(Error::CardinalityOutOfRange { k, n });
        }
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (0..k).collect();
        loop {
            out.push(KSubset { elems: cur.clone() });
            // advance to the next combination
            let mut i = k;
            loop {
                if i == 0 {
                    return Ok(out);
                }
                i -= 1;
                if cur[i] < n - k + i {
                    break;
                }
                if i == 0 {
                    return Ok(out);
                }
            }
            cur[i] += 1;
            for j in i + 1..k {
                cur[j] = cur[j - 1] + 1;
            }
        }
    }

    /// 0-based position in the lexicographic list of `KSubset::all(n, k)`.
    pub fn rank(&self, n: usize) -> usize {
        let k = self.elems.len();
        let mut rank = 0;
        let mut prev = 0;
        for (i, &x) in self.elems.iter().enumerate() {
            for skipped in prev..x {
                rank += binomial(n - skipped - 1, k - i - 1);
            }
            prev = x + 1;
        }
        rank
    }
}

impl fmt::Display for KSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, x) in self.elems.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", x + 1)?;
        }
        write!(f, "}}")
    }
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

pub fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// A permutation group given by generators, with its element list computed
/// lazily by closure. Only meant for small degrees (n ≤ 8).
#[derive(Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    elements: OnceLock<Vec<Permutation>>,
}

impl Clone for PermGroup {
    fn clone(&self) -> Self {
        let elements = OnceLock::new();
        if let Some(e) = self.elements.get() {
            let _ = elements.set(e.clone());
        }
        PermGroup {
            degree: self.degree,
            generators: self.generators.clone(),
            elements,
        }
    }
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        if degree == 0 {
            return Err(Error::NotAPermutation("degree 0".into()));
        }
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    left: degree,
                    right: g.degree(),
                });
            }
        }
        let generators = generators
            .into_iter()
            .filter(|g| !g.is_identity())
            .collect();
        Ok(PermGroup {
            degree,
            generators,
            elements: OnceLock::new(),
        })
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup {
            degree,
            generators: Vec::new(),
            elements: OnceLock::new(),
        }
    }

    /// S_n generated by the adjacent transpositions `(i,i+1)`.
    pub fn symmetric(n: usize) -> Self {
        PermGroup {
            degree: n,
            generators: adjacent_transpositions(n),
            elements: OnceLock::new(),
        }
    }

    /// Group whose elements are exactly `elements` (assumed closed); a small
    /// generating set is picked greedily.
    fn from_element_set(degree: usize, mut elements: Vec<Permutation>) -> Self {
        elements.sort();
        let mut generators: Vec<Permutation> = Vec::new();
        let mut span: HashSet<Permutation> = HashSet::from([Permutation::identity(degree)]);
        for e in &elements {
            if !span.contains(e) {
                generators.push(e.clone());
                span = closure(degree, &generators).into_iter().collect();
            }
        }
        let group = PermGroup {
            degree,
            generators,
            elements: OnceLock::new(),
        };
        let _ = group.elements.set(elements);
        group
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// Every element, sorted.
    pub fn elements(&self) -> &[Permutation] {
        self.elements.get_or_init(|| {
            let mut e = closure(self.degree, &self.generators);
            e.sort();
            e
        })
    }

    pub fn order(&self) -> u64 {
        self.elements().len() as u64
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        p.degree() == self.degree && self.elements().binary_search(p).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.generators.iter().all(|g| other.contains(g))
    }

    /// Equal as sets of permutations.
    pub fn same_elements(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.elements() == other.elements()
    }

    /// Subgroup fixing every listed point (1-based labels).
    pub fn pointwise_stabilizer(&self, points: &[usize]) -> Result<PermGroup> {
        for &p in points {
            if p == 0 || p > self.degree {
                return Err(Error::InvalidPoint {
                    point: p,
                    degree: self.degree,
                });
            }
        }
        let kept = self
            .elements()
            .iter()
            .filter(|g| points.iter().all(|&p| g.image(p - 1) == p - 1))
            .cloned()
            .collect();
        Ok(PermGroup::from_element_set(self.degree, kept))
    }

    /// Subgroup mapping each of the listed subsets onto itself.
    pub fn setwise_stabilizer(&self, subsets: &[KSubset]) -> Result<PermGroup> {
        for s in subsets {
            if s.max_label() > self.degree {
                return Err(Error::InvalidPoint {
                    point: s.max_label(),
                    degree: self.degree,
                });
            }
        }
        let kept = self
            .elements()
            .iter()
            .filter(|g| subsets.iter().all(|s| &g.image_of_subset(s) == s))
            .cloned()
            .collect();
        Ok(PermGroup::from_element_set(self.degree, kept))
    }

    /// Elements of `self` commuting with every generator of `h`.
    pub fn centralizer(&self, h: &PermGroup) -> Result<PermGroup> {
        if !h.is_subgroup_of(self) {
            return Err(Error::NotSubgroup);
        }
        let kept = self
            .elements()
            .iter()
            .filter(|g| h.generators.iter().all(|x| g.commutes_with(x)))
            .cloned()
            .collect();
        Ok(PermGroup::from_element_set(self.degree, kept))
    }
}

/// `(1,2), (2,3), …, (n-1,n)`.
pub fn adjacent_transpositions(n: usize) -> Vec<Permutation> {
    (1..n)
        .map(|i| Permutation::transposition(n, i, i + 1).expect("valid transposition"))
        .collect()
}

fn closure(degree: usize, generators: &[Permutation]) -> Vec<Permutation> {
    let id = Permutation::identity(degree);
    let mut seen: HashSet<Permutation> = HashSet::from([id.clone()]);
    let mut out = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in generators {
            let y = x.then(g);
            if seen.insert(y.clone()) {
                out.push(y.clone());
                queue.push_back(y);
            }
        }
    }
    out
}

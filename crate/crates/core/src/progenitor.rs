//! Words of the progenitor `2^{*C(n,k)} : S_n` in the normal form
//! `π · t_{S1} ⋯ t_{Sm}`, the single relator, and the symbolic reduction
//! moves available for the A and D families.
//!
//! The control group acts on symmetric generators by `π⁻¹ t_S π = t_{Sπ}`,
//! so `t_S π = π t_{Sπ}`: pushing a control element leftwards through a
//! letter relabels that letter by the element.

use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{KSubset, Permutation};

/// Seed used by every randomized suite unless overridden.
pub const DEFAULT_SEED: u64 = 0x5eed_c0de;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize, PartialOrd, Ord)]
pub enum Family {
    A,
    D,
    E,
}

impl Family {
    /// Cardinality of the subsets indexing the symmetric generators.
    pub fn subset_size(self) -> usize {
        match self {
            Family::A => 1,
            Family::D => 2,
            Family::E => 3,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::D => 'D',
            Family::E => 'E',
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

impl std::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "A" | "a" => Ok(Family::A),
            "D" | "d" => Ok(Family::D),
            "E" | "e" => Ok(Family::E),
            other => Err(Error::Parse(format!("unknown family {other:?}"))),
        }
    }
}

/// One member of a family: the progenitor `2^{*C(n,k)} : S_n` factored by
/// `(t_{1..k} (k,k+1))^3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilySpec {
    family: Family,
    n: usize,
    experimental: bool,
    generators: Vec<KSubset>,
}

impl FamilySpec {
    /// In-scope members only: A_n (n ≥ 2), D_n (n ≥ 4), E_n (n = 6, 7, 8).
    pub fn new(family: Family, n: usize) -> Result<Self> {
        let ok = match family {
            Family::A => n >= 2,
            Family::D => n >= 4,
            Family::E => (6..=8).contains(&n),
        };
        if !ok {
            return Err(Error::OutOfScope {
                family: family.letter(),
                n,
                reason: match family {
                    Family::A => "A needs n >= 2 (the relator uses (1,2))".into(),
                    Family::D => "D needs n >= 4".into(),
                    Family::E => {
                        "E needs n in {6,7,8}; use the experimental flag with a cap".into()
                    }
                },
            });
        }
        Self::build(family, n, false)
    }

    /// Any `n` with `k < n`; callers must supply an enumeration cap.
    pub fn experimental(family: Family, n: usize) -> Result<Self> {
        if family.subset_size() >= n {
            return Err(Error::OutOfScope {
                family: family.letter(),
                n,
                reason: "need n > k so that the relator is defined".into(),
            });
        }
        Self::build(family, n, true)
    }

    fn build(family: Family, n: usize, experimental: bool) -> Result<Self> {
        let generators = KSubset::all(n, family.subset_size())?;
        Ok(FamilySpec {
            family,
            n,
            experimental,
            generators,
        })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.family.subset_size()
    }

    pub fn is_experimental(&self) -> bool {
        self.experimental
    }

    /// Dimension of the real representation: n+1 for A, n otherwise.
    pub fn dim(&self) -> usize {
        match self.family {
            Family::A => self.n + 1,
            Family::D | Family::E => self.n,
        }
    }

    /// Symmetric generator indices in lexicographic order.
    pub fn generators(&self) -> &[KSubset] {
        &self.generators
    }

    pub fn name(&self) -> String {
        format!("{}_{}", self.family, self.n)
    }

    pub fn check_subset(&self, s: &KSubset) -> Result<()> {
        if s.len() != self.k() {
            return Err(Error::WrongCardinality {
                subset: s.to_string(),
                got: s.len(),
                want: self.k(),
            });
        }
        if s.max_label() > self.n {
            return Err(Error::InvalidPoint {
                point: s.max_label(),
                degree: self.n,
            });
        }
        Ok(())
    }

    /// The control element `(k,k+1)` of the relator.
    pub fn relator_control(&self) -> Permutation {
        let k = self.k();
        Permutation::transposition(self.n, k, k + 1).expect("k < n")
    }

    /// The relator expanded as `(k,k+1) · t_{1..k} t_{1..k-1,k+1} t_{1..k}`,
    /// which equals `((k,k+1) t_{1..k})^3`.
    pub fn relator(&self) -> Word {
        let k = self.k();
        let s = KSubset::initial(k);
        let mut labels: Vec<usize> = (1..k).collect();
        labels.push(k + 1);
        let s2 = KSubset::from_labels(&labels).expect("distinct labels");
        Word::from_parts(self.relator_control(), vec![s.clone(), s2, s])
    }

    pub fn require(&self, family: Family) -> Result<()> {
        if self.family != family {
            return Err(Error::WrongFamily {
                want: family.letter(),
                got: self.family.letter(),
            });
        }
        Ok(())
    }
}

/// `control · t_{letters[0]} ⋯ t_{letters[m-1]}`, freely reduced.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Word {
    control: Permutation,
    letters: Vec<KSubset>,
}

impl Word {
    pub fn identity(n: usize) -> Self {
        Word {
            control: Permutation::identity(n),
            letters: Vec::new(),
        }
    }

    pub fn from_control(control: Permutation) -> Self {
        Word {
            control,
            letters: Vec::new(),
        }
    }

    /// Validated constructor; letters must fit the family.
    pub fn new(spec: &FamilySpec, control: Permutation, letters: Vec<KSubset>) -> Result<Self> {
        if control.degree() != spec.n() {
            return Err(Error::DegreeMismatch {
                left: spec.n(),
                right: control.degree(),
            });
        }
        for s in &letters {
            spec.check_subset(s)?;
        }
        Ok(Word::from_parts(control, letters))
    }

    /// Word made only of symmetric generators, given by 1-based labels.
    pub fn from_letters(spec: &FamilySpec, letters: &[&[usize]]) -> Result<Self> {
        let letters = letters
            .iter()
            .map(|l| KSubset::from_labels(l))
            .collect::<Result<Vec<_>>>()?;
        Word::new(spec, Permutation::identity(spec.n()), letters)
    }

    pub(crate) fn from_parts(control: Permutation, letters: Vec<KSubset>) -> Self {
        let mut w = Word {
            control,
            letters: Vec::with_capacity(letters.len()),
        };
        for s in letters {
            w.push_letter(s);
        }
        w
    }

    fn push_letter(&mut self, s: KSubset) {
        if self.letters.last() == Some(&s) {
            self.letters.pop();
        } else {
            self.letters.push(s);
        }
    }

    pub fn control(&self) -> &Permutation {
        &self.control
    }

    pub fn letters(&self) -> &[KSubset] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.control.degree()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty() && self.control.is_identity()
    }

    /// Group product `self · other` in normal form.
    pub fn multiply(&self, other: &Word) -> Result<Word> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        // π w σ u = (πσ) w^σ u
        let sigma = &other.control;
        let mut out = Word {
            control: self.control.then(sigma),
            letters: Vec::with_capacity(self.len() + other.len()),
        };
        for s in &self.letters {
            out.push_letter(sigma.image_of_subset(s));
        }
        for s in &other.letters {
            out.push_letter(s.clone());
        }
        Ok(out)
    }

    pub fn inverse(&self) -> Word {
        // (π w)^-1 = w^-1 π^-1 = π^-1 (w^-1)^{π^-1}
        let pinv = self.control.inverse();
        let letters = self
            .letters
            .iter()
            .rev()
            .map(|s| pinv.image_of_subset(s))
            .collect();
        Word::from_parts(pinv, letters)
    }

    /// Letters only, with identity control.
    pub fn letter_part(&self) -> Word {
        Word {
            control: Permutation::identity(self.degree()),
            letters: self.letters.clone(),
        }
    }

    /// Replaces letters `from..to` by `replacement`, keeping the element
    /// `prefix · replacement · suffix` in normal form.
    fn splice(&self, from: usize, to: usize, replacement: &Word) -> Word {
        let prefix = Word {
            control: self.control.clone(),
            letters: self.letters[..from].to_vec(),
        };
        let suffix = Word {
            control: Permutation::identity(self.degree()),
            letters: self.letters[to..].to_vec(),
        };
        prefix
            .multiply(replacement)
            .and_then(|w| w.multiply(&suffix))
            .expect("degrees agree")
    }

    /// Parses the display format, e.g. `"(1,2) * t{1,2} t{3,4}"`, `"t{1,2,3}"`, `"*"`.
    pub fn parse(spec: &FamilySpec, s: &str) -> Result<Word> {
        let s = s.trim();
        if s == "*" || s.is_empty() {
            return Ok(Word::identity(spec.n()));
        }
        let (control_part, letter_part) = match s.find('*') {
            Some(i) => (&s[..i], &s[i + 1..]),
            None if s.starts_with('(') => (s, ""),
            None => ("", s),
        };
        let control = if control_part.trim().is_empty() {
            Permutation::identity(spec.n())
        } else {
            Permutation::parse_with_degree(control_part, spec.n())?
        };
        let mut letters = Vec::new();
        for tok in letter_part.split_whitespace() {
            let body = tok
                .strip_prefix("t{")
                .and_then(|t| t.strip_suffix('}'))
                .ok_or_else(|| Error::Parse(format!("bad letter {tok:?}")))?;
            let labels = body
                .split(',')
                .map(|x| {
                    x.trim()
                        .parse::<usize>()
                        .map_err(|e| Error::Parse(format!("{x:?}: {e}")))
                })
                .collect::<Result<Vec<_>>>()?;
            letters.push(KSubset::from_labels(&labels)?);
        }
        Word::new(spec, control, letters)
    }

    /// Ordering used for witness tie-breaks: length, then the letter ranks.
    pub fn shortlex_key(&self, n: usize) -> (usize, Vec<usize>) {
        (self.len(), self.letters.iter().map(|s| s.rank(n)).collect())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let has_control = !self.control.is_identity();
        if !has_control && self.letters.is_empty() {
            return write!(f, "*");
        }
        if has_control {
            write!(f, "{}", self.control)?;
            if self.letters.is_empty() {
                return Ok(());
            }
            write!(f, " * ")?;
        }
        for (i, s) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "t{s}")?;
        }
        Ok(())
    }
}

/// `multiply` with the family's degree check.
pub fn multiply(a: &Word, b: &Word, spec: &FamilySpec) -> Result<Word> {
    for w in [a, b] {
        if w.degree() != spec.n() {
            return Err(Error::DegreeMismatch {
                left: spec.n(),
                right: w.degree(),
            });
        }
    }
    a.multiply(b)
}

/// The relator as a rewrite rule: if `s` and `s2` share all but one index,
/// `t_s t_{s2} = (a,b) t_s` with `a ∈ s \ s2`, `b ∈ s2 \ s`.
fn relation_rewrite(n: usize, s: &KSubset, s2: &KSubset) -> Option<Word> {
    if s.len() != s2.len() || s.intersection_len(s2) + 1 != s.len() {
        return None;
    }
    let a = *s.elements().iter().find(|x| !s2.contains(**x))?;
    let b = *s2.elements().iter().find(|x| !s.contains(**x))?;
    let swap = Permutation::transposition(n, a + 1, b + 1).ok()?;
    Some(Word::from_parts(swap, vec![s.clone()]))
}

/// Reduces an A-family word to at most one letter using `t_i t_j = (ij) t_i`.
/// The result is equal to `w` in the target group.
pub fn an_reduce(w: &Word, spec: &FamilySpec) -> Result<Word> {
    spec.require(Family::A)?;
    let mut cur = w.clone();
    while cur.len() > 1 {
        let rewrite = relation_rewrite(spec.n(), &cur.letters[0], &cur.letters[1])
            .expect("distinct 1-subsets always share k-1 = 0 indices");
        cur = cur.splice(0, 2, &rewrite);
    }
    Ok(cur)
}

/// Nearest pair of letters sharing an index: `(p, q)` with `q - p` minimal,
/// leftmost among ties.
fn nearest_common_index(letters: &[KSubset]) -> Option<(usize, usize)> {
    for gap in 1..letters.len() {
        for p in 0..letters.len() - gap {
            if letters[p].intersection_len(&letters[p + gap]) > 0 {
                return Some((p, p + gap));
            }
        }
    }
    None
}

/// Rewrites a D-family word until no two letters share an index.
///
/// Adjacent letters with a common index collapse through the relator.
/// Separated ones are pulled together by inserting `t_X t_X` in front of
/// the later letter and applying the relator on both sides of it; the
/// resulting control elements are pushed to the front. Every step is an
/// equality in the target group, so the double coset (indeed the element)
/// is unchanged.
pub fn shorten_common_index(w: &Word, spec: &FamilySpec) -> Result<Word> {
    spec.require(Family::D)?;
    let n = spec.n();
    let mut cur = w.clone();
    while let Some((p, q)) = nearest_common_index(&cur.letters) {
        if q == p + 1 {
            let rewrite = relation_rewrite(n, &cur.letters[p], &cur.letters[q])
                .expect("distinct adjacent pairs sharing one index");
            cur = cur.splice(p, q + 1, &rewrite);
            continue;
        }
        let (lp, lq, prev) = (&cur.letters[p], &cur.letters[q], &cur.letters[q - 1]);
        let x = *lq
            .elements()
            .iter()
            .find(|e| lp.contains(**e))
            .expect("common index");
        let z = *lq.elements().iter().find(|e| **e != x).expect("pair");
        let (c, d) = (prev.elements()[0], prev.elements()[1]);
        let bridge = KSubset::from_sorted_zero_based(if x < c { vec![x, c] } else { vec![c, x] });
        // t_prev t_X = (d x) t_prev  and  t_X t_lq = (c z) t_X
        let left = Word::from_parts(
            Permutation::transposition(n, d + 1, x + 1)?,
            vec![prev.clone()],
        );
        let right = Word::from_parts(Permutation::transposition(n, c + 1, z + 1)?, vec![bridge]);
        let replacement = left.multiply(&right)?;
        cur = cur.splice(q - 1, q + 1, &replacement);
    }
    Ok(cur)
}

/// Canonical double-coset representative `t_{12} t_{34} ⋯ t_{2m-1,2m}`.
pub fn dn_canonical(w: &Word, spec: &FamilySpec) -> Result<Word> {
    let short = shorten_common_index(w, spec)?;
    let letters = (0..short.len())
        .map(|i| KSubset::from_sorted_zero_based(vec![2 * i, 2 * i + 1]))
        .collect();
    Ok(Word::from_parts(Permutation::identity(spec.n()), letters))
}

pub fn random_permutation<R: Rng>(n: usize, rng: &mut R) -> Permutation {
    let mut images: Vec<usize> = (0..n).collect();
    images.shuffle(rng);
    Permutation::from_images(images).expect("shuffle is a bijection")
}

/// Random word with a random control element and up to `max_len` letters.
pub fn random_word<R: Rng>(spec: &FamilySpec, max_len: usize, rng: &mut R) -> Word {
    let len = rng.gen_range(0..=max_len);
    let gens = spec.generators();
    let letters = (0..len)
        .map(|_| gens[rng.gen_range(0..gens.len())].clone())
        .collect();
    Word::from_parts(random_permutation(spec.n(), rng), letters)
}

//! Seeded property suites and reference tables shared by the test targets.
#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use symgen::coset_enum::{canonicalize, same_double_coset};
use symgen::matrix_reps::{dihedral_centralizer_check, evaluate_word, perm_matrix, Representation};
use symgen::perm::{PermGroup, Permutation};
use symgen::progenitor::{
    random_permutation, random_word, shorten_common_index, Family, FamilySpec, Word, DEFAULT_SEED,
};

pub const TRIALS: usize = 500;

pub fn spec(f: Family, n: usize) -> FamilySpec {
    FamilySpec::new(f, n).unwrap()
}

/// Result of one seeded suite.
pub struct Suite {
    pub name: &'static str,
    pub trials: usize,
    pub failures: Vec<String>,
}

impl Suite {
    fn new(name: &'static str) -> Self {
        Suite {
            name,
            trials: 0,
            failures: Vec::new(),
        }
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.trials += 1;
        if !ok && self.failures.len() < 5 {
            self.failures.push(what());
        }
    }

    pub fn passed(&self) -> bool {
        self.trials >= TRIALS && self.failures.is_empty()
    }
}

fn rng(salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(DEFAULT_SEED ^ salt)
}

/// Families small enough to sample cheaply, cycling with the trial index.
fn sample_specs() -> Vec<FamilySpec> {
    vec![
        spec(Family::A, 4),
        spec(Family::A, 7),
        spec(Family::D, 5),
        spec(Family::D, 7),
        spec(Family::E, 6),
        spec(Family::E, 7),
        spec(Family::E, 8),
    ]
}

/// `eval(a * b) = eval(a) eval(b)` and `eval(w w^-1) = I`.
pub fn word_homomorphism() -> Suite {
    let mut s = Suite::new("word normal form is a homomorphism");
    let specs = sample_specs();
    let reps: Vec<_> = specs.iter().map(|sp| Representation::new(sp).unwrap()).collect();
    let mut r = rng(1);
    for i in 0..TRIALS {
        let k = i % specs.len();
        let (sp, rep) = (&specs[k], &reps[k]);
        let mut a = random_word(sp, 6, &mut r);
        if r.gen_bool(0.5) {
            a = Word::from_control(random_permutation(sp.n(), &mut r)).multiply(&a).unwrap();
        }
        let b = random_word(sp, 6, &mut r);
        let ab = a.multiply(&b).unwrap();
        let lhs = evaluate_word(&ab, rep).unwrap();
        let rhs = &evaluate_word(&a, rep).unwrap() * &evaluate_word(&b, rep).unwrap();
        let inv = evaluate_word(&a.multiply(&a.inverse()).unwrap(), rep).unwrap();
        s.record(lhs == rhs && inv.is_identity(), || format!("{}: {a} * {b}", sp.name()));
    }
    s
}

/// `shorten_common_index(w)` lies in the double coset of `w` (and is
/// equal to it as a matrix).
pub fn shorten_invariance() -> Suite {
    let mut s = Suite::new("shorten_common_index keeps the double coset");
    let specs: Vec<_> = (4..=8).map(|n| spec(Family::D, n)).collect();
    let reps: Vec<_> = specs.iter().map(|sp| Representation::new(sp).unwrap()).collect();
    let mut r = rng(2);
    for i in 0..TRIALS {
        let k = i % specs.len();
        let (sp, rep) = (&specs[k], &reps[k]);
        let w = random_word(sp, 8, &mut r);
        let short = shorten_common_index(&w, sp).unwrap();
        let same = same_double_coset(&w, &short, sp).unwrap();
        let equal = evaluate_word(&w, rep).unwrap() == evaluate_word(&short, rep).unwrap();
        s.record(same && equal, || format!("{}: {w} -> {short}", sp.name()));
    }
    s
}

/// `canonicalize(P_pi m) = canonicalize(m)`.
pub fn canonicalize_invariance() -> Suite {
    let mut s = Suite::new("canonicalize ignores row permutations by N");
    let specs = sample_specs();
    let reps: Vec<_> = specs.iter().map(|sp| Representation::new(sp).unwrap()).collect();
    let mut r = rng(3);
    for i in 0..TRIALS {
        let k = i % specs.len();
        let (sp, rep) = (&specs[k], &reps[k]);
        let m = evaluate_word(&random_word(sp, 7, &mut r), rep).unwrap();
        let pi = random_permutation(sp.n(), &mut r);
        let p = perm_matrix(&pi, sp.dim()).unwrap();
        let ok = canonicalize(&(&p * &m), sp).canon == canonicalize(&m, sp).canon;
        s.record(ok, || format!("{}: pi = {pi}", sp.name()));
    }
    s
}

/// `<t_a, t_b> ∩ N <= C_N(Stab_N(a, b))` on random generator pairs, one
/// family member of each kind per round.
pub fn dihedral_containment() -> Suite {
    let mut s = Suite::new("<t_a, t_b> meets N inside C_N(Stab_N(a,b))");
    let specs = vec![spec(Family::A, 5), spec(Family::D, 5), spec(Family::E, 6)];
    let reps: Vec<_> = specs.iter().map(|sp| Representation::new(sp).unwrap()).collect();
    let mut r = rng(4);
    for i in 0..TRIALS {
        let k = i % specs.len();
        let (sp, rep) = (&specs[k], &reps[k]);
        let gens = sp.generators();
        let a = &gens[r.gen_range(0..gens.len())];
        let b = &gens[r.gen_range(0..gens.len())];
        let c = dihedral_centralizer_check(rep, a, b).unwrap();
        s.record(c.contained, || format!("{}: t{a}, t{b}", sp.name()));
    }
    s
}

pub fn all_suites() -> Vec<Suite> {
    vec![
        word_homomorphism(),
        shorten_invariance(),
        canonicalize_invariance(),
        dihedral_containment(),
    ]
}

fn group(n: usize, cycles: &[&[usize]]) -> PermGroup {
    let gens = cycles
        .iter()
        .map(|c| Permutation::from_cycles(n, &[c]).unwrap())
        .collect();
    PermGroup::new(n, gens).unwrap()
}

/// `Stab_{S_n}(1,2)` as listed: trivial for n <= 3, else `<(3,4), (3,...,n)>`.
pub fn expected_stabilizer(n: usize) -> PermGroup {
    if n <= 3 {
        return PermGroup::trivial(n);
    }
    let long: Vec<usize> = (3..=n).collect();
    group(n, &[&[3, 4], &long])
}

/// `C_{S_n}(Stab_{S_n}(1,2))` as listed.
pub fn expected_centralizer(n: usize) -> PermGroup {
    match n {
        3 => group(3, &[&[1, 2], &[1, 2, 3]]),
        4 => group(4, &[&[1, 2], &[3, 4]]),
        _ => group(n, &[&[1, 2]]),
    }
}

/// Reproduces both case tables for n = 2..8; returns mismatches.
pub fn case_table_mismatches() -> Vec<String> {
    let mut bad = Vec::new();
    for n in 2..=8 {
        let sn = PermGroup::symmetric(n);
        let stab = sn.pointwise_stabilizer(&[1, 2]).unwrap();
        if !stab.same_elements(&expected_stabilizer(n)) {
            bad.push(format!("Stab_S{n}(1,2) has order {}", stab.order()));
        }
        let cent = sn.centralizer(&stab).unwrap();
        if !cent.same_elements(&expected_centralizer(n)) {
            bad.push(format!("C_S{n}(Stab) has order {}", cent.order()));
        }
    }
    bad
}

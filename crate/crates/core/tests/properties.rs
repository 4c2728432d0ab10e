mod common;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{spec, TRIALS};
use symgen::coset_enum::enumerate;
use symgen::gf2::reduce_mod2;
use symgen::matrix_reps::{evaluate_word, perm_matrix, Representation};
use symgen::oracles::{a_oracle_map, d_oracle_map};
use symgen::perm::{adjacent_transpositions, binomial, Permutation};
use symgen::progenitor::{random_permutation, random_word, Family, DEFAULT_SEED};

fn rng(salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(DEFAULT_SEED.wrapping_add(salt))
}

fn check(s: common::Suite) {
    assert!(s.trials >= TRIALS, "{}: only {} trials", s.name, s.trials);
    assert!(s.failures.is_empty(), "{}: {:?}", s.name, s.failures);
}

#[test]
fn word_homomorphism_suite() {
    check(common::word_homomorphism());
}

#[test]
fn shorten_invariance_suite() {
    check(common::shorten_invariance());
}

#[test]
fn canonicalize_invariance_suite() {
    check(common::canonicalize_invariance());
}

#[test]
fn dihedral_containment_suite() {
    check(common::dihedral_containment());
}

#[test]
fn compose_is_associative_with_inverses() {
    let mut r = rng(10);
    for t in 0..1000 {
        let n = 1 + t % 8;
        let p = random_permutation(n, &mut r);
        let q = random_permutation(n, &mut r);
        let s = random_permutation(n, &mut r);
        let left = p.compose(&q).unwrap().compose(&s).unwrap();
        let right = p.compose(&q.compose(&s).unwrap()).unwrap();
        assert_eq!(left, right);
        assert!(p.compose(&p.inverse()).unwrap().is_identity());
        // pointwise: apply p, then q
        let pq = p.compose(&q).unwrap();
        for i in 0..n {
            assert_eq!(pq.image(i), q.image(p.image(i)));
        }
    }
}

#[test]
fn subset_action_is_a_faithful_homomorphism() {
    let mut r = rng(11);
    for t in 0..TRIALS {
        let n = 2 + t % 7;
        let k = 1 + t % n;
        let p = random_permutation(n, &mut r);
        let q = random_permutation(n, &mut r);
        let lhs = p.compose(&q).unwrap().subset_action(k).unwrap();
        let rhs = p
            .subset_action(k)
            .unwrap()
            .compose(&q.subset_action(k).unwrap())
            .unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(lhs.degree(), binomial(n, k));
    }
    for n in 2..=8 {
        for k in 1..n {
            for g in adjacent_transpositions(n) {
                assert!(!g.subset_action(k).unwrap().is_identity(), "n={n} k={k}");
            }
        }
    }
}

#[test]
fn a_matrices_agree_with_symmetric_group_oracle() {
    let mut r = rng(12);
    for n in 2..=7 {
        let sp = spec(Family::A, n);
        let rep = Representation::new(&sp).unwrap();
        for _ in 0..TRIALS / 5 {
            let w = random_word(&sp, 10, &mut r);
            let m = evaluate_word(&w, &rep).unwrap();
            let p = a_oracle_map(&w, &sp).unwrap();
            assert_eq!(m, perm_matrix(&p, n + 1).unwrap(), "{w}");
        }
    }
}

#[test]
fn d_matrices_agree_with_signed_permutation_oracle() {
    let mut r = rng(13);
    for n in 4..=8 {
        let sp = spec(Family::D, n);
        let rep = Representation::new(&sp).unwrap();
        for _ in 0..TRIALS / 5 {
            let w = random_word(&sp, 10, &mut r);
            let m = evaluate_word(&w, &rep).unwrap();
            let s = d_oracle_map(&w, &sp).unwrap();
            assert!(s.is_even(), "{w}: odd sign count");
            let (perm, signs) = m.as_signed_permutation().expect("signed permutation matrix");
            assert_eq!((perm, signs), (s.perm.clone(), s.signs.clone()), "{w}");
        }
    }
}

#[test]
fn reduction_mod_2_is_multiplicative() {
    let mut r = rng(14);
    let specs = [spec(Family::E, 6), spec(Family::E, 7), spec(Family::E, 8)];
    let reps: Vec<_> = specs.iter().map(|s| Representation::new(s).unwrap()).collect();
    for t in 0..TRIALS {
        let (sp, rep) = (&specs[t % 3], &reps[t % 3]);
        let a = evaluate_word(&random_word(sp, 6, &mut r), rep).unwrap();
        let b = evaluate_word(&random_word(sp, 6, &mut r), rep).unwrap();
        let lhs = reduce_mod2(&(&a * &b)).unwrap();
        let rhs = reduce_mod2(&a).unwrap().multiply(&reduce_mod2(&b).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn enumeration_is_deterministic() {
    for sp in [spec(Family::D, 6), spec(Family::E, 6)] {
        let a = enumerate(&sp, 10_000).unwrap();
        let b = enumerate(&sp, 10_000).unwrap();
        assert!(a.same_content(&b));
        assert_eq!(a.render_table(), b.render_table());
    }
}

#[test]
fn transposition_examples_compose() {
    let a = Permutation::transposition(3, 1, 2).unwrap();
    let b = Permutation::transposition(3, 2, 3).unwrap();
    assert_eq!(a.compose(&b).unwrap().to_string(), "(1,3,2)");
}

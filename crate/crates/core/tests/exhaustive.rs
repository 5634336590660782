//! Exhaustive and sampled cross-checks between independent methods.

use ordwalk_core::diagram::{
    bordered_cylindrical_blocks, flip_block, flip_interval, valid_intervals,
};
use ordwalk_core::equivalence::{
    class_of, enumerate_classes, enumerate_classes_oracle, enumerate_classes_parallel,
    equivalence_oracle,
};
use ordwalk_core::matrix::{matrix_equivalence_witness, step_matrix};
use ordwalk_core::perm::{all_permutations, compose, Permutation};
use ordwalk_core::structure::{
    decompose_block_action, irreducible_partition_bruteforce, irreducible_partition_fast,
    CohesionAnalysis, CohesivePartition,
};
use ordwalk_core::InflationRule;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_perm(rng: &mut ChaCha8Rng, n: usize) -> Permutation {
    Permutation::unrank(n, rng.random_range(0..ordwalk_core::perm::factorial(n)))
}

#[test]
fn step_matrix_is_an_anti_homomorphism_on_random_s7_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..2000 {
        let (pi, tau) = (random_perm(&mut rng, 7), random_perm(&mut rng, 7));
        let lhs = step_matrix(&compose(&pi, &tau).unwrap()).into_matrix();
        let rhs = step_matrix(&pi)
            .as_matrix()
            .multiply(step_matrix(&tau).as_matrix())
            .unwrap();
        assert_eq!(lhs, rhs, "{pi} {tau}");
    }
}

#[test]
fn class_counts() {
    let counts: Vec<usize> = (1..=7)
        .map(|n| enumerate_classes(n).unwrap().len())
        .collect();
    assert_eq!(counts, vec![1, 2, 4, 14, 58, 334, 2256]);
}

#[test]
fn closure_matches_the_level_search_on_s6() {
    assert_eq!(
        enumerate_classes(6).unwrap(),
        enumerate_classes_oracle(6).unwrap()
    );
    assert_eq!(
        enumerate_classes_parallel(6, 4).unwrap(),
        enumerate_classes(6).unwrap()
    );
}

#[test]
fn three_oracles_agree_on_random_s6_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut equivalent = 0;
    for k in 0..300 {
        let pi = random_perm(&mut rng, 6);
        // half the pairs are drawn from the class so both answers occur
        let tau = if k % 2 == 0 {
            let c = class_of(&pi);
            c.members()[rng.random_range(0..c.len())].clone()
        } else {
            random_perm(&mut rng, 6)
        };
        let bfs = class_of(&pi).contains(&tau);
        assert_eq!(
            equivalence_oracle(&pi, &tau).unwrap().is_some(),
            bfs,
            "{pi} {tau}"
        );
        assert_eq!(
            matrix_equivalence_witness(&pi, &tau).unwrap().is_some(),
            bfs,
            "{pi} {tau}"
        );
        equivalent += bfs as usize;
    }
    assert!(equivalent >= 150);
}

#[test]
fn irreducible_partitions_agree_on_s6() {
    for pi in all_permutations(6) {
        assert_eq!(
            irreducible_partition_fast(&pi),
            irreducible_partition_bruteforce(&pi).unwrap(),
            "{pi}"
        );
    }
}

#[test]
fn block_flips_match_interval_flips_on_s7() {
    for pi in all_permutations(7) {
        for b in bordered_cylindrical_blocks(&pi) {
            assert!(valid_intervals(&pi).contains(&b.values()), "{pi} {b}");
            assert_eq!(
                flip_block(&pi, &b).unwrap(),
                flip_interval(&pi, b.values()).unwrap(),
                "{pi} {b}"
            );
        }
    }
}

fn check_decompositions(pi: &Permutation) -> usize {
    let a = CohesionAnalysis::new(pi).unwrap();
    let finest = CohesivePartition::finest(&a).unwrap();
    let proper = finest.proper_cohesive_intervals(&a);
    let mut checked = 0;
    if proper.is_empty() {
        return 0;
    }
    let l = finest.len();
    for mu in finest.valid_actions().unwrap() {
        for &(i, j) in &proper {
            let (alpha, beta) = decompose_block_action(&finest, &mu, i, j)
                .unwrap_or_else(|e| panic!("{pi} {mu} ({i},{j}): {e}"));
            let mut blocks = vec![ordwalk_core::SignedPermutation::identity(1); i];
            blocks.push(beta.clone());
            blocks.extend(vec![ordwalk_core::SignedPermutation::identity(1); l - j]);
            assert_eq!(
                alpha
                    .inflate_by(&blocks, InflationRule::Complement)
                    .unwrap(),
                mu
            );
            assert_eq!(alpha.len(), l - j + i + 1);
            assert!(finest.inner(i, j).is_valid(&beta).unwrap());
            checked += 1;
        }
    }
    checked
}

#[test]
fn decomposition_exists_for_every_valid_action_on_s6() {
    let checked: usize = all_permutations(6)
        .map(|pi| check_decompositions(&pi))
        .sum();
    assert_eq!(checked, 10720);
}

#[test]
fn decomposition_on_sampled_s7() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut checked = 0;
    for _ in 0..800 {
        checked += check_decompositions(&random_perm(&mut rng, 7));
    }
    assert!(checked > 0);
}

#[test]
fn decomposition_on_a_coarser_partition() {
    // 197862435 with [2,6] merged into one part: l = 3, and [1,9] is the span
    let a = CohesionAnalysis::new(&"197862435".parse().unwrap()).unwrap();
    let coarse = CohesivePartition::new(&a, vec![1, 2, 6, 9]).unwrap();
    let valid = coarse.valid_actions().unwrap();
    assert!(!valid.is_empty());
    for mu in &valid {
        let lifted = coarse.lift(mu).unwrap();
        assert!(CohesivePartition::finest(&a)
            .unwrap()
            .is_valid(&lifted)
            .unwrap());
    }
}

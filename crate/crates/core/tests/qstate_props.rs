// SPDX-License-Identifier: Apache-2.0

use geodiscord::qstate::{
    bloch, from_x_state, parse_state_file, sample_random_state, to_x_state, write_state_file,
    DensityMatrix, RandomFamily,
};
use proptest::prelude::*;

const FAMILIES: [RandomFamily; 3] = [
    RandomFamily::FullRank,
    RandomFamily::BellDiagonal,
    RandomFamily::XShaped,
];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn samples_are_states(seed in any::<u64>(), k in 0usize..3) {
        let rho = sample_random_state(seed, FAMILIES[k]);
        prop_assert!(DensityMatrix::validate(rho.matrix().clone()).is_ok());
        prop_assert_eq!(rho, sample_random_state(seed, FAMILIES[k]));
    }

    #[test]
    fn bloch_reconstruction(seed in any::<u64>(), k in 0usize..3) {
        let rho = sample_random_state(seed, FAMILIES[k]);
        let b = bloch(&rho);
        prop_assert!(b.reconstruct().max_abs_diff(rho.matrix()) < 1e-14);
    }

    #[test]
    fn x_round_trip(seed in any::<u64>()) {
        let rho = sample_random_state(seed, RandomFamily::XShaped);
        let x = to_x_state(&rho, 1e-12).unwrap();
        prop_assert!(from_x_state(&x).matrix().max_abs_diff(rho.matrix()) <= 1e-14);
        let b = bloch(&rho);
        prop_assert_eq!(&b.x_vec[..2], &[0.0, 0.0]);
        prop_assert_eq!(&b.y_vec[..2], &[0.0, 0.0]);
        let x_expect = 2.0 * (x.r11 + x.r22) - 1.0;
        prop_assert!((b.x_vec[2] - x_expect).abs() < 1e-14);
    }

    #[test]
    fn state_file_round_trip(seed in any::<u64>()) {
        let rho = sample_random_state(seed, RandomFamily::FullRank);
        let text = write_state_file(rho.matrix(), Some("sample"));
        let back = parse_state_file(&text).unwrap();
        prop_assert_eq!(back.entries(), rho.matrix().entries());
    }
}

#[test]
fn bell_diagonal_marginals_are_mixed() {
    for seed in 0..200 {
        let b = bloch(&sample_random_state(seed, RandomFamily::BellDiagonal));
        assert!(b.x_vec.iter().chain(&b.y_vec).all(|v| v.abs() < 1e-15));
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    assert!(b.corr[i][j].abs() < 1e-15);
                }
            }
        }
    }
}

#[test]
fn full_rank_samples_are_not_x_shaped() {
    let hits = (0..100)
        .filter(|&s| to_x_state(&sample_random_state(s, RandomFamily::FullRank), 1e-10).is_err())
        .count();
    assert_eq!(hits, 100);
}

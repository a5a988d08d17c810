mod common;

use common::{affine_avoids_321, affine_length, affine_oracle, affine_window};

#[test]
fn permutation_model_basics() {
    let f = affine_window(3, &[2]);
    assert_eq!(f, vec![0, 2, 4]);
    assert_eq!(affine_length(&f), 1);
    assert_eq!(affine_length(&affine_window(3, &[0, 1, 0])), 3);
    assert!(!affine_avoids_321(&affine_window(3, &[0, 1, 0])));
    assert!(affine_avoids_321(&affine_window(3, &[0, 1, 2, 0, 1])));
}

#[test]
fn affine_bases_match_permutation_model() {
    for (m, len) in [(2, 9), (3, 8), (4, 6), (5, 5)] {
        let problems = affine_oracle(m, len);
        assert!(problems.is_empty(), "m = {m}: {problems:?}");
    }
}

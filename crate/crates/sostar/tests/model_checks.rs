//! Cross-validation of the row model against its golden dump and the
//! generic letter action.

use sostar::cover::{build_y_model, shear_y_model};
use sostar::origami::{act, canonical_form, is_isomorphic, Gl2Word, Letter, Origami, Permutation};

#[test]
fn golden_model_dump_d11() {
    let model = build_y_model(11).unwrap();
    let expected = include_str!("data/y_model_d11.txt");
    assert_eq!(model.dump(), expected);
}

#[test]
fn sheared_models_match_letter_action_d11() {
    let model = build_y_model(11).unwrap();
    for r in 0..11u64 {
        let sheared = shear_y_model(&model, r);
        let word = Gl2Word(vec![Letter::T; (2 * r) as usize]);
        assert!(
            is_isomorphic(&sheared.origami, &act(&model.origami, &word)),
            "r = {}",
            r
        );
    }
}

#[test]
fn canonical_form_is_relabeling_invariant() {
    use proptest::prelude::*;
    let mut runner = proptest::test_runner::TestRunner::default();
    let model = build_y_model(3).unwrap();
    let n = model.origami.n();
    runner
        .run(
            &proptest::sample::select((0..64u64).collect::<Vec<_>>()),
            |seed| {
                // derive a scramble from the seed
                let mut order: Vec<u32> = (0..n as u32).collect();
                let mut state = seed.wrapping_mul(0x9e3779b97f4a7c15) | 1;
                for i in (1..n).rev() {
                    state = state.wrapping_mul(6364136223846793005).wrapping_add(1);
                    order.swap(i, (state % (i as u64 + 1)) as usize);
                }
                let sigma = Permutation::from_images(order);
                let si = sigma.inverse();
                let relabeled = Origami::new(
                    si.then(model.origami.h()).then(&sigma),
                    si.then(model.origami.v()).then(&sigma),
                )
                .unwrap();
                prop_assert_eq!(canonical_form(&relabeled), canonical_form(&model.origami));
                Ok(())
            },
        )
        .unwrap();
}

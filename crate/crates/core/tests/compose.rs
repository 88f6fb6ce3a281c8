use fmm::catalog::{naive_scheme, strassen_scheme};
use fmm::compose::{make_block_plan, InputClass};
use fmm::verify::evaluate_counted;
use fmm::{
    brent_check, compose, evaluate, kronecker, naive_mult, orient, random_eval_check,
    BilinearScheme, Dims, Matrix, Rational,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn dims(u: usize, v: usize, w: usize) -> Dims {
    Dims::new(u, v, w).unwrap()
}

fn naive_inputs(u: usize, v: usize) -> (BilinearScheme, BilinearScheme, BilinearScheme) {
    (
        naive_scheme(u, u, u).unwrap(),
        naive_scheme(u, u, v).unwrap(),
        naive_scheme(v, v, u).unwrap(),
    )
}

fn s777() -> BilinearScheme {
    compose(
        4,
        3,
        &kronecker(&strassen_scheme(), &strassen_scheme()),
        &naive_scheme(4, 4, 3).unwrap(),
        &naive_scheme(3, 3, 4).unwrap(),
    )
    .unwrap()
    .0
}

#[test]
fn naive_inputs_compose_exactly() {
    for (u, v) in [(2, 1), (3, 1), (3, 2), (4, 3)] {
        let (a, b, c) = naive_inputs(u, v);
        let (s, report) = compose(u, v, &a, &b, &c).unwrap();
        let expected = u * u * u + 3 * u * u * v + 3 * v * v * u;
        assert_eq!(s.rank(), expected, "({u},{v})");
        assert!(report.bound_check);
        assert!(brent_check(&s).passed, "({u},{v})");
    }
}

#[test]
fn seven_by_seven_oracle_equivalence() {
    let s = s777();
    assert_eq!(s.rank(), 301);
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..100 {
        let a = Matrix::random_int(7, 7, -9, 9, &mut rng);
        let b = Matrix::random_int(7, 7, -9, 9, &mut rng);
        let (c, products) = evaluate_counted(&s, &a, &b).unwrap();
        assert_eq!(products, 301);
        assert_eq!(c, naive_mult(&a, &b).unwrap());
    }
}

#[test]
fn seven_by_seven_float_tolerance() {
    let s = s777();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..20 {
        let a = Matrix::random_uniform(7, 7, -1.0, 1.0, &mut rng);
        let b = Matrix::random_uniform(7, 7, -1.0, 1.0, &mut rng);
        let diff = evaluate(&s, &a, &b)
            .unwrap()
            .max_abs_diff(&naive_mult(&a, &b).unwrap());
        assert!(diff <= 1e-9, "max |delta| = {diff}");
    }
}

#[test]
fn composition_is_deterministic() {
    let (a, b, c) = naive_inputs(2, 1);
    let (s, _) = compose(2, 1, &a, &b, &c).unwrap();
    let plan = make_block_plan(2, 1).unwrap();
    let ranks: Vec<usize> = plan
        .summands
        .iter()
        .map(|m| match m.class {
            InputClass::Square => 8,
            InputClass::Uuv => 4,
            InputClass::Vvu => 2,
        })
        .collect();
    assert_eq!(ranks.iter().sum::<usize>(), s.rank());
    let again = compose(2, 1, &a, &b, &c).unwrap().0;
    assert!(again.structurally_eq(&s));
}

#[test]
fn nested_composition() {
    // <3,3,3> from naive blocks, then reused as the square input for (3,2).
    let (a, b, c) = naive_inputs(2, 1);
    let (s333, _) = compose(2, 1, &a, &b, &c).unwrap();
    let (s555, report) = compose(
        3,
        2,
        &s333,
        &naive_scheme(3, 3, 2).unwrap(),
        &naive_scheme(2, 2, 3).unwrap(),
    )
    .unwrap();
    assert_eq!(report.input_ranks, [26, 18, 12]);
    assert_eq!(s555.rank(), 26 + 54 + 36);
    assert!(brent_check(&s555).passed);
}

#[test]
fn accepts_any_orientation_of_inputs() {
    let (s444, _, _) = naive_inputs(4, 3);
    let (s, _) = compose(
        4,
        3,
        &s444,
        &naive_scheme(3, 4, 4).unwrap(),
        &naive_scheme(4, 3, 3).unwrap(),
    )
    .unwrap();
    assert!(brent_check(&s).passed);
}

/// The rank-520 pipeline shape with naive stand-ins for the rank-40 scheme.
#[test]
fn nine_by_nine_pipeline_with_naive_base() {
    let s336 = naive_scheme(3, 3, 6).unwrap();
    let s633 = orient(&s336, dims(6, 3, 3)).unwrap();
    let s666 = kronecker(&s633, &naive_scheme(1, 2, 2).unwrap());
    let s663 = kronecker(&s633, &naive_scheme(1, 2, 1).unwrap());
    assert_eq!(s666.dims(), dims(6, 6, 6));
    assert_eq!(s663.dims(), dims(6, 6, 3));
    assert_eq!((s666.rank(), s663.rank()), (216, 108));
    let (s999, report) = compose(6, 3, &s666, &s663, &s336).unwrap();
    assert_eq!(report.arithmetic(), "702 = 216 + 3·108 + 3·54");
    let brent = brent_check(&s999);
    assert_eq!(brent.total_equations, 531_441);
    assert!(brent.passed);
    assert!(random_eval_check(&s999, 5, 9).unwrap().all_equal);
}

#[test]
fn strict_mode_rejects_broken_input() {
    let (a, b, c) = naive_inputs(3, 2);
    let broken = fmm::testing::flip_sign(&c, 4, "gamma", 0, 1);
    assert!(compose(3, 2, &a, &b, &broken).is_err());
}

#[test]
fn every_scheme_here_passes_random_check() {
    let (a, b, c) = naive_inputs(3, 2);
    for s in [s777(), compose(3, 2, &a, &b, &c).unwrap().0] {
        let r = random_eval_check(&s, 100, 3).unwrap();
        assert!(r.all_equal, "{}", s.name());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn plans_never_violate_masks((u, v) in (2usize..8).prop_flat_map(|u| (Just(u), 1..u))) {
        let plan = make_block_plan(u, v).unwrap();
        prop_assert_eq!(plan.summands.len(), 7);
        let count = |class| plan.summands.iter().filter(|s| s.class == class).count();
        prop_assert_eq!(count(InputClass::Square), 1);
        prop_assert_eq!(count(InputClass::Uuv), 3);
        prop_assert_eq!(count(InputClass::Vvu), 3);
        for s in &plan.summands {
            let expected = match s.class {
                InputClass::Square => [u, u, u],
                InputClass::Uuv => { let mut k = [u, u, v]; k.sort(); k }
                InputClass::Vvu => { let mut k = [v, v, u]; k.sort(); k }
            };
            prop_assert_eq!(s.effective_dims.canonical(), expected);
        }
        // Splicing would report a peel violation; composing naive inputs exercises it.
        if u <= 4 {
            let (a, b, c) = naive_inputs(u, v);
            let (s, _) = compose(u, v, &a, &b, &c).unwrap();
            prop_assert!(brent_check(&s).passed);
        }
    }

    #[test]
    fn composed_schemes_match_oracle(seed in any::<u64>()) {
        let (a, b, c) = naive_inputs(3, 1);
        let (s, _) = compose(3, 1, &a, &b, &c).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x: Matrix<Rational> = Matrix::random_int(4, 4, -50, 50, &mut rng);
        let y: Matrix<Rational> = Matrix::random_int(4, 4, -50, 50, &mut rng);
        prop_assert_eq!(evaluate(&s, &x, &y).unwrap(), naive_mult(&x, &y).unwrap());
    }
}

use fmm::catalog::{naive_scheme, parse_scheme, render_scheme, strassen_scheme};
use fmm::rational::frac;
use fmm::{
    brent_check, evaluate, kronecker, make_scheme, orient, random_eval_check, BilinearScheme,
    CoeffMatrix, Dims, Matrix, MulTerm, Orientation, Rational,
};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn bases() -> Vec<BilinearScheme> {
    vec![
        naive_scheme(1, 2, 3).unwrap(),
        naive_scheme(2, 3, 4).unwrap(),
        strassen_scheme(),
    ]
}

fn orientation() -> impl Strategy<Value = Orientation> {
    prop::sample::select(Orientation::ALL.to_vec())
}

fn coeff(rows: usize, cols: usize) -> impl Strategy<Value = CoeffMatrix> {
    prop::collection::vec((0..rows, 0..cols, -3i64..=3, 1i64..=2), 1..4).prop_map(move |raw| {
        let mut m = CoeffMatrix::zeros(rows, cols);
        for (r, c, n, d) in raw {
            m.add(r, c, frac(n, d));
        }
        if m.is_zero() {
            m.add(0, 0, frac(1, 1));
        }
        m
    })
}

/// Arbitrary well-formed (and almost never correct) schemes.
fn random_scheme() -> impl Strategy<Value = BilinearScheme> {
    (1usize..4, 1usize..4, 1usize..4)
        .prop_flat_map(|(u, v, w)| {
            let term =
                (coeff(u, v), coeff(v, w), coeff(u, w)).prop_map(|(a, b, g)| MulTerm::new(a, b, g));
            (Just((u, v, w)), prop::collection::vec(term, 1..6))
        })
        .prop_map(|((u, v, w), terms)| {
            make_scheme(Dims::new(u, v, w).unwrap(), terms, "random").unwrap()
        })
}

#[test]
fn brent_preserved_by_every_orientation_and_product() {
    for s in bases() {
        for o in Orientation::ALL {
            let t = o.apply(&s);
            assert_eq!(t.rank(), s.rank());
            assert!(brent_check(&t).passed, "{} {o:?}", s.name());
        }
        for other in bases() {
            let k = kronecker(&s, &other);
            assert_eq!(k.rank(), s.rank() * other.rank());
            assert!(brent_check(&k).passed, "{} x {}", s.name(), other.name());
        }
    }
}

#[test]
fn every_base_passes_random_check() {
    for s in bases() {
        assert!(random_eval_check(&s, 100, 1).unwrap().all_equal);
    }
}

proptest! {
    #[test]
    fn orient_roundtrip(a in orientation(), b in orientation(), pick in 0usize..3) {
        let s = &bases()[pick];
        let d1 = a.apply_dims(s.dims());
        let there = orient(s, d1).unwrap();
        let hop = orient(&there, b.apply_dims(s.dims())).unwrap();
        let back = orient(&hop, s.dims()).unwrap();
        prop_assert_eq!(back.dims(), s.dims());
        prop_assert_eq!(back.rank(), s.rank());
        prop_assert!(brent_check(&back).passed);
    }

    #[test]
    fn canonicalization_is_idempotent(s in random_scheme()) {
        let again = make_scheme(s.dims(), s.terms().to_vec(), s.name()).unwrap();
        prop_assert!(again.structurally_eq(&s));
    }

    #[test]
    fn reordering_terms_changes_nothing(seed in any::<u64>()) {
        let s = strassen_scheme();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut terms = s.terms().to_vec();
        terms.shuffle(&mut rng);
        let shuffled = make_scheme(s.dims(), terms, "shuffled").unwrap();
        prop_assert_eq!(shuffled.rank(), 7);
        prop_assert!(brent_check(&shuffled).passed);
        let a: Matrix<Rational> = Matrix::random_int(2, 2, -9, 9, &mut rng);
        let b: Matrix<Rational> = Matrix::random_int(2, 2, -9, 9, &mut rng);
        prop_assert_eq!(evaluate(&shuffled, &a, &b).unwrap(), evaluate(&s, &a, &b).unwrap());
    }

    #[test]
    fn brent_agrees_with_random_evaluation(s in random_scheme()) {
        let brent = brent_check(&s).passed;
        let eval = random_eval_check(&s, 20, 4).unwrap().all_equal;
        prop_assert_eq!(brent, eval);
    }

    #[test]
    fn equation_count(s in random_scheme()) {
        let [u, v, w] = s.dims().as_array();
        prop_assert_eq!(brent_check(&s).total_equations, ((u * v) * (v * w) * (w * u)) as u64);
    }

    #[test]
    fn kronecker_rank_multiplies(a in random_scheme(), b in random_scheme()) {
        let k = kronecker(&a, &b);
        prop_assert_eq!(k.rank(), a.rank() * b.rank());
        let [u1, v1, w1] = a.dims().as_array();
        let [u2, v2, w2] = b.dims().as_array();
        prop_assert_eq!(k.dims().as_array(), [u1 * u2, v1 * v2, w1 * w2]);
    }

    #[test]
    fn file_roundtrip(s in random_scheme()) {
        let text = render_scheme(&s);
        let back = parse_scheme(&text).unwrap();
        prop_assert!(back.structurally_eq(&s));
        prop_assert_eq!(render_scheme(&back), text);
    }
}

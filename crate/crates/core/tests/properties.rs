//! Invariants as property tests. Shapes and seeds come from proptest; the
//! objects themselves from the library's sparse random generators.

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use sheffer::groups::*;
use sheffer::json::{CurveDoc, Json, JsonCoeff};
use sheffer::opmatrix::*;
use sheffer::random::*;
use sheffer::sheffer::*;
use sheffer::tpoly::TPoly;
use sheffer::{Context, Gaussian, Rational, Ring, Scalar};

fn setup<S: Scalar>(dim: usize, order: usize, seed: u64) -> (Context, ChaCha8Rng) {
    (Context::of::<S>(dim, order).unwrap(), ChaCha8Rng::seed_from_u64(seed))
}

fn shape() -> impl Strategy<Value = (usize, usize, u64)> {
    (1usize..=2, 1usize..=4, any::<u64>())
}

fn round_trip<T: Json + PartialEq + std::fmt::Debug>(ctx: &Context, x: &T) {
    let text = x.to_json().to_string();
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(&T::from_json(ctx, &v).unwrap(), x);
}

fn json_round_trips<S: Scalar + JsonCoeff>(dim: usize, order: usize, seed: u64)
where
    TPoly<S>: JsonCoeff,
{
    let (c, mut g) = setup::<S>(dim, order, seed);
    round_trip(&c, &random_symtensor::<S, _>(&c, 2, &mut g));
    round_trip(&c, &random_block::<S, _>(&c, order, 1, &mut g));
    round_trip(&c, &random_series::<S, _>(&c, 2, 0, &mut g));
    round_trip(&c, &random_f0::<S, _>(&c, &mut g));
    round_trip(&c, &random_f1::<S, _>(&c, &mut g));
    let p = random_spair::<S, _>(&c, &mut g);
    round_trip(&c, &p);
    round_trip(&c, &random_algebra_pair::<S, _>(&c, &mut g));
    round_trip(&c, &random_unipotent::<S, _>(&c, &mut g));
    round_trip(&c, &random_nil::<S, _>(&c, &mut g));
    round_trip(&c, &random_poly::<S, _>(&c, order, &mut g));
    let op = ShefferOp::from_pair(p);
    round_trip(&c, &op);
    round_trip(&c, &riordan_transform(&op));
    let curve = CurveDoc::Nil(TimeCurve::new(random_time_nil::<S, _>(&c, 2, &mut g), 2).unwrap());
    assert_eq!(CurveDoc::from_json(&c, &curve.to_json()).unwrap(), curve);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn rational_text_round_trips(n in -10_000i64..10_000, d in 1i64..10_000) {
        let q = Rational::new(n.into(), d.into());
        let text = q.render();
        prop_assert_eq!(Rational::parse(&text).unwrap(), q.clone());
        prop_assert!(text.contains('/'));
        let z = Gaussian::new(q.clone(), Rational::new(d.into(), (n.abs() + 1).into()));
        prop_assert_eq!(Gaussian::parse(&z.render()).unwrap(), z);
    }

    #[test]
    fn json_documents_round_trip((dim, order, seed) in shape()) {
        json_round_trips::<Rational>(dim, order, seed);
        json_round_trips::<Gaussian>(dim, order, seed);
    }

    #[test]
    fn semidirect_group_laws((dim, order, seed) in shape()) {
        let (c, mut g) = setup::<Rational>(dim, order, seed);
        let (p, q, r) = (random_spair::<Rational, _>(&c, &mut g), random_spair(&c, &mut g), random_spair(&c, &mut g));
        let pq_r = s_mul(&s_mul(&p, &q).unwrap(), &r).unwrap();
        prop_assert_eq!(&pq_r, &s_mul(&p, &s_mul(&q, &r).unwrap()).unwrap());
        prop_assert_eq!(s_mul(&p, &s_inverse(&p)).unwrap(), SPair::identity(&c));
        prop_assert_eq!(s_inverse(&s_inverse(&p)), p);
    }

    #[test]
    fn operator_group_laws((dim, order, seed) in shape()) {
        let (c, mut g) = setup::<Rational>(dim, order, seed);
        let (p, q) = (random_unipotent::<Rational, _>(&c, &mut g), random_unipotent(&c, &mut g));
        let pq = opmat_mul(&p, &q).unwrap();
        prop_assert!(pq.is_unipotent());
        let inv = opmat_inverse(&pq).unwrap();
        let expected = opmat_mul(&opmat_inverse(&q).unwrap(), &opmat_inverse(&p).unwrap()).unwrap();
        prop_assert_eq!(inv, expected);
    }

    #[test]
    fn exp_log_are_inverse((dim, order, seed) in shape()) {
        let (c, mut g) = setup::<Rational>(dim, order, seed);
        let w = random_algebra_pair::<Rational, _>(&c, &mut g);
        prop_assert_eq!(s_log(&s_exp(&w).unwrap()), w.clone());
        let v = random_nil::<Rational, _>(&c, &mut g);
        prop_assert_eq!(opmat_log(&nil_exp(&v)).unwrap(), v);
    }

    #[test]
    fn build_factor_round_trip((dim, order, seed) in shape()) {
        let (c, mut g) = setup::<Rational>(dim, order, seed);
        let p = random_spair::<Rational, _>(&c, &mut g);
        let m = sheffer_build(&p);
        prop_assert!(is_sheffer(&m));
        prop_assert_eq!(sheffer_factor(&m, true).unwrap(), p);
    }

    #[test]
    fn exp_of_a_pair_is_exp_of_its_matrix((dim, order, seed) in shape()) {
        let (c, mut g) = setup::<Rational>(dim, order, seed);
        let w = random_algebra_pair::<Rational, _>(&c, &mut g);
        prop_assert_eq!(sheffer_build(&s_exp(&w).unwrap()), nil_exp(&lie_map(&w)));
    }

    #[test]
    fn bch_of_opposites_vanishes((dim, order, seed) in shape()) {
        let (c, mut g) = setup::<Rational>(dim, order, seed);
        let v = random_nil::<Rational, _>(&c, &mut g);
        let minus = v.scale(&Rational::from_int(-1));
        prop_assert!(bch(&v, &minus).unwrap().is_zero());
    }

    #[test]
    fn riordan_transform_is_multiplicative((dim, order, seed) in shape()) {
        let (c, mut g) = setup::<Rational>(dim, order, seed);
        let p = ShefferOp::from_pair(random_spair::<Rational, _>(&c, &mut g));
        let q = ShefferOp::from_pair(random_spair::<Rational, _>(&c, &mut g));
        let lhs = riordan_transform(&sheffer_mul(&p, &q).unwrap());
        prop_assert_eq!(&lhs, &riordan_transform(&p).mul(&riordan_transform(&q)).unwrap());
        prop_assert_eq!(riordan_inverse_transform(&lhs).unwrap(), sheffer_mul(&p, &q).unwrap());
    }

    #[test]
    fn symmetric_product_is_commutative_and_associative((dim, order, seed) in shape()) {
        let (c, mut g) = setup::<Rational>(dim, order, seed);
        let a = random_symtensor::<Rational, _>(&c, 1, &mut g);
        let b = random_symtensor::<Rational, _>(&c, 2, &mut g);
        let d = random_symtensor::<Rational, _>(&c, 1, &mut g);
        prop_assert_eq!(a.sym_product(&b).unwrap(), b.sym_product(&a).unwrap());
        let left = a.sym_product(&b).unwrap().sym_product(&d).unwrap();
        prop_assert_eq!(left, a.sym_product(&b.sym_product(&d).unwrap()).unwrap());
    }

    #[test]
    fn series_products_commute((dim, order, seed) in shape()) {
        let (c, mut g) = setup::<Rational>(dim, order, seed);
        let a = random_series::<Rational, _>(&c, 0, 0, &mut g);
        let b = random_series::<Rational, _>(&c, 0, 0, &mut g);
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        let (u, v) = (random_series::<Rational, _>(&c, 1, 0, &mut g), random_series::<Rational, _>(&c, 1, 0, &mut g));
        prop_assert_eq!(u.tensor(&v).unwrap(), v.tensor(&u).unwrap());
    }

    #[test]
    fn polarized_derivative_agrees_with_dsigma((dim, order, seed) in shape()) {
        let (c, mut g) = setup::<Rational>(dim, order, seed);
        let p = random_poly::<Rational, _>(&c, order, &mut g);
        let (w, s) = (random_dual::<Rational, _>(&c, &mut g), random_dual::<Rational, _>(&c, &mut g));
        let mut d = p.clone();
        for k in 0..=order {
            prop_assert_eq!(d.eval(&w).unwrap(), polarized_derivative(&p, &w, &s, k).unwrap());
            d = d.dsigma(&s).unwrap();
        }
    }

    #[test]
    fn time_polynomials_evaluate_homomorphically(a in prop::collection::vec(-20i64..20, 0..5), b in prop::collection::vec(-20i64..20, 0..5), t in -5i64..5) {
        let lift = |v: &[i64]| TPoly::new(v.iter().map(|&x| Rational::from_int(x)).collect());
        let (p, q) = (lift(&a), lift(&b));
        let t = Rational::from_int(t);
        prop_assert_eq!((p.clone() * &q).eval(&t), p.eval(&t) * &q.eval(&t));
        prop_assert_eq!(p.integral().derivative(), p);
    }
}

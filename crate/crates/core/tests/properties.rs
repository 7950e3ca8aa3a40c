//! Seeded property tests for the algebraic and order invariants.

use choquet_lab::boundary;
use choquet_lab::gallery::{self, RandomOptions};
use choquet_lab::hustad;
use choquet_lab::representation;
use choquet_lab::scalar::rat;
use choquet_lab::settings::Settings;
use choquet_lab::space::{load_space, save_space};
use choquet_lab::{Field, FunctionSpace, Functional, Measure, Rational, Scalar};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn real_space(n: usize, m: usize, seed: u64, constants: bool) -> FunctionSpace {
    let opts = RandomOptions { force_constants: constants, spread: 3 };
    gallery::random_space(n, m.min(n), seed, Field::Real, &opts).unwrap()
}

fn rational() -> impl Strategy<Value = Rational> {
    (-12i64..=12, 1i64..=6).prop_map(|(p, q)| rat(p, q))
}

fn measure(n: usize) -> impl Strategy<Value = Measure> {
    proptest::collection::vec(rational(), n).prop_map(|v| Measure::from_values(v.into_iter().map(Scalar::real).collect()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn total_variation_is_a_norm(a in measure(5), b in measure(5), c in rational()) {
        let tv = |m: &Measure| m.total_variation_exact().unwrap();
        let direct: Rational = a.values.iter().map(|v| num_traits::Signed::abs(v.re())).sum();
        prop_assert_eq!(tv(&a), direct);
        prop_assert!(tv(&a.add(&b)) <= tv(&a) + tv(&b));
        prop_assert_eq!(tv(&a.scale(&Scalar::real(c.clone()))), num_traits::Signed::abs(&c) * tv(&a));
    }

    #[test]
    fn space_documents_roundtrip(n in 2usize..=6, m in 2usize..=4, seed in any::<u64>(), complex in any::<bool>()) {
        let field = if complex { Field::Complex } else { Field::Real };
        let sp = gallery::random_space(n, m.min(n), seed, field, &RandomOptions::default()).unwrap();
        let text = save_space(&sp);
        let back = load_space(&text).unwrap();
        prop_assert_eq!(save_space(&back), text);
        prop_assert!(representation::same_span(&back, &sp));
    }

    #[test]
    fn dual_norm_is_homogeneous(n in 2usize..=6, m in 2usize..=4, seed in any::<u64>(), c in rational(),
                                coeffs in proptest::collection::vec(rational(), 4)) {
        let sp = real_space(n, m, seed, false);
        let s = Settings::default();
        let phi = Functional::new(coeffs[..sp.m()].iter().cloned().map(Scalar::real).collect());
        let base = boundary::dual_norm(&sp, &phi, &s).unwrap().exact().cloned().unwrap();
        let scaled = boundary::dual_norm(&sp, &phi.scale(&Scalar::real(c.clone())), &s).unwrap().exact().cloned().unwrap();
        prop_assert_eq!(scaled, num_traits::Signed::abs(&c) * base);
    }

    #[test]
    fn boundary_points_have_norm_one(n in 2usize..=6, m in 2usize..=4, seed in any::<u64>(), constants in any::<bool>()) {
        let sp = real_space(n, m, seed, constants);
        let s = Settings::default();
        let r = boundary::choquet_boundary(&sp, &s).unwrap();
        prop_assert!(r.is_decided());
        for x in 0..sp.n() {
            let d = boundary::dual_norm(&sp, &sp.evaluation_functional(x), &s).unwrap();
            let v = d.exact().cloned().unwrap();
            prop_assert!(v <= rat(1, 1));
            prop_assert_eq!(r.norm_one.contains(&x), v == rat(1, 1));
            prop_assert!(boundary::verify_point_certificate(&sp, x, &r.points[x], &s));
        }
        for x in r.boundary() {
            prop_assert!(r.norm_one.contains(&x));
        }
        if constants {
            prop_assert!(!r.boundary().is_empty());
        }
    }

    #[test]
    fn condition_lattice_holds(n in 2usize..=5, m in 2usize..=3, seed in any::<u64>(), constants in any::<bool>()) {
        let sp = real_space(n, m, seed, constants);
        let rep = representation::condition_report(&sp, &Settings::default()).unwrap();
        prop_assert_eq!(representation::lattice_violation(&rep.verdicts), None);
    }

    #[test]
    fn hustad_roundtrip(seed in any::<u64>(), n in 1usize..=6, complex in any::<bool>()) {
        let field = if complex { Field::Complex } else { Field::Real };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mu = hustad::random_norm_one_measure(&mut rng, n, field);
        let nu = hustad::hustad_inverse(&mu).unwrap();
        let (back, proj) = hustad::hustad_forward(&nu, n).unwrap();
        prop_assert_eq!(&back, &mu);
        prop_assert_eq!(proj, mu.abs().unwrap());
        let again = hustad::hustad_inverse(&back).unwrap();
        prop_assert_eq!(again.canonical(), nu.canonical());
    }

    #[test]
    fn estimate_holds_and_is_strict_off_the_real_axis(p in -40i64..=40, r in 1i64..=40, g in rational(), t in (0i64..=40, 1i64..=4)) {
        prop_assume!(g != rat(0, 1));
        let z = gallery::pythagorean_unit(&rat(p, r));
        let t = rat(t.0, t.1);
        let out = gallery::prubeh_check(&z, &g, &t).unwrap();
        prop_assert!(out.holds);
        if !z.is_real() {
            prop_assert!(out.strict);
        } else {
            prop_assert_eq!(out.strict, t < &g * z.re());
        }
    }
}

//! Randomized algebraic invariants of the chart calculus.

use proptest::prelude::*;

use stackcalc::expr::{parse, print};
use stackcalc::groupoid::gallery::{build_example, GALLERY};
use stackcalc::sample::Sampler;
use stackcalc::{Chart, Scalar};

fn chart() -> Chart {
    Chart::new("U", &["x", "y"], &["t"]).unwrap()
}

fn params() -> Vec<String> {
    vec!["l0".into(), "l1".into()]
}

fn scalar(n: i64, m: i64, k: u8) -> Scalar {
    let l0 = Scalar::param("l0");
    let l1 = Scalar::param("l1");
    let base = &Scalar::int(n) + &(&Scalar::int(m) * &l0);
    match k % 3 {
        0 => base,
        1 => &base / &(&l1 + &Scalar::int(1)),
        _ => &base * &(&l0 - &l1),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn scalar_field_axioms(a in (-5i64..5, -5i64..5, any::<u8>()),
                           b in (-5i64..5, -5i64..5, any::<u8>()),
                           c in (-5i64..5, -5i64..5, any::<u8>())) {
        let (a, b, c) = (scalar(a.0, a.1, a.2), scalar(b.0, b.1, b.2), scalar(c.0, c.1, c.2));
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        if !b.is_zero() {
            prop_assert_eq!(&(&a / &b) * &b, a);
        }
    }

    #[test]
    fn derivations_obey_leibniz(seed in any::<u64>()) {
        let u = chart();
        let mut s = Sampler::new(seed, "leibniz", 0);
        let x = s.field(&u, 2);
        let (f, g) = (s.function(&u, 2), s.function(&u, 2));
        let lhs = x.apply(&(&f * &g)).unwrap();
        let rhs = &(&x.apply(&f).unwrap() * &g) + &(&f * &x.apply(&g).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn bracket_is_jacobi_and_antisymmetric(seed in any::<u64>()) {
        let u = chart();
        let mut s = Sampler::new(seed, "jacobi", 0);
        let (x, y, z) = (s.field(&u, 2), s.field(&u, 2), s.field(&u, 2));
        let xy = x.bracket(&y).unwrap();
        prop_assert!(xy.add(&y.bracket(&x).unwrap()).is_zero());
        let cyclic = x.bracket(&y.bracket(&z).unwrap()).unwrap()
            .add(&y.bracket(&z.bracket(&x).unwrap()).unwrap())
            .add(&z.bracket(&xy).unwrap());
        prop_assert!(cyclic.is_zero());
        // the bracket acts as the commutator of derivations
        let f = s.function(&u, 2);
        let lhs = xy.apply(&f).unwrap();
        let rhs = &x.apply(&y.apply(&f).unwrap()).unwrap() - &y.apply(&x.apply(&f).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn trig_normal_form(seed in any::<u64>()) {
        let u = chart();
        let mut s = Sampler::new(seed, "trig", 0);
        let f = s.function(&u, 3);
        let (c, sn) = (u.cos("t"), u.sin("t"));
        let unit = &(&c * &c) + &(&sn * &sn);
        prop_assert_eq!(&f * &unit, f);
    }

    #[test]
    fn printed_functions_parse_back(seed in any::<u64>(), k in any::<u8>()) {
        let u = chart();
        let mut s = Sampler::new(seed, "print", 0);
        let f = s.function(&u, 3).scale(&scalar(1, 1, k));
        let g = parse(&print(&f), &u, &params()).unwrap();
        prop_assert_eq!(g, f);
    }

    #[test]
    fn delta_is_multiplicative(seed in any::<u64>(), which in 0..GALLERY.len()) {
        let g = build_example(GALLERY[which]).unwrap();
        let mut s = Sampler::new(seed, "delta", 0);
        let f = s.function(g.base(), 2);
        let df = g.delta(&f).unwrap();
        prop_assert!(g.is_multiplicative_function(&df).unwrap().holds);
        // i* delta f = -delta f
        prop_assert!(g.i_pull(&df).add(&df).is_zero());
    }
}

use cliffgauge::algebra::{beta, chi, e, theta, Blade, Multivector, DIM, I};
use cliffgauge::jet::{FieldExpr, Factor, Jet};
use cliffgauge::oracle::mul_by_sorting;
use num_complex::Complex64;
use proptest::prelude::*;

fn coeff() -> impl Strategy<Value = Complex64> {
    (-1.0f64..1.0, -1.0f64..1.0).prop_map(|(re, im)| Complex64::new(re, im))
}

fn multivector() -> impl Strategy<Value = Multivector> {
    proptest::array::uniform16(coeff()).prop_map(Multivector::from_coeffs)
}

fn sparse_multivector() -> impl Strategy<Value = Multivector> {
    proptest::collection::vec((0usize..DIM, coeff()), 1..4).prop_map(|terms| {
        let mut m = Multivector::zero();
        for (i, c) in terms {
            let b = Blade::new(i as u8).unwrap();
            m.set_coeff(b, m.coeff(b) + c);
        }
        m
    })
}

proptest! {
    #[test]
    fn product_is_associative(u in multivector(), v in multivector(), w in multivector()) {
        let lhs = (u * v) * w;
        let rhs = u * (v * w);
        prop_assert!(lhs.approx_eq(&rhs, 1e-12));
    }

    #[test]
    fn product_matches_sorting_oracle(u in sparse_multivector(), v in sparse_multivector()) {
        prop_assert!((u * v).approx_eq(&mul_by_sorting(&u, &v), 1e-14));
    }

    #[test]
    fn reverse_and_dagger_are_anti_automorphisms(u in multivector(), v in multivector()) {
        prop_assert!((u * v).reverse().approx_eq(&(v.reverse() * u.reverse()), 1e-12));
        prop_assert!((u * v).dagger().approx_eq(&(v.dagger() * u.dagger()), 1e-12));
        prop_assert_eq!(u.dagger().dagger(), u);
    }

    #[test]
    fn grade_projections_sum_to_identity(u in multivector()) {
        let sum = (0..=4).fold(Multivector::zero(), |acc, k| acc + u.grade(k));
        prop_assert_eq!(sum, u);
        prop_assert_eq!(u.even() + u.odd(), u);
    }

    #[test]
    fn hermitian_form_is_positive(u in multivector()) {
        let n = u.inner(&u);
        prop_assert!(n.im.abs() < 1e-12);
        prop_assert!(n.re >= 0.0);
    }

    #[test]
    fn leibniz_rule_is_exact(
        k in proptest::array::uniform4(-1.0f64..1.0),
        phase in -3.0f64..3.0,
        x in proptest::array::uniform4(-1.0f64..1.0),
        mu in 0usize..4,
        nu in 0usize..4,
    ) {
        let f = FieldExpr::scalar(1.0, vec![Factor::Sin { k, phase }]).mul_const_right(&theta());
        let g = &FieldExpr::scalar(0.5, vec![Factor::Mono(mu, 2)]) + &FieldExpr::constant(&beta());
        let prod = &f * &g;
        let jf = f.eval(x, 3);
        let jg = g.eval(x, 3);
        let jp = &jf * &jg;
        // jet product against the symbolic product, including derivatives
        prop_assert!(jp.max_diff(&prod.eval(x, 3)) < 1e-12);
        let d = jp.partial(nu).unwrap();
        let want = &(&jf.partial(nu).unwrap() * &jg) + &(&jf * &jg.partial(nu).unwrap());
        prop_assert!(d.max_diff(&want) < 1e-12);
    }
}

#[test]
fn defining_relation_on_generator_pairs() {
    let eta = [1.0, -1.0, -1.0, -1.0];
    for a in 0..4 {
        for b in 0..4 {
            let (ea, eb) = (Multivector::generator(a), Multivector::generator(b));
            let want = if a == b { e().scale(2.0 * eta[a]) } else { Multivector::zero() };
            assert_eq!(ea * eb + eb * ea, want);
        }
    }
}

#[test]
fn distinguished_elements() {
    let x = chi();
    assert_eq!(beta() * beta(), e());
    assert_eq!(theta() * theta(), -e());
    assert!((x * x).approx_eq(&x, 1e-15));
    assert_eq!(x.dagger(), x);
    assert!((theta() * x).approx_eq(&(x * I), 1e-15));
}

#[test]
fn constant_jets_commute_with_scalars() {
    let x = [0.0; 4];
    let j = Jet::constant(x, 2, theta());
    let s = Jet::constant(x, 2, e().scale(2.0));
    assert_eq!(&j * &s, &s * &j);
}

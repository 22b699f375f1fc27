use std::collections::BTreeMap;

use proptest::prelude::*;

use hopf_core::ring::{CoefficientRing, Laurent, Poly, Rational};

fn rational() -> impl Strategy<Value = Rational> {
    (-12i64..=12, 1i64..=5).prop_map(|(p, q)| Rational::new(p.into(), q.into()))
}

fn coeffs() -> impl Strategy<Value = Vec<(i32, Rational)>> {
    prop::collection::vec((-3i32..=4, rational()), 0..6)
}

fn poly() -> impl Strategy<Value = Poly<Rational>> {
    prop::collection::vec(rational(), 0..5).prop_map(Poly::from_coeffs)
}

fn exact() -> impl Strategy<Value = Laurent<Rational>> {
    coeffs().prop_map(Laurent::exact)
}

fn naive_product(a: &[(i32, Rational)], b: &[(i32, Rational)]) -> BTreeMap<i32, Rational> {
    let mut out: BTreeMap<i32, Rational> = BTreeMap::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            *out.entry(ea + eb).or_insert_with(|| Rational::from_integer(0.into())) += ca * cb;
        }
    }
    out
}

fn summed(a: &[(i32, Rational)]) -> BTreeMap<i32, Rational> {
    naive_product(a, &[(0, Rational::from_integer(1.into()))])
}

fn ring_laws<R: CoefficientRing>(a: R, b: R, c: R) -> Result<(), TestCaseError> {
    prop_assert_eq!(a.clone() + b.clone(), b.clone() + a.clone());
    prop_assert_eq!(a.clone() * b.clone(), b.clone() * a.clone());
    prop_assert_eq!((a.clone() + b.clone()) + c.clone(), a.clone() + (b.clone() + c.clone()));
    prop_assert_eq!((a.clone() * b.clone()) * c.clone(), a.clone() * (b.clone() * c.clone()));
    prop_assert_eq!(
        a.clone() * (b.clone() + c.clone()),
        a.clone() * b.clone() + a.clone() * c.clone()
    );
    prop_assert_eq!(a.clone() * R::one(), a.clone());
    prop_assert_eq!(a.clone() + R::zero(), a.clone());
    prop_assert!((a.clone() - a.clone()).is_zero());
    prop_assert_eq!(-(-a.clone()), a);
    Ok(())
}

proptest! {
    #[test]
    fn rationals(a in rational(), b in rational(), c in rational()) {
        ring_laws(a, b, c)?;
    }

    #[test]
    fn polynomials(a in poly(), b in poly(), c in poly()) {
        ring_laws(a, b, c)?;
    }

    #[test]
    fn nested_polynomials(a in poly(), b in poly(), c in poly()) {
        let lift = |p: Poly<Rational>| Poly::from_coeffs(vec![p.clone(), Poly::var() * p]);
        ring_laws(lift(a), lift(b), lift(c))?;
    }

    #[test]
    fn exact_laurent(a in exact(), b in exact(), c in exact()) {
        ring_laws(a, b, c)?;
    }

    #[test]
    fn laurent_product_is_convolution(a in coeffs(), b in coeffs()) {
        let p = Laurent::exact(a.clone()) * Laurent::exact(b.clone());
        let want: BTreeMap<i32, Rational> = naive_product(&a, &b).into_iter().filter(|(_, c)| *c != Rational::from_integer(0.into())).collect();
        let got: BTreeMap<i32, Rational> = p.terms().map(|(e, c)| (e, c.clone())).collect();
        prop_assert_eq!(got, want);
    }

    /// Truncating the inputs never changes a coefficient the product claims
    /// to know.
    #[test]
    fn truncated_product_is_sound(a in coeffs(), b in coeffs(), ta in -2i32..=4, tb in -2i32..=4) {
        let cut = |x: &[(i32, Rational)], t: i32| Laurent::truncated(x.iter().filter(|(e, _)| *e <= t).cloned(), t);
        let p = cut(&a, ta) * cut(&b, tb);
        let full = naive_product(&a, &b);
        let n = p.truncation().expect("product of truncated series is truncated");
        for e in -8..=n {
            let want = full.get(&e).cloned().unwrap_or_else(|| Rational::from_integer(0.into()));
            prop_assert_eq!(p.coeff(e).unwrap(), want, "eps^{} with truncation {}", e, n);
        }
        prop_assert!(p.coeff(n + 1).is_err());
    }

    #[test]
    fn truncated_sum_is_sound(a in coeffs(), b in coeffs(), ta in -2i32..=4) {
        let s = Laurent::truncated(a.iter().filter(|(e, _)| *e <= ta).cloned(), ta) + Laurent::exact(b.clone());
        prop_assert_eq!(s.truncation(), Some(ta));
        let mut full = summed(&a);
        for (e, c) in summed(&b) {
            *full.entry(e).or_insert_with(|| Rational::from_integer(0.into())) += c;
        }
        for e in -4..=ta {
            let want = full.get(&e).cloned().unwrap_or_else(|| Rational::from_integer(0.into()));
            prop_assert_eq!(s.coeff(e).unwrap(), want);
        }
    }

    #[test]
    fn pole_and_regular_parts_split(a in coeffs()) {
        let x = Laurent::exact(a);
        prop_assert_eq!(x.pole_part() + x.regular_part(), x.clone());
        prop_assert!(x.pole_part().terms().all(|(e, _)| e < 0));
        prop_assert!(x.regular_part().terms().all(|(e, _)| e >= 0));
    }
}

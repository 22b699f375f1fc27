//! Linear forms on H and the convolution calculus:
//! `⟨ξ ∗ η, h⟩ = ⟨ξ ⊗ η, Δh⟩`.

mod calculus;
mod eval;
mod functional;

pub use calculus::{
    basis_pairs, character_inverse, character_witness, exp_star, infinitesimal_witness, lie_bracket, log_star,
    materialize_character, materialize_infinitesimal, materialize_table, metric_distance, theta_star, y_star,
};
pub use eval::{convolve_augmented, evaluate, evaluate_monomial};
pub use functional::{DegreeScale, Expr, Functional};

/// `ξ ∗ η` as a lazy expression.
pub fn convolve<R: crate::ring::CoefficientRing>(xi: &Functional<R>, eta: &Functional<R>) -> Expr<R> {
    Expr::leaf(xi.clone()).convolve(Expr::leaf(eta.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Element, Generator, Monomial};
    use crate::hopf::HopfSchema;
    use crate::instances::rooted_tree_schema;
    use crate::ring::{int, rat, Rational};

    type F = Functional<Rational>;

    fn g(n: u32) -> Generator {
        Generator::new(&format!("t{n}"), n)
    }

    fn t(n: u32) -> Monomial {
        Monomial::generator(g(n))
    }

    fn ev(s: &HopfSchema, f: &Expr<Rational>, m: &Monomial) -> Rational {
        evaluate_monomial(s, f, m).unwrap()
    }

    #[test]
    fn counit_and_closed_forms() {
        let s = HopfSchema::ladder();
        let h = &Element::constant(int(5)) + &Element::monomial(t(1).mul(&t(2))).scale(&int(2));
        assert_eq!(F::counit().eval(&h).unwrap(), int(5));
        let chi = F::character([(g(1), int(2))]);
        assert_eq!(chi.eval_monomial(&t(1).mul(&t(1))).unwrap(), int(4));
        let z = F::infinitesimal([(g(1), int(1))]);
        assert_eq!(z.eval_monomial(&t(1).mul(&t(1))).unwrap(), int(0));
        assert_eq!(z.eval_monomial(&Monomial::one()).unwrap(), int(0));
        let _ = s;
    }

    #[test]
    fn counit_is_the_convolution_unit() {
        let s = HopfSchema::ladder();
        let chi = F::character([(g(1), int(3)), (g(2), rat(-1, 2)), (g(3), int(7))]);
        let lhs = convolve(&chi, &F::counit());
        let rhs = convolve(&F::counit(), &chi);
        for m in s.basis_up_to(5).unwrap() {
            let want = chi.eval_monomial(&m).unwrap();
            assert_eq!(ev(&s, &lhs, &m), want);
            assert_eq!(ev(&s, &rhs, &m), want);
        }
    }

    #[test]
    fn product_of_infinitesimals() {
        let s = HopfSchema::ladder();
        let z1 = F::infinitesimal([(g(1), int(3))]);
        let z2 = F::infinitesimal([(g(1), int(5))]);
        let p = convolve(&z1, &z2);
        assert_eq!(ev(&s, &p, &t(2)), int(15));
        assert_eq!(ev(&s, &p, &t(1)), int(0));
    }

    #[test]
    fn inverse_examples() {
        let s = HopfSchema::ladder();
        let eps_inv = character_inverse(&s, &F::counit(), 4).unwrap();
        for m in s.basis_up_to(4).unwrap() {
            assert_eq!(
                eps_inv.eval_monomial(&m).unwrap(),
                F::counit().eval_monomial(&m).unwrap()
            );
        }
        let (a, b) = (int(3), rat(2, 5));
        let chi = F::character([(g(1), a.clone()), (g(2), b.clone())]);
        let inv = character_inverse(&s, &chi, 5).unwrap();
        assert_eq!(inv.value_at(&g(1)), -a.clone());
        assert_eq!(inv.value_at(&g(2)), -b + &a * &a);
        let both = convolve(&inv, &chi);
        let other = convolve(&chi, &inv);
        for m in s.basis_up_to(5).unwrap() {
            let e = F::counit().eval_monomial(&m).unwrap();
            assert_eq!(ev(&s, &both, &m), e);
            assert_eq!(ev(&s, &other, &m), e);
        }
    }

    #[test]
    fn brackets() {
        let s = HopfSchema::ladder();
        let z1 = F::infinitesimal((1..=5).map(|n| (g(n), int(n as i64))));
        let z2 = F::infinitesimal((1..=5).map(|n| (g(n), rat(1, n as i64 + 1))));
        let zz = lie_bracket(&s, &z1, &z1, 5).unwrap();
        assert!(zz.generator_values().unwrap().is_empty());
        // cocommutative: all brackets vanish
        let b = lie_bracket(&s, &z1, &z2, 5).unwrap();
        assert!(b.generator_values().unwrap().is_empty());
    }

    #[test]
    fn tree_bracket_two_ways() {
        let s = rooted_tree_schema(3).unwrap();
        let dot = s.resolve("[]").unwrap();
        let l2 = s.resolve("[[]]").unwrap();
        let l3 = Monomial::generator(s.resolve("[[[]]]").unwrap());
        let zd = F::infinitesimal([(dot, int(1))]);
        let zl = F::infinitesimal([(l2, int(1))]);
        let lazy = Expr::leaf(zd.clone())
            .convolve(Expr::leaf(zl.clone()))
            .minus(Expr::leaf(zl.clone()).convolve(Expr::leaf(zd.clone())));
        let table = lie_bracket(&s, &zd, &zl, 3).unwrap();
        let v = ev(&s, &lazy, &l3);
        assert_eq!(v, table.eval_monomial(&l3).unwrap());
        // Δ'(ℓ3) = • ⊗ ℓ2 + ℓ2 ⊗ •, so the bracket is Z•(•)Zℓ(ℓ2) − Zℓ(ℓ2)Z•(•) = 0 on ℓ3
        assert_eq!(v, int(0));
        // the cherry has Δ' = 2 • ⊗ ℓ2 + •² ⊗ •, giving 2 − 0
        let cherry = Monomial::generator(s.resolve("[[][]]").unwrap());
        assert_eq!(table.eval_monomial(&cherry).unwrap(), int(2));
    }

    #[test]
    fn exp_examples() {
        let s = HopfSchema::ladder();
        let a = rat(3, 2);
        let z = F::infinitesimal([(g(1), a.clone())]);
        let e = exp_star(&s, &z, 4).unwrap();
        assert_eq!(e.eval_monomial(&Monomial::one()).unwrap(), int(1));
        assert_eq!(e.value_at(&g(2)), &a * &a / int(2));
        assert_eq!(e.eval_monomial(&t(1).mul(&t(1))).unwrap(), &a * &a);
        assert!(matches!(
            e.eval_monomial(&t(5)),
            Err(crate::HopfError::CutoffExceeded { .. })
        ));
    }

    #[test]
    fn log_examples() {
        let s = HopfSchema::ladder();
        let l = log_star(&s, &F::counit(), 4).unwrap();
        assert!(l.generator_values().unwrap().is_empty());
        let chi = F::character([(g(1), int(7)), (g(2), int(-2))]);
        assert_eq!(log_star(&s, &chi, 3).unwrap().value_at(&g(1)), int(7));
        let z = F::infinitesimal((1..=5).map(|n| (g(n), rat(n as i64, 3))));
        let back = log_star(&s, &exp_star(&s, &z, 5).unwrap(), 5).unwrap();
        for n in 1..=5 {
            assert_eq!(back.value_at(&g(n)), z.value_at(&g(n)));
        }
    }

    #[test]
    fn dual_grading() {
        let s = HopfSchema::ladder();
        let z = F::infinitesimal((1..=4).map(|n| (g(n), int(10 + n as i64))));
        let yz = y_star(&z);
        for n in 1..=4 {
            assert_eq!(ev(&s, &yz, &t(n)), int(n as i64 * (10 + n as i64)));
        }
        let chi = F::character([(g(2), int(3))]);
        let th = theta_star(&chi, 3);
        let v = th.eval_monomial(&t(2)).unwrap();
        assert_eq!(v.coeff(0).unwrap(), int(3));
        assert_eq!(v.coeff(1).unwrap(), int(6));
        assert_eq!(v.coeff(2).unwrap(), int(6));
        // Y_* is a derivation of ∗
        let z1 = F::infinitesimal([(g(1), int(2)), (g(2), int(1))]);
        let z2 = F::infinitesimal([(g(1), int(-1)), (g(2), int(4))]);
        let lhs = convolve(&z1, &z2).y_star();
        let rhs = y_star(&z1)
            .convolve(Expr::leaf(z2.clone()))
            .plus(Expr::leaf(z1.clone()).convolve(y_star(&z2)));
        assert_eq!(ev(&s, &lhs, &t(3)), ev(&s, &rhs, &t(3)));
    }

    #[test]
    fn metric_examples() {
        let s = HopfSchema::ladder();
        let xi = Expr::leaf(F::table([(Monomial::one(), int(1))]));
        let zero = Expr::leaf(F::zero());
        let (d, tail) = metric_distance(&s, &xi, &zero, 5).unwrap();
        assert_eq!(d, int(1));
        assert_eq!(tail, rat(1, 16));
        let (d0, _) = metric_distance(&s, &xi, &xi, 5).unwrap();
        assert_eq!(d0, int(0));
    }
}

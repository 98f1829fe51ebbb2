//! Randomized algebraic invariants of the kernel, with shrinking.

use num_bigint::BigInt;
use proptest::prelude::*;

use jetvar::calculus::{euler, exactness_x, total_derivative, EvolutionSystem, Exactness};
use jetvar::jetcore::{parse_expr, DiffPoly, JetContext, Monomial, Var, Q};
use jetvar::operators::{CDiffOp, OpAlgebra};

const T: usize = 0;
const X: usize = 1;

fn ctx() -> JetContext {
    JetContext::tx()
}

/// Terms over `t`, `x` and `u, u_x, …, u_{x^4}`, `u_t`.
fn poly_with(coeff: impl Strategy<Value = Q> + Clone) -> impl Strategy<Value = DiffPoly> {
    let factor = (0u32..=5, 1u32..=2);
    let term = (
        coeff,
        0u32..=1,
        0u32..=1,
        prop::collection::vec(factor, 0..=3),
    );
    prop::collection::vec(term, 0..=4).prop_map(|terms| {
        let c = ctx();
        let mut out = DiffPoly::zero();
        for (q, a, b, jets) in terms {
            let mut m = Monomial::pow(Var::Indep(T), a).mul(&Monomial::pow(Var::Indep(X), b));
            for (i, e) in jets {
                let v = if i == 5 {
                    Var::Jet(c.zero_index().bump(T))
                } else {
                    c.jet_along(X, i)
                };
                m = m.mul(&Monomial::pow(v, e));
            }
            out.add_term(m, q);
        }
        out
    })
}

fn small_q() -> impl Strategy<Value = Q> + Clone {
    (-9i64..=9, 1i64..=4).prop_map(|(n, d)| Q::new(n.into(), d.into()))
}

fn huge_q() -> impl Strategy<Value = Q> + Clone {
    (any::<i64>(), any::<i64>(), 1i64..=i64::MAX).prop_map(|(a, b, d)| {
        Q::new(
            BigInt::from(a) * BigInt::from(b) * BigInt::from(10).pow(20),
            BigInt::from(d),
        )
    })
}

fn poly() -> impl Strategy<Value = DiffPoly> {
    poly_with(small_q())
}

/// Polynomials without `u_t`, i.e. functions on the equation.
fn onshell() -> impl Strategy<Value = DiffPoly> {
    poly().prop_map(|p| {
        p.filter_terms(|m| {
            m.factors()
                .iter()
                .all(|(v, _)| v.jet().is_none_or(|a| a.get(T) == 0))
        })
    })
}

fn operator() -> impl Strategy<Value = CDiffOp> {
    prop::collection::vec(onshell(), 0..=4)
        .prop_map(|cs| CDiffOp::from_coeffs(cs.into_iter().enumerate().map(|(i, a)| (i as u32, a))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn arbitrary_precision(a in poly_with(huge_q()), b in poly_with(huge_q())) {
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        prop_assert_eq!((&a * &b).len() <= a.len() * b.len(), true);
        let c = ctx();
        prop_assert_eq!(parse_expr(&a.to_text(&c), &c).unwrap(), a);
    }

    #[test]
    fn text_round_trip(a in poly()) {
        let c = ctx();
        let text = a.to_text(&c);
        let back = parse_expr(&text, &c).unwrap();
        prop_assert_eq!(&back, &a);
        prop_assert_eq!(back.to_text(&c), text);
    }

    #[test]
    fn total_derivatives_commute_and_obey_leibniz(f in poly(), g in poly()) {
        let c = ctx();
        let d = |h: &DiffPoly, v| total_derivative(h, v, &c).unwrap();
        prop_assert_eq!(d(&d(&f, T), X), d(&d(&f, X), T));
        prop_assert_eq!(d(&(&f * &g), X), &d(&f, X) * &g + &f * &d(&g, X));
    }

    #[test]
    fn euler_annihilates_divergences(g in poly(), h in poly()) {
        let c = ctx();
        let div = total_derivative(&g, T, &c).unwrap() + total_derivative(&h, X, &c).unwrap();
        prop_assert!(euler(&div, &c).unwrap().is_zero());
    }

    #[test]
    fn exactness_recovers_primitives(g in onshell()) {
        let c = ctx();
        let f = total_derivative(&g, X, &c).unwrap();
        match exactness_x(&f, X, &c).unwrap() {
            Exactness::Exact(w) => {
                prop_assert_eq!(total_derivative(&w, X, &c).unwrap(), f);
                // primitives agree up to a function of t
                let diff = &w - &g;
                prop_assert!(diff.vars().iter().all(|v| *v == Var::Indep(T)));
            }
            Exactness::NotExact(e) => prop_assert!(false, "E_x = {}", e.to_text(&c)),
        }
    }

    #[test]
    fn reduction_commutes_with_total_derivatives(f in poly()) {
        let sys = EvolutionSystem::pmkdv();
        let c = sys.ctx();
        let r = sys.reduce_onshell(&f).unwrap();
        prop_assert!(sys.is_onshell(&r));
        prop_assert_eq!(sys.reduce_onshell(&total_derivative(&f, X, c).unwrap()).unwrap(), sys.dbar(&r, X).unwrap());
        prop_assert_eq!(sys.reduce_onshell(&total_derivative(&f, T, c).unwrap()).unwrap(), sys.dbar_t(&r).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn adjoint_is_an_antiinvolution(a in operator(), b in operator()) {
        let c = ctx();
        let alg = OpAlgebra::new(&c, X);
        prop_assert_eq!(alg.adjoint(&alg.adjoint(&a).unwrap()).unwrap(), a.clone());
        let ab = alg.compose(&a, &b).unwrap();
        prop_assert_eq!(
            alg.adjoint(&ab).unwrap(),
            alg.compose(&alg.adjoint(&b).unwrap(), &alg.adjoint(&a).unwrap()).unwrap()
        );
    }

    #[test]
    fn composition_agrees_with_application(a in operator(), b in operator(), f in onshell()) {
        let c = ctx();
        let alg = OpAlgebra::new(&c, X);
        let lhs = alg.apply(&alg.compose(&a, &b).unwrap(), &f).unwrap();
        prop_assert_eq!(lhs, alg.apply(&a, &alg.apply(&b, &f).unwrap()).unwrap());
    }

    #[test]
    fn green_formula(a in operator(), psi in onshell(), phi in onshell()) {
        let c = ctx();
        let alg = OpAlgebra::new(&c, X);
        let b = alg.concomitant(&a, &psi, &phi).unwrap();
        let pairing = &psi * &alg.apply(&a, &phi).unwrap() - &alg.apply(&alg.adjoint(&a).unwrap(), &psi).unwrap() * &phi;
        prop_assert_eq!(alg.dx(&b).unwrap(), pairing);
    }

    #[test]
    fn linearization_is_a_derivation(f in onshell(), g in onshell()) {
        let c = ctx();
        let alg = OpAlgebra::new(&c, X);
        let lhs = alg.linearize(&(&f * &g)).unwrap();
        let rhs = alg.linearize(&g).unwrap().left_mul(&f).add(&alg.linearize(&f).unwrap().left_mul(&g));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn presymplectic_operators_are_skew(psi in onshell()) {
        let c = ctx();
        let alg = OpAlgebra::new(&c, X);
        let op = alg.presymp(&psi).unwrap();
        prop_assert_eq!(alg.adjoint(&op).unwrap(), op.neg());
    }

    #[test]
    fn operator_text_round_trip(a in operator()) {
        let c = ctx();
        prop_assert_eq!(CDiffOp::parse(&a.to_text(&c), &c).unwrap(), a);
    }
}

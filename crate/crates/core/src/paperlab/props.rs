use super::{checks::SCALING_PHI, for_cases, CheckDef, Claims, Lab, Outcome, Shape};
use crate::calculus::{
    euler, euler_x, exactness_x, total_derivative, EvolutionSystem, Exactness, WeightSpec,
};
use crate::error::Result;
use crate::jetcore::{parse_expr, q, DiffPoly, JetContext, Var};
use crate::operators::binomial;
use crate::solver::{solve_cosymmetries, AnsatzSpec};

pub(super) static PROPERTIES: &[CheckDef] = &[
    CheckDef {
        id: "euler-kills-divergence",
        summary: "Euler operator annihilates divergences",
        run: euler_kills_divergence,
    },
    CheckDef {
        id: "exactness-x",
        summary: "exactness test soundness and completeness",
        run: exactness,
    },
    CheckDef {
        id: "adjoint-involution",
        summary: "adjoint is an involution",
        run: adjoint_involution,
    },
    CheckDef {
        id: "adjoint-antihomomorphism",
        summary: "adjoint reverses composition",
        run: adjoint_antihomomorphism,
    },
    CheckDef {
        id: "concomitant-witness",
        summary: "Green formula witness",
        run: concomitant_witness,
    },
    CheckDef {
        id: "linearize-leibniz",
        summary: "Leibniz rule for linearization",
        run: linearize_leibniz,
    },
    CheckDef {
        id: "presymp-skew",
        summary: "presymplectic operators are skew",
        run: presymp_skew,
    },
    CheckDef {
        id: "reduce-commutes",
        summary: "on-shell reduction commutes with D",
        run: reduce_commutes,
    },
    CheckDef {
        id: "grading",
        summary: "Dx and Dt shift weight by 1 and 3",
        run: grading,
    },
    CheckDef {
        id: "scaling-covariance",
        summary: "scaling action on cosymmetries",
        run: scaling_covariance,
    },
];

const T: usize = 0;
const X: usize = 1;

fn show(ctx: &JetContext, f: &DiffPoly) -> String {
    f.to_text(ctx)
}

/// `∂_{u_j} D̄_x^i(f) = Σ_r C(i,r) D̄_x^{i−r}(∂_{u_{j−r}} f)`.
pub(super) fn prop1(lab: &Lab) -> Result<Outcome> {
    let sys = EvolutionSystem::pmkdv();
    let ctx = sys.ctx();
    let alg = lab.algebra(&sys)?;
    for_cases(lab, 1, "i <= 5, j <= 6", lab.cases, |g| {
        let f = g.along(ctx, &[T, X], X, Shape::new(5));
        let (i, j) = (g.range(1, 5), g.range(0, 6));
        let lhs = alg.partial_u(&alg.dx_pow(&f, i)?, j);
        let mut rhs = DiffPoly::zero();
        for r in 0..=i.min(j) {
            rhs += alg
                .dx_pow(&alg.partial_u(&f, j - r), i - r)?
                .scale(&binomial(i, r));
        }
        Ok((lhs != rhs).then(|| format!("i = {i}, j = {j}, f = {}", show(ctx, &f))))
    })
}

/// `∂_{u_{s+2}} l_E*(ψ) = 3 D̄_x(∂_{u_s} ψ)` for `ψ` of order `≤ s`.
pub(super) fn prop2(lab: &Lab) -> Result<Outcome> {
    let sys = EvolutionSystem::pmkdv();
    let ctx = sys.ctx();
    let alg = lab.algebra(&sys)?;
    for_cases(lab, 2, "s = 1..5", lab.cases, |g| {
        let s = g.range(1, 5);
        let lead = g.along(ctx, &[T, X], X, Shape::new(s).terms(1).jet_degree(1));
        let psi = g.along(ctx, &[T, X], X, Shape::new(s)) + &lead * &DiffPoly::var(alg.u(s));
        let lhs = alg.partial_u(&alg.adjoint_linearization_apply(&sys, &psi)?, s + 2);
        let rhs = alg.dx(&alg.partial_u(&psi, s))?.scale(&q(3));
        Ok((lhs != rhs).then(|| format!("s = {s}, psi = {}", show(ctx, &psi))))
    })
}

/// `[∂_{u_j}, D̄_t](f) = Σ_i ∂_{u_j}(D̄_x^i Φ) ∂_{u_i} f`.
pub(super) fn commutator_dt(lab: &Lab) -> Result<Outcome> {
    let sys = EvolutionSystem::pmkdv();
    let ctx = sys.ctx();
    let alg = lab.algebra(&sys)?;
    for_cases(lab, 3, "order <= 5, j <= 8", lab.cases, |g| {
        let f = g.along(ctx, &[T, X], X, Shape::new(5));
        let j = g.range(0, 8);
        let lhs = alg.partial_u(&sys.dbar_t(&f)?, j) - sys.dbar_t(&alg.partial_u(&f, j))?;
        let mut rhs = DiffPoly::zero();
        for i in 0..=5 {
            let flow = alg.dx_pow(sys.rhs(), i)?;
            rhs += &alg.partial_u(&flow, j) * &alg.partial_u(&f, i);
        }
        Ok((lhs != rhs).then(|| format!("j = {j}, f = {}", show(ctx, &f))))
    })
}

fn euler_kills_divergence(lab: &Lab) -> Result<Outcome> {
    let contexts = [JetContext::tx(), JetContext::txy()];
    for_cases(lab, 4, "two and three variables", lab.cases, |g| {
        let ctx = &contexts[g.range(0, 1) as usize];
        let mut div = DiffPoly::zero();
        for v in 0..ctx.n_indep() {
            div += total_derivative(&g.free(ctx, Shape::new(2).terms(3)), v, ctx)?;
        }
        let e = euler(&div, ctx)?;
        Ok((!e.is_zero()).then(|| {
            format!(
                "divergence {} has Euler image {}",
                show(ctx, &div),
                show(ctx, &e)
            )
        }))
    })
}

fn exactness(lab: &Lab) -> Result<Outcome> {
    let ctx = JetContext::tx();
    for_cases(lab, 5, "constructed and arbitrary inputs", lab.cases, |g| {
        // completeness: every D_x(g) is recognised, with a valid witness
        let h = g.along(&ctx, &[T, X], X, Shape::new(4));
        let f = total_derivative(&h, X, &ctx)?;
        match exactness_x(&f, X, &ctx)? {
            Exactness::Exact(w) if total_derivative(&w, X, &ctx)? == f => {}
            other => return Ok(Some(format!("D_x({}) gave {other:?}", show(&ctx, &h)))),
        }
        // soundness on arbitrary input
        let f = g.along(&ctx, &[T, X], X, Shape::new(4));
        let ok = match exactness_x(&f, X, &ctx)? {
            Exactness::Exact(w) => total_derivative(&w, X, &ctx)? == f,
            Exactness::NotExact(e) => !e.is_zero() && e == euler_x(&f, X, &ctx)?,
        };
        Ok((!ok).then(|| format!("f = {}", show(&ctx, &f))))
    })
}

fn adjoint_involution(lab: &Lab) -> Result<Outcome> {
    let sys = EvolutionSystem::pmkdv();
    let ctx = sys.ctx();
    let alg = lab.algebra(&sys)?;
    for_cases(lab, 6, "order <= 4", lab.cases, |g| {
        let a = g.operator(ctx, &[T, X], X, 4, Shape::new(3));
        let back = alg.adjoint(&alg.adjoint(&a)?)?;
        Ok((back != a).then(|| a.to_text(ctx)))
    })
}

fn adjoint_antihomomorphism(lab: &Lab) -> Result<Outcome> {
    let sys = EvolutionSystem::pmkdv();
    let ctx = sys.ctx();
    let alg = lab.algebra(&sys)?;
    for_cases(lab, 7, "orders <= 3", lab.cases, |g| {
        let a = g.operator(ctx, &[T, X], X, 3, Shape::new(3));
        let b = g.operator(ctx, &[T, X], X, 3, Shape::new(3));
        let lhs = alg.adjoint(&alg.compose(&a, &b)?)?;
        let rhs = alg.compose(&alg.adjoint(&b)?, &alg.adjoint(&a)?)?;
        Ok((lhs != rhs).then(|| format!("a = {}, b = {}", a.to_text(ctx), b.to_text(ctx))))
    })
}

fn concomitant_witness(lab: &Lab) -> Result<Outcome> {
    let sys = EvolutionSystem::pmkdv();
    let ctx = sys.ctx();
    let alg = lab.algebra(&sys)?;
    for_cases(lab, 8, "order <= 3", lab.cases, |g| {
        let a = g.operator(ctx, &[T, X], X, 3, Shape::new(2));
        let psi = g.along(ctx, &[T, X], X, Shape::new(3));
        let phi = g.along(ctx, &[T, X], X, Shape::new(3));
        let pairing = &psi * &alg.apply(&a, &phi)? - &alg.apply(&alg.adjoint(&a)?, &psi)? * &phi;
        let cx = || {
            format!(
                "a = {}, psi = {}, phi = {}",
                a.to_text(ctx),
                show(ctx, &psi),
                show(ctx, &phi)
            )
        };
        if exactness_x(&pairing, X, ctx)?.witness().is_none() {
            return Ok(Some(cx()));
        }
        let b = alg.concomitant(&a, &psi, &phi)?;
        Ok((alg.dx(&b)? != pairing).then(cx))
    })
}

fn linearize_leibniz(lab: &Lab) -> Result<Outcome> {
    let sys = EvolutionSystem::pmkdv();
    let ctx = sys.ctx();
    let alg = lab.algebra(&sys)?;
    for_cases(lab, 9, "order <= 4", lab.cases, |g| {
        let f = g.along(ctx, &[T, X], X, Shape::new(4));
        let h = g.along(ctx, &[T, X], X, Shape::new(4));
        let lhs = alg.linearize(&(&f * &h))?;
        let rhs = alg
            .linearize(&h)?
            .left_mul(&f)
            .add(&alg.linearize(&f)?.left_mul(&h));
        Ok((lhs != rhs).then(|| format!("f = {}, g = {}", show(ctx, &f), show(ctx, &h))))
    })
}

fn presymp_skew(lab: &Lab) -> Result<Outcome> {
    let sys = EvolutionSystem::pmkdv();
    let ctx = sys.ctx();
    let alg = lab.algebra(&sys)?;
    for_cases(lab, 10, "order <= 5", lab.cases, |g| {
        let psi = g.along(ctx, &[T, X], X, Shape::new(5));
        let op = alg.presymp(&psi)?;
        Ok((alg.adjoint(&op)? != op.neg()).then(|| show(ctx, &psi)))
    })
}

/// `reduce(D_v f) = D̄_v(reduce f)` for `v = t, x`, and `D_t D_x = D_x D_t`.
fn reduce_commutes(lab: &Lab) -> Result<Outcome> {
    let sys = EvolutionSystem::pmkdv();
    let ctx = sys.ctx();
    for_cases(lab, 11, "t and x", 2 * lab.cases, |g| {
        let f = g.free(ctx, Shape::new(2).jet_degree(2).terms(3));
        let dt = |f: &DiffPoly| total_derivative(f, T, ctx);
        let dx = |f: &DiffPoly| total_derivative(f, X, ctx);
        let r = sys.reduce_onshell(&f)?;
        let ok = sys.reduce_onshell(&dx(&f)?)? == sys.dbar(&r, X)?
            && sys.reduce_onshell(&dt(&f)?)? == sys.dbar_t(&r)?
            && dt(&dx(&f)?)? == dx(&dt(&f)?)?;
        Ok((!ok).then(|| show(ctx, &f)))
    })
}

fn grading(lab: &Lab) -> Result<Outcome> {
    let sys = EvolutionSystem::pmkdv();
    let ctx = sys.ctx();
    let w = WeightSpec::pmkdv(ctx);
    for_cases(lab, 12, "weight-homogeneous inputs", lab.cases, |g| {
        let raw = g.along(ctx, &[T, X], X, Shape::new(4).terms(6));
        let first = raw
            .terms()
            .next()
            .map(|(m, _)| w.monomial_weight(m))
            .unwrap_or(0);
        let f = raw.filter_terms(|m| w.monomial_weight(m) == first);
        let shifted = |h: DiffPoly, by: i64| h.is_zero() || w.weight_of(&h) == Some(first + by);
        let ok = shifted(sys.dbar(&f, X)?, 1) && shifted(sys.dbar_t(&f)?, 3);
        Ok((!ok).then(|| show(ctx, &f)))
    })
}

/// `(X + 1)ψ = 3t∂_tψ + x∂_xψ − Σ j u_j ∂_{u_j}ψ + ψ`.
pub fn scaling_action(psi: &DiffPoly) -> DiffPoly {
    let (t, x) = (Var::Indep(T), Var::Indep(X));
    let mut out = psi.clone();
    out += (&DiffPoly::var(t) * &psi.diff(&t)).scale(&q(3));
    out += &DiffPoly::var(x) * &psi.diff(&x);
    for a in psi.jets() {
        let j = a.get(X) as i64;
        out -= (&DiffPoly::jet(a) * &psi.diff(&Var::Jet(a))).scale(&q(j));
    }
    out
}

/// `E_φ(ψ) + l_φ*(ψ) = (X + 1)ψ + 3t·l_E*(ψ)` for the scaling
/// characteristic `φ`; on cosymmetries the action preserves the kernel.
fn scaling_covariance(lab: &Lab) -> Result<Outcome> {
    let sys = EvolutionSystem::pmkdv();
    let ctx = sys.ctx();
    let alg = lab.algebra(&sys)?;
    let phi = parse_expr(SCALING_PHI, ctx)?;
    let phi_adj = alg.adjoint(&alg.linearize(&phi)?)?;
    let t = DiffPoly::var(Var::Indep(T));
    let act = |psi: &DiffPoly| -> Result<DiffPoly> {
        Ok(alg.evolutionary(&phi, psi)? + alg.apply(&phi_adj, psi)?)
    };

    let random = for_cases(lab, 13, "random psi", lab.cases, |g| {
        let psi = g.along(ctx, &[T, X], X, Shape::new(4));
        let lhs = act(&psi)?;
        let rhs = scaling_action(&psi)
            + (&t * &alg.adjoint_linearization_apply(&sys, &psi)?).scale(&q(3));
        Ok((lhs != rhs).then(|| show(ctx, &psi)))
    })?;
    if !random.passed {
        return Ok(random);
    }
    let basis = solve_cosymmetries(&sys, &AnsatzSpec::new(4, 3).t_degree(1).x_degree(1))?;
    let mut c = Claims::new(ctx);
    for psi in &basis.basis {
        let image = act(psi)?;
        c.zero(
            format!("image of {} is a cosymmetry", show(ctx, psi)),
            &alg.adjoint_linearization_apply(&sys, &image)?,
        );
        c.eq("image equals (X+1)psi", &image, &scaling_action(psi));
    }
    let extra = format!(
        "{}; {} cosymmetries of order <= 4",
        random.details,
        basis.len()
    );
    let mut out = c.finish("");
    if out.passed {
        out.details = extra;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scaling_action_on_u_x() {
        let ctx = JetContext::tx();
        let f = parse_expr("t*u_x", &ctx).unwrap();
        // 3t·u_x − t·u_x + t·u_x
        assert_eq!(scaling_action(&f), parse_expr("3*t*u_x", &ctx).unwrap());
    }
}

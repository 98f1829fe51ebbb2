use super::{props, CheckDef, Claims, Lab, Outcome};
use crate::calculus::{
    euler, exactness_x, total_derivative, EvolutionSystem, Exactness, WeightSpec,
};
use crate::error::Result;
use crate::jetcore::{parse_expr, q, q_frac, DiffPoly, JetContext, Var};
use crate::operators::{CDiffOp, OpAlgebra};
use crate::solver::{solve_divergence_repr, solve_presymp_potential, AnsatzSpec};

pub(super) static PAPER: &[CheckDef] = &[
    CheckDef {
        id: "euler-lagrangian-2var",
        summary: "variational derivative of the Lagrangian",
        run: euler_lagrangian_2var,
    },
    CheckDef {
        id: "euler-lagrangian-3var",
        summary: "variational derivative, three variables",
        run: euler_lagrangian_3var,
    },
    CheckDef {
        id: "prop1",
        summary: "partial derivatives through powers of Dx",
        run: props::prop1,
    },
    CheckDef {
        id: "prop2",
        summary: "leading part of the adjoint linearization",
        run: props::prop2,
    },
    CheckDef {
        id: "commutator-dt",
        summary: "commutator of a partial derivative with Dt",
        run: props::commutator_dt,
    },
    CheckDef {
        id: "eq-firstterm",
        summary: "adjoint linearization of a*u_k",
        run: eq_firstterm,
    },
    CheckDef {
        id: "lemma2-relation",
        summary: "top coefficient relation",
        run: lemma2_relation,
    },
    CheckDef {
        id: "lemma3-cancellation",
        summary: "vanishing presymplectic coefficients",
        run: lemma3_cancellation,
    },
    CheckDef {
        id: "lemma4-exactness",
        summary: "exactness of the next coefficient",
        run: lemma4_exactness,
    },
    CheckDef {
        id: "scaling-cosym",
        summary: "scaling cosymmetry",
        run: scaling_cosym,
    },
    CheckDef {
        id: "order6-nonexistence",
        summary: "no potential of order <= 6",
        run: order6_nonexistence,
    },
    CheckDef {
        id: "example-decomposition",
        summary: "off-shell decomposition",
        run: example_decomposition,
    },
    CheckDef {
        id: "trivial-characteristic",
        summary: "characteristic vanishes on-shell",
        run: trivial_characteristic,
    },
    CheckDef {
        id: "remark-density",
        summary: "restricted density",
        run: remark_density,
    },
    CheckDef {
        id: "nontrivial-cl-bounded",
        summary: "density is not a divergence",
        run: nontrivial_cl_bounded,
    },
    CheckDef {
        id: "xi-onshell-closed",
        summary: "three-variable conservation law",
        run: xi_onshell_closed,
    },
];

const LAGRANGIAN: &str = "u_t*u_x/2 - u_x^4 + u_xx^2/2";

fn p(ctx: &JetContext, s: &str) -> Result<DiffPoly> {
    parse_expr(s, ctx)
}

fn euler_lagrangian_2var(_: &Lab) -> Result<Outcome> {
    let ctx = JetContext::tx();
    let lambda = p(&ctx, LAGRANGIAN)?;
    let eq = p(&ctx, "u_t - 4*u_x^3 - u_xxx")?;
    let mut c = Claims::new(&ctx);
    c.eq(
        "euler(lambda) = -Dx(u_t - 4u_x^3 - u_xxx)",
        &euler(&lambda, &ctx)?,
        &-total_derivative(&eq, 1, &ctx)?,
    );
    Ok(c.finish(""))
}

fn euler_lagrangian_3var(_: &Lab) -> Result<Outcome> {
    let ctx = JetContext::txy();
    let lambda = p(&ctx, &format!("{LAGRANGIAN} + u_xy*u_yy/2"))?;
    let eq = p(&ctx, "u_t - 4*u_x^3 - u_xxx - u_yyy")?;
    let mut c = Claims::new(&ctx);
    c.eq(
        "euler(lambda + u_xy*u_yy/2) = -Dx(u_t - 4u_x^3 - u_xxx - u_yyy)",
        &euler(&lambda, &ctx)?,
        &-total_derivative(&eq, 1, &ctx)?,
    );
    Ok(c.finish(""))
}

/// The sample coefficients `a(t)` of the lemma checks.
fn samples(ctx: &JetContext) -> Result<Vec<(&'static str, DiffPoly)>> {
    Ok(vec![("t", p(ctx, "t")?), ("t^2", p(ctx, "t^2")?)])
}

fn eq_firstterm(lab: &Lab) -> Result<Outcome> {
    let sys = EvolutionSystem::pmkdv();
    let ctx = sys.ctx();
    let alg = lab.algebra(&sys)?;
    let (t, u) = (Var::Indep(sys.time()), |i| DiffPoly::var(alg.u(i)));
    let cubic = p(ctx, "4*u_x^3")?;
    let u1sq = p(ctx, "u_x^2")?;
    let mut c = Claims::new(ctx);
    for k in [7, 8] {
        for (name, a) in samples(ctx)? {
            let lhs = -alg.adjoint_linearization_apply(&sys, &(&a * &u(k)))?;
            let rhs = &a.diff(&t) * &u(k) + &a * &alg.dx_pow(&cubic, k)?
                - (&(&a * &u1sq) * &u(k + 1)).scale(&q(12))
                - (&(&a * &alg.dx(&u1sq)?) * &u(k)).scale(&q(12));
            c.eq(format!("k={k}, a={name}"), &lhs, &rhs);
        }
    }
    Ok(c.finish(""))
}

fn lemma2_relation(lab: &Lab) -> Result<Outcome> {
    let sys = EvolutionSystem::pmkdv();
    let ctx = sys.ctx();
    let alg = lab.algebra(&sys)?;
    let t = Var::Indep(sys.time());
    let u1sq = p(ctx, "u_x^2")?;
    let mut c = Claims::new(ctx);
    for k in [7, 8] {
        for (name, a) in samples(ctx)? {
            let image = alg.adjoint_linearization_apply(&sys, &(&a * &DiffPoly::var(alg.u(k))))?;
            let lhs = -alg.partial_u(&image, k);
            let rhs = a.diff(&t) + (&a * &alg.dx(&u1sq)?).scale(&q(12 * (k as i64 - 1)));
            c.eq(format!("k={k}, a={name}"), &lhs, &rhs);
        }
    }
    Ok(c.finish(""))
}

/// `B = (ȧ/3)·x + 4(k−1)·a·u_1² + b` with `b = 0`.
fn lemma_b(alg: &OpAlgebra, sys: &EvolutionSystem, a: &DiffPoly, k: u32) -> Result<DiffPoly> {
    let ctx = sys.ctx();
    let x = DiffPoly::var(Var::Indep(alg.x()));
    let adot = a.diff(&Var::Indep(sys.time()));
    Ok((&adot * &x).scale(&q_frac(1, 3)) + (a * &p(ctx, "u_x^2")?).scale(&q(4 * (k as i64 - 1))))
}

fn lemma3_cancellation(lab: &Lab) -> Result<Outcome> {
    let sys = EvolutionSystem::pmkdv();
    let ctx = sys.ctx();
    let alg = lab.algebra(&sys)?;
    let u = |i| DiffPoly::var(alg.u(i));
    let k = 8;
    let mut c = Claims::new(ctx);
    for (name, a) in samples(ctx)? {
        let b = lemma_b(&alg, &sys, &a, k)?;
        let cc = alg.dx(&b)?.scale(&q(3));
        let psi0 = &a * &u(k) + &b * &u(k - 2) + &cc * &u(k - 3);
        let op = alg.presymp(&psi0)?;
        for i in [k, k - 1, k - 3] {
            c.zero(format!("a={name}: coefficient of Dx^{i}"), &op.coeff(i));
        }
    }
    Ok(c.finish("k=8, b=0"))
}

fn lemma4_exactness(lab: &Lab) -> Result<Outcome> {
    let sys = EvolutionSystem::pmkdv();
    let ctx = sys.ctx();
    let alg = lab.algebra(&sys)?;
    let t = Var::Indep(sys.time());
    let k = 8;
    let mut c = Claims::new(ctx);
    for (name, a) in samples(ctx)? {
        let b = lemma_b(&alg, &sys, &a, k)?;
        let image = alg.adjoint_linearization_apply(&sys, &(&b * &DiffPoly::var(alg.u(k - 2))))?;
        let f = -alg.partial_u(&image, k - 2) - (&a.diff(&t) * &p(ctx, "u_x^2")?).scale(&q(4));
        match exactness_x(&f, alg.x(), ctx)? {
            Exactness::Exact(g) => {
                let ok = alg.dx(&g)? == f;
                c.holds(
                    format!("a={name}: exact, witness {}", g.to_text(ctx)),
                    ok,
                    || "witness does not differentiate back".into(),
                );
            }
            Exactness::NotExact(e) => c.holds(format!("a={name}: exact"), false, || {
                format!("E_x = {}", e.to_text(ctx))
            }),
        }
    }
    Ok(c.finish("k=8, b=0"))
}

/// Characteristic of the scaling symmetry.
pub(super) const SCALING_PHI: &str = "-3*t*(4*u_x^3 + u_xxx) - x*u_x";

fn scaling_cosym(lab: &Lab) -> Result<Outcome> {
    let sys = EvolutionSystem::pmkdv();
    let ctx = sys.ctx();
    let alg = lab.algebra(&sys)?;
    let psi = alg.dx(&p(ctx, SCALING_PHI)?)?;
    let mut c = Claims::new(ctx);
    c.eq(
        "psi = Dx(phi)",
        &psi,
        &p(ctx, "-3*t*(12*u_x^2*u_xx + u_xxxx) - u_x - x*u_xx")?,
    );
    c.zero(
        "l_E*(psi) = 0",
        &alg.adjoint_linearization_apply(&sys, &psi)?,
    );
    c.op_eq("l_psi - l_psi* = 0", &alg.presymp(&psi)?, &CDiffOp::zero());
    c.op_eq(
        "l_{u_x} - l_{u_x}* = 2Dx",
        &alg.presymp(&p(ctx, "u_x")?)?,
        &CDiffOp::term(DiffPoly::int(2), 1),
    );
    Ok(c.finish(""))
}

fn order6_nonexistence(_: &Lab) -> Result<Outcome> {
    let sys = EvolutionSystem::pmkdv();
    let spec = AnsatzSpec::new(6, 5).t_degree(2).x_degree(2);
    let sol = solve_presymp_potential(&sys, &CDiffOp::dx_pow(1), &spec)?;
    let s = &sol.kernel.stats;
    let details = format!(
        "polynomial ansatz: jet order <= 6, jet degree <= 5, t degree <= 2, x degree <= 2; \
         unknowns {}, equations {}, rank {}, components {}; {}",
        s.unknowns,
        s.equations,
        s.rank,
        s.components,
        if sol.is_empty() {
            "no solution in this class"
        } else {
            "solution found"
        }
    );
    Ok(match &sol.particular {
        None => Outcome::pass(details),
        Some(psi) => Outcome::fail(details, psi.to_text(sys.ctx())),
    })
}

fn example_decomposition(_: &Lab) -> Result<Outcome> {
    let ctx = JetContext::txy();
    let d = |f: &DiffPoly, v| total_derivative(f, v, &ctx);
    let lambda = p(&ctx, LAGRANGIAN)?;
    let total = d(&lambda, 2)?
        - &p(&ctx, "u_xy")? * &p(&ctx, "u_t - 4*u_x^3 - u_xxx")?
        - d(&p(&ctx, "u_x*u_y/2")?, 0)?
        - d(&p(&ctx, "u_xx*u_xy - u_t*u_y/2")?, 1)?;
    let mut c = Claims::new(&ctx);
    c.zero(
        "Dy(lambda) - u_xy*F - Dt(u_x*u_y/2) - Dx(u_xx*u_xy - u_t*u_y/2) = 0",
        &total,
    );
    Ok(c.finish(""))
}

fn trivial_characteristic(_: &Lab) -> Result<Outcome> {
    let sys = EvolutionSystem::pmkdv_y();
    let mut c = Claims::new(sys.ctx());
    c.zero(
        "u_xy restricts to 0",
        &sys.reduce_onshell(&p(sys.ctx(), "u_xy")?)?,
    );
    Ok(c.finish(""))
}

fn remark_density(_: &Lab) -> Result<Outcome> {
    let sys = EvolutionSystem::pmkdv();
    let ctx = sys.ctx();
    let restricted = sys.reduce_onshell(&p(ctx, LAGRANGIAN)?)?;
    let mut c = Claims::new(ctx);
    c.eq(
        "lambda restricted",
        &restricted,
        &p(ctx, "u_x^4 + u_x*u_xxx/2 + u_xx^2/2")?,
    );
    c.eq(
        "minus Dx(u_x*u_xx/2) is u_x^4",
        &(&restricted - &sys.dbar(&p(ctx, "u_x*u_xx/2")?, 1)?),
        &p(ctx, "u_x^4")?,
    );
    Ok(c.finish(""))
}

/// Weight-graded ansätze for `λ| = D̄_t(g2) − D̄_x(g1)`: `g2` of weight 1,
/// `g1` of weight 3.
pub fn nontrivial_cl_ansatze(sys: &EvolutionSystem) -> (AnsatzSpec, AnsatzSpec) {
    let w = WeightSpec::pmkdv(sys.ctx());
    let base = AnsatzSpec::new(4, 4).t_degree(1).x_degree(1);
    (base.clone().graded(w.clone(), 3), base.graded(w, 1))
}

fn nontrivial_cl_bounded(_: &Lab) -> Result<Outcome> {
    let sys = EvolutionSystem::pmkdv();
    let density = sys.reduce_onshell(&p(sys.ctx(), LAGRANGIAN)?)?;
    let (g1, g2) = nontrivial_cl_ansatze(&sys);
    let search = solve_divergence_repr(&sys, &density, &g1, &g2)?;
    let s = &search.stats;
    let details = format!(
        "bounded scope: g1 of weight 3, g2 of weight 1, jet order <= 4, jet degree <= 4, t and x degree <= 1; \
         unknowns {}, equations {}, rank {}; {}",
        s.unknowns,
        s.equations,
        s.rank,
        if search.found.is_none() { "no representation in this class" } else { "representation found" }
    );
    Ok(match &search.found {
        None => Outcome::pass(details),
        Some(r) => Outcome::fail(
            details,
            format!(
                "g1 = {}, g2 = {}",
                r.g1.to_text(sys.ctx()),
                r.g2.to_text(sys.ctx())
            ),
        ),
    })
}

fn xi_onshell_closed(_: &Lab) -> Result<Outcome> {
    let sys = EvolutionSystem::pmkdv_3d();
    let ctx = sys.ctx();
    let comp = |s: &str| -> Result<DiffPoly> { sys.reduce_onshell(&p(ctx, s)?) };
    let t_part = comp("-u_x*u_y/2")?;
    let x_part = comp("u_t*u_y/2 + u_yy^2/2 - u_xx*u_xy")?;
    let y_part = comp(&format!("{LAGRANGIAN} - u_xy*u_yy"))?;
    let total = sys.dbar_t(&t_part)? + sys.dbar(&x_part, 1)? + sys.dbar(&y_part, 2)?;
    let mut c = Claims::new(ctx);
    c.zero("Dt(xi_t) + Dx(xi_x) + Dy(xi_y) = 0 on-shell", &total);
    Ok(c.finish(
        "components: t = -u_x*u_y/2, x = u_t*u_y/2 + u_yy^2/2 - u_xx*u_xy, y = lambda - u_xy*u_yy",
    ))
}

use num_bigint::BigInt;

use super::{CDiffOp, Fault};
use crate::calculus::{total_derivative, EvolutionSystem};
use crate::error::{JetError, Result};
use crate::jetcore::{DiffPoly, JetContext, Var, VarId, Q};

/// `C(n, k)` as an exact rational.
pub fn binomial(n: u32, k: u32) -> Q {
    if k > n {
        return Q::from_integer(BigInt::from(0));
    }
    let k = k.min(n - k);
    let mut acc = BigInt::from(1);
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    Q::from_integer(acc)
}

/// Operator calculus over one spatial variable `x` of a jet context.
///
/// `D̄_x` is the free total derivative in `x`; on the equation manifold of
/// an evolution system with one active spatial variable it coincides with
/// the restricted total derivative.
#[derive(Clone, Copy, Debug)]
pub struct OpAlgebra<'a> {
    ctx: &'a JetContext,
    x: VarId,
    fault: Option<Fault>,
}

impl<'a> OpAlgebra<'a> {
    pub fn new(ctx: &'a JetContext, x: VarId) -> Self {
        OpAlgebra {
            ctx,
            x,
            fault: None,
        }
    }

    pub fn for_system(sys: &'a EvolutionSystem) -> Result<Self> {
        Ok(Self::new(sys.ctx(), sys.spatial_x()?))
    }

    #[doc(hidden)]
    pub fn with_fault(mut self, fault: Option<Fault>) -> Self {
        self.fault = fault;
        self
    }

    pub fn ctx(&self) -> &'a JetContext {
        self.ctx
    }

    pub fn x(&self) -> VarId {
        self.x
    }

    /// The jet coordinate `u_i = u_{x…x}`.
    pub fn u(&self, i: u32) -> Var {
        self.ctx.jet_along(self.x, i)
    }

    pub fn dx(&self, f: &DiffPoly) -> Result<DiffPoly> {
        total_derivative(f, self.x, self.ctx)
    }

    pub fn dx_pow(&self, f: &DiffPoly, n: u32) -> Result<DiffPoly> {
        let mut g = f.clone();
        for _ in 0..n {
            if g.is_zero() {
                break;
            }
            g = self.dx(&g)?;
        }
        Ok(g)
    }

    /// `[f, D̄_x f, …, D̄_x^n f]`
    pub fn dx_series(&self, f: &DiffPoly, n: u32) -> Result<Vec<DiffPoly>> {
        let mut out = Vec::with_capacity(n as usize + 1);
        out.push(f.clone());
        for i in 0..n as usize {
            let next = self.dx(&out[i])?;
            out.push(next);
        }
        Ok(out)
    }

    /// `∂f/∂u_i`
    pub fn partial_u(&self, f: &DiffPoly, i: u32) -> DiffPoly {
        f.diff(&self.u(i))
    }

    /// `Σ a_i · D̄_x^i(f)`
    pub fn apply(&self, op: &CDiffOp, f: &DiffPoly) -> Result<DiffPoly> {
        let Some(top) = op.order() else {
            return Ok(DiffPoly::zero());
        };
        let series = self.dx_series(f, top)?;
        let mut out = DiffPoly::zero();
        for (i, a) in op.coeffs() {
            out += a * &series[i as usize];
        }
        Ok(out)
    }

    /// `D̄_x^i ∘ g = Σ_r C(i, r) D̄_x^{i−r}(g) D̄_x^r`, accumulated into `out`
    /// after left multiplication by `scale` and shifting powers by `shift`.
    fn push_leibniz(
        &self,
        out: &mut CDiffOp,
        scale: &DiffPoly,
        i: u32,
        g: &DiffPoly,
        shift: u32,
    ) -> Result<()> {
        let series = self.dx_series(g, i)?;
        for r in 0..=i {
            let c = &series[(i - r) as usize];
            if c.is_zero() {
                continue;
            }
            out.add_term(r + shift, (scale * c).scale(&binomial(i, r)));
        }
        Ok(())
    }

    /// `a ∘ b` in normal form.
    pub fn compose(&self, a: &CDiffOp, b: &CDiffOp) -> Result<CDiffOp> {
        let mut out = CDiffOp::zero();
        for (i, ai) in a.coeffs() {
            for (j, bj) in b.coeffs() {
                self.push_leibniz(&mut out, ai, i, bj, j)?;
            }
        }
        Ok(out)
    }

    /// Formal adjoint `Σ (−1)^i D̄_x^i ∘ a_i` in normal form.
    pub fn adjoint(&self, a: &CDiffOp) -> Result<CDiffOp> {
        let mut out = CDiffOp::zero();
        for (i, ai) in a.coeffs() {
            let flip = i % 2 == 1 && self.fault != Some(Fault::AdjointSignFlip);
            let sign = DiffPoly::int(if flip { -1 } else { 1 });
            self.push_leibniz(&mut out, &sign, i, ai, 0)?;
        }
        Ok(out)
    }

    fn require_x_jets(&self, f: &DiffPoly) -> Result<()> {
        match f.jets().into_iter().find(|a| !a.is_pure(self.x)) {
            Some(a) => Err(JetError::Unsupported(format!(
                "`{}` is not an x-jet",
                self.ctx.var_name(&Var::Jet(a))
            ))),
            None => Ok(()),
        }
    }

    /// Linearization `l_f = Σ_i (∂f/∂u_i) D̄_x^i`.
    pub fn linearize(&self, f: &DiffPoly) -> Result<CDiffOp> {
        self.require_x_jets(f)?;
        Ok(CDiffOp::from_coeffs(
            f.jets()
                .into_iter()
                .map(|a| (a.get(self.x), f.diff(&Var::Jet(a)))),
        ))
    }

    /// Presymplectic operator `l_ψ − l_ψ*`.
    pub fn presymp(&self, psi: &DiffPoly) -> Result<CDiffOp> {
        let l = self.linearize(psi)?;
        Ok(l.sub(&self.adjoint(&l)?))
    }

    /// The Green-formula concomitant: `B` with
    /// `D̄_x(B) = ψ·Δ(φ) − Δ*(ψ)·φ`.
    ///
    /// For `a D^i` integration by parts gives
    /// `B = Σ_{r<i} (−1)^r D^r(aψ) · D^{i−1−r}(φ)`.
    pub fn concomitant(&self, op: &CDiffOp, psi: &DiffPoly, phi: &DiffPoly) -> Result<DiffPoly> {
        let top = op.order().unwrap_or(0);
        let phi_series = self.dx_series(phi, top)?;
        let mut b = DiffPoly::zero();
        for (i, a) in op.coeffs() {
            if i == 0 {
                continue;
            }
            let a_psi = self.dx_series(&(a * psi), i - 1)?;
            for r in 0..i {
                let term = &a_psi[r as usize] * &phi_series[(i - 1 - r) as usize];
                if r % 2 == 0 {
                    b += term;
                } else {
                    b -= term;
                }
            }
        }
        let lhs = self.dx(&b)?;
        let rhs = &(psi * &self.apply(op, phi)?) - &(&self.apply(&self.adjoint(op)?, psi)? * phi);
        if lhs != rhs {
            return Err(JetError::Verification(
                "Green formula does not close".into(),
            ));
        }
        Ok(b)
    }

    /// `Σ_i D̄_x^i(φ) ∂ψ/∂u_i`, the evolutionary derivative of `ψ` along `φ`.
    pub fn evolutionary(&self, phi: &DiffPoly, psi: &DiffPoly) -> Result<DiffPoly> {
        self.require_x_jets(psi)?;
        let mut out = DiffPoly::zero();
        for a in psi.jets() {
            let i = a.get(self.x);
            out += &self.dx_pow(phi, i)? * &psi.diff(&Var::Jet(a));
        }
        Ok(out)
    }

    /// `l_E*(ψ) = −D̄_t(ψ) − (l_Φ)*(ψ)` for `E: u_t − Φ = 0`; zero exactly
    /// when `ψ` is a cosymmetry.
    pub fn adjoint_linearization_apply(
        &self,
        sys: &EvolutionSystem,
        psi: &DiffPoly,
    ) -> Result<DiffPoly> {
        self.check_system(sys)?;
        let lphi_adj = self.adjoint(&self.linearize(sys.rhs())?)?;
        let dt = sys.dbar_t(psi)?;
        Ok(-(dt + self.apply(&lphi_adj, psi)?))
    }

    /// The `D̄_x`-part `−l_Φ` of `l_E = D̄_t − l_Φ`.
    pub fn linearization_spatial_part(&self, sys: &EvolutionSystem) -> Result<CDiffOp> {
        self.check_system(sys)?;
        Ok(self.linearize(sys.rhs())?.neg())
    }

    fn check_system(&self, sys: &EvolutionSystem) -> Result<()> {
        if sys.ctx() != self.ctx || sys.spatial_x()? != self.x {
            return Err(JetError::Context(
                "operator algebra does not match the system".into(),
            ));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jetcore::parse_expr;

    fn setup() -> JetContext {
        JetContext::tx()
    }

    fn p(s: &str, ctx: &JetContext) -> DiffPoly {
        parse_expr(s, ctx).unwrap()
    }

    fn op(s: &str, ctx: &JetContext) -> CDiffOp {
        CDiffOp::parse(s, ctx).unwrap()
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(8, 3), crate::jetcore::q(56));
        assert_eq!(binomial(5, 0), crate::jetcore::q(1));
        assert_eq!(binomial(2, 3), crate::jetcore::q(0));
    }

    #[test]
    fn apply_examples() {
        let ctx = setup();
        let alg = OpAlgebra::new(&ctx, 1);
        assert_eq!(
            alg.apply(&op("Dx", &ctx), &p("u_x", &ctx)).unwrap(),
            p("u_xx", &ctx)
        );
        assert_eq!(
            alg.apply(&op("12*u_x^2*Dx + Dx^3", &ctx), &p("u", &ctx))
                .unwrap(),
            p("12*u_x^3 + u_xxx", &ctx)
        );
        assert!(alg
            .apply(&CDiffOp::zero(), &p("u_x", &ctx))
            .unwrap()
            .is_zero());
    }

    #[test]
    fn compose_examples() {
        let ctx = setup();
        let alg = OpAlgebra::new(&ctx, 1);
        let dx = CDiffOp::dx_pow(1);
        let ux = CDiffOp::mult(p("u_x", &ctx));
        assert_eq!(alg.compose(&dx, &ux).unwrap(), op("u_x*Dx + u_xx", &ctx));
        assert_eq!(alg.compose(&dx, &dx).unwrap(), CDiffOp::dx_pow(2));
        assert_eq!(
            alg.compose(&op("u_x*Dx", &ctx), &dx).unwrap(),
            op("u_x*Dx^2", &ctx)
        );
    }

    #[test]
    fn adjoint_examples() {
        let ctx = setup();
        let alg = OpAlgebra::new(&ctx, 1);
        assert_eq!(alg.adjoint(&op("Dx", &ctx)).unwrap(), op("-Dx", &ctx));
        assert_eq!(
            alg.adjoint(&op("u_x*Dx", &ctx)).unwrap(),
            op("-u_x*Dx - u_xx", &ctx)
        );
        assert_eq!(
            alg.adjoint(&op("-12*u_x^2*Dx - Dx^3", &ctx)).unwrap(),
            op("12*u_x^2*Dx + 24*u_x*u_xx + Dx^3", &ctx)
        );
    }

    #[test]
    fn linearize_examples() {
        let ctx = setup();
        let alg = OpAlgebra::new(&ctx, 1);
        assert_eq!(
            alg.linearize(&p("4*u_x^3 + u_xxx", &ctx)).unwrap(),
            op("12*u_x^2*Dx + Dx^3", &ctx)
        );
        assert_eq!(alg.linearize(&p("u_xx", &ctx)).unwrap(), CDiffOp::dx_pow(2));
        assert!(alg.linearize(&p("t*x", &ctx)).unwrap().is_zero());
        assert!(alg.linearize(&p("u_t", &ctx)).is_err());
    }

    #[test]
    fn cosymmetry_evaluation() {
        let sys = EvolutionSystem::pmkdv();
        let alg = OpAlgebra::for_system(&sys).unwrap();
        let ctx = sys.ctx();
        assert!(alg
            .adjoint_linearization_apply(&sys, &p("u_xx", ctx))
            .unwrap()
            .is_zero());
        assert_eq!(
            alg.adjoint_linearization_apply(&sys, &DiffPoly::one())
                .unwrap(),
            p("24*u_x*u_xx", ctx)
        );
        let phi = p("-3*t*(4*u_x^3 + u_xxx) - x*u_x", ctx);
        let psi = alg.dx(&phi).unwrap();
        assert!(alg
            .adjoint_linearization_apply(&sys, &psi)
            .unwrap()
            .is_zero());
    }

    #[test]
    fn presymp_examples() {
        let ctx = setup();
        let alg = OpAlgebra::new(&ctx, 1);
        assert!(alg.presymp(&p("u_xx", &ctx)).unwrap().is_zero());
        assert_eq!(alg.presymp(&p("u_x", &ctx)).unwrap(), op("2*Dx", &ctx));
        let phi = p("-3*t*(4*u_x^3 + u_xxx) - x*u_x", &ctx);
        assert!(alg.presymp(&alg.dx(&phi).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn concomitant_examples() {
        let ctx = setup();
        let alg = OpAlgebra::new(&ctx, 1);
        let psi = p("u_x^2 + t", &ctx);
        let phi = p("x*u_xx", &ctx);
        assert_eq!(
            alg.concomitant(&op("Dx", &ctx), &psi, &phi).unwrap(),
            &psi * &phi
        );
        let expected = &(&psi * &alg.dx(&phi).unwrap()) - &(&alg.dx(&psi).unwrap() * &phi);
        assert_eq!(
            alg.concomitant(&op("Dx^2", &ctx), &psi, &phi).unwrap(),
            expected
        );
        let mult = CDiffOp::mult(p("u*x", &ctx));
        assert!(alg.concomitant(&mult, &psi, &phi).unwrap().is_zero());
    }

    #[test]
    fn sign_fault_breaks_adjoint() {
        let ctx = setup();
        let alg = OpAlgebra::new(&ctx, 1).with_fault(Some(Fault::AdjointSignFlip));
        assert_eq!(alg.adjoint(&op("Dx", &ctx)).unwrap(), op("Dx", &ctx));
    }
}

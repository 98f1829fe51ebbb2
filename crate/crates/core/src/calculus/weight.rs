use crate::jetcore::{DiffPoly, JetContext, Monomial, Var};

/// A grading of the polynomial algebra by integer weights.
///
/// Independent variables carry explicit weights; a jet coordinate `u_α`
/// weighs `base − Σ_v α_v · weight(v)`, so each total derivative `D_v`
/// shifts weight by `−weight(v)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightSpec {
    pub indep: Vec<i64>,
    pub base: i64,
}

impl WeightSpec {
    pub fn new(indep: Vec<i64>, base: i64) -> Self {
        WeightSpec { indep, base }
    }

    /// The grading of the scaling symmetry `3t∂_t + x∂_x − Σ j u_j ∂_{u_j}`:
    /// `t ↦ −3`, `x ↦ −1`, `u_j ↦ j`. Any further spatial variables weigh −1.
    pub fn pmkdv(ctx: &JetContext) -> Self {
        let indep = (0..ctx.n_indep())
            .map(|i| if i == 0 { -3 } else { -1 })
            .collect();
        WeightSpec { indep, base: 0 }
    }

    pub fn var_weight(&self, v: &Var) -> i64 {
        match v {
            Var::Indep(i) => self.indep[*i],
            Var::Jet(a) => {
                self.base
                    - a.counts()
                        .iter()
                        .zip(&self.indep)
                        .map(|(&c, &w)| c as i64 * w)
                        .sum::<i64>()
            }
        }
    }

    pub fn monomial_weight(&self, m: &Monomial) -> i64 {
        m.factors()
            .iter()
            .map(|(v, e)| self.var_weight(v) * *e as i64)
            .sum()
    }

    /// The common weight of all monomials, or `None` if `f` is not
    /// homogeneous. The zero polynomial has no weight.
    pub fn weight_of(&self, f: &DiffPoly) -> Option<i64> {
        let mut weights = f.terms().map(|(m, _)| self.monomial_weight(m));
        let w = weights.next()?;
        weights.all(|x| x == w).then_some(w)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jetcore::parse_expr;

    #[test]
    fn pmkdv_weights() {
        let ctx = JetContext::tx();
        let w = WeightSpec::pmkdv(&ctx);
        let p = |s| parse_expr(s, &ctx).unwrap();
        assert_eq!(w.weight_of(&p("4*u_x^3 + u_xxx")), Some(3));
        assert_eq!(w.weight_of(&p("u_x^4 + u_x*u_xxx/2 + u_xx^2/2")), Some(4));
        assert_eq!(w.weight_of(&p("u_x + u_xx")), None);
        assert_eq!(w.weight_of(&p("u_t")), Some(3));
        assert_eq!(w.weight_of(&p("u")), Some(0));
        assert_eq!(w.weight_of(&p("-3*t*(4*u_x^3 + u_xxx) - x*u_x")), Some(0));
        assert_eq!(w.weight_of(&DiffPoly::zero()), None);
    }
}

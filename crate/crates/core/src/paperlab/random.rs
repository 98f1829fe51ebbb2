use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::jetcore::{DiffPoly, JetContext, Monomial, MultiIndex, Var, VarId, Q};
use crate::operators::CDiffOp;

/// Seeded source of small random differential polynomials and operators.
pub struct PolyGen {
    rng: ChaCha8Rng,
}

/// Shape of generated polynomials.
#[derive(Clone, Copy, Debug)]
pub struct Shape {
    pub max_order: u32,
    pub max_terms: usize,
    pub max_jet_degree: u32,
    pub max_indep_degree: u32,
}

impl Shape {
    pub fn new(max_order: u32) -> Self {
        Shape {
            max_order,
            max_terms: 4,
            max_jet_degree: 3,
            max_indep_degree: 1,
        }
    }

    pub fn terms(mut self, n: usize) -> Self {
        self.max_terms = n;
        self
    }

    pub fn jet_degree(mut self, d: u32) -> Self {
        self.max_jet_degree = d;
        self
    }

    pub fn indep_degree(mut self, d: u32) -> Self {
        self.max_indep_degree = d;
        self
    }
}

impl PolyGen {
    pub fn new(seed: u64) -> Self {
        PolyGen {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn range(&mut self, lo: u32, hi: u32) -> u32 {
        self.rng.gen_range(lo..=hi)
    }

    /// Nonzero rational with small numerator and denominator.
    pub fn rational(&mut self) -> Q {
        let mut n: i64 = self.rng.gen_range(-6..=6);
        if n == 0 {
            n = 1;
        }
        let d: i64 = self.rng.gen_range(1..=3);
        Q::new(BigInt::from(n), BigInt::from(d))
    }

    /// Random polynomial in the given independent variables and the jets
    /// `u_{x^i}`, `i ≤ max_order`, along `x`.
    pub fn along(&mut self, ctx: &JetContext, indep: &[VarId], x: VarId, shape: Shape) -> DiffPoly {
        let jets: Vec<Var> = (0..=shape.max_order).map(|i| ctx.jet_along(x, i)).collect();
        self.build(indep, shape, |g| jets[g.rng.gen_range(0..jets.len())])
    }

    /// Random off-shell polynomial over all jets with `|α| ≤ max_order`.
    pub fn free(&mut self, ctx: &JetContext, shape: Shape) -> DiffPoly {
        let n = ctx.n_indep();
        let indep: Vec<VarId> = (0..n).collect();
        self.build(&indep, shape, |g| {
            let order = g.rng.gen_range(0..=shape.max_order);
            let mut counts = vec![0u32; n];
            for _ in 0..order {
                counts[g.rng.gen_range(0..n)] += 1;
            }
            Var::Jet(MultiIndex::from_counts(&counts).expect("generated index is valid"))
        })
    }

    /// Random operator `Σ_{i ≤ max_power} a_i D̄_x^i`.
    pub fn operator(
        &mut self,
        ctx: &JetContext,
        indep: &[VarId],
        x: VarId,
        max_power: u32,
        shape: Shape,
    ) -> CDiffOp {
        let mut op = CDiffOp::zero();
        for i in 0..=max_power {
            if self.rng.gen_bool(0.7) {
                op.add_term(i, self.along(ctx, indep, x, shape.terms(2)));
            }
        }
        op
    }

    fn build(
        &mut self,
        indep: &[VarId],
        shape: Shape,
        mut jet: impl FnMut(&mut Self) -> Var,
    ) -> DiffPoly {
        let terms = self.rng.gen_range(1..=shape.max_terms);
        let mut out = DiffPoly::zero();
        for _ in 0..terms {
            let mut m = Monomial::one();
            for &v in indep {
                let e = self.rng.gen_range(0..=shape.max_indep_degree);
                m = m.mul(&Monomial::pow(Var::Indep(v), e));
            }
            let degree = self.rng.gen_range(0..=shape.max_jet_degree);
            for _ in 0..degree {
                let v = jet(self);
                m = m.times_var(v);
            }
            let c = self.rational();
            out.add_term(m, c);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_generation_is_reproducible() {
        let ctx = JetContext::tx();
        let a = PolyGen::new(7).along(&ctx, &[0, 1], 1, Shape::new(4));
        let b = PolyGen::new(7).along(&ctx, &[0, 1], 1, Shape::new(4));
        assert_eq!(a, b);
        let f = PolyGen::new(3).free(&JetContext::txy(), Shape::new(3));
        assert!(f.jets().iter().all(|j| j.order() <= 3));
    }
}

use serde::Serialize;

use crate::calculus::{EvolutionSystem, WeightSpec};
use crate::error::Result;
use crate::jetcore::{DiffPoly, JetContext, Monomial, Var, VarId, Q};

/// Restriction of an ansatz to one weight under a grading.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Grading {
    #[serde(skip)]
    pub weights: WeightSpec,
    pub weight: i64,
}

/// Bounds of a polynomial ansatz in `t`, `x` and `u, u_x, …, u_{x^k}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AnsatzSpec {
    pub max_jet_order: u32,
    pub max_jet_degree: u32,
    pub max_t_degree: u32,
    pub max_x_degree: u32,
    pub grading: Option<Grading>,
}

impl AnsatzSpec {
    pub fn new(max_jet_order: u32, max_jet_degree: u32) -> Self {
        AnsatzSpec {
            max_jet_order,
            max_jet_degree,
            max_t_degree: 0,
            max_x_degree: 0,
            grading: None,
        }
    }

    pub fn t_degree(mut self, d: u32) -> Self {
        self.max_t_degree = d;
        self
    }

    pub fn x_degree(mut self, d: u32) -> Self {
        self.max_x_degree = d;
        self
    }

    pub fn graded(mut self, weights: WeightSpec, weight: i64) -> Self {
        self.grading = Some(Grading { weights, weight });
        self
    }
}

/// The monomials spanning an ansatz; unknown `j` is the coefficient of
/// `monomials[j]`. Monomials are listed in descending monomial order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ansatz {
    monomials: Vec<Monomial>,
}

impl Ansatz {
    /// Enumerate `t^a x^b Π u_i^{e_i}` within the bounds, over the time
    /// variable `t` (if any) and the spatial variable `x` of `ctx`.
    pub fn generate(spec: &AnsatzSpec, ctx: &JetContext, t: Option<VarId>, x: VarId) -> Ansatz {
        let jets: Vec<Var> = (0..=spec.max_jet_order)
            .map(|i| ctx.jet_along(x, i))
            .collect();
        let mut jet_parts = Vec::new();
        let mut exps = vec![0u32; jets.len()];
        enumerate_exponents(&mut exps, 0, spec.max_jet_degree, &mut |e| {
            jet_parts.push(Monomial::from_factors(
                jets.iter().copied().zip(e.iter().copied()),
            ));
        });
        let t_max = if t.is_some() { spec.max_t_degree } else { 0 };
        let mut monomials = Vec::new();
        for a in 0..=t_max {
            for b in 0..=spec.max_x_degree {
                let mut base = Monomial::pow(Var::Indep(x), b);
                if let Some(t) = t {
                    base = base.mul(&Monomial::pow(Var::Indep(t), a));
                }
                for j in &jet_parts {
                    let m = base.mul(j);
                    if let Some(g) = &spec.grading {
                        if g.weights.monomial_weight(&m) != g.weight {
                            continue;
                        }
                    }
                    monomials.push(m);
                }
            }
        }
        monomials.sort_by(|a, b| b.cmp(a));
        monomials.dedup();
        Ansatz { monomials }
    }

    /// Ansatz for functions on the equation manifold of a one-dimensional
    /// system.
    pub fn for_system(spec: &AnsatzSpec, sys: &EvolutionSystem) -> Result<Ansatz> {
        Ok(Self::generate(
            spec,
            sys.ctx(),
            Some(sys.time()),
            sys.spatial_x()?,
        ))
    }

    pub fn from_monomials(mut monomials: Vec<Monomial>) -> Ansatz {
        monomials.sort_by(|a, b| b.cmp(a));
        monomials.dedup();
        Ansatz { monomials }
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    /// `Σ_j c_j m_j` for a sparse coefficient vector.
    pub fn instantiate(&self, coeffs: &[(usize, Q)]) -> DiffPoly {
        coeffs
            .iter()
            .map(|(j, c)| (self.monomials[*j].clone(), c.clone()))
            .collect()
    }

    /// Polynomial with every unknown set to 1, for display.
    pub fn generic(&self) -> DiffPoly {
        self.monomials
            .iter()
            .map(|m| (m.clone(), crate::jetcore::q(1)))
            .collect()
    }
}

fn enumerate_exponents(exps: &mut Vec<u32>, pos: usize, budget: u32, emit: &mut dyn FnMut(&[u32])) {
    if pos == exps.len() {
        emit(exps);
        return;
    }
    for e in 0..=budget {
        exps[pos] = e;
        enumerate_exponents(exps, pos + 1, budget - e, emit);
    }
    exps[pos] = 0;
}

//! Bounded-ansatz exact solving.
//!
//! Every search is linear in the unknown coefficients of an ansatz: the
//! image of each ansatz monomial under the defining map is computed once,
//! the resulting identities are eliminated exactly, and each solution is
//! then instantiated and checked again by direct evaluation.

mod ansatz;
mod linalg;

use rayon::prelude::*;
use serde_json::{json, Value};

pub use ansatz::{Ansatz, AnsatzSpec, Grading};
pub use linalg::{
    linear_kernel, solve_identities, LinearIdentity, LinearSolution, SolveStats, SparseVec,
};

use crate::calculus::EvolutionSystem;
use crate::error::{JetError, Result};
use crate::jetcore::{DiffPoly, JetContext};
use crate::operators::{CDiffOp, OpAlgebra};

/// Basis of a solution space inside an ansatz.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelBasis {
    pub basis: Vec<DiffPoly>,
    pub stats: SolveStats,
}

impl KernelBasis {
    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    /// Whether `f` is a rational combination of the basis.
    pub fn contains(&self, f: &DiffPoly) -> bool {
        span_contains(&self.basis, f)
    }

    pub fn to_json(&self, ctx: &JetContext) -> Value {
        json!({
            "basis": self.basis.iter().map(|b| b.to_text(ctx)).collect::<Vec<_>>(),
            "stats": self.stats,
        })
    }
}

/// Solutions of an inhomogeneous search: `particular + span(kernel)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSolutions {
    pub particular: Option<DiffPoly>,
    pub kernel: KernelBasis,
}

impl AffineSolutions {
    pub fn is_empty(&self) -> bool {
        self.particular.is_none()
    }

    pub fn to_json(&self, ctx: &JetContext) -> Value {
        json!({
            "particular": self.particular.as_ref().map(|p| p.to_text(ctx)),
            "kernel": self.kernel.to_json(ctx),
        })
    }
}

/// A representation `density = D̄_t(g2) − D̄_x(g1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivergenceRepr {
    pub g1: DiffPoly,
    pub g2: DiffPoly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivergenceSearch {
    pub found: Option<DivergenceRepr>,
    pub stats: SolveStats,
}

impl DivergenceSearch {
    pub fn to_json(&self, ctx: &JetContext) -> Value {
        json!({
            "found": self.found.as_ref().map(|r| json!({"g1": r.g1.to_text(ctx), "g2": r.g2.to_text(ctx)})),
            "stats": self.stats,
        })
    }
}

/// Whether `f` lies in the rational span of `basis`.
pub fn span_contains(basis: &[DiffPoly], f: &DiffPoly) -> bool {
    let id = LinearIdentity {
        columns: basis.iter().cloned().enumerate().collect(),
        constant: -f,
    };
    solve_identities(basis.len(), &[id]).particular.is_some()
}

fn map_monomials<F>(ansatz: &Ansatz, f: F) -> Result<Vec<DiffPoly>>
where
    F: Fn(&DiffPoly) -> Result<DiffPoly> + Sync,
{
    ansatz
        .monomials()
        .par_iter()
        .map(|m| f(&DiffPoly::term(crate::jetcore::q(1), m.clone())))
        .collect()
}

fn columns(images: Vec<DiffPoly>, offset: usize) -> Vec<(usize, DiffPoly)> {
    images
        .into_iter()
        .enumerate()
        .map(|(j, p)| (j + offset, p))
        .collect()
}

/// `l_E*` images of every ansatz monomial.
fn cosym_images(alg: &OpAlgebra, sys: &EvolutionSystem, ansatz: &Ansatz) -> Result<Vec<DiffPoly>> {
    let adj = alg.adjoint(&alg.linearize(sys.rhs())?)?;
    map_monomials(ansatz, |m| Ok(-(sys.dbar_t(m)? + alg.apply(&adj, m)?)))
}

fn verify_cosym(alg: &OpAlgebra, sys: &EvolutionSystem, psi: &DiffPoly) -> Result<()> {
    if !alg.adjoint_linearization_apply(sys, psi)?.is_zero() {
        return Err(JetError::Verification(format!(
            "{} is not a cosymmetry",
            psi.to_text(sys.ctx())
        )));
    }
    Ok(())
}

fn instantiate_all(ansatz: &Ansatz, vectors: &[SparseVec]) -> Vec<DiffPoly> {
    vectors.iter().map(|v| ansatz.instantiate(v)).collect()
}

/// All cosymmetries `ψ` of `sys` in the ansatz: `l_E*(ψ) = 0`.
pub fn solve_cosymmetries(sys: &EvolutionSystem, spec: &AnsatzSpec) -> Result<KernelBasis> {
    let alg = OpAlgebra::for_system(sys)?;
    let ansatz = Ansatz::for_system(spec, sys)?;
    let images = cosym_images(&alg, sys, &ansatz)?;
    let sol = linear_kernel(
        ansatz.len(),
        &[LinearIdentity::homogeneous(columns(images, 0))],
    );
    let basis = instantiate_all(&ansatz, &sol.kernel);
    for psi in &basis {
        verify_cosym(&alg, sys, psi)?;
    }
    Ok(KernelBasis {
        basis,
        stats: sol.stats,
    })
}

/// Cosymmetries `ψ` in the ansatz with `l_ψ − l_ψ* = target`.
pub fn solve_presymp_potential(
    sys: &EvolutionSystem,
    target: &CDiffOp,
    spec: &AnsatzSpec,
) -> Result<AffineSolutions> {
    let alg = OpAlgebra::for_system(sys)?;
    let ansatz = Ansatz::for_system(spec, sys)?;
    let cosym = cosym_images(&alg, sys, &ansatz)?;
    let presymp: Vec<CDiffOp> = ansatz
        .monomials()
        .par_iter()
        .map(|m| alg.presymp(&DiffPoly::term(crate::jetcore::q(1), m.clone())))
        .collect::<Result<_>>()?;

    let mut identities = vec![LinearIdentity::homogeneous(columns(cosym, 0))];
    let top = presymp
        .iter()
        .filter_map(CDiffOp::order)
        .chain(target.order())
        .max();
    for i in 0..=top.unwrap_or(0) {
        let cols = presymp
            .iter()
            .enumerate()
            .map(|(j, op)| (j, op.coeff(i)))
            .filter(|(_, p)| !p.is_zero())
            .collect();
        identities.push(LinearIdentity {
            columns: cols,
            constant: -target.coeff(i),
        });
    }
    let sol = solve_identities(ansatz.len(), &identities);

    let kernel = instantiate_all(&ansatz, &sol.kernel);
    for psi in &kernel {
        verify_cosym(&alg, sys, psi)?;
        if !alg.presymp(psi)?.is_zero() {
            return Err(JetError::Verification(
                "kernel element has nonzero presymplectic operator".into(),
            ));
        }
    }
    let particular = sol.particular.as_ref().map(|v| ansatz.instantiate(v));
    if let Some(psi) = &particular {
        verify_cosym(&alg, sys, psi)?;
        if alg.presymp(psi)? != *target {
            return Err(JetError::Verification(
                "presymplectic operator differs from target".into(),
            ));
        }
    }
    Ok(AffineSolutions {
        particular,
        kernel: KernelBasis {
            basis: kernel,
            stats: sol.stats,
        },
    })
}

/// Search `g1`, `g2` in the given ansätze with
/// `density = D̄_t(g2) − D̄_x(g1)`.
///
/// Unknowns are the coefficients of `g1` followed by those of `g2`.
pub fn solve_divergence_repr(
    sys: &EvolutionSystem,
    density: &DiffPoly,
    spec_g1: &AnsatzSpec,
    spec_g2: &AnsatzSpec,
) -> Result<DivergenceSearch> {
    sys.check_onshell(density)?;
    let x = sys.spatial_x()?;
    let a1 = Ansatz::for_system(spec_g1, sys)?;
    let a2 = Ansatz::for_system(spec_g2, sys)?;
    let dx = map_monomials(&a1, |m| Ok(-sys.dbar(m, x)?))?;
    let dt = map_monomials(&a2, |m| sys.dbar_t(m))?;
    let mut cols = columns(dx, 0);
    cols.extend(columns(dt, a1.len()));
    let id = LinearIdentity {
        columns: cols,
        constant: -density,
    };
    let sol = solve_identities(a1.len() + a2.len(), &[id]);

    let found = match &sol.particular {
        None => None,
        Some(v) => {
            let (v1, v2): (SparseVec, SparseVec) =
                v.iter().cloned().partition(|(j, _)| *j < a1.len());
            let v2: SparseVec = v2.into_iter().map(|(j, c)| (j - a1.len(), c)).collect();
            let repr = DivergenceRepr {
                g1: a1.instantiate(&v1),
                g2: a2.instantiate(&v2),
            };
            let check = &sys.dbar_t(&repr.g2)? - &sys.dbar(&repr.g1, x)?;
            if check != *density {
                return Err(JetError::Verification(
                    "divergence representation does not close".into(),
                ));
            }
            Some(repr)
        }
    };
    Ok(DivergenceSearch {
        found,
        stats: sol.stats,
    })
}

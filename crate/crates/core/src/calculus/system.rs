use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::RwLock;

use super::{total_derivative, WeightSpec};
use crate::error::{JetError, Result};
use crate::jetcore::{parse_expr, DiffPoly, JetContext, MultiIndex, Var, VarId, DEFAULT_MAX_ORDER};

/// A scalar evolution equation `u_t = Φ` with optional constraints `u_v = 0`
/// for "killed" independent variables.
///
/// On-shell coordinates are the independent variables together with the
/// jets carrying no time derivative and no killed-variable derivative.
pub struct EvolutionSystem {
    name: String,
    ctx: JetContext,
    time: VarId,
    rhs: DiffPoly,
    killed: Vec<VarId>,
    weights: Option<WeightSpec>,
    /// Memo of `D̄_α(Φ)` keyed by on-shell α.
    flows: RwLock<HashMap<MultiIndex, DiffPoly>>,
}

impl Clone for EvolutionSystem {
    fn clone(&self) -> Self {
        EvolutionSystem {
            name: self.name.clone(),
            ctx: self.ctx.clone(),
            time: self.time,
            rhs: self.rhs.clone(),
            killed: self.killed.clone(),
            weights: self.weights.clone(),
            flows: RwLock::new(HashMap::new()),
        }
    }
}

impl std::fmt::Debug for EvolutionSystem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("EvolutionSystem")
            .field("name", &self.name)
            .field("indep", &self.ctx.indep_names())
            .field("rhs", &self.rhs.to_text(&self.ctx))
            .field("killed", &self.killed)
            .finish()
    }
}

impl EvolutionSystem {
    pub fn new(ctx: JetContext, time: VarId, rhs: DiffPoly, killed: Vec<VarId>) -> Result<Self> {
        if time >= ctx.n_indep() {
            return Err(JetError::Context("time variable out of range".into()));
        }
        if killed.contains(&time) {
            return Err(JetError::Context(
                "the time variable cannot be killed".into(),
            ));
        }
        if let Some(&k) = killed.iter().find(|&&k| k >= ctx.n_indep()) {
            return Err(JetError::Context(format!(
                "killed variable {k} out of range"
            )));
        }
        if ctx.n_indep() - 1 == killed.len() {
            return Err(JetError::Context(
                "at least one spatial variable must remain".into(),
            ));
        }
        let mut killed = killed;
        killed.sort_unstable();
        killed.dedup();
        let sys = EvolutionSystem {
            name: String::new(),
            ctx,
            time,
            rhs,
            killed,
            weights: None,
            flows: RwLock::new(HashMap::new()),
        };
        for a in sys.rhs.jets() {
            if !sys.is_onshell_jet(&a) {
                return Err(JetError::Context(format!(
                    "right-hand side must not contain `{}`",
                    sys.ctx.var_name(&Var::Jet(a))
                )));
            }
        }
        Ok(sys)
    }

    pub fn with_name(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }

    pub fn with_weights(mut self, w: WeightSpec) -> Result<Self> {
        if w.indep.len() != self.ctx.n_indep() {
            return Err(JetError::Context(
                "weight count does not match variables".into(),
            ));
        }
        self.weights = Some(w);
        Ok(self)
    }

    pub fn with_max_order(self, cap: u32) -> Result<Self> {
        let ctx = self.ctx.clone().with_max_order(cap)?;
        let mut sys = EvolutionSystem::new(ctx, self.time, self.rhs.clone(), self.killed.clone())?;
        sys.name = self.name.clone();
        sys.weights = self.weights.clone();
        Ok(sys)
    }

    /// Potential mKdV `u_t = 4u_x³ + u_xxx` over `(t, x)`.
    pub fn pmkdv() -> Self {
        let ctx = JetContext::tx();
        let rhs = parse_expr("4*u_x^3 + u_xxx", &ctx).unwrap();
        let w = WeightSpec::pmkdv(&ctx);
        Self::new(ctx, 0, rhs, vec![])
            .unwrap()
            .with_name("pmkdv")
            .with_weights(w)
            .unwrap()
    }

    /// Potential mKdV over `(t, x, y)` with the constraint `u_y = 0`.
    pub fn pmkdv_y() -> Self {
        let ctx = JetContext::txy();
        let rhs = parse_expr("4*u_x^3 + u_xxx", &ctx).unwrap();
        let w = WeightSpec::pmkdv(&ctx);
        Self::new(ctx, 0, rhs, vec![2])
            .unwrap()
            .with_name("pmkdv-y")
            .with_weights(w)
            .unwrap()
    }

    /// `u_t = 4u_x³ + u_xxx + u_yyy` over `(t, x, y)`.
    pub fn pmkdv_3d() -> Self {
        let ctx = JetContext::txy();
        let rhs = parse_expr("4*u_x^3 + u_xxx + u_yyy", &ctx).unwrap();
        let w = WeightSpec::pmkdv(&ctx);
        Self::new(ctx, 0, rhs, vec![])
            .unwrap()
            .with_name("pmkdv-3d")
            .with_weights(w)
            .unwrap()
    }

    /// One of the built-in systems: `pmkdv`, `pmkdv-y`, `pmkdv-3d`.
    pub fn named(name: &str) -> Option<Self> {
        match name {
            "pmkdv" => Some(Self::pmkdv()),
            "pmkdv-y" => Some(Self::pmkdv_y()),
            "pmkdv-3d" => Some(Self::pmkdv_3d()),
            _ => None,
        }
    }

    /// Parse the line-oriented system description:
    ///
    /// ```text
    /// # comment
    /// name: pmkdv
    /// indep: t, x
    /// time: t
    /// dep: u
    /// rhs: 4*u_x^3 + u_xxx
    /// killed: y
    /// weights: t=-3, x=-1, u=0
    /// max_order: 16
    /// ```
    ///
    /// `indep` and `rhs` are required; `time` defaults to the first
    /// independent variable and `dep` to `u`.
    pub fn parse_file(text: &str) -> Result<Self> {
        let mut fields: HashMap<&str, (usize, &str)> = HashMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once(':').ok_or_else(|| {
                JetError::Context(format!("line {}: expected `key: value`", lineno + 1))
            })?;
            let key = key.trim();
            if !matches!(
                key,
                "name" | "indep" | "time" | "dep" | "rhs" | "killed" | "weights" | "max_order"
            ) {
                return Err(JetError::Context(format!(
                    "line {}: unknown key `{key}`",
                    lineno + 1
                )));
            }
            if fields.insert(key, (lineno + 1, value.trim())).is_some() {
                return Err(JetError::Context(format!(
                    "line {}: duplicate key `{key}`",
                    lineno + 1
                )));
            }
        }
        let list = |s: &str| -> Vec<String> {
            s.split(',')
                .map(|p| p.trim().to_string())
                .filter(|p| !p.is_empty())
                .collect()
        };
        let indep = list(
            fields
                .get("indep")
                .ok_or_else(|| JetError::Context("missing `indep`".into()))?
                .1,
        );
        let dep = fields.get("dep").map_or("u", |f| f.1);
        let max_order = match fields.get("max_order") {
            Some((line, v)) => v
                .parse()
                .map_err(|_| JetError::Context(format!("line {line}: bad max_order `{v}`")))?,
            None => DEFAULT_MAX_ORDER,
        };
        let ctx = JetContext::new(&indep, dep, max_order)?;
        let time = match fields.get("time") {
            Some((_, v)) => ctx.require_var(v)?,
            None => 0,
        };
        let killed = match fields.get("killed") {
            Some((_, v)) => list(v)
                .iter()
                .map(|n| ctx.require_var(n))
                .collect::<Result<Vec<_>>>()?,
            None => vec![],
        };
        let rhs_text = fields
            .get("rhs")
            .ok_or_else(|| JetError::Context("missing `rhs`".into()))?
            .1;
        let rhs = parse_expr(rhs_text, &ctx)?;
        let mut sys = EvolutionSystem::new(ctx, time, rhs, killed)?;
        if let Some((_, name)) = fields.get("name") {
            sys.name = name.to_string();
        }
        if let Some((line, v)) = fields.get("weights") {
            let mut indep_w = vec![None; sys.ctx.n_indep()];
            let mut base = 0;
            for item in list(v) {
                let (n, w) = item.split_once('=').ok_or_else(|| {
                    JetError::Context(format!("line {line}: bad weight `{item}`"))
                })?;
                let w: i64 = w
                    .trim()
                    .parse()
                    .map_err(|_| JetError::Context(format!("line {line}: bad weight `{item}`")))?;
                let n = n.trim();
                if n == sys.ctx.dep_name() {
                    base = w;
                } else {
                    indep_w[sys.ctx.require_var(n)?] = Some(w);
                }
            }
            let indep_w = indep_w
                .into_iter()
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| {
                    JetError::Context(format!("line {line}: every variable needs a weight"))
                })?;
            sys = sys.with_weights(WeightSpec::new(indep_w, base))?;
        }
        Ok(sys)
    }

    /// Render in the format accepted by [`EvolutionSystem::parse_file`].
    pub fn to_file_string(&self) -> String {
        let mut s = String::new();
        if !self.name.is_empty() {
            writeln!(s, "name: {}", self.name).unwrap();
        }
        writeln!(s, "indep: {}", self.ctx.indep_names().join(", ")).unwrap();
        writeln!(s, "time: {}", self.ctx.indep_name(self.time)).unwrap();
        writeln!(s, "dep: {}", self.ctx.dep_name()).unwrap();
        writeln!(s, "rhs: {}", self.rhs.to_text(&self.ctx)).unwrap();
        if !self.killed.is_empty() {
            let names: Vec<&str> = self
                .killed
                .iter()
                .map(|&k| self.ctx.indep_name(k))
                .collect();
            writeln!(s, "killed: {}", names.join(", ")).unwrap();
        }
        if let Some(w) = &self.weights {
            let mut parts: Vec<String> = self
                .ctx
                .indep_names()
                .iter()
                .zip(&w.indep)
                .map(|(n, w)| format!("{n}={w}"))
                .collect();
            parts.push(format!("{}={}", self.ctx.dep_name(), w.base));
            writeln!(s, "weights: {}", parts.join(", ")).unwrap();
        }
        writeln!(s, "max_order: {}", self.ctx.max_order()).unwrap();
        s
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn ctx(&self) -> &JetContext {
        &self.ctx
    }

    pub fn time(&self) -> VarId {
        self.time
    }

    /// Φ
    pub fn rhs(&self) -> &DiffPoly {
        &self.rhs
    }

    /// `u_t − Φ`
    pub fn equation(&self) -> DiffPoly {
        &DiffPoly::jet(MultiIndex::along(self.ctx.n_indep(), self.time, 1)) - &self.rhs
    }

    pub fn killed(&self) -> &[VarId] {
        &self.killed
    }

    pub fn weights(&self) -> Option<&WeightSpec> {
        self.weights.as_ref()
    }

    /// Spatial variables that are not killed.
    pub fn spatial_vars(&self) -> Vec<VarId> {
        (0..self.ctx.n_indep())
            .filter(|v| *v != self.time && !self.killed.contains(v))
            .collect()
    }

    /// The unique active spatial variable, for one-dimensional operations.
    pub fn spatial_x(&self) -> Result<VarId> {
        match self.spatial_vars().as_slice() {
            [x] => Ok(*x),
            _ => Err(JetError::Unsupported(
                "operation needs exactly one active spatial variable".into(),
            )),
        }
    }

    pub fn is_onshell_jet(&self, a: &MultiIndex) -> bool {
        a.get(self.time) == 0 && self.killed.iter().all(|&k| a.get(k) == 0)
    }

    pub fn is_onshell(&self, f: &DiffPoly) -> bool {
        f.jets().iter().all(|a| self.is_onshell_jet(a))
    }

    pub fn check_onshell(&self, f: &DiffPoly) -> Result<()> {
        match f.jets().into_iter().find(|a| !self.is_onshell_jet(a)) {
            Some(a) => Err(JetError::NotOnShell(self.ctx.var_name(&Var::Jet(a)))),
            None => Ok(()),
        }
    }

    /// `D̄_α(Φ)` for an on-shell multi-index α; equals `u_{α+t}` on-shell.
    pub fn flow(&self, alpha: &MultiIndex) -> Result<DiffPoly> {
        debug_assert!(self.is_onshell_jet(alpha));
        if let Some(p) = self.flows.read().unwrap().get(alpha) {
            return Ok(p.clone());
        }
        let value = match (0..self.ctx.n_indep()).rev().find(|&v| alpha.get(v) > 0) {
            None => self.rhs.clone(),
            Some(v) => {
                let parent = alpha.with(v, alpha.get(v) - 1);
                total_derivative(&self.flow(&parent)?, v, &self.ctx)?
            }
        };
        self.flows.write().unwrap().insert(*alpha, value.clone());
        Ok(value)
    }

    /// `D̄_t f = ∂_t f + Σ_α D̄_α(Φ) ∂f/∂u_α` for on-shell `f`.
    pub fn dbar_t(&self, f: &DiffPoly) -> Result<DiffPoly> {
        self.check_onshell(f)?;
        let mut out = f.diff(&Var::Indep(self.time));
        for a in f.jets() {
            let partial = f.diff(&Var::Jet(a));
            out += &self.flow(&a)? * &partial;
        }
        Ok(out)
    }

    /// Total derivative restricted to the equation, for on-shell `f`.
    pub fn dbar(&self, f: &DiffPoly, v: VarId) -> Result<DiffPoly> {
        if v == self.time {
            return self.dbar_t(f);
        }
        self.check_onshell(f)?;
        if self.killed.contains(&v) {
            // Jets differentiated along a killed variable vanish.
            Ok(f.diff(&Var::Indep(v)))
        } else {
            total_derivative(f, v, &self.ctx)
        }
    }

    pub fn dbar_x_pow(&self, f: &DiffPoly, v: VarId, n: u32) -> Result<DiffPoly> {
        let mut g = f.clone();
        for _ in 0..n {
            g = self.dbar(&g, v)?;
        }
        Ok(g)
    }

    /// Restrict to the equation: replace every jet with a time derivative by
    /// its on-shell expression and every killed-variable jet by zero.
    pub fn reduce_onshell(&self, f: &DiffPoly) -> Result<DiffPoly> {
        f.substitute(|v| match v {
            Var::Jet(a) if self.killed.iter().any(|&k| a.get(k) > 0) => Ok(Some(DiffPoly::zero())),
            Var::Jet(a) if a.get(self.time) > 0 => {
                let c = a.get(self.time);
                let base = a.with(self.time, 0);
                // u_{β + c·t} = D̄_t^{c−1}(D̄_β Φ)
                let mut g = self.flow(&base)?;
                for _ in 1..c {
                    g = self.dbar_t(&g)?;
                }
                Ok(Some(g))
            }
            _ => Ok(None),
        })
    }
}

use std::cmp::Ordering;
use std::fmt;

use crate::error::{JetError, Result};

/// Maximum number of independent variables a context may declare.
pub const MAX_INDEP: usize = 3;

/// Default cap on the order |α| of jet coordinates.
pub const DEFAULT_MAX_ORDER: u32 = 16;

/// Index of an independent variable in its [`JetContext`].
pub type VarId = usize;

/// A derivative multi-index α over the declared independent variables.
///
/// Ordered by total order |α| first; ties are broken reverse-lexicographically
/// (the count of the last declared variable is compared first, larger count
/// sorting earlier).
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct MultiIndex {
    counts: [u16; MAX_INDEP],
    len: u8,
}

impl MultiIndex {
    pub fn zero(len: usize) -> Self {
        assert!((1..=MAX_INDEP).contains(&len), "multi-index length {len}");
        MultiIndex {
            counts: [0; MAX_INDEP],
            len: len as u8,
        }
    }

    /// The multi-index `n · e_var`.
    pub fn along(len: usize, var: VarId, n: u32) -> Self {
        let mut a = Self::zero(len);
        a.counts[var] = n as u16;
        a
    }

    pub fn from_counts(counts: &[u32]) -> Result<Self> {
        if counts.is_empty() || counts.len() > MAX_INDEP {
            return Err(JetError::Context(format!(
                "multi-index needs 1..={MAX_INDEP} entries, got {}",
                counts.len()
            )));
        }
        let mut a = Self::zero(counts.len());
        for (slot, &c) in a.counts.iter_mut().zip(counts) {
            *slot = u16::try_from(c)
                .map_err(|_| JetError::Context(format!("derivative count {c} too large")))?;
        }
        Ok(a)
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.order() == 0
    }

    pub fn counts(&self) -> &[u16] {
        &self.counts[..self.len as usize]
    }

    pub fn get(&self, var: VarId) -> u32 {
        self.counts[var] as u32
    }

    /// |α|
    pub fn order(&self) -> u32 {
        self.counts().iter().map(|&c| c as u32).sum()
    }

    /// α + e_var
    pub fn bump(&self, var: VarId) -> Self {
        let mut a = *self;
        a.counts[var] += 1;
        a
    }

    pub fn with(&self, var: VarId, n: u32) -> Self {
        let mut a = *self;
        a.counts[var] = n as u16;
        a
    }

    /// α + β, componentwise.
    pub fn add(&self, other: &MultiIndex) -> Self {
        debug_assert_eq!(self.len, other.len);
        let mut a = *self;
        for (x, y) in a.counts.iter_mut().zip(other.counts) {
            *x += y;
        }
        a
    }

    /// True when every derivative is taken along `var`.
    pub fn is_pure(&self, var: VarId) -> bool {
        self.order() == self.get(var)
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order()
            .cmp(&other.order())
            .then_with(|| {
                for i in (0..MAX_INDEP).rev() {
                    match other.counts[i].cmp(&self.counts[i]) {
                        Ordering::Equal => continue,
                        ord => return ord,
                    }
                }
                Ordering::Equal
            })
            .then(self.len.cmp(&other.len))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.counts())
    }
}

/// A polynomial variable: a jet coordinate `u_α` or an independent variable.
///
/// Jet coordinates sort before independent variables; in a monomial the
/// smaller variable is the more significant one.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Var {
    Jet(MultiIndex),
    Indep(VarId),
}

impl Var {
    pub fn jet(&self) -> Option<&MultiIndex> {
        match self {
            Var::Jet(a) => Some(a),
            Var::Indep(_) => None,
        }
    }
}

/// Adapted coordinates on the jet space: independent variables, a single
/// dependent variable, and a cap on the derivative order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JetContext {
    indep: Vec<String>,
    dep: String,
    max_order: u32,
}

impl JetContext {
    pub fn new<S: AsRef<str>>(indep: &[S], dep: &str, max_order: u32) -> Result<Self> {
        let indep: Vec<String> = indep.iter().map(|s| s.as_ref().to_string()).collect();
        if indep.is_empty() || indep.len() > MAX_INDEP {
            return Err(JetError::Context(format!(
                "between 1 and {MAX_INDEP} independent variables are supported"
            )));
        }
        if max_order < 1 {
            return Err(JetError::Context("max_order must be at least 1".into()));
        }
        let mut names: Vec<&str> = indep.iter().map(String::as_str).collect();
        names.push(dep);
        for (i, n) in names.iter().enumerate() {
            if !is_identifier(n) || *n == "Dx" {
                return Err(JetError::Context(format!("invalid variable name `{n}`")));
            }
            if names[..i].contains(n) {
                return Err(JetError::Context(format!("duplicate variable name `{n}`")));
            }
        }
        Ok(JetContext {
            indep,
            dep: dep.to_string(),
            max_order,
        })
    }

    /// Context over `(t, x)` with dependent variable `u`.
    pub fn tx() -> Self {
        Self::new(&["t", "x"], "u", DEFAULT_MAX_ORDER).unwrap()
    }

    /// Context over `(t, x, y)` with dependent variable `u`.
    pub fn txy() -> Self {
        Self::new(&["t", "x", "y"], "u", DEFAULT_MAX_ORDER).unwrap()
    }

    pub fn with_max_order(mut self, max_order: u32) -> Result<Self> {
        if max_order < 1 {
            return Err(JetError::Context("max_order must be at least 1".into()));
        }
        self.max_order = max_order;
        Ok(self)
    }

    pub fn n_indep(&self) -> usize {
        self.indep.len()
    }

    pub fn indep_names(&self) -> &[String] {
        &self.indep
    }

    pub fn indep_name(&self, v: VarId) -> &str {
        &self.indep[v]
    }

    pub fn dep_name(&self) -> &str {
        &self.dep
    }

    pub fn max_order(&self) -> u32 {
        self.max_order
    }

    pub fn var_id(&self, name: &str) -> Option<VarId> {
        self.indep.iter().position(|n| n == name)
    }

    pub fn require_var(&self, name: &str) -> Result<VarId> {
        self.var_id(name).ok_or_else(|| JetError::UnknownVariable {
            name: name.to_string(),
            pos: 0,
        })
    }

    pub fn zero_index(&self) -> MultiIndex {
        MultiIndex::zero(self.n_indep())
    }

    /// The jet coordinate `u_α` with α = n·e_var.
    pub fn jet_along(&self, var: VarId, n: u32) -> Var {
        Var::Jet(MultiIndex::along(self.n_indep(), var, n))
    }

    pub fn check_order(&self, a: &MultiIndex) -> Result<()> {
        let order = a.order();
        if order > self.max_order {
            Err(JetError::OrderCap {
                order,
                cap: self.max_order,
            })
        } else {
            Ok(())
        }
    }

    /// Whether jet coordinates print in suffix form (`u_xxt`); requires
    /// single-letter independent variable names.
    pub(crate) fn suffix_form(&self) -> bool {
        self.indep.iter().all(|n| n.len() == 1)
    }

    pub fn var_name(&self, v: &Var) -> String {
        match v {
            Var::Indep(i) => self.indep[*i].clone(),
            Var::Jet(a) if a.order() == 0 => self.dep.clone(),
            Var::Jet(a) if self.suffix_form() => {
                let mut s = format!("{}_", self.dep);
                for (i, &c) in a.counts().iter().enumerate() {
                    for _ in 0..c {
                        s.push_str(&self.indep[i]);
                    }
                }
                s
            }
            Var::Jet(a) => {
                let parts: Vec<String> = a.counts().iter().map(|c| c.to_string()).collect();
                format!("{}[{}]", self.dep, parts.join(","))
            }
        }
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multi_index_order_and_sum() {
        let a = MultiIndex::from_counts(&[1, 2]).unwrap();
        let b = MultiIndex::from_counts(&[0, 3]).unwrap();
        assert_eq!(a.order(), 3);
        assert_eq!(a.add(&b).counts(), &[1, 5]);
        assert_eq!(a.bump(0).counts(), &[2, 2]);
    }

    #[test]
    fn jets_sort_by_total_order_first() {
        let ctx = JetContext::tx();
        let u = Var::Jet(ctx.zero_index());
        let ux = ctx.jet_along(1, 1);
        let ut = ctx.jet_along(0, 1);
        let uxx = ctx.jet_along(1, 2);
        let mut v = vec![Var::Indep(0), uxx, ux, u, ut];
        v.sort();
        assert_eq!(v, vec![u, ux, ut, uxx, Var::Indep(0)]);
    }

    #[test]
    fn rejects_bad_contexts() {
        assert!(JetContext::new(&["t", "t"], "u", 4).is_err());
        assert!(JetContext::new(&["t", "x"], "x", 4).is_err());
        assert!(JetContext::new::<&str>(&[], "u", 4).is_err());
        assert!(JetContext::new(&["t", "x"], "u", 0).is_err());
        assert!(JetContext::new(&["a", "b", "c", "d"], "u", 4).is_err());
    }

    #[test]
    fn jet_names() {
        let ctx = JetContext::tx();
        let a = MultiIndex::from_counts(&[1, 2]).unwrap();
        assert_eq!(ctx.var_name(&Var::Jet(a)), "u_txx");
        assert_eq!(ctx.var_name(&Var::Jet(ctx.zero_index())), "u");
        let long = JetContext::new(&["tau", "x"], "u", 4).unwrap();
        assert_eq!(long.var_name(&Var::Jet(a)), "u[1,2]");
    }
}

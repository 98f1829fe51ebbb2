//! Sparse differential polynomials with exact rational coefficients.

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

use super::context::{MultiIndex, Var, VarId};
use crate::error::{JetError, Result};

/// Exact rational coefficient.
pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// A power product of variables, stored as `(variable, exponent)` pairs
/// sorted by variable with positive exponents.
///
/// Monomials are compared graded-lexicographically: total degree first, then
/// exponents in variable order.
#[derive(Clone, PartialEq, Eq, Hash, Default, Debug)]
pub struct Monomial(SmallVec<[(Var, u32); 4]>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(SmallVec::new())
    }

    pub fn var(v: Var) -> Self {
        Self::pow(v, 1)
    }

    pub fn pow(v: Var, e: u32) -> Self {
        let mut m = SmallVec::new();
        if e > 0 {
            m.push((v, e));
        }
        Monomial(m)
    }

    /// Build from arbitrary pairs; merges repeated variables and drops zero exponents.
    pub fn from_factors<I: IntoIterator<Item = (Var, u32)>>(factors: I) -> Self {
        let mut map: BTreeMap<Var, u32> = BTreeMap::new();
        for (v, e) in factors {
            *map.entry(v).or_default() += e;
        }
        Monomial(map.into_iter().filter(|&(_, e)| e > 0).collect())
    }

    pub fn factors(&self) -> &[(Var, u32)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn exponent(&self, v: &Var) -> u32 {
        self.0
            .binary_search_by(|(w, _)| w.cmp(v))
            .map(|i| self.0[i].1)
            .unwrap_or(0)
    }

    /// Total degree in jet coordinates.
    pub fn jet_degree(&self) -> u32 {
        self.0
            .iter()
            .filter(|(v, _)| matches!(v, Var::Jet(_)))
            .map(|&(_, e)| e)
            .sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = SmallVec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// Multiply by a single variable.
    pub fn times_var(&self, v: Var) -> Monomial {
        self.mul(&Monomial::var(v))
    }

    /// Returns `(e, m / v)` where `e` is the exponent of `v`, if `v` divides `m`.
    pub fn divide_var(&self, v: &Var) -> Option<(u32, Monomial)> {
        let i = self.0.binary_search_by(|(w, _)| w.cmp(v)).ok()?;
        let e = self.0[i].1;
        let mut rest = self.0.clone();
        if e == 1 {
            rest.remove(i);
        } else {
            rest[i].1 -= 1;
        }
        Some((e, Monomial(rest)))
    }

    /// The monomial with `v` removed, and the exponent it had.
    pub fn split_var(&self, v: &Var) -> (u32, Monomial) {
        match self.0.binary_search_by(|(w, _)| w.cmp(v)) {
            Ok(i) => {
                let mut rest = self.0.clone();
                let (_, e) = rest.remove(i);
                (e, Monomial(rest))
            }
            Err(_) => (0, self.clone()),
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            for (a, b) in self.0.iter().zip(other.0.iter()) {
                match a.0.cmp(&b.0) {
                    // The monomial holding the more significant variable is larger.
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => match a.1.cmp(&b.1) {
                        Ordering::Equal => continue,
                        ord => return ord,
                    },
                }
            }
            self.0.len().cmp(&other.0.len())
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A differential polynomial: a finite sum of monomials in independent
/// variables and jet coordinates with nonzero rational coefficients.
///
/// The representation is canonical, so structural equality is mathematical
/// equality.
#[derive(Clone, PartialEq, Eq, Hash, Default, Debug)]
pub struct DiffPoly {
    terms: BTreeMap<Monomial, Q>,
}

impl DiffPoly {
    pub fn zero() -> Self {
        DiffPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn int(n: i64) -> Self {
        Self::constant(q(n))
    }

    pub fn term(c: Q, m: Monomial) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    pub fn var(v: Var) -> Self {
        Self::term(Q::one(), Monomial::var(v))
    }

    pub fn indep(v: VarId) -> Self {
        Self::var(Var::Indep(v))
    }

    pub fn jet(a: MultiIndex) -> Self {
        Self::var(Var::Jet(a))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Q)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Option<&Q> {
        self.terms.get(m)
    }

    /// The constant term, zero if absent.
    pub fn constant_term(&self) -> Q {
        self.terms
            .get(&Monomial::one())
            .cloned()
            .unwrap_or_else(Q::zero)
    }

    /// Returns `Some(c)` if the polynomial is the constant `c`.
    pub fn as_constant(&self) -> Option<Q> {
        match self.terms.len() {
            0 => Some(Q::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// All variables occurring, ascending, without repetition.
    pub fn vars(&self) -> Vec<Var> {
        let mut v: Vec<Var> = self
            .terms
            .keys()
            .flat_map(|m| m.factors().iter().map(|&(v, _)| v))
            .collect();
        v.sort();
        v.dedup();
        v
    }

    pub fn jets(&self) -> Vec<MultiIndex> {
        self.vars()
            .into_iter()
            .filter_map(|v| v.jet().copied())
            .collect()
    }

    pub fn depends_on(&self, v: &Var) -> bool {
        self.terms.keys().any(|m| m.exponent(v) > 0)
    }

    pub fn scale(&self, c: &Q) -> DiffPoly {
        if c.is_zero() {
            return DiffPoly::zero();
        }
        DiffPoly {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Q) -> DiffPoly {
        if c.is_zero() {
            return DiffPoly::zero();
        }
        // Multiplying by a fixed monomial is injective, so no terms collide.
        DiffPoly {
            terms: self.terms.iter().map(|(n, a)| (n.mul(m), a * c)).collect(),
        }
    }

    pub fn pow(&self, e: i64) -> Result<DiffPoly> {
        if e < 0 {
            return Err(JetError::NegativeExponent(e));
        }
        Ok(self.pow_u(e as u32))
    }

    pub fn pow_u(&self, mut e: u32) -> DiffPoly {
        let mut base = self.clone();
        let mut acc = DiffPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Partial derivative with respect to one variable.
    pub fn diff(&self, v: &Var) -> DiffPoly {
        let mut out = DiffPoly::zero();
        for (m, c) in &self.terms {
            if let Some((e, rest)) = m.divide_var(v) {
                out.add_term(rest, c * q(e as i64));
            }
        }
        out
    }

    /// Antiderivative with respect to one variable, integration constant zero.
    pub fn integrate(&self, v: &Var) -> DiffPoly {
        let mut out = DiffPoly::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            out.add_term(m.times_var(*v), c / q(e as i64 + 1));
        }
        out
    }

    /// Coefficient of `v^e`, i.e. the polynomial of terms with exactly that
    /// power of `v`, with `v` removed.
    pub fn coeff_of_power(&self, v: &Var, e: u32) -> DiffPoly {
        let mut out = DiffPoly::zero();
        for (m, c) in &self.terms {
            let (k, rest) = m.split_var(v);
            if k == e {
                out.add_term(rest, c.clone());
            }
        }
        out
    }

    pub fn degree_in(&self, v: &Var) -> u32 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    /// Substitute polynomials for variables. `subst` returns `None` to keep a
    /// variable unchanged.
    pub fn substitute<F>(&self, mut subst: F) -> Result<DiffPoly>
    where
        F: FnMut(&Var) -> Result<Option<DiffPoly>>,
    {
        let mut images: HashMap<Var, Option<DiffPoly>> = HashMap::new();
        let mut powers: HashMap<(Var, u32), DiffPoly> = HashMap::new();
        let mut out = DiffPoly::zero();
        for (m, c) in &self.terms {
            let mut kept = Monomial::one();
            let mut acc = DiffPoly::one();
            for &(v, e) in m.factors() {
                if let std::collections::hash_map::Entry::Vacant(e) = images.entry(v) {
                    let img = subst(&v)?;
                    e.insert(img);
                }
                match &images[&v] {
                    None => kept = kept.mul(&Monomial::pow(v, e)),
                    Some(img) => {
                        let p = powers.entry((v, e)).or_insert_with(|| img.pow_u(e));
                        acc = &acc * &*p;
                        if acc.is_zero() {
                            break;
                        }
                    }
                }
            }
            if !acc.is_zero() {
                out += acc.mul_monomial(&kept, c);
            }
        }
        Ok(out)
    }

    /// Keep only the terms satisfying a predicate.
    pub fn filter_terms<F: Fn(&Monomial) -> bool>(&self, keep: F) -> DiffPoly {
        DiffPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Largest absolute numerator or denominator, for diagnostics.
    pub fn height(&self) -> BigInt {
        self.terms
            .values()
            .flat_map(|c| [c.numer().abs(), c.denom().abs()])
            .max()
            .unwrap_or_else(BigInt::zero)
    }
}

impl FromIterator<(Monomial, Q)> for DiffPoly {
    fn from_iter<I: IntoIterator<Item = (Monomial, Q)>>(iter: I) -> Self {
        let mut p = DiffPoly::zero();
        for (m, c) in iter {
            p.add_term(m, c);
        }
        p
    }
}

impl AddAssign<&DiffPoly> for DiffPoly {
    fn add_assign(&mut self, rhs: &DiffPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl AddAssign<DiffPoly> for DiffPoly {
    fn add_assign(&mut self, rhs: DiffPoly) {
        if self.terms.len() < rhs.terms.len() {
            let lhs = std::mem::replace(self, rhs);
            *self += &lhs;
            return;
        }
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
    }
}

impl SubAssign<&DiffPoly> for DiffPoly {
    fn sub_assign(&mut self, rhs: &DiffPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c);
        }
    }
}

impl SubAssign<DiffPoly> for DiffPoly {
    fn sub_assign(&mut self, rhs: DiffPoly) {
        for (m, c) in rhs.terms {
            self.add_term(m, -c);
        }
    }
}

impl Add for &DiffPoly {
    type Output = DiffPoly;
    fn add(self, rhs: &DiffPoly) -> DiffPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for DiffPoly {
    type Output = DiffPoly;
    fn add(mut self, rhs: DiffPoly) -> DiffPoly {
        self += rhs;
        self
    }
}

impl Sub for &DiffPoly {
    type Output = DiffPoly;
    fn sub(self, rhs: &DiffPoly) -> DiffPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for DiffPoly {
    type Output = DiffPoly;
    fn sub(mut self, rhs: DiffPoly) -> DiffPoly {
        self -= rhs;
        self
    }
}

impl Neg for &DiffPoly {
    type Output = DiffPoly;
    fn neg(self) -> DiffPoly {
        DiffPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for DiffPoly {
    type Output = DiffPoly;
    fn neg(mut self) -> DiffPoly {
        for c in self.terms.values_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl Mul for &DiffPoly {
    type Output = DiffPoly;
    fn mul(self, rhs: &DiffPoly) -> DiffPoly {
        let (small, large) = if self.terms.len() <= rhs.terms.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut out = DiffPoly::zero();
        for (m, c) in &small.terms {
            out += large.mul_monomial(m, c);
        }
        out
    }
}

impl Mul for DiffPoly {
    type Output = DiffPoly;
    fn mul(self, rhs: DiffPoly) -> DiffPoly {
        &self * &rhs
    }
}

impl Mul<&Q> for &DiffPoly {
    type Output = DiffPoly;
    fn mul(self, rhs: &Q) -> DiffPoly {
        self.scale(rhs)
    }
}

impl From<Q> for DiffPoly {
    fn from(c: Q) -> Self {
        DiffPoly::constant(c)
    }
}

impl From<i64> for DiffPoly {
    fn from(n: i64) -> Self {
        DiffPoly::int(n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jetcore::JetContext;

    fn ux(ctx: &JetContext, n: u32) -> DiffPoly {
        DiffPoly::var(ctx.jet_along(1, n))
    }

    #[test]
    fn cancellation_leaves_no_zero_terms() {
        let ctx = JetContext::tx();
        let p = &ux(&ctx, 1) - &ux(&ctx, 1);
        assert!(p.is_zero());
        assert_eq!(p, DiffPoly::zero());
    }

    #[test]
    fn binomial_square() {
        let ctx = JetContext::tx();
        let a = ux(&ctx, 1);
        let b = ux(&ctx, 2);
        let lhs = (&a + &b).pow(2).unwrap();
        let rhs = &(&(&a * &a) + &(&(&a * &b) * &DiffPoly::int(2))) + &(&b * &b);
        assert_eq!(lhs, rhs);
        assert_eq!(a.pow(0).unwrap(), DiffPoly::one());
        assert_eq!(a.pow(-1), Err(JetError::NegativeExponent(-1)));
    }

    #[test]
    fn graded_order() {
        let ctx = JetContext::tx();
        let u1 = Monomial::var(ctx.jet_along(1, 1));
        let u2 = Monomial::var(ctx.jet_along(1, 2));
        let x = Monomial::var(Var::Indep(1));
        assert!(u1.mul(&u1) > u1.mul(&u2));
        assert!(u1.mul(&u2) > u2.mul(&u2));
        assert!(u1 > u2 && u2 > x);
        assert!(u2 > Monomial::one());
    }

    #[test]
    fn diff_and_integrate() {
        let ctx = JetContext::tx();
        let v = ctx.jet_along(1, 1);
        let p = ux(&ctx, 1).pow_u(3).scale(&q(4));
        assert_eq!(p.diff(&v), ux(&ctx, 1).pow_u(2).scale(&q(12)));
        assert_eq!(p.diff(&v).integrate(&v), p);
    }
}

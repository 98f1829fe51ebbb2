use std::collections::BTreeMap;

use num_traits::{One, Signed};

use crate::error::{JetError, Result};
use crate::jetcore::{format_expr, parse_with_dx, DiffPoly, JetContext, Var, DX_MARKER};

/// A C-differential operator `Σ_i a_i D̄_x^i` in normal form: coefficients
/// to the left of powers of `D̄_x`, no zero coefficients stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct CDiffOp {
    coeffs: BTreeMap<u32, DiffPoly>,
}

impl CDiffOp {
    pub fn zero() -> Self {
        CDiffOp {
            coeffs: BTreeMap::new(),
        }
    }

    /// Multiplication by `a`.
    pub fn mult(a: DiffPoly) -> Self {
        Self::term(a, 0)
    }

    pub fn identity() -> Self {
        Self::mult(DiffPoly::one())
    }

    /// `a · D̄_x^power`
    pub fn term(a: DiffPoly, power: u32) -> Self {
        let mut op = Self::zero();
        op.add_term(power, a);
        op
    }

    /// `D̄_x^power`
    pub fn dx_pow(power: u32) -> Self {
        Self::term(DiffPoly::one(), power)
    }

    pub fn from_coeffs<I: IntoIterator<Item = (u32, DiffPoly)>>(coeffs: I) -> Self {
        let mut op = Self::zero();
        for (i, a) in coeffs {
            op.add_term(i, a);
        }
        op
    }

    pub fn add_term(&mut self, power: u32, a: DiffPoly) {
        if a.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(power).or_default();
        *slot += a;
        if slot.is_zero() {
            self.coeffs.remove(&power);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `D̄_x^power` (zero when absent).
    pub fn coeff(&self, power: u32) -> DiffPoly {
        self.coeffs.get(&power).cloned().unwrap_or_default()
    }

    /// `(power, coefficient)` pairs in ascending power.
    pub fn coeffs(&self) -> impl Iterator<Item = (u32, &DiffPoly)> {
        self.coeffs.iter().map(|(&i, a)| (i, a))
    }

    /// Highest power of `D̄_x`, `None` for the zero operator.
    pub fn order(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn add(&self, other: &CDiffOp) -> CDiffOp {
        let mut out = self.clone();
        for (&i, a) in &other.coeffs {
            out.add_term(i, a.clone());
        }
        out
    }

    pub fn sub(&self, other: &CDiffOp) -> CDiffOp {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> CDiffOp {
        CDiffOp {
            coeffs: self.coeffs.iter().map(|(&i, a)| (i, -a)).collect(),
        }
    }

    /// Left multiplication by a function: `f · Σ a_i D̄_x^i`.
    pub fn left_mul(&self, f: &DiffPoly) -> CDiffOp {
        CDiffOp::from_coeffs(self.coeffs.iter().map(|(&i, a)| (i, f * a)))
    }

    /// Parse operator text such as `12*u_x^2*Dx + Dx^3`.
    ///
    /// The symbol `Dx` is read as a formal factor marking the power of `D̄_x`
    /// of each term, so every term is understood in normal form
    /// `coefficient * Dx^i`.
    pub fn parse(text: &str, ctx: &JetContext) -> Result<CDiffOp> {
        let p = parse_with_dx(text, ctx)?;
        let marker = Var::Indep(DX_MARKER);
        let top = p.degree_in(&marker);
        let mut op = CDiffOp::zero();
        for i in 0..=top {
            op.add_term(i, p.coeff_of_power(&marker, i));
        }
        if op.coeffs().any(|(_, a)| a.depends_on(&marker)) {
            return Err(JetError::Syntax {
                pos: 0,
                msg: "malformed operator".into(),
            });
        }
        Ok(op)
    }

    /// Canonical operator text, ascending powers of `Dx`.
    pub fn to_text(&self, ctx: &JetContext) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (n, (&i, a)) in self.coeffs.iter().enumerate() {
            let dx = match i {
                0 => String::new(),
                1 => "Dx".to_string(),
                _ => format!("Dx^{i}"),
            };
            let single = a.len() == 1;
            let negative = single && a.terms().next().unwrap().1.is_negative();
            let mag = if negative { -a } else { a.clone() };
            let body = if i == 0 {
                format_expr(&mag, ctx)
            } else if mag.as_constant().is_some_and(|c| c.is_one()) {
                dx
            } else if single {
                format!("{}*{dx}", format_expr(&mag, ctx))
            } else {
                format!("({})*{dx}", format_expr(&mag, ctx))
            };
            let body = if i == 0 && !single {
                format!("({body})")
            } else {
                body
            };
            match (n, negative) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            out.push_str(&body);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jetcore::parse_expr;

    #[test]
    fn text_round_trip() {
        let ctx = JetContext::tx();
        for s in [
            "12*u_x^2*Dx + Dx^3",
            "24*u_x*u_xx + 12*u_x^2*Dx + Dx^3",
            "-u_xx - u_x*Dx",
            "(u + x)*Dx^2",
            "(u - 1) + 2*Dx",
            "0",
            "Dx",
            "-Dx^4",
            "1/2*t",
        ] {
            let op = CDiffOp::parse(s, &ctx).unwrap();
            assert_eq!(op.to_text(&ctx), s, "round trip of {s}");
        }
    }

    #[test]
    fn parse_collects_powers() {
        let ctx = JetContext::tx();
        let op = CDiffOp::parse("Dx^3 + 12*u_x^2*Dx + Dx*u_x^2", &ctx).unwrap();
        assert_eq!(op.coeff(1), parse_expr("13*u_x^2", &ctx).unwrap());
        assert_eq!(op.order(), Some(3));
        assert!(CDiffOp::parse("Dy", &ctx).is_err());
    }
}

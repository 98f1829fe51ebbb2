//! Expression text: parsing into canonical [`DiffPoly`] values and printing
//! them back.
//!
//! Grammar (whitespace is ignored):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary | '/' int)*
//! unary  := ('+' | '-') unary | power
//! power  := atom ('^' int)?
//! atom   := int | name | name '[' int (',' int)* ']' | '(' expr ')'
//! ```
//!
//! A `name` is an independent variable, the dependent variable (`u`, the
//! zero multi-index), or a jet in suffix form `u_<letters>` where each letter
//! names an independent variable and the order of letters does not matter.
//! The bracket form `u[a1,...,an]` lists derivative counts in declaration
//! order. Rational literals are written `p/q`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::context::{JetContext, MultiIndex, Var, VarId};
use super::poly::{DiffPoly, Monomial, Q};
use crate::error::{JetError, Result};

/// Sentinel independent-variable id used for the `Dx` symbol of operator text.
pub(crate) const DX_MARKER: VarId = usize::MAX;

pub fn parse_expr(text: &str, ctx: &JetContext) -> Result<DiffPoly> {
    Parser::new(text, ctx, false).parse_all()
}

/// Parse with the extra symbol `Dx` admitted as a formal commuting variable.
pub(crate) fn parse_with_dx(text: &str, ctx: &JetContext) -> Result<DiffPoly> {
    Parser::new(text, ctx, true).parse_all()
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ctx: &'a JetContext,
    allow_dx: bool,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str, ctx: &'a JetContext, allow_dx: bool) -> Self {
        Parser {
            src: text.as_bytes(),
            pos: 0,
            ctx,
            allow_dx,
        }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(JetError::Syntax {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn parse_all(mut self) -> Result<DiffPoly> {
        if self.peek().is_none() {
            return self.err("empty expression");
        }
        let p = self.expr()?;
        match self.peek() {
            None => Ok(p),
            Some(c) => self.err(format!("unexpected `{}`", c as char)),
        }
    }

    fn expr(&mut self) -> Result<DiffPoly> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc += self.term()?;
            } else if self.eat(b'-') {
                acc -= self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<DiffPoly> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                let rhs = self.unary()?;
                acc = &acc * &rhs;
            } else if self.eat(b'/') {
                self.skip_ws();
                let at = self.pos;
                let d = self.integer()?;
                if d.is_zero() {
                    self.pos = at;
                    return self.err("division by zero");
                }
                acc = acc.scale(&Q::new(BigInt::one(), d));
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<DiffPoly> {
        if self.eat(b'-') {
            Ok(-self.unary()?)
        } else if self.eat(b'+') {
            self.unary()
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<DiffPoly> {
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        self.skip_ws();
        let at = self.pos;
        match self.src.get(self.pos) {
            Some(b'-') => {
                return Err(JetError::BadExponent {
                    pos: at,
                    msg: "negative exponent".into(),
                })
            }
            Some(c) if c.is_ascii_digit() => {}
            Some(b'(') => {
                return Err(JetError::BadExponent {
                    pos: at,
                    msg: "exponent must be a non-negative integer literal".into(),
                })
            }
            _ => {
                return Err(JetError::BadExponent {
                    pos: at,
                    msg: "expected an integer".into(),
                })
            }
        }
        let e = self.integer()?;
        if self.src.get(self.pos) == Some(&b'.') {
            return Err(JetError::BadExponent {
                pos: at,
                msg: "fractional exponent".into(),
            });
        }
        let e = u32::try_from(e).map_err(|_| JetError::BadExponent {
            pos: at,
            msg: "exponent too large".into(),
        })?;
        Ok(base.pow_u(e))
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected an integer");
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(s.parse().unwrap())
    }

    fn atom(&mut self) -> Result<DiffPoly> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let p = self.expr()?;
                if !self.eat(b')') {
                    return self.err("expected `)`");
                }
                Ok(p)
            }
            Some(c) if c.is_ascii_digit() => {
                Ok(DiffPoly::constant(Q::from_integer(self.integer()?)))
            }
            Some(c) if c.is_ascii_alphabetic() => self.name(),
            Some(c) => self.err(format!("unexpected `{}`", c as char)),
            None => self.err("unexpected end of input"),
        }
    }

    fn name(&mut self) -> Result<DiffPoly> {
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        let ctx = self.ctx;
        if let Some(v) = ctx.var_id(name) {
            return Ok(DiffPoly::indep(v));
        }
        if self.allow_dx && name == "Dx" {
            return Ok(DiffPoly::indep(DX_MARKER));
        }
        let alpha = if name == ctx.dep_name() {
            if self.peek() == Some(b'[') {
                self.pos += 1;
                self.bracket_index(start)?
            } else {
                ctx.zero_index()
            }
        } else if let Some(suffix) = name
            .strip_prefix(ctx.dep_name())
            .and_then(|s| s.strip_prefix('_'))
        {
            let mut alpha = ctx.zero_index();
            if suffix.is_empty() {
                return Err(JetError::UnknownVariable {
                    name: name.into(),
                    pos: start,
                });
            }
            for ch in suffix.chars() {
                let mut buf = [0u8; 4];
                let v = ctx.var_id(ch.encode_utf8(&mut buf)).ok_or_else(|| {
                    JetError::UnknownVariable {
                        name: name.into(),
                        pos: start,
                    }
                })?;
                alpha = alpha.bump(v);
            }
            alpha
        } else {
            return Err(JetError::UnknownVariable {
                name: name.into(),
                pos: start,
            });
        };
        ctx.check_order(&alpha)?;
        Ok(DiffPoly::jet(alpha))
    }

    fn bracket_index(&mut self, start: usize) -> Result<MultiIndex> {
        let mut counts = Vec::new();
        loop {
            let n = self.integer()?;
            let n = u32::try_from(n).or_else(|_| self.err("derivative count too large"))?;
            counts.push(n);
            if self.eat(b',') {
                continue;
            }
            if self.eat(b']') {
                break;
            }
            return self.err("expected `,` or `]`");
        }
        if counts.len() != self.ctx.n_indep() {
            return Err(JetError::Syntax {
                pos: start,
                msg: format!(
                    "bracket jet needs {} counts, got {}",
                    self.ctx.n_indep(),
                    counts.len()
                ),
            });
        }
        let a = MultiIndex::from_counts(&counts)?;
        self.ctx.check_order(&a)?;
        Ok(a)
    }
}

fn fmt_rational(c: &Q) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

pub(crate) fn format_monomial(m: &Monomial, ctx: &JetContext) -> String {
    let parts: Vec<String> = m
        .factors()
        .iter()
        .map(|(v, e)| {
            let name = match v {
                Var::Indep(DX_MARKER) => "Dx".to_string(),
                _ => ctx.var_name(v),
            };
            if *e == 1 {
                name
            } else {
                format!("{name}^{e}")
            }
        })
        .collect();
    parts.join("*")
}

/// Canonical text of a polynomial: terms in descending monomial order.
pub fn format_expr(p: &DiffPoly, ctx: &JetContext) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (m, c)) in p.terms().rev().enumerate() {
        let neg = c.is_negative();
        let mag = c.abs();
        match (i, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        if m.is_one() {
            out.push_str(&fmt_rational(&mag));
        } else {
            if !mag.is_one() {
                out.push_str(&fmt_rational(&mag));
                out.push('*');
            }
            out.push_str(&format_monomial(m, ctx));
        }
    }
    out
}

impl DiffPoly {
    pub fn parse(text: &str, ctx: &JetContext) -> Result<DiffPoly> {
        parse_expr(text, ctx)
    }

    pub fn to_text(&self, ctx: &JetContext) -> String {
        format_expr(self, ctx)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jetcore::poly::q;

    fn ctx() -> JetContext {
        JetContext::tx()
    }

    #[test]
    fn parses_pmkdv_rhs() {
        let c = ctx();
        let p = parse_expr("4*u_x^3 + u_xxx", &c).unwrap();
        let u1 = Monomial::pow(c.jet_along(1, 1), 3);
        let u3 = Monomial::var(c.jet_along(1, 3));
        assert_eq!(p.len(), 2);
        assert_eq!(p.coeff(&u1), Some(&q(4)));
        assert_eq!(p.coeff(&u3), Some(&q(1)));
        assert_eq!(format_expr(&p, &c), "4*u_x^3 + u_xxx");
    }

    #[test]
    fn zero_and_cancellation() {
        let c = ctx();
        assert!(parse_expr("0", &c).unwrap().is_zero());
        assert!(parse_expr("u[0,1]^2 - u_x*u_x", &c).unwrap().is_zero());
        assert_eq!(format_expr(&DiffPoly::zero(), &c), "0");
    }

    #[test]
    fn canonical_factor_order() {
        let c = ctx();
        let a = parse_expr("u_xx*u_x", &c).unwrap();
        let b = parse_expr("u_x*u_xx", &c).unwrap();
        assert_eq!(a, b);
        assert_eq!(format_expr(&a, &c), "u_x*u_xx");
        assert_eq!(
            parse_expr("u_xxt", &c).unwrap(),
            parse_expr("u_txx", &c).unwrap()
        );
        assert_eq!(
            parse_expr("u_xxt", &c).unwrap(),
            parse_expr("u[1,2]", &c).unwrap()
        );
    }

    #[test]
    fn rationals_and_signs() {
        let c = ctx();
        let p = parse_expr("u_t*u_x/2 - u_x^4 + u_xx^2/2", &c).unwrap();
        let s = format_expr(&p, &c);
        assert_eq!(s, "-u_x^4 + 1/2*u_x*u_t + 1/2*u_xx^2");
        assert_eq!(parse_expr(&s, &c).unwrap(), p);
        assert_eq!(format_expr(&parse_expr("-3/6", &c).unwrap(), &c), "-1/2");
        assert_eq!(
            format_expr(&parse_expr("-(x - t)", &c).unwrap(), &c),
            "t - x"
        );
    }

    #[test]
    fn errors() {
        let c = ctx();
        assert!(matches!(
            parse_expr("u_x +", &c),
            Err(JetError::Syntax { .. })
        ));
        assert!(matches!(parse_expr("", &c), Err(JetError::Syntax { .. })));
        assert!(matches!(
            parse_expr("(u_x", &c),
            Err(JetError::Syntax { pos: 4, .. })
        ));
        assert!(matches!(
            parse_expr("v_x", &c),
            Err(JetError::UnknownVariable { .. })
        ));
        assert!(matches!(
            parse_expr("u_xz", &c),
            Err(JetError::UnknownVariable { .. })
        ));
        assert!(matches!(
            parse_expr("u^-1", &c),
            Err(JetError::BadExponent { .. })
        ));
        assert!(matches!(
            parse_expr("u^(1/2)", &c),
            Err(JetError::BadExponent { .. })
        ));
        assert!(matches!(
            parse_expr("u^1.5", &c),
            Err(JetError::BadExponent { .. })
        ));
        assert!(matches!(
            parse_expr("u/0", &c),
            Err(JetError::Syntax { .. })
        ));
        assert!(matches!(
            parse_expr("u[1]", &c),
            Err(JetError::Syntax { .. })
        ));
        assert!(matches!(
            parse_expr("Dx", &c),
            Err(JetError::UnknownVariable { .. })
        ));
        let small = c.clone().with_max_order(2).unwrap();
        assert_eq!(
            parse_expr("u_xxx", &small),
            Err(JetError::OrderCap { order: 3, cap: 2 })
        );
    }

    #[test]
    fn exponent_binds_tighter_than_division() {
        let c = ctx();
        assert_eq!(
            parse_expr("u_x^2/3", &c).unwrap(),
            parse_expr("1/3*u_x^2", &c).unwrap()
        );
    }
}

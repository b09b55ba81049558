//! Recursive-descent parser for comma-separated coefficient lists over `Q(T)`.
//!
//! ```text
//! form   := expr (',' expr)*
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary | power)*
//! unary  := ('+' | '-') unary | power
//! power  := atom ('^' '-'? integer)?
//! atom   := integer | 'T' | 't' | '(' expr ')'
//! ```
//!
//! Juxtaposition binds like `*`, so `3T` and `2(T+1)` are accepted.

use num_bigint::BigInt;

use crate::arith::poly::Poly;
use crate::arith::ratfunc::RatFunc;
use crate::arith::rational::qb;
use crate::error::{Error, Result};
use crate::isotropy::QuadForm;

/// A parsed form with the positions of the zero coefficients that were dropped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParsedForm {
    pub form: QuadForm,
    /// Zero-based positions of zero coefficients in the input.
    pub stripped: Vec<usize>,
}

impl ParsedForm {
    /// Note on dropped zero coefficients, if any.
    pub fn note(&self) -> Option<String> {
        if self.stripped.is_empty() {
            return None;
        }
        let pos: Vec<String> = self
            .stripped
            .iter()
            .map(|i| format!("X{}", i + 1))
            .collect();
        Some(format!(
            "zero coefficients of {} dropped: the analysis concerns the nondegenerate part (each dropped variable \
             alone is a trivial zero of the degenerate form)",
            pos.join(", ")
        ))
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

fn err<T>(pos: usize, msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse {
        pos,
        msg: msg.into(),
    })
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return err(start, "expected an integer");
        }
        Ok(std::str::from_utf8(&self.s[start..self.pos])
            .unwrap()
            .parse()
            .unwrap())
    }

    fn expr(&mut self) -> Result<RatFunc> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = acc.add(&self.term()?);
            } else if self.eat(b'-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<RatFunc> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = acc.mul(&self.unary()?);
                }
                Some(b'/') => {
                    self.pos += 1;
                    let at = self.pos;
                    let d = self.unary()?;
                    acc = acc.div(&d).or_else(|_| err(at, "division by zero"))?;
                }
                Some(c) if c == b'(' || c == b'T' || c == b't' || c.is_ascii_digit() => {
                    acc = acc.mul(&self.power()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<RatFunc> {
        if self.eat(b'-') {
            return Ok(self.unary()?.neg());
        }
        if self.eat(b'+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<RatFunc> {
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let neg = self.eat(b'-');
        let at = self.pos;
        let e: i64 = self
            .integer()?
            .try_into()
            .or_else(|_| err(at, "exponent too large"))?;
        let e = if neg { -e } else { e };
        if e.abs() > 64 {
            return err(at, "exponent too large");
        }
        base.pow(e).or_else(|_| err(at, "negative power of zero"))
    }

    fn atom(&mut self) -> Result<RatFunc> {
        match self.peek() {
            Some(b'T') | Some(b't') => {
                self.pos += 1;
                Ok(RatFunc::t())
            }
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return err(self.pos, "expected ')'");
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => Ok(RatFunc::poly(Poly::constant(qb(self.integer()?)))),
            Some(c) => err(self.pos, format!("unexpected '{}'", c as char)),
            None => err(self.pos, "unexpected end of input"),
        }
    }
}

/// Coefficients in input order, zeros included.
pub fn parse_coeffs(text: &str) -> Result<Vec<RatFunc>> {
    let mut ps = Parser {
        s: text.as_bytes(),
        pos: 0,
    };
    let mut out = vec![ps.expr()?];
    while ps.eat(b',') {
        out.push(ps.expr()?);
    }
    if let Some(c) = ps.peek() {
        return err(ps.pos, format!("unexpected '{}'", c as char));
    }
    Ok(out)
}

/// Parses `text` into a form over `Q(T)` studied at `p`, dropping zero coefficients.
pub fn parse_form(text: &str, p: u64) -> Result<ParsedForm> {
    let all = parse_coeffs(text)?;
    let stripped: Vec<usize> = all
        .iter()
        .enumerate()
        .filter(|(_, c)| c.is_zero())
        .map(|(i, _)| i)
        .collect();
    let coeffs: Vec<RatFunc> = all.into_iter().filter(|c| !c.is_zero()).collect();
    if coeffs.is_empty() {
        return Err(Error::Precondition("every coefficient is zero".into()));
    }
    Ok(ParsedForm {
        form: QuadForm::new(p, coeffs)?,
        stripped,
    })
}

/// Renders coefficients in the input grammar.
pub fn render_coeffs(q: &QuadForm) -> String {
    q.coeffs
        .iter()
        .map(|c| c.to_expr())
        .collect::<Vec<_>>()
        .join(", ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::qi;

    #[test]
    fn example_form() {
        let f = parse_form("1, -(1+3*T), T, -(T+3)", 3).unwrap();
        assert_eq!(f.form.coeffs[1], RatFunc::poly(Poly::from_ints(&[-1, -3])));
        assert_eq!(f.form.coeffs[3], RatFunc::poly(Poly::from_ints(&[-3, -1])));
        assert!(f.stripped.is_empty());
    }

    #[test]
    fn hyperbolic_plane() {
        let f = parse_form("1, -1", 5).unwrap();
        assert_eq!(
            f.form.coeffs,
            vec![RatFunc::one(), RatFunc::constant(qi(-1))]
        );
    }

    #[test]
    fn errors() {
        assert!(matches!(
            parse_form("T/0", 3),
            Err(Error::Parse { pos: 2, .. })
        ));
        assert!(matches!(parse_form("1, (T", 3), Err(Error::Parse { .. })));
        assert!(matches!(
            parse_form("1, 2 #", 3),
            Err(Error::Parse { pos: 5, .. })
        ));
        assert!(matches!(
            parse_form("0, T - T", 3),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn zeros_stripped() {
        let f = parse_form("1, 0, T", 3).unwrap();
        assert_eq!(f.stripped, vec![1]);
        assert_eq!(f.form.dim(), 2);
        assert!(f.note().unwrap().contains("X2"));
    }

    #[test]
    fn grammar_features() {
        let f = parse_coeffs("3T^2 - T/2, 2(T+1)^-1, (1/3)*T").unwrap();
        assert_eq!(
            f[0],
            RatFunc::poly(Poly::new(vec![
                qi(0),
                crate::arith::rational::qr(-1, 2),
                qi(3)
            ]))
        );
        assert_eq!(
            f[1],
            RatFunc::constant(qi(2))
                .div(&RatFunc::poly(Poly::from_ints(&[1, 1])))
                .unwrap()
        );
        assert_eq!(
            f[2],
            RatFunc::poly(Poly::new(vec![qi(0), crate::arith::rational::qr(1, 3)]))
        );
    }

    #[test]
    fn round_trip() {
        let f = parse_form("1, -(1+3*T), T/(T^2+1), -(T+3)/9, 2/3", 3).unwrap();
        let again = parse_form(&render_coeffs(&f.form), 3).unwrap();
        assert_eq!(again.form, f.form);
    }
}

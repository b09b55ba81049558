use std::fmt;

use num_traits::{One, Zero};

use super::poly::Poly;
use super::rational::{fmt_q, Q};
use super::series::{Center, Laurent};
use crate::error::{Error, Result};

/// Element of `Q(T)` kept as `num/den` with coprime parts and monic denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Result<RatFunc> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RatFunc::zero());
        }
        let g = Poly::gcd(&num, &den);
        let n = num.divrem(&g).0;
        let d = den.divrem(&g).0;
        let l = d.lc();
        let inv = Q::one() / l;
        Ok(RatFunc {
            num: n.scale(&inv),
            den: d.scale(&inv),
        })
    }

    pub fn poly(p: Poly) -> RatFunc {
        RatFunc {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn constant(a: Q) -> RatFunc {
        RatFunc::poly(Poly::constant(a))
    }

    pub fn zero() -> RatFunc {
        RatFunc {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> RatFunc {
        RatFunc::constant(Q::one())
    }

    pub fn t() -> RatFunc {
        RatFunc::poly(Poly::t())
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn as_constant(&self) -> Option<Q> {
        if self.is_constant() {
            Some(self.num.coeff(0))
        } else {
            None
        }
    }

    pub fn add(&self, o: &RatFunc) -> RatFunc {
        let n = &(&self.num * &o.den) + &(&o.num * &self.den);
        RatFunc::new(n, &self.den * &o.den).unwrap()
    }

    pub fn sub(&self, o: &RatFunc) -> RatFunc {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, o: &RatFunc) -> RatFunc {
        RatFunc::new(&self.num * &o.num, &self.den * &o.den).unwrap()
    }

    pub fn scale(&self, a: &Q) -> RatFunc {
        self.mul(&RatFunc::constant(a.clone()))
    }

    pub fn inv(&self) -> Result<RatFunc> {
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, o: &RatFunc) -> Result<RatFunc> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn pow(&self, n: i64) -> Result<RatFunc> {
        let b = if n < 0 { self.inv()? } else { self.clone() };
        let e = n.unsigned_abs() as u32;
        Ok(RatFunc {
            num: b.num.pow(e),
            den: b.den.pow(e),
        }
        .renorm())
    }

    fn renorm(self) -> RatFunc {
        RatFunc::new(self.num, self.den).unwrap()
    }

    /// Value at `x`, `None` at a pole.
    pub fn eval(&self, x: &Q) -> Option<Q> {
        let d = self.den.eval(x);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(x) / d)
        }
    }

    /// Value at infinity, `None` when infinity is a pole.
    pub fn eval_inf(&self) -> Option<Q> {
        let dn = self.num.deg();
        let dd = self.den.deg();
        if dn > dd {
            None
        } else if dn < dd {
            Some(Q::zero())
        } else {
            Some(self.num.lc() / self.den.lc())
        }
    }

    /// `f(a + b T)`.
    pub fn compose_affine(&self, a: &Q, b: &Q) -> RatFunc {
        RatFunc::new(self.num.compose_affine(a, b), self.den.compose_affine(a, b)).unwrap()
    }

    /// `f(1/T)`.
    pub fn flip(&self) -> RatFunc {
        let n = self.num.deg().max(self.den.deg()).max(0) as usize;
        RatFunc::new(self.num.reversed_to(n), self.den.reversed_to(n)).unwrap()
    }

    /// Laurent expansion in `T - c` (or `1/T` at infinity) to `n` terms beyond the leading one.
    pub fn expand_at(&self, center: &Center, n: usize) -> Laurent {
        Laurent::of_ratfunc(self, center, n)
    }

    /// Renders in the form-input grammar.
    pub fn to_expr(&self) -> String {
        let ns = paren(&self.num);
        if self.den.is_one() {
            ns
        } else {
            format!("{}/{}", ns, paren(&self.den))
        }
    }
}

fn paren(p: &Poly) -> String {
    if p.is_constant() {
        let c = p.coeff(0);
        let s = fmt_q(&c);
        if s.contains('/') || s.starts_with('-') {
            format!("({})", s)
        } else {
            s
        }
    } else {
        format!("({})", p)
    }
}

trait IsOne {
    fn is_one(&self) -> bool;
}

impl IsOne for Poly {
    fn is_one(&self) -> bool {
        self.is_constant() && self.coeff(0).is_one()
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_expr())
    }
}

impl From<Poly> for RatFunc {
    fn from(p: Poly) -> RatFunc {
        RatFunc::poly(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::qi;

    #[test]
    fn normalizes() {
        let f = RatFunc::new(Poly::from_ints(&[-1, 0, 1]), Poly::from_ints(&[2, 2])).unwrap();
        assert_eq!(
            f.num(),
            &Poly::new(vec![
                Q::new((-1).into(), 2.into()),
                Q::new(1.into(), 2.into())
            ])
        );
        assert_eq!(f.den(), &Poly::one());
        assert!(RatFunc::new(Poly::one(), Poly::zero()).is_err());
    }

    #[test]
    fn flip_and_eval() {
        let f = RatFunc::new(Poly::from_ints(&[3, 1]), Poly::from_ints(&[0, 1])).unwrap();
        let g = f.flip();
        assert_eq!(g, RatFunc::poly(Poly::from_ints(&[1, 3])));
        assert_eq!(f.eval(&qi(0)), None);
        assert_eq!(f.eval_inf(), Some(qi(1)));
    }

    #[test]
    fn expr_roundtrip_shape() {
        let f = RatFunc::new(Poly::from_ints(&[3, 1]), Poly::from_ints(&[0, 1])).unwrap();
        assert_eq!(f.to_expr(), "(T + 3)/(T)");
        assert_eq!(RatFunc::constant(qi(-2)).to_expr(), "(-2)");
    }
}

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::{fmt_q, qb, qi, vp, ExtQ, Q};

/// Dense univariate polynomial over `Q` in the variable `T`, coefficients low to high.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    c: Vec<Q>,
}

impl Poly {
    pub fn new(mut c: Vec<Q>) -> Poly {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        Poly { c }
    }

    pub fn from_ints(c: &[i64]) -> Poly {
        Poly::new(c.iter().map(|&x| qi(x)).collect())
    }

    pub fn zero() -> Poly {
        Poly { c: vec![] }
    }

    pub fn one() -> Poly {
        Poly::constant(Q::one())
    }

    pub fn t() -> Poly {
        Poly::new(vec![Q::zero(), Q::one()])
    }

    pub fn constant(a: Q) -> Poly {
        Poly::new(vec![a])
    }

    /// `T - a`.
    pub fn linear(a: &Q) -> Poly {
        Poly::new(vec![-a, Q::one()])
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> Q {
        self.c.get(i).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    /// Degree with `deg 0 = -1`.
    pub fn deg(&self) -> i64 {
        self.c.len() as i64 - 1
    }

    pub fn lc(&self) -> Q {
        self.c.last().cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    pub fn scale(&self, a: &Q) -> Poly {
        Poly::new(self.c.iter().map(|x| x * a).collect())
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.lc();
        self.scale(&(Q::one() / l))
    }

    pub fn eval(&self, x: &Q) -> Q {
        let mut acc = Q::zero();
        for a in self.c.iter().rev() {
            acc = acc * x + a;
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, a)| a * qi(i as i64))
                .collect(),
        )
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut r = Poly::one();
        for _ in 0..n {
            r = &r * self;
        }
        r
    }

    /// `f(a + b T)`.
    pub fn compose_affine(&self, a: &Q, b: &Q) -> Poly {
        let lin = Poly::new(vec![a.clone(), b.clone()]);
        let mut acc = Poly::zero();
        for c in self.c.iter().rev() {
            acc = &(&acc * &lin) + &Poly::constant(c.clone());
        }
        acc
    }

    /// Coefficients of `f(T + a)`, the expansion in powers of `T - a`.
    pub fn taylor(&self, a: &Q) -> Poly {
        self.compose_affine(a, &Q::one())
    }

    /// `T^d f(1/T)` with `d = deg f`.
    pub fn reversed(&self) -> Poly {
        let mut c = self.c.clone();
        c.reverse();
        Poly::new(c)
    }

    /// `T^n f(1/T)` for `n >= deg f`.
    pub fn reversed_to(&self, n: usize) -> Poly {
        let mut c = self.c.clone();
        c.resize(n + 1, Q::zero());
        c.reverse();
        Poly::new(c)
    }

    pub fn divrem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.c.len() - 1;
        let lc = d.lc();
        let mut r = self.c.clone();
        if r.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut q = vec![Q::zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let f = &r[i + dd] / &lc;
            if !f.is_zero() {
                for j in 0..=dd {
                    let t = &f * &d.c[j];
                    r[i + j] -= t;
                }
            }
            q[i] = f;
        }
        (Poly::new(q), Poly::new(r))
    }

    pub fn divides(&self, f: &Poly) -> bool {
        f.divrem(self).1.is_zero()
    }

    /// Monic gcd.
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        let mut x = a.clone();
        let mut y = b.clone();
        while !y.is_zero() {
            let r = x.divrem(&y).1;
            x = y;
            y = r;
        }
        x.monic()
    }

    /// Least common multiple of coefficient denominators times the inverse gcd of numerators:
    /// `f = content * primitive` with primitive integral of gcd 1 and positive leading coefficient.
    pub fn primitive_part(&self) -> (Q, Vec<BigInt>) {
        if self.is_zero() {
            return (Q::zero(), vec![]);
        }
        let mut l = BigInt::one();
        for a in &self.c {
            l = l.lcm(a.denom());
        }
        let ints: Vec<BigInt> = self
            .c
            .iter()
            .map(|a| (a * qb(l.clone())).to_integer())
            .collect();
        let mut g = BigInt::zero();
        for a in &ints {
            g = g.gcd(a);
        }
        if ints.last().unwrap().is_negative() {
            g = -g;
        }
        let prim: Vec<BigInt> = ints.iter().map(|a| a / &g).collect();
        (Q::new(g, l), prim)
    }

    pub fn from_bigints(c: &[BigInt]) -> Poly {
        Poly::new(c.iter().cloned().map(qb).collect())
    }

    /// `min_n (v_p(b_n) + n s)` over the coefficients, the log of the Gauss norm of radius `p^{-s}`.
    pub fn newton_val(&self, p: u64, s: &Q) -> ExtQ {
        let mut best: Option<Q> = None;
        for (n, b) in self.c.iter().enumerate() {
            if let Some(k) = vp(b, p) {
                let v = qi(k) + s * qi(n as i64);
                if best.as_ref().is_none_or(|x| &v < x) {
                    best = Some(v);
                }
            }
        }
        best.map(ExtQ::Fin).unwrap_or(ExtQ::PosInf)
    }

    /// Indices attaining `newton_val(p, s)`: `(smallest, largest)`.
    pub fn newton_argmin(&self, p: u64, s: &Q) -> Option<(usize, usize)> {
        let m = self.newton_val(p, s);
        let m = m.fin()?.clone();
        let mut lo = None;
        let mut hi = 0;
        for (n, b) in self.c.iter().enumerate() {
            if let Some(k) = vp(b, p) {
                if qi(k) + s * qi(n as i64) == m {
                    if lo.is_none() {
                        lo = Some(n);
                    }
                    hi = n;
                }
            }
        }
        lo.map(|l| (l, hi))
    }

    pub fn fmt_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, a) in self.c.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            let neg = a.is_negative();
            let mag = a.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{}^{}", var, i),
            };
            if i == 0 {
                out.push_str(&fmt_q(&mag));
            } else if mag.is_one() {
                out.push_str(&mono);
            } else if mag.is_integer() {
                out.push_str(&format!("{}*{}", fmt_q(&mag), mono));
            } else {
                out.push_str(&format!("({})*{}", fmt_q(&mag), mono));
            }
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_var("T"))
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let n = self.c.len().max(o.c.len());
        Poly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        let n = self.c.len().max(o.c.len());
        Poly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.c.iter().map(|a| -a).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut r = vec![Q::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                r[i + j] += a * b;
            }
        }
        Poly::new(r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::qr;

    #[test]
    fn arithmetic() {
        let f = Poly::from_ints(&[1, 1]);
        let g = Poly::from_ints(&[-1, 1]);
        assert_eq!(&f * &g, Poly::from_ints(&[-1, 0, 1]));
        let (q, r) = Poly::from_ints(&[-1, 0, 1]).divrem(&f);
        assert_eq!(q, g);
        assert!(r.is_zero());
        assert_eq!(Poly::gcd(&(&f * &g), &(&f * &f)), f);
    }

    #[test]
    fn taylor_shift() {
        let f = Poly::from_ints(&[1, 3]);
        assert_eq!(f.taylor(&qi(1)), Poly::from_ints(&[4, 3]));
    }

    #[test]
    fn primitive() {
        let f = Poly::new(vec![qr(1, 2), qr(-3, 4)]);
        let (c, p) = f.primitive_part();
        assert_eq!(c, qr(-1, 4));
        assert_eq!(p, vec![BigInt::from(-2), BigInt::from(3)]);
    }

    #[test]
    fn newton_values() {
        let f = Poly::from_ints(&[-3, 1]);
        assert_eq!(f.newton_val(3, &qi(1)), ExtQ::Fin(qi(1)));
        assert_eq!(f.newton_argmin(3, &qi(1)), Some((0, 1)));
        assert_eq!(f.newton_argmin(3, &qi(2)), Some((0, 0)));
    }

    #[test]
    fn display() {
        assert_eq!(Poly::from_ints(&[3, -1, 2]).to_string(), "2*T^2 - T + 3");
    }
}

use std::fmt;

use num_traits::Zero;

use super::rational::{fmt_q, qi, vp, ExtQ, Q};

/// Element `sum_i c_i pi^i` of `Q[X]/(X^h - p)`, `pi` the class of `X`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EisElem {
    pub p: u64,
    pub h: u32,
    c: Vec<Q>,
}

impl EisElem {
    pub fn from_q(p: u64, h: u32, a: Q) -> EisElem {
        let mut c = vec![Q::zero(); h as usize];
        c[0] = a;
        EisElem { p, h, c }
    }

    pub fn zero(p: u64, h: u32) -> EisElem {
        EisElem::from_q(p, h, Q::zero())
    }

    /// The uniformizer `pi` with `pi^h = p`.
    pub fn generator(p: u64, h: u32) -> EisElem {
        let mut e = EisElem::zero(p, h);
        if h == 1 {
            e.c[0] = qi(p as i64);
        } else {
            e.c[1] = qi(1);
        }
        e
    }

    /// `pi^j` for any integer `j`.
    pub fn pi_pow(p: u64, h: u32, j: i64) -> EisElem {
        let q = j.div_euclid(h as i64);
        let r = j.rem_euclid(h as i64) as usize;
        let mut e = EisElem::zero(p, h);
        e.c[r] = super::rational::p_pow(p, q);
        e
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    /// As a rational when the element lies in `Q`.
    pub fn as_q(&self) -> Option<Q> {
        if self.c[1..].iter().all(|x| x.is_zero()) {
            Some(self.c[0].clone())
        } else {
            None
        }
    }

    pub fn valuation(&self) -> ExtQ {
        let h = self.h as i64;
        let mut best: Option<Q> = None;
        for (i, a) in self.c.iter().enumerate() {
            if let Some(k) = vp(a, self.p) {
                let v = qi(k) + Q::new((i as i64).into(), h.into());
                if best.as_ref().is_none_or(|b| &v < b) {
                    best = Some(v);
                }
            }
        }
        best.map(ExtQ::Fin).unwrap_or(ExtQ::PosInf)
    }

    pub fn add(&self, o: &EisElem) -> EisElem {
        assert_eq!((self.p, self.h), (o.p, o.h));
        EisElem {
            p: self.p,
            h: self.h,
            c: self.c.iter().zip(&o.c).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn neg(&self) -> EisElem {
        EisElem {
            p: self.p,
            h: self.h,
            c: self.c.iter().map(|a| -a).collect(),
        }
    }

    pub fn sub(&self, o: &EisElem) -> EisElem {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &EisElem) -> EisElem {
        assert_eq!((self.p, self.h), (o.p, o.h));
        let h = self.h as usize;
        let pq = qi(self.p as i64);
        let mut c = vec![Q::zero(); h];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                let t = a * b;
                if i + j >= h {
                    c[i + j - h] += t * &pq;
                } else {
                    c[i + j] += t;
                }
            }
        }
        EisElem {
            p: self.p,
            h: self.h,
            c,
        }
    }

    pub fn pow(&self, n: u32) -> EisElem {
        let mut r = EisElem::from_q(self.p, self.h, qi(1));
        for _ in 0..n {
            r = r.mul(self);
        }
        r
    }

    pub fn scale(&self, a: &Q) -> EisElem {
        EisElem {
            p: self.p,
            h: self.h,
            c: self.c.iter().map(|x| x * a).collect(),
        }
    }
}

impl fmt::Display for EisElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = vec![];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            parts.push(match i {
                0 => fmt_q(a),
                1 => format!("{}*pi", fmt_q(a)),
                _ => format!("{}*pi^{}", fmt_q(a), i),
            });
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

use crate::arith::ff::{FpPoly, Fq};
use crate::arith::poly::Poly;
use crate::arith::ratfunc::RatFunc;
use crate::arith::rational::{p_pow, to_i64, vp, Q};
use crate::error::{Error, Result};

use super::fiber::Direction;

pub(crate) fn int_s(s: &Q) -> Result<i64> {
    if !s.is_integer() {
        return Err(Error::Unsupported(format!("non-integer log-radius {}", s)));
    }
    Ok(to_i64(&s.to_integer()))
}

/// `f(a + p^s t)` as a polynomial in `t`.
pub fn rescale(f: &Poly, a: &Q, s: i64, p: u64) -> Poly {
    f.compose_affine(a, &p_pow(p, s))
}

/// Gauss valuation of `f` at `Eta(a,s)` and the reduction of `p^{-v} f(a + p^s t)`.
pub fn reduce_poly_val(f: &Poly, a: &Q, s: &Q, p: u64) -> Result<(i64, FpPoly)> {
    if f.is_zero() {
        return Err(Error::Zero("reduction of the zero polynomial"));
    }
    let g = rescale(f, a, int_s(s)?, p);
    let v = g.coeffs().iter().filter_map(|c| vp(c, p)).min().unwrap();
    let scaled: Vec<Q> = g.coeffs().iter().map(|c| c / p_pow(p, v)).collect();
    Ok((v, FpPoly::reduce(p, &scaled)))
}

pub fn reduce_poly(f: &Poly, a: &Q, s: &Q, p: u64) -> Result<FpPoly> {
    Ok(reduce_poly_val(f, a, s, p)?.1)
}

/// Reduction of a rational function at `Eta(a,s)`: `f = p^val * (num/den + higher order)` on the component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction {
    pub val: i64,
    pub num: FpPoly,
    pub den: FpPoly,
}

pub fn reduce_ratfunc(f: &RatFunc, a: &Q, s: &Q, p: u64) -> Result<Reduction> {
    let (vn, num) = reduce_poly_val(f.num(), a, s, p)?;
    let (vd, den) = reduce_poly_val(f.den(), a, s, p)?;
    let g = FpPoly::gcd(&num, &den);
    Ok(Reduction {
        val: vn - vd,
        num: num.divrem(&g).0,
        den: den.divrem(&g).0,
    })
}

impl Reduction {
    /// Order of vanishing of the reduced function at the closed point `dir` of the component.
    pub fn order_at(&self, dir: &Direction) -> i64 {
        match dir {
            Direction::Up => self.den.deg() - self.num.deg(),
            Direction::Down(g) => self.num.val_at(g) as i64 - self.den.val_at(g) as i64,
        }
    }

    /// Value of the reduced function at `dir` in the residue field of that point, `None` at a zero or pole.
    pub fn value_at(&self, dir: &Direction) -> Option<(Fq, FpPoly)> {
        if self.order_at(dir) != 0 {
            return None;
        }
        let p = self.num.p;
        match dir {
            Direction::Up => {
                let k = Fq::prime(p);
                let v = crate::arith::ff::fp_inv(self.den.lc(), p) * self.num.lc() % p;
                Some((k.clone(), k.elem(v)))
            }
            Direction::Down(g) => {
                let k = Fq::ext(g.clone());
                let n = k.reduce(&self.num);
                let d = k.reduce(&self.den);
                let v = k.mul(&n, &k.inv(&d)?);
                if v.is_zero() {
                    None
                } else {
                    Some((k, v))
                }
            }
        }
    }

    /// Reduction of `p^{-val} f` as an element of the component's residue field, for display.
    pub fn describe(&self) -> String {
        if self.den.is_one() {
            self.num.fmt_var("t")
        } else {
            format!("({})/({})", self.num.fmt_var("t"), self.den.fmt_var("t"))
        }
    }
}

/// `v_x(f)` at an integral Eta point as an integer.
pub fn int_val(f: &RatFunc, a: &Q, s: &Q, p: u64) -> Result<i64> {
    Ok(reduce_ratfunc(f, a, s, p)?.val)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::qi;

    #[test]
    fn reductions() {
        let f = RatFunc::poly(Poly::from_ints(&[-3, 1]));
        let r = reduce_ratfunc(&f, &qi(0), &qi(1), 3).unwrap();
        assert_eq!(r.val, 1);
        assert_eq!(r.num, FpPoly::from_i64s(3, &[-1, 1]));
        let g = RatFunc::poly(Poly::from_ints(&[1, 0, 1]));
        let r = reduce_ratfunc(&g, &qi(0), &qi(0), 3).unwrap();
        assert_eq!(
            r.order_at(&Direction::Down(FpPoly::from_i64s(3, &[1, 0, 1]))),
            1
        );
        assert_eq!(r.order_at(&Direction::Up), -2);
        assert_eq!(
            r.value_at(&Direction::Down(FpPoly::from_i64s(3, &[-1, 1])))
                .unwrap()
                .1,
            FpPoly::constant(3, 2)
        );
        // (T + 1)/T at eta(0,-1) over Q_5 reduces to 1 after cancelling t/t
        let h = RatFunc::poly(Poly::from_ints(&[1, 1]))
            .div(&RatFunc::t())
            .unwrap();
        let r = reduce_ratfunc(&h, &qi(0), &qi(-1), 5).unwrap();
        assert_eq!(
            (r.val, r.num.clone(), r.den.clone()),
            (0, FpPoly::one(5), FpPoly::one(5))
        );
        assert!(r.value_at(&Direction::Down(FpPoly::x(5))).is_some());
    }
}

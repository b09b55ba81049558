use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::rational::{
    check_prime, legendre, legendre_q, mod_pk, modinv, qb, rational_sqrt, residue, unit_part, vp, Q,
};
use crate::error::{Error, Result};

/// A p-adic number approximated by a rational, exact when `exact` is set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PAdicApprox {
    pub value: Q,
    pub p: u64,
    pub precision: u32,
    pub exact: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HenselSqrt {
    Root(PAdicApprox),
    NotASquare,
}

/// Square root of a p-adic unit to precision `n`; picks the smallest residue root unless `a` is a rational square.
pub fn hensel_sqrt(a: &Q, p: u64, n: u32) -> Result<HenselSqrt> {
    check_prime(p)?;
    match vp(a, p) {
        None => return Err(Error::NonUnit("+inf".into())),
        Some(0) => {}
        Some(k) => return Err(Error::NonUnit(k.to_string())),
    }
    if let Some(r) = rational_sqrt(a) {
        return Ok(HenselSqrt::Root(PAdicApprox {
            value: r,
            p,
            precision: n,
            exact: true,
        }));
    }
    let r = residue(a, p);
    match (1..p).find(|x| (x * x) % p == r) {
        None => Ok(HenselSqrt::NotASquare),
        Some(x0) => Ok(HenselSqrt::Root(hensel_sqrt_from(a, p, n, x0))),
    }
}

/// Lifts the residue root `x0` of the unit `a` to a root modulo `p^n`.
pub fn hensel_sqrt_from(a: &Q, p: u64, n: u32, x0: u64) -> PAdicApprox {
    let n = n.max(1);
    let m = BigInt::from(p).pow(n);
    let am = mod_pk(a, p, n);
    let mut x = BigInt::from(x0);
    let mut prec = 1u32;
    while prec < n {
        prec = (prec * 2).min(n);
        let mk = BigInt::from(p).pow(prec);
        let fx = (&x * &x - &am).mod_floor(&mk);
        let inv = modinv(&(BigInt::from(2) * &x).mod_floor(&mk), &mk).expect("2x invertible");
        x = (&x - fx * inv).mod_floor(&mk);
    }
    debug_assert!((&x * &x - &am).mod_floor(&m).is_zero());
    PAdicApprox {
        value: qb(x),
        p,
        precision: n,
        exact: false,
    }
}

/// Whether nonzero `x` is a square in `Q_p`.
pub fn is_square_qp(x: &Q, p: u64) -> bool {
    let (k, u) = unit_part(x, p);
    k % 2 == 0 && legendre_q(&u, p) == 1
}

/// Square root in `Q_p` of a nonzero square, as `p^{k/2}` times a lifted unit root.
pub fn sqrt_qp(x: &Q, p: u64, n: u32) -> Option<PAdicApprox> {
    let (k, u) = unit_part(x, p);
    if k % 2 != 0 {
        return None;
    }
    match hensel_sqrt(&u, p, n).ok()? {
        HenselSqrt::NotASquare => None,
        HenselSqrt::Root(mut r) => {
            r.value *= super::rational::p_pow(p, k / 2);
            Some(r)
        }
    }
}

/// Hilbert symbol `(a, b)_p` for odd `p`.
pub fn hilbert_symbol(a: &Q, b: &Q, p: u64) -> Result<i32> {
    check_prime(p)?;
    if a.is_zero() || b.is_zero() {
        return Err(Error::Zero("hilbert_symbol argument"));
    }
    let (alpha, u) = unit_part(a, p);
    let (beta, v) = unit_part(b, p);
    let mut s = 1i32;
    if (alpha * beta).rem_euclid(2) == 1 && ((p - 1) / 2) % 2 == 1 {
        s = -s;
    }
    if beta.rem_euclid(2) == 1 {
        s *= legendre(&BigInt::from(residue(&u, p)), p);
    }
    if alpha.rem_euclid(2) == 1 {
        s *= legendre(&BigInt::from(residue(&v, p)), p);
    }
    Ok(s)
}

/// Checks `v_p(x^2 - a) >= n`.
pub fn check_sqrt(x: &Q, a: &Q, p: u64, n: u32) -> bool {
    let d = x * x - a;
    match vp(&d, p) {
        None => true,
        Some(k) => k >= n as i64,
    }
}

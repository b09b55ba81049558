use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Q = BigRational;

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qr(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn qb(n: BigInt) -> Q {
    Q::from_integer(n)
}

pub fn check_prime(p: u64) -> Result<()> {
    if p < 3 || p.is_multiple_of(2) || !is_prime(p) {
        return Err(Error::BadPrime(p));
    }
    Ok(())
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Exponent of `p` in a nonzero integer.
pub fn vp_int(n: &BigInt, p: u64) -> i64 {
    debug_assert!(!n.is_zero());
    let pb = BigInt::from(p);
    let mut k = 0;
    let mut m = n.clone();
    loop {
        let (q, r) = m.div_rem(&pb);
        if !r.is_zero() {
            return k;
        }
        m = q;
        k += 1;
    }
}

/// `v_p(x)`, or `None` for zero.
pub fn vp(x: &Q, p: u64) -> Option<i64> {
    if x.is_zero() {
        None
    } else {
        Some(vp_int(x.numer(), p) - vp_int(x.denom(), p))
    }
}

pub fn p_pow(p: u64, k: i64) -> Q {
    let b = BigInt::from(p).pow(k.unsigned_abs() as u32);
    if k >= 0 {
        qb(b)
    } else {
        Q::new(BigInt::one(), b)
    }
}

/// Writes nonzero `x = p^k u` with `v_p(u) = 0`.
pub fn unit_part(x: &Q, p: u64) -> (i64, Q) {
    let k = vp(x, p).expect("unit_part of zero");
    (k, x / p_pow(p, k))
}

pub fn is_p_integral(x: &Q, p: u64) -> bool {
    vp_int(x.denom(), p) == 0
}

/// Residue of a p-integral rational modulo `p^k`, in `[0, p^k)`.
pub fn mod_pk(x: &Q, p: u64, k: u32) -> BigInt {
    let m = BigInt::from(p).pow(k);
    let inv = modinv(&x.denom().mod_floor(&m), &m).expect("denominator not invertible mod p^k");
    (x.numer() * inv).mod_floor(&m)
}

pub fn residue(x: &Q, p: u64) -> u64 {
    mod_pk(x, p, 1).to_u64().unwrap()
}

pub fn modinv(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    if !e.gcd.is_one() {
        return None;
    }
    Some(e.x.mod_floor(m))
}

pub fn ceil(x: &Q) -> BigInt {
    x.ceil().to_integer()
}

pub fn floor(x: &Q) -> BigInt {
    x.floor().to_integer()
}

pub fn to_i64(x: &BigInt) -> i64 {
    x.to_i64().expect("integer out of i64 range")
}

/// Valuation-like quantity in `Q ∪ {±∞}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ExtQ {
    NegInf,
    Fin(Q),
    PosInf,
}

impl ExtQ {
    pub fn fin(&self) -> Option<&Q> {
        match self {
            ExtQ::Fin(q) => Some(q),
            _ => None,
        }
    }

    pub fn from_vp(x: &Q, p: u64) -> ExtQ {
        match vp(x, p) {
            None => ExtQ::PosInf,
            Some(k) => ExtQ::Fin(qi(k)),
        }
    }

    /// Sum with the convention that `+∞ + −∞` does not occur for the callers here.
    pub fn add(&self, o: &ExtQ) -> ExtQ {
        match (self, o) {
            (ExtQ::Fin(a), ExtQ::Fin(b)) => ExtQ::Fin(a + b),
            (ExtQ::PosInf, ExtQ::NegInf) | (ExtQ::NegInf, ExtQ::PosInf) => {
                panic!("indeterminate valuation sum")
            }
            (ExtQ::PosInf, _) | (_, ExtQ::PosInf) => ExtQ::PosInf,
            _ => ExtQ::NegInf,
        }
    }

    pub fn neg(&self) -> ExtQ {
        match self {
            ExtQ::NegInf => ExtQ::PosInf,
            ExtQ::PosInf => ExtQ::NegInf,
            ExtQ::Fin(a) => ExtQ::Fin(-a),
        }
    }

    pub fn sub(&self, o: &ExtQ) -> ExtQ {
        self.add(&o.neg())
    }
}

impl PartialOrd for ExtQ {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtQ {
    fn cmp(&self, other: &Self) -> Ordering {
        use ExtQ::*;
        match (self, other) {
            (Fin(a), Fin(b)) => a.cmp(b),
            (NegInf, NegInf) | (PosInf, PosInf) => Ordering::Equal,
            (NegInf, _) | (_, PosInf) => Ordering::Less,
            _ => Ordering::Greater,
        }
    }
}

impl fmt::Display for ExtQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtQ::NegInf => write!(f, "-inf"),
            ExtQ::PosInf => write!(f, "+inf"),
            ExtQ::Fin(q) => write!(f, "{}", q),
        }
    }
}

/// Absolute value `p^{-v}` rendered from a valuation.
pub fn abs_from_val(p: u64, v: &ExtQ) -> String {
    match v {
        ExtQ::PosInf => "0".into(),
        ExtQ::NegInf => "inf".into(),
        ExtQ::Fin(q) => {
            let e = -q;
            if e.is_zero() {
                "1".into()
            } else {
                format!("{}^({})", p, e)
            }
        }
    }
}

pub fn sign_of(x: &BigInt) -> i32 {
    match x.sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

/// Legendre symbol `(a/p)` for `a` coprime to `p`.
pub fn legendre(a: &BigInt, p: u64) -> i32 {
    let pb = BigInt::from(p);
    let r = a.mod_floor(&pb);
    if r.is_zero() {
        return 0;
    }
    let e = (&pb - 1u32) / 2u32;
    if r.modpow(&e, &pb).is_one() {
        1
    } else {
        -1
    }
}

/// Legendre symbol of a p-adic unit rational.
pub fn legendre_q(u: &Q, p: u64) -> i32 {
    legendre(&BigInt::from(residue(u, p)), p)
}

/// Nonnegative square root of a perfect square rational.
pub fn rational_sqrt(x: &Q) -> Option<Q> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer().sqrt();
    let d = x.denom().sqrt();
    if &(&n * &n) == x.numer() && &(&d * &d) == x.denom() {
        Some(Q::new(n, d))
    } else {
        None
    }
}

pub fn fmt_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// `var - c` rendered without double signs: `T`, `T - 3`, `T + 1/3`.
pub fn fmt_shift(var: &str, c: &Q) -> String {
    if c.is_zero() {
        var.to_string()
    } else if c.is_negative() {
        format!("{} + {}", var, fmt_q(&-c))
    } else {
        format!("{} - {}", var, fmt_q(c))
    }
}

/// Parses `a`, `-a`, `a/b`.
pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        Some(Q::new(n, d))
    } else {
        let n: BigInt = s.parse().ok()?;
        Some(qb(n))
    }
}

pub fn abs_q(x: &Q) -> Q {
    x.abs()
}

pub fn zero() -> Q {
    Q::zero()
}

pub fn one() -> Q {
    Q::one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn valuations() {
        assert_eq!(vp(&qi(9), 3), Some(2));
        assert_eq!(vp(&qr(5, 27), 3), Some(-3));
        assert_eq!(vp(&qi(0), 3), None);
        assert_eq!(ExtQ::from_vp(&qi(0), 3), ExtQ::PosInf);
    }

    #[test]
    fn residues() {
        assert_eq!(mod_pk(&qr(1, 2), 3, 2), BigInt::from(5));
        assert_eq!(residue(&qi(-1), 5), 4);
    }

    #[test]
    fn ext_order() {
        assert!(ExtQ::NegInf < ExtQ::Fin(qi(-100)));
        assert!(ExtQ::Fin(qi(100)) < ExtQ::PosInf);
    }

    #[test]
    fn primes() {
        assert!(check_prime(2).is_err());
        assert!(check_prime(9).is_err());
        assert!(check_prime(7).is_ok());
    }
}

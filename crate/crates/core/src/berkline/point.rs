use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::arith::poly::Poly;
use crate::arith::ratfunc::RatFunc;
use crate::arith::rational::{
    ceil, check_prime, fmt_q, mod_pk, p_pow, parse_q, qb, qi, to_i64, vp, ExtQ, Q,
};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RigidCenter {
    Finite(Q),
    Infinity,
    /// Monic irreducible over `Q` of degree at least 2, standing for its roots.
    Poly(Poly),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    Rigid(RigidCenter),
    /// `eta_{a, p^{-s}}` with canonical center `a`.
    Eta {
        a: Q,
        s: Q,
    },
}

/// A representable point of the Berkovich projective line over `Q_p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BerkPoint {
    p: u64,
    kind: Kind,
}

/// Smallest-digit representative of the class `a + p^{ceil(s)} Z_p`.
pub fn canonical_center(a: &Q, s: &Q, p: u64) -> Q {
    let c = to_i64(&ceil(s));
    match vp(a, p) {
        None => Q::zero(),
        Some(k) if k >= c => Q::zero(),
        Some(k) => {
            let u = a / p_pow(p, k);
            let r = mod_pk(&u, p, (c - k) as u32);
            qb(r) * p_pow(p, k)
        }
    }
}

impl BerkPoint {
    pub fn eta(p: u64, a: Q, s: Q) -> BerkPoint {
        let a = canonical_center(&a, &s, p);
        BerkPoint {
            p,
            kind: Kind::Eta { a, s },
        }
    }

    pub fn gauss(p: u64) -> BerkPoint {
        BerkPoint::eta(p, Q::zero(), Q::zero())
    }

    pub fn rigid(p: u64, c: Q) -> BerkPoint {
        BerkPoint {
            p,
            kind: Kind::Rigid(RigidCenter::Finite(c)),
        }
    }

    pub fn infinity(p: u64) -> BerkPoint {
        BerkPoint {
            p,
            kind: Kind::Rigid(RigidCenter::Infinity),
        }
    }

    /// Rigid point given by a monic irreducible polynomial; degree-1 inputs become rational points.
    pub fn rigid_poly(p: u64, g: &Poly) -> Result<BerkPoint> {
        match g.deg() {
            d if d < 1 => Err(Error::InvalidPoint(format!("constant polynomial {}", g))),
            1 => Ok(BerkPoint::rigid(p, -g.monic().coeff(0))),
            _ => {
                let fac = crate::arith::divisor::factor_q(g)?;
                if fac.len() != 1 || fac[0].1 != 1 {
                    return Err(Error::InvalidPoint(format!(
                        "{} is not irreducible over Q",
                        g
                    )));
                }
                Ok(BerkPoint {
                    p,
                    kind: Kind::Rigid(RigidCenter::Poly(g.monic())),
                })
            }
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn kind(&self) -> &Kind {
        &self.kind
    }

    pub fn is_rigid(&self) -> bool {
        matches!(self.kind, Kind::Rigid(_))
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self.kind, Kind::Rigid(RigidCenter::Infinity))
    }

    /// Center and log-radius for points on the finite tree: Eta points and rational rigid points (`s = +inf`).
    pub fn center_s(&self) -> Option<(&Q, ExtQ)> {
        match &self.kind {
            Kind::Eta { a, s } => Some((a, ExtQ::Fin(s.clone()))),
            Kind::Rigid(RigidCenter::Finite(c)) => Some((c, ExtQ::PosInf)),
            _ => None,
        }
    }

    pub fn eta_parts(&self) -> Option<(&Q, &Q)> {
        match &self.kind {
            Kind::Eta { a, s } => Some((a, s)),
            _ => None,
        }
    }

    pub fn is_integral_eta(&self) -> bool {
        matches!(&self.kind, Kind::Eta { s, .. } if s.is_integer())
    }

    /// Berkovich type: 1 for rigid points, 2 for Eta points with rational log-radius.
    pub fn classify(&self) -> u8 {
        match self.kind {
            Kind::Rigid(_) => 1,
            Kind::Eta { .. } => 2,
        }
    }

    /// `-log_p |f|_x`, in `Q ∪ {±inf}`.
    pub fn val(&self, f: &RatFunc) -> Result<ExtQ> {
        Ok(self.val_poly(f.num())?.sub(&self.val_poly(f.den())?))
    }

    /// `-log_p |f|_x` for a polynomial.
    pub fn val_poly(&self, f: &Poly) -> Result<ExtQ> {
        if f.is_zero() {
            return Ok(ExtQ::PosInf);
        }
        let p = self.p;
        match &self.kind {
            Kind::Eta { a, s } => Ok(f.taylor(a).newton_val(p, s)),
            Kind::Rigid(RigidCenter::Finite(c)) => Ok(ExtQ::from_vp(&f.eval(c), p)),
            Kind::Rigid(RigidCenter::Infinity) => {
                if f.deg() > 0 {
                    Ok(ExtQ::NegInf)
                } else {
                    Ok(ExtQ::from_vp(&f.coeff(0), p))
                }
            }
            Kind::Rigid(RigidCenter::Poly(g)) => {
                if f.is_constant() {
                    Ok(ExtQ::from_vp(&f.coeff(0), p))
                } else {
                    Err(Error::Unsupported(format!(
                        "seminorm at the rigid point ({}) of degree {}",
                        g,
                        g.deg()
                    )))
                }
            }
        }
    }

    /// `x <= y`: `y` lies on the path from `x` to infinity.
    pub fn leq(&self, y: &BerkPoint) -> Result<bool> {
        if y.is_infinity() {
            return Ok(true);
        }
        if self.is_infinity() {
            return Ok(false);
        }
        let (a, sa) = self.finite_parts()?;
        let (b, sb) = y.finite_parts()?;
        match sb {
            ExtQ::PosInf => Ok(self == y),
            ExtQ::Fin(t) => {
                Ok(sa >= ExtQ::Fin(t.clone()) && ExtQ::from_vp(&(a - b), self.p) >= ExtQ::Fin(t))
            }
            ExtQ::NegInf => unreachable!(),
        }
    }

    pub fn lt(&self, y: &BerkPoint) -> Result<bool> {
        Ok(self != y && self.leq(y)?)
    }

    fn finite_parts(&self) -> Result<(&Q, ExtQ)> {
        self.center_s().ok_or_else(|| {
            Error::Unsupported(format!(
                "tree operation on the rigid point {} of higher degree",
                self
            ))
        })
    }

    /// Least common upper bound in the tree order (toward infinity).
    pub fn join(&self, y: &BerkPoint) -> Result<BerkPoint> {
        if self == y {
            return Err(Error::InvalidPoint(format!("join of {} with itself", self)));
        }
        self.join_or_self(y)
    }

    pub fn join_or_self(&self, y: &BerkPoint) -> Result<BerkPoint> {
        if self == y {
            return Ok(self.clone());
        }
        if self.is_infinity() || y.is_infinity() {
            self.finite_or_inf()?;
            y.finite_or_inf()?;
            return Ok(BerkPoint::infinity(self.p));
        }
        let (a, sa) = self.finite_parts()?;
        let (b, sb) = y.finite_parts()?;
        let d = ExtQ::from_vp(&(a - b), self.p);
        let m = sa.min(sb).min(d);
        match m {
            ExtQ::Fin(m) => Ok(BerkPoint::eta(self.p, a.clone(), m)),
            _ => unreachable!("distinct points have a finite join"),
        }
    }

    fn finite_or_inf(&self) -> Result<()> {
        if self.is_infinity() {
            Ok(())
        } else {
            self.finite_parts().map(|_| ())
        }
    }

    /// Retraction onto the path from the rigid point `b` to infinity.
    pub fn retract(&self, b: &Q) -> Result<BerkPoint> {
        if self.is_infinity() {
            return Ok(self.clone());
        }
        let (a, s) = self.finite_parts()?;
        let d = ExtQ::from_vp(&(a - b), self.p);
        match s.min(d) {
            ExtQ::PosInf => Ok(BerkPoint::rigid(self.p, b.clone())),
            ExtQ::Fin(m) => Ok(BerkPoint::eta(self.p, b.clone(), m)),
            ExtQ::NegInf => unreachable!(),
        }
    }

    /// Point `d` steps down from `self` toward the finite point `x` (or up toward infinity when `x` is infinity).
    /// Requires the walk to stay on the segment.
    pub fn step_toward(&self, x: &BerkPoint, d: &Q) -> Result<BerkPoint> {
        let (a, s) = self
            .eta_parts()
            .ok_or_else(|| Error::InvalidPoint("walk from a rigid point".into()))?;
        if x.is_infinity() {
            return Ok(BerkPoint::eta(self.p, a.clone(), s - d));
        }
        let (b, _) = x.finite_parts()?;
        if x.leq(self)? {
            Ok(BerkPoint::eta(self.p, b.clone(), s + d))
        } else {
            Ok(BerkPoint::eta(self.p, a.clone(), s - d))
        }
    }

    /// Distance along the tree between two Eta points.
    pub fn distance(&self, y: &BerkPoint) -> Result<Q> {
        let (_, s) = self
            .eta_parts()
            .ok_or_else(|| Error::InvalidPoint("distance from a rigid point".into()))?;
        let (_, t) = y
            .eta_parts()
            .ok_or_else(|| Error::InvalidPoint("distance to a rigid point".into()))?;
        let j = self.join_or_self(y)?;
        let (_, m) = j.eta_parts().unwrap();
        Ok((s - m) + (t - m))
    }

    /// Parses `rigid(c)`, `rigid(inf)`, `eta(a,s)`.
    pub fn parse(p: u64, text: &str) -> Result<BerkPoint> {
        check_prime(p)?;
        let t = text.trim();
        let bad = || Error::Parse {
            pos: 0,
            msg: format!("expected rigid(c), rigid(inf) or eta(a,s), got '{}'", text),
        };
        let inner = |pre: &str| -> Option<String> {
            t.strip_prefix(pre)
                .and_then(|r| r.strip_suffix(')'))
                .map(|s| s.to_string())
        };
        if let Some(body) = inner("rigid(") {
            let b = body.trim();
            if b == "inf" || b == "infinity" {
                return Ok(BerkPoint::infinity(p));
            }
            return parse_q(b).map(|c| BerkPoint::rigid(p, c)).ok_or_else(bad);
        }
        if let Some(body) = inner("eta(") {
            let (a, s) = body.split_once(',').ok_or_else(bad)?;
            let a = parse_q(a).ok_or_else(bad)?;
            let s = parse_q(s).ok_or_else(bad)?;
            return Ok(BerkPoint::eta(p, a, s));
        }
        Err(bad())
    }

    fn sort_key(&self) -> (u8, Q, Q) {
        match &self.kind {
            Kind::Eta { a, s } => (0, s.clone(), a.clone()),
            Kind::Rigid(RigidCenter::Finite(c)) => (1, Q::zero(), c.clone()),
            Kind::Rigid(RigidCenter::Poly(g)) => (2, qi(g.deg()), Q::zero()),
            Kind::Rigid(RigidCenter::Infinity) => (3, Q::zero(), Q::zero()),
        }
    }
}

impl PartialOrd for BerkPoint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for BerkPoint {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key()
            .cmp(&other.sort_key())
            .then_with(|| format!("{}", self).cmp(&format!("{}", other)))
    }
}

impl fmt::Display for BerkPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            Kind::Eta { a, s } => write!(f, "eta({},{})", fmt_q(a), fmt_q(s)),
            Kind::Rigid(RigidCenter::Finite(c)) => write!(f, "rigid({})", fmt_q(c)),
            Kind::Rigid(RigidCenter::Infinity) => write!(f, "rigid(inf)"),
            Kind::Rigid(RigidCenter::Poly(g)) => write!(f, "rigid[{}]", g),
        }
    }
}

/// Integer point of the segment `[x, y]` at `floor(len/2)` steps from `x`, for Eta points with integer radii.
pub fn integer_midpoint(x: &BerkPoint, y: &BerkPoint) -> Result<Option<BerkPoint>> {
    let len = x.distance(y)?;
    let half = Q::from_integer(len.to_integer().div_floor(&BigInt::from(2)));
    if half.is_zero() {
        return Ok(None);
    }
    let j = x.join_or_self(y)?;
    let (_, sx) = x.eta_parts().unwrap();
    let (_, sj) = j.eta_parts().unwrap();
    let up = sx - sj;
    if half <= up {
        Ok(Some(x.step_toward(&BerkPoint::infinity(x.p), &half)?))
    } else {
        let rest = &half - &up;
        let (b, _) = y.eta_parts().unwrap();
        let (_, sj) = j.eta_parts().unwrap();
        Ok(Some(BerkPoint::eta(x.p, b.clone(), sj + rest)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::qr;

    #[test]
    fn canonical_forms() {
        assert_eq!(
            BerkPoint::eta(3, qi(3), qi(1)),
            BerkPoint::eta(3, qi(0), qi(1))
        );
        assert_eq!(
            BerkPoint::eta(3, qi(4), qi(2)).eta_parts().unwrap().0,
            &qi(4)
        );
        assert_eq!(
            BerkPoint::eta(3, qi(1), qi(-1)),
            BerkPoint::gauss(3)
                .step_toward(&BerkPoint::infinity(3), &qi(1))
                .unwrap()
        );
        assert_eq!(
            BerkPoint::eta(3, qr(1, 3), qi(0)).eta_parts().unwrap().0,
            &qr(1, 3)
        );
        assert_eq!(
            BerkPoint::eta(3, qr(10, 3), qi(1)).eta_parts().unwrap().0,
            &qr(1, 3)
        );
    }

    #[test]
    fn seminorm_examples() {
        let t = RatFunc::t();
        assert_eq!(BerkPoint::gauss(3).val(&t).unwrap(), ExtQ::Fin(qi(0)));
        let f = RatFunc::poly(Poly::from_ints(&[-3, 1]));
        assert_eq!(
            BerkPoint::eta(3, qi(0), qi(1)).val(&f).unwrap(),
            ExtQ::Fin(qi(1))
        );
        let g = RatFunc::poly(Poly::from_ints(&[1, 3]));
        assert_eq!(
            BerkPoint::rigid(3, qi(0)).val(&g).unwrap(),
            ExtQ::Fin(qi(0))
        );
    }

    #[test]
    fn tree_examples() {
        let p = 3;
        let j = BerkPoint::rigid(p, qi(0))
            .join(&BerkPoint::rigid(p, qi(1)))
            .unwrap();
        assert_eq!(j, BerkPoint::gauss(p));
        let j = BerkPoint::rigid(p, qi(0))
            .join(&BerkPoint::rigid(p, qi(3)))
            .unwrap();
        assert_eq!(j, BerkPoint::eta(p, qi(0), qi(1)));
        let j = BerkPoint::eta(p, qi(0), qi(1))
            .join(&BerkPoint::eta(p, qi(1), qi(1)))
            .unwrap();
        assert_eq!(j, BerkPoint::gauss(p));
        assert!(BerkPoint::gauss(p).join(&BerkPoint::gauss(p)).is_err());
        assert_eq!(
            BerkPoint::eta(p, qi(1), qi(2)).retract(&qi(0)).unwrap(),
            BerkPoint::gauss(p)
        );
        assert_eq!(
            BerkPoint::rigid(p, qi(9)).retract(&qi(0)).unwrap(),
            BerkPoint::eta(p, qi(0), qi(2))
        );
    }

    #[test]
    fn midpoints() {
        let a = BerkPoint::eta(3, qi(0), qi(1));
        let b = BerkPoint::eta(3, qi(0), qi(-1));
        assert_eq!(integer_midpoint(&a, &b).unwrap(), Some(BerkPoint::gauss(3)));
        let c = BerkPoint::eta(3, qi(1), qi(1));
        assert_eq!(integer_midpoint(&a, &c).unwrap(), Some(BerkPoint::gauss(3)));
        assert_eq!(integer_midpoint(&a, &BerkPoint::gauss(3)).unwrap(), None);
    }

    #[test]
    fn parsing() {
        assert_eq!(
            BerkPoint::parse(3, "eta(0, 1/2)").unwrap(),
            BerkPoint::eta(3, qi(0), qr(1, 2))
        );
        assert_eq!(
            BerkPoint::parse(3, "rigid(inf)").unwrap(),
            BerkPoint::infinity(3)
        );
        assert!(BerkPoint::parse(3, "foo").is_err());
    }
}

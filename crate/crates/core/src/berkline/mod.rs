//! Points of the Berkovich projective line over `Q_p`, the tree order, discs and residue fields.

pub mod disc;
pub mod point;

pub use disc::{in_disc, recenter, DiscDesc, Orientation};
pub use point::{canonical_center, integer_midpoint, BerkPoint, Kind, RigidCenter};

use crate::arith::field::BaseFieldDesc;
use crate::arith::ratfunc::RatFunc;
use crate::arith::rational::{fmt_q, ExtQ, Q};
use crate::error::Result;

/// `-log_p |f|_x`.
pub fn seminorm(f: &RatFunc, x: &BerkPoint) -> Result<ExtQ> {
    x.val(f)
}

pub fn classify(x: &BerkPoint) -> u8 {
    x.classify()
}

pub fn join(x: &BerkPoint, y: &BerkPoint) -> Result<BerkPoint> {
    x.join(y)
}

pub fn retract(b: &Q, x: &BerkPoint) -> Result<BerkPoint> {
    x.retract(b)
}

/// Image of `x` under `T -> T + w`.
pub fn translate_point(x: &BerkPoint, w: &Q) -> BerkPoint {
    match x.kind() {
        Kind::Eta { a, s } => BerkPoint::eta(x.p(), a + w, s.clone()),
        Kind::Rigid(RigidCenter::Finite(c)) => BerkPoint::rigid(x.p(), c + w),
        _ => x.clone(),
    }
}

/// The residue field: `F_p` at rational rigid points, `F_p(t)` at Eta points with integer radius.
pub fn residue_field_desc(x: &BerkPoint) -> BaseFieldDesc {
    let p = x.p();
    match x.kind() {
        Kind::Rigid(RigidCenter::Finite(_)) | Kind::Rigid(RigidCenter::Infinity) => {
            BaseFieldDesc::PAdicRationals { p }
        }
        Kind::Rigid(RigidCenter::Poly(g)) => BaseFieldDesc::PAdicExtension {
            p,
            degree: g.deg() as u32,
            minpoly: g.to_string(),
        },
        Kind::Eta { a, s } if s.is_integer() => BaseFieldDesc::RationalFunctionField {
            p,
            d: 1,
            coordinate: eta_coordinate(p, a, s),
        },
        Kind::Eta { s, .. } => BaseFieldDesc::Undetermined {
            caveat: format!(
                "log-radius {} is not an integer: the residue field is a function field over a constant extension of F_{}",
                fmt_q(s),
                p
            ),
        },
    }
}

/// Label of the reduced coordinate `t = red(p^{-s}(T - a))`.
pub fn eta_coordinate(p: u64, a: &Q, s: &Q) -> String {
    let shift = if num_traits::Zero::is_zero(a) {
        "T".to_string()
    } else {
        format!("({})", crate::arith::rational::fmt_shift("T", a))
    };
    if num_traits::Zero::is_zero(s) {
        format!("t = red {}", shift)
    } else {
        format!("t = red {}/{}^{}", shift, p, fmt_q(s))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::poly::Poly;
    use crate::arith::rational::{qi, qr};

    #[test]
    fn residue_fields() {
        let d = residue_field_desc(&BerkPoint::gauss(3));
        assert!(matches!(
            d,
            BaseFieldDesc::RationalFunctionField { p: 3, d: 1, .. }
        ));
        assert_eq!(
            residue_field_desc(&BerkPoint::rigid(3, qi(0))),
            BaseFieldDesc::PAdicRationals { p: 3 }
        );
        match residue_field_desc(&BerkPoint::eta(3, qi(0), qi(1))) {
            BaseFieldDesc::RationalFunctionField { coordinate, .. } => {
                assert_eq!(coordinate, "t = red T/3^1")
            }
            other => panic!("{:?}", other),
        }
        assert!(matches!(
            residue_field_desc(&BerkPoint::eta(3, qi(0), qr(1, 2))),
            BaseFieldDesc::Undetermined { .. }
        ));
        let g = BerkPoint::rigid_poly(3, &Poly::from_ints(&[1, 0, 1])).unwrap();
        assert!(matches!(
            residue_field_desc(&g),
            BaseFieldDesc::PAdicExtension { degree: 2, .. }
        ));
    }

    #[test]
    fn classification() {
        assert_eq!(classify(&BerkPoint::rigid(3, qi(5))), 1);
        assert_eq!(classify(&BerkPoint::gauss(3)), 2);
        assert_eq!(classify(&BerkPoint::eta(3, qi(2), qr(7, 3))), 2);
    }
}

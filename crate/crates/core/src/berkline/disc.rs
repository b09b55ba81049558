use std::fmt;

use crate::arith::poly::Poly;
use crate::arith::rational::{fmt_q, fmt_shift, ExtQ, Q};
use crate::error::{Error, Result};

use super::point::BerkPoint;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    /// `|T - a| < r` or `<= r`.
    Inward,
    /// `|T - a| > r` or `>= r`, containing infinity.
    Outward,
}

/// Disc in the Berkovich line with center `a` and radius `p^{-s}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DiscDesc {
    pub p: u64,
    pub center: Q,
    pub s: Q,
    pub closed: bool,
    pub orientation: Orientation,
}

impl DiscDesc {
    pub fn open(p: u64, center: Q, s: Q) -> DiscDesc {
        DiscDesc {
            p,
            center,
            s,
            closed: false,
            orientation: Orientation::Inward,
        }
    }

    pub fn closed(p: u64, center: Q, s: Q) -> DiscDesc {
        DiscDesc {
            p,
            center,
            s,
            closed: true,
            orientation: Orientation::Inward,
        }
    }

    /// Complement of this disc.
    pub fn complement(&self) -> DiscDesc {
        DiscDesc {
            p: self.p,
            center: self.center.clone(),
            s: self.s.clone(),
            closed: !self.closed,
            orientation: match self.orientation {
                Orientation::Inward => Orientation::Outward,
                Orientation::Outward => Orientation::Inward,
            },
        }
    }
}

impl fmt::Display for DiscDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let op = match (self.orientation, self.closed) {
            (Orientation::Inward, true) => "<=",
            (Orientation::Inward, false) => "<",
            (Orientation::Outward, true) => ">=",
            (Orientation::Outward, false) => ">",
        };
        write!(
            f,
            "{{|{}| {} p^({})}}",
            fmt_shift("T", &self.center),
            op,
            fmt_q(&-&self.s)
        )
    }
}

pub fn in_disc(x: &BerkPoint, d: &DiscDesc) -> Result<bool> {
    let v = x.val_poly(&Poly::linear(&d.center))?;
    let s = ExtQ::Fin(d.s.clone());
    Ok(match (d.orientation, d.closed) {
        (Orientation::Inward, true) => v >= s,
        (Orientation::Inward, false) => v > s,
        (Orientation::Outward, true) => v <= s,
        (Orientation::Outward, false) => v < s,
    })
}

/// The same disc written with center `beta`. For inward discs `beta` must lie in the disc;
/// for outward discs it must lie in the bounded complement.
pub fn recenter(d: &DiscDesc, beta: &Q) -> Result<DiscDesc> {
    let inside = in_disc(&BerkPoint::rigid(d.p, beta.clone()), d)?;
    let ok = match d.orientation {
        Orientation::Inward => inside,
        Orientation::Outward => !inside,
    };
    if !ok {
        return Err(Error::Precondition(format!(
            "{} cannot be recentered at {}",
            d,
            fmt_q(beta)
        )));
    }
    Ok(DiscDesc {
        center: beta.clone(),
        ..d.clone()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::qi;

    #[test]
    fn disc_examples() {
        let d = DiscDesc::open(3, qi(0), qi(0));
        assert!(in_disc(&BerkPoint::rigid(3, qi(3)), &d).unwrap());
        assert!(!in_disc(&BerkPoint::gauss(3), &d).unwrap());
        let e = recenter(&d, &qi(3)).unwrap();
        assert_eq!(e.center, qi(3));
        assert!(recenter(&d, &qi(1)).is_err());
        let o = d.complement();
        assert!(in_disc(&BerkPoint::infinity(3), &o).unwrap());
        assert!(in_disc(&BerkPoint::gauss(3), &o).unwrap());
        assert!(recenter(&o, &qi(6)).is_ok());
        assert!(recenter(&o, &qi(1)).is_err());
    }
}

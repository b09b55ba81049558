use std::fmt;

use num_traits::Zero;

use crate::arith::ff::{factor, FpPoly};
use crate::arith::poly::Poly;
use crate::arith::rational::{fmt_q, p_pow, Q};
use crate::berkline::{in_disc, BerkPoint, DiscDesc, Kind};
use crate::error::{Error, Result};

use super::reduce::{int_s, reduce_poly};

/// Open subset of the line cut out by one complement component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Region {
    /// Open residue discs at `Eta(a, s)` in the directions of the roots of `g`.
    ResidueClass { a: Q, s: Q, g: FpPoly },
    /// The line (`outer = None`) or an open disc `|T - c| < p^{-s}`, minus closed discs.
    Holed {
        outer: Option<(Q, Q)>,
        holes: Vec<(Q, Q)>,
    },
}

impl Region {
    pub fn contains_infinity(&self) -> bool {
        matches!(self, Region::Holed { outer: None, .. })
    }

    pub fn contains(&self, x: &BerkPoint) -> Result<bool> {
        let p = x.p();
        match self {
            Region::ResidueClass { a, s, g } => {
                let v = BerkPoint::eta(p, a.clone(), s.clone());
                if !x.lt(&v)? {
                    return Ok(false);
                }
                let c = match x.kind() {
                    Kind::Eta { a: b, .. } => b,
                    Kind::Rigid(crate::berkline::RigidCenter::Finite(b)) => b,
                    _ => return Ok(false),
                };
                let t = (c - a) / p_pow(p, int_s(s)?);
                let r = FpPoly::reduce(p, &[t]).coeff(0);
                Ok(g.eval(r) == 0)
            }
            Region::Holed { outer, holes } => {
                if let Some((c, s)) = outer {
                    if !in_disc(x, &DiscDesc::open(p, c.clone(), s.clone()))? {
                        return Ok(false);
                    }
                }
                for (c, s) in holes {
                    if in_disc(x, &DiscDesc::closed(p, c.clone(), s.clone()))? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
        }
    }

    /// Number of roots of `f` (over an algebraic closure, with multiplicity) in the region.
    pub fn root_count(&self, f: &Poly, p: u64) -> Result<usize> {
        if f.is_zero() {
            return Err(Error::Zero("root count of the zero polynomial"));
        }
        match self {
            Region::ResidueClass { a, s, g } => {
                let red = reduce_poly(f, a, s, p)?;
                Ok(red.val_at(g) as usize * g.deg() as usize)
            }
            Region::Holed { outer, holes } => {
                let mut n = match outer {
                    None => f.deg() as usize,
                    Some((c, s)) => f.taylor(c).newton_argmin(p, s).map(|x| x.0).unwrap_or(0),
                };
                for (c, s) in holes {
                    let k = f.taylor(c).newton_argmin(p, s).map(|x| x.1).unwrap_or(0);
                    n = n
                        .checked_sub(k)
                        .ok_or_else(|| Error::Inconsistent("negative root count".into()))?;
                }
                Ok(n)
            }
        }
    }

    /// Zeros minus poles of `num/den` at infinity when the region contains it.
    pub fn order_at_infinity(num: &Poly, den: &Poly) -> i64 {
        den.deg() - num.deg()
    }
}

fn fmt_disc(p: u64, c: &Q, s: &Q, op: &str) -> String {
    let lhs = format!("|{}|", crate::arith::rational::fmt_shift("T", c));
    let r = -s;
    let rhs = if r.is_zero() {
        "1".to_string()
    } else {
        format!("{}^({})", p, fmt_q(&r))
    };
    format!("{} {} {}", lhs, op, rhs)
}

impl Region {
    pub fn describe(&self, p: u64) -> String {
        match self {
            Region::ResidueClass { a, s, g } => {
                let v = BerkPoint::eta(p, a.clone(), s.clone());
                format!(
                    "open residue discs at {} in the directions {}(t) = 0",
                    v,
                    g.fmt_var("t")
                )
            }
            Region::Holed { outer, holes } => {
                let mut parts = vec![];
                if let Some((c, s)) = outer {
                    parts.push(fmt_disc(p, c, s, "<"));
                }
                for (c, s) in holes {
                    parts.push(fmt_disc(p, c, s, ">"));
                }
                if parts.is_empty() {
                    "whole line".into()
                } else {
                    parts.join(" and ")
                }
            }
        }
    }
}

/// Shape of a complement component.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ComponentShape {
    Disc,
    Annulus,
    /// More than two boundary vertices: the set is not a vertex set in the strict sense.
    Junction,
}

impl fmt::Display for ComponentShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ComponentShape::Disc => "open disc",
            ComponentShape::Annulus => "open annulus",
            ComponentShape::Junction => "junction",
        };
        write!(f, "{}", s)
    }
}

/// Degree-1 and higher Galois classes of the reduction of `f` at `Eta(a,s)`.
pub fn residue_classes(f: &Poly, a: &Q, s: &Q, p: u64) -> Result<Vec<FpPoly>> {
    let red = reduce_poly(f, a, s, p)?;
    Ok(factor(&red).factors.into_iter().map(|(g, _)| g).collect())
}

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;

use crate::arith::rational::{ceil, floor, qb, qi, qr, Q};
use crate::berkline::{in_disc, integer_midpoint, BerkPoint, DiscDesc, Kind, RigidCenter};
use crate::error::{Error, Result};

use super::fiber::VertexSet;

/// A rigid point together with a disc around it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Neighborhood {
    pub z: BerkPoint,
    pub disc: DiscDesc,
}

impl Neighborhood {
    pub fn new(z: BerkPoint, disc: DiscDesc) -> Result<Neighborhood> {
        if !z.is_rigid() {
            return Err(Error::InvalidPoint(format!("{} is not a rigid point", z)));
        }
        if !in_disc(&z, &disc)? {
            return Err(Error::Precondition(format!(
                "{} does not contain {}",
                disc, z
            )));
        }
        Ok(Neighborhood { z, disc })
    }

    pub fn boundary(&self) -> BerkPoint {
        BerkPoint::eta(self.disc.p, self.disc.center.clone(), self.disc.s.clone())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    C1,
    C2,
    C3,
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Variant> {
        match s.to_ascii_uppercase().as_str() {
            "C1" => Ok(Variant::C1),
            "C2" => Ok(Variant::C2),
            "C3" => Ok(Variant::C3),
            _ => Err(Error::Parse {
                pos: 0,
                msg: format!("unknown variant '{}', expected C1, C2 or C3", s),
            }),
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Variant::C1 => "C1",
            Variant::C2 => "C2",
            Variant::C3 => "C3",
        };
        write!(f, "{}", s)
    }
}

fn covered(x: &BerkPoint, discs: &[DiscDesc]) -> Result<bool> {
    for d in discs {
        if in_disc(x, d)? {
            return Ok(true);
        }
    }
    Ok(false)
}

fn center_s(x: &BerkPoint) -> Option<(Q, Q)> {
    match x.kind() {
        Kind::Eta { a, s } => Some((a.clone(), s.clone())),
        _ => None,
    }
}

/// Nodes of the tree spanned by the disc boundaries, their centers and infinity, closed under joins,
/// followed by one interior point of every edge between adjacent nodes.
fn test_points(p: u64, discs: &[DiscDesc]) -> Result<Vec<BerkPoint>> {
    let mut base = vec![BerkPoint::infinity(p), BerkPoint::gauss(p)];
    for d in discs {
        base.push(BerkPoint::eta(p, d.center.clone(), d.s.clone()));
        base.push(BerkPoint::rigid(p, d.center.clone()));
    }
    let mut nodes = base.clone();
    for i in 0..base.len() {
        for j in i + 1..base.len() {
            nodes.push(base[i].join_or_self(&base[j])?);
        }
    }
    nodes.sort();
    nodes.dedup();
    let mut out = nodes.clone();
    for n in &nodes {
        let mut parent: Option<&BerkPoint> = None;
        for q in &nodes {
            if n.lt(q)? && parent.is_none_or(|b| q.lt(b).unwrap_or(false)) {
                parent = Some(q);
            }
        }
        let Some(q) = parent else { continue };
        let mid = match (n.kind(), center_s(q)) {
            (Kind::Rigid(RigidCenter::Finite(c)), Some((_, sq))) => {
                BerkPoint::eta(p, c.clone(), sq + qi(1))
            }
            (Kind::Rigid(RigidCenter::Finite(c)), None) => BerkPoint::eta(p, c.clone(), qi(0)),
            (Kind::Eta { a, s }, None) => BerkPoint::eta(p, a.clone(), s - qi(1)),
            (Kind::Eta { a, s }, Some((_, sq))) => {
                BerkPoint::eta(p, a.clone(), (s + sq) * qr(1, 2))
            }
            _ => continue,
        };
        out.push(mid);
    }
    Ok(out)
}

/// A point outside every disc, or `None` when the discs cover the line.
pub fn uncovered_point(p: u64, discs: &[DiscDesc]) -> Result<Option<BerkPoint>> {
    for x in test_points(p, discs)? {
        if !covered(&x, discs)? {
            return Ok(Some(x));
        }
    }
    Ok(None)
}

/// Integral Eta points near the test points, used to pick the extra vertex outside the neighborhoods.
fn integral_candidates(p: u64, discs: &[DiscDesc]) -> Result<Vec<BerkPoint>> {
    let smax = discs
        .iter()
        .map(|d| ceil(&d.s))
        .max()
        .map(qb)
        .unwrap_or_else(Q::zero);
    let smin = discs
        .iter()
        .map(|d| floor(&d.s))
        .min()
        .map(qb)
        .unwrap_or_else(Q::zero);
    let mut out = vec![];
    for x in test_points(p, discs)? {
        match x.kind() {
            Kind::Eta { a, s } => {
                out.push(BerkPoint::eta(p, a.clone(), qb(floor(s))));
                out.push(BerkPoint::eta(p, a.clone(), qb(ceil(s))));
            }
            Kind::Rigid(RigidCenter::Finite(c)) => {
                out.push(BerkPoint::eta(p, c.clone(), &smax + qi(1)))
            }
            Kind::Rigid(RigidCenter::Infinity) => {
                out.push(BerkPoint::eta(p, Q::zero(), &smin - qi(1)))
            }
            _ => {}
        }
    }
    Ok(out)
}

pub fn build_model(
    p: u64,
    neighborhoods: &[Neighborhood],
    variant: Variant,
    s0: Option<BerkPoint>,
) -> Result<VertexSet> {
    let discs: Vec<DiscDesc> = neighborhoods.iter().map(|n| n.disc.clone()).collect();
    if uncovered_point(p, &discs)?.is_none() {
        return Err(Error::Precondition(
            "the neighborhoods cover the whole line".into(),
        ));
    }
    let boundaries: Vec<BerkPoint> = neighborhoods.iter().map(|n| n.boundary()).collect();
    let mut pts = boundaries.clone();
    if pts.is_empty() {
        pts.push(BerkPoint::gauss(p));
    }
    if variant != Variant::C1 {
        let s0 = match s0 {
            Some(x) => {
                if covered(&x, &discs)? {
                    return Err(Error::Precondition(format!(
                        "{} lies inside a neighborhood",
                        x
                    )));
                }
                x
            }
            None => {
                let mut pick = None;
                for x in integral_candidates(p, &discs)? {
                    if !covered(&x, &discs)? {
                        pick = Some(x);
                        break;
                    }
                }
                pick.ok_or_else(|| {
                    Error::Unsupported(
                        "no type 2 point with integer radius lies outside the neighborhoods".into(),
                    )
                })?
            }
        };
        pts.push(s0);
    }
    if variant == Variant::C3 {
        for i in 0..boundaries.len() {
            for j in i + 1..boundaries.len() {
                if boundaries[i] != boundaries[j] {
                    if let Some(m) = integer_midpoint(&boundaries[i], &boundaries[j])? {
                        pts.push(m);
                    }
                }
            }
        }
    }
    VertexSet::new(p, pts)
}

/// Adds all pairwise joins and every integer point of the hull, so that all edges have length one.
pub fn regularize(s: &VertexSet) -> Result<VertexSet> {
    let p = s.p();
    let base = s.points().to_vec();
    let mut nodes = base.clone();
    for i in 0..base.len() {
        for j in i + 1..base.len() {
            nodes.push(base[i].join(&base[j])?);
        }
    }
    nodes.sort();
    nodes.dedup();
    let mut out = nodes.clone();
    for n in &nodes {
        let mut parent: Option<&BerkPoint> = None;
        for q in &nodes {
            if n.lt(q)? && parent.is_none_or(|b| q.lt(b).unwrap_or(false)) {
                parent = Some(q);
            }
        }
        if let Some(q) = parent {
            let len = n.distance(q)?;
            let mut k = qi(1);
            while k < len {
                out.push(n.step_toward(q, &k)?);
                k += qi(1);
            }
        }
    }
    VertexSet::new(p, out)
}

use std::fmt;

use crate::arith::ff::FpPoly;
use crate::arith::rational::{fmt_q, p_pow, qi, Q};
use crate::berkline::{BerkPoint, Kind};
use crate::error::{Error, Result};

use super::reduce::int_s;
use super::region::{ComponentShape, Region};

/// Finite set of Eta points with integer log-radii, sorted and without repetition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexSet {
    p: u64,
    points: Vec<BerkPoint>,
}

impl VertexSet {
    pub fn new(p: u64, points: Vec<BerkPoint>) -> Result<VertexSet> {
        crate::arith::rational::check_prime(p)?;
        if points.is_empty() {
            return Err(Error::InvalidPoint("empty vertex set".into()));
        }
        for x in &points {
            if x.p() != p || !x.is_integral_eta() {
                return Err(Error::InvalidPoint(format!(
                    "{} is not an Eta point with integer log-radius",
                    x
                )));
            }
        }
        let mut points = points;
        points.sort();
        points.dedup();
        Ok(VertexSet { p, points })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn points(&self) -> &[BerkPoint] {
        &self.points
    }

    pub fn contains(&self, x: &BerkPoint) -> bool {
        self.points.contains(x)
    }

    pub fn union(&self, extra: &[BerkPoint]) -> Result<VertexSet> {
        let mut pts = self.points.clone();
        pts.extend(extra.iter().cloned());
        VertexSet::new(self.p, pts)
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = self.points.iter().map(|x| x.to_string()).collect();
        write!(f, "{{{}}}", v.join(", "))
    }
}

/// A closed point of the residue line of a vertex: infinity, or a monic irreducible in `t`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    Up,
    Down(FpPoly),
}

impl Direction {
    pub fn rational(p: u64, c: u64) -> Direction {
        Direction::Down(FpPoly::linear(p, c))
    }

    pub fn degree(&self) -> u32 {
        match self {
            Direction::Up => 1,
            Direction::Down(g) => g.deg() as u32,
        }
    }

    /// The rational value of `t` for degree-1 finite directions.
    pub fn root(&self) -> Option<u64> {
        match self {
            Direction::Down(g) if g.deg() == 1 => Some((g.p - g.coeff(0)) % g.p),
            _ => None,
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Direction::Up => write!(f, "t=inf"),
            Direction::Down(g) => match self.root() {
                Some(c) => write!(f, "t={}", c),
                None => write!(f, "{}=0", g.fmt_var("t")),
            },
        }
    }
}

/// Direction at the integral Eta point `v` of the branch containing `x != v`.
pub fn direction_at(v: &BerkPoint, x: &BerkPoint) -> Result<Direction> {
    let (a, s) = v
        .eta_parts()
        .ok_or_else(|| Error::InvalidPoint(format!("{} is not an Eta point", v)))?;
    if !x.leq(v)? {
        return Ok(Direction::Up);
    }
    let (c, _) = x.center_s().unwrap();
    let t = (c - a) / p_pow(v.p(), int_s(s)?);
    let r = FpPoly::reduce(v.p(), &[t]).coeff(0);
    Ok(Direction::rational(v.p(), r))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FiberPoint {
    Generic(usize),
    Smooth {
        vertex: usize,
        dir: Direction,
    },
    Double(usize),
    /// Image of a complement component with three or more boundary vertices.
    Junction(usize),
}

impl FiberPoint {
    pub fn is_closed(&self) -> bool {
        !matches!(self, FiberPoint::Generic(_))
    }
}

/// Double point: the annulus between `a_end` and `b_end`; `alpha` vanishes along `a_end`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub a_end: usize,
    pub b_end: usize,
    pub length: i64,
    /// Branch point outside the vertex set when the annulus contains infinity.
    pub via: Option<BerkPoint>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Junction {
    pub top: BerkPoint,
    pub boundary: Vec<usize>,
    pub region: Region,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Group {
    Edge(usize),
    Junction(usize),
}

/// Dual graph of the special fiber attached to a vertex set.
#[derive(Clone, Debug)]
pub struct SpecialFiber {
    pub p: u64,
    pub vertices: Vec<BerkPoint>,
    /// Vertices together with their pairwise joins.
    pub nodes: Vec<BerkPoint>,
    pub parent: Vec<Option<usize>>,
    pub edges: Vec<Edge>,
    pub junctions: Vec<Junction>,
    vertex_of: Vec<Option<usize>>,
    group_of: Vec<Option<Group>>,
}

pub fn dual_graph(s: &VertexSet) -> Result<SpecialFiber> {
    let p = s.p();
    let vertices = s.points().to_vec();
    let mut nodes = vertices.clone();
    for i in 0..vertices.len() {
        for j in i + 1..vertices.len() {
            nodes.push(vertices[i].join(&vertices[j])?);
        }
    }
    nodes.sort();
    nodes.dedup();
    let n = nodes.len();
    let mut parent = vec![None; n];
    for i in 0..n {
        let mut best: Option<usize> = None;
        for j in 0..n {
            if nodes[i].lt(&nodes[j])?
                && best.is_none_or(|b| nodes[j].lt(&nodes[b]).unwrap_or(false))
            {
                best = Some(j);
            }
        }
        parent[i] = best;
    }
    let vertex_of: Vec<Option<usize>> = nodes
        .iter()
        .map(|x| vertices.iter().position(|v| v == x))
        .collect();

    let mut edges = vec![];
    for i in 0..n {
        if let (Some(u), Some(w)) = (vertex_of[i], parent[i].and_then(|j| vertex_of[j])) {
            edges.push(Edge {
                a_end: u,
                b_end: w,
                length: eta_s(&nodes[i]) - eta_s(&nodes[parent[i].unwrap()]),
                via: None,
            });
        }
    }

    // Connected groups of hull nodes outside the vertex set.
    let mut root: Vec<usize> = (0..n).collect();
    fn find(r: &mut [usize], i: usize) -> usize {
        let mut i = i;
        while r[i] != i {
            r[i] = r[r[i]];
            i = r[i];
        }
        i
    }
    for i in 0..n {
        if vertex_of[i].is_none() {
            if let Some(j) = parent[i] {
                if vertex_of[j].is_none() {
                    let (a, b) = (find(&mut root, i), find(&mut root, j));
                    root[a] = b;
                }
            }
        }
    }
    let mut group_of = vec![None; n];
    let mut junctions = vec![];
    let mut seen: Vec<usize> = vec![];
    for i in 0..n {
        if vertex_of[i].is_some() {
            continue;
        }
        let r = find(&mut root, i);
        if seen.contains(&r) {
            continue;
        }
        seen.push(r);
        let members: Vec<usize> = (0..n)
            .filter(|&k| vertex_of[k].is_none() && find(&mut root, k) == r)
            .collect();
        let top = *members.iter().min_by_key(|&&k| nodes[k].clone()).unwrap();
        let mut boundary: Vec<usize> = (0..n)
            .filter(|&k| vertex_of[k].is_some() && parent[k].is_some_and(|j| members.contains(&j)))
            .map(|k| vertex_of[k].unwrap())
            .collect();
        let upper = parent[top].map(|j| vertex_of[j].expect("parent of a group is a vertex"));
        let mut holes: Vec<(Q, Q)> = boundary.iter().map(|&v| center_s(&vertices[v])).collect();
        holes.sort();
        let outer = upper.map(|w| {
            let (c, _) = center_s(&nodes[top]);
            (c, center_s(&vertices[w]).1)
        });
        if let Some(w) = upper {
            boundary.push(w);
        }
        boundary.sort();
        let g = if boundary.len() == 2 && upper.is_none() {
            let (u, v) = (boundary[0], boundary[1]);
            let sj = eta_s(&nodes[top]);
            let length = eta_s(&vertices[u]) + eta_s(&vertices[v]) - 2 * sj;
            edges.push(Edge {
                a_end: v,
                b_end: u,
                length,
                via: Some(nodes[top].clone()),
            });
            Group::Edge(edges.len() - 1)
        } else {
            junctions.push(Junction {
                top: nodes[top].clone(),
                boundary,
                region: Region::Holed { outer, holes },
            });
            Group::Junction(junctions.len() - 1)
        };
        for &k in &members {
            group_of[k] = Some(g);
        }
    }
    Ok(SpecialFiber {
        p,
        vertices,
        nodes,
        parent,
        edges,
        junctions,
        vertex_of,
        group_of,
    })
}

fn eta_s(x: &BerkPoint) -> i64 {
    int_s(x.eta_parts().unwrap().1).unwrap()
}

fn center_s(x: &BerkPoint) -> (Q, Q) {
    let (a, s) = x.eta_parts().unwrap();
    (a.clone(), s.clone())
}

impl SpecialFiber {
    pub fn vertex_set(&self) -> VertexSet {
        VertexSet::new(self.p, self.vertices.clone()).unwrap()
    }

    pub fn top(&self) -> usize {
        (0..self.nodes.len())
            .find(|&i| self.parent[i].is_none())
            .unwrap()
    }

    fn group_point(&self, node: usize) -> FiberPoint {
        match self.group_of[node].unwrap() {
            Group::Edge(e) => FiberPoint::Double(e),
            Group::Junction(j) => FiberPoint::Junction(j),
        }
    }

    fn edge_below(&self, node: usize) -> Option<usize> {
        let u = self.vertex_of[node]?;
        self.edges
            .iter()
            .position(|e| e.via.is_none() && e.a_end == u)
    }

    /// Directions at vertex `v` occupied by the hull.
    pub fn hull_directions(&self, v: usize) -> Result<Vec<Direction>> {
        let node = self
            .nodes
            .iter()
            .position(|x| x == &self.vertices[v])
            .unwrap();
        let mut out = vec![];
        if self.parent[node].is_some() {
            out.push(Direction::Up);
        }
        for k in 0..self.nodes.len() {
            if self.parent[k] == Some(node) {
                out.push(direction_at(&self.vertices[v], &self.nodes[k])?);
            }
        }
        out.sort();
        Ok(out)
    }

    pub fn specialize(&self, x: &BerkPoint) -> Result<FiberPoint> {
        if let Some(i) = self.vertices.iter().position(|v| v == x) {
            return Ok(FiberPoint::Generic(i));
        }
        let top = self.top();
        if !x.leq(&self.nodes[top])? {
            return Ok(match self.vertex_of[top] {
                Some(v) => FiberPoint::Smooth {
                    vertex: v,
                    dir: Direction::Up,
                },
                None => self.group_point(top),
            });
        }
        let mut r: Option<BerkPoint> = None;
        for n in &self.nodes {
            let j = x.join_or_self(n)?;
            if r.as_ref().is_none_or(|cur| j.lt(cur).unwrap_or(false)) {
                r = Some(j);
            }
        }
        let r = r.unwrap();
        if let Some(k) = self.nodes.iter().position(|n| n == &r) {
            return Ok(match self.vertex_of[k] {
                Some(v) => FiberPoint::Smooth {
                    vertex: v,
                    dir: direction_at(&r, x)?,
                },
                None => self.group_point(k),
            });
        }
        // `r` lies inside the hull segment from some node up to its parent.
        let mut below: Option<usize> = None;
        for k in 0..self.nodes.len() {
            if self.nodes[k].lt(&r)?
                && below.is_none_or(|b| self.nodes[b].lt(&self.nodes[k]).unwrap_or(false))
            {
                below = Some(k);
            }
        }
        let below =
            below.ok_or_else(|| Error::Inconsistent(format!("no hull node below {}", r)))?;
        let above = self.parent[below]
            .ok_or_else(|| Error::Inconsistent(format!("no hull node above {}", r)))?;
        Ok(match (self.vertex_of[below], self.vertex_of[above]) {
            (Some(_), Some(_)) => FiberPoint::Double(self.edge_below(below).unwrap()),
            (_, None) => self.group_point(above),
            (None, Some(_)) => self.group_point(below),
        })
    }

    pub fn region(&self, pt: &FiberPoint) -> Result<Region> {
        match pt {
            FiberPoint::Generic(_) => Err(Error::Precondition(
                "generic point has no complement component".into(),
            )),
            FiberPoint::Smooth { vertex, dir } => {
                let (a, s) = center_s(&self.vertices[*vertex]);
                Ok(match dir {
                    Direction::Up => Region::Holed {
                        outer: None,
                        holes: vec![(a, s)],
                    },
                    Direction::Down(g) => match dir.root() {
                        Some(c) => {
                            let center = &a + qi(c as i64) * p_pow(self.p, int_s(&s)?);
                            Region::Holed {
                                outer: Some((center, s)),
                                holes: vec![],
                            }
                        }
                        None => Region::ResidueClass { a, s, g: g.clone() },
                    },
                })
            }
            FiberPoint::Double(e) => {
                let e = &self.edges[*e];
                let u = center_s(&self.vertices[e.a_end]);
                let w = center_s(&self.vertices[e.b_end]);
                Ok(match e.via {
                    None => Region::Holed {
                        outer: Some((u.0.clone(), w.1)),
                        holes: vec![u],
                    },
                    Some(_) => {
                        let mut holes = vec![w, u];
                        holes.sort();
                        Region::Holed { outer: None, holes }
                    }
                })
            }
            FiberPoint::Junction(j) => Ok(self.junctions[*j].region.clone()),
        }
    }

    /// Boundary vertices of the complement component of a closed fiber point.
    pub fn boundary(&self, pt: &FiberPoint) -> Vec<usize> {
        match pt {
            FiberPoint::Generic(v) => vec![*v],
            FiberPoint::Smooth { vertex, .. } => vec![*vertex],
            FiberPoint::Double(e) => {
                let mut b = vec![self.edges[*e].a_end, self.edges[*e].b_end];
                b.sort();
                b
            }
            FiberPoint::Junction(j) => self.junctions[*j].boundary.clone(),
        }
    }

    pub fn describe(&self, pt: &FiberPoint) -> String {
        match pt {
            FiberPoint::Generic(v) => {
                format!("generic point of the component of {}", self.vertices[*v])
            }
            FiberPoint::Smooth { vertex, dir } => format!(
                "smooth point {} on the component of {}",
                dir, self.vertices[*vertex]
            ),
            FiberPoint::Double(e) => {
                let e = &self.edges[*e];
                format!(
                    "double point between {} and {}",
                    self.vertices[e.a_end], self.vertices[e.b_end]
                )
            }
            FiberPoint::Junction(j) => {
                let b: Vec<String> = self.junctions[*j]
                    .boundary
                    .iter()
                    .map(|&v| self.vertices[v].to_string())
                    .collect();
                format!(
                    "junction at {} bounded by {}",
                    self.junctions[*j].top,
                    b.join(", ")
                )
            }
        }
    }

    /// Graphviz rendering with vertices labelled by `(a, s)` and edges by their double points.
    pub fn to_dot(&self, title: &str) -> String {
        let mut out = format!("graph \"{}\" {{\n", title.replace('"', "'"));
        for (i, v) in self.vertices.iter().enumerate() {
            let (a, s) = v.eta_parts().unwrap();
            out.push_str(&format!(
                "  v{} [label=\"({}, {})\"];\n",
                i,
                fmt_q(a),
                fmt_q(s)
            ));
        }
        for (i, e) in self.edges.iter().enumerate() {
            out.push_str(&format!(
                "  v{} -- v{} [label=\"P{} l={}\"];\n",
                e.b_end, e.a_end, i, e.length
            ));
        }
        for (i, j) in self.junctions.iter().enumerate() {
            out.push_str(&format!("  j{} [shape=point, label=\"\"];\n", i));
            for b in &j.boundary {
                out.push_str(&format!("  j{} -- v{};\n", i, b));
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Complement component containing a point outside the vertex set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplementComponent {
    pub shape: ComponentShape,
    pub boundary: Vec<BerkPoint>,
    pub region: Region,
    pub fiber_point: FiberPoint,
}

impl ComplementComponent {
    pub fn describe(&self, p: u64) -> String {
        let b: Vec<String> = self.boundary.iter().map(|x| x.to_string()).collect();
        format!(
            "{} {} with boundary {{{}}}",
            self.shape,
            self.region.describe(p),
            b.join(", ")
        )
    }
}

pub fn specialize(x: &BerkPoint, s: &VertexSet) -> Result<FiberPoint> {
    dual_graph(s)?.specialize(x)
}

pub fn complement_component(x: &BerkPoint, fiber: &SpecialFiber) -> Result<ComplementComponent> {
    let pt = fiber.specialize(x)?;
    if let FiberPoint::Generic(_) = pt {
        return Err(Error::InvalidPoint(format!(
            "{} belongs to the vertex set",
            x
        )));
    }
    let shape = match pt {
        FiberPoint::Smooth { .. } => ComponentShape::Disc,
        FiberPoint::Double(_) => ComponentShape::Annulus,
        _ => ComponentShape::Junction,
    };
    Ok(ComplementComponent {
        shape,
        boundary: fiber
            .boundary(&pt)
            .into_iter()
            .map(|v| fiber.vertices[v].clone())
            .collect(),
        region: fiber.region(&pt)?,
        fiber_point: pt,
    })
}

/// Rigid points and Eta points only; higher-degree rigid points are rejected.
pub fn check_specializable(x: &BerkPoint) -> Result<()> {
    match x.kind() {
        Kind::Rigid(crate::berkline::RigidCenter::Poly(_)) => Err(Error::Unsupported(format!(
            "specialization of the higher-degree point {}",
            x
        ))),
        _ => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::qr;

    fn vs(p: u64, pts: &[(i64, i64)]) -> VertexSet {
        VertexSet::new(
            p,
            pts.iter()
                .map(|&(a, s)| BerkPoint::eta(p, qi(a), qi(s)))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn graphs() {
        let g = dual_graph(&vs(3, &[(0, 0)])).unwrap();
        assert_eq!((g.vertices.len(), g.edges.len()), (1, 0));
        let g = dual_graph(&vs(3, &[(0, 0), (0, 1)])).unwrap();
        assert_eq!(g.edges.len(), 1);
        let g = dual_graph(&vs(3, &[(0, 0), (0, 1), (1, 1)])).unwrap();
        assert_eq!(g.edges.len(), 2);
        assert!(g
            .edges
            .iter()
            .all(|e| g.vertices[e.b_end] == BerkPoint::gauss(3)));
        let g = dual_graph(&vs(3, &[(0, 1), (1, 1)])).unwrap();
        assert_eq!(g.edges.len(), 1);
        assert!(g.edges[0].via.is_some());
        assert_eq!(g.edges[0].length, 2);
        let g = dual_graph(&vs(3, &[(0, 1), (1, 1), (2, 1)])).unwrap();
        assert_eq!((g.edges.len(), g.junctions.len()), (0, 1));
    }

    #[test]
    fn specialization_examples() {
        let s = vs(3, &[(0, 0)]);
        assert_eq!(
            specialize(&BerkPoint::gauss(3), &s).unwrap(),
            FiberPoint::Generic(0)
        );
        assert_eq!(
            specialize(&BerkPoint::rigid(3, qi(0)), &s).unwrap(),
            FiberPoint::Smooth {
                vertex: 0,
                dir: Direction::rational(3, 0)
            }
        );
        let s2 = vs(3, &[(0, 0), (0, 1)]);
        assert_eq!(
            specialize(&BerkPoint::eta(3, qi(0), qr(1, 2)), &s2).unwrap(),
            FiberPoint::Double(0)
        );
        let g = dual_graph(&s).unwrap();
        let c = complement_component(&BerkPoint::rigid(3, qi(0)), &g).unwrap();
        assert_eq!(c.region.describe(3), "|T| < 1");
        let c = complement_component(&BerkPoint::rigid(3, qr(1, 3)), &g).unwrap();
        assert_eq!(c.region.describe(3), "|T| > 1");
        assert_eq!(
            c.fiber_point,
            FiberPoint::Smooth {
                vertex: 0,
                dir: Direction::Up
            }
        );
        let g2 = dual_graph(&s2).unwrap();
        let c = complement_component(&BerkPoint::eta(3, qi(0), qr(1, 2)), &g2).unwrap();
        assert_eq!(c.shape, ComponentShape::Annulus);
        assert_eq!(c.region.describe(3), "|T| < 1 and |T| > 3^(-1)");
        assert!(complement_component(&BerkPoint::gauss(3), &g2).is_err());
    }
}

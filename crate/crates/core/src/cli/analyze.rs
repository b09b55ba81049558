//! The local-global pipeline: bad locus, solution discs, vertex set, vertex sites and the descent at
//! closed points of the special fiber.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::divisor::{divisor, ClosedPoint};
use crate::arith::ff::factor;
use crate::arith::rational::{fmt_q, fmt_shift, p_pow, qi, ExtQ, Q};
use crate::arith::RatFunc;
use crate::berkline::{BerkPoint, DiscDesc, Orientation};
use crate::error::{Error, Result};
use crate::isotropy::oracle::oracle_q_t;
use crate::isotropy::{
    isotropic_at_fiber_point, isotropic_cdvf, local_solution, Bounds, Certificate, IsotropyVerdict,
    LocalSolution, OracleOutcome, QuadForm, SampleCheck, Site, SiteCertificate, UnknownReason,
    Witness,
};
use crate::models::{
    build_model, dual_graph, reduce_ratfunc, regularize, uncovered_point, Direction, FiberPoint,
    Neighborhood, Region, SpecialFiber, Variant,
};

/// Pipeline options.
#[derive(Clone, Debug)]
pub struct Options {
    pub variant: Variant,
    pub bounds: Bounds,
    /// Extra vertex for the C2 and C3 constructions.
    pub s0: Option<BerkPoint>,
    /// Seed of the additional random spot checks of the series witnesses.
    pub seed: u64,
    /// Number of additional random spot checks per solution disc.
    pub random_checks: usize,
    /// Run the bounded search for a zero over `Q[T]` after a local-everywhere verdict.
    pub global_search: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            variant: Variant::C1,
            bounds: Bounds::default(),
            s0: None,
            seed: 0,
            random_checks: 3,
            global_search: true,
        }
    }
}

/// A point of the bad locus with its local analysis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscEntry {
    pub z: ClosedPoint,
    pub outcome: LocalSolution,
    /// Seeded spot checks in addition to the deterministic ones.
    pub random_checks: Vec<SampleCheck>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DiscKind {
    /// Disc of convergence of the series witness.
    Convergence,
    /// The solution disc `D_z`.
    Solution,
}

/// One disc of a covering family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverDisc {
    pub z: ClosedPoint,
    pub kind: DiscKind,
    pub disc: DiscDesc,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coverage {
    pub covered: bool,
    /// A smallest covering subfamily, empty when the line is not covered or one witness is constant.
    pub cover: Vec<CoverDisc>,
    pub note: String,
}

#[derive(Clone, Debug)]
pub struct ModelInfo {
    pub variant: Variant,
    /// Whether the vertex set was regularized so that every double point has `alpha * beta = p`.
    pub enriched: bool,
    pub fiber: SpecialFiber,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SiteEntry {
    pub site: Site,
    pub verdict: IsotropyVerdict,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ComponentStatus {
    /// Inside the convergence disc of the series witness at `z`.
    Covered {
        z: String,
    },
    Descent(IsotropyVerdict),
    Skipped(String),
}

/// One closed point of the special fiber whose complement component needs an argument.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentEntry {
    pub point: FiberPoint,
    pub description: String,
    pub region: String,
    pub status: ComponentStatus,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Obstruction {
    pub site: String,
    pub kind: ObstructionKind,
    pub certificate: Certificate,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ObstructionKind {
    /// Completion at a type 2 point.
    Vertex,
    /// Completed local ring at a closed point of the special fiber.
    FiberPoint,
    /// Completion at a rigid point.
    Rigid,
}

impl ObstructionKind {
    pub fn label(&self) -> &'static str {
        match self {
            ObstructionKind::Vertex => "vertex",
            ObstructionKind::FiberPoint => "fiber_point",
            ObstructionKind::Rigid => "rigid",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Conclusion {
    /// Isotropic at every checked site; `global` is the cited global consequence, absent in dimension 2.
    LocalEverywhere {
        global: Option<String>,
    },
    ObstructionAt(Obstruction),
    Inconclusive {
        reason: String,
    },
}

impl Conclusion {
    pub fn exit_code(&self) -> i32 {
        match self {
            Conclusion::LocalEverywhere { .. } => 0,
            Conclusion::ObstructionAt(_) => 1,
            Conclusion::Inconclusive { .. } => 2,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Conclusion::LocalEverywhere { .. } => "local_everywhere",
            Conclusion::ObstructionAt(_) => "obstruction_at",
            Conclusion::Inconclusive { .. } => "inconclusive",
        }
    }
}

/// Best-effort bounded search for a zero with polynomial entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlobalSearch {
    pub witness: Option<Vec<RatFunc>>,
    pub searched: String,
}

#[derive(Clone, Debug)]
pub struct HasseReport {
    pub p: u64,
    pub form: QuadForm,
    pub notes: Vec<String>,
    pub bad_locus: Vec<ClosedPoint>,
    pub discs: Vec<DiscEntry>,
    pub coverage: Coverage,
    pub model: Option<ModelInfo>,
    pub sites: Vec<SiteEntry>,
    pub components: Vec<ComponentEntry>,
    pub obstructions: Vec<Obstruction>,
    pub conclusion: Conclusion,
    pub global_search: Option<GlobalSearch>,
}

impl HasseReport {
    /// The solution disc at the rigid point `z`, if one was found.
    pub fn disc_at(&self, z: &ClosedPoint) -> Option<&crate::isotropy::SolutionDisc> {
        self.discs
            .iter()
            .find(|d| &d.z == z)
            .and_then(|d| match &d.outcome {
                LocalSolution::Disc(s) => Some(s.as_ref()),
                _ => None,
            })
    }
}

/// Support of the divisors of all coefficients, sorted.
pub fn bad_locus(q: &QuadForm) -> Result<Vec<ClosedPoint>> {
    let mut out = vec![];
    for c in &q.coeffs {
        out.extend(divisor(c)?.support());
    }
    out.sort();
    out.dedup();
    Ok(out)
}

fn rigid_of(p: u64, z: &ClosedPoint) -> Option<BerkPoint> {
    match z {
        ClosedPoint::Rational(c) => Some(BerkPoint::rigid(p, c.clone())),
        ClosedPoint::Infinity => Some(BerkPoint::infinity(p)),
        ClosedPoint::Poly(_) => None,
    }
}

/// Absolute value `p^-s` in plain digits when `s` is an integer.
pub fn abs_text(p: u64, s: &Q) -> String {
    if s.is_integer() {
        fmt_q(&p_pow(p, -crate::arith::rational::to_i64(s.numer())))
    } else {
        format!("{}^({})", p, fmt_q(&-s))
    }
}

/// `|T - c| < r` style rendering of a disc.
pub fn disc_text(d: &DiscDesc) -> String {
    let lhs = format!("|{}|", fmt_shift("T", &d.center));
    let op = match (d.orientation, d.closed) {
        (Orientation::Inward, false) => "<",
        (Orientation::Inward, true) => "<=",
        (Orientation::Outward, false) => ">",
        (Orientation::Outward, true) => ">=",
    };
    format!("{} {} {}", lhs, op, abs_text(d.p, &d.s))
}

fn v(x: &Q, p: u64) -> ExtQ {
    ExtQ::from_vp(x, p)
}

/// Whether the region of a complement component lies in the open disc `d`.
pub fn region_within(region: &Region, d: &DiscDesc) -> bool {
    let p = d.p;
    let sn = ExtQ::Fin(d.s.clone());
    match (region, d.orientation) {
        (
            Region::Holed {
                outer: Some((c, s)),
                ..
            },
            Orientation::Inward,
        ) => v(&(c - &d.center), p) > sn && *s >= d.s,
        (
            Region::Holed {
                outer: Some((c, s)),
                ..
            },
            Orientation::Outward,
        ) => {
            let w = v(&(c - &d.center), p);
            w <= ExtQ::Fin(s.clone()) && w < sn
        }
        (Region::Holed { outer: None, .. }, Orientation::Inward) => false,
        (Region::Holed { outer: None, holes }, Orientation::Outward) => holes
            .iter()
            .any(|(a, s)| v(&(&d.center - a), p) >= ExtQ::Fin(s.clone()) && d.s >= *s),
        (Region::ResidueClass { a, s, .. }, o) => {
            let w = v(&(a - &d.center), p).min(ExtQ::Fin(s.clone()));
            match o {
                Orientation::Inward => w > sn,
                Orientation::Outward => w < sn,
            }
        }
    }
}

fn center_height(z: &ClosedPoint) -> num_bigint::BigInt {
    match z {
        ClosedPoint::Rational(c) => num_traits::Signed::abs(c.numer()) + c.denom(),
        _ => 0.into(),
    }
}

/// Smallest subfamily of the discs `(z, D_z, convergence disc)` covering the line.
///
/// Ties go to centers of small height, then to using `D_z` at the later points.
pub fn minimal_cover(
    p: u64,
    discs: &[(ClosedPoint, DiscDesc, DiscDesc)],
) -> Result<Vec<CoverDisc>> {
    let n = discs.len();
    for k in 1..=n {
        let mut subsets: Vec<Vec<usize>> = (0u32..1 << n)
            .filter(|m| m.count_ones() as usize == k)
            .map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect())
            .collect();
        subsets.sort_by_key(|s| {
            s.iter()
                .map(|&i| center_height(&discs[i].0))
                .sum::<num_bigint::BigInt>()
        });
        for sub in subsets {
            let mut choices: Vec<u32> = (0..1u32 << k).collect();
            choices.sort_by_key(|c| (k as u32 - c.count_ones(), c.reverse_bits()));
            for c in choices {
                let family: Vec<CoverDisc> = sub
                    .iter()
                    .enumerate()
                    .map(|(j, &i)| {
                        let solution = c >> j & 1 == 1;
                        CoverDisc {
                            z: discs[i].0.clone(),
                            kind: if solution {
                                DiscKind::Solution
                            } else {
                                DiscKind::Convergence
                            },
                            disc: if solution {
                                discs[i].1.clone()
                            } else {
                                discs[i].2.clone()
                            },
                        }
                    })
                    .collect();
                let ds: Vec<DiscDesc> = family.iter().map(|f| f.disc.clone()).collect();
                if uncovered_point(p, &ds)?.is_none() {
                    return Ok(family);
                }
            }
        }
    }
    Ok(vec![])
}

/// Closed fiber points whose complement components carry zeros or poles of the reduced coefficients,
/// the double points, and the direction of infinity at the top vertex.
fn special_points(q: &QuadForm, fiber: &SpecialFiber) -> Result<Vec<FiberPoint>> {
    let mut out = vec![];
    for e in 0..fiber.edges.len() {
        out.push(FiberPoint::Double(e));
    }
    for j in 0..fiber.junctions.len() {
        out.push(FiberPoint::Junction(j));
    }
    for (i, x) in fiber.vertices.iter().enumerate() {
        let hull = fiber.hull_directions(i)?;
        let (a, s) = x
            .eta_parts()
            .ok_or_else(|| Error::InvalidPoint(format!("{} is not a type 2 point", x)))?;
        let mut dirs = vec![Direction::Up];
        for c in &q.coeffs {
            let r = reduce_ratfunc(c, a, s, q.p)?;
            for g in [&r.num, &r.den] {
                for (h, _) in factor(g).factors {
                    dirs.push(Direction::Down(h.monic()));
                }
            }
        }
        dirs.sort();
        dirs.dedup();
        for d in dirs {
            if !hull.contains(&d) {
                out.push(FiberPoint::Smooth { vertex: i, dir: d });
            }
        }
    }
    Ok(out)
}

fn random_samples(rng: &mut ChaCha8Rng, p: u64, sigma: i64, n: usize) -> Vec<Q> {
    (0..n)
        .map(|_| {
            let k = loop {
                let k: u64 = rng.gen_range(1..p * p * p);
                if !k.is_multiple_of(p) {
                    break k;
                }
            };
            qi(k as i64) * p_pow(p, sigma + rng.gen_range(0..3))
        })
        .collect()
}

fn verdict_of(outcome: &LocalSolution) -> IsotropyVerdict {
    match outcome {
        LocalSolution::Disc(d) => IsotropyVerdict::Isotropic {
            witness: Witness::Series(Box::new(d.witness.clone())),
            via: format!(
                "power-series zero converging for v({}) > {}",
                d.witness.center.var_name(),
                d.conv
            ),
        },
        LocalSolution::Obstruction(c) => IsotropyVerdict::Anisotropic {
            certificate: c.clone(),
        },
        LocalSolution::Unknown(r) => IsotropyVerdict::Unknown { reason: r.clone() },
    }
}

/// Runs the full pipeline on `q`.
pub fn analyze(q: &QuadForm, opts: &Options) -> Result<HasseReport> {
    let p = q.p;
    let mut notes = vec![];
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let z_all = bad_locus(q)?;

    let mut discs = vec![];
    let mut sites = vec![];
    let mut obstructions = vec![];
    let mut inconclusive: Vec<String> = vec![];
    for z in &z_all {
        let Some(zp) = rigid_of(p, z) else {
            let reason = UnknownReason::HigherDegreePoint(format!(
                "closed point {} has degree {}",
                z,
                z.degree()
            ));
            inconclusive.push(reason.to_string());
            discs.push(DiscEntry {
                z: z.clone(),
                outcome: LocalSolution::Unknown(reason),
                random_checks: vec![],
            });
            continue;
        };
        let outcome = local_solution(q, &zp, &opts.bounds)?;
        let mut random_checks = vec![];
        match &outcome {
            LocalSolution::Disc(d) => {
                let sigma = match d.conv.fin() {
                    Some(s) => {
                        crate::arith::rational::to_i64(&crate::arith::rational::floor(s)) + 1
                    }
                    None => 0,
                };
                random_checks =
                    d.spot_check(q, &random_samples(&mut rng, p, sigma, opts.random_checks))?;
                if let Some(bad) = random_checks.iter().find(|c| !c.ok) {
                    return Err(Error::Inconsistent(format!(
                        "random spot check at u = {} failed at {}",
                        fmt_q(&bad.u),
                        zp
                    )));
                }
            }
            LocalSolution::Obstruction(c) => obstructions.push(Obstruction {
                site: Site::Rigid(zp.clone()).to_string(),
                kind: ObstructionKind::Rigid,
                certificate: c.clone(),
            }),
            LocalSolution::Unknown(r) => inconclusive.push(format!("{}: {}", zp, r)),
        }
        sites.push(SiteEntry {
            site: Site::Rigid(zp),
            verdict: verdict_of(&outcome),
        });
        discs.push(DiscEntry {
            z: z.clone(),
            outcome,
            random_checks,
        });
    }

    let solved: Vec<(String, Option<DiscDesc>, DiscDesc, BerkPoint)> = discs
        .iter()
        .filter_map(|d| match &d.outcome {
            LocalSolution::Disc(s) => Some((
                d.z.to_string(),
                s.convergence_disc.clone(),
                s.neighborhood.clone(),
                s.z.clone(),
            )),
            _ => None,
        })
        .collect();
    let whole = solved.iter().find(|s| s.1.is_none());
    let conv: Vec<DiscDesc> = solved.iter().filter_map(|s| s.1.clone()).collect();
    let covered = !solved.is_empty() && (whole.is_some() || uncovered_point(p, &conv)?.is_none());
    let coverage = match (covered, whole) {
        (true, Some(w)) => Coverage {
            covered: true,
            cover: vec![],
            note: format!(
                "the series witness at {} is constant, so it is a zero on the whole line",
                w.0
            ),
        },
        (true, None) => {
            let candidates: Vec<(ClosedPoint, DiscDesc, DiscDesc)> = discs
                .iter()
                .filter_map(|d| match &d.outcome {
                    LocalSolution::Disc(s) => {
                        Some((d.z.clone(), s.disc.clone(), s.convergence_disc.clone()?))
                    }
                    _ => None,
                })
                .collect();
            let cover = minimal_cover(p, &candidates)?;
            let parts: Vec<String> = cover
                .iter()
                .map(|c| {
                    let kind = match c.kind {
                        DiscKind::Convergence => "convergence disc",
                        DiscKind::Solution => "solution disc",
                    };
                    format!("the {} {{{}}} at {}", kind, disc_text(&c.disc), c.z)
                })
                .collect();
            let note = format!(
                "{} cover the whole line, so q has a zero over every completion and no vertex or fiber point checks are needed",
                parts.join(" and ")
            );
            Coverage {
                covered: true,
                cover,
                note,
            }
        }
        _ => Coverage {
            covered: false,
            cover: vec![],
            note: "the solution discs do not cover the line; vertex and fiber point checks follow"
                .into(),
        },
    };
    if covered && !obstructions.is_empty() {
        return Err(Error::Inconsistent(format!(
            "the solution discs cover the line but {} is anisotropic at {}",
            q, obstructions[0].site
        )));
    }

    let mut model = None;
    let mut components = vec![];
    if !covered {
        let neighborhoods = solved
            .iter()
            .map(|s| Neighborhood::new(s.3.clone(), s.2.clone()))
            .collect::<Result<Vec<_>>>()?;
        match build_model(p, &neighborhoods, opts.variant, opts.s0.clone()) {
            Err(e) => inconclusive.push(format!("vertex set construction failed: {}", e)),
            Ok(s) => {
                let mut fiber = dual_graph(&s)?;
                let mut enriched = false;
                if fiber.edges.iter().any(|e| e.length > 1) || !fiber.junctions.is_empty() {
                    fiber = dual_graph(&regularize(&s)?)?;
                    enriched = true;
                    notes.push(
                        "vertex set regularized so that every double point has alpha * beta = p"
                            .into(),
                    );
                }
                let mut vertex_verdicts = vec![];
                for x in &fiber.vertices {
                    let site = Site::Vertex(x.clone());
                    let verdict = if x.is_integral_eta() {
                        isotropic_cdvf(q, &site, &opts.bounds)?
                    } else {
                        IsotropyVerdict::Unknown {
                            reason: UnknownReason::UnsupportedField(format!(
                                "{} has non-integer radius",
                                x
                            )),
                        }
                    };
                    match &verdict {
                        IsotropyVerdict::Anisotropic { certificate } => {
                            obstructions.push(Obstruction {
                                site: site.to_string(),
                                kind: ObstructionKind::Vertex,
                                certificate: certificate.clone(),
                            })
                        }
                        IsotropyVerdict::Unknown { reason } => {
                            inconclusive.push(format!("{}: {}", site, reason))
                        }
                        _ => {}
                    }
                    vertex_verdicts.push(verdict.clone());
                    sites.push(SiteEntry { site, verdict });
                }
                for pt in special_points(q, &fiber)? {
                    let region = fiber.region(&pt)?;
                    let description = fiber.describe(&pt);
                    let cover = solved
                        .iter()
                        .find(|s| s.1.as_ref().is_none_or(|d| region_within(&region, d)));
                    let status = match cover {
                        Some(s) => ComponentStatus::Covered { z: s.0.clone() },
                        None => {
                            let v = match &pt {
                                FiberPoint::Smooth { vertex, .. } => *vertex,
                                FiberPoint::Double(e) => fiber.edges[*e].a_end,
                                _ => usize::MAX,
                            };
                            if v == usize::MAX {
                                ComponentStatus::Skipped(
                                    "junction points are not handled by the descent".into(),
                                )
                            } else {
                                let cert = SiteCertificate {
                                    site: Site::Vertex(fiber.vertices[v].clone()),
                                    verdict: vertex_verdicts[v].clone(),
                                };
                                match isotropic_at_fiber_point(q, &pt, &fiber, &cert) {
                                    Ok(verdict) => ComponentStatus::Descent(verdict),
                                    Err(Error::Inconsistent(m)) => {
                                        return Err(Error::Inconsistent(m))
                                    }
                                    Err(e) => ComponentStatus::Skipped(e.to_string()),
                                }
                            }
                        }
                    };
                    match &status {
                        ComponentStatus::Descent(IsotropyVerdict::Anisotropic { certificate }) => {
                            obstructions.push(Obstruction {
                                site: format!("completed local ring at the {}", description),
                                kind: ObstructionKind::FiberPoint,
                                certificate: certificate.clone(),
                            })
                        }
                        ComponentStatus::Descent(IsotropyVerdict::Unknown { reason }) => {
                            inconclusive.push(format!("{}: {}", description, reason))
                        }
                        ComponentStatus::Skipped(r) => {
                            inconclusive.push(format!("{}: {}", description, r))
                        }
                        _ => {}
                    }
                    components.push(ComponentEntry {
                        point: pt,
                        description,
                        region: region.describe(p),
                        status,
                    });
                }
                notes.push(
                    "at the remaining smooth points every coefficient is a unit times a power of p, so their residue \
                     forms are specializations of the vertex residue forms"
                        .into(),
                );
                model = Some(ModelInfo {
                    variant: opts.variant,
                    enriched,
                    fiber,
                });
            }
        }
    }

    obstructions.sort_by_key(|o| match o.kind {
        ObstructionKind::Vertex => 0,
        ObstructionKind::FiberPoint => 1,
        ObstructionKind::Rigid => 2,
    });
    let conclusion = if let Some(o) = obstructions.first() {
        Conclusion::ObstructionAt(o.clone())
    } else if let Some(r) = inconclusive.first() {
        Conclusion::Inconclusive { reason: r.clone() }
    } else if q.dim() == 2 {
        Conclusion::LocalEverywhere { global: None }
    } else {
        Conclusion::LocalEverywhere {
            global: Some(format!(
                "q is isotropic over Q_{}(T) by the local-global principle for function fields of p-adic curves \
                 (cited, dimension {} > 2)",
                p,
                q.dim()
            )),
        }
    };
    let global_search = match (&conclusion, opts.global_search) {
        (Conclusion::LocalEverywhere { .. }, true) => Some(match oracle_q_t(q, 1, 1, 20_000)? {
            OracleOutcome::Found {
                witness: Witness::Rational { x },
            } => GlobalSearch {
                witness: Some(x),
                searched: "entries of degree <= 1, coefficients in {-1, 0, 1}".into(),
            },
            OracleOutcome::Found { .. } => {
                unreachable!("polynomial search returns rational witnesses")
            }
            OracleOutcome::NotFound { searched, .. } | OracleOutcome::Exhausted { searched } => {
                GlobalSearch {
                    witness: None,
                    searched,
                }
            }
        }),
        _ => None,
    };
    Ok(HasseReport {
        p,
        form: q.clone(),
        notes,
        bad_locus: z_all,
        discs,
        coverage,
        model,
        sites,
        components,
        obstructions,
        conclusion,
        global_search,
    })
}

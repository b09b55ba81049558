use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::arith::poly::Poly;
use crate::arith::ratfunc::RatFunc;
use crate::arith::rational::{fmt_q, fmt_shift, qi, vp, ExtQ, Q};
use crate::arith::series::{series_sqrt, Center};
use crate::berkline::{BerkPoint, DiscDesc, Kind, Orientation, RigidCenter};
use crate::error::{Error, Result};

use super::form::{PAdicForm, QuadForm, ResidueForm};
use super::site::{isotropic_cdvf, rigid_split, Site};
use super::verdict::{Certificate, IsotropyVerdict, UnknownReason, Witness};
use super::Bounds;

/// One coordinate `u^exp * y(u)` of a witness around a rigid point, `u` the local coordinate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeriesEntry {
    Zero,
    Constant {
        exp: i64,
        value: Q,
    },
    /// `y = sqrt(radicand)` with `y(0) = branch`. Computed as `root / den` where `root` is the
    /// truncated square root of `radicand * den^2`.
    Sqrt {
        exp: i64,
        radicand: RatFunc,
        branch: Q,
        root: Vec<Q>,
        den: Poly,
        exact_branch: bool,
    },
}

/// Power-series zero of `q` around a rigid point, truncated at `order` terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesWitness {
    pub center: Center,
    pub p: u64,
    pub order: usize,
    pub entries: Vec<SeriesEntry>,
}

fn eval_series(c: &[Q], u: &Q) -> Q {
    c.iter().rev().fold(Q::zero(), |acc, a| acc * u + a)
}

fn upow(u: &Q, e: i64) -> Q {
    if e >= 0 {
        num_traits::pow(u.clone(), e as usize)
    } else {
        num_traits::pow(u.recip(), (-e) as usize)
    }
}

impl SeriesWitness {
    /// Global point `T` at local coordinate `u`.
    pub fn global_point(&self, u: &Q) -> Q {
        match &self.center {
            Center::Finite(c) => c + u,
            Center::Infinity => u.recip(),
        }
    }

    /// Truncated witness at local coordinate `u`.
    pub fn eval_at(&self, u: &Q) -> Option<Vec<Q>> {
        self.entries
            .iter()
            .map(|e| match e {
                SeriesEntry::Zero => Some(Q::zero()),
                SeriesEntry::Constant { exp, value } => Some(upow(u, *exp) * value),
                SeriesEntry::Sqrt { exp, root, den, .. } => {
                    let d = den.eval(u);
                    (!d.is_zero()).then(|| upow(u, *exp) * eval_series(root, u) / d)
                }
            })
            .collect()
    }

    /// `v_p(q(x(u)))` for the truncated witness, `None` for an exact zero.
    pub fn value_valuation(&self, q: &QuadForm, u: &Q) -> Option<Option<i64>> {
        let t = self.global_point(u);
        let x = self.eval_at(u)?;
        let mut s = Q::zero();
        for (f, xi) in q.coeffs.iter().zip(&x) {
            if xi.is_zero() {
                continue;
            }
            s += f.eval(&t)? * xi * xi;
        }
        Some(vp(&s, self.p))
    }

    fn monomial(&self, exp: i64) -> String {
        if exp == 0 {
            return String::new();
        }
        let v = match &self.center {
            Center::Finite(c) if c.is_zero() => "T".to_string(),
            Center::Finite(c) => format!("({})", fmt_shift("T", c)),
            Center::Infinity => {
                return if exp == 1 {
                    "1/T*".into()
                } else {
                    format!("T^{}*", -exp)
                }
            }
        };
        if exp == 1 {
            format!("{}*", v)
        } else {
            format!("{}^{}*", v, exp)
        }
    }

    fn fmt_entry(&self, e: &SeriesEntry) -> String {
        match e {
            SeriesEntry::Zero => "0".into(),
            SeriesEntry::Constant { exp, value } => {
                if *exp == 0 {
                    fmt_q(value)
                } else if value.is_one() {
                    self.monomial(*exp).trim_end_matches('*').to_string()
                } else {
                    format!("{}{}", self.monomial(*exp), fmt_q(value))
                }
            }
            SeriesEntry::Sqrt {
                exp,
                radicand,
                branch,
                exact_branch,
                ..
            } => {
                let r = fmt_local(radicand, &self.center);
                let s = if branch.is_one() {
                    format!("sqrt({})", r)
                } else {
                    format!(
                        "sqrt({}) [branch {}]",
                        r,
                        branch_text(branch, *exact_branch, self.p)
                    )
                };
                format!("{}{}", self.monomial(*exp), s)
            }
        }
    }
}

/// An exact branch, or the residue of a p-adic approximation.
fn branch_text(b: &Q, exact: bool, p: u64) -> String {
    if exact {
        fmt_q(b)
    } else {
        let k = vp(b, p).unwrap_or(0);
        let r = crate::arith::rational::residue(&(b / crate::arith::rational::p_pow(p, k)), p);
        if k == 0 {
            format!("= {} mod {}", r, p)
        } else {
            format!("= {}^{} * ({} mod {})", p, k, r, p)
        }
    }
}

impl fmt::Display for SeriesWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e: Vec<String> = self.entries.iter().map(|e| self.fmt_entry(e)).collect();
        write!(f, "({})", e.join(", "))
    }
}

/// Polynomial in the local coordinate, ascending, in global notation.
fn fmt_local_poly(p: &Poly, center: &Center) -> String {
    let mut out = String::new();
    for (i, a) in p.coeffs().iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let neg = a.is_negative();
        let mag = a.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let c = fmt_q(&mag);
        let term = match (center, i) {
            (_, 0) => c,
            (Center::Infinity, _) => {
                let d = if i == 1 {
                    "T".to_string()
                } else {
                    format!("T^{}", i)
                };
                if mag.is_integer() {
                    format!("{}/{}", c, d)
                } else {
                    format!("({})/{}", c, d)
                }
            }
            (Center::Finite(z), _) => {
                let v = if z.is_zero() {
                    "T".to_string()
                } else {
                    format!("({})", fmt_shift("T", z))
                };
                let m = if i == 1 { v } else { format!("{}^{}", v, i) };
                if mag.is_one() {
                    m
                } else if mag.is_integer() {
                    format!("{}*{}", c, m)
                } else {
                    format!("({})*{}", c, m)
                }
            }
        };
        out.push_str(&term);
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

fn fmt_local(f: &RatFunc, center: &Center) -> String {
    let n = fmt_local_poly(f.num(), center);
    if f.den().is_constant() && f.den().coeff(0).is_one() {
        n
    } else {
        format!("({})/({})", n, fmt_local_poly(f.den(), center))
    }
}

/// One spot check of the Newton ledger at a sample point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SampleCheck {
    pub u: Q,
    pub t: Q,
    /// `v_p(q(x_N(u)))`, `None` when the truncated witness is an exact zero.
    pub value: Option<i64>,
    pub required: Q,
    pub ok: bool,
}

/// A rigid point with a power-series zero and the discs it controls.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionDisc {
    pub z: BerkPoint,
    pub witness: SeriesWitness,
    /// The series converge for `v(u) > conv`; `NegInf` for a constant witness.
    pub conv: ExtQ,
    /// Open disc of convergence in the global coordinate, `None` when it is the whole line.
    pub convergence_disc: Option<DiscDesc>,
    /// Open disc of convergence intersected with the residue disc of `z` at the Gauss point.
    pub disc: DiscDesc,
    /// Closed neighborhood `V_z` with integer log-radius inside the open disc.
    pub neighborhood: DiscDesc,
    pub ledger: Vec<String>,
    pub checks: Vec<SampleCheck>,
    /// Data for the tail bound: `(s*, v(c0), v(G(0) - c0^2), pivot index)`.
    bound: Bound,
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Bound {
    s_star: ExtQ,
    v_c0: i64,
    v_err: Option<i64>,
    pivot: Option<(usize, i64, Poly)>,
}

/// Result of the local analysis at a rigid point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LocalSolution {
    Disc(Box<SolutionDisc>),
    Obstruction(Certificate),
    Unknown(UnknownReason),
}

fn small_zero(form: &PAdicForm, height: i64, limit: u64) -> Option<Vec<Q>> {
    let n = form.coeffs.len();
    let mut vals = vec![0i64];
    for h in 1..=height {
        vals.push(h);
        vals.push(-h);
    }
    let base = vals.len() as u64;
    let total = base.checked_pow(n as u32)?;
    if total > limit {
        return None;
    }
    for idx in 1..total {
        let mut r = idx;
        let mut x = vec![Q::zero(); n];
        for xi in x.iter_mut().rev() {
            *xi = qi(vals[(r % base) as usize]);
            r /= base;
        }
        if x.iter()
            .find(|c| !c.is_zero())
            .is_some_and(|c| c.is_negative())
        {
            continue;
        }
        if form.eval(&x).is_zero() {
            return Some(x);
        }
    }
    None
}

fn max_ext(a: ExtQ, b: ExtQ) -> ExtQ {
    if a >= b {
        a
    } else {
        b
    }
}

/// Largest valuation of a root of `d`, from the first slope of its Newton polygon.
fn max_root_valuation(d: &Poly, p: u64) -> ExtQ {
    let c = d.coeffs();
    let Some(v0) = vp(&c[0], p) else {
        return ExtQ::PosInf;
    };
    let mut best = ExtQ::NegInf;
    for (k, a) in c.iter().enumerate().skip(1) {
        if let Some(vk) = vp(a, p) {
            best = max_ext(
                best,
                ExtQ::Fin(Q::from_integer((v0 - vk).into()) / qi(k as i64)),
            );
        }
    }
    best
}

fn floor_ext(x: &ExtQ) -> Option<i64> {
    x.fin()
        .map(|q| crate::arith::rational::to_i64(&crate::arith::rational::floor(q)))
}

fn center_of(z: &BerkPoint) -> Option<Center> {
    match z.kind() {
        Kind::Rigid(RigidCenter::Finite(c)) => Some(Center::Finite(c.clone())),
        Kind::Rigid(RigidCenter::Infinity) => Some(Center::Infinity),
        _ => None,
    }
}

/// Disc `v(u) > s` (or `>=`) around the center, in the global coordinate.
fn local_disc(p: u64, center: &Center, s: Q, closed: bool) -> DiscDesc {
    match center {
        Center::Finite(c) => DiscDesc {
            p,
            center: c.clone(),
            s,
            closed,
            orientation: Orientation::Inward,
        },
        Center::Infinity => DiscDesc {
            p,
            center: Q::zero(),
            s: -s,
            closed,
            orientation: Orientation::Outward,
        },
    }
}

/// Local analysis at a rigid point of degree one: Springer over the `T - c` adic completion, then
/// an explicit power-series zero with the radius of convergence certified by the Newton ledger.
pub fn local_solution(q: &QuadForm, z: &BerkPoint, bounds: &Bounds) -> Result<LocalSolution> {
    let p = q.p;
    let Some(center) = center_of(z) else {
        return Ok(LocalSolution::Unknown(UnknownReason::HigherDegreePoint(
            format!("{} is not defined over Q_{}", z, p),
        )));
    };
    let verdict = isotropic_cdvf(q, &Site::Rigid(z.clone()), bounds)?;
    let (coords, form, residue) = match verdict {
        IsotropyVerdict::Anisotropic { certificate } => {
            return Ok(LocalSolution::Obstruction(certificate))
        }
        IsotropyVerdict::Unknown { reason } => return Ok(LocalSolution::Unknown(reason)),
        IsotropyVerdict::Isotropic {
            witness:
                Witness::Lifted {
                    coords,
                    form,
                    residue,
                    ..
                },
            ..
        } => (coords, form, residue),
        IsotropyVerdict::Isotropic { witness, .. } => {
            return Err(Error::Inconsistent(format!(
                "unexpected witness {} at {}",
                witness, z
            )))
        }
    };
    let ResidueForm::PAdic(rform) = *form else {
        return Err(Error::Inconsistent(
            "residue form at a rigid point is not over Q_p".into(),
        ));
    };
    let (xbar, exact) = match small_zero(&rform, bounds.search_height, 1 << 20) {
        Some(x) => (x, true),
        None => match *residue {
            Witness::PAdic { x, exact, .. } => (x, exact),
            w => {
                return Err(Error::Inconsistent(format!(
                    "unexpected residue witness {}",
                    w
                )))
            }
        },
    };
    let split = rigid_split(q, &center);
    let n = q.dim();
    let order_of = |i: usize| -> i64 {
        split
            .first
            .iter()
            .chain(&split.second)
            .find(|e| e.index == i)
            .map(|e| 2 * e.shift)
            .unwrap()
            + if split.second.iter().any(|e| e.index == i) {
                1
            } else {
                0
            }
    };
    // pivot: first coordinate of minimal valuation
    let vmin = xbar.iter().filter_map(|c| vp(c, p)).min().unwrap();
    let jpos = xbar.iter().position(|c| vp(c, p) == Some(vmin)).unwrap();
    let u = RatFunc::t();
    let g = |i: usize| -> Result<RatFunc> {
        let k = order_of(coords[i]);
        Ok(center.localize(&q.coeffs[coords[i]]).mul(&u.pow(-k)?))
    };
    let mut rest = RatFunc::zero();
    for (pos, xb) in xbar.iter().enumerate() {
        if pos != jpos && !xb.is_zero() {
            rest = rest.add(&g(pos)?.scale(&(xb * xb)));
        }
    }
    let radicand = rest.div(&g(jpos)?)?.neg();
    let num = radicand.num().clone();
    let den = radicand.den().clone();
    let gpoly = &num * &den;
    let c0 = &xbar[jpos] * den.coeff(0);
    let v_c0 = vp(&c0, p).unwrap();
    let mut ledger = vec![
        format!("local coordinate u = {}", center.var_name()),
        format!(
            "pivot X{}: radicand {} with branch {} at u = 0",
            coords[jpos] + 1,
            fmt_local(&radicand, &center),
            branch_text(&xbar[jpos], exact, p)
        ),
        format!(
            "G = numerator * denominator = {} in u, y(0) = {}, v(2 y(0)) = {}",
            gpoly.fmt_var("u"),
            fmt_q(&c0),
            v_c0
        ),
    ];
    let mut s_star = ExtQ::NegInf;
    for (k, a) in gpoly.coeffs().iter().enumerate().skip(1) {
        if let Some(vk) = vp(a, p) {
            let b = Q::from_integer((2 * v_c0 - vk).into()) / qi(k as i64);
            ledger.push(format!(
                "u^{}: (2 v(2 y(0)) - v({})) / {} = {}",
                k,
                fmt_q(a),
                k,
                fmt_q(&b)
            ));
            s_star = max_ext(s_star, ExtQ::Fin(b));
        }
    }
    let s_pole = max_root_valuation(&den, p);
    ledger.push(format!(
        "Hensel bound s* = {}, largest pole valuation {}",
        s_star, s_pole
    ));
    let conv = max_ext(s_star.clone(), s_pole);
    let v_err = if exact {
        None
    } else {
        vp(&(gpoly.coeff(0) - &c0 * &c0), p)
    };
    let s_res = match &center {
        Center::Finite(c) => vp(c, p).map(|v| v.min(0)).unwrap_or(0),
        Center::Infinity => 0,
    };
    let s_open = match conv.fin() {
        Some(s) => {
            let r = qi(s_res);
            if *s > r {
                s.clone()
            } else {
                r
            }
        }
        None => qi(s_res),
    };
    let s_v = floor_ext(&conv)
        .map(|f| f + 1)
        .unwrap_or(i64::MIN)
        .max(s_res + 1);
    ledger.push(format!(
        "series converge for v(u) > {}; V_z uses v(u) >= {}",
        conv, s_v
    ));
    let shift: Vec<i64> = (0..xbar.len())
        .map(|i| -order_of(coords[i]).div_euclid(2))
        .collect();
    let smin = shift.iter().copied().min().unwrap();
    let mut entries = vec![SeriesEntry::Zero; n];
    for (pos, xb) in xbar.iter().enumerate() {
        let exp = shift[pos] - smin;
        entries[coords[pos]] = if pos == jpos {
            if radicand.is_constant() && exact {
                SeriesEntry::Constant {
                    exp,
                    value: xb.clone(),
                }
            } else {
                let root = series_sqrt(gpoly.coeffs(), &c0, bounds.precision as usize);
                SeriesEntry::Sqrt {
                    exp,
                    radicand: radicand.clone(),
                    branch: xb.clone(),
                    root,
                    den: den.clone(),
                    exact_branch: exact,
                }
            }
        } else if xb.is_zero() {
            SeriesEntry::Zero
        } else {
            SeriesEntry::Constant {
                exp,
                value: xb.clone(),
            }
        };
    }
    let witness = SeriesWitness {
        center: center.clone(),
        p,
        order: bounds.precision as usize,
        entries,
    };
    let pivot_exp = shift[jpos] - smin;
    let convergence_disc = conv.fin().map(|s| local_disc(p, &center, s.clone(), false));
    let mut sd = SolutionDisc {
        z: z.clone(),
        witness,
        conv: conv.clone(),
        convergence_disc,
        disc: local_disc(p, &center, s_open, false),
        neighborhood: local_disc(p, &center, qi(s_v), true),
        ledger,
        checks: vec![],
        bound: Bound {
            s_star,
            v_c0,
            v_err,
            pivot: Some((coords[jpos], pivot_exp, den)),
        },
    };
    let sigma = floor_ext(&sd.conv).map(|f| f + 1).unwrap_or(0).max(s_v);
    sd.checks = sd.spot_check(q, &sample_points(p, sigma, 5))?;
    if let Some(bad) = sd.checks.iter().find(|c| !c.ok) {
        return Err(Error::Inconsistent(format!(
            "series witness at {} fails the ledger at u = {}: valuation {:?} < {}",
            z,
            fmt_q(&bad.u),
            bad.value,
            fmt_q(&bad.required)
        )));
    }
    Ok(LocalSolution::Disc(Box::new(sd)))
}

/// `count` sample values `k p^sigma`, `k` prime to `p`.
pub fn sample_points(p: u64, sigma: i64, count: usize) -> Vec<Q> {
    let base = crate::arith::rational::p_pow(p, sigma);
    (1..)
        .filter(|k| k % p != 0)
        .take(count)
        .map(|k| qi(k as i64) * &base)
        .collect()
}

/// `local_solution`, failing unless a solution disc is produced.
pub fn local_solution_disc(q: &QuadForm, z: &BerkPoint, bounds: &Bounds) -> Result<SolutionDisc> {
    match local_solution(q, z, bounds)? {
        LocalSolution::Disc(d) => Ok(*d),
        LocalSolution::Obstruction(c) => Err(Error::Precondition(format!(
            "{} is anisotropic at {}:\n{}",
            q, z, c
        ))),
        LocalSolution::Unknown(r) => Err(Error::Unsupported(r.to_string())),
    }
}

impl SolutionDisc {
    /// Log-radius `s` of the open convergence disc `v(u) > s`.
    pub fn log_radius(&self) -> &ExtQ {
        &self.conv
    }

    /// Checks the truncated witness at the local coordinates `us`, which must satisfy `v(u) > conv`.
    ///
    /// With `y` the pivot root, `q(x) = f_j u^(2e) (y^2 - G) / D^2` and the tail of the square
    /// root series has valuation at least `v(y(0)) + N (v(u) - s*)`.
    pub fn spot_check(&self, q: &QuadForm, us: &[Q]) -> Result<Vec<SampleCheck>> {
        let p = self.witness.p;
        let mut out = vec![];
        for u in us {
            let sigma = vp(u, p).ok_or(Error::Zero("sample point"))?;
            if let Some(s) = self.conv.fin() {
                if qi(sigma) <= *s {
                    return Err(Error::Precondition(format!(
                        "sample {} outside the convergence disc",
                        fmt_q(u)
                    )));
                }
            }
            let t = self.witness.global_point(u);
            let Some(value) = self.witness.value_valuation(q, u) else {
                continue;
            };
            let mut required: Option<Q> = None;
            if let Some((j, e, den)) = &self.bound.pivot {
                if let Some(s) = self.bound.s_star.fin() {
                    required = Some(
                        qi(self.witness.order as i64) * (qi(sigma) - s) + qi(2 * self.bound.v_c0),
                    );
                }
                if let Some(ve) = self.bound.v_err {
                    let ve = qi(ve);
                    required = Some(required.map_or(ve.clone(), |r| if r < ve { r } else { ve }));
                }
                if let Some(r) = required.as_mut() {
                    let fj = q.coeffs[*j].eval(&t).ok_or(Error::DivisionByZero)?;
                    let scale = fj * upow(u, 2 * e) / (den.eval(u) * den.eval(u));
                    *r += qi(vp(&scale, p).unwrap_or(0));
                }
            }
            let ok = match (&value, &required) {
                (None, _) => true,
                (Some(_), None) => false,
                (Some(v), Some(r)) => qi(*v) >= *r,
            };
            out.push(SampleCheck {
                u: u.clone(),
                t,
                value,
                required: required.unwrap_or_else(Q::zero),
                ok,
            });
        }
        Ok(out)
    }

    pub fn radius_text(&self) -> String {
        match self.conv.fin() {
            Some(s) => format!("p^({})", fmt_q(&-s)),
            None => "infinite".into(),
        }
    }
}

impl fmt::Display for SolutionDisc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "at {}: witness {}, convergence log-radius {}",
            self.z, self.witness, self.conv
        )
    }
}

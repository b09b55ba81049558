//! Translations of discs over Eisenstein extensions: the gap interval, the choice of a translation
//! length with coprime ramification, the membership harness, and degree bookkeeping for zero-cycles.

use std::fmt;

use num_integer::Integer;
use num_traits::Zero;
use rand::Rng;

use crate::arith::eisenstein::EisElem;
use crate::arith::field::{eisenstein_extension, BaseFieldDesc};
use crate::arith::poly::Poly;
use crate::arith::rational::{floor, fmt_q, fmt_shift, qi, to_i64, vp, ExtQ, Q};
use crate::berkline::{BerkPoint, Kind, RigidCenter};
use crate::error::{Error, Result};

/// A point of the Berkovich line over `l = Q_p[X]/(X^h - p)` with a center in `l`: the rigid point
/// `a` or `eta_{a, p^-s}`.
#[derive(Clone, Debug)]
pub enum LPoint {
    Rigid(EisElem),
    Eta { a: EisElem, s: Q },
}

fn lpoly(f: &Poly, p: u64, h: u32) -> Vec<EisElem> {
    f.coeffs()
        .iter()
        .map(|c| EisElem::from_q(p, h, c.clone()))
        .collect()
}

/// Coefficients of `f(T + a)`.
fn taylor(f: &[EisElem], a: &EisElem) -> Vec<EisElem> {
    let mut out: Vec<EisElem> = vec![];
    for c in f.iter().rev() {
        // out = out * (T + a) + c
        let mut next = vec![EisElem::zero(a.p, a.h); out.len() + 1];
        for (i, o) in out.iter().enumerate() {
            next[i + 1] = next[i + 1].add(o);
            next[i] = next[i].add(&o.mul(a));
        }
        next[0] = next[0].add(c);
        out = next;
    }
    out
}

impl LPoint {
    pub fn p(&self) -> u64 {
        self.center().p
    }

    pub fn h(&self) -> u32 {
        self.center().h
    }

    pub fn center(&self) -> &EisElem {
        match self {
            LPoint::Rigid(a) | LPoint::Eta { a, .. } => a,
        }
    }

    /// A point of the line over `Q_p`, viewed over the degree `h` extension.
    pub fn from_berk(x: &BerkPoint, h: u32) -> Result<LPoint> {
        let p = x.p();
        match x.kind() {
            Kind::Rigid(RigidCenter::Finite(c)) => {
                Ok(LPoint::Rigid(EisElem::from_q(p, h, c.clone())))
            }
            Kind::Eta { a, s } => Ok(LPoint::Eta {
                a: EisElem::from_q(p, h, a.clone()),
                s: s.clone(),
            }),
            _ => Err(Error::Unsupported(format!(
                "{} has no center in the disc family",
                x
            ))),
        }
    }

    /// The point over `Q_p`, when the center is rational.
    pub fn to_berk(&self) -> Option<BerkPoint> {
        let c = self.center().as_q()?;
        Some(match self {
            LPoint::Rigid(_) => BerkPoint::rigid(self.p(), c),
            LPoint::Eta { s, .. } => BerkPoint::eta(self.p(), c, s.clone()),
        })
    }

    /// `-log_p |f|_x` for `f` with coefficients in `l`.
    pub fn val_lpoly(&self, f: &[EisElem]) -> ExtQ {
        match self {
            LPoint::Rigid(a) => {
                let v = taylor(f, a);
                v.first().map(|c| c.valuation()).unwrap_or(ExtQ::PosInf)
            }
            LPoint::Eta { a, s } => taylor(f, a)
                .iter()
                .enumerate()
                .map(|(i, c)| c.valuation().add(&ExtQ::Fin(s * qi(i as i64))))
                .min()
                .unwrap_or(ExtQ::PosInf),
        }
    }

    pub fn val_poly(&self, f: &Poly) -> ExtQ {
        self.val_lpoly(&lpoly(f, self.p(), self.h()))
    }

    /// `-log_p |T - c|_x`.
    pub fn dist_val(&self, c: &EisElem) -> ExtQ {
        let one = EisElem::from_q(c.p, c.h, qi(1));
        self.val_lpoly(&[c.neg(), one])
    }
}

impl PartialEq for LPoint {
    fn eq(&self, o: &LPoint) -> bool {
        match (self, o) {
            (LPoint::Rigid(a), LPoint::Rigid(b)) => a == b,
            (LPoint::Eta { a, s }, LPoint::Eta { a: b, s: t }) => {
                s == t && a.sub(b).valuation() >= ExtQ::Fin(s.clone())
            }
            _ => false,
        }
    }
}

impl Eq for LPoint {}

impl fmt::Display for LPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LPoint::Rigid(a) => write!(f, "rigid({})", a),
            LPoint::Eta { a, s } => write!(f, "eta({}, {})", a, fmt_q(s)),
        }
    }
}

/// Image of `x` under `T -> T + w`.
pub fn translate(x: &LPoint, w: &EisElem) -> LPoint {
    match x {
        LPoint::Rigid(a) => LPoint::Rigid(a.add(w)),
        LPoint::Eta { a, s } => LPoint::Eta {
            a: a.add(w),
            s: s.clone(),
        },
    }
}

/// An open disc `|T - alpha| < p^-s` minus closed discs `|T - alpha_z| <= p^-t_z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndNeighborhood {
    pub p: u64,
    pub center: Q,
    pub s: Q,
    pub excluded: Vec<(Q, Q)>,
}

impl EndNeighborhood {
    pub fn new(p: u64, center: Q, s: Q, excluded: Vec<(Q, Q)>) -> Result<EndNeighborhood> {
        crate::arith::rational::check_prime(p)?;
        let val = |x: &Q| vp(x, p).map(|v| ExtQ::Fin(qi(v))).unwrap_or(ExtQ::PosInf);
        for (i, (a, t)) in excluded.iter().enumerate() {
            if val(&(a - &center)) <= ExtQ::Fin(s.clone()) {
                return Err(Error::Precondition(format!(
                    "excluded center {} lies outside the ambient disc",
                    fmt_q(a)
                )));
            }
            if *t <= s {
                return Err(Error::Precondition(format!(
                    "excluded radius p^({}) is not below the ambient radius",
                    fmt_q(&-t)
                )));
            }
            for (b, _) in &excluded[i + 1..] {
                let d = val(&(a - b));
                let fail = excluded
                    .iter()
                    .filter(|(c, _)| c == a || c == b)
                    .any(|(_, r)| d >= ExtQ::Fin(r.clone()));
                if fail {
                    return Err(Error::Precondition(format!(
                        "excluded discs at {} and {} are not separated by their radii",
                        fmt_q(a),
                        fmt_q(b)
                    )));
                }
            }
        }
        Ok(EndNeighborhood {
            p,
            center,
            s,
            excluded,
        })
    }

    /// Membership of `x` in `U`, by comparing seminorms of `T - alpha` and `T - alpha_z`.
    pub fn contains(&self, x: &LPoint) -> bool {
        let h = x.h();
        let c = EisElem::from_q(self.p, h, self.center.clone());
        if x.dist_val(&c) <= ExtQ::Fin(self.s.clone()) {
            return false;
        }
        self.excluded
            .iter()
            .all(|(a, t)| x.dist_val(&EisElem::from_q(self.p, h, a.clone())) < ExtQ::Fin(t.clone()))
    }

    /// Membership in the ambient open disc.
    pub fn in_ambient(&self, x: &LPoint) -> bool {
        let c = EisElem::from_q(self.p, x.h(), self.center.clone());
        x.dist_val(&c) > ExtQ::Fin(self.s.clone())
    }
}

impl fmt::Display for EndNeighborhood {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{{|{}| < p^({})}}",
            fmt_shift("T", &self.center),
            fmt_q(&-&self.s)
        )?;
        for (a, t) in &self.excluded {
            write!(
                f,
                " minus {{|{}| <= p^({})}}",
                fmt_shift("T", a),
                fmt_q(&-t)
            )?;
        }
        Ok(())
    }
}

/// The open interval `(a, b)` of absolute values, stored as exponents: `|x| = p^-e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gap {
    pub p: u64,
    /// Exponent of the largest distance between excluded centers, `+inf` for `a = 0`.
    pub a: ExtQ,
    /// Exponent of the upper end `b`.
    pub b: Q,
    /// Exponent of the effective lower end: `a`, raised to the excluded radii when there is a
    /// single excluded disc.
    pub floor: ExtQ,
}

impl Gap {
    pub fn new(p: u64, a: ExtQ, b: Q) -> Result<Gap> {
        if a <= ExtQ::Fin(b.clone()) {
            return Err(Error::Precondition(format!(
                "empty gap ({}, {})",
                abs_text(p, &a),
                abs_text(p, &ExtQ::Fin(b))
            )));
        }
        Ok(Gap {
            p,
            floor: a.clone(),
            a,
            b,
        })
    }

    /// Whether `|x| = p^-e` lies strictly inside the gap.
    pub fn contains_exp(&self, e: &Q) -> bool {
        *e > self.b && ExtQ::Fin(e.clone()) < self.floor
    }
}

fn abs_text(p: u64, e: &ExtQ) -> String {
    match e {
        ExtQ::PosInf => "0".into(),
        ExtQ::NegInf => "inf".into(),
        ExtQ::Fin(e) if e.is_zero() => "1".into(),
        ExtQ::Fin(e) => format!("{}^({})", p, fmt_q(&-e)),
    }
}

impl fmt::Display for Gap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {})",
            abs_text(self.p, &self.a),
            abs_text(self.p, &ExtQ::Fin(self.b.clone()))
        )?;
        if self.floor != self.a {
            write!(f, " above the radius {}", abs_text(self.p, &self.floor))?;
        }
        Ok(())
    }
}

/// The gap `max |alpha_z - alpha_z'| < a < b < s` with `b` at the logarithmic midpoint of `a` and the
/// ambient radius. For a single excluded disc `a = 0` and the midpoint is taken below
/// `min(p^-(s+1), r_z)`; without excluded discs the gap is `(0, s)`.
pub fn translation_gap(u: &EndNeighborhood) -> Result<Gap> {
    let u = EndNeighborhood::new(u.p, u.center.clone(), u.s.clone(), u.excluded.clone())?;
    let p = u.p;
    let mut a = ExtQ::PosInf;
    for (i, (x, _)) in u.excluded.iter().enumerate() {
        for (y, _) in &u.excluded[i + 1..] {
            a = a.min(ExtQ::from_vp(&(x - y), p));
        }
    }
    let (lower, floor) = match (&a, u.excluded.as_slice()) {
        (_, []) => {
            return Ok(Gap {
                p,
                a: ExtQ::PosInf,
                b: u.s.clone(),
                floor: ExtQ::PosInf,
            })
        }
        (ExtQ::Fin(e), _) => (e.clone(), a.clone()),
        (_, [(_, t)]) => {
            let one = &u.s + qi(1);
            (if *t < one { t.clone() } else { one }, ExtQ::Fin(t.clone()))
        }
        _ => unreachable!("distinct excluded centers"),
    };
    let b = (lower + &u.s) / qi(2);
    Ok(Gap { p, a, b, floor })
}

/// A translation by `w` in `l = Q_p[X]/(X^h - p)` with `|w|` in the gap and `gcd(h, m) = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranslationPlan {
    pub gap: Gap,
    pub field: BaseFieldDesc,
    pub h: u32,
    pub j: i64,
    pub w: EisElem,
    pub m: u64,
}

impl TranslationPlan {
    /// `-log_p |w| = j / h`.
    pub fn w_exp(&self) -> Q {
        Q::new(self.j.into(), (self.h as i64).into())
    }
}

impl fmt::Display for TranslationPlan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "gap {}; l = {} (degree {}, coprime to {}); w = {} with |w| = {}",
            self.gap,
            self.field,
            self.h,
            self.m,
            self.w,
            abs_text(self.gap.p, &ExtQ::Fin(self.w_exp()))
        )
    }
}

/// Smallest `h` prime to `m` such that some `p^(-j/h)` lies in the gap; `w = pi^j` for the largest
/// such absolute value.
pub fn choose_w(gap: &Gap, m: u64) -> Result<TranslationPlan> {
    let p = gap.p;
    for h in 1u32..=10_000 {
        if (h as u64).gcd(&m.max(1)) != 1 {
            continue;
        }
        let j = to_i64(&floor(&(&gap.b * qi(h as i64)))) + 1;
        let e = Q::new(j.into(), (h as i64).into());
        if !gap.contains_exp(&e) {
            continue;
        }
        let w = EisElem::pi_pow(p, h, j);
        if w.valuation() != ExtQ::Fin(e.clone()) {
            return Err(Error::Inconsistent(format!(
                "|{}| is not p^({})",
                w,
                fmt_q(&-e)
            )));
        }
        return Ok(TranslationPlan {
            gap: gap.clone(),
            field: eisenstein_extension(p, h)?,
            h,
            j,
            w,
            m,
        });
    }
    Err(Error::Unsupported(format!(
        "no ramification index up to 10000 fits the gap {}",
        gap
    )))
}

/// `translate`, refusing translations that leave the ambient disc of `u`.
pub fn translate_within(x: &LPoint, w: &EisElem, u: &EndNeighborhood) -> Result<LPoint> {
    if w.valuation() <= ExtQ::Fin(u.s.clone()) {
        return Err(Error::Precondition(format!(
            "|{}| is not below the ambient radius",
            w
        )));
    }
    Ok(translate(x, w))
}

/// One sample of the harness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SampleReport {
    pub x: LPoint,
    pub image: LPoint,
    pub before: bool,
    pub after: bool,
    /// A sample already in `U` is kept by the identity; otherwise its image must lie in `U`.
    pub ok: bool,
}

/// Whether the open disc `|T - (alpha_z + w)| < |w|` lies in `U`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InclusionCheck {
    pub index: usize,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub samples: Vec<SampleReport>,
    pub inclusions: Vec<InclusionCheck>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.samples.iter().all(|s| s.ok) && self.inclusions.iter().all(|c| c.ok)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.samples {
            writeln!(
                f,
                "{} -> {}: in U before {}, after {}{}",
                s.x,
                s.image,
                s.before,
                s.after,
                if s.ok { "" } else { "  FAILED" }
            )?;
        }
        for c in &self.inclusions {
            writeln!(
                f,
                "disc around excluded center {} + w inside U: {}",
                c.index, c.ok
            )?;
        }
        write!(
            f,
            "{}",
            if self.passed() {
                "all checks passed"
            } else {
                "some checks FAILED"
            }
        )
    }
}

/// Translates every sample by `w` and checks membership in `U`, together with the inclusion of the
/// open discs of radius `|w|` around the translated excluded centers.
pub fn verify_into(
    u: &EndNeighborhood,
    plan: &TranslationPlan,
    samples: &[LPoint],
) -> Result<VerifyReport> {
    let w = &plan.w;
    let (p, h) = (u.p, plan.h);
    let mut out = vec![];
    for x in samples {
        if x.h() != h || x.p() != p {
            return Err(Error::Precondition(format!(
                "{} is not a point over {}",
                x, plan.field
            )));
        }
        if !u.in_ambient(x) {
            return Err(Error::Precondition(format!(
                "{} lies outside the ambient disc",
                x
            )));
        }
        let image = translate_within(x, w, u)?;
        let before = u.contains(x);
        let after = u.contains(&image);
        out.push(SampleReport {
            x: x.clone(),
            image,
            before,
            after,
            ok: before || after,
        });
    }
    let we = w.valuation();
    let lift = |a: &Q| EisElem::from_q(p, h, a.clone());
    let inclusions = u
        .excluded
        .iter()
        .enumerate()
        .map(|(index, (a, _))| {
            let c = lift(a).add(w);
            let inside = c.sub(&lift(&u.center)).valuation() > ExtQ::Fin(u.s.clone())
                && we >= ExtQ::Fin(u.s.clone());
            let disjoint = u.excluded.iter().all(|(b, t)| {
                let d = c.sub(&lift(b)).valuation();
                d <= we && d < ExtQ::Fin(t.clone())
            });
            InclusionCheck {
                index,
                ok: inside && disjoint,
            }
        })
        .collect();
    Ok(VerifyReport {
        samples: out,
        inclusions,
    })
}

fn random_elem<R: Rng>(rng: &mut R, p: u64, h: u32, min_j: i64) -> EisElem {
    let j = min_j + rng.gen_range(0..3);
    let unit = |rng: &mut R| loop {
        let k: i64 = rng.gen_range(1..(p * p) as i64);
        if k % p as i64 != 0 {
            break qi(k);
        }
    };
    let lead = EisElem::pi_pow(p, h, j).scale(&unit(rng));
    if rng.gen_bool(0.5) {
        lead.add(&EisElem::pi_pow(p, h, j + 1 + rng.gen_range(0..h as i64)).scale(&unit(rng)))
    } else {
        lead
    }
}

fn random_point<R: Rng>(rng: &mut R, p: u64, h: u32, center: &Q, s: &Q, strict: bool) -> LPoint {
    let hq = qi(h as i64);
    let min_j = to_i64(&floor(&(s * &hq)))
        + if strict || !(s * &hq).is_integer() {
            1
        } else {
            0
        };
    let c = EisElem::from_q(p, h, center.clone()).add(&random_elem(rng, p, h, min_j));
    if rng.gen_bool(0.3) {
        LPoint::Rigid(c)
    } else {
        let step = rng.gen_range(if strict { 1 } else { 0 }..2 * h as i64 + 1);
        LPoint::Eta {
            a: c,
            s: s + Q::new(step.into(), (h as i64).into()),
        }
    }
}

/// Random points of the ambient disc of `u` over the degree `h` extension, mostly taken from the
/// excluded discs.
pub fn sample_points<R: Rng>(
    u: &EndNeighborhood,
    h: u32,
    count: usize,
    rng: &mut R,
) -> Vec<LPoint> {
    (0..count)
        .map(|_| {
            if u.excluded.is_empty() || rng.gen_bool(0.25) {
                random_point(rng, u.p, h, &u.center, &u.s, true)
            } else {
                let (a, t) = &u.excluded[rng.gen_range(0..u.excluded.len())];
                random_point(rng, u.p, h, a, t, false)
            }
        })
        .collect()
}

/// Products `d` and `d'` of the degrees of two rounds of extensions, required to be coprime.
pub fn zero_cycle_degrees(first: &[u64], second: &[u64]) -> Result<(u64, u64, u64)> {
    let d: u64 = first.iter().product();
    let d2: u64 = second.iter().product();
    let g = d.gcd(&d2);
    if g != 1 {
        return Err(Error::Coprimality(format!("gcd({}, {}) = {}", d, d2, g)));
    }
    Ok((d, d2, g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::qr;

    fn nb(center: i64, s: i64, ex: &[(i64, i64)]) -> EndNeighborhood {
        EndNeighborhood::new(
            3,
            qi(center),
            qi(s),
            ex.iter().map(|&(a, t)| (qi(a), qi(t))).collect(),
        )
        .unwrap()
    }

    #[test]
    fn gap_examples() {
        let g = translation_gap(&nb(0, 0, &[(0, 2)])).unwrap();
        assert_eq!((g.a.clone(), g.b.clone()), (ExtQ::PosInf, qr(1, 2)));
        let g = translation_gap(&nb(0, -1, &[(0, 1), (1, 1)])).unwrap();
        assert_eq!((g.a.clone(), g.b.clone()), (ExtQ::Fin(qi(0)), qr(-1, 2)));
        let g = translation_gap(&nb(0, 0, &[(0, 2), (3, 2)])).unwrap();
        assert_eq!((g.a.clone(), g.b.clone()), (ExtQ::Fin(qi(1)), qr(1, 2)));
    }

    #[test]
    fn separation_enforced() {
        assert!(
            EndNeighborhood::new(3, qi(0), qi(0), vec![(qi(0), qi(1)), (qi(3), qi(1))]).is_err()
        );
        assert!(EndNeighborhood::new(3, qi(0), qi(0), vec![(qi(1), qi(2))]).is_err());
    }

    #[test]
    fn choose_examples() {
        assert!(Gap::new(3, ExtQ::Fin(qi(0)), qi(1)).is_err());
        let plan = choose_w(&Gap::new(3, ExtQ::Fin(qi(1)), qi(0)).unwrap(), 1).unwrap();
        assert_eq!((plan.h, plan.w_exp()), (2, qr(1, 2)));
        let plan = choose_w(&Gap::new(3, ExtQ::Fin(qi(2)), qi(1)).unwrap(), 2).unwrap();
        assert_eq!((plan.h, plan.w_exp()), (3, qr(4, 3)));
        let plan = choose_w(&Gap::new(3, ExtQ::PosInf, qi(0)).unwrap(), 1).unwrap();
        assert_eq!((plan.h, plan.w.as_q()), (1, Some(qi(3))));
    }

    #[test]
    fn translate_examples() {
        let w = EisElem::from_q(3, 1, qi(3));
        let x = LPoint::from_berk(&BerkPoint::eta(3, qi(0), qi(1)), 1).unwrap();
        assert_eq!(translate(&x, &w), x);
        let r = LPoint::from_berk(&BerkPoint::rigid(3, qi(0)), 1).unwrap();
        assert_eq!(
            translate(&r, &w).to_berk(),
            Some(BerkPoint::rigid(3, qi(3)))
        );
        let e = LPoint::from_berk(&BerkPoint::eta(3, qi(1), qi(2)), 1).unwrap();
        assert_eq!(
            translate(&e, &w).to_berk(),
            Some(BerkPoint::eta(3, qi(4), qi(2)))
        );
    }

    #[test]
    fn verify_examples() {
        let u = nb(0, 0, &[(0, 2)]);
        let gap = Gap::new(3, ExtQ::Fin(qi(2)), qi(0)).unwrap();
        let mut plan = choose_w(&gap, 1).unwrap();
        plan.h = 2;
        plan.j = 1;
        plan.w = EisElem::generator(3, 2);
        plan.field = eisenstein_extension(3, 2).unwrap();
        let lift = |x: BerkPoint| LPoint::from_berk(&x, 2).unwrap();
        let samples = [
            lift(BerkPoint::rigid(3, qi(0))),
            lift(BerkPoint::eta(3, qi(0), qi(2))),
            lift(BerkPoint::eta(3, qi(0), qi(0) + qr(1, 4))),
        ];
        let r = verify_into(&u, &plan, &samples).unwrap();
        assert!(r.passed(), "{}", r);
        assert_eq!(
            r.samples
                .iter()
                .map(|s| (s.before, s.after))
                .collect::<Vec<_>>(),
            vec![(false, true), (false, true), (true, true)]
        );
        let t = &r.samples[0].image;
        assert_eq!(t.dist_val(&EisElem::zero(3, 2)), ExtQ::Fin(qr(1, 2)));
    }

    #[test]
    fn sampled_points_lie_in_the_ambient_disc() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let u = nb(0, 0, &[(0, 2), (3, 2)]);
        for h in 1..=3 {
            let plan = choose_w(&translation_gap(&u).unwrap(), h as u64 + 1).unwrap();
            let xs = sample_points(&u, plan.h, 30, &mut rng);
            assert!(xs.iter().all(|x| u.in_ambient(x)));
            assert!(xs.iter().any(|x| !u.contains(x)));
            assert!(verify_into(&u, &plan, &xs).unwrap().passed());
        }
    }

    #[test]
    fn degrees() {
        assert_eq!(zero_cycle_degrees(&[2], &[3]).unwrap(), (2, 3, 1));
        assert_eq!(zero_cycle_degrees(&[2, 3], &[5, 7]).unwrap(), (6, 35, 1));
        assert!(matches!(
            zero_cycle_degrees(&[2], &[4]),
            Err(Error::Coprimality(_))
        ));
    }
}

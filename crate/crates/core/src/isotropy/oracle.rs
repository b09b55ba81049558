use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::ff::FpPoly;
use crate::arith::ratfunc::RatFunc;
use crate::arith::rational::{p_pow, unit_part, vp, Q};
use crate::error::{Error, Result};

use super::form::{FiniteForm, FuncForm, PAdicForm, QuadForm, ResidueForm};
use super::verdict::Witness;

/// Search domain and bounds for the brute-force oracles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleDomain {
    /// Nonzero vectors over `F_p`; the coefficients must be `p`-units.
    Finite { limit: u64 },
    /// Primitive vectors modulo `p^k`; `None` uses the exclusion bound.
    ModPk { k: Option<u32> },
    /// Integer polynomial vectors over `Q[T]` of bounded degree and coefficient height.
    Polynomial {
        max_degree: usize,
        height: i64,
        limit: u64,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleOutcome {
    Found {
        witness: Witness,
    },
    /// Nothing within the bounds. `certified` when this proves anisotropy.
    NotFound {
        certified: bool,
        searched: String,
    },
    /// The search limit was reached before the domain was exhausted.
    Exhausted {
        searched: String,
    },
}

impl OracleOutcome {
    pub fn found(&self) -> bool {
        matches!(self, OracleOutcome::Found { .. })
    }
}

pub fn oracle_search(q: &QuadForm, domain: &OracleDomain) -> Result<OracleOutcome> {
    match domain {
        OracleDomain::Finite { limit } => {
            let consts = constant_units(q)?;
            let f = FiniteForm::prime_field(q.p, &consts)?;
            Ok(oracle_fq(&f, *limit))
        }
        OracleDomain::ModPk { k } => {
            let c = q.as_constants().ok_or_else(|| {
                Error::Precondition("the mod p^k oracle needs constant coefficients".into())
            })?;
            oracle_mod_pk(&PAdicForm::new(q.p, c)?, *k)
        }
        OracleDomain::Polynomial {
            max_degree,
            height,
            limit,
        } => oracle_q_t(q, *max_degree, *height, *limit),
    }
}

fn constant_units(q: &QuadForm) -> Result<Vec<i64>> {
    let p = q.p;
    q.as_constants()
        .ok_or_else(|| {
            Error::Precondition("the finite field oracle needs constant coefficients".into())
        })?
        .iter()
        .map(|c| {
            if vp(c, p) != Some(0) {
                return Err(Error::NonUnit(format!("{} is not a {}-adic unit", c, p)));
            }
            Ok(crate::arith::rational::residue(c, p) as i64)
        })
        .collect()
}

/// Exhaustive search over nonzero vectors of a finite field, normalized so that the first nonzero
/// entry is 1.
pub fn oracle_fq(q: &FiniteForm, limit: u64) -> OracleOutcome {
    let k = &q.field;
    let n = q.coeffs.len();
    let order = k.order();
    let mut count = 0u64;
    for lead in 0..n {
        let free = n - lead - 1;
        let total = order.checked_pow(free as u32);
        let Some(total) = total else {
            return OracleOutcome::Exhausted {
                searched: format!("{} vectors", count),
            };
        };
        for idx in 0..total {
            count += 1;
            if count > limit {
                return OracleOutcome::Exhausted {
                    searched: format!("{} vectors", limit),
                };
            }
            let mut x = vec![k.zero(); n];
            x[lead] = k.one();
            let mut r = idx;
            for xi in x.iter_mut().skip(lead + 1) {
                *xi = k.element((r % order) as u64);
                r /= order;
            }
            if q.eval(&x).is_zero() {
                return OracleOutcome::Found {
                    witness: Witness::Finite {
                        field: k.clone(),
                        x,
                    },
                };
            }
        }
    }
    OracleOutcome::NotFound {
        certified: true,
        searched: format!("all {} projective points", count),
    }
}

struct Normalized {
    /// Integer coefficients with valuation 0 or 1.
    a: Vec<i128>,
    /// `x_orig_i = x_norm_i * p^(-shift_i)`.
    shift: Vec<i64>,
    vmax: u32,
}

fn normalize(q: &PAdicForm, modulus: &BigInt) -> Normalized {
    let p = q.p;
    let parts: Vec<(i64, Q)> = q.coeffs.iter().map(|a| unit_part(a, p)).collect();
    let all_odd = parts.iter().all(|(v, _)| v.rem_euclid(2) == 1);
    let den = parts
        .iter()
        .fold(BigInt::one(), |acc, (_, u)| acc.lcm(u.denom()));
    let mut a = vec![];
    let mut shift = vec![];
    for (v, u) in &parts {
        let e = v.rem_euclid(2) - if all_odd { 1 } else { 0 };
        let c = (u * Q::from_integer(den.clone())).to_integer() * BigInt::from(p).pow(e as u32);
        a.push(c.mod_floor(modulus).to_i128().unwrap());
        shift.push(v.div_euclid(2));
    }
    Normalized {
        a,
        shift,
        vmax: if all_odd {
            0
        } else {
            parts
                .iter()
                .map(|(v, _)| v.rem_euclid(2) as u32)
                .max()
                .unwrap()
        },
    }
}

fn val_mod(x: i128, p: i128, cap: u32) -> u32 {
    if x == 0 {
        return cap;
    }
    let mut v = 0;
    let mut x = x;
    while x % p == 0 && v < cap {
        x /= p;
        v += 1;
    }
    v
}

struct Dfs<'a> {
    a: &'a [i128],
    p: i128,
    m: i128,
    cap: u32,
    depth: u32,
    nodes: u64,
    cut: bool,
}

impl Dfs<'_> {
    fn q(&self, x: &[i128]) -> i128 {
        self.a
            .iter()
            .zip(x)
            .fold(0i128, |acc, (a, x)| (acc + a * (x * x % self.m)) % self.m)
    }

    /// Hensel: `v(q(x)) >= 2e + 1` with `e = min v(2 a_i x_i)` lifts to a true zero.
    fn hensel(&self, x: &[i128]) -> bool {
        let e = self
            .a
            .iter()
            .zip(x)
            .map(|(a, x)| val_mod(2 * a * x % self.m, self.p, self.cap))
            .min()
            .unwrap();
        2 * e < self.cap.min(val_mod(self.q(x), self.p, self.cap)) && 2 * e < self.cap
    }

    fn visit(&mut self, x: &mut Vec<i128>, j: u32, pj: i128) -> Option<Vec<i128>> {
        self.nodes += 1;
        if self.hensel(x) {
            return Some(x.clone());
        }
        if j >= self.depth {
            self.cut = true;
            return None;
        }
        if val_mod(self.q(x), self.p, self.cap) < j + 1 {
            return None;
        }
        let n = x.len();
        let base = x.clone();
        let total = (self.p as u128).pow(n as u32);
        for idx in 0..total {
            let mut r = idx;
            for i in 0..n {
                x[i] = base[i] + pj * (r % self.p as u128) as i128;
                r /= self.p as u128;
            }
            if let Some(w) = self.visit(x, j + 1, pj * self.p) {
                return Some(w);
            }
        }
        *x = base;
        None
    }
}

/// Primitive zeros modulo `p^k` searched level by level. Coefficients are first normalized to
/// valuations 0 and 1; a level with no primitive solution certifies anisotropy over `Q_p`, and the
/// default `k = 2 v_max + 2` always decides.
pub fn oracle_mod_pk(q: &PAdicForm, k: Option<u32>) -> Result<OracleOutcome> {
    let p = q.p;
    let modulus0 = BigInt::from(p).pow(12);
    let norm = normalize(q, &modulus0);
    let bound = 2 * norm.vmax + 2;
    let depth = k.unwrap_or(bound).max(1);
    if depth > 10 || (p as f64).powi(depth as i32 + 3) > 1e12 {
        return Err(Error::Precondition(format!(
            "modulus {}^{} is too large for the oracle",
            p, depth
        )));
    }
    let cap = depth + 2;
    let m = (p as i128).pow(cap);
    let a: Vec<i128> = norm.a.iter().map(|c| c.rem_euclid(m)).collect();
    let n = a.len();
    let mut dfs = Dfs {
        a: &a,
        p: p as i128,
        m,
        cap,
        depth,
        nodes: 0,
        cut: false,
    };
    let total = (p as u128).pow(n as u32);
    {
        for idx in 0..total {
            let mut x = vec![0i128; n];
            let mut r = idx;
            for xi in x.iter_mut() {
                *xi = (r % p as u128) as i128;
                r /= p as u128;
            }
            if x.iter().find(|&&c| c != 0) != Some(&1) {
                continue;
            }
            if val_mod(dfs.q(&x), p as i128, cap) < 1 {
                continue;
            }
            if let Some(w) = dfs.visit(&mut x, 1, p as i128) {
                let x: Vec<Q> = w
                    .iter()
                    .zip(&norm.shift)
                    .map(|(c, s)| Q::from_integer((*c).into()) * p_pow(p, -s))
                    .collect();
                let x = primitive(x, p);
                let prec = vp(&q.eval(&x), p)
                    .unwrap_or(i64::MAX)
                    .clamp(0, depth as i64 + 2) as u32;
                return Ok(OracleOutcome::Found {
                    witness: Witness::PAdic {
                        p,
                        x,
                        precision: prec,
                        exact: false,
                    },
                });
            }
        }
    }
    let searched = format!("{} nodes modulo {}^{}", dfs.nodes, p, depth);
    if dfs.cut {
        Ok(OracleOutcome::Exhausted { searched })
    } else {
        Ok(OracleOutcome::NotFound {
            certified: true,
            searched,
        })
    }
}

fn primitive(mut x: Vec<Q>, p: u64) -> Vec<Q> {
    if let Some(m) = x.iter().filter_map(|c| vp(c, p)).min() {
        let s = p_pow(p, -m);
        for c in &mut x {
            *c *= &s;
        }
    }
    x
}

/// All polynomials over `F_p` of degree at most `d`, zero first.
pub(crate) fn fp_polys(p: u64, d: usize) -> impl Iterator<Item = FpPoly> {
    let total = p.pow(d as u32 + 1);
    (0..total).map(move |i| FpPoly::from_index(p, i))
}

/// Exhaustive search over `F_p[t]` vectors of degree at most `max_degree`: all entries but the last
/// are enumerated and the last is recovered by a polynomial square root.
pub fn oracle_fp_t(q: &FuncForm, max_degree: usize, limit: u64) -> OracleOutcome {
    let p = q.p;
    let n = q.coeffs.len();
    let per = p.pow(max_degree as u32 + 1);
    let total = (per as u128).checked_pow(n as u32 - 1);
    if total.is_none_or(|t| t > limit as u128) {
        return OracleOutcome::Exhausted {
            searched: format!("more than {} vectors", limit),
        };
    }
    let total = total.unwrap();
    let last = &q.coeffs[n - 1];
    let head = FuncForm {
        p,
        coeffs: q.coeffs[..n - 1].to_vec(),
    };
    for idx in 0..total {
        let mut r = idx;
        let mut x = Vec::with_capacity(n);
        for _ in 0..n - 1 {
            x.push(FpPoly::from_index(p, (r % per as u128) as u64));
            r /= per as u128;
        }
        let rest = head.eval(&x).neg();
        let (quo, rem) = rest.divrem(last);
        if !rem.is_zero() {
            continue;
        }
        if let Some(s) = quo.sqrt() {
            if s.deg() <= max_degree as i64 {
                x.push(s);
                if x.iter().any(|c| !c.is_zero()) {
                    return OracleOutcome::Found {
                        witness: Witness::Function { p, x },
                    };
                }
            }
        }
    }
    OracleOutcome::NotFound {
        certified: false,
        searched: format!("degree <= {} over F_{}[t]", max_degree, p),
    }
}

fn small_ints(h: i64) -> Vec<i64> {
    let mut v = vec![0];
    for k in 1..=h {
        v.push(k);
        v.push(-k);
    }
    v
}

/// Integer polynomial vectors over `Q[T]`, first nonzero entry with positive leading coefficient.
pub fn oracle_q_t(
    q: &QuadForm,
    max_degree: usize,
    height: i64,
    limit: u64,
) -> Result<OracleOutcome> {
    let vals = small_ints(height);
    let per = (vals.len() as u128).pow(max_degree as u32 + 1);
    let n = q.dim();
    let total = per.checked_pow(n as u32);
    if total.is_none_or(|t| t > limit as u128) {
        return Ok(OracleOutcome::Exhausted {
            searched: format!("more than {} vectors", limit),
        });
    }
    let poly = |mut i: u128| -> RatFunc {
        let mut c = vec![];
        for _ in 0..=max_degree {
            c.push(Q::from_integer(
                vals[(i % vals.len() as u128) as usize].into(),
            ));
            i /= vals.len() as u128;
        }
        RatFunc::poly(crate::arith::poly::Poly::new(c))
    };
    for idx in 1..total.unwrap() {
        let mut r = idx;
        let mut digits = vec![0u128; n];
        for d in digits.iter_mut().rev() {
            *d = r % per;
            r /= per;
        }
        let x: Vec<RatFunc> = digits.iter().map(|&d| poly(d)).collect();
        let first = x.iter().find(|c| !c.is_zero()).unwrap();
        if first.num().lc().is_negative() {
            continue;
        }
        if q.eval(&x)?.is_zero() {
            return Ok(OracleOutcome::Found {
                witness: Witness::Rational { x },
            });
        }
    }
    Ok(OracleOutcome::NotFound {
        certified: false,
        searched: format!("degree <= {}, height <= {}", max_degree, height),
    })
}

/// Exact or precision-qualified evaluation of a witness against a form over a base field, with the
/// primitivity check.
pub fn check_witness(q: &ResidueForm, w: &Witness) -> Result<bool> {
    let dim_err = |k: usize| {
        Error::Precondition(format!(
            "witness has {} entries, form has dimension {}",
            k,
            q.dim()
        ))
    };
    match (q, w) {
        (ResidueForm::Finite(f), Witness::Finite { field, x }) => {
            if x.len() != f.coeffs.len() {
                return Err(dim_err(x.len()));
            }
            Ok(field == &f.field
                && x.iter().any(|c| !field.reduce(c).is_zero())
                && f.eval(x).is_zero())
        }
        (
            ResidueForm::PAdic(f),
            Witness::PAdic {
                x,
                precision,
                exact,
                ..
            },
        ) => {
            if x.len() != f.coeffs.len() {
                return Err(dim_err(x.len()));
            }
            let p = f.p;
            let integral = x.iter().all(|c| vp(c, p).is_none_or(|v| v >= 0));
            let prim = x.iter().any(|c| vp(c, p) == Some(0));
            let v = f.eval(x);
            let ok = if *exact {
                v.is_zero()
            } else {
                vp(&v, p).is_none_or(|k| k >= *precision as i64)
            };
            Ok(integral && prim && ok)
        }
        (ResidueForm::Function(f), Witness::Function { x, .. }) => {
            if x.len() != f.coeffs.len() {
                return Err(dim_err(x.len()));
            }
            Ok(x.iter().any(|c| !c.is_zero()) && f.eval(x).is_zero())
        }
        (_, Witness::Lifted { form, residue, .. }) => check_witness(form, residue),
        _ => Err(Error::Precondition(format!(
            "witness {} does not live over {}",
            w,
            q.field()
        ))),
    }
}

/// Exact check of a global witness over `Q(T)`.
pub fn check_rational_witness(q: &QuadForm, x: &[RatFunc]) -> Result<bool> {
    Ok(x.iter().any(|c| !c.is_zero()) && q.eval(x)?.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::qi;

    #[test]
    fn finite_examples() {
        let q = FiniteForm::prime_field(3, &[1, 1, 1]).unwrap();
        match oracle_fq(&q, 1000) {
            OracleOutcome::Found {
                witness: Witness::Finite { x, .. },
            } => {
                assert_eq!(x, vec![FpPoly::constant(3, 1); 3]);
            }
            o => panic!("{:?}", o),
        }
        assert!(matches!(
            oracle_fq(&FiniteForm::prime_field(3, &[1, 1]).unwrap(), 100),
            OracleOutcome::NotFound {
                certified: true,
                ..
            }
        ));
    }

    #[test]
    fn mod_pk_examples() {
        let q = PAdicForm::from_ints(3, &[1, 1, 3, 3]).unwrap();
        assert!(matches!(
            oracle_mod_pk(&q, Some(8)).unwrap(),
            OracleOutcome::NotFound {
                certified: true,
                ..
            }
        ));
        assert!(matches!(
            oracle_mod_pk(&q, None).unwrap(),
            OracleOutcome::NotFound {
                certified: true,
                ..
            }
        ));
        let q = PAdicForm::from_ints(3, &[1, 1, 1, 3]).unwrap();
        match oracle_mod_pk(&q, None).unwrap() {
            OracleOutcome::Found { witness } => {
                assert!(check_witness(&ResidueForm::PAdic(q), &witness).unwrap())
            }
            o => panic!("{:?}", o),
        }
        let q = PAdicForm::new(5, vec![qi(1), qi(5), qi(50), qi(2) / qi(25)]).unwrap();
        assert!(!matches!(
            oracle_mod_pk(&q, None).unwrap(),
            OracleOutcome::Exhausted { .. }
        ));
    }

    #[test]
    fn polynomial_example() {
        let q = QuadForm::new(
            5,
            vec![RatFunc::one(), RatFunc::constant(qi(-1)), RatFunc::t()],
        )
        .unwrap();
        match oracle_search(
            &q,
            &OracleDomain::Polynomial {
                max_degree: 0,
                height: 1,
                limit: 1000,
            },
        )
        .unwrap()
        {
            OracleOutcome::Found {
                witness: Witness::Rational { x },
            } => {
                assert_eq!(x, vec![RatFunc::one(), RatFunc::one(), RatFunc::zero()]);
            }
            o => panic!("{:?}", o),
        }
    }

    #[test]
    fn function_field_search() {
        let q = FuncForm::from_i64s(3, &[&[1], &[0, -1]]).unwrap();
        assert!(!oracle_fp_t(&q, 3, 1 << 20).found());
        let q = FuncForm::from_i64s(3, &[&[1], &[0, 1], &[0, -1]]).unwrap();
        assert!(oracle_fp_t(&q, 1, 1 << 20).found());
    }

    #[test]
    fn witness_checks() {
        let q = ResidueForm::Finite(FiniteForm::prime_field(3, &[1, 1]).unwrap());
        let one = FpPoly::constant(3, 1);
        let w = Witness::Finite {
            field: crate::arith::ff::Fq::prime(3),
            x: vec![one.clone(), one],
        };
        assert!(!check_witness(&q, &w).unwrap());
        let q = ResidueForm::PAdic(PAdicForm::from_ints(5, &[1, -1]).unwrap());
        let w = Witness::PAdic {
            p: 5,
            x: vec![qi(1), qi(1)],
            precision: 32,
            exact: true,
        };
        assert!(check_witness(&q, &w).unwrap());
    }
}

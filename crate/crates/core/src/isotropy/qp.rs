use num_bigint::BigInt;
use num_traits::Zero;

use crate::arith::ff::{FpPoly, Fq};
use crate::arith::padic::{hensel_sqrt_from, hilbert_symbol, is_square_qp};
use crate::arith::rational::{p_pow, rational_sqrt, residue, unit_part, vp, Q};
use crate::error::{Error, Result};

use super::finite::isotropic_fq;
use super::form::{FiniteForm, PAdicForm, ResidueForm};
use super::oracle::{oracle_mod_pk, OracleOutcome};
use super::verdict::{Certificate, IsotropyVerdict, Part, Witness};

/// `a_index = pi^(2 shift + class) unit`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitEntry<T> {
    pub index: usize,
    pub shift: i64,
    pub unit: T,
}

/// `q = q_1 + pi q_2` after absorbing even powers of the uniformizer into the variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Split<T> {
    pub first: Vec<SplitEntry<T>>,
    pub second: Vec<SplitEntry<T>>,
}

impl<T: Clone> Split<T> {
    pub fn from_valuations(entries: Vec<(i64, T)>) -> Split<T> {
        let mut s = Split {
            first: vec![],
            second: vec![],
        };
        for (index, (v, unit)) in entries.into_iter().enumerate() {
            let e = SplitEntry {
                index,
                shift: v.div_euclid(2),
                unit,
            };
            if v.rem_euclid(2) == 0 {
                s.first.push(e);
            } else {
                s.second.push(e);
            }
        }
        s
    }

    pub fn class(&self, second: bool) -> &[SplitEntry<T>] {
        if second {
            &self.second
        } else {
            &self.first
        }
    }
}

/// Springer split of a form over `Q_p` along `p`.
pub fn springer_split(q: &PAdicForm) -> Split<Q> {
    Split::from_valuations(q.coeffs.iter().map(|a| unit_part(a, q.p)).collect())
}

pub(crate) fn residue_form(p: u64, entries: &[SplitEntry<Q>]) -> Option<FiniteForm> {
    if entries.is_empty() {
        return None;
    }
    Some(
        FiniteForm::new(
            Fq::prime(p),
            entries
                .iter()
                .map(|e| FpPoly::constant(p, residue(&e.unit, p)))
                .collect(),
        )
        .unwrap(),
    )
}

pub(crate) fn part(label: &str, form: Option<ResidueForm>, verdict: &IsotropyVerdict) -> Part {
    let cert = match verdict {
        IsotropyVerdict::Anisotropic { certificate } => certificate.clone(),
        _ => unreachable!("parts are built from anisotropic residue verdicts"),
    };
    Part {
        label: label.into(),
        form,
        cert,
    }
}

/// Zero of `sum u_i x_i^2` (units `u_i`) lifted from the residue zero `xbar` to precision `n`.
///
/// Returns the vector and whether the zero is exact.
pub(crate) fn lift_unit_zero(units: &[Q], xbar: &[u64], p: u64, n: u32) -> (Vec<Q>, bool) {
    let j = xbar
        .iter()
        .position(|&x| x != 0)
        .expect("nonzero residue witness");
    let mut x: Vec<Q> = xbar.iter().map(|&c| Q::from_integer(c.into())).collect();
    let rest = units
        .iter()
        .zip(&x)
        .enumerate()
        .filter(|(i, _)| *i != j)
        .fold(Q::zero(), |acc, (_, (u, xi))| acc + u * xi * xi);
    let target = -rest / &units[j];
    if let Some(r) = rational_sqrt(&target) {
        x[j] = if residue(&r, p) == xbar[j] { r } else { -r };
        return (x, true);
    }
    x[j] = hensel_sqrt_from(&target, p, n, xbar[j]).value;
    (x, false)
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

/// Serre's criteria for representing zero over `Q_p` via the discriminant and Hasse invariant.
pub fn hilbert_criterion(q: &PAdicForm) -> Result<bool> {
    let p = q.p;
    let a = &q.coeffs;
    let d: Q = a.iter().product();
    let mut eps = 1;
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            eps *= hilbert_symbol(&a[i], &a[j], p)?;
        }
    }
    let m1 = Q::from_integer(BigInt::from(-1));
    Ok(match a.len() {
        1 => false,
        2 => is_square_qp(&-d, p),
        3 => hilbert_symbol(&m1, &-d, p)? == eps,
        4 => !is_square_qp(&d, p) || eps == hilbert_symbol(&m1, &m1, p)?,
        _ => true,
    })
}

/// Isotropy over `Q_p` by the Springer split along `p`, cross-checked against the Hilbert symbol
/// criteria and the mod `p^k` oracle. Disagreement aborts with `Error::Inconsistent`.
pub fn isotropic_qp(q: &PAdicForm, precision: u32) -> Result<IsotropyVerdict> {
    let p = q.p;
    let split = springer_split(q);
    let r1 = residue_form(p, &split.first);
    let r2 = residue_form(p, &split.second);
    let v1 = r1
        .as_ref()
        .map(isotropic_fq)
        .unwrap_or(IsotropyVerdict::Anisotropic {
            certificate: Certificate::Empty,
        });
    let v2 = r2
        .as_ref()
        .map(isotropic_fq)
        .unwrap_or(IsotropyVerdict::Anisotropic {
            certificate: Certificate::Empty,
        });
    let verdict = if let Some((second, w)) =
        [(false, &v1), (true, &v2)]
            .iter()
            .find_map(|(s, v)| match v {
                IsotropyVerdict::Isotropic {
                    witness: Witness::Finite { x, .. },
                    ..
                } => Some((*s, x.clone())),
                _ => None,
            }) {
        let entries = split.class(second);
        let units: Vec<Q> = entries.iter().map(|e| e.unit.clone()).collect();
        let xbar: Vec<u64> = w.iter().map(|c| c.coeff(0)).collect();
        let (xs, exact) = lift_unit_zero(&units, &xbar, p, precision);
        let mut x = vec![Q::zero(); q.coeffs.len()];
        for (e, xi) in entries.iter().zip(xs) {
            x[e.index] = xi * p_pow(p, -e.shift);
        }
        let x = primitive(x, p);
        let label = if second { "q2" } else { "q1" };
        IsotropyVerdict::Isotropic {
            witness: Witness::PAdic {
                p,
                x,
                precision,
                exact,
            },
            via: format!("residue form {} isotropic over F_{}", label, p),
        }
    } else {
        IsotropyVerdict::Anisotropic {
            certificate: Certificate::Springer {
                layer: format!("Q_{}", p),
                uniformizer: p.to_string(),
                source: Some(ResidueForm::PAdic(q.clone())),
                place: None,
                parts: vec![
                    part("q1", r1.map(ResidueForm::Finite), &v1),
                    part("q2", r2.map(ResidueForm::Finite), &v2),
                ],
            },
        }
    };
    let symbols = hilbert_criterion(q)?;
    if symbols != verdict.is_isotropic() {
        return Err(Error::Inconsistent(format!(
            "Springer split and Hilbert symbols disagree on {} over Q_{}",
            q, p
        )));
    }
    match &verdict {
        IsotropyVerdict::Isotropic {
            witness: Witness::PAdic { x, exact, .. },
            ..
        } => {
            let v = q.eval(x);
            let base = q
                .coeffs
                .iter()
                .zip(x)
                .filter_map(|(a, xi)| vp(&(a * xi * xi), p))
                .min()
                .unwrap_or(0);
            let ok = if *exact {
                v.is_zero()
            } else {
                vp(&v, p).is_none_or(|k| k >= base + precision as i64)
            };
            if !ok {
                return Err(Error::Inconsistent(format!(
                    "lifted witness fails on {}",
                    q
                )));
            }
        }
        IsotropyVerdict::Anisotropic { .. } if q.coeffs.len() <= 4 => {
            if let OracleOutcome::Found { .. } = oracle_mod_pk(q, None)? {
                return Err(Error::Inconsistent(format!(
                    "oracle found a zero of {} mod p^k",
                    q
                )));
            }
        }
        _ => {}
    }
    Ok(verdict)
}

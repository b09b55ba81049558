use std::fmt;

use crate::arith::field::BaseFieldDesc;
use crate::arith::ratfunc::RatFunc;
use crate::arith::series::{Center, Laurent};
use crate::berkline::{BerkPoint, Kind, RigidCenter};
use crate::error::{Error, Result};
use crate::models::reduce_ratfunc;

use super::form::{FuncForm, PAdicForm, QuadForm, ResidueForm};
use super::funcfield::isotropic_fp_t;
use super::qp::{isotropic_qp, part, Split};
use super::verdict::{Certificate, IsotropyVerdict, UnknownReason, Witness};
use super::Bounds;

/// A complete discretely valued field attached to the input.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Site {
    /// `Q_p` itself, for constant forms.
    Qp(u64),
    /// Completion of `Q_p(T)` at the divisorial valuation of an integral type 2 point.
    Vertex(BerkPoint),
    /// Completion of `Q_p(T)` at the `T - c` adic (or `1/T` adic) valuation of a rigid point.
    Rigid(BerkPoint),
}

impl Site {
    pub fn of_point(x: &BerkPoint) -> Site {
        if x.is_rigid() {
            Site::Rigid(x.clone())
        } else {
            Site::Vertex(x.clone())
        }
    }

    pub fn p(&self) -> u64 {
        match self {
            Site::Qp(p) => *p,
            Site::Vertex(x) | Site::Rigid(x) => x.p(),
        }
    }

    pub fn field(&self) -> BaseFieldDesc {
        let p = self.p();
        match self {
            Site::Qp(_) => BaseFieldDesc::PAdicRationals { p },
            Site::Vertex(_) => BaseFieldDesc::cdvf(
                BaseFieldDesc::RationalFunctionField {
                    p,
                    d: 1,
                    coordinate: "t".into(),
                },
                &p.to_string(),
            )
            .expect("determined residue field"),
            Site::Rigid(x) => {
                BaseFieldDesc::cdvf(BaseFieldDesc::PAdicRationals { p }, &uniformizer(x))
                    .expect("determined residue field")
            }
        }
    }
}

fn uniformizer(x: &BerkPoint) -> String {
    match x.kind() {
        Kind::Rigid(RigidCenter::Finite(c)) => Center::Finite(c.clone()).var_name(),
        Kind::Rigid(RigidCenter::Infinity) => Center::Infinity.var_name(),
        _ => x.to_string(),
    }
}

impl fmt::Display for Site {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Site::Qp(p) => write!(f, "Q_{}", p),
            Site::Vertex(x) | Site::Rigid(x) => write!(f, "{}", x),
        }
    }
}

/// Split of `q` at a vertex: valuations and the polynomial square classes `num * den` of the
/// residues in `F_p(t)`.
pub fn vertex_split(q: &QuadForm, x: &BerkPoint) -> Result<Split<crate::arith::ff::FpPoly>> {
    let (a, s) = x
        .eta_parts()
        .ok_or_else(|| Error::InvalidPoint(format!("{} is not a type 2 point", x)))?;
    let entries = q
        .coeffs
        .iter()
        .map(|f| {
            let r = reduce_ratfunc(f, a, s, q.p)?;
            Ok((r.val, r.num.mul(&r.den)))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Split::from_valuations(entries))
}

/// Split of `q` at a rigid point: orders and leading Laurent coefficients.
pub fn rigid_split(q: &QuadForm, center: &Center) -> Split<crate::arith::rational::Q> {
    Split::from_valuations(
        q.coeffs
            .iter()
            .map(|f| {
                let l = Laurent::of_ratfunc(f, center, 1);
                (l.order, l.leading().clone())
            })
            .collect(),
    )
}

/// Springer's theorem over the completion at `site`: `q` is isotropic iff one of its two residue
/// forms is. The residue verdicts come from `Q_p` or `F_p(t)`.
pub fn isotropic_cdvf(q: &QuadForm, site: &Site, bounds: &Bounds) -> Result<IsotropyVerdict> {
    let p = q.p;
    if site.p() != p {
        return Err(Error::Precondition(format!(
            "site {} and form over p = {} disagree",
            site, p
        )));
    }
    match site {
        Site::Qp(_) => {
            let c = q
                .as_constants()
                .ok_or_else(|| Error::Precondition(format!("{} is not defined over Q_{}", q, p)))?;
            isotropic_qp(&PAdicForm::new(p, c)?, bounds.precision)
        }
        Site::Vertex(x) => {
            let split = vertex_split(q, x)?;
            let forms = [false, true].map(|second| {
                let c: Vec<_> = split.class(second).iter().map(|e| e.unit.clone()).collect();
                (!c.is_empty()).then_some(FuncForm { p, coeffs: c })
            });
            let verdicts = forms.clone().map(|f| match f {
                Some(f) => isotropic_fp_t(&f, bounds.max_degree),
                None => IsotropyVerdict::Anisotropic {
                    certificate: Certificate::Empty,
                },
            });
            assemble(
                site,
                &split,
                forms.map(|f| f.map(ResidueForm::Function)),
                verdicts,
                "p".into(),
            )
        }
        Site::Rigid(x) => {
            let center = match x.kind() {
                Kind::Rigid(RigidCenter::Finite(c)) => Center::Finite(c.clone()),
                Kind::Rigid(RigidCenter::Infinity) => Center::Infinity,
                _ => {
                    return Ok(IsotropyVerdict::Unknown {
                        reason: UnknownReason::HigherDegreePoint(format!(
                            "{} has residue field larger than Q_{}",
                            x, p
                        )),
                    })
                }
            };
            let split = rigid_split(q, &center);
            let forms = [false, true].map(|second| {
                let c: Vec<_> = split.class(second).iter().map(|e| e.unit.clone()).collect();
                (!c.is_empty()).then_some(PAdicForm { p, coeffs: c })
            });
            let mut verdicts = vec![];
            for f in &forms {
                verdicts.push(match f {
                    Some(f) => isotropic_qp(f, bounds.precision)?,
                    None => IsotropyVerdict::Anisotropic {
                        certificate: Certificate::Empty,
                    },
                });
            }
            let verdicts: [IsotropyVerdict; 2] = verdicts.try_into().unwrap();
            assemble(
                site,
                &split,
                forms.map(|f| f.map(ResidueForm::PAdic)),
                verdicts,
                uniformizer(x),
            )
        }
    }
}

fn assemble<T: Clone>(
    site: &Site,
    split: &Split<T>,
    forms: [Option<ResidueForm>; 2],
    verdicts: [IsotropyVerdict; 2],
    pi: String,
) -> Result<IsotropyVerdict> {
    let layer = format!("completion at {}", site);
    for (i, label) in ["q1", "q2"].iter().enumerate() {
        if let IsotropyVerdict::Isotropic { witness, .. } = &verdicts[i] {
            return Ok(IsotropyVerdict::Isotropic {
                witness: Witness::Lifted {
                    layer,
                    coords: split.class(i == 1).iter().map(|e| e.index).collect(),
                    form: Box::new(forms[i].clone().unwrap()),
                    residue: Box::new(witness.clone()),
                },
                via: format!(
                    "residue form {} isotropic over {}",
                    label,
                    forms[i].as_ref().unwrap().field()
                ),
            });
        }
    }
    if let Some(v) = verdicts
        .iter()
        .find(|v| matches!(v, IsotropyVerdict::Unknown { .. }))
    {
        return Ok(v.clone());
    }
    Ok(IsotropyVerdict::Anisotropic {
        certificate: Certificate::Springer {
            layer,
            uniformizer: pi,
            source: None,
            place: None,
            parts: vec![
                part("q1", forms[0].clone(), &verdicts[0]),
                part("q2", forms[1].clone(), &verdicts[1]),
            ],
        },
    })
}

/// Coefficients as rational functions, for callers holding constants.
pub fn constant_form(p: u64, c: &[i64]) -> Result<QuadForm> {
    QuadForm::new(
        p,
        c.iter()
            .map(|&a| RatFunc::constant(crate::arith::rational::qi(a)))
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::qi;

    #[test]
    fn hyperbolic_everywhere() {
        let q = constant_form(3, &[1, -1]).unwrap();
        let b = Bounds::default();
        for site in [
            Site::Qp(3),
            Site::Vertex(BerkPoint::gauss(3)),
            Site::Rigid(BerkPoint::rigid(3, qi(2))),
            Site::Rigid(BerkPoint::infinity(3)),
        ] {
            assert!(
                isotropic_cdvf(&q, &site, &b).unwrap().is_isotropic(),
                "{}",
                site
            );
        }
    }

    #[test]
    fn qp_examples() {
        let b = Bounds::default();
        match isotropic_cdvf(&constant_form(3, &[1, 1, 3, 3]).unwrap(), &Site::Qp(3), &b).unwrap() {
            IsotropyVerdict::Anisotropic { certificate } => {
                assert_eq!(certificate.leaves(), vec!["<1, 1> over F_3".to_string(); 2]);
            }
            v => panic!("{}", v),
        }
        match isotropic_cdvf(&constant_form(3, &[1, 1, 1, 3]).unwrap(), &Site::Qp(3), &b).unwrap() {
            IsotropyVerdict::Isotropic { via, .. } => assert!(via.contains("q1")),
            v => panic!("{}", v),
        }
    }

    #[test]
    fn gauss_point_obstruction() {
        let q = QuadForm::new(
            3,
            vec![
                RatFunc::one(),
                RatFunc::constant(qi(-2)),
                RatFunc::t(),
                RatFunc::t().scale(&qi(-2)),
            ],
        )
        .unwrap();
        let v = isotropic_cdvf(&q, &Site::Vertex(BerkPoint::gauss(3)), &Bounds::default()).unwrap();
        assert!(v.is_anisotropic(), "{}", v);
    }

    #[test]
    fn rigid_point_uses_leading_coefficients() {
        // at T = 0: <1, -(1 + 3T)> has residue form <1, -1> over Q_3
        let q = QuadForm::new(
            3,
            vec![
                RatFunc::one(),
                RatFunc::poly(crate::arith::poly::Poly::from_ints(&[-1, -3])),
            ],
        )
        .unwrap();
        let v = isotropic_cdvf(
            &q,
            &Site::Rigid(BerkPoint::rigid(3, qi(0))),
            &Bounds::default(),
        )
        .unwrap();
        assert!(v.is_isotropic());
    }
}

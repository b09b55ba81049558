use crate::error::{Error, Result};
use crate::models::{factor_at, local_params, FiberPoint, SpecialFiber, UnitMonomial};

use super::finite::isotropic_fq;
use super::form::{FiniteForm, QuadForm, ResidueForm};
use super::site::Site;
use super::verdict::{Certificate, IsotropyVerdict, Part, Witness};

/// A verdict over the completion at a vertex, supplied to the fiber point descent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SiteCertificate {
    pub site: Site,
    pub verdict: IsotropyVerdict,
}

/// The four parity classes `(n mod 2, m mod 2)` of `a_i = u_i alpha^n beta^m` in the order
/// `q00, q10, q01, q11`.
pub const CLASS_LABELS: [&str; 4] = ["q00", "q10", "q01", "q11"];

fn class_of(u: &UnitMonomial) -> usize {
    (u.n.rem_euclid(2) + 2 * u.m.rem_euclid(2)) as usize
}

/// Double Springer descent at a closed point of the special fiber: the form is split along `alpha`
/// and then along `beta`, the four unit classes are reduced to `kappa(P)` and an isotropic class
/// lifts by Hensel's lemma to the completed local ring.
///
/// An isotropic site certificate over the completion at a component through `P` forces an isotropic
/// verdict at `P`; disagreement is reported as `Error::Inconsistent`.
pub fn isotropic_at_fiber_point(
    q: &QuadForm,
    pt: &FiberPoint,
    fiber: &SpecialFiber,
    site: &SiteCertificate,
) -> Result<IsotropyVerdict> {
    let lp = local_params(pt, fiber)?;
    let components: Vec<usize> = match pt {
        FiberPoint::Smooth { vertex, .. } => vec![*vertex],
        FiberPoint::Double(e) => vec![fiber.edges[*e].a_end, fiber.edges[*e].b_end],
        _ => {
            return Err(Error::Precondition(format!(
                "{} is not a smooth or double point",
                fiber.describe(pt)
            )))
        }
    };
    let on_component = match &site.site {
        Site::Vertex(x) => components.iter().any(|&v| &fiber.vertices[v] == x),
        _ => false,
    };
    if !on_component {
        return Err(Error::MissingCertificate(format!(
            "no certificate over the completion at a component through {}",
            fiber.describe(pt)
        )));
    }
    if matches!(site.verdict, IsotropyVerdict::Unknown { .. }) {
        return Err(Error::MissingCertificate(format!(
            "the verdict at {} is unknown",
            site.site
        )));
    }
    let monomials = q
        .coeffs
        .iter()
        .map(|a| factor_at(a, pt, fiber))
        .collect::<Result<Vec<_>>>()?;
    let kappa = monomials[0].kappa.clone();
    if kappa.degree() != lp.kappa.degree() {
        return Err(Error::Inconsistent(format!(
            "residue fields disagree at {}",
            fiber.describe(pt)
        )));
    }
    let mut classes: [Vec<usize>; 4] = Default::default();
    for (i, u) in monomials.iter().enumerate() {
        if u.kappa != kappa {
            return Err(Error::Inconsistent(format!(
                "residue fields disagree at {}",
                fiber.describe(pt)
            )));
        }
        classes[class_of(u)].push(i);
    }
    let forms: Vec<Option<FiniteForm>> = classes
        .iter()
        .map(|idx| {
            (!idx.is_empty()).then(|| {
                FiniteForm::new(
                    kappa.clone(),
                    idx.iter().map(|&i| monomials[i].residue.clone()).collect(),
                )
            })
        })
        .map(|f| f.transpose())
        .collect::<Result<_>>()?;
    let verdicts: Vec<IsotropyVerdict> = forms
        .iter()
        .map(|f| {
            f.as_ref()
                .map(isotropic_fq)
                .unwrap_or(IsotropyVerdict::Anisotropic {
                    certificate: Certificate::Empty,
                })
        })
        .collect();
    let layer = format!("completed local ring at {}", fiber.describe(pt));
    let alpha = lp.alpha.to_expr();
    let beta = lp.beta.to_expr();
    let verdict = match verdicts.iter().position(|v| v.is_isotropic()) {
        Some(c) => {
            let IsotropyVerdict::Isotropic { witness, .. } = &verdicts[c] else {
                unreachable!()
            };
            IsotropyVerdict::Isotropic {
                witness: Witness::Lifted {
                    layer,
                    coords: classes[c].clone(),
                    form: Box::new(ResidueForm::Finite(forms[c].clone().unwrap())),
                    residue: Box::new(witness.clone()),
                },
                via: format!(
                    "unit class {} isotropic over the residue field of the point",
                    CLASS_LABELS[c]
                ),
            }
        }
        None => {
            let part = |c: usize| Part {
                label: CLASS_LABELS[c].into(),
                form: forms[c].clone().map(ResidueForm::Finite),
                cert: match &verdicts[c] {
                    IsotropyVerdict::Anisotropic { certificate } => certificate.clone(),
                    _ => unreachable!(),
                },
            };
            let inner = |a: usize, b: usize, label: &str| Part {
                label: label.into(),
                form: None,
                cert: Certificate::Springer {
                    layer: format!("residue field of the divisor of {}", alpha),
                    uniformizer: beta.clone(),
                    source: None,
                    place: None,
                    parts: vec![part(a), part(b)],
                },
            };
            IsotropyVerdict::Anisotropic {
                certificate: Certificate::Springer {
                    layer,
                    uniformizer: alpha.clone(),
                    source: None,
                    place: None,
                    parts: vec![
                        inner(0, 2, "q1 = q00 + beta q01"),
                        inner(1, 3, "q2 = q10 + beta q11"),
                    ],
                },
            }
        }
    };
    if site.verdict.is_isotropic() && !verdict.is_isotropic() {
        return Err(Error::Inconsistent(format!(
            "{} is isotropic at {} but not at {}",
            q,
            site.site,
            fiber.describe(pt)
        )));
    }
    Ok(verdict)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ratfunc::RatFunc;
    use crate::arith::rational::qi;
    use crate::berkline::BerkPoint;
    use crate::models::{dual_graph, Direction, VertexSet};

    use super::super::site::isotropic_cdvf;
    use super::super::Bounds;

    fn eta(a: i64, s: i64) -> BerkPoint {
        BerkPoint::eta(3, qi(a), qi(s))
    }

    fn form(c: Vec<RatFunc>) -> QuadForm {
        QuadForm::new(3, c).unwrap()
    }

    fn cert(q: &QuadForm, x: &BerkPoint) -> SiteCertificate {
        let site = Site::Vertex(x.clone());
        SiteCertificate {
            verdict: isotropic_cdvf(q, &site, &Bounds::default()).unwrap(),
            site,
        }
    }

    #[test]
    fn parity_classes_obstruct() {
        let t = RatFunc::t();
        let q = form(vec![
            RatFunc::one(),
            RatFunc::constant(qi(-2)),
            t.clone(),
            t.scale(&qi(-2)),
        ]);
        let s = VertexSet::new(3, vec![eta(0, 1), eta(0, -1), eta(0, 0)]).unwrap();
        let g = dual_graph(&s).unwrap();
        let v = g.vertices.iter().position(|x| *x == eta(0, 1)).unwrap();
        let pt = FiberPoint::Smooth {
            vertex: v,
            dir: Direction::rational(3, 1),
        };
        match isotropic_at_fiber_point(&q, &pt, &g, &cert(&q, &eta(0, 1))).unwrap() {
            IsotropyVerdict::Anisotropic { certificate } => {
                let leaves = certificate.leaves();
                assert!(!leaves.is_empty());
                assert!(
                    leaves.iter().all(|l| l == "<1, 1> over F_3"),
                    "{:?}",
                    leaves
                );
            }
            v => panic!("{}", v),
        }
    }

    #[test]
    fn hyperbolic_subform() {
        let q = form(vec![
            RatFunc::one(),
            RatFunc::constant(qi(-1)),
            RatFunc::t(),
        ]);
        let s = VertexSet::new(3, vec![eta(0, 1), eta(0, 0)]).unwrap();
        let g = dual_graph(&s).unwrap();
        let v = g.vertices.iter().position(|x| *x == eta(0, 0)).unwrap();
        let pt = FiberPoint::Smooth {
            vertex: v,
            dir: Direction::rational(3, 2),
        };
        assert!(isotropic_at_fiber_point(&q, &pt, &g, &cert(&q, &eta(0, 0)))
            .unwrap()
            .is_isotropic());
        let pt = FiberPoint::Double(0);
        assert!(isotropic_at_fiber_point(&q, &pt, &g, &cert(&q, &eta(0, 1)))
            .unwrap()
            .is_isotropic());
    }

    #[test]
    fn generic_point_dim_three_class() {
        let q = form(vec![
            RatFunc::one(),
            RatFunc::one(),
            RatFunc::one(),
            RatFunc::t(),
        ]);
        let s = VertexSet::new(3, vec![eta(0, 0)]).unwrap();
        let g = dual_graph(&s).unwrap();
        let pt = FiberPoint::Smooth {
            vertex: 0,
            dir: Direction::rational(3, 1),
        };
        match isotropic_at_fiber_point(&q, &pt, &g, &cert(&q, &eta(0, 0))).unwrap() {
            IsotropyVerdict::Isotropic { via, .. } => assert!(via.contains("q00")),
            v => panic!("{}", v),
        }
    }

    #[test]
    fn missing_certificate() {
        let q = form(vec![RatFunc::one(), RatFunc::one()]);
        let s = VertexSet::new(3, vec![eta(0, 0), eta(0, 1)]).unwrap();
        let g = dual_graph(&s).unwrap();
        let v = g.vertices.iter().position(|x| *x == eta(0, 0)).unwrap();
        let pt = FiberPoint::Smooth {
            vertex: v,
            dir: Direction::rational(3, 2),
        };
        let c = SiteCertificate {
            site: Site::Qp(3),
            verdict: IsotropyVerdict::Anisotropic {
                certificate: Certificate::Empty,
            },
        };
        assert!(matches!(
            isotropic_at_fiber_point(&q, &pt, &g, &c),
            Err(Error::MissingCertificate(_))
        ));
    }
}

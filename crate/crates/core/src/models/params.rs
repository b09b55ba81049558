use crate::arith::divisor::{divisor, ClosedPoint};
use crate::arith::ff::{FpPoly, Fq};
use crate::arith::poly::Poly;
use crate::arith::ratfunc::RatFunc;
use crate::arith::rational::{p_pow, qi, Q};
use crate::berkline::BerkPoint;
use crate::error::{Error, Result};

use super::fiber::{direction_at, Direction, FiberPoint, SpecialFiber};
use super::reduce::{int_s, reduce_ratfunc};

/// One verified valuation of a local parameter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamCheck {
    pub what: String,
    pub value: i64,
}

/// Local parameters at a closed point of the special fiber.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalParams {
    pub alpha: RatFunc,
    pub beta: RatFunc,
    pub chart: String,
    /// Residue field of the closed point.
    pub kappa: Fq,
    /// `alpha * beta = p^ell` at double points; `1` at smooth points.
    pub ell: i64,
    pub checks: Vec<ParamCheck>,
}

fn eta(x: &BerkPoint) -> (Q, Q, i64) {
    let (a, s) = x.eta_parts().unwrap();
    (a.clone(), s.clone(), int_s(s).unwrap())
}

fn pq(p: u64, k: i64) -> RatFunc {
    RatFunc::constant(p_pow(p, k))
}

fn lin(c: &Q) -> RatFunc {
    RatFunc::poly(Poly::linear(c))
}

fn val_at(f: &RatFunc, x: &BerkPoint) -> Result<i64> {
    let (a, s, _) = eta(x);
    Ok(reduce_ratfunc(f, &a, &s, x.p())?.val)
}

fn order_at(f: &RatFunc, x: &BerkPoint, dir: &Direction) -> Result<i64> {
    let (a, s, _) = eta(x);
    Ok(reduce_ratfunc(f, &a, &s, x.p())?.order_at(dir))
}

/// Lift of a polynomial over `F_p` with coefficients in `[0, p)`.
fn lift(g: &FpPoly) -> Poly {
    Poly::new(g.coeffs().iter().map(|&c| qi(c as i64)).collect())
}

pub fn local_params(pt: &FiberPoint, fiber: &SpecialFiber) -> Result<LocalParams> {
    let p = fiber.p;
    match pt {
        FiberPoint::Generic(_) => Err(Error::Precondition(
            "local parameters at a generic point".into(),
        )),
        FiberPoint::Junction(_) => Err(Error::Unsupported(format!(
            "{} is not a disc or annulus image; regularize the vertex set first",
            fiber.describe(pt)
        ))),
        FiberPoint::Smooth { vertex, dir } => {
            let v = &fiber.vertices[*vertex];
            let (a, _, si) = eta(v);
            let alpha = RatFunc::constant(qi(p as i64));
            let x = lin(&a).mul(&pq(p, -si));
            let (beta, kappa) = match dir {
                Direction::Up => (x.inv()?, Fq::prime(p)),
                Direction::Down(g) => match dir.root() {
                    Some(c) => (x.sub(&RatFunc::constant(qi(c as i64))), Fq::prime(p)),
                    None => {
                        let b = lift(g).compose_affine(&(-&a / p_pow(p, si)), &p_pow(p, -si));
                        (RatFunc::poly(b), Fq::ext(g.clone()))
                    }
                },
            };
            let checks = vec![
                ParamCheck {
                    what: format!("v_{}(alpha)", v),
                    value: val_at(&alpha, v)?,
                },
                ParamCheck {
                    what: format!("v_{}(beta)", v),
                    value: val_at(&beta, v)?,
                },
                ParamCheck {
                    what: format!("ord_{{{}}}(red beta)", dir),
                    value: order_at(&beta, v, dir)?,
                },
            ];
            if checks.iter().map(|c| c.value).collect::<Vec<_>>() != vec![1, 0, 1] {
                return Err(Error::Inconsistent(format!(
                    "local parameter checks failed: {:?}",
                    checks
                )));
            }
            Ok(LocalParams {
                alpha,
                beta,
                chart: format!("component of {} at {}", v, dir),
                kappa,
                ell: 1,
                checks,
            })
        }
        FiberPoint::Double(e) => {
            let edge = &fiber.edges[*e];
            let lo = &fiber.vertices[edge.a_end];
            let hi = &fiber.vertices[edge.b_end];
            let ell = edge.length;
            let alpha = match &edge.via {
                None => {
                    let (b, _, _) = eta(lo);
                    let (_, _, sw) = eta(hi);
                    lin(&b).mul(&pq(p, -sw))
                }
                Some(j) => {
                    let (av, _, _) = eta(lo);
                    let (au, _, su) = eta(hi);
                    let (_, _, sj) = eta(j);
                    lin(&av).div(&lin(&au))?.mul(&pq(p, su - sj))
                }
            };
            let beta = pq(p, ell).div(&alpha)?;
            let d_hi = direction_at(hi, lo)?;
            let d_lo = direction_at(lo, hi)?;
            let checks = vec![
                ParamCheck {
                    what: format!("v_{}(alpha)", lo),
                    value: val_at(&alpha, lo)?,
                },
                ParamCheck {
                    what: format!("v_{}(alpha)", hi),
                    value: val_at(&alpha, hi)?,
                },
                ParamCheck {
                    what: format!("v_{}(beta)", lo),
                    value: val_at(&beta, lo)?,
                },
                ParamCheck {
                    what: format!("v_{}(beta)", hi),
                    value: val_at(&beta, hi)?,
                },
                ParamCheck {
                    what: format!("ord_{{{}}}(red alpha at {})", d_hi, hi),
                    value: order_at(&alpha, hi, &d_hi)?,
                },
                ParamCheck {
                    what: format!("ord_{{{}}}(red beta at {})", d_lo, lo),
                    value: order_at(&beta, lo, &d_lo)?,
                },
            ];
            let expect = vec![ell, 0, 0, ell, 1, 1];
            if checks.iter().map(|c| c.value).collect::<Vec<_>>() != expect
                || alpha.mul(&beta) != pq(p, ell)
            {
                return Err(Error::Inconsistent(format!(
                    "local parameter checks failed: {:?}",
                    checks
                )));
            }
            Ok(LocalParams {
                alpha,
                beta,
                chart: format!(
                    "double point between {} and {}, alpha*beta = {}^{}",
                    lo, hi, p, ell
                ),
                kappa: Fq::prime(p),
                ell,
                checks,
            })
        }
    }
}

/// `a = unit * alpha^n * beta^m` with `unit` a local unit at the closed point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitMonomial {
    pub n: i64,
    pub m: i64,
    pub unit: RatFunc,
    /// Residue of `unit` at the point, a nonzero element of `kappa`.
    pub residue: FpPoly,
    pub kappa: Fq,
}

/// Rejects `a` when a zero or pole of `a` lies in the complement component of `pt`.
pub fn check_off_divisor(a: &RatFunc, pt: &FiberPoint, fiber: &SpecialFiber) -> Result<()> {
    let region = fiber.region(pt)?;
    let p = fiber.p;
    let bad = |what: String| {
        Err(Error::Precondition(format!(
            "{} lies in the closure of the divisor of {}: {}",
            fiber.describe(pt),
            a,
            what
        )))
    };
    match divisor(a) {
        Ok(d) => {
            for (pt_z, _) in &d.terms {
                let hit = match pt_z {
                    ClosedPoint::Rational(c) => region.contains(&BerkPoint::rigid(p, c.clone()))?,
                    ClosedPoint::Poly(g) => region.root_count(g, p)? > 0,
                    ClosedPoint::Infinity => region.contains_infinity(),
                };
                if hit {
                    return bad(format!("{} specializes there", pt_z));
                }
            }
        }
        Err(Error::DegreeTooLarge(_)) => {
            let zeros = region.root_count(a.num(), p)?;
            let poles = region.root_count(a.den(), p)?;
            let inf = region.contains_infinity() && a.num().deg() != a.den().deg();
            if zeros + poles > 0 || inf {
                return bad(format!(
                    "{} zeros and {} poles in the component",
                    zeros, poles
                ));
            }
        }
        Err(e) => return Err(e),
    }
    Ok(())
}

pub fn factor_at(a: &RatFunc, pt: &FiberPoint, fiber: &SpecialFiber) -> Result<UnitMonomial> {
    if a.is_zero() {
        return Err(Error::Zero("factor_at of the zero function"));
    }
    let lp = local_params(pt, fiber)?;
    check_off_divisor(a, pt, fiber)?;
    let p = fiber.p;
    let (n, m, side, dir, other) = match pt {
        FiberPoint::Smooth { vertex, dir } => {
            let v = &fiber.vertices[*vertex];
            (val_at(a, v)?, 0, v.clone(), dir.clone(), None)
        }
        FiberPoint::Double(e) => {
            let edge = &fiber.edges[*e];
            let lo = &fiber.vertices[edge.a_end];
            let hi = &fiber.vertices[edge.b_end];
            let (va, vb) = (val_at(a, lo)?, val_at(a, hi)?);
            if va % lp.ell != 0 || vb % lp.ell != 0 {
                return Err(Error::NotExpressible(format!(
                    "{} has valuations ({}, {}) not divisible by the edge length {}",
                    a, va, vb, lp.ell
                )));
            }
            (
                va / lp.ell,
                vb / lp.ell,
                hi.clone(),
                direction_at(hi, lo)?,
                Some((lo.clone(), direction_at(lo, hi)?)),
            )
        }
        _ => unreachable!(),
    };
    let unit = a.div(&lp.alpha.pow(n)?.mul(&lp.beta.pow(m)?))?;
    let (a0, s0, _) = eta(&side);
    let red = reduce_ratfunc(&unit, &a0, &s0, p)?;
    if red.val != 0 {
        return Err(Error::Inconsistent(format!(
            "unit part {} has valuation {} at {}",
            unit, red.val, side
        )));
    }
    let (kappa, residue) = red.value_at(&dir).ok_or_else(|| {
        Error::Inconsistent(format!(
            "unit part {} vanishes or has a pole at the point",
            unit
        ))
    })?;
    if let Some((o, od)) = other {
        let (ao, so, _) = eta(&o);
        let r2 = reduce_ratfunc(&unit, &ao, &so, p)?;
        if r2.val != 0 || r2.value_at(&od).is_none() {
            return Err(Error::Inconsistent(format!(
                "unit part {} is not a unit on {}",
                unit, o
            )));
        }
    }
    Ok(UnitMonomial {
        n,
        m,
        unit,
        residue,
        kappa,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::fiber::{dual_graph, VertexSet};

    fn fiber(p: u64, pts: &[(i64, i64)]) -> SpecialFiber {
        dual_graph(
            &VertexSet::new(
                p,
                pts.iter()
                    .map(|&(a, s)| BerkPoint::eta(p, qi(a), qi(s)))
                    .collect(),
            )
            .unwrap(),
        )
        .unwrap()
    }

    fn rf(c: &[i64]) -> RatFunc {
        RatFunc::poly(Poly::from_ints(c))
    }

    #[test]
    fn smooth_params() {
        let f = fiber(3, &[(0, 0)]);
        let pt = FiberPoint::Smooth {
            vertex: 0,
            dir: Direction::rational(3, 1),
        };
        let lp = local_params(&pt, &f).unwrap();
        assert_eq!(lp.alpha, RatFunc::constant(qi(3)));
        assert_eq!(lp.beta, rf(&[-1, 1]));
        let up = local_params(
            &FiberPoint::Smooth {
                vertex: 0,
                dir: Direction::Up,
            },
            &f,
        )
        .unwrap();
        assert_eq!(up.beta, RatFunc::t().inv().unwrap());
    }

    #[test]
    fn double_params() {
        let f = fiber(3, &[(0, 0), (0, 1)]);
        let lp = local_params(&FiberPoint::Double(0), &f).unwrap();
        assert_eq!(lp.alpha, RatFunc::t());
        assert_eq!(
            lp.beta,
            RatFunc::constant(qi(3)).div(&RatFunc::t()).unwrap()
        );
        assert_eq!(lp.alpha.mul(&lp.beta), RatFunc::constant(qi(3)));
    }

    #[test]
    fn factor_examples() {
        let f = fiber(3, &[(0, 0)]);
        let pt = FiberPoint::Smooth {
            vertex: 0,
            dir: Direction::rational(3, 1),
        };
        let u = factor_at(&RatFunc::t(), &pt, &f).unwrap();
        assert_eq!((u.n, u.m), (0, 0));
        assert_eq!(u.unit, RatFunc::t());
        assert_eq!(u.residue, FpPoly::constant(3, 1));
        let u = factor_at(&rf(&[0, 3]), &pt, &f).unwrap();
        assert_eq!((u.n, u.m, u.unit.clone()), (1, 0, RatFunc::t()));
        assert!(matches!(
            factor_at(&rf(&[-1, 1]), &pt, &f),
            Err(Error::Precondition(_))
        ));
        let f2 = fiber(3, &[(0, 0), (0, 1)]);
        let u = factor_at(&RatFunc::constant(qi(3)), &FiberPoint::Double(0), &f2).unwrap();
        assert_eq!((u.n, u.m), (1, 1));
        let u = factor_at(&RatFunc::t(), &FiberPoint::Double(0), &f2).unwrap();
        assert_eq!((u.n, u.m), (1, 0));
        assert_eq!(u.unit, RatFunc::one());
    }

    #[test]
    fn through_infinity_edge() {
        let f = fiber(3, &[(0, 1), (1, 1)]);
        let lp = local_params(&FiberPoint::Double(0), &f).unwrap();
        assert_eq!(lp.ell, 2);
        let u = factor_at(&RatFunc::constant(qi(9)), &FiberPoint::Double(0), &f).unwrap();
        assert_eq!((u.n, u.m), (1, 1));
    }
}

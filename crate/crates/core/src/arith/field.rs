use std::fmt;

use serde::{Deserialize, Serialize};

use super::eisenstein::EisElem;
use super::ff::FpPoly;
use super::rational::{check_prime, qi, vp, ExtQ, Q};
use crate::error::{Error, Result};

/// Descriptor of a field a computation takes place in.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BaseFieldDesc {
    PAdicRationals {
        p: u64,
    },
    EisensteinExt {
        p: u64,
        h: u32,
    },
    /// `Q_p(z)` for a rigid point of degree `degree > 1`, recorded but not computed in.
    PAdicExtension {
        p: u64,
        degree: u32,
        minpoly: String,
    },
    FiniteField {
        p: u64,
        d: u32,
    },
    RationalFunctionField {
        p: u64,
        d: u32,
        coordinate: String,
    },
    CompleteDvf {
        residue: Box<BaseFieldDesc>,
        uniformizer: String,
    },
    /// Declined description, with the reason.
    Undetermined {
        caveat: String,
    },
}

impl BaseFieldDesc {
    pub fn qp(p: u64) -> Result<BaseFieldDesc> {
        check_prime(p)?;
        Ok(BaseFieldDesc::PAdicRationals { p })
    }

    pub fn finite(p: u64, d: u32) -> Result<BaseFieldDesc> {
        check_prime(p)?;
        if d == 0 {
            return Err(Error::Unsupported("finite field of degree 0".into()));
        }
        Ok(BaseFieldDesc::FiniteField { p, d })
    }

    pub fn function_field(p: u64, coordinate: &str) -> Result<BaseFieldDesc> {
        check_prime(p)?;
        Ok(BaseFieldDesc::RationalFunctionField {
            p,
            d: 1,
            coordinate: coordinate.into(),
        })
    }

    pub fn cdvf(residue: BaseFieldDesc, uniformizer: &str) -> Result<BaseFieldDesc> {
        if matches!(residue, BaseFieldDesc::Undetermined { .. }) {
            return Err(Error::Unsupported(
                "residue descriptor is undetermined".into(),
            ));
        }
        Ok(BaseFieldDesc::CompleteDvf {
            residue: Box::new(residue),
            uniformizer: uniformizer.into(),
        })
    }

    pub fn prime(&self) -> Option<u64> {
        match self {
            BaseFieldDesc::PAdicRationals { p }
            | BaseFieldDesc::EisensteinExt { p, .. }
            | BaseFieldDesc::PAdicExtension { p, .. }
            | BaseFieldDesc::FiniteField { p, .. }
            | BaseFieldDesc::RationalFunctionField { p, .. } => Some(*p),
            BaseFieldDesc::CompleteDvf { residue, .. } => residue.prime(),
            BaseFieldDesc::Undetermined { .. } => None,
        }
    }

    /// Generator of the value group: `1/h` for Eisenstein layers, `1` for discrete layers, `0` for trivial valuations.
    pub fn value_group_step(&self) -> Q {
        match self {
            BaseFieldDesc::EisensteinExt { h, .. } => Q::new(1.into(), (*h as i64).into()),
            BaseFieldDesc::FiniteField { .. } => qi(0),
            _ => qi(1),
        }
    }
}

impl fmt::Display for BaseFieldDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseFieldDesc::PAdicRationals { p } => write!(f, "Q_{}", p),
            BaseFieldDesc::EisensteinExt { p, h } => write!(f, "Q_{}[X]/(X^{} - {})", p, h, p),
            BaseFieldDesc::PAdicExtension { p, degree, minpoly } => {
                write!(f, "Q_{}[T]/({}) (degree {})", p, minpoly, degree)
            }
            BaseFieldDesc::FiniteField { p, d } if *d == 1 => write!(f, "F_{}", p),
            BaseFieldDesc::FiniteField { p, d } => write!(f, "F_{}^{}", p, d),
            BaseFieldDesc::RationalFunctionField { p, d, coordinate } if *d == 1 => {
                write!(f, "F_{}({})", p, coordinate)
            }
            BaseFieldDesc::RationalFunctionField { p, d, coordinate } => {
                write!(f, "F_{}^{}({})", p, d, coordinate)
            }
            BaseFieldDesc::CompleteDvf {
                residue,
                uniformizer,
            } => {
                write!(
                    f,
                    "complete DVF (uniformizer {}, residue field {})",
                    uniformizer, residue
                )
            }
            BaseFieldDesc::Undetermined { caveat } => write!(f, "undetermined ({})", caveat),
        }
    }
}

/// Totally ramified extension `Q_p[X]/(X^h - p)`; `h = 1` is `Q_p` itself.
pub fn eisenstein_extension(p: u64, h: u32) -> Result<BaseFieldDesc> {
    check_prime(p)?;
    match h {
        0 => Err(Error::Unsupported(
            "ramification index must be at least 1".into(),
        )),
        1 => Ok(BaseFieldDesc::PAdicRationals { p }),
        _ => Ok(BaseFieldDesc::EisensteinExt { p, h }),
    }
}

/// Elements accepted by `valuation`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FieldElem {
    Rational(Q),
    Eisenstein(EisElem),
    Finite(FpPoly),
    /// `num/den` in `F_p(t)`, valued at the degree place.
    FunctionFp(FpPoly, FpPoly),
}

/// Normalized valuation of `x` in `k`: `v_p` on p-adic layers (value group `(1/h)Z` on Eisenstein layers),
/// trivial on finite fields, and `deg den - deg num` on `F_p(t)`.
pub fn valuation(x: &FieldElem, k: &BaseFieldDesc) -> Result<ExtQ> {
    match (x, k) {
        (FieldElem::Rational(a), BaseFieldDesc::PAdicRationals { p })
        | (FieldElem::Rational(a), BaseFieldDesc::EisensteinExt { p, .. }) => Ok(match vp(a, *p) {
            None => ExtQ::PosInf,
            Some(v) => ExtQ::Fin(qi(v)),
        }),
        (FieldElem::Eisenstein(e), BaseFieldDesc::EisensteinExt { p, h })
            if e.p == *p && e.h == *h =>
        {
            Ok(e.valuation())
        }
        (FieldElem::Eisenstein(e), BaseFieldDesc::PAdicRationals { p }) if e.p == *p => {
            match e.as_q() {
                Some(a) => valuation(&FieldElem::Rational(a), k),
                None => Err(Error::NotExpressible(format!("{} is not in Q_{}", e, p))),
            }
        }
        (FieldElem::Finite(a), BaseFieldDesc::FiniteField { p, d })
            if a.p == *p && a.deg() < *d as i64 =>
        {
            Ok(if a.is_zero() {
                ExtQ::PosInf
            } else {
                ExtQ::Fin(qi(0))
            })
        }
        (FieldElem::FunctionFp(n, d), BaseFieldDesc::RationalFunctionField { p, d: 1, .. })
            if n.p == *p && d.p == *p =>
        {
            if d.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Ok(if n.is_zero() {
                ExtQ::PosInf
            } else {
                ExtQ::Fin(qi(d.deg() - n.deg()))
            })
        }
        _ => Err(Error::NotExpressible(format!("{:?} in {}", x, k))),
    }
}

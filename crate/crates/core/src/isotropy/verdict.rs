use std::fmt;

use crate::arith::ff::{FpPoly, Fq};
use crate::arith::ratfunc::RatFunc;
use crate::arith::rational::{fmt_q, Q};

use super::form::{FiniteForm, ResidueForm};
use super::solution::SeriesWitness;

/// A place of `F_p(t)`: a monic irreducible polynomial or the degree place.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    Finite(FpPoly),
    Infinity,
}

impl Place {
    pub fn degree(&self) -> u32 {
        match self {
            Place::Finite(g) => g.deg() as u32,
            Place::Infinity => 1,
        }
    }

    pub fn residue_field(&self, p: u64) -> Fq {
        match self {
            Place::Finite(g) if g.deg() > 1 => Fq::ext(g.clone()),
            _ => Fq::prime(p),
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Finite(g) => write!(f, "{}", g.fmt_var("t")),
            Place::Infinity => write!(f, "1/t"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// Exact zero over a finite field.
    Finite { field: Fq, x: Vec<FpPoly> },
    /// Primitive integral vector with `v_p(q(x)) >= precision`; `exact` when `q(x) = 0`.
    PAdic {
        p: u64,
        x: Vec<Q>,
        precision: u32,
        exact: bool,
    },
    /// Exact zero with polynomial entries in `F_p[t]`.
    Function { p: u64, x: Vec<FpPoly> },
    /// Exact zero over `Q(T)`.
    Rational { x: Vec<RatFunc> },
    /// Nonsingular zero of a residue form; Hensel's lemma lifts it to the complete layer.
    /// `coords[i]` is the position in the original form of the i-th entry of the residue witness.
    Lifted {
        layer: String,
        coords: Vec<usize>,
        form: Box<ResidueForm>,
        residue: Box<Witness>,
    },
    /// Power-series zero around a rigid point.
    Series(Box<SeriesWitness>),
    /// Isotropy follows from a cited theorem; no explicit zero was produced within the bounds.
    Cited { claim: String },
}

/// One residue form of a Springer split together with its anisotropy certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Part {
    pub label: String,
    /// `None` for the zero-dimensional form.
    pub form: Option<ResidueForm>,
    pub cert: Certificate,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// The zero-dimensional form.
    Empty,
    DimOne {
        form: ResidueForm,
    },
    /// `<a, b>` over a finite field with `-ab` not a square.
    NonSquare {
        form: FiniteForm,
    },
    /// All residue forms of a split along a uniformizer are anisotropic.
    Springer {
        layer: String,
        uniformizer: String,
        source: Option<ResidueForm>,
        place: Option<Place>,
        parts: Vec<Part>,
    },
    /// Anisotropic over the completion at one place of `F_p(t)`.
    Place {
        place: Place,
        local: Box<Certificate>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UnknownReason {
    SearchExhausted(String),
    UnsupportedField(String),
    HigherDegreePoint(String),
    PrecisionTooLow(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsotropyVerdict {
    Isotropic { witness: Witness, via: String },
    Anisotropic { certificate: Certificate },
    Unknown { reason: UnknownReason },
}

impl IsotropyVerdict {
    pub fn is_isotropic(&self) -> bool {
        matches!(self, IsotropyVerdict::Isotropic { .. })
    }

    pub fn is_anisotropic(&self) -> bool {
        matches!(self, IsotropyVerdict::Anisotropic { .. })
    }

    pub fn label(&self) -> &'static str {
        match self {
            IsotropyVerdict::Isotropic { .. } => "isotropic",
            IsotropyVerdict::Anisotropic { .. } => "anisotropic",
            IsotropyVerdict::Unknown { .. } => "unknown",
        }
    }
}

fn join<T, F: Fn(&T) -> String>(xs: &[T], f: F) -> String {
    xs.iter().map(f).collect::<Vec<_>>().join(", ")
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Finite { field, x } => write!(f, "({})", join(x, |a| field.fmt_elem(a))),
            Witness::PAdic {
                p,
                x,
                precision,
                exact,
            } => {
                if *exact {
                    write!(f, "({})", join(x, fmt_q))
                } else {
                    write!(f, "({}) mod {}^{}", join(x, fmt_q), p, precision)
                }
            }
            Witness::Function { x, .. } => write!(f, "({})", join(x, |a| a.fmt_var("t"))),
            Witness::Rational { x } => write!(f, "({})", join(x, |a| a.to_expr())),
            Witness::Lifted {
                layer,
                coords,
                residue,
                ..
            } => {
                let c = join(coords, |i| format!("X{}", i + 1));
                write!(
                    f,
                    "Hensel lift over {} of the residue zero {} in ({})",
                    layer, residue, c
                )
            }
            Witness::Series(s) => write!(f, "{}", s),
            Witness::Cited { claim } => write!(f, "none ({})", claim),
        }
    }
}

impl fmt::Display for UnknownReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UnknownReason::SearchExhausted(s) => write!(f, "search exhausted: {}", s),
            UnknownReason::UnsupportedField(s) => write!(f, "unsupported field: {}", s),
            UnknownReason::HigherDegreePoint(s) => write!(f, "higher-degree point: {}", s),
            UnknownReason::PrecisionTooLow(s) => write!(f, "precision too low: {}", s),
        }
    }
}

impl Certificate {
    /// Indented multi-line rendering.
    pub fn render(&self, indent: usize) -> String {
        let pad = "  ".repeat(indent);
        match self {
            Certificate::Empty => format!("{}zero-dimensional form", pad),
            Certificate::DimOne { form } => format!("{}{} has dimension 1", pad, form),
            Certificate::NonSquare { form } => {
                let k = &form.field;
                let d = k.mul(&form.coeffs[0], &form.coeffs[1]).neg();
                format!(
                    "{}{}: -ab = {} is not a square in {}",
                    pad,
                    form,
                    k.fmt_elem(&k.reduce(&d)),
                    ResidueForm::Finite(form.clone()).field()
                )
            }
            Certificate::Springer {
                layer,
                uniformizer,
                parts,
                ..
            } => {
                let mut out = format!(
                    "{}Springer split over {} along {}: all residue forms anisotropic",
                    pad, layer, uniformizer
                );
                for part in parts {
                    match (&part.form, &part.cert) {
                        (Some(f), _) => out.push_str(&format!("\n{}  {} = {}", pad, part.label, f)),
                        (None, Certificate::Empty) => {
                            out.push_str(&format!("\n{}  {} = <>", pad, part.label))
                        }
                        (None, _) => out.push_str(&format!("\n{}  {}", pad, part.label)),
                    }
                    out.push('\n');
                    out.push_str(&part.cert.render(indent + 2));
                }
                out
            }
            Certificate::Place { place, local } => {
                format!(
                    "{}anisotropic at the place {} (local-global principle for F_p(t))\n{}",
                    pad,
                    place,
                    local.render(indent + 1)
                )
            }
        }
    }

    /// Finite-field leaves of the chain, rendered.
    pub fn leaves(&self) -> Vec<String> {
        match self {
            Certificate::Empty => vec![],
            Certificate::DimOne { form } => vec![form.to_string()],
            Certificate::NonSquare { form } => vec![ResidueForm::Finite(form.clone()).to_string()],
            Certificate::Springer { parts, .. } => {
                parts.iter().flat_map(|p| p.cert.leaves()).collect()
            }
            Certificate::Place { local, .. } => local.leaves(),
        }
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(0))
    }
}

impl fmt::Display for IsotropyVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IsotropyVerdict::Isotropic { witness, via } => {
                write!(f, "isotropic ({}); witness {}", via, witness)
            }
            IsotropyVerdict::Anisotropic { certificate } => {
                write!(f, "anisotropic\n{}", certificate.render(1))
            }
            IsotropyVerdict::Unknown { reason } => write!(f, "unknown ({})", reason),
        }
    }
}

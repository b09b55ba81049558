use std::fmt;

use num_traits::Zero;

use crate::arith::ff::{FpPoly, Fq};
use crate::arith::field::BaseFieldDesc;
use crate::arith::ratfunc::RatFunc;
use crate::arith::rational::{check_prime, fmt_q, Q};
use crate::error::{Error, Result};

/// Diagonal form `sum a_i X_i^2` over `Q(T)`, studied over completions at an odd prime `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadForm {
    pub p: u64,
    pub coeffs: Vec<RatFunc>,
}

impl QuadForm {
    pub fn new(p: u64, coeffs: Vec<RatFunc>) -> Result<QuadForm> {
        check_prime(p)?;
        if coeffs.is_empty() {
            return Err(Error::Precondition(
                "a form needs at least one coefficient".into(),
            ));
        }
        if coeffs.iter().any(|c| c.is_zero()) {
            return Err(Error::Zero("form coefficient"));
        }
        Ok(QuadForm { p, coeffs })
    }

    pub fn constants(p: u64, coeffs: &[Q]) -> Result<QuadForm> {
        QuadForm::new(
            p,
            coeffs
                .iter()
                .map(|c| RatFunc::constant(c.clone()))
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    /// Coefficients as rationals when all are constant.
    pub fn as_constants(&self) -> Option<Vec<Q>> {
        self.coeffs.iter().map(|c| c.as_constant()).collect()
    }

    pub fn eval(&self, x: &[RatFunc]) -> Result<RatFunc> {
        if x.len() != self.dim() {
            return Err(Error::Precondition(format!(
                "witness has {} entries, form has dimension {}",
                x.len(),
                self.dim()
            )));
        }
        Ok(self
            .coeffs
            .iter()
            .zip(x)
            .fold(RatFunc::zero(), |acc, (a, xi)| acc.add(&a.mul(&xi.mul(xi)))))
    }
}

impl fmt::Display for QuadForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<String> = self.coeffs.iter().map(|a| a.to_expr()).collect();
        write!(f, "<{}>", c.join(", "))
    }
}

/// Diagonal form with coefficients in a finite field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteForm {
    pub field: Fq,
    pub coeffs: Vec<FpPoly>,
}

impl FiniteForm {
    pub fn new(field: Fq, coeffs: Vec<FpPoly>) -> Result<FiniteForm> {
        let coeffs: Vec<FpPoly> = coeffs.iter().map(|c| field.reduce(c)).collect();
        if coeffs.iter().any(|c| c.is_zero()) {
            return Err(Error::Zero("form coefficient"));
        }
        Ok(FiniteForm { field, coeffs })
    }

    pub fn prime_field(p: u64, coeffs: &[i64]) -> Result<FiniteForm> {
        check_prime(p)?;
        FiniteForm::new(
            Fq::prime(p),
            coeffs.iter().map(|&c| FpPoly::from_i64s(p, &[c])).collect(),
        )
    }

    pub fn eval(&self, x: &[FpPoly]) -> FpPoly {
        let k = &self.field;
        self.coeffs.iter().zip(x).fold(k.zero(), |acc, (a, xi)| {
            k.add(&acc, &k.mul(a, &k.mul(xi, xi)))
        })
    }
}

/// Diagonal form over `Q_p` with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PAdicForm {
    pub p: u64,
    pub coeffs: Vec<Q>,
}

impl PAdicForm {
    pub fn new(p: u64, coeffs: Vec<Q>) -> Result<PAdicForm> {
        check_prime(p)?;
        if coeffs.iter().any(|c| c.is_zero()) {
            return Err(Error::Zero("form coefficient"));
        }
        Ok(PAdicForm { p, coeffs })
    }

    pub fn from_ints(p: u64, coeffs: &[i64]) -> Result<PAdicForm> {
        PAdicForm::new(
            p,
            coeffs.iter().map(|&c| Q::from_integer(c.into())).collect(),
        )
    }

    pub fn eval(&self, x: &[Q]) -> Q {
        self.coeffs
            .iter()
            .zip(x)
            .map(|(a, xi)| a * xi * xi)
            .fold(Q::zero(), |acc, v| acc + v)
    }
}

/// Diagonal form over `F_p(t)`; coefficients are nonzero polynomials (square classes of the
/// original rational functions).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FuncForm {
    pub p: u64,
    pub coeffs: Vec<FpPoly>,
}

impl FuncForm {
    pub fn new(p: u64, coeffs: Vec<FpPoly>) -> Result<FuncForm> {
        check_prime(p)?;
        if coeffs.iter().any(|c| c.is_zero()) {
            return Err(Error::Zero("form coefficient"));
        }
        Ok(FuncForm { p, coeffs })
    }

    pub fn from_i64s(p: u64, coeffs: &[&[i64]]) -> Result<FuncForm> {
        FuncForm::new(p, coeffs.iter().map(|c| FpPoly::from_i64s(p, c)).collect())
    }

    pub fn eval(&self, x: &[FpPoly]) -> FpPoly {
        self.coeffs
            .iter()
            .zip(x)
            .fold(FpPoly::zero(self.p), |acc, (a, xi)| {
                acc.add(&a.mul(&xi.mul(xi)))
            })
    }
}

/// A form over one of the base fields.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ResidueForm {
    Finite(FiniteForm),
    PAdic(PAdicForm),
    Function(FuncForm),
}

impl ResidueForm {
    pub fn dim(&self) -> usize {
        match self {
            ResidueForm::Finite(f) => f.coeffs.len(),
            ResidueForm::PAdic(f) => f.coeffs.len(),
            ResidueForm::Function(f) => f.coeffs.len(),
        }
    }

    pub fn field(&self) -> BaseFieldDesc {
        match self {
            ResidueForm::Finite(f) => BaseFieldDesc::FiniteField {
                p: f.field.p,
                d: f.field.degree(),
            },
            ResidueForm::PAdic(f) => BaseFieldDesc::PAdicRationals { p: f.p },
            ResidueForm::Function(f) => BaseFieldDesc::RationalFunctionField {
                p: f.p,
                d: 1,
                coordinate: "t".into(),
            },
        }
    }
}

impl fmt::Display for FiniteForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<String> = self.coeffs.iter().map(|a| self.field.fmt_elem(a)).collect();
        write!(f, "<{}>", c.join(", "))
    }
}

impl fmt::Display for PAdicForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<String> = self.coeffs.iter().map(fmt_q).collect();
        write!(f, "<{}>", c.join(", "))
    }
}

impl fmt::Display for FuncForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<String> = self.coeffs.iter().map(|a| a.fmt_var("t")).collect();
        write!(f, "<{}>", c.join(", "))
    }
}

impl fmt::Display for ResidueForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ResidueForm::Finite(q) => write!(f, "{} over {}", q, self.field()),
            ResidueForm::PAdic(q) => write!(f, "{} over {}", q, self.field()),
            ResidueForm::Function(q) => write!(f, "{} over {}", q, self.field()),
        }
    }
}

//! Isotropy of diagonal quadratic forms over finite fields, `Q_p`, `F_p(t)`, complete discretely
//! valued fields and the completed local rings at closed points of a special fiber.

pub mod fiberpoint;
pub mod finite;
pub mod form;
pub mod funcfield;
pub mod oracle;
pub mod qp;
pub mod site;
pub mod solution;
pub mod verdict;

use crate::arith::field::BaseFieldDesc;
use crate::error::{Error, Result};

pub use fiberpoint::{isotropic_at_fiber_point, SiteCertificate, CLASS_LABELS};
pub use finite::isotropic_fq;
pub use form::{FiniteForm, FuncForm, PAdicForm, QuadForm, ResidueForm};
pub use funcfield::{isotropic_fp_t, local_obstruction, WITNESS_DEGREE};
pub use oracle::{check_witness, oracle_search, OracleDomain, OracleOutcome};
pub use qp::{hilbert_criterion, isotropic_qp, springer_split, Split, SplitEntry};
pub use site::{isotropic_cdvf, Site};
pub use solution::{
    local_solution, local_solution_disc, LocalSolution, SampleCheck, SeriesEntry, SeriesWitness,
    SolutionDisc,
};
pub use verdict::{Certificate, IsotropyVerdict, Part, Place, UnknownReason, Witness};

/// Default p-adic precision and series order.
pub const DEFAULT_PRECISION: u32 = 32;

/// Precision and search limits shared by the decision procedures.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bounds {
    /// p-adic digits of lifted witnesses and terms of series witnesses.
    pub precision: u32,
    /// Degree bound of the witness search over `F_p(t)`.
    pub max_degree: usize,
    /// Height bound of the search for an exact rational residue zero at rigid points.
    pub search_height: i64,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            precision: DEFAULT_PRECISION,
            max_degree: WITNESS_DEGREE,
            search_height: 3,
        }
    }
}

/// Isotropy over the base field `field`, which must match the field of `form`.
pub fn isotropic_residue(
    form: &ResidueForm,
    field: &BaseFieldDesc,
    bounds: &Bounds,
) -> Result<IsotropyVerdict> {
    let own = form.field();
    if &own != field {
        return Err(Error::Unsupported(format!(
            "form over {} queried over {}",
            own, field
        )));
    }
    match form {
        ResidueForm::Finite(f) => Ok(isotropic_fq(f)),
        ResidueForm::PAdic(f) => isotropic_qp(f, bounds.precision),
        ResidueForm::Function(f) => Ok(isotropic_fp_t(f, bounds.max_degree)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn residue_examples() {
        let b = Bounds::default();
        let f = ResidueForm::Finite(FiniteForm::prime_field(3, &[1, 1, 1]).unwrap());
        match isotropic_residue(&f, &f.field(), &b).unwrap() {
            IsotropyVerdict::Isotropic {
                witness: Witness::Finite { x, .. },
                ..
            } => {
                assert!(x.iter().all(|c| c.coeff(0) == 1), "{:?}", x)
            }
            v => panic!("{}", v),
        }
        let f = ResidueForm::Finite(FiniteForm::prime_field(3, &[1, 1]).unwrap());
        assert!(isotropic_residue(&f, &f.field(), &b)
            .unwrap()
            .is_anisotropic());
        let f = ResidueForm::PAdic(PAdicForm::from_ints(3, &[1, 1, 3, 3]).unwrap());
        assert!(isotropic_residue(&f, &f.field(), &b)
            .unwrap()
            .is_anisotropic());
        let f = ResidueForm::Function(FuncForm::from_i64s(3, &[&[1], &[0, -1]]).unwrap());
        assert!(isotropic_residue(&f, &f.field(), &b)
            .unwrap()
            .is_anisotropic());
    }

    #[test]
    fn field_mismatch() {
        let f = ResidueForm::Finite(FiniteForm::prime_field(3, &[1, 1]).unwrap());
        let other = BaseFieldDesc::PAdicRationals { p: 3 };
        assert!(matches!(
            isotropic_residue(&f, &other, &Bounds::default()),
            Err(Error::Unsupported(_))
        ));
    }
}

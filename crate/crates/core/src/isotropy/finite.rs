use super::form::{FiniteForm, ResidueForm};
use super::verdict::{Certificate, IsotropyVerdict, Witness};

/// Isotropy over a finite field of odd characteristic: every form of dimension at least 3 is isotropic,
/// `<a, b>` is isotropic exactly when `-ab` is a square.
pub fn isotropic_fq(q: &FiniteForm) -> IsotropyVerdict {
    let k = &q.field;
    let a = &q.coeffs;
    match a.len() {
        0 => IsotropyVerdict::Anisotropic {
            certificate: Certificate::Empty,
        },
        1 => IsotropyVerdict::Anisotropic {
            certificate: Certificate::DimOne {
                form: ResidueForm::Finite(q.clone()),
            },
        },
        2 => {
            let d = k.mul(&a[1].neg(), &k.inv(&a[0]).unwrap());
            match k.sqrt(&d) {
                Some(s) => IsotropyVerdict::Isotropic {
                    witness: Witness::Finite {
                        field: k.clone(),
                        x: vec![s, k.one()],
                    },
                    via: "-ab is a square".into(),
                },
                None => IsotropyVerdict::Anisotropic {
                    certificate: Certificate::NonSquare { form: q.clone() },
                },
            }
        }
        n => {
            let inv2 = k.inv(&a[1]).unwrap();
            for i in 0..k.order() as u64 {
                let x = k.element(i);
                let rhs = k.mul(&k.add(&a[2], &k.mul(&a[0], &k.mul(&x, &x))).neg(), &inv2);
                if let Some(y) = k.sqrt(&rhs) {
                    let mut w = vec![x, y, k.one()];
                    w.resize(n, k.zero());
                    debug_assert!(q.eval(&w).is_zero());
                    return IsotropyVerdict::Isotropic {
                        witness: Witness::Finite {
                            field: k.clone(),
                            x: w,
                        },
                        via: "dimension at least 3 over a finite field".into(),
                    };
                }
            }
            unreachable!("ternary forms over finite fields are isotropic")
        }
    }
}

//! Isotropy over F_p, Q_p, F_p(t) and the completion at a type 2 point.

use berkhasse::arith::{Poly, RatFunc};
use berkhasse::berkline::BerkPoint;
use berkhasse::isotropy::{
    isotropic_cdvf, isotropic_fp_t, isotropic_fq, isotropic_qp, Bounds, FiniteForm, FuncForm,
    PAdicForm, QuadForm, Site,
};

fn main() -> berkhasse::Result<()> {
    let b = Bounds::default();
    println!(
        "<1, 1> over F_3: {}",
        isotropic_fq(&FiniteForm::prime_field(3, &[1, 1])?)
    );
    println!(
        "<1, 1, 1> over F_3: {}",
        isotropic_fq(&FiniteForm::prime_field(3, &[1, 1, 1])?)
    );
    println!(
        "<1, 1, 3, 3> over Q_3: {}",
        isotropic_qp(&PAdicForm::from_ints(3, &[1, 1, 3, 3])?, b.precision)?
    );
    println!(
        "<1, -7> over Q_3: {}",
        isotropic_qp(&PAdicForm::from_ints(3, &[1, -7])?, b.precision)?
    );
    let f = FuncForm::from_i64s(3, &[&[1], &[0, 1], &[1, 0, 1]])?;
    println!(
        "<1, t, t^2 + 1> over F_3(t): {}",
        isotropic_fp_t(&f, b.max_degree)
    );

    let q = QuadForm::new(
        3,
        vec![
            RatFunc::one(),
            RatFunc::constant(berkhasse::arith::qi(-2)),
            RatFunc::t(),
            RatFunc::poly(Poly::from_ints(&[0, -2])),
        ],
    )?;
    for x in ["eta(0,0)", "eta(0,1)", "eta(1,1)"] {
        let site = Site::Vertex(BerkPoint::parse(3, x)?);
        println!("{} at {}: {}", q, site, isotropic_cdvf(&q, &site, &b)?);
    }
    Ok(())
}

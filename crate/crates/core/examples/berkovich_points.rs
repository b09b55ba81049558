//! Points of the Berkovich line: seminorms, joins, retractions and discs.

use berkhasse::arith::rational::abs_from_val;
use berkhasse::arith::{qi, Poly, RatFunc};
use berkhasse::berkline::{in_disc, join, retract, seminorm, BerkPoint, DiscDesc};

fn main() -> berkhasse::Result<()> {
    let p = 3;
    let f = RatFunc::poly(Poly::from_ints(&[3, 0, 1]));
    for text in ["eta(0,0)", "eta(0,1)", "eta(1,2)", "rigid(3)", "rigid(inf)"] {
        let x = BerkPoint::parse(p, text)?;
        let v = seminorm(&f, &x)?;
        println!(
            "{} (type {}): -log|{}| = {}, |{}| = {}",
            x,
            x.classify(),
            f.to_expr(),
            v,
            f.to_expr(),
            abs_from_val(p, &v)
        );
    }

    let x = BerkPoint::parse(p, "rigid(1)")?;
    let y = BerkPoint::parse(p, "eta(4,3)")?;
    let j = join(&x, &y)?;
    println!(
        "join({}, {}) = {}, path distance {}",
        x,
        y,
        j,
        y.distance(&j)?
    );
    println!(
        "retraction of {} to the path from 0 to infinity: {}",
        y,
        retract(&qi(0), &y)?
    );

    let d = DiscDesc::open(p, qi(1), qi(1));
    for z in ["rigid(4)", "rigid(2)", "eta(1,2)", "eta(1,1)"] {
        let z = BerkPoint::parse(p, z)?;
        println!("{} in {}: {}", z, d, in_disc(&z, &d)?);
    }
    Ok(())
}

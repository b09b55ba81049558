//! Valuations, Hensel square roots, Hilbert symbols and divisors over Q.

use berkhasse::arith::rational::{fmt_q, vp};
use berkhasse::arith::{divisor, hensel_sqrt, hilbert_symbol, qi, qr, HenselSqrt, Poly, RatFunc};

fn main() -> berkhasse::Result<()> {
    let p = 3;
    for x in [qi(18), qr(5, 27), qi(-1)] {
        println!("v_{}({}) = {:?}", p, fmt_q(&x), vp(&x, p));
    }

    match hensel_sqrt(&qi(7), p, 8)? {
        HenselSqrt::Root(r) => println!("sqrt(7) in Z_3 mod 3^8: {}", fmt_q(&r.value)),
        HenselSqrt::NotASquare => println!("7 is not a square in Q_3"),
    }
    println!(
        "-1 is a square in Q_3: {}",
        matches!(hensel_sqrt(&qi(-1), p, 8)?, HenselSqrt::Root(_))
    );

    for (a, b) in [(qi(-1), qi(-1)), (qi(2), qi(3)), (qi(-2), qi(3))] {
        println!(
            "({}, {})_3 = {}",
            fmt_q(&a),
            fmt_q(&b),
            hilbert_symbol(&a, &b, p)?
        );
    }

    let f = RatFunc::poly(Poly::from_ints(&[-1, 0, 1]))
        .div(&RatFunc::poly(Poly::from_ints(&[0, 0, 3])))?;
    println!("div({}) = {}", f.to_expr(), divisor(&f)?);

    let g = Poly::from_ints(&[9, 3, 1]);
    for s in [qi(0), qi(1), qi(2)] {
        println!(
            "Gauss-type valuation of {} at radius 3^-{}: {}",
            g,
            fmt_q(&s),
            g.newton_val(p, &s)
        );
    }
    Ok(())
}

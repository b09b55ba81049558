//! Power-series zeros around rigid points and their certified discs of convergence.

use berkhasse::berkline::BerkPoint;
use berkhasse::cli::parse_form;
use berkhasse::isotropy::{local_solution, Bounds, LocalSolution};

fn main() -> berkhasse::Result<()> {
    let q = parse_form("1, -(1+3*T), T, -(T+3)", 3)?.form;
    for z in [
        BerkPoint::parse(3, "rigid(0)")?,
        BerkPoint::infinity(3),
        BerkPoint::parse(3, "rigid(-3)")?,
    ] {
        match local_solution(&q, &z, &Bounds::default())? {
            LocalSolution::Disc(d) => {
                println!("{}", d);
                println!("  D_z = {}, V_z = {}", d.disc, d.neighborhood);
                for c in &d.checks {
                    println!(
                        "  u = {}: v(q(x(u))) = {:?} >= {}: {}",
                        c.u, c.value, c.required, c.ok
                    );
                }
            }
            LocalSolution::Obstruction(c) => println!("{}: anisotropic\n{}", z, c),
            LocalSolution::Unknown(r) => println!("{}: {}", z, r),
        }
    }
    Ok(())
}

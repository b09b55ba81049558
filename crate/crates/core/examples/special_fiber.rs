//! Vertex sets, the dual graph of the special fiber, specialization and unit-monomial factors.

use berkhasse::arith::{Poly, RatFunc};
use berkhasse::berkline::BerkPoint;
use berkhasse::models::{
    complement_component, dual_graph, factor_at, local_params, regularize, FiberPoint, VertexSet,
};

fn main() -> berkhasse::Result<()> {
    let p = 3;
    let pts = ["eta(0,0)", "eta(0,2)", "eta(1,1)"]
        .iter()
        .map(|s| BerkPoint::parse(p, s))
        .collect::<Result<Vec<_>, _>>()?;
    let s = VertexSet::new(p, pts)?;
    let fiber = dual_graph(&s)?;
    for (i, e) in fiber.edges.iter().enumerate() {
        println!(
            "P{}: {} (length {})",
            i,
            fiber.describe(&FiberPoint::Double(i)),
            e.length
        );
    }

    for text in ["rigid(0)", "eta(0,1)", "rigid(4)", "rigid(inf)", "eta(2,1)"] {
        let x = BerkPoint::parse(p, text)?;
        let pt = fiber.specialize(&x)?;
        let comp = complement_component(&x, &fiber)?;
        println!(
            "{} -> {}; component {}",
            x,
            fiber.describe(&pt),
            comp.describe(p)
        );
    }

    let reg = dual_graph(&regularize(&s)?)?;
    println!(
        "regularized: {} vertices, {} double points",
        reg.vertices.len(),
        reg.edges.len()
    );
    let pt = FiberPoint::Double(0);
    let lp = local_params(&pt, &reg)?;
    println!(
        "{}: alpha = {}, beta = {}",
        lp.chart,
        lp.alpha.to_expr(),
        lp.beta.to_expr()
    );
    let f = RatFunc::poly(Poly::from_ints(&[9, 1]));
    let um = factor_at(&f, &pt, &reg)?;
    println!(
        "{} = ({}) * alpha^{} * beta^{}",
        f.to_expr(),
        um.unit.to_expr(),
        um.n,
        um.m
    );

    print!("{}", fiber.to_dot("example"));
    Ok(())
}

//! Double Springer descent at closed points of the special fiber.

use berkhasse::berkline::BerkPoint;
use berkhasse::cli::parse_form;
use berkhasse::isotropy::{
    isotropic_at_fiber_point, isotropic_cdvf, Bounds, Site, SiteCertificate,
};
use berkhasse::models::{dual_graph, Direction, FiberPoint, VertexSet};

fn main() -> berkhasse::Result<()> {
    let p = 3;
    let q = parse_form("1, -2, T, -2*T", p)?.form;
    let pts = ["eta(0,1)", "eta(0,-1)", "eta(0,0)"]
        .iter()
        .map(|s| BerkPoint::parse(p, s))
        .collect::<Result<Vec<_>, _>>()?;
    let fiber = dual_graph(&VertexSet::new(p, pts)?)?;
    let gauss = fiber
        .vertices
        .iter()
        .position(|v| *v == BerkPoint::gauss(p))
        .unwrap();
    let site = Site::Vertex(fiber.vertices[gauss].clone());
    let cert = SiteCertificate {
        site: site.clone(),
        verdict: isotropic_cdvf(&q, &site, &Bounds::default())?,
    };

    let points = vec![
        FiberPoint::Smooth {
            vertex: gauss,
            dir: Direction::rational(p, 1),
        },
        FiberPoint::Smooth {
            vertex: gauss,
            dir: Direction::rational(p, 2),
        },
        FiberPoint::Double(0),
    ];
    for pt in points {
        let v = isotropic_at_fiber_point(&q, &pt, &fiber, &cert)?;
        println!("{}: {}", fiber.describe(&pt), v);
    }
    Ok(())
}

//! Translating points of a disc minus smaller discs into it over an Eisenstein extension.

use berkhasse::arith::qi;
use berkhasse::discauto::{
    choose_w, sample_points, translation_gap, verify_into, zero_cycle_degrees, EndNeighborhood,
};
use rand::SeedableRng;

fn main() -> berkhasse::Result<()> {
    let u = EndNeighborhood::new(3, qi(0), qi(0), vec![(qi(0), qi(2)), (qi(3), qi(3))])?;
    let gap = translation_gap(&u)?;
    println!("U = {}\ngap: {}", u, gap);
    for m in [1, 2, 6] {
        println!("m = {}: {}", m, choose_w(&gap, m)?);
    }

    let plan = choose_w(&gap, 2)?;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
    let samples = sample_points(&u, plan.h, 8, &mut rng);
    println!("{}", verify_into(&u, &plan, &samples)?);

    let (d1, d2, g) = zero_cycle_degrees(&[2, 3], &[5])?;
    println!("degrees {} and {} with gcd {}", d1, d2, g);
    println!("{}", zero_cycle_degrees(&[2], &[4]).unwrap_err());
    Ok(())
}

//! The curvature-twisted bracket on End(E) + L, its isomorphism with gl(E) x L, and Bianchi.

use lie_atiyah::atiyah::{bianchi, build_split_atiyah, split_iso_check, universal_construction, Connection};
use lie_atiyah::fixtures::{sl2, Sampler};

fn main() -> lie_atiyah::Result<()> {
    let mut rng = Sampler::new(7);
    let conn: Connection = rng.connection(&sl2(), 2);
    println!("connection is flat: {}", conn.is_flat());

    let split = build_split_atiyah(&conn)?;
    println!(
        "End(E) + L has dimension {} and satisfies Jacobi",
        split.algebra().dim()
    );
    println!("Bianchi form vanishes: {}", bianchi(&conn).is_zero());

    let iso = split_iso_check(&conn)?;
    println!("(phi, l) -> (phi + nabla_l, l) is an isomorphism: {}", iso.passed());
    println!(
        "universal construction checks pass: {}",
        universal_construction(&conn)?.passed()
    );
    Ok(())
}

//! Invariant connections on homogeneous spaces as equivariant maps g -> k.

use lie_atiyah::fixtures::wang_fixtures;
use lie_atiyah::homogeneous::{canonical_connection, reductive_test, wang_dimension_check, wang_solve};

fn main() -> lie_atiyah::Result<()> {
    for (name, p) in wang_fixtures() {
        let red = reductive_test(p.g(), p.inclusion_h())?;
        let Some(phi0) = red.solution.particular() else {
            println!("{name}: not reductive");
            continue;
        };
        let sol = wang_solve(&p)?;
        let check = wang_dimension_check(&p)?;
        let canonical = canonical_connection(&p, &phi0)?;
        println!(
            "{name}: invariant connections form an affine space of dimension {}, Hom_h(m, k) check = {}",
            sol.set.dim(),
            check.holds()
        );
        println!("  canonical connection: {canonical:?}");
    }
    Ok(())
}

//! All A-compatible extensions of a module structure, as an affine solution set.

use lie_atiyah::atiyah::{extend_connection, is_a_compatible};
use lie_atiyah::cohomology::{compatible_connection_solve, unpack_b_assignment};
use lie_atiyah::fixtures::{heisenberg_triad, sl2_borel_standard, two_dim_triad};
use lie_atiyah::linalg::{int, Matrix};

fn main() -> lie_atiyah::Result<()> {
    let triads = [
        ("sl2/borel/standard", sl2_borel_standard()),
        ("two-dim/lambda=0", two_dim_triad(int(0))),
        ("two-dim/lambda=1", two_dim_triad(int(1))),
        (
            "heisenberg/center",
            heisenberg_triad(Matrix::from_i64(&[&[1, 0], &[0, 2]])),
        ),
    ];
    for (name, triad) in triads {
        let sol = compatible_connection_solve(&triad)?;
        if sol.set.is_empty() {
            println!("{name}: no compatible connection");
            continue;
        }
        println!(
            "{name}: solutions form an affine space of dimension {} (H^0 = {})",
            sol.set.dim(),
            sol.h0_dim
        );
        let p = sol.set.particular().expect("non-empty");
        let blocks = unpack_b_assignment(sol.module_dim, sol.dim_b, p);
        let conn = extend_connection(&triad, &blocks)?;
        println!("  particular solution on B: {:?}", blocks);
        println!("  compatible: {}", is_a_compatible(&triad, &conn)?);
    }
    Ok(())
}

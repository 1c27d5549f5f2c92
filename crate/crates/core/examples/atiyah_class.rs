//! Atiyah cocycles and classes on the two-dimensional family and the Borel pair.

use lie_atiyah::atiyah::{atiyah_cocycle, extend_connection};
use lie_atiyah::cohomology::atiyah_class;
use lie_atiyah::fixtures::{sl2_borel_adjoint, sl2_borel_standard, two_dim_triad};
use lie_atiyah::linalg::{int, Matrix};

fn main() -> lie_atiyah::Result<()> {
    for lambda in -2..=2 {
        let triad = two_dim_triad(int(lambda));
        let conn = extend_connection(&triad, &[Matrix::zeros(1, 1)])?;
        let r = atiyah_cocycle(&triad, &conn)?;
        let class = atiyah_class(&triad)?;
        println!(
            "lambda = {lambda:>2}: R(y, x) = {}, class vanishes = {}, h0 = {}, h1 = {}",
            r.get(0, 0)[(0, 0)],
            class.vanishes,
            class.h0_dim,
            class.h1_dim
        );
    }
    for (name, triad) in [("standard", sl2_borel_standard()), ("adjoint", sl2_borel_adjoint())] {
        let class = atiyah_class(&triad)?;
        println!(
            "sl2/borel/{name}: class vanishes = {}, h1 = {}",
            class.vanishes, class.h1_dim
        );
    }
    Ok(())
}

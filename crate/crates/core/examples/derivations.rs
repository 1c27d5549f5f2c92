//! Derivation algebras and an sl2-equivariant structure on Q^2.

use lie_atiyah::fixtures::{heisenberg, sl2, sl2_standard, two_dim};
use lie_atiyah::lie::LieAlgebra;
use lie_atiyah::matched::{derivation_algebra, equivariant_structure};

fn main() -> lie_atiyah::Result<()> {
    for (name, l) in [("sl2", sl2()), ("two-dim", two_dim()), ("heisenberg", heisenberg())] {
        let d = derivation_algebra(&l)?;
        println!("dim Der({name}) = {}, closed under commutators: {}", d.dim(), d.closed);
    }
    let mp = equivariant_structure(&sl2(), &LieAlgebra::abelian(2), sl2_standard().action().to_vec())?;
    let sum = mp.matched_sum()?;
    println!(
        "sl2 acting on Q^2: semidirect sum of dimension {} is a Lie algebra: {}",
        sum.dim(),
        sum.validate().is_valid()
    );
    Ok(())
}

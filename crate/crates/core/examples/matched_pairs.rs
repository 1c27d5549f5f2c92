//! sl2 as the matched sum of its Borel subalgebra and span(f), and the induced
//! decomposition of the split Atiyah algebra.

use lie_atiyah::fixtures::{borel_inclusion, sl2, sl2_borel_standard, Sampler};
use lie_atiyah::linalg::Matrix;
use lie_atiyah::matched::{matched_atiyah_decomposition, matched_curvature_split, recognize_matched};

fn main() -> lie_atiyah::Result<()> {
    let span_f = Matrix::from_i64(&[&[0], &[0], &[1]]);
    let mp = recognize_matched(&sl2(), &borel_inclusion(), &span_f)?;
    println!("matched pair identities hold: {}", mp.check().passed());
    let adapted = sl2().change_basis(&borel_inclusion().hstack(&span_f))?;
    println!("matched sum reproduces sl2: {}", mp.matched_sum()? == adapted);

    let triad = sl2_borel_standard();
    let conn = Sampler::new(3).extending_connection(&triad);
    let d = matched_atiyah_decomposition(&triad, &conn)?;
    println!("End(E) + L = A x (End(E) + B): {}", d.passed());
    let split = matched_curvature_split(&triad, &conn)?;
    println!(
        "flat = {}, A(x)B block zero = {}, B^B block zero = {}",
        split.flat,
        split.ab.is_zero(),
        split.bb.is_zero()
    );
    Ok(())
}

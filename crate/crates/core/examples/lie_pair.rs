//! The Borel pair of sl2: quotient chart, Bott connection and the A-part of brackets.

use lie_atiyah::fixtures::sl2_borel_pair;
use lie_atiyah::linalg::unit_vec;

fn main() -> lie_atiyah::Result<()> {
    let pair = sl2_borel_pair();
    println!(
        "dim L = {}, dim A = {}, dim B = {}",
        pair.dim_l(),
        pair.dim_a(),
        pair.dim_b()
    );
    println!("i_B = {:?}", pair.i_b());

    let bott = pair.bott_connection()?;
    for (i, name) in ["h", "e"].iter().enumerate() {
        println!("D_{name} on B = {}", bott.basis_action(i)[(0, 0)]);
    }
    for i in 0..pair.dim_a() {
        let v = pair.eth(&unit_vec(1, 0), &unit_vec(2, i));
        let v: Vec<String> = v.iter().map(ToString::to_string).collect();
        println!("eth_f(a_{i}) = ({})", v.join(", "));
    }
    Ok(())
}

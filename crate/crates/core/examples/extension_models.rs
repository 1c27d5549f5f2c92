//! The three models of the Atiyah extension, their isomorphisms and the hexagon diagnostics.

use lie_atiyah::extension::{build_quotient_extension, hexagon_diagnostics, model_coherence};
use lie_atiyah::fixtures::{fixture_triads, Sampler};

fn main() -> lie_atiyah::Result<()> {
    let mut rng = Sampler::new(11);
    for (name, triad) in fixture_triads() {
        let conn = rng.extending_connection(&triad);
        let quotient = build_quotient_extension(&triad)?;
        let coherence = model_coherence(&triad, &conn)?;
        let hexagon = hexagon_diagnostics(&triad, &conn)?;
        println!(
            "{name:<20} dim D_B(E) = {:>2}  models coherent = {}  hexagon ({} sequences, {} diagrams) = {}",
            quotient.dim(),
            coherence.passed(),
            hexagon.sequences.len(),
            hexagon.diagrams.len(),
            hexagon.passed()
        );
    }
    Ok(())
}

//! Rigid triangle counts for stabilization, one-handle and blow-up triples.

use hfcalc::floer::{rigid_triangle_map, top_generator};
use hfcalc::surface::*;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let abg = [Family::Alpha, Family::Beta, Family::Gamma];
    for (name, d) in [("stabilization", stabilization_triple()), ("one-handle", one_handle_triple())] {
        let theta = top_generator(&d, [Family::Beta, Family::Gamma])?;
        let m = rigid_triangle_map(&d, abg, &theta, 2)?;
        println!("{name}: {} sources, {} targets, {} rigid triangles", m.sources.len(), m.targets.len(), m.entries.len());
        for e in &m.entries {
            println!("  {} -> {}  n_z = {}", m.sources[e.from], m.targets[e.to], e.n_z);
        }
    }
    let d = mcp_triple();
    let theta = d.enumerate_tuples(Family::Beta, Family::Gamma)?[0].clone();
    let m = rigid_triangle_map(&d, abg, &theta, 10)?;
    println!("blow-up: classes by <c1, E> and the power of U they contribute");
    let mut rows: Vec<_> = m.entries.iter().map(|e| (e.c1[0], e.n_z)).collect();
    rows.sort();
    for (c1, nz) in rows {
        println!("  <c1, E> = {c1:>3}  U^{nz}");
    }
    Ok(())
}

//! Writes the built-in model diagrams as JSON documents and reads them back.
//!
//!     cargo run --example diagram_documents -- /tmp/models

use hfcalc::surface::*;
use std::path::PathBuf;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "target/models".into()));
    std::fs::create_dir_all(&dir)?;
    let models = [
        ("s3", s3_torus()),
        ("finger", finger_move_s3()),
        ("s1s2", standard_diagram(1)),
        ("l31", lens_diagram(3)),
        ("mcp", mcp_triple()),
        ("unknot_minus1", framed_unknot_triple(-1)),
        ("degenerate", degenerate_s1s2()),
    ];
    println!("{:<14} {:>5} {:>8} {:>5} {:>5}  valid", "model", "genus", "vertices", "edges", "faces");
    for (name, d) in models {
        let doc = DiagramDocument::from_diagram(&d);
        let path = dir.join(format!("{name}.diagram"));
        std::fs::write(&path, doc.to_json())?;
        let back: DiagramDocument = serde_json::from_str(&std::fs::read_to_string(&path)?)?;
        let d2 = back.to_diagram()?;
        assert_eq!(d2, d);
        println!(
            "{name:<14} {:>5} {:>8} {:>5} {:>5}  {}",
            d2.genus(),
            d2.num_vertices(),
            d2.num_edges(),
            d2.num_faces(),
            d2.validate().valid
        );
    }
    println!("written to {}", dir.display());
    Ok(())
}

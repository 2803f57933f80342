//! All four flavors of Floer homology for a few small three-manifolds.

use hfcalc::floer::{all_classes, homology, Flavor};
use hfcalc::surface::*;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n = 4;
    for (name, d) in [("S3 (finger move)", finger_move_s3()), ("#2 S1xS2", standard_diagram(2)), ("L(5,1)", lens_diagram(5))] {
        let classes = all_classes(&d, [Family::Alpha, Family::Beta], n)?;
        println!("{name}: {} Spin^c classes", classes.len());
        for (i, c) in classes.iter().enumerate().take(2) {
            println!("  class {i}: {} generators, {} arrows", c.tuples.len(), c.arrows.len());
            for fl in Flavor::ALL {
                let m = homology(&c.complex(fl, n));
                let s: Vec<String> = m.support().iter().map(|(g, k)| format!("{g}:{k}")).collect();
                println!("    {:<5} {}", fl.label(), s.join(" "));
            }
        }
    }
    Ok(())
}

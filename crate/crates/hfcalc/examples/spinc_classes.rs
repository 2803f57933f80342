//! Spin^c classes of intersection tuples and relative Maslov gradings.

use hfcalc::spinc::{relative_grading, spinc_partition};
use hfcalc::surface::*;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for p in 1..=5 {
        let classes = spinc_partition(&lens_diagram(p), Family::Alpha, Family::Beta)?;
        println!("L({p},1): {} classes of sizes {:?}", classes.len(), classes.iter().map(|c| c.members.len()).collect::<Vec<_>>());
    }
    let d = standard_diagram(2);
    for c in spinc_partition(&d, Family::Alpha, Family::Beta)? {
        println!("#2 S1xS2 class {} torsion={}", c.id, c.torsion);
        for x in &c.members {
            println!("  {x}  gr - gr(base) = {}", relative_grading(&d, Family::Alpha, Family::Beta, x, &c.members[0])?);
        }
    }
    Ok(())
}

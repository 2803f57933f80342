//! Weak, strong and triple admissibility verdicts, with certificates for the
//! diagrams that fail.

use hfcalc::admissibility::{certificate_violates, check_admissible, AdmissibilityMode};
use hfcalc::surface::*;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let ab = [Family::Alpha, Family::Beta];
    let abg = [Family::Alpha, Family::Beta, Family::Gamma];
    let s1s2 = standard_diagram(1);
    let x = s1s2.enumerate_tuples(Family::Alpha, Family::Beta)?[0].clone();
    let cases = [
        ("S1xS2", s1s2, ab.to_vec(), vec![x], AdmissibilityMode::Weak),
        ("S1xS2", standard_diagram(1), ab.to_vec(), vec![], AdmissibilityMode::Strong),
        ("degenerate", degenerate_s1s2(), ab.to_vec(), vec![], AdmissibilityMode::Weak),
        ("mCP", mcp_triple(), abg.to_vec(), vec![], AdmissibilityMode::Triple),
    ];
    for (name, d, fams, class, mode) in cases {
        let v = check_admissible(&d, &fams, &class, mode)?;
        match &v.certificate {
            None => println!("{name:<11} {mode:?}: admissible (lattice rank {})", v.lattice_rank),
            Some(c) => println!(
                "{name:<11} {mode:?}: rejected by P = {:?}, pairing {}, re-validated {}",
                c.chain,
                c.pairing,
                certificate_violates(&d, &fams, &class, mode, c)
            ),
        }
    }
    Ok(())
}

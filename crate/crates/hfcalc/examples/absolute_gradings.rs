//! Absolute gradings of the lens spaces obtained by framed surgery on the
//! unknot, compared with the closed formula for their correction terms.

use hfcalc::linalg::Rat;
use hfcalc::spinc::surgery_gradings;
use hfcalc::surface::*;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for n in [-4, -3, -2, -1, 1, 2, 3, 4] {
        let g = surgery_gradings(&framed_unknot_triple(n), [Family::Alpha, Family::Beta, Family::Gamma])?;
        let mut got: Vec<Rat> = g.iter().map(|s| s.grading).collect();
        got.sort();
        let p = i64::abs(n);
        let mut formula: Vec<Rat> = (0..p).map(|i| Rat::new(n.signum() * ((2 * i - p).pow(2) - p), 4 * p)).collect();
        formula.sort();
        let show = |v: &[Rat]| v.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(" ");
        println!("n = {n:>2}: {:<28} formula {}", show(&got), show(&formula));
    }
    Ok(())
}

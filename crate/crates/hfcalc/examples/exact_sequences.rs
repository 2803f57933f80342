//! Exactness of the two long exact sequences and the reduced groups.

use hfcalc::floer::{all_classes, exactness_check, reduced};
use hfcalc::surface::*;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n = 6;
    for (name, d) in [("S3", finger_move_s3()), ("S1xS2", standard_diagram(1)), ("L(4,1)", lens_diagram(4))] {
        for (i, c) in all_classes(&d, [Family::Alpha, Family::Beta], n)?.iter().enumerate() {
            for r in exactness_check(c, n)? {
                println!("{name}[{i}] {:<20} exact at {} gradings, {} interior", r.sequence, r.gradings, r.interior);
            }
            println!("{name}[{i}] HF_red {:?}", reduced(c, n));
        }
    }
    Ok(())
}

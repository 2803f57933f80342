//! Periodic domains, their Euler measures and boundaries, and a disk domain
//! connecting two generators.

use hfcalc::domain::*;
use hfcalc::surface::*;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cases: [(&str, PointedMultiDiagram, Vec<Family>); 4] = [
        ("S1xS2", standard_diagram(1), vec![Family::Alpha, Family::Beta]),
        ("#2 S1xS2", standard_diagram(2), vec![Family::Alpha, Family::Beta]),
        ("L(3,1)", lens_diagram(3), vec![Family::Alpha, Family::Beta]),
        ("mCP triple", mcp_triple(), vec![Family::Alpha, Family::Beta, Family::Gamma]),
    ];
    for (name, d, fams) in &cases {
        let lat = periodic_domain_basis(d, fams)?;
        println!("{name}: periodic rank {}, H1 orders {:?}", lat.rank, h1_orders(d, fams[0], fams[1])?);
        for p in &lat.basis {
            println!("  P = {p:?}  e(P) = {}  full boundary curves = {}", euler_measure(d, p), boundary(d, p).full_count());
        }
    }
    let d = finger_move_s3();
    let t = d.enumerate_tuples(Family::Alpha, Family::Beta)?;
    let phi = connect_pair(&d, Family::Alpha, Family::Beta, &t[0], &t[1])?;
    println!("finger move: phi({}, {}) = {:?}, e = {}", t[0], t[1], phi.chain, euler_measure(&d, &phi.chain));
    Ok(())
}

//! Triangle classes of the blow-up triple: index, basepoint multiplicity,
//! spider number and the Chern class pairing, with the spider number
//! re-sampled over random dual spiders.

use hfcalc::domain::{connect_triangle, periodic_domain_basis};
use hfcalc::spinc::{dual_spider_number, psi_class, triangle_family, SpiderSampler};
use hfcalc::surface::*;
use rand::SeedableRng;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let fams = [Family::Alpha, Family::Beta, Family::Gamma];
    let d = mcp_triple();
    let p = periodic_domain_basis(&d, &fams)?.basis[0].clone();
    let first = |a, b| d.enumerate_tuples(a, b).map(|t| t[0].clone());
    let psi = connect_triangle(
        &d,
        fams,
        &first(Family::Alpha, Family::Beta)?,
        &first(Family::Beta, Family::Gamma)?,
        &first(Family::Alpha, Family::Gamma)?,
    )?;
    let fam = triangle_family(&d, &psi, &p, -6..=6)?;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
    println!("{:<8} {:>4} {:>4} {:>7} {:>4} {:>8}", "class", "mu", "n_z", "spider", "c1", "samples");
    for k in 1..=5 {
        for (sign, tag) in [(1, '+'), (-1, '-')] {
            let Some(c) = psi_class(&fam, k, sign) else { continue };
            let s = SpiderSampler::new(&d, &c.domain)?;
            let agree = (0..20).filter(|_| dual_spider_number(&d, fams, &p, &s.sample(&d, &mut rng)) == Ok(c.spider_number)).count();
            println!("psi{k}{tag:<4} {:>4} {:>4} {:>7} {:>4} {:>5}/20", c.maslov, c.n_z, c.spider_number, c.c1, agree);
        }
    }
    Ok(())
}

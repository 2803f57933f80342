//! Linking-presentation arithmetic: degree shifts, blow-ups, K(W),
//! composition fibers, admissible cuts and the adjunction filter.

use hfcalc::cobordism::*;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let blowup = LinkingPresentation::new(vec![vec![-1]], 0, 0)?;
    for l in 0..=4 {
        let c = 2 * l + 1;
        println!("blow-up <c1,E> = {c}: shift {}, U^{}", degree_shift(&blowup, &[c])?, blowup_power(l as u64));
    }
    let one = LinkingPresentation::new(vec![], 1, 0)?;
    println!("one-handle shift {}", degree_shift(&one, &[])?);

    let p = LinkingPresentation::new(vec![vec![0, 1], vec![1, 0]], 0, 0)?;
    let inv = cobordism_invariants(&p);
    println!("hyperbolic form: chi {} sigma {} b2+ {} K rank {}", inv.chi, inv.sigma, inv.b2_plus, k_group(&p)?.rank);
    let split = Split { first: vec![0] };
    let (a, b) = restrictions(&p.q, &split, &[0, 2])?;
    let f = composition_fiber(&p, &split, &a, &b, Some(2))?;
    println!("fiber over the 0-framed unknot: free rank {}, members {:?}", f.free_rank, f.members.unwrap_or_default());

    let q = LinkingPresentation::new(vec![vec![1, 0], vec![0, 1]], 0, 0)?;
    println!("diag(1,1) split 1|1 admissible cut: {}", admissible_cut_check(&q, &split)?);
    println!("K3 degree {}", d_degree_closed(24, -16, 0.into()));
    for (c1, s, g) in [(0, 0, 1), (2, 0, 1), (1, 1, 2)] {
        println!("adjunction ({c1}, {s}, g={g}): {:?}", adjunction_filter(c1, s, g)?);
    }
    Ok(())
}

use hfcalc::cobordism::*;
use hfcalc::floer::{all_classes, Flavor};
use hfcalc::linalg::{IMat, Rat};
use hfcalc::surface::*;
use proptest::prelude::*;

fn symmetric(max_n: usize) -> impl Strategy<Value = IMat> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(-3i64..=3, n * (n + 1) / 2).prop_map(move |t| {
            let mut q = vec![vec![0; n]; n];
            let mut k = 0;
            for i in 0..n {
                for j in i..n {
                    q[i][j] = t[k];
                    q[j][i] = t[k];
                    k += 1;
                }
            }
            q
        })
    })
}

fn characteristic(q: &IMat, raw: &[i64]) -> Vec<i64> {
    q.iter().enumerate().map(|(i, row)| 2 * raw[i] + row[i]).collect()
}

fn minor(q: &IMat, i: usize, j: usize) -> IMat {
    q.iter()
        .enumerate()
        .filter(|&(r, _)| r != i)
        .map(|(_, row)| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &v)| v).collect())
        .collect()
}

fn det(q: &IMat) -> i64 {
    if q.is_empty() {
        return 1;
    }
    (0..q.len()).map(|j| if j % 2 == 0 { 1 } else { -1 } * q[0][j] * det(&minor(q, 0, j))).sum()
}

/// `cᵀ adj(Q) c / det Q`.
fn cofactor_square(q: &IMat, c: &[i64]) -> Rat {
    let n = q.len();
    let mut s = 0;
    for i in 0..n {
        for j in 0..n {
            let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
            s += c[i] * sign * det(&minor(q, j, i)) * c[j];
        }
    }
    Rat::new(s, det(q))
}

proptest! {
    #[test]
    fn inertia_accounts_for_every_dimension(q in symmetric(5)) {
        let p = LinkingPresentation::new(q.clone(), 0, 0).unwrap();
        let inv = cobordism_invariants(&p);
        prop_assert_eq!(inv.b2_plus + inv.b2_minus + inv.b2_zero, q.len());
        prop_assert_eq!(inv.sigma, inv.b2_plus as i64 - inv.b2_minus as i64);
        prop_assert_eq!(inv.b2_zero == 0, det(&q) != 0);
        prop_assert_eq!(k_group(&p).unwrap().rank, inv.b2_zero);
    }

    #[test]
    fn square_matches_cofactor_expansion(q in symmetric(4), raw in prop::collection::vec(-3i64..=3, 4)) {
        prop_assume!(det(&q) != 0);
        let c = characteristic(&q, &raw);
        prop_assert_eq!(c1_squared(&q, &c).unwrap(), cofactor_square(&q, &c));
    }

    #[test]
    fn shift_is_even_in_the_covector(q in symmetric(4), raw in prop::collection::vec(-3i64..=3, 4), h1 in 0usize..3) {
        prop_assume!(det(&q) != 0);
        let p = LinkingPresentation::new(q.clone(), h1, 0).unwrap();
        let c = characteristic(&q, &raw);
        let neg: Vec<i64> = c.iter().map(|v| -v).collect();
        prop_assert_eq!(degree_shift(&p, &c).unwrap(), degree_shift(&p, &neg).unwrap());
    }

    #[test]
    fn non_characteristic_covectors_are_rejected(q in symmetric(4), raw in prop::collection::vec(-3i64..=3, 4), i in 0usize..4) {
        let n = q.len();
        let mut c = characteristic(&q, &raw);
        c[i % n] += 1;
        let p = LinkingPresentation::new(q, 0, 0).unwrap();
        prop_assert!(matches!(degree_shift(&p, &c[..n]), Err(CobordismError::NotCharacteristic(_))));
    }

    #[test]
    fn enumerated_covectors_are_characteristic_and_symmetric(q in symmetric(3), bound in 1i64..4) {
        let cs = characteristic_covectors(&q, bound);
        for c in &cs {
            prop_assert!(is_characteristic(&q, c));
            let neg: Vec<i64> = c.iter().map(|v| -v).collect();
            prop_assert!(cs.contains(&neg));
        }
    }

    #[test]
    fn shifts_add_across_splits(q in symmetric(4), raw in prop::collection::vec(-3i64..=3, 4), mask in 0u32..16) {
        let n = q.len();
        prop_assume!(det(&q) != 0);
        let first: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        let sub: IMat = first.iter().map(|&i| first.iter().map(|&j| q[i][j]).collect()).collect();
        prop_assume!(det(&sub) != 0);
        let p = LinkingPresentation::new(q.clone(), 0, 0).unwrap();
        let c = characteristic(&q, &raw);
        let (a, b) = split_shifts(&p, &Split { first }, &c).unwrap();
        prop_assert_eq!(a + b, degree_shift(&p, &c).unwrap());
    }

    #[test]
    fn blowup_shift_is_twice_the_u_power(l in 0i64..40, sign in prop::bool::ANY) {
        let p = LinkingPresentation::new(vec![vec![-1]], 0, 0).unwrap();
        let c = if sign { 2 * l + 1 } else { -2 * l - 1 };
        prop_assert_eq!(degree_shift(&p, &[c]).unwrap(), Rat::from_integer(-2 * blowup_power(l as u64) as i64));
    }

    #[test]
    fn closing_up_lowers_the_degree_by_one(q in symmetric(3), raw in prop::collection::vec(-3i64..=3, 3)) {
        prop_assume!(det(&q) != 0);
        let p = LinkingPresentation::new(q.clone(), 0, 0).unwrap();
        let c = characteristic(&q, &raw);
        let inv = cobordism_invariants(&p);
        let closed = d_degree_closed(inv.chi + 2, inv.sigma, c1_squared(&q, &c).unwrap());
        prop_assert_eq!(closed, degree_shift(&p, &c).unwrap() - 1);
    }

    #[test]
    fn adjunction_boundary(genus in 1i64..6, self_int in 0i64..6, c1 in -12i64..=12) {
        let v = adjunction_filter(c1, self_int, genus).unwrap();
        let allowed = c1 + self_int <= 2 * genus - 2;
        prop_assert_eq!(v == Adjunction::Allowed, allowed);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn lens_complexes_square_to_zero(p in 1i64..6, n in 1i64..8, f in 0usize..4) {
        let flavor = Flavor::ALL[f];
        let d = lens_diagram(p);
        let classes = all_classes(&d, [Family::Alpha, Family::Beta], n).unwrap();
        prop_assert_eq!(classes.len() as i64, p);
        for c in &classes {
            prop_assert!(c.complex(flavor, n).check());
        }
    }

    #[test]
    fn documents_round_trip(p in 1i64..8, g in 0usize..3, k in -4i64..=4) {
        prop_assume!(k != 0);
        for d in [lens_diagram(p), standard_diagram(g), framed_unknot_triple(k)] {
            let doc = DiagramDocument::from_diagram(&d);
            let back: DiagramDocument = serde_json::from_str(&doc.to_json()).unwrap();
            prop_assert_eq!(back.to_diagram().unwrap(), d);
        }
    }
}

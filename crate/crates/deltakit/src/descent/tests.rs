use super::*;
use crate::complex::standard_space;
use crate::fixtures;
use crate::scalar::{rat, rat_int};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn random_values(len: usize, rng: &mut StdRng) -> Vec<Rat> {
    (0..len)
        .map(|_| rat(rng.gen_range(-6..=6), rng.gen_range(1..=4)))
        .collect()
}

fn random_global(cech: &CechComplex, p: usize, rng: &mut StdRng) -> Cochain {
    let base = &cech.cover.base;
    Cochain::from_values(base, p, Ring::Rat, random_values(base.size(p), rng)).unwrap()
}

/// All three section identities, exactly, across degrees and columns.
fn check_section_identities(cech: &CechComplex, rng: &mut StdRng) {
    let dim = cech.cover.base.dimension();
    for p in 0..=dim.min(2) {
        // (1) rho . upsilon = id on global cochains
        for _ in 0..5 {
            let x = random_global(cech, p, rng);
            let back = cech.rho_section_to_global(p, &cech.upsilon(&x));
            assert_eq!(back, x, "rho upsilon = id fails in degree {p}");
        }
        // (2) upsilon rho + rho delta = id on column 1
        for _ in 0..5 {
            let v = random_values(cech.column(1).size(p), rng);
            let term1 = cech.upsilon(&cech.rho_section_to_global(p, &v));
            let term2 = cech.rho_section(2, p, &cech.delta(1, p, &v));
            let sum: Vec<Rat> = term1.iter().zip(&term2).map(|(a, b)| a + b).collect();
            assert_eq!(sum, v, "column-1 identity fails in degree {p}");
        }
        // (3) delta rho + rho delta = id on columns q >= 2
        for q in 2..cech.max_q {
            for _ in 0..5 {
                let v = random_values(cech.column(q).size(p), rng);
                let term1 = cech.delta(q - 1, p, &cech.rho_section(q, p, &v));
                let term2 = cech.rho_section(q + 1, p, &cech.delta(q, p, &v));
                let sum: Vec<Rat> = term1.iter().zip(&term2).map(|(a, b)| a + b).collect();
                assert_eq!(sum, v, "row identity fails at column {q}, degree {p}");
            }
        }
    }
}

fn check_partition_identities(cech: &CechComplex, pou: &PartitionOfUnity, rng: &mut StdRng) {
    let dim = cech.cover.base.dimension();
    for p in 0..=dim.min(2) {
        for _ in 0..5 {
            let x = random_global(cech, p, rng);
            let back = cech
                .rho_partition_to_global(pou, p, &cech.upsilon(&x))
                .unwrap();
            assert_eq!(back, x, "partition rho upsilon = id fails in degree {p}");
        }
        for _ in 0..5 {
            let v = random_values(cech.column(1).size(p), rng);
            let term1 = cech.upsilon(&cech.rho_partition_to_global(pou, p, &v).unwrap());
            let term2 = cech
                .rho_partition(pou, 2, p, &cech.delta(1, p, &v))
                .unwrap();
            let sum: Vec<Rat> = term1.iter().zip(&term2).map(|(a, b)| a + b).collect();
            assert_eq!(sum, v, "partition column-1 identity fails in degree {p}");
        }
        for q in 2..cech.max_q {
            for _ in 0..5 {
                let v = random_values(cech.column(q).size(p), rng);
                let term1 = cech.delta(q - 1, p, &cech.rho_partition(pou, q, p, &v).unwrap());
                let term2 = cech
                    .rho_partition(pou, q + 1, p, &cech.delta(q, p, &v))
                    .unwrap();
                let sum: Vec<Rat> = term1.iter().zip(&term2).map(|(a, b)| a + b).collect();
                assert_eq!(
                    sum, v,
                    "partition row identity fails at column {q}, degree {p}"
                );
            }
        }
    }
}

#[test]
fn cover_validation() {
    let circle = standard_space("circle_3").unwrap();
    // an element missing a face of a listed edge is repaired by closure
    let (cover, _) = parse_cover("element A : e01 e12\nelement B : e20\n", &circle).unwrap();
    assert!(cover.contains(0, 0, circle.lookup("v0").unwrap().1));
    // a cover missing a simplex entirely is rejected
    let bad = parse_cover("element A : e01\n", &circle);
    assert!(matches!(bad, Err(CoverError::Invalid(_))));
    // tau must point at a containing element
    let bad_tau = parse_cover(
        "element A : e01 e12\nelement B : e20\ntau e20 = A\n",
        &circle,
    );
    assert!(matches!(bad_tau, Err(CoverError::Invalid(_))));
}

#[test]
fn single_element_cover_collapses() {
    let cover = fixtures::single_element_cover("circle_3");
    let cech = CechComplex::new(cover, 4).unwrap();
    let mut rng = StdRng::seed_from_u64(61);
    // every column equals the base complex
    for q in 1..=4 {
        assert_eq!(cech.column(q).size(1), 3);
    }
    check_section_identities(&cech, &mut rng);
}

#[test]
fn circle_two_arc_columns() {
    let cover = fixtures::circle_two_arc_cover();
    let cech = CechComplex::new(cover, 3).unwrap();
    // shared simplices: v0 and v2 lie in both arcs, so column 2 has
    // 3 + 2*2 - 1 = ... enumerate: v0 -> 4 tagged pairs, v1 -> 1, v2 -> 4
    let c2 = cech.column(2);
    assert_eq!(c2.size(0), 4 + 1 + 4);
    // edges are single-element, one tagged pair each
    assert_eq!(c2.size(1), 3);
}

#[test]
fn section_identities_on_standard_covers() {
    let mut rng = StdRng::seed_from_u64(62);
    for cover in [
        fixtures::circle_two_arc_cover(),
        fixtures::circle_edge_overlap_cover(),
        fixtures::torus_two_triangle_cover(),
    ] {
        let cech = CechComplex::new(cover, 4).unwrap();
        check_section_identities(&cech, &mut rng);
    }
}

#[test]
fn delta_squares_and_augmentation() {
    let mut rng = StdRng::seed_from_u64(63);
    let cech = CechComplex::new(fixtures::torus_two_triangle_cover(), 4).unwrap();
    for p in 0..=2 {
        for q in 1..=2 {
            let v = random_values(cech.column(q).size(p), &mut rng);
            let dd = cech.delta(q + 1, p, &cech.delta(q, p, &v));
            assert!(dd.iter().all(|x| x.is_zero()), "delta^2 != 0");
        }
        // delta . upsilon = 0
        let x = random_global(&cech, p, &mut rng);
        let du = cech.delta(1, p, &cech.upsilon(&x));
        assert!(du.iter().all(|x| x.is_zero()), "delta upsilon != 0");
    }
}

#[test]
fn extended_rows_are_acyclic() {
    // a delta-cocycle in column q >= 2 has the explicit primitive rho(v)
    let mut rng = StdRng::seed_from_u64(64);
    let cech = CechComplex::new(fixtures::circle_two_arc_cover(), 4).unwrap();
    for p in 0..=1 {
        for q in 2..=3usize {
            for _ in 0..6 {
                // produce a cocycle as delta(u)
                let u = random_values(cech.column(q - 1).size(p), &mut rng);
                let v = cech.delta(q - 1, p, &u);
                let primitive = cech.rho_section(q, p, &v);
                let dp = cech.delta(q - 1, p, &primitive);
                // delta(rho v) = v - rho(delta v) = v for cocycles
                let dv = cech.delta(q, p, &v);
                let rho_dv = cech.rho_section(q + 1, p, &dv);
                let reconstructed: Vec<Rat> = dp.iter().zip(&rho_dv).map(|(a, b)| a + b).collect();
                assert_eq!(reconstructed, v);
            }
        }
    }
}

#[test]
fn indicator_partition_reduces_to_section() {
    let cover = fixtures::circle_two_arc_cover();
    let cech = CechComplex::new(cover, 4).unwrap();
    let pou = PartitionOfUnity::indicator(&cech.cover);
    let mut rng = StdRng::seed_from_u64(65);
    for p in 0..=1 {
        for q in 2..=3usize {
            let v = random_values(cech.column(q).size(p), &mut rng);
            assert_eq!(
                cech.rho_partition(&pou, q, p, &v).unwrap(),
                cech.rho_section(q, p, &v)
            );
        }
        let v = random_values(cech.column(1).size(p), &mut rng);
        assert_eq!(
            cech.rho_partition_to_global(&pou, p, &v).unwrap(),
            cech.rho_section_to_global(p, &v)
        );
    }
}

#[test]
fn split_weights_on_edge_overlap_cover() {
    // 1/2 + 1/2 on the shared first vertex of the shared edge
    let cover = fixtures::circle_edge_overlap_cover();
    let circle = Arc::clone(&cover.base);
    let v0 = circle.lookup("v0").unwrap().1;
    let v1 = circle.lookup("v1").unwrap().1;
    let v2 = circle.lookup("v2").unwrap().1;
    let mut weights = vec![vec![Rat::zero(); 2]; 3];
    weights[v0] = vec![rat(1, 2), rat(1, 2)];
    weights[v1] = vec![rat_int(1), Rat::zero()];
    weights[v2] = vec![Rat::zero(), rat_int(1)];
    let pou = PartitionOfUnity::new(&cover, weights).unwrap();
    let cech = CechComplex::new(cover, 4).unwrap();
    let mut rng = StdRng::seed_from_u64(66);
    check_partition_identities(&cech, &pou, &mut rng);
}

#[test]
fn random_partition_on_torus_cover() {
    let cover = fixtures::torus_two_triangle_cover();
    let weights = vec![vec![rat(1, 3), rat(2, 3)]];
    let pou = PartitionOfUnity::new(&cover, weights).unwrap();
    let cech = CechComplex::new(cover, 4).unwrap();
    let mut rng = StdRng::seed_from_u64(67);
    check_partition_identities(&cech, &pou, &mut rng);
}

#[test]
fn weight_support_violation_detected() {
    // all weight on T1 starves the other triangle
    let cover = fixtures::torus_two_triangle_cover();
    let weights = vec![vec![rat_int(1), Rat::zero()]];
    let pou = PartitionOfUnity::new(&cover, weights).unwrap();
    let cech = CechComplex::new(cover, 3).unwrap();
    let p = 2;
    let v = vec![Rat::zero(); cech.column(2).size(p)];
    assert!(matches!(
        cech.rho_partition(&pou, 2, p, &v),
        Err(CoverError::WeightSupport(_))
    ));
}

#[test]
fn pou_validation() {
    let cover = fixtures::circle_two_arc_cover();
    // weight on a non-containing element
    let circle = Arc::clone(&cover.base);
    let v1 = circle.lookup("v1").unwrap().1;
    let mut weights = vec![vec![rat(1, 2), rat(1, 2)]; 3];
    weights[v1] = vec![Rat::zero(), rat_int(1)]; // v1 is only in A
    assert!(PartitionOfUnity::new(&cover, weights).is_err());
    // weights not summing to one
    let weights = vec![vec![rat(1, 2), Rat::zero()]; 3];
    assert!(PartitionOfUnity::new(&cover, weights).is_err());
}

#[test]
fn descent_equivalence_on_circle_over_z() {
    let cech = CechComplex::new(fixtures::circle_two_arc_cover(), 3).unwrap();
    let report = descent_equivalence_h1(&cech, Ring::Int, 4).unwrap();
    assert_eq!(report.h1_base, AbGroupPresentation::free(1));
    assert_eq!(report.h1_total, AbGroupPresentation::free(1));
    assert!(report.fully_faithful_pairs > 0);
    assert!(report.essential_surjectivity_samples > 0);
}

#[test]
fn descent_equivalence_on_torus_over_q() {
    let cech = CechComplex::new(fixtures::torus_two_triangle_cover(), 3).unwrap();
    let report = descent_equivalence_h1(&cech, Ring::Rat, 4).unwrap();
    assert_eq!(report.h1_base.rational_rank, 2);
    assert_eq!(report.h1_total.rational_rank, 2);
}

#[test]
fn descent_equivalence_single_element() {
    let cech = CechComplex::new(fixtures::single_element_cover("circle_3"), 3).unwrap();
    let report = descent_equivalence_h1(&cech, Ring::Int, 3).unwrap();
    assert_eq!(report.h1_base, report.h1_total);
}

#[test]
fn flipped_delta_breaks_everything() {
    // negative control: all certificates must fail under a sign-flipped delta
    let cech = CechComplex::new(fixtures::circle_two_arc_cover(), 3)
        .unwrap()
        .with_flipped_delta_sign();
    assert!(descent_equivalence_h1(&cech, Ring::Int, 3).is_err());
    // the row identities fail too
    let v: Vec<Rat> = (0..cech.column(2).size(0))
        .map(|i| rat(i as i64 + 1, 3))
        .collect();
    let term1 = cech.delta(1, 0, &cech.rho_section(2, 0, &v));
    let term2 = cech.rho_section(3, 0, &cech.delta(2, 0, &v));
    let sum: Vec<Rat> = term1.iter().zip(&term2).map(|(a, b)| a + b).collect();
    assert_ne!(sum, v, "flipped delta must break the homotopy identity");
}

#[test]
fn cover_text_diagnostics() {
    let circle = standard_space("circle_3").unwrap();
    match parse_cover("element A : nope\n", &circle) {
        Err(CoverError::Parse { line, .. }) => assert_eq!(line, 1),
        other => panic!("expected parse error, got {other:?}"),
    }
    match parse_cover("element A : e01 e12\nelement B : e20\nbogus x\n", &circle) {
        Err(CoverError::Parse { line, .. }) => assert_eq!(line, 3),
        other => panic!("expected parse error, got {other:?}"),
    }
}

#[test]
fn rho_identity_report_runs_clean() {
    let cech = CechComplex::new(fixtures::circle_two_arc_cover(), 4).unwrap();
    let pou = PartitionOfUnity::indicator(&cech.cover);
    let report = verify_rho_identities(&cech, Some(&pou)).unwrap();
    assert!(report.section_checks > 0);
    assert!(report.partition_checks > 0);
    let broken = CechComplex::new(fixtures::circle_two_arc_cover(), 4)
        .unwrap()
        .with_flipped_delta_sign();
    assert!(verify_rho_identities(&broken, None).is_err());
}

use super::*;
use crate::complex::standard_space;
use crate::dccomplex::to_character;
use crate::fixtures;
use crate::nerve::build_nerve;
use crate::scalar::{int, rat, rat_int};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn circle_field(vals: [(i64, i64); 3]) -> (Arc<DeltaComplex>, GaugeField) {
    let circle = standard_space("circle_3").unwrap();
    let a = Cochain::from_values(
        &circle,
        1,
        Ring::RatModZ,
        vals.iter().map(|&(p, q)| rat(p, q)).collect(),
    )
    .unwrap();
    let field = GaugeField::new(&circle, a).unwrap();
    (circle, field)
}

/// A monopole-free field on the octahedron sphere with unit total flux:
/// concentrate an integral class on one triangle and spread 1/8 of reduced
/// curvature per plaquette, then solve dh = -c0 + omega0 exactly.
pub fn sphere_unit_flux() -> (Arc<DeltaComplex>, GaugeField) {
    let sphere = standard_space("sphere_octahedron").unwrap();
    let fund = &cycle_basis(&sphere, 2)[0];
    let t0 = fund.coeffs.iter().position(|c| !c.is_zero()).unwrap();
    let mut c0 = vec![Rat::zero(); sphere.size(2)];
    c0[t0] = rat_of(&fund.coeffs[t0]);
    let omega0: Vec<Rat> = fund.coeffs.iter().map(|e| rat_of(e) / rat_int(8)).collect();
    let rhs: Vec<Rat> = c0.iter().zip(&omega0).map(|(c, w)| w - c).collect();
    let d1 = sphere.coboundary_matrix(1).to_rat();
    let h_vals = d1.solve(&rhs).expect("flux spreads over the sphere");
    let h = Cochain::from_values(&sphere, 1, Ring::Rat, h_vals).unwrap();
    let a = h.with_ring(Ring::RatModZ).unwrap();
    let field = GaugeField::new(&sphere, a).unwrap();
    (sphere, field)
}

#[test]
fn dch_zero_field() {
    let circle = standard_space("circle_3").unwrap();
    let dc = DCComplex::new(&circle, 2);
    let x = dch(&dc, &GaugeField::zero(&circle), LiftRule::Canonical).unwrap();
    assert!(x.c.is_zero() && x.h.is_zero() && x.omega.as_ref().unwrap().is_zero());
}

#[test]
fn dch_circle_holonomy() {
    let (circle, field) = circle_field([(1, 3), (1, 3), (1, 2)]);
    let dc = DCComplex::new(&circle, 2);
    let x = dch(&dc, &field, LiftRule::Canonical).unwrap();
    assert!(x.c.is_zero(), "no 2-simplices, no flux");
    assert!(x.omega.as_ref().unwrap().is_zero());
    assert_eq!(x.h.values, vec![rat(1, 3), rat(1, 3), rat(1, 2)]);
    // total holonomy 1/3 + 1/3 + 1/2 = 7/6 = 1/6 mod Z
    let ch = to_character(&dc, &x).unwrap();
    let fund = Chain::from_coeffs(&circle, 1, vec![int(1), int(1), int(1)]);
    let hol = holonomy(&field, &fund).unwrap();
    assert_eq!(hol, rat(1, 6));
    // the stored character agrees: its basis is the same fundamental cycle
    assert_eq!(ch.cycle_basis.len(), 1);
    let sign_adjusted: Rat = ch.holonomy[0].clone();
    assert!(sign_adjusted == rat(1, 6) || sign_adjusted == rat(5, 6));
}

#[test]
fn dch_sphere_unit_flux_chern_number() {
    let (sphere, field) = sphere_unit_flux();
    let dc = DCComplex::new(&sphere, 2);
    let x = dch(&dc, &field, LiftRule::Canonical).unwrap();
    let fund = &cycle_basis(&sphere, 2)[0];
    // exhaustive plaquette sum: reduced curvature pairs to 1 with the
    // fundamental cycle, and so does the integral class
    let omega = x.omega.as_ref().unwrap();
    assert_eq!(evaluate(omega, fund).unwrap(), rat_int(1));
    assert_eq!(evaluate(&x.c, fund).unwrap(), rat_int(1));
    // chi(boundary S) = omega(S) on every triangle
    let ch = to_character(&dc, &x).unwrap();
    assert!(crate::dccomplex::character_check(&ch).unwrap());
}

#[test]
fn dch_lift_independence() {
    let (circle, field) = circle_field([(1, 3), (0, 1), (2, 3)]);
    let dc = DCComplex::new(&circle, 2);
    let x_canonical = dch(&dc, &field, LiftRule::Canonical).unwrap();
    // shift the lift by integers
    let shifted = Cochain::from_values(
        &circle,
        1,
        Ring::Rat,
        vec![rat(4, 3), rat(-2, 1), rat(2, 3)],
    )
    .unwrap();
    let x_shifted = dch(&dc, &field, LiftRule::Explicit(&shifted)).unwrap();
    let cat = dc.category(2).unwrap();
    let o1 = cat.object(dc.pack(&x_canonical)).unwrap();
    let o2 = cat.object(dc.pack(&x_shifted)).unwrap();
    let witness = cat.hom_exists(&o1, &o2).unwrap();
    assert!(witness.is_some(), "lift change must not change the class");
    // a lift that does not reduce to the field is rejected
    let wrong = Cochain::from_values(
        &circle,
        1,
        Ring::Rat,
        vec![rat(1, 2), rat_int(0), rat(2, 3)],
    )
    .unwrap();
    assert!(matches!(
        dch(&dc, &field, LiftRule::Explicit(&wrong)),
        Err(ClassifyError::BadLift)
    ));
}

#[test]
fn preq_round_trips() {
    let circle = standard_space("circle_3").unwrap();
    let dc = DCComplex::new(&circle, 2);
    // preq of zero is the zero field
    let zero = dc.zero_triple(2);
    assert_eq!(preq(&dc, &zero).unwrap(), GaugeField::zero(&circle));
    // flat cocycle: a = h mod Z and holonomy is preserved
    let h = Cochain::from_values(
        &circle,
        1,
        Ring::Rat,
        vec![rat(5, 3), rat(1, 4), rat(-1, 6)],
    )
    .unwrap();
    let x = dc
        .triple(
            2,
            Cochain::zero(&circle, 2, Ring::Int),
            h.clone(),
            Some(Cochain::zero(&circle, 2, Ring::Rat)),
        )
        .unwrap();
    let field = preq(&dc, &x).unwrap();
    assert_eq!(field.a.values, vec![rat(2, 3), rat(1, 4), rat(5, 6)]);
    let fund = Chain::from_coeffs(&circle, 1, vec![int(1), int(1), int(1)]);
    let hol = holonomy(&field, &fund).unwrap();
    let direct: Rat = h.values.iter().sum();
    assert_eq!(hol, mod_one(&direct));
    // preq(dch(a)) is the field itself (gauge-equivalent with g = 0)
    let back = preq(&dc, &dch(&dc, &field, LiftRule::Canonical).unwrap()).unwrap();
    assert_eq!(back, field);
}

fn random_reachable_cocycle(dc: &DCComplex, rng: &mut StdRng) -> DCTriple {
    // a gauge-reachable class twisted by a flat cocycle and a coboundary
    let base = &dc.base;
    let a_vals: Vec<Rat> = (0..base.size(1))
        .map(|_| rat(rng.gen_range(0..8), 8))
        .collect();
    let field = GaugeField::new(
        base,
        Cochain::from_values(base, 1, Ring::RatModZ, a_vals).unwrap(),
    )
    .unwrap();
    let x = dch(dc, &field, LiftRule::Canonical).unwrap();
    // flat twist (0, u, 0) with du = 0: u a rational multiple of a cocycle
    let d1 = base.coboundary_matrix(1).to_rat();
    let kernel = d1.kernel_basis();
    let mut u_vals = vec![Rat::zero(); base.size(1)];
    for k in &kernel {
        let c = rat(rng.gen_range(-4..=4), rng.gen_range(1..=3));
        for (i, e) in k.iter().enumerate() {
            let t = &u_vals[i] + e * &c;
            u_vals[i] = t;
        }
    }
    let u = Cochain::from_values(base, 1, Ring::Rat, u_vals).unwrap();
    // coboundary twist d(b, g, -)
    let b_vals: Vec<Rat> = (0..base.size(1))
        .map(|_| rat_int(rng.gen_range(-3..=3)))
        .collect();
    let g_vals: Vec<Rat> = (0..base.size(0))
        .map(|_| rat(rng.gen_range(-5..=5), rng.gen_range(1..=4)))
        .collect();
    let b = Cochain::from_values(base, 1, Ring::Int, b_vals).unwrap();
    let g = Cochain::from_values(base, 0, Ring::Rat, g_vals).unwrap();
    let y = dc.triple(1, b, g, None).unwrap();
    let dy = dc.diff(&y).unwrap();
    let flat = dc
        .triple(
            2,
            Cochain::zero(base, 2, Ring::Int),
            u,
            Some(Cochain::zero(base, 2, Ring::Rat)),
        )
        .unwrap();
    let sum = DCTriple {
        degree: 2,
        c: x.c.add(&dy.c).add(&flat.c),
        h: x.h.add(&dy.h).add(&flat.h),
        omega: Some(
            x.omega
                .as_ref()
                .unwrap()
                .add(dy.omega.as_ref().unwrap())
                .add(flat.omega.as_ref().unwrap()),
        ),
    };
    assert!(dc.is_cocycle(&sum).unwrap());
    sum
}

#[test]
fn preq_dch_round_trip_with_witness() {
    let mut rng = StdRng::seed_from_u64(51);
    for name in ["circle_3", "torus_min", "sphere_octahedron"] {
        let base = standard_space(name).unwrap();
        let dc = DCComplex::new(&base, 2);
        let cat = dc.category(2).unwrap();
        for _ in 0..10 {
            let x = random_reachable_cocycle(&dc, &mut rng);
            let field = preq(&dc, &x).unwrap();
            let back = dch(&dc, &field, LiftRule::Canonical).unwrap();
            let ox = cat.object(dc.pack(&x)).unwrap();
            let ob = cat.object(dc.pack(&back)).unwrap();
            let witness = cat.hom_exists(&ob, &ox).unwrap();
            let m = witness.expect("dch(preq(x)) isomorphic to x");
            assert!(cat.is_morphism(&ob, &ox, &m.representative));
        }
    }
}

#[test]
fn gauge_action_laws() {
    let (circle, field) = circle_field([(1, 3), (1, 3), (1, 2)]);
    // g = 0 fixes the field
    let zero_g = GaugeTransformation::new(Cochain::zero(&circle, 0, Ring::RatModZ)).unwrap();
    assert_eq!(gauge_act(&zero_g, &field), field);
    // g = (1/2, 0, 0) changes the two edges at v0 by 1/2, holonomy unchanged
    let g = GaugeTransformation::new(
        Cochain::from_values(
            &circle,
            0,
            Ring::RatModZ,
            vec![rat(1, 2), rat_int(0), rat_int(0)],
        )
        .unwrap(),
    )
    .unwrap();
    let acted = gauge_act(&g, &field);
    // dg on e01 = g(v1) - g(v0) = -1/2; on e20 = g(v0) - g(v2) = 1/2
    assert_eq!(acted.a.values[0], mod_one(&(rat(1, 3) - rat(1, 2))));
    assert_eq!(acted.a.values[1], rat(1, 3));
    assert_eq!(acted.a.values[2], mod_one(&(rat(1, 2) + rat(1, 2))));
    let fund = Chain::from_coeffs(&circle, 1, vec![int(1), int(1), int(1)]);
    assert_eq!(
        holonomy(&acted, &fund).unwrap(),
        holonomy(&field, &fund).unwrap()
    );
    // two transformations compose additively
    let g2 = GaugeTransformation::new(
        Cochain::from_values(
            &circle,
            0,
            Ring::RatModZ,
            vec![rat(1, 4), rat(1, 4), rat_int(0)],
        )
        .unwrap(),
    )
    .unwrap();
    let sum_g = GaugeTransformation::new(
        Cochain::from_values(
            &circle,
            0,
            Ring::RatModZ,
            vec![rat(3, 4), rat(1, 4), rat_int(0)],
        )
        .unwrap(),
    )
    .unwrap();
    assert_eq!(
        gauge_act(&g2, &gauge_act(&g, &field)),
        gauge_act(&sum_g, &field)
    );
}

#[test]
fn gauge_invariance_randomized() {
    let mut rng = StdRng::seed_from_u64(52);
    for name in ["circle_3", "torus_min", "sphere_octahedron"] {
        let base = standard_space(name).unwrap();
        let cycles = cycle_basis(&base, 1);
        for _ in 0..10 {
            let a_vals: Vec<Rat> = (0..base.size(1))
                .map(|_| rat(rng.gen_range(0..12), 12))
                .collect();
            let field = GaugeField::new(
                &base,
                Cochain::from_values(&base, 1, Ring::RatModZ, a_vals).unwrap(),
            )
            .unwrap();
            let g_vals: Vec<Rat> = (0..base.size(0))
                .map(|_| rat(rng.gen_range(0..12), 12))
                .collect();
            let g = GaugeTransformation::new(
                Cochain::from_values(&base, 0, Ring::RatModZ, g_vals).unwrap(),
            )
            .unwrap();
            let acted = gauge_act(&g, &field);
            for z in &cycles {
                assert_eq!(holonomy(&acted, z).unwrap(), holonomy(&field, z).unwrap());
            }
        }
    }
}

#[test]
fn chern_morphism_examples() {
    let circle = standard_space("circle_3").unwrap();
    let dc1 = DCComplex::new(&circle, 1);
    // zero transformation, zero lift
    let zero_g = GaugeTransformation::new(Cochain::zero(&circle, 0, Ring::RatModZ)).unwrap();
    let m = chern_morphism(&dc1, &zero_g, LiftRule::Canonical).unwrap();
    assert!(m.c.is_zero() && m.h.is_zero() && m.omega.as_ref().unwrap().is_zero());

    // integer constant lift of the zero transformation: the data equals
    // d(1, 0), the coboundary of the constant integral 0-triple
    let ones = Cochain::from_values(&circle, 0, Ring::Rat, vec![rat_int(1); 3]).unwrap();
    let m1 = chern_morphism(&dc1, &zero_g, LiftRule::Explicit(&ones)).unwrap();
    let const_triple = dc1
        .triple(
            0,
            Cochain::from_values(&circle, 0, Ring::Int, vec![rat_int(1); 3]).unwrap(),
            Cochain::zero(&circle, 0, Ring::Rat),
            None,
        )
        .unwrap();
    let d_const = dc1.diff(&const_triple).unwrap();
    assert_eq!(m1, d_const, "the class of an integer constant is zero");

    // two lifts of (0, 1/2, 0) differ by the coboundary of an integral
    // 0-triple
    let g = GaugeTransformation::new(
        Cochain::from_values(
            &circle,
            0,
            Ring::RatModZ,
            vec![rat_int(0), rat(1, 2), rat_int(0)],
        )
        .unwrap(),
    )
    .unwrap();
    let lift_a = chern_morphism(&dc1, &g, LiftRule::Canonical).unwrap();
    let other = Cochain::from_values(
        &circle,
        0,
        Ring::Rat,
        vec![rat_int(0), rat(3, 2), rat_int(0)],
    )
    .unwrap();
    let lift_b = chern_morphism(&dc1, &g, LiftRule::Explicit(&other)).unwrap();
    assert!(
        !lift_a.omega.as_ref().unwrap().is_zero(),
        "nonzero alpha at the edges of v1"
    );
    let connect = dc1
        .triple(
            0,
            Cochain::from_values(
                &circle,
                0,
                Ring::Int,
                vec![rat_int(0), rat_int(-1), rat_int(0)],
            )
            .unwrap(),
            Cochain::zero(&circle, 0, Ring::Rat),
            None,
        )
        .unwrap();
    let d_connect = dc1.diff(&connect).unwrap();
    assert_eq!(lift_a.c.sub(&lift_b.c), d_connect.c);
    assert_eq!(lift_a.h.sub(&lift_b.h), d_connect.h);
    assert_eq!(
        lift_a
            .omega
            .as_ref()
            .unwrap()
            .sub(lift_b.omega.as_ref().unwrap()),
        d_connect.omega.unwrap()
    );
}

#[test]
fn weil_projection_and_lift() {
    let sphere = standard_space("sphere_octahedron").unwrap();
    let dc1 = DCComplex::new(&sphere, 1);
    // (c, 0, c) projects to c
    let fund = &cycle_basis(&sphere, 2)[0];
    let t0 = fund.coeffs.iter().position(|c| !c.is_zero()).unwrap();
    let mut c_vals = vec![rat_int(0); sphere.size(2)];
    c_vals[t0] = rat_of(&fund.coeffs[t0]);
    let c = Cochain::from_values(&sphere, 2, Ring::Int, c_vals).unwrap();
    let lifted = weil_lift(&dc1, &c, None).unwrap();
    assert_eq!(weil_project(&lifted), c);
    assert!(dc1.is_cocycle(&lifted).unwrap());

    // зero lifts to zero
    let zero = Cochain::zero(&sphere, 2, Ring::Int);
    let z = weil_lift(&dc1, &zero, None).unwrap();
    assert!(z.c.is_zero() && z.h.is_zero() && z.omega.as_ref().unwrap().is_zero());

    // uniform curvature 1/8 per oriented triangle is cohomologous to the
    // indicator class: both pair to 1 with the fundamental cycle
    let omega_vals: Vec<Rat> = fund.coeffs.iter().map(|e| rat_of(e) / rat_int(8)).collect();
    let omega = Cochain::from_values(&sphere, 2, Ring::Rat, omega_vals).unwrap();
    let lifted2 = weil_lift(&dc1, &c, Some(&omega)).unwrap();
    assert!(dc1.is_cocycle(&lifted2).unwrap());
    assert_eq!(lifted2.omega.as_ref().unwrap(), &omega);

    // torus: omega = c/2 has half the pairing and cannot be matched
    let torus = standard_space("torus_min").unwrap();
    let dc1t = DCComplex::new(&torus, 1);
    let fund_t = &cycle_basis(&torus, 2)[0];
    let t0 = fund_t.coeffs.iter().position(|c| !c.is_zero()).unwrap();
    let mut ct_vals = vec![rat_int(0); torus.size(2)];
    ct_vals[t0] = rat_of(&fund_t.coeffs[t0]);
    let ct = Cochain::from_values(&torus, 2, Ring::Int, ct_vals).unwrap();
    let half = Cochain::from_values(
        &torus,
        2,
        Ring::Rat,
        ct.values.iter().map(|v| v / rat_int(2)).collect(),
    )
    .unwrap();
    assert!(matches!(
        weil_lift(&dc1t, &ct, Some(&half)),
        Err(ClassifyError::OmegaNotCohomologous)
    ));
}

#[test]
fn weil_injectivity_witnesses() {
    let torus = standard_space("torus_min").unwrap();
    let dc1 = DCComplex::new(&torus, 1);
    // zero in, zero out
    let zero_b = Cochain::zero(&torus, 1, Ring::Int);
    let w = weil_injectivity_witness(&dc1, &dc1.zero_triple(2), &zero_b).unwrap();
    assert!(w.c.is_zero() && w.h.is_zero() && w.omega.as_ref().unwrap().is_zero());

    let mut rng = StdRng::seed_from_u64(53);
    for _ in 0..10 {
        // plant x = d(b, f, alpha)
        let b_vals: Vec<Rat> = (0..torus.size(1))
            .map(|_| rat_int(rng.gen_range(-3..=3)))
            .collect();
        let b = Cochain::from_values(&torus, 1, Ring::Int, b_vals).unwrap();
        let f_vals: Vec<Rat> = (0..torus.size(0))
            .map(|_| rat(rng.gen_range(-4..=4), rng.gen_range(1..=3)))
            .collect();
        let f = Cochain::from_values(&torus, 0, Ring::Rat, f_vals).unwrap();
        let alpha_vals: Vec<Rat> = (0..torus.size(1))
            .map(|_| rat(rng.gen_range(-4..=4), rng.gen_range(1..=3)))
            .collect();
        let alpha = Cochain::from_values(&torus, 1, Ring::Rat, alpha_vals).unwrap();
        let y0 = dc1.triple(1, b.clone(), f, Some(alpha)).unwrap();
        let x = dc1.diff(&y0).unwrap();
        let y = weil_injectivity_witness(&dc1, &x, &b).unwrap();
        assert_eq!(dc1.diff(&y).unwrap(), x, "dy = x exactly");
    }
}

#[test]
fn equivariant_weil_lift_trivial_group() {
    let nerve = build_nerve(fixtures::trivial_on("torus_min"), 3).unwrap();
    let total = DcTotalComplex::new(&nerve, 1, 3).unwrap();
    let fund = &cycle_basis(nerve.level(0), 2)[0];
    let t0 = fund.coeffs.iter().position(|c| !c.is_zero()).unwrap();
    let mut c_vals = vec![rat_int(0); nerve.level(0).size(2)];
    c_vals[t0] = rat_of(&fund.coeffs[t0]);
    let input = IntTotal2 {
        c1: Cochain::from_values(nerve.level(0), 2, Ring::Int, c_vals).unwrap(),
        c2: Cochain::zero(nerve.level(1), 1, Ring::Int),
        c3: Cochain::zero(nerve.level(2), 0, Ring::Int),
    };
    assert!(input.is_total_cocycle(&nerve).unwrap());
    let lift = equivariant_weil_lift(&total, &input).unwrap();
    // reduces to the one-column lift: the level-0 component is weil_lift(c1)
    assert_eq!(lift[0].1.c, input.c1);
    assert!(lift[1].1.c.is_zero());
}

#[test]
fn equivariant_weil_lift_z2_group_cocycle() {
    // c3 = the nontrivial integral 2-cocycle class of the Z/2 nerve
    let nerve = build_nerve(fixtures::z2_on_point(), 3).unwrap();
    let total = DcTotalComplex::new(&nerve, 1, 3).unwrap();
    let level2 = nerve.level(2);
    let mut c3_vals = vec![rat_int(0); 4];
    c3_vals[level2.lookup("1.1|v0").unwrap().1] = rat_int(1);
    let input = IntTotal2 {
        c1: Cochain::zero(nerve.level(0), 2, Ring::Int),
        c2: Cochain::zero(nerve.level(1), 1, Ring::Int),
        c3: Cochain::from_values(level2, 0, Ring::Int, c3_vals).unwrap(),
    };
    assert!(input.is_total_cocycle(&nerve).unwrap());
    let lift = equivariant_weil_lift(&total, &input).unwrap();
    // omega components vanish: the lift is flat
    for (_, t) in &lift {
        if let Some(w) = &t.omega {
            assert!(w.is_zero(), "lift of a torsion class has no curvature");
        }
    }
    // the averaged primitive puts h2(g) = 1/2
    let g_idx = nerve.level(1).lookup("1|v0").unwrap().1;
    assert_eq!(lift[1].1.h.values[g_idx], rat(1, 2));
}

#[test]
fn equivariant_weil_lift_planted_exact() {
    let mut rng = StdRng::seed_from_u64(54);
    for action in [fixtures::z2_on_point(), fixtures::z2_swap_two_circles()] {
        let nerve = build_nerve(action, 3).unwrap();
        let total = DcTotalComplex::new(&nerve, 1, 3).unwrap();
        // plant an exact integral total 2-cocycle d_tot(b1, b2)
        let b1_vals: Vec<Rat> = (0..nerve.level(0).size(1))
            .map(|_| rat_int(rng.gen_range(-2..=2)))
            .collect();
        let b1 = Cochain::from_values(nerve.level(0), 1, Ring::Int, b1_vals).unwrap();
        let b2_vals: Vec<Rat> = (0..nerve.level(1).size(0))
            .map(|_| rat_int(rng.gen_range(-2..=2)))
            .collect();
        let b2 = Cochain::from_values(nerve.level(1), 0, Ring::Int, b2_vals).unwrap();
        let c1 = coboundary(&b1).unwrap();
        let c2 = nerve.delta(&b1, 0).unwrap().sub(&coboundary(&b2).unwrap());
        let c3 = nerve.delta(&b2, 1).unwrap();
        let input = IntTotal2 { c1, c2, c3 };
        assert!(input.is_total_cocycle(&nerve).unwrap());
        let lift = equivariant_weil_lift(&total, &input).unwrap();
        // exact input lifts to an exact output
        let packed = total.pack(2, &lift);
        let primitive = total.mixed.is_coboundary(&packed).unwrap();
        assert!(primitive.is_some(), "class zero maps to class zero");
    }
}

#[test]
fn equivariant_weil_lift_rejects_non_cocycles() {
    let nerve = build_nerve(fixtures::z2_on_point(), 3).unwrap();
    let total = DcTotalComplex::new(&nerve, 1, 3).unwrap();
    let level2 = nerve.level(2);
    let mut c3_vals = vec![rat_int(0); 4];
    c3_vals[level2.lookup("0.1|v0").unwrap().1] = rat_int(1);
    let input = IntTotal2 {
        c1: Cochain::zero(nerve.level(0), 2, Ring::Int),
        c2: Cochain::zero(nerve.level(1), 1, Ring::Int),
        c3: Cochain::from_values(level2, 0, Ring::Int, c3_vals).unwrap(),
    };
    assert!(!input.is_total_cocycle(&nerve).unwrap());
    assert!(matches!(
        equivariant_weil_lift(&total, &input),
        Err(ClassifyError::NotATotalCocycle)
    ));
}

#[test]
fn kostant_eta_examples() {
    // flat cocycle maps to zero
    let nerve = build_nerve(fixtures::trivial_on("circle_3"), 3).unwrap();
    let total = DcTotalComplex::new(&nerve, 2, 3).unwrap();
    let h = Cochain::from_values(nerve.level(0), 1, Ring::Rat, vec![rat(1, 3); 3]).unwrap();
    let x0 = total
        .level_dc(0)
        .triple(
            2,
            Cochain::zero(nerve.level(0), 2, Ring::Int),
            h,
            Some(Cochain::zero(nerve.level(0), 2, Ring::Rat)),
        )
        .unwrap();
    let x = vec![(0usize, x0)];
    let eta = kostant_eta(&total, &x).unwrap();
    assert!(eta.is_zero());

    // sphere with unit flux (trivial group): eta recovers the reduced
    // curvature with integral total pairing
    let (sphere, field) = sphere_unit_flux();
    let action = crate::nerve::FinGroupAction::trivial(crate::nerve::FinGroup::trivial(), sphere);
    let nerve_s = build_nerve(action, 3).unwrap();
    let total_s = DcTotalComplex::new(&nerve_s, 2, 3).unwrap();
    let trip = dch(total_s.level_dc(0), &field, LiftRule::Canonical).unwrap();
    let x = vec![(0usize, trip)];
    let eta = kostant_eta(&total_s, &x).unwrap();
    let fund = &cycle_basis(nerve_s.level(0), 2)[0];
    assert_eq!(
        evaluate(&eta, fund).unwrap(),
        rat_int(1),
        "integral Chern number"
    );

    // Z/2 on a point: no 2-simplices, eta is identically zero
    let nerve_z2 = build_nerve(fixtures::z2_on_point(), 3).unwrap();
    let total_z2 = DcTotalComplex::new(&nerve_z2, 2, 3).unwrap();
    assert_eq!(total_z2.nerve.level(0).size(2), 0);
    let _ = total_z2;
}

#[test]
fn kostant_kernel_witness_circle_holonomy() {
    let nerve = build_nerve(fixtures::trivial_on("circle_3"), 3).unwrap();
    let total = DcTotalComplex::new(&nerve, 2, 3).unwrap();
    let mk = |vals: Vec<Rat>| {
        let h = Cochain::from_values(nerve.level(0), 1, Ring::Rat, vals).unwrap();
        let x0 = total
            .level_dc(0)
            .triple(
                2,
                Cochain::zero(nerve.level(0), 2, Ring::Int),
                h,
                Some(Cochain::zero(nerve.level(0), 2, Ring::Rat)),
            )
            .unwrap();
        vec![(0usize, x0)]
    };
    let x = mk(vec![rat(1, 3), rat(1, 3), rat(1, 2)]);
    let y = mk(vec![rat(7, 6), rat_int(0), rat_int(0)]);
    let z = mk(vec![rat(1, 2), rat_int(0), rat_int(0)]);
    let wx = kostant_kernel_witness(&total, &x).unwrap();
    let wy = kostant_kernel_witness(&total, &y).unwrap();
    let wz = kostant_kernel_witness(&total, &z).unwrap();
    // total holonomy 7/6 = 1/6 mod Z in both x and y; z differs
    assert!(qz_total_classes_equal(&nerve, &wx, &wy).unwrap());
    assert!(!qz_total_classes_equal(&nerve, &wx, &wz).unwrap());

    // zero maps to the zero class
    let zero = mk(vec![rat_int(0); 3]);
    let wzero = kostant_kernel_witness(&total, &zero).unwrap();
    assert!(wzero.0.is_zero() && wzero.1.is_zero());
}

#[test]
fn kostant_kernel_z2_two_prequantizations() {
    let nerve = build_nerve(fixtures::z2_on_point(), 3).unwrap();
    let total = DcTotalComplex::new(&nerve, 2, 3).unwrap();
    let level1 = nerve.level(1);
    let level2 = nerve.level(2);
    let g1 = level1.lookup("1|v0").unwrap().1;
    // flat total cocycles: h2 on level 1 with delta h2 = c3 integral
    let mk = |half: bool| {
        let mut h2_vals = vec![rat_int(0); 2];
        if half {
            h2_vals[g1] = rat(1, 2);
        }
        let h2 = Cochain::from_values(level1, 0, Ring::Rat, h2_vals).unwrap();
        let delta_h2 = nerve.delta(&h2, 1).unwrap();
        let c3 = Cochain::from_values(level2, 0, Ring::Int, delta_h2.values.clone()).unwrap();
        let x1 = total
            .level_dc(1)
            .triple(1, Cochain::zero(level1, 1, Ring::Int), h2, None)
            .unwrap();
        let x2 = total
            .level_dc(2)
            .triple(0, c3, Cochain::zero(level2, 0, Ring::Rat), None)
            .unwrap();
        vec![(1usize, x1), (2, x2)]
    };
    let trivial = mk(false);
    let nontrivial = mk(true);
    // both are total cocycles and their witnesses are the two group
    // homomorphisms Z/2 -> Q/Z
    let w0 = kostant_kernel_witness(&total, &trivial).unwrap();
    let w1 = kostant_kernel_witness(&total, &nontrivial).unwrap();
    assert_eq!(w0.1.values[g1], rat_int(0));
    assert_eq!(w1.1.values[g1], rat(1, 2));
    assert!(!qz_total_classes_equal(&nerve, &w0, &w1).unwrap());
}

#[test]
fn kostant_sequence_on_fixtures() {
    // torus with the trivial group: kernel (Q/Z)^2
    let nerve = build_nerve(fixtures::trivial_on("torus_min"), 3).unwrap();
    let report = kostant_sequence_check(&nerve, 3).unwrap();
    assert_eq!(report.kernel_presentation.divisible_rank, 2);
    assert!(report.kernel_presentation.torsion.is_empty());
    assert!(
        report.eta_preimages >= 2,
        "lattice and subspace directions hit"
    );

    // point with Z/2: 0 -> Z/2 -> H^2 -> 0 -> 0
    let nerve = build_nerve(fixtures::z2_on_point(), 3).unwrap();
    let report = kostant_sequence_check(&nerve, 4).unwrap();
    assert_eq!(report.kernel_presentation.torsion, vec![int(2)]);
    assert_eq!(report.kernel_presentation.divisible_rank, 0);
    assert!(report.curvature_presentation.is_trivial());
    assert_eq!(report.h2_presentation.torsion, vec![int(2)]);

    // plain point: everything trivial
    let nerve = build_nerve(fixtures::trivial_on("point"), 3).unwrap();
    let report = kostant_sequence_check(&nerve, 2).unwrap();
    assert!(report.kernel_presentation.is_trivial());
    assert!(report.curvature_presentation.is_trivial());
    assert!(report.h2_presentation.is_trivial());
}

#[test]
fn gauge_text_round_trip_and_equivariant_validation() {
    let (circle, field) = circle_field([(1, 3), (0, 1), (1, 2)]);
    let text = serialize_gauge(&field);
    let (parsed, descent) = parse_gauge(&text, &circle).unwrap();
    assert_eq!(parsed, field);
    assert!(descent.is_none());

    // unknown edge
    let bad = "gauge\nnope = 1/2\n";
    assert!(matches!(
        parse_gauge(bad, &circle),
        Err(ClassifyError::Parse { line: 2, .. })
    ));

    // equivariant: identity action of Z/2 on the circle; constant descent
    // data satisfies both conditions
    let action = crate::nerve::FinGroupAction::trivial(
        crate::nerve::FinGroup::cyclic(2),
        Arc::clone(&circle),
    );
    let nerve = build_nerve(action, 2).unwrap();
    let descent = Cochain::from_values(
        nerve.level(1),
        0,
        Ring::RatModZ,
        vec![rat_int(0); nerve.level(1).size(0)],
    )
    .unwrap();
    let eq = EquivariantGaugeField::new(&nerve, field.clone(), descent);
    assert!(eq.is_ok());

    // violating descent data: delta t != 0
    let mut bad_vals = vec![rat_int(0); nerve.level(1).size(0)];
    bad_vals[nerve.level(1).lookup("1|v0").unwrap().1] = rat(1, 3);
    let bad_descent = Cochain::from_values(nerve.level(1), 0, Ring::RatModZ, bad_vals).unwrap();
    assert!(EquivariantGaugeField::new(&nerve, field, bad_descent).is_err());
}

//! Classification of lattice U(1) gauge fields.
//!
//! A gauge field is a Q/Z value per edge. Lifting to rationals and rounding
//! the plaquette sums to nearest integers splits the coboundary into an
//! integral class c = -K and a reduced curvature omega = dh - K; the triple
//! (c, h, omega) is a degree-2 cocycle of the s = 2 complex unless a
//! 3-cell carries a monopole (dK != 0). Projection to c and the exact
//! lifting constructions realize the classical classification statements
//! on finite complexes and finite action groupoids.

use crate::complex::{coboundary, evaluate, Chain, Cochain, ComplexError, DeltaComplex, Ring};
use crate::dccomplex::{cycle_basis, DCComplex, DCTriple, DcError, DcTotalComplex};
use crate::exactalg::{solve_mixed_rows, AbGroupPresentation, AlgError, IntMatrix, RatMatrix};
use crate::nerve::{NerveError, NerveLevels};
use crate::scalar::{mod_one, nearest_int, rat_of, Int, Rat};
use num_traits::Zero;
use std::sync::Arc;

#[derive(Debug, thiserror::Error)]
pub enum ClassifyError {
    #[error("monopole detected at 3-simplex `{simplex}`: rounded flux is not closed")]
    Monopole { simplex: String },
    #[error("lift does not reduce to the gauge field mod Z")]
    BadLift,
    #[error("omega is not rationally cohomologous to the cocycle")]
    OmegaNotCohomologous,
    #[error("input is not a cocycle")]
    NotACocycle,
    #[error("input is not a total cocycle")]
    NotATotalCocycle,
    #[error("curvature must vanish for a kernel witness")]
    CurvatureNotFlat,
    #[error("no primitive found where the construction guarantees one")]
    NoPrimitive,
    #[error("exactness failure in the sequence check: {0}")]
    Exactness(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("{0}")]
    Complex(#[from] ComplexError),
    #[error("{0}")]
    Dc(#[from] DcError),
    #[error("{0}")]
    Nerve(#[from] NerveError),
    #[error("{0}")]
    Alg(#[from] AlgError),
}

/// A lattice U(1) connection in a global trivialization: a Q/Z value per
/// edge, canonical representatives in [0, 1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaugeField {
    pub base: Arc<DeltaComplex>,
    pub a: Cochain,
}

impl GaugeField {
    pub fn new(base: &Arc<DeltaComplex>, a: Cochain) -> Result<Self, ClassifyError> {
        if a.degree != 1 || a.ring != Ring::RatModZ {
            return Err(ClassifyError::Parse {
                line: 0,
                msg: "gauge field must be a Q/Z-valued 1-cochain".into(),
            });
        }
        if base.dimension() < 1 {
            return Err(ClassifyError::Parse {
                line: 0,
                msg: "gauge fields need a base of dimension >= 1".into(),
            });
        }
        Ok(GaugeField {
            base: Arc::clone(base),
            a,
        })
    }

    pub fn zero(base: &Arc<DeltaComplex>) -> Self {
        GaugeField {
            base: Arc::clone(base),
            a: Cochain::zero(base, 1, Ring::RatModZ),
        }
    }
}

/// A change of trivialization: a Q/Z value per vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaugeTransformation {
    pub g: Cochain,
}

impl GaugeTransformation {
    pub fn new(g: Cochain) -> Result<Self, ClassifyError> {
        if g.degree != 0 || g.ring != Ring::RatModZ {
            return Err(ClassifyError::Parse {
                line: 0,
                msg: "gauge transformation must be a Q/Z-valued 0-cochain".into(),
            });
        }
        Ok(GaugeTransformation { g })
    }
}

/// Gauge field on the base of an action groupoid plus Q/Z descent data on
/// level 1, satisfying delta a = d t and delta t = 0 mod Z.
#[derive(Debug, Clone)]
pub struct EquivariantGaugeField {
    pub field: GaugeField,
    pub descent: Cochain,
}

impl EquivariantGaugeField {
    pub fn new(
        nerve: &NerveLevels,
        field: GaugeField,
        descent: Cochain,
    ) -> Result<Self, ClassifyError> {
        if descent.degree != 0 || descent.ring != Ring::RatModZ {
            return Err(ClassifyError::Parse {
                line: 0,
                msg: "descent data must be a Q/Z-valued 0-cochain on level 1".into(),
            });
        }
        let delta_a = nerve.delta(&field.a, 0)?;
        let dt = coboundary(&descent)?;
        if delta_a
            .sub(&dt)
            .values
            .iter()
            .any(|v| !mod_one(v).is_zero())
        {
            return Err(ClassifyError::Parse {
                line: 0,
                msg: "descent condition delta a = d t fails".into(),
            });
        }
        let delta_t = nerve.delta(&descent, 1)?;
        if delta_t.values.iter().any(|v| !mod_one(v).is_zero()) {
            return Err(ClassifyError::Parse {
                line: 0,
                msg: "cocycle condition delta t = 0 fails".into(),
            });
        }
        Ok(EquivariantGaugeField { field, descent })
    }
}

/// Holonomy of a gauge field around a 1-cycle, canonical in [0, 1).
pub fn holonomy(field: &GaugeField, z: &Chain) -> Result<Rat, ClassifyError> {
    if !z.is_cycle() {
        return Err(ClassifyError::Parse {
            line: 0,
            msg: "holonomy needs a 1-cycle".into(),
        });
    }
    Ok(evaluate(&field.a, z)?)
}

/// a' = a + dg in Q/Z; cycle holonomies are unchanged.
pub fn gauge_act(g: &GaugeTransformation, field: &GaugeField) -> GaugeField {
    let dg = coboundary(&g.g).expect("coboundary of a 0-cochain");
    let values = field
        .a
        .values
        .iter()
        .zip(&dg.values)
        .map(|(a, d)| mod_one(&(a + d)))
        .collect();
    GaugeField {
        base: Arc::clone(&field.base),
        a: Cochain::from_values(&field.base, 1, Ring::RatModZ, values).unwrap(),
    }
}

/// Exact decision of gauge equivalence: does some transformation g satisfy
/// b = a + dg in Q/Z? Lifting to rationals with integer slack per edge turns
/// the question into one mixed solve.
pub fn gauge_equivalent(a: &GaugeField, b: &GaugeField) -> Result<bool, ClassifyError> {
    assert_eq!(a.base, b.base, "fields live on the same complex");
    let diff = b.a.sub(&a.a).with_ring(Ring::Rat)?;
    let n_edges = a.base.size(1);
    let n_vertices = a.base.size(0);
    let d0 = a.base.coboundary_matrix(0);
    // unknowns: m integral per edge, g rational per vertex; dg + m = diff
    let mut rows: Vec<(Vec<Rat>, Vec<Rat>, Rat)> = Vec::new();
    for r in 0..n_edges {
        let mut ai = vec![Rat::zero(); n_edges];
        ai[r] = Rat::from_integer(Int::from(1));
        let bi = (0..n_vertices).map(|c| rat_of(d0.at(r, c))).collect();
        rows.push((ai, bi, diff.values[r].clone()));
    }
    Ok(solve_mixed_rows(&rows, n_edges, n_vertices)?.is_some())
}

/// Choice of rational lift for Q/Z data.
pub enum LiftRule<'a> {
    /// the representative in [0, 1)
    Canonical,
    /// an explicit rational cochain congruent to the data mod Z
    Explicit(&'a Cochain),
}

fn lift_cochain(data: &Cochain, rule: &LiftRule<'_>) -> Result<Cochain, ClassifyError> {
    match rule {
        LiftRule::Canonical => Ok(data.with_ring(Ring::Rat)?),
        LiftRule::Explicit(h) => {
            if h.degree != data.degree || h.ring != Ring::Rat {
                return Err(ClassifyError::BadLift);
            }
            for (hv, av) in h.values.iter().zip(&data.values) {
                if mod_one(hv) != *av {
                    return Err(ClassifyError::BadLift);
                }
            }
            Ok((*h).clone())
        }
    }
}

/// The triple of a gauge field: h = lift(a), K = nearest_int(dh),
/// omega = dh - K, c = -K. Fails with the offending 3-simplex when the
/// rounded flux K is not closed.
pub fn dch(
    dc: &DCComplex,
    field: &GaugeField,
    rule: LiftRule<'_>,
) -> Result<DCTriple, ClassifyError> {
    assert_eq!(dc.s, 2, "the gauge triple lives in the s = 2 complex");
    let h = lift_cochain(&field.a, &rule)?;
    let dh = coboundary(&h)?;
    let k_vals: Vec<Int> = dh.values.iter().map(nearest_int).collect();
    let k = Cochain::from_values(&dc.base, 2, Ring::Int, k_vals.iter().map(rat_of).collect())?;
    if dc.base.size(3) > 0 {
        let dk = coboundary(&k)?;
        if let Some(idx) = dk.values.iter().position(|v| !v.is_zero()) {
            return Err(ClassifyError::Monopole {
                simplex: dc.base.simplex_id(3, idx).to_string(),
            });
        }
    }
    let omega = dh.sub(&k.with_ring(Ring::Rat)?);
    let c = k.neg();
    let x = dc.triple(2, c, h, Some(omega))?;
    debug_assert!(dc.is_cocycle(&x).unwrap_or(false));
    Ok(x)
}

/// Prequantization: the gauge field of a degree-2 cocycle is h mod Z.
pub fn preq(dc: &DCComplex, x: &DCTriple) -> Result<GaugeField, ClassifyError> {
    assert_eq!(dc.s, 2);
    if x.degree != 2 || !dc.is_cocycle(x)? {
        return Err(ClassifyError::NotACocycle);
    }
    let a = x.h.with_ring(Ring::RatModZ)?;
    GaugeField::new(&dc.base, a)
}

/// Morphism data of a gauge transformation: (m, -lift, -alpha) with
/// m = nearest_int(d lift) and alpha = d lift - m. The class is independent
/// of the chosen lift.
pub fn chern_morphism(
    dc1: &DCComplex,
    g: &GaugeTransformation,
    rule: LiftRule<'_>,
) -> Result<DCTriple, ClassifyError> {
    assert_eq!(dc1.s, 1, "morphism data lives in the s = 1 complex");
    let lift = lift_cochain(&g.g, &rule)?;
    let dlift = coboundary(&lift)?;
    let m_vals: Vec<Int> = dlift.values.iter().map(nearest_int).collect();
    let m = Cochain::from_values(&dc1.base, 1, Ring::Int, m_vals.iter().map(rat_of).collect())?;
    let alpha = dlift.sub(&m.with_ring(Ring::Rat)?);
    Ok(dc1.triple(1, m, lift.neg(), Some(alpha.neg()))?)
}

/// Projection of a degree-2 cocycle onto its integral component.
pub fn weil_project(x: &DCTriple) -> Cochain {
    x.c.clone()
}

/// Extend an integral 2-cocycle to a closed triple: find h with
/// dh = omega - c; the default omega is c itself, making h = 0 work.
pub fn weil_lift(
    dc1: &DCComplex,
    c: &Cochain,
    omega: Option<&Cochain>,
) -> Result<DCTriple, ClassifyError> {
    assert_eq!(dc1.s, 1);
    if c.degree != 2 || c.ring != Ring::Int || !crate::complex::is_cocycle(c) {
        return Err(ClassifyError::NotACocycle);
    }
    match omega {
        None => {
            let w = c.with_ring(Ring::Rat)?;
            Ok(dc1.triple(
                2,
                c.clone(),
                Cochain::zero(&dc1.base, 1, Ring::Rat),
                Some(w),
            )?)
        }
        Some(w) => {
            if w.degree != 2 || w.ring != Ring::Rat || !crate::complex::is_cocycle(w) {
                return Err(ClassifyError::OmegaNotCohomologous);
            }
            // solve dh = omega - c over Q
            let target = w.sub(&c.with_ring(Ring::Rat)?);
            let d1 = dc1.base.coboundary_matrix(1).to_rat();
            let h_vals = d1
                .solve(&target.values)
                .ok_or(ClassifyError::OmegaNotCohomologous)?;
            let h = Cochain::from_values(&dc1.base, 1, Ring::Rat, h_vals)?;
            Ok(dc1.triple(2, c.clone(), h, Some(w.clone()))?)
        }
    }
}

/// Primitive of an exact cocycle whose projection is db: with the rational
/// cochain model the representative of b + h is b + h itself, so
/// y = (b, 0, b + h) satisfies dy = x on the nose.
pub fn weil_injectivity_witness(
    dc1: &DCComplex,
    x: &DCTriple,
    b: &Cochain,
) -> Result<DCTriple, ClassifyError> {
    assert_eq!(dc1.s, 1);
    if !dc1.is_cocycle(x)? {
        return Err(ClassifyError::NotACocycle);
    }
    if b.degree != 1 || b.ring != Ring::Int || coboundary(b)? != x.c {
        return Err(ClassifyError::Parse {
            line: 0,
            msg: "witness needs an integral 1-cochain b with db = c".into(),
        });
    }
    let alpha = b.with_ring(Ring::Rat)?.add(&x.h);
    let y = dc1.triple(
        1,
        b.clone(),
        Cochain::zero(&dc1.base, 0, Ring::Rat),
        Some(alpha),
    )?;
    let dy = dc1.diff(&y)?;
    if &dy != x {
        return Err(ClassifyError::NoPrimitive);
    }
    Ok(y)
}

/// A total integral 2-cocycle on a nerve: components on levels 0, 1, 2.
#[derive(Debug, Clone)]
pub struct IntTotal2 {
    pub c1: Cochain,
    pub c2: Cochain,
    pub c3: Cochain,
}

impl IntTotal2 {
    pub fn is_total_cocycle(&self, nerve: &NerveLevels) -> Result<bool, ClassifyError> {
        let dc1 = coboundary(&self.c1)?;
        if !dc1.is_zero() {
            return Ok(false);
        }
        // delta c1 = d c2 at spot (2,1)
        let delta_c1 = nerve.delta(&self.c1, 0)?;
        if delta_c1 != coboundary(&self.c2)? {
            return Ok(false);
        }
        // delta c2 + d c3 = 0 at spot (1,2)
        let delta_c2 = nerve.delta(&self.c2, 1)?;
        if !delta_c2.add(&coboundary(&self.c3)?).is_zero() {
            return Ok(false);
        }
        // delta c3 = 0 at spot (0,3)
        Ok(nerve.delta(&self.c3, 2)?.is_zero())
    }
}

/// Extend an integral total 2-cocycle (c1, c2, c3) to a closed total triple
/// for s = 1, following the averaging construction: lift c1, transfer the
/// defect to level 1, and close level 2 with an averaged primitive.
pub fn equivariant_weil_lift(
    total: &DcTotalComplex<'_>,
    input: &IntTotal2,
) -> Result<Vec<(usize, DCTriple)>, ClassifyError> {
    assert_eq!(total.s, 1, "the lift targets the s = 1 total complex");
    let nerve = total.nerve;
    if !input.is_total_cocycle(nerve)? {
        return Err(ClassifyError::NotATotalCocycle);
    }
    // step 1: extend c1 to a closed triple on level 0
    let x0 = weil_lift(total.level_dc(0), &input.c1, None)?;
    // step 2: find (c2, h2', omega2') with d(c2, h2', omega2') = delta(x0);
    // omega2' = c2 + delta h1 and h2' = 0 work in the rational model
    let delta_h1 = nerve.delta(&x0.h, 0)?;
    let omega2 = input.c2.with_ring(Ring::Rat)?.add(&delta_h1);
    let h2_prime = Cochain::zero(nerve.level(1), 0, Ring::Rat);
    // step 3: c3 - delta h2' is a delta-cocycle of rationals on level 2;
    // average it down to f with delta f = c3 - delta h2'
    let delta_h2p = nerve.delta(&h2_prime, 1)?;
    let u = input.c3.with_ring(Ring::Rat)?.sub(&delta_h2p);
    let f = nerve.avg_contract(&u, 2)?;
    let h2 = h2_prime.add(&f);
    let omega2 = omega2.add(&coboundary(&f)?);
    let x1 = total
        .level_dc(1)
        .triple(1, input.c2.clone(), h2, Some(omega2))?;
    let x2 = total.level_dc(2).triple(
        0,
        input.c3.clone(),
        Cochain::zero(nerve.level(2), 0, Ring::Rat),
        None,
    )?;
    let out = vec![(0usize, x0), (1, x1), (2, x2)];
    // the construction closes the cochain exactly; verify and fail loudly
    let packed = total.pack(2, &out);
    if !total.mixed.is_cocycle(&packed) {
        return Err(ClassifyError::NoPrimitive);
    }
    Ok(out)
}

/// The curvature component of a total degree-2 cocycle for s = 2. The output
/// is closed, basic, and integral on the 2-cycle lattice; all three follow
/// from closedness of the input.
pub fn kostant_eta(
    total: &DcTotalComplex<'_>,
    x: &[(usize, DCTriple)],
) -> Result<Cochain, ClassifyError> {
    assert_eq!(total.s, 2);
    let packed = total.pack(2, x);
    if !total.mixed.is_cocycle(&packed) {
        return Err(ClassifyError::NotATotalCocycle);
    }
    let level0 = x.iter().find(|(q, _)| *q == 0);
    Ok(match level0 {
        Some((_, triple)) => triple
            .omega
            .clone()
            .unwrap_or_else(|| Cochain::zero(total.nerve.level(0), 2, Ring::Rat)),
        None => Cochain::zero(total.nerve.level(0), 2, Ring::Rat),
    })
}

/// The flat-class invariant: (h1 mod Z, h2 mod Z) for a total cocycle with
/// vanishing curvature.
pub fn kostant_kernel_witness(
    total: &DcTotalComplex<'_>,
    x: &[(usize, DCTriple)],
) -> Result<(Cochain, Cochain), ClassifyError> {
    let omega1 = kostant_eta(total, x)?;
    if !omega1.is_zero() {
        return Err(ClassifyError::CurvatureNotFlat);
    }
    let h1 = x
        .iter()
        .find(|(q, _)| *q == 0)
        .map(|(_, t)| t.h.clone())
        .unwrap_or_else(|| Cochain::zero(total.nerve.level(0), 1, Ring::Rat));
    let h2 = x
        .iter()
        .find(|(q, _)| *q == 1)
        .map(|(_, t)| t.h.clone())
        .unwrap_or_else(|| Cochain::zero(total.nerve.level(1), 0, Ring::Rat));
    Ok((h1.with_ring(Ring::RatModZ)?, h2.with_ring(Ring::RatModZ)?))
}

/// Equality of classes in the first total Q/Z cohomology: the difference
/// must be d_tot of a rational 0-cochain up to integral cochains.
pub fn qz_total_classes_equal(
    nerve: &NerveLevels,
    u: &(Cochain, Cochain),
    v: &(Cochain, Cochain),
) -> Result<bool, ClassifyError> {
    let d1 = u.0.sub(&v.0).with_ring(Ring::Rat)?;
    let d2 = u.1.sub(&v.1).with_ring(Ring::Rat)?;
    // unknowns: w rational 0-cochain on level 0; m1 integral 1-cochain on
    // level 0; m2 integral 0-cochain on level 1
    let n0 = nerve.level(0).size(0);
    let n1 = nerve.level(0).size(1);
    let n2 = nerve.level(1).size(0);
    let n_int = n1 + n2;
    let n_rat = n0;
    let dmat = nerve.level(0).coboundary_matrix(0);
    let delta_mat = nerve.delta_matrix(0, 0);
    let mut rows: Vec<(Vec<Rat>, Vec<Rat>, Rat)> = Vec::new();
    // d w + m1 = d1
    for r in 0..n1 {
        let mut ai = vec![Rat::zero(); n_int];
        ai[r] = Rat::from_integer(Int::from(1));
        let bi = (0..n0).map(|c| rat_of(dmat.at(r, c))).collect();
        rows.push((ai, bi, d1.values[r].clone()));
    }
    // delta w + m2 = d2
    for r in 0..n2 {
        let mut ai = vec![Rat::zero(); n_int];
        ai[n1 + r] = Rat::from_integer(Int::from(1));
        let bi = (0..n0).map(|c| rat_of(delta_mat.at(r, c))).collect();
        rows.push((ai, bi, d2.values[r].clone()));
    }
    Ok(solve_mixed_rows(&rows, n_int, n_rat)?.is_some())
}

/// Spanning data for the group of closed basic integral 2-cochains on the
/// base level: a lattice basis paired against the 2-cycle lattice plus a
/// basis of the period-zero subspace.
pub struct CurvatureGroup {
    pub lattice: Vec<Cochain>,
    pub subspace: Vec<Cochain>,
}

impl CurvatureGroup {
    pub fn presentation(&self) -> AbGroupPresentation {
        AbGroupPresentation {
            free_rank: self.lattice.len(),
            torsion: Vec::new(),
            divisible_rank: 0,
            rational_rank: self.subspace.len(),
        }
    }
}

/// Compute the closed basic integral 2-cochain group of a nerve.
pub fn curvature_group(nerve: &NerveLevels) -> Result<CurvatureGroup, ClassifyError> {
    let base = nerve.level(0);
    let n2 = base.size(2);
    // closed and basic: stack d and delta
    let d = base.coboundary_matrix(2).to_rat();
    let delta = nerve.delta_matrix(2, 0).to_rat();
    let stacked = RatMatrix::vstack(&d, &delta);
    let v_basis = stacked.kernel_basis();
    // periods against the 2-cycle lattice
    let cycles = cycle_basis(base, 2);
    let mut p = RatMatrix::zero(cycles.len(), v_basis.len());
    for (i, z) in cycles.iter().enumerate() {
        for (j, v) in v_basis.iter().enumerate() {
            let pairing: Rat = v.iter().zip(&z.coeffs).map(|(a, b)| a * rat_of(b)).sum();
            p.set(i, j, pairing);
        }
    }
    // period-zero subspace
    let subspace: Vec<Cochain> = p
        .kernel_basis()
        .into_iter()
        .map(|combo| {
            let mut vals = vec![Rat::zero(); n2];
            for (j, c) in combo.iter().enumerate() {
                for (i, entry) in v_basis[j].iter().enumerate() {
                    let t = &vals[i] + entry * c;
                    vals[i] = t;
                }
            }
            Cochain::from_values(base, 2, Ring::Rat, vals).unwrap()
        })
        .collect();
    // integral points of the period image: lattice basis
    let null_rows = p.left_null_basis();
    let mut cleared: Vec<Vec<Int>> = Vec::new();
    for row in &null_rows {
        let l = rat_of(&crate::scalar::denom_lcm(row));
        cleared.push(row.iter().map(|x| (x * &l).to_integer()).collect());
    }
    let mut nmat = IntMatrix::zero(cleared.len(), cycles.len());
    for (i, row) in cleared.iter().enumerate() {
        for (j, e) in row.iter().enumerate() {
            nmat.set(i, j, e.clone());
        }
    }
    let lattice_points = crate::exactalg::int_kernel_basis(&nmat);
    let mut lattice = Vec::new();
    for t in lattice_points {
        // a preimage with these periods
        let target: Vec<Rat> = t.iter().map(rat_of).collect();
        let combo = p
            .solve(&target)
            .expect("lattice point lies in the period image");
        let mut vals = vec![Rat::zero(); n2];
        for (j, c) in combo.iter().enumerate() {
            for (i, entry) in v_basis[j].iter().enumerate() {
                let tmp = &vals[i] + entry * c;
                vals[i] = tmp;
            }
        }
        lattice.push(Cochain::from_values(base, 2, Ring::Rat, vals).unwrap());
    }
    Ok(CurvatureGroup { lattice, subspace })
}

/// Construct a total degree-2 cocycle with the given curvature: solve
/// d_tot(h1, h2) = (omega, 0, 0) - (c1, c2, c3) with integral c's and
/// rational h's, then assemble ((c1, h1, omega), (c2, -h2, 0), (c3, 0, 0)).
pub fn kostant_preimage(
    total: &DcTotalComplex<'_>,
    omega: &Cochain,
) -> Result<Vec<(usize, DCTriple)>, ClassifyError> {
    assert_eq!(total.s, 2);
    let nerve = total.nerve;
    let level0 = nerve.level(0);
    let level1 = nerve.level(1);
    let level2 = nerve.level(2);
    let (e0, e1, e2) = (level0.size(1), level1.size(0), level0.size(2));
    let (f1, f2, f3) = (e2, level1.size(1), level2.size(0));
    // unknowns: int (c1 over level0 2-simplices, c2 over level1 edges,
    // c3 over level2 vertices), rat (h1 over level0 edges, h2 over level1
    // vertices)
    let n_int = e2 + f2 + f3;
    let n_rat = e0 + e1;
    let d0_1 = level0.coboundary_matrix(1);
    let delta_1_0 = nerve.delta_matrix(1, 0);
    let d1_0 = level1.coboundary_matrix(0);
    let delta_0_1 = nerve.delta_matrix(0, 1);
    let mut rows: Vec<(Vec<Rat>, Vec<Rat>, Rat)> = Vec::new();
    // d h1 + c1 = omega  (rows over level0 2-simplices)
    for r in 0..f1 {
        let mut ai = vec![Rat::zero(); n_int];
        ai[r] = Rat::from_integer(Int::from(1));
        let mut bi = vec![Rat::zero(); n_rat];
        for c in 0..e0 {
            bi[c] = rat_of(d0_1.at(r, c));
        }
        rows.push((ai, bi, omega.values[r].clone()));
    }
    // delta h1 - d h2 + c2 = 0  (rows over level1 edges)
    for r in 0..f2 {
        let mut ai = vec![Rat::zero(); n_int];
        ai[e2 + r] = Rat::from_integer(Int::from(1));
        let mut bi = vec![Rat::zero(); n_rat];
        for c in 0..e0 {
            bi[c] = rat_of(delta_1_0.at(r, c));
        }
        for c in 0..e1 {
            bi[e0 + c] = -rat_of(d1_0.at(r, c));
        }
        rows.push((ai, bi, Rat::zero()));
    }
    // delta h2 + c3 = 0  (rows over level2 vertices)
    for r in 0..f3 {
        let mut ai = vec![Rat::zero(); n_int];
        ai[e2 + f2 + r] = Rat::from_integer(Int::from(1));
        let mut bi = vec![Rat::zero(); n_rat];
        for c in 0..e1 {
            bi[e0 + c] = rat_of(delta_0_1.at(r, c));
        }
        rows.push((ai, bi, Rat::zero()));
    }
    let Some((xi, xr)) = solve_mixed_rows(&rows, n_int, n_rat)? else {
        return Err(ClassifyError::Exactness(
            "no integral total class realizes the given curvature".into(),
        ));
    };
    let c1 = Cochain::from_values(level0, 2, Ring::Int, xi[..e2].iter().map(rat_of).collect())?;
    let c2 = Cochain::from_values(
        level1,
        1,
        Ring::Int,
        xi[e2..e2 + f2].iter().map(rat_of).collect(),
    )?;
    let c3 = Cochain::from_values(
        level2,
        0,
        Ring::Int,
        xi[e2 + f2..].iter().map(rat_of).collect(),
    )?;
    let h1 = Cochain::from_values(level0, 1, Ring::Rat, xr[..e0].to_vec())?;
    let h2 = Cochain::from_values(level1, 0, Ring::Rat, xr[e0..].to_vec())?;
    let x0 = total.level_dc(0).triple(2, c1, h1, Some(omega.clone()))?;
    let x1 = total.level_dc(1).triple(1, c2, h2.neg(), None)?;
    let x2 = total
        .level_dc(2)
        .triple(0, c3, Cochain::zero(level2, 0, Ring::Rat), None)?;
    let out = vec![(0usize, x0), (1, x1), (2, x2)];
    let packed = total.pack(2, &out);
    if !total.mixed.is_cocycle(&packed) {
        return Err(ClassifyError::Exactness(
            "constructed preimage is not closed".into(),
        ));
    }
    Ok(out)
}

/// Outcome of the short-exact-sequence verification.
pub struct KostantReport {
    pub kernel_presentation: AbGroupPresentation,
    pub qz_presentation: AbGroupPresentation,
    pub curvature_presentation: AbGroupPresentation,
    pub h2_presentation: AbGroupPresentation,
    pub eta_preimages: usize,
    pub sampled_kernel_pairs: usize,
}

/// Verify exactness of 0 -> H^1_tot(Q/Z) -> H^2_tot -> curvatures -> 0 on a
/// nerve: eta hits a spanning set of the curvature group, and the flat
/// classes match the Q/Z cohomology at presentation level and on sampled
/// pairs.
pub fn kostant_sequence_check(
    nerve: &NerveLevels,
    samples: usize,
) -> Result<KostantReport, ClassifyError> {
    if nerve.depth < 3 {
        return Err(ClassifyError::Nerve(NerveError::Depth {
            depth: nerve.depth,
            need: 3,
        }));
    }
    let total = DcTotalComplex::new(nerve, 2, 3)?;
    // kernel of eta at presentation level: the flat total complex is the
    // s -> infinity truncation (no omega slot anywhere)
    let flat = DcTotalComplex::new(nerve, usize::MAX, 3)?;
    let kernel_presentation = flat
        .mixed
        .cohomology(2)
        .map_err(|e| ClassifyError::Alg(e))?;
    let int_total = crate::nerve::TotalComplex::new(nerve, Ring::Int, 3)?;
    let qz_presentation = int_total.cohomology(1, Ring::RatModZ)?;
    if kernel_presentation != qz_presentation {
        return Err(ClassifyError::Exactness(format!(
            "kernel {kernel_presentation} differs from H^1_tot(Q/Z) {qz_presentation}"
        )));
    }
    let h2_presentation = total.mixed.cohomology(2).map_err(ClassifyError::Alg)?;

    // eta surjectivity: a preimage for every spanning element
    let curv = curvature_group(nerve)?;
    let mut eta_preimages = 0;
    for omega in curv.lattice.iter().chain(&curv.subspace) {
        let x = kostant_preimage(&total, omega)?;
        let back = kostant_eta(&total, &x)?;
        if &back != omega {
            return Err(ClassifyError::Exactness("eta round trip failed".into()));
        }
        eta_preimages += 1;
    }

    // sampled kernel pairs: witness classes equal iff isomorphic in H^2
    let cat = total.category(2)?;
    let (lat, sub) = flat.mixed.kernel_generators(2);
    let mut sampled = Vec::new();
    for (i, g) in lat.iter().chain(sub.iter()).enumerate() {
        if sampled.len() >= samples {
            break;
        }
        let _ = i;
        sampled.push(g.clone());
    }
    let mut sampled_kernel_pairs = 0;
    for a in &sampled {
        for b in &sampled {
            let flat_a = flat.unpack(a);
            let flat_b = flat.unpack(b);
            let xa = flat_to_s2(&total, &flat_a)?;
            let xb = flat_to_s2(&total, &flat_b)?;
            let wa = kostant_kernel_witness(&total, &xa)?;
            let wb = kostant_kernel_witness(&total, &xb)?;
            let classes_equal = qz_total_classes_equal(nerve, &wa, &wb)?;
            let oa = cat.object(total.pack(2, &xa)).map_err(DcError::from)?;
            let ob = cat.object(total.pack(2, &xb)).map_err(DcError::from)?;
            let isomorphic = cat.hom_exists(&oa, &ob).map_err(DcError::from)?.is_some();
            if classes_equal != isomorphic {
                return Err(ClassifyError::Exactness(
                    "witness map is not a bijection on sampled flat classes".into(),
                ));
            }
            sampled_kernel_pairs += 1;
        }
    }
    Ok(KostantReport {
        kernel_presentation,
        qz_presentation,
        curvature_presentation: curv.presentation(),
        h2_presentation,
        eta_preimages,
        sampled_kernel_pairs,
    })
}

/// Reinterpret flat components (no omega slots) inside the s = 2 complex.
fn flat_to_s2(
    total: &DcTotalComplex<'_>,
    flat: &[(usize, DCTriple)],
) -> Result<Vec<(usize, DCTriple)>, ClassifyError> {
    let mut out = Vec::new();
    for (q, t) in flat {
        let dc = total.level_dc(*q);
        let omega = if t.degree >= total.s {
            Some(Cochain::zero(total.nerve.level(*q), t.degree, Ring::Rat))
        } else {
            None
        };
        out.push((*q, dc.triple(t.degree, t.c.clone(), t.h.clone(), omega)?));
    }
    Ok(out)
}

/// Parse the gauge-field text format: a `gauge` header, then
/// `<edge_id> = <rational>` lines; an optional `descent` block with
/// `<level-1 vertex id> = <rational>` lines for equivariant data.
pub fn parse_gauge(
    text: &str,
    base: &Arc<DeltaComplex>,
) -> Result<(GaugeField, Option<Vec<(String, Rat)>>), ClassifyError> {
    let mut saw_header = false;
    let mut in_descent = false;
    let mut values = vec![Rat::zero(); base.size(1)];
    let mut descent: Vec<(String, Rat)> = Vec::new();
    let mut any_descent = false;
    for (lineno, raw) in text.lines().enumerate() {
        let line = crate::complex::strip_comment(raw).trim().to_string();
        if line.is_empty() {
            continue;
        }
        let err = |msg: String| ClassifyError::Parse {
            line: lineno + 1,
            msg,
        };
        if line == "gauge" {
            saw_header = true;
            in_descent = false;
            continue;
        }
        if line == "descent" {
            in_descent = true;
            any_descent = true;
            continue;
        }
        if !saw_header {
            return Err(err("expected `gauge` header".into()));
        }
        let (id, val) = line
            .split_once('=')
            .ok_or_else(|| err("expected `<id> = <rational>`".into()))?;
        let id = id.trim();
        let v = crate::complex::parse_rational(val.trim())
            .ok_or_else(|| err(format!("bad rational `{}`", val.trim())))?;
        if in_descent {
            descent.push((id.to_string(), v));
        } else {
            let (dim, idx) = base
                .lookup(id)
                .ok_or_else(|| err(format!("unknown simplex `{id}`")))?;
            if dim != 1 {
                return Err(err(format!("`{id}` is not an edge")));
            }
            values[idx] = mod_one(&v);
        }
    }
    if !saw_header {
        return Err(ClassifyError::Parse {
            line: 1,
            msg: "missing `gauge` header".into(),
        });
    }
    let field = GaugeField::new(base, Cochain::from_values(base, 1, Ring::RatModZ, values)?)?;
    Ok((field, if any_descent { Some(descent) } else { None }))
}

pub fn serialize_gauge(field: &GaugeField) -> String {
    let mut out = String::from("gauge\n");
    for (idx, v) in field.a.values.iter().enumerate() {
        if !v.is_zero() {
            out.push_str(&format!("{} = {}\n", field.base.simplex_id(1, idx), v));
        }
    }
    out
}

#[cfg(test)]
mod tests;

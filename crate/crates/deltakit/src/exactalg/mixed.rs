//! Cochain complexes of mixed Z/Q modules and their cohomology presentations.
//!
//! Each degree is Z^a (+) Q^b. Differentials never map rational coordinates
//! to integer ones, so they are block matrices
//!     (x, y) |-> (A x, B x + C y)
//! with A integral and B, C rational. Coboundary complexes over Z or Q, the
//! (c, h, omega) complexes, and total complexes over groupoid nerves all fit
//! this shape.

use super::{
    int_kernel_basis, int_solve, solve_mixed, AbGroupPresentation, AlgError, IntMatrix, RatMatrix,
};
use crate::scalar::{denom_lcm, rat_of, Int, Rat};
use num_traits::Zero;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MixedModule {
    pub int_rank: usize,
    pub rat_rank: usize,
}

impl MixedModule {
    pub fn zero() -> Self {
        MixedModule {
            int_rank: 0,
            rat_rank: 0,
        }
    }
}

/// Element of Z^a (+) Q^b in a fixed degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MixedVec {
    pub degree: usize,
    pub int_part: Vec<Int>,
    pub rat_part: Vec<Rat>,
}

impl MixedVec {
    pub fn zero(degree: usize, module: MixedModule) -> Self {
        MixedVec {
            degree,
            int_part: vec![Int::zero(); module.int_rank],
            rat_part: vec![Rat::zero(); module.rat_rank],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.int_part.iter().all(|x| x.is_zero()) && self.rat_part.iter().all(|x| x.is_zero())
    }

    pub fn add(&self, other: &MixedVec) -> MixedVec {
        assert_eq!(self.degree, other.degree, "degree mismatch");
        MixedVec {
            degree: self.degree,
            int_part: self
                .int_part
                .iter()
                .zip(&other.int_part)
                .map(|(a, b)| a + b)
                .collect(),
            rat_part: self
                .rat_part
                .iter()
                .zip(&other.rat_part)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &MixedVec) -> MixedVec {
        assert_eq!(self.degree, other.degree, "degree mismatch");
        MixedVec {
            degree: self.degree,
            int_part: self
                .int_part
                .iter()
                .zip(&other.int_part)
                .map(|(a, b)| a - b)
                .collect(),
            rat_part: self
                .rat_part
                .iter()
                .zip(&other.rat_part)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn neg(&self) -> MixedVec {
        MixedVec {
            degree: self.degree,
            int_part: self.int_part.iter().map(|x| -x.clone()).collect(),
            rat_part: self.rat_part.iter().map(|x| -x.clone()).collect(),
        }
    }

    pub fn scale_int(&self, k: &Int) -> MixedVec {
        MixedVec {
            degree: self.degree,
            int_part: self.int_part.iter().map(|x| x * k).collect(),
            rat_part: self.rat_part.iter().map(|x| x * rat_of(k)).collect(),
        }
    }
}

/// One differential of a mixed complex, degree n -> n+1.
#[derive(Debug, Clone)]
pub struct MixedDiff {
    /// integer block Z^a_n -> Z^a_{n+1}
    pub a: IntMatrix,
    /// mixing block Z^a_n -> Q^b_{n+1}
    pub b: RatMatrix,
    /// rational block Q^b_n -> Q^b_{n+1}
    pub c: RatMatrix,
}

impl MixedDiff {
    pub fn zero(from: MixedModule, to: MixedModule) -> Self {
        MixedDiff {
            a: IntMatrix::zero(to.int_rank, from.int_rank),
            b: RatMatrix::zero(to.rat_rank, from.int_rank),
            c: RatMatrix::zero(to.rat_rank, from.rat_rank),
        }
    }

    pub fn apply(&self, v: &MixedVec) -> (Vec<Int>, Vec<Rat>) {
        let int_out = self.a.mul_vec(&v.int_part);
        let v_int_rat: Vec<Rat> = v.int_part.iter().map(rat_of).collect();
        let bx = self.b.mul_vec(&v_int_rat);
        let cy = self.c.mul_vec(&v.rat_part);
        let rat_out = bx.iter().zip(&cy).map(|(p, q)| p + q).collect();
        (int_out, rat_out)
    }
}

/// Bounded cochain complex of mixed modules, degrees 0..=top.
#[derive(Debug, Clone)]
pub struct MixedComplex {
    pub modules: Vec<MixedModule>,
    /// diffs[n] : degree n -> degree n+1; length modules.len() - 1
    pub diffs: Vec<MixedDiff>,
}

impl MixedComplex {
    pub fn top_degree(&self) -> usize {
        self.modules.len().saturating_sub(1)
    }

    pub fn module(&self, n: usize) -> MixedModule {
        self.modules
            .get(n)
            .copied()
            .unwrap_or_else(MixedModule::zero)
    }

    pub fn diff_at(&self, n: usize) -> MixedDiff {
        if n < self.diffs.len() {
            self.diffs[n].clone()
        } else {
            MixedDiff::zero(self.module(n), self.module(n + 1))
        }
    }

    pub fn apply_d(&self, v: &MixedVec) -> MixedVec {
        let d = self.diff_at(v.degree);
        let (int_part, rat_part) = d.apply(v);
        MixedVec {
            degree: v.degree + 1,
            int_part,
            rat_part,
        }
    }

    pub fn is_cocycle(&self, v: &MixedVec) -> bool {
        self.apply_d(v).is_zero()
    }

    /// d o d = 0 at every degree, exactly.
    pub fn validate(&self) -> Result<(), AlgError> {
        for n in 0..self.diffs.len() {
            let d0 = self.diff_at(n);
            let d1 = self.diff_at(n + 1);
            if !d1.a.mul(&d0.a).is_zero() {
                return Err(AlgError::CompositionNotZero);
            }
            // rational block of d1 d0 on integer generators: B1 A0 + C1 B0
            let b1a0 = d1.b.mul(&d0.a.to_rat());
            let c1b0 = d1.c.mul(&d0.b);
            for r in 0..b1a0.rows {
                for c in 0..b1a0.cols {
                    if !(b1a0.at(r, c) + c1b0.at(r, c)).is_zero() {
                        return Err(AlgError::CompositionNotZero);
                    }
                }
            }
            if !d1.c.mul(&d0.c).is_zero() {
                return Err(AlgError::CompositionNotZero);
            }
        }
        Ok(())
    }

    /// Generators of the kernel of d at degree n: a saturated list of lattice
    /// generators plus a basis of the rational kernel subspace. Every kernel
    /// element is an integer combination of the former plus a rational
    /// combination of the latter.
    pub fn kernel_generators(&self, n: usize) -> (Vec<MixedVec>, Vec<MixedVec>) {
        mixed_kernel(&self.diff_at(n), n, self.module(n))
    }

    /// The rational subspace part of the image of d_{n-1}: a basis of
    /// im(C_{n-1}) inside Q^{b_n}. Together with the lattice generated by the
    /// images of the integer generators this spans the image subgroup.
    pub fn image_subspace(&self, n: usize) -> Vec<Vec<Rat>> {
        if n == 0 {
            return Vec::new();
        }
        let d = self.diff_at(n - 1);
        let mut tmp = d.c.clone();
        let col_pivots = tmp.rref();
        col_pivots.iter().map(|&j| d.c.column(j)).collect()
    }

    /// Integer-generator images under d_{n-1}: d(e_j) for each integer basis
    /// vector of degree n-1.
    pub fn image_lattice_generators(&self, n: usize) -> Vec<MixedVec> {
        if n == 0 {
            return Vec::new();
        }
        let prev = self.module(n - 1);
        let d = self.diff_at(n - 1);
        (0..prev.int_rank)
            .map(|j| MixedVec {
                degree: n,
                int_part: d.a.column(j),
                rat_part: d.b.column(j),
            })
            .collect()
    }

    /// Does target - source = d(something)? Exact decision via solve_mixed.
    pub fn is_coboundary(&self, v: &MixedVec) -> Result<Option<MixedVec>, AlgError> {
        let n = v.degree;
        if n == 0 {
            return Ok(if v.is_zero() {
                Some(MixedVec::zero(0, MixedModule::zero()))
            } else {
                None
            });
        }
        let prev = self.module(n - 1);
        let d = self.diff_at(n - 1);
        let cur = self.module(n);
        // unknowns: x in Z^{prev.int}, y in Q^{prev.rat}
        // equations: A x = v_int ; B x + C y = v_rat
        let mut a = IntMatrix::zero(cur.int_rank + cur.rat_rank, prev.int_rank);
        for r in 0..cur.int_rank {
            for c in 0..prev.int_rank {
                a.set(r, c, d.a.at(r, c).clone());
            }
        }
        let mut b = RatMatrix::zero(cur.int_rank + cur.rat_rank, prev.rat_rank);
        let mut v_full = vec![Rat::zero(); cur.int_rank + cur.rat_rank];
        for r in 0..cur.int_rank {
            v_full[r] = rat_of(&v.int_part[r]);
        }
        for r in 0..cur.rat_rank {
            v_full[cur.int_rank + r] = v.rat_part[r].clone();
        }
        // B block sits under A in mixed coordinates; but B maps integers to
        // rationals, so it contributes integer-unknown columns with rational
        // entries. solve_mixed only takes an integer matrix for integer
        // unknowns, so clear denominators by scaling those equations.
        // Simpler: move B into the integer matrix after scaling each row.
        // Rows r (rational equations): (B x)_r + (C y)_r = v_r. Scale row by
        // the lcm of denominators in B's row; the unknown x stays integral,
        // coefficients become integers, C and v scale along.
        for r in 0..cur.rat_rank {
            let row: Vec<Rat> = (0..prev.int_rank).map(|c| d.b.at(r, c).clone()).collect();
            let l = denom_lcm(&row);
            let lr = rat_of(&l);
            for c in 0..prev.int_rank {
                a.set(cur.int_rank + r, c, (d.b.at(r, c) * &lr).to_integer());
            }
            for c in 0..prev.rat_rank {
                b.set(cur.int_rank + r, c, d.c.at(r, c) * &lr);
            }
            let scaled = &v_full[cur.int_rank + r] * &lr;
            v_full[cur.int_rank + r] = scaled;
        }
        match solve_mixed(&a, &b, &v_full)? {
            None => Ok(None),
            Some((x, y)) => Ok(Some(MixedVec {
                degree: n - 1,
                int_part: x,
                rat_part: y,
            })),
        }
    }

    /// Presentation of H^n as an abelian group.
    pub fn cohomology(&self, n: usize) -> Result<AbGroupPresentation, AlgError> {
        let (lattice, subspace) = self.kernel_generators(n);
        let k = lattice.len();
        let module = self.module(n);

        // subspace of the kernel: V_K; subspace part of the image: V_I
        let v_k: Vec<Vec<Rat>> = subspace.iter().map(|v| v.rat_part.clone()).collect();
        let v_i = self.image_subspace(n);
        // coordinates on V_K / V_I: extend a basis of V_I by members of V_K
        let mut span = v_i.clone();
        let mut quotient_basis: Vec<Vec<Rat>> = Vec::new();
        for v in &v_k {
            let m = RatMatrix::from_columns(&span, module.rat_rank);
            if !m.in_column_span(v) {
                span.push(v.clone());
                quotient_basis.push(v.clone());
            }
        }
        let w = quotient_basis.len();
        // full coordinate solve: express y in basis (V_I | quotient_basis),
        // keep only the quotient coordinates
        let full = RatMatrix::from_columns(&span, module.rat_rank);
        let theta = |y: &[Rat]| -> Vec<Rat> {
            if w == 0 {
                return Vec::new();
            }
            let coords = full
                .solve(y)
                .expect("kernel vector must lie in V_I + quotient span");
            coords[v_i.len()..].to_vec()
        };

        // relations: images of integer generators, decomposed over the
        // lattice section and the quotient coordinates
        let lattice_x: Vec<Vec<Int>> = lattice.iter().map(|v| v.int_part.clone()).collect();
        let mut lat_mat = IntMatrix::zero(module.int_rank, k);
        for (j, x) in lattice_x.iter().enumerate() {
            for i in 0..module.int_rank {
                lat_mat.set(i, j, x[i].clone());
            }
        }
        let mut n_rel: Vec<Vec<Int>> = Vec::new();
        let mut q_rel: Vec<Vec<Rat>> = Vec::new();
        for g in self.image_lattice_generators(n) {
            let coords = int_solve(&lat_mat, &g.int_part)
                .expect("image lattice vector decomposes over the saturated kernel lattice");
            // y residue after subtracting the section
            let mut resid = g.rat_part.clone();
            for (i, c) in coords.iter().enumerate() {
                for (r, y) in lattice[i].rat_part.iter().enumerate() {
                    let v = &resid[r] - y * rat_of(c);
                    resid[r] = v;
                }
            }
            n_rel.push(coords);
            q_rel.push(theta(&resid));
        }

        // Z^k / span{n_rel} gives free rank and finite torsion
        let base = super::lattice_quotient(k, &n_rel);

        // divisible rank: rank of { sum c_j q_j : sum c_j n_j = 0 }
        let mut n_mat = IntMatrix::zero(k, n_rel.len());
        for (j, nr) in n_rel.iter().enumerate() {
            for i in 0..k {
                n_mat.set(i, j, nr[i].clone());
            }
        }
        let combos = int_kernel_basis(&n_mat);
        let mut lambda0: Vec<Vec<Rat>> = Vec::new();
        for combo in combos {
            let mut v = vec![Rat::zero(); w];
            for (j, c) in combo.iter().enumerate() {
                for i in 0..w {
                    let t = &v[i] + &q_rel[j][i] * rat_of(c);
                    v[i] = t;
                }
            }
            lambda0.push(v);
        }
        let rho = if w == 0 {
            0
        } else {
            RatMatrix::from_columns(&lambda0, w).rank()
        };

        Ok(AbGroupPresentation {
            free_rank: base.free_rank,
            torsion: base.torsion,
            divisible_rank: rho,
            rational_rank: w - rho,
        })
    }
}

/// Chain map between mixed complexes, given per degree by the same block
/// shape as a differential.
#[derive(Debug, Clone)]
pub struct MixedMap {
    pub blocks: Vec<MixedDiff>,
}

impl MixedMap {
    pub fn identity(complex: &MixedComplex) -> MixedMap {
        let blocks = complex
            .modules
            .iter()
            .map(|m| MixedDiff {
                a: IntMatrix::identity(m.int_rank),
                b: RatMatrix::zero(m.rat_rank, m.int_rank),
                c: RatMatrix::identity(m.rat_rank),
            })
            .collect();
        MixedMap { blocks }
    }

    pub fn apply(&self, v: &MixedVec) -> MixedVec {
        let block = &self.blocks[v.degree];
        let (int_part, rat_part) = block.apply(v);
        MixedVec {
            degree: v.degree,
            int_part,
            rat_part,
        }
    }

    /// phi d = d phi in every degree, exactly.
    pub fn commutes(&self, source: &MixedComplex, target: &MixedComplex) -> bool {
        for n in 0..source.diffs.len() {
            if n + 1 >= self.blocks.len() {
                return false;
            }
            let ds = source.diff_at(n);
            let dt = target.diff_at(n);
            let phi_n = &self.blocks[n];
            let phi_n1 = &self.blocks[n + 1];
            // integer block: phi_{n+1}.a ds.a = dt.a phi_n.a
            if phi_n1.a.mul(&ds.a) != dt.a.mul(&phi_n.a) {
                return false;
            }
            // rational-on-integer block:
            // phi_{n+1}.b ds.a + phi_{n+1}.c ds.b = dt.b phi_n.a + dt.c phi_n.b
            let lhs = add_rat(&phi_n1.b.mul(&ds.a.to_rat()), &phi_n1.c.mul(&ds.b));
            let rhs = add_rat(&dt.b.mul(&phi_n.a.to_rat()), &dt.c.mul(&phi_n.b));
            if lhs != rhs {
                return false;
            }
            // rational block: phi_{n+1}.c ds.c = dt.c phi_n.c
            if phi_n1.c.mul(&ds.c) != dt.c.mul(&phi_n.c) {
                return false;
            }
        }
        true
    }
}

fn add_rat(a: &RatMatrix, b: &RatMatrix) -> RatMatrix {
    assert_eq!((a.rows, a.cols), (b.rows, b.cols));
    let mut out = RatMatrix::zero(a.rows, a.cols);
    for r in 0..a.rows {
        for c in 0..a.cols {
            out.set(r, c, a.at(r, c) + b.at(r, c));
        }
    }
    out
}

/// Kernel generators of a block map (x, y) -> (A x, B x + C y) on
/// Z^a (+) Q^b: a saturated lattice basis with rational sections, plus a
/// basis of the rational kernel subspace.
pub fn mixed_kernel(
    d: &MixedDiff,
    degree: usize,
    domain: MixedModule,
) -> (Vec<MixedVec>, Vec<MixedVec>) {
    let subspace: Vec<MixedVec> =
        d.c.kernel_basis()
            .into_iter()
            .map(|y| MixedVec {
                degree,
                int_part: vec![Int::zero(); domain.int_rank],
                rat_part: y,
            })
            .collect();
    // lattice part: x with A x = 0 and B x in im C
    let n_rows = d.c.left_null_basis();
    let mut stacked_rows: Vec<Vec<Int>> = Vec::new();
    for r in 0..d.a.rows {
        stacked_rows.push((0..d.a.cols).map(|c| d.a.at(r, c).clone()).collect());
    }
    for nr in &n_rows {
        // (n . B) x = 0, cleared of denominators
        let nb: Vec<Rat> = (0..d.b.cols)
            .map(|j| (0..d.b.rows).map(|i| &nr[i] * d.b.at(i, j)).sum())
            .collect();
        let l = rat_of(&denom_lcm(&nb));
        stacked_rows.push(nb.iter().map(|x| (x * &l).to_integer()).collect());
    }
    let mut stacked = IntMatrix::zero(stacked_rows.len(), domain.int_rank);
    for (i, row) in stacked_rows.iter().enumerate() {
        for (j, e) in row.iter().enumerate() {
            stacked.set(i, j, e.clone());
        }
    }
    let lattice_x = int_kernel_basis(&stacked);
    let mut lattice = Vec::new();
    for x in lattice_x {
        let xr: Vec<Rat> = x.iter().map(rat_of).collect();
        let bx = d.b.mul_vec(&xr);
        let neg_bx: Vec<Rat> = bx.iter().map(|v| -v.clone()).collect();
        let y =
            d.c.solve(&neg_bx)
                .expect("B x lies in im C by construction of the lattice");
        lattice.push(MixedVec {
            degree,
            int_part: x,
            rat_part: y,
        });
    }
    (lattice, subspace)
}

fn span_contains(basis: &[Vec<Rat>], v: &[Rat]) -> bool {
    if v.iter().all(|x| x.is_zero()) {
        return true;
    }
    if basis.is_empty() {
        return false;
    }
    RatMatrix::from_columns(basis, v.len()).in_column_span(v)
}

/// Is the induced map on H^k injective? Exact decision: the subgroup
/// { z in ker d_src : phi(z) in im d_tgt } must be contained in im d_src.
pub fn h_map_injective(
    src: &MixedComplex,
    tgt: &MixedComplex,
    phi: &MixedMap,
    k: usize,
) -> Result<bool, AlgError> {
    let (l_a, v_a) = src.kernel_generators(k);
    let lambda = tgt.image_lattice_generators(k);
    let w_b = tgt.image_subspace(k);
    let tgt_mod = tgt.module(k);

    // joint unknowns: int (x over l_a, m over lambda), rat (r over v_a, w over w_b)
    let n_int = l_a.len() + lambda.len();
    let n_rat = v_a.len() + w_b.len();
    let mut a = IntMatrix::zero(tgt_mod.int_rank, n_int);
    let mut b = RatMatrix::zero(tgt_mod.rat_rank, n_int);
    let mut c = RatMatrix::zero(tgt_mod.rat_rank, n_rat);
    for (j, l) in l_a.iter().enumerate() {
        let img = phi.apply(l);
        for r in 0..tgt_mod.int_rank {
            a.set(r, j, img.int_part[r].clone());
        }
        for r in 0..tgt_mod.rat_rank {
            b.set(r, j, img.rat_part[r].clone());
        }
    }
    for (j, lam) in lambda.iter().enumerate() {
        for r in 0..tgt_mod.int_rank {
            a.set(r, l_a.len() + j, -lam.int_part[r].clone());
        }
        for r in 0..tgt_mod.rat_rank {
            b.set(r, l_a.len() + j, -lam.rat_part[r].clone());
        }
    }
    for (j, v) in v_a.iter().enumerate() {
        let img = phi.apply(v);
        debug_assert!(img.int_part.iter().all(|x| x.is_zero()));
        for r in 0..tgt_mod.rat_rank {
            c.set(r, j, img.rat_part[r].clone());
        }
    }
    for (j, w) in w_b.iter().enumerate() {
        for r in 0..tgt_mod.rat_rank {
            c.set(r, v_a.len() + j, -w[r].clone());
        }
    }
    let joint = MixedDiff { a, b, c };
    let domain = MixedModule {
        int_rank: n_int,
        rat_rank: n_rat,
    };
    let (lat, sub) = mixed_kernel(&joint, k, domain);

    let src_mod = src.module(k);
    let w_a = src.image_subspace(k);
    for gen in &lat {
        // project to z = sum x_i l_i + sum r_j v_j
        let mut z = MixedVec::zero(k, src_mod);
        for (i, l) in l_a.iter().enumerate() {
            z = z.add(&l.scale_int(&gen.int_part[i]));
        }
        for (j, v) in v_a.iter().enumerate() {
            for (r, y) in v.rat_part.iter().enumerate() {
                let t = &z.rat_part[r] + y * &gen.rat_part[j];
                z.rat_part[r] = t;
            }
        }
        if src.is_coboundary(&z)?.is_none() {
            return Ok(false);
        }
    }
    for gen in &sub {
        let mut zr = vec![Rat::zero(); src_mod.rat_rank];
        for (j, v) in v_a.iter().enumerate() {
            for (r, y) in v.rat_part.iter().enumerate() {
                let t = &zr[r] + y * &gen.rat_part[j];
                zr[r] = t;
            }
        }
        if !span_contains(&w_a, &zr) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Is the induced map on H^k surjective? Exact decision: every kernel
/// generator of the target is phi(cocycle) plus a coboundary.
pub fn h_map_surjective(
    src: &MixedComplex,
    tgt: &MixedComplex,
    phi: &MixedMap,
    k: usize,
) -> Result<bool, AlgError> {
    let (l_b, v_b) = tgt.kernel_generators(k);
    let src_k = src.module(k);
    let tgt_prev = if k == 0 {
        MixedModule::zero()
    } else {
        tgt.module(k - 1)
    };
    let d_src = src.diff_at(k);
    let d_tgt_prev = if k == 0 {
        MixedDiff::zero(MixedModule::zero(), tgt.module(0))
    } else {
        tgt.diff_at(k - 1)
    };
    let src_next = src.module(k + 1);
    let tgt_k = tgt.module(k);
    let phi_k = &phi.blocks[k];

    for g in &l_b {
        // unknowns: z in M_src(k), u in M_tgt(k-1)
        let n_int = src_k.int_rank + tgt_prev.int_rank;
        let n_rat = src_k.rat_rank + tgt_prev.rat_rank;
        let mut rows: Vec<(Vec<Rat>, Vec<Rat>, Rat)> = Vec::new();
        // d_src z = 0
        for r in 0..src_next.int_rank {
            let mut ai = vec![Rat::zero(); n_int];
            for cidx in 0..src_k.int_rank {
                ai[cidx] = rat_of(d_src.a.at(r, cidx));
            }
            rows.push((ai, vec![Rat::zero(); n_rat], Rat::zero()));
        }
        for r in 0..src_next.rat_rank {
            let mut ai = vec![Rat::zero(); n_int];
            let mut bi = vec![Rat::zero(); n_rat];
            for cidx in 0..src_k.int_rank {
                ai[cidx] = d_src.b.at(r, cidx).clone();
            }
            for cidx in 0..src_k.rat_rank {
                bi[cidx] = d_src.c.at(r, cidx).clone();
            }
            rows.push((ai, bi, Rat::zero()));
        }
        // phi z + d_tgt u = g
        for r in 0..tgt_k.int_rank {
            let mut ai = vec![Rat::zero(); n_int];
            for cidx in 0..src_k.int_rank {
                ai[cidx] = rat_of(phi_k.a.at(r, cidx));
            }
            for cidx in 0..tgt_prev.int_rank {
                ai[src_k.int_rank + cidx] = rat_of(d_tgt_prev.a.at(r, cidx));
            }
            rows.push((ai, vec![Rat::zero(); n_rat], rat_of(&g.int_part[r])));
        }
        for r in 0..tgt_k.rat_rank {
            let mut ai = vec![Rat::zero(); n_int];
            let mut bi = vec![Rat::zero(); n_rat];
            for cidx in 0..src_k.int_rank {
                ai[cidx] = phi_k.b.at(r, cidx).clone();
            }
            for cidx in 0..tgt_prev.int_rank {
                ai[src_k.int_rank + cidx] = d_tgt_prev.b.at(r, cidx).clone();
            }
            for cidx in 0..src_k.rat_rank {
                bi[cidx] = phi_k.c.at(r, cidx).clone();
            }
            for cidx in 0..tgt_prev.rat_rank {
                bi[src_k.rat_rank + cidx] = d_tgt_prev.c.at(r, cidx).clone();
            }
            rows.push((ai, bi, g.rat_part[r].clone()));
        }
        if super::solve_mixed_rows(&rows, n_int, n_rat)?.is_none() {
            return Ok(false);
        }
    }
    // subspace generators: must lie in phi(kernel subspace) + image subspace
    let (_, v_a) = src.kernel_generators(k);
    let mut reach: Vec<Vec<Rat>> = tgt.image_subspace(k);
    for v in &v_a {
        reach.push(phi.apply(v).rat_part);
    }
    for v in &v_b {
        if !span_contains(&reach, &v.rat_part) {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn h_map_bijective(
    src: &MixedComplex,
    tgt: &MixedComplex,
    phi: &MixedMap,
    k: usize,
) -> Result<bool, AlgError> {
    Ok(h_map_injective(src, tgt, phi, k)? && h_map_surjective(src, tgt, phi, k)?)
}

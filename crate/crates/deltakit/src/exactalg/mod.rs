//! Exact integer and rational linear algebra.
//!
//! Smith normal form over the integers, rational Gaussian elimination,
//! mixed integer/rational linear systems, and abelian-group presentations
//! of cohomology computed from coboundary matrices.

pub mod mixed;

use crate::scalar::{denom_lcm, rat_of, Int, Rat};
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};
use std::fmt;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum AlgError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("composition of differentials is not zero")]
    CompositionNotZero,
}

/// Dense integer matrix, row-major, arbitrary precision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    entries: Vec<Int>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![Int::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = Int::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = Self::zero(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, v) in row.iter().enumerate() {
                *m.at_mut(i, j) = Int::from(*v);
            }
        }
        m
    }

    pub fn at(&self, r: usize, c: usize) -> &Int {
        &self.entries[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut Int {
        &mut self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Int) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zero(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.at(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "matrix product shape");
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a * other.at(k, j);
                    *out.at_mut(i, j) += prod;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Int]) -> Vec<Int> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape");
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.at(i, j) * &v[j]).sum())
            .collect()
    }

    pub fn column(&self, j: usize) -> Vec<Int> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn to_rat(&self) -> RatMatrix {
        let mut m = RatMatrix::zero(self.rows, self.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.set(r, c, rat_of(self.at(r, c)));
            }
        }
        m
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.entries.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    /// row[dst] += k * row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: &Int) {
        if k.is_zero() {
            return;
        }
        for c in 0..self.cols {
            let v = k * self.at(src, c);
            *self.at_mut(dst, c) += v;
        }
    }

    /// col[dst] += k * col[src]
    fn add_col(&mut self, dst: usize, src: usize, k: &Int) {
        if k.is_zero() {
            return;
        }
        for r in 0..self.rows {
            let v = k * self.at(r, src);
            *self.at_mut(r, dst) += v;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let v = -self.at(r, c).clone();
            self.set(r, c, v);
        }
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Int {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Int::one();
        }
        let mut m = self.clone();
        let mut sign = Int::one();
        let mut prev = Int::one();
        for k in 0..n - 1 {
            if m.at(k, k).is_zero() {
                let swap = (k + 1..n).find(|&i| !m.at(i, k).is_zero());
                match swap {
                    Some(i) => {
                        m.swap_rows(i, k);
                        sign = -sign;
                    }
                    None => return Int::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (m.at(k, k) * m.at(i, j) - m.at(i, k) * m.at(k, j)) / &prev;
                    m.set(i, j, v);
                }
                m.set(i, k, Int::zero());
            }
            prev = m.at(k, k).clone();
        }
        sign * m.at(n - 1, n - 1).clone()
    }
}

/// Dense rational matrix, row-major, entries kept canonical by BigRational.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatMatrix {
    pub rows: usize,
    pub cols: usize,
    entries: Vec<Rat>,
}

impl RatMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            entries: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    pub fn from_rows_i64(rows: Vec<Vec<(i64, i64)>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = Self::zero(r, c);
        for (i, row) in rows.iter().enumerate() {
            for (j, (p, q)) in row.iter().enumerate() {
                m.set(i, j, Rat::new(Int::from(*p), Int::from(*q)));
            }
        }
        m
    }

    pub fn at(&self, r: usize, c: usize) -> &Rat {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rat) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.rows, "matrix product shape");
        let mut out = RatMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.at(i, j) + a * other.at(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape");
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.at(i, j) * &v[j]).sum())
            .collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zero(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.at(r, c).clone());
            }
        }
        t
    }

    pub fn column(&self, j: usize) -> Vec<Rat> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    /// Stack two matrices vertically.
    pub fn vstack(top: &RatMatrix, bottom: &RatMatrix) -> RatMatrix {
        assert_eq!(top.cols, bottom.cols, "vstack width");
        let mut m = RatMatrix::zero(top.rows + bottom.rows, top.cols);
        for r in 0..top.rows {
            for c in 0..top.cols {
                m.set(r, c, top.at(r, c).clone());
            }
        }
        for r in 0..bottom.rows {
            for c in 0..bottom.cols {
                m.set(top.rows + r, c, bottom.at(r, c).clone());
            }
        }
        m
    }

    /// Place two matrices side by side.
    pub fn hstack(left: &RatMatrix, right: &RatMatrix) -> RatMatrix {
        assert_eq!(left.rows, right.rows, "hstack height");
        let mut m = RatMatrix::zero(left.rows, left.cols + right.cols);
        for r in 0..left.rows {
            for c in 0..left.cols {
                m.set(r, c, left.at(r, c).clone());
            }
            for c in 0..right.cols {
                m.set(r, left.cols + c, right.at(r, c).clone());
            }
        }
        m
    }

    /// Reduced row echelon form in place; returns pivot column indices.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let pivot_row = (r..self.rows).find(|&i| !self.at(i, c).is_zero());
            let Some(p) = pivot_row else { continue };
            for j in 0..self.cols {
                self.entries.swap(r * self.cols + j, p * self.cols + j);
            }
            let inv = self.at(r, c).recip();
            for j in 0..self.cols {
                let v = self.at(r, j) * &inv;
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i != r && !self.at(i, c).is_zero() {
                    let factor = self.at(i, c).clone();
                    for j in 0..self.cols {
                        let v = self.at(i, j) - &factor * self.at(r, j);
                        self.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Basis of the right kernel {x : Mx = 0}.
    pub fn kernel_basis(&self) -> Vec<Vec<Rat>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Vec::new();
        for &f in &free {
            let mut v = vec![Rat::zero(); self.cols];
            v[f] = Rat::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -m.at(i, f).clone();
            }
            basis.push(v);
        }
        basis
    }

    /// Rows spanning the left null space {u : uM = 0}.
    pub fn left_null_basis(&self) -> Vec<Vec<Rat>> {
        self.transpose().kernel_basis()
    }

    /// One solution of Mx = b, if any.
    pub fn solve(&self, b: &[Rat]) -> Option<Vec<Rat>> {
        assert_eq!(b.len(), self.rows, "solve shape");
        let mut aug = RatMatrix::zero(self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(r, c, self.at(r, c).clone());
            }
            aug.set(r, self.cols, b[r].clone());
        }
        let pivots = aug.rref();
        if pivots.contains(&self.cols) {
            return None; // inconsistent row 0 .. 0 | 1
        }
        let mut x = vec![Rat::zero(); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = aug.at(i, self.cols).clone();
        }
        Some(x)
    }

    /// Is v in the column span?
    pub fn in_column_span(&self, v: &[Rat]) -> bool {
        self.solve(v).is_some()
    }

    pub fn from_columns(cols: &[Vec<Rat>], rows: usize) -> RatMatrix {
        let mut m = RatMatrix::zero(rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length");
            for i in 0..rows {
                m.set(i, j, col[i].clone());
            }
        }
        m
    }
}

/// U * M * V = S with U, V unimodular and S diagonal, non-negative,
/// each diagonal entry dividing the next.
#[derive(Debug, Clone)]
pub struct SNFDecomposition {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
}

impl SNFDecomposition {
    pub fn diagonal(&self) -> Vec<Int> {
        let n = self.s.rows.min(self.s.cols);
        (0..n).map(|i| self.s.at(i, i).clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|d| !d.is_zero()).count()
    }
}

/// Smith normal form. Pivot selection: smallest-magnitude nonzero entry,
/// ties broken by lowest (row, col).
pub fn smith_normal_form(m: &IntMatrix) -> SNFDecomposition {
    let mut s = m.clone();
    let mut u = IntMatrix::identity(m.rows);
    let mut v = IntMatrix::identity(m.cols);
    let bound = m.rows.min(m.cols);

    for t in 0..bound {
        'pivot: loop {
            // smallest-magnitude nonzero entry in the trailing submatrix
            let mut best: Option<(usize, usize)> = None;
            for r in t..s.rows {
                for c in t..s.cols {
                    if s.at(r, c).is_zero() {
                        continue;
                    }
                    let better = match &best {
                        None => true,
                        Some((br, bc)) => s.at(r, c).abs() < s.at(*br, *bc).abs(),
                    };
                    if better {
                        best = Some((r, c));
                    }
                }
            }
            let Some((pr, pc)) = best else { break 'pivot };
            s.swap_rows(t, pr);
            u.swap_rows(t, pr);
            s.swap_cols(t, pc);
            v.swap_cols(t, pc);

            // reduce column t below the pivot
            let mut dirty = false;
            for r in t + 1..s.rows {
                if !s.at(r, t).is_zero() {
                    let q = s.at(r, t) / s.at(t, t);
                    let k = -q;
                    s.add_row(r, t, &k);
                    u.add_row(r, t, &k);
                    if !s.at(r, t).is_zero() {
                        dirty = true; // remainder left; a smaller pivot now exists
                    }
                }
            }
            // reduce row t right of the pivot
            for c in t + 1..s.cols {
                if !s.at(t, c).is_zero() {
                    let q = s.at(t, c) / s.at(t, t);
                    let k = -q;
                    s.add_col(c, t, &k);
                    v.add_col(c, t, &k);
                    if !s.at(t, c).is_zero() {
                        dirty = true;
                    }
                }
            }
            if dirty {
                continue 'pivot;
            }
            // pivot must divide every remaining entry
            for r in t + 1..s.rows {
                for c in t + 1..s.cols {
                    if !(s.at(r, c) % s.at(t, t)).is_zero() {
                        let one = Int::one();
                        s.add_row(t, r, &one);
                        u.add_row(t, r, &one);
                        continue 'pivot;
                    }
                }
            }
            break 'pivot;
        }
        if s.at(t, t).is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
    }
    SNFDecomposition { u, s, v }
}

/// Basis of the integer kernel lattice {x in Z^cols : Mx = 0}.
/// The basis is saturated: every integer kernel vector is an integer
/// combination of it.
pub fn int_kernel_basis(m: &IntMatrix) -> Vec<Vec<Int>> {
    let snf = smith_normal_form(m);
    let diag = snf.diagonal();
    let mut basis = Vec::new();
    for j in 0..m.cols {
        let zero_diag = j >= diag.len() || diag[j].is_zero();
        if zero_diag {
            basis.push(snf.v.column(j));
        }
    }
    basis
}

/// One integer solution of Mx = b, if any.
pub fn int_solve(m: &IntMatrix, b: &[Int]) -> Option<Vec<Int>> {
    assert_eq!(b.len(), m.rows, "solve shape");
    let snf = smith_normal_form(m);
    let y = snf.u.mul_vec(b);
    let diag = snf.diagonal();
    let mut z = vec![Int::zero(); m.cols];
    for i in 0..m.rows {
        let d = if i < diag.len() {
            diag[i].clone()
        } else {
            Int::zero()
        };
        if d.is_zero() {
            if !y[i].is_zero() {
                return None;
            }
        } else {
            if !(y[i].clone() % &d).is_zero() {
                return None;
            }
            if i < m.cols {
                z[i] = y[i].clone() / &d;
            }
        }
    }
    Some(snf.v.mul_vec(&z))
}

/// Computed cohomology group: free rank, torsion coefficients (each >= 2,
/// dividing the next), number of Q/Z summands, number of Q summands.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbGroupPresentation {
    pub free_rank: usize,
    pub torsion: Vec<Int>,
    pub divisible_rank: usize,
    pub rational_rank: usize,
}

impl AbGroupPresentation {
    pub fn trivial() -> Self {
        AbGroupPresentation {
            free_rank: 0,
            torsion: Vec::new(),
            divisible_rank: 0,
            rational_rank: 0,
        }
    }

    pub fn free(rank: usize) -> Self {
        AbGroupPresentation {
            free_rank: rank,
            ..Self::trivial()
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0
            && self.torsion.is_empty()
            && self.divisible_rank == 0
            && self.rational_rank == 0
    }
}

impl fmt::Display for AbGroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            k => parts.push(format!("Z^{k}")),
        }
        for d in &self.torsion {
            parts.push(format!("Z/{d}"));
        }
        match self.rational_rank {
            0 => {}
            1 => parts.push("Q".to_string()),
            k => parts.push(format!("Q^{k}")),
        }
        if self.divisible_rank > 0 {
            parts.push(format!("(Q/Z)^{}", self.divisible_rank));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Presentation of Z^k / (lattice spanned by the columns of R), where R is
/// given as a list of vectors in Z^k.
pub fn lattice_quotient(k: usize, relations: &[Vec<Int>]) -> AbGroupPresentation {
    let mut r = IntMatrix::zero(k, relations.len());
    for (j, rel) in relations.iter().enumerate() {
        assert_eq!(rel.len(), k, "relation length");
        for i in 0..k {
            r.set(i, j, rel[i].clone());
        }
    }
    let snf = smith_normal_form(&r);
    let diag = snf.diagonal();
    let rank = diag.iter().filter(|d| !d.is_zero()).count();
    let torsion: Vec<Int> = diag
        .iter()
        .filter(|d| !d.is_zero() && !d.is_one())
        .cloned()
        .collect();
    AbGroupPresentation {
        free_rank: k - rank,
        torsion,
        divisible_rank: 0,
        rational_rank: 0,
    }
}

/// H^n of a complex of free Z-modules, from the incoming differential
/// d_prev : C^{n-1} -> C^n and the outgoing d_next : C^n -> C^{n+1}.
pub fn cohomology_int(
    d_prev: &IntMatrix,
    d_next: &IntMatrix,
) -> Result<AbGroupPresentation, AlgError> {
    if d_next.cols != d_prev.rows {
        return Err(AlgError::DimensionMismatch(format!(
            "d_next domain {} vs d_prev codomain {}",
            d_next.cols, d_prev.rows
        )));
    }
    if !d_next.mul(d_prev).is_zero() {
        return Err(AlgError::CompositionNotZero);
    }
    let kernel = int_kernel_basis(d_next);
    let k = kernel.len();
    let kb = basis_matrix(&kernel, d_next.cols);
    // express each image generator in kernel coordinates
    let mut relations = Vec::new();
    for j in 0..d_prev.cols {
        let img = d_prev.column(j);
        let coords =
            int_solve(&kb, &img).expect("image vector must lie in the saturated kernel lattice");
        relations.push(coords);
    }
    Ok(lattice_quotient(k, &relations))
}

/// Canonical coordinates of the class of a cocycle z in
/// H^n = ker(d_next)/im(d_prev): free coordinates over Z plus residues
/// modulo the torsion orders. Two cocycles are cohomologous iff their
/// coordinate vectors are equal.
pub struct ClassCoordinates {
    pub free: Vec<Int>,
    pub torsion: Vec<Int>,
}

pub fn class_coordinates(
    d_prev: &IntMatrix,
    d_next: &IntMatrix,
    z: &[Int],
) -> Result<ClassCoordinates, AlgError> {
    if !d_next.mul_vec(z).iter().all(|x| x.is_zero()) {
        return Err(AlgError::DimensionMismatch("input is not a cocycle".into()));
    }
    let kernel = int_kernel_basis(d_next);
    let k = kernel.len();
    let kb = basis_matrix(&kernel, d_next.cols);
    let mut r = IntMatrix::zero(k, d_prev.cols);
    for j in 0..d_prev.cols {
        let coords = int_solve(&kb, &d_prev.column(j)).expect("image inside kernel lattice");
        for i in 0..k {
            r.set(i, j, coords[i].clone());
        }
    }
    let snf = smith_normal_form(&r);
    let diag = snf.diagonal();
    let w = int_solve(&kb, z).expect("cocycle inside kernel lattice");
    let uw = snf.u.mul_vec(&w);
    let mut free = Vec::new();
    let mut torsion = Vec::new();
    for i in 0..k {
        let d = if i < diag.len() {
            diag[i].clone()
        } else {
            Int::zero()
        };
        if d.is_zero() {
            free.push(uw[i].clone());
        } else if !d.is_one() {
            torsion.push(uw[i].mod_floor(&d));
        }
    }
    Ok(ClassCoordinates { free, torsion })
}

fn basis_matrix(vectors: &[Vec<Int>], dim: usize) -> IntMatrix {
    let mut m = IntMatrix::zero(dim, vectors.len());
    for (j, v) in vectors.iter().enumerate() {
        assert_eq!(v.len(), dim, "basis vector length");
        for i in 0..dim {
            m.set(i, j, v[i].clone());
        }
    }
    m
}

/// A cochain complex of finitely generated free Z-modules given by its
/// differentials d_n : C^n -> C^{n+1} for n = 0..len-1. Degrees outside the
/// stored range are zero.
#[derive(Debug, Clone)]
pub struct IntComplex {
    pub diffs: Vec<IntMatrix>,
}

impl IntComplex {
    pub fn rank(&self, n: usize) -> usize {
        if n < self.diffs.len() {
            self.diffs[n].cols
        } else if n > 0 && n - 1 < self.diffs.len() {
            self.diffs[n - 1].rows
        } else {
            0
        }
    }

    pub fn diff(&self, n: usize) -> IntMatrix {
        if n < self.diffs.len() {
            self.diffs[n].clone()
        } else {
            let next = self.rank(n + 1);
            IntMatrix::zero(next, self.rank(n))
        }
    }

    pub fn incoming(&self, n: usize) -> IntMatrix {
        if n == 0 {
            IntMatrix::zero(self.rank(0), 0)
        } else {
            self.diff(n - 1)
        }
    }

    pub fn validate(&self) -> Result<(), AlgError> {
        for n in 0..self.diffs.len() {
            let d0 = self.diff(n);
            let d1 = self.diff(n + 1);
            if d1.cols != d0.rows {
                return Err(AlgError::DimensionMismatch(format!("degree {n}")));
            }
            if !d1.mul(&d0).is_zero() {
                return Err(AlgError::CompositionNotZero);
            }
        }
        Ok(())
    }

    pub fn cohomology(&self, n: usize) -> Result<AbGroupPresentation, AlgError> {
        cohomology_int(&self.incoming(n), &self.diff(n))
    }
}

/// H^n with Q/Z coefficients of a complex of free Z-modules, by universal
/// coefficients: one Q/Z summand per free generator of H^n(Z), plus the
/// torsion of H^{n+1}(Z).
pub fn cohomology_qz(complex: &IntComplex, n: usize) -> Result<AbGroupPresentation, AlgError> {
    complex.validate()?;
    let hn = complex.cohomology(n)?;
    let hn1 = complex.cohomology(n + 1)?;
    Ok(AbGroupPresentation {
        free_rank: 0,
        torsion: hn1.torsion,
        divisible_rank: hn.free_rank,
        rational_rank: 0,
    })
}

/// Exact solution of A x_int + B x_rat = v with x_int over the integers and
/// x_rat over the rationals. Returns None when no solution exists.
pub fn solve_mixed(
    a: &IntMatrix,
    b: &RatMatrix,
    v: &[Rat],
) -> Result<Option<(Vec<Int>, Vec<Rat>)>, AlgError> {
    let m = v.len();
    if a.rows != m || b.rows != m {
        return Err(AlgError::DimensionMismatch(format!(
            "solve_mixed: A {}x{}, B {}x{}, v {}",
            a.rows,
            a.cols,
            b.rows,
            b.cols,
            v.len()
        )));
    }
    // rows annihilating the rational block
    let null_rows: Vec<Vec<Rat>> = if b.cols == 0 {
        (0..m)
            .map(|i| {
                let mut e = vec![Rat::zero(); m];
                e[i] = Rat::one();
                e
            })
            .collect()
    } else {
        b.left_null_basis()
    };

    // integer part: for each null row n, (nA) x = nv, cleared of denominators
    let a_rat = a.to_rat();
    let mut int_rows: Vec<Vec<Int>> = Vec::new();
    let mut int_rhs: Vec<Int> = Vec::new();
    for nrow in &null_rows {
        let na: Vec<Rat> = (0..a.cols)
            .map(|j| (0..m).map(|i| &nrow[i] * a_rat.at(i, j)).sum())
            .collect();
        let nv: Rat = (0..m).map(|i| &nrow[i] * &v[i]).sum();
        let mut all: Vec<Rat> = na.clone();
        all.push(nv.clone());
        let l = denom_lcm(&all);
        let lr = rat_of(&l);
        int_rows.push(na.iter().map(|x| (x * &lr).to_integer()).collect());
        int_rhs.push((&nv * &lr).to_integer());
    }
    let mut mat = IntMatrix::zero(int_rows.len(), a.cols);
    for (i, row) in int_rows.iter().enumerate() {
        for (j, e) in row.iter().enumerate() {
            mat.set(i, j, e.clone());
        }
    }
    let x = match int_solve(&mat, &int_rhs) {
        Some(x) => x,
        None => return Ok(None),
    };
    // rational part: B y = v - A x
    let residual: Vec<Rat> = (0..m)
        .map(|i| {
            let ax: Rat = (0..a.cols).map(|j| a_rat.at(i, j) * rat_of(&x[j])).sum();
            &v[i] - ax
        })
        .collect();
    if b.cols == 0 {
        if residual.iter().all(|r| r.is_zero()) {
            return Ok(Some((x, Vec::new())));
        }
        return Ok(None);
    }
    let y = b
        .solve(&residual)
        .expect("residual lies in the rational image by construction");
    Ok(Some((x, y)))
}

/// Assemble and solve a mixed system from rows
/// (coefficients on integer unknowns, coefficients on rational unknowns, rhs).
/// Rows are scaled to clear denominators on the integer-unknown block.
pub fn solve_mixed_rows(
    rows: &[(Vec<Rat>, Vec<Rat>, Rat)],
    n_int: usize,
    n_rat: usize,
) -> Result<Option<(Vec<Int>, Vec<Rat>)>, AlgError> {
    let m = rows.len();
    let mut a = IntMatrix::zero(m, n_int);
    let mut b = RatMatrix::zero(m, n_rat);
    let mut v = vec![Rat::zero(); m];
    for (i, (ai, bi, rhs)) in rows.iter().enumerate() {
        if ai.len() != n_int || bi.len() != n_rat {
            return Err(AlgError::DimensionMismatch(format!("row {i}")));
        }
        let l = rat_of(&denom_lcm(ai));
        for (j, c) in ai.iter().enumerate() {
            a.set(i, j, (c * &l).to_integer());
        }
        for (j, c) in bi.iter().enumerate() {
            b.set(i, j, c * &l);
        }
        v[i] = rhs * &l;
    }
    solve_mixed(&a, &b, &v)
}

//! Nerves of finite action groupoids and their total cochain complexes.
//!
//! For a finite group G acting simplicially on a base complex X, level q of
//! the nerve is G^q x X: one copy of X per q-tuple of group elements. The
//! q+1 face maps to level q-1 act by dropping the last tuple entry into the
//! action, composing adjacent entries, or dropping the first entry. The
//! cochain double complex carries the vertical coboundary d and the
//! horizontal alternating pullback sum delta; the total differential on
//! column q is delta + (-1)^q d.

use crate::complex::{coboundary, Cochain, ComplexError, DeltaComplex, Ring};
use crate::exactalg::mixed::{MixedComplex, MixedDiff, MixedModule, MixedVec};
use crate::exactalg::{cohomology_qz, AbGroupPresentation, IntComplex, IntMatrix, RatMatrix};
use crate::scalar::{mod_one, rat_of, Int, Rat};
use num_traits::Zero;
use std::collections::HashMap;
use std::sync::Arc;

#[derive(Debug, thiserror::Error)]
pub enum NerveError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("invalid action: {0}")]
    InvalidAction(String),
    #[error("nerve depth {depth} insufficient, need at least {need}")]
    Depth { depth: usize, need: usize },
    #[error("averaging needs rational coefficients")]
    AveragingRing,
    #[error("total differential does not square to zero (face-map bug)")]
    TotalSquare,
    #[error("{0}")]
    Complex(#[from] ComplexError),
}

/// Finite group as a multiplication table; element 0 is the identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinGroup {
    pub order: usize,
    mul: Vec<Vec<usize>>,
    inv: Vec<usize>,
}

impl FinGroup {
    pub fn new(mul: Vec<Vec<usize>>) -> Result<Self, NerveError> {
        let n = mul.len();
        let bad = |msg: String| Err(NerveError::InvalidGroup(msg));
        if n == 0 {
            return bad("empty multiplication table".into());
        }
        for row in &mul {
            if row.len() != n || row.iter().any(|&x| x >= n) {
                return bad("malformed multiplication table".into());
            }
        }
        for i in 0..n {
            if mul[0][i] != i || mul[i][0] != i {
                return bad("element 0 is not an identity".into());
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if mul[mul[a][b]][c] != mul[a][mul[b][c]] {
                        return bad(format!("associativity fails at ({a},{b},{c})"));
                    }
                }
            }
        }
        let mut inv = vec![usize::MAX; n];
        for a in 0..n {
            match (0..n).find(|&b| mul[a][b] == 0 && mul[b][a] == 0) {
                Some(b) => inv[a] = b,
                None => return bad(format!("element {a} has no inverse")),
            }
        }
        Ok(FinGroup { order: n, mul, inv })
    }

    pub fn trivial() -> Self {
        FinGroup {
            order: 1,
            mul: vec![vec![0]],
            inv: vec![0],
        }
    }

    pub fn cyclic(n: usize) -> Self {
        let mul = (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect();
        FinGroup::new(mul).expect("cyclic table is a group")
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }
}

/// Simplicial map between delta-complexes: per dimension, simplex images
/// commuting with the ordered face maps.
#[derive(Debug, Clone)]
pub struct SimplicialMap {
    pub source: Arc<DeltaComplex>,
    pub target: Arc<DeltaComplex>,
    map: Vec<Vec<usize>>,
}

impl SimplicialMap {
    pub fn new(
        source: Arc<DeltaComplex>,
        target: Arc<DeltaComplex>,
        map: Vec<Vec<usize>>,
    ) -> Result<Self, NerveError> {
        let m = SimplicialMap {
            source,
            target,
            map,
        };
        m.validate()?;
        Ok(m)
    }

    fn validate(&self) -> Result<(), NerveError> {
        for n in 0..=self.source.dimension() {
            let level = self.map.get(n).ok_or_else(|| {
                NerveError::InvalidAction(format!("missing dimension {n} in simplicial map"))
            })?;
            if level.len() != self.source.size(n) {
                return Err(NerveError::InvalidAction(format!(
                    "map length mismatch in dimension {n}"
                )));
            }
            for (idx, &img) in level.iter().enumerate() {
                if img >= self.target.size(n) {
                    return Err(NerveError::InvalidAction(format!(
                        "image out of range in dimension {n}"
                    )));
                }
                if n > 0 {
                    let src_faces = self.source.faces(n, idx);
                    let img_faces = self.target.faces(n, img);
                    for (i, &f) in src_faces.iter().enumerate() {
                        if self.map[n - 1][f] != img_faces[i] {
                            return Err(NerveError::InvalidAction(format!(
                                "map does not commute with face {i} of {}",
                                self.source.simplex_id(n, idx)
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn apply(&self, dim: usize, idx: usize) -> usize {
        self.map[dim][idx]
    }

    /// Pullback of a cochain on the target.
    pub fn pullback(&self, x: &Cochain) -> Cochain {
        assert_eq!(
            &*x.complex, &*self.target,
            "pullback source complex mismatch"
        );
        let values = (0..self.source.size(x.degree))
            .map(|i| x.values[self.map[x.degree][i]].clone())
            .collect();
        Cochain::from_values(&self.source, x.degree, x.ring, values)
            .expect("pullback preserves ring constraints")
    }

    /// Matrix of the pullback on degree-p cochains (target basis -> source basis).
    pub fn pullback_matrix(&self, p: usize) -> IntMatrix {
        let rows = self.source.size(p);
        let cols = self.target.size(p);
        let mut m = IntMatrix::zero(rows, cols);
        for i in 0..rows {
            let v = m.at(i, self.map[p][i]) + Int::from(1);
            m.set(i, self.map[p][i], v);
        }
        m
    }
}

/// A finite group acting on a delta-complex by simplicial automorphisms.
#[derive(Debug, Clone)]
pub struct FinGroupAction {
    pub group: FinGroup,
    pub base: Arc<DeltaComplex>,
    /// perms[g][n][idx] = index of g . simplex
    perms: Vec<Vec<Vec<usize>>>,
}

impl FinGroupAction {
    pub fn new(
        group: FinGroup,
        base: Arc<DeltaComplex>,
        perms: Vec<Vec<Vec<usize>>>,
    ) -> Result<Self, NerveError> {
        if perms.len() != group.order {
            return Err(NerveError::InvalidAction(
                "one permutation per group element".into(),
            ));
        }
        let action = FinGroupAction { group, base, perms };
        action.validate()?;
        Ok(action)
    }

    pub fn trivial(group: FinGroup, base: Arc<DeltaComplex>) -> Self {
        let id: Vec<Vec<usize>> = (0..=base.dimension())
            .map(|n| (0..base.size(n)).collect())
            .collect();
        let perms = vec![id; group.order];
        FinGroupAction { group, base, perms }
    }

    fn validate(&self) -> Result<(), NerveError> {
        let dims = self.base.dimension();
        for (g, perm) in self.perms.iter().enumerate() {
            if perm.len() != dims + 1 {
                return Err(NerveError::InvalidAction(format!(
                    "element {g}: permutation must cover every dimension"
                )));
            }
            for n in 0..=dims {
                let level = &perm[n];
                if level.len() != self.base.size(n) {
                    return Err(NerveError::InvalidAction(format!(
                        "element {g}: wrong length in dimension {n}"
                    )));
                }
                let mut seen = vec![false; level.len()];
                for &img in level {
                    if img >= level.len() || seen[img] {
                        return Err(NerveError::InvalidAction(format!(
                            "element {g}: not a permutation in dimension {n}"
                        )));
                    }
                    seen[img] = true;
                }
            }
            // simplicial automorphism: commutes with ordered faces
            for n in 1..=dims {
                for idx in 0..self.base.size(n) {
                    let img = perm[n][idx];
                    for (i, &f) in self.base.faces(n, idx).iter().enumerate() {
                        if perm[n - 1][f] != self.base.faces(n, img)[i] {
                            return Err(NerveError::InvalidAction(format!(
                                "element {g} is not simplicial at {}",
                                self.base.simplex_id(n, idx)
                            )));
                        }
                    }
                }
            }
        }
        // identity acts trivially
        for n in 0..=dims {
            for idx in 0..self.base.size(n) {
                if self.perms[0][n][idx] != idx {
                    return Err(NerveError::InvalidAction(
                        "identity must act trivially".into(),
                    ));
                }
            }
        }
        // homomorphism: g(h . s) = (gh) . s
        for g in 0..self.group.order {
            for h in 0..self.group.order {
                let gh = self.group.mul(g, h);
                for n in 0..=dims {
                    for idx in 0..self.base.size(n) {
                        if self.perms[g][n][self.perms[h][n][idx]] != self.perms[gh][n][idx] {
                            return Err(NerveError::InvalidAction(format!(
                                "action is not a homomorphism at ({g},{h})"
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn act(&self, g: usize, dim: usize, idx: usize) -> usize {
        self.perms[g][dim][idx]
    }
}

/// The truncated nerve: levels 0..=depth with their face maps.
#[derive(Debug)]
pub struct NerveLevels {
    pub action: FinGroupAction,
    pub depth: usize,
    pub levels: Vec<Arc<DeltaComplex>>,
    /// faces[q] has the q+1 face maps from level q to level q-1 (q >= 1);
    /// faces[0] is empty
    pub faces: Vec<Vec<SimplicialMap>>,
}

fn tuple_count(order: usize, q: usize) -> usize {
    order.pow(q as u32)
}

/// Tuples of length q over 0..order, lexicographic; the first entry varies
/// slowest.
fn tuple_index(order: usize, tuple: &[usize]) -> usize {
    tuple.iter().fold(0, |acc, &g| acc * order + g)
}

fn tuple_at(order: usize, q: usize, mut index: usize) -> Vec<usize> {
    let mut t = vec![0; q];
    for slot in (0..q).rev() {
        t[slot] = index % order;
        index /= order;
    }
    t
}

pub fn build_nerve(action: FinGroupAction, depth: usize) -> Result<NerveLevels, NerveError> {
    let order = action.group.order;
    let base = Arc::clone(&action.base);
    let mut levels = Vec::new();
    let mut faces: Vec<Vec<SimplicialMap>> = vec![Vec::new()];
    for q in 0..=depth {
        if q == 0 {
            levels.push(Arc::clone(&base));
            continue;
        }
        // level q: one copy of the base per q-tuple
        let copies = tuple_count(order, q);
        let mut decl: Vec<(String, Vec<String>)> = Vec::new();
        let label = |t: &[usize], id: &str| -> String {
            let tag: Vec<String> = t.iter().map(|g| g.to_string()).collect();
            format!("{}|{}", tag.join("."), id)
        };
        for n in 0..=base.dimension() {
            for c in 0..copies {
                let t = tuple_at(order, q, c);
                for idx in 0..base.size(n) {
                    let id = label(&t, base.simplex_id(n, idx));
                    let face_ids = if n == 0 {
                        Vec::new()
                    } else {
                        base.faces(n, idx)
                            .iter()
                            .map(|&f| label(&t, base.simplex_id(n - 1, f)))
                            .collect()
                    };
                    decl.push((id, face_ids));
                }
            }
        }
        let level = DeltaComplex::new(decl)?;
        // the q+1 face maps down to level q-1
        let prev = Arc::clone(&levels[q - 1]);
        let mut maps = Vec::new();
        for i in 0..=q {
            let mut map: Vec<Vec<usize>> = Vec::new();
            for n in 0..=base.dimension() {
                let mut level_map = vec![0usize; level.size(n)];
                for c in 0..copies {
                    let t = tuple_at(order, q, c);
                    let (t_out, transform): (Vec<usize>, Option<usize>) = if i == 0 {
                        // drop the last entry into the action
                        (t[..q - 1].to_vec(), Some(t[q - 1]))
                    } else if i == q {
                        (t[1..].to_vec(), None)
                    } else {
                        // compose adjacent entries at position q-i-1
                        let p = q - i - 1;
                        let mut t2 = Vec::with_capacity(q - 1);
                        t2.extend_from_slice(&t[..p]);
                        t2.push(action.group.mul(t[p], t[p + 1]));
                        t2.extend_from_slice(&t[p + 2..]);
                        (t2, None)
                    };
                    let out_copy = tuple_index(order, &t_out);
                    for idx in 0..base.size(n) {
                        let src = c * base.size(n) + idx;
                        let img_idx = match transform {
                            Some(g) => action.act(g, n, idx),
                            None => idx,
                        };
                        level_map[src] = out_copy * base.size(n) + img_idx;
                    }
                }
                map.push(level_map);
            }
            maps.push(SimplicialMap::new(
                Arc::clone(&level),
                Arc::clone(&prev),
                map,
            )?);
        }
        levels.push(level);
        faces.push(maps);
    }
    Ok(NerveLevels {
        action,
        depth,
        levels,
        faces,
    })
}

impl NerveLevels {
    pub fn level(&self, q: usize) -> &Arc<DeltaComplex> {
        &self.levels[q]
    }

    /// Face map `i` from level q to level q-1.
    pub fn face(&self, q: usize, i: usize) -> &SimplicialMap {
        &self.faces[q][i]
    }

    /// delta: F^p(level q) -> F^p(level q+1), alternating sum of face pullbacks.
    pub fn delta(&self, x: &Cochain, q: usize) -> Result<Cochain, NerveError> {
        if q + 1 > self.depth {
            return Err(NerveError::Depth {
                depth: self.depth,
                need: q + 1,
            });
        }
        assert_eq!(&*x.complex, &**self.level(q), "cochain lives on level {q}");
        let mut acc = Cochain::zero(self.level(q + 1), x.degree, x.ring);
        for (i, face) in self.faces[q + 1].iter().enumerate() {
            let pulled = face.pullback(x);
            acc = if i % 2 == 0 {
                acc.add(&pulled)
            } else {
                acc.sub(&pulled)
            };
        }
        if x.ring == Ring::RatModZ {
            let values = acc.values.iter().map(mod_one).collect();
            return Ok(Cochain::from_values(
                self.level(q + 1),
                x.degree,
                x.ring,
                values,
            )?);
        }
        Ok(acc)
    }

    /// Matrix of delta on degree-p cochains from level q to level q+1.
    pub fn delta_matrix(&self, p: usize, q: usize) -> IntMatrix {
        let rows = self.level(q + 1).size(p);
        let cols = self.level(q).size(p);
        let mut m = IntMatrix::zero(rows, cols);
        for (i, face) in self.faces[q + 1].iter().enumerate() {
            let pm = face.pullback_matrix(p);
            for r in 0..rows {
                for c in 0..cols {
                    let sign = if i % 2 == 0 {
                        Int::from(1)
                    } else {
                        Int::from(-1)
                    };
                    let v = m.at(r, c) + sign * pm.at(r, c);
                    m.set(r, c, v);
                }
            }
        }
        m
    }

    /// Contracting homotopy in the delta direction for rational cochains in
    /// column q >= 1: averages over a prepended group coordinate with weight
    /// 1/|G| and sign (-1)^q, so that delta(h(f)) + h(delta f) = f exactly.
    pub fn avg_contract(&self, f: &Cochain, q: usize) -> Result<Cochain, NerveError> {
        if f.ring != Ring::Rat {
            return Err(NerveError::AveragingRing);
        }
        assert!(q >= 1, "avg_contract needs column degree >= 1");
        assert_eq!(&*f.complex, &**self.level(q), "cochain lives on level {q}");
        let order = self.action.group.order;
        let base = &self.action.base;
        let p = f.degree;
        let mut values = vec![Rat::zero(); self.level(q - 1).size(p)];
        let inv_order = Rat::new(Int::from(1), Int::from(order as i64));
        // sign (-1)^q, fixed by the homotopy identity
        let sign = if q % 2 == 0 {
            Rat::from_integer(Int::from(1))
        } else {
            -Rat::from_integer(Int::from(1))
        };
        for c_out in 0..tuple_count(order, q - 1) {
            let t_out = tuple_at(order, q - 1, c_out);
            for idx in 0..base.size(p) {
                let mut acc = Rat::zero();
                for u in 0..order {
                    let mut t_in = Vec::with_capacity(q);
                    t_in.push(u);
                    t_in.extend_from_slice(&t_out);
                    let c_in = tuple_index(order, &t_in);
                    acc += &f.values[c_in * base.size(p) + idx];
                }
                values[c_out * base.size(p) + idx] = &sign * &inv_order * acc;
            }
        }
        Ok(Cochain::from_values(
            self.level(q - 1),
            p,
            Ring::Rat,
            values,
        )?)
    }
}

/// Bigraded array of cochain groups F^p(level q) with the two differentials.
pub struct DoubleComplex<'a> {
    pub nerve: &'a NerveLevels,
    pub ring: Ring,
}

impl<'a> DoubleComplex<'a> {
    pub fn new(nerve: &'a NerveLevels, ring: Ring) -> Self {
        DoubleComplex { nerve, ring }
    }

    pub fn d_matrix(&self, p: usize, q: usize) -> IntMatrix {
        self.nerve.level(q).coboundary_matrix(p)
    }

    pub fn delta_matrix(&self, p: usize, q: usize) -> IntMatrix {
        self.nerve.delta_matrix(p, q)
    }

    /// d o d = 0, delta o delta = 0, and d delta = delta d, as matrices,
    /// over the whole bigraded range.
    pub fn verify(&self) -> Result<(), NerveError> {
        let dim = self.nerve.action.base.dimension();
        for q in 0..=self.nerve.depth {
            for p in 0..=dim {
                if p + 2 <= dim + 1 {
                    let d0 = self.d_matrix(p, q);
                    let d1 = self.d_matrix(p + 1, q);
                    if !d1.mul(&d0).is_zero() {
                        return Err(NerveError::TotalSquare);
                    }
                }
                if q + 2 <= self.nerve.depth {
                    let e0 = self.delta_matrix(p, q);
                    let e1 = self.delta_matrix(p, q + 1);
                    if !e1.mul(&e0).is_zero() {
                        return Err(NerveError::TotalSquare);
                    }
                }
                if q + 1 <= self.nerve.depth && p + 1 <= dim + 1 {
                    let along_d = self.delta_matrix(p + 1, q).mul(&self.d_matrix(p, q));
                    let along_delta = self
                        .nerve
                        .level(q + 1)
                        .coboundary_matrix(p)
                        .mul(&self.delta_matrix(p, q));
                    if along_d != along_delta {
                        return Err(NerveError::TotalSquare);
                    }
                }
            }
        }
        Ok(())
    }
}

/// One block of a total-complex degree: cochain degree p on nerve level q,
/// occupying `len` coordinates starting at `offset`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TotalBlock {
    pub q: usize,
    pub p: usize,
    pub offset: usize,
    pub len: usize,
}

/// The total complex of the double complex for a plain coefficient ring
/// (Z or Q), packed as a mixed complex with layout bookkeeping.
pub struct TotalComplex<'a> {
    pub nerve: &'a NerveLevels,
    pub ring: Ring,
    pub max_degree: usize,
    pub mixed: MixedComplex,
    pub layouts: Vec<Vec<TotalBlock>>,
}

impl<'a> TotalComplex<'a> {
    /// Build the total complex for degrees 0..=max_degree. Verifies that the
    /// packed differential squares to zero.
    pub fn new(nerve: &'a NerveLevels, ring: Ring, max_degree: usize) -> Result<Self, NerveError> {
        assert!(
            matches!(ring, Ring::Int | Ring::Rat),
            "total complex over Z or Q"
        );
        let dim = nerve.action.base.dimension();
        let mut layouts = Vec::new();
        for n in 0..=max_degree {
            let mut blocks = Vec::new();
            let mut offset = 0;
            for q in 0..=n.min(nerve.depth) {
                let p = n - q;
                if p > dim {
                    continue;
                }
                let len = nerve.level(q).size(p);
                blocks.push(TotalBlock { q, p, offset, len });
                offset += len;
            }
            layouts.push(blocks);
        }
        let rank = |n: usize| -> usize { layouts[n].iter().map(|b| b.len).sum() };
        let mut modules = Vec::new();
        for n in 0..=max_degree {
            let r = rank(n);
            modules.push(match ring {
                Ring::Int => MixedModule {
                    int_rank: r,
                    rat_rank: 0,
                },
                _ => MixedModule {
                    int_rank: 0,
                    rat_rank: r,
                },
            });
        }
        let mut diffs = Vec::new();
        for n in 0..max_degree {
            let from = rank(n);
            let to = rank(n + 1);
            let mut m = IntMatrix::zero(to, from);
            for b in &layouts[n] {
                // vertical: (-1)^q d into block (p+1, q)
                if let Some(tb) = layouts[n + 1].iter().find(|t| t.q == b.q && t.p == b.p + 1) {
                    let dm = nerve.level(b.q).coboundary_matrix(b.p);
                    for r in 0..tb.len {
                        for c in 0..b.len {
                            let sign = if b.q % 2 == 0 {
                                Int::from(1)
                            } else {
                                Int::from(-1)
                            };
                            let v = m.at(tb.offset + r, b.offset + c) + sign * dm.at(r, c);
                            m.set(tb.offset + r, b.offset + c, v);
                        }
                    }
                }
                // horizontal: delta into block (p, q+1)
                if let Some(tb) = layouts[n + 1].iter().find(|t| t.q == b.q + 1 && t.p == b.p) {
                    let dm = nerve.delta_matrix(b.p, b.q);
                    for r in 0..tb.len {
                        for c in 0..b.len {
                            let v = m.at(tb.offset + r, b.offset + c) + dm.at(r, c);
                            m.set(tb.offset + r, b.offset + c, v);
                        }
                    }
                }
            }
            diffs.push(m);
        }
        // pack into a mixed complex
        let mixed = match ring {
            Ring::Int => MixedComplex {
                modules: modules.clone(),
                diffs: diffs
                    .iter()
                    .enumerate()
                    .map(|(n, m)| MixedDiff {
                        a: m.clone(),
                        b: RatMatrix::zero(0, modules[n].int_rank),
                        c: RatMatrix::zero(0, 0),
                    })
                    .collect(),
            },
            _ => MixedComplex {
                modules: modules.clone(),
                diffs: diffs
                    .iter()
                    .map(|m| MixedDiff {
                        a: IntMatrix::zero(0, 0),
                        b: RatMatrix::zero(m.rows, 0),
                        c: m.to_rat(),
                    })
                    .collect(),
            },
        };
        mixed.validate().map_err(|_| NerveError::TotalSquare)?;
        Ok(TotalComplex {
            nerve,
            ring,
            max_degree,
            mixed,
            layouts,
        })
    }

    /// Total complex as a plain integer cochain complex (ring Z only).
    pub fn to_int_complex(&self) -> IntComplex {
        assert_eq!(self.ring, Ring::Int);
        IntComplex {
            diffs: self.mixed.diffs.iter().map(|d| d.a.clone()).collect(),
        }
    }

    /// Pack per-column cochains (component q has cochain degree n - q) into a
    /// coordinate vector of degree n.
    pub fn pack(&self, n: usize, components: &[(usize, Cochain)]) -> MixedVec {
        let module = self.mixed.module(n);
        let mut v = MixedVec::zero(n, module);
        for (q, x) in components {
            let block = self.layouts[n]
                .iter()
                .find(|b| b.q == *q)
                .unwrap_or_else(|| panic!("no block for column {q} in degree {n}"));
            assert_eq!(x.degree, block.p, "component degree mismatch");
            assert_eq!(x.values.len(), block.len);
            for (i, val) in x.values.iter().enumerate() {
                match self.ring {
                    Ring::Int => v.int_part[block.offset + i] = val.to_integer(),
                    _ => v.rat_part[block.offset + i] = val.clone(),
                }
            }
        }
        v
    }

    /// Unpack a coordinate vector into per-column cochains.
    pub fn unpack(&self, v: &MixedVec) -> Vec<(usize, Cochain)> {
        let n = v.degree;
        let mut out = Vec::new();
        for b in &self.layouts[n] {
            let values: Vec<Rat> = (0..b.len)
                .map(|i| match self.ring {
                    Ring::Int => rat_of(&v.int_part[b.offset + i]),
                    _ => v.rat_part[b.offset + i].clone(),
                })
                .collect();
            let x = Cochain::from_values(self.nerve.level(b.q), b.p, self.ring, values)
                .expect("unpacked cochain");
            out.push((b.q, x));
        }
        out
    }

    /// Presentation of the total cohomology in degree n for the requested
    /// coefficient ring (the Q/Z case runs through universal coefficients on
    /// the integral total complex).
    pub fn cohomology(
        &self,
        n: usize,
        coefficients: Ring,
    ) -> Result<AbGroupPresentation, NerveError> {
        if self.nerve.depth < n + 1 {
            return Err(NerveError::Depth {
                depth: self.nerve.depth,
                need: n + 1,
            });
        }
        assert!(self.max_degree >= n + 1, "total complex built too shallow");
        match coefficients {
            Ring::RatModZ => {
                assert_eq!(
                    self.ring,
                    Ring::Int,
                    "universal coefficients need the Z total complex"
                );
                Ok(
                    cohomology_qz(&self.to_int_complex(), n)
                        .map_err(|_| NerveError::TotalSquare)?,
                )
            }
            _ => {
                assert_eq!(self.ring, coefficients);
                Ok(self
                    .mixed
                    .cohomology(n)
                    .map_err(|_| NerveError::TotalSquare)?)
            }
        }
    }
}

/// Total differential applied directly to per-column cochains, for any ring
/// including Q/Z: block (p, q) of the output receives delta(x_{q-1}) plus
/// (-1)^q d(x_q).
pub fn total_diff(
    nerve: &NerveLevels,
    n: usize,
    components: &[(usize, Cochain)],
) -> Result<Vec<(usize, Cochain)>, NerveError> {
    let by_q: HashMap<usize, &Cochain> = components.iter().map(|(q, x)| (*q, x)).collect();
    let ring = components.first().map(|(_, x)| x.ring).unwrap_or(Ring::Rat);
    let dim = nerve.action.base.dimension();
    let mut out = Vec::new();
    for q in 0..=(n + 1).min(nerve.depth) {
        let p = n + 1 - q;
        if p > dim {
            continue;
        }
        let mut acc = Cochain::zero(nerve.level(q), p, ring);
        if q >= 1 {
            if let Some(x) = by_q.get(&(q - 1)) {
                assert_eq!(x.degree, p, "column {} degree", q - 1);
                acc = acc.add(&nerve.delta(x, q - 1)?);
            }
        }
        if let Some(x) = by_q.get(&q) {
            assert_eq!(x.degree, p - 1, "column {q} degree");
            let dx = coboundary(x)?;
            acc = if q % 2 == 0 {
                acc.add(&dx)
            } else {
                acc.sub(&dx)
            };
        }
        if ring == Ring::RatModZ {
            let values = acc.values.iter().map(mod_one).collect();
            acc = Cochain::from_values(nerve.level(q), p, ring, values)?;
        }
        out.push((q, acc));
    }
    Ok(out)
}

/// Equivariant-category predicates in degrees 0 and 1, built from the two
/// (or three) face pullbacks and the base coboundary only. The total-complex
/// route computes the same sets through the assembled total differential;
/// the two constructions are compared element-wise in the verification
/// suites.
impl NerveLevels {
    /// Degree-0 object: a closed 0-cochain whose two pullbacks to level 1
    /// agree.
    pub fn h0_equivariant_is_object(&self, z: &Cochain) -> Result<bool, NerveError> {
        assert_eq!(&*z.complex, &**self.level(0));
        assert_eq!(z.degree, 0);
        let dz = coboundary(z)?;
        if !ring_zero(&dz) {
            return Ok(false);
        }
        let p0 = self.face(1, 0).pullback(z);
        let p1 = self.face(1, 1).pullback(z);
        Ok(ring_zero(&p0.sub(&p1)))
    }

    /// Degree-0 object through the total complex: d_tot z = 0.
    pub fn h0_total_is_object(&self, z: &Cochain) -> Result<bool, NerveError> {
        let image = total_diff(self, 0, &[(0, z.clone())])?;
        Ok(image.iter().all(|(_, x)| ring_zero(x)))
    }

    /// Degree-1 object: dz = 0, the pullback difference of z is dt, and t
    /// satisfies the three-term cocycle condition.
    pub fn h1_equivariant_is_object(&self, z: &Cochain, t: &Cochain) -> Result<bool, NerveError> {
        assert_eq!(z.degree, 1);
        assert_eq!(t.degree, 0);
        if !ring_zero(&coboundary(z)?) {
            return Ok(false);
        }
        let p0 = self.face(1, 0).pullback(z);
        let p1 = self.face(1, 1).pullback(z);
        let dt = coboundary(t)?;
        if !ring_zero(&p0.sub(&p1).sub(&dt)) {
            return Ok(false);
        }
        let q0 = self.face(2, 0).pullback(t);
        let q1 = self.face(2, 1).pullback(t);
        let q2 = self.face(2, 2).pullback(t);
        Ok(ring_zero(&q0.sub(&q1).add(&q2)))
    }

    /// Degree-1 object through the total complex.
    pub fn h1_total_is_object(&self, z: &Cochain, t: &Cochain) -> Result<bool, NerveError> {
        let image = total_diff(self, 1, &[(0, z.clone()), (1, t.clone())])?;
        Ok(image.iter().all(|(_, x)| ring_zero(x)))
    }

    /// Degree-1 morphism from (z, t) to (z2, t2): a 0-cochain b with
    /// db = z2 - z whose pullback difference is t2 - t.
    pub fn h1_equivariant_is_morphism(
        &self,
        from: (&Cochain, &Cochain),
        to: (&Cochain, &Cochain),
        b: &Cochain,
    ) -> Result<bool, NerveError> {
        assert_eq!(b.degree, 0);
        let db = coboundary(b)?;
        if !ring_zero(&db.sub(&to.0.sub(from.0))) {
            return Ok(false);
        }
        let p0 = self.face(1, 0).pullback(b);
        let p1 = self.face(1, 1).pullback(b);
        Ok(ring_zero(&p0.sub(&p1).sub(&to.1.sub(from.1))))
    }

    /// Degree-1 morphism through the total complex: d_tot b equals the
    /// component-wise difference.
    pub fn h1_total_is_morphism(
        &self,
        from: (&Cochain, &Cochain),
        to: (&Cochain, &Cochain),
        b: &Cochain,
    ) -> Result<bool, NerveError> {
        let image = total_diff(self, 0, &[(0, b.clone())])?;
        for (q, x) in image {
            let want = match q {
                0 => to.0.sub(from.0),
                1 => to.1.sub(from.1),
                _ => Cochain::zero(self.level(q), x.degree, x.ring),
            };
            if !ring_zero(&x.sub(&want)) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn ring_zero(x: &Cochain) -> bool {
    match x.ring {
        Ring::RatModZ => x.values.iter().all(|v| mod_one(v).is_zero()),
        _ => x.is_zero(),
    }
}

/// Parse the group-action text format against a base complex:
/// `group <n>`, `mul <i> <j> = <k>` (0 is the identity, products with the
/// identity are implied), `act <g> <simplex_id> = <simplex_id>` (unlisted
/// pairs are fixed points).
pub fn parse_action(text: &str, base: &Arc<DeltaComplex>) -> Result<FinGroupAction, NerveError> {
    let mut order: Option<usize> = None;
    let mut mul_entries: Vec<(usize, usize, usize)> = Vec::new();
    let mut act_entries: Vec<(usize, String, String)> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = crate::complex::strip_comment(raw).trim().to_string();
        if line.is_empty() {
            continue;
        }
        let err = |msg: String| NerveError::Parse {
            line: lineno + 1,
            msg,
        };
        let words: Vec<&str> = line.split_whitespace().collect();
        match words.first().copied() {
            Some("group") => {
                if words.len() != 2 {
                    return Err(err("expected `group <order>`".into()));
                }
                order = Some(
                    words[1]
                        .parse()
                        .map_err(|_| err("bad group order".into()))?,
                );
            }
            Some("mul") => {
                if words.len() != 5 || words[3] != "=" {
                    return Err(err("expected `mul <i> <j> = <k>`".into()));
                }
                let i = words[1].parse().map_err(|_| err("bad index".into()))?;
                let j = words[2].parse().map_err(|_| err("bad index".into()))?;
                let k = words[4].parse().map_err(|_| err("bad index".into()))?;
                mul_entries.push((i, j, k));
            }
            Some("act") => {
                if words.len() != 5 || words[3] != "=" {
                    return Err(err("expected `act <g> <simplex_id> = <simplex_id>`".into()));
                }
                let g = words[1]
                    .parse()
                    .map_err(|_| err("bad group element".into()))?;
                act_entries.push((g, words[2].to_string(), words[4].to_string()));
            }
            _ => return Err(err(format!("unknown directive `{}`", words[0]))),
        }
    }
    let order = order.ok_or(NerveError::Parse {
        line: 1,
        msg: "missing `group <n>`".into(),
    })?;
    if order == 0 {
        return Err(NerveError::InvalidGroup(
            "group order must be positive".into(),
        ));
    }
    let mut mul: Vec<Vec<Option<usize>>> = vec![vec![None; order]; order];
    for j in 0..order {
        mul[0][j] = Some(j);
        mul[j][0] = Some(j);
    }
    for (i, j, k) in mul_entries {
        if i >= order || j >= order || k >= order {
            return Err(NerveError::InvalidGroup(format!(
                "mul entry ({i},{j})={k} out of range"
            )));
        }
        if let Some(prev) = mul[i][j] {
            if prev != k {
                return Err(NerveError::InvalidGroup(format!(
                    "conflicting products for ({i},{j})"
                )));
            }
        }
        mul[i][j] = Some(k);
    }
    let mut table = Vec::new();
    for i in 0..order {
        let mut row = Vec::new();
        for j in 0..order {
            row.push(mul[i][j].ok_or_else(|| {
                NerveError::InvalidGroup(format!("missing product for ({i},{j})"))
            })?);
        }
        table.push(row);
    }
    let group = FinGroup::new(table)?;
    let mut perms: Vec<Vec<Vec<usize>>> = (0..order)
        .map(|_| {
            (0..=base.dimension())
                .map(|n| (0..base.size(n)).collect())
                .collect()
        })
        .collect();
    for (g, from, to) in act_entries {
        if g >= order {
            return Err(NerveError::InvalidAction(format!(
                "group element {g} out of range"
            )));
        }
        let (dim_f, idx_f) = base
            .lookup(&from)
            .ok_or_else(|| NerveError::InvalidAction(format!("unknown simplex `{from}`")))?;
        let (dim_t, idx_t) = base
            .lookup(&to)
            .ok_or_else(|| NerveError::InvalidAction(format!("unknown simplex `{to}`")))?;
        if dim_f != dim_t {
            return Err(NerveError::InvalidAction(format!(
                "`{from}` and `{to}` have different dimensions"
            )));
        }
        perms[g][dim_f][idx_f] = idx_t;
    }
    FinGroupAction::new(group, Arc::clone(base), perms)
}

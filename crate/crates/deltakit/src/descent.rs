//! Covers by closed subcomplexes, the Cech columns of tagged simplices, the
//! two contracting homotopies on the rows, and the degree-1 descent
//! equivalence check.
//!
//! Column q holds cochains on simplices tagged with a q-tuple of cover
//! indices, each containing the simplex. The horizontal differential drops
//! one tag with alternating signs; the augmentation pulls a global cochain
//! back to 1-tuples. A section tau of the cover (or a vertex partition of
//! unity) gives an explicit operator rho that contracts the extended rows,
//! which is exactly what the degree-1 gluing argument consumes.

use crate::complex::{coboundary, Cochain, ComplexError, DeltaComplex, Ring};
use crate::exactalg::mixed::{MixedComplex, MixedDiff, MixedModule, MixedVec};
use crate::exactalg::{AbGroupPresentation, AlgError, IntMatrix, RatMatrix};
use crate::scalar::{rat_of, Int, Rat};
use num_traits::Zero;
use std::collections::HashMap;
use std::sync::Arc;

#[derive(Debug, thiserror::Error)]
pub enum CoverError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid cover: {0}")]
    Invalid(String),
    #[error("weight support violation at simplex `{0}`")]
    WeightSupport(String),
    #[error("descent certificate failure: {0}")]
    Certificate(String),
    #[error("{0}")]
    Complex(#[from] ComplexError),
    #[error("{0}")]
    Alg(#[from] AlgError),
}

/// A cover of a delta-complex by closed subcomplexes, with a section tau
/// choosing a containing element per simplex.
#[derive(Debug, Clone)]
pub struct Cover {
    pub base: Arc<DeltaComplex>,
    pub names: Vec<String>,
    /// membership[e][dim][idx]
    membership: Vec<Vec<Vec<bool>>>,
    /// tau[dim][idx] = element index containing the simplex
    tau: Vec<Vec<usize>>,
}

impl Cover {
    pub fn new(
        base: &Arc<DeltaComplex>,
        names: Vec<String>,
        membership: Vec<Vec<Vec<bool>>>,
        tau_override: HashMap<(usize, usize), usize>,
    ) -> Result<Self, CoverError> {
        if names.len() != membership.len() || names.is_empty() {
            return Err(CoverError::Invalid(
                "need at least one named element".into(),
            ));
        }
        // face closure
        for (e, member) in membership.iter().enumerate() {
            for n in 1..=base.dimension() {
                for idx in 0..base.size(n) {
                    if member[n][idx] {
                        for &f in base.faces(n, idx) {
                            if !member[n - 1][f] {
                                return Err(CoverError::Invalid(format!(
                                    "element `{}` is not closed under faces at {}",
                                    names[e],
                                    base.simplex_id(n, idx)
                                )));
                            }
                        }
                    }
                }
            }
        }
        // coverage and tau
        let mut tau = Vec::new();
        for n in 0..=base.dimension() {
            let mut level = Vec::new();
            for idx in 0..base.size(n) {
                let containing: Vec<usize> = (0..names.len())
                    .filter(|&e| membership[e][n][idx])
                    .collect();
                if containing.is_empty() {
                    return Err(CoverError::Invalid(format!(
                        "simplex {} lies in no element",
                        base.simplex_id(n, idx)
                    )));
                }
                let chosen = match tau_override.get(&(n, idx)) {
                    Some(&e) => {
                        if !membership[e][n][idx] {
                            return Err(CoverError::Invalid(format!(
                                "tau assigns {} to an element not containing it",
                                base.simplex_id(n, idx)
                            )));
                        }
                        e
                    }
                    None => containing[0],
                };
                level.push(chosen);
            }
            tau.push(level);
        }
        Ok(Cover {
            base: Arc::clone(base),
            names,
            membership,
            tau,
        })
    }

    pub fn element_count(&self) -> usize {
        self.names.len()
    }

    pub fn contains(&self, element: usize, dim: usize, idx: usize) -> bool {
        self.membership[element][dim][idx]
    }

    pub fn tau(&self, dim: usize, idx: usize) -> usize {
        self.tau[dim][idx]
    }

    /// Elements containing a simplex, in declaration order.
    pub fn containing(&self, dim: usize, idx: usize) -> Vec<usize> {
        (0..self.element_count())
            .filter(|&e| self.contains(e, dim, idx))
            .collect()
    }

    /// The first vertex of a simplex: repeatedly take the last ordered face.
    pub fn first_vertex(&self, dim: usize, idx: usize) -> usize {
        let mut d = dim;
        let mut i = idx;
        while d > 0 {
            i = self.base.faces(d, i)[d];
            d -= 1;
        }
        i
    }
}

/// Rational weights per (vertex, element), supported on containing elements
/// and summing to one per vertex.
#[derive(Debug, Clone)]
pub struct PartitionOfUnity {
    /// weights[vertex][element]
    pub weights: Vec<Vec<Rat>>,
}

impl PartitionOfUnity {
    pub fn new(cover: &Cover, weights: Vec<Vec<Rat>>) -> Result<Self, CoverError> {
        if weights.len() != cover.base.size(0) {
            return Err(CoverError::Invalid("one weight row per vertex".into()));
        }
        for (v, row) in weights.iter().enumerate() {
            if row.len() != cover.element_count() {
                return Err(CoverError::Invalid("one weight per element".into()));
            }
            let mut total = Rat::zero();
            for (e, w) in row.iter().enumerate() {
                if w < &Rat::zero() {
                    return Err(CoverError::Invalid("weights must be non-negative".into()));
                }
                if !w.is_zero() && !cover.contains(e, 0, v) {
                    return Err(CoverError::Invalid(format!(
                        "vertex {} carries weight on an element not containing it",
                        cover.base.simplex_id(0, v)
                    )));
                }
                total += w;
            }
            if total != Rat::from_integer(Int::from(1)) {
                return Err(CoverError::Invalid(format!(
                    "weights at vertex {} sum to {total}, not 1",
                    cover.base.simplex_id(0, v)
                )));
            }
        }
        Ok(PartitionOfUnity { weights })
    }

    /// The indicator partition of a section tau restricted to vertices.
    pub fn indicator(cover: &Cover) -> Self {
        let mut weights = vec![vec![Rat::zero(); cover.element_count()]; cover.base.size(0)];
        for v in 0..cover.base.size(0) {
            weights[v][cover.tau(0, v)] = Rat::from_integer(Int::from(1));
        }
        PartitionOfUnity { weights }
    }
}

/// One Cech column: simplices of the base tagged with q-tuples of cover
/// indices, every tag containing the simplex.
#[derive(Debug)]
pub struct Column {
    pub q: usize,
    /// per dimension, the tagged simplices in declaration order
    pub tags: Vec<Vec<(usize, Vec<usize>)>>,
    /// per dimension, lookup from (orig index, tuple) to position
    index: Vec<HashMap<(usize, Vec<usize>), usize>>,
}

impl Column {
    pub fn size(&self, dim: usize) -> usize {
        self.tags.get(dim).map_or(0, |t| t.len())
    }

    pub fn position(&self, dim: usize, orig: usize, tuple: &[usize]) -> Option<usize> {
        self.index[dim].get(&(orig, tuple.to_vec())).copied()
    }
}

/// The Cech double complex of a cover: columns 1..=max_q plus the
/// augmentation by global cochains. The vertical differential is the base
/// coboundary computed tag-wise; the horizontal one drops tags with
/// alternating signs. `delta_sign_flip` negates one face term and exists
/// only to let verification suites watch the certificates fail.
pub struct CechComplex {
    pub cover: Cover,
    pub max_q: usize,
    pub columns: Vec<Column>,
    pub delta_sign_flip: bool,
}

impl CechComplex {
    pub fn new(cover: Cover, max_q: usize) -> Result<Self, CoverError> {
        let base = Arc::clone(&cover.base);
        let mut columns = Vec::new();
        for q in 1..=max_q {
            let mut tags = Vec::new();
            let mut index = Vec::new();
            for n in 0..=base.dimension() {
                let mut level = Vec::new();
                let mut map = HashMap::new();
                for idx in 0..base.size(n) {
                    let containing = cover.containing(n, idx);
                    let mut tuple = vec![0usize; q];
                    // lexicographic tuples over the containing elements
                    let mut counters = vec![0usize; q];
                    loop {
                        for (slot, &c) in counters.iter().enumerate() {
                            tuple[slot] = containing[c];
                        }
                        map.insert((idx, tuple.clone()), level.len());
                        level.push((idx, tuple.clone()));
                        // increment
                        let mut slot = q;
                        loop {
                            if slot == 0 {
                                break;
                            }
                            slot -= 1;
                            counters[slot] += 1;
                            if counters[slot] < containing.len() {
                                break;
                            }
                            counters[slot] = 0;
                            if slot == 0 {
                                break;
                            }
                        }
                        if counters.iter().all(|&c| c == 0) {
                            break;
                        }
                    }
                }
                tags.push(level);
                index.push(map);
            }
            columns.push(Column { q, tags, index });
        }
        Ok(CechComplex {
            cover,
            max_q,
            columns,
            delta_sign_flip: false,
        })
    }

    /// Verification hook: negate the i = 1 face term of the horizontal
    /// differential so that every identity downstream must fail.
    pub fn with_flipped_delta_sign(mut self) -> Self {
        self.delta_sign_flip = true;
        self
    }

    pub fn column(&self, q: usize) -> &Column {
        &self.columns[q - 1]
    }

    /// A zero cochain on column q in degree p, represented as raw values in
    /// declaration order.
    pub fn zero_values(&self, q: usize, p: usize) -> Vec<Rat> {
        vec![Rat::zero(); self.column(q).size(p)]
    }

    /// Pullback of a global cochain to column 1.
    pub fn upsilon(&self, x: &Cochain) -> Vec<Rat> {
        let col = self.column(1);
        col.tags[x.degree]
            .iter()
            .map(|(orig, _)| x.values[*orig].clone())
            .collect()
    }

    /// Horizontal differential from column q to column q+1.
    pub fn delta(&self, q: usize, p: usize, values: &[Rat]) -> Vec<Rat> {
        assert!(q + 1 <= self.max_q, "delta exceeds the built columns");
        let src = self.column(q);
        let dst = self.column(q + 1);
        assert_eq!(values.len(), src.size(p));
        let mut out = vec![Rat::zero(); dst.size(p)];
        for (pos, (orig, tuple)) in dst.tags[p].iter().enumerate() {
            let mut acc = Rat::zero();
            for i in 0..=q {
                let mut dropped = tuple.clone();
                dropped.remove(i);
                let src_pos = src
                    .position(p, *orig, &dropped)
                    .expect("dropped tuple stays valid");
                let mut term = values[src_pos].clone();
                let negative = i % 2 == 1;
                let negative = if self.delta_sign_flip && i == 1 {
                    !negative
                } else {
                    negative
                };
                if negative {
                    term = -term;
                }
                acc += term;
            }
            out[pos] = acc;
        }
        out
    }

    /// Vertical differential within column q.
    pub fn vertical(&self, q: usize, p: usize, values: &[Rat]) -> Vec<Rat> {
        let col = self.column(q);
        assert_eq!(values.len(), col.size(p));
        let base = &self.cover.base;
        let mut out = vec![Rat::zero(); col.size(p + 1)];
        for (pos, (orig, tuple)) in col.tags[p + 1].iter().enumerate() {
            let mut acc = Rat::zero();
            for (i, &f) in base.faces(p + 1, *orig).iter().enumerate() {
                let src_pos = col.position(p, f, tuple).expect("faces stay in the tags");
                if i % 2 == 0 {
                    acc += &values[src_pos];
                } else {
                    acc -= &values[src_pos];
                }
            }
            out[pos] = acc;
        }
        out
    }

    /// Section homotopy on the rows: prepend tau of the simplex.
    /// From column q+1 to column q (q >= 1).
    pub fn rho_section(&self, q_plus_1: usize, p: usize, values: &[Rat]) -> Vec<Rat> {
        let src = self.column(q_plus_1);
        let dst = self.column(q_plus_1 - 1);
        assert_eq!(values.len(), src.size(p));
        let mut out = vec![Rat::zero(); dst.size(p)];
        for (pos, (orig, tuple)) in dst.tags[p].iter().enumerate() {
            let mut extended = Vec::with_capacity(tuple.len() + 1);
            extended.push(self.cover.tau(p, *orig));
            extended.extend_from_slice(tuple);
            let src_pos = src.position(p, *orig, &extended).expect("tau tag is valid");
            out[pos] = values[src_pos].clone();
        }
        out
    }

    /// Section homotopy from column 1 to global cochains.
    pub fn rho_section_to_global(&self, p: usize, values: &[Rat]) -> Cochain {
        let col = self.column(1);
        assert_eq!(values.len(), col.size(p));
        let base = &self.cover.base;
        let mut out = vec![Rat::zero(); base.size(p)];
        for idx in 0..base.size(p) {
            let pos = col
                .position(p, idx, &[self.cover.tau(p, idx)])
                .expect("tau tag is valid");
            out[idx] = values[pos].clone();
        }
        Cochain::from_values(base, p, Ring::Rat, out).expect("global cochain shape")
    }

    /// Per-simplex normalized weights for a vertex partition of unity: the
    /// first-vertex weight restricted to elements containing the simplex.
    /// Errors if a simplex has no weight on any containing element.
    fn simplex_weights(
        &self,
        pou: &PartitionOfUnity,
        dim: usize,
        idx: usize,
    ) -> Result<Vec<(usize, Rat)>, CoverError> {
        let fv = self.cover.first_vertex(dim, idx);
        let mut supported = Vec::new();
        let mut total = Rat::zero();
        for e in self.cover.containing(dim, idx) {
            let w = &pou.weights[fv][e];
            if !w.is_zero() {
                supported.push((e, w.clone()));
                total += w;
            }
        }
        if total.is_zero() {
            return Err(CoverError::WeightSupport(
                self.cover.base.simplex_id(dim, idx).to_string(),
            ));
        }
        Ok(supported
            .into_iter()
            .map(|(e, w)| (e, w / &total))
            .collect())
    }

    /// Partition-of-unity homotopy on the rows: weighted average over a
    /// prepended tag. From column q+1 to column q (q >= 1).
    pub fn rho_partition(
        &self,
        pou: &PartitionOfUnity,
        q_plus_1: usize,
        p: usize,
        values: &[Rat],
    ) -> Result<Vec<Rat>, CoverError> {
        let src = self.column(q_plus_1);
        let dst = self.column(q_plus_1 - 1);
        assert_eq!(values.len(), src.size(p));
        let mut out = vec![Rat::zero(); dst.size(p)];
        for (pos, (orig, tuple)) in dst.tags[p].iter().enumerate() {
            let mut acc = Rat::zero();
            for (e, w) in self.simplex_weights(pou, p, *orig)? {
                let mut extended = Vec::with_capacity(tuple.len() + 1);
                extended.push(e);
                extended.extend_from_slice(tuple);
                let src_pos = src
                    .position(p, *orig, &extended)
                    .expect("weighted tag is valid");
                acc += w * &values[src_pos];
            }
            out[pos] = acc;
        }
        Ok(out)
    }

    /// Partition-of-unity homotopy from column 1 to global cochains.
    pub fn rho_partition_to_global(
        &self,
        pou: &PartitionOfUnity,
        p: usize,
        values: &[Rat],
    ) -> Result<Cochain, CoverError> {
        let col = self.column(1);
        assert_eq!(values.len(), col.size(p));
        let base = &self.cover.base;
        let mut out = vec![Rat::zero(); base.size(p)];
        for idx in 0..base.size(p) {
            let mut acc = Rat::zero();
            for (e, w) in self.simplex_weights(pou, p, idx)? {
                let pos = col.position(p, idx, &[e]).expect("weighted tag is valid");
                acc += w * &values[pos];
            }
            out[idx] = acc;
        }
        Ok(Cochain::from_values(base, p, Ring::Rat, out).expect("global cochain shape"))
    }

    /// The total complex of the descent double complex (columns re-indexed
    /// from zero), packed over Z or Q for degrees 0..=max_degree.
    pub fn total_mixed(
        &self,
        ring: Ring,
        max_degree: usize,
    ) -> (MixedComplex, Vec<Vec<(usize, usize, usize)>>) {
        // layout entries: (level, p, offset)
        let dim = self.cover.base.dimension();
        let levels = self.max_q - 1;
        let mut layouts: Vec<Vec<(usize, usize, usize)>> = Vec::new();
        for n in 0..=max_degree {
            let mut blocks = Vec::new();
            let mut offset = 0;
            for level in 0..=n.min(levels) {
                let p = n - level;
                if p > dim {
                    continue;
                }
                blocks.push((level, p, offset));
                offset += self.column(level + 1).size(p);
            }
            layouts.push(blocks);
        }
        let rank = |n: usize| -> usize {
            layouts[n]
                .iter()
                .map(|&(level, p, _)| self.column(level + 1).size(p))
                .sum()
        };
        let modules: Vec<MixedModule> = (0..=max_degree)
            .map(|n| match ring {
                Ring::Int => MixedModule {
                    int_rank: rank(n),
                    rat_rank: 0,
                },
                _ => MixedModule {
                    int_rank: 0,
                    rat_rank: rank(n),
                },
            })
            .collect();
        let mut diffs = Vec::new();
        for n in 0..max_degree {
            let mut m = RatMatrix::zero(rank(n + 1), rank(n));
            for &(level, p, offset) in &layouts[n] {
                let cols = self.column(level + 1).size(p);
                // vertical with sign (-1)^level into (level, p+1)
                if let Some(&(_, _, to_off)) = layouts[n + 1]
                    .iter()
                    .find(|&&(l2, p2, _)| l2 == level && p2 == p + 1)
                {
                    for c in 0..cols {
                        let mut unit = vec![Rat::zero(); cols];
                        unit[c] = Rat::from_integer(Int::from(1));
                        let image = self.vertical(level + 1, p, &unit);
                        for (r, val) in image.iter().enumerate() {
                            if !val.is_zero() {
                                let signed = if level % 2 == 0 {
                                    val.clone()
                                } else {
                                    -val.clone()
                                };
                                let cur = m.at(to_off + r, offset + c) + signed;
                                m.set(to_off + r, offset + c, cur);
                            }
                        }
                    }
                }
                // horizontal delta into (level+1, p)
                if let Some(&(_, _, to_off)) = layouts[n + 1]
                    .iter()
                    .find(|&&(l2, p2, _)| l2 == level + 1 && p2 == p)
                {
                    for c in 0..cols {
                        let mut unit = vec![Rat::zero(); cols];
                        unit[c] = Rat::from_integer(Int::from(1));
                        let image = self.delta(level + 1, p, &unit);
                        for (r, val) in image.iter().enumerate() {
                            if !val.is_zero() {
                                let cur = m.at(to_off + r, offset + c) + val;
                                m.set(to_off + r, offset + c, cur);
                            }
                        }
                    }
                }
            }
            diffs.push(m);
        }
        let mixed = match ring {
            Ring::Int => MixedComplex {
                modules: modules.clone(),
                diffs: diffs
                    .iter()
                    .enumerate()
                    .map(|(n, m)| {
                        let mut a = IntMatrix::zero(m.rows, m.cols);
                        for r in 0..m.rows {
                            for c in 0..m.cols {
                                a.set(r, c, m.at(r, c).to_integer());
                            }
                        }
                        MixedDiff {
                            a,
                            b: RatMatrix::zero(0, modules[n].int_rank),
                            c: RatMatrix::zero(0, 0),
                        }
                    })
                    .collect(),
            },
            _ => MixedComplex {
                modules: modules.clone(),
                diffs: diffs
                    .into_iter()
                    .map(|m| MixedDiff {
                        a: IntMatrix::zero(0, 0),
                        b: RatMatrix::zero(m.rows, 0),
                        c: m,
                    })
                    .collect(),
            },
        };
        (mixed, layouts)
    }
}

/// Result of the degree-1 descent verification.
pub struct DescentReport {
    pub h1_base: AbGroupPresentation,
    pub h1_total: AbGroupPresentation,
    pub fully_faithful_pairs: usize,
    pub essential_surjectivity_samples: usize,
}

/// Verify that restriction is an equivalence in degree 1: hom sets biject
/// through the section homotopy, and every total cocycle (z, t) untwists to
/// a global cocycle, exactly as the gluing argument constructs it.
pub fn descent_equivalence_h1(
    cech: &CechComplex,
    ring: Ring,
    samples: usize,
) -> Result<DescentReport, CoverError> {
    assert!(matches!(ring, Ring::Int | Ring::Rat));
    assert!(
        cech.max_q >= 3,
        "need three columns for the degree-1 argument"
    );
    let base = &cech.cover.base;
    let base_mixed = base.mixed_cochain_complex(ring);
    let (total, layouts) = cech.total_mixed(ring, base.dimension().min(2) + 1);
    total.validate()?;
    let h1_base = base_mixed.cohomology(1)?;
    let h1_total = total.cohomology(1)?;
    if h1_base != h1_total {
        return Err(CoverError::Certificate(format!(
            "H^1 mismatch: base {h1_base} vs total {h1_total}"
        )));
    }

    // global 1-cocycles to sample from
    let (lat, sub) = base_mixed.kernel_generators(1);
    let mut global_cocycles: Vec<MixedVec> = Vec::new();
    for g in lat.iter().chain(sub.iter()).take(samples.max(2)) {
        global_cocycles.push(g.clone());
    }
    if global_cocycles.is_empty() {
        global_cocycles.push(MixedVec::zero(1, base_mixed.module(1)));
    }

    let to_cochain = |v: &MixedVec| -> Cochain { crate::complex::mixed_to_cochain(base, ring, v) };
    let embed = |y: &Cochain| -> MixedVec {
        // upsilon into column 1, block (level 0, p = 1) of total degree 1
        let vals = cech.upsilon(y);
        let module = total.module(1);
        let mut out = MixedVec::zero(1, module);
        let &(_, _, offset) = layouts[1]
            .iter()
            .find(|&&(l, p, _)| l == 0 && p == 1)
            .expect("column block exists");
        for (i, val) in vals.iter().enumerate() {
            match ring {
                Ring::Int => out.int_part[offset + i] = val.to_integer(),
                _ => out.rat_part[offset + i] = val.clone(),
            }
        }
        out
    };

    // (a) full faithfulness on sampled pairs, with rho providing the inverse
    let mut fully_faithful_pairs = 0;
    for y1 in &global_cocycles {
        for y2 in &global_cocycles {
            let base_hom = base_mixed.is_coboundary(&y1.sub(y2).neg())?;
            let x1 = embed(&to_cochain(y1));
            let x2 = embed(&to_cochain(y2));
            let total_hom = total.is_coboundary(&x2.sub(&x1))?;
            if base_hom.is_some() != total_hom.is_some() {
                return Err(CoverError::Certificate(
                    "hom sets differ between base and total".into(),
                ));
            }
            if let Some(b) = total_hom {
                // b is a 0-cochain on column 1 with delta b = 0; rho pulls it
                // back to a global morphism
                let bvals: Vec<Rat> = match ring {
                    Ring::Int => b.int_part.iter().map(rat_of).collect(),
                    _ => b.rat_part.clone(),
                };
                let a = cech.rho_section_to_global(0, &bvals);
                // upsilon a = b exactly (needs delta b = 0, granted by the
                // morphism equations)
                if cech.upsilon(&a) != bvals {
                    return Err(CoverError::Certificate(
                        "rho section does not invert upsilon on the morphism".into(),
                    ));
                }
                let da = coboundary(&a)?;
                let want = to_cochain(y2).sub(&to_cochain(y1));
                if da.values != want.values {
                    return Err(CoverError::Certificate(
                        "pulled-back morphism has the wrong coboundary".into(),
                    ));
                }
            }
            fully_faithful_pairs += 1;
        }
    }

    // (b) essential surjectivity on sampled total cocycles
    let (tlat, tsub) = total.kernel_generators(1);
    let mut essential = 0;
    for gen in tlat.iter().chain(tsub.iter()).take(samples.max(2)) {
        // unpack (z, t)
        let zvals: Vec<Rat>;
        let tvals: Vec<Rat>;
        {
            let all: Vec<Rat> = match ring {
                Ring::Int => gen.int_part.iter().map(rat_of).collect(),
                _ => gen.rat_part.clone(),
            };
            let &(_, _, z_off) = layouts[1]
                .iter()
                .find(|&&(l, p, _)| l == 0 && p == 1)
                .expect("z block");
            let z_len = cech.column(1).size(1);
            let t_off_entry = layouts[1].iter().find(|&&(l, p, _)| l == 1 && p == 0);
            zvals = all[z_off..z_off + z_len].to_vec();
            tvals = match t_off_entry {
                Some(&(_, _, t_off)) => {
                    let t_len = cech.column(2).size(0);
                    all[t_off..t_off + t_len].to_vec()
                }
                None => Vec::new(),
            };
        }
        // c := rho(t) with delta c = t
        let c = cech.rho_section(2, 0, &tvals);
        let delta_c = cech.delta(1, 0, &c);
        if delta_c != tvals {
            return Err(CoverError::Certificate(
                "rho(t) is not a delta-primitive".into(),
            ));
        }
        // z' := z - dc is delta-closed and pulls back to a global cocycle
        let dc = cech.vertical(1, 0, &c);
        let zprime: Vec<Rat> = zvals.iter().zip(&dc).map(|(a, b)| a - b).collect();
        let delta_zprime = cech.delta(1, 1, &zprime);
        if delta_zprime.iter().any(|v| !v.is_zero()) {
            return Err(CoverError::Certificate("z - dc is not delta-closed".into()));
        }
        let y = cech.rho_section_to_global(1, &zprime);
        if cech.upsilon(&y) != zprime {
            return Err(CoverError::Certificate(
                "rho does not invert upsilon on z - dc".into(),
            ));
        }
        let dy = coboundary(&y)?;
        if !dy.is_zero() {
            return Err(CoverError::Certificate(
                "glued global cochain is not closed".into(),
            ));
        }
        if ring == Ring::Int && y.values.iter().any(|v| !crate::scalar::is_integer(v)) {
            return Err(CoverError::Certificate(
                "glued cochain left the ring".into(),
            ));
        }
        essential += 1;
    }

    Ok(DescentReport {
        h1_base,
        h1_total,
        fully_faithful_pairs,
        essential_surjectivity_samples: essential,
    })
}

/// Outcome of the complete row-identity verification.
pub struct RhoReport {
    pub section_checks: usize,
    pub partition_checks: usize,
}

/// Verify all three row identities on every basis cochain (the identities
/// are linear, so basis vectors decide them exactly), for the section
/// operator and, when weights are given, the partition operator.
pub fn verify_rho_identities(
    cech: &CechComplex,
    pou: Option<&PartitionOfUnity>,
) -> Result<RhoReport, CoverError> {
    let base = &cech.cover.base;
    let mut section_checks = 0;
    let mut partition_checks = 0;
    let fail = |what: &str, p: usize, q: usize| {
        Err(CoverError::Certificate(format!(
            "{what} fails at degree {p}, column {q}"
        )))
    };
    for p in 0..=base.dimension() {
        // identity (1): rho . upsilon = id on global cochains
        for idx in 0..base.size(p) {
            let mut x = Cochain::zero(base, p, Ring::Rat);
            x.values[idx] = Rat::from_integer(Int::from(1));
            if cech.rho_section_to_global(p, &cech.upsilon(&x)) != x {
                return fail("rho upsilon identity", p, 0);
            }
            section_checks += 1;
            if let Some(w) = pou {
                if cech.rho_partition_to_global(w, p, &cech.upsilon(&x))? != x {
                    return fail("partition rho upsilon identity", p, 0);
                }
                partition_checks += 1;
            }
        }
        // identity (2) on column 1 and identity (3) on columns q >= 2
        for q in 1..cech.max_q {
            for j in 0..cech.column(q).size(p) {
                let mut v = cech.zero_values(q, p);
                v[j] = Rat::from_integer(Int::from(1));
                let (first, pfirst) = if q == 1 {
                    let s = cech.upsilon(&cech.rho_section_to_global(p, &v));
                    let w = pou
                        .map(|w| {
                            cech.rho_partition_to_global(w, p, &v)
                                .map(|g| cech.upsilon(&g))
                        })
                        .transpose()?;
                    (s, w)
                } else {
                    let s = cech.delta(q - 1, p, &cech.rho_section(q, p, &v));
                    let w = pou
                        .map(|w| {
                            cech.rho_partition(w, q, p, &v)
                                .map(|r| cech.delta(q - 1, p, &r))
                        })
                        .transpose()?;
                    (s, w)
                };
                let second = cech.rho_section(q + 1, p, &cech.delta(q, p, &v));
                let total: Vec<Rat> = first.iter().zip(&second).map(|(a, b)| a + b).collect();
                if total != v {
                    return fail("section row identity", p, q);
                }
                section_checks += 1;
                if let Some(w) = pou {
                    let psecond = cech.rho_partition(w, q + 1, p, &cech.delta(q, p, &v))?;
                    let pf = pfirst.expect("partition term present");
                    let ptotal: Vec<Rat> = pf.iter().zip(&psecond).map(|(a, b)| a + b).collect();
                    if ptotal != v {
                        return fail("partition row identity", p, q);
                    }
                    partition_checks += 1;
                }
            }
        }
    }
    Ok(RhoReport {
        section_checks,
        partition_checks,
    })
}

/// Parse the cover text format: `element <name> : <simplex_id> ...` lines
/// (face closure is applied), `tau <simplex_id> = <name>` overrides, and
/// optional `weight <vertex_id> <name> = <rational>` lines.
pub fn parse_cover(
    text: &str,
    base: &Arc<DeltaComplex>,
) -> Result<(Cover, Option<PartitionOfUnity>), CoverError> {
    let mut names: Vec<String> = Vec::new();
    let mut membership: Vec<Vec<Vec<bool>>> = Vec::new();
    let mut tau_override: HashMap<(usize, usize), usize> = HashMap::new();
    let mut weight_lines: Vec<(usize, String, String, Rat)> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = crate::complex::strip_comment(raw).trim().to_string();
        if line.is_empty() {
            continue;
        }
        let err = |msg: String| CoverError::Parse {
            line: lineno + 1,
            msg,
        };
        let words: Vec<&str> = line.split_whitespace().collect();
        match words[0] {
            "element" => {
                let rest = line.strip_prefix("element").unwrap().trim();
                let (name, members) = rest
                    .split_once(':')
                    .ok_or_else(|| err("expected `element <name> : <simplices>`".into()))?;
                let name = name.trim().to_string();
                if names.contains(&name) {
                    return Err(err(format!("duplicate element `{name}`")));
                }
                let mut member: Vec<Vec<bool>> = (0..=base.dimension())
                    .map(|n| vec![false; base.size(n)])
                    .collect();
                // mark the listed simplices and close under faces
                let mut stack: Vec<(usize, usize)> = Vec::new();
                for id in members.split_whitespace() {
                    let (dim, idx) = base
                        .lookup(id)
                        .ok_or_else(|| err(format!("unknown simplex `{id}`")))?;
                    stack.push((dim, idx));
                }
                while let Some((dim, idx)) = stack.pop() {
                    if member[dim][idx] {
                        continue;
                    }
                    member[dim][idx] = true;
                    if dim > 0 {
                        for &f in base.faces(dim, idx) {
                            stack.push((dim - 1, f));
                        }
                    }
                }
                names.push(name);
                membership.push(member);
            }
            "tau" => {
                if words.len() != 4 || words[2] != "=" {
                    return Err(err("expected `tau <simplex_id> = <element>`".into()));
                }
                let (dim, idx) = base
                    .lookup(words[1])
                    .ok_or_else(|| err(format!("unknown simplex `{}`", words[1])))?;
                let e = names
                    .iter()
                    .position(|n| n == words[3])
                    .ok_or_else(|| err(format!("unknown element `{}`", words[3])))?;
                tau_override.insert((dim, idx), e);
            }
            "weight" => {
                if words.len() != 5 || words[3] != "=" {
                    return Err(err(
                        "expected `weight <vertex> <element> = <rational>`".into()
                    ));
                }
                let v = crate::complex::parse_rational(words[4])
                    .ok_or_else(|| err(format!("bad rational `{}`", words[4])))?;
                weight_lines.push((lineno + 1, words[1].to_string(), words[2].to_string(), v));
            }
            other => return Err(err(format!("unknown directive `{other}`"))),
        }
    }
    let cover = Cover::new(base, names, membership, tau_override)?;
    let pou = if weight_lines.is_empty() {
        None
    } else {
        let mut weights = vec![vec![Rat::zero(); cover.element_count()]; base.size(0)];
        for (line, vid, ename, w) in weight_lines {
            let err = |msg: String| CoverError::Parse { line, msg };
            let (dim, idx) = base
                .lookup(&vid)
                .ok_or_else(|| err(format!("unknown vertex `{vid}`")))?;
            if dim != 0 {
                return Err(err(format!("`{vid}` is not a vertex")));
            }
            let e = cover
                .names
                .iter()
                .position(|n| n == &ename)
                .ok_or_else(|| err(format!("unknown element `{ename}`")))?;
            weights[idx][e] = w;
        }
        Some(PartitionOfUnity::new(&cover, weights)?)
    };
    Ok((cover, pou))
}

#[cfg(test)]
mod tests;

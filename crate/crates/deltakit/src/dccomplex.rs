//! The (c, h, omega) cochain complex and differential characters.
//!
//! In degree n an element is a triple: c an integral n-cochain, h a rational
//! (n-1)-cochain, omega a rational n-cochain constrained to the omega model
//! and structurally absent below the truncation parameter s. The
//! differential is
//!     d(c, h, omega) = (dc, omega - c - dh, d omega).
//! Degree-2 cocycles for s = 2 carry curvature and holonomy; the extraction
//! and the holonomy congruence live here too.

use crate::chaincat::{CatError, ChainCategory};
use crate::complex::{coboundary, Chain, Cochain, ComplexError, DeltaComplex, Ring};
use crate::exactalg::mixed::{MixedComplex, MixedDiff, MixedModule, MixedVec};
use crate::exactalg::{int_kernel_basis, int_solve, IntMatrix, RatMatrix};
use crate::nerve::{NerveError, NerveLevels};
use crate::scalar::{mod_one, rat_of, Int, Rat};
use num_traits::Zero;
use std::sync::Arc;

#[derive(Debug, thiserror::Error)]
pub enum DcError {
    #[error("degree {0} out of range")]
    Degree(usize),
    #[error("omega must vanish below degree {s} (degree {degree})")]
    OmegaTruncation { s: usize, degree: usize },
    #[error("component mismatch: {0}")]
    Component(String),
    #[error("not a cocycle")]
    NotACocycle,
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("{0}")]
    Complex(#[from] ComplexError),
    #[error("{0}")]
    Cat(#[from] CatError),
    #[error("{0}")]
    Nerve(#[from] NerveError),
}

/// The omega-component model. The spaces in scope model differential forms
/// by rational cochains, so the inclusion into the cochain complex is the
/// identity; the enum records the choice per complex instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OmegaModel {
    #[default]
    FullRational,
}

/// A (c, h, omega) triple of cochains in one degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DCTriple {
    pub degree: usize,
    /// integral n-cochain
    pub c: Cochain,
    /// rational (n-1)-cochain
    pub h: Cochain,
    /// rational n-cochain; None exactly when degree < s
    pub omega: Option<Cochain>,
}

/// The truncated triple complex over a base delta-complex.
#[derive(Debug, Clone)]
pub struct DCComplex {
    pub base: Arc<DeltaComplex>,
    pub s: usize,
    pub omega_model: OmegaModel,
}

impl DCComplex {
    pub fn new(base: &Arc<DeltaComplex>, s: usize) -> Self {
        DCComplex {
            base: Arc::clone(base),
            s,
            omega_model: OmegaModel::FullRational,
        }
    }

    pub fn omega_rank(&self, degree: usize) -> usize {
        match self.omega_model {
            OmegaModel::FullRational => {
                if degree >= self.s {
                    self.base.size(degree)
                } else {
                    0
                }
            }
        }
    }

    fn h_rank(&self, degree: usize) -> usize {
        if degree == 0 {
            0
        } else {
            self.base.size(degree - 1)
        }
    }

    /// Top degree carrying any data: h-slots reach one past the dimension.
    pub fn top_degree(&self) -> usize {
        self.base.dimension() + 1
    }

    pub fn triple(
        &self,
        degree: usize,
        c: Cochain,
        h: Cochain,
        omega: Option<Cochain>,
    ) -> Result<DCTriple, DcError> {
        if c.ring != Ring::Int || c.degree != degree {
            return Err(DcError::Component(format!(
                "c must be an integral {degree}-cochain"
            )));
        }
        if h.ring != Ring::Rat || (degree > 0 && h.degree != degree - 1) {
            return Err(DcError::Component(format!(
                "h must be a rational {}-cochain",
                degree.saturating_sub(1)
            )));
        }
        if degree == 0 && !h.is_zero() {
            return Err(DcError::Component("h must vanish in degree 0".into()));
        }
        match &omega {
            Some(w) => {
                if degree < self.s {
                    return Err(DcError::OmegaTruncation { s: self.s, degree });
                }
                if w.ring != Ring::Rat || w.degree != degree {
                    return Err(DcError::Component(format!(
                        "omega must be a rational {degree}-cochain"
                    )));
                }
            }
            None => {
                if degree >= self.s {
                    return Err(DcError::Component(
                        "omega slot exists at this degree; pass an explicit cochain".into(),
                    ));
                }
            }
        }
        Ok(DCTriple {
            degree,
            c,
            h,
            omega,
        })
    }

    pub fn zero_triple(&self, degree: usize) -> DCTriple {
        DCTriple {
            degree,
            c: Cochain::zero(&self.base, degree, Ring::Int),
            h: Cochain::zero(&self.base, degree.saturating_sub(1), Ring::Rat),
            omega: if degree >= self.s {
                Some(Cochain::zero(&self.base, degree, Ring::Rat))
            } else {
                None
            },
        }
    }

    /// d(c, h, omega) = (dc, omega - c - dh, d omega).
    pub fn diff(&self, x: &DCTriple) -> Result<DCTriple, DcError> {
        let n = x.degree;
        let dc = coboundary(&x.c)?;
        let dh = if n == 0 {
            Cochain::zero(&self.base, 0, Ring::Rat)
        } else {
            coboundary(&x.h)?
        };
        let omega_minus = match &x.omega {
            Some(w) => w.clone(),
            None => Cochain::zero(&self.base, n, Ring::Rat),
        };
        let c_rat = x.c.with_ring(Ring::Rat)?;
        let new_h = omega_minus.sub(&c_rat).sub(&dh);
        let new_omega = if n + 1 >= self.s {
            Some(match &x.omega {
                Some(w) => coboundary(w)?,
                None => Cochain::zero(&self.base, n + 1, Ring::Rat),
            })
        } else {
            None
        };
        Ok(DCTriple {
            degree: n + 1,
            c: dc,
            h: new_h,
            omega: new_omega,
        })
    }

    pub fn is_cocycle(&self, x: &DCTriple) -> Result<bool, DcError> {
        let dx = self.diff(x)?;
        Ok(dx.c.is_zero() && dx.h.is_zero() && dx.omega.as_ref().map_or(true, |w| w.is_zero()))
    }

    /// The packed mixed complex: integer part c, rational part [h | omega].
    pub fn mixed(&self) -> MixedComplex {
        let top = self.top_degree();
        let modules: Vec<MixedModule> = (0..=top + 1)
            .map(|n| MixedModule {
                int_rank: self.base.size(n),
                rat_rank: self.h_rank(n) + self.omega_rank(n),
            })
            .collect();
        let mut diffs = Vec::new();
        for n in 0..=top {
            let c_len = self.base.size(n);
            let h_len = self.h_rank(n);
            let w_len = self.omega_rank(n);
            let h_len1 = self.h_rank(n + 1);
            let w_len1 = self.omega_rank(n + 1);
            let a = self.base.coboundary_matrix(n);
            // h'-block receives -c
            let mut b = RatMatrix::zero(h_len1 + w_len1, c_len);
            for i in 0..c_len {
                b.set(i, i, -Rat::from_integer(Int::from(1)));
            }
            let mut cmat = RatMatrix::zero(h_len1 + w_len1, h_len + w_len);
            // h'-block receives -dh
            if n >= 1 {
                let dh = self.base.coboundary_matrix(n - 1);
                for r in 0..dh.rows {
                    for cc in 0..dh.cols {
                        cmat.set(r, cc, -rat_of(dh.at(r, cc)));
                    }
                }
            }
            // h'-block receives +omega
            for i in 0..w_len {
                cmat.set(i, h_len + i, Rat::from_integer(Int::from(1)));
            }
            // omega'-block receives d omega
            if w_len1 > 0 && w_len > 0 {
                let dw = self.base.coboundary_matrix(n);
                for r in 0..dw.rows {
                    for cc in 0..dw.cols {
                        cmat.set(h_len1 + r, h_len + cc, rat_of(dw.at(r, cc)));
                    }
                }
            }
            diffs.push(MixedDiff { a, b, c: cmat });
        }
        MixedComplex { modules, diffs }
    }

    pub fn pack(&self, x: &DCTriple) -> MixedVec {
        let n = x.degree;
        let mut v = MixedVec::zero(
            n,
            MixedModule {
                int_rank: self.base.size(n),
                rat_rank: self.h_rank(n) + self.omega_rank(n),
            },
        );
        for (i, val) in x.c.values.iter().enumerate() {
            v.int_part[i] = val.to_integer();
        }
        if n > 0 {
            for (i, val) in x.h.values.iter().enumerate() {
                v.rat_part[i] = val.clone();
            }
        }
        if let Some(w) = &x.omega {
            let off = self.h_rank(n);
            for (i, val) in w.values.iter().enumerate() {
                v.rat_part[off + i] = val.clone();
            }
        }
        v
    }

    pub fn unpack(&self, v: &MixedVec) -> DCTriple {
        let n = v.degree;
        let c = Cochain::from_values(
            &self.base,
            n,
            Ring::Int,
            v.int_part.iter().map(rat_of).collect(),
        )
        .expect("c shape");
        let h_len = self.h_rank(n);
        let h = if n == 0 {
            Cochain::zero(&self.base, 0, Ring::Rat)
        } else {
            Cochain::from_values(&self.base, n - 1, Ring::Rat, v.rat_part[..h_len].to_vec())
                .expect("h shape")
        };
        let omega = if self.omega_rank(n) > 0 {
            Some(
                Cochain::from_values(&self.base, n, Ring::Rat, v.rat_part[h_len..].to_vec())
                    .expect("omega shape"),
            )
        } else {
            None
        };
        DCTriple {
            degree: n,
            c,
            h,
            omega,
        }
    }

    /// The chain category of degree-n cocycles of this complex.
    pub fn category(&self, degree: usize) -> Result<ChainCategory, DcError> {
        Ok(ChainCategory::new(self.mixed(), degree)?)
    }
}

/// The flat sub-complex: pairs (c, h) with differential (dc, -c - dh); the
/// omega slot is removed in every degree. Its degree-2 cohomology presents
/// the flat isomorphism classes.
pub fn flat_mixed_complex(base: &Arc<DeltaComplex>) -> MixedComplex {
    let top = base.dimension() + 1;
    let h_rank = |n: usize| if n == 0 { 0 } else { base.size(n - 1) };
    let modules: Vec<MixedModule> = (0..=top + 1)
        .map(|n| MixedModule {
            int_rank: base.size(n),
            rat_rank: h_rank(n),
        })
        .collect();
    let mut diffs = Vec::new();
    for n in 0..=top {
        let a = base.coboundary_matrix(n);
        let c_len = base.size(n);
        let mut b = RatMatrix::zero(h_rank(n + 1), c_len);
        for i in 0..c_len {
            b.set(i, i, -Rat::from_integer(Int::from(1)));
        }
        let mut cmat = RatMatrix::zero(h_rank(n + 1), h_rank(n));
        if n >= 1 {
            let dh = base.coboundary_matrix(n - 1);
            for r in 0..dh.rows {
                for cc in 0..dh.cols {
                    cmat.set(r, cc, -rat_of(dh.at(r, cc)));
                }
            }
        }
        diffs.push(MixedDiff { a, b, c: cmat });
    }
    MixedComplex { modules, diffs }
}

/// A differential character: curvature plus holonomy on a stored basis of
/// the cycle lattice one degree down.
#[derive(Debug, Clone)]
pub struct DiffCharacter {
    pub degree: usize,
    pub curvature: Cochain,
    /// basis of the lattice of (degree-1)-cycles, from the Smith form of the
    /// boundary matrix
    pub cycle_basis: Vec<Chain>,
    /// holonomy per basis cycle, canonical in [0, 1)
    pub holonomy: Vec<Rat>,
}

/// Basis of the lattice of k-cycles of a complex.
pub fn cycle_basis(complex: &Arc<DeltaComplex>, k: usize) -> Vec<Chain> {
    let boundary = complex.boundary_matrix(k);
    int_kernel_basis(&boundary)
        .into_iter()
        .map(|coeffs| Chain::from_coeffs(complex, k, coeffs))
        .collect()
}

/// Extract the character of a degree-k cocycle of the s = k complex:
/// curvature is the omega component, holonomy is h mod Z on a cycle basis.
pub fn to_character(dc: &DCComplex, x: &DCTriple) -> Result<DiffCharacter, DcError> {
    if !dc.is_cocycle(x)? {
        return Err(DcError::NotACocycle);
    }
    let k = x.degree;
    let curvature = match &x.omega {
        Some(w) => w.clone(),
        None => Cochain::zero(&dc.base, k, Ring::Rat),
    };
    let basis = cycle_basis(&dc.base, k.saturating_sub(1));
    let holonomy = basis
        .iter()
        .map(|z| Ok(mod_one(&crate::complex::evaluate(&x.h, z)?)))
        .collect::<Result<Vec<_>, DcError>>()?;
    Ok(DiffCharacter {
        degree: k,
        curvature,
        cycle_basis: basis,
        holonomy,
    })
}

/// The congruence chi(boundary S) = curvature(S) mod Z on every basis
/// k-simplex S; linearity extends it to all k-chains.
pub fn character_check(ch: &DiffCharacter) -> Result<bool, DcError> {
    let complex = &ch.curvature.complex;
    let k = ch.degree;
    if complex.size(k) == 0 {
        return Ok(true);
    }
    // express boundaries over the stored cycle basis
    let dim_cycles = complex.size(k.saturating_sub(1));
    let mut basis_mat = IntMatrix::zero(dim_cycles, ch.cycle_basis.len());
    for (j, z) in ch.cycle_basis.iter().enumerate() {
        for i in 0..dim_cycles {
            basis_mat.set(i, j, z.coeffs[i].clone());
        }
    }
    for idx in 0..complex.size(k) {
        let mut coeffs = vec![Int::zero(); complex.size(k)];
        coeffs[idx] = Int::from(1);
        let simplex = Chain::from_coeffs(complex, k, coeffs);
        let boundary = simplex.boundary();
        let Some(weights) = int_solve(&basis_mat, &boundary.coeffs) else {
            // boundaries always lie in the saturated cycle lattice
            return Ok(false);
        };
        let mut chi = Rat::zero();
        for (w, h) in weights.iter().zip(&ch.holonomy) {
            chi += rat_of(w) * h;
        }
        let omega_s = crate::complex::evaluate(&ch.curvature, &simplex)?;
        if !mod_one(&(chi - omega_s)).is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Per-degree layout of one column block in the packed total complex.
#[derive(Debug, Clone, Copy)]
pub struct DcTotalBlock {
    pub q: usize,
    pub p: usize,
    pub int_offset: usize,
    pub c_len: usize,
    pub h_offset: usize,
    pub h_len: usize,
    pub omega_offset: usize,
    pub omega_len: usize,
}

/// The total complex of the triple complex over a groupoid nerve, packed as
/// a mixed complex. Column q carries the triple complex of nerve level q;
/// the vertical differential is sign-twisted by (-1)^q.
pub struct DcTotalComplex<'a> {
    pub nerve: &'a NerveLevels,
    pub s: usize,
    pub max_degree: usize,
    pub mixed: MixedComplex,
    pub layouts: Vec<Vec<DcTotalBlock>>,
    level_dcs: Vec<DCComplex>,
}

impl<'a> DcTotalComplex<'a> {
    pub fn new(nerve: &'a NerveLevels, s: usize, max_degree: usize) -> Result<Self, DcError> {
        let level_dcs: Vec<DCComplex> = (0..=nerve.depth)
            .map(|q| DCComplex::new(nerve.level(q), s))
            .collect();
        let dim = nerve.action.base.dimension();
        let mut layouts: Vec<Vec<DcTotalBlock>> = Vec::new();
        for n in 0..=max_degree {
            let mut blocks = Vec::new();
            let mut int_offset = 0;
            let mut rat_offset = 0;
            for q in 0..=n.min(nerve.depth) {
                let p = n - q;
                if p > dim + 1 {
                    continue;
                }
                let dc = &level_dcs[q];
                let c_len = nerve.level(q).size(p);
                let h_len = if p == 0 {
                    0
                } else {
                    nerve.level(q).size(p - 1)
                };
                let omega_len = dc.omega_rank(p);
                blocks.push(DcTotalBlock {
                    q,
                    p,
                    int_offset,
                    c_len,
                    h_offset: rat_offset,
                    h_len,
                    omega_offset: rat_offset + h_len,
                    omega_len,
                });
                int_offset += c_len;
                rat_offset += h_len + omega_len;
            }
            layouts.push(blocks);
        }
        let module_of = |blocks: &Vec<DcTotalBlock>| MixedModule {
            int_rank: blocks.iter().map(|b| b.c_len).sum(),
            rat_rank: blocks.iter().map(|b| b.h_len + b.omega_len).sum(),
        };
        let modules: Vec<MixedModule> = layouts.iter().map(module_of).collect();
        let mut diffs = Vec::new();
        for n in 0..max_degree {
            let from = modules[n];
            let to = modules[n + 1];
            let mut a = IntMatrix::zero(to.int_rank, from.int_rank);
            let mut b = RatMatrix::zero(to.rat_rank, from.int_rank);
            let mut c = RatMatrix::zero(to.rat_rank, from.rat_rank);
            for blk in &layouts[n] {
                let q = blk.q;
                let p = blk.p;
                let _dc = &level_dcs[q];
                let sign = if q % 2 == 0 {
                    Int::from(1)
                } else {
                    Int::from(-1)
                };
                let sign_rat = rat_of(&sign);
                // vertical part: (-1)^q * d_{DC} into block (p+1, q)
                if let Some(tb) = layouts[n + 1].iter().find(|t| t.q == q && t.p == p + 1) {
                    // c' = dc
                    let dmat = nerve.level(q).coboundary_matrix(p);
                    for r in 0..tb.c_len {
                        for cc in 0..blk.c_len {
                            let v = a.at(tb.int_offset + r, blk.int_offset + cc)
                                + &sign * dmat.at(r, cc);
                            a.set(tb.int_offset + r, blk.int_offset + cc, v);
                        }
                    }
                    // h' = omega - c - dh
                    for i in 0..blk.c_len {
                        let v = b.at(tb.h_offset + i, blk.int_offset + i) - &sign_rat;
                        b.set(tb.h_offset + i, blk.int_offset + i, v);
                    }
                    if p >= 1 {
                        let dh = nerve.level(q).coboundary_matrix(p - 1);
                        for r in 0..dh.rows {
                            for cc in 0..dh.cols {
                                let v = c.at(tb.h_offset + r, blk.h_offset + cc)
                                    - &sign_rat * rat_of(dh.at(r, cc));
                                c.set(tb.h_offset + r, blk.h_offset + cc, v);
                            }
                        }
                    }
                    for i in 0..blk.omega_len {
                        let v = c.at(tb.h_offset + i, blk.omega_offset + i) + &sign_rat;
                        c.set(tb.h_offset + i, blk.omega_offset + i, v);
                    }
                    // omega' = d omega
                    if tb.omega_len > 0 && blk.omega_len > 0 {
                        let dw = nerve.level(q).coboundary_matrix(p);
                        for r in 0..dw.rows {
                            for cc in 0..dw.cols {
                                let v = c.at(tb.omega_offset + r, blk.omega_offset + cc)
                                    + &sign_rat * rat_of(dw.at(r, cc));
                                c.set(tb.omega_offset + r, blk.omega_offset + cc, v);
                            }
                        }
                    }
                }
                // horizontal part: slotwise delta into block (p, q+1)
                if let Some(tb) = layouts[n + 1].iter().find(|t| t.q == q + 1 && t.p == p) {
                    let delta_c = nerve.delta_matrix(p, q);
                    for r in 0..tb.c_len {
                        for cc in 0..blk.c_len {
                            let v =
                                a.at(tb.int_offset + r, blk.int_offset + cc) + delta_c.at(r, cc);
                            a.set(tb.int_offset + r, blk.int_offset + cc, v);
                        }
                    }
                    if p >= 1 {
                        let delta_h = nerve.delta_matrix(p - 1, q);
                        for r in 0..tb.h_len {
                            for cc in 0..blk.h_len {
                                let v = c.at(tb.h_offset + r, blk.h_offset + cc)
                                    + rat_of(delta_h.at(r, cc));
                                c.set(tb.h_offset + r, blk.h_offset + cc, v);
                            }
                        }
                    }
                    if tb.omega_len > 0 && blk.omega_len > 0 {
                        let delta_w = nerve.delta_matrix(p, q);
                        for r in 0..tb.omega_len {
                            for cc in 0..blk.omega_len {
                                let v = c.at(tb.omega_offset + r, blk.omega_offset + cc)
                                    + rat_of(delta_w.at(r, cc));
                                c.set(tb.omega_offset + r, blk.omega_offset + cc, v);
                            }
                        }
                    }
                }
            }
            diffs.push(MixedDiff { a, b, c });
        }
        let mixed = MixedComplex { modules, diffs };
        mixed
            .validate()
            .map_err(|_| DcError::Component("total differential squares".into()))?;
        Ok(DcTotalComplex {
            nerve,
            s,
            max_degree,
            mixed,
            layouts,
            level_dcs,
        })
    }

    pub fn level_dc(&self, q: usize) -> &DCComplex {
        &self.level_dcs[q]
    }

    pub fn pack(&self, n: usize, components: &[(usize, DCTriple)]) -> MixedVec {
        let module = self.mixed.module(n);
        let mut v = MixedVec::zero(n, module);
        for (q, x) in components {
            let Some(blk) = self.layouts[n].iter().find(|b| b.q == *q) else {
                // blocks past the dimension carry no data; only empty
                // components may be dropped
                assert!(
                    x.c.values.is_empty()
                        && (x.degree == 0 || x.h.values.is_empty())
                        && x.omega.as_ref().map_or(true, |w| w.values.is_empty()),
                    "component in column {q} has data but no block in degree {n}"
                );
                continue;
            };
            assert_eq!(x.degree, blk.p, "triple degree mismatch in column {q}");
            for (i, val) in x.c.values.iter().enumerate() {
                v.int_part[blk.int_offset + i] = val.to_integer();
            }
            if blk.p > 0 {
                for (i, val) in x.h.values.iter().enumerate() {
                    v.rat_part[blk.h_offset + i] = val.clone();
                }
            }
            if let Some(w) = &x.omega {
                for (i, val) in w.values.iter().enumerate() {
                    v.rat_part[blk.omega_offset + i] = val.clone();
                }
            }
        }
        v
    }

    pub fn unpack(&self, v: &MixedVec) -> Vec<(usize, DCTriple)> {
        let n = v.degree;
        let mut out = Vec::new();
        for blk in &self.layouts[n] {
            let level = self.nerve.level(blk.q);
            let c = Cochain::from_values(
                level,
                blk.p,
                Ring::Int,
                (0..blk.c_len)
                    .map(|i| rat_of(&v.int_part[blk.int_offset + i]))
                    .collect(),
            )
            .expect("c shape");
            let h = if blk.p == 0 {
                Cochain::zero(level, 0, Ring::Rat)
            } else {
                Cochain::from_values(
                    level,
                    blk.p - 1,
                    Ring::Rat,
                    (0..blk.h_len)
                        .map(|i| v.rat_part[blk.h_offset + i].clone())
                        .collect(),
                )
                .expect("h shape")
            };
            let omega = if blk.omega_len > 0 || blk.p >= self.s {
                Some(
                    Cochain::from_values(
                        level,
                        blk.p,
                        Ring::Rat,
                        (0..blk.omega_len)
                            .map(|i| v.rat_part[blk.omega_offset + i].clone())
                            .collect(),
                    )
                    .expect("omega shape"),
                )
            } else {
                None
            };
            out.push((
                blk.q,
                DCTriple {
                    degree: blk.p,
                    c,
                    h,
                    omega,
                },
            ));
        }
        out
    }

    pub fn category(&self, degree: usize) -> Result<ChainCategory, DcError> {
        Ok(ChainCategory::new(self.mixed.clone(), degree)?)
    }
}

/// Parse the triple text format: blocks tagged `c:`, `h:`, `omega:`, each a
/// cochain in the standard cochain format. A missing omega block means the
/// zero cochain (or the truncated slot below s).
pub fn parse_triple(text: &str, dc: &DCComplex) -> Result<DCTriple, DcError> {
    let mut sections: Vec<(String, Vec<String>)> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = crate::complex::strip_comment(raw).trim().to_string();
        if line.is_empty() {
            continue;
        }
        match line.as_str() {
            "c:" | "h:" | "omega:" => {
                sections.push((line.trim_end_matches(':').to_string(), Vec::new()))
            }
            _ => match sections.last_mut() {
                Some((_, lines)) => lines.push(line),
                None => {
                    return Err(DcError::Parse {
                        line: lineno + 1,
                        msg: "expected a `c:`, `h:`, or `omega:` block header".into(),
                    })
                }
            },
        }
    }
    let find = |tag: &str| -> Option<String> {
        sections
            .iter()
            .find(|(t, _)| t == tag)
            .map(|(_, lines)| lines.join("\n"))
    };
    let c_text = find("c").ok_or(DcError::Parse {
        line: 1,
        msg: "missing `c:` block".into(),
    })?;
    let c = crate::complex::parse_cochain(&c_text, &dc.base)?;
    let degree = c.degree;
    let h = match find("h") {
        Some(t) => crate::complex::parse_cochain(&t, &dc.base)?,
        None => Cochain::zero(&dc.base, degree.saturating_sub(1), Ring::Rat),
    };
    let omega = match find("omega") {
        Some(t) => Some(crate::complex::parse_cochain(&t, &dc.base)?),
        None if degree >= dc.s => Some(Cochain::zero(&dc.base, degree, Ring::Rat)),
        None => None,
    };
    dc.triple(degree, c, h.with_ring(Ring::Rat)?, omega)
}

pub fn serialize_triple(x: &DCTriple) -> String {
    let mut out = String::new();
    out.push_str("c:\n");
    out.push_str(&crate::complex::serialize_cochain(&x.c));
    out.push_str("h:\n");
    out.push_str(&crate::complex::serialize_cochain(&x.h));
    if let Some(w) = &x.omega {
        out.push_str("omega:\n");
        out.push_str(&crate::complex::serialize_cochain(w));
    }
    out
}

#[cfg(test)]
mod tests;

//! The chain-category engine.
//!
//! For a bounded complex A of mixed Z/Q modules and a degree n, the category
//! has n-cocycles as objects and (n-1)-cochains modulo coboundaries of
//! (n-2)-cochains as morphisms; composition is addition, so everything is
//! invertible. Objects are never enumerated: the engine is a set of exact
//! decision procedures backed by mixed integer/rational solves.

use crate::exactalg::mixed::{
    h_map_bijective, MixedComplex, MixedDiff, MixedMap, MixedModule, MixedVec,
};
use crate::exactalg::{AbGroupPresentation, AlgError};
use crate::scalar::Rat;

#[derive(Debug, thiserror::Error)]
pub enum CatError {
    #[error("not a cocycle")]
    NotACocycle,
    #[error("mismatched category")]
    WrongCategory,
    #[error("composition mismatch: target of f differs from source of g")]
    ComposeMismatch,
    #[error("the given map is not a chain map")]
    NotAChainMap,
    #[error("the given blocks are not a homotopy between the two maps")]
    NotAHomotopy,
    #[error("algebra failure: {0}")]
    Alg(#[from] AlgError),
}

/// The category of n-cocycles of a mixed complex.
#[derive(Debug, Clone)]
pub struct ChainCategory {
    pub complex: MixedComplex,
    pub degree: usize,
}

/// An object: a degree-n cocycle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatObject {
    pub cocycle: MixedVec,
}

/// A morphism between two objects: a representative (n-1)-cochain b with
/// db = target - source. Representatives are compared modulo coboundaries.
#[derive(Debug, Clone)]
pub struct CatMorphism {
    pub source: CatObject,
    pub target: CatObject,
    pub representative: MixedVec,
}

impl ChainCategory {
    pub fn new(complex: MixedComplex, degree: usize) -> Result<Self, CatError> {
        complex.validate()?;
        Ok(ChainCategory { complex, degree })
    }

    pub fn object(&self, z: MixedVec) -> Result<CatObject, CatError> {
        if z.degree != self.degree || !self.complex.is_cocycle(&z) {
            return Err(CatError::NotACocycle);
        }
        Ok(CatObject { cocycle: z })
    }

    pub fn zero_object(&self) -> CatObject {
        CatObject {
            cocycle: MixedVec::zero(self.degree, self.complex.module(self.degree)),
        }
    }

    /// A morphism from z to z' iff they are cohomologous; exact decision.
    pub fn hom_exists(
        &self,
        z: &CatObject,
        z2: &CatObject,
    ) -> Result<Option<CatMorphism>, CatError> {
        let diff = z2.cocycle.sub(&z.cocycle);
        match self.complex.is_coboundary(&diff)? {
            None => Ok(None),
            Some(b) => Ok(Some(CatMorphism {
                source: z.clone(),
                target: z2.clone(),
                representative: b,
            })),
        }
    }

    pub fn identity(&self, z: &CatObject) -> CatMorphism {
        let module = if self.degree == 0 {
            MixedModule::zero()
        } else {
            self.complex.module(self.degree - 1)
        };
        CatMorphism {
            source: z.clone(),
            target: z.clone(),
            representative: MixedVec::zero(self.degree.saturating_sub(1), module),
        }
    }

    /// Composition is addition of representatives.
    pub fn compose(&self, f: &CatMorphism, g: &CatMorphism) -> Result<CatMorphism, CatError> {
        if f.target != g.source {
            return Err(CatError::ComposeMismatch);
        }
        Ok(CatMorphism {
            source: f.source.clone(),
            target: g.target.clone(),
            representative: f.representative.add(&g.representative),
        })
    }

    pub fn inverse(&self, f: &CatMorphism) -> CatMorphism {
        CatMorphism {
            source: f.target.clone(),
            target: f.source.clone(),
            representative: f.representative.neg(),
        }
    }

    /// A candidate representative b is a morphism z -> z' iff db = z' - z.
    pub fn is_morphism(&self, z: &CatObject, z2: &CatObject, b: &MixedVec) -> bool {
        if self.degree == 0 {
            return z == z2;
        }
        if b.degree != self.degree - 1 {
            return false;
        }
        let db = self.complex.apply_d(b);
        db == z2.cocycle.sub(&z.cocycle)
    }

    /// Two representatives are the same morphism iff they differ by the
    /// coboundary of an (n-2)-cochain.
    pub fn morphisms_equal(&self, f: &CatMorphism, g: &CatMorphism) -> Result<bool, CatError> {
        if f.source != g.source || f.target != g.target {
            return Ok(false);
        }
        let diff = g.representative.sub(&f.representative);
        Ok(self.complex.is_coboundary(&diff)?.is_some())
    }

    /// The automorphism group of every object: H^{n-1} of the complex.
    pub fn automorphisms(&self, _z: &CatObject) -> Result<AbGroupPresentation, CatError> {
        if self.degree == 0 {
            return Ok(AbGroupPresentation::trivial());
        }
        Ok(self.complex.cohomology(self.degree - 1)?)
    }

    /// Presentation of the isomorphism classes of objects: H^n.
    pub fn class_group(&self) -> Result<AbGroupPresentation, CatError> {
        Ok(self.complex.cohomology(self.degree)?)
    }
}

/// A functor induced by a chain map: z -> phi(z) on objects, b -> phi(b) on
/// representatives.
pub struct InducedFunctor<'a> {
    pub source: &'a ChainCategory,
    pub target: &'a ChainCategory,
    pub map: MixedMap,
}

impl<'a> InducedFunctor<'a> {
    pub fn new(
        source: &'a ChainCategory,
        target: &'a ChainCategory,
        map: MixedMap,
    ) -> Result<Self, CatError> {
        if source.degree != target.degree {
            return Err(CatError::WrongCategory);
        }
        if !map.commutes(&source.complex, &target.complex) {
            return Err(CatError::NotAChainMap);
        }
        Ok(InducedFunctor {
            source,
            target,
            map,
        })
    }

    pub fn apply_object(&self, z: &CatObject) -> Result<CatObject, CatError> {
        self.target.object(self.map.apply(&z.cocycle))
    }

    pub fn apply_morphism(&self, f: &CatMorphism) -> Result<CatMorphism, CatError> {
        Ok(CatMorphism {
            source: self.apply_object(&f.source)?,
            target: self.apply_object(&f.target)?,
            representative: self.map.apply(&f.representative),
        })
    }

    /// Equivalence test: the induced maps on H^n and H^{n-1} must both be
    /// bijections. Returns the verdict with the two presentation pairs
    /// (source, target) in degrees n and n-1 as witnesses.
    pub fn is_equivalence(&self) -> Result<EquivalenceReport, CatError> {
        let n = self.source.degree;
        let on_classes = h_map_bijective(&self.source.complex, &self.target.complex, &self.map, n)?;
        let on_automorphisms = if n == 0 {
            true
        } else {
            h_map_bijective(&self.source.complex, &self.target.complex, &self.map, n - 1)?
        };
        Ok(EquivalenceReport {
            equivalence: on_classes && on_automorphisms,
            on_classes,
            on_automorphisms,
            class_groups: (self.source.class_group()?, self.target.class_group()?),
            automorphism_groups: (
                self.source.automorphisms(&self.source.zero_object())?,
                self.target.automorphisms(&self.target.zero_object())?,
            ),
        })
    }
}

#[derive(Debug)]
pub struct EquivalenceReport {
    pub equivalence: bool,
    pub on_classes: bool,
    pub on_automorphisms: bool,
    pub class_groups: (AbGroupPresentation, AbGroupPresentation),
    pub automorphism_groups: (AbGroupPresentation, AbGroupPresentation),
}

/// A chain homotopy k between chain maps f, g : A -> B, with blocks
/// k_n : A_n -> B_{n-1}, satisfying g - f = dk + kd.
pub struct Homotopy {
    /// blocks[n] maps degree n of the source to degree n-1 of the target;
    /// blocks[0] maps into the zero module
    pub blocks: Vec<MixedDiff>,
}

impl Homotopy {
    pub fn apply(&self, v: &MixedVec) -> MixedVec {
        let block = &self.blocks[v.degree];
        let (int_part, rat_part) = block.apply(v);
        MixedVec {
            degree: v.degree.saturating_sub(1),
            int_part,
            rat_part,
        }
    }

    /// Exact check of g - f = dk + kd on the standard generators of every
    /// degree.
    pub fn verifies(
        &self,
        src: &MixedComplex,
        tgt: &MixedComplex,
        f: &MixedMap,
        g: &MixedMap,
    ) -> bool {
        for n in 0..src.modules.len() {
            if n >= self.blocks.len() {
                return false;
            }
            let module = src.module(n);
            let mut gens: Vec<MixedVec> = Vec::new();
            for i in 0..module.int_rank {
                let mut v = MixedVec::zero(n, module);
                v.int_part[i] = crate::scalar::int(1);
                gens.push(v);
            }
            for i in 0..module.rat_rank {
                let mut v = MixedVec::zero(n, module);
                v.rat_part[i] = Rat::from_integer(crate::scalar::int(1));
                gens.push(v);
            }
            for v in gens {
                let lhs = g.apply(&v).sub(&f.apply(&v));
                // d(k v): k v lives in degree n-1 of the target
                let kv = self.apply(&v);
                let dkv = if n == 0 {
                    MixedVec::zero(n, tgt.module(n))
                } else {
                    tgt.apply_d(&kv)
                };
                let dv = src.apply_d(&v);
                let kdv = if dv.degree < self.blocks.len() {
                    self.apply(&dv)
                } else {
                    MixedVec::zero(n, tgt.module(n))
                };
                let rhs = dkv.add(&kdv);
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }
}

/// The natural transformation induced by a homotopy: on each object z, the
/// morphism with representative k(z) from f(z) to g(z).
pub struct InducedNatTrans<'a> {
    pub f: &'a InducedFunctor<'a>,
    pub g: &'a InducedFunctor<'a>,
    pub homotopy: &'a Homotopy,
}

impl<'a> InducedNatTrans<'a> {
    pub fn new(
        f: &'a InducedFunctor<'a>,
        g: &'a InducedFunctor<'a>,
        homotopy: &'a Homotopy,
    ) -> Result<Self, CatError> {
        if !homotopy.verifies(&f.source.complex, &f.target.complex, &f.map, &g.map) {
            return Err(CatError::NotAHomotopy);
        }
        Ok(InducedNatTrans { f, g, homotopy })
    }

    /// Component at an object z: d(k z) = g(z) - f(z) because dz = 0.
    pub fn component(&self, z: &CatObject) -> Result<CatMorphism, CatError> {
        let source = self.f.apply_object(z)?;
        let target = self.g.apply_object(z)?;
        let rep = self.homotopy.apply(&z.cocycle);
        let cat = self.f.target;
        if !cat.is_morphism(&source, &target, &rep) {
            return Err(CatError::NotAHomotopy);
        }
        Ok(CatMorphism {
            source,
            target,
            representative: rep,
        })
    }

    /// Naturality: for a morphism m : z -> z', the square
    /// g(m) o component(z) = component(z') o f(m) commutes up to
    /// representative equivalence.
    pub fn naturality_holds(&self, m: &CatMorphism) -> Result<bool, CatError> {
        let cat = self.f.target;
        let left = cat.compose(&self.component(&m.source)?, &self.g.apply_morphism(m)?)?;
        let right = cat.compose(&self.f.apply_morphism(m)?, &self.component(&m.target)?)?;
        cat.morphisms_equal(&left, &right)
    }
}

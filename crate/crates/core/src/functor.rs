//! Functors out of presentations and between finite categories.

use thiserror::Error;

use crate::category::{FiniteCategory, Mor, Obj};
use crate::quiver::{EdgeId, Path, Presentation, PresentationMap, Quiver, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FunctorError {
    #[error("functor has no image for vertex {0}")]
    UnknownVertex(VertexId),
    #[error("functor has no image for edge {0}")]
    UnknownEdge(EdgeId),
    #[error("image object {0} is not an object of the codomain")]
    ObjectOutOfRange(Obj),
    #[error("image morphism {0} is not a morphism of the codomain")]
    MorphismOutOfRange(Mor),
    #[error("image of edge {0} has the wrong domain or codomain")]
    EdgeTyping(EdgeId),
    #[error("relation {relation} fails: sides evaluate to {lhs} and {rhs}")]
    RelationViolated { relation: usize, lhs: Mor, rhs: Mor },
    #[error("image of morphism {0} has the wrong domain or codomain")]
    MorphismTyping(Mor),
    #[error("identity of object {0} is not preserved")]
    IdentityNotPreserved(Obj),
    #[error("composite {g} o {f} is not preserved")]
    CompositionNotPreserved { g: Mor, f: Mor },
    #[error("functor tables do not fit the given categories")]
    DomainMismatch,
    #[error("path does not belong to the quiver")]
    InvalidPath,
}

/// A functor out of a presentation, given by images of the generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FpFunctor {
    object_map: Vec<Obj>,
    edge_map: Vec<Mor>,
}

impl FpFunctor {
    pub fn new(object_map: Vec<Obj>, edge_map: Vec<Mor>) -> Self {
        FpFunctor { object_map, edge_map }
    }

    pub fn object_map(&self) -> &[Obj] {
        &self.object_map
    }

    pub fn edge_map(&self) -> &[Mor] {
        &self.edge_map
    }

    pub fn object(&self, v: VertexId) -> Obj {
        self.object_map[v]
    }

    pub fn edge(&self, e: EdgeId) -> Mor {
        self.edge_map[e]
    }

    /// Image of a path under the induced functor on the free category.
    pub fn evaluate(&self, target: &FiniteCategory, path: &Path) -> Result<Mor, FunctorError> {
        let start = *self
            .object_map
            .get(path.source())
            .ok_or(FunctorError::UnknownVertex(path.source()))?;
        if start >= target.objects() {
            return Err(FunctorError::ObjectOutOfRange(start));
        }
        let mut acc = target.identity(start);
        for &e in path.edges() {
            let image = *self.edge_map.get(e).ok_or(FunctorError::UnknownEdge(e))?;
            if image >= target.morphisms() {
                return Err(FunctorError::MorphismOutOfRange(image));
            }
            acc = target.compose(image, acc).ok_or(FunctorError::EdgeTyping(e))?;
        }
        Ok(acc)
    }

    /// Checks typing of generator images and every relation.
    pub fn check(&self, presentation: &Presentation, target: &FiniteCategory) -> Result<(), FunctorError> {
        let quiver = presentation.quiver();
        self.check_typing(quiver, target)?;
        for (relation, (lhs, rhs)) in presentation.relations().iter().enumerate() {
            let l = self.evaluate(target, lhs)?;
            let r = self.evaluate(target, rhs)?;
            if l != r {
                return Err(FunctorError::RelationViolated { relation, lhs: l, rhs: r });
            }
        }
        Ok(())
    }

    fn check_typing(&self, quiver: &Quiver, target: &FiniteCategory) -> Result<(), FunctorError> {
        if self.object_map.len() != quiver.vertex_count() {
            return Err(FunctorError::UnknownVertex(self.object_map.len().min(quiver.vertex_count())));
        }
        if self.edge_map.len() != quiver.edge_count() {
            return Err(FunctorError::UnknownEdge(self.edge_map.len().min(quiver.edge_count())));
        }
        if let Some(&x) = self.object_map.iter().find(|&&x| x >= target.objects()) {
            return Err(FunctorError::ObjectOutOfRange(x));
        }
        for (e, edge) in quiver.edges().iter().enumerate() {
            let f = self.edge_map[e];
            if f >= target.morphisms() {
                return Err(FunctorError::MorphismOutOfRange(f));
            }
            if target.dom(f) != self.object_map[edge.source] || target.cod(f) != self.object_map[edge.target] {
                return Err(FunctorError::EdgeTyping(e));
            }
        }
        Ok(())
    }

    /// Post-composes with a functor table out of this functor's codomain.
    pub fn then(&self, next: &FunctorTable) -> Result<FpFunctor, FunctorError> {
        let object_map = self
            .object_map
            .iter()
            .map(|&x| next.object_map.get(x).copied().ok_or(FunctorError::DomainMismatch))
            .collect::<Result<_, _>>()?;
        let edge_map = self
            .edge_map
            .iter()
            .map(|&f| next.morphism_map.get(f).copied().ok_or(FunctorError::DomainMismatch))
            .collect::<Result<_, _>>()?;
        Ok(FpFunctor { object_map, edge_map })
    }

    /// Pre-composes with a presentation map `source -> (this functor's presentation)`.
    pub fn after_map(&self, map: &PresentationMap, target: &FiniteCategory) -> Result<FpFunctor, FunctorError> {
        let object_map = map
            .vertex_map
            .iter()
            .map(|&v| self.object_map.get(v).copied().ok_or(FunctorError::UnknownVertex(v)))
            .collect::<Result<_, _>>()?;
        let edge_map = map
            .edge_map
            .iter()
            .map(|path| self.evaluate(target, path))
            .collect::<Result<_, _>>()?;
        Ok(FpFunctor { object_map, edge_map })
    }
}

/// Free-function form of [`FpFunctor::evaluate`].
pub fn evaluate_functor(functor: &FpFunctor, target: &FiniteCategory, path: &Path) -> Result<Mor, FunctorError> {
    functor.evaluate(target, path)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FunctorProperties {
    pub faithful: bool,
    pub full: bool,
    pub essentially_surjective: bool,
}

/// A functor between finite categories, given on every object and morphism.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FunctorTable {
    object_map: Vec<Obj>,
    morphism_map: Vec<Mor>,
}

impl FunctorTable {
    pub fn new(object_map: Vec<Obj>, morphism_map: Vec<Mor>) -> Self {
        FunctorTable {
            object_map,
            morphism_map,
        }
    }

    pub fn identity(category: &FiniteCategory) -> Self {
        FunctorTable {
            object_map: (0..category.objects()).collect(),
            morphism_map: (0..category.morphisms()).collect(),
        }
    }

    /// The functor sending everything to `x` and its identity.
    pub fn constant(source: &FiniteCategory, target: &FiniteCategory, x: Obj) -> Self {
        FunctorTable {
            object_map: vec![x; source.objects()],
            morphism_map: vec![target.identity(x); source.morphisms()],
        }
    }

    pub fn object_map(&self) -> &[Obj] {
        &self.object_map
    }

    pub fn morphism_map(&self) -> &[Mor] {
        &self.morphism_map
    }

    pub fn object(&self, x: Obj) -> Obj {
        self.object_map[x]
    }

    pub fn morphism(&self, f: Mor) -> Mor {
        self.morphism_map[f]
    }

    /// Checks that this table is a functor `source -> target`.
    pub fn validate(&self, source: &FiniteCategory, target: &FiniteCategory) -> Result<(), FunctorError> {
        if self.object_map.len() != source.objects() || self.morphism_map.len() != source.morphisms() {
            return Err(FunctorError::DomainMismatch);
        }
        if let Some(&x) = self.object_map.iter().find(|&&x| x >= target.objects()) {
            return Err(FunctorError::ObjectOutOfRange(x));
        }
        if let Some(&f) = self.morphism_map.iter().find(|&&f| f >= target.morphisms()) {
            return Err(FunctorError::MorphismOutOfRange(f));
        }
        for f in 0..source.morphisms() {
            let image = self.morphism_map[f];
            if target.dom(image) != self.object_map[source.dom(f)] || target.cod(image) != self.object_map[source.cod(f)]
            {
                return Err(FunctorError::MorphismTyping(f));
            }
        }
        for x in 0..source.objects() {
            if self.morphism_map[source.identity(x)] != target.identity(self.object_map[x]) {
                return Err(FunctorError::IdentityNotPreserved(x));
            }
        }
        for g in 0..source.morphisms() {
            for f in 0..source.morphisms() {
                if let Some(gf) = source.compose(g, f) {
                    if target.compose(self.morphism_map[g], self.morphism_map[f]) != Some(self.morphism_map[gf]) {
                        return Err(FunctorError::CompositionNotPreserved { g, f });
                    }
                }
            }
        }
        Ok(())
    }

    /// `self` first, then `next`.
    pub fn then(&self, next: &FunctorTable) -> Result<FunctorTable, FunctorError> {
        let object_map = self
            .object_map
            .iter()
            .map(|&x| next.object_map.get(x).copied().ok_or(FunctorError::DomainMismatch))
            .collect::<Result<_, _>>()?;
        let morphism_map = self
            .morphism_map
            .iter()
            .map(|&f| next.morphism_map.get(f).copied().ok_or(FunctorError::DomainMismatch))
            .collect::<Result<_, _>>()?;
        Ok(FunctorTable {
            object_map,
            morphism_map,
        })
    }

    pub fn properties(&self, source: &FiniteCategory, target: &FiniteCategory) -> FunctorProperties {
        let src_homs = source.hom_sets();
        let tgt_homs = target.hom_sets();
        let n = source.objects();
        let mut faithful = true;
        let mut full = true;
        for x in 0..n {
            for y in 0..n {
                let mut images: Vec<Mor> = src_homs[x * n + y].iter().map(|&f| self.morphism_map[f]).collect();
                let before = images.len();
                images.sort_unstable();
                images.dedup();
                if images.len() != before {
                    faithful = false;
                }
                let (fx, fy) = (self.object_map[x], self.object_map[y]);
                if images.len() != tgt_homs[fx * target.objects() + fy].len() {
                    full = false;
                }
            }
        }
        let essentially_surjective = (0..target.objects())
            .all(|y| self.object_map.iter().any(|&fx| target.isomorphic_objects(fx, y)));
        FunctorProperties {
            faithful,
            full,
            essentially_surjective,
        }
    }
}

/// Free-function form of [`FunctorTable::properties`].
pub fn functor_properties(functor: &FunctorTable, source: &FiniteCategory, target: &FiniteCategory) -> FunctorProperties {
    functor.properties(source, target)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{group_category, product_category};
    use crate::group::GroupTable;

    fn z2_presentation() -> Presentation {
        let mut q = Quiver::new();
        let v = q.add_vertex("v").unwrap();
        let a = q.add_edge("a", v, v).unwrap();
        let aa = Path::from_edges(&q, vec![a, a]).unwrap();
        Presentation::new(q, vec![(aa, Path::identity(v))]).unwrap()
    }

    #[test]
    fn empty_path_maps_to_identity() {
        let z2 = group_category(&GroupTable::cyclic(2));
        let f = FpFunctor::new(vec![0], vec![1]);
        assert_eq!(f.evaluate(&z2, &Path::identity(0)).unwrap(), z2.identity(0));
    }

    #[test]
    fn evaluation_folds_the_table() {
        let p = z2_presentation();
        let z2 = group_category(&GroupTable::cyclic(2));
        let f = FpFunctor::new(vec![0], vec![1]);
        f.check(&p, &z2).unwrap();
        let aaa = Path::from_edges(p.quiver(), vec![0, 0, 0]).unwrap();
        assert_eq!(f.evaluate(&z2, &aaa).unwrap(), 1);
    }

    #[test]
    fn relation_violation_detected() {
        let p = z2_presentation();
        let z3 = group_category(&GroupTable::cyclic(3));
        let f = FpFunctor::new(vec![0], vec![1]);
        assert!(matches!(f.check(&p, &z3), Err(FunctorError::RelationViolated { .. })));
    }

    #[test]
    fn identity_functor_properties() {
        let z2 = group_category(&GroupTable::cyclic(2));
        let id = FunctorTable::identity(&z2);
        id.validate(&z2, &z2).unwrap();
        assert_eq!(
            id.properties(&z2, &z2),
            FunctorProperties {
                faithful: true,
                full: true,
                essentially_surjective: true
            }
        );
    }

    #[test]
    fn trivial_endofunctor_properties() {
        let z2 = group_category(&GroupTable::cyclic(2));
        let trivial = FunctorTable::constant(&z2, &z2, 0);
        trivial.validate(&z2, &z2).unwrap();
        let props = trivial.properties(&z2, &z2);
        assert!(!props.faithful);
        assert!(!props.full);
        assert!(props.essentially_surjective);
    }

    #[test]
    fn inclusion_into_product_is_faithful_not_full() {
        let z2 = group_category(&GroupTable::cyclic(2));
        let z3 = group_category(&GroupTable::cyclic(3));
        let prod = product_category(&z2, &z3);
        let inclusion = FunctorTable::new(vec![0], (0..2).map(|x| prod.pair_morphism(x, z3.identity(0))).collect());
        inclusion.validate(&z2, &prod.category).unwrap();
        let props = inclusion.properties(&z2, &prod.category);
        assert!(props.faithful);
        assert!(!props.full);
        // projection after inclusion is the identity
        let back = inclusion.then(&prod.first).unwrap();
        assert_eq!(back, FunctorTable::identity(&z2));
    }

    #[test]
    fn composition_with_identity_is_neutral() {
        let z3 = group_category(&GroupTable::cyclic(3));
        let f = FunctorTable::new(vec![0], vec![0, 2, 1]);
        f.validate(&z3, &z3).unwrap();
        let id = FunctorTable::identity(&z3);
        assert_eq!(f.then(&id).unwrap(), f);
        assert_eq!(id.then(&f).unwrap(), f);
        let g = FpFunctor::new(vec![0], vec![1]);
        assert_eq!(g.then(&id).unwrap(), g);
    }

    #[test]
    fn mismatched_tables_rejected() {
        let z2 = group_category(&GroupTable::cyclic(2));
        let f = FunctorTable::identity(&z2);
        let short = FunctorTable::new(vec![0], vec![0]);
        assert_eq!(f.then(&short), Err(FunctorError::DomainMismatch));
    }
}

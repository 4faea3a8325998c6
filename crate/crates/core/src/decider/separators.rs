use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use thiserror::Error;

use crate::category::{FiniteCategory, Mor};
use crate::constructions::{graph_category, labeled_matrix_category, product_category, truncated_word_category, Digraph, IntMatrix, LabeledCategory};
use crate::functor::{FpFunctor, FunctorError, FunctorTable};
use crate::quiver::{Path, Presentation, PresentationMap, Quiver};

use super::{Budget, DecideError, Decider, SeparatorWitness, Verdict, WitnessError};

/// Largest truncated-word category built with one letter per edge; above
/// it the edges are collapsed onto at most two letters.
pub const FREE_WORD_LIMIT: usize = 256;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeparatorError {
    #[error("paths have the same endpoints")]
    EndpointsAgree,
    #[error("paths are equal")]
    PathsEqual,
    #[error("paths are not parallel")]
    NotParallel,
    #[error("matrices are equal")]
    MatricesEqual,
    #[error("matrices have shapes {0}x{1} and {2}x{3}")]
    ShapeMismatch(usize, usize, usize, usize),
    #[error("rank bound {bound} is below the matrix size {needed}")]
    RankTooSmall { bound: usize, needed: usize },
    #[error("functor is not faithful")]
    NotFaithful,
    #[error("functor is invalid: {0}")]
    Functor(#[from] FunctorError),
    #[error("witness does not separate the images")]
    Witness(#[from] WitnessError),
    #[error("invalid path: {0}")]
    InvalidPath(#[from] crate::quiver::PathError),
}

fn witness_for(
    presentation: &Presentation,
    category: FiniteCategory,
    functor: FpFunctor,
    p: &Path,
    q: &Path,
) -> Result<SeparatorWitness, SeparatorError> {
    let images = (functor.evaluate(&category, p)?, functor.evaluate(&category, q)?);
    let witness = SeparatorWitness {
        category,
        functor,
        images,
    };
    witness.verify(presentation, p, q)?;
    Ok(witness)
}

/// Separates paths with different endpoints by a functor into the complete
/// graph category on the (at most four) vertices involved.
pub fn endpoint_separator(presentation: &Presentation, p: &Path, q: &Path) -> Result<SeparatorWitness, SeparatorError> {
    let quiver = presentation.quiver();
    quiver.check_path(p)?;
    quiver.check_path(q)?;
    if p.is_parallel_to(q) {
        return Err(SeparatorError::EndpointsAgree);
    }
    let mut involved = Vec::new();
    for v in [p.source(), p.target(), q.source(), q.target()] {
        if !involved.contains(&v) {
            involved.push(v);
        }
    }
    let category = graph_category(&Digraph::complete(involved.len()));
    let object_map: Vec<usize> = (0..quiver.vertex_count())
        .map(|v| involved.iter().position(|&w| w == v).unwrap_or(0))
        .collect();
    let hom = category.hom_sets();
    let k = involved.len();
    let edge_map = quiver
        .edges()
        .iter()
        .map(|e| hom[object_map[e.source] * k + object_map[e.target]][0])
        .collect();
    witness_for(presentation, category, FpFunctor::new(object_map, edge_map), p, q)
}

fn word_category_size(letters: usize, max_len: usize) -> Option<usize> {
    let mut total: usize = 1;
    let mut layer: usize = 1;
    for _ in 0..max_len {
        layer = layer.checked_mul(letters)?;
        total = total.checked_add(layer)?;
    }
    total.checked_add(1)
}

/// Separates distinct parallel paths of the free category on `quiver` by a
/// functor into a truncated-word monoid with `k = max(len p, len q)`.
///
/// Each edge gets its own letter while the monoid stays within
/// [`FREE_WORD_LIMIT`] morphisms. Otherwise equal-length paths use the
/// letter `0` for the first edge where they differ and `1` for all other
/// edges, and paths of different lengths send every edge to `0`.
pub fn separator_free(quiver: &Quiver, p: &Path, q: &Path) -> Result<SeparatorWitness, SeparatorError> {
    quiver.check_path(p)?;
    quiver.check_path(q)?;
    if !p.is_parallel_to(q) {
        return Err(SeparatorError::NotParallel);
    }
    if p == q {
        return Err(SeparatorError::PathsEqual);
    }
    let k = p.len().max(q.len());
    let edges = quiver.edge_count();
    let (letters, letter_of): (usize, Vec<usize>) =
        if word_category_size(edges, k).is_some_and(|size| size <= FREE_WORD_LIMIT) {
            (edges, (0..edges).collect())
        } else if p.len() == q.len() {
            let i = (0..p.len()).find(|&i| p.edges()[i] != q.edges()[i]).expect("paths differ");
            let marked = p.edges()[i];
            (2, (0..edges).map(|e| usize::from(e != marked)).collect())
        } else {
            (1, vec![0; edges])
        };
    let words = truncated_word_category(letters, k);
    let edge_map = letter_of
        .iter()
        .map(|&l| words.morphism(&Some(vec![l])).expect("letter is a word"))
        .collect();
    let functor = FpFunctor::new(vec![0; quiver.vertex_count()], edge_map);
    let presentation = Presentation::free(quiver.clone());
    witness_for(&presentation, words.into_category(), functor, p, q)
}

fn matrix_categories() -> &'static Mutex<HashMap<(u64, usize), Arc<LabeledCategory<IntMatrix>>>> {
    static CACHE: OnceLock<Mutex<HashMap<(u64, usize), Arc<LabeledCategory<IntMatrix>>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn cached_matrix_category(q: u64, max_rank: usize) -> Arc<LabeledCategory<IntMatrix>> {
    let mut cache = matrix_categories().lock().expect("cache lock");
    cache
        .entry((q, max_rank))
        .or_insert_with(|| Arc::new(labeled_matrix_category(q, max_rank)))
        .clone()
}

/// Entrywise reduction mod a prime into the finite matrix category.
#[derive(Debug, Clone)]
pub struct MatrixSeparator {
    pub prime: u64,
    pub category: Arc<LabeledCategory<IntMatrix>>,
    pub image_a: Mor,
    pub image_b: Mor,
}

impl MatrixSeparator {
    /// Morphism of the witness category representing `m` mod the prime.
    pub fn reduction_image(&self, m: &IntMatrix) -> Option<Mor> {
        self.category.morphism(&m.reduce(self.prime))
    }
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// Separates two integer matrices of the same shape by reducing modulo the
/// least prime that keeps some differing entry apart.
pub fn separator_matrix(a: &IntMatrix, b: &IntMatrix, max_rank: usize) -> Result<MatrixSeparator, SeparatorError> {
    if (a.rows(), a.cols()) != (b.rows(), b.cols()) {
        return Err(SeparatorError::ShapeMismatch(a.rows(), a.cols(), b.rows(), b.cols()));
    }
    let needed = a.rows().max(a.cols());
    if max_rank < needed {
        return Err(SeparatorError::RankTooSmall { bound: max_rank, needed });
    }
    let diffs: Vec<u64> = a
        .entries()
        .iter()
        .zip(b.entries())
        .filter(|(x, y)| x != y)
        .map(|(x, y)| x.abs_diff(*y))
        .collect();
    let largest = *diffs.iter().max().ok_or(SeparatorError::MatricesEqual)?;
    // a prime not dividing a nonzero difference d exists below 2d + 3
    let prime = (2..=2 * largest + 3)
        .filter(|&p| is_prime(p))
        .find(|&p| diffs.iter().any(|d| d % p != 0))
        .expect("some prime does not divide the difference");
    let category = cached_matrix_category(prime, max_rank);
    let image_a = category.morphism(&a.reduce(prime)).expect("reduced matrix is a morphism");
    let image_b = category.morphism(&b.reduce(prime)).expect("reduced matrix is a morphism");
    Ok(MatrixSeparator {
        prime,
        category,
        image_a,
        image_b,
    })
}

/// A functor table out of a finite category separating two morphisms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableSeparator {
    pub category: FiniteCategory,
    pub functor: FunctorTable,
    pub images: (Mor, Mor),
}

impl TableSeparator {
    pub fn verify(&self, source: &FiniteCategory, f: Mor, g: Mor) -> Result<(), SeparatorError> {
        self.functor.validate(source, &self.category)?;
        let images = (self.functor.morphism(f), self.functor.morphism(g));
        if images != self.images || images.0 == images.1 {
            return Err(SeparatorError::Witness(WitnessError::NotSeparated(images.0)));
        }
        Ok(())
    }
}

/// Given a faithful `G: source -> target` and a separator of `G f`, `G g`,
/// returns the composite separator of `f`, `g`.
pub fn transport_table_separator(
    g_functor: &FunctorTable,
    source: &FiniteCategory,
    target: &FiniteCategory,
    witness: &TableSeparator,
    f: Mor,
    g: Mor,
) -> Result<TableSeparator, SeparatorError> {
    g_functor.validate(source, target)?;
    if !g_functor.properties(source, target).faithful {
        return Err(SeparatorError::NotFaithful);
    }
    witness.verify(target, g_functor.morphism(f), g_functor.morphism(g))?;
    let functor = g_functor.then(&witness.functor)?;
    let result = TableSeparator {
        category: witness.category.clone(),
        images: (functor.morphism(f), functor.morphism(g)),
        functor,
    };
    result.verify(source, f, g)?;
    Ok(result)
}

/// Pulls a separator of `map(p)`, `map(q)` back along a presentation map.
pub fn transport_separator(
    map: &PresentationMap,
    source: &Presentation,
    target: &Presentation,
    witness: &SeparatorWitness,
    p: &Path,
    q: &Path,
) -> Result<SeparatorWitness, SeparatorError> {
    map.check(source.quiver(), target.quiver())?;
    witness.verify(target, &map.apply(p), &map.apply(q))?;
    let functor = witness.functor.after_map(map, &witness.category)?;
    witness_for(source, witness.category.clone(), functor, p, q)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeparateError {
    #[error("paths {0} and {1} are congruent")]
    Congruent(usize, usize),
    #[error("no verdict for paths {0} and {1} within the budget")]
    Unknown(usize, usize),
    #[error(transparent)]
    Decide(#[from] DecideError),
}

/// A single functor under which a list of paths has pairwise distinct
/// images.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ManySeparator {
    pub category: FiniteCategory,
    pub functor: FpFunctor,
    pub images: Vec<Mor>,
    /// Number of product factors used.
    pub factors: usize,
}

/// Separates every pair of `paths` at once: pairwise witnesses from
/// [`Decider`] (reused when an earlier one already separates a pair), then
/// their product with the pairing functor.
pub fn separate_many(presentation: &Presentation, paths: &[Path], budget: Budget) -> Result<ManySeparator, SeparateError> {
    let decider = Decider::new(budget);
    let mut witnesses: Vec<SeparatorWitness> = Vec::new();
    for i in 0..paths.len() {
        for j in i + 1..paths.len() {
            let separated = witnesses.iter().any(|w| {
                let images = |p: &Path| w.functor.evaluate(&w.category, p).ok();
                images(&paths[i]) != images(&paths[j])
            });
            if separated {
                continue;
            }
            match decider.decide(presentation, &paths[i], &paths[j])? {
                Verdict::Distinct(w) | Verdict::NotParallel(w) => witnesses.push(w),
                Verdict::Equal(_) => return Err(SeparateError::Congruent(i, j)),
                Verdict::Unknown(_) => return Err(SeparateError::Unknown(i, j)),
            }
        }
    }
    let quiver = presentation.quiver();
    let factors = witnesses.len();
    let mut iter = witnesses.into_iter();
    let (category, functor) = match iter.next() {
        None => (
            FiniteCategory::terminal(),
            FpFunctor::new(vec![0; quiver.vertex_count()], vec![0; quiver.edge_count()]),
        ),
        Some(first) => iter.fold((first.category, first.functor), |(cat, functor), w| {
            let product = product_category(&cat, &w.category);
            let object_map = (0..quiver.vertex_count())
                .map(|v| product.pair_object(functor.object(v), w.functor.object(v)))
                .collect();
            let edge_map = (0..quiver.edge_count())
                .map(|e| product.pair_morphism(functor.edge(e), w.functor.edge(e)))
                .collect();
            (product.category, FpFunctor::new(object_map, edge_map))
        }),
    };
    let (category, perm) = category.normalized();
    let functor = FpFunctor::new(
        functor.object_map().to_vec(),
        functor.edge_map().iter().map(|&f| perm[f]).collect(),
    );
    let images = paths
        .iter()
        .map(|p| functor.evaluate(&category, p).expect("typed path"))
        .collect();
    Ok(ManySeparator {
        category,
        functor,
        images,
        factors,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::group_category;
    use crate::GroupTable;

    fn path(q: &Quiver, source: usize, edges: &[usize]) -> Path {
        Path::new(q, source, edges.to_vec()).unwrap()
    }

    #[test]
    fn endpoints_four_distinct() {
        let q = Quiver::anonymous(4, &[(0, 1), (2, 3)]).unwrap();
        let p = Presentation::free(q.clone());
        let w = endpoint_separator(&p, &path(&q, 0, &[0]), &path(&q, 2, &[1])).unwrap();
        assert_eq!((w.category.objects(), w.category.morphisms()), (4, 16));
    }

    #[test]
    fn endpoints_three_distinct() {
        let q = Quiver::anonymous(3, &[(0, 1), (0, 2)]).unwrap();
        let p = Presentation::free(q.clone());
        let w = endpoint_separator(&p, &path(&q, 0, &[0]), &path(&q, 0, &[1])).unwrap();
        assert_eq!((w.category.objects(), w.category.morphisms()), (3, 9));
        assert_eq!(
            endpoint_separator(&p, &path(&q, 0, &[0]), &path(&q, 0, &[0])),
            Err(SeparatorError::EndpointsAgree)
        );
    }

    #[test]
    fn free_examples() {
        let q = Quiver::anonymous(1, &[(0, 0), (0, 0)]).unwrap();
        let w = separator_free(&q, &path(&q, 0, &[0, 1]), &path(&q, 0, &[1, 0])).unwrap();
        assert_eq!(w.category.morphisms(), 8);
        let w = separator_free(&q, &path(&q, 0, &[0]), &path(&q, 0, &[0, 0, 0])).unwrap();
        assert_ne!(w.images.0, w.images.1);
        let w = separator_free(&q, &path(&q, 0, &[]), &path(&q, 0, &[0])).unwrap();
        assert_eq!(w.images.0, w.category.identity(0));
        assert_eq!(
            separator_free(&q, &path(&q, 0, &[1]), &path(&q, 0, &[1])).unwrap_err(),
            SeparatorError::PathsEqual
        );
    }

    #[test]
    fn free_collapses_large_alphabets() {
        let q = Quiver::anonymous(1, &[(0, 0); 4]).unwrap();
        let p = path(&q, 0, &[0, 1, 2, 3, 0, 1]);
        let r = path(&q, 0, &[0, 1, 2, 3, 1, 1]);
        let w = separator_free(&q, &p, &r).unwrap();
        assert!(w.category.morphisms() <= 128);
        let w = separator_free(&q, &p, &path(&q, 0, &[0, 1, 2])).unwrap();
        assert_eq!(w.category.morphisms(), 8);
    }

    #[test]
    fn matrix_examples() {
        let m = |s: &str| s.parse::<IntMatrix>().unwrap();
        assert_eq!(separator_matrix(&m("[[2]]"), &m("[[5]]"), 1).unwrap().prime, 2);
        assert_eq!(
            separator_matrix(&m("[[1,0],[0,1]]"), &m("[[1,0],[0,3]]"), 2).unwrap().prime,
            3
        );
        let s = separator_matrix(&m("[[0]]"), &m("[[6]]"), 1).unwrap();
        assert_eq!(s.prime, 5);
        assert_ne!(s.image_a, s.image_b);
        assert_eq!(
            separator_matrix(&m("[[1]]"), &m("[[1]]"), 1).unwrap_err(),
            SeparatorError::MatricesEqual
        );
    }

    #[test]
    fn transport_along_relabeling() {
        let q = Quiver::anonymous(2, &[(0, 1)]).unwrap();
        // swap the two vertices and reverse nothing: an isomorphic copy
        let swapped = Quiver::anonymous(2, &[(1, 0)]).unwrap();
        let map = PresentationMap {
            vertex_map: vec![1, 0],
            edge_map: vec![path(&swapped, 1, &[0])],
        };
        let source = Presentation::free(q.clone());
        let target = Presentation::free(swapped.clone());
        let (p, r) = (path(&q, 0, &[0]), path(&q, 0, &[]));
        let w = endpoint_separator(&target, &map.apply(&p), &map.apply(&r)).unwrap();
        let moved = transport_separator(&map, &source, &target, &w, &p, &r).unwrap();
        moved.verify(&source, &p, &r).unwrap();
    }

    #[test]
    fn transport_rejects_unfaithful() {
        let z2 = group_category(&GroupTable::cyclic(2));
        let trivial = FunctorTable::constant(&z2, &z2, 0);
        let witness = TableSeparator {
            category: z2.clone(),
            functor: FunctorTable::identity(&z2),
            images: (0, 1),
        };
        assert_eq!(
            transport_table_separator(&trivial, &z2, &z2, &witness, 0, 1),
            Err(SeparatorError::NotFaithful)
        );
        let id = FunctorTable::identity(&z2);
        transport_table_separator(&id, &z2, &z2, &witness, 0, 1).unwrap();
    }

    #[test]
    fn many_in_cyclic_three() {
        let q = Quiver::anonymous(1, &[(0, 0)]).unwrap();
        let a = Path::edge(&q, 0).unwrap();
        let p = Presentation::new(q.clone(), vec![(a.power(3).unwrap(), Path::identity(0))]).unwrap();
        let paths: Vec<Path> = (0..3).map(|k| a.power(k).unwrap()).collect();
        let s = separate_many(&p, &paths, Budget::default()).unwrap();
        assert_eq!(s.factors, 1);
        assert_eq!(s.category.morphisms(), 3);
        let one = separate_many(&p, &paths[..1], Budget::default()).unwrap();
        assert_eq!(one.category, FiniteCategory::terminal());
    }
}

//! Explicit finite categories: graphs, posets, groups, products, matrices
//! over integers mod `q`, truncated word monoids, and truncations of the
//! category of finite sets and the simplex category.

mod labeled;
mod matrix;

use std::collections::{BTreeSet, VecDeque};

use thiserror::Error;

use crate::category::{FiniteCategory, Mor, Obj};
use crate::functor::FunctorTable;
use crate::group::GroupTable;

pub use labeled::LabeledCategory;
pub use matrix::{IntMatrix, MatrixError};

pub const DEFAULT_FSET_SIZE: usize = 3;
pub const DEFAULT_SIMPLEX_SIZE: usize = 2;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DigraphError {
    #[error("edge ({0}, {1}) uses an undeclared vertex")]
    UnknownVertex(usize, usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PosetLaw {
    Reflexivity,
    Antisymmetry,
    Transitivity,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("not a poset: {law:?} fails at {elements:?}")]
pub struct NotAPoset {
    pub law: PosetLaw,
    pub elements: Vec<usize>,
}

/// A directed graph on vertices `0..vertices` without parallel edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    vertices: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl Digraph {
    pub fn new(vertices: usize, edges: &[(usize, usize)]) -> Result<Self, DigraphError> {
        let mut set = BTreeSet::new();
        for &(u, v) in edges {
            if u >= vertices || v >= vertices {
                return Err(DigraphError::UnknownVertex(u, v));
            }
            if !set.insert((u, v)) {
                return Err(DigraphError::DuplicateEdge(u, v));
            }
        }
        Ok(Digraph { vertices, edges: set })
    }

    /// All edges `(u, v)` with `u != v`.
    pub fn complete(vertices: usize) -> Self {
        let edges = (0..vertices)
            .flat_map(|u| (0..vertices).filter(move |&v| v != u).map(move |v| (u, v)))
            .collect();
        Digraph { vertices, edges }
    }

    pub fn vertices(&self) -> usize {
        self.vertices
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    /// `reach[u][v]`: some directed path (possibly empty) runs from `u` to `v`.
    pub fn reachability(&self) -> Vec<Vec<bool>> {
        let mut adjacency = vec![Vec::new(); self.vertices];
        for &(u, v) in &self.edges {
            adjacency[u].push(v);
        }
        (0..self.vertices)
            .map(|start| {
                let mut seen = vec![false; self.vertices];
                seen[start] = true;
                let mut queue = VecDeque::from([start]);
                while let Some(u) = queue.pop_front() {
                    for &v in &adjacency[u] {
                        if !seen[v] {
                            seen[v] = true;
                            queue.push_back(v);
                        }
                    }
                }
                seen
            })
            .collect()
    }
}

/// The thin category with a morphism `u -> v` exactly when `v` is reachable
/// from `u`. Identities come first, then pairs `(u, v)` in lexicographic
/// order.
pub fn graph_category(graph: &Digraph) -> FiniteCategory {
    let reach = graph.reachability();
    let n = graph.vertices();
    let mut morphisms: Vec<(Obj, Obj, (usize, usize))> = (0..n).map(|x| (x, x, (x, x))).collect();
    for u in 0..n {
        for v in 0..n {
            if u != v && reach[u][v] {
                morphisms.push((u, v, (u, v)));
            }
        }
    }
    LabeledCategory::build(n, morphisms, |x| (x, x), |g, f| (f.0, g.1)).into_category()
}

/// Category of a finite poset on `0..elements`, with `leq(x, y)` meaning `x ≤ y`.
pub fn poset_category(elements: usize, leq: impl Fn(usize, usize) -> bool) -> Result<FiniteCategory, NotAPoset> {
    for x in 0..elements {
        if !leq(x, x) {
            return Err(NotAPoset {
                law: PosetLaw::Reflexivity,
                elements: vec![x],
            });
        }
    }
    for x in 0..elements {
        for y in 0..elements {
            if x != y && leq(x, y) && leq(y, x) {
                return Err(NotAPoset {
                    law: PosetLaw::Antisymmetry,
                    elements: vec![x, y],
                });
            }
            for z in 0..elements {
                if leq(x, y) && leq(y, z) && !leq(x, z) {
                    return Err(NotAPoset {
                        law: PosetLaw::Transitivity,
                        elements: vec![x, y, z],
                    });
                }
            }
        }
    }
    let edges: Vec<(usize, usize)> = (0..elements)
        .flat_map(|x| (0..elements).map(move |y| (x, y)))
        .filter(|&(x, y)| leq(x, y))
        .collect();
    let graph = Digraph::new(elements, &edges).expect("edges are in range and distinct");
    Ok(graph_category(&graph))
}

/// One object whose endomorphisms are the group elements; `g ∘ f = g * f`.
pub fn group_category(group: &GroupTable) -> FiniteCategory {
    let m = group.order();
    let comp = (0..m * m).map(|i| Some(group.op(i / m, i % m))).collect();
    FiniteCategory::from_tables_unchecked(1, vec![0; m], vec![0; m], vec![group.identity()], comp)
}

/// `C × D` with its two projections.
#[derive(Debug, Clone)]
pub struct ProductCategory {
    pub category: FiniteCategory,
    pub first: FunctorTable,
    pub second: FunctorTable,
    left_objects: usize,
    left_morphisms: usize,
    right_objects: usize,
    right_morphisms: usize,
}

impl ProductCategory {
    pub fn pair_object(&self, x: Obj, y: Obj) -> Obj {
        debug_assert!(x < self.left_objects);
        x * self.right_objects + y
    }

    pub fn pair_morphism(&self, f: Mor, g: Mor) -> Mor {
        debug_assert!(f < self.left_morphisms);
        f * self.right_morphisms + g
    }
}

pub fn product_category(left: &FiniteCategory, right: &FiniteCategory) -> ProductCategory {
    let (n1, m1) = (left.objects(), left.morphisms());
    let (n2, m2) = (right.objects(), right.morphisms());
    let n = n1 * n2;
    let m = m1 * m2;
    let mut dom = Vec::with_capacity(m);
    let mut cod = Vec::with_capacity(m);
    for f in 0..m1 {
        for g in 0..m2 {
            dom.push(left.dom(f) * n2 + right.dom(g));
            cod.push(left.cod(f) * n2 + right.cod(g));
        }
    }
    let id = (0..n).map(|x| left.identity(x / n2) * m2 + right.identity(x % n2)).collect();
    let mut comp = vec![None; m * m];
    for a in 0..m {
        for b in 0..m {
            comp[a * m + b] = match (left.compose(a / m2, b / m2), right.compose(a % m2, b % m2)) {
                (Some(f), Some(g)) => Some(f * m2 + g),
                _ => None,
            };
        }
    }
    let category = FiniteCategory::from_tables_unchecked(n, dom, cod, id, comp);
    let first = FunctorTable::new((0..n).map(|x| x / n2).collect(), (0..m).map(|f| f / m2).collect());
    let second = FunctorTable::new((0..n).map(|x| x % n2).collect(), (0..m).map(|f| f % m2).collect());
    ProductCategory {
        category,
        first,
        second,
        left_objects: n1,
        left_morphisms: m1,
        right_objects: n2,
        right_morphisms: m2,
    }
}

/// All `rows x cols` matrices over integers mod `q`, counting in base `q`
/// with the last entry varying fastest.
fn all_matrices(rows: usize, cols: usize, q: u64) -> Vec<IntMatrix> {
    let len = rows * cols;
    let count = (q as usize).pow(len as u32);
    (0..count)
        .map(|mut code| {
            let mut entries = vec![0i64; len];
            for slot in entries.iter_mut().rev() {
                *slot = (code % q as usize) as i64;
                code /= q as usize;
            }
            IntMatrix::new(rows, cols, entries)
        })
        .collect()
}

/// Free modules of rank `0..=max_rank` over integers mod `q`. A morphism
/// `a -> b` is an `a x b` matrix acting on row vectors by right
/// multiplication, so `A: a -> b` followed by `B: b -> c` is `A·B`.
pub fn labeled_matrix_category(q: u64, max_rank: usize) -> LabeledCategory<IntMatrix> {
    assert!(q >= 2, "modulus must be at least 2");
    let mut morphisms = Vec::new();
    for a in 0..=max_rank {
        for b in 0..=max_rank {
            morphisms.extend(all_matrices(a, b, q).into_iter().map(|m| (a, b, m)));
        }
    }
    LabeledCategory::build(max_rank + 1, morphisms, IntMatrix::identity, |g, f| {
        f.mul(g).expect("composable shapes").reduce(q)
    })
}

pub fn matrix_category(q: u64, max_rank: usize) -> FiniteCategory {
    labeled_matrix_category(q, max_rank).into_category()
}

/// A word over letters `0..letters`, or `None` for the absorbing element.
pub type Word = Option<Vec<usize>>;

/// Words of length at most `max_len` under concatenation, with every
/// overflowing product sent to the absorbing element `None`. Words are listed
/// in shortlex order and the absorbing element last.
pub fn truncated_word_category(letters: usize, max_len: usize) -> LabeledCategory<Word> {
    let mut words: Vec<Vec<usize>> = vec![Vec::new()];
    let mut layer: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..max_len {
        let next: Vec<Vec<usize>> = layer
            .iter()
            .flat_map(|w| {
                (0..letters).map(move |l| {
                    let mut w = w.clone();
                    w.push(l);
                    w
                })
            })
            .collect();
        words.extend(next.iter().cloned());
        layer = next;
    }
    let mut morphisms: Vec<(Obj, Obj, Word)> = words.into_iter().map(|w| (0, 0, Some(w))).collect();
    morphisms.push((0, 0, None));
    LabeledCategory::build(1, morphisms, |_| Some(Vec::new()), |g, f| match (f, g) {
        (Some(first), Some(second)) if first.len() + second.len() <= max_len => {
            let mut w = first.clone();
            w.extend_from_slice(second);
            Some(w)
        }
        _ => None,
    })
}

/// A function between finite sets, as a tuple of values.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MapLabel {
    pub dom: Obj,
    pub cod: Obj,
    pub values: Vec<usize>,
}

/// `g ∘ f` on value tuples whose entries start at `base`.
fn compose_maps(g: &MapLabel, f: &MapLabel, base: usize) -> MapLabel {
    MapLabel {
        dom: f.dom,
        cod: g.cod,
        values: f.values.iter().map(|&v| g.values[v - base]).collect(),
    }
}

/// All tuples of length `len` with entries in `lo..=hi`, lexicographic.
fn all_tuples(len: usize, lo: usize, hi: usize, monotone: bool) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(len);
    fn go(len: usize, lo: usize, hi: usize, monotone: bool, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == len {
            out.push(current.clone());
            return;
        }
        let start = if monotone { current.last().copied().unwrap_or(lo) } else { lo };
        for v in start..=hi {
            current.push(v);
            go(len, lo, hi, monotone, current, out);
            current.pop();
        }
    }
    go(len, lo, hi, monotone, &mut current, &mut out);
    out
}

/// Finite sets `{1..s}` for each size in `sizes` and all functions between
/// them (values are 1-based).
pub fn labeled_fset_full_subcategory(sizes: &[usize]) -> LabeledCategory<MapLabel> {
    let mut morphisms = Vec::new();
    for (a, &sa) in sizes.iter().enumerate() {
        for (b, &sb) in sizes.iter().enumerate() {
            for values in all_tuples(sa, 1, sb, false) {
                morphisms.push((a, b, MapLabel { dom: a, cod: b, values }));
            }
        }
    }
    let sizes = sizes.to_vec();
    LabeledCategory::build(
        sizes.len(),
        morphisms,
        move |x| MapLabel {
            dom: x,
            cod: x,
            values: (1..=sizes[x]).collect(),
        },
        |g, f| compose_maps(g, f, 1),
    )
}

/// Sets `{1}, ..., {1..max_size}` and all functions; object `i` has `i + 1` elements.
pub fn labeled_fset_category(max_size: usize) -> LabeledCategory<MapLabel> {
    assert!(max_size >= 1, "FSet truncation needs at least one object");
    let sizes: Vec<usize> = (1..=max_size).collect();
    labeled_fset_full_subcategory(&sizes)
}

pub fn fset_category(max_size: usize) -> FiniteCategory {
    labeled_fset_category(max_size).into_category()
}

/// Subcategory of finite sets (sizes as given) generated by `generators`.
pub fn labeled_fset_generated(sizes: &[usize], generators: Vec<MapLabel>) -> LabeledCategory<MapLabel> {
    let sizes = sizes.to_vec();
    let generators = generators.into_iter().map(|g| (g.dom, g.cod, g)).collect();
    LabeledCategory::generated(
        sizes.len(),
        generators,
        move |x| MapLabel {
            dom: x,
            cod: x,
            values: (1..=sizes[x]).collect(),
        },
        |g, f| compose_maps(g, f, 1),
    )
}

/// Ordinals `[n] = {0..n}` for each `n` in `ordinals`, with all weakly
/// monotone maps (values are 0-based).
pub fn labeled_simplex_full_subcategory(ordinals: &[usize]) -> LabeledCategory<MapLabel> {
    let mut morphisms = Vec::new();
    for (a, &na) in ordinals.iter().enumerate() {
        for (b, &nb) in ordinals.iter().enumerate() {
            for values in all_tuples(na + 1, 0, nb, true) {
                morphisms.push((a, b, MapLabel { dom: a, cod: b, values }));
            }
        }
    }
    let ordinals = ordinals.to_vec();
    LabeledCategory::build(
        ordinals.len(),
        morphisms,
        move |x| MapLabel {
            dom: x,
            cod: x,
            values: (0..=ordinals[x]).collect(),
        },
        |g, f| compose_maps(g, f, 0),
    )
}

/// Ordinals `[0], ..., [max]`; object `i` is `[i]`.
pub fn labeled_simplex_category(max: usize) -> LabeledCategory<MapLabel> {
    let ordinals: Vec<usize> = (0..=max).collect();
    labeled_simplex_full_subcategory(&ordinals)
}

pub fn simplex_category(max: usize) -> FiniteCategory {
    labeled_simplex_category(max).into_category()
}

/// The 0/1 matrix of a function `{1..a} -> {1..codomain}`: row `i` has its
/// single 1 in column `h(i)`.
pub fn embed_fset_in_matrices(h: &[usize], codomain: usize) -> IntMatrix {
    let mut m = IntMatrix::zeros(h.len(), codomain);
    for (i, &v) in h.iter().enumerate() {
        assert!((1..=codomain).contains(&v), "function value {v} outside 1..={codomain}");
        m.set(i, v - 1, 1);
    }
    m
}

/// The embedding of `fset_category(max_size)` into `matrix_category(q, max_size)`
/// sending the set with `s` elements to rank `s`.
pub struct FsetMatrixEmbedding {
    pub fset: LabeledCategory<MapLabel>,
    pub matrices: LabeledCategory<IntMatrix>,
    pub functor: FunctorTable,
}

pub fn fset_matrix_embedding(max_size: usize, q: u64) -> FsetMatrixEmbedding {
    let fset = labeled_fset_category(max_size);
    let matrices = labeled_matrix_category(q, max_size);
    let object_map = (0..max_size).map(|x| x + 1).collect();
    let morphism_map = fset
        .labels()
        .iter()
        .map(|label| {
            let matrix = embed_fset_in_matrices(&label.values, label.cod + 1);
            matrices.morphism(&matrix).expect("0/1 matrix is a morphism")
        })
        .collect();
    FsetMatrixEmbedding {
        fset,
        matrices,
        functor: FunctorTable::new(object_map, morphism_map),
    }
}

/// Outcome of checking `x ↦ [[1, x], [0, 1]]` from integers mod `q` into the
/// automorphism group of rank 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitriangularReport {
    pub modulus: u64,
    /// Morphism of `matrix_category(q, 2)` for each residue.
    pub images: Vec<Mor>,
    pub injective: bool,
    pub homomorphism: bool,
    pub lands_in_automorphisms: bool,
}

impl UnitriangularReport {
    pub fn passed(&self) -> bool {
        self.injective && self.homomorphism && self.lands_in_automorphisms
    }
}

pub fn unitriangular_matrix(x: i64) -> IntMatrix {
    IntMatrix::new(2, 2, vec![1, x, 0, 1])
}

pub fn unitriangular_embedding_check(q: u64) -> UnitriangularReport {
    assert!(q >= 2, "modulus must be at least 2");
    let matrices = labeled_matrix_category(q, 2);
    let cat = matrices.category();
    let automorphisms = cat.automorphism_group(2);
    let images: Vec<Mor> = (0..q as i64)
        .map(|x| matrices.morphism(&unitriangular_matrix(x)).expect("matrix of rank 2"))
        .collect();
    let distinct: BTreeSet<Mor> = images.iter().copied().collect();
    let injective = distinct.len() == images.len();
    let lands_in_automorphisms = images.iter().all(|f| automorphisms.elements.contains(f));
    let mut homomorphism = true;
    for x in 0..q as usize {
        for y in 0..q as usize {
            // addition of residues vs composition of the images
            let sum = images[(x + y) % q as usize];
            if cat.compose(images[y], images[x]) != Some(sum) {
                homomorphism = false;
            }
        }
    }
    UnitriangularReport {
        modulus: q,
        images,
        injective,
        homomorphism,
        lands_in_automorphisms,
    }
}

/// The constructions above at their default sizes, named.
pub fn default_constructions() -> Vec<(&'static str, FiniteCategory)> {
    let path = Digraph::new(3, &[(0, 1), (1, 2)]).expect("digraph");
    let z2 = group_category(&GroupTable::cyclic(2));
    let z3 = group_category(&GroupTable::cyclic(3));
    vec![
        ("graph", graph_category(&path)),
        ("complete-graph", graph_category(&Digraph::complete(4))),
        ("poset", poset_category(3, |x, y| x <= y).expect("chain")),
        ("group", group_category(&GroupTable::symmetric(3))),
        ("product", product_category(&z2, &z3).category),
        ("matrix", matrix_category(2, 2)),
        ("truncated-word", truncated_word_category(2, 2).into_category()),
        ("fset", fset_category(DEFAULT_FSET_SIZE)),
        ("simplex", simplex_category(DEFAULT_SIMPLEX_SIZE)),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph_category_counts() {
        let single = Digraph::new(2, &[(0, 1)]).unwrap();
        let c = graph_category(&single);
        assert_eq!((c.objects(), c.morphisms()), (2, 3));
        let k4 = graph_category(&Digraph::complete(4));
        assert_eq!((k4.objects(), k4.morphisms()), (4, 16));
        assert!(k4.hom_sets().iter().all(|h| h.len() == 1));
        let discrete = graph_category(&Digraph::new(2, &[]).unwrap());
        assert_eq!(discrete.morphisms(), 2);
    }

    #[test]
    fn digraph_rejects_bad_edges() {
        assert_eq!(Digraph::new(2, &[(0, 2)]), Err(DigraphError::UnknownVertex(0, 2)));
        assert_eq!(Digraph::new(2, &[(0, 1), (0, 1)]), Err(DigraphError::DuplicateEdge(0, 1)));
    }

    #[test]
    fn poset_counts_and_errors() {
        let chain = poset_category(3, |x, y| x <= y).unwrap();
        assert_eq!((chain.objects(), chain.morphisms()), (3, 6));
        let antichain = poset_category(3, |x, y| x == y).unwrap();
        assert_eq!(antichain.morphisms(), 3);
        let err = poset_category(2, |_, _| true).unwrap_err();
        assert_eq!(err.law, PosetLaw::Antisymmetry);
        let err = poset_category(2, |x, y| x < y).unwrap_err();
        assert_eq!(err.law, PosetLaw::Reflexivity);
        let err = poset_category(3, |x, y| x == y || (x, y) == (0, 1) || (x, y) == (1, 2)).unwrap_err();
        assert_eq!(err.law, PosetLaw::Transitivity);
    }

    #[test]
    fn group_categories() {
        assert_eq!(group_category(&GroupTable::trivial()), FiniteCategory::terminal());
        let z2 = group_category(&GroupTable::cyclic(2));
        assert_eq!((z2.objects(), z2.morphisms()), (1, 2));
    }

    #[test]
    fn group_round_trip_through_automorphisms() {
        for g in [GroupTable::cyclic(4), GroupTable::symmetric(3)] {
            let cat = group_category(&g);
            let aut = cat.automorphism_group(0);
            assert_eq!(aut.group.identity_first(), g.identity_first());
        }
    }

    #[test]
    fn product_counts_and_projections() {
        let z2 = group_category(&GroupTable::cyclic(2));
        let z3 = group_category(&GroupTable::cyclic(3));
        let p = product_category(&z2, &z3);
        assert_eq!((p.category.objects(), p.category.morphisms()), (1, 6));
        p.first.validate(&p.category, &z2).unwrap();
        p.second.validate(&p.category, &z3).unwrap();
        for f in 0..2 {
            for g in 0..3 {
                let pair = p.pair_morphism(f, g);
                assert_eq!(p.first.morphism(pair), f);
                assert_eq!(p.second.morphism(pair), g);
            }
        }
    }

    #[test]
    fn product_with_terminal_is_isomorphic() {
        let chain = poset_category(2, |x, y| x <= y).unwrap();
        let p = product_category(&chain, &FiniteCategory::terminal());
        assert_eq!(p.category, chain);
    }

    #[test]
    fn matrix_category_counts() {
        let c = matrix_category(2, 1);
        assert_eq!((c.objects(), c.morphisms()), (2, 5));
        let c = matrix_category(2, 2);
        assert_eq!((c.objects(), c.morphisms()), (3, 31));
    }

    #[test]
    fn matrix_composition_example() {
        let mats = labeled_matrix_category(2, 2);
        let row = mats.morphism(&"[[1,1]]".parse().unwrap()).unwrap();
        let col = mats.morphism(&"[[1],[1]]".parse().unwrap()).unwrap();
        let product = mats.category().compose(col, row).unwrap();
        assert_eq!(mats.label(product), &IntMatrix::new(1, 1, vec![0]));
    }

    #[test]
    fn word_category_counts_and_truncation() {
        let words = truncated_word_category(2, 2);
        assert_eq!(words.category().morphisms(), 8);
        let c = words.category();
        let w = |letters: &[usize]| words.morphism(&Some(letters.to_vec())).unwrap();
        assert_eq!(c.compose(w(&[1]), w(&[0])), Some(w(&[0, 1])));
        assert_eq!(c.compose(w(&[0]), w(&[0, 1])), words.morphism(&None));
    }

    #[test]
    fn fset_counts() {
        assert_eq!(fset_category(2).morphisms(), 8);
        let f3 = labeled_fset_category(3);
        assert_eq!(f3.category().morphisms(), 56);
        assert_eq!(f3.label(f3.category().identity(2)).values, vec![1, 2, 3]);
    }

    #[test]
    fn simplex_counts() {
        assert_eq!(simplex_category(1).morphisms(), 7);
        let s2 = labeled_simplex_category(2);
        assert_eq!(s2.category().morphisms(), 31);
        let const0 = MapLabel {
            dom: 1,
            cod: 1,
            values: vec![0, 0],
        };
        assert!(s2.morphism(&const0).is_some());
        let not_monotone = MapLabel {
            dom: 1,
            cod: 1,
            values: vec![1, 0],
        };
        assert!(s2.morphism(&not_monotone).is_none());
    }

    #[test]
    fn fset_embedding_examples() {
        assert_eq!(embed_fset_in_matrices(&[1, 2], 2), IntMatrix::identity(2));
        assert_eq!(embed_fset_in_matrices(&[2, 1], 2), IntMatrix::new(2, 2, vec![0, 1, 1, 0]));
        assert_eq!(embed_fset_in_matrices(&[1, 1], 1), IntMatrix::new(2, 1, vec![1, 1]));
    }

    #[test]
    fn unitriangular_examples() {
        for q in [2, 3, 4] {
            let report = unitriangular_embedding_check(q);
            assert!(report.passed(), "{report:?}");
            assert_eq!(report.images.len(), q as usize);
        }
    }

    #[test]
    fn automorphism_group_orders() {
        let fset = fset_category(3);
        assert_eq!(fset.automorphism_group(2).group.order(), 6);
        let mats = matrix_category(2, 2);
        assert_eq!(mats.automorphism_group(2).group.order(), 6);
        let graph = graph_category(&Digraph::new(3, &[(0, 1), (1, 0), (1, 2)]).unwrap());
        for x in 0..3 {
            assert_eq!(graph.automorphism_group(x).group.order(), 1);
        }
    }

    #[test]
    fn every_default_construction_is_valid() {
        for (name, cat) in default_constructions() {
            let report = cat.validate();
            assert!(report.is_valid(), "{name}: {:?}", report.violations.first());
        }
    }
}

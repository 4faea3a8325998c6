//! Exhaustive enumeration of small finite categories and of functors.

mod canonical;
mod functors;
mod hopf;

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use thiserror::Error;

use crate::category::{FiniteCategory, Mor, Obj};

pub use canonical::{canonical_form, canonical_key, is_isomorphic};
pub use functors::{count_functors, enumerate_functor_tables, enumerate_functors, for_each_functor};
pub use hopf::{check_hopfian_finite, functor_power_periodicity, HopfReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BudgetError {
    #[error("a size budget needs at least one object")]
    NoObjects,
    #[error("{morphisms} morphisms cannot hold identities for {objects} objects")]
    TooFewMorphisms { objects: usize, morphisms: usize },
}

/// Bounds on the size of enumerated categories.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SizeBudget {
    max_objects: usize,
    max_morphisms: usize,
    up_to_iso: bool,
}

impl SizeBudget {
    pub fn new(max_objects: usize, max_morphisms: usize, up_to_iso: bool) -> Result<Self, BudgetError> {
        if max_objects == 0 {
            return Err(BudgetError::NoObjects);
        }
        if max_morphisms < max_objects {
            return Err(BudgetError::TooFewMorphisms {
                objects: max_objects,
                morphisms: max_morphisms,
            });
        }
        Ok(SizeBudget {
            max_objects,
            max_morphisms,
            up_to_iso,
        })
    }

    pub fn max_objects(&self) -> usize {
        self.max_objects
    }

    pub fn max_morphisms(&self) -> usize {
        self.max_morphisms
    }

    pub fn up_to_iso(&self) -> bool {
        self.up_to_iso
    }

    pub fn cells(&self) -> Vec<(usize, usize)> {
        diagonal_cells(self.max_objects, self.max_morphisms)
    }
}

/// All `(n, m)` with `1 <= n <= max_objects`, `n <= m <= max_morphisms`,
/// ordered by `n + m`, then `n`.
pub fn diagonal_cells(max_objects: usize, max_morphisms: usize) -> Vec<(usize, usize)> {
    let mut cells: Vec<(usize, usize)> = (1..=max_objects)
        .flat_map(|n| (n..=max_morphisms).map(move |m| (n, m)))
        .collect();
    cells.sort_by_key(|&(n, m)| (n + m, n));
    cells
}

/// Identity, domain and codomain assignment awaiting a composition table.
#[derive(Debug, Clone)]
struct Shape {
    objects: usize,
    dom: Vec<Obj>,
    cod: Vec<Obj>,
    id: Vec<Mor>,
}

/// Every shape with injective identities: identity choices lexicographic,
/// then `(dom, cod)` of the remaining morphisms lexicographic in index order.
fn labeled_shapes(n: usize, m: usize) -> Vec<Shape> {
    let mut shapes = Vec::new();
    let mut id = Vec::with_capacity(n);
    let mut used = vec![false; m];
    injective_ids(n, m, &mut id, &mut used, &mut |id| {
        let free: Vec<Mor> = (0..m).filter(|f| !id.contains(f)).collect();
        let mut dom = vec![0; m];
        let mut cod = vec![0; m];
        for (x, &i) in id.iter().enumerate() {
            dom[i] = x;
            cod[i] = x;
        }
        let choices = (n * n).pow(free.len() as u32);
        for code in 0..choices {
            // most significant digit belongs to the first free morphism
            let mut rest = code;
            for &f in free.iter().rev() {
                let pair = rest % (n * n);
                rest /= n * n;
                dom[f] = pair / n;
                cod[f] = pair % n;
            }
            shapes.push(Shape {
                objects: n,
                dom: dom.clone(),
                cod: cod.clone(),
                id: id.to_vec(),
            });
        }
    });
    shapes
}

fn injective_ids(n: usize, m: usize, id: &mut Vec<Mor>, used: &mut [bool], visit: &mut dyn FnMut(&[Mor])) {
    if id.len() == n {
        visit(id);
        return;
    }
    for f in 0..m {
        if !used[f] {
            used[f] = true;
            id.push(f);
            injective_ids(n, m, id, used, visit);
            id.pop();
            used[f] = false;
        }
    }
}

/// Shapes with `id(x) = x` and non-identity `(dom, cod)` pairs nondecreasing;
/// every category is isomorphic to one with such a shape.
fn normalized_shapes(n: usize, m: usize) -> Vec<Shape> {
    let mut shapes = Vec::new();
    let extra = m - n;
    let mut pairs = Vec::with_capacity(extra);
    fn rec(n: usize, extra: usize, min: usize, pairs: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if pairs.len() == extra {
            out.push(pairs.clone());
            return;
        }
        for p in min..n * n {
            pairs.push(p);
            rec(n, extra, p, pairs, out);
            pairs.pop();
        }
    }
    let mut all = Vec::new();
    rec(n, extra, 0, &mut pairs, &mut all);
    for pairs in all {
        let mut dom: Vec<Obj> = (0..n).collect();
        let mut cod: Vec<Obj> = (0..n).collect();
        for p in pairs {
            dom.push(p / n);
            cod.push(p % n);
        }
        shapes.push(Shape {
            objects: n,
            dom,
            cod,
            id: (0..n).collect(),
        });
    }
    shapes
}

/// Backtracking over the free composition cells of a shape with incremental
/// associativity checks.
struct Filler<'a> {
    shape: &'a Shape,
    m: usize,
    comp: Vec<Option<Mor>>,
    cells: Vec<(Mor, Mor)>,
    hom: Vec<Vec<Mor>>,
}

impl<'a> Filler<'a> {
    fn new(shape: &'a Shape) -> Self {
        let m = shape.dom.len();
        let n = shape.objects;
        let mut is_id = vec![false; m];
        for &i in &shape.id {
            is_id[i] = true;
        }
        let mut hom = vec![Vec::new(); n * n];
        for f in 0..m {
            hom[shape.dom[f] * n + shape.cod[f]].push(f);
        }
        let mut comp = vec![None; m * m];
        let mut cells = Vec::new();
        for g in 0..m {
            for f in 0..m {
                if shape.cod[f] != shape.dom[g] {
                    continue;
                }
                if is_id[g] {
                    comp[g * m + f] = Some(f);
                } else if is_id[f] {
                    comp[g * m + f] = Some(g);
                } else {
                    cells.push((g, f));
                }
            }
        }
        Filler {
            shape,
            m,
            comp,
            cells,
            hom,
        }
    }

    fn get(&self, g: Mor, f: Mor) -> Option<Mor> {
        self.comp[g * self.m + f]
    }

    /// `Some(false)` for a known failure, `None` when an entry is missing.
    fn triple_ok(&self, h: Mor, g: Mor, f: Mor) -> Option<bool> {
        let gf = self.get(g, f)?;
        let hg = self.get(h, g)?;
        let left = self.get(h, gf)?;
        let right = self.get(hg, f)?;
        Some(left == right)
    }

    fn consistent_after(&self, x: Mor, y: Mor) -> bool {
        let m = self.m;
        let (dom, cod) = (&self.shape.dom, &self.shape.cod);
        let bad = |h, g, f| self.triple_ok(h, g, f) == Some(false);
        for k in 0..m {
            // (x, y) as the inner right pair of (k, x, y)
            if dom[k] == cod[x] && bad(k, x, y) {
                return false;
            }
            // (x, y) as the inner left pair of (x, y, k)
            if cod[k] == dom[y] && bad(x, y, k) {
                return false;
            }
        }
        for a in 0..m {
            for b in 0..m {
                if cod[b] != dom[a] {
                    continue;
                }
                let ab = self.get(a, b);
                // (x, y) = (x, a∘b) as the outer left pair
                if ab == Some(y) && bad(x, a, b) {
                    return false;
                }
                // (x, y) = (a∘b, y) as the outer right pair
                if ab == Some(x) && bad(a, b, y) {
                    return false;
                }
            }
        }
        true
    }

    fn run(&mut self, depth: usize, visit: &mut dyn FnMut(&[Option<Mor>])) {
        if depth == self.cells.len() {
            visit(&self.comp);
            return;
        }
        let (g, f) = self.cells[depth];
        let n = self.shape.objects;
        let candidates = self.hom[self.shape.dom[f] * n + self.shape.cod[g]].clone();
        for h in candidates {
            self.comp[g * self.m + f] = Some(h);
            if self.consistent_after(g, f) {
                self.run(depth + 1, visit);
            }
        }
        self.comp[g * self.m + f] = None;
    }
}

fn fill(shape: &Shape) -> Vec<FiniteCategory> {
    let mut out = Vec::new();
    let mut filler = Filler::new(shape);
    filler.run(0, &mut |comp| {
        out.push(FiniteCategory::from_tables_unchecked(
            shape.objects,
            shape.dom.clone(),
            shape.cod.clone(),
            shape.id.clone(),
            comp.to_vec(),
        ));
    });
    out
}

fn check_size(n: usize, m: usize) {
    assert!(n >= 1 && m >= n, "need n >= 1 and m >= n, got n={n}, m={m}");
}

/// All categories with objects `0..n` and morphisms `0..m`, in a fixed order.
///
/// In labeled mode every valid table is listed once. With `up_to_iso` one
/// canonical representative per isomorphism class is listed, sorted by
/// canonical key.
pub fn enumerate_finite_categories(n: usize, m: usize, up_to_iso: bool) -> Vec<FiniteCategory> {
    check_size(n, m);
    if up_to_iso {
        let mut classes = BTreeMap::new();
        for shape in normalized_shapes(n, m) {
            for cat in fill(&shape) {
                let (key, canonical) = canonical_form(&cat);
                classes.entry(key).or_insert(canonical);
            }
        }
        classes.into_values().collect()
    } else {
        let mut memo = HashMap::new();
        labeled_shapes(n, m)
            .iter()
            .flat_map(|shape| fill_labeled(shape, &mut memo))
            .collect()
    }
}

/// Morphism relabeling `perm[old] = new` taking a labeled shape to a
/// normalized one.
fn normalizing_permutation(shape: &Shape) -> Vec<Mor> {
    let m = shape.dom.len();
    let mut perm = vec![0; m];
    for (x, &i) in shape.id.iter().enumerate() {
        perm[i] = x;
    }
    let mut others: Vec<Mor> = (0..m).filter(|f| !shape.id.contains(f)).collect();
    others.sort_by_key(|&f| (shape.dom[f], shape.cod[f], f));
    for (k, f) in others.into_iter().enumerate() {
        perm[f] = shape.objects + k;
    }
    perm
}

fn table_key(cat: &FiniteCategory) -> Vec<Option<Mor>> {
    let m = cat.morphisms();
    (0..m * m).map(|i| cat.compose(i / m, i % m)).collect()
}

/// Fills a labeled shape by transporting the fills of its normalized shape;
/// the result is sorted by composition table.
fn fill_labeled(shape: &Shape, memo: &mut HashMap<(Vec<Obj>, Vec<Obj>), Vec<FiniteCategory>>) -> Vec<FiniteCategory> {
    let perm = normalizing_permutation(shape);
    let m = perm.len();
    let mut inverse = vec![0; m];
    for (old, &new) in perm.iter().enumerate() {
        inverse[new] = old;
    }
    let mut dom = vec![0; m];
    let mut cod = vec![0; m];
    for f in 0..m {
        dom[perm[f]] = shape.dom[f];
        cod[perm[f]] = shape.cod[f];
    }
    let normal = Shape {
        objects: shape.objects,
        dom,
        cod,
        id: (0..shape.objects).collect(),
    };
    let fills = memo
        .entry((normal.dom.clone(), normal.cod.clone()))
        .or_insert_with(|| fill(&normal));
    let objects: Vec<Obj> = (0..shape.objects).collect();
    let mut out: Vec<(Vec<Option<Mor>>, FiniteCategory)> = fills
        .iter()
        .map(|cat| {
            let moved = cat.relabel(&objects, &inverse);
            (table_key(&moved), moved)
        })
        .collect();
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out.into_iter().map(|(_, cat)| cat).collect()
}

/// Same output as [`enumerate_finite_categories`], shapes filled on the rayon
/// pool.
pub fn enumerate_finite_categories_parallel(n: usize, m: usize, up_to_iso: bool) -> Vec<FiniteCategory> {
    check_size(n, m);
    if up_to_iso {
        let found: Vec<Vec<(Vec<usize>, FiniteCategory)>> = normalized_shapes(n, m)
            .par_iter()
            .map(|shape| fill(shape).iter().map(canonical_form).collect())
            .collect();
        let mut classes = BTreeMap::new();
        for (key, cat) in found.into_iter().flatten() {
            classes.entry(key).or_insert(cat);
        }
        classes.into_values().collect()
    } else {
        let shapes = labeled_shapes(n, m);
        let found: Vec<Vec<FiniteCategory>> = shapes
            .par_iter()
            .map_init(HashMap::new, |memo, shape| fill_labeled(shape, memo))
            .collect();
        found.into_iter().flatten().collect()
    }
}

pub fn count_finite_categories(n: usize, m: usize, up_to_iso: bool) -> usize {
    enumerate_finite_categories(n, m, up_to_iso).len()
}

/// Every category within the budget, cell by cell in diagonal order.
pub fn enumerate_within(budget: &SizeBudget) -> Vec<FiniteCategory> {
    budget
        .cells()
        .into_iter()
        .flat_map(|(n, m)| enumerate_finite_categories(n, m, budget.up_to_iso))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cells_in_diagonal_order() {
        assert_eq!(
            diagonal_cells(2, 5),
            vec![(1, 1), (1, 2), (1, 3), (2, 2), (1, 4), (2, 3), (1, 5), (2, 4), (2, 5)]
        );
    }

    #[test]
    fn budget_validation() {
        assert_eq!(SizeBudget::new(0, 3, false), Err(BudgetError::NoObjects));
        assert!(SizeBudget::new(3, 2, false).is_err());
        assert!(SizeBudget::new(2, 2, true).is_ok());
    }

    #[test]
    fn monoid_counts() {
        assert_eq!(count_finite_categories(1, 1, true), 1);
        assert_eq!(count_finite_categories(1, 2, true), 2);
        assert_eq!(count_finite_categories(1, 3, true), 7);
        assert_eq!(count_finite_categories(1, 1, false), 1);
        // identity in either position, the other element idempotent or involutive
        assert_eq!(count_finite_categories(1, 2, false), 4);
    }

    #[test]
    fn two_objects_two_morphisms_is_discrete() {
        let cats = enumerate_finite_categories(2, 2, false);
        // two labelings of the identities
        assert_eq!(cats.len(), 2);
        assert_eq!(enumerate_finite_categories(2, 2, true).len(), 1);
    }

    #[test]
    fn two_objects_three_morphisms() {
        // the arrow category, and a discrete object next to Z/2 or the idempotent monoid
        assert_eq!(count_finite_categories(2, 3, true), 3);
    }

    #[test]
    fn outputs_are_valid() {
        for (n, m) in diagonal_cells(2, 4) {
            for up_to_iso in [false, true] {
                for cat in enumerate_finite_categories(n, m, up_to_iso) {
                    assert!(cat.is_valid(), "{}", cat.dump());
                    assert_eq!((cat.objects(), cat.morphisms()), (n, m));
                }
            }
        }
    }

    #[test]
    fn parallel_matches_sequential() {
        for (n, m) in diagonal_cells(2, 4) {
            for up_to_iso in [false, true] {
                assert_eq!(
                    enumerate_finite_categories(n, m, up_to_iso),
                    enumerate_finite_categories_parallel(n, m, up_to_iso)
                );
            }
        }
    }

    #[test]
    fn transported_fills_match_direct_fills() {
        for (n, m) in diagonal_cells(2, 4) {
            let mut direct: Vec<FiniteCategory> = labeled_shapes(n, m).iter().flat_map(fill).collect();
            let mut transported = enumerate_finite_categories(n, m, false);
            direct.sort_by_key(|c| c.dump());
            transported.sort_by_key(|c| c.dump());
            assert_eq!(direct, transported);
        }
    }

    #[test]
    fn labeled_mode_lists_distinct_tables() {
        let cats = enumerate_finite_categories(1, 3, false);
        let unique: std::collections::HashSet<_> = cats.iter().collect();
        assert_eq!(unique.len(), cats.len());
    }
}

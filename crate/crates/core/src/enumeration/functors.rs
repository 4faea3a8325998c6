use std::ops::ControlFlow;

use crate::category::{FiniteCategory, Mor, Obj};
use crate::functor::{FpFunctor, FunctorTable};
use crate::quiver::{Path, Presentation};

fn partial_eval(target: &FiniteCategory, objects: &[Obj], edges: &[Mor], path: &Path) -> Mor {
    let mut acc = target.identity(objects[path.source()]);
    for &e in path.edges() {
        acc = target.compose(edges[e], acc).expect("edge images are typed");
    }
    acc
}

/// Calls `visit` on every functor from the presented category into `target`:
/// object maps in lexicographic order, then edge images in lexicographic
/// order. A relation is checked as soon as its last edge has an image.
/// Returns the early-exit value if `visit` breaks.
pub fn for_each_functor<B>(
    presentation: &Presentation,
    target: &FiniteCategory,
    mut visit: impl FnMut(&FpFunctor) -> ControlFlow<B>,
) -> Option<B> {
    let quiver = presentation.quiver();
    let vertices = quiver.vertex_count();
    let edge_count = quiver.edge_count();
    let n = target.objects();
    let hom = target.hom_sets();
    // relations due for checking once edge `k - 1` is assigned (k = 0: at once)
    let mut due: Vec<Vec<usize>> = vec![Vec::new(); edge_count + 1];
    for (r, (lhs, rhs)) in presentation.relations().iter().enumerate() {
        let last = lhs.edges().iter().chain(rhs.edges()).max().map_or(0, |&e| e + 1);
        due[last].push(r);
    }
    let holds = |objects: &[Obj], edges: &[Mor], k: usize| {
        due[k].iter().all(|&r| {
            let (lhs, rhs) = &presentation.relations()[r];
            partial_eval(target, objects, edges, lhs) == partial_eval(target, objects, edges, rhs)
        })
    };

    struct Search<'a, F> {
        quiver_edges: &'a [crate::quiver::Edge],
        hom: &'a [Vec<Mor>],
        n: usize,
        objects: Vec<Obj>,
        edges: Vec<Mor>,
        visit: F,
    }

    fn assign_edges<B, F, H>(s: &mut Search<'_, F>, holds: &H, k: usize) -> Option<B>
    where
        F: FnMut(&FpFunctor) -> ControlFlow<B>,
        H: Fn(&[Obj], &[Mor], usize) -> bool,
    {
        if k == s.quiver_edges.len() {
            let functor = FpFunctor::new(s.objects.clone(), s.edges.clone());
            return match (s.visit)(&functor) {
                ControlFlow::Break(b) => Some(b),
                ControlFlow::Continue(()) => None,
            };
        }
        let edge = &s.quiver_edges[k];
        let candidates = &s.hom[s.objects[edge.source] * s.n + s.objects[edge.target]];
        for i in 0..candidates.len() {
            let f = candidates[i];
            s.edges.push(f);
            if holds(&s.objects, &s.edges, k + 1) {
                if let Some(b) = assign_edges(s, holds, k + 1) {
                    return Some(b);
                }
            }
            s.edges.pop();
        }
        None
    }

    let mut search = Search {
        quiver_edges: quiver.edges(),
        hom: &hom,
        n,
        objects: vec![0; vertices],
        edges: Vec::with_capacity(edge_count),
        visit: &mut visit,
    };
    let total = n.checked_pow(vertices as u32).expect("object map count fits in usize");
    for code in 0..total {
        let mut rest = code;
        for v in (0..vertices).rev() {
            search.objects[v] = rest % n;
            rest /= n;
        }
        search.edges.clear();
        if holds(&search.objects, &search.edges, 0) {
            if let Some(b) = assign_edges(&mut search, &holds, 0) {
                return Some(b);
            }
        }
    }
    None
}

pub fn enumerate_functors(presentation: &Presentation, target: &FiniteCategory) -> Vec<FpFunctor> {
    let mut out = Vec::new();
    for_each_functor::<()>(presentation, target, |f| {
        out.push(f.clone());
        ControlFlow::Continue(())
    });
    out
}

pub fn count_functors(presentation: &Presentation, target: &FiniteCategory) -> usize {
    let mut count = 0;
    for_each_functor::<()>(presentation, target, |_| {
        count += 1;
        ControlFlow::Continue(())
    });
    count
}

/// Every functor table `source -> target`; object maps lexicographic, then
/// non-identity morphism images lexicographic in index order.
pub fn enumerate_functor_tables(source: &FiniteCategory, target: &FiniteCategory) -> Vec<FunctorTable> {
    let n = source.objects();
    let m = source.morphisms();
    let tn = target.objects();
    let hom = target.hom_sets();
    let free: Vec<Mor> = (0..m).filter(|&f| !source.is_identity(f)).collect();
    let mut out = Vec::new();

    fn compatible(source: &FiniteCategory, target: &FiniteCategory, map: &[Option<Mor>], h: Mor) -> bool {
        let m = source.morphisms();
        let image = |f: Mor| map[f];
        for g in 0..m {
            for f in 0..m {
                if g != h && f != h && source.compose(g, f) != Some(h) {
                    continue;
                }
                let Some(gf) = source.compose(g, f) else { continue };
                if let (Some(a), Some(b), Some(c)) = (image(g), image(f), image(gf)) {
                    if target.compose(a, b) != Some(c) {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn rec(
        source: &FiniteCategory,
        target: &FiniteCategory,
        objects: &[Obj],
        hom: &[Vec<Mor>],
        free: &[Mor],
        map: &mut Vec<Option<Mor>>,
        k: usize,
        out: &mut Vec<FunctorTable>,
    ) {
        if k == free.len() {
            let table = map.iter().map(|f| f.expect("all assigned")).collect();
            out.push(FunctorTable::new(objects.to_vec(), table));
            return;
        }
        let f = free[k];
        let tn = target.objects();
        for &image in &hom[objects[source.dom(f)] * tn + objects[source.cod(f)]] {
            map[f] = Some(image);
            if compatible(source, target, map, f) {
                rec(source, target, objects, hom, free, map, k + 1, out);
            }
        }
        map[f] = None;
    }

    let total = tn.checked_pow(n as u32).expect("object map count fits in usize");
    let mut objects = vec![0; n];
    for code in 0..total {
        let mut rest = code;
        for x in (0..n).rev() {
            objects[x] = rest % tn;
            rest /= tn;
        }
        let mut map: Vec<Option<Mor>> = vec![None; m];
        for x in 0..n {
            map[source.identity(x)] = Some(target.identity(objects[x]));
        }
        rec(source, target, &objects, &hom, &free, &mut map, 0, &mut out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{fset_category, group_category, poset_category, product_category};
    use crate::quiver::Quiver;
    use crate::GroupTable;

    fn cyclic_relation(k: usize) -> Presentation {
        let q = Quiver::anonymous(1, &[(0, 0)]).unwrap();
        let a = Path::edge(&q, 0).unwrap();
        Presentation::new(q, vec![(a.power(k).unwrap(), Path::identity(0))]).unwrap()
    }

    fn loop_free() -> Presentation {
        Presentation::free(Quiver::anonymous(1, &[(0, 0)]).unwrap())
    }

    #[test]
    fn involutions_in_z3() {
        let z3 = group_category(&GroupTable::cyclic(3));
        let functors = enumerate_functors(&cyclic_relation(2), &z3);
        assert_eq!(functors.len(), 1);
        assert_eq!(functors[0].edge(0), z3.identity(0));
    }

    #[test]
    fn involutions_in_fset2() {
        assert_eq!(count_functors(&cyclic_relation(2), &fset_category(2)), 3);
    }

    #[test]
    fn small_counts() {
        let z2 = group_category(&GroupTable::cyclic(2));
        let z3 = group_category(&GroupTable::cyclic(3));
        assert_eq!(count_functors(&loop_free(), &z2), 2);
        assert_eq!(count_functors(&cyclic_relation(2), &z2), 2);
        assert_eq!(count_functors(&cyclic_relation(2), &FiniteCategory::terminal()), 1);
        assert_eq!(count_functors(&loop_free(), &z3), 3);
    }

    #[test]
    fn enumerated_functors_check() {
        let p = cyclic_relation(2);
        let target = fset_category(2);
        for f in enumerate_functors(&p, &target) {
            f.check(&p, &target).unwrap();
        }
    }

    #[test]
    fn product_count_is_multiplicative() {
        let z2 = group_category(&GroupTable::cyclic(2));
        let f2 = fset_category(2);
        let prod = product_category(&z2, &f2);
        for p in [cyclic_relation(2), cyclic_relation(3), loop_free()] {
            assert_eq!(
                count_functors(&p, &prod.category),
                count_functors(&p, &z2) * count_functors(&p, &f2)
            );
        }
    }

    #[test]
    fn early_exit() {
        let z3 = group_category(&GroupTable::cyclic(3));
        let found = for_each_functor(&loop_free(), &z3, |f| {
            if f.edge(0) == 2 {
                ControlFlow::Break(f.clone())
            } else {
                ControlFlow::Continue(())
            }
        });
        assert_eq!(found.map(|f| f.edge(0)), Some(2));
    }

    #[test]
    fn endofunctor_tables() {
        let z2 = group_category(&GroupTable::cyclic(2));
        assert_eq!(enumerate_functor_tables(&z2, &z2).len(), 2);
        let chain = poset_category(2, |a, b| a <= b).unwrap();
        let tables = enumerate_functor_tables(&chain, &chain);
        assert_eq!(tables.len(), 3);
        for t in tables {
            t.validate(&chain, &chain).unwrap();
        }
    }
}

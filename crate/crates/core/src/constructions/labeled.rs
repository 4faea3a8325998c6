use std::collections::HashMap;
use std::hash::Hash;

use crate::category::{FiniteCategory, Mor, Obj};

/// A finite category whose morphisms carry concrete labels (matrices,
/// function tuples, words), with a reverse index from label to morphism.
#[derive(Debug, Clone)]
pub struct LabeledCategory<L> {
    category: FiniteCategory,
    labels: Vec<L>,
    index: HashMap<L, Mor>,
}

impl<L: Clone + Eq + Hash> LabeledCategory<L> {
    /// Builds the composition table from labels.
    ///
    /// `morphisms` lists `(dom, cod, label)`; labels must be unique and
    /// `compose(g, f)` must return the label of `g ∘ f` for every composable
    /// pair. `identity(x)` returns the label of the identity on `x`.
    pub fn build(
        objects: usize,
        morphisms: Vec<(Obj, Obj, L)>,
        identity: impl Fn(Obj) -> L,
        compose: impl Fn(&L, &L) -> L,
    ) -> Self {
        let m = morphisms.len();
        let mut dom = Vec::with_capacity(m);
        let mut cod = Vec::with_capacity(m);
        let mut labels = Vec::with_capacity(m);
        let mut index = HashMap::with_capacity(m);
        for (i, (d, c, label)) in morphisms.into_iter().enumerate() {
            dom.push(d);
            cod.push(c);
            let previous = index.insert(label.clone(), i);
            assert!(previous.is_none(), "duplicate morphism label");
            labels.push(label);
        }
        let id = (0..objects)
            .map(|x| *index.get(&identity(x)).expect("identity label is a morphism"))
            .collect();
        // group morphisms by domain to avoid scanning non-composable pairs
        let mut by_dom: Vec<Vec<Mor>> = vec![Vec::new(); objects];
        for (g, &d) in dom.iter().enumerate() {
            by_dom[d].push(g);
        }
        let mut comp = vec![None; m * m];
        for f in 0..m {
            for &g in &by_dom[cod[f]] {
                let label = compose(&labels[g], &labels[f]);
                let h = *index.get(&label).expect("composite label is a morphism");
                comp[g * m + f] = Some(h);
            }
        }
        let category = FiniteCategory::from_tables_unchecked(objects, dom, cod, id, comp);
        LabeledCategory {
            category,
            labels,
            index,
        }
    }

    /// Closes `generators` (plus identities) under composition and builds the
    /// resulting subcategory.
    pub fn generated(
        objects: usize,
        generators: Vec<(Obj, Obj, L)>,
        identity: impl Fn(Obj) -> L,
        compose: impl Fn(&L, &L) -> L,
    ) -> Self {
        let mut found: Vec<(Obj, Obj, L)> = (0..objects).map(|x| (x, x, identity(x))).collect();
        let mut seen: HashMap<L, usize> = found.iter().enumerate().map(|(i, m)| (m.2.clone(), i)).collect();
        for generator in generators {
            if !seen.contains_key(&generator.2) {
                seen.insert(generator.2.clone(), found.len());
                found.push(generator);
            }
        }
        // saturate: every new morphism is composed with everything found so far
        let mut done = 0;
        while done < found.len() {
            let current = found.len();
            for new in done..current {
                for old in 0..found.len() {
                    for (g, f) in [(new, old), (old, new)] {
                        if found[f].1 != found[g].0 {
                            continue;
                        }
                        let label = compose(&found[g].2, &found[f].2);
                        if !seen.contains_key(&label) {
                            seen.insert(label.clone(), found.len());
                            let entry = (found[f].0, found[g].1, label);
                            found.push(entry);
                        }
                    }
                }
            }
            done = current;
        }
        Self::build(objects, found, identity, compose)
    }

    pub fn category(&self) -> &FiniteCategory {
        &self.category
    }

    pub fn into_category(self) -> FiniteCategory {
        self.category
    }

    pub fn label(&self, f: Mor) -> &L {
        &self.labels[f]
    }

    pub fn labels(&self) -> &[L] {
        &self.labels
    }

    pub fn morphism(&self, label: &L) -> Option<Mor> {
        self.index.get(label).copied()
    }
}

use std::collections::HashMap;

use crate::category::FiniteCategory;
use crate::functor::{FunctorError, FunctorTable};

use super::functors::enumerate_functor_tables;

/// Least `n < m` with `F ∘ E^n = F ∘ E^m`, comparing tables exactly.
///
/// `seed` is `F` out of the category on which `endo` acts. The sequence of
/// composites lives in a finite set, so a repeat always occurs.
pub fn functor_power_periodicity(seed: &FunctorTable, endo: &FunctorTable) -> Result<(usize, usize), FunctorError> {
    let mut seen: HashMap<FunctorTable, usize> = HashMap::new();
    let mut current = seed.clone();
    for k in 0.. {
        if let Some(&first) = seen.get(&current) {
            return Ok((first, k));
        }
        seen.insert(current.clone(), k);
        // F ∘ E^(k+1) = (F ∘ E^k) ∘ E
        current = endo.then(&current)?;
    }
    unreachable!()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HopfReport {
    pub endofunctors: usize,
    pub full_and_essentially_surjective: usize,
    /// Full, essentially surjective endofunctors that are not faithful.
    pub violators: Vec<FunctorTable>,
}

impl HopfReport {
    pub fn passed(&self) -> bool {
        self.violators.is_empty()
    }
}

/// Checks every endofunctor: full and essentially surjective must imply
/// faithful.
pub fn check_hopfian_finite(category: &FiniteCategory) -> HopfReport {
    let endofunctors = enumerate_functor_tables(category, category);
    let mut report = HopfReport {
        endofunctors: endofunctors.len(),
        full_and_essentially_surjective: 0,
        violators: Vec::new(),
    };
    for e in endofunctors {
        let props = e.properties(category, category);
        if props.full && props.essentially_surjective {
            report.full_and_essentially_surjective += 1;
            if !props.faithful {
                report.violators.push(e);
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{group_category, poset_category};
    use crate::GroupTable;

    #[test]
    fn identity_period() {
        let z3 = group_category(&GroupTable::cyclic(3));
        let id = FunctorTable::identity(&z3);
        assert_eq!(functor_power_periodicity(&id, &id).unwrap(), (0, 1));
    }

    #[test]
    fn idempotent_period() {
        let z2 = group_category(&GroupTable::cyclic(2));
        let trivial = FunctorTable::constant(&z2, &z2, 0);
        let id = FunctorTable::identity(&z2);
        assert_eq!(functor_power_periodicity(&id, &trivial).unwrap(), (1, 2));
    }

    #[test]
    fn involution_period() {
        let z3 = group_category(&GroupTable::cyclic(3));
        let swap = FunctorTable::new(vec![0], vec![0, 2, 1]);
        swap.validate(&z3, &z3).unwrap();
        let id = FunctorTable::identity(&z3);
        assert_eq!(functor_power_periodicity(&id, &swap).unwrap(), (0, 2));
    }

    #[test]
    fn hopf_examples() {
        let z2 = group_category(&GroupTable::cyclic(2));
        let r = check_hopfian_finite(&z2);
        assert!(r.passed());
        assert_eq!((r.endofunctors, r.full_and_essentially_surjective), (2, 1));

        let chain = poset_category(2, |a, b| a <= b).unwrap();
        let r = check_hopfian_finite(&chain);
        assert!(r.passed());
        assert_eq!((r.endofunctors, r.full_and_essentially_surjective), (3, 1));

        assert!(check_hopfian_finite(&FiniteCategory::terminal()).passed());
    }
}

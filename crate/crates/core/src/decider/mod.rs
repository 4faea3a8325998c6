//! The interleaved word-problem procedure and constructive separators.
//!
//! [`decide`] alternates one congruence stage with one size cell of the
//! category enumeration. A derivation found by the first branch proves the
//! paths equal; a functor into an enumerated category with different images
//! proves them distinct. Since every functor respects the congruence, at most
//! one branch can succeed.

mod separators;

use std::collections::HashMap;
use std::ops::ControlFlow;
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::{Arc, Mutex, OnceLock};

use thiserror::Error;

use crate::category::{FiniteCategory, Mor};
use crate::congruence::{find_derivation, replay_derivation, CongruenceError, Derivation};
use crate::enumeration::{diagonal_cells, enumerate_finite_categories, enumerate_finite_categories_parallel, for_each_functor};
use crate::functor::{FpFunctor, FunctorError};
use crate::quiver::{Path, PathError, Presentation};

pub use separators::{
    endpoint_separator, separate_many, separator_free, separator_matrix, transport_separator,
    transport_table_separator, ManySeparator, MatrixSeparator, SeparateError, SeparatorError, TableSeparator,
    FREE_WORD_LIMIT,
};

pub const DEFAULT_MAX_STAGE: usize = 8;
pub const DEFAULT_MAX_OBJECTS: usize = 2;
pub const DEFAULT_MAX_MORPHISMS: usize = 5;

/// Search bounds for [`decide`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Budget {
    pub max_stage: usize,
    pub max_objects: usize,
    pub max_morphisms: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_stage: DEFAULT_MAX_STAGE,
            max_objects: DEFAULT_MAX_OBJECTS,
            max_morphisms: DEFAULT_MAX_MORPHISMS,
        }
    }
}

/// A functor into a finite category under which two paths differ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparatorWitness {
    pub category: FiniteCategory,
    pub functor: FpFunctor,
    pub images: (Mor, Mor),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WitnessError {
    #[error("functor is invalid: {0}")]
    Functor(#[from] FunctorError),
    #[error("recorded images ({recorded_left}, {recorded_right}) differ from computed ({left}, {right})")]
    ImageMismatch {
        recorded_left: Mor,
        recorded_right: Mor,
        left: Mor,
        right: Mor,
    },
    #[error("both paths map to morphism {0}")]
    NotSeparated(Mor),
    #[error("category is not valid")]
    InvalidCategory,
}

impl SeparatorWitness {
    /// Recomputes the images and checks the functor, the relations and the
    /// inequality.
    pub fn verify(&self, presentation: &Presentation, p: &Path, q: &Path) -> Result<(), WitnessError> {
        if !self.category.is_valid() {
            return Err(WitnessError::InvalidCategory);
        }
        self.functor.check(presentation, &self.category)?;
        let left = self.functor.evaluate(&self.category, p)?;
        let right = self.functor.evaluate(&self.category, q)?;
        if (left, right) != self.images {
            return Err(WitnessError::ImageMismatch {
                recorded_left: self.images.0,
                recorded_right: self.images.1,
                left,
                right,
            });
        }
        if left == right {
            return Err(WitnessError::NotSeparated(left));
        }
        Ok(())
    }

    /// Moves identities first in the witness category, remapping the functor,
    /// so that morphism numbers agree with the canonical dump.
    pub fn normalized(self) -> SeparatorWitness {
        if self.category.is_normalized() {
            return self;
        }
        let (category, perm) = self.category.normalized();
        let edge_map = self.functor.edge_map().iter().map(|&f| perm[f]).collect();
        SeparatorWitness {
            category,
            functor: FpFunctor::new(self.functor.object_map().to_vec(), edge_map),
            images: (perm[self.images.0], perm[self.images.1]),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Equal(Derivation),
    Distinct(SeparatorWitness),
    /// Endpoints differ; the witness maps into a complete graph category.
    NotParallel(SeparatorWitness),
    /// Both searches ran out of budget.
    Unknown(Budget),
}

impl Verdict {
    pub fn name(&self) -> &'static str {
        match self {
            Verdict::Equal(_) => "equal",
            Verdict::Distinct(_) => "distinct",
            Verdict::NotParallel(_) => "not-parallel",
            Verdict::Unknown(_) => "unknown",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecideError {
    #[error("invalid path: {0}")]
    InvalidPath(#[from] PathError),
    #[error(transparent)]
    Congruence(#[from] CongruenceError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerdictError {
    #[error("derivation does not replay: {0}")]
    Replay(#[from] crate::congruence::ReplayError),
    #[error("derivation connects different paths")]
    WrongEndpoints,
    #[error("witness does not verify: {0}")]
    Witness(#[from] WitnessError),
    #[error("paths are parallel")]
    Parallel,
}

/// Re-checks the certificate carried by a verdict.
pub fn verify_verdict(presentation: &Presentation, p: &Path, q: &Path, verdict: &Verdict) -> Result<(), VerdictError> {
    match verdict {
        Verdict::Equal(d) => {
            let (start, end) = replay_derivation(presentation, d)?;
            if (&start, &end) != (p, q) {
                return Err(VerdictError::WrongEndpoints);
            }
            Ok(())
        }
        Verdict::Distinct(w) => Ok(w.verify(presentation, p, q)?),
        Verdict::NotParallel(w) => {
            if p.is_parallel_to(q) {
                return Err(VerdictError::Parallel);
            }
            Ok(w.verify(presentation, p, q)?)
        }
        Verdict::Unknown(_) => Ok(()),
    }
}

type CellKey = (usize, usize);

fn cell_cache() -> &'static Mutex<HashMap<CellKey, Arc<OnceLock<Vec<FiniteCategory>>>>> {
    static CACHE: OnceLock<Mutex<HashMap<CellKey, Arc<OnceLock<Vec<FiniteCategory>>>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Labeled categories of one size, enumerated once per process.
pub fn cell_categories(n: usize, m: usize, parallel: bool) -> Arc<OnceLock<Vec<FiniteCategory>>> {
    let slot = cell_cache().lock().expect("cache lock").entry((n, m)).or_default().clone();
    slot.get_or_init(|| {
        if parallel {
            enumerate_finite_categories_parallel(n, m, false)
        } else {
            enumerate_finite_categories(n, m, false)
        }
    });
    slot
}

/// First functor (in enumeration order) into a category of the cell that
/// separates `p` from `q`.
fn search_cell(
    presentation: &Presentation,
    p: &Path,
    q: &Path,
    (n, m): CellKey,
    parallel: bool,
    stop: Option<&AtomicBool>,
) -> Option<SeparatorWitness> {
    let slot = cell_categories(n, m, parallel);
    let categories = slot.get().expect("initialized");
    for category in categories {
        if stop.is_some_and(|s| s.load(Ordering::Relaxed)) {
            return None;
        }
        let found = for_each_functor(presentation, category, |functor| {
            let left = functor.evaluate(category, p).expect("typed path");
            let right = functor.evaluate(category, q).expect("typed path");
            if left != right {
                ControlFlow::Break((functor.clone(), left, right))
            } else {
                ControlFlow::Continue(())
            }
        });
        if let Some((functor, left, right)) = found {
            return Some(
                SeparatorWitness {
                    category: category.clone(),
                    functor,
                    images: (left, right),
                }
                .normalized(),
            );
        }
    }
    None
}

/// Runs the word-problem procedure with the given bounds.
#[derive(Debug, Clone, Copy, Default)]
pub struct Decider {
    pub budget: Budget,
    /// Run the two branches on separate threads; the verdict is unchanged.
    pub parallel: bool,
}

impl Decider {
    pub fn new(budget: Budget) -> Self {
        Decider {
            budget,
            parallel: false,
        }
    }

    pub fn parallel(mut self, parallel: bool) -> Self {
        self.parallel = parallel;
        self
    }

    pub fn decide(&self, presentation: &Presentation, p: &Path, q: &Path) -> Result<Verdict, DecideError> {
        let quiver = presentation.quiver();
        quiver.check_path(p)?;
        quiver.check_path(q)?;
        if !p.is_parallel_to(q) {
            let witness = endpoint_separator(presentation, p, q).expect("endpoints differ");
            return Ok(Verdict::NotParallel(witness));
        }
        let cells = if self.budget.max_objects == 0 || self.budget.max_morphisms < 1 {
            Vec::new()
        } else {
            diagonal_cells(self.budget.max_objects, self.budget.max_morphisms)
        };
        if self.parallel {
            self.decide_parallel(presentation, p, q, &cells)
        } else {
            self.decide_interleaved(presentation, p, q, &cells)
        }
    }

    fn decide_interleaved(
        &self,
        presentation: &Presentation,
        p: &Path,
        q: &Path,
        cells: &[CellKey],
    ) -> Result<Verdict, DecideError> {
        let rounds = (self.budget.max_stage + 1).max(cells.len());
        for round in 0..rounds {
            if round <= self.budget.max_stage {
                if let Some(d) = find_derivation(presentation, p, q, round)? {
                    return Ok(Verdict::Equal(d));
                }
            }
            if let Some(&cell) = cells.get(round) {
                if let Some(w) = search_cell(presentation, p, q, cell, false, None) {
                    return Ok(Verdict::Distinct(w));
                }
            }
        }
        Ok(Verdict::Unknown(self.budget))
    }

    fn decide_parallel(
        &self,
        presentation: &Presentation,
        p: &Path,
        q: &Path,
        cells: &[CellKey],
    ) -> Result<Verdict, DecideError> {
        let stop = AtomicBool::new(false);
        let (derivation, witness) = std::thread::scope(|scope| {
            let congruence = scope.spawn(|| {
                for stage in 0..=self.budget.max_stage {
                    if stop.load(Ordering::Relaxed) {
                        return Ok(None);
                    }
                    match find_derivation(presentation, p, q, stage) {
                        Ok(Some(d)) => {
                            stop.store(true, Ordering::Relaxed);
                            return Ok(Some(d));
                        }
                        Ok(None) => {}
                        Err(e) => return Err((stage, e)),
                    }
                }
                Ok(None)
            });
            let functors = scope.spawn(|| {
                for (index, &cell) in cells.iter().enumerate() {
                    if let Some(w) = search_cell(presentation, p, q, cell, true, Some(&stop)) {
                        stop.store(true, Ordering::Relaxed);
                        return Some((index, w));
                    }
                    if stop.load(Ordering::Relaxed) {
                        return None;
                    }
                }
                None
            });
            (
                congruence.join().expect("congruence thread"),
                functors.join().expect("functor thread"),
            )
        });
        // At most one branch succeeds and each scans in a fixed order, so
        // the outcome matches the interleaved schedule, where stage r runs
        // before cell r.
        match (derivation, witness) {
            (Ok(Some(d)), _) => Ok(Verdict::Equal(d)),
            (Err((stage, _)), Some((cell, w))) if cell < stage => Ok(Verdict::Distinct(w)),
            (Err((_, e)), _) => Err(e.into()),
            (Ok(None), Some((_, w))) => Ok(Verdict::Distinct(w)),
            (Ok(None), None) => Ok(Verdict::Unknown(self.budget)),
        }
    }
}

pub fn decide(presentation: &Presentation, p: &Path, q: &Path, budget: Budget) -> Result<Verdict, DecideError> {
    Decider::new(budget).decide(presentation, p, q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::Quiver;

    fn cyclic(k: usize) -> Presentation {
        let q = Quiver::anonymous(1, &[(0, 0)]).unwrap();
        let a = Path::edge(&q, 0).unwrap();
        Presentation::new(q, vec![(a.power(k).unwrap(), Path::identity(0))]).unwrap()
    }

    fn a_pow(k: usize) -> Path {
        let q = Quiver::anonymous(1, &[(0, 0)]).unwrap();
        Path::new(&q, 0, vec![0; k]).unwrap()
    }

    #[test]
    fn odd_power_is_equal() {
        let p = cyclic(2);
        let v = decide(&p, &a_pow(3), &a_pow(1), Budget::default()).unwrap();
        let Verdict::Equal(d) = &v else { panic!("{v:?}") };
        assert_eq!(d.len(), 1);
        verify_verdict(&p, &a_pow(3), &a_pow(1), &v).unwrap();
    }

    #[test]
    fn generator_is_not_identity() {
        let p = cyclic(2);
        let v = decide(&p, &a_pow(1), &a_pow(0), Budget::default()).unwrap();
        let Verdict::Distinct(w) = &v else { panic!("{v:?}") };
        assert_eq!((w.category.objects(), w.category.morphisms()), (1, 2));
        verify_verdict(&p, &a_pow(1), &a_pow(0), &v).unwrap();
    }

    #[test]
    fn tiny_budget_is_unknown() {
        let p = cyclic(2);
        let budget = Budget {
            max_stage: 2,
            max_objects: 1,
            max_morphisms: 1,
        };
        assert_eq!(
            decide(&p, &a_pow(1), &a_pow(0), budget).unwrap(),
            Verdict::Unknown(budget)
        );
    }

    #[test]
    fn parallel_agrees() {
        let p = cyclic(3);
        for (i, j) in [(0, 1), (1, 4), (2, 5), (0, 3)] {
            let seq = decide(&p, &a_pow(i), &a_pow(j), Budget::default()).unwrap();
            let par = Decider::new(Budget::default())
                .parallel(true)
                .decide(&p, &a_pow(i), &a_pow(j))
                .unwrap();
            assert_eq!(seq, par);
        }
    }

    #[test]
    fn endpoints_short_circuit() {
        let q = Quiver::anonymous(2, &[(0, 1)]).unwrap();
        let e = Path::edge(&q, 0).unwrap();
        let p = Presentation::free(q);
        let v = decide(&p, &e, &Path::identity(0), Budget::default()).unwrap();
        assert!(matches!(v, Verdict::NotParallel(_)));
        verify_verdict(&p, &e, &Path::identity(0), &v).unwrap();
    }

    #[test]
    fn tampered_witness_rejected() {
        let p = cyclic(2);
        let v = decide(&p, &a_pow(1), &a_pow(0), Budget::default()).unwrap();
        let Verdict::Distinct(mut w) = v else { panic!() };
        w.images = (w.images.1, w.images.0);
        assert!(w.verify(&p, &a_pow(1), &a_pow(0)).is_err());
    }
}

//! Finite and finitely presented categories.
//!
//! The crate represents categories either by a finite presentation (a quiver
//! with relations between parallel paths) or by an explicit composition
//! table, and decides word-problem instances by running two searches side by
//! side: an enumeration of the congruence generated by the relations, which
//! certifies equality with a derivation, and an enumeration of functors into
//! small finite categories, which certifies inequality with a separating
//! functor.

pub mod category;
pub mod cli;
pub mod congruence;
pub mod constructions;
pub mod counterexamples;
pub mod decider;
pub mod enumeration;
pub mod functor;
pub mod group;
pub mod quiver;

pub use category::{validate_finite_category, FiniteCategory, Law, Mor, Obj, ValidationReport, Violation};
pub use functor::{evaluate_functor, functor_properties, FpFunctor, FunctorProperties, FunctorTable};
pub use group::GroupTable;
pub use quiver::{Path, Presentation, PresentationMap, Quiver};

/// All permutations of `0..k` in lexicographic order.
pub(crate) fn permutations(k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..k).collect();
    loop {
        out.push(current.clone());
        // next lexicographic permutation
        let Some(i) = (1..k).rev().find(|&i| current[i - 1] < current[i]) else {
            return out;
        };
        let j = (i..k).rev().find(|&j| current[j] > current[i - 1]).expect("successor exists");
        current.swap(i - 1, j);
        current[i..].reverse();
    }
}

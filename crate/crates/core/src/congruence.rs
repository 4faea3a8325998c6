//! Staged enumeration of the congruence generated by a presentation's
//! relations.
//!
//! Two paths are related at stage `L` when a chain of one-step substitutions
//! (replace an occurrence of one side of a relation by the other side) joins
//! them and every path along the chain has length at most `L`. Every such
//! chain is also a checkable [`Derivation`].

use std::collections::{HashMap, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::quiver::{Path, PathError, Presentation};

pub const DEFAULT_PATH_CAP: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CongruenceError {
    #[error("stage needs {paths} paths, more than the cap of {cap}")]
    StageTooLarge { paths: usize, cap: usize },
    #[error("paths have different endpoints and cannot be congruent")]
    NotParallel,
    #[error("invalid path: {0}")]
    InvalidPath(#[from] PathError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("step {index}: {reason}")]
pub struct ReplayError {
    pub index: usize,
    pub reason: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    /// Left side replaced by right side.
    Forward,
    Backward,
}

impl Direction {
    pub fn as_str(self) -> &'static str {
        match self {
            Direction::Forward => "ltr",
            Direction::Backward => "rtl",
        }
    }

    pub fn parse(text: &str) -> Option<Direction> {
        match text {
            "ltr" => Some(Direction::Forward),
            "rtl" => Some(Direction::Backward),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Step {
    pub position: usize,
    pub relation: usize,
    pub direction: Direction,
    pub result: Path,
}

/// A chain of substitutions starting at `start`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Derivation {
    pub start: Path,
    pub steps: Vec<Step>,
}

impl Derivation {
    pub fn trivial(start: Path) -> Self {
        Derivation {
            start,
            steps: Vec::new(),
        }
    }

    pub fn end(&self) -> &Path {
        self.steps.last().map_or(&self.start, |s| &s.result)
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// The same chain read backwards.
    pub fn reversed(&self) -> Derivation {
        let mut paths: Vec<&Path> = vec![&self.start];
        paths.extend(self.steps.iter().map(|s| &s.result));
        let steps = self
            .steps
            .iter()
            .enumerate()
            .rev()
            .map(|(i, s)| Step {
                position: s.position,
                relation: s.relation,
                direction: match s.direction {
                    Direction::Forward => Direction::Backward,
                    Direction::Backward => Direction::Forward,
                },
                result: paths[i].clone(),
            })
            .collect();
        Derivation {
            start: self.end().clone(),
            steps,
        }
    }

    /// Line-oriented trace: a `start:` line, then one line per step.
    pub fn display<'a>(&'a self, presentation: &'a Presentation) -> DerivationDisplay<'a> {
        DerivationDisplay {
            derivation: self,
            presentation,
        }
    }
}

pub struct DerivationDisplay<'a> {
    derivation: &'a Derivation,
    presentation: &'a Presentation,
}

impl fmt::Display for DerivationDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let quiver = self.presentation.quiver();
        writeln!(f, "start: {}", self.derivation.start.display(quiver))?;
        for (k, step) in self.derivation.steps.iter().enumerate() {
            writeln!(
                f,
                "step {}: at {} apply {} {} -> {}",
                k + 1,
                step.position,
                Presentation::relation_name(step.relation),
                step.direction.as_str(),
                step.result.display(quiver)
            )?;
        }
        Ok(())
    }
}

fn sides(presentation: &Presentation, relation: usize, direction: Direction) -> (&Path, &Path) {
    let (lhs, rhs) = &presentation.relations()[relation];
    match direction {
        Direction::Forward => (lhs, rhs),
        Direction::Backward => (rhs, lhs),
    }
}

/// All one-step substitutions of `path`, ordered by position, then relation,
/// then direction.
pub fn rewrites(presentation: &Presentation, path: &Path) -> Vec<Step> {
    let quiver = presentation.quiver();
    let mut steps = Vec::new();
    for relation in 0..presentation.relations().len() {
        for direction in [Direction::Forward, Direction::Backward] {
            let (from, to) = sides(presentation, relation, direction);
            if from == to {
                continue;
            }
            for position in path.occurrences(quiver, from) {
                steps.push(Step {
                    position,
                    relation,
                    direction,
                    result: path.splice(position, from.len(), to),
                });
            }
        }
    }
    steps.sort_by(|a, b| {
        (a.position, a.relation, a.direction, &a.result).cmp(&(b.position, b.relation, b.direction, &b.result))
    });
    steps.dedup();
    steps
}

/// Breadth-first search for a shortest substitution chain from `p` to `q`
/// through paths of length at most `max_stage`.
///
/// The search explores the whole component of `p` within the bound, so it
/// finds a derivation whenever one exists inside the bound.
pub fn find_derivation(
    presentation: &Presentation,
    p: &Path,
    q: &Path,
    max_stage: usize,
) -> Result<Option<Derivation>, CongruenceError> {
    find_derivation_capped(presentation, p, q, max_stage, DEFAULT_PATH_CAP)
}

pub fn find_derivation_capped(
    presentation: &Presentation,
    p: &Path,
    q: &Path,
    max_stage: usize,
    cap: usize,
) -> Result<Option<Derivation>, CongruenceError> {
    let quiver = presentation.quiver();
    quiver.check_path(p)?;
    quiver.check_path(q)?;
    if !p.is_parallel_to(q) {
        return Err(CongruenceError::NotParallel);
    }
    if p == q {
        return Ok(Some(Derivation::trivial(p.clone())));
    }
    if p.len() > max_stage || q.len() > max_stage {
        return Ok(None);
    }
    // node -> (parent node, step that produced it)
    let mut nodes: Vec<Path> = vec![p.clone()];
    let mut parent: Vec<Option<(usize, Step)>> = vec![None];
    let mut index: HashMap<Path, usize> = HashMap::from([(p.clone(), 0)]);
    let mut queue = VecDeque::from([0usize]);
    while let Some(current) = queue.pop_front() {
        for step in rewrites(presentation, &nodes[current]) {
            if step.result.len() > max_stage || index.contains_key(&step.result) {
                continue;
            }
            let id = nodes.len();
            if id >= cap {
                return Err(CongruenceError::StageTooLarge { paths: id + 1, cap });
            }
            index.insert(step.result.clone(), id);
            nodes.push(step.result.clone());
            let reached = step.result == *q;
            parent.push(Some((current, step)));
            if reached {
                return Ok(Some(trace_back(&nodes, &parent, id)));
            }
            queue.push_back(id);
        }
    }
    Ok(None)
}

fn trace_back(nodes: &[Path], parent: &[Option<(usize, Step)>], mut at: usize) -> Derivation {
    let mut steps = Vec::new();
    while let Some((prev, step)) = &parent[at] {
        steps.push(step.clone());
        at = *prev;
    }
    steps.reverse();
    Derivation {
        start: nodes[at].clone(),
        steps,
    }
}

/// Checks every step of `derivation` against `presentation` and returns the
/// start and end paths.
pub fn replay_derivation(presentation: &Presentation, derivation: &Derivation) -> Result<(Path, Path), ReplayError> {
    let quiver = presentation.quiver();
    quiver.check_path(&derivation.start).map_err(|e| ReplayError {
        index: 0,
        reason: format!("start path is invalid: {e}"),
    })?;
    let mut current = derivation.start.clone();
    for (i, step) in derivation.steps.iter().enumerate() {
        let index = i + 1;
        let fail = |reason: String| ReplayError { index, reason };
        if step.relation >= presentation.relations().len() {
            return Err(fail(format!("no relation {}", Presentation::relation_name(step.relation))));
        }
        let (from, to) = sides(presentation, step.relation, step.direction);
        if !current.occurrences(quiver, from).contains(&step.position) {
            return Err(fail(format!(
                "`{}` does not occur at position {}",
                from.display(quiver),
                step.position
            )));
        }
        let expected = current.splice(step.position, from.len(), to);
        if expected != step.result {
            return Err(fail(format!(
                "substitution gives `{}`, not `{}`",
                expected.display(quiver),
                step.result.display(quiver)
            )));
        }
        current = expected;
    }
    Ok((derivation.start.clone(), current))
}

/// All paths of length at most `bound`, partitioned into classes of the
/// stage-`bound` congruence.
#[derive(Debug, Clone)]
pub struct CongruenceStage {
    bound: usize,
    paths: Vec<Path>,
    index: HashMap<Path, usize>,
    class_of: Vec<usize>,
    classes: Vec<Vec<usize>>,
}

impl CongruenceStage {
    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn paths(&self) -> &[Path] {
        &self.paths
    }

    /// Classes as lists of path indices; each class and the list of classes
    /// are sorted shortlex, so `class[0]` is the representative.
    pub fn classes(&self) -> impl Iterator<Item = Vec<&Path>> {
        self.classes
            .iter()
            .map(|members| members.iter().map(|&i| &self.paths[i]).collect())
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    /// `None` when a path is outside this stage.
    pub fn are_congruent(&self, p: &Path, q: &Path) -> Option<bool> {
        let (&i, &j) = (self.index.get(p)?, self.index.get(q)?);
        Some(self.class_of[i] == self.class_of[j])
    }

    /// Shortlex-least member of the class of `p`.
    pub fn representative(&self, p: &Path) -> Option<&Path> {
        let class = self.class_of[*self.index.get(p)?];
        Some(&self.paths[self.classes[class][0]])
    }

    /// Extracts a derivation inside this stage.
    pub fn derivation(&self, presentation: &Presentation, p: &Path, q: &Path) -> Option<Derivation> {
        if self.are_congruent(p, q)? {
            find_derivation(presentation, p, q, self.bound).ok().flatten()
        } else {
            None
        }
    }
}

pub fn congruence_stage(presentation: &Presentation, bound: usize) -> Result<CongruenceStage, CongruenceError> {
    congruence_stage_capped(presentation, bound, DEFAULT_PATH_CAP)
}

pub fn congruence_stage_capped(
    presentation: &Presentation,
    bound: usize,
    cap: usize,
) -> Result<CongruenceStage, CongruenceError> {
    let quiver = presentation.quiver();
    let count = quiver.count_paths_up_to(bound);
    if count > cap {
        return Err(CongruenceError::StageTooLarge { paths: count, cap });
    }
    let paths = quiver.paths_up_to(bound);
    let index: HashMap<Path, usize> = paths.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    let mut parent: Vec<usize> = (0..paths.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for (i, path) in paths.iter().enumerate() {
        for step in rewrites(presentation, path) {
            if let Some(&j) = index.get(&step.result) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    // keep the smaller index (shortlex-smaller path) as root
                    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                    parent[hi] = lo;
                }
            }
        }
    }
    let mut class_index: HashMap<usize, usize> = HashMap::new();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut class_of = vec![0; paths.len()];
    for i in 0..paths.len() {
        let root = find(&mut parent, i);
        let class = *class_index.entry(root).or_insert_with(|| {
            classes.push(Vec::new());
            classes.len() - 1
        });
        classes[class].push(i);
        class_of[i] = class;
    }
    Ok(CongruenceStage {
        bound,
        paths,
        index,
        class_of,
        classes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::Quiver;

    /// ⟨a: v -> v | a*a = id(v)⟩
    fn involution() -> Presentation {
        let mut q = Quiver::new();
        let v = q.add_vertex("v").unwrap();
        let a = q.add_edge("a", v, v).unwrap();
        let aa = Path::from_edges(&q, vec![a, a]).unwrap();
        Presentation::new(q, vec![(aa, Path::identity(v))]).unwrap()
    }

    fn a_pow(p: &Presentation, k: usize) -> Path {
        Path::new(p.quiver(), 0, vec![0; k]).unwrap()
    }

    #[test]
    fn involution_classes_at_stage_three() {
        let p = involution();
        let stage = congruence_stage(&p, 3).unwrap();
        assert_eq!(stage.class_count(), 2);
        assert_eq!(stage.are_congruent(&a_pow(&p, 0), &a_pow(&p, 2)), Some(true));
        assert_eq!(stage.are_congruent(&a_pow(&p, 1), &a_pow(&p, 3)), Some(true));
        assert_eq!(stage.are_congruent(&a_pow(&p, 0), &a_pow(&p, 1)), Some(false));
        assert_eq!(stage.representative(&a_pow(&p, 3)), Some(&a_pow(&p, 1)));
    }

    #[test]
    fn free_presentation_has_singleton_classes() {
        let q = Quiver::anonymous(2, &[(0, 1), (1, 0), (0, 0)]).unwrap();
        let p = Presentation::free(q);
        let stage = congruence_stage(&p, 4).unwrap();
        assert_eq!(stage.class_count(), stage.paths().len());
    }

    #[test]
    fn commutation_relates_ab_and_ba_only() {
        let q = Quiver::anonymous(1, &[(0, 0), (0, 0)]).unwrap();
        let ab = Path::from_edges(&q, vec![0, 1]).unwrap();
        let ba = Path::from_edges(&q, vec![1, 0]).unwrap();
        let a = Path::edge(&q, 0).unwrap();
        let b = Path::edge(&q, 1).unwrap();
        let p = Presentation::new(q, vec![(ab.clone(), ba.clone())]).unwrap();
        let stage = congruence_stage(&p, 2).unwrap();
        assert_eq!(stage.are_congruent(&ab, &ba), Some(true));
        assert_eq!(stage.are_congruent(&a, &b), Some(false));
    }

    #[test]
    fn one_step_derivation() {
        let p = involution();
        let d = find_derivation(&p, &a_pow(&p, 3), &a_pow(&p, 1), 3).unwrap().unwrap();
        assert_eq!(d.len(), 1);
        assert_eq!(d.steps[0].position, 0);
        assert_eq!(d.steps[0].direction, Direction::Forward);
        assert_eq!(d.display(&p).to_string(), "start: a * a * a\nstep 1: at 0 apply r0 ltr -> a\n");
        assert_eq!(replay_derivation(&p, &d).unwrap(), (a_pow(&p, 3), a_pow(&p, 1)));
    }

    #[test]
    fn reflexive_derivation_is_empty() {
        let p = involution();
        let d = find_derivation(&p, &a_pow(&p, 2), &a_pow(&p, 2), 0).unwrap().unwrap();
        assert!(d.is_empty());
        assert_eq!(replay_derivation(&p, &d).unwrap(), (a_pow(&p, 2), a_pow(&p, 2)));
    }

    #[test]
    fn parity_blocks_derivation() {
        let p = involution();
        assert_eq!(find_derivation(&p, &a_pow(&p, 1), &a_pow(&p, 0), 5).unwrap(), None);
    }

    #[test]
    fn non_parallel_query() {
        let q = Quiver::anonymous(2, &[(0, 1)]).unwrap();
        let e = Path::edge(&q, 0).unwrap();
        let p = Presentation::free(q);
        assert_eq!(
            find_derivation(&p, &e, &Path::identity(0), 3),
            Err(CongruenceError::NotParallel)
        );
    }

    #[test]
    fn tampered_step_rejected() {
        let p = involution();
        let mut d = find_derivation(&p, &a_pow(&p, 5), &a_pow(&p, 1), 5).unwrap().unwrap();
        assert_eq!(d.len(), 2);
        d.steps[1].position = 7;
        let err = replay_derivation(&p, &d).unwrap_err();
        assert_eq!(err.index, 2);
        let mut d2 = find_derivation(&p, &a_pow(&p, 3), &a_pow(&p, 1), 3).unwrap().unwrap();
        d2.steps[0].result = a_pow(&p, 2);
        assert_eq!(replay_derivation(&p, &d2).unwrap_err().index, 1);
    }

    #[test]
    fn reversed_derivation_replays() {
        let p = involution();
        let d = find_derivation(&p, &a_pow(&p, 1), &a_pow(&p, 5), 5).unwrap().unwrap();
        let r = d.reversed();
        assert_eq!(replay_derivation(&p, &r).unwrap(), (a_pow(&p, 5), a_pow(&p, 1)));
    }

    #[test]
    fn odd_powers_merge_exactly_at_their_length() {
        let p = involution();
        for k in 1..4 {
            let long = a_pow(&p, 2 * k + 1);
            let below = congruence_stage(&p, 2 * k).unwrap();
            assert_eq!(below.are_congruent(&long, &a_pow(&p, 1)), None);
            let at = congruence_stage(&p, 2 * k + 1).unwrap();
            assert_eq!(at.are_congruent(&long, &a_pow(&p, 1)), Some(true));
        }
    }

    #[test]
    fn stage_cap_enforced() {
        let q = Quiver::anonymous(1, &[(0, 0), (0, 0)]).unwrap();
        let p = Presentation::free(q);
        assert!(matches!(
            congruence_stage_capped(&p, 10, 100),
            Err(CongruenceError::StageTooLarge { .. })
        ));
    }
}

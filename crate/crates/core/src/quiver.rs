//! Quivers, directed paths, and finite presentations.
//!
//! A [`Path`] always records its source and target vertex, so the empty path
//! at `v` is a first-class value and `source`/`target` are total. Edge
//! sequences are stored in diagrammatic order: the first edge traversed comes
//! first.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

pub type VertexId = usize;
pub type EdgeId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuiverError {
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("duplicate edge `{0}`")]
    DuplicateEdge(String),
    #[error("vertex index {0} is not declared")]
    UnknownVertex(VertexId),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PathError {
    #[error("edge index {0} is not declared")]
    UnknownEdge(EdgeId),
    #[error("vertex index {0} is not declared")]
    UnknownVertex(VertexId),
    #[error("edges at positions {position} and {} do not compose", position + 1)]
    NonComposable { position: usize },
    #[error("path ending at vertex {target} cannot be followed by a path starting at vertex {start}")]
    EndpointMismatch { target: VertexId, start: VertexId },
    #[error("path is inconsistent with its recorded endpoints")]
    BadEndpoints,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("relation {index} relates paths that are not parallel")]
    NonParallelRelation { index: usize },
    #[error("relation {index}: {source}")]
    InvalidPath { index: usize, source: PathError },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Edge {
    pub name: String,
    pub source: VertexId,
    pub target: VertexId,
}

/// A finite directed multigraph with named vertices and edges.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    edges: Vec<Edge>,
    vertex_index: HashMap<String, VertexId>,
    edge_index: HashMap<String, EdgeId>,
}

impl Quiver {
    pub fn new() -> Self {
        Self::default()
    }

    /// Quiver with vertices `v0, v1, ...` and edges `e0, e1, ...`.
    pub fn anonymous(vertices: usize, edges: &[(VertexId, VertexId)]) -> Result<Self, QuiverError> {
        let mut quiver = Quiver::new();
        for v in 0..vertices {
            quiver.add_vertex(format!("v{v}"))?;
        }
        for (i, &(s, t)) in edges.iter().enumerate() {
            quiver.add_edge(format!("e{i}"), s, t)?;
        }
        Ok(quiver)
    }

    pub fn add_vertex(&mut self, name: impl Into<String>) -> Result<VertexId, QuiverError> {
        let name = name.into();
        if self.vertex_index.contains_key(&name) {
            return Err(QuiverError::DuplicateVertex(name));
        }
        let id = self.vertices.len();
        self.vertex_index.insert(name.clone(), id);
        self.vertices.push(name);
        Ok(id)
    }

    pub fn add_edge(
        &mut self,
        name: impl Into<String>,
        source: VertexId,
        target: VertexId,
    ) -> Result<EdgeId, QuiverError> {
        let name = name.into();
        for v in [source, target] {
            if v >= self.vertices.len() {
                return Err(QuiverError::UnknownVertex(v));
            }
        }
        if self.edge_index.contains_key(&name) {
            return Err(QuiverError::DuplicateEdge(name));
        }
        let id = self.edges.len();
        self.edge_index.insert(name.clone(), id);
        self.edges.push(Edge { name, source, target });
        Ok(id)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices[v]
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertices
    }

    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[e]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex_id(&self, name: &str) -> Option<VertexId> {
        self.vertex_index.get(name).copied()
    }

    pub fn edge_id(&self, name: &str) -> Option<EdgeId> {
        self.edge_index.get(name).copied()
    }

    /// Checks that `path` is a well-formed path of this quiver.
    pub fn check_path(&self, path: &Path) -> Result<(), PathError> {
        for v in [path.source, path.target] {
            if v >= self.vertex_count() {
                return Err(PathError::UnknownVertex(v));
            }
        }
        let rebuilt = Path::new(self, path.source, path.edges.clone())?;
        if rebuilt.target != path.target {
            return Err(PathError::BadEndpoints);
        }
        Ok(())
    }

    /// All paths of length at most `max_len`, in shortlex order.
    pub fn paths_up_to(&self, max_len: usize) -> Vec<Path> {
        let mut out: Vec<Path> = (0..self.vertex_count()).map(Path::identity).collect();
        let mut frontier: Vec<Path> = Vec::new();
        for len in 1..=max_len {
            let mut next = Vec::new();
            if len == 1 {
                for e in 0..self.edge_count() {
                    next.push(Path::edge(self, e).expect("declared edge"));
                }
            } else {
                for p in &frontier {
                    for (e, edge) in self.edges.iter().enumerate() {
                        if edge.source == p.target {
                            let mut edges = p.edges.clone();
                            edges.push(e);
                            next.push(Path {
                                source: p.source,
                                target: edge.target,
                                edges,
                            });
                        }
                    }
                }
            }
            next.sort();
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out
    }

    /// Number of paths of length at most `max_len`, saturating at `usize::MAX`.
    pub fn count_paths_up_to(&self, max_len: usize) -> usize {
        let n = self.vertex_count();
        // ending[v] = number of paths of the current length ending at v
        let mut ending = vec![1usize; n];
        let mut total = n;
        for _ in 0..max_len {
            let mut next = vec![0usize; n];
            for edge in &self.edges {
                next[edge.target] = next[edge.target].saturating_add(ending[edge.source]);
            }
            total = next.iter().fold(total, |acc, &c| acc.saturating_add(c));
            ending = next;
        }
        total
    }
}

/// A directed path in a quiver.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Path {
    source: VertexId,
    target: VertexId,
    edges: Vec<EdgeId>,
}

impl Path {
    pub fn identity(v: VertexId) -> Path {
        Path {
            source: v,
            target: v,
            edges: Vec::new(),
        }
    }

    pub fn edge(quiver: &Quiver, e: EdgeId) -> Result<Path, PathError> {
        let edge = quiver.edges.get(e).ok_or(PathError::UnknownEdge(e))?;
        Ok(Path {
            source: edge.source,
            target: edge.target,
            edges: vec![e],
        })
    }

    /// Builds a path starting at `source`; `source` must match the first edge.
    pub fn new(quiver: &Quiver, source: VertexId, edges: Vec<EdgeId>) -> Result<Path, PathError> {
        if source >= quiver.vertex_count() {
            return Err(PathError::UnknownVertex(source));
        }
        let mut at = source;
        for (i, &e) in edges.iter().enumerate() {
            let edge = quiver.edges.get(e).ok_or(PathError::UnknownEdge(e))?;
            if edge.source != at {
                return Err(if i == 0 {
                    PathError::BadEndpoints
                } else {
                    PathError::NonComposable { position: i - 1 }
                });
            }
            at = edge.target;
        }
        Ok(Path {
            source,
            target: at,
            edges,
        })
    }

    /// Builds a non-empty path from its edges alone.
    pub fn from_edges(quiver: &Quiver, edges: Vec<EdgeId>) -> Result<Path, PathError> {
        let first = *edges.first().ok_or(PathError::BadEndpoints)?;
        let source = quiver.edges.get(first).ok_or(PathError::UnknownEdge(first))?.source;
        Path::new(quiver, source, edges)
    }

    pub fn source(&self) -> VertexId {
        self.source
    }

    pub fn target(&self) -> VertexId {
        self.target
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn is_parallel_to(&self, other: &Path) -> bool {
        self.source == other.source && self.target == other.target
    }

    /// Concatenation: `self` first, then `next`.
    pub fn then(&self, next: &Path) -> Result<Path, PathError> {
        if self.target != next.source {
            return Err(PathError::EndpointMismatch {
                target: self.target,
                start: next.source,
            });
        }
        let mut edges = self.edges.clone();
        edges.extend_from_slice(&next.edges);
        Ok(Path {
            source: self.source,
            target: next.target,
            edges,
        })
    }

    /// `self` repeated `k` times; requires a closed path unless `k <= 1`.
    pub fn power(&self, k: usize) -> Result<Path, PathError> {
        let mut out = Path::identity(self.source);
        for _ in 0..k {
            out = out.then(self)?;
        }
        Ok(out)
    }

    /// Vertex reached after traversing the first `position` edges.
    pub fn vertex_at(&self, quiver: &Quiver, position: usize) -> VertexId {
        if position == 0 {
            self.source
        } else {
            quiver.edges[self.edges[position - 1]].target
        }
    }

    /// Positions at which `pattern` occurs as a contiguous sub-path.
    ///
    /// An empty pattern at `v` occurs at every position whose vertex is `v`.
    pub fn occurrences(&self, quiver: &Quiver, pattern: &Path) -> Vec<usize> {
        if pattern.is_empty() {
            return (0..=self.len())
                .filter(|&i| self.vertex_at(quiver, i) == pattern.source)
                .collect();
        }
        if pattern.len() > self.len() {
            return Vec::new();
        }
        (0..=self.len() - pattern.len())
            .filter(|&i| self.edges[i..i + pattern.len()] == pattern.edges[..])
            .collect()
    }

    /// Replaces the `removed` edges starting at `position` with `replacement`.
    ///
    /// The caller guarantees that the replaced segment and `replacement` are
    /// parallel, so the endpoints of the whole path are unchanged.
    pub fn splice(&self, position: usize, removed: usize, replacement: &Path) -> Path {
        let mut edges = Vec::with_capacity(self.len() - removed + replacement.len());
        edges.extend_from_slice(&self.edges[..position]);
        edges.extend_from_slice(&replacement.edges);
        edges.extend_from_slice(&self.edges[position + removed..]);
        Path {
            source: self.source,
            target: self.target,
            edges,
        }
    }

    pub fn display<'a>(&'a self, quiver: &'a Quiver) -> PathDisplay<'a> {
        PathDisplay { path: self, quiver }
    }
}

/// Shortlex: shorter paths first, then lexicographic on edge indices.
impl Ord for Path {
    fn cmp(&self, other: &Self) -> Ordering {
        self.edges
            .len()
            .cmp(&other.edges.len())
            .then_with(|| self.edges.cmp(&other.edges))
            .then_with(|| self.source.cmp(&other.source))
            .then_with(|| self.target.cmp(&other.target))
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub struct PathDisplay<'a> {
    path: &'a Path,
    quiver: &'a Quiver,
}

impl fmt::Display for PathDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.is_empty() {
            return write!(f, "id({})", self.quiver.vertex_name(self.path.source));
        }
        for (i, &e) in self.path.edges.iter().enumerate() {
            if i > 0 {
                f.write_str(" * ")?;
            }
            f.write_str(&self.quiver.edge(e).name)?;
        }
        Ok(())
    }
}

/// A finite quiver together with finitely many pairs of parallel paths.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    quiver: Quiver,
    relations: Vec<(Path, Path)>,
}

impl Presentation {
    pub fn new(quiver: Quiver, relations: Vec<(Path, Path)>) -> Result<Self, PresentationError> {
        for (index, (lhs, rhs)) in relations.iter().enumerate() {
            for side in [lhs, rhs] {
                quiver
                    .check_path(side)
                    .map_err(|source| PresentationError::InvalidPath { index, source })?;
            }
            if !lhs.is_parallel_to(rhs) {
                return Err(PresentationError::NonParallelRelation { index });
            }
        }
        Ok(Presentation { quiver, relations })
    }

    /// The free category on `quiver`: no relations.
    pub fn free(quiver: Quiver) -> Self {
        Presentation {
            quiver,
            relations: Vec::new(),
        }
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn relations(&self) -> &[(Path, Path)] {
        &self.relations
    }

    pub fn relation_name(index: usize) -> String {
        format!("r{index}")
    }

    /// Inverse of [`Presentation::relation_name`].
    pub fn parse_relation_name(name: &str) -> Option<usize> {
        let digits = name.strip_prefix('r')?;
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        digits.parse().ok()
    }
}

/// A morphism of presentations given on generators: vertices to vertices and
/// edges to paths.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PresentationMap {
    pub vertex_map: Vec<VertexId>,
    pub edge_map: Vec<Path>,
}

impl PresentationMap {
    /// Checks typing against `source` and `target` quivers. Relations are not
    /// checked here.
    pub fn check(&self, source: &Quiver, target: &Quiver) -> Result<(), PathError> {
        if self.vertex_map.len() != source.vertex_count() || self.edge_map.len() != source.edge_count() {
            return Err(PathError::BadEndpoints);
        }
        for &v in &self.vertex_map {
            if v >= target.vertex_count() {
                return Err(PathError::UnknownVertex(v));
            }
        }
        for (e, image) in self.edge_map.iter().enumerate() {
            target.check_path(image)?;
            let edge = source.edge(e);
            if image.source() != self.vertex_map[edge.source] || image.target() != self.vertex_map[edge.target] {
                return Err(PathError::BadEndpoints);
            }
        }
        Ok(())
    }

    pub fn apply(&self, path: &Path) -> Path {
        let mut out = Path::identity(self.vertex_map[path.source()]);
        for &e in path.edges() {
            out = out.then(&self.edge_map[e]).expect("typed presentation map");
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle() -> Quiver {
        // v -a-> w -b-> v, plus c: u -> v
        let mut q = Quiver::new();
        let v = q.add_vertex("v").unwrap();
        let w = q.add_vertex("w").unwrap();
        let u = q.add_vertex("u").unwrap();
        q.add_edge("a", v, w).unwrap();
        q.add_edge("b", w, v).unwrap();
        q.add_edge("c", u, v).unwrap();
        q
    }

    #[test]
    fn identity_is_neutral() {
        let q = cycle();
        let a = Path::edge(&q, 0).unwrap();
        assert_eq!(Path::identity(0).then(&a).unwrap(), a);
        assert_eq!(a.then(&Path::identity(1)).unwrap(), a);
    }

    #[test]
    fn concatenation() {
        let q = cycle();
        let ab = Path::edge(&q, 0).unwrap().then(&Path::edge(&q, 1).unwrap()).unwrap();
        assert_eq!(ab.source(), 0);
        assert_eq!(ab.target(), 0);
        assert_eq!(ab.edges(), &[0, 1]);
        assert_eq!(ab.display(&q).to_string(), "a * b");
    }

    #[test]
    fn endpoint_mismatch() {
        let q = cycle();
        let a = Path::edge(&q, 0).unwrap();
        let c = Path::edge(&q, 2).unwrap();
        assert!(matches!(a.then(&c), Err(PathError::EndpointMismatch { .. })));
        assert!(matches!(
            Path::from_edges(&q, vec![0, 2]),
            Err(PathError::NonComposable { position: 0 })
        ));
    }

    #[test]
    fn duplicate_names_rejected() {
        let mut q = cycle();
        assert_eq!(q.add_vertex("v"), Err(QuiverError::DuplicateVertex("v".into())));
        assert_eq!(q.add_edge("a", 0, 0), Err(QuiverError::DuplicateEdge("a".into())));
        assert_eq!(q.add_edge("z", 0, 9), Err(QuiverError::UnknownVertex(9)));
    }

    #[test]
    fn empty_pattern_occurs_at_matching_vertices() {
        let q = cycle();
        let abab = Path::from_edges(&q, vec![0, 1, 0, 1]).unwrap();
        assert_eq!(abab.occurrences(&q, &Path::identity(0)), vec![0, 2, 4]);
        assert_eq!(abab.occurrences(&q, &Path::identity(1)), vec![1, 3]);
        let ab = Path::from_edges(&q, vec![0, 1]).unwrap();
        assert_eq!(abab.occurrences(&q, &ab), vec![0, 2]);
    }

    #[test]
    fn path_counts_match_enumeration() {
        let q = cycle();
        for len in 0..6 {
            assert_eq!(q.paths_up_to(len).len(), q.count_paths_up_to(len));
        }
    }

    #[test]
    fn non_parallel_relation_rejected() {
        let q = cycle();
        let a = Path::edge(&q, 0).unwrap();
        let err = Presentation::new(q, vec![(a, Path::identity(0))]).unwrap_err();
        assert_eq!(err, PresentationError::NonParallelRelation { index: 0 });
    }

    #[test]
    fn relation_names_round_trip() {
        assert_eq!(Presentation::parse_relation_name(&Presentation::relation_name(12)), Some(12));
        assert_eq!(Presentation::parse_relation_name("r"), None);
        assert_eq!(Presentation::parse_relation_name("x1"), None);
    }
}

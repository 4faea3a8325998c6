//! Line-oriented presentation files and the textual witness format.

use std::fmt::Write as _;

use thiserror::Error;

use crate::congruence::Derivation;
use crate::decider::SeparatorWitness;
use crate::quiver::{Path, PathError, Presentation, PresentationError, Quiver, QuiverError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PathSyntaxError {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("unknown name `{0}`")]
    UnknownName(String),
    #[error("path is not composable: {0}")]
    NonComposable(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("unknown name `{0}`")]
    UnknownName(String),
    #[error("duplicate name `{0}`")]
    DuplicateName(String),
    #[error("relation sides are not parallel")]
    NonParallelRelation,
    #[error("path is not composable: {0}")]
    NonComposablePath(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

impl From<PathSyntaxError> for ParseErrorKind {
    fn from(e: PathSyntaxError) -> Self {
        match e {
            PathSyntaxError::Syntax(s) => ParseErrorKind::Syntax(s),
            PathSyntaxError::UnknownName(s) => ParseErrorKind::UnknownName(s),
            PathSyntaxError::NonComposable(s) => ParseErrorKind::NonComposablePath(s),
        }
    }
}

pub fn is_name(s: &str) -> bool {
    let mut chars = s.chars();
    chars
        .next()
        .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn name(s: &str) -> Result<&str, PathSyntaxError> {
    if is_name(s) {
        Ok(s)
    } else {
        Err(PathSyntaxError::Syntax(format!("`{s}` is not a valid name")))
    }
}

/// Parses `id(<vertex>)` or `e1 * e2 * ... * ek`.
pub fn parse_path(quiver: &Quiver, text: &str) -> Result<Path, PathSyntaxError> {
    let text = text.trim();
    if let Some(inner) = text.strip_prefix("id(").and_then(|t| t.strip_suffix(')')) {
        let vertex = name(inner.trim())?;
        let v = quiver
            .vertex_id(vertex)
            .ok_or_else(|| PathSyntaxError::UnknownName(vertex.to_string()))?;
        return Ok(Path::identity(v));
    }
    if text.is_empty() {
        return Err(PathSyntaxError::Syntax("empty path; write id(<vertex>)".into()));
    }
    let mut edges = Vec::new();
    for part in text.split('*') {
        let edge = name(part.trim())?;
        edges.push(
            quiver
                .edge_id(edge)
                .ok_or_else(|| PathSyntaxError::UnknownName(edge.to_string()))?,
        );
    }
    Path::from_edges(quiver, edges).map_err(|e| match e {
        PathError::NonComposable { position } => PathSyntaxError::NonComposable(format!(
            "target of `{}` is not the source of `{}`",
            part_name(text, position),
            part_name(text, position + 1)
        )),
        other => PathSyntaxError::NonComposable(other.to_string()),
    })
}

fn part_name(text: &str, index: usize) -> String {
    text.split('*').nth(index).unwrap_or("?").trim().to_string()
}

fn strip_comment(line: &str) -> &str {
    line.split_once('#').map_or(line, |(code, _)| code).trim()
}

/// Parses a presentation file; names must be declared before use.
pub fn parse_presentation(text: &str) -> Result<Presentation, ParseError> {
    let mut quiver = Quiver::new();
    let mut relations: Vec<(Path, Path, usize)> = Vec::new();
    for (index, raw) in text.lines().enumerate() {
        let line = index + 1;
        let err = |kind| ParseError { line, kind };
        let content = strip_comment(raw);
        if content.is_empty() {
            continue;
        }
        let (keyword, rest) = content.split_once(char::is_whitespace).unwrap_or((content, ""));
        let rest = rest.trim();
        match keyword {
            "vertex" => {
                let v = name(rest).map_err(|e| err(e.into()))?;
                quiver.add_vertex(v).map_err(|_| err(ParseErrorKind::DuplicateName(v.into())))?;
            }
            "edge" => {
                let syntax = || err(ParseErrorKind::Syntax("expected `edge <name> : <src> -> <tgt>`".into()));
                let (e, ends) = rest.split_once(':').ok_or_else(syntax)?;
                let (src, tgt) = ends.split_once("->").ok_or_else(syntax)?;
                let e = name(e.trim()).map_err(|x| err(x.into()))?;
                let src = name(src.trim()).map_err(|x| err(x.into()))?;
                let tgt = name(tgt.trim()).map_err(|x| err(x.into()))?;
                let s = quiver
                    .vertex_id(src)
                    .ok_or_else(|| err(ParseErrorKind::UnknownName(src.into())))?;
                let t = quiver
                    .vertex_id(tgt)
                    .ok_or_else(|| err(ParseErrorKind::UnknownName(tgt.into())))?;
                quiver.add_edge(e, s, t).map_err(|x| match x {
                    QuiverError::DuplicateEdge(_) => err(ParseErrorKind::DuplicateName(e.into())),
                    other => err(ParseErrorKind::Syntax(other.to_string())),
                })?;
            }
            "relation" => {
                let (l, r) = rest
                    .split_once('=')
                    .ok_or_else(|| err(ParseErrorKind::Syntax("expected `relation <path> = <path>`".into())))?;
                let lhs = parse_path(&quiver, l).map_err(|e| err(e.into()))?;
                let rhs = parse_path(&quiver, r).map_err(|e| err(e.into()))?;
                if !lhs.is_parallel_to(&rhs) {
                    return Err(err(ParseErrorKind::NonParallelRelation));
                }
                relations.push((lhs, rhs, line));
            }
            other => return Err(err(ParseErrorKind::Syntax(format!("unknown keyword `{other}`")))),
        }
    }
    let lines: Vec<usize> = relations.iter().map(|r| r.2).collect();
    Presentation::new(quiver, relations.into_iter().map(|(l, r, _)| (l, r)).collect()).map_err(|e| match e {
        PresentationError::NonParallelRelation { index } => ParseError {
            line: lines[index],
            kind: ParseErrorKind::NonParallelRelation,
        },
        PresentationError::InvalidPath { index, source } => ParseError {
            line: lines[index],
            kind: ParseErrorKind::NonComposablePath(source.to_string()),
        },
    })
}

pub fn serialize_presentation(presentation: &Presentation) -> String {
    let quiver = presentation.quiver();
    let mut out = String::new();
    for v in quiver.vertex_names() {
        let _ = writeln!(out, "vertex {v}");
    }
    for e in quiver.edges() {
        let _ = writeln!(
            out,
            "edge {} : {} -> {}",
            e.name,
            quiver.vertex_name(e.source),
            quiver.vertex_name(e.target)
        );
    }
    for (l, r) in presentation.relations() {
        let _ = writeln!(out, "relation {} = {}", l.display(quiver), r.display(quiver));
    }
    out
}

/// Category dump, generator images and the two image morphisms.
pub fn format_witness(presentation: &Presentation, witness: &SeparatorWitness) -> String {
    let quiver = presentation.quiver();
    let mut out = String::from("witness\n");
    out.push_str(&witness.category.dump());
    out.push_str("functor\n");
    for (v, name) in quiver.vertex_names().iter().enumerate() {
        let _ = writeln!(out, "object {name} -> {}", witness.functor.object(v));
    }
    for (e, edge) in quiver.edges().iter().enumerate() {
        let _ = writeln!(out, "edge {} -> {}", edge.name, witness.functor.edge(e));
    }
    let _ = writeln!(out, "images {} {}", witness.images.0, witness.images.1);
    out
}

pub fn format_derivation(presentation: &Presentation, derivation: &Derivation) -> String {
    format!("derivation\n{}", derivation.display(presentation))
}

#[cfg(test)]
mod tests {
    use super::*;

    const Z2: &str = "vertex v\nedge a : v -> v\nrelation a * a = id(v)\n";

    #[test]
    fn parses_involution() {
        let p = parse_presentation(Z2).unwrap();
        assert_eq!(p.quiver().vertex_count(), 1);
        assert_eq!(p.relations().len(), 1);
        assert_eq!(serialize_presentation(&p), Z2);
    }

    #[test]
    fn comments_and_blank_lines() {
        let text = "# involution\n\nvertex v   # the object\nedge a : v -> v\n\nrelation a*a = id( v )\n";
        assert_eq!(parse_presentation(text).unwrap(), parse_presentation(Z2).unwrap());
    }

    #[test]
    fn non_parallel_relation() {
        let text = "vertex v\nvertex w\nedge a : v -> w\nedge b : v -> v\nrelation a = b\n";
        assert_eq!(
            parse_presentation(text).unwrap_err(),
            ParseError {
                line: 5,
                kind: ParseErrorKind::NonParallelRelation
            }
        );
    }

    #[test]
    fn non_composable_path() {
        let text = "vertex u\nvertex v\nvertex w\nedge a : v -> w\nedge c : u -> v\nrelation a * c = a * c\n";
        let e = parse_presentation(text).unwrap_err();
        assert_eq!(e.line, 6);
        assert!(matches!(e.kind, ParseErrorKind::NonComposablePath(_)));
    }

    #[test]
    fn unknown_and_duplicate_names() {
        let e = parse_presentation("vertex v\nedge a : v -> w\n").unwrap_err();
        assert_eq!((e.line, e.kind), (2, ParseErrorKind::UnknownName("w".into())));
        let e = parse_presentation("vertex v\nvertex v\n").unwrap_err();
        assert_eq!((e.line, e.kind), (2, ParseErrorKind::DuplicateName("v".into())));
        let e = parse_presentation("vertex 1v\n").unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::Syntax(_)));
        let e = parse_presentation("vertx v\n").unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::Syntax(_)));
    }

    #[test]
    fn path_arguments() {
        let p = parse_presentation(Z2).unwrap();
        let q = p.quiver();
        assert_eq!(parse_path(q, "a * a * a").unwrap().len(), 3);
        assert_eq!(parse_path(q, "id(v)").unwrap(), Path::identity(0));
        assert!(parse_path(q, "").is_err());
        assert!(parse_path(q, "a * * a").is_err());
        assert_eq!(parse_path(q, "b"), Err(PathSyntaxError::UnknownName("b".into())));
    }
}

//! JSON forms of verdicts; fields mirror the textual formats.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::category::{CategoryError, FiniteCategory};
use crate::congruence::{Derivation, Direction, Step};
use crate::decider::{Budget, SeparatorWitness, Verdict};
use crate::functor::FpFunctor;
use crate::quiver::{Path, Presentation};

use super::format::{parse_path, PathSyntaxError};

#[derive(Debug, Error)]
pub enum JsonError {
    #[error("malformed JSON: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error("bad path `{text}`: {source}")]
    Path { text: String, source: PathSyntaxError },
    #[error("bad category: {0}")]
    Category(#[from] CategoryError),
    #[error("{0}")]
    Content(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CategoryJson {
    pub n: usize,
    pub m: usize,
    pub dom: Vec<usize>,
    pub cod: Vec<usize>,
    pub id: Vec<usize>,
    /// Row `g`, column `f` holds `g ∘ f`.
    pub comp: Vec<Vec<Option<usize>>>,
}

impl CategoryJson {
    pub fn from_category(cat: &FiniteCategory) -> Self {
        let m = cat.morphisms();
        CategoryJson {
            n: cat.objects(),
            m,
            dom: (0..m).map(|f| cat.dom(f)).collect(),
            cod: (0..m).map(|f| cat.cod(f)).collect(),
            id: cat.identities().to_vec(),
            comp: (0..m).map(|g| (0..m).map(|f| cat.compose(g, f)).collect()).collect(),
        }
    }

    pub fn to_category(&self) -> Result<FiniteCategory, JsonError> {
        if self.dom.len() != self.m || self.comp.len() != self.m || self.comp.iter().any(|row| row.len() != self.m) {
            return Err(JsonError::Content("table sizes disagree with m".into()));
        }
        let comp = self.comp.iter().flatten().copied().collect();
        Ok(FiniteCategory::from_tables(
            self.n,
            self.dom.clone(),
            self.cod.clone(),
            self.id.clone(),
            comp,
        )?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObjectImage {
    pub vertex: String,
    pub object: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeImage {
    pub edge: String,
    pub morphism: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctorJson {
    pub objects: Vec<ObjectImage>,
    pub edges: Vec<EdgeImage>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessJson {
    pub category: CategoryJson,
    pub functor: FunctorJson,
    pub images: [usize; 2],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepJson {
    pub position: usize,
    pub relation: String,
    pub direction: String,
    pub result: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerivationJson {
    pub start: String,
    pub steps: Vec<StepJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BudgetJson {
    pub max_stage: usize,
    pub max_objects: usize,
    pub max_morphisms: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictJson {
    pub verdict: String,
    pub p: String,
    pub q: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub derivation: Option<DerivationJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget: Option<BudgetJson>,
}

pub fn witness_json(presentation: &Presentation, witness: &SeparatorWitness) -> WitnessJson {
    let quiver = presentation.quiver();
    WitnessJson {
        category: CategoryJson::from_category(&witness.category),
        functor: FunctorJson {
            objects: quiver
                .vertex_names()
                .iter()
                .enumerate()
                .map(|(v, name)| ObjectImage {
                    vertex: name.clone(),
                    object: witness.functor.object(v),
                })
                .collect(),
            edges: quiver
                .edges()
                .iter()
                .enumerate()
                .map(|(e, edge)| EdgeImage {
                    edge: edge.name.clone(),
                    morphism: witness.functor.edge(e),
                })
                .collect(),
        },
        images: [witness.images.0, witness.images.1],
    }
}

pub fn derivation_json(presentation: &Presentation, derivation: &Derivation) -> DerivationJson {
    let quiver = presentation.quiver();
    DerivationJson {
        start: derivation.start.display(quiver).to_string(),
        steps: derivation
            .steps
            .iter()
            .map(|s| StepJson {
                position: s.position,
                relation: Presentation::relation_name(s.relation),
                direction: s.direction.as_str().to_string(),
                result: s.result.display(quiver).to_string(),
            })
            .collect(),
    }
}

pub fn verdict_json(presentation: &Presentation, p: &Path, q: &Path, verdict: &Verdict) -> VerdictJson {
    let quiver = presentation.quiver();
    let mut out = VerdictJson {
        verdict: verdict.name().to_string(),
        p: p.display(quiver).to_string(),
        q: q.display(quiver).to_string(),
        derivation: None,
        witness: None,
        budget: None,
    };
    match verdict {
        Verdict::Equal(d) => out.derivation = Some(derivation_json(presentation, d)),
        Verdict::Distinct(w) | Verdict::NotParallel(w) => out.witness = Some(witness_json(presentation, w)),
        Verdict::Unknown(b) => {
            out.budget = Some(BudgetJson {
                max_stage: b.max_stage,
                max_objects: b.max_objects,
                max_morphisms: b.max_morphisms,
            })
        }
    }
    out
}

fn path(presentation: &Presentation, text: &str) -> Result<Path, JsonError> {
    parse_path(presentation.quiver(), text).map_err(|source| JsonError::Path {
        text: text.to_string(),
        source,
    })
}

fn witness_from_json(presentation: &Presentation, w: &WitnessJson) -> Result<SeparatorWitness, JsonError> {
    let quiver = presentation.quiver();
    let category = w.category.to_category()?;
    let mut object_map = vec![None; quiver.vertex_count()];
    for image in &w.functor.objects {
        let v = quiver
            .vertex_id(&image.vertex)
            .ok_or_else(|| JsonError::Content(format!("unknown vertex `{}`", image.vertex)))?;
        object_map[v] = Some(image.object);
    }
    let mut edge_map = vec![None; quiver.edge_count()];
    for image in &w.functor.edges {
        let e = quiver
            .edge_id(&image.edge)
            .ok_or_else(|| JsonError::Content(format!("unknown edge `{}`", image.edge)))?;
        edge_map[e] = Some(image.morphism);
    }
    let object_map = object_map
        .into_iter()
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| JsonError::Content("functor misses a vertex".into()))?;
    let edge_map = edge_map
        .into_iter()
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| JsonError::Content("functor misses an edge".into()))?;
    Ok(SeparatorWitness {
        category,
        functor: FpFunctor::new(object_map, edge_map),
        images: (w.images[0], w.images[1]),
    })
}

/// Rebuilds the paths and the verdict; certificates are not checked here.
pub fn verdict_from_json(presentation: &Presentation, v: &VerdictJson) -> Result<(Path, Path, Verdict), JsonError> {
    let p = path(presentation, &v.p)?;
    let q = path(presentation, &v.q)?;
    let missing = |what: &str| JsonError::Content(format!("verdict `{}` needs a {what}", v.verdict));
    let verdict = match v.verdict.as_str() {
        "equal" => {
            let d = v.derivation.as_ref().ok_or_else(|| missing("derivation"))?;
            let mut steps = Vec::new();
            for s in &d.steps {
                steps.push(Step {
                    position: s.position,
                    relation: Presentation::parse_relation_name(&s.relation)
                        .ok_or_else(|| JsonError::Content(format!("bad relation name `{}`", s.relation)))?,
                    direction: Direction::parse(&s.direction)
                        .ok_or_else(|| JsonError::Content(format!("bad direction `{}`", s.direction)))?,
                    result: path(presentation, &s.result)?,
                });
            }
            Verdict::Equal(Derivation {
                start: path(presentation, &d.start)?,
                steps,
            })
        }
        "distinct" => Verdict::Distinct(witness_from_json(
            presentation,
            v.witness.as_ref().ok_or_else(|| missing("witness"))?,
        )?),
        "not-parallel" => Verdict::NotParallel(witness_from_json(
            presentation,
            v.witness.as_ref().ok_or_else(|| missing("witness"))?,
        )?),
        "unknown" => {
            let b = v.budget.as_ref().ok_or_else(|| missing("budget"))?;
            Verdict::Unknown(Budget {
                max_stage: b.max_stage,
                max_objects: b.max_objects,
                max_morphisms: b.max_morphisms,
            })
        }
        other => return Err(JsonError::Content(format!("unknown verdict `{other}`"))),
    };
    Ok((p, q, verdict))
}

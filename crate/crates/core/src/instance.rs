//! Instance documents.
//!
//! An instance is a single JSON object:
//!
//! ```json
//! {"n":3,"edges":[[1,2],[2,3]],
//!  "colors":[1,2],"m":[1,0],
//!  "vertex_functions":[{"kind":"square"},[0,-1,0],{"kind":"indicator","B":[0,1]}],
//!  "weights":[2,5],
//!  "criteria":{"w":[[1,0,-1]],"f":{"kind":"max_affine","terms":[[[1],0],[[-1],0]]}},
//!  "forest":[0,1,2]}
//! ```
//!
//! Vertices are `1..=n` in documents and `0..n` in memory. Colors are
//! `1..=p` in documents. Every field except `n` and `edges` is optional.
//! A `forest` is a parent array (0 marks a root) shipped as a height
//! certificate with generated instances.
//!
//! Parsing canonicalizes the edge order and permutes per-edge data with it,
//! so `serialize(parse(text))` is the canonical form of `text`. Affine
//! coefficients may be written as a bare number when `r = 1`; they are
//! always serialized as arrays.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{EdgeColoring, Graph};
use crate::objective::{
    AffineForm, ConvexFunction, MultiCriteriaObjective, SeparableObjective, VertexFunction, WeightedInstance,
};
use crate::treedepth::EliminationForest;

/// The builtin convex family of a criteria block.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CriteriaKind {
    MaxAffine,
    SumSquares,
}

/// Criteria weights `w_1..w_r` and a builtin convex function of them.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Criteria {
    pub weights: Vec<Vec<i64>>,
    pub kind: CriteriaKind,
    pub terms: Vec<AffineForm>,
}

impl Criteria {
    pub fn function(&self) -> ConvexFunction {
        match self.kind {
            CriteriaKind::MaxAffine => ConvexFunction::MaxAffine(self.terms.clone()),
            CriteriaKind::SumSquares => ConvexFunction::SumSquares(self.terms.clone()),
        }
    }

    pub fn objective(&self) -> Result<MultiCriteriaObjective> {
        MultiCriteriaObjective::new(self.weights.clone(), self.function())
    }
}

/// An instance document after validation, with 0-based vertices and colors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub graph: Graph,
    pub coloring: Option<EdgeColoring>,
    pub vertex_functions: Option<Vec<VertexFunction>>,
    pub weights: Option<Vec<i64>>,
    pub criteria: Option<Criteria>,
    pub forest: Option<EliminationForest>,
}

impl Instance {
    pub fn new(graph: Graph) -> Self {
        Instance {
            graph,
            coloring: None,
            vertex_functions: None,
            weights: None,
            criteria: None,
            forest: None,
        }
    }

    /// Checks every cross-field invariant.
    pub fn validate(&self) -> Result<()> {
        let g = &self.graph;
        if let Some(c) = &self.coloring {
            EdgeColoring::new(g, c.colors().to_vec(), c.counts().to_vec())?;
        }
        if let Some(w) = &self.weights {
            if w.len() != g.num_edges() {
                return Err(Error::LengthMismatch {
                    what: "edge weights",
                    expected: g.num_edges(),
                    actual: w.len(),
                });
            }
        }
        if self.vertex_functions.is_some() {
            if self.weights.is_some() {
                self.weighted_instance()?;
            } else {
                self.separable_objective()?;
            }
        }
        if let Some(c) = &self.criteria {
            let obj = c.objective()?;
            if obj.n() != g.n() {
                return Err(Error::LengthMismatch {
                    what: "criterion weight vector",
                    expected: g.n(),
                    actual: obj.n(),
                });
            }
        }
        if let Some(f) = &self.forest {
            if f.len() != g.n() {
                return Err(Error::LengthMismatch {
                    what: "forest",
                    expected: g.n(),
                    actual: f.len(),
                });
            }
        }
        Ok(())
    }

    /// The separable objective over the host degree domains.
    pub fn separable_objective(&self) -> Result<SeparableObjective> {
        let f = self
            .vertex_functions
            .as_ref()
            .ok_or_else(|| Error::Invalid("instance has no vertex_functions".into()))?;
        if self.weights.is_some() {
            return Err(Error::Invalid(
                "instance has edge weights; its functions are on weighted degrees".into(),
            ));
        }
        SeparableObjective::from_functions(&self.graph, f)
    }

    pub fn weighted_instance(&self) -> Result<WeightedInstance> {
        let f = self
            .vertex_functions
            .as_ref()
            .ok_or_else(|| Error::Invalid("instance has no vertex_functions".into()))?;
        let w = self
            .weights
            .as_ref()
            .ok_or_else(|| Error::Invalid("instance has no weights".into()))?;
        WeightedInstance::from_functions(self.graph.clone(), w.clone(), f)
    }

    pub fn multicriteria_objective(&self) -> Result<MultiCriteriaObjective> {
        self.criteria
            .as_ref()
            .ok_or_else(|| Error::Invalid("instance has no criteria".into()))?
            .objective()
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInstance {
    n: usize,
    edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    colors: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    m: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    vertex_functions: Option<Vec<RawFunction>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    weights: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    criteria: Option<RawCriteria>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    forest: Option<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum RawFunction {
    Table(Vec<i64>),
    Named(NamedFunction),
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum NamedFunction {
    Square,
    NegSquareShift {
        c: i64,
    },
    Interval {
        l: i64,
        u: i64,
    },
    Indicator {
        #[serde(rename = "B")]
        b: Vec<i64>,
    },
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCriteria {
    w: Vec<Vec<i64>>,
    f: RawConvex,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum RawConvex {
    MaxAffine { terms: Vec<(Coef, i64)> },
    SumSqAffine { terms: Vec<(Coef, i64)> },
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Coef {
    Scalar(i64),
    Vector(Vec<i64>),
}

impl From<RawFunction> for VertexFunction {
    fn from(raw: RawFunction) -> Self {
        match raw {
            RawFunction::Table(t) => VertexFunction::Table(t),
            RawFunction::Named(NamedFunction::Square) => VertexFunction::Square,
            RawFunction::Named(NamedFunction::NegSquareShift { c }) => VertexFunction::NegSquareShift { c },
            RawFunction::Named(NamedFunction::Interval { l, u }) => VertexFunction::Interval { l, u },
            RawFunction::Named(NamedFunction::Indicator { b }) => VertexFunction::Indicator { set: b },
        }
    }
}

impl From<&VertexFunction> for RawFunction {
    fn from(f: &VertexFunction) -> Self {
        match f {
            VertexFunction::Table(t) => RawFunction::Table(t.clone()),
            VertexFunction::Square => RawFunction::Named(NamedFunction::Square),
            VertexFunction::NegSquareShift { c } => RawFunction::Named(NamedFunction::NegSquareShift { c: *c }),
            VertexFunction::Interval { l, u } => RawFunction::Named(NamedFunction::Interval { l: *l, u: *u }),
            VertexFunction::Indicator { set } => RawFunction::Named(NamedFunction::Indicator { b: set.clone() }),
        }
    }
}

fn permute<T: Clone>(values: &[T], perm: &[usize], what: &'static str) -> Result<Vec<T>> {
    if values.len() != perm.len() {
        return Err(Error::LengthMismatch {
            what,
            expected: perm.len(),
            actual: values.len(),
        });
    }
    Ok(perm.iter().map(|&p| values[p].clone()).collect())
}

fn semantic(err: Error) -> Error {
    match err {
        Error::Invalid(_) | Error::LengthMismatch { .. } | Error::MalformedForest(_) => err,
        other => Error::Invalid(other.to_string()),
    }
}

fn from_raw(raw: RawInstance) -> Result<Instance> {
    let pairs = raw
        .edges
        .iter()
        .map(|&[a, b]| {
            if a == 0 || b == 0 {
                Err(Error::Invalid(format!("edge [{a},{b}]: vertices are numbered from 1")))
            } else {
                Ok((a - 1, b - 1))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let (graph, perm) = Graph::with_permutation(raw.n, pairs)?;
    let coloring = match (raw.colors, raw.m) {
        (None, None) => None,
        (Some(_), None) => return Err(Error::Invalid("colors given without m".into())),
        (None, Some(m)) => {
            if m.len() != 1 {
                return Err(Error::Invalid("m with more than one count requires colors".into()));
            }
            Some(EdgeColoring::uniform(&graph, m[0])?)
        }
        (Some(colors), Some(m)) => {
            let colors = permute(&colors, &perm, "edge colors")?;
            let colors = colors
                .into_iter()
                .enumerate()
                .map(|(e, c)| {
                    if c == 0 || c > m.len() {
                        Err(Error::Invalid(format!(
                            "edge {} has color {c}, expected 1..={}",
                            e + 1,
                            m.len()
                        )))
                    } else {
                        Ok(c - 1)
                    }
                })
                .collect::<Result<Vec<_>>>()?;
            Some(EdgeColoring::new(&graph, colors, m)?)
        }
    };
    let weights = raw.weights.map(|w| permute(&w, &perm, "edge weights")).transpose()?;
    let criteria = raw.criteria.map(|c| -> Result<Criteria> {
        let (kind, terms) = match c.f {
            RawConvex::MaxAffine { terms } => (CriteriaKind::MaxAffine, terms),
            RawConvex::SumSqAffine { terms } => (CriteriaKind::SumSquares, terms),
        };
        let terms = terms
            .into_iter()
            .map(|(coef, constant)| {
                let coef = match coef {
                    Coef::Scalar(a) => vec![a],
                    Coef::Vector(v) => v,
                };
                AffineForm::new(coef, constant)
            })
            .collect();
        Ok(Criteria {
            weights: c.w,
            kind,
            terms,
        })
    });
    let forest = raw
        .forest
        .map(|labels| EliminationForest::from_parent_labels(&labels))
        .transpose()?;
    let instance = Instance {
        graph,
        coloring,
        vertex_functions: raw
            .vertex_functions
            .map(|v| v.into_iter().map(VertexFunction::from).collect()),
        weights,
        criteria: criteria.transpose()?,
        forest,
    };
    instance.validate()?;
    Ok(instance)
}

/// Parses and validates an instance document. Malformed JSON and type
/// mismatches are reported as [`Error::Syntax`] with a position; broken
/// invariants as [`Error::Invalid`] or [`Error::LengthMismatch`].
pub fn parse_instance(text: &str) -> Result<Instance> {
    let raw: RawInstance = serde_json::from_str(text).map_err(|e| Error::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    from_raw(raw).map_err(semantic)
}

/// Canonical single-line serialization, terminated by a newline.
pub fn serialize_instance(instance: &Instance) -> Result<String> {
    instance.validate()?;
    let g = &instance.graph;
    let raw = RawInstance {
        n: g.n(),
        edges: g.edges().iter().map(|&(a, b)| [a + 1, b + 1]).collect(),
        colors: instance
            .coloring
            .as_ref()
            .map(|c| c.colors().iter().map(|&k| k + 1).collect()),
        m: instance.coloring.as_ref().map(|c| c.counts().to_vec()),
        vertex_functions: instance
            .vertex_functions
            .as_ref()
            .map(|v| v.iter().map(RawFunction::from).collect()),
        weights: instance.weights.clone(),
        criteria: instance.criteria.as_ref().map(|c| {
            let terms = c
                .terms
                .iter()
                .map(|t| (Coef::Vector(t.coef.clone()), t.constant))
                .collect();
            RawCriteria {
                w: c.weights.clone(),
                f: match c.kind {
                    CriteriaKind::MaxAffine => RawConvex::MaxAffine { terms },
                    CriteriaKind::SumSquares => RawConvex::SumSqAffine { terms },
                },
            }
        }),
        forest: instance.forest.as_ref().map(|f| f.parent_labels()),
    };
    let mut text = serde_json::to_string(&raw).map_err(|e| Error::Invalid(e.to_string()))?;
    text.push('\n');
    Ok(text)
}

/// Parses a forest document: a JSON array of parent labels, 0 for roots.
pub fn parse_forest(text: &str) -> Result<EliminationForest> {
    let labels: Vec<usize> = serde_json::from_str(text).map_err(|e| Error::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    EliminationForest::from_parent_labels(&labels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{degree_sequence, EdgeSubset};
    use proptest::prelude::*;

    #[test]
    fn minimal_document() {
        let inst = parse_instance(r#"{"n":1,"edges":[]}"#).unwrap();
        assert_eq!(inst.graph, Graph::empty(1));
        assert_eq!(serialize_instance(&inst).unwrap(), "{\"n\":1,\"edges\":[]}\n");
    }

    #[test]
    fn duplicate_edge_rejected() {
        let err = parse_instance(r#"{"n":3,"edges":[[1,2],[2,1]]}"#).unwrap_err();
        assert!(matches!(err, Error::Invalid(ref m) if m.contains("duplicate")), "{err}");
    }

    #[test]
    fn syntax_error_has_position() {
        let err = parse_instance("{\"n\":3,\n\"edges\":[[1,2],}").unwrap_err();
        match err {
            Error::Syntax { line, column, .. } => {
                assert_eq!(line, 2);
                assert!(column > 1);
            }
            other => panic!("{other}"),
        }
    }

    #[test]
    fn count_above_class_size_is_input_error() {
        let err = parse_instance(r#"{"n":3,"edges":[[1,2],[2,3]],"colors":[1,2],"m":[2,0]}"#).unwrap_err();
        assert!(err.is_input_error(), "{err}");
    }

    #[test]
    fn colors_and_weights_follow_canonical_order() {
        let inst = parse_instance(
            r#"{"n":3,"edges":[[3,2],[1,2]],"colors":[2,1],"m":[1,1],"weights":[7,4],
                "vertex_functions":[[0,1,2,3,4],{"kind":"square"},[0,0,0,0,0,0,0,0]]}"#,
        )
        .unwrap();
        assert_eq!(inst.graph.edges(), &[(0, 1), (1, 2)]);
        assert_eq!(inst.coloring.as_ref().unwrap().colors(), &[0, 1]);
        assert_eq!(inst.weights.as_deref(), Some(&[4, 7][..]));
        let w = inst.weighted_instance().unwrap();
        assert_eq!(w.evaluate(&EdgeSubset::full(2)).unwrap(), 4 + 121);
    }

    #[test]
    fn table_length_must_match_domain() {
        let err = parse_instance(r#"{"n":2,"edges":[[1,2]],"vertex_functions":[[0,1,2],[0,1]]}"#).unwrap_err();
        assert!(matches!(err, Error::LengthMismatch { .. }), "{err}");
    }

    #[test]
    fn scalar_coefficients_for_one_criterion() {
        let inst = parse_instance(
            r#"{"n":2,"edges":[[1,2]],"criteria":{"w":[[1,1]],"f":{"kind":"sum_sq_affine","terms":[[1,-1]]}}}"#,
        )
        .unwrap();
        let obj = inst.multicriteria_objective().unwrap();
        let d = degree_sequence(&inst.graph, &EdgeSubset::full(1)).unwrap();
        assert_eq!(obj.evaluate(&d).unwrap(), 1);
        let text = serialize_instance(&inst).unwrap();
        assert!(text.contains(r#""terms":[[[1],-1]]"#), "{text}");
    }

    #[test]
    fn unknown_field_rejected() {
        assert!(parse_instance(r#"{"n":1,"edges":[],"extra":1}"#).is_err());
    }

    fn instance_strategy() -> impl Strategy<Value = Instance> {
        (2usize..7)
            .prop_flat_map(|n| {
                let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
                let k = pairs.len();
                (
                    Just(n),
                    Just(pairs),
                    proptest::collection::vec(any::<bool>(), k),
                    proptest::collection::vec(0usize..3, k),
                    proptest::collection::vec(-5i64..6, n),
                    0u8..4,
                )
            })
            .prop_map(|(n, pairs, keep, colors, w, mode)| {
                let edges: Vec<_> = pairs.iter().zip(&keep).filter(|(_, &k)| k).map(|(&e, _)| e).collect();
                let g = Graph::new(n, edges).unwrap();
                let mut inst = Instance::new(g.clone());
                let colors: Vec<usize> = colors[..g.num_edges()].to_vec();
                let sizes = (0..3).map(|k| colors.iter().filter(|&&c| c == k).count());
                let counts = sizes.map(|s| s / 2).collect();
                inst.coloring = Some(EdgeColoring::new(&g, colors, counts).unwrap());
                let funcs = g
                    .degrees()
                    .iter()
                    .enumerate()
                    .map(|(i, &d)| match (i + mode as usize) % 4 {
                        0 => VertexFunction::Square,
                        1 => VertexFunction::NegSquareShift { c: w[i] },
                        2 => VertexFunction::Indicator {
                            set: vec![0, w[i].abs()],
                        },
                        _ => VertexFunction::Table((0..=d as i64).map(|z| z * w[i]).collect()),
                    })
                    .collect();
                inst.vertex_functions = Some(funcs);
                if mode % 2 == 0 {
                    inst.criteria = Some(Criteria {
                        weights: vec![w.clone(), w.iter().map(|x| -x).collect()],
                        kind: CriteriaKind::MaxAffine,
                        terms: vec![AffineForm::new(vec![1, 2], 3), AffineForm::new(vec![-1, 0], 0)],
                    });
                }
                if mode == 3 {
                    inst.forest = Some(EliminationForest::chain(n));
                }
                inst
            })
    }

    proptest! {
        #[test]
        fn serialize_then_parse_is_identity(inst in instance_strategy()) {
            let text = serialize_instance(&inst).unwrap();
            let back = parse_instance(&text).unwrap();
            prop_assert_eq!(&back, &inst);
            prop_assert_eq!(serialize_instance(&back).unwrap(), text);
        }
    }
}

//! Wire formats. Every scalar travels as an exact string (`"-3/2"`, or a
//! residue for prime fields).

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::algebra::FdAlgebra;
use crate::error::{Error, Result};
use crate::grammar::{parse_presentation, print_presentation};
use crate::linalg::Matrix;
use crate::module::{format_layers, radical_layers, Representation};
use crate::msob::{AxiomFlags, BrickSystem};
use crate::mutation::{Elimination, MutationResult};
use crate::quiver::Presentation;
use crate::scalar::{Field, Scalar};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ArrowJson {
    pub label: String,
    pub source: String,
    pub target: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PresentationJson {
    /// `"Q"` or `"F p"`.
    pub field: String,
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowJson>,
    pub relations: Vec<String>,
}

impl PresentationJson {
    pub fn from_presentation(p: &Presentation) -> Self {
        let q = &p.quiver;
        PresentationJson {
            field: p.field.to_string(),
            vertices: q.vertices.clone(),
            arrows: (0..q.num_arrows())
                .map(|a| ArrowJson {
                    label: q.label(a).into(),
                    source: q.vertex_name(q.source(a)).into(),
                    target: q.vertex_name(q.target(a)).into(),
                })
                .collect(),
            relations: p.relations.iter().map(|r| r.display(q)).collect(),
        }
    }

    /// The canonical text this object stands for.
    pub fn to_text(&self) -> String {
        let mut out = format!("field {}\n", self.field);
        for v in &self.vertices {
            out.push_str(&format!("vertex {v}\n"));
        }
        for a in &self.arrows {
            out.push_str(&format!("arrow {} : {} -> {}\n", a.label, a.source, a.target));
        }
        for r in &self.relations {
            out.push_str(&format!("rel {r}\n"));
        }
        out
    }

    pub fn to_presentation(&self) -> Result<Presentation> {
        parse_presentation(&self.to_text())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ArrowAction {
    pub arrow: String,
    /// Row-major, `dims[source] × dims[target]`.
    pub matrix: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RepresentationJson {
    pub dims: Vec<usize>,
    pub action: Vec<ArrowAction>,
}

pub fn matrix_strings(m: &Matrix) -> Vec<Vec<String>> {
    (0..m.rows()).map(|r| (0..m.cols()).map(|c| m.get(r, c).to_exact_string()).collect()).collect()
}

impl RepresentationJson {
    pub fn from_rep(alg: &FdAlgebra, x: &Representation) -> Self {
        let q = alg.quiver();
        RepresentationJson {
            dims: x.dims.clone(),
            action: x.action.iter().enumerate().map(|(a, m)| ArrowAction { arrow: q.label(a).into(), matrix: matrix_strings(m) }).collect(),
        }
    }

    /// Reads the matrices back and checks shapes and relations.
    pub fn to_rep(&self, alg: &FdAlgebra) -> Result<Representation> {
        let q = alg.quiver();
        if self.dims.len() != q.num_vertices() || self.action.len() != q.num_arrows() {
            return Err(Error::Invalid("representation does not match the quiver".into()));
        }
        let field: Field = alg.field();
        let mut action = Vec::new();
        for (a, act) in self.action.iter().enumerate() {
            if act.arrow != q.label(a) {
                return Err(Error::UnknownArrow(act.arrow.clone()));
            }
            let (r, c) = (self.dims[q.source(a)], self.dims[q.target(a)]);
            if act.matrix.len() != r || act.matrix.iter().any(|row| row.len() != c) {
                return Err(Error::Invalid(format!("matrix of `{}` must be {r}×{c}", act.arrow)));
            }
            let rows = act
                .matrix
                .iter()
                .map(|row| row.iter().map(|s| Scalar::parse_exact(s, field)).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?;
            action.push(Matrix::from_rows(rows, c));
        }
        let x = Representation { dims: self.dims.clone(), action };
        x.check(alg)?;
        Ok(x)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ProvenancedArrowJson {
    pub label: String,
    pub source: String,
    pub target: String,
    pub tag: String,
    pub witness: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationJson {
    pub text: String,
    pub tag: String,
    pub witness: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct VertexMapEntry {
    pub from: String,
    pub to: String,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SimpleImageJson {
    pub vertex: String,
    pub dims: Vec<usize>,
    pub layers: String,
    pub module: RepresentationJson,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Provenance {
    pub arrow_tags: BTreeMap<String, usize>,
    pub relation_tags: BTreeMap<String, usize>,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct MutationResultJson {
    pub vertex: String,
    pub side: String,
    pub raw_presentation: PresentationJson,
    pub reduced_presentation: PresentationJson,
    pub reduced_text: String,
    pub vertex_map: Vec<VertexMapEntry>,
    pub arrows: Vec<ProvenancedArrowJson>,
    pub relations: Vec<RelationJson>,
    pub elimination_log: Vec<Elimination>,
    pub provenance: Provenance,
    pub warnings: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub simple_images: Option<Vec<SimpleImageJson>>,
}

impl MutationResultJson {
    pub fn from_result(r: &MutationResult) -> Self {
        let q = &r.raw.quiver;
        let mut provenance = Provenance { arrow_tags: BTreeMap::new(), relation_tags: BTreeMap::new() };
        for a in &r.arrows {
            *provenance.arrow_tags.entry(format!("{:?}", a.tag)).or_default() += 1;
        }
        for x in &r.relations {
            *provenance.relation_tags.entry(format!("{:?}", x.tag)).or_default() += 1;
        }
        MutationResultJson {
            vertex: q.vertex_name(r.vertex).into(),
            side: if r.plus { "left" } else { "right" }.into(),
            raw_presentation: PresentationJson::from_presentation(&r.raw),
            reduced_presentation: PresentationJson::from_presentation(&r.reduced),
            reduced_text: print_presentation(&r.reduced),
            vertex_map: r.vertex_map.iter().map(|(a, b)| VertexMapEntry { from: a.clone(), to: b.clone() }).collect(),
            arrows: r
                .arrows
                .iter()
                .map(|a| ProvenancedArrowJson {
                    label: a.label.clone(),
                    source: q.vertex_name(a.source).into(),
                    target: q.vertex_name(a.target).into(),
                    tag: format!("{:?}", a.tag),
                    witness: a.witness.clone(),
                })
                .collect(),
            relations: r
                .relations
                .iter()
                .map(|x| RelationJson { text: x.relation.display(q), tag: format!("{:?}", x.tag), witness: x.witness.clone() })
                .collect(),
            elimination_log: r.eliminations.clone(),
            provenance,
            warnings: r.warnings.clone(),
            simple_images: None,
        }
    }
}

pub fn simple_image_json(alg: &FdAlgebra, j: usize, x: &Representation) -> SimpleImageJson {
    SimpleImageJson {
        vertex: alg.quiver().vertex_name(j).into(),
        dims: x.dims.clone(),
        layers: format_layers(alg, &radical_layers(alg, x)),
        module: RepresentationJson::from_rep(alg, x),
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct BrickSystemJson {
    pub bricks: Vec<RepresentationJson>,
    pub dims: Vec<Vec<usize>>,
    pub flags: AxiomFlags,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub multiplicities: Option<Vec<usize>>,
}

impl BrickSystemJson {
    pub fn from_system(alg: &FdAlgebra, s: &BrickSystem) -> Self {
        BrickSystemJson {
            bricks: s.bricks.iter().map(|b| RepresentationJson::from_rep(alg, b)).collect(),
            dims: s.dims.clone(),
            flags: s.flags.clone(),
            multiplicities: s.multiplicities.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ErrorJson {
    pub code: String,
    pub message: String,
}

impl From<&Error> for ErrorJson {
    fn from(e: &Error) -> Self {
        ErrorJson { code: e.code().into(), message: e.to_string() }
    }
}

/// JSON Schemas of the request and response bodies.
pub fn schemas() -> Value {
    let string_matrix = json!({"type": "array", "items": {"type": "array", "items": {"type": "string"}}});
    let presentation = json!({
        "type": "object",
        "required": ["field", "vertices", "arrows", "relations"],
        "properties": {
            "field": {"type": "string", "pattern": "^(Q|F [0-9]+)$"},
            "vertices": {"type": "array", "items": {"type": "string"}},
            "arrows": {"type": "array", "items": {
                "type": "object",
                "required": ["label", "source", "target"],
                "properties": {"label": {"type": "string"}, "source": {"type": "string"}, "target": {"type": "string"}}
            }},
            "relations": {"type": "array", "items": {"type": "string"}}
        }
    });
    let representation = json!({
        "type": "object",
        "required": ["dims", "action"],
        "properties": {
            "dims": {"type": "array", "items": {"type": "integer", "minimum": 0}},
            "action": {"type": "array", "items": {
                "type": "object",
                "required": ["arrow", "matrix"],
                "properties": {"arrow": {"type": "string"}, "matrix": string_matrix}
            }}
        }
    });
    let tagged = |tags: &[&str]| json!({"type": "string", "enum": tags});
    json!({
        "Presentation": presentation,
        "Representation": representation,
        "MutationResult": {
            "type": "object",
            "required": ["rawPresentation", "reducedPresentation", "vertexMap", "arrows", "relations", "eliminationLog", "provenance"],
            "properties": {
                "vertex": {"type": "string"},
                "side": {"enum": ["left", "right"]},
                "rawPresentation": {"$ref": "#/Presentation"},
                "reducedPresentation": {"$ref": "#/Presentation"},
                "reducedText": {"type": "string"},
                "vertexMap": {"type": "array", "items": {"type": "object", "properties": {"from": {"type": "string"}, "to": {"type": "string"}}}},
                "arrows": {"type": "array", "items": {"type": "object", "properties": {
                    "label": {"type": "string"}, "source": {"type": "string"}, "target": {"type": "string"},
                    "tag": tagged(&["A1", "A2", "A3", "A4"]), "witness": {"type": "string"}
                }}},
                "relations": {"type": "array", "items": {"type": "object", "properties": {
                    "text": {"type": "string"}, "tag": tagged(&["R1", "R2", "R3", "R4", "R5"]), "witness": {"type": "string"}
                }}},
                "eliminationLog": {"type": "array", "items": {"type": "object", "properties": {
                    "arrow": {"type": "string"}, "replacement": {"type": "string"}, "relation": {"type": "string"}
                }}},
                "provenance": {"type": "object"},
                "simpleImages": {"type": "array"}
            }
        },
        "BrickSystem": {
            "type": "object",
            "required": ["bricks", "dims", "flags"],
            "properties": {
                "bricks": {"type": "array", "items": {"$ref": "#/Representation"}},
                "dims": {"type": "array", "items": {"type": "array", "items": {"type": "integer"}}},
                "flags": {"type": "object", "properties": {
                    "orthobrick": {"type": "boolean"},
                    "maximality": {"enum": ["checkedTrue", "unchecked", "failed"]},
                    "no2periodic": {"type": "boolean"}
                }}
            }
        },
        "Error": {"type": "object", "required": ["code", "message"], "properties": {"code": {"type": "string"}, "message": {"type": "string"}}}
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::module::{projective, simple};

    #[test]
    fn presentation_round_trip() {
        let p = fixtures::e2();
        let j = PresentationJson::from_presentation(&p);
        let text = serde_json::to_string(&j).unwrap();
        let back: PresentationJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_presentation().unwrap(), p);
        assert_eq!(j.field, "Q");
    }

    #[test]
    fn representation_round_trip() {
        let alg = FdAlgebra::new(&fixtures::e2()).unwrap();
        for x in [projective(&alg, 0), simple(&alg, 2)] {
            let j = RepresentationJson::from_rep(&alg, &x);
            assert_eq!(j.to_rep(&alg).unwrap(), x);
        }
    }

    #[test]
    fn malformed_representation_rejected() {
        let alg = FdAlgebra::new(&fixtures::e2()).unwrap();
        let mut j = RepresentationJson::from_rep(&alg, &projective(&alg, 0));
        j.action[0].matrix.pop();
        assert!(j.to_rep(&alg).is_err());
    }

    #[test]
    fn numbers_are_strings() {
        let alg = FdAlgebra::new(&fixtures::e2()).unwrap();
        let v = serde_json::to_value(RepresentationJson::from_rep(&alg, &projective(&alg, 1))).unwrap();
        assert!(v["action"][0]["matrix"].as_array().unwrap().iter().flat_map(|r| r.as_array().unwrap()).all(Value::is_string));
    }

    #[test]
    fn mutation_result_shape() {
        let alg = FdAlgebra::new(&fixtures::e2()).unwrap();
        let r = crate::mutation::mutate_plus(&alg, 0).unwrap();
        let v = serde_json::to_value(MutationResultJson::from_result(&r)).unwrap();
        for key in ["rawPresentation", "reducedPresentation", "vertexMap", "arrows", "relations", "eliminationLog", "provenance"] {
            assert!(v.get(key).is_some(), "{key}");
        }
        assert_eq!(v["provenance"]["arrowTags"]["A1"], 2);
        assert!(schemas()["MutationResult"]["required"].as_array().unwrap().len() >= 6);
    }
}

//! JSON documents read and written by the command-line tool.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use super::CliError;
use crate::algebra::rational::rational_to_f64;
use crate::algebra::{format_rational, parse_rational, ExactScalar, Rational, SparsePoly};
use crate::polytope::Polytope;
use crate::tensor::BigradedTensor;

/// `{"dim": 2, "vertices": [["0","1/2"], ...], "facets": [[0,1], ...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolytopeDocument {
    pub dim: usize,
    pub vertices: Vec<Vec<Value>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub facets: Option<Vec<Vec<usize>>>,
}

impl PolytopeDocument {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::MalformedInput(e.to_string()))
    }

    /// Coordinates must be rational strings or JSON integers; float literals are rejected.
    pub fn coordinates(&self) -> Result<Vec<Vec<Rational>>, CliError> {
        self.vertices
            .iter()
            .enumerate()
            .map(|(i, row)| {
                row.iter()
                    .map(|v| match v {
                        Value::String(s) => parse_rational(s)
                            .map_err(|e| CliError::MalformedInput(format!("vertex {i}: {e}"))),
                        Value::Number(n) if n.is_i64() || n.is_u64() => {
                            parse_rational(&n.to_string())
                                .map_err(|e| CliError::MalformedInput(e.to_string()))
                        }
                        other => Err(CliError::MalformedInput(format!(
                            "vertex {i}: coordinate {other} is not an exact rational"
                        ))),
                    })
                    .collect()
            })
            .collect()
    }

    pub fn to_polytope(&self) -> Result<Polytope, CliError> {
        let coords = self.coordinates()?;
        Polytope::new(self.dim, coords, self.facets.clone()).map_err(CliError::Validation)
    }
}

/// SHA-256 of the canonical form of a validated polytope.
pub fn polytope_hash(p: &Polytope) -> String {
    let canonical = json!({
        "dim": p.dim(),
        "vertices": p.vertices().iter()
            .map(|v| v.iter().map(format_rational).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
        "facets": p.facets().iter().map(|f| f.vertex_ids().to_vec()).collect::<Vec<_>>(),
    });
    hex::encode(Sha256::digest(canonical.to_string().as_bytes()))
}

/// `{"pi_pow": -1, "terms": {"1": "3/4", "5": "-1/2"}}` with radicands ascending.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScalarDoc {
    pub pi_pow: i32,
    pub terms: Map<String, Value>,
}

impl From<&ExactScalar> for ScalarDoc {
    fn from(x: &ExactScalar) -> Self {
        let terms = x
            .terms()
            .map(|(r, c)| (r.to_string(), Value::String(format_rational(c))))
            .collect();
        Self {
            pi_pow: x.pi_power(),
            terms,
        }
    }
}

impl ScalarDoc {
    pub fn to_scalar(&self) -> Result<ExactScalar, CliError> {
        let terms = self
            .terms
            .iter()
            .map(|(r, c)| {
                let radicand: BigUint = r
                    .parse()
                    .map_err(|_| CliError::MalformedInput(format!("bad radicand {r:?}")))?;
                let coeff = c
                    .as_str()
                    .ok_or_else(|| {
                        CliError::MalformedInput(format!("coefficient of √{r} is not a string"))
                    })
                    .and_then(|s| {
                        parse_rational(s).map_err(|e| CliError::MalformedInput(e.to_string()))
                    })?;
                Ok((radicand, coeff))
            })
            .collect::<Result<Vec<_>, CliError>>()?;
        Ok(ExactScalar::from_parts(self.pi_pow, terms))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EntryDoc {
    pub x_index: Vec<usize>,
    pub u_index: Vec<usize>,
    pub value: ScalarDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub float: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TensorDocument {
    pub j: usize,
    pub r: usize,
    pub s: usize,
    pub method: String,
    pub polytope_hash: String,
    pub entries: Vec<EntryDoc>,
}

impl TensorDocument {
    pub fn new(t: &BigradedTensor, method: &str, hash: &str, float: bool) -> Self {
        let entries = t
            .entries()
            .map(|((x, u), v)| EntryDoc {
                x_index: x.clone(),
                u_index: u.clone(),
                value: v.into(),
                float: float.then(|| v.to_f64()),
            })
            .collect();
        Self {
            j: t.j,
            r: t.r,
            s: t.s,
            method: method.to_string(),
            polytope_hash: hash.to_string(),
            entries,
        }
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::MalformedInput(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("tensor documents serialize")
    }

    /// Exact values keyed as in the document.
    pub fn values(&self) -> Result<Vec<((Vec<usize>, Vec<usize>), ExactScalar)>, CliError> {
        self.entries
            .iter()
            .map(|e| Ok(((e.x_index.clone(), e.u_index.clone()), e.value.to_scalar()?)))
            .collect()
    }
}

pub fn rational_value(q: &Rational, float: bool) -> Value {
    if float {
        json!({ "exact": format_rational(q), "float": rational_to_f64(q) })
    } else {
        Value::String(format_rational(q))
    }
}

pub fn scalar_value(x: &ExactScalar, float: bool) -> Value {
    let mut v = serde_json::to_value(ScalarDoc::from(x)).expect("scalar serializes");
    if float {
        v["float"] = json!(x.to_f64());
    }
    v
}

/// `{"num_vars": d, "degree": k, "text": "...", "terms": [{"exponents": [...], "coefficient": "p/q"}]}`.
pub fn poly_value(p: &SparsePoly, float: bool) -> Value {
    let terms: Vec<Value> = p
        .terms()
        .map(|(m, c)| {
            let mut t = json!({ "exponents": m.exponents(), "coefficient": format_rational(c) });
            if float {
                t["float"] = json!(rational_to_f64(c));
            }
            t
        })
        .collect();
    json!({
        "num_vars": p.num_vars(),
        "degree": p.degree(),
        "text": p.to_string(),
        "terms": terms,
    })
}

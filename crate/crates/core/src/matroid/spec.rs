use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{Explicit, Field, Graphic, Linear, MatroidRef, Partition, Uniform};
use crate::error::{Error, Result};
use crate::rational::RatStr;

/// JSON description of a concrete matroid over the ids `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum MatroidSpec {
    Uniform {
        rank: usize,
    },
    Partition {
        blocks: Vec<Vec<usize>>,
        capacities: Vec<usize>,
    },
    Graphic {
        vertices: usize,
        edges: Vec<(usize, usize)>,
    },
    Linear {
        field: String,
        columns: Vec<Vec<RatStr>>,
    },
    Explicit {
        maximal_independent_sets: Vec<Vec<usize>>,
    },
}

fn parse_field(text: &str) -> Result<Field> {
    let text = text.trim();
    if text == "Q" {
        return Ok(Field::Rationals);
    }
    text.strip_prefix("GF(")
        .and_then(|rest| rest.strip_suffix(')'))
        .and_then(|p| p.trim().parse().ok())
        .map(Field::Prime)
        .ok_or_else(|| Error::input(format!("unknown field {text:?}; expected \"Q\" or \"GF(p)\"")))
}

impl MatroidSpec {
    /// Builds the oracle for a ground set of `n` elements.
    pub fn build(&self, n: usize) -> Result<MatroidRef> {
        let size_mismatch = |what: &str, got: usize| {
            Error::input(format!("{what} matroid describes {got} elements but the instance has {n}"))
        };
        Ok(match self {
            MatroidSpec::Uniform { rank } => Arc::new(Uniform::new(n, *rank)),
            MatroidSpec::Partition { blocks, capacities } => {
                Arc::new(Partition::new(n, blocks.clone(), capacities.clone())?)
            }
            MatroidSpec::Graphic { vertices, edges } => {
                if edges.len() != n {
                    return Err(size_mismatch("graphic", edges.len()));
                }
                Arc::new(Graphic::try_new(*vertices, edges.clone())?)
            }
            MatroidSpec::Linear { field, columns } => {
                if columns.len() != n {
                    return Err(size_mismatch("linear", columns.len()));
                }
                let columns = columns.iter().map(|c| c.iter().map(|x| x.0.clone()).collect()).collect();
                Arc::new(Linear::new(parse_field(field)?, columns)?)
            }
            MatroidSpec::Explicit {
                maximal_independent_sets,
            } => Arc::new(Explicit::from_maximal(n, maximal_independent_sets)?),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_every_kind() {
        let texts = [
            r#"{"kind":"uniform","rank":2}"#,
            r#"{"kind":"partition","blocks":[[0,1],[2]],"capacities":[1,1]}"#,
            r#"{"kind":"graphic","vertices":3,"edges":[[0,1],[1,2],[0,2]]}"#,
            r#"{"kind":"linear","field":"GF(3)","columns":[[1,0],[0,1],["2",2]]}"#,
            r#"{"kind":"explicit","maximal_independent_sets":[[0,1],[2]]}"#,
        ];
        for text in texts {
            let spec: MatroidSpec = serde_json::from_str(text).unwrap();
            let m = spec.build(3).unwrap();
            assert!(m.is_independent(&[0]), "{text}");
            let back: MatroidSpec = serde_json::from_str(&serde_json::to_string(&spec).unwrap()).unwrap();
            assert_eq!(back, spec);
        }
    }

    #[test]
    fn rejects_bad_specs() {
        let graphic: MatroidSpec = serde_json::from_str(r#"{"kind":"graphic","vertices":2,"edges":[[0,1]]}"#).unwrap();
        assert!(graphic.build(2).is_err());
        let linear: MatroidSpec = serde_json::from_str(r#"{"kind":"linear","field":"R","columns":[[1]]}"#).unwrap();
        assert!(linear.build(1).is_err());
        assert!(serde_json::from_str::<MatroidSpec>(r#"{"kind":"dual"}"#).is_err());
    }
}

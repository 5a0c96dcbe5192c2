//! JSON instance documents.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::matroid::MatroidSpec;
use crate::model::{Constraint, Instance};
use crate::rational::RatStr;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementDoc {
    pub id: usize,
    pub profit: RatStr,
    pub cost: RatStr,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeDoc {
    pub id: usize,
    pub u: usize,
    pub v: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum ConstraintDoc {
    Matching { vertices: usize, edges: Vec<EdgeDoc> },
    MatroidIntersection { matroids: [MatroidSpec; 2] },
}

/// Serialized form of an instance. Element ids must be exactly `0..n`, in
/// any order; matching edges carry the id of their element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceDoc {
    pub budget: RatStr,
    pub elements: Vec<ElementDoc>,
    pub constraint: ConstraintDoc,
}

fn id_permutation(ids: impl Iterator<Item = usize>, n: usize, what: &str) -> Result<Vec<usize>> {
    let mut slot = vec![usize::MAX; n];
    for (pos, id) in ids.enumerate() {
        if id >= n || slot[id] != usize::MAX {
            return Err(Error::input(format!("{what} ids must be exactly 0..{n}; bad or repeated id {id}")));
        }
        slot[id] = pos;
    }
    if let Some(missing) = slot.iter().position(|&p| p == usize::MAX) {
        return Err(Error::input(format!("{what} id {missing} is missing")));
    }
    Ok(slot)
}

impl InstanceDoc {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::input(format!("invalid instance JSON: {e}")))
    }

    /// Pretty JSON with a trailing newline; identical documents give identical bytes.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents always serialize");
        s.push('\n');
        s
    }

    pub fn build(&self) -> Result<Instance> {
        let n = self.elements.len();
        let order = id_permutation(self.elements.iter().map(|e| e.id), n, "element")?;
        let profits = order.iter().map(|&i| self.elements[i].profit.0.clone()).collect();
        let costs = order.iter().map(|&i| self.elements[i].cost.0.clone()).collect();
        let constraint = match &self.constraint {
            ConstraintDoc::Matching { vertices, edges } => {
                if edges.len() != n {
                    return Err(Error::input(format!("{} edges for {n} elements", edges.len())));
                }
                let order = id_permutation(edges.iter().map(|e| e.id), n, "edge")?;
                let ends = order.iter().map(|&i| (edges[i].u, edges[i].v)).collect();
                Constraint::Matching(Graph::new(*vertices, ends)?)
            }
            ConstraintDoc::MatroidIntersection { matroids: [a, b] } => Constraint::Intersection(a.build(n)?, b.build(n)?),
        };
        Instance::new(profits, costs, constraint, self.budget.0.clone())
    }
}

/// Reads and builds an instance file.
pub fn load_instance(path: &std::path::Path) -> Result<(InstanceDoc, Instance)> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::input(format!("cannot read {}: {e}", path.display())))?;
    let doc = InstanceDoc::from_json(&text)?;
    let inst = doc.build()?;
    Ok((doc, inst))
}

//! JSON descriptions of groups and homomorphisms.
//!
//! ```text
//! {"type": "cayley", "table": [[0, 1], [1, 0]], "generators": [1]}
//! {"type": "perm", "degree": 3, "generators": [[1, 0, 2], [1, 2, 0]]}
//! {"type": "standard", "name": "dihedral", "params": [4]}
//! {"dom": <group>, "cod": <group>, "images": [...], "surjective": true}
//! ```
//!
//! `images` is either the full element map (one entry per domain element)
//! or the images of the domain's generators. Direct products take their
//! factors as params: `{"type": "standard", "name": "direct_product",
//! "params": [{"name": "cyclic", "params": [2]}, ...]}`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{FiniteGroup, GroupHom, StandardGroup, DEFAULT_ORDER_CAP};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum GroupSpec {
    Cayley {
        table: Vec<Vec<usize>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        generators: Option<Vec<usize>>,
    },
    Perm {
        degree: usize,
        generators: Vec<Vec<usize>>,
    },
    Standard {
        name: String,
        #[serde(default)]
        params: Vec<Value>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HomSpec {
    pub dom: GroupSpec,
    pub cod: GroupSpec,
    pub images: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub surjective: Option<bool>,
}

fn bad(msg: impl Into<String>) -> Error {
    Error::Parse { pos: 0, msg: msg.into() }
}

fn json_error(e: serde_json::Error) -> Error {
    Error::Parse { pos: e.column(), msg: format!("line {}: {e}", e.line()) }
}

impl StandardGroup {
    /// Reads `{"name": ..., "params": [...]}`.
    pub fn from_name(name: &str, params: &[Value]) -> Result<Self> {
        let int = |i: usize| -> Result<usize> {
            params
                .get(i)
                .and_then(Value::as_u64)
                .map(|v| v as usize)
                .ok_or_else(|| bad(format!("{name}: parameter {i} must be a nonnegative integer")))
        };
        Ok(match name {
            "cyclic" => StandardGroup::Cyclic(int(0)?),
            "dihedral" => StandardGroup::Dihedral(int(0)?),
            "quaternion8" => StandardGroup::Quaternion8,
            "symmetric" => StandardGroup::Symmetric(int(0)?),
            "alternating" => StandardGroup::Alternating(int(0)?),
            "klein4" => StandardGroup::Klein4,
            "direct_product" => {
                let factors = params
                    .iter()
                    .map(|p| {
                        let n = p.get("name").and_then(Value::as_str).ok_or_else(|| bad("factor without name"))?;
                        let ps = p.get("params").and_then(Value::as_array).cloned().unwrap_or_default();
                        StandardGroup::from_name(n, &ps)
                    })
                    .collect::<Result<_>>()?;
                StandardGroup::DirectProduct(factors)
            }
            other => return Err(Error::Unsupported(format!("standard group {other:?}"))),
        })
    }
}

impl GroupSpec {
    pub fn build(&self) -> Result<FiniteGroup> {
        self.build_with_cap(DEFAULT_ORDER_CAP)
    }

    pub fn build_with_cap(&self, cap: usize) -> Result<FiniteGroup> {
        match self {
            GroupSpec::Cayley { table, generators } => {
                if table.len() > cap {
                    return Err(Error::OrderLimitExceeded { what: "cayley table", size: table.len(), cap });
                }
                let mut g = FiniteGroup::from_multiplication_table(table)?;
                if let Some(gens) = generators {
                    if gens.iter().any(|&x| x >= g.order()) || g.subgroup_generated(gens).order() != g.order() {
                        return Err(bad("declared generators do not generate the group"));
                    }
                    g.generators = gens.iter().map(|&x| x as u32).collect();
                }
                Ok(g)
            }
            GroupSpec::Perm { degree, generators } => Ok(FiniteGroup::from_permutations(*degree, generators, cap)?.0),
            GroupSpec::Standard { name, params } => {
                let g = StandardGroup::from_name(name, params)?.build()?;
                if g.order() > cap {
                    return Err(Error::OrderLimitExceeded { what: "standard group", size: g.order(), cap });
                }
                Ok(g)
            }
        }
    }
}

pub fn parse_group_json(text: &str) -> Result<FiniteGroup> {
    parse_group_json_with_cap(text, DEFAULT_ORDER_CAP)
}

pub fn parse_group_json_with_cap(text: &str, cap: usize) -> Result<FiniteGroup> {
    serde_json::from_str::<GroupSpec>(text).map_err(json_error)?.build_with_cap(cap)
}

impl HomSpec {
    pub fn build_with_cap(&self, cap: usize) -> Result<GroupHom> {
        let dom = Arc::new(self.dom.build_with_cap(cap)?);
        let cod = Arc::new(self.cod.build_with_cap(cap)?);
        let f = if self.images.len() == dom.order() {
            GroupHom::new(dom, cod, self.images.clone())?
        } else {
            GroupHom::from_generator_images(dom, cod, &self.images)?
        };
        if self.surjective == Some(true) && !f.is_surjective() {
            return Err(Error::NotSurjective);
        }
        Ok(f)
    }
}

pub fn parse_hom_json(text: &str) -> Result<GroupHom> {
    parse_hom_json_with_cap(text, DEFAULT_ORDER_CAP)
}

pub fn parse_hom_json_with_cap(text: &str, cap: usize) -> Result<GroupHom> {
    serde_json::from_str::<HomSpec>(text).map_err(json_error)?.build_with_cap(cap)
}

//! The JSON problem schema and its conversion into validated library
//! values. Semantic errors carry JSON-pointer-style paths.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Deserialize;

use catfrac::fincat::{FinCategory, MorId, RawCategory, Sieve, SigmaCenter, Subcategory};
use catfrac::semiring::{validate_sr_center, FinSemiring, RawSemiring, SrCenter};
use catfrac::zigzag::Budget;

#[derive(Debug)]
pub struct SchemaError {
    pub pointer: String,
    pub message: String,
}

impl fmt::Display for SchemaError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.pointer, self.message)
    }
}

impl std::error::Error for SchemaError {}

fn err<T>(pointer: impl Into<String>, message: impl ToString) -> Result<T, SchemaError> {
    Err(SchemaError {
        pointer: pointer.into(),
        message: message.to_string(),
    })
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDoc {
    #[serde(default)]
    pub category: Option<CategorySpec>,
    #[serde(default)]
    pub semiring: Option<SemiringSpec>,
    #[serde(default)]
    pub sigma: Option<SigmaSpec>,
    /// Sieve generator sets per sigma morphism; the morphism itself is
    /// always added. Entries are required for non-identity morphisms of
    /// sigma.
    #[serde(default)]
    pub center: Option<BTreeMap<String, Vec<String>>>,
    /// Sieve generator sets on an arbitrary collection of morphisms;
    /// sigma is the generated subcategory and the sieves extend over all
    /// factorizations.
    #[serde(default)]
    pub center_collection: Option<BTreeMap<String, Vec<String>>>,
    /// A second subcategory, for the inclusion and iteration checks.
    #[serde(default)]
    pub gamma: Option<SigmaSpec>,
    /// The center on gamma, for the iteration check.
    #[serde(default)]
    pub gamma_center: Option<BTreeMap<String, Vec<String>>>,
    /// Semiring center pairs.
    #[serde(default)]
    pub sr_center: Option<Vec<SrCenterSpec>>,
    /// Read the center as cosieves and dilate by right fractions.
    #[serde(default)]
    pub dual: Option<bool>,
    #[serde(default)]
    pub budgets: Option<BudgetSpec>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategorySpec {
    pub objects: Vec<String>,
    #[serde(default)]
    pub morphisms: Vec<MorSpec>,
    /// Composition triples `[f, g, h]` read as `h = g∘f` (`f` first).
    #[serde(default)]
    pub compose: Vec<[String; 3]>,
    /// Explicit identity morphism per object; `id_<object>` is generated
    /// otherwise.
    #[serde(default)]
    pub identities: BTreeMap<String, String>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorSpec {
    pub name: String,
    pub dom: String,
    pub cod: String,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SigmaSpec {
    /// Generators, closed into a subcategory.
    #[serde(default)]
    pub generators: Option<Vec<String>>,
    /// An explicit morphism list, validated as a subcategory.
    #[serde(default)]
    pub morphisms: Option<Vec<String>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SemiringSpec {
    pub elements: Vec<String>,
    pub add: Vec<Vec<String>>,
    pub mul: Vec<Vec<String>>,
    pub zero: String,
    pub one: String,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SrCenterSpec {
    pub a: String,
    pub l: Vec<String>,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BudgetSpec {
    #[serde(default)]
    pub max_word_len: Option<usize>,
    #[serde(default)]
    pub max_states: Option<usize>,
}

/// Everything a command might need, resolved and validated.
pub struct Problem {
    pub category: Option<FinCategory>,
    pub sigma: Option<Subcategory>,
    pub center: Option<SigmaCenter>,
    pub gamma: Option<Subcategory>,
    pub gamma_center: Option<SigmaCenter>,
    pub semiring: Option<FinSemiring>,
    pub sr_center: Option<SrCenter>,
    pub dual: bool,
    pub budget: Budget,
    /// Canonical digest of the parsed document.
    pub digest: String,
}

pub fn parse(text: &str, flag_budget: Budget) -> Result<Problem, SchemaError> {
    let value: serde_json::Value = serde_json::from_str(text)
        .map_err(|e| SchemaError {
            pointer: "/".into(),
            message: format!("invalid JSON: {e}"),
        })?;
    let doc: InputDoc = serde_json::from_value(value.clone()).map_err(|e| SchemaError {
        pointer: "/".into(),
        message: e.to_string(),
    })?;
    // Canonical digest: serde_json maps are ordered, so re-serializing
    // the parsed value is canonical.
    let canonical = serde_json::to_string(&value).expect("value serializes");
    let digest = fnv1a(canonical.as_bytes());

    let budget = Budget {
        max_word_len: doc
            .budgets
            .and_then(|b| b.max_word_len)
            .unwrap_or(flag_budget.max_word_len),
        max_states: doc
            .budgets
            .and_then(|b| b.max_states)
            .unwrap_or(flag_budget.max_states),
    };
    if budget.max_word_len == 0 || budget.max_states == 0 {
        return err("/budgets", "budgets must be positive");
    }

    let category = match &doc.category {
        None => None,
        Some(spec) => Some(build_category(spec)?),
    };

    let sigma = match (&doc.sigma, &category) {
        (None, _) => None,
        (Some(_), None) => return err("/sigma", "sigma requires a category"),
        (Some(spec), Some(cat)) => Some(build_sigma(spec, cat, "/sigma")?),
    };

    // The dual flag flips the ambient category for the center: cosieves
    // are sieves of the opposite.
    let dual = doc.dual.unwrap_or(false);
    let center_ambient = category.as_ref().map(|c| if dual { c.opposite() } else { c.clone() });

    let center = match (&doc.center, &doc.center_collection) {
        (Some(_), Some(_)) => {
            return err("/center", "give either `center` or `center_collection`, not both")
        }
        (None, None) => None,
        (Some(entries), None) => {
            let cat = center_ambient
                .as_ref()
                .ok_or_else(|| SchemaError {
                    pointer: "/center".into(),
                    message: "a center requires a category".into(),
                })?;
            let sigma = sigma.as_ref().ok_or_else(|| SchemaError {
                pointer: "/center".into(),
                message: "a center requires sigma".into(),
            })?;
            let mut gens: BTreeMap<MorId, BTreeSet<MorId>> = BTreeMap::new();
            for (d, list) in entries {
                let d_id = cat.morphism(d).map_err(|e| SchemaError {
                    pointer: format!("/center/{d}"),
                    message: e.to_string(),
                })?;
                let mut set = BTreeSet::new();
                for (i, n) in list.iter().enumerate() {
                    set.insert(cat.morphism(n).map_err(|e| SchemaError {
                        pointer: format!("/center/{d}/{i}"),
                        message: e.to_string(),
                    })?);
                }
                gens.insert(d_id, set);
            }
            Some(cat.validate_center(sigma, &gens).map_err(|e| SchemaError {
                pointer: "/center".into(),
                message: e.to_string(),
            })?)
        }
        (None, Some(entries)) => {
            let cat = center_ambient
                .as_ref()
                .ok_or_else(|| SchemaError {
                    pointer: "/center_collection".into(),
                    message: "a center requires a category".into(),
                })?;
            let mut sieves: BTreeMap<MorId, Sieve> = BTreeMap::new();
            for (k, list) in entries {
                let k_id = cat.morphism(k).map_err(|e| SchemaError {
                    pointer: format!("/center_collection/{k}"),
                    message: e.to_string(),
                })?;
                let mut gens = BTreeSet::from([k_id]);
                for (i, n) in list.iter().enumerate() {
                    gens.insert(cat.morphism(n).map_err(|e| SchemaError {
                        pointer: format!("/center_collection/{k}/{i}"),
                        message: e.to_string(),
                    })?);
                }
                let sieve = cat
                    .sieve_generated(cat.cod(k_id), &gens)
                    .map_err(|e| SchemaError {
                        pointer: format!("/center_collection/{k}"),
                        message: e.to_string(),
                    })?;
                sieves.insert(k_id, sieve);
            }
            Some(
                cat.extend_center_from_collection(&sieves)
                    .map_err(|e| SchemaError {
                        pointer: "/center_collection".into(),
                        message: e.to_string(),
                    })?,
            )
        }
    };

    let gamma = match (&doc.gamma, &category) {
        (None, _) => None,
        (Some(_), None) => return err("/gamma", "gamma requires a category"),
        (Some(spec), Some(cat)) => Some(build_sigma(spec, cat, "/gamma")?),
    };

    let gamma_center = match (&doc.gamma_center, &gamma, &category) {
        (None, _, _) => None,
        (Some(_), None, _) => return err("/gamma_center", "gamma_center requires gamma"),
        (Some(entries), Some(gamma), Some(cat)) => {
            let mut gens: BTreeMap<MorId, BTreeSet<MorId>> = BTreeMap::new();
            for (d, list) in entries {
                let d_id = cat.morphism(d).map_err(|e| SchemaError {
                    pointer: format!("/gamma_center/{d}"),
                    message: e.to_string(),
                })?;
                let mut set = BTreeSet::new();
                for (i, n) in list.iter().enumerate() {
                    set.insert(cat.morphism(n).map_err(|e| SchemaError {
                        pointer: format!("/gamma_center/{d}/{i}"),
                        message: e.to_string(),
                    })?);
                }
                gens.insert(d_id, set);
            }
            Some(cat.validate_center(gamma, &gens).map_err(|e| SchemaError {
                pointer: "/gamma_center".into(),
                message: e.to_string(),
            })?)
        }
        (Some(_), Some(_), None) => unreachable!("gamma implies a category"),
    };

    let semiring = match &doc.semiring {
        None => None,
        Some(spec) => {
            if spec.elements.is_empty() {
                return err("/semiring/elements", "empty element list");
            }
            Some(
                RawSemiring {
                    elements: spec.elements.clone(),
                    add: spec.add.clone(),
                    mul: spec.mul.clone(),
                    zero: spec.zero.clone(),
                    one: spec.one.clone(),
                }
                .validate()
                .map_err(|e| SchemaError {
                    pointer: "/semiring".into(),
                    message: e.to_string(),
                })?,
            )
        }
    };

    let sr_center = match (&doc.sr_center, &semiring) {
        (None, _) => None,
        (Some(_), None) => return err("/sr_center", "sr_center requires a semiring"),
        (Some(pairs), Some(sr)) => {
            let raw: Vec<(String, Vec<String>)> = pairs
                .iter()
                .map(|p| (p.a.clone(), p.l.clone()))
                .collect();
            Some(validate_sr_center(sr, &raw).map_err(|e| SchemaError {
                pointer: "/sr_center".into(),
                message: e.to_string(),
            })?)
        }
    };

    Ok(Problem {
        category,
        sigma,
        center,
        gamma,
        gamma_center,
        semiring,
        sr_center,
        dual,
        budget,
        digest,
    })
}

fn build_category(spec: &CategorySpec) -> Result<FinCategory, SchemaError> {
    if spec.objects.is_empty() {
        return err("/category/objects", "empty object list");
    }
    let raw = RawCategory {
        objects: spec.objects.clone(),
        morphisms: spec
            .morphisms
            .iter()
            .map(|m| (m.name.clone(), m.dom.clone(), m.cod.clone()))
            .collect(),
        composites: spec
            .compose
            .iter()
            .map(|[f, g, h]| (f.clone(), g.clone(), h.clone()))
            .collect(),
        identities: spec.identities.clone(),
    };
    raw.validate().map_err(|e| SchemaError {
        pointer: "/category".into(),
        message: e.to_string(),
    })
}

fn build_sigma(
    spec: &SigmaSpec,
    cat: &FinCategory,
    pointer: &str,
) -> Result<Subcategory, SchemaError> {
    match (&spec.generators, &spec.morphisms) {
        (Some(_), Some(_)) => err(pointer, "give either `generators` or `morphisms`"),
        (None, None) => err(pointer, "sigma needs `generators` or `morphisms`"),
        (Some(gens), None) => {
            let mut set = BTreeSet::new();
            for (i, g) in gens.iter().enumerate() {
                set.insert(cat.morphism(g).map_err(|e| SchemaError {
                    pointer: format!("{pointer}/generators/{i}"),
                    message: e.to_string(),
                })?);
            }
            cat.subcategory_generated(&set).map_err(|e| SchemaError {
                pointer: pointer.to_string(),
                message: e.to_string(),
            })
        }
        (None, Some(mors)) => {
            let mut objects = BTreeSet::new();
            let mut morphisms = BTreeSet::new();
            for (i, m) in mors.iter().enumerate() {
                let id = cat.morphism(m).map_err(|e| SchemaError {
                    pointer: format!("{pointer}/morphisms/{i}"),
                    message: e.to_string(),
                })?;
                morphisms.insert(id);
                objects.insert(cat.dom(id));
                objects.insert(cat.cod(id));
            }
            let sub = Subcategory::new(objects, morphisms);
            sub.validate(cat).map_err(|e| SchemaError {
                pointer: pointer.to_string(),
                message: e.to_string(),
            })?;
            Ok(sub)
        }
    }
}

/// Stable 64-bit FNV-1a, hex-encoded.
pub fn fnv1a(bytes: &[u8]) -> String {
    let mut hash: u64 = 0xcbf29ce484222325;
    for &b in bytes {
        hash ^= b as u64;
        hash = hash.wrapping_mul(0x100000001b3);
    }
    format!("{hash:016x}")
}

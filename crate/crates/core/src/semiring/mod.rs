//! Finite commutative semirings as validated tables, their localizations
//! and affine blowups, and the comparison with the categorical dilatation
//! of the multiplicative monoid.

use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

mod compare;
mod localize;

pub use compare::{ma_compare, monoid_category_of, monoid_dilate, MaCompareReport, RawMonoid};
pub use localize::{
    blowup, denominator_monoid, localize_semiring, BlowupResult, BlowupStep, LocalizedSemiring,
};

/// Index of an element within its [`FinSemiring`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ElemId(pub usize);

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum SemiringError {
    #[error("empty or duplicate element name `{0}`")]
    BadElementName(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("table for `{op}` is not {rows}x{rows}")]
    BadTableShape { op: &'static str, rows: usize },
    #[error("`{op}` is not commutative at ({a}, {b})")]
    NotCommutative { op: &'static str, a: String, b: String },
    #[error("`{op}` is not associative at ({a}, {b}, {c})")]
    NotAssociative {
        op: &'static str,
        a: String,
        b: String,
        c: String,
    },
    #[error("`{unit}` is not a unit for `{op}` at {a}")]
    BadUnit {
        op: &'static str,
        unit: String,
        a: String,
    },
    #[error("distributivity fails at ({a}, {b}, {c})")]
    NotDistributive { a: String, b: String, c: String },
    #[error("zero is not absorbing at {a}")]
    ZeroNotAbsorbing { a: String },
    #[error("denominator set is not multiplicative: {0}")]
    NotMultiplicative(String),
    #[error("center element `{a}` is not in its numerator set")]
    CenterMissingElement { a: String },
    #[error("numerator set for `{a}` is not multiplicatively absorbing: {l} · {x} escapes")]
    NotAbsorbing { a: String, l: String, x: String },
    #[error("monoid table invalid: {0}")]
    BadMonoid(String),
}

/// Unvalidated semiring tables. Row/column order follows the element
/// list.
#[derive(Debug, Clone)]
pub struct RawSemiring {
    pub elements: Vec<String>,
    pub add: Vec<Vec<String>>,
    pub mul: Vec<Vec<String>>,
    pub zero: String,
    pub one: String,
}

impl RawSemiring {
    pub fn validate(&self) -> Result<FinSemiring, SemiringError> {
        FinSemiring::from_raw(self)
    }
}

/// Validates raw tables into a [`FinSemiring`].
pub fn validate_semiring(raw: &RawSemiring) -> Result<FinSemiring, SemiringError> {
    raw.validate()
}

/// A finite commutative unital semiring with total operation tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinSemiring {
    elements: Vec<String>,
    add: Vec<Vec<ElemId>>,
    mul: Vec<Vec<ElemId>>,
    zero: ElemId,
    one: ElemId,
    index: BTreeMap<String, ElemId>,
}

impl FinSemiring {
    fn from_raw(raw: &RawSemiring) -> Result<Self, SemiringError> {
        let mut elements = Vec::new();
        for name in &raw.elements {
            if name.is_empty() || elements.contains(name) {
                return Err(SemiringError::BadElementName(name.clone()));
            }
            elements.push(name.clone());
        }
        let n = elements.len();
        let index: BTreeMap<String, ElemId> = elements
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), ElemId(i)))
            .collect();
        let lookup = |name: &str| -> Result<ElemId, SemiringError> {
            index
                .get(name)
                .copied()
                .ok_or_else(|| SemiringError::UnknownElement(name.to_string()))
        };
        let read_table = |rows: &Vec<Vec<String>>, op: &'static str| -> Result<Vec<Vec<ElemId>>, SemiringError> {
            if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                return Err(SemiringError::BadTableShape { op, rows: n });
            }
            rows.iter()
                .map(|r| r.iter().map(|e| lookup(e)).collect())
                .collect()
        };
        let add = read_table(&raw.add, "add")?;
        let mul = read_table(&raw.mul, "mul")?;
        let sr = FinSemiring {
            elements,
            add,
            mul,
            zero: lookup(&raw.zero)?,
            one: lookup(&raw.one)?,
            index,
        };
        sr.check_axioms()?;
        Ok(sr)
    }

    /// Builds and validates a semiring directly from index tables.
    pub fn from_tables(
        elements: Vec<String>,
        add: Vec<Vec<ElemId>>,
        mul: Vec<Vec<ElemId>>,
        zero: ElemId,
        one: ElemId,
    ) -> Result<Self, SemiringError> {
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), ElemId(i)))
            .collect();
        let sr = FinSemiring {
            elements,
            add,
            mul,
            zero,
            one,
            index,
        };
        sr.check_axioms()?;
        Ok(sr)
    }

    fn check_axioms(&self) -> Result<(), SemiringError> {
        let ids: Vec<ElemId> = (0..self.elements.len()).map(ElemId).collect();
        let name = |e: ElemId| self.elements[e.0].clone();
        for table in [("add", &self.add), ("mul", &self.mul)] {
            let (op, t) = table;
            let apply = |a: ElemId, b: ElemId| t[a.0][b.0];
            for &a in &ids {
                for &b in &ids {
                    if apply(a, b) != apply(b, a) {
                        return Err(SemiringError::NotCommutative {
                            op,
                            a: name(a),
                            b: name(b),
                        });
                    }
                    for &c in &ids {
                        if apply(apply(a, b), c) != apply(a, apply(b, c)) {
                            return Err(SemiringError::NotAssociative {
                                op,
                                a: name(a),
                                b: name(b),
                                c: name(c),
                            });
                        }
                    }
                }
            }
        }
        for &a in &ids {
            if self.add(self.zero, a) != a {
                return Err(SemiringError::BadUnit {
                    op: "add",
                    unit: name(self.zero),
                    a: name(a),
                });
            }
            if self.mul(self.one, a) != a {
                return Err(SemiringError::BadUnit {
                    op: "mul",
                    unit: name(self.one),
                    a: name(a),
                });
            }
            if self.mul(self.zero, a) != self.zero {
                return Err(SemiringError::ZeroNotAbsorbing { a: name(a) });
            }
        }
        for &a in &ids {
            for &b in &ids {
                for &c in &ids {
                    if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c)) {
                        return Err(SemiringError::NotDistributive {
                            a: name(a),
                            b: name(b),
                            c: name(c),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn element_ids(&self) -> impl Iterator<Item = ElemId> {
        (0..self.elements.len()).map(ElemId)
    }

    pub fn name(&self, e: ElemId) -> &str {
        &self.elements[e.0]
    }

    pub fn element(&self, name: &str) -> Result<ElemId, SemiringError> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| SemiringError::UnknownElement(name.to_string()))
    }

    pub fn add(&self, a: ElemId, b: ElemId) -> ElemId {
        self.add[a.0][b.0]
    }

    pub fn mul(&self, a: ElemId, b: ElemId) -> ElemId {
        self.mul[a.0][b.0]
    }

    pub fn zero(&self) -> ElemId {
        self.zero
    }

    pub fn one(&self) -> ElemId {
        self.one
    }

    /// Product over an iterator, empty product is `one`.
    pub fn product(&self, items: impl IntoIterator<Item = ElemId>) -> ElemId {
        items.into_iter().fold(self.one, |acc, x| self.mul(acc, x))
    }
}

/// One `(a, L)` pair of a semiring center: the denominator and its sieve
/// of admissible numerators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SrCenterPair {
    pub a: ElemId,
    pub numerators: BTreeSet<ElemId>,
    /// Whether `L` contains zero and is closed under addition. Required
    /// for the ideal reading of blowup centers; the sieve reading only
    /// needs multiplicative absorption, so this is reported rather than
    /// enforced.
    pub additively_closed: bool,
}

/// A validated list of `(a_i, L_i)` pairs with `a_i ∈ L_i` and each `L_i`
/// multiplicatively absorbing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SrCenter {
    pairs: Vec<SrCenterPair>,
}

impl SrCenter {
    pub fn pairs(&self) -> &[SrCenterPair] {
        &self.pairs
    }

    pub fn denominators(&self) -> BTreeSet<ElemId> {
        self.pairs.iter().map(|p| p.a).collect()
    }
}

/// Validates raw center pairs against the semiring.
pub fn validate_sr_center(
    sr: &FinSemiring,
    raw: &[(String, Vec<String>)],
) -> Result<SrCenter, SemiringError> {
    let mut pairs = Vec::new();
    for (a_name, l_names) in raw {
        let a = sr.element(a_name)?;
        let mut numerators = BTreeSet::new();
        for l in l_names {
            numerators.insert(sr.element(l)?);
        }
        pairs.push(center_pair(sr, a, numerators)?);
    }
    Ok(SrCenter { pairs })
}

/// Validates one `(a, L)` pair given by ids.
pub fn center_pair(
    sr: &FinSemiring,
    a: ElemId,
    numerators: BTreeSet<ElemId>,
) -> Result<SrCenterPair, SemiringError> {
    if !numerators.contains(&a) {
        return Err(SemiringError::CenterMissingElement {
            a: sr.name(a).to_string(),
        });
    }
    for &l in &numerators {
        for x in sr.element_ids() {
            if !numerators.contains(&sr.mul(l, x)) {
                return Err(SemiringError::NotAbsorbing {
                    a: sr.name(a).to_string(),
                    l: sr.name(l).to_string(),
                    x: sr.name(x).to_string(),
                });
            }
        }
    }
    let additively_closed = numerators.contains(&sr.zero())
        && numerators
            .iter()
            .all(|&l| numerators.iter().all(|&m| numerators.contains(&sr.add(l, m))));
    Ok(SrCenterPair {
        a,
        numerators,
        additively_closed,
    })
}

/// Builds a center from ids.
pub fn sr_center(
    sr: &FinSemiring,
    pairs: Vec<(ElemId, BTreeSet<ElemId>)>,
) -> Result<SrCenter, SemiringError> {
    let pairs = pairs
        .into_iter()
        .map(|(a, l)| center_pair(sr, a, l))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(SrCenter { pairs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn boolean_semiring_is_valid() {
        let sr = corpus::boolean_semiring();
        assert_eq!(sr.len(), 2);
        let one = sr.one();
        assert_eq!(sr.add(one, one), one);
    }

    #[test]
    fn z6_is_valid() {
        let sr = corpus::zmod_semiring(6);
        let two = sr.element("2").unwrap();
        let four = sr.element("4").unwrap();
        assert_eq!(sr.mul(two, four), sr.element("2").unwrap());
        assert_eq!(sr.add(two, four), sr.zero());
    }

    #[test]
    fn broken_distributivity_names_the_triple() {
        // Both operations are honest commutative monoids (addition mod 3
        // and min with unit 2), zero absorbs, but min does not
        // distribute over modular addition.
        let raw = RawSemiring {
            elements: vec!["0".into(), "1".into(), "2".into()],
            add: vec![
                vec!["0".into(), "1".into(), "2".into()],
                vec!["1".into(), "2".into(), "0".into()],
                vec!["2".into(), "0".into(), "1".into()],
            ],
            mul: vec![
                vec!["0".into(), "0".into(), "0".into()],
                vec!["0".into(), "1".into(), "1".into()],
                vec!["0".into(), "1".into(), "2".into()],
            ],
            zero: "0".into(),
            one: "2".into(),
        };
        let err = raw.validate().unwrap_err();
        assert!(
            matches!(err, SemiringError::NotDistributive { .. }),
            "got {err:?}"
        );
    }

    #[test]
    fn center_requires_membership_and_absorption() {
        let sr = corpus::zmod_semiring(6);
        let two = sr.element("2").unwrap();
        let four = sr.element("4").unwrap();
        let zero = sr.zero();
        assert!(matches!(
            center_pair(&sr, two, BTreeSet::from([zero, four])),
            Err(SemiringError::CenterMissingElement { .. })
        ));
        assert!(matches!(
            center_pair(&sr, two, BTreeSet::from([two])),
            Err(SemiringError::NotAbsorbing { .. })
        ));
        let ok = center_pair(&sr, two, BTreeSet::from([zero, two, four])).unwrap();
        assert!(ok.additively_closed);
    }
}

//! The comparison between the affine blowup of a commutative semiring
//! and the categorical dilatation of its multiplicative monoid.
//!
//! The multiplicative monoid becomes a one-object category; the center
//! `{(a_i, L_i)}` becomes the collection `{a_i}` with sieves `L_i`
//! (multiplicative absorption is exactly precomposition closure there).
//! Each fraction class maps to the value `(product of numerators) /
//! (product of denominators)` in the localized semiring; the comparison
//! reports well-definedness, functoriality, injectivity and surjectivity
//! onto the blowup carrier separately — together they certify the
//! identification of the dilatation with the blowup's multiplicative
//! monoid. A surjectivity failure is a finding, not an error.

use std::collections::{BTreeMap, BTreeSet};

use super::localize::{blowup, BlowupResult};
use super::{ElemId, FinSemiring, SemiringError, SrCenter};
use crate::dilate::{dilate, DilatationResult, DilateError, DilateOptions};
use crate::fincat::{FinCategory, MorId, RawCategory, Sieve};
use crate::verdict::Verdict;
use crate::zigzag::Letter;

/// Unvalidated monoid tables: a one-object category in the making.
#[derive(Debug, Clone)]
pub struct RawMonoid {
    pub elements: Vec<String>,
    /// `mul[i][j]` is the product of elements `i` and `j`.
    pub mul: Vec<Vec<String>>,
    pub one: String,
}

impl RawMonoid {
    /// The one-object category with the elements as morphisms.
    pub fn to_category(&self) -> Result<FinCategory, SemiringError> {
        let n = self.elements.len();
        if self.mul.len() != n || self.mul.iter().any(|r| r.len() != n) {
            return Err(SemiringError::BadMonoid("table shape".into()));
        }
        let composites = self
            .elements
            .iter()
            .enumerate()
            .flat_map(|(i, a)| {
                self.elements.iter().enumerate().map(move |(j, b)| {
                    // comp(a, b) = b∘a; with elements acting on the left,
                    // the composite of `a` then `b` is the product b·a.
                    (a.clone(), b.clone(), self.mul[j][i].clone())
                })
            })
            .collect();
        RawCategory {
            objects: vec!["pt".into()],
            morphisms: self
                .elements
                .iter()
                .map(|e| (e.clone(), "pt".to_string(), "pt".to_string()))
                .collect(),
            identities: [("pt".to_string(), self.one.clone())].into_iter().collect(),
            composites,
        }
        .validate()
        .map_err(|e| SemiringError::BadMonoid(e.to_string()))
    }
}

/// The one-object category of the multiplicative monoid of a semiring.
pub fn monoid_category_of(sr: &FinSemiring) -> FinCategory {
    let elements: Vec<String> = sr.element_ids().map(|e| sr.name(e).to_string()).collect();
    let mul = sr
        .element_ids()
        .map(|a| {
            sr.element_ids()
                .map(|b| sr.name(sr.mul(a, b)).to_string())
                .collect()
        })
        .collect();
    RawMonoid {
        elements,
        mul,
        one: sr.name(sr.one()).to_string(),
    }
    .to_category()
    .expect("semiring multiplication is a monoid")
}

/// Dilates a monoid at the submonoid generated by the named sigma
/// generators, with sieves generated from the given numerator sets.
pub fn monoid_dilate(
    monoid: &RawMonoid,
    sigma_generators: &[String],
    numerator_generators: &BTreeMap<String, Vec<String>>,
    opts: &DilateOptions,
) -> Result<DilatationResult, DilateError> {
    let cat = monoid
        .to_category()
        .map_err(|e| DilateError::NotAFunctor(e.to_string()))?;
    let gens: BTreeSet<MorId> = sigma_generators
        .iter()
        .map(|g| cat.morphism(g))
        .collect::<Result<_, _>>()?;
    let sigma = cat.subcategory_generated(&gens)?;
    let mut center_gens: BTreeMap<MorId, BTreeSet<MorId>> = BTreeMap::new();
    for (d, gens) in numerator_generators {
        let d = cat.morphism(d)?;
        let set: BTreeSet<MorId> = gens
            .iter()
            .map(|n| cat.morphism(n))
            .collect::<Result<_, _>>()?;
        center_gens.insert(d, set);
    }
    for &d in sigma.morphisms() {
        center_gens.entry(d).or_default();
    }
    let center = cat.validate_center(&sigma, &center_gens)?;
    dilate(&cat, &center, opts)
}

/// Report of the blowup/dilatation comparison.
#[derive(Debug, Clone)]
pub struct MaCompareReport {
    pub well_defined: Verdict,
    pub functorial: Verdict,
    pub injective: Verdict,
    pub surjective: Verdict,
    /// Classes of the categorical hom-monoid.
    pub dilatation_size: usize,
    /// Elements of the blowup carrier.
    pub blowup_size: usize,
    /// Fraction label per dilatation class, in class order.
    pub class_values: Vec<String>,
}

impl MaCompareReport {
    /// All four parts hold: the dilatation is identified with the
    /// multiplicative monoid of the blowup.
    pub fn identification(&self) -> bool {
        self.well_defined.passed()
            && self.functorial.passed()
            && self.injective.passed()
            && self.surjective.passed()
    }
}

#[derive(Debug)]
pub enum MaCompareError {
    Semiring(SemiringError),
    Dilate(DilateError),
}

impl std::fmt::Display for MaCompareError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MaCompareError::Semiring(e) => write!(f, "{e}"),
            MaCompareError::Dilate(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for MaCompareError {}

impl From<SemiringError> for MaCompareError {
    fn from(e: SemiringError) -> Self {
        MaCompareError::Semiring(e)
    }
}

impl From<DilateError> for MaCompareError {
    fn from(e: DilateError) -> Self {
        MaCompareError::Dilate(e)
    }
}

impl From<crate::fincat::FincatError> for MaCompareError {
    fn from(e: crate::fincat::FincatError) -> Self {
        MaCompareError::Dilate(DilateError::Fincat(e))
    }
}

/// Runs the comparison: blowup on the algebraic side, dilatation of the
/// multiplicative monoid on the categorical side, and the fraction-value
/// map between them.
pub fn ma_compare(
    sr: &FinSemiring,
    center: &SrCenter,
    opts: &DilateOptions,
) -> Result<MaCompareReport, MaCompareError> {
    let algebraic: BlowupResult = blowup(sr, center)?;
    let localized = algebraic.localized();

    // Categorical side: the collection {a_i} with sieves L_i, extended
    // over the generated submonoid.
    let cat = monoid_category_of(sr);
    let pt = cat.object("pt").expect("one object");
    let mor_of_elem = |e: ElemId| -> MorId {
        cat.morphism(sr.name(e)).expect("elements are morphisms")
    };
    let elem_of_mor = |m: MorId| -> ElemId {
        sr.element(cat.morphism_name(m)).expect("morphisms are elements")
    };
    let mut sieves: BTreeMap<MorId, Sieve> = BTreeMap::new();
    for pair in center.pairs() {
        let d = mor_of_elem(pair.a);
        let members: BTreeSet<MorId> = pair.numerators.iter().map(|&l| mor_of_elem(l)).collect();
        let sieve = Sieve::new(pt, members);
        sieves
            .entry(d)
            .and_modify(|s| *s = s.union(&sieve))
            .or_insert(sieve);
    }
    let cat_center = cat.extend_center_from_collection(&sieves)?;
    let categorical = dilate(&cat, &cat_center, opts)?;

    let hom = categorical.hom(pt, pt);
    let graph = categorical.graph();

    // The fraction value of a word: numerators multiply into the
    // numerator, backward letters into the denominator.
    let value_of = |w: &crate::zigzag::ZigzagWord| -> ElemId {
        let mut num = sr.one();
        let mut den = sr.one();
        for &letter in w.letters() {
            match letter {
                Letter::Fwd(m) => num = sr.mul(num, elem_of_mor(m)),
                Letter::Back(d) => den = sr.mul(den, elem_of_mor(d)),
            }
        }
        localized.class_of(num, den)
    };

    // Well-definedness: every member of a class has the same value.
    let mut well_defined = Verdict::Pass;
    let mut class_value: Vec<ElemId> = Vec::new();
    for class in &hom.classes {
        let expected = value_of(class.canonical());
        for member in class.members() {
            if value_of(member) != expected {
                well_defined = Verdict::Fail(format!(
                    "members of class `{}` take different fraction values",
                    graph.word_token(class.canonical())
                ));
            }
        }
        class_value.push(expected);
    }

    // Functoriality: values multiply under composition, identity maps to
    // one.
    let mut functorial = Verdict::Pass;
    let q = localized.semiring();
    for (i, _) in hom.classes.iter().enumerate() {
        for (j, _) in hom.classes.iter().enumerate() {
            let f = crate::dilate::ClassId { src: pt, tgt: pt, index: i };
            let g = crate::dilate::ClassId { src: pt, tgt: pt, index: j };
            let composed = categorical.compose(f, g)?;
            let lhs = class_value[composed.index];
            let rhs = q.mul(class_value[j], class_value[i]);
            if lhs != rhs {
                functorial = Verdict::Fail(format!(
                    "value of a composite differs at classes {i}, {j}"
                ));
            }
        }
    }
    let identity_value = class_value[categorical.identity_class(pt)?.index];
    if identity_value != q.one() {
        functorial = Verdict::Fail("identity class does not map to 1/1".into());
    }

    // Injectivity.
    let mut injective = Verdict::Pass;
    for i in 0..class_value.len() {
        for j in (i + 1)..class_value.len() {
            if class_value[i] == class_value[j] {
                injective = Verdict::Fail(format!(
                    "classes {i} and {j} share the fraction value {}",
                    q.name(class_value[i])
                ));
            }
        }
    }

    // Surjectivity onto the blowup carrier; the image is always inside
    // it, which is asserted.
    let image: BTreeSet<ElemId> = class_value.iter().copied().collect();
    for v in &image {
        debug_assert!(
            algebraic.carrier().contains(v),
            "fraction value escapes the blowup carrier"
        );
    }
    let missing: Vec<String> = algebraic
        .carrier()
        .difference(&image)
        .map(|&v| q.name(v).to_string())
        .collect();
    let surjective = Verdict::from_bool(missing.is_empty(), || {
        format!("carrier elements not realized: {}", missing.join(", "))
    });

    Ok(MaCompareReport {
        well_defined,
        functorial,
        injective,
        surjective,
        dilatation_size: hom.classes.len(),
        blowup_size: algebraic.carrier().len(),
        class_values: class_value
            .iter()
            .map(|&v| q.name(v).to_string())
            .collect(),
    })
}

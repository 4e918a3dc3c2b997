//! Functors between finite categories, promotion of enumerated results
//! to categories, and the canonical functors around a dilatation.

use std::collections::BTreeMap;

use super::{ClassId, DilatationResult, DilateError};
use crate::fincat::{FinCategory, MorId, ObjId};
use crate::verdict::Verdict;

/// A functor between finite categories, validated exhaustively at
/// construction: endpoints, identities and all composites.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinFunctor {
    source: FinCategory,
    target: FinCategory,
    object_map: Vec<ObjId>,
    morphism_map: Vec<MorId>,
}

impl FinFunctor {
    pub fn new(
        source: FinCategory,
        target: FinCategory,
        object_map: Vec<ObjId>,
        morphism_map: Vec<MorId>,
    ) -> Result<Self, DilateError> {
        if object_map.len() != source.object_count()
            || morphism_map.len() != source.morphism_count()
        {
            return Err(DilateError::NotAFunctor("maps are not total".into()));
        }
        let f = FinFunctor {
            source,
            target,
            object_map,
            morphism_map,
        };
        let (src, tgt) = (&f.source, &f.target);
        for x in src.object_ids() {
            if f.object_map[x.0].0 >= tgt.object_count() {
                return Err(DilateError::NotAFunctor("object map out of range".into()));
            }
            let id_img = f.morphism_map[src.identity_of(x).0];
            if id_img != tgt.identity_of(f.object_map[x.0]) {
                return Err(DilateError::NotAFunctor(format!(
                    "identity of `{}` is not preserved",
                    src.object_name(x)
                )));
            }
        }
        for m in src.morphism_ids() {
            let img = f.morphism_map[m.0];
            if img.0 >= tgt.morphism_count() {
                return Err(DilateError::NotAFunctor("morphism map out of range".into()));
            }
            if tgt.dom(img) != f.object_map[src.dom(m).0]
                || tgt.cod(img) != f.object_map[src.cod(m).0]
            {
                return Err(DilateError::NotAFunctor(format!(
                    "endpoints of `{}` are not preserved",
                    src.morphism_name(m)
                )));
            }
        }
        for a in src.morphism_ids() {
            for b in src.morphism_ids() {
                if let Some(c) = src.compose(a, b) {
                    let lhs = f.morphism_map[c.0];
                    let rhs = tgt
                        .compose(f.morphism_map[a.0], f.morphism_map[b.0])
                        .expect("images are composable");
                    if lhs != rhs {
                        return Err(DilateError::NotAFunctor(format!(
                            "composition of `{}` then `{}` is not preserved",
                            src.morphism_name(a),
                            src.morphism_name(b)
                        )));
                    }
                }
            }
        }
        Ok(f)
    }

    pub fn identity(cat: &FinCategory) -> FinFunctor {
        FinFunctor {
            source: cat.clone(),
            target: cat.clone(),
            object_map: cat.object_ids().collect(),
            morphism_map: cat.morphism_ids().collect(),
        }
    }

    pub fn source(&self) -> &FinCategory {
        &self.source
    }

    pub fn target(&self) -> &FinCategory {
        &self.target
    }

    pub fn apply_obj(&self, x: ObjId) -> ObjId {
        self.object_map[x.0]
    }

    pub fn apply_mor(&self, m: MorId) -> MorId {
        self.morphism_map[m.0]
    }

    /// Composition `other ∘ self` (this functor first).
    pub fn then(&self, other: &FinFunctor) -> Result<FinFunctor, DilateError> {
        if self.target != other.source {
            return Err(DilateError::NotAFunctor(
                "functors do not compose: categories differ".into(),
            ));
        }
        FinFunctor::new(
            self.source.clone(),
            other.target.clone(),
            self.object_map
                .iter()
                .map(|&x| other.object_map[x.0])
                .collect(),
            self.morphism_map
                .iter()
                .map(|&m| other.morphism_map[m.0])
                .collect(),
        )
    }

    /// Injective on every hom-set.
    pub fn is_faithful(&self) -> bool {
        for a in self.source.morphism_ids() {
            for b in self.source.morphism_ids() {
                if a < b
                    && self.source.dom(a) == self.source.dom(b)
                    && self.source.cod(a) == self.source.cod(b)
                    && self.morphism_map[a.0] == self.morphism_map[b.0]
                {
                    return false;
                }
            }
        }
        true
    }

    /// Surjective on every hom-set between image objects.
    pub fn is_full(&self) -> bool {
        for x in self.source.object_ids() {
            for y in self.source.object_ids() {
                let image_hom = self
                    .target
                    .hom(self.object_map[x.0], self.object_map[y.0]);
                for t in image_hom {
                    let hit = self.source.morphism_ids().any(|m| {
                        self.source.dom(m) == x
                            && self.source.cod(m) == y
                            && self.morphism_map[m.0] == t
                    });
                    if !hit {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn is_identity_functor(&self) -> bool {
        self.source == self.target
            && self.object_map.iter().enumerate().all(|(i, x)| x.0 == i)
            && self.morphism_map.iter().enumerate().all(|(i, m)| m.0 == i)
    }
}

/// An enumerated result promoted to a finite category: one morphism per
/// class. Requires every hom-set stabilized. Morphism names are the
/// compact tokens of the canonical words.
#[derive(Debug, Clone)]
pub struct PromotedCategory {
    pub category: FinCategory,
    class_for_mor: BTreeMap<MorId, ClassId>,
    mor_for_class: BTreeMap<ClassId, MorId>,
}

impl PromotedCategory {
    pub fn class_of(&self, m: MorId) -> ClassId {
        self.class_for_mor[&m]
    }

    pub fn mor_of(&self, c: ClassId) -> MorId {
        self.mor_for_class[&c]
    }
}

impl DilatationResult {
    /// Promotes the result to a finite category. Every hom-set must be
    /// stabilized.
    pub fn as_category(&self) -> Result<PromotedCategory, DilateError> {
        let base = self.category();
        for hom in self.homs() {
            if !hom.stabilized {
                return Err(DilateError::UnstabilizedHom {
                    src: base.object_name(hom.source).to_string(),
                    tgt: base.object_name(hom.target).to_string(),
                });
            }
        }
        let objects: Vec<String> = base
            .object_ids()
            .map(|x| base.object_name(x).to_string())
            .collect();

        // Name and order the morphisms: identity classes take the
        // identity names, other classes their canonical word token.
        let graph = self.graph();
        let mut named: Vec<(String, ClassId, bool)> = Vec::new();
        for id in self.class_ids() {
            let class = self.class(id);
            let is_id = class.canonical().is_empty();
            let name = graph.word_token(class.canonical());
            named.push((name, id, is_id));
        }
        named.sort();
        let morphisms: Vec<(String, ObjId, ObjId)> = named
            .iter()
            .map(|(name, id, _)| (name.clone(), id.src, id.tgt))
            .collect();
        let index_of: BTreeMap<ClassId, usize> = named
            .iter()
            .enumerate()
            .map(|(i, (_, id, _))| (*id, i))
            .collect();
        let mut identity = vec![MorId(usize::MAX); objects.len()];
        for (i, (_, id, is_id)) in named.iter().enumerate() {
            if *is_id {
                identity[id.src.0] = MorId(i);
            }
        }
        let n = named.len();
        let mut comp = vec![vec![None; n]; n];
        for (i, (_, f, _)) in named.iter().enumerate() {
            for (j, (_, g, _)) in named.iter().enumerate() {
                if f.tgt == g.src {
                    let h = self.compose(*f, *g)?;
                    comp[i][j] = Some(MorId(index_of[&h]));
                }
            }
        }
        let category = FinCategory::from_parts(objects, morphisms, identity, comp)?;
        let class_for_mor: BTreeMap<MorId, ClassId> = named
            .iter()
            .enumerate()
            .map(|(i, (_, id, _))| (MorId(i), *id))
            .collect();
        let mor_for_class: BTreeMap<ClassId, MorId> = named
            .iter()
            .enumerate()
            .map(|(i, (_, id, _))| (*id, MorId(i)))
            .collect();
        Ok(PromotedCategory {
            category,
            class_for_mor,
            mor_for_class,
        })
    }
}

/// The canonical functor from the base category into the promoted
/// dilatation: identity on objects, `a ↦ [a]` on morphisms.
/// Functoriality is verified exhaustively by construction.
pub fn theta(
    result: &DilatationResult,
    promoted: &PromotedCategory,
) -> Result<FinFunctor, DilateError> {
    let base = result.category();
    let target = &promoted.category;
    // Objects have the same sorted names in both categories.
    let object_map: Vec<ObjId> = base
        .object_ids()
        .map(|x| target.object(base.object_name(x)).expect("same objects"))
        .collect();
    let mut morphism_map = Vec::with_capacity(base.morphism_count());
    for a in base.morphism_ids() {
        let class = result.theta_class(a)?;
        morphism_map.push(promoted.mor_of(class));
    }
    FinFunctor::new(base.clone(), target.clone(), object_map, morphism_map)
}

/// The faithful comparison from a dilatation into the localization at
/// the same sigma: identity on objects, inclusion of fraction classes on
/// morphisms. Faithfulness is verified on every hom-set.
pub fn embed_into_localization(
    dilatation: &DilatationResult,
    dil_promoted: &PromotedCategory,
    localization: &DilatationResult,
    loc_promoted: &PromotedCategory,
) -> Result<FinFunctor, DilateError> {
    if dilatation.mode() != super::DilationMode::Dilatation {
        return Err(DilateError::WrongMode);
    }
    let functor = class_map_functor(dilatation, dil_promoted, localization, loc_promoted)?;
    if !functor.is_faithful() {
        return Err(DilateError::NotAFunctor(
            "the inclusion into the localization is not faithful".into(),
        ));
    }
    Ok(functor)
}

/// Maps every class of `from` to the class of the same words in `to`.
/// Well-definedness is checked on every enumerated member.
pub(crate) fn class_map_functor(
    from: &DilatationResult,
    from_promoted: &PromotedCategory,
    to: &DilatationResult,
    to_promoted: &PromotedCategory,
) -> Result<FinFunctor, DilateError> {
    let src = &from_promoted.category;
    let tgt = &to_promoted.category;
    let object_map: Vec<ObjId> = src
        .object_ids()
        .map(|x| tgt.object(src.object_name(x)).expect("same objects"))
        .collect();
    let mut morphism_map = Vec::with_capacity(src.morphism_count());
    for m in src.morphism_ids() {
        let class = from_promoted.class_of(m);
        let image = to.class_of_word(from.class(class).canonical())?;
        for member in from.class(class).members() {
            let image_again = to.class_of_word(member)?;
            if image_again != image {
                return Err(DilateError::NotAFunctor(format!(
                    "class map not well-defined at member `{}`",
                    from.graph().display_word(member)
                )));
            }
        }
        morphism_map.push(to_promoted.mor_of(image));
    }
    FinFunctor::new(src.clone(), tgt.clone(), object_map, morphism_map)
}

/// The canonical functor between dilatations at nested centers over the
/// same sigma; faithful by construction, which is re-verified.
pub fn center_inclusion_functor(
    smaller: &DilatationResult,
    smaller_promoted: &PromotedCategory,
    larger: &DilatationResult,
    larger_promoted: &PromotedCategory,
) -> Result<FinFunctor, DilateError> {
    let cat = smaller.category();
    for (&d, sieve) in smaller.center().sieves() {
        let other = larger
            .center()
            .sieve(d)
            .ok_or_else(|| DilateError::NotIncluded {
                d: cat.morphism_name(d).to_string(),
            })?;
        if !sieve.is_subset_of(other) {
            return Err(DilateError::NotIncluded {
                d: cat.morphism_name(d).to_string(),
            });
        }
    }
    let functor = class_map_functor(smaller, smaller_promoted, larger, larger_promoted)?;
    if !functor.is_faithful() {
        return Err(DilateError::NotAFunctor(
            "the center-inclusion functor is not faithful".into(),
        ));
    }
    Ok(functor)
}

/// Report of the inclusion functor of a subcategory `Γ ⊆ Σ`.
#[derive(Debug, Clone)]
pub struct InclusionReport {
    pub functor: FinFunctor,
    /// Whether every sieve of `Σ∖Γ` morphisms is the principal generated
    /// sieve, the hypothesis under which the functor is full.
    pub fullness_hypothesis: bool,
    pub full: Verdict,
    /// Whether the comparison of localizations is faithful.
    pub localization_comparison_faithful: Verdict,
    pub faithful: Verdict,
}

/// Builds `Φ : C[{𝔫(d)}_{d∈Γ}] → C[{𝔫(d)}_{d∈Σ}]` for a subcategory
/// `Γ ⊆ Σ`, restricting the center, and checks fullness and
/// faithfulness together with their hypotheses.
pub fn subcategory_inclusion_functor(
    cat: &FinCategory,
    gamma: &crate::fincat::Subcategory,
    center: &crate::fincat::SigmaCenter,
    opts: &super::DilateOptions,
) -> Result<InclusionReport, DilateError> {
    if !gamma.is_subcategory_of(center.sigma()) {
        return Err(DilateError::NotSubcategory);
    }
    let restricted = center.restrict(cat, gamma)?;
    let small = super::dilate(cat, &restricted, opts)?;
    let large = super::dilate(cat, center, opts)?;
    let small_promoted = small.as_category()?;
    let large_promoted = large.as_category()?;
    let functor = class_map_functor(&small, &small_promoted, &large, &large_promoted)?;

    // Fullness hypothesis: on Σ∖Γ every sieve is generated by its
    // morphism alone.
    let mut fullness_hypothesis = true;
    for &d in center.sigma().morphisms() {
        if gamma.contains_mor(d) {
            continue;
        }
        let principal = cat.sieve_generated(cat.cod(d), &std::iter::once(d).collect())?;
        if center.sieve(d) != Some(&principal) {
            fullness_hypothesis = false;
        }
    }
    let full = Verdict::from_bool(functor.is_full(), || {
        "some class of the larger dilatation is not hit".into()
    });

    // Faithfulness hypothesis: the comparison of localizations.
    let loc_small = super::localize(cat, gamma, opts)?;
    let loc_large = super::localize(cat, center.sigma(), opts)?;
    let loc_small_promoted = loc_small.as_category()?;
    let loc_large_promoted = loc_large.as_category()?;
    let comparison = class_map_functor(
        &loc_small,
        &loc_small_promoted,
        &loc_large,
        &loc_large_promoted,
    )?;
    let localization_comparison_faithful = Verdict::from_bool(comparison.is_faithful(), || {
        "two localization classes merge".into()
    });
    let faithful = Verdict::from_bool(functor.is_faithful(), || {
        "two dilatation classes merge".into()
    });
    Ok(InclusionReport {
        functor,
        fullness_hypothesis,
        full,
        localization_comparison_faithful,
        faithful,
    })
}

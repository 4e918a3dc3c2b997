//! Sieves, subcategories and centers over a finite category.
//!
//! A sieve over `Y` is a set of morphisms with codomain `Y` closed under
//! precomposition with arbitrary morphisms. A center assigns to every
//! morphism `d` of a subcategory a sieve over `cod(d)` containing `d`;
//! those sieves are the admissible numerators of the dilatation.

use std::collections::{BTreeMap, BTreeSet};

use super::{FinCategory, FincatError, MorId, ObjId};

/// A precomposition-closed set of morphisms with a common codomain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sieve {
    target: ObjId,
    members: BTreeSet<MorId>,
}

impl Sieve {
    pub fn new(target: ObjId, members: BTreeSet<MorId>) -> Self {
        Sieve { target, members }
    }

    pub fn target(&self) -> ObjId {
        self.target
    }

    pub fn members(&self) -> &BTreeSet<MorId> {
        &self.members
    }

    pub fn contains(&self, m: MorId) -> bool {
        self.members.contains(&m)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_subset_of(&self, other: &Sieve) -> bool {
        self.target == other.target && self.members.is_subset(&other.members)
    }

    pub fn union(&self, other: &Sieve) -> Sieve {
        debug_assert_eq!(self.target, other.target);
        Sieve {
            target: self.target,
            members: self.members.union(&other.members).copied().collect(),
        }
    }

    /// Checks codomains and precomposition closure exhaustively.
    pub fn validate(&self, cat: &FinCategory) -> Result<(), FincatError> {
        for &n in &self.members {
            if cat.cod(n) != self.target {
                return Err(FincatError::MixedCodomains {
                    m: cat.morphism_name(n).to_string(),
                    target: cat.object_name(self.target).to_string(),
                });
            }
            for f in cat.morphisms_into(cat.dom(n)) {
                let fn_ = cat.compose(f, n).expect("composable by construction");
                if !self.members.contains(&fn_) {
                    return Err(FincatError::NotPrecompositionClosed {
                        target: cat.object_name(self.target).to_string(),
                        n: cat.morphism_name(n).to_string(),
                        f: cat.morphism_name(f).to_string(),
                    });
                }
            }
        }
        Ok(())
    }
}

/// A subcategory given by its object and morphism sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subcategory {
    objects: BTreeSet<ObjId>,
    morphisms: BTreeSet<MorId>,
}

impl Subcategory {
    pub fn new(objects: BTreeSet<ObjId>, morphisms: BTreeSet<MorId>) -> Self {
        Subcategory { objects, morphisms }
    }

    pub fn objects(&self) -> &BTreeSet<ObjId> {
        &self.objects
    }

    pub fn morphisms(&self) -> &BTreeSet<MorId> {
        &self.morphisms
    }

    pub fn contains_obj(&self, x: ObjId) -> bool {
        self.objects.contains(&x)
    }

    pub fn contains_mor(&self, m: MorId) -> bool {
        self.morphisms.contains(&m)
    }

    pub fn is_subcategory_of(&self, other: &Subcategory) -> bool {
        self.objects.is_subset(&other.objects) && self.morphisms.is_subset(&other.morphisms)
    }

    /// Identity presence, endpoint containment and composition closure.
    pub fn validate(&self, cat: &FinCategory) -> Result<(), FincatError> {
        for &x in &self.objects {
            if !self.morphisms.contains(&cat.identity_of(x)) {
                return Err(FincatError::InvalidSubcategory(format!(
                    "identity of `{}` is missing",
                    cat.object_name(x)
                )));
            }
        }
        for &m in &self.morphisms {
            if !self.objects.contains(&cat.dom(m)) || !self.objects.contains(&cat.cod(m)) {
                return Err(FincatError::InvalidSubcategory(format!(
                    "endpoints of `{}` are not all included",
                    cat.morphism_name(m)
                )));
            }
        }
        for &f in &self.morphisms {
            for &g in &self.morphisms {
                if let Some(h) = cat.compose(f, g) {
                    if !self.morphisms.contains(&h) {
                        return Err(FincatError::InvalidSubcategory(format!(
                            "not closed under composition: `{}` then `{}`",
                            cat.morphism_name(f),
                            cat.morphism_name(g)
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// A sieve assignment `d ↦ 𝔫(d)` over a subcategory, with `d ∈ 𝔫(d)` and
/// `target(𝔫(d)) = cod(d)` for every `d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaCenter {
    sigma: Subcategory,
    sieves: BTreeMap<MorId, Sieve>,
}

impl SigmaCenter {
    /// Builds a center from explicit sieves, validating every invariant.
    pub fn new(
        cat: &FinCategory,
        sigma: Subcategory,
        sieves: BTreeMap<MorId, Sieve>,
    ) -> Result<SigmaCenter, FincatError> {
        let center = SigmaCenter { sigma, sieves };
        center.validate(cat)?;
        Ok(center)
    }

    pub fn sigma(&self) -> &Subcategory {
        &self.sigma
    }

    pub fn sieve(&self, d: MorId) -> Option<&Sieve> {
        self.sieves.get(&d)
    }

    pub fn sieves(&self) -> &BTreeMap<MorId, Sieve> {
        &self.sieves
    }

    pub fn validate(&self, cat: &FinCategory) -> Result<(), FincatError> {
        self.sigma.validate(cat)?;
        for &d in self.sigma.morphisms() {
            let sieve = self
                .sieves
                .get(&d)
                .ok_or_else(|| FincatError::MissingSieve {
                    d: cat.morphism_name(d).to_string(),
                })?;
            if sieve.target() != cat.cod(d) {
                return Err(FincatError::SieveWrongTarget {
                    d: cat.morphism_name(d).to_string(),
                    target: cat.object_name(sieve.target()).to_string(),
                    expected: cat.object_name(cat.cod(d)).to_string(),
                });
            }
            if !sieve.contains(d) {
                return Err(FincatError::SieveMissingCenter {
                    d: cat.morphism_name(d).to_string(),
                });
            }
            sieve.validate(cat)?;
        }
        Ok(())
    }

    /// Pointwise sieve inclusion into `other` over the same subcategory.
    pub fn is_included_in(&self, other: &SigmaCenter) -> bool {
        self.sigma == other.sigma
            && self.sieves.iter().all(|(d, s)| {
                other
                    .sieves
                    .get(d)
                    .is_some_and(|s2| s.is_subset_of(s2))
            })
    }

    /// The center restricted to a subcategory of sigma, keeping the same
    /// sieves.
    pub fn restrict(&self, cat: &FinCategory, gamma: &Subcategory) -> Result<SigmaCenter, FincatError> {
        if !gamma.is_subcategory_of(&self.sigma) {
            return Err(FincatError::InvalidSubcategory(
                "restriction target is not a subcategory of sigma".into(),
            ));
        }
        gamma.validate(cat)?;
        let sieves = gamma
            .morphisms()
            .iter()
            .map(|&d| (d, self.sieves[&d].clone()))
            .collect();
        Ok(SigmaCenter {
            sigma: gamma.clone(),
            sieves,
        })
    }

    /// Adjoins the identities of every object of the category, with
    /// maximal sieves on all identities. The sieves of non-identity
    /// morphisms are unchanged. This is the normal form used by the
    /// dilatation: every plain morphism `[a]` then has the alternating
    /// representative `a · l_{id}`.
    pub fn widened(&self, cat: &FinCategory) -> SigmaCenter {
        let mut objects = self.sigma.objects().clone();
        let mut morphisms = self.sigma.morphisms().clone();
        let mut sieves = self.sieves.clone();
        for x in cat.object_ids() {
            objects.insert(x);
            morphisms.insert(cat.identity_of(x));
        }
        for x in cat.object_ids() {
            let id = cat.identity_of(x);
            sieves.insert(id, cat.maximal_sieve(x).expect("object id is valid"));
        }
        SigmaCenter {
            sigma: Subcategory::new(objects, morphisms),
            sieves,
        }
    }

    /// The center with every sieve maximal, over the same subcategory.
    pub fn maximal(cat: &FinCategory, sigma: &Subcategory) -> SigmaCenter {
        let sieves = sigma
            .morphisms()
            .iter()
            .map(|&d| {
                (
                    d,
                    cat.maximal_sieve(cat.cod(d)).expect("object id is valid"),
                )
            })
            .collect();
        SigmaCenter {
            sigma: sigma.clone(),
            sieves,
        }
    }

    /// Whether every sieve is the maximal sieve over its target.
    pub fn is_maximal(&self, cat: &FinCategory) -> bool {
        self.sieves.iter().all(|(&d, s)| {
            s.len()
                == cat
                    .maximal_sieve(cat.cod(d))
                    .expect("object id is valid")
                    .len()
        })
    }
}

impl FinCategory {
    /// All morphisms with codomain `x`.
    pub fn maximal_sieve(&self, x: ObjId) -> Result<Sieve, FincatError> {
        if x.0 >= self.object_count() {
            return Err(FincatError::UnknownObject(format!("#{}", x.0)));
        }
        Ok(Sieve {
            target: x,
            members: self.morphisms_into(x).into_iter().collect(),
        })
    }

    /// The smallest sieve over `target` containing the generators: all
    /// precompositions `e∘n` with `e` a generator.
    pub fn sieve_generated(
        &self,
        target: ObjId,
        gens: &BTreeSet<MorId>,
    ) -> Result<Sieve, FincatError> {
        if target.0 >= self.object_count() {
            return Err(FincatError::UnknownObject(format!("#{}", target.0)));
        }
        let mut members = BTreeSet::new();
        for &e in gens {
            if self.cod(e) != target {
                return Err(FincatError::MixedCodomains {
                    m: self.morphism_name(e).to_string(),
                    target: self.object_name(target).to_string(),
                });
            }
            for n in self.morphisms_into(self.dom(e)) {
                members.insert(self.compose(n, e).expect("composable by construction"));
            }
        }
        let sieve = Sieve { target, members };
        debug_assert!(sieve.validate(self).is_ok());
        Ok(sieve)
    }

    /// The subcategory generated by a set of morphisms: all finite
    /// composites of generators, plus the identities of every touched
    /// object (so the result satisfies the subcategory invariants).
    pub fn subcategory_generated(
        &self,
        gens: &BTreeSet<MorId>,
    ) -> Result<Subcategory, FincatError> {
        let mut objects = BTreeSet::new();
        for &m in gens {
            if m.0 >= self.morphism_count() {
                return Err(FincatError::UnknownMorphism(format!("#{}", m.0)));
            }
            objects.insert(self.dom(m));
            objects.insert(self.cod(m));
        }
        let mut morphisms: BTreeSet<MorId> = gens.clone();
        loop {
            let mut added = Vec::new();
            for &f in &morphisms {
                for &g in &morphisms {
                    if let Some(h) = self.compose(f, g) {
                        if !morphisms.contains(&h) {
                            added.push(h);
                        }
                    }
                }
            }
            if added.is_empty() {
                break;
            }
            morphisms.extend(added);
        }
        for &x in &objects {
            morphisms.insert(self.identity_of(x));
        }
        let sub = Subcategory { objects, morphisms };
        debug_assert!(sub.validate(self).is_ok());
        Ok(sub)
    }

    /// All objects with their identities and nothing else.
    pub fn discrete_subcategory(&self) -> Subcategory {
        Subcategory {
            objects: self.object_ids().collect(),
            morphisms: self.object_ids().map(|x| self.identity_of(x)).collect(),
        }
    }

    /// The whole category as a subcategory.
    pub fn full_subcategory(&self) -> Subcategory {
        Subcategory {
            objects: self.object_ids().collect(),
            morphisms: self.morphism_ids().collect(),
        }
    }

    /// Builds the center `d ↦ sieve generated by (E_d ∪ {d})` from
    /// per-morphism generator sets. Identities default to the maximal
    /// sieve when no generators are given (and the generated sieve of an
    /// identity is maximal anyway); non-identity morphisms of sigma must
    /// have an entry.
    pub fn validate_center(
        &self,
        sigma: &Subcategory,
        gens: &BTreeMap<MorId, BTreeSet<MorId>>,
    ) -> Result<SigmaCenter, FincatError> {
        sigma.validate(self)?;
        let mut sieves = BTreeMap::new();
        for &d in sigma.morphisms() {
            let entry = gens.get(&d);
            if entry.is_none() && !self.is_identity(d) {
                return Err(FincatError::MissingSieve {
                    d: self.morphism_name(d).to_string(),
                });
            }
            let mut full_gens: BTreeSet<MorId> = entry.cloned().unwrap_or_default();
            for &e in &full_gens {
                if self.cod(e) != self.cod(d) {
                    return Err(FincatError::CodomainMismatch {
                        d: self.morphism_name(d).to_string(),
                    });
                }
            }
            full_gens.insert(d);
            sieves.insert(d, self.sieve_generated(self.cod(d), &full_gens)?);
        }
        let center = SigmaCenter {
            sigma: sigma.clone(),
            sieves,
        };
        debug_assert!(center.validate(self).is_ok());
        Ok(center)
    }

    /// Extends a sieve assignment on an arbitrary collection `K` of
    /// morphisms (not necessarily closed under composition) to the
    /// subcategory generated by `K`. For each `d` in that subcategory,
    /// the extended sieve is the union over all factorizations
    /// `d = k_m∘…∘k_1` with `k_i ∈ K` of `(k_m∘…∘k_2)∘𝔫(k_1)`.
    ///
    /// Factorizations are enumerated through the finite set of values of
    /// composites of `K`-words, which is a fixpoint of the composition
    /// closure; by pigeonhole this covers every factorization length.
    /// Identities of the generated subcategory with no factorization get
    /// the maximal sieve.
    pub fn extend_center_from_collection(
        &self,
        sieves_on_k: &BTreeMap<MorId, Sieve>,
    ) -> Result<SigmaCenter, FincatError> {
        for (&k, sieve) in sieves_on_k {
            if sieve.target() != self.cod(k) {
                return Err(FincatError::SieveWrongTarget {
                    d: self.morphism_name(k).to_string(),
                    target: self.object_name(sieve.target()).to_string(),
                    expected: self.object_name(self.cod(k)).to_string(),
                });
            }
            if !sieve.contains(k) {
                return Err(FincatError::SieveMissingCenter {
                    d: self.morphism_name(k).to_string(),
                });
            }
            sieve.validate(self)?;
        }
        let k_set: BTreeSet<MorId> = sieves_on_k.keys().copied().collect();
        let sigma = self.subcategory_generated(&k_set)?;

        // Values of nonempty K-words, closed under composition.
        let mut word_values: BTreeSet<MorId> = k_set.clone();
        loop {
            let mut added = Vec::new();
            for &t in &word_values {
                for &k in &k_set {
                    if let Some(h) = self.compose(k, t) {
                        if !word_values.contains(&h) {
                            added.push(h);
                        }
                    }
                    if let Some(h) = self.compose(t, k) {
                        if !word_values.contains(&h) {
                            added.push(h);
                        }
                    }
                }
            }
            if added.is_empty() {
                break;
            }
            word_values.extend(added);
        }

        let mut sieves: BTreeMap<MorId, Sieve> = BTreeMap::new();
        for &d in sigma.morphisms() {
            let mut members: BTreeSet<MorId> = BTreeSet::new();
            for (&k, base) in sieves_on_k {
                // Length-one factorization d = k.
                if k == d {
                    members.extend(base.members().iter().copied());
                }
                // Longer factorizations d = t∘k with t a K-word value.
                for &t in &word_values {
                    if self.compose(k, t) == Some(d) {
                        for &f in base.members() {
                            members.insert(
                                self.compose(f, t).expect("composable by construction"),
                            );
                        }
                    }
                }
            }
            if members.is_empty() {
                // Only identities can lack a factorization; give them the
                // maximal sieve.
                debug_assert!(self.is_identity(d));
                sieves.insert(d, self.maximal_sieve(self.cod(d))?);
            } else {
                sieves.insert(
                    d,
                    Sieve {
                        target: self.cod(d),
                        members,
                    },
                );
            }
        }
        let center = SigmaCenter { sigma, sieves };
        center.validate(self)?;
        Ok(center)
    }
}

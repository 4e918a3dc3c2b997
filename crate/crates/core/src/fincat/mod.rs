//! Finite categories as validated composition tables.
//!
//! A [`FinCategory`] stores its objects and morphisms sorted by name and a
//! total composition table over composable pairs. Validation checks the
//! table exhaustively: totality, identity laws and associativity. All
//! downstream constructions assume these invariants and never re-derive
//! them.
//!
//! Composition convention: `compose(f, g)` is `g` after `f`, defined
//! exactly when `cod(f) = dom(g)`. Input triples `[f, g, h]` are read the
//! same way, `h = g∘f`.

use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

mod sieve;

pub use sieve::{Sieve, SigmaCenter, Subcategory};

/// Index of an object within its [`FinCategory`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ObjId(pub usize);

/// Index of a morphism within its [`FinCategory`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MorId(pub usize);

/// Errors reported by table validation and the sieve/center operations.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum FincatError {
    #[error("empty or invalid name `{0}` (names must be non-empty, without whitespace or `*~/\\|`)")]
    InvalidName(String),
    #[error("duplicate object `{0}`")]
    DuplicateObject(String),
    #[error("duplicate morphism `{0}`")]
    DuplicateMorphism(String),
    #[error("dangling reference `{name}` in {place}")]
    DanglingReference { name: String, place: String },
    #[error("bad identity for object `{0}`")]
    BadIdentity(String),
    #[error("missing composite for `{f}` then `{g}`")]
    MissingComposite { f: String, g: String },
    #[error("`{f}` then `{g}` is not composable")]
    NotComposable { f: String, g: String },
    #[error("composite `{h}` of `{f}` then `{g}` has wrong endpoints")]
    BadCompositeEndpoints { f: String, g: String, h: String },
    #[error("conflicting composites for `{f}` then `{g}`: `{first}` vs `{second}`")]
    ConflictingComposite {
        f: String,
        g: String,
        first: String,
        second: String,
    },
    #[error("associativity fails at `{f}`, `{g}`, `{h}`")]
    NonAssociative { f: String, g: String, h: String },
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("unknown morphism `{0}`")]
    UnknownMorphism(String),
    #[error("sieve generator `{m}` does not have codomain `{target}`")]
    MixedCodomains { m: String, target: String },
    #[error("sieve over `{target}` is not closed under precomposition: `{n}` precomposed with `{f}` is missing")]
    NotPrecompositionClosed { target: String, n: String, f: String },
    #[error("invalid subcategory: {0}")]
    InvalidSubcategory(String),
    #[error("center generator for `{d}` has wrong codomain")]
    CodomainMismatch { d: String },
    #[error("no sieve generators given for `{d}`")]
    MissingSieve { d: String },
    #[error("sieve assigned to `{d}` does not contain `{d}`")]
    SieveMissingCenter { d: String },
    #[error("sieve assigned to `{d}` has target `{target}` instead of `{expected}`")]
    SieveWrongTarget {
        d: String,
        target: String,
        expected: String,
    },
}

/// Unvalidated category tables, as parsed from an input document or built
/// in code.
#[derive(Debug, Clone, Default)]
pub struct RawCategory {
    pub objects: Vec<String>,
    /// `(name, dom, cod)` triples. Identities may be listed or omitted.
    pub morphisms: Vec<(String, String, String)>,
    /// Composition triples `[f, g, h]` read as `h = g∘f` (`f` first).
    pub composites: Vec<(String, String, String)>,
    /// Explicit identity assignment per object. Objects not listed here
    /// get an auto-generated identity `id_<object>` unless a morphism of
    /// that name is already declared.
    pub identities: BTreeMap<String, String>,
}

impl RawCategory {
    pub fn validate(&self) -> Result<FinCategory, FincatError> {
        FinCategory::from_raw(self)
    }
}

/// Validates raw tables into a [`FinCategory`].
pub fn validate_category(raw: &RawCategory) -> Result<FinCategory, FincatError> {
    raw.validate()
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct MorphismData {
    name: String,
    dom: ObjId,
    cod: ObjId,
}

/// A fully enumerated finite category with a validated composition table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinCategory {
    objects: Vec<String>,
    morphisms: Vec<MorphismData>,
    identity: Vec<MorId>,
    /// `comp[f][g] = Some(g∘f)` exactly when `cod(f) = dom(g)`.
    comp: Vec<Vec<Option<MorId>>>,
    obj_index: BTreeMap<String, ObjId>,
    mor_index: BTreeMap<String, MorId>,
}

fn check_name(name: &str) -> Result<(), FincatError> {
    let bad = name.is_empty()
        || name
            .chars()
            .any(|c| c.is_whitespace() || matches!(c, '*' | '~' | '/' | '\\' | '|'));
    if bad {
        Err(FincatError::InvalidName(name.to_string()))
    } else {
        Ok(())
    }
}

impl FinCategory {
    fn from_raw(raw: &RawCategory) -> Result<Self, FincatError> {
        // Objects: validated names, sorted.
        let mut objects: Vec<String> = Vec::new();
        for name in &raw.objects {
            check_name(name)?;
            if objects.contains(name) {
                return Err(FincatError::DuplicateObject(name.clone()));
            }
            objects.push(name.clone());
        }
        objects.sort();
        let obj_index: BTreeMap<String, ObjId> = objects
            .iter()
            .enumerate()
            .map(|(i, n)| (n.clone(), ObjId(i)))
            .collect();

        // Morphisms: declared ones plus auto identities, sorted by name.
        let mut declared: BTreeMap<String, (String, String)> = BTreeMap::new();
        for (name, dom, cod) in &raw.morphisms {
            check_name(name)?;
            if declared.contains_key(name) {
                return Err(FincatError::DuplicateMorphism(name.clone()));
            }
            declared.insert(name.clone(), (dom.clone(), cod.clone()));
        }
        // Identity name per object: explicit assignment, else `id_<obj>`.
        let mut identity_name: BTreeMap<String, String> = BTreeMap::new();
        for (obj, mor) in &raw.identities {
            if !obj_index.contains_key(obj) {
                return Err(FincatError::UnknownObject(obj.clone()));
            }
            if !declared.contains_key(mor) {
                return Err(FincatError::UnknownMorphism(mor.clone()));
            }
            identity_name.insert(obj.clone(), mor.clone());
        }
        for obj in &objects {
            if identity_name.contains_key(obj) {
                continue;
            }
            let auto = format!("id_{obj}");
            if !declared.contains_key(&auto) {
                declared.insert(auto.clone(), (obj.clone(), obj.clone()));
            }
            identity_name.insert(obj.clone(), auto);
        }

        let mut names: Vec<String> = declared.keys().cloned().collect();
        names.sort();
        let mor_index: BTreeMap<String, MorId> = names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.clone(), MorId(i)))
            .collect();
        let mut morphisms = Vec::with_capacity(names.len());
        for name in &names {
            let (dom, cod) = &declared[name];
            let dom = *obj_index
                .get(dom)
                .ok_or_else(|| FincatError::DanglingReference {
                    name: dom.clone(),
                    place: format!("domain of `{name}`"),
                })?;
            let cod = *obj_index
                .get(cod)
                .ok_or_else(|| FincatError::DanglingReference {
                    name: cod.clone(),
                    place: format!("codomain of `{name}`"),
                })?;
            morphisms.push(MorphismData {
                name: name.clone(),
                dom,
                cod,
            });
        }

        // Identity morphisms must be endomorphisms of their object.
        let mut identity = vec![MorId(usize::MAX); objects.len()];
        for (obj, mor) in &identity_name {
            let oid = obj_index[obj];
            let mid = mor_index[mor];
            let data = &morphisms[mid.0];
            if data.dom != oid || data.cod != oid {
                return Err(FincatError::BadIdentity(obj.clone()));
            }
            identity[oid.0] = mid;
        }

        let n = morphisms.len();
        let mut comp: Vec<Vec<Option<MorId>>> = vec![vec![None; n]; n];

        // Identity composites are forced.
        for f in 0..n {
            let (dom, cod) = (morphisms[f].dom, morphisms[f].cod);
            comp[identity[dom.0].0][f] = Some(MorId(f));
            comp[f][identity[cod.0].0] = Some(MorId(f));
        }

        for (fname, gname, hname) in &raw.composites {
            let f = *mor_index
                .get(fname)
                .ok_or_else(|| FincatError::DanglingReference {
                    name: fname.clone(),
                    place: "composition table".into(),
                })?;
            let g = *mor_index
                .get(gname)
                .ok_or_else(|| FincatError::DanglingReference {
                    name: gname.clone(),
                    place: "composition table".into(),
                })?;
            let h = *mor_index
                .get(hname)
                .ok_or_else(|| FincatError::DanglingReference {
                    name: hname.clone(),
                    place: "composition table".into(),
                })?;
            if morphisms[f.0].cod != morphisms[g.0].dom {
                return Err(FincatError::NotComposable {
                    f: fname.clone(),
                    g: gname.clone(),
                });
            }
            if morphisms[h.0].dom != morphisms[f.0].dom || morphisms[h.0].cod != morphisms[g.0].cod
            {
                return Err(FincatError::BadCompositeEndpoints {
                    f: fname.clone(),
                    g: gname.clone(),
                    h: hname.clone(),
                });
            }
            match comp[f.0][g.0] {
                None => comp[f.0][g.0] = Some(h),
                Some(existing) if existing == h => {}
                Some(existing) => {
                    // Identity-forced entries that disagree are identity-law
                    // violations, anything else is a duplicate row.
                    let err = if identity.contains(&f) || identity.contains(&g) {
                        FincatError::BadIdentity(objects[morphisms[f.0].dom.0].clone())
                    } else {
                        FincatError::ConflictingComposite {
                            f: fname.clone(),
                            g: gname.clone(),
                            first: morphisms[existing.0].name.clone(),
                            second: hname.clone(),
                        }
                    };
                    return Err(err);
                }
            }
        }

        // Totality over composable pairs.
        for f in 0..n {
            for g in 0..n {
                if morphisms[f].cod == morphisms[g].dom && comp[f][g].is_none() {
                    return Err(FincatError::MissingComposite {
                        f: morphisms[f].name.clone(),
                        g: morphisms[g].name.clone(),
                    });
                }
            }
        }

        let cat = FinCategory {
            objects,
            morphisms,
            identity,
            comp,
            obj_index,
            mor_index,
        };

        // Identity laws (beyond the forced entries: a user row could have
        // overwritten nothing, but an explicitly bad identity shows here).
        for f in cat.morphism_ids() {
            let (d, c) = (cat.dom(f), cat.cod(f));
            if cat.compose(cat.identity_of(d), f) != Some(f)
                || cat.compose(f, cat.identity_of(c)) != Some(f)
            {
                return Err(FincatError::BadIdentity(cat.object_name(d).to_string()));
            }
        }

        // Exhaustive associativity.
        for f in cat.morphism_ids() {
            for g in cat.morphism_ids() {
                let Some(fg) = cat.compose(f, g) else { continue };
                for h in cat.morphism_ids() {
                    let Some(gh) = cat.compose(g, h) else { continue };
                    if cat.compose(fg, h) != cat.compose(f, gh) {
                        return Err(FincatError::NonAssociative {
                            f: cat.morphism_name(f).to_string(),
                            g: cat.morphism_name(g).to_string(),
                            h: cat.morphism_name(h).to_string(),
                        });
                    }
                }
            }
        }

        Ok(cat)
    }

    /// Builds a category from already-resolved parts, checking the
    /// category laws but not the input-name charset. Used for quotient
    /// categories whose morphism names are word tokens.
    pub(crate) fn from_parts(
        objects: Vec<String>,
        morphisms: Vec<(String, ObjId, ObjId)>,
        identity: Vec<MorId>,
        comp: Vec<Vec<Option<MorId>>>,
    ) -> Result<Self, FincatError> {
        let obj_index: BTreeMap<String, ObjId> = objects
            .iter()
            .enumerate()
            .map(|(i, n)| (n.clone(), ObjId(i)))
            .collect();
        if obj_index.len() != objects.len() {
            return Err(FincatError::DuplicateObject("<promoted>".into()));
        }
        let mor_index: BTreeMap<String, MorId> = morphisms
            .iter()
            .enumerate()
            .map(|(i, (n, _, _))| (n.clone(), MorId(i)))
            .collect();
        if mor_index.len() != morphisms.len() {
            return Err(FincatError::DuplicateMorphism("<promoted>".into()));
        }
        let cat = FinCategory {
            objects,
            morphisms: morphisms
                .into_iter()
                .map(|(name, dom, cod)| MorphismData { name, dom, cod })
                .collect(),
            identity,
            comp,
            obj_index,
            mor_index,
        };
        // Totality, identity laws, associativity.
        for f in cat.morphism_ids() {
            for g in cat.morphism_ids() {
                let entry = cat.compose(f, g);
                if (cat.cod(f) == cat.dom(g)) != entry.is_some() {
                    return Err(FincatError::MissingComposite {
                        f: cat.morphism_name(f).to_string(),
                        g: cat.morphism_name(g).to_string(),
                    });
                }
                if let Some(h) = entry {
                    if cat.dom(h) != cat.dom(f) || cat.cod(h) != cat.cod(g) {
                        return Err(FincatError::BadCompositeEndpoints {
                            f: cat.morphism_name(f).to_string(),
                            g: cat.morphism_name(g).to_string(),
                            h: cat.morphism_name(h).to_string(),
                        });
                    }
                }
            }
        }
        for f in cat.morphism_ids() {
            let (d, c) = (cat.dom(f), cat.cod(f));
            if cat.compose(cat.identity_of(d), f) != Some(f)
                || cat.compose(f, cat.identity_of(c)) != Some(f)
            {
                return Err(FincatError::BadIdentity(cat.object_name(d).to_string()));
            }
        }
        for f in cat.morphism_ids() {
            for g in cat.morphism_ids() {
                let Some(fg) = cat.compose(f, g) else { continue };
                for h in cat.morphism_ids() {
                    let Some(gh) = cat.compose(g, h) else { continue };
                    if cat.compose(fg, h) != cat.compose(f, gh) {
                        return Err(FincatError::NonAssociative {
                            f: cat.morphism_name(f).to_string(),
                            g: cat.morphism_name(g).to_string(),
                            h: cat.morphism_name(h).to_string(),
                        });
                    }
                }
            }
        }
        Ok(cat)
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn object_ids(&self) -> impl Iterator<Item = ObjId> {
        (0..self.objects.len()).map(ObjId)
    }

    pub fn morphism_ids(&self) -> impl Iterator<Item = MorId> {
        (0..self.morphisms.len()).map(MorId)
    }

    pub fn object_name(&self, x: ObjId) -> &str {
        &self.objects[x.0]
    }

    pub fn morphism_name(&self, m: MorId) -> &str {
        &self.morphisms[m.0].name
    }

    pub fn dom(&self, m: MorId) -> ObjId {
        self.morphisms[m.0].dom
    }

    pub fn cod(&self, m: MorId) -> ObjId {
        self.morphisms[m.0].cod
    }

    pub fn identity_of(&self, x: ObjId) -> MorId {
        self.identity[x.0]
    }

    pub fn is_identity(&self, m: MorId) -> bool {
        self.identity[self.morphisms[m.0].dom.0] == m && self.dom(m) == self.cod(m)
    }

    /// `g∘f`, defined exactly when `cod(f) = dom(g)`.
    pub fn compose(&self, f: MorId, g: MorId) -> Option<MorId> {
        self.comp[f.0][g.0]
    }

    pub fn object(&self, name: &str) -> Result<ObjId, FincatError> {
        self.obj_index
            .get(name)
            .copied()
            .ok_or_else(|| FincatError::UnknownObject(name.to_string()))
    }

    pub fn morphism(&self, name: &str) -> Result<MorId, FincatError> {
        self.mor_index
            .get(name)
            .copied()
            .ok_or_else(|| FincatError::UnknownMorphism(name.to_string()))
    }

    pub fn morphisms_into(&self, x: ObjId) -> Vec<MorId> {
        self.morphism_ids().filter(|m| self.cod(*m) == x).collect()
    }

    pub fn morphisms_from(&self, x: ObjId) -> Vec<MorId> {
        self.morphism_ids().filter(|m| self.dom(*m) == x).collect()
    }

    pub fn hom(&self, x: ObjId, y: ObjId) -> Vec<MorId> {
        self.morphism_ids()
            .filter(|m| self.dom(*m) == x && self.cod(*m) == y)
            .collect()
    }

    /// Every hom-set has at most one element.
    pub fn is_thin(&self) -> bool {
        let mut seen = BTreeSet::new();
        for m in self.morphism_ids() {
            if !seen.insert((self.dom(m), self.cod(m))) {
                return false;
            }
        }
        true
    }

    pub fn is_one_object(&self) -> bool {
        self.objects.len() == 1
    }

    /// One object and commutative composition.
    pub fn is_commutative_monoid(&self) -> bool {
        if !self.is_one_object() {
            return false;
        }
        for f in self.morphism_ids() {
            for g in self.morphism_ids() {
                if self.compose(f, g) != self.compose(g, f) {
                    return false;
                }
            }
        }
        true
    }

    /// The opposite category: domains and codomains swapped, composition
    /// transposed. Object and morphism indices are preserved, so applying
    /// this twice returns an equal category.
    pub fn opposite(&self) -> FinCategory {
        let n = self.morphisms.len();
        let morphisms = self
            .morphisms
            .iter()
            .map(|m| MorphismData {
                name: m.name.clone(),
                dom: m.cod,
                cod: m.dom,
            })
            .collect();
        let mut comp = vec![vec![None; n]; n];
        for (f, row) in comp.iter_mut().enumerate() {
            for (g, slot) in row.iter_mut().enumerate() {
                *slot = self.comp[g][f];
            }
        }
        FinCategory {
            objects: self.objects.clone(),
            morphisms,
            identity: self.identity.clone(),
            comp,
            obj_index: self.obj_index.clone(),
            mor_index: self.mor_index.clone(),
        }
    }
}

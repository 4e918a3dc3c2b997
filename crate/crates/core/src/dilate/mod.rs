//! Enumeration of localizations and dilatations.
//!
//! A dilatation hom-set collects the classes of alternating words
//! `n_1 · l_{d_1} · … · n_k · l_{d_k}` with every numerator `n_i` in the
//! sieve of its denominator `d_i`; a localization takes all zigzag words.
//! Enumeration walks reduced words breadth-first, quotients them with the
//! selected equality backend and reports, per hom-set, whether the class
//! list is provably complete.
//!
//! With an exact backend the class space is computed directly — endpoint
//! reachability on thin categories, the finite set of Ore fraction values
//! on commutative one-object categories — so a hom-set is stabilized
//! exactly when every predicted class has an enumerated witness. On top
//! of that the move-connectivity discharge re-verifies, instance by
//! instance, that words the backend identifies really are joined by
//! elementary move chains. The search backend has no such oracle and
//! falls back to the two-increment plateau heuristic.
//!
//! Before enumerating, sigma is widened: every identity of the base
//! category joins sigma with the maximal sieve. The generated-sieve
//! convention already forces maximal sieves on identities, and without
//! the widening plain morphisms `[a]` would not be fractions and the
//! dilatation would have no identities at objects outside sigma.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use thiserror::Error;

use crate::fincat::{FinCategory, FincatError, MorId, ObjId, SigmaCenter, Subcategory};
use crate::zigzag::{
    Budget, EqualityBackend, Letter, LocGraph, OreClasses, ZigzagError, ZigzagWord,
};

mod checks;
mod functor;

pub use checks::{
    check_bimorphism, check_exc, check_sigma_reg, dual_dilate, fraction_of, image_sieve,
    iterated_dilatation_check, representability_report, universal_factorization,
    universal_report, IterateReport, ReprOutcome, ReprTarget, SigmaRegReport, UniversalReport,
};
pub use functor::{
    center_inclusion_functor, embed_into_localization, subcategory_inclusion_functor, theta,
    FinFunctor, InclusionReport, PromotedCategory,
};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum DilateError {
    #[error("hom-set {src} -> {tgt} is not stabilized")]
    UnstabilizedHom { src: String, tgt: String },
    #[error("`{n}` is not in the sieve of `{d}`")]
    NotInCenter { n: String, d: String },
    #[error("sieve of `{d}` is not included in the other center")]
    NotIncluded { d: String },
    #[error("gamma is not a subcategory of sigma")]
    NotSubcategory,
    #[error("universal-property hypothesis fails at `{d}`: {detail}")]
    HypothesisFailed { d: String, detail: String },
    #[error("no factorizer for ({n}, {d}) in the target")]
    NoFactorizer { n: String, d: String },
    #[error("not a functor: {0}")]
    NotAFunctor(String),
    #[error("backend discharge failed on {label}: {components} components")]
    DischargeFailed { label: String, components: usize },
    #[error("no class found for word `{0}`")]
    UnresolvedClass(String),
    #[error("words do not compose: {0} then {1}")]
    ComposeMismatch(String, String),
    #[error("operation needs a dilatation, not a localization")]
    WrongMode,
    #[error(transparent)]
    Fincat(#[from] FincatError),
    #[error(transparent)]
    Zigzag(#[from] ZigzagError),
}

/// Options shared by `dilate` and `localize`.
#[derive(Debug, Clone, Default)]
pub struct DilateOptions {
    pub budget: Option<Budget>,
    /// `None` picks the best applicable backend.
    pub backend: Option<EqualityBackend>,
}

impl DilateOptions {
    pub fn with_budget(budget: Budget) -> Self {
        DilateOptions {
            budget: Some(budget),
            backend: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DilationMode {
    Dilatation,
    Localization,
}

/// Reference to one class of one hom-set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ClassId {
    pub src: ObjId,
    pub tgt: ObjId,
    pub index: usize,
}

/// One fraction: an equivalence class of zigzag words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fraction {
    /// Shortest reduced member, ties broken lexicographically. Used for
    /// display and ordering, never for equality.
    canonical: ZigzagWord,
    /// A representative in the alternating numerator/denominator shape.
    nshaped: ZigzagWord,
    /// Enumerated reduced members, sorted.
    members: Vec<ZigzagWord>,
}

impl Fraction {
    pub fn canonical(&self) -> &ZigzagWord {
        &self.canonical
    }

    pub fn nshaped(&self) -> &ZigzagWord {
        &self.nshaped
    }

    pub fn members(&self) -> &[ZigzagWord] {
        &self.members
    }
}

/// The enumerated classes between one pair of objects.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomSet {
    pub source: ObjId,
    pub target: ObjId,
    pub classes: Vec<Fraction>,
    /// Whether the class list is complete: proved against the exact
    /// backend's class space, or plateau-stable for the search backend.
    pub stabilized: bool,
    /// Longest word length enumerated for this result.
    pub budget_used: usize,
}

impl HomSet {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }
}

/// A computed localization or dilatation: objects of the base category,
/// enumerated hom-sets of fractions, composition by word concatenation.
#[derive(Debug, Clone)]
pub struct DilatationResult {
    category: FinCategory,
    graph: LocGraph,
    center: SigmaCenter,
    given_sigma: Subcategory,
    backend: EqualityBackend,
    budget: Budget,
    mode: DilationMode,
    homs: BTreeMap<(ObjId, ObjId), HomSet>,
    word_class: BTreeMap<ZigzagWord, ClassId>,
    ore: Option<OreClasses>,
    /// Ore class id -> class index, per hom pair (one object in practice).
    ore_index: BTreeMap<(ObjId, ObjId), BTreeMap<usize, usize>>,
    /// Built by `dual_dilate`: fractions are in the backward/forward
    /// shape and represent right fractions.
    dual: bool,
}

/// Computes the dilatation of the category at the given center.
pub fn dilate(
    cat: &FinCategory,
    center: &SigmaCenter,
    opts: &DilateOptions,
) -> Result<DilatationResult, DilateError> {
    center.validate(cat)?;
    build(cat, center, DilationMode::Dilatation, opts, false)
}

/// Computes the localization at a subcategory: the dilatation where
/// every sieve is maximal, with the shape constraint dropped (all zigzag
/// words are enumerated, which yields the same classes; the acceptance
/// suite checks the two agree).
pub fn localize(
    cat: &FinCategory,
    sigma: &Subcategory,
    opts: &DilateOptions,
) -> Result<DilatationResult, DilateError> {
    sigma.validate(cat)?;
    let center = SigmaCenter::maximal(cat, sigma);
    build(cat, &center, DilationMode::Localization, opts, false)
}

pub(crate) fn build(
    cat: &FinCategory,
    center: &SigmaCenter,
    mode: DilationMode,
    opts: &DilateOptions,
    dual: bool,
) -> Result<DilatationResult, DilateError> {
    let budget = opts.budget.unwrap_or_default();
    let backend = match opts.backend {
        Some(b) => b,
        // The automatic search backend inherits the enumeration budget.
        None => match EqualityBackend::auto(cat) {
            EqualityBackend::Search(_) => EqualityBackend::Search(budget),
            exact => exact,
        },
    };
    backend.check_applicable(cat)?;
    let given_sigma = center.sigma().clone();
    let center = center.widened(cat);
    let graph = LocGraph::new(cat.clone(), center.sigma().clone())?;

    let enumeration = enumerate(&graph, &center, mode, &backend, &budget)?;
    let ore = match backend {
        EqualityBackend::CommutativeOneObject => Some(OreClasses::new(&graph)?),
        _ => None,
    };

    let mut result = DilatationResult {
        category: cat.clone(),
        graph,
        center,
        given_sigma,
        backend,
        budget,
        mode,
        homs: enumeration.homs,
        word_class: BTreeMap::new(),
        ore,
        ore_index: BTreeMap::new(),
        dual,
    };
    result.rebuild_lookup();
    Ok(result)
}

impl DilatationResult {
    pub fn category(&self) -> &FinCategory {
        &self.category
    }

    pub fn graph(&self) -> &LocGraph {
        &self.graph
    }

    /// The widened center actually used.
    pub fn center(&self) -> &SigmaCenter {
        &self.center
    }

    /// Sigma as passed in, before widening.
    pub fn given_sigma(&self) -> &Subcategory {
        &self.given_sigma
    }

    pub fn backend(&self) -> &EqualityBackend {
        &self.backend
    }

    pub fn budget(&self) -> &Budget {
        &self.budget
    }

    pub fn mode(&self) -> DilationMode {
        self.mode
    }

    pub fn is_dual(&self) -> bool {
        self.dual
    }

    pub fn homs(&self) -> impl Iterator<Item = &HomSet> {
        self.homs.values()
    }

    pub fn hom(&self, src: ObjId, tgt: ObjId) -> &HomSet {
        &self.homs[&(src, tgt)]
    }

    pub fn class(&self, id: ClassId) -> &Fraction {
        &self.homs[&(id.src, id.tgt)].classes[id.index]
    }

    pub fn class_ids(&self) -> impl Iterator<Item = ClassId> + '_ {
        self.homs.iter().flat_map(|(&(src, tgt), h)| {
            (0..h.classes.len()).map(move |index| ClassId { src, tgt, index })
        })
    }

    pub fn all_stabilized(&self) -> bool {
        self.homs.values().all(|h| h.stabilized)
    }

    pub fn require_stabilized(&self, src: ObjId, tgt: ObjId) -> Result<(), DilateError> {
        if self.homs[&(src, tgt)].stabilized {
            Ok(())
        } else {
            Err(DilateError::UnstabilizedHom {
                src: self.category.object_name(src).to_string(),
                tgt: self.category.object_name(tgt).to_string(),
            })
        }
    }

    fn rebuild_lookup(&mut self) {
        self.word_class.clear();
        self.ore_index.clear();
        for (&(src, tgt), hom) in &self.homs {
            for (index, class) in hom.classes.iter().enumerate() {
                let id = ClassId { src, tgt, index };
                for member in &class.members {
                    self.word_class.insert(member.clone(), id);
                }
                if let Some(ore) = &self.ore {
                    let key = ore.class_of_word(&self.graph, &class.canonical);
                    self.ore_index
                        .entry((src, tgt))
                        .or_default()
                        .insert(key, index);
                }
            }
        }
    }

    /// The identity class at an object: the class of the empty word.
    pub fn identity_class(&self, x: ObjId) -> Result<ClassId, DilateError> {
        self.class_of_word(&self.graph.empty_word(x))
    }

    /// The class of `[a]` for a morphism of the base category.
    pub fn theta_class(&self, a: MorId) -> Result<ClassId, DilateError> {
        let w = self
            .graph
            .word(self.category.dom(a), vec![Letter::Fwd(a)])
            .expect("forward letters are valid words");
        self.class_of_word(&w)
    }

    /// Locates the class of an arbitrary word of the graph.
    pub fn class_of_word(&self, w: &ZigzagWord) -> Result<ClassId, DilateError> {
        let src = w.start();
        let tgt = self.graph.word_cod(w);
        let missing = || DilateError::UnresolvedClass(self.graph.display_word(w));
        match self.backend {
            EqualityBackend::Poset => {
                let hom = &self.homs[&(src, tgt)];
                if hom.classes.is_empty() {
                    Err(missing())
                } else {
                    debug_assert_eq!(hom.classes.len(), 1);
                    Ok(ClassId {
                        src,
                        tgt,
                        index: 0,
                    })
                }
            }
            EqualityBackend::CommutativeOneObject => {
                let ore = self.ore.as_ref().expect("ore context built");
                let key = ore.class_of_word(&self.graph, w);
                let index = *self
                    .ore_index
                    .get(&(src, tgt))
                    .and_then(|m| m.get(&key))
                    .ok_or_else(missing)?;
                Ok(ClassId { src, tgt, index })
            }
            EqualityBackend::Search(_) => {
                let red = self.graph.reduce(w).word;
                if let Some(&id) = self.word_class.get(&red) {
                    return Ok(id);
                }
                // Slow path: bounded search against each class canonical.
                let budget = self.budget;
                let hom = &self.homs[&(src, tgt)];
                for (index, class) in hom.classes.iter().enumerate() {
                    if let crate::zigzag::SearchOutcome::Found(_) =
                        self.graph.find_path(&red, &class.canonical, &budget)
                    {
                        return Ok(ClassId { src, tgt, index });
                    }
                }
                Err(missing())
            }
        }
    }

    /// Composes two classes by concatenating representatives.
    pub fn compose(&self, f: ClassId, g: ClassId) -> Result<ClassId, DilateError> {
        if f.tgt != g.src {
            return Err(DilateError::ComposeMismatch(
                self.category.object_name(f.tgt).to_string(),
                self.category.object_name(g.src).to_string(),
            ));
        }
        let word = self
            .graph
            .compose_words(self.class(f).nshaped(), self.class(g).nshaped())
            .expect("endpoints checked");
        self.class_of_word(&word)
    }

    /// Syntactic alternating-shape check against the center.
    pub fn is_nfraction(&self, w: &ZigzagWord) -> bool {
        is_nfraction(&self.center, w)
    }

    /// Verifies that composition is representative-independent by
    /// composing every pair of members (capped per class) and checking
    /// the resulting class never changes.
    pub fn verify_composition_well_defined(&self, cap: usize) -> Result<(), DilateError> {
        for f in self.class_ids() {
            for g in self.class_ids() {
                if f.tgt != g.src {
                    continue;
                }
                let expected = self.compose(f, g)?;
                for m1 in self.class(f).members().iter().take(cap) {
                    for m2 in self.class(g).members().iter().take(cap) {
                        let w = self.graph.compose_words(m1, m2).expect("endpoints match");
                        let got = self.class_of_word(&w)?;
                        if got != expected {
                            return Err(DilateError::UnresolvedClass(format!(
                                "composition not well-defined at {} · {}",
                                self.graph.display_word(m1),
                                self.graph.display_word(m2)
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Checks associativity and identity laws on classes exhaustively.
    pub fn verify_category_laws(&self) -> Result<(), DilateError> {
        let ids: Vec<ClassId> = self.class_ids().collect();
        for &f in &ids {
            let idl = self.identity_class(f.src)?;
            let idr = self.identity_class(f.tgt)?;
            if self.compose(idl, f)? != f || self.compose(f, idr)? != f {
                return Err(DilateError::UnresolvedClass(
                    "identity law fails on classes".into(),
                ));
            }
        }
        for &f in &ids {
            for &g in &ids {
                if f.tgt != g.src {
                    continue;
                }
                let fg = self.compose(f, g)?;
                for &h in &ids {
                    if g.tgt != h.src {
                        continue;
                    }
                    let gh = self.compose(g, h)?;
                    if self.compose(fg, h)? != self.compose(f, gh)? {
                        return Err(DilateError::UnresolvedClass(
                            "associativity fails on classes".into(),
                        ));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Shape check: `w` is literally `n_1 l_{d_1} … n_k l_{d_k}` with `k ≥ 1`
/// and every `n_i` in the sieve of `d_i`.
pub fn is_nfraction(center: &SigmaCenter, w: &ZigzagWord) -> bool {
    if w.len() < 2 || !w.len().is_multiple_of(2) {
        return false;
    }
    for pair in w.letters().chunks(2) {
        let (Letter::Fwd(n), Letter::Back(d)) = (pair[0], pair[1]) else {
            return false;
        };
        let Some(sieve) = center.sieve(d) else {
            return false;
        };
        if !sieve.contains(n) {
            return false;
        }
    }
    true
}

/// Rewrites a reduced word into the alternating shape by pairing each
/// forward letter with the following backward letter and padding with
/// identities. Returns `None` when a required numerator is not in its
/// sieve (always succeeds on maximal centers).
pub fn nshape_of(
    graph: &LocGraph,
    center: &SigmaCenter,
    w: &ZigzagWord,
) -> Option<ZigzagWord> {
    let cat = graph.category();
    let mut letters: Vec<Letter> = Vec::new();
    let mut pending: Option<MorId> = None;
    let push_pair = |n: MorId, d: MorId, letters: &mut Vec<Letter>| -> bool {
        let Some(sieve) = center.sieve(d) else {
            return false;
        };
        if !sieve.contains(n) {
            return false;
        }
        letters.push(Letter::Fwd(n));
        letters.push(Letter::Back(d));
        true
    };
    for &letter in w.letters() {
        match letter {
            Letter::Fwd(a) => {
                debug_assert!(pending.is_none(), "reduced words alternate");
                pending = Some(a);
            }
            Letter::Back(d) => {
                let n = pending.take().unwrap_or_else(|| cat.identity_of(cat.cod(d)));
                if !push_pair(n, d, &mut letters) {
                    return None;
                }
            }
        }
    }
    if let Some(a) = pending {
        if !push_pair(a, cat.identity_of(cat.cod(a)), &mut letters) {
            return None;
        }
    }
    if letters.is_empty() {
        let id = cat.identity_of(w.start());
        if !push_pair(id, id, &mut letters) {
            return None;
        }
    }
    Some(
        graph
            .word(w.start(), letters)
            .expect("pairing preserves the chain"),
    )
}

struct Enumeration {
    homs: BTreeMap<(ObjId, ObjId), HomSet>,
}

/// One forward/backward step of the enumeration.
#[derive(Debug, Clone, Copy)]
enum StepKind {
    Pair(MorId, MorId),
    Single(Letter),
}

fn enumerate(
    graph: &LocGraph,
    center: &SigmaCenter,
    mode: DilationMode,
    backend: &EqualityBackend,
    budget: &Budget,
) -> Result<Enumeration, DilateError> {
    let cat = graph.category();

    // Steps available from each object.
    let mut steps: BTreeMap<ObjId, Vec<StepKind>> = BTreeMap::new();
    for x in cat.object_ids() {
        steps.insert(x, Vec::new());
    }
    match mode {
        DilationMode::Dilatation => {
            for &d in center.sigma().morphisms() {
                let sieve = center.sieve(d).expect("validated center");
                for &n in sieve.members() {
                    steps
                        .get_mut(&cat.dom(n))
                        .expect("object exists")
                        .push(StepKind::Pair(n, d));
                }
            }
        }
        DilationMode::Localization => {
            for m in cat.morphism_ids() {
                steps
                    .get_mut(&cat.dom(m))
                    .expect("object exists")
                    .push(StepKind::Single(Letter::Fwd(m)));
            }
            for &d in center.sigma().morphisms() {
                steps
                    .get_mut(&cat.cod(d))
                    .expect("object exists")
                    .push(StepKind::Single(Letter::Back(d)));
            }
        }
    }
    let step_len = match mode {
        DilationMode::Dilatation => 2,
        DilationMode::Localization => 1,
    };
    let max_depth = (budget.max_word_len / step_len).max(1);

    // The exact class space per hom pair, when the backend provides one.
    let ore = match backend {
        EqualityBackend::CommutativeOneObject => Some(OreClasses::new(graph)?),
        _ => None,
    };
    let expected: Option<BTreeMap<(ObjId, ObjId), BTreeSet<usize>>> = match backend {
        EqualityBackend::Poset => Some(expected_poset(graph, &steps)),
        EqualityBackend::CommutativeOneObject => Some(expected_ore(
            graph,
            ore.as_ref().expect("built above"),
            &steps,
            mode,
        )),
        EqualityBackend::Search(_) => None,
    };

    // Breadth-first walk over reduced words, keeping for each state the
    // unreduced step word that first produced it.
    let mut states: HashMap<ZigzagWord, ZigzagWord> = HashMap::new();
    let mut frontier: Vec<ZigzagWord> = Vec::new();
    for x in cat.object_ids() {
        let w = graph.empty_word(x);
        states.insert(w.clone(), w.clone());
        frontier.push(w);
    }

    // Registered words per hom and backend key. Exact backends key by
    // their class value; the search backend gives every word its own
    // key and merges them by union-find afterwards.
    let mut keyed: BTreeMap<(ObjId, ObjId), BTreeMap<usize, Vec<ZigzagWord>>> = BTreeMap::new();
    let mut last_change: BTreeMap<(ObjId, ObjId), usize> = BTreeMap::new();
    for x in cat.object_ids() {
        for y in cat.object_ids() {
            keyed.insert((x, y), BTreeMap::new());
            last_change.insert((x, y), 0);
        }
    }
    let mut search_key = 0usize;
    let mut last_new_key = 0usize;
    // Registers a word under its backend key; returns whether it opened
    // a new key bucket.
    fn register(
        w: &ZigzagWord,
        key: usize,
        keyed: &mut BTreeMap<(ObjId, ObjId), BTreeMap<usize, Vec<ZigzagWord>>>,
        hom: (ObjId, ObjId),
    ) -> bool {
        let entry = keyed.get_mut(&hom).expect("all pairs present").entry(key);
        let entry = entry.or_default();
        let fresh = entry.is_empty();
        entry.push(w.clone());
        fresh
    }
    let key_of = |w: &ZigzagWord, search_key: &mut usize| -> usize {
        match backend {
            EqualityBackend::Poset => 0,
            EqualityBackend::CommutativeOneObject => ore
                .as_ref()
                .expect("ore context")
                .class_of_word(graph, w),
            EqualityBackend::Search(_) => {
                *search_key += 1;
                *search_key
            }
        }
    };

    // The empty words are registered up front: in a localization they
    // are the identity fractions, and in a dilatation they represent the
    // class of `id · l_id`, which exists because sigma is widened.
    for x in cat.object_ids() {
        let w = graph.empty_word(x);
        let key = key_of(&w, &mut search_key);
        if register(&w, key, &mut keyed, (x, x)) {
            last_change.insert((x, x), 0);
        }
    }

    let mut depth = 0usize;
    let mut budget_hit = false;
    let mut plateaued = false;
    'depths: while !frontier.is_empty() && depth < max_depth {
        depth += 1;
        let mut next: Vec<ZigzagWord> = Vec::new();
        for w in std::mem::take(&mut frontier) {
            let origin = states[&w].clone();
            let at = graph.word_cod(&w);
            for step in &steps[&at] {
                let appended: Vec<Letter> = match *step {
                    StepKind::Pair(n, d) => vec![Letter::Fwd(n), Letter::Back(d)],
                    StepKind::Single(l) => vec![l],
                };
                let mut origin_letters = origin.letters().to_vec();
                origin_letters.extend(appended.iter().copied());
                let new_origin = graph.word_unchecked(origin.start(), origin_letters);
                let mut w_letters = w.letters().to_vec();
                w_letters.extend(appended);
                let grown = graph.word_unchecked(w.start(), w_letters);
                let red = graph.reduce(&grown).word;
                if states.contains_key(&red) {
                    continue;
                }
                if states.len() >= budget.max_states {
                    budget_hit = true;
                    break 'depths;
                }
                states.insert(red.clone(), new_origin);
                let hom = (red.start(), graph.word_cod(&red));
                let key = key_of(&red, &mut search_key);
                if register(&red, key, &mut keyed, hom) {
                    last_change.insert(hom, depth);
                    last_new_key = depth;
                }
                next.push(red);
            }
        }
        frontier = next;

        if let Some(expected) = &expected {
            // Exact: stop once the predicted class space is covered and
            // one further increment gathered extra members.
            let covered = expected.iter().all(|(hom, keys)| {
                keys.iter()
                    .all(|k| keyed[hom].get(k).is_some_and(|v| !v.is_empty()))
            });
            if covered && depth > last_new_key {
                plateaued = true;
                break;
            }
        } else if depth >= 2 + last_new_key {
            // Plateau heuristic: two increments without a new word. A
            // merge can only come from a new connecting word, so quiet
            // increments rule merges out as well.
            plateaued = true;
            break;
        }
    }
    let exhausted = frontier.is_empty() && !budget_hit;

    // Group registered words into classes.
    let grouped: BTreeMap<(ObjId, ObjId), BTreeMap<usize, Vec<ZigzagWord>>> = match backend {
        EqualityBackend::Search(_) => {
            // Union-find over registered states by single moves.
            let mut registered: Vec<ZigzagWord> = Vec::new();
            let mut reg_index: HashMap<ZigzagWord, usize> = HashMap::new();
            for bucket in keyed.values() {
                for words in bucket.values() {
                    for w in words {
                        if !reg_index.contains_key(w) {
                            reg_index.insert(w.clone(), registered.len());
                            registered.push(w.clone());
                        }
                    }
                }
            }
            fn find(dsu: &mut [usize], mut x: usize) -> usize {
                while dsu[x] != x {
                    dsu[x] = dsu[dsu[x]];
                    x = dsu[x];
                }
                x
            }
            let mut dsu: Vec<usize> = (0..registered.len()).collect();
            for (i, w) in registered.iter().enumerate() {
                for (_, n) in graph.elementary_neighbors(w, budget) {
                    let red = graph.reduce(&n).word;
                    if let Some(&j) = reg_index.get(&red) {
                        let (ri, rj) = (find(&mut dsu, i), find(&mut dsu, j));
                        if ri != rj {
                            dsu[ri] = rj;
                        }
                    }
                }
            }
            let mut out: BTreeMap<(ObjId, ObjId), BTreeMap<usize, Vec<ZigzagWord>>> =
                BTreeMap::new();
            for x in cat.object_ids() {
                for y in cat.object_ids() {
                    out.insert((x, y), BTreeMap::new());
                }
            }
            for (i, w) in registered.iter().enumerate() {
                let hom = (w.start(), graph.word_cod(w));
                let root = find(&mut dsu, i);
                out.get_mut(&hom)
                    .expect("all pairs present")
                    .entry(root)
                    .or_default()
                    .push(w.clone());
            }
            out
        }
        _ => {
            // Exact: buckets are the classes; discharge each bucket by
            // move connectivity before trusting it.
            let mut discharge_buckets = Vec::new();
            for (&(x, y), bucket) in &keyed {
                for (key, words) in bucket {
                    discharge_buckets.push(crate::zigzag::DischargeBucket {
                        label: format!(
                            "hom({}, {}) class {}",
                            cat.object_name(x),
                            cat.object_name(y),
                            key
                        ),
                        members: words.clone(),
                    });
                }
            }
            crate::zigzag::connectivity_discharge(graph, &discharge_buckets, budget).map_err(
                |f| DilateError::DischargeFailed {
                    label: f.label,
                    components: f.components,
                },
            )?;
            keyed
        }
    };

    // Assemble hom-sets with stabilization flags.
    let mut homs: BTreeMap<(ObjId, ObjId), HomSet> = BTreeMap::new();
    for x in cat.object_ids() {
        for y in cat.object_ids() {
            let groups = grouped.get(&(x, y)).cloned().unwrap_or_default();
            let stabilized = match &expected {
                Some(expected) => expected[&(x, y)]
                    .iter()
                    .all(|k| groups.get(k).is_some_and(|v| !v.is_empty())),
                None => (plateaued || exhausted) && !budget_hit,
            };
            if let Some(expected) = &expected {
                debug_assert!(
                    groups.keys().all(|k| expected[&(x, y)].contains(k)),
                    "enumerated a class outside the predicted space"
                );
            }
            homs.insert(
                (x, y),
                finish_hom(
                    graph,
                    center,
                    &states,
                    x,
                    y,
                    groups,
                    stabilized,
                    depth * step_len,
                ),
            );
        }
    }

    Ok(Enumeration { homs })
}

/// Builds the sorted class list of one hom-set.
#[allow(clippy::too_many_arguments)]
fn finish_hom(
    graph: &LocGraph,
    center: &SigmaCenter,
    states: &HashMap<ZigzagWord, ZigzagWord>,
    source: ObjId,
    target: ObjId,
    groups: BTreeMap<usize, Vec<ZigzagWord>>,
    stabilized: bool,
    budget_used: usize,
) -> HomSet {
    let word_order = |a: &ZigzagWord, b: &ZigzagWord| {
        a.len()
            .cmp(&b.len())
            .then_with(|| a.letters().cmp(b.letters()))
    };
    let mut classes: Vec<Fraction> = Vec::new();
    for (_, mut members) in groups {
        members.sort_by(word_order);
        members.dedup();
        let canonical = members[0].clone();
        // Prefer the padded shape of the shortest member; fall back to
        // the step word that first produced it (always alternating for
        // dilatation steps, possibly not for localization letters, in
        // which case padding succeeded anyway because the sieves are
        // maximal there).
        let nshaped = nshape_of(graph, center, &canonical)
            .or_else(|| {
                members
                    .iter()
                    .filter_map(|m| states.get(m).cloned())
                    .find(|o| is_nfraction(center, o))
            })
            .unwrap_or_else(|| canonical.clone());
        classes.push(Fraction {
            canonical,
            nshaped,
            members,
        });
    }
    classes.sort_by(|a, b| word_order(&a.canonical, &b.canonical));
    HomSet {
        source,
        target,
        classes,
        stabilized,
        budget_used,
    }
}


/// Thin case: a hom-set has one class exactly when the target is
/// reachable through enumeration steps.
fn expected_poset(
    graph: &LocGraph,
    steps: &BTreeMap<ObjId, Vec<StepKind>>,
) -> BTreeMap<(ObjId, ObjId), BTreeSet<usize>> {
    let cat = graph.category();
    let mut out = BTreeMap::new();
    for x in cat.object_ids() {
        // BFS over step endpoints.
        let mut seen: BTreeSet<ObjId> = BTreeSet::new();
        let mut queue: Vec<ObjId> = vec![x];
        let mut reached: BTreeSet<ObjId> = BTreeSet::new();
        while let Some(at) = queue.pop() {
            for step in &steps[&at] {
                let to = match *step {
                    StepKind::Pair(_, d) => cat.dom(d),
                    StepKind::Single(l) => graph.letter_endpoints(l).1,
                };
                reached.insert(to);
                if seen.insert(to) {
                    queue.push(to);
                }
            }
        }
        for y in cat.object_ids() {
            let keys: BTreeSet<usize> = if reached.contains(&y) {
                BTreeSet::from([0])
            } else {
                BTreeSet::new()
            };
            out.insert((x, y), keys);
        }
    }
    out
}

/// Commutative one-object case: the achievable Ore values are the
/// multiplicative closure of the step values.
fn expected_ore(
    graph: &LocGraph,
    ore: &OreClasses,
    steps: &BTreeMap<ObjId, Vec<StepKind>>,
    mode: DilationMode,
) -> BTreeMap<(ObjId, ObjId), BTreeSet<usize>> {
    let cat = graph.category();
    let pt = cat.object_ids().next().expect("one object");
    let mut values: BTreeSet<usize> = BTreeSet::new();
    if mode == DilationMode::Localization {
        values.insert(ore.one_class());
    }
    for step in &steps[&pt] {
        let class = match *step {
            StepKind::Pair(n, d) => ore.class_of_pair(n, d).expect("pair over sigma"),
            StepKind::Single(Letter::Fwd(m)) => {
                let one = cat.identity_of(pt);
                ore.class_of_pair(m, one).expect("pair over sigma")
            }
            StepKind::Single(Letter::Back(d)) => {
                let one = cat.identity_of(pt);
                ore.class_of_pair(one, d).expect("pair over sigma")
            }
        };
        values.insert(class);
    }
    loop {
        let mut added = Vec::new();
        for &a in &values {
            for &b in &values {
                let c = ore.mul_class(a, b);
                if !values.contains(&c) {
                    added.push(c);
                }
            }
        }
        if added.is_empty() {
            break;
        }
        values.extend(added);
    }
    BTreeMap::from([((pt, pt), values)])
}

//! Word-equality backends.
//!
//! Equality of zigzag words is the congruence generated by the
//! elementary moves. Three procedures decide it here:
//!
//! - `Poset`: on a thin category whose localization is again thin, two
//!   words are equal exactly when their endpoints agree. Thinness of the
//!   localization is not assumed; enumeration-level users run the
//!   move-connectivity discharge per instance (see
//!   [`connectivity_discharge`]).
//! - `CommutativeOneObject`: words map to fractions (product of forward
//!   letters over product of backward letters) compared by the central
//!   Ore criterion `x/s = y/t iff u·x·t = u·y·s for some u` in the
//!   denominator monoid; validated per instance by the same discharge.
//! - `Search`: bidirectional breadth-first search through reduced words,
//!   three-valued. Never answers `Distinct`.
//!
//! Exact backends attach a replayable move chain to `Equal` verdicts by
//! running the bounded search; on discharged instances the chain is
//! always found.

use std::collections::{BTreeMap, HashMap, VecDeque};

use super::{Budget, Letter, LocGraph, MovePath, ZigzagError, ZigzagWord};
use crate::fincat::{FinCategory, MorId};

/// Which equality procedure to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EqualityBackend {
    /// Endpoint comparison on thin categories.
    Poset,
    /// Central Ore fractions on one-object commutative categories.
    CommutativeOneObject,
    /// Bidirectional search with the given budget.
    Search(Budget),
}

impl EqualityBackend {
    /// Picks the best applicable backend.
    pub fn auto(cat: &FinCategory) -> EqualityBackend {
        if cat.is_thin() {
            EqualityBackend::Poset
        } else if cat.is_commutative_monoid() {
            EqualityBackend::CommutativeOneObject
        } else {
            EqualityBackend::Search(Budget::default())
        }
    }

    pub fn is_exact(&self) -> bool {
        !matches!(self, EqualityBackend::Search(_))
    }

    pub fn check_applicable(&self, cat: &FinCategory) -> Result<(), ZigzagError> {
        match self {
            EqualityBackend::Poset if !cat.is_thin() => Err(ZigzagError::BackendInapplicable(
                "the category has a hom-set with more than one element".into(),
            )),
            EqualityBackend::CommutativeOneObject if !cat.is_commutative_monoid() => {
                Err(ZigzagError::BackendInapplicable(
                    "the category is not a commutative one-object category".into(),
                ))
            }
            _ => Ok(()),
        }
    }
}

/// Why two words are distinct; only exact criteria separate words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DistinctWitness {
    /// Domain or codomain differ.
    EndpointMismatch,
    /// Ore fraction values differ; the pairs are (numerator, denominator).
    FractionValues {
        left: (MorId, MorId),
        right: (MorId, MorId),
    },
}

/// What a search did before giving up.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BudgetReport {
    pub visited: usize,
    pub max_word_len: usize,
    /// True when every reduced word within the length cap was explored.
    pub exhausted: bool,
}

/// Three-valued equality verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EqVerdict {
    /// Equal; the chain replays from the first word to the second. Exact
    /// backends attach the chain when the bounded search finds one.
    Equal { path: Option<MovePath> },
    Distinct(DistinctWitness),
    Unknown(BudgetReport),
}

impl EqVerdict {
    pub fn is_equal(&self) -> bool {
        matches!(self, EqVerdict::Equal { .. })
    }

    pub fn is_distinct(&self) -> bool {
        matches!(self, EqVerdict::Distinct(_))
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, EqVerdict::Unknown(_))
    }
}

/// Outcome of the raw path search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(MovePath),
    /// Both frontiers emptied within the length cap without meeting.
    Exhausted { visited: usize },
    /// The state budget ran out first.
    BudgetHit { visited: usize },
}

/// Ore fraction classes of a one-object commutative category relative to
/// a sub-monoid of denominators.
#[derive(Debug, Clone)]
pub struct OreClasses {
    denominators: Vec<MorId>,
    class_of: BTreeMap<(MorId, MorId), usize>,
    reps: Vec<(MorId, MorId)>,
    mul: Vec<Vec<usize>>,
    one_class: usize,
}

impl OreClasses {
    pub fn new(graph: &LocGraph) -> Result<Self, ZigzagError> {
        let cat = graph.category();
        if !cat.is_commutative_monoid() {
            return Err(ZigzagError::BackendInapplicable(
                "Ore classes need a commutative one-object category".into(),
            ));
        }
        let denominators: Vec<MorId> = graph.sigma().morphisms().iter().copied().collect();
        let mul_el = |a: MorId, b: MorId| cat.compose(a, b).expect("one object");
        let equivalent = |&(x, s): &(MorId, MorId), &(y, t): &(MorId, MorId)| {
            denominators
                .iter()
                .any(|&u| mul_el(mul_el(u, x), t) == mul_el(mul_el(u, y), s))
        };
        let mut reps: Vec<(MorId, MorId)> = Vec::new();
        let mut class_of = BTreeMap::new();
        for x in cat.morphism_ids() {
            for &s in &denominators {
                let pair = (x, s);
                let idx = match reps.iter().position(|r| equivalent(r, &pair)) {
                    Some(i) => i,
                    None => {
                        reps.push(pair);
                        reps.len() - 1
                    }
                };
                class_of.insert(pair, idx);
            }
        }
        let n = reps.len();
        let mut mul = vec![vec![0usize; n]; n];
        for (i, &(x, s)) in reps.iter().enumerate() {
            for (j, &(y, t)) in reps.iter().enumerate() {
                mul[i][j] = class_of[&(mul_el(x, y), mul_el(s, t))];
            }
        }
        let one = cat.identity_of(cat.object_ids().next().expect("one object"));
        let one_class = class_of[&(one, one)];
        Ok(OreClasses {
            denominators,
            class_of,
            reps,
            mul,
            one_class,
        })
    }

    pub fn class_count(&self) -> usize {
        self.reps.len()
    }

    /// The denominator monoid: sigma's morphisms.
    pub fn denominators(&self) -> &[MorId] {
        &self.denominators
    }

    pub fn one_class(&self) -> usize {
        self.one_class
    }

    pub fn representative(&self, class: usize) -> (MorId, MorId) {
        self.reps[class]
    }

    pub fn mul_class(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn class_of_pair(&self, num: MorId, den: MorId) -> Option<usize> {
        self.class_of.get(&(num, den)).copied()
    }

    /// Numerator and denominator of a word: the products of its forward
    /// and backward letters.
    pub fn word_value(&self, graph: &LocGraph, w: &ZigzagWord) -> (MorId, MorId) {
        let cat = graph.category();
        let one = cat.identity_of(w.start());
        let mut num = one;
        let mut den = one;
        for &letter in w.letters() {
            match letter {
                Letter::Fwd(m) => num = cat.compose(num, m).expect("one object"),
                Letter::Back(d) => den = cat.compose(den, d).expect("one object"),
            }
        }
        (num, den)
    }

    pub fn class_of_word(&self, graph: &LocGraph, w: &ZigzagWord) -> usize {
        let (num, den) = self.word_value(graph, w);
        self.class_of[&(num, den)]
    }
}

impl LocGraph {
    /// Decides equality of two words under the given backend.
    pub fn decide_equal(
        &self,
        w1: &ZigzagWord,
        w2: &ZigzagWord,
        backend: &EqualityBackend,
    ) -> Result<EqVerdict, ZigzagError> {
        backend.check_applicable(self.category())?;
        if w1.start() != w2.start() || self.word_cod(w1) != self.word_cod(w2) {
            return Ok(EqVerdict::Distinct(DistinctWitness::EndpointMismatch));
        }
        match backend {
            EqualityBackend::Poset => {
                let path = match self.find_path(w1, w2, &Budget::default()) {
                    SearchOutcome::Found(p) => Some(p),
                    _ => None,
                };
                Ok(EqVerdict::Equal { path })
            }
            EqualityBackend::CommutativeOneObject => {
                let ore = OreClasses::new(self)?;
                let left = ore.word_value(self, w1);
                let right = ore.word_value(self, w2);
                if ore.class_of[&left] == ore.class_of[&right] {
                    let path = match self.find_path(w1, w2, &Budget::default()) {
                        SearchOutcome::Found(p) => Some(p),
                        _ => None,
                    };
                    Ok(EqVerdict::Equal { path })
                } else {
                    Ok(EqVerdict::Distinct(DistinctWitness::FractionValues {
                        left,
                        right,
                    }))
                }
            }
            EqualityBackend::Search(budget) => match self.find_path(w1, w2, budget) {
                SearchOutcome::Found(p) => Ok(EqVerdict::Equal { path: Some(p) }),
                SearchOutcome::Exhausted { visited } => Ok(EqVerdict::Unknown(BudgetReport {
                    visited,
                    max_word_len: budget.max_word_len,
                    exhausted: true,
                })),
                SearchOutcome::BudgetHit { visited } => Ok(EqVerdict::Unknown(BudgetReport {
                    visited,
                    max_word_len: budget.max_word_len,
                    exhausted: false,
                })),
            },
        }
    }

    /// Bidirectional breadth-first search for an elementary-move chain
    /// from `w1` to `w2`. States are raw words within the length budget;
    /// in addition every discovered word is linked to its reduction, so
    /// short canonical forms meet early. Every transition records its
    /// full elementary chain and the returned path replays exactly.
    pub fn find_path(&self, w1: &ZigzagWord, w2: &ZigzagWord, budget: &Budget) -> SearchOutcome {
        debug_assert_eq!(w1.start(), w2.start());
        debug_assert_eq!(self.word_cod(w1), self.word_cod(w2));

        let r1 = self.reduce(w1);
        let r2 = self.reduce(w2);
        // Path assembly helper: w1 ->r1-> ... -> meet <- ... <-r2<- w2.
        let assemble = |fwd_edges: MovePath, bwd_edges: MovePath| -> MovePath {
            let mut fwd = r1.path.clone();
            fwd.extend(fwd_edges);
            let mut from_w2 = r2.path.clone();
            from_w2.extend(bwd_edges);
            let back = self
                .invert_path(w2, &from_w2)
                .expect("recorded chains replay");
            let mut full = fwd;
            full.extend(back);
            debug_assert_eq!(self.replay(w1, &full).expect("full path replays"), *w2);
            full
        };
        if r1.word == r2.word {
            return SearchOutcome::Found(assemble(Vec::new(), Vec::new()));
        }

        struct Node {
            parent: Option<ZigzagWord>,
            edge: MovePath,
        }
        // Per-side visited maps and frontiers.
        let mut visited: [HashMap<ZigzagWord, Node>; 2] =
            [HashMap::new(), HashMap::new()];
        visited[0].insert(
            r1.word.clone(),
            Node {
                parent: None,
                edge: Vec::new(),
            },
        );
        visited[1].insert(
            r2.word.clone(),
            Node {
                parent: None,
                edge: Vec::new(),
            },
        );
        let mut frontier: [VecDeque<ZigzagWord>; 2] = [
            VecDeque::from([r1.word.clone()]),
            VecDeque::from([r2.word.clone()]),
        ];
        let mut count = 2usize;

        // Chain of edges from a side's root to a node.
        let edges_to = |visited: &HashMap<ZigzagWord, Node>, end: &ZigzagWord| -> MovePath {
            let mut chain: Vec<MovePath> = Vec::new();
            let mut cur = end.clone();
            loop {
                let node = &visited[&cur];
                if node.parent.is_none() {
                    break;
                }
                chain.push(node.edge.clone());
                cur = node.parent.clone().unwrap();
            }
            chain.reverse();
            chain.concat()
        };

        enum StepOutcome {
            Meet(MovePath),
            Budget(usize),
            Continue,
        }
        // Inserts one state reached from `parent` by `edge` on `side`.
        let mut admit = |state: ZigzagWord,
                         parent: &ZigzagWord,
                         edge: MovePath,
                         side: usize,
                         visited: &mut [HashMap<ZigzagWord, Node>; 2],
                         frontier: &mut [VecDeque<ZigzagWord>; 2]|
         -> StepOutcome {
            if visited[side].contains_key(&state) {
                return StepOutcome::Continue;
            }
            let met = visited[1 - side].contains_key(&state);
            if !met && count >= budget.max_states {
                return StepOutcome::Budget(count);
            }
            count += 1;
            visited[side].insert(
                state.clone(),
                Node {
                    parent: Some(parent.clone()),
                    edge,
                },
            );
            if met {
                let a = edges_to(&visited[0], &state);
                let b = edges_to(&visited[1], &state);
                return StepOutcome::Meet(assemble(a, b));
            }
            frontier[side].push_back(state);
            StepOutcome::Continue
        };

        while !frontier[0].is_empty() || !frontier[1].is_empty() {
            // Expand one level of the smaller nonempty frontier.
            let side = match (frontier[0].is_empty(), frontier[1].is_empty()) {
                (true, _) => 1,
                (_, true) => 0,
                _ if frontier[0].len() <= frontier[1].len() => 0,
                _ => 1,
            };
            let level: Vec<ZigzagWord> = frontier[side].drain(..).collect();
            for word in level {
                for (mv, next) in self.elementary_neighbors(&word, budget) {
                    // The raw neighbor keeps multi-step expansions
                    // reachable; its reduction accelerates meets.
                    let red = self.reduce(&next);
                    let mut via_reduce = vec![mv];
                    via_reduce.extend(red.path.iter().copied());
                    match admit(next, &word, vec![mv], side, &mut visited, &mut frontier) {
                        StepOutcome::Meet(p) => return SearchOutcome::Found(p),
                        StepOutcome::Budget(visited) => {
                            return SearchOutcome::BudgetHit { visited }
                        }
                        StepOutcome::Continue => {}
                    }
                    match admit(red.word, &word, via_reduce, side, &mut visited, &mut frontier)
                    {
                        StepOutcome::Meet(p) => return SearchOutcome::Found(p),
                        StepOutcome::Budget(visited) => {
                            return SearchOutcome::BudgetHit { visited }
                        }
                        StepOutcome::Continue => {}
                    }
                }
            }
        }
        SearchOutcome::Exhausted { visited: count }
    }
}

impl LocGraph {
    /// Bounded-exhaustive certification that all given words are joined
    /// pairwise by elementary move chains: explores single moves from
    /// every word simultaneously (with a slack of four letters over the
    /// longest word) until the words fall into one component.
    pub fn words_connected(&self, words: &[ZigzagWord], budget: &Budget) -> bool {
        let bucket = DischargeBucket {
            label: String::new(),
            members: words.to_vec(),
        };
        connectivity_discharge(self, &[bucket], budget).is_ok()
    }
}

/// A bucket of reduced words expected to be pairwise equal.
pub(crate) struct DischargeBucket {
    pub label: String,
    pub members: Vec<ZigzagWord>,
}

#[derive(Debug, Clone)]
pub(crate) struct DischargeFailure {
    pub label: String,
    pub components: usize,
}

/// Verifies, by breadth-first exploration of the elementary moves from
/// every member simultaneously, that each bucket of words is connected.
/// This discharges the soundness obligation of the exact backends on a
/// concrete instance: all words a backend declares equal really are
/// joined by move chains. Exploration stops as soon as the members fall
/// into one component; words beyond the length budget (with a slack of
/// four letters over the longest member, enough for the derived folds)
/// are pruned, so a failure means no chain exists through the bounded
/// word space.
pub(crate) fn connectivity_discharge(
    graph: &LocGraph,
    buckets: &[DischargeBucket],
    budget: &Budget,
) -> Result<(), DischargeFailure> {
    for bucket in buckets {
        if bucket.members.len() <= 1 {
            continue;
        }
        let longest = bucket.members.iter().map(|w| w.len()).max().unwrap_or(0);
        let explore = Budget {
            max_word_len: longest + 4,
            max_states: budget.max_states.min(25_000),
        };
        let mut index: HashMap<ZigzagWord, usize> = HashMap::new();
        let mut nodes: Vec<ZigzagWord> = Vec::new();
        let mut dsu = Dsu::new(0);
        let add = |w: ZigzagWord,
                       nodes: &mut Vec<ZigzagWord>,
                       index: &mut HashMap<ZigzagWord, usize>,
                       dsu: &mut Dsu|
         -> usize {
            if let Some(&i) = index.get(&w) {
                return i;
            }
            let i = nodes.len();
            index.insert(w.clone(), i);
            nodes.push(w);
            dsu.grow(i + 1);
            i
        };
        for w in &bucket.members {
            add(w.clone(), &mut nodes, &mut index, &mut dsu);
        }
        let member_count = nodes.len();
        let connected = |dsu: &mut Dsu| -> bool {
            let root = dsu.find(0);
            (1..member_count).all(|i| dsu.find(i) == root)
        };
        let mut at = 0;
        'bucket: while at < nodes.len() && nodes.len() < explore.max_states {
            let w = nodes[at].clone();
            for (_, next) in graph.elementary_neighbors(&w, &explore) {
                let red = graph.reduce(&next).word;
                let j = add(next, &mut nodes, &mut index, &mut dsu);
                let merged = dsu.union(at, j);
                let k = add(red, &mut nodes, &mut index, &mut dsu);
                let merged = dsu.union(j, k) || merged;
                if merged && connected(&mut dsu) {
                    break 'bucket;
                }
            }
            at += 1;
        }
        if !connected(&mut dsu) {
            let roots: std::collections::BTreeSet<usize> =
                (0..member_count).map(|i| dsu.find(i)).collect();
            return Err(DischargeFailure {
                label: bucket.label.clone(),
                components: roots.len(),
            });
        }
    }
    Ok(())
}

struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n).collect(),
        }
    }

    fn grow(&mut self, n: usize) {
        while self.parent.len() < n {
            self.parent.push(self.parent.len());
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
            true
        } else {
            false
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::zigzag::{build_graph, Move};

    #[test]
    fn poset_backend_decides_p1_fraction() {
        let cat = corpus::p1();
        let sigma = corpus::sigma_generated(&cat, &["d"]);
        let g = build_graph(&cat, &sigma).unwrap();
        let n = cat.morphism("n").unwrap();
        let u = cat.morphism("u").unwrap();
        let d = cat.morphism("d").unwrap();
        let x = cat.object("X").unwrap();
        let w1 = g.word(x, vec![Letter::Fwd(n), Letter::Back(d)]).unwrap();
        let w2 = g.word(x, vec![Letter::Fwd(u)]).unwrap();
        let verdict = g.decide_equal(&w1, &w2, &EqualityBackend::Poset).unwrap();
        let EqVerdict::Equal { path: Some(path) } = verdict else {
            panic!("expected an equality with a path");
        };
        assert_eq!(g.replay(&w1, &path).unwrap(), w2);
        // The search agrees.
        let via_search = g
            .decide_equal(&w1, &w2, &EqualityBackend::Search(Budget::default()))
            .unwrap();
        assert!(via_search.is_equal());
    }

    #[test]
    fn reflexivity_gives_equal_with_trivial_path() {
        let cat = corpus::p1();
        let sigma = corpus::sigma_generated(&cat, &["d"]);
        let g = build_graph(&cat, &sigma).unwrap();
        let u = cat.morphism("u").unwrap();
        let x = cat.object("X").unwrap();
        let w = g.word(x, vec![Letter::Fwd(u)]).unwrap();
        for backend in [
            EqualityBackend::Poset,
            EqualityBackend::Search(Budget::default()),
        ] {
            let verdict = g.decide_equal(&w, &w, &backend).unwrap();
            let EqVerdict::Equal { path: Some(path) } = verdict else {
                panic!("expected equal");
            };
            assert!(path.is_empty());
        }
    }

    #[test]
    fn endpoint_mismatch_is_distinct() {
        let cat = corpus::p1();
        let sigma = corpus::sigma_generated(&cat, &["d"]);
        let g = build_graph(&cat, &sigma).unwrap();
        let u = cat.morphism("u").unwrap();
        let n = cat.morphism("n").unwrap();
        let x = cat.object("X").unwrap();
        let w1 = g.word(x, vec![Letter::Fwd(u)]).unwrap();
        let w2 = g.word(x, vec![Letter::Fwd(n)]).unwrap();
        let verdict = g
            .decide_equal(&w1, &w2, &EqualityBackend::Search(Budget::default()))
            .unwrap();
        assert_eq!(
            verdict,
            EqVerdict::Distinct(DistinctWitness::EndpointMismatch)
        );
    }

    #[test]
    fn ore_backend_decides_z6_fractions() {
        let cat = corpus::mul_monoid_category(6);
        let sigma = corpus::sigma_generated(&cat, &["2"]);
        let g = build_graph(&cat, &sigma).unwrap();
        let pt = cat.object("pt").unwrap();
        let m = |s: &str| cat.morphism(s).unwrap();
        // 4/2 = 2/1: u·4·1 = u·2·2 for any u.
        let w1 = g
            .word(pt, vec![Letter::Fwd(m("4")), Letter::Back(m("2"))])
            .unwrap();
        let w2 = g.word(pt, vec![Letter::Fwd(m("2"))]).unwrap();
        let verdict = g
            .decide_equal(&w1, &w2, &EqualityBackend::CommutativeOneObject)
            .unwrap();
        let EqVerdict::Equal { path: Some(path) } = verdict else {
            panic!("expected equal with path");
        };
        assert_eq!(g.replay(&w1, &path).unwrap(), w2);
        // 1/2 differs from 1/1.
        let w3 = g
            .word(pt, vec![Letter::Fwd(m("1")), Letter::Back(m("2"))])
            .unwrap();
        let w4 = g.empty_word(pt);
        let verdict = g
            .decide_equal(&w3, &w4, &EqualityBackend::CommutativeOneObject)
            .unwrap();
        assert!(verdict.is_distinct());
        // The search never contradicts: it reports unknown or nothing.
        let via_search = g
            .decide_equal(
                &w3,
                &w4,
                &EqualityBackend::Search(Budget {
                    max_word_len: 6,
                    max_states: 3_000,
                }),
            )
            .unwrap();
        assert!(via_search.is_unknown());
    }

    #[test]
    fn search_finds_the_fold_chain() {
        let cat = corpus::p1();
        let sigma = corpus::sigma_generated(&cat, &["u", "d"]);
        let g = build_graph(&cat, &sigma).unwrap();
        let m = |s: &str| cat.morphism(s).unwrap();
        let y = cat.object("Y").unwrap();
        let w1 = g
            .word(y, vec![Letter::Back(m("d")), Letter::Back(m("u"))])
            .unwrap();
        let w2 = g.word(y, vec![Letter::Back(m("n"))]).unwrap();
        let budget = Budget {
            max_word_len: w1.len() + 4,
            max_states: 10_000,
        };
        let SearchOutcome::Found(path) = g.find_path(&w1, &w2, &budget) else {
            panic!("fold chain not found");
        };
        assert_eq!(g.replay(&w1, &path).unwrap(), w2);
        // The chain is the four-step insert/split/cancel/cancel proof.
        assert_eq!(path.len(), 4);
        assert!(matches!(path[0], Move::InsertFwdBack { .. }));
        assert!(matches!(path[1], Move::SplitFwd { .. }));
        assert!(matches!(path[2], Move::CancelBackFwd { .. }));
        assert!(matches!(path[3], Move::CancelBackFwd { .. }));
    }

    #[test]
    fn search_exhausts_disconnected_instances() {
        // In the crossed square the loop is not equal to the identity;
        // the search exhausts the bounded space without meeting.
        let (cat, sigma) = corpus::crossed_square();
        let g = build_graph(&cat, &sigma).unwrap();
        let m = |s: &str| cat.morphism(s).unwrap();
        let a = cat.object("a").unwrap();
        let loop_word = g
            .word(
                a,
                vec![
                    Letter::Fwd(m("a_c")),
                    Letter::Back(m("b_c")),
                    Letter::Fwd(m("b_e")),
                    Letter::Back(m("a_e")),
                ],
            )
            .unwrap();
        let id = g.empty_word(a);
        let budget = Budget {
            max_word_len: 8,
            max_states: 50_000,
        };
        match g.find_path(&loop_word, &id, &budget) {
            SearchOutcome::Exhausted { .. } => {}
            other => panic!("expected exhaustion, got {other:?}"),
        }
    }

    #[test]
    fn discharge_accepts_p1_and_rejects_crossed_square() {
        let cat = corpus::p1();
        let sigma = corpus::sigma_generated(&cat, &["d"]);
        let g = build_graph(&cat, &sigma).unwrap();
        let m = |s: &str| cat.morphism(s).unwrap();
        let x = cat.object("X").unwrap();
        let w1 = g
            .reduce(&g.word(x, vec![Letter::Fwd(m("n")), Letter::Back(m("d"))]).unwrap())
            .word;
        let w2 = g.reduce(&g.word(x, vec![Letter::Fwd(m("u"))]).unwrap()).word;
        let bucket = DischargeBucket {
            label: "hom(X,Z)".into(),
            members: vec![w1, w2],
        };
        connectivity_discharge(&g, &[bucket], &Budget::default()).unwrap();

        let (cat, sigma) = corpus::crossed_square();
        let g = build_graph(&cat, &sigma).unwrap();
        let m = |s: &str| cat.morphism(s).unwrap();
        let a = cat.object("a").unwrap();
        let loop_word = g
            .word(
                a,
                vec![
                    Letter::Fwd(m("a_c")),
                    Letter::Back(m("b_c")),
                    Letter::Fwd(m("b_e")),
                    Letter::Back(m("a_e")),
                ],
            )
            .unwrap();
        let bucket = DischargeBucket {
            label: "hom(a,a)".into(),
            members: vec![g.empty_word(a), loop_word],
        };
        let budget = Budget {
            max_word_len: 8,
            max_states: 50_000,
        };
        assert!(connectivity_discharge(&g, &[bucket], &budget).is_err());
    }
}

//! Elementary moves on zigzag words and the length-decreasing reducer.
//!
//! The congruence on words is generated by three moves and their
//! inverses: merging two adjacent forward letters into their composite,
//! cancelling an adjacent backward/forward pair over the same sigma
//! morphism, and cancelling the forward/backward pair. Everything else —
//! folding two adjacent backward letters into the backward letter of the
//! composite, dropping identity letters — is derived and is always
//! recorded as its expansion into elementary moves, so every recorded
//! path replays move by move.

use super::{Letter, LocGraph, ZigzagError, ZigzagWord};
use crate::fincat::MorId;

/// One elementary move at a letter position.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Move {
    /// Replace `Fwd(a), Fwd(b)` at `at` by their composite.
    MergeFwd { at: usize },
    /// Replace `Fwd(second∘first)` at `at` by `Fwd(first), Fwd(second)`.
    SplitFwd {
        at: usize,
        first: MorId,
        second: MorId,
    },
    /// Delete `Fwd(d), Back(d)` at `at`.
    CancelFwdBack { at: usize },
    /// Insert `Fwd(d), Back(d)` at `at`; the point there must be `dom(d)`.
    InsertFwdBack { at: usize, d: MorId },
    /// Delete `Back(d), Fwd(d)` at `at`.
    CancelBackFwd { at: usize },
    /// Insert `Back(d), Fwd(d)` at `at`; the point there must be `cod(d)`.
    InsertBackFwd { at: usize, d: MorId },
}

pub type MovePath = Vec<Move>;

/// A reduced word together with the elementary-move chain that produced
/// it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    pub word: ZigzagWord,
    pub path: MovePath,
}

impl LocGraph {
    /// Applies one move, checking applicability.
    pub fn apply_move(&self, w: &ZigzagWord, mv: &Move) -> Result<ZigzagWord, ZigzagError> {
        let cat = self.category();
        let letters = &w.letters;
        let fail = || ZigzagError::MoveNotApplicable(format!("{mv:?}"));
        let mut out = letters.clone();
        match *mv {
            Move::MergeFwd { at } => {
                let (Some(&Letter::Fwd(a)), Some(&Letter::Fwd(b))) =
                    (letters.get(at), letters.get(at + 1))
                else {
                    return Err(fail());
                };
                let c = cat.compose(a, b).ok_or_else(fail)?;
                out.splice(at..at + 2, [Letter::Fwd(c)]);
            }
            Move::SplitFwd { at, first, second } => {
                let Some(&Letter::Fwd(c)) = letters.get(at) else {
                    return Err(fail());
                };
                if cat.compose(first, second) != Some(c) {
                    return Err(fail());
                }
                out.splice(at..at + 1, [Letter::Fwd(first), Letter::Fwd(second)]);
            }
            Move::CancelFwdBack { at } => {
                let (Some(&Letter::Fwd(a)), Some(&Letter::Back(b))) =
                    (letters.get(at), letters.get(at + 1))
                else {
                    return Err(fail());
                };
                if a != b {
                    return Err(fail());
                }
                out.splice(at..at + 2, []);
            }
            Move::InsertFwdBack { at, d } => {
                if at > letters.len()
                    || !self.sigma().contains_mor(d)
                    || self.point_at(w, at) != cat.dom(d)
                {
                    return Err(fail());
                }
                out.splice(at..at, [Letter::Fwd(d), Letter::Back(d)]);
            }
            Move::CancelBackFwd { at } => {
                let (Some(&Letter::Back(a)), Some(&Letter::Fwd(b))) =
                    (letters.get(at), letters.get(at + 1))
                else {
                    return Err(fail());
                };
                if a != b {
                    return Err(fail());
                }
                out.splice(at..at + 2, []);
            }
            Move::InsertBackFwd { at, d } => {
                if at > letters.len()
                    || !self.sigma().contains_mor(d)
                    || self.point_at(w, at) != cat.cod(d)
                {
                    return Err(fail());
                }
                out.splice(at..at, [Letter::Back(d), Letter::Fwd(d)]);
            }
        }
        Ok(self.word_unchecked(w.start, out))
    }

    /// Replays a chain of moves.
    pub fn replay(&self, w: &ZigzagWord, path: &[Move]) -> Result<ZigzagWord, ZigzagError> {
        let mut current = w.clone();
        for mv in path {
            current = self.apply_move(&current, mv)?;
        }
        Ok(current)
    }

    /// The inverse of a move, relative to the word it was applied to.
    pub fn invert_move(&self, before: &ZigzagWord, mv: &Move) -> Result<Move, ZigzagError> {
        let letters = &before.letters;
        let fail = || ZigzagError::MoveNotApplicable(format!("{mv:?}"));
        Ok(match *mv {
            Move::MergeFwd { at } => {
                let (Some(&Letter::Fwd(a)), Some(&Letter::Fwd(b))) =
                    (letters.get(at), letters.get(at + 1))
                else {
                    return Err(fail());
                };
                Move::SplitFwd {
                    at,
                    first: a,
                    second: b,
                }
            }
            Move::SplitFwd { at, .. } => Move::MergeFwd { at },
            Move::CancelFwdBack { at } => {
                let Some(&Letter::Fwd(d)) = letters.get(at) else {
                    return Err(fail());
                };
                Move::InsertFwdBack { at, d }
            }
            Move::InsertFwdBack { at, .. } => Move::CancelFwdBack { at },
            Move::CancelBackFwd { at } => {
                let Some(&Letter::Back(d)) = letters.get(at) else {
                    return Err(fail());
                };
                Move::InsertBackFwd { at, d }
            }
            Move::InsertBackFwd { at, .. } => Move::CancelBackFwd { at },
        })
    }

    /// Inverts a whole chain: the result replays from the end word of
    /// `path` back to `start`.
    pub fn invert_path(
        &self,
        start: &ZigzagWord,
        path: &[Move],
    ) -> Result<MovePath, ZigzagError> {
        let mut current = start.clone();
        let mut inverted = Vec::with_capacity(path.len());
        for mv in path {
            inverted.push(self.invert_move(&current, mv)?);
            current = self.apply_move(&current, mv)?;
        }
        inverted.reverse();
        Ok(inverted)
    }

    /// Applies length-decreasing moves until none applies: cancellations,
    /// merges, the derived fold of two adjacent backward letters, and the
    /// derived deletion of identity letters. The recorded path consists
    /// of elementary moves only; derived steps are expanded.
    pub fn reduce(&self, w: &ZigzagWord) -> Reduction {
        let cat = self.category();
        let mut word = w.clone();
        let mut path = Vec::new();
        'outer: loop {
            let letters = &word.letters;
            for at in 0..letters.len() {
                let here = letters[at];
                let next = letters.get(at + 1).copied();
                // Rule: cancel Back(d), Fwd(d).
                if let (Letter::Back(a), Some(Letter::Fwd(b))) = (here, next) {
                    if a == b {
                        let mv = Move::CancelBackFwd { at };
                        word = self.apply_move(&word, &mv).expect("redex checked");
                        path.push(mv);
                        continue 'outer;
                    }
                }
                // Rule: cancel Fwd(d), Back(d).
                if let (Letter::Fwd(a), Some(Letter::Back(b))) = (here, next) {
                    if a == b {
                        let mv = Move::CancelFwdBack { at };
                        word = self.apply_move(&word, &mv).expect("redex checked");
                        path.push(mv);
                        continue 'outer;
                    }
                }
                // Rule: merge Fwd(a), Fwd(b).
                if let (Letter::Fwd(_), Some(Letter::Fwd(_))) = (here, next) {
                    let mv = Move::MergeFwd { at };
                    word = self.apply_move(&word, &mv).expect("letters are composable");
                    path.push(mv);
                    continue 'outer;
                }
                // Derived fold: Back(p), Back(q) -> Back(p∘q) when the
                // composite is in sigma. Expanded into four elementary
                // moves: insert the composite pair after the two letters,
                // split it, and cancel twice.
                if let (Letter::Back(p), Some(Letter::Back(q))) = (here, next) {
                    if let Some(c) = cat.compose(q, p) {
                        if self.sigma().contains_mor(c) {
                            let chain = [
                                Move::InsertFwdBack { at: at + 2, d: c },
                                Move::SplitFwd {
                                    at: at + 2,
                                    first: q,
                                    second: p,
                                },
                                Move::CancelBackFwd { at: at + 1 },
                                Move::CancelBackFwd { at },
                            ];
                            for mv in chain {
                                word = self.apply_move(&word, &mv).expect("fold chain applies");
                                path.push(mv);
                            }
                            continue 'outer;
                        }
                    }
                }
                // Derived: drop an isolated identity forward letter. The
                // expansion inserts the identity pair, so it is only an
                // equivalence when that identity is in sigma (always the
                // case for the widened sigma used by the quotients).
                if let Letter::Fwd(a) = here {
                    if cat.is_identity(a) && self.sigma().contains_mor(a) {
                        let chain = [
                            Move::InsertFwdBack { at: at + 1, d: a },
                            Move::MergeFwd { at },
                            Move::CancelFwdBack { at },
                        ];
                        for mv in chain {
                            word = self.apply_move(&word, &mv).expect("id-drop chain applies");
                            path.push(mv);
                        }
                        continue 'outer;
                    }
                }
                // Derived: drop an identity backward letter.
                if let Letter::Back(a) = here {
                    if cat.is_identity(a) {
                        let chain = [
                            Move::InsertFwdBack { at, d: a },
                            Move::InsertFwdBack { at: at + 3, d: a },
                            Move::SplitFwd {
                                at: at + 3,
                                first: a,
                                second: a,
                            },
                            Move::CancelBackFwd { at: at + 2 },
                            Move::CancelBackFwd { at: at + 1 },
                            Move::CancelFwdBack { at },
                        ];
                        for mv in chain {
                            word = self.apply_move(&word, &mv).expect("id-drop chain applies");
                            path.push(mv);
                        }
                        continue 'outer;
                    }
                }
            }
            break;
        }
        Reduction { word, path }
    }

    /// Whether no reduction step applies.
    pub fn is_reduced(&self, w: &ZigzagWord) -> bool {
        self.reduce(w).path.is_empty()
    }

    /// All words one elementary move away, with the move that produces
    /// them. Words longer than the budget are pruned. Derived moves are
    /// not neighbors; the congruence is generated by the elementary ones.
    pub fn elementary_neighbors(
        &self,
        w: &ZigzagWord,
        budget: &super::Budget,
    ) -> Vec<(Move, ZigzagWord)> {
        let cat = self.category();
        let mut out = Vec::new();
        let mut push = |mv: Move, word: ZigzagWord| out.push((mv, word));
        let letters = &w.letters;
        for at in 0..letters.len() {
            let here = letters[at];
            let next = letters.get(at + 1).copied();
            match (here, next) {
                (Letter::Fwd(_), Some(Letter::Fwd(_))) => {
                    let mv = Move::MergeFwd { at };
                    push(mv, self.apply_move(w, &mv).expect("composable"));
                }
                (Letter::Fwd(a), Some(Letter::Back(b))) if a == b => {
                    let mv = Move::CancelFwdBack { at };
                    push(mv, self.apply_move(w, &mv).expect("redex"));
                }
                (Letter::Back(a), Some(Letter::Fwd(b))) if a == b => {
                    let mv = Move::CancelBackFwd { at };
                    push(mv, self.apply_move(w, &mv).expect("redex"));
                }
                _ => {}
            }
            // Splits of one forward letter into any factorization.
            if let Letter::Fwd(c) = here {
                if w.len() < budget.max_word_len {
                    for &(f, g) in self.factorizations_of(c) {
                        let mv = Move::SplitFwd {
                            at,
                            first: f,
                            second: g,
                        };
                        push(mv, self.apply_move(w, &mv).expect("factorization"));
                    }
                }
            }
        }
        // Insertions at every point.
        if w.len() + 2 <= budget.max_word_len {
            for at in 0..=letters.len() {
                let point = self.point_at(w, at);
                for &d in self.sigma().morphisms() {
                    if cat.dom(d) == point {
                        let mv = Move::InsertFwdBack { at, d };
                        push(mv, self.apply_move(w, &mv).expect("point matches"));
                    }
                    if cat.cod(d) == point {
                        let mv = Move::InsertBackFwd { at, d };
                        push(mv, self.apply_move(w, &mv).expect("point matches"));
                    }
                }
            }
        }
        out
    }
}

//! The localization graph and zigzag words.
//!
//! Given a category `C` and a subcategory `Σ`, the graph has one vertex
//! per object, one forward line per morphism of `C` and one backward
//! line `l_d` per morphism `d` of `Σ`, running from `cod(d)` to
//! `dom(d)`. A zigzag word is a composable sequence of such lines; the
//! empty word at an object stands for the identity fraction there.

use std::collections::BTreeMap;
use thiserror::Error;

use crate::fincat::{FinCategory, MorId, ObjId, Subcategory};

mod decide;
mod moves;

pub(crate) use decide::{connectivity_discharge, DischargeBucket};
pub use decide::{
    BudgetReport, DistinctWitness, EqVerdict, EqualityBackend, OreClasses, SearchOutcome,
};
pub use moves::{Move, MovePath, Reduction};

/// Search and enumeration limits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Longest word considered, in letters.
    pub max_word_len: usize,
    /// Most states visited by a search or enumeration.
    pub max_states: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_word_len: 12,
            max_states: 200_000,
        }
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ZigzagError {
    #[error("backward letter `{0}` is not in sigma")]
    BackLetterNotInSigma(String),
    #[error("letter {index} starts at `{found}` but the word is at `{expected}`")]
    BrokenChain {
        index: usize,
        expected: String,
        found: String,
    },
    #[error("words do not compose: first ends at `{0}`, second starts at `{1}`")]
    EndpointMismatch(String, String),
    #[error("move {0} is not applicable")]
    MoveNotApplicable(String),
    #[error("backend inapplicable: {0}")]
    BackendInapplicable(String),
    #[error("unknown object #{0}")]
    UnknownObject(usize),
}

/// One directed line of the localization graph: a morphism taken
/// forwards, or a sigma morphism taken backwards.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    Fwd(MorId),
    Back(MorId),
}

/// A composable sequence of letters with a base point. The base point
/// carries the empty word, which represents the identity fraction.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ZigzagWord {
    start: ObjId,
    letters: Vec<Letter>,
}

impl ZigzagWord {
    pub fn start(&self) -> ObjId {
        self.start
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }
}

/// The localization graph of `(C, Σ)`. All word operations live here;
/// the graph owns its category and sigma and validates words against
/// them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocGraph {
    category: FinCategory,
    sigma: Subcategory,
    /// All factorizations `h = g∘f` indexed by `h`, for the split move.
    factorizations: BTreeMap<MorId, Vec<(MorId, MorId)>>,
}

/// Builds the localization graph, validating sigma.
pub fn build_graph(
    category: &FinCategory,
    sigma: &Subcategory,
) -> Result<LocGraph, ZigzagError> {
    LocGraph::new(category.clone(), sigma.clone())
}

impl LocGraph {
    pub fn new(category: FinCategory, sigma: Subcategory) -> Result<Self, ZigzagError> {
        sigma
            .validate(&category)
            .map_err(|e| ZigzagError::BackendInapplicable(format!("invalid sigma: {e}")))?;
        let mut factorizations: BTreeMap<MorId, Vec<(MorId, MorId)>> = BTreeMap::new();
        for f in category.morphism_ids() {
            for g in category.morphism_ids() {
                if let Some(h) = category.compose(f, g) {
                    factorizations.entry(h).or_default().push((f, g));
                }
            }
        }
        Ok(LocGraph {
            category,
            sigma,
            factorizations,
        })
    }

    pub fn category(&self) -> &FinCategory {
        &self.category
    }

    pub fn sigma(&self) -> &Subcategory {
        &self.sigma
    }

    /// One forward line per morphism of the category.
    pub fn forward_lines(&self) -> usize {
        self.category.morphism_count()
    }

    /// One backward line per morphism of sigma.
    pub fn backward_lines(&self) -> usize {
        self.sigma.morphisms().len()
    }

    /// Endpoints of a letter: forward lines follow the morphism,
    /// backward lines reverse it.
    pub fn letter_endpoints(&self, letter: Letter) -> (ObjId, ObjId) {
        match letter {
            Letter::Fwd(m) => (self.category.dom(m), self.category.cod(m)),
            Letter::Back(d) => (self.category.cod(d), self.category.dom(d)),
        }
    }

    pub fn empty_word(&self, at: ObjId) -> ZigzagWord {
        ZigzagWord {
            start: at,
            letters: Vec::new(),
        }
    }

    /// Validates the endpoint chain and sigma membership of backward
    /// letters.
    pub fn word(&self, start: ObjId, letters: Vec<Letter>) -> Result<ZigzagWord, ZigzagError> {
        if start.0 >= self.category.object_count() {
            return Err(ZigzagError::UnknownObject(start.0));
        }
        let mut at = start;
        for (index, &letter) in letters.iter().enumerate() {
            if let Letter::Back(d) = letter {
                if !self.sigma.contains_mor(d) {
                    return Err(ZigzagError::BackLetterNotInSigma(
                        self.category.morphism_name(d).to_string(),
                    ));
                }
            }
            let (dom, cod) = self.letter_endpoints(letter);
            if dom != at {
                return Err(ZigzagError::BrokenChain {
                    index,
                    expected: self.category.object_name(at).to_string(),
                    found: self.category.object_name(dom).to_string(),
                });
            }
            at = cod;
        }
        Ok(ZigzagWord { start, letters })
    }

    pub(crate) fn word_unchecked(&self, start: ObjId, letters: Vec<Letter>) -> ZigzagWord {
        debug_assert!(self.word(start, letters.clone()).is_ok());
        ZigzagWord { start, letters }
    }

    pub fn word_cod(&self, w: &ZigzagWord) -> ObjId {
        w.letters
            .last()
            .map(|&l| self.letter_endpoints(l).1)
            .unwrap_or(w.start)
    }

    /// The object reached after `count` letters.
    pub fn point_at(&self, w: &ZigzagWord, count: usize) -> ObjId {
        if count == 0 {
            w.start
        } else {
            self.letter_endpoints(w.letters[count - 1]).1
        }
    }

    /// Concatenation; the endpoints must match.
    pub fn compose_words(
        &self,
        w1: &ZigzagWord,
        w2: &ZigzagWord,
    ) -> Result<ZigzagWord, ZigzagError> {
        let mid = self.word_cod(w1);
        if mid != w2.start {
            return Err(ZigzagError::EndpointMismatch(
                self.category.object_name(mid).to_string(),
                self.category.object_name(w2.start).to_string(),
            ));
        }
        let mut letters = w1.letters.clone();
        letters.extend(w2.letters.iter().copied());
        Ok(ZigzagWord {
            start: w1.start,
            letters,
        })
    }

    /// Arrow notation, e.g. `X -n-> Y -l_d-> Z`.
    pub fn display_word(&self, w: &ZigzagWord) -> String {
        let mut out = self.category.object_name(w.start).to_string();
        for &letter in &w.letters {
            let (_, cod) = self.letter_endpoints(letter);
            match letter {
                Letter::Fwd(m) => {
                    out.push_str(&format!(" -{}-> ", self.category.morphism_name(m)))
                }
                Letter::Back(d) => {
                    out.push_str(&format!(" -l_{}-> ", self.category.morphism_name(d)))
                }
            }
            out.push_str(self.category.object_name(cod));
        }
        out
    }

    /// Compact token form, e.g. `n*~d`; the empty word shows its base
    /// point as `id_X`.
    pub fn word_token(&self, w: &ZigzagWord) -> String {
        if w.letters.is_empty() {
            return format!("id_{}", self.category.object_name(w.start));
        }
        w.letters
            .iter()
            .map(|&l| match l {
                Letter::Fwd(m) => self.category.morphism_name(m).to_string(),
                Letter::Back(d) => format!("~{}", self.category.morphism_name(d)),
            })
            .collect::<Vec<_>>()
            .join("*")
    }

    pub(crate) fn factorizations_of(&self, h: MorId) -> &[(MorId, MorId)] {
        self.factorizations
            .get(&h)
            .map(|v| v.as_slice())
            .unwrap_or(&[])
    }
}

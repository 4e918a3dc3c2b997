//! Localization of a finite semiring at a multiplicative subset, and the
//! affine blowup inside it.
//!
//! The localization is realized as the quotient of pairs `(x, s)` by
//! `(x, s) ~ (y, t)` iff `u·x·t = u·y·s` for some `u` in the denominator
//! monoid; on a finite carrier the relation is decided by enumeration.
//! The quotient is rebuilt as a [`FinSemiring`], which re-validates every
//! axiom.

use std::collections::{BTreeMap, BTreeSet};

use super::{ElemId, FinSemiring, SemiringError, SrCenter};

/// The multiplicative closure of a set of generators, always containing
/// `one`.
pub fn denominator_monoid(sr: &FinSemiring, gens: &BTreeSet<ElemId>) -> BTreeSet<ElemId> {
    let mut set: BTreeSet<ElemId> = gens.clone();
    set.insert(sr.one());
    loop {
        let mut added = Vec::new();
        for &a in &set {
            for &b in &set {
                let c = sr.mul(a, b);
                if !set.contains(&c) {
                    added.push(c);
                }
            }
        }
        if added.is_empty() {
            break;
        }
        set.extend(added);
    }
    set
}

/// A finite localization: fraction classes with induced operations,
/// re-validated as a semiring of its own. Class names are `x/s` for the
/// least representative pair.
#[derive(Debug, Clone)]
pub struct LocalizedSemiring {
    base: FinSemiring,
    denominators: BTreeSet<ElemId>,
    semiring: FinSemiring,
    class_of: BTreeMap<(ElemId, ElemId), ElemId>,
}

impl LocalizedSemiring {
    pub fn base(&self) -> &FinSemiring {
        &self.base
    }

    pub fn denominators(&self) -> &BTreeSet<ElemId> {
        &self.denominators
    }

    /// The quotient as a semiring.
    pub fn semiring(&self) -> &FinSemiring {
        &self.semiring
    }

    /// The class of the fraction `x/s`.
    pub fn class_of(&self, x: ElemId, s: ElemId) -> ElemId {
        self.class_of[&(x, s)]
    }

    /// The canonical map `x ↦ x/1`.
    pub fn image(&self, x: ElemId) -> ElemId {
        self.class_of(x, self.base.one())
    }

    pub fn len(&self) -> usize {
        self.semiring.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Whether the class `c` is invertible in the quotient.
    pub fn is_invertible(&self, c: ElemId) -> bool {
        self.semiring
            .element_ids()
            .any(|d| self.semiring.mul(c, d) == self.semiring.one())
    }
}

/// Localizes at a multiplicative subset containing `one`.
pub fn localize_semiring(
    sr: &FinSemiring,
    s: &BTreeSet<ElemId>,
) -> Result<LocalizedSemiring, SemiringError> {
    if !s.contains(&sr.one()) {
        return Err(SemiringError::NotMultiplicative(
            "the subset does not contain one".into(),
        ));
    }
    for &a in s {
        for &b in s {
            if !s.contains(&sr.mul(a, b)) {
                return Err(SemiringError::NotMultiplicative(format!(
                    "{} · {} escapes the subset",
                    sr.name(a),
                    sr.name(b)
                )));
            }
        }
    }

    let pairs: Vec<(ElemId, ElemId)> = sr
        .element_ids()
        .flat_map(|x| s.iter().map(move |&d| (x, d)))
        .collect();
    let equivalent = |&(x, sx): &(ElemId, ElemId), &(y, sy): &(ElemId, ElemId)| {
        s.iter()
            .any(|&u| sr.mul(sr.mul(u, x), sy) == sr.mul(sr.mul(u, y), sx))
    };

    // Group pairs into classes; the relation is transitive, so one linear
    // pass against chosen representatives suffices (checked in tests by
    // re-validating the quotient axioms).
    let mut reps: Vec<(ElemId, ElemId)> = Vec::new();
    let mut class_of: BTreeMap<(ElemId, ElemId), ElemId> = BTreeMap::new();
    for p in &pairs {
        let found = reps.iter().position(|r| equivalent(r, p));
        let idx = match found {
            Some(i) => i,
            None => {
                reps.push(*p);
                reps.len() - 1
            }
        };
        class_of.insert(*p, ElemId(idx));
    }

    let names: Vec<String> = reps
        .iter()
        .map(|&(x, d)| format!("{}/{}", sr.name(x), sr.name(d)))
        .collect();
    let n = reps.len();
    let mut add = vec![vec![ElemId(0); n]; n];
    let mut mul = vec![vec![ElemId(0); n]; n];
    for (i, &(x, sx)) in reps.iter().enumerate() {
        for (j, &(y, sy)) in reps.iter().enumerate() {
            // x/sx + y/sy = (x·sy + y·sx) / (sx·sy)
            let num = sr.add(sr.mul(x, sy), sr.mul(y, sx));
            let den = sr.mul(sx, sy);
            add[i][j] = class_of[&(num, den)];
            mul[i][j] = class_of[&(sr.mul(x, y), den)];
        }
    }
    let zero = class_of[&(sr.zero(), sr.one())];
    let one = class_of[&(sr.one(), sr.one())];
    let semiring = FinSemiring::from_tables(names, add, mul, zero, one)?;

    let loc = LocalizedSemiring {
        base: sr.clone(),
        denominators: s.clone(),
        semiring,
        class_of,
    };
    // Every denominator becomes invertible: s/1 · 1/s = 1.
    for &d in s {
        debug_assert!(loc.is_invertible(loc.image(d)));
    }
    Ok(loc)
}

/// How an element entered the blowup carrier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BlowupStep {
    /// Image `x/1` of a base element.
    Image(ElemId),
    /// Generator `x/a` with `x` in the numerator sieve of `a`.
    Generator { x: ElemId, a: ElemId },
    /// Sum of two carrier classes.
    Sum(ElemId, ElemId),
    /// Product of two carrier classes.
    Product(ElemId, ElemId),
}

/// The least sub-semiring of the localization containing the image of
/// the base and all generator fractions.
#[derive(Debug, Clone)]
pub struct BlowupResult {
    localized: LocalizedSemiring,
    carrier: BTreeSet<ElemId>,
    log: Vec<(ElemId, BlowupStep)>,
}

impl BlowupResult {
    pub fn localized(&self) -> &LocalizedSemiring {
        &self.localized
    }

    /// Classes of the localization forming the blowup.
    pub fn carrier(&self) -> &BTreeSet<ElemId> {
        &self.carrier
    }

    /// First derivation recorded for each carrier class.
    pub fn log(&self) -> &[(ElemId, BlowupStep)] {
        &self.log
    }

    pub fn len(&self) -> usize {
        self.carrier.len()
    }

    pub fn is_empty(&self) -> bool {
        self.carrier.is_empty()
    }

    /// Whether blowing up the carrier again adds nothing: the carrier is
    /// closed under both operations.
    pub fn is_closed(&self) -> bool {
        let q = self.localized.semiring();
        self.carrier.iter().all(|&a| {
            self.carrier.iter().all(|&b| {
                self.carrier.contains(&q.add(a, b)) && self.carrier.contains(&q.mul(a, b))
            })
        })
    }
}

/// Computes the affine blowup of the semiring at the center: the least
/// add/mul-closed subset of the simultaneous localization at all `a_i`
/// containing every `x/1` and every `x/a_i` with `x ∈ L_i`.
pub fn blowup(sr: &FinSemiring, center: &SrCenter) -> Result<BlowupResult, SemiringError> {
    let denominators = denominator_monoid(sr, &center.denominators());
    let localized = localize_semiring(sr, &denominators)?;
    let mut carrier: BTreeSet<ElemId> = BTreeSet::new();
    let mut log: Vec<(ElemId, BlowupStep)> = Vec::new();
    let mut record = |carrier: &mut BTreeSet<ElemId>, c: ElemId, step: BlowupStep| {
        if carrier.insert(c) {
            log.push((c, step));
        }
    };
    for x in sr.element_ids() {
        let c = localized.image(x);
        record(&mut carrier, c, BlowupStep::Image(x));
    }
    for pair in center.pairs() {
        for &x in &pair.numerators {
            let c = localized.class_of(x, pair.a);
            record(&mut carrier, c, BlowupStep::Generator { x, a: pair.a });
        }
    }
    // Worklist closure under both operations.
    loop {
        let mut added = Vec::new();
        let q = localized.semiring();
        for &a in &carrier {
            for &b in &carrier {
                let s = q.add(a, b);
                if !carrier.contains(&s) {
                    added.push((s, BlowupStep::Sum(a, b)));
                }
                let p = q.mul(a, b);
                if !carrier.contains(&p) {
                    added.push((p, BlowupStep::Product(a, b)));
                }
            }
        }
        if added.is_empty() {
            break;
        }
        for (c, step) in added {
            record(&mut carrier, c, step);
        }
    }
    let out = BlowupResult {
        localized,
        carrier,
        log,
    };
    debug_assert!(out.is_closed());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::semiring::sr_center;

    /// Independent oracle for the localization of Z/6 at ⟨2⟩: inverting 2
    /// collapses 6 = 2·3 to Z/3, and x/s maps to x·s⁻¹ mod 3.
    fn z3_value(x: usize, s: usize) -> usize {
        let inv = match s % 3 {
            1 => 1,
            2 => 2, // 2·2 = 4 ≡ 1 (mod 3)
            _ => panic!("denominator not invertible mod 3"),
        };
        (x * inv) % 3
    }

    #[test]
    fn z6_at_2_has_three_classes() {
        let sr = corpus::zmod_semiring(6);
        let two = sr.element("2").unwrap();
        let s = denominator_monoid(&sr, &BTreeSet::from([two]));
        assert_eq!(
            s.iter().map(|&d| sr.name(d)).collect::<Vec<_>>(),
            ["1", "2", "4"]
        );
        let loc = localize_semiring(&sr, &s).unwrap();
        assert_eq!(loc.len(), 3);
        // The classes agree with the Z/3 oracle on every pair.
        for x in sr.element_ids() {
            for &d in &s {
                for y in sr.element_ids() {
                    for &t in &s {
                        let same_class = loc.class_of(x, d) == loc.class_of(y, t);
                        let same_value = z3_value(x.0, d.0) == z3_value(y.0, t.0);
                        assert_eq!(same_class, same_value, "{x:?}/{d:?} vs {y:?}/{t:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn localizing_at_one_is_identity() {
        let sr = corpus::zmod_semiring(4);
        let s = BTreeSet::from([sr.one()]);
        let loc = localize_semiring(&sr, &s).unwrap();
        assert_eq!(loc.len(), 4);
        for x in sr.element_ids() {
            for y in sr.element_ids() {
                if x != y {
                    assert_ne!(loc.image(x), loc.image(y));
                }
            }
        }
    }

    #[test]
    fn z4_at_2_collapses() {
        // 2·2 = 0 in Z/4, so 0 becomes invertible and everything is
        // identified.
        let sr = corpus::zmod_semiring(4);
        let two = sr.element("2").unwrap();
        let s = denominator_monoid(&sr, &BTreeSet::from([two]));
        assert!(s.contains(&sr.zero()));
        let loc = localize_semiring(&sr, &s).unwrap();
        assert_eq!(loc.len(), 1);
    }

    #[test]
    fn non_multiplicative_subset_is_rejected() {
        let sr = corpus::zmod_semiring(6);
        let three = sr.element("3").unwrap();
        let err = localize_semiring(&sr, &BTreeSet::from([three])).unwrap_err();
        assert!(matches!(err, SemiringError::NotMultiplicative(_)));
    }

    #[test]
    fn blowup_z6_fills_the_localization() {
        let sr = corpus::zmod_semiring(6);
        let two = sr.element("2").unwrap();
        let four = sr.element("4").unwrap();
        let center = sr_center(&sr, vec![(two, BTreeSet::from([sr.zero(), two, four]))]).unwrap();
        let result = blowup(&sr, &center).unwrap();
        assert_eq!(result.len(), 3);
        assert_eq!(result.len(), result.localized().len());
        assert!(result.is_closed());
    }

    #[test]
    fn blowup_z4_is_trivial() {
        let sr = corpus::zmod_semiring(4);
        let two = sr.element("2").unwrap();
        let center = sr_center(&sr, vec![(two, BTreeSet::from([sr.zero(), two]))]).unwrap();
        let result = blowup(&sr, &center).unwrap();
        assert_eq!(result.len(), 1);
    }

    #[test]
    fn blowup_at_one_is_the_image() {
        let sr = corpus::zmod_semiring(6);
        let all: BTreeSet<_> = sr.element_ids().collect();
        let center = sr_center(&sr, vec![(sr.one(), all)]).unwrap();
        let result = blowup(&sr, &center).unwrap();
        assert_eq!(result.len(), 6);
    }
}

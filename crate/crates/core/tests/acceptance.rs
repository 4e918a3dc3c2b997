//! Acceptance suite: one test per criterion, each printing a single
//! pass/fail line (visible with `cargo test -- --nocapture`). Every
//! tolerance here is exact; the instances are small enough that all
//! checks are exhaustive.

use std::collections::{BTreeMap, BTreeSet};

use catfrac::corpus::{self, Instance};
use catfrac::dilate::{
    check_bimorphism, check_exc, dilate, embed_into_localization, fraction_of,
    iterated_dilatation_check, localize, representability_report, theta, universal_report,
    ClassId, DilatationResult, DilateOptions, FinFunctor, ReprTarget,
};
use catfrac::fincat::{FinCategory, MorId, SigmaCenter};
use catfrac::semiring::{ma_compare, sr_center, ElemId, FinSemiring};
use catfrac::verdict::Verdict;
use catfrac::zigzag::{
    build_graph, Budget, EqVerdict, EqualityBackend, Letter, Move, SearchOutcome, ZigzagWord,
};

fn conclude(number: u32, name: &str, outcome: Result<String, String>) {
    match outcome {
        Ok(detail) => println!("acceptance {number:02} {name}: PASS ({detail})"),
        Err(detail) => {
            println!("acceptance {number:02} {name}: FAIL ({detail})");
            panic!("criterion {number} failed: {detail}");
        }
    }
}

/// The shared corpus: every thin and monoid instance.
fn full_corpus() -> Vec<Instance> {
    let mut all = corpus::poset_instances();
    all.extend(corpus::monoid_instances());
    all
}

/// Named non-maximal centers exercised on top of the maximal ones.
fn special_centers() -> Vec<(String, FinCategory, SigmaCenter)> {
    let mut out = Vec::new();
    {
        let cat = corpus::p1();
        let d = cat.morphism("d").unwrap();
        let sigma = corpus::sigma_generated(&cat, &["d"]);
        let center = cat
            .validate_center(&sigma, &BTreeMap::from([(d, BTreeSet::new())]))
            .unwrap();
        out.push(("p1/principal-d".to_string(), cat, center));
    }
    {
        let cat = corpus::p2();
        let d = cat.morphism("d").unwrap();
        let n = cat.morphism("n").unwrap();
        let sigma = corpus::sigma_generated(&cat, &["d"]);
        let center = cat
            .validate_center(&sigma, &BTreeMap::from([(d, BTreeSet::from([n]))]))
            .unwrap();
        out.push(("p2/n-over-d".to_string(), cat, center));
    }
    {
        let cat = corpus::mul_monoid_category(6);
        let two = cat.morphism("2").unwrap();
        let gens: BTreeSet<MorId> = ["0", "2", "4"]
            .iter()
            .map(|s| cat.morphism(s).unwrap())
            .collect();
        let sigma = corpus::sigma_generated(&cat, &["2"]);
        let mut entries: BTreeMap<MorId, BTreeSet<MorId>> = BTreeMap::new();
        for &m in sigma.morphisms() {
            entries.insert(m, if m == two { gens.clone() } else { BTreeSet::new() });
        }
        let center = cat.validate_center(&sigma, &entries).unwrap();
        out.push(("z6/evens-over-2".to_string(), cat, center));
    }
    {
        let cat = corpus::z2_group();
        let g = cat.morphism("g").unwrap();
        let sigma = corpus::sigma_generated(&cat, &["g"]);
        let center = cat
            .validate_center(&sigma, &BTreeMap::from([(g, BTreeSet::new())]))
            .unwrap();
        out.push(("z2/principal-g".to_string(), cat, center));
    }
    out
}

/// Every dilatation the proposition checks run over: maximal centers on
/// the whole corpus plus the special centers.
fn corpus_dilatations() -> Vec<(String, FinCategory, SigmaCenter, DilatationResult)> {
    let mut out = Vec::new();
    for inst in full_corpus() {
        let center = SigmaCenter::maximal(&inst.category, &inst.sigma);
        let result = dilate(&inst.category, &center, &DilateOptions::default())
            .unwrap_or_else(|e| panic!("dilate failed on {}: {e}", inst.name));
        out.push((format!("{}/max", inst.name), inst.category, center, result));
    }
    for (name, cat, center) in special_centers() {
        let result = dilate(&cat, &center, &DilateOptions::default())
            .unwrap_or_else(|e| panic!("dilate failed on {name}: {e}"));
        out.push((name, cat, center, result));
    }
    out
}

/// Criterion 1: with maximal sieves, the dilatation and the localization
/// have hom-sets in bijection, and the bijection commutes with the
/// canonical functor. Exact, zero tolerance.
#[test]
fn acceptance_01_localization_recovery() {
    let corpus = full_corpus();
    let run = || -> Result<String, String> {
        if corpus.len() < 20 {
            return Err(format!("corpus too small: {}", corpus.len()));
        }
        let mut homs_checked = 0usize;
        for inst in &corpus {
            let cat = &inst.category;
            let center = SigmaCenter::maximal(cat, &inst.sigma);
            let dil = dilate(cat, &center, &DilateOptions::default())
                .map_err(|e| format!("{}: {e}", inst.name))?;
            let loc = localize(cat, &inst.sigma, &DilateOptions::default())
                .map_err(|e| format!("{}: {e}", inst.name))?;
            if !dil.all_stabilized() || !loc.all_stabilized() {
                return Err(format!("{}: unstabilized hom-set", inst.name));
            }
            // Every localization class has an alternating representative
            // in its own class: the shape constraint costs nothing when
            // the sieves are maximal.
            for id in loc.class_ids() {
                let rep = loc.class(id).nshaped();
                if !loc.is_nfraction(rep) {
                    return Err(format!(
                        "{}: a localization class lacks an alternating representative",
                        inst.name
                    ));
                }
                if loc.class_of_word(rep).map_err(|e| format!("{}: {e}", inst.name))? != id {
                    return Err(format!(
                        "{}: alternating representative leaves its class",
                        inst.name
                    ));
                }
            }
            // Class-level map dil -> loc via shared words; must be a
            // well-defined bijection on every hom-set.
            let mut mapped: BTreeMap<ClassId, ClassId> = BTreeMap::new();
            for id in dil.class_ids() {
                let class = dil.class(id);
                let image = loc
                    .class_of_word(class.canonical())
                    .map_err(|e| format!("{}: {e}", inst.name))?;
                for member in class.members() {
                    let again = loc
                        .class_of_word(member)
                        .map_err(|e| format!("{}: {e}", inst.name))?;
                    if again != image {
                        return Err(format!("{}: map not well-defined", inst.name));
                    }
                }
                mapped.insert(id, image);
            }
            for x in cat.object_ids() {
                for y in cat.object_ids() {
                    let lhs: Vec<ClassId> = (0..dil.hom(x, y).classes.len())
                        .map(|index| ClassId { src: x, tgt: y, index })
                        .collect();
                    let images: BTreeSet<ClassId> =
                        lhs.iter().map(|id| mapped[id]).collect();
                    if images.len() != lhs.len()
                        || images.len() != loc.hom(x, y).classes.len()
                    {
                        return Err(format!(
                            "{}: hom({}, {}) fails the bijection",
                            inst.name,
                            cat.object_name(x),
                            cat.object_name(y)
                        ));
                    }
                    homs_checked += 1;
                }
            }
            // The bijection commutes with the canonical functor.
            for a in cat.morphism_ids() {
                let via_dil = mapped[&dil
                    .theta_class(a)
                    .map_err(|e| format!("{}: {e}", inst.name))?];
                let direct = loc
                    .theta_class(a)
                    .map_err(|e| format!("{}: {e}", inst.name))?;
                if via_dil != direct {
                    return Err(format!(
                        "{}: bijection does not commute with theta at `{}`",
                        inst.name,
                        cat.morphism_name(a)
                    ));
                }
            }
        }
        Ok(format!(
            "{} instances, {homs_checked} hom-sets matched exactly",
            corpus.len()
        ))
    };
    conclude(1, "localization-recovery", run());
}

/// Criterion 2: for every `(d, n ∈ 𝔫(d))` exactly one class solves the
/// fraction triangle. Exact.
#[test]
fn acceptance_02_fraction_existence_uniqueness() {
    let run = || -> Result<String, String> {
        let mut pairs = 0usize;
        for (name, _cat, _center, result) in corpus_dilatations() {
            let center = result.center().clone();
            for &d in center.sigma().morphisms() {
                for &n in center.sieve(d).expect("validated").members() {
                    fraction_of(&result, n, d)
                        .map_err(|e| format!("{name}: ({n:?}, {d:?}): {e}"))?;
                    pairs += 1;
                }
            }
        }
        Ok(format!("{pairs} (numerator, denominator) pairs solved uniquely"))
    };
    conclude(2, "fraction-existence-uniqueness", run());
}

/// Criterion 3: every inverted morphism is monic and epic in the
/// dilatation, by exhaustive cancellation. Exact.
#[test]
fn acceptance_03_bimorphism() {
    let run = || -> Result<String, String> {
        let mut checked = 0usize;
        for (name, _cat, _center, result) in corpus_dilatations() {
            for &d in result.center().sigma().morphisms().clone().iter() {
                match check_bimorphism(&result, d) {
                    Ok(Verdict::Pass) => checked += 1,
                    Ok(v) => return Err(format!("{name}: {v}")),
                    Err(e) => return Err(format!("{name}: {e}")),
                }
            }
        }
        Ok(format!("{checked} inverted morphisms cancel on both sides"))
    };
    conclude(3, "bimorphism", run());
}

/// Criterion 4: the sieve generated by `[d]` equals the sieve generated
/// by the numerator classes, by double inclusion. Exact.
#[test]
fn acceptance_04_generated_sieve_identity() {
    let run = || -> Result<String, String> {
        let mut checked = 0usize;
        for (name, _cat, _center, result) in corpus_dilatations() {
            let promoted = result
                .as_category()
                .map_err(|e| format!("{name}: {e}"))?;
            for &d in result.center().sigma().morphisms().clone().iter() {
                match check_exc(&result, &promoted, d) {
                    Ok(Verdict::Pass) => checked += 1,
                    Ok(v) => return Err(format!("{name}: {v}")),
                    Err(e) => return Err(format!("{name}: {e}")),
                }
            }
        }
        Ok(format!("{checked} generated-sieve identities verified"))
    };
    conclude(4, "generated-sieve-identity", run());
}

/// Criterion 5: for every composable pair of inverted morphisms the
/// search replays the four-step fold derivation within a word budget of
/// the original length plus four.
#[test]
fn acceptance_05_fold_replay() {
    let run = || -> Result<String, String> {
        let mut chains = 0usize;
        for inst in full_corpus() {
            let cat = &inst.category;
            // The fold concerns sigma as used by the quotients: widened.
            let center = SigmaCenter::maximal(cat, &inst.sigma).widened(cat);
            let graph = build_graph(cat, center.sigma())
                .map_err(|e| format!("{}: {e}", inst.name))?;
            for &d in center.sigma().morphisms() {
                for &dp in center.sigma().morphisms() {
                    let Some(composite) = cat.compose(d, dp) else {
                        continue;
                    };
                    debug_assert!(center.sigma().contains_mor(composite));
                    let w1 = graph
                        .word(
                            cat.cod(dp),
                            vec![Letter::Back(dp), Letter::Back(d)],
                        )
                        .expect("backward pair is a valid word");
                    let w2 = graph
                        .word(cat.cod(dp), vec![Letter::Back(composite)])
                        .expect("backward letter is a valid word");
                    let budget = Budget {
                        max_word_len: w1.len() + 4,
                        max_states: 20_000,
                    };
                    let SearchOutcome::Found(path) = graph.find_path(&w1, &w2, &budget)
                    else {
                        return Err(format!(
                            "{}: no chain for l_{} · l_{}",
                            inst.name,
                            cat.morphism_name(dp),
                            cat.morphism_name(d)
                        ));
                    };
                    // The chain opens with the four-step derivation:
                    // insert the composite pair, split it, cancel twice.
                    let shape_ok = matches!(path.first(), Some(Move::InsertFwdBack { .. }))
                        && matches!(path.get(1), Some(Move::SplitFwd { .. }))
                        && matches!(path.get(2), Some(Move::CancelBackFwd { .. }))
                        && matches!(path.get(3), Some(Move::CancelBackFwd { .. }));
                    if !shape_ok {
                        return Err(format!(
                            "{}: chain does not open with the fold derivation",
                            inst.name
                        ));
                    }
                    // Replays exactly, never exceeding the length budget.
                    let mut peak = w1.len();
                    let mut current = w1.clone();
                    for mv in &path {
                        current = graph
                            .apply_move(&current, mv)
                            .map_err(|e| format!("{}: {e}", inst.name))?;
                        peak = peak.max(current.len());
                    }
                    if current != w2 {
                        return Err(format!("{}: chain does not replay", inst.name));
                    }
                    if peak > w1.len() + 4 {
                        return Err(format!(
                            "{}: chain exceeds the length budget ({peak})",
                            inst.name
                        ));
                    }
                    chains += 1;
                }
            }
        }
        Ok(format!("{chains} fold chains replayed within budget"))
    };
    conclude(5, "fold-replay", run());
}

/// Criterion 6: the universal factorization exists, commutes and is
/// forced on generators, for the canonical functor into the dilatation
/// and for the localization functor. Exact.
#[test]
fn acceptance_06_universal_property() {
    let run = || -> Result<String, String> {
        let mut factored = 0usize;
        for (name, cat, center, result) in corpus_dilatations() {
            let promoted = result
                .as_category()
                .map_err(|e| format!("{name}: {e}"))?;
            // F = the canonical functor into the dilatation itself.
            let th = theta(&result, &promoted).map_err(|e| format!("{name}: {e}"))?;
            let report = universal_report(&th, &result, &promoted, &DilateOptions::default())
                .map_err(|e| format!("{name}: {e}"))?;
            if !report.succeeded() {
                return Err(format!(
                    "{name}: theta target failed (sigma_reg {}, commutes {}, unique {})",
                    report.sigma_reg, report.commutes, report.unique
                ));
            }
            if !report.functor.as_ref().unwrap().is_identity_functor() {
                return Err(format!("{name}: factorization of theta is not the identity"));
            }
            factored += 1;
            // F = the localization functor.
            let loc = localize(&cat, center.sigma(), &DilateOptions::default())
                .map_err(|e| format!("{name}: {e}"))?;
            let loc_promoted = loc.as_category().map_err(|e| format!("{name}: {e}"))?;
            let theta_loc =
                theta(&loc, &loc_promoted).map_err(|e| format!("{name}: {e}"))?;
            let report =
                universal_report(&theta_loc, &result, &promoted, &DilateOptions::default())
                    .map_err(|e| format!("{name}: {e}"))?;
            if !report.succeeded() {
                return Err(format!(
                    "{name}: localization target failed (sigma_reg {}, commutes {}, unique {})",
                    report.sigma_reg, report.commutes, report.unique
                ));
            }
            let embedding =
                embed_into_localization(&result, &promoted, &loc, &loc_promoted)
                    .map_err(|e| format!("{name}: {e}"))?;
            if report.functor.as_ref().unwrap() != &embedding {
                return Err(format!(
                    "{name}: factorization differs from the canonical embedding"
                ));
            }
            factored += 1;
        }
        Ok(format!("{factored} factorizations constructed and forced"))
    };
    conclude(6, "universal-property", run());
}

/// Criterion 7: dilating twice agrees with dilating once at the combined
/// center, on at least five two-center thin instances. Exact.
#[test]
fn acceptance_07_iterated_dilatation() {
    let run = || -> Result<String, String> {
        let chain4 = || {
            corpus::thin_from_dag(
                &["a", "b", "c", "e"],
                &[("a", "b"), ("b", "c"), ("c", "e")],
            )
        };
        let chain5 = || {
            corpus::thin_from_dag(
                &["a", "b", "c", "e", "f"],
                &[("a", "b"), ("b", "c"), ("c", "e"), ("e", "f")],
            )
        };
        let diamond = || {
            corpus::thin_from_dag(
                &["a", "b", "c", "e"],
                &[("a", "b"), ("a", "c"), ("b", "e"), ("c", "e")],
            )
        };
        let fence = || {
            corpus::thin_from_dag(
                &["a", "b", "c", "x", "y"],
                &[("a", "x"), ("b", "x"), ("b", "y"), ("c", "y")],
            )
        };
        let cases: Vec<(&str, FinCategory, Vec<&str>, Vec<&str>)> = vec![
            ("chain4 disjoint", chain4(), vec!["a_b"], vec!["c_e"]),
            ("chain4 adjacent", chain4(), vec!["a_b"], vec!["b_c"]),
            ("chain5 spread", chain5(), vec!["b_c"], vec!["e_f"]),
            ("diamond sides", diamond(), vec!["a_b"], vec!["c_e"]),
            ("fence middle", fence(), vec!["b_x"], vec!["b_y"]),
            ("p1 overlap", corpus::p1(), vec!["u", "d"], vec!["d"]),
        ];
        let mut verified = 0usize;
        for (name, cat, sigma_gens, gamma_gens) in cases {
            let sigma = corpus::sigma_generated(&cat, &sigma_gens);
            let gamma = corpus::sigma_generated(&cat, &gamma_gens);
            let center_sigma = SigmaCenter::maximal(&cat, &sigma);
            let center_gamma = SigmaCenter::maximal(&cat, &gamma);
            let report = iterated_dilatation_check(
                &cat,
                &center_sigma,
                &center_gamma,
                &DilateOptions::default(),
            )
            .map_err(|e| format!("{name}: {e}"))?;
            if !report.isomorphic() {
                return Err(format!(
                    "{name}: comparison not an isomorphism ({}, {})",
                    report.bijective, report.functorial
                ));
            }
            verified += 1;
        }
        Ok(format!("{verified} two-center instances isomorphic"))
    };
    conclude(7, "iterated-dilatation", run());
}

/// Criterion 8: the blowup identification on principal centers, plus the
/// backend agreement oracle on small commutative monoids.
#[test]
fn acceptance_08_semiring_identification() {
    let run = || -> Result<String, String> {
        // Principal centers L = a·A on the five listed semirings.
        let semirings: Vec<(&str, FinSemiring, &str)> = vec![
            ("z6", corpus::zmod_semiring(6), "2"),
            ("z4", corpus::zmod_semiring(4), "2"),
            ("z2", corpus::zmod_semiring(2), "1"),
            ("bool", corpus::boolean_semiring(), "1"),
            ("z9", corpus::zmod_semiring(9), "3"),
        ];
        for (name, sr, a) in &semirings {
            let a = sr.element(a).unwrap();
            let principal: BTreeSet<ElemId> =
                sr.element_ids().map(|x| sr.mul(a, x)).collect();
            let center = sr_center(sr, vec![(a, principal)])
                .map_err(|e| format!("{name}: {e}"))?;
            let report = ma_compare(sr, &center, &DilateOptions::default())
                .map_err(|e| format!("{name}: {e}"))?;
            if !report.identification() {
                return Err(format!(
                    "{name}: identification fails (well-defined {}, functorial {}, injective {}, surjective {})",
                    report.well_defined, report.functorial, report.injective, report.surjective
                ));
            }
        }
        // A principal numerator set around a different denominator:
        // L = 2·A with a = 4 in Z/6.
        {
            let sr = corpus::zmod_semiring(6);
            let two = sr.element("2").unwrap();
            let four = sr.element("4").unwrap();
            let l: BTreeSet<ElemId> = sr.element_ids().map(|x| sr.mul(two, x)).collect();
            let center =
                sr_center(&sr, vec![(four, l)]).map_err(|e| format!("z6-offcenter: {e}"))?;
            let report = ma_compare(&sr, &center, &DilateOptions::default())
                .map_err(|e| format!("z6-offcenter: {e}"))?;
            if !report.identification() {
                return Err(format!(
                    "z6-offcenter: identification fails (well-defined {}, functorial {}, injective {}, surjective {})",
                    report.well_defined, report.functorial, report.injective, report.surjective
                ));
            }
        }
        // Oracle pre-check: fraction values agree with the move
        // congruence on every monoid instance of order <= 6.
        let mut words_checked = 0usize;
        for inst in corpus::monoid_instances() {
            let (w, _buckets) = backend_agreement(&inst)
                .map_err(|e| format!("{}: {e}", inst.name))?;
            words_checked += w;
        }
        Ok(format!(
            "6 principal identifications; backend oracle over {words_checked} words, zero disagreements"
        ))
    };
    conclude(8, "semiring-identification", run());
}

/// The Ore/search agreement oracle on one commutative monoid instance:
/// every word of length five or less keeps its fraction value under
/// reduction; every move from every reduced word of length six or less
/// preserves the value; value classes are move-connected; and sampled
/// verdicts of the two backends agree.
fn backend_agreement(inst: &Instance) -> Result<(usize, usize), String> {
    let cat = &inst.category;
    let graph = build_graph(cat, &inst.sigma).map_err(|e| e.to_string())?;
    let ore = catfrac::zigzag::OreClasses::new(&graph).map_err(|e| e.to_string())?;
    let pt = cat.object_ids().next().unwrap();

    let letters: Vec<Letter> = cat
        .morphism_ids()
        .map(Letter::Fwd)
        .chain(inst.sigma.morphisms().iter().map(|&d| Letter::Back(d)))
        .collect();

    // Raw sweep: values are invariant under reduction.
    let mut raw_count = 0usize;
    let mut stack: Vec<ZigzagWord> = vec![graph.empty_word(pt)];
    while let Some(w) = stack.pop() {
        raw_count += 1;
        let red = graph.reduce(&w);
        if ore.class_of_word(&graph, &w) != ore.class_of_word(&graph, &red.word) {
            return Err(format!(
                "value changed under reduction at {}",
                graph.display_word(&w)
            ));
        }
        if w.len() < 5 {
            for &l in &letters {
                let mut ls = w.letters().to_vec();
                ls.push(l);
                stack.push(graph.word(pt, ls).expect("one object"));
            }
        }
    }

    // Exhaustive reduced enumeration to length six.
    let mut reduced: Vec<ZigzagWord> = Vec::new();
    let mut stack: Vec<ZigzagWord> = vec![graph.empty_word(pt)];
    while let Some(w) = stack.pop() {
        if graph.is_reduced(&w) {
            reduced.push(w.clone());
            if w.len() < 6 {
                for &l in &letters {
                    let mut ls = w.letters().to_vec();
                    ls.push(l);
                    let next = graph.word(pt, ls).expect("one object");
                    if graph.is_reduced(&next) {
                        stack.push(next);
                    }
                }
            }
        }
    }

    // Every move from every reduced word preserves the value.
    let budget = Budget {
        max_word_len: 8,
        max_states: 25_000,
    };
    for w in &reduced {
        let value = ore.class_of_word(&graph, w);
        for (_, next) in graph.elementary_neighbors(w, &budget) {
            if ore.class_of_word(&graph, &next) != value {
                return Err(format!(
                    "a move changed the fraction value at {}",
                    graph.display_word(w)
                ));
            }
        }
    }

    // Value classes are move-connected: every member carries an explicit
    // replayed chain to the class representative.
    let mut buckets: BTreeMap<usize, Vec<ZigzagWord>> = BTreeMap::new();
    for w in &reduced {
        buckets
            .entry(ore.class_of_word(&graph, w))
            .or_default()
            .push(w.clone());
    }
    for words in buckets.values() {
        certify_ore_bucket(&graph, &ore, words)?;
    }

    // Sampled two-backend agreement: equal values yield search paths,
    // distinct values never do.
    let reps: Vec<&ZigzagWord> = buckets.values().filter_map(|ws| ws.first()).collect();
    for (value, words) in &buckets {
        let rep = &words[0];
        for w in words.iter().rev().take(2) {
            match graph
                .decide_equal(rep, w, &EqualityBackend::CommutativeOneObject)
                .map_err(|e| e.to_string())?
            {
                EqVerdict::Equal { path: Some(path) } => {
                    if graph.replay(rep, &path).map_err(|e| e.to_string())? != *w {
                        return Err("equality path does not replay".into());
                    }
                }
                other => {
                    return Err(format!(
                        "backend disagreement in value class {value}: {other:?}"
                    ))
                }
            }
        }
    }
    for (i, a) in reps.iter().enumerate() {
        for b in reps.iter().skip(i + 1) {
            let ore_verdict = graph
                .decide_equal(a, b, &EqualityBackend::CommutativeOneObject)
                .map_err(|e| e.to_string())?;
            let search_verdict = graph
                .decide_equal(
                    a,
                    b,
                    &EqualityBackend::Search(Budget {
                        max_word_len: 6,
                        max_states: 1_500,
                    }),
                )
                .map_err(|e| e.to_string())?;
            match (&ore_verdict, &search_verdict) {
                (EqVerdict::Distinct(_), EqVerdict::Unknown(_)) => {}
                (EqVerdict::Distinct(_), EqVerdict::Distinct(_)) => {}
                other => return Err(format!("cross-class disagreement: {other:?}")),
            }
        }
    }
    Ok((raw_count + reduced.len(), buckets.len()))
}

/// Sorts a one-object word into the shape `forwards then backwards` by
/// the derived swap `l_d · a  ~  a · l_d` (insert the composite pair,
/// merge, split the other way, cancel), then reduces. Returns the final
/// word with the full elementary chain, verified move by move.
fn ore_pair_form(
    graph: &catfrac::zigzag::LocGraph,
    w: &ZigzagWord,
) -> Result<(ZigzagWord, Vec<Move>), String> {
    let cat = graph.category();
    let mut path = Vec::new();
    let red = graph.reduce(w);
    path.extend(red.path.iter().copied());
    let mut current = red.word;
    loop {
        let swap_at = current
            .letters()
            .windows(2)
            .position(|p| matches!((p[0], p[1]), (Letter::Back(_), Letter::Fwd(_))));
        let Some(i) = swap_at else { break };
        let (Letter::Back(d), Letter::Fwd(a)) = (current.letters()[i], current.letters()[i + 1])
        else {
            unreachable!()
        };
        let chain = [
            Move::InsertFwdBack { at: i + 2, d },
            Move::MergeFwd { at: i + 1 },
            Move::SplitFwd {
                at: i + 1,
                first: d,
                second: a,
            },
            Move::CancelBackFwd { at: i },
        ];
        for mv in chain {
            current = graph.apply_move(&current, &mv).map_err(|e| e.to_string())?;
            path.push(mv);
        }
    }
    let red = graph.reduce(&current);
    path.extend(red.path.iter().copied());
    current = red.word;
    // Pad to exactly one forward and one backward letter.
    let pt = current.start();
    let one = cat.identity_of(pt);
    let pad: Vec<Move> = match (current.letters().first(), current.len()) {
        (None, _) => vec![Move::InsertFwdBack { at: 0, d: one }],
        (Some(Letter::Fwd(_)), 1) => vec![
            Move::InsertFwdBack { at: 1, d: one },
            Move::MergeFwd { at: 0 },
        ],
        (Some(Letter::Back(d)), 1) => {
            let d = *d;
            let square = cat.compose(d, d).expect("one object");
            vec![
                Move::InsertFwdBack { at: 0, d },
                // Fold the two backward letters into their composite.
                Move::InsertFwdBack { at: 3, d: square },
                Move::SplitFwd {
                    at: 3,
                    first: d,
                    second: d,
                },
                Move::CancelBackFwd { at: 2 },
                Move::CancelBackFwd { at: 1 },
            ]
        }
        _ => Vec::new(),
    };
    for mv in pad {
        current = graph.apply_move(&current, &mv).map_err(|e| e.to_string())?;
        path.push(mv);
    }
    if current.len() != 2 {
        return Err(format!(
            "pair form has length {} for {}",
            current.len(),
            graph.display_word(&current)
        ));
    }
    Ok((current, path))
}

/// Joins two pair forms of the same fraction value by the witness chain:
/// multiply numerator and denominator of each side into the common word
/// `x·t·u / u·t·s`, then meet in the middle.
fn connect_pair_forms(
    graph: &catfrac::zigzag::LocGraph,
    sigma: &catfrac::fincat::Subcategory,
    from: &ZigzagWord,
    to: &ZigzagWord,
) -> Result<Vec<Move>, String> {
    let cat = graph.category();
    let (Letter::Fwd(x), Letter::Back(s)) = (from.letters()[0], from.letters()[1]) else {
        return Err("not a pair form".into());
    };
    let (Letter::Fwd(y), Letter::Back(t)) = (to.letters()[0], to.letters()[1]) else {
        return Err("not a pair form".into());
    };
    let mul = |a: MorId, b: MorId| cat.compose(a, b).expect("one object");
    let witness = sigma
        .morphisms()
        .iter()
        .copied()
        .find(|&u| mul(mul(u, x), t) == mul(mul(u, y), s))
        .ok_or("no witness: the pair forms are not equivalent")?;
    // Controlled expansion: insert the two pairs, merge the forward run,
    // fold the backward run. No cancellations, so both sides land on the
    // literal word `numerator-product · l_(denominator-product)`.
    let grow = |start: &ZigzagWord, first: MorId, second: MorId| -> Result<(ZigzagWord, Vec<Move>), String> {
        let mut path = vec![
            Move::InsertFwdBack { at: 1, d: first },
            Move::InsertFwdBack { at: 2, d: second },
            Move::MergeFwd { at: 0 },
            Move::MergeFwd { at: 0 },
        ];
        let mut current = start.clone();
        for mv in &path {
            current = graph.apply_move(&current, mv).map_err(|e| e.to_string())?;
        }
        // Now `F N, B a, B b, B c`: fold the backward letters pairwise.
        for _ in 0..2 {
            let (Letter::Back(p), Letter::Back(q)) =
                (current.letters()[1], current.letters()[2])
            else {
                return Err("expected a backward run".into());
            };
            let c = cat.compose(q, p).expect("one object");
            let fold = [
                Move::InsertFwdBack { at: 3, d: c },
                Move::SplitFwd {
                    at: 3,
                    first: q,
                    second: p,
                },
                Move::CancelBackFwd { at: 2 },
                Move::CancelBackFwd { at: 1 },
            ];
            for mv in fold {
                current = graph.apply_move(&current, &mv).map_err(|e| e.to_string())?;
                path.push(mv);
            }
        }
        Ok((current, path))
    };
    let (mid1, path1) = grow(from, t, witness)?;
    let (mid2, path2) = grow(to, s, witness)?;
    if mid1 != mid2 {
        return Err(format!(
            "witness chains do not meet: {} vs {}",
            graph.display_word(&mid1),
            graph.display_word(&mid2)
        ));
    }
    let back = graph.invert_path(to, &path2).map_err(|e| e.to_string())?;
    let mut full = path1;
    full.extend(back);
    Ok(full)
}

/// Certifies one Ore value class: every member carries an explicit
/// elementary chain to the representative, replayed and checked.
fn certify_ore_bucket(
    graph: &catfrac::zigzag::LocGraph,
    _ore: &catfrac::zigzag::OreClasses,
    words: &[ZigzagWord],
) -> Result<(), String> {
    let sigma = graph.sigma().clone();
    let (rep_pair, _) = ore_pair_form(graph, &words[0])?;
    for w in words {
        let (pair, to_pair) = ore_pair_form(graph, w)?;
        let join = connect_pair_forms(graph, &sigma, &pair, &rep_pair)?;
        let mut full = to_pair;
        full.extend(join);
        let landed = graph.replay(w, &full).map_err(|e| e.to_string())?;
        if landed != rep_pair {
            return Err(format!(
                "certificate chain for {} does not land on the representative",
                graph.display_word(w)
            ));
        }
    }
    Ok(())
}

/// Criterion 9: degenerate guards — identity-only sigma and one-object
/// groups reproduce the base category. Exact.
#[test]
fn acceptance_09_degenerate_guards() {
    let run = || -> Result<String, String> {
        let mut guarded = 0usize;
        for inst in full_corpus() {
            let cat = &inst.category;
            let sigma = cat.discrete_subcategory();
            let center = cat
                .validate_center(&sigma, &BTreeMap::new())
                .map_err(|e| format!("{}: {e}", inst.name))?;
            let result = dilate(cat, &center, &DilateOptions::default())
                .map_err(|e| format!("{}: {e}", inst.name))?;
            for x in cat.object_ids() {
                for y in cat.object_ids() {
                    if result.hom(x, y).classes.len() != cat.hom(x, y).len() {
                        return Err(format!(
                            "{}: identities-only dilatation differs at hom({}, {})",
                            inst.name,
                            cat.object_name(x),
                            cat.object_name(y)
                        ));
                    }
                }
            }
            guarded += 1;
        }
        // One-object groups: Z/2 multiplicatively, and the order-two
        // group written additively.
        for (name, cat, gens) in [
            ("z2-group", corpus::z2_group(), vec!["g"]),
            ("z5-units", corpus::mul_monoid_category(5), vec!["2"]),
        ] {
            let sigma = corpus::sigma_generated(&cat, &gens);
            let center = SigmaCenter::maximal(&cat, &sigma);
            let result = dilate(&cat, &center, &DilateOptions::default())
                .map_err(|e| format!("{name}: {e}"))?;
            let pt = cat.object_ids().next().unwrap();
            // Every sigma generator is invertible, so theta is bijective
            // on the hom-monoid.
            if result.hom(pt, pt).classes.len() != cat.hom(pt, pt).len() {
                return Err(format!("{name}: group dilatation is not the group"));
            }
            let mut thetas = BTreeSet::new();
            for m in cat.morphism_ids() {
                thetas.insert(result.theta_class(m).map_err(|e| format!("{name}: {e}"))?);
            }
            if thetas.len() != cat.morphism_count() {
                return Err(format!("{name}: theta is not injective"));
            }
            guarded += 1;
        }
        Ok(format!("{guarded} degenerate instances recovered exactly"))
    };
    conclude(9, "degenerate-guards", run());
}

/// Criterion 10: two full runs produce byte-identical reports.
#[test]
fn acceptance_10_determinism() {
    let run = || -> Result<String, String> {
        let render = || -> String {
            let mut out = String::new();
            for inst in full_corpus() {
                let cat = &inst.category;
                let loc = localize(cat, &inst.sigma, &DilateOptions::default())
                    .expect("corpus localizes");
                out.push_str(&format!("instance {}\n", inst.name));
                for hom in loc.homs() {
                    out.push_str(&format!(
                        "  hom {} {} stabilized={} budget={}\n",
                        cat.object_name(hom.source),
                        cat.object_name(hom.target),
                        hom.stabilized,
                        hom.budget_used
                    ));
                    for class in &hom.classes {
                        out.push_str(&format!(
                            "    class {} members={}\n",
                            loc.graph().word_token(class.canonical()),
                            class.members().len()
                        ));
                    }
                }
            }
            out
        };
        let first = render();
        let second = render();
        if first != second {
            return Err("two renders differ".into());
        }
        Ok(format!("{} bytes, byte-identical across runs", first.len()))
    };
    conclude(10, "determinism", run());
}

/// Representability: consistency of the represented set with the fate of
/// the factorization, on a good and a failing target. Part of the
/// criterion-6 family but reported on its own line for visibility.
#[test]
fn acceptance_06b_representability() {
    let run = || -> Result<String, String> {
        let mut outcomes_checked = 0usize;
        for (name, cat, center, result) in corpus_dilatations().into_iter().take(8) {
            let promoted = result
                .as_category()
                .map_err(|e| format!("{name}: {e}"))?;
            let th = theta(&result, &promoted).map_err(|e| format!("{name}: {e}"))?;
            let loc = localize(&cat, center.sigma(), &DilateOptions::default())
                .map_err(|e| format!("{name}: {e}"))?;
            let loc_promoted = loc.as_category().map_err(|e| format!("{name}: {e}"))?;
            let theta_loc =
                theta(&loc, &loc_promoted).map_err(|e| format!("{name}: {e}"))?;
            let targets = vec![
                ReprTarget {
                    name: "dilatation".into(),
                    functor: th,
                },
                ReprTarget {
                    name: "localization".into(),
                    functor: theta_loc,
                },
                ReprTarget {
                    name: "identity".into(),
                    functor: FinFunctor::identity(&cat),
                },
            ];
            let outcomes = representability_report(
                &result,
                &promoted,
                &targets,
                &DilateOptions::default(),
            )
            .map_err(|e| format!("{name}: {e}"))?;
            for o in &outcomes {
                if o.sigma_reg.unknown() || o.condition.unknown() {
                    continue;
                }
                if !o.consistent.passed() {
                    return Err(format!("{name}/{}: {}", o.name, o.consistent));
                }
                outcomes_checked += 1;
            }
        }
        Ok(format!("{outcomes_checked} target outcomes consistent"))
    };
    conclude(6, "representability", run());
}

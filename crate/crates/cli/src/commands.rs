//! Command execution: wiring the parsed problem into the library
//! operations and collecting verdicts.

use std::error::Error;
use std::time::Instant;

use catfrac::dilate::{
    check_bimorphism, check_exc, dilate, dual_dilate, embed_into_localization, fraction_of,
    iterated_dilatation_check, localize, representability_report, subcategory_inclusion_functor,
    theta, universal_report, ClassId, DilatationResult, DilateOptions, FinFunctor, ReprTarget,
};
use catfrac::fincat::{FinCategory, SigmaCenter, Subcategory};
use catfrac::semiring::{blowup, ma_compare};
use catfrac::verdict::Verdict;
use catfrac::zigzag::{build_graph, EqualityBackend};

use crate::report::{HomLine, Report, VerdictLine};
use crate::schema::{self, Problem};
use crate::{BackendChoice, CheckCommand, Cli, Command, ExportWhat};

pub fn execute(cli: &Cli) -> Result<Report, Box<dyn Error>> {
    let started = Instant::now();
    let input_path = cli
        .input
        .as_ref()
        .ok_or("missing --input FILE")?;
    let text = std::fs::read_to_string(input_path)
        .map_err(|e| format!("cannot read {input_path}: {e}"))?;
    let flag_budget = catfrac::zigzag::Budget {
        max_word_len: cli.budget_len,
        max_states: cli.budget_states,
    };
    let problem = schema::parse(&text, flag_budget)?;
    let mut report = run_command(cli, &problem)?;
    if cli.timings {
        report.timings_ms = Some(started.elapsed().as_millis());
    }
    Ok(report)
}

fn options(cli: &Cli, problem: &Problem) -> DilateOptions {
    let backend = match cli.backend {
        BackendChoice::Auto => None,
        BackendChoice::Poset => Some(EqualityBackend::Poset),
        BackendChoice::Commutative => Some(EqualityBackend::CommutativeOneObject),
        BackendChoice::Search => Some(EqualityBackend::Search(problem.budget)),
    };
    DilateOptions {
        budget: Some(problem.budget),
        backend,
    }
}

fn need_category(problem: &Problem) -> Result<&FinCategory, Box<dyn Error>> {
    problem
        .category
        .as_ref()
        .ok_or_else(|| "this command needs a `category`".into())
}

fn need_sigma(problem: &Problem) -> Result<&Subcategory, Box<dyn Error>> {
    problem
        .sigma
        .as_ref()
        .ok_or_else(|| "this command needs `sigma`".into())
}

/// The center to dilate at: the configured one, or maximal sieves on
/// sigma (with a note).
fn effective_center(
    problem: &Problem,
    notes: &mut Vec<String>,
) -> Result<SigmaCenter, Box<dyn Error>> {
    if let Some(center) = &problem.center {
        return Ok(center.clone());
    }
    let cat = need_category(problem)?;
    let sigma = need_sigma(problem)?;
    notes.push("no center given: using maximal sieves on sigma".into());
    Ok(SigmaCenter::maximal(cat, sigma))
}

fn run_dilatation(
    cli: &Cli,
    problem: &Problem,
    notes: &mut Vec<String>,
) -> Result<DilatationResult, Box<dyn Error>> {
    let cat = need_category(problem)?;
    let center = effective_center(problem, notes)?;
    let result = if problem.dual {
        notes.push("center read as cosieves: dilating by right fractions".into());
        dual_dilate(cat, &center, &options(cli, problem))?
    } else {
        dilate(cat, &center, &options(cli, problem))?
    };
    Ok(result)
}

fn hom_lines(result: &DilatationResult) -> Vec<HomLine> {
    let cat = result.category();
    let graph = result.graph();
    result
        .homs()
        .map(|h| HomLine {
            source: cat.object_name(h.source).to_string(),
            target: cat.object_name(h.target).to_string(),
            classes: h
                .classes
                .iter()
                .map(|c| graph.word_token(c.canonical()))
                .collect(),
            stabilized: h.stabilized,
            audit: None,
        })
        .collect()
}

fn run_command(cli: &Cli, problem: &Problem) -> Result<Report, Box<dyn Error>> {
    match &cli.command {
        Command::Validate => validate(problem),
        Command::Localize => {
            let mut report = Report::new("localize", &problem.digest);
            let cat = need_category(problem)?;
            let sigma = need_sigma(problem)?;
            let result = localize(cat, sigma, &options(cli, problem))?;
            report.stabilized = Some(result.all_stabilized());
            report.push_verdict(
                "localization-enumerated",
                &if result.all_stabilized() {
                    Verdict::Pass
                } else {
                    Verdict::Unknown("some hom-sets did not stabilize within budget".into())
                },
            );
            report.homs = Some(hom_lines(&result));
            Ok(report)
        }
        Command::Dilate => {
            let mut notes = Vec::new();
            let result = run_dilatation(cli, problem, &mut notes)?;
            let mut report = Report::new("dilate", &problem.digest);
            report.notes = notes;
            report.stabilized = Some(result.all_stabilized());
            report.push_verdict(
                "dilatation-enumerated",
                &if result.all_stabilized() {
                    Verdict::Pass
                } else {
                    Verdict::Unknown("some hom-sets did not stabilize within budget".into())
                },
            );
            report.homs = Some(hom_lines(&result));
            Ok(report)
        }
        Command::Hom { source, target } => {
            let mut notes = Vec::new();
            let cat = need_category(problem)?;
            let result = if problem.center.is_some() {
                run_dilatation(cli, problem, &mut notes)?
            } else {
                let sigma = need_sigma(problem)?;
                notes.push("no center given: showing the localization hom-set".into());
                localize(cat, sigma, &options(cli, problem))?
            };
            let x = cat.object(source)?;
            let y = cat.object(target)?;
            let hom = result.hom(x, y);
            let mut report = Report::new("hom", &problem.digest);
            report.notes = notes;
            report.stabilized = Some(hom.stabilized);
            report.push_verdict(
                format!("hom({source}, {target})"),
                &if hom.stabilized {
                    Verdict::Pass
                } else {
                    Verdict::Unknown("hom-set did not stabilize within budget".into())
                },
            );
            report.homs = Some(
                hom.classes
                    .iter()
                    .map(|c| {
                        let audit = match result.graph().find_path(
                            c.nshaped(),
                            c.canonical(),
                            &problem.budget,
                        ) {
                            catfrac::zigzag::SearchOutcome::Found(path) => Some(
                                path.iter()
                                    .map(|mv| crate::report::move_json(cat, mv))
                                    .collect(),
                            ),
                            _ => None,
                        };
                        HomLine {
                            source: source.clone(),
                            target: target.clone(),
                            classes: vec![result.graph().word_token(c.canonical())],
                            stabilized: hom.stabilized,
                            audit,
                        }
                    })
                    .collect(),
            );
            Ok(report)
        }
        Command::Check { what } => check(cli, problem, what),
        Command::Blowup => {
            let sr = problem
                .semiring
                .as_ref()
                .ok_or("blowup needs a `semiring`")?;
            let center = problem
                .sr_center
                .as_ref()
                .ok_or("blowup needs `sr_center`")?;
            let result = blowup(sr, center)?;
            let mut report = Report::new("blowup", &problem.digest);
            report.push_verdict(
                "carrier-closed",
                &Verdict::from_bool(result.is_closed(), || "carrier not closed".into()),
            );
            let q = result.localized().semiring();
            report.notes.push(format!(
                "carrier: {}",
                result
                    .carrier()
                    .iter()
                    .map(|&c| q.name(c).to_string())
                    .collect::<Vec<_>>()
                    .join(", ")
            ));
            report.notes.push(format!(
                "localization has {} classes; blowup keeps {}",
                result.localized().len(),
                result.len()
            ));
            for pair in center.pairs() {
                if !pair.additively_closed {
                    report.notes.push(format!(
                        "numerators of {} are not additively closed: the ideal reading does not apply",
                        sr.name(pair.a)
                    ));
                }
            }
            Ok(report)
        }
        Command::MaCompare => {
            let sr = problem
                .semiring
                .as_ref()
                .ok_or("ma-compare needs a `semiring`")?;
            let center = problem
                .sr_center
                .as_ref()
                .ok_or("ma-compare needs `sr_center`")?;
            let cmp = ma_compare(sr, center, &options(cli, problem))?;
            let mut report = Report::new("ma-compare", &problem.digest);
            report.push_verdict("well-defined", &cmp.well_defined);
            report.push_verdict("functorial", &cmp.functorial);
            report.push_verdict("injective", &cmp.injective);
            report.push_verdict("surjective", &cmp.surjective);
            report.notes.push(format!(
                "dilatation hom-monoid has {} classes; blowup carrier has {} elements",
                cmp.dilatation_size, cmp.blowup_size
            ));
            report
                .notes
                .push(format!("class values: {}", cmp.class_values.join(", ")));
            if cmp.identification() {
                report.notes.push(
                    "full identification: the dilatation is the multiplicative monoid of the blowup"
                        .into(),
                );
            }
            Ok(report)
        }
        Command::ExportDot { what } => {
            let mut report = Report::new("export-dot", &problem.digest);
            let text = match what {
                ExportWhat::Graph => {
                    let cat = need_category(problem)?;
                    let sigma = need_sigma(problem)?;
                    let graph = build_graph(cat, sigma)?;
                    report.notes.push(format!(
                        "{} vertices, {} forward and {} backward lines",
                        cat.object_count(),
                        graph.forward_lines(),
                        graph.backward_lines()
                    ));
                    crate::dot::graph_dot(&graph)
                }
                ExportWhat::Result => {
                    let mut notes = Vec::new();
                    let result = run_dilatation(cli, problem, &mut notes)?;
                    let promoted = result.as_category()?;
                    report.notes = notes;
                    report.notes.push(format!(
                        "{} objects, {} morphisms",
                        promoted.category.object_count(),
                        promoted.category.morphism_count()
                    ));
                    crate::dot::result_dot(&result, &promoted)
                }
            };
            match &cli.dot {
                Some(path) => {
                    std::fs::write(path, &text)
                        .map_err(|e| format!("cannot write {path}: {e}"))?;
                    report.notes.push(format!("DOT written to {path}"));
                }
                None => print!("{text}"),
            }
            report.push_verdict("export", &Verdict::Pass);
            Ok(report)
        }
    }
}

fn validate(problem: &Problem) -> Result<Report, Box<dyn Error>> {
    let mut report = Report::new("validate", &problem.digest);
    if problem.category.is_none() && problem.semiring.is_none() {
        return Err("nothing to validate: give `category` or `semiring`".into());
    }
    if let Some(cat) = &problem.category {
        report.push_verdict("category-valid", &Verdict::Pass);
        // Echo the canonical tables so a validated category can
        // round-trip through the input format.
        let objects: Vec<String> = cat
            .object_ids()
            .map(|x| cat.object_name(x).to_string())
            .collect();
        let morphisms: Vec<serde_json::Value> = cat
            .morphism_ids()
            .map(|m| {
                serde_json::json!({
                    "name": cat.morphism_name(m),
                    "dom": cat.object_name(cat.dom(m)),
                    "cod": cat.object_name(cat.cod(m)),
                })
            })
            .collect();
        let mut compose = Vec::new();
        for f in cat.morphism_ids() {
            for g in cat.morphism_ids() {
                if let Some(h) = cat.compose(f, g) {
                    compose.push(serde_json::json!([
                        cat.morphism_name(f),
                        cat.morphism_name(g),
                        cat.morphism_name(h)
                    ]));
                }
            }
        }
        let identities: serde_json::Map<String, serde_json::Value> = cat
            .object_ids()
            .map(|x| {
                (
                    cat.object_name(x).to_string(),
                    serde_json::Value::String(
                        cat.morphism_name(cat.identity_of(x)).to_string(),
                    ),
                )
            })
            .collect();
        report.category_echo = Some(serde_json::json!({
            "objects": objects,
            "morphisms": morphisms,
            "compose": compose,
            "identities": identities,
        }));
        report.notes.push(format!(
            "category: {} objects, {} morphisms",
            cat.object_count(),
            cat.morphism_count()
        ));
    }
    if let Some(sr) = &problem.semiring {
        report.push_verdict("semiring-valid", &Verdict::Pass);
        report
            .notes
            .push(format!("semiring: {} elements", sr.len()));
    }
    if let Some(sigma) = &problem.sigma {
        report.push_verdict("sigma-valid", &Verdict::Pass);
        report
            .notes
            .push(format!("sigma: {} morphisms", sigma.morphisms().len()));
    }
    if problem.center.is_some() {
        report.push_verdict("center-valid", &Verdict::Pass);
    }
    if problem.sr_center.is_some() {
        report.push_verdict("sr-center-valid", &Verdict::Pass);
    }
    Ok(report)
}

fn check(cli: &Cli, problem: &Problem, what: &CheckCommand) -> Result<Report, Box<dyn Error>> {
    let mut notes = Vec::new();
    match what {
        CheckCommand::Propdil => {
            let result = run_dilatation(cli, problem, &mut notes)?;
            let cat = result.category().clone();
            let mut report = Report::new("check propdil", &problem.digest);
            report.notes = notes;
            let center = result.center().clone();
            let mut pairs = 0usize;
            for &d in center.sigma().morphisms() {
                for &n in center.sieve(d).expect("validated").members() {
                    match fraction_of(&result, n, d) {
                        Ok(_) => pairs += 1,
                        Err(e) => {
                            report.push_verdict(
                                format!(
                                    "fraction({}, {})",
                                    cat.morphism_name(n),
                                    cat.morphism_name(d)
                                ),
                                &Verdict::Fail(e.to_string()),
                            );
                        }
                    }
                }
            }
            if report.verdicts.is_empty() {
                report.push_verdict(
                    "fraction-existence-uniqueness",
                    &Verdict::Pass,
                );
                report
                    .notes
                    .push(format!("{pairs} numerator/denominator pairs solved uniquely"));
            }
            Ok(report)
        }
        CheckCommand::Bimorphism => {
            let result = run_dilatation(cli, problem, &mut notes)?;
            let cat = result.category().clone();
            let mut report = Report::new("check bimorphism", &problem.digest);
            report.notes = notes;
            for &d in result.center().sigma().morphisms().clone().iter() {
                let verdict = check_bimorphism(&result, d)?;
                report.push_verdict(
                    format!("bimorphism [{}]", cat.morphism_name(d)),
                    &verdict,
                );
            }
            Ok(report)
        }
        CheckCommand::Exc => {
            let result = run_dilatation(cli, problem, &mut notes)?;
            let cat = result.category().clone();
            let promoted = result.as_category()?;
            let mut report = Report::new("check exc", &problem.digest);
            report.notes = notes;
            for &d in result.center().sigma().morphisms().clone().iter() {
                let verdict = check_exc(&result, &promoted, d)?;
                report.push_verdict(
                    format!("generated-sieve [{}]", cat.morphism_name(d)),
                    &verdict,
                );
            }
            Ok(report)
        }
        CheckCommand::Locasdil => {
            let cat = need_category(problem)?;
            let sigma = need_sigma(problem)?;
            let center = SigmaCenter::maximal(cat, sigma);
            let dil = dilate(cat, &center, &options(cli, problem))?;
            let loc = localize(cat, sigma, &options(cli, problem))?;
            let mut report = Report::new("check locasdil", &problem.digest);
            let mut ok = true;
            for id in dil.class_ids() {
                let image = loc.class_of_word(dil.class(id).canonical())?;
                for member in dil.class(id).members() {
                    if loc.class_of_word(member)? != image {
                        ok = false;
                    }
                }
            }
            for x in cat.object_ids() {
                for y in cat.object_ids() {
                    let lhs = dil.hom(x, y).classes.len();
                    let rhs = loc.hom(x, y).classes.len();
                    if lhs != rhs {
                        ok = false;
                        report.push_verdict(
                            format!(
                                "hom({}, {})",
                                cat.object_name(x),
                                cat.object_name(y)
                            ),
                            &Verdict::Fail(format!("{lhs} classes against {rhs}")),
                        );
                    }
                }
            }
            for a in cat.morphism_ids() {
                let via = loc.class_of_word(dil.class(dil.theta_class(a)?).canonical())?;
                if via != loc.theta_class(a)? {
                    ok = false;
                }
            }
            report.push_verdict(
                "localization-recovered",
                &Verdict::from_bool(ok, || "bijection with the localization fails".into()),
            );
            Ok(report)
        }
        CheckCommand::Inclusion => {
            let cat = need_category(problem)?;
            let gamma = problem
                .gamma
                .as_ref()
                .ok_or("check inclusion needs `gamma`")?;
            let center = effective_center(problem, &mut notes)?;
            let inc = subcategory_inclusion_functor(cat, gamma, &center, &options(cli, problem))?;
            let mut report = Report::new("check inclusion", &problem.digest);
            report.notes = notes;
            report.notes.push(format!(
                "inclusion functor is full: {}, faithful: {}",
                inc.full.passed(),
                inc.faithful.passed()
            ));
            // The propositions are implications: fullness under the
            // principal-sieve hypothesis, faithfulness under the faithful
            // localization comparison.
            let full_claim = if inc.fullness_hypothesis {
                inc.full.clone()
            } else {
                Verdict::Pass
            };
            if !inc.fullness_hypothesis {
                report
                    .notes
                    .push("principal-sieve hypothesis does not apply; fullness not claimed".into());
            }
            report.push_verdict("full-when-sieves-principal", &full_claim);
            let faithful_claim = match &inc.localization_comparison_faithful {
                Verdict::Pass => inc.faithful.clone(),
                Verdict::Unknown(w) => Verdict::Unknown(w.clone()),
                Verdict::Fail(_) => Verdict::Pass,
            };
            report.push_verdict(
                "localization-comparison-faithful",
                &inc.localization_comparison_faithful,
            );
            report.push_verdict("faithful-when-localizations-compare", &faithful_claim);
            Ok(report)
        }
        CheckCommand::Iterate => {
            let cat = need_category(problem)?;
            let center = effective_center(problem, &mut notes)?;
            let gamma_center = match (&problem.gamma_center, &problem.gamma) {
                (Some(c), _) => c.clone(),
                (None, Some(gamma)) => {
                    notes.push("no gamma center given: using maximal sieves on gamma".into());
                    SigmaCenter::maximal(cat, gamma)
                }
                (None, None) => return Err("check iterate needs `gamma`".into()),
            };
            let report_data =
                iterated_dilatation_check(cat, &center, &gamma_center, &options(cli, problem))?;
            let mut report = Report::new("check iterate", &problem.digest);
            report.notes = notes;
            report.push_verdict("hom-bijective", &report_data.bijective);
            report.push_verdict("functorial", &report_data.functorial);
            Ok(report)
        }
        CheckCommand::Universal => {
            let result = run_dilatation(cli, problem, &mut notes)?;
            let promoted = result.as_category()?;
            let cat = result.category().clone();
            let mut report = Report::new("check universal", &problem.digest);
            report.notes = notes;
            let th = theta(&result, &promoted)?;
            let loc = localize(&cat, result.given_sigma(), &options(cli, problem))?;
            let loc_promoted = loc.as_category()?;
            let theta_loc = theta(&loc, &loc_promoted)?;
            for (label, functor) in [("dilatation", th), ("localization", theta_loc)] {
                let rep = universal_report(&functor, &result, &promoted, &options(cli, problem))?;
                report.push_verdict(format!("{label}: sigma-regular"), &rep.sigma_reg);
                let hypotheses = rep
                    .hypotheses
                    .values()
                    .cloned()
                    .fold(Verdict::Pass, Verdict::and);
                report.push_verdict(format!("{label}: hypotheses"), &hypotheses);
                report.push_verdict(format!("{label}: commutes"), &rep.commutes);
                report.push_verdict(format!("{label}: unique"), &rep.unique);
                if label == "localization" {
                    if let Some(f) = &rep.functor {
                        let embedding = embed_into_localization(
                            &result,
                            &promoted,
                            &loc,
                            &loc_promoted,
                        )?;
                        report.push_verdict(
                            "localization: equals the canonical embedding",
                            &Verdict::from_bool(f == &embedding, || {
                                "factorization differs from the embedding".into()
                            }),
                        );
                    }
                }
            }
            Ok(report)
        }
        CheckCommand::Representability => {
            let result = run_dilatation(cli, problem, &mut notes)?;
            let promoted = result.as_category()?;
            let cat = result.category().clone();
            let mut report = Report::new("check representability", &problem.digest);
            report.notes = notes;
            let th = theta(&result, &promoted)?;
            let loc = localize(&cat, result.given_sigma(), &options(cli, problem))?;
            let loc_promoted = loc.as_category()?;
            let theta_loc = theta(&loc, &loc_promoted)?;
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
            let outcomes =
                representability_report(&result, &promoted, &targets, &options(cli, problem))?;
            for o in outcomes {
                let size = match o.set_size {
                    Some(n) => n.to_string(),
                    None => "?".to_string(),
                };
                report.verdicts.push(VerdictLine {
                    check: format!("target {} (set size {size})", o.name),
                    status: match &o.consistent {
                        Verdict::Pass => "pass".into(),
                        Verdict::Fail(_) => "fail".into(),
                        Verdict::Unknown(_) => "unknown".into(),
                    },
                    detail: format!("condition {}, sigma-regular {}", o.condition, o.sigma_reg),
                });
            }
            Ok(report)
        }
    }
}

/// Used by integration tests to run a hom-set query without a file.
pub fn hom_classes(result: &DilatationResult, src: &str, tgt: &str) -> Vec<String> {
    let cat = result.category();
    let x = cat.object(src).expect("object exists");
    let y = cat.object(tgt).expect("object exists");
    result
        .hom(x, y)
        .classes
        .iter()
        .map(|c| result.graph().word_token(c.canonical()))
        .collect()
}

/// Exposed for tests: the identity class of an object.
pub fn identity_class_of(result: &DilatationResult, obj: &str) -> ClassId {
    let cat = result.category();
    result
        .identity_class(cat.object(obj).expect("object exists"))
        .expect("identity class present")
}

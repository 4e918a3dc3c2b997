//! Report assembly. Reports are deterministic for a fixed input and
//! budgets: all collections are name-sorted and timings are opt-in.

use serde::Serialize;

use catfrac::verdict::Verdict;

#[derive(Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub instance: String,
    pub verdicts: Vec<VerdictLine>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub homs: Option<Vec<HomLine>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stabilized: Option<bool>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub category_echo: Option<serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<u128>,
}

#[derive(Debug, Serialize)]
pub struct VerdictLine {
    pub check: String,
    pub status: String,
    pub detail: String,
}

#[derive(Debug, Serialize)]
pub struct HomLine {
    pub source: String,
    pub target: String,
    pub classes: Vec<String>,
    pub stabilized: bool,
    /// Replayable elementary-move chains from the alternating
    /// representative of each class to its canonical word, for audit.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub audit: Option<Vec<serde_json::Value>>,
}

/// One move as a JSON object, with morphism names resolved.
pub fn move_json(cat: &catfrac::fincat::FinCategory, mv: &catfrac::zigzag::Move) -> serde_json::Value {
    use catfrac::zigzag::Move;
    match *mv {
        Move::MergeFwd { at } => serde_json::json!({"move": "merge_fwd", "at": at}),
        Move::SplitFwd { at, first, second } => serde_json::json!({
            "move": "split_fwd", "at": at,
            "first": cat.morphism_name(first), "second": cat.morphism_name(second),
        }),
        Move::CancelFwdBack { at } => serde_json::json!({"move": "cancel_fwd_back", "at": at}),
        Move::InsertFwdBack { at, d } => serde_json::json!({
            "move": "insert_fwd_back", "at": at, "d": cat.morphism_name(d),
        }),
        Move::CancelBackFwd { at } => serde_json::json!({"move": "cancel_back_fwd", "at": at}),
        Move::InsertBackFwd { at, d } => serde_json::json!({
            "move": "insert_back_fwd", "at": at, "d": cat.morphism_name(d),
        }),
    }
}

impl Report {
    pub fn new(command: &str, instance: &str) -> Report {
        Report {
            command: command.to_string(),
            instance: instance.to_string(),
            verdicts: Vec::new(),
            homs: None,
            stabilized: None,
            notes: Vec::new(),
            category_echo: None,
            timings_ms: None,
        }
    }

    pub fn push_verdict(&mut self, check: impl Into<String>, verdict: &Verdict) {
        let (status, detail) = match verdict {
            Verdict::Pass => ("pass", String::new()),
            Verdict::Fail(d) => ("fail", d.clone()),
            Verdict::Unknown(d) => ("unknown", d.clone()),
        };
        self.verdicts.push(VerdictLine {
            check: check.into(),
            status: status.to_string(),
            detail,
        });
    }

    pub fn exit_code(&self) -> i32 {
        if self.verdicts.iter().any(|v| v.status == "fail") {
            1
        } else if self.verdicts.iter().any(|v| v.status == "unknown") {
            2
        } else {
            0
        }
    }

    pub fn render_text(&self) -> String {
        let mut out = format!("{} [{}]\n", self.command, self.instance);
        for v in &self.verdicts {
            if v.detail.is_empty() {
                out.push_str(&format!("  {:<40} {}\n", v.check, v.status));
            } else {
                out.push_str(&format!("  {:<40} {} ({})\n", v.check, v.status, v.detail));
            }
        }
        if let Some(homs) = &self.homs {
            for h in homs {
                out.push_str(&format!(
                    "  hom({}, {}) [{}]: {}\n",
                    h.source,
                    h.target,
                    if h.stabilized { "stable" } else { "partial" },
                    if h.classes.is_empty() {
                        "-".to_string()
                    } else {
                        h.classes.join(", ")
                    }
                ));
            }
        }
        for n in &self.notes {
            out.push_str(&format!("  note: {n}\n"));
        }
        if let Some(ms) = self.timings_ms {
            out.push_str(&format!("  elapsed: {ms} ms\n"));
        }
        out
    }
}

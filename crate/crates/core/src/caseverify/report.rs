use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::simpledb::ParamBounds;

use super::{
    check_exceptional_cases, not_exercised_rows, scan_alternating, scan_l2r, scan_power_equations, verify_corpus,
    verify_lie_tables, verify_table4, CheckResult, CorpusGroups, Section, Verdict, VerifyError,
};

/// Upper limits of the number-theoretic scans.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanLimits {
    pub l2r_max: u64,
    pub alternating_p_max: u64,
    pub power_r_max: u64,
}

impl Default for ScanLimits {
    fn default() -> Self {
        ScanLimits { l2r_max: 199, alternating_p_max: 97, power_r_max: 61 }
    }
}

/// Per-section outcome.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepStatus {
    pub section: Section,
    pub checks: usize,
    pub contradictions: usize,
    pub discrepancies: usize,
    /// No contradiction among the section's checks.
    pub confirmed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub by_verdict: BTreeMap<Verdict, usize>,
    pub steps: Vec<StepStatus>,
    /// Groups for which `pi(|S|/|U|) = pi(|W|)` held.
    pub pi_equality_holds: Vec<String>,
}

impl Summary {
    fn of(checks: &[CheckResult]) -> Summary {
        let mut by_verdict = BTreeMap::new();
        for c in checks {
            *by_verdict.entry(c.verdict).or_insert(0) += 1;
        }
        let steps = Section::ALL
            .iter()
            .filter_map(|&s| {
                let in_s: Vec<_> = checks.iter().filter(|c| c.section == s).collect();
                if in_s.is_empty() {
                    return None;
                }
                let contradictions = in_s.iter().filter(|c| c.verdict == Verdict::Contradiction).count();
                Some(StepStatus {
                    section: s,
                    checks: in_s.len(),
                    contradictions,
                    discrepancies: in_s.iter().filter(|c| c.verdict == Verdict::Discrepancy).count(),
                    confirmed: contradictions == 0,
                })
            })
            .collect();
        let mut pi_equality_holds: Vec<String> = checks
            .iter()
            .filter(|c| c.check_id.starts_with("pi_equality:") && c.computed_lhs == c.computed_rhs)
            .map(|c| c.instance.clone())
            .collect();
        pi_equality_holds.dedup();
        Summary { total: checks.len(), by_verdict, steps, pi_equality_holds }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub version: String,
    pub bounds: ParamBounds,
    pub scan_limits: ScanLimits,
    pub checks: Vec<CheckResult>,
    /// Table rows with no instance inside the bounds.
    pub not_exercised: Vec<String>,
    pub summary: Summary,
}

impl VerificationReport {
    pub fn new(bounds: ParamBounds, scan_limits: ScanLimits, checks: Vec<CheckResult>, not_exercised: Vec<String>) -> Self {
        let summary = Summary::of(&checks);
        VerificationReport {
            version: env!("CARGO_PKG_VERSION").to_string(),
            bounds,
            scan_limits,
            checks,
            not_exercised,
            summary,
        }
    }

    pub fn count(&self, v: Verdict) -> usize {
        self.summary.by_verdict.get(&v).copied().unwrap_or(0)
    }

    pub fn has_contradiction(&self) -> bool {
        self.count(Verdict::Contradiction) > 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, VerifyError> {
        serde_json::from_str(text).map_err(|e| VerifyError::Json(e.to_string()))
    }

    /// Plain-text rendering: one line per check, then the summary.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for c in &self.checks {
            s.push_str(&c.line());
            s.push('\n');
        }
        for r in &self.not_exercised {
            s.push_str(&format!("not exercised: {r}\n"));
        }
        s.push_str(&format!("checks: {}\n", self.summary.total));
        for (v, n) in &self.summary.by_verdict {
            s.push_str(&format!("  {v}: {n}\n"));
        }
        for st in &self.summary.steps {
            s.push_str(&format!(
                "  {}: {} checks, {} contradictions, {} discrepancies, {}\n",
                st.section.as_str(),
                st.checks,
                st.contradictions,
                st.discrepancies,
                if st.confirmed { "confirmed" } else { "contradicted" }
            ));
        }
        if !self.summary.pi_equality_holds.is_empty() {
            s.push_str(&format!("  pi(|S|/|U|) = pi(|W|) for: {}\n", self.summary.pi_equality_holds.join("; ")));
        }
        s
    }
}

/// Scans plus exceptional cases. `groups` must hold L3(3), Aut(L3(3)),
/// U3(3) and U4(2).
pub fn verify_cases(limits: &ScanLimits, groups: &CorpusGroups) -> Result<Vec<CheckResult>, VerifyError> {
    let mut out = scan_l2r(limits.l2r_max);
    out.extend(scan_alternating(limits.alternating_p_max));
    out.extend(scan_power_equations(limits.power_r_max));
    out.extend(check_exceptional_cases(groups)?);
    Ok(out)
}

/// Every check in canonical order: torus tables, sporadic table, scans,
/// exceptional cases, corpus.
pub fn full_report(bounds: &ParamBounds) -> Result<VerificationReport, VerifyError> {
    let limits = ScanLimits::default();
    let groups = CorpusGroups::load_all()?;
    let mut checks = verify_lie_tables(&[1, 2, 3], bounds)?;
    checks.extend(verify_table4(&groups)?);
    checks.extend(verify_cases(&limits, &groups)?);
    checks.extend(verify_corpus(&groups));
    let not_exercised = not_exercised_rows(&[1, 2, 3], bounds)?;
    Ok(VerificationReport::new(*bounds, limits, checks, not_exercised))
}

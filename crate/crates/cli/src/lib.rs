//! Experiment runner and report rendering.
//!
//! [`run_target`] resolves a preset name or definition-file path into a
//! plan, executes every step, and returns one [`Report`]. The report is a
//! pure value: both renderers are deterministic functions of it, so a rerun
//! with the same inputs produces byte-identical output in either format.

pub mod presets;
mod render;

use serde::Serialize;

use diaglab_core::census::{
    census_exhaustive, census_full_orderings, census_ordered_prefixes, census_sampled,
    CensusReport,
};
use diaglab_core::config::{
    parse_plan, CensusModeChoice, ExperimentPlan, Overrides, PlannedStep,
};
use diaglab_core::diagonal::{
    default_search_bound, diagonal_stream, induction_trace, DiagonalReport, SizeVerdict,
    TraceEntry,
};
use diaglab_core::numerosity::{
    compare_profiles, overall_verdict, pairing_audit, partial_counts, ComparisonVerdict,
    PairingAudit, ProfileComparison,
};
use diaglab_core::{Error, Result};

pub use render::{render_machine, render_table};

/// Identifier of the machine report layout, embedded in every report.
/// See `docs/REPORT_SCHEMA.md` for the layout it names.
pub const REPORT_SCHEMA: &str = "diaglab-report/1";

/// Rows and columns of the digit grid included with diagonal steps.
const GRID_SPAN: u64 = 8;
/// Trace entries included verbatim with induction steps.
const TRACE_HEAD: usize = 8;
/// Leading counts included verbatim with profile steps.
const PROFILE_HEAD: usize = 10;

/// Output format for a finished report.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Table,
    Machine,
}

impl OutputFormat {
    pub fn parse(text: &str) -> Option<Self> {
        match text {
            "table" => Some(OutputFormat::Table),
            "machine" => Some(OutputFormat::Machine),
            _ => None,
        }
    }
}

/// Results of one full run: the source that was run and every step outcome.
#[derive(Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub source: String,
    pub steps: Vec<StepReport>,
}

/// One executed step: its section name plus the engine outcome.
#[derive(Serialize)]
pub struct StepReport {
    pub name: String,
    #[serde(flatten)]
    pub payload: StepPayload,
}

#[derive(Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum StepPayload {
    Diagonal(DiagonalStep),
    Induction(InductionStep),
    Census(CensusReport),
    Profiles(ProfilesStep),
    Audit(AuditStep),
}

/// A diagonal outcome plus enough of the list to draw it: the leading digit
/// grid (row n of the grid is the list's row n, digits left to right) and
/// the tail entries.
#[derive(Serialize)]
pub struct DiagonalStep {
    #[serde(flatten)]
    pub report: DiagonalReport,
    pub grid: Vec<String>,
    pub tail: Vec<String>,
}

/// An induction outcome. The location of every partial diagonal is kept,
/// but only the first few partials are carried verbatim: partial n has n
/// digits, so the full sequence grows quadratically.
#[derive(Serialize)]
pub struct InductionStep {
    pub list: String,
    pub n_max: u64,
    pub search_bound: u64,
    pub verdict: SizeVerdict,
    /// Closed range of n the verdict quantifies over.
    pub evidence: (u64, u64),
    pub head: Vec<TraceEntry>,
    /// `positions[n - 1]` is where the n-digit partial was found, if it was.
    pub positions: Vec<Option<u64>>,
}

/// A count-profile comparison plus excerpts of the profiles themselves.
#[derive(Serialize)]
pub struct ProfilesStep {
    pub comparison: ProfileComparison,
    pub left_counts_head: Vec<u64>,
    pub right_counts_head: Vec<u64>,
    pub left_count_at_end: u64,
    pub right_count_at_end: u64,
}

/// A pairing audit, optionally judged beside the count profiles of the two
/// sets it connects.
#[derive(Serialize)]
pub struct AuditStep {
    #[serde(flatten)]
    pub audit: PairingAudit,
    /// The map's forward rule, in closed form.
    pub map_rule: String,
    pub count_comparison: Option<ProfileComparison>,
    /// Joint reading of the audit and the counts; present when counts ran.
    pub combined_verdict: Option<ComparisonVerdict>,
}

/// Loads a preset by name, or else a definition file by path.
pub fn load_target(target: &str) -> Result<String> {
    if let Some(preset) = presets::find(target) {
        return Ok(preset.source.to_string());
    }
    let path = std::path::Path::new(target);
    if !path.is_file() {
        return Err(Error::UnknownTarget(target.to_string()));
    }
    std::fs::read_to_string(path).map_err(|error| Error::FileRead {
        path: target.to_string(),
        message: error.to_string(),
    })
}

/// Resolves `target`, applies `overrides`, and runs every step.
pub fn run_target(target: &str, overrides: &Overrides) -> Result<Report> {
    let source = load_target(target)?;
    let plan = parse_plan(&source, overrides)?;
    run_plan(target, plan)
}

/// Runs an already-resolved plan under the given source label.
pub fn run_plan(source: &str, plan: ExperimentPlan) -> Result<Report> {
    let mut steps = Vec::with_capacity(plan.steps.len());
    for step in plan.steps {
        steps.push(run_step(step)?);
    }
    Ok(Report {
        schema: REPORT_SCHEMA,
        source: source.to_string(),
        steps,
    })
}

fn run_step(step: PlannedStep) -> Result<StepReport> {
    let name = step.name().to_string();
    let payload = match step {
        PlannedStep::Diagonal {
            list,
            rule,
            horizon,
            ..
        } => {
            let report = diagonal_stream(&list, &rule, horizon)?;
            let mut grid = Vec::new();
            for row in 1..=GRID_SPAN {
                let mut digits = String::new();
                for column in 1..=GRID_SPAN {
                    digits.push_str(&list.row_digit(row, column)?.to_string());
                }
                grid.push(digits);
            }
            let tail = list.tail().iter().map(|entry| entry.to_string()).collect();
            StepPayload::Diagonal(DiagonalStep { report, grid, tail })
        }
        PlannedStep::Induction {
            list,
            rule,
            n_max,
            search_bound,
            ..
        } => {
            let search_bound = search_bound.unwrap_or_else(|| default_search_bound(n_max));
            let trace = induction_trace(&list, &rule, n_max, search_bound)?;
            let positions = trace.entries.iter().map(|entry| entry.found_at).collect();
            let head = trace.entries.iter().take(TRACE_HEAD).cloned().collect();
            StepPayload::Induction(InductionStep {
                list: list.name().to_string(),
                n_max,
                search_bound,
                verdict: trace.verdict,
                evidence: trace.evidence,
                head,
                positions,
            })
        }
        PlannedStep::Census {
            set,
            rule,
            mode,
            samples,
            seed,
            ..
        } => {
            let report = match mode {
                CensusModeChoice::Auto => census_exhaustive(&set, &rule)?,
                CensusModeChoice::Full => census_full_orderings(&set, &rule)?,
                CensusModeChoice::Prefixes => census_ordered_prefixes(&set, &rule)?,
                CensusModeChoice::Sampled => census_sampled(&set, &rule, samples, seed)?,
            };
            StepPayload::Census(report)
        }
        PlannedStep::Profiles {
            left,
            right,
            n_max,
            ..
        } => {
            let left_profile = partial_counts(&left, n_max)?;
            let right_profile = partial_counts(&right, n_max)?;
            let comparison = compare_profiles(&left_profile, &right_profile)?;
            let head = (n_max as usize).min(PROFILE_HEAD);
            StepPayload::Profiles(ProfilesStep {
                comparison,
                left_counts_head: left_profile.counts[..head].to_vec(),
                right_counts_head: right_profile.counts[..head].to_vec(),
                left_count_at_end: left_profile.count_at(n_max),
                right_count_at_end: right_profile.count_at(n_max),
            })
        }
        PlannedStep::Audit {
            map,
            from,
            to,
            n_max,
            compare_counts,
            count_window,
            ..
        } => {
            let audit = pairing_audit(&map, &from, &to, n_max)?;
            let map_rule = map.forward.to_string();
            let (count_comparison, combined_verdict) = if compare_counts {
                let left = partial_counts(&from, count_window)?;
                let right = partial_counts(&to, count_window)?;
                let comparison = compare_profiles(&left, &right)?;
                let combined = overall_verdict(&audit, &comparison);
                (Some(comparison), Some(combined))
            } else {
                (None, None)
            };
            StepPayload::Audit(AuditStep {
                audit,
                map_rule,
                count_comparison,
                combined_verdict,
            })
        }
    };
    Ok(StepReport { name, payload })
}

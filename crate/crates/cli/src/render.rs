//! Report renderers.
//!
//! The machine format is JSON carrying exact integers and exact digit
//! strings only; nothing in it is rounded. The table format is for reading:
//! it may additionally show decimal digit expansions, always labelled as
//! renderings, and lines starting with `note:` are interpretation rather
//! than data.

use std::fmt::Write;

use diaglab_core::census::{CensusMode, CensusReport};
use diaglab_core::diagonal::{Certification, SizeVerdict};
use diaglab_core::digits::PeriodicDigitString;
use diaglab_core::numerosity::{ComparisonVerdict, RatioExactness};

use crate::{AuditStep, DiagonalStep, InductionStep, ProfilesStep, Report, StepPayload};

/// Serializes the report as indented JSON with a trailing newline.
pub fn render_machine(report: &Report) -> String {
    let mut text =
        serde_json::to_string_pretty(report).expect("reports serialize without error");
    text.push('\n');
    text
}

/// Formats the report as human-readable text.
pub fn render_table(report: &Report) -> String {
    let mut out = String::new();
    let w = &mut out;
    line(w, 0, &format!("diaglab report (schema {})", report.schema));
    line(w, 0, &format!("source: {}", report.source));
    for (index, step) in report.steps.iter().enumerate() {
        line(w, 0, "");
        let number = index + 1;
        match &step.payload {
            StepPayload::Diagonal(payload) => diagonal_table(w, number, &step.name, payload),
            StepPayload::Induction(payload) => induction_table(w, number, &step.name, payload),
            StepPayload::Census(payload) => census_table(w, number, &step.name, payload),
            StepPayload::Profiles(payload) => profiles_table(w, number, &step.name, payload),
            StepPayload::Audit(payload) => audit_table(w, number, &step.name, payload),
        }
    }
    out
}

fn line(out: &mut String, indent: usize, text: &str) {
    for _ in 0..indent {
        out.push_str("    ");
    }
    out.push_str(text);
    out.push('\n');
}

fn diagonal_table(out: &mut String, number: usize, name: &str, step: &DiagonalStep) {
    let report = &step.report;
    line(
        out,
        0,
        &format!("[{number}] diagonal '{name}' on list '{}'", report.list),
    );
    line(
        out,
        1,
        &format!("rule {}; horizon {}", report.rule, report.horizon),
    );
    line(
        out,
        1,
        "leading digits of the leading rows (position n of row n bracketed):",
    );
    for (index, row) in step.grid.iter().enumerate() {
        let mut cells = String::new();
        for (column, digit) in row.chars().enumerate() {
            if column == index {
                let _ = write!(cells, "[{digit}]");
            } else {
                let _ = write!(cells, " {digit} ");
            }
        }
        line(out, 2, &format!("row {} |{}", index + 1, cells.trim_end()));
    }
    for (slot, value) in step.tail.iter().enumerate() {
        line(out, 2, &format!("tail omega+{slot} | {value}"));
    }
    let shown = report.stream_prefix.len().min(32);
    let stream: String = report.stream_prefix[..shown]
        .iter()
        .map(|digit| digit.to_string())
        .collect();
    line(
        out,
        1,
        &format!(
            "rewritten diagonal (first {shown} of {} digits): {stream}",
            report.stream_prefix.len()
        ),
    );
    match &report.detected {
        Some(value) => {
            line(out, 1, &format!("value: {value}"));
            line(out, 2, &format!("digits (rendering): {}", rendering(value)));
        }
        None => line(out, 1, "value: none detected"),
    }
    line(out, 1, &format!("certification: {}", certification_text(&report.certification)));
    match report.membership {
        Some(position) => {
            line(out, 1, &format!("membership: the value is the list's entry at {position}"));
            line(
                out,
                1,
                "note: the rewrite makes the value differ from every finitely indexed row \
                 at that row's own position; the match sits past all of them.",
            );
        }
        None => {
            line(out, 1, "membership: the value matches no entry of the list");
        }
    }
}

fn certification_text(certification: &Certification) -> String {
    match certification {
        Certification::ProvedByFamily => {
            "proved by the generator's closed form, at every position".to_string()
        }
        Certification::EmpiricalToHorizon { horizon } => format!(
            "empirical; the period repeats within the horizon, positions past {horizon} unchecked"
        ),
        Certification::NotPeriodicWithinHorizon => {
            "no period found within the horizon".to_string()
        }
    }
}

fn rendering(value: &PeriodicDigitString) -> String {
    let mut text = String::from("0.");
    for n in 1..=16 {
        let digit = value.digit_at(n).expect("positions from 1 are valid");
        let _ = write!(text, "{digit}");
    }
    text.push_str("... (first 16 expansion digits, not the exact value)");
    text
}

fn induction_table(out: &mut String, number: usize, name: &str, step: &InductionStep) {
    line(
        out,
        0,
        &format!("[{number}] induction '{name}' on list '{}'", step.list),
    );
    line(
        out,
        1,
        &format!(
            "partial diagonals D(n) for n = 1 ..= {}; search bound {}",
            step.n_max, step.search_bound
        ),
    );
    line(out, 1, "first locations:");
    for entry in &step.head {
        let found = match entry.found_at {
            Some(position) => format!("found at position {position}"),
            None => "not found within the search bound".to_string(),
        };
        line(
            out,
            2,
            &format!("n = {} | D(n) = {} | {found}", entry.n, entry.partial),
        );
    }
    let located = step.positions.iter().filter(|p| p.is_some()).count();
    line(
        out,
        1,
        &format!("located {located} of {} partials", step.positions.len()),
    );
    line(
        out,
        1,
        &format!(
            "verdict: {} (evidence n = {} ..= {})",
            size_verdict_text(&step.verdict),
            step.evidence.0,
            step.evidence.1
        ),
    );
}

fn size_verdict_text(verdict: &SizeVerdict) -> String {
    match verdict {
        SizeVerdict::Offset { offset } => {
            format!("every D(n) sits at position n + {offset}")
        }
        SizeVerdict::Ratio {
            numerator,
            denominator,
        } => format!("every D(n) sits at position n * {numerator} / {denominator}"),
        SizeVerdict::NoPattern {
            first_missing: Some(n),
        } => format!("no shape fits; D({n}) is not in the list within the search bound"),
        SizeVerdict::NoPattern {
            first_missing: None,
        } => "the locations fit neither a constant offset nor a fixed ratio".to_string(),
    }
}

fn census_table(out: &mut String, number: usize, name: &str, report: &CensusReport) {
    line(
        out,
        0,
        &format!("[{number}] census '{name}' of stringset '{}'", report.set_name),
    );
    line(
        out,
        1,
        &format!(
            "{} strings of length {}; {}",
            report.set_size,
            report.n_digits,
            census_mode_text(report)
        ),
    );
    let space = match report.mode {
        CensusMode::Sampled { .. } => "sampled orderings",
        _ => "orderings",
    };
    line(
        out,
        1,
        &format!(
            "{space} whose first-{}-rows diagonal is a member: {} of {} ({})",
            report.n_digits,
            report.orderings_with_member_diagonal,
            match report.mode {
                CensusMode::Sampled { samples, .. } => samples.to_string(),
                _ => report.total_orderings.to_string(),
            },
            report.member_fraction
        ),
    );
    line(out, 1, "per-target counts (orderings whose diagonal equals the target):");
    for (target, count) in &report.per_target {
        line(out, 2, &format!("{target} | {count}"));
    }
    if matches!(report.mode, CensusMode::Sampled { .. }) {
        line(
            out,
            1,
            &format!(
                "note: counts above are over the samples; the whole space has {} orderings.",
                report.total_orderings
            ),
        );
    }
}

fn census_mode_text(report: &CensusReport) -> String {
    match report.mode {
        CensusMode::Exhaustive => "every ordering of the whole set".to_string(),
        CensusMode::PrefixExhaustive => format!(
            "every ordered {}-prefix, each standing for every ordering completing it",
            report.n_digits
        ),
        CensusMode::Sampled { samples, seed } => {
            format!("{samples} orderings sampled uniformly, seed {seed}")
        }
    }
}

fn profiles_table(out: &mut String, number: usize, name: &str, step: &ProfilesStep) {
    let comparison = &step.comparison;
    line(out, 0, &format!("[{number}] profiles '{name}'"));
    line(
        out,
        1,
        &format!(
            "members at or below N, for '{}' and '{}', N = 1 ..= {}",
            comparison.left, comparison.right, comparison.n_max
        ),
    );
    line(
        out,
        2,
        &format!("{:12} | {}", comparison.left, join_counts(&step.left_counts_head)),
    );
    line(
        out,
        2,
        &format!("{:12} | {}", comparison.right, join_counts(&step.right_counts_head)),
    );
    line(
        out,
        2,
        &format!(
            "at N = {}: {} against {}",
            comparison.n_max, step.left_count_at_end, step.right_count_at_end
        ),
    );
    line(out, 1, &format!("verdict: {}", comparison_text(&comparison.verdict)));
}

fn join_counts(counts: &[u64]) -> String {
    counts
        .iter()
        .map(|count| count.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn comparison_text(verdict: &ComparisonVerdict) -> String {
    match verdict {
        ComparisonVerdict::DifferenceStabilizes { difference, since } => {
            format!("the running counts differ by exactly {difference} from N = {since} on")
        }
        ComparisonVerdict::RatioConverges {
            numerator,
            denominator,
            exactness,
        } => {
            let regime = match exactness {
                RatioExactness::ExactFrom { since } => format!("exactly from N = {since} on"),
                RatioExactness::Asymptotic {
                    max_abs_residual,
                    exact_on: Some(class),
                } => format!(
                    "within {max_abs_residual} over the window's second half, exact whenever N mod {} = {}",
                    class.modulus, class.residue
                ),
                RatioExactness::Asymptotic {
                    max_abs_residual,
                    exact_on: None,
                } => format!("within {max_abs_residual} over the window's second half"),
            };
            format!("the running counts settle at ratio {numerator}:{denominator}, {regime}")
        }
        ComparisonVerdict::BijectionEquinumerousOnly => {
            "the pairing is perfect while the running counts disagree; \
             the equal-size claim rests on the pairing alone"
                .to_string()
        }
        ComparisonVerdict::Inconclusive => {
            "no stabilized difference and no small ratio fits the window".to_string()
        }
    }
}

fn audit_table(out: &mut String, number: usize, name: &str, step: &AuditStep) {
    let audit = &step.audit;
    line(out, 0, &format!("[{number}] audit '{name}'"));
    line(
        out,
        1,
        &format!(
            "map '{}' sends n to {}; applied to every element of '{}' up to {}, judged against '{}'",
            audit.map_name, step.map_rule, audit.from_set, audit.n_max, audit.to_set
        ),
    );
    let coverage = match audit.image_bound {
        Some(bound) => format!("coverage judged on [1, {bound}]"),
        None => "no image landed in the target".to_string(),
    };
    line(
        out,
        1,
        &format!(
            "paired {}; unpaired in source {}; unpaired in target {} ({coverage}); violations {}",
            audit.paired, audit.unpaired_in_from, audit.unpaired_in_to, audit.violations
        ),
    );
    if let Some(comparison) = &step.count_comparison {
        line(
            out,
            1,
            &format!(
                "counts beside the pairing (N = 1 ..= {}): {}",
                comparison.n_max,
                comparison_text(&comparison.verdict)
            ),
        );
    }
    if let Some(combined) = &step.combined_verdict {
        line(out, 1, &format!("combined: {}", comparison_text(combined)));
        if matches!(combined, ComparisonVerdict::BijectionEquinumerousOnly) {
            line(
                out,
                1,
                "note: which reading counts as 'same size' is a choice of definition; \
                 the report keeps both findings.",
            );
        }
    }
}

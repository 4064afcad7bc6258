//! Builds the report documents behind each single-pair subcommand. Every
//! section here round-trips through the structured-text parser, so a saved
//! report can be read back and post-processed.

use crate::report::{Document, Section};
use crate::survey::Check;
use anyhow::Result;
use grpdouble_core::{
    analytic_pipeline, covering_bound_check_among, covering_frontier_among, cs_witness,
    enumerate_subgroups, freiman_coset, hamidoune_witness_among, jump_check, kneser_witness_among,
    ratio_string, CoveringBound, Error as CoreError, FreimanOutcome, GroupFunction, PipelineReport,
    Rational, Subset, TheoremTag,
};

fn indices_text(s: &Subset) -> String {
    s.to_indices()
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

fn yes_no(flag: bool) -> &'static str {
    if flag {
        "yes"
    } else {
        "no"
    }
}

fn pass_fail(flag: bool) -> &'static str {
    if flag {
        "pass"
    } else {
        "fail"
    }
}

fn tag_name(tag: TheoremTag) -> &'static str {
    match tag {
        TheoremTag::Kneser => "kneser",
        TheoremTag::Hamidoune1 => "hamidoune-1",
        TheoremTag::Hamidoune2 => "hamidoune-2",
        TheoremTag::Freiman => "freiman",
    }
}

pub fn doubling_section(a: &Subset) -> Result<Section> {
    let g = a.group();
    let d = a.doubling()?;
    let mut s = Section::new("doubling");
    s.push("group", g.label());
    s.push("order", g.order());
    s.push("abelian", yes_no(g.is_abelian()));
    s.push("set", indices_text(a));
    s.push("set_size", d.set_size);
    s.push("product_size", d.product_size);
    s.push("ratio", ratio_string(&d.ratio));
    s.push("two_sided_equal", yes_no(d.symmetric_agreement));
    Ok(s)
}

fn jump_section(a: &Subset) -> Result<Section> {
    let r = jump_check(a)?;
    let mut s = Section::new("jump");
    s.push("min", r.min_value);
    s.push("bound", r.bound);
    s.push("pass", pass_fail(r.pass));
    Ok(s)
}

fn freiman_section(a: &Subset) -> Result<Section> {
    let mut s = Section::new("freiman");
    match freiman_coset(a)? {
        FreimanOutcome::NotApplicable { ratio } => {
            s.push("outcome", "not-applicable");
            s.push("ratio", ratio_string(&ratio));
        }
        FreimanOutcome::Found { subgroup, representative, ratio } => {
            s.push("outcome", "found");
            s.push("ratio", ratio_string(&ratio));
            s.push("subgroup", indices_text(&subgroup));
            s.push("subgroup_size", subgroup.len());
            s.push("representative", representative.index());
        }
        FreimanOutcome::Refuted { candidate, ratio, detail } => {
            s.push("outcome", "refuted");
            s.push("ratio", ratio_string(&ratio));
            s.push("candidate", indices_text(&candidate));
            s.push("detail", detail);
        }
    }
    Ok(s)
}

fn kneser_section(a: &Subset, subgroups: &[Subset]) -> Result<Section> {
    let mut s = Section::new("kneser");
    if !a.group().is_abelian() {
        s.push("applicable", "no");
        return Ok(s);
    }
    s.push("applicable", "yes");
    let r = kneser_witness_among(a, subgroups)?;
    s.push("found", yes_no(r.found));
    if let Some(h) = r.subgroup.filter(|_| r.found) {
        s.push("subgroup", indices_text(&h));
        s.push("subgroup_size", h.len());
    }
    Ok(s)
}

fn hamidoune_section(a: &Subset, subgroups: &[Subset]) -> Result<Section> {
    let r = hamidoune_witness_among(a, subgroups)?;
    let mut s = Section::new("hamidoune");
    s.push("found", yes_no(r.found));
    if let Some(h) = r.subgroup.filter(|_| r.found) {
        s.push("branch", tag_name(r.theorem));
        s.push("subgroup", indices_text(&h));
        s.push("subgroup_size", h.len());
    }
    Ok(s)
}

fn covering_sections(a: &Subset, subgroups: &[Subset]) -> Result<Vec<Section>> {
    let frontier = covering_frontier_among(a, subgroups)?;
    let mut front = Section::new("frontier");
    for e in &frontier.entries {
        front.push(
            "entry",
            format!(
                "h_size={} r={} reps={}",
                e.subgroup.len(),
                e.r,
                e.representatives
                    .iter()
                    .map(|x| x.index().to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            ),
        );
    }
    let mut bound = Section::new("covering");
    match covering_bound_check_among(a, subgroups)? {
        CoveringBound::NotApplicable { ratio } => {
            bound.push("applicable", "no");
            bound.push("ratio", ratio_string(&ratio));
        }
        CoveringBound::NoWitness { ratio } => {
            bound.push("applicable", "yes");
            bound.push("ratio", ratio_string(&ratio));
            bound.push("witness", "none");
        }
        CoveringBound::Checked(r) => {
            bound.push("applicable", "yes");
            bound.push("epsilon", ratio_string(&r.epsilon));
            bound.push("branch", tag_name(r.branch));
            bound.push("subgroup", indices_text(&r.subgroup));
            bound.push("h_size", r.h_size);
            bound.push("h_bound", ratio_string(&r.h_bound));
            bound.push("h_pass", pass_fail(r.h_pass));
            bound.push("r", r.r);
            bound.push("r_bound", ratio_string(&r.r_bound));
            bound.push("r_pass", pass_fail(r.r_pass));
        }
    }
    Ok(vec![front, bound])
}

/// Full single-pair report: the doubling header plus one section per
/// requested check.
pub fn analyze_document(
    a: &Subset,
    checks: &[Check],
    epsilon: Option<&Rational>,
) -> Result<Document> {
    let mut doc = Document::new();
    doc.push(doubling_section(a)?);
    let needs_subgroups = checks
        .iter()
        .any(|c| matches!(c, Check::Kneser | Check::Hamidoune | Check::Covering));
    let subgroups = if needs_subgroups {
        enumerate_subgroups(a.group())?
    } else {
        Vec::new()
    };
    for check in checks {
        match check {
            Check::Jump => doc.push(jump_section(a)?),
            Check::Freiman => doc.push(freiman_section(a)?),
            Check::Kneser => doc.push(kneser_section(a, &subgroups)?),
            Check::Hamidoune => doc.push(hamidoune_section(a, &subgroups)?),
            Check::Covering => {
                for s in covering_sections(a, &subgroups)? {
                    doc.push(s);
                }
            }
            Check::Pipeline => {
                let eps = epsilon.expect("validated by the caller");
                doc.push(pipeline_section(a, eps)?);
            }
        }
    }
    Ok(doc)
}

fn optional_set(s: &mut Section, key: &str, size_key: &str, set: Option<&Subset>) {
    match set {
        Some(set) => {
            s.push(key, indices_text(set));
            s.push(size_key, set.len());
        }
        None => {
            s.push(key, "-");
            s.push(size_key, "-");
        }
    }
}

fn pipeline_report_section(report: &PipelineReport) -> Section {
    let mut s = Section::new("pipeline");
    s.push("epsilon", ratio_string(&report.epsilon));
    s.push("nu", ratio_string(&report.nu));
    s.push("x", indices_text(&report.x));
    s.push("x_size", report.x.len());
    s.push("x4_ratio", ratio_string(&report.x4_ratio));
    optional_set(&mut s, "b", "b_size", report.b.as_ref());
    optional_set(&mut s, "bp", "bp_size", report.bp.as_ref());
    optional_set(&mut s, "s", "s_size", report.s.as_ref());
    optional_set(&mut s, "h", "h_size", report.h.as_ref());
    match report.r {
        Some(r) => s.push("r", r),
        None => s.push("r", "-"),
    }
    match &report.cover_reps {
        Some(reps) => s.push(
            "cover",
            reps.iter()
                .map(|x| x.index().to_string())
                .collect::<Vec<_>>()
                .join(","),
        ),
        None => s.push("cover", "-"),
    }
    for step in &report.steps {
        s.push(
            "step",
            format!(
                "{} {} {} [{} vs {}]",
                step.step,
                pass_fail(step.pass),
                step.claim,
                ratio_string(&step.left),
                ratio_string(&step.right)
            ),
        );
    }
    s.push("success", yes_no(report.success));
    s.push("failed_step", report.failed_step.unwrap_or("-"));
    s
}

/// Runs the analytic pipeline and reports it, folding the two recoverable
/// error shapes into a section instead of an error.
pub fn pipeline_section(a: &Subset, epsilon: &Rational) -> Result<Section> {
    match analytic_pipeline(a, epsilon) {
        Ok(report) => Ok(pipeline_report_section(&report)),
        Err(CoreError::DoublingExceedsBound { ratio, limit }) => {
            let mut s = Section::new("pipeline");
            s.push("epsilon", ratio_string(epsilon));
            s.push("applicable", "no");
            s.push("ratio", ratio_string(&ratio));
            s.push("ratio_limit", ratio_string(&limit));
            Ok(s)
        }
        Err(CoreError::ContinuityNotFound { steps }) => {
            let mut s = Section::new("pipeline");
            s.push("epsilon", ratio_string(epsilon));
            for step in &steps {
                s.push(
                    "step",
                    format!(
                        "{} {} {} [{} vs {}]",
                        step.step,
                        pass_fail(step.pass),
                        step.claim,
                        ratio_string(&step.left),
                        ratio_string(&step.right)
                    ),
                );
            }
            s.push("success", "no");
            s.push("failed_step", "2:continuity");
            Ok(s)
        }
        Err(other) => Err(other.into()),
    }
}

pub fn pipeline_document(a: &Subset, epsilon: &Rational) -> Result<Document> {
    let mut doc = Document::new();
    doc.push(doubling_section(a)?);
    doc.push(pipeline_section(a, epsilon)?);
    Ok(doc)
}

/// Convolution of two indicator functions: a header section plus one
/// `index = value` entry per point of the support.
pub fn convolve_document(a: &Subset, b: &Subset) -> Result<Document> {
    let g = a.group();
    let fa: GroupFunction = GroupFunction::indicator(a);
    let fb: GroupFunction = GroupFunction::indicator(b);
    let conv = fa.convolve(&fb)?;
    let support = conv.support();
    let mut head = Section::new("convolution");
    head.push("group", g.label());
    head.push("set_a", indices_text(a));
    head.push("set_b", indices_text(b));
    head.push("support", indices_text(&support));
    head.push("support_size", support.len());
    head.push("mass", ratio_string(&conv.total_mass()));
    let mut values = Section::new("values");
    for x in support.elements() {
        values.push(&x.index().to_string(), ratio_string(conv.value(x)));
    }
    let mut doc = Document::new();
    doc.push(head);
    doc.push(values);
    Ok(doc)
}

pub fn cs_witness_document(a: &Subset, k: u64) -> Result<Document> {
    let w = cs_witness(a, k)?;
    let mut s = Section::new("cs-witness");
    s.push("group", a.group().label());
    s.push("set", indices_text(a));
    s.push("k", w.k);
    s.push("threshold", ratio_string(&w.threshold));
    s.push("x", indices_text(&w.x));
    s.push("x_size", w.x.len());
    s.push("density_ratio", ratio_string(&w.density_ratio));
    let mut doc = Document::new();
    doc.push(s);
    Ok(doc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Document;
    use grpdouble_core::{build_group, ratio};
    use std::sync::Arc;

    fn subset(spec: &str, indices: &[usize]) -> Subset {
        let g = Arc::new(build_group(spec).unwrap());
        let mut s = Subset::empty(&g);
        for &i in indices {
            s.insert(g.element(i).unwrap());
        }
        s
    }

    #[test]
    fn analyze_reports_round_trip() {
        let a = subset("cyclic:8", &[0, 1]);
        let checks = [
            Check::Jump,
            Check::Freiman,
            Check::Kneser,
            Check::Hamidoune,
            Check::Covering,
        ];
        let doc = analyze_document(&a, &checks, None).unwrap();
        let text = doc.emit();
        let reparsed = Document::parse(&text).unwrap();
        assert_eq!(reparsed.emit(), text);
        let names: Vec<&str> = doc.sections.iter().map(|s| s.name.as_str()).collect();
        assert_eq!(
            names,
            ["doubling", "jump", "freiman", "kneser", "hamidoune", "frontier", "covering"]
        );
    }

    #[test]
    fn doubling_section_reports_exact_ratio() {
        let a = subset("cyclic:4", &[0, 1]);
        let s = doubling_section(&a).unwrap();
        assert_eq!(s.get("ratio"), Some("3/2"));
        assert_eq!(s.get("product_size"), Some("3"));
    }

    #[test]
    fn convolve_document_lists_rational_values() {
        let a = subset("cyclic:4", &[0, 1]);
        let b = subset("cyclic:4", &[0, 2]);
        let doc = convolve_document(&a, &a.intersection(&b).unwrap()).unwrap();
        assert_eq!(doc.sections[0].get("mass"), Some("2"));
        let doc = convolve_document(&a, &b).unwrap();
        assert_eq!(doc.sections[0].get("support_size"), Some("4"));
        for (_, v) in &doc.sections[1].entries {
            assert_eq!(v, "1");
        }
    }

    #[test]
    fn pipeline_document_collapses_a_subgroup() {
        let a = subset("cyclic:8", &[0, 4]);
        let doc = pipeline_document(&a, &ratio(1, 2)).unwrap();
        let pipe = &doc.sections[1];
        assert_eq!(pipe.get("success"), Some("yes"));
        assert_eq!(pipe.get("r"), Some("1"));
        assert_eq!(pipe.get("failed_step"), Some("-"));
    }

    #[test]
    fn pipeline_section_marks_wide_sets_not_applicable() {
        let a = subset("cyclic:7", &[0, 1, 3]);
        let s = pipeline_section(&a, &ratio(1, 2)).unwrap();
        assert_eq!(s.get("applicable"), Some("no"));
    }

    #[test]
    fn cs_witness_document_reports_the_greedy_set() {
        let a = subset("cyclic:8", &[0, 2, 4, 6]);
        let doc = cs_witness_document(&a, 8).unwrap();
        let s = &doc.sections[0];
        assert_eq!(s.get("x"), Some("0,2,4,6"));
        assert_eq!(s.get("density_ratio"), Some("1"));
    }
}

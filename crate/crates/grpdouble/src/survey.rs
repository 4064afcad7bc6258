//! The survey engine: enumerate (group, subset) pairs, run the requested
//! checks on each, and render rows plus a summary. Rows are computed in
//! task order whatever the worker count, so output bytes depend only on
//! the config.

use crate::report::{Document, Section};
use crate::rng::SplitMix64;
use anyhow::{bail, Context, Result};
use grpdouble_core::{
    analytic_pipeline, covering_frontier_among, enumerate_subgroups, freiman_coset,
    hamidoune_witness_among, jump_check, kneser_witness_among, parse_ratio, ratio_int,
    ratio_string, Error as CoreError, FreimanOutcome, Group, Rational, Subset, TheoremTag,
};
use rayon::prelude::*;
use std::fmt;
use std::sync::Arc;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Check {
    Jump,
    Freiman,
    Kneser,
    Hamidoune,
    Covering,
    Pipeline,
}

impl Check {
    pub const ALL: [Check; 6] = [
        Check::Jump,
        Check::Freiman,
        Check::Kneser,
        Check::Hamidoune,
        Check::Covering,
        Check::Pipeline,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Jump => "jump",
            Check::Freiman => "freiman",
            Check::Kneser => "kneser",
            Check::Hamidoune => "hamidoune",
            Check::Covering => "covering",
            Check::Pipeline => "pipeline",
        }
    }

    /// Whether a failure refutes a theorem rather than a heuristic.
    pub fn guaranteed(self) -> bool {
        matches!(
            self,
            Check::Jump | Check::Freiman | Check::Kneser | Check::Hamidoune
        )
    }

    pub fn parse(text: &str) -> Result<Check> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == text)
            .with_context(|| format!("unknown check {text:?}"))
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Parses a comma list of check names, preserving order.
pub fn parse_checks(text: &str) -> Result<Vec<Check>> {
    text.split(',').map(|part| Check::parse(part.trim())).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SubsetMode {
    Exhaustive,
    Random { count: usize, seed: u64 },
    AllOfSize { k: usize },
}

impl SubsetMode {
    pub fn parse(text: &str, fallback_seed: Option<u64>) -> Result<SubsetMode> {
        let text = text.trim();
        if text == "exhaustive" {
            return Ok(SubsetMode::Exhaustive);
        }
        if let Some(rest) = text.strip_prefix("random:") {
            let (count, seed) = match rest.split_once(':') {
                Some((c, s)) => (
                    c.parse().context("bad count in random mode")?,
                    s.parse().context("bad seed in random mode")?,
                ),
                None => {
                    let count = rest.parse().context("bad count in random mode")?;
                    let seed = fallback_seed
                        .context("random mode needs a seed (random:<count>:<seed> or --seed)")?;
                    (count, seed)
                }
            };
            if count == 0 {
                bail!("random mode needs count >= 1");
            }
            return Ok(SubsetMode::Random { count, seed });
        }
        if let Some(rest) = text.strip_prefix("all-of-size:") {
            let k: usize = rest.parse().context("bad k in all-of-size mode")?;
            if k == 0 {
                bail!("all-of-size needs k >= 1");
            }
            return Ok(SubsetMode::AllOfSize { k });
        }
        bail!("unknown subset mode {text:?}");
    }
}

impl fmt::Display for SubsetMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubsetMode::Exhaustive => f.write_str("exhaustive"),
            SubsetMode::Random { count, seed } => write!(f, "random:{count}:{seed}"),
            SubsetMode::AllOfSize { k } => write!(f, "all-of-size:{k}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SurveyConfig {
    pub groups: Vec<String>,
    pub subset_mode: SubsetMode,
    pub checks: Vec<Check>,
    pub epsilon: Option<Rational>,
    pub output: Option<String>,
    pub workers: usize,
}

impl SurveyConfig {
    pub fn validate(&self) -> Result<()> {
        if self.groups.is_empty() {
            bail!("survey needs at least one group");
        }
        if self.checks.is_empty() {
            bail!("survey needs at least one check");
        }
        let mut seen = Vec::new();
        for c in &self.checks {
            if seen.contains(c) {
                bail!("check {c} listed twice");
            }
            seen.push(*c);
        }
        if self.workers == 0 {
            bail!("workers must be at least 1");
        }
        if self.checks.contains(&Check::Pipeline) {
            let eps = self
                .epsilon
                .as_ref()
                .context("the pipeline check needs --epsilon")?;
            if *eps <= ratio_int(0) || *eps >= ratio_int(1) {
                bail!("epsilon must be strictly between 0 and 1");
            }
        }
        Ok(())
    }

    /// The `[survey]` section of a report or config file. Worker count and
    /// output path are runtime choices, not survey identity, and stay out.
    pub fn section(&self) -> Section {
        let mut s = Section::new("survey");
        for g in &self.groups {
            s.push("group", g);
        }
        s.push("mode", &self.subset_mode);
        s.push(
            "checks",
            self.checks
                .iter()
                .map(|c| c.name())
                .collect::<Vec<_>>()
                .join(","),
        );
        if let Some(eps) = &self.epsilon {
            s.push("epsilon", ratio_string(eps));
        }
        s
    }

    /// Reads a config from a structured-text document: the `[survey]`
    /// section of a config file or of a previously emitted report.
    pub fn from_document(doc: &Document, fallback_seed: Option<u64>) -> Result<SurveyConfig> {
        let section = doc
            .sections
            .iter()
            .find(|s| s.name == "survey")
            .context("no [survey] section in config")?;
        let mut groups = Vec::new();
        let mut mode = None;
        let mut checks = Vec::new();
        let mut epsilon = None;
        let mut output = None;
        let mut workers = 1usize;
        for (key, value) in &section.entries {
            match key.as_str() {
                "group" => groups.push(value.clone()),
                "mode" => mode = Some(SubsetMode::parse(value, fallback_seed)?),
                "checks" => checks = parse_checks(value)?,
                "epsilon" => epsilon = Some(parse_ratio(value)?),
                "output" => output = Some(value.clone()),
                "workers" => workers = value.parse().context("bad workers value")?,
                other => bail!("unknown survey key {other:?}"),
            }
        }
        let cfg = SurveyConfig {
            groups,
            subset_mode: mode.unwrap_or(SubsetMode::Exhaustive),
            checks,
            epsilon,
            output,
            workers,
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

/// One surveyed (group, set) pair: identity fields plus the requested
/// check cells in order. `-` marks a cell the check could not populate.
#[derive(Clone, Debug)]
pub struct SurveyRow {
    pub fields: Vec<(&'static str, String)>,
}

impl SurveyRow {
    pub fn section(&self) -> Section {
        let mut s = Section::new("row");
        for (k, v) in &self.fields {
            s.push(k, v);
        }
        s
    }
}

/// Column names for a check set, in row order.
pub fn columns(checks: &[Check]) -> Vec<&'static str> {
    let mut cols = vec!["group", "set", "ratio"];
    for check in checks {
        cols.extend_from_slice(match check {
            Check::Jump => &["jump_min", "jump_bound", "jump_pass"][..],
            Check::Freiman => &["freiman_outcome", "freiman_h", "freiman_pass"][..],
            Check::Kneser => &["kneser_h", "kneser_pass"][..],
            Check::Hamidoune => &["hamidoune_branch", "hamidoune_h", "hamidoune_pass"][..],
            Check::Covering => &["covering_h", "covering_r", "covering_pass"][..],
            Check::Pipeline => &["pipeline_r", "pipeline_step", "pipeline_pass"][..],
        });
    }
    cols
}

const NA: &str = "-";

fn pass_text(pass: bool) -> String {
    String::from(if pass { "pass" } else { "fail" })
}

struct GroupContext {
    group: Arc<Group>,
    subgroups: Option<Vec<Subset>>,
}

fn build_row(ctx: &GroupContext, a: &Subset, cfg: &SurveyConfig) -> Result<SurveyRow> {
    let g = &ctx.group;
    let doubling = a.doubling()?;
    let set_text = a
        .to_indices()
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(",");
    let mut fields: Vec<(&'static str, String)> = vec![
        ("group", g.label().to_string()),
        ("set", set_text),
        ("ratio", ratio_string(&doubling.ratio)),
    ];
    let two = ratio_int(2);
    for check in &cfg.checks {
        match check {
            Check::Jump => {
                let r = jump_check(a)?;
                fields.push(("jump_min", r.min_value.to_string()));
                fields.push(("jump_bound", r.bound.to_string()));
                fields.push(("jump_pass", pass_text(r.pass)));
            }
            Check::Freiman => match freiman_coset(a)? {
                FreimanOutcome::NotApplicable { .. } => {
                    fields.push(("freiman_outcome", "not-applicable".into()));
                    fields.push(("freiman_h", NA.into()));
                    fields.push(("freiman_pass", pass_text(true)));
                }
                FreimanOutcome::Found { subgroup, .. } => {
                    fields.push(("freiman_outcome", "found".into()));
                    fields.push(("freiman_h", subgroup.len().to_string()));
                    fields.push(("freiman_pass", pass_text(true)));
                }
                FreimanOutcome::Refuted { .. } => {
                    fields.push(("freiman_outcome", "refuted".into()));
                    fields.push(("freiman_h", NA.into()));
                    fields.push(("freiman_pass", pass_text(false)));
                }
            },
            Check::Kneser => {
                if g.is_abelian() {
                    let subgroups = ctx.subgroups.as_ref().expect("enumerated for kneser");
                    let r = kneser_witness_among(a, subgroups)?;
                    match r.subgroup {
                        Some(h) if r.found => {
                            fields.push(("kneser_h", h.len().to_string()));
                            fields.push(("kneser_pass", pass_text(true)));
                        }
                        _ => {
                            fields.push(("kneser_h", NA.into()));
                            fields.push(("kneser_pass", pass_text(false)));
                        }
                    }
                } else {
                    fields.push(("kneser_h", NA.into()));
                    fields.push(("kneser_pass", NA.into()));
                }
            }
            Check::Hamidoune => {
                let subgroups = ctx.subgroups.as_ref().expect("enumerated for hamidoune");
                let r = hamidoune_witness_among(a, subgroups)?;
                match (r.found, r.subgroup) {
                    (true, Some(h)) => {
                        let branch = match r.theorem {
                            TheoremTag::Hamidoune1 => "1",
                            _ => "2",
                        };
                        fields.push(("hamidoune_branch", branch.into()));
                        fields.push(("hamidoune_h", h.len().to_string()));
                        fields.push(("hamidoune_pass", pass_text(true)));
                    }
                    _ => {
                        fields.push(("hamidoune_branch", NA.into()));
                        fields.push(("hamidoune_h", NA.into()));
                        fields.push(("hamidoune_pass", pass_text(false)));
                    }
                }
            }
            Check::Covering => {
                let subgroups = ctx.subgroups.as_ref().expect("enumerated for covering");
                let frontier = covering_frontier_among(a, subgroups)?;
                if doubling.ratio < two {
                    let epsilon = two.clone() - doubling.ratio.clone();
                    let r_bound = two.clone() / epsilon;
                    match frontier.entry_within(&r_bound, 2 * a.len()) {
                        Some(entry) => {
                            fields.push(("covering_h", entry.subgroup.len().to_string()));
                            fields.push(("covering_r", entry.r.to_string()));
                            fields.push(("covering_pass", pass_text(true)));
                        }
                        None => {
                            fields.push(("covering_h", NA.into()));
                            fields.push(("covering_r", NA.into()));
                            fields.push(("covering_pass", pass_text(false)));
                        }
                    }
                } else {
                    let best = frontier.entries.last().expect("frontier is never empty");
                    fields.push(("covering_h", best.subgroup.len().to_string()));
                    fields.push(("covering_r", best.r.to_string()));
                    fields.push(("covering_pass", NA.into()));
                }
            }
            Check::Pipeline => {
                let eps = cfg.epsilon.as_ref().expect("validated");
                match analytic_pipeline(a, eps) {
                    Ok(report) => {
                        fields.push((
                            "pipeline_r",
                            report.r.map_or_else(|| NA.into(), |r| r.to_string()),
                        ));
                        fields.push((
                            "pipeline_step",
                            report.failed_step.map_or_else(|| NA.into(), String::from),
                        ));
                        fields.push(("pipeline_pass", pass_text(report.success)));
                    }
                    Err(CoreError::DoublingExceedsBound { .. }) => {
                        fields.push(("pipeline_r", NA.into()));
                        fields.push(("pipeline_step", NA.into()));
                        fields.push(("pipeline_pass", NA.into()));
                    }
                    Err(CoreError::ContinuityNotFound { .. }) => {
                        fields.push(("pipeline_r", NA.into()));
                        fields.push(("pipeline_step", "2:continuity".into()));
                        fields.push(("pipeline_pass", pass_text(false)));
                    }
                    Err(other) => return Err(other.into()),
                }
            }
        }
    }
    Ok(SurveyRow { fields })
}

enum TaskSet {
    Mask(u64),
    Explicit(Vec<u16>),
}

fn task_subset(group: &Arc<Group>, task: &TaskSet) -> Result<Subset> {
    match task {
        TaskSet::Mask(mask) => {
            let mut s = Subset::empty(group);
            let mut rest = *mask;
            while rest != 0 {
                let idx = rest.trailing_zeros() as usize;
                s.insert(group.element(idx)?);
                rest &= rest - 1;
            }
            Ok(s)
        }
        TaskSet::Explicit(indices) => {
            let mut s = Subset::empty(group);
            for &idx in indices {
                s.insert(group.element(idx as usize)?);
            }
            Ok(s)
        }
    }
}

/// Next mask with the same popcount (Gosper). Returns `None` past the top.
fn next_same_popcount(mask: u64, order: usize) -> Option<u64> {
    let c = mask & mask.wrapping_neg();
    let r = mask.checked_add(c)?;
    let next = (((r ^ mask) >> 2) / c) | r;
    (next < (1u64 << order)).then_some(next)
}

fn enumerate_tasks(cfg: &SurveyConfig, groups: &[GroupContext]) -> Result<Vec<(usize, TaskSet)>> {
    let mut tasks = Vec::new();
    for (gi, ctx) in groups.iter().enumerate() {
        let order = ctx.group.order();
        match &cfg.subset_mode {
            SubsetMode::Exhaustive => {
                if order > 20 {
                    bail!(
                        "exhaustive mode needs order <= 20, {} has order {order}",
                        ctx.group.label()
                    );
                }
                for mask in 1u64..(1u64 << order) {
                    tasks.push((gi, TaskSet::Mask(mask)));
                }
            }
            SubsetMode::Random { count, seed } => {
                let mut rng = SplitMix64::new(*seed);
                for _ in 0..*count {
                    loop {
                        let mut indices = Vec::new();
                        for idx in 0..order {
                            if rng.below(2) == 1 {
                                indices.push(idx as u16);
                            }
                        }
                        if !indices.is_empty() {
                            tasks.push((gi, TaskSet::Explicit(indices)));
                            break;
                        }
                    }
                }
            }
            SubsetMode::AllOfSize { k } => {
                if order > 64 {
                    bail!(
                        "all-of-size mode needs order <= 64, {} has order {order}",
                        ctx.group.label()
                    );
                }
                if *k > order {
                    bail!(
                        "all-of-size k = {k} exceeds the order of {}",
                        ctx.group.label()
                    );
                }
                let mut mask = (1u64 << k) - 1;
                loop {
                    tasks.push((gi, TaskSet::Mask(mask)));
                    match next_same_popcount(mask, order) {
                        Some(next) => mask = next,
                        None => break,
                    }
                }
            }
        }
    }
    Ok(tasks)
}

/// Per-check pass/fail/not-applicable tallies, derived from rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Summary {
    pub rows: usize,
    pub tallies: Vec<(Check, [usize; 3])>,
    pub refuted: bool,
}

impl Summary {
    fn from_rows(checks: &[Check], rows: &[SurveyRow]) -> Summary {
        let mut tallies: Vec<(Check, [usize; 3])> =
            checks.iter().map(|c| (*c, [0usize; 3])).collect();
        for row in rows {
            for (check, tally) in &mut tallies {
                let key = format!("{}_pass", check.name());
                let value = row
                    .fields
                    .iter()
                    .find(|(k, _)| *k == key)
                    .map(|(_, v)| v.as_str());
                match value {
                    Some("pass") => tally[0] += 1,
                    Some("fail") => tally[1] += 1,
                    _ => tally[2] += 1,
                }
            }
        }
        let refuted = tallies
            .iter()
            .any(|(c, t)| c.guaranteed() && t[1] > 0);
        Summary { rows: rows.len(), tallies, refuted }
    }

    pub fn section(&self) -> Section {
        let mut s = Section::new("summary");
        s.push("rows", self.rows);
        for (check, t) in &self.tallies {
            s.push(check.name(), format!("pass={} fail={} na={}", t[0], t[1], t[2]));
        }
        s.push("verdict", if self.refuted { "refuted" } else { "ok" });
        s
    }
}

pub struct Survey {
    pub config: SurveyConfig,
    pub rows: Vec<SurveyRow>,
    pub summary: Summary,
}

impl Survey {
    pub fn document(&self) -> Document {
        let mut doc = Document::new();
        doc.push(self.config.section());
        for row in &self.rows {
            doc.push(row.section());
        }
        doc.push(self.summary.section());
        doc
    }

    /// One csv line per row under a real column header.
    pub fn to_csv(&self) -> Result<String> {
        let cols = columns(&self.config.checks);
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&cols)?;
        for row in &self.rows {
            let record: Vec<&str> = row.fields.iter().map(|(_, v)| v.as_str()).collect();
            if record.len() != cols.len() {
                bail!("row with {} cells under {} columns", record.len(), cols.len());
            }
            w.write_record(&record)?;
        }
        Ok(String::from_utf8(w.into_inner()?)?)
    }

    pub fn to_table(&self) -> Result<String> {
        let cols = columns(&self.config.checks);
        crate::report::render_table(
            &cols,
            self.rows
                .iter()
                .map(|r| r.fields.iter().map(|(_, v)| v.as_str()).collect()),
        )
    }
}

/// Runs every requested check over the enumerated subsets. Row order is
/// the enumeration order regardless of worker count.
pub fn run_survey(cfg: &SurveyConfig) -> Result<Survey> {
    cfg.validate()?;
    let needs_subgroups = cfg
        .checks
        .iter()
        .any(|c| matches!(c, Check::Kneser | Check::Hamidoune | Check::Covering));
    let mut groups = Vec::new();
    for spec in &cfg.groups {
        let group = crate::groupio::resolve_group(spec)?;
        let subgroups = if needs_subgroups {
            Some(enumerate_subgroups(&group)?)
        } else {
            None
        };
        groups.push(GroupContext { group, subgroups });
    }
    let tasks = enumerate_tasks(cfg, &groups)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()
        .context("building worker pool")?;
    let rows: Result<Vec<SurveyRow>> = pool.install(|| {
        tasks
            .par_iter()
            .map(|(gi, task)| {
                let ctx = &groups[*gi];
                let a = task_subset(&ctx.group, task)?;
                build_row(ctx, &a, cfg)
            })
            .collect()
    });
    let rows = rows?;
    let summary = Summary::from_rows(&cfg.checks, &rows);
    Ok(Survey { config: cfg.clone(), rows, summary })
}

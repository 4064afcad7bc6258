//! Acceptance scoreboard: one test per criterion, each printing a single
//! pass/fail line. Run with `--nocapture` to see the lines for passing
//! criteria too; failures always surface theirs in the panic message.

use grpdouble::survey::{run_survey, Check, SubsetMode, SurveyConfig};
use grpdouble_core::{
    adjoint_identity_check, analytic_pipeline, build_group, covering_frontier,
    covering_frontier_among, enumerate_subgroups, fourfold, freiman_coset,
    hamidoune_witness_among, jump_check, kneser_witness_among, norm_identity_check, ratio,
    ratio_int, ratio_string, FreimanOutcome, Group, GroupFunction, Rational, Subset,
};
use std::collections::BTreeSet;
use std::sync::Arc;
use std::time::{Duration, Instant};

fn criterion(number: u32, label: &str, body: impl FnOnce() -> Result<(), String>) {
    match body() {
        Ok(()) => println!("criterion {number} ({label}): pass"),
        Err(msg) => {
            println!("criterion {number} ({label}): FAIL {msg}");
            panic!("criterion {number} ({label}): {msg}");
        }
    }
}

/// The test corpus. Order filters select per-criterion ranges; the order
/// 16 slice carries cyclic 2 through 16, dihedral of orders 4 through 16,
/// the quaternion group, the Klein four group, and small product builds.
fn corpus(max_order: usize) -> Vec<Arc<Group>> {
    let mut specs: Vec<String> = Vec::new();
    for n in 2..=32 {
        specs.push(format!("cyclic:{n}"));
    }
    for n in 2..=16 {
        specs.push(format!("dihedral:{n}"));
    }
    specs.push("symmetric:3".into());
    specs.push("symmetric:4".into());
    specs.push("quaternion:8".into());
    for p in [
        "product:cyclic:2,cyclic:2",
        "product:cyclic:2,cyclic:4",
        "product:cyclic:2,cyclic:6",
        "product:cyclic:2,cyclic:8",
        "product:cyclic:3,cyclic:3",
        "product:cyclic:4,cyclic:4",
        "product:cyclic:2,product:cyclic:2,cyclic:2",
        "product:cyclic:2,dihedral:3",
        "product:cyclic:2,dihedral:4",
        "product:cyclic:2,quaternion:8",
        "product:cyclic:2,cyclic:16",
        "product:cyclic:4,cyclic:8",
    ] {
        specs.push(p.into());
    }
    let mut groups: Vec<Arc<Group>> = specs
        .iter()
        .map(|s| Arc::new(build_group(s).expect("corpus spec")))
        .filter(|g| g.order() <= max_order)
        .collect();
    groups.sort_by_key(|g| (g.order(), g.label().to_string()));
    groups
}

fn mask_subset(group: &Arc<Group>, mask: u64) -> Subset {
    let mut s = Subset::empty(group);
    let mut rest = mask;
    while rest != 0 {
        let idx = rest.trailing_zeros() as usize;
        s.insert(group.element(idx).expect("mask within order"));
        rest &= rest - 1;
    }
    s
}

fn subset(group: &Arc<Group>, indices: &[usize]) -> Subset {
    let mut s = Subset::empty(group);
    for &i in indices {
        s.insert(group.element(i).expect("index within order"));
    }
    s
}

fn indices_text(s: &Subset) -> String {
    s.to_indices()
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

fn fail<T>(msg: String) -> Result<T, String> {
    Err(msg)
}

#[test]
fn criterion_01_sharp_threshold_example() {
    criterion(1, "sharp threshold on cyclic:4", || {
        let start = Instant::now();
        let g = Arc::new(build_group("cyclic:4").unwrap());
        let a = subset(&g, &[0, 1]);
        let d = a.doubling().map_err(|e| e.to_string())?;
        if d.ratio != ratio(3, 2) || d.product_size != 3 {
            return fail(format!(
                "expected ratio exactly 3/2 with |AA^-1| = 3, got {} with {}",
                ratio_string(&d.ratio),
                d.product_size
            ));
        }
        let subgroups = enumerate_subgroups(&g).map_err(|e| e.to_string())?;
        let mut smallest_coset = usize::MAX;
        for h in &subgroups {
            for x in g.elements() {
                if a.is_subset_of(&h.translate(x)).map_err(|e| e.to_string())? {
                    smallest_coset = smallest_coset.min(h.len());
                }
            }
        }
        if smallest_coset != 4 {
            return fail(format!(
                "smallest coset containing A has size {smallest_coset}, expected 4"
            ));
        }
        if 2 * smallest_coset <= 3 * a.len() {
            return fail(String::from("coset size fails to exceed 3/2 of |A|"));
        }
        let frontier = covering_frontier(&a).map_err(|e| e.to_string())?;
        if !frontier
            .entries
            .iter()
            .any(|e| e.subgroup.len() == 1 && e.r == 2)
        {
            return fail(String::from("frontier is missing the (|H|=1, R=2) entry"));
        }
        let elapsed = start.elapsed();
        if elapsed >= Duration::from_secs(1) {
            return fail(format!("took {elapsed:?}, budget is 1 s"));
        }
        Ok(())
    });
}

#[test]
fn criterion_02_small_doubling_coset_detector() {
    criterion(2, "coset detector below ratio 3/2, order <= 16", || {
        let start = Instant::now();
        let threshold = ratio(3, 2);
        for g in corpus(16) {
            for mask in 1..(1u64 << g.order()) {
                let a = mask_subset(&g, mask);
                match freiman_coset(&a).map_err(|e| e.to_string())? {
                    FreimanOutcome::NotApplicable { ratio } => {
                        if ratio < threshold {
                            return fail(format!(
                                "{} A={{{}}}: ratio {} below 3/2 marked not applicable",
                                g.label(),
                                indices_text(&a),
                                ratio_string(&ratio)
                            ));
                        }
                    }
                    FreimanOutcome::Found { subgroup, representative, ratio } => {
                        let expected = a
                            .inverse()
                            .product(&a)
                            .map_err(|e| e.to_string())?;
                        if subgroup != expected {
                            return fail(format!(
                                "{} A={{{}}}: returned H differs from A^-1A",
                                g.label(),
                                indices_text(&a)
                            ));
                        }
                        if !subgroup.is_subgroup() {
                            return fail(format!(
                                "{} A={{{}}}: H = A^-1A is not a subgroup",
                                g.label(),
                                indices_text(&a)
                            ));
                        }
                        let coset = subgroup.translate(representative);
                        if !a.is_subset_of(&coset).map_err(|e| e.to_string())? {
                            return fail(format!(
                                "{} A={{{}}}: A escapes the coset {}H",
                                g.label(),
                                indices_text(&a),
                                representative.index()
                            ));
                        }
                        let size_bound = ratio * ratio_int(a.len() as u64);
                        if ratio_int(subgroup.len() as u64) > size_bound {
                            return fail(format!(
                                "{} A={{{}}}: |H| = {} exceeds ratio times |A|",
                                g.label(),
                                indices_text(&a),
                                subgroup.len()
                            ));
                        }
                    }
                    FreimanOutcome::Refuted { candidate, ratio, detail } => {
                        return fail(format!(
                            "{} A={{{}}} ratio {}: refuted ({detail}); candidate {{{}}}",
                            g.label(),
                            indices_text(&a),
                            ratio_string(&ratio),
                            indices_text(&candidate)
                        ));
                    }
                }
            }
        }
        let elapsed = start.elapsed();
        if elapsed >= Duration::from_secs(600) {
            return fail(format!("took {elapsed:?}, budget is 600 s"));
        }
        Ok(())
    });
}

#[test]
fn criterion_03_support_floor_inequality() {
    criterion(3, "convolution floor 2|A| - |AA^-1|, order <= 16", || {
        for g in corpus(16) {
            for mask in 1..(1u64 << g.order()) {
                let a = mask_subset(&g, mask);
                let r = jump_check(&a).map_err(|e| e.to_string())?;
                if !r.pass || (r.min_value as i128) < (r.bound as i128) {
                    return fail(format!(
                        "{} A={{{}}}: min {} under bound {}",
                        g.label(),
                        indices_text(&a),
                        r.min_value,
                        r.bound
                    ));
                }
            }
        }
        let z4 = Arc::new(build_group("cyclic:4").unwrap());
        let r = jump_check(&subset(&z4, &[0, 1])).map_err(|e| e.to_string())?;
        if r.min_value != 1 || r.bound != 1 {
            return fail(format!(
                "cyclic:4 A={{0,1}}: expected equality at 1, got min {} bound {}",
                r.min_value, r.bound
            ));
        }
        let z8 = Arc::new(build_group("cyclic:8").unwrap());
        let r = jump_check(&subset(&z8, &[0, 2, 4])).map_err(|e| e.to_string())?;
        if r.min_value != 2 || r.bound != 2 {
            return fail(format!(
                "cyclic:8 A={{0,2,4}}: expected equality at 2, got min {} bound {}",
                r.min_value, r.bound
            ));
        }
        Ok(())
    });
}

#[test]
fn criterion_04_small_quotient_forces_two_sided_symmetry() {
    criterion(4, "|AA^-1| < 2|A| forces AA^-1 = A^-1A, order <= 16", || {
        for g in corpus(16) {
            for mask in 1..(1u64 << g.order()) {
                let a = mask_subset(&g, mask);
                let d = a.doubling().map_err(|e| e.to_string())?;
                if d.product_size < 2 * d.set_size && !d.symmetric_agreement {
                    let right = a.product(&a.inverse()).map_err(|e| e.to_string())?;
                    let left = a.inverse().product(&a).map_err(|e| e.to_string())?;
                    return fail(format!(
                        "counterexample {} A={{{}}}: AA^-1={{{}}} but A^-1A={{{}}} \
                         with |AA^-1| = {} < 2|A| = {}",
                        g.label(),
                        indices_text(&a),
                        indices_text(&right),
                        indices_text(&left),
                        d.product_size,
                        2 * d.set_size
                    ));
                }
            }
        }
        Ok(())
    });
}

#[test]
fn criterion_05_norm_and_adjoint_identities() {
    criterion(5, "norm equality, lower bound, adjoint triples", || {
        for g in corpus(16) {
            for mask in 1..(1u64 << g.order()) {
                let a = mask_subset(&g, mask);
                let r = norm_identity_check(&a).map_err(|e| e.to_string())?;
                if !r.equal {
                    return fail(format!(
                        "{} A={{{}}}: squared norms differ, {} vs {}",
                        g.label(),
                        indices_text(&a),
                        r.norm_sq_left,
                        r.norm_sq_right
                    ));
                }
                if !r.bound_pass {
                    return fail(format!(
                        "{} A={{{}}}: squared norm under |A|^4/|AA^-1| = {}",
                        g.label(),
                        indices_text(&a),
                        ratio_string(&r.bound)
                    ));
                }
            }
        }
        for (gi, g) in corpus(16).into_iter().enumerate() {
            let mut rng = grpdouble::SplitMix64::new(0x50 + gi as u64);
            let random_function = |rng: &mut grpdouble::SplitMix64| {
                let values: Vec<Rational> = (0..g.order())
                    .map(|_| ratio(rng.below(9) as i64 - 4, rng.below(3) as i64 + 1))
                    .collect();
                GroupFunction::from_values(&g, values).expect("value count matches order")
            };
            for _ in 0..10_000 {
                let f = random_function(&mut rng);
                let h = random_function(&mut rng);
                let k = random_function(&mut rng);
                if !adjoint_identity_check(&f, &h, &k).map_err(|e| e.to_string())? {
                    return fail(format!("{}: adjoint triple identity broke", g.label()));
                }
            }
        }
        Ok(())
    });
}

#[test]
fn criterion_06_symmetric_periodicity_witness() {
    criterion(6, "abelian periodicity witness, order <= 24", || {
        for g in corpus(24).into_iter().filter(|g| g.is_abelian()) {
            let subgroups = enumerate_subgroups(&g).map_err(|e| e.to_string())?;
            for mask in 1..(1u64 << g.order()) {
                let a = mask_subset(&g, mask);
                let w = kneser_witness_among(&a, &subgroups).map_err(|e| e.to_string())?;
                if !w.found {
                    return fail(format!(
                        "{} A={{{}}}: no witness subgroup",
                        g.label(),
                        indices_text(&a)
                    ));
                }
            }
        }
        let z9 = Arc::new(build_group("cyclic:9").unwrap());
        let a = subset(&z9, &[0, 1, 3, 4, 6, 7]);
        let subgroups = enumerate_subgroups(&z9).map_err(|e| e.to_string())?;
        let w = kneser_witness_among(&a, &subgroups).map_err(|e| e.to_string())?;
        let h = w.subgroup.ok_or_else(|| String::from("fixture: no subgroup"))?;
        if h.to_indices() != [0, 3, 6] {
            return fail(format!(
                "fixture cyclic:9: witness {{{}}}, expected {{0,3,6}}",
                indices_text(&h)
            ));
        }
        let d = a.product(&a.inverse()).map_err(|e| e.to_string())?;
        let ah = a.product(&h).map_err(|e| e.to_string())?;
        if d.len() != 9 || ah.len() != 6 || d.len() + h.len() < 2 * ah.len() {
            return fail(format!(
                "fixture cyclic:9: |D| = {}, |AH| = {}, |H| = {}",
                d.len(),
                ah.len(),
                h.len()
            ));
        }
        Ok(())
    });
}

#[test]
fn criterion_07_two_sided_periodicity_witness() {
    criterion(7, "periodicity witness on every group, order <= 16", || {
        for g in corpus(16) {
            let subgroups = enumerate_subgroups(&g).map_err(|e| e.to_string())?;
            for mask in 1..(1u64 << g.order()) {
                let a = mask_subset(&g, mask);
                let w = hamidoune_witness_among(&a, &subgroups).map_err(|e| e.to_string())?;
                if !w.found {
                    return fail(format!(
                        "{} A={{{}}}: neither branch produced a subgroup",
                        g.label(),
                        indices_text(&a)
                    ));
                }
            }
        }
        Ok(())
    });
}

#[test]
fn criterion_08_covering_bound_on_the_frontier() {
    criterion(8, "frontier entry with R <= 2/e and |H| <= 2|A|", || {
        let two = ratio_int(2);
        for g in corpus(16) {
            let subgroups = enumerate_subgroups(&g).map_err(|e| e.to_string())?;
            for mask in 1..(1u64 << g.order()) {
                let a = mask_subset(&g, mask);
                let d = a.doubling().map_err(|e| e.to_string())?;
                if d.ratio >= two {
                    continue;
                }
                let epsilon = two.clone() - d.ratio.clone();
                let r_bound = two.clone() / epsilon;
                let frontier =
                    covering_frontier_among(&a, &subgroups).map_err(|e| e.to_string())?;
                if frontier.entry_within(&r_bound, 2 * a.len()).is_none() {
                    return fail(format!(
                        "{} A={{{}}} ratio {}: no entry with R <= {} and |H| <= {}",
                        g.label(),
                        indices_text(&a),
                        ratio_string(&d.ratio),
                        ratio_string(&r_bound),
                        2 * a.len()
                    ));
                }
            }
        }
        Ok(())
    });
}

#[test]
fn criterion_09_pipeline_collapses_cosets() {
    criterion(9, "pipeline ends at R = 1 on cosets, order <= 32", || {
        let epsilon = ratio(1, 2);
        for g in corpus(32) {
            let subgroups = enumerate_subgroups(&g).map_err(|e| e.to_string())?;
            for h in &subgroups {
                let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
                for x in g.elements() {
                    let coset = h.translate(x);
                    if !seen.insert(coset.to_indices()) {
                        continue;
                    }
                    let report = analytic_pipeline(&coset, &epsilon).map_err(|e| {
                        format!(
                            "{} coset {{{}}}: pipeline error: {e}",
                            g.label(),
                            indices_text(&coset)
                        )
                    })?;
                    if !report.success || report.r != Some(1) {
                        return fail(format!(
                            "{} coset {{{}}}: success={} r={:?} failed_step={:?}",
                            g.label(),
                            indices_text(&coset),
                            report.success,
                            report.r,
                            report.failed_step
                        ));
                    }
                    if report.steps.iter().any(|s| !s.pass) {
                        return fail(format!(
                            "{} coset {{{}}}: a step is marked failed in a successful run",
                            g.label(),
                            indices_text(&coset)
                        ));
                    }
                    let mass = fourfold(&coset).map_err(|e| e.to_string())?.total_mass();
                    let expected = ratio_int((coset.len() as u64).pow(4));
                    if mass != expected {
                        return fail(format!(
                            "{} coset {{{}}}: fourfold mass {} differs from |A|^4 = {}",
                            g.label(),
                            indices_text(&coset),
                            ratio_string(&mass),
                            ratio_string(&expected)
                        ));
                    }
                }
            }
        }
        Ok(())
    });
}

#[test]
fn criterion_10_survey_determinism_and_speed() {
    criterion(10, "survey of cyclic:16 reproducible and under budget", || {
        let mut cfg = SurveyConfig {
            groups: vec![String::from("cyclic:16")],
            subset_mode: SubsetMode::Exhaustive,
            checks: vec![Check::Jump, Check::Freiman],
            epsilon: None,
            output: None,
            workers: 1,
        };
        let start = Instant::now();
        let first = run_survey(&cfg).map_err(|e| e.to_string())?;
        let elapsed = start.elapsed();
        if elapsed >= Duration::from_secs(600) {
            return fail(format!("single run took {elapsed:?}, budget is 600 s"));
        }
        if first.summary.rows != 65_535 {
            return fail(format!("expected 65535 rows, got {}", first.summary.rows));
        }
        if first.summary.refuted {
            return fail(String::from("survey refuted a guaranteed check"));
        }
        let bytes = first.document().emit();
        let again = run_survey(&cfg).map_err(|e| e.to_string())?.document().emit();
        if again != bytes {
            return fail(String::from("repeat run changed output bytes"));
        }
        cfg.workers = 8;
        let wide = run_survey(&cfg).map_err(|e| e.to_string())?.document().emit();
        if wide != bytes {
            return fail(String::from("worker count changed output bytes"));
        }
        Ok(())
    });
}

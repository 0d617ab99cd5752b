use std::collections::BTreeMap;
use std::time::Instant;

use anyhow::Result;
use serde::Serialize;
use simplegrp::theorem::{
    corollary_excluded, dihedral_violations, excluded_traces, involution_lemma_cycle_types,
    separation_classes, verify_corollary, verify_mathieu_fixtures, verify_proposition, Clause,
    Counterexample, SeparationClass, SweepMode,
};

use crate::args::{DegreesArgs, ModeArg, SweepArgs, VerifyCmd};
use crate::{report, Outcome};

#[derive(Serialize)]
struct SweepResult {
    degree: usize,
    mode: SweepMode,
    excluded_fixed_points: Vec<usize>,
    /// How the excluded set was read.
    note: Option<&'static str>,
    per_clause: BTreeMap<&'static str, usize>,
    /// Violating generators by their fixed-point count.
    by_fixed_points: BTreeMap<usize, usize>,
    counterexamples: Vec<Counterexample>,
}

const COROLLARY_NOTE: &str =
    "fixed-point ratios (n-2^k)/n for k in {0,1,2}; the literal 2^k/n reading is not checked";

fn sweep(a: &SweepArgs, corollary: bool) -> Result<Outcome> {
    let mode = match a.mode {
        ModeArg::Exhaustive => SweepMode::Exhaustive,
        ModeArg::Sample => SweepMode::Sample {
            count: a.sample,
            seed: a.seed.seed,
        },
    };
    let t = Instant::now();
    let (name, clauses, found, excluded) = if corollary {
        let found = verify_corollary(a.n, mode)?;
        (
            "corollary",
            vec![Clause::Corollary],
            found,
            corollary_excluded(a.n),
        )
    } else {
        let found = verify_proposition(a.n, mode)?;
        (
            "proposition",
            vec![Clause::Determinant, Clause::Trace],
            found,
            excluded_traces(a.n),
        )
    };
    eprintln!("{name} sweep of degree {} in {:.1?}", a.n, t.elapsed());

    let mut per_clause = BTreeMap::new();
    for c in &clauses {
        let count = found.iter().filter(|x| x.clause == *c).count();
        per_clause.insert(c.as_str(), count);
        println!(
            "{name} n={} clause={} counterexamples={count}",
            a.n,
            c.as_str()
        );
    }
    let mut by_fixed_points = BTreeMap::new();
    for x in &found {
        for w in &x.witness {
            if x.clause.broken_by(w, a.n) {
                *by_fixed_points.entry(w.fixed_points).or_insert(0) += 1;
            }
        }
    }
    for (fp, count) in &by_fixed_points {
        println!(
            "{name} n={} violating_fixed_points={fp} generators={count}",
            a.n
        );
    }
    if corollary {
        println!("note: {COROLLARY_NOTE}");
    }
    println!("{} counterexamples", found.len());
    let violations = !found.is_empty();
    let result = SweepResult {
        degree: a.n,
        mode,
        excluded_fixed_points: excluded,
        note: corollary.then_some(COROLLARY_NOTE),
        per_clause,
        by_fixed_points,
        counterexamples: found,
    };
    let seeds: Vec<(&str, u64)> = match mode {
        SweepMode::Sample { seed, .. } => vec![("master", seed)],
        SweepMode::Exhaustive => Vec::new(),
    };
    report::maybe_write(
        a.report.as_deref(),
        &format!("verify {name}"),
        a,
        &seeds,
        &result,
    )?;
    Ok(if violations {
        Outcome::Violations
    } else {
        Outcome::Ok
    })
}

fn degrees(a: &DegreesArgs, default: std::ops::RangeInclusive<usize>) -> Vec<usize> {
    a.n.map_or_else(|| default.collect(), |n| vec![n])
}

#[derive(Serialize)]
struct InvolutionRow {
    degree: usize,
    holds: bool,
    cycle_types: Vec<Vec<usize>>,
}

#[derive(Serialize)]
struct DihedralRow {
    degree: usize,
    holds: bool,
    violations: Vec<Counterexample>,
}

#[derive(Serialize)]
struct SeparationRow {
    degree: usize,
    holds: bool,
    classes: Vec<SeparationClass>,
}

pub fn run(cmd: &VerifyCmd) -> Result<Outcome> {
    match cmd {
        VerifyCmd::Proposition(a) => sweep(a, false),
        VerifyCmd::Corollary(a) => sweep(a, true),
        VerifyCmd::Involution(a) => {
            let mut rows = Vec::new();
            for n in degrees(a, 4..=9) {
                let cycle_types = involution_lemma_cycle_types(n)?;
                let holds = cycle_types == [vec![2, 2]];
                println!("involution n={n} holds={holds} cycle_types={cycle_types:?}");
                rows.push(InvolutionRow {
                    degree: n,
                    holds,
                    cycle_types,
                });
            }
            finish(rows.iter().all(|r| r.holds), a, "verify involution", &rows)
        }
        VerifyCmd::Dihedral(a) => {
            let mut rows = Vec::new();
            for n in degrees(a, 5..=6) {
                let violations = dihedral_violations(n)?;
                println!("dihedral n={n} violations={}", violations.len());
                rows.push(DihedralRow {
                    degree: n,
                    holds: violations.is_empty(),
                    violations,
                });
            }
            finish(rows.iter().all(|r| r.holds), a, "verify dihedral", &rows)
        }
        VerifyCmd::Theorem1(a) => {
            let mut rows = Vec::new();
            for n in degrees(a, 2..=6) {
                let classes = separation_classes(n)?;
                let holds = classes.iter().all(|c| c.fingerprints.len() == 1);
                println!("theorem1 n={n} classes={} separated={holds}", classes.len());
                for c in &classes {
                    println!(
                        "theorem1 n={n} order={} element_orders={:?} fingerprints={}",
                        c.order,
                        c.order_set,
                        c.fingerprints.len()
                    );
                }
                rows.push(SeparationRow {
                    degree: n,
                    holds,
                    classes,
                });
            }
            finish(rows.iter().all(|r| r.holds), a, "verify theorem1", &rows)
        }
        VerifyCmd::Mathieu(a) => {
            let report = verify_mathieu_fixtures()?;
            for row in &report.rows {
                let signs: Vec<&str> = row
                    .signs
                    .iter()
                    .map(|&s| if s > 0 { "+1" } else { "-1" })
                    .collect();
                let status = if row.passed() {
                    "ok".to_string()
                } else {
                    format!("MISMATCH: {}", row.problems().join("; "))
                };
                println!(
                    "mathieu {} n={} signs={} traces={:?} printed={:?} excluded={:?} {status}",
                    row.name,
                    row.degree,
                    signs.join(","),
                    row.traces,
                    row.printed_traces,
                    row.excluded
                );
            }
            let failures = report.failures().len();
            println!("{failures} of {} rows mismatched", report.rows.len());
            report::maybe_write(a.report.as_deref(), "verify mathieu", a, &[], &report)?;
            Ok(if failures == 0 {
                Outcome::Ok
            } else {
                Outcome::Violations
            })
        }
    }
}

fn finish<R: Serialize>(holds: bool, a: &DegreesArgs, command: &str, rows: &R) -> Result<Outcome> {
    report::maybe_write(a.report.as_deref(), command, a, &[], rows)?;
    Ok(if holds {
        Outcome::Ok
    } else {
        Outcome::Violations
    })
}

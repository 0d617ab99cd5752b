use std::time::Instant;

use anyhow::{ensure, Context, Result};
use serde::Serialize;
use simplegrp::dataset::{
    balance, census, enumerate_labeled, load, persist, render_census_csv, render_census_text,
    sample_labeled, subset_percent, DatasetHeader, DatasetStats, PairFilter,
};

use crate::args::DatasetCmd;
use crate::{report, Outcome};

pub fn run(cmd: &DatasetCmd) -> Result<Outcome> {
    match cmd {
        DatasetCmd::Generate(a) => {
            let filter = PairFilter::from(a.filter);
            let t = Instant::now();
            eprintln!(
                "labeling {} pairs of degree {}",
                filter.pair_count(a.n),
                a.n
            );
            let entries = enumerate_labeled(a.n, filter)?;
            persist(
                &a.out,
                &DatasetHeader {
                    degree: a.n,
                    filter,
                },
                &entries,
            )
            .with_context(|| format!("cannot write {}", a.out.display()))?;
            let stats = DatasetStats::of(a.n, &entries);
            eprintln!(
                "wrote {} entries to {} in {:.1?}",
                entries.len(),
                a.out.display(),
                t.elapsed()
            );
            print!("{}", stats.render_text());
            report::maybe_write(a.report.as_deref(), "dataset generate", a, &[], &stats)?;
        }
        DatasetCmd::Sample(a) => {
            let filter = PairFilter::from(a.filter);
            let t = Instant::now();
            let entries = sample_labeled(a.n, a.sample, a.seed.seed, filter)?;
            persist(
                &a.out,
                &DatasetHeader {
                    degree: a.n,
                    filter,
                },
                &entries,
            )
            .with_context(|| format!("cannot write {}", a.out.display()))?;
            let stats = DatasetStats::of(a.n, &entries);
            eprintln!(
                "wrote {} entries to {} in {:.1?}",
                entries.len(),
                a.out.display(),
                t.elapsed()
            );
            print!("{}", stats.render_text());
            report::maybe_write(
                a.report.as_deref(),
                "dataset sample",
                a,
                &[("master", a.seed.seed)],
                &stats,
            )?;
        }
        DatasetCmd::Balance(a) => {
            let (header, entries) =
                load(&a.input).with_context(|| format!("cannot read {}", a.input.display()))?;
            let mut out = balance(&entries, a.seed.seed)?;
            if a.percent < 100.0 {
                out = subset_percent(&out, a.percent, a.seed.seed)?;
            }
            persist(&a.out, &header, &out)
                .with_context(|| format!("cannot write {}", a.out.display()))?;
            let stats = DatasetStats::of(header.degree, &out);
            eprintln!("kept {} of {} entries", out.len(), entries.len());
            print!("{}", stats.render_text());
            report::maybe_write(
                a.report.as_deref(),
                "dataset balance",
                a,
                &[("master", a.seed.seed)],
                &stats,
            )?;
        }
        DatasetCmd::Stats(a) => {
            let (header, entries) =
                load(&a.input).with_context(|| format!("cannot read {}", a.input.display()))?;
            let stats = DatasetStats::of(header.degree, &entries);
            print!("{}", stats.render_text());
            if let Some(out) = &a.out {
                report::write_text(out, &stats.render_csv())?;
            }
        }
        DatasetCmd::Census(a) => {
            ensure!(
                (2..=6).contains(&a.n),
                "census supports 2 <= n <= 6, got {}",
                a.n
            );
            let t = Instant::now();
            let rows = census(a.n)?;
            eprintln!("census of degree {} in {:.1?}", a.n, t.elapsed());
            print!("{}", render_census_text(a.n, &rows));
            if let Some(out) = &a.out {
                report::write_text(out, &render_census_csv(&rows))?;
            }
            #[derive(Serialize)]
            struct CensusResult<'a> {
                rows: &'a [simplegrp::dataset::CensusRow],
            }
            report::maybe_write(
                a.report.as_deref(),
                "dataset census",
                a,
                &[],
                &CensusResult { rows: &rows },
            )?;
        }
    }
    Ok(Outcome::Ok)
}

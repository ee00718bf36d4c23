pub mod args;
pub mod commands;
pub mod decompose;
pub mod error;
pub mod selfcheck;

use args::{Cli, Command};
use commands::{NormArgs, Outcome};
use decompose::Selector;
use error::CliError;
use smashprod_core::weights::SamplerConfig;

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let d = cli.truncation;
    match &cli.command {
        Command::Decompose { file, nprime, tail_dim } => {
            let selector: Selector = nprime.parse()?;
            let report = decompose::decompose(file, &selector, *tail_dim, d, cli.seed)?;
            let body = match cli.format {
                args::Format::Text => report.render_text(),
                args::Format::Csv => report.render_csv(),
                args::Format::Json => {
                    let mut s = serde_json::to_string_pretty(&report).expect("serializable");
                    s.push('\n');
                    s
                }
            };
            Ok(Outcome { body, passed: report.passed() })
        }
        Command::HopfVerify { target } => commands::hopf_verify(target, d, cli.format),
        Command::SmashTable { target, table } => commands::smash_table(target, d, *table),
        Command::WeightCheck { w1, w2, radii, count, expect } => {
            let mut cfg = SamplerConfig::with_seed(cli.seed);
            if let Some(r) = radii {
                cfg.radii = r.clone();
            }
            if let Some(c) = count {
                cfg.count = *c;
            }
            commands::weight_check(w1, w2, &cfg, *expect, cli.format)
        }
        Command::WordWeight { group, radius, elements, subgroup } => {
            commands::word_weight(group, *radius, elements, subgroup.as_deref(), cli.format)
        }
        Command::Norm { r, s, degree, random, product_bound, max_p, series } => commands::norm(
            &NormArgs {
                r,
                s: *s,
                degree: *degree,
                random: *random,
                product_bound: *product_bound,
                max_p: *max_p,
                series: series.as_deref(),
                seed: cli.seed,
            },
            cli.format,
        ),
        Command::Selfcheck { lie } => selfcheck::selfcheck(d, cli.seed, lie, cli.format),
    }
}

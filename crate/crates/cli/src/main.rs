use std::io::{self, Write};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use permstat::bijection::{self, Verdict};
use permstat::enumerate::{self, CampaignConfig, CampaignReport};
use permstat::patterns;
use permstat::words::{self, DEFAULT_ORACLE_BOUND};
use permstat::Permutation;

/// Repeated letters in reduced words versus 321- and 3412-pattern counts.
///
/// Exit codes: 0 verified, 1 counterexample found, 2 usage or parse error.
#[derive(Debug, Parser)]
#[command(name = "permstat", version)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Length, support, rep, pattern counts and the level assignment of a permutation.
    Stats { perm: String },
    /// Check every permutation of S_n (or a rank range of it).
    Verify {
        #[arg(long = "n")]
        n: usize,
        /// First lexicographic rank, inclusive.
        #[arg(long)]
        from: Option<u64>,
        /// Last lexicographic rank, exclusive.
        #[arg(long)]
        to: Option<u64>,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
        jobs: u16,
        /// Run every size from 1 to n and report avoider counts.
        #[arg(long)]
        census: bool,
        /// Largest n a campaign may run.
        #[arg(long, env = "PERMSTAT_MAX_N", default_value_t = enumerate::DEFAULT_MAX_N)]
        max_n: usize,
    },
    /// Canonical reduced word, built by moving the largest letter into place.
    Word { perm: String },
    /// Witnesses outside the level map for each ten-pattern occurrence at the top level.
    Witness { perm: String },
    /// Brute-force check that every reduced word has the computed support.
    Oracle {
        #[arg(long = "max-n")]
        max_n: usize,
        #[arg(long, default_value_t = DEFAULT_ORACLE_BOUND)]
        oracle_bound: usize,
    },
}

enum Outcome {
    Verified,
    Counterexample,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Outcome::Verified) => ExitCode::SUCCESS,
        Ok(Outcome::Counterexample) => ExitCode::from(1),
        Err(e) => {
            eprintln!("permstat: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn parse_perm(text: &str) -> anyhow::Result<Permutation> {
    text.parse()
        .with_context(|| format!("cannot parse {text:?}"))
}

fn run(cli: &Cli) -> anyhow::Result<Outcome> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match &cli.command {
        Command::Stats { perm } => stats(&mut out, cli.format, &parse_perm(perm)?),
        Command::Verify {
            n,
            from,
            to,
            jobs,
            census,
            max_n,
        } => {
            let config = CampaignConfig { max_n: *max_n };
            if *census {
                if from.is_some() || to.is_some() {
                    bail!("--census runs whole groups and does not take --from/--to");
                }
                census_cmd(&mut out, cli.format, *n, *jobs as usize, &config)
            } else {
                verify(
                    &mut out,
                    cli.format,
                    *n,
                    *from,
                    *to,
                    *jobs as usize,
                    &config,
                )
            }
        }
        Command::Word { perm } => word(&mut out, cli.format, &parse_perm(perm)?),
        Command::Witness { perm } => witness(&mut out, cli.format, &parse_perm(perm)?),
        Command::Oracle {
            max_n,
            oracle_bound,
        } => oracle(&mut out, cli.format, *max_n, *oracle_bound),
    }
}

fn json_line<W: Write, T: Serialize>(out: &mut W, value: &T) -> anyhow::Result<()> {
    serde_json::to_writer(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

fn join(values: &[usize]) -> String {
    values
        .iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

#[derive(Serialize)]
struct StatsReport {
    w: Permutation,
    length: usize,
    support: Vec<usize>,
    rep: usize,
    patt: usize,
    patt_per_top: std::collections::BTreeMap<usize, usize>,
    avoids_phi: bool,
    repeat: Vec<usize>,
    xi: Vec<bijection::XiEntry>,
    verdict: Verdict,
    ok: bool,
}

fn stats<W: Write>(out: &mut W, format: Format, w: &Permutation) -> anyhow::Result<Outcome> {
    let counts = patterns::patt_321_3412(w);
    let theorem = bijection::verify_main(w);
    let (repeat, xi) = if w.len() >= 2 {
        let assignment = bijection::xi(w)?;
        (assignment.repeat_set.indices, assignment.xi_map)
    } else {
        (Vec::new(), Vec::new())
    };
    let report = StatsReport {
        w: w.clone(),
        length: w.length(),
        support: w.support(),
        rep: w.rep(),
        patt: counts.total,
        patt_per_top: counts.per_top,
        avoids_phi: theorem.avoids_phi,
        repeat,
        xi,
        verdict: theorem.verdict,
        ok: theorem.ok,
    };
    match format {
        Format::Json => json_line(out, &report)?,
        Format::Csv => {
            writeln!(out, "w,length,support,rep,patt,avoids_phi,verdict")?;
            writeln!(
                out,
                "{},{},{},{},{},{},{}",
                report.w,
                report.length,
                join(&report.support),
                report.rep,
                report.patt,
                report.avoids_phi,
                verdict_text(report.verdict)
            )?;
        }
        Format::Text => {
            writeln!(out, "w            {}", report.w)?;
            writeln!(out, "length       {}", report.length)?;
            writeln!(out, "support      {{{}}}", join(&report.support))?;
            writeln!(out, "rep          {}", report.rep)?;
            let per_top: Vec<String> = report
                .patt_per_top
                .iter()
                .map(|(n, c)| format!("{n}:{c}"))
                .collect();
            writeln!(
                out,
                "patt         {} (by top: {})",
                report.patt,
                per_top.join(" ")
            )?;
            writeln!(out, "avoids phi   {}", report.avoids_phi)?;
            writeln!(out, "repeat       {{{}}}", join(&report.repeat))?;
            for e in &report.xi {
                writeln!(
                    out,
                    "xi           {} -> {} ({})",
                    e.k,
                    concat(&e.values),
                    rule_text(e.rule)
                )?;
            }
            writeln!(out, "verdict      {}", verdict_text(report.verdict))?;
        }
    }
    Ok(if report.ok {
        Outcome::Verified
    } else {
        Outcome::Counterexample
    })
}

fn concat(values: &[usize]) -> String {
    let sep = if values.iter().any(|&v| v > 9) {
        " "
    } else {
        ""
    };
    values
        .iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join(sep)
}

fn verdict_text(v: Verdict) -> &'static str {
    match v {
        Verdict::Equal => "equal",
        Verdict::Strict => "strict",
    }
}

fn rule_text(rule: bijection::XiRule) -> &'static str {
    match rule {
        bijection::XiRule::CaseI => "I",
        bijection::XiRule::CaseII => "II",
        bijection::XiRule::CaseIII => "III",
        bijection::XiRule::Plus => "+",
    }
}

fn campaign_text<W: Write>(out: &mut W, r: &CampaignReport) -> anyhow::Result<()> {
    writeln!(
        out,
        "n={} ranks {}..{}: checked {}, failures {}, avoiders {}, equal {}, strict {} ({:.3}s)",
        r.n,
        r.from_rank,
        r.to_rank,
        r.checked,
        r.failures.len(),
        r.avoider_count,
        r.equal_count,
        r.strict_count,
        r.wall_time.as_secs_f64()
    )?;
    if let Some(first) = r.first_failure() {
        writeln!(out, "counterexample: {}", first.w)?;
        for reason in &first.reasons {
            writeln!(out, "  {reason}")?;
        }
    }
    Ok(())
}

fn verify<W: Write>(
    out: &mut W,
    format: Format,
    n: usize,
    from: Option<u64>,
    to: Option<u64>,
    jobs: usize,
    config: &CampaignConfig,
) -> anyhow::Result<Outcome> {
    let total = enumerate::factorial(n)?;
    let report =
        enumerate::run_campaign_range(n, from.unwrap_or(0), to.unwrap_or(total), jobs, config)?;
    match format {
        Format::Json => json_line(out, &report)?,
        Format::Csv => enumerate::write_census_csv(std::slice::from_ref(&report), &mut *out)?,
        Format::Text => campaign_text(out, &report)?,
    }
    Ok(if report.is_clean() {
        Outcome::Verified
    } else {
        Outcome::Counterexample
    })
}

fn census_cmd<W: Write>(
    out: &mut W,
    format: Format,
    n: usize,
    jobs: usize,
    config: &CampaignConfig,
) -> anyhow::Result<Outcome> {
    let reports = (1..=n)
        .map(|m| enumerate::run_campaign_with(m, jobs, config))
        .collect::<Result<Vec<_>, _>>()?;
    match format {
        Format::Json => json_line(out, &reports)?,
        Format::Csv => enumerate::write_census_csv(&reports, &mut *out)?,
        Format::Text => {
            for r in &reports {
                campaign_text(out, r)?;
            }
        }
    }
    Ok(if reports.iter().all(CampaignReport::is_clean) {
        Outcome::Verified
    } else {
        Outcome::Counterexample
    })
}

#[derive(Serialize)]
struct WordReport {
    w: Permutation,
    word: String,
    length: usize,
    ok: bool,
}

fn word<W: Write>(out: &mut W, format: Format, w: &Permutation) -> anyhow::Result<Outcome> {
    let canonical = words::canonical_word(w);
    let ok = canonical.evaluate() == *w && canonical.len() == w.length();
    let report = WordReport {
        w: w.clone(),
        word: canonical.to_string(),
        length: canonical.len(),
        ok,
    };
    match format {
        Format::Json => json_line(out, &report)?,
        Format::Csv => {
            writeln!(out, "w,word,length,ok")?;
            writeln!(
                out,
                "{},\"{}\",{},{}",
                report.w, report.word, report.length, report.ok
            )?;
        }
        Format::Text => {
            writeln!(out, "{}", report.word)?;
            writeln!(
                out,
                "evaluates back to {}: {}",
                report.w,
                if ok { "yes" } else { "NO" }
            )?;
        }
    }
    Ok(if ok {
        Outcome::Verified
    } else {
        Outcome::Counterexample
    })
}

fn witness<W: Write>(out: &mut W, format: Format, w: &Permutation) -> anyhow::Result<Outcome> {
    if w.len() < 2 {
        match format {
            Format::Json => json_line(
                out,
                &serde_json::json!({"w": w, "witnesses": [], "ok": true}),
            )?,
            Format::Csv => writeln!(out, "phi,occurrence,witness")?,
            Format::Text => writeln!(out, "{w}: a single letter has no level to inspect")?,
        }
        return Ok(Outcome::Verified);
    }
    let report = bijection::verify_level(w)?;
    match format {
        Format::Json => json_line(out, &report)?,
        Format::Csv => {
            writeln!(out, "phi,occurrence,witness")?;
            for wit in &report.witnesses {
                writeln!(
                    out,
                    "{},{},{}",
                    wit.phi,
                    concat(&wit.occurrence),
                    concat(&wit.witness)
                )?;
            }
        }
        Format::Text => {
            let image: Vec<String> = report.xi.iter().map(|e| concat(&e.values)).collect();
            writeln!(
                out,
                "level {}: |Repeat| = {}, [321;3412]_N = {}",
                report.level,
                report.repeat.len(),
                report.patt
            )?;
            writeln!(out, "image        {{{}}}", image.join(", "))?;
            if report.witnesses.is_empty() {
                writeln!(
                    out,
                    "no ten-pattern occurrence at level {}; the level map is a bijection",
                    report.level
                )?;
            }
            for wit in &report.witnesses {
                writeln!(
                    out,
                    "{:<6} occurrence {} -> witness {}",
                    wit.phi,
                    concat(&wit.occurrence),
                    concat(&wit.witness)
                )?;
            }
            for problem in &report.problems {
                writeln!(out, "problem: {problem}")?;
            }
        }
    }
    Ok(if report.ok {
        Outcome::Verified
    } else {
        Outcome::Counterexample
    })
}

#[derive(Serialize)]
struct OracleRow {
    n: usize,
    checked: u64,
    failures: Vec<Permutation>,
}

fn oracle<W: Write>(
    out: &mut W,
    format: Format,
    max_n: usize,
    bound: usize,
) -> anyhow::Result<Outcome> {
    if max_n > bound {
        bail!("--max-n {max_n} exceeds the oracle bound {bound}");
    }
    let mut rows = Vec::new();
    for n in 1..=max_n {
        let mut row = OracleRow {
            n,
            checked: 0,
            failures: Vec::new(),
        };
        for w in enumerate::iter_sn(n, 0, enumerate::factorial(n)?)? {
            row.checked += 1;
            if !words::check_support_well_defined(&w, bound)? {
                row.failures.push(w);
            }
        }
        rows.push(row);
    }
    match format {
        Format::Json => json_line(out, &rows)?,
        Format::Csv => {
            writeln!(out, "n,checked,failures")?;
            for r in &rows {
                writeln!(out, "{},{},{}", r.n, r.checked, r.failures.len())?;
            }
        }
        Format::Text => {
            for r in &rows {
                writeln!(
                    out,
                    "n={}: {} permutations, {} with inconsistent support",
                    r.n,
                    r.checked,
                    r.failures.len()
                )?;
            }
        }
    }
    Ok(if rows.iter().all(|r| r.failures.is_empty()) {
        Outcome::Verified
    } else {
        Outcome::Counterexample
    })
}

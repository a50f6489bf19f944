//! Command-line interface: reproducible runs of the worked examples.
//!
//! Exit codes: 0 success, 1 computation failure or failed verification,
//! 2 argument parse error (clap's default).

mod proj;
mod report;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use qflag::cartan::{RootSystem, Weight};
use qflag::coordring::EqConfig;
use qflag::hochschild::{
    boundary, chain_equal, eta_apply, normalized_zero, one_tensor, two_cycle_p, CocycleSpec,
    TwistSpec,
};
use qflag::matunits::{build_p, is_flag_supported, is_projection, qtrace};
use qflag::repbuild::{build_irrep, RepRef};
use qflag::suite;
use std::sync::Arc;

#[derive(Parser)]
#[command(name = "qflag", version, about = "Exact computations on quantized coordinate rings and quantum flag manifolds")]
struct Cli {
    /// Equality-oracle budget (total endomorphism dimension for the exact
    /// oracle); env override QFLAG_EQ_BUDGET
    #[arg(long, global = true)]
    budget: Option<usize>,
    /// Word-length bound for the bounded fallback oracle; env override
    /// QFLAG_EQ_DEPTH
    #[arg(long = "fallback-d", global = true)]
    fallback_d: Option<usize>,
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Seed for sampled checks
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Markdown,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Build an irreducible module and report dimension, weights and
    /// relation checks
    BuildRep {
        #[arg(long = "type")]
        rs_type: String,
        #[arg(long)]
        weight: String,
    },
    /// Run the matrix-unit axiom suite on one module
    Units {
        #[arg(long = "type")]
        rs_type: String,
        #[arg(long)]
        weight: String,
        /// which checks to run (only "all" is defined)
        #[arg(long, default_value = "all")]
        check: String,
    },
    /// Build a twisted 2-cycle, check its boundary, and pair it with
    /// cocycles
    Cycle {
        #[arg(long = "type")]
        rs_type: String,
        #[arg(long)]
        weight: String,
        /// coefficient matrix: diag:<list> | unit:<m>[,<n>] |
        /// weight:<coords> | diag-index:<k> | zero-block
        #[arg(long)]
        proj: String,
        /// simple-root indices for the pairings, e.g. "a=1,2"
        #[arg(long, default_value = "a=all")]
        pair: String,
    },
    /// Pairing report: closed forms, contraction and pipeline values
    Pair {
        #[arg(long = "type")]
        rs_type: String,
        #[arg(long)]
        weight: String,
        /// coefficient matrix spec; repeatable
        #[arg(long, required = true)]
        proj: Vec<String>,
        /// include all simple roots (default; kept for symmetry)
        #[arg(long, default_value_t = true)]
        all_roots: bool,
        /// skip the chain pipeline (closed form + contraction only)
        #[arg(long, default_value_t = false)]
        no_pipeline: bool,
    },
    /// The quantum Grassmannian example
    Grassmannian {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        n: usize,
    },
    /// Linear-independence certificate for the rank-2 weight family
    Independence {
        /// family name; only "n-omega1-plus-omega2" is defined
        #[arg(long, default_value = "n-omega1-plus-omega2")]
        family: String,
        #[arg(long = "max-n", default_value_t = 8)]
        max_n: i64,
        #[arg(long = "type", default_value = "A2")]
        rs_type: String,
    },
    /// Batch-validate flag membership of matrix-unit entries
    Flags {
        #[arg(long = "type")]
        rs_type: String,
        #[arg(long)]
        weight: String,
        /// which check to run (only "membership" is defined)
        #[arg(long, default_value = "membership")]
        check: String,
    },
    /// Run the full verification suite plus module-specific checks; exits
    /// nonzero on any failure
    VerifyAll {
        #[arg(long = "type")]
        rs_type: String,
        #[arg(long)]
        weight: String,
    },
}

fn parse_weight(rs: &RootSystem, s: &str) -> Result<Weight> {
    let coords: Vec<i64> = s
        .split(',')
        .map(|t| t.trim().parse::<i64>().context("weight coordinate"))
        .collect::<Result<_>>()?;
    if coords.len() != rs.rank() {
        bail!("weight has {} coordinates, rank is {}", coords.len(), rs.rank());
    }
    Ok(Weight(coords))
}

fn build(rs_type: &str, weight: &str) -> Result<(Arc<RootSystem>, RepRef)> {
    let rs = Arc::new(RootSystem::parse(rs_type).map_err(|e| anyhow::anyhow!("{e}"))?);
    let hw = parse_weight(&rs, weight)?;
    let rep = build_irrep(&rs, &hw).map_err(|e| anyhow::anyhow!("{e}"))?;
    Ok((rs, rep))
}

fn eq_config(cli: &Cli) -> EqConfig {
    let mut cfg = EqConfig::default();
    if let Ok(v) = std::env::var("QFLAG_EQ_BUDGET") {
        if let Ok(v) = v.parse() {
            cfg.budget = v;
        }
    }
    if let Ok(v) = std::env::var("QFLAG_EQ_DEPTH") {
        if let Ok(v) = v.parse() {
            cfg.depth = v;
        }
    }
    if let Some(b) = cli.budget {
        cfg.budget = b;
    }
    if let Some(d) = cli.fallback_d {
        cfg.depth = d;
    }
    cfg
}

fn main() {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            let doc = serde_json::json!({ "error": format!("{e:#}") });
            eprintln!("{}", serde_json::to_string_pretty(&doc).unwrap());
            std::process::exit(1);
        }
    }
}

fn run(cli: &Cli) -> Result<i32> {
    let cfg = eq_config(cli);
    match &cli.command {
        Command::BuildRep { rs_type, weight } => {
            let (_, rep) = build(rs_type, weight)?;
            let doc = report::build_rep_report(&rep);
            report::emit(&doc, cli.format == Format::Markdown, cli.format == Format::Csv);
            Ok(0)
        }
        Command::Units { rs_type, weight, check } => {
            if check != "all" {
                bail!("unknown check set {check:?}; only \"all\" is defined");
            }
            let (_, rep) = build(rs_type, weight)?;
            let checks = suite::matrix_unit_checks(&rep, cfg.budget.max(suite::EXACT_BUDGET_DIM3));
            let all_ok = checks.iter().all(|c| c.passed);
            let doc = report::checks_report("units", &checks);
            report::emit(&doc, cli.format == Format::Markdown, cli.format == Format::Csv);
            Ok(if all_ok { 0 } else { 1 })
        }
        Command::Cycle { rs_type, weight, proj, pair } => {
            let (rs, rep) = build(rs_type, weight)?;
            let c = proj::parse_proj(&rep, proj)?;
            let roots = proj::parse_roots(&rs, pair)?;
            let rank = rs.rank();
            if !is_projection(&c) || !is_flag_supported(&rep, &c) {
                bail!("coefficient matrix must be an idempotent supported on equal weights");
            }
            let p = build_p(&rep, &c);
            let cp = two_cycle_p(&p).map_err(|e| anyhow::anyhow!("{e}"))?;
            let b = boundary(&cp, &TwistSpec::theta(rank)).map_err(|e| anyhow::anyhow!("{e}"))?;
            let km = rep.k_weight_diag(&rs.two_rho(), -1);
            let target = one_tensor(&qtrace(&km, &p).map_err(|e| anyhow::anyhow!("{e}"))?);
            let bd = chain_equal(&b, &target, &cfg);
            let nz = normalized_zero(&b, &cfg);
            let mut pairings = Vec::new();
            for a in &roots {
                let v = eta_apply(&CocycleSpec::eta(*a), &cp).map_err(|e| anyhow::anyhow!("{e}"))?;
                pairings.push((*a, v));
            }
            let doc = report::cycle_report(&rep, proj, cp.num_terms(), &bd, &nz, &pairings);
            report::emit(&doc, cli.format == Format::Markdown, cli.format == Format::Csv);
            Ok(if bd.equal && nz.equal { 0 } else { 1 })
        }
        Command::Pair { rs_type, weight, proj, no_pipeline, .. } => {
            let (_, rep) = build(rs_type, weight)?;
            let mut reports = Vec::new();
            for spec in proj {
                let c = proj::parse_proj(&rep, spec)?;
                let rpt = qflag::pairings::pairing_report(&rep, &c, spec, !no_pipeline)
                    .map_err(|e| anyhow::anyhow!("{e}"))?;
                reports.push(rpt);
            }
            let ok = reports.iter().all(|r| r.all_agree);
            if cli.format == Format::Markdown {
                print!("{}", report::pair_markdown(&reports));
            } else {
                let doc = report::pair_json(&reports);
                report::emit(&doc, false, cli.format == Format::Csv);
            }
            Ok(if ok { 0 } else { 1 })
        }
        Command::Grassmannian { r, n } => {
            let g = qflag::flags::grassmannian_projection(*r, *n)
                .map_err(|e| anyhow::anyhow!("{e}"))?;
            let checks = suite::grassmannian_checks(*r, *n);
            let ok = checks.iter().all(|c| c.passed);
            let doc = report::grassmannian_report(&g, &checks);
            report::emit(&doc, cli.format == Format::Markdown, cli.format == Format::Csv);
            Ok(if ok { 0 } else { 1 })
        }
        Command::Independence { family, max_n, rs_type } => {
            if family != "n-omega1-plus-omega2" {
                bail!("unknown family {family:?}; only \"n-omega1-plus-omega2\" is defined");
            }
            if *max_n < 2 {
                bail!("--max-n must be at least 2");
            }
            let rs = RootSystem::parse(rs_type).map_err(|e| anyhow::anyhow!("{e}"))?;
            if rs.rank() != 2 {
                bail!("the weight family is defined for rank-2 types");
            }
            let cert = suite::family_certificate(rs_type, *max_n);
            let doc = report::certificate_report(rs_type, &cert);
            report::emit(&doc, cli.format == Format::Markdown, cli.format == Format::Csv);
            Ok(if cert.all_pairwise_independent { 0 } else { 1 })
        }
        Command::Flags { rs_type, weight, check } => {
            if check != "membership" {
                bail!("unknown flag check {check:?}; only \"membership\" is defined");
            }
            let (_, rep) = build(rs_type, weight)?;
            let mut rows = Vec::new();
            let mut all_ok = true;
            for m in 0..rep.dim() {
                for n in 0..rep.dim() {
                    let nm = qflag::matunits::unit_n(&rep, m, n);
                    let mm = qflag::matunits::unit_m(&rep, m, n);
                    let mut n_left = true;
                    let mut m_right = true;
                    for i in 0..rep.dim() {
                        for j in 0..rep.dim() {
                            n_left = n_left
                                && qflag::flags::in_flag(nm.at(i, j), qflag::flags::Side::Left)
                                    == (m == n || rep.weight(m) == rep.weight(n));
                            m_right = m_right
                                && qflag::flags::in_flag(mm.at(i, j), qflag::flags::Side::Right)
                                    == (m == n || rep.weight(m) == rep.weight(n));
                        }
                    }
                    all_ok = all_ok && n_left && m_right;
                    rows.push(serde_json::json!({
                        "m": m + 1,
                        "n": n + 1,
                        "equal_weights": rep.weight(m) == rep.weight(n),
                        "n_unit_left_flag_iff_equal_weights": n_left,
                        "m_unit_right_flag_iff_equal_weights": m_right,
                    }));
                }
            }
            let doc = serde_json::json!({
                "schema_version": report::SCHEMA_VERSION,
                "kind": "flags",
                "module": rep.label(),
                "membership": rows,
                "all_passed": all_ok,
            });
            report::emit(&doc, cli.format == Format::Markdown, cli.format == Format::Csv);
            Ok(if all_ok { 0 } else { 1 })
        }
        Command::VerifyAll { rs_type, weight } => {
            let (_, rep) = build(rs_type, weight)?;
            let mut checks = Vec::new();
            checks.push(suite::Check {
                name: format!("defining relations on {}", rep.label()),
                passed: qflag::repbuild::check_all_relations(&rep),
                oracle: None,
                detail: "matrix identities including Serre and S^2".into(),
            });
            if rep.dim() <= 3 {
                checks.extend(suite::matrix_unit_checks(&rep, suite::EXACT_BUDGET_DIM3));
            }
            checks.extend(suite::full_suite(cli.seed));
            let failed = checks.iter().filter(|c| !c.passed).count();
            for c in &checks {
                let oracle = c
                    .oracle
                    .map(|o| format!(" [{o}]"))
                    .unwrap_or_default();
                println!("{} {}{}", if c.passed { "PASS" } else { "FAIL" }, c.name, oracle);
            }
            println!("{} checks, {} failed", checks.len(), failed);
            Ok(if failed == 0 { 0 } else { 1 })
        }
    }
}

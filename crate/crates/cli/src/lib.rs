//! `rtt-verify`: inspect the catalog, run single checks and the full suite.
//!
//! Exit codes: 0 when every check passes, 1 when one fails, 2 on input or
//! usage errors.

pub mod input;

use std::ffi::OsString;
use std::io::Write;
use std::time::Instant;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::json;

use rtt_verify::catalog;
use rtt_verify::freealg::{canonical_basis, orient, reduce, relations_to_json, rtt_relations, span_equal};
use rtt_verify::limits::{limit_t0, substitute_path};
use rtt_verify::linalg::conj_tensor_square;
use rtt_verify::repcheck::{
    antipode_residual, bhp_map, build_rep, check_coproduct_with, deformed_relation_residuals, run_trials, GenMap,
};
use rtt_verify::suite::{self, find_check, run_check};
use rtt_verify::ybe::{gauge_invariants, is_triangular_r, search_gauge, ybe_residual};
use rtt_verify::{CheckResult, GenOrder, MatRF, Orientation, Status, SuiteConfig};

use input::{load_matrix, load_path, load_poly, load_relations, parse_params, parse_spin, Bindings};

#[derive(Debug, Parser)]
#[command(name = "rtt-verify", version, about = "Exact checks of R-matrix, RTT and gauge identities")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Machine-readable output.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for the numeric checks.
    #[arg(long, global = true, env = "RTT_VERIFY_SEED")]
    pub seed: Option<u64>,
    /// Absolute tolerance for numeric checks.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Worker threads for verify-paper.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
    /// Parameter values, `k=v,...`; values are expressions.
    #[arg(long, global = true, value_delimiter = ',')]
    pub params: Vec<String>,
}

/// A matrix operand: catalog entry or matrix JSON file.
#[derive(Debug, Args)]
pub struct Source {
    #[arg(long, required_unless_present = "matrix", conflicts_with = "matrix")]
    pub catalog: Option<String>,
    #[arg(long)]
    pub matrix: Option<String>,
}

impl Source {
    fn label(&self) -> &str {
        self.catalog.as_deref().or(self.matrix.as_deref()).unwrap_or("?")
    }

    fn load(&self, params: &Bindings) -> Result<MatRF> {
        load_matrix(self.label(), params)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Expect {
    /// An equivalence should be found.
    Found,
    /// No equivalence should be found.
    None,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List or show catalog entries.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Yang–Baxter residual.
    Ybe(Source),
    /// Whether R21·R = I.
    Triangular(Source),
    /// RTT relations, optionally compared with an expected list.
    Rtt {
        #[command(flatten)]
        src: Source,
        /// Relation list name, `rtt:<entry>` or JSON file.
        #[arg(long)]
        expect: Option<String>,
    },
    /// Tensor-square conjugation by M.
    Transform {
        #[command(flatten)]
        src: Source,
        #[arg(long)]
        m: String,
        #[arg(long, default_value = "GRG")]
        orientation: Orientation,
        #[arg(long)]
        expect: Option<String>,
    },
    /// Exact t → 0 limit along a rational path.
    Limit {
        #[command(flatten)]
        src: Source,
        /// `contraction` or a path JSON file.
        #[arg(long, default_value = "contraction")]
        path: String,
        #[arg(long)]
        expect: Option<String>,
    },
    /// Rewrite a polynomial with rules oriented from a relation list.
    Reduce {
        #[arg(long)]
        relations: String,
        /// Term list JSON, inline or file.
        #[arg(long)]
        poly: String,
        #[arg(long, default_value = "d>a>b>c")]
        order: GenOrder,
        #[arg(long, default_value_t = 10_000)]
        max_steps: usize,
        /// Check that the normal form is zero.
        #[arg(long)]
        expect_zero: bool,
    },
    /// Traces tr((PR)^k) and tr(R^k).
    Invariants {
        #[command(flatten)]
        src: Source,
        #[arg(long, default_value_t = 4)]
        kmax: u32,
    },
    /// Numeric multistart search for M with (M⁻¹⊗M⁻¹)Rsrc(M⊗M) = Rdst.
    SearchGauge {
        #[arg(long)]
        src: String,
        #[arg(long)]
        dst: String,
        #[arg(long, default_value_t = 200)]
        starts: usize,
        #[arg(long, default_value_t = 2000)]
        iters: u64,
        #[arg(long, value_enum, default_value = "found")]
        expect: Expect,
    },
    /// Numeric checks of the deformed generator map in U_q(sl2) representations.
    Repcheck {
        #[arg(long, default_value = "1/2")]
        j: String,
        #[arg(long)]
        j2: Option<String>,
        #[arg(long, default_value_t = 0.3)]
        a: f64,
        #[arg(long, default_value_t = 0.7)]
        aplus: f64,
        /// Seeded random trials instead of the single (a, aplus) point.
        #[arg(long, default_value_t = 0)]
        trials: usize,
    },
    /// Every acceptance check, symbolic first.
    VerifyPaper {
        /// Restrict to the named checks.
        #[arg(long)]
        only: Vec<String>,
    },
}

#[derive(Debug, Subcommand)]
pub enum CatalogAction {
    List,
    Show { name: String },
}

/// Parses `args` and runs the command, writing to `out`/`err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            2
        }
    }
}

fn config(g: &Global) -> SuiteConfig {
    let d = SuiteConfig::default();
    SuiteConfig { seed: g.seed.unwrap_or(d.seed), tol: g.tol.unwrap_or(d.tol), ..d }
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    let g = &cli.global;
    let params = parse_params(&g.params)?;
    let start = Instant::now();
    let check = |name: String, ok: bool, detail: String| CheckResult {
        name,
        status: if ok { Status::Pass } else { Status::Fail },
        detail,
        elapsed_ms: start.elapsed().as_millis() as u64,
    };
    let result = match &cli.command {
        Command::Catalog { action } => return catalog_cmd(action, &params, g.json, out),
        Command::Ybe(src) => {
            let res = ybe_residual(&src.load(&params)?)?;
            let detail =
                if res.is_zero() { "residual is zero".into() } else { format!("{} nonzero residual entries", res.support()) };
            check(format!("ybe {}", src.label()), res.is_zero(), detail)
        }
        Command::Triangular(src) => {
            let ok = is_triangular_r(&src.load(&params)?)?;
            check(format!("triangular {}", src.label()), ok, format!("R21·R = I: {ok}"))
        }
        Command::Rtt { src, expect } => {
            let rels = rtt_relations(&src.load(&params)?)?;
            let Some(exp) = expect else {
                return emit_data(&relations_to_json(&rels), rels.iter().map(|r| format!("{r} = 0")), g.json, out);
            };
            let ok = span_equal(&rels, &load_relations(exp, &params)?);
            check(format!("rtt {} vs {exp}", src.label()), ok, format!("spans equal: {ok}"))
        }
        Command::Transform { src, m, orientation, expect } => {
            let r = conj_tensor_square(&src.load(&params)?, &load_matrix(m, &params)?, *orientation)?;
            let Some(exp) = expect else {
                return emit_data(&r.to_json(), std::iter::once(r.to_string()), g.json, out);
            };
            let ok = r == load_matrix(exp, &params)?;
            check(format!("transform {} by {m} ({orientation:?})", src.label()), ok, format!("equals {exp}: {ok}"))
        }
        Command::Limit { src, path, expect } => {
            let path_v = load_path(path)?;
            let lim = limit_t0(&substitute_path(&src.load(&params)?, &path_v)?, path_v.var)?;
            let Some(exp) = expect else {
                return emit_data(&lim.to_json(), std::iter::once(lim.to_string()), g.json, out);
            };
            let ok = lim == load_matrix(exp, &params)?;
            check(format!("limit {} along {path}", src.label()), ok, format!("equals {exp}: {ok}"))
        }
        Command::Reduce { relations, poly, order, max_steps, expect_zero } => {
            let rels = load_relations(relations, &params)?;
            let rules = orient(&canonical_basis(&rels, order), order)?;
            let nf = reduce(&load_poly(poly)?, &rules, order, *max_steps)?;
            if !expect_zero {
                return emit_data(&nf.to_json(), std::iter::once(nf.to_string()), g.json, out);
            }
            check(format!("reduce under {order}"), nf.is_zero(), format!("normal form: {nf}"))
        }
        Command::Invariants { src, kmax } => {
            let inv = gauge_invariants(&src.load(&params)?, *kmax)?;
            let text: Vec<String> = inv.iter().map(|e| e.to_string()).collect();
            let k = *kmax as usize;
            let lines = (0..2 * k).map(|i| {
                let label = if i < k { format!("tr((PR)^{})", i + 1) } else { format!("tr(R^{})", i - k + 1) };
                format!("{label} = {}", text[i])
            });
            return emit_data(&text, lines, g.json, out);
        }
        Command::SearchGauge { src, dst, starts, iters, expect } => {
            let cfg = config(g);
            let a = load_matrix(src, &params)?.to_real4()?;
            let b = load_matrix(dst, &params)?.to_real4()?;
            let rep = search_gauge(&a, &b, *starts, *iters, cfg.seed);
            let found = rep.spectra_match && rep.best_residual < cfg.tol;
            let ok = found == (*expect == Expect::Found);
            let detail = serde_json::to_string(&rep)?;
            check(format!("search-gauge {src} → {dst} (expect {expect:?})"), ok, detail)
        }
        Command::Repcheck { j, j2, a, aplus, trials } => return repcheck_cmd(g, j, j2.as_deref(), *a, *aplus, *trials, out),
        Command::VerifyPaper { only } => {
            let cfg = config(g);
            let results = if only.is_empty() {
                suite::verify_all(&cfg, g.jobs)
            } else {
                let mut v = Vec::new();
                for name in only {
                    let c = find_check(name).with_context(|| {
                        format!("unknown check `{name}`; known: {}", suite::check_names().join(", "))
                    })?;
                    v.push(run_check(c, &cfg));
                }
                v.sort_by(|x, y| x.name.cmp(&y.name));
                v
            };
            emit_results(&results, g.json, out)?;
            if !g.json {
                let passed = results.iter().filter(|r| r.status == Status::Pass).count();
                writeln!(out, "{passed}/{} checks passed", results.len())?;
            }
            return Ok(suite::exit_code(&results));
        }
    };
    emit_results(std::slice::from_ref(&result), g.json, out)?;
    Ok(suite::exit_code(&[result]))
}

fn status_tag(s: Status) -> &'static str {
    match s {
        Status::Pass => "PASS",
        Status::Fail => "FAIL",
        Status::Error => "ERROR",
    }
}

/// JSON: an array of `CheckResult`. Text: one status line per result with
/// sub-checks indented below.
pub fn emit_results(results: &[CheckResult], json: bool, out: &mut dyn Write) -> Result<()> {
    if json {
        serde_json::to_writer_pretty(&mut *out, results)?;
        writeln!(out)?;
        return Ok(());
    }
    for r in results {
        let parts: Vec<&str> = r.detail.split(" | ").collect();
        if parts.len() == 1 {
            writeln!(out, "{} {}: {} [{} ms]", status_tag(r.status), r.name, r.detail, r.elapsed_ms)?;
        } else {
            writeln!(out, "{} {} [{} ms]", status_tag(r.status), r.name, r.elapsed_ms)?;
            for p in parts {
                writeln!(out, "    {p}")?;
            }
        }
    }
    Ok(())
}

fn emit_data<T: Serialize>(
    value: &T,
    lines: impl Iterator<Item = String>,
    json: bool,
    out: &mut dyn Write,
) -> Result<i32> {
    if json {
        serde_json::to_writer_pretty(&mut *out, value)?;
        writeln!(out)?;
    } else {
        for l in lines {
            writeln!(out, "{l}")?;
        }
    }
    Ok(0)
}

fn catalog_cmd(action: &CatalogAction, params: &Bindings, json: bool, out: &mut dyn Write) -> Result<i32> {
    match action {
        CatalogAction::List => {
            let names = catalog::names();
            let rels = catalog::RELATION_NAMES;
            let lines = names.iter().map(|n| format!("matrix    {n}")).chain(rels.iter().map(|n| format!("relations {n}")));
            emit_data(&json!({ "matrices": names, "relations": rels }), lines, json, out)
        }
        CatalogAction::Show { name } => {
            if catalog::RELATION_NAMES.contains(&name.as_str()) {
                let rels = load_relations(name, params)?;
                return emit_data(&relations_to_json(&rels), rels.iter().map(|r| format!("{r} = 0")), json, out);
            }
            let e = catalog::get(name, Some(params))?;
            let constraints: Vec<String> = e.constraints.iter().map(|c| c.to_string()).collect();
            let params: Vec<&str> = e.params.iter().map(|s| s.name()).collect();
            let value = json!({
                "name": e.name,
                "params": params,
                "matrix": e.matrix.to_json(),
                "constraints": constraints,
                "notes": e.notes,
            });
            let mut lines = vec![format!("{} ({})", e.name, e.notes), format!("params: {}", params.join(", "))];
            lines.push(e.matrix.to_string());
            lines.extend(constraints.iter().map(|c| format!("constraint: {c} = 0")));
            emit_data(&value, lines.into_iter(), json, out)
        }
    }
}

#[derive(Debug, Serialize)]
struct RepcheckReport {
    residuals: serde_json::Value,
    pass: bool,
}

fn repcheck_cmd(
    g: &Global,
    j: &str,
    j2: Option<&str>,
    a: f64,
    aplus: f64,
    trials: usize,
    out: &mut dyn Write,
) -> Result<i32> {
    let cfg = config(g);
    let two_j = parse_spin(j)?;
    let report = if trials > 0 {
        let t = run_trials(&[two_j], trials, cfg.seed)?;
        let pass = [t.max_rep_residual, t.max_relation_residual, t.max_coproduct_residual, t.max_antipode_residual]
            .iter()
            .all(|r| *r < cfg.tol);
        RepcheckReport { residuals: serde_json::to_value(&t)?, pass }
    } else {
        let two_j2 = j2.map(parse_spin).transpose()?.unwrap_or(two_j);
        let c = |x: f64| Complex64::new(x, 0.0);
        let rep = build_rep(two_j, c(a))?;
        let map = GenMap::bhp(c(a), c(aplus))?;
        let rels = deformed_relation_residuals(&rep, &bhp_map(&rep, c(aplus))?);
        let cop = check_coproduct_with(two_j, two_j2, c(a), &map)?;
        let ant = antipode_residual(&rep, &map);
        let base = rep.relation_residual();
        let pass = base < cfg.tol && rels.iter().all(|r| *r < cfg.tol) && cop < cfg.tol && ant < cfg.tol;
        let residuals = json!({ "representation": base, "relations": rels, "coproduct": cop, "antipode": ant });
        RepcheckReport { residuals, pass }
    };
    if g.json {
        serde_json::to_writer_pretty(&mut *out, &report)?;
        writeln!(out)?;
    } else {
        writeln!(out, "{} repcheck j={j}: {}", if report.pass { "PASS" } else { "FAIL" }, report.residuals)?;
    }
    Ok(if report.pass { 0 } else { 1 })
}

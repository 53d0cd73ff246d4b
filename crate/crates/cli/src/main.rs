//! `hgc`: finite-field hypergeometric functions, p-adic congruences and check sweeps.

use std::io::Write;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};

use hgc_core::charsum::{gauss_sum, greene_hgf, jacobi_sum, mccarthy_starred, Character};
use hgc_core::cyclotomic::{big_json, CycInt};
use hgc_core::field::{FieldCtx, FqElem};
use hgc_core::padic::{dwork_ratio, gamma_p_rational, trunc_hgs_eval, trunc_hgs_exact, HgsParams, PadicInt};
use hgc_core::qseries::eta_product_coeffs;
use hgc_core::varieties::{count_affine_brute, count_via_hgf, hecke_psi, zeta_build, ZetaPart, DEFAULT_COUNT_CAP};
use hgc_core::verify::{registry, sweep_qs, CheckOptions, CheckReport, SweepReport, COLUMNS};
use hgc_core::{arith, Error};

#[derive(Parser)]
#[command(name = "hgc", version, about = "Finite-field hypergeometric functions and p-adic supercongruence checks")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    #[command(flatten)]
    global: Global,
}

#[derive(Args, Clone)]
struct Global {
    /// Output format on standard output.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Also write the machine-readable result (JSON, or CSV with --format csv) to this file.
    #[arg(long, global = true)]
    out: Option<String>,
    /// Worker threads for sweeps and counts.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Record per-check wall-clock times in reports.
    #[arg(long, global = true)]
    timings: bool,
    /// Largest brute-force enumeration allowed.
    #[arg(long, global = true, default_value_t = DEFAULT_COUNT_CAP)]
    count_cap: u64,
    /// Seed for randomly generated instances.
    #[arg(long, global = true, default_value_t = CheckOptions::default().seed)]
    seed: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Args, Clone)]
struct FieldArgs {
    /// Characteristic (odd prime).
    #[arg(long)]
    p: u64,
    /// Degree of the extension.
    #[arg(long, default_value_t = 1)]
    e: u32,
}

#[derive(Args, Clone)]
struct SeriesArgs {
    /// Upper parameters, comma separated rationals (e.g. 1/3,1/3,1/3).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    upper: Vec<String>,
    /// Lower parameters (e.g. 1,1).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    lower: Vec<String>,
    /// Argument z.
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    z: String,
}

#[derive(Subcommand)]
enum Cmd {
    /// Field parameters: modulus, generator, factorization of q-1.
    Field(FieldArgs),
    /// A multiplicative character chi_k and its values.
    Char {
        #[command(flatten)]
        f: FieldArgs,
        /// Character: exponent k, or n:j for the j-th character of order n.
        #[arg(long)]
        chi: String,
        /// Field elements (integer encoding, or a/b in the prime field) to evaluate at.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        at: Vec<String>,
    },
    /// Jacobi sum J(eta_a, eta_b) of characters of the given orders.
    Jacobi {
        #[command(flatten)]
        f: FieldArgs,
        /// Orders a,b.
        #[arg(long, value_delimiter = ',')]
        orders: Vec<u64>,
        /// Variants i,j (eta_a = chi_{i(q-1)/a}).
        #[arg(long, value_delimiter = ',', default_values_t = [1i64, 1])]
        variants: Vec<i64>,
    },
    /// Gauss sum g(chi) in Z[zeta_{p(q-1)}].
    Gauss {
        #[command(flatten)]
        f: FieldArgs,
        #[arg(long)]
        chi: String,
    },
    /// Greene's hypergeometric function.
    Ghf(CharFnArgs),
    /// McCarthy's normalized function.
    Starred(CharFnArgs),
    /// p-adic Gamma function at a rational argument.
    Gammap {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 2)]
        r: u32,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
    },
    /// Truncated hypergeometric series modulo p^r.
    Trunc {
        #[command(flatten)]
        s: SeriesArgs,
        /// Last index kept.
        #[arg(long)]
        m: usize,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 2)]
        r: u32,
        /// Factor multiplying every term.
        #[arg(long, default_value = "1")]
        scale: String,
        /// First index kept.
        #[arg(long, default_value_t = 0)]
        start: usize,
        /// Also print the exact rational value.
        #[arg(long)]
        exact: bool,
    },
    /// Ratio F_{p^s-1} / F_{p^{s-1}-1} modulo p^r.
    Dwork {
        #[command(flatten)]
        s: SeriesArgs,
        #[arg(long)]
        p: u64,
        #[arg(long = "s", default_value_t = 2)]
        steps: u32,
        #[arg(long, default_value_t = 2)]
        r: u32,
    },
    /// Points on C_{n,lambda} over F_q.
    Count {
        #[command(flatten)]
        f: FieldArgs,
        #[arg(long)]
        n: u64,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, value_enum, default_value_t = Route::Both)]
        route: Route,
    },
    /// Local zeta function of C_{n,1} and its point counts N_s.
    Zeta {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: u64,
        /// Largest s for which N_s is listed.
        #[arg(long, default_value_t = 3)]
        s_max: u32,
    },
    /// Coefficients of eta(2z)^4 eta(4z)^4.
    Eta {
        #[arg(long, default_value_t = 20)]
        n: usize,
    },
    /// The quartic Hecke character at the prime above p.
    Psi {
        #[arg(long)]
        p: u64,
    },
    /// Run the named checks over primes and/or explicit field sizes.
    Verify {
        /// Check ids (repeatable or comma separated).
        #[arg(long, value_delimiter = ',')]
        id: Vec<String>,
        #[command(flatten)]
        range: RangeArgs,
    },
    /// Run every registered check (or --ids) over a prime range.
    Sweep {
        #[arg(long, value_delimiter = ',')]
        ids: Vec<String>,
        #[command(flatten)]
        range: RangeArgs,
    },
    /// List registered checks.
    List,
}

#[derive(Args, Clone)]
struct CharFnArgs {
    #[command(flatten)]
    f: FieldArgs,
    /// Upper characters: exponents k or n:j.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    upper: Vec<String>,
    /// Lower characters.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    lower: Vec<String>,
    /// Argument in F_q.
    #[arg(long, allow_hyphen_values = true)]
    x: String,
}

#[derive(Args, Clone)]
struct RangeArgs {
    /// Inclusive prime range lo..hi (only odd primes are used).
    #[arg(long)]
    primes: Option<String>,
    /// Explicit field sizes (prime powers allowed).
    #[arg(long, value_delimiter = ',')]
    q: Vec<u64>,
    /// p-adic precision of the Jacobi-product check.
    #[arg(long, default_value_t = CheckOptions::default().gk_precision)]
    gk_precision: u32,
    /// Random instances per classical identity.
    #[arg(long, default_value_t = CheckOptions::default().instances)]
    instances: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Route {
    Brute,
    Hgf,
    Both,
}

/// Command output: a flat record or a check report.
enum Output {
    Record(Vec<(String, Value)>),
    Report(SweepReport),
}

/// Failure classes mapped to exit codes.
enum Fail {
    Usage(String),
    Failed(String),
    Cap(String),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        match e {
            Error::ResourceCap(_) | Error::FieldTooLarge { .. } => Fail::Cap(e.to_string()),
            Error::Internal(_) => Fail::Failed(e.to_string()),
            _ => Fail::Usage(e.to_string()),
        }
    }
}

type Res<T> = std::result::Result<T, Fail>;

fn usage<T>(msg: impl Into<String>) -> Res<T> {
    Err(Fail::Usage(msg.into()))
}

fn parse_rat(s: &str) -> Res<BigRational> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().or_else(|_| usage(format!("bad rational `{s}`")))?;
    let d: BigInt = d.parse().or_else(|_| usage(format!("bad rational `{s}`")))?;
    if d == BigInt::from(0) {
        return usage(format!("zero denominator in `{s}`"));
    }
    Ok(BigRational::new(n, d))
}

fn parse_small_rat(s: &str) -> Res<(i64, i64)> {
    let r = parse_rat(s)?;
    let conv = |x: &BigInt| i64::try_from(x.clone()).or_else(|_| usage(format!("`{s}` is out of range")));
    Ok((conv(r.numer())?, conv(r.denom())?))
}

fn field(f: &FieldArgs) -> Res<Arc<FieldCtx>> {
    if f.e == 0 {
        return usage("--e must be at least 1");
    }
    Ok(Arc::new(FieldCtx::new(f.p, f.e, None)?))
}

/// Field element from its integer encoding (0 <= v < q), a negative integer, or a/b in the prime field.
fn element(ctx: &FieldCtx, s: &str) -> Res<FqElem> {
    if s.contains('/') {
        let (a, b) = parse_small_rat(s)?;
        return Ok(ctx.from_ratio(a, b)?);
    }
    let v: i64 = s.trim().parse().or_else(|_| usage(format!("bad field element `{s}`")))?;
    if v >= 0 {
        if v as u64 >= ctx.q() {
            return usage(format!("{v} is not an element encoding of F_{}", ctx.q()));
        }
        Ok(v as u64)
    } else {
        Ok(ctx.from_int(v))
    }
}

fn character(ctx: &Arc<FieldCtx>, s: &str) -> Res<Character> {
    if let Some((n, j)) = s.split_once(':') {
        let n: u64 = n.trim().parse().or_else(|_| usage(format!("bad character `{s}`")))?;
        let j: i64 = j.trim().parse().or_else(|_| usage(format!("bad character `{s}`")))?;
        return Ok(Character::of_order(ctx, n, j)?);
    }
    let k: i64 = s.trim().parse().or_else(|_| usage(format!("bad character `{s}`")))?;
    Ok(Character::new(ctx, k))
}

fn characters(ctx: &Arc<FieldCtx>, xs: &[String]) -> Res<Vec<Character>> {
    xs.iter().map(|s| character(ctx, s)).collect()
}

fn series(s: &SeriesArgs, m: usize) -> Res<HgsParams> {
    let up = s.upper.iter().map(|x| parse_rat(x)).collect::<Res<Vec<_>>>()?;
    let lo = s.lower.iter().map(|x| parse_rat(x)).collect::<Res<Vec<_>>>()?;
    if up.len() != lo.len() + 1 {
        return usage(format!("expected {} lower parameters, got {}", up.len().saturating_sub(1), lo.len()));
    }
    Ok(HgsParams::new(up, lo, parse_rat(&s.z)?, m))
}

fn padic_json(x: &PadicInt) -> Value {
    json!({ "p": x.p(), "r": x.r(), "residue": x.residue() })
}

fn rec(pairs: Vec<(&str, Value)>) -> Output {
    Output::Record(pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect())
}

fn norm(j: &CycInt) -> Value {
    match j.mul(&j.bar()).as_integer() {
        Some(n) => big_json(&n),
        None => Value::Null,
    }
}

fn parse_range(s: &str) -> Res<(u64, u64)> {
    let Some((a, b)) = s.split_once("..") else {
        return usage(format!("expected a range lo..hi, got `{s}`"));
    };
    let a: u64 = a.trim().parse().or_else(|_| usage(format!("bad range `{s}`")))?;
    let b: u64 = b.trim().trim_start_matches('=').parse().or_else(|_| usage(format!("bad range `{s}`")))?;
    if a > b {
        return usage(format!("empty range `{s}`"));
    }
    Ok((a, b))
}

/// The command line minus flags that do not change the result.
fn invocation(args: &[String]) -> String {
    let mut out = vec!["hgc".to_string()];
    let mut skip = false;
    for a in args.iter().skip(1) {
        if skip {
            skip = false;
            continue;
        }
        if a == "--jobs" || a == "--out" {
            skip = true;
            continue;
        }
        if a.starts_with("--jobs=") || a.starts_with("--out=") {
            continue;
        }
        out.push(a.clone());
    }
    out.join(" ")
}

fn run_checks(ids: Vec<String>, range: &RangeArgs, g: &Global, inv: String) -> Res<Output> {
    let mut qs = range.q.clone();
    if let Some(r) = &range.primes {
        let (lo, hi) = parse_range(r)?;
        qs.extend(arith::primes_in(lo, hi).into_iter().filter(|&p| p != 2));
    }
    let opts = CheckOptions {
        count_cap: g.count_cap,
        gk_precision: range.gk_precision,
        seed: g.seed,
        instances: range.instances,
    };
    let needs_q = ids
        .iter()
        .filter_map(|id| registry().iter().find(|e| e.id == id))
        .any(|e| e.scope != hgc_core::verify::Scope::Independent);
    if needs_q && qs.is_empty() {
        return usage("give --primes lo..hi and/or --q");
    }
    Ok(Output::Report(sweep_qs(&ids, &qs, g.jobs, &opts, g.timings, &inv)?))
}

fn dispatch(cli: &Cli, inv: String) -> Res<Output> {
    let g = &cli.global;
    match &cli.cmd {
        Cmd::Field(f) => {
            let ctx = field(f)?;
            let fac: Vec<Value> = ctx.factorization().iter().map(|(p, e)| json!([p, e])).collect();
            Ok(rec(vec![
                ("p", json!(ctx.p())),
                ("e", json!(ctx.e())),
                ("q", json!(ctx.q())),
                ("modulus", json!(ctx.modulus())),
                ("generator", json!(ctx.generator())),
                ("order_factorization", json!(fac)),
            ]))
        }
        Cmd::Char { f, chi, at } => {
            let ctx = field(f)?;
            let c = character(&ctx, chi)?;
            let mut vals = Vec::new();
            for s in at {
                let x = element(&ctx, s)?;
                vals.push(json!({ "x": x, "exponent": c.eval_exp(x), "value": c.eval(x).to_json() }));
            }
            Ok(rec(vec![
                ("k", json!(c.k())),
                ("m", json!(c.m())),
                ("order", json!(c.order())),
                ("chi(-1)", json!(c.at_minus_one())),
                ("values", json!(vals)),
            ]))
        }
        Cmd::Jacobi { f, orders, variants } => {
            let ctx = field(f)?;
            if orders.len() != 2 || variants.len() != 2 {
                return usage("--orders and --variants take two values each");
            }
            let a = Character::of_order(&ctx, orders[0], variants[0])?;
            let b = Character::of_order(&ctx, orders[1], variants[1])?;
            let j = jacobi_sum(&a, &b)?;
            Ok(rec(vec![
                ("a", json!(a.k())),
                ("b", json!(b.k())),
                ("J", j.to_json()),
                ("|J|^2", norm(&j)),
            ]))
        }
        Cmd::Gauss { f, chi } => {
            let ctx = field(f)?;
            let c = character(&ctx, chi)?;
            let g = gauss_sum(&c);
            Ok(rec(vec![("k", json!(c.k())), ("g", g.to_json()), ("|g|^2", norm(&g))]))
        }
        Cmd::Ghf(a) | Cmd::Starred(a) => {
            let ctx = field(&a.f)?;
            let up = characters(&ctx, &a.upper)?;
            let lo = characters(&ctx, &a.lower)?;
            let x = element(&ctx, &a.x)?;
            let v = if matches!(cli.cmd, Cmd::Ghf(_)) {
                greene_hgf(&up, &lo, x)?
            } else {
                mccarthy_starred(&up, &lo, x)?
            };
            Ok(rec(vec![
                ("upper", json!(up.iter().map(|c| c.k()).collect::<Vec<_>>())),
                ("lower", json!(lo.iter().map(|c| c.k()).collect::<Vec<_>>())),
                ("x", json!(x)),
                ("value", v.to_json()),
            ]))
        }
        Cmd::Gammap { p, r, x } => {
            let (n, d) = parse_small_rat(x)?;
            let v = gamma_p_rational(n, d, *p, *r)?;
            Ok(rec(vec![("x", json!(x)), ("gamma_p", padic_json(&v)), ("centered", json!(v.centered()))]))
        }
        Cmd::Trunc { s, m, p, r, scale, start, exact } => {
            let params = series(s, *m)?.with_scale(parse_rat(scale)?).with_start(*start);
            let v = trunc_hgs_eval(&params, *p, *r)?;
            let mut out = vec![("value", padic_json(&v)), ("centered", json!(v.centered()))];
            if *exact {
                out.push(("exact", json!(trunc_hgs_exact(&params)?.to_string())));
            }
            Ok(rec(out))
        }
        Cmd::Dwork { s, p, steps, r } => {
            let v = dwork_ratio(&series(s, 0)?, *p, *steps, *r)?;
            Ok(rec(vec![("ratio", padic_json(&v)), ("centered", json!(v.centered()))]))
        }
        Cmd::Count { f, n, lambda, route } => {
            let ctx = field(f)?;
            let lam = element(&ctx, lambda)?;
            let mut out = vec![("q", json!(ctx.q())), ("n", json!(n)), ("lambda", json!(lam))];
            let pool = rayon_pool(g.jobs)?;
            let mut counts = Vec::new();
            if matches!(route, Route::Brute | Route::Both) {
                let c = pool.install(|| count_affine_brute(&ctx, *n, lam, g.count_cap))?;
                out.push(("brute_affine", json!(c.affine_count)));
                out.push(("brute_count", json!(c.paper_count)));
                counts.push(c.paper_count);
            }
            if matches!(route, Route::Hgf | Route::Both) {
                let c = count_via_hgf(&ctx, *n, lam)?;
                out.push(("hgf_count", json!(c.paper_count)));
                counts.push(c.paper_count);
            }
            if counts.len() == 2 {
                out.push(("agree", json!(counts[0] == counts[1])));
            }
            Ok(rec(out))
        }
        Cmd::Zeta { p, n, s_max } => {
            let z = zeta_build(*p, *n)?;
            let factors: Vec<Value> = z
                .factors
                .iter()
                .map(|f| {
                    json!({
                        "c1": f.c1.to_json(),
                        "c2": f.c2.to_json(),
                        "side": if f.numerator { "numerator" } else { "denominator" },
                        "part": match f.part { ZetaPart::Old => "old", ZetaPart::New => "new", ZetaPart::Whole => "whole" },
                    })
                })
                .collect();
            let ns = (1..=*s_max).map(|s| Ok(big_json(&z.n_s(s)?))).collect::<Res<Vec<_>>>()?;
            Ok(rec(vec![
                ("p", json!(p)),
                ("n", json!(n)),
                ("factors", json!(factors)),
                ("N_s", json!(ns)),
                ("convention", json!("N_s = 1 + affine count over F_{p^s}")),
                ("notes", json!(z.notes)),
            ]))
        }
        Cmd::Eta { n } => {
            if *n < 2 {
                return usage("--n must be at least 2");
            }
            let a = eta_product_coeffs(*n);
            Ok(rec(vec![("a", json!(a[1..].iter().map(big_json).collect::<Vec<_>>()))]))
        }
        Cmd::Psi { p } => {
            let v = hecke_psi(*p)?;
            Ok(rec(vec![
                ("p", json!(v.p)),
                ("a+bi", json!([v.a, v.b])),
                ("chi1", json!([v.chi1.0, v.chi1.1])),
                ("psi", json!([v.psi.0, v.psi.1])),
                ("-J", json!([v.minus_jacobi.0, v.minus_jacobi.1])),
                ("normalization", json!(v.normalization)),
            ]))
        }
        Cmd::Verify { id, range } => run_checks(id.clone(), range, g, inv),
        Cmd::Sweep { ids, range } => {
            let ids = if ids.is_empty() { registry().iter().map(|e| e.id.to_string()).collect() } else { ids.clone() };
            run_checks(ids, range, g, inv)
        }
        Cmd::List => {
            let rows = registry()
                .iter()
                .map(|e| {
                    (
                        e.id.to_string(),
                        json!({ "statement": e.statement, "guard": e.guard, "modulus": e.modulus, "proven": e.proven }),
                    )
                })
                .collect();
            Ok(Output::Record(rows))
        }
    }
}

fn rayon_pool(jobs: usize) -> Res<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Fail::Failed(format!("thread pool: {e}")))
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn render_table(out: &Output) -> String {
    let rows: Vec<Vec<String>> = match out {
        Output::Record(r) => r.iter().map(|(k, v)| vec![k.clone(), cell(v)]).collect(),
        Output::Report(rep) => {
            let mut rows = vec![COLUMNS.iter().map(|s| s.to_string()).collect::<Vec<_>>()];
            rows.extend(rep.reports.iter().map(CheckReport::cells));
            rows
        }
    };
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    // witnesses can be long; only the columns before them are padded
    let padded = if matches!(out, Output::Report(_)) { 7 } else { 1 };
    let widths: Vec<usize> =
        (0..cols).map(|c| rows.iter().map(|r| r.get(c).map_or(0, |s| s.chars().count())).max().unwrap_or(0)).collect();
    let mut s = String::new();
    for r in &rows {
        let line: Vec<String> = r
            .iter()
            .enumerate()
            .map(|(i, c)| if i < padded && i + 1 < r.len() { format!("{c:<w$}", w = widths[i]) } else { c.clone() })
            .collect();
        s.push_str(line.join("  ").trim_end());
        s.push('\n');
    }
    if let Output::Report(rep) = out {
        let sm = rep.summary();
        s.push_str(&format!(
            "summary: {} pass, {} fail, {} skipped, {} report-only pass, {} report-only fail, {} error\n",
            sm.pass, sm.fail, sm.skipped, sm.report_only_pass, sm.report_only_fail, sm.error
        ));
    }
    s
}

fn render_json(out: &Output) -> String {
    match out {
        Output::Record(r) => {
            let mut m = serde_json::Map::new();
            for (k, v) in r {
                m.insert(k.clone(), v.clone());
            }
            let mut s = serde_json::to_string_pretty(&Value::Object(m)).expect("serializable");
            s.push('\n');
            s
        }
        Output::Report(rep) => rep.to_json_string(),
    }
}

fn render_csv(out: &Output) -> Res<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let res = match out {
        Output::Record(r) => {
            let mut res = w.write_record(["key", "value"]);
            for (k, v) in r {
                res = res.and_then(|_| w.write_record([k.clone(), cell(v)]));
            }
            res
        }
        Output::Report(rep) => {
            let mut res = w.write_record(COLUMNS);
            for c in &rep.reports {
                res = res.and_then(|_| w.write_record(c.cells()));
            }
            res
        }
    };
    res.map_err(|e| Fail::Failed(format!("csv: {e}")))?;
    let bytes = w.into_inner().map_err(|e| Fail::Failed(format!("csv: {e}")))?;
    String::from_utf8(bytes).map_err(|e| Fail::Failed(e.to_string()))
}

fn emit(out: &Output, g: &Global) -> Res<()> {
    let text = match g.format {
        Format::Table => render_table(out),
        Format::Json => render_json(out),
        Format::Csv => render_csv(out)?,
    };
    let mut stdout = std::io::stdout().lock();
    stdout.write_all(text.as_bytes()).map_err(|e| Fail::Failed(e.to_string()))?;
    if let Some(path) = &g.out {
        let body = if g.format == Format::Csv { render_csv(out)? } else { render_json(out) };
        std::fs::write(path, body).map_err(|e| Fail::Usage(format!("cannot write {path}: {e}")))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let result = dispatch(&cli, invocation(&args)).and_then(|out| {
        emit(&out, &cli.global)?;
        Ok(match &out {
            Output::Report(r) if r.summary().fatal() => 1,
            _ => 0,
        })
    });
    match result {
        Ok(code) => ExitCode::from(code),
        Err(Fail::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Fail::Failed(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Fail::Cap(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
    }
}

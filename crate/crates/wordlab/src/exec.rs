//! Runs a [`CommandPlan`] and renders its output.

use std::time::Instant;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};
use wordlab_core::counting::{
    bounds_report, density_series, lemma42_check, limit_densities, table1_comparison, table2_rows, SERIES_NAMES,
};
use wordlab_core::decimal::{self, PLACES};
use wordlab_core::identity::claim_sweep;
use wordlab_core::palindromes::fischler_check;
use wordlab_core::report::BoundReport;
use wordlab_core::sturmian::{
    cf_prefix, cf_word_with_budget, golden_candidates, mechanical_word, slope_match_search,
};
use wordlab_core::thm51::thm51_report;
use wordlab_core::thue_morse::{decomposition_check, tm_bounds_check, tm_counts};
use wordlab_core::{fibonacci_prefix, Quad, RecursiveSpec};

use crate::plan::{CliError, Command, CommandPlan, Format};
use crate::report::{Report, Table};

/// Counts as JSON numbers while they fit in `u64`, as decimal strings beyond.
fn count(v: &BigUint) -> Value {
    v.to_u64().map_or_else(|| Value::String(v.to_string()), Value::from)
}

fn quad_value(q: &Quad) -> Value {
    json!({ "exact": q.to_string(), "decimal": decimal::quad(q, PLACES) })
}

fn letter_names(spec: &RecursiveSpec) -> Vec<String> {
    let k = spec.alphabet().size();
    if k == 3 {
        SERIES_NAMES.iter().map(|s| s.to_string()).collect()
    } else {
        (0..k).map(|a| format!("c{a}")).collect()
    }
}

fn bound_table(key: &str, reports: &[BoundReport]) -> Table {
    let mut t = Table::new(
        key,
        &["claim", "params", "interpretation", "left_exact", "left_decimal", "right_exact", "right_decimal", "verdict", "notes"],
    );
    for r in reports {
        let params: Vec<String> = r.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        t.push(vec![
            r.claim.clone().into(),
            params.join(";").into(),
            r.interpretation.clone().map_or(Value::Null, Value::from),
            r.left_exact.clone().into(),
            r.left_decimal.clone().into(),
            r.right_exact.clone().into(),
            r.right_decimal.clone().into(),
            r.verdict.as_str().into(),
            r.notes.join("; ").into(),
        ]);
    }
    t
}

/// Builds the report for `plan`. Formats are applied by [`render`].
pub fn build_report(plan: &CommandPlan) -> Result<Report, CliError> {
    let budget = plan.budget;
    let mut rep = Report::new(plan.command.name());
    match &plan.command {
        Command::Gen { source, length } => {
            let w = source.prefix(*length, budget)?;
            rep.field("system", source.describe()).field("length", *length).field("word", w.to_string());
        }
        Command::GenBlocks { spec, n } => {
            let w = spec.block_drop(*n, budget)?;
            rep.field("system", "y-star-blocks")
                .field("n", *n)
                .field("length", w.len())
                .field("word", w.to_string());
        }
        Command::Dens { name, spec, n_max } => {
            let series = density_series(spec, *n_max)?;
            let names = letter_names(spec);
            let limits = limit_densities(spec);
            rep.field("system", name.as_str()).field("n_max", *n_max);
            let lim: Map<String, Value> = names.iter().cloned().zip(limits.iter().map(quad_value)).collect();
            rep.field("limits", Value::Object(lim));
            let mut cols = vec!["n".to_string(), "L".to_string()];
            cols.extend(names.iter().cloned());
            cols.extend(names.iter().map(|s| format!("dens_{s}")));
            cols.extend(names.iter().map(|s| format!("dens_{s}_exact")));
            let mut t = Table { key: "rows".into(), columns: cols, rows: Vec::new() };
            for r in &series {
                let mut row = vec![Value::from(r.n()), count(&r.total)];
                row.extend(r.counts.counts.iter().map(count));
                row.extend(r.decimals().into_iter().map(Value::from));
                row.extend(r.densities.iter().map(|d| Value::from(decimal::fraction(d))));
                t.push(row);
            }
            rep.table = Some(t);
        }
        Command::Stats { name, spec, n_max } => {
            let t1 = table1_comparison(spec, *n_max)?;
            rep.field("system", name.as_str())
                .field("n_max", *n_max)
                .field("tolerance", "1/2000")
                .field("std_kind", "sample (N-1)");
            let pop: Map<String, Value> = SERIES_NAMES
                .iter()
                .zip(&t1.summaries)
                .map(|(n, s)| (n.to_string(), Value::from(s.population_std_decimal())))
                .collect();
            rep.field("population_std", Value::Object(pop));
            let flagged = t1.cells.iter().filter(|c| c.mismatch).count();
            rep.field("mismatches", flagged);
            let mut t = Table::new("cells", &["statistic", "series", "reference", "recomputed_exact", "recomputed_decimal", "mismatch"]);
            for c in &t1.cells {
                t.push(vec![
                    c.statistic.into(),
                    c.series.clone().into(),
                    c.reference.into(),
                    c.recomputed_exact.clone().into(),
                    c.recomputed_decimal.clone().into(),
                    c.mismatch.into(),
                ]);
            }
            rep.table = Some(t);
        }
        Command::Table2 { name, spec, lo, hi } => {
            let rows = table2_rows(spec, *lo, *hi)?;
            let names = letter_names(spec);
            rep.field("kind", "table2").field("system", name.as_str());
            let mut cols = vec!["n".to_string(), "length".to_string()];
            cols.extend(names.iter().cloned());
            let mut t = Table { key: "rows".into(), columns: cols, rows: Vec::new() };
            for r in &rows {
                let mut row = vec![Value::from(r.n), count(&r.length)];
                row.extend(r.counts.iter().map(count));
                t.push(row);
            }
            rep.table = Some(t);
        }
        Command::Lemma42 { ns, interps } => {
            let spec = RecursiveSpec::y();
            let mut reports = Vec::new();
            for &n in ns {
                for &i in interps {
                    reports.push(lemma42_check(&spec, n, i)?);
                }
            }
            rep.field("kind", "lemma42").field("system", "y");
            let readings: Map<String, Value> =
                interps.iter().map(|i| (i.id().to_string(), Value::from(i.describe()))).collect();
            rep.field("interpretations", Value::Object(readings));
            rep.table = Some(bound_table("bounds", &reports));
        }
        Command::Tm { n_max, timing, decomposition, count: single } => {
            let start = Instant::now();
            let r = tm_bounds_check(*n_max)?;
            let dec = decomposition.map(decomposition_check).transpose()?;
            let elapsed = start.elapsed();
            rep.field("n_max", *n_max)
                .field("checked", r.checked)
                .field("holds", r.holds())
                .field("violation_count", r.violation_count);
            let violations: Vec<Value> = r
                .violations
                .iter()
                .map(|v| json!({ "n": v.n, "k": v.k, "m": v.m, "zeros": v.zeros }))
                .collect();
            rep.field("violations", violations).field("counts_consistent", r.counts_consistent);
            if let Some(d) = dec {
                rep.field(
                    "decomposition",
                    json!({
                        "n_max": d.n_max,
                        "printed_failures": d.printed_failures,
                        "printed_first_failure": d.printed_first_failure,
                        "corrected_failures": d.corrected_failures,
                    }),
                );
            }
            if let Some(n) = single {
                let c = tm_counts(n);
                rep.field("count", json!({ "n": count(&c.n), "zeros": count(&c.zeros), "ones": count(&c.ones) }));
            }
            rep.field("notes", r.notes.clone());
            let elapsed = if *timing { Value::from(elapsed.as_secs_f64()) } else { Value::Null };
            rep.field("elapsed", elapsed);
            let mut t = Table::new("power_of_two_checks", &["k", "zeros", "ones", "balanced", "complement_block"]);
            for c in &r.power_of_two_checks {
                t.push(vec![c.k.into(), c.zeros.into(), c.ones.into(), c.balanced.into(), c.complement_block.into()]);
            }
            rep.table = Some(t);
        }
        Command::Mechanical { slope, intercept, variant, length } => {
            let w = mechanical_word(slope, intercept, *length, *variant)?;
            rep.field("slope", quad_value(slope.value()))
                .field("intercept", quad_value(intercept))
                .field("variant", variant.as_str())
                .field("length", *length)
                .field("word", w.to_string());
        }
        Command::CfWord { cf, j, length } => {
            rep.field("cf", cf.to_string());
            if let Ok(s) = cf.slope() {
                rep.field("slope", quad_value(s.value()));
            }
            let w = match (j, length) {
                (Some(j), _) => {
                    rep.field("j", *j);
                    cf_word_with_budget(cf, *j, budget)?
                }
                (None, Some(len)) => cf_prefix(cf, *len)?,
                (None, None) => unreachable!("validated in parse_args"),
            };
            rep.field("length", w.len()).field("word", w.to_string());
        }
        Command::SlopeSearch { length } => {
            let target = fibonacci_prefix(*length);
            let candidates = golden_candidates();
            let hits = slope_match_search(&target, &candidates)?;
            rep.field("target", "fibonacci").field("length", *length).field("matches", hits.len());
            let mut t = Table::new("candidates", &["alpha", "beta", "variant", "matches"]);
            for c in &candidates {
                t.push(vec![
                    c.alpha.to_string().into(),
                    c.beta.to_string().into(),
                    c.variant.as_str().into(),
                    hits.contains(c).into(),
                ]);
            }
            rep.table = Some(t);
        }
        Command::Pal { source, length, tail, bounds, list } => {
            let w = source.prefix(*length, budget)?;
            let f = fischler_check(source.describe(), &w, *tail)?;
            let lengths = &f.list.lengths;
            let shown: Vec<Value> = lengths.iter().take(*list).map(|&l| Value::from(l)).collect();
            rep.field("source", f.list.source.as_str())
                .field("horizon", f.list.horizon)
                .field("lengths", shown)
                .field("length_count", lengths.len())
                .field("truncated", lengths.len() > *list)
                .field("tail", f.tail)
                .field("estimate_exact", decimal::fraction(&f.estimate))
                .field("estimate_decimal", decimal::rational(&f.estimate, PLACES))
                .field("bound_decimal", decimal::quad(&f.bound, PLACES))
                .field("verdict", f.verdict.as_str());
            let mut reports = vec![f.to_bound_report()];
            if *bounds {
                reports.extend(bounds_report(source, *length, *tail)?);
            }
            rep.table = Some(bound_table("bounds", &reports));
        }
        Command::Id { claim, ranges, neg } => {
            let sweep = claim_sweep(*claim, ranges, *neg)?;
            let s = &sweep.summary;
            rep.field("claim", claim.as_str())
                .field("statement", claim.statement())
                .field("domain", claim.domain())
                .field("neg_index", format!("{neg:?}").to_lowercase())
                .field("cases", s.cases)
                .field("true", s.true_count)
                .field("false", s.false_count)
                .field("undefined", s.undefined_count);
            let mut notes: Vec<String> = Vec::new();
            for c in &sweep.cases {
                for n in &c.notes {
                    if !notes.contains(n) {
                        notes.push(n.clone());
                    }
                }
            }
            rep.field("notes", notes);
            let mut t = Table::new("cases", &["claim", "params", "lhs", "rhs", "equal"]);
            for c in &sweep.cases {
                t.push(vec![
                    claim.as_str().into(),
                    c.params_text().into(),
                    c.lhs_text().into(),
                    c.rhs_text().into(),
                    c.verdict.as_str().into(),
                ]);
            }
            rep.table = Some(t);
        }
        Command::Thm51 { word, config } => {
            let r = thm51_report(word, *config)?;
            let cfg: Map<String, Value> = config.describe().into_iter().map(|(k, v)| (k, Value::from(v))).collect();
            rep.field("config", Value::Object(cfg))
                .field("m", r.m.to_string())
                .field("m_perp", r.m_perp.to_string())
                .field("m_star", r.m_star.to_string())
                .field("m_perp_star", r.m_perp_star.to_string());
            rep.field("total_minus_bound", r.total.as_ref().map_or(Value::Null, quad_value));
            rep.field("undefined", r.undefined.clone());
            let ratio = r.ratio_bound.as_ref().map_or(Value::Null, |b| {
                json!({
                    "left_exact": b.left_exact,
                    "left_decimal": b.left_decimal,
                    "right_exact": b.right_exact,
                    "right_decimal": b.right_decimal,
                    "verdict": b.verdict.as_str(),
                })
            });
            rep.field("ratio_bound", ratio);
            let mut t = Table::new("terms", &["term", "exact", "decimal"]);
            for term in r.densities.iter().chain(&r.fractions) {
                let (exact, dec) = match &term.value {
                    Some(v) => (Value::from(decimal::compact(v)), Value::from(decimal::rational(v, PLACES))),
                    None => (Value::from("undefined"), Value::from("undefined")),
                };
                t.push(vec![term.name.into(), exact, dec]);
            }
            rep.table = Some(t);
        }
    }
    Ok(rep)
}

/// `x,y,series` rows: `(n, density)` for dens,
/// `(count, n)` for the count table.
fn plot_csv(rep: &Report) -> String {
    let t = rep.table.as_ref().expect("plot commands build a table");
    let col = |name: &str| t.columns.iter().position(|c| c == name);
    let mut out = String::from("x,y,series\n");
    if rep.command == "dens" {
        let series: Vec<(String, usize)> = t
            .columns
            .iter()
            .enumerate()
            .filter_map(|(i, c)| {
                let s = c.strip_prefix("dens_")?;
                (!s.ends_with("_exact")).then(|| (s.to_string(), i))
            })
            .collect();
        for (name, i) in series {
            for r in &t.rows {
                out.push_str(&format!("{},{},{name}\n", crate::report::cell_text(&r[0]), crate::report::cell_text(&r[i])));
            }
        }
    } else {
        let n = col("n").expect("count table has n");
        let letters: Vec<&String> = t.columns.iter().skip(2).collect();
        // The figure lists the 1-count and 2-count series before the 0-count.
        let mut order: Vec<&String> = letters.iter().skip(1).copied().collect();
        order.extend(letters.first().copied());
        for name in order {
            let i = col(name).expect("letter column");
            for r in &t.rows {
                out.push_str(&format!("{},{},{name}\n", crate::report::cell_text(&r[i]), crate::report::cell_text(&r[n])));
            }
        }
    }
    out
}

pub fn render(rep: &Report, format: Format) -> String {
    match format {
        Format::Text if rep.command == "gen" => {
            let word = rep.fields.iter().find(|(k, _)| k == "word").expect("gen sets word");
            format!("{}\n", crate::report::cell_text(&word.1))
        }
        Format::Text => rep.render_text(),
        Format::Csv => rep.render_csv(),
        Format::Json => rep.render_json(),
        Format::PlotCsv => plot_csv(rep),
    }
}

/// Output bytes and exit status of a finished plan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Execution {
    pub stdout: Vec<u8>,
    pub stderr: Vec<u8>,
    pub code: i32,
}

impl Execution {
    fn failed(e: &CliError) -> Self {
        let (stdout, stderr) = match e {
            CliError::Display(s) => (s.clone().into_bytes(), Vec::new()),
            other => (Vec::new(), format!("wordlab: {other}\n").into_bytes()),
        };
        Execution { stdout, stderr, code: e.exit_code() }
    }
}

/// Runs `plan` on the current thread pool. `--out` is not applied here.
pub fn execute_plan(plan: &CommandPlan) -> Execution {
    match build_report(plan) {
        Ok(rep) => Execution { stdout: render(&rep, plan.format).into_bytes(), stderr: Vec::new(), code: 0 },
        Err(e) => Execution::failed(&e),
    }
}

/// Worker count from `WORDLAB_THREADS`; absent means one.
pub fn threads_from_env(value: Option<&str>) -> Result<usize, CliError> {
    match value {
        None => Ok(1),
        Some(v) => match v.trim().parse::<usize>() {
            Ok(n) if n >= 1 => Ok(n),
            _ => Err(CliError::Usage(format!("WORDLAB_THREADS={v:?} must be a positive integer"))),
        },
    }
}

/// Parses, executes on a private pool of `threads` workers, and applies `--out`.
pub fn run<I, S>(argv: I, threads: Option<&str>) -> Execution
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let plan = match parse_and_pool(argv, threads) {
        Ok(p) => p,
        Err(e) => return Execution::failed(&e),
    };
    let (plan, pool) = plan;
    let mut done = pool.install(|| execute_plan(&plan));
    if done.code == 0 {
        if let Some(path) = &plan.out {
            if let Err(e) = std::fs::write(path, &done.stdout) {
                return Execution::failed(&CliError::Internal(format!("writing {}: {e}", path.display())));
            }
            done.stdout.clear();
        }
    }
    done
}

fn parse_and_pool<I, S>(argv: I, threads: Option<&str>) -> Result<(CommandPlan, rayon::ThreadPool), CliError>
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let plan = crate::plan::parse_args(argv)?;
    let n = threads_from_env(threads)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build()
        .map_err(|e| CliError::Internal(format!("thread pool: {e}")))?;
    Ok((plan, pool))
}

//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Runs without the libtest harness so the lines always reach stdout;
//! exits non-zero when any criterion fails.

use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use wordlab_core::counting::{density_series, lemma42_check, table1_comparison, table2_rows, Lemma42Interp};
use wordlab_core::decimal;
use wordlab_core::identity::{claim_eval, claim_sweep, ClaimId, ClaimVerdict, NegIndex, ParamRange};
use wordlab_core::palindromes::{fischler_check, palindromic_prefix_lengths};
use wordlab_core::report::Verdict;
use wordlab_core::thue_morse::{tm_bounds_check, tm_prefix, TmGenerator};
use wordlab_core::{fibonacci_prefix, Quad, RecursiveSpec, Word, DEFAULT_BUDGET};

/// Plotted density coordinates `(n, λ, α, β)` for `n = 0..12`, as printed.
const FIGURE1: [(u64, &str, &str, &str); 13] = [
    (0, "0.5", "0.5", "0"),
    (1, "0.5", "0", "0.5"),
    (2, "0.5", "0.25", "0.25"),
    (3, "0.5", "0.166666667", "0.333333333"),
    (4, "0.5", "0.2", "0.3"),
    (5, "0.5", "0.1875", "0.3125"),
    (6, "0.5", "0.192307692", "0.307692308"),
    (7, "0.5", "0.19047619", "0.30952381"),
    (8, "0.5", "0.191176471", "0.308823529"),
    (9, "0.5", "0.190909091", "0.309090909"),
    (10, "0.5", "0.191011236", "0.308988764"),
    (11, "0.5", "0.190972222", "0.309027778"),
    (12, "0.5", "0.190987124", "0.309012876"),
];

/// Printed count table rows `(n, |y_n|, λ_n, α_n, β_n)`.
const TABLE2: [(u64, u64, u64, u64, u64); 14] = [
    (2, 4, 2, 1, 1),
    (3, 6, 3, 1, 2),
    (4, 10, 5, 2, 3),
    (5, 16, 8, 3, 5),
    (6, 26, 13, 5, 8),
    (7, 42, 21, 8, 13),
    (8, 68, 34, 13, 21),
    (9, 110, 55, 21, 34),
    (10, 178, 89, 34, 55),
    (11, 288, 144, 55, 89),
    (12, 466, 233, 89, 144),
    (13, 754, 377, 144, 233),
    (14, 1220, 610, 233, 377),
    (15, 1974, 987, 377, 610),
];

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(elapsed: Duration, limit_ms: u64) -> Result<(), String> {
    ensure(
        elapsed <= Duration::from_millis(limit_ms),
        format!("took {elapsed:?}, limit {limit_ms} ms"),
    )
}

fn cli(args: &[&str]) -> (String, i32) {
    let out = wordlab::run(args, None);
    (String::from_utf8(out.stdout).expect("utf-8"), out.code)
}

/// `"0.19047619"` → `"0.190476190"`.
fn pad9(s: &str) -> String {
    let (int, frac) = s.split_once('.').unwrap_or((s, ""));
    format!("{int}.{frac:0<9}")
}

fn parse_decimal(s: &str) -> BigRational {
    let (int, frac) = s.split_once('.').unwrap_or((s, ""));
    let digits: BigInt = format!("{int}{frac}").parse().expect("decimal literal");
    BigRational::new(digits, BigInt::from(10u32).pow(frac.len() as u32))
}

fn c1_fibonacci_word() -> Check {
    let t = Instant::now();
    let (out, code) = cli(&["gen", "--system", "fibonacci", "--length", "14"]);
    let elapsed = t.elapsed();
    ensure(code == 0, format!("exit {code}"))?;
    ensure(out == "01001010010010\n", format!("got {out:?}"))?;
    ensure(out.starts_with("0100101001001"), "13-symbol quote is not a prefix")?;
    within(elapsed, 100)?;
    Ok(format!("01001010010010 in {elapsed:.2?}"))
}

fn c2_figure1() -> Check {
    let t = Instant::now();
    let series = density_series(&RecursiveSpec::y(), 12).map_err(|e| e.to_string())?;
    let elapsed = t.elapsed();
    let mut matched = 0;
    for (rec, (n, l, a, b)) in series.iter().zip(FIGURE1) {
        ensure(rec.n() == n, "index mismatch")?;
        for (i, printed) in [l, a, b].into_iter().enumerate() {
            let ours = decimal::rational(&rec.densities[i], decimal::PLACES);
            ensure(ours == pad9(printed), format!("n={n} letter {i}: {ours} vs {printed}"))?;
            let gap = (&rec.densities[i] - parse_decimal(printed)).abs();
            ensure(gap < parse_decimal("0.0000000005"), format!("n={n} letter {i}: off by {gap}"))?;
            matched += 1;
        }
    }
    ensure(matched == 39, format!("{matched} coordinates"))?;
    let (csv, _) = cli(&["dens", "--system", "y", "--n-max", "12", "--format", "csv"]);
    ensure(
        csv.lines().last().unwrap_or("").starts_with("12,466,233,89,144,0.500000000,0.190987124,0.309012876,"),
        "CLI row 12",
    )?;
    within(elapsed, 1000)?;
    Ok(format!("{matched}/39 coordinates at 9 places in {elapsed:.2?}"))
}

fn c3_table2() -> Check {
    let t = Instant::now();
    let rows = table2_rows(&RecursiveSpec::y(), 2, 15).map_err(|e| e.to_string())?;
    let elapsed = t.elapsed();
    ensure(rows.len() == TABLE2.len(), "row count")?;
    for (r, (n, len, l, a, b)) in rows.iter().zip(TABLE2) {
        let got = (r.n, r.length.clone(), r.counts.clone());
        let want = (n, BigUint::from(len), vec![l.into(), a.into(), b.into()]);
        ensure(got == want, format!("row {n}: {got:?}"))?;
    }
    within(elapsed, 100)?;
    Ok(format!("rows 2..15 exact in {elapsed:.2?}"))
}

fn c4_table1() -> Check {
    let t = Instant::now();
    let rep = table1_comparison(&RecursiveSpec::y(), 12).map_err(|e| e.to_string())?;
    let elapsed = t.elapsed();
    let cell = |stat: &str, series: &str| {
        rep.cells
            .iter()
            .find(|c| c.statistic == stat && c.series == series)
            .ok_or(format!("no cell {stat}/{series}"))
    };
    let tol = parse_decimal("0.0005");
    for (series, idx, printed) in [("alpha", 1, "0.191"), ("beta", 2, "0.309")] {
        ensure(!cell("median", series)?.mismatch, format!("median {series} flagged"))?;
        ensure((&rep.summaries[idx].median - parse_decimal(printed)).abs() <= tol, format!("median {series}"))?;
        ensure(cell("mean", series)?.mismatch, format!("mean {series} not flagged"))?;
        ensure(cell("std", series)?.mismatch, format!("std {series} not flagged"))?;
    }
    let mean_alpha = &rep.summaries[1].mean;
    ensure((mean_alpha - parse_decimal("0.2032")).abs() < parse_decimal("0.00005"), "mean alpha")?;
    let pop_std: f64 = rep.summaries[1].population_std_decimal().parse().unwrap();
    let sample_std: f64 = rep.summaries[1].sample_std_decimal().parse().unwrap();
    ensure((pop_std - 0.102).abs() < 5e-4, format!("population std alpha {pop_std}"))?;
    ensure((sample_std - 0.064).abs() > 5e-4, "sample std alpha matches the printed value")?;
    ensure(rep.correlations[0].zero_variance && rep.correlations[1].zero_variance, "lambda variance")?;
    ensure(!cell("corr", "lambda~alpha")?.mismatch && !cell("corr", "lambda~beta")?.mismatch, "corr lambda")?;
    ensure(rep.correlations[2].equals(&BigRational::from_integer((-1).into())), "corr alpha~beta != -1")?;
    ensure(cell("corr", "alpha~beta")?.mismatch, "-0.9 not flagged")?;
    let (text, _) = cli(&["stats", "--system", "y", "--n-max", "12", "--format", "csv"]);
    ensure(text.lines().filter(|l| l.ends_with(",true")).count() == 5, "CLI flags")?;
    within(elapsed, 1000)?;
    Ok(format!(
        "medians match; mean(alpha)={} pop std={pop_std} sample std={sample_std} flagged; corr(alpha,beta)=-1 in {elapsed:.2?}",
        decimal::rational(mean_alpha, 4)
    ))
}

fn c5_limits() -> Check {
    let t = Instant::now();
    let phi = Quad::golden_ratio();
    let two = Quad::int(2);
    let lim_alpha = (&two * &(&phi * &phi)).recip().map_err(|e| e.to_string())?;
    let lim_beta = (&two * &phi).recip().map_err(|e| e.to_string())?;
    let rec = &density_series(&RecursiveSpec::y(), 40).map_err(|e| e.to_string())?[40];
    let eps = Quad::rational(BigRational::new(1.into(), BigInt::from(10u64).pow(12)));
    let da = (&Quad::rational(rec.densities[1].clone()) - &lim_alpha).abs();
    let db = (&Quad::rational(rec.densities[2].clone()) - &lim_beta).abs();
    let elapsed = t.elapsed();
    ensure(da < eps, format!("alpha gap {}", da.to_f64()))?;
    ensure(db < eps, format!("beta gap {}", db.to_f64()))?;
    within(elapsed, 100)?;
    Ok(format!("gaps {}, {} in {elapsed:.2?}", decimal::quad(&da, 20), decimal::quad(&db, 20)))
}

fn c6_thue_morse() -> Check {
    let t = Instant::now();
    let rep = tm_bounds_check(1 << 20).map_err(|e| e.to_string())?;
    let agree = tm_prefix(1 << 20, TmGenerator::Recurrence) == tm_prefix(1 << 20, TmGenerator::Morphism);
    let elapsed = t.elapsed();
    ensure(rep.power_of_two_checks.len() == 20, "k range")?;
    for c in &rep.power_of_two_checks {
        let half = 1u64 << (c.k - 1);
        ensure(c.zeros == half && c.ones == half, format!("k={} counts {} {}", c.k, c.zeros, c.ones))?;
    }
    ensure(rep.violation_count == 0, format!("{} sandwich violations", rep.violation_count))?;
    ensure(rep.holds(), "report does not hold")?;
    ensure(agree, "generators disagree")?;
    within(elapsed, 5000)?;
    Ok(format!("k<=20 balanced, {} n checked, generators agree in {elapsed:.2?}", rep.checked))
}

fn naive(s: &[u8]) -> Vec<usize> {
    (1..=s.len())
        .filter(|&l| (0..l / 2).all(|i| s[i] == s[l - 1 - i]))
        .collect()
}

fn c7_palindromes() -> Check {
    let t = Instant::now();
    let w = fibonacci_prefix(1_000_000);
    let rep = fischler_check("fibonacci", &w, 5).map_err(|e| e.to_string())?;
    ensure(rep.list.lengths.starts_with(&[1, 3, 6, 11, 19, 32]), "length prefix")?;
    let gap = (rep.estimate_f64() - 0.618034).abs();
    ensure(gap < 0.002, format!("estimate off by {gap}"))?;
    ensure(rep.verdict == Verdict::Holds, "fischler verdict")?;
    let sigma = |k| wordlab_core::Alphabet::sigma(k).unwrap();
    let mut corpora: Vec<Vec<u8>> = vec![
        fibonacci_prefix(5000).to_symbols(),
        tm_prefix(5000, TmGenerator::Morphism).to_symbols(),
        RecursiveSpec::y().limit_prefix(5000, DEFAULT_BUDGET).unwrap().to_symbols(),
        (0..5000).map(|i| (i % 2) as u8).collect(),
        Word::parse(&sigma(3), "0120").unwrap().to_symbols(),
    ];
    let mut x: u64 = 0x9E37_79B9_7F4A_7C15;
    corpora.push(
        (0..5000)
            .map(|_| {
                x ^= x << 13;
                x ^= x >> 7;
                x ^= x << 17;
                (x % 2) as u8
            })
            .collect(),
    );
    for c in &corpora {
        ensure(palindromic_prefix_lengths(c) == naive(c), "enumerator disagrees with naive oracle")?;
    }
    let elapsed = t.elapsed();
    within(elapsed, 10_000)?;
    Ok(format!(
        "estimate {} within {gap:.1e} of 1/phi, {} corpora agree in {elapsed:.2?}",
        decimal::rational(&rep.estimate, 6),
        corpora.len()
    ))
}

trait EstimateF64 {
    fn estimate_f64(&self) -> f64;
}

impl EstimateF64 for wordlab_core::palindromes::FischlerReport {
    fn estimate_f64(&self) -> f64 {
        decimal::rational(&self.estimate, 12).parse().unwrap()
    }
}

fn c8_identities() -> Check {
    let t = Instant::now();
    let neg = NegIndex::Negafibonacci;
    let ranges = [ParamRange::parse("m=2..50").unwrap(), ParamRange::parse("n=1..m-1").unwrap()];
    let doc = claim_sweep(ClaimId::DocagneStandard, &ranges, neg).map_err(|e| e.to_string())?;
    ensure(doc.summary.cases == 1225 && doc.summary.true_count == 1225, "docagne-standard")?;
    let p = claim_eval(ClaimId::Prop32, &[1, 4], neg).map_err(|e| e.to_string())?;
    ensure(
        (p.lhs_text(), p.rhs_text(), p.verdict) == ("-2/7".into(), "2".into(), ClaimVerdict::False),
        format!("prop32: {} vs {}", p.lhs_text(), p.rhs_text()),
    )?;
    let s = claim_eval(ClaimId::SafewordEq2, &[4], neg).map_err(|e| e.to_string())?;
    ensure(
        (s.lhs_text(), s.rhs_text(), s.verdict) == ("5".into(), "21".into(), ClaimVerdict::False),
        format!("safeword: {} vs {}", s.lhs_text(), s.rhs_text()),
    )?;
    let c31 = claim_eval(ClaimId::CatalanEq4, &[3, 1], neg).map_err(|e| e.to_string())?;
    let c41 = claim_eval(ClaimId::CatalanEq4, &[4, 1], neg).map_err(|e| e.to_string())?;
    ensure(c31.verdict == ClaimVerdict::True && c41.verdict == ClaimVerdict::False, "catalan-eq4")?;
    ensure(p.lhs.as_ref().is_some_and(|v| !v.is_zero()), "exact lhs")?;
    let args = ["id", "--claim", "docagne-standard", "--range", "m=2..50", "--range", "n=1..m-1", "--format", "csv"];
    let first = cli(&args);
    ensure(first == cli(&args), "CLI output not byte-identical")?;
    let elapsed = t.elapsed();
    within(elapsed, 1000)?;
    Ok(format!("1225/1225 control cases true; prop32 -2/7 vs 2; safeword 5 vs 21; catalan true/false in {elapsed:.2?}"))
}

fn c9_lemma42() -> Check {
    let spec = RecursiveSpec::y();
    let mut evaluated = 0;
    for n in [2, 7, 12] {
        for i in Lemma42Interp::ALL {
            let r = lemma42_check(&spec, n, i).map_err(|e| format!("n={n} {}: {e}", i.id()))?;
            ensure(!r.right_decimal.is_empty(), "empty value")?;
            evaluated += 1;
        }
    }
    let a7 = lemma42_check(&spec, 7, Lemma42Interp::A).map_err(|e| e.to_string())?;
    ensure(a7.right_exact == "ln(42/26)", format!("interp A at 7 = {}", a7.right_exact))?;
    let v: f64 = a7.right_decimal.parse().map_err(|_| "unparsable decimal".to_string())?;
    ensure(
        (v - 0.4797).abs() <= 1e-4,
        format!("A(7) = ln(42/26) = {v}, which is {:.2e} from the reference 0.4797", (v - 0.4797).abs()),
    )?;
    Ok(format!("{evaluated} evaluations; A(7) = {} = {}, verdict {}", a7.right_exact, a7.right_decimal, a7.verdict.as_str()))
}

fn c10_determinism() -> Check {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR"));
    let cases = std::fs::read_to_string(dir.join("tests/golden/cases.tsv")).map_err(|e| e.to_string())?;
    let mut count = 0;
    for line in cases.lines().filter(|l| !l.trim().is_empty() && !l.starts_with('#')) {
        let mut parts = line.splitn(3, '\t');
        let name = parts.next().unwrap();
        let args: Vec<&str> = parts.nth(1).unwrap().split_whitespace().collect();
        let golden = std::fs::read(dir.join(format!("tests/golden/{name}.out"))).map_err(|e| format!("{name}: {e}"))?;
        let mut outputs = Vec::new();
        for threads in [None, None, Some("1"), Some("4")] {
            let mut cmd = Command::new(env!("CARGO_BIN_EXE_wordlab"));
            cmd.args(&args).current_dir(dir);
            match threads {
                Some(t) => cmd.env("WORDLAB_THREADS", t),
                None => cmd.env_remove("WORDLAB_THREADS"),
            };
            outputs.push(cmd.output().map_err(|e| e.to_string())?.stdout);
        }
        ensure(outputs.iter().all(|o| *o == golden), format!("{name}: output varies or differs from golden"))?;
        count += 1;
    }
    Ok(format!("{count} golden cases identical over 2 runs and WORDLAB_THREADS in {{1, 4}}"))
}

/// Criteria whose reference value disagrees with its own exact expression.
/// They still print FAIL; an unexpected pass or any other failure is fatal.
const KNOWN_FAILURES: &[usize] = &[9];

fn main() {
    let criteria: [Criterion; 10] = [
        ("fibonacci word prefix", c1_fibonacci_word),
        ("density series coordinates", c2_figure1),
        ("count table rows", c3_table2),
        ("statistics table comparison", c4_table1),
        ("density limits", c5_limits),
        ("thue-morse counts and bounds", c6_thue_morse),
        ("palindrome density", c7_palindromes),
        ("identity lab", c8_identities),
        ("logarithmic bound checker", c9_lemma42),
        ("determinism", c10_determinism),
    ];
    let (mut failed, mut unexpected) = (0, 0);
    for (i, (name, check)) in criteria.iter().enumerate() {
        let known = KNOWN_FAILURES.contains(&(i + 1));
        match check() {
            Ok(detail) => {
                unexpected += known as usize;
                println!("PASS  {:>2}  {name}: {detail}", i + 1);
            }
            Err(why) => {
                failed += 1;
                unexpected += !known as usize;
                let tag = if known { " (known)" } else { "" };
                println!("FAIL  {:>2}  {name}{tag}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed, {unexpected} unexpected", criteria.len() - failed);
    if unexpected > 0 {
        std::process::exit(1);
    }
}

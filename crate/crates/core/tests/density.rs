use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use wordlab_core::counting::{
    counts_recursive, density_record, density_series, limit_densities, table1_comparison,
};
use wordlab_core::identity::fib;
use wordlab_core::stats::{pearson, summarize};
use wordlab_core::{Quad, RecursiveSpec, DEFAULT_BUDGET};

fn big(v: BigUint) -> BigInt {
    v.into()
}

#[test]
fn recurrence_counts_match_materialized_words() {
    let y = RecursiveSpec::y();
    for n in 0..=25 {
        let w = y.word(n, DEFAULT_BUDGET).unwrap();
        let counted: Vec<BigUint> = w.letter_counts().into_iter().map(BigUint::from).collect();
        let v = counts_recursive(&y, n);
        assert_eq!(v.counts, counted, "n = {n}");
        assert_eq!(v.total(), BigUint::from(w.len()));
    }
}

#[test]
fn counts_are_fibonacci_numbers() {
    let y = RecursiveSpec::y();
    for n in 2..=200u64 {
        let v = counts_recursive(&y, n);
        let f = |i: u64| fib(i as i64).unwrap();
        assert_eq!(big(v.counts[0].clone()), f(n + 1), "lambda_{n}");
        assert_eq!(big(v.counts[1].clone()), f(n - 1), "alpha_{n}");
        assert_eq!(big(v.counts[2].clone()), f(n), "beta_{n}");
        assert_eq!(big(v.total()), f(n + 1) * 2, "L_{n}");
    }
}

#[test]
fn zero_density_is_one_half_everywhere() {
    let half = BigRational::new(1.into(), 2.into());
    for r in density_series(&RecursiveSpec::y(), 300).unwrap() {
        assert_eq!(r.densities[0], half);
        assert_eq!(&r.densities[1] + &r.densities[2], half);
        assert_eq!(r.sum(), BigRational::from_integer(1.into()));
    }
}

#[test]
fn densities_approach_their_limits() {
    let y = RecursiveSpec::y();
    let lim = limit_densities(&y);
    let eps = Quad::rational(BigRational::new(1.into(), BigInt::from(10u64).pow(12)));
    let d40 = density_record(&y, 40).unwrap();
    for (a, (d, l)) in d40.densities.iter().zip(&lim).enumerate().skip(1) {
        let diff = (&Quad::rational(d.clone()) - l).abs();
        assert!(diff < eps, "letter {a}");
    }
}

#[test]
fn constant_series_have_zero_std_and_zero_correlation() {
    let c: Vec<BigRational> = (0..10).map(|_| BigRational::new(3.into(), 7.into())).collect();
    let other: Vec<BigRational> = (0..10).map(|i| BigRational::from_integer(i.into())).collect();
    let s = summarize(&c).unwrap();
    assert_eq!(s.sample_std_decimal(), "0.000000000");
    let r = pearson(&c, &other).unwrap();
    assert!(r.zero_variance);
    assert_eq!(r.decimal(), "0.000000000");
}

#[test]
fn statistics_against_the_reference_table() {
    let rep = table1_comparison(&RecursiveSpec::y(), 12).unwrap();
    let alpha = &rep.summaries[1];
    assert_eq!(alpha.median, BigRational::new(89.into(), 466.into()));
    assert_eq!(alpha.sample_std_decimal(), "0.105745579");
    assert!(rep.correlations[2].equals(&BigRational::from_integer((-1).into())));
    let flagged: Vec<_> = rep
        .cells
        .iter()
        .filter(|c| c.mismatch)
        .map(|c| format!("{}:{}", c.statistic, c.series))
        .collect();
    assert_eq!(
        flagged,
        ["mean:alpha", "std:alpha", "mean:beta", "std:beta", "corr:alpha~beta"]
    );
}

//! The doubled and trimmed words built from a factor `m`, and a
//! configurable evaluator for the density expression combining them.
//!
//! Several subterms have no fixed meaning for finite words; each is either
//! given one by [`Thm51Config`] or reported as undefined.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::decimal;
use crate::error::{Error, Result};
use crate::report::{BoundReport, Verdict};
use crate::surd::Quad;
use crate::word::{Symbol, Word};

/// What `dens` of a finite word means.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DensReading {
    /// Largest symbol value at 1-based positions `start..=|w|`.
    SymbolValue { start: usize },
    /// Relative frequency of `letter`.
    Frequency { letter: Symbol },
}

/// What `m + m^⊥` means when the lengths differ.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SumReading {
    #[default]
    Undefined,
    /// The concatenation `m m^⊥`.
    Concatenate,
}

/// How `dens(m − m*)` is computed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum DiffReading {
    /// `max{dens(m₁), dens(m_i)}` on the two end letters.
    #[default]
    MaxRule,
    /// `dens` of the word `(m₁, 0, …, 0, m_i)`.
    Pointwise,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Thm51Config {
    pub dens: DensReading,
    pub sum: SumReading,
    pub diff: DiffReading,
}

impl Default for Thm51Config {
    fn default() -> Self {
        Thm51Config {
            dens: DensReading::SymbolValue { start: 1 },
            sum: SumReading::Undefined,
            diff: DiffReading::MaxRule,
        }
    }
}

impl Thm51Config {
    pub fn describe(&self) -> Vec<(String, String)> {
        let dens = match self.dens {
            DensReading::SymbolValue { start } => format!("symbol-value:start={start}"),
            DensReading::Frequency { letter } => format!("frequency:letter={letter}"),
        };
        let sum = match self.sum {
            SumReading::Undefined => "undefined",
            SumReading::Concatenate => "concatenate",
        };
        let diff = match self.diff {
            DiffReading::MaxRule => "max-rule",
            DiffReading::Pointwise => "pointwise",
        };
        vec![
            ("dens".into(), dens),
            ("sum".into(), sum.into()),
            ("diff".into(), diff.into()),
        ]
    }
}

/// Each letter written twice: `m₁m₁ m₂m₂ ⋯`.
pub fn doubled(m: &Word) -> Word {
    let mut out = Word::with_capacity(m.alphabet(), 2 * m.len());
    for s in m.iter() {
        out.push(s);
        out.push(s);
    }
    out
}

fn dens(w: &Word, reading: DensReading) -> Option<BigRational> {
    match reading {
        DensReading::SymbolValue { start } => {
            let from = start.max(1) - 1;
            (from < w.len()).then(|| {
                let max = (from..w.len()).map(|i| w.get(i).expect("in range")).max().expect("nonempty");
                BigRational::from_integer(max.into())
            })
        }
        DensReading::Frequency { letter } => (!w.is_empty()).then(|| {
            let count = w.iter().filter(|&s| s == letter).count();
            BigRational::new(BigInt::from(count), BigInt::from(w.len()))
        }),
    }
}

fn letter_dens(s: Symbol, reading: DensReading) -> BigRational {
    match reading {
        DensReading::SymbolValue { .. } => BigRational::from_integer(s.into()),
        DensReading::Frequency { letter } => BigRational::from_integer(u8::from(s == letter).into()),
    }
}

/// A named density value, or `None` when undefined.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub name: &'static str,
    pub value: Option<BigRational>,
}

#[derive(Clone, Debug)]
pub struct Thm51Report {
    pub config: Thm51Config,
    pub m: Word,
    pub m_perp: Word,
    pub m_star: Word,
    pub m_perp_star: Word,
    /// `dens(m)`, `dens(m^⊥)`, `dens(m*)`, `dens(m^{⊥,*})`, `dens(m+m^⊥)`, `dens(m−m*)`.
    pub densities: Vec<Term>,
    /// The three fractions, in order.
    pub fractions: Vec<Term>,
    /// Sum of the fractions minus `2/φ`, when every fraction is defined.
    pub total: Option<Quad>,
    /// Every subterm without a value, with the reason.
    pub undefined: Vec<String>,
    /// `dens(m^⊥)/dens(m*) ≤ 2/φ`, when the left side is defined.
    pub ratio_bound: Option<BoundReport>,
}

fn divide(
    num: Option<BigRational>,
    den: Option<&BigRational>,
    label: &'static str,
    den_label: &str,
    undefined: &mut Vec<String>,
) -> Term {
    let value = match (num, den) {
        (Some(n), Some(d)) if !d.is_zero() => Some(n / d),
        (Some(_), Some(_)) => {
            undefined.push(format!("{label}: division by zero, {den_label} = 0"));
            None
        }
        _ => {
            undefined.push(format!("{label}: depends on an undefined density"));
            None
        }
    };
    Term { name: label, value }
}

pub fn thm51_report(m: &Word, config: Thm51Config) -> Result<Thm51Report> {
    if m.len() < 3 {
        return Err(Error::invalid(format!("m must have length at least 3, got {}", m.len())));
    }
    let m_perp = doubled(m);
    let m_star = m.interior()?;
    let m_perp_star = doubled(&m_star);
    let mut undefined = Vec::new();

    let mut named = |name: &'static str, value: Option<BigRational>, why: &str| {
        if value.is_none() {
            undefined.push(format!("{name}: {why}"));
        }
        Term { name, value }
    };
    let empty_tail = "empty tail under the configured start index";
    let d_m = named("dens(m)", dens(m, config.dens), empty_tail);
    let d_perp = named("dens(m^perp)", dens(&m_perp, config.dens), empty_tail);
    let d_star = named("dens(m*)", dens(&m_star, config.dens), empty_tail);
    let d_perp_star = named("dens(m^perp,*)", dens(&m_perp_star, config.dens), empty_tail);
    let d_sum = match config.sum {
        SumReading::Undefined => named(
            "dens(m+m^perp)",
            None,
            &format!("|m| = {} differs from |m^perp| = {}", m.len(), m_perp.len()),
        ),
        SumReading::Concatenate => named(
            "dens(m+m^perp)",
            dens(&m.concat(&m_perp)?, config.dens),
            empty_tail,
        ),
    };
    let first = m.get(0).expect("|m| >= 3");
    let last = m.get(m.len() - 1).expect("|m| >= 3");
    let d_diff = match config.diff {
        DiffReading::MaxRule => named(
            "dens(m-m*)",
            Some(letter_dens(first, config.dens).max(letter_dens(last, config.dens))),
            "",
        ),
        DiffReading::Pointwise => {
            let mut syms = vec![0; m.len()];
            syms[0] = first;
            syms[m.len() - 1] = last;
            let w = Word::from_symbols(m.alphabet(), &syms)?;
            named("dens(m-m*)", dens(&w, config.dens), empty_tail)
        }
    };

    let sum_num = match (&d_m.value, &d_perp.value) {
        (Some(a), Some(b)) => Some(a + b),
        _ => None,
    };
    let t1 = divide(sum_num, d_sum.value.as_ref(), "T1", "dens(m+m^perp)", &mut undefined);
    let t2 = divide(d_perp.value.clone(), d_star.value.as_ref(), "T2", "dens(m*)", &mut undefined);
    let t3 = divide(d_perp_star.value.clone(), d_diff.value.as_ref(), "T3", "dens(m-m*)", &mut undefined);

    let two_inv_phi = Quad::inverse_golden_ratio().mul_rational(&BigRational::from_integer(2.into()));
    let total = match (&t1.value, &t2.value, &t3.value) {
        (Some(a), Some(b), Some(c)) => Some(&Quad::rational(a + b + c) - &two_inv_phi),
        _ => {
            undefined.push("total: at least one fraction is undefined".into());
            None
        }
    };
    let ratio_bound = t2.value.as_ref().map(|v| {
        let holds = (&two_inv_phi - &Quad::rational(v.clone())).signum() != Ordering::Less;
        BoundReport {
            claim: "thm51-ratio".into(),
            params: vec![("m".into(), m.to_string())],
            interpretation: Some(config.describe()[0].1.clone()),
            left_exact: decimal::compact(v),
            left_decimal: decimal::rational(v, decimal::PLACES),
            right_exact: two_inv_phi.to_string(),
            right_decimal: decimal::quad(&two_inv_phi, decimal::PLACES),
            verdict: Verdict::from_le(holds),
            notes: vec!["dens(m^perp)/dens(m*) <= 2/phi".into()],
        }
    });

    Ok(Thm51Report {
        config,
        m: m.clone(),
        m_perp,
        m_star,
        m_perp_star,
        densities: vec![d_m, d_perp, d_star, d_perp_star, d_sum, d_diff],
        fractions: vec![t1, t2, t3],
        total,
        undefined,
        ratio_bound,
    })
}

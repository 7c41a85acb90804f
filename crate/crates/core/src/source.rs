use crate::error::{Error, Result};
use crate::generate::{fibonacci_prefix, RecursiveSpec};
use crate::morphism::Morphism;
use crate::thue_morse::{tm_prefix, TmGenerator};
use crate::word::{Symbol, Word};

/// Something that can produce arbitrarily long prefixes of an infinite word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WordSource {
    Fibonacci,
    ThueMorse,
    /// The limit of the `y₀ = 01`, `y₁ = 02` recursion.
    Y,
    Recursive(RecursiveSpec),
    /// `x x x …` for a nonempty period `x`.
    Periodic(Word),
    Morphic { morphism: Morphism, seed: Symbol },
    /// A finite word; prefixes longer than it are refused.
    Explicit(Word),
}

impl WordSource {
    pub fn prefix(&self, len: usize, budget: usize) -> Result<Word> {
        if len > budget {
            return Err(Error::ResourceLimit {
                n: len as i64,
                detail: format!("prefix length {len} exceeds the budget of {budget} symbols"),
            });
        }
        match self {
            WordSource::Fibonacci => Ok(fibonacci_prefix(len)),
            WordSource::ThueMorse => Ok(tm_prefix(len, TmGenerator::Morphism)),
            WordSource::Y => RecursiveSpec::y().limit_prefix(len, budget),
            WordSource::Recursive(spec) => spec.limit_prefix(len, budget),
            WordSource::Periodic(period) => {
                if period.is_empty() {
                    return Err(Error::invalid("a period must be nonempty"));
                }
                let mut out = Word::with_capacity(period.alphabet(), len);
                while out.len() < len {
                    let take = period.len().min(len - out.len());
                    out.extend_from(period, 0..take);
                }
                Ok(out)
            }
            WordSource::Morphic { morphism, seed } => morphism.fixed_point_prefix(*seed, len),
            WordSource::Explicit(w) => {
                if len > w.len() {
                    return Err(Error::invalid(format!(
                        "asked for {len} symbols of an explicit word of length {}",
                        w.len()
                    )));
                }
                Ok(w.prefix(len))
            }
        }
    }

    pub fn describe(&self) -> String {
        match self {
            WordSource::Fibonacci => "fibonacci".into(),
            WordSource::ThueMorse => "thue-morse".into(),
            WordSource::Y => "y".into(),
            WordSource::Recursive(spec) => format!("recursive:{},{}", spec.seed0(), spec.seed1()),
            WordSource::Periodic(p) => format!("periodic:{p}"),
            WordSource::Morphic { seed, .. } => format!("morphic:seed={seed}"),
            WordSource::Explicit(w) => format!("word:{w}"),
        }
    }
}

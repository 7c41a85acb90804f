//! Word generators that do not go through a morphism: the two-seed
//! concatenation recursion and the direct Fibonacci-word recurrence.

use crate::error::{Error, Result};
use crate::word::{Alphabet, Word};

/// Default cap on materialized word length, in symbols.
pub const DEFAULT_BUDGET: usize = 1 << 30;

/// Two seeds `y₀`, `y₁` and the rule `y_n = y_{n−1} y_{n−2}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecursiveSpec {
    seed0: Word,
    seed1: Word,
}

impl RecursiveSpec {
    pub fn new(seed0: Word, seed1: Word) -> Result<Self> {
        if seed0.is_empty() || seed1.is_empty() {
            return Err(Error::invalid("recursion seeds must be nonempty"));
        }
        if seed0.alphabet() != seed1.alphabet() {
            return Err(Error::invalid("recursion seeds must share an alphabet"));
        }
        Ok(RecursiveSpec { seed0, seed1 })
    }

    /// The ternary word with `y₀ = 01`, `y₁ = 02`.
    pub fn y() -> Self {
        let s3 = Alphabet::sigma(3).expect("k = 3");
        Self::new(
            Word::parse(&s3, "01").expect("valid"),
            Word::parse(&s3, "02").expect("valid"),
        )
        .expect("valid seeds")
    }

    pub fn seed0(&self) -> &Word {
        &self.seed0
    }

    pub fn seed1(&self) -> &Word {
        &self.seed1
    }

    pub fn alphabet(&self) -> &Alphabet {
        self.seed0.alphabet()
    }

    /// `|y_n|`, or `None` if it does not fit in a `u128`.
    pub fn length(&self, n: u64) -> Option<u128> {
        let (mut a, mut b) = (self.seed0.len() as u128, self.seed1.len() as u128);
        if n == 0 {
            return Some(a);
        }
        for _ in 1..n {
            let c = a.checked_add(b)?;
            a = b;
            b = c;
        }
        Some(b)
    }

    /// Materializes `y_n`, refusing if `|y_n|` exceeds `budget` symbols.
    pub fn word(&self, n: u64, budget: usize) -> Result<Word> {
        self.check_budget(n, budget)?;
        match n {
            0 => return Ok(self.seed0.clone()),
            1 => return Ok(self.seed1.clone()),
            _ => {}
        }
        let target = self.length(n).expect("checked above") as usize;
        let mut buf = Word::with_capacity(self.alphabet(), target);
        buf.extend_from(&self.seed1, 0..self.seed1.len());
        buf.extend_from(&self.seed0, 0..self.seed0.len());
        // From y_2 on, y_{i-2} is a prefix of y_{i-1}.
        let (mut older, mut newer) = (self.seed1.len(), buf.len());
        for _ in 3..=n {
            buf.extend_from_own_prefix(older);
            older = newer;
            newer = buf.len();
        }
        Ok(buf)
    }

    /// The first `len` symbols of `lim y_n` (every `y_n` with `n ≥ 1` is a
    /// prefix of `y_{n+1}`).
    pub fn limit_prefix(&self, len: usize, budget: usize) -> Result<Word> {
        if len > budget {
            return Err(Error::ResourceLimit {
                n: len as i64,
                detail: format!("prefix length {len} exceeds the budget of {budget} symbols"),
            });
        }
        let mut n = 1;
        while self.length(n).is_some_and(|l| l < len as u128) {
            n += 1;
        }
        // |y_n| < 2 * len + |y_0| + |y_1| for the first n with |y_n| >= len.
        let slack = budget
            .saturating_mul(2)
            .saturating_add(self.seed0.len() + self.seed1.len());
        let full = self.word(n, slack)?;
        Ok(full.prefix(len))
    }

    /// The block concatenation `y₂ y₃ ⋯ y_{n−1}` (empty for `n ≤ 2`).
    pub fn block_drop(&self, n: u64, budget: usize) -> Result<Word> {
        let mut out = Word::empty(self.alphabet());
        if n <= 2 {
            return Ok(out);
        }
        let total: u128 = (2..n).map(|i| self.length(i).unwrap_or(u128::MAX)).fold(0u128, u128::saturating_add);
        if total > budget as u128 {
            return Err(Error::ResourceLimit {
                n: n as i64,
                detail: format!("y_2 ... y_{} has {total} symbols, over the budget of {budget}", n - 1),
            });
        }
        let last = self.word(n - 1, budget)?;
        for i in 2..n {
            let len = self.length(i).expect("bounded by total") as usize;
            // y_i is a prefix of y_{n-1} for 2 <= i <= n-1.
            out.extend_from(&last, 0..len);
        }
        Ok(out)
    }

    fn check_budget(&self, n: u64, budget: usize) -> Result<()> {
        match self.length(n) {
            Some(l) if l <= budget as u128 => Ok(()),
            len => Err(Error::ResourceLimit {
                n: n as i64,
                detail: match len {
                    Some(l) => format!("|y_{n}| = {l} exceeds the budget of {budget} symbols"),
                    None => format!("|y_{n}| exceeds 2^128 symbols"),
                },
            }),
        }
    }
}

/// The first `len` symbols of the Fibonacci word, built from
/// `s₋₁ = 1`, `s₀ = 0`, `s_j = s_{j−1} s_{j−2}`.
pub fn fibonacci_prefix(len: usize) -> Word {
    let s2 = Alphabet::sigma(2).expect("k = 2");
    let mut buf = Word::with_capacity(&s2, len.max(2));
    buf.push(0);
    buf.push(1);
    let (mut older, mut newer) = (1usize, 2usize);
    while buf.len() < len {
        buf.extend_from_own_prefix(older);
        older = newer;
        newer = buf.len();
    }
    buf.truncate(len);
    buf
}

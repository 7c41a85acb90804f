use std::fmt;

use crate::error::{Error, Result};
use crate::word::{Alphabet, Symbol, Word};

/// A non-erasing morphism, given by one nonempty image per symbol.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    alphabet: Alphabet,
    images: Vec<Word>,
}

impl Morphism {
    pub fn new(alphabet: &Alphabet, images: Vec<Word>) -> Result<Self> {
        if images.len() != alphabet.size() {
            return Err(Error::invalid(format!(
                "a morphism on {} symbols needs {} images, got {}",
                alphabet.size(),
                alphabet.size(),
                images.len()
            )));
        }
        for (a, img) in images.iter().enumerate() {
            if img.alphabet() != alphabet {
                return Err(Error::invalid(format!(
                    "image of symbol {a} is over a different alphabet"
                )));
            }
            if img.is_empty() {
                return Err(Error::invalid(format!("image of symbol {a} is empty")));
            }
        }
        Ok(Morphism {
            alphabet: alphabet.clone(),
            images,
        })
    }

    pub fn from_images(alphabet: &Alphabet, images: &[&str]) -> Result<Self> {
        let images = images
            .iter()
            .map(|s| Word::parse(alphabet, s))
            .collect::<Result<Vec<_>>>()?;
        Self::new(alphabet, images)
    }

    /// `0 ↦ 01, 1 ↦ 0`.
    pub fn fibonacci() -> Self {
        Self::from_images(&binary(), &["01", "0"]).expect("well-formed")
    }

    /// `0 ↦ 01, 1 ↦ 10`.
    pub fn thue_morse() -> Self {
        Self::from_images(&binary(), &["01", "10"]).expect("well-formed")
    }

    /// Parses the one-rule-per-line text format:
    ///
    /// ```text
    /// # Fibonacci
    /// 0 -> 01
    /// 1 -> 0
    /// ```
    ///
    /// Symbols are single decimal digits. The alphabet is `Σ_k` where `k − 1`
    /// is the largest digit mentioned anywhere, and every symbol needs a rule.
    pub fn parse(text: &str) -> Result<Self> {
        let mut rules: Vec<(usize, Symbol, Vec<Symbol>)> = Vec::new();
        let mut max_symbol = 0u8;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let perr = |message: String| Error::Parse { line, message };
            let (lhs, rhs) = content
                .split_once("->")
                .ok_or_else(|| perr(format!("expected `<symbol> -> <image>`, got {content:?}")))?;
            let lhs = lhs.trim();
            let rhs = rhs.trim();
            let mut chars = lhs.chars();
            let symbol = match (chars.next(), chars.next()) {
                (Some(c), None) if c.is_ascii_digit() => c as u8 - b'0',
                _ => return Err(perr(format!("symbol must be a single digit, got {lhs:?}"))),
            };
            if rhs.is_empty() {
                return Err(perr(format!("image of {symbol} is empty")));
            }
            let image = rhs
                .chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as u8)
                        .ok_or_else(|| perr(format!("image symbol {c:?} is not a digit")))
                })
                .collect::<Result<Vec<_>>>()?;
            if rules.iter().any(|(_, s, _)| *s == symbol) {
                return Err(perr(format!("duplicate rule for symbol {symbol}")));
            }
            max_symbol = image.iter().copied().fold(max_symbol.max(symbol), u8::max);
            rules.push((line, symbol, image));
        }
        if rules.is_empty() {
            return Err(Error::Parse {
                line: text.lines().count().max(1),
                message: "no rules found".into(),
            });
        }
        let alphabet = Alphabet::sigma(max_symbol as usize + 1)?;
        let mut images = Vec::with_capacity(alphabet.size());
        for a in 0..=max_symbol {
            let (_, _, img) = rules.iter().find(|(_, s, _)| *s == a).ok_or_else(|| {
                Error::invalid(format!("no rule for symbol {a}; a morphism must be total"))
            })?;
            images.push(Word::from_symbols_unchecked(&alphabet, img));
        }
        Self::new(&alphabet, images)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn image(&self, s: Symbol) -> &Word {
        &self.images[s as usize]
    }

    pub fn apply(&self, w: &Word) -> Result<Word> {
        if w.alphabet() != &self.alphabet {
            return Err(Error::invalid(
                "word and morphism are over different alphabets",
            ));
        }
        let out_len: usize = w.iter().map(|s| self.image(s).len()).sum();
        let mut out = Word::with_capacity(&self.alphabet, out_len);
        for s in w.iter() {
            let img = self.image(s);
            out.extend_from(img, 0..img.len());
        }
        Ok(out)
    }

    /// `h(seed)` starts with `seed` and has length at least 2.
    pub fn is_prolongable(&self, seed: Symbol) -> bool {
        self.alphabet.contains(seed) && {
            let img = self.image(seed);
            img.len() >= 2 && img.get(0) == Some(seed)
        }
    }

    /// The first `len` symbols of the fixed point `h^ω(seed)`.
    ///
    /// The output doubles as the read tape: once `out[..i]` has been expanded,
    /// `out` is exactly `h(out[..i])`, so each symbol is expanded once.
    pub fn fixed_point_prefix(&self, seed: Symbol, len: usize) -> Result<Word> {
        if !self.is_prolongable(seed) {
            return Err(Error::invalid(format!(
                "symbol {seed} is not prolongable: its image must start with it and have length >= 2"
            )));
        }
        let first = self.image(seed);
        let mut out = Word::with_capacity(&self.alphabet, len);
        out.extend_from(first, 0..first.len().min(len));
        let mut read = 1;
        while out.len() < len {
            let s = out.get(read).expect("tape stays ahead of the read head");
            let img = self.image(s);
            let take = img.len().min(len - out.len());
            out.extend_from(img, 0..take);
            read += 1;
        }
        Ok(out)
    }
}

impl fmt::Display for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (a, img) in self.images.iter().enumerate() {
            let glyph = self.alphabet.glyph(a as Symbol).unwrap_or('?');
            writeln!(f, "{glyph} -> {img}")?;
        }
        Ok(())
    }
}

fn binary() -> Alphabet {
    Alphabet::sigma(2).expect("k = 2")
}

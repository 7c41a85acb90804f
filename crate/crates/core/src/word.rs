//! Alphabets and finite words.
//!
//! Symbols are small integer codes `0..k`. Words over alphabets with at most
//! four symbols are stored two bits per symbol; larger alphabets use one byte
//! per symbol. The representation is not observable through the public API.

use std::fmt;
use std::ops::Range;
use std::sync::Arc;

use crate::error::{Error, Result};

pub type Symbol = u8;

const DEFAULT_GLYPHS: &str = "0123456789abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ";

/// The largest alphabet a [`Word`] can carry (symbols are stored as `u8`).
pub const MAX_ALPHABET: usize = 256;

/// A finite alphabet `Σ_k = {0, …, k−1}` with optional display glyphs.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Alphabet {
    glyphs: Arc<[Option<char>]>,
}

impl Alphabet {
    /// `Σ_k` with the default glyphs `0-9`, `a-z`, `A-Z` (symbols past 61 have none).
    pub fn sigma(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::invalid("alphabet size must be at least 1"));
        }
        if k > MAX_ALPHABET {
            return Err(Error::invalid(format!(
                "alphabet size {k} exceeds the supported maximum {MAX_ALPHABET}"
            )));
        }
        let mut defaults = DEFAULT_GLYPHS.chars();
        let glyphs: Vec<Option<char>> = (0..k).map(|_| defaults.next()).collect();
        Ok(Alphabet {
            glyphs: glyphs.into(),
        })
    }

    /// An alphabet whose symbol `i` renders as `glyphs[i]`.
    pub fn with_glyphs(glyphs: &[char]) -> Result<Self> {
        if glyphs.is_empty() || glyphs.len() > MAX_ALPHABET {
            return Err(Error::invalid(format!(
                "alphabet size {} outside 1..={MAX_ALPHABET}",
                glyphs.len()
            )));
        }
        for (i, g) in glyphs.iter().enumerate() {
            if glyphs[..i].contains(g) {
                return Err(Error::invalid(format!("duplicate glyph {g:?}")));
            }
        }
        let glyphs: Vec<Option<char>> = glyphs.iter().copied().map(Some).collect();
        Ok(Alphabet {
            glyphs: glyphs.into(),
        })
    }

    pub fn size(&self) -> usize {
        self.glyphs.len()
    }

    pub fn contains(&self, s: Symbol) -> bool {
        (s as usize) < self.size()
    }

    pub fn glyph(&self, s: Symbol) -> Option<char> {
        self.glyphs.get(s as usize).copied().flatten()
    }

    pub fn symbol_of(&self, glyph: char) -> Option<Symbol> {
        self.glyphs
            .iter()
            .position(|g| *g == Some(glyph))
            .map(|i| i as Symbol)
    }

    fn packs(&self) -> bool {
        self.size() <= 4
    }
}

#[derive(Clone, Debug)]
enum Storage {
    /// Two bits per symbol, little-endian within each `u64`. Bits past `len` are zero.
    Packed(Vec<u64>),
    Bytes(Vec<u8>),
}

const PER_CHUNK: usize = 32;

/// Reads up to 32 symbols starting at symbol index `start`.
fn chunk_at(words: &[u64], start: usize) -> u64 {
    let bit = start * 2;
    let (w, off) = (bit / 64, bit % 64);
    let lo = words.get(w).copied().unwrap_or(0) >> off;
    if off == 0 {
        lo
    } else {
        lo | (words.get(w + 1).copied().unwrap_or(0) << (64 - off))
    }
}

fn push_chunk(words: &mut Vec<u64>, len: &mut usize, bits: u64, count: usize) {
    debug_assert!(count <= PER_CHUNK);
    if count == 0 {
        return;
    }
    let bits = if count == PER_CHUNK {
        bits
    } else {
        bits & ((1u64 << (2 * count)) - 1)
    };
    let off = (*len * 2) % 64;
    if off == 0 {
        words.push(bits);
    } else {
        *words.last_mut().expect("nonzero offset implies a partial word") |= bits << off;
        if off + 2 * count > 64 {
            words.push(bits >> (64 - off));
        }
    }
    *len += count;
}

/// A finite word over an [`Alphabet`].
#[derive(Clone)]
pub struct Word {
    alphabet: Alphabet,
    len: usize,
    storage: Storage,
}

impl Word {
    pub fn empty(alphabet: &Alphabet) -> Self {
        Self::with_capacity(alphabet, 0)
    }

    pub(crate) fn with_capacity(alphabet: &Alphabet, cap: usize) -> Self {
        let storage = if alphabet.packs() {
            Storage::Packed(Vec::with_capacity(cap.div_ceil(PER_CHUNK)))
        } else {
            Storage::Bytes(Vec::with_capacity(cap))
        };
        Word {
            alphabet: alphabet.clone(),
            len: 0,
            storage,
        }
    }

    pub fn from_symbols(alphabet: &Alphabet, symbols: &[Symbol]) -> Result<Self> {
        if let Some(bad) = symbols.iter().find(|s| !alphabet.contains(**s)) {
            return Err(Error::invalid(format!(
                "symbol {bad} is outside an alphabet of size {}",
                alphabet.size()
            )));
        }
        Ok(Self::from_symbols_unchecked(alphabet, symbols))
    }

    pub(crate) fn from_symbols_unchecked(alphabet: &Alphabet, symbols: &[Symbol]) -> Self {
        let mut w = Self::with_capacity(alphabet, symbols.len());
        match &mut w.storage {
            Storage::Bytes(v) => {
                v.extend_from_slice(symbols);
                w.len = symbols.len();
            }
            Storage::Packed(words) => {
                for block in symbols.chunks(PER_CHUNK) {
                    let bits = block
                        .iter()
                        .enumerate()
                        .fold(0u64, |acc, (i, &s)| acc | (u64::from(s) << (2 * i)));
                    push_chunk(words, &mut w.len, bits, block.len());
                }
            }
        }
        w
    }

    /// Parses a word written with the alphabet's glyphs, e.g. `"0201"`.
    pub fn parse(alphabet: &Alphabet, text: &str) -> Result<Self> {
        let symbols = text
            .chars()
            .map(|c| {
                alphabet.symbol_of(c).ok_or_else(|| {
                    Error::invalid(format!(
                        "glyph {c:?} is not in an alphabet of size {}",
                        alphabet.size()
                    ))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_symbols_unchecked(alphabet, &symbols))
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> Option<Symbol> {
        if i >= self.len {
            return None;
        }
        Some(match &self.storage {
            Storage::Bytes(v) => v[i],
            Storage::Packed(words) => ((words[i / PER_CHUNK] >> (2 * (i % PER_CHUNK))) & 3) as u8,
        })
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = Symbol> + '_ {
        (0..self.len).map(move |i| self.get(i).expect("index below len"))
    }

    pub fn to_symbols(&self) -> Vec<Symbol> {
        match &self.storage {
            Storage::Bytes(v) => v.clone(),
            Storage::Packed(_) => self.iter().collect(),
        }
    }

    pub(crate) fn push(&mut self, s: Symbol) {
        debug_assert!(self.alphabet.contains(s));
        match &mut self.storage {
            Storage::Bytes(v) => {
                v.push(s);
                self.len += 1;
            }
            Storage::Packed(words) => push_chunk(words, &mut self.len, u64::from(s), 1),
        }
    }

    /// Appends `src[range]`. Both words must share an alphabet.
    pub(crate) fn extend_from(&mut self, src: &Word, range: Range<usize>) {
        debug_assert_eq!(self.alphabet, src.alphabet);
        debug_assert!(range.end <= src.len);
        match (&mut self.storage, &src.storage) {
            (Storage::Bytes(dst), Storage::Bytes(s)) => {
                dst.extend_from_slice(&s[range.clone()]);
                self.len += range.len();
            }
            (Storage::Packed(dst), Storage::Packed(s)) => {
                let mut at = range.start;
                while at < range.end {
                    let count = PER_CHUNK.min(range.end - at);
                    push_chunk(dst, &mut self.len, chunk_at(s, at), count);
                    at += count;
                }
            }
            _ => unreachable!("storage kind is a function of the alphabet"),
        }
    }

    /// Appends a copy of this word's own prefix of length `k`.
    pub(crate) fn extend_from_own_prefix(&mut self, k: usize) {
        debug_assert!(k <= self.len);
        match &mut self.storage {
            Storage::Bytes(v) => {
                v.extend_from_within(..k);
                self.len += k;
            }
            Storage::Packed(words) => {
                let mut at = 0;
                while at < k {
                    let count = PER_CHUNK.min(k - at);
                    let bits = chunk_at(words, at);
                    push_chunk(words, &mut self.len, bits, count);
                    at += count;
                }
            }
        }
    }

    pub(crate) fn truncate(&mut self, n: usize) {
        if n >= self.len {
            return;
        }
        match &mut self.storage {
            Storage::Bytes(v) => v.truncate(n),
            Storage::Packed(words) => {
                words.truncate(n.div_ceil(PER_CHUNK));
                let rem = n % PER_CHUNK;
                if rem != 0 {
                    if let Some(last) = words.last_mut() {
                        *last &= (1u64 << (2 * rem)) - 1;
                    }
                }
            }
        }
        self.len = n;
    }

    /// The subword `self[range]`.
    pub fn slice(&self, range: Range<usize>) -> Result<Word> {
        if range.start > range.end || range.end > self.len {
            return Err(Error::invalid(format!(
                "range {}..{} outside a word of length {}",
                range.start, range.end, self.len
            )));
        }
        let mut w = Word::with_capacity(&self.alphabet, range.len());
        w.extend_from(self, range);
        Ok(w)
    }

    /// The prefix of length `min(n, |self|)`.
    pub fn prefix(&self, n: usize) -> Word {
        let mut w = Word::with_capacity(&self.alphabet, n.min(self.len));
        w.extend_from(self, 0..n.min(self.len));
        w
    }

    pub fn concat(&self, other: &Word) -> Result<Word> {
        if self.alphabet != other.alphabet {
            return Err(Error::invalid("cannot concatenate words over different alphabets"));
        }
        let mut w = Word::with_capacity(&self.alphabet, self.len + other.len);
        w.extend_from(self, 0..self.len);
        w.extend_from(other, 0..other.len);
        Ok(w)
    }

    pub fn is_prefix_of(&self, other: &Word) -> bool {
        self.alphabet == other.alphabet
            && self.len <= other.len
            && self.iter().zip(other.iter()).all(|(a, b)| a == b)
    }

    /// `|w|_a` for every symbol `a` of the alphabet.
    pub fn letter_counts(&self) -> Vec<u64> {
        let mut counts = vec![0u64; self.alphabet.size()];
        match &self.storage {
            Storage::Bytes(v) => v.iter().for_each(|&s| counts[s as usize] += 1),
            Storage::Packed(_) => self.iter().for_each(|s| counts[s as usize] += 1),
        }
        counts
    }

    /// The mirror image `w^R`.
    pub fn reverse(&self) -> Word {
        let mut symbols = self.to_symbols();
        symbols.reverse();
        Word::from_symbols_unchecked(&self.alphabet, &symbols)
    }

    pub fn is_palindrome(&self) -> bool {
        let n = self.len;
        (0..n / 2).all(|i| self.get(i) == self.get(n - 1 - i))
    }

    /// The word with its first and last symbols removed.
    pub fn interior(&self) -> Result<Word> {
        if self.len < 2 {
            return Err(Error::invalid(format!(
                "interior needs a word of length at least 2, got {}",
                self.len
            )));
        }
        self.slice(1..self.len - 1)
    }
}

impl PartialEq for Word {
    fn eq(&self, other: &Self) -> bool {
        self.alphabet == other.alphabet
            && self.len == other.len
            && match (&self.storage, &other.storage) {
                (Storage::Packed(a), Storage::Packed(b)) => a == b,
                (Storage::Bytes(a), Storage::Bytes(b)) => a == b,
                _ => false,
            }
    }
}

impl Eq for Word {}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::with_capacity(self.len);
        for s in self.iter() {
            match self.alphabet.glyph(s) {
                Some(c) => out.push(c),
                None => {
                    out.push('[');
                    out.push_str(&s.to_string());
                    out.push(']');
                }
            }
        }
        f.write_str(&out)
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.len <= 64 {
            write!(f, "Word({:?}, k={})", self.to_string(), self.alphabet.size())
        } else {
            write!(
                f,
                "Word({:?}…, len={}, k={})",
                self.prefix(64).to_string(),
                self.len,
                self.alphabet.size()
            )
        }
    }
}

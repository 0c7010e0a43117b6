//! Alphabets, signed letters and words over a finite generating set.
//!
//! Text convention: a lowercase symbol stands for a generator and the
//! matching uppercase symbol for its inverse, so `"abA"` spells
//! `a · b · a⁻¹`. The empty string is the empty word (the identity).

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("unknown symbol at position {0}")]
    UnknownSymbol(usize),
    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),
}

/// Ordered set of generator names. Each name is a lowercase ASCII letter.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Alphabet {
    symbols: Vec<char>,
}

impl Alphabet {
    pub fn new(symbols: &str) -> Result<Self, WordError> {
        let symbols: Vec<char> = symbols.chars().filter(|c| !c.is_whitespace()).collect();
        if symbols.is_empty() {
            return Err(WordError::InvalidAlphabet("no generators".into()));
        }
        if symbols.len() > u8::MAX as usize {
            return Err(WordError::InvalidAlphabet("too many generators".into()));
        }
        for (i, &c) in symbols.iter().enumerate() {
            if !c.is_ascii_lowercase() {
                return Err(WordError::InvalidAlphabet(format!(
                    "generator '{c}' is not a lowercase ASCII letter"
                )));
            }
            if symbols[..i].contains(&c) {
                return Err(WordError::InvalidAlphabet(format!(
                    "duplicate generator '{c}'"
                )));
            }
        }
        Ok(Alphabet { symbols })
    }

    /// The first `rank` letters `a, b, c, ...`.
    pub fn standard(rank: usize) -> Result<Self, WordError> {
        if rank == 0 || rank > 26 {
            return Err(WordError::InvalidAlphabet(format!(
                "rank {rank} outside 1..=26"
            )));
        }
        let s: String = (0..rank).map(|i| (b'a' + i as u8) as char).collect();
        Alphabet::new(&s)
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[char] {
        &self.symbols
    }

    /// All `2n` letters in the canonical order `a, A, b, B, ...`.
    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        (0..self.len()).flat_map(|g| [Letter::gen(g), Letter::gen(g).inverse()])
    }

    pub fn letter_of(&self, c: char) -> Option<Letter> {
        let lower = c.to_ascii_lowercase();
        let g = self.symbols.iter().position(|&s| s == lower)?;
        Some(if c.is_ascii_uppercase() {
            Letter::gen(g).inverse()
        } else {
            Letter::gen(g)
        })
    }

    pub fn char_of(&self, l: Letter) -> char {
        let c = self.symbols[l.generator()];
        if l.is_inverse() {
            c.to_ascii_uppercase()
        } else {
            c
        }
    }

    pub fn contains(&self, w: &Word) -> bool {
        w.letters().iter().all(|l| l.generator() < self.len())
    }

    pub fn parse(&self, text: &str) -> Result<Word, WordError> {
        parse_word(text, self)
    }

    pub fn render(&self, w: &Word) -> String {
        w.letters().iter().map(|&l| self.char_of(l)).collect()
    }
}

impl TryFrom<String> for Alphabet {
    type Error = WordError;
    fn try_from(s: String) -> Result<Self, Self::Error> {
        Alphabet::new(&s)
    }
}

impl From<Alphabet> for String {
    fn from(a: Alphabet) -> String {
        a.symbols.into_iter().collect()
    }
}

/// A generator or its inverse. Ordered `a < A < b < B < ...`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    gen: u8,
    inv: bool,
}

impl Letter {
    pub fn gen(index: usize) -> Self {
        debug_assert!(index <= u8::MAX as usize);
        Letter {
            gen: index as u8,
            inv: false,
        }
    }

    pub fn generator(self) -> usize {
        self.gen as usize
    }

    pub fn is_inverse(self) -> bool {
        self.inv
    }

    /// `+1` for a generator, `-1` for an inverse.
    pub fn sign(self) -> i64 {
        if self.inv {
            -1
        } else {
            1
        }
    }

    pub fn inverse(self) -> Self {
        Letter {
            gen: self.gen,
            inv: !self.inv,
        }
    }

    pub fn cancels(self, other: Letter) -> bool {
        self.gen == other.gen && self.inv != other.inv
    }
}

/// A finite sequence of letters. Values are never mutated in place; every
/// operation returns a fresh word.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn letter(l: Letter) -> Self {
        Word(vec![l])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    /// Number of letters, counted before any cancellation.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// True when no letter sits next to its inverse.
    pub fn is_reduced(&self) -> bool {
        self.0.windows(2).all(|p| !p[0].cancels(p[1]))
    }

    /// Unique freely reduced form, computed with a single stack pass.
    pub fn free_reduce(&self) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(self.0.len());
        push_reducing(&mut out, &self.0);
        Word(out)
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    /// Unreduced concatenation.
    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Freely reduced product `red(self · other)`.
    pub fn mul_reduced(&self, other: &Word) -> Word {
        let mut out = self.free_reduce().0;
        push_reducing(&mut out, &other.0);
        Word(out)
    }

    /// Unreduced `u · r · u⁻¹` with `self` as `u`.
    pub fn conjugate(&self, r: &Word) -> Word {
        let mut v = Vec::with_capacity(2 * self.len() + r.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&r.0);
        v.extend(self.0.iter().rev().map(|l| l.inverse()));
        Word(v)
    }

    /// `z^b`: `z` repeated `b` times, or `z⁻¹` repeated `-b` times.
    pub fn power(&self, b: i64) -> Word {
        let base = if b < 0 { self.inverse() } else { self.clone() };
        let n = b.unsigned_abs() as usize;
        let mut v = Vec::with_capacity(base.len() * n);
        for _ in 0..n {
            v.extend_from_slice(&base.0);
        }
        Word(v)
    }

    /// Net exponent of each generator.
    pub fn exponent_vector(&self, rank: usize) -> Vec<i64> {
        let mut e = vec![0i64; rank];
        for l in &self.0 {
            e[l.generator()] += l.sign();
        }
        e
    }

    /// Splits a freely reduced word as `τ · c · τ⁻¹` with `c` cyclically
    /// reduced. Returns `(τ, c)`.
    pub fn cyclic_split(&self) -> (Word, Word) {
        let w = self.free_reduce();
        let v = &w.0;
        let mut i = 0;
        while i < v.len() / 2 && v[i].cancels(v[v.len() - 1 - i]) {
            i += 1;
        }
        (Word(v[..i].to_vec()), Word(v[i..v.len() - i].to_vec()))
    }

    pub fn cyclic_reduce(&self) -> Word {
        self.cyclic_split().1
    }

    /// Rotation `w[i..] · w[..i]`.
    pub fn rotate(&self, i: usize) -> Word {
        let i = if self.is_empty() { 0 } else { i % self.len() };
        let mut v = Vec::with_capacity(self.len());
        v.extend_from_slice(&self.0[i..]);
        v.extend_from_slice(&self.0[..i]);
        Word(v)
    }

    pub fn prefix(&self, n: usize) -> Word {
        Word(self.0[..n].to_vec())
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Self {
        Word(v)
    }
}

/// Appends `tail` to an already reduced stack, cancelling as it goes.
pub(crate) fn push_reducing(out: &mut Vec<Letter>, tail: &[Letter]) {
    for &l in tail {
        match out.last() {
            Some(&top) if top.cancels(l) => {
                out.pop();
            }
            _ => out.push(l),
        }
    }
}

/// Letter-for-letter transliteration; no reduction is performed and
/// whitespace is skipped.
pub fn parse_word(text: &str, alphabet: &Alphabet) -> Result<Word, WordError> {
    let mut letters = Vec::with_capacity(text.len());
    for (pos, c) in text.chars().enumerate() {
        if c.is_whitespace() {
            continue;
        }
        match alphabet.letter_of(c) {
            Some(l) => letters.push(l),
            None => return Err(WordError::UnknownSymbol(pos)),
        }
    }
    Ok(Word(letters))
}

/// Word paired with its alphabet for display.
pub struct Spelled<'a>(pub &'a Alphabet, pub &'a Word);

impl fmt::Display for Spelled<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.1.is_empty() {
            return f.write_str("e");
        }
        for &l in self.1.letters() {
            write!(f, "{}", self.0.char_of(l))?;
        }
        Ok(())
    }
}

/// Every freely reduced word of length exactly `n`, in lexicographic order.
pub fn reduced_words_of_length(rank: usize, n: usize) -> Vec<Word> {
    let letters: Vec<Letter> = (0..rank)
        .flat_map(|g| [Letter::gen(g), Letter::gen(g).inverse()])
        .collect();
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    fn rec(letters: &[Letter], n: usize, cur: &mut Vec<Letter>, out: &mut Vec<Word>) {
        if cur.len() == n {
            out.push(Word(cur.clone()));
            return;
        }
        for &l in letters {
            if cur.last().is_some_and(|&p| p.cancels(l)) {
                continue;
            }
            cur.push(l);
            rec(letters, n, cur, out);
            cur.pop();
        }
    }
    rec(&letters, n, &mut cur, &mut out);
    out
}

/// Number of freely reduced words of length `n` over `rank` generators.
pub fn reduced_word_count(rank: usize, n: usize) -> u128 {
    if n == 0 {
        return 1;
    }
    let k = rank as u128;
    2 * k * (2 * k - 1).pow(n as u32 - 1)
}

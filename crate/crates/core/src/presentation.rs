//! Finite presentations and word-problem oracles.
//!
//! A [`TrivialityOracle`] answers "does this word represent the identity?"
//! with a three-valued [`OracleVerdict`]. `Trivial` and `Nontrivial` are
//! always correct for the presented group; budgeted strategies answer
//! `Unknown` rather than guess, and callers treat `Unknown` as a hard stop.
//!
//! # Presentation files
//!
//! ```text
//! # the integers mod 3
//! gens: a
//! rel: aaa
//! ```
//!
//! The first non-comment line must be `gens: <symbols>`. Each further
//! non-blank line is `rel: <word>`; `rel:` with nothing after it declares
//! the empty relator. Text after `#` is ignored on every line.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::word::{Alphabet, Word, WordError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),
    #[error("relator {0} is not a word over the alphabet")]
    RelatorOutOfAlphabet(usize),
    #[error("word is not over the presentation alphabet")]
    AlphabetMismatch,
    #[error("strategy not valid for this presentation: {0}")]
    InvalidStrategy(String),
    #[error("generator '{0}' represents the identity")]
    IdentityGenerator(char),
    #[error("presentation file line {line}: {msg}")]
    Syntax { line: usize, msg: String },
}

impl From<WordError> for PresentationError {
    fn from(e: WordError) -> Self {
        match e {
            WordError::InvalidAlphabet(m) => PresentationError::InvalidAlphabet(m),
            WordError::UnknownSymbol(_) => PresentationError::AlphabetMismatch,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    alphabet: Alphabet,
    relators: Vec<Word>,
}

impl Presentation {
    pub fn new(alphabet: Alphabet, relators: Vec<Word>) -> Result<Self, PresentationError> {
        let p = Presentation { alphabet, relators };
        p.validate()?;
        Ok(p)
    }

    /// Builds from text forms; relator `i` failing to parse yields
    /// `RelatorOutOfAlphabet(i)`.
    pub fn from_strs(gens: &str, relators: &[&str]) -> Result<Self, PresentationError> {
        let alphabet = Alphabet::new(gens)?;
        let relators = relators
            .iter()
            .enumerate()
            .map(|(i, r)| {
                alphabet
                    .parse(r)
                    .map_err(|_| PresentationError::RelatorOutOfAlphabet(i))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Presentation::new(alphabet, relators)
    }

    /// Free group on `rank` generators, presented with the empty relator.
    pub fn free(rank: usize) -> Result<Self, PresentationError> {
        Presentation::new(Alphabet::standard(rank)?, vec![Word::empty()])
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn rank(&self) -> usize {
        self.alphabet.len()
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn parse_word(&self, text: &str) -> Result<Word, WordError> {
        self.alphabet.parse(text)
    }

    pub fn render(&self, w: &Word) -> String {
        self.alphabet.render(w)
    }

    /// Indices of relators that freely reduce to the empty word. They are
    /// accepted (the free-group convention) but carry no information.
    pub fn trivial_relators(&self) -> Vec<usize> {
        self.relators
            .iter()
            .enumerate()
            .filter(|(_, r)| r.free_reduce().is_empty())
            .map(|(i, _)| i)
            .collect()
    }

    pub fn validate(&self) -> Result<(), PresentationError> {
        validate_presentation(self)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("gens: {}\n", String::from(self.alphabet.clone()));
        for r in &self.relators {
            s.push_str("rel: ");
            s.push_str(&self.alphabet.render(r));
            s.push('\n');
        }
        s
    }
}

impl FromStr for Presentation {
    type Err = PresentationError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut alphabet: Option<Alphabet> = None;
        let mut relators = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let syntax = |msg: &str| PresentationError::Syntax {
                line: line_no,
                msg: msg.to_string(),
            };
            let (key, value) = line
                .split_once(':')
                .ok_or_else(|| syntax("expected `key: value`"))?;
            match (key.trim(), &alphabet) {
                ("gens", None) => alphabet = Some(Alphabet::new(value.trim())?),
                ("gens", Some(_)) => return Err(syntax("duplicate `gens` line")),
                ("rel", Some(a)) => {
                    let r = a
                        .parse(value.trim())
                        .map_err(|_| PresentationError::RelatorOutOfAlphabet(relators.len()))?;
                    relators.push(r);
                }
                ("rel", None) => return Err(syntax("`rel` before `gens`")),
                (other, _) => return Err(syntax(&format!("unknown key `{other}`"))),
            }
        }
        let alphabet = alphabet.ok_or(PresentationError::Syntax {
            line: 0,
            msg: "missing `gens` line".into(),
        })?;
        Presentation::new(alphabet, relators)
    }
}

/// Checks the alphabet and that every relator is spelled over it. Empty
/// relators pass; they are reported by [`Presentation::trivial_relators`].
pub fn validate_presentation(p: &Presentation) -> Result<(), PresentationError> {
    Alphabet::new(&String::from(p.alphabet.clone()))?;
    for (i, r) in p.relators.iter().enumerate() {
        if !p.alphabet.contains(r) {
            return Err(PresentationError::RelatorOutOfAlphabet(i));
        }
    }
    let flagged = p.trivial_relators();
    if !flagged.is_empty() && flagged.len() < p.relators.len() {
        log::warn!("relators {flagged:?} freely reduce to the empty word");
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OracleVerdict {
    Trivial,
    Nontrivial,
    Unknown,
}

impl OracleVerdict {
    pub fn is_decisive(self) -> bool {
        self != OracleVerdict::Unknown
    }
}

impl fmt::Display for OracleVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OracleVerdict::Trivial => "trivial",
            OracleVerdict::Nontrivial => "nontrivial",
            OracleVerdict::Unknown => "unknown",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Strategy {
    /// Only for presentations whose relators all freely reduce to empty.
    FreeReduction,
    /// Abelian groups `⊕ Z/m_i`; a modulus of 0 means infinite order.
    ExponentSum { moduli: Vec<u64> },
    /// Breadth-first relator splicing over freely reduced words.
    BoundedRewrite { length_cap: usize, step_cap: usize },
}

impl Strategy {
    pub const DEFAULT_REWRITE: Strategy = Strategy::BoundedRewrite {
        length_cap: 16,
        step_cap: 100_000,
    };
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Strategy::FreeReduction => f.write_str("free"),
            Strategy::ExponentSum { moduli } => {
                let m: Vec<String> = moduli.iter().map(u64::to_string).collect();
                write!(f, "exp:{}", m.join(","))
            }
            Strategy::BoundedRewrite {
                length_cap,
                step_cap,
            } => {
                write!(f, "rewrite:{length_cap},{step_cap}")
            }
        }
    }
}

impl FromStr for Strategy {
    type Err = String;

    /// `free`, `exp:3,0`, or `rewrite:16,100000`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (head, tail) = s.split_once(':').unwrap_or((s, ""));
        let nums = || -> Result<Vec<u64>, String> {
            tail.split(',')
                .filter(|t| !t.trim().is_empty())
                .map(|t| t.trim().parse::<u64>().map_err(|e| format!("{t}: {e}")))
                .collect()
        };
        match head {
            "free" => Ok(Strategy::FreeReduction),
            "exp" => Ok(Strategy::ExponentSum { moduli: nums()? }),
            "rewrite" => match nums()?.as_slice() {
                [l, s] => Ok(Strategy::BoundedRewrite {
                    length_cap: *l as usize,
                    step_cap: *s as usize,
                }),
                _ => Err("rewrite needs `rewrite:<length_cap>,<step_cap>`".into()),
            },
            _ => Err(format!("unknown strategy `{s}`")),
        }
    }
}

/// A word-problem strategy bound to a presentation. Immutable once built;
/// queries may run concurrently.
#[derive(Debug, Clone)]
pub struct TrivialityOracle {
    presentation: Presentation,
    strategy: Strategy,
    /// Nonempty reduced relators and their inverses, every cyclic rotation.
    splices: Vec<Word>,
}

impl TrivialityOracle {
    pub fn new(presentation: Presentation, strategy: Strategy) -> Result<Self, PresentationError> {
        presentation.validate()?;
        match &strategy {
            Strategy::FreeReduction => {
                if presentation.trivial_relators().len() != presentation.relators().len() {
                    return Err(PresentationError::InvalidStrategy(
                        "free reduction requires every relator to be empty".into(),
                    ));
                }
            }
            Strategy::ExponentSum { moduli } => check_abelian(&presentation, moduli)?,
            Strategy::BoundedRewrite { .. } => {}
        }
        let mut splices = Vec::new();
        let mut seen = HashSet::new();
        for r in presentation.relators() {
            let r = r.cyclic_reduce();
            if r.is_empty() {
                continue;
            }
            for base in [r.clone(), r.inverse()] {
                for i in 0..base.len() {
                    let rot = base.rotate(i);
                    if seen.insert(rot.clone()) {
                        splices.push(rot);
                    }
                }
            }
        }
        let oracle = TrivialityOracle {
            presentation,
            strategy,
            splices,
        };
        for (g, &c) in oracle.presentation.alphabet().symbols().iter().enumerate() {
            let gw = Word::letter(crate::word::Letter::gen(g));
            let verdict = match oracle.strategy {
                // short probe only
                Strategy::BoundedRewrite {
                    length_cap,
                    step_cap,
                } => oracle.rewrite_search(&gw, length_cap, step_cap.min(2_000)),
                _ => oracle.is_trivial(&gw)?,
            };
            if verdict == OracleVerdict::Trivial {
                return Err(PresentationError::IdentityGenerator(c));
            }
        }
        Ok(oracle)
    }

    /// Picks the cheapest sound strategy: free reduction when every relator
    /// is empty, exponent sums when the relators present an abelian group,
    /// bounded rewriting otherwise.
    pub fn auto(presentation: Presentation) -> Result<Self, PresentationError> {
        if presentation.trivial_relators().len() == presentation.relators().len() {
            return TrivialityOracle::new(presentation, Strategy::FreeReduction);
        }
        let moduli = infer_moduli(&presentation);
        if let Ok(o) = TrivialityOracle::new(presentation.clone(), Strategy::ExponentSum { moduli })
        {
            return Ok(o);
        }
        TrivialityOracle::new(presentation, Strategy::DEFAULT_REWRITE)
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn strategy(&self) -> &Strategy {
        &self.strategy
    }

    /// Whether this strategy can supply normal forms (and so always answers
    /// decisively).
    pub fn has_normal_forms(&self) -> bool {
        !matches!(self.strategy, Strategy::BoundedRewrite { .. })
    }

    fn check(&self, w: &Word) -> Result<(), PresentationError> {
        if self.presentation.alphabet().contains(w) {
            Ok(())
        } else {
            Err(PresentationError::AlphabetMismatch)
        }
    }

    pub fn is_trivial(&self, w: &Word) -> Result<OracleVerdict, PresentationError> {
        self.check(w)?;
        Ok(match &self.strategy {
            Strategy::FreeReduction => decisive(w.free_reduce().is_empty()),
            Strategy::ExponentSum { moduli } => {
                let e = w.exponent_vector(moduli.len());
                decisive(e.iter().zip(moduli).all(|(&x, &m)| reduce_mod(x, m) == 0))
            }
            Strategy::BoundedRewrite {
                length_cap,
                step_cap,
            } => self.rewrite_search(w, *length_cap, *step_cap),
        })
    }

    pub fn elements_equal(&self, w1: &Word, w2: &Word) -> Result<OracleVerdict, PresentationError> {
        self.check(w2)?;
        self.is_trivial(&w1.concat(&w2.inverse()))
    }

    /// Normal form usable as a deduplication key, or `None` for strategies
    /// without one.
    pub fn canonical_form(&self, w: &Word) -> Result<Option<Word>, PresentationError> {
        self.check(w)?;
        Ok(match &self.strategy {
            Strategy::FreeReduction => Some(w.free_reduce()),
            Strategy::ExponentSum { moduli } => {
                let e = w.exponent_vector(moduli.len());
                let mut letters = Vec::new();
                for (g, (&x, &m)) in e.iter().zip(moduli).enumerate() {
                    let x = if m == 0 { x } else { reduce_mod(x, m) };
                    let l = crate::word::Letter::gen(g);
                    let l = if x < 0 { l.inverse() } else { l };
                    letters.extend(std::iter::repeat_n(l, x.unsigned_abs() as usize));
                }
                Some(Word::from_letters(letters))
            }
            Strategy::BoundedRewrite { .. } => None,
        })
    }

    /// Breadth-first search from `red(w)` over freely reduced words. A move
    /// splices a cyclic rotation of a relator or its inverse at any position
    /// and freely reduces; reaching the empty word proves triviality.
    fn rewrite_search(&self, w: &Word, length_cap: usize, step_cap: usize) -> OracleVerdict {
        let start = w.free_reduce();
        if start.is_empty() {
            return OracleVerdict::Trivial;
        }
        if self.splices.is_empty() {
            // every relator is freely trivial, so the group is free
            return OracleVerdict::Nontrivial;
        }
        let mut seen: HashSet<Word> = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(start.clone());
        queue.push_back(start);
        let mut expanded = 0usize;
        while let Some(cur) = queue.pop_front() {
            if expanded >= step_cap {
                break;
            }
            expanded += 1;
            let letters = cur.letters();
            for pos in 0..=letters.len() {
                for s in &self.splices {
                    let mut v = Vec::with_capacity(letters.len() + s.len());
                    crate::word::push_reducing(&mut v, &letters[..pos]);
                    crate::word::push_reducing(&mut v, s.letters());
                    crate::word::push_reducing(&mut v, &letters[pos..]);
                    if v.is_empty() {
                        return OracleVerdict::Trivial;
                    }
                    if v.len() > length_cap {
                        continue;
                    }
                    let next = Word::from_letters(v);
                    if seen.insert(next.clone()) {
                        queue.push_back(next);
                    }
                }
            }
        }
        OracleVerdict::Unknown
    }
}

fn decisive(b: bool) -> OracleVerdict {
    if b {
        OracleVerdict::Trivial
    } else {
        OracleVerdict::Nontrivial
    }
}

fn reduce_mod(x: i64, m: u64) -> i64 {
    if m == 0 {
        x
    } else {
        x.rem_euclid(m as i64)
    }
}

/// Returns `Some(generator pair)` when `r` is a cyclic rotation of
/// `[x, y]` or `[x, y]⁻¹` for distinct generators.
fn commutator_pair(r: &Word) -> Option<(usize, usize)> {
    let r = r.free_reduce();
    let l = r.letters();
    if l.len() != 4 || r.cyclic_reduce().len() != 4 {
        return None;
    }
    let (g0, g1) = (l[0].generator(), l[1].generator());
    let shaped = g0 != g1 && l[0].cancels(l[2]) && l[1].cancels(l[3]);
    shaped.then(|| (g0.min(g1), g0.max(g1)))
}

/// Returns `Some((generator, |power|))` when `r` reduces to `x^{±n}`.
fn pure_power(r: &Word) -> Option<(usize, u64)> {
    let r = r.free_reduce();
    let first = *r.letters().first()?;
    r.letters()
        .iter()
        .all(|&l| l == first)
        .then(|| (first.generator(), r.len() as u64))
}

/// The exponent-sum oracle is sound only when the presented group really is
/// `⊕ Z/m_i`: every relator is a commutator of two generators or a power
/// `x^{m_x}` (or a multiple), every pair of generators has a commutator
/// relator, and every finite modulus has its power relator.
fn check_abelian(p: &Presentation, moduli: &[u64]) -> Result<(), PresentationError> {
    let invalid = |m: String| Err(PresentationError::InvalidStrategy(m));
    if moduli.len() != p.rank() {
        return invalid(format!(
            "{} moduli for {} generators",
            moduli.len(),
            p.rank()
        ));
    }
    let mut pairs = HashSet::new();
    let mut powers = vec![false; p.rank()];
    for (i, r) in p.relators().iter().enumerate() {
        if r.free_reduce().is_empty() {
            continue;
        }
        if let Some(pair) = commutator_pair(r) {
            pairs.insert(pair);
        } else if let Some((g, n)) = pure_power(r) {
            let m = moduli[g];
            if m == 0 || n % m != 0 {
                return invalid(format!("relator {i} is a power not matching modulus {m}"));
            }
            if n == m {
                powers[g] = true;
            }
        } else {
            return invalid(format!(
                "relator {i} is neither a commutator nor a pure power"
            ));
        }
    }
    for a in 0..p.rank() {
        for b in a + 1..p.rank() {
            if !pairs.contains(&(a, b)) {
                return invalid(format!("no commutator relator for generators {a},{b}"));
            }
        }
        if moduli[a] != 0 && !powers[a] {
            return invalid(format!(
                "no power relator for modulus {} of generator {a}",
                moduli[a]
            ));
        }
    }
    Ok(())
}

/// Moduli read off pure-power relators (0 where none exists).
pub fn infer_moduli(p: &Presentation) -> Vec<u64> {
    let mut moduli = vec![0u64; p.rank()];
    for r in p.relators() {
        if let Some((g, n)) = pure_power(r) {
            if moduli[g] == 0 || n < moduli[g] {
                moduli[g] = n;
            }
        }
    }
    moduli
}

//! Relator-conjugate products, their cost sums, the minimal area `A(w)` and
//! the linear-isoperimetric scan.
//!
//! A representation of a trivial word `w` is a product
//! `u_1 r_1^{b_1} u_1⁻¹ ⋯ u_k r_k^{b_k} u_k⁻¹` that freely reduces to `w`.
//! It costs `conjLen = Σ L(u_j)` and `relCost = Σ |b_j| L(r_j)^p` (`p = 2`
//! by default), and `A(w)` is the least `A` bounding both sums.
//!
//! # Search
//!
//! [`area`] deepens `A = 0, 1, 2, …`. Level `A` examines exactly the
//! products whose larger cost sum equals `A`; smaller ones were refuted on
//! earlier levels. Inside a level products are visited by total conjugator
//! length `T`, then factor count, then relator schedule, then conjugators
//! in length-lexicographic order, so the first witness is reproducible.
//! Short conjugators come first because the budget probe relies on them.
//!
//! Every pruning rule discards only products that cannot evaluate to `w`
//! or that are dominated by a cheaper product evaluating to the same word:
//!
//! * conjugators are freely reduced (reducing `u` keeps the product and
//!   lowers `conjLen`);
//! * relators that freely reduce to the empty word are never used;
//! * two adjacent factors with the same conjugator and relator merge;
//! * the net use `n_i` of each relator must satisfy
//!   `Σ n_i e(r_i) = e(w)` for exponent-sum vectors `e`, and, when every
//!   relator has zero exponent sum, `Σ n_i a(r_i) = a(w)` for the signed
//!   areas `a` that the words enclose in each coordinate plane of the
//!   integer lattice (conjugation and cancellation preserve both);
//! * the partial product `P` must leave `|red(P⁻¹ w)|` within reach of the
//!   remaining factors;
//! * the last conjugator is solved in closed form: `u s u⁻¹ = Q` in the
//!   free group has solutions `σ p⁻¹ ρ^m τ⁻¹` only, with `ρ` the primitive
//!   root of the cyclic core of `s`.

use std::collections::{HashMap, HashSet};

use num_rational::Ratio;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::presentation::{OracleVerdict, Presentation, PresentationError, TrivialityOracle};
use crate::word::{push_reducing, reduced_words_of_length, Word};

pub const SCAN_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factor {
    pub conjugator: Word,
    pub relator: usize,
    pub exponent: i64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RelatorProduct {
    pub factors: Vec<Factor>,
}

impl RelatorProduct {
    pub fn new(factors: Vec<Factor>) -> Self {
        RelatorProduct { factors }
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn validate(&self, p: &Presentation) -> Result<(), AreaError> {
        for (j, f) in self.factors.iter().enumerate() {
            if f.relator >= p.relators().len()
                || f.exponent == 0
                || !p.alphabet().contains(&f.conjugator)
            {
                return Err(AreaError::InvalidProduct(j));
            }
        }
        Ok(())
    }

    /// Same product with every conjugator `u_j` replaced by `g · u_j`.
    pub fn left_conjugated(&self, g: &Word) -> RelatorProduct {
        RelatorProduct {
            factors: self
                .factors
                .iter()
                .map(|f| Factor {
                    conjugator: g.concat(&f.conjugator),
                    ..f.clone()
                })
                .collect(),
        }
    }

    /// Product evaluating to the inverse: factors reversed, exponents negated.
    pub fn inverted(&self) -> RelatorProduct {
        RelatorProduct {
            factors: self
                .factors
                .iter()
                .rev()
                .map(|f| Factor {
                    exponent: -f.exponent,
                    ..f.clone()
                })
                .collect(),
        }
    }

    pub fn render(&self, p: &Presentation) -> Vec<FactorOut> {
        self.factors
            .iter()
            .map(|f| FactorOut {
                conjugator: p.render(&f.conjugator),
                relator: f.relator,
                exponent: f.exponent,
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorOut {
    pub conjugator: String,
    pub relator: usize,
    pub exponent: i64,
}

/// Free reduction of `Π u_j r_j^{b_j} u_j⁻¹`; the empty product is empty.
pub fn evaluate_product(p: &Presentation, rp: &RelatorProduct) -> Word {
    let mut out = Vec::new();
    for f in &rp.factors {
        let s = p.relators()[f.relator].power(f.exponent);
        push_reducing(&mut out, f.conjugator.conjugate(&s).letters());
    }
    Word::from_letters(out)
}

/// `(Σ L(u_j), Σ |b_j| L(r_j)²)` on the unreduced conjugators and stored
/// relators.
pub fn product_cost(p: &Presentation, rp: &RelatorProduct) -> (u64, u64) {
    product_cost_with(p, rp, DEFAULT_WEIGHT_EXPONENT)
}

/// As [`product_cost`] with relator weight `L(r)^exponent`.
pub fn product_cost_with(p: &Presentation, rp: &RelatorProduct, exponent: u32) -> (u64, u64) {
    let conj = rp.factors.iter().map(|f| f.conjugator.len() as u64).sum();
    let rel = rp
        .factors
        .iter()
        .map(|f| f.exponent.unsigned_abs() * (p.relators()[f.relator].len() as u64).pow(exponent))
        .sum();
    (conj, rel)
}

pub const DEFAULT_WEIGHT_EXPONENT: u32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AreaBudget {
    pub max_area: u64,
    pub max_factors: usize,
    pub max_nodes: u64,
    /// Extra nodes spent hunting an upper bound after `max_nodes` runs out.
    pub probe_nodes: u64,
    /// Relator weight is `L(r)^weight_exponent`.
    pub weight_exponent: u32,
}

impl Default for AreaBudget {
    fn default() -> Self {
        AreaBudget {
            max_area: 64,
            max_factors: 8,
            max_nodes: 10_000_000,
            probe_nodes: 1_000_000,
            weight_exponent: DEFAULT_WEIGHT_EXPONENT,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    /// Conjugator candidates examined.
    pub nodes: u64,
    /// Relator schedules generated.
    pub schedules: u64,
    /// Schedules discarded by the exponent-sum and area invariants.
    pub invariant_rejections: u64,
    /// Levels `0..levels_refuted` were exhaustively refuted.
    pub levels_refuted: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AreaCertificate {
    pub value: u64,
    pub witness: RelatorProduct,
    pub conj_len: u64,
    pub rel_cost: u64,
    pub exact: bool,
    pub stats: SearchStats,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AreaError {
    #[error("word is not trivial in the presented group")]
    NotTrivial,
    #[error("word is not freely reduced")]
    NotIrreducible,
    #[error("factor {0} is not valid for the presentation")]
    InvalidProduct(usize),
    #[error("search budget exhausted; A(w) >= {lower_bound}")]
    BudgetExceeded {
        lower_bound: u64,
        /// Best representation found outside the exhaustive search.
        upper: Option<Box<AreaCertificate>>,
        stats: SearchStats,
    },
    #[error(transparent)]
    Presentation(#[from] PresentationError),
}

struct RelatorData {
    index: usize,
    weight: u64,
    exponents: Vec<i64>,
    areas: Vec<i64>,
}

/// `r^b` with everything the leaf solver needs.
struct Piece {
    relator: usize,
    exponent: i64,
    reduced: Word,
    tau: Word,
    core_len: usize,
    core: Word,
    root: Word,
}

impl Piece {
    fn new(p: &Presentation, relator: usize, exponent: i64) -> Self {
        let reduced = p.relators()[relator].power(exponent).free_reduce();
        let (tau, core) = reduced.cyclic_split();
        let root = primitive_root(&core);
        Piece {
            relator,
            exponent,
            core_len: core.len(),
            reduced,
            tau,
            core,
            root,
        }
    }
}

fn primitive_root(c: &Word) -> Word {
    let n = c.len();
    let l = c.letters();
    for d in 1..=n {
        if n.is_multiple_of(d) && (d..n).all(|i| l[i] == l[i - d]) {
            return c.prefix(d);
        }
    }
    c.clone()
}

/// Signed area `∮ x_i dx_j` of the lattice path of `w`, one entry per pair
/// `i < j`. Meaningful for words with zero exponent sum.
pub fn plane_areas(w: &Word, rank: usize) -> Vec<i64> {
    let mut pos = vec![0i64; rank];
    let mut areas = vec![0i64; rank * rank.saturating_sub(1) / 2];
    for &l in w.letters() {
        let j = l.generator();
        let s = l.sign();
        // pair index for (i, j) with i < j
        let mut k = 0;
        for i in 0..rank {
            for jj in i + 1..rank {
                if jj == j {
                    areas[k] += s * pos[i];
                }
                k += 1;
            }
        }
        pos[j] += s;
    }
    areas
}

struct Schedule {
    pieces: Vec<usize>,
    rel_cost: u64,
}

enum Level {
    Found(RelatorProduct),
    Refuted,
    Exhausted,
}

struct Search<'a> {
    p: &'a Presentation,
    target: Word,
    relators: Vec<RelatorData>,
    balanced: bool,
    target_exponents: Vec<i64>,
    target_areas: Vec<i64>,
    budget: AreaBudget,
    pieces: Vec<Piece>,
    piece_index: HashMap<(usize, i64), usize>,
    stats: SearchStats,
    node_limit: u64,
}

impl<'a> Search<'a> {
    fn new(p: &'a Presentation, target: Word, budget: AreaBudget) -> Self {
        let rank = p.rank();
        let relators: Vec<RelatorData> = p
            .relators()
            .iter()
            .enumerate()
            .filter(|(_, r)| !r.free_reduce().is_empty())
            .map(|(index, r)| RelatorData {
                index,
                weight: (r.len() as u64).saturating_pow(budget.weight_exponent),
                exponents: r.exponent_vector(rank),
                areas: plane_areas(r, rank),
            })
            .collect();
        let balanced = relators.iter().all(|r| r.exponents.iter().all(|&e| e == 0));
        Search {
            p,
            target_exponents: target.exponent_vector(rank),
            target_areas: plane_areas(&target, rank),
            target,
            relators,
            balanced,
            budget,
            pieces: Vec::new(),
            piece_index: HashMap::new(),
            stats: SearchStats::default(),
            node_limit: budget.max_nodes,
        }
    }

    fn piece(&mut self, relator: usize, exponent: i64) -> usize {
        if let Some(&i) = self.piece_index.get(&(relator, exponent)) {
            return i;
        }
        let i = self.pieces.len();
        self.pieces.push(Piece::new(self.p, relator, exponent));
        self.piece_index.insert((relator, exponent), i);
        i
    }

    fn tick(&mut self) -> bool {
        self.stats.nodes += 1;
        self.stats.nodes <= self.node_limit
    }

    /// Net relator uses must reproduce the target's abelian invariants.
    fn invariants_hold(&self, uses: &[(usize, i64)]) -> bool {
        let rank = self.target_exponents.len();
        let mut e = vec![0i64; rank];
        let mut a = vec![0i64; self.target_areas.len()];
        for &(slot, b) in uses {
            let r = &self.relators[slot];
            for (x, y) in e.iter_mut().zip(&r.exponents) {
                *x += b * y;
            }
            if self.balanced {
                for (x, y) in a.iter_mut().zip(&r.areas) {
                    *x += b * y;
                }
            }
        }
        e == self.target_exponents && (!self.balanced || a == self.target_areas)
    }

    /// All relator schedules with `relCost <= area`, ordered by factor count
    /// then lexicographically by (relator, |b|, sign).
    fn schedules(&mut self, area: u64) -> Option<Vec<Schedule>> {
        let mut out = Vec::new();
        let mut options: Vec<(usize, i64, u64)> = Vec::new();
        for (slot, r) in self.relators.iter().enumerate() {
            let mut b = 1i64;
            while (b as u64).saturating_mul(r.weight) <= area {
                options.push((slot, b, b as u64 * r.weight));
                options.push((slot, -b, b as u64 * r.weight));
                b += 1;
            }
        }
        for k in 1..=self.budget.max_factors {
            let mut cur: Vec<(usize, i64)> = Vec::with_capacity(k);
            if !self.schedules_rec(&options, k, area, 0, &mut cur, &mut out) {
                return None;
            }
        }
        Some(out)
    }

    fn schedules_rec(
        &mut self,
        options: &[(usize, i64, u64)],
        k: usize,
        area: u64,
        cost: u64,
        cur: &mut Vec<(usize, i64)>,
        out: &mut Vec<Schedule>,
    ) -> bool {
        if cur.len() == k {
            self.stats.schedules += 1;
            if !self.tick() {
                return false;
            }
            let uses: Vec<(usize, i64)> = cur.clone();
            if !self.invariants_hold(&uses) {
                self.stats.invariant_rejections += 1;
                return true;
            }
            let pieces = uses
                .iter()
                .map(|&(slot, b)| {
                    let idx = self.relators[slot].index;
                    self.piece(idx, b)
                })
                .collect();
            out.push(Schedule {
                pieces,
                rel_cost: cost,
            });
            return true;
        }
        for &(slot, b, c) in options {
            if cost + c > area {
                continue;
            }
            cur.push((slot, b));
            let ok = self.schedules_rec(options, k, area, cost + c, cur, out);
            cur.pop();
            if !ok {
                return false;
            }
        }
        true
    }

    /// Products whose larger cost sum is exactly `area`.
    fn level(&mut self, area: u64) -> Level {
        let Some(schedules) = self.schedules(area) else {
            return Level::Exhausted;
        };
        for t in 0..=area {
            for sched in &schedules {
                if sched.rel_cost.max(t) != area {
                    continue;
                }
                let mut chosen = Vec::with_capacity(sched.pieces.len());
                let mut failed = HashSet::new();
                match self.conjugators(
                    sched,
                    t as usize,
                    0,
                    Word::empty(),
                    0,
                    &mut chosen,
                    &mut failed,
                ) {
                    Some(true) => {
                        let factors = sched
                            .pieces
                            .iter()
                            .zip(chosen)
                            .map(|(&pi, u)| Factor {
                                conjugator: u,
                                relator: self.pieces[pi].relator,
                                exponent: self.pieces[pi].exponent,
                            })
                            .collect();
                        return Level::Found(RelatorProduct { factors });
                    }
                    Some(false) => {}
                    None => return Level::Exhausted,
                }
            }
        }
        Level::Refuted
    }

    /// Depth-first choice of conjugators for `sched` with total length
    /// exactly `total`. `None` means the node budget ran out.
    #[allow(clippy::too_many_arguments)]
    fn conjugators(
        &mut self,
        sched: &Schedule,
        total: usize,
        j: usize,
        partial: Word,
        used: usize,
        chosen: &mut Vec<Word>,
        failed: &mut HashSet<(usize, Word, usize)>,
    ) -> Option<bool> {
        let k = sched.pieces.len();
        let rest = total - used;
        if j + 1 == k {
            if !self.tick() {
                return None;
            }
            let q = partial.inverse().mul_reduced(&self.target);
            let prev = (j > 0).then(|| (sched.pieces[j - 1], &chosen[j - 1]));
            let u = self.solve_last(&q, sched.pieces[j], rest, prev);
            return Some(match u {
                Some(u) => {
                    chosen.push(u);
                    true
                }
                None => false,
            });
        }
        let pi = sched.pieces[j];
        let tail_len: usize = sched.pieces[j + 1..]
            .iter()
            .map(|&i| self.pieces[i].reduced.len())
            .sum();
        let rank = self.p.rank();
        for len in 0..=rest {
            for u in reduced_words_of_length(rank, len) {
                if !self.tick() {
                    return None;
                }
                if j > 0 && sched.pieces[j - 1] == pi && chosen[j - 1] == u {
                    continue;
                }
                let next = partial.mul_reduced(&u.conjugate(&self.pieces[pi].reduced));
                let remaining = 2 * (rest - len) + tail_len;
                if reduced_distance(&next, &self.target) > remaining {
                    continue;
                }
                let key = (j + 1, next.clone(), used + len);
                if failed.contains(&key) {
                    continue;
                }
                chosen.push(u);
                match self.conjugators(sched, total, j + 1, next, used + len, chosen, failed)? {
                    true => return Some(true),
                    false => {
                        chosen.pop();
                        failed.insert(key);
                    }
                }
            }
        }
        Some(false)
    }

    /// Lexicographically least reduced `u` of length `len` with
    /// `red(u s u⁻¹) = q`, skipping the one that would merge with the
    /// previous factor.
    fn solve_last(
        &self,
        q: &Word,
        pi: usize,
        len: usize,
        prev: Option<(usize, &Word)>,
    ) -> Option<Word> {
        let piece = &self.pieces[pi];
        let (sigma, core_q) = q.cyclic_split();
        if core_q.len() != piece.core_len || piece.core_len == 0 {
            return None;
        }
        // core_q = core[i..] core[..i]
        let shift = (0..piece.core_len).find(|&i| piece.core.rotate(i) == core_q)?;
        let p_inv = piece.core.prefix(shift).inverse();
        let base = sigma.concat(&p_inv);
        let tau_inv = piece.tau.inverse();
        let root_len = piece.root.len();
        let bound = ((len + sigma.len() + shift + piece.tau.len()) / root_len + 1) as i64;
        let mut best: Option<Word> = None;
        for m in -bound..=bound {
            let u = base
                .concat(&piece.root.power(m))
                .concat(&tau_inv)
                .free_reduce();
            if u.len() != len {
                continue;
            }
            if prev.is_some_and(|(ppi, pu)| ppi == pi && *pu == u) {
                continue;
            }
            debug_assert_eq!(&u.conjugate(&piece.reduced).free_reduce(), q);
            if best.as_ref().is_none_or(|b| u < *b) {
                best = Some(u);
            }
        }
        best
    }
}

/// `|red(a⁻¹ b)|` for reduced `a`, `b`.
fn reduced_distance(a: &Word, b: &Word) -> usize {
    let common = a
        .letters()
        .iter()
        .zip(b.letters())
        .take_while(|(x, y)| x == y)
        .count();
    a.len() + b.len() - 2 * common
}

/// Exact `A(w)` for an irreducible trivial word, by iterative deepening.
pub fn area(
    p: &Presentation,
    o: &TrivialityOracle,
    w: &Word,
    budget: &AreaBudget,
) -> Result<AreaCertificate, AreaError> {
    if !p.alphabet().contains(w) {
        return Err(PresentationError::AlphabetMismatch.into());
    }
    if !w.is_reduced() {
        return Err(AreaError::NotIrreducible);
    }
    if o.is_trivial(w)? == OracleVerdict::Nontrivial {
        return Err(AreaError::NotTrivial);
    }
    let mut search = Search::new(p, w.clone(), *budget);
    if w.is_empty() {
        return Ok(certificate(
            p,
            0,
            RelatorProduct::default(),
            true,
            search.stats,
            budget,
        ));
    }
    for a in 1..=budget.max_area {
        match search.level(a) {
            Level::Found(witness) => {
                search.stats.levels_refuted = a;
                return Ok(certificate(p, a, witness, true, search.stats, budget));
            }
            Level::Refuted => search.stats.levels_refuted = a,
            Level::Exhausted => {
                let upper = probe(&mut search, a, budget);
                return Err(AreaError::BudgetExceeded {
                    lower_bound: a,
                    upper: upper.map(Box::new),
                    stats: search.stats,
                });
            }
        }
    }
    Err(AreaError::BudgetExceeded {
        lower_bound: budget.max_area + 1,
        upper: None,
        stats: search.stats,
    })
}

/// Non-exhaustive hunt for any representation at levels `from..`.
fn probe(search: &mut Search<'_>, from: u64, budget: &AreaBudget) -> Option<AreaCertificate> {
    search.node_limit = search.stats.nodes.saturating_add(budget.probe_nodes);
    for a in from..=budget.max_area {
        match search.level(a) {
            Level::Found(witness) => {
                return Some(certificate(
                    search.p,
                    a,
                    witness,
                    false,
                    search.stats,
                    budget,
                ));
            }
            Level::Refuted => {}
            Level::Exhausted => return None,
        }
    }
    None
}

fn certificate(
    p: &Presentation,
    value: u64,
    witness: RelatorProduct,
    exact: bool,
    stats: SearchStats,
    budget: &AreaBudget,
) -> AreaCertificate {
    let (conj_len, rel_cost) = product_cost_with(p, &witness, budget.weight_exponent);
    debug_assert!(conj_len.max(rel_cost) <= value);
    AreaCertificate {
        value,
        witness,
        conj_len,
        rel_cost,
        exact,
        stats,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RatioOut {
    pub num: u64,
    pub den: u64,
    pub value: f64,
}

impl From<Ratio<u64>> for RatioOut {
    fn from(r: Ratio<u64>) -> Self {
        RatioOut {
            num: *r.numer(),
            den: *r.denom(),
            value: *r.numer() as f64 / *r.denom() as f64,
        }
    }
}

impl RatioOut {
    pub fn ratio(&self) -> Ratio<u64> {
        Ratio::new(self.num, self.den)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum SupRatio {
    Vacuous,
    Value(RatioOut),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanEntry {
    pub word: String,
    pub length: usize,
    /// Exact area, or the best upper bound when `exact` is false.
    pub area: Option<u64>,
    pub lower_bound: u64,
    pub ratio: Option<RatioOut>,
    pub exact: bool,
    pub witness: Option<Vec<FactorOut>>,
    pub nodes: u64,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanOptions {
    /// Keep one representative per class of reduced cyclic rotations.
    pub cyclic_symmetry: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanReport {
    pub schema_version: u32,
    pub max_len: usize,
    pub candidates_examined: usize,
    pub per_word: Vec<ScanEntry>,
    pub undecided: Vec<String>,
    pub sup_ratio: SupRatio,
    pub all_exact: bool,
    pub total_nodes: u64,
    pub budget: AreaBudget,
}

fn cyclic_representative(w: &Word) -> bool {
    (1..w.len()).all(|i| {
        let r = w.rotate(i);
        !r.is_reduced() || r >= *w
    })
}

/// Areas of every irreducible trivial nonempty word up to `max_len`, and
/// the supremum of `A(w) / L(w)` over them.
pub fn hyperbolicity_scan(
    p: &Presentation,
    o: &TrivialityOracle,
    max_len: usize,
    budget: &AreaBudget,
    options: ScanOptions,
) -> Result<ScanReport, AreaError> {
    let mut candidates = Vec::new();
    let mut undecided = Vec::new();
    let mut examined = 0;
    for len in 1..=max_len {
        for w in reduced_words_of_length(p.rank(), len) {
            if options.cyclic_symmetry && !cyclic_representative(&w) {
                continue;
            }
            examined += 1;
            match o.is_trivial(&w)? {
                OracleVerdict::Trivial => candidates.push(w),
                OracleVerdict::Unknown => undecided.push(p.render(&w)),
                OracleVerdict::Nontrivial => {}
            }
        }
    }
    let results: Vec<Result<ScanEntry, AreaError>> = candidates
        .par_iter()
        .map(|w| scan_entry(p, o, w, budget))
        .collect();
    let per_word = results.into_iter().collect::<Result<Vec<_>, _>>()?;
    let sup = per_word
        .iter()
        .filter_map(|e| e.ratio.map(|r| r.ratio()))
        .max();
    let sup_ratio = match sup {
        Some(r) => SupRatio::Value(r.into()),
        None => SupRatio::Vacuous,
    };
    Ok(ScanReport {
        schema_version: SCAN_SCHEMA_VERSION,
        max_len,
        candidates_examined: examined,
        all_exact: per_word.iter().all(|e| e.exact) && undecided.is_empty(),
        total_nodes: per_word.iter().map(|e| e.nodes).sum(),
        per_word,
        undecided,
        sup_ratio,
        budget: *budget,
    })
}

fn scan_entry(
    p: &Presentation,
    o: &TrivialityOracle,
    w: &Word,
    budget: &AreaBudget,
) -> Result<ScanEntry, AreaError> {
    let len = w.len();
    let entry = |area: Option<u64>,
                 lower: u64,
                 exact: bool,
                 witness: Option<&RelatorProduct>,
                 nodes: u64| ScanEntry {
        word: p.render(w),
        length: len,
        area,
        lower_bound: lower,
        ratio: area.map(|a| Ratio::new(a, len as u64).into()),
        exact,
        witness: witness.map(|rp| rp.render(p)),
        nodes,
    };
    match area(p, o, w, budget) {
        Ok(c) => Ok(entry(
            Some(c.value),
            c.value,
            true,
            Some(&c.witness),
            c.stats.nodes,
        )),
        Err(AreaError::BudgetExceeded {
            lower_bound,
            upper,
            stats,
        }) => Ok(match upper {
            Some(c) => entry(
                Some(c.value),
                lower_bound,
                false,
                Some(&c.witness),
                stats.nodes,
            ),
            None => entry(None, lower_bound, false, None, stats.nodes),
        }),
        Err(e) => Err(e),
    }
}

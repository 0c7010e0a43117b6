//! Cayley-graph balls, paths and the word metric.
//!
//! Elements are explored breadth-first by right multiplication. When the
//! oracle has normal forms they key a hash map; otherwise each new word is
//! compared with `elements_equal` against the neighbouring BFS levels and
//! any `Unknown` verdict aborts with [`CayleyError::OracleInconclusive`].

use std::collections::HashMap;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::presentation::{OracleVerdict, Presentation, PresentationError, TrivialityOracle};
use crate::word::{Alphabet, Word};

pub const DEFAULT_BALL_LIMIT: usize = 1_000_000;
pub const BALL_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CayleyError {
    #[error("oracle could not decide equality involving `{0}`")]
    OracleInconclusive(String),
    #[error("ball exceeds {0} elements")]
    BallTooLarge(usize),
    #[error("no path of length <= {0} found")]
    CapExceeded(usize),
    #[error("new generators do not reach every audited element within {0} steps")]
    NotGenerating(usize),
    #[error("new generator {0} represents the identity")]
    IdentityGenerator(usize),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
}

/// Breadth-first exploration from a start word with a symmetric step set.
struct Explorer<'a> {
    oracle: &'a TrivialityOracle,
    steps: Vec<Word>,
    elements: Vec<Word>,
    dist: Vec<usize>,
    levels: Vec<Vec<usize>>,
    keys: HashMap<Word, usize>,
    limit: usize,
}

impl<'a> Explorer<'a> {
    fn new(
        oracle: &'a TrivialityOracle,
        start: &Word,
        steps: Vec<Word>,
        limit: usize,
    ) -> Result<Self, CayleyError> {
        let mut ex = Explorer {
            oracle,
            steps,
            elements: Vec::new(),
            dist: Vec::new(),
            levels: vec![Vec::new()],
            keys: HashMap::new(),
            limit,
        };
        ex.insert(start.clone(), 0)?;
        Ok(ex)
    }

    fn letters(oracle: &TrivialityOracle) -> Vec<Word> {
        oracle
            .presentation()
            .alphabet()
            .letters()
            .map(Word::letter)
            .collect()
    }

    fn key(&self, w: &Word) -> Result<Option<Word>, CayleyError> {
        Ok(self.oracle.canonical_form(w)?)
    }

    fn representative(&self, w: Word) -> Result<Word, CayleyError> {
        Ok(self.key(&w)?.unwrap_or(w))
    }

    fn insert(&mut self, w: Word, d: usize) -> Result<usize, CayleyError> {
        if self.elements.len() >= self.limit {
            return Err(CayleyError::BallTooLarge(self.limit));
        }
        let idx = self.elements.len();
        let rep = self.representative(w)?;
        if self.oracle.has_normal_forms() {
            self.keys.insert(rep.clone(), idx);
        }
        self.elements.push(rep);
        self.dist.push(d);
        if self.levels.len() <= d {
            self.levels.resize(d + 1, Vec::new());
        }
        self.levels[d].push(idx);
        Ok(idx)
    }

    /// Index of the element equal to `w`. Without normal forms only levels
    /// in `near` are searched (all levels when `None`).
    fn find(&self, w: &Word, near: Option<(usize, usize)>) -> Result<Option<usize>, CayleyError> {
        if let Some(k) = self.key(w)? {
            return Ok(self.keys.get(&k).copied());
        }
        let (lo, hi) = near.unwrap_or((0, self.levels.len().saturating_sub(1)));
        for level in lo..=hi.min(self.levels.len().saturating_sub(1)) {
            for &i in &self.levels[level] {
                match self.oracle.elements_equal(w, &self.elements[i])? {
                    OracleVerdict::Trivial => return Ok(Some(i)),
                    OracleVerdict::Nontrivial => {}
                    OracleVerdict::Unknown => {
                        let a = self.oracle.presentation().alphabet();
                        return Err(CayleyError::OracleInconclusive(a.render(w)));
                    }
                }
            }
        }
        Ok(None)
    }

    fn depth(&self) -> usize {
        self.levels.len() - 1
    }

    /// Adds the next BFS level. Returns the indices of new elements.
    fn expand(&mut self) -> Result<Vec<usize>, CayleyError> {
        let d = self.depth();
        let frontier = self.levels[d].clone();
        self.levels.push(Vec::new());
        for i in frontier {
            for s in 0..self.steps.len() {
                let next = self.elements[i].mul_reduced(&self.steps[s]);
                if self
                    .find(&next, Some((d.saturating_sub(1), d + 1)))?
                    .is_none()
                {
                    self.insert(next, d + 1)?;
                }
            }
        }
        Ok(self.levels[d + 1].clone())
    }

    /// BFS distance from the start to `w`, expanding up to `cap` levels.
    fn distance_to(&mut self, w: &Word, cap: usize) -> Result<Option<usize>, CayleyError> {
        if let Some(i) = self.find(w, None)? {
            return Ok(Some(self.dist[i]));
        }
        while self.depth() < cap {
            let fresh = self.expand()?;
            if fresh.is_empty() {
                return Ok(None);
            }
            if let Some(i) = self.find_among(w, &fresh)? {
                return Ok(Some(self.dist[i]));
            }
        }
        Ok(None)
    }

    fn find_among(&self, w: &Word, candidates: &[usize]) -> Result<Option<usize>, CayleyError> {
        if let Some(k) = self.key(w)? {
            return Ok(self
                .keys
                .get(&k)
                .copied()
                .filter(|i| candidates.contains(i)));
        }
        for &i in candidates {
            match self.oracle.elements_equal(w, &self.elements[i])? {
                OracleVerdict::Trivial => return Ok(Some(i)),
                OracleVerdict::Nontrivial => {}
                OracleVerdict::Unknown => {
                    let a = self.oracle.presentation().alphabet();
                    return Err(CayleyError::OracleInconclusive(a.render(w)));
                }
            }
        }
        Ok(None)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CayleyBall {
    pub center: Word,
    pub radius: usize,
    pub elements: Vec<Word>,
    pub distances: Vec<usize>,
    pub adjacency: Vec<Vec<usize>>,
}

impl CayleyBall {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn export(&self, alphabet: &Alphabet) -> BallExport {
        BallExport {
            schema_version: BALL_SCHEMA_VERSION,
            generators: alphabet.clone().into(),
            radius: self.radius,
            center: alphabet.render(&self.center),
            elements: self.elements.iter().map(|w| alphabet.render(w)).collect(),
            distances: self.distances.clone(),
            adjacency: self.adjacency.clone(),
        }
    }
}

/// JSON form of a ball. Elements are word strings; the identity is `""`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BallExport {
    pub schema_version: u32,
    pub generators: String,
    pub radius: usize,
    pub center: String,
    pub elements: Vec<String>,
    pub distances: Vec<usize>,
    pub adjacency: Vec<Vec<usize>>,
}

pub fn build_ball(
    p: &Presentation,
    o: &TrivialityOracle,
    radius: usize,
) -> Result<CayleyBall, CayleyError> {
    build_ball_with_limit(p, o, radius, DEFAULT_BALL_LIMIT)
}

pub fn build_ball_with_limit(
    p: &Presentation,
    o: &TrivialityOracle,
    radius: usize,
    limit: usize,
) -> Result<CayleyBall, CayleyError> {
    debug_assert_eq!(p, o.presentation());
    let mut ex = Explorer::new(o, &Word::empty(), Explorer::letters(o), limit)?;
    while ex.depth() < radius {
        if ex.expand()?.is_empty() {
            ex.levels.pop();
            break;
        }
    }
    let mut adjacency = Vec::with_capacity(ex.elements.len());
    // generators are never the identity, so a lone vertex has no loops
    let with_edges = if ex.elements.len() > 1 {
        ex.elements.len()
    } else {
        0
    };
    if with_edges == 0 {
        adjacency.push(Vec::new());
    }
    for i in 0..with_edges {
        let d = ex.dist[i];
        let mut nbrs = Vec::new();
        for s in &ex.steps {
            let next = ex.elements[i].mul_reduced(s);
            if let Some(j) = ex.find(&next, Some((d.saturating_sub(1), d + 1)))? {
                nbrs.push(j);
            }
        }
        nbrs.sort_unstable();
        nbrs.dedup();
        adjacency.push(nbrs);
    }
    Ok(CayleyBall {
        center: Word::empty(),
        radius,
        elements: ex.elements,
        distances: ex.dist,
        adjacency,
    })
}

/// A sequence of words read as group elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathSeq(pub Vec<Word>);

impl PathSeq {
    /// Number of steps, `k` for `k + 1` vertices.
    pub fn length(&self) -> usize {
        self.0.len().saturating_sub(1)
    }
}

pub fn is_path(o: &TrivialityOracle, s: &PathSeq) -> Result<bool, CayleyError> {
    if s.0.is_empty() {
        return Ok(false);
    }
    let letters = Explorer::letters(o);
    for pair in s.0.windows(2) {
        let mut unknown = false;
        let mut adjacent = false;
        for l in &letters {
            match o.elements_equal(&pair[1], &pair[0].concat(l))? {
                OracleVerdict::Trivial => {
                    adjacent = true;
                    break;
                }
                OracleVerdict::Unknown => unknown = true,
                OracleVerdict::Nontrivial => {}
            }
        }
        if !adjacent {
            if unknown {
                return Err(CayleyError::OracleInconclusive(
                    o.presentation().render(&pair[1]),
                ));
            }
            return Ok(false);
        }
    }
    Ok(true)
}

/// Word-metric distance, computed as the BFS distance from the identity to
/// `φ⁻¹ψ`.
pub fn distance(
    p: &Presentation,
    o: &TrivialityOracle,
    phi: &Word,
    psi: &Word,
    cap: usize,
) -> Result<usize, CayleyError> {
    debug_assert_eq!(p, o.presentation());
    let target = phi.inverse().concat(psi);
    let mut ex = Explorer::new(o, &Word::empty(), Explorer::letters(o), DEFAULT_BALL_LIMIT)?;
    ex.distance_to(&target, cap)?
        .ok_or(CayleyError::CapExceeded(cap))
}

/// Distance by BFS started at `φ` itself, with no use of left-invariance.
pub fn distance_direct(
    o: &TrivialityOracle,
    phi: &Word,
    psi: &Word,
    cap: usize,
) -> Result<usize, CayleyError> {
    let mut ex = Explorer::new(o, phi, Explorer::letters(o), DEFAULT_BALL_LIMIT)?;
    ex.distance_to(psi, cap)?
        .ok_or(CayleyError::CapExceeded(cap))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvarianceCheck {
    pub phi: String,
    pub psi: String,
    pub original: usize,
    pub translated: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LeftInvarianceReport {
    pub delta: String,
    pub checks: Vec<InvarianceCheck>,
    pub violations: usize,
}

/// Compares `d(δφ, δψ)` with `d(φ, ψ)` for every pair, both computed by
/// direct BFS from the first point.
pub fn check_left_invariance(
    p: &Presentation,
    o: &TrivialityOracle,
    delta: &Word,
    pairs: &[(Word, Word)],
    cap: usize,
) -> Result<LeftInvarianceReport, CayleyError> {
    let mut checks = Vec::with_capacity(pairs.len());
    for (phi, psi) in pairs {
        let original = distance_direct(o, phi, psi, cap)?;
        let translated = distance_direct(o, &delta.concat(phi), &delta.concat(psi), cap)?;
        checks.push(InvarianceCheck {
            phi: p.render(phi),
            psi: p.render(psi),
            original,
            translated,
        });
    }
    let violations = checks.iter().filter(|c| c.original != c.translated).count();
    Ok(LeftInvarianceReport {
        delta: p.render(delta),
        checks,
        violations,
    })
}

/// All-pairs word-metric distances between the elements of a ball.
pub fn ball_distance_matrix(
    o: &TrivialityOracle,
    ball: &CayleyBall,
) -> Result<Vec<Vec<usize>>, CayleyError> {
    let cap = 2 * ball.radius;
    let mut ex = Explorer::new(o, &Word::empty(), Explorer::letters(o), DEFAULT_BALL_LIMIT)?;
    let n = ball.len();
    let mut m = vec![vec![0usize; n]; n];
    for i in 0..n {
        let inv = ball.elements[i].inverse();
        for j in 0..n {
            let diff = inv.concat(&ball.elements[j]);
            m[i][j] = ex
                .distance_to(&diff, cap)?
                .ok_or(CayleyError::CapExceeded(cap))?;
        }
    }
    Ok(m)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeneratorComparison {
    /// `max d_new / d_old` over audited pairs.
    pub lambda1: Ratio<u64>,
    /// `max d_old / d_new` over audited pairs.
    pub lambda2: Ratio<u64>,
    pub radius: usize,
    pub pairs: usize,
}

/// Audits the two word metrics on every pair of elements of the old
/// radius-`radius` ball. Constants hold on the audited ball only.
pub fn compare_generating_sets(
    p: &Presentation,
    o: &TrivialityOracle,
    new_gens: &[Word],
    radius: usize,
    cap: usize,
) -> Result<GeneratorComparison, CayleyError> {
    for (i, g) in new_gens.iter().enumerate() {
        match o.is_trivial(g)? {
            OracleVerdict::Trivial => return Err(CayleyError::IdentityGenerator(i)),
            OracleVerdict::Unknown => return Err(CayleyError::OracleInconclusive(p.render(g))),
            OracleVerdict::Nontrivial => {}
        }
    }
    let ball = build_ball(p, o, radius)?;
    let new_steps: Vec<Word> = new_gens
        .iter()
        .flat_map(|g| [g.free_reduce(), g.inverse().free_reduce()])
        .collect();
    let mut old = Explorer::new(o, &Word::empty(), Explorer::letters(o), DEFAULT_BALL_LIMIT)?;
    let mut new = Explorer::new(o, &Word::empty(), new_steps, DEFAULT_BALL_LIMIT)?;
    let mut lambda1 = Ratio::from_integer(0u64);
    let mut lambda2 = Ratio::from_integer(0u64);
    let mut pairs = 0;
    for x in &ball.elements {
        let inv = x.inverse();
        for y in &ball.elements {
            let diff = inv.concat(y);
            let d_old = old
                .distance_to(&diff, 2 * radius)?
                .ok_or(CayleyError::CapExceeded(2 * radius))?;
            if d_old == 0 {
                continue;
            }
            let d_new = new
                .distance_to(&diff, cap)?
                .ok_or(CayleyError::NotGenerating(cap))?;
            pairs += 1;
            lambda1 = lambda1.max(Ratio::new(d_new as u64, d_old as u64));
            lambda2 = lambda2.max(Ratio::new(d_old as u64, d_new as u64));
        }
    }
    if pairs == 0 {
        lambda1 = Ratio::from_integer(1);
        lambda2 = Ratio::from_integer(1);
    }
    Ok(GeneratorComparison {
        lambda1,
        lambda2,
        radius,
        pairs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::Strategy;

    fn f2() -> TrivialityOracle {
        TrivialityOracle::new(Presentation::free(2).unwrap(), Strategy::FreeReduction).unwrap()
    }

    fn z2() -> TrivialityOracle {
        let p = Presentation::from_strs("ab", &["abAB"]).unwrap();
        TrivialityOracle::new(p, Strategy::ExponentSum { moduli: vec![0, 0] }).unwrap()
    }

    fn w(o: &TrivialityOracle, s: &str) -> Word {
        o.presentation().parse_word(s).unwrap()
    }

    #[test]
    fn ball_sizes() {
        let o = f2();
        assert_eq!(build_ball(o.presentation(), &o, 2).unwrap().len(), 17);
        let o = z2();
        assert_eq!(build_ball(o.presentation(), &o, 2).unwrap().len(), 13);
        let b = build_ball(o.presentation(), &o, 0).unwrap();
        assert_eq!(b.elements, vec![Word::empty()]);
        assert_eq!(b.adjacency, vec![Vec::<usize>::new()]);
    }

    #[test]
    fn ball_adjacency_is_symmetric() {
        for o in [f2(), z2()] {
            let b = build_ball(o.presentation(), &o, 3).unwrap();
            for (i, nbrs) in b.adjacency.iter().enumerate() {
                for &j in nbrs {
                    assert!(b.adjacency[j].contains(&i));
                    assert!(b.distances[i].abs_diff(b.distances[j]) <= 1);
                }
            }
        }
    }

    #[test]
    fn finite_group_ball_saturates() {
        let p = Presentation::from_strs("a", &["aaa"]).unwrap();
        let o =
            TrivialityOracle::new(p.clone(), Strategy::ExponentSum { moduli: vec![3] }).unwrap();
        let b = build_ball(&p, &o, 5).unwrap();
        assert_eq!(b.len(), 3);
        assert_eq!(b.distances, vec![0, 1, 1]);
    }

    #[test]
    fn ball_limit() {
        let o = f2();
        assert_eq!(
            build_ball_with_limit(o.presentation(), &o, 3, 20),
            Err(CayleyError::BallTooLarge(20))
        );
    }

    #[test]
    fn rewrite_oracle_cannot_separate_elements() {
        // bounded rewriting proves equalities but never inequalities
        let p = Presentation::from_strs("ab", &["abAB"]).unwrap();
        let rw = TrivialityOracle::new(
            p.clone(),
            Strategy::BoundedRewrite {
                length_cap: 8,
                step_cap: 200,
            },
        )
        .unwrap();
        assert_eq!(build_ball(&p, &rw, 0).unwrap().len(), 1);
        assert!(matches!(
            build_ball(&p, &rw, 1),
            Err(CayleyError::OracleInconclusive(_))
        ));
        let (ab, ba) = (p.parse_word("ab").unwrap(), p.parse_word("ba").unwrap());
        assert_eq!(distance(&p, &rw, &ab, &ba, 3).unwrap(), 0);
    }

    #[test]
    fn path_examples() {
        let o = f2();
        let e = Word::empty();
        let path = PathSeq(vec![e.clone(), w(&o, "a"), w(&o, "ab")]);
        assert!(is_path(&o, &path).unwrap());
        assert_eq!(path.length(), 2);
        let single = PathSeq(vec![e.clone()]);
        assert!(is_path(&o, &single).unwrap());
        assert_eq!(single.length(), 0);
        assert!(!is_path(&o, &PathSeq(vec![e, w(&o, "ab")])).unwrap());
    }

    #[test]
    fn distance_examples() {
        let o = z2();
        let p = o.presentation().clone();
        assert_eq!(
            distance(&p, &o, &Word::empty(), &w(&o, "aabbb"), 10).unwrap(),
            5
        );
        assert_eq!(distance(&p, &o, &w(&o, "ab"), &w(&o, "ba"), 10).unwrap(), 0);
        assert_eq!(
            distance(&p, &o, &Word::empty(), &w(&o, "aabbb"), 4),
            Err(CayleyError::CapExceeded(4))
        );
        let f = f2();
        assert_eq!(
            distance(f.presentation(), &f, &w(&f, "ab"), &w(&f, "ab"), 0).unwrap(),
            0
        );
    }

    #[test]
    fn left_invariance_examples() {
        let o = z2();
        let p = o.presentation().clone();
        let r = check_left_invariance(&p, &o, &w(&o, "ab"), &[(Word::empty(), w(&o, "ab"))], 10)
            .unwrap();
        assert_eq!((r.checks[0].original, r.checks[0].translated), (2, 2));
        assert_eq!(r.violations, 0);
        let f = f2();
        let r = check_left_invariance(
            f.presentation(),
            &f,
            &w(&f, "a"),
            &[(Word::empty(), w(&f, "A"))],
            5,
        )
        .unwrap();
        assert_eq!((r.checks[0].original, r.checks[0].translated), (1, 1));
        let r = check_left_invariance(
            f.presentation(),
            &f,
            &Word::empty(),
            &[(w(&f, "ab"), w(&f, "Ba"))],
            8,
        )
        .unwrap();
        assert_eq!(r.checks[0].original, r.checks[0].translated);
    }

    #[test]
    fn generating_set_examples() {
        let o = z2();
        let p = o.presentation().clone();
        let c =
            compare_generating_sets(&p, &o, &[w(&o, "a"), w(&o, "b"), w(&o, "ab")], 2, 10).unwrap();
        assert_eq!(
            (c.lambda1, c.lambda2),
            (Ratio::from_integer(1), Ratio::from_integer(2))
        );
        let c = compare_generating_sets(&p, &o, &[w(&o, "a"), w(&o, "b")], 2, 10).unwrap();
        assert_eq!(
            (c.lambda1, c.lambda2),
            (Ratio::from_integer(1), Ratio::from_integer(1))
        );

        let z = Presentation::from_strs("a", &[]).unwrap();
        let oz =
            TrivialityOracle::new(z.clone(), Strategy::ExponentSum { moduli: vec![0] }).unwrap();
        let c = compare_generating_sets(&z, &oz, &[w(&oz, "a"), w(&oz, "aa")], 8, 16).unwrap();
        assert_eq!(c.lambda2, Ratio::from_integer(2));
        assert_eq!(c.lambda1, Ratio::from_integer(1));

        assert_eq!(
            compare_generating_sets(&p, &o, &[w(&o, "a")], 2, 10),
            Err(CayleyError::NotGenerating(10))
        );
        assert_eq!(
            compare_generating_sets(&p, &o, &[w(&o, "a"), w(&o, "abAB")], 2, 10),
            Err(CayleyError::IdentityGenerator(1))
        );
    }
}

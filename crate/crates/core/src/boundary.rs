//! Finite-depth approximations of the boundary of a free group.
//!
//! A boundary point is represented by the cylinder of its length-`n`
//! prefix, so depth-`n` points are the reduced words of length `n`. The
//! visual distance `exp(-ε · common prefix)` is an ultrametric for every
//! `ε > 0`, and the members of the family are powers of one another.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::quasimetric::{PointCloud, QuasimetricError};
use crate::word::{reduced_word_count, reduced_words_of_length, Alphabet, Word};

/// Largest point set [`boundary_approx`] will enumerate.
pub const BOUNDARY_POINT_LIMIT: u128 = 1 << 20;
/// Largest cloud [`boundary_cloud`] will fill (the matrix is dense).
pub const CLOUD_POINT_LIMIT: usize = 4096;

#[derive(Debug, Error)]
pub enum BoundaryError {
    #[error("rank must be between 1 and 26, got {0}")]
    InvalidRank(usize),
    #[error("depth must be at least 1")]
    InvalidDepth,
    #[error("{count} points exceed the limit of {limit}")]
    TooLarge { count: u128, limit: u128 },
    #[error("points have depths {0} and {1}")]
    DepthMismatch(usize, usize),
    #[error("visual parameter must be positive and finite, got {0}")]
    InvalidEpsilon(f64),
    #[error(transparent)]
    Quasimetric(#[from] QuasimetricError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryApprox {
    pub rank: usize,
    pub depth: usize,
    pub points: Vec<Word>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VisualQuasimetric {
    epsilon: f64,
}

impl VisualQuasimetric {
    pub fn new(epsilon: f64) -> Result<Self, BoundaryError> {
        if !(epsilon.is_finite() && epsilon > 0.0) {
            return Err(BoundaryError::InvalidEpsilon(epsilon));
        }
        Ok(VisualQuasimetric { epsilon })
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }
}

pub fn boundary_approx(k: usize, n: usize) -> Result<BoundaryApprox, BoundaryError> {
    boundary_approx_with_limit(k, n, BOUNDARY_POINT_LIMIT)
}

/// Reduced words of length `n` over `k` generators, in lexicographic
/// order.
pub fn boundary_approx_with_limit(
    k: usize,
    n: usize,
    limit: u128,
) -> Result<BoundaryApprox, BoundaryError> {
    if k == 0 || k > 26 {
        return Err(BoundaryError::InvalidRank(k));
    }
    if n == 0 {
        return Err(BoundaryError::InvalidDepth);
    }
    let count = reduced_word_count(k, n);
    if count > limit {
        return Err(BoundaryError::TooLarge { count, limit });
    }
    Ok(BoundaryApprox {
        rank: k,
        depth: n,
        points: reduced_words_of_length(k, n),
    })
}

pub fn common_prefix(x: &Word, y: &Word) -> Result<usize, BoundaryError> {
    if x.len() != y.len() {
        return Err(BoundaryError::DepthMismatch(x.len(), y.len()));
    }
    Ok(x.letters()
        .iter()
        .zip(y.letters())
        .take_while(|(a, b)| a == b)
        .count())
}

pub fn visual_distance(v: VisualQuasimetric, x: &Word, y: &Word) -> Result<f64, BoundaryError> {
    let p = common_prefix(x, y)?;
    Ok(if p == x.len() {
        0.0
    } else {
        (-v.epsilon * p as f64).exp()
    })
}

/// Visual distances between the points of `b`, uniform weights summing to
/// one, and the words as labels.
pub fn boundary_cloud(
    b: &BoundaryApprox,
    v: VisualQuasimetric,
) -> Result<PointCloud, BoundaryError> {
    let n = b.points.len();
    if n > CLOUD_POINT_LIMIT {
        return Err(BoundaryError::TooLarge {
            count: n as u128,
            limit: CLOUD_POINT_LIMIT as u128,
        });
    }
    // one exp per prefix length keeps equal prefixes at bit-equal distances
    let table: Vec<f64> = (0..b.depth)
        .map(|p| (-v.epsilon * p as f64).exp())
        .collect();
    let mut dist = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..i {
            let p = common_prefix(&b.points[i], &b.points[j])?;
            dist[i][j] = table[p];
            dist[j][i] = table[p];
        }
    }
    let alphabet = Alphabet::standard(b.rank).map_err(|_| BoundaryError::InvalidRank(b.rank))?;
    let labels = b.points.iter().map(|w| alphabet.render(w)).collect();
    Ok(PointCloud::new(
        dist,
        Some(vec![1.0 / n as f64; n]),
        Some(labels),
    )?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    Elementary,
    NonElementary,
}

/// Rank 1 has two boundary points at every depth; higher ranks have at
/// least four and grow without bound.
pub fn elementary_check(k: usize) -> Result<Classification, BoundaryError> {
    match k {
        0 => Err(BoundaryError::InvalidRank(0)),
        1 => Ok(Classification::Elementary),
        _ => Ok(Classification::NonElementary),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quasimetric::{is_metric, ultrametric_violation};

    fn w(s: &str) -> Word {
        Alphabet::standard(3).unwrap().parse(s).unwrap()
    }

    #[test]
    fn approx_examples() {
        assert_eq!(boundary_approx(2, 1).unwrap().points.len(), 4);
        let b = boundary_approx(2, 3).unwrap();
        assert_eq!(b.points.len(), 36);
        // every string of length 3 over a, A, b, B, filtered for reducedness
        let letters = Alphabet::standard(2).unwrap().letters().collect::<Vec<_>>();
        let mut all = Vec::new();
        for x in &letters {
            for y in &letters {
                for z in &letters {
                    let word = Word::from_letters(vec![*x, *y, *z]);
                    if word.is_reduced() {
                        all.push(word);
                    }
                }
            }
        }
        all.sort();
        assert_eq!(b.points, all);
        let b = boundary_approx(1, 5).unwrap();
        let a = Alphabet::standard(1).unwrap();
        let names: Vec<String> = b.points.iter().map(|p| a.render(p)).collect();
        assert_eq!(names, ["aaaaa", "AAAAA"]);
    }

    #[test]
    fn approx_errors() {
        assert!(matches!(
            boundary_approx(0, 2),
            Err(BoundaryError::InvalidRank(0))
        ));
        assert!(matches!(
            boundary_approx(2, 0),
            Err(BoundaryError::InvalidDepth)
        ));
        assert!(matches!(
            boundary_approx_with_limit(2, 5, 100),
            Err(BoundaryError::TooLarge {
                count: 324,
                limit: 100
            })
        ));
    }

    #[test]
    fn prefix_examples() {
        assert_eq!(common_prefix(&w("abA"), &w("abb")).unwrap(), 2);
        assert_eq!(common_prefix(&w("abA"), &w("abA")).unwrap(), 3);
        assert_eq!(common_prefix(&w("aab"), &w("bab")).unwrap(), 0);
        assert!(matches!(
            common_prefix(&w("ab"), &w("abc")),
            Err(BoundaryError::DepthMismatch(2, 3))
        ));
    }

    #[test]
    fn visual_examples() {
        let v = VisualQuasimetric::new(3f64.ln()).unwrap();
        assert_eq!(visual_distance(v, &w("abA"), &w("abA")).unwrap(), 0.0);
        assert!((visual_distance(v, &w("abA"), &w("abb")).unwrap() - 1.0 / 9.0).abs() < 1e-15);
        let one = VisualQuasimetric::new(1.0).unwrap();
        let d1 = visual_distance(one, &w("abA"), &w("abb")).unwrap();
        let de = visual_distance(v, &w("abA"), &w("abb")).unwrap();
        assert!((de - d1.powf(v.epsilon())).abs() < 1e-15);
        assert!(VisualQuasimetric::new(0.0).is_err());
    }

    #[test]
    fn cloud_examples() {
        let v = VisualQuasimetric::new(0.7).unwrap();
        let c = boundary_cloud(&boundary_approx(1, 3).unwrap(), v).unwrap();
        assert_eq!(c.len(), 2);
        assert_eq!(c.d(0, 1), 1.0);
        let v = VisualQuasimetric::new(3f64.ln()).unwrap();
        let c = boundary_cloud(&boundary_approx(2, 4).unwrap(), v).unwrap();
        assert!(is_metric(&c));
        assert_eq!(ultrametric_violation(&c), None);
        let total: f64 = c.weights().unwrap().iter().sum();
        assert!((total - 1.0).abs() < 1e-12);
        assert_eq!(c.labels().unwrap()[0], "aaaa");
    }

    #[test]
    fn classification_examples() {
        assert_eq!(elementary_check(1).unwrap(), Classification::Elementary);
        assert_eq!(elementary_check(2).unwrap(), Classification::NonElementary);
        assert_eq!(elementary_check(3).unwrap(), Classification::NonElementary);
        assert_eq!(boundary_approx(3, 2).unwrap().points.len(), 30);
        for n in 1..=6 {
            assert_eq!(boundary_approx(1, n).unwrap().points.len(), 2);
        }
    }
}

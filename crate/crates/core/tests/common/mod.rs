//! Independent reference implementations used as test oracles. Words are
//! plain strings here (lowercase generator, uppercase inverse) so nothing
//! below goes through the library's own word type.

#![allow(dead_code)]

use std::collections::{HashMap, VecDeque};

pub fn inv_char(c: char) -> char {
    if c.is_ascii_lowercase() {
        c.to_ascii_uppercase()
    } else {
        c.to_ascii_lowercase()
    }
}

pub fn reduce(s: &str) -> String {
    let mut out: Vec<char> = Vec::new();
    for c in s.chars() {
        if out.last() == Some(&inv_char(c)) {
            out.pop();
        } else {
            out.push(c);
        }
    }
    out.into_iter().collect()
}

pub fn inverse(s: &str) -> String {
    s.chars().rev().map(inv_char).collect()
}

pub fn power(r: &str, b: i64) -> String {
    let base = if b < 0 { inverse(r) } else { r.to_string() };
    base.repeat(b.unsigned_abs() as usize)
}

/// Every string over the letters of `gens` and their inverses, lengths
/// `0..=max_len`, reduced or not.
pub fn all_strings(gens: &str, max_len: usize) -> Vec<String> {
    let letters: Vec<char> = gens
        .chars()
        .flat_map(|g| [g, g.to_ascii_uppercase()])
        .collect();
    let mut out = vec![String::new()];
    let mut frontier = vec![String::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for s in &frontier {
            for &c in &letters {
                let mut t = s.clone();
                t.push(c);
                next.push(t);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

pub fn reduced_strings(gens: &str, max_len: usize) -> Vec<String> {
    all_strings(gens, max_len)
        .into_iter()
        .filter(|s| reduce(s) == *s)
        .collect()
}

pub fn exponent_sums(s: &str, gens: &str) -> Vec<i64> {
    gens.chars()
        .map(|g| {
            s.chars()
                .map(|c| {
                    if c == g {
                        1
                    } else if c == g.to_ascii_uppercase() {
                        -1
                    } else {
                        0
                    }
                })
                .sum()
        })
        .collect()
}

/// Least `max(Σ|u_j|, Σ |b_j| |r_j|²)` over products of at most
/// `max_factors` factors `u r^b u⁻¹` whose conjugators are arbitrary
/// strings of length at most `conj_max`, among products reducing to `w`
/// with both sums at most `max_area`. Plain exhaustive enumeration.
pub fn brute_area(
    gens: &str,
    relators: &[&str],
    w: &str,
    max_area: u64,
    conj_max: usize,
    max_factors: usize,
) -> Option<u64> {
    let conjugators = all_strings(gens, conj_max);
    let mut factors: Vec<(String, u64, u64)> = Vec::new();
    for r in relators {
        let weight = (r.len() as u64).pow(2);
        if weight == 0 {
            continue;
        }
        let mut b = 1i64;
        while b as u64 * weight <= max_area {
            for sb in [b, -b] {
                let s = power(r, sb);
                for u in &conjugators {
                    let f = format!("{u}{s}{}", inverse(u));
                    factors.push((f, u.len() as u64, b as u64 * weight));
                }
            }
            b += 1;
        }
    }
    let target = reduce(w);
    let mut best = None;
    fn rec(
        factors: &[(String, u64, u64)],
        cur: &str,
        conj: u64,
        rel: u64,
        left: usize,
        max_area: u64,
        target: &str,
        best: &mut Option<u64>,
    ) {
        if reduce(cur) == target {
            let v = conj.max(rel);
            if best.is_none_or(|b| v < b) {
                *best = Some(v);
            }
        }
        if left == 0 {
            return;
        }
        for (f, c, r) in factors {
            let (nc, nr) = (conj + c, rel + r);
            if nc <= max_area && nr <= max_area && best.is_none_or(|b| nc.max(nr) < b) {
                let next = reduce(&format!("{cur}{f}"));
                rec(factors, &next, nc, nr, left - 1, max_area, target, best);
            }
        }
    }
    rec(
        &factors,
        "",
        0,
        0,
        max_factors,
        max_area,
        &target,
        &mut best,
    );
    best
}

/// Breadth-first distances from the origin in `Z^n` with the given steps
/// (and their negatives), out to `radius`.
pub fn lattice_bfs(steps: &[Vec<i64>], radius: usize) -> HashMap<Vec<i64>, usize> {
    let n = steps[0].len();
    let mut all: Vec<Vec<i64>> = steps.to_vec();
    all.extend(
        steps
            .iter()
            .map(|s| s.iter().map(|x| -x).collect::<Vec<_>>()),
    );
    let mut dist = HashMap::new();
    let origin = vec![0i64; n];
    dist.insert(origin.clone(), 0);
    let mut queue = VecDeque::from([origin]);
    while let Some(p) = queue.pop_front() {
        let d = dist[&p];
        if d == radius {
            continue;
        }
        for s in &all {
            let q: Vec<i64> = p.iter().zip(s).map(|(a, b)| a + b).collect();
            if !dist.contains_key(&q) {
                dist.insert(q.clone(), d + 1);
                queue.push_back(q);
            }
        }
    }
    dist
}

//! Decomposition of an integer Gram matrix into a sum of integer rank-one
//! terms, `R = Σ v·vᵀ`, modulo reordering and sign of the vectors.
//!
//! Both column searches reduce to this: the candidate matrix's free rows (or
//! columns) are exactly the vectors `v`. Solutions come back canonical: every
//! vector has a positive first nonzero entry and the list is sorted in
//! descending lexicographic order.

use rayon::prelude::*;

use crate::error::{Error, Result};

pub type Vector = Vec<i64>;

/// Flips `v` so that its first nonzero entry is positive.
pub fn sign_normalize(v: &mut [i64]) {
    if let Some(&first) = v.iter().find(|&&x| x != 0) {
        if first < 0 {
            v.iter_mut().for_each(|x| *x = -*x);
        }
    }
}

/// Canonical representative of a vector multiset under reordering and sign.
pub fn canonicalize(vectors: &[Vector]) -> Vec<Vector> {
    let mut out: Vec<Vector> = vectors.to_vec();
    out.iter_mut().for_each(|v| sign_normalize(v));
    out.sort_by(|a, b| b.cmp(a));
    out
}

/// `Σ v·vᵀ` over the given vectors (dimension taken from `n`).
pub fn outer_sum(vectors: &[Vector], n: usize) -> Vec<Vec<i64>> {
    let mut g = vec![vec![0i64; n]; n];
    for v in vectors {
        for a in 0..n {
            if v[a] == 0 {
                continue;
            }
            for b in 0..n {
                g[a][b] += v[a] * v[b];
            }
        }
    }
    g
}

/// `gram − f·fᵀ`, the part left once a fixed vector is accounted for.
pub fn residual(gram: &[Vec<i64>], fixed: &[i64]) -> Vec<Vec<i64>> {
    gram.iter()
        .enumerate()
        .map(|(a, row)| {
            row.iter()
                .enumerate()
                .map(|(b, &g)| g - fixed[a] * fixed[b])
                .collect()
        })
        .collect()
}

/// Exact positive-semidefiniteness test by fraction-free elimination.
pub fn is_psd(m: &[Vec<i64>]) -> bool {
    let n = m.len();
    let mut a: Vec<Vec<i128>> = m
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut prev: i128 = 1;
    let mut alive: Vec<usize> = (0..n).collect();
    while let Some(&k) = alive.first() {
        alive.remove(0);
        let p = a[k][k];
        if p < 0 {
            return false;
        }
        if p == 0 {
            // a zero pivot is only allowed on a zero row
            if alive.iter().any(|&j| a[k][j] != 0) {
                return false;
            }
            continue;
        }
        for &i in &alive {
            for &j in &alive {
                a[i][j] = (p * a[i][j] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = p;
    }
    true
}

fn isqrt(n: i64) -> i64 {
    if n <= 0 {
        return 0;
    }
    let mut r = (n as f64).sqrt() as i64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// Search bounds for one decomposition run.
#[derive(Clone, Copy, Debug)]
pub struct DecompositionLimits {
    /// Maximum number of rank-one terms.
    pub max_terms: usize,
}

/// All canonical multisets `{v}` of nonzero integer vectors with
/// `Σ v·vᵀ = target` and at most `limits.max_terms` members.
///
/// Fails with `InfeasibleGram` if `target` is not symmetric positive
/// semidefinite.
pub fn decompose(target: &[Vec<i64>], limits: DecompositionLimits) -> Result<Vec<Vec<Vector>>> {
    let n = target.len();
    if target.iter().any(|r| r.len() != n) {
        return Err(Error::DimensionMismatch("gram matrix is not square".into()));
    }
    if (0..n).any(|a| (0..a).any(|b| target[a][b] != target[b][a])) {
        return Err(Error::InfeasibleGram("matrix is not symmetric".into()));
    }
    if !is_psd(target) {
        return Err(Error::InfeasibleGram("matrix is not positive semidefinite".into()));
    }
    let Some(lead) = first_positive(target) else {
        return Ok(vec![Vec::new()]);
    };
    if limits.max_terms == 0 {
        return Ok(Vec::new());
    }
    let firsts = next_vectors(target, lead, None);
    let mut out: Vec<Vec<Vector>> = firsts
        .into_par_iter()
        .flat_map_iter(|(v, rest)| {
            let mut acc = vec![v];
            let mut found = Vec::new();
            search(&rest, &mut acc, limits.max_terms, &mut found);
            found
        })
        .collect();
    out.sort_by(|a, b| b.cmp(a));
    Ok(out)
}

fn first_positive(r: &[Vec<i64>]) -> Option<usize> {
    (0..r.len()).find(|&k| r[k][k] > 0)
}

fn search(r: &[Vec<i64>], acc: &mut Vec<Vector>, max_terms: usize, found: &mut Vec<Vec<Vector>>) {
    let Some(lead) = first_positive(r) else {
        found.push(acc.clone());
        return;
    };
    if acc.len() >= max_terms {
        return;
    }
    let prev = acc.last().cloned();
    for (v, rest) in next_vectors(r, lead, prev.as_deref()) {
        acc.push(v);
        search(&rest, acc, max_terms, found);
        acc.pop();
    }
}

/// Every admissible next vector with leading index `lead`, not exceeding
/// `prev` lexicographically, paired with the residual it leaves behind.
fn next_vectors(r: &[Vec<i64>], lead: usize, prev: Option<&[i64]>) -> Vec<(Vector, Vec<Vec<i64>>)> {
    let n = r.len();
    let bounds: Vec<i64> = (0..n).map(|j| isqrt(r[j][j])).collect();
    let mut out = Vec::new();
    let mut v = vec![0i64; n];
    // entries before `lead` are zero, so the order constraint is only live
    // while `prev` is zero there too
    let tight = prev.is_some_and(|p| p[..lead].iter().all(|&x| x == 0));
    fill(r, lead, lead, &bounds, prev, tight, &mut v, &mut out);
    out
}

#[allow(clippy::too_many_arguments)]
fn fill(
    r: &[Vec<i64>],
    lead: usize,
    j: usize,
    bounds: &[i64],
    prev: Option<&[i64]>,
    tight: bool,
    v: &mut Vector,
    out: &mut Vec<(Vector, Vec<Vec<i64>>)>,
) {
    let n = r.len();
    if j == n {
        let rest: Vec<Vec<i64>> = (0..n)
            .map(|a| (0..n).map(|b| r[a][b] - v[a] * v[b]).collect())
            .collect();
        if is_psd(&rest) {
            out.push((v.clone(), rest));
        }
        return;
    }
    let (lo, hi) = if j == lead { (1, bounds[j]) } else { (-bounds[j], bounds[j]) };
    // descending-order constraint against the previous vector
    let cap = match (tight, prev) {
        (true, Some(p)) => p[j].min(hi),
        _ => hi,
    };
    let mut x = cap;
    while x >= lo {
        let djj = r[j][j] - x * x;
        let ok = djj >= 0
            && (lead..j).all(|a| {
                let daa = r[a][a] - v[a] * v[a];
                let dab = r[a][j] - v[a] * x;
                daa * djj >= dab * dab
            });
        if ok {
            v[j] = x;
            let still_tight = tight && prev.is_some_and(|p| p[j] == x);
            fill(r, lead, j + 1, bounds, prev, still_tight, v, out);
            v[j] = 0;
        }
        x -= 1;
    }
}

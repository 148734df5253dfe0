#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::sync::Arc;

use chartab::chartable::CharacterTable;
use chartab::gram;
use chartab::permgroup::{parse_generators, PermGroup, DEFAULT_CAP};

pub fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

pub fn h_table() -> Arc<CharacterTable> {
    Arc::new(CharacterTable::load(data("h_table.txt")).unwrap())
}

pub fn h_group() -> PermGroup {
    let text = std::fs::read_to_string(data("h_generators.txt")).unwrap();
    group_from_text(&text)
}

pub fn group_from_text(text: &str) -> PermGroup {
    let gens = parse_generators(text).unwrap();
    let degree = gens[0].degree();
    PermGroup::from_generators(gens, degree, DEFAULT_CAP).unwrap()
}

/// Small groups with rational character tables, as generator documents.
pub const SMALL_GROUPS: &[(&str, &str, u64)] = &[
    ("S3", "(1,2,3)\n(1,2)\n", 6),
    ("D8", "(1,2,3,4)\n(1,3)\n", 8),
    ("Q8", "(1,2,3,4)(5,6,7,8)\n(1,5,3,7)(2,8,4,6)\n", 8),
    ("S4", "(1,2,3,4)\n(1,2)\n", 24),
    ("C2xC2", "(1,2)\n(3,4)\n", 4),
];

/// Every multiset of nonzero sign-normalised vectors, at most `max_terms`
/// of them, whose outer products sum to `target`; by exhaustive search.
pub fn naive_search(target: &[Vec<i64>], max_terms: usize) -> BTreeSet<Vec<Vec<i64>>> {
    let n = target.len();
    let bound = (0..n).map(|i| target[i][i]).max().unwrap_or(0);
    let b = (0..).take_while(|k: &i64| k * k <= bound).last().unwrap_or(0);
    let mut vectors = Vec::new();
    let mut v = vec![-b; n];
    loop {
        let mut w = v.clone();
        gram::sign_normalize(&mut w);
        if w == v && v.iter().any(|&x| x != 0) {
            vectors.push(v.clone());
        }
        let mut i = 0;
        while i < n && v[i] == b {
            v[i] = -b;
            i += 1;
        }
        if i == n {
            break;
        }
        v[i] += 1;
    }
    vectors.sort_by(|a, b| b.cmp(a));
    let mut out = BTreeSet::new();
    fn go(
        vectors: &[Vec<i64>],
        start: usize,
        rest: &mut Vec<Vec<i64>>,
        chosen: &mut Vec<Vec<i64>>,
        max: usize,
        out: &mut BTreeSet<Vec<Vec<i64>>>,
    ) {
        if rest.iter().all(|r| r.iter().all(|&x| x == 0)) {
            out.insert(chosen.clone());
            return;
        }
        if chosen.len() == max {
            return;
        }
        let n = rest.len();
        for k in start..vectors.len() {
            let v = &vectors[k];
            if (0..n).any(|i| v[i] * v[i] > rest[i][i]) {
                continue;
            }
            for a in 0..n {
                for c in 0..n {
                    rest[a][c] -= v[a] * v[c];
                }
            }
            chosen.push(v.clone());
            go(vectors, k, rest, chosen, max, out);
            chosen.pop();
            for a in 0..n {
                for c in 0..n {
                    rest[a][c] += v[a] * v[c];
                }
            }
        }
    }
    go(&vectors, 0, &mut target.to_vec(), &mut Vec::new(), max_terms, &mut out);
    out
}


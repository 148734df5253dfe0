mod common;

use std::collections::BTreeSet;
use std::sync::OnceLock;

use chartab::blocks::{apply_filters, canonical_k, enumerate_k, CandidateK, ColumnMethodInstance, Status};
use chartab::gram::{self, outer_sum};
use chartab::linalg::Matrix;
use chartab::suzuki::Decomposition;
use chartab::Error;
use common::{data, naive_search};
use proptest::prelude::*;

fn base_instance() -> &'static ColumnMethodInstance {
    static INST: OnceLock<ColumnMethodInstance> = OnceLock::new();
    INST.get_or_init(|| ColumnMethodInstance::load(data("case2.inst")).unwrap())
}

fn base_candidates() -> &'static Vec<CandidateK> {
    static CANDS: OnceLock<Vec<CandidateK>> = OnceLock::new();
    CANDS.get_or_init(|| enumerate_k(base_instance()).unwrap())
}

/// A three-column instance whose Gram matrix comes from `rows`.
fn reduced(first: Vec<i64>, rows: &[Vec<i64>], extra_rows: usize) -> ColumnMethodInstance {
    let mut all = vec![first.clone()];
    all.extend(rows.iter().cloned());
    let mut inst = base_instance().clone();
    inst.columns = inst.columns[..3].to_vec();
    inst.m = Matrix::identity(3);
    inst.gram_k = outer_sum(&all, 3);
    inst.first_row = first;
    inst.max_rows = 1 + rows.len() + extra_rows;
    inst.golden.clear();
    inst
}

fn small_row() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-2i64..=2, 3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn enumeration_matches_naive_search(
        first in small_row(),
        rows in prop::collection::vec(small_row(), 1..=4),
        extra in 0usize..=1,
    ) {
        let inst = reduced(first.clone(), &rows, extra);
        let residual = gram::residual(&inst.gram_k, &first);
        let expected = naive_search(&residual, inst.max_rows - 1);
        let found: BTreeSet<Vec<Vec<i64>>> = match enumerate_k(&inst) {
            Ok(c) => c.into_iter().map(|c| c.k[1..].to_vec()).collect(),
            Err(Error::InfeasibleInstance(_)) => BTreeSet::new(),
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        };
        prop_assert_eq!(found, expected);
    }

    #[test]
    fn canonical_forms_are_idempotent_and_symmetric(
        first in small_row(),
        rows in prop::collection::vec(small_row(), 1..=6),
        flips in prop::collection::vec(any::<bool>(), 6),
        seed in any::<u64>(),
    ) {
        let mut k = vec![first.clone()];
        k.extend(rows.iter().cloned());
        let c = canonical_k(&k);
        prop_assert_eq!(canonical_k(&c), c.clone());
        prop_assert_eq!(&c[0], &first);
        // permute and negate the free rows
        let mut shuffled = rows.clone();
        let len = shuffled.len();
        for i in 0..len {
            let j = (seed.rotate_left(i as u32 * 7) as usize) % len;
            shuffled.swap(i, j);
        }
        for (row, &f) in shuffled.iter_mut().zip(&flips) {
            if f {
                row.iter_mut().for_each(|x| *x = -*x);
            }
        }
        let mut k2 = vec![first];
        k2.extend(shuffled);
        prop_assert_eq!(canonical_k(&k2), c);

        let d = Decomposition { trivial: vec![1, 0, 0], columns: rows.clone() };
        prop_assert_eq!(d.canonical().canonical(), d.canonical());
        prop_assert_eq!(d.canonical().gram(), d.gram());
        prop_assert_eq!(gram::canonicalize(&gram::canonicalize(&rows)), gram::canonicalize(&rows));
    }

    #[test]
    fn adding_filters_never_adds_survivors(
        pcentral in 0usize..9,
        a in 0usize..9,
        b in 0usize..9,
        pairs in prop::collection::vec((0usize..9, 0usize..9, 2i64..=3), 0..=2),
    ) {
        prop_assume!(a != b);
        let mut inst = base_instance().clone();
        inst.pcentral = pcentral;
        inst.parity = (a, b);
        inst.congruence_pairs = Vec::new();
        let mut loose = base_candidates().clone();
        apply_filters(&mut loose, &inst).unwrap();
        inst.congruence_pairs = pairs;
        let mut strict = base_candidates().clone();
        apply_filters(&mut strict, &inst).unwrap();
        for (l, s) in loose.iter().zip(&strict) {
            prop_assert!(l.status != Status::Pending && s.status != Status::Pending);
            if l.status.is_rejected() {
                prop_assert!(s.status.is_rejected());
            }
        }
        // re-filtering never resurrects a rejected candidate
        let before: Vec<bool> = strict.iter().map(|c| c.status.is_rejected()).collect();
        inst.congruence_pairs.clear();
        apply_filters(&mut strict, &inst).unwrap();
        for (c, was) in strict.iter().zip(before) {
            if was {
                prop_assert!(c.status.is_rejected());
            }
        }
    }
}

#[test]
fn naive_search_agrees_on_the_shipped_gram_diagonal_block() {
    // the leading 3x3 block of the shipped column Gram matrix
    let inst = base_instance();
    let mut small = inst.clone();
    small.gram_k = (0..3).map(|i| inst.gram_k[i][..3].to_vec()).collect();
    small.first_row = inst.first_row[..3].to_vec();
    small.m = Matrix::identity(3);
    small.max_rows = 6;
    let residual = gram::residual(&small.gram_k, &small.first_row);
    let expected = naive_search(&residual, 5);
    let found: BTreeSet<_> = enumerate_k(&small)
        .map(|c| c.into_iter().map(|c| c.k[1..].to_vec()).collect())
        .unwrap_or_default();
    assert_eq!(found, expected);
    assert!(!found.is_empty());
}

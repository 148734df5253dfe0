mod common;

use chartab::exact::Scalar;
use chartab::linalg::Matrix;
use chartab::suzuki::{run_pipeline, vanishing_basis, FamilyOutcome, PipelineConfig, SpecialClassSet};
use common::{data, h_table};

fn report() -> chartab::suzuki::PipelineReport {
    run_pipeline(&PipelineConfig::load(data("case1.cfg")).unwrap()).unwrap()
}

#[test]
fn basis_c_and_gram_are_reproduced() {
    let rep = report();
    assert_eq!(rep.basis.dimension(), 4);
    let c = Matrix::from_i64_rows(&[
        vec![1, 3, -1, -1],
        vec![1, 0, -1, -1],
        vec![1, 0, 2, -1],
        vec![1, 0, -1, 2],
    ])
    .unwrap();
    assert_eq!(rep.c, c);
    assert_eq!(
        rep.gram,
        vec![vec![3, -1, 0, 0], vec![-1, 7, 1, 1], vec![0, 1, 2, 1], vec![0, 1, 1, 2]]
    );
    assert_eq!(rep.trivial, vec![1, 0, 0, 0]);
}

#[test]
fn supplied_basis_is_related_to_the_canonical_one() {
    let rep = report();
    let x = rep.change_of_basis.clone().unwrap();
    assert_eq!(x.checked_mul(&rep.canonical.coefficients).unwrap(), rep.basis.coefficients);
}

#[test]
fn gram_matches_direct_inner_products() {
    // inner products of the induced functions, computed on H directly
    let rep = report();
    let f = rep.basis.functions();
    let mut direct = vec![vec![0i64; 4]; 4];
    for a in 0..4 {
        for b in 0..4 {
            let v = f[a].inner_product(&f[b]).unwrap();
            direct[a][b] = v.to_i64().unwrap();
        }
    }
    assert_eq!(direct, rep.gram);
}

#[test]
fn five_families_with_expected_relations_and_roots() {
    let rep = report();
    assert_eq!(rep.families.len(), 5);
    let mut all_roots = Vec::new();
    for (fam, out) in rep.families.iter().zip(&rep.outcomes) {
        let cols = fam.column_names();
        let params = fam.param_names();
        let rels: Vec<String> = fam.relations.iter().map(|r| r.render(&cols, &params)).collect();
        assert_eq!(rels[0], "1 + s1·d2 - s1·d3 = 0", "{:?}", rels);
        // the three remaining degrees coincide
        assert_eq!(rels.len(), 3);
        for r in &rels[1..] {
            assert!(r.starts_with("s2·d") && r.contains(" - s2·d"), "{}", r);
        }
        match out {
            FamilyOutcome::Eliminated(e) => {
                let roots = e.root_pairs();
                assert!(roots == vec![(1, 2)] || roots == vec![(4, 5)], "{:?}", roots);
                all_roots.extend(roots);
            }
            other => panic!("family not eliminated: {:?}", other),
        }
    }
    all_roots.sort_unstable();
    all_roots.dedup();
    assert_eq!(all_roots, vec![(1, 2), (4, 5)]);
    assert!(rep.all_eliminated());
}

#[test]
fn order_formulae_match_the_hand_derivation() {
    // |G| = 972·d/(d + k·s) with k = 2, 4 or 8, hence 53d ≤ −112·s, −224·s or −448·s
    let rep = report();
    let mut ks = Vec::new();
    for out in &rep.outcomes {
        if let FamilyOutcome::Eliminated(e) = out {
            for b in &e.branches {
                for o in &b.outcomes {
                    ks.push((o.order.order_formula.clone(), o.order.bound_rendered.clone()));
                }
            }
        }
    }
    for (formula, bound) in &ks {
        let k = formula
            .split("+ ")
            .nth(1)
            .and_then(|t| t.split('·').next())
            .unwrap()
            .parse::<i64>()
            .unwrap();
        assert_eq!(bound, &format!("53d4 ≤ -{}·s2", 56 * k), "{}", formula);
    }
    assert_eq!(ks.len(), 10);
}

#[test]
fn weakened_order_bound_leaves_honest_survivors() {
    let mut cfg = PipelineConfig::load(data("case1.cfg")).unwrap();
    cfg.elimination.order_ratio_bound = 1;
    let rep = run_pipeline(&cfg).unwrap();
    assert!(!rep.all_eliminated());
    assert!(rep.outcomes.iter().any(|o| matches!(o, FamilyOutcome::Surviving(_))));
}

#[test]
fn single_class_scenario_runs() {
    let set = SpecialClassSet::from_names(h_table(), &["C7"], vec![]).unwrap();
    let vb = vanishing_basis(&set);
    assert_eq!(vb.dimension(), 1);
    let text = "table h_table.txt\nspecial C7\nlet y = C7\nalpha y y y = 0\norder_ratio_bound 28\n";
    let cfg = PipelineConfig::parse(text, &data("")).unwrap();
    let rep = run_pipeline(&cfg).unwrap();
    assert_eq!(rep.basis.dimension(), 1);
    assert_eq!(rep.gram.len(), 1);
    assert!(rep.basis.degrees().iter().all(|d| *d == Scalar::zero() || d.is_rational_integer()));
}

mod common;

use chartab::chartable::is_nonnegative_integer;
use chartab::exact::rat_int;
use chartab::permgroup::match_tables;
use common::{group_from_text, h_group, h_table, SMALL_GROUPS};

#[test]
fn h_generators_give_order_648_with_matching_class_data() {
    let g = h_group();
    let t = h_table();
    assert_eq!(g.order(), 648);
    assert_eq!(g.conjugacy_classes().len(), 14);
    let mut from_group: Vec<(u64, u64)> = g
        .conjugacy_classes()
        .iter()
        .map(|c| (c.element_order, c.centralizer_order))
        .collect();
    let mut from_table: Vec<(u64, u64)> = t
        .classes()
        .iter()
        .map(|c| (c.element_order, c.centralizer_order))
        .collect();
    from_group.sort_unstable();
    from_table.sort_unstable();
    assert_eq!(from_group, from_table);
}

#[test]
fn dixon_table_of_h_matches_the_shipped_table() {
    let g = h_group();
    let computed = g.dixon_character_table().unwrap();
    assert!(computed.validate_orthogonality().is_valid());
    assert!(match_tables(&computed, &h_table()).is_some());
}

#[test]
fn table_structure_constants_agree_with_brute_force() {
    let g = h_group();
    let t = h_table();
    // the group's class order matches the table's column order
    for (k, c) in g.conjugacy_classes().iter().enumerate() {
        assert_eq!(c.element_order, t.classes()[k].element_order);
        assert_eq!(c.centralizer_order, t.classes()[k].centralizer_order);
    }
    let brute = g.class_multiplication_coefficients();
    let r = t.class_count();
    let mut checked = 0;
    for x in 0..r {
        for y in 0..r {
            for z in 0..r {
                let a = t.structure_constant_a(x, y, z).unwrap();
                assert!(is_nonnegative_integer(&a));
                assert_eq!(a, rat_int(brute[x][y][z] as i64), "a({}, {}, {})", x + 1, y + 1, z + 1);
                checked += 1;
            }
        }
    }
    assert_eq!(checked, 2744);
    assert_eq!(g.structure_constant_bruteforce(5, 6, 6), 6);
}

#[test]
fn frobenius_counts_are_divisible_on_h() {
    let t = h_table();
    let g = h_group();
    for m in 1..=72u64 {
        let count = t.frobenius_count(m);
        let d = num_integer::gcd(m, 648);
        assert_eq!(count % d, 0, "m = {}", m);
        assert_eq!(count, g.count_mth_roots_of_unity(m), "m = {}", m);
    }
    let dixon = g.dixon_character_table().unwrap();
    for m in 1..=36u64 {
        assert_eq!(dixon.frobenius_count(m) % num_integer::gcd(m, 648), 0);
    }
}

#[test]
fn small_groups_obey_frobenius_and_orthogonality() {
    for (name, gens, order) in SMALL_GROUPS {
        let g = group_from_text(gens);
        assert_eq!(g.order(), *order, "{}", name);
        let t = g.dixon_character_table().unwrap();
        assert!(t.validate_orthogonality().is_valid(), "{}", name);
        for m in 1..=2 * order {
            let count = t.frobenius_count(m);
            assert_eq!(count, g.count_mth_roots_of_unity(m), "{} m = {}", name, m);
            assert_eq!(count % num_integer::gcd(m, *order), 0, "{} m = {}", name, m);
        }
    }
}

#[test]
fn q8_and_d8_are_told_apart_by_element_orders() {
    let q8 = group_from_text(SMALL_GROUPS[2].1);
    let d8 = group_from_text(SMALL_GROUPS[1].1);
    let tq = q8.dixon_character_table().unwrap();
    let td = d8.dixon_character_table().unwrap();
    // the character values coincide; matching also respects element orders
    assert!(match_tables(&tq, &td).is_none());
    assert!(match_tables(&tq, &tq).is_some());
    assert_eq!(q8.count_mth_roots_of_unity(2), 2);
    assert_eq!(d8.count_mth_roots_of_unity(2), 6);
}

#[test]
fn identity_only_generators_give_the_trivial_group() {
    let g = group_from_text("()\n");
    assert_eq!(g.order(), 1);
    assert_eq!(g.conjugacy_classes().len(), 1);
}

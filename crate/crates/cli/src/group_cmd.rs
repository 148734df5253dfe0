use std::path::Path;

use anyhow::Context;
use chartab::chartable::CharacterTable;
use chartab::permgroup::{parse_generators, PermGroup};
use clap::Subcommand;
use num_integer::Integer;
use serde_json::json;

use crate::output::Report;

#[derive(Subcommand, Debug)]
pub enum GroupAction {
    /// List the conjugacy classes.
    Classes,
    /// Compute the character table and print it as a table document.
    Chartable,
    /// Count pairs `(a, b)` in `x^G × y^G` with `ab` a fixed element of `z^G`.
    Structconst { x: String, y: String, z: String },
}

fn read(path: &Path) -> anyhow::Result<String> {
    std::fs::read_to_string(path).map_err(|e| {
        chartab::Error::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        }
        .into()
    })
}

fn load_group(path: &Path, cap: usize) -> anyhow::Result<PermGroup> {
    let gens = parse_generators(&read(path)?)?;
    let degree = gens.first().map(|g| g.degree()).unwrap_or(1);
    Ok(PermGroup::from_generators(gens, degree, cap)?)
}

pub fn validate(path: &Path) -> anyhow::Result<(Report, u8)> {
    let table = CharacterTable::load(path)?;
    let check = table.validate_orthogonality();
    let mut r = Report::default();
    r.heading(&format!("table {} ({} classes)", table.name(), table.class_count()));
    r.block(check.to_string());
    let ok = |v: &[chartab::chartable::PairFailure]| if v.is_empty() { "ok" } else { "FAILS" };
    r.line(format!("first orthogonality: {}", ok(&check.row_failures)));
    r.line(format!("second orthogonality: {}", ok(&check.column_failures)));
    let valid = check.is_valid();
    r.line(if valid { "table is valid" } else { "table is NOT valid" });
    let failures = |v: &[chartab::chartable::PairFailure]| {
        v.iter()
            .map(|p| json!({"first": p.first, "second": p.second, "found": p.found.to_string(), "expected": p.expected.to_string()}))
            .collect::<Vec<_>>()
    };
    r.set("command", "validate");
    r.set("table", table.name());
    r.set("group_order", table.group_order());
    r.set("classes", table.class_count());
    r.set("degree_square_sum", check.degree_square_sum.to_string());
    r.set("row_failures", failures(&check.row_failures));
    r.set("column_failures", failures(&check.column_failures));
    r.set("valid", valid);
    if !valid {
        let first = check
            .row_failures
            .iter()
            .chain(&check.column_failures)
            .next()
            .map(|p| format!(": first failing pair ({}, {})", p.first, p.second))
            .unwrap_or_else(|| ": degree identity fails".to_string());
        r.diagnostic = Some(format!("{} is not a character table{}", path.display(), first));
    }
    Ok((r, if valid { 0 } else { 2 }))
}

pub fn structconst(path: &Path, names: [&str; 3]) -> anyhow::Result<(Report, u8)> {
    let table = CharacterTable::load(path)?;
    let idx = names
        .iter()
        .map(|n| table.class_index(n))
        .collect::<chartab::Result<Vec<_>>>()?;
    let alpha = table.structure_constant_alpha(idx[0], idx[1], idx[2]);
    let a = table.structure_constant_a(idx[0], idx[1], idx[2])?;
    let mut r = Report::default();
    r.line(format!(
        "alpha({}, {}, {}) = {}",
        names[0], names[1], names[2], alpha
    ));
    r.line(format!("a({}, {}, {}) = {}", names[0], names[1], names[2], a));
    r.set("command", "structconst");
    r.set("classes", json!(names));
    r.set("alpha", alpha.to_string());
    r.set("a", a.to_string());
    Ok((r, 0))
}

pub fn permgroup(path: &Path, cap: usize, action: GroupAction) -> anyhow::Result<(Report, u8)> {
    let group = load_group(path, cap)?;
    let names = group.class_names();
    let mut r = Report::default();
    r.set("command", "permgroup");
    r.set("order", group.order());
    r.set("classes", names.len());
    match action {
        GroupAction::Classes => {
            r.line(format!("order {}, {} classes", group.order(), names.len()));
            r.line(format!("{:<5} {:>5} {:>11} {:>6}  representative", "class", "order", "centralizer", "size"));
            let mut rows = Vec::new();
            for (name, c) in names.iter().zip(group.conjugacy_classes()) {
                r.line(format!(
                    "{:<5} {:>5} {:>11} {:>6}  {}",
                    name, c.element_order, c.centralizer_order, c.size, c.representative
                ));
                rows.push(json!({
                    "name": name,
                    "element_order": c.element_order,
                    "centralizer_order": c.centralizer_order,
                    "size": c.size,
                    "representative": c.representative.to_string(),
                }));
            }
            r.set("class_list", rows);
        }
        GroupAction::Chartable => {
            let table = group.dixon_character_table().context("computing the character table")?;
            let doc = table.to_document();
            r.line(doc.trim_end());
            r.set("valid", table.validate_orthogonality().is_valid());
            r.file("chartable.txt".into(), doc);
        }
        GroupAction::Structconst { x, y, z } => {
            let find = |n: &str| {
                names
                    .iter()
                    .position(|c| c == n)
                    .ok_or_else(|| chartab::Error::UnknownLabel(format!("class `{}`", n)))
            };
            let (a, b, c) = (find(&x)?, find(&y)?, find(&z)?);
            let count = group.structure_constant_bruteforce(a, b, c);
            r.line(count.to_string());
            r.set("structure_constant", count);
        }
    }
    Ok((r, 0))
}

pub fn frobenius(path: &Path, m: u64, generators: bool) -> anyhow::Result<(Report, u8)> {
    anyhow::ensure!(m > 0, chartab::Error::Structure("m must be positive".into()));
    let (order, count) = if generators {
        let g = load_group(path, chartab::permgroup::DEFAULT_CAP)?;
        (g.order(), g.count_mth_roots_of_unity(m))
    } else {
        let t = CharacterTable::load(path)?;
        (t.group_order(), t.frobenius_count(m))
    };
    let g = m.gcd(&order);
    let divisible = count % g == 0;
    let mut r = Report::default();
    r.line(format!("#{{x : x^{} = 1}} = {}", m, count));
    r.line(format!(
        "gcd({}, |G|) = {} {} the count",
        m,
        g,
        if divisible { "divides" } else { "does NOT divide" }
    ));
    r.set("command", "frobenius");
    r.set("m", m);
    r.set("group_order", order);
    r.set("count", count);
    r.set("gcd", g);
    r.set("divisible", divisible);
    Ok((r, if divisible { 0 } else { 1 }))
}

use std::path::Path;

use chartab::blocks::{run as run_blocks, CandidateK, ColumnMethodInstance, Status};
use serde_json::json;

use crate::output::{int_rows, Report};

fn status_text(s: &Status) -> String {
    match s {
        Status::Pending => "pending".into(),
        Status::Surviving => "surviving".into(),
        Status::Rejected(why) => format!("rejected ({})", why),
    }
}

fn status_key(s: &Status) -> &'static str {
    match s {
        Status::Pending => "pending",
        Status::Surviving => "surviving",
        Status::Rejected(_) => "rejected",
    }
}

fn candidate_text(i: usize, c: &CandidateK, columns: &[String], reference: Option<&str>) -> String {
    let mut r = Report::default();
    r.heading(&format!("candidate {} ({} rows)", i + 1, c.rows()));
    if let Some(name) = reference {
        r.line(format!("  reference: {}", name));
    }
    r.line("  K:");
    r.block(int_rows(&c.k));
    r.line(format!("  L on {}:", columns.join(" ")));
    r.block(c.l.to_string());
    for (name, verdict) in &c.verdicts {
        r.line(format!(
            "  {}: {}",
            name,
            verdict.as_deref().unwrap_or("passes")
        ));
    }
    r.line(format!("  status: {}", status_text(&c.status)));
    r.text().to_string()
}

pub fn run(config: &Path, filters: bool) -> anyhow::Result<(Report, u8)> {
    let inst = ColumnMethodInstance::load(config)?;
    let rep = run_blocks(&inst, filters)?;
    let columns = inst.column_names();
    let mut r = Report::default();
    let mut code = 0u8;

    r.heading("instance");
    r.line(format!("  columns {}", columns.join(" ")));
    for a in &inst.assumptions {
        r.line(format!("  assume: {}", a));
    }
    r.line(format!(
        "  N·M integral: {}",
        if rep.integer_transfer { "yes" } else { "no" }
    ));

    r.heading("candidates");
    r.line(format!(
        "  {} canonical candidates ({} when zero rows are allowed)",
        rep.candidates.len(),
        rep.count_with_zero_rows
    ));
    let reference_of = |i: usize| {
        rep.golden
            .iter()
            .find(|g| g.candidate == Some(i))
            .map(|g| g.name.as_str())
    };
    for (i, c) in rep.candidates.iter().enumerate() {
        r.line(format!(
            "  {:>2}. rows {:>2}  {:<10} {}",
            i + 1,
            c.rows(),
            reference_of(i).unwrap_or("-"),
            status_text(&c.status)
        ));
        r.file(
            format!("candidate_{:02}.txt", i + 1),
            candidate_text(i, c, &columns, reference_of(i)),
        );
    }
    let rejected = rep.candidates.iter().filter(|c| c.status.is_rejected()).count();
    let survivors = rep.survivors();
    if filters {
        r.line(format!(
            "  {} rejected, {} surviving",
            rejected,
            survivors.len()
        ));
    }

    if let Some(expected) = inst.expected_candidates {
        if expected != rep.candidates.len() {
            r.line(format!(
                "  count differs from the reference: {} expected, {} found",
                expected,
                rep.candidates.len()
            ));
            code = 1;
        }
    }
    if !inst.golden.is_empty() {
        r.heading("reference matrices");
        for g in &rep.golden {
            let at = g
                .candidate
                .map(|i| format!("candidate {}", i + 1))
                .unwrap_or_else(|| "NOT FOUND".into());
            r.line(format!(
                "  {:<12} -> {}{}{}",
                g.name,
                at,
                if g.l_consistent { "" } else { ", stated L inconsistent" },
                if g.gram_consistent { "" } else { ", Gram mismatch" }
            ));
        }
        if !rep.extras.is_empty() {
            r.line(format!("  {} candidates match no reference matrix:", rep.extras.len()));
            for &i in &rep.extras {
                r.line(format!("  candidate {} ({}):", i + 1, status_text(&rep.candidates[i].status)));
                r.block(int_rows(&rep.candidates[i].k));
            }
        }
        if !rep.matches_reference() {
            code = 1;
        }
    }

    if survivors.len() == 1 {
        let s = &rep.candidates[survivors[0]];
        r.heading(&format!("surviving candidate {}", survivors[0] + 1));
        r.line(format!("  L on {}:", columns.join(" ")));
        r.block(s.l.to_string());
    }
    if !rep.congruences.is_empty() {
        r.heading("degree congruences");
        for c in &rep.congruences {
            r.line(format!("  {}", c));
        }
    }
    if !rep.exclusions.is_empty() || !rep.kernels.is_empty() {
        r.heading("excluded degrees");
        for e in &rep.exclusions {
            r.line(format!("  suppose {} = {}:", e.row, e.value));
            for s in &e.steps {
                r.line(format!("    {}  ⇒  {}", s.rendered, s.constraint));
            }
            r.line(format!("    {}", e.conclusion));
        }
        for k in &rep.kernels {
            r.line(format!("  suppose {} = {}: {}", k.row, k.value, k.conclusion));
        }
    }

    let mut verdict = "no conclusion";
    if let Some(e) = &rep.endgame {
        r.heading("order endgame");
        r.line(format!("  {}", e.equation));
        for t in &e.terms {
            match t.degree.or(t.minimiser) {
                Some(d) if t.row != "1" => r.line(format!(
                    "    {}/{} ≥ {} (at {} = {})",
                    t.weight, t.row, t.minimum, t.row, d
                )),
                _ => r.line(format!("    constant term {}", t.minimum)),
            }
        }
        r.line(format!("  lower bound on the left-hand side: {}", e.lower_bound));
        if let Some(b) = e.order_bound {
            r.line(format!("  ⇒ |G| ≤ {}", b));
        }
        r.line(format!("  {}", e.frobenius));
        r.line(format!("  admissible orders: {:?}", e.frobenius_orders));
        for (order, sq) in &e.square_checks {
            r.line(format!("  |G| = {} but the squared degrees already sum to {}", order, sq));
        }
        r.line(format!("  {}", e.conclusion));
        verdict = if e.contradiction { "contradiction" } else { "no contradiction" };
        if !e.contradiction {
            code = 1;
        }
    } else if filters {
        code = 1;
    }
    r.heading("verdict");
    r.line(format!("  {}", verdict));

    r.set("command", "blocksearch");
    r.set("filters", filters);
    r.set("integer_transfer", rep.integer_transfer);
    r.set("candidate_count", rep.candidates.len());
    r.set("count_with_zero_rows", rep.count_with_zero_rows);
    r.set(
        "candidates",
        rep.candidates
            .iter()
            .enumerate()
            .map(|(i, c)| {
                json!({
                    "rows": c.rows(),
                    "k": c.k,
                    "status": status_key(&c.status),
                    "reason": match &c.status { Status::Rejected(w) => Some(w.clone()), _ => None },
                    "reference": reference_of(i),
                })
            })
            .collect::<Vec<_>>(),
    );
    r.set("rejected", rejected);
    r.set("survivors", json!(survivors));
    r.set("expected_candidates", json!(inst.expected_candidates));
    r.set("references", json!(rep.golden));
    r.set("extras", json!(rep.extras));
    r.set("congruences", json!(rep.congruences));
    r.set("exclusions", json!(rep.exclusions));
    r.set("kernels", json!(rep.kernels));
    r.set("endgame", json!(rep.endgame));
    r.set("verdict", verdict);
    Ok((r, code))
}

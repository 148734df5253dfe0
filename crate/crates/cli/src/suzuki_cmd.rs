use std::path::Path;

use chartab::suzuki::{run_pipeline, EliminationReport, FamilyOutcome, PipelineConfig};
use serde_json::json;

use crate::output::{int_rows, Report};

fn elimination_text(rep: &EliminationReport) -> String {
    let mut out = Vec::new();
    for b in &rep.branches {
        let signs: Vec<String> = b.signs.iter().map(|(n, v)| format!("{} = {}", n, v)).collect();
        out.push(format!("branch {}:", if signs.is_empty() { "-".to_string() } else { signs.join(", ") }));
        if !b.relations_consistent {
            out.push(format!("  degree relations inconsistent: {}", b.note));
            continue;
        }
        for s in &b.root_steps {
            out.push(format!("  {}  ⇒  {}", s.equation, s.rendered));
            out.push(format!("    positive integer roots {} ∈ {:?}", s.variable, s.roots));
        }
        if b.outcomes.is_empty() && !b.note.is_empty() {
            out.push(format!("  {}", b.note));
        }
        for o in &b.outcomes {
            let degs: Vec<String> = o.degrees.iter().map(|(n, v)| format!("{} = {}", n, v)).collect();
            out.push(format!("  with {}:", degs.join(", ")));
            out.push(format!("    {}", o.order.equation));
            out.push(format!("    {}", o.order.order_formula));
            if !o.order.bound_rendered.is_empty() {
                out.push(format!("    bound: {}", o.order.bound_rendered));
            }
            out.push(format!(
                "    {} {}",
                if o.order.eliminated { "contradiction:" } else { "open:" },
                o.order.reason
            ));
        }
        out.push(format!("  branch {}", if b.eliminated { "eliminated" } else { "NOT eliminated" }));
    }
    out.join("\n")
}

pub fn run(config: &Path, ratio_override: Option<i64>) -> anyhow::Result<(Report, u8)> {
    let mut cfg = PipelineConfig::load(config)?;
    if let Some(b) = ratio_override {
        cfg.elimination.order_ratio_bound = b;
    }
    let rep = run_pipeline(&cfg)?;
    let names = cfg.set.names();
    let mut r = Report::default();

    r.heading("special classes");
    r.line(format!("  {}", names.join(" ")));
    for a in &cfg.set.assumptions {
        r.line(format!("  assume: {}", a));
    }

    r.heading("vanishing basis (psi coefficients)");
    r.line(format!("  dimension {}", rep.basis.dimension()));
    r.line("  canonical:");
    r.block(rep.canonical.coefficients.to_string());
    if let Some(x) = &rep.change_of_basis {
        r.line("  supplied:");
        r.block(rep.basis.coefficients.to_string());
        r.line("  supplied = X · canonical with X =");
        r.block(x.to_string());
    }

    r.heading("gamma expansion C");
    r.block(rep.c.to_string());
    r.heading("induced Gram matrix");
    r.block(int_rows(&rep.gram));
    r.line(format!("  trivial column {:?}", rep.trivial));

    r.heading("decompositions");
    r.line(format!("  {} integer decompositions", rep.decompositions.len()));
    r.line(format!("  {} candidate families", rep.families.len()));

    let mut fams = Vec::new();
    for (i, ((fam, table), outcome)) in rep
        .families
        .iter()
        .zip(&rep.partial_tables)
        .zip(&rep.outcomes)
        .enumerate()
    {
        let mut f = Report::default();
        f.heading(&format!("candidate {}", i + 1));
        f.line(format!("  members {:?}, private norm {}", fam.members, fam.private_norm));
        f.block(fam.describe());
        let cols = fam.column_names();
        let params = fam.param_names();
        for rel in &fam.relations {
            f.line(format!("  relation: {}", rel.render(&cols, &params)));
        }
        f.line("  partial table:");
        f.block(table.to_string());
        let (verdict, detail) = match outcome {
            FamilyOutcome::Eliminated(e) => ("eliminated", Some(e)),
            FamilyOutcome::Surviving(e) => ("surviving", Some(e)),
            FamilyOutcome::Underdetermined(m) => {
                f.line(format!("  underdetermined: {}", m));
                ("underdetermined", None)
            }
        };
        if let Some(e) = detail {
            f.block(elimination_text(e));
            fams.push(json!({
                "members": fam.members,
                "shared_columns": fam.shared,
                "private_norm": fam.private_norm,
                "relations": fam.relations.iter().map(|x| x.render(&cols, &params)).collect::<Vec<_>>(),
                "roots": e.root_pairs(),
                "outcome": verdict,
                "elimination": e,
            }));
        } else {
            fams.push(json!({
                "members": fam.members,
                "shared_columns": fam.shared,
                "private_norm": fam.private_norm,
                "outcome": verdict,
            }));
        }
        f.line(format!("  verdict: {}", verdict));
        r.line(f.text().trim_end());
        r.file(format!("candidate_{:02}.txt", i + 1), f.text().to_string());
    }

    let all = rep.all_eliminated();
    r.heading("verdict");
    if all {
        r.line("  all candidates eliminated ⇒ G = H");
    } else {
        let open = rep.outcomes.iter().filter(|o| !o.is_eliminated()).count();
        r.line(format!("  {} of {} candidates NOT eliminated; no contradiction", open, rep.outcomes.len()));
    }

    r.set("command", "suzuki");
    r.set("special_classes", names);
    r.set("dimension", rep.basis.dimension());
    r.set("c", rep.c.to_rows().iter().map(|row| row.iter().map(ToString::to_string).collect::<Vec<_>>()).collect::<Vec<_>>());
    r.set("gram", json!(rep.gram));
    r.set("trivial", json!(rep.trivial));
    r.set("decompositions", rep.decompositions.len());
    r.set("order_ratio_bound", cfg.elimination.order_ratio_bound);
    r.set("families", fams);
    r.set("all_eliminated", all);
    Ok((r, if all { 0 } else { 1 }))
}

//! Human-readable and CSV renderings of reports. JSON goes through serde.

use std::fmt::Write;

use mcsdetect_core::corpus::TableDiff;
use mcsdetect_core::report::AnalysisReport;

fn join_pairs(pairs: &[[u32; 2]]) -> String {
    if pairs.is_empty() {
        return "-".to_string();
    }
    pairs
        .iter()
        .map(|[m, n]| format!("{m},{n}"))
        .collect::<Vec<_>>()
        .join(" ")
}

fn join_labels(labels: &[String]) -> String {
    if labels.is_empty() {
        "-".to_string()
    } else {
        labels.join(" ")
    }
}

fn opt_f64(x: Option<f64>) -> String {
    x.map(|v| format!("{v:e}")).unwrap_or_default()
}

fn f_witness(r: &AnalysisReport) -> String {
    let w = r.f_equivalence_witness;
    if w.found {
        format!("alpha={} beta={}", w.alpha, w.beta)
    } else {
        "none".to_string()
    }
}

/// `(field, value)` pairs in schema order, nested fields dotted.
fn flat_fields(r: &AnalysisReport) -> Vec<(&'static str, String)> {
    let mut f = vec![
        ("report_version", r.report_version.to_string()),
        ("version", r.version.clone()),
        ("input_set", join_pairs(&r.input_set)),
        ("d", r.d.to_string()),
        ("delta_set", join_pairs(&r.delta_set)),
        ("discriminant_set", join_pairs(&r.discriminant_set)),
        ("detector_set", join_labels(&r.detector_set)),
        ("f_equivalence_witness", f_witness(r)),
        ("verdict.status", format!("{:?}", r.verdict.status)),
        ("verdict.reason", format!("{:?}", r.verdict.reason)),
        ("verdict.witness", r.verdict.witness.clone().unwrap_or_default()),
    ];
    if let Some(n) = &r.numeric {
        f.push(("numeric.seed", n.seed.to_string()));
        f.push(("numeric.witness_source", n.witness_source.clone().unwrap_or_default()));
        f.push(("numeric.eigenbasis_residual", opt_f64(n.eigenbasis_residual)));
        f.push(("numeric.protocol_residual", opt_f64(n.protocol_residual)));
        if let Some(s) = &n.feasibility {
            f.push(("numeric.feasibility.best_residual", format!("{:e}", s.best_residual)));
            f.push(("numeric.feasibility.best_restart", s.best_restart.to_string()));
            f.push(("numeric.feasibility.restarts", s.restarts.to_string()));
            f.push((
                "numeric.feasibility.iterations_per_restart",
                s.iterations_per_restart.to_string(),
            ));
            f.push(("numeric.feasibility.seed", s.seed.to_string()));
            f.push(("numeric.feasibility.tolerance", format!("{:e}", s.tolerance)));
            f.push(("numeric.feasibility.outcome", format!("{:?}", s.outcome)));
        }
    }
    f
}

pub fn csv(r: &AnalysisReport) -> String {
    let fields = flat_fields(r);
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(fields.iter().map(|(k, _)| *k)).expect("in-memory write");
    w.write_record(fields.iter().map(|(_, v)| v.as_str())).expect("in-memory write");
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
}

pub fn text(r: &AnalysisReport) -> String {
    let mut out = String::new();
    let set = r
        .input_set
        .iter()
        .map(|[m, n]| format!("{m},{n}"))
        .collect::<Vec<_>>()
        .join(";");
    let _ = writeln!(out, "set                {{{set}}}  d={}", r.d);
    let _ = writeln!(out, "delta_set          {}", join_pairs(&r.delta_set));
    let _ = writeln!(out, "discriminant_set   {}", join_pairs(&r.discriminant_set));
    let _ = writeln!(out, "detector_set       {}", join_labels(&r.detector_set));
    let _ = writeln!(out, "f_equivalence      {}", f_witness(r));
    let _ = write!(out, "verdict            {:?} ({:?}", r.verdict.status, r.verdict.reason);
    if let Some(w) = &r.verdict.witness {
        let _ = write!(out, ", witness {w}");
    }
    let _ = writeln!(out, ")");
    if let Some(n) = &r.numeric {
        let _ = writeln!(out, "numeric            seed={}", n.seed);
        if let Some(src) = &n.witness_source {
            let _ = writeln!(out, "  witness_source       {src}");
        } else if n.feasibility.is_none() {
            let _ = writeln!(out, "  witness_source       none (verdict has no constructive witness)");
        }
        if let Some(x) = n.eigenbasis_residual {
            let _ = writeln!(out, "  eigenbasis_residual  {x:e}");
        }
        if let Some(x) = n.protocol_residual {
            let _ = writeln!(out, "  protocol_residual    {x:e}");
        }
        if let Some(s) = &n.feasibility {
            let _ = writeln!(
                out,
                "  feasibility          best_residual={:e} restart={}/{} iters={} tol={:e}",
                s.best_residual, s.best_restart, s.restarts, s.iterations_per_restart, s.tolerance
            );
            let _ = writeln!(out, "  outcome              {}", s.outcome);
        }
    }
    let _ = writeln!(out, "version            {} (report v{})", r.version, r.report_version);
    out
}

pub fn table_diff(diff: &TableDiff) -> String {
    let mut out = format!(
        "Table {}: {}/{} cells match",
        diff.id,
        diff.matched(),
        diff.total
    );
    if !diff.errata.is_empty() {
        let _ = write!(out, " ({} per errata)", diff.errata.len());
    }
    out.push('\n');
    for e in &diff.errata {
        let _ = writeln!(
            out,
            "  erratum  [{}|{}] printed {} checked as {}",
            e.row, e.col, e.expected, e.actual
        );
    }
    for m in &diff.mismatches {
        let _ = writeln!(
            out,
            "  MISMATCH [{}|{}] expected {} got {}",
            m.row, m.col, m.expected, m.actual
        );
    }
    out
}

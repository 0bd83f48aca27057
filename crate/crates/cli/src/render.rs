//! Projections of the structured report: aligned text and CSV.

use crate::report::LatticeReport;

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "NO"
    }
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(|| "-".into(), T::to_string)
}

fn flag(f: &Option<bool>) -> String {
    f.map_or_else(|| "-".into(), |b| yes_no(b).into())
}

pub fn table(report: &LatticeReport) -> String {
    let mut rows: Vec<(String, String, String, String)> = Vec::new();
    let mut push = |name: &str, computed: String, expected: String, verdict: String| {
        rows.push((name.into(), computed, expected, verdict));
    };
    let e = &report.expected;
    let f = &report.match_flags;
    push(
        "rank",
        report.rank.to_string(),
        e.rank.to_string(),
        yes_no(f.rank).into(),
    );
    push(
        "vol_sq",
        report.vol_sq.clone(),
        e.vol_sq.clone(),
        yes_no(f.vol_sq).into(),
    );
    push(
        "class_invariants",
        report.class_invariants.join(";"),
        e.class_invariants.join(";"),
        yes_no(f.class_invariants).into(),
    );
    push(
        "min_norm_sq",
        report.min_norm_sq.to_string(),
        e.min_norm_sq.to_string(),
        yes_no(f.min_norm_sq).into(),
    );
    push(
        "kissing",
        report.kissing.to_string(),
        opt(&e.kissing),
        flag(&f.kissing),
    );
    push(
        "second_min_sq",
        opt(&report.second_min_sq),
        opt(&e.second_min_sq),
        flag(&f.second_min_sq),
    );
    push(
        "second_count",
        opt(&report.second_count),
        "-".into(),
        "-".into(),
    );
    push(
        "third_min_sq",
        opt(&report.third_min_sq),
        "-".into(),
        "-".into(),
    );
    push(
        "well_rounded",
        opt(&report.well_rounded),
        e.well_rounded.to_string(),
        flag(&f.well_rounded),
    );
    if let Some(found) = &report.minimal_vectors {
        push(
            "minimal_vectors",
            format!("{} captured", found.len()),
            "the 6 side-sum differences".into(),
            flag(&f.minimal_vectors),
        );
    }
    push(
        "paths_agree",
        opt(&report.paths_agree),
        "-".into(),
        "-".into(),
    );

    let name_w = rows.iter().map(|r| r.0.len()).max().unwrap_or(0);
    let comp_w = rows.iter().map(|r| r.1.len()).max().unwrap_or(0).max(8);
    let exp_w = rows.iter().map(|r| r.2.len()).max().unwrap_or(0).max(8);
    let mut out = format!(
        "lattice report: n = {} (paths: {}, bound_sq: {})\n",
        report.n,
        match report.paths_used {
            crate::report::PathsUsed::Enumeration => "enumeration",
            crate::report::PathsUsed::Coset => "coset",
            crate::report::PathsUsed::Both => "both",
        },
        report.bound_sq
    );
    out.push_str(&format!(
        "  {:<name_w$}  {:<comp_w$}  {:<exp_w$}  {}\n",
        "parameter", "computed", "expected", "match"
    ));
    for (name, computed, expected, verdict) in &rows {
        out.push_str(&format!(
            "  {name:<name_w$}  {computed:<comp_w$}  {expected:<exp_w$}  {verdict}\n"
        ));
    }
    let t = &report.timings_ms;
    out.push_str(&format!(
        "  timings_ms: build={} linalg={} enumeration={} coset={}\n",
        t.build_ms,
        t.linalg_ms,
        opt(&t.enumeration_ms),
        opt(&t.coset_ms),
    ));
    out
}

pub const CSV_HEADER: &str = "n,rank,vol_sq,class_invariants,min_norm_sq,kissing,\
second_min_sq,second_count,third_min_sq,well_rounded,paths,paths_agree,all_match";

pub fn csv_row(report: &LatticeReport) -> String {
    format!(
        "{},{},{},{},{},{},{},{},{},{},{},{},{}",
        report.n,
        report.rank,
        report.vol_sq,
        report.class_invariants.join(";"),
        report.min_norm_sq,
        report.kissing,
        opt(&report.second_min_sq),
        opt(&report.second_count),
        opt(&report.third_min_sq),
        opt(&report.well_rounded),
        match report.paths_used {
            crate::report::PathsUsed::Enumeration => "enumeration",
            crate::report::PathsUsed::Coset => "coset",
            crate::report::PathsUsed::Both => "both",
        },
        opt(&report.paths_agree),
        report.match_flags.all_match() && report.internally_consistent(),
    )
}

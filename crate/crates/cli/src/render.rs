//! Plain-text rendering of reports.

use std::fmt::Write;

use nmsize::io::FiltersDoc;
use nmsize::{CheckReport, CorrespondenceReport, SizeSystem, Subset, Universe};

pub fn set(labels: &[String]) -> String {
    format!("{{{}}}", labels.join(","))
}

pub fn report(r: &CheckReport) -> String {
    let mut out = String::new();
    let verdict = if r.holds { "holds" } else { "fails" };
    let _ = writeln!(out, "{:<16} {verdict:<6} instances {}", r.condition, r.instances_checked);
    if let Some(w) = &r.witness {
        let parts: Vec<String> = w.iter().map(|e| format!("{}={}", e.name, set(&e.set))).collect();
        let _ = writeln!(out, "  witness {}", parts.join(" "));
    }
    for n in &r.notes {
        let _ = writeln!(out, "  note {n}");
    }
    out
}

pub fn system(s: &SizeSystem) -> String {
    let mut out = String::new();
    let u = s.universe();
    let _ = writeln!(out, "system {} on {} ({} domain sets)", s.name(), set(u.labels()), s.domain().len());
    for (x, fam) in s.ideal_listing() {
        let _ = writeln!(out, "  I({}) = {}", u.key(&x), family(u, &fam));
    }
    out
}

pub fn family(u: &Universe, fam: &[Subset]) -> String {
    let parts: Vec<String> = fam.iter().map(|a| u.show(a)).collect();
    format!("{{{}}}", parts.join(", "))
}

pub fn correspondence(r: &CorrespondenceReport, label: &str) -> String {
    let mut out = String::new();
    let verdict = match (r.holds, r.non_implication_confirmed) {
        (true, _) => "holds",
        (false, true) => "fails (non-implication confirmed)",
        (false, false) => "fails",
    };
    let _ = writeln!(out, "row {} {} {label}", r.row, r.direction);
    let _ = writeln!(
        out,
        "  {verdict}, {} systems checked up to size {}, {} non-principal skipped",
        r.systems_checked, r.universe_max, r.skipped_non_principal
    );
    if let Some(w) = &r.witness {
        let u = w.system.universe();
        for (x, fx) in w.mu.choice_listing() {
            if x != fx {
                let _ = writeln!(out, "  f({}) = {}", u.key(&x), u.show(&fx));
            }
        }
        let _ = writeln!(out, "  filters {}", serde_json::to_string(&FiltersDoc(&w.system)).expect("serializable"));
        for f in &w.failing {
            for line in report(f).lines() {
                let _ = writeln!(out, "  {line}");
            }
        }
    }
    for n in &r.notes {
        let _ = writeln!(out, "  note {n}");
    }
    out
}

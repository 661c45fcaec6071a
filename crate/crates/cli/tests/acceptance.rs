//! Acceptance criteria; one line per criterion.

use std::time::{Duration, Instant};

use nmsize::io::system_to_json;
use nmsize::{
    enumerate_mus, enumerate_systems, verify_correspondence, verify_implication, verify_two_small, with_parallelism,
    Condition, Direction, Mode, PropertyId, RuleId, SearchSpec, SizeSystem,
};
use nmsize_cli::fixtures::{evaluate, lookup};
use nmsize_cli::run_from;

struct Outcome {
    pass: bool,
    /// Deterministic record compared across parallelism degrees.
    record: String,
    detail: String,
}

fn fixtures(ids: &[&str]) -> Outcome {
    let mut pass = true;
    let mut record = String::new();
    let mut lines = 0;
    for id in ids {
        let f = lookup(id).unwrap_or_else(|| panic!("fixture {id}"));
        let got = evaluate(f).expect("fixture runs");
        pass &= got.iter().all(|l| l.ok);
        lines += got.len();
        let out = run_from(["nmsize", "repro", id, "--json"]);
        pass &= out.code == 0;
        record.push_str(&out.stdout);
    }
    Outcome { pass, record, detail: format!("{} fixtures, {lines} verdicts", ids.len()) }
}

fn monotone_systems() -> Vec<SizeSystem> {
    (1..=3).flat_map(|n| enumerate_systems(&SearchSpec::new(n, Mode::Count)).expect("in range")).collect()
}

fn implications(claims: &[(&[&str], &str)]) -> Outcome {
    let mut pass = true;
    let mut record = String::new();
    let mut checked = 0;
    for (req, target) in claims {
        let spec = req
            .iter()
            .fold(SearchSpec::new(3, Mode::VerifyImplication), |s, r| s.require(r.parse().expect("name")))
            .target(target.parse().expect("name"));
        let o = verify_implication(&spec).expect("in range");
        pass &= o.report.holds;
        checked += o.report.instances_checked;
        record.push_str(&serde_json::to_string(&o.report).expect("serializable"));
        record.push('\n');
    }
    Outcome {
        pass,
        record,
        detail: format!("{} implications, {checked} premise systems, 0 violations expected", claims.len()),
    }
}

fn agreement(conds: &[Condition]) -> Outcome {
    let systems = monotone_systems();
    let mut disagreements = 0;
    let mut record = String::new();
    for s in &systems {
        let v: Vec<bool> = conds.iter().map(|c| c.holds(s).expect("full domain")).collect();
        if v.iter().any(|&h| h != v[0]) {
            disagreements += 1;
            record.push_str(&system_to_json(s));
        }
    }
    let names: Vec<String> = conds.iter().map(|c| c.to_string()).collect();
    record.push_str(&format!("{} {disagreements}\n", systems.len()));
    Outcome {
        pass: disagreements == 0,
        record,
        detail: format!("{} over {} systems, {disagreements} disagreements", names.join(" = "), systems.len()),
    }
}

fn criterion(n: usize) -> Outcome {
    match n {
        1 => fixtures(&["fact-3.4-1", "fact-3.4-2"]),
        2 => fixtures(&["fact-3.5:2", "fact-3.5:3", "fact-3.5:4"]),
        3 => fixtures(&["ex-3.8:3", "ex-3.8:4"]),
        4 => fixtures(&["ex-3.11-1", "ex-3.11-2", "ex-3.11-3"]),
        5 => implications(&[(&["I:3", "eMI"], "M+n:3"), (&["I:3", "eMI"], "CM:3"), (&["I:3", "eMI"], "OR:3")]),
        6 => agreement(&[Condition::Rule(RuleId::CMOmega), Condition::Property(PropertyId::MPlusOmega(4))]),
        7 => implications(&[
            (&["I-omega", "eMI"], "OR:omega"),
            (&["I-omega", "eMI"], "M+omega:1"),
            (&["I-omega", "eMI"], "M+omega:3"),
            (&["I-omega", "eMF"], "M+omega:2"),
            (&["I-omega", "eMF"], "M+omega:4"),
            (&["I-omega", "eMF"], "CM:omega"),
        ]),
        8 => agreement(&(1..=3).map(|v| Condition::Property(PropertyId::MPlusPlus(v))).collect::<Vec<_>>()),
        9 => agreement(&[Condition::Rule(RuleId::RatM), Condition::Property(PropertyId::MPlusPlus(1))]),
        10 => correspondence(),
        11 => {
            let o = verify_two_small(4).expect("in range");
            let record = serde_json::to_string(&o.report).expect("serializable");
            let families: u128 = o.families.iter().sum();
            Outcome {
                pass: o.report.holds,
                record,
                detail: format!("{families} families over sizes 1..=4, {} premise cases", o.report.instances_checked),
            }
        }
        12 => {
            let mut total = 0;
            let mut bad = 0;
            for n in 1..=3 {
                for mu in enumerate_mus(n).expect("in range") {
                    total += 1;
                    let s = SizeSystem::from_mu(&mu);
                    if s.principal_mu().as_ref() != Ok(&mu) {
                        bad += 1;
                    }
                }
            }
            Outcome {
                pass: bad == 0 && total == 4114,
                record: format!("{total} {bad}"),
                detail: format!("{total} choice functions, {bad} mismatches"),
            }
        }
        _ => unreachable!(),
    }
}

fn correspondence() -> Outcome {
    let mut pass = true;
    let mut record = String::new();
    let mut systems = 0;
    for row in 1..=10 {
        for dir in [Direction::Forward, Direction::Backward] {
            let r = verify_correspondence(row, dir, 3).expect("in range");
            let negative = row >= 8 && dir == Direction::Backward;
            pass &= if negative { !r.holds && r.non_implication_confirmed } else { r.holds };
            systems += r.systems_checked;
            record.push_str(&serde_json::to_string(&r).expect("serializable"));
            record.push('\n');
        }
    }
    let out = run_from(["nmsize", "repro", "prop-4.1:8:bwd"]);
    pass &= out.code == 0;
    record.push_str(&out.stdout);
    Outcome { pass, record, detail: format!("20 row directions, {systems} systems or choice functions checked") }
}

const LIMITS: [(&str, u64); 12] = [
    ("independence fixtures", 1),
    ("level separation fixtures", 1),
    ("finite rule fixtures", 1),
    ("omega version vectors", 1),
    ("level 3 consequences", 60),
    ("CM:omega = M+omega:4", 60),
    ("union closure consequences", 60),
    ("robustness versions agree", 60),
    ("RatM = M++:1", 60),
    ("size and choice correspondence", 300),
    ("two small sets reduction", 300),
    ("choice round trip", 10),
];

fn main() {
    let mut failed = 0;
    let mut records = Vec::new();
    for (i, (name, limit)) in LIMITS.iter().enumerate() {
        let n = i + 1;
        let start = Instant::now();
        let o = criterion(n);
        let took = start.elapsed();
        let ok = o.pass && took < Duration::from_secs(*limit);
        failed += usize::from(!ok);
        println!(
            "criterion {n:>2} {} {name}: {} ({:.3}s, limit {limit}s)",
            if ok { "PASS" } else { "FAIL" },
            o.detail,
            took.as_secs_f64()
        );
        records.push(o.record);
    }
    let start = Instant::now();
    let jobs = std::thread::available_parallelism().map_or(4, |n| n.get()).max(4);
    let serial: Vec<String> = with_parallelism(1, || (1..=12).map(|n| criterion(n).record).collect());
    let parallel: Vec<String> = with_parallelism(jobs, || (1..=12).map(|n| criterion(n).record).collect());
    let differing: Vec<usize> =
        (0..12).filter(|&i| serial[i] != records[i] || parallel[i] != records[i]).map(|i| i + 1).collect();
    let ok = differing.is_empty();
    failed += usize::from(!ok);
    println!(
        "criterion 13 {} determinism: jobs 1 and {jobs} reproduce criteria 1-12 byte for byte, differing {:?} ({:.3}s)",
        if ok { "PASS" } else { "FAIL" },
        differing,
        start.elapsed().as_secs_f64()
    );
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}

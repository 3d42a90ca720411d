//! Acceptance criteria: one PASS/FAIL line each, all exact.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use llg_core::library;
use llg_core::verify::{self, Section, JETS_PER_ALGEBRA};

const SEED: u64 = 42;

const IDENTITIES: &[&str] = &[
    "tilde-minus-hat",
    "tilde-antisymmetrized",
    "hat-tilde-bracket",
    "symmetric-parts-agree",
    "parallel-bracket",
    "parallel-bracket-general",
    "cyclic-nabla-torsion",
    "hat-curvature-from-nabla-torsion",
    "cyclic-nabla-torsion-coordinates",
    "hat-minus-tilde-curvature",
    "bianchi",
    "hat-curvature-single-term",
    "commutator",
];

struct Outcome {
    ok: bool,
    detail: String,
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let t = Instant::now();
    let v = f();
    (v, t.elapsed())
}

fn cases(s: &Section, check: &str) -> usize {
    s.check(check).map_or(0, |c| c.cases)
}

fn failures(s: &Section) -> String {
    s.checks
        .iter()
        .filter(|c| !c.passed)
        .map(|c| format!("{}: {:?}", c.name, c.failures))
        .collect::<Vec<_>>()
        .join("; ")
}

fn section_outcome(s: &Section, extra: bool, detail: String) -> Outcome {
    let ok = s.passed && extra;
    Outcome {
        ok,
        detail: if s.passed { detail } else { format!("{detail}; {}", failures(s)) },
    }
}

fn identity_suite() -> Outcome {
    let (s, time) = timed(|| verify::identities(SEED));
    let heis = library::frame("heisenberg-3").unwrap();
    let names: Vec<String> = heis.connection().identity_suite(Some(&heis)).checks.into_iter().map(|c| c.name).collect();
    let covered = IDENTITIES.iter().all(|n| names.iter().any(|m| m == n));
    let random = cases(&s, "random-connections");
    section_outcome(
        &s,
        covered && random >= 25 && time < Duration::from_secs(30),
        format!("{} identities on heisenberg-3, engel-4 and {random} random connections in {time:.2?}", names.len()),
    )
}

fn frame_flatness() -> Outcome {
    let s = verify::frame_flatness(SEED);
    let lib = cases(&s, "library-frames");
    let random = cases(&s, "random-unimodular-frames");
    section_outcome(&s, random >= 25, format!("R̃ = 0 on {lib} library frames and {random} random unimodular frames"))
}

fn janet() -> Outcome {
    let s = verify::janet(SEED);
    section_outcome(
        &s,
        true,
        format!(
            "d̂∘d̂ = 0 in {} cases (degrees 0–2), comparison formula in {} cases (degrees 1–3)",
            cases(&s, "d-hat-squared"),
            cases(&s, "comparison-formula")
        ),
    )
}

fn cohomology() -> Outcome {
    let (s, time) = timed(|| verify::cohomology_suite(SEED));
    let random = cases(&s, "random-algebras");
    section_outcome(
        &s,
        random >= 20 && time < Duration::from_secs(10),
        format!("examples + {random} random algebras, CE oracle agrees per degree, in {time:.2?}"),
    )
}

fn localization() -> Outcome {
    let s = verify::localization(SEED);
    section_outcome(
        &s,
        true,
        format!(
            "d̂ of invariant jets at p equals D on heisenberg-3 and engel-4 ({} cases)",
            cases(&s, "invariant-jets")
        ),
    )
}

fn classes() -> Outcome {
    let s = verify::classes(SEED);
    let chain = cases(&s, "trace-chain-map");
    section_outcome(
        &s,
        chain >= 20,
        format!("T² = J, even powers vanish, d̂T = 0, trace chain map on {chain} cochains, tr(T¹) = (1,0) on aff1-2"),
    )
}

fn deformations() -> (Outcome, Outcome) {
    let ((logic, diagrams), time) = timed(|| verify::deformations(SEED));
    let per_algebra = logic.stats.iter().filter(|(k, _)| k.ends_with("unfiltered jets")).map(|(_, v)| *v).min().unwrap_or(0);
    let constraint = cases(&logic, "derivative-constraint-iff-derived-annihilation");
    let first = section_outcome(
        &logic,
        per_algebra >= 50 && JETS_PER_ALGEBRA >= 50 && time < Duration::from_secs(60),
        format!("{constraint} jets ({per_algebra} per algebra) in {time:.2?}"),
    );
    let second = section_outcome(
        &diagrams,
        true,
        format!("{} degree checks on constant jets", cases(&diagrams, "constant-jets-commute")),
    );
    (first, second)
}

fn determinism() -> Outcome {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_llg"))
            .args(["verify", "--suite", "all", "--seed", &SEED.to_string()])
            .output()
            .expect("llg runs")
    };
    let (a, b) = (run(), run());
    let ok = a.status.success() && b.status.success() && !a.stdout.is_empty() && a.stdout == b.stdout;
    Outcome {
        ok,
        detail: format!("two runs of `llg verify --suite all --seed {SEED}`: {} bytes, identical: {}", a.stdout.len(), a.stdout == b.stdout),
    }
}

fn main() -> ExitCode {
    let (c7, c8) = deformations();
    let results = [
        ("identity suite", identity_suite()),
        ("frame-derived flatness", frame_flatness()),
        ("Janet property and comparison formula", janet()),
        ("cohomology", cohomology()),
        ("localization consistency", localization()),
        ("characteristic classes", classes()),
        ("deformation logic", c7),
        ("diagram checks", c8),
        ("determinism", determinism()),
    ];
    let mut all = true;
    for (i, (name, o)) in results.iter().enumerate() {
        all &= o.ok;
        println!("{} criterion {}: {name} — {}", if o.ok { "PASS" } else { "FAIL" }, i + 1, o.detail);
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

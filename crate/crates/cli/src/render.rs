//! Plain-text renderings of the reports.

use std::fmt::Write;

use llg_core::char_classes::ClassesReport;
use llg_core::deformation::DeformationReport;
use llg_core::library::ExampleEntry;
use llg_core::parallelism::AnalysisReport;
use llg_core::verify::VerifyReport;
use llg_core::CohomologyReport;

type Sparse = [(Vec<usize>, String)];

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn idx(i: &[usize]) -> String {
    i.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
}

fn components(out: &mut String, label: &str, entries: &Sparse) {
    if entries.is_empty() {
        let _ = writeln!(out, "{label}: 0");
        return;
    }
    let _ = writeln!(out, "{label}:");
    for (i, v) in entries {
        let _ = writeln!(out, "  [{}] = {v}", idx(i));
    }
}

fn inline(entries: &Sparse) -> String {
    if entries.is_empty() {
        return "0".into();
    }
    entries.iter().map(|(i, v)| format!("[{}]={v}", idx(i))).collect::<Vec<_>>().join(" ")
}

pub fn analysis(r: &AnalysisReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "dimension {} at p = ({})", r.n, r.point.join(", "));
    let _ = writeln!(out, "frame-derived: {}", yes(r.frame_derived));
    let _ = writeln!(out, "local Lie group: {}", r.local_lie_group);
    let _ = writeln!(
        out,
        "  R̂ = 0: {}   ∇̃T = 0: {}   R̃ = 0: {}",
        yes(r.verdict.hat_flat),
        yes(r.verdict.nabla_t_zero),
        yes(r.verdict.tilde_flat)
    );
    components(&mut out, "Γ^i_{kj}", &r.gamma);
    components(&mut out, "T^i_{jk}", &r.torsion);
    components(&mut out, "R̃^i_{rj,k}", &r.curvature_tilde);
    components(&mut out, "R̂^i_{rj,k}", &r.curvature_hat);
    components(&mut out, "c^i_{jk} at p (j < k)", &r.structure_constants);
    let _ = writeln!(out, "Jacobi at p: {}", yes(r.jacobi_at_point));
    let _ = writeln!(out, "identities:");
    for c in &r.identities.checks {
        let status = if c.holds { "holds" } else { "FAILS" };
        let _ = writeln!(out, "  {:<36} {status:<6} {}", c.name, c.statement);
    }
    out
}

pub fn cohomology(r: &CohomologyReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "dimension {}, degrees 0..{}", r.n, r.max_degree);
    let _ = writeln!(out, "{:>6} {:>8} {:>6} {:>6} {:>6} {:>8}", "degree", "cochains", "rank", "kernel", "betti", "CE agree");
    for d in &r.degrees {
        let agree = d.equals_ce && d.rank_d == d.ce_rank && d.kernel_dim == d.ce_kernel_dim;
        let _ = writeln!(
            out,
            "{:>6} {:>8} {:>6} {:>6} {:>6} {:>8}",
            d.degree,
            d.cochain_dim,
            d.rank_d,
            d.kernel_dim,
            d.betti,
            yes(agree)
        );
    }
    let _ = writeln!(out, "center {} (H⁰ matches: {})", r.center_dim, yes(r.h0_is_center));
    let _ = writeln!(
        out,
        "derivations {} inner {} (H¹ = Der/Inn: {})",
        r.der_dim,
        r.inn_dim,
        yes(r.h1_is_outer_derivations)
    );
    let _ = writeln!(out, "derived algebra {}", r.derived_dim);
    let _ = writeln!(out, "D∘D = 0: {}", yes(r.d_squared_zero));
    if let Some(e) = r.euler_characteristic {
        let _ = writeln!(out, "Euler characteristic {e}");
    }
    out
}

pub fn classes(r: &ClassesReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "dimension {}, unimodular: {}", r.n, yes(r.unimodular));
    let _ = writeln!(out, "T² = J: {}", yes(r.t2_equals_jacobi_form));
    for e in &r.entries {
        let _ = writeln!(out, "T^{} (degree {}):", e.power, e.degree);
        let _ = writeln!(out, "  cochain at p: {}", inline(&e.cochain));
        let _ = writeln!(out, "  d̂ closed: {}   D closed at p: {}", yes(e.field_closed), yes(e.point_closed));
        let _ = writeln!(out, "  exact: {}", yes(e.exact));
        if let Some(c) = &e.certificate {
            let _ = writeln!(out, "  primitive: {}", inline(c));
        }
        let _ = writeln!(out, "  trace: {}", inline(&e.trace));
    }
    out
}

fn flags(v: &[bool]) -> String {
    v.iter().map(|&b| if b { "✓" } else { "✗" }).collect::<Vec<_>>().join(" ")
}

pub fn deformation(r: &DeformationReport) -> String {
    let mut out = String::new();
    let k = r.order;
    let _ = writeln!(out, "dimension {}, order K = {k}, p = ({})", r.n, r.point.join(", "));
    let _ = writeln!(out, "deformation through order {} of {k} (valid: {})", r.validity.order, yes(r.is_deformation()));
    let _ = writeln!(out, "constant through order {} (constant: {})", r.constancy_order, yes(r.is_constant()));
    let _ = writeln!(out, "derivative constraint per order 1..{k}:");
    let _ = writeln!(out, "  as fields:         {}", flags(&r.validity.constraint_field));
    let _ = writeln!(out, "  at p:              {}", flags(&r.validity.constraint_point));
    let _ = writeln!(out, "  kills [g,g] at p:  {}", flags(&r.validity.derived_annihilated));
    let _ = writeln!(out, "κ (conjugated) vanishes through order {}", r.kappa_conjugated_order);
    for (m, (lit, conj)) in r.kappa_literal.iter().zip(&r.kappa_conjugated).enumerate() {
        let _ = writeln!(out, "  t^{}: conjugated {}   literal {}", m + 1, inline(conj), inline(lit));
    }
    let c = &r.constancy;
    let _ = writeln!(out, "constancy conditions:");
    let _ = writeln!(out, "  constant          {}", yes(c.constant));
    let _ = writeln!(out, "  κ = 0             {}", yes(c.kappa_zero));
    let _ = writeln!(out, "  κ(p) = 0          {}", yes(c.kappa_zero_at_p));
    let _ = writeln!(out, "  dκ/dt = 0         {}", yes(c.dkappa_zero));
    let _ = writeln!(out, "  dκ/dt(p) = 0      {}", yes(c.dkappa_zero_at_p));
    let _ = writeln!(out, "  all agree         {}", yes(c.agree()));
    let _ = writeln!(
        out,
        "dκ/dt parallel: for ∇̃₀ {}, for ∇̃_t {}",
        yes(r.kappa_velocity_parallel_base),
        yes(r.kappa_velocity_parallel_deformed)
    );
    if r.rigidity.perfect {
        match r.rigidity.rejected_at {
            Some(m) => {
                let _ = writeln!(out, "perfect algebra: rejected, F_{m}(p) ≠ 0");
            }
            None => {
                let _ = writeln!(out, "perfect algebra: every velocity vanishes at p");
            }
        }
    }
    let ks = &r.ks;
    if ks.hypothesis_met {
        let _ = writeln!(out, "Kodaira–Spencer cocycle μ = F₁: {}", inline(&ks.mu));
        let _ = writeln!(
            out,
            "  d̂₀μ = 0: {}   ∇̃₀μ = 0: {}   host: {}",
            yes(ks.closed == Some(true)),
            yes(ks.invariant == Some(true)),
            ks.host
        );
        if let Some(class) = &ks.class {
            let _ = writeln!(out, "  class coordinates: [{}] (zero: {})", class.coordinates.join(", "), yes(class.zero));
        }
    } else {
        let _ = writeln!(out, "Kodaira–Spencer: not constant through order 1, no class");
    }
    let diag: Vec<String> = r.diagram.iter().map(|d| format!("degree {} {}", d.degree, yes(d.commutes))).collect();
    let _ = writeln!(out, "pushforward intertwines d̂: {}", diag.join(", "));
    out
}

pub fn verify(r: &VerifyReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "suite {} seed {}", r.suite, r.seed);
    for s in &r.sections {
        let _ = writeln!(out, "{} {}", if s.passed { "PASS" } else { "FAIL" }, s.name);
        for c in &s.checks {
            let _ = writeln!(out, "  {} {} ({} case{})", if c.passed { "pass" } else { "FAIL" }, c.name, c.cases, if c.cases == 1 { "" } else { "s" });
            for f in &c.failures {
                let _ = writeln!(out, "      {f}");
            }
        }
        for (label, count) in &s.stats {
            let _ = writeln!(out, "  · {label}: {count}");
        }
    }
    let _ = writeln!(out, "{}", if r.passed { "all checks passed" } else { "FAILURES" });
    out
}

pub fn examples(list: &[ExampleEntry]) -> String {
    let mut out = String::new();
    for e in list {
        let kind = format!("{:?}", e.kind).to_lowercase();
        let base = e.base.as_ref().map(|b| format!(" (base {b})")).unwrap_or_default();
        let _ = writeln!(out, "{:<28} {:<10} {}{base}", e.name, kind, e.description);
    }
    out
}

//! Acceptance run: ten criteria, one PASS/FAIL line each, non-zero exit on
//! any failure. Time budgets are part of each criterion.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use feigin_core::ar::canonical_structures;
use feigin_core::cartan::RootDatum;
use feigin_core::exec::Exec;
use feigin_core::repfq::RepCategory;
use feigin_core::verify::{self, Report};
use feigin_core::Result;

struct Outcome {
    checked: usize,
    violations: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Self {
            checked: 0,
            violations: Vec::new(),
        }
    }

    fn absorb(&mut self, tag: &str, r: Report) {
        self.checked += r.checked;
        self.violations
            .extend(r.violations.into_iter().map(|v| format!("{tag}: {v}")));
    }

    fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.violations.push(msg());
        }
    }
}

fn category(name: &str, q: u32) -> Result<RepCategory> {
    RepCategory::new(&RootDatum::preset(name)?, q)
}

fn suite(out: &mut Outcome, name: &str, q: u32, s: &str, cap: i64) -> Result<()> {
    let cat = category(name, q)?;
    for r in verify::run(s, &cat, cap, Exec::Parallel)? {
        out.absorb(&format!("{name} q={q}"), r);
    }
    Ok(())
}

fn suites(out: &mut Outcome, quivers: &[&str], qs: &[u32], s: &str, cap: i64) -> Result<()> {
    for name in quivers {
        for &q in qs {
            suite(out, name, q, s, cap)?;
        }
    }
    Ok(())
}

fn pascal(out: &mut Outcome) -> Result<()> {
    for q in [2, 3, 4] {
        out.absorb(&format!("q={q}"), verify::pascal(q, 8));
    }
    Ok(())
}

fn oracle(out: &mut Outcome) -> Result<()> {
    suites(out, &["a2", "a3", "b2"], &[2, 3], "oracle", 4)?;
    // Lines in a plane over the field at vertex 1. That field is F_q for
    // A2 and A3, and F_{q^2} for B2.
    for (name, f1) in [("a2", 1), ("a3", 1), ("b2", 2)] {
        for q in [2u32, 3] {
            let cat = category(name, q)?;
            let s1 = cat.simple_class(0);
            let got = cat.hall_number(&s1.scale(2), &s1, &s1)?;
            let want = (q as u64).pow(f1) + 1;
            out.check(got == want, || {
                format!("{name} q={q}: F^(2S1)_(S1,S1) = {got}, expected {want}")
            });
        }
    }
    Ok(())
}

fn ar_words(out: &mut Outcome) -> Result<()> {
    for (name, nu) in [
        ("a1", 1),
        ("a2", 3),
        ("a3", 6),
        ("b2", 4),
        ("g2", 6),
        ("d4", 12),
    ] {
        let cat = category(name, 2)?;
        out.absorb(name, verify::arduality(&cat)?);
        out.check(cat.nu() == nu, || {
            format!("{name}: ν = {}, expected {nu}", cat.nu())
        });
        let cs = canonical_structures(&cat)?;
        out.check(cs.w0.len() == nu, || {
            format!("{name}: w0 has length {}", cs.w0.len())
        });
        if name == "a2" {
            out.check(cs.w0 == [0, 1, 0], || format!("a2: w0 = {:?}", cs.w0));
        }
        for (k, slice) in cs.inj_slices.iter().enumerate() {
            let part = cs.proj_partition.parts.get(k).map_or(0, |p| p.len());
            out.check(part == slice.len(), || {
                format!(
                    "{name}: |P_{}| = {part} but |I_{}| = {}",
                    k + 1,
                    k + 1,
                    slice.len()
                )
            });
        }
    }
    Ok(())
}

type Criterion = (&'static str, u64, fn(&mut Outcome) -> Result<()>);

const CRITERIA: [Criterion; 10] = [
    ("pascal identities", 1, pascal),
    ("hall number oracle", 30, oracle),
    ("bialgebra structure", 60, |o| {
        suites(o, &["a2", "a3", "b2"], &[2, 3], "bialgebra", 4)
    }),
    ("map compositions", 60, |o| {
        suites(o, &["a2", "a3", "b2"], &[2, 3], "compositions", 4)
    }),
    ("serre vanishing", 10, |o| {
        suites(o, &["a2", "a3", "b2"], &[2, 3], "serre", 0)
    }),
    ("triangularity", 120, |o| {
        suites(o, &["a2", "a3", "b2"], &[2, 3], "triangular", 4)
    }),
    ("monomial basis", 120, |o| {
        suites(o, &["a2", "a3", "b2"], &[2], "monomial", 6)?;
        suites(o, &["a2", "a3", "b2"], &[3], "monomial", 4)
    }),
    ("characterization", 60, |o| {
        suites(o, &["a2", "a3", "b2"], &[2], "characterization", 6)
    }),
    ("ar duality and words", 30, ar_words),
    ("quotient order", 60, |o| {
        suites(o, &["a2", "a3"], &[2], "order", 6)
    }),
];

fn main() -> ExitCode {
    let mut failed = 0;
    for (k, (name, budget, run)) in CRITERIA.iter().enumerate() {
        let mut out = Outcome::new();
        let start = Instant::now();
        let result = run(&mut out);
        let elapsed = start.elapsed();
        let mut problems = out.violations;
        if let Err(e) = result {
            problems.push(format!("error: {e}"));
        }
        if out.checked == 0 {
            problems.push("no checks ran".into());
        }
        if elapsed > Duration::from_secs(*budget) {
            problems.push(format!("took {elapsed:.2?}, budget {budget} s"));
        }
        let status = if problems.is_empty() { "PASS" } else { "FAIL" };
        println!(
            "{status} {:>2}. {name:<22} {:>6} checks  {elapsed:>10.2?} (budget {budget} s)",
            k + 1,
            out.checked
        );
        for p in problems.iter().take(10) {
            println!("       {p}");
        }
        if problems.len() > 10 {
            println!("       ... {} more", problems.len() - 10);
        }
        if !problems.is_empty() {
            failed += 1;
        }
    }
    if failed == 0 {
        println!("acceptance: all {} criteria passed", CRITERIA.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} of {} criteria failed", CRITERIA.len());
        ExitCode::FAILURE
    }
}

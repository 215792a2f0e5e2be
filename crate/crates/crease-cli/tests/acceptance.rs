//! Acceptance criteria 1–11, one pass/fail line each.
//!
//! Wall-clock budgets are checked too.

#[path = "../../crease/tests/support/brute.rs"]
mod brute;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use std::time::{Duration, Instant};

use crease::branched::generate::grow_diagram;
use crease::branched::{
    apply_double_cusp, apply_move, apply_partial_close, canonical_model, classify,
    compute_complexity, enumerate_double_cusp_moves, enumerate_partial_close_moves, mushroom_five,
    validate_diagram, Complexity, FoldingAssignment, Move,
};
use crease::composer::{five_curve_table, Model};
use crease::signs::Sign::{Minus, Plus};
use crease::{config_to_json, CreaseConfig};
use crease::{
    enumerate_configs, models, sign_feasibility, solve_weighting, Feasibility, SignAssignment,
};
use rand::{Rng, SeedableRng};

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
}

fn crease(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_crease"))
        .args(args)
        .output()
        .expect("spawn crease")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn c(n1: usize, n2: usize) -> Complexity {
    Complexity { n1, n2 }
}

fn running_example() -> Result<String, String> {
    let o = crease(&["weight", data("thirteen.json").to_str().unwrap()]);
    ensure(o.status.success(), format!("exit {:?}", o.status.code()))?;
    let first = stdout(&o).lines().next().unwrap_or_default().to_string();
    let want = "t = (1, 1, 1, 1, -3, -3, 5, -3, -3, 1, 1, 1, 1)";
    ensure(first == want, format!("got {first}"))?;
    Ok(first)
}

fn three_curves() -> Result<String, String> {
    let p = crease(&["weight", data("path3.json").to_str().unwrap()]);
    let line = stdout(&p).lines().next().unwrap_or_default().to_string();
    ensure(
        p.status.success() && line == "t = (1, -1, 1)",
        format!("path-3: {line}"),
    )?;
    let s = crease(&["weight", data("star3.json").to_str().unwrap()]);
    ensure(
        s.status.code() == Some(1) && stdout(&s).trim() == "INFEASIBLE",
        format!("star-3: {:?} {}", s.status.code(), stdout(&s)),
    )?;
    Ok(format!("path-3 {line}, star-3 INFEASIBLE"))
}

fn global_identity() -> Result<String, String> {
    let o = crease(&["enumerate", "--max-curves", "8", "--weightable-only"]);
    ensure(o.status.success(), "enumerate failed")?;
    let mut n = 0;
    for line in stdout(&o).lines().filter(|l| !l.starts_with("total")) {
        let t = line
            .split("t = (")
            .nth(1)
            .ok_or(format!("no weights: {line}"))?;
        let sum: i64 = t
            .trim_end_matches(')')
            .split(", ")
            .map(|x| x.parse::<i64>().unwrap())
            .sum();
        ensure(2 * sum == 2, format!("2Σt = {} on {line}", 2 * sum))?;
        n += 1;
    }
    ensure(n > 0, "no configurations")?;
    Ok(format!("{n} configurations, 2Σt = 2"))
}

fn enumeration_oracle() -> Result<String, String> {
    let mut counts = Vec::new();
    for k in 1..=6 {
        let (all, good) = brute::brute_counts(k);
        let of = |w| {
            enumerate_configs(k, 0, w)
                .iter()
                .filter(|c| c.curves.len() == k)
                .count()
        };
        ensure(
            (of(false), of(true)) == (all, good),
            format!(
                "k = {k}: ({}, {}) vs brute ({all}, {good})",
                of(false),
                of(true)
            ),
        )?;
        counts.push(format!("{all}/{good}"));
    }
    let (three, four) = (
        enumerate_configs(3, 0, true).len(),
        enumerate_configs(4, 0, true).len(),
    );
    ensure(
        (three, four) == (2, 2),
        format!("(3,0,w) = {three}, (4,0,w) = {four}"),
    )?;
    Ok(format!("all/weightable by size {}", counts.join(" ")))
}

fn round_trip() -> Result<String, String> {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let cfgs = enumerate_configs(5, 0, true);
    for (i, cfg) in cfgs.iter().enumerate() {
        let input = dir.path().join(format!("c{i}.json"));
        let obj = dir.path().join(format!("c{i}.obj"));
        std::fs::write(&input, config_to_json(cfg)).unwrap();
        let (inp, out) = (input.to_str().unwrap(), obj.to_str().unwrap());
        let r = crease(&["realize", inp, "-o", out, "--resolution", "64"]);
        ensure(
            r.status.success(),
            format!("realize {i}: {}", String::from_utf8_lossy(&r.stderr)),
        )?;
        let v = crease(&["verify", out, "--config", inp]);
        let rep: serde_json::Value =
            serde_json::from_slice(&v.stdout).map_err(|e| e.to_string())?;
        ensure(
            v.status.success() && rep["pass"] == true,
            format!("verify {i}: {rep}"),
        )?;
    }
    Ok(format!(
        "{} configurations realized and verified at resolution 64",
        cfgs.len()
    ))
}

fn branched_replay() -> Result<String, String> {
    let d = mushroom_five();
    ensure(compute_complexity(&d) == c(14, 8), "initial complexity")?;
    let pc = enumerate_partial_close_moves(&d);
    let jplus = pc
        .iter()
        .find(|m| matches!(m, Move::PartialClose(p) if p.component.to_string() == "A+"))
        .ok_or("no partial-close move on A+")?;
    let a = apply_partial_close(&d, jplus).map_err(|e| e.to_string())?;
    ensure(
        a.word_strings() == ["×,4,5,5,4,×"] && compute_complexity(&a) == c(4, 4),
        format!(
            "partial close: {:?} {}",
            a.word_strings(),
            compute_complexity(&a)
        ),
    )?;
    let dc = enumerate_double_cusp_moves(&d).map_err(|e| e.to_string())?;
    let b = apply_double_cusp(&d, dc.first().ok_or("no double-cusp move")?)
        .map_err(|e| e.to_string())?;
    ensure(
        b.word_strings() == ["×,1,6,7,3,3,7,4,5,5,4,6,1,×"] && compute_complexity(&b) == c(12, 12),
        format!(
            "double cusp: {:?} {}",
            b.word_strings(),
            compute_complexity(&b)
        ),
    )?;
    Ok("(14, 8) → (4, 4) and (12, 12)".into())
}

fn canonical_complexities() -> Result<String, String> {
    let got: Vec<Complexity> = [Model::Saucer, Model::Mushroom, Model::Toric]
        .map(|m| compute_complexity(&canonical_model(m)))
        .to_vec();
    ensure(got == [c(0, 0), c(0, 0), c(6, 0)], format!("{got:?}"))?;
    Ok("S (0, 0), M (0, 0), E (6, 0)".into())
}

fn classification() -> Result<String, String> {
    let o = crease(&["classify", data("mushroom5.json").to_str().unwrap()]);
    ensure(
        o.status.success() && stdout(&o).lines().next() == Some("Mushroom"),
        format!("mushroom-5: {}", stdout(&o)),
    )?;
    let mut diagrams = vec![mushroom_five()];
    for seed in 0..100u64 {
        let f = [FoldingAssignment::F1, FoldingAssignment::F2][seed as usize % 2];
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0xC0FFEE ^ seed);
        let max = rng.gen_range(1..=6);
        diagrams.push(grow_diagram(f, max, &mut |n| rng.gen_range(0..n)));
    }
    let mut steps = 0;
    for (i, d) in diagrams.iter().enumerate() {
        validate_diagram(d).map_err(|e| format!("diagram {i}: {e:?}"))?;
        ensure(
            d.double_points().len() <= 6,
            format!("diagram {i} too large"),
        )?;
        let r = classify(d).map_err(|e| format!("diagram {i}: {e}"))?;
        for s in &r.trace {
            ensure(
                s.after.measure() < s.before.measure(),
                format!("diagram {i}: {} ↛ {}", s.before, s.after),
            )?;
        }
        steps += r.trace.len();
        // replay the trace and compare the end with the model's own diagram
        let mut cur = d.clone();
        for st in &r.trace {
            cur = apply_move(&cur, &st.step).map_err(|e| format!("diagram {i}: {e}"))?;
            ensure(
                compute_complexity(&cur) == st.after,
                format!("diagram {i}: replay diverged"),
            )?;
        }
        let end = if d.folding == FoldingAssignment::F3 {
            1
        } else {
            0
        };
        ensure(
            cur.double_points().len() == end,
            format!(
                "diagram {i}: {} double points left",
                cur.double_points().len()
            ),
        )?;
        ensure(
            compute_complexity(&cur) == compute_complexity(&canonical_model(r.label)),
            format!("diagram {i}: terminal {}", r.terminal),
        )?;
        ensure(
            r.label == d.folding.model(),
            format!("diagram {i}: label {}", r.label),
        )?;
    }
    Ok(format!(
        "{} diagrams, {steps} strictly decreasing steps",
        diagrams.len()
    ))
}

fn sign_calculus() -> Result<String, String> {
    let rows = five_curve_table();
    ensure(rows.len() == 5, "row count")?;
    let expected: [(&str, [Option<crease::Sign>; 4], crease::Sign, bool); 5] = [
        (
            "M#E",
            [Some(Plus), Some(Plus), Some(Plus), Some(Plus)],
            Minus,
            true,
        ),
        (
            "E#E",
            [Some(Minus), Some(Minus), Some(Minus), Some(Minus)],
            Plus,
            true,
        ),
        ("M#S", [Some(Plus), Some(Plus), None, None], Minus, false),
        ("S#E", [Some(Minus), Some(Minus), None, None], Plus, true),
        ("S#S", [None, None, None, None], Minus, false),
    ];
    for (i, (r, (name, disks, g5, forced))) in rows.iter().zip(expected).enumerate() {
        let fixed = r
            .disks
            .iter()
            .zip(disks)
            .all(|(s, want)| want.is_none_or(|w| *s == w));
        // ± ∓ columns: the two entries of each unfixed pair differ
        let pm = (0..2).all(|p| disks[2 * p].is_some() || r.disks[2 * p] != r.disks[2 * p + 1]);
        ensure(
            r.realization == name && fixed && pm && r.gamma5 == g5 && r.forced == forced,
            format!("row {}: {r:?}", i + 1),
        )?;
    }
    let o = crease(&["table2"]);
    ensure(
        o.status.success() && stdout(&o).lines().count() == 6,
        "table2 output",
    )?;
    Ok("five rows match; rows 3 and 5 not forced".into())
}

fn h_configuration() -> Result<String, String> {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let out = dir.path().join("h.json");
    let o = crease(&[
        "connect-sum",
        "M",
        "E",
        "--along",
        "γm",
        "γm",
        "-o",
        out.to_str().unwrap(),
    ]);
    ensure(
        o.status.success(),
        String::from_utf8_lossy(&o.stderr).into_owned(),
    )?;
    let cfg: CreaseConfig =
        crease::parse_config(&std::fs::read_to_string(&out).unwrap()).map_err(|e| e.to_string())?;
    ensure(
        crease::config_isomorphic(&cfg, &models::h_config()),
        "sum is not the five-curve configuration",
    )?;
    let w = solve_weighting(&cfg).map_err(|e| e.to_string())?;
    let mut t = w.singles(&cfg).unwrap();
    t.sort();
    ensure(t == [-3, 1, 1, 1, 1], format!("weights {t:?}"))?;
    let merged = stdout(&o)
        .lines()
        .find(|l| l.starts_with("γm#γm"))
        .unwrap_or_default()
        .to_string();
    ensure(
        merged.split('\t').nth(1) == Some("-3"),
        format!("merged curve line {merged}"),
    )?;
    Ok("M#E along the middle curves: 5 curves, merged weight −3".into())
}

fn feasibility() -> Result<String, String> {
    let p3 = models::path3();
    let refuted = |cfg: &CreaseConfig, s: &str| {
        matches!(
            sign_feasibility(cfg, &SignAssignment::parse(s).unwrap()),
            Feasibility::Infeasible(_)
        )
    };
    ensure(refuted(&p3, "+--"), "[+,−,−] on path-3 accepted")?;
    let mut n = 0;
    for cfg in enumerate_configs(6, 0, true)
        .iter()
        .filter(|c| c.curves.len() > 1)
    {
        ensure(
            refuted(cfg, &"+".repeat(cfg.curves.len())),
            "all-+ accepted",
        )?;
        n += 1;
    }
    let d = models::dimpled_sphere();
    let w = solve_weighting(&d).map_err(|e| e.to_string())?;
    let sides = (w.side("γ", "Kin"), w.side("γ", "Kout"));
    ensure(
        sides == (Some(1), Some(1)),
        format!("dimpled sphere {sides:?}"),
    )?;
    Ok(format!(
        "path-3 [+,−,−] refuted; all-+ refuted on {n} configurations; dimpled (1, 1)"
    ))
}

/// Straight to the stderr handle, so the lines show without `--nocapture`.
fn line(s: String) {
    let _ = writeln!(std::io::stderr().lock(), "{s}");
}

type Criterion = (&'static str, fn() -> Result<String, String>, Duration);

#[test]
fn acceptance_criteria() {
    let s = Duration::from_secs;
    let criteria: [Criterion; 11] = [
        ("running example weights", running_example, s(1)),
        ("three-curve facts", three_curves, s(1)),
        ("global identity", global_identity, s(10)),
        ("enumeration oracle", enumeration_oracle, s(30)),
        ("realization round trip", round_trip, s(60)),
        ("branched replay", branched_replay, s(1)),
        ("canonical complexities", canonical_complexities, s(1)),
        ("classification", classification, s(60)),
        ("sign calculus", sign_calculus, s(1)),
        ("H-configuration", h_configuration, s(1)),
        ("feasibility predicate", feasibility, s(1)),
    ];
    let mut failed = Vec::new();
    for (i, (name, f, budget)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let mut r = f();
        let took = t.elapsed();
        if r.is_ok() && took > *budget {
            r = Err(format!("took {took:.2?}, budget {budget:?}"));
        }
        match &r {
            Ok(d) => line(format!(
                "criterion {:>2} PASS  {name} ({took:.2?}): {d}",
                i + 1
            )),
            Err(e) => {
                line(format!(
                    "criterion {:>2} FAIL  {name} ({took:.2?}): {e}",
                    i + 1
                ));
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}

//! Acceptance suite: one PASS/FAIL line per criterion, all at exact equality.
//!
//! Runs with a custom harness so the lines appear even when everything passes.

use std::process::ExitCode;
use std::time::Instant;

use lsmodel::derivation::theta_composition;
use lsmodel::lie::{ad_pow, independence, lacle};
use lsmodel::models::{self, AbxGenerators, IntervalModel};
use lsmodel::sequences::{self, bernoulli, BernoulliTable, VTable};
use lsmodel::verify::checks::{parse_markdown_grid, REFERENCE_V_TABLE};
use lsmodel::verify::{run_suite, CheckSpec, Status};
use lsmodel::{Rational, Result};

type Outcome = Result<std::result::Result<String, String>>;
type Criterion = (&'static str, fn() -> Outcome);

fn ok(detail: impl Into<String>) -> Outcome {
    Ok(Ok(detail.into()))
}

fn fail(detail: impl Into<String>) -> Outcome {
    Ok(Err(detail.into()))
}

fn main_theorem() -> Outcome {
    let o = models::main_theorem(20, 22)?;
    if !o.holds() {
        return fail(format!("λ differs from B at {:?}", o.mismatches()));
    }
    if o.lambdas[12] != Rational::frac(-691, 2730) {
        return fail(format!("λ_12 = {}", o.lambdas[12]));
    }
    ok("λ_i = B_i for 0 <= i <= 20, λ_12 = -691/2730")
}

fn geometric_flatness() -> Outcome {
    let o = models::d_squared(&models::geometric_model(14, 16)?)?;
    if !o.d2a.is_zero() || !o.d2b.is_zero() {
        return fail("∂²a or ∂²b nonzero");
    }
    if !o.holds() || o.checked_up_to != 15 {
        return fail(format!("∂²x fails at lengths {:?}", o.failing_lengths));
    }
    let mut coeffs = BernoulliTable::build(14).values().to_vec();
    coeffs[2] = Rational::frac(1, 7);
    let mutated = models::d_squared(&IntervalModel::from_coefficients(coeffs, 16)?)?;
    if mutated.failing_lengths.first() != Some(&3) {
        return fail(format!("mutation λ_2 = 1/7 failing lengths {:?}", mutated.failing_lengths));
    }
    ok("∂² = 0 through length 15; λ_2 = 1/7 first fails at length 3")
}

fn worked_values() -> Outcome {
    let t = 5;
    let g = AbxGenerators::new(t);
    let ad_bb = g.x.bracket(&g.beta.bracket(&g.beta)?)?;
    let d1 = models::partial1_abx(t)?;
    if d1.apply(&d1.apply(&g.x)?)? != ad_bb.scale(&Rational::frac(-1, 8)) {
        return fail("∂₁²x");
    }
    if models::partial0_abx(t)?.apply(&ad_pow(&g.x, 2, &g.beta)?)? != ad_bb.scale(&Rational::frac(3, 2)) {
        return fail("∂₀[x,[x,β]]");
    }
    ok("∂₁²x = -1/8 ad_x[β,β], ∂₀[x,[x,β]] = 3/2 ad_x[β,β]")
}

fn v_table() -> Outcome {
    let grid = parse_markdown_grid(&VTable::build(7).to_markdown());
    if grid.len() != 8 {
        return fail(format!("{} rows", grid.len()));
    }
    let mut cells = 0;
    for (n, row) in REFERENCE_V_TABLE.iter().enumerate() {
        for (k, want) in row.iter().enumerate() {
            let got = grid[n].get(k).map(String::as_str).unwrap_or("");
            if got != *want {
                return fail(format!("v({n},{k}) = {got:?}, expected {want:?}"));
            }
            cells += 1;
        }
    }
    ok(format!("{cells} cells match"))
}

fn closed_form() -> Outcome {
    let t = VTable::build(60);
    for n in 0..=60 {
        for k in -1..=(n as i64 / 2 + 1) {
            if t.get(n, k) != sequences::v_closed_form(n, k) {
                return fail(format!("v({n},{k})"));
            }
        }
    }
    if sequences::diagonal_sum(0) != Rational::one() || sequences::diagonal_sum(1) != Rational::frac(-1, 2) {
        return fail("diagonal exceptions at n = 0, 1");
    }
    if let Some(n) = (2..=30).find(|&n| !sequences::diagonal_sum(n).is_zero()) {
        return fail(format!("diagonal_sum({n}) != 0"));
    }
    ok("closed form for n <= 60; diagonal sums vanish for 2 <= n <= 30")
}

fn adjoint_compositions() -> Outcome {
    let table = VTable::build(14);
    let mut cases = 0;
    for s in 0..=14 {
        for q in 0..=s {
            let p = s - q;
            if !lacle(p, q, s + 2, &table)?.holds() {
                return fail(format!("(p, q) = ({p}, {q})"));
            }
            cases += 1;
        }
    }
    ok(format!("{cases} pairs with p + q <= 14"))
}

fn mu_independence() -> Outcome {
    for n in 1..=14 {
        let o = independence(n, n + 2)?;
        if !o.holds() || o.rank != n / 2 + 1 {
            return fail(format!("n = {n}: rank {} expected {}", o.rank, n / 2 + 1));
        }
    }
    ok("rank = floor(n/2) + 1 for 1 <= n <= 14")
}

fn theta_compositions() -> Outcome {
    let table = VTable::build(14);
    let (mut cases, mut typos) = (0, Vec::new());
    for s in 1..=14 {
        for q in 1..=s {
            let p = s - q;
            let o = theta_composition(p, q, s + 1, &table)?;
            if !o.contained() {
                return fail(format!("(p, q) = ({p}, {q}) outside the μ span"));
            }
            if !o.matches_printed() {
                typos.push(format!("({p},{q})"));
            }
            cases += 1;
        }
    }
    if typos.is_empty() {
        ok(format!("{cases} pairs contained, printed formulas match"))
    } else {
        ok(format!("{cases} pairs contained; typo reports for {}", typos.join(" ")))
    }
}

fn relations() -> Outcome {
    if let Some(n) = (4..=30).step_by(2).find(|&n| !sequences::euler_check(n).unwrap_or(false)) {
        return fail(format!("Euler formula at n = {n}"));
    }
    for n in (4..=16).step_by(2) {
        let proj = models::operator_projection(n, n + 1)?;
        for k in 0..proj.width() {
            let printed = sequences::bernoulli_v_relation_check(n, k)?;
            if !proj.holds(k) || printed != proj.holds(k) {
                return fail(format!("n = {n}, k = {k}: printed {printed}, operator {}", proj.holds(k)));
            }
        }
    }
    let s = |n| BernoulliTable::build(10).scaled(n);
    if Rational::frac(9, 2) * s(2) * s(6) != Rational::from_int(-15) * s(8) {
        return fail("first Bernoulli product identity");
    }
    if Rational::frac(5, 2) * s(4) * s(6) + Rational::from_int(10) * s(2) * s(8) != Rational::frac(-77, 2) * s(10) {
        return fail("second Bernoulli product identity");
    }
    if bernoulli(12) != Rational::frac(-691, 2730) {
        return fail("B_12");
    }
    ok("Euler n <= 30; relations consistent for n <= 16; Bernoulli product identities exact")
}

fn structural() -> Outcome {
    let names = ["antisymmetry", "jacobi", "leibniz", "d0_squared", "acyclicity"];
    let specs = names
        .iter()
        .map(|n| Ok(CheckSpec::new(n)?.with("cases", 200).with("seed", 0x5EED)))
        .collect::<Result<Vec<_>>>()?;
    let report = run_suite(&specs)?;
    let failed: Vec<&str> = report.checks.iter().filter(|c| c.status != Status::Pass).map(|c| c.name.as_str()).collect();
    if failed.is_empty() {
        ok(format!("{} x 200 seeded cases", names.len()))
    } else {
        fail(format!("failed: {}", failed.join(", ")))
    }
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("main theorem", main_theorem),
        ("geometric flatness", geometric_flatness),
        ("worked values", worked_values),
        ("v-table", v_table),
        ("closed form and diagonal sums", closed_form),
        ("adjoint compositions", adjoint_compositions),
        ("μ independence", mu_independence),
        ("θ compositions", theta_compositions),
        ("Euler-type relations", relations),
        ("structural properties", structural),
    ];
    let mut failures = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let (tag, detail) = match f() {
            Ok(Ok(d)) => ("PASS", d),
            Ok(Err(d)) => ("FAIL", d),
            Err(e) => ("FAIL", format!("error: {e}")),
        };
        if tag == "FAIL" {
            failures += 1;
        }
        println!("{tag} criterion {:>2} {name}: {detail} ({} ms)", i + 1, start.elapsed().as_millis());
    }
    println!("acceptance: {}/{} passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

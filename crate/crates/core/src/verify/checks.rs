//! The registered checks. Each takes its integer parameters and returns a
//! verdict; failures carry enough exact data to reproduce them.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::arith::{binomial_ext, factorial, Rational};
use crate::derivation::{self, acyclicity_parts, compose, derivation_bracket, leibniz_holds, theta};
use crate::error::{Error, Result};
use crate::lie::{self, mu, xb_generators};
use crate::linalg::{self, proportionality};
use crate::models::{self, AbxGenerators, IntervalModel};
use crate::sequences::{self, BernoulliTable, VTable};
use crate::tensor::{Element, GradedAlphabet};

use super::random;

pub type Params = BTreeMap<String, i64>;

#[derive(Debug, Clone, PartialEq)]
pub struct Verdict {
    pub pass: bool,
    pub witness: Option<Value>,
}

impl Verdict {
    fn pass() -> Self {
        Verdict { pass: true, witness: None }
    }

    fn fail(witness: Value) -> Self {
        Verdict { pass: false, witness: Some(witness) }
    }

    fn pass_with(witness: Value) -> Self {
        Verdict { pass: true, witness: Some(witness) }
    }
}

type CheckFn = fn(&Params) -> Result<Verdict>;

pub struct CheckDef {
    pub name: &'static str,
    pub suite: &'static str,
    pub defaults: &'static [(&'static str, i64)],
    pub run: CheckFn,
}

const SEED: i64 = 0x5EED;

/// Every check, grouped by suite.
pub static REGISTRY: &[CheckDef] = &[
    CheckDef { name: "factorial_recurrence", suite: "sequences", defaults: &[("max_n", 25)], run: factorial_recurrence },
    CheckDef { name: "binomial_pascal", suite: "sequences", defaults: &[("max_n", 30)], run: binomial_pascal },
    CheckDef { name: "bernoulli_values", suite: "sequences", defaults: &[("max_n", 25)], run: bernoulli_values },
    CheckDef { name: "vtable_reference", suite: "sequences", defaults: &[], run: vtable_reference },
    CheckDef { name: "vtable_closed_form", suite: "sequences", defaults: &[("max_n", 60)], run: vtable_closed_form },
    CheckDef { name: "diagonal_sum", suite: "sequences", defaults: &[("max_n", 30)], run: diagonal_sum },
    CheckDef { name: "uneautre", suite: "sequences", defaults: &[("max_n", 40)], run: uneautre },
    CheckDef { name: "occagne", suite: "sequences", defaults: &[("max_k", 8), ("max_n", 20)], run: occagne },
    CheckDef { name: "euler", suite: "sequences", defaults: &[("max_n", 30)], run: euler },
    CheckDef { name: "bernoulli_products", suite: "sequences", defaults: &[], run: bernoulli_products },
    CheckDef { name: "antisymmetry", suite: "lie", defaults: &[("cases", 200), ("max_len", 5), ("seed", SEED)], run: antisymmetry },
    CheckDef { name: "jacobi", suite: "lie", defaults: &[("cases", 200), ("max_len", 4), ("seed", SEED)], run: jacobi },
    CheckDef { name: "bilinearity", suite: "lie", defaults: &[("cases", 200), ("max_len", 4), ("seed", SEED)], run: bilinearity },
    CheckDef { name: "truncation_coherence", suite: "lie", defaults: &[("cases", 200), ("seed", SEED)], run: truncation_coherence },
    CheckDef { name: "mu_support", suite: "lie", defaults: &[("max_n", 12)], run: mu_support },
    CheckDef { name: "lacle", suite: "lie", defaults: &[("max_pq", 14)], run: lacle },
    CheckDef { name: "independence", suite: "lie", defaults: &[("max_n", 14)], run: independence },
    CheckDef { name: "leibniz", suite: "lie", defaults: &[("cases", 200), ("max_len", 4), ("seed", SEED)], run: leibniz },
    CheckDef { name: "derivation_bracket", suite: "lie", defaults: &[("cases", 200), ("max_len", 4), ("seed", SEED)], run: derivation_bracket_agrees },
    CheckDef { name: "d0_squared", suite: "lie", defaults: &[("cases", 200), ("max_len", 6), ("seed", SEED)], run: d0_squared },
    CheckDef { name: "theta_composition", suite: "lie", defaults: &[("max_pq", 14)], run: theta_composition },
    CheckDef { name: "acyclicity", suite: "lie", defaults: &[("cases", 200), ("max_n", 12), ("seed", SEED)], run: acyclicity },
    CheckDef { name: "worked_values", suite: "models", defaults: &[], run: worked_values },
    CheckDef { name: "main_theorem", suite: "models", defaults: &[("max", 20), ("truncation", 22)], run: main_theorem },
    CheckDef { name: "inductive_certificates", suite: "models", defaults: &[("max", 20), ("truncation", 22)], run: inductive_certificates },
    CheckDef { name: "geometric_flatness", suite: "models", defaults: &[("max", 14), ("truncation", 16)], run: geometric_flatness },
    CheckDef { name: "mutation_guard", suite: "models", defaults: &[], run: mutation_guard },
    CheckDef { name: "partial1_anticommute", suite: "models", defaults: &[("max_n", 8)], run: partial1_anticommute },
    CheckDef { name: "partial1_restriction", suite: "models", defaults: &[("cases", 200), ("max_len", 5), ("seed", SEED)], run: partial1_restriction },
    CheckDef { name: "cross_alphabet", suite: "models", defaults: &[("max_n", 8)], run: cross_alphabet },
    CheckDef { name: "euler_type_relations", suite: "models", defaults: &[("max_n", 16)], run: euler_type_relations },
];

pub fn lookup(name: &str) -> Option<&'static CheckDef> {
    REGISTRY.iter().find(|c| c.name == name)
}

/// The published table of `v(n, k)` for `n <= 7`, `k <= 3`; blank outside the band.
pub const REFERENCE_V_TABLE: [[&str; 4]; 8] = [
    ["1", "", "", ""],
    ["1/2", "", "", ""],
    ["1/2", "-1", "", ""],
    ["1/2", "-3/2", "", ""],
    ["1/2", "-2", "1", ""],
    ["1/2", "-5/2", "5/2", ""],
    ["1/2", "-3", "9/2", "-1"],
    ["1/2", "-7/2", "7", "-7/2"],
];

/// Parses the body rows of a markdown grid into cells (first column dropped).
pub fn parse_markdown_grid(md: &str) -> Vec<Vec<String>> {
    md.lines()
        .skip(2)
        .filter(|l| l.starts_with('|'))
        .map(|l| {
            let cells: Vec<String> = l.trim().trim_matches('|').split('|').map(|c| c.trim().to_string()).collect();
            cells[1..].to_vec()
        })
        .collect()
}

fn get(p: &Params, key: &str) -> Result<usize> {
    let v = *p.get(key).ok_or_else(|| Error::InvalidArgument(format!("missing parameter {key}")))?;
    usize::try_from(v).map_err(|_| Error::InvalidArgument(format!("parameter {key} must be >= 0")))
}

fn seed(p: &Params) -> u64 {
    p.get("seed").copied().unwrap_or(SEED) as u64
}

fn sides(lhs: &Rational, rhs: &Rational) -> Value {
    json!({ "lhs": lhs, "rhs": rhs })
}

fn elements(pairs: &[(&str, &Element)]) -> Value {
    Value::Object(pairs.iter().map(|(k, e)| (k.to_string(), e.to_json())).collect())
}

/// First failing index with its witness, or a pass.
fn first_failure(iter: impl IntoIterator<Item = Result<Option<Value>>>) -> Result<Verdict> {
    for item in iter {
        if let Some(w) = item? {
            return Ok(Verdict::fail(w));
        }
    }
    Ok(Verdict::pass())
}

fn factorial_recurrence(p: &Params) -> Result<Verdict> {
    let max = get(p, "max_n")? as u64;
    first_failure((1..=max).map(|n| {
        Ok((factorial(n) != factorial(n - 1) * n).then(|| json!({ "n": n, "factorial": factorial(n).to_string() })))
    }))
}

fn binomial_pascal(p: &Params) -> Result<Verdict> {
    let max = get(p, "max_n")? as i64;
    first_failure((1..=max).flat_map(|n| (-2..=n + 2).map(move |k| (n, k))).map(|(n, k)| {
        let lhs = binomial_ext(n, k);
        let rhs = binomial_ext(n - 1, k) + binomial_ext(n - 1, k - 1);
        Ok((lhs != rhs).then(|| json!({ "n": n, "k": k, "lhs": lhs.to_string(), "rhs": rhs.to_string() })))
    }))
}

fn bernoulli_values(p: &Params) -> Result<Verdict> {
    let max = get(p, "max_n")?.max(12);
    let b = BernoulliTable::build(max);
    let listed = [
        (0, Rational::one()),
        (1, Rational::frac(-1, 2)),
        (2, Rational::frac(1, 6)),
        (4, Rational::frac(-1, 30)),
        (6, Rational::frac(1, 42)),
        (8, Rational::frac(-1, 30)),
        (10, Rational::frac(5, 66)),
        (12, Rational::frac(-691, 2730)),
    ];
    for (n, value) in listed {
        if b.get(n) != &value {
            return Ok(Verdict::fail(json!({ "n": n, "computed": b.get(n), "expected": value })));
        }
    }
    first_failure((3..=max).step_by(2).map(|n| Ok((!b.get(n).is_zero()).then(|| json!({ "n": n, "computed": b.get(n) })))))
}

fn vtable_reference(_: &Params) -> Result<Verdict> {
    let md = VTable::build(7).to_markdown();
    let grid = parse_markdown_grid(&md);
    for (n, row) in REFERENCE_V_TABLE.iter().enumerate() {
        for (k, expected) in row.iter().enumerate() {
            let got = grid.get(n).and_then(|r| r.get(k)).map(String::as_str).unwrap_or("<missing>");
            if got != *expected {
                return Ok(Verdict::fail(json!({ "n": n, "k": k, "emitted": got, "expected": expected })));
            }
        }
    }
    Ok(Verdict::pass())
}

fn vtable_closed_form(p: &Params) -> Result<Verdict> {
    let max = get(p, "max_n")?;
    let t = VTable::build(max);
    first_failure((0..=max).flat_map(|n| (-1..=(n as i64 / 2 + 1)).map(move |k| (n, k))).map(|(n, k)| {
        let (a, b) = (t.get(n, k), sequences::v_closed_form(n, k));
        Ok((a != b).then(|| json!({ "n": n, "k": k, "recurrence": a, "closed_form": b })))
    }))
}

fn diagonal_sum(p: &Params) -> Result<Verdict> {
    let max = get(p, "max_n")?;
    // n = 0 and 1 are pinned regression values, not zeros.
    let pinned = [(0usize, Rational::one()), (1, Rational::frac(-1, 2))];
    for (n, v) in &pinned {
        let got = sequences::diagonal_sum(*n);
        if &got != v {
            return Ok(Verdict::fail(json!({ "n": n, "sum": got, "expected": v })));
        }
    }
    let verdict = first_failure((2..=max).map(|n| {
        let s = sequences::diagonal_sum(n);
        Ok((!s.is_zero()).then(|| json!({ "n": n, "sum": s })))
    }))?;
    if verdict.pass {
        return Ok(Verdict::pass_with(json!({
            "holds_for": format!("2..={max}"),
            "exceptions": pinned.iter().map(|(n, v)| json!({ "n": n, "sum": v })).collect::<Vec<_>>(),
        })));
    }
    Ok(verdict)
}

fn uneautre(p: &Params) -> Result<Verdict> {
    let max = get(p, "max_n")?;
    let t = VTable::build(max);
    first_failure((2..=max).flat_map(|n| (1..=(n / 2) as i64).map(move |k| (n, k))).map(|(n, k)| {
        let (lhs, rhs) = (t.get(n, k), -t.sigma(n - 2, k - 1));
        Ok((lhs != rhs).then(|| json!({ "n": n, "k": k, "lhs": lhs, "rhs": rhs })))
    }))
}

fn occagne(p: &Params) -> Result<Verdict> {
    let (max_k, max_n) = (get(p, "max_k")?, get(p, "max_n")?);
    first_failure((0..=max_k).flat_map(|k| (1..=max_n).map(move |n| (k, n))).map(|(k, n)| {
        Ok((!sequences::check_occagne(k, n)?).then(|| {
            json!({ "k": k, "n": n, "f": sequences::f_iter(k + 1, n).unwrap().to_string() })
        }))
    }))
}

fn euler(p: &Params) -> Result<Verdict> {
    let max = get(p, "max_n")?;
    first_failure((4..=max).step_by(2).map(|n| {
        let s = sequences::euler_sides(n)?;
        Ok((!s.holds()).then(|| json!({ "n": n, "lhs": s.lhs, "rhs": s.rhs })))
    }))
}

fn bernoulli_products(_: &Params) -> Result<Verdict> {
    let b = BernoulliTable::build(10);
    let lhs = Rational::frac(9, 2) * b.scaled(2) * b.scaled(6);
    let rhs = Rational::from_int(-15) * b.scaled(8);
    if lhs != rhs {
        return Ok(Verdict::fail(json!({ "identity": "n=8,k=2", "sides": sides(&lhs, &rhs) })));
    }
    let lhs = Rational::frac(5, 2) * b.scaled(4) * b.scaled(6) + Rational::from_int(10) * b.scaled(2) * b.scaled(8);
    let rhs = Rational::frac(-77, 2) * b.scaled(10);
    if lhs != rhs {
        return Ok(Verdict::fail(json!({ "identity": "n=10,k=2", "sides": sides(&lhs, &rhs) })));
    }
    for (n, k) in [(8, 2), (10, 2)] {
        let s = sequences::bernoulli_v_relation_sides(n, k)?;
        if !s.holds() {
            return Ok(Verdict::fail(json!({ "n": n, "k": k, "sides": sides(&s.lhs, &s.rhs) })));
        }
    }
    Ok(Verdict::pass())
}

fn alphabets() -> [std::sync::Arc<GradedAlphabet>; 2] {
    [GradedAlphabet::xb(), GradedAlphabet::abx()]
}

fn deg(e: &Element) -> i64 {
    e.homogeneous_degree().unwrap_or(0) as i64
}

fn antisymmetry(p: &Params) -> Result<Verdict> {
    let (cases, max_len) = (get(p, "cases")?, get(p, "max_len")?);
    let mut rng = random::rng(seed(p));
    let alphas = alphabets();
    first_failure((0..cases).map(|i| {
        let alpha = &alphas[i % 2];
        let t = 2 * max_len;
        let u = random::homogeneous(&mut rng, alpha, max_len, t);
        let v = random::homogeneous(&mut rng, alpha, max_len, t);
        let lhs = u.bracket(&v)?;
        let rhs = v.bracket(&u)?.scale(&-Rational::sign_pow(deg(&u) * deg(&v)));
        Ok((lhs != rhs).then(|| json!({ "case": i, "u": u.to_json(), "v": v.to_json() })))
    }))
}

fn jacobi_sum(u: &Element, v: &Element, w: &Element) -> Result<Element> {
    let t1 = u.bracket(&v.bracket(w)?)?.scale(&Rational::sign_pow(deg(u) * deg(w)));
    let t2 = v.bracket(&w.bracket(u)?)?.scale(&Rational::sign_pow(deg(v) * deg(u)));
    let t3 = w.bracket(&u.bracket(v)?)?.scale(&Rational::sign_pow(deg(w) * deg(v)));
    t1.add(&t2)?.add(&t3)
}

fn jacobi(p: &Params) -> Result<Verdict> {
    let (cases, max_len) = (get(p, "cases")?, get(p, "max_len")?);
    let mut rng = random::rng(seed(p));
    let alphas = alphabets();
    first_failure((0..cases).map(|i| {
        let alpha = &alphas[i % 2];
        let t = 3 * max_len;
        let u = random::homogeneous(&mut rng, alpha, max_len, t);
        let v = random::homogeneous(&mut rng, alpha, max_len, t);
        let w = random::homogeneous(&mut rng, alpha, max_len, t);
        let s = jacobi_sum(&u, &v, &w)?;
        Ok((!s.is_zero()).then(|| json!({ "case": i, "u": u.to_json(), "v": v.to_json(), "w": w.to_json(), "sum": s.to_json() })))
    }))
}

fn bilinearity(p: &Params) -> Result<Verdict> {
    let (cases, max_len) = (get(p, "cases")?, get(p, "max_len")?);
    let mut rng = random::rng(seed(p));
    let alphas = alphabets();
    first_failure((0..cases).map(|i| {
        let alpha = &alphas[i % 2];
        let t = 2 * max_len;
        let u = random::homogeneous(&mut rng, alpha, max_len, t);
        let v = random::homogeneous(&mut rng, alpha, max_len, t);
        let w = random::homogeneous(&mut rng, alpha, max_len, t);
        let c = random::rational(&mut rng);
        let left = u.combine(&v, &c)?.bracket(&w)?;
        let left_rhs = u.bracket(&w)?.combine(&v.bracket(&w)?, &c)?;
        let right = w.bracket(&u.combine(&v, &c)?)?;
        let right_rhs = w.bracket(&u)?.combine(&w.bracket(&v)?, &c)?;
        Ok((left != left_rhs || right != right_rhs).then(|| json!({ "case": i, "u": u.to_json(), "v": v.to_json(), "w": w.to_json(), "c": c })))
    }))
}

fn truncation_coherence(p: &Params) -> Result<Verdict> {
    let cases = get(p, "cases")?;
    let mut rng = random::rng(seed(p));
    let alphas = alphabets();
    first_failure((0..cases).map(|i| {
        use rand::Rng;
        let alpha = &alphas[i % 2];
        let (l1, l2) = (rng.gen_range(1..=4usize), rng.gen_range(1..=4usize));
        let word = |rng: &mut rand_chacha::ChaCha8Rng, l: usize| -> Result<Element> {
            let odd = rng.gen_range(0..=l.min(2));
            Ok(Element::monomial(alpha, random::word_with(rng, alpha, odd, l - odd)?, random::rational(rng), 8))
        };
        let (u, v) = (word(&mut rng, l1)?, word(&mut rng, l2)?);
        let full = u.bracket(&v)?;
        let tight = u.with_truncation(l1 + l2).bracket(&v.with_truncation(l1 + l2))?;
        let short = u.with_truncation(l1 + l2 - 1).bracket(&v.with_truncation(l1 + l2 - 1))?;
        let ok = tight.terms() == full.terms() && short.is_zero();
        Ok((!ok).then(|| json!({ "case": i, "u": u.to_json(), "v": v.to_json() })))
    }))
}

fn mu_support(p: &Params) -> Result<Verdict> {
    let max = get(p, "max_n")?;
    let (alpha, _, beta) = xb_generators(max + 2);
    let (xi, bi) = (alpha.index_of("x")?, alpha.index_of("β")?);
    first_failure((0..=max).flat_map(|n| (0..=n / 2).map(move |k| (n, k))).map(|(n, k)| {
        let m = mu(n, k, &beta)?;
        let bad = m.is_zero() || m.terms().keys().any(|w| w.count(xi) != n || w.count(bi) != 2);
        Ok(bad.then(|| json!({ "n": n, "k": k, "mu": m.to_json() })))
    }))
}

fn lacle(p: &Params) -> Result<Verdict> {
    let max = get(p, "max_pq")?;
    let t = VTable::build(max);
    first_failure((0..=max).flat_map(|s| (0..=s).map(move |q| (s - q, q))).map(|(pp, q)| {
        let o = lie::lacle(pp, q, pp + q + 2, &t)?;
        Ok((!o.holds()).then(|| json!({ "p": pp, "q": q, "direct": o.direct.to_json(), "predicted": o.predicted.to_json() })))
    }))
}

fn independence(p: &Params) -> Result<Verdict> {
    let max = get(p, "max_n")?;
    first_failure((1..=max).map(|n| {
        let o = lie::independence(n, n + 2)?;
        Ok((!o.holds()).then(|| json!(o)))
    }))
}

/// Derivations exercised by the Leibniz and bracket checks, by case index.
fn sample_derivation(rng: &mut rand_chacha::ChaCha8Rng, i: usize, t: usize) -> Result<(derivation::Derivation, std::sync::Arc<GradedAlphabet>)> {
    Ok(match i % 6 {
        0 => (theta(i % 4, t)?, GradedAlphabet::xb()),
        1 => (models::partial0_abx(t)?, GradedAlphabet::abx()),
        2 => (models::partial1_abx(t)?, GradedAlphabet::abx()),
        3 => (models::geometric_model(4, t)?.differential, GradedAlphabet::abx()),
        4 => {
            let a = GradedAlphabet::xb();
            (random::derivation(rng, &a, 2, t)?, a)
        }
        _ => {
            let a = GradedAlphabet::abx();
            (random::derivation(rng, &a, 2, t)?, a)
        }
    })
}

fn leibniz(p: &Params) -> Result<Verdict> {
    let (cases, max_len) = (get(p, "cases")?, get(p, "max_len")?);
    let mut rng = random::rng(seed(p));
    let t = 2 * max_len + 6;
    first_failure((0..cases).map(|i| {
        let (d, alpha) = sample_derivation(&mut rng, i, t)?;
        let u = random::homogeneous(&mut rng, &alpha, max_len, t);
        let v = random::homogeneous(&mut rng, &alpha, max_len, t);
        Ok((!leibniz_holds(&d, &u, &v)?).then(|| json!({ "case": i, "u": u.to_json(), "v": v.to_json() })))
    }))
}

fn derivation_bracket_agrees(p: &Params) -> Result<Verdict> {
    let (cases, max_len) = (get(p, "cases")?, get(p, "max_len")?);
    let mut rng = random::rng(seed(p));
    let t = max_len + 8;
    first_failure((0..cases).map(|i| {
        let (d1, alpha) = sample_derivation(&mut rng, i, t)?;
        let d2 = if alpha.as_ref() == GradedAlphabet::xb().as_ref() {
            random::derivation(&mut rng, &alpha, 2, t)?
        } else {
            models::partial1_abx(t)?.combine(&random::derivation(&mut rng, &alpha, 2, t)?, &Rational::one())?
        };
        let u = random::homogeneous(&mut rng, &alpha, max_len, t);
        let br = derivation_bracket(&d1, &d2)?.apply(&u)?;
        let sign = Rational::sign_pow(d1.degree() as i64 * d2.degree() as i64);
        let expect = compose(&d1, &d2, &u)?.combine(&compose(&d2, &d1, &u)?, &-sign)?;
        Ok((br != expect).then(|| json!({ "case": i, "u": u.to_json(), "bracket": br.to_json(), "commutator": expect.to_json() })))
    }))
}

fn d0_squared(p: &Params) -> Result<Verdict> {
    let (cases, max_len) = (get(p, "cases")?, get(p, "max_len")?);
    let mut rng = random::rng(seed(p));
    let t = max_len;
    let d0s = [(theta(0, t)?, GradedAlphabet::xb()), (models::partial0_abx(t)?, GradedAlphabet::abx())];
    for (d0, alpha) in &d0s {
        for g in 0..alpha.len() as u8 {
            let gen = Element::generator(alpha, alpha.name(g), t)?;
            if !d0.apply(&d0.apply(&gen)?)?.is_zero() {
                return Ok(Verdict::fail(json!({ "generator": alpha.name(g) })));
            }
        }
    }
    first_failure((0..cases).map(|i| {
        let (d0, alpha) = &d0s[i % 2];
        let u = random::homogeneous(&mut rng, alpha, max_len, t);
        let sq = d0.apply(&d0.apply(&u)?)?;
        Ok((!sq.is_zero()).then(|| json!({ "case": i, "u": u.to_json(), "d0_squared": sq.to_json() })))
    }))
}

fn theta_composition(p: &Params) -> Result<Verdict> {
    let max = get(p, "max_pq")?;
    let t = VTable::build(max);
    let mut typos = Vec::new();
    for s in 1..=max {
        for q in 1..=s {
            let pp = s - q;
            let o = derivation::theta_composition(pp, q, s + 1, &t)?;
            match &o.coordinates {
                None => {
                    return Ok(Verdict::fail(json!({ "p": pp, "q": q, "not_in_span": o.computed.to_json() })));
                }
                Some(c) if c != &o.printed => {
                    typos.push(json!({ "p": pp, "q": q, "computed": c, "printed": o.printed }));
                }
                Some(_) => {}
            }
        }
    }
    if typos.is_empty() {
        Ok(Verdict::pass())
    } else {
        Ok(Verdict::pass_with(json!({ "typo_reports": typos })))
    }
}

fn acyclicity(p: &Params) -> Result<Verdict> {
    let (cases, max) = (get(p, "cases")?, get(p, "max_n")?);
    let mut parts = Vec::new();
    for n in 0..=max {
        let o = derivation::acyclicity(n, n + 2)?;
        if !o.holds() {
            return Ok(Verdict::fail(json!(o)));
        }
        parts.push(acyclicity_parts(n, n + 2)?);
    }
    let mut rng = random::rng(seed(p));
    first_failure((0..cases).map(|i| {
        let n = i % (max + 1);
        let (boundary, cycles, _) = &parts[n];
        let coeffs: Vec<Rational> = cycles.iter().map(|_| random::rational(&mut rng)).collect();
        let z = linalg::linear_combination(&coeffs, cycles)?;
        Ok(proportionality(&z, boundary)?.is_none().then(|| json!({ "case": i, "n": n, "cycle": z.to_json() })))
    }))
}

fn worked_values(_: &Params) -> Result<Verdict> {
    let t = 5;
    let g = AbxGenerators::new(t);
    let d1 = models::partial1_abx(t)?;
    let ad_bb = g.x.bracket(&g.beta.bracket(&g.beta)?)?;
    let got = d1.apply(&d1.apply(&g.x)?)?;
    let expect = ad_bb.scale(&Rational::frac(-1, 8));
    if got != expect {
        return Ok(Verdict::fail(elements(&[("d1_squared_x", &got), ("expected", &expect)])));
    }
    let got = models::partial0_abx(t)?.apply(&lie::ad_pow(&g.x, 2, &g.beta)?)?;
    let expect = ad_bb.scale(&Rational::frac(3, 2));
    if got != expect {
        return Ok(Verdict::fail(elements(&[("d0_xxb", &got), ("expected", &expect)])));
    }
    Ok(Verdict::pass())
}

fn main_theorem(p: &Params) -> Result<Verdict> {
    let o = models::main_theorem(get(p, "max")?, get(p, "truncation")?)?;
    if o.holds() {
        return Ok(Verdict::pass());
    }
    let bad: Vec<Value> = o
        .mismatches()
        .into_iter()
        .map(|i| json!({ "i": i, "lambda": o.lambdas[i], "bernoulli": o.bernoulli[i] }))
        .collect();
    Ok(Verdict::fail(json!({ "mismatches": bad })))
}

fn inductive_certificates(p: &Params) -> Result<Verdict> {
    let built = models::inductive_build(get(p, "max")?, get(p, "truncation")?)?;
    let ok = built.lambdas[0] == Rational::one()
        && built.lambdas[1] == Rational::frac(-1, 2)
        && built.certificates.iter().all(|c| c.proportionality_ok && (c.step % 2 == 0 || c.cycle_was_zero))
        && built.lambdas.iter().enumerate().skip(3).step_by(2).all(|(_, l)| l.is_zero());
    Ok(if ok { Verdict::pass() } else { Verdict::fail(json!(built)) })
}

fn geometric_flatness(p: &Params) -> Result<Verdict> {
    let model = models::geometric_model(get(p, "max")?, get(p, "truncation")?)?;
    let o = models::d_squared(&model)?;
    if o.holds() {
        return Ok(Verdict::pass());
    }
    let component = o.first_failure().unwrap_or_else(|| Element::zero(model.differential.alphabet(), model.truncation));
    Ok(Verdict::fail(json!({
        "failing_lengths": o.failing_lengths,
        "d2a": o.d2a.to_json(),
        "d2b": o.d2b.to_json(),
        "first_failing_component": component.to_json(),
    })))
}

fn mutation_guard(_: &Params) -> Result<Verdict> {
    let mut coeffs = BernoulliTable::build(14).values().to_vec();
    coeffs[2] = Rational::frac(1, 7);
    let model = IntervalModel::from_coefficients(coeffs, 16)?;
    let o = models::d_squared(&model)?;
    if !o.holds() && o.failing_lengths.first() == Some(&3) {
        Ok(Verdict::pass())
    } else {
        Ok(Verdict::fail(json!({ "failing_lengths": o.failing_lengths, "expected_first": 3 })))
    }
}

fn partial1_anticommute(p: &Params) -> Result<Verdict> {
    let max = get(p, "max_n")?;
    first_failure((2..=max).map(|n| {
        let v = models::partial1_anticommute(n, n + 3)?;
        Ok((!v.is_zero()).then(|| json!({ "n": n, "anticommutator": v.to_json() })))
    }))
}

fn partial1_restriction(p: &Params) -> Result<Verdict> {
    let (cases, max_len) = (get(p, "cases")?, get(p, "max_len")?);
    let t = max_len + 1;
    let (alpha, x, beta) = xb_generators(t);
    let mut samples = vec![beta.clone(), x.clone(), x.bracket(&beta)?];
    let mut rng = random::rng(seed(p));
    samples.extend((0..cases).map(|_| random::homogeneous(&mut rng, &alpha, max_len, t)));
    first_failure(samples.iter().enumerate().map(|(i, s)| {
        Ok((!models::partial1_restriction_check(s)?).then(|| json!({ "case": i, "sample": s.to_json() })))
    }))
}

fn cross_alphabet(p: &Params) -> Result<Verdict> {
    let max = get(p, "max_n")?;
    let t = max + 3;
    let built = models::inductive_build(max + 1, t)?;
    first_failure((3..=max + 1).map(|step| {
        let o = models::cross_alphabet(step, &built.lambdas, t)?;
        Ok((!o.holds()).then(|| json!({ "step": step, "xb_image": o.xb_image.to_json(), "abx": o.abx.to_json() })))
    }))
}

/// The operator projection is the oracle; the printed three-sum relation is
/// compared to it both in total and term by term.
fn euler_type_relations(p: &Params) -> Result<Verdict> {
    let max = get(p, "max_n")?;
    let mut typos = Vec::new();
    for n in (4..=max).step_by(2) {
        let table = VTable::build(n);
        let proj = models::operator_projection(n, n + 1)?;
        for k in 0..proj.width() {
            if !proj.holds(k) {
                return Ok(Verdict::fail(json!({ "n": n, "k": k, "operator_total": proj.total(k) })));
            }
            let printed = sequences::bernoulli_v_relation_sides(n, k)?;
            let term_mismatch: Vec<Value> = proj
                .terms
                .iter()
                .filter_map(|(i, _, coords)| {
                    let c = sequences::printed_relation_coefficient(&table, n, k as i64, *i);
                    (c != coords[k]).then(|| json!({ "i": i, "printed": c, "computed": coords[k] }))
                })
                .collect();
            if !printed.holds() || !term_mismatch.is_empty() {
                typos.push(json!({ "n": n, "k": k, "printed_sides": sides(&printed.lhs, &printed.rhs), "terms": term_mismatch }));
            }
        }
    }
    if typos.is_empty() {
        Ok(Verdict::pass())
    } else {
        Ok(Verdict::pass_with(json!({ "typo_reports": typos })))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn defaults(def: &CheckDef) -> Params {
        def.defaults.iter().map(|(k, v)| (k.to_string(), *v)).collect()
    }

    #[test]
    fn names_are_unique() {
        for (i, c) in REGISTRY.iter().enumerate() {
            assert!(REGISTRY[..i].iter().all(|d| d.name != c.name), "{}", c.name);
        }
    }

    #[test]
    fn cheap_checks_pass_with_defaults() {
        for name in ["vtable_reference", "bernoulli_products", "worked_values", "mutation_guard", "euler"] {
            let def = lookup(name).unwrap();
            let v = (def.run)(&defaults(def)).unwrap();
            assert!(v.pass, "{name}: {:?}", v.witness);
        }
    }

    #[test]
    fn markdown_grid_parsing() {
        let grid = parse_markdown_grid(&VTable::build(7).to_markdown());
        assert_eq!(grid.len(), 8);
        assert_eq!(grid[6][2], "9/2");
        assert_eq!(grid[0][1], "");
    }

    #[test]
    fn missing_parameter_is_an_error() {
        assert!(euler(&Params::new()).is_err());
        let mut p = Params::new();
        p.insert("max_n".into(), -3);
        assert!(euler(&p).is_err());
    }
}

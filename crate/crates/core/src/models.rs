//! The inductive and geometric models of the interval.
//!
//! The inductive builder runs on the `(x, β)` alphabet. The step producing
//! `λ_2` needs the quadratic part `∂_1`, which is not internal to that
//! alphabet, so it runs on `(a, b, x)`. From step 3 on the `∂_1` terms cancel
//! in pairs (`∂_1 ∂_n + ∂_n ∂_1 = 0` on `x`), which
//! [`partial1_anticommute`] checks independently.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use crate::arith::{factorial, Rational};
use crate::derivation::{theta, Derivation};
use crate::error::{Error, Result};
use crate::lie::{ad_pow, xb_generators, MuSolver};
use crate::linalg::proportionality;
use crate::sequences::BernoulliTable;
use crate::tensor::{Element, GradedAlphabet};

fn inv_factorial(n: usize) -> Rational {
    Rational::from_bigints(BigInt::one(), factorial(n as u64)).expect("n! > 0")
}

fn require_truncation(needed: usize, got: usize) -> Result<()> {
    if got < needed {
        return Err(Error::TruncationTooSmall { needed, got });
    }
    Ok(())
}

/// Generators of the `(a, b, x)` alphabet plus `β = b - a`.
pub struct AbxGenerators {
    pub alphabet: Arc<GradedAlphabet>,
    pub a: Element,
    pub b: Element,
    pub x: Element,
    pub beta: Element,
}

impl AbxGenerators {
    pub fn new(truncation: usize) -> Self {
        let alphabet = GradedAlphabet::abx();
        let a = Element::generator(&alphabet, "a", truncation).unwrap();
        let b = Element::generator(&alphabet, "b", truncation).unwrap();
        let x = Element::generator(&alphabet, "x", truncation).unwrap();
        let beta = b.sub(&a).unwrap();
        AbxGenerators { alphabet, a, b, x, beta }
    }

    /// Images of `x` and `β` for pushing `(x, β)` elements into `(a, b, x)`.
    pub fn xb_images(&self) -> [Element; 2] {
        [self.x.clone(), self.beta.clone()]
    }

    fn half_self_bracket(&self, e: &Element) -> Element {
        e.bracket(e).unwrap().scale(&Rational::frac(-1, 2))
    }
}

/// `∂_0`: `x ↦ b - a`, `a, b ↦ 0`.
pub fn partial0_abx(truncation: usize) -> Result<Derivation> {
    let g = AbxGenerators::new(truncation);
    Derivation::from_named(&g.alphabet, -1, truncation, [("x", g.beta.clone())])
}

/// `∂_1`: `a ↦ -[a,a]/2`, `b ↦ -[b,b]/2`, `x ↦ [x, a+b]/2`.
pub fn partial1_abx(truncation: usize) -> Result<Derivation> {
    let g = AbxGenerators::new(truncation);
    let dx = g.x.bracket(&g.a.add(&g.b)?)?.scale(&Rational::frac(1, 2));
    Derivation::from_named(
        &g.alphabet,
        -1,
        truncation,
        [("a", g.half_self_bracket(&g.a)), ("b", g.half_self_bracket(&g.b)), ("x", dx)],
    )
}

/// `x ↦ c * ad_x^n(b - a)`, zero on `a, b`.
pub fn graded_piece_abx(n: usize, c: &Rational, truncation: usize) -> Result<Derivation> {
    let g = AbxGenerators::new(truncation);
    let dx = ad_pow(&g.x, n, &g.beta)?.scale(c);
    Derivation::from_named(&g.alphabet, -1, truncation, [("x", dx)])
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StepCertificate {
    pub step: usize,
    pub cycle_was_zero: bool,
    pub eta: Rational,
    pub proportionality_ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ModelCoefficients {
    pub lambdas: Vec<Rational>,
    pub certificates: Vec<StepCertificate>,
}

/// `Σ_{i+j=step, 2<=i,j} (λ_i/i!)(λ_j/j!) θ_i θ_j (x)` over `(x, β)`.
pub fn xb_cycle(step: usize, lambdas: &[Rational], truncation: usize) -> Result<Element> {
    let (alpha, x, beta) = xb_generators(truncation);
    let mut cycle = Element::zero(&alpha, truncation);
    for i in 2..=step.saturating_sub(2) {
        let j = step - i;
        let w = &lambdas[i] * inv_factorial(i) * &lambdas[j] * inv_factorial(j);
        if w.is_zero() {
            continue;
        }
        let inner = ad_pow(&x, j, &beta)?;
        cycle = cycle.combine(&theta(i, truncation)?.apply(&inner)?, &w)?;
    }
    Ok(cycle)
}

/// `Σ_{i+j=step, 1<=i,j} ∂_i ∂_j (x)` over `(a, b, x)`, with `∂_1` the full
/// quadratic part and `∂_i x = (λ_i/i!) ad_x^i(b - a)` for `i >= 2`.
pub fn abx_cycle(step: usize, lambdas: &[Rational], truncation: usize) -> Result<Element> {
    let g = AbxGenerators::new(truncation);
    let piece = |i: usize| -> Result<Derivation> {
        if i == 1 {
            partial1_abx(truncation)
        } else {
            graded_piece_abx(i, &(&lambdas[i] * inv_factorial(i)), truncation)
        }
    };
    let mut cycle = Element::zero(&g.alphabet, truncation);
    for i in 1..step {
        let j = step - i;
        let term = piece(i)?.apply(&piece(j)?.apply(&g.x)?)?;
        cycle = cycle.add(&term)?;
    }
    Ok(cycle.length_component(step + 1))
}

/// Runs the degree-by-degree construction up to `λ_max`.
pub fn inductive_build(max: usize, truncation: usize) -> Result<ModelCoefficients> {
    if max < 2 {
        return Err(Error::InvalidArgument(format!("inductive_build needs N >= 2, got {max}")));
    }
    require_truncation(max + 2, truncation)?;
    let mut lambdas = vec![Rational::one(), Rational::frac(-1, 2)];
    let mut certificates = Vec::new();

    for step in 2..=max {
        let (cycle, boundary) = if step == 2 {
            let g = AbxGenerators::new(truncation);
            let d1 = partial1_abx(truncation)?;
            let cycle = d1.apply(&d1.apply(&g.x)?)?;
            let boundary = partial0_abx(truncation)?.apply(&ad_pow(&g.x, 2, &g.beta)?)?;
            (cycle, boundary)
        } else {
            let (_, x, beta) = xb_generators(truncation);
            let cycle = xb_cycle(step, &lambdas, truncation)?;
            let boundary = theta(0, truncation)?.apply(&ad_pow(&x, step, &beta)?)?;
            (cycle, boundary)
        };
        let cycle_was_zero = cycle.is_zero();
        if step % 2 == 1 && !cycle_was_zero {
            return Err(Error::OddCycleNonzero { step });
        }
        let eta = proportionality(&cycle, &boundary)?.ok_or(Error::ProportionalityFailed { step })?;
        let lambda = -Rational::from(factorial(step as u64)) * &eta;
        lambdas.push(lambda);
        certificates.push(StepCertificate { step, cycle_was_zero, eta, proportionality_ok: true });
    }
    Ok(ModelCoefficients { lambdas, certificates })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MainTheoremOutcome {
    pub lambdas: Vec<Rational>,
    pub bernoulli: Vec<Rational>,
}

impl MainTheoremOutcome {
    /// Indices where `λ_i != B_i`.
    pub fn mismatches(&self) -> Vec<usize> {
        (0..self.lambdas.len()).filter(|&i| self.lambdas[i] != self.bernoulli[i]).collect()
    }

    pub fn holds(&self) -> bool {
        self.lambdas.len() == self.bernoulli.len() && self.mismatches().is_empty()
    }
}

pub fn main_theorem(max: usize, truncation: usize) -> Result<MainTheoremOutcome> {
    let built = inductive_build(max, truncation)?;
    let bernoulli = BernoulliTable::build(max).values().to_vec();
    Ok(MainTheoremOutcome { lambdas: built.lambdas, bernoulli })
}

pub fn main_theorem_check(max: usize) -> Result<bool> {
    Ok(main_theorem(max, max + 2)?.holds())
}

/// A differential on `(a, b, x)` of the interval shape.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalModel {
    pub coefficients: Vec<Rational>,
    pub truncation: usize,
    pub differential: Derivation,
}

impl IntervalModel {
    /// `∂a = -[a,a]/2`, `∂b = -[b,b]/2`,
    /// `∂x = ad_x(b) + Σ_i (c_i / i!) ad_x^i(b - a)`.
    pub fn from_coefficients(coefficients: Vec<Rational>, truncation: usize) -> Result<Self> {
        if coefficients.is_empty() {
            return Err(Error::InvalidArgument("at least one coefficient required".into()));
        }
        require_truncation(coefficients.len() + 1, truncation)?;
        let g = AbxGenerators::new(truncation);
        let mut dx = g.x.bracket(&g.b)?;
        let mut power = g.beta.clone();
        for (i, c) in coefficients.iter().enumerate() {
            if i > 0 {
                power = g.x.bracket(&power)?;
            }
            dx = dx.combine(&power, &(c * inv_factorial(i)))?;
        }
        let differential = Derivation::from_named(
            &g.alphabet,
            -1,
            truncation,
            [("a", g.half_self_bracket(&g.a)), ("b", g.half_self_bracket(&g.b)), ("x", dx)],
        )?;
        Ok(IntervalModel { coefficients, truncation, differential })
    }

    pub fn from_inductive(built: &ModelCoefficients, truncation: usize) -> Result<Self> {
        Self::from_coefficients(built.lambdas.clone(), truncation)
    }

    /// Highest coefficient index `M`.
    pub fn order(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn generator(&self, name: &str) -> Result<Element> {
        Element::generator(self.differential.alphabet(), name, self.truncation)
    }

    pub fn apply(&self, u: &Element) -> Result<Element> {
        self.differential.apply(u)
    }
}

/// Geometric model with Bernoulli coefficients `B_0 ..= B_M`.
pub fn geometric_model(order: usize, truncation: usize) -> Result<IntervalModel> {
    require_truncation(order + 2, truncation)?;
    IntervalModel::from_coefficients(BernoulliTable::build(order).values().to_vec(), truncation)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DSquaredOutcome {
    pub d2a: Element,
    pub d2b: Element,
    pub d2x: Element,
    /// Largest word length asserted, `M + 1`.
    pub checked_up_to: usize,
    pub failing_lengths: Vec<usize>,
}

impl DSquaredOutcome {
    pub fn holds(&self) -> bool {
        self.d2a.is_zero() && self.d2b.is_zero() && self.failing_lengths.is_empty()
    }

    pub fn first_failure(&self) -> Option<Element> {
        self.failing_lengths.first().map(|&l| self.d2x.length_component(l))
    }
}

/// `∂²` on the generators; lengths of `∂²x` above `M + 1` depend on
/// coefficients the model does not carry and are not asserted.
pub fn d_squared(model: &IntervalModel) -> Result<DSquaredOutcome> {
    let order = model.order();
    require_truncation(order + 2, model.truncation)?;
    let sq = |name: &str| -> Result<Element> { model.apply(&model.apply(&model.generator(name)?)?) };
    let d2x = sq("x")?;
    let checked_up_to = order + 1;
    let failing_lengths = (1..=checked_up_to).filter(|&l| !d2x.length_component(l).is_zero()).collect();
    Ok(DSquaredOutcome { d2a: sq("a")?, d2b: sq("b")?, d2x, checked_up_to, failing_lengths })
}

pub fn d_squared_check(model: &IntervalModel) -> Result<bool> {
    Ok(d_squared(model)?.holds())
}

/// `(∂_1 ∂_n + ∂_n ∂_1)(x)` with `∂_n x = ad_x^n(b - a)`.
pub fn partial1_anticommute(n: usize, truncation: usize) -> Result<Element> {
    if n < 2 {
        return Err(Error::InvalidArgument("partial1 anticommutator needs n >= 2".into()));
    }
    require_truncation(n + 3, truncation)?;
    let g = AbxGenerators::new(truncation);
    let d1 = partial1_abx(truncation)?;
    let dn = graded_piece_abx(n, &Rational::one(), truncation)?;
    d1.apply(&dn.apply(&g.x)?)?.add(&dn.apply(&d1.apply(&g.x)?)?)
}

pub fn partial1_anticommute_check(n: usize, truncation: usize) -> Result<bool> {
    Ok(partial1_anticommute(n, truncation)?.is_zero())
}

/// Pushes an `(x, β)` element into `(a, b, x)` and checks
/// `∂_1(s) = -[a + b, s] / 2`.
pub fn partial1_restriction_check(sample: &Element) -> Result<bool> {
    if sample.alphabet().as_ref() != GradedAlphabet::xb().as_ref() {
        return Err(Error::AlphabetMismatch);
    }
    let t = sample.truncation();
    let g = AbxGenerators::new(t);
    let s = sample.substitute(&g.xb_images())?;
    let lhs = partial1_abx(t)?.apply(&s)?;
    let rhs = g.a.add(&g.b)?.bracket(&s)?.scale(&Rational::frac(-1, 2));
    Ok(lhs == rhs)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossAlphabetOutcome {
    pub step: usize,
    pub xb_image: Element,
    pub abx: Element,
}

impl CrossAlphabetOutcome {
    pub fn holds(&self) -> bool {
        self.xb_image == self.abx
    }
}

/// Compares the builder's `(x, β)` cycle at `step >= 3`, pushed into
/// `(a, b, x)`, with the full computation including the `∂_1` terms.
pub fn cross_alphabet(step: usize, lambdas: &[Rational], truncation: usize) -> Result<CrossAlphabetOutcome> {
    if step < 3 || step > lambdas.len() {
        return Err(Error::InvalidArgument(format!("cross-alphabet step {step} out of range")));
    }
    require_truncation(step + 1, truncation)?;
    let g = AbxGenerators::new(truncation);
    let xb_image = xb_cycle(step, lambdas, truncation)?.substitute(&g.xb_images())?;
    let abx = abx_cycle(step, lambdas, truncation)?;
    Ok(CrossAlphabetOutcome { step, xb_image, abx })
}

/// `μ_{n-1,·}` coordinates of each term of `∂_0 ∂_n(x) + Σ_{i=2}^{n-2} ∂_i ∂_{n-i}(x)`
/// with Bernoulli coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectionOutcome {
    pub n: usize,
    /// `(i, weight, coordinates of θ_i θ_{n-i}(x))`; `i = 0` is the `∂_0 ∂_n` term.
    pub terms: Vec<(usize, Rational, Vec<Rational>)>,
}

impl ProjectionOutcome {
    /// Coordinate `k` of the whole operator sum.
    pub fn total(&self, k: usize) -> Rational {
        self.terms.iter().map(|(_, w, c)| w * &c[k]).sum()
    }

    pub fn holds(&self, k: usize) -> bool {
        self.total(k).is_zero()
    }

    pub fn width(&self) -> usize {
        (self.n - 1) / 2 + 1
    }
}

pub fn operator_projection(n: usize, truncation: usize) -> Result<ProjectionOutcome> {
    if n <= 2 || !n.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!("expected an even n > 2, got {n}")));
    }
    require_truncation(n + 1, truncation)?;
    let b = BernoulliTable::build(n);
    let (_, x, beta) = xb_generators(truncation);
    let solver = MuSolver::new(n - 1, truncation)?;
    let mut terms = Vec::new();
    for i in std::iter::once(0).chain(2..=n - 2) {
        let weight = if i == 0 { b.scaled(n) } else { b.scaled(i) * b.scaled(n - i) };
        let value = theta(i, truncation)?.apply(&ad_pow(&x, n - i, &beta)?)?;
        let coords = solver.coordinates(&value)?.ok_or(Error::NotInSpan)?;
        terms.push((i, weight, coords));
    }
    Ok(ProjectionOutcome { n, terms })
}

pub fn operator_projection_check(n: usize, k: usize) -> Result<bool> {
    let o = operator_projection(n, n + 1)?;
    if k >= o.width() {
        return Err(Error::InvalidArgument(format!("k = {k} out of range for n = {n}")));
    }
    Ok(o.holds(k))
}

#[derive(Debug, Clone, Serialize)]
pub struct CoefficientRecord {
    pub i: usize,
    pub value: Rational,
}

/// `{"alphabet", "truncation", "coefficients", "certificates"}`.
#[derive(Debug, Clone, Serialize)]
pub struct ModelDump {
    pub alphabet: &'static str,
    pub truncation: usize,
    pub coefficients: Vec<CoefficientRecord>,
    pub certificates: Vec<StepCertificate>,
}

impl ModelDump {
    pub fn inductive(built: &ModelCoefficients, truncation: usize) -> Self {
        ModelDump {
            alphabet: "xb",
            truncation,
            coefficients: records(&built.lambdas),
            certificates: built.certificates.clone(),
        }
    }

    pub fn geometric(model: &IntervalModel) -> Self {
        ModelDump {
            alphabet: "abx",
            truncation: model.truncation,
            coefficients: records(&model.coefficients),
            certificates: Vec::new(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("dump serializes")
    }
}

fn records(values: &[Rational]) -> Vec<CoefficientRecord> {
    values.iter().enumerate().map(|(i, v)| CoefficientRecord { i, value: v.clone() }).collect()
}

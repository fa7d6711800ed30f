//! Adjoint powers, the `mu_{n,k}` elements and the checks built on them.

use std::sync::Arc;

use serde::Serialize;

use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::linalg::{self, Echelon};
use crate::sequences::VTable;
use crate::tensor::{Element, GradedAlphabet};

/// `ad_g^k(v)`: `k` left brackets by `g`.
pub fn ad_pow(g: &Element, k: usize, v: &Element) -> Result<Element> {
    let mut out = v.clone();
    for _ in 0..k {
        if out.is_zero() {
            break;
        }
        out = g.bracket(&out)?;
    }
    Ok(out)
}

fn require_truncation(needed: usize, got: usize) -> Result<()> {
    if got < needed {
        return Err(Error::TruncationTooSmall { needed, got });
    }
    Ok(())
}

/// `mu_{n,k}(gamma) = ad_x^{n-2k}([ad_x^k gamma, ad_x^k gamma])`, for a
/// degree `-1` element `gamma` over an alphabet containing `x`.
pub fn mu(n: usize, k: usize, gamma: &Element) -> Result<Element> {
    if 2 * k > n {
        return Err(Error::InvalidArgument(format!("mu needs 2k <= n, got n={n}, k={k}")));
    }
    if gamma.homogeneous_degree() != Some(-1) {
        return Err(Error::NotHomogeneous { expected: -1 });
    }
    let x = Element::generator(gamma.alphabet(), "x", gamma.truncation())?;
    let inner = ad_pow(&x, k, gamma)?;
    let sq = inner.bracket(&inner)?;
    ad_pow(&x, n - 2 * k, &sq)
}

/// Standard generators of the `(x, β)` alphabet at the given truncation.
pub fn xb_generators(truncation: usize) -> (Arc<GradedAlphabet>, Element, Element) {
    let alpha = GradedAlphabet::xb();
    let x = Element::generator(&alpha, "x", truncation).unwrap();
    let beta = Element::generator(&alpha, "β", truncation).unwrap();
    (alpha, x, beta)
}

/// `[mu_{n,0}(β), .., mu_{n,n/2}(β)]` over the `(x, β)` alphabet.
pub fn mu_basis(n: usize, truncation: usize) -> Result<Vec<Element>> {
    require_truncation(n + 2, truncation)?;
    let (_, _, beta) = xb_generators(truncation);
    (0..=n / 2).map(|k| mu(n, k, &beta)).collect()
}

/// Coordinates of `target` in the `mu_{n,·}(β)` basis.
pub fn mu_coordinates(target: &Element, n: usize) -> Result<Option<Vec<Rational>>> {
    let basis = mu_basis(n, target.truncation())?;
    linalg::solve_in_span(target, &basis)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IndependenceOutcome {
    pub n: usize,
    pub rank: usize,
    pub expected: usize,
}

impl IndependenceOutcome {
    pub fn holds(&self) -> bool {
        self.rank == self.expected
    }
}

/// Rank of `{mu_{n,k}(β) : 0 <= k <= n/2}` against `n/2 + 1`.
pub fn independence(n: usize, truncation: usize) -> Result<IndependenceOutcome> {
    if n == 0 {
        return Err(Error::InvalidArgument("independence check needs n >= 1".into()));
    }
    let basis = mu_basis(n, truncation)?;
    Ok(IndependenceOutcome { n, rank: linalg::rank(&basis)?, expected: n / 2 + 1 })
}

pub fn independence_check(n: usize, truncation: usize) -> Result<bool> {
    Ok(independence(n, truncation)?.holds())
}

/// Both sides of `[ad_x^p β, ad_x^q β] = sum_k v(|p-q|, k) mu_{p+q, min(p,q)+k}(β)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LacleOutcome {
    pub p: usize,
    pub q: usize,
    pub direct: Element,
    pub predicted: Element,
}

impl LacleOutcome {
    pub fn holds(&self) -> bool {
        self.direct == self.predicted
    }
}

pub fn lacle(p: usize, q: usize, truncation: usize, table: &VTable) -> Result<LacleOutcome> {
    require_truncation(p + q + 2, truncation)?;
    let (alpha, x, beta) = xb_generators(truncation);
    let left = ad_pow(&x, p, &beta)?;
    let right = ad_pow(&x, q, &beta)?;
    let direct = left.bracket(&right)?;
    let diff = p.abs_diff(q);
    let low = p.min(q);
    let mut predicted = Element::zero(&alpha, truncation);
    for k in 0..=diff / 2 {
        let c = table.get(diff, k as i64);
        if !c.is_zero() {
            predicted = predicted.combine(&mu(p + q, low + k, &beta)?, &c)?;
        }
    }
    Ok(LacleOutcome { p, q, direct, predicted })
}

pub fn lacle_check(p: usize, q: usize, truncation: usize) -> Result<bool> {
    Ok(lacle(p, q, truncation, &VTable::build(p.abs_diff(q)))?.holds())
}

/// Incremental echelon over a `mu` basis, reusable across many targets.
pub struct MuSolver {
    pub n: usize,
    echelon: Echelon,
}

impl MuSolver {
    pub fn new(n: usize, truncation: usize) -> Result<Self> {
        let mut echelon = Echelon::new();
        for e in mu_basis(n, truncation)? {
            echelon.insert(&e)?;
        }
        Ok(MuSolver { n, echelon })
    }

    pub fn coordinates(&self, target: &Element) -> Result<Option<Vec<Rational>>> {
        self.echelon.express(target)
    }
}

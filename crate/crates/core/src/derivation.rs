//! Graded derivations given by their values on generators.

use std::sync::Arc;

use serde::Serialize;

use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::lie::{ad_pow, mu_basis, xb_generators, MuSolver};
use crate::linalg;
use crate::sequences::VTable;
use crate::tensor::{Element, GradedAlphabet, Word};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivation {
    alphabet: Arc<GradedAlphabet>,
    degree: i32,
    values: Vec<Element>,
}

impl Derivation {
    /// `values[g]` is the image of generator `g`; each must be homogeneous of
    /// degree `|g| + degree` and share the alphabet and truncation.
    pub fn new(alphabet: &Arc<GradedAlphabet>, degree: i32, values: Vec<Element>) -> Result<Self> {
        if values.len() != alphabet.len() {
            return Err(Error::InvalidArgument("one value per generator required".into()));
        }
        let trunc = values.first().map(Element::truncation);
        for (g, val) in values.iter().enumerate() {
            if val.alphabet() != alphabet {
                return Err(Error::AlphabetMismatch);
            }
            if Some(val.truncation()) != trunc {
                return Err(Error::TruncationMismatch(trunc.unwrap_or(0), val.truncation()));
            }
            let expected = alphabet.degree(g as u8) + degree;
            if !val.is_homogeneous_of(expected) {
                return Err(Error::NotHomogeneous { expected });
            }
        }
        Ok(Derivation { alphabet: Arc::clone(alphabet), degree, values })
    }

    /// Builds from `(generator name, value)` pairs; unnamed generators map to zero.
    pub fn from_named(
        alphabet: &Arc<GradedAlphabet>,
        degree: i32,
        truncation: usize,
        named: impl IntoIterator<Item = (&'static str, Element)>,
    ) -> Result<Self> {
        let mut values = vec![Element::zero(alphabet, truncation); alphabet.len()];
        for (name, val) in named {
            values[alphabet.index_of(name)? as usize] = val;
        }
        Self::new(alphabet, degree, values)
    }

    pub fn degree(&self) -> i32 {
        self.degree
    }

    pub fn alphabet(&self) -> &Arc<GradedAlphabet> {
        &self.alphabet
    }

    pub fn value(&self, g: u8) -> &Element {
        &self.values[g as usize]
    }

    pub fn value_of(&self, name: &str) -> Result<&Element> {
        Ok(self.value(self.alphabet.index_of(name)?))
    }

    /// Leibniz extension: on `g_1 .. g_m` the `i`-th letter is replaced by
    /// `D(g_i)` with sign `(-1)^{|D| (|g_1| + .. + |g_{i-1}|)}`.
    pub fn apply(&self, u: &Element) -> Result<Element> {
        if u.alphabet() != &self.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        let trunc = u.truncation();
        let odd_d = self.degree.rem_euclid(2) == 1;
        let mut out = Element::zero(&self.alphabet, trunc);
        for (w, c) in u.terms() {
            let letters = w.letters();
            let mut prefix_deg = 0i32;
            for (i, &g) in letters.iter().enumerate() {
                let negate = odd_d && prefix_deg.rem_euclid(2) == 1;
                let coeff = if negate { -c } else { c.clone() };
                for (img, a) in self.values[g as usize].terms() {
                    if letters.len() - 1 + img.len() > trunc {
                        continue;
                    }
                    let mut v = Vec::with_capacity(letters.len() - 1 + img.len());
                    v.extend_from_slice(&letters[..i]);
                    v.extend_from_slice(img.letters());
                    v.extend_from_slice(&letters[i + 1..]);
                    out.add_term(Word(v), &(a * &coeff));
                }
                prefix_deg += self.alphabet.degree(g);
            }
        }
        Ok(out)
    }

    /// Truncation used for the generator values.
    pub fn truncation(&self) -> usize {
        self.values.first().map(Element::truncation).unwrap_or(0)
    }

    /// `self + c * other`, same degree required.
    pub fn combine(&self, other: &Derivation, c: &Rational) -> Result<Derivation> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        if self.degree != other.degree {
            return Err(Error::InvalidArgument("derivations of different degree".into()));
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a.combine(b, c))
            .collect::<Result<Vec<_>>>()?;
        Derivation::new(&self.alphabet, self.degree, values)
    }

    pub fn scale(&self, c: &Rational) -> Derivation {
        Derivation {
            alphabet: Arc::clone(&self.alphabet),
            degree: self.degree,
            values: self.values.iter().map(|v| v.scale(c)).collect(),
        }
    }
}

pub fn derive(d: &Derivation, u: &Element) -> Result<Element> {
    d.apply(u)
}

/// `d1(d2(u))`. The composite is not a derivation, so it is only ever evaluated.
pub fn compose(d1: &Derivation, d2: &Derivation, u: &Element) -> Result<Element> {
    if d1.alphabet != d2.alphabet {
        return Err(Error::AlphabetMismatch);
    }
    d1.apply(&d2.apply(u)?)
}

/// `[d1, d2] = d1 d2 - (-1)^{|d1||d2|} d2 d1`, recorded on generators.
pub fn derivation_bracket(d1: &Derivation, d2: &Derivation) -> Result<Derivation> {
    if d1.alphabet != d2.alphabet {
        return Err(Error::AlphabetMismatch);
    }
    let sign = Rational::sign_pow((d1.degree as i64) * (d2.degree as i64));
    let values = (0..d1.alphabet.len() as u8)
        .map(|g| {
            let a = d1.apply(d2.value(g))?;
            let b = d2.apply(d1.value(g))?;
            a.combine(&b, &-sign.clone())
        })
        .collect::<Result<Vec<_>>>()?;
    Derivation::new(&d1.alphabet, d1.degree + d2.degree, values)
}

/// `D[u,v] == [Du, v] + (-1)^{|D||u|} [u, Dv]` for homogeneous `u`.
pub fn leibniz_holds(d: &Derivation, u: &Element, v: &Element) -> Result<bool> {
    let du_deg = u.homogeneous_degree().unwrap_or(0);
    let lhs = d.apply(&u.bracket(v)?)?;
    let sign = Rational::sign_pow(d.degree as i64 * du_deg as i64);
    let rhs = d.apply(u)?.bracket(v)?.combine(&u.bracket(&d.apply(v)?)?, &sign)?;
    Ok(lhs == rhs)
}

/// `θ_n`: `x ↦ ad_x^n(β)`, `β ↦ 0`, degree `-1`, over the `(x, β)` alphabet.
pub fn theta(n: usize, truncation: usize) -> Result<Derivation> {
    if truncation < n + 1 {
        return Err(Error::TruncationTooSmall { needed: n + 1, got: truncation });
    }
    let (alpha, x, beta) = xb_generators(truncation);
    Derivation::from_named(&alpha, -1, truncation, [("x", ad_pow(&x, n, &beta)?)])
}

/// Coefficients of `θ_p θ_q (x)` on `mu_{p+q-1,k}(β)` according to the
/// printed closed formulas (split at `p >= q`).
pub fn printed_theta_coefficients(p: usize, q: usize, table: &VTable) -> Vec<Rational> {
    let m = p + q - 1;
    let (p_, q_) = (p as i64, q as i64);
    (0..=(m / 2) as i64)
        .map(|k| {
            if p >= q {
                (0..q_).map(|i| table.get_signed(p_ - i, k - i)).sum()
            } else {
                let first: Rational = (0..q_ - p_).map(|i| table.get_signed(q_ - p_ - 1 - i, k - p_)).sum();
                let second: Rational = (1..=p_).map(|i| table.get_signed(i, k - p_ + i)).sum();
                first + second
            }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThetaCompositionOutcome {
    pub p: usize,
    pub q: usize,
    pub computed: Element,
    /// `mu_{p+q-1,·}` coordinates of `computed`; `None` if outside the span.
    pub coordinates: Option<Vec<Rational>>,
    pub printed: Vec<Rational>,
}

impl ThetaCompositionOutcome {
    pub fn contained(&self) -> bool {
        self.coordinates.is_some()
    }

    pub fn matches_printed(&self) -> bool {
        self.coordinates.as_ref() == Some(&self.printed)
    }
}

pub fn theta_composition(p: usize, q: usize, truncation: usize, table: &VTable) -> Result<ThetaCompositionOutcome> {
    if q == 0 {
        return Err(Error::InvalidArgument("theta composition check needs q >= 1".into()));
    }
    let needed = p + q + 1;
    if truncation < needed {
        return Err(Error::TruncationTooSmall { needed, got: truncation });
    }
    let (_, x, _) = xb_generators(truncation);
    let computed = compose(&theta(p, truncation)?, &theta(q, truncation)?, &x)?;
    let solver = MuSolver::new(p + q - 1, truncation)?;
    let coordinates = solver.coordinates(&computed)?;
    Ok(ThetaCompositionOutcome { p, q, computed, coordinates, printed: printed_theta_coefficients(p, q, table) })
}

/// True when the tensor computation agrees with the printed formula.
pub fn theta_composition_check(p: usize, q: usize, truncation: usize) -> Result<bool> {
    let table = VTable::build(p + q);
    Ok(theta_composition(p, q, truncation, &table)?.matches_printed())
}

/// Acyclicity of `∂_0` on the bidegree with `n` letters `x` and two `β`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AcyclicityOutcome {
    pub n: usize,
    pub dimension: usize,
    pub kernel_dim: usize,
    pub boundary_rank: usize,
    pub boundary_is_cycle: bool,
}

impl AcyclicityOutcome {
    pub fn holds(&self) -> bool {
        self.boundary_is_cycle && self.kernel_dim == self.boundary_rank
    }
}

/// The Lie span of the bidegree is `{mu_{n,k}(β)}`; boundaries come from the
/// one-dimensional degree `-1` piece spanned by `ad_x^{n+1}(β)`.
pub fn acyclicity(n: usize, truncation: usize) -> Result<AcyclicityOutcome> {
    let (boundary, cycles_basis, dimension) = acyclicity_parts(n, truncation)?;
    let d0 = theta(0, truncation)?;
    let boundary_is_cycle = d0.apply(&boundary)?.is_zero();
    let boundary_rank = linalg::rank(std::slice::from_ref(&boundary))?;
    Ok(AcyclicityOutcome { n, dimension, kernel_dim: cycles_basis.len(), boundary_rank, boundary_is_cycle })
}

/// `(∂_0 ad_x^{n+1} β, basis of ∂_0-cycles in the mu span, span dimension)`.
pub fn acyclicity_parts(n: usize, truncation: usize) -> Result<(Element, Vec<Element>, usize)> {
    if truncation < n + 2 {
        return Err(Error::TruncationTooSmall { needed: n + 2, got: truncation });
    }
    let (_, x, beta) = xb_generators(truncation);
    let d0 = theta(0, truncation)?;
    let basis = mu_basis(n, truncation)?;
    let images = basis.iter().map(|m| d0.apply(m)).collect::<Result<Vec<_>>>()?;
    let cycles = linalg::relations(&images)?
        .iter()
        .map(|r| linalg::linear_combination(r, &basis))
        .collect::<Result<Vec<_>>>()?;
    let boundary = d0.apply(&ad_pow(&x, n + 1, &beta)?)?;
    let dimension = linalg::rank(&basis)?;
    Ok((boundary, cycles, dimension))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::mu;

    #[test]
    fn theta_values() {
        let (_, x, beta) = xb_generators(5);
        assert_eq!(theta(0, 5).unwrap().apply(&x).unwrap(), beta);
        assert!(theta(3, 5).unwrap().apply(&beta).unwrap().is_zero());
        assert_eq!(theta(2, 5).unwrap().apply(&x).unwrap(), ad_pow(&x, 2, &beta).unwrap());
        assert!(matches!(theta(5, 5), Err(Error::TruncationTooSmall { .. })));
    }

    #[test]
    fn d0_on_double_bracket() {
        let (_, x, beta) = xb_generators(5);
        let d0 = theta(0, 5).unwrap();
        let xxb = ad_pow(&x, 2, &beta).unwrap();
        let expect = x.bracket(&beta.bracket(&beta).unwrap()).unwrap().scale(&Rational::frac(3, 2));
        assert_eq!(d0.apply(&xxb).unwrap(), expect);
        assert!(d0.apply(&beta).unwrap().is_zero());
    }

    #[test]
    fn compositions() {
        let (_, x, beta) = xb_generators(6);
        for p in 0..4 {
            assert!(compose(&theta(p, 6).unwrap(), &theta(0, 6).unwrap(), &x).unwrap().is_zero());
        }
        let t1 = theta(1, 6).unwrap();
        let expect = mu(1, 0, &beta).unwrap().scale(&Rational::frac(1, 2));
        assert_eq!(compose(&t1, &t1, &x).unwrap(), expect);
    }

    #[test]
    fn bracket_of_derivations() {
        let (_, x, _) = xb_generators(6);
        let d0 = theta(0, 6).unwrap();
        let dd = derivation_bracket(&d0, &d0).unwrap();
        assert_eq!(dd.degree(), -2);
        assert!(dd.value_of("x").unwrap().is_zero());
        let t2 = theta(2, 6).unwrap();
        let br = derivation_bracket(&t2, &d0).unwrap();
        let expect = compose(&t2, &d0, &x).unwrap().add(&compose(&d0, &t2, &x).unwrap()).unwrap();
        assert_eq!(br.apply(&x).unwrap(), expect);
    }

    #[test]
    fn printed_theta_examples() {
        let t = VTable::build(8);
        assert_eq!(printed_theta_coefficients(2, 1, &t), vec![Rational::frac(1, 2), Rational::from_int(-1)]);
        assert_eq!(printed_theta_coefficients(1, 1, &t), vec![Rational::frac(1, 2)]);
        // p = 0 gives (n+1)/2 at k = 0
        assert_eq!(printed_theta_coefficients(0, 5, &t)[0], Rational::from_int(3));
    }

    #[test]
    fn theta_composition_examples() {
        let t = VTable::build(8);
        let o = theta_composition(2, 1, 4, &t).unwrap();
        assert_eq!(o.coordinates, Some(vec![Rational::frac(1, 2), Rational::from_int(-1)]));
        assert!(o.matches_printed());
        let o = theta_composition(1, 1, 3, &t).unwrap();
        assert!(o.matches_printed());
        let o = theta_composition(1, 3, 5, &t).unwrap();
        assert!(o.contained());
        assert!(theta_composition(1, 0, 5, &t).is_err());
    }

    #[test]
    fn acyclicity_small() {
        for n in 0..=8 {
            let o = acyclicity(n, n + 2).unwrap();
            assert!(o.holds(), "{o:?}");
            assert_eq!(o.dimension, n / 2 + 1);
        }
    }
}

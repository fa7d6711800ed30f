//! Sparse elements of the tensor algebra on a graded alphabet.
//!
//! Lie elements are handled through the commutator embedding, so a Lie
//! element is just an [`Element`] whose terms happen to lie in the free Lie
//! subalgebra. Every element carries a truncation length; words longer than
//! it are dropped by every operation.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::arith::Rational;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Generator {
    pub name: String,
    pub degree: i32,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GradedAlphabet {
    generators: Vec<Generator>,
}

impl GradedAlphabet {
    pub fn new<S: Into<String>>(gens: impl IntoIterator<Item = (S, i32)>) -> Result<Arc<Self>> {
        let generators: Vec<Generator> = gens
            .into_iter()
            .map(|(name, degree)| Generator { name: name.into(), degree })
            .collect();
        for (i, g) in generators.iter().enumerate() {
            if generators[..i].iter().any(|h| h.name == g.name) {
                return Err(Error::InvalidArgument(format!("duplicate generator {:?}", g.name)));
            }
        }
        if generators.len() > u8::MAX as usize {
            return Err(Error::InvalidArgument("too many generators".into()));
        }
        Ok(Arc::new(GradedAlphabet { generators }))
    }

    /// `[x:0, β:-1]`
    pub fn xb() -> Arc<Self> {
        Self::new([("x", 0), ("β", -1)]).unwrap()
    }

    /// `[a:-1, b:-1, x:0]`
    pub fn abx() -> Arc<Self> {
        Self::new([("a", -1), ("b", -1), ("x", 0)]).unwrap()
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn degree(&self, letter: u8) -> i32 {
        self.generators[letter as usize].degree
    }

    pub fn name(&self, letter: u8) -> &str {
        &self.generators[letter as usize].name
    }

    pub fn index_of(&self, name: &str) -> Result<u8> {
        self.generators
            .iter()
            .position(|g| g.name == name)
            .map(|i| i as u8)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }
}

/// A tensor monomial, stored as generator indices. Ordering is
/// lexicographic on the index sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<u8>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letter(g: u8) -> Self {
        Word(vec![g])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn degree(&self, alphabet: &GradedAlphabet) -> i32 {
        self.0.iter().map(|&g| alphabet.degree(g)).sum()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Number of occurrences of `g`.
    pub fn count(&self, g: u8) -> usize {
        self.0.iter().filter(|&&l| l == g).count()
    }

    pub fn render(&self, alphabet: &GradedAlphabet) -> String {
        self.0.iter().map(|&g| alphabet.name(g)).collect()
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct Element {
    alphabet: Arc<GradedAlphabet>,
    terms: BTreeMap<Word, Rational>,
    truncation: usize,
}

/// One serialized term: `{"word": "xβx", "coeff": "p/q"}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TermRecord {
    pub word: String,
    pub coeff: Rational,
}

#[inline]
fn parity(d: i32) -> bool {
    d.rem_euclid(2) == 1
}

impl Element {
    pub fn zero(alphabet: &Arc<GradedAlphabet>, truncation: usize) -> Self {
        Element { alphabet: Arc::clone(alphabet), terms: BTreeMap::new(), truncation }
    }

    pub fn generator(alphabet: &Arc<GradedAlphabet>, name: &str, truncation: usize) -> Result<Self> {
        let g = alphabet.index_of(name)?;
        Ok(Self::monomial(alphabet, Word::letter(g), Rational::one(), truncation))
    }

    pub fn monomial(alphabet: &Arc<GradedAlphabet>, word: Word, coeff: Rational, truncation: usize) -> Self {
        let mut e = Self::zero(alphabet, truncation);
        e.add_term(word, &coeff);
        e
    }

    /// Builds an element from `(word, coefficient)` pairs; repeated words add up.
    pub fn from_terms(
        alphabet: &Arc<GradedAlphabet>,
        truncation: usize,
        terms: impl IntoIterator<Item = (Word, Rational)>,
    ) -> Self {
        let mut e = Self::zero(alphabet, truncation);
        for (w, c) in terms {
            e.add_term(w, &c);
        }
        e
    }

    pub fn alphabet(&self) -> &Arc<GradedAlphabet> {
        &self.alphabet
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn terms(&self) -> &BTreeMap<Word, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, word: &Word) -> Rational {
        self.terms.get(word).cloned().unwrap_or_else(Rational::zero)
    }

    /// Adds `c * word`, pruning zeros and over-length words.
    pub fn add_term(&mut self, word: Word, c: &Rational) {
        if c.is_zero() || word.len() > self.truncation {
            return;
        }
        match self.terms.entry(word) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_compatible(&self, other: &Element) -> Result<()> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        if self.truncation != other.truncation {
            return Err(Error::TruncationMismatch(self.truncation, other.truncation));
        }
        Ok(())
    }

    /// `self + c * other`.
    pub fn combine(&self, other: &Element, c: &Rational) -> Result<Element> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        if !c.is_zero() {
            for (w, a) in &other.terms {
                out.add_term(w.clone(), &(a * c));
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Element) -> Result<Element> {
        self.combine(other, &Rational::one())
    }

    pub fn sub(&self, other: &Element) -> Result<Element> {
        self.combine(other, &-Rational::one())
    }

    pub fn scale(&self, c: &Rational) -> Element {
        if c.is_zero() {
            return Self::zero(&self.alphabet, self.truncation);
        }
        Element {
            alphabet: Arc::clone(&self.alphabet),
            terms: self.terms.iter().map(|(w, a)| (w.clone(), a * c)).collect(),
            truncation: self.truncation,
        }
    }

    pub fn neg(&self) -> Element {
        self.scale(&-Rational::one())
    }

    /// Concatenation product in the tensor algebra.
    pub fn tensor(&self, other: &Element) -> Result<Element> {
        self.check_compatible(other)?;
        let mut out = Self::zero(&self.alphabet, self.truncation);
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                if u.len() + v.len() <= self.truncation {
                    out.add_term(u.concat(v), &(a * b));
                }
            }
        }
        Ok(out)
    }

    /// Graded commutator `[u, v] = uv - (-1)^{|u||v|} vu`, applied per pair of
    /// words so that non-homogeneous operands are handled bilinearly.
    pub fn bracket(&self, other: &Element) -> Result<Element> {
        self.check_compatible(other)?;
        let alpha = &self.alphabet;
        let mut out = Self::zero(alpha, self.truncation);
        for (u, a) in &self.terms {
            let du = parity(u.degree(alpha));
            for (v, b) in &other.terms {
                if u.len() + v.len() > self.truncation {
                    continue;
                }
                let ab = a * b;
                out.add_term(u.concat(v), &ab);
                let odd = du && parity(v.degree(alpha));
                // -(-1)^{|u||v|}: + when both odd
                if odd {
                    out.add_term(v.concat(u), &ab);
                } else {
                    out.add_term(v.concat(u), &-ab);
                }
            }
        }
        Ok(out)
    }

    /// `Some(d)` when every stored word has degree `d`; `None` for zero or
    /// mixed-degree elements.
    pub fn homogeneous_degree(&self) -> Option<i32> {
        let mut degs = self.terms.keys().map(|w| w.degree(&self.alphabet));
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    /// Zero counts as homogeneous of every degree.
    pub fn is_homogeneous_of(&self, degree: i32) -> bool {
        self.terms.keys().all(|w| w.degree(&self.alphabet) == degree)
    }

    /// Component made of the words of exactly `len` letters.
    pub fn length_component(&self, len: usize) -> Element {
        Element {
            alphabet: Arc::clone(&self.alphabet),
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.len() == len)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
            truncation: self.truncation,
        }
    }

    pub fn max_len(&self) -> usize {
        self.terms.keys().map(Word::len).max().unwrap_or(0)
    }

    /// Leading (smallest) word with its coefficient.
    pub fn leading(&self) -> Option<(&Word, &Rational)> {
        self.terms.iter().next()
    }

    /// Same terms under a different truncation; words above the new bound are dropped.
    pub fn with_truncation(&self, truncation: usize) -> Element {
        Element {
            alphabet: Arc::clone(&self.alphabet),
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.len() <= truncation)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
            truncation,
        }
    }

    /// Algebra map sending each generator to the given image (indexed like
    /// this element's alphabet) and extending multiplicatively.
    pub fn substitute(&self, images: &[Element]) -> Result<Element> {
        let target = images.first().ok_or_else(|| Error::InvalidArgument("no images".into()))?;
        if images.len() != self.alphabet.len() {
            return Err(Error::InvalidArgument("one image per generator required".into()));
        }
        for img in images {
            target.check_compatible(img)?;
        }
        let alpha = target.alphabet();
        let trunc = target.truncation();
        let mut out = Element::zero(alpha, trunc);
        let unit = Element::monomial(alpha, Word::empty(), Rational::one(), trunc);
        for (w, c) in &self.terms {
            let mut prod = unit.clone();
            for &g in w.letters() {
                prod = prod.tensor(&images[g as usize])?;
                if prod.is_zero() {
                    break;
                }
            }
            out = out.combine(&prod, c)?;
        }
        Ok(out)
    }

    pub fn to_records(&self) -> Vec<TermRecord> {
        self.terms
            .iter()
            .map(|(w, c)| TermRecord { word: w.render(&self.alphabet), coeff: c.clone() })
            .collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self.to_records()).expect("records serialize")
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let word = if w.is_empty() { "1".to_string() } else { w.render(&self.alphabet) };
            write!(f, "({c}){word}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(alpha: &GradedAlphabet, s: &str) -> Word {
        Word(s.chars().map(|c| alpha.index_of(&c.to_string()).unwrap()).collect())
    }

    fn xb(t: usize) -> (Arc<GradedAlphabet>, Element, Element) {
        let alpha = GradedAlphabet::xb();
        let x = Element::generator(&alpha, "x", t).unwrap();
        let b = Element::generator(&alpha, "β", t).unwrap();
        (alpha, x, b)
    }

    #[test]
    fn duplicate_names_rejected() {
        assert!(GradedAlphabet::new([("x", 0), ("x", 1)]).is_err());
    }

    #[test]
    fn combine_examples() {
        let (alpha, x, b) = xb(4);
        let xb_ = x.tensor(&b).unwrap();
        let bx = b.tensor(&x).unwrap();
        assert_eq!(xb_.combine(&bx, &Rational::zero()).unwrap(), xb_);
        assert!(xb_.combine(&xb_, &-Rational::one()).unwrap().is_zero());
        let sum = xb_.combine(&bx, &Rational::one()).unwrap();
        assert_eq!(sum.num_terms(), 2);
        assert_eq!(sum.coeff(&w(&alpha, "xβ")), Rational::one());
    }

    #[test]
    fn combine_rejects_mismatch() {
        let (_, x, _) = xb(4);
        let other = Element::generator(&GradedAlphabet::abx(), "x", 4).unwrap();
        assert_eq!(x.combine(&other, &Rational::one()), Err(Error::AlphabetMismatch));
        let x5 = x.with_truncation(5);
        assert_eq!(x.add(&x5), Err(Error::TruncationMismatch(4, 5)));
    }

    #[test]
    fn bracket_examples() {
        let (alpha, x, b) = xb(4);
        assert!(x.bracket(&x).unwrap().is_zero());
        let bb = b.bracket(&b).unwrap();
        assert_eq!(bb, Element::monomial(&alpha, w(&alpha, "ββ"), Rational::from_int(2), 4));
        let xb_ = x.bracket(&b).unwrap();
        let expect = Element::from_terms(
            &alpha,
            4,
            [(w(&alpha, "xβ"), Rational::one()), (w(&alpha, "βx"), -Rational::one())],
        );
        assert_eq!(xb_, expect);
    }

    #[test]
    fn truncation_drops_long_words() {
        let (_, x, b) = xb(2);
        let xb_ = x.bracket(&b).unwrap();
        assert_eq!(xb_.num_terms(), 2);
        assert!(x.bracket(&xb_).unwrap().is_zero());
    }

    #[test]
    fn homogeneity() {
        let (_, x, b) = xb(4);
        assert_eq!(x.homogeneous_degree(), Some(0));
        assert_eq!(x.add(&b).unwrap().homogeneous_degree(), None);
        assert!(Element::zero(x.alphabet(), 4).is_homogeneous_of(-7));
    }

    #[test]
    fn substitute_maps_beta_to_b_minus_a() {
        let abx = GradedAlphabet::abx();
        let a = Element::generator(&abx, "a", 4).unwrap();
        let bb = Element::generator(&abx, "b", 4).unwrap();
        let xa = Element::generator(&abx, "x", 4).unwrap();
        let beta = bb.sub(&a).unwrap();
        let (_, x, b) = xb(4);
        let img = x.bracket(&b).unwrap().substitute(&[xa.clone(), beta.clone()]).unwrap();
        assert_eq!(img, xa.bracket(&beta).unwrap());
    }

    #[test]
    fn json_records() {
        let (_, x, b) = xb(4);
        let e = x.bracket(&b).unwrap();
        assert_eq!(
            e.to_json().to_string(),
            r#"[{"word":"xβ","coeff":"1/1"},{"word":"βx","coeff":"-1/1"}]"#
        );
    }
}

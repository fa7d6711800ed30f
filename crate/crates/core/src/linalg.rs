//! Exact Gaussian elimination over word coordinates.
//!
//! Rows are reduced incrementally: a row's pivot is its smallest word, and a
//! new vector is reduced by repeatedly cancelling its leading word against
//! the row pivoting there. No pivot heuristics; results are deterministic.

use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::tensor::{Element, Word};

#[derive(Debug, Clone)]
struct Row {
    vector: Element,
    /// Coefficients expressing `vector` in terms of the inserted inputs.
    combo: Vec<Rational>,
}

/// Incremental echelon basis that remembers how each row was formed.
#[derive(Debug, Clone)]
pub struct Echelon {
    rows: Vec<(Word, Row)>,
    inputs: usize,
    relations: Vec<Vec<Rational>>,
}

impl Echelon {
    pub fn new() -> Self {
        Echelon { rows: Vec::new(), inputs: 0, relations: Vec::new() }
    }

    fn pivot_row(&self, w: &Word) -> Option<&Row> {
        self.rows
            .binary_search_by(|(p, _)| p.cmp(w))
            .ok()
            .map(|i| &self.rows[i].1)
    }

    /// Reduces `v` against the current rows. Returns the remainder and the
    /// multipliers used (indexed by input), so `v = remainder + sum used_i * input_i`.
    fn reduce(&self, v: &Element, width: usize) -> Result<(Element, Vec<Rational>)> {
        let mut rem = v.clone();
        let mut used = vec![Rational::zero(); width];
        let mut floor: Option<Word> = None;
        loop {
            // first word of `rem` not yet known to be pivot-free
            let next = match &floor {
                None => rem.terms().iter().next(),
                Some(f) => rem.terms().range(f.clone()..).next(),
            };
            let Some((w, c)) = next else { break };
            let (w, c) = (w.clone(), c.clone());
            match self.pivot_row(&w) {
                Some(row) => {
                    let pc = row.vector.coeff(&w);
                    let m = c.checked_div(&pc)?;
                    rem = rem.combine(&row.vector, &-m.clone())?;
                    for (u, r) in used.iter_mut().zip(&row.combo) {
                        *u += &(r * &m);
                    }
                }
                None => {
                    let mut succ = w.0.clone();
                    succ.push(0);
                    floor = Some(Word(succ));
                }
            }
        }
        Ok((rem, used))
    }

    /// Inserts `v`; returns `true` when it increased the rank.
    pub fn insert(&mut self, v: &Element) -> Result<bool> {
        let idx = self.inputs;
        self.inputs += 1;
        for (_, row) in self.rows.iter_mut() {
            row.combo.push(Rational::zero());
        }
        for rel in self.relations.iter_mut() {
            rel.push(Rational::zero());
        }
        let (rem, used) = self.reduce(v, self.inputs)?;
        // rem = v - sum used_j input_j
        let mut combo: Vec<Rational> = used.iter().map(|u| -u).collect();
        combo[idx] = Rational::one();
        match rem.leading() {
            None => {
                self.relations.push(combo);
                Ok(false)
            }
            Some((w, _)) => {
                let w = w.clone();
                let pos = self.rows.binary_search_by(|(p, _)| p.cmp(&w)).unwrap_err();
                self.rows.insert(pos, (w, Row { vector: rem, combo }));
                Ok(true)
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Linear relations among the inserted inputs: each vector `r` satisfies
    /// `sum r_i input_i = 0`. They form a basis of the relation space.
    pub fn relations(&self) -> &[Vec<Rational>] {
        &self.relations
    }

    /// Some `c` with `target = sum c_i input_i`, or `None` when `target` is
    /// outside the span. Unique when the inputs are independent.
    pub fn express(&self, target: &Element) -> Result<Option<Vec<Rational>>> {
        let (rem, used) = self.reduce(target, self.inputs)?;
        if !rem.is_zero() {
            return Ok(None);
        }
        let mut coeffs = vec![Rational::zero(); self.inputs];
        for (c, u) in coeffs.iter_mut().zip(&used) {
            *c += u;
        }
        Ok(Some(coeffs))
    }
}

impl Default for Echelon {
    fn default() -> Self {
        Self::new()
    }
}

/// Dimension of the span.
pub fn rank(elements: &[Element]) -> Result<usize> {
    let mut ech = Echelon::new();
    for e in elements {
        ech.insert(e)?;
    }
    Ok(ech.rank())
}

/// Coordinates of `target` in the span of `basis`, if it lies there.
pub fn solve_in_span(target: &Element, basis: &[Element]) -> Result<Option<Vec<Rational>>> {
    let mut ech = Echelon::new();
    for e in basis {
        ech.insert(e)?;
    }
    ech.express(target)
}

/// Basis of `{c : sum c_i elements_i = 0}`.
pub fn relations(elements: &[Element]) -> Result<Vec<Vec<Rational>>> {
    let mut ech = Echelon::new();
    for e in elements {
        ech.insert(e)?;
    }
    Ok(ech.relations().to_vec())
}

/// `eta` with `c = eta * d`; `Some(0)` when `c = 0`; `None` when no multiple
/// works (including `c != 0, d = 0`).
pub fn proportionality(c: &Element, d: &Element) -> Result<Option<Rational>> {
    if c.alphabet() != d.alphabet() {
        return Err(Error::AlphabetMismatch);
    }
    if c.truncation() != d.truncation() {
        return Err(Error::TruncationMismatch(c.truncation(), d.truncation()));
    }
    if c.is_zero() {
        return Ok(Some(Rational::zero()));
    }
    let Some((w, dw)) = d.leading() else { return Ok(None) };
    let eta = c.coeff(w).checked_div(dw)?;
    Ok((d.scale(&eta) == *c).then_some(eta))
}

/// `sum coeffs_i * elements_i`.
pub fn linear_combination(coeffs: &[Rational], elements: &[Element]) -> Result<Element> {
    let first = elements.first().ok_or_else(|| Error::InvalidArgument("empty combination".into()))?;
    let mut out = Element::zero(first.alphabet(), first.truncation());
    for (c, e) in coeffs.iter().zip(elements) {
        out = out.combine(e, c)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::GradedAlphabet;

    fn gens() -> (Element, Element) {
        let alpha = GradedAlphabet::xb();
        (
            Element::generator(&alpha, "x", 4).unwrap(),
            Element::generator(&alpha, "β", 4).unwrap(),
        )
    }

    #[test]
    fn rank_examples() {
        let (x, b) = gens();
        let v = x.bracket(&b).unwrap();
        assert_eq!(rank(&[v.clone(), v.scale(&Rational::from_int(2))]).unwrap(), 1);
        assert_eq!(rank(&[]).unwrap(), 0);
        assert_eq!(rank(&[x.clone(), b.clone(), x.add(&b).unwrap()]).unwrap(), 2);
    }

    #[test]
    fn proportionality_examples() {
        let (x, b) = gens();
        let d = x.bracket(&b).unwrap();
        let zero = Element::zero(d.alphabet(), 4);
        assert_eq!(proportionality(&zero, &d).unwrap(), Some(Rational::zero()));
        assert_eq!(
            proportionality(&d.scale(&Rational::from_int(2)), &d).unwrap(),
            Some(Rational::from_int(2))
        );
        let extra = d.add(&b.tensor(&b).unwrap()).unwrap();
        assert_eq!(proportionality(&extra, &d).unwrap(), None);
        assert_eq!(proportionality(&d, &zero).unwrap(), None);
    }

    #[test]
    fn express_and_relations() {
        let (x, b) = gens();
        let xb = x.tensor(&b).unwrap();
        let bx = b.tensor(&x).unwrap();
        let basis = [xb.clone(), bx.clone(), xb.add(&bx).unwrap()];
        let target = xb.combine(&bx, &Rational::from_int(3)).unwrap();
        let c = solve_in_span(&target, &basis).unwrap().unwrap();
        assert_eq!(linear_combination(&c, &basis).unwrap(), target);
        assert_eq!(solve_in_span(&x, &basis).unwrap(), None);
        let rels = relations(&basis).unwrap();
        assert_eq!(rels.len(), 1);
        assert!(linear_combination(&rels[0], &basis).unwrap().is_zero());
    }
}

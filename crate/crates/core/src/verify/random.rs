//! Seeded generators for the randomized structural checks.
//!
//! Degrees in the standard alphabets are `0` or `-1`, so a word of degree `d`
//! is built from `-d` odd letters padded with even ones.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::arith::Rational;
use crate::derivation::Derivation;
use crate::error::{Error, Result};
use crate::tensor::{Element, GradedAlphabet, Word};

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

pub fn rational<R: Rng>(rng: &mut R) -> Rational {
    let mut num = 0;
    while num == 0 {
        num = rng.gen_range(-6..=6);
    }
    Rational::frac(num, rng.gen_range(1..=4))
}

fn letters_by_parity(alpha: &GradedAlphabet) -> (Vec<u8>, Vec<u8>) {
    (0..alpha.len() as u8).partition(|&g| alpha.degree(g).rem_euclid(2) == 0)
}

/// Random word with `odd` letters of degree `-1` and `even` letters of degree `0`.
pub fn word_with<R: Rng>(rng: &mut R, alpha: &GradedAlphabet, odd: usize, even: usize) -> Result<Word> {
    let (evens, odds) = letters_by_parity(alpha);
    if (odd > 0 && odds.is_empty()) || (even > 0 && evens.is_empty()) {
        return Err(Error::InvalidArgument("alphabet lacks letters of the requested parity".into()));
    }
    let mut letters: Vec<u8> = Vec::with_capacity(odd + even);
    for _ in 0..odd {
        letters.push(*odds.choose(rng).unwrap());
    }
    for _ in 0..even {
        letters.push(*evens.choose(rng).unwrap());
    }
    letters.shuffle(rng);
    Ok(Word(letters))
}

/// Homogeneous element: a few words of one degree, each of length `1..=max_len`.
pub fn homogeneous<R: Rng>(rng: &mut R, alpha: &Arc<GradedAlphabet>, max_len: usize, truncation: usize) -> Element {
    let len = rng.gen_range(1..=max_len);
    let odd = rng.gen_range(0..=len.min(2));
    homogeneous_of(rng, alpha, odd, max_len, truncation).unwrap_or_else(|_| {
        // alphabets without odd letters
        homogeneous_of(rng, alpha, 0, max_len, truncation).unwrap()
    })
}

/// Homogeneous element of degree `-odd`, words of length `odd..=max_len.max(odd)`.
pub fn homogeneous_of<R: Rng>(
    rng: &mut R,
    alpha: &Arc<GradedAlphabet>,
    odd: usize,
    max_len: usize,
    truncation: usize,
) -> Result<Element> {
    let max_len = max_len.max(odd).max(1);
    let mut out = Element::zero(alpha, truncation);
    let terms = rng.gen_range(1..=3);
    for _ in 0..terms {
        let len = rng.gen_range(odd.max(1)..=max_len);
        let w = word_with(rng, alpha, odd, len - odd)?;
        out.add_term(w, &rational(rng));
    }
    if out.is_zero() {
        let w = word_with(rng, alpha, odd, max_len.max(1) - odd)?;
        out.add_term(w, &Rational::one());
    }
    Ok(out)
}

/// Random degree `-1` derivation; generator values have length `<= max_len + 1`.
pub fn derivation<R: Rng>(rng: &mut R, alpha: &Arc<GradedAlphabet>, max_len: usize, truncation: usize) -> Result<Derivation> {
    let values = (0..alpha.len() as u8)
        .map(|g| {
            let target = -(alpha.degree(g) - 1);
            let odd = usize::try_from(target)
                .map_err(|_| Error::InvalidArgument("unsupported generator degree".into()))?;
            homogeneous_of(rng, alpha, odd, max_len + odd, truncation)
        })
        .collect::<Result<Vec<_>>>()?;
    Derivation::new(alpha, -1, values)
}

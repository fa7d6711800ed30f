//! Bernoulli numbers, the `v(n, k)` array and the pure-number identities
//! built from them.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::{binomial_ext, factorial, Rational};
use crate::error::{Error, Result};

/// `B_0 ..= B_N` under the `z / (e^z - 1)` convention (`B_1 = -1/2`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BernoulliTable {
    values: Vec<Rational>,
}

impl BernoulliTable {
    /// Uses `sum_{j=0}^{n} C(n+1, j) B_j = 0` for `n >= 1`.
    pub fn build(max_n: usize) -> Self {
        let mut values: Vec<Rational> = Vec::with_capacity(max_n + 1);
        values.push(Rational::one());
        for n in 1..=max_n {
            let acc: Rational = values
                .iter()
                .enumerate()
                .map(|(j, b)| Rational::from(binomial_ext(n as i64 + 1, j as i64)) * b)
                .sum();
            let b = -acc * Rational::frac(1, n as i64 + 1);
            values.push(b);
        }
        BernoulliTable { values }
    }

    pub fn get(&self, n: usize) -> &Rational {
        &self.values[n]
    }

    pub fn max_n(&self) -> usize {
        self.values.len() - 1
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    /// `B_n / n!`, the coefficient shape used throughout the models.
    pub fn scaled(&self, n: usize) -> Rational {
        self.values[n].clone() * Rational::from_bigints(BigInt::one(), factorial(n as u64)).unwrap()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,value\n");
        for (n, b) in self.values.iter().enumerate() {
            let _ = writeln!(out, "{n},{b}");
        }
        out
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::from("| n | B_n |\n|---|---|\n");
        for (n, b) in self.values.iter().enumerate() {
            let _ = writeln!(out, "| {n} | {} |", b.to_compact_string());
        }
        out
    }
}

pub fn bernoulli(n: usize) -> Rational {
    BernoulliTable::build(n).get(n).clone()
}

/// The band-limited array `v(n, k) = v(n-1, k) - v(n-2, k-1)`,
/// `v(0,0) = 1`, `v(1,0) = 1/2`, zero outside `0 <= k <= n/2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VTable {
    rows: Vec<Vec<Rational>>,
}

impl VTable {
    pub fn build(max_n: usize) -> Self {
        let mut table = VTable { rows: Vec::with_capacity(max_n + 1) };
        for n in 0..=max_n {
            let row = match n {
                0 => vec![Rational::one()],
                1 => vec![Rational::frac(1, 2)],
                _ => (0..=(n / 2) as i64)
                    .map(|k| table.get(n - 1, k) - table.get(n - 2, k - 1))
                    .collect(),
            };
            table.rows.push(row);
        }
        table
    }

    pub fn max_n(&self) -> usize {
        self.rows.len() - 1
    }

    /// Panics if `n` exceeds the built range.
    pub fn get(&self, n: usize, k: i64) -> Rational {
        if k < 0 || k as usize > n / 2 {
            return Rational::zero();
        }
        self.rows[n][k as usize].clone()
    }

    /// Like [`get`](Self::get) but also zero for negative `n`, which the
    /// summation formulas reach at their boundaries.
    pub fn get_signed(&self, n: i64, k: i64) -> Rational {
        if n < 0 {
            Rational::zero()
        } else {
            self.get(n as usize, k)
        }
    }

    /// `sigma(n, k) = sum_{i=0}^{n} v(i, k)`.
    pub fn sigma(&self, n: usize, k: i64) -> Rational {
        (0..=n).map(|i| self.get(i, k)).sum()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,k,value\n");
        for (n, row) in self.rows.iter().enumerate() {
            for (k, v) in row.iter().enumerate() {
                let _ = writeln!(out, "{n},{k},{v}");
            }
        }
        out
    }

    /// Markdown grid with one row per `n` and columns `v_{n,0} .. v_{n,max_n/2}`;
    /// cells outside the band are left blank.
    pub fn to_markdown(&self) -> String {
        let cols = self.max_n() / 2 + 1;
        let mut out = String::from("| n |");
        for k in 0..cols {
            let _ = write!(out, " v_{{n,{k}}} |");
        }
        out.push_str("\n|---|");
        for _ in 0..cols {
            out.push_str("---|");
        }
        out.push('\n');
        for (n, row) in self.rows.iter().enumerate() {
            let _ = write!(out, "| {n} |");
            for k in 0..cols {
                match row.get(k) {
                    Some(v) => {
                        let _ = write!(out, " {} |", v.to_compact_string());
                    }
                    None => out.push_str("  |"),
                }
            }
            out.push('\n');
        }
        out
    }
}

pub fn v(n: usize, k: i64) -> Rational {
    VTable::build(n).get(n, k)
}

/// `2 v(n,k) = (-1)^k (C(n-k, k) + C(n-k-1, k-1))`.
pub fn v_closed_form(n: usize, k: i64) -> Rational {
    let n = n as i64;
    let sum = binomial_ext(n - k, k) + binomial_ext(n - k - 1, k - 1);
    Rational::sign_pow(k) * Rational::from(sum) * Rational::frac(1, 2)
}

/// `sum_{k=0}^{n} v(n+k, k)`; zero for `n >= 2`, but not for `n = 0, 1`.
pub fn diagonal_sum(n: usize) -> Rational {
    let table = VTable::build(2 * n);
    (0..=n).map(|k| table.get(n + k, k as i64)).sum()
}

pub fn sigma(n: usize, k: i64) -> Rational {
    VTable::build(n).sigma(n, k)
}

/// `v(n, k) == -sigma(n-2, k-1)`. Holds for `k >= 1`; at `k = 0` the
/// right side reads a column that is identically zero.
pub fn check_uneautre(n: usize, k: i64) -> Result<bool> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("check_uneautre needs n >= 2, got {n}")));
    }
    let table = VTable::build(n);
    Ok(table.get(n, k) == -table.sigma(n - 2, k - 1))
}

/// Iterated partial sums: `f_0(n) = n`, `f_{k+1}(n) = sum_{i=1}^{n} f_k(i)`.
pub fn f_iter(k: usize, n: usize) -> Result<BigInt> {
    if n == 0 {
        return Err(Error::InvalidArgument("f_iter needs n >= 1".into()));
    }
    let mut values: Vec<BigInt> = (1..=n).map(BigInt::from).collect();
    for _ in 0..k {
        let mut acc = BigInt::zero();
        for v in values.iter_mut() {
            acc += &*v;
            *v = acc.clone();
        }
    }
    Ok(values.pop().unwrap())
}

/// `f_{k+1}(n) == C(n+k+1, k+2)`.
pub fn check_occagne(k: usize, n: usize) -> Result<bool> {
    let lhs = f_iter(k + 1, n)?;
    Ok(lhs == binomial_ext((n + k + 1) as i64, (k + 2) as i64))
}

fn require_even_above_two(n: usize) -> Result<()> {
    if n <= 2 || !n.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!("expected an even n > 2, got {n}")));
    }
    Ok(())
}

/// Both sides of an exact identity, kept for reporting.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentitySides {
    pub lhs: Rational,
    pub rhs: Rational,
}

impl IdentitySides {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// `-(n+1) B_n / n! = sum_{k=2}^{n-2} (B_k / k!) (B_{n-k} / (n-k)!)` for even `n > 2`.
pub fn euler_sides(n: usize) -> Result<IdentitySides> {
    require_even_above_two(n)?;
    let b = BernoulliTable::build(n);
    let lhs = -Rational::from_int(n as i64 + 1) * b.scaled(n);
    let rhs = (2..=n - 2).map(|k| b.scaled(k) * b.scaled(n - k)).sum();
    Ok(IdentitySides { lhs, rhs })
}

pub fn euler_check(n: usize) -> Result<bool> {
    Ok(euler_sides(n)?.holds())
}

/// Coefficient of `mu_{n-1,k}(beta)` that the printed relation assigns to
/// the term `d_i d_{n-i}(x)`, without the Bernoulli factors. `i = 0` is the
/// `d_0 d_n` term.
pub fn printed_relation_coefficient(table: &VTable, n: usize, k: i64, i: usize) -> Rational {
    let (n_, i_) = (n as i64, i as i64);
    if i == 0 {
        return (0..n_).map(|l| table.get_signed(l, k)).sum();
    }
    if 2 * i < n {
        if k < i_ {
            (0..=i_).map(|l| table.get_signed(l, k - i_ + l)).sum()
        } else {
            (0..=n_ - 2 * i_ - 1).map(|l| table.get_signed(l, k - i_)).sum()
        }
    } else {
        (0..=n_ - i_ - 1).map(|l| table.get_signed(i_ - l, k - l)).sum()
    }
}

/// The printed Euler-type relation projected on `mu_{n-1,k}(beta)`:
/// `-(B_n/n!) sum_{l<n} v(l,k)` against the three-part sum over `2 <= i <= n-2`.
pub fn bernoulli_v_relation_sides(n: usize, k: usize) -> Result<IdentitySides> {
    require_even_above_two(n)?;
    if k > (n - 1) / 2 {
        return Err(Error::InvalidArgument(format!("k = {k} out of range for n = {n}")));
    }
    let b = BernoulliTable::build(n);
    let table = VTable::build(n);
    let k = k as i64;
    let lhs = -b.scaled(n) * printed_relation_coefficient(&table, n, k, 0);
    let rhs = (2..=n - 2)
        .map(|i| b.scaled(i) * b.scaled(n - i) * printed_relation_coefficient(&table, n, k, i))
        .sum();
    Ok(IdentitySides { lhs, rhs })
}

pub fn bernoulli_v_relation_check(n: usize, k: usize) -> Result<bool> {
    Ok(bernoulli_v_relation_sides(n, k)?.holds())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bernoulli_listed_values() {
        let b = BernoulliTable::build(12);
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
            assert_eq!(b.get(n), &value, "B_{n}");
        }
        assert_eq!(bernoulli(7), Rational::zero());
    }

    #[test]
    fn odd_bernoulli_vanish() {
        let b = BernoulliTable::build(25);
        for k in 1..=12 {
            assert!(b.get(2 * k + 1).is_zero());
        }
    }

    #[test]
    fn v_values_and_band() {
        assert_eq!(v(6, 2), Rational::frac(9, 2));
        assert_eq!(v(4, 2), Rational::one());
        assert_eq!(v(5, 3), Rational::zero());
        assert_eq!(v(3, -1), Rational::zero());
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(v_closed_form(7, 3), Rational::frac(-7, 2));
        assert_eq!(v_closed_form(0, 0), Rational::one());
        assert_eq!(v_closed_form(6, 2), Rational::frac(9, 2));
    }

    #[test]
    fn closed_form_matches_recurrence() {
        let table = VTable::build(60);
        for n in 0..=60 {
            for k in -2..=(n as i64 / 2 + 2) {
                assert_eq!(table.get(n, k), v_closed_form(n, k), "v({n},{k})");
            }
        }
    }

    #[test]
    fn diagonal_sums() {
        assert_eq!(diagonal_sum(0), Rational::one());
        assert_eq!(diagonal_sum(1), Rational::frac(-1, 2));
        assert_eq!(diagonal_sum(2), Rational::zero());
        assert_eq!(diagonal_sum(4), Rational::zero());
        for n in 2..=30 {
            assert!(diagonal_sum(n).is_zero(), "n = {n}");
        }
    }

    #[test]
    fn sigma_values() {
        assert_eq!(sigma(4, 0), Rational::from_int(3));
        assert_eq!(sigma(0, 0), Rational::one());
        assert_eq!(sigma(2, 1), Rational::from_int(-1));
        // 2|sigma(n,0)| = n + 2
        for n in 0..20 {
            assert_eq!(sigma(n, 0) * Rational::from_int(2), Rational::from_int(n as i64 + 2));
        }
    }

    #[test]
    fn uneautre() {
        assert!(check_uneautre(2, 1).unwrap());
        assert!(check_uneautre(6, 2).unwrap());
        assert!(!check_uneautre(3, 0).unwrap());
        assert!(check_uneautre(1, 1).is_err());
        for n in 2..=40usize {
            for k in 1..=(n / 2) as i64 {
                assert!(check_uneautre(n, k).unwrap(), "({n},{k})");
            }
        }
    }

    #[test]
    fn f_iter_and_occagne() {
        assert_eq!(f_iter(0, 4).unwrap(), BigInt::from(4));
        assert_eq!(f_iter(1, 4).unwrap(), BigInt::from(10));
        assert_eq!(f_iter(2, 3).unwrap(), BigInt::from(10));
        assert!(f_iter(1, 0).is_err());
        assert!(check_occagne(0, 4).unwrap());
        assert!(check_occagne(1, 3).unwrap());
        assert!(check_occagne(2, 2).unwrap());
        for k in 0..=8 {
            for n in 1..=20 {
                assert!(check_occagne(k, n).unwrap(), "({k},{n})");
            }
        }
    }

    #[test]
    fn euler_examples() {
        let s = euler_sides(4).unwrap();
        assert_eq!(s.lhs, Rational::frac(1, 144));
        assert_eq!(s.rhs, Rational::frac(1, 144));
        let s = euler_sides(8).unwrap();
        assert_eq!(s.lhs, Rational::frac(1, 134400));
        assert!(s.holds());
        assert!(euler_check(20).unwrap());
        assert!(euler_check(3).is_err());
        assert!(euler_check(2).is_err());
        for n in (4..=30).step_by(2) {
            assert!(euler_check(n).unwrap(), "n = {n}");
        }
    }

    #[test]
    fn bernoulli_product_identities_hold() {
        let b = BernoulliTable::build(10);
        let lhs = Rational::frac(9, 2) * b.scaled(2) * b.scaled(6);
        assert_eq!(lhs, Rational::from_int(-15) * b.scaled(8));
        let lhs = Rational::frac(5, 2) * b.scaled(4) * b.scaled(6)
            + Rational::from_int(10) * b.scaled(2) * b.scaled(8);
        assert_eq!(lhs, Rational::frac(-77, 2) * b.scaled(10));
    }

    #[test]
    fn printed_relation_reduces_to_the_product_identities() {
        let t = VTable::build(10);
        // n = 8, k = 2: coefficients 9/2 on B2B6, 0 on B4^2, -15 on the left
        assert_eq!(printed_relation_coefficient(&t, 8, 2, 0), Rational::from_int(15));
        assert_eq!(printed_relation_coefficient(&t, 8, 2, 4), Rational::zero());
        assert_eq!(
            printed_relation_coefficient(&t, 8, 2, 2) + printed_relation_coefficient(&t, 8, 2, 6),
            Rational::frac(9, 2)
        );
        assert!(bernoulli_v_relation_check(8, 2).unwrap());
        assert!(bernoulli_v_relation_check(10, 2).unwrap());
        // k = 0 recovers Euler
        assert_eq!(printed_relation_coefficient(&t, 8, 0, 0), Rational::frac(9, 2));
        assert!(bernoulli_v_relation_check(8, 0).unwrap());
        assert!(bernoulli_v_relation_check(7, 0).is_err());
        assert!(bernoulli_v_relation_check(8, 4).is_err());
    }

    #[test]
    fn markdown_layout() {
        let md = VTable::build(3).to_markdown();
        assert_eq!(
            md,
            "| n | v_{n,0} | v_{n,1} |\n|---|---|---|\n| 0 | 1 |  |\n| 1 | 1/2 |  |\n| 2 | 1/2 | -1 |\n| 3 | 1/2 | -3/2 |\n"
        );
        assert!(VTable::build(2).to_csv().starts_with("n,k,value\n0,0,1/1\n"));
    }
}

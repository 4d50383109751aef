//! Graded-lexicographic monomial order with `x_m << ... << x_1`.
//!
//! Monomials are compared first by total degree; ties are broken
//! lexicographically on `(a_1, ..., a_m)`, a larger `a_1` being greater. The
//! `i`-th monomial in this order is `z_i`, with `z_0 = 1`. Ranking and
//! unranking are closed-form prefix sums of binomial coefficients; the
//! [`GradedLex`] iterator walks the order by successor steps instead and is
//! what the enumeration-based modules use.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::binomial::{binomial, narrow};
use crate::{Error, Result};

/// Exponent vector of `x_1^{a_1} ... x_m^{a_m}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Monomial {
    exponents: Vec<u32>,
}

/// Rank of a monomial in the graded-lex order, starting at 0 for `1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MonomialIndex(pub u64);

/// Number of monomial divisors of a monomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NuValue(pub u64);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Result<Self> {
        if exponents.is_empty() {
            return Err(Error::NoVariables);
        }
        Ok(Monomial { exponents })
    }

    /// The constant monomial `1` in `m` variables.
    pub fn one(m: usize) -> Self {
        assert!(m >= 1, "a monomial needs at least one variable");
        Monomial {
            exponents: vec![0; m],
        }
    }

    /// `x_var^power`, with `var` counted from 1 as in `x_1, ..., x_m`.
    pub fn power_of(m: usize, var: usize, power: u32) -> Self {
        assert!(
            (1..=m).contains(&var),
            "variable x_{var} out of range 1..={m}"
        );
        let mut a = Monomial::one(m);
        a.exponents[var - 1] = power;
        a
    }

    /// Parses a comma separated exponent list such as `1,0,2`.
    pub fn parse(text: &str) -> Result<Self> {
        let exponents = text
            .split(',')
            .map(|s| {
                s.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::MalformedExponents(text.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        Monomial::new(exponents).map_err(|_| Error::MalformedExponents(text.to_string()))
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn vars(&self) -> usize {
        self.exponents.len()
    }

    pub fn degree(&self) -> u64 {
        self.exponents.iter().map(|&e| u64::from(e)).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exponents.iter().all(|&e| e == 0)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.vars() == other.vars()
            && self
                .exponents
                .iter()
                .zip(&other.exponents)
                .all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Result<Monomial> {
        check_vars(self, other)?;
        let exponents = self
            .exponents
            .iter()
            .zip(&other.exponents)
            .map(|(a, b)| a.checked_add(*b).ok_or(Error::Overflow("monomial product")))
            .collect::<Result<Vec<_>>>()?;
        Ok(Monomial { exponents })
    }

    /// `self / other`, or `None` when `other` does not divide `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        let exponents = self
            .exponents
            .iter()
            .zip(&other.exponents)
            .map(|(a, b)| a - b)
            .collect();
        Some(Monomial { exponents })
    }

    /// Replaces `self` by its successor in the order.
    pub fn step(&mut self) {
        advance(&mut self.exponents);
    }

    /// All divisors of `self`, odometer over the box `0 <= b_l <= a_l`.
    pub fn divisors(&self) -> Divisors<'_> {
        Divisors {
            bound: self,
            current: Some(vec![0; self.vars()]),
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (l, e) in self.exponents.iter().enumerate() {
            if l > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for MonomialIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl fmt::Display for NuValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

pub struct Divisors<'a> {
    bound: &'a Monomial,
    current: Option<Vec<u32>>,
}

impl Iterator for Divisors<'_> {
    type Item = Monomial;

    fn next(&mut self) -> Option<Monomial> {
        let current = self.current.as_mut()?;
        let out = Monomial {
            exponents: current.clone(),
        };
        let mut l = current.len();
        loop {
            if l == 0 {
                self.current = None;
                break;
            }
            l -= 1;
            if current[l] < self.bound.exponents[l] {
                current[l] += 1;
                break;
            }
            current[l] = 0;
        }
        Some(out)
    }
}

fn check_vars(u: &Monomial, v: &Monomial) -> Result<()> {
    if u.vars() != v.vars() {
        return Err(Error::DimensionMismatch {
            left: u.vars(),
            right: v.vars(),
        });
    }
    Ok(())
}

/// Graded-lex comparison; fails when the monomials have different `m`.
pub fn compare(u: &Monomial, v: &Monomial) -> Result<Ordering> {
    check_vars(u, v)?;
    Ok(u.degree()
        .cmp(&v.degree())
        .then_with(|| u.exponents.cmp(&v.exponents)))
}

/// Index of the first monomial of degree `d`: `C(m+d-1, m)`.
pub fn degree_start(d: u64, m: usize) -> Result<MonomialIndex> {
    assert!(m >= 1, "a monomial needs at least one variable");
    let m = m as i64;
    let d = i64::try_from(d).map_err(|_| Error::Overflow("degree"))?;
    let start = binomial(m + d - 1, m)?;
    Ok(MonomialIndex(narrow(start, "monomial index")?))
}

/// Number of monomials of degree exactly `d` in `vars` variables.
fn count_of_degree(d: i64, vars: i64) -> Result<u128> {
    if vars == 0 {
        return Ok(u128::from(d == 0));
    }
    binomial(d + vars - 1, vars - 1)
}

pub fn monomial_to_index(a: &Monomial) -> Result<MonomialIndex> {
    let m = a.vars() as i64;
    let mut rest = i64::try_from(a.degree()).map_err(|_| Error::Overflow("degree"))?;
    let mut rank: u128 = degree_start(rest as u64, a.vars())?.0.into();
    for (l, &e) in a.exponents[..a.vars() - 1].iter().enumerate() {
        // Monomials agreeing before position l with a smaller exponent here:
        // the tail of r variables then carries degree in (rest - e, rest].
        let r = m - l as i64 - 1;
        let e = i64::from(e);
        let below = binomial(rest + r, r)? - binomial(rest - e + r, r)?;
        rank = rank
            .checked_add(below)
            .ok_or(Error::Overflow("monomial index"))?;
        rest -= e;
    }
    Ok(MonomialIndex(narrow(rank, "monomial index")?))
}

/// Degree of `z_i`: the `d` with `C(m+d-1, m) <= i < C(m+d, m)`.
fn degree_of_index(i: u64, m: usize) -> u64 {
    let m = m as i64;
    // Binomials that overflow u128 are far above any u64 index.
    let beyond = |d: i64| binomial(m + d, m).map_or(true, |c| c > u128::from(i));
    let mut hi: i64 = 1;
    while !beyond(hi) {
        hi *= 2;
    }
    let mut lo: i64 = 0;
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if beyond(mid) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    lo as u64
}

/// The monomial `z_i` in `m` variables.
///
/// Panics if `m == 0` or if an exponent of `z_i` does not fit in `u32`.
pub fn index_to_monomial(i: MonomialIndex, m: usize) -> Monomial {
    assert!(m >= 1, "a monomial needs at least one variable");
    let d = degree_of_index(i.0, m);
    let start = degree_start(d, m).expect("degree start below the index").0;
    let mut rank = u128::from(i.0 - start);
    let mut rest = d as i64;
    let mut exponents = vec![0u32; m];
    for (l, slot) in exponents[..m - 1].iter_mut().enumerate() {
        let r = (m - l - 1) as i64;
        let mut e = 0i64;
        loop {
            let block = count_of_degree(rest - e, r).expect("block fits below the index");
            if rank < block {
                break;
            }
            rank -= block;
            e += 1;
        }
        *slot = e as u32;
        rest -= e;
    }
    exponents[m - 1] = u32::try_from(rest).expect("exponent exceeds u32");
    Monomial { exponents }
}

/// `nu(z) = prod (a_l + 1)`.
pub fn nu(a: &Monomial) -> NuValue {
    let value = a.exponents.iter().fold(1u64, |acc, &e| {
        acc.checked_mul(u64::from(e) + 1)
            .expect("divisor count overflows u64")
    });
    NuValue(value)
}

/// Counts the `j` with `z_j | z` by scanning every monomial up to `z` in the
/// order. Test oracle for [`nu`].
pub fn nu_oracle(a: &Monomial) -> NuValue {
    let count = GradedLex::new(a.vars())
        .take_while(|z| z.degree() <= a.degree())
        .filter(|z| z.divides(a))
        .count();
    NuValue(count as u64)
}

/// Walks `z_0, z_1, z_2, ...` by successor steps.
#[derive(Debug, Clone)]
pub struct GradedLex {
    next: Monomial,
}

impl GradedLex {
    pub fn new(m: usize) -> Self {
        GradedLex {
            next: Monomial::one(m),
        }
    }

    /// Starts the walk at an arbitrary monomial.
    pub fn from(start: Monomial) -> Self {
        GradedLex { next: start }
    }
}

/// The monomial immediately after `a` in the order.
pub fn successor(a: &Monomial) -> Monomial {
    let mut exponents = a.exponents.clone();
    advance(&mut exponents);
    Monomial { exponents }
}

/// Steps an exponent vector to its successor in place.
pub fn advance(exponents: &mut [u32]) {
    let m = exponents.len();
    match exponents.iter().rposition(|&e| e > 0) {
        Some(p) if p > 0 => {
            let carried = exponents[p];
            exponents[p] = 0;
            exponents[p - 1] += 1;
            exponents[m - 1] = carried - 1;
        }
        // 1 or a pure power of x_1: move on to x_m^{d+1}.
        _ => {
            let d = exponents[0];
            exponents[0] = 0;
            exponents[m - 1] = d + 1;
        }
    }
}

impl Iterator for GradedLex {
    type Item = Monomial;

    fn next(&mut self) -> Option<Monomial> {
        let following = successor(&self.next);
        Some(std::mem::replace(&mut self.next, following))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mono(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec()).unwrap()
    }

    #[test]
    fn compare_examples() {
        let x1 = Monomial::power_of(2, 1, 1);
        let x2 = Monomial::power_of(2, 2, 1);
        assert_eq!(compare(&x2, &x1).unwrap(), Ordering::Less);
        assert_eq!(compare(&x1, &x1).unwrap(), Ordering::Equal);
        let x1 = Monomial::power_of(3, 1, 1);
        let x3sq = Monomial::power_of(3, 3, 2);
        assert_eq!(compare(&x1, &x3sq).unwrap(), Ordering::Less);
        assert_eq!(
            compare(&x1, &mono(&[1, 0])),
            Err(Error::DimensionMismatch { left: 3, right: 2 })
        );
    }

    #[test]
    fn unranking_examples() {
        assert_eq!(index_to_monomial(MonomialIndex(0), 3), mono(&[0, 0, 0]));
        assert_eq!(index_to_monomial(MonomialIndex(1), 3), mono(&[0, 0, 1]));
        assert_eq!(index_to_monomial(MonomialIndex(3), 3), mono(&[1, 0, 0]));
        assert_eq!(index_to_monomial(MonomialIndex(4), 3), mono(&[0, 0, 2]));
    }

    #[test]
    fn ranking_examples() {
        assert_eq!(
            monomial_to_index(&mono(&[0, 0, 0])).unwrap(),
            MonomialIndex(0)
        );
        assert_eq!(
            monomial_to_index(&mono(&[1, 0, 0])).unwrap(),
            MonomialIndex(3)
        );
        assert_eq!(monomial_to_index(&mono(&[1, 1])).unwrap(), MonomialIndex(4));
    }

    #[test]
    fn enumeration_of_two_variables() {
        let expected = [[0, 0], [0, 1], [1, 0], [0, 2], [1, 1], [2, 0]];
        let walked: Vec<_> = GradedLex::new(2).take(6).collect();
        for (i, e) in expected.iter().enumerate() {
            assert_eq!(walked[i], mono(e));
            assert_eq!(index_to_monomial(MonomialIndex(i as u64), 2), mono(e));
        }
    }

    #[test]
    fn degree_start_examples() {
        assert_eq!(degree_start(0, 3).unwrap(), MonomialIndex(0));
        assert_eq!(degree_start(2, 3).unwrap(), MonomialIndex(4));
        assert_eq!(degree_start(1, 2).unwrap(), MonomialIndex(1));
    }

    #[test]
    fn nu_examples() {
        assert_eq!(nu(&Monomial::one(4)), NuValue(1));
        assert_eq!(nu(&mono(&[2, 1, 0])), NuValue(6));
        assert_eq!(nu(&mono(&[7])), NuValue(8));
        assert_eq!(nu_oracle(&mono(&[0, 0])), NuValue(1));
        assert_eq!(nu_oracle(&mono(&[1, 2])), NuValue(6));
        assert_eq!(nu_oracle(&mono(&[1, 1, 1])), NuValue(8));
    }

    #[test]
    fn parse_rejects_garbage() {
        assert_eq!(Monomial::parse("1, 0,2").unwrap(), mono(&[1, 0, 2]));
        assert!(Monomial::parse("").is_err());
        assert!(Monomial::parse("1,,2").is_err());
        assert!(Monomial::parse("1,-2").is_err());
    }

    #[test]
    fn univariate_index_is_degree() {
        for i in [0u64, 1, 17, u64::from(u32::MAX)] {
            let a = index_to_monomial(MonomialIndex(i), 1);
            assert_eq!(a.degree(), i);
            assert_eq!(monomial_to_index(&a).unwrap(), MonomialIndex(i));
        }
    }

    #[test]
    fn ranking_overflow_is_an_error() {
        assert!(monomial_to_index(&mono(&[u32::MAX; 6])).is_err());
    }

    #[test]
    fn walk_agrees_with_unranking() {
        for m in 1..=5 {
            for (i, z) in GradedLex::new(m).take(3000).enumerate() {
                assert_eq!(index_to_monomial(MonomialIndex(i as u64), m), z);
            }
        }
    }

    #[test]
    fn divisors_cover_the_box() {
        let a = mono(&[2, 0, 1]);
        let all: Vec<_> = a.divisors().collect();
        assert_eq!(all.len(), 6);
        assert!(all.iter().all(|b| b.divides(&a)));
        assert_eq!(all.first(), Some(&Monomial::one(3)));
        assert_eq!(all.last(), Some(&a));
    }

    proptest! {
        #[test]
        fn rank_unrank_roundtrip(i in 0u64..1_000_000, m in 1usize..=6) {
            let a = index_to_monomial(MonomialIndex(i), m);
            prop_assert_eq!(monomial_to_index(&a).unwrap(), MonomialIndex(i));
        }

        #[test]
        fn order_is_monotone_in_index(i in 0u64..200_000, gap in 1u64..500, m in 1usize..=5) {
            let u = index_to_monomial(MonomialIndex(i), m);
            let v = index_to_monomial(MonomialIndex(i + gap), m);
            prop_assert_eq!(compare(&u, &v).unwrap(), Ordering::Less);
        }

        #[test]
        fn multiplication_respects_order(i in 0u64..5000, j in 0u64..5000, k in 0u64..5000) {
            // A monomial order is compatible with multiplication.
            let (u, v, w) = (
                index_to_monomial(MonomialIndex(i), 3),
                index_to_monomial(MonomialIndex(j), 3),
                index_to_monomial(MonomialIndex(k), 3),
            );
            let lhs = compare(&u.mul(&w).unwrap(), &v.mul(&w).unwrap()).unwrap();
            prop_assert_eq!(lhs, compare(&u, &v).unwrap());
        }
    }
}

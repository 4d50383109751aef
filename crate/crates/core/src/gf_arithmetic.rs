//! Arithmetic in `GF(p^e)` as polynomials over `Z_p` modulo a monic
//! irreducible polynomial.
//!
//! Elements are stored as their coefficient vector packed in base `p`, the
//! constant term in the least significant digit. Element `k` of
//! [`FieldSpec::elements`] is the one with packed code `k`, so the enumeration
//! order is lexicographic on coefficient vectors with the constant term
//! varying fastest.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Largest field size accepted by [`field_make`].
pub const MAX_FIELD_SIZE: u64 = 1 << 16;

/// Default cap on `q^m`, the number of evaluation points.
pub const DEFAULT_MAX_CELLS: u64 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    p: u32,
    e: u32,
    /// Monic modulus, `e + 1` coefficients from the constant term up.
    modulus: Vec<u32>,
    q: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FieldElement(u32);

impl FieldElement {
    /// Packed base-`p` code of the coefficient vector.
    pub fn code(self) -> u32 {
        self.0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    (2..)
        .take_while(|d| d * d <= n)
        .all(|d| !n.is_multiple_of(d))
}

/// `GF(p^e)` with the first irreducible monic modulus of degree `e`.
///
/// Candidates are scanned in lexicographic order of their lower coefficient
/// vectors, constant term varying fastest.
pub fn field_make(p: u64, e: u32) -> Result<FieldSpec> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if e == 0 {
        return Err(Error::GuardExceeded {
            what: "field extension degree",
            value: 0,
            limit: 0,
        });
    }
    let q = (p as u128).checked_pow(e).unwrap_or(u128::MAX);
    if q > u128::from(MAX_FIELD_SIZE) {
        return Err(Error::GuardExceeded {
            what: "field size",
            value: q,
            limit: MAX_FIELD_SIZE.into(),
        });
    }
    let (p, q) = (p as u32, q as u32);
    for low in 0..q {
        let mut modulus = digits(low, p, e as usize);
        modulus.push(1);
        if is_irreducible(&modulus, p) {
            return Ok(FieldSpec { p, e, modulus, q });
        }
    }
    unreachable!("an irreducible polynomial of every degree exists over Z_{p}")
}

impl FieldSpec {
    /// A field from an explicit monic modulus (coefficients constant term
    /// first). The modulus is checked for irreducibility.
    pub fn with_modulus(p: u64, modulus: Vec<u32>) -> Result<FieldSpec> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let e = modulus.len().saturating_sub(1) as u32;
        let q = (p as u128).checked_pow(e).unwrap_or(u128::MAX);
        if q > u128::from(MAX_FIELD_SIZE) {
            return Err(Error::GuardExceeded {
                what: "field size",
                value: q,
                limit: MAX_FIELD_SIZE.into(),
            });
        }
        let p = p as u32;
        if e == 0 || modulus[e as usize] != 1 || modulus.iter().any(|&c| c >= p) {
            return Err(Error::ReducibleModulus(p.into()));
        }
        if !is_irreducible(&modulus, p) {
            return Err(Error::ReducibleModulus(p.into()));
        }
        Ok(FieldSpec {
            p,
            e,
            modulus,
            q: q as u32,
        })
    }

    pub fn p(&self) -> u64 {
        self.p.into()
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn q(&self) -> u64 {
        self.q.into()
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement(0)
    }

    pub fn one(&self) -> FieldElement {
        FieldElement(1)
    }

    /// The `k`-th element in enumeration order.
    pub fn element(&self, k: u64) -> Result<FieldElement> {
        if k >= self.q() {
            return Err(Error::InvalidElement {
                q: self.q(),
                detail: format!("index {k} out of range"),
            });
        }
        Ok(FieldElement(k as u32))
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.q).map(FieldElement)
    }

    pub fn from_coefficients(&self, coefficients: &[u32]) -> Result<FieldElement> {
        if coefficients.len() != self.e as usize || coefficients.iter().any(|&c| c >= self.p) {
            return Err(Error::InvalidElement {
                q: self.q(),
                detail: format!("coefficients {coefficients:?}"),
            });
        }
        Ok(FieldElement(pack(coefficients, self.p)))
    }

    pub fn coefficients(&self, x: FieldElement) -> Vec<u32> {
        digits(x.0, self.p, self.e as usize)
    }

    pub fn add(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        if self.e == 1 {
            return FieldElement((x.0 + y.0) % self.p);
        }
        let (a, b) = (self.coefficients(x), self.coefficients(y));
        let sum: Vec<u32> = a.iter().zip(&b).map(|(u, v)| (u + v) % self.p).collect();
        FieldElement(pack(&sum, self.p))
    }

    pub fn neg(&self, x: FieldElement) -> FieldElement {
        let neg: Vec<u32> = self
            .coefficients(x)
            .iter()
            .map(|&c| (self.p - c) % self.p)
            .collect();
        FieldElement(pack(&neg, self.p))
    }

    pub fn sub(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        self.add(x, self.neg(y))
    }

    pub fn mul(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        let p = u64::from(self.p);
        if self.e == 1 {
            return FieldElement((u64::from(x.0) * u64::from(y.0) % p) as u32);
        }
        let (a, b) = (self.coefficients(x), self.coefficients(y));
        let e = self.e as usize;
        let mut prod = vec![0u64; 2 * e - 1];
        for (i, &u) in a.iter().enumerate() {
            for (j, &v) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + u64::from(u) * u64::from(v)) % p;
            }
        }
        // Reduce with the monic modulus from the top degree down.
        for deg in (e..prod.len()).rev() {
            let lead = prod[deg];
            if lead == 0 {
                continue;
            }
            for (l, &c) in self.modulus[..e].iter().enumerate() {
                let shift = deg - e + l;
                prod[shift] = (prod[shift] + (p - lead) * u64::from(c)) % p;
            }
            prod[deg] = 0;
        }
        let reduced: Vec<u32> = prod[..e].iter().map(|&c| c as u32).collect();
        FieldElement(pack(&reduced, self.p))
    }

    /// Square-and-multiply; `x^0 = 1` for every `x`, including zero.
    pub fn pow(&self, x: FieldElement, mut exp: u64) -> FieldElement {
        let mut base = x;
        let mut acc = self.one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    pub fn inv(&self, x: FieldElement) -> Result<FieldElement> {
        if x == self.zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(x, self.q() - 2))
    }

    pub fn div(&self, x: FieldElement, y: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(x, self.inv(y)?))
    }
}

/// All `q^m` points of `GF(q)^m`, odometer order with the last coordinate
/// varying fastest. Fails when `q^m` exceeds [`DEFAULT_MAX_CELLS`].
pub fn enumerate_points(spec: &FieldSpec, m: usize) -> Result<Vec<Vec<FieldElement>>> {
    enumerate_points_limited(spec, m, DEFAULT_MAX_CELLS)
}

pub fn enumerate_points_limited(
    spec: &FieldSpec,
    m: usize,
    max_cells: u64,
) -> Result<Vec<Vec<FieldElement>>> {
    let n = point_count(spec, m, max_cells)?;
    let q = spec.q();
    let points = (0..n)
        .map(|mut code| {
            let mut point = vec![FieldElement(0); m];
            for slot in point.iter_mut().rev() {
                *slot = FieldElement((code % q) as u32);
                code /= q;
            }
            point
        })
        .collect();
    Ok(points)
}

/// `q^m`, checked against `max_cells`.
pub fn point_count(spec: &FieldSpec, m: usize, max_cells: u64) -> Result<u64> {
    let n = u32::try_from(m)
        .ok()
        .and_then(|m| u128::from(spec.q()).checked_pow(m))
        .unwrap_or(u128::MAX);
    if n > u128::from(max_cells) {
        return Err(Error::GuardExceeded {
            what: "number of points q^m",
            value: n,
            limit: max_cells.into(),
        });
    }
    Ok(n as u64)
}

fn digits(mut code: u32, p: u32, len: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push(code % p);
        code /= p;
    }
    out
}

fn pack(coefficients: &[u32], p: u32) -> u32 {
    coefficients.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// Remainder of `num` by the monic `den`, coefficients constant term first.
fn poly_rem(num: &[u32], den: &[u32], p: u32) -> Vec<u32> {
    let p = u64::from(p);
    let mut rem: Vec<u64> = num.iter().map(|&c| c.into()).collect();
    let dd = den.len() - 1;
    while rem.len() > dd {
        let lead = rem.pop().unwrap();
        if lead == 0 {
            continue;
        }
        let base = rem.len() - dd;
        for (l, &c) in den[..dd].iter().enumerate() {
            rem[base + l] = (rem[base + l] + (p - lead) * u64::from(c) % p) % p;
        }
    }
    rem.into_iter().map(|c| c as u32).collect()
}

/// Trial division by every monic polynomial of degree `1..=deg/2`.
fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let deg = poly.len() - 1;
    for d in 1..=deg / 2 {
        let count = p.pow(d as u32);
        for low in 0..count {
            let mut divisor = digits(low, p, d);
            divisor.push(1);
            if poly_rem(poly, &divisor, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const SPECS: [(u64, u32); 9] = [
        (2, 1),
        (3, 1),
        (5, 1),
        (2, 2),
        (2, 3),
        (3, 2),
        (2, 4),
        (7, 1),
        (5, 2),
    ];

    #[test]
    fn construction() {
        let f = field_make(2, 2).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 1]);
        assert_eq!(f.q(), 4);
        let f = field_make(2, 1).unwrap();
        assert_eq!(f.modulus(), &[0, 1]);
        assert_eq!(field_make(2, 3).unwrap().modulus(), &[1, 1, 0, 1]);
        assert_eq!(field_make(4, 1), Err(Error::NotPrime(4)));
        assert!(matches!(
            field_make(2, 17),
            Err(Error::GuardExceeded { .. })
        ));
        assert!(matches!(field_make(2, 0), Err(Error::GuardExceeded { .. })));
    }

    #[test]
    fn explicit_modulus_is_checked() {
        assert!(FieldSpec::with_modulus(2, vec![1, 1, 1]).is_ok());
        assert_eq!(
            FieldSpec::with_modulus(2, vec![1, 0, 1]),
            Err(Error::ReducibleModulus(2))
        );
        assert_eq!(
            FieldSpec::with_modulus(3, vec![1, 0, 2]),
            Err(Error::ReducibleModulus(3))
        );
    }

    #[test]
    fn small_examples() {
        let f4 = field_make(2, 2).unwrap();
        let x = f4.from_coefficients(&[0, 1]).unwrap();
        assert_eq!(f4.mul(x, x), f4.from_coefficients(&[1, 1]).unwrap());
        assert_eq!(f4.inv(f4.one()).unwrap(), f4.one());
        let f3 = field_make(3, 1).unwrap();
        let two = f3.element(2).unwrap();
        assert_eq!(f3.add(two, two), f3.one());
        assert_eq!(f3.inv(f3.zero()), Err(Error::DivisionByZero));
        assert!(f3.element(3).is_err());
        assert!(f4.from_coefficients(&[2, 0]).is_err());
    }

    #[test]
    fn frobenius_fixes_every_element() {
        for &(p, e) in &SPECS {
            let f = field_make(p, e).unwrap();
            for x in f.elements() {
                assert_eq!(f.pow(x, f.q()), x, "GF({p}^{e}) x={x}");
            }
        }
    }

    #[test]
    fn inverses_exhaustive() {
        for &(p, e) in &SPECS {
            let f = field_make(p, e).unwrap();
            for x in f.elements().skip(1) {
                assert_eq!(f.mul(x, f.inv(x).unwrap()), f.one());
                assert_eq!(f.add(x, f.neg(x)), f.zero());
            }
        }
    }

    #[test]
    fn point_enumeration() {
        let f2 = field_make(2, 1).unwrap();
        let pts = enumerate_points(&f2, 2).unwrap();
        let codes: Vec<Vec<u32>> = pts
            .iter()
            .map(|p| p.iter().map(|x| x.code()).collect())
            .collect();
        assert_eq!(codes, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        let f3 = field_make(3, 1).unwrap();
        let pts = enumerate_points(&f3, 1).unwrap();
        assert_eq!(pts.len(), 3);
        let f4 = field_make(2, 2).unwrap();
        let pts = enumerate_points(&f4, 3).unwrap();
        let unique: std::collections::HashSet<_> = pts.iter().collect();
        assert_eq!(unique.len(), 64);
        assert!(enumerate_points_limited(&f4, 3, 63).is_err());
        assert!(enumerate_points(&field_make(2, 16).unwrap(), 2).is_err());
    }

    fn spec_strategy() -> impl Strategy<Value = FieldSpec> {
        proptest::sample::select(SPECS.to_vec()).prop_map(|(p, e)| field_make(p, e).unwrap())
    }

    proptest! {
        #[test]
        fn field_axioms(f in spec_strategy(), a in any::<u32>(), b in any::<u32>(), c in any::<u32>()) {
            let q = f.q() as u32;
            let (a, b, c) = (FieldElement(a % q), FieldElement(b % q), FieldElement(c % q));
            prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
            prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
            prop_assert_eq!(f.mul(a, b), f.mul(b, a));
            prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
            prop_assert_eq!(f.sub(f.add(a, b), b), a);
            if b != f.zero() {
                prop_assert_eq!(f.mul(f.div(a, b).unwrap(), b), a);
            }
        }
    }
}

//! Enumeration-based constructions of the four check-monomial sets.
//!
//! Everything here walks the graded-lex order directly and never consults the
//! closed-form redundancy formulas, so these sets double as the oracles for
//! [`crate::closed_form`].

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::monomial_order::{
    compare, degree_start, index_to_monomial, nu, GradedLex, Monomial, MonomialIndex,
};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    /// Prefix up to the last monomial with `nu < 2t+1`.
    Standard,
    /// Every monomial with `nu < 2t+1`.
    FengRao,
    /// Prefix up to the last monomial that is not a product of two
    /// monomials of index at least `t`.
    GenericStandard,
    /// Every monomial that is not such a product.
    GenericImproved,
}

impl Variant {
    pub const ALL: [Variant; 4] = [
        Variant::Standard,
        Variant::FengRao,
        Variant::GenericStandard,
        Variant::GenericImproved,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Variant::Standard => "standard",
            Variant::FengRao => "feng_rao",
            Variant::GenericStandard => "generic_standard",
            Variant::GenericImproved => "generic_improved",
        }
    }

    pub fn build(self, t: u64, m: usize) -> Result<CheckSet> {
        match self {
            Variant::Standard => standard_set(t, m),
            Variant::FengRao => feng_rao_set(t, m),
            Variant::GenericStandard => generic_standard_set(t, m),
            Variant::GenericImproved => generic_improved_set(t, m),
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Variant::ALL
            .into_iter()
            .find(|v| v.as_str() == s)
            .ok_or_else(|| {
                format!("unknown variant `{s}` (expected standard, feng_rao, generic_standard or generic_improved)")
            })
    }
}

/// A set `W` of monomial indices defining the code `C_W`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckSet {
    pub variant: Variant,
    pub t: u64,
    pub m: usize,
    indices: Vec<MonomialIndex>,
}

impl CheckSet {
    /// Builds a set from indices in any order; duplicates are dropped.
    pub fn new(variant: Variant, t: u64, m: usize, mut indices: Vec<MonomialIndex>) -> Self {
        indices.sort_unstable();
        indices.dedup();
        CheckSet {
            variant,
            t,
            m,
            indices,
        }
    }

    fn prefix(variant: Variant, t: u64, m: usize, len: u64) -> Self {
        CheckSet {
            variant,
            t,
            m,
            indices: (0..len).map(MonomialIndex).collect(),
        }
    }

    /// The prefix `0..=max` of this set, tagged with `variant`.
    pub fn prefix_hull(&self, variant: Variant) -> CheckSet {
        let len = self.max().map_or(0, |i| i.0 + 1);
        CheckSet::prefix(variant, self.t, self.m, len)
    }

    pub fn indices(&self) -> &[MonomialIndex] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn max(&self) -> Option<MonomialIndex> {
        self.indices.last().copied()
    }

    pub fn contains(&self, i: MonomialIndex) -> bool {
        self.indices.binary_search(&i).is_ok()
    }

    pub fn is_subset_of(&self, other: &CheckSet) -> bool {
        self.indices.iter().all(|&i| other.contains(i))
    }

    /// True when the set is exactly `0..=max`.
    pub fn is_prefix(&self) -> bool {
        self.indices
            .iter()
            .enumerate()
            .all(|(pos, i)| i.0 == pos as u64)
    }

    pub fn monomials(&self) -> impl Iterator<Item = Monomial> + '_ {
        self.indices.iter().map(|&i| index_to_monomial(i, self.m))
    }
}

/// Indices `i` with `nu(z_i) < 2t+1`.
pub fn feng_rao_set(t: u64, m: usize) -> Result<CheckSet> {
    let bound = 2 * t + 1;
    // nu(z) >= deg(z) + 1, so nothing past degree 2t-1 qualifies.
    let mut indices = Vec::new();
    let mut z = Monomial::one(m);
    let mut i = 0u64;
    while z.degree() + 1 < bound {
        if nu(&z).0 < bound {
            indices.push(MonomialIndex(i));
        }
        z.step();
        i += 1;
    }
    Ok(CheckSet::new(Variant::FengRao, t, m, indices))
}

/// Prefix `0..=m(t)` where `m(t)` is the largest index of [`feng_rao_set`].
pub fn standard_set(t: u64, m: usize) -> Result<CheckSet> {
    Ok(feng_rao_set(t, m)?.prefix_hull(Variant::Standard))
}

/// Whether `z_i = z_j z_k` for some `j, k >= t`.
pub fn is_forbidden_product(i: MonomialIndex, t: u64, m: usize) -> Result<bool> {
    splits_above(&index_to_monomial(i, m), t)
}

/// Whether `a` splits as `b * c` with both factors of index at least `t`.
pub fn splits_above(a: &Monomial, t: u64) -> Result<bool> {
    let floor = index_to_monomial(MonomialIndex(t), a.vars());
    Ok(splits_above_monomial(a, &floor))
}

/// Whether `a = b * c` with `b` and `c` both at or above `floor` in the
/// order. Index order and monomial order agree, so this is the same test as
/// comparing indices against `t` when `floor = z_t`.
fn splits_above_monomial(a: &Monomial, floor: &Monomial) -> bool {
    let at_least = |x: &Monomial| compare(x, floor).expect("same ring") != Ordering::Less;
    let (total, low) = (a.degree(), floor.degree());
    if total < 2 * low {
        return false;
    }
    a.divisors().any(|b| {
        let d = b.degree();
        d >= low && total - d >= low && at_least(&b) && at_least(&a.div(&b).expect("b divides a"))
    })
}

/// Exclusive index bound beyond which every monomial is a forbidden product:
/// the start of degree `2 deg(z_t) + 2`. A monomial of that degree or more
/// splits into two factors of degree above `deg(z_t)`.
pub fn generic_search_bound(t: u64, m: usize) -> Result<MonomialIndex> {
    let d = index_to_monomial(MonomialIndex(t), m).degree();
    degree_start(2 * d + 2, m)
}

/// Indices `i` such that `z_i` is not `z_j z_k` for any `j, k >= t`.
pub fn generic_improved_set(t: u64, m: usize) -> Result<CheckSet> {
    if t == 0 {
        return Ok(CheckSet::new(Variant::GenericImproved, 0, m, Vec::new()));
    }
    let bound = generic_search_bound(t, m)?.0;
    let floor = index_to_monomial(MonomialIndex(t), m);
    let indices = GradedLex::new(m)
        .take(bound as usize)
        .enumerate()
        .filter(|(_, z)| !splits_above_monomial(z, &floor))
        .map(|(i, _)| MonomialIndex(i as u64))
        .collect();
    Ok(CheckSet::new(Variant::GenericImproved, t, m, indices))
}

/// Prefix `0..=m*(t)` where `m*(t)` is the largest index of
/// [`generic_improved_set`].
pub fn generic_standard_set(t: u64, m: usize) -> Result<CheckSet> {
    Ok(generic_improved_set(t, m)?.prefix_hull(Variant::GenericStandard))
}

/// `m(t)`, the last index with `nu < 2t+1`.
pub fn m_of_t(t: u64, m: usize) -> Result<MonomialIndex> {
    feng_rao_set(t, m)?.max().ok_or(Error::EmptySet("m(t)"))
}

/// `m*(t)`, the last index that is not a product of two indices `>= t`.
pub fn m_star_of_t(t: u64, m: usize) -> Result<MonomialIndex> {
    generic_improved_set(t, m)?
        .max()
        .ok_or(Error::EmptySet("m*(t)"))
}

/// Monomials of the given degree that are products `z_j z_k` with
/// `j, k >= t`, in ascending order. For `degree = 2|a|` and `2|a|+1` with
/// `z_t = a` these are the sets `P_{2|a|}` and `P_{2|a|+1}`.
pub fn products_of_degree(t: u64, m: usize, degree: u64) -> Result<Vec<Monomial>> {
    let start = degree_start(degree, m)?;
    let floor = index_to_monomial(MonomialIndex(t), m);
    Ok(GradedLex::from(index_to_monomial(start, m))
        .take_while(|z| z.degree() == degree)
        .filter(|z| splits_above_monomial(z, &floor))
        .collect())
}

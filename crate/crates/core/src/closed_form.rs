//! Explicit redundancy formulas for the four Reed-Muller variants.
//!
//! With `z_t = x_1^{a_1} ... x_m^{a_m}`, `|a| = a_1 + ... + a_m` and prefix
//! sums `S_k = a_1 + ... + a_k`:
//!
//! * `r(t) = C(2t-1+m, m)`;
//! * `r~(t)` counts `a` in `N^m` with `prod (a_l+1) < 2t+1`;
//! * if `z_t` is a pure power of `x_m`, `r*(t) = r~*(t) = C(2|a|-1+m, m)`;
//! * otherwise `r*(t) = C(2|a|+1+m, m) - |P_{2|a|+1}|` and
//!   `r~*(t) = r*(t) - |P_{2|a|}|`, where `P_d` is the set of degree-`d`
//!   products `z_j z_k` with `j, k >= t` and
//!
//! ```text
//! |P_{2|a|+1}| = sum_{k=1}^{m} C(2|a| - S_k + m - k, m - k)
//! |P_{2|a|}|   = 1 + sum_{k=1}^{m-1} sum_{j=k}^{m-1} C(2|a| - 2 - S_j - S_k + m - j, m - j)
//!                  + #{k in 1..m-1 : |a| - S_k > 0}
//! ```
//!
//! All binomials follow the zero convention of [`crate::binomial`].

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::binomial::{binomial, narrow};
use crate::monomial_order::{index_to_monomial, Monomial, MonomialIndex};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RedundancyReport {
    pub t: u64,
    pub m: usize,
    pub r: u64,
    pub r_tilde: u64,
    pub r_star: u64,
    pub r_tilde_star: u64,
}

/// Sizes of `P_{2|a|}` and `P_{2|a|+1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PCount {
    pub p_2a: u64,
    pub p_2a_plus_1: u64,
}

/// One binomial term of the generic redundancy formulas.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FormulaTerm {
    /// `C(2|a|-1+m, m)` when `z_t` is a pure power of `x_m`.
    PurePower,
    /// `C(2|a|+1+m, m)`, the monomials of degree at most `2|a|+1`.
    UpToDegree,
    /// The `k`-th summand of `|P_{2|a|+1}|`, `1 <= k <= m`.
    TopDegree { k: usize },
    /// The `(k, j)` summand of `|P_{2|a|}|`, `1 <= k <= j <= m-1`.
    DoubleDegree { k: usize, j: usize },
}

impl FormulaTerm {
    /// Every binomial term that appears for `m` variables.
    pub fn all(m: usize) -> Vec<FormulaTerm> {
        let mut terms = vec![FormulaTerm::PurePower, FormulaTerm::UpToDegree];
        terms.extend((1..=m).map(|k| FormulaTerm::TopDegree { k }));
        for k in 1..m {
            terms.extend((k..m).map(|j| FormulaTerm::DoubleDegree { k, j }));
        }
        terms
    }
}

impl fmt::Display for FormulaTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormulaTerm::PurePower => write!(f, "pure"),
            FormulaTerm::UpToDegree => write!(f, "upto"),
            FormulaTerm::TopDegree { k } => write!(f, "top:{k}"),
            FormulaTerm::DoubleDegree { k, j } => write!(f, "double:{k}:{j}"),
        }
    }
}

impl FromStr for FormulaTerm {
    type Err = String;

    /// Accepts the [`Display`](fmt::Display) forms `pure`, `upto`, `top:K`
    /// and `double:K:J`.
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let bad =
            || format!("unknown formula term `{s}` (expected pure, upto, top:K or double:K:J)");
        let parts: Vec<&str> = s.split(':').collect();
        let num = |x: &str| x.parse::<usize>().map_err(|_| bad());
        match parts.as_slice() {
            ["pure"] => Ok(FormulaTerm::PurePower),
            ["upto"] => Ok(FormulaTerm::UpToDegree),
            ["top", k] => Ok(FormulaTerm::TopDegree { k: num(k)? }),
            ["double", k, j] => Ok(FormulaTerm::DoubleDegree {
                k: num(k)?,
                j: num(j)?,
            }),
            _ => Err(bad()),
        }
    }
}

/// How a [`Mutation`] alters its term.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Perturbation {
    /// `C(n, k)` becomes `C(n + d, k)`.
    ShiftTop(i64),
    /// `C(n, k)` becomes `C(n, k + d)`.
    ShiftBottom(i64),
    /// The term is left out.
    Drop,
}

/// A deliberately wrong variant of the generic formulas, altering one
/// binomial term. Only used to check that verification notices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Mutation {
    pub term: FormulaTerm,
    pub change: Perturbation,
}

impl Mutation {
    /// Every perturbation tried per term by mutation testing.
    pub const PERTURBATIONS: [Perturbation; 5] = [
        Perturbation::ShiftTop(1),
        Perturbation::ShiftTop(-1),
        Perturbation::ShiftBottom(1),
        Perturbation::ShiftBottom(-1),
        Perturbation::Drop,
    ];
}

impl fmt::Display for Mutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.change {
            Perturbation::ShiftTop(d) => write!(f, "{}@top{d:+}", self.term),
            Perturbation::ShiftBottom(d) => write!(f, "{}@bottom{d:+}", self.term),
            Perturbation::Drop => write!(f, "{}@drop", self.term),
        }
    }
}

impl FromStr for Mutation {
    type Err = String;

    /// `TERM`, `TERM@top±D`, `TERM@bottom±D` or `TERM@drop`; a bare term
    /// means `@top+1`.
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let (term, change) = s.split_once('@').unwrap_or((s, "top+1"));
        let shift = |d: &str| d.parse::<i64>().map_err(|_| format!("bad shift in `{s}`"));
        let change = if change == "drop" {
            Perturbation::Drop
        } else if let Some(d) = change.strip_prefix("top") {
            Perturbation::ShiftTop(shift(d)?)
        } else if let Some(d) = change.strip_prefix("bottom") {
            Perturbation::ShiftBottom(shift(d)?)
        } else {
            return Err(format!(
                "unknown perturbation in `{s}` (expected top±D, bottom±D or drop)"
            ));
        };
        Ok(Mutation {
            term: term.parse()?,
            change,
        })
    }
}

struct Terms {
    mutation: Option<Mutation>,
}

impl Terms {
    fn c(&self, term: FormulaTerm, n: i64, k: i64) -> Result<u128> {
        match self.mutation {
            Some(mu) if mu.term == term => match mu.change {
                Perturbation::ShiftTop(d) => binomial(n + d, k),
                Perturbation::ShiftBottom(d) => binomial(n, k + d),
                Perturbation::Drop => Ok(0),
            },
            _ => binomial(n, k),
        }
    }
}

fn to_i64(v: u64) -> Result<i64> {
    i64::try_from(v).map_err(|_| Error::Overflow("formula argument"))
}

/// `r(t) = C(2t-1+m, m)`.
pub fn r_standard(t: u64, m: usize) -> Result<u64> {
    let t = to_i64(t)?;
    let m = m as i64;
    narrow(binomial(2 * t - 1 + m, m)?, "r(t)")
}

/// `r~(t)`: number of `a` in `N^m` with `prod (a_l + 1) <= 2t`.
pub fn r_feng_rao(t: u64, m: usize) -> Result<u64> {
    assert!(m >= 1, "a monomial needs at least one variable");
    let bound = t.checked_mul(2).ok_or(Error::Overflow("r~(t)"))?;
    Ok(count_bounded_products(m, bound))
}

/// Tuples `(f_1, ..., f_vars)` of positive integers with product `<= bound`.
fn count_bounded_products(vars: usize, bound: u64) -> u64 {
    if vars == 1 {
        return bound;
    }
    (1..=bound)
        .map(|f| count_bounded_products(vars - 1, bound / f))
        .sum()
}

/// Whether `a` is a pure power of the last variable (including `1`).
pub fn is_pure_last_power(a: &Monomial) -> bool {
    let e = a.exponents();
    e[..e.len() - 1].iter().all(|&x| x == 0)
}

/// `(S_0, S_1, ..., S_m)`.
fn prefix_sums(a: &Monomial) -> Vec<i64> {
    let mut sums = vec![0i64];
    for &e in a.exponents() {
        sums.push(sums.last().unwrap() + i64::from(e));
    }
    sums
}

fn p_top(a: &Monomial, terms: &Terms) -> Result<u128> {
    let m = a.vars() as i64;
    let w = a.degree() as i64;
    let s = prefix_sums(a);
    let mut total = 0u128;
    for k in 1..=m {
        total += terms.c(
            FormulaTerm::TopDegree { k: k as usize },
            2 * w - s[k as usize] + m - k,
            m - k,
        )?;
    }
    Ok(total)
}

fn p_double(a: &Monomial, terms: &Terms) -> Result<u128> {
    let m = a.vars() as i64;
    let w = a.degree() as i64;
    let s = prefix_sums(a);
    let mut total = 1u128;
    for k in 1..m {
        for j in k..m {
            total += terms.c(
                FormulaTerm::DoubleDegree {
                    k: k as usize,
                    j: j as usize,
                },
                2 * w - 2 - s[j as usize] - s[k as usize] + m - j,
                m - j,
            )?;
        }
    }
    // The k = m term of this count is always zero; it is left out.
    total += (1..m).filter(|&k| w - s[k as usize] > 0).count() as u128;
    Ok(total)
}

/// `(r*(t), r~*(t))`, optionally with one term perturbed.
fn generic_pair(t: u64, m: usize, mutation: Option<Mutation>) -> Result<(u64, u64)> {
    if t == 0 {
        return Ok((0, 0));
    }
    let terms = Terms { mutation };
    let a = index_to_monomial(MonomialIndex(t), m);
    let w = to_i64(a.degree())?;
    let m = m as i64;
    if is_pure_last_power(&a) {
        let r = narrow(terms.c(FormulaTerm::PurePower, 2 * w - 1 + m, m)?, "r*(t)")?;
        return Ok((r, r));
    }
    let upto = terms.c(FormulaTerm::UpToDegree, 2 * w + 1 + m, m)?;
    let r_star = upto
        .checked_sub(p_top(&a, &terms)?)
        .ok_or(Error::Overflow("r*(t)"))?;
    let r_tilde_star = r_star
        .checked_sub(p_double(&a, &terms)?)
        .ok_or(Error::Overflow("r~*(t)"))?;
    Ok((narrow(r_star, "r*(t)")?, narrow(r_tilde_star, "r~*(t)")?))
}

/// `r*(t)`, the size of the generic standard check set.
pub fn r_generic_standard(t: u64, m: usize) -> Result<u64> {
    Ok(generic_pair(t, m, None)?.0)
}

/// `r~*(t)`, the size of the improved generic check set.
pub fn r_generic_improved(t: u64, m: usize) -> Result<u64> {
    Ok(generic_pair(t, m, None)?.1)
}

/// [`r_generic_improved`] with one binomial term perturbed.
pub fn r_generic_improved_mutated(t: u64, m: usize, mutation: Mutation) -> Result<u64> {
    Ok(generic_pair(t, m, Some(mutation))?.1)
}

/// Closed-form sizes of `P_{2|a|}` and `P_{2|a|+1}` for `z_t = a`.
///
/// Only defined when some `a_l > 0` with `l < m`; a pure power of `x_m` is
/// rejected.
pub fn p_counts(a: &Monomial) -> Result<PCount> {
    if is_pure_last_power(a) {
        return Err(Error::NotApplicable(
            "z_t is a pure power of x_m, no P-set decomposition",
        ));
    }
    let terms = Terms { mutation: None };
    Ok(PCount {
        p_2a: narrow(p_double(a, &terms)?, "|P_2a|")?,
        p_2a_plus_1: narrow(p_top(a, &terms)?, "|P_2a+1|")?,
    })
}

fn check_degree(b: &Monomial, a: &Monomial, expected: u64) -> Result<()> {
    if b.vars() != a.vars() {
        return Err(Error::DimensionMismatch {
            left: b.vars(),
            right: a.vars(),
        });
    }
    if b.degree() != expected {
        return Err(Error::DegreeMismatch {
            expected,
            got: b.degree(),
        });
    }
    Ok(())
}

/// Whether `b` (of degree `2|a|`) lies in `P_{2|a|}`, decided by the
/// pattern characterization rather than by splitting `b`.
pub fn membership_p2a(b: &Monomial, a: &Monomial) -> Result<bool> {
    check_degree(b, a, 2 * a.degree())?;
    let m = a.vars();
    let (a, b): (Vec<u64>, Vec<u64>) = (
        a.exponents().iter().map(|&x| u64::from(x)).collect(),
        b.exponents().iter().map(|&x| u64::from(x)).collect(),
    );
    // Patterns are written with 0-based positions; k, j below are l - 1.
    let doubled_before = |k: usize| (0..k).all(|l| b[l] == 2 * a[l]);
    if (0..m).all(|l| b[l] == 2 * a[l]) {
        return Ok(true);
    }
    for k in 0..m - 1 {
        if !doubled_before(k) {
            break;
        }
        if b[k] >= 2 * a[k] + 2 {
            return Ok(true);
        }
        if b[k] != 2 * a[k] + 1 {
            continue;
        }
        for j in k + 1..m - 1 {
            if (k + 1..j).all(|l| b[l] == a[l]) && b[j] > a[j] {
                return Ok(true);
            }
        }
        if (k + 1..m - 1).all(|l| b[l] == a[l]) && b[m - 1] >= a[m - 1] {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Whether `b` (of degree `2|a|+1`) lies in `P_{2|a|+1}`: for some `k`,
/// `b` agrees with `a` before position `k` and exceeds it at `k`.
pub fn membership_p2a1(b: &Monomial, a: &Monomial) -> Result<bool> {
    check_degree(b, a, 2 * a.degree() + 1)?;
    let (a, b) = (a.exponents(), b.exponents());
    for k in 0..a.len() {
        if b[k] > a[k] {
            return Ok(true);
        }
        if b[k] != a[k] {
            return Ok(false);
        }
    }
    Ok(false)
}

/// All four redundancies from the closed forms.
pub fn report(t: u64, m: usize) -> Result<RedundancyReport> {
    let (r_star, r_tilde_star) = generic_pair(t, m, None)?;
    Ok(RedundancyReport {
        t,
        m,
        r: r_standard(t, m)?,
        r_tilde: r_feng_rao(t, m)?,
        r_star,
        r_tilde_star,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::check_sets::{self, products_of_degree};
    use crate::monomial_order::{degree_start, monomial_to_index, GradedLex};

    fn mono(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec()).unwrap()
    }

    #[test]
    fn standard_examples() {
        assert_eq!(r_standard(0, 3).unwrap(), 0);
        assert_eq!(r_standard(1, 3).unwrap(), 4);
        assert_eq!(r_standard(31, 3).unwrap(), 41664);
        // Univariate: r(t) = 2t.
        for t in 0..50 {
            assert_eq!(r_standard(t, 1).unwrap(), 2 * t);
        }
    }

    #[test]
    fn feng_rao_examples() {
        for m in 1..=5 {
            assert_eq!(r_feng_rao(0, m).unwrap(), 0);
        }
        assert_eq!(r_feng_rao(2, 2).unwrap(), 8);
        assert_eq!(r_feng_rao(1, 3).unwrap(), 4);
    }

    #[test]
    fn feng_rao_count_against_box_scan() {
        // Direct scan of the box a_l <= 2t-1.
        for t in 0..8u64 {
            for m in 1..=3usize {
                let side = (2 * t) as usize;
                let mut count = 0;
                let mut a = vec![0usize; m];
                'scan: loop {
                    if a.iter().map(|x| x + 1).product::<usize>() < side + 1 {
                        count += 1;
                    }
                    for l in (0..m).rev() {
                        a[l] += 1;
                        if a[l] < side {
                            continue 'scan;
                        }
                        a[l] = 0;
                    }
                    break;
                }
                assert_eq!(
                    r_feng_rao(t, m).unwrap(),
                    if t == 0 { 0 } else { count },
                    "t={t} m={m}"
                );
            }
        }
    }

    #[test]
    fn generic_examples() {
        assert_eq!(r_generic_standard(3, 2).unwrap(), 10);
        assert_eq!(r_generic_standard(4, 2).unwrap(), 16);
        assert_eq!(r_generic_standard(1, 2).unwrap(), 3);
        assert_eq!(r_generic_improved(3, 2).unwrap(), 10);
        assert_eq!(r_generic_improved(4, 2).unwrap(), 13);
        for m in 1..=4 {
            assert_eq!(r_generic_improved(0, m).unwrap(), 0);
            assert_eq!(r_generic_standard(0, m).unwrap(), 0);
        }
    }

    #[test]
    fn p_count_examples() {
        let pc = p_counts(&mono(&[1, 1])).unwrap();
        assert_eq!(
            pc,
            PCount {
                p_2a: 3,
                p_2a_plus_1: 5
            }
        );
        assert_eq!(p_counts(&mono(&[1, 0])).unwrap().p_2a_plus_1, 3);
        assert!(matches!(
            p_counts(&mono(&[0, 3])),
            Err(Error::NotApplicable(_))
        ));
        assert!(matches!(
            p_counts(&mono(&[0, 0, 0])),
            Err(Error::NotApplicable(_))
        ));
    }

    #[test]
    fn membership_examples() {
        let a = mono(&[1, 1]);
        assert!(membership_p2a(&mono(&[2, 2]), &a).unwrap());
        assert!(!membership_p2a(&mono(&[0, 4]), &a).unwrap());
        assert!(membership_p2a1(&mono(&[2, 3]), &a).unwrap());
        assert_eq!(
            membership_p2a(&mono(&[2, 3]), &a),
            Err(Error::DegreeMismatch {
                expected: 4,
                got: 5
            })
        );
        assert_eq!(
            membership_p2a1(&mono(&[2, 2]), &a),
            Err(Error::DegreeMismatch {
                expected: 5,
                got: 4
            })
        );
        let a3 = mono(&[1, 0, 2]);
        assert!(membership_p2a(&mono(&[2, 0, 4]), &a3).unwrap());
    }

    #[test]
    fn p_sets_agree_with_enumeration() {
        for m in 2..=4 {
            for t in 1..30u64 {
                let a = index_to_monomial(MonomialIndex(t), m);
                if is_pure_last_power(&a) {
                    continue;
                }
                let w = a.degree();
                let p2a = products_of_degree(t, m, 2 * w).unwrap();
                let p2a1 = products_of_degree(t, m, 2 * w + 1).unwrap();
                let pc = p_counts(&a).unwrap();
                assert_eq!(pc.p_2a, p2a.len() as u64, "t={t} m={m}");
                assert_eq!(pc.p_2a_plus_1, p2a1.len() as u64, "t={t} m={m}");
                for d in [2 * w, 2 * w + 1] {
                    let start = degree_start(d, m).unwrap();
                    let walk = GradedLex::from(index_to_monomial(start, m))
                        .take_while(|z| z.degree() == d);
                    for b in walk {
                        let (predicate, listed) = if d == 2 * w {
                            (membership_p2a(&b, &a).unwrap(), p2a.contains(&b))
                        } else {
                            (membership_p2a1(&b, &a).unwrap(), p2a1.contains(&b))
                        };
                        assert_eq!(predicate, listed, "t={t} m={m} b={b}");
                    }
                }
            }
        }
    }

    #[test]
    fn formulas_match_sets_on_small_grid() {
        for m in 1..=4 {
            for t in 0..=15 {
                let rep = report(t, m).unwrap();
                assert_eq!(rep.r, check_sets::standard_set(t, m).unwrap().len() as u64);
                assert_eq!(
                    rep.r_tilde,
                    check_sets::feng_rao_set(t, m).unwrap().len() as u64
                );
                assert_eq!(
                    rep.r_star,
                    check_sets::generic_standard_set(t, m).unwrap().len() as u64
                );
                assert_eq!(
                    rep.r_tilde_star,
                    check_sets::generic_improved_set(t, m).unwrap().len() as u64
                );
                assert!(rep.r_tilde <= rep.r && rep.r_tilde_star <= rep.r_star);
            }
        }
    }

    #[test]
    fn r_tilde_falls_short_of_m_of_t_plus_one() {
        // m(t) + 1 is the size of the prefix R(t), not of R~(t).
        assert_eq!(check_sets::m_of_t(2, 2).unwrap(), MonomialIndex(9));
        assert_eq!(r_feng_rao(2, 2).unwrap(), 8);
        for t in 1..20 {
            assert_eq!(
                r_feng_rao(t, 1).unwrap(),
                check_sets::m_of_t(t, 1).unwrap().0 + 1
            );
        }
    }

    #[test]
    fn r_is_one_past_m_of_t() {
        // The Feng-Rao set's last index sits at x_1^{2t-1}.
        for m in 1..=4 {
            for t in 1..=12 {
                let last = monomial_to_index(&Monomial::power_of(m, 1, 2 * t as u32 - 1)).unwrap();
                assert_eq!(r_standard(t, m).unwrap(), last.0 + 1);
                assert_eq!(check_sets::m_of_t(t, m).unwrap(), last);
            }
        }
    }

    #[test]
    fn term_names_roundtrip() {
        for m in 1..=4 {
            for term in FormulaTerm::all(m) {
                assert_eq!(term.to_string().parse::<FormulaTerm>().unwrap(), term);
            }
        }
        assert!("double:1".parse::<FormulaTerm>().is_err());
        assert!("top:x".parse::<FormulaTerm>().is_err());
    }

    #[test]
    fn mutation_syntax() {
        for term in FormulaTerm::all(3) {
            for change in Mutation::PERTURBATIONS {
                let mu = Mutation { term, change };
                assert_eq!(mu.to_string().parse::<Mutation>().unwrap(), mu);
            }
        }
        let bare: Mutation = "top:2".parse().unwrap();
        assert_eq!(bare.change, Perturbation::ShiftTop(1));
        assert!("top:2@sideways".parse::<Mutation>().is_err());
        assert!("top:2@top+x".parse::<Mutation>().is_err());
    }

    #[test]
    fn every_term_is_listed_once() {
        assert_eq!(FormulaTerm::all(1).len(), 3);
        assert_eq!(FormulaTerm::all(3).len(), 2 + 3 + 3);
    }

    #[test]
    fn mutation_changes_some_value() {
        let mu = Mutation {
            term: FormulaTerm::DoubleDegree { k: 1, j: 1 },
            change: Perturbation::ShiftTop(1),
        };
        assert_ne!(
            r_generic_improved_mutated(4, 2, mu).unwrap(),
            r_generic_improved(4, 2).unwrap()
        );
    }
}

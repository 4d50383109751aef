//! Parity-check matrices of the codes `C_W = <phi(W)>^perp`.
//!
//! Row `r` of a check matrix is the evaluation of the `r`-th monomial of `W`
//! at every point of `GF(q)^m`, columns following the point order of
//! [`enumerate_points`].

use serde::{Deserialize, Serialize};

use crate::binomial::{binomial, narrow};
use crate::check_sets::{CheckSet, Variant};
use crate::gf_arithmetic::{
    enumerate_points_limited, point_count, FieldElement, FieldSpec, DEFAULT_MAX_CELLS,
};
use crate::monomial_order::{index_to_monomial, Monomial, MonomialIndex};
use crate::{Error, Result};

/// Environment variable overriding the `q^m` guard.
pub const MAX_CELLS_ENV: &str = "RM_OPT_MAX_CELLS";

/// Default cap on the number of codewords walked by
/// [`min_distance_bruteforce`].
pub const DEFAULT_MAX_CODEWORDS: u64 = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Guards {
    /// Largest accepted code length `q^m`.
    pub max_cells: u64,
    /// Largest accepted `q^k` for a dual code of dimension `k`.
    pub max_codewords: u64,
}

impl Default for Guards {
    fn default() -> Self {
        Guards {
            max_cells: DEFAULT_MAX_CELLS,
            max_codewords: DEFAULT_MAX_CODEWORDS,
        }
    }
}

impl Guards {
    /// Defaults, with `max_cells` taken from `RM_OPT_MAX_CELLS` when it is set
    /// to an integer.
    pub fn from_env() -> Self {
        let mut guards = Guards::default();
        if let Some(cells) = std::env::var(MAX_CELLS_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
        {
            guards.max_cells = cells;
        }
        guards
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvaluationMatrix {
    pub field: FieldSpec,
    pub m: usize,
    pub row_monomials: Vec<MonomialIndex>,
    pub rows: Vec<Vec<FieldElement>>,
    /// Code length `q^m`, kept so a matrix without rows knows its width.
    pub n: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeSummary {
    pub variant: Variant,
    pub t: u64,
    pub q: u64,
    pub m: usize,
    pub n: u64,
    pub checks: u64,
    pub redundancy: u64,
    pub dimension: u64,
    pub max_exponent: u32,
    /// Set when the evaluation rows are dependent, i.e. `redundancy < checks`.
    pub rank_deficit: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min_distance: Option<u64>,
}

fn eval_at(a: &Monomial, point: &[FieldElement], field: &FieldSpec) -> FieldElement {
    a.exponents()
        .iter()
        .zip(point)
        .fold(field.one(), |acc, (&e, &x)| {
            field.mul(acc, field.pow(x, e.into()))
        })
}

/// `(f(P_1), ..., f(P_n))` for the monomial `f = a`, with `0^0 = 1`.
pub fn evaluate_monomial(a: &Monomial, spec: &FieldSpec) -> Result<Vec<FieldElement>> {
    evaluate_monomial_with(a, spec, &Guards::default())
}

pub fn evaluate_monomial_with(
    a: &Monomial,
    spec: &FieldSpec,
    guards: &Guards,
) -> Result<Vec<FieldElement>> {
    let points = enumerate_points_limited(spec, a.vars(), guards.max_cells)?;
    Ok(points.iter().map(|p| eval_at(a, p, spec)).collect())
}

pub fn check_matrix(w: &CheckSet, spec: &FieldSpec) -> Result<EvaluationMatrix> {
    check_matrix_with(w, spec, &Guards::default())
}

pub fn check_matrix_with(
    w: &CheckSet,
    spec: &FieldSpec,
    guards: &Guards,
) -> Result<EvaluationMatrix> {
    let points = enumerate_points_limited(spec, w.m, guards.max_cells)?;
    let rows = w
        .monomials()
        .map(|a| points.iter().map(|p| eval_at(&a, p, spec)).collect())
        .collect();
    Ok(EvaluationMatrix {
        field: spec.clone(),
        m: w.m,
        row_monomials: w.indices().to_vec(),
        rows,
        n: points.len(),
    })
}

/// Row echelon form in place; returns the pivot column of each nonzero row.
fn row_reduce(rows: &mut Vec<Vec<FieldElement>>, field: &FieldSpec, n: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut top = 0;
    for col in 0..n {
        let Some(found) = (top..rows.len()).find(|&r| rows[r][col] != field.zero()) else {
            continue;
        };
        rows.swap(top, found);
        let scale = field.inv(rows[top][col]).expect("pivot is nonzero");
        for x in rows[top].iter_mut() {
            *x = field.mul(*x, scale);
        }
        let pivot_row = rows[top].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == top || row[col] == field.zero() {
                continue;
            }
            let factor = row[col];
            for (x, &y) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *x = field.sub(*x, field.mul(factor, y));
            }
        }
        pivots.push(col);
        top += 1;
        if top == rows.len() {
            break;
        }
    }
    rows.truncate(top);
    pivots
}

/// Rank over the matrix's field.
pub fn rank_gf(mat: &EvaluationMatrix) -> usize {
    let mut rows = mat.rows.clone();
    row_reduce(&mut rows, &mat.field, mat.n).len()
}

/// A basis of `{x : H x = 0}`, i.e. a generator matrix of `C_W`.
pub fn null_space_basis(mat: &EvaluationMatrix) -> Vec<Vec<FieldElement>> {
    let field = &mat.field;
    let mut rref = mat.rows.clone();
    let pivots = row_reduce(&mut rref, field, mat.n);
    let mut is_pivot = vec![false; mat.n];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    (0..mat.n)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![field.zero(); mat.n];
            v[free] = field.one();
            for (row, &pc) in rref.iter().zip(&pivots) {
                v[pc] = field.neg(row[free]);
            }
            v
        })
        .collect()
}

/// Calls `visit` with every nonzero codeword of `C_W`.
pub fn for_each_codeword(
    mat: &EvaluationMatrix,
    guards: &Guards,
    mut visit: impl FnMut(&[FieldElement]),
) -> Result<()> {
    let field = &mat.field;
    let basis = null_space_basis(mat);
    let total = u32::try_from(basis.len())
        .ok()
        .and_then(|k| u128::from(field.q()).checked_pow(k))
        .unwrap_or(u128::MAX);
    if total > u128::from(guards.max_codewords) {
        return Err(Error::GuardExceeded {
            what: "codewords q^k",
            value: total,
            limit: guards.max_codewords.into(),
        });
    }
    let q = field.q();
    let mut word = vec![field.zero(); mat.n];
    for message in 1..total as u64 {
        word.fill(field.zero());
        let mut digits = message;
        for generator in &basis {
            let coefficient = field.element(digits % q)?;
            digits /= q;
            if coefficient == field.zero() {
                continue;
            }
            for (w, &g) in word.iter_mut().zip(generator) {
                *w = field.add(*w, field.mul(coefficient, g));
            }
        }
        visit(&word);
    }
    Ok(())
}

/// Minimum Hamming weight of a nonzero codeword of `C_W`, or `None` when the
/// code is `{0}`.
pub fn min_distance_bruteforce(mat: &EvaluationMatrix) -> Result<Option<u64>> {
    min_distance_with(mat, &Guards::default())
}

pub fn min_distance_with(mat: &EvaluationMatrix, guards: &Guards) -> Result<Option<u64>> {
    let zero = mat.field.zero();
    let mut best: Option<u64> = None;
    for_each_codeword(mat, guards, |word| {
        let weight = word.iter().filter(|&&x| x != zero).count() as u64;
        best = Some(best.map_or(weight, |b| b.min(weight)));
    })?;
    Ok(best)
}

/// The last index `j` with `RM_q(s, m) = C_{{z_i : i <= j}}`, namely
/// `C(s+m, m) - 1`.
pub fn rm_index_bound(s: u64, m: usize) -> Result<MonomialIndex> {
    let s = i64::try_from(s).map_err(|_| Error::Overflow("degree"))?;
    let count = binomial(s + m as i64, m as i64)?;
    Ok(MonomialIndex(narrow(count - 1, "monomial index")?))
}

/// Largest single-variable exponent among the monomials of `W`.
pub fn max_exponent(w: &CheckSet) -> u32 {
    w.indices()
        .iter()
        .map(|&i| {
            index_to_monomial(i, w.m)
                .exponents()
                .iter()
                .copied()
                .max()
                .unwrap_or(0)
        })
        .max()
        .unwrap_or(0)
}

/// Builds the check matrix of `W` over `spec` and reports its parameters.
/// With `with_distance`, also brute-forces the minimum distance.
pub fn summarize(
    w: &CheckSet,
    spec: &FieldSpec,
    guards: &Guards,
    with_distance: bool,
) -> Result<CodeSummary> {
    let n = point_count(spec, w.m, guards.max_cells)?;
    let mat = check_matrix_with(w, spec, guards)?;
    let redundancy = rank_gf(&mat) as u64;
    let min_distance = if with_distance {
        min_distance_with(&mat, guards)?
    } else {
        None
    };
    Ok(CodeSummary {
        variant: w.variant,
        t: w.t,
        q: spec.q(),
        m: w.m,
        n,
        checks: w.len() as u64,
        redundancy,
        dimension: n - redundancy,
        max_exponent: max_exponent(w),
        rank_deficit: redundancy < w.len() as u64,
        min_distance,
    })
}

//! Redundancy tables and the formula-versus-enumeration verification suite
//! driven by the `rm-opt` binary.

use std::fmt::Write as _;
use std::io::{self, Write};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::binomial::binomial;
use crate::check_sets::{
    feng_rao_set, generic_improved_set, products_of_degree, CheckSet, Variant,
};
use crate::closed_form::{
    is_pure_last_power, membership_p2a, membership_p2a1, p_counts, r_feng_rao,
    r_generic_improved_mutated, r_generic_standard, r_standard, Mutation,
};
use crate::monomial_order::{
    compare, degree_start, index_to_monomial, monomial_to_index, nu, nu_oracle, GradedLex,
    MonomialIndex,
};
use crate::{Error, Result};

/// Largest `r(t_max)` a table or verification run may enumerate.
pub const MAX_ENUMERATED_CHECKS: u64 = 50_000_000;

/// Largest number of variables accepted by tables and verification.
pub const MAX_VARS: usize = 8;

/// One line of a redundancy table: the four closed forms and the four
/// enumerated set sizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub t: u64,
    pub r: u64,
    pub r_tilde: u64,
    pub r_star: u64,
    pub r_tilde_star: u64,
    pub oracle_r: u64,
    pub oracle_r_tilde: u64,
    pub oracle_r_star: u64,
    pub oracle_r_tilde_star: u64,
}

pub const CSV_HEADER: &str = "t,r,r_tilde,r_star,r_tilde_star";
pub const CSV_ORACLE_HEADER: &str = "oracle_r,oracle_r_tilde,oracle_r_star,oracle_r_tilde_star";

fn guard_grid(m: usize, t_max: u64) -> Result<()> {
    if m == 0 || m > MAX_VARS {
        return Err(Error::GuardExceeded {
            what: "number of variables m",
            value: m as u128,
            limit: MAX_VARS as u128,
        });
    }
    let cells = r_standard(t_max, m).unwrap_or(u64::MAX);
    if cells > MAX_ENUMERATED_CHECKS {
        return Err(Error::GuardExceeded {
            what: "enumerated check set size r(t_max)",
            value: cells.into(),
            limit: MAX_ENUMERATED_CHECKS.into(),
        });
    }
    Ok(())
}

fn table_row(t: u64, m: usize) -> Result<TableRow> {
    let generic = generic_improved_set(t, m)?;
    let feng_rao = feng_rao_set(t, m)?;
    let row = TableRow {
        t,
        r: r_standard(t, m)?,
        r_tilde: r_feng_rao(t, m)?,
        r_star: r_generic_standard(t, m)?,
        r_tilde_star: crate::closed_form::r_generic_improved(t, m)?,
        oracle_r: feng_rao.prefix_hull(Variant::Standard).len() as u64,
        oracle_r_tilde: feng_rao.len() as u64,
        oracle_r_star: generic.max().map_or(0, |i| i.0 + 1),
        oracle_r_tilde_star: generic.len() as u64,
    };
    let columns = [
        ("r", row.r, row.oracle_r),
        ("r_tilde", row.r_tilde, row.oracle_r_tilde),
        ("r_star", row.r_star, row.oracle_r_star),
        ("r_tilde_star", row.r_tilde_star, row.oracle_r_tilde_star),
    ];
    for (what, formula, oracle) in columns {
        if formula != oracle {
            return Err(Error::Mismatch {
                what,
                t,
                m,
                formula,
                oracle,
            });
        }
    }
    Ok(row)
}

/// Rows for `t_min..=t_max`, ascending. Fails on the first `t` where a
/// formula disagrees with its enumerated set.
pub fn table_rows(m: usize, t_min: u64, t_max: u64) -> Result<Vec<TableRow>> {
    guard_grid(m, t_max)?;
    (t_min..=t_max)
        .into_par_iter()
        .map(|t| table_row(t, m))
        .collect::<Vec<_>>()
        .into_iter()
        .collect()
}

pub fn write_csv(rows: &[TableRow], with_oracle: bool, out: &mut impl Write) -> io::Result<()> {
    if with_oracle {
        writeln!(out, "{CSV_HEADER},{CSV_ORACLE_HEADER}")?;
    } else {
        writeln!(out, "{CSV_HEADER}")?;
    }
    for row in rows {
        write!(
            out,
            "{},{},{},{},{}",
            row.t, row.r, row.r_tilde, row.r_star, row.r_tilde_star
        )?;
        if with_oracle {
            write!(
                out,
                ",{},{},{},{}",
                row.oracle_r, row.oracle_r_tilde, row.oracle_r_star, row.oracle_r_tilde_star
            )?;
        }
        writeln!(out)?;
    }
    Ok(())
}

pub fn write_json(rows: &[TableRow], out: &mut impl Write) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut *out, rows)?;
    writeln!(out)
}

/// A gnuplot script with the table inlined, one curve per redundancy.
pub fn gnuplot_script(m: usize, rows: &[TableRow], include_standard: bool) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "set title \"Reed-Muller redundancies, m = {m}\"");
    let _ = writeln!(s, "set xlabel \"t\"\nset key left top\n$data << EOD");
    for row in rows {
        let _ = writeln!(
            s,
            "{} {} {} {} {}",
            row.t, row.r, row.r_tilde, row.r_star, row.r_tilde_star
        );
    }
    let _ = writeln!(s, "EOD");
    let mut curves = Vec::new();
    if include_standard {
        curves.push("$data using 1:2 with points pt 2 title \"r(t)\"");
    }
    curves.push("$data using 1:3 with points pt 1 title \"r~(t)\"");
    curves.push("$data using 1:4 with points pt 7 title \"r*(t)\"");
    curves.push("$data using 1:5 with points pt 6 title \"r~*(t)\"");
    let _ = writeln!(s, "plot {}", curves.join(", \\\n     "));
    s
}

/// A concrete failing input of a verification check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub t: u64,
    pub m: usize,
    pub expected: String,
    pub got: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub cases: u64,
    pub failures: u64,
    pub first_failure: Option<Counterexample>,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub checks: Vec<CheckOutcome>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckOutcome::passed)
    }

    /// First failing case, in check order.
    pub fn first_failure(&self) -> Option<(&'static str, &Counterexample)> {
        self.checks
            .iter()
            .find_map(|c| c.first_failure.as_ref().map(|f| (c.name, f)))
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        for c in &self.checks {
            if c.passed() {
                let _ = writeln!(s, "PASS  {:<44} {} cases", c.name, c.cases);
            } else {
                let f = c
                    .first_failure
                    .as_ref()
                    .expect("failing check has a counterexample");
                let _ = writeln!(
                    s,
                    "FAIL  {:<44} {}/{} cases failed; first: t={} m={} expected={} got={}",
                    c.name, c.failures, c.cases, f.t, f.m, f.expected, f.got
                );
            }
        }
        let failed = self.checks.iter().filter(|c| !c.passed()).count();
        if failed == 0 {
            let _ = writeln!(s, "verify: all {} checks passed", self.checks.len());
        } else {
            let _ = writeln!(s, "verify: {failed} of {} checks failed", self.checks.len());
        }
        s
    }
}

/// Which `(m, t)` pairs to verify: `t` runs over `0..=t_max` per `m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyConfig {
    pub grid: Vec<(usize, u64)>,
    /// Bound on the indices used for the order-engine and divisor-count
    /// checks.
    pub index_bound: u64,
    pub mutation: Option<Mutation>,
}

impl VerifyConfig {
    pub fn uniform(m_max: usize, t_max: u64) -> Self {
        VerifyConfig {
            grid: (1..=m_max).map(|m| (m, t_max)).collect(),
            index_bound: 5000,
            mutation: None,
        }
    }
}

const CHECK_NAMES: [&str; 12] = [
    "r(t) = |R(t)|",
    "r~(t) = |R~(t)|",
    "r(t) = m(t) + 1",
    "r*(t) = |R*(t)|",
    "r~*(t) = |R~*(t)|",
    "pure power of x_m: r~*(t) = r*(t)",
    "|P_2a|, |P_2a+1| closed forms",
    "r* and r~* from the P counts",
    "P-set membership predicates",
    "P_2a+1 upward closed in its degree",
    "containment and ordering of the four sets",
    "order engine and divisor counts",
];

type CaseResult = Vec<(usize, Option<Counterexample>)>;

fn compare_case(
    check: usize,
    t: u64,
    m: usize,
    expected: u64,
    got: u64,
) -> (usize, Option<Counterexample>) {
    let failure = (expected != got).then(|| Counterexample {
        t,
        m,
        expected: expected.to_string(),
        got: got.to_string(),
    });
    (check, failure)
}

/// Like [`compare_case`], but a formula that fails to evaluate (for instance
/// by going negative) is a failed case rather than an aborted run.
fn compare_result(
    check: usize,
    t: u64,
    m: usize,
    expected: u64,
    got: &Result<u64>,
) -> (usize, Option<Counterexample>) {
    match got {
        Ok(v) => compare_case(check, t, m, expected, *v),
        Err(e) => (
            check,
            Some(Counterexample {
                t,
                m,
                expected: expected.to_string(),
                got: e.to_string(),
            }),
        ),
    }
}

fn flag_case(
    check: usize,
    t: u64,
    m: usize,
    ok: bool,
    detail: impl FnOnce() -> String,
) -> (usize, Option<Counterexample>) {
    let failure = (!ok).then(|| Counterexample {
        t,
        m,
        expected: "holds".to_string(),
        got: detail(),
    });
    (check, failure)
}

fn verify_case(t: u64, m: usize, mutation: Option<Mutation>) -> Result<CaseResult> {
    let mut out = Vec::new();
    let feng_rao = feng_rao_set(t, m)?;
    let standard = feng_rao.prefix_hull(Variant::Standard);
    let improved = generic_improved_set(t, m)?;
    let generic = improved.prefix_hull(Variant::GenericStandard);

    out.push(compare_case(
        0,
        t,
        m,
        standard.len() as u64,
        r_standard(t, m)?,
    ));
    out.push(compare_case(
        1,
        t,
        m,
        feng_rao.len() as u64,
        r_feng_rao(t, m)?,
    ));
    if t >= 1 {
        let m_of_t = feng_rao.max().map_or(0, |i| i.0);
        out.push(compare_case(2, t, m, m_of_t + 1, r_standard(t, m)?));
    }
    out.push(compare_case(
        3,
        t,
        m,
        generic.len() as u64,
        r_generic_standard(t, m)?,
    ));
    let improved_formula = match mutation {
        Some(mu) => r_generic_improved_mutated(t, m, mu),
        None => crate::closed_form::r_generic_improved(t, m),
    };
    out.push(compare_result(
        4,
        t,
        m,
        improved.len() as u64,
        &improved_formula,
    ));

    let ordered = feng_rao.is_subset_of(&standard)
        && improved.is_subset_of(&generic)
        && standard.is_prefix()
        && generic.is_prefix();
    out.push(flag_case(10, t, m, ordered, || {
        "set containment violated".into()
    }));

    if t == 0 {
        return Ok(out);
    }
    let a = index_to_monomial(MonomialIndex(t), m);
    if is_pure_last_power(&a) {
        out.push(compare_result(
            5,
            t,
            m,
            r_generic_standard(t, m)?,
            &improved_formula,
        ));
        return Ok(out);
    }

    let w = a.degree();
    let p2a = products_of_degree(t, m, 2 * w)?;
    let p2a1 = products_of_degree(t, m, 2 * w + 1)?;
    let pc = p_counts(&a)?;
    out.push(compare_case(6, t, m, p2a.len() as u64, pc.p_2a));
    out.push(compare_case(6, t, m, p2a1.len() as u64, pc.p_2a_plus_1));

    let upto = binomial(2 * w as i64 + 1 + m as i64, m as i64)?;
    let r_star = (upto - u128::from(pc.p_2a_plus_1)) as u64;
    out.push(compare_case(7, t, m, r_generic_standard(t, m)?, r_star));
    out.push(compare_result(7, t, m, r_star - pc.p_2a, &improved_formula));

    let mut predicates_ok = true;
    let mut detail = String::new();
    let mut closed_ok = true;
    for (degree, listed) in [(2 * w, &p2a), (2 * w + 1, &p2a1)] {
        let start = index_to_monomial(degree_start(degree, m)?, m);
        let mut seen_member = false;
        for b in GradedLex::from(start).take_while(|z| z.degree() == degree) {
            let is_listed = listed.contains(&b);
            let predicate = if degree == 2 * w {
                membership_p2a(&b, &a)?
            } else {
                membership_p2a1(&b, &a)?
            };
            if predicate != is_listed && predicates_ok {
                predicates_ok = false;
                detail = format!("b={b} predicate={predicate} enumerated={is_listed}");
            }
            if degree == 2 * w + 1 {
                if seen_member && !is_listed {
                    closed_ok = false;
                }
                seen_member |= is_listed;
            }
        }
    }
    out.push(flag_case(8, t, m, predicates_ok, || detail));
    out.push(flag_case(9, t, m, closed_ok, || {
        "non-product after a product".into()
    }));
    Ok(out)
}

/// Cross-checks the order engine and the divisor count on `i < index_bound`.
fn verify_order_engine(m: usize, index_bound: u64) -> Result<CaseResult> {
    let mut out = Vec::new();
    let mut previous = None;
    for (i, z) in GradedLex::new(m).take(index_bound as usize).enumerate() {
        let i = i as u64;
        let rank_ok = monomial_to_index(&z)? == MonomialIndex(i)
            && index_to_monomial(MonomialIndex(i), m) == z;
        let d = z.degree();
        let bracket_ok = degree_start(d, m)?.0 <= i && i < degree_start(d + 1, m)?.0;
        let order_ok = previous
            .as_ref()
            .is_none_or(|p| compare(p, &z) == Ok(std::cmp::Ordering::Less));
        let nu_ok = nu(&z) == nu_oracle(&z);
        let ok = rank_ok && bracket_ok && order_ok && nu_ok;
        out.push(flag_case(11, i, m, ok, || {
            format!("index {i} monomial {z}")
        }));
        previous = Some(z);
    }
    Ok(out)
}

/// Runs every check on the configured grid.
pub fn run_verify(config: &VerifyConfig) -> Result<VerifyReport> {
    for &(m, t_max) in &config.grid {
        guard_grid(m, t_max)?;
    }
    let cases: Vec<(usize, u64)> = config
        .grid
        .iter()
        .flat_map(|&(m, t_max)| (0..=t_max).map(move |t| (m, t)))
        .collect();
    let mut results: Vec<CaseResult> = cases
        .par_iter()
        .map(|&(m, t)| verify_case(t, m, config.mutation))
        .collect::<Result<_>>()?;
    let mut vars: Vec<usize> = config.grid.iter().map(|&(m, _)| m).collect();
    vars.sort_unstable();
    vars.dedup();
    let engine: Vec<CaseResult> = vars
        .par_iter()
        .map(|&m| verify_order_engine(m, config.index_bound))
        .collect::<Result<_>>()?;
    results.extend(engine);

    let mut checks: Vec<CheckOutcome> = CHECK_NAMES
        .iter()
        .map(|&name| CheckOutcome {
            name,
            cases: 0,
            failures: 0,
            first_failure: None,
        })
        .collect();
    for (id, failure) in results.into_iter().flatten() {
        let c = &mut checks[id];
        c.cases += 1;
        if let Some(f) = failure {
            c.failures += 1;
            c.first_failure.get_or_insert(f);
        }
    }
    Ok(VerifyReport { checks })
}

/// Check set for a variant, as used by the `code` subcommand.
pub fn build_set(variant: Variant, t: u64, m: usize) -> Result<CheckSet> {
    variant.build(t, m)
}

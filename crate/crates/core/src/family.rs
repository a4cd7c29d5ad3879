//! The `(n, p, m)` family of insoluble quartics and its tables.
//!
//! A combination qualifies when `p` is an odd prime, either
//! `n ≡ 0 (mod 4), p ≡ 3 (mod 8)` or `n ≡ 2 (mod 4), p ≡ 7 (mod 8)`, and
//! `|n^2 - p|` is prime. Case I has `m = n^2 - p > 0`; case II has
//! `N = p - n^2 > 0` and `m = -N`.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{is_prime, is_prime_i128};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CaseTag {
    #[serde(rename = "I")]
    CaseI,
    #[serde(rename = "II")]
    CaseII,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComboError {
    #[error("n must be a positive integer")]
    ZeroN,
    #[error("p = {0} is not an odd prime")]
    PNotOddPrime(u64),
    #[error("(n, p) = ({n}, {p}) is outside both congruence classes (n ≡ 0 mod 4 with p ≡ 3 mod 8, or n ≡ 2 mod 4 with p ≡ 7 mod 8)")]
    CongruenceClass { n: u64, p: u64 },
    #[error("|n^2 - p| = {value} is not prime")]
    NotPrime { value: u128 },
    #[error("n is too large for exact arithmetic")]
    Overflow,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FamilyCombo {
    pub n: u64,
    pub p: u64,
    pub m: i64,
    pub case: CaseTag,
}

impl FamilyCombo {
    /// `N = -m`, present only in case II.
    pub fn big_n(&self) -> Option<u64> {
        (self.m < 0).then(|| self.m.unsigned_abs())
    }
}

pub fn check_congruence_class(n: u64, p: u64) -> bool {
    (n % 4 == 0 && p % 8 == 3) || (n % 4 == 2 && p % 8 == 7)
}

/// Validates `(n, p)`, reporting the first failed hypothesis.
pub fn make_combo(n: u64, p: u64) -> Result<FamilyCombo, ComboError> {
    if n == 0 {
        return Err(ComboError::ZeroN);
    }
    if p == 2 || !is_prime(p) {
        return Err(ComboError::PNotOddPrime(p));
    }
    if !check_congruence_class(n, p) {
        return Err(ComboError::CongruenceClass { n, p });
    }
    let m = (n as i128) * (n as i128) - p as i128;
    // p ≡ 3 (mod 4) is never a square, so m != 0
    if !is_prime_i128(m.abs()).map_err(|_| ComboError::Overflow)? {
        return Err(ComboError::NotPrime {
            value: m.unsigned_abs(),
        });
    }
    let m = i64::try_from(m).map_err(|_| ComboError::Overflow)?;
    let case = if m > 0 { CaseTag::CaseI } else { CaseTag::CaseII };
    Ok(FamilyCombo { n, p, m, case })
}

fn admissible_n(n: u64) -> bool {
    n > 0 && n % 2 == 0
}

/// Case I combinations with `n <= n_max`, ordered by `(n, p)`.
pub fn enumerate_case_i(n_max: u64) -> Vec<FamilyCombo> {
    (1..=n_max)
        .into_par_iter()
        .filter(|&n| admissible_n(n))
        .flat_map_iter(|n| {
            (3..n * n)
                .filter_map(move |p| make_combo(n, p).ok())
                .filter(|c| c.case == CaseTag::CaseI)
        })
        .collect()
}

/// Case II combinations with `p <= p_max`, ordered by `(p, n)`.
pub fn enumerate_case_ii(p_max: u64) -> Vec<FamilyCombo> {
    (3..=p_max)
        .into_par_iter()
        .filter(|&p| is_prime(p))
        .flat_map_iter(|p| {
            (2u64..)
                .step_by(2)
                .take_while(move |n| n * n < p)
                .filter_map(move |n| make_combo(n, p).ok())
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ResidueQuantity {
    /// `m mod 8`, case I
    M,
    /// `N mod 8`, case II
    N,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("{quantity:?} ≡ {found} (mod 8), expected {expected}; the combo failed validation")]
pub struct ResidueLemmaError {
    pub quantity: ResidueQuantity,
    pub found: u64,
    pub expected: u64,
}

/// `m mod 8` (must be 5) for case I, `N mod 8` (must be 3) for case II.
pub fn derived_residues(combo: &FamilyCombo) -> Result<(ResidueQuantity, u64), ResidueLemmaError> {
    let (quantity, found, expected) = match combo.case {
        CaseTag::CaseI => (ResidueQuantity::M, combo.m.rem_euclid(8) as u64, 5),
        CaseTag::CaseII => (ResidueQuantity::N, combo.m.unsigned_abs() % 8, 3),
    };
    if found == expected {
        Ok((quantity, found))
    } else {
        Err(ResidueLemmaError {
            quantity,
            found,
            expected,
        })
    }
}

pub const CASE_I_HEADER: &str = "index,n,p,m";
pub const CASE_II_HEADER: &str = "index,p,n,N,m";

/// CSV rendering with the column order of the published tables.
pub fn table_csv(case: CaseTag, combos: &[FamilyCombo]) -> String {
    let mut out = String::new();
    match case {
        CaseTag::CaseI => {
            out.push_str(CASE_I_HEADER);
            out.push('\n');
            for (i, c) in combos.iter().enumerate() {
                let _ = writeln!(out, "{},{},{},{}", i + 1, c.n, c.p, c.m);
            }
        }
        CaseTag::CaseII => {
            out.push_str(CASE_II_HEADER);
            out.push('\n');
            for (i, c) in combos.iter().enumerate() {
                let _ = writeln!(out, "{},{},{},{},{}", i + 1, c.p, c.n, -c.m, c.m);
            }
        }
    }
    out
}

/// Case I listing for `n <= 16` as published: `(n, p, m)`.
pub const PUBLISHED_CASE_I: [(u64, u64, i64); 24] = [
    (4, 3, 13),
    (4, 11, 5),
    (6, 7, 29),
    (6, 23, 13),
    (6, 31, 5),
    (8, 3, 61),
    (8, 11, 53),
    (8, 59, 5),
    (10, 47, 53),
    (10, 71, 29),
    (12, 43, 101),
    (12, 83, 61),
    (12, 107, 37),
    (12, 131, 13),
    (12, 139, 5),
    (14, 23, 173),
    (14, 47, 149),
    (14, 167, 29),
    (14, 191, 5),
    (16, 59, 197),
    (16, 83, 173),
    (16, 107, 149),
    (16, 227, 29),
    (16, 251, 5),
];

/// Case II listing for `p <= 251` as published: `(p, n, N, m)`.
pub const PUBLISHED_CASE_II: [(u64, u64, u64, i64); 29] = [
    (7, 2, 3, -3),
    (23, 2, 19, -19),
    (47, 2, 43, -43),
    (47, 6, 11, -11),
    (59, 4, 43, -43),
    (67, 8, 3, -3),
    (71, 2, 67, -67),
    (79, 2, 73, -73),
    (79, 6, 43, -43),
    (83, 4, 67, -67),
    (83, 8, 19, -19),
    (103, 6, 67, -67),
    (103, 10, 3, -3),
    (107, 8, 43, -43),
    (131, 8, 67, -67),
    (163, 12, 19, -19),
    (167, 2, 163, -163),
    (167, 6, 131, -131),
    (167, 10, 67, -67),
    (179, 4, 163, -163),
    (199, 6, 163, -163),
    (199, 14, 3, -3),
    (211, 12, 67, -67),
    (227, 4, 211, -211),
    (227, 8, 163, -163),
    (227, 12, 83, -83),
    (239, 10, 139, -139),
    (239, 14, 43, -43),
    (251, 12, 107, -107),
];

/// One disagreement between a published row and the computed table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum TableDiscrepancy {
    /// Listed, but fails validation.
    Invalid { row: usize, printed: String, reason: String },
    /// Qualifies, but not listed.
    Missing { computed: String },
}

/// Compares a published listing (rendered as `(n, p, printed columns)`)
/// against the enumerated combos.
fn discrepancies(
    printed: Vec<(u64, u64, String)>,
    computed: &[FamilyCombo],
    render: impl Fn(&FamilyCombo) -> String,
) -> Vec<TableDiscrepancy> {
    let mut out = Vec::new();
    for (i, (n, p, text)) in printed.iter().enumerate() {
        let reason = match make_combo(*n, *p) {
            Err(e) => Some(e.to_string()),
            Ok(c) if render(&c) != *text => Some(format!("values differ from computed {}", render(&c))),
            Ok(_) => None,
        };
        if let Some(reason) = reason {
            out.push(TableDiscrepancy::Invalid {
                row: i + 1,
                printed: text.clone(),
                reason,
            });
        }
    }
    for c in computed {
        if !printed.iter().any(|(n, p, _)| *n == c.n && *p == c.p) {
            out.push(TableDiscrepancy::Missing { computed: render(c) });
        }
    }
    out
}

pub fn case_i_discrepancies(computed: &[FamilyCombo]) -> Vec<TableDiscrepancy> {
    let printed = PUBLISHED_CASE_I
        .iter()
        .map(|&(n, p, m)| (n, p, format!("{n},{p},{m}")))
        .collect();
    discrepancies(printed, computed, |c| format!("{},{},{}", c.n, c.p, c.m))
}

pub fn case_ii_discrepancies(computed: &[FamilyCombo]) -> Vec<TableDiscrepancy> {
    let printed = PUBLISHED_CASE_II
        .iter()
        .map(|&(p, n, big_n, m)| (n, p, format!("{p},{n},{big_n},{m}")))
        .collect();
    discrepancies(printed, computed, |c| format!("{},{},{},{}", c.p, c.n, -c.m, c.m))
}

/// Markdown report of both tables against the published listings.
pub fn diff_report(case_i: &[FamilyCombo], case_ii: &[FamilyCombo]) -> String {
    let mut out = String::from("# Computed tables versus the published listings\n\n");
    for (title, listed, computed, diffs) in [
        (
            "Case I (n <= 16), columns n,p,m",
            PUBLISHED_CASE_I.len(),
            case_i.len(),
            case_i_discrepancies(case_i),
        ),
        (
            "Case II (p <= 251), columns p,n,N,m",
            PUBLISHED_CASE_II.len(),
            case_ii.len(),
            case_ii_discrepancies(case_ii),
        ),
    ] {
        let _ = writeln!(out, "## {title}\n");
        let _ = writeln!(out, "- published rows: {listed}");
        let _ = writeln!(out, "- computed rows: {computed}");
        if diffs.is_empty() {
            out.push_str("- discrepancies: none\n\n");
            continue;
        }
        out.push_str("- discrepancies:\n");
        for d in diffs {
            match d {
                TableDiscrepancy::Invalid { row, printed, reason } => {
                    let _ = writeln!(out, "  - published row {row} `{printed}` is invalid: {reason}");
                }
                TableDiscrepancy::Missing { computed } => {
                    let _ = writeln!(out, "  - `{computed}` qualifies but is not listed");
                }
            }
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn congruence_class_examples() {
        assert!(check_congruence_class(4, 3));
        assert!(check_congruence_class(6, 7));
        assert!(!check_congruence_class(4, 7));
        assert!(!check_congruence_class(2, 3));
        assert!(!check_congruence_class(3, 3));
    }

    #[test]
    fn make_combo_examples() {
        assert_eq!(
            make_combo(4, 3),
            Ok(FamilyCombo { n: 4, p: 3, m: 13, case: CaseTag::CaseI })
        );
        let c = make_combo(2, 7).unwrap();
        assert_eq!((c.m, c.big_n(), c.case), (-3, Some(3), CaseTag::CaseII));
        assert_eq!(make_combo(2, 79), Err(ComboError::NotPrime { value: 75 }));
    }

    #[test]
    fn make_combo_reports_first_failure() {
        assert_eq!(make_combo(0, 3), Err(ComboError::ZeroN));
        assert_eq!(make_combo(4, 2), Err(ComboError::PNotOddPrime(2)));
        assert_eq!(make_combo(4, 9), Err(ComboError::PNotOddPrime(9)));
        assert_eq!(make_combo(4, 7), Err(ComboError::CongruenceClass { n: 4, p: 7 }));
        assert_eq!(make_combo(8, 19), Err(ComboError::NotPrime { value: 45 }));
    }

    #[test]
    fn case_i_examples() {
        let t = enumerate_case_i(16);
        assert_eq!(t.len(), 24);
        assert_eq!((t[0].n, t[0].p, t[0].m), (4, 3, 13));
        assert_eq!((t[23].n, t[23].p, t[23].m), (16, 251, 5));
        let small: Vec<_> = enumerate_case_i(4).iter().map(|c| (c.n, c.p, c.m)).collect();
        assert_eq!(small, vec![(4, 3, 13), (4, 11, 5)]);
        assert!(enumerate_case_i(3).is_empty());
    }

    #[test]
    fn case_ii_examples() {
        let t = enumerate_case_ii(7);
        assert_eq!(t.len(), 1);
        assert_eq!((t[0].p, t[0].n, t[0].m), (7, 2, -3));
        assert!(enumerate_case_ii(6).is_empty());
    }

    // Oracle: every prime p <= 251 and every n >= 1 with n^2 < p, tested
    // against the hypotheses directly.
    fn case_ii_oracle(p_max: u64) -> Vec<(u64, u64, u64)> {
        let mut out = Vec::new();
        for p in 3..=p_max {
            if !(2..p).all(|d| p % d != 0) {
                continue;
            }
            for n in 1..p {
                if n * n >= p {
                    break;
                }
                let class = (n % 4 == 0 && p % 8 == 3) || (n % 4 == 2 && p % 8 == 7);
                let big_n = p - n * n;
                let big_n_prime = big_n > 1 && (2..big_n).all(|d| big_n % d != 0);
                if class && big_n_prime {
                    out.push((p, n, big_n));
                }
            }
        }
        out
    }

    #[test]
    fn case_ii_matches_oracle() {
        let got: Vec<_> = enumerate_case_ii(251)
            .iter()
            .map(|c| (c.p, c.n, c.big_n().unwrap()))
            .collect();
        let want = case_ii_oracle(251);
        assert_eq!(got, want);
        assert_eq!(got.len(), 29);
        assert!(got.contains(&(19, 4, 3)));
        assert!(!got.iter().any(|&(p, n, _)| p == 79 && n == 2));
    }

    #[test]
    fn published_case_i_is_reproduced_exactly() {
        let t = enumerate_case_i(16);
        assert!(case_i_discrepancies(&t).is_empty());
    }

    #[test]
    fn published_case_ii_has_one_invalid_and_one_missing_row() {
        let t = enumerate_case_ii(251);
        let d = case_ii_discrepancies(&t);
        assert_eq!(d.len(), 2, "{d:?}");
        assert!(matches!(&d[0], TableDiscrepancy::Invalid { row: 8, printed, .. } if printed == "79,2,73,-73"));
        assert_eq!(d[1], TableDiscrepancy::Missing { computed: "19,4,3,-3".into() });
    }

    #[test]
    fn derived_residue_examples() {
        let r = |n, p| derived_residues(&make_combo(n, p).unwrap()).unwrap();
        assert_eq!(r(4, 3), (ResidueQuantity::M, 5));
        assert_eq!(r(6, 7), (ResidueQuantity::M, 5));
        assert_eq!(r(2, 7), (ResidueQuantity::N, 3));
        let bogus = FamilyCombo { n: 2, p: 3, m: 1, case: CaseTag::CaseI };
        assert!(derived_residues(&bogus).is_err());
    }

    #[test]
    fn residue_lemmas_hold_exhaustively() {
        for c in enumerate_case_i(100) {
            assert_eq!(derived_residues(&c).map(|r| r.1), Ok(5), "{c:?}");
        }
        for c in enumerate_case_ii(10_000) {
            assert_eq!(derived_residues(&c).map(|r| r.1), Ok(3), "{c:?}");
        }
    }

    #[test]
    fn enumerators_are_valid_and_deterministic() {
        let a = enumerate_case_i(40);
        assert_eq!(a, enumerate_case_i(40));
        assert!(a.iter().all(|c| make_combo(c.n, c.p) == Ok(*c)));
        assert!(a.windows(2).all(|w| (w[0].n, w[0].p) < (w[1].n, w[1].p)));
        let b = enumerate_case_ii(2000);
        assert_eq!(b, enumerate_case_ii(2000));
        assert!(b.iter().all(|c| make_combo(c.n, c.p) == Ok(*c)));
        assert!(b.windows(2).all(|w| (w[0].p, w[0].n) < (w[1].p, w[1].n)));
    }

    #[test]
    fn csv_layout() {
        let csv = table_csv(CaseTag::CaseII, &enumerate_case_ii(7));
        assert_eq!(csv, "index,p,n,N,m\n1,7,2,3,-3\n");
        assert_eq!(table_csv(CaseTag::CaseI, &[]), "index,n,p,m\n");
    }
}

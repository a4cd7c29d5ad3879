//! Executable version of the insolubility argument for
//! `x^4 + 2n x^2y^2 + m y^4 = z^2` with `m = n^2 - p`.
//!
//! Two halves:
//!
//! * [`residue_branch_scan`] checks every congruence obstruction used by the
//!   argument by enumerating all residue tuples. Variables range over
//!   residues mod 8; each congruence is then tested at its own modulus (4 or
//!   8), which covers the mod-4 obstructions as projections.
//! * [`descend`] runs the algebra on a concrete solution: primitive
//!   reduction, parity split, the factorization
//!   `(x^2 + n y^2)^2 - z^2 = p y^4`, the coprime halves `delta1, delta2`,
//!   the fourth-power split `y = 2 y1 y2`, the conic parametrization of the
//!   resulting `x^2 + ell*y^2 = z^2` solution, and finally the smaller
//!   solution `(k1, lambda1, y2)`. Family members have no solutions, so the
//!   pipeline is exercised on forms outside the family; wherever the
//!   argument needs the family hypotheses it records that they are absent.

use serde::Serialize;
use thiserror::Error;

use crate::arith::{gcd, gcd_u128, is_fourth_power, is_perfect_square, is_square_i128};
use crate::conic::{find_parametrization, ConicParametrization, ConicTriple};
use crate::family::{make_combo, FamilyCombo};
use crate::quartic::{reduce_primitive, FamilyQuarticForm, QuarticError, QuarticForm, SolutionTriple};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DescentError {
    #[error(transparent)]
    Quartic(#[from] QuarticError),
    #[error("x0^2 + n y0^2 = {sum} must be odd")]
    EvenSum { sum: u128 },
    #[error("z0 = {z} must be odd")]
    EvenZ { z: u64 },
    #[error("need x0^2 + n y0^2 > z0 > 0, got {sum} and {z}")]
    NotGreater { sum: u128, z: u64 },
    #[error("k1 = {k1} and lambda1 = {lambda1} must be positive and coprime")]
    NotCoprime { k1: u64, lambda1: u64 },
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
}

/// `(x^2 + n y^2)^2 - (x^4 + 2n x^2y^2 + (n^2 - p) y^4) == p y^4`.
pub fn verify_factorization_identity(n: u64, p: u64, x: i64, y: i64) -> Result<bool, DescentError> {
    let of = || DescentError::Overflow("factorization identity");
    let (n, p, x, y) = (n as i128, p as i128, x as i128, y as i128);
    let x2 = x.checked_mul(x).ok_or_else(of)?;
    let y2 = y.checked_mul(y).ok_or_else(of)?;
    let y4 = y2.checked_mul(y2).ok_or_else(of)?;
    let s = n.checked_mul(y2).and_then(|t| t.checked_add(x2)).ok_or_else(of)?;
    let lhs = s.checked_mul(s).ok_or_else(of)?;
    let m = n.checked_mul(n).and_then(|t| t.checked_sub(p)).ok_or_else(of)?;
    let form = x2
        .checked_mul(x2)
        .and_then(|t| {
            let cross = n.checked_mul(2)?.checked_mul(x2)?.checked_mul(y2)?;
            t.checked_add(cross)?.checked_add(m.checked_mul(y4)?)
        })
        .ok_or_else(of)?;
    let rhs = p.checked_mul(y4).ok_or_else(of)?;
    Ok(lhs.checked_sub(form).ok_or_else(of)? == rhs)
}

/// `delta1 = (s + z0)/2`, `delta2 = (s - z0)/2` with `s = x0^2 + n y0^2`.
pub fn split_deltas(x0: u64, y0: u64, z0: u64, n: u64) -> Result<(u128, u128), DescentError> {
    let sum = (n as u128)
        .checked_mul(y0 as u128 * y0 as u128)
        .and_then(|t| t.checked_add(x0 as u128 * x0 as u128))
        .ok_or(DescentError::Overflow("x0^2 + n y0^2"))?;
    if sum % 2 == 0 {
        return Err(DescentError::EvenSum { sum });
    }
    if z0 % 2 == 0 {
        return Err(DescentError::EvenZ { z: z0 });
    }
    if z0 == 0 || sum <= z0 as u128 {
        return Err(DescentError::NotGreater { sum, z: z0 });
    }
    Ok(((sum + z0 as u128) / 2, (sum - z0 as u128) / 2))
}

// ---------------------------------------------------------------------------
// Residue scans
// ---------------------------------------------------------------------------

/// Granularity of every residue scan.
pub const RESIDUE_BASE: u64 = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum BranchId {
    /// `x0, y0` odd: `x^4 + 2n x^2y^2 + m y^4 ≡ z^2 (mod 4)`.
    OddOdd,
    /// `x0` even, `y0` odd: the same congruence mod 8.
    EvenOdd,
    /// `delta1 = 4 y1^4, delta2 = p y2^4`: `x0^2 + n y0^2 ≡ 4 y1^4 + p y2^4 (mod 4)`.
    Case9bFourthPower,
    /// As [`BranchId::Case9bFourthPower`] with `p y2^2`.
    Case9bSquare,
    /// Minus sign, `rho1 = m, rho2 = 1`: `y2^2 ≡ -m k1^4 + 2n k1^2 l1^2 - l1^4 (mod 4)`.
    MinusSignRho1IsM,
    /// Minus sign, `rho1 = 1, rho2 = m`: `y2^2 ≡ -k1^4 + 2n k1^2 l1^2 - m l1^4 (mod 4)`.
    MinusSignRho2IsM,
    /// Negative `m`, `rho1 = N, rho2 = 1`: `y2^2 ≡ N k1^4 + 2n k1^2 l1^2 - l1^4 (mod 4)`.
    NegativeRho1IsN,
}

impl BranchId {
    pub fn equation(self) -> &'static str {
        match self {
            BranchId::OddOdd | BranchId::EvenOdd => "x^4 + 2n x^2 y^2 + m y^4 = z^2",
            BranchId::Case9bFourthPower => "x0^2 + n y0^2 = 4 y1^4 + p y2^4",
            BranchId::Case9bSquare => "x0^2 + n y0^2 = 4 y1^4 + p y2^2",
            BranchId::MinusSignRho1IsM => "y2^2 = -m k1^4 + 2n k1^2 l1^2 - l1^4",
            BranchId::MinusSignRho2IsM => "y2^2 = -k1^4 + 2n k1^2 l1^2 - m l1^4",
            BranchId::NegativeRho1IsN => "y2^2 = N k1^4 + 2n k1^2 l1^2 - l1^4",
        }
    }

    pub fn variables(self) -> &'static [&'static str] {
        match self {
            BranchId::OddOdd | BranchId::EvenOdd => &["x0", "y0", "z0"],
            BranchId::Case9bFourthPower | BranchId::Case9bSquare => &["x0", "y0", "y1", "y2"],
            _ => &["k1", "l1", "y2"],
        }
    }
}

/// Result of one exhaustive residue scan.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BranchCheck {
    pub branch: BranchId,
    pub equation: &'static str,
    pub variables: &'static [&'static str],
    /// Modulus of the congruence being refuted.
    pub modulus: u64,
    /// Residues of each variable range over `0..residue_base`.
    pub residue_base: u64,
    pub tuples_scanned: u64,
    pub survivors: u64,
    pub first_survivor: Option<Vec<u64>>,
    /// Every admissible tuple was checked and none satisfied the congruence.
    pub confirmed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BranchReport {
    pub n: u64,
    pub p: u64,
    pub m: i128,
    pub combo: Option<FamilyCombo>,
    pub checks: Vec<BranchCheck>,
}

impl BranchReport {
    pub fn all_confirmed(&self) -> bool {
        self.checks.iter().all(|c| c.confirmed)
    }

    pub fn failed(&self) -> impl Iterator<Item = &BranchCheck> {
        self.checks.iter().filter(|c| !c.confirmed)
    }
}

fn scan(
    branch: BranchId,
    modulus: u64,
    admissible: impl Fn(&[i128]) -> bool,
    residue: impl Fn(&[i128]) -> (i128, i128),
) -> BranchCheck {
    let arity = branch.variables().len() as u32;
    let base = RESIDUE_BASE as i128;
    let total = RESIDUE_BASE.pow(arity);
    let mut tuple = vec![0i128; arity as usize];
    let (mut scanned, mut survivors, mut first) = (0u64, 0u64, None);
    for idx in 0..total {
        let mut rest = idx as i128;
        for slot in tuple.iter_mut() {
            *slot = rest % base;
            rest /= base;
        }
        if !admissible(&tuple) {
            continue;
        }
        scanned += 1;
        let (lhs, rhs) = residue(&tuple);
        if (lhs - rhs).rem_euclid(modulus as i128) == 0 {
            survivors += 1;
            first.get_or_insert_with(|| tuple.iter().map(|&v| v as u64).collect());
        }
    }
    BranchCheck {
        branch,
        equation: branch.equation(),
        variables: branch.variables(),
        modulus,
        residue_base: RESIDUE_BASE,
        tuples_scanned: scanned,
        survivors,
        first_survivor: first,
        confirmed: survivors == 0,
    }
}

fn odd(v: i128) -> bool {
    v % 2 == 1
}

/// Exhaustively checks each congruence obstruction for the given `(n, p)`
/// with `m = n^2 - p`. Accepts any input so that non-family parameters can
/// be seen to fail.
pub fn residue_branch_scan(n: u64, p: u64) -> BranchReport {
    let m = (n as i128) * (n as i128) - p as i128;
    // coefficients reduced mod 8 keep the arithmetic small and exact mod 8
    let nr = (n % 8) as i128;
    let pr = (p % 8) as i128;
    let mr = m.rem_euclid(8);
    let big_n_r = (-m).rem_euclid(8);
    let quartic = |v: &[i128]| {
        let (x2, y2) = (v[0] * v[0], v[1] * v[1]);
        (x2 * x2 + 2 * nr * x2 * y2 + mr * y2 * y2, v[2] * v[2])
    };
    let case9b = |e: u32| {
        move |v: &[i128]| {
            (
                v[0] * v[0] + nr * v[1] * v[1],
                4 * v[2].pow(4) + pr * v[3].pow(e),
            )
        }
    };
    let coprime_pair = |v: &[i128]| odd(v[0]) || odd(v[1]);
    let cross = |v: &[i128]| 2 * nr * v[0] * v[0] * v[1] * v[1];

    let mut checks = vec![
        scan(BranchId::OddOdd, 4, |v| odd(v[0]) && odd(v[1]), quartic),
        scan(BranchId::EvenOdd, 8, |v| !odd(v[0]) && odd(v[1]), quartic),
        scan(
            BranchId::Case9bFourthPower,
            4,
            |v| odd(v[0]) && !odd(v[1]) && odd(v[3]),
            case9b(4),
        ),
        scan(
            BranchId::Case9bSquare,
            4,
            |v| odd(v[0]) && !odd(v[1]) && odd(v[3]),
            case9b(2),
        ),
    ];
    if m > 0 {
        checks.push(scan(BranchId::MinusSignRho1IsM, 4, coprime_pair, |v| {
            (v[2] * v[2], -mr * v[0].pow(4) + cross(v) - v[1].pow(4))
        }));
        checks.push(scan(BranchId::MinusSignRho2IsM, 4, coprime_pair, |v| {
            (v[2] * v[2], -v[0].pow(4) + cross(v) - mr * v[1].pow(4))
        }));
    } else if m < 0 {
        checks.push(scan(BranchId::NegativeRho1IsN, 4, coprime_pair, |v| {
            (v[2] * v[2], big_n_r * v[0].pow(4) + cross(v) - v[1].pow(4))
        }));
    }
    BranchReport {
        n,
        p,
        m,
        combo: make_combo(n, p).ok(),
        checks,
    }
}

pub fn residue_branch_scan_combo(combo: &FamilyCombo) -> BranchReport {
    residue_branch_scan(combo.n, combo.p)
}

// ---------------------------------------------------------------------------
// Inverse construction
// ---------------------------------------------------------------------------

/// Which factor of `ell = rho1 * rho2` is the unit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum RhoAssignment {
    /// `rho1 = 1, rho2 = ell`: the smaller solution is `(k1, lambda1, y2)`.
    Rho1IsOne,
    /// `rho1 = ell, rho2 = 1`: the roles of `k1` and `lambda1` swap.
    Rho2IsOne,
    /// Neither factor is 1 (only possible for composite `ell`).
    NoUnitFactor,
}

impl RhoAssignment {
    fn of(param: &ConicParametrization) -> Self {
        if param.rho1 == 1 {
            RhoAssignment::Rho1IsOne
        } else if param.rho2 == 1 {
            RhoAssignment::Rho2IsOne
        } else {
            RhoAssignment::NoUnitFactor
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct InverseTriple {
    pub triple: SolutionTriple,
    pub orientation: RhoAssignment,
}

/// Builds the candidate smaller solution from `(k1, lambda1)`.
///
/// Tries `t = k1^4 + 2n k1^2 l1^2 + m l1^4` (giving `(k1, l1, sqrt t)`) and
/// then `m k1^4 + 2n k1^2 l1^2 + l1^4` (giving `(l1, k1, sqrt t)`).
pub fn inverse_construct(
    n: u64,
    m: i64,
    k1: u64,
    lambda1: u64,
) -> Result<Option<InverseTriple>, DescentError> {
    if k1 == 0 || lambda1 == 0 || gcd(k1, lambda1) != 1 {
        return Err(DescentError::NotCoprime { k1, lambda1 });
    }
    let form = FamilyQuarticForm::new(n, m)?;
    let ki = i64::try_from(k1).map_err(|_| DescentError::Overflow("k1"))?;
    let li = i64::try_from(lambda1).map_err(|_| DescentError::Overflow("lambda1"))?;
    for (x, y, orientation) in [
        (ki, li, RhoAssignment::Rho1IsOne),
        (li, ki, RhoAssignment::Rho2IsOne),
    ] {
        let t = form.evaluate(x, y)?;
        if t <= 0 {
            continue;
        }
        if let Some(y2) = is_square_i128(t) {
            let triple = SolutionTriple::new(x as u64, y as u64, y2 as u64);
            debug_assert!(form.is_solution(&triple));
            return Ok(Some(InverseTriple { triple, orientation }));
        }
    }
    Ok(None)
}

// ---------------------------------------------------------------------------
// Descent trace
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ParityBranch {
    OddOdd,
    EvenOdd,
    OddEven,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Case9 {
    /// `delta1 = 4 p y1^4`, `delta2 = y2^4`
    Case9a,
    /// `delta1 = 4 y1^4`, `delta2 = p y2^4`
    Case9b,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Sign {
    Plus,
    Minus,
}

/// Point where the argument closes a branch by a congruence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ProofStep {
    OddOddParity,
    EvenOddParity,
    Case9b,
    MinusSign,
    NegativeRho1IsN,
}

impl ProofStep {
    fn modulus(self) -> u64 {
        match self {
            ProofStep::EvenOddParity => 8,
            _ => 4,
        }
    }
}

/// Why the pipeline stopped without a contradiction or a smaller solution.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Halt {
    /// The branch is closed by a congruence that needs the family
    /// hypotheses, which this input does not satisfy.
    HypothesesAbsent { step: ProofStep },
    /// `n^2 - m <= 0`: no factorization `... = p y0^4` with `p > 0`.
    NonPositiveP,
    DeltaSplit { reason: String },
    DeltasNotCoprime { gcd: u128 },
    /// `p` divides neither half.
    PDividesNeither,
    /// The halves are not of the shape `4p y1^4, y2^4` (or `4 y1^4, p y2^4`).
    FourthPowerStructure { case: Case9 },
    /// The auxiliary `x^2 + ell*y^2 = z^2` solution has no parametrization.
    NoParametrization { ell: u64, triple: ConicTriple },
    /// The parametrization uses `d = 1`.
    ParameterDIsOne,
    /// `k` or `lambda` is not a perfect square.
    SquareSplit,
    NoUnitFactor,
    /// The constructed triple failed its own check; indicates a bug.
    DescentCheckFailed { triple: SolutionTriple },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Outcome {
    ContradictionMod4 { step: ProofStep },
    ContradictionMod8 { step: ProofStep },
    /// A solution with `k1 * lambda1 < x0 * y0`.
    Descended(SolutionTriple),
    Halted(Halt),
}

/// Audit record of one pass through the argument.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DescentTrace {
    pub form: FamilyQuarticForm,
    /// `n^2 - m`.
    pub p: i128,
    /// Present when `(n, p)` satisfies every family hypothesis.
    pub combo: Option<FamilyCombo>,
    pub input: SolutionTriple,
    pub primitive: SolutionTriple,
    pub branch: ParityBranch,
    /// `delta1 + delta2` was split with the odd half first and swapped.
    pub deltas_swapped: bool,
    pub delta1: Option<u128>,
    pub delta2: Option<u128>,
    pub case9: Option<Case9>,
    pub y1: Option<u64>,
    pub y2: Option<u64>,
    /// Parameters of the auxiliary conic solution, after sign
    /// canonicalization.
    pub conic: Option<ConicParametrization>,
    pub sign: Option<Sign>,
    /// The parameters were swapped to turn a minus sign into a plus.
    pub sign_canonicalized: bool,
    pub k1: Option<u64>,
    pub lambda1: Option<u64>,
    pub rho_assignment: Option<RhoAssignment>,
    pub outcome: Outcome,
}

impl DescentTrace {
    fn new(form: FamilyQuarticForm, input: SolutionTriple, primitive: SolutionTriple) -> Self {
        let p = form.p();
        let combo = u64::try_from(p).ok().and_then(|p| make_combo(form.n, p).ok());
        DescentTrace {
            form,
            p,
            combo,
            input,
            primitive,
            branch: ParityBranch::OddEven,
            deltas_swapped: false,
            delta1: None,
            delta2: None,
            case9: None,
            y1: None,
            y2: None,
            conic: None,
            sign: None,
            sign_canonicalized: false,
            k1: None,
            lambda1: None,
            rho_assignment: None,
            outcome: Outcome::Halted(Halt::NonPositiveP),
        }
    }

    fn close(&mut self, step: ProofStep) {
        self.outcome = match (self.combo.is_some(), step.modulus()) {
            (false, _) => Outcome::Halted(Halt::HypothesesAbsent { step }),
            (true, 8) => Outcome::ContradictionMod8 { step },
            (true, _) => Outcome::ContradictionMod4 { step },
        };
    }

    fn halt(&mut self, h: Halt) {
        self.outcome = Outcome::Halted(h);
    }
}

/// Runs the full argument on a claimed solution of `form`.
///
/// Fails with [`QuarticError::NotASolution`] when `s` does not satisfy the
/// form, which is the only possible result for family members.
pub fn descend(form: &FamilyQuarticForm, s: SolutionTriple) -> Result<DescentTrace, DescentError> {
    if !form.is_solution(&s) {
        return Err(QuarticError::NotASolution { x: s.x, y: s.y, z: s.z }.into());
    }
    let prim = reduce_primitive(form, s)?;
    let mut trace = DescentTrace::new(*form, s, prim);
    let (x0, y0, z0) = (prim.x, prim.y, prim.z);
    trace.branch = match (x0 % 2, y0 % 2) {
        (1, 1) => ParityBranch::OddOdd,
        (0, _) => ParityBranch::EvenOdd,
        _ => ParityBranch::OddEven,
    };
    match trace.branch {
        ParityBranch::OddOdd => {
            trace.close(ProofStep::OddOddParity);
            return Ok(trace);
        }
        ParityBranch::EvenOdd => {
            trace.close(ProofStep::EvenOddParity);
            return Ok(trace);
        }
        ParityBranch::OddEven => {}
    }
    let Ok(p) = u128::try_from(trace.p) else {
        trace.halt(Halt::NonPositiveP);
        return Ok(trace);
    };
    if p == 0 {
        trace.halt(Halt::NonPositiveP);
        return Ok(trace);
    }

    let (mut d1, mut d2) = match split_deltas(x0, y0, z0, form.n) {
        Ok(v) => v,
        Err(e) => {
            trace.halt(Halt::DeltaSplit { reason: e.to_string() });
            return Ok(trace);
        }
    };
    if d1 % 2 == 1 {
        std::mem::swap(&mut d1, &mut d2);
        trace.deltas_swapped = true;
    }
    trace.delta1 = Some(d1);
    trace.delta2 = Some(d2);
    let g = gcd_u128(d1, d2);
    if g != 1 {
        trace.halt(Halt::DeltasNotCoprime { gcd: g });
        return Ok(trace);
    }

    let case = if d1 % p == 0 {
        Case9::Case9a
    } else if d2 % p == 0 {
        Case9::Case9b
    } else {
        trace.halt(Halt::PDividesNeither);
        return Ok(trace);
    };
    trace.case9 = Some(case);
    let (q1, q2) = match case {
        Case9::Case9a => (p.checked_mul(4).filter(|q| d1 % q == 0).map(|q| d1 / q), Some(d2)),
        Case9::Case9b => ((d1 % 4 == 0).then_some(d1 / 4), Some(d2 / p)),
    };
    let roots = q1.and_then(is_fourth_power).zip(q2.and_then(is_fourth_power));
    let Some((y1, y2)) = roots.filter(|&(a, b)| 2 * a * b == y0 as u128) else {
        trace.halt(Halt::FourthPowerStructure { case });
        return Ok(trace);
    };
    let (y1, y2) = (y1 as u64, y2 as u64);
    trace.y1 = Some(y1);
    trace.y2 = Some(y2);
    if case == Case9::Case9b {
        trace.close(ProofStep::Case9b);
        return Ok(trace);
    }

    // Case 9a: x0^2 + m (2 y1^2)^2 = (y2^2 - 2n y1^2)^2
    let y1sq = y1 as u128 * y1 as u128;
    let w = (y2 as i128 * y2 as i128) - 2 * form.n as i128 * y1sq as i128;
    let two_y1sq = u64::try_from(2 * y1sq).map_err(|_| DescentError::Overflow("2 y1^2"))?;
    let w_abs = u64::try_from(w.unsigned_abs()).map_err(|_| DescentError::Overflow("y2^2 - 2n y1^2"))?;
    let positive_m = form.m > 0;
    let ell = form.m.unsigned_abs();
    let triple = if positive_m {
        ConicTriple::new(x0, two_y1sq, w_abs)
    } else {
        ConicTriple::new(w_abs, two_y1sq, x0)
    };
    let Some(mut param) = find_parametrization(ell, triple) else {
        trace.halt(Halt::NoParametrization { ell, triple });
        return Ok(trace);
    };
    trace.sign = Some(if w > 0 { Sign::Plus } else { Sign::Minus });
    if !positive_m && w < 0 {
        // y2^2 - 2n y1^2 = -d(rho1 k^2 - rho2 l^2)/2 is the plus form with
        // (rho1, k) and (rho2, lambda) exchanged
        std::mem::swap(&mut param.rho1, &mut param.rho2);
        std::mem::swap(&mut param.k, &mut param.lambda);
        trace.sign_canonicalized = true;
    }
    trace.conic = Some(param);
    trace.rho_assignment = Some(RhoAssignment::of(&param));
    if param.d == 1 {
        trace.halt(Halt::ParameterDIsOne);
        return Ok(trace);
    }
    let (Some(k1), Some(l1)) = (
        is_perfect_square(param.k as u128),
        is_perfect_square(param.lambda as u128),
    ) else {
        trace.halt(Halt::SquareSplit);
        return Ok(trace);
    };
    let (k1, l1) = (k1 as u64, l1 as u64);
    trace.k1 = Some(k1);
    trace.lambda1 = Some(l1);

    let candidate = match (positive_m, trace.sign, trace.rho_assignment) {
        (true, Some(Sign::Minus), _) => {
            trace.close(ProofStep::MinusSign);
            return Ok(trace);
        }
        (false, _, Some(RhoAssignment::Rho2IsOne)) => {
            trace.close(ProofStep::NegativeRho1IsN);
            return Ok(trace);
        }
        (_, _, Some(RhoAssignment::NoUnitFactor)) => {
            trace.halt(Halt::NoUnitFactor);
            return Ok(trace);
        }
        (true, _, Some(RhoAssignment::Rho2IsOne)) => SolutionTriple::new(l1, k1, y2),
        _ => SolutionTriple::new(k1, l1, y2),
    };
    let smaller = (k1 as u128 * l1 as u128) < (x0 as u128 * y0 as u128);
    if form.is_solution(&candidate) && smaller {
        trace.outcome = Outcome::Descended(candidate);
    } else {
        trace.halt(Halt::DescentCheckFailed { triple: candidate });
    }
    Ok(trace)
}

pub fn descend_combo(combo: &FamilyCombo, s: SolutionTriple) -> Result<DescentTrace, DescentError> {
    descend(&FamilyQuarticForm::new(combo.n, combo.m)?, s)
}

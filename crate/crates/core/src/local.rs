//! Local methods for `a x^4 + b x^2y^2 + c y^4 = d z^2`: primitive
//! solvability modulo prime powers, the quadratic system
//! `a u^2 + b v^2 + c w^2 = d z^2, uw = v^2`, the Aitken–Lemmermeyer
//! conditions, and the Selmer cubic fixture.
//!
//! Local solvability is decided by exhaustive residue scans; witnesses are
//! always the lexicographically least `(x, y, z)` so results do not depend
//! on the number of workers.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::arith::{
    is_kth_power_residue, is_perfect_square, is_prime, is_squarefree, factorize, prime_power,
    rem_euclid,
};
use crate::quartic::{search_general, GeneralQuarticForm, QuarticError, QuarticForm, SolutionTriple};

/// Default largest modulus accepted by the residue scans.
pub const DEFAULT_SCAN_LIMIT: u64 = 100_000;

/// Note attached to verdicts where the paper does not claim the (13)/(14)
/// equivalence of local solvability.
pub const EQUIVALENCE_NOT_CLAIMED: &str =
    "k = 1 and p | d: local equivalence with the quadratic system not claimed";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LocalError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("exponent k must be at least 1")]
    ZeroExponent,
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("modulus p^k overflows 64 bits")]
    ModulusOverflow,
    #[error("modulus {q} exceeds the scan limit {limit}; raise --scan-limit to scan it")]
    ModulusTooLarge { q: u64, limit: u64 },
    #[error("b^2 - 4ac = 0: the quadratic system is degenerate")]
    DegenerateDiscriminant,
    #[error("d = {0} is not squarefree")]
    DNotSquarefree(u64),
    #[error(transparent)]
    Quartic(#[from] QuarticError),
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
}

/// The modulus `p^k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct LocalModulus {
    pub p: u64,
    pub k: u32,
}

impl LocalModulus {
    pub fn new(p: u64, k: u32) -> Result<Self, LocalError> {
        if !is_prime(p) {
            return Err(LocalError::NotPrime(p));
        }
        if k == 0 {
            return Err(LocalError::ZeroExponent);
        }
        p.checked_pow(k).ok_or(LocalError::ModulusOverflow)?;
        Ok(Self { p, k })
    }

    /// Parses `q = p^k`.
    pub fn from_prime_power(q: u64) -> Result<Self, LocalError> {
        let (p, k) = prime_power(q).ok_or(LocalError::NotPrimePower(q))?;
        Self::new(p, k)
    }

    pub fn value(&self) -> u64 {
        self.p.pow(self.k)
    }
}

impl std::fmt::Display for LocalModulus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}^{}", self.p, self.k)
    }
}

/// Every prime power `p^k <= limit`, ordered by value.
pub fn prime_powers_up_to(limit: u64) -> Vec<LocalModulus> {
    let mut out: Vec<LocalModulus> = (2..=limit)
        .filter_map(|q| prime_power(q).map(|(p, k)| LocalModulus { p, k }))
        .collect();
    out.sort_by_key(|m| m.value());
    out
}

/// Lexicographically least `(x, y, z)` in `[0, q)^3` with
/// `lhs(x, y) ≡ rhs(z) (mod q)` and not all coordinates divisible by `p`.
fn lex_least_witness(
    modulus: LocalModulus,
    lhs: impl Fn(u64, u64) -> u64 + Sync,
    rhs: impl Fn(u64) -> u64,
) -> Option<[u64; 3]> {
    let (p, q) = (modulus.p, modulus.value());
    const NONE: u64 = u64::MAX;
    // least z hitting each residue, and least z that is a unit mod p
    let mut any = vec![NONE; q as usize];
    let mut unit = vec![NONE; q as usize];
    for z in 0..q {
        let r = rhs(z) as usize;
        if any[r] == NONE {
            any[r] = z;
        }
        if z % p != 0 && unit[r] == NONE {
            unit[r] = z;
        }
    }
    (0..q).into_par_iter().find_map_first(|x| {
        (0..q).find_map(|y| {
            let r = lhs(x, y) as usize;
            let table = if x % p != 0 || y % p != 0 { &any } else { &unit };
            (table[r] != NONE).then(|| [x, y, table[r]])
        })
    })
}

fn check_scan_limit(modulus: LocalModulus, scan_limit: u64) -> Result<u64, LocalError> {
    let q = modulus.value();
    if q > scan_limit {
        return Err(LocalError::ModulusTooLarge { q, limit: scan_limit });
    }
    Ok(q)
}

fn residue(v: i128, q: u64) -> u128 {
    rem_euclid(v, q) as u128
}

/// Least primitive solution of the form modulo `p^k`, if any.
pub fn primitive_solvable_mod(
    form: &GeneralQuarticForm,
    modulus: LocalModulus,
    scan_limit: u64,
) -> Result<Option<[u64; 3]>, LocalError> {
    let q = check_scan_limit(modulus, scan_limit)?;
    let qq = q as u128;
    let (a, b, c) = form.coefficients();
    let (a, b, c, d) = (residue(a, q), residue(b, q), residue(c, q), form.d as u128 % qq);
    Ok(lex_least_witness(
        modulus,
        |x, y| {
            let x2 = (x as u128 * x as u128) % qq;
            let y2 = (y as u128 * y as u128) % qq;
            let t = a * (x2 * x2 % qq) % qq + b * (x2 * y2 % qq) % qq + c * (y2 * y2 % qq) % qq;
            (t % qq) as u64
        },
        |z| (d * ((z as u128 * z as u128) % qq) % qq) as u64,
    ))
}

/// Whether `(x, y, z)` is a primitive solution modulo `p^k`.
pub fn is_local_witness(form: &GeneralQuarticForm, modulus: LocalModulus, w: [u64; 3]) -> bool {
    let q = modulus.value();
    let primitive = w.iter().any(|&v| v % modulus.p != 0);
    let (a, b, c) = form.coefficients();
    let (x, y, z) = (w[0] as i128 % q as i128, w[1] as i128 % q as i128, w[2] as i128 % q as i128);
    let (x2, y2) = (x * x % q as i128, y * y % q as i128);
    let lhs = residue(a, q) as i128 * (x2 * x2 % q as i128)
        + residue(b, q) as i128 * (x2 * y2 % q as i128)
        + residue(c, q) as i128 * (y2 * y2 % q as i128);
    let rhs = (form.d % q) as i128 * (z * z % q as i128);
    primitive && rem_euclid(lhs - rhs, q) == 0
}

/// Whether the form has a nontrivial real solution. With `d > 0` this holds
/// iff `a t^2 + b t + c >= 0` for some `t = x^2/y^2` in `[0, ∞]`.
pub fn real_solvable(form: &GeneralQuarticForm) -> bool {
    let (a, b, c) = form.coefficients();
    a >= 0 || c >= 0 || (b > 0 && b * b - 4 * a * c >= 0)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LocalVerdict {
    pub modulus: LocalModulus,
    pub q: u64,
    pub solvable: bool,
    pub witness: Option<[u64; 3]>,
    pub note: Option<&'static str>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LocalReport {
    pub form: GeneralQuarticForm,
    pub real_solvable: bool,
    pub verdicts: Vec<LocalVerdict>,
    pub global_bound: u64,
    pub global_solutions: usize,
    /// The first few global solutions, if any.
    pub global_sample: Vec<SolutionTriple>,
}

impl LocalReport {
    /// Every claimed witness re-checks and every global sample solves.
    pub fn self_validates(&self) -> bool {
        self.verdicts.iter().all(|v| match v.witness {
            Some(w) => v.solvable && is_local_witness(&self.form, v.modulus, w),
            None => !v.solvable,
        }) && self.global_sample.iter().all(|s| self.form.is_solution(s))
    }

    pub fn all_locally_solvable(&self) -> bool {
        self.verdicts.iter().all(|v| v.solvable)
    }
}

pub fn local_verdict(
    form: &GeneralQuarticForm,
    modulus: LocalModulus,
    scan_limit: u64,
) -> Result<LocalVerdict, LocalError> {
    let witness = primitive_solvable_mod(form, modulus, scan_limit)?;
    let note = (modulus.k == 1 && form.d % modulus.p == 0).then_some(EQUIVALENCE_NOT_CLAIMED);
    Ok(LocalVerdict {
        modulus,
        q: modulus.value(),
        solvable: witness.is_some(),
        witness,
        note,
    })
}

/// Local verdicts for each modulus plus a bounded global search.
pub fn local_report(
    form: &GeneralQuarticForm,
    moduli: &[LocalModulus],
    global_bound: u64,
    scan_limit: u64,
) -> Result<LocalReport, LocalError> {
    let verdicts = moduli
        .iter()
        .map(|&m| local_verdict(form, m, scan_limit))
        .collect::<Result<Vec<_>, _>>()?;
    let global = search_general(form, global_bound)?;
    Ok(LocalReport {
        form: *form,
        real_solvable: real_solvable(form),
        verdicts,
        global_bound,
        global_solutions: global.len(),
        global_sample: global.into_iter().take(10).collect(),
    })
}

/// Pairs `(p^k, p^j)` with `k < j` where the form is unsolvable mod `p^k`
/// but solvable mod `p^j`. Always empty for correct scans.
pub fn monotonicity_violations(verdicts: &[LocalVerdict]) -> Vec<(LocalModulus, LocalModulus)> {
    let mut out = Vec::new();
    for lo in verdicts.iter().filter(|v| !v.solvable) {
        for hi in verdicts {
            if hi.modulus.p == lo.modulus.p && hi.modulus.k > lo.modulus.k && hi.solvable {
                out.push((lo.modulus, hi.modulus));
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Quadratic system
// ---------------------------------------------------------------------------

/// `a u^2 + b v^2 + c w^2 = d z^2` with `uw = v^2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct QuadraticSystemSolution {
    pub u: i64,
    pub v: i64,
    pub w: i64,
    pub z: i64,
}

impl QuadraticSystemSolution {
    pub fn satisfies(&self, form: &GeneralQuarticForm) -> bool {
        let (a, b, c) = form.coefficients();
        let (u, v, w, z) = (self.u as i128, self.v as i128, self.w as i128, self.z as i128);
        let nontrivial = u != 0 || v != 0 || w != 0 || z != 0;
        nontrivial
            && u * w == v * v
            && a * u * u + b * v * v + c * w * w == form.d as i128 * z * z
    }

    /// Representative of `±(u, v, w)` with `u > 0`, or `u = 0, w >= 0`;
    /// `z >= 0`.
    pub fn canonical(self) -> Self {
        let flip = self.u < 0 || (self.u == 0 && self.w < 0);
        let s = if flip { -1 } else { 1 };
        Self {
            u: s * self.u,
            v: s * self.v,
            w: s * self.w,
            z: self.z.abs(),
        }
    }
}

fn validate_side_conditions(form: &GeneralQuarticForm) -> Result<(), LocalError> {
    if form.discriminant() == 0 {
        return Err(LocalError::DegenerateDiscriminant);
    }
    if !is_squarefree(form.d) {
        return Err(LocalError::DNotSquarefree(form.d));
    }
    Ok(())
}

/// All canonical nontrivial solutions of the system with every coordinate
/// in `[-bound, bound]`, sorted. Rejects forms with `b^2 - 4ac = 0` or
/// non-squarefree `d`.
pub fn system_search(
    form: &GeneralQuarticForm,
    bound: u64,
) -> Result<Vec<QuadraticSystemSolution>, LocalError> {
    validate_side_conditions(form)?;
    system_search_unchecked(form, bound)
}

/// [`system_search`] without the side-condition checks, for degenerate
/// forms such as the perfect square `(x^2 + 2y^2)^2`.
pub fn system_search_unchecked(
    form: &GeneralQuarticForm,
    bound: u64,
) -> Result<Vec<QuadraticSystemSolution>, LocalError> {
    let b = i64::try_from(bound).map_err(|_| LocalError::Overflow("bound"))?;
    if b.checked_mul(b).and_then(|t| t.checked_mul(4)).is_none() {
        return Err(LocalError::Overflow("bound"));
    }
    let (ca, cb, cc) = form.coefficients();
    let d = form.d as i128;
    let mut out: Vec<QuadraticSystemSolution> = (0..=b)
        .into_par_iter()
        .flat_map_iter(|u| {
            let w_lo = if u == 0 { 0 } else { -b };
            (w_lo..=b).flat_map(move |w| {
                let uw = u as i128 * w as i128;
                let root = if uw >= 0 { is_perfect_square(uw as u128) } else { None };
                let root = root.filter(|&r| r <= b as u128).map(|r| r as i64);
                root.into_iter().flat_map(move |r| {
                    let signs: &[i64] = if r == 0 { &[1] } else { &[-1, 1] };
                    signs.iter().filter_map(move |&s| {
                        let v = s * r;
                        let (u, v_, w_) = (u as i128, v as i128, w as i128);
                        let lhs = ca * u * u + cb * v_ * v_ + cc * w_ * w_;
                        if lhs < 0 || lhs % d != 0 {
                            return None;
                        }
                        let z = is_perfect_square((lhs / d) as u128)?;
                        let sol = QuadraticSystemSolution { u: u as i64, v, w, z: z as i64 };
                        (z <= b as u128 && sol.satisfies(form)).then_some(sol)
                    })
                })
            })
        })
        .collect();
    out.sort();
    Ok(out)
}

/// Outcome of comparing the quartic and the system at a common bound.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorrespondenceReport {
    pub form: GeneralQuarticForm,
    pub bound: u64,
    pub quartic_solutions: usize,
    /// Images `(x^2, xy, y^2, z)` that failed to solve the system.
    pub forward_failures: Vec<SolutionTriple>,
    pub system_solutions: usize,
    /// System solutions within bound with no quartic preimage `u = x^2,
    /// w = y^2`. Reported, not asserted: the equivalence is about all of
    /// `Z`, and a finite box cannot certify it.
    pub backward_without_preimage: Vec<QuadraticSystemSolution>,
}

impl CorrespondenceReport {
    pub fn forward_verified(&self) -> bool {
        self.forward_failures.is_empty()
    }
}

pub fn check_13_14_correspondence(
    form: &GeneralQuarticForm,
    bound: u64,
) -> Result<CorrespondenceReport, LocalError> {
    let system = system_search(form, bound)?;
    let quartic = search_general(form, bound)?;
    let forward_failures = quartic
        .iter()
        .copied()
        .filter(|s| {
            let img = (|| {
                let x = i64::try_from(s.x).ok()?;
                let y = i64::try_from(s.y).ok()?;
                Some(QuadraticSystemSolution {
                    u: x.checked_mul(x)?,
                    v: x.checked_mul(y)?,
                    w: y.checked_mul(y)?,
                    z: i64::try_from(s.z).ok()?,
                })
            })();
            !img.is_some_and(|i| i.satisfies(form))
        })
        .collect();
    let backward_without_preimage = system
        .iter()
        .copied()
        .filter(|sol| {
            let pre = (|| {
                let x = is_perfect_square(u128::try_from(sol.u).ok()?)?;
                let y = is_perfect_square(u128::try_from(sol.w).ok()?)?;
                (x * y == sol.v.unsigned_abs() as u128).then_some(())?;
                let t = SolutionTriple::new(x as u64, y as u64, sol.z as u64);
                form.is_solution(&t).then_some(())
            })();
            pre.is_none()
        })
        .collect();
    Ok(CorrespondenceReport {
        form: *form,
        bound,
        quartic_solutions: quartic.len(),
        forward_failures,
        system_solutions: system.len(),
        backward_without_preimage,
    })
}

// ---------------------------------------------------------------------------
// Aitken–Lemmermeyer
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AitkenLemmermeyerReport {
    pub q: u64,
    pub d: u64,
    /// `q` prime and `q ≡ 1 (mod 16)`.
    pub q_prime_1_mod_16: bool,
    pub d_squarefree: bool,
    /// `d` a nonzero square but not a fourth power mod `q`.
    pub d_square_not_fourth_mod_q: bool,
    /// `q` a fourth power mod every odd prime dividing `d`.
    pub q_fourth_power_mod_odd_divisors: bool,
    pub holds: bool,
}

impl AitkenLemmermeyerReport {
    /// The associated counterexample form `x^4 - q y^4 = d z^2`.
    pub fn form(&self) -> GeneralQuarticForm {
        GeneralQuarticForm { a: 1, b: 0, c: -(self.q as i64), d: self.d }
    }
}

pub fn aitken_lemmermeyer_check(q: u64, d: u64) -> AitkenLemmermeyerReport {
    let q_ok = is_prime(q) && q % 16 == 1;
    let d_squarefree = is_squarefree(d);
    let di = i64::try_from(d).unwrap_or(0);
    let residue = |k| is_kth_power_residue(di, k, q).unwrap_or(false);
    let d_residue = q_ok && di != 0 && residue(2) && !residue(4);
    let q_fourth = factorize(d).iter().filter(|&&(p, _)| p != 2).all(|&(p, _)| {
        i64::try_from(q % p)
            .ok()
            .and_then(|qr| is_kth_power_residue(qr, 4, p).ok())
            .unwrap_or(false)
    });
    AitkenLemmermeyerReport {
        q,
        d,
        q_prime_1_mod_16: q_ok,
        d_squarefree,
        d_square_not_fourth_mod_q: d_residue,
        q_fourth_power_mod_odd_divisors: q_fourth,
        holds: q_ok && d_squarefree && d_residue && q_fourth,
    }
}

/// Every `(q, d)` with `q <= q_max`, `d <= d_max` satisfying all four
/// conditions, ordered by `q` then `d`.
pub fn hasse_scan(q_max: u64, d_max: u64) -> Vec<(u64, u64)> {
    let mut out: Vec<(u64, u64)> = (2..=q_max)
        .into_par_iter()
        .filter(|&q| is_prime(q) && q % 16 == 1)
        .flat_map_iter(|q| {
            (1..=d_max)
                .filter(move |&d| aitken_lemmermeyer_check(q, d).holds)
                .map(move |d| (q, d))
        })
        .collect();
    out.sort();
    out
}

// ---------------------------------------------------------------------------
// Selmer
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SelmerReport {
    pub bound: u64,
    /// Nontrivial integer solutions of `3x^3 + 4y^3 + 5z^3 = 0` in the box.
    pub global_solutions: Vec<(i64, i64, i64)>,
    pub verdicts: Vec<LocalVerdict>,
}

impl SelmerReport {
    pub fn self_validates(&self) -> bool {
        self.verdicts.iter().all(|v| match v.witness {
            Some(w) => v.solvable && is_selmer_witness(v.modulus, w),
            None => !v.solvable,
        }) && self.global_solutions.iter().all(|&(x, y, z)| {
            let c = |t: i64| (t as i128).pow(3);
            3 * c(x) + 4 * c(y) + 5 * c(z) == 0
        })
    }
}

fn selmer_residue(x: u64, y: u64, z: u64, q: u64) -> u64 {
    let c = |t: u64| {
        let t = (t % q) as u128;
        t * t % q as u128 * t % q as u128
    };
    ((3 * c(x) + 4 * c(y) + 5 * c(z)) % q as u128) as u64
}

pub fn is_selmer_witness(modulus: LocalModulus, w: [u64; 3]) -> bool {
    w.iter().any(|&v| v % modulus.p != 0) && selmer_residue(w[0], w[1], w[2], modulus.value()) == 0
}

/// Least primitive solution of `3x^3 + 4y^3 + 5z^3 ≡ 0 (mod p^k)`.
pub fn selmer_solvable_mod(
    modulus: LocalModulus,
    scan_limit: u64,
) -> Result<Option<[u64; 3]>, LocalError> {
    let q = check_scan_limit(modulus, scan_limit)?;
    Ok(lex_least_witness(
        modulus,
        // 5z^3 ≡ -(3x^3 + 4y^3)
        |x, y| (q - selmer_residue(x, y, 0, q)) % q,
        |z| selmer_residue(0, 0, z, q),
    ))
}

fn icbrt(n: i128) -> Option<i64> {
    let guess = (n.unsigned_abs() as f64).cbrt().round() as i128;
    (guess - 1..=guess + 1)
        .map(|g| if n < 0 { -g } else { g })
        .find(|g| g * g * g == n)
        .map(|g| g as i64)
}

pub fn selmer_fixture(
    bound: u64,
    moduli: &[LocalModulus],
    scan_limit: u64,
) -> Result<SelmerReport, LocalError> {
    let b = i64::try_from(bound)
        .ok()
        .filter(|b| *b <= 1 << 20)
        .ok_or(LocalError::Overflow("bound"))?;
    let mut global: Vec<(i64, i64, i64)> = (-b..=b)
        .into_par_iter()
        .flat_map_iter(|x| {
            (-b..=b).filter_map(move |y| {
                let s = -(3 * (x as i128).pow(3) + 4 * (y as i128).pow(3));
                if s % 5 != 0 {
                    return None;
                }
                let z = icbrt(s / 5)?;
                (z.abs() <= b && (x, y, z) != (0, 0, 0)).then_some((x, y, z))
            })
        })
        .collect();
    global.sort();
    let verdicts = moduli
        .iter()
        .map(|&m| {
            let witness = selmer_solvable_mod(m, scan_limit)?;
            Ok(LocalVerdict {
                modulus: m,
                q: m.value(),
                solvable: witness.is_some(),
                witness,
                note: None,
            })
        })
        .collect::<Result<Vec<_>, LocalError>>()?;
    Ok(SelmerReport { bound, global_solutions: global, verdicts })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lr() -> GeneralQuarticForm {
        GeneralQuarticForm::new(1, 0, -17, 2).unwrap()
    }

    fn m(q: u64) -> LocalModulus {
        LocalModulus::from_prime_power(q).unwrap()
    }

    fn sys(u: i64, v: i64, w: i64, z: i64) -> QuadraticSystemSolution {
        QuadraticSystemSolution { u, v, w, z }
    }

    #[test]
    fn modulus_validation() {
        assert_eq!(m(8), LocalModulus { p: 2, k: 3 });
        assert_eq!(LocalModulus::new(4, 1), Err(LocalError::NotPrime(4)));
        assert_eq!(LocalModulus::new(3, 0), Err(LocalError::ZeroExponent));
        assert_eq!(LocalModulus::from_prime_power(12), Err(LocalError::NotPrimePower(12)));
        assert_eq!(LocalModulus::new(2, 64), Err(LocalError::ModulusOverflow));
        let pp = prime_powers_up_to(20);
        let qs: Vec<u64> = pp.iter().map(|m| m.value()).collect();
        assert_eq!(qs, vec![2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19]);
    }

    #[test]
    fn lind_reichardt_witnesses() {
        let w = |q| primitive_solvable_mod(&lr(), m(q), DEFAULT_SCAN_LIMIT).unwrap();
        assert_eq!(w(2), Some([0, 0, 1]));
        assert_eq!(w(3), Some([1, 1, 1]));
        assert_eq!(w(4), Some([1, 1, 0]));
        assert_eq!(w(5), Some([0, 1, 2]));
        assert_eq!(w(8), Some([1, 1, 0]));
        assert_eq!(w(16), Some([1, 1, 0]));
        assert_eq!(w(17), Some([0, 1, 0]));
        assert_eq!(w(289), Some([1, 0, 122]));
    }

    #[test]
    fn unit_coefficient_witness() {
        let f = GeneralQuarticForm::new(1, 3, 5, 1).unwrap();
        for q in [3, 5, 7, 11, 13] {
            // a = d = 1 always admits (1, 0, 1)
            assert!(is_local_witness(&f, m(q), [1, 0, 1]));
            let w = primitive_solvable_mod(&f, m(q), 100).unwrap().unwrap();
            assert!(w <= [1, 0, 1] && is_local_witness(&f, m(q), w));
        }
    }

    #[test]
    fn scan_limit_is_enforced() {
        assert_eq!(
            primitive_solvable_mod(&lr(), m(289), 100),
            Err(LocalError::ModulusTooLarge { q: 289, limit: 100 })
        );
    }

    #[test]
    fn solvability_is_monotone() {
        // x^4 + y^4 = 3z^2: solvable mod 3, not primitively mod 9 or 27
        let f = GeneralQuarticForm::new(1, 0, 1, 3).unwrap();
        let verdicts: Vec<_> = [3, 9, 27]
            .iter()
            .map(|&q| local_verdict(&f, m(q), DEFAULT_SCAN_LIMIT).unwrap())
            .collect();
        assert_eq!(verdicts.iter().map(|v| v.solvable).collect::<Vec<_>>(), [true, false, false]);
        assert!(monotonicity_violations(&verdicts).is_empty());
        let moduli: Vec<_> = prime_powers_up_to(400).into_iter().collect();
        let r = local_report(&lr(), &moduli, 10, DEFAULT_SCAN_LIMIT).unwrap();
        assert!(monotonicity_violations(&r.verdicts).is_empty());
        assert!(r.self_validates());
    }

    #[test]
    fn witnesses_are_lex_least() {
        let f = GeneralQuarticForm::new(1, 0, 1, 3).unwrap();
        for q in [2u64, 3, 4, 5, 7, 8] {
            let md = m(q);
            let mut expect = None;
            'outer: for x in 0..q {
                for y in 0..q {
                    for z in 0..q {
                        if is_local_witness(&f, md, [x, y, z]) {
                            expect = Some([x, y, z]);
                            break 'outer;
                        }
                    }
                }
            }
            assert_eq!(primitive_solvable_mod(&f, md, 100).unwrap(), expect, "q = {q}");
        }
    }

    #[test]
    fn equivalence_note_surfaces() {
        let v = local_verdict(&lr(), m(2), 100).unwrap();
        assert_eq!(v.note, Some(EQUIVALENCE_NOT_CLAIMED));
        assert_eq!(local_verdict(&lr(), m(4), 100).unwrap().note, None);
        assert_eq!(local_verdict(&lr(), m(3), 100).unwrap().note, None);
    }

    #[test]
    fn real_solvability() {
        assert!(real_solvable(&lr()));
        assert!(!real_solvable(&GeneralQuarticForm::new(-1, 0, -1, 1).unwrap()));
        assert!(real_solvable(&GeneralQuarticForm::new(-1, 3, -1, 1).unwrap()));
        assert!(!real_solvable(&GeneralQuarticForm::new(-1, 1, -1, 1).unwrap()));
    }

    #[test]
    fn system_search_examples() {
        // b^2 - 4ac = 0 here, so only the unchecked search accepts it
        let f = GeneralQuarticForm::new(1, 4, 4, 1).unwrap();
        assert_eq!(system_search(&f, 3), Err(LocalError::DegenerateDiscriminant));
        assert_eq!(
            system_search_unchecked(&f, 3).unwrap(),
            vec![
                sys(0, 0, 1, 2),
                sys(1, -1, 1, 3),
                sys(1, 0, 0, 1),
                sys(1, 1, 1, 3),
                sys(2, 0, 0, 2),
                sys(3, 0, 0, 3)
            ]
        );
        assert!(system_search_unchecked(&f, 0).unwrap().is_empty());
        assert!(system_search(&lr(), 0).unwrap().is_empty());
        assert!(system_search(&lr(), 20).unwrap().is_empty());
        assert_eq!(
            system_search(&GeneralQuarticForm::new(1, 2, 1, 1).unwrap(), 3),
            Err(LocalError::DegenerateDiscriminant)
        );
        assert_eq!(
            system_search(&GeneralQuarticForm::new(1, 0, -17, 4).unwrap(), 3),
            Err(LocalError::DNotSquarefree(4))
        );
    }

    fn system_oracle(f: &GeneralQuarticForm, b: i64) -> Vec<QuadraticSystemSolution> {
        let mut out = Vec::new();
        for u in -b..=b {
            for v in -b..=b {
                for w in -b..=b {
                    for z in -b..=b {
                        let s = sys(u, v, w, z);
                        if s.satisfies(f) {
                            out.push(s.canonical());
                        }
                    }
                }
            }
        }
        out.sort();
        out.dedup();
        out
    }

    #[test]
    fn system_search_matches_oracle() {
        for (a, b, c, d) in [(1, 4, 4, 1), (1, 0, 8, 1), (1, 0, -17, 2), (1, 9, 27, 1), (2, -3, 1, 1), (-1, 5, 3, 6)] {
            let f = GeneralQuarticForm::new(a, b, c, d).unwrap();
            for bound in [0u64, 3, 7] {
                assert_eq!(system_search_unchecked(&f, bound).unwrap(), system_oracle(&f, bound as i64), "{f:?} {bound}");
            }
        }
    }

    #[test]
    fn correspondence_reports() {
        // x^4 + 8y^4 = z^2 has (1, 1, 3) and a nonzero discriminant
        let f = GeneralQuarticForm::new(1, 0, 8, 1).unwrap();
        let r = check_13_14_correspondence(&f, 5).unwrap();
        assert!(r.forward_verified());
        assert!(r.quartic_solutions > 0);
        let w = check_13_14_correspondence(&GeneralQuarticForm::new(1, 9, 27, 1).unwrap(), 50).unwrap();
        assert_eq!(w.quartic_solutions, 0);
        assert_eq!(w.system_solutions, 50);
        // (u, 0, 0, u) has a preimage only for square u
        assert_eq!(w.backward_without_preimage.len(), 50 - 7);
        let l = check_13_14_correspondence(&lr(), 50).unwrap();
        assert_eq!((l.quartic_solutions, l.system_solutions), (0, 0));
    }

    #[test]
    fn aitken_lemmermeyer_examples() {
        let r = aitken_lemmermeyer_check(17, 2);
        assert!(r.holds && r.q_prime_1_mod_16 && r.d_squarefree);
        assert!(r.d_square_not_fourth_mod_q && r.q_fourth_power_mod_odd_divisors);
        assert_eq!(r.form(), lr());
        let r = aitken_lemmermeyer_check(13, 2);
        assert!(!r.holds && !r.q_prime_1_mod_16);
        let r = aitken_lemmermeyer_check(17, 3);
        assert!(!r.holds && !r.d_square_not_fourth_mod_q);
        assert!(!aitken_lemmermeyer_check(17, 1).holds);
        assert!(!aitken_lemmermeyer_check(17, 0).holds);
        assert!(!aitken_lemmermeyer_check(17, 8).d_squarefree);
        assert_eq!(hasse_scan(17, 2), vec![(17, 2)]);
    }

    #[test]
    fn hasse_scan_is_consistent() {
        let hits = hasse_scan(200, 40);
        for &(q, d) in &hits {
            assert!(aitken_lemmermeyer_check(q, d).holds);
        }
        assert!(hits.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn selmer_examples() {
        let moduli: Vec<_> = [4, 8, 9, 5, 7].iter().map(|&q| m(q)).collect();
        let r = selmer_fixture(50, &moduli, DEFAULT_SCAN_LIMIT).unwrap();
        assert!(r.global_solutions.is_empty());
        let w: Vec<_> = r.verdicts.iter().map(|v| v.witness).collect();
        assert_eq!(
            w,
            vec![Some([0, 1, 0]), Some([1, 0, 1]), Some([0, 1, 1]), Some([0, 0, 1]), Some([1, 1, 0])]
        );
        assert!(r.self_validates());
    }

    #[test]
    fn integer_cube_root() {
        assert_eq!(icbrt(-27), Some(-3));
        assert_eq!(icbrt(26), None);
        assert_eq!(icbrt(0), Some(0));
    }
}

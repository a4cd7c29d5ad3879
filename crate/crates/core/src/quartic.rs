//! Quartic forms `x^4 + 2n x^2y^2 + m y^4` and `a x^4 + b x^2y^2 + c y^4`,
//! with bounded exhaustive searches for `form(x, y) = d z^2`.
//!
//! Both forms are even in `x` and `y`, so searching positive `x, y` loses
//! nothing.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{gcd, is_square_i128};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuarticError {
    #[error("form coefficient {0} must be nonzero")]
    ZeroCoefficient(&'static str),
    #[error("arithmetic overflow evaluating the form at (x, y) = ({x}, {y})")]
    Overflow { x: i64, y: i64 },
    #[error("({x}, {y}, {z}) does not satisfy the equation")]
    NotASolution { x: u64, y: u64, z: u64 },
    #[error("gcd(x, y)^2 = {delta_sq} does not divide z = {z}; input is inconsistent")]
    InconsistentInput { delta_sq: u128, z: u64 },
}

/// `x^4 + 2n x^2y^2 + m y^4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FamilyQuarticForm {
    pub n: u64,
    pub m: i64,
}

/// `a x^4 + b x^2y^2 + c y^4 = d z^2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GeneralQuarticForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SolutionTriple {
    pub x: u64,
    pub y: u64,
    pub z: u64,
}

impl SolutionTriple {
    pub fn new(x: u64, y: u64, z: u64) -> Self {
        Self { x, y, z }
    }
}

/// Common surface of both form types.
pub trait QuarticForm: Sync {
    /// `(a, b, c)` of `a x^4 + b x^2y^2 + c y^4`.
    fn coefficients(&self) -> (i128, i128, i128);
    /// Coefficient of `z^2` on the right.
    fn rhs(&self) -> u64;

    /// Left-hand side at `(x, y)`.
    fn value(&self, x: i64, y: i64) -> Result<i128, QuarticError> {
        let (a, b, c) = self.coefficients();
        eval_quartic(a, b, c, x, y).ok_or(QuarticError::Overflow { x, y })
    }

    /// Whether every evaluation with `|x|, |y| <= bound` fits in `i128`.
    fn fits(&self, bound: u64) -> bool {
        let (a, b, c) = self.coefficients();
        let t = bound as i128;
        let Some(t2) = t.checked_mul(t) else {
            return false;
        };
        let Some(t4) = t2.checked_mul(t2) else {
            return false;
        };
        [a, b, c]
            .iter()
            .try_fold(0i128, |acc, k| k.abs().checked_mul(t4).and_then(|v| acc.checked_add(v)))
            .is_some()
    }

    fn is_solution(&self, s: &SolutionTriple) -> bool {
        let (Ok(x), Ok(y)) = (i64::try_from(s.x), i64::try_from(s.y)) else {
            return false;
        };
        let Ok(v) = self.value(x, y) else {
            return false;
        };
        (s.z as u128)
            .checked_mul(s.z as u128)
            .and_then(|zz| zz.checked_mul(self.rhs() as u128))
            .is_some_and(|r| v >= 0 && r == v as u128)
    }
}

// a x^4 + b x^2 y^2 + c y^4 in checked i128
fn eval_quartic(a: i128, b: i128, c: i128, x: i64, y: i64) -> Option<i128> {
    let x2 = (x as i128).checked_mul(x as i128)?;
    let y2 = (y as i128).checked_mul(y as i128)?;
    let t1 = a.checked_mul(x2.checked_mul(x2)?)?;
    let t2 = b.checked_mul(x2.checked_mul(y2)?)?;
    let t3 = c.checked_mul(y2.checked_mul(y2)?)?;
    t1.checked_add(t2)?.checked_add(t3)
}

impl FamilyQuarticForm {
    pub fn new(n: u64, m: i64) -> Result<Self, QuarticError> {
        if n == 0 {
            return Err(QuarticError::ZeroCoefficient("n"));
        }
        if m == 0 {
            return Err(QuarticError::ZeroCoefficient("m"));
        }
        Ok(Self { n, m })
    }

    pub fn evaluate(&self, x: i64, y: i64) -> Result<i128, QuarticError> {
        self.value(x, y)
    }

    /// `n^2 - m`; the prime `p` for family members.
    pub fn p(&self) -> i128 {
        (self.n as i128) * (self.n as i128) - self.m as i128
    }

    pub fn as_general(&self) -> GeneralQuarticForm {
        GeneralQuarticForm {
            a: 1,
            b: 2 * self.n as i64,
            c: self.m,
            d: 1,
        }
    }
}

impl GeneralQuarticForm {
    pub fn new(a: i64, b: i64, c: i64, d: u64) -> Result<Self, QuarticError> {
        if d == 0 {
            return Err(QuarticError::ZeroCoefficient("d"));
        }
        Ok(Self { a, b, c, d })
    }

    pub fn evaluate(&self, x: i64, y: i64) -> Result<i128, QuarticError> {
        self.value(x, y)
    }

    /// `b^2 - 4ac`.
    pub fn discriminant(&self) -> i128 {
        (self.b as i128).pow(2) - 4 * self.a as i128 * self.c as i128
    }
}

impl QuarticForm for FamilyQuarticForm {
    fn coefficients(&self) -> (i128, i128, i128) {
        (1, 2 * self.n as i128, self.m as i128)
    }
    fn rhs(&self) -> u64 {
        1
    }
}

impl QuarticForm for GeneralQuarticForm {
    fn coefficients(&self) -> (i128, i128, i128) {
        (self.a as i128, self.b as i128, self.c as i128)
    }
    fn rhs(&self) -> u64 {
        self.d
    }
}

/// Free-function form of [`FamilyQuarticForm::evaluate`].
pub fn evaluate(form: &FamilyQuarticForm, x: i64, y: i64) -> Result<i128, QuarticError> {
    form.evaluate(x, y)
}

/// Divides out `delta = gcd(X, Y)`: returns `(X/delta, Y/delta, Z/delta^2)`.
pub fn reduce_primitive<F: QuarticForm + ?Sized>(
    form: &F,
    s: SolutionTriple,
) -> Result<SolutionTriple, QuarticError> {
    let delta = gcd(s.x, s.y);
    if delta <= 1 {
        return if form.is_solution(&s) {
            Ok(s)
        } else {
            Err(QuarticError::NotASolution { x: s.x, y: s.y, z: s.z })
        };
    }
    let delta_sq = delta as u128 * delta as u128;
    if s.z as u128 % delta_sq != 0 {
        return Err(QuarticError::InconsistentInput { delta_sq, z: s.z });
    }
    let reduced = SolutionTriple::new(s.x / delta, s.y / delta, (s.z as u128 / delta_sq) as u64);
    if !form.is_solution(&s) || !form.is_solution(&reduced) {
        return Err(QuarticError::NotASolution { x: s.x, y: s.y, z: s.z });
    }
    Ok(reduced)
}

/// How a search distributes its `x` stripes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Serial,
    #[default]
    Parallel,
}

fn stripe<F: QuarticForm + ?Sized>(
    form: &F,
    x: u64,
    bound: u64,
) -> Result<Vec<SolutionTriple>, QuarticError> {
    let d = form.rhs() as i128;
    let xi = i64::try_from(x).map_err(|_| QuarticError::Overflow { x: i64::MAX, y: 0 })?;
    let mut out = Vec::new();
    for y in 1..=bound {
        let yi = i64::try_from(y).map_err(|_| QuarticError::Overflow { x: xi, y: i64::MAX })?;
        let v = form.value(xi, yi)?;
        // z >= 1 needs v >= d; negative values are skipped
        if v < d || v % d != 0 {
            continue;
        }
        if let Some(z) = is_square_i128(v / d) {
            out.push(SolutionTriple::new(x, y, z as u64));
        }
    }
    Ok(out)
}

/// All `(x, y, z)` with `1 <= x, y <= bound`, `z >= 1` and
/// `form(x, y) = d z^2`, sorted by `(x, y)`.
pub fn search_form<F: QuarticForm + ?Sized>(
    form: &F,
    bound: u64,
    exec: Execution,
) -> Result<Vec<SolutionTriple>, QuarticError> {
    // A box that may overflow is scanned serially so the reported pair is
    // the first failing one in (x, y) order.
    if exec == Execution::Serial || !form.fits(bound) {
        let mut out = Vec::new();
        for x in 1..=bound {
            out.extend(stripe(form, x, bound)?);
        }
        return Ok(out);
    }
    let stripes: Vec<Vec<SolutionTriple>> = (1..=bound)
        .into_par_iter()
        .map(|x| stripe(form, x, bound))
        .collect::<Result<_, _>>()?;
    Ok(stripes.into_iter().flatten().collect())
}

pub fn search(form: &FamilyQuarticForm, xy_bound: u64) -> Result<Vec<SolutionTriple>, QuarticError> {
    search_form(form, xy_bound, Execution::Parallel)
}

pub fn search_general(
    form: &GeneralQuarticForm,
    xy_bound: u64,
) -> Result<Vec<SolutionTriple>, QuarticError> {
    search_form(form, xy_bound, Execution::Parallel)
}

//! Solutions of `x^2 + ell*y^2 = z^2`.
//!
//! A parameter tuple `(d, k, lambda, rho1, rho2)` with `rho1*rho2 = ell`
//! expands to
//!
//! ```text
//! x = d(rho1 k^2 - rho2 lambda^2)/2,  y = d k lambda,  z = d(rho1 k^2 + rho2 lambda^2)/2
//! ```
//!
//! and with `gcd(x, y) = 1` the factor `d` is always 1 or 2. The enumerator
//! ranges over every admissible tuple; [`brute_force_oracle`] scans `(x, y)`
//! directly and never touches the parametrization, so the two can be compared.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{divisor_pairs, gcd, gcd_u128, is_perfect_square};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConicError {
    #[error("parameter {0} must be positive")]
    ZeroParameter(&'static str),
    #[error("d must be 1 or 2 for primitive solutions, got {0}")]
    InvalidD(u64),
    #[error("k = {k} and lambda = {lambda} are not coprime")]
    NotCoprime { k: u64, lambda: u64 },
    #[error("rho1 * rho2 = {rho1} * {rho2} does not equal ell = {ell}")]
    RhoProduct { rho1: u64, rho2: u64, ell: u64 },
    #[error("rho1 k^2 - rho2 lambda^2 must be positive")]
    NonPositiveX,
    #[error("d(rho1 k^2 - rho2 lambda^2) is odd, so x is not an integer")]
    OddNumerator,
    #[error("arithmetic overflow (ell = {ell}, z_max = {z_max})")]
    Overflow { ell: u64, z_max: u64 },
}

/// The parameter tuple of one solution of `x^2 + ell*y^2 = z^2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ConicParametrization {
    pub ell: u64,
    pub d: u64,
    pub k: u64,
    pub lambda: u64,
    pub rho1: u64,
    pub rho2: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ConicTriple {
    pub x: u64,
    pub y: u64,
    pub z: u64,
}

impl ConicTriple {
    pub fn new(x: u64, y: u64, z: u64) -> Self {
        Self { x, y, z }
    }

    pub fn satisfies(&self, ell: u64) -> bool {
        let (x, y, z) = (self.x as u128, self.y as u128, self.z as u128);
        (ell as u128)
            .checked_mul(y * y)
            .and_then(|t| t.checked_add(x * x))
            .is_some_and(|lhs| lhs == z * z)
    }

    pub fn is_primitive(&self) -> bool {
        gcd(self.x, self.y) == 1
    }

    /// Output order: `z` ascending, then `x`.
    fn sort_key(&self) -> (u64, u64, u64) {
        (self.z, self.x, self.y)
    }
}

impl ConicParametrization {
    pub fn validate(&self) -> Result<(), ConicError> {
        for (name, v) in [
            ("ell", self.ell),
            ("k", self.k),
            ("lambda", self.lambda),
            ("rho1", self.rho1),
            ("rho2", self.rho2),
        ] {
            if v == 0 {
                return Err(ConicError::ZeroParameter(name));
            }
        }
        if self.d != 1 && self.d != 2 {
            return Err(ConicError::InvalidD(self.d));
        }
        if gcd(self.k, self.lambda) != 1 {
            return Err(ConicError::NotCoprime {
                k: self.k,
                lambda: self.lambda,
            });
        }
        if (self.rho1 as u128) * (self.rho2 as u128) != self.ell as u128 {
            return Err(ConicError::RhoProduct {
                rho1: self.rho1,
                rho2: self.rho2,
                ell: self.ell,
            });
        }
        let (a, b) = self.halves()?;
        if a <= b {
            return Err(ConicError::NonPositiveX);
        }
        if (self.d as u128 * (a - b)) % 2 != 0 {
            return Err(ConicError::OddNumerator);
        }
        Ok(())
    }

    // (rho1 k^2, rho2 lambda^2)
    fn halves(&self) -> Result<(u128, u128), ConicError> {
        let overflow = ConicError::Overflow {
            ell: self.ell,
            z_max: 0,
        };
        let k2 = self.k as u128 * self.k as u128;
        let l2 = self.lambda as u128 * self.lambda as u128;
        let a = k2.checked_mul(self.rho1 as u128).ok_or(overflow.clone())?;
        let b = l2.checked_mul(self.rho2 as u128).ok_or(overflow)?;
        Ok((a, b))
    }

    /// Expands the parameters into the solution they describe.
    pub fn expand(&self) -> Result<ConicTriple, ConicError> {
        self.validate()?;
        let (a, b) = self.halves()?;
        let d = self.d as u128;
        let overflow = || ConicError::Overflow {
            ell: self.ell,
            z_max: 0,
        };
        let x = d * (a - b) / 2;
        let z = (a + b).checked_mul(d).ok_or_else(overflow)? / 2;
        let y = d * self.k as u128 * self.lambda as u128;
        let narrow = |v: u128| u64::try_from(v).map_err(|_| overflow());
        Ok(ConicTriple::new(narrow(x)?, narrow(y)?, narrow(z)?))
    }
}

/// Free-function form of [`ConicParametrization::expand`].
pub fn expand(param: &ConicParametrization) -> Result<ConicTriple, ConicError> {
    param.expand()
}

fn triples_for(ell: u64, z_max: u64, rho1: u64, rho2: u64, d: u64, k: u64) -> Vec<ConicTriple> {
    let mut out = Vec::new();
    let a = rho1 as u128 * k as u128 * k as u128;
    let two_z = 2 * z_max as u128;
    for lambda in 1u64.. {
        let b = rho2 as u128 * lambda as u128 * lambda as u128;
        // x > 0 and z within bound; both only get worse as lambda grows
        if b >= a || d as u128 * (a + b) > two_z {
            break;
        }
        let param = ConicParametrization {
            ell,
            d,
            k,
            lambda,
            rho1,
            rho2,
        };
        if let Ok(t) = param.expand() {
            if t.is_primitive() {
                out.push(t);
            }
        }
    }
    out
}

/// Every primitive solution with `z <= z_max`, generated from the
/// parametrization with `d ∈ {1, 2}` and sorted by `(z, x)`.
pub fn enumerate_primitive(ell: u64, z_max: u64) -> Vec<ConicTriple> {
    assert!(ell >= 1, "ell must be positive");
    let two_z = 2 * z_max as u128;
    let mut jobs = Vec::new();
    for (rho1, rho2) in divisor_pairs(ell) {
        for d in [1u64, 2] {
            let mut k = 1u64;
            while rho1 as u128 * (k as u128) * (k as u128) <= two_z {
                jobs.push((rho1, rho2, d, k));
                k += 1;
            }
        }
    }
    let mut found: Vec<ConicTriple> = jobs
        .into_par_iter()
        .flat_map_iter(|(rho1, rho2, d, k)| triples_for(ell, z_max, rho1, rho2, d, k))
        .collect();
    // distinct parameter tuples may give the same triple
    found.sort_by_key(ConicTriple::sort_key);
    found.dedup();
    found
}

/// Direct scan over `(x, y)` with a perfect-square test for `z`.
pub fn brute_force_oracle(ell: u64, z_max: u64) -> Result<Vec<ConicTriple>, ConicError> {
    assert!(ell >= 1, "ell must be positive");
    let zz = (z_max as u128) * (z_max as u128);
    let overflow = ConicError::Overflow { ell, z_max };
    (ell as u128).checked_mul(zz).ok_or(overflow)?;
    let mut y_max = 0u64;
    while (ell as u128) * ((y_max + 1) as u128).pow(2) < zz {
        y_max += 1;
    }
    let mut found: Vec<ConicTriple> = (1..=y_max)
        .into_par_iter()
        .flat_map_iter(|y| {
            let ly2 = ell as u128 * y as u128 * y as u128;
            (1u64..)
                .map(move |x| (x, x as u128 * x as u128 + ly2))
                .take_while(move |&(_, s)| s <= zz)
                .filter_map(move |(x, s)| {
                    let z = is_perfect_square(s)?;
                    (gcd(x, y) == 1).then(|| ConicTriple::new(x, y, z as u64))
                })
        })
        .collect();
    found.sort_by_key(ConicTriple::sort_key);
    Ok(found)
}

/// Recovers a parameter tuple for a primitive solution, searching
/// `d ∈ {1, 2}`, then `rho1` and `k` ascending. `None` if the triple is not a
/// primitive solution.
pub fn find_parametrization(ell: u64, t: ConicTriple) -> Option<ConicParametrization> {
    if ell == 0 || t.x == 0 || t.y == 0 || !t.satisfies(ell) {
        return None;
    }
    if gcd_u128(t.x as u128, t.y as u128) != 1 {
        return None;
    }
    for d in [1u64, 2] {
        if t.y % d != 0 {
            continue;
        }
        let kl = t.y / d;
        for (rho1, rho2) in divisor_pairs(ell) {
            for (k, lambda) in divisor_pairs(kl) {
                let param = ConicParametrization {
                    ell,
                    d,
                    k,
                    lambda,
                    rho1,
                    rho2,
                };
                if param.expand().is_ok_and(|e| e == t) {
                    return Some(param);
                }
            }
        }
    }
    None
}

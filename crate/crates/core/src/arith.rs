//! Exact integer utilities.
//!
//! Everything here works on machine integers without floating point. Raw
//! non-negative quantities are `u64`; anything that is a product of several
//! inputs (form values, squares of form values) is carried in `u128`/`i128`
//! and every operation that could leave that range uses checked arithmetic.

use num_integer::Integer;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("arithmetic overflow while computing {0}")]
    Overflow(&'static str),
    #[error("{value} is outside the deterministic primality range (at most 2^64 - 1)")]
    PrimalityRange { value: u128 },
    #[error("modulus {0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("{a} is divisible by {q}; power residues are only defined for units")]
    ZeroResidue { a: i64, q: u64 },
    #[error("exponent must be positive")]
    ZeroExponent,
}

/// Floor square root: the unique `r` with `r^2 <= n < (r+1)^2`.
///
/// Integer Newton iteration started above the root, so the iterates decrease
/// monotonically to the floor.
pub fn isqrt(n: u128) -> u128 {
    if n < 2 {
        return n;
    }
    let bits = 128 - n.leading_zeros();
    // 2^ceil(bits/2) > sqrt(n)
    let mut x: u128 = 1 << bits.div_ceil(2);
    loop {
        let y = (x + n / x) >> 1;
        if y >= x {
            break;
        }
        x = y;
    }
    // Newton from above lands on the floor; keep the correction explicit.
    while x * x > n {
        x -= 1;
    }
    while (x + 1).checked_mul(x + 1).is_some_and(|s| s <= n) {
        x += 1;
    }
    x
}

// Quadratic residues mod 64, 63 and 65 as bitmasks; rejects ~99% of
// non-squares before the Newton iteration.
const fn residue_mask<const M: usize>() -> [bool; M] {
    let mut mask = [false; M];
    let mut i = 0;
    while i < M {
        mask[(i * i) % M] = true;
        i += 1;
    }
    mask
}

static SQ64: [bool; 64] = residue_mask::<64>();
static SQ63: [bool; 63] = residue_mask::<63>();
static SQ65: [bool; 65] = residue_mask::<65>();

/// Returns `Some(r)` with `r^2 == n` when `n` is a perfect square.
pub fn is_perfect_square(n: u128) -> Option<u128> {
    if !SQ64[(n % 64) as usize] || !SQ63[(n % 63) as usize] || !SQ65[(n % 65) as usize] {
        return None;
    }
    let r = isqrt(n);
    (r * r == n).then_some(r)
}

/// Signed convenience wrapper: negative values are never squares.
pub fn is_square_i128(n: i128) -> Option<u128> {
    if n < 0 {
        None
    } else {
        is_perfect_square(n as u128)
    }
}

/// Returns `Some(r)` with `r^4 == n`.
pub fn is_fourth_power(n: u128) -> Option<u128> {
    is_perfect_square(n).and_then(is_perfect_square)
}

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn gcd_u128(a: u128, b: u128) -> u128 {
    a.gcd(&b)
}

/// `a * b mod m` without overflow.
#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Least non-negative residue of a signed value.
#[inline]
pub fn rem_euclid(a: i128, m: u64) -> u64 {
    a.rem_euclid(m as i128) as u64
}

// The first twelve primes are a complete Miller-Rabin witness set for every
// n < 3.3 * 10^24, which covers all of u64.
const MR_WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Deterministic primality test for the whole `u64` range.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_WITNESSES {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &MR_WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// [`is_prime`] for wide inputs; values above `u64::MAX` are rejected rather
/// than answered probabilistically.
pub fn is_prime_checked(n: u128) -> Result<bool, ArithError> {
    u64::try_from(n)
        .map(is_prime)
        .map_err(|_| ArithError::PrimalityRange { value: n })
}

/// Signed convenience: negative numbers and units are not prime.
pub fn is_prime_i128(n: i128) -> Result<bool, ArithError> {
    if n < 0 {
        Ok(false)
    } else {
        is_prime_checked(n as u128)
    }
}

/// Every ordered pair `(r1, r2)` with `r1 * r2 == ell`, ascending in `r1`.
pub fn divisor_pairs(ell: u64) -> Vec<(u64, u64)> {
    assert!(ell >= 1, "divisor_pairs requires ell >= 1");
    let mut low = Vec::new();
    let mut high = Vec::new();
    let mut i = 1u64;
    while i <= ell / i {
        if ell % i == 0 {
            low.push(i);
            if i != ell / i {
                high.push(ell / i);
            }
        }
        i += 1;
    }
    low.extend(high.into_iter().rev());
    low.into_iter().map(|r| (r, ell / r)).collect()
}

/// Prime factorization by trial division, ascending, with multiplicities.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p <= n / p {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// No prime square divides `n`. `0` is not squarefree; `1` is.
pub fn is_squarefree(n: u64) -> bool {
    n != 0 && factorize(n).iter().all(|&(_, e)| e == 1)
}

/// Decomposes `q = p^k` with `p` prime, `k >= 1`.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    match factorize(q).as_slice() {
        [(p, k)] => Some((*p, *k)),
        _ => None,
    }
}

/// Whether `x^k ≡ a (mod q)` is solvable for an odd prime `q` and unit `a`.
///
/// Uses the cyclic structure of the unit group: `a` is a `k`-th power iff
/// `a^((q-1)/g) ≡ 1` with `g = gcd(k, q-1)`.
pub fn is_kth_power_residue(a: i64, k: u32, q: u64) -> Result<bool, ArithError> {
    if k == 0 {
        return Err(ArithError::ZeroExponent);
    }
    if q % 2 == 0 || !is_prime(q) {
        return Err(ArithError::NotOddPrime(q));
    }
    let r = rem_euclid(a as i128, q);
    if r == 0 {
        return Err(ArithError::ZeroResidue { a, q });
    }
    let g = (k as u64).gcd(&(q - 1));
    Ok(pow_mod(r, (q - 1) / g, q) == 1)
}

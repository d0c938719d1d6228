//! Integer factorization support: deterministic Miller-Rabin primality,
//! Pollard-Brent rho, Mersenne-number factorization and Euler's totient.
//!
//! Everything here works on `u64`, which covers 2^n - 1 for every supported
//! dimension n <= 64. Factoring runs under an iteration budget and refuses
//! to return a partial factorization as complete.

use std::fmt;

/// Largest n for which `factor_mersenne(n)` is attempted; 2^64 - 1 is the
/// largest Mersenne number that fits a `u64`.
pub const FACTORING_CAP: u32 = 64;

/// Pollard-rho iteration budget per composite before giving up.
const RHO_BUDGET: u64 = 1 << 26;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FactorError {
    /// n = 0 or n above [`FACTORING_CAP`] (or a caller-supplied cap).
    CapExceeded { n: u32, cap: u32 },
    /// The iteration budget ran out before the factorization was complete.
    BudgetExceeded { remaining: u64 },
}

impl fmt::Display for FactorError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FactorError::CapExceeded { n, cap } => {
                write!(f, "factoring cap exceeded: n = {n} not in 1..={cap}")
            }
            FactorError::BudgetExceeded { remaining } => {
                write!(
                    f,
                    "factoring budget exceeded: cofactor {remaining} left unfactored"
                )
            }
        }
    }
}

impl std::error::Error for FactorError {}

/// Prime factorization of the Mersenne number 2^n - 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MersenneFactorization {
    n: u32,
    value: u64,
    /// (prime, exponent) pairs, ascending by prime.
    factors: Vec<(u64, u32)>,
}

impl MersenneFactorization {
    /// The exponent n.
    pub fn n(&self) -> u32 {
        self.n
    }

    /// The integer 2^n - 1.
    pub fn value(&self) -> u64 {
        self.value
    }

    /// (prime, exponent) pairs sorted ascending by prime.
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    /// Distinct prime divisors of 2^n - 1.
    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    /// Recompute the product of prime^exponent; equals `value()` by construction.
    pub fn product(&self) -> u64 {
        self.factors
            .iter()
            .map(|&(p, e)| p.pow(e))
            .product::<u64>()
            .max(1)
    }

    /// Euler's totient of 2^n - 1, straight from the factorization.
    pub fn totient(&self) -> u64 {
        totient_from_factors(&self.factors)
    }
}

impl fmt::Display for MersenneFactorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "2^{} - 1 = {} = ", self.n, self.value)?;
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (i, (p, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, " * ")?;
            }
            if *e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Complete prime factorization of 2^n - 1 for 1 <= n <= 64.
pub fn factor_mersenne(n: u32) -> Result<MersenneFactorization, FactorError> {
    factor_mersenne_with_cap(n, FACTORING_CAP)
}

/// [`factor_mersenne`] with an explicit cap (still bounded by 64).
pub fn factor_mersenne_with_cap(n: u32, cap: u32) -> Result<MersenneFactorization, FactorError> {
    let cap = cap.min(FACTORING_CAP);
    if n == 0 || n > cap {
        return Err(FactorError::CapExceeded { n, cap });
    }
    let value = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let factors = factor_u64(value)?;
    Ok(MersenneFactorization { n, value, factors })
}

/// Euler's totient of m, computed from the prime factorization of m.
pub fn totient(m: u64) -> Result<u64, FactorError> {
    if m == 0 {
        return Err(FactorError::CapExceeded {
            n: 0,
            cap: FACTORING_CAP,
        });
    }
    Ok(totient_from_factors(&factor_u64(m)?))
}

fn totient_from_factors(factors: &[(u64, u32)]) -> u64 {
    let mut phi = 1u64;
    for &(p, e) in factors {
        phi *= p.pow(e - 1) * (p - 1);
    }
    phi
}

/// Prime factorization of any u64, (prime, exponent) ascending. 1 -> empty list.
pub fn factor_u64(mut m: u64) -> Result<Vec<(u64, u32)>, FactorError> {
    let mut primes: Vec<u64> = Vec::new();
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47] {
        while m.is_multiple_of(p) {
            primes.push(p);
            m /= p;
        }
    }
    // Trial division by a 2/3/5 wheel up to 2^16 covers every prime factor
    // of interest below rho's comfortable range. The gap pattern is phased
    // for a start residue of 7 (mod 30); 49 = 19 (mod 30) sits at index 4.
    let mut d = 49u64;
    let wheel = [4u64, 2, 4, 2, 4, 6, 2, 6];
    let mut w = 4;
    while d <= 1 << 16 && d * d <= m {
        while m.is_multiple_of(d) {
            primes.push(d);
            m /= d;
        }
        d += wheel[w];
        w = (w + 1) % wheel.len();
    }
    if m > 1 {
        split_composite(m, &mut primes)?;
    }
    primes.sort_unstable();
    let mut out: Vec<(u64, u32)> = Vec::new();
    for p in primes {
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
    Ok(out)
}

/// Recursively split m (no factors below 2^16) into primes via rho.
fn split_composite(m: u64, primes: &mut Vec<u64>) -> Result<(), FactorError> {
    if m == 1 {
        return Ok(());
    }
    if is_prime_u64(m) {
        primes.push(m);
        return Ok(());
    }
    let d = pollard_brent(m).ok_or(FactorError::BudgetExceeded { remaining: m })?;
    split_composite(d, primes)?;
    split_composite(m / d, primes)
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
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

/// Deterministic Miller-Rabin for u64 (the 12-witness set is exact below 3.3e24).
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
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

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Brent's cycle-finding variant of Pollard rho. Returns a nontrivial factor
/// of composite odd m, or None if the budget runs out.
fn pollard_brent(m: u64) -> Option<u64> {
    debug_assert!(m > 1 && m % 2 == 1 && !is_prime_u64(m));
    let mut spent = 0u64;
    for c in 1u64.. {
        let f = |x: u64| (mul_mod(x, x, m) + c) % m;
        let (mut x, mut ys) = (2u64, 2u64);
        let mut y = 2u64;
        let mut g = 1u64;
        let mut r = 1u64;
        let mut q = 1u64;
        const BATCH: u64 = 128;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                let steps = BATCH.min(r - k);
                for _ in 0..steps {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), m);
                }
                g = gcd_u64(q, m);
                k += steps;
                spent += steps;
                if spent > RHO_BUDGET {
                    return None;
                }
            }
            r *= 2;
        }
        if g == m {
            // Batched gcd overshot; replay one step at a time.
            g = 1;
            while g == 1 {
                ys = f(ys);
                g = gcd_u64(x.abs_diff(ys), m);
            }
        }
        if g != m {
            return Some(g);
        }
        // Rare: whole cycle collapsed for this c; retry with the next one.
    }
    None
}

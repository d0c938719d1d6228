//! Polynomials over GF(2) packed into a `u128`: bit i is the coefficient
//! of x^i, so `0b1011` = 11 is x^3 + x + 1. Addition is XOR, multiplication
//! is shift-and-XOR. Every nonzero polynomial is monic.
//!
//! Degrees up to 127 are representable, which leaves room for the product
//! of two degree-63 residues; the rest of the crate never needs more.

use std::fmt;
use std::ops::Add;
use std::str::FromStr;

use crate::factor::{factor_mersenne, FactorError, MersenneFactorization};

/// Largest degree accepted by [`enumerate_primitive`]; the scan visits
/// 2^(n-1) candidates.
pub const ENUMERATION_CAP: u32 = 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolyError {
    /// Modulus was zero or constant.
    InvalidModulus,
    /// gcd(0, 0) requested.
    GcdOfZero,
    /// Operation needs degree >= 1.
    DegreeMustBePositive,
    /// Polynomial degree does not match the supplied factorization's n.
    DegreeMismatch { degree: Option<u32>, expected: u32 },
    /// n above the enumeration cap.
    EnumerationCapExceeded { n: u32, cap: u32 },
    /// Propagated from Mersenne factoring.
    Factor(FactorError),
    /// Text that parses as neither a term sum nor an integer.
    Parse(String),
}

impl fmt::Display for PolyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyError::InvalidModulus => write!(f, "invalid modulus: must have degree >= 1"),
            PolyError::GcdOfZero => write!(f, "gcd of two zero polynomials is undefined"),
            PolyError::DegreeMustBePositive => write!(f, "degree must be positive"),
            PolyError::DegreeMismatch { degree, expected } => match degree {
                Some(d) => write!(f, "degree mismatch: polynomial has degree {d}, factorization is for n = {expected}"),
                None => write!(f, "degree mismatch: zero polynomial, factorization is for n = {expected}"),
            },
            PolyError::EnumerationCapExceeded { n, cap } => {
                write!(f, "enumeration cap exceeded: n = {n} > {cap}")
            }
            PolyError::Factor(e) => write!(f, "{e}"),
            PolyError::Parse(s) => write!(f, "cannot parse polynomial from {s:?}"),
        }
    }
}

impl std::error::Error for PolyError {}

impl From<FactorError> for PolyError {
    fn from(e: FactorError) -> Self {
        PolyError::Factor(e)
    }
}

/// A polynomial over GF(2); bit i of the backing integer is the coefficient of x^i.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Gf2Poly(u128);

impl Gf2Poly {
    pub const ZERO: Gf2Poly = Gf2Poly(0);
    pub const ONE: Gf2Poly = Gf2Poly(1);
    /// The monomial x.
    pub const X: Gf2Poly = Gf2Poly(2);

    /// Polynomial with the given coefficient bits.
    pub const fn from_bits(bits: u128) -> Self {
        Gf2Poly(bits)
    }

    /// The coefficient bit-sequence.
    pub const fn bits(self) -> u128 {
        self.0
    }

    /// x^k.
    pub fn monomial(k: u32) -> Self {
        assert!(k < 128, "monomial degree {k} out of range");
        Gf2Poly(1 << k)
    }

    /// Degree: index of the highest set bit; `None` for the zero polynomial.
    pub fn degree(self) -> Option<u32> {
        if self.0 == 0 {
            None
        } else {
            Some(127 - self.0.leading_zeros())
        }
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn is_one(self) -> bool {
        self.0 == 1
    }

    /// Coefficient of x^i.
    pub fn coeff(self, i: u32) -> bool {
        i < 128 && (self.0 >> i) & 1 == 1
    }

    /// Product over GF(2)[x]. Panics if the result would not fit (degree sum > 127).
    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, rhs: Self) -> Self {
        if self.0 == 0 || rhs.0 == 0 {
            return Gf2Poly::ZERO;
        }
        let (da, db) = (self.degree().unwrap(), rhs.degree().unwrap());
        assert!(
            da + db < 128,
            "polynomial product overflows 128 coefficient bits"
        );
        let mut acc = 0u128;
        let mut a = self.0;
        let mut shift = 0;
        while a != 0 {
            if a & 1 == 1 {
                acc ^= rhs.0 << shift;
            }
            a >>= 1;
            shift += 1;
        }
        Gf2Poly(acc)
    }

    /// Quotient and remainder of self by d.
    pub fn div_rem(self, d: Self) -> Result<(Self, Self), PolyError> {
        if d.is_zero() {
            return Err(PolyError::InvalidModulus);
        }
        let dd = d.degree().unwrap();
        let mut rem = self.0;
        let mut quot = 0u128;
        while let Some(dr) = Gf2Poly(rem).degree() {
            if dr < dd {
                break;
            }
            let shift = dr - dd;
            quot ^= 1 << shift;
            rem ^= d.0 << shift;
        }
        Ok((Gf2Poly(quot), Gf2Poly(rem)))
    }

    /// Remainder of self mod m (m nonzero, any degree).
    #[allow(clippy::should_implement_trait)]
    pub fn rem(self, m: Self) -> Result<Self, PolyError> {
        Ok(self.div_rem(m)?.1)
    }

    /// (self * rhs) mod m. The modulus must have degree >= 1.
    pub fn mul_mod(self, rhs: Self, m: Self) -> Result<Self, PolyError> {
        let dm = m
            .degree()
            .filter(|&d| d >= 1)
            .ok_or(PolyError::InvalidModulus)?;
        let mut a = self.rem(m)?.0;
        let mut b = rhs.rem(m)?.0;
        // Shift-and-xor with reduction after every shift keeps b below deg m.
        let mut acc = 0u128;
        while a != 0 && b != 0 {
            if a & 1 == 1 {
                acc ^= b;
            }
            a >>= 1;
            b <<= 1;
            if (b >> dm) & 1 == 1 {
                b ^= m.0;
            }
        }
        Ok(Gf2Poly(acc))
    }

    /// self^e mod m by square-and-multiply; e = 0 yields 1 mod m.
    pub fn pow_mod(self, e: u128, m: Self) -> Result<Self, PolyError> {
        if m.degree().filter(|&d| d >= 1).is_none() {
            return Err(PolyError::InvalidModulus);
        }
        let mut result = Gf2Poly::ONE.rem(m)?;
        let mut base = self.rem(m)?;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul_mod(base, m)?;
            }
            base = base.mul_mod(base, m)?;
            e >>= 1;
        }
        Ok(result)
    }

    /// Monic greatest common divisor; errors when both arguments are zero.
    pub fn gcd(self, other: Self) -> Result<Self, PolyError> {
        if self.is_zero() && other.is_zero() {
            return Err(PolyError::GcdOfZero);
        }
        let (mut a, mut b) = (self, other);
        while !b.is_zero() {
            let r = a.rem(b)?;
            a = b;
            b = r;
        }
        Ok(a)
    }

    /// Least common multiple. Both inputs nonzero.
    pub fn lcm(self, other: Self) -> Result<Self, PolyError> {
        let g = self.gcd(other)?;
        if g.is_zero() {
            return Err(PolyError::GcdOfZero);
        }
        // Divide before multiplying so the intermediate degree equals deg(lcm).
        let (q, _) = other.div_rem(g)?;
        Ok(self.mul(q))
    }

    /// True iff self has no nontrivial factorization over GF(2).
    ///
    /// Rabin's test: x^(2^d) = x mod f, and gcd(x^(2^(d/q)) + x, f) = 1 for
    /// every prime q | d. Agrees with exhaustive trial division (tested
    /// through degree 12).
    pub fn is_irreducible(self) -> Result<bool, PolyError> {
        let d = self
            .degree()
            .filter(|&d| d >= 1)
            .ok_or(PolyError::DegreeMustBePositive)?;
        for q in distinct_prime_divisors(d) {
            let h = frobenius_power(d / q, self)? + Gf2Poly::X.rem(self)?;
            if h.is_zero() {
                return Ok(false);
            }
            if self.gcd(h)?.degree() != Some(0) {
                return Ok(false);
            }
        }
        let h = frobenius_power(d, self)? + Gf2Poly::X.rem(self)?;
        Ok(h.is_zero())
    }

    /// True iff self is primitive of degree fact.n: irreducible, and x has
    /// multiplicative order exactly 2^n - 1 mod self.
    pub fn is_primitive(self, fact: &MersenneFactorization) -> Result<bool, PolyError> {
        Ok(self.primitivity(fact)? == Primitivity::Primitive)
    }

    /// Which primitivity condition holds or fails; used for diagnostics.
    pub fn primitivity(self, fact: &MersenneFactorization) -> Result<Primitivity, PolyError> {
        if self.degree() != Some(fact.n()) {
            return Err(PolyError::DegreeMismatch {
                degree: self.degree(),
                expected: fact.n(),
            });
        }
        if !self.is_irreducible()? {
            return Ok(Primitivity::Reducible);
        }
        let m = fact.value();
        if self.pow_x(m)? != Gf2Poly::ONE {
            // Only f = x reaches this among irreducibles: x is not a unit mod x.
            return Ok(Primitivity::FullPowerNotOne);
        }
        for p in fact.primes() {
            if self.pow_x(m / p)? == Gf2Poly::ONE {
                return Ok(Primitivity::OrderDivides(m / p));
            }
        }
        Ok(Primitivity::Primitive)
    }

    /// x^e mod self.
    fn pow_x(self, e: u64) -> Result<Gf2Poly, PolyError> {
        Gf2Poly::X.pow_mod(e as u128, self)
    }
}

/// x^(2^k) mod f, by squaring x k times.
fn frobenius_power(k: u32, f: Gf2Poly) -> Result<Gf2Poly, PolyError> {
    let mut acc = Gf2Poly::X.rem(f)?;
    for _ in 0..k {
        acc = acc.mul_mod(acc, f)?;
    }
    Ok(acc)
}

fn distinct_prime_divisors(mut d: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= d {
        if d.is_multiple_of(p) {
            out.push(p);
            while d.is_multiple_of(p) {
                d /= p;
            }
        }
        p += 1;
    }
    if d > 1 {
        out.push(d);
    }
    out
}

/// Outcome of the primitivity test, in check order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Primitivity {
    Primitive,
    /// Fails the irreducibility check.
    Reducible,
    /// x^(2^n - 1) is not 1 mod f (f = x).
    FullPowerNotOne,
    /// x^k = 1 for the proper divisor k of 2^n - 1.
    OrderDivides(u64),
}

impl fmt::Display for Primitivity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Primitivity::Primitive => write!(f, "primitive"),
            Primitivity::Reducible => write!(f, "not irreducible"),
            Primitivity::FullPowerNotOne => write!(f, "x is not a unit modulo the polynomial"),
            Primitivity::OrderDivides(k) => {
                write!(f, "order of x divides {k}, a proper divisor of 2^n - 1")
            }
        }
    }
}

/// All monic primitive polynomials of degree n, ascending by coefficient
/// bit-sequence. The list has length phi(2^n - 1) / n.
pub fn enumerate_primitive(n: u32) -> Result<Vec<Gf2Poly>, PolyError> {
    enumerate_primitive_with_cap(n, ENUMERATION_CAP)
}

/// [`enumerate_primitive`] with an explicit cap.
pub fn enumerate_primitive_with_cap(n: u32, cap: u32) -> Result<Vec<Gf2Poly>, PolyError> {
    if n == 0 || n > cap {
        return Err(PolyError::EnumerationCapExceeded { n, cap });
    }
    let fact = factor_mersenne(n)?;
    let mut out = Vec::new();
    // Primitive polynomials are monic with nonzero constant term, so only
    // the middle n-1 coefficients vary.
    for middle in 0..1u128 << (n - 1) {
        let f = Gf2Poly((1 << n) | (middle << 1) | 1);
        if f.is_primitive(&fact)? {
            out.push(f);
        }
    }
    Ok(out)
}

/// phi(2^n - 1) / n, the number of primitive polynomials of degree n.
/// The division is always exact.
pub fn count_primitive(n: u32) -> Result<u64, PolyError> {
    if n == 0 {
        return Err(PolyError::DegreeMustBePositive);
    }
    let fact = factor_mersenne(n)?;
    let phi = fact.totient();
    debug_assert_eq!(phi % n as u64, 0);
    Ok(phi / n as u64)
}

impl Add for Gf2Poly {
    type Output = Gf2Poly;

    /// Coefficient-wise sum mod 2: XOR.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, rhs: Self) -> Gf2Poly {
        Gf2Poly(self.0 ^ rhs.0)
    }
}

impl fmt::Display for Gf2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return write!(f, "0");
        }
        let mut first = true;
        for i in (0..=self.degree().unwrap()).rev() {
            if !self.coeff(i) {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match i {
                0 => write!(f, "1")?,
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

impl FromStr for Gf2Poly {
    type Err = PolyError;

    /// Accepts the term form ("x^3+x+1"), decimal ("11") or hex ("0xb")
    /// coefficient bits. Repeated terms cancel, as they do over GF(2).
    fn from_str(s: &str) -> Result<Self, PolyError> {
        let t = s.trim();
        if t.is_empty() {
            return Err(PolyError::Parse(s.to_string()));
        }
        if let Some(hex) = t.strip_prefix("0x").or_else(|| t.strip_prefix("0X")) {
            return u128::from_str_radix(hex, 16)
                .map(Gf2Poly)
                .map_err(|_| PolyError::Parse(s.to_string()));
        }
        if t.bytes().all(|b| b.is_ascii_digit()) {
            return t
                .parse::<u128>()
                .map(Gf2Poly)
                .map_err(|_| PolyError::Parse(s.to_string()));
        }
        let mut bits = 0u128;
        for term in t.split('+') {
            let term = term.trim();
            let exp = if term == "1" {
                0
            } else if term == "x" {
                1
            } else if let Some(e) = term.strip_prefix("x^") {
                e.trim()
                    .parse::<u32>()
                    .map_err(|_| PolyError::Parse(s.to_string()))?
            } else if term == "0" {
                continue;
            } else {
                return Err(PolyError::Parse(s.to_string()));
            };
            if exp >= 128 {
                return Err(PolyError::Parse(s.to_string()));
            }
            bits ^= 1 << exp;
        }
        Ok(Gf2Poly(bits))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Gf2Poly {
        s.parse().unwrap()
    }

    #[test]
    fn add_examples() {
        assert_eq!(p("x+1") + p("x+1"), Gf2Poly::ZERO);
        assert_eq!(p("x^3+x+1") + p("x^3+x^2+1"), p("x^2+x"));
        assert_eq!(p("x^4+x") + Gf2Poly::ZERO, p("x^4+x"));
    }

    #[test]
    fn mul_mod_examples() {
        let m = p("x^2+x+1");
        assert_eq!(Gf2Poly::X.mul_mod(Gf2Poly::X, m).unwrap(), p("x+1"));
        let f1 = p("x^3+x+1");
        assert_eq!(
            p("x^4+x").mul_mod(Gf2Poly::ONE, f1).unwrap(),
            p("x^4+x").rem(f1).unwrap()
        );
        // x^3 = x + 1 mod x^3+x+1
        assert_eq!(p("x^2").mul_mod(Gf2Poly::X, f1).unwrap(), p("x+1"));
    }

    #[test]
    fn mul_mod_rejects_bad_modulus() {
        assert_eq!(
            Gf2Poly::X.mul_mod(Gf2Poly::X, Gf2Poly::ZERO),
            Err(PolyError::InvalidModulus)
        );
        assert_eq!(
            Gf2Poly::X.mul_mod(Gf2Poly::X, Gf2Poly::ONE),
            Err(PolyError::InvalidModulus)
        );
    }

    #[test]
    fn pow_mod_examples() {
        let f1 = p("x^3+x+1");
        assert_eq!(Gf2Poly::X.pow_mod(7, f1).unwrap(), Gf2Poly::ONE);
        assert_eq!(p("x^2+1").pow_mod(0, f1).unwrap(), Gf2Poly::ONE);
        assert_eq!(Gf2Poly::X.pow_mod(2, f1).unwrap(), p("x^2"));
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(p("x^2+x").gcd(Gf2Poly::X).unwrap(), Gf2Poly::X);
        let f = p("x^5+x^2+1");
        assert_eq!(f.gcd(f).unwrap(), f);
        assert_eq!(p("x^3+x+1").gcd(Gf2Poly::X).unwrap(), Gf2Poly::ONE);
        assert_eq!(Gf2Poly::ZERO.gcd(Gf2Poly::ZERO), Err(PolyError::GcdOfZero));
    }

    #[test]
    fn irreducibility_examples() {
        assert!(p("x^3+x+1").is_irreducible().unwrap());
        assert!(!p("x^2").is_irreducible().unwrap());
        // (x^2+x+1)^2
        assert!(!p("x^4+x^2+1").is_irreducible().unwrap());
        assert_eq!(
            Gf2Poly::ONE.is_irreducible(),
            Err(PolyError::DegreeMustBePositive)
        );
        assert_eq!(
            Gf2Poly::ZERO.is_irreducible(),
            Err(PolyError::DegreeMustBePositive)
        );
    }

    #[test]
    fn irreducibility_agrees_with_trial_division_deg_le_8() {
        // Oracle: exhaustive trial division by every polynomial of degree
        // 1..=deg/2.
        fn trial_division(f: Gf2Poly) -> bool {
            let d = f.degree().unwrap();
            for div in 2..1u128 << (d / 2 + 1) {
                let g = Gf2Poly::from_bits(div);
                if g.degree().unwrap() >= 1 && f.rem(g).unwrap().is_zero() {
                    return false;
                }
            }
            true
        }
        for bits in 2..1u128 << 9 {
            let f = Gf2Poly::from_bits(bits);
            assert_eq!(
                f.is_irreducible().unwrap(),
                trial_division(f),
                "disagreement at {f}"
            );
        }
    }

    #[test]
    fn primitivity_examples() {
        let f3 = factor_mersenne(3).unwrap();
        assert!(p("x^3+x+1").is_primitive(&f3).unwrap());

        let f4 = factor_mersenne(4).unwrap();
        // Irreducible but x has order 5, not 15.
        let f = p("x^4+x^3+x^2+x+1");
        assert!(f.is_irreducible().unwrap());
        assert!(!f.is_primitive(&f4).unwrap());
        assert_eq!(f.primitivity(&f4).unwrap(), Primitivity::OrderDivides(5));

        let f2 = factor_mersenne(2).unwrap();
        assert_eq!(p("x^2").primitivity(&f2).unwrap(), Primitivity::Reducible);

        assert_eq!(
            p("x^2").primitivity(&f3),
            Err(PolyError::DegreeMismatch {
                degree: Some(2),
                expected: 3
            })
        );
    }

    #[test]
    fn primitivity_degree_one() {
        let f1 = factor_mersenne(1).unwrap();
        assert!(p("x+1").is_primitive(&f1).unwrap());
        assert_eq!(
            p("x").primitivity(&f1).unwrap(),
            Primitivity::FullPowerNotOne
        );
    }

    #[test]
    fn enumerate_examples() {
        assert_eq!(
            enumerate_primitive(3).unwrap(),
            vec![p("x^3+x+1"), p("x^3+x^2+1")]
        );
        assert_eq!(enumerate_primitive(2).unwrap(), vec![p("x^2+x+1")]);
        assert_eq!(enumerate_primitive(4).unwrap().len(), 2);
        assert_eq!(enumerate_primitive(1).unwrap(), vec![p("x+1")]);
        assert!(matches!(
            enumerate_primitive(17),
            Err(PolyError::EnumerationCapExceeded { .. })
        ));
        assert!(enumerate_primitive_with_cap(17, 17).is_ok());
    }

    #[test]
    fn count_examples() {
        assert_eq!(count_primitive(3).unwrap(), 2);
        assert_eq!(count_primitive(2).unwrap(), 1);
        assert_eq!(count_primitive(8).unwrap(), 16);
        assert_eq!(count_primitive(1).unwrap(), 1);
    }

    #[test]
    fn display_and_parse_round_trip() {
        for bits in [0u128, 1, 2, 3, 11, 13, 0b10011, 0x11b, (1 << 64) | 27] {
            let f = Gf2Poly::from_bits(bits);
            let shown = f.to_string();
            assert_eq!(shown.parse::<Gf2Poly>().unwrap(), f, "term form {shown}");
            assert_eq!(format!("{bits}").parse::<Gf2Poly>().unwrap(), f);
            assert_eq!(format!("0x{bits:x}").parse::<Gf2Poly>().unwrap(), f);
        }
        assert_eq!(
            "x^3 + x + 1".parse::<Gf2Poly>().unwrap(),
            Gf2Poly::from_bits(11)
        );
        assert!("x^3+y".parse::<Gf2Poly>().is_err());
        assert!("".parse::<Gf2Poly>().is_err());
    }

    #[test]
    fn div_rem_identity() {
        let a = p("x^7+x^3+x+1");
        let d = p("x^3+x^2");
        let (q, r) = a.div_rem(d).unwrap();
        assert_eq!(q.mul(d) + r, a);
        assert!(r.degree() < d.degree());
    }

    #[test]
    fn lcm_of_coprime_is_product() {
        let a = p("x^3+x+1");
        let b = p("x^3+x^2+1");
        assert_eq!(a.lcm(b).unwrap(), a.mul(b));
        assert_eq!(a.lcm(a).unwrap(), a);
    }
}

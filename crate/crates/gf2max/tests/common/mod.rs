//! Shared brute-force oracles for the integration suites. Everything here
//! favors obviousness over speed: triple loops, cofactor expansion, and
//! exhaustive trial division, used to cross-check the production paths.
#![allow(dead_code)]

use gf2max::{Gf2Mat, Gf2Poly};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Triple-loop matrix product, the definition itself.
pub fn naive_mat_mul(a: &Gf2Mat, b: &Gf2Mat) -> Gf2Mat {
    let n = a.dim();
    let mut out = Gf2Mat::zero(n).unwrap();
    for i in 0..n {
        for j in 0..n {
            let mut s = false;
            for k in 0..n {
                s ^= a.get(i, k) && b.get(k, j);
            }
            out.set(i, j, s);
        }
    }
    out
}

/// det(xI + A) by cofactor expansion over GF(2)[x]; n <= 5 keeps the
/// factorial blowup at desk scale.
pub fn char_poly_cofactor(m: &Gf2Mat) -> Gf2Poly {
    let n = m.dim();
    assert!(n <= 5, "cofactor oracle is for n <= 5");
    let entries: Vec<Vec<Gf2Poly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut e = if m.get(i, j) {
                        Gf2Poly::ONE
                    } else {
                        Gf2Poly::ZERO
                    };
                    if i == j {
                        e = e + Gf2Poly::X;
                    }
                    e
                })
                .collect()
        })
        .collect();
    det_cofactor(&entries)
}

fn det_cofactor(m: &[Vec<Gf2Poly>]) -> Gf2Poly {
    let n = m.len();
    if n == 1 {
        return m[0][0];
    }
    let mut det = Gf2Poly::ZERO;
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Gf2Poly>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(k, _)| k != j)
                    .map(|(_, &v)| v)
                    .collect()
            })
            .collect();
        // Signs vanish over GF(2).
        det = det + m[0][j].mul(det_cofactor(&minor));
    }
    det
}

/// Irreducibility by exhaustive trial division: f of degree n is reducible
/// iff some polynomial of degree 1..=n/2 divides it.
pub fn trial_division_irreducible(f: Gf2Poly) -> bool {
    let n = f.degree().expect("oracle needs a nonzero polynomial");
    assert!(n >= 1, "oracle needs degree >= 1");
    for d in 1..=n / 2 {
        for low in 0..1u128 << d {
            let divisor = Gf2Poly::from_bits((1 << d) | low);
            if f.rem(divisor).unwrap().is_zero() {
                return false;
            }
        }
    }
    true
}

/// Euler's totient by direct coprimality count.
pub fn totient_direct(m: u64) -> u64 {
    (1..=m).filter(|&k| gcd(k, m) == 1).count() as u64
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// A seeded random matrix with rows drawn uniformly.
pub fn random_matrix(n: usize, rng: &mut ChaCha8Rng) -> Gf2Mat {
    let mask = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    Gf2Mat::from_rows(n, (0..n).map(|_| rng.gen::<u64>() & mask).collect()).unwrap()
}

/// A seeded random invertible matrix by rejection.
pub fn random_invertible(n: usize, rng: &mut ChaCha8Rng) -> Gf2Mat {
    loop {
        let m = random_matrix(n, rng);
        if m.is_invertible() {
            return m;
        }
    }
}

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

//! Bit-packed n x n matrices over GF(2), 1 <= n <= 64. Row i is a `u64`
//! whose bit j is the entry a_ij, so a whole row operation is one word op.
//!
//! The integer codec maps a matrix to sum of a_ij * 2^(i*n + j) (row-major,
//! least significant bit first): the 3x3 identity encodes to 273 and the
//! companion matrix of x^3+x+1 to 172. Codes for n > 8 exceed 64 bits and
//! are kept as big integers.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::factor::MersenneFactorization;
use crate::poly::Gf2Poly;

/// Largest supported dimension: one row per machine word.
pub const DIMENSION_CAP: usize = 64;

/// Iteration cap for order computation when no factorization is supplied.
pub const DEFAULT_ORDER_STEP_CAP: u64 = 1 << 20;

/// Random trials in [`Gf2Mat::find_cyclic_vector`] after the standard basis.
const CYCLIC_VECTOR_TRIALS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatError {
    /// Dimension outside 1..=64.
    DimensionOutOfRange { n: usize },
    /// Operands of different dimension.
    DimensionMismatch { left: usize, right: usize },
    /// Row has bits set at column index >= n.
    RowOutOfRange { row: usize },
    /// Matrix has no inverse.
    Singular,
    /// Companion matrix of a constant polynomial.
    ConstantPolynomial,
    /// Order iteration exhausted its step cap without reaching I.
    OrderCapExceeded { cap: u64 },
    /// Supplied factorization is for a different dimension.
    FactorizationMismatch { n: usize, fact_n: u32 },
    /// Code not in [0, 2^(n*n)).
    CodeOutOfRange { n: usize },
    /// Unparseable matrix text.
    Parse(String),
}

impl fmt::Display for MatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatError::DimensionOutOfRange { n } => {
                write!(f, "dimension {n} out of range 1..={DIMENSION_CAP}")
            }
            MatError::DimensionMismatch { left, right } => {
                write!(f, "dimension mismatch: {left} vs {right}")
            }
            MatError::RowOutOfRange { row } => {
                write!(f, "row {row} has bits beyond the matrix dimension")
            }
            MatError::Singular => write!(f, "singular"),
            MatError::ConstantPolynomial => {
                write!(f, "companion matrix requires degree >= 1")
            }
            MatError::OrderCapExceeded { cap } => write!(f, "order cap exceeded ({cap} steps)"),
            MatError::FactorizationMismatch { n, fact_n } => {
                write!(
                    f,
                    "factorization is for 2^{fact_n} - 1 but the matrix is {n} x {n}"
                )
            }
            MatError::CodeOutOfRange { n } => write!(f, "code out of range for a {n} x {n} matrix"),
            MatError::Parse(s) => write!(f, "cannot parse matrix from {s:?}"),
        }
    }
}

impl std::error::Error for MatError {}

/// An n x n matrix over GF(2) with bit-packed rows.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Gf2Mat {
    n: usize,
    rows: Vec<u64>,
}

impl Gf2Mat {
    /// The zero matrix.
    pub fn zero(n: usize) -> Result<Self, MatError> {
        check_dim(n)?;
        Ok(Gf2Mat {
            n,
            rows: vec![0; n],
        })
    }

    /// The identity matrix.
    pub fn identity(n: usize) -> Result<Self, MatError> {
        check_dim(n)?;
        Ok(Gf2Mat {
            n,
            rows: (0..n).map(|i| 1 << i).collect(),
        })
    }

    /// Build from bit-packed rows; every row must fit in n bits.
    pub fn from_rows(n: usize, rows: Vec<u64>) -> Result<Self, MatError> {
        check_dim(n)?;
        if rows.len() != n {
            return Err(MatError::DimensionMismatch {
                left: n,
                right: rows.len(),
            });
        }
        let mask = row_mask(n);
        for (i, &r) in rows.iter().enumerate() {
            if r & !mask != 0 {
                return Err(MatError::RowOutOfRange { row: i });
            }
        }
        Ok(Gf2Mat { n, rows })
    }

    /// Companion matrix of a monic polynomial of degree n: ones on the first
    /// subdiagonal, the coefficients a_0..a_(n-1) in the last column.
    pub fn companion(f: Gf2Poly) -> Result<Self, MatError> {
        let n = match f.degree() {
            Some(d) if d >= 1 => d as usize,
            _ => return Err(MatError::ConstantPolynomial),
        };
        check_dim(n)?;
        let mut rows = vec![0u64; n];
        for (i, row) in rows.iter_mut().enumerate() {
            if i > 0 {
                *row |= 1 << (i - 1);
            }
            if f.coeff(i as u32) {
                *row |= 1 << (n - 1);
            }
        }
        Ok(Gf2Mat { n, rows })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    /// Entry a_ij.
    pub fn get(&self, i: usize, j: usize) -> bool {
        (self.rows[i] >> j) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, v: bool) {
        assert!(i < self.n && j < self.n);
        if v {
            self.rows[i] |= 1 << j;
        } else {
            self.rows[i] &= !(1 << j);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|&r| r == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.rows.iter().enumerate().all(|(i, &r)| r == 1 << i)
    }

    /// Entrywise sum (XOR). Errors on dimension mismatch.
    pub fn try_add(&self, other: &Self) -> Result<Self, MatError> {
        self.check_same_dim(other)?;
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| a ^ b)
            .collect();
        Ok(Gf2Mat { n: self.n, rows })
    }

    /// Matrix product over GF(2). Row-by-word: result row i is the XOR of
    /// the rows of `other` selected by the set bits of row i of self.
    /// Errors on dimension mismatch.
    pub fn try_mul(&self, other: &Self) -> Result<Self, MatError> {
        self.check_same_dim(other)?;
        let mut rows = vec![0u64; self.n];
        for (out, &sel) in rows.iter_mut().zip(&self.rows) {
            let mut bits = sel;
            while bits != 0 {
                let j = bits.trailing_zeros() as usize;
                *out ^= other.rows[j];
                bits &= bits - 1;
            }
        }
        Ok(Gf2Mat { n: self.n, rows })
    }

    /// Matrix-vector product A*v with v a bit-packed column vector.
    pub fn mul_vec(&self, v: u64) -> u64 {
        let mut out = 0u64;
        for (i, &row) in self.rows.iter().enumerate() {
            out |= (((row & v).count_ones() & 1) as u64) << i;
        }
        out
    }

    /// Transpose.
    pub fn transpose(&self) -> Self {
        let mut rows = vec![0u64; self.n];
        for (i, &src) in self.rows.iter().enumerate() {
            for (j, row) in rows.iter_mut().enumerate() {
                *row |= ((src >> j) & 1) << i;
            }
        }
        Gf2Mat { n: self.n, rows }
    }

    /// Rank via row reduction.
    pub fn rank(&self) -> usize {
        let mut rows = self.rows.clone();
        let mut rank = 0;
        for col in 0..self.n {
            let bit = 1u64 << col;
            let Some(p) = (rank..self.n).find(|&r| rows[r] & bit != 0) else {
                continue;
            };
            rows.swap(rank, p);
            let pivot = rows[rank];
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && *row & bit != 0 {
                    *row ^= pivot;
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn is_invertible(&self) -> bool {
        self.rank() == self.n
    }

    /// Inverse by Gauss-Jordan elimination; errors when singular.
    pub fn inverse(&self) -> Result<Self, MatError> {
        let n = self.n;
        let mut a = self.rows.clone();
        let mut inv: Vec<u64> = (0..n).map(|i| 1 << i).collect();
        for col in 0..n {
            let bit = 1u64 << col;
            let p = (col..n)
                .find(|&r| a[r] & bit != 0)
                .ok_or(MatError::Singular)?;
            a.swap(col, p);
            inv.swap(col, p);
            let (pa, pi) = (a[col], inv[col]);
            for r in 0..n {
                if r != col && a[r] & bit != 0 {
                    a[r] ^= pa;
                    inv[r] ^= pi;
                }
            }
        }
        Ok(Gf2Mat { n, rows: inv })
    }

    /// A^e by square-and-multiply; A^0 = I.
    pub fn pow(&self, mut e: u128) -> Self {
        let mut result = Gf2Mat::identity(self.n).unwrap();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.try_mul(&base).unwrap();
            }
            base = base.try_mul(&base).unwrap();
            e >>= 1;
        }
        result
    }

    /// Least k >= 1 with A^k = I, or None when the matrix is singular.
    ///
    /// With a factorization of 2^n - 1 at hand and A^(2^n - 1) = I, the exact
    /// order is found by dividing out prime factors. Otherwise the matrix is
    /// multiplied out step by step, up to [`DEFAULT_ORDER_STEP_CAP`].
    pub fn order(&self, fact: Option<&MersenneFactorization>) -> Result<Option<u64>, MatError> {
        self.order_with_cap(fact, DEFAULT_ORDER_STEP_CAP)
    }

    /// [`Gf2Mat::order`] with an explicit iteration cap for the fallback path.
    pub fn order_with_cap(
        &self,
        fact: Option<&MersenneFactorization>,
        cap: u64,
    ) -> Result<Option<u64>, MatError> {
        if !self.is_invertible() {
            return Ok(None);
        }
        if let Some(fact) = fact {
            if fact.n() as usize != self.n {
                return Err(MatError::FactorizationMismatch {
                    n: self.n,
                    fact_n: fact.n(),
                });
            }
            let m = fact.value();
            if self.pow(m as u128).is_identity() {
                let mut ord = m;
                for &(p, e) in fact.factors() {
                    for _ in 0..e {
                        if ord % p != 0 {
                            break;
                        }
                        if self.pow((ord / p) as u128).is_identity() {
                            ord /= p;
                        } else {
                            break;
                        }
                    }
                }
                return Ok(Some(ord));
            }
        }
        let mut acc = self.clone();
        for k in 1..=cap {
            if acc.is_identity() {
                return Ok(Some(k));
            }
            acc = acc.try_mul(self).unwrap();
        }
        Err(MatError::OrderCapExceeded { cap })
    }

    /// det(xI + A): the characteristic polynomial, monic of degree n
    /// (signs vanish over GF(2)).
    ///
    /// Reduces A to upper Hessenberg form by similarity, then expands the
    /// leading principal minors of xI + H by their last column.
    pub fn char_poly(&self) -> Gf2Poly {
        let n = self.n;
        let mut h = self.rows.clone();

        // Similarity reduction to Hessenberg form. Row op r += p is paired
        // with the inverse column op p += r (self-inverse over GF(2)).
        for k in 0..n.saturating_sub(2) {
            let bit = 1u64 << k;
            let Some(p) = (k + 1..n).find(|&r| h[r] & bit != 0) else {
                continue;
            };
            if p != k + 1 {
                h.swap(p, k + 1);
                swap_cols(&mut h, p, k + 1);
            }
            for r in k + 2..n {
                if h[r] & bit != 0 {
                    // Re-read the pivot row: the paired column op may have
                    // flipped its bit k+1 on a previous pass.
                    h[r] ^= h[k + 1];
                    xor_col(&mut h, k + 1, r);
                }
            }
        }

        // p_k = (x + H[k-1][k-1]) p_(k-1) + sum over m of
        //       H[m][k-1] * prod of subdiagonals H[j][j-1] * p_m.
        let mut charpolys = vec![Gf2Poly::ONE];
        for k in 1..=n {
            let col = k - 1;
            let mut pk = charpolys[k - 1].mul(Gf2Poly::X);
            if (h[col] >> col) & 1 == 1 {
                pk = pk + charpolys[k - 1];
            }
            let mut subdiag = true;
            for m in (0..col).rev() {
                // Product of H[j][j-1] for j in m+1..=col-0; extend one step
                // per iteration and stop once a subdiagonal entry is zero.
                subdiag = subdiag && (h[m + 1] >> m) & 1 == 1;
                if !subdiag {
                    break;
                }
                if (h[m] >> col) & 1 == 1 {
                    pk = pk + charpolys[m];
                }
            }
            charpolys.push(pk);
        }
        charpolys[n]
    }

    /// The minimal polynomial: least-degree monic g with g(A) = 0. Computed
    /// as the lcm of the minimal annihilators of the Krylov sequences of the
    /// standard basis vectors.
    pub fn min_poly(&self) -> Gf2Poly {
        let mut acc = Gf2Poly::ONE;
        for i in 0..self.n {
            let ann = self.vector_annihilator(1 << i);
            acc = acc.lcm(ann).expect("annihilators are nonzero");
            if acc.degree() == Some(self.n as u32) {
                break;
            }
        }
        acc
    }

    /// Minimal monic g with g(A)v = 0, from the first linear dependence in
    /// the Krylov sequence v, Av, A^2 v, ...
    fn vector_annihilator(&self, v: u64) -> Gf2Poly {
        // Echelon basis of the Krylov span; each vector carries the
        // combination polynomial that produced it.
        let mut basis: Vec<(u64, Gf2Poly)> = Vec::new();
        let mut w = v;
        for k in 0..=self.n as u32 {
            let mut vec = w;
            let mut comb = Gf2Poly::monomial(k);
            for (bv, bp) in &basis {
                if highest_bit(vec) == highest_bit(*bv) {
                    vec ^= bv;
                    comb = comb + *bp;
                }
            }
            if vec == 0 {
                return comb;
            }
            // Keep the basis ordered by leading bit, highest first, so a
            // single sweep fully reduces.
            let pos = basis
                .binary_search_by(|(bv, _)| highest_bit(*bv).cmp(&highest_bit(vec)).reverse())
                .unwrap_err();
            basis.insert(pos, (vec, comb));
            w = self.mul_vec(w);
        }
        unreachable!("Krylov sequence of length n+1 is always dependent");
    }

    /// True iff the characteristic and minimal polynomials coincide.
    pub fn is_cyclic(&self) -> bool {
        self.char_poly() == self.min_poly()
    }

    /// A vector whose Krylov iterates span the whole space, or None when the
    /// matrix is not cyclic. Searches the standard basis first, then a
    /// bounded number of seeded random vectors.
    pub fn find_cyclic_vector(&self) -> Option<u64> {
        if !self.is_cyclic() {
            return None;
        }
        for i in 0..self.n {
            if self.krylov_rank(1 << i) == self.n {
                return Some(1 << i);
            }
        }
        let mask = row_mask(self.n);
        let mut rng = ChaCha8Rng::seed_from_u64(0x6f2d);
        for _ in 0..CYCLIC_VECTOR_TRIALS {
            let v = rng.gen::<u64>() & mask;
            if v != 0 && self.krylov_rank(v) == self.n {
                return Some(v);
            }
        }
        None
    }

    /// Rank of [v, Av, ..., A^(n-1) v].
    pub fn krylov_rank(&self, v: u64) -> usize {
        let mut leads: Vec<u64> = Vec::new();
        let mut w = v;
        for _ in 0..self.n {
            let mut vec = w;
            for b in &leads {
                if highest_bit(vec) == highest_bit(*b) {
                    vec ^= b;
                }
            }
            if vec != 0 {
                let pos = leads
                    .binary_search_by(|b| highest_bit(*b).cmp(&highest_bit(vec)).reverse())
                    .unwrap_err();
                leads.insert(pos, vec);
            }
            w = self.mul_vec(w);
        }
        leads.len()
    }

    /// Horner evaluation of g at this matrix; the constant term scales I.
    pub fn eval_poly(&self, g: Gf2Poly) -> Self {
        let mut acc = Gf2Mat::zero(self.n).unwrap();
        let Some(d) = g.degree() else {
            return acc;
        };
        for i in (0..=d).rev() {
            acc = acc.try_mul(self).unwrap();
            if g.coeff(i) {
                acc = acc.try_add(&Gf2Mat::identity(self.n).unwrap()).unwrap();
            }
        }
        acc
    }

    /// The row-major LSB-first integer code of this matrix.
    pub fn code(&self) -> MatCode {
        let mut code = BigUint::zero();
        for (i, &row) in self.rows.iter().enumerate() {
            code |= BigUint::from(row) << (i * self.n);
        }
        MatCode { n: self.n, code }
    }

    /// Code as a u64 when n <= 8.
    pub fn code_u64(&self) -> Option<u64> {
        if self.n > 8 {
            return None;
        }
        let mut code = 0u64;
        for (i, &row) in self.rows.iter().enumerate() {
            code |= row << (i * self.n);
        }
        Some(code)
    }

    /// Grid form: one row of 0/1 characters per line, column 0 leftmost.
    pub fn to_grid_string(&self) -> String {
        let mut out = String::with_capacity(self.n * (self.n + 1));
        for (i, &row) in self.rows.iter().enumerate() {
            if i > 0 {
                out.push('\n');
            }
            for j in 0..self.n {
                out.push(if (row >> j) & 1 == 1 { '1' } else { '0' });
            }
        }
        out
    }

    /// Parse the grid form; rows separated by newlines, '/' or ','.
    pub fn parse_grid(s: &str) -> Result<Self, MatError> {
        let rows_text: Vec<&str> = s
            .split(['\n', '/', ','])
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .collect();
        let n = rows_text.len();
        check_dim(n).map_err(|_| MatError::Parse(s.to_string()))?;
        let mut rows = vec![0u64; n];
        for (i, text) in rows_text.iter().enumerate() {
            let cells: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
            if cells.len() != n {
                return Err(MatError::Parse(s.to_string()));
            }
            for (j, c) in cells.iter().enumerate() {
                match c {
                    '0' => {}
                    '1' => rows[i] |= 1 << j,
                    _ => return Err(MatError::Parse(s.to_string())),
                }
            }
        }
        Ok(Gf2Mat { n, rows })
    }

    fn check_same_dim(&self, other: &Self) -> Result<(), MatError> {
        if self.n != other.n {
            return Err(MatError::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }
}

/// Order matrices by their integer code (row n-1 is most significant).
impl Ord for Gf2Mat {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n
            .cmp(&other.n)
            .then_with(|| self.rows.iter().rev().cmp(other.rows.iter().rev()))
    }
}

impl PartialOrd for Gf2Mat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Gf2Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_grid_string())
    }
}

fn check_dim(n: usize) -> Result<(), MatError> {
    if n == 0 || n > DIMENSION_CAP {
        return Err(MatError::DimensionOutOfRange { n });
    }
    Ok(())
}

pub(crate) fn row_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1 << n) - 1
    }
}

/// Position of the highest set bit + 1, 0 for zero. Echelon pivot key.
fn highest_bit(v: u64) -> u32 {
    64 - v.leading_zeros()
}

fn swap_cols(rows: &mut [u64], a: usize, b: usize) {
    for row in rows.iter_mut() {
        let bits = ((*row >> a) ^ (*row >> b)) & 1;
        *row ^= (bits << a) | (bits << b);
    }
}

/// Column op dst += src.
fn xor_col(rows: &mut [u64], dst: usize, src: usize) {
    for row in rows.iter_mut() {
        *row ^= ((*row >> src) & 1) << dst;
    }
}

/// The integer encoding of an n x n matrix: sum of a_ij * 2^(i*n + j).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MatCode {
    n: usize,
    code: BigUint,
}

impl MatCode {
    /// Wrap a code after range-checking it against 2^(n*n).
    pub fn new(n: usize, code: BigUint) -> Result<Self, MatError> {
        check_dim(n)?;
        if code.bits() > (n * n) as u64 {
            return Err(MatError::CodeOutOfRange { n });
        }
        Ok(MatCode { n, code })
    }

    pub fn from_u64(n: usize, code: u64) -> Result<Self, MatError> {
        MatCode::new(n, BigUint::from(code))
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn value(&self) -> &BigUint {
        &self.code
    }

    pub fn to_u64(&self) -> Option<u64> {
        u64::try_from(&self.code).ok()
    }

    /// The matrix this code encodes.
    pub fn decode(&self) -> Gf2Mat {
        let n = self.n;
        let mask = row_mask(n);
        let mut rows = vec![0u64; n];
        let mut rest = self.code.clone();
        for row in rows.iter_mut() {
            let low = rest.iter_u64_digits().next().unwrap_or(0);
            *row = low & mask;
            rest >>= n;
        }
        Gf2Mat { n, rows }
    }

    /// Parse decimal or 0x-hex. The dimension must be supplied by context.
    pub fn parse(n: usize, s: &str) -> Result<Self, MatError> {
        let t = s.trim();
        let code = if let Some(hex) = t.strip_prefix("0x").or_else(|| t.strip_prefix("0X")) {
            BigUint::parse_bytes(hex.as_bytes(), 16)
        } else {
            BigUint::parse_bytes(t.as_bytes(), 10)
        };
        match code {
            Some(c) => MatCode::new(n, c),
            None => Err(MatError::Parse(s.to_string())),
        }
    }
}

/// Decimal up to n = 8 (the desk-scale range), 0x-hex above.
impl fmt::Display for MatCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n <= 8 {
            write!(f, "{}", self.code)
        } else {
            write!(f, "0x{:x}", self.code)
        }
    }
}

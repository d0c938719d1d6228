//! The group-theoretic engine for GL_n(GF(2)): order and enumeration,
//! centralizers of cyclic matrices, coset decomposition, conjugacy classes
//! (exhaustive and sampled), and the counting formula
//! prod_{i=1}^{n-1}(2^n - 2^i) * phi(2^n - 1) / n with its brute-force
//! census oracle.
//!
//! All maximal-order matrices with a fixed primitive characteristic
//! polynomial form one conjugacy class of the companion matrix; the class is
//! produced by conjugating with one representative per right coset of the
//! centralizer.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::factor::{factor_mersenne, FactorError};
use crate::mat::{row_mask, Gf2Mat, MatCode, MatError};
use crate::poly::{Gf2Poly, PolyError, Primitivity};

/// Largest n for full GL_n enumeration (|GL_5| is just under 10^7).
pub const EXHAUSTIVE_CAP: usize = 5;

/// Largest n for the full 2^(n*n)-code census scan (n = 4 is 65536 codes).
pub const CENSUS_CAP: usize = 4;

/// Upper bound on any census scan: the code range must fit in a u64.
const CENSUS_HARD_CAP: usize = 7;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupError {
    /// Generation requires a primitive polynomial; carries the reason.
    NotPrimitive(Primitivity),
    /// The centralizer construction applies only to cyclic matrices with
    /// irreducible characteristic polynomial.
    NotCyclic,
    /// Full GL enumeration refused above [`EXHAUSTIVE_CAP`].
    ExhaustiveCapExceeded {
        n: usize,
        cap: usize,
    },
    /// Census scan refused above [`CENSUS_CAP`].
    CensusCapExceeded {
        n: usize,
        cap: usize,
    },
    Poly(PolyError),
    Factor(FactorError),
    Mat(MatError),
}

impl fmt::Display for GroupError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupError::NotPrimitive(why) => {
                write!(f, "polynomial must be primitive: {why}")
            }
            GroupError::NotCyclic => write!(
                f,
                "centralizer formula requires cyclic matrix with irreducible \
                 characteristic polynomial"
            ),
            GroupError::ExhaustiveCapExceeded { n, cap } => {
                write!(f, "exhaustive cap exceeded: n = {n}, cap = {cap}")
            }
            GroupError::CensusCapExceeded { n, cap } => {
                write!(f, "census cap exceeded: n = {n}, cap = {cap}")
            }
            GroupError::Poly(e) => e.fmt(f),
            GroupError::Factor(e) => e.fmt(f),
            GroupError::Mat(e) => e.fmt(f),
        }
    }
}

impl std::error::Error for GroupError {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            GroupError::Poly(e) => Some(e),
            GroupError::Factor(e) => Some(e),
            GroupError::Mat(e) => Some(e),
            _ => None,
        }
    }
}

impl From<PolyError> for GroupError {
    fn from(e: PolyError) -> Self {
        GroupError::Poly(e)
    }
}

impl From<FactorError> for GroupError {
    fn from(e: FactorError) -> Self {
        GroupError::Factor(e)
    }
}

impl From<MatError> for GroupError {
    fn from(e: MatError) -> Self {
        GroupError::Mat(e)
    }
}

/// |GL_n(GF(2))| = prod_{i=0}^{n-1} (2^n - 2^i).
pub fn gl_order(n: usize) -> BigUint {
    let two_n = BigUint::one() << n;
    (0..n).map(|i| &two_n - (BigUint::one() << i)).product()
}

/// Size of the conjugacy class of a maximal-order matrix:
/// prod_{i=1}^{n-1} (2^n - 2^i) = |GL_n| / (2^n - 1). Empty product at n=1.
pub fn class_size(n: usize) -> BigUint {
    let two_n = BigUint::one() << n;
    (1..n).map(|i| &two_n - (BigUint::one() << i)).product()
}

/// Total number of n x n matrices of order 2^n - 1:
/// class_size(n) * (number of primitive polynomials of degree n).
pub fn total_max_order_count(n: usize) -> Result<BigUint, GroupError> {
    let primitive = crate::poly::count_primitive(n as u32)?;
    Ok(class_size(n) * BigUint::from(primitive))
}

/// Iterator over all invertible n x n matrices in ascending code order.
#[derive(Debug, Clone)]
pub struct GlEnumerator {
    n: usize,
    next_code: u64,
    end: u64,
}

impl Iterator for GlEnumerator {
    type Item = Gf2Mat;

    fn next(&mut self) -> Option<Gf2Mat> {
        while self.next_code < self.end {
            let m = MatCode::from_u64(self.n, self.next_code).unwrap().decode();
            self.next_code += 1;
            if m.is_invertible() {
                return Some(m);
            }
        }
        None
    }
}

/// Every element of GL_n(GF(2)) exactly once, by scanning all 2^(n*n) codes
/// and keeping the invertible ones. Yields gl_order(n) matrices.
pub fn enumerate_gl(n: usize) -> Result<GlEnumerator, GroupError> {
    enumerate_gl_with_cap(n, EXHAUSTIVE_CAP)
}

/// [`enumerate_gl`] with an explicit cap (tests only; the scan is 2^(n*n)).
pub fn enumerate_gl_with_cap(n: usize, cap: usize) -> Result<GlEnumerator, GroupError> {
    if n > cap || n > CENSUS_HARD_CAP {
        return Err(GroupError::ExhaustiveCapExceeded { n, cap });
    }
    Ok(GlEnumerator {
        n,
        next_code: 0,
        end: 1u64 << (n * n),
    })
}

/// c^(-1) * a * c.
pub fn conjugate(a: &Gf2Mat, c: &Gf2Mat) -> Result<Gf2Mat, MatError> {
    c.inverse()?.try_mul(a)?.try_mul(c)
}

/// The centralizer N(A) of a cyclic matrix A with irreducible characteristic
/// polynomial: exactly the 2^n - 1 nonzero polynomials in A.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Centralizer {
    base: Gf2Mat,
    /// Sorted ascending by code; pairwise distinct.
    elements: Vec<Gf2Mat>,
}

impl Centralizer {
    pub fn base(&self) -> &Gf2Mat {
        &self.base
    }

    pub fn elements(&self) -> &[Gf2Mat] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, m: &Gf2Mat) -> bool {
        self.elements.binary_search(m).is_ok()
    }

    /// Element codes, ascending.
    pub fn codes(&self) -> Vec<MatCode> {
        self.elements.iter().map(Gf2Mat::code).collect()
    }
}

/// Construct N(A) = {g(A) : g nonzero, deg g < n} for a cyclic matrix with
/// irreducible characteristic polynomial. Every such value is invertible and
/// there are exactly 2^n - 1 of them.
pub fn centralizer_of_cyclic(a: &Gf2Mat) -> Result<Centralizer, GroupError> {
    let chi = a.char_poly();
    if !chi.is_irreducible()? || !a.is_cyclic() {
        return Err(GroupError::NotCyclic);
    }
    let n = a.dim();
    let mut elements: Vec<Gf2Mat> = (1..1u128 << n)
        .map(|bits| a.eval_poly(Gf2Poly::from_bits(bits)))
        .collect();
    elements.sort_unstable();
    elements.dedup();
    debug_assert_eq!(
        elements.len(),
        (1 << n) - 1,
        "distinct polynomials must disagree at A"
    );
    Ok(Centralizer {
        base: a.clone(),
        elements,
    })
}

/// True iff the commuting set {M in GL_n : MA = AM}, found by full
/// enumeration, coincides with [`centralizer_of_cyclic`].
pub fn verify_centralizer(a: &Gf2Mat) -> Result<bool, GroupError> {
    verify_centralizer_with_cap(a, EXHAUSTIVE_CAP)
}

/// [`verify_centralizer`] with an explicit enumeration cap.
pub fn verify_centralizer_with_cap(a: &Gf2Mat, cap: usize) -> Result<bool, GroupError> {
    let by_formula = centralizer_of_cyclic(a)?;
    let mut by_scan: Vec<Gf2Mat> = enumerate_gl_with_cap(a.dim(), cap)?
        .filter(|m| m.try_mul(a).unwrap() == a.try_mul(m).unwrap())
        .collect();
    by_scan.sort_unstable();
    Ok(by_scan == by_formula.elements)
}

/// Right-coset decomposition of GL_n(GF(2)) with respect to a centralizer.
#[derive(Debug, Clone)]
pub struct CosetDecomposition {
    subgroup: Centralizer,
    /// One representative per right coset H*r, first-seen in code order.
    representatives: Vec<Gf2Mat>,
}

impl CosetDecomposition {
    pub fn subgroup(&self) -> &Centralizer {
        &self.subgroup
    }

    pub fn representatives(&self) -> &[Gf2Mat] {
        &self.representatives
    }

    pub fn coset_count(&self) -> usize {
        self.representatives.len()
    }

    /// The full coset H * r_i.
    pub fn coset(&self, i: usize) -> Vec<Gf2Mat> {
        let r = &self.representatives[i];
        self.subgroup
            .elements()
            .iter()
            .map(|h| h.try_mul(r).unwrap())
            .collect()
    }
}

/// Decompose GL_n into right cosets H*r of the centralizer, picking the
/// first-seen member of each coset (in code order) as its representative.
///
/// Two invertible M, r lie in the same right coset exactly when
/// M * r^(-1) is in H, which for H = N(A) is equivalent to
/// M^(-1)*A*M = r^(-1)*A*r; the sweep therefore keys each matrix by its
/// conjugate of A and stops once gl_order(n)/(2^n - 1) cosets are found.
pub fn coset_decomposition(h: &Centralizer) -> Result<CosetDecomposition, GroupError> {
    coset_decomposition_with_cap(h, EXHAUSTIVE_CAP)
}

/// [`coset_decomposition`] with an explicit enumeration cap.
pub fn coset_decomposition_with_cap(
    h: &Centralizer,
    cap: usize,
) -> Result<CosetDecomposition, GroupError> {
    let a = h.base().clone();
    let n = a.dim();
    let expected = {
        let count = gl_order(n) / ((BigUint::one() << n) - BigUint::one());
        u64::try_from(&count).expect("coset count fits u64 below the cap") as usize
    };
    let mut seen: HashSet<Gf2Mat> = HashSet::with_capacity(expected);
    let mut representatives = Vec::with_capacity(expected);
    for m in enumerate_gl_with_cap(n, cap)? {
        let key = conjugate(&a, &m)?;
        if seen.insert(key) {
            representatives.push(m);
            if representatives.len() == expected {
                break;
            }
        }
    }
    Ok(CosetDecomposition {
        subgroup: h.clone(),
        representatives,
    })
}

/// How a conjugacy-class report was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenMode {
    /// One conjugate per coset; the complete class.
    Exhaustive,
    /// `count` conjugates by random invertible matrices; duplicates allowed.
    Sampled,
}

impl fmt::Display for GenMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenMode::Exhaustive => write!(f, "exhaustive"),
            GenMode::Sampled => write!(f, "sampled"),
        }
    }
}

/// Matrices of maximal order 2^n - 1 with a fixed primitive characteristic
/// polynomial, plus the mode and seed needed to reproduce the run.
#[derive(Debug, Clone)]
pub struct ConjClassReport {
    pub polynomial: Gf2Poly,
    pub mode: GenMode,
    pub seed: Option<u64>,
    /// Ascending by code in exhaustive mode; generation order when sampled.
    pub matrices: Vec<Gf2Mat>,
    /// prod_{i=1}^{n-1} (2^n - 2^i), the full class size.
    pub expected_size: BigUint,
}

impl ConjClassReport {
    /// Matrix codes in report order.
    pub fn codes(&self) -> Vec<MatCode> {
        self.matrices.iter().map(Gf2Mat::code).collect()
    }
}

/// The complete conjugacy class of companion(f) for a primitive f: one
/// conjugate r^(-1)*A*r per coset representative r, sorted ascending by
/// code. This is every invertible matrix with characteristic polynomial f.
pub fn conjugacy_class(f: Gf2Poly) -> Result<ConjClassReport, GroupError> {
    conjugacy_class_with_cap(f, EXHAUSTIVE_CAP)
}

/// [`conjugacy_class`] with an explicit enumeration cap.
pub fn conjugacy_class_with_cap(f: Gf2Poly, cap: usize) -> Result<ConjClassReport, GroupError> {
    let fact = require_primitive(f)?;
    let n = fact.n() as usize;
    if n > cap {
        return Err(GroupError::ExhaustiveCapExceeded { n, cap });
    }
    let a = Gf2Mat::companion(f)?;
    let h = centralizer_of_cyclic(&a)?;
    let cosets = coset_decomposition_with_cap(&h, cap)?;
    let mut matrices: Vec<Gf2Mat> = cosets
        .representatives()
        .iter()
        .map(|r| conjugate(&a, r).expect("representatives are invertible"))
        .collect();
    matrices.sort_unstable();
    matrices.dedup();
    debug_assert_eq!(
        matrices.len(),
        cosets.coset_count(),
        "cosets yield distinct conjugates"
    );
    Ok(ConjClassReport {
        polynomial: f,
        mode: GenMode::Exhaustive,
        seed: None,
        matrices,
        expected_size: class_size(n),
    })
}

/// `count` random conjugates r^(-1)*A*r of A = companion(f), deterministic
/// for a given seed. Uniform rejection sampling picks r for n <= 8; above
/// that r is a product of random unit-triangular matrices and a permutation
/// (invertible by construction, not uniform). Duplicates are reported as-is.
pub fn sample_conjugates(
    f: Gf2Poly,
    count: usize,
    seed: u64,
) -> Result<ConjClassReport, GroupError> {
    let fact = require_primitive(f)?;
    let n = fact.n() as usize;
    let a = Gf2Mat::companion(f)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut matrices = Vec::with_capacity(count);
    for _ in 0..count {
        let r = random_invertible(n, &mut rng);
        matrices.push(conjugate(&a, &r).expect("sampled r is invertible"));
    }
    Ok(ConjClassReport {
        polynomial: f,
        mode: GenMode::Sampled,
        seed: Some(seed),
        matrices,
        expected_size: class_size(n),
    })
}

/// Check primitivity and hand back the factorization for reuse.
fn require_primitive(f: Gf2Poly) -> Result<crate::factor::MersenneFactorization, GroupError> {
    let Some(degree) = f.degree().filter(|&d| d >= 1) else {
        return Err(GroupError::NotPrimitive(Primitivity::Reducible));
    };
    let fact = factor_mersenne(degree)?;
    match f.primitivity(&fact)? {
        Primitivity::Primitive => Ok(fact),
        why => Err(GroupError::NotPrimitive(why)),
    }
}

/// A random element of GL_n(GF(2)).
fn random_invertible(n: usize, rng: &mut ChaCha8Rng) -> Gf2Mat {
    let mask = row_mask(n);
    if n <= 8 {
        // Rejection sampling: uniform over all matrices, conditioned on
        // invertibility (acceptance rate > 28%).
        loop {
            let rows: Vec<u64> = (0..n).map(|_| rng.gen::<u64>() & mask).collect();
            let m = Gf2Mat::from_rows(n, rows).unwrap();
            if m.is_invertible() {
                return m;
            }
        }
    }
    // Unit lower triangular * unit upper triangular * permutation.
    let lower = Gf2Mat::from_rows(
        n,
        (0..n)
            .map(|i| (1u64 << i) | (rng.gen::<u64>() & ((1u64 << i) - 1)))
            .collect(),
    )
    .unwrap();
    // Bits strictly above the diagonal; row_mask keeps i + 1 = 64 shift-safe.
    let upper = Gf2Mat::from_rows(
        n,
        (0..n)
            .map(|i| (1u64 << i) | (rng.gen::<u64>() & mask & !row_mask(i + 1)))
            .collect(),
    )
    .unwrap();
    let mut perm_rows: Vec<u64> = (0..n).map(|i| 1u64 << i).collect();
    perm_rows.shuffle(rng);
    let perm = Gf2Mat::from_rows(n, perm_rows).unwrap();
    lower.try_mul(&upper).unwrap().try_mul(&perm).unwrap()
}

/// Full-scan census: every n x n code, keeping matrices of order 2^n - 1,
/// bucketed by characteristic polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusReport {
    n: usize,
    /// Bucket key: characteristic polynomial. Value: codes, ascending.
    buckets: BTreeMap<Gf2Poly, Vec<u64>>,
}

impl CensusReport {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn buckets(&self) -> &BTreeMap<Gf2Poly, Vec<u64>> {
        &self.buckets
    }

    /// Bucket sizes by polynomial.
    pub fn counts(&self) -> BTreeMap<Gf2Poly, usize> {
        self.buckets.iter().map(|(k, v)| (*k, v.len())).collect()
    }

    /// Total number of maximal-order matrices found.
    pub fn total(&self) -> u64 {
        self.buckets.values().map(|v| v.len() as u64).sum()
    }
}

/// Scan all 2^(n*n) codes and bucket the matrices of order 2^n - 1 by their
/// characteristic polynomial. The independent oracle for the counting
/// formula: every key must be primitive and every bucket has class_size(n)
/// members.
pub fn brute_force_census(n: usize) -> Result<CensusReport, GroupError> {
    brute_force_census_with_cap(n, CENSUS_CAP)
}

/// [`brute_force_census`] with an explicit cap (tests only).
pub fn brute_force_census_with_cap(n: usize, cap: usize) -> Result<CensusReport, GroupError> {
    let end = census_range_end(n, cap)?;
    brute_force_census_range(n, 0, end, cap)
}

/// Census over the code subrange [lo, hi): the partitionable unit for
/// parallel scans. Buckets hold ascending codes within the subrange.
pub fn brute_force_census_range(
    n: usize,
    lo: u64,
    hi: u64,
    cap: usize,
) -> Result<CensusReport, GroupError> {
    let end = census_range_end(n, cap)?;
    let fact = factor_mersenne(n as u32)?;
    let target = fact.value();
    let mut buckets: BTreeMap<Gf2Poly, Vec<u64>> = BTreeMap::new();
    for code in lo..hi.min(end) {
        let m = MatCode::from_u64(n, code).unwrap().decode();
        if !m.is_invertible() {
            continue;
        }
        if m.order(Some(&fact)).expect("factored path has no cap") == Some(target) {
            buckets.entry(m.char_poly()).or_default().push(code);
        }
    }
    Ok(CensusReport { n, buckets })
}

/// [`brute_force_census`] split across `threads` code ranges and merged in
/// range order; the result is identical to the sequential scan.
pub fn brute_force_census_parallel(n: usize, threads: usize) -> Result<CensusReport, GroupError> {
    let end = census_range_end(n, CENSUS_CAP)?;
    let threads = threads.clamp(1, 64) as u64;
    let chunk = end.div_ceil(threads);
    let parts: Vec<Result<CensusReport, GroupError>> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..threads)
            .map(|t| {
                let (lo, hi) = (t * chunk, ((t + 1) * chunk).min(end));
                scope.spawn(move || brute_force_census_range(n, lo, hi, CENSUS_CAP))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("census worker panicked"))
            .collect()
    });
    let mut buckets: BTreeMap<Gf2Poly, Vec<u64>> = BTreeMap::new();
    for part in parts {
        for (key, mut codes) in part?.buckets {
            buckets.entry(key).or_default().append(&mut codes);
        }
    }
    Ok(CensusReport { n, buckets })
}

fn census_range_end(n: usize, cap: usize) -> Result<u64, GroupError> {
    if n > cap || n > CENSUS_HARD_CAP {
        return Err(GroupError::CensusCapExceeded { n, cap });
    }
    Ok(1u64 << (n * n))
}

/// Known-good n = 3 data used by the verifier: the centralizer of the
/// matrix with code 396 and the two order-7 conjugacy classes. All three
/// lists are reproduced independently by the full 512-code scan.
pub mod refdata {
    /// Codes of the centralizer N(A) for A = decode(396), ascending.
    pub const N3_CENTRALIZER_396: [u64; 7] = [106, 157, 247, 273, 379, 396, 486];

    /// Codes of the conjugacy class of companion(x^3+x+1), ascending.
    pub const N3_CLASS_X3_X_1: [u64; 24] = [
        95, 102, 106, 115, 142, 157, 172, 187, 204, 226, 247, 253, 335, 355, 370, 382, 397, 412,
        431, 442, 478, 485, 491, 500,
    ];

    /// Codes of the conjugacy class of companion(x^3+x^2+1), ascending.
    pub const N3_CLASS_X3_X2_1: [u64; 24] = [
        94, 99, 111, 114, 141, 156, 171, 190, 207, 229, 244, 250, 334, 354, 375, 379, 396, 415,
        426, 445, 477, 486, 492, 499,
    ];
}

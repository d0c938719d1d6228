//! Generation, counting, and verification of maximal-order matrices over
//! GF(2): the invertible n x n matrices whose multiplicative order is the
//! maximum possible value 2^n - 1.
//!
//! A matrix has maximal order exactly when its characteristic polynomial is
//! primitive, and all such matrices with the same characteristic polynomial
//! form a single conjugacy class of size prod_{i=1}^{n-1}(2^n - 2^i). The
//! crate builds each class as the conjugates of a companion matrix by coset
//! representatives of its centralizer, counts them with the closed formula
//! class_size(n) * phi(2^n - 1) / n, and cross-checks both against
//! brute-force scans at desk scale.
//!
//! Module layout:
//! - [`poly`]: GF(2)[x] arithmetic, irreducibility, primitivity.
//! - [`factor`]: factoring 2^n - 1 and Euler's totient, n <= 64.
//! - [`mat`]: bit-packed matrix algebra and the row-major LSB-first
//!   integer codec (the 3 x 3 identity encodes to 273).
//! - [`group`]: GL_n(GF(2)) enumeration, centralizers, cosets, conjugacy
//!   classes, and the counting formula's census oracle.
//! - [`stream`]: full-period state sequences driven by a matrix.

pub mod factor;
pub mod group;
pub mod mat;
pub mod poly;
pub mod stream;

pub use factor::{factor_mersenne, FactorError, MersenneFactorization};
pub use group::{
    brute_force_census, centralizer_of_cyclic, class_size, conjugacy_class, conjugate,
    coset_decomposition, enumerate_gl, gl_order, sample_conjugates, total_max_order_count,
    verify_centralizer, CensusReport, Centralizer, ConjClassReport, CosetDecomposition, GenMode,
    GroupError,
};
pub use mat::{Gf2Mat, MatCode, MatError};
pub use poly::{count_primitive, enumerate_primitive, Gf2Poly, PolyError, Primitivity};
pub use stream::{
    full_period_check, orbit_length, parse_state, state_to_bits, StateStream, StreamError,
};

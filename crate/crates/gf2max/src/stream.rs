//! State sequences driven by a matrix: iterate s -> A*s on a nonzero state
//! vector and check for the full period of 2^n - 1 distinct states.
//!
//! States are column vectors packed into a `u64`, bit i = component i. A
//! maximal-order matrix cycles any nonzero seed through every nonzero state,
//! the matrix analogue of a maximal-length shift-register sequence.

use std::fmt;

use crate::mat::Gf2Mat;

/// Dimension cap for [`full_period_check`]: the visited bitmap covers all
/// 2^n states, so 2^20 bits (128 KiB) is where we stop.
pub const FULL_PERIOD_DIMENSION_CAP: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StreamError {
    /// The all-zero state is a fixed point and generates nothing.
    ZeroSeed,
    /// Seed has bits set at index >= n.
    SeedOutOfRange { n: usize },
    /// Orbit walk reached its cap without returning to the seed.
    OrbitCapExceeded { cap: u64 },
    /// Dimension too large for the full-period bitmap.
    DimensionTooLarge { n: usize },
}

impl fmt::Display for StreamError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StreamError::ZeroSeed => write!(f, "seed must be nonzero"),
            StreamError::SeedOutOfRange { n } => {
                write!(f, "seed has bits beyond the {n}-bit state")
            }
            StreamError::OrbitCapExceeded { cap } => {
                write!(f, "orbit cap exceeded ({cap} steps)")
            }
            StreamError::DimensionTooLarge { n } => {
                write!(
                    f,
                    "dimension {n} exceeds the full-period cap {FULL_PERIOD_DIMENSION_CAP}"
                )
            }
        }
    }
}

impl std::error::Error for StreamError {}

/// An advancing state sequence s, As, A^2 s, ...
#[derive(Debug, Clone)]
pub struct StateStream {
    matrix: Gf2Mat,
    state: u64,
    steps_emitted: u64,
}

impl StateStream {
    /// Start a stream at a nonzero seed state.
    pub fn new(matrix: Gf2Mat, seed: u64) -> Result<Self, StreamError> {
        if seed == 0 {
            return Err(StreamError::ZeroSeed);
        }
        if seed >> 1 >> (matrix.dim() - 1) != 0 {
            return Err(StreamError::SeedOutOfRange { n: matrix.dim() });
        }
        Ok(StateStream {
            matrix,
            state: seed,
            steps_emitted: 0,
        })
    }

    pub fn matrix(&self) -> &Gf2Mat {
        &self.matrix
    }

    /// The current state (the seed before any step).
    pub fn state(&self) -> u64 {
        self.state
    }

    pub fn steps_emitted(&self) -> u64 {
        self.steps_emitted
    }

    /// Advance once: state <- A*state, returning the new state.
    pub fn next_state(&mut self) -> u64 {
        self.state = self.matrix.mul_vec(self.state);
        self.steps_emitted += 1;
        self.state
    }
}

impl Iterator for StateStream {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        Some(self.next_state())
    }
}

/// Least k >= 1 with A^k * seed = seed, walking at most `cap` steps.
pub fn orbit_length(a: &Gf2Mat, seed: u64, cap: u64) -> Result<u64, StreamError> {
    let mut stream = StateStream::new(a.clone(), seed)?;
    for k in 1..=cap {
        if stream.next_state() == seed {
            return Ok(k);
        }
    }
    Err(StreamError::OrbitCapExceeded { cap })
}

/// True iff the orbit of e_0 visits exactly 2^n - 1 distinct states — the
/// full period. Singular matrices drain into shorter orbits and come back
/// false. Walks with a visited bitmap, so n is capped at
/// [`FULL_PERIOD_DIMENSION_CAP`].
pub fn full_period_check(a: &Gf2Mat) -> Result<bool, StreamError> {
    let n = a.dim();
    if n > FULL_PERIOD_DIMENSION_CAP {
        return Err(StreamError::DimensionTooLarge { n });
    }
    let mut visited = vec![0u64; (1usize << n).div_ceil(64)];
    let mut count: u64 = 0;
    let mut s: u64 = 1;
    loop {
        let (word, bit) = ((s >> 6) as usize, s & 63);
        if visited[word] >> bit & 1 == 1 {
            return Ok(count == (1 << n) - 1);
        }
        visited[word] |= 1 << bit;
        count += 1;
        s = a.mul_vec(s);
    }
}

/// Render a state as an n-character 0/1 string, component 0 leftmost.
pub fn state_to_bits(n: usize, s: u64) -> String {
    (0..n)
        .map(|i| if s >> i & 1 == 1 { '1' } else { '0' })
        .collect()
}

/// Parse the 0/1 string form of a state, component 0 leftmost.
pub fn parse_state(n: usize, text: &str) -> Result<u64, StreamError> {
    let t = text.trim();
    if t.len() != n || t.chars().any(|c| c != '0' && c != '1') {
        return Err(StreamError::SeedOutOfRange { n });
    }
    let mut s = 0u64;
    for (i, c) in t.chars().enumerate() {
        if c == '1' {
            s |= 1 << i;
        }
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Gf2Poly;

    fn companion(s: &str) -> Gf2Mat {
        Gf2Mat::companion(s.parse::<Gf2Poly>().unwrap()).unwrap()
    }

    #[test]
    fn next_state_examples() {
        let mut stream = StateStream::new(companion("x^3+x+1"), 0b001).unwrap();
        // The companion subdiagonal maps e_0 to e_1.
        assert_eq!(stream.next_state(), 0b010);
        assert_eq!(stream.steps_emitted(), 1);
        let mut id = StateStream::new(Gf2Mat::identity(3).unwrap(), 0b101).unwrap();
        assert_eq!(id.next_state(), 0b101);
        assert_eq!(
            StateStream::new(companion("x^3+x+1"), 0).unwrap_err(),
            StreamError::ZeroSeed
        );
        assert_eq!(
            StateStream::new(companion("x^3+x+1"), 0b1000).unwrap_err(),
            StreamError::SeedOutOfRange { n: 3 }
        );
    }

    #[test]
    fn stream_iterator_returns_to_seed() {
        let stream = StateStream::new(companion("x^3+x+1"), 1).unwrap();
        let states: Vec<u64> = stream.take(7).collect();
        assert_eq!(states.len(), 7);
        assert_eq!(states[6], 1);
        // All seven states distinct: the full nonzero orbit.
        let mut sorted = states.clone();
        sorted.sort_unstable();
        sorted.dedup();
        assert_eq!(sorted.len(), 7);
    }

    #[test]
    fn orbit_length_examples() {
        assert_eq!(orbit_length(&companion("x^3+x+1"), 1, 100), Ok(7));
        assert_eq!(orbit_length(&Gf2Mat::identity(3).unwrap(), 5, 100), Ok(1));
        assert_eq!(orbit_length(&companion("x^4+x+1"), 0b1011, 100), Ok(15));
        assert_eq!(
            orbit_length(&companion("x^3+x+1"), 1, 3),
            Err(StreamError::OrbitCapExceeded { cap: 3 })
        );
        assert_eq!(
            orbit_length(&companion("x^3+x+1"), 0, 100),
            Err(StreamError::ZeroSeed)
        );
    }

    #[test]
    fn full_period_examples() {
        assert_eq!(full_period_check(&companion("x^3+x+1")), Ok(true));
        assert_eq!(full_period_check(&Gf2Mat::identity(3).unwrap()), Ok(false));
        // Irreducible but not primitive: order 5 < 15.
        assert_eq!(full_period_check(&companion("x^4+x^3+x^2+x+1")), Ok(false));
        // Singular matrices never have a full period.
        assert_eq!(full_period_check(&Gf2Mat::zero(3).unwrap()), Ok(false));
        assert_eq!(
            full_period_check(&Gf2Mat::identity(21).unwrap()),
            Err(StreamError::DimensionTooLarge { n: 21 })
        );
    }

    #[test]
    fn full_period_at_n_1() {
        // 2^1 - 1 = 1 state: [1] cycles e_0 -> e_0.
        assert_eq!(full_period_check(&Gf2Mat::identity(1).unwrap()), Ok(true));
        assert_eq!(full_period_check(&Gf2Mat::zero(1).unwrap()), Ok(false));
    }

    #[test]
    fn state_text_round_trip() {
        assert_eq!(state_to_bits(3, 0b001), "100");
        assert_eq!(state_to_bits(3, 0b110), "011");
        assert_eq!(parse_state(3, "100"), Ok(0b001));
        assert_eq!(parse_state(3, "011"), Ok(0b110));
        assert!(parse_state(3, "01").is_err());
        assert!(parse_state(3, "01x").is_err());
        for s in 0..16u64 {
            assert_eq!(parse_state(4, &state_to_bits(4, s)).unwrap(), s);
        }
    }
}

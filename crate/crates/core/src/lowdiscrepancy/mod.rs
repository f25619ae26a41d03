//! Halton and Sobol low-discrepancy sequences.
//!
//! Both generators are deterministic and emit one point at a time from a
//! resumable cursor. Index 0 (the origin) is skipped, so the first emitted
//! point has index 1. Sobol points use Gray-code ordering with the embedded
//! Joe–Kuo direction numbers (see [`table`]); no scrambling is applied.

mod table;

use std::fmt;
use std::str::FromStr;

use crate::design::DesignMatrix;
use crate::error::{DoeError, Result};

const SOBOL_BITS: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SequenceKind {
    Halton,
    Sobol,
}

impl fmt::Display for SequenceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SequenceKind::Halton => "halton",
            SequenceKind::Sobol => "sobol",
        })
    }
}

impl FromStr for SequenceKind {
    type Err = DoeError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "halton" => Ok(SequenceKind::Halton),
            "sobol" => Ok(SequenceKind::Sobol),
            other => Err(DoeError::InvalidArgument(format!(
                "unknown sequence `{other}` (expected halton or sobol)"
            ))),
        }
    }
}

/// Highest dimension the embedded Sobol table supports.
pub fn sobol_max_dim() -> usize {
    table::DIRECTION_NUMBERS.len()
}

#[derive(Debug, Clone)]
enum Generator {
    Halton { bases: Vec<u64> },
    Sobol { directions: Vec<[u32; SOBOL_BITS]> },
}

/// Cursor into a low-discrepancy sequence. Cloning forks the stream.
#[derive(Debug, Clone)]
pub struct SequenceState {
    kind: SequenceKind,
    dim: usize,
    next_index: u64,
    generator: Generator,
}

impl SequenceState {
    pub fn new(kind: SequenceKind, dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(DoeError::InvalidArgument("sequence dimension must be positive".into()));
        }
        let generator = match kind {
            SequenceKind::Halton => Generator::Halton {
                bases: first_primes(dim),
            },
            SequenceKind::Sobol => {
                if dim > sobol_max_dim() {
                    return Err(DoeError::UnsupportedDimension {
                        dim,
                        max: sobol_max_dim(),
                    });
                }
                Generator::Sobol {
                    directions: table::DIRECTION_NUMBERS[..dim]
                        .iter()
                        .map(|&(poly, m)| direction_integers(poly, m))
                        .collect(),
                }
            }
        };
        Ok(Self {
            kind,
            dim,
            next_index: 1,
            generator,
        })
    }

    pub fn halton(dim: usize) -> Result<Self> {
        Self::new(SequenceKind::Halton, dim)
    }

    pub fn sobol(dim: usize) -> Result<Self> {
        Self::new(SequenceKind::Sobol, dim)
    }

    pub fn kind(&self) -> SequenceKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Sequence index of the next point to be emitted (1 for a fresh cursor).
    pub fn next_index(&self) -> u64 {
        self.next_index
    }

    /// Moves the cursor forward without emitting points.
    pub fn skip(&mut self, count: u64) {
        self.next_index += count;
    }

    pub fn next_point(&mut self) -> Vec<f64> {
        let index = self.next_index;
        self.next_index += 1;
        match &self.generator {
            Generator::Halton { bases } => bases.iter().map(|&b| radical_inverse(index, b)).collect(),
            Generator::Sobol { directions } => {
                let index = u32::try_from(index).expect("Sobol index exceeds 2^32 - 1");
                let gray = index ^ (index >> 1);
                directions
                    .iter()
                    .map(|v| {
                        let mut x = 0u32;
                        let mut bits = gray;
                        let mut k = 0;
                        while bits != 0 {
                            if bits & 1 == 1 {
                                x ^= v[k];
                            }
                            bits >>= 1;
                            k += 1;
                        }
                        f64::from(x) / 4_294_967_296.0
                    })
                    .collect()
            }
        }
    }

    /// Emits the next `n` points as a design.
    pub fn take_design(&mut self, n: usize) -> DesignMatrix {
        let mut flat = Vec::with_capacity(n * self.dim);
        for _ in 0..n {
            flat.extend(self.next_point());
        }
        DesignMatrix::from_flat(self.dim, flat).expect("sequence points lie in (0, 1)")
    }
}

/// Next Halton point. Panics if `state` is not a Halton cursor.
pub fn halton_next(state: &mut SequenceState) -> Vec<f64> {
    assert_eq!(state.kind, SequenceKind::Halton, "not a Halton cursor");
    state.next_point()
}

/// Next Sobol point. Panics if `state` is not a Sobol cursor.
pub fn sobol_next(state: &mut SequenceState) -> Vec<f64> {
    assert_eq!(state.kind, SequenceKind::Sobol, "not a Sobol cursor");
    state.next_point()
}

/// The first `n` points (after the origin) of a sequence.
pub fn sequence_design(kind: SequenceKind, dim: usize, n: usize) -> Result<DesignMatrix> {
    Ok(SequenceState::new(kind, dim)?.take_design(n))
}

fn radical_inverse(mut index: u64, base: u64) -> f64 {
    let inv = 1.0 / base as f64;
    let mut scale = inv;
    let mut value = 0.0;
    while index > 0 {
        value += (index % base) as f64 * scale;
        index /= base;
        scale *= inv;
    }
    value
}

fn first_primes(count: usize) -> Vec<u64> {
    let mut primes: Vec<u64> = Vec::with_capacity(count);
    let mut candidate = 2u64;
    while primes.len() < count {
        if primes
            .iter()
            .take_while(|&&p| p * p <= candidate)
            .all(|&p| !candidate.is_multiple_of(p))
        {
            primes.push(candidate);
        }
        candidate += 1;
    }
    primes
}

/// Expands a primitive polynomial and its initial direction integers into
/// the 32 left-aligned direction numbers `v_k = m_k · 2^{32−k}`.
fn direction_integers(poly: u32, initial: &[u32]) -> [u32; SOBOL_BITS] {
    let mut v = [0u32; SOBOL_BITS];
    let degree = (32 - poly.leading_zeros()).saturating_sub(1) as usize;
    if degree == 0 {
        for (k, vk) in v.iter_mut().enumerate() {
            *vk = 1 << (SOBOL_BITS - 1 - k);
        }
        return v;
    }
    let a = (poly >> 1) & ((1 << (degree - 1)) - 1);
    for k in 0..degree.min(SOBOL_BITS) {
        v[k] = initial[k] << (SOBOL_BITS - 1 - k);
    }
    for k in degree..SOBOL_BITS {
        let mut value = v[k - degree] ^ (v[k - degree] >> degree);
        for i in 1..degree {
            if (a >> (degree - 1 - i)) & 1 == 1 {
                value ^= v[k - i];
            }
        }
        v[k] = value;
    }
    v
}

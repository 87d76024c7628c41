use std::path::PathBuf;

use thiserror::Error;

use crate::perm::CycleStructure;
use crate::pitch::TransformKind;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("modulus must be at least 1")]
    ZeroModulus,

    #[error("pitch class {value} is out of range for modulus {n}")]
    PitchOutOfRange { value: usize, n: usize },

    #[error("not a series over {n} pitch classes: {reason}")]
    InvalidSeries { n: usize, reason: String },

    #[error("transposition {t} is out of range for modulus {n}")]
    TranspositionOutOfRange { t: usize, n: usize },

    #[error("modulus mismatch: {left} vs {right}")]
    ModulusMismatch { left: usize, right: usize },

    #[error("{kind} requires a series starting at 0 (found {first}); normalize it first")]
    NotNormalized { kind: TransformKind, first: usize },

    #[error("not a permutation of 0..{n}")]
    InvalidPermutation { n: usize },

    #[error("cycle structure {structure} does not sum to {n}")]
    StructureSize { structure: CycleStructure, n: usize },

    #[error("generalized transposition shape sums to {sum}, expected {n}")]
    InvalidGtShape { sum: usize, n: usize },

    #[error("invalid equivalence operation: {0}")]
    InvalidOp(String),

    #[error("structure {structure} is not achievable with {kind} (n={n}, t={t}): {reason}")]
    Unachievable {
        structure: CycleStructure,
        kind: TransformKind,
        n: usize,
        t: usize,
        reason: String,
    },

    #[error("{0} does not support classification")]
    UnsupportedKind(TransformKind),

    #[error("census for n={n} exceeds the configured ceiling of {max}")]
    CeilingExceeded { n: usize, max: usize },

    #[error("could not start worker threads: {0}")]
    ThreadPool(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

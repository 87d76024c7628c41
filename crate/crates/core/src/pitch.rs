//! Pitch classes modulo `n`, series, and the four classical serial
//! transformations.
//!
//! Everything here is numeric. A series is numbered relative to its first
//! note, so the inversion rule `x -> -x` only makes sense for series that
//! start at 0; [`apply_transform`] enforces that instead of silently
//! relabeling the input.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Number of pitch classes in the octave division.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "usize", into = "usize")]
pub struct Modulus(usize);

impl Modulus {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroModulus);
        }
        Ok(Modulus(n))
    }

    #[inline]
    pub fn get(self) -> usize {
        self.0
    }

    #[inline]
    pub fn add(self, a: usize, b: usize) -> usize {
        (a + b) % self.0
    }

    #[inline]
    pub fn neg(self, a: usize) -> usize {
        (self.0 - a % self.0) % self.0
    }

    #[inline]
    pub fn sub(self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    /// Transpositions reduce modulo `n`; `check_transposition` is the strict
    /// variant used at API boundaries.
    pub fn check_transposition(self, t: usize) -> Result<usize> {
        if t >= self.0 {
            return Err(Error::TranspositionOutOfRange { t, n: self.0 });
        }
        Ok(t)
    }
}

impl TryFrom<usize> for Modulus {
    type Error = Error;
    fn try_from(n: usize) -> Result<Self> {
        Modulus::new(n)
    }
}

impl From<Modulus> for usize {
    fn from(m: Modulus) -> usize {
        m.0
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A pitch class in `0..n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PitchClass {
    value: usize,
    modulus: Modulus,
}

impl PitchClass {
    pub fn new(value: usize, modulus: Modulus) -> Result<Self> {
        if value >= modulus.get() {
            return Err(Error::PitchOutOfRange {
                value,
                n: modulus.get(),
            });
        }
        Ok(PitchClass { value, modulus })
    }

    pub fn value(self) -> usize {
        self.value
    }

    pub fn modulus(self) -> Modulus {
        self.modulus
    }

    pub fn transpose(self, t: usize) -> Self {
        PitchClass {
            value: self.modulus.add(self.value, t),
            modulus: self.modulus,
        }
    }

    pub fn invert(self) -> Self {
        PitchClass {
            value: self.modulus.neg(self.value),
            modulus: self.modulus,
        }
    }
}

impl Serialize for Series {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.notes.serialize(serializer)
    }
}

/// An ordering of all `n` pitch classes.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Series {
    notes: Vec<usize>,
    modulus: Modulus,
}

impl Series {
    pub fn new(notes: Vec<usize>, modulus: Modulus) -> Result<Self> {
        let n = modulus.get();
        if notes.len() != n {
            return Err(Error::InvalidSeries {
                n,
                reason: format!("expected {} notes, found {}", n, notes.len()),
            });
        }
        let mut seen = vec![false; n];
        for &x in &notes {
            if x >= n {
                return Err(Error::PitchOutOfRange { value: x, n });
            }
            if seen[x] {
                return Err(Error::InvalidSeries {
                    n,
                    reason: format!("pitch class {} appears twice", x),
                });
            }
            seen[x] = true;
        }
        Ok(Series { notes, modulus })
    }

    /// Builds a series whose modulus is its length.
    pub fn from_notes(notes: &[usize]) -> Result<Self> {
        let modulus = Modulus::new(notes.len())?;
        Series::new(notes.to_vec(), modulus)
    }

    /// `0, 1, ..., n-1`.
    pub fn chromatic(modulus: Modulus) -> Self {
        Series {
            notes: (0..modulus.get()).collect(),
            modulus,
        }
    }

    // Callers guarantee the bijection.
    pub(crate) fn from_raw(notes: Vec<usize>, modulus: Modulus) -> Self {
        debug_assert!(Series::new(notes.clone(), modulus).is_ok());
        Series { notes, modulus }
    }

    pub fn notes(&self) -> &[usize] {
        &self.notes
    }

    pub fn into_notes(self) -> Vec<usize> {
        self.notes
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn len(&self) -> usize {
        self.notes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.notes.is_empty()
    }

    pub fn get(&self, position: usize) -> Option<PitchClass> {
        self.notes.get(position).map(|&value| PitchClass {
            value,
            modulus: self.modulus,
        })
    }

    pub fn first(&self) -> usize {
        self.notes[0]
    }

    /// Position of each pitch class: `positions()[x]` is where `x` sits.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.notes.len()];
        for (i, &x) in self.notes.iter().enumerate() {
            pos[x] = i;
        }
        pos
    }

    pub fn transposed(&self, t: usize) -> Series {
        let m = self.modulus;
        Series {
            notes: self.notes.iter().map(|&x| m.add(x, t)).collect(),
            modulus: m,
        }
    }

    pub fn reversed(&self) -> Series {
        let mut notes = self.notes.clone();
        notes.reverse();
        Series {
            notes,
            modulus: self.modulus,
        }
    }

    /// Elementwise `x -> -x`; the inversion of a series that starts at 0.
    pub fn negated(&self) -> Series {
        let m = self.modulus;
        Series {
            notes: self.notes.iter().map(|&x| m.neg(x)).collect(),
            modulus: m,
        }
    }

    /// Inversion that keeps the first note fixed: `x -> 2*first - x`.
    pub fn inverted_about_first(&self) -> Series {
        let m = self.modulus;
        let axis = m.add(self.first(), self.first());
        Series {
            notes: self.notes.iter().map(|&x| m.sub(axis, x)).collect(),
            modulus: m,
        }
    }

    pub fn starts_at_zero(&self) -> bool {
        self.notes[0] == 0
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, x) in self.notes.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}", x)?;
        }
        f.write_str("]")
    }
}

/// Which classical transformation produces the second series.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum TransformKind {
    P,
    I,
    R,
    RI,
}

impl TransformKind {
    pub const ALL: [TransformKind; 4] = [
        TransformKind::P,
        TransformKind::I,
        TransformKind::R,
        TransformKind::RI,
    ];

    pub fn inverts(self) -> bool {
        matches!(self, TransformKind::I | TransformKind::RI)
    }

    pub fn retrogrades(self) -> bool {
        matches!(self, TransformKind::R | TransformKind::RI)
    }

    pub fn name(self) -> &'static str {
        match self {
            TransformKind::P => "P",
            TransformKind::I => "I",
            TransformKind::R => "R",
            TransformKind::RI => "RI",
        }
    }
}

impl fmt::Display for TransformKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseKindError(pub String);

impl fmt::Display for ParseKindError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "unknown transformation `{}` (expected P, I, R or RI)", self.0)
    }
}

impl std::error::Error for ParseKindError {}

impl FromStr for TransformKind {
    type Err = ParseKindError;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.trim().to_ascii_uppercase().as_str() {
            "P" => Ok(TransformKind::P),
            "I" => Ok(TransformKind::I),
            "R" => Ok(TransformKind::R),
            "RI" => Ok(TransformKind::RI),
            _ => Err(ParseKindError(s.to_string())),
        }
    }
}

/// A transformation kind together with its transposition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TransformSpec {
    pub kind: TransformKind,
    pub t: usize,
}

impl TransformSpec {
    pub fn new(kind: TransformKind, t: usize, modulus: Modulus) -> Result<Self> {
        modulus.check_transposition(t)?;
        Ok(TransformSpec { kind, t })
    }
}

impl fmt::Display for TransformSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.kind, self.t)
    }
}

/// Transposes `s` so that its first note is 0.
pub fn normalize_to_zero(s: &Series) -> Series {
    let m = s.modulus();
    s.transposed(m.neg(s.first()))
}

/// Applies `spec` to `s`.
///
/// P adds `t`; R reverses and adds `t`; I negates and adds `t`; RI negates,
/// adds `t` and then reverses. I and RI reject series that do not start at
/// 0.
pub fn apply_transform(spec: TransformSpec, s: &Series) -> Result<Series> {
    let m = s.modulus();
    m.check_transposition(spec.t)?;
    if spec.kind.inverts() && !s.starts_at_zero() {
        return Err(Error::NotNormalized {
            kind: spec.kind,
            first: s.first(),
        });
    }
    Ok(transform_unchecked(spec, s))
}

/// The same elementwise rule as [`apply_transform`] with no starting-note
/// check. Inversion is then the fixed map `x -> t - x` on pitch classes.
pub(crate) fn transform_unchecked(spec: TransformSpec, s: &Series) -> Series {
    let m = s.modulus();
    let base = if spec.kind.inverts() {
        s.negated()
    } else {
        s.clone()
    };
    let moved = base.transposed(spec.t % m.get());
    if spec.kind.retrogrades() {
        moved.reversed()
    } else {
        moved
    }
}

/// Retrograde first, then inversion about the (new) first note, then `+t`.
///
/// This is the opposite ordering to RI. Applying RI with `t` and then this
/// with `n - t` returns the original series.
pub fn apply_ir(t: usize, s: &Series) -> Result<Series> {
    let m = s.modulus();
    m.check_transposition(t)?;
    Ok(s.reversed().inverted_about_first().transposed(t))
}

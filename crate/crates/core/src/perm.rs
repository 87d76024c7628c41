//! Proliferating permutations: construction from a pair of series, cycle
//! decomposition, order, and the orbit of proliferations.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pitch::{apply_transform, transform_unchecked, Modulus, Series, TransformSpec};

/// A bijection on `0..n`; `image[x]` is where `x` goes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    image: Vec<usize>,
    modulus: Modulus,
}

impl Permutation {
    pub fn new(image: Vec<usize>, modulus: Modulus) -> Result<Self> {
        let n = modulus.get();
        let mut seen = vec![false; n];
        if image.len() != n {
            return Err(Error::InvalidPermutation { n });
        }
        for &x in &image {
            if x >= n || seen[x] {
                return Err(Error::InvalidPermutation { n });
            }
            seen[x] = true;
        }
        Ok(Permutation { image, modulus })
    }

    pub fn identity(modulus: Modulus) -> Self {
        Permutation {
            image: (0..modulus.get()).collect(),
            modulus,
        }
    }

    /// Builds a permutation from disjoint cycles; points not mentioned are
    /// fixed.
    pub fn from_cycles(modulus: Modulus, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut image: Vec<usize> = (0..modulus.get()).collect();
        let mut touched = vec![false; modulus.get()];
        for c in cycles {
            for (i, &x) in c.iter().enumerate() {
                if x >= modulus.get() || touched[x] {
                    return Err(Error::InvalidPermutation { n: modulus.get() });
                }
                touched[x] = true;
                image[x] = c[(i + 1) % c.len()];
            }
        }
        Permutation::new(image, modulus)
    }

    pub(crate) fn from_raw(image: Vec<usize>, modulus: Modulus) -> Self {
        debug_assert!(Permutation::new(image.clone(), modulus).is_ok());
        Permutation { image, modulus }
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.image[x]
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &x)| i == x)
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.image.len()];
        for (x, &y) in self.image.iter().enumerate() {
            inv[y] = x;
        }
        Permutation {
            image: inv,
            modulus: self.modulus,
        }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch {
                left: self.modulus.get(),
                right: other.modulus.get(),
            });
        }
        Ok(Permutation {
            image: other.image.iter().map(|&x| self.image[x]).collect(),
            modulus: self.modulus,
        })
    }

    /// `h ∘ self ∘ h⁻¹`.
    pub fn conjugate_by(&self, h: &Permutation) -> Result<Permutation> {
        h.compose(self)?.compose(&h.inverse())
    }

    pub fn pow(&self, k: u64) -> Permutation {
        let mut out = Permutation::identity(self.modulus);
        for _ in 0..k {
            out = Permutation {
                image: out.image.iter().map(|&x| self.image[x]).collect(),
                modulus: self.modulus,
            };
        }
        out
    }

    /// Replaces every note of `s` by its image.
    pub fn apply_to_series(&self, s: &Series) -> Result<Series> {
        if s.modulus() != self.modulus {
            return Err(Error::ModulusMismatch {
                left: self.modulus.get(),
                right: s.modulus().get(),
            });
        }
        Ok(Series::from_raw(
            s.notes().iter().map(|&x| self.image[x]).collect(),
            self.modulus,
        ))
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", cycle_decomposition(self))
    }
}

/// Multiset of cycle lengths, kept sorted ascending.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CycleStructure(Vec<usize>);

impl CycleStructure {
    /// Sorts `lengths`; zero-length cycles are dropped.
    pub fn new(mut lengths: Vec<usize>) -> Self {
        lengths.retain(|&l| l > 0);
        lengths.sort_unstable();
        CycleStructure(lengths)
    }

    pub fn identity(n: usize) -> Self {
        CycleStructure(vec![1; n])
    }

    pub fn lengths(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn cycle_count(&self) -> usize {
        self.0.len()
    }

    pub fn even_cycle_count(&self) -> usize {
        self.0.iter().filter(|&&l| l % 2 == 0).count()
    }

    /// Least common multiple of the cycle lengths.
    pub fn order(&self) -> u64 {
        self.0.iter().fold(1u64, |acc, &l| lcm(acc, l as u64))
    }

    /// Removes one cycle of length `len`, if present.
    pub fn without(&self, len: usize) -> Option<CycleStructure> {
        let idx = self.0.iter().position(|&l| l == len)?;
        let mut rest = self.0.clone();
        rest.remove(idx);
        Some(CycleStructure(rest))
    }

    /// Multiplicity of each distinct length, ascending by length.
    pub fn multiplicities(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for &l in &self.0 {
            match out.last_mut() {
                Some((len, count)) if *len == l => *count += 1,
                _ => out.push((l, 1)),
            }
        }
        out
    }
}

impl fmt::Display for CycleStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}", l)?;
        }
        f.write_str("]")
    }
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a, b) * b
}

/// Disjoint cycles in canonical presentation: each cycle starts at its
/// smallest element and cycles are ordered by that element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycleDecomposition {
    cycles: Vec<Vec<usize>>,
    central: Option<usize>,
}

impl CycleDecomposition {
    pub fn cycles(&self) -> &[Vec<usize>] {
        &self.cycles
    }

    /// The cycle holding the centre note of the generating series, when one
    /// was supplied and `n` is odd.
    pub fn central_cycle(&self) -> Option<&[usize]> {
        self.central.map(|i| self.cycles[i].as_slice())
    }

    pub fn structure(&self) -> CycleStructure {
        CycleStructure::new(self.cycles.iter().map(Vec::len).collect())
    }

    pub fn contains_cycle(&self, cycle: &[usize]) -> bool {
        self.cycles.iter().any(|c| same_cycle(c, cycle))
    }
}

impl fmt::Display for CycleDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.cycles {
            f.write_str("(")?;
            for (i, x) in c.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{}", x)?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

/// Equal as cyclic sequences.
pub fn same_cycle(a: &[usize], b: &[usize]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    if a.is_empty() {
        return true;
    }
    (0..b.len()).any(|r| (0..a.len()).all(|i| a[i] == b[(i + r) % b.len()]))
}

/// The permutation sending `s1[i]` to `s2[i]` for every position `i`.
pub fn pp_from_pair(s1: &Series, s2: &Series) -> Result<Permutation> {
    if s1.modulus() != s2.modulus() {
        return Err(Error::ModulusMismatch {
            left: s1.modulus().get(),
            right: s2.modulus().get(),
        });
    }
    let mut image = vec![0; s1.len()];
    for (&a, &b) in s1.notes().iter().zip(s2.notes()) {
        image[a] = b;
    }
    Ok(Permutation::from_raw(image, s1.modulus()))
}

/// The proliferating permutation of `s` under `spec`.
pub fn pp_from_transform(s: &Series, spec: TransformSpec) -> Result<Permutation> {
    let second = apply_transform(spec, s)?;
    pp_from_pair(s, &second)
}

/// Like [`pp_from_transform`] but accepts any series; inversion acts as
/// the fixed map `x -> t - x`.
pub fn pp_fixed_axis(s: &Series, spec: TransformSpec) -> Permutation {
    let second = transform_unchecked(spec, s);
    pp_from_pair(s, &second).expect("same modulus")
}

pub fn cycle_decomposition(p: &Permutation) -> CycleDecomposition {
    let n = p.image.len();
    let mut seen = vec![false; n];
    let mut cycles = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut cycle = vec![start];
        seen[start] = true;
        let mut x = p.image[start];
        while x != start {
            seen[x] = true;
            cycle.push(x);
            x = p.image[x];
        }
        cycles.push(cycle);
    }
    CycleDecomposition {
        cycles,
        central: None,
    }
}

/// Cycle decomposition with the central cycle marked: the cycle holding the
/// note at position `(n-1)/2` of `generating`, for odd `n`.
pub fn cycle_decomposition_with_center(
    p: &Permutation,
    generating: &Series,
) -> Result<CycleDecomposition> {
    if generating.modulus() != p.modulus {
        return Err(Error::ModulusMismatch {
            left: p.modulus.get(),
            right: generating.modulus().get(),
        });
    }
    let mut dec = cycle_decomposition(p);
    let n = p.image.len();
    if n % 2 == 1 {
        let centre_note = generating.notes()[(n - 1) / 2];
        dec.central = dec.cycles.iter().position(|c| c.contains(&centre_note));
    }
    Ok(dec)
}

/// Cycle lengths of a raw image vector, sorted ascending. `scratch` must be
/// at least as long as `image`.
pub(crate) fn structure_of_image(image: &[usize], scratch: &mut [bool]) -> Vec<usize> {
    let n = image.len();
    scratch[..n].iter_mut().for_each(|v| *v = false);
    let mut lengths = Vec::new();
    for start in 0..n {
        if scratch[start] {
            continue;
        }
        let mut len = 0;
        let mut x = start;
        while !scratch[x] {
            scratch[x] = true;
            x = image[x];
            len += 1;
        }
        lengths.push(len);
    }
    lengths.sort_unstable();
    lengths
}

/// Least common multiple of the cycle lengths of `p`.
pub fn order(p: &Permutation) -> u64 {
    cycle_decomposition(p).structure().order()
}

/// `[s, p·s, p²·s, ...]`, stopping before `s` would repeat.
pub fn orbit(s: &Series, p: &Permutation) -> Result<Vec<Series>> {
    let mut out = vec![s.clone()];
    let mut current = p.apply_to_series(s)?;
    while &current != s {
        let next = p.apply_to_series(&current)?;
        out.push(current);
        current = next;
    }
    Ok(out)
}

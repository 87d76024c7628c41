//! Which cycle structures a proliferating permutation can have, for each
//! transformation kind and transposition.
//!
//! P, I and RI have closed forms. R with `gcd(n, t) = 1` has a closed form
//! as well (a bound on the number of cycles plus a parity rule on the
//! number of even cycles); every other R case goes through the inductive
//! construction in [`induction`].

pub mod induction;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::partitions;
use crate::perm::{gcd, CycleStructure};
use crate::pitch::{Modulus, TransformKind};

pub use induction::{catalog_r_general, labeled_structures, GtShape, LabeledStructure};

/// One achievable structure together with the number of proliferations it
/// yields.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub order: u64,
    pub structure: CycleStructure,
}

impl CatalogEntry {
    pub fn new(structure: CycleStructure) -> Self {
        CatalogEntry {
            order: structure.order(),
            structure,
        }
    }
}

/// Deduplicates and sorts by `(order, structure)`.
pub(crate) fn canonical_list<I: IntoIterator<Item = CycleStructure>>(items: I) -> Vec<CatalogEntry> {
    let set: BTreeSet<CatalogEntry> = items.into_iter().map(CatalogEntry::new).collect();
    set.into_iter().collect()
}

/// Number of `x` in `0..n` with `2x = t (mod n)`.
pub fn self_inverse_count(n: usize, t: usize) -> usize {
    if n % 2 == 1 {
        1
    } else if t.is_multiple_of(2) {
        2
    } else {
        0
    }
}

/// `gcd(n, t)` with `gcd(n, 0) = n`.
pub fn transposition_gcd(n: usize, t: usize) -> usize {
    gcd(n as u64, t as u64) as usize
}

/// Inversion plus transposition: fixed points where `2x = t`, two-cycles
/// elsewhere.
pub fn catalog_i(n: Modulus, t: usize) -> Result<Vec<CatalogEntry>> {
    let n = n.get();
    Modulus::new(n)?.check_transposition(t)?;
    let fixed = self_inverse_count(n, t).min(n);
    let mut lengths = vec![1; fixed];
    lengths.extend(std::iter::repeat_n(2, (n - fixed) / 2));
    Ok(vec![CatalogEntry::new(CycleStructure::new(lengths))])
}

/// Transposition alone: `gcd(n, t)` cycles of length `n / gcd(n, t)`.
pub fn catalog_p(n: Modulus, t: usize) -> Result<Vec<CatalogEntry>> {
    n.check_transposition(t)?;
    let g = transposition_gcd(n.get(), t);
    Ok(vec![CatalogEntry::new(CycleStructure::new(vec![
        n.get() / g;
        g
    ]))])
}

/// Retrograde inversion.
///
/// Away from the self-inverses every cycle comes paired with the cycle of
/// inverses, so the structure is a doubled partition. The self-inverses
/// (two for even `n` and even `t`, one for odd `n`) sit together in one
/// extra cycle whose length is even, or odd respectively. With odd `n` and
/// `t = 0` the self-inverse is 0 itself, which sits in the first position
/// and cannot be a fixed point, so that cycle has length at least 3.
pub fn catalog_ri(n: Modulus, t: usize) -> Result<Vec<CatalogEntry>> {
    n.check_transposition(t)?;
    let n = n.get();
    if n == 1 {
        return Ok(vec![CatalogEntry::new(CycleStructure::identity(1))]);
    }
    let mut out = Vec::new();
    let with_anchor = |k: usize, out: &mut Vec<CycleStructure>| {
        for p in partitions((n - k) / 2, (n - k) / 2) {
            let mut lengths = p.doubled().parts().to_vec();
            lengths.push(k);
            out.push(CycleStructure::new(lengths));
        }
    };
    if n.is_multiple_of(2) {
        if t % 2 == 1 {
            for p in partitions(n / 2, n / 2) {
                out.push(CycleStructure::new(p.doubled().parts().to_vec()));
            }
        } else {
            for k in (2..=n).step_by(2) {
                with_anchor(k, &mut out);
            }
        }
    } else {
        let first = if t == 0 { 3 } else { 1 };
        for k in (first..=n).step_by(2) {
            with_anchor(k, &mut out);
        }
    }
    Ok(canonical_list(out))
}

/// Retrograde with `gcd(n, t) = 1`: at most `n/2 + 1` cycles, and the
/// number of even-length cycles is even when `n = 1, 2 (mod 4)` and odd
/// when `n = 0, 3 (mod 4)`.
pub fn catalog_r_coprime(n: Modulus) -> Vec<CatalogEntry> {
    let n = n.get();
    let out = partitions(n, n)
        .into_iter()
        .map(|p| CycleStructure::new(p.parts().to_vec()))
        .filter(|s| r_coprime_violation(s, n).is_none());
    canonical_list(out)
}

/// Which of the two coprime-retrograde conditions `s` breaks, if any.
pub(crate) fn r_coprime_violation(s: &CycleStructure, n: usize) -> Option<String> {
    if 2 * s.cycle_count() > n + 2 {
        return Some(format!(
            "condition 1: {} cycles exceeds the maximum of n/2 + 1",
            s.cycle_count()
        ));
    }
    let want_odd = matches!(n % 4, 0 | 3);
    let evens = s.even_cycle_count();
    if (evens % 2 == 1) != want_odd {
        return Some(format!(
            "condition 2: {} even-length cycles, but n = {} (mod 4) needs an {} count",
            evens,
            n % 4,
            if want_odd { "odd" } else { "even" }
        ));
    }
    None
}

/// Dispatches on `kind`. R uses the closed form when `gcd(n, t) = 1` and
/// the induction otherwise.
pub fn catalog(kind: TransformKind, n: Modulus, t: usize) -> Result<Vec<CatalogEntry>> {
    n.check_transposition(t)?;
    match kind {
        TransformKind::P => catalog_p(n, t),
        TransformKind::I => catalog_i(n, t),
        TransformKind::RI => catalog_ri(n, t),
        TransformKind::R => {
            if transposition_gcd(n.get(), t) == 1 {
                Ok(catalog_r_coprime(n))
            } else {
                catalog_r_general(n, &GtShape::from_transposition(n, t)?)
            }
        }
    }
}

/// Whether `structure` occurs in the catalog for `(kind, n, t)`. A
/// structure that does not sum to `n` is never achievable.
pub fn is_achievable(
    structure: &CycleStructure,
    kind: TransformKind,
    n: Modulus,
    t: usize,
) -> Result<bool> {
    if structure.size() != n.get() {
        return Ok(false);
    }
    Ok(catalog(kind, n, t)?
        .iter()
        .any(|e| &e.structure == structure))
}

/// Splits an RI structure into its self-inverse cycle length (if the case
/// has one) and the half partition that gets doubled. Errors name the rule
/// that fails.
pub(crate) fn ri_split(
    structure: &CycleStructure,
    n: usize,
    t: usize,
) -> std::result::Result<(Option<usize>, Vec<usize>), String> {
    if structure.size() != n {
        return Err(format!("lengths sum to {}, not {}", structure.size(), n));
    }
    let halves = |s: &CycleStructure| -> Option<Vec<usize>> {
        let mut out = Vec::new();
        for (len, count) in s.multiplicities() {
            if count % 2 == 1 {
                return None;
            }
            out.extend(std::iter::repeat_n(len, count / 2));
        }
        Some(out)
    };
    if n == 1 {
        return Ok((Some(1), Vec::new()));
    }
    if n.is_multiple_of(2) && t % 2 == 1 {
        return halves(structure).map(|h| (None, h)).ok_or_else(|| {
            "with n even and t odd no note shares a cycle with its inverse, \
             so every cycle length must occur an even number of times"
                .to_string()
        });
    }
    let (parity, min_len, rule) = if n.is_multiple_of(2) {
        (0, 2, "both self-inverses share one even-length cycle and every other length must occur an even number of times")
    } else if t == 0 {
        (1, 3, "odd-anchor-cycle rule: 0 is the only self-inverse and starts the series, so its cycle has odd length at least 3 and every other length must occur an even number of times")
    } else {
        (1, 1, "odd-anchor-cycle rule: the self-inverse lies in a cycle of odd length and every other length must occur an even number of times")
    };
    for (len, _) in structure.multiplicities() {
        if len % 2 != parity || len < min_len {
            continue;
        }
        let rest = structure.without(len).expect("length present");
        if let Some(h) = halves(&rest) {
            return Ok((Some(len), h));
        }
    }
    Err(rule.to_string())
}

/// A human-readable reason why `structure` is absent from the catalog, or
/// `None` when it is present.
pub fn unachievable_reason(
    structure: &CycleStructure,
    kind: TransformKind,
    n: Modulus,
    t: usize,
) -> Result<Option<String>> {
    let nn = n.get();
    if structure.size() != nn {
        return Ok(Some(format!(
            "lengths sum to {}, not {}",
            structure.size(),
            nn
        )));
    }
    if is_achievable(structure, kind, n, t)? {
        return Ok(None);
    }
    let reason = match kind {
        TransformKind::P => {
            let g = transposition_gcd(nn, t);
            format!("P{} always gives {} cycles of length {}", t, g, nn / g)
        }
        TransformKind::I => {
            "inversion gives fixed points at the solutions of 2x = t and two-cycles elsewhere"
                .to_string()
        }
        TransformKind::RI => ri_split(structure, nn, t)
            .err()
            .unwrap_or_else(|| "not in the retrograde-inversion catalog".to_string()),
        TransformKind::R => {
            if transposition_gcd(nn, t) == 1 {
                r_coprime_violation(structure, nn)
                    .unwrap_or_else(|| "not in the retrograde catalog".to_string())
            } else {
                let g = transposition_gcd(nn, t);
                format!(
                    "not produced by the inductive construction for {} transposition cycles of length {}",
                    g,
                    nn / g
                )
            }
        }
    };
    Ok(Some(reason))
}

/// Builds the error for an unachievable structure.
pub(crate) fn unachievable(
    structure: &CycleStructure,
    kind: TransformKind,
    n: Modulus,
    t: usize,
) -> Error {
    let reason = unachievable_reason(structure, kind, n, t)
        .ok()
        .flatten()
        .unwrap_or_else(|| "not achievable".to_string());
    Error::Unachievable {
        structure: structure.clone(),
        kind,
        n: n.get(),
        t,
        reason,
    }
}

//! Structure-preserving operations, equivalence classes and realization.
//!
//! For retrograde kinds the proliferating permutation sends the note at
//! position `i` to `G(note at position n-1-i)`, with `G(x) = t - x` (RI) or
//! `G(x) = x + t` (R). Two families of rewrites leave its cycle structure
//! alone:
//!
//! * position operations, which permute the mirror pairs `{i, n-1-i}` or
//!   swap the two notes of one pair (the permutation itself is unchanged);
//! * relabelings `h` that commute with `G` (the permutation is conjugated
//!   by `h`). For RI these exchange inverse pairs `{x, t-x}` or swap inside
//!   one; for R they exchange whole transposition cycles `{x, x+t, ...}` or
//!   rotate one.
//!
//! The two families commute, so the least series of an orbit is the least,
//! over position arrangements, of the least relabeling of that arrangement,
//! and the least relabeling is found greedily left to right. Inversion is
//! taken as the fixed map `x -> t - x`, which agrees with the usual rule on
//! series that start at 0 and keeps the operations well defined on the
//! series that do not.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::catalog::{is_achievable, ri_split, unachievable, labeled_structures, GtShape};
use crate::census::{next_suffix, unrank, CensusOptions};
use crate::error::{Error, Result};
use crate::perm::{cycle_decomposition, pp_fixed_axis, CycleStructure, Permutation};
use crate::pitch::{normalize_to_zero, Modulus, Series, TransformKind, TransformSpec};
use crate::catalog::transposition_gcd;

/// Largest `n` with an exact canonical form.
pub const EXACT_MAX_N: usize = 12;

/// Largest `n` for which op sequences are searched breadth first.
pub const PATH_MAX_N: usize = 8;

const NONE: usize = usize::MAX;

/// Pitch classes grouped into `{x, t - x}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InversePairing {
    pub pairs: Vec<(usize, usize)>,
    pub self_inverses: Vec<usize>,
}

impl InversePairing {
    pub fn new(n: Modulus, t: usize) -> Result<Self> {
        n.check_transposition(t)?;
        let nn = n.get();
        let mut pairs = Vec::new();
        let mut self_inverses = Vec::new();
        for x in 0..nn {
            let y = n.sub(t, x);
            match x.cmp(&y) {
                std::cmp::Ordering::Less => pairs.push((x, y)),
                std::cmp::Ordering::Equal => self_inverses.push(x),
                std::cmp::Ordering::Greater => {}
            }
        }
        Ok(InversePairing {
            pairs,
            self_inverses,
        })
    }
}

/// Positions grouped into `{i, n-1-i}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MirrorPairing {
    pub pairs: Vec<(usize, usize)>,
    pub center: Option<usize>,
}

impl MirrorPairing {
    pub fn new(n: Modulus) -> Self {
        let nn = n.get();
        MirrorPairing {
            pairs: (0..nn / 2).map(|i| (i, nn - 1 - i)).collect(),
            center: (nn % 2 == 1).then_some(nn / 2),
        }
    }
}

/// One structure-preserving rewrite.
///
/// Positions may name either member of a mirror pair; pitch-class
/// arguments name any member of their inverse pair (RI) or transposition
/// cycle (R), and are aligned: `SwapInversePairs(x, y)` sends `x` to `y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EquivalenceOp {
    SwapPositionPairs(usize, usize),
    SwapWithinPositionPair(usize),
    SwapInversePairs(usize, usize),
    SwapWithinInversePair(usize),
    /// R only: `x -> x + t` on the transposition cycle of `x`. Its order is
    /// the cycle length, so it is an involution only for 2-cycles.
    RotateTranspositionCycle(usize),
}

impl fmt::Display for EquivalenceOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EquivalenceOp::SwapPositionPairs(i, j) => write!(f, "swap position pairs {} and {}", i, j),
            EquivalenceOp::SwapWithinPositionPair(i) => write!(f, "swap within position pair {}", i),
            EquivalenceOp::SwapInversePairs(x, y) => write!(f, "swap pitch groups {} and {}", x, y),
            EquivalenceOp::SwapWithinInversePair(x) => write!(f, "swap within inverse pair {}", x),
            EquivalenceOp::RotateTranspositionCycle(x) => write!(f, "rotate transposition cycle {}", x),
        }
    }
}

/// The commuting map `G` and what can be relabeled.
#[derive(Clone, Debug)]
enum Symmetry {
    Inverse { partner: Vec<usize> },
    Cycles { step: Vec<usize>, len: usize },
}

impl Symmetry {
    fn new(spec: TransformSpec, n: usize) -> Result<Self> {
        let t = spec.t % n.max(1);
        match spec.kind {
            TransformKind::RI => Ok(Symmetry::Inverse {
                partner: (0..n).map(|x| (t + n - x) % n).collect(),
            }),
            TransformKind::R => Ok(Symmetry::Cycles {
                step: (0..n).map(|x| (x + t) % n).collect(),
                len: n / transposition_gcd(n, t),
            }),
            other => Err(Error::UnsupportedKind(other)),
        }
    }

    // the orbit of x under G, starting at x
    fn group(&self, x: usize) -> Vec<usize> {
        let next = match self {
            Symmetry::Inverse { partner } => partner,
            Symmetry::Cycles { step, .. } => step,
        };
        let mut out = vec![x];
        let mut y = next[x];
        while y != x {
            out.push(y);
            y = next[y];
        }
        out
    }
}

fn check_spec(s: &Series, spec: TransformSpec) -> Result<Symmetry> {
    s.modulus().check_transposition(spec.t)?;
    Symmetry::new(spec, s.len())
}

/// Applies `op` to `s`. The proliferating structure under `spec` is
/// unchanged.
pub fn apply_op(op: EquivalenceOp, s: &Series, spec: TransformSpec) -> Result<Series> {
    let sym = check_spec(s, spec)?;
    let n = s.len();
    let mut notes = s.notes().to_vec();
    let bad = |msg: String| Err(Error::InvalidOp(msg));
    let pair_of = |i: usize| -> Result<usize> {
        if i >= n {
            return Err(Error::InvalidOp(format!("position {} out of range", i)));
        }
        let left = i.min(n - 1 - i);
        if left == n - 1 - left {
            return Err(Error::InvalidOp(format!(
                "position {} is the centre and has no mirror",
                i
            )));
        }
        Ok(left)
    };
    let pitch = |x: usize| -> Result<usize> {
        if x >= n {
            Err(Error::InvalidOp(format!("pitch class {} out of range", x)))
        } else {
            Ok(x)
        }
    };
    match op {
        EquivalenceOp::SwapPositionPairs(i, j) => {
            let (a, b) = (pair_of(i)?, pair_of(j)?);
            if a == b {
                return bad(format!("positions {} and {} are in the same pair", i, j));
            }
            notes.swap(a, b);
            notes.swap(n - 1 - a, n - 1 - b);
        }
        EquivalenceOp::SwapWithinPositionPair(i) => {
            let a = pair_of(i)?;
            notes.swap(a, n - 1 - a);
        }
        EquivalenceOp::SwapInversePairs(x, y) => {
            let (gx, gy) = (sym.group(pitch(x)?), sym.group(pitch(y)?));
            if gx.contains(&y) {
                return bad(format!("{} and {} are in the same group", x, y));
            }
            if let Symmetry::Inverse { .. } = sym {
                if gx.len() == 1 || gy.len() == 1 {
                    return bad("self-inverse pitch classes are not inverse pairs".into());
                }
            }
            if gx.len() != gy.len() {
                return bad(format!("groups of {} and {} differ in size", x, y));
            }
            let mut h: Vec<usize> = (0..n).collect();
            for (&a, &b) in gx.iter().zip(&gy) {
                h[a] = b;
                h[b] = a;
            }
            notes.iter_mut().for_each(|v| *v = h[*v]);
        }
        EquivalenceOp::SwapWithinInversePair(x) => {
            let g = sym.group(pitch(x)?);
            if g.len() != 2 {
                return bad(match sym {
                    Symmetry::Inverse { .. } => format!("{} is its own inverse", x),
                    Symmetry::Cycles { .. } => format!(
                        "the transposition cycle of {} has length {}, not 2",
                        x,
                        g.len()
                    ),
                });
            }
            notes.iter_mut().for_each(|v| {
                if *v == g[0] {
                    *v = g[1]
                } else if *v == g[1] {
                    *v = g[0]
                }
            });
        }
        EquivalenceOp::RotateTranspositionCycle(x) => {
            let Symmetry::Cycles { step, .. } = &sym else {
                return bad("rotation applies to retrogrades only".into());
            };
            let g = sym.group(pitch(x)?);
            notes.iter_mut().for_each(|v| {
                if g.contains(v) {
                    *v = step[*v];
                }
            });
        }
    }
    Ok(Series::from_raw(notes, s.modulus()))
}

/// A small generating set of the operation group for `(n, spec)`.
pub fn generators(n: Modulus, spec: TransformSpec) -> Result<Vec<EquivalenceOp>> {
    let nn = n.get();
    let sym = Symmetry::new(spec, nn)?;
    let mut ops = Vec::new();
    let pairs = nn / 2;
    for i in 0..pairs.saturating_sub(1) {
        ops.push(EquivalenceOp::SwapPositionPairs(i, i + 1));
    }
    if pairs > 0 {
        ops.push(EquivalenceOp::SwapWithinPositionPair(0));
    }
    match &sym {
        Symmetry::Inverse { .. } => {
            let ip = InversePairing::new(n, spec.t)?;
            for w in ip.pairs.windows(2) {
                ops.push(EquivalenceOp::SwapInversePairs(w[0].0, w[1].0));
            }
            if let Some(&(x, _)) = ip.pairs.first() {
                ops.push(EquivalenceOp::SwapWithinInversePair(x));
            }
        }
        Symmetry::Cycles { len, .. } => {
            let g = nn / len;
            for j in 0..g.saturating_sub(1) {
                ops.push(EquivalenceOp::SwapInversePairs(j, j + 1));
            }
            if *len > 1 {
                ops.push(EquivalenceOp::RotateTranspositionCycle(0));
            }
        }
    }
    Ok(ops)
}

// least relabeling of `values`, greedily left to right
fn least_relabeling(sym: &Symmetry, values: &[usize], out: &mut Vec<usize>) {
    let n = match sym {
        Symmetry::Inverse { partner } => partner.len(),
        Symmetry::Cycles { step, .. } => step.len(),
    };
    let mut map = vec![NONE; n];
    let mut used = vec![false; n];
    out.clear();
    for &x in values {
        if map[x] == NONE {
            match sym {
                Symmetry::Inverse { partner } => {
                    if partner[x] == x {
                        map[x] = x;
                        used[x] = true;
                    } else {
                        let v = (0..n)
                            .find(|&v| !used[v] && partner[v] != v)
                            .expect("a free pair remains");
                        map[x] = v;
                        map[partner[x]] = partner[v];
                        used[v] = true;
                        used[partner[v]] = true;
                    }
                }
                Symmetry::Cycles { step, .. } => {
                    let v = (0..n).find(|&v| !used[v]).expect("a free cycle remains");
                    let (mut a, mut b) = (x, v);
                    loop {
                        map[a] = b;
                        used[b] = true;
                        a = step[a];
                        b = step[b];
                        if a == x {
                            break;
                        }
                    }
                }
            }
        }
        out.push(map[x]);
    }
}

/// A canonical representative and how it was obtained.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Canonical {
    pub representative: Vec<usize>,
    /// False above [`EXACT_MAX_N`], where a greedy normal form is used and
    /// equivalent series may get different representatives.
    pub exact: bool,
}

/// Least series in the orbit of `s` (exact up to [`EXACT_MAX_N`]).
pub fn canonical_form(s: &Series, spec: TransformSpec) -> Result<Canonical> {
    let sym = check_spec(s, spec)?;
    let exact = s.len() <= EXACT_MAX_N;
    Ok(Canonical {
        representative: search_least(&sym, s.notes(), exact),
        exact,
    })
}

pub fn canonical_representative(s: &Series, spec: TransformSpec) -> Result<Series> {
    let c = canonical_form(s, spec)?;
    Ok(Series::from_raw(c.representative, s.modulus()))
}

/// Whether some sequence of operations turns `s1` into `s2`. Above
/// [`EXACT_MAX_N`] a `false` may be wrong.
pub fn are_equivalent(s1: &Series, s2: &Series, spec: TransformSpec) -> Result<bool> {
    if s1.modulus() != s2.modulus() {
        return Err(Error::ModulusMismatch {
            left: s1.len(),
            right: s2.len(),
        });
    }
    Ok(canonical_form(s1, spec)?.representative == canonical_form(s2, spec)?.representative)
}

// Depth-first over arrangements of the mirror pairs. Left positions come
// first in lexicographic order and their greedy labels never change later,
// so a branch whose prefix is already larger than the best is cut. With
// `exact` false only the locally best branch is followed.
fn search_least(sym: &Symmetry, s: &[usize], exact: bool) -> Vec<usize> {
    let n = s.len();
    let pairs = n / 2;
    let mut best: Option<Vec<usize>> = None;
    let mut arranged = vec![NONE; n];
    if n % 2 == 1 {
        arranged[pairs] = s[pairs];
    }
    let mut used = vec![false; pairs];
    let mut buf = Vec::with_capacity(n);

    struct Ctx<'a> {
        sym: &'a Symmetry,
        s: &'a [usize],
        n: usize,
        pairs: usize,
        exact: bool,
    }

    fn prefix(ctx: &Ctx, arranged: &[usize], depth: usize, buf: &mut Vec<usize>) {
        least_relabeling(ctx.sym, &arranged[..depth], buf);
    }

    fn rec(
        ctx: &Ctx,
        depth: usize,
        arranged: &mut Vec<usize>,
        used: &mut Vec<bool>,
        best: &mut Option<Vec<usize>>,
        buf: &mut Vec<usize>,
    ) {
        let n = ctx.n;
        if depth == ctx.pairs {
            let mut full = Vec::with_capacity(n);
            least_relabeling(ctx.sym, arranged, &mut full);
            if best.as_ref().is_none_or(|b| full < *b) {
                *best = Some(full);
            }
            return;
        }
        let mut options: Vec<(usize, usize, bool)> = Vec::new();
        for (p, &taken) in used.iter().enumerate().take(ctx.pairs) {
            if taken {
                continue;
            }
            for flip in [false, true] {
                let (l, r) = if flip {
                    (ctx.s[n - 1 - p], ctx.s[p])
                } else {
                    (ctx.s[p], ctx.s[n - 1 - p])
                };
                arranged[depth] = l;
                arranged[n - 1 - depth] = r;
                prefix(ctx, arranged, depth + 1, buf);
                let label = buf[depth];
                if let Some(b) = best.as_ref() {
                    if buf[..=depth] > b[..=depth] {
                        continue;
                    }
                }
                options.push((label, p, flip));
            }
        }
        if !ctx.exact {
            if let Some(&min) = options.iter().map(|o| &o.0).min() {
                options.retain(|o| o.0 == min);
                options.truncate(1);
            }
        }
        options.sort();
        for (_, p, flip) in options {
            let (l, r) = if flip {
                (ctx.s[n - 1 - p], ctx.s[p])
            } else {
                (ctx.s[p], ctx.s[n - 1 - p])
            };
            arranged[depth] = l;
            arranged[n - 1 - depth] = r;
            used[p] = true;
            rec(ctx, depth + 1, arranged, used, best, buf);
            used[p] = false;
        }
        arranged[depth] = NONE;
        arranged[n - 1 - depth] = NONE;
    }

    let ctx = Ctx {
        sym,
        s,
        n,
        pairs,
        exact,
    };
    rec(&ctx, 0, &mut arranged, &mut used, &mut best, &mut buf);
    best.expect("at least one arrangement")
}

/// A shortest sequence of generator operations taking `from` to `to`, or
/// `None` if they are not equivalent. Breadth-first, so limited to
/// `n <= PATH_MAX_N`.
pub fn op_path(
    from: &Series,
    to: &Series,
    spec: TransformSpec,
) -> Result<Option<Vec<EquivalenceOp>>> {
    check_spec(from, spec)?;
    if from.modulus() != to.modulus() {
        return Err(Error::ModulusMismatch {
            left: from.len(),
            right: to.len(),
        });
    }
    if from.len() > PATH_MAX_N {
        return Err(Error::InvalidOp(format!(
            "operation paths are searched only for n <= {}",
            PATH_MAX_N
        )));
    }
    let gens = generators(from.modulus(), spec)?;
    let encode = |s: &Series| s.notes().iter().fold(0u64, |acc, &x| acc * 16 + x as u64);
    let target = encode(to);
    let mut parent: HashMap<u64, (u64, usize)> = HashMap::new();
    let start = encode(from);
    parent.insert(start, (start, usize::MAX));
    let mut queue = VecDeque::from([from.clone()]);
    let mut found = start == target;
    while let Some(s) = queue.pop_front() {
        if found {
            break;
        }
        let key = encode(&s);
        for (gi, &op) in gens.iter().enumerate() {
            let next = apply_op(op, &s, spec)?;
            let k = encode(&next);
            if parent.contains_key(&k) {
                continue;
            }
            parent.insert(k, (key, gi));
            if k == target {
                found = true;
                break;
            }
            queue.push_back(next);
        }
    }
    if !found {
        return Ok(None);
    }
    let mut path = Vec::new();
    let mut k = target;
    while k != start {
        let (prev, gi) = parent[&k];
        path.push(gens[gi]);
        k = prev;
    }
    path.reverse();
    Ok(Some(path))
}

fn structure_of(s: &Series, spec: TransformSpec) -> CycleStructure {
    cycle_decomposition(&pp_fixed_axis(s, spec)).structure()
}

/// A series whose proliferating permutation under `(kind, t)` has the given
/// structure.
pub fn realize(
    structure: &CycleStructure,
    kind: TransformKind,
    n: Modulus,
    t: usize,
) -> Result<Series> {
    n.check_transposition(t)?;
    if structure.size() != n.get() {
        return Err(Error::StructureSize {
            structure: structure.clone(),
            n: n.get(),
        });
    }
    if !is_achievable(structure, kind, n, t)? {
        return Err(unachievable(structure, kind, n, t));
    }
    let s = match kind {
        TransformKind::P | TransformKind::I => Series::chromatic(n),
        TransformKind::RI => realize_ri(structure, n, t)?,
        TransformKind::R => realize_r(structure, n, t)?,
    };
    let spec = TransformSpec::new(kind, t, n)?;
    debug_assert!(s.starts_at_zero());
    debug_assert_eq!(&structure_of(&s, spec), structure);
    Ok(s)
}

// Mirror pairs are filled from the outside in. A doubled block of length L
// uses L fresh inverse pairs a_1..a_L: a_m on the left, t - a_{m+1} on the
// right, giving the cycles (a_1 .. a_L) and its inverse. The block holding
// the self-inverses threads them through one cycle.
fn realize_ri(structure: &CycleStructure, n: Modulus, t: usize) -> Result<Series> {
    let nn = n.get();
    if nn == 1 {
        return Ok(Series::chromatic(n));
    }
    let (anchor, halves) =
        ri_split(structure, nn, t).map_err(|_| unachievable(structure, TransformKind::RI, n, t))?;
    let ip = InversePairing::new(n, t)?;
    let inv = |x: usize| n.sub(t, x);
    let mut fresh: std::vec::IntoIter<usize> =
        ip.pairs.iter().map(|p| p.0).collect::<Vec<_>>().into_iter();
    let mut slots = 0..nn / 2;
    let mut s = vec![NONE; nn];

    let place_special = |s: &mut Vec<usize>, fresh: &mut std::vec::IntoIter<usize>, slots: &mut std::ops::Range<usize>| {
        let Some(k) = anchor else { return };
        if nn.is_multiple_of(2) {
            let (x, y) = (ip.self_inverses[0], ip.self_inverses[1]);
            let h = k / 2;
            let a: Vec<usize> = std::iter::once(x).chain(fresh.by_ref().take(h - 1)).collect();
            let p: Vec<usize> = slots.by_ref().take(h).collect();
            for m in 0..h {
                s[p[m]] = a[m];
                s[nn - 1 - p[m]] = if m + 1 < h { inv(a[m + 1]) } else { y };
            }
        } else {
            let z = ip.self_inverses[0];
            let h = k.div_ceil(2);
            let a: Vec<usize> = std::iter::once(z).chain(fresh.by_ref().take(h - 1)).collect();
            let p: Vec<usize> = slots.by_ref().take(h - 1).collect();
            for m in 0..h - 1 {
                s[p[m]] = a[m];
                s[nn - 1 - p[m]] = inv(a[m + 1]);
            }
            s[nn / 2] = a[h - 1];
        }
    };
    let place_doubled = |s: &mut Vec<usize>, fresh: &mut std::vec::IntoIter<usize>, slots: &mut std::ops::Range<usize>| {
        for &len in &halves {
            let a: Vec<usize> = fresh.by_ref().take(len).collect();
            let p: Vec<usize> = slots.by_ref().take(len).collect();
            for m in 0..len {
                s[p[m]] = a[m];
                s[nn - 1 - p[m]] = inv(a[(m + 1) % len]);
            }
        }
    };
    if t == 0 {
        place_special(&mut s, &mut fresh, &mut slots);
        place_doubled(&mut s, &mut fresh, &mut slots);
    } else {
        place_doubled(&mut s, &mut fresh, &mut slots);
        place_special(&mut s, &mut fresh, &mut slots);
    }
    debug_assert!(s.iter().all(|&x| x != NONE));

    // the first note must be 0, which is self-inverse exactly when t = 0
    if (inv(s[0]) == s[0]) != (t == 0) {
        s.swap(0, nn - 1);
    }
    let u = s[0];
    if u != 0 {
        let mut h: Vec<usize> = (0..nn).collect();
        h[u] = 0;
        h[0] = u;
        if inv(u) != u {
            h[inv(u)] = inv(0);
            h[inv(0)] = inv(u);
        }
        s.iter_mut().for_each(|v| *v = h[*v]);
    }
    Series::new(s, n)
}

// Replays an induction witness: its GT cycles become transposition cycles.
fn realize_r(structure: &CycleStructure, n: Modulus, t: usize) -> Result<Series> {
    let nn = n.get();
    let shape = GtShape::from_transposition(n, t)?;
    let states = labeled_structures(n, &shape)?;
    let state = states
        .iter()
        .find(|s| &s.structure() == structure)
        .ok_or_else(|| unachievable(structure, TransformKind::R, n, t))?;
    let gt = Permutation::new(
        state.witness_gt().iter().map(|&x| x as usize).collect(),
        n,
    )?;
    let mut pitch = vec![NONE; nn];
    for (j, cycle) in cycle_decomposition(&gt).cycles().iter().enumerate() {
        let mut p = j;
        for &note in cycle {
            pitch[note] = p;
            p = n.add(p, t);
        }
    }
    let notes: Vec<usize> = state
        .witness_series()
        .iter()
        .map(|&id| pitch[id as usize])
        .collect();
    Ok(normalize_to_zero(&Series::new(notes, n)?))
}

/// One equivalence class among the series that start with 0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassEntry {
    pub id: usize,
    pub structure: CycleStructure,
    pub representative: Series,
    /// Number of series starting with 0 in the class.
    pub size: u64,
}

/// Every class, found by canonicalizing every series that starts with 0.
/// Classes are numbered by representative order.
pub fn enumerate_classes(
    kind: TransformKind,
    n: Modulus,
    t: usize,
    options: &CensusOptions,
) -> Result<Vec<ClassEntry>> {
    let spec = TransformSpec::new(kind, t, n)?;
    let nn = n.get();
    let sym = Symmetry::new(spec, nn)?;
    if nn > options.max_n {
        return Err(Error::CeilingExceeded {
            n: nn,
            max: options.max_n,
        });
    }
    if nn > EXACT_MAX_N {
        return Err(Error::InvalidOp(format!(
            "exact classes are available only for n <= {}",
            EXACT_MAX_N
        )));
    }
    let total: u64 = (1..nn as u64).product();
    let mut seen: BTreeMap<Vec<usize>, u64> = BTreeMap::new();
    let mut series = unrank(nn, 0);
    for i in 0..total {
        if i > 0 {
            next_suffix(&mut series);
        }
        *seen.entry(search_least(&sym, &series, true)).or_default() += 1;
    }
    Ok(seen
        .into_iter()
        .enumerate()
        .map(|(id, (rep, size))| {
            let representative = Series::from_raw(rep, n);
            ClassEntry {
                id,
                structure: structure_of(&representative, spec),
                representative,
                size,
            }
        })
        .collect())
}

/// Representatives per class: one per structure for RI, every class for R.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum ClassTable {
    ByStructure(BTreeMap<CycleStructure, Series>),
    ByClass(Vec<ClassEntry>),
}

/// RI representatives come from [`realize`] (canonicalized when exact), so
/// any `n` works. R classes come from [`enumerate_classes`].
pub fn class_table(
    kind: TransformKind,
    n: Modulus,
    t: usize,
    options: &CensusOptions,
) -> Result<ClassTable> {
    match kind {
        TransformKind::RI => {
            let spec = TransformSpec::new(kind, t, n)?;
            let mut table = BTreeMap::new();
            for entry in crate::catalog::catalog_ri(n, t)? {
                let mut s = realize(&entry.structure, kind, n, t)?;
                if n.get() <= EXACT_MAX_N {
                    s = canonical_representative(&s, spec)?;
                }
                table.insert(entry.structure, s);
            }
            Ok(ClassTable::ByStructure(table))
        }
        TransformKind::R => Ok(ClassTable::ByClass(enumerate_classes(kind, n, t, options)?)),
        other => Err(Error::UnsupportedKind(other)),
    }
}

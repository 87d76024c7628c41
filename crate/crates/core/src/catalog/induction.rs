//! Inductive construction of retrograde catalogs over generalized
//! transpositions.
//!
//! A generalized transposition (GT) is any permutation used in place of
//! `x -> x + t` before retrograding, so the proliferating permutation sends
//! the note at position `i` to `GT(note at position n-1-i)`. Only the cycle
//! shape of the GT matters. Series are grown one note at a time:
//!
//! * even -> odd: the new note takes the centre position. If it is a fixed
//!   point of the GT it becomes a fixed point of the permutation; otherwise
//!   it is spliced into a cycle just before some note of its own GT cycle,
//!   and that cycle becomes the central cycle.
//! * odd -> even: the new note is placed right after the centre note `a`.
//!   Writing the central cycle as `(g ... a)`, the new note either extends
//!   it (GT fixed point), splits it in two, or joins it with another cycle,
//!   depending on where the next note of its GT cycle lies.
//!
//! Every note carries the label of its GT cycle. Labels of GT cycles that
//! are already complete can never be referenced again and are erased;
//! the remaining labels are canonicalized by trying every relabeling among
//! interchangeable GT cycles. Each state also keeps a concrete witness
//! (series and GT on note ids), which is what `realize` replays.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::rc::Rc;

use crate::catalog::{canonical_list, CatalogEntry};
use crate::error::{Error, Result};
use crate::perm::CycleStructure;
use crate::pitch::Modulus;

const DEAD: u8 = u8::MAX;

// Relabelings tried during canonicalization; beyond this the state is kept
// under its current labels, which only costs duplicate states.
const MAX_RELABELINGS: usize = 40_320;

/// Cycle lengths of a generalized transposition.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GtShape {
    lengths: Vec<usize>,
}

impl GtShape {
    pub fn new(mut lengths: Vec<usize>) -> Self {
        lengths.retain(|&l| l > 0);
        lengths.sort_unstable();
        GtShape { lengths }
    }

    /// `gcd(n, t)` cycles of length `n / gcd(n, t)`.
    pub fn from_transposition(n: Modulus, t: usize) -> Result<Self> {
        n.check_transposition(t)?;
        let g = super::transposition_gcd(n.get(), t);
        Ok(GtShape::new(vec![n.get() / g; g]))
    }

    pub fn lengths(&self) -> &[usize] {
        &self.lengths
    }

    pub fn size(&self) -> usize {
        self.lengths.iter().sum()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
struct Node {
    label: u8,
    note: u16,
}

/// A permutation cycle structure in which every note remembers its GT
/// cycle, plus a concrete series and GT that realize it.
#[derive(Clone, Debug)]
pub struct LabeledStructure {
    // odd sizes: the cycle holding the centre note, centre note last
    central: Option<Vec<Node>>,
    cycles: Vec<Vec<Node>>,
    series: Vec<u16>,
    gt: Vec<u16>,
}

impl LabeledStructure {
    pub fn structure(&self) -> CycleStructure {
        let mut lengths: Vec<usize> = self.cycles.iter().map(Vec::len).collect();
        if let Some(c) = &self.central {
            lengths.push(c.len());
        }
        CycleStructure::new(lengths)
    }

    /// GT labels along the central cycle, ending at the centre note. `None`
    /// marks a note whose GT cycle is complete.
    pub fn central_labels(&self) -> Option<Vec<Option<usize>>> {
        self.central.as_ref().map(|c| labels_of(c))
    }

    pub fn cycle_labels(&self) -> Vec<Vec<Option<usize>>> {
        self.cycles.iter().map(|c| labels_of(c)).collect()
    }

    /// Series of note ids realizing this state (ids are insertion order).
    pub fn witness_series(&self) -> &[u16] {
        &self.series
    }

    /// The GT of the witness: `witness_gt()[a]` is the image of note `a`.
    pub fn witness_gt(&self) -> &[u16] {
        &self.gt
    }

    fn key(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.series.len() + self.cycles.len() + 2);
        if let Some(c) = &self.central {
            out.extend(c.iter().map(|x| x.label));
        }
        for c in &self.cycles {
            out.push(DEAD - 1);
            out.extend(c.iter().map(|x| x.label));
        }
        out
    }

    fn relabel(&mut self, map: &[u8]) {
        let f = |x: &mut Node| {
            if x.label != DEAD {
                x.label = map[x.label as usize];
            }
        };
        if let Some(c) = &mut self.central {
            c.iter_mut().for_each(f);
        }
        self.cycles.iter_mut().flatten().for_each(f);
    }

    fn kill(&mut self, label: u8) {
        let f = |x: &mut Node| {
            if x.label == label {
                x.label = DEAD;
            }
        };
        if let Some(c) = &mut self.central {
            c.iter_mut().for_each(f);
        }
        self.cycles.iter_mut().flatten().for_each(f);
    }

    // rotate each cycle to its least label sequence, then sort the cycles
    fn normalize(&mut self) {
        for c in &mut self.cycles {
            let r = least_rotation(c);
            c.rotate_left(r);
        }
        self.cycles.sort_by(|a, b| {
            a.len()
                .cmp(&b.len())
                .then_with(|| a.iter().map(|x| x.label).cmp(b.iter().map(|x| x.label)))
        });
    }
}

fn labels_of(c: &[Node]) -> Vec<Option<usize>> {
    c.iter()
        .map(|x| (x.label != DEAD).then_some(x.label as usize))
        .collect()
}

fn least_rotation(c: &[Node]) -> usize {
    let n = c.len();
    (0..n)
        .min_by(|&a, &b| {
            (0..n)
                .map(|i| c[(a + i) % n].label)
                .cmp((0..n).map(|i| c[(b + i) % n].label))
        })
        .unwrap_or(0)
}

struct Induction {
    targets: Vec<u8>,
    memo: HashMap<Vec<u8>, Rc<Vec<LabeledStructure>>>,
}

impl Induction {
    fn new(shape: &GtShape) -> Result<Self> {
        if shape.lengths.len() >= DEAD as usize - 1 || shape.size() > u16::MAX as usize {
            return Err(Error::InvalidGtShape {
                sum: shape.size(),
                n: shape.size(),
            });
        }
        Ok(Induction {
            targets: shape.lengths.iter().map(|&l| l as u8).collect(),
            memo: HashMap::new(),
        })
    }

    fn reachable(&mut self, fill: &[u8]) -> Rc<Vec<LabeledStructure>> {
        if let Some(hit) = self.memo.get(fill) {
            return hit.clone();
        }
        let size: usize = fill.iter().map(|&f| f as usize).sum();
        let result = if size == 1 {
            let i = fill.iter().position(|&f| f == 1).expect("one note") as u8;
            let mut s = LabeledStructure {
                central: Some(vec![Node { label: i, note: 0 }]),
                cycles: Vec::new(),
                series: vec![0],
                gt: vec![0],
            };
            if fill[i as usize] == self.targets[i as usize] {
                s.kill(i);
            }
            vec![s]
        } else {
            self.step(fill, size)
        };
        let result = Rc::new(result);
        self.memo.insert(fill.to_vec(), result.clone());
        result
    }

    fn step(&mut self, fill: &[u8], size: usize) -> Vec<LabeledStructure> {
        // the newest note may come from any GT cycle; interchangeable cycles
        // give the same states up to relabeling, so one per class
        let mut seen = BTreeSet::new();
        let labels: Vec<u8> = (0..fill.len())
            .filter(|&i| fill[i] > 0 && seen.insert((self.targets[i], fill[i])))
            .map(|i| i as u8)
            .collect();

        let mut found: BTreeMap<Vec<u8>, LabeledStructure> = BTreeMap::new();
        for &label in &labels {
            let li = label as usize;
            let mut sub_fill = fill.to_vec();
            sub_fill[li] -= 1;
            let subs = self.reachable(&sub_fill);
            // sub states are canonical up to swapping `label` with its twins
            let mut partners: Vec<Option<u8>> = vec![None];
            if sub_fill[li] > 0 {
                partners.extend(
                    (0..fill.len())
                        .filter(|&j| {
                            j != li
                                && self.targets[j] == self.targets[li]
                                && sub_fill[j] == sub_fill[li]
                        })
                        .map(|j| Some(j as u8)),
                );
            }
            for sub in subs.iter() {
                for partner in &partners {
                    let mut base = sub.clone();
                    if let Some(j) = *partner {
                        let mut map: Vec<u8> = (0..fill.len() as u8).collect();
                        map.swap(li, j as usize);
                        base.relabel(&map);
                    }
                    let grown = if size % 2 == 1 {
                        grow_centre(&base, label, fill[li] == 1)
                    } else {
                        grow_beside_centre(&base, label, fill[li] == 1)
                    };
                    for mut s in grown {
                        if fill[li] == self.targets[li] {
                            s.kill(label);
                        }
                        let s = self.canonical(s, fill);
                        found.entry(s.key()).or_insert(s);
                    }
                }
            }
        }
        found.into_values().collect()
    }

    // least key over relabelings of interchangeable live GT cycles
    fn canonical(&self, mut s: LabeledStructure, fill: &[u8]) -> LabeledStructure {
        let mut classes: BTreeMap<(u8, u8), Vec<u8>> = BTreeMap::new();
        for (i, (&f, &target)) in fill.iter().zip(&self.targets).enumerate() {
            if f > 0 && f < target {
                classes
                    .entry((target, f))
                    .or_default()
                    .push(i as u8);
            }
        }
        let groups: Vec<Vec<u8>> = classes.into_values().filter(|g| g.len() > 1).collect();
        let total: usize = groups
            .iter()
            .map(|g| (1..=g.len()).product::<usize>())
            .try_fold(1usize, |acc, f| acc.checked_mul(f))
            .unwrap_or(usize::MAX);
        s.normalize();
        if groups.is_empty() || total > MAX_RELABELINGS {
            return s;
        }
        let identity: Vec<u8> = (0..fill.len() as u8).collect();
        let mut best_key = s.key();
        let mut best_map = identity.clone();
        for_each_relabeling(&groups, &identity, &mut |map| {
            let mut candidate = s.clone();
            candidate.relabel(map);
            candidate.normalize();
            let key = candidate.key();
            if key < best_key {
                best_key = key;
                best_map = map.to_vec();
            }
        });
        s.relabel(&best_map);
        s.normalize();
        s
    }
}

fn for_each_relabeling(groups: &[Vec<u8>], base: &[u8], f: &mut dyn FnMut(&[u8])) {
    fn rec(groups: &[Vec<u8>], map: &mut Vec<u8>, f: &mut dyn FnMut(&[u8])) {
        let Some((first, rest)) = groups.split_first() else {
            f(map);
            return;
        };
        let mut images = first.clone();
        permute(&mut images, 0, &mut |perm| {
            for (&from, &to) in first.iter().zip(perm) {
                map[from as usize] = to;
            }
            rec(rest, map, f);
        });
        for &from in first {
            map[from as usize] = from;
        }
    }
    fn permute(v: &mut Vec<u8>, k: usize, f: &mut dyn FnMut(&[u8])) {
        if k == v.len() {
            f(v);
            return;
        }
        for i in k..v.len() {
            v.swap(k, i);
            permute(v, k + 1, f);
            v.swap(k, i);
        }
    }
    let mut map = base.to_vec();
    rec(groups, &mut map, f);
}

// insert `new` into the witness GT just before note `q`
fn splice_gt(gt: &[u16], q: u16, new: u16) -> Vec<u16> {
    let mut out = gt.to_vec();
    let p = out.iter().position(|&x| x == q).expect("q has a preimage");
    out[p] = new;
    out.push(q);
    out
}

fn grow_centre(base: &LabeledStructure, label: u8, gt_fixed: bool) -> Vec<LabeledStructure> {
    debug_assert!(base.central.is_none());
    let new = base.series.len() as u16;
    let new_node = Node { label, note: new };
    let mut series = base.series.clone();
    series.insert(base.series.len() / 2, new);
    if gt_fixed {
        let mut gt = base.gt.clone();
        gt.push(new);
        return vec![LabeledStructure {
            central: Some(vec![new_node]),
            cycles: base.cycles.clone(),
            series,
            gt,
        }];
    }
    let mut out = Vec::new();
    for (ci, cycle) in base.cycles.iter().enumerate() {
        for k in 0..cycle.len() {
            if cycle[k].label != label {
                continue;
            }
            let mut central = Vec::with_capacity(cycle.len() + 1);
            central.extend_from_slice(&cycle[k..]);
            central.extend_from_slice(&cycle[..k]);
            central.push(new_node);
            let mut cycles = base.cycles.clone();
            cycles.remove(ci);
            out.push(LabeledStructure {
                central: Some(central),
                cycles,
                series: series.clone(),
                gt: splice_gt(&base.gt, cycle[k].note, new),
            });
        }
    }
    out
}

fn grow_beside_centre(base: &LabeledStructure, label: u8, gt_fixed: bool) -> Vec<LabeledStructure> {
    let central = base.central.as_ref().expect("odd size has a centre");
    let new = base.series.len() as u16;
    let new_node = Node { label, note: new };
    let mut series = base.series.clone();
    series.insert(base.series.len() / 2 + 1, new);
    if gt_fixed {
        let mut cycle = central.clone();
        cycle.push(new_node);
        let mut cycles = base.cycles.clone();
        cycles.push(cycle);
        let mut gt = base.gt.clone();
        gt.push(new);
        return vec![LabeledStructure {
            central: None,
            cycles,
            series,
            gt,
        }];
    }
    let mut out = Vec::new();
    // split the central cycle at a note of the same GT cycle
    for j in 0..central.len() {
        if central[j].label != label {
            continue;
        }
        let mut head = vec![new_node];
        head.extend_from_slice(&central[..j]);
        let tail = central[j..].to_vec();
        let mut cycles = base.cycles.clone();
        cycles.push(head);
        cycles.push(tail);
        out.push(LabeledStructure {
            central: None,
            cycles,
            series: series.clone(),
            gt: splice_gt(&base.gt, central[j].note, new),
        });
    }
    // or join it with another cycle through such a note
    for (ci, other) in base.cycles.iter().enumerate() {
        for k in 0..other.len() {
            if other[k].label != label {
                continue;
            }
            let mut joined = vec![new_node];
            joined.extend_from_slice(central);
            joined.extend_from_slice(&other[k..]);
            joined.extend_from_slice(&other[..k]);
            let mut cycles = base.cycles.clone();
            cycles.remove(ci);
            cycles.push(joined);
            out.push(LabeledStructure {
                central: None,
                cycles,
                series: series.clone(),
                gt: splice_gt(&base.gt, other[k].note, new),
            });
        }
    }
    out
}

/// All labeled structures reachable for a GT of the given shape, up to the
/// equivalences described in the module docs, in key order.
pub fn labeled_structures(n: Modulus, gt: &GtShape) -> Result<Vec<LabeledStructure>> {
    if gt.size() != n.get() {
        return Err(Error::InvalidGtShape {
            sum: gt.size(),
            n: n.get(),
        });
    }
    let mut ind = Induction::new(gt)?;
    let full = ind.targets.clone();
    Ok(ind.reachable(&full).as_ref().clone())
}

/// Structures of retrograde proliferating permutations over a GT shape.
pub fn catalog_r_general(n: Modulus, gt: &GtShape) -> Result<Vec<CatalogEntry>> {
    let states = labeled_structures(n, gt)?;
    Ok(canonical_list(states.iter().map(LabeledStructure::structure)))
}

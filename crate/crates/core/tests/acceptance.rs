//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any fails.

use std::path::Path;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use prolifera::catalog::catalog_ri;
use prolifera::*;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

const AC1_LIMIT: Duration = Duration::from_secs(1);
const AC8_MIN_CASES: usize = 10_000;
const AC8_SEED: u64 = 0x5EED_0008;

type Outcome = Result<String, String>;

fn m(n: usize) -> Modulus {
    Modulus::new(n).unwrap()
}

fn series(v: &[usize]) -> Series {
    Series::from_notes(v).unwrap()
}

fn spec(kind: TransformKind, t: usize, n: usize) -> TransformSpec {
    TransformSpec::new(kind, t, m(n)).unwrap()
}

fn cs(v: &[usize]) -> CycleStructure {
    CycleStructure::new(v.to_vec())
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn raw_structure(s: &Series, sp: TransformSpec) -> CycleStructure {
    cycle_decomposition(&pp_fixed_axis(s, sp)).structure()
}

fn options() -> CensusOptions {
    CensusOptions::default()
}

// Webern Op.21 and Op.28 rows numbered from A, so A=0, Bb=1, ..., G#=11
fn ac1() -> Outcome {
    let start = Instant::now();
    let names = ["A", "Bb", "B", "C", "C#", "D", "D#", "E", "F", "F#", "G", "G#"];
    let pc = |name: &str| names.iter().position(|&x| x == name).unwrap();
    let op21: Vec<usize> = ["A", "F#", "G", "G#", "E", "F", "B", "Bb", "D", "C#", "C", "D#"]
        .iter()
        .map(|x| pc(x))
        .collect();
    let op28: Vec<usize> = ["Bb", "A", "C", "B", "D#", "E", "C#", "D", "F#", "F", "G#", "G"]
        .iter()
        .map(|x| pc(x))
        .collect();
    let p = pp_from_pair(&series(&op21), &series(&op28)).map_err(|e| e.to_string())?;
    let dec = cycle_decomposition(&p);
    ensure(order(&p) == 8, format!("order {}", order(&p)))?;
    ensure(dec.structure() == cs(&[4, 8]), format!("structure {}", dec.structure()))?;
    let want: Vec<usize> = ["A", "Bb", "D", "F#"].iter().map(|x| pc(x)).collect();
    ensure(dec.contains_cycle(&want), format!("cycles {}", dec))?;
    let elapsed = start.elapsed();
    ensure(elapsed < AC1_LIMIT, format!("took {:?}", elapsed))?;
    Ok(format!("order 8, [4, 8], (A Bb D F#) in {:?}", elapsed))
}

fn ac2() -> Outcome {
    let a = series(&[0, 3, 4, 2, 1, 6, 5]);
    let sp = spec(TransformKind::RI, 2, 7);
    let b = apply_transform(sp, &a).map_err(|e| e.to_string())?;
    ensure(b.notes() == [4, 3, 1, 0, 5, 6, 2], format!("B = {}", b))?;
    let p = pp_from_transform(&a, sp).map_err(|e| e.to_string())?;
    let shown = cycle_decomposition(&p).to_string();
    ensure(shown == "(0 4 1 5 2)(3)(6)", format!("PP {}", shown))?;
    let orbit_a = orbit(&a, &p).map_err(|e| e.to_string())?;
    let expected: Vec<Vec<usize>> = vec![
        vec![0, 3, 4, 2, 1, 6, 5],
        vec![4, 3, 1, 0, 5, 6, 2],
        vec![1, 3, 5, 4, 2, 6, 0],
        vec![5, 3, 2, 1, 0, 6, 4],
        vec![2, 3, 0, 5, 4, 6, 1],
    ];
    let got: Vec<Vec<usize>> = orbit_a.iter().map(|s| s.notes().to_vec()).collect();
    ensure(got == expected, format!("orbit {:?}", got))?;

    let ir_image = apply_ir(5, &b).map_err(|e| e.to_string())?;
    ensure(ir_image == a, format!("IR5(B) = {}", ir_image))?;
    let q = pp_from_pair(&b, &ir_image).map_err(|e| e.to_string())?;
    let orbit_b: Vec<Vec<usize>> = orbit(&b, &q)
        .map_err(|e| e.to_string())?
        .iter()
        .map(|s| s.notes().to_vec())
        .collect();
    let mut want_b = vec![expected[1].clone(), expected[0].clone()];
    want_b.extend(expected[2..].iter().rev().cloned());
    ensure(orbit_b == want_b, format!("IR orbit {:?}", orbit_b))?;
    let orbit_a_ir: Vec<Vec<usize>> = orbit(&a, &q)
        .map_err(|e| e.to_string())?
        .iter()
        .map(|s| s.notes().to_vec())
        .collect();
    let mut reversed = vec![expected[0].clone()];
    reversed.extend(expected[1..].iter().rev().cloned());
    ensure(orbit_a_ir == reversed, format!("IR orbit from A {:?}", orbit_a_ir))?;
    Ok("B, PP and both five-series orbits match".into())
}

fn ac3() -> Outcome {
    let mut checked = 0;
    for n in 1..=8 {
        for t in 0..n {
            for kind in TransformKind::ALL {
                let r = verify_catalog(kind, m(n), t, &options()).map_err(|e| e.to_string())?;
                ensure(
                    r.is_clean(),
                    format!(
                        "{} n={} t={}: missing {:?}, extra {:?}",
                        kind, n, t, r.missing, r.extra
                    ),
                )?;
                checked += 1;
            }
        }
    }
    Ok(format!("{} (kind, n, t) cases, zero diff", checked))
}

fn ac4() -> Outcome {
    let has = |s: &[usize], kind, n, t| is_achievable(&cs(s), kind, m(n), t).unwrap();
    let ri = TransformKind::RI;
    for t in (1..24).step_by(2) {
        ensure(has(&[1, 1, 1, 1, 3, 3, 7, 7], ri, 24, t), format!("[1,1,1,1,3,3,7,7] n=24 t={}", t))?;
        ensure(!has(&[2, 2, 2, 9, 9], ri, 24, t), format!("[2,2,2,9,9] n=24 t={}", t))?;
    }
    for t in (0..12).step_by(2) {
        ensure(has(&[2, 2, 8], ri, 12, t), format!("[2,2,8] n=12 t={}", t))?;
        ensure(!has(&[6, 6], ri, 12, t), format!("[6,6] n=12 t={}", t))?;
    }
    ensure(has(&[2, 2, 5], ri, 9, 0), "[2,2,5] n=9 t=0")?;
    ensure(!has(&[4, 5], ri, 9, 0), "[4,5] n=9 t=0")?;
    for t in 1..15 {
        ensure(has(&[1, 7, 7], ri, 15, t), format!("[1,7,7] n=15 t={}", t))?;
        ensure(!has(&[2, 2, 3, 8], ri, 15, t), format!("[2,2,3,8] n=15 t={}", t))?;
    }
    // the n = 12 pair at n = 8 scale, against the census
    for t in (0..8).step_by(2) {
        let seen = census(ri, m(8), t, &options()).map_err(|e| e.to_string())?.structures();
        ensure(seen.contains(&cs(&[2, 2, 4])), format!("census n=8 t={} lacks [2,2,4]", t))?;
        ensure(!seen.contains(&cs(&[4, 4])), format!("census n=8 t={} has [4,4]", t))?;
        ensure(has(&[2, 2, 4], ri, 8, t) && !has(&[4, 4], ri, 8, t), "n=8 catalog")?;
    }
    Ok("all memberships as stated".into())
}

fn ac5() -> Outcome {
    let mut structures = 0;
    for n in 1..=8usize {
        let want_odd = matches!(n % 4, 0 | 3);
        for t in (0..n).filter(|&t| prolifera::catalog::transposition_gcd(n, t) == 1) {
            let r = census(TransformKind::R, m(n), t, &options()).map_err(|e| e.to_string())?;
            for s in r.structures() {
                ensure(
                    2 * s.cycle_count() <= n + 2,
                    format!("condition 1: n={} t={} {}", n, t, s),
                )?;
                ensure(
                    (s.even_cycle_count() % 2 == 1) == want_odd,
                    format!("condition 2: n={} t={} {}", n, t, s),
                )?;
                structures += 1;
            }
        }
    }
    Ok(format!("{} observed structures, zero violations", structures))
}

fn ac6() -> Outcome {
    let mut pairs = 0;
    for n in 1..=8usize {
        let results: Vec<CensusResult> = (0..n)
            .map(|t| census(TransformKind::R, m(n), t, &options()).unwrap())
            .collect();
        for a in 0..n {
            for b in a + 1..n {
                let g = prolifera::catalog::transposition_gcd;
                if g(n, a) != g(n, b) {
                    continue;
                }
                let (x, y) = (&results[a], &results[b]);
                ensure(
                    x.order_counts == y.order_counts && x.structure_counts == y.structure_counts,
                    format!("n={} t={} vs t={}", n, a, b),
                )?;
                pairs += 1;
            }
        }
    }
    Ok(format!("{} transposition pairs with identical histograms", pairs))
}

fn ac7() -> Outcome {
    let mut cases = 0;
    for n in (2..=8).step_by(2) {
        let r = census(TransformKind::R, m(n), n / 2, &options()).map_err(|e| e.to_string())?;
        for t in (1..n).step_by(2) {
            let ri = census(TransformKind::RI, m(n), t, &options()).map_err(|e| e.to_string())?;
            ensure(
                r.structure_counts == ri.structure_counts && r.order_counts == ri.order_counts,
                format!("n={} t={}", n, t),
            )?;
            cases += 1;
        }
    }
    Ok(format!("{} (n, odd t) cases identical", cases))
}

fn random_op(rng: &mut StdRng, n: usize) -> EquivalenceOp {
    let mut a = || rng.gen_range(0..n);
    match a() % 4 {
        0 => EquivalenceOp::SwapPositionPairs(a(), a()),
        1 => EquivalenceOp::SwapWithinPositionPair(a()),
        2 => EquivalenceOp::SwapInversePairs(a(), a()),
        _ => EquivalenceOp::SwapWithinInversePair(a()),
    }
}

fn ac8() -> Outcome {
    let mut rng = StdRng::seed_from_u64(AC8_SEED);
    let mut valid = 0;
    let mut attempts = 0;
    let mut rotations = 0;
    while valid < AC8_MIN_CASES {
        attempts += 1;
        ensure(attempts < 50 * AC8_MIN_CASES, "too few valid operations drawn")?;
        let n = rng.gen_range(2..=7);
        let kind = if rng.gen_bool(0.5) { TransformKind::R } else { TransformKind::RI };
        let t = rng.gen_range(0..n);
        let sp = spec(kind, t, n);
        let mut notes: Vec<usize> = (0..n).collect();
        notes.shuffle(&mut rng);
        let s = series(&notes);
        let before = raw_structure(&s, sp);
        let op = random_op(&mut rng, n);
        if let Ok(out) = apply_op(op, &s, sp) {
            ensure(raw_structure(&out, sp) == before, format!("{:?} on {} ({})", op, s, sp))?;
            let back = apply_op(op, &out, sp).map_err(|e| e.to_string())?;
            ensure(back == s, format!("{:?} is not an involution on {}", op, s))?;
            valid += 1;
        }
        // the retrograde-only rotation preserves structure too
        if kind == TransformKind::R {
            let op = EquivalenceOp::RotateTranspositionCycle(rng.gen_range(0..n));
            let out = apply_op(op, &s, sp).map_err(|e| e.to_string())?;
            ensure(raw_structure(&out, sp) == before, format!("{:?} on {}", op, s))?;
            rotations += 1;
        }
    }
    Ok(format!(
        "{} valid ops (of {} draws) preserve structure and are involutions; {} rotations preserve structure",
        valid, attempts, rotations
    ))
}

fn ac9() -> Outcome {
    let a = series(&[0, 1, 2, 3, 5, 4, 7, 6]);
    let b = series(&[0, 1, 2, 3, 5, 7, 4, 6]);
    let sp = spec(TransformKind::R, 1, 8);
    let eight = cs(&[8]);
    ensure(raw_structure(&a, sp) == eight && raw_structure(&b, sp) == eight, "not both [8]")?;
    ensure(!are_equivalent(&a, &b, sp).map_err(|e| e.to_string())?, "found equivalent")?;
    for n in 1..=6 {
        for t in 0..n {
            let classes = enumerate_classes(TransformKind::RI, m(n), t, &options())
                .map_err(|e| e.to_string())?;
            let size = catalog_ri(m(n), t).unwrap().len();
            ensure(
                classes.len() == size,
                format!("RI n={} t={}: {} classes, {} structures", n, t, classes.len(), size),
            )?;
        }
    }
    Ok("counterexample inequivalent; RI classes = structures for n <= 6".into())
}

fn ac10() -> Outcome {
    let mut witnesses = 0;
    let mut check = |kind: TransformKind, n: usize, t: usize| -> Result<(), String> {
        for e in catalog(kind, m(n), t).map_err(|e| e.to_string())? {
            let s = realize(&e.structure, kind, m(n), t).map_err(|e| e.to_string())?;
            let p = pp_from_transform(&s, spec(kind, t, n)).map_err(|e| e.to_string())?;
            let got = cycle_decomposition(&p).structure();
            ensure(
                got == e.structure,
                format!("{} n={} t={}: wanted {}, got {}", kind, n, t, e.structure, got),
            )?;
            witnesses += 1;
        }
        Ok(())
    };
    for n in 1..=12 {
        for t in 0..n {
            check(TransformKind::RI, n, t)?;
        }
    }
    for n in 1..=8 {
        for t in 0..n {
            check(TransformKind::R, n, t)?;
        }
    }
    Ok(format!("{} of {} witnesses verified", witnesses, witnesses))
}

fn read_tree(root: &Path) -> Vec<(String, Vec<u8>)> {
    let mut out = Vec::new();
    let mut stack = vec![root.to_path_buf()];
    while let Some(dir) = stack.pop() {
        for entry in std::fs::read_dir(&dir).unwrap() {
            let path = entry.unwrap().path();
            if path.is_dir() {
                stack.push(path);
            } else {
                let rel = path.strip_prefix(root).unwrap().to_string_lossy().into_owned();
                out.push((rel, std::fs::read(&path).unwrap()));
            }
        }
    }
    out.sort();
    out
}

type FileTree = Vec<(String, Vec<u8>)>;

fn ac11() -> Outcome {
    let run = |threads: Option<usize>| -> Result<(tempfile::TempDir, FileTree), String> {
        let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
        let opts = CensusOptions {
            threads,
            ..CensusOptions::default()
        };
        for n in 1..=6 {
            for t in 0..n {
                let r = census(TransformKind::RI, m(n), t, &opts).map_err(|e| e.to_string())?;
                write_census_files(&r, dir.path(), &opts).map_err(|e| e.to_string())?;
            }
        }
        let tree = read_tree(dir.path());
        Ok((dir, tree))
    };
    let (_d1, first) = run(Some(1))?;
    let (_d2, second) = run(Some(1))?;
    let (_d3, parallel) = run(Some(4))?;
    ensure(first.len() == 3 * 21, format!("{} files", first.len()))?;
    ensure(first == second, "two single-thread runs differ")?;
    ensure(first == parallel, "1-thread and 4-thread runs differ")?;
    Ok(format!("{} files byte-identical across runs and thread counts", first.len()))
}

fn main() -> ExitCode {
    type Criterion = (&'static str, &'static str, fn() -> Outcome);
    let criteria: [Criterion; 11] = [
        ("AC1", "Webern Op.21 to Op.28 PP", ac1),
        ("AC2", "seven-note RI proliferation", ac2),
        ("AC3", "catalog-oracle equivalence, n <= 8", ac3),
        ("AC4", "RI membership spot checks", ac4),
        ("AC5", "R coprime conditions 1 and 2", ac5),
        ("AC6", "R gcd invariance of census histograms", ac6),
        ("AC7", "R(n, n/2) equals RI(n, odd t)", ac7),
        ("AC8", "equivalence-op invariance", ac8),
        ("AC9", "R counterexample and RI class counts", ac9),
        ("AC10", "realize soundness", ac10),
        ("AC11", "census file goldens", ac11),
    ];
    let mut failed = 0;
    for (id, title, f) in criteria {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(f)
            .unwrap_or_else(|_| Err("panicked".to_string()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("{} PASS {}: {} ({:.2}s)", id, title, detail, secs),
            Err(detail) => {
                failed += 1;
                println!("{} FAIL {}: {} ({:.2}s)", id, title, detail, secs);
            }
        }
    }
    if failed == 0 {
        println!("acceptance: 11/11 passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {} of 11 failed", failed);
        ExitCode::FAILURE
    }
}

//! Library half of the `prolifera` binary: argument types, series
//! specifiers and the subcommands, each writing to caller-supplied streams.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use prolifera::census::{compare, WARN_ABOVE_N};
use prolifera::classify::{op_path, PATH_MAX_N};
use prolifera::{
    catalog, catalog_r_general, census, class_table, cycle_decomposition, orbit, order,
    pp_from_pair, pp_from_transform, realize, write_census_files,
    CatalogEntry, CensusOptions, ClassTable, CountConvention, CycleStructure, Error, GtShape,
    Modulus, Series, TransformKind, TransformSpec,
};
use serde::Serialize;

pub mod notes;

use notes::{parse_list, parse_series, render_cycles, render_series};

/// Environment variable overriding the census ceiling.
pub const MAX_N_VAR: &str = "PROLIFERA_MAX_N";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error(transparent)]
    Core(#[from] Error),
    #[error("census disagrees with the catalog")]
    Mismatch,
    #[error("writing output: {0}")]
    Output(#[from] std::io::Error),
}

impl CliError {
    /// 2 for bad input, 3 for an unachievable structure, 4 for the census
    /// ceiling, 1 otherwise.
    pub fn exit_code(&self) -> u8 {
        if self.is_broken_pipe() {
            return 0;
        }
        match self {
            CliError::Parse(_) => 2,
            CliError::Core(e) => match e {
                Error::Unachievable { .. } => 3,
                Error::CeilingExceeded { .. } => 4,
                Error::Io { .. } | Error::ThreadPool(_) => 1,
                _ => 2,
            },
            CliError::Mismatch | CliError::Output(_) => 1,
        }
    }
}

impl CliError {
    /// The reader of our output went away, e.g. `prolifera ... | head`.
    pub fn is_broken_pipe(&self) -> bool {
        matches!(self, CliError::Output(e) if e.kind() == std::io::ErrorKind::BrokenPipe)
    }
}

type Result<T> = std::result::Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(name = "prolifera", version, about = "Proliferating series: permutations, catalogs, census and classification")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Proliferate a series and print its orbit, order and cycle structure.
    Proliferate(ProliferateArgs),
    /// List the cycle structures a transformation can produce.
    Catalog(CatalogArgs),
    /// Enumerate every series, write the census files and check the catalog.
    Census(CensusArgs),
    /// Build a series whose proliferating permutation has a given structure.
    Realize(RealizeArgs),
    /// Structure and class representative of one or more series.
    Classify(ClassifyArgs),
    /// Representatives of every equivalence class.
    Classes(ClassesArgs),
}

#[derive(Debug, Args)]
pub struct NameArgs {
    /// Note at pitch class 0, as a name or a number 0-11. Note-name input is
    /// otherwise numbered from its first note; numeric input from C.
    #[arg(long, value_parser = parse_tonic)]
    pub tonic: Option<usize>,
    /// Print note names instead of numbers (12 pitch classes only).
    #[arg(long)]
    pub names: bool,
}

#[derive(Debug, Args)]
pub struct ProliferateArgs {
    /// Integers (`0,3,4,2,1,6,5`) or 12 note names (`"A F# G ..."`).
    #[arg(long)]
    pub series: String,
    /// Second series; its PP against the first replaces `--kind`/`--t`.
    #[arg(long, conflicts_with_all = ["kind", "t"])]
    pub second: Option<String>,
    #[arg(long, value_parser = parse_kind, required_unless_present = "second")]
    pub kind: Option<TransformKind>,
    #[arg(long, required_unless_present = "second")]
    pub t: Option<usize>,
    #[command(flatten)]
    pub names: NameArgs,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct CatalogArgs {
    #[arg(long, value_parser = parse_kind, required_unless_present = "gt")]
    pub kind: Option<TransformKind>,
    #[arg(long, required_unless_present = "gt")]
    pub n: Option<usize>,
    #[arg(long, required_unless_present = "gt")]
    pub t: Option<usize>,
    /// Retrograde with an arbitrary generalized transposition, given by its
    /// cycle lengths (`4,4,2`).
    #[arg(long, conflicts_with_all = ["kind", "t"])]
    pub gt: Option<String>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct CensusArgs {
    #[arg(long, value_parser = parse_kind)]
    pub kind: TransformKind,
    #[arg(long)]
    pub n: usize,
    /// One transposition; every `t` in `0..n` when omitted.
    #[arg(long)]
    pub t: Option<usize>,
    /// Root of the census file tree.
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
    #[arg(long)]
    pub threads: Option<usize>,
    /// Count series starting with 0 only, without the factor n for
    /// transpositions.
    #[arg(long)]
    pub raw_counts: bool,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct RealizeArgs {
    /// Cycle lengths, e.g. `2,2,8`.
    #[arg(long)]
    pub structure: String,
    #[arg(long, value_parser = parse_kind)]
    pub kind: TransformKind,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub t: usize,
    #[command(flatten)]
    pub names: NameArgs,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    /// Repeat to classify several series and compare them.
    #[arg(long, required = true)]
    pub series: Vec<String>,
    #[arg(long, value_parser = parse_kind)]
    pub kind: TransformKind,
    #[arg(long)]
    pub t: usize,
    #[command(flatten)]
    pub names: NameArgs,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct ClassesArgs {
    #[arg(long, value_parser = parse_kind)]
    pub kind: TransformKind,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub t: usize,
    /// Also show retrograde-inversion classes of order 1 and 2.
    #[arg(long)]
    pub all: bool,
    #[arg(long)]
    pub threads: Option<usize>,
    #[command(flatten)]
    pub names: NameArgs,
    #[arg(long)]
    pub json: bool,
}

fn parse_kind(s: &str) -> std::result::Result<TransformKind, String> {
    s.parse()
        .map_err(|_| format!("'{}' is not one of P, I, R, RI", s))
}

fn parse_tonic(s: &str) -> std::result::Result<usize, String> {
    if let Ok(v) = s.parse::<usize>() {
        return if v < 12 {
            Ok(v)
        } else {
            Err(format!("tonic {} is not in 0..12", v))
        };
    }
    notes::note_class(s).ok_or_else(|| format!("'{}' is not a note name", s))
}

fn modulus(n: usize) -> Result<Modulus> {
    Ok(Modulus::new(n)?)
}

fn structure_arg(text: &str) -> Result<CycleStructure> {
    Ok(CycleStructure::new(parse_list(text, "structure")?))
}

/// Tonic used for rendering: names input keeps its own reference, `--names`
/// falls back to C.
fn display_tonic(args: &NameArgs, parsed: Option<usize>, n: usize) -> Result<Option<usize>> {
    let tonic = parsed.or(if args.names { Some(args.tonic.unwrap_or(0)) } else { None });
    if tonic.is_some() && n != 12 {
        return Err(CliError::Parse(format!(
            "note names need 12 pitch classes, not {}",
            n
        )));
    }
    Ok(tonic)
}

fn census_options(threads: Option<usize>, counts: CountConvention) -> Result<CensusOptions> {
    let mut opts = CensusOptions {
        threads,
        counts,
        ..CensusOptions::default()
    };
    if let Ok(v) = std::env::var(MAX_N_VAR) {
        opts.max_n = v.trim().parse().map_err(|_| {
            CliError::Parse(format!("{}='{}' is not a non-negative integer", MAX_N_VAR, v))
        })?;
    }
    Ok(opts)
}

fn json_line<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value).expect("output types serialize");
    writeln!(out, "{}", text)?;
    Ok(())
}

/// Runs one command. Results go to `out`, warnings to `err`.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    match cli.command {
        Command::Proliferate(a) => proliferate(&a, out),
        Command::Catalog(a) => catalog_cmd(&a, out),
        Command::Census(a) => census_cmd(&a, out, err),
        Command::Realize(a) => realize_cmd(&a, out),
        Command::Classify(a) => classify_cmd(&a, out),
        Command::Classes(a) => classes_cmd(&a, out),
    }
}

#[derive(Serialize)]
struct ProliferateJson {
    kind: Option<TransformKind>,
    t: Option<usize>,
    n: usize,
    tonic: Option<usize>,
    first: Series,
    second: Series,
    orbit: Vec<Series>,
    cycles: Vec<Vec<usize>>,
    order: u64,
    structure: CycleStructure,
}

fn proliferate(a: &ProliferateArgs, out: &mut dyn Write) -> Result<()> {
    let first = parse_series(&a.series, a.names.tonic)?;
    let (second, kind, t) = match &a.second {
        Some(text) => {
            let reference = first.tonic.or(a.names.tonic);
            let s = parse_series(text, reference)?;
            (s.series, None, None)
        }
        None => {
            let kind = a.kind.expect("clap requires kind");
            let t = a.t.expect("clap requires t");
            let spec = TransformSpec::new(kind, t, first.series.modulus())?;
            let b = prolifera::apply_transform(spec, &first.series)?;
            (b, Some(kind), Some(t))
        }
    };
    let n = first.series.len();
    let pp = match (kind, t) {
        (Some(kind), Some(t)) => {
            pp_from_transform(&first.series, TransformSpec::new(kind, t, first.series.modulus())?)?
        }
        _ => pp_from_pair(&first.series, &second)?,
    };
    let dec = cycle_decomposition(&pp);
    let members = orbit(&first.series, &pp)?;
    let tonic = display_tonic(&a.names, first.tonic, n)?;
    if a.json {
        return json_line(
            out,
            &ProliferateJson {
                kind,
                t,
                n,
                tonic,
                first: first.series.clone(),
                second,
                orbit: members,
                cycles: dec.cycles().to_vec(),
                order: order(&pp),
                structure: dec.structure(),
            },
        );
    }
    match (kind, t) {
        (Some(kind), Some(t)) => writeln!(
            out,
            "A: {}\nB: {}  ({} t={})",
            render_series(&first.series, tonic),
            render_series(&second, tonic),
            kind,
            t
        )?,
        _ => writeln!(
            out,
            "A: {}\nB: {}",
            render_series(&first.series, tonic),
            render_series(&second, tonic)
        )?,
    }
    writeln!(out, "Orbit:")?;
    for s in &members {
        writeln!(out, "  {}", render_series(s, tonic))?;
    }
    writeln!(out, "Order: {}", order(&pp))?;
    writeln!(out, "Structure: {}", dec.structure())?;
    writeln!(out, "Cycles: {}", render_cycles(dec.cycles(), tonic))?;
    Ok(())
}

fn catalog_cmd(a: &CatalogArgs, out: &mut dyn Write) -> Result<()> {
    let (entries, label) = match &a.gt {
        Some(text) => {
            let shape = GtShape::new(parse_list(text, "gt")?);
            let n = a.n.unwrap_or(shape.size());
            let entries = catalog_r_general(modulus(n)?, &shape)?;
            (entries, format!("R n={} gt={:?}", n, shape.lengths()))
        }
        None => {
            let kind = a.kind.expect("clap requires kind");
            let n = a.n.expect("clap requires n");
            let t = a.t.expect("clap requires t");
            (catalog(kind, modulus(n)?, t)?, format!("{} n={} t={}", kind, n, t))
        }
    };
    if a.json {
        return json_line(out, &entries);
    }
    write_catalog(out, &label, &entries)
}

fn write_catalog(out: &mut dyn Write, label: &str, entries: &[CatalogEntry]) -> Result<()> {
    writeln!(out, "{}: {} structures", label, entries.len())?;
    writeln!(out, "{:>8}  structure", "order")?;
    for e in entries {
        writeln!(out, "{:>8}  {}", e.order, e.structure)?;
    }
    Ok(())
}

#[derive(Serialize)]
struct CountJson {
    order: u64,
    count: u64,
}

#[derive(Serialize)]
struct StructureCountJson {
    order: u64,
    structure: CycleStructure,
    count: u64,
}

#[derive(Serialize)]
struct CensusRunJson {
    t: usize,
    total_series: u64,
    orders: Vec<CountJson>,
    structures: Vec<StructureCountJson>,
    files: Vec<PathBuf>,
    missing: Vec<CycleStructure>,
    extra: Vec<CycleStructure>,
    transposition: Option<prolifera::census::TranspositionCheck>,
}

#[derive(Serialize)]
struct CensusJson {
    kind: TransformKind,
    n: usize,
    counts: CountConvention,
    runs: Vec<CensusRunJson>,
}

fn census_cmd(a: &CensusArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    let counts = if a.raw_counts {
        CountConvention::Canonical
    } else {
        CountConvention::Transpositions
    };
    let opts = census_options(a.threads, counts)?;
    let n = modulus(a.n)?;
    let ts: Vec<usize> = match a.t {
        Some(t) => vec![n.check_transposition(t)?],
        None => (0..a.n).collect(),
    };
    if a.n > WARN_ABOVE_N && a.n <= opts.max_n {
        writeln!(
            err,
            "warning: a census at n={} enumerates {} series per transposition",
            a.n,
            (1..a.n as u64).product::<u64>()
        )?;
    }
    let mut runs = Vec::new();
    let mut clean = true;
    let mut written = None;
    for t in ts {
        let result = census(a.kind, n, t, &opts)?;
        let paths = write_census_files(&result, &a.out, &opts)?;
        let report = compare(&result, &opts)?;
        clean &= report.is_clean();
        if !a.json {
            let verdict = if report.is_clean() {
                "catalog matches".to_string()
            } else {
                format!(
                    "catalog MISMATCH, missing {:?}, extra {:?}",
                    report.missing.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
                    report.extra.iter().map(|s| s.to_string()).collect::<Vec<_>>()
                )
            };
            writeln!(
                out,
                "{} n={} t={}: {} series, {} structures, {} orders; {}",
                a.kind,
                a.n,
                t,
                result.total_series,
                result.structure_counts.len(),
                result.order_counts.len(),
                verdict
            )?;
            if let Some(c) = report.transposition {
                writeln!(
                    out,
                    "  transposed copies keep the structure: about first note {}, fixed axis {}",
                    yes_no(c.about_first_note),
                    yes_no(c.fixed_axis)
                )?;
            }
        }
        if written.is_none() {
            written = paths.complete_list.parent().and_then(|p| p.parent()).map(|p| p.to_path_buf());
        }
        runs.push(CensusRunJson {
            t,
            total_series: result.total_series,
            orders: result
                .order_counts
                .iter()
                .map(|(&order, &count)| CountJson { order, count })
                .collect(),
            structures: result
                .structure_counts
                .iter()
                .map(|((order, s), &count)| StructureCountJson {
                    order: *order,
                    structure: s.clone(),
                    count,
                })
                .collect(),
            files: paths.all().iter().map(|p| p.to_path_buf()).collect(),
            missing: report.missing,
            extra: report.extra,
            transposition: report.transposition,
        });
    }
    if let (false, Some(dir)) = (a.json, &written) {
        writeln!(out, "Files under {}", dir.display())?;
    }
    if a.json {
        json_line(
            out,
            &CensusJson {
                kind: a.kind,
                n: a.n,
                counts,
                runs,
            },
        )?;
    }
    if clean {
        Ok(())
    } else {
        Err(CliError::Mismatch)
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

#[derive(Serialize)]
struct RealizeJson {
    kind: TransformKind,
    n: usize,
    t: usize,
    requested: CycleStructure,
    series: Series,
    structure: CycleStructure,
    order: u64,
}

fn realize_cmd(a: &RealizeArgs, out: &mut dyn Write) -> Result<()> {
    let structure = structure_arg(&a.structure)?;
    let n = modulus(a.n)?;
    let tonic = display_tonic(&a.names, None, a.n)?;
    let s = realize(&structure, a.kind, n, a.t)?;
    let pp = pp_from_transform(&s, TransformSpec::new(a.kind, a.t, n)?)?;
    let found = cycle_decomposition(&pp).structure();
    if a.json {
        return json_line(
            out,
            &RealizeJson {
                kind: a.kind,
                n: a.n,
                t: a.t,
                requested: structure,
                series: s,
                order: found.order(),
                structure: found,
            },
        );
    }
    writeln!(out, "Series: {}", render_series(&s, tonic))?;
    writeln!(
        out,
        "Verified: {} t={} gives structure {}, order {}",
        a.kind,
        a.t,
        found,
        found.order()
    )?;
    Ok(())
}

#[derive(Serialize)]
struct ClassifyJson {
    series: Series,
    structure: CycleStructure,
    representative: Series,
    exact: bool,
    op_path: Option<Vec<String>>,
}

#[derive(Serialize)]
struct ClassifyReport {
    kind: TransformKind,
    t: usize,
    results: Vec<ClassifyJson>,
    equivalent_to_first: Vec<bool>,
}

fn classify_cmd(a: &ClassifyArgs, out: &mut dyn Write) -> Result<()> {
    let mut results = Vec::new();
    let mut reference = a.names.tonic;
    let mut tonic = None;
    for text in &a.series {
        let parsed = parse_series(text, reference)?;
        if reference.is_none() {
            reference = parsed.tonic;
        }
        let s = parsed.series;
        if let Some(first) = results.first() {
            let first: &ClassifyJson = first;
            if first.series.len() != s.len() {
                return Err(CliError::Parse(format!(
                    "series have {} and {} notes",
                    first.series.len(),
                    s.len()
                )));
            }
        }
        tonic = display_tonic(&a.names, reference, s.len())?;
        let spec = TransformSpec::new(a.kind, a.t, s.modulus())?;
        let canon = prolifera::canonical_form(&s, spec)?;
        let representative = Series::new(canon.representative, s.modulus())?;
        let structure = cycle_decomposition(&prolifera::pp_fixed_axis(&s, spec)).structure();
        let path = if s.len() <= PATH_MAX_N {
            op_path(&s, &representative, spec)?.map(|p| p.iter().map(|op| op.to_string()).collect())
        } else {
            None
        };
        results.push(ClassifyJson {
            series: s,
            structure,
            representative,
            exact: canon.exact,
            op_path: path,
        });
    }
    let equivalent_to_first: Vec<bool> = results
        .iter()
        .map(|r| r.representative == results[0].representative && r.exact)
        .collect();
    if a.json {
        return json_line(
            out,
            &ClassifyReport {
                kind: a.kind,
                t: a.t,
                results,
                equivalent_to_first,
            },
        );
    }
    for (i, r) in results.iter().enumerate() {
        if i > 0 {
            writeln!(out)?;
        }
        writeln!(out, "Series: {}", render_series(&r.series, tonic))?;
        writeln!(out, "Structure: {}", r.structure)?;
        writeln!(
            out,
            "Representative: {}{}",
            render_series(&r.representative, tonic),
            if r.exact { "" } else { "  (greedy, not guaranteed canonical)" }
        )?;
        match &r.op_path {
            Some(p) if p.is_empty() => writeln!(out, "Op-distance: 0")?,
            Some(p) => writeln!(out, "Op-distance: {} ({})", p.len(), p.join(", "))?,
            None => writeln!(out, "Op-distance: not computed above n={}", PATH_MAX_N)?,
        }
    }
    if results.len() > 1 {
        writeln!(out)?;
        for (i, r) in results.iter().enumerate().skip(1) {
            let same = equivalent_to_first[i];
            let verdict = if same {
                "equivalent"
            } else if r.exact {
                "not equivalent"
            } else {
                "not shown equivalent"
            };
            writeln!(out, "Series 1 and {}: {}", i + 1, verdict)?;
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct ClassJson {
    id: usize,
    order: u64,
    structure: CycleStructure,
    representative: Series,
    size: Option<u64>,
}

#[derive(Serialize)]
struct ClassesJson {
    kind: TransformKind,
    n: usize,
    t: usize,
    classes: Vec<ClassJson>,
}

fn classes_cmd(a: &ClassesArgs, out: &mut dyn Write) -> Result<()> {
    let n = modulus(a.n)?;
    let tonic = display_tonic(&a.names, None, a.n)?;
    let opts = census_options(a.threads, CountConvention::Canonical)?;
    let table = class_table(a.kind, n, a.t, &opts)?;
    let classes: Vec<ClassJson> = match table {
        ClassTable::ByStructure(map) => map
            .into_iter()
            .enumerate()
            .map(|(id, (structure, representative))| ClassJson {
                id,
                order: structure.order(),
                structure,
                representative,
                size: None,
            })
            .collect(),
        ClassTable::ByClass(list) => list
            .into_iter()
            .map(|c| ClassJson {
                id: c.id,
                order: c.structure.order(),
                structure: c.structure,
                representative: c.representative,
                size: Some(c.size),
            })
            .collect(),
    };
    let hide_short = a.kind == TransformKind::RI && !a.all;
    let shown: Vec<ClassJson> = classes
        .into_iter()
        .filter(|c| !hide_short || c.order > 2)
        .collect();
    if a.json {
        return json_line(
            out,
            &ClassesJson {
                kind: a.kind,
                n: a.n,
                t: a.t,
                classes: shown,
            },
        );
    }
    write!(out, "{} n={} t={}: {} classes", a.kind, a.n, a.t, shown.len())?;
    if hide_short {
        write!(out, " of order 3 or more (--all for every class)")?;
    }
    writeln!(out)?;
    let with_size = a.kind == TransformKind::R;
    if with_size {
        writeln!(out, "{:>5}  {:>8}  {:>6}  {:<24}  representative", "class", "size", "order", "structure")?;
    } else {
        writeln!(out, "{:>6}  {:<24}  representative", "order", "structure")?;
    }
    for c in &shown {
        if with_size {
            writeln!(
                out,
                "{:>5}  {:>8}  {:>6}  {:<24}  {}",
                c.id + 1,
                c.size.unwrap_or(0),
                c.order,
                c.structure.to_string(),
                render_series(&c.representative, tonic)
            )?;
        } else {
            writeln!(
                out,
                "{:>6}  {:<24}  {}",
                c.order,
                c.structure.to_string(),
                render_series(&c.representative, tonic)
            )?;
        }
    }
    Ok(())
}

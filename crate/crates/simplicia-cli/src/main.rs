//! Command-line interface over the simplicia library.
//!
//! Reads and writes line-delimited JSON datasets (one record per line); `-`
//! or an omitted path means stdin/stdout. Exit codes: 0 success, 1 validation
//! or processing failure, 2 usage error.

use std::collections::BTreeMap;
use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use simplicia::complex::{SeedSurface, SimplicialComplex};
use simplicia::pipeline::{
    self, derive_record_seed, label_2d, BalanceConfig, DatasetRecord, EcMode, EvalVariant,
    Provenance, ProvenanceKind, Split,
};
use simplicia::represent;
use simplicia::subdivision::SubdivisionScheme;
use simplicia::surgery;
use simplicia::{isomorphism, moves};

#[derive(Parser)]
#[command(
    name = "simplicia",
    version,
    about = "Construct, verify, augment, deduplicate, classify, refine, and export combinatorial 2- and 3-manifold datasets."
)]
struct Cli {
    /// Master seed; every stochastic step derives its own substream from it.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Worker threads for record-level parallelism (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Vertex cap for generated triangulations (default 24 for 2D, 40 for 3D).
    #[arg(long, global = true)]
    max_vertices: Option<usize>,

    /// Input dataset path (JSONL); '-' or omitted reads stdin.
    #[arg(long, global = true)]
    input: Option<PathBuf>,

    /// Output path (JSONL); '-' or omitted writes stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Skip manifold/label verification when reading records (speed opt-out).
    #[arg(long, global = true)]
    no_validate: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify that every record is a combinatorial manifold with a correct
    /// label; exits 1 listing offenders otherwise.
    Validate,
    /// Emit per-record invariants: f-vector, Euler characteristic,
    /// orientability, GF(2) Betti numbers.
    Invariants,
    /// Emit the surface class of each 2D record.
    Classify,
    /// Apply a random Pachner walk to every record.
    PachnerWalk(WalkArgs),
    /// Attach connected-sum summands (torus or projective plane) to every
    /// record.
    Consum(ConsumArgs),
    /// Apply a subdivision scheme to every record.
    Subdivide(SubdivideArgs),
    /// Three-stage deduplication: f-vector, WL digest, exact isomorphism.
    Dedup(DedupArgs),
    /// Grow every class to its target size by alternating generation and
    /// deduplication.
    Balance(BalanceArgs),
    /// Build the subdivision evaluation variants, one JSONL file per variant.
    Variants(VariantArgs),
    /// Tag records with train/val/test splits.
    Split(SplitArgs),
    /// Train the Euler-characteristic heuristic and report balanced accuracy.
    EcBaseline(EcArgs),
    /// Export a graph representation with node features, one JSON line per
    /// record.
    ExportGraph(ExportArgs),
    /// Dataset summary: class histogram and size statistics.
    Stats,
}

#[derive(Args)]
struct WalkArgs {
    /// Moves per record; default is 2x the record's facet count.
    #[arg(long)]
    steps: Option<usize>,
}

#[derive(Args)]
struct ConsumArgs {
    /// Summand glued onto each record.
    #[arg(long, value_enum)]
    attach: Summand,
    /// How many copies to attach.
    #[arg(long, default_value_t = 1)]
    repeat: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum Summand {
    T2,
    Rp2,
}

#[derive(Args)]
struct SubdivideArgs {
    #[arg(long, value_enum)]
    scheme: SchemeName,
    /// Target vertex count (graded scheme).
    #[arg(long)]
    n: Option<usize>,
    /// Facet proportion in (0,1] (top scheme).
    #[arg(long)]
    p: Option<f64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum SchemeName {
    Stellar,
    Graded,
    Top,
    Barycentric,
}

#[derive(Args)]
struct DedupArgs {
    /// Digest-collision subset size up to which exact isomorphism runs.
    #[arg(long, default_value_t = 5)]
    max_group: usize,
    /// Where to write the machine-readable per-stage report (JSON).
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Args)]
struct BalanceArgs {
    /// Records per class (sets both the minimum and the trim limit).
    #[arg(long)]
    target: Option<usize>,
    /// Minimum records per class (overrides --target).
    #[arg(long)]
    target_min: Option<usize>,
    /// Maximum records per class (overrides --target).
    #[arg(long)]
    target_max: Option<usize>,
    /// Generation/dedup alternation rounds.
    #[arg(long, default_value_t = 5)]
    rounds: usize,
    /// Digest-collision subset cap for the dedup stage.
    #[arg(long, default_value_t = 5)]
    max_group: usize,
    /// Moves per generated sample; default 2x the parent's facet count.
    #[arg(long)]
    moves_per_sample: Option<usize>,
    /// Extra surface classes to create via connected sums, e.g. "T2#2,RP2#3".
    #[arg(long, value_delimiter = ',')]
    classes: Vec<String>,
    /// Where to write the balance report (JSON).
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Args)]
struct VariantArgs {
    /// Variants to build: graded:N, top:P, barycentric.
    #[arg(
        long,
        value_delimiter = ',',
        default_values_t = [
            "graded:16".to_string(), "graded:17".to_string(), "graded:18".to_string(),
            "graded:19".to_string(), "graded:20".to_string(),
            "top:0.75".to_string(), "top:1".to_string(), "barycentric".to_string(),
        ]
    )]
    which: Vec<String>,
    /// Replace the graded targets with max-source-vertices + 1..=5.
    #[arg(long)]
    auto_grid: bool,
    /// Samples per class and variant.
    #[arg(long, default_value_t = 100)]
    per_class: usize,
    /// Directory receiving one <variant>.jsonl per variant.
    #[arg(long)]
    output_dir: PathBuf,
}

#[derive(Args)]
struct SplitArgs {
    /// Train/val/test fractions, summing to 1.
    #[arg(long, value_delimiter = ',', default_values_t = [0.6, 0.2, 0.2])]
    ratios: Vec<f64>,
    /// Split each class separately.
    #[arg(long)]
    stratify: bool,
}

#[derive(Args)]
struct EcArgs {
    /// Evaluation dataset; defaults to the test split of --input (training on
    /// its train split).
    #[arg(long)]
    eval: Option<PathBuf>,
    /// Invariants the heuristic buckets on.
    #[arg(long, value_enum, default_value_t = EcModeArg::ChiOrient)]
    ec_mode: EcModeArg,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum EcModeArg {
    Chi,
    #[value(name = "chi+orient")]
    ChiOrient,
}

#[derive(Args)]
struct ExportArgs {
    #[arg(long, value_enum)]
    repr: ReprName,
    #[arg(long, value_enum)]
    encode: EncodeName,
    /// Keep the top-down direction of Hasse edges.
    #[arg(long)]
    directed: bool,
    /// Width of the random encoding.
    #[arg(long, default_value_t = 8)]
    feature_dim: usize,
    /// Steps of the random-walk encoding.
    #[arg(long, default_value_t = 8)]
    rwpe_steps: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReprName {
    Skeleton,
    Dual,
    Hasse,
}

#[derive(Clone, Copy, ValueEnum)]
enum EncodeName {
    R,
    D,
    Rwpe,
    Mc,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: &Cli) -> Result<()> {
    match &cli.command {
        Command::Validate => cmd_validate(cli),
        Command::Invariants => cmd_invariants(cli),
        Command::Classify => cmd_classify(cli),
        Command::PachnerWalk(args) => cmd_walk(cli, args),
        Command::Consum(args) => cmd_consum(cli, args),
        Command::Subdivide(args) => cmd_subdivide(cli, args),
        Command::Dedup(args) => cmd_dedup(cli, args),
        Command::Balance(args) => cmd_balance(cli, args),
        Command::Variants(args) => cmd_variants(cli, args),
        Command::Split(args) => cmd_split(cli, args),
        Command::EcBaseline(args) => cmd_ec(cli, args),
        Command::ExportGraph(args) => cmd_export(cli, args),
        Command::Stats => cmd_stats(cli),
    }
}

fn read_input(cli: &Cli) -> Result<String> {
    match cli.input.as_deref() {
        None => read_stdin(),
        Some(p) if p == Path::new("-") => read_stdin(),
        Some(p) => fs::read_to_string(p).with_context(|| format!("reading {}", p.display())),
    }
}

fn read_stdin() -> Result<String> {
    let mut buf = String::new();
    std::io::stdin().read_to_string(&mut buf)?;
    Ok(buf)
}

fn load_records(cli: &Cli) -> Result<Vec<DatasetRecord>> {
    let text = read_input(cli)?;
    let records = if cli.no_validate {
        pipeline::parse_unvalidated(&text)?
    } else {
        pipeline::parse(&text)?
    };
    Ok(records)
}

fn write_output(cli: &Cli, content: &str) -> Result<()> {
    match cli.output.as_deref() {
        None => {
            std::io::stdout().write_all(content.as_bytes())?;
            Ok(())
        }
        Some(p) if p == Path::new("-") => {
            std::io::stdout().write_all(content.as_bytes())?;
            Ok(())
        }
        Some(p) => fs::write(p, content).with_context(|| format!("writing {}", p.display())),
    }
}

fn write_records(cli: &Cli, records: &[DatasetRecord]) -> Result<()> {
    write_output(cli, &pipeline::serialize(records))
}

fn default_cap(cli: &Cli, dimension: usize) -> usize {
    cli.max_vertices
        .unwrap_or(if dimension == 2 { 24 } else { 40 })
}

fn cmd_validate(cli: &Cli) -> Result<()> {
    let records = pipeline::parse_unvalidated(&read_input(cli)?)?;
    let mut failures = 0;
    for record in &records {
        if let Err(e) = record.validate() {
            failures += 1;
            eprintln!("{e}");
        }
    }
    if failures > 0 {
        bail!("{failures} of {} records failed validation", records.len());
    }
    println!("ok: {} records", records.len());
    Ok(())
}

fn cmd_invariants(cli: &Cli) -> Result<()> {
    let records = load_records(cli)?;
    let mut out = String::new();
    for record in &records {
        let complex = record.complex()?;
        let summary = complex.invariant_summary()?;
        let line = json!({
            "id": record.id,
            "label": record.label,
            "f_vector": summary.f_vector.counts(),
            "euler_characteristic": summary.euler_characteristic,
            "orientable": summary.orientable,
            "betti_gf2": summary.betti_gf2,
        });
        out.push_str(&line.to_string());
        out.push('\n');
    }
    write_output(cli, &out)
}

fn cmd_classify(cli: &Cli) -> Result<()> {
    let records = load_records(cli)?;
    let mut out = String::new();
    for record in &records {
        let class = record.complex()?.classify_surface()?;
        let line = json!({
            "id": record.id,
            "class": class.canonical_name,
            "orientable": class.orientable,
            "genus_or_crosscaps": class.genus_or_crosscaps,
        });
        out.push_str(&line.to_string());
        out.push('\n');
    }
    write_output(cli, &out)
}

fn relabel(record: &DatasetRecord, complex: &SimplicialComplex) -> Result<String> {
    if record.dimension == 2 {
        Ok(label_2d(complex)?)
    } else {
        Ok(record.label.clone())
    }
}

fn cmd_walk(cli: &Cli, args: &WalkArgs) -> Result<()> {
    let records = load_records(cli)?;
    let mut out = Vec::with_capacity(records.len());
    for record in &records {
        let complex = record.complex()?;
        let steps = args.steps.unwrap_or(2 * record.top_faces.len());
        let cap = default_cap(cli, record.dimension).max(complex.vertex_count());
        let walk_seed = derive_record_seed(cli.seed, &record.id, "walk");
        let walk = moves::random_pachner_walk(&complex, steps, cap, walk_seed)?;
        if walk.steps_taken < steps {
            eprintln!(
                "note: {} stalled after {} of {} steps",
                record.id, walk.steps_taken, steps
            );
        }
        let label = relabel(record, &walk.complex)?;
        out.push(DatasetRecord::from_complex(
            format!("{}:walk{}", record.id, walk_seed),
            &walk.complex,
            label,
            Provenance {
                kind: ProvenanceKind::Pachner,
                parent: Some(record.id.clone()),
                seed: Some(walk_seed),
            },
        ));
    }
    write_records(cli, &out)
}

fn cmd_consum(cli: &Cli, args: &ConsumArgs) -> Result<()> {
    let records = load_records(cli)?;
    let mut out = Vec::with_capacity(records.len());
    for record in &records {
        let seed = derive_record_seed(cli.seed, &record.id, "consum");
        let summand = match args.attach {
            Summand::T2 => SeedSurface::Torus,
            Summand::Rp2 => SeedSurface::ProjectivePlane,
        };
        let current = surgery::attach_summands(&record.complex()?, summand, args.repeat, seed)?;
        let label = label_2d(&current)?;
        let attach_name = match args.attach {
            Summand::T2 => "t2",
            Summand::Rp2 => "rp2",
        };
        out.push(DatasetRecord::from_complex(
            format!("{}:consum-{}x{}", record.id, attach_name, args.repeat),
            &current,
            label,
            Provenance {
                kind: ProvenanceKind::ConnectedSum,
                parent: Some(record.id.clone()),
                seed: Some(seed),
            },
        ));
    }
    write_records(cli, &out)
}

fn cmd_subdivide(cli: &Cli, args: &SubdivideArgs) -> Result<()> {
    let records = load_records(cli)?;
    let mut out = Vec::with_capacity(records.len());
    for record in &records {
        let scheme = match args.scheme {
            SchemeName::Stellar => SubdivisionScheme::StellarOne,
            SchemeName::Graded => SubdivisionScheme::GradedStellar {
                target_vertices: args
                    .n
                    .ok_or_else(|| anyhow!("--scheme graded requires --n"))?,
            },
            SchemeName::Top => SubdivisionScheme::TopStellar {
                proportion: args.p.ok_or_else(|| anyhow!("--scheme top requires --p"))?,
            },
            SchemeName::Barycentric => SubdivisionScheme::Barycentric,
        };
        let seed = derive_record_seed(cli.seed, &record.id, "subdivide");
        let refined = scheme.apply(&record.complex()?, seed)?;
        out.push(DatasetRecord::from_complex(
            format!("{}:{}", record.id, scheme.label()),
            &refined,
            record.label.clone(),
            Provenance {
                kind: ProvenanceKind::Subdivision,
                parent: Some(record.id.clone()),
                seed: Some(seed),
            },
        ));
    }
    write_records(cli, &out)
}

fn cmd_dedup(cli: &Cli, args: &DedupArgs) -> Result<()> {
    let records = load_records(cli)?;
    let (kept, report) = isomorphism::deduplicate(&records, args.max_group)?;
    if let Some(path) = &args.report {
        fs::write(path, serde_json::to_string_pretty(&report)?)?;
    } else {
        eprintln!("{}", serde_json::to_string(&report)?);
    }
    write_records(cli, &kept)
}

fn cmd_balance(cli: &Cli, args: &BalanceArgs) -> Result<()> {
    let seeds = load_records(cli)?;
    let dimension = seeds.first().map_or(2, |r| r.dimension);
    let target = args.target.unwrap_or(100);
    let cfg = BalanceConfig {
        target_min: args.target_min.unwrap_or(target),
        target_max: args.target_max.unwrap_or(target),
        max_vertices: default_cap(cli, dimension),
        dedup_max_group: args.max_group,
        rounds: args.rounds,
        moves_per_sample: args.moves_per_sample,
        extra_classes: args.classes.clone(),
    };
    let (records, report) = pipeline::balance_dataset(&seeds, &cfg, cli.seed)?;
    if !report.shortfalls.is_empty() {
        eprintln!(
            "warning: targets unreachable within {} rounds: {}",
            report.rounds_used,
            serde_json::to_string(&report.shortfalls)?
        );
    }
    if let Some(path) = &args.report {
        fs::write(path, serde_json::to_string_pretty(&report)?)?;
    } else {
        eprintln!("{}", serde_json::to_string(&report)?);
    }
    write_records(cli, &records)
}

fn parse_variant(token: &str) -> Result<EvalVariant> {
    if token == "barycentric" {
        return Ok(EvalVariant::Barycentric);
    }
    if let Some(n) = token.strip_prefix("graded:") {
        return Ok(EvalVariant::Graded(n.parse()?));
    }
    if let Some(p) = token.strip_prefix("top:") {
        return Ok(EvalVariant::Top(p.parse()?));
    }
    bail!("unknown variant {token:?}; expected graded:N, top:P, or barycentric")
}

fn cmd_variants(cli: &Cli, args: &VariantArgs) -> Result<()> {
    let records = load_records(cli)?;
    let mut which: Vec<EvalVariant> = args
        .which
        .iter()
        .map(|t| parse_variant(t))
        .collect::<Result<_>>()?;
    if args.auto_grid {
        let source_max = records
            .iter()
            .map(|r| r.complex().map(|c| c.vertex_count()))
            .collect::<simplicia::error::Result<Vec<_>>>()?
            .into_iter()
            .max()
            .unwrap_or(0);
        which.retain(|v| !matches!(v, EvalVariant::Graded(_)));
        let mut grid: Vec<EvalVariant> = (1..=5)
            .map(|i| EvalVariant::Graded(source_max + i))
            .collect();
        grid.append(&mut which);
        which = grid;
    }
    let variants = pipeline::make_eval_variants(&records, &which, args.per_class, cli.seed)?;
    fs::create_dir_all(&args.output_dir)?;
    for (name, records) in &variants {
        let path = args.output_dir.join(format!("{name}.jsonl"));
        fs::write(&path, pipeline::serialize(records))?;
        eprintln!("wrote {} records to {}", records.len(), path.display());
    }
    println!("{} variant sets", variants.len());
    Ok(())
}

fn cmd_split(cli: &Cli, args: &SplitArgs) -> Result<()> {
    if args.ratios.len() != 3 {
        bail!("--ratios needs exactly three values");
    }
    let records = load_records(cli)?;
    let ratios = (args.ratios[0], args.ratios[1], args.ratios[2]);
    let tagged = if args.stratify {
        pipeline::split_dataset_stratified(&records, ratios, cli.seed)?
    } else {
        pipeline::split_dataset(&records, ratios, cli.seed)?
    };
    write_records(cli, &tagged)
}

fn cmd_ec(cli: &Cli, args: &EcArgs) -> Result<()> {
    let records = load_records(cli)?;
    let mode = match args.ec_mode {
        EcModeArg::Chi => EcMode::Chi,
        EcModeArg::ChiOrient => EcMode::ChiOrient,
    };
    let (train, eval): (Vec<DatasetRecord>, Vec<DatasetRecord>) = match &args.eval {
        Some(path) => {
            let eval_input = fs::read_to_string(path)
                .with_context(|| format!("reading {}", path.display()))?;
            (records, pipeline::parse_unvalidated(&eval_input)?)
        }
        None => {
            let train: Vec<_> = records
                .iter()
                .filter(|r| r.split == Some(Split::Train))
                .cloned()
                .collect();
            let eval: Vec<_> = records
                .iter()
                .filter(|r| r.split == Some(Split::Test))
                .cloned()
                .collect();
            if train.is_empty() || eval.is_empty() {
                bail!("--eval not given and the input has no train/test split tags");
            }
            (train, eval)
        }
    };
    let accuracy = pipeline::ec_baseline(&train, &eval, mode)?;
    println!(
        "{}",
        json!({
            "balanced_accuracy": accuracy,
            "mode": match mode { EcMode::Chi => "chi", EcMode::ChiOrient => "chi+orient" },
            "train_records": train.len(),
            "eval_records": eval.len(),
        })
    );
    Ok(())
}

fn cmd_export(cli: &Cli, args: &ExportArgs) -> Result<()> {
    let records = load_records(cli)?;
    let mut out = String::new();
    for record in &records {
        let complex = record.complex()?;
        let graph = match args.repr {
            ReprName::Skeleton => represent::skeleton_graph(&complex),
            ReprName::Dual => represent::dual_graph(&complex)?,
            ReprName::Hasse => represent::hasse_diagram(&complex, args.directed),
        };
        let seed = derive_record_seed(cli.seed, &record.id, "encode");
        let features = match args.encode {
            EncodeName::R => represent::encode_random(&graph, args.feature_dim, seed)?,
            EncodeName::D => represent::encode_degree(&graph),
            EncodeName::Rwpe => represent::encode_rwpe(&graph, args.rwpe_steps)?,
            EncodeName::Mc => represent::encode_moment_curve(&graph, record.dimension)?,
        };
        let rows: Vec<&[f64]> = (0..features.rows).map(|i| features.row(i)).collect();
        let line = json!({
            "id": record.id,
            "label": record.label,
            "repr": graph.kind,
            "directed": graph.directed,
            "nodes": graph.nodes,
            "edges": graph.edges,
            "encoding": features.encoding,
            "features": rows,
        });
        out.push_str(&line.to_string());
        out.push('\n');
    }
    write_output(cli, &out)
}

fn cmd_stats(cli: &Cli) -> Result<()> {
    let records = load_records(cli)?;
    let mut classes: BTreeMap<&str, usize> = BTreeMap::new();
    let mut vertices: Vec<usize> = Vec::with_capacity(records.len());
    let mut facets: Vec<usize> = Vec::with_capacity(records.len());
    let mut splits: BTreeMap<&str, usize> = BTreeMap::new();
    for record in &records {
        *classes.entry(&record.label).or_insert(0) += 1;
        let complex = record.complex()?;
        vertices.push(complex.vertex_count());
        facets.push(record.top_faces.len());
        let tag = match record.split {
            Some(Split::Train) => "train",
            Some(Split::Val) => "val",
            Some(Split::Test) => "test",
            None => "untagged",
        };
        *splits.entry(tag).or_insert(0) += 1;
    }
    let summary = json!({
        "records": records.len(),
        "classes": classes,
        "splits": splits,
        "vertices": {
            "min": vertices.iter().min(),
            "max": vertices.iter().max(),
            "mean": mean(&vertices),
        },
        "facets": {
            "min": facets.iter().min(),
            "max": facets.iter().max(),
            "mean": mean(&facets),
        },
    });
    println!("{}", serde_json::to_string_pretty(&summary)?);
    Ok(())
}

fn mean(values: &[usize]) -> f64 {
    if values.is_empty() {
        return 0.0;
    }
    values.iter().sum::<usize>() as f64 / values.len() as f64
}

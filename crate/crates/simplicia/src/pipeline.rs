//! Dataset assembly: records, line-delimited JSON serialization, labeling,
//! class balancing through alternating generation and deduplication,
//! subdivision evaluation variants, splits, and the Euler-characteristic
//! baseline.
//!
//! Reproducibility contract: one master seed; every stochastic operation
//! derives an independent substream from (master, record id, operation name),
//! so record-level parallelism never changes results.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complex::{SimplicialComplex, SurfaceClass};
use crate::error::{Error, Result};
use crate::fnv::derive_seed;
use crate::isomorphism::{deduplicate, DedupReport};
use crate::moves::random_pachner_walk;
use crate::subdivision::SubdivisionScheme;
use crate::surgery::build_surface;

/// How a record entered the dataset.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProvenanceKind {
    Census,
    Pachner,
    ConnectedSum,
    Subdivision,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub kind: ProvenanceKind,
    pub parent: Option<String>,
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Split {
    Train,
    Val,
    Test,
}

/// One triangulation plus label, provenance, and split assignment. Field
/// order is the serialization order and is frozen.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatasetRecord {
    pub id: String,
    pub dimension: usize,
    pub top_faces: Vec<Vec<u32>>,
    /// Surface class name for 2D; opaque census label for 3D.
    pub label: String,
    pub provenance: Provenance,
    pub split: Option<Split>,
}

impl DatasetRecord {
    pub fn from_complex(
        id: impl Into<String>,
        complex: &SimplicialComplex,
        label: impl Into<String>,
        provenance: Provenance,
    ) -> DatasetRecord {
        DatasetRecord {
            id: id.into(),
            dimension: complex.dimension().expect("records hold nonempty complexes"),
            top_faces: complex.top_faces(),
            label: label.into(),
            provenance,
            split: None,
        }
    }

    /// Reconstructs the complex from the stored top faces.
    pub fn complex(&self) -> Result<SimplicialComplex> {
        SimplicialComplex::from_top_faces(&self.top_faces, self.dimension)
    }

    /// The canonical one-line JSON form.
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("record serialization cannot fail")
    }

    /// Manifold verification plus, for surfaces, the label re-check.
    pub fn validate(&self) -> Result<()> {
        let complex = self.complex().map_err(|e| Error::ValidationError {
            id: self.id.clone(),
            message: e.to_string(),
        })?;
        match complex.manifold_violation() {
            Ok(None) => {}
            Ok(Some(reason)) => {
                return Err(Error::ValidationError {
                    id: self.id.clone(),
                    message: format!("not a combinatorial manifold: {reason}"),
                })
            }
            Err(e) => {
                return Err(Error::ValidationError {
                    id: self.id.clone(),
                    message: e.to_string(),
                })
            }
        }
        if self.dimension == 2 {
            let expected = label_2d(&complex)?;
            if expected != self.label {
                return Err(Error::ValidationError {
                    id: self.id.clone(),
                    message: format!(
                        "label {:?} does not match the computed class {:?}",
                        self.label, expected
                    ),
                });
            }
        } else if complex.euler_characteristic() != 0 {
            // A closed 3-manifold has chi = 0; anything else is corrupt data.
            return Err(Error::ValidationError {
                id: self.id.clone(),
                message: format!(
                    "closed 3-manifold with euler characteristic {}",
                    complex.euler_characteristic()
                ),
            });
        }
        Ok(())
    }
}

/// The canonical class name of a surface.
pub fn label_2d(t: &SimplicialComplex) -> Result<String> {
    Ok(t.classify_surface()?.canonical_name)
}

/// The reproducibility contract in one place: stochastic work on a record
/// seeds its RNG from (master, record id, operation name).
pub fn derive_record_seed(master: u64, record_id: &str, operation: &str) -> u64 {
    derive_seed(master, &[record_id, operation])
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

/// One record per line, UTF-8, keys in fixed order; the exact inverse of
/// [`parse`] on canonical records.
pub fn serialize(records: &[DatasetRecord]) -> String {
    let mut out = String::new();
    for r in records {
        out.push_str(&r.to_json_line());
        out.push('\n');
    }
    out
}

/// Parses line-delimited records, enforcing canonical form (faces sorted
/// strictly ascending, face list sorted and duplicate-free, dense vertex
/// identifiers) and verifying each record reconstructs a combinatorial
/// manifold with a correct 2D label.
pub fn parse(input: &str) -> Result<Vec<DatasetRecord>> {
    let records = parse_unvalidated(input)?;
    records
        .par_iter()
        .map(DatasetRecord::validate)
        .collect::<Result<Vec<()>>>()?;
    Ok(records)
}

/// [`parse`] without the manifold/label verification pass: the speed
/// opt-out for trusted inputs. Structural canonical-form checks still run.
pub fn parse_unvalidated(input: &str) -> Result<Vec<DatasetRecord>> {
    let mut records = Vec::new();
    for (idx, line) in input.lines().enumerate() {
        let line_no = idx + 1;
        if line.trim().is_empty() {
            continue;
        }
        let record: DatasetRecord =
            serde_json::from_str(line).map_err(|e| Error::ParseError {
                line: line_no,
                message: e.to_string(),
            })?;
        check_canonical_form(&record).map_err(|message| Error::ParseError {
            line: line_no,
            message,
        })?;
        records.push(record);
    }
    Ok(records)
}

fn check_canonical_form(record: &DatasetRecord) -> std::result::Result<(), String> {
    if record.dimension != 2 && record.dimension != 3 {
        return Err(format!("dimension must be 2 or 3, got {}", record.dimension));
    }
    if record.top_faces.is_empty() {
        return Err("top_faces must be nonempty".to_string());
    }
    let arity = record.dimension + 1;
    let mut seen_vertices: Vec<u32> = Vec::new();
    for face in &record.top_faces {
        if face.len() != arity {
            return Err(format!(
                "face {face:?} must have exactly {arity} vertices"
            ));
        }
        if !face.windows(2).all(|w| w[0] < w[1]) {
            return Err(format!(
                "face {face:?} is not sorted strictly ascending (canonical form required)"
            ));
        }
        seen_vertices.extend_from_slice(face);
    }
    if !record
        .top_faces
        .windows(2)
        .all(|w| w[0] < w[1])
    {
        return Err("top_faces must be sorted and duplicate-free".to_string());
    }
    seen_vertices.sort_unstable();
    seen_vertices.dedup();
    let dense = seen_vertices
        .iter()
        .enumerate()
        .all(|(i, &v)| v == i as u32);
    if !dense {
        return Err("vertex identifiers must be dense from 0 (canonical form required)".to_string());
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Class filtering and balancing
// ---------------------------------------------------------------------------

/// Drops all records of classes with fewer than `min_size` members.
pub fn filter_min_class_size(records: &[DatasetRecord], min_size: usize) -> Vec<DatasetRecord> {
    let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
    for r in records {
        *counts.entry(&r.label).or_insert(0) += 1;
    }
    records
        .iter()
        .filter(|r| counts[r.label.as_str()] >= min_size)
        .cloned()
        .collect()
}

/// Targets and limits for [`balance_dataset`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BalanceConfig {
    /// Every class must reach at least this many records.
    pub target_min: usize,
    /// Classes are trimmed back to at most this many records.
    pub target_max: usize,
    /// Vertex cap for generated triangulations (24 for 2D, 40 for 3D).
    pub max_vertices: usize,
    /// Digest-collision subset cap for the dedup stage.
    pub dedup_max_group: usize,
    /// Maximum generation/dedup alternation rounds.
    pub rounds: usize,
    /// Pachner steps per generated sample; default is 2x the parent's facet
    /// count.
    pub moves_per_sample: Option<usize>,
    /// Surface classes to create via connected sums when absent from the
    /// seeds (2D only; unknown names for 3D are reported as shortfalls).
    pub extra_classes: Vec<String>,
}

impl BalanceConfig {
    pub fn exact(target: usize, max_vertices: usize) -> BalanceConfig {
        BalanceConfig {
            target_min: target,
            target_max: target,
            max_vertices,
            dedup_max_group: 5,
            rounds: 5,
            moves_per_sample: None,
            extra_classes: Vec::new(),
        }
    }
}

/// Outcome summary of one balancing run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BalanceReport {
    pub per_class: BTreeMap<String, usize>,
    /// Classes that missed `target_min`, with the missing count. Rounds
    /// exhausting without reaching every target is reported here, not fatal.
    pub shortfalls: BTreeMap<String, usize>,
    pub rounds_used: usize,
    pub generated: usize,
    pub dedup: Vec<DedupReport>,
}

/// Alternates (a) generation (random Pachner walks from random class
/// members, plus connected-sum founders for requested surface classes absent
/// from the seeds) and (b) whole-pool deduplication, until every class meets
/// `target_min` or the round budget runs out. Surface labels are always
/// recomputed; 3D labels are propagated from the walk ancestor.
pub fn balance_dataset(
    seeds: &[DatasetRecord],
    cfg: &BalanceConfig,
    master_seed: u64,
) -> Result<(Vec<DatasetRecord>, BalanceReport)> {
    if cfg.target_min == 0 || cfg.target_max < cfg.target_min || cfg.rounds == 0 {
        return Err(Error::InvalidParameter(
            "balance targets and rounds must be positive with target_max >= target_min".into(),
        ));
    }
    for seed in seeds {
        seed.validate()?;
    }

    let mut pool: Vec<DatasetRecord> = seeds.to_vec();

    // Founders for requested classes with no seed member.
    let mut class_names: Vec<String> = seeds.iter().map(|r| r.label.clone()).collect();
    class_names.extend(cfg.extra_classes.iter().cloned());
    class_names.sort();
    class_names.dedup();
    let mut unreachable: BTreeMap<String, usize> = BTreeMap::new();
    for name in &class_names {
        if pool.iter().any(|r| &r.label == name) {
            continue;
        }
        match SurfaceClass::parse(name) {
            Ok(class) => {
                let founder_seed = derive_seed(master_seed, &["founder", name]);
                let surface =
                    build_surface(class.orientable, class.genus_or_crosscaps, founder_seed)?;
                if surface.vertex_count() > cfg.max_vertices {
                    return Err(Error::InvalidParameter(format!(
                        "class {name} needs {} vertices, above the cap {}",
                        surface.vertex_count(),
                        cfg.max_vertices
                    )));
                }
                pool.push(DatasetRecord::from_complex(
                    format!("{name}:founder"),
                    &surface,
                    name.clone(),
                    Provenance {
                        kind: ProvenanceKind::ConnectedSum,
                        parent: None,
                        seed: Some(founder_seed),
                    },
                ));
            }
            Err(_) => {
                // Opaque (3D) classes cannot be created from nothing.
                unreachable.insert(name.clone(), cfg.target_min);
            }
        }
    }

    let mut report = BalanceReport {
        per_class: BTreeMap::new(),
        shortfalls: BTreeMap::new(),
        rounds_used: 0,
        generated: 0,
        dedup: Vec::new(),
    };

    for round in 1..=cfg.rounds {
        report.rounds_used = round;

        let mut by_class: BTreeMap<&str, Vec<&DatasetRecord>> = BTreeMap::new();
        for r in &pool {
            by_class.entry(&r.label).or_default().push(r);
        }

        // Wish list: (class, parent, walk seed, id) for every missing slot.
        let mut wishes: Vec<(String, DatasetRecord, u64, String)> = Vec::new();
        for name in &class_names {
            let Some(members) = by_class.get(name.as_str()) else {
                continue;
            };
            let have = members.len();
            for i in have..cfg.target_max {
                let pick_seed = derive_seed(master_seed, &[name, &round.to_string(), &i.to_string(), "parent"]);
                let mut rng = ChaCha8Rng::seed_from_u64(pick_seed);
                let parent = members[rng.random_range(0..members.len())].clone();
                let walk_seed = derive_seed(
                    master_seed,
                    &[name, &round.to_string(), &i.to_string(), "walk", &parent.id],
                );
                let id = format!("{name}:{round}.{i}");
                wishes.push((name.clone(), parent, walk_seed, id));
            }
        }
        if wishes.is_empty() {
            break;
        }
        report.generated += wishes.len();

        let grown: Vec<DatasetRecord> = wishes
            .into_par_iter()
            .map(|(name, parent, walk_seed, id)| {
                let complex = parent.complex()?;
                let steps = cfg
                    .moves_per_sample
                    .unwrap_or_else(|| 2 * complex.top_faces().len());
                let walk = random_pachner_walk(&complex, steps, cfg.max_vertices, walk_seed)?;
                let label = if parent.dimension == 2 {
                    let computed = label_2d(&walk.complex)?;
                    if computed != name {
                        return Err(Error::ValidationError {
                            id: id.clone(),
                            message: format!(
                                "walk changed the class from {name} to {computed}"
                            ),
                        });
                    }
                    computed
                } else {
                    parent.label.clone()
                };
                Ok(DatasetRecord::from_complex(
                    id,
                    &walk.complex,
                    label,
                    Provenance {
                        kind: ProvenanceKind::Pachner,
                        parent: Some(parent.id.clone()),
                        seed: Some(walk_seed),
                    },
                ))
            })
            .collect::<Result<_>>()?;

        pool.extend(grown);
        let (kept, dedup_report) = deduplicate(&pool, cfg.dedup_max_group)?;
        pool = kept;
        report.dedup.push(dedup_report);

        let done = class_names.iter().all(|name| {
            unreachable.contains_key(name)
                || pool.iter().filter(|r| &r.label == name).count() >= cfg.target_min
        });
        if done {
            break;
        }
    }

    // Trim overfull classes deterministically (canonical order survivors).
    let mut by_class: BTreeMap<String, Vec<DatasetRecord>> = BTreeMap::new();
    for r in pool {
        by_class.entry(r.label.clone()).or_default().push(r);
    }
    let mut result: Vec<DatasetRecord> = Vec::new();
    for (name, mut members) in by_class {
        members.sort_by_cached_key(|r| r.to_json_line());
        members.truncate(cfg.target_max);
        if members.len() < cfg.target_min {
            report
                .shortfalls
                .insert(name.clone(), cfg.target_min - members.len());
        }
        report.per_class.insert(name, members.len());
        result.extend(members);
    }
    for (name, missing) in unreachable {
        report.shortfalls.insert(name.clone(), missing);
        report.per_class.entry(name).or_insert(0);
    }
    result.sort_by_cached_key(|r| r.id.clone());
    Ok((result, report))
}

// ---------------------------------------------------------------------------
// Evaluation variants
// ---------------------------------------------------------------------------

/// One requested evaluation variant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EvalVariant {
    /// Graded stellar subdivision to exactly `n` vertices.
    Graded(usize),
    /// One-shot stellar subdivision of a proportion `p` of the facets.
    Top(f64),
    /// Full barycentric subdivision of the largest triangulations per class.
    Barycentric,
}

impl EvalVariant {
    pub fn label(&self) -> String {
        match self {
            EvalVariant::Graded(n) => format!("graded_{n}"),
            EvalVariant::Top(p) => format!("top_{p}"),
            EvalVariant::Barycentric => "barycentric".to_string(),
        }
    }

    fn scheme(&self) -> SubdivisionScheme {
        match *self {
            EvalVariant::Graded(n) => SubdivisionScheme::GradedStellar { target_vertices: n },
            EvalVariant::Top(p) => SubdivisionScheme::TopStellar { proportion: p },
            EvalVariant::Barycentric => SubdivisionScheme::Barycentric,
        }
    }
}

/// The standard variant grid for a source whose largest triangulation
/// has `max_vertices` vertices: five graded targets right above it, the two
/// proportional subdivisions, and the barycentric one: eight variants.
pub fn default_variant_grid(max_vertices: usize) -> Vec<EvalVariant> {
    let mut grid: Vec<EvalVariant> = (1..=5)
        .map(|i| EvalVariant::Graded(max_vertices + i))
        .collect();
    grid.push(EvalVariant::Top(0.75));
    grid.push(EvalVariant::Top(1.0));
    grid.push(EvalVariant::Barycentric);
    grid
}

/// Builds the out-of-distribution evaluation sets: samples `per_class`
/// records per class (for barycentric, the largest ones by vertex then facet
/// count), applies the scheme, and copies labels unchanged. Graded variants
/// whose target does not exceed the source's maximum vertex count are
/// skipped.
pub fn make_eval_variants(
    records: &[DatasetRecord],
    which: &[EvalVariant],
    per_class: usize,
    seed: u64,
) -> Result<Vec<(String, Vec<DatasetRecord>)>> {
    if per_class == 0 {
        return Err(Error::InvalidParameter(
            "per_class must be at least 1".into(),
        ));
    }
    for variant in which {
        if let EvalVariant::Top(p) = variant {
            if !(*p > 0.0 && *p <= 1.0) {
                return Err(Error::InvalidParameter(format!(
                    "top proportion must be in (0, 1], got {p}"
                )));
            }
        }
    }
    let sizes: Vec<(usize, usize)> = records
        .par_iter()
        .map(|r| {
            let c = r.complex()?;
            Ok((c.vertex_count(), c.top_faces().len()))
        })
        .collect::<Result<_>>()?;
    let source_max = sizes.iter().map(|&(v, _)| v).max().unwrap_or(0);

    let mut by_class: BTreeMap<&str, Vec<usize>> = BTreeMap::new();
    for (i, r) in records.iter().enumerate() {
        by_class.entry(&r.label).or_default().push(i);
    }

    let mut out = Vec::new();
    for variant in which {
        if let EvalVariant::Graded(n) = variant {
            if *n <= source_max {
                continue;
            }
        }
        let variant_label = variant.label();
        let mut chosen: Vec<usize> = Vec::new();
        for (class, members) in &by_class {
            if let EvalVariant::Barycentric = variant {
                // The largest triangulations: most vertices, then most facets,
                // canonical id order breaking the remaining ties.
                let mut ordered = members.clone();
                ordered.sort_by_key(|&i| {
                    let (v, f) = sizes[i];
                    (std::cmp::Reverse(v), std::cmp::Reverse(f), records[i].id.clone())
                });
                chosen.extend(ordered.into_iter().take(per_class));
            } else {
                let mut ordered = members.clone();
                let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(
                    seed,
                    &[&variant_label, class, "sample"],
                ));
                ordered.shuffle(&mut rng);
                chosen.extend(ordered.into_iter().take(per_class));
            }
        }
        chosen.sort_unstable();

        let variant_records: Vec<DatasetRecord> = chosen
            .into_par_iter()
            .map(|i| {
                let record = &records[i];
                let substream =
                    derive_seed(seed, &[&variant_label, &record.id, "subdivide"]);
                let refined = variant.scheme().apply(&record.complex()?, substream)?;
                Ok(DatasetRecord {
                    id: format!("{}:{}", record.id, variant_label),
                    dimension: record.dimension,
                    top_faces: refined.top_faces(),
                    label: record.label.clone(),
                    provenance: Provenance {
                        kind: ProvenanceKind::Subdivision,
                        parent: Some(record.id.clone()),
                        seed: Some(substream),
                    },
                    split: None,
                })
            })
            .collect::<Result<_>>()?;
        out.push((variant_label, variant_records));
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Splits
// ---------------------------------------------------------------------------

/// Uniform random train/val/test assignment with largest-remainder rounding;
/// deterministic per seed.
pub fn split_dataset(
    records: &[DatasetRecord],
    ratios: (f64, f64, f64),
    seed: u64,
) -> Result<Vec<DatasetRecord>> {
    let (a, b, c) = ratios;
    if a < 0.0 || b < 0.0 || c < 0.0 || (a + b + c - 1.0).abs() > 1e-9 {
        return Err(Error::InvalidParameter(format!(
            "split ratios must be non-negative and sum to 1, got ({a}, {b}, {c})"
        )));
    }
    let mut order: Vec<usize> = (0..records.len()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    order.shuffle(&mut rng);

    let quotas = largest_remainder(records.len(), [a, b, c]);
    let mut tagged = records.to_vec();
    for (rank, &i) in order.iter().enumerate() {
        let split = if rank < quotas[0] {
            Split::Train
        } else if rank < quotas[0] + quotas[1] {
            Split::Val
        } else {
            Split::Test
        };
        tagged[i].split = Some(split);
    }
    Ok(tagged)
}

/// [`split_dataset`] applied per class, for callers that want stratification.
pub fn split_dataset_stratified(
    records: &[DatasetRecord],
    ratios: (f64, f64, f64),
    seed: u64,
) -> Result<Vec<DatasetRecord>> {
    let mut by_class: BTreeMap<&str, Vec<usize>> = BTreeMap::new();
    for (i, r) in records.iter().enumerate() {
        by_class.entry(&r.label).or_default().push(i);
    }
    let mut tagged = records.to_vec();
    for (class, members) in by_class {
        let subset: Vec<DatasetRecord> = members.iter().map(|&i| records[i].clone()).collect();
        let class_seed = derive_seed(seed, &["stratum", class]);
        let split = split_dataset(&subset, ratios, class_seed)?;
        for (&i, r) in members.iter().zip(split) {
            tagged[i].split = r.split;
        }
    }
    Ok(tagged)
}

/// Apportions `total` into integer counts proportional to `ratios`, giving
/// leftover units to the largest fractional remainders (ties to the earlier
/// split).
fn largest_remainder(total: usize, ratios: [f64; 3]) -> [usize; 3] {
    let exact: Vec<f64> = ratios.iter().map(|r| r * total as f64).collect();
    let mut counts: Vec<usize> = exact.iter().map(|&x| x.floor() as usize).collect();
    let assigned: usize = counts.iter().sum();
    let mut order: Vec<usize> = (0..3).collect();
    order.sort_by(|&i, &j| {
        let fi = exact[i] - exact[i].floor();
        let fj = exact[j] - exact[j].floor();
        fj.partial_cmp(&fi).unwrap().then(i.cmp(&j))
    });
    for k in 0..(total - assigned) {
        counts[order[k % 3]] += 1;
    }
    [counts[0], counts[1], counts[2]]
}

// ---------------------------------------------------------------------------
// Euler-characteristic baseline
// ---------------------------------------------------------------------------

/// What the baseline buckets on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EcMode {
    /// Euler characteristic only.
    Chi,
    /// Euler characteristic plus orientability (the default; on surfaces the
    /// pair determines the class exactly).
    ChiOrient,
}

/// Learns the majority label per invariant bucket on `train`, predicts it on
/// `eval` (global majority for unseen buckets), and returns the balanced
/// accuracy: the macro-average of per-class recall.
pub fn ec_baseline(
    train: &[DatasetRecord],
    eval: &[DatasetRecord],
    mode: EcMode,
) -> Result<f64> {
    if train.is_empty() {
        return Err(Error::EmptyTrain);
    }

    let bucket_of = |r: &DatasetRecord| -> Result<(i64, Option<bool>)> {
        let complex = r.complex()?;
        let chi = complex.euler_characteristic();
        let orient = match mode {
            EcMode::Chi => None,
            EcMode::ChiOrient => Some(complex.is_orientable()?),
        };
        Ok((chi, orient))
    };

    let train_buckets: Vec<(i64, Option<bool>)> =
        train.par_iter().map(bucket_of).collect::<Result<_>>()?;
    let eval_buckets: Vec<(i64, Option<bool>)> =
        eval.par_iter().map(bucket_of).collect::<Result<_>>()?;

    let mut per_bucket: BTreeMap<(i64, Option<bool>), BTreeMap<&str, usize>> = BTreeMap::new();
    let mut global: BTreeMap<&str, usize> = BTreeMap::new();
    for (r, bucket) in train.iter().zip(&train_buckets) {
        *per_bucket
            .entry(*bucket)
            .or_default()
            .entry(&r.label)
            .or_insert(0) += 1;
        *global.entry(&r.label).or_insert(0) += 1;
    }
    let majority = |counts: &BTreeMap<&str, usize>| -> String {
        counts
            .iter()
            .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(a.0)))
            .map(|(label, _)| (*label).to_string())
            .expect("bucket is nonempty")
    };
    let fallback = majority(&global);
    let predictions: BTreeMap<(i64, Option<bool>), String> = per_bucket
        .iter()
        .map(|(bucket, counts)| (*bucket, majority(counts)))
        .collect();

    let mut per_class: BTreeMap<&str, (usize, usize)> = BTreeMap::new();
    for (r, bucket) in eval.iter().zip(&eval_buckets) {
        let predicted = predictions.get(bucket).unwrap_or(&fallback);
        let entry = per_class.entry(&r.label).or_insert((0, 0));
        entry.1 += 1;
        if predicted == &r.label {
            entry.0 += 1;
        }
    }
    if per_class.is_empty() {
        return Err(Error::InvalidParameter("empty evaluation set".into()));
    }
    let recall_sum: f64 = per_class
        .values()
        .map(|&(correct, total)| correct as f64 / total as f64)
        .sum();
    Ok(recall_sum / per_class.len() as f64)
}

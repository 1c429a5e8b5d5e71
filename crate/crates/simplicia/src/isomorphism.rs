//! Three-stage deduplication machinery: f-vector filtering, Weisfeiler-Leman
//! hashing of incidence graphs, and exact isomorphism by color-pruned
//! backtracking.
//!
//! The staging is one-sided in the safe direction: records that differ in
//! f-vector or WL digest are guaranteed non-isomorphic, so only digest
//! collisions ever reach the exact (exponential-in-the-worst-case) check, and
//! collision groups are capped.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::fnv::Fnv128;
use crate::pipeline::DatasetRecord;
use crate::represent::{GraphKind, GraphNode, NodeRole, RepresentationGraph};

/// A 128-bit relabeling-invariant digest; isomorphic complexes always hash
/// equal. FNV-1a over the stabilized Weisfeiler-Leman color multiset; the
/// function is frozen because dataset reproducibility depends on it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WlDigest(pub u128);

impl fmt::Display for WlDigest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:032x}", self.0)
    }
}

impl Serialize for WlDigest {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(&format_args!("{self}"))
    }
}

/// The bipartite incidence graph: one node per vertex and one node per face
/// of dimension >= 1, joined when the vertex belongs to the face. Node labels
/// carry (role, dimension) as initial colors.
pub fn incidence_graph(t: &SimplicialComplex) -> RepresentationGraph {
    let mut nodes: Vec<GraphNode> = Vec::new();
    let mut vertex_index: HashMap<u32, usize> = HashMap::new();
    for (i, v) in t.faces_of_dim(0).enumerate() {
        vertex_index.insert(v.vertices()[0], i);
        nodes.push(GraphNode {
            source: v.vertices().to_vec(),
            role: NodeRole::Vertex,
            dimension: 0,
        });
    }
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let top = t.dimension().unwrap_or(0);
    for dim in 1..=top {
        for face in t.faces_of_dim(dim) {
            let face_node = nodes.len();
            nodes.push(GraphNode {
                source: face.vertices().to_vec(),
                role: NodeRole::Face,
                dimension: dim,
            });
            for &v in face.vertices() {
                edges.push((vertex_index[&v], face_node));
            }
        }
    }
    edges.sort_unstable();
    RepresentationGraph {
        kind: GraphKind::Incidence,
        nodes,
        edges,
        directed: false,
    }
}

/// Initial WL colors: a content hash of (role, dimension), so colors are
/// comparable across graphs hashed independently.
fn initial_colors(nodes: &[GraphNode]) -> Vec<u128> {
    nodes
        .iter()
        .map(|n| {
            let mut h = Fnv128::new();
            h.write(match n.role {
                NodeRole::Vertex => b"vertex",
                NodeRole::Face => b"face",
                NodeRole::Simplex => b"simplex",
            });
            h.write_usize(n.dimension);
            h.finish()
        })
        .collect()
}

/// 1-WL color refinement to stabilization. Each round injectively re-encodes
/// the pair (own color, sorted multiset of neighbor colors) as a content
/// hash, so equal colors mean equal refinement trees even across graphs. The
/// partition only ever splits, so it is stable as soon as the class count
/// stops growing. Returns the final colors and the number of rounds run.
fn refine_colors(adjacency: &[Vec<usize>], init: Vec<u128>) -> (Vec<u128>, usize) {
    let mut colors = init;
    let mut classes = distinct(&colors);
    let mut rounds = 0;
    loop {
        let mut next: Vec<u128> = Vec::with_capacity(colors.len());
        for (i, neighbors) in adjacency.iter().enumerate() {
            let mut around: Vec<u128> = neighbors.iter().map(|&j| colors[j]).collect();
            around.sort_unstable();
            let mut h = Fnv128::new();
            h.write(&colors[i].to_le_bytes());
            h.write_usize(around.len());
            for c in around {
                h.write(&c.to_le_bytes());
            }
            next.push(h.finish());
        }
        rounds += 1;
        let new_classes = distinct(&next);
        let stable = new_classes == classes;
        colors = next;
        classes = new_classes;
        if stable {
            return (colors, rounds);
        }
    }
}

fn distinct(colors: &[u128]) -> usize {
    let mut sorted: Vec<u128> = colors.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    sorted.len()
}

/// Digest of the stabilized color multiset together with the round count.
pub fn wl_hash(g: &RepresentationGraph) -> WlDigest {
    let (colors, rounds) = refine_colors(&g.adjacency(), initial_colors(&g.nodes));
    let mut sorted = colors;
    sorted.sort_unstable();
    let mut h = Fnv128::new();
    h.write_usize(g.node_count());
    h.write_usize(g.edge_count());
    h.write_usize(rounds);
    for color in sorted {
        h.write(&color.to_le_bytes());
    }
    WlDigest(h.finish())
}

/// Digest of a complex through its incidence graph.
pub fn wl_digest_of(t: &SimplicialComplex) -> WlDigest {
    wl_hash(&incidence_graph(t))
}

/// Exact isomorphism: is there a vertex bijection mapping the face set of
/// `t1` bijectively onto that of `t2`? Decided by backtracking over vertex
/// images, restricted to equal stabilized WL color classes of the jointly
/// refined incidence graphs.
pub fn are_isomorphic(t1: &SimplicialComplex, t2: &SimplicialComplex) -> bool {
    if t1.f_vector() != t2.f_vector() {
        return false;
    }
    let n = t1.vertex_count();
    if n == 0 {
        return true;
    }

    let g1 = incidence_graph(t1);
    let g2 = incidence_graph(t2);

    // Refine the disjoint union so colors are comparable across the graphs.
    let offset = g1.node_count();
    let mut nodes = g1.nodes.clone();
    nodes.extend(g2.nodes.iter().cloned());
    let mut adjacency = g1.adjacency();
    adjacency.extend(g2.adjacency().into_iter().map(|list| {
        list.into_iter()
            .map(|j| j + offset)
            .collect::<Vec<usize>>()
    }));
    let (colors, _) = refine_colors(&adjacency, initial_colors(&nodes));

    let mut histogram1: BTreeMap<u128, i64> = BTreeMap::new();
    for &c in &colors[..offset] {
        *histogram1.entry(c).or_insert(0) += 1;
    }
    for &c in &colors[offset..] {
        *histogram1.entry(c).or_insert(0) -= 1;
    }
    if histogram1.values().any(|&d| d != 0) {
        return false;
    }

    // Vertex nodes come first in incidence node order.
    let vertex_colors1 = &colors[..n];
    let vertex_colors2 = &colors[offset..offset + n];

    // Candidate images per t1 vertex: equal color class.
    let mut candidates: Vec<Vec<u32>> = Vec::with_capacity(n);
    for &c1 in vertex_colors1 {
        let cands: Vec<u32> = (0..n as u32)
            .filter(|&w| vertex_colors2[w as usize] == c1)
            .collect();
        if cands.is_empty() {
            return false;
        }
        candidates.push(cands);
    }

    // Most-constrained-first assignment order.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&u| candidates[u].len());

    // Faces of t1 (dimension >= 1) listed per vertex, for incremental checks.
    let mut faces_at: Vec<Vec<&crate::complex::Simplex>> = vec![Vec::new(); n];
    for face in t1.all_faces() {
        if face.dimension() == 0 {
            continue;
        }
        for &v in face.vertices() {
            faces_at[v as usize].push(face);
        }
    }

    let mut image: Vec<Option<u32>> = vec![None; n];
    let mut used = vec![false; n];
    backtrack(t2, &order, 0, &candidates, &faces_at, &mut image, &mut used)
}

#[allow(clippy::too_many_arguments)]
fn backtrack(
    t2: &SimplicialComplex,
    order: &[usize],
    depth: usize,
    candidates: &[Vec<u32>],
    faces_at: &[Vec<&crate::complex::Simplex>],
    image: &mut Vec<Option<u32>>,
    used: &mut Vec<bool>,
) -> bool {
    if depth == order.len() {
        return true;
    }
    let u = order[depth];
    for &w in &candidates[u] {
        if used[w as usize] {
            continue;
        }
        image[u] = Some(w);
        used[w as usize] = true;
        // Every face whose vertices are now all assigned must map to a face.
        let consistent = faces_at[u].iter().all(|face| {
            let mut mapped: Vec<u32> = Vec::with_capacity(face.vertices().len());
            for &v in face.vertices() {
                match image[v as usize] {
                    Some(img) => mapped.push(img),
                    None => return true, // not yet decidable
                }
            }
            match crate::complex::Simplex::new(mapped) {
                Ok(s) => t2.contains(&s),
                Err(_) => false,
            }
        });
        if consistent
            && backtrack(t2, order, depth + 1, candidates, faces_at, image, used)
        {
            return true;
        }
        image[u] = None;
        used[w as usize] = false;
    }
    false
}

/// Per-stage removal counts for one deduplication run; serializes to a
/// machine-readable summary for pipeline logs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DedupReport {
    pub input: usize,
    pub kept: usize,
    /// Number of distinct f-vector groups (stage 1).
    pub fvector_groups: usize,
    /// Number of distinct (f-vector, WL digest) groups (stage 2).
    pub digest_groups: usize,
    /// Records removed because an exact isomorphism check matched a kept
    /// record (stage 3).
    pub removed_isomorphic: usize,
    /// Records removed because their digest-collision subset exceeded the
    /// group cap and only one survivor is kept.
    pub removed_group_cap: usize,
    /// Exact isomorphism checks performed.
    pub isomorphism_checks: usize,
}

/// Stage 1 groups records by f-vector; stage 2 partitions each group by the
/// WL digest of the incidence graph; stage 3 runs exact isomorphism inside
/// digest-collision subsets of size <= `max_group`, keeping one
/// representative per isomorphism class. Larger subsets keep exactly one
/// record, the first in canonical serialization order.
pub fn deduplicate(
    batch: &[DatasetRecord],
    max_group: usize,
) -> Result<(Vec<DatasetRecord>, DedupReport)> {
    if max_group == 0 {
        return Err(Error::InvalidParameter(
            "max_group must be at least 1".into(),
        ));
    }

    // Reconstruct complexes and hash them in parallel; both are pure.
    let prepared: Vec<(SimplicialComplex, WlDigest)> = batch
        .par_iter()
        .map(|record| {
            let complex = record.complex()?;
            let digest = wl_digest_of(&complex);
            Ok((complex, digest))
        })
        .collect::<Result<_>>()?;

    let mut groups: BTreeMap<(crate::complex::FVector, WlDigest), Vec<usize>> = BTreeMap::new();
    let mut fvector_groups: BTreeMap<crate::complex::FVector, ()> = BTreeMap::new();
    for (i, (complex, digest)) in prepared.iter().enumerate() {
        let fv = complex.f_vector();
        fvector_groups.insert(fv.clone(), ());
        groups.entry((fv, *digest)).or_default().push(i);
    }

    let mut keep = vec![false; batch.len()];
    let mut removed_isomorphic = 0;
    let mut removed_group_cap = 0;
    let mut isomorphism_checks = 0;

    for members in groups.values() {
        // Canonical serialization order decides survivors, so the outcome is
        // independent of input order and scheduling.
        let mut ordered = members.clone();
        ordered.sort_by_cached_key(|&i| batch[i].to_json_line());

        if ordered.len() > max_group {
            keep[ordered[0]] = true;
            removed_group_cap += ordered.len() - 1;
            continue;
        }
        let mut representatives: Vec<usize> = Vec::new();
        for &i in &ordered {
            let mut duplicate = false;
            for &rep in &representatives {
                isomorphism_checks += 1;
                if are_isomorphic(&prepared[i].0, &prepared[rep].0) {
                    duplicate = true;
                    break;
                }
            }
            if duplicate {
                removed_isomorphic += 1;
            } else {
                representatives.push(i);
                keep[i] = true;
            }
        }
    }

    let kept: Vec<DatasetRecord> = batch
        .iter()
        .enumerate()
        .filter(|(i, _)| keep[*i])
        .map(|(_, r)| r.clone())
        .collect();
    let report = DedupReport {
        input: batch.len(),
        kept: kept.len(),
        fvector_groups: fvector_groups.len(),
        digest_groups: groups.len(),
        removed_isomorphic,
        removed_group_cap,
        isomorphism_checks,
    };
    Ok((kept, report))
}

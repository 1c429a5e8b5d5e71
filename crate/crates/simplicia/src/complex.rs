//! Pure simplicial complexes of dimension 2 and 3 with canonical vertex labels,
//! plus the per-complex invariants: f-vector, Euler characteristic, GF(2) Betti
//! numbers, orientability, combinatorial-manifold verification, and the
//! classification of closed surfaces.
//!
//! A complex stores its full downward closure (all faces, all dimensions), not
//! just the top faces: links, Hasse diagrams, and boundary matrices all need
//! the lower faces, and memory is a non-issue at the vertex counts this crate
//! targets. Values are immutable after construction; every operation here is a
//! pure function.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2;

/// A single simplex: a strictly increasing list of vertex identifiers.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Simplex {
    vertices: Vec<u32>,
}

impl Simplex {
    /// Builds a simplex from vertices in any order; duplicates are rejected.
    pub fn new(vertices: impl Into<Vec<u32>>) -> Result<Self> {
        let mut vertices = vertices.into();
        vertices.sort_unstable();
        let len = vertices.len();
        vertices.dedup();
        if vertices.is_empty() || vertices.len() != len {
            return Err(Error::WrongFaceArity {
                face: vertices,
                expected: len.max(1),
            });
        }
        Ok(Simplex { vertices })
    }

    /// Vertices in strictly increasing order.
    pub fn vertices(&self) -> &[u32] {
        &self.vertices
    }

    /// Number of vertices minus one.
    pub fn dimension(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn contains_vertex(&self, v: u32) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    /// True iff `self` is a (not necessarily proper) subset of `other`.
    pub fn is_face_of(&self, other: &Simplex) -> bool {
        if self.vertices.len() > other.vertices.len() {
            return false;
        }
        self.vertices.iter().all(|v| other.contains_vertex(*v))
    }

    pub fn is_disjoint(&self, other: &Simplex) -> bool {
        self.vertices.iter().all(|v| !other.contains_vertex(*v))
    }

    /// The codimension-1 faces, i.e. `self` with one vertex removed each.
    /// Empty for 0-simplices.
    pub fn boundary(&self) -> Vec<Simplex> {
        if self.vertices.len() == 1 {
            return Vec::new();
        }
        (0..self.vertices.len())
            .map(|i| {
                let mut v = self.vertices.clone();
                v.remove(i);
                Simplex { vertices: v }
            })
            .collect()
    }

    /// All nonempty subsets of `self`, including `self`.
    pub fn subsimplices(&self) -> Vec<Simplex> {
        let n = self.vertices.len();
        let mut out = Vec::with_capacity((1usize << n) - 1);
        for mask in 1u32..(1 << n) {
            let vertices: Vec<u32> = (0..n)
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| self.vertices[i])
                .collect();
            out.push(Simplex { vertices });
        }
        out
    }

    /// Union with a disjoint simplex, re-sorted.
    pub fn join(&self, other: &Simplex) -> Simplex {
        let mut vertices: Vec<u32> = self
            .vertices
            .iter()
            .chain(other.vertices.iter())
            .copied()
            .collect();
        vertices.sort_unstable();
        vertices.dedup();
        Simplex { vertices }
    }

    /// Adds a single vertex not already present.
    pub fn cone(&self, apex: u32) -> Simplex {
        debug_assert!(!self.contains_vertex(apex));
        let mut vertices = self.vertices.clone();
        vertices.push(apex);
        vertices.sort_unstable();
        Simplex { vertices }
    }

    fn relabeled(&self, map: &HashMap<u32, u32>) -> Simplex {
        let mut vertices: Vec<u32> = self.vertices.iter().map(|v| map[v]).collect();
        vertices.sort_unstable();
        Simplex { vertices }
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// Per-dimension simplex counts `(f_0, ..., f_d)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct FVector(pub Vec<usize>);

impl FVector {
    pub fn counts(&self) -> &[usize] {
        &self.0
    }

    /// Alternating sum of the counts.
    pub fn euler_characteristic(&self) -> i64 {
        self.0
            .iter()
            .enumerate()
            .map(|(k, &f)| if k % 2 == 0 { f as i64 } else { -(f as i64) })
            .sum()
    }
}

impl fmt::Display for FVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// The homeomorphism type of a connected closed surface: orientability plus
/// genus (orientable) or crosscap count (non-orientable).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SurfaceClass {
    pub orientable: bool,
    /// Genus `g` when orientable, crosscap count `k` when not.
    pub genus_or_crosscaps: usize,
    /// "S2", "T2#g", or "RP2#k".
    pub canonical_name: String,
}

impl SurfaceClass {
    pub fn new(orientable: bool, count: usize) -> SurfaceClass {
        let canonical_name = if orientable {
            if count == 0 {
                "S2".to_string()
            } else {
                format!("T2#{count}")
            }
        } else {
            format!("RP2#{count}")
        };
        SurfaceClass {
            orientable,
            genus_or_crosscaps: count,
            canonical_name,
        }
    }

    pub fn euler_characteristic(&self) -> i64 {
        if self.orientable {
            2 - 2 * self.genus_or_crosscaps as i64
        } else {
            2 - self.genus_or_crosscaps as i64
        }
    }

    /// Parses a canonical name produced by [`SurfaceClass::new`].
    pub fn parse(name: &str) -> Result<SurfaceClass> {
        let invalid = || Error::InvalidParameter(format!("not a surface class name: {name:?}"));
        if name == "S2" {
            return Ok(SurfaceClass::new(true, 0));
        }
        if let Some(g) = name.strip_prefix("T2#") {
            let g: usize = g.parse().map_err(|_| invalid())?;
            if g == 0 {
                return Err(invalid());
            }
            return Ok(SurfaceClass::new(true, g));
        }
        if let Some(k) = name.strip_prefix("RP2#") {
            let k: usize = k.parse().map_err(|_| invalid())?;
            if k == 0 {
                return Err(invalid());
            }
            return Ok(SurfaceClass::new(false, k));
        }
        Err(invalid())
    }
}

impl fmt::Display for SurfaceClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical_name)
    }
}

/// All cheap invariants of a manifold in one bundle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvariantSummary {
    pub f_vector: FVector,
    pub euler_characteristic: i64,
    pub orientable: bool,
    pub betti_gf2: Vec<usize>,
}

/// The canonical seed surfaces with their minimal triangulations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SeedSurface {
    /// Boundary of the 3-simplex; 4 vertices, 4 facets.
    Sphere,
    /// The 7-vertex, 14-facet torus (the unique 7-vertex triangulation).
    Torus,
    /// The 6-vertex, 10-facet projective plane (icosahedron antipodal quotient).
    ProjectivePlane,
}

/// A pure simplicial complex storing its full face closure grouped by dimension.
///
/// Constructors canonicalize vertex labels to dense `0..vertex_count`; the one
/// exception is [`SimplicialComplex::link`], which keeps the labels of the
/// ambient complex so callers can relate link vertices back to it.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SimplicialComplex {
    /// `faces[k]` holds the k-simplices. The top level is nonempty unless the
    /// complex itself is empty.
    faces: Vec<BTreeSet<Simplex>>,
}

impl SimplicialComplex {
    /// Builds the downward closure of the given top faces with canonical
    /// (dense, sorted) vertex labels. Input order is irrelevant; listing the
    /// same vertex set twice is collapsed silently.
    pub fn from_top_faces(top_faces: &[Vec<u32>], dimension: usize) -> Result<SimplicialComplex> {
        Self::from_top_faces_report(top_faces, dimension).map(|(c, _)| c)
    }

    /// Like [`from_top_faces`](Self::from_top_faces) but also reports whether
    /// duplicate top faces were collapsed.
    pub fn from_top_faces_report(
        top_faces: &[Vec<u32>],
        dimension: usize,
    ) -> Result<(SimplicialComplex, bool)> {
        if top_faces.is_empty() {
            return Err(Error::EmptyInput);
        }
        let mut tops: BTreeSet<Simplex> = BTreeSet::new();
        let mut duplicates = false;
        for face in top_faces {
            let simplex = Simplex::new(face.clone()).map_err(|_| Error::WrongFaceArity {
                face: face.clone(),
                expected: dimension + 1,
            })?;
            if simplex.dimension() != dimension {
                return Err(Error::WrongFaceArity {
                    face: face.clone(),
                    expected: dimension + 1,
                });
            }
            if !tops.insert(simplex) {
                duplicates = true;
            }
        }
        Ok((Self::closure_of(&tops).canonicalized(), duplicates))
    }

    /// Downward closure of a set of simplices, labels untouched.
    pub(crate) fn closure_of(tops: &BTreeSet<Simplex>) -> SimplicialComplex {
        let dim = tops.iter().map(Simplex::dimension).max().unwrap_or(0);
        let mut faces: Vec<BTreeSet<Simplex>> = vec![BTreeSet::new(); dim + 1];
        for top in tops {
            for sub in top.subsimplices() {
                faces[sub.dimension()].insert(sub);
            }
        }
        SimplicialComplex { faces }
    }

    /// Builds a complex from an already-closed face family, labels untouched.
    pub(crate) fn from_closed_faces(all: impl IntoIterator<Item = Simplex>) -> SimplicialComplex {
        let mut faces: Vec<BTreeSet<Simplex>> = Vec::new();
        for s in all {
            let d = s.dimension();
            if faces.len() <= d {
                faces.resize_with(d + 1, BTreeSet::new);
            }
            faces[d].insert(s);
        }
        while faces.last().is_some_and(BTreeSet::is_empty) {
            faces.pop();
        }
        SimplicialComplex { faces }
    }

    /// Relabels vertices to dense `0..n` preserving their relative order.
    pub(crate) fn canonicalized(&self) -> SimplicialComplex {
        if self.is_canonical() {
            return self.clone();
        }
        let map: HashMap<u32, u32> = self
            .vertices()
            .enumerate()
            .map(|(rank, v)| (v, rank as u32))
            .collect();
        let faces = self
            .faces
            .iter()
            .map(|level| level.iter().map(|s| s.relabeled(&map)).collect())
            .collect();
        SimplicialComplex { faces }
    }

    /// True iff vertex identifiers are exactly `0..vertex_count`.
    pub fn is_canonical(&self) -> bool {
        let n = self.vertex_count() as u32;
        self.vertices().zip(0..n).all(|(v, i)| v == i)
    }

    /// Applies a vertex permutation: `perm[old] = new`. The permutation must
    /// be a bijection on `0..vertex_count` of a canonical complex.
    pub fn permuted(&self, perm: &[u32]) -> Result<SimplicialComplex> {
        let n = self.vertex_count();
        if perm.len() != n || !self.is_canonical() {
            return Err(Error::InvalidParameter(
                "permutation length must equal the vertex count of a canonical complex".into(),
            ));
        }
        let mut seen = vec![false; n];
        for &p in perm {
            if (p as usize) >= n || seen[p as usize] {
                return Err(Error::InvalidParameter("not a permutation".into()));
            }
            seen[p as usize] = true;
        }
        let map: HashMap<u32, u32> = perm
            .iter()
            .enumerate()
            .map(|(old, &new)| (old as u32, new))
            .collect();
        let faces = self
            .faces
            .iter()
            .map(|level| level.iter().map(|s| s.relabeled(&map)).collect())
            .collect();
        Ok(SimplicialComplex { faces })
    }

    /// Highest dimension with a face; `None` for the empty complex.
    pub fn dimension(&self) -> Option<usize> {
        if self.faces.is_empty() {
            None
        } else {
            Some(self.faces.len() - 1)
        }
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn vertex_count(&self) -> usize {
        self.faces.first().map_or(0, BTreeSet::len)
    }

    /// Vertex identifiers in increasing order.
    pub fn vertices(&self) -> impl Iterator<Item = u32> + '_ {
        self.faces
            .first()
            .into_iter()
            .flatten()
            .map(|s| s.vertices()[0])
    }

    pub fn face_count(&self, dim: usize) -> usize {
        self.faces.get(dim).map_or(0, BTreeSet::len)
    }

    /// A vertex identifier not used by any face; equals `vertex_count` on
    /// canonical complexes.
    pub(crate) fn fresh_vertex_id(&self) -> u32 {
        self.faces
            .first()
            .and_then(|level| level.last())
            .map_or(0, |s| s.vertices()[0] + 1)
    }

    /// The k-simplices in sorted order.
    pub fn faces_of_dim(&self, dim: usize) -> impl Iterator<Item = &Simplex> + '_ {
        self.faces.get(dim).into_iter().flatten()
    }

    /// All faces of all dimensions, sorted by dimension then lexicographically.
    pub fn all_faces(&self) -> impl Iterator<Item = &Simplex> + '_ {
        self.faces.iter().flatten()
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.faces
            .get(s.dimension())
            .is_some_and(|level| level.contains(s))
    }

    /// The top-dimension faces as vertex lists (sorted), the inverse of
    /// [`from_top_faces`](Self::from_top_faces) for pure complexes.
    pub fn top_faces(&self) -> Vec<Vec<u32>> {
        match self.dimension() {
            None => Vec::new(),
            Some(d) => self
                .faces_of_dim(d)
                .map(|s| s.vertices().to_vec())
                .collect(),
        }
    }

    /// True iff every maximal face has top dimension.
    pub fn is_pure(&self) -> bool {
        let Some(d) = self.dimension() else {
            return true;
        };
        // A face of dimension k < d is non-maximal iff some (k+1)-face contains it.
        for k in 0..d {
            for face in self.faces_of_dim(k) {
                let covered = self
                    .faces_of_dim(k + 1)
                    .any(|bigger| face.is_face_of(bigger));
                if !covered {
                    return false;
                }
            }
        }
        true
    }

    pub fn f_vector(&self) -> FVector {
        FVector(self.faces.iter().map(BTreeSet::len).collect())
    }

    /// Alternating sum of simplex counts.
    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector().euler_characteristic()
    }

    /// The subcomplex `{tau | tau ∩ s = ∅, tau ∪ s ∈ T}`. Possibly empty,
    /// possibly lower-dimensional. Vertex labels are preserved (not
    /// re-canonicalized) so they can be matched against the ambient complex.
    pub fn link(&self, s: &Simplex) -> Result<SimplicialComplex> {
        if !self.contains(s) {
            return Err(Error::FaceNotPresent {
                face: s.vertices().to_vec(),
            });
        }
        let mut members: Vec<Simplex> = Vec::new();
        for tau in self.all_faces() {
            if tau.is_disjoint(s) && self.contains(&tau.join(s)) {
                members.push(tau.clone());
            }
        }
        Ok(SimplicialComplex::from_closed_faces(members))
    }

    /// Number of connected components of the 1-skeleton; 0 for empty.
    pub fn connected_components(&self) -> usize {
        let verts: Vec<u32> = self.vertices().collect();
        if verts.is_empty() {
            return 0;
        }
        let index: HashMap<u32, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); verts.len()];
        for e in self.faces_of_dim(1) {
            let a = index[&e.vertices()[0]];
            let b = index[&e.vertices()[1]];
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut seen = vec![false; verts.len()];
        let mut components = 0;
        for start in 0..verts.len() {
            if seen[start] {
                continue;
            }
            components += 1;
            let mut queue = VecDeque::from([start]);
            seen[start] = true;
            while let Some(u) = queue.pop_front() {
                for &w in &adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
        }
        components
    }

    fn is_connected(&self) -> bool {
        self.connected_components() == 1
    }

    /// `None` when the complex is a connected combinatorial manifold, else a
    /// human-readable reason. Only dimensions 2 and 3 are supported.
    pub fn manifold_violation(&self) -> Result<Option<String>> {
        let Some(d) = self.dimension() else {
            return Ok(Some("empty complex".to_string()));
        };
        if d != 2 && d != 3 {
            return Err(Error::UnsupportedDimension {
                dimension: d,
                expected: "2 or 3",
            });
        }
        if !self.is_pure() {
            return Ok(Some("not pure".to_string()));
        }
        if !self.is_connected() {
            return Ok(Some("not connected".to_string()));
        }
        for vertex in self.faces_of_dim(0).cloned().collect::<Vec<_>>() {
            let link = self.link(&vertex)?;
            let bad = match d {
                2 => !link_is_circle(&link),
                _ => !link_is_two_sphere(&link),
            };
            if bad {
                return Ok(Some(format!(
                    "link of vertex {} is not a {}-sphere",
                    vertex.vertices()[0],
                    d - 1
                )));
            }
        }
        Ok(None)
    }

    /// True iff every vertex link is a triangulated (d-1)-sphere and the
    /// complex is connected. Supports d = 2 (links are cycles) and d = 3
    /// (links are 2-spheres: closed, connected, Euler characteristic 2).
    pub fn is_combinatorial_manifold(&self) -> Result<bool> {
        Ok(self.manifold_violation()?.is_none())
    }

    /// Errors with [`Error::NotAManifold`] unless the complex verifies.
    pub fn require_manifold(&self) -> Result<()> {
        match self.manifold_violation()? {
            None => Ok(()),
            Some(reason) => Err(Error::NotAManifold { reason }),
        }
    }

    /// Whether consistent orientations can be assigned to all top faces, so
    /// that each shared codimension-1 face receives opposite induced
    /// orientations from its two cofacets. Decided by sign propagation over
    /// the dual adjacency; the convention is that a facet's orientation is
    /// the propagated sign relative to its stored sorted vertex order.
    pub fn is_orientable(&self) -> Result<bool> {
        self.require_manifold()?;
        let d = self.dimension().expect("manifold is nonempty");
        let facets: Vec<&Simplex> = self.faces_of_dim(d).collect();

        // ridge -> [(facet index, position of the vertex removed)]
        let mut cofacets: BTreeMap<Simplex, Vec<(usize, usize)>> = BTreeMap::new();
        for (fi, facet) in facets.iter().enumerate() {
            for (pos, ridge) in facet.boundary().into_iter().enumerate() {
                cofacets.entry(ridge).or_default().push((fi, pos));
            }
        }

        let mut sign: Vec<i8> = vec![0; facets.len()];
        for root in 0..facets.len() {
            if sign[root] != 0 {
                continue;
            }
            sign[root] = 1;
            let mut queue = VecDeque::from([root]);
            while let Some(fi) = queue.pop_front() {
                for (pos, ridge) in facets[fi].boundary().into_iter().enumerate() {
                    for &(other, other_pos) in &cofacets[&ridge] {
                        if other == fi {
                            continue;
                        }
                        // The boundary face at position `pos` carries induced
                        // sign s * (-1)^pos; the two cofacets must induce
                        // opposite signs on the shared ridge.
                        let parity = ((pos + other_pos) % 2 == 0) as i8 * 2 - 1;
                        let required = -sign[fi] * parity;
                        if sign[other] == 0 {
                            sign[other] = required;
                            queue.push_back(other);
                        } else if sign[other] != required {
                            return Ok(false);
                        }
                    }
                }
            }
        }
        Ok(true)
    }

    /// GF(2) Betti numbers `(beta_0, ..., beta_d)` via boundary-matrix ranks:
    /// `beta_k = f_k - rank ∂_k - rank ∂_{k+1}`.
    pub fn betti_gf2(&self) -> Vec<usize> {
        let Some(d) = self.dimension() else {
            return Vec::new();
        };
        let ranks: Vec<usize> = (0..=d + 1)
            .map(|k| {
                if k == 0 || k > d {
                    0
                } else {
                    gf2::rank(&self.boundary_matrix(k))
                }
            })
            .collect();
        (0..=d)
            .map(|k| self.face_count(k) - ranks[k] - ranks[k + 1])
            .collect()
    }

    /// The mod-2 boundary matrix of `∂_k : C_k -> C_{k-1}` with one row per
    /// (k-1)-simplex and one column per k-simplex.
    pub(crate) fn boundary_matrix(&self, k: usize) -> gf2::Matrix {
        assert!(k >= 1);
        let rows_index: HashMap<&Simplex, usize> = self
            .faces_of_dim(k - 1)
            .enumerate()
            .map(|(i, s)| (s, i))
            .collect();
        let mut matrix = gf2::Matrix::zero(self.face_count(k - 1), self.face_count(k));
        for (col, face) in self.faces_of_dim(k).enumerate() {
            for sub in face.boundary() {
                matrix.set(rows_index[&sub], col);
            }
        }
        matrix
    }

    /// Classifies a connected closed surface from its Euler characteristic and
    /// orientability: orientable gives genus `(2-chi)/2`, non-orientable gives
    /// crosscap count `2-chi`.
    pub fn classify_surface(&self) -> Result<SurfaceClass> {
        match self.dimension() {
            Some(2) => {}
            Some(d) => {
                return Err(Error::UnsupportedDimension {
                    dimension: d,
                    expected: "2",
                })
            }
            None => {
                return Err(Error::NotAManifold {
                    reason: "empty complex".to_string(),
                })
            }
        }
        self.require_manifold()?;
        let chi = self.euler_characteristic();
        if self.is_orientable()? {
            if chi % 2 != 0 || chi > 2 {
                return Err(Error::ParityViolation { chi });
            }
            Ok(SurfaceClass::new(true, ((2 - chi) / 2) as usize))
        } else {
            if chi > 1 {
                return Err(Error::ParityViolation { chi });
            }
            Ok(SurfaceClass::new(false, (2 - chi) as usize))
        }
    }

    /// f-vector, Euler characteristic, orientability, and GF(2) Betti numbers
    /// in one call. Requires a manifold (orientability needs one).
    pub fn invariant_summary(&self) -> Result<InvariantSummary> {
        Ok(InvariantSummary {
            f_vector: self.f_vector(),
            euler_characteristic: self.euler_characteristic(),
            orientable: self.is_orientable()?,
            betti_gf2: self.betti_gf2(),
        })
    }
}

/// True iff the complex is a single cycle: connected, 1-dimensional, and every
/// vertex has exactly two incident edges.
fn link_is_circle(link: &SimplicialComplex) -> bool {
    if link.dimension() != Some(1) {
        return false;
    }
    let mut degree: HashMap<u32, usize> = link.vertices().map(|v| (v, 0)).collect();
    for e in link.faces_of_dim(1) {
        for &v in e.vertices() {
            *degree.get_mut(&v).expect("edge vertex is a face") += 1;
        }
    }
    degree.values().all(|&deg| deg == 2) && link.is_connected()
}

/// True iff the complex is a triangulated 2-sphere, characterized as pure
/// 2-dimensional, closed (every edge in exactly two triangles), connected,
/// with Euler characteristic 2. A closed connected surface with chi = 2 is a
/// sphere, so no recursive link check is needed.
fn link_is_two_sphere(link: &SimplicialComplex) -> bool {
    if link.dimension() != Some(2) {
        return false;
    }
    let mut edge_count: HashMap<&Simplex, usize> = link.faces_of_dim(1).map(|e| (e, 0)).collect();
    for t in link.faces_of_dim(2) {
        for e in t.boundary() {
            match edge_count.get_mut(&e) {
                Some(c) => *c += 1,
                None => return false,
            }
        }
    }
    edge_count.values().all(|&c| c == 2)
        && link.is_pure()
        && link.is_connected()
        && link.euler_characteristic() == 2
}

/// The canonical seed complexes: the boundary of the 3-simplex, the 7-vertex
/// torus, and the 6-vertex projective plane.
pub fn minimal_triangulation(seed: SeedSurface) -> SimplicialComplex {
    let facets: Vec<Vec<u32>> = match seed {
        SeedSurface::Sphere => vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]],
        SeedSurface::Torus => (0..7u32)
            .flat_map(|i| {
                [
                    vec![i, (i + 1) % 7, (i + 3) % 7],
                    vec![i, (i + 2) % 7, (i + 3) % 7],
                ]
            })
            .collect(),
        SeedSurface::ProjectivePlane => vec![
            vec![0, 1, 3],
            vec![0, 1, 4],
            vec![0, 2, 3],
            vec![0, 2, 5],
            vec![0, 4, 5],
            vec![1, 2, 4],
            vec![1, 2, 5],
            vec![1, 3, 5],
            vec![2, 3, 4],
            vec![3, 4, 5],
        ],
    };
    SimplicialComplex::from_top_faces(&facets, 2).expect("seed tables are valid")
}

/// The boundary of the 4-simplex: the minimal triangulation of the 3-sphere.
pub fn boundary_of_4_simplex() -> SimplicialComplex {
    let facets: Vec<Vec<u32>> = (0..5u32)
        .map(|skip| (0..5u32).filter(|&v| v != skip).collect())
        .collect();
    SimplicialComplex::from_top_faces(&facets, 3).expect("seed table is valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sphere() -> SimplicialComplex {
        minimal_triangulation(SeedSurface::Sphere)
    }

    fn torus() -> SimplicialComplex {
        minimal_triangulation(SeedSurface::Torus)
    }

    fn projective_plane() -> SimplicialComplex {
        minimal_triangulation(SeedSurface::ProjectivePlane)
    }

    #[test]
    fn closure_of_tetrahedron_boundary() {
        let t = sphere();
        assert_eq!(t.f_vector(), FVector(vec![4, 6, 4]));
        assert_eq!(t.euler_characteristic(), 2);
    }

    #[test]
    fn closure_of_4_simplex_boundary() {
        let t = boundary_of_4_simplex();
        assert_eq!(t.f_vector(), FVector(vec![5, 10, 10, 5]));
        assert_eq!(t.euler_characteristic(), 0);
    }

    #[test]
    fn wrong_arity_is_rejected() {
        let err = SimplicialComplex::from_top_faces(&[vec![1, 2], vec![1, 3]], 2).unwrap_err();
        assert!(matches!(err, Error::WrongFaceArity { .. }));
        // Repeated vertex collapses below the required arity.
        let err = SimplicialComplex::from_top_faces(&[vec![1, 2, 2]], 2).unwrap_err();
        assert!(matches!(err, Error::WrongFaceArity { .. }));
    }

    #[test]
    fn empty_input_is_rejected() {
        assert_eq!(
            SimplicialComplex::from_top_faces(&[], 2).unwrap_err(),
            Error::EmptyInput
        );
    }

    #[test]
    fn duplicate_top_faces_collapse_with_warning() {
        let (t, dups) =
            SimplicialComplex::from_top_faces_report(&[vec![3, 1, 2], vec![1, 2, 3]], 2).unwrap();
        assert!(dups);
        assert_eq!(t.f_vector(), FVector(vec![3, 3, 1]));
        let (_, clean) = SimplicialComplex::from_top_faces_report(&[vec![1, 2, 3]], 2).unwrap();
        assert!(!clean);
    }

    #[test]
    fn canonical_labels_are_dense_and_order_preserving() {
        let t = SimplicialComplex::from_top_faces(&[vec![10, 20, 30], vec![20, 30, 40]], 2)
            .unwrap();
        assert!(t.is_canonical());
        assert_eq!(t.vertices().collect::<Vec<_>>(), vec![0, 1, 2, 3]);
    }

    #[test]
    fn seed_f_vectors() {
        assert_eq!(torus().f_vector(), FVector(vec![7, 21, 14]));
        assert_eq!(projective_plane().f_vector(), FVector(vec![6, 15, 10]));
    }

    #[test]
    fn seed_euler_characteristics() {
        assert_eq!(torus().euler_characteristic(), 0);
        assert_eq!(projective_plane().euler_characteristic(), 1);
    }

    #[test]
    fn link_of_sphere_vertex_is_triangle_cycle() {
        let t = sphere();
        let link = t.link(&Simplex::new(vec![0]).unwrap()).unwrap();
        assert_eq!(link.f_vector(), FVector(vec![3, 3]));
    }

    #[test]
    fn link_of_3_sphere_vertex_is_tetrahedron_boundary() {
        let t = boundary_of_4_simplex();
        let link = t.link(&Simplex::new(vec![0]).unwrap()).unwrap();
        assert_eq!(link.f_vector(), FVector(vec![4, 6, 4]));
        assert!(link_is_two_sphere(&link));
    }

    #[test]
    fn link_of_edge_is_two_points() {
        let t = sphere();
        let link = t.link(&Simplex::new(vec![0, 1]).unwrap()).unwrap();
        assert_eq!(link.f_vector(), FVector(vec![2]));
        assert_eq!(link.dimension(), Some(0));
    }

    #[test]
    fn link_of_missing_face_errors() {
        let t = sphere();
        let err = t.link(&Simplex::new(vec![0, 4]).unwrap()).unwrap_err();
        assert!(matches!(err, Error::FaceNotPresent { .. }));
    }

    #[test]
    fn manifold_checks() {
        assert!(sphere().is_combinatorial_manifold().unwrap());
        assert!(torus().is_combinatorial_manifold().unwrap());
        assert!(projective_plane().is_combinatorial_manifold().unwrap());
        assert!(boundary_of_4_simplex().is_combinatorial_manifold().unwrap());

        // Two triangles sharing an edge: vertex links are paths, not cycles.
        let open = SimplicialComplex::from_top_faces(&[vec![1, 2, 3], vec![1, 2, 4]], 2).unwrap();
        assert!(!open.is_combinatorial_manifold().unwrap());

        // Two disjoint spheres: disconnected.
        let two = SimplicialComplex::from_top_faces(
            &[
                vec![0, 1, 2],
                vec![0, 1, 3],
                vec![0, 2, 3],
                vec![1, 2, 3],
                vec![4, 5, 6],
                vec![4, 5, 7],
                vec![4, 6, 7],
                vec![5, 6, 7],
            ],
            2,
        )
        .unwrap();
        assert!(!two.is_combinatorial_manifold().unwrap());
        assert_eq!(two.connected_components(), 2);
    }

    #[test]
    fn orientability() {
        assert!(sphere().is_orientable().unwrap());
        assert!(torus().is_orientable().unwrap());
        assert!(!projective_plane().is_orientable().unwrap());
        assert!(boundary_of_4_simplex().is_orientable().unwrap());
    }

    #[test]
    fn orientability_requires_manifold() {
        let open = SimplicialComplex::from_top_faces(&[vec![1, 2, 3], vec![1, 2, 4]], 2).unwrap();
        assert!(matches!(
            open.is_orientable().unwrap_err(),
            Error::NotAManifold { .. }
        ));
    }

    #[test]
    fn betti_numbers_gf2() {
        assert_eq!(sphere().betti_gf2(), vec![1, 0, 1]);
        assert_eq!(projective_plane().betti_gf2(), vec![1, 1, 1]);
        assert_eq!(torus().betti_gf2(), vec![1, 2, 1]);
        assert_eq!(boundary_of_4_simplex().betti_gf2(), vec![1, 0, 0, 1]);
    }

    #[test]
    fn euler_poincare_holds_on_seeds() {
        for t in [
            sphere(),
            torus(),
            projective_plane(),
            boundary_of_4_simplex(),
        ] {
            let alt: i64 = t
                .betti_gf2()
                .iter()
                .enumerate()
                .map(|(k, &b)| if k % 2 == 0 { b as i64 } else { -(b as i64) })
                .sum();
            assert_eq!(alt, t.euler_characteristic());
        }
    }

    #[test]
    fn surface_classification() {
        let s2 = sphere().classify_surface().unwrap();
        assert_eq!(s2, SurfaceClass::new(true, 0));
        assert_eq!(s2.canonical_name, "S2");

        let t2 = torus().classify_surface().unwrap();
        assert_eq!(t2, SurfaceClass::new(true, 1));
        assert_eq!(t2.canonical_name, "T2#1");

        let rp2 = projective_plane().classify_surface().unwrap();
        assert_eq!(rp2, SurfaceClass::new(false, 1));
        assert_eq!(rp2.canonical_name, "RP2#1");
    }

    #[test]
    fn classify_rejects_3_manifolds() {
        assert!(matches!(
            boundary_of_4_simplex().classify_surface().unwrap_err(),
            Error::UnsupportedDimension { .. }
        ));
    }

    #[test]
    fn classification_survives_relabeling() {
        let t = projective_plane();
        let perm = vec![3, 0, 5, 1, 4, 2];
        let p = t.permuted(&perm).unwrap();
        assert_eq!(
            p.classify_surface().unwrap(),
            t.classify_surface().unwrap()
        );
        assert_eq!(p.f_vector(), t.f_vector());
    }

    #[test]
    fn closure_idempotence() {
        for t in [sphere(), torus(), projective_plane(), boundary_of_4_simplex()] {
            let rebuilt =
                SimplicialComplex::from_top_faces(&t.top_faces(), t.dimension().unwrap()).unwrap();
            assert_eq!(rebuilt, t);
        }
    }

    #[test]
    fn surface_class_names_round_trip() {
        for class in [
            SurfaceClass::new(true, 0),
            SurfaceClass::new(true, 3),
            SurfaceClass::new(false, 2),
        ] {
            assert_eq!(SurfaceClass::parse(&class.canonical_name).unwrap(), class);
        }
        assert!(SurfaceClass::parse("T2#0").is_err());
        assert!(SurfaceClass::parse("K2").is_err());
    }
}

//! The bistellar (Pachner) moves in dimensions 2 and 3, with validity
//! checking, deterministic enumeration, and seeded random walks.
//!
//! Moves are local re-triangulations that preserve the homeomorphism type:
//! (1,3)/(3,1)/(2,2) on surfaces and (1,4)/(4,1)/(2,3)/(3,2) on 3-manifolds.
//! A move that would introduce an already-present face is invalid (set
//! semantics leave no room for doubled simplices), and the blocking face is
//! reported for debugging.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complex::{Simplex, SimplicialComplex};
use crate::error::{Error, Result};

/// Move kinds; `M13`/`M31`/`M22` act on surfaces, the rest on 3-manifolds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MoveKind {
    /// Split a triangle into three around a fresh vertex.
    M13,
    /// Collapse the star of a degree-3 vertex to a single triangle.
    M31,
    /// Flip the shared edge of two adjacent triangles.
    M22,
    /// Split a tetrahedron into four around a fresh vertex.
    M14,
    /// Collapse the star of a valence-4 vertex to a single tetrahedron.
    M41,
    /// Replace two tetrahedra sharing a triangle by three around a new edge.
    M23,
    /// Replace three tetrahedra around a valence-3 edge by two.
    M32,
}

impl MoveKind {
    pub fn name(self) -> &'static str {
        match self {
            MoveKind::M13 => "1-3",
            MoveKind::M31 => "3-1",
            MoveKind::M22 => "2-2",
            MoveKind::M14 => "1-4",
            MoveKind::M41 => "4-1",
            MoveKind::M23 => "2-3",
            MoveKind::M32 => "3-2",
        }
    }

    /// Moves that add a vertex; these are excluded once a walk reaches its
    /// vertex cap.
    pub fn grows_vertex_count(self) -> bool {
        matches!(self, MoveKind::M13 | MoveKind::M14)
    }
}

impl fmt::Display for MoveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A move together with the face it acts on: the split simplex (M13/M14), the
/// collapsed vertex (M31/M41), the flipped edge (M22/M32), or the shared
/// triangle (M23).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MoveDescriptor {
    pub kind: MoveKind,
    pub anchor: Simplex,
}

impl fmt::Display for MoveDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} @ {}", self.kind, self.anchor)
    }
}

/// Outcome of a random walk. `steps_taken` can fall short of the request only
/// when no valid move existed at some step (possible only at the vertex cap).
#[derive(Debug, Clone)]
pub struct WalkResult {
    pub complex: SimplicialComplex,
    pub steps_taken: usize,
}

/// All moves whose preconditions hold, sorted by kind then anchor.
pub fn enumerate_valid_moves(t: &SimplicialComplex) -> Result<Vec<MoveDescriptor>> {
    t.require_manifold()?;
    Ok(enumerate_assuming_manifold(t))
}

pub(crate) fn enumerate_assuming_manifold(t: &SimplicialComplex) -> Vec<MoveDescriptor> {
    let d = t.dimension().expect("manifold is nonempty");
    let facets: Vec<&Simplex> = t.faces_of_dim(d).collect();
    let mut by_vertex: HashMap<u32, Vec<usize>> = HashMap::new();
    let mut by_ridge: HashMap<Simplex, Vec<usize>> = HashMap::new();
    let mut by_edge: HashMap<Simplex, Vec<usize>> = HashMap::new();
    for (i, facet) in facets.iter().enumerate() {
        for &v in facet.vertices() {
            by_vertex.entry(v).or_default().push(i);
        }
        for ridge in facet.boundary() {
            by_ridge.entry(ridge).or_default().push(i);
        }
        if d == 3 {
            for sub in facet.subsimplices() {
                if sub.dimension() == 1 {
                    by_edge.entry(sub).or_default().push(i);
                }
            }
        }
    }
    let resolve =
        |ids: &[usize]| -> Vec<&Simplex> { ids.iter().map(|&i| facets[i]).collect() };

    let mut moves: Vec<MoveDescriptor> = Vec::new();

    // Splits are always valid.
    let split_kind = if d == 2 { MoveKind::M13 } else { MoveKind::M14 };
    for facet in &facets {
        moves.push(MoveDescriptor {
            kind: split_kind,
            anchor: (*facet).clone(),
        });
    }

    // Vertex collapses.
    let collapse_kind = if d == 2 { MoveKind::M31 } else { MoveKind::M41 };
    for vertex in t.faces_of_dim(0) {
        let star = resolve(&by_vertex[&vertex.vertices()[0]]);
        if vertex_collapse_target(t, vertex, &star).is_ok() {
            moves.push(MoveDescriptor {
                kind: collapse_kind,
                anchor: vertex.clone(),
            });
        }
    }

    if d == 2 {
        for edge in t.faces_of_dim(1) {
            let wings = resolve(&by_ridge[edge]);
            if edge_flip_replacement(t, edge, &wings).is_ok() {
                moves.push(MoveDescriptor {
                    kind: MoveKind::M22,
                    anchor: edge.clone(),
                });
            }
        }
    } else {
        for triangle in t.faces_of_dim(2) {
            let stars = resolve(&by_ridge[triangle]);
            if triangle_split_apexes(t, triangle, &stars).is_ok() {
                moves.push(MoveDescriptor {
                    kind: MoveKind::M23,
                    anchor: triangle.clone(),
                });
            }
        }
        for edge in t.faces_of_dim(1) {
            let around = resolve(&by_edge[edge]);
            if edge_collapse_triangle(t, edge, &around).is_ok() {
                moves.push(MoveDescriptor {
                    kind: MoveKind::M32,
                    anchor: edge.clone(),
                });
            }
        }
    }

    moves.sort();
    moves
}

/// Cofacets of `face` by direct scan; enumeration uses precomputed maps
/// instead, this is for one-off validation inside [`apply_pachner`].
fn cofacets(t: &SimplicialComplex, face: &Simplex) -> Vec<Simplex> {
    let d = t.dimension().expect("nonempty");
    t.faces_of_dim(d)
        .filter(|facet| face.is_face_of(facet))
        .cloned()
        .collect()
}

/// For M31/M41: the simplex that replaces the star of `vertex`, i.e. its
/// link vertex set. `star` must be the facets containing `vertex`.
fn vertex_collapse_target(
    t: &SimplicialComplex,
    vertex: &Simplex,
    star: &[&Simplex],
) -> Result<Simplex> {
    let d = t.dimension().expect("nonempty");
    let kind = if d == 2 { "3-1" } else { "4-1" };
    if star.len() != d + 1 {
        return Err(Error::InvalidMove {
            kind,
            anchor: vertex.vertices().to_vec(),
            reason: "vertex star is not minimal",
            blocking: vec![],
        });
    }
    let v = vertex.vertices()[0];
    let link_vertices: BTreeSet<u32> = star
        .iter()
        .flat_map(|facet| facet.vertices().iter().copied())
        .filter(|&w| w != v)
        .collect();
    if link_vertices.len() != d + 1 {
        return Err(Error::InvalidMove {
            kind,
            anchor: vertex.vertices().to_vec(),
            reason: "link is not the boundary of a simplex",
            blocking: vec![],
        });
    }
    let target = Simplex::new(link_vertices.into_iter().collect::<Vec<_>>())?;
    if t.contains(&target) {
        return Err(Error::InvalidMove {
            kind,
            anchor: vertex.vertices().to_vec(),
            reason: "replacement simplex already present",
            blocking: target.vertices().to_vec(),
        });
    }
    Ok(target)
}

/// For M22: the opposite edge `{c,d}` of the flip across `edge = {a,b}`.
/// `wings` must be the triangles containing `edge`.
fn edge_flip_replacement(
    t: &SimplicialComplex,
    edge: &Simplex,
    wings: &[&Simplex],
) -> Result<Simplex> {
    if wings.len() != 2 {
        return Err(Error::InvalidMove {
            kind: "2-2",
            anchor: edge.vertices().to_vec(),
            reason: "edge does not have exactly two cofacets",
            blocking: vec![],
        });
    }
    let apex = |tri: &Simplex| -> u32 {
        *tri.vertices()
            .iter()
            .find(|v| !edge.contains_vertex(**v))
            .expect("triangle has a vertex off its edge")
    };
    let opposite = Simplex::new(vec![apex(wings[0]), apex(wings[1])])?;
    if t.contains(&opposite) {
        return Err(Error::InvalidMove {
            kind: "2-2",
            anchor: edge.vertices().to_vec(),
            reason: "opposite edge already present",
            blocking: opposite.vertices().to_vec(),
        });
    }
    Ok(opposite)
}

/// For M23: the two apexes `d`, `e` across the shared `triangle`. `stars`
/// must be the tetrahedra containing `triangle`.
fn triangle_split_apexes(
    t: &SimplicialComplex,
    triangle: &Simplex,
    stars: &[&Simplex],
) -> Result<(u32, u32)> {
    if stars.len() != 2 {
        return Err(Error::InvalidMove {
            kind: "2-3",
            anchor: triangle.vertices().to_vec(),
            reason: "triangle does not have exactly two cofacets",
            blocking: vec![],
        });
    }
    let apex = |tet: &Simplex| -> u32 {
        *tet.vertices()
            .iter()
            .find(|v| !triangle.contains_vertex(**v))
            .expect("tetrahedron has a vertex off its triangle")
    };
    let (p, q) = (apex(stars[0]), apex(stars[1]));
    let new_edge = Simplex::new(vec![p, q])?;
    if t.contains(&new_edge) {
        return Err(Error::InvalidMove {
            kind: "2-3",
            anchor: triangle.vertices().to_vec(),
            reason: "apex edge already present",
            blocking: new_edge.vertices().to_vec(),
        });
    }
    Ok((p, q))
}

/// For M32: the triangle `{a,b,c}` replacing a valence-3 `edge`. `around`
/// must be the tetrahedra containing `edge`.
fn edge_collapse_triangle(
    t: &SimplicialComplex,
    edge: &Simplex,
    around: &[&Simplex],
) -> Result<Simplex> {
    if around.len() != 3 {
        return Err(Error::InvalidMove {
            kind: "3-2",
            anchor: edge.vertices().to_vec(),
            reason: "edge valence is not 3",
            blocking: vec![],
        });
    }
    let mut third: BTreeSet<u32> = BTreeSet::new();
    for tet in around {
        for &v in tet.vertices() {
            if !edge.contains_vertex(v) {
                third.insert(v);
            }
        }
    }
    if third.len() != 3 {
        return Err(Error::InvalidMove {
            kind: "3-2",
            anchor: edge.vertices().to_vec(),
            reason: "surrounding tetrahedra do not close up over a triangle",
            blocking: vec![],
        });
    }
    let triangle = Simplex::new(third.into_iter().collect::<Vec<_>>())?;
    if t.contains(&triangle) {
        return Err(Error::InvalidMove {
            kind: "3-2",
            anchor: edge.vertices().to_vec(),
            reason: "replacement triangle already present",
            blocking: triangle.vertices().to_vec(),
        });
    }
    Ok(triangle)
}

/// Applies one Pachner move. The result has the same dimension, Euler
/// characteristic, orientability, and GF(2) Betti numbers; vertex labels are
/// re-canonicalized when a vertex disappears.
pub fn apply_pachner(t: &SimplicialComplex, m: &MoveDescriptor) -> Result<SimplicialComplex> {
    let d = t.dimension().ok_or(Error::EmptyInput)?;
    let anchor = &m.anchor;
    let arity = |expected: usize| -> Result<()> {
        if anchor.dimension() != expected {
            Err(Error::InvalidMove {
                kind: m.kind.name(),
                anchor: anchor.vertices().to_vec(),
                reason: "anchor dimension does not match the move kind",
                blocking: vec![],
            })
        } else {
            Ok(())
        }
    };
    if !t.contains(anchor) {
        return Err(Error::FaceNotPresent {
            face: anchor.vertices().to_vec(),
        });
    }

    let mut add: Vec<Simplex> = Vec::new();
    let mut remove: Vec<Simplex> = Vec::new();
    match (m.kind, d) {
        (MoveKind::M13, 2) | (MoveKind::M14, 3) => {
            arity(d)?;
            let apex = t.fresh_vertex_id();
            remove.push(anchor.clone());
            add.push(Simplex::new(vec![apex])?);
            for sub in anchor.subsimplices() {
                if sub.dimension() < d {
                    add.push(sub.cone(apex));
                }
            }
        }
        (MoveKind::M31, 2) | (MoveKind::M41, 3) => {
            arity(0)?;
            let star = cofacets(t, anchor);
            let star_refs: Vec<&Simplex> = star.iter().collect();
            let target = vertex_collapse_target(t, anchor, &star_refs)?;
            add.push(target);
            for face in t.all_faces() {
                if anchor.is_face_of(face) {
                    remove.push(face.clone());
                }
            }
        }
        (MoveKind::M22, 2) => {
            arity(1)?;
            let wings = cofacets(t, anchor);
            let wing_refs: Vec<&Simplex> = wings.iter().collect();
            let opposite = edge_flip_replacement(t, anchor, &wing_refs)?;
            remove.extend(wings.iter().cloned());
            remove.push(anchor.clone());
            for &v in anchor.vertices() {
                add.push(opposite.cone(v));
            }
            add.push(opposite);
        }
        (MoveKind::M23, 3) => {
            arity(2)?;
            let stars = cofacets(t, anchor);
            let star_refs: Vec<&Simplex> = stars.iter().collect();
            let (p, q) = triangle_split_apexes(t, anchor, &star_refs)?;
            let apex_edge = Simplex::new(vec![p, q])?;
            remove.push(anchor.clone());
            remove.push(anchor.cone(p));
            remove.push(anchor.cone(q));
            for &v in anchor.vertices() {
                add.push(apex_edge.cone(v));
            }
            for pair in anchor.boundary() {
                add.push(pair.join(&apex_edge));
            }
            add.push(apex_edge);
        }
        (MoveKind::M32, 3) => {
            arity(1)?;
            let around: Vec<Simplex> = cofacets_of_edge(t, anchor);
            let around_refs: Vec<&Simplex> = around.iter().collect();
            let triangle = edge_collapse_triangle(t, anchor, &around_refs)?;
            remove.push(anchor.clone());
            for &v in triangle.vertices() {
                remove.push(anchor.cone(v));
            }
            for pair in triangle.boundary() {
                remove.push(pair.join(anchor));
            }
            for &v in anchor.vertices() {
                add.push(triangle.cone(v));
            }
            add.push(triangle);
        }
        _ => {
            return Err(Error::InvalidMove {
                kind: m.kind.name(),
                anchor: anchor.vertices().to_vec(),
                reason: "move kind does not apply in this dimension",
                blocking: vec![],
            })
        }
    }

    let mut faces: BTreeSet<Simplex> = t.all_faces().cloned().collect();
    for s in remove {
        faces.remove(&s);
    }
    for s in add {
        faces.insert(s);
    }
    Ok(SimplicialComplex::from_closed_faces(faces).canonicalized())
}

/// Tetrahedra containing `edge` (an edge is codimension 2 in 3D, so the ridge
/// scan in [`cofacets`] does not apply).
fn cofacets_of_edge(t: &SimplicialComplex, edge: &Simplex) -> Vec<Simplex> {
    t.faces_of_dim(3)
        .filter(|tet| edge.is_face_of(tet))
        .cloned()
        .collect()
}

/// Applies `steps` moves drawn uniformly from the valid-move list, excluding
/// vertex-growing moves once `max_vertices` is reached. Deterministic per
/// seed. Terminates early (reporting the shorter count) only if no valid move
/// exists at some step.
pub fn random_pachner_walk(
    t: &SimplicialComplex,
    steps: usize,
    max_vertices: usize,
    seed: u64,
) -> Result<WalkResult> {
    t.require_manifold()?;
    if max_vertices < t.vertex_count() {
        return Err(Error::InvalidParameter(format!(
            "max_vertices {} is below the current vertex count {}",
            max_vertices,
            t.vertex_count()
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut current = t.clone();
    let mut taken = 0;
    for _ in 0..steps {
        let mut moves = enumerate_assuming_manifold(&current);
        if current.vertex_count() >= max_vertices {
            moves.retain(|m| !m.kind.grows_vertex_count());
        }
        if moves.is_empty() {
            break;
        }
        let pick = rng.random_range(0..moves.len());
        current = apply_pachner(&current, &moves[pick])?;
        taken += 1;
    }
    Ok(WalkResult {
        complex: current,
        steps_taken: taken,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{boundary_of_4_simplex, minimal_triangulation, FVector, SeedSurface};

    fn sphere() -> SimplicialComplex {
        minimal_triangulation(SeedSurface::Sphere)
    }

    fn torus() -> SimplicialComplex {
        minimal_triangulation(SeedSurface::Torus)
    }

    #[test]
    fn sphere_admits_only_splits() {
        // K4 skeleton: every 2-2 flip and every 3-1 collapse is blocked.
        let moves = enumerate_valid_moves(&sphere()).unwrap();
        assert_eq!(moves.len(), 4);
        assert!(moves.iter().all(|m| m.kind == MoveKind::M13));
    }

    #[test]
    fn three_sphere_admits_only_splits() {
        let moves = enumerate_valid_moves(&boundary_of_4_simplex()).unwrap();
        assert_eq!(moves.len(), 5);
        assert!(moves.iter().all(|m| m.kind == MoveKind::M14));
    }

    #[test]
    fn torus_has_no_vertex_collapse() {
        // Every vertex of the 7-vertex torus has degree 6.
        let moves = enumerate_valid_moves(&torus()).unwrap();
        assert!(moves.iter().all(|m| m.kind != MoveKind::M31));
    }

    #[test]
    fn split_deltas() {
        let t = sphere();
        let m = MoveDescriptor {
            kind: MoveKind::M13,
            anchor: Simplex::new(vec![0, 1, 2]).unwrap(),
        };
        let after = apply_pachner(&t, &m).unwrap();
        assert_eq!(after.f_vector(), FVector(vec![5, 9, 6]));
        assert_eq!(after.euler_characteristic(), 2);

        let t3 = boundary_of_4_simplex();
        let m3 = MoveDescriptor {
            kind: MoveKind::M14,
            anchor: Simplex::new(vec![0, 1, 2, 3]).unwrap(),
        };
        let after3 = apply_pachner(&t3, &m3).unwrap();
        assert_eq!(after3.f_vector(), FVector(vec![6, 14, 16, 8]));
        assert_eq!(after3.euler_characteristic(), 0);
    }

    #[test]
    fn flip_on_sphere_is_blocked() {
        let t = sphere();
        let m = MoveDescriptor {
            kind: MoveKind::M22,
            anchor: Simplex::new(vec![0, 1]).unwrap(),
        };
        let err = apply_pachner(&t, &m).unwrap_err();
        match err {
            Error::InvalidMove { blocking, .. } => assert_eq!(blocking, vec![2, 3]),
            other => panic!("expected InvalidMove, got {other:?}"),
        }
    }

    #[test]
    fn missing_anchor_is_reported() {
        let m = MoveDescriptor {
            kind: MoveKind::M13,
            anchor: Simplex::new(vec![0, 1, 9]).unwrap(),
        };
        assert!(matches!(
            apply_pachner(&sphere(), &m).unwrap_err(),
            Error::FaceNotPresent { .. }
        ));
    }

    #[test]
    fn split_then_collapse_is_identity() {
        let t = sphere();
        let split = MoveDescriptor {
            kind: MoveKind::M13,
            anchor: Simplex::new(vec![0, 1, 2]).unwrap(),
        };
        let grown = apply_pachner(&t, &split).unwrap();
        // The fresh vertex got the next dense label.
        let collapse = MoveDescriptor {
            kind: MoveKind::M31,
            anchor: Simplex::new(vec![4]).unwrap(),
        };
        let back = apply_pachner(&grown, &collapse).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn split_then_collapse_is_identity_3d() {
        let t = boundary_of_4_simplex();
        let split = MoveDescriptor {
            kind: MoveKind::M14,
            anchor: Simplex::new(vec![0, 1, 2, 3]).unwrap(),
        };
        let grown = apply_pachner(&t, &split).unwrap();
        let collapse = MoveDescriptor {
            kind: MoveKind::M41,
            anchor: Simplex::new(vec![5]).unwrap(),
        };
        let back = apply_pachner(&grown, &collapse).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn flip_twice_is_identity() {
        // Grow the sphere once so a valid flip exists, then flip back.
        let t = apply_pachner(
            &sphere(),
            &MoveDescriptor {
                kind: MoveKind::M13,
                anchor: Simplex::new(vec![0, 1, 2]).unwrap(),
            },
        )
        .unwrap();
        let flips: Vec<MoveDescriptor> = enumerate_valid_moves(&t)
            .unwrap()
            .into_iter()
            .filter(|m| m.kind == MoveKind::M22)
            .collect();
        assert!(!flips.is_empty());
        for flip in flips {
            let once = apply_pachner(&t, &flip).unwrap();
            assert_eq!(once.f_vector(), t.f_vector());
            let wings = cofacets(&t, &flip.anchor);
            let wing_refs: Vec<&Simplex> = wings.iter().collect();
            let opposite = edge_flip_replacement(&t, &flip.anchor, &wing_refs).unwrap();
            let back = apply_pachner(
                &once,
                &MoveDescriptor {
                    kind: MoveKind::M22,
                    anchor: opposite,
                },
            )
            .unwrap();
            assert_eq!(back, t);
        }
    }

    #[test]
    fn triangle_split_then_edge_collapse_is_identity() {
        // On the 3-sphere boundary itself every 2-3 move is blocked (K5
        // skeleton); grow it once to create valid configurations.
        let t = apply_pachner(
            &boundary_of_4_simplex(),
            &MoveDescriptor {
                kind: MoveKind::M14,
                anchor: Simplex::new(vec![0, 1, 2, 3]).unwrap(),
            },
        )
        .unwrap();
        let splits: Vec<MoveDescriptor> = enumerate_valid_moves(&t)
            .unwrap()
            .into_iter()
            .filter(|m| m.kind == MoveKind::M23)
            .collect();
        assert!(!splits.is_empty());
        for split in splits {
            let stars = cofacets(&t, &split.anchor);
            let star_refs: Vec<&Simplex> = stars.iter().collect();
            let (p, q) = triangle_split_apexes(&t, &split.anchor, &star_refs).unwrap();
            let after = apply_pachner(&t, &split).unwrap();
            let delta: Vec<i64> = after
                .f_vector()
                .0
                .iter()
                .zip(&t.f_vector().0)
                .map(|(a, b)| *a as i64 - *b as i64)
                .collect();
            assert_eq!(delta, vec![0, 1, 2, 1]);
            let collapse = MoveDescriptor {
                kind: MoveKind::M32,
                anchor: Simplex::new(vec![p, q]).unwrap(),
            };
            let back = apply_pachner(&after, &collapse).unwrap();
            assert_eq!(back, t);
        }
    }

    #[test]
    fn triangle_split_is_blocked_on_complete_skeleton() {
        let t = boundary_of_4_simplex();
        let m = MoveDescriptor {
            kind: MoveKind::M23,
            anchor: Simplex::new(vec![0, 1, 2]).unwrap(),
        };
        match apply_pachner(&t, &m).unwrap_err() {
            Error::InvalidMove { blocking, .. } => assert_eq!(blocking, vec![3, 4]),
            other => panic!("expected InvalidMove, got {other:?}"),
        }
    }

    #[test]
    fn moves_are_enumerated_in_sorted_order() {
        let t = apply_pachner(
            &sphere(),
            &MoveDescriptor {
                kind: MoveKind::M13,
                anchor: Simplex::new(vec![0, 1, 2]).unwrap(),
            },
        )
        .unwrap();
        let moves = enumerate_valid_moves(&t).unwrap();
        let mut sorted = moves.clone();
        sorted.sort();
        assert_eq!(moves, sorted);
    }

    #[test]
    fn zero_step_walk_is_identity() {
        let t = sphere();
        let walk = random_pachner_walk(&t, 0, 24, 99).unwrap();
        assert_eq!(walk.complex, t);
        assert_eq!(walk.steps_taken, 0);
    }

    #[test]
    fn walk_preserves_sphere_class() {
        let walk = random_pachner_walk(&sphere(), 50, 24, 7).unwrap();
        assert_eq!(walk.steps_taken, 50);
        assert_eq!(walk.complex.euler_characteristic(), 2);
        assert_eq!(
            walk.complex.classify_surface().unwrap().canonical_name,
            "S2"
        );
    }

    #[test]
    fn walk_preserves_torus_invariants() {
        let walk = random_pachner_walk(&torus(), 100, 24, 1).unwrap();
        assert_eq!(walk.complex.euler_characteristic(), 0);
        assert!(walk.complex.is_orientable().unwrap());
    }

    #[test]
    fn walk_respects_vertex_cap() {
        let walk = random_pachner_walk(&sphere(), 200, 10, 3).unwrap();
        assert!(walk.complex.vertex_count() <= 10);
    }

    #[test]
    fn walk_is_deterministic_per_seed() {
        let a = random_pachner_walk(&torus(), 40, 24, 5).unwrap();
        let b = random_pachner_walk(&torus(), 40, 24, 5).unwrap();
        assert_eq!(a.complex, b.complex);
        let c = random_pachner_walk(&torus(), 40, 24, 6).unwrap();
        assert!(a.complex != c.complex || a.steps_taken != c.steps_taken);
    }

    #[test]
    fn walk_requires_capacity() {
        assert!(matches!(
            random_pachner_walk(&torus(), 5, 6, 0).unwrap_err(),
            Error::InvalidParameter(_)
        ));
    }
}

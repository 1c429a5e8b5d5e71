//! Connected sums of closed surfaces.
//!
//! Removing one triangle from each summand and gluing the boundary triangles
//! vertex-by-vertex drops the Euler characteristic by 2 and keeps the result a
//! closed surface, which is exactly what iterated sums of tori and projective
//! planes need for class-creating augmentation.

use std::collections::{BTreeSet, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complex::{minimal_triangulation, SeedSurface, Simplex, SimplicialComplex};
use crate::error::{Error, Result};

/// Glues `m1` and `m2` along the removed triangles `t1` and `t2`: every `m2`
/// vertex gets a fresh label except the three vertices of `t2`, which are
/// identified with those of `t1` in sorted order. The result is a connected
/// closed surface with `chi = chi(m1) + chi(m2) - 2`; it is orientable iff
/// both inputs are.
pub fn connected_sum(
    m1: &SimplicialComplex,
    m2: &SimplicialComplex,
    t1: &Simplex,
    t2: &Simplex,
) -> Result<SimplicialComplex> {
    for m in [m1, m2] {
        match m.dimension() {
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
        m.require_manifold()?;
    }
    for (m, t) in [(m1, t1), (m2, t2)] {
        if t.dimension() != 2 || !m.contains(t) {
            return Err(Error::FaceNotPresent {
                face: t.vertices().to_vec(),
            });
        }
    }

    // m1 keeps its labels; m2 vertices get fresh ones, except the glued
    // triangle which maps onto t1 in sorted order.
    let offset = m1.fresh_vertex_id();
    let mut relabel: HashMap<u32, u32> = HashMap::new();
    for (a, b) in t2.vertices().iter().zip(t1.vertices()) {
        relabel.insert(*a, *b);
    }
    let mut next = offset;
    for v in m2.vertices() {
        relabel.entry(v).or_insert_with(|| {
            let id = next;
            next += 1;
            id
        });
    }

    let mut faces: BTreeSet<Simplex> = m1.all_faces().cloned().collect();
    faces.remove(t1);
    for face in m2.all_faces() {
        if face == t2 {
            continue;
        }
        let mapped: Vec<u32> = face.vertices().iter().map(|v| relabel[v]).collect();
        faces.insert(Simplex::new(mapped)?);
    }

    let glued = SimplicialComplex::from_closed_faces(faces).canonicalized();
    // Gluing must restore the two-triangles-per-edge property; check rather
    // than assume.
    glued.require_manifold()?;
    Ok(glued)
}

/// Glues `count` copies of a seed surface onto `m` at seeded-random
/// triangles.
pub fn attach_summands(
    m: &SimplicialComplex,
    summand: SeedSurface,
    count: usize,
    seed: u64,
) -> Result<SimplicialComplex> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut surface = m.clone();
    for _ in 0..count {
        let piece = minimal_triangulation(summand);
        let t1 = random_triangle(&surface, &mut rng);
        let t2 = random_triangle(&piece, &mut rng);
        surface = connected_sum(&surface, &piece, &t1, &t2)?;
    }
    Ok(surface)
}

/// Builds a surface of the requested class by iterated connected sums of seed
/// triangulations: a sphere base, with `count` tori (orientable) or `count`
/// projective planes (non-orientable) attached at seeded-random triangles.
pub fn build_surface(orientable: bool, count: usize, seed: u64) -> Result<SimplicialComplex> {
    if !orientable && count == 0 {
        return Err(Error::InvalidParameter(
            "a non-orientable surface needs at least one crosscap".into(),
        ));
    }
    let attach = if orientable {
        SeedSurface::Torus
    } else {
        SeedSurface::ProjectivePlane
    };
    attach_summands(&minimal_triangulation(SeedSurface::Sphere), attach, count, seed)
}

fn random_triangle(t: &SimplicialComplex, rng: &mut ChaCha8Rng) -> Simplex {
    let triangles: Vec<&Simplex> = t.faces_of_dim(2).collect();
    triangles[rng.random_range(0..triangles.len())].clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::FVector;

    fn torus() -> SimplicialComplex {
        minimal_triangulation(SeedSurface::Torus)
    }

    fn sphere() -> SimplicialComplex {
        minimal_triangulation(SeedSurface::Sphere)
    }

    fn rp2() -> SimplicialComplex {
        minimal_triangulation(SeedSurface::ProjectivePlane)
    }

    fn first_triangle(t: &SimplicialComplex) -> Simplex {
        t.faces_of_dim(2).next().unwrap().clone()
    }

    #[test]
    fn torus_sum_gives_genus_two() {
        let a = torus();
        let b = torus();
        let sum = connected_sum(&a, &b, &first_triangle(&a), &first_triangle(&b)).unwrap();
        assert_eq!(sum.euler_characteristic(), -2);
        let class = sum.classify_surface().unwrap();
        assert!(class.orientable);
        assert_eq!(class.genus_or_crosscaps, 2);
    }

    #[test]
    fn sphere_is_the_identity_of_the_sum() {
        let s = sphere();
        for m in [torus(), rp2()] {
            let sum = connected_sum(&s, &m, &first_triangle(&s), &first_triangle(&m)).unwrap();
            assert_eq!(
                sum.classify_surface().unwrap(),
                m.classify_surface().unwrap()
            );
        }
    }

    #[test]
    fn torus_with_projective_plane_gives_three_crosscaps() {
        let a = torus();
        let b = rp2();
        let sum = connected_sum(&a, &b, &first_triangle(&a), &first_triangle(&b)).unwrap();
        assert_eq!(sum.euler_characteristic(), -1);
        let class = sum.classify_surface().unwrap();
        assert!(!class.orientable);
        assert_eq!(class.genus_or_crosscaps, 3);
    }

    #[test]
    fn f_vector_identities() {
        let a = torus();
        let b = rp2();
        let sum = connected_sum(&a, &b, &first_triangle(&a), &first_triangle(&b)).unwrap();
        let (fa, fb, fs) = (a.f_vector(), b.f_vector(), sum.f_vector());
        assert_eq!(
            fs,
            FVector(vec![
                fa.0[0] + fb.0[0] - 3,
                fa.0[1] + fb.0[1] - 3,
                fa.0[2] + fb.0[2] - 2,
            ])
        );
    }

    #[test]
    fn build_surface_matches_request() {
        for (orientable, count, chi) in [
            (true, 0, 2),
            (true, 2, -2),
            (false, 1, 1),
            (false, 2, 0),
        ] {
            let surface = build_surface(orientable, count, 11).unwrap();
            assert_eq!(surface.euler_characteristic(), chi);
            let class = surface.classify_surface().unwrap();
            assert_eq!(class.orientable, orientable);
            assert_eq!(class.genus_or_crosscaps, count);
        }
    }

    #[test]
    fn non_orientable_needs_a_crosscap() {
        assert!(matches!(
            build_surface(false, 0, 1).unwrap_err(),
            Error::InvalidParameter(_)
        ));
    }

    #[test]
    fn sum_rejects_3_manifolds() {
        let t = crate::complex::boundary_of_4_simplex();
        let tri = Simplex::new(vec![0, 1, 2]).unwrap();
        assert!(matches!(
            connected_sum(&t, &t, &tri, &tri).unwrap_err(),
            Error::UnsupportedDimension { .. }
        ));
    }

    #[test]
    fn sum_rejects_missing_triangle() {
        let a = sphere();
        let fake = Simplex::new(vec![0, 1, 9]).unwrap();
        assert!(matches!(
            connected_sum(&a, &a, &fake, &first_triangle(&a)).unwrap_err(),
            Error::FaceNotPresent { .. }
        ));
    }
}

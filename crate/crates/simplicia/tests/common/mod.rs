//! Shared test fixtures: the brute-force isomorphism oracle and pools of
//! small random manifolds.
//!
#![allow(dead_code)] // each test target compiles this module and uses a subset

//! The oracle enumerates vertex bijections directly on the complexes (with
//! 1-skeleton adjacency pruning only) and shares nothing with the library's
//! color-refinement isomorphism path, so the two can check each other.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use simplicia::complex::{
    boundary_of_4_simplex, minimal_triangulation, SeedSurface, SimplicialComplex,
};
use simplicia::moves::random_pachner_walk;
use simplicia::pipeline::{DatasetRecord, Provenance, ProvenanceKind};

/// Exact isomorphism by exhaustive search over vertex bijections. Branches
/// inconsistent with the 1-skeleton are cut; complete assignments are checked
/// against the full face sets.
pub fn brute_force_isomorphic(a: &SimplicialComplex, b: &SimplicialComplex) -> bool {
    if a.f_vector() != b.f_vector() {
        return false;
    }
    let n = a.vertex_count();
    if n == 0 {
        return true;
    }
    assert!(n <= 16, "oracle is for small complexes");
    let adj_a = adjacency_masks(a);
    let adj_b = adjacency_masks(b);
    let mut image = vec![u32::MAX; n];
    let mut used = vec![false; n];
    assign(a, b, &adj_a, &adj_b, 0, &mut image, &mut used)
}

fn adjacency_masks(t: &SimplicialComplex) -> Vec<u16> {
    let mut masks = vec![0u16; t.vertex_count()];
    for edge in t.faces_of_dim(1) {
        let (x, y) = (edge.vertices()[0] as usize, edge.vertices()[1] as usize);
        masks[x] |= 1 << y;
        masks[y] |= 1 << x;
    }
    masks
}

fn assign(
    a: &SimplicialComplex,
    b: &SimplicialComplex,
    adj_a: &[u16],
    adj_b: &[u16],
    k: usize,
    image: &mut Vec<u32>,
    used: &mut Vec<bool>,
) -> bool {
    let n = image.len();
    if k == n {
        return faces_map(a, b, image);
    }
    for w in 0..n {
        if used[w] {
            continue;
        }
        let consistent = (0..k).all(|j| {
            let a_adj = adj_a[k] & (1 << j) != 0;
            let b_adj = adj_b[w] & (1 << image[j] as usize) != 0;
            a_adj == b_adj
        });
        if !consistent {
            continue;
        }
        image[k] = w as u32;
        used[w] = true;
        if assign(a, b, adj_a, adj_b, k + 1, image, used) {
            return true;
        }
        image[k] = u32::MAX;
        used[w] = false;
    }
    false
}

fn faces_map(a: &SimplicialComplex, b: &SimplicialComplex, image: &[u32]) -> bool {
    for face in a.all_faces() {
        if face.dimension() < 2 {
            continue;
        }
        let mapped: Vec<u32> = face.vertices().iter().map(|&v| image[v as usize]).collect();
        let mapped = simplicia::complex::Simplex::new(mapped).expect("image is a bijection");
        if !b.contains(&mapped) {
            return false;
        }
    }
    true
}

pub fn seed_surfaces() -> Vec<(&'static str, SimplicialComplex)> {
    vec![
        ("sphere", minimal_triangulation(SeedSurface::Sphere)),
        ("torus", minimal_triangulation(SeedSurface::Torus)),
        ("rp2", minimal_triangulation(SeedSurface::ProjectivePlane)),
        ("s3", boundary_of_4_simplex()),
    ]
}

/// Random manifolds on at most 7 vertices: capped walks from the three
/// surface seeds.
pub fn small_manifold_pool(count: usize, master: u64) -> Vec<SimplicialComplex> {
    let seeds = [
        minimal_triangulation(SeedSurface::Sphere),
        minimal_triangulation(SeedSurface::Torus),
        minimal_triangulation(SeedSurface::ProjectivePlane),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(master);
    let mut pool = Vec::with_capacity(count);
    while pool.len() < count {
        let seed = &seeds[rng.random_range(0..seeds.len())];
        let steps = rng.random_range(0..12);
        let walk_seed = rng.random();
        let walk = random_pachner_walk(seed, steps, 7, walk_seed).expect("seed is a manifold");
        pool.push(walk.complex);
    }
    pool
}

/// A random permutation of `0..n`.
pub fn random_permutation(n: usize, rng: &mut ChaCha8Rng) -> Vec<u32> {
    let mut perm: Vec<u32> = (0..n as u32).collect();
    perm.shuffle(rng);
    perm
}

pub fn record_for(id: &str, complex: &SimplicialComplex) -> DatasetRecord {
    let label = match complex.dimension() {
        Some(2) => complex
            .classify_surface()
            .expect("pool complexes are surfaces")
            .canonical_name,
        _ => "manifold-3d".to_string(),
    };
    DatasetRecord::from_complex(
        id,
        complex,
        label,
        Provenance {
            kind: ProvenanceKind::Census,
            parent: None,
            seed: None,
        },
    )
}

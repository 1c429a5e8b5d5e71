//! Python bindings for the simplicia toolkit.
//!
//! Exposes the core types as `Complex` and `Graph` plus module-level helpers
//! for isomorphism checks, surface construction, and JSONL dataset
//! operations. Python drives the Rust library in-process; everything is
//! immutable and deterministic per seed, like the Rust API.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use simplicia::complex::{
    boundary_of_4_simplex, minimal_triangulation, SeedSurface, Simplex, SimplicialComplex,
};
use simplicia::error::Error;
use simplicia::pipeline::{self, BalanceConfig, EcMode};
use simplicia::represent::{self, FeatureMatrix, RepresentationGraph};
use simplicia::subdivision;
use simplicia::surgery;
use simplicia::{isomorphism, moves};

fn err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn simplex(vertices: Vec<u32>) -> PyResult<Simplex> {
    Simplex::new(vertices).map_err(err)
}

/// A pure simplicial complex with canonical vertex labels.
#[pyclass(name = "Complex", frozen, from_py_object)]
#[derive(Clone)]
struct PyComplex {
    inner: SimplicialComplex,
}

#[pymethods]
impl PyComplex {
    /// Builds the downward closure of the given top faces.
    #[staticmethod]
    fn from_top_faces(top_faces: Vec<Vec<u32>>, dimension: usize) -> PyResult<Self> {
        Ok(PyComplex {
            inner: SimplicialComplex::from_top_faces(&top_faces, dimension).map_err(err)?,
        })
    }

    /// The canonical seeds: "S2", "T2", "RP2", or "S3".
    #[staticmethod]
    fn minimal(name: &str) -> PyResult<Self> {
        let inner = match name {
            "S2" => minimal_triangulation(SeedSurface::Sphere),
            "T2" => minimal_triangulation(SeedSurface::Torus),
            "RP2" => minimal_triangulation(SeedSurface::ProjectivePlane),
            "S3" => boundary_of_4_simplex(),
            other => {
                return Err(PyValueError::new_err(format!(
                    "unknown seed {other:?}; expected S2, T2, RP2, or S3"
                )))
            }
        };
        Ok(PyComplex { inner })
    }

    #[getter]
    fn dimension(&self) -> Option<usize> {
        self.inner.dimension()
    }

    #[getter]
    fn vertex_count(&self) -> usize {
        self.inner.vertex_count()
    }

    fn top_faces(&self) -> Vec<Vec<u32>> {
        self.inner.top_faces()
    }

    fn faces(&self, dimension: usize) -> Vec<Vec<u32>> {
        self.inner
            .faces_of_dim(dimension)
            .map(|s| s.vertices().to_vec())
            .collect()
    }

    fn f_vector(&self) -> Vec<usize> {
        self.inner.f_vector().0
    }

    fn euler_characteristic(&self) -> i64 {
        self.inner.euler_characteristic()
    }

    fn betti_gf2(&self) -> Vec<usize> {
        self.inner.betti_gf2()
    }

    fn is_manifold(&self) -> PyResult<bool> {
        self.inner.is_combinatorial_manifold().map_err(err)
    }

    fn is_orientable(&self) -> PyResult<bool> {
        self.inner.is_orientable().map_err(err)
    }

    /// (orientable, genus_or_crosscaps, canonical_name) of a closed surface.
    fn classify(&self) -> PyResult<(bool, usize, String)> {
        let class = self.inner.classify_surface().map_err(err)?;
        Ok((
            class.orientable,
            class.genus_or_crosscaps,
            class.canonical_name,
        ))
    }

    fn link(&self, face: Vec<u32>) -> PyResult<Self> {
        Ok(PyComplex {
            inner: self.inner.link(&simplex(face)?).map_err(err)?,
        })
    }

    fn permuted(&self, permutation: Vec<u32>) -> PyResult<Self> {
        Ok(PyComplex {
            inner: self.inner.permuted(&permutation).map_err(err)?,
        })
    }

    /// Valid Pachner moves as (kind, anchor) pairs, deterministically sorted.
    fn enumerate_moves(&self) -> PyResult<Vec<(String, Vec<u32>)>> {
        Ok(moves::enumerate_valid_moves(&self.inner)
            .map_err(err)?
            .into_iter()
            .map(|m| (m.kind.name().to_string(), m.anchor.vertices().to_vec()))
            .collect())
    }

    /// Applies one Pachner move ("1-3", "3-1", "2-2", "1-4", "4-1", "2-3",
    /// "3-2") at the anchor face.
    fn apply_move(&self, kind: &str, anchor: Vec<u32>) -> PyResult<Self> {
        let kind = match kind {
            "1-3" => moves::MoveKind::M13,
            "3-1" => moves::MoveKind::M31,
            "2-2" => moves::MoveKind::M22,
            "1-4" => moves::MoveKind::M14,
            "4-1" => moves::MoveKind::M41,
            "2-3" => moves::MoveKind::M23,
            "3-2" => moves::MoveKind::M32,
            other => {
                return Err(PyValueError::new_err(format!(
                    "unknown move kind {other:?}"
                )))
            }
        };
        let descriptor = moves::MoveDescriptor {
            kind,
            anchor: simplex(anchor)?,
        };
        Ok(PyComplex {
            inner: moves::apply_pachner(&self.inner, &descriptor).map_err(err)?,
        })
    }

    /// Random Pachner walk; returns (complex, steps_taken).
    fn pachner_walk(
        &self,
        steps: usize,
        max_vertices: usize,
        seed: u64,
    ) -> PyResult<(Self, usize)> {
        let walk = moves::random_pachner_walk(&self.inner, steps, max_vertices, seed)
            .map_err(err)?;
        Ok((
            PyComplex {
                inner: walk.complex,
            },
            walk.steps_taken,
        ))
    }

    fn connected_sum(&self, other: &PyComplex, t1: Vec<u32>, t2: Vec<u32>) -> PyResult<Self> {
        Ok(PyComplex {
            inner: surgery::connected_sum(
                &self.inner,
                &other.inner,
                &simplex(t1)?,
                &simplex(t2)?,
            )
            .map_err(err)?,
        })
    }

    fn stellar_subdivide(&self, face: Vec<u32>) -> PyResult<Self> {
        Ok(PyComplex {
            inner: subdivision::stellar_subdivide(&self.inner, &simplex(face)?).map_err(err)?,
        })
    }

    fn graded_stellar(&self, n: usize, seed: u64) -> PyResult<Self> {
        Ok(PyComplex {
            inner: subdivision::graded_stellar(&self.inner, n, seed).map_err(err)?,
        })
    }

    fn top_stellar(&self, p: f64, seed: u64) -> PyResult<Self> {
        Ok(PyComplex {
            inner: subdivision::top_stellar(&self.inner, p, seed).map_err(err)?,
        })
    }

    fn barycentric_subdivide(&self) -> PyResult<Self> {
        Ok(PyComplex {
            inner: subdivision::barycentric_subdivide(&self.inner).map_err(err)?,
        })
    }

    /// Hex digest of the stabilized WL coloring of the incidence graph.
    fn wl_digest(&self) -> String {
        isomorphism::wl_digest_of(&self.inner).to_string()
    }

    fn is_isomorphic_to(&self, other: &PyComplex) -> bool {
        isomorphism::are_isomorphic(&self.inner, &other.inner)
    }

    /// Graph representation: "skeleton", "dual", "hasse", or "incidence".
    #[pyo3(signature = (kind, directed = false))]
    fn graph(&self, kind: &str, directed: bool) -> PyResult<PyGraph> {
        let inner = match kind {
            "skeleton" => represent::skeleton_graph(&self.inner),
            "dual" => represent::dual_graph(&self.inner).map_err(err)?,
            "hasse" => represent::hasse_diagram(&self.inner, directed),
            "incidence" => isomorphism::incidence_graph(&self.inner),
            other => {
                return Err(PyValueError::new_err(format!(
                    "unknown representation {other:?}"
                )))
            }
        };
        Ok(PyGraph { inner })
    }

    fn __eq__(&self, other: &PyComplex) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!(
            "Complex(dimension={:?}, f_vector={})",
            self.inner.dimension(),
            self.inner.f_vector()
        )
    }
}

fn matrix_rows(m: &FeatureMatrix) -> Vec<Vec<f64>> {
    (0..m.rows).map(|i| m.row(i).to_vec()).collect()
}

/// A labeled graph representation with canonical node order.
#[pyclass(name = "Graph", frozen)]
struct PyGraph {
    inner: RepresentationGraph,
}

#[pymethods]
impl PyGraph {
    #[getter]
    fn node_count(&self) -> usize {
        self.inner.node_count()
    }

    #[getter]
    fn directed(&self) -> bool {
        self.inner.directed
    }

    #[getter]
    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges.clone()
    }

    /// Node payloads as (source_simplex, role, dimension).
    #[getter]
    fn nodes(&self) -> Vec<(Vec<u32>, String, usize)> {
        self.inner
            .nodes
            .iter()
            .map(|n| {
                let role = match n.role {
                    represent::NodeRole::Vertex => "vertex",
                    represent::NodeRole::Face => "face",
                    represent::NodeRole::Simplex => "simplex",
                };
                (n.source.clone(), role.to_string(), n.dimension)
            })
            .collect()
    }

    fn degrees(&self) -> Vec<usize> {
        self.inner.degrees()
    }

    fn encode_random(&self, k: usize, seed: u64) -> PyResult<Vec<Vec<f64>>> {
        Ok(matrix_rows(
            &represent::encode_random(&self.inner, k, seed).map_err(err)?,
        ))
    }

    fn encode_degree(&self) -> Vec<Vec<f64>> {
        matrix_rows(&represent::encode_degree(&self.inner))
    }

    fn encode_rwpe(&self, steps: usize) -> PyResult<Vec<Vec<f64>>> {
        Ok(matrix_rows(
            &represent::encode_rwpe(&self.inner, steps).map_err(err)?,
        ))
    }

    fn encode_moment_curve(&self, manifold_dim: usize) -> PyResult<Vec<Vec<f64>>> {
        Ok(matrix_rows(
            &represent::encode_moment_curve(&self.inner, manifold_dim).map_err(err)?,
        ))
    }

    fn wl_digest(&self) -> String {
        isomorphism::wl_hash(&self.inner).to_string()
    }

    fn __repr__(&self) -> String {
        format!(
            "Graph(kind={:?}, nodes={}, edges={})",
            self.inner.kind,
            self.inner.node_count(),
            self.inner.edge_count()
        )
    }
}

/// Iterated connected sum: genus `count` (orientable) or `count` crosscaps.
#[pyfunction]
fn build_surface(orientable: bool, count: usize, seed: u64) -> PyResult<PyComplex> {
    Ok(PyComplex {
        inner: surgery::build_surface(orientable, count, seed).map_err(err)?,
    })
}

#[pyfunction]
fn are_isomorphic(a: &PyComplex, b: &PyComplex) -> bool {
    isomorphism::are_isomorphic(&a.inner, &b.inner)
}

/// Parses and fully validates a JSONL dataset; returns the record count.
#[pyfunction]
fn validate_dataset(text: &str) -> PyResult<usize> {
    Ok(pipeline::parse(text).map_err(err)?.len())
}

/// Deduplicates a JSONL dataset; returns (kept_jsonl, report_json).
#[pyfunction]
fn deduplicate_dataset(text: &str, max_group: usize) -> PyResult<(String, String)> {
    let records = pipeline::parse_unvalidated(text).map_err(err)?;
    let (kept, report) = isomorphism::deduplicate(&records, max_group).map_err(err)?;
    Ok((
        pipeline::serialize(&kept),
        serde_json::to_string(&report).expect("report serializes"),
    ))
}

/// Balances a JSONL dataset; returns (records_jsonl, report_json).
#[pyfunction]
#[pyo3(signature = (text, target, max_vertices, seed, classes = vec![], rounds = 5, max_group = 5))]
fn balance_dataset(
    text: &str,
    target: usize,
    max_vertices: usize,
    seed: u64,
    classes: Vec<String>,
    rounds: usize,
    max_group: usize,
) -> PyResult<(String, String)> {
    let seeds = pipeline::parse_unvalidated(text).map_err(err)?;
    let cfg = BalanceConfig {
        target_min: target,
        target_max: target,
        max_vertices,
        dedup_max_group: max_group,
        rounds,
        moves_per_sample: None,
        extra_classes: classes,
    };
    let (records, report) = pipeline::balance_dataset(&seeds, &cfg, seed).map_err(err)?;
    Ok((
        pipeline::serialize(&records),
        serde_json::to_string(&report).expect("report serializes"),
    ))
}

/// Tags a JSONL dataset with train/val/test splits.
#[pyfunction]
#[pyo3(signature = (text, train, val, test, seed, stratify = false))]
fn split_dataset(
    text: &str,
    train: f64,
    val: f64,
    test: f64,
    seed: u64,
    stratify: bool,
) -> PyResult<String> {
    let records = pipeline::parse_unvalidated(text).map_err(err)?;
    let tagged = if stratify {
        pipeline::split_dataset_stratified(&records, (train, val, test), seed).map_err(err)?
    } else {
        pipeline::split_dataset(&records, (train, val, test), seed).map_err(err)?
    };
    Ok(pipeline::serialize(&tagged))
}

/// Balanced accuracy of the Euler-characteristic heuristic; mode is "chi" or
/// "chi+orient".
#[pyfunction]
#[pyo3(signature = (train_text, eval_text, mode = "chi+orient"))]
fn ec_baseline(train_text: &str, eval_text: &str, mode: &str) -> PyResult<f64> {
    let mode = match mode {
        "chi" => EcMode::Chi,
        "chi+orient" => EcMode::ChiOrient,
        other => {
            return Err(PyValueError::new_err(format!(
                "unknown mode {other:?}; expected chi or chi+orient"
            )))
        }
    };
    let train = pipeline::parse_unvalidated(train_text).map_err(err)?;
    let eval = pipeline::parse_unvalidated(eval_text).map_err(err)?;
    pipeline::ec_baseline(&train, &eval, mode).map_err(err)
}

/// Wraps a complex into a dataset record line.
#[pyfunction]
#[pyo3(signature = (complex, id, label, kind = "census"))]
fn record_line(complex: &PyComplex, id: &str, label: &str, kind: &str) -> PyResult<String> {
    let kind = match kind {
        "census" => pipeline::ProvenanceKind::Census,
        "pachner" => pipeline::ProvenanceKind::Pachner,
        "connected_sum" => pipeline::ProvenanceKind::ConnectedSum,
        "subdivision" => pipeline::ProvenanceKind::Subdivision,
        other => {
            return Err(PyValueError::new_err(format!(
                "unknown provenance kind {other:?}"
            )))
        }
    };
    let record = pipeline::DatasetRecord::from_complex(
        id,
        &complex.inner,
        label,
        pipeline::Provenance {
            kind,
            parent: None,
            seed: None,
        },
    );
    Ok(record.to_json_line())
}

#[pymodule]
fn simplicia_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyComplex>()?;
    m.add_class::<PyGraph>()?;
    m.add_function(wrap_pyfunction!(build_surface, m)?)?;
    m.add_function(wrap_pyfunction!(are_isomorphic, m)?)?;
    m.add_function(wrap_pyfunction!(validate_dataset, m)?)?;
    m.add_function(wrap_pyfunction!(deduplicate_dataset, m)?)?;
    m.add_function(wrap_pyfunction!(balance_dataset, m)?)?;
    m.add_function(wrap_pyfunction!(split_dataset, m)?)?;
    m.add_function(wrap_pyfunction!(ec_baseline, m)?)?;
    m.add_function(wrap_pyfunction!(record_line, m)?)?;
    Ok(())
}

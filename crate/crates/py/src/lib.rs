//! Python module `spingraph`.
//!
//! Classes travel as `khat` lists, surface types as count tuples aligned
//! with `classes_for_genus`. Graphs are wrapped in `SpinGraph`.

use pyo3::exceptions::{PyKeyError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use spingraph_core::atlas;
use spingraph_core::graphs::{self, GraphKind};
use spingraph_core::partitions;
use spingraph_core::render;
use spingraph_core::{Error, ExceptionalClass, Genus, PointLabel};

fn value_err(e: Error) -> PyErr {
    match e {
        Error::UnknownVertex(_) => PyKeyError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn genus(g: u32) -> PyResult<Genus> {
    Genus::with_ceiling(g, atlas::DEFAULT_GENUS_CEILING).map_err(value_err)
}

fn class_of(g: u32, khat: Vec<u32>) -> PyResult<ExceptionalClass> {
    ExceptionalClass::from_parts(genus(g)?, &khat).map_err(value_err)
}

fn label(id: &str) -> PyResult<PointLabel> {
    PointLabel::parse(id).ok_or_else(|| PyValueError::new_err(format!("bad vertex id {id:?}")))
}

/// `(u, v, multiplicity, (arc_from, label) or None)`.
type EdgeTuple = (String, String, u32, Option<(String, u32)>);

#[pyfunction]
#[pyo3(signature = (m, k, min_part = 1))]
fn enumerate_partitions(m: u32, k: u32, min_part: u32) -> PyResult<Vec<Vec<u32>>> {
    Ok(partitions::enumerate_partitions(m, k, min_part)
        .map_err(value_err)?
        .into_iter()
        .map(|p| p.parts().to_vec())
        .collect())
}

#[pyfunction]
#[pyo3(signature = (m, k, min_part = 1))]
fn count_partitions(m: u32, k: u32, min_part: u32) -> PyResult<u64> {
    partitions::count_partitions(m, k, min_part).map_err(value_err)
}

#[pyfunction]
fn total_partitions(m: u32) -> u64 {
    partitions::total_partitions(m)
}

#[pyfunction]
fn classes_for_genus(g: u32) -> PyResult<Vec<Vec<u32>>> {
    Ok(atlas::classes_for_genus(genus(g)?)
        .iter()
        .map(|c| c.khat().parts().to_vec())
        .collect())
}

/// `(r, i, p, branch_number, vertex_count)` for a class.
#[pyfunction]
fn class_info(g: u32, khat: Vec<u32>) -> PyResult<(u32, u32, Vec<u32>, u32, usize)> {
    let c = class_of(g, khat)?;
    Ok((c.order(), c.i(), c.p(), c.branch_number(), c.vertex_count()))
}

#[pyfunction]
fn class_count(g: u32, r: u32) -> PyResult<u64> {
    atlas::class_count(genus(g)?, r).map_err(value_err)
}

#[pyfunction]
fn total_class_count(g: u32) -> PyResult<u64> {
    Ok(atlas::total_class_count(genus(g)?))
}

#[pyfunction]
fn i_max(g: u32, r: u32) -> PyResult<u32> {
    atlas::i_max(genus(g)?, r).map_err(value_err)
}

#[pyfunction]
fn max_i_classes(g: u32, r: u32) -> PyResult<Vec<Vec<u32>>> {
    Ok(atlas::max_i_classes(genus(g)?, r)
        .map_err(value_err)?
        .iter()
        .map(|c| c.khat().parts().to_vec())
        .collect())
}

#[pyfunction]
fn surface_types(g: u32) -> PyResult<Vec<Vec<u32>>> {
    Ok(atlas::surface_types(genus(g)?)
        .map(|t| t.counts().to_vec())
        .collect())
}

#[pyfunction]
fn leaf_census<'py>(py: Python<'py>, g: u32, counts: Vec<u32>) -> PyResult<Bound<'py, PyDict>> {
    let t = atlas::SurfaceType::new(genus(g)?, counts).map_err(value_err)?;
    let census = atlas::leaf_census(&t).map_err(value_err)?;
    let d = PyDict::new(py);
    d.set_item("genus", census.genus)?;
    d.set_item("weierstrass_leaves", census.weierstrass_leaves)?;
    d.set_item("weierstrass_leaf_size", census.weierstrass_leaf_size)?;
    d.set_item("exceptional_leaf_sizes", census.exceptional_leaf_sizes())?;
    d.set_item("standard_leaf_size", census.standard_leaf_size)?;
    d.set_item("branch_total", census.branch_total)?;
    Ok(d)
}

#[pyclass(name = "SpinGraph", frozen)]
struct PySpinGraph {
    inner: graphs::SpinGraph,
}

#[pymethods]
impl PySpinGraph {
    #[staticmethod]
    fn standard(g: u32) -> PyResult<Self> {
        Ok(Self {
            inner: graphs::standard_graph(genus(g)?),
        })
    }

    #[staticmethod]
    fn weierstrass(g: u32) -> PyResult<Self> {
        Ok(Self {
            inner: graphs::weierstrass_graph(genus(g)?),
        })
    }

    #[staticmethod]
    fn exceptional(g: u32, khat: Vec<u32>) -> PyResult<Self> {
        Ok(Self {
            inner: graphs::exceptional_graph(&class_of(g, khat)?),
        })
    }

    #[getter]
    fn genus(&self) -> u32 {
        self.inner.genus().get()
    }

    #[getter]
    fn kind(&self) -> &'static str {
        self.inner.kind().name()
    }

    #[getter]
    fn khat(&self) -> Option<Vec<u32>> {
        match self.inner.kind() {
            GraphKind::Exceptional(c) => Some(c.khat().parts().to_vec()),
            _ => None,
        }
    }

    fn vertices(&self) -> Vec<String> {
        self.inner.labels().map(|l| l.ident()).collect()
    }

    fn edges(&self) -> Vec<EdgeTuple> {
        self.inner
            .edges()
            .iter()
            .map(|e| {
                (
                    e.u.ident(),
                    e.v.ident(),
                    e.multiplicity,
                    e.arc.map(|a| (a.from.ident(), a.label)),
                )
            })
            .collect()
    }

    /// Zeros of the section with its simple pole at `vertex`, as `{point: mult}`.
    fn section_divisor(&self, vertex: &str) -> PyResult<Vec<(String, u32)>> {
        let (_, zeros) = graphs::section_divisor(&self.inner, &label(vertex)?).map_err(value_err)?;
        Ok(zeros.iter().map(|(p, m)| (p.ident(), m)).collect())
    }

    fn epsilon_degree(&self, vertex: &str) -> PyResult<usize> {
        graphs::epsilon_degree_of_vertex(&self.inner, &label(vertex)?).map_err(value_err)
    }

    fn branch_number(&self) -> u32 {
        graphs::graph_branch_number(&self.inner)
    }

    fn heads(&self) -> PyResult<Vec<String>> {
        Ok(graphs::head_vertices(&self.inner)
            .map_err(value_err)?
            .iter()
            .map(PointLabel::ident)
            .collect())
    }

    fn canonical_class(&self) -> PyResult<Vec<u32>> {
        Ok(graphs::canonical_class(&self.inner)
            .map_err(value_err)?
            .khat()
            .parts()
            .to_vec())
    }

    fn validate(&self) -> Vec<String> {
        graphs::validate(&self.inner)
            .iter()
            .map(ToString::to_string)
            .collect()
    }

    fn to_json(&self) -> String {
        render::to_json(&self.inner)
    }

    fn to_dot(&self) -> String {
        render::to_dot(&self.inner)
    }

    fn __len__(&self) -> usize {
        self.inner.vertex_count()
    }

    fn __repr__(&self) -> String {
        match self.inner.class() {
            Some(c) => format!("SpinGraph(genus={}, exceptional {})", self.inner.genus(), c),
            None => format!("SpinGraph(genus={}, {})", self.inner.genus(), self.inner.kind().name()),
        }
    }
}

#[pymodule]
fn spingraph(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(enumerate_partitions, m)?)?;
    m.add_function(wrap_pyfunction!(count_partitions, m)?)?;
    m.add_function(wrap_pyfunction!(total_partitions, m)?)?;
    m.add_function(wrap_pyfunction!(classes_for_genus, m)?)?;
    m.add_function(wrap_pyfunction!(class_info, m)?)?;
    m.add_function(wrap_pyfunction!(class_count, m)?)?;
    m.add_function(wrap_pyfunction!(total_class_count, m)?)?;
    m.add_function(wrap_pyfunction!(i_max, m)?)?;
    m.add_function(wrap_pyfunction!(max_i_classes, m)?)?;
    m.add_function(wrap_pyfunction!(surface_types, m)?)?;
    m.add_function(wrap_pyfunction!(leaf_census, m)?)?;
    m.add_class::<PySpinGraph>()?;
    Ok(())
}

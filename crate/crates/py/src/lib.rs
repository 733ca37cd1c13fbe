use std::path::PathBuf;
use std::sync::Arc;

use massicot::certificate::to_json;
use massicot::{
    approximate_constant, build_group, covering_number, thickness_number, verify, Certificate, Context, CoverWitness,
    GroupFamily, GroupTable, Overrides, SolveMode,
};
use pyo3::create_exception;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;
use pyo3::types::PyDict;

create_exception!(pymassicot, MassicotError, PyException);

fn err(e: massicot::Error) -> PyErr {
    MassicotError::new_err(e.to_string())
}

fn mode(exact: bool) -> SolveMode {
    if exact {
        SolveMode::Exact
    } else {
        SolveMode::Greedy
    }
}

/// A finite group given by its Cayley table.
#[pyclass(frozen, module = "pymassicot")]
struct Group {
    inner: Arc<GroupTable>,
}

impl Group {
    fn wrap(family: GroupFamily) -> PyResult<Self> {
        Ok(Group { inner: Arc::new(build_group(&family).map_err(err)?) })
    }

    fn set(&self, xs: Vec<usize>) -> PyResult<massicot::GSet> {
        self.inner.set_of(xs).map_err(err)
    }
}

#[pymethods]
impl Group {
    #[staticmethod]
    fn cyclic(n: usize) -> PyResult<Self> {
        Self::wrap(GroupFamily::Cyclic(n))
    }

    #[staticmethod]
    fn dihedral(m: usize) -> PyResult<Self> {
        Self::wrap(GroupFamily::Dihedral(m))
    }

    #[staticmethod]
    fn heisenberg(p: usize) -> PyResult<Self> {
        Self::wrap(GroupFamily::HeisenbergMod(p))
    }

    #[staticmethod]
    fn product(a: &Group, b: &Group) -> PyResult<Self> {
        Self::wrap(GroupFamily::DirectProduct(Box::new(a.inner.family().clone()), Box::new(b.inner.family().clone())))
    }

    /// Build from the JSON form used in scenario files, e.g. `{"cyclic": 12}`.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let family: GroupFamily = serde_json::from_str(text).map_err(|e| MassicotError::new_err(e.to_string()))?;
        Self::wrap(family)
    }

    #[getter]
    fn order(&self) -> usize {
        self.inner.order()
    }

    #[getter]
    fn identity(&self) -> usize {
        self.inner.identity()
    }

    fn label(&self, name: &str) -> PyResult<usize> {
        self.inner.label(name).ok_or_else(|| MassicotError::new_err(format!("unknown label `{name}`")))
    }

    fn mul(&self, x: usize, y: usize) -> PyResult<usize> {
        let n = self.inner.order();
        if x >= n || y >= n {
            return Err(MassicotError::new_err("element out of range"));
        }
        Ok(self.inner.mul(x, y))
    }

    fn inverse(&self, x: usize) -> PyResult<usize> {
        if x >= self.inner.order() {
            return Err(MassicotError::new_err("element out of range"));
        }
        Ok(self.inner.inverse(x))
    }

    fn product_set(&self, x: Vec<usize>, y: Vec<usize>) -> PyResult<Vec<usize>> {
        Ok(self.inner.product_set(&self.set(x)?, &self.set(y)?).map_err(err)?.to_vec())
    }

    fn power_set(&self, x: Vec<usize>, n: usize) -> PyResult<Vec<usize>> {
        Ok(self.inner.power_set(&self.set(x)?, n).map_err(err)?.to_vec())
    }

    fn symmetrize(&self, x: Vec<usize>) -> PyResult<Vec<usize>> {
        Ok(self.inner.symmetrize(&self.set(x)?).to_vec())
    }

    fn generated_subgroup(&self, x: Vec<usize>) -> PyResult<Vec<usize>> {
        Ok(self.inner.generated_subgroup(&self.set(x)?).map_err(err)?.to_vec())
    }

    fn is_subgroup(&self, x: Vec<usize>) -> PyResult<bool> {
        Ok(self.inner.is_subgroup(&self.set(x)?))
    }

    /// Least k with `b ⊆ Δ·a` for some k-element Δ, as `(k, delta, exact)`.
    #[pyo3(signature = (a, b, exact = true))]
    fn covering_number(&self, a: Vec<usize>, b: Vec<usize>, exact: bool) -> PyResult<(usize, Vec<usize>, bool)> {
        let w = covering_number(&self.inner, &self.set(a)?, &self.set(b)?, mode(exact)).map_err(err)?;
        Ok(cover_tuple(&w))
    }

    /// Largest `a`-free subset of `b`, as `(k, free_set, exact)`.
    #[pyo3(signature = (a, b, exact = true))]
    fn thickness_number(&self, a: Vec<usize>, b: Vec<usize>, exact: bool) -> PyResult<(usize, Vec<usize>, bool)> {
        let w = thickness_number(&self.inner, &self.set(a)?, &self.set(b)?, mode(exact)).map_err(err)?;
        Ok((w.k, w.free_set.to_vec(), w.exact))
    }

    fn approximate_constant(&self, a: Vec<usize>) -> PyResult<(usize, Vec<usize>, bool)> {
        Ok(cover_tuple(&approximate_constant(&self.inner, &self.set(a)?).map_err(err)?))
    }

    fn __repr__(&self) -> String {
        format!("Group(order={})", self.inner.order())
    }
}

fn cover_tuple(w: &CoverWitness) -> (usize, Vec<usize>, bool) {
    (w.k, w.delta.to_vec(), w.exact)
}

/// A validated scenario ready to run. Results are JSON strings in the same
/// format the command-line tool writes.
#[pyclass(frozen, module = "pymassicot")]
struct Scenario {
    inner: Context,
}

fn overrides(budget_depth: Option<usize>, budget_candidates: Option<usize>, seed: Option<u64>, exact_only: bool) -> Overrides {
    Overrides { budget_depth, budget_candidates, seed, exact_only }
}

#[pymethods]
impl Scenario {
    #[staticmethod]
    #[pyo3(signature = (text, budget_depth = None, budget_candidates = None, seed = None, exact_only = false))]
    fn from_json(
        text: &str,
        budget_depth: Option<usize>,
        budget_candidates: Option<usize>,
        seed: Option<u64>,
        exact_only: bool,
    ) -> PyResult<Self> {
        let scenario = massicot::Scenario::from_json(text).map_err(err)?;
        let o = overrides(budget_depth, budget_candidates, seed, exact_only);
        Ok(Scenario { inner: Context::build(scenario, &o).map_err(err)? })
    }

    #[staticmethod]
    #[pyo3(signature = (path, budget_depth = None, budget_candidates = None, seed = None, exact_only = false))]
    fn from_path(
        path: PathBuf,
        budget_depth: Option<usize>,
        budget_candidates: Option<usize>,
        seed: Option<u64>,
        exact_only: bool,
    ) -> PyResult<Self> {
        let o = overrides(budget_depth, budget_candidates, seed, exact_only);
        Ok(Scenario { inner: Context::from_path(&path, &o).map_err(err)? })
    }

    #[getter]
    fn name(&self) -> &str {
        &self.inner.scenario.name
    }

    #[getter]
    fn group(&self) -> Group {
        Group { inner: Arc::clone(&self.inner.group) }
    }

    #[getter]
    fn lambda_set(&self) -> Vec<usize> {
        self.inner.lambda.to_vec()
    }

    #[getter]
    fn warnings(&self) -> Vec<String> {
        self.inner.warnings.clone()
    }

    #[pyo3(signature = (samples = 200))]
    fn axioms(&self, samples: usize) -> String {
        to_json(&self.inner.axioms(samples))
    }

    fn constants(&self, py: Python<'_>) -> PyResult<String> {
        py.detach(|| self.inner.constants().map(|r| to_json(&r))).map_err(err)
    }

    fn descent(&self, py: Python<'_>) -> PyResult<String> {
        py.detach(|| self.inner.descent().map(|c| to_json(&c))).map_err(err)
    }

    fn chain(&self, py: Python<'_>) -> PyResult<String> {
        py.detach(|| self.inner.chain().map(|c| to_json(&c))).map_err(err)
    }

    fn model(&self, py: Python<'_>) -> PyResult<String> {
        py.detach(|| self.inner.model().map(|c| to_json(&c))).map_err(err)
    }

    /// Re-check a certificate. Returns `{"passed": bool, "failures": [(clause, detail), ...]}`.
    fn verify<'py>(&self, py: Python<'py>, certificate: &str) -> PyResult<Bound<'py, PyDict>> {
        let out = PyDict::new(py);
        let failures: Vec<(String, String)> = match Certificate::from_json(certificate) {
            Ok(cert) => {
                let verdict = py.detach(|| verify(&cert, &self.inner.verify_context()));
                verdict.failures().into_iter().map(|c| (c.name.clone(), c.detail.clone())).collect()
            }
            Err(e) => vec![("parse".into(), e.to_string())],
        };
        out.set_item("passed", failures.is_empty())?;
        out.set_item("failures", failures)?;
        Ok(out)
    }

    fn __repr__(&self) -> String {
        format!("Scenario(name={:?}, order={})", self.inner.scenario.name, self.inner.group.order())
    }
}

#[pymodule]
fn pymassicot(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Group>()?;
    m.add_class::<Scenario>()?;
    m.add("MassicotError", m.py().get_type::<MassicotError>())?;
    Ok(())
}

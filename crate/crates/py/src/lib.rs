//! Python bindings: solenoids, the phase operations, the scenarios and the suite.

use abphase_cli::config::{parse_config_with_seed, seed_from_env, Config};
use abphase_cli::ConfigError;
use abphase_core::phase::{phase_neutron_integral, phase_particle_side, QuadratureConfig};
use abphase_core::scenarios::presets::electrostatic_arms;
use abphase_core::scenarios::{run_electrostatic_ab, run_wang_check};
use abphase_core::sources::{
    solenoid_a_analytic, solenoid_a_loops, ChargeTrajectory, SolenoidSpec, Trajectory, DEFAULT_GUARD,
};
use abphase_core::{PhaseError, Vec3};
use pyo3::exceptions::{PyArithmeticError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

type Triple = (f64, f64, f64);

fn vec3((x, y, z): Triple) -> Vec3 {
    Vec3::new(x, y, z)
}

fn triple(v: Vec3) -> Triple {
    (v.x, v.y, v.z)
}

fn py_err(e: PhaseError) -> PyErr {
    match e {
        PhaseError::NonConvergence { .. } => PyArithmeticError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn config_err(e: ConfigError) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn quadrature(relative_tolerance: f64) -> PyResult<QuadratureConfig> {
    let cfg = QuadratureConfig::default().with_tolerance(relative_tolerance);
    cfg.validate().map_err(py_err)?;
    Ok(cfg)
}

fn from_json<'py>(py: Python<'py>, text: &str) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (text,))
}

/// A solenoid along `axis_direction` through `axis_point`; infinite unless
/// `half_length` is given.
#[pyclass(name = "Solenoid", frozen)]
struct PySolenoid {
    spec: SolenoidSpec,
}

#[pymethods]
impl PySolenoid {
    #[new]
    #[pyo3(signature = (radius, turns_per_meter, current, axis_point=(0.0, 0.0, 0.0), axis_direction=(0.0, 0.0, 1.0), half_length=None))]
    fn new(
        radius: f64,
        turns_per_meter: f64,
        current: f64,
        axis_point: Triple,
        axis_direction: Triple,
        half_length: Option<f64>,
    ) -> PyResult<Self> {
        let infinite = SolenoidSpec::infinite(vec3(axis_point), vec3(axis_direction), radius, turns_per_meter, current)
            .map_err(py_err)?;
        let spec = match half_length {
            Some(h) => infinite.truncated(h).map_err(py_err)?,
            None => infinite,
        };
        Ok(Self { spec })
    }

    #[getter]
    fn radius(&self) -> f64 {
        self.spec.radius
    }

    #[getter]
    fn current(&self) -> f64 {
        self.spec.current
    }

    #[getter]
    fn half_length(&self) -> Option<f64> {
        self.spec.half_length
    }

    /// Interior field μ0·n·I, T.
    fn interior_field(&self) -> f64 {
        self.spec.interior_field()
    }

    /// Enclosed flux, Wb.
    fn flux(&self) -> f64 {
        self.spec.flux()
    }

    /// Closed-form A of the infinite solenoid.
    fn vector_potential(&self, point: Triple) -> PyResult<Triple> {
        solenoid_a_analytic(&self.spec, vec3(point)).map(triple).map_err(py_err)
    }

    /// A summed over polygonal turns of a finite solenoid.
    #[pyo3(signature = (point, segments_per_turn=64))]
    fn vector_potential_loops(&self, point: Triple, segments_per_turn: usize) -> PyResult<Triple> {
        solenoid_a_loops(&self.spec, vec3(point), segments_per_turn, DEFAULT_GUARD)
            .map(triple)
            .map_err(py_err)
    }

    fn __repr__(&self) -> String {
        format!(
            "Solenoid(radius={:e}, turns_per_meter={}, current={}, half_length={:?})",
            self.spec.radius, self.spec.turns_per_meter, self.spec.current, self.spec.half_length
        )
    }
}

/// Particle-side phase (q/ħ)∮A·v dt of a charge circling the solenoid axis.
#[pyfunction]
#[pyo3(signature = (charge, solenoid, radius, turns=1.0, duration=1e-9, relative_tolerance=1e-9))]
fn orbit_phase(
    charge: f64,
    solenoid: &PySolenoid,
    radius: f64,
    turns: f64,
    duration: f64,
    relative_tolerance: f64,
) -> PyResult<f64> {
    let sol = &solenoid.spec;
    let path =
        Trajectory::circle(sol.axis_point, sol.axis_direction, radius, turns, 0.0, duration, 64).map_err(py_err)?;
    let traj = ChargeTrajectory::new(charge, path).map_err(py_err)?;
    let cfg = quadrature(relative_tolerance)?;
    phase_particle_side(&traj, |r| solenoid_a_analytic(sol, r), &cfg)
        .map(|p| p.radians())
        .map_err(py_err)
}

/// Neutron phase from its dipole potential acting on the solenoid windings.
#[pyfunction]
#[pyo3(signature = (mu, solenoid, dwell, relative_tolerance=1e-9))]
fn neutron_phase(mu: f64, solenoid: &PySolenoid, dwell: f64, relative_tolerance: f64) -> PyResult<f64> {
    let cfg = quadrature(relative_tolerance)?;
    phase_neutron_integral(mu, &solenoid.spec, dwell, &cfg)
        .map(|p| p.radians())
        .map_err(py_err)
}

/// Electrostatic AB for two ramped arms; returns the scenario result.
#[pyfunction]
#[pyo3(signature = (volts_a, volts_b=0.0, duration=2e-9, samples=101))]
fn electrostatic<'py>(
    py: Python<'py>,
    volts_a: f64,
    volts_b: f64,
    duration: f64,
    samples: usize,
) -> PyResult<Bound<'py, PyAny>> {
    let (a, b) = electrostatic_arms(volts_a, volts_b, duration, samples).map_err(py_err)?;
    let r = run_electrostatic_ab(&a, &b).map_err(py_err)?;
    from_json(py, &serde_json::to_string(&r).expect("result serializes"))
}

#[pyfunction]
fn wang<'py>(py: Python<'py>, pulse: f64, tc: f64) -> PyResult<Bound<'py, PyDict>> {
    let w = run_wang_check(pulse, tc).map_err(py_err)?;
    let d = PyDict::new(py);
    d.set_item("pulse_duration", w.pulse_duration)?;
    d.set_item("critical_temperature", w.critical_temperature)?;
    d.set_item("frequency", w.frequency)?;
    d.set_item("threshold", w.threshold)?;
    d.set_item("ratio", w.ratio)?;
    d.set_item("shield_transparent", w.shield_transparent)?;
    Ok(d)
}

fn report<'py>(py: Python<'py>, config: &Config) -> PyResult<Bound<'py, PyAny>> {
    let outcome = abphase_cli::run(config).map_err(|e| match e.source {
        PhaseError::NonConvergence { .. } => PyArithmeticError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    })?;
    from_json(py, &outcome.report.to_json())
}

/// The built-in reproduction suite, as a report dict.
#[pyfunction]
fn run_suite<'py>(py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
    report(py, &Config::reproduction_suite())
}

/// Runs a JSON config document and returns the report dict.
#[pyfunction]
fn run_config<'py>(py: Python<'py>, text: &str) -> PyResult<Bound<'py, PyAny>> {
    let seed = seed_from_env().map_err(config_err)?;
    let config = parse_config_with_seed(text.as_bytes(), seed).map_err(config_err)?;
    report(py, &config)
}

#[pymodule]
fn abphase(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add("HBAR", abphase_core::constants::HBAR)?;
    m.add("ELEMENTARY_CHARGE", abphase_core::constants::ELEMENTARY_CHARGE)?;
    m.add("MU0", abphase_core::constants::MU0)?;
    m.add_class::<PySolenoid>()?;
    m.add_function(wrap_pyfunction!(orbit_phase, m)?)?;
    m.add_function(wrap_pyfunction!(neutron_phase, m)?)?;
    m.add_function(wrap_pyfunction!(electrostatic, m)?)?;
    m.add_function(wrap_pyfunction!(wang, m)?)?;
    m.add_function(wrap_pyfunction!(run_suite, m)?)?;
    m.add_function(wrap_pyfunction!(run_config, m)?)?;
    Ok(())
}

//! Browser bindings for three operations of the toolkit: the profile of the
//! uncertainty product over directions, extremal directions, and a
//! periodization sweep. Every export returns a JSON string.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use uplocal::direction::{build_a_matrix, build_m_matrix, extremal_directions, optimize_sum_functional};
use uplocal::functions::parse_function;
use uplocal::localization::catalog_moments;
use uplocal::periodization::convergence_sweep;
use uplocal::{CatalogFunction, Direction};

#[derive(Serialize)]
struct ProfilePoint {
    angle: f64,
    up: f64,
    sum_functional: f64,
}

#[derive(Serialize)]
struct Profile {
    function: String,
    points: Vec<ProfilePoint>,
}

#[derive(Serialize)]
struct CandidateOut {
    direction: Vec<f64>,
    up: f64,
}

#[derive(Serialize)]
struct Extreme {
    value: f64,
    direction: Vec<f64>,
}

#[derive(Serialize)]
struct Optimum {
    function: String,
    /// `None` when the function lacks the per-axis symmetry the simplex
    /// reduction needs.
    candidates: Option<Vec<CandidateOut>>,
    up_min: Option<Extreme>,
    up_max: Option<Extreme>,
    sum_min: Extreme,
    sum_max: Extreme,
    isotropic: bool,
}

#[derive(Serialize)]
struct SweepOut {
    lambda: f64,
    up_periodic: Option<f64>,
    error: Option<f64>,
    up_gg_periodic: Option<f64>,
    error_gg: Option<f64>,
    message: Option<String>,
}

#[derive(Serialize)]
struct Sweep {
    function: String,
    target_up: f64,
    target_up_gg: f64,
    rows: Vec<SweepOut>,
}

fn function(spec: &str) -> Result<CatalogFunction, String> {
    let f = parse_function(spec, None).map_err(|e| e.to_string())?;
    if matches!(f, CatalogFunction::CustomGrid { .. }) {
        return Err("custom grids are not available in the browser".into());
    }
    Ok(f)
}

fn json(v: &impl Serialize) -> Result<String, String> {
    serde_json::to_string(v).map_err(|e| e.to_string())
}

/// `UP_L` and the sum functional at `samples` angles in `[0, π)`; the
/// function must be two-dimensional.
pub fn profile_json(spec: &str, samples: usize) -> Result<String, String> {
    let f = function(spec)?;
    if f.dim() != 2 {
        return Err(format!("the profile needs a 2-D function, `{}` is {}-D", f.id(), f.dim()));
    }
    if !(2..=20_000).contains(&samples) {
        return Err("samples must be between 2 and 20000".into());
    }
    let m = catalog_moments(&f).map_err(|e| e.to_string())?;
    let points = (0..samples)
        .map(|i| {
            let angle = std::f64::consts::PI * i as f64 / samples as f64;
            let r = m.report(&Direction::from_angle(angle)).map_err(|e| e.to_string())?;
            Ok(ProfilePoint {
                angle,
                up: r.up,
                sum_functional: r.sum_functional,
            })
        })
        .collect::<Result<Vec<_>, String>>()?;
    json(&Profile {
        function: f.to_string(),
        points,
    })
}

/// Simplex candidates for the uncertainty product and eigen-extremes of the
/// sum functional.
pub fn optimize_json(spec: &str) -> Result<String, String> {
    let f = function(spec)?;
    let m = catalog_moments(&f).map_err(|e| e.to_string())?;
    let (candidates, up_min, up_max) = match build_a_matrix(&m) {
        Ok(a) => {
            let set = extremal_directions(&a);
            let ext = |c: &uplocal::direction::Candidate| Extreme {
                value: c.up_value,
                direction: c.direction.clone(),
            };
            let list = set
                .candidates
                .iter()
                .map(|c| CandidateOut {
                    direction: c.direction.clone(),
                    up: c.up_value,
                })
                .collect();
            (Some(list), Some(ext(set.min())), Some(ext(set.max())))
        }
        Err(_) => (None, None, None),
    };
    let s = optimize_sum_functional(&build_m_matrix(&m));
    json(&Optimum {
        function: f.to_string(),
        candidates,
        up_min,
        up_max,
        sum_min: Extreme {
            value: s.min_value,
            direction: s.min_direction,
        },
        sum_max: Extreme {
            value: s.max_value,
            direction: s.max_direction,
        },
        isotropic: s.isotropic,
    })
}

/// Convergence of the periodic products for comma-separated `lambdas` along an
/// integer `direction`.
pub fn sweep_json(spec: &str, direction: &str, lambdas: &str) -> Result<String, String> {
    let f = function(spec)?;
    let parse = |s: &str| -> Result<Vec<f64>, String> {
        s.split(',')
            .map(|p| p.trim().parse::<f64>().map_err(|_| format!("malformed number `{}`", p.trim())))
            .collect()
    };
    let l = Direction::new(parse(direction)?).map_err(|e| e.to_string())?;
    if l.dim() != f.dim() {
        return Err(format!("direction has {} components, function is {}-D", l.dim(), f.dim()));
    }
    let lambdas = parse(lambdas)?;
    if lambdas.len() > 8 || lambdas.iter().any(|v| !(*v > 0.0 && *v <= 32.0)) {
        return Err("use at most 8 values of λ in (0, 32]".into());
    }
    let (t, rows) = convergence_sweep(&f, &l, &lambdas, true).map_err(|e| e.to_string())?;
    json(&Sweep {
        function: f.to_string(),
        target_up: t.up,
        target_up_gg: t.up_gg,
        rows: rows
            .into_iter()
            .map(|r| SweepOut {
                lambda: r.lambda,
                up_periodic: r.up_periodic,
                error: r.error,
                up_gg_periodic: r.up_gg_periodic,
                error_gg: r.error_gg,
                message: r.error_message,
            })
            .collect(),
    })
}

#[wasm_bindgen]
pub fn direction_profile(spec: &str, samples: usize) -> Result<String, JsValue> {
    profile_json(spec, samples).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn optimize(spec: &str) -> Result<String, JsValue> {
    optimize_json(spec).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn periodization_sweep(spec: &str, direction: &str, lambdas: &str) -> Result<String, JsValue> {
    sweep_json(spec, direction, lambdas).map_err(|e| JsValue::from_str(&e))
}

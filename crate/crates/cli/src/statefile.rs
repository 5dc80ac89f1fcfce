//! JSON state files.
//!
//! A state file is a JSON object with an `"e0"` member, a `"rho"` member,
//! or both:
//!
//! ```json
//! {
//!   "e0": { "a": 0.5, "b": 0.5, "c": 0.5, "theta": 0.0 },
//!   "rho": [[[0.0, 0.0], ...], ...]
//! }
//! ```
//!
//! `"rho"` is a 4x4 array of `[re, im]` pairs in the product basis.
//! When both members are present the `"e0"` parameters win: they are the
//! exact description, the matrix is derived. Files written by this module
//! always carry both forms so either reader round-trips.

use std::path::Path;

use bellmix::matrix::CMat4;
use bellmix::states::{DensityMatrix, E0Params};
use serde::{Deserialize, Serialize};

use crate::CliError;

type Complex64 = num_complex::Complex<f64>;

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct E0Json {
    a: f64,
    b: f64,
    c: f64,
    #[serde(default)]
    theta: f64,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct StateJson {
    #[serde(skip_serializing_if = "Option::is_none")]
    e0: Option<E0Json>,
    #[serde(skip_serializing_if = "Option::is_none")]
    rho: Option<[[[f64; 2]; 4]; 4]>,
}

/// A state loaded from disk, with the exact family parameters kept when
/// the file provided them.
pub struct LoadedState {
    pub density: DensityMatrix<f64>,
    pub e0: Option<E0Params<f64>>,
}

pub fn load_state(path: &Path) -> Result<LoadedState, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Parse(format!("cannot read {}: {e}", path.display())))?;
    let parsed: StateJson = serde_json::from_str(&text)
        .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;

    if let Some(e0) = parsed.e0 {
        let params = E0Params::new(e0.a, e0.b, e0.c, e0.theta)
            .map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))?;
        return Ok(LoadedState { density: params.density(), e0: Some(params) });
    }
    if let Some(rho) = parsed.rho {
        let m = CMat4::from_fn(|i, j| Complex64::new(rho[i][j][0], rho[i][j][1]));
        let density = DensityMatrix::new(m)
            .map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))?;
        return Ok(LoadedState { density, e0: None });
    }
    Err(CliError::Parse(format!(
        "{}: state file needs an \"e0\" or a \"rho\" member",
        path.display()
    )))
}

/// Write a family state as JSON carrying both the parameters and the
/// reconstructed matrix.
pub fn write_e0_state(path: &Path, params: &E0Params<f64>) -> Result<(), CliError> {
    let m = params.density().into_matrix();
    let mut rho = [[[0.0f64; 2]; 4]; 4];
    for (i, row) in rho.iter_mut().enumerate() {
        for (j, entry) in row.iter_mut().enumerate() {
            let z = m[(i, j)];
            *entry = [z.re, z.im];
        }
    }
    let json = StateJson {
        e0: Some(E0Json { a: params.a(), b: params.b(), c: params.c(), theta: params.theta() }),
        rho: Some(rho),
    };
    let mut text = serde_json::to_string_pretty(&json)
        .map_err(|e| CliError::Io(format!("cannot serialize state: {e}")))?;
    text.push('\n');
    std::fs::write(path, text)
        .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))
}

//! Batch jobs over `tccore`: decomposition, verification sweeps and
//! Chern-Weil quadrature, each producing JSON output and a [`JobReport`].

pub mod checks;
pub mod commands;
pub mod report;

use thiserror::Error;

pub use commands::{
    cmd_chern2, cmd_decompose, cmd_normalform, cmd_powermap, cmd_verify, Chern2Args, Context, DecomposeArgs,
    DerivativeMode, GroupArgs, NormalFormArgs, PowerMapArgs, VerifyArgs,
};
pub use report::{Check, JobReport};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Generators(#[from] tccore::generators::GenError),
    #[error(transparent)]
    Quotient(#[from] tccore::quotient::QuotientError),
    #[error(transparent)]
    Weyl(#[from] tccore::weyl::WeylError),
    #[error(transparent)]
    Poly(#[from] tccore::polyring::PolyError),
    #[error(transparent)]
    ChernWeil(#[from] tccore::chern_weil::ChernWeilError),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

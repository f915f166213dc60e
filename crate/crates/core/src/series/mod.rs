//! Exact truncated q-series and Fourier–Jacobi expansions.

mod cyclo;
mod fjexp;
pub mod json;
mod kernel;
mod qseries;
mod specialize;

pub use cyclo::{CycloElt, MAX_CONDUCTOR};
pub use fjexp::{FJExp, Meta};
pub use qseries::QSeries;
pub use specialize::{
    certified_bound, evaluate_at, pullback, required_prec, specialize, specialize_cyclo, CycloSeries,
};

/// Either kind of series, for code that handles both uniformly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Series {
    Q(QSeries),
    FJ(FJExp),
}

impl From<QSeries> for Series {
    fn from(a: QSeries) -> Self {
        Series::Q(a)
    }
}

impl From<FJExp> for Series {
    fn from(a: FJExp) -> Self {
        Series::FJ(a)
    }
}

impl std::fmt::Display for Series {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Series::Q(a) => a.fmt(f),
            Series::FJ(a) => a.fmt(f),
        }
    }
}

impl Series {
    pub fn to_json_value(&self) -> serde_json::Value {
        match self {
            Series::Q(a) => json::qseries_to_value(a),
            Series::FJ(a) => json::fjexp_to_value(a),
        }
    }
}

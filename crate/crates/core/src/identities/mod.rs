//! A registry of identities between q-series and Fourier–Jacobi expansions,
//! each checked by exact coefficient comparison below a chosen precision.

mod kit;
mod registry;

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde_json::{json, Value};
use wildmatch::WildMatch;

use crate::error::{Error, Result};
use crate::rat::{int, Rat};
use crate::series::Series;

pub use kit::{f4_formula, f6_formula};
pub use registry::REGISTRY;

/// One displayed equality `lhs = rhs`.
#[derive(Clone, Debug)]
pub struct Equation {
    pub label: String,
    pub lhs: Series,
    pub rhs: Series,
}

pub struct Identity {
    pub id: &'static str,
    pub description: &'static str,
    pub default_prec: i64,
    pub build: fn(i64) -> Result<Vec<Equation>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
}

/// The first differing coefficient, at `q^t` (and `ζ^r` for Jacobi forms).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub label: String,
    pub t: Rat,
    pub r: Option<Rat>,
    pub lhs: Rat,
    pub rhs: Rat,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityReport {
    pub id: String,
    pub prec: i64,
    pub status: Status,
    pub equations: usize,
    pub mismatch: Option<Mismatch>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_json_value(&self) -> Value {
        let mut v = json!({
            "id": self.id,
            "prec": self.prec.to_string(),
            "status": if self.passed() { "pass" } else { "fail" },
            "equations": self.equations.to_string(),
        });
        if let Some(m) = &self.mismatch {
            v["mismatch"] = json!({
                "label": m.label,
                "t": m.t.to_string(),
                "r": m.r.as_ref().map(|r| r.to_string()),
                "lhs": m.lhs.to_string(),
                "rhs": m.rhs.to_string(),
            });
        }
        v
    }
}

impl std::fmt::Display for IdentityReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{status} {} (prec {}, {} equations)", self.id, self.prec, self.equations)?;
        if let Some(m) = &self.mismatch {
            write!(f, ": [{}] at q^{}", m.label, m.t)?;
            if let Some(r) = &m.r {
                write!(f, " ζ^{r}")?;
            }
            write!(f, " lhs {} rhs {}", m.lhs, m.rhs)?;
        }
        Ok(())
    }
}

pub fn find(id: &str) -> Result<&'static Identity> {
    REGISTRY
        .iter()
        .find(|e| e.id == id)
        .ok_or_else(|| Error::UnknownIdentity(id.to_string()))
}

/// Registry entries whose id matches `pattern` (`*` and `?` wildcards), by id.
pub fn matching(pattern: &str) -> Vec<&'static Identity> {
    let w = WildMatch::new(pattern);
    let mut v: Vec<_> = REGISTRY.iter().filter(|e| w.matches(e.id)).collect();
    v.sort_by_key(|e| e.id);
    v
}

type CoeffMap = BTreeMap<(Rat, Option<Rat>), Rat>;

/// Coefficients below `q^prec`; fails if the series is not known that far.
fn window(s: &Series, prec: i64, label: &str) -> Result<CoeffMap> {
    let p = int(prec);
    let known = match s {
        Series::Q(a) => a.prec_q(),
        Series::FJ(a) => a.prec_q(),
    };
    if known < p {
        return Err(Error::Uncertified(format!(
            "[{label}] one side is known only below q^{known}, q^{prec} requested"
        )));
    }
    Ok(match s {
        Series::Q(a) => {
            let s = int(a.qscale());
            a.terms()
                .iter()
                .map(|(t, c)| (int(*t) / &s, c))
                .filter(|(x, _)| *x < p)
                .map(|(x, c)| ((x, None), c.clone()))
                .collect()
        }
        Series::FJ(a) => {
            let (s, w) = (int(a.qscale()), int(a.zscale()));
            a.terms()
                .iter()
                .map(|((t, r), c)| (int(*t) / &s, int(*r) / &w, c))
                .filter(|(x, _, _)| *x < p)
                .map(|(x, y, c)| ((x, Some(y)), c.clone()))
                .collect()
        }
    })
}

/// The first coefficient below `q^prec` where the two sides of `eq` differ.
pub fn first_mismatch(eq: &Equation, prec: i64) -> Result<Option<Mismatch>> {
    if std::mem::discriminant(&eq.lhs) != std::mem::discriminant(&eq.rhs) {
        return Err(Error::Precondition(format!(
            "[{}] compares a q-series with a Jacobi expansion",
            eq.label
        )));
    }
    let a = window(&eq.lhs, prec, &eq.label)?;
    let b = window(&eq.rhs, prec, &eq.label)?;
    let zero = int(0);
    let keys: std::collections::BTreeSet<_> = a.keys().chain(b.keys()).collect();
    for k in keys {
        let x = a.get(k).unwrap_or(&zero);
        let y = b.get(k).unwrap_or(&zero);
        if x != y {
            return Ok(Some(Mismatch {
                label: eq.label.clone(),
                t: k.0.clone(),
                r: k.1.clone(),
                lhs: x.clone(),
                rhs: y.clone(),
            }));
        }
    }
    Ok(None)
}

fn run(entry: &Identity, prec: i64) -> Result<IdentityReport> {
    if prec <= 0 {
        return Err(Error::EmptyWindow(prec));
    }
    let eqs = (entry.build)(prec)?;
    let mut mismatch = None;
    for eq in &eqs {
        if let Some(m) = first_mismatch(eq, prec)? {
            mismatch = Some(m);
            break;
        }
    }
    Ok(IdentityReport {
        id: entry.id.to_string(),
        prec,
        status: if mismatch.is_none() { Status::Pass } else { Status::Fail },
        equations: eqs.len(),
        mismatch,
    })
}

/// Check one identity exactly below `q^prec`.
pub fn verify(id: &str, prec: i64) -> Result<IdentityReport> {
    run(find(id)?, prec)
}

/// Check every identity matching `pattern`, each at `prec` or at its own
/// default precision. Reports are ordered by id.
pub fn verify_all(pattern: &str, prec: Option<i64>) -> Result<Vec<IdentityReport>> {
    matching(pattern)
        .into_par_iter()
        .map(|e| run(e, prec.unwrap_or(e.default_prec)))
        .collect()
}

//! JSON wire format. Rationals travel as canonical strings.

use serde::{Deserialize, Serialize};

use super::fjexp::{FJExp, Meta};
use super::qseries::QSeries;
use crate::error::{Error, Result};
use crate::rat::parse_rat;

#[derive(Serialize, Deserialize)]
struct QSeriesWire {
    qscale: i64,
    prec: i64,
    terms: Vec<(i64, String)>,
}

#[derive(Serialize, Deserialize)]
struct MetaWire {
    weight: String,
    index: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    cone: Option<String>,
}

#[derive(Serialize, Deserialize)]
struct FJExpWire {
    qscale: i64,
    zscale: i64,
    prec: i64,
    terms: Vec<(i64, i64, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    meta: Option<MetaWire>,
}

pub fn qseries_to_value(a: &QSeries) -> serde_json::Value {
    serde_json::to_value(QSeriesWire {
        qscale: a.qscale(),
        prec: a.prec(),
        terms: a.terms().iter().map(|(t, c)| (*t, c.to_string())).collect(),
    })
    .expect("serializable")
}

pub fn qseries_to_json(a: &QSeries) -> String {
    qseries_to_value(a).to_string()
}

pub fn qseries_from_json(s: &str) -> Result<QSeries> {
    let w: QSeriesWire = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    if w.qscale <= 0 {
        return Err(Error::Parse("qscale must be positive".into()));
    }
    let terms = w
        .terms
        .into_iter()
        .map(|(t, c)| Ok((t, parse_rat(&c)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(QSeries::from_terms(w.qscale, w.prec, terms))
}

pub fn fjexp_to_value(a: &FJExp) -> serde_json::Value {
    serde_json::to_value(FJExpWire {
        qscale: a.qscale(),
        zscale: a.zscale(),
        prec: a.prec(),
        terms: a
            .terms()
            .iter()
            .map(|((t, r), c)| (*t, *r, c.to_string()))
            .collect(),
        meta: a.meta().map(|m| MetaWire {
            weight: m.weight.to_string(),
            index: m.index.to_string(),
            cone: m.cone.as_ref().map(|c| c.to_string()),
        }),
    })
    .expect("serializable")
}

pub fn fjexp_to_json(a: &FJExp) -> String {
    fjexp_to_value(a).to_string()
}

pub fn fjexp_from_json(s: &str) -> Result<FJExp> {
    let w: FJExpWire = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    if w.qscale <= 0 || w.zscale <= 0 {
        return Err(Error::Parse("scales must be positive".into()));
    }
    let terms = w
        .terms
        .into_iter()
        .map(|(t, r, c)| Ok(((t, r), parse_rat(&c)?)))
        .collect::<Result<Vec<_>>>()?;
    let meta = match w.meta {
        None => None,
        Some(m) => Some(Meta::new(
            parse_rat(&m.weight)?,
            parse_rat(&m.index)?,
            m.cone.as_deref().map(parse_rat).transpose()?,
        )),
    };
    Ok(FJExp::from_terms(w.qscale, w.zscale, w.prec, terms, meta))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{frac, int};

    #[test]
    fn qseries_format() {
        let a = QSeries::from_terms(8, 16, [(1, int(2)), (9, frac(-1, 3))]);
        let s = qseries_to_json(&a);
        assert_eq!(s, r#"{"qscale":8,"prec":16,"terms":[[1,"2"],[9,"-1/3"]]}"#);
        assert_eq!(qseries_from_json(&s).unwrap(), a);
    }

    #[test]
    fn fjexp_format() {
        let a = FJExp::from_terms(
            1,
            2,
            3,
            [((0, 1), int(1)), ((0, -1), int(-1))],
            Some(Meta::new(frac(1, 2), frac(1, 2), Some(int(0)))),
        );
        let s = fjexp_to_json(&a);
        assert_eq!(
            s,
            r#"{"qscale":1,"zscale":2,"prec":3,"terms":[[0,-1,"-1"],[0,1,"1"]],"meta":{"weight":"1/2","index":"1/2","cone":"0"}}"#
        );
        assert_eq!(fjexp_from_json(&s).unwrap(), a);
        assert!(fjexp_from_json("{}").is_err());
    }
}

//! JSON documents for polynomials and series.
//!
//! ```json
//! {"terms":[{"x":1,"y":2,"num":"3","den":"1"}]}
//! {"order":2,"convention":"coeff of t^n/n!","coeffs":[<poly>,<poly>,<poly>]}
//! ```
//!
//! Numerators and denominators are decimal strings so that arbitrarily
//! large values survive any JSON reader.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::poly::{Monomial, Poly};
use super::ring::Ring;
use super::series::EgfSeries;
use crate::error::{Error, Result};

pub const SERIES_CONVENTION: &str = "coeff of t^n/n!";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub x: u32,
    pub y: u32,
    pub num: String,
    pub den: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub terms: Vec<TermJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesJson {
    pub order: usize,
    pub convention: String,
    pub coeffs: Vec<PolyJson>,
}

impl<M: Monomial> From<&Poly<M>> for PolyJson {
    fn from(p: &Poly<M>) -> Self {
        PolyJson {
            terms: p
                .terms()
                .map(|(m, c)| {
                    let (x, y) = m.exponents();
                    TermJson {
                        x,
                        y,
                        num: c.numer().to_string(),
                        den: c.denom().to_string(),
                    }
                })
                .collect(),
        }
    }
}

fn parse_int(s: &str) -> Result<BigInt> {
    s.trim()
        .parse()
        .map_err(|_| Error::invalid(format!("not a decimal integer: {s:?}")))
}

impl<M: Monomial> TryFrom<&PolyJson> for Poly<M> {
    type Error = Error;

    fn try_from(doc: &PolyJson) -> Result<Self> {
        let mut out = Poly::new();
        for t in &doc.terms {
            let den = parse_int(&t.den)?;
            if den.is_zero() {
                return Err(Error::invalid("zero denominator in polynomial term"));
            }
            let m = M::from_exponents(t.x, t.y).ok_or_else(|| {
                Error::invalid(format!("term x^{} not allowed in a polynomial in y", t.x))
            })?;
            out.add_term(m, BigRational::new(parse_int(&t.num)?, den));
        }
        Ok(out)
    }
}

impl<M: Monomial> Poly<M> {
    pub fn to_json(&self) -> String {
        serde_json::to_string(&PolyJson::from(self)).expect("polynomial JSON")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let doc: PolyJson =
            serde_json::from_str(s).map_err(|e| Error::invalid(format!("polynomial JSON: {e}")))?;
        Poly::try_from(&doc)
    }
}

impl<M: Monomial> From<&EgfSeries<Poly<M>>> for SeriesJson
where
    Poly<M>: Ring,
{
    fn from(s: &EgfSeries<Poly<M>>) -> Self {
        SeriesJson {
            order: s.order(),
            convention: SERIES_CONVENTION.to_string(),
            coeffs: s.coeffs().iter().map(PolyJson::from).collect(),
        }
    }
}

impl<M: Monomial> EgfSeries<Poly<M>> {
    pub fn to_json(&self) -> String {
        serde_json::to_string(&SeriesJson::from(self)).expect("series JSON")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let doc: SeriesJson =
            serde_json::from_str(s).map_err(|e| Error::invalid(format!("series JSON: {e}")))?;
        if doc.convention != SERIES_CONVENTION {
            return Err(Error::invalid(format!(
                "unsupported series convention {:?}",
                doc.convention
            )));
        }
        if doc.coeffs.len() != doc.order + 1 {
            return Err(Error::invalid(format!(
                "series of order {} must carry {} coefficients, found {}",
                doc.order,
                doc.order + 1,
                doc.coeffs.len()
            )));
        }
        let coeffs = doc
            .coeffs
            .iter()
            .map(Poly::try_from)
            .collect::<Result<Vec<_>>>()?;
        EgfSeries::new(coeffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{PolyXY, PolyY};
    use num_traits::One;
    use proptest::prelude::*;

    #[test]
    fn schema_shape() {
        let p: PolyXY = "x y + 3 x^2 y^2".parse().unwrap();
        assert_eq!(
            p.to_json(),
            r#"{"terms":[{"x":1,"y":1,"num":"1","den":"1"},{"x":2,"y":2,"num":"3","den":"1"}]}"#
        );
        let s = EgfSeries::new(vec![PolyY::one(), PolyY::y()]).unwrap();
        assert_eq!(
            s.to_json(),
            r#"{"order":1,"convention":"coeff of t^n/n!","coeffs":[{"terms":[{"x":0,"y":0,"num":"1","den":"1"}]},{"terms":[{"x":0,"y":1,"num":"1","den":"1"}]}]}"#
        );
    }

    #[test]
    fn rejects_bad_documents() {
        assert!(PolyY::from_json(r#"{"terms":[{"x":1,"y":0,"num":"1","den":"1"}]}"#).is_err());
        assert!(PolyY::from_json(r#"{"terms":[{"x":0,"y":0,"num":"1","den":"0"}]}"#).is_err());
        assert!(PolyY::from_json(r#"{"terms":[{"x":0,"y":0,"num":"a","den":"1"}]}"#).is_err());
        assert!(EgfSeries::<PolyY>::from_json(
            r#"{"order":2,"convention":"coeff of t^n/n!","coeffs":[{"terms":[]}]}"#
        )
        .is_err());
        assert!(EgfSeries::<PolyY>::from_json(
            r#"{"order":0,"convention":"ordinary","coeffs":[{"terms":[]}]}"#
        )
        .is_err());
    }

    proptest! {
        #[test]
        fn poly_json_round_trips(
            terms in prop::collection::vec((0u32..6, 0u32..6, -10_000i64..10_000, 1i64..50), 0..8)
        ) {
            let p = PolyXY::from_terms(terms.into_iter().map(|(x, y, n, d)| {
                (crate::algebra::XY::new(x, y), crate::algebra::rat(n, d))
            }));
            prop_assert_eq!(PolyXY::from_json(&p.to_json()).unwrap(), p.clone());
            prop_assert_eq!(p.to_text().parse::<PolyXY>().unwrap(), p.clone());
            prop_assert_eq!(p.to_latex().parse::<PolyXY>().unwrap(), p);
        }
    }
}

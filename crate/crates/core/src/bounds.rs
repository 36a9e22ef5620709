//! Closed-form bounds on `m(n, r, k)`.
//!
//! Asymptotic statements are reported as exponents of `n`; only the counting
//! bound is a value for a specific `n`. Everything except the Kővári–Sós–Turán
//! expression is an exact rational.

use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::constructions::ceil_log2;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BoundsError {
    #[error("{formula}: {reason}")]
    OutOfRegime { formula: &'static str, reason: String },
}

fn regime(formula: &'static str, ok: bool, reason: impl FnOnce() -> String) -> Result<(), BoundsError> {
    if ok {
        Ok(())
    } else {
        Err(BoundsError::OutOfRegime { formula, reason: reason() })
    }
}

fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// `p/q`, or just `p` for integers.
pub fn render_rational(x: &BigRational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// `(k - 1) C(n, r) / C(k - 1, r)`, for `1 <= r <= k - 1 < n`.
pub fn counting_upper(n: u64, r: u64, k: u64) -> Result<BigRational, BoundsError> {
    regime("counting", r >= 1 && r < k && k - 1 < n, || {
        format!("needs 1 <= r <= k - 1 < n, got n = {n}, r = {r}, k = {k}")
    })?;
    let top = BigInt::from(k - 1) * binomial(BigInt::from(n), BigInt::from(r));
    Ok(BigRational::new(top, binomial(BigInt::from(k - 1), BigInt::from(r))))
}

/// Brown–Erdős–Sós exponent `(rq - p) / (q - 1)` for forbidding every
/// `q`-edge configuration on `p` vertices.
pub fn bes_exponent(r: u64, p: u64, q: u64) -> Result<BigRational, BoundsError> {
    regime("brown-erdos-sos", q >= 2, || format!("needs q >= 2, got q = {q}"))?;
    Ok(ratio((r * q) as i64 - p as i64, q as i64 - 1))
}

/// Random-subset exponent `r - 1`.
pub fn probabilistic_exponent(r: u64) -> Result<BigRational, BoundsError> {
    regime("probabilistic", r >= 1, || "needs r >= 1".into())?;
    Ok(ratio(r as i64 - 1, 1))
}

/// Deletion-method exponent `kr / (k - 1) - 1`.
pub fn alteration_exponent(r: u64, k: u64) -> Result<BigRational, BoundsError> {
    regime("alteration", k >= 2, || format!("needs k >= 2, got k = {k}"))?;
    Ok(ratio((k * r) as i64, k as i64 - 1) - BigRational::one())
}

/// Exponent of the high-girth lower bound on `m(n, 2, k)`, selected by
/// `k mod 6`.
pub fn high_girth_exponent(k: u64) -> Result<BigRational, BoundsError> {
    regime("high-girth", k >= 8, || format!("needs k >= 8, got k = {k}"))?;
    let k = k as i64;
    Ok(match k % 6 {
        5 => ratio(k - 3, k - 5),
        2 | 4 => ratio(k - 2, k - 4),
        1 | 3 => ratio(k - 1, k - 3),
        _ => ratio(k, k - 2),
    })
}

/// Bondy–Simonovits based upper exponent `1 + 1/floor(k/4)` for graphs.
pub fn cycle_upper_exponent(k: u64) -> Result<BigRational, BoundsError> {
    regime("even-cycle", k >= 4, || format!("needs k >= 4, got k = {k}"))?;
    Ok(BigRational::one() + ratio(1, (k / 4) as i64))
}

/// Upper exponent `r - 1/2^(r-1)` from forbidding a complete `r`-partite
/// hypergraph with parts of size 2, valid for `k >= 7` and
/// `3 <= r <= k - 1 - ceil(log2 k)`.
pub fn multipartite_upper_exponent(r: u64, k: u64) -> Result<BigRational, BoundsError> {
    regime("complete-multipartite", k >= 7, || format!("needs k >= 7, got k = {k}"))?;
    let top = k - 1 - ceil_log2(k) as u64;
    regime("complete-multipartite", (3..=top).contains(&r), || {
        format!("needs 3 <= r <= {top}, got r = {r}")
    })?;
    Ok(ratio(r as i64, 1) - BigRational::new(BigInt::one(), BigInt::one() << (r - 1)))
}

/// Kővári–Sós–Turán bound on `ex(n, K(s, t))`:
/// `(s-1)^(1/t) (n-t+1) n^(1-1/t) / 2 + (t-1) n / 2`, in `f64`.
pub fn kst_bound(n: u64, s: u64, t: u64) -> Result<f64, BoundsError> {
    regime("kovari-sos-turan", s >= 2 && t >= 2 && n >= t, || {
        format!("needs s >= 2, t >= 2, n >= t, got n = {n}, s = {s}, t = {t}")
    })?;
    let (n, s, t) = (n as f64, s as f64, t as f64);
    Ok(0.5 * (s - 1.0).powf(1.0 / t) * (n - t + 1.0) * n.powf(1.0 - 1.0 / t) + 0.5 * (t - 1.0) * n)
}

/// One labelled exponent; out-of-regime formulas keep their reason.
#[derive(Debug, Clone, PartialEq)]
pub struct ExponentEntry {
    pub label: &'static str,
    pub value: Result<BigRational, BoundsError>,
}

impl Serialize for ExponentEntry {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("ExponentEntry", 3)?;
        st.serialize_field("label", self.label)?;
        match &self.value {
            Ok(v) => {
                st.serialize_field("value", &render_rational(v))?;
                st.skip_field("error")?;
            }
            Err(e) => {
                st.serialize_field("value", &None::<String>)?;
                st.serialize_field("error", &e.to_string())?;
            }
        }
        st.end()
    }
}

pub fn lower_exponents(r: u64, k: u64) -> Vec<ExponentEntry> {
    let mut out = vec![
        ExponentEntry { label: "probabilistic", value: probabilistic_exponent(r) },
        ExponentEntry { label: "alteration", value: alteration_exponent(r, k) },
        ExponentEntry { label: "brown-erdos-sos", value: bes_exponent(r, k.saturating_sub(1), k) },
    ];
    if r == 2 {
        out.push(ExponentEntry { label: "high-girth", value: high_girth_exponent(k) });
    }
    out
}

pub fn upper_exponents(r: u64, k: u64) -> Vec<ExponentEntry> {
    let mut out = Vec::new();
    if r == 2 {
        out.push(ExponentEntry { label: "even-cycle", value: cycle_upper_exponent(k) });
    }
    out.push(ExponentEntry { label: "complete-multipartite", value: multipartite_upper_exponent(r, k) });
    out
}

/// Every bound evaluated for one parameter triple.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub n: u64,
    pub r: u64,
    pub k: u64,
    pub counting_upper: Result<BigRational, BoundsError>,
    pub lower_exponents: Vec<ExponentEntry>,
    pub upper_exponents: Vec<ExponentEntry>,
    /// `ex(n, K(ceil(k/2), 2))` bound, present for graphs with `k >= 6`.
    pub kst_value: Option<f64>,
}

impl BoundReport {
    pub fn new(n: u64, r: u64, k: u64) -> Self {
        let kst_value = (r == 2 && k >= 6).then(|| kst_bound(n, k.div_ceil(2), 2).ok()).flatten();
        BoundReport {
            n,
            r,
            k,
            counting_upper: counting_upper(n, r, k),
            lower_exponents: lower_exponents(r, k),
            upper_exponents: upper_exponents(r, k),
            kst_value,
        }
    }

    /// `floor` of the counting bound, the integer ceiling on `m(n, r, k)`.
    pub fn counting_ceiling(&self) -> Option<u64> {
        self.counting_upper.as_ref().ok().and_then(|v| v.floor().to_integer().to_u64())
    }
}

impl Serialize for BoundReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("BoundReport", 8)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("r", &self.r)?;
        st.serialize_field("k", &self.k)?;
        match &self.counting_upper {
            Ok(v) => {
                st.serialize_field("counting_upper", &render_rational(v))?;
                st.skip_field("counting_upper_error")?;
            }
            Err(e) => {
                st.serialize_field("counting_upper", &None::<String>)?;
                st.serialize_field("counting_upper_error", &e.to_string())?;
            }
        }
        st.serialize_field("lower_exponents", &self.lower_exponents)?;
        st.serialize_field("upper_exponents", &self.upper_exponents)?;
        st.serialize_field("kst_value", &self.kst_value)?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(num: i64, den: i64) -> BigRational {
        ratio(num, den)
    }

    #[test]
    fn counting_examples() {
        assert_eq!(counting_upper(10, 2, 5).unwrap(), q(30, 1));
        assert_eq!(counting_upper(8, 2, 5).unwrap(), q(56, 3));
        // r = k - 1: denominator C(k-1, k-1) = 1.
        assert_eq!(counting_upper(9, 5, 6).unwrap(), q(5 * 126, 1));
        // r = 1 gives exactly n.
        assert_eq!(counting_upper(11, 1, 4).unwrap(), q(11, 1));
        assert!(counting_upper(5, 5, 5).is_err());
        assert!(counting_upper(4, 2, 5).is_err());
        assert!(counting_upper(4, 0, 3).is_err());
    }

    #[test]
    fn exponent_examples() {
        assert_eq!(alteration_exponent(2, 5).unwrap(), q(3, 2));
        assert_eq!(bes_exponent(2, 4, 5).unwrap(), q(3, 2));
        assert_eq!(probabilistic_exponent(3).unwrap(), q(2, 1));
        assert_eq!(high_girth_exponent(9).unwrap(), q(4, 3));
        assert_eq!(multipartite_upper_exponent(3, 7).unwrap(), q(11, 4));
        assert_eq!(cycle_upper_exponent(8).unwrap(), q(3, 2));
        assert!(high_girth_exponent(7).is_err());
        assert!(multipartite_upper_exponent(4, 7).is_err());
        assert!(multipartite_upper_exponent(2, 9).is_err());
    }

    #[test]
    fn high_girth_table_by_residue() {
        assert_eq!(high_girth_exponent(11).unwrap(), q(8, 6));
        assert_eq!(high_girth_exponent(8).unwrap(), q(6, 4));
        assert_eq!(high_girth_exponent(10).unwrap(), q(8, 6));
        assert_eq!(high_girth_exponent(13).unwrap(), q(12, 10));
        assert_eq!(high_girth_exponent(12).unwrap(), q(12, 10));
    }

    #[test]
    fn high_girth_matches_known_upper_exponent_for_9_to_11() {
        // The matching upper exponent 1 + 1/floor(k/3) for k = 9, 10, 11.
        for k in 9..=11u64 {
            let upper = BigRational::one() + q(1, (k / 3) as i64);
            assert_eq!(high_girth_exponent(k).unwrap(), upper, "k = {k}");
            assert_eq!(upper, q(4, 3));
        }
    }

    #[test]
    fn kst_examples() {
        let v = kst_bound(10, 2, 2).unwrap();
        assert!((v - (0.5 * 9.0 * 10f64.sqrt() + 5.0)).abs() < 1e-12);
        assert!((v - 19.230_249_470_757_7).abs() < 1e-9);
        let v = kst_bound(20, 3, 2).unwrap();
        assert!((v - 70.083_275_543_199_22).abs() < 1e-9);
        let (s, t) = (3u64, 3u64);
        let n = t;
        let edge = 0.5 * (s as f64 - 1.0).powf(1.0 / 3.0) * (n as f64).powf(2.0 / 3.0) + n as f64;
        assert!((kst_bound(n, s, t).unwrap() - edge).abs() < 1e-12);
        assert!(kst_bound(1, 2, 2).is_err());
    }

    #[test]
    fn report_json_shape() {
        let json = serde_json::to_value(BoundReport::new(10, 2, 5)).unwrap();
        assert_eq!(json["counting_upper"], "30");
        assert_eq!(json["lower_exponents"][1]["label"], "alteration");
        assert_eq!(json["lower_exponents"][1]["value"], "3/2");
        assert_eq!(json["lower_exponents"][3]["value"], serde_json::Value::Null);
        assert!(json["lower_exponents"][3]["error"].as_str().unwrap().contains("k >= 8"));
        assert_eq!(json["kst_value"], serde_json::Value::Null);
        let json = serde_json::to_value(BoundReport::new(5, 5, 5)).unwrap();
        assert_eq!(json["counting_upper"], serde_json::Value::Null);
        assert!(json["counting_upper_error"].is_string());
    }

    #[test]
    fn counting_ceiling_floors() {
        assert_eq!(BoundReport::new(8, 2, 5).counting_ceiling(), Some(18));
        assert_eq!(BoundReport::new(6, 2, 6).counting_ceiling(), Some(7));
    }
}

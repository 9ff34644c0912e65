// SPDX-License-Identifier: Apache-2.0

use std::fmt;

use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};

/// Concavity parameter `alpha` in `R ∪ {+inf}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AlphaParam {
    Finite(f64),
    PosInf,
}

impl AlphaParam {
    pub const LOG: AlphaParam = AlphaParam::Finite(0.0);

    pub fn new(value: f64) -> Result<Self> {
        if value.is_nan() {
            return Err(Error::InvalidAlpha("NaN".into()));
        }
        if value == f64::INFINITY {
            return Ok(AlphaParam::PosInf);
        }
        if value == f64::NEG_INFINITY {
            return Err(Error::InvalidAlpha(
                "alpha = -inf (quasiconcave case) is not supported".into(),
            ));
        }
        Ok(AlphaParam::Finite(value))
    }

    pub fn as_f64(self) -> f64 {
        match self {
            AlphaParam::Finite(a) => a,
            AlphaParam::PosInf => f64::INFINITY,
        }
    }

    pub fn is_log(self) -> bool {
        self == AlphaParam::Finite(0.0)
    }

    /// `(1 - alpha psi)_+^{1/alpha}`, `exp(-psi)` at zero, the indicator of
    /// `{psi <= 0}` at `+inf`.
    pub fn value_of_base(self, psi: f64) -> f64 {
        if psi == f64::INFINITY {
            return 0.0;
        }
        match self {
            AlphaParam::PosInf => {
                if psi <= 0.0 {
                    1.0
                } else {
                    0.0
                }
            }
            AlphaParam::Finite(0.0) => (-psi).exp(),
            AlphaParam::Finite(a) => {
                let w = 1.0 - a * psi;
                if w <= 0.0 {
                    if a > 0.0 {
                        0.0
                    } else {
                        // below the admissible range of an alpha < 0 base
                        f64::INFINITY
                    }
                } else {
                    ((-a * psi).ln_1p() / a).exp()
                }
            }
        }
    }

    /// Inverse of [`AlphaParam::value_of_base`]: `(1 - y^alpha) / alpha` or `-log y`.
    pub fn base_of_value(self, y: f64) -> f64 {
        if y <= 0.0 {
            return f64::INFINITY;
        }
        match self {
            AlphaParam::PosInf => 0.0,
            AlphaParam::Finite(0.0) => -y.ln(),
            AlphaParam::Finite(a) => -(a * y.ln()).exp_m1() / a,
        }
    }

    /// Smallest base value an alpha-concave function can take, i.e. where the
    /// transform `value_of_base` stays finite.
    pub fn base_floor(self) -> f64 {
        match self {
            AlphaParam::Finite(a) if a < 0.0 => 1.0 / a,
            _ => f64::NEG_INFINITY,
        }
    }
}

impl fmt::Display for AlphaParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlphaParam::Finite(a) => write!(f, "{a}"),
            AlphaParam::PosInf => write!(f, "inf"),
        }
    }
}

impl Serialize for AlphaParam {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            AlphaParam::Finite(a) => s.serialize_f64(*a),
            AlphaParam::PosInf => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for AlphaParam {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct AlphaVisitor;
        impl Visitor<'_> for AlphaVisitor {
            type Value = AlphaParam;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a number or the string \"inf\"")
            }
            fn visit_f64<E: de::Error>(self, v: f64) -> std::result::Result<AlphaParam, E> {
                AlphaParam::new(v).map_err(E::custom)
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<AlphaParam, E> {
                self.visit_f64(v as f64)
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<AlphaParam, E> {
                self.visit_f64(v as f64)
            }
            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<AlphaParam, E> {
                match v {
                    "inf" | "+inf" | "infinity" => Ok(AlphaParam::PosInf),
                    other => other
                        .parse::<f64>()
                        .map_err(E::custom)
                        .and_then(|x| AlphaParam::new(x).map_err(E::custom)),
                }
            }
        }
        d.deserialize_any(AlphaVisitor)
    }
}

/// The alpha-mean `M_alpha^{(s,t)}(u, v)`.
pub fn alpha_mean(alpha: AlphaParam, s: f64, t: f64, u: f64, v: f64) -> Result<f64> {
    if !(u > 0.0 && v > 0.0) {
        return Err(Error::NonPositiveMeanArgument { u, v });
    }
    if !(s >= 0.0 && t >= 0.0 && ((s + t) - 1.0).abs() <= 1e-12) {
        return Err(Error::WeightsNotNormalized { s, t });
    }
    Ok(match alpha {
        AlphaParam::PosInf => {
            // the max case; zero weights drop their argument
            match (s > 0.0, t > 0.0) {
                (true, true) => u.max(v),
                (true, false) => u,
                _ => v,
            }
        }
        AlphaParam::Finite(0.0) => (s * u.ln() + t * v.ln()).exp(),
        AlphaParam::Finite(a) => {
            // s u^a + t v^a = 1 + s expm1(a ln u) + t expm1(a ln v), kept accurate near a = 0
            let inner = s * (a * u.ln()).exp_m1() + t * (a * v.ln()).exp_m1();
            (inner.ln_1p() / a).exp()
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mean_examples() {
        let m0 = alpha_mean(AlphaParam::Finite(0.0), 0.5, 0.5, 4.0, 9.0).unwrap();
        assert!((m0 - 6.0).abs() < 1e-14);
        let m1 = alpha_mean(AlphaParam::Finite(1.0), 0.5, 0.5, 4.0, 9.0).unwrap();
        assert!((m1 - 6.5).abs() < 1e-14);
        let minf = alpha_mean(AlphaParam::PosInf, 0.3, 0.7, 4.0, 9.0).unwrap();
        assert_eq!(minf, 9.0);
        let tiny = alpha_mean(AlphaParam::Finite(1e-6), 0.5, 0.5, 4.0, 9.0).unwrap();
        assert!((tiny - 6.0).abs() < 1e-5);
    }

    #[test]
    fn mean_rejects_bad_input() {
        assert!(matches!(
            alpha_mean(AlphaParam::LOG, 0.5, 0.5, 0.0, 1.0),
            Err(Error::NonPositiveMeanArgument { .. })
        ));
        assert!(matches!(
            alpha_mean(AlphaParam::LOG, 0.5, 0.5 + 1e-9, 1.0, 1.0),
            Err(Error::WeightsNotNormalized { .. })
        ));
    }

    #[test]
    fn alpha_parsing() {
        assert!(AlphaParam::new(f64::NAN).is_err());
        assert!(AlphaParam::new(f64::NEG_INFINITY).is_err());
        assert_eq!(AlphaParam::new(f64::INFINITY).unwrap(), AlphaParam::PosInf);
        let a: AlphaParam = serde_json::from_str("\"inf\"").unwrap();
        assert_eq!(a, AlphaParam::PosInf);
        let b: AlphaParam = serde_json::from_str("-0.5").unwrap();
        assert_eq!(b, AlphaParam::Finite(-0.5));
        assert_eq!(serde_json::to_string(&AlphaParam::PosInf).unwrap(), "\"inf\"");
    }

    #[test]
    fn base_transform_round_trip() {
        for a in [-0.5, 0.0, 1e-4, 1.0, 2.0] {
            let alpha = AlphaParam::Finite(a);
            for y in [1e-6, 0.1, 0.5, 1.0, 1.7] {
                let psi = alpha.base_of_value(y);
                let back = alpha.value_of_base(psi);
                // the inverse loses digits like y^-alpha as y -> 0
                let tol = 1e-13 * y.max(1.0) * y.powf(-a).max(1.0);
                assert!((back - y).abs() <= tol, "a={a} y={y} back={back}");
            }
        }
    }
}

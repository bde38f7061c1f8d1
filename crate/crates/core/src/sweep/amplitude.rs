use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::states::period;

/// A real amplitude, either literal or a multiple of the period `T_d`
/// resolved per dimension (`Td`, `Td/2`, `2Td`, `1.5Td/4`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawAmplitude", into = "String")]
pub enum AmplitudeExpr {
    Literal(f64),
    Period { factor: f64, divisor: f64 },
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawAmplitude {
    Number(f64),
    Text(String),
}

impl TryFrom<RawAmplitude> for AmplitudeExpr {
    type Error = String;

    fn try_from(raw: RawAmplitude) -> std::result::Result<Self, Self::Error> {
        match raw {
            RawAmplitude::Number(x) => AmplitudeExpr::literal(x),
            RawAmplitude::Text(s) => s.parse(),
        }
    }
}

impl From<AmplitudeExpr> for String {
    fn from(a: AmplitudeExpr) -> String {
        a.to_string()
    }
}

impl AmplitudeExpr {
    fn literal(x: f64) -> std::result::Result<Self, String> {
        if x.is_finite() {
            Ok(AmplitudeExpr::Literal(x))
        } else {
            Err(format!("amplitude {x} is not finite"))
        }
    }

    pub fn resolve(&self, d: usize) -> Result<f64> {
        match *self {
            AmplitudeExpr::Literal(x) => Ok(x),
            AmplitudeExpr::Period { factor, divisor } => Ok(factor * period(d)? / divisor),
        }
    }
}

impl FromStr for AmplitudeExpr {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let s = s.trim();
        let Some((head, tail)) = s.split_once("Td") else {
            return s
                .parse::<f64>()
                .map_err(|_| format!("cannot read amplitude `{s}`"))
                .and_then(AmplitudeExpr::literal);
        };
        let head = head.trim_end_matches('*');
        let factor = match head {
            "" => 1.0,
            "-" => -1.0,
            h => h
                .parse::<f64>()
                .map_err(|_| format!("bad period multiple in `{s}`"))?,
        };
        let divisor = match tail {
            "" => 1.0,
            t => t
                .strip_prefix('/')
                .and_then(|v| v.parse::<f64>().ok())
                .filter(|v| *v != 0.0 && v.is_finite())
                .ok_or_else(|| format!("bad period divisor in `{s}`"))?,
        };
        if !factor.is_finite() {
            return Err(format!("bad period multiple in `{s}`"));
        }
        Ok(AmplitudeExpr::Period { factor, divisor })
    }
}

impl fmt::Display for AmplitudeExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            AmplitudeExpr::Literal(x) => write!(f, "{x}"),
            AmplitudeExpr::Period { factor, divisor } => {
                if factor != 1.0 {
                    write!(f, "{factor}")?;
                }
                f.write_str("Td")?;
                if divisor != 1.0 {
                    write!(f, "/{divisor}")?;
                }
                Ok(())
            }
        }
    }
}

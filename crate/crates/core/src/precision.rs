//! Working-precision selection and the extended-precision (128-bit mantissa,
//! about 38 significant digits) kernels built on `astro-float`.

use crate::error::{Error, Result};
use std::fmt;
use std::str::FromStr;

/// Environment variable holding the default precision mode.
pub const PRECISION_ENV: &str = "LATDET_PRECISION";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PrecisionMode {
    /// binary64 with compensated summation.
    #[default]
    Standard,
    /// Multi-precision arithmetic with a 128-bit mantissa.
    Extended,
}

impl PrecisionMode {
    /// Reads [`PRECISION_ENV`]; unset means [`PrecisionMode::Standard`].
    pub fn from_env() -> Result<Self> {
        match std::env::var(PRECISION_ENV) {
            Ok(v) => v.parse(),
            Err(_) => Ok(Self::Standard),
        }
    }
}

impl FromStr for PrecisionMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "standard" => Ok(Self::Standard),
            "extended" => Ok(Self::Extended),
            other => Err(Error::Parameter(format!(
                "precision mode must be 'standard' or 'extended', got '{other}'"
            ))),
        }
    }
}

impl fmt::Display for PrecisionMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Standard => "standard",
            Self::Extended => "extended",
        })
    }
}

pub(crate) mod ext {
    use astro_float::{BigFloat, Consts, Radix, RoundingMode};

    pub const BITS: usize = 128;
    pub const RM: RoundingMode = RoundingMode::ToEven;

    pub fn consts() -> Consts {
        Consts::new().expect("astro-float constant cache")
    }

    /// `4 sin²(πk / (2n))` for `k in 0..count`.
    pub fn four_sin_sq(n: usize, count: usize, cc: &mut Consts) -> Vec<BigFloat> {
        let pi = cc.pi(BITS, RM);
        let denom = BigFloat::from_u64(2 * n as u64, BITS);
        let four = BigFloat::from_u64(4, BITS);
        (0..count)
            .map(|k| {
                let x = pi.mul(&BigFloat::from_u64(k as u64, BITS), BITS, RM).div(&denom, BITS, RM);
                let s = x.sin(BITS, RM, cc);
                s.mul(&s, BITS, RM).mul(&four, BITS, RM)
            })
            .collect()
    }

    pub fn zero() -> BigFloat {
        BigFloat::from_u64(0, BITS)
    }

    pub fn to_f64(x: &BigFloat, cc: &mut Consts) -> f64 {
        to_decimal(x, cc).parse().expect("decimal rendering of a finite BigFloat")
    }

    pub fn to_decimal(x: &BigFloat, cc: &mut Consts) -> String {
        x.format(Radix::Dec, RM, cc).expect("finite BigFloat formats")
    }
}

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::exact::parse_rational;

/// Window lengths `L`: either one value or `min:max:steps` with `steps`
/// evenly spaced points including both ends. Points are exact rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LGrid {
    points: Vec<BigRational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridError(pub String);

impl fmt::Display for GridError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid L grid: {}", self.0)
    }
}

impl std::error::Error for GridError {}

impl LGrid {
    pub fn range(min: BigRational, max: BigRational, steps: usize) -> Result<Self, GridError> {
        if min.is_negative() {
            return Err(GridError("min must be ≥ 0".into()));
        }
        if max <= min {
            return Err(GridError("max must exceed min".into()));
        }
        if steps < 2 {
            return Err(GridError("a range needs at least 2 steps".into()));
        }
        let width = (&max - &min) / BigRational::from_integer(BigInt::from(steps - 1));
        let points = (0..steps)
            .map(|i| &min + &width * BigRational::from_integer(BigInt::from(i)))
            .collect();
        Ok(Self { points })
    }

    pub fn single(value: BigRational) -> Result<Self, GridError> {
        if value.is_negative() {
            return Err(GridError("L must be ≥ 0".into()));
        }
        Ok(Self {
            points: vec![value],
        })
    }

    pub fn points(&self) -> &[BigRational] {
        &self.points
    }

    pub fn max(&self) -> BigRational {
        self.points
            .iter()
            .max()
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }
}

impl FromStr for LGrid {
    type Err = GridError;

    fn from_str(s: &str) -> Result<Self, GridError> {
        let parse = |t: &str| parse_rational(t).map_err(|e| GridError(e.to_string()));
        let parts: Vec<&str> = s.split(':').collect();
        match parts.as_slice() {
            [one] => Self::single(parse(one)?),
            [min, max, steps] => {
                let steps: usize = steps
                    .trim()
                    .parse()
                    .map_err(|_| GridError(format!("bad step count {steps:?}")))?;
                Self::range(parse(min)?, parse(max)?, steps)
            }
            _ => Err(GridError(format!(
                "expected \"L\" or \"min:max:steps\", got {s:?}"
            ))),
        }
    }
}

use std::fmt;
use std::io::{self, Write};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::exact::{format_rational, integer, ratio};
use crate::spectrum::Spectrum;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpacingSource {
    Empirical,
    ClosedForm { d: u64 },
}

/// One point mass `weight · δ(s − spacing)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpacingAtom {
    pub spacing: BigRational,
    pub weight: BigRational,
}

/// A purely atomic spacing law: distinct spacings in ascending order with
/// weights summing to exactly one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpacingDistribution {
    atoms: Vec<SpacingAtom>,
    source: SpacingSource,
}

impl SpacingDistribution {
    pub fn atoms(&self) -> &[SpacingAtom] {
        &self.atoms
    }

    pub fn source(&self) -> SpacingSource {
        self.source
    }

    /// Compares atoms only, ignoring where the law came from.
    pub fn same_law(&self, other: &SpacingDistribution) -> bool {
        self.atoms == other.atoms
    }

    pub fn total_weight(&self) -> BigRational {
        self.atoms.iter().map(|a| &a.weight).sum()
    }

    /// `s_numerator,s_denominator,weight` with the weight as an exact `p/q`.
    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "s_numerator,s_denominator,weight")?;
        for a in &self.atoms {
            writeln!(
                w,
                "{},{},{}",
                a.spacing.numer(),
                a.spacing.denom(),
                format_rational(&a.weight)
            )?;
        }
        Ok(())
    }
}

impl fmt::Display for SpacingDistribution {
    /// Renders e.g. `1/3·δ(s) + 1/3·δ(s−1) + 1/3·δ(s−2)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .atoms
            .iter()
            .map(|a| {
                let delta = if a.spacing.is_zero() {
                    "δ(s)".to_string()
                } else {
                    format!("δ(s−{})", format_rational(&a.spacing))
                };
                if a.weight.is_one() {
                    delta
                } else {
                    format!("{}·{delta}", format_rational(&a.weight))
                }
            })
            .collect();
        f.write_str(&terms.join(" + "))
    }
}

/// Circular nearest-neighbour spacings, closing the circle with
/// `φ_0 + N − φ_{N−1}`, aggregated into exact atoms of weight `count / N`.
pub fn spacings(spec: &Spectrum) -> Result<SpacingDistribution> {
    if spec.is_empty() {
        return Err(Error::EmptySpectrum);
    }
    let values: Vec<&BigRational> = spec.values().collect();
    let period = BigRational::from_integer(BigInt::from(spec.n()));
    let mut gaps: Vec<BigRational> = values.windows(2).map(|w| w[1] - w[0]).collect();
    gaps.push(values[0] + &period - values[values.len() - 1]);
    gaps.sort();

    let total = BigInt::from(gaps.len());
    let mut atoms: Vec<SpacingAtom> = Vec::new();
    let mut i = 0;
    while i < gaps.len() {
        let j = gaps[i..].iter().take_while(|g| **g == gaps[i]).count();
        atoms.push(SpacingAtom {
            spacing: gaps[i].clone(),
            weight: BigRational::new(BigInt::from(j), total.clone()),
        });
        i += j;
    }
    Ok(SpacingDistribution {
        atoms,
        source: SpacingSource::Empirical,
    })
}

/// Known spacing laws: `δ(s−1)` for `D ∈ {1, 2}`, and
/// `(δ(s) + δ(s−1) + δ(s−2)) / 3` for `D = 3`.
pub fn spacing_distribution_closed(d: u64) -> Result<SpacingDistribution> {
    let atoms = match d {
        1 | 2 => vec![SpacingAtom {
            spacing: integer(1),
            weight: integer(1),
        }],
        3 => (0..3)
            .map(|s| SpacingAtom {
                spacing: integer(s),
                weight: ratio(1, 3),
            })
            .collect(),
        _ => return Err(Error::UnsupportedD(d)),
    };
    Ok(SpacingDistribution {
        atoms,
        source: SpacingSource::ClosedForm { d },
    })
}

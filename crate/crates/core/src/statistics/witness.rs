//! Two approximant families with different constant spacing laws.
//!
//! Along `D = 1` every spectrum is rigid, along `D = 3` every spectrum has
//! the three-atom law. Both families run off to `N → ∞`, so the sequence of
//! spacing distributions has two distinct accumulation points and no limit.
//! The number variance splits the same way (`0` versus `2/3` at `L = 1`).

use std::fmt;

use num_rational::BigRational;

use super::number_variance::{number_variance_closed_exact, number_variance_direct};
use super::spacing::{spacing_distribution_closed, spacings, SpacingDistribution};
use crate::diophantine::approximants_with_gcd;
use crate::exact::{format_rational, integer};
use crate::spectrum::eigenphases;
use crate::{Approximant, IrrationalAlpha, Result};

const WITNESS_GCDS: [u64; 2] = [1, 3];

#[derive(Debug, Clone)]
pub struct FamilyMember {
    pub approximant: Approximant,
    pub spacing: SpacingDistribution,
    /// `Σ²(1)` by the exact sweep.
    pub number_variance_at_one: BigRational,
}

#[derive(Debug, Clone)]
pub struct WitnessFamily {
    pub d: u64,
    pub members: Vec<FamilyMember>,
    /// The common spacing law, if every member agrees on one.
    pub law: Option<SpacingDistribution>,
    /// The closed-form `Σ²_D(1)`.
    pub closed_number_variance_at_one: BigRational,
}

impl WitnessFamily {
    /// Every member matches the closed-form law and the closed-form `Σ²(1)`.
    pub fn consistent(&self) -> bool {
        let closed = spacing_distribution_closed(self.d).expect("witness uses D = 1, 3");
        self.members.iter().all(|m| {
            m.spacing.same_law(&closed)
                && m.number_variance_at_one == self.closed_number_variance_at_one
        })
    }
}

#[derive(Debug, Clone)]
pub struct DivergenceWitness {
    pub alpha: String,
    pub families: Vec<WitnessFamily>,
}

impl DivergenceWitness {
    pub fn is_empty(&self) -> bool {
        self.families.iter().all(|f| f.members.is_empty())
    }

    /// Both families have a constant law and the two laws differ.
    pub fn laws_distinct(&self) -> bool {
        match (&self.families[0].law, &self.families[1].law) {
            (Some(a), Some(b)) => !a.same_law(b),
            _ => false,
        }
    }

    pub fn number_variances_distinct(&self) -> bool {
        self.families[0].closed_number_variance_at_one
            != self.families[1].closed_number_variance_at_one
    }

    /// Holds for a non-empty report whose families are internally
    /// consistent and mutually distinct.
    pub fn holds(&self) -> bool {
        !self.is_empty()
            && self.families.iter().all(WitnessFamily::consistent)
            && self.laws_distinct()
            && self.number_variances_distinct()
    }
}

impl fmt::Display for DivergenceWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "divergence witness for alpha = {}", self.alpha)?;
        if self.is_empty() {
            return writeln!(f, "  (empty: no approximants requested)");
        }
        for fam in &self.families {
            let ns: Vec<String> = fam
                .members
                .iter()
                .map(|m| format!("(a={}, N={})", m.approximant.a(), m.approximant.n()))
                .collect();
            writeln!(f, "  D = {}: {}", fam.d, ns.join(", "))?;
            match &fam.law {
                Some(law) => writeln!(f, "    P(s) = {law}")?,
                None => writeln!(f, "    P(s) differs between members")?,
            }
            writeln!(
                f,
                "    Sigma^2(1) = {}",
                format_rational(&fam.closed_number_variance_at_one)
            )?;
        }
        writeln!(
            f,
            "  spacing laws distinct: {}; number variances distinct: {}",
            self.laws_distinct(),
            self.number_variances_distinct()
        )?;
        write!(f, "  no limit distribution: {}", self.holds())
    }
}

pub fn divergence_witness(alpha: &IrrationalAlpha, count: usize) -> Result<DivergenceWitness> {
    let one = integer(1);
    let mut families = Vec::with_capacity(WITNESS_GCDS.len());
    for d in WITNESS_GCDS {
        let mut members = Vec::with_capacity(count);
        for app in approximants_with_gcd(alpha, d, count)? {
            let spec = eigenphases(&app);
            members.push(FamilyMember {
                approximant: app,
                spacing: spacings(&spec)?,
                number_variance_at_one: number_variance_direct(&spec, &one)?,
            });
        }
        let law = match members.split_first() {
            Some((first, rest)) if rest.iter().all(|m| m.spacing.same_law(&first.spacing)) => {
                Some(first.spacing.clone())
            }
            _ => None,
        };
        families.push(WitnessFamily {
            d,
            members,
            law,
            closed_number_variance_at_one: number_variance_closed_exact(d, &one)?,
        });
    }
    Ok(DivergenceWitness {
        alpha: alpha.to_string(),
        families,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_witness() {
        let w = divergence_witness(&IrrationalAlpha::golden(), 3).unwrap();
        assert!(w.holds());
        let text = w.to_string();
        assert!(text.contains("P(s) = δ(s−1)"));
        assert!(text.contains("P(s) = 1/3·δ(s) + 1/3·δ(s−1) + 1/3·δ(s−2)"));
        assert!(text.contains("Sigma^2(1) = 2/3"));
        let ns: Vec<u64> = w.families[1]
            .members
            .iter()
            .map(|m| m.approximant.n())
            .collect();
        assert_eq!(ns, vec![24, 39, 63]);
    }

    #[test]
    fn sqrt2_witness() {
        let w = divergence_witness(&IrrationalAlpha::sqrt2(), 2).unwrap();
        assert!(w.holds());
        assert_eq!(w.families[0].members.len(), 2);
    }

    #[test]
    fn empty_witness() {
        let w = divergence_witness(&IrrationalAlpha::golden(), 0).unwrap();
        assert!(w.is_empty());
        assert!(!w.holds());
        assert!(w.to_string().contains("empty"));
    }

    #[test]
    fn short_prefix_propagates() {
        let alpha = IrrationalAlpha::from_cf(vec![1, 1, 1]).unwrap();
        assert!(divergence_witness(&alpha, 5).is_err());
    }
}

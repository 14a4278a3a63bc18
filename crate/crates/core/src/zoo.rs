//! Named families of permutation groups.
//!
//! Spec strings accepted by [`ZooSpec::parse`]:
//!
//! | form                         | group                                  |
//! |------------------------------|----------------------------------------|
//! | `C7`, `cyclic:7`             | cyclic group as one 7-cycle            |
//! | `D4`, `dihedral:4`           | symmetries of a square, on 4 points    |
//! | `S4`, `symmetric:4`          | symmetric group                        |
//! | `A4`, `alternating:4`        | alternating group                      |
//! | `Q8`, `quaternion8`          | quaternions, regular action on 8 points |
//! | `C2xC4`, `direct_product:C2,C4` | direct product on disjoint points   |
//!
//! Custom groups come from a cycle-notation generator string instead.

use std::fmt;

use crate::error::GroupError;
use crate::group::{generate_group_on, GroupTable};
use crate::perm::{parse_generators, Permutation, MAX_DEGREE};

/// Left multiplication by `i` and `j` on `1, −1, i, −i, j, −j, k, −k` (points 0..8).
pub const QUATERNION8_GENERATORS: &str = "(0 2 1 3)(4 6 5 7), (0 4 1 5)(2 7 3 6)";

/// Symmetric and alternating groups are limited to this many points.
pub const MAX_SYMMETRIC_PARAMETER: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ZooSpec {
    Cyclic(usize),
    Dihedral(usize),
    Symmetric(usize),
    Alternating(usize),
    Quaternion8,
    DirectProduct(Vec<ZooSpec>),
    Custom(String),
}

impl ZooSpec {
    pub fn parse(input: &str) -> Result<Self, GroupError> {
        let s = input.trim();
        let invalid = || GroupError::InvalidSpec(input.to_string());

        if let Some((family, param)) = s.split_once(':') {
            let family = family.trim().to_ascii_lowercase();
            if family == "direct_product" {
                let factors = param
                    .split(',')
                    .map(Self::parse)
                    .collect::<Result<Vec<_>, _>>()?;
                return Self::product(factors).ok_or_else(invalid);
            }
            if family == "custom" {
                return Ok(ZooSpec::Custom(param.to_string()));
            }
            let n: usize = param.trim().parse().map_err(|_| invalid())?;
            let spec = match family.as_str() {
                "cyclic" => ZooSpec::Cyclic(n),
                "dihedral" => ZooSpec::Dihedral(n),
                "symmetric" => ZooSpec::Symmetric(n),
                "alternating" => ZooSpec::Alternating(n),
                _ => return Err(invalid()),
            };
            spec.validate()?;
            return Ok(spec);
        }

        if s.eq_ignore_ascii_case("quaternion8") || s.eq_ignore_ascii_case("q8") {
            return Ok(ZooSpec::Quaternion8);
        }
        let factors: Vec<&str> = s.split(['x', 'X', '*', '×']).collect();
        if factors.len() > 1 {
            let factors = factors
                .into_iter()
                .map(Self::parse)
                .collect::<Result<Vec<_>, _>>()?;
            return Self::product(factors).ok_or_else(invalid);
        }

        let mut chars = s.chars();
        let letter = chars.next().ok_or_else(invalid)?;
        let n: usize = chars.as_str().parse().map_err(|_| invalid())?;
        let spec = match letter.to_ascii_uppercase() {
            'C' => ZooSpec::Cyclic(n),
            'D' => ZooSpec::Dihedral(n),
            'S' => ZooSpec::Symmetric(n),
            'A' => ZooSpec::Alternating(n),
            _ => return Err(invalid()),
        };
        spec.validate()?;
        Ok(spec)
    }

    fn product(factors: Vec<ZooSpec>) -> Option<Self> {
        (factors.len() >= 2).then_some(ZooSpec::DirectProduct(factors))
    }

    fn validate(&self) -> Result<(), GroupError> {
        match *self {
            ZooSpec::Cyclic(n) | ZooSpec::Dihedral(n) if n == 0 => {
                Err(GroupError::InvalidSpec(format!("{self}: parameter must be at least 1")))
            }
            ZooSpec::Symmetric(0) | ZooSpec::Alternating(0) => {
                Err(GroupError::InvalidSpec(format!("{self}: parameter must be at least 1")))
            }
            ZooSpec::Symmetric(n) | ZooSpec::Alternating(n) if n > MAX_SYMMETRIC_PARAMETER => {
                Err(GroupError::ParameterLimit {
                    family: if matches!(self, ZooSpec::Symmetric(_)) { "symmetric" } else { "alternating" },
                    parameter: n,
                    limit: MAX_SYMMETRIC_PARAMETER,
                })
            }
            _ => Ok(()),
        }
    }

    /// Generators together with the number of points they act on.
    pub fn generators(&self) -> Result<(usize, Vec<Permutation>), GroupError> {
        self.validate()?;
        let cycle = |pts: std::ops::Range<usize>| pts.collect::<Vec<_>>();
        let perm = |degree: usize, cycles: &[Vec<usize>]| Permutation::from_cycles(degree, cycles);
        match self {
            ZooSpec::Cyclic(1) | ZooSpec::Symmetric(1) => Ok((1, vec![])),
            ZooSpec::Cyclic(n) => Ok((*n, vec![perm(*n, &[cycle(0..*n)])?])),
            // D1 ≅ C2 and D2 ≅ C2×C2 have no faithful action on 1 or 2 polygon vertices
            ZooSpec::Dihedral(1) => ZooSpec::Cyclic(2).generators(),
            ZooSpec::Dihedral(2) => {
                ZooSpec::DirectProduct(vec![ZooSpec::Cyclic(2), ZooSpec::Cyclic(2)]).generators()
            }
            ZooSpec::Dihedral(n) => {
                let n = *n;
                let reflection: Vec<Vec<usize>> =
                    (1..n.div_ceil(2)).map(|i| vec![i, n - i]).collect();
                Ok((n, vec![perm(n, &[cycle(0..n)])?, perm(n, &reflection)?]))
            }
            ZooSpec::Symmetric(n) => {
                let n = *n;
                Ok((n, vec![perm(n, &[vec![0, 1]])?, perm(n, &[cycle(0..n)])?]))
            }
            ZooSpec::Alternating(n) => {
                let n = *n;
                let gens = (2..n)
                    .map(|k| perm(n, &[vec![0, 1, k]]))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok((n, gens))
            }
            ZooSpec::Quaternion8 => Ok((8, parse_generators(QUATERNION8_GENERATORS, 8)?)),
            ZooSpec::DirectProduct(factors) => {
                let parts = factors
                    .iter()
                    .map(ZooSpec::generators)
                    .collect::<Result<Vec<_>, _>>()?;
                let degree: usize = parts.iter().map(|(d, _)| d).sum();
                if degree > MAX_DEGREE {
                    return Err(GroupError::DegreeLimitExceeded {
                        degree,
                        limit: MAX_DEGREE,
                    });
                }
                let mut offset = 0;
                let mut gens = Vec::new();
                for (d, part) in parts {
                    gens.extend(part.iter().map(|g| g.shifted(offset, degree)));
                    offset += d;
                }
                Ok((degree, gens))
            }
            ZooSpec::Custom(text) => {
                let gens = parse_generators(text, 1)?;
                let degree = gens.first().map_or(1, Permutation::degree);
                Ok((degree, gens))
            }
        }
    }

    pub fn build(&self, max_order: usize) -> Result<GroupTable, GroupError> {
        let (degree, gens) = self.generators()?;
        generate_group_on(degree, &gens, max_order)
    }
}

impl fmt::Display for ZooSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ZooSpec::Cyclic(n) => write!(f, "C{n}"),
            ZooSpec::Dihedral(n) => write!(f, "D{n}"),
            ZooSpec::Symmetric(n) => write!(f, "S{n}"),
            ZooSpec::Alternating(n) => write!(f, "A{n}"),
            ZooSpec::Quaternion8 => f.write_str("Q8"),
            ZooSpec::DirectProduct(factors) => {
                for (i, x) in factors.iter().enumerate() {
                    if i > 0 {
                        f.write_str("x")?;
                    }
                    write!(f, "{x}")?;
                }
                Ok(())
            }
            ZooSpec::Custom(text) => write!(f, "custom:{text}"),
        }
    }
}

/// The groups of order at most 24 used throughout the test suites.
pub fn small_zoo() -> Vec<ZooSpec> {
    use ZooSpec::*;
    let mut zoo: Vec<ZooSpec> = (2..=8).map(Cyclic).collect();
    zoo.extend((3..=6).map(Dihedral));
    zoo.extend([
        Symmetric(3),
        Symmetric(4),
        Alternating(4),
        Quaternion8,
        DirectProduct(vec![Cyclic(2), Cyclic(2)]),
        DirectProduct(vec![Cyclic(2), Cyclic(4)]),
    ]);
    zoo
}

//! Permutations on `{0, …, degree − 1}` and a cycle-notation parser.

use std::fmt;

use crate::error::GroupError;

/// Largest number of points a permutation may act on.
pub const MAX_DEGREE: usize = 64;

/// A bijection of `{0, …, degree − 1}` stored as its image list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u8>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Self {
            images: (0..degree as u8).collect(),
        }
    }

    /// Builds a permutation from its images, rejecting anything that is not a bijection.
    pub fn from_images(images: &[usize]) -> Result<Self, GroupError> {
        if images.len() > MAX_DEGREE {
            return Err(GroupError::DegreeLimitExceeded {
                degree: images.len(),
                limit: MAX_DEGREE,
            });
        }
        let mut seen = vec![false; images.len()];
        for &x in images {
            if x >= images.len() || seen[x] {
                return Err(GroupError::InvalidPermutation(format!(
                    "images {images:?} are not a bijection"
                )));
            }
            seen[x] = true;
        }
        Ok(Self {
            images: images.iter().map(|&x| x as u8).collect(),
        })
    }

    /// Builds a permutation of the given degree from disjoint cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self, GroupError> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (i, &x) in cycle.iter().enumerate() {
                if x >= degree {
                    return Err(GroupError::InvalidPermutation(format!(
                        "point {x} outside degree {degree}"
                    )));
                }
                if touched[x] {
                    return Err(GroupError::InvalidPermutation(format!(
                        "point {x} appears twice in cycles {cycles:?}"
                    )));
                }
                touched[x] = true;
                images[x] = cycle[(i + 1) % cycle.len()];
            }
        }
        Self::from_images(&images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn image(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&x| x as usize).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    /// The product `self · other`, acting as `x ↦ self(other(x))`.
    pub fn compose(&self, other: &Self) -> Self {
        debug_assert_eq!(self.degree(), other.degree());
        Self {
            images: other.images.iter().map(|&x| self.images[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0u8; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x as usize] = i as u8;
        }
        Self { images }
    }

    /// Same permutation acting on `degree ≥ self.degree()` points, fixing the new ones.
    pub fn extended(&self, degree: usize) -> Self {
        let mut images = self.images.clone();
        images.extend(self.images.len() as u8..degree as u8);
        Self { images }
    }

    /// Same permutation with every point moved up by `offset`, acting on `degree` points.
    pub fn shifted(&self, offset: usize, degree: usize) -> Self {
        let mut images: Vec<u8> = (0..degree as u8).collect();
        for (i, &x) in self.images.iter().enumerate() {
            images[i + offset] = x + offset as u8;
        }
        Self { images }
    }

    /// Disjoint cycles of length at least two, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.image(start) == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.image(start);
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.image(x);
            }
            out.push(cycle);
        }
        out
    }
}

impl fmt::Display for Permutation {
    /// Cycle notation; the identity prints as `()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for cycle in cycles {
            f.write_str("(")?;
            for (i, x) in cycle.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

/// Parses `"(0 1)(2 3), (0 1 2)"` into permutations sharing one degree.
///
/// Each comma-separated item is a product of disjoint cycles of 0-based points.
/// Whitespace is insignificant, fixed points are omitted and `()` is the identity.
/// The common degree is one more than the largest point mentioned anywhere, or
/// `min_degree` if that is larger.
pub fn parse_generators(input: &str, min_degree: usize) -> Result<Vec<Permutation>, GroupError> {
    let mut parsed: Vec<Vec<Vec<usize>>> = Vec::new();
    let mut degree = min_degree.max(1);
    if input.trim().is_empty() {
        return Ok(Vec::new());
    }
    for item in input.split(',') {
        let cycles = parse_cycles(item)?;
        for &x in cycles.iter().flatten() {
            degree = degree.max(x + 1);
        }
        parsed.push(cycles);
    }
    if degree > MAX_DEGREE {
        return Err(GroupError::DegreeLimitExceeded {
            degree,
            limit: MAX_DEGREE,
        });
    }
    parsed
        .iter()
        .map(|cycles| Permutation::from_cycles(degree, cycles))
        .collect()
}

fn parse_cycles(item: &str) -> Result<Vec<Vec<usize>>, GroupError> {
    let syntax = |msg: &str| GroupError::Parse(format!("{msg} in {:?}", item.trim()));
    let mut cycles = Vec::new();
    let mut rest = item.trim();
    if rest.is_empty() {
        return Err(syntax("empty permutation"));
    }
    while !rest.is_empty() {
        let body = rest
            .strip_prefix('(')
            .ok_or_else(|| syntax("expected '('"))?;
        let close = body.find(')').ok_or_else(|| syntax("unclosed cycle"))?;
        let points = body[..close]
            .split_whitespace()
            .map(|tok| {
                tok.parse::<usize>()
                    .map_err(|_| syntax(&format!("bad point {tok:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        if points.len() > 1 {
            cycles.push(points);
        }
        rest = body[close + 1..].trim_start();
    }
    Ok(cycles)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_products_of_cycles() {
        let gens = parse_generators("(0 1)(2 3), (0 1 2)", 0).unwrap();
        assert_eq!(gens.len(), 2);
        assert_eq!(gens[0].images(), vec![1, 0, 3, 2]);
        assert_eq!(gens[1].images(), vec![1, 2, 0, 3]);
    }

    #[test]
    fn whitespace_is_insignificant() {
        let a = parse_generators("( 0  1 )( 2 3 ) ,(0 1 2)", 0).unwrap();
        let b = parse_generators("(0 1)(2 3),(0 1 2)", 0).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn identity_and_empty_input() {
        assert!(parse_generators("", 0).unwrap().is_empty());
        let id = parse_generators("()", 3).unwrap();
        assert!(id[0].is_identity());
        assert_eq!(id[0].degree(), 3);
    }

    #[test]
    fn rejects_malformed_cycles() {
        assert!(matches!(parse_generators("(0 1", 0), Err(GroupError::Parse(_))));
        assert!(matches!(parse_generators("0 1)", 0), Err(GroupError::Parse(_))));
        assert!(matches!(parse_generators("(0 x)", 0), Err(GroupError::Parse(_))));
        assert!(matches!(
            parse_generators("(0 1)(1 2)", 0),
            Err(GroupError::InvalidPermutation(_))
        ));
        assert!(matches!(
            parse_generators("(0 64)", 0),
            Err(GroupError::DegreeLimitExceeded { .. })
        ));
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::from_images(&[0, 0]).is_err());
        assert!(Permutation::from_images(&[2, 0]).is_err());
    }

    #[test]
    fn display_round_trips() {
        let p = Permutation::from_cycles(6, &[vec![0, 3], vec![1, 5, 2]]).unwrap();
        assert_eq!(p.to_string(), "(0 3)(1 5 2)");
        assert_eq!(parse_generators(&p.to_string(), 6).unwrap()[0], p);
        assert_eq!(Permutation::identity(2).to_string(), "()");
    }

    #[test]
    fn compose_and_inverse() {
        let a = Permutation::from_cycles(3, &[vec![0, 1]]).unwrap();
        let b = Permutation::from_cycles(3, &[vec![0, 1, 2]]).unwrap();
        // a·b: 0 -> b -> 1 -> a -> 0
        assert_eq!(a.compose(&b).images(), vec![0, 2, 1]);
        assert!(b.compose(&b.inverse()).is_identity());
    }
}

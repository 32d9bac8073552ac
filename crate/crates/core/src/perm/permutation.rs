use std::fmt;
use std::ops::Mul;

use num_integer::Integer;

use crate::error::{Error, Result};

/// A bijection on `{0, .., degree - 1}` stored as an image table.
///
/// Permutations act on the right: `x^(pq) = (x^p)^q`, so `p * q` applies `p`
/// first and then `q`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let degree = images.len();
        let mut seen = vec![false; degree];
        for &x in &images {
            let x = x as usize;
            if x >= degree || seen[x] {
                return Err(Error::NotABijection { degree });
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation from disjoint or overlapping cycles, applied left to right.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut acc = Permutation::identity(degree);
        for cycle in cycles {
            let mut images: Vec<u32> = (0..degree as u32).collect();
            let mut seen = std::collections::HashSet::new();
            for (i, &x) in cycle.iter().enumerate() {
                if x >= degree {
                    return Err(Error::PointOutOfRange { point: x, degree });
                }
                if !seen.insert(x) {
                    return Err(Error::Parse(format!("point {x} repeated inside a cycle")));
                }
                images[x] = cycle[(i + 1) % cycle.len()] as u32;
            }
            acc = &acc * &Permutation { images };
        }
        Ok(acc)
    }

    /// Parses 0-based cycle notation such as `"(0 1)(2 3 4)"`; `"()"` is the identity.
    pub fn parse_cycles(degree: usize, text: &str) -> Result<Self> {
        let mut cycles = Vec::new();
        let mut rest = text.trim();
        while !rest.is_empty() {
            let body = rest
                .strip_prefix('(')
                .ok_or_else(|| Error::Parse(format!("expected '(' in {text:?}")))?;
            let close = body
                .find(')')
                .ok_or_else(|| Error::Parse(format!("unclosed cycle in {text:?}")))?;
            let points = body[..close]
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|s| !s.is_empty())
                .map(|s| {
                    s.parse::<usize>()
                        .map_err(|_| Error::Parse(format!("bad point {s:?} in {text:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
            if points.len() > 1 {
                cycles.push(points);
            }
            rest = body[close + 1..].trim_start();
        }
        Permutation::from_cycles(degree, &cycles)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// `self` followed by `other`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                expected: self.degree(),
                found: other.degree(),
            });
        }
        Ok(self * other)
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u32; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x as usize] = i as u32;
        }
        Permutation { images }
    }

    /// `g^-1 * self * g`.
    pub fn conjugate_by(&self, g: &Permutation) -> Permutation {
        let mut images = vec![0u32; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            images[g.images[i] as usize] = g.images[x as usize];
        }
        Permutation { images }
    }

    pub fn pow(&self, exp: u64) -> Permutation {
        let mut result = Permutation::identity(self.degree());
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        result
    }

    pub fn smallest_moved_point(&self) -> Option<usize> {
        self.images
            .iter()
            .enumerate()
            .find(|&(i, &x)| i as u32 != x)
            .map(|(i, _)| i)
    }

    /// Nontrivial cycles in order of their smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.apply(start) == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.apply(start);
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.apply(x);
            }
            out.push(cycle);
        }
        out
    }

    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| acc.lcm(&(c.len() as u64)))
    }

    pub fn is_even(&self) -> bool {
        self.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0
    }

    /// Extends to a larger degree by fixing the new points.
    pub fn extend_to(&self, degree: usize) -> Permutation {
        let mut images = self.images.clone();
        images.extend(self.degree() as u32..degree as u32);
        Permutation { images }
    }

    /// Induced permutation on `points`, which must be invariant; the result acts on positions in `points`.
    pub fn restrict(&self, points: &[usize]) -> Result<Permutation> {
        let mut position = vec![u32::MAX; self.degree()];
        for (i, &p) in points.iter().enumerate() {
            position[p] = i as u32;
        }
        let images = points
            .iter()
            .map(|&p| {
                let pos = position[self.apply(p)];
                if pos == u32::MAX {
                    Err(Error::NotInvariant)
                } else {
                    Ok(pos)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Permutation { images })
    }
}

impl Mul for &Permutation {
    type Output = Permutation;

    /// Panics on degree mismatch; use [`Permutation::compose`] for a checked product.
    fn mul(self, rhs: &Permutation) -> Permutation {
        assert_eq!(self.degree(), rhs.degree(), "degree mismatch");
        Permutation {
            images: self.images.iter().map(|&x| rhs.images[x as usize]).collect(),
        }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (i, x) in c.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: usize, s: &str) -> Permutation {
        Permutation::parse_cycles(n, s).unwrap()
    }

    #[test]
    fn compose_applies_left_to_right() {
        // 0 -> 1 -> 2, 1 -> 0 -> 0, 2 -> 2 -> 1
        let prod = p(3, "(0 1)").compose(&p(3, "(1 2)")).unwrap();
        assert_eq!(prod.images(), &[2, 0, 1]);
        assert_eq!(prod, p(3, "(0 2 1)"));
        assert_eq!(p(3, "(1 2)").compose(&p(3, "(0 1)")).unwrap(), p(3, "(0 1 2)"));
    }

    #[test]
    fn inverse_reverses_cycle() {
        assert_eq!(p(3, "(0 1 2)").inverse(), p(3, "(0 2 1)"));
        let q = p(7, "(0 3 5)(1 6)");
        assert!((&q * &q.inverse()).is_identity());
    }

    #[test]
    fn degree_mismatch_is_an_error() {
        let err = p(3, "(0 1)").compose(&p(4, "(0 1)")).unwrap_err();
        assert_eq!(err, Error::DegreeMismatch { expected: 3, found: 4 });
    }

    #[test]
    fn rejects_non_bijection() {
        assert!(Permutation::from_images(vec![0, 0, 1]).is_err());
        assert!(Permutation::from_images(vec![0, 3, 1]).is_err());
    }

    #[test]
    fn parse_and_display() {
        let q = p(6, "(0 1)(2 3 4)");
        assert_eq!(q.to_string(), "(0 1)(2 3 4)");
        assert_eq!(q.order(), 6);
        assert!(!q.is_even());
        assert_eq!(p(4, "()"), Permutation::identity(4));
        assert!(Permutation::parse_cycles(3, "(0 5)").is_err());
        assert!(Permutation::parse_cycles(3, "(0 1").is_err());
    }

    #[test]
    fn conjugation_relabels_cycles() {
        let x = p(5, "(0 1 2)");
        let g = p(5, "(0 3)(2 4)");
        assert_eq!(x.conjugate_by(&g), p(5, "(3 1 4)"));
        assert_eq!(x.conjugate_by(&g), &(&g.inverse() * &x) * &g);
    }

    #[test]
    fn restrict_to_invariant_set() {
        let x = p(5, "(0 1)(3 4)");
        assert_eq!(x.restrict(&[3, 4]).unwrap(), p(2, "(0 1)"));
        assert_eq!(x.restrict(&[1, 2]).unwrap_err(), Error::NotInvariant);
    }
}

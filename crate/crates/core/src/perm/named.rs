//! Standard generating sets for the groups the census works with.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use super::group::PermGroup;
use super::permutation::Permutation;
use crate::error::{Error, Result};
use crate::two_adic::s_of;

fn cycle(n: usize, points: impl IntoIterator<Item = usize>) -> Permutation {
    let pts: Vec<usize> = points.into_iter().collect();
    Permutation::from_cycles(n, &[pts]).expect("valid cycle")
}

fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::from(1u32), |acc, k| acc * k)
}

/// `S_n` generated by `(0 1)` and `(0 1 .. n-1)`.
pub fn symmetric(n: usize) -> PermGroup {
    let mut gens = Vec::new();
    if n >= 2 {
        gens.push(cycle(n, [0, 1]));
    }
    if n >= 3 {
        gens.push(cycle(n, 0..n));
    }
    PermGroup::with_known_order(n.max(1), gens, &factorial(n)).expect("valid generators")
}

/// `A_n` generated by `(0 1 2)` and an n-cycle (n odd) or an (n-1)-cycle on `1..n` (n even).
pub fn alternating(n: usize) -> PermGroup {
    let mut gens = Vec::new();
    if n >= 3 {
        gens.push(cycle(n, [0, 1, 2]));
    }
    if n >= 4 {
        if n % 2 == 1 {
            gens.push(cycle(n, 0..n));
        } else {
            gens.push(cycle(n, 1..n));
        }
    }
    let order = if n >= 2 { factorial(n) / 2u32 } else { BigUint::from(1u32) };
    PermGroup::with_known_order(n.max(1), gens, &order).expect("valid generators")
}

/// Iterated wreath product `C_2 wr .. wr C_2` acting on `offset..offset + 2^k`.
///
/// Local indices are bit-reversed, so the smallest blocks pair points that
/// differ in the top bit; for `k = 2` this is the dihedral group of the
/// square `0-1-2-3`.
fn iterated_wreath_generators(n: usize, offset: usize, k: u32) -> Vec<Permutation> {
    let rev = |i: usize| if k == 0 { 0 } else { i.reverse_bits() >> (usize::BITS - k) };
    (0..k)
        .map(|j| {
            let half = 1usize << j;
            let pairs: Vec<Vec<usize>> = (0..half)
                .map(|i| vec![offset + rev(i), offset + rev(half + i)])
                .collect();
            Permutation::from_cycles(n, &pairs).expect("valid swap")
        })
        .collect()
}

/// Sylow 2-subgroup of `S_n` (`alternating = false`) or `A_n`.
///
/// For `S_n` this is the direct product of iterated wreath products of `C_2`
/// on consecutive blocks of sizes given by the binary digits of `n`, largest
/// block first. For `A_n` it is the even part of that group, generated by the
/// Schreier generators of the sign kernel.
pub fn sylow2(n: usize, alternating: bool) -> PermGroup {
    let degree = n.max(1);
    let mut gens = Vec::new();
    let mut offset = 0;
    for bit in (0..usize::BITS).rev() {
        if n >> bit & 1 == 1 {
            gens.extend(iterated_wreath_generators(degree, offset, bit));
            offset += 1 << bit;
        }
    }
    let s = if n >= 1 { s_of(n as u64).expect("n >= 1") } else { 0 };
    if !alternating {
        let order = BigUint::from(2u32).pow(s as u32);
        return PermGroup::with_known_order(degree, gens, &order).expect("valid generators");
    }
    let odd: Vec<&Permutation> = gens.iter().filter(|g| !g.is_even()).collect();
    let mut even_gens: Vec<Permutation> = gens.iter().filter(|g| g.is_even()).cloned().collect();
    if let Some(&t) = odd.first() {
        let t_inv = t.inverse();
        for g in &gens {
            if g.is_even() {
                even_gens.push(g.conjugate_by(&t_inv));
            } else {
                even_gens.push(g * t);
            }
        }
    }
    let order = BigUint::from(2u32).pow(s.saturating_sub(1) as u32);
    PermGroup::with_known_order(degree, even_gens, &order).expect("valid generators")
}

/// Arithmetic in GF(9) = GF(3)[i], i^2 = -1; element `a + b i` encoded as `a + 3b`.
mod gf9 {
    pub fn add(x: usize, y: usize) -> usize {
        let (a, b) = (x % 3, x / 3);
        let (c, d) = (y % 3, y / 3);
        (a + c) % 3 + 3 * ((b + d) % 3)
    }

    pub fn mul(x: usize, y: usize) -> usize {
        let (a, b) = (x % 3, x / 3);
        let (c, d) = (y % 3, y / 3);
        let re = (a * c + 2 * b * d) % 3;
        let im = (a * d + b * c) % 3;
        re + 3 * im
    }

    pub fn neg(x: usize) -> usize {
        let (a, b) = (x % 3, x / 3);
        (3 - a) % 3 + 3 * ((3 - b) % 3)
    }

    pub fn inv(x: usize) -> usize {
        (1..9).find(|&y| mul(x, y) == 1).expect("nonzero element")
    }

    pub fn pow(x: usize, e: u32) -> usize {
        (0..e).fold(1, |acc, _| mul(acc, x))
    }

    /// 1 + i, of multiplicative order 8.
    pub const PRIMITIVE: usize = 4;
}

const INFINITY: usize = 9;

/// Permutation of the projective line over GF(9) (points 0..8, infinity = 9)
/// given by a map on field elements (`None` means infinity); `at_infinity`
/// is the image of infinity.
fn projective_map(f: impl Fn(usize) -> Option<usize>, at_infinity: usize) -> Permutation {
    let mut images: Vec<u32> = (0..9).map(|x| f(x).unwrap_or(INFINITY) as u32).collect();
    images.push(at_infinity as u32);
    Permutation::from_images(images).expect("projective map is a bijection")
}

fn translation() -> Permutation {
    projective_map(|x| Some(gf9::add(x, 1)), INFINITY)
}

fn scaling(c: usize) -> Permutation {
    projective_map(|x| Some(gf9::mul(c, x)), INFINITY)
}

/// x -> -1/x
fn negative_inversion() -> Permutation {
    projective_map(
        |x| if x == 0 { None } else { Some(gf9::neg(gf9::inv(x))) },
        0,
    )
}

/// x -> c * x^3
fn twisted_frobenius(c: usize) -> Permutation {
    projective_map(|x| Some(gf9::mul(c, gf9::pow(x, 3))), INFINITY)
}

/// The almost simple groups with socle `A_6` other than `A_6`, `S_6`,
/// realized on the 10 points of the projective line over GF(9).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ExceptionalDegree6 {
    Pgl29,
    M10,
    PGammaL29,
}

impl ExceptionalDegree6 {
    pub const ALL: [ExceptionalDegree6; 3] = [Self::Pgl29, Self::M10, Self::PGammaL29];

    pub fn expected_order(self) -> u64 {
        match self {
            Self::Pgl29 | Self::M10 => 720,
            Self::PGammaL29 => 1440,
        }
    }

    pub fn generators(self) -> Vec<Permutation> {
        let z = gf9::PRIMITIVE;
        match self {
            Self::Pgl29 => vec![translation(), scaling(z), negative_inversion()],
            Self::M10 => vec![
                translation(),
                scaling(gf9::mul(z, z)),
                negative_inversion(),
                twisted_frobenius(z),
            ],
            Self::PGammaL29 => vec![
                translation(),
                scaling(z),
                negative_inversion(),
                twisted_frobenius(1),
            ],
        }
    }

    /// The group, with its order checked against the expected value.
    pub fn group(self) -> Result<PermGroup> {
        let g = PermGroup::new(10, self.generators())?;
        if g.order_u64() != self.expected_order() {
            return Err(Error::InvalidArgument(format!(
                "{self} realized with order {}, expected {}",
                g.order(),
                self.expected_order()
            )));
        }
        Ok(g)
    }
}

impl fmt::Display for ExceptionalDegree6 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Pgl29 => "PGL(2,9)",
            Self::M10 => "M10",
            Self::PGammaL29 => "PGammaL(2,9)",
        })
    }
}

/// Which ambient group a census runs in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GroupTag {
    Alternating(usize),
    Symmetric(usize),
    Exceptional(ExceptionalDegree6),
}

impl GroupTag {
    pub fn group(self) -> Result<PermGroup> {
        match self {
            GroupTag::Alternating(n) if n >= 1 => Ok(alternating(n)),
            GroupTag::Symmetric(n) if n >= 1 => Ok(symmetric(n)),
            GroupTag::Exceptional(e) => e.group(),
            _ => Err(Error::InvalidArgument("degree must be positive".into())),
        }
    }

    /// Socle degree for `A_n`/`S_n`, 6 for the exceptional groups.
    pub fn socle_degree(self) -> usize {
        match self {
            GroupTag::Alternating(n) | GroupTag::Symmetric(n) => n,
            GroupTag::Exceptional(_) => 6,
        }
    }
}

impl fmt::Display for GroupTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupTag::Alternating(n) => write!(f, "A{n}"),
            GroupTag::Symmetric(n) => write!(f, "S{n}"),
            GroupTag::Exceptional(e) => write!(f, "{e}"),
        }
    }
}

impl FromStr for GroupTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let parse_degree = |rest: &str| {
            rest.trim_start_matches('_')
                .parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad group tag {s:?}")))
        };
        match t {
            "PGL(2,9)" | "PGL29" => return Ok(GroupTag::Exceptional(ExceptionalDegree6::Pgl29)),
            "M10" | "M_10" => return Ok(GroupTag::Exceptional(ExceptionalDegree6::M10)),
            "PGammaL(2,9)" | "PGammaL29" | "PΓL(2,9)" => {
                return Ok(GroupTag::Exceptional(ExceptionalDegree6::PGammaL29))
            }
            _ => {}
        }
        if let Some(rest) = t.strip_prefix('A') {
            Ok(GroupTag::Alternating(parse_degree(rest)?))
        } else if let Some(rest) = t.strip_prefix('S') {
            Ok(GroupTag::Symmetric(parse_degree(rest)?))
        } else {
            Err(Error::Parse(format!("bad group tag {s:?}")))
        }
    }
}

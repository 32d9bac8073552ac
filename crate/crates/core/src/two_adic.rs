//! Exact 2-adic arithmetic: `s(n) = Σ_{i≥1} ⌊n/2^i⌋`, the exponent of 2 in `n!`,
//! its superadditivity, binomial parity, and the odd-order criterion for odd graphs.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The terms `⌊n/2^i⌋` for `i = 1..=t` where `2^t ≤ n < 2^{t+1}`, and their sum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValuationProfile {
    pub n: u64,
    pub terms: Vec<u64>,
    pub s: u64,
}

pub fn valuation_profile(n: u64) -> Result<ValuationProfile> {
    if n == 0 {
        return Err(Error::InvalidArgument("s(n) is defined for n >= 1".into()));
    }
    let t = 63 - n.leading_zeros();
    let terms: Vec<u64> = (1..=t).map(|i| n >> i).collect();
    let s = terms.iter().sum();
    Ok(ValuationProfile { n, terms, s })
}

/// Exponent of the 2-part of `n!`.
pub fn s_of(n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::InvalidArgument("s(n) is defined for n >= 1".into()));
    }
    Ok((1..64).map(|i| n >> i).take_while(|&q| q > 0).sum())
}

pub fn is_power_of_two(n: u64) -> bool {
    n.count_ones() == 1
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Largest power of the prime `p` dividing `n`.
pub fn p_part(n: u64, p: u64) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if n == 0 {
        return Err(Error::InvalidArgument("p-part of 0 is undefined".into()));
    }
    let mut part = 1;
    let mut rest = n;
    while rest.is_multiple_of(p) {
        rest /= p;
        part *= p;
    }
    Ok(part)
}

/// Prime factorization as `(prime, exponent)` pairs in increasing order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        let mut e = 0;
        while n.is_multiple_of(d) {
            n /= d;
            e += 1;
        }
        if e > 0 {
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Outcome of comparing `s(m) + s(n)` with `s(m + n)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuperadditivityRecord {
    pub m: u64,
    pub n: u64,
    pub lhs: u64,
    pub rhs: u64,
    pub equal: bool,
}

/// Checks `s(m) + s(n) ≤ s(m + n)`; in the equality case also checks that
/// `⌊m/2^i⌋ + ⌊n/2^i⌋ = ⌊(m+n)/2^i⌋` for every `i` and that one of `m`, `n`
/// is even. A failed check is reported as an error.
pub fn check_superadditivity(m: u64, n: u64) -> Result<SuperadditivityRecord> {
    let total = m
        .checked_add(n)
        .ok_or_else(|| Error::InvalidArgument("m + n overflows".into()))?;
    let lhs = s_of(m)? + s_of(n)?;
    let rhs = s_of(total)?;
    if lhs > rhs {
        return Err(Error::InvalidArgument(format!(
            "superadditivity fails for ({m}, {n}): {lhs} > {rhs}"
        )));
    }
    let equal = lhs == rhs;
    if equal {
        let termwise = (1..64).all(|i| (m >> i) + (n >> i) == total >> i);
        if !termwise {
            return Err(Error::InvalidArgument(format!(
                "equality case ({m}, {n}) without termwise equality"
            )));
        }
        if m % 2 == 1 && n % 2 == 1 {
            return Err(Error::InvalidArgument(format!(
                "equality case ({m}, {n}) with both arguments odd"
            )));
        }
    }
    Ok(SuperadditivityRecord {
        m,
        n,
        lhs,
        rhs,
        equal,
    })
}

/// For an equality case `s(m) + s(n) = s(m + n)` with `m ≤ n`, checks that
/// `⌊m/2^i⌋ ≠ 0` forces `⌊n/2^{i+1}⌋ ≠ 0`, that `m < n`, and that
/// `⌊(m+n)/2^t⌋ ≠ 0` forces `n ≥ 2^t`.
pub fn check_equality_support(m: u64, n: u64) -> Result<bool> {
    if m == 0 || m > n {
        return Err(Error::InvalidArgument(
            "equality support needs 1 <= m <= n".into(),
        ));
    }
    let record = check_superadditivity(m, n)?;
    if !record.equal {
        return Err(Error::InvalidArgument(format!(
            "({m}, {n}) is not an equality case"
        )));
    }
    let total = m + n;
    let propagates = (1..63).all(|i| (m >> i) == 0 || (n >> (i + 1)) != 0);
    let strict = m < n;
    let dominant = (0..64).all(|t| (total >> t) == 0 || n >= 1u64 << t);
    Ok(propagates && strict && dominant)
}

/// Parity of `C(a, b)`, computed from `s` and from the carry-free bit test,
/// which must agree.
pub fn binomial_is_odd(a: u64, b: u64) -> Result<bool> {
    if b > a {
        return Err(Error::InvalidArgument(format!("C({a}, {b}) needs b <= a")));
    }
    let c = a - b;
    let s = |x: u64| if x == 0 { 0 } else { s_of(x).expect("x >= 1") };
    let by_valuation = s(a) == s(b) + s(c);
    let by_bits = b & c == 0;
    assert_eq!(
        by_valuation, by_bits,
        "binomial parity routes disagree for C({a}, {b})"
    );
    Ok(by_bits)
}

/// Whether the odd graph `O_m`, of order `C(2m+1, m)`, has odd order:
/// exactly when `m + 1` is a power of 2.
pub fn odd_graph_order_is_odd(m: u64) -> Result<bool> {
    if m == 0 {
        return Err(Error::InvalidArgument("odd graphs need m >= 1".into()));
    }
    let criterion = is_power_of_two(m + 1);
    assert_eq!(criterion, binomial_is_odd(2 * m + 1, m)?);
    Ok(criterion)
}

/// One line of the `parity` report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParityRecord {
    pub m: u64,
    pub order_parity: String,
    pub m_plus_1_pow2: bool,
}

pub fn parity_records(range: std::ops::RangeInclusive<u64>) -> Result<Vec<ParityRecord>> {
    range
        .map(|m| {
            let odd = binomial_is_odd(2 * m + 1, m)?;
            Ok(ParityRecord {
                m,
                order_parity: if odd { "odd" } else { "even" }.to_string(),
                m_plus_1_pow2: odd_graph_order_is_odd(m)?,
            })
        })
        .collect()
}

//! Arithmetic functions and the closed-form counts.
//!
//! Every closed form here has an independent brute-force counterpart:
//! [`count_reduced_formula`] against [`count_reduced_bruteforce`],
//! [`count_coprime_formula`] against [`count_coprime_bruteforce`], and the
//! lattice counts against explicit enumeration in [`crate::lattice`] and
//! [`crate::sail`].

use std::io::{self, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::Execution;

/// Divisors and prime factorization of a positive integer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisorProfile {
    pub n: u64,
    pub divisors: Vec<u64>,
    pub prime_factorization: Vec<(u64, u32)>,
}

impl DivisorProfile {
    pub fn new(n: u64) -> Result<Self> {
        let prime_factorization = factorize(n)?;
        let mut divisors = vec![1u64];
        for &(p, e) in &prime_factorization {
            let len = divisors.len();
            let mut pk = 1u64;
            for _ in 0..e {
                pk *= p;
                for i in 0..len {
                    divisors.push(divisors[i] * pk);
                }
            }
        }
        divisors.sort_unstable();
        Ok(DivisorProfile {
            n,
            divisors,
            prime_factorization,
        })
    }
}

fn nonzero(n: u64, op: &'static str) -> Result<()> {
    if n == 0 {
        Err(Error::ZeroArgument(op))
    } else {
        Ok(())
    }
}

/// Trial division up to √n.
pub fn factorize(n: u64) -> Result<Vec<(u64, u32)>> {
    nonzero(n, "factorize")?;
    let mut out = Vec::new();
    let mut rest = n;
    let mut p = 2u64;
    while p.saturating_mul(p) <= rest {
        if rest.is_multiple_of(p) {
            let mut e = 0;
            while rest.is_multiple_of(p) {
                rest /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        out.push((rest, 1));
    }
    Ok(out)
}

pub fn divisors(n: u64) -> Result<Vec<u64>> {
    Ok(DivisorProfile::new(n)?.divisors)
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && matches!(factorize(n).as_deref(), Ok([(_, 1)]))
}

pub fn moebius(n: u64) -> Result<i8> {
    let f = factorize(n)?;
    if f.iter().any(|&(_, e)| e > 1) {
        Ok(0)
    } else if f.len() % 2 == 0 {
        Ok(1)
    } else {
        Ok(-1)
    }
}

/// σ(n): the number of sublattices of index n in ℤ².
pub fn sublattice_count(n: u64) -> Result<u64> {
    divisors(n)?.into_iter().try_fold(0u64, |acc, d| {
        acc.checked_add(d)
            .ok_or(Error::Overflow("sublattice_count"))
    })
}

/// The summands `d + 1 − n/d` over divisors d with d² ≥ n, as `(d, summand)`.
pub fn reduced_summands(n: u64) -> Result<Vec<(u64, u64)>> {
    divisors(n)?
        .into_iter()
        .filter(|&d| d as u128 * d as u128 >= n as u128)
        .map(|d| {
            // d ≥ n/d, so the summand is ≥ 1
            let s = (d - n / d)
                .checked_add(1)
                .ok_or(Error::Overflow("count_reduced"))?;
            Ok((d, s))
        })
        .collect()
}

/// Number of Euclid-reduced matrices of determinant n:
/// Σ_{d | n, d² ≥ n} (d + 1 − n/d).
pub fn count_reduced_formula(n: u64) -> Result<u64> {
    reduced_summands(n)?
        .into_iter()
        .try_fold(0u64, |acc, (_, s)| {
            acc.checked_add(s)
                .ok_or(Error::Overflow("count_reduced_formula"))
        })
}

/// Number of bad sublattices of index n:
/// Σ_{d | n, d² < n} d + Σ_{d | n, d² ≥ n} (n/d − 1).
pub fn bad_count_formula(n: u64) -> Result<u64> {
    divisors(n)?.into_iter().try_fold(0u64, |acc, d| {
        let term = if (d as u128) * (d as u128) < n as u128 {
            d
        } else {
            n / d - 1
        };
        acc.checked_add(term)
            .ok_or(Error::Overflow("bad_count_formula"))
    })
}

/// Reduced matrices with coprime entries, by Moebius inversion over the
/// square divisors of n.
pub fn count_coprime_formula(n: u64) -> Result<u64> {
    nonzero(n, "count_coprime_formula")?;
    let mut total = 0i128;
    let mut d = 1u64;
    while d.saturating_mul(d) <= n {
        let sq = d * d;
        if n.is_multiple_of(sq) {
            let mu = moebius(d)?;
            if mu != 0 {
                total += mu as i128 * count_reduced_formula(n / sq)? as i128;
            }
        }
        d += 1;
    }
    u64::try_from(total).map_err(|_| Error::Overflow("count_coprime_formula"))
}

/// Exhaustive count of (a, b, c, d) with ab − cd = n and min(a, b) > max(c, d),
/// all entries ≤ n.
///
/// Loops a and b over 1..=n and c, d over 0..min(a, b), skipping pairs
/// (a, b) where cd = ab − n is impossible and stopping the d loop once
/// cd exceeds ab − n. Cost is roughly O(n² log n); meant for n up to a few
/// hundred.
pub fn count_reduced_bruteforce(n: u64) -> Result<u64> {
    count_reduced_bruteforce_with(n, Execution::default())
}

pub fn count_reduced_bruteforce_with(n: u64, exec: Execution) -> Result<u64> {
    bruteforce(n, exec, false)
}

/// As [`count_reduced_bruteforce`], keeping only gcd(a, b, c, d) = 1.
pub fn count_coprime_bruteforce(n: u64) -> Result<u64> {
    bruteforce(n, Execution::default(), true)
}

fn bruteforce(n: u64, exec: Execution, coprime_only: bool) -> Result<u64> {
    nonzero(n, "count_reduced_bruteforce")?;
    n.checked_mul(n)
        .ok_or(Error::Overflow("count_reduced_bruteforce"))?;
    exec.try_sum(1..=n, |a| {
        let mut count = 0u64;
        for b in 1..=n {
            let ab = a * b;
            if ab < n {
                continue;
            }
            let target = ab - n;
            let m = a.min(b);
            if target > (m - 1) * (m - 1) {
                continue;
            }
            for c in 0..m {
                for d in 0..m {
                    let cd = c * d;
                    if cd > target {
                        break;
                    }
                    if cd == target
                        && (!coprime_only || [a, b, c, d].into_iter().fold(0, crate::gcd) == 1)
                    {
                        count += 1;
                    }
                }
            }
        }
        Ok(count)
    })
}

/// Gaussian binomial `[m choose k]_q` evaluated at an integer q ≥ 2.
pub fn q_binomial(m: u32, k: u32, q: u64) -> Result<u128> {
    if k > m {
        return Err(Error::InvalidArgument(format!(
            "q_binomial: k = {k} > m = {m}"
        )));
    }
    if q < 2 {
        return Err(Error::InvalidArgument(format!("q_binomial: q = {q} < 2")));
    }
    let q = q as u128;
    let pow = |e: u32| q.checked_pow(e).ok_or(Error::Overflow("q_binomial"));
    // after step j the accumulator is [m−k+j choose j]_q, an integer
    let mut acc = 1u128;
    for j in 1..=k {
        let num = pow(m - k + j)? - 1;
        let den = pow(j)? - 1;
        acc = acc.checked_mul(num).ok_or(Error::Overflow("q_binomial"))? / den;
    }
    Ok(acc)
}

/// Number of sublattices of index n in ℤ^dim: the product over p^e ∥ n of
/// the q-binomial `[e + dim − 1 choose dim − 1]` at q = p.
pub fn sublattice_count_general(dim: u32, n: u64) -> Result<u128> {
    if dim == 0 {
        return Err(Error::InvalidArgument(
            "dimension must be at least 1".into(),
        ));
    }
    factorize(n)?.into_iter().try_fold(1u128, |acc, (p, e)| {
        let f = q_binomial(e + dim - 1, dim - 1, p)?;
        acc.checked_mul(f)
            .ok_or(Error::Overflow("sublattice_count_general"))
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SequenceKind {
    Reduced,
    Coprime,
}

impl SequenceKind {
    pub fn term(self, n: u64) -> Result<u64> {
        match self {
            SequenceKind::Reduced => count_reduced_formula(n),
            SequenceKind::Coprime => count_coprime_formula(n),
        }
    }
}

/// `[count(1), …, count(n_max)]` from the closed forms.
pub fn sequence(kind: SequenceKind, n_max: u64) -> Result<Vec<u64>> {
    sequence_with(kind, n_max, Execution::default())
}

pub fn sequence_with(kind: SequenceKind, n_max: u64, exec: Execution) -> Result<Vec<u64>> {
    nonzero(n_max, "sequence")?;
    exec.try_map(1..=n_max, |n| kind.term(n))
}

/// Write terms as an OEIS b-file: one `n a(n)` line per term, starting at n = 1.
pub fn write_bfile<W: Write>(mut out: W, terms: &[u64]) -> io::Result<()> {
    for (i, t) in terms.iter().enumerate() {
        writeln!(out, "{} {}", i + 1, t)?;
    }
    Ok(())
}

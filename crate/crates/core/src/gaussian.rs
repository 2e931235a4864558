//! Solutions of `ab + cd = z` over the Gaussian integers with
//! `min(|a|, |b|) > max(|c|, |d|)`.
//!
//! Over ℤ[i] the solution sets are infinite for every non-zero rational
//! integer z, witnessed by two explicit families. A negative square `−k²`
//! is written as `cd` with `c = d = i·k`.
//!
//! All modulus comparisons are on squared norms in exact integer arithmetic.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::Execution;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GaussInt {
    pub re: i64,
    pub im: i64,
}

impl fmt::Display for GaussInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re, self.im) {
            (re, 0) => write!(f, "{re}"),
            (0, im) => write!(f, "{im}i"),
            (re, im) if im < 0 => write!(f, "{re}{im}i"),
            (re, im) => write!(f, "{re}+{im}i"),
        }
    }
}

fn overflow() -> Error {
    Error::Overflow("gaussian arithmetic")
}

impl GaussInt {
    pub const ZERO: GaussInt = GaussInt::new(0, 0);
    pub const ONE: GaussInt = GaussInt::new(1, 0);
    pub const I: GaussInt = GaussInt::new(0, 1);

    pub const fn new(re: i64, im: i64) -> Self {
        GaussInt { re, im }
    }

    pub const fn real(re: i64) -> Self {
        GaussInt { re, im: 0 }
    }

    pub fn is_zero(&self) -> bool {
        self.re == 0 && self.im == 0
    }

    /// re² + im², exact.
    pub fn norm(&self) -> i128 {
        self.re as i128 * self.re as i128 + self.im as i128 * self.im as i128
    }

    pub fn conj(&self) -> GaussInt {
        GaussInt::new(self.re, -self.im)
    }

    pub fn add(&self, o: &GaussInt) -> Result<GaussInt> {
        Ok(GaussInt::new(
            self.re.checked_add(o.re).ok_or_else(overflow)?,
            self.im.checked_add(o.im).ok_or_else(overflow)?,
        ))
    }

    pub fn sub(&self, o: &GaussInt) -> Result<GaussInt> {
        Ok(GaussInt::new(
            self.re.checked_sub(o.re).ok_or_else(overflow)?,
            self.im.checked_sub(o.im).ok_or_else(overflow)?,
        ))
    }

    pub fn neg(&self) -> Result<GaussInt> {
        GaussInt::ZERO.sub(self)
    }

    pub fn mul(&self, o: &GaussInt) -> Result<GaussInt> {
        let (a, b, c, d) = (self.re as i128, self.im as i128, o.re as i128, o.im as i128);
        let re = a * c - b * d;
        let im = a * d + b * c;
        Ok(GaussInt::new(
            i64::try_from(re).map_err(|_| overflow())?,
            i64::try_from(im).map_err(|_| overflow())?,
        ))
    }

    /// Exact quotient `self / o`, if `o` divides `self`.
    pub fn div_exact(&self, o: &GaussInt) -> Option<GaussInt> {
        let n = o.norm();
        if n == 0 {
            return None;
        }
        // self · conj(o) / N(o)
        let (a, b, c, d) = (
            self.re as i128,
            self.im as i128,
            o.re as i128,
            -(o.im as i128),
        );
        let re = a * c - b * d;
        let im = a * d + b * c;
        if re % n != 0 || im % n != 0 {
            return None;
        }
        Some(GaussInt::new(
            i64::try_from(re / n).ok()?,
            i64::try_from(im / n).ok()?,
        ))
    }

    fn max_abs_part(&self) -> u64 {
        self.re.unsigned_abs().max(self.im.unsigned_abs())
    }
}

pub fn gauss_mul(x: &GaussInt, y: &GaussInt) -> Result<GaussInt> {
    x.mul(y)
}

pub fn gauss_conj(x: &GaussInt) -> GaussInt {
    x.conj()
}

pub fn gauss_norm(x: &GaussInt) -> i128 {
    x.norm()
}

/// A member of S(z).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GaussSolution {
    pub a: GaussInt,
    pub b: GaussInt,
    pub c: GaussInt,
    pub d: GaussInt,
    pub z: GaussInt,
}

impl fmt::Display for GaussSolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({})({}) + ({})({}) = {}",
            self.a, self.b, self.c, self.d, self.z
        )
    }
}

/// `ab + cd`.
pub fn evaluate(a: &GaussInt, b: &GaussInt, c: &GaussInt, d: &GaussInt) -> Result<GaussInt> {
    a.mul(b)?.add(&c.mul(d)?)
}

/// `min(N a, N b) > max(N c, N d)`.
pub fn modulus_condition(a: &GaussInt, b: &GaussInt, c: &GaussInt, d: &GaussInt) -> bool {
    a.norm().min(b.norm()) > c.norm().max(d.norm())
}

impl GaussSolution {
    /// Validates both the equation and the strict modulus inequality.
    pub fn new(a: GaussInt, b: GaussInt, c: GaussInt, d: GaussInt) -> Result<Self> {
        if !modulus_condition(&a, &b, &c, &d) {
            return Err(Error::InvalidSolution(format!(
                "min(|{a}|, |{b}|) must exceed max(|{c}|, |{d}|)"
            )));
        }
        let z = evaluate(&a, &b, &c, &d)?;
        Ok(GaussSolution { a, b, c, d, z })
    }

    pub fn is_valid(&self) -> bool {
        modulus_condition(&self.a, &self.b, &self.c, &self.d)
            && evaluate(&self.a, &self.b, &self.c, &self.d).as_ref() == Ok(&self.z)
    }

    /// Images under swapping a↔b and/or c↔d.
    pub fn swaps(&self) -> [GaussSolution; 4] {
        let GaussSolution { a, b, c, d, z } = *self;
        [
            GaussSolution { a, b, c, d, z },
            GaussSolution {
                a: b,
                b: a,
                c,
                d,
                z,
            },
            GaussSolution {
                a,
                b,
                c: d,
                d: c,
                z,
            },
            GaussSolution {
                a: b,
                b: a,
                c: d,
                d: c,
                z,
            },
        ]
    }

    /// Least member of the swap orbit.
    pub fn canonical(&self) -> GaussSolution {
        *self.swaps().iter().min().unwrap_or(self)
    }
}

/// Every member of S(z) whose entries all have real and imaginary parts in
/// `[−bound, bound]`, sorted. With `canonical` only the least member of each
/// a↔b, c↔d orbit is kept.
///
/// For each `(a, b)` the product `cd = z − ab` is fixed, so c runs over the
/// box elements of norm in `(N(t)/M, M)` where `M = min(N a, N b)`, and d is
/// the exact quotient.
pub fn search_solutions(z: &GaussInt, bound: u64, canonical: bool) -> Result<Vec<GaussSolution>> {
    search_solutions_with(z, bound, canonical, Execution::default())
}

pub fn search_solutions_with(
    z: &GaussInt,
    bound: u64,
    canonical: bool,
    exec: Execution,
) -> Result<Vec<GaussSolution>> {
    if z.is_zero() {
        return Err(Error::InvalidArgument("z must be non-zero".into()));
    }
    let bound = i64::try_from(bound)
        .ok()
        .filter(|b| *b <= 1 << 20)
        .ok_or(Error::Overflow("search_solutions"))?;
    let mut boxed: Vec<GaussInt> = (-bound..=bound)
        .flat_map(|re| (-bound..=bound).map(move |im| GaussInt::new(re, im)))
        .collect();
    boxed.sort_by_key(|g| (g.norm(), *g));
    let norms: Vec<i128> = boxed.iter().map(GaussInt::norm).collect();
    let side = (2 * bound + 1) as u64;

    let mut found = exec.try_flat_map(0..=side * side - 1, |idx| {
        let a = boxed[idx as usize];
        let mut out = Vec::new();
        if a.is_zero() {
            return Ok(out);
        }
        for b in boxed.iter().skip(1) {
            let limit = a.norm().min(b.norm());
            let t = z.sub(&a.mul(b)?)?;
            let tn = t.norm();
            if tn >= limit * limit {
                continue;
            }
            // candidates c with N(c) < limit
            let end = norms.partition_point(|&n| n < limit);
            if t.is_zero() {
                // c = 0 with any small d, or d = 0 with any small c
                for other in &boxed[..end] {
                    out.push(GaussSolution {
                        a,
                        b: *b,
                        c: GaussInt::ZERO,
                        d: *other,
                        z: *z,
                    });
                    if !other.is_zero() {
                        out.push(GaussSolution {
                            a,
                            b: *b,
                            c: *other,
                            d: GaussInt::ZERO,
                            z: *z,
                        });
                    }
                }
                continue;
            }
            let start = norms.partition_point(|&n| n * limit <= tn);
            for c in &boxed[start..end] {
                if let Some(d) = t.div_exact(c) {
                    if d.max_abs_part() <= bound as u64 && d.norm() < limit {
                        out.push(GaussSolution {
                            a,
                            b: *b,
                            c: *c,
                            d,
                            z: *z,
                        });
                    }
                }
            }
        }
        Ok(out)
    })?;
    if canonical {
        found.retain(|s| s.canonical() == *s);
    }
    found.sort_unstable();
    found.dedup();
    Ok(found)
}

/// `2m+1 = (2n + Ki)(2n − Ki) − (K+1)²` with `K = 2n² − m − 1`.
pub fn odd_identity_solution(m: i64, n: i64) -> Result<GaussSolution> {
    if m < 0 || n < 1 {
        return Err(Error::InvalidArgument(format!(
            "odd identity needs m ≥ 0, n ≥ 1 (got {m}, {n})"
        )));
    }
    let two_n_sq = n
        .checked_mul(n)
        .and_then(|x| x.checked_mul(2))
        .ok_or_else(overflow)?;
    let k = two_n_sq - m - 1;
    let a = GaussInt::new(2 * n, k);
    let c = GaussInt::new(0, k + 1);
    let s = GaussSolution::new(a, a.conj(), c, c)?;
    expect_value(s, GaussInt::real(2 * m + 1))
}

/// `2m = ((2n+1) + Li)((2n+1) − Li) − (L+1)²` with `L = 2n² + 2n − m`.
pub fn even_identity_solution(m: i64, n: i64) -> Result<GaussSolution> {
    if m < 1 || n < 1 {
        return Err(Error::InvalidArgument(format!(
            "even identity needs m, n ≥ 1 (got {m}, {n})"
        )));
    }
    let l = n
        .checked_mul(n)
        .and_then(|x| x.checked_mul(2))
        .and_then(|x| x.checked_add(2 * n))
        .ok_or_else(overflow)?
        - m;
    let a = GaussInt::new(2 * n + 1, l);
    let c = GaussInt::new(0, l + 1);
    let s = GaussSolution::new(a, a.conj(), c, c)?;
    expect_value(s, GaussInt::real(2 * m))
}

fn expect_value(s: GaussSolution, want: GaussInt) -> Result<GaussSolution> {
    if s.z == want {
        Ok(s)
    } else {
        Err(Error::InvalidSolution(format!("{s} does not equal {want}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Symmetry {
    /// S(z) → S(z̄): conjugate every entry.
    Conj,
    /// S(z) → S(−z): (a, b, c, d) ↦ (−a, b, −c, d).
    Negate,
    /// S(z) → S(iz): (a, b, c, d) ↦ (ia, b, ic, d).
    TimesI,
    /// S(z) → S(−iz): (a, b, c, d) ↦ (−ia, b, −ic, d).
    TimesMinusI,
}

pub fn symmetry_map(s: &GaussSolution, which: Symmetry) -> Result<GaussSolution> {
    let left = |x: &GaussInt| -> Result<GaussInt> {
        match which {
            Symmetry::Conj => Ok(x.conj()),
            Symmetry::Negate => x.neg(),
            Symmetry::TimesI => x.mul(&GaussInt::I),
            Symmetry::TimesMinusI => x.mul(&GaussInt::new(0, -1)),
        }
    };
    let right = |x: &GaussInt| -> GaussInt {
        if which == Symmetry::Conj {
            x.conj()
        } else {
            *x
        }
    };
    GaussSolution::new(left(&s.a)?, right(&s.b), left(&s.c)?, right(&s.d))
}

/// (a, b, c, d) ↦ (s·t·a, s̄·t·b, s·t·c, s̄·t·d), a solution for `s·s̄·t²·z`.
pub fn scaling_map(sol: &GaussSolution, s: &GaussInt, t: &GaussInt) -> Result<GaussSolution> {
    if s.is_zero() || t.is_zero() {
        return Err(Error::InvalidArgument(
            "scaling factors must be non-zero".into(),
        ));
    }
    let st = s.mul(t)?;
    let sbar_t = s.conj().mul(t)?;
    GaussSolution::new(
        st.mul(&sol.a)?,
        sbar_t.mul(&sol.b)?,
        st.mul(&sol.c)?,
        sbar_t.mul(&sol.d)?,
    )
}

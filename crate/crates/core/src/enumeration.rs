//! Explicit solutions of `n = ab − cd` with `min(a, b) > max(c, d)` and their
//! orbits under the Klein four-group.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::mat2::Mat2;

/// A quadruple `(a, b, c, d)` with `ab − cd = n` and `min(a, b) > max(c, d)`.
///
/// Ordering is lexicographic on `(a, b, c, d)` and then `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Solution {
    pub a: u64,
    pub b: u64,
    pub c: u64,
    pub d: u64,
    pub n: u64,
}

impl fmt::Display for Solution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.a, self.b, self.c, self.d)
    }
}

impl Solution {
    /// Validates the quadruple and computes n.
    pub fn new(a: u64, b: u64, c: u64, d: u64) -> Result<Self> {
        let ab = a as u128 * b as u128;
        let cd = c as u128 * d as u128;
        if a.min(b) <= c.max(d) {
            return Err(Error::InvalidSolution(format!(
                "({a},{b},{c},{d}): min(a,b) must exceed max(c,d)"
            )));
        }
        let n = u64::try_from(ab - cd).map_err(|_| Error::Overflow("Solution::new"))?;
        Ok(Solution { a, b, c, d, n })
    }

    pub fn tuple(&self) -> (u64, u64, u64, u64) {
        (self.a, self.b, self.c, self.d)
    }

    /// The matrix with rows `(a, c)` and `(d, b)`.
    pub fn to_matrix(&self) -> Mat2 {
        Mat2::new(self.a, self.c, self.d, self.b)
    }

    /// Inverse of [`Solution::to_matrix`].
    pub fn from_matrix(m: &Mat2) -> Result<Self> {
        if !m.is_euclid_reduced()? {
            return Err(Error::NotReduced(m.to_string()));
        }
        Solution::new(m.a, m.d, m.b, m.c)
    }

    /// Images under the four elements of the Klein four-group, in the order
    /// identity, swap(a,b), swap(c,d), both.
    pub fn klein_images(&self) -> [Solution; 4] {
        let Solution { a, b, c, d, n } = *self;
        [
            Solution { a, b, c, d, n },
            Solution {
                a: b,
                b: a,
                c,
                d,
                n,
            },
            Solution {
                a,
                b,
                c: d,
                d: c,
                n,
            },
            Solution {
                a: b,
                b: a,
                c: d,
                d: c,
                n,
            },
        ]
    }

    pub fn gcd(&self) -> u64 {
        [self.a, self.b, self.c, self.d]
            .into_iter()
            .fold(0, crate::gcd)
    }

    /// Multiply every entry by k (n scales by k²).
    pub fn scaled(&self, k: u64) -> Result<Solution> {
        let mul = |x: u64| x.checked_mul(k).ok_or(Error::Overflow("Solution::scaled"));
        Solution::new(mul(self.a)?, mul(self.b)?, mul(self.c)?, mul(self.d)?)
    }
}

pub fn solution_to_matrix(s: &Solution) -> Mat2 {
    s.to_matrix()
}

pub fn matrix_to_solution(m: &Mat2) -> Result<Solution> {
    Solution::from_matrix(m)
}

/// Every solution for `n` with all entries ≤ `bound`, sorted descending.
///
/// With `bound = n` this is the full solution set, since no solution has an
/// entry above n; larger bounds are used to check that claim.
pub fn solutions_in_box(n: u64, bound: u64, exec: Execution) -> Result<Vec<Solution>> {
    if n == 0 {
        return Err(Error::ZeroArgument("solutions_in_box"));
    }
    bound
        .checked_mul(bound)
        .ok_or(Error::Overflow("solutions_in_box"))?;
    let mut all = exec.try_flat_map(1..=bound, |a| {
        let mut out = Vec::new();
        for b in 1..=bound {
            let ab = a * b;
            if ab < n {
                continue;
            }
            let target = ab - n;
            let m = a.min(b);
            for c in 0..m {
                if c == 0 {
                    if target == 0 {
                        out.extend((0..m).map(|d| Solution { a, b, c, d, n }));
                    }
                } else if target.is_multiple_of(c) && target / c < m {
                    out.push(Solution {
                        a,
                        b,
                        c,
                        d: target / c,
                        n,
                    });
                }
            }
        }
        Ok(out)
    })?;
    all.sort_unstable_by(|x, y| y.cmp(x));
    Ok(all)
}

/// All solutions for `n`, sorted lexicographically descending.
pub fn enumerate_solutions(n: u64) -> Result<Vec<Solution>> {
    enumerate_solutions_with(n, Execution::default())
}

pub fn enumerate_solutions_with(n: u64, exec: Execution) -> Result<Vec<Solution>> {
    solutions_in_box(n, n, exec)
}

/// Solutions with gcd(a, b, c, d) = 1.
pub fn enumerate_coprime(n: u64) -> Result<Vec<Solution>> {
    Ok(enumerate_solutions(n)?
        .into_iter()
        .filter(|s| s.gcd() == 1)
        .collect())
}

/// An orbit of the Klein four-group acting on solutions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Orbit {
    /// Lexicographically largest member.
    pub representative: Solution,
    pub size: usize,
    /// Distinct members, descending.
    pub members: Vec<Solution>,
}

impl Orbit {
    pub fn of(s: &Solution) -> Orbit {
        let mut members = s.klein_images().to_vec();
        members.sort_unstable_by(|x, y| y.cmp(x));
        members.dedup();
        Orbit {
            representative: members[0],
            size: members.len(),
            members,
        }
    }
}

/// Orbits of the solution set, representatives sorted descending.
pub fn orbit_decomposition(n: u64) -> Result<Vec<Orbit>> {
    let mut orbits = BTreeMap::new();
    for s in enumerate_solutions(n)? {
        let o = Orbit::of(&s);
        orbits.entry(o.representative).or_insert(o);
    }
    Ok(orbits.into_values().rev().collect())
}

//! Finite-index sublattices of ℤ² in Hermite normal form.
//!
//! Every sublattice of index n meets the x-axis in ℤ(d, 0) for some d | n
//! and is then `ℤ(d, 0) + ℤ(a, n/d)` for a unique `0 ≤ a < d`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::counting::divisors;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Vec2 {
    pub x: i64,
    pub y: i64,
}

impl fmt::Display for Vec2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

impl Vec2 {
    pub const fn new(x: i64, y: i64) -> Self {
        Vec2 { x, y }
    }

    /// 2×2 determinant `self.x·other.y − self.y·other.x`.
    pub fn cross(&self, other: &Vec2) -> i128 {
        self.x as i128 * other.y as i128 - self.y as i128 * other.x as i128
    }

    pub fn in_first_quadrant(&self) -> bool {
        self.x >= 0 && self.y >= 0
    }

    pub fn checked_add(&self, other: &Vec2) -> Option<Vec2> {
        Some(Vec2::new(
            self.x.checked_add(other.x)?,
            self.y.checked_add(other.y)?,
        ))
    }

    pub fn checked_scale(&self, k: i64) -> Option<Vec2> {
        Some(Vec2::new(self.x.checked_mul(k)?, self.y.checked_mul(k)?))
    }
}

/// `Λ = ℤ(d, 0) + ℤ(a, m)` with `0 ≤ a < d`; the index is `d·m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Sublattice2 {
    pub d: u64,
    pub a: u64,
    pub m: u64,
}

impl fmt::Display for Sublattice2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.d, self.a, self.m)
    }
}

impl Sublattice2 {
    pub fn new(d: u64, a: u64, m: u64) -> Result<Self> {
        if d == 0 || m == 0 || a >= d {
            return Err(Error::InvalidArgument(format!(
                "({d}, {a}, {m}) is not a Hermite normal form triple: need d, m ≥ 1 and 0 ≤ a < d"
            )));
        }
        if d > i64::MAX as u64 || m > i64::MAX as u64 {
            return Err(Error::Overflow("Sublattice2::new"));
        }
        Ok(Sublattice2 { d, a, m })
    }

    pub fn index(&self) -> u128 {
        self.d as u128 * self.m as u128
    }

    /// The generators `(d, 0)` and `(a, m)`.
    pub fn basis(&self) -> (Vec2, Vec2) {
        (
            Vec2::new(self.d as i64, 0),
            Vec2::new(self.a as i64, self.m as i64),
        )
    }

    pub fn contains(&self, v: &Vec2) -> bool {
        let (d, a, m) = (self.d as i128, self.a as i128, self.m as i128);
        let (x, y) = (v.x as i128, v.y as i128);
        if y.rem_euclid(m) != 0 {
            return false;
        }
        (x - (y / m) * a).rem_euclid(d) == 0
    }

    /// Least k ≥ 1 with k·v ∈ Λ: the order of v in ℤ²/Λ.
    pub fn order_in_quotient(&self, v: &Vec2) -> u64 {
        let (d, a, m) = (self.d as i128, self.a as i128, self.m as i128);
        let (x, y) = (v.x as i128, v.y as i128);
        // k must make m | k·y
        let k1 = m / gcd_i128(m, y);
        // then with k = k1·j: d | j·(k1·x − (k1·y/m)·a)
        let r = k1 * x - (k1 * y / m) * a;
        let j = d / gcd_i128(d, r);
        (k1 * j) as u64
    }
}

fn gcd_i128(a: i128, b: i128) -> i128 {
    crate::ext_gcd(a, b).0
}

/// All sublattices of index n, ordered by d then a.
pub fn enumerate_sublattices(n: u64) -> Result<Vec<Sublattice2>> {
    let mut out = Vec::new();
    for d in divisors(n)? {
        for a in 0..d {
            out.push(Sublattice2::new(d, a, n / d)?);
        }
    }
    Ok(out)
}

/// Hermite normal form of `ℤu + ℤv`.
///
/// With `m = gcd(u.y, v.y)` the lattice projects onto mℤ on the y-axis, so
/// `d = |det| / m`. A Bezout combination of u and v has y-coordinate exactly
/// m, and its x-coordinate reduced modulo d gives `a`.
pub fn from_basis(u: &Vec2, v: &Vec2) -> Result<Sublattice2> {
    let det = u.cross(v);
    if det == 0 {
        return Err(Error::DependentVectors(u.to_string(), v.to_string()));
    }
    let (m, s, t) = crate::ext_gcd(u.y as i128, v.y as i128);
    let d = det.abs() / m;
    let x = s * u.x as i128 + t * v.x as i128;
    let a = x.rem_euclid(d);
    let conv = |z: i128| u64::try_from(z).map_err(|_| Error::Overflow("from_basis"));
    Sublattice2::new(conv(d)?, conv(a)?, conv(m)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::sublattice_count;
    use proptest::prelude::*;

    fn l(d: u64, a: u64, m: u64) -> Sublattice2 {
        Sublattice2::new(d, a, m).unwrap()
    }

    fn v(x: i64, y: i64) -> Vec2 {
        Vec2::new(x, y)
    }

    #[test]
    fn enumerate_examples() {
        assert_eq!(enumerate_sublattices(1), Ok(vec![l(1, 0, 1)]));
        assert_eq!(
            enumerate_sublattices(2),
            Ok(vec![l(1, 0, 2), l(2, 0, 1), l(2, 1, 1)])
        );
        assert_eq!(enumerate_sublattices(12).unwrap().len(), 28);
        assert!(enumerate_sublattices(0).is_err());
    }

    #[test]
    fn invalid_triples() {
        assert!(Sublattice2::new(0, 0, 1).is_err());
        assert!(Sublattice2::new(2, 2, 1).is_err());
        assert!(Sublattice2::new(2, 1, 0).is_err());
    }

    #[test]
    fn contains_examples() {
        assert!(l(2, 1, 1).contains(&v(1, 1)));
        assert!(!l(2, 0, 1).contains(&v(1, 0)));
        for lat in enumerate_sublattices(12).unwrap() {
            assert!(lat.contains(&v(0, 0)));
            let (g1, g2) = lat.basis();
            assert!(lat.contains(&g1) && lat.contains(&g2));
        }
        assert!(l(3, 2, 2).contains(&v(-2, -2)));
        assert!(!l(3, 2, 2).contains(&v(-2, 2)));
    }

    #[test]
    fn from_basis_examples() {
        assert_eq!(from_basis(&v(3, 1), &v(1, 1)), Ok(l(2, 1, 1)));
        assert_eq!(from_basis(&v(1, 0), &v(0, 1)), Ok(l(1, 0, 1)));
        assert_eq!(from_basis(&v(2, 0), &v(0, 2)), Ok(l(2, 0, 2)));
        assert!(from_basis(&v(1, 1), &v(2, 2)).is_err());
    }

    #[test]
    fn order_examples() {
        assert_eq!(l(2, 1, 1).order_in_quotient(&v(1, 1)), 1);
        assert_eq!(l(1, 0, 2).order_in_quotient(&v(1, 1)), 2);
        for n in 1..=60 {
            for lat in enumerate_sublattices(n).unwrap() {
                assert_eq!(lat.order_in_quotient(&v(1, 0)), lat.d);
            }
        }
    }

    #[test]
    fn order_matches_search() {
        for n in 1..=40u64 {
            for lat in enumerate_sublattices(n).unwrap() {
                for (x, y) in [(1, 1), (1, 0), (0, 1), (2, 3), (-1, 4), (5, -7)] {
                    let w = v(x, y);
                    let k = (1..=n)
                        .find(|&k| lat.contains(&w.checked_scale(k as i64).unwrap()))
                        .unwrap();
                    assert_eq!(lat.order_in_quotient(&w), k);
                    assert_eq!(n % k, 0);
                }
            }
        }
    }

    #[test]
    fn counts_and_distinctness() {
        for n in 1..=200 {
            let all = enumerate_sublattices(n).unwrap();
            assert_eq!(all.len() as u64, sublattice_count(n).unwrap());
            let set: std::collections::HashSet<_> = all.iter().collect();
            assert_eq!(set.len(), all.len());
            // round trip through the generators
            for lat in &all {
                let (g1, g2) = lat.basis();
                assert_eq!(from_basis(&g1, &g2).as_ref(), Ok(lat));
            }
        }
    }

    #[test]
    fn prime_index_diagonal() {
        for p in [2u64, 3, 5, 7, 11, 13, 97] {
            let without: Vec<_> = enumerate_sublattices(p)
                .unwrap()
                .into_iter()
                .filter(|lat| !lat.contains(&v(1, 1)))
                .collect();
            assert_eq!(without.len() as u64, p);
        }
    }

    proptest! {
        #[test]
        fn from_basis_is_basis_invariant(
            ux in -50i64..50, uy in -50i64..50, vx in -50i64..50, vy in -50i64..50,
            k in -5i64..5,
        ) {
            let (u, w) = (v(ux, uy), v(vx, vy));
            prop_assume!(u.cross(&w) != 0);
            let base = from_basis(&u, &w).unwrap();
            prop_assert_eq!(base.index(), u.cross(&w).unsigned_abs());
            prop_assert!(base.contains(&u) && base.contains(&w));
            let shifted = u.checked_add(&w.checked_scale(k).unwrap()).unwrap();
            prop_assert_eq!(from_basis(&shifted, &w).unwrap(), base);
            prop_assert_eq!(from_basis(&w, &u).unwrap(), base);
            prop_assert_eq!(from_basis(&v(-ux, -uy), &w).unwrap(), base);
        }
    }
}

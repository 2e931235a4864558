//! Sails of finite-index sublattices of ℤ².
//!
//! The sail of Λ is the part of the boundary of conv((Λ ∖ {0}) ∩ Q_I) that
//! is not on the coordinate axes: a convex polyline from `(α_x, 0)` to
//! `(0, ω_y)`. Two consecutive lattice points on it form a basis of Λ. The
//! sailbasis whose segment crosses the diagonal (if any) is the *central*
//! one and corresponds to a Euclid-reduced matrix; lattices without one are
//! *bad*.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::counting::divisors;
use crate::enumeration::Solution;
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::lattice::{enumerate_sublattices, from_basis, Sublattice2, Vec2};

/// Lattice points on the sail ordered by decreasing x, from `(α_x, 0)` to
/// `(0, ω_y)`. Lattice points in the interior of an edge are included.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sail {
    pub points: Vec<Vec2>,
    pub alpha_x: u64,
    pub omega_y: u64,
}

/// Two consecutive sail points; `u` has the larger x.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SailBasis {
    pub u: Vec2,
    pub v: Vec2,
    pub central: bool,
    pub lattice: Sublattice2,
}

/// Orientation of the turn o → p → q (positive = counter-clockwise).
fn turn(o: &Vec2, p: &Vec2, q: &Vec2) -> i128 {
    let (px, py) = (p.x as i128 - o.x as i128, p.y as i128 - o.y as i128);
    let (qx, qy) = (q.x as i128 - o.x as i128, q.y as i128 - o.y as i128);
    px * qy - py * qx
}

impl Sail {
    pub fn consecutive_pairs(&self) -> Vec<(Vec2, Vec2)> {
        self.points.windows(2).map(|w| (w[0], w[1])).collect()
    }

    /// Hull corners only (endpoints plus points where the polyline turns).
    pub fn vertices(&self) -> Vec<Vec2> {
        let p = &self.points;
        let mut out = vec![p[0]];
        out.extend(
            p.windows(3)
                .filter(|w| turn(&w[0], &w[1], &w[2]) != 0)
                .map(|w| w[1]),
        );
        if p.len() > 1 {
            out.push(p[p.len() - 1]);
        }
        out
    }

    /// Some sail point lies on the diagonal.
    pub fn meets_diagonal(&self) -> bool {
        self.points.iter().any(|p| p.x == p.y)
    }

    /// Position of `q` relative to the polyline: negative below, zero on,
    /// positive above. Only meaningful for 0 ≤ q.x ≤ α_x.
    pub fn side(&self, q: &Vec2) -> i128 {
        // walk edges in increasing x
        for w in self.points.windows(2).rev() {
            let (left, right) = (w[1], w[0]);
            if q.x >= left.x && q.x <= right.x {
                return turn(&left, &right, q);
            }
        }
        i128::MAX
    }
}

/// Compute the sail of `lattice`.
///
/// Every non-zero lattice point in the box `[0, α_x] × [0, ω_y]` is
/// collected, the lowest one per x is kept, and the lower convex chain is
/// built by monotone chain. Collinear points are not popped, so lattice
/// points interior to an edge stay in the list.
pub fn compute_sail(lattice: &Sublattice2) -> Result<Sail> {
    let Sublattice2 { d, a, m } = *lattice;
    let alpha = d;
    let rows = d / crate::gcd(a, d);
    let omega = m.checked_mul(rows).ok_or(Error::Overflow("compute_sail"))?;
    if omega > i64::MAX as u64 || alpha > i64::MAX as u64 / 2 {
        return Err(Error::Overflow("compute_sail"));
    }
    // lowest lattice point in each column of the box
    let mut lowest: BTreeMap<i64, i64> = BTreeMap::new();
    for k in 0..=rows {
        let y = (k * m) as i64;
        let x0 = ((k as u128 * a as u128) % d as u128) as i64;
        for x in [x0, x0 + d as i64] {
            if x <= alpha as i64 && (x, y) != (0, 0) {
                lowest.entry(x).or_insert(y);
            }
        }
    }
    let mut chain: Vec<Vec2> = Vec::new();
    for (x, y) in lowest {
        let p = Vec2::new(x, y);
        while chain.len() >= 2 && turn(&chain[chain.len() - 2], &chain[chain.len() - 1], &p) < 0 {
            chain.pop();
        }
        chain.push(p);
    }
    chain.reverse();
    Ok(Sail {
        points: chain,
        alpha_x: alpha,
        omega_y: omega,
    })
}

pub fn consecutive_pairs(sail: &Sail) -> Vec<(Vec2, Vec2)> {
    sail.consecutive_pairs()
}

/// Two linearly independent points of the closed first quadrant form a
/// sailbasis of the lattice they span iff the line through them has finite
/// negative slope.
pub fn is_sailbasis(u: &Vec2, v: &Vec2) -> Result<bool> {
    for p in [u, v] {
        if !p.in_first_quadrant() {
            return Err(Error::OutsideQuadrant(p.to_string()));
        }
    }
    if u.cross(v) == 0 {
        return Err(Error::DependentVectors(u.to_string(), v.to_string()));
    }
    let dy = v.y as i128 - u.y as i128;
    let dx = v.x as i128 - u.x as i128;
    Ok(dx * dy < 0)
}

/// All sailbases (consecutive pairs), each tagged central or not.
pub fn sailbases(lattice: &Sublattice2) -> Result<Vec<SailBasis>> {
    let sail = compute_sail(lattice)?;
    Ok(sail
        .consecutive_pairs()
        .into_iter()
        .map(|(u, v)| SailBasis {
            u,
            v,
            central: u.x > u.y && v.x < v.y,
            lattice: *lattice,
        })
        .collect())
}

/// The sailbasis whose open segment crosses the diagonal, if there is one.
pub fn central_sailbasis(lattice: &Sublattice2) -> Result<Option<SailBasis>> {
    let mut central = sailbases(lattice)?.into_iter().filter(|sb| sb.central);
    let first = central.next();
    if central.next().is_some() {
        return Err(Error::Bijection(format!(
            "{lattice} has two central sailbases"
        )));
    }
    Ok(first)
}

pub fn is_bad(lattice: &Sublattice2) -> Result<bool> {
    Ok(central_sailbasis(lattice)?.is_none())
}

/// For a bad lattice: the diagonal sail point u and its neighbour v below
/// the diagonal.
pub fn normalized_sailbasis(lattice: &Sublattice2) -> Result<(Vec2, Vec2)> {
    let sail = compute_sail(lattice)?;
    let i = sail
        .points
        .iter()
        .position(|p| p.x == p.y)
        .ok_or_else(|| Error::NotBad(lattice.to_string()))?;
    // the diagonal point is never an endpoint, so i ≥ 1
    Ok((sail.points[i], sail.points[i - 1]))
}

/// Bad sublattices of index n from their normalized sailbases: diagonal
/// point `(d, d)` and partner `(n/d + a, a)` with `0 ≤ a < d` when d² < n and
/// `d − n/d < a < d` otherwise.
pub fn enumerate_bad(n: u64) -> Result<Vec<Sublattice2>> {
    let mut out = Vec::new();
    for d in divisors(n)? {
        let q = n / d;
        let lo = if d < q { 0 } else { d - q + 1 };
        for a in lo..d {
            let di = i64::try_from(d).map_err(|_| Error::Overflow("enumerate_bad"))?;
            let vx = i64::try_from(q + a).map_err(|_| Error::Overflow("enumerate_bad"))?;
            out.push(from_basis(&Vec2::new(di, di), &Vec2::new(vx, a as i64))?);
        }
    }
    Ok(out)
}

/// Sail-based classification of every sublattice of index n.
pub fn classify_sublattices(
    n: u64,
    exec: Execution,
) -> Result<Vec<(Sublattice2, Option<SailBasis>)>> {
    let lattices = enumerate_sublattices(n)?;
    exec.map_slice(&lattices, |l| central_sailbasis(l).map(|c| (*l, c)))
        .into_iter()
        .collect()
}

/// Rows u = (a, c), v = (d, b) of a central sailbasis give (a, b, c, d).
pub fn sailbasis_to_solution(sb: &SailBasis) -> Result<Solution> {
    if !sb.central {
        return Err(Error::NotCentral);
    }
    let conv = |z: i64| u64::try_from(z).map_err(|_| Error::OutsideQuadrant(z.to_string()));
    Solution::new(conv(sb.u.x)?, conv(sb.v.y)?, conv(sb.u.y)?, conv(sb.v.x)?)
}

/// The central sailbasis `u = (a, c)`, `v = (d, b)` of the lattice they span.
/// Fails if that pair is not the lattice's central sailbasis.
pub fn solution_to_sailbasis(s: &Solution) -> Result<SailBasis> {
    let conv = |z: u64| i64::try_from(z).map_err(|_| Error::Overflow("solution_to_sailbasis"));
    let u = Vec2::new(conv(s.a)?, conv(s.c)?);
    let v = Vec2::new(conv(s.d)?, conv(s.b)?);
    let lattice = from_basis(&u, &v)?;
    match central_sailbasis(&lattice)? {
        Some(sb) if sb.u == u && sb.v == v => Ok(sb),
        other => Err(Error::Bijection(format!(
            "{s} spans {lattice} whose central sailbasis is {other:?}"
        ))),
    }
}

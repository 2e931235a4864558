//! Euclid-reduced 2×2 matrices and the lattice geometry that counts them.
//!
//! A 2×2 matrix with non-negative integer entries and positive determinant
//! can be simplified by subtracting one row (or column) from the other as
//! long as all entries stay non-negative. Matrices where no such move is
//! possible are *Euclid-reduced*; they are exactly the matrices
//! `[[a, c], [d, b]]` with `min(a, b) > max(c, d)`. For each determinant `n`
//! there are finitely many, namely
//!
//! ```text
//!     #R(n) = Σ_{d | n, d² ≥ n} (d + 1 − n/d)
//! ```
//!
//! The count comes from sails (lower-left convex hull boundaries) of the
//! σ(n) sublattices of index `n` in ℤ²: a reduced matrix is a sailbasis that
//! straddles the diagonal, and the remaining "bad" lattices are counted
//! separately.
//!
//! Modules:
//!
//! * [`mat2`]: matrices, elementary reductions, the reduction procedure.
//! * [`counting`]: divisor sums, Moebius inversion, q-binomials, brute-force oracles.
//! * [`enumeration`]: explicit solutions `(a, b, c, d)` and Klein four-group orbits.
//! * [`lattice`]: sublattices of ℤ² in Hermite normal form.
//! * [`sail`]: sails, central and normalized sailbases, bad lattices.
//! * [`gaussian`]: the analogous problem over the Gaussian integers.
//! * [`verify`]: the cross-check suite used by the `verify` command.
//!
//! Range sweeps go through [`Execution`], which uses rayon when the
//! `parallel` feature is on and falls back to plain iteration otherwise.

pub mod counting;
pub mod enumeration;
pub mod error;
pub mod exec;
pub mod gaussian;
pub mod lattice;
pub mod mat2;
pub mod sail;
pub mod verify;

pub use error::{Error, Result};
pub use exec::Execution;

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Extended gcd on i128: returns (g, s, t) with s·a + t·b = g ≥ 0.
pub(crate) fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i128, 0i128);
    let (mut old_t, mut t) = (0i128, 1i128);
    while r != 0 {
        let q = old_r.div_euclid(r);
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

//! 2×2 matrices over ℕ, elementary reductions and the reduction procedure.
//!
//! An elementary reduction subtracts one row (or column) from the other.
//! The four moves are `EM`, `EᵗM`, `ME`, `MEᵗ` with `E = [[1, −1], [0, 1]]`.
//! They are unimodular, so the determinant never changes and a move keeps a
//! matrix of positive determinant inside 𝒫 exactly when no entry goes
//! negative.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Row-major 2×2 matrix `[[a, b], [c, d]]` with non-negative entries.
///
/// Serialized as an array of rows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "[[u64; 2]; 2]", into = "[[u64; 2]; 2]")]
pub struct Mat2 {
    pub a: u64,
    pub b: u64,
    pub c: u64,
    pub d: u64,
}

impl From<[[u64; 2]; 2]> for Mat2 {
    fn from(rows: [[u64; 2]; 2]) -> Self {
        Mat2::new(rows[0][0], rows[0][1], rows[1][0], rows[1][1])
    }
}

impl From<Mat2> for [[u64; 2]; 2] {
    fn from(m: Mat2) -> Self {
        m.rows()
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.a, self.b, self.c, self.d)
    }
}

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2::new(1, 0, 0, 1);

    pub const fn new(a: u64, b: u64, c: u64, d: u64) -> Self {
        Mat2 { a, b, c, d }
    }

    pub fn rows(&self) -> [[u64; 2]; 2] {
        [[self.a, self.b], [self.c, self.d]]
    }

    fn entries(&self) -> [u64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    fn from_entries(e: [u64; 4]) -> Self {
        Mat2::new(e[0], e[1], e[2], e[3])
    }

    pub fn entry_sum(&self) -> u128 {
        self.entries().iter().map(|&x| x as u128).sum()
    }

    /// `ad − bc`. Fails only when the difference does not fit in an `i128`.
    pub fn det(&self) -> Result<i128> {
        let ad = self.a as u128 * self.d as u128;
        let bc = self.b as u128 * self.c as u128;
        if ad >= bc {
            i128::try_from(ad - bc).map_err(|_| Error::Overflow("det"))
        } else {
            i128::try_from(bc - ad)
                .map(|x| -x)
                .map_err(|_| Error::Overflow("det"))
        }
    }

    /// Membership in 𝒫: strictly positive determinant.
    pub fn in_p(&self) -> bool {
        self.a as u128 * self.d as u128 > self.b as u128 * self.c as u128
    }

    fn require_p(&self) -> Result<()> {
        if self.in_p() {
            Ok(())
        } else {
            Err(Error::NotPositiveDeterminant(self.to_string()))
        }
    }

    /// `min(a, d) > max(b, c)`.
    pub fn is_euclid_reduced(&self) -> Result<bool> {
        self.require_p()?;
        Ok(self.a.min(self.d) > self.b.max(self.c))
    }

    /// All four elementary reductions, in the order of [`ReductionKind::ALL`].
    pub fn elementary_reductions(&self) -> [ReductionImage; 4] {
        ReductionKind::ALL.map(|kind| kind.image(self))
    }

    /// True when every elementary move either makes an entry negative or
    /// subtracts a zero row/column (and so does nothing). For matrices of
    /// determinant zero this is the notion of being reduced.
    pub fn admits_no_proper_move(&self) -> bool {
        ReductionKind::ALL.iter().all(|kind| {
            let [(t0, s0), (t1, s1)] = kind.pairs();
            let e = self.entries();
            let subtracted_zero = e[s0] == 0 && e[s1] == 0;
            subtracted_zero || e[t0] < e[s0] || e[t1] < e[s1]
        })
    }

    /// Reduce with the fixed strategy: always apply the first move (in the
    /// order LeftE, LeftEt, RightE, RightEt) that stays in 𝒫.
    ///
    /// Consecutive applications of the same move are stored as one run, so
    /// matrices with huge quotients such as `[[N, N−1], [1, 1]]` are reduced
    /// in logarithmically many runs.
    pub fn reduce(&self) -> Result<ReductionTrace> {
        self.require_p()?;
        let mut steps = Vec::new();
        let mut cur = *self;
        while let Some(kind) = cur.first_available_move() {
            let repeat = run_length(&cur, kind);
            cur = kind.apply_times(&cur, repeat);
            steps.push(ReductionStep {
                kind,
                repeat,
                matrix: cur,
            });
        }
        Ok(ReductionTrace {
            start: *self,
            steps,
            result: cur,
        })
    }

    fn first_available_move(&self) -> Option<ReductionKind> {
        ReductionKind::ALL
            .into_iter()
            .find(|k| k.is_available(&self.entries().map(|x| x as i128)))
    }

    /// Every Euclid-reduced matrix reachable from `self` by single moves that
    /// stay in 𝒫. Exhaustive search; the entry sum strictly decreases along
    /// every move so the search terminates, but the state space grows quickly
    /// with the entries.
    pub fn all_normal_forms(&self) -> Result<BTreeSet<Mat2>> {
        self.require_p()?;
        let mut seen = HashSet::new();
        let mut stack = vec![*self];
        let mut forms = BTreeSet::new();
        seen.insert(*self);
        while let Some(m) = stack.pop() {
            let mut any = false;
            for image in m.elementary_reductions() {
                if let Some(next) = image.matrix().filter(|_| image.in_p) {
                    any = true;
                    if seen.insert(next) {
                        stack.push(next);
                    }
                }
            }
            if !any {
                forms.insert(m);
            }
        }
        Ok(forms)
    }

    /// Reduce a determinant-zero matrix by rows, then by columns, until a
    /// zero row and a zero column appear.
    pub fn classify_det0(&self) -> Result<Det0Classification> {
        let det = self.det()?;
        if det != 0 {
            return Err(Error::NonZeroDeterminant(det));
        }
        let [[a, b], [c, d]] = self.rows();
        let ([a, b], [c, d]) = subtract_until_zero([a, b], [c, d]);
        // columns
        let ([a, c], [b, d]) = subtract_until_zero([a, c], [b, d]);
        let terminal = Mat2::new(a, b, c, d);
        let nonzero: Vec<_> = terminal
            .entries()
            .into_iter()
            .enumerate()
            .filter(|&(_, x)| x != 0)
            .collect();
        let entry = match nonzero.as_slice() {
            [] => None,
            [(i, value)] => Some(NonZeroEntry {
                value: *value,
                row: i / 2 + 1,
                col: i % 2 + 1,
            }),
            _ => {
                return Err(Error::InvalidArgument(format!(
                    "determinant-zero reduction of {self} ended at {terminal}"
                )))
            }
        };
        Ok(Det0Classification { terminal, entry })
    }
}

/// Repeatedly subtract the componentwise-smaller vector from the larger one
/// until one of them is zero; ties subtract `q` from `p`. The vectors are
/// proportional for the rows and columns of a singular matrix, so one of them
/// always dominates.
fn subtract_until_zero(mut p: [u64; 2], mut q: [u64; 2]) -> ([u64; 2], [u64; 2]) {
    let dominates = |x: [u64; 2], y: [u64; 2]| x[0] >= y[0] && x[1] >= y[1];
    while p != [0, 0] && q != [0, 0] {
        if dominates(p, q) {
            let k = max_multiple(p, q);
            p = [p[0] - k * q[0], p[1] - k * q[1]];
        } else if dominates(q, p) {
            let k = max_multiple(q, p);
            q = [q[0] - k * p[0], q[1] - k * p[1]];
        } else {
            break;
        }
    }
    (p, q)
}

/// Largest k with x − k·y ≥ 0 componentwise (y ≠ 0).
fn max_multiple(x: [u64; 2], y: [u64; 2]) -> u64 {
    (0..2)
        .filter(|&i| y[i] != 0)
        .map(|i| x[i] / y[i])
        .min()
        .unwrap_or(0)
}

/// Number of consecutive times the fixed strategy applies `kind` starting at
/// `m`, given that `kind` is the first available move at `m`.
///
/// After j applications every entry is linear in j, so "an earlier move is
/// available again" and "`kind` is still applicable" are both systems of
/// linear inequalities in j.
fn run_length(m: &Mat2, kind: ReductionKind) -> u64 {
    let e = m.entries().map(|x| x as i128);
    let mut slope = [0i128; 4];
    for (t, s) in kind.pairs() {
        slope[t] = -e[s];
    }
    // own applicability: the j-th application needs state j−1 to allow it,
    // i.e. e[t] − j·e[s] ≥ 0 for both targets.
    let mut max_j = u64::MAX as i128;
    for (t, s) in kind.pairs() {
        if e[s] > 0 {
            max_j = max_j.min(e[t] / e[s]);
        }
    }
    let mut stop = max_j;
    for earlier in ReductionKind::ALL.into_iter().take_while(|&k| k != kind) {
        // constraints α + β·j ≥ 0 for `earlier` to be available at state j
        let constraints = earlier
            .pairs()
            .map(|(t, s)| (e[t] - e[s], slope[t] - slope[s]));
        if let Some(j) = first_satisfying(&constraints, 1, stop) {
            stop = stop.min(j);
        }
    }
    stop as u64
}

/// Least j in [lo, hi] with α + β·j ≥ 0 for every constraint.
fn first_satisfying(constraints: &[(i128, i128)], lo: i128, hi: i128) -> Option<i128> {
    let mut lower = lo;
    let mut upper = hi;
    for &(alpha, beta) in constraints {
        match beta.cmp(&0) {
            std::cmp::Ordering::Equal => {
                if alpha < 0 {
                    return None;
                }
            }
            std::cmp::Ordering::Greater => {
                // j ≥ −α/β
                let need = (-alpha).div_euclid(beta) + i128::from((-alpha).rem_euclid(beta) != 0);
                lower = lower.max(need);
            }
            std::cmp::Ordering::Less => {
                upper = upper.min(alpha.div_euclid(-beta));
            }
        }
    }
    (lower <= upper).then_some(lower)
}

/// One of the four elementary moves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ReductionKind {
    /// `EM`: row 1 ← row 1 − row 2.
    LeftE,
    /// `EᵗM`: row 2 ← row 2 − row 1.
    LeftEt,
    /// `ME`: column 2 ← column 2 − column 1.
    RightE,
    /// `MEᵗ`: column 1 ← column 1 − column 2.
    RightEt,
}

impl fmt::Display for ReductionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ReductionKind::LeftE => "LeftE",
            ReductionKind::LeftEt => "LeftEt",
            ReductionKind::RightE => "RightE",
            ReductionKind::RightEt => "RightEt",
        };
        f.write_str(s)
    }
}

impl ReductionKind {
    pub const ALL: [ReductionKind; 4] = [
        ReductionKind::LeftE,
        ReductionKind::LeftEt,
        ReductionKind::RightE,
        ReductionKind::RightEt,
    ];

    /// (target, source) index pairs into the flattened `[a, b, c, d]`.
    fn pairs(self) -> [(usize, usize); 2] {
        match self {
            ReductionKind::LeftE => [(0, 2), (1, 3)],
            ReductionKind::LeftEt => [(2, 0), (3, 1)],
            ReductionKind::RightE => [(1, 0), (3, 2)],
            ReductionKind::RightEt => [(0, 1), (2, 3)],
        }
    }

    fn is_available(self, e: &[i128; 4]) -> bool {
        self.pairs().iter().all(|&(t, s)| e[t] >= e[s])
    }

    pub fn image(self, m: &Mat2) -> ReductionImage {
        let mut e = m.entries().map(|x| x as i128);
        for (t, s) in self.pairs() {
            e[t] -= e[s];
        }
        let in_p = e.iter().all(|&x| x >= 0) && e[0] * e[3] > e[1] * e[2];
        ReductionImage {
            kind: self,
            entries: [[e[0], e[1]], [e[2], e[3]]],
            in_p,
        }
    }

    /// Apply the move `times` times; the caller guarantees entries stay ≥ 0.
    fn apply_times(self, m: &Mat2, times: u64) -> Mat2 {
        let mut e = m.entries();
        for (t, s) in self.pairs() {
            e[t] -= times * e[s];
        }
        Mat2::from_entries(e)
    }
}

/// Image of a matrix under one move, possibly with negative entries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReductionImage {
    pub kind: ReductionKind,
    pub entries: [[i128; 2]; 2],
    pub in_p: bool,
}

impl ReductionImage {
    /// The image as a [`Mat2`] when all entries are non-negative.
    pub fn matrix(&self) -> Option<Mat2> {
        let [[a, b], [c, d]] = self.entries;
        Some(Mat2::new(
            u64::try_from(a).ok()?,
            u64::try_from(b).ok()?,
            u64::try_from(c).ok()?,
            u64::try_from(d).ok()?,
        ))
    }
}

/// `repeat` consecutive applications of `kind`, ending at `matrix`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionStep {
    pub kind: ReductionKind,
    pub repeat: u64,
    pub matrix: Mat2,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionTrace {
    pub start: Mat2,
    pub steps: Vec<ReductionStep>,
    pub result: Mat2,
}

impl ReductionTrace {
    /// Total number of single elementary moves.
    pub fn move_count(&self) -> u128 {
        self.steps.iter().map(|s| s.repeat as u128).sum()
    }

    /// Re-apply every step move by move, checking that each intermediate
    /// matrix stays in 𝒫 and that the recorded matrices and result match.
    pub fn replay(&self) -> bool {
        let mut cur = self.start;
        for step in &self.steps {
            if step.repeat == 0 {
                return false;
            }
            for _ in 0..step.repeat {
                let image = step.kind.image(&cur);
                match image.matrix() {
                    Some(next) if image.in_p => cur = next,
                    _ => return false,
                }
            }
            if cur != step.matrix {
                return false;
            }
        }
        cur == self.result && matches!(cur.is_euclid_reduced(), Ok(true))
    }

    /// The trace with runs expanded into single moves.
    pub fn single_moves(&self) -> impl Iterator<Item = (ReductionKind, Mat2)> + '_ {
        let mut cur = self.start;
        self.steps.iter().flat_map(move |step| {
            let kind = step.kind;
            (0..step.repeat)
                .map(|_| {
                    cur = kind.apply_times(&cur, 1);
                    (kind, cur)
                })
                .collect::<Vec<_>>()
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonZeroEntry {
    pub value: u64,
    /// 1-based row.
    pub row: usize,
    /// 1-based column.
    pub col: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Det0Classification {
    pub terminal: Mat2,
    /// `None` for the zero matrix, which has no well-defined gcd.
    pub entry: Option<NonZeroEntry>,
}

impl Det0Classification {
    pub fn is_degenerate(&self) -> bool {
        self.entry.is_none()
    }
}

/// Rectangular matrix over ℕ, for the size-larger-than-two experiments.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MatGeneral {
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl MatGeneral {
    pub fn from_rows(rows: Vec<Vec<u64>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.is_empty() || cols == 0 || rows.iter().any(|r| r.len() != cols) {
            return Err(Error::InvalidArgument(
                "matrix rows must be non-empty and of equal length".into(),
            ));
        }
        Ok(MatGeneral {
            rows: rows.len(),
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c]
    }

    /// True iff subtracting any row from another row, or any column from
    /// another column, produces a negative entry.
    pub fn is_general_reduced(&self) -> bool {
        let rows_blocked = (0..self.rows).all(|i| {
            (0..self.rows)
                .filter(|&j| j != i)
                .all(|j| (0..self.cols).any(|c| self.get(i, c) < self.get(j, c)))
        });
        let cols_blocked = (0..self.cols).all(|i| {
            (0..self.cols)
                .filter(|&j| j != i)
                .all(|j| (0..self.rows).any(|r| self.get(r, i) < self.get(r, j)))
        });
        rows_blocked && cols_blocked
    }

    /// Determinant of a square matrix (fraction-free Bareiss elimination).
    pub fn det(&self) -> Result<i128> {
        if self.rows != self.cols {
            return Err(Error::InvalidArgument(
                "determinant of a non-square matrix".into(),
            ));
        }
        let idx: Vec<usize> = (0..self.cols).collect();
        self.minor(&idx)
    }

    /// Determinant of the square submatrix on the given columns (all rows).
    fn minor(&self, cols: &[usize]) -> Result<i128> {
        let n = self.rows;
        let mut m: Vec<Vec<i128>> = (0..n)
            .map(|r| cols.iter().map(|&c| self.get(r, c) as i128).collect())
            .collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n {
            if m[k][k] == 0 {
                match (k + 1..n).find(|&r| m[r][k] != 0) {
                    Some(r) => {
                        m.swap(k, r);
                        sign = -sign;
                    }
                    None => return Ok(0),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = m[i][j]
                        .checked_mul(m[k][k])
                        .zip(m[i][k].checked_mul(m[k][j]))
                        .and_then(|(x, y)| x.checked_sub(y))
                        .ok_or(Error::Overflow("det"))?;
                    m[i][j] = v / prev;
                }
            }
            prev = m[k][k];
        }
        Ok(sign * m[n - 1][n - 1])
    }

    /// gcd of all maximal minors; it equals 1 exactly when the columns
    /// generate ℤ^rows. Requires rows ≤ cols.
    pub fn maximal_minors_gcd(&self) -> Result<u128> {
        if self.rows > self.cols {
            return Err(Error::InvalidArgument("more rows than columns".into()));
        }
        let mut g = 0u128;
        let mut combo: Vec<usize> = (0..self.rows).collect();
        loop {
            let minor = self.minor(&combo)?.unsigned_abs();
            g = gcd_u128(g, minor);
            // next combination
            let k = self.rows;
            let Some(i) = (0..k).rev().find(|&i| combo[i] < self.cols - k + i) else {
                break;
            };
            combo[i] += 1;
            for j in i + 1..k {
                combo[j] = combo[j - 1] + 1;
            }
        }
        Ok(g)
    }
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// `[[4+x, 2+x, 1+x], [x, 1+x, 3+x], [1+x, 1+x, 2+x]]`: determinant 1 and
/// blocked for every x.
pub fn reduced_family_3x3(x: u64) -> MatGeneral {
    MatGeneral {
        rows: 3,
        cols: 3,
        data: vec![4 + x, 2 + x, 1 + x, x, 1 + x, 3 + x, 1 + x, 1 + x, 2 + x],
    }
}

/// `[[n, 3, 2], [1, 2, 3]]`: blocked for n ≥ 4; its columns generate ℤ² iff
/// n ≢ 4 (mod 5).
pub fn reduced_family_2x3(n: u64) -> MatGeneral {
    MatGeneral {
        rows: 2,
        cols: 3,
        data: vec![n, 3, 2, 1, 2, 3],
    }
}

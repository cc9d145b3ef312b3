use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntMatrix;

/// Result of [`smith_normal_form`]: `u * m * v == s`.
#[derive(Debug, Clone)]
pub struct SmithForm {
    pub s: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    /// Nonzero diagonal entries `d_1 | d_2 | ...`, all positive.
    pub fn invariants(&self) -> Vec<BigInt> {
        diagonal(&self.s)
    }

    pub fn rank(&self) -> usize {
        self.invariants().len()
    }
}

fn diagonal(s: &IntMatrix) -> Vec<BigInt> {
    (0..s.rows().min(s.cols()))
        .map(|i| s[(i, i)].clone())
        .take_while(|d| !d.is_zero())
        .collect()
}

/// Working state of a Smith reduction. Each transform is optional so callers
/// that only need one side do not pay for the other.
pub(crate) struct SmithWork {
    pub s: IntMatrix,
    pub u: Option<IntMatrix>,
    pub v: Option<IntMatrix>,
    pub v_inv: Option<IntMatrix>,
}

impl SmithWork {
    pub fn new(m: &IntMatrix, track_u: bool, track_v: bool) -> Self {
        Self {
            s: m.clone(),
            u: track_u.then(|| IntMatrix::identity(m.rows())),
            v: track_v.then(|| IntMatrix::identity(m.cols())),
            v_inv: track_v.then(|| IntMatrix::identity(m.cols())),
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        self.s.swap_rows(a, b);
        if let Some(u) = &mut self.u {
            u.swap_rows(a, b);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.s.swap_cols(a, b);
        if let Some(v) = &mut self.v {
            v.swap_cols(a, b);
        }
        if let Some(w) = &mut self.v_inv {
            w.swap_rows(a, b);
        }
    }

    fn add_row_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        self.s.add_row_multiple(dst, src, k);
        if let Some(u) = &mut self.u {
            u.add_row_multiple(dst, src, k);
        }
    }

    fn add_col_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        self.s.add_col_multiple(dst, src, k);
        if let Some(v) = &mut self.v {
            v.add_col_multiple(dst, src, k);
        }
        if let Some(w) = &mut self.v_inv {
            w.add_row_multiple(src, dst, &-k);
        }
    }

    fn negate_row(&mut self, i: usize) {
        self.s.negate_row(i);
        if let Some(u) = &mut self.u {
            u.negate_row(i);
        }
    }

    /// Row Bezout step: afterwards `s[a][col] = gcd` and `s[b][col] = 0`.
    fn bezout_rows(&mut self, a: usize, b: usize, col: usize) {
        let x = self.s[(a, col)].clone();
        let y = self.s[(b, col)].clone();
        let e = x.extended_gcd(&y);
        let (p, q) = (e.x, e.y);
        let r = -(&y / &e.gcd);
        let t = &x / &e.gcd;
        self.s.combine_rows(a, b, &p, &q, &r, &t);
        if let Some(u) = &mut self.u {
            u.combine_rows(a, b, &p, &q, &r, &t);
        }
    }

    /// Column Bezout step: afterwards `s[row][a] = gcd` and `s[row][b] = 0`.
    fn bezout_cols(&mut self, a: usize, b: usize, row: usize) {
        let x = self.s[(row, a)].clone();
        let y = self.s[(row, b)].clone();
        let e = x.extended_gcd(&y);
        let (p, q) = (e.x, e.y);
        let r = -(&y / &e.gcd);
        let t = &x / &e.gcd;
        // new col a = p*a + q*b, new col b = r*a + t*b (determinant 1)
        self.s.combine_cols(a, b, &p, &q, &r, &t);
        if let Some(v) = &mut self.v {
            v.combine_cols(a, b, &p, &q, &r, &t);
        }
        if let Some(w) = &mut self.v_inv {
            // inverse of [[p, r], [q, t]] is [[t, -r], [-q, p]], acting on rows
            w.combine_rows(a, b, &t, &-&r, &-&q, &p);
        }
    }

    pub fn run(&mut self) {
        let (rows, cols) = (self.s.rows(), self.s.cols());
        for t in 0..rows.min(cols) {
            // minimal nonzero absolute value pivot keeps entry growth down
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    let x = &self.s[(i, j)];
                    if x.is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| x.abs() < self.s[(bi, bj)].abs()) {
                        best = Some((i, j));
                        if x.abs().is_one() {
                            break;
                        }
                    }
                }
                if best.is_some_and(|(bi, bj)| self.s[(bi, bj)].abs().is_one()) {
                    break;
                }
            }
            let Some((pi, pj)) = best else { return };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                self.clear_column(t);
                self.clear_row(t);
                if (t + 1..rows).all(|i| self.s[(i, t)].is_zero()) {
                    // divisibility: fold any offending row into row t and go again
                    let p = self.s[(t, t)].clone();
                    let offender = (t + 1..rows)
                        .find(|&i| (t + 1..cols).any(|j| !self.s[(i, j)].is_multiple_of(&p)));
                    match offender {
                        Some(i) => self.add_row_multiple(t, i, &BigInt::one()),
                        None => break,
                    }
                }
            }
            if self.s[(t, t)].is_negative() {
                self.negate_row(t);
            }
        }
    }

    fn clear_column(&mut self, t: usize) {
        for i in t + 1..self.s.rows() {
            if self.s[(i, t)].is_zero() {
                continue;
            }
            let (q, r) = self.s[(i, t)].div_rem(&self.s[(t, t)]);
            if r.is_zero() {
                self.add_row_multiple(i, t, &-q);
            } else {
                self.bezout_rows(t, i, t);
            }
        }
    }

    fn clear_row(&mut self, t: usize) {
        for j in t + 1..self.s.cols() {
            if self.s[(t, j)].is_zero() {
                continue;
            }
            let (q, r) = self.s[(t, j)].div_rem(&self.s[(t, t)]);
            if r.is_zero() {
                self.add_col_multiple(j, t, &-q);
            } else {
                self.bezout_cols(t, j, t);
            }
        }
    }
}

/// Smith normal form with unimodular transforms: `u * m * v == s`, `s`
/// diagonal with positive entries `d_i | d_{i+1}` followed by zeros.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let mut w = SmithWork::new(m, true, true);
    w.run();
    SmithForm { s: w.s, u: w.u.unwrap(), v: w.v.unwrap() }
}

/// Invariant factors (nonzero diagonal of the Smith form) without transforms.
pub fn smith_invariants(m: &IntMatrix) -> Vec<BigInt> {
    let mut w = SmithWork::new(m, false, false);
    w.run();
    diagonal(&w.s)
}

/// Row-style Hermite normal form of the row lattice: echelon, positive
/// pivots, entries above each pivot reduced into `[0, pivot)`, zero rows
/// dropped. Two matrices have the same row span iff their HNFs are equal.
pub fn hermite_normal_form(m: &IntMatrix) -> IntMatrix {
    let mut a = m.clone();
    let (rows, cols) = (a.rows(), a.cols());
    let mut r = 0;
    let mut pivots = Vec::new();
    for j in 0..cols {
        if r == rows {
            break;
        }
        loop {
            // smallest nonzero entry at or below r moves to r
            let best = (r..rows)
                .filter(|&i| !a[(i, j)].is_zero())
                .min_by(|&x, &y| a[(x, j)].abs().cmp(&a[(y, j)].abs()));
            let Some(b) = best else { break };
            a.swap_rows(r, b);
            let mut done = true;
            for i in r + 1..rows {
                if a[(i, j)].is_zero() {
                    continue;
                }
                let q = a[(i, j)].div_floor(&a[(r, j)]);
                a.add_row_multiple(i, r, &-q);
                if !a[(i, j)].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if r < rows && !a[(r, j)].is_zero() {
            if a[(r, j)].is_negative() {
                a.negate_row(r);
            }
            pivots.push((r, j));
            r += 1;
        }
    }
    for &(pr, pc) in &pivots {
        let p = a[(pr, pc)].clone();
        for i in 0..pr {
            let q = a[(i, pc)].div_floor(&p);
            a.add_row_multiple(i, pr, &-q);
        }
    }
    a.select_rows(&(0..r).collect::<Vec<_>>())
}

/// Basis of the left kernel `{x : x * m == 0}`, in Hermite normal form.
pub fn kernel_lattice(m: &IntMatrix) -> IntMatrix {
    let mut w = SmithWork::new(m, true, false);
    w.run();
    let rank = diagonal(&w.s).len();
    let u = w.u.unwrap();
    let basis = u.select_rows(&(rank..m.rows()).collect::<Vec<_>>());
    hermite_normal_form(&basis)
}

/// Solves `x * b == y` for every row `y` of `ys`, returning the solutions
/// as rows, or `None` if some row has no integer solution.
pub fn solve_left(b: &IntMatrix, ys: &IntMatrix) -> Option<IntMatrix> {
    assert_eq!(b.cols(), ys.cols(), "solve_left shape mismatch");
    let sf = smith_normal_form(b);
    let d = sf.invariants();
    let w = ys * &sf.v;
    let mut z = IntMatrix::zeros(ys.rows(), b.rows());
    for i in 0..ys.rows() {
        for j in 0..b.cols() {
            let wij = &w[(i, j)];
            if j < d.len() {
                let (q, r) = wij.div_rem(&d[j]);
                if !r.is_zero() {
                    return None;
                }
                z[(i, j)] = q;
            } else if !wij.is_zero() {
                return None;
            }
        }
    }
    Some(&z * &sf.u)
}

/// Rank over the rationals.
pub fn rank(m: &IntMatrix) -> usize {
    smith_invariants(m).len()
}

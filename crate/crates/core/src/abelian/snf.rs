use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::IntMatrix;

/// Result of a Smith normal form computation: `u · m · v = s`.
///
/// The inverses of `u` and `v` are tracked alongside so callers can move
/// between the original and the diagonal coordinates without re-solving.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
    /// Number of nonzero diagonal entries.
    pub rank: usize,
}

impl SmithForm {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.s.rows().min(self.s.cols()))
            .map(|i| self.s.get(i, i).clone())
            .collect()
    }
}

struct Work {
    s: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl Work {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.s.swap_rows(a, b);
        self.u.swap_rows(a, b);
        self.u_inv.swap_cols(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.s.swap_cols(a, b);
        self.v.swap_cols(a, b);
        self.v_inv.swap_rows(a, b);
    }

    /// row[dst] += q · row[src], applied as U ← E·U.
    fn add_row(&mut self, dst: usize, src: usize, q: &BigInt) {
        self.s.add_row_multiple(dst, src, q);
        self.u.add_row_multiple(dst, src, q);
        self.u_inv.add_col_multiple(src, dst, &-q);
    }

    /// col[dst] += q · col[src], applied as V ← V·E.
    fn add_col(&mut self, dst: usize, src: usize, q: &BigInt) {
        self.s.add_col_multiple(dst, src, q);
        self.v.add_col_multiple(dst, src, q);
        self.v_inv.add_row_multiple(src, dst, &-q);
    }

    fn negate_row(&mut self, i: usize) {
        self.s.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }
}

/// Smith normal form over the integers.
///
/// Pivot rule: at every stage the entry of smallest nonzero absolute value
/// in the active block is chosen, first hit in row-major order on ties.
/// Diagonal entries come out nonnegative with `d_i | d_{i+1}`.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (rows, cols) = (m.rows(), m.cols());
    let mut w = Work {
        s: m.clone(),
        u: IntMatrix::identity(rows),
        u_inv: IntMatrix::identity(rows),
        v: IntMatrix::identity(cols),
        v_inv: IntMatrix::identity(cols),
    };
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pr, pc)) = smallest_entry(&w.s, t..rows, t..cols) else {
            break;
        };
        w.swap_rows(t, pr);
        w.swap_cols(t, pc);
        loop {
            let pivot = w.s.get(t, t).clone();
            let mut dirty = false;
            for i in t + 1..rows {
                if w.s.get(i, t).is_zero() {
                    continue;
                }
                let q = w.s.get(i, t) / &pivot;
                w.add_row(i, t, &-q);
                dirty |= !w.s.get(i, t).is_zero();
            }
            for j in t + 1..cols {
                if w.s.get(t, j).is_zero() {
                    continue;
                }
                let q = w.s.get(t, j) / &pivot;
                w.add_col(j, t, &-q);
                dirty |= !w.s.get(t, j).is_zero();
            }
            if dirty {
                // A remainder smaller than the pivot survived in row t or column t.
                let (pr, pc) = smallest_in_cross(&w.s, t);
                w.swap_rows(t, pr);
                w.swap_cols(t, pc);
                continue;
            }
            let bad = (t + 1..rows).find(|&i| {
                (t + 1..cols).any(|j| !w.s.get(i, j).is_multiple_of(&pivot))
            });
            match bad {
                Some(i) => {
                    let one = BigInt::from(1);
                    w.add_row(t, i, &one);
                }
                None => break,
            }
        }
        if w.s.get(t, t).is_negative() {
            w.negate_row(t);
        }
        t += 1;
    }
    let rank = (0..rows.min(cols))
        .take_while(|&i| !w.s.get(i, i).is_zero())
        .count();
    SmithForm {
        u: w.u,
        u_inv: w.u_inv,
        s: w.s,
        v: w.v,
        v_inv: w.v_inv,
        rank,
    }
}

fn smallest_entry(
    m: &IntMatrix,
    rows: std::ops::Range<usize>,
    cols: std::ops::Range<usize>,
) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for i in rows {
        for j in cols.clone() {
            let a = m.get(i, j).abs();
            if a.is_zero() {
                continue;
            }
            if best.as_ref().map_or(true, |(_, _, b)| a < *b) {
                best = Some((i, j, a));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

fn smallest_in_cross(m: &IntMatrix, t: usize) -> (usize, usize) {
    let mut best = (t, t, m.get(t, t).abs());
    let mut consider = |i: usize, j: usize| {
        let a = m.get(i, j).abs();
        if !a.is_zero() && (best.2.is_zero() || a < best.2) {
            best = (i, j, a);
        }
    };
    for j in t..m.cols() {
        consider(t, j);
    }
    for i in t + 1..m.rows() {
        consider(i, t);
    }
    (best.0, best.1)
}

/// Solves `m · x = b` over the integers. Returns one solution if any exists.
pub fn solve_integer(m: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    solve_with(&smith_normal_form(m), b)
}

/// Same as [`solve_integer`] with a precomputed Smith form of `m`.
pub fn solve_with(snf: &SmithForm, b: &[BigInt]) -> Option<Vec<BigInt>> {
    if b.len() != snf.s.rows() {
        return None;
    }
    let ub = snf.u.mul_vec(b);
    let mut y = vec![BigInt::zero(); snf.s.cols()];
    for (i, c) in ub.iter().enumerate() {
        if i < snf.rank {
            let d = snf.s.get(i, i);
            let (q, r) = c.div_rem(d);
            if !r.is_zero() {
                return None;
            }
            y[i] = q;
        } else if !c.is_zero() {
            return None;
        }
    }
    Some(snf.v.mul_vec(&y))
}

/// Integer basis of `{y : y · m = 0}`, one vector per row.
pub fn left_kernel(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    let snf = smith_normal_form(m);
    (snf.rank..m.rows()).map(|i| snf.u.row(i)).collect()
}

/// Integer basis of `{x : m · x = 0}`, one vector per entry.
pub fn right_kernel(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    let snf = smith_normal_form(m);
    (snf.rank..m.cols()).map(|j| snf.v.column(j)).collect()
}

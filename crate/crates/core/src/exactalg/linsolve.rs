//! Exact sparse Gauss-Jordan elimination.
//!
//! Pivot rule: columns are scanned left to right and the pivot for a column is
//! the lowest-indexed row not yet used as a pivot. Free variables are set to
//! zero in the particular solution.

use num_traits::{One, Signed, Zero};

use super::{AlgError, RatFunc, Rational};

type Row = Vec<(usize, Rational)>;

/// A linear system `A x = b` assembled row by row in sparse form.
#[derive(Debug, Clone)]
pub struct SparseSystem {
    ncols: usize,
    rows: Vec<Row>,
    rhs: Vec<Rational>,
}

impl SparseSystem {
    pub fn new(ncols: usize) -> Self {
        SparseSystem {
            ncols,
            rows: Vec::new(),
            rhs: Vec::new(),
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    /// Adds the equation `sum entries = rhs`. Repeated columns are summed.
    pub fn push_row(&mut self, mut entries: Vec<(usize, Rational)>, rhs: Rational) {
        entries.sort_by_key(|(c, _)| *c);
        let mut row: Row = Vec::with_capacity(entries.len());
        for (c, v) in entries {
            assert!(c < self.ncols, "column {c} out of range");
            match row.last_mut() {
                Some((lc, lv)) if *lc == c => *lv += v,
                _ => row.push((c, v)),
            }
        }
        row.retain(|(_, v)| !v.is_zero());
        self.rows.push(row);
        self.rhs.push(rhs);
    }

    pub fn reduce(self) -> Rref {
        let ncols = self.ncols;
        let rhs_col = ncols;
        let mut rows: Vec<Row> = self
            .rows
            .into_iter()
            .zip(self.rhs)
            .map(|(mut r, b)| {
                if !b.is_zero() {
                    r.push((rhs_col, b));
                }
                r
            })
            .collect();
        let mut used = vec![false; rows.len()];
        let mut pivots: Vec<(usize, usize)> = Vec::new();

        for col in 0..ncols {
            let Some(p) = (0..rows.len()).find(|&i| !used[i] && entry(&rows[i], col).is_some())
            else {
                continue;
            };
            let inv = entry(&rows[p], col).unwrap().recip();
            for (_, v) in rows[p].iter_mut() {
                *v *= &inv;
            }
            let pivot_row = rows[p].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i == p {
                    continue;
                }
                if let Some(f) = entry(row, col) {
                    let f = f.clone();
                    *row = axpy(row, &f, &pivot_row);
                }
            }
            used[p] = true;
            pivots.push((col, p));
        }

        let consistent = rows
            .iter()
            .enumerate()
            .all(|(i, r)| used[i] || r.is_empty());

        let pivot_rows = pivots
            .into_iter()
            .map(|(col, p)| {
                let mut row = std::mem::take(&mut rows[p]);
                let b = match row.last() {
                    Some((c, _)) if *c == rhs_col => row.pop().unwrap().1,
                    _ => Rational::zero(),
                };
                PivotRow {
                    col,
                    entries: row,
                    rhs: b,
                }
            })
            .collect();
        Rref {
            ncols,
            pivots: pivot_rows,
            consistent,
        }
    }
}

fn entry(row: &Row, col: usize) -> Option<&Rational> {
    row.binary_search_by_key(&col, |(c, _)| *c)
        .ok()
        .map(|i| &row[i].1)
}

/// `row - f * pivot`, merged in column order.
fn axpy(row: &Row, f: &Rational, pivot: &Row) -> Row {
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < pivot.len() {
        let ci = row.get(i).map(|e| e.0).unwrap_or(usize::MAX);
        let cj = pivot.get(j).map(|e| e.0).unwrap_or(usize::MAX);
        if ci < cj {
            out.push(row[i].clone());
            i += 1;
        } else if cj < ci {
            out.push((cj, -(f * &pivot[j].1)));
            j += 1;
        } else {
            let v = &row[i].1 - f * &pivot[j].1;
            if !v.is_zero() {
                out.push((ci, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

#[derive(Debug, Clone)]
struct PivotRow {
    col: usize,
    entries: Row,
    rhs: Rational,
}

/// Reduced row-echelon form of a [`SparseSystem`].
#[derive(Debug, Clone)]
pub struct Rref {
    ncols: usize,
    pivots: Vec<PivotRow>,
    consistent: bool,
}

impl Rref {
    pub fn is_consistent(&self) -> bool {
        self.consistent
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        self.pivots.iter().map(|p| p.col).collect()
    }

    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ncols];
        for p in &self.pivots {
            is_pivot[p.col] = true;
        }
        (0..self.ncols).filter(|&c| !is_pivot[c]).collect()
    }

    /// Particular solution with all free variables zero.
    pub fn particular(&self) -> Option<Vec<Rational>> {
        if !self.consistent {
            return None;
        }
        let mut x = vec![Rational::zero(); self.ncols];
        for p in &self.pivots {
            x[p.col] = p.rhs.clone();
        }
        Some(x)
    }

    /// Nullspace basis, one sparse vector per free column, each scaled so its
    /// first nonzero entry is positive.
    pub fn nullspace_sparse(&self) -> Vec<Vec<(usize, Rational)>> {
        let free = self.free_columns();
        let mut slot = vec![usize::MAX; self.ncols];
        for (k, &f) in free.iter().enumerate() {
            slot[f] = k;
        }
        let mut vecs: Vec<Row> = free.iter().map(|&f| vec![(f, Rational::one())]).collect();
        for p in &self.pivots {
            for (c, v) in &p.entries {
                if *c != p.col {
                    vecs[slot[*c]].push((p.col, -v));
                }
            }
        }
        for v in vecs.iter_mut() {
            v.sort_by_key(|(c, _)| *c);
            if v[0].1.is_negative() {
                for (_, x) in v.iter_mut() {
                    *x = -x.clone();
                }
            }
        }
        vecs
    }

    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        self.nullspace_sparse()
            .into_iter()
            .map(|sv| {
                let mut d = vec![Rational::zero(); self.ncols];
                for (c, v) in sv {
                    d[c] = v;
                }
                d
            })
            .collect()
    }
}

/// Complete description of the solution set of `A x = b`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearSolution {
    pub particular: Vec<Rational>,
    pub nullspace: Vec<Vec<Rational>>,
}

/// Solves `A x = b` exactly. `Ok(None)` means the system is infeasible.
pub fn linear_solve_exact(
    a: &[Vec<Rational>],
    b: &[Rational],
) -> Result<Option<LinearSolution>, AlgError> {
    if a.len() != b.len() {
        return Err(AlgError::ShapeMismatch {
            rows: a.len(),
            rhs: b.len(),
        });
    }
    let ncols = a.first().map(Vec::len).unwrap_or(0);
    if let Some(bad) = a.iter().find(|r| r.len() != ncols) {
        return Err(AlgError::DimensionMismatch(ncols, bad.len()));
    }
    let mut sys = SparseSystem::new(ncols);
    for (row, rhs) in a.iter().zip(b) {
        sys.push_row(
            row.iter()
                .cloned()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .collect(),
            rhs.clone(),
        );
    }
    let rref = sys.reduce();
    Ok(rref.particular().map(|particular| LinearSolution {
        particular,
        nullspace: rref.nullspace(),
    }))
}

/// Rank of a dense rational matrix.
pub fn rank(a: &[Vec<Rational>]) -> usize {
    let ncols = a.iter().map(Vec::len).max().unwrap_or(0);
    let mut sys = SparseSystem::new(ncols);
    for row in a {
        sys.push_row(
            row.iter()
                .cloned()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .collect(),
            Rational::zero(),
        );
    }
    sys.reduce().rank()
}

/// Rank of a matrix over the field of rational functions.
pub fn rank_ratfunc(a: &[Vec<RatFunc>]) -> usize {
    let mut m: Vec<Vec<RatFunc>> = a.to_vec();
    let nrows = m.len();
    let ncols = m.iter().map(Vec::len).max().unwrap_or(0);
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..nrows).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][col].recip().expect("pivot is nonzero");
        for i in (r + 1)..nrows {
            if m[i][col].is_zero() {
                continue;
            }
            let f = &m[i][col] * &inv;
            for c in col..ncols {
                let t = &f * &m[r][c];
                m[i][c] = &m[i][c] - &t;
            }
        }
        r += 1;
        if r == nrows {
            break;
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{int, Poly};

    fn row(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn identity_system() {
        let sol = linear_solve_exact(&[row(&[1, 0]), row(&[0, 1])], &row(&[1, 2]))
            .unwrap()
            .unwrap();
        assert_eq!(sol.particular, row(&[1, 2]));
        assert!(sol.nullspace.is_empty());
    }

    #[test]
    fn underdetermined_system() {
        let sol = linear_solve_exact(&[row(&[1, 1])], &row(&[0]))
            .unwrap()
            .unwrap();
        assert_eq!(sol.particular, row(&[0, 0]));
        assert_eq!(sol.nullspace, vec![row(&[1, -1])]);
    }

    #[test]
    fn infeasible_system() {
        assert_eq!(linear_solve_exact(&[row(&[0])], &row(&[1])).unwrap(), None);
    }

    #[test]
    fn shape_errors() {
        assert!(linear_solve_exact(&[row(&[1])], &row(&[1, 2])).is_err());
        assert!(linear_solve_exact(&[row(&[1]), row(&[1, 2])], &row(&[1, 2])).is_err());
    }

    #[test]
    fn ranks() {
        assert_eq!(rank(&[row(&[1, 2]), row(&[2, 4])]), 1);
        assert_eq!(
            rank(&[row(&[1, 2, 3]), row(&[0, 1, 1]), row(&[1, 3, 4])]),
            2
        );
        let x = RatFunc::from_poly(Poly::var(1, 0));
        let one = RatFunc::one(1);
        // [[1, x], [x, x^2]] has generic rank 1
        let m = vec![vec![one.clone(), x.clone()], vec![x.clone(), &x * &x]];
        assert_eq!(rank_ratfunc(&m), 1);
        let m = vec![vec![one.clone(), x.clone()], vec![x.clone(), one]];
        assert_eq!(rank_ratfunc(&m), 2);
    }
}

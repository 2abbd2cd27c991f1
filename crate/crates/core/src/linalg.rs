//! Exact linear systems over a coefficient field: sparse incremental echelon
//! elimination, a dense fraction-free (Bareiss) alternative, and pruning of
//! blocks that cannot affect feasibility.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;

use crate::field::{Coeff, FieldSpec};

/// `rows[k] · x = rhs[k]`, each row a column-sorted sparse vector.
#[derive(Clone, Debug)]
pub struct LinearSystem {
    pub field: FieldSpec,
    pub ncols: usize,
    pub rows: Vec<Vec<(usize, Coeff)>>,
    pub rhs: Vec<Coeff>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Solution {
    Feasible(Vec<Coeff>),
    Infeasible,
}

impl Solution {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Solution::Feasible(_))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Solver {
    Sparse,
    Bareiss,
}

impl Default for Solver {
    fn default() -> Self {
        if cfg!(feature = "bareiss") {
            Solver::Bareiss
        } else {
            Solver::Sparse
        }
    }
}

impl LinearSystem {
    pub fn new(field: FieldSpec, ncols: usize) -> Self {
        LinearSystem {
            field,
            ncols,
            rows: Vec::new(),
            rhs: Vec::new(),
        }
    }

    /// Adds a row; entries may be unsorted and contain duplicates or zeros.
    pub fn push_row(&mut self, entries: Vec<(usize, Coeff)>, rhs: Coeff) {
        let mut acc: BTreeMap<usize, Coeff> = BTreeMap::new();
        for (c, v) in entries {
            assert!(c < self.ncols, "column out of range");
            let e = acc.entry(c).or_insert_with(|| self.field.zero());
            *e = self.field.add(e, &v);
        }
        self.rows.push(acc.into_iter().filter(|(_, v)| !v.is_zero()).collect());
        self.rhs.push(rhs);
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn nonzeros(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    /// Checks `x` against every row exactly.
    pub fn satisfied_by(&self, x: &[Coeff]) -> bool {
        x.len() == self.ncols
            && self.rows.iter().zip(&self.rhs).all(|(row, b)| {
                let mut s = self.field.zero();
                for (c, v) in row {
                    s = self.field.add(&s, &self.field.mul(v, &x[*c]));
                }
                s == *b
            })
    }

    /// Restricts to the connected blocks (rows linked through shared columns)
    /// that contain a nonzero right-hand side. Dropped blocks are homogeneous
    /// and solved by zero, so feasibility is unchanged.
    ///
    /// Returns the reduced system and, for each kept column, its original index.
    pub fn prune(&self) -> (LinearSystem, Vec<usize>) {
        let n = self.rows.len();
        let mut uf = UnionFind::new(n + self.ncols);
        for (r, row) in self.rows.iter().enumerate() {
            for (c, _) in row {
                uf.union(r, n + c);
            }
        }
        let mut live = vec![false; n + self.ncols];
        for r in 0..n {
            if !self.rhs[r].is_zero() {
                let root = uf.find(r);
                live[root] = true;
            }
        }
        let mut col_map = vec![usize::MAX; self.ncols];
        let mut kept_cols = Vec::new();
        for c in 0..self.ncols {
            if live[uf.find(n + c)] {
                col_map[c] = kept_cols.len();
                kept_cols.push(c);
            }
        }
        let mut out = LinearSystem::new(self.field, kept_cols.len());
        for r in 0..n {
            if live[uf.find(r)] {
                out.rows.push(self.rows[r].iter().map(|(c, v)| (col_map[*c], v.clone())).collect());
                out.rhs.push(self.rhs[r].clone());
            }
        }
        (out, kept_cols)
    }

    pub fn solve(&self) -> Solution {
        self.solve_with(Solver::default())
    }

    pub fn solve_with(&self, solver: Solver) -> Solution {
        self.solve_reporting(solver).0
    }

    /// Solves and also returns the (rows, columns) of the pruned system.
    pub fn solve_reporting(&self, solver: Solver) -> (Solution, (usize, usize)) {
        let (reduced, cols) = self.prune();
        let dims = (reduced.nrows(), reduced.ncols);
        let sol = match solver {
            Solver::Sparse => solve_sparse(&reduced),
            Solver::Bareiss => solve_bareiss(&reduced),
        };
        let sol = match sol {
            Solution::Infeasible => Solution::Infeasible,
            Solution::Feasible(xs) => {
                let mut full = vec![self.field.zero(); self.ncols];
                for (k, v) in xs.into_iter().enumerate() {
                    full[cols[k]] = v;
                }
                debug_assert!(self.satisfied_by(&full));
                Solution::Feasible(full)
            }
        };
        (sol, dims)
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }
}

type SparseRow = Vec<(usize, Coeff)>;

/// `row - factor * pivot`, both column-sorted.
fn axpy(field: FieldSpec, row: &SparseRow, factor: &Coeff, pivot: &SparseRow) -> SparseRow {
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < pivot.len() {
        let take_row = j == pivot.len() || (i < row.len() && row[i].0 < pivot[j].0);
        let take_piv = i == row.len() || (j < pivot.len() && pivot[j].0 < row[i].0);
        if take_row {
            out.push(row[i].clone());
            i += 1;
        } else if take_piv {
            out.push((pivot[j].0, field.neg(&field.mul(factor, &pivot[j].1))));
            j += 1;
        } else {
            let v = field.sub(&row[i].1, &field.mul(factor, &pivot[j].1));
            if !v.is_zero() {
                out.push((row[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Incremental row echelon form. Each pivot row is monic at its smallest
/// column; free columns are set to zero and pivots solved back.
pub fn solve_sparse(sys: &LinearSystem) -> Solution {
    let field = sys.field;
    let mut pivots: BTreeMap<usize, (SparseRow, Coeff)> = BTreeMap::new();
    let mut order: Vec<usize> = (0..sys.rows.len()).collect();
    order.sort_by_key(|&r| (sys.rows[r].len(), r));
    for r in order {
        let mut row = sys.rows[r].clone();
        let mut b = sys.rhs[r].clone();
        let mut k = 0;
        while k < row.len() {
            let col = row[k].0;
            match pivots.get(&col) {
                Some((prow, pb)) => {
                    let factor = row[k].1.clone();
                    row = axpy(field, &row, &factor, prow);
                    b = field.sub(&b, &field.mul(&factor, pb));
                    // entries before `col` are untouched and `col` itself cancelled
                }
                None => k += 1,
            }
        }
        if row.is_empty() {
            if !b.is_zero() {
                return Solution::Infeasible;
            }
            continue;
        }
        let inv = field.inv(&row[0].1).expect("nonzero pivot");
        let row: SparseRow = row.into_iter().map(|(c, v)| (c, field.mul(&v, &inv))).collect();
        let b = field.mul(&b, &inv);
        pivots.insert(row[0].0, (row, b));
    }
    let mut x = vec![field.zero(); sys.ncols];
    for (col, (row, b)) in pivots.iter().rev() {
        let mut v = b.clone();
        for (c, a) in &row[1..] {
            v = field.sub(&v, &field.mul(a, &x[*c]));
        }
        x[*col] = v;
    }
    Solution::Feasible(x)
}

/// Scales a rational row to integers (no effect over a prime field).
fn clear_denominators(field: FieldSpec, row: &mut [Coeff]) {
    if field != FieldSpec::Rationals {
        return;
    }
    let mut l = BigInt::one();
    for c in row.iter() {
        if let Some(q) = c.as_rational() {
            l = l.lcm(q.denom());
        }
    }
    if !l.is_one() {
        let s = Coeff::Q(BigRational::from_integer(l));
        for c in row.iter_mut() {
            *c = field.mul(c, &s);
        }
    }
}

/// Dense fraction-free elimination on the augmented matrix `[A | b]`.
pub fn solve_bareiss(sys: &LinearSystem) -> Solution {
    let field = sys.field;
    let n = sys.ncols;
    let mut m: Vec<Vec<Coeff>> = sys
        .rows
        .iter()
        .zip(&sys.rhs)
        .map(|(row, b)| {
            let mut dense = vec![field.zero(); n + 1];
            for (c, v) in row {
                dense[*c] = v.clone();
            }
            dense[n] = b.clone();
            clear_denominators(field, &mut dense);
            dense
        })
        .collect();
    let rows = m.len();
    let mut prev = field.one();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for col in 0..n {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..rows {
            for j in col + 1..=n {
                let num = field.sub(&field.mul(&m[r][col], &m[i][j]), &field.mul(&m[i][col], &m[r][j]));
                m[i][j] = field.div(&num, &prev).expect("nonzero pivot");
            }
            m[i][col] = field.zero();
        }
        prev = m[r][col].clone();
        pivot_cols.push(col);
        r += 1;
    }
    if m[r..].iter().any(|row| !row[n].is_zero()) {
        return Solution::Infeasible;
    }
    let mut x = vec![field.zero(); n];
    for (k, &col) in pivot_cols.iter().enumerate().rev() {
        let mut v = m[k][n].clone();
        for j in col + 1..n {
            if !m[k][j].is_zero() {
                v = field.sub(&v, &field.mul(&m[k][j], &x[j]));
            }
        }
        x[col] = field.div(&v, &m[k][col]).expect("nonzero pivot");
    }
    Solution::Feasible(x)
}

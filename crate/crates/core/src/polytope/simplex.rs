//! Dense two-phase simplex with Bland's rule over an ordered field.

use crate::scalar::OrderedField;

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome<F> {
    Optimal {
        x: Vec<F>,
        value: F,
    },
    /// `y` with `yᵀA ≤ 0` and `yᵀb > 0`, so no `x ≥ 0` solves `Ax = b`.
    Infeasible {
        farkas: Vec<F>,
    },
    Unbounded,
}

struct Tableau<F> {
    rows: Vec<Vec<F>>,
    obj: Vec<F>,
    basis: Vec<usize>,
    width: usize,
}

impl<F: OrderedField> Tableau<F> {
    fn rhs(&self) -> usize {
        self.width
    }

    fn pivot(&mut self, r: usize, j: usize) {
        let p = self.rows[r][j].clone();
        for v in self.rows[r].iter_mut() {
            *v = v.clone() / p.clone();
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[j].is_zero() {
                continue;
            }
            let f = row[j].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v = v.clone() - f.clone() * pv.clone();
                }
            }
        }
        if !self.obj[j].is_zero() {
            let f = self.obj[j].clone();
            for (v, pv) in self.obj.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v = v.clone() - f.clone() * pv.clone();
                }
            }
        }
        self.basis[r] = j;
    }

    /// Runs Bland's rule over columns `< limit`. Returns false if unbounded.
    fn optimize(&mut self, limit: usize) -> bool {
        let rhs = self.rhs();
        loop {
            let entering = (0..limit).find(|&j| self.obj[j] < F::zero());
            let Some(j) = entering else {
                return true;
            };
            let mut best: Option<(usize, F)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if row[j] > F::zero() {
                    let ratio = row[rhs].clone() / row[j].clone();
                    let better = match &best {
                        None => true,
                        Some((bi, br)) => {
                            ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi])
                        }
                    };
                    if better {
                        best = Some((i, ratio));
                    }
                }
            }
            match best {
                Some((r, _)) => self.pivot(r, j),
                None => return false,
            }
        }
    }
}

/// Maximizes `c·x` subject to `A x = b`, `x ≥ 0`.
///
/// `a` is row-major with `b.len()` rows and `c.len()` columns.
pub fn solve<F: OrderedField>(a: &[Vec<F>], b: &[F], c: &[F]) -> LpOutcome<F> {
    let m = b.len();
    let n = c.len();
    assert_eq!(a.len(), m, "row count mismatch");
    let width = n + m;

    let mut signs = Vec::with_capacity(m);
    let mut rows = Vec::with_capacity(m);
    for (i, (arow, bi)) in a.iter().zip(b).enumerate() {
        assert_eq!(arow.len(), n, "column count mismatch");
        let flip = *bi < F::zero();
        signs.push(flip);
        let mut row: Vec<F> = Vec::with_capacity(width + 1);
        for v in arow {
            row.push(if flip { -v.clone() } else { v.clone() });
        }
        for k in 0..m {
            row.push(if k == i { F::one() } else { F::zero() });
        }
        row.push(if flip { -bi.clone() } else { bi.clone() });
        rows.push(row);
    }

    // Phase 1: minimize the sum of artificials.
    let mut obj = vec![F::zero(); width + 1];
    for row in &rows {
        for j in 0..n {
            obj[j] = obj[j].clone() - row[j].clone();
        }
        obj[width] = obj[width].clone() - row[width].clone();
    }
    let mut t = Tableau {
        rows,
        obj,
        basis: (n..n + m).collect(),
        width,
    };
    t.optimize(width);

    let infeasibility = -t.obj[width].clone();
    if infeasibility > F::zero() {
        let farkas = (0..m)
            .map(|i| {
                let u = F::one() - t.obj[n + i].clone();
                if signs[i] {
                    -u
                } else {
                    u
                }
            })
            .collect();
        return LpOutcome::Infeasible { farkas };
    }

    // Drive zero-level artificials out of the basis where possible.
    for r in 0..m {
        if t.basis[r] >= n {
            if let Some(j) = (0..n).find(|&j| !t.rows[r][j].is_zero()) {
                t.pivot(r, j);
            }
        }
    }

    // Phase 2: minimize -c·x over the original columns.
    let cost = |j: usize| -> F {
        if j < n {
            -c[j].clone()
        } else {
            F::zero()
        }
    };
    let mut obj = vec![F::zero(); width + 1];
    for (j, o) in obj.iter_mut().enumerate().take(n) {
        *o = cost(j);
    }
    for (r, row) in t.rows.iter().enumerate() {
        let cb = cost(t.basis[r]);
        if cb.is_zero() {
            continue;
        }
        for j in 0..=width {
            obj[j] = obj[j].clone() - cb.clone() * row[j].clone();
        }
    }
    t.obj = obj;
    if !t.optimize(n) {
        return LpOutcome::Unbounded;
    }
    let mut x = vec![F::zero(); n];
    for (r, &bv) in t.basis.iter().enumerate() {
        if bv < n {
            x[bv] = t.rows[r][width].clone();
        }
    }
    LpOutcome::Optimal {
        x,
        value: t.obj[width].clone(),
    }
}

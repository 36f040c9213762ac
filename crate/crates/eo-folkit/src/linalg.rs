//! Dense exact linear algebra over GF(p^2): reduced echelon forms, kernels,
//! solving, and row-space intersection. Everything is small and exact,
//! so plain Gauss-Jordan is used throughout.

use crate::gf::{FqElt, Gf};

pub type Row = Vec<FqElt>;

/// Reduced row echelon form with zero rows dropped; the canonical
/// representation of a row space.
pub fn rref(gf: &Gf, rows: Vec<Row>) -> Vec<Row> {
    let mut rows = rows;
    let ncols = rows.iter().map(|r| r.len()).max().unwrap_or(0);
    let mut out: Vec<Row> = Vec::new();
    let mut pivot_cols: Vec<usize> = Vec::new();
    for col in 0..ncols {
        // find a row with a nonzero entry in this column
        let Some(idx) = rows.iter().position(|r| !r[col].is_zero()) else {
            continue;
        };
        let mut piv = rows.swap_remove(idx);
        let inv = gf.inv(piv[col]).expect("pivot nonzero");
        for x in piv.iter_mut() {
            *x = gf.mul(*x, inv);
        }
        for r in rows.iter_mut() {
            let f = r[col];
            if !f.is_zero() {
                for (x, &pv) in r.iter_mut().zip(piv.iter()) {
                    *x = gf.sub(*x, gf.mul(f, pv));
                }
            }
        }
        for r in out.iter_mut() {
            let f = r[col];
            if !f.is_zero() {
                for (x, &pv) in r.iter_mut().zip(piv.iter()) {
                    *x = gf.sub(*x, gf.mul(f, pv));
                }
            }
        }
        out.push(piv);
        pivot_cols.push(col);
        rows.retain(|r| r.iter().any(|x| !x.is_zero()));
        if rows.is_empty() {
            break;
        }
    }
    out
}

/// Pivot columns of a matrix already in reduced echelon form.
pub fn pivot_columns(rows: &[Row]) -> Vec<usize> {
    rows.iter()
        .map(|r| r.iter().position(|x| !x.is_zero()).expect("no zero rows"))
        .collect()
}

/// Reduces `v` against an RREF basis, returning the normal form of
/// v modulo the row space.
pub fn reduce(gf: &Gf, v: &Row, basis: &[Row]) -> Row {
    let mut v = v.clone();
    for row in basis {
        let pc = row.iter().position(|x| !x.is_zero()).expect("no zero rows");
        let f = v[pc];
        if !f.is_zero() {
            for (x, &bv) in v.iter_mut().zip(row.iter()) {
                *x = gf.sub(*x, gf.mul(f, bv));
            }
        }
    }
    v
}

pub fn is_zero_row(v: &Row) -> bool {
    v.iter().all(|x| x.is_zero())
}

/// Matrix-vector product with `a` given by rows: (a * x)_i = sum_j a[i][j] x[j].
pub fn mat_vec(gf: &Gf, a: &[Row], x: &Row) -> Row {
    a.iter()
        .map(|row| {
            row.iter()
                .zip(x.iter())
                .fold(FqElt::ZERO, |acc, (&aij, &xj)| gf.add(acc, gf.mul(aij, xj)))
        })
        .collect()
}

/// RREF basis of { x : a x = 0 } where `a` has `ncols` columns.
pub fn kernel(gf: &Gf, a: &[Row], ncols: usize) -> Vec<Row> {
    let reduced = rref(gf, a.to_vec());
    let pivots = pivot_columns(&reduced);
    let mut basis = Vec::new();
    for free in 0..ncols {
        if pivots.contains(&free) {
            continue;
        }
        let mut v = vec![FqElt::ZERO; ncols];
        v[free] = gf.one();
        for (row, &pc) in reduced.iter().zip(pivots.iter()) {
            v[pc] = gf.neg(row[free]);
        }
        basis.push(v);
    }
    rref(gf, basis)
}

/// A particular solution of a x = b, if one exists.
pub fn solve(gf: &Gf, a: &[Row], b: &Row) -> Option<Row> {
    let nrows = a.len();
    let ncols = if nrows == 0 { 0 } else { a[0].len() };
    let mut aug: Vec<Row> = a
        .iter()
        .zip(b.iter())
        .map(|(row, &bi)| {
            let mut r = row.clone();
            r.push(bi);
            r
        })
        .collect();
    aug = rref(gf, std::mem::take(&mut aug));
    let mut x = vec![FqElt::ZERO; ncols];
    for row in &aug {
        let pc = row.iter().position(|v| !v.is_zero()).expect("no zero rows");
        if pc == ncols {
            return None; // row 0 = 1: inconsistent
        }
        x[pc] = row[ncols];
    }
    Some(x)
}

/// RREF basis of the intersection of two row spaces inside GF(p^2)^dim.
pub fn intersect(gf: &Gf, a: &[Row], b: &[Row], dim: usize) -> Vec<Row> {
    let b_rref = rref(gf, b.to_vec());
    if a.is_empty() {
        return Vec::new();
    }
    // Coefficient vectors c with (sum_i c_i a_i) in span(b): kernel of the
    // map c -> reduce(sum c_i a_i, b), written columnwise.
    let mut cols: Vec<Row> = Vec::new();
    for gen in a {
        cols.push(reduce(gf, gen, &b_rref));
    }
    // matrix with columns cols, shape dim x |a|
    let m: Vec<Row> = (0..dim)
        .map(|r| cols.iter().map(|c| c[r]).collect())
        .collect();
    let coeffs = kernel(gf, &m, a.len());
    let gens: Vec<Row> = coeffs
        .iter()
        .map(|cs| {
            let mut v = vec![FqElt::ZERO; dim];
            for (ci, gen) in cs.iter().zip(a.iter()) {
                for (vx, &gx) in v.iter_mut().zip(gen.iter()) {
                    *vx = gf.add(*vx, gf.mul(*ci, gx));
                }
            }
            v
        })
        .collect();
    rref(gf, gens)
}

/// Identity matrix rows.
pub fn identity(gf: &Gf, dim: usize) -> Vec<Row> {
    (0..dim)
        .map(|i| {
            let mut r = vec![FqElt::ZERO; dim];
            r[i] = gf.one();
            r
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k3() -> Gf {
        Gf::new(3).unwrap()
    }

    fn row(gf: &Gf, xs: &[i64]) -> Row {
        xs.iter().map(|&x| gf.elt(x, 0)).collect()
    }

    #[test]
    fn rref_is_canonical() {
        let gf = k3();
        let a = vec![row(&gf, &[1, 2, 0]), row(&gf, &[0, 1, 1])];
        let b = vec![row(&gf, &[1, 0, 1]), row(&gf, &[0, 1, 1])];
        // same row space, scrambled generators
        let a2 = vec![
            row(&gf, &[1, 1, 2]),
            row(&gf, &[1, 2, 0]),
            row(&gf, &[1, 0, 1]),
        ];
        assert_eq!(rref(&gf, a), rref(&gf, b.clone()));
        assert_eq!(rref(&gf, a2), rref(&gf, b));
    }

    #[test]
    fn kernel_annihilates() {
        let gf = k3();
        let a = vec![row(&gf, &[1, 2, 1, 0]), row(&gf, &[0, 1, 1, 1])];
        let ker = kernel(&gf, &a, 4);
        assert_eq!(ker.len(), 2);
        for v in &ker {
            assert!(is_zero_row(&mat_vec(&gf, &a, v)));
        }
    }

    #[test]
    fn solve_finds_particular_solution() {
        let gf = k3();
        let a = vec![row(&gf, &[1, 1, 0]), row(&gf, &[0, 1, 2])];
        let b = row(&gf, &[2, 1]);
        let x = solve(&gf, &a, &b).unwrap();
        assert_eq!(mat_vec(&gf, &a, &x), b);
        // inconsistent system
        let a2 = vec![row(&gf, &[1, 0, 0]), row(&gf, &[2, 0, 0])];
        let b2 = row(&gf, &[1, 1]);
        assert!(solve(&gf, &a2, &b2).is_none());
    }

    #[test]
    fn intersect_of_planes_in_3_space() {
        let gf = k3();
        let a = vec![row(&gf, &[1, 0, 0]), row(&gf, &[0, 1, 0])];
        let b = vec![row(&gf, &[0, 1, 0]), row(&gf, &[0, 0, 1])];
        let meet = intersect(&gf, &a, &b, 3);
        assert_eq!(meet, vec![row(&gf, &[0, 1, 0])]);
    }

    #[test]
    fn kernel_dimension_theorem_over_gf9() {
        let gf = k3();
        let t = gf.t();
        let a = vec![
            vec![gf.one(), t, gf.zero()],
            vec![t, gf.mul(t, t), gf.zero()],
        ];
        // second row is t * first row, so rank 1, kernel dim 2
        let ker = kernel(&gf, &a, 3);
        assert_eq!(ker.len(), 2);
        for v in &ker {
            assert!(is_zero_row(&mat_vec(&gf, &a, v)));
        }
    }
}

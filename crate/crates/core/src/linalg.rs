//! Exact linear algebra over a [`FieldCtx`]. Matrices are row-major
//! `Vec<Vec<Fe>>`.

use crate::field::{Fe, FieldCtx};

pub type Vector = Vec<Fe>;
pub type Matrix = Vec<Vector>;

pub fn zeros(f: &FieldCtx, rows: usize, cols: usize) -> Matrix {
    vec![vec![f.zero(); cols]; rows]
}

pub fn identity(f: &FieldCtx, n: usize) -> Matrix {
    let mut m = zeros(f, n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = f.one();
    }
    m
}

/// In-place reduced row echelon form; returns pivot columns.
pub fn rref(f: &FieldCtx, m: &mut Matrix) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| !f.is_zero(&m[i][c])) else {
            continue;
        };
        m.swap(r, piv);
        let iv = f.inv(&m[r][c]).expect("pivot is nonzero");
        for x in m[r].iter_mut() {
            *x = f.mul(x, &iv);
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || f.is_zero(&row[c]) {
                continue;
            }
            let s = row[c].clone();
            axpy(f, row, &f.neg(&s), &pivot_row);
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(f: &FieldCtx, m: &Matrix) -> usize {
    let mut a = m.clone();
    rref(f, &mut a).len()
}

/// Basis of `{v : M v = 0}`.
pub fn nullspace(f: &FieldCtx, m: &Matrix, cols: usize) -> Vec<Vector> {
    let mut a = m.clone();
    let pivots = rref(f, &mut a);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![f.zero(); cols];
            v[fc] = f.one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(&a[r][fc]);
            }
            v
        })
        .collect()
}

/// `y += s * x`.
pub fn axpy(f: &FieldCtx, y: &mut [Fe], s: &Fe, x: &[Fe]) {
    if f.is_zero(s) {
        return;
    }
    let one = f.is_one(s);
    for (a, b) in y.iter_mut().zip(x) {
        if f.is_zero(b) {
            continue;
        }
        if one {
            f.add_assign(a, b);
        } else {
            f.add_assign(a, &f.mul(s, b));
        }
    }
}

pub fn mat_mul(f: &FieldCtx, a: &Matrix, b: &Matrix) -> Matrix {
    let n = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            let mut out = vec![f.zero(); n];
            for (x, brow) in row.iter().zip(b) {
                axpy(f, &mut out, x, brow);
            }
            out
        })
        .collect()
}

pub fn transpose(a: &Matrix) -> Matrix {
    let cols = a.first().map_or(0, |r| r.len());
    (0..cols).map(|c| a.iter().map(|r| r[c].clone()).collect()).collect()
}

pub fn mat_vec(f: &FieldCtx, a: &Matrix, v: &[Fe]) -> Vector {
    a.iter().map(|row| dot(f, row, v)).collect()
}

pub fn dot(f: &FieldCtx, a: &[Fe], b: &[Fe]) -> Fe {
    let mut s = f.zero();
    for (x, y) in a.iter().zip(b) {
        if !f.is_zero(x) && !f.is_zero(y) {
            f.add_assign(&mut s, &f.mul(x, y));
        }
    }
    s
}

pub fn is_zero_vec(f: &FieldCtx, v: &[Fe]) -> bool {
    v.iter().all(|x| f.is_zero(x))
}

/// A subspace kept in fully reduced echelon form, grown one vector at a time.
#[derive(Debug, Clone)]
pub struct Subspace {
    len: usize,
    rows: Vec<Vector>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn new(len: usize) -> Subspace {
        Subspace {
            len,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.len
    }

    pub fn basis(&self) -> &[Vector] {
        &self.rows
    }

    fn reduce(&self, f: &FieldCtx, v: &[Fe]) -> Vector {
        let mut w = v.to_vec();
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            if !f.is_zero(&w[c]) {
                let s = f.neg(&w[c]);
                axpy(f, &mut w, &s, row);
            }
        }
        w
    }

    /// Adds `v`; returns whether the dimension grew.
    pub fn insert(&mut self, f: &FieldCtx, v: &[Fe]) -> bool {
        let mut w = self.reduce(f, v);
        let Some(c) = w.iter().position(|x| !f.is_zero(x)) else {
            return false;
        };
        let iv = f.inv(&w[c]).expect("nonzero");
        for x in w.iter_mut() {
            *x = f.mul(x, &iv);
        }
        for row in self.rows.iter_mut() {
            if !f.is_zero(&row[c]) {
                let s = f.neg(&row[c]);
                axpy(f, row, &s, &w);
            }
        }
        let at = self.pivots.partition_point(|&p| p < c);
        self.pivots.insert(at, c);
        self.rows.insert(at, w);
        true
    }

    pub fn contains(&self, f: &FieldCtx, v: &[Fe]) -> bool {
        is_zero_vec(f, &self.reduce(f, v))
    }

    /// Coordinates of `v` in the echelon basis, if `v` lies in the span.
    pub fn coords(&self, f: &FieldCtx, v: &[Fe]) -> Option<Vector> {
        let c: Vector = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut recon = vec![f.zero(); self.len];
        for (s, row) in c.iter().zip(&self.rows) {
            axpy(f, &mut recon, s, row);
        }
        (recon == v).then_some(c)
    }

    /// Smallest subspace containing `self` and stable under every map.
    pub fn spin<F>(&mut self, f: &FieldCtx, maps: &[F])
    where
        F: Fn(&[Fe]) -> Vector,
    {
        let mut queue: Vec<Vector> = self.rows.clone();
        while let Some(v) = queue.pop() {
            for g in maps {
                let w = g(&v);
                if self.insert(f, &w) {
                    queue.push(w);
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fv(f: &FieldCtx, v: &[i64]) -> Vector {
        v.iter().map(|&x| f.from_int(x)).collect()
    }

    #[test]
    fn nullspace_is_annihilated() {
        let f = FieldCtx::new(5, 1).unwrap();
        let m = vec![fv(&f, &[1, 2, 3, 4]), fv(&f, &[2, 4, 1, 3]), fv(&f, &[3, 1, 4, 2])];
        let ns = nullspace(&f, &m, 4);
        assert_eq!(ns.len() + rank(&f, &m), 4);
        for v in &ns {
            assert!(is_zero_vec(&f, &mat_vec(&f, &m, v)));
        }
    }

    #[test]
    fn subspace_coordinates() {
        let f = FieldCtx::new(3, 2).unwrap();
        let a = f.from_encoding(5);
        let b = f.from_encoding(7);
        let v1 = vec![f.one(), a.clone(), f.zero()];
        let v2 = vec![f.zero(), b.clone(), f.one()];
        let mut s = Subspace::new(3);
        assert!(s.insert(&f, &v1));
        assert!(s.insert(&f, &v2));
        let mut w = v1.clone();
        axpy(&f, &mut w, &a, &v2);
        assert!(!s.insert(&f, &w));
        let c = s.coords(&f, &w).unwrap();
        let mut recon = vec![f.zero(); 3];
        for (x, row) in c.iter().zip(s.basis()) {
            axpy(&f, &mut recon, x, row);
        }
        assert_eq!(recon, w);
        assert!(s.coords(&f, &[f.zero(), f.zero(), f.zero()]).is_some());
        assert!(!s.contains(&f, &[f.one(), f.zero(), f.zero()]));
    }

    #[test]
    fn spin_cyclic_shift() {
        let f = FieldCtx::new(2, 1).unwrap();
        let shift = |v: &[Fe]| -> Vector {
            let n = v.len();
            (0..n).map(|i| v[(i + n - 1) % n].clone()).collect()
        };
        let mut s = Subspace::new(4);
        s.insert(&f, &fv(&f, &[1, 0, 0, 0]));
        s.spin(&f, &[shift]);
        assert_eq!(s.dim(), 4);
        let mut s = Subspace::new(4);
        s.insert(&f, &fv(&f, &[1, 1, 1, 1]));
        s.spin(&f, &[shift]);
        assert_eq!(s.dim(), 1);
    }
}

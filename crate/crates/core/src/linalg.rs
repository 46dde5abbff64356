//! Exact linear algebra: sparse vectors, an incremental echelon form with
//! optional combination tracking, and small dense matrices.

use std::collections::BTreeMap;
use std::fmt;

use crate::scalar::Scalar;

pub type SparseVec = BTreeMap<usize, Scalar>;

/// `y += a * x`, dropping cancelled entries.
pub fn axpy(y: &mut SparseVec, a: &Scalar, x: &SparseVec) {
    if a.is_zero() {
        return;
    }
    for (k, v) in x {
        let prod = a * v;
        match y.get_mut(k) {
            Some(entry) => {
                *entry += &prod;
                if entry.is_zero() {
                    y.remove(k);
                }
            }
            None => {
                if !prod.is_zero() {
                    y.insert(*k, prod);
                }
            }
        }
    }
}

pub fn scaled(x: &SparseVec, a: &Scalar) -> SparseVec {
    if a.is_zero() {
        return SparseVec::new();
    }
    x.iter().map(|(k, v)| (*k, v * a)).collect()
}

pub fn add_entry(y: &mut SparseVec, k: usize, a: &Scalar) {
    if a.is_zero() {
        return;
    }
    let entry = y.entry(k).or_insert_with(Scalar::zero);
    *entry += a;
    if entry.is_zero() {
        y.remove(&k);
    }
}

#[derive(Clone, Debug)]
struct EchelonRow {
    vec: SparseVec,
    combo: SparseVec,
}

/// Row echelon form keyed by the largest column of each row.
///
/// Rows are normalized to leading coefficient one. `reduce` is a full
/// reduction: the result has zero entries at every pivot column, so it is a
/// canonical representative modulo the row space.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: Vec<EchelonRow>,
    pivots: BTreeMap<usize, usize>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivots.keys().copied()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivots.contains_key(&col)
    }

    /// Reduces `v` in place; returns the combination of inserted
    /// generators that was subtracted.
    pub fn reduce_tracked(&self, v: &mut SparseVec) -> SparseVec {
        let mut combo = SparseVec::new();
        let mut cursor: Option<usize> = None;
        loop {
            let next = match cursor {
                None => v.keys().next_back().copied(),
                Some(c) => v.range(..c).next_back().map(|(k, _)| *k),
            };
            let Some(col) = next else { break };
            cursor = Some(col);
            if let Some(&r) = self.pivots.get(&col) {
                let coef = v[&col].clone();
                let row = &self.rows[r];
                axpy(v, &-&coef, &row.vec);
                axpy(&mut combo, &coef, &row.combo);
            }
        }
        combo
    }

    pub fn reduce(&self, v: &mut SparseVec) {
        let mut cursor: Option<usize> = None;
        loop {
            let next = match cursor {
                None => v.keys().next_back().copied(),
                Some(c) => v.range(..c).next_back().map(|(k, _)| *k),
            };
            let Some(col) = next else { break };
            cursor = Some(col);
            if let Some(&r) = self.pivots.get(&col) {
                let coef = v[&col].clone();
                axpy(v, &-&coef, &self.rows[r].vec);
            }
        }
    }

    pub fn reduced(&self, v: &SparseVec) -> SparseVec {
        let mut w = v.clone();
        self.reduce(&mut w);
        w
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduced(v).is_empty()
    }

    /// Inserts `v`; returns the new pivot column if `v` was independent.
    pub fn insert(&mut self, v: SparseVec) -> Option<usize> {
        self.insert_tracked(v, usize::MAX)
    }

    /// Inserts generator number `id`, tracking combinations. Ids equal to
    /// `usize::MAX` are not tracked.
    pub fn insert_tracked(&mut self, mut v: SparseVec, id: usize) -> Option<usize> {
        let mut combo = SparseVec::new();
        if id != usize::MAX {
            combo.insert(id, Scalar::one());
        }
        let sub = self.reduce_tracked(&mut v);
        axpy(&mut combo, &-Scalar::one(), &sub);
        let (&pivot, lead) = v.iter().next_back()?;
        let inv = lead.inv();
        let vec = scaled(&v, &inv);
        let combo = scaled(&combo, &inv);
        self.pivots.insert(pivot, self.rows.len());
        self.rows.push(EchelonRow { vec, combo });
        Some(pivot)
    }

    /// Expresses `v` as a combination of tracked generators, if it lies in
    /// the row space.
    pub fn solve(&self, v: &SparseVec) -> Option<SparseVec> {
        let mut w = v.clone();
        let combo = self.reduce_tracked(&mut w);
        w.is_empty().then_some(combo)
    }

    /// Rows in fully reduced form, keyed by pivot.
    pub fn reduced_rows(&self) -> BTreeMap<usize, SparseVec> {
        let mut out: BTreeMap<usize, SparseVec> = BTreeMap::new();
        for (&p, &r) in &self.pivots {
            let mut row = self.rows[r].vec.clone();
            let lower: Vec<usize> = row.range(..p).map(|(k, _)| *k).filter(|k| out.contains_key(k)).collect();
            for k in lower.into_iter().rev() {
                if let Some(c) = row.get(&k).cloned() {
                    axpy(&mut row, &-c, &out[&k]);
                }
            }
            out.insert(p, row);
        }
        out
    }

    pub fn basis(&self) -> Vec<SparseVec> {
        self.reduced_rows().into_values().collect()
    }
}

/// Basis of `{x : row · x = 0 for every row}` in `ncols` unknowns.
pub fn nullspace(rows: &[SparseVec], ncols: usize) -> Vec<SparseVec> {
    let mut ech = Echelon::new();
    for r in rows {
        ech.insert(r.clone());
    }
    let reduced = ech.reduced_rows();
    let mut out = Vec::new();
    for f in 0..ncols {
        if reduced.contains_key(&f) {
            continue;
        }
        let mut x = SparseVec::new();
        x.insert(f, Scalar::one());
        for (p, row) in &reduced {
            if let Some(c) = row.get(&f) {
                x.insert(*p, -c);
            }
        }
        out.push(x);
    }
    out
}

/// Rank of a list of sparse vectors.
pub fn rank_of(vectors: &[SparseVec]) -> usize {
    let mut ech = Echelon::new();
    for v in vectors {
        ech.insert(v.clone());
    }
    ech.rank()
}

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "  {}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>, cols: usize) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols);
            data.extend(r);
        }
        Matrix { rows: n, cols, data }
    }

    /// Matrix whose columns are the given coordinate vectors.
    pub fn from_columns(columns: &[Vec<Scalar>], rows: usize) -> Self {
        let mut m = Matrix::zeros(rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            for (r, v) in col.iter().enumerate() {
                m.set(r, c, v.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn row_sparse(&self, r: usize) -> SparseVec {
        (0..self.cols).filter(|&c| !self.get(r, c).is_zero()).map(|c| (c, self.get(r, c).clone())).collect()
    }

    pub fn column_sparse(&self, c: usize) -> SparseVec {
        (0..self.rows).filter(|&r| !self.get(r, c).is_zero()).map(|r| (r, self.get(r, c).clone())).collect()
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * other.cols + j;
                    out.data[idx] += &(a * b);
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| {
                let mut acc = Scalar::zero();
                for c in 0..self.cols {
                    if !v[c].is_zero() && !self.get(r, c).is_zero() {
                        acc += &(self.get(r, c) * &v[c]);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect() }
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * s).collect() }
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c).clone());
            }
        }
        out
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(self.rows + other.rows, self.cols + other.cols);
        out.paste(0, 0, self);
        out.paste(self.rows, self.cols, other);
        out
    }

    pub fn paste(&mut self, r0: usize, c0: usize, block: &Matrix) {
        for r in 0..block.rows {
            for c in 0..block.cols {
                self.set(r0 + r, c0 + c, block.get(r, c).clone());
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        let mut out = Matrix::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                out.set(r, c, self.get(r0 + r, c0 + c).clone());
            }
        }
        out
    }

    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        let mut out = Matrix::zeros(self.rows, self.cols + other.cols);
        out.paste(0, 0, self);
        out.paste(0, self.cols, other);
        out
    }

    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut out = Matrix::zeros(self.rows + other.rows, self.cols);
        out.paste(0, 0, self);
        out.paste(self.rows, 0, other);
        out
    }

    pub fn rank(&self) -> usize {
        let rows: Vec<SparseVec> = (0..self.rows).map(|r| self.row_sparse(r)).collect();
        rank_of(&rows)
    }

    /// Basis of the right kernel `{x : M x = 0}`.
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        let rows: Vec<SparseVec> = (0..self.rows).map(|r| self.row_sparse(r)).collect();
        nullspace(&rows, self.cols).into_iter().map(|v| densify(&v, self.cols)).collect()
    }

    /// Basis of the column space, as an echelon over row indices.
    pub fn column_space(&self) -> Echelon {
        let mut ech = Echelon::new();
        for c in 0..self.cols {
            ech.insert(self.column_sparse(c));
        }
        ech
    }

    /// Some `x` with `M x = b`.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.rows);
        let mut ech = Echelon::new();
        for c in 0..self.cols {
            ech.insert_tracked(self.column_sparse(c), c);
        }
        let target: SparseVec = b.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(i, v)| (i, v.clone())).collect();
        let combo = ech.solve(&target)?;
        Some(densify(&combo, self.cols))
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut cols = Vec::with_capacity(n);
        for i in 0..n {
            let mut e = vec![Scalar::zero(); n];
            e[i] = Scalar::one();
            cols.push(self.solve(&e)?);
        }
        Some(Matrix::from_columns(&cols, n))
    }

    pub fn pow(&self, k: usize) -> Matrix {
        let mut acc = Matrix::identity(self.rows);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn trace(&self) -> Scalar {
        let mut acc = Scalar::zero();
        for i in 0..self.rows.min(self.cols) {
            acc += self.get(i, i);
        }
        acc
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    /// Characteristic polynomial `det(t I - M)`, coefficients from the
    /// constant term up, by the division-free Berkowitz recursion.
    pub fn char_poly(&self) -> Vec<Scalar> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        // p holds coefficients of det(tI - M_k) with highest degree first.
        let mut p: Vec<Scalar> = vec![Scalar::one()];
        for k in 0..n {
            // M_{k+1} leading principal submatrix; a = M[k][k], R = row k (0..k), C = column k (0..k), A = M_k
            let a = self.get(k, k).clone();
            // Toeplitz column: [1, -a, -R C, -R A C, ..., -R A^{k-1} C]
            let mut t = vec![Scalar::one(), -&a];
            let mut vcol: Vec<Scalar> = (0..k).map(|i| self.get(i, k).clone()).collect();
            for _ in 0..k {
                let mut dot = Scalar::zero();
                for i in 0..k {
                    dot += &(self.get(k, i) * &vcol[i]);
                }
                t.push(-dot);
                let next: Vec<Scalar> = (0..k)
                    .map(|i| {
                        let mut acc = Scalar::zero();
                        for j in 0..k {
                            acc += &(self.get(i, j) * &vcol[j]);
                        }
                        acc
                    })
                    .collect();
                vcol = next;
            }
            // new p = T * p where T is (k+2)x(k+1) lower Toeplitz built from t
            let mut q = vec![Scalar::zero(); k + 2];
            for (i, qi) in q.iter_mut().enumerate() {
                for (j, pj) in p.iter().enumerate() {
                    if i >= j && i - j < t.len() {
                        *qi += &(&t[i - j] * pj);
                    }
                }
            }
            p = q;
        }
        p.reverse();
        p
    }
}

pub fn densify(v: &SparseVec, n: usize) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); n];
    for (k, x) in v {
        out[*k] = x.clone();
    }
    out
}

pub fn sparsify(v: &[Scalar]) -> SparseVec {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Scalar {
        Scalar::from(n)
    }

    fn m(rows: &[&[i64]]) -> Matrix {
        let cols = rows[0].len();
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect(), cols)
    }

    #[test]
    fn kernel_and_rank() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(a.rank(), 2);
        let ker = a.kernel();
        assert_eq!(ker.len(), 1);
        assert!(a.apply(&ker[0]).iter().all(Scalar::is_zero));
    }

    #[test]
    fn solve_and_inverse() {
        let a = m(&[&[2, 1], &[1, 1]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Matrix::identity(2));
        let x = a.solve(&[q(3), q(2)]).unwrap();
        assert_eq!(x, vec![q(1), q(1)]);
        let sing = m(&[&[1, 1], &[1, 1]]);
        assert!(sing.solve(&[q(1), q(0)]).is_none());
    }

    #[test]
    fn echelon_reduction_is_canonical() {
        let mut e = Echelon::new();
        e.insert(sparsify(&[q(1), q(1), q(0)]));
        e.insert(sparsify(&[q(0), q(1), q(1)]));
        let a = e.reduced(&sparsify(&[q(5), q(0), q(0)]));
        let b = e.reduced(&sparsify(&[q(5), q(0), q(0)]).into_iter().chain([]).collect());
        assert_eq!(a, b);
        assert!(e.contains(&sparsify(&[q(1), q(2), q(1)])));
        assert!(!e.contains(&sparsify(&[q(1), q(0), q(0)])));
    }

    #[test]
    fn tracked_solve() {
        let mut e = Echelon::new();
        e.insert_tracked(sparsify(&[q(1), q(1)]), 0);
        e.insert_tracked(sparsify(&[q(1), q(-1)]), 1);
        let combo = e.solve(&sparsify(&[q(2), q(0)])).unwrap();
        assert_eq!(densify(&combo, 2), vec![q(1), q(1)]);
    }

    #[test]
    fn char_poly_of_companion() {
        // t^2 - 3t + 2
        let a = m(&[&[0, -2], &[1, 3]]);
        assert_eq!(a.char_poly(), vec![q(2), q(-3), q(1)]);
        let n = m(&[&[1, 1, 0], &[0, 1, 1], &[0, 0, 1]]);
        assert_eq!(n.char_poly(), vec![q(-1), q(3), q(-3), q(1)]);
    }
}

//! Integer linear algebra: Hermite-style echelon forms, Smith normal form,
//! lattice kernels and the Z-module spanned by a Hilbert basis.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::ExponentVector;

/// Dense integer matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = Self::zeros(size, size);
        for i in 0..size {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Builds from small integer rows. All rows must have equal length.
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let big = rows
            .iter()
            .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
            .collect();
        Self::from_big_rows(rows.len(), cols, big)
    }

    pub fn from_big_rows(rows: usize, cols: usize, data: Vec<Vec<BigInt>>) -> Self {
        assert_eq!(data.len(), rows, "row count mismatch");
        let mut entries = Vec::with_capacity(rows * cols);
        for row in data {
            assert_eq!(row.len(), cols, "ragged rows");
            entries.extend(row);
        }
        IntMatrix {
            rows,
            cols,
            entries,
        }
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<BigInt>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (i, v) in col.iter().enumerate() {
                m[(i, j)] = v.clone();
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

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_i64_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(|v| i64::try_from(v).expect("entry fits in i64"))
                    .collect()
            })
            .collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * &other[(k, j)];
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols, "dimension mismatch");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// `A·v` for a nonnegative exponent vector.
    pub fn mul_exponents(&self, v: &[u32]) -> Vec<BigInt> {
        let big: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
        self.mul_vec(&big)
    }

    pub fn annihilates(&self, v: &[u32]) -> bool {
        self.mul_exponents(v).iter().all(Zero::is_zero)
    }

    /// Multiplies every entry by `factor`.
    pub fn scaled(&self, factor: &BigInt) -> Self {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|v| v * factor).collect(),
        }
    }

    /// Columns reordered so that new column `j` is old column `perm[j]`.
    pub fn permute_columns(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.cols);
        let cols: Vec<Vec<BigInt>> = perm.iter().map(|&j| self.column(j)).collect();
        Self::from_columns(self.rows, &cols)
    }

    /// Prepends `column` as a new first column.
    pub fn with_leading_column(&self, column: &[BigInt]) -> Self {
        let mut cols = vec![column.to_vec()];
        cols.extend((0..self.cols).map(|j| self.column(j)));
        Self::from_columns(self.rows, &cols)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[target] += factor * row[source]
    fn add_row_multiple(&mut self, target: usize, source: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let delta = factor * &self[(source, j)];
            self[(target, j)] += delta;
        }
    }

    fn add_col_multiple(&mut self, target: usize, source: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let delta = factor * &self[(i, source)];
            self[(i, target)] += delta;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -std::mem::take(&mut self[(i, j)]);
            self[(i, j)] = v;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;

    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self
            .entries
            .iter()
            .map(|v| v.to_string().len())
            .max()
            .unwrap_or(1);
        for i in 0..self.rows {
            f.write_str("[")?;
            for (j, v) in self.row(i).iter().enumerate() {
                if j > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{v:>width$}")?;
            }
            f.write_str("]")?;
            if i + 1 < self.rows {
                f.write_str("\n")?;
            }
        }
        Ok(())
    }
}

/// Linearly independent integer vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeBasis {
    pub vectors: Vec<Vec<BigInt>>,
}

impl LatticeBasis {
    pub fn rank(&self) -> usize {
        self.vectors.len()
    }
}

/// Result of [`z_echelon`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Echelon {
    /// Echelon form, same shape as the input; zero rows at the bottom.
    pub form: IntMatrix,
    /// Unimodular `U` with `form = U · input`.
    pub transform: IntMatrix,
    /// Columns holding the leading entries, ascending.
    pub pivot_cols: Vec<usize>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivot_cols.len()
    }

    /// The nonzero rows of the echelon form.
    pub fn basis_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rank()).map(|i| self.form.row(i).to_vec()).collect()
    }
}

/// Row-style Hermite normal form over Z.
///
/// Leading entries are positive and entries above each leading entry lie in
/// `[0, pivot)`. The nonzero rows are the unique reduced basis of the row
/// lattice of `m`.
pub fn z_echelon(m: &IntMatrix) -> Echelon {
    let mut form = m.clone();
    let mut transform = IntMatrix::identity(m.rows);
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for col in 0..m.cols {
        if r == m.rows {
            break;
        }
        // Euclid on the column until a single nonzero entry remains at row r.
        loop {
            let best = (r..m.rows)
                .filter(|&i| !form[(i, col)].is_zero())
                .min_by(|&a, &b| form[(a, col)].abs().cmp(&form[(b, col)].abs()));
            let Some(best) = best else { break };
            form.swap_rows(r, best);
            transform.swap_rows(r, best);
            let mut done = true;
            for i in r + 1..m.rows {
                if form[(i, col)].is_zero() {
                    continue;
                }
                let q = form[(i, col)].div_floor(&form[(r, col)]);
                form.add_row_multiple(i, r, &-&q);
                transform.add_row_multiple(i, r, &-&q);
                if !form[(i, col)].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if form[(r, col)].is_zero() {
            continue;
        }
        if form[(r, col)].is_negative() {
            form.negate_row(r);
            transform.negate_row(r);
        }
        let pivot = form[(r, col)].clone();
        for i in 0..r {
            let q = form[(i, col)].div_floor(&pivot);
            form.add_row_multiple(i, r, &-&q);
            transform.add_row_multiple(i, r, &-&q);
        }
        pivot_cols.push(col);
        r += 1;
    }
    Echelon {
        form,
        transform,
        pivot_cols,
    }
}

/// Smith normal form `U · A · V = S` with `U`, `V` unimodular.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Smith {
    pub left: IntMatrix,
    pub diagonal: IntMatrix,
    pub right: IntMatrix,
    pub rank: usize,
}

impl Smith {
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.diagonal[(i, i)].clone()).collect()
    }
}

pub fn smith_normal_form(a: &IntMatrix) -> Smith {
    let (m, n) = (a.rows, a.cols);
    let mut s = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);
    let mut t = 0;
    while t < m.min(n) {
        // Smallest nonzero entry of the trailing block becomes the pivot.
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                if s[(i, j)].is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| s[(i, j)].abs() < s[(bi, bj)].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        s.swap_rows(t, pi);
        u.swap_rows(t, pi);
        s.swap_cols(t, pj);
        v.swap_cols(t, pj);

        let mut dirty = false;
        for i in t + 1..m {
            if s[(i, t)].is_zero() {
                continue;
            }
            let q = s[(i, t)].div_floor(&s[(t, t)]);
            s.add_row_multiple(i, t, &-&q);
            u.add_row_multiple(i, t, &-&q);
            dirty |= !s[(i, t)].is_zero();
        }
        for j in t + 1..n {
            if s[(t, j)].is_zero() {
                continue;
            }
            let q = s[(t, j)].div_floor(&s[(t, t)]);
            s.add_col_multiple(j, t, &-&q);
            v.add_col_multiple(j, t, &-&q);
            dirty |= !s[(t, j)].is_zero();
        }
        if dirty {
            // A smaller remainder appeared; pick a new pivot.
            continue;
        }
        // Divisibility condition on the rest of the block.
        let offender = (t + 1..m)
            .flat_map(|i| (t + 1..n).map(move |j| (i, j)))
            .find(|&(i, j)| !(&s[(i, j)] % &s[(t, t)]).is_zero());
        if let Some((i, _)) = offender {
            s.add_row_multiple(t, i, &BigInt::one());
            u.add_row_multiple(t, i, &BigInt::one());
            continue;
        }
        if s[(t, t)].is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }
    let rank = (0..m.min(n)).take_while(|&i| !s[(i, i)].is_zero()).count();
    Smith {
        left: u,
        diagonal: s,
        right: v,
        rank,
    }
}

/// Z-basis of `{α ∈ Z^n : Aα = 0}`, read off the right transform of the
/// Smith normal form.
pub fn kernel_basis(a: &IntMatrix) -> LatticeBasis {
    let smith = smith_normal_form(a);
    let vectors = (smith.rank..a.cols)
        .map(|j| smith.right.column(j))
        .collect();
    LatticeBasis { vectors }
}

/// Some integer solution of `A x = b`, if one exists.
pub fn integer_solution(a: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(b.len(), a.rows, "dimension mismatch");
    let smith = smith_normal_form(a);
    let ub = smith.left.mul_vec(b);
    let mut y = vec![BigInt::zero(); a.cols];
    for (i, value) in ub.iter().enumerate() {
        if i < smith.rank {
            let d = &smith.diagonal[(i, i)];
            if !(value % d).is_zero() {
                return None;
            }
            y[i] = value / d;
        } else if !value.is_zero() {
            return None;
        }
    }
    Some(smith.right.mul_vec(&y))
}

/// Generators of the Z-module spanned by `vectors`: the columns of
/// `N = [h_1 … h_m]` sitting at the pivot columns of the echelon form of `N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleGenerators {
    pub generators: Vec<ExponentVector>,
    pub pivot_cols: Vec<usize>,
    pub echelon: Echelon,
}

impl ModuleGenerators {
    pub fn rank(&self) -> usize {
        self.pivot_cols.len()
    }
}

pub fn module_generators(dim: usize, vectors: &[ExponentVector]) -> ModuleGenerators {
    let columns: Vec<Vec<BigInt>> = vectors
        .iter()
        .map(|v| {
            assert_eq!(v.len(), dim, "vector length mismatch");
            v.iter().map(|&x| BigInt::from(x)).collect()
        })
        .collect();
    let n = IntMatrix::from_columns(dim, &columns);
    let echelon = z_echelon(&n);
    let generators = echelon
        .pivot_cols
        .iter()
        .map(|&j| vectors[j].clone())
        .collect();
    ModuleGenerators {
        generators,
        pivot_cols: echelon.pivot_cols.clone(),
        echelon,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RankCondition {
    pub rank_kernel: usize,
    pub rank_module: usize,
}

impl RankCondition {
    pub fn holds(&self) -> bool {
        self.rank_kernel == self.rank_module
    }
}

/// Compares the rank of the full relation lattice with the rank of the
/// module spanned by the nonnegative relations.
pub fn rank_condition(a: &IntMatrix, hilbert: &[ExponentVector]) -> RankCondition {
    RankCondition {
        rank_kernel: kernel_basis(a).rank(),
        rank_module: module_generators(a.cols, hilbert).rank(),
    }
}

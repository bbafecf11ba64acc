//! Dense matrices over `Q[z]`: minors and their gcd chain, rank, fraction-free
//! determinants, Fitting ideals and unimodularity.

use std::collections::HashMap;
use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::groebner::{buchberger, IdealBasis};
use crate::modsyz::ModuleVector;
use crate::polyring::{gcd_all, MonomialOrder, Polynomial};

/// Rectangular matrix of polynomials in a common ring, at least 1x1.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    nvars: usize,
    data: Vec<Vec<Polynomial>>,
}
/// Row and column index subsets selecting a minor.
pub type Subsets = (Vec<usize>, Vec<usize>);


/// All `i x i` minors with their gcd `d` and the reduced minors `minor / d`.
///
/// Minors are listed with row subsets outer and column subsets inner, both in
/// lexicographic order. When every minor vanishes, `d` and all reduced minors
/// are zero.
#[derive(Clone, Debug)]
pub struct MinorReport {
    pub size: usize,
    pub subsets: Vec<(Vec<usize>, Vec<usize>)>,
    pub minors: Vec<Polynomial>,
    pub d: Polynomial,
    pub reduced: Vec<Polynomial>,
}

fn exact_div(p: &Polynomial, d: &Polynomial) -> Polynomial {
    p.div_exact(d)
        .expect("nonzero divisor in the same ring")
        .expect("fraction-free step divides exactly")
}

/// Fraction-free echelon form in place. Returns the rank and the sign of the
/// row permutation used.
fn bareiss(a: &mut [Vec<Polynomial>], nvars: usize) -> (usize, i32) {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut prev = Polynomial::one(nvars);
    let mut r = 0;
    let mut sign = 1;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&p| !a[p][c].is_zero()) else {
            continue;
        };
        if p != r {
            a.swap(p, r);
            sign = -sign;
        }
        for i in r + 1..rows {
            for j in c + 1..cols {
                let t = &(&a[r][c] * &a[i][j]) - &(&a[i][c] * &a[r][j]);
                a[i][j] = exact_div(&t, &prev);
            }
            a[i][c] = Polynomial::zero(nvars);
        }
        prev = a[r][c].clone();
        r += 1;
    }
    (r, sign)
}

impl PolyMatrix {
    pub fn from_rows(data: Vec<Vec<Polynomial>>) -> Result<Self> {
        let Some(first) = data.first() else {
            return Err(Error::Shape("matrix with no rows".into()));
        };
        let cols = first.len();
        if cols == 0 {
            return Err(Error::Shape("matrix with no columns".into()));
        }
        if data.iter().any(|r| r.len() != cols) {
            return Err(Error::Shape("ragged rows".into()));
        }
        let nvars = first[0].nvars();
        if data.iter().flatten().any(|p| p.nvars() != nvars) {
            return Err(Error::Dimension("entries in different rings".into()));
        }
        Ok(PolyMatrix { nvars, data })
    }

    pub fn zeros(nvars: usize, rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "empty matrix");
        PolyMatrix {
            nvars,
            data: vec![vec![Polynomial::zero(nvars); cols]; rows],
        }
    }

    pub fn identity(nvars: usize, n: usize) -> Self {
        let mut m = Self::zeros(nvars, n, n);
        for i in 0..n {
            m.data[i][i] = Polynomial::one(nvars);
        }
        m
    }

    pub fn diag(entries: &[Polynomial]) -> Result<Self> {
        let Some(first) = entries.first() else {
            return Err(Error::Shape("empty diagonal".into()));
        };
        let mut m = Self::zeros(first.nvars(), entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            if e.nvars() != m.nvars {
                return Err(Error::Dimension("diagonal entries in different rings".into()));
            }
            m.data[i][i] = e.clone();
        }
        Ok(m)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn nrows(&self) -> usize {
        self.data.len()
    }

    pub fn ncols(&self) -> usize {
        self.data[0].len()
    }

    pub fn is_square(&self) -> bool {
        self.nrows() == self.ncols()
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        &self.data[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Polynomial) {
        assert_eq!(p.nvars(), self.nvars, "entry in a different ring");
        self.data[i][j] = p;
    }

    pub fn row(&self, i: usize) -> &[Polynomial] {
        &self.data[i]
    }

    pub fn rows(&self) -> &[Vec<Polynomial>] {
        &self.data
    }

    pub fn into_rows(self) -> Vec<Vec<Polynomial>> {
        self.data
    }

    pub fn entries(&self) -> impl Iterator<Item = &Polynomial> {
        self.data.iter().flatten()
    }

    pub fn row_vectors(&self) -> Vec<ModuleVector> {
        self.data
            .iter()
            .map(|r| ModuleVector::new(r.clone()).expect("matrix rows are valid vectors"))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries().all(Polynomial::is_zero)
    }

    pub fn transpose(&self) -> PolyMatrix {
        let data = (0..self.ncols())
            .map(|j| self.data.iter().map(|r| r[j].clone()).collect())
            .collect();
        PolyMatrix {
            nvars: self.nvars,
            data,
        }
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> PolyMatrix {
        let data = rows
            .iter()
            .map(|&i| cols.iter().map(|&j| self.data[i][j].clone()).collect())
            .collect();
        PolyMatrix {
            nvars: self.nvars,
            data,
        }
    }

    /// First `k` rows.
    pub fn top_rows(&self, k: usize) -> PolyMatrix {
        PolyMatrix {
            nvars: self.nvars,
            data: self.data[..k].to_vec(),
        }
    }

    pub fn map<F: FnMut(&Polynomial) -> Polynomial>(&self, mut f: F) -> PolyMatrix {
        PolyMatrix {
            nvars: self.nvars,
            data: self
                .data
                .iter()
                .map(|r| r.iter().map(&mut f).collect())
                .collect(),
        }
    }

    pub fn mul(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if self.ncols() != other.nrows() {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.nrows(),
                self.ncols(),
                other.nrows(),
                other.ncols()
            )));
        }
        if self.nvars != other.nvars {
            return Err(Error::Dimension("matrices in different rings".into()));
        }
        let mut out = PolyMatrix::zeros(self.nvars, self.nrows(), other.ncols());
        for i in 0..self.nrows() {
            for j in 0..other.ncols() {
                let mut acc = Polynomial::zero(self.nvars);
                for k in 0..self.ncols() {
                    if self.data[i][k].is_zero() || other.data[k][j].is_zero() {
                        continue;
                    }
                    acc = &acc + &(&self.data[i][k] * &other.data[k][j]);
                }
                out.data[i][j] = acc;
            }
        }
        Ok(out)
    }

    /// Entrywise `z_{var+1} -> f`.
    pub fn substitute(&self, var: usize, f: &Polynomial) -> Result<PolyMatrix> {
        let data = self
            .data
            .iter()
            .map(|r| r.iter().map(|p| p.substitute_var(var, f)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(PolyMatrix {
            nvars: self.nvars,
            data,
        })
    }

    /// Divides every entry of row `i` by `d`; `None` if some division is inexact.
    pub fn divide_row(&self, i: usize, d: &Polynomial) -> Result<Option<PolyMatrix>> {
        let mut out = self.clone();
        for p in out.data[i].iter_mut() {
            match p.div_exact(d)? {
                Some(q) => *p = q,
                None => return Ok(None),
            }
        }
        Ok(Some(out))
    }

    /// Rank over the fraction field.
    pub fn rank(&self) -> usize {
        let mut a = self.data.clone();
        bareiss(&mut a, self.nvars).0
    }

    pub fn determinant(&self) -> Result<Polynomial> {
        if !self.is_square() {
            return Err(Error::Shape(format!(
                "determinant of a {}x{} matrix",
                self.nrows(),
                self.ncols()
            )));
        }
        let n = self.nrows();
        let mut a = self.data.clone();
        let (r, sign) = bareiss(&mut a, self.nvars);
        if r < n {
            return Ok(Polynomial::zero(self.nvars));
        }
        let d = a[n - 1][n - 1].clone();
        Ok(if sign < 0 { -d } else { d })
    }

    /// All `i x i` minors in the fixed enumeration order, with their subsets.
    pub fn minor_list(&self, i: usize) -> Result<Vec<(Subsets, Polynomial)>> {
        let (l, m) = (self.nrows(), self.ncols());
        if i == 0 || i > l.min(m) {
            return Err(Error::Shape(format!("minor size {} for a {}x{} matrix", i, l, m)));
        }
        if m > 64 {
            return Err(Error::Shape("more than 64 columns".into()));
        }
        let mut out = Vec::new();
        for rs in (0..l).combinations(i) {
            let mut memo: HashMap<u64, Polynomial> = HashMap::new();
            for cs in (0..m).combinations(i) {
                let mask = cs.iter().fold(0u64, |acc, &c| acc | (1 << c));
                let det = self.laplace(&rs, mask, &mut memo);
                out.push(((rs.clone(), cs), det));
            }
        }
        Ok(out)
    }

    // determinant of rows rs[k..] against the columns in `mask`, where
    // k = rs.len() - popcount(mask)
    fn laplace(&self, rs: &[usize], mask: u64, memo: &mut HashMap<u64, Polynomial>) -> Polynomial {
        let size = mask.count_ones() as usize;
        if size == 0 {
            return Polynomial::one(self.nvars);
        }
        if let Some(p) = memo.get(&mask) {
            return p.clone();
        }
        let row = rs[rs.len() - size];
        let mut acc = Polynomial::zero(self.nvars);
        let mut pos = 0;
        for c in 0..64 {
            if mask & (1 << c) == 0 {
                continue;
            }
            let a = &self.data[row][c];
            if !a.is_zero() {
                let sub = self.laplace(rs, mask & !(1 << c), memo);
                if !sub.is_zero() {
                    let t = a * &sub;
                    acc = if pos % 2 == 0 { &acc + &t } else { &acc - &t };
                }
            }
            pos += 1;
        }
        memo.insert(mask, acc.clone());
        acc
    }

    pub fn minors(&self, i: usize) -> Result<MinorReport> {
        let list = self.minor_list(i)?;
        let (subsets, minors): (Vec<_>, Vec<_>) = list.into_iter().unzip();
        let d = gcd_all(self.nvars, &minors);
        let reduced = if d.is_zero() {
            minors.clone()
        } else {
            minors.iter().map(|a| exact_div(a, &d)).collect()
        };
        Ok(MinorReport {
            size: i,
            subsets,
            minors,
            d,
            reduced,
        })
    }

    /// `d_i`, the normalized gcd of the `i x i` minors; `d_0 = 1`.
    pub fn minor_gcd(&self, i: usize) -> Result<Polynomial> {
        if i == 0 {
            return Ok(Polynomial::one(self.nvars));
        }
        Ok(self.minors(i)?.d)
    }

    /// `[d_1, ..., d_k]` with `k = min(rows, cols)`.
    pub fn divisor_chain(&self) -> Result<Vec<Polynomial>> {
        (1..=self.nrows().min(self.ncols()))
            .map(|i| self.minor_gcd(i))
            .collect()
    }

    /// Reduced `r x r` minors of the first `l x r` column submatrix of rank
    /// `r = rank(self)`, scanning column subsets lexicographically (or in
    /// reverse). Empty for the zero matrix.
    pub fn column_reduced_minors_with(&self, reverse: bool) -> Result<Vec<Polynomial>> {
        let r = self.rank();
        if r == 0 {
            return Ok(Vec::new());
        }
        let all: Vec<Vec<usize>> = (0..self.ncols()).combinations(r).collect();
        let mut subsets: Box<dyn Iterator<Item = &Vec<usize>>> = if reverse {
            Box::new(all.iter().rev())
        } else {
            Box::new(all.iter())
        };
        let rows: Vec<usize> = (0..self.nrows()).collect();
        let cs = subsets
            .find(|cs| self.submatrix(&rows, cs).rank() == r)
            .expect("a rank-r matrix has r independent columns");
        Ok(self.submatrix(&rows, cs).minors(r)?.reduced)
    }

    pub fn column_reduced_minors(&self) -> Result<Vec<Polynomial>> {
        self.column_reduced_minors_with(false)
    }

    /// Mirror of [`column_reduced_minors`](Self::column_reduced_minors) on rows.
    pub fn row_reduced_minors(&self) -> Result<Vec<Polynomial>> {
        self.transpose().column_reduced_minors()
    }

    pub fn is_unimodular(&self) -> Result<bool> {
        Ok(self.determinant()?.is_unit())
    }

    /// Inverse of a unimodular matrix: adjugate over the constant determinant.
    pub fn inverse_unimodular(&self) -> Result<PolyMatrix> {
        let det = self.determinant()?;
        let Some(c) = det.constant_value().filter(|c| !num_traits::Zero::is_zero(c)) else {
            return Err(Error::NotUnimodular);
        };
        let inv_c = c.recip();
        let n = self.nrows();
        if n == 1 {
            return Ok(PolyMatrix {
                nvars: self.nvars,
                data: vec![vec![Polynomial::constant(self.nvars, inv_c)]],
            });
        }
        let mut out = PolyMatrix::zeros(self.nvars, n, n);
        for i in 0..n {
            for j in 0..n {
                let rs: Vec<usize> = (0..n).filter(|&k| k != i).collect();
                let cs: Vec<usize> = (0..n).filter(|&k| k != j).collect();
                let m = self.submatrix(&rs, &cs).determinant()?.scale(&inv_c);
                out.data[j][i] = if (i + j) % 2 == 0 { m } else { -m };
            }
        }
        Ok(out)
    }

    /// Canonical string form of every entry.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        self.data
            .iter()
            .map(|r| r.iter().map(|p| p.to_string()).collect())
            .collect()
    }
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, r) in self.data.iter().enumerate() {
            if k > 0 {
                writeln!(f)?;
            }
            write!(f, "[{}]", r.iter().join(", "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Entrywise `z1 -> f`.
pub fn substitute_matrix(f_mat: &PolyMatrix, f: &Polynomial) -> Result<PolyMatrix> {
    f_mat.substitute(0, f)
}

pub fn mul_matrix(a: &PolyMatrix, b: &PolyMatrix) -> Result<PolyMatrix> {
    a.mul(b)
}

pub fn determinant(f: &PolyMatrix) -> Result<Polynomial> {
    f.determinant()
}

/// Ideal generated by the `(l - j) x (l - j)` minors of a presentation
/// matrix `h` with `l` columns (syzygy generators as rows). `Fitt_j` is the
/// unit ideal for `j >= l` and zero when the minors are too large to exist.
pub fn fitting_ideal(h: &PolyMatrix, j: usize) -> Result<IdealBasis> {
    let n = h.nvars();
    let order = MonomialOrder::degrevlex(n);
    let l = h.ncols();
    if j >= l {
        return buchberger(&[Polynomial::one(n)], &order, false);
    }
    let size = l - j;
    if size > h.nrows() {
        return buchberger(&[], &order, false);
    }
    let minors: Vec<Polynomial> = h
        .minor_list(size)?
        .into_iter()
        .map(|(_, p)| p)
        .filter(|p| !p.is_zero())
        .collect();
    buchberger(&minors, &order, false)
}

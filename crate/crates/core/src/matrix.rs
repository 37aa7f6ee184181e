//! Dense matrices over ℚ(i) and their text format.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num::{BigInt, Integer, One, Zero};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A dense row-major matrix of [`Scalar`]s.
///
/// Shapes with zero rows or columns are allowed; they arise as factors of a
/// zero matrix and as empty blocks of a partition.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    /// The matrix unit with a single 1 at `(i, j)`, zero-based.
    pub fn unit(rows: usize, cols: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(rows, cols);
        m.set(i, j, Scalar::one());
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        ExactMatrix { rows, cols, data }
    }

    /// Panics if `data.len() != rows * cols`.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<Scalar>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count must equal rows * cols");
        ExactMatrix { rows, cols, data }
    }

    /// Builds a matrix from integer rows. Panics on ragged input.
    pub fn from_int_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend(r.iter().map(|&v| Scalar::from_int(v)));
        }
        ExactMatrix {
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn diagonal(entries: &[Scalar]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, v) in entries.iter().enumerate() {
            m.set(i, i, v.clone());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// The conjugate transpose `m*`.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    pub fn is_hermitian(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (i..self.cols).all(|j| *self.get(i, j) == self.get(j, i).conj()))
    }

    pub fn is_idempotent(&self) -> bool {
        self.is_square() && &(self * self) == self
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| v * s).collect(),
        }
    }

    pub fn trace(&self) -> Scalar {
        (0..self.rows.min(self.cols)).fold(Scalar::zero(), |acc, i| acc + self.get(i, i))
    }

    /// Rows `r0..r1`, columns `c0..c1`.
    pub fn block(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Self {
        Self::from_fn(r1 - r0, c1 - c0, |i, j| self.get(r0 + i, c0 + j).clone())
    }

    pub fn select_columns(&self, cols: &[usize]) -> Self {
        Self::from_fn(self.rows, cols.len(), |i, j| self.get(i, cols[j]).clone())
    }

    pub fn select_rows(&self, rows: &[usize]) -> Self {
        Self::from_fn(rows.len(), self.cols, |i, j| self.get(rows[i], j).clone())
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch {
                op: "hstack",
                left: self.shape(),
                right: other.shape(),
            });
        }
        Ok(Self::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                other.get(i, j - self.cols).clone()
            }
        }))
    }

    /// `[self ; other]`.
    pub fn vstack(&self, other: &Self) -> Result<Self> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                op: "vstack",
                left: self.shape(),
                right: other.shape(),
            });
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(ExactMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    /// Stacks the entries column after column into an `(rows·cols) × 1` vector.
    pub fn vectorize(&self) -> Self {
        Self::from_fn(self.rows * self.cols, 1, |k, _| {
            self.get(k % self.rows, k / self.rows).clone()
        })
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch {
                op: "multiply",
                left: self.shape(),
                right: rhs.shape(),
            });
        }
        Ok(self * rhs)
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self> {
        self.same_shape("add", rhs)?;
        Ok(self + rhs)
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self> {
        self.same_shape("subtract", rhs)?;
        Ok(self - rhs)
    }

    pub(crate) fn same_shape(&self, op: &'static str, rhs: &Self) -> Result<()> {
        if self.shape() != rhs.shape() {
            return Err(Error::DimensionMismatch {
                op,
                left: self.shape(),
                right: rhs.shape(),
            });
        }
        Ok(())
    }

    pub(crate) fn require_square(&self, op: &'static str) -> Result<()> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                op,
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok(())
    }

    /// Single-line form in the text grammar, rows separated by ` / `.
    pub fn to_inline(&self) -> String {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(Scalar::to_string)
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect::<Vec<_>>()
            .join(" / ")
    }
}

/// Common denominator of each row (`by_row`) or each column.
fn denominators(m: &ExactMatrix, by_row: bool) -> Vec<BigInt> {
    let (outer, inner) = if by_row { (m.rows, m.cols) } else { (m.cols, m.rows) };
    (0..outer)
        .map(|o| {
            (0..inner).fold(BigInt::one(), |acc, k| {
                let v = if by_row { m.get(o, k) } else { m.get(k, o) };
                if v.is_zero() {
                    acc
                } else {
                    acc.lcm(&v.denominator_lcm())
                }
            })
        })
        .collect()
}

impl<'a> Mul<&'a ExactMatrix> for &'a ExactMatrix {
    type Output = ExactMatrix;

    /// Panics on a shape mismatch; see [`ExactMatrix::checked_mul`].
    ///
    /// Rows of `self` and columns of `rhs` are scaled to Gaussian integers,
    /// so each entry is reduced once.
    fn mul(self, rhs: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        let row_den = denominators(self, true);
        let col_den = denominators(rhs, false);
        let left: Vec<(BigInt, BigInt)> = (0..self.rows * self.cols)
            .map(|p| self.data[p].scaled_parts(&row_den[p / self.cols]))
            .collect();
        let right: Vec<(BigInt, BigInt)> = (0..rhs.rows * rhs.cols)
            .map(|p| rhs.data[p].scaled_parts(&col_den[p % rhs.cols]))
            .collect();
        let mut out = ExactMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut re = BigInt::zero();
                let mut im = BigInt::zero();
                for k in 0..self.cols {
                    let (ar, ai) = &left[i * self.cols + k];
                    let (br, bi) = &right[k * rhs.cols + j];
                    if (ar.is_zero() && ai.is_zero()) || (br.is_zero() && bi.is_zero()) {
                        continue;
                    }
                    if !ai.is_zero() || !bi.is_zero() {
                        re -= ai * bi;
                        im += ar * bi;
                        im += ai * br;
                    }
                    re += ar * br;
                }
                if !re.is_zero() || !im.is_zero() {
                    out.data[i * rhs.cols + j] =
                        Scalar::from_scaled(re, im, &(&row_den[i] * &col_den[j]));
                }
            }
        }
        out
    }
}

impl<'a> Add<&'a ExactMatrix> for &'a ExactMatrix {
    type Output = ExactMatrix;
    fn add(self, rhs: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.shape(), rhs.shape(), "matrix sum shape mismatch");
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<'a> Sub<&'a ExactMatrix> for &'a ExactMatrix {
    type Output = ExactMatrix;
    fn sub(self, rhs: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.shape(), rhs.shape(), "matrix difference shape mismatch");
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &ExactMatrix {
    type Output = ExactMatrix;
    fn neg(self) -> ExactMatrix {
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| -v).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr<ExactMatrix> for ExactMatrix {
            type Output = ExactMatrix;
            fn $method(self, rhs: ExactMatrix) -> ExactMatrix {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a ExactMatrix> for ExactMatrix {
            type Output = ExactMatrix;
            fn $method(self, rhs: &ExactMatrix) -> ExactMatrix {
                (&self).$method(rhs)
            }
        }
        impl<'a> $tr<ExactMatrix> for &'a ExactMatrix {
            type Output = ExactMatrix;
            fn $method(self, rhs: ExactMatrix) -> ExactMatrix {
                self.$method(&rhs)
            }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul);

/// Parses the matrix text format: rows separated by newlines or by a
/// standalone `/`, entries separated by whitespace.
pub fn parse_matrix(text: &str) -> Result<ExactMatrix> {
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    let mut current: Vec<Scalar> = Vec::new();
    let mut width: Option<usize> = None;
    let mut row_start = (1, 1);

    let mut close_row = |current: &mut Vec<Scalar>, at: (usize, usize)| -> Result<()> {
        if current.is_empty() {
            return Ok(());
        }
        match width {
            None => width = Some(current.len()),
            Some(w) if w != current.len() => {
                return Err(Error::Parse {
                    line: at.0,
                    column: at.1,
                    message: format!("ragged rows: expected {w} entries, found {}", current.len()),
                })
            }
            Some(_) => {}
        }
        rows.push(std::mem::take(current));
        Ok(())
    };

    for (line_idx, line) in text.lines().enumerate() {
        let line_no = line_idx + 1;
        let mut chars = line.char_indices().peekable();
        while let Some(&(start, c)) = chars.peek() {
            if c.is_whitespace() {
                chars.next();
                continue;
            }
            let mut end = start;
            while let Some(&(i, c)) = chars.peek() {
                if c.is_whitespace() {
                    break;
                }
                end = i + c.len_utf8();
                chars.next();
            }
            let token = &line[start..end];
            let column = line[..start].chars().count() + 1;
            if token == "/" {
                close_row(&mut current, row_start)?;
                row_start = (line_no, column);
                continue;
            }
            if current.is_empty() {
                row_start = (line_no, column);
            }
            let value = token.parse::<Scalar>().map_err(|e| Error::Parse {
                line: line_no,
                column,
                message: e.to_string(),
            })?;
            current.push(value);
        }
        close_row(&mut current, row_start)?;
    }

    let cols = width.ok_or(Error::Parse {
        line: 1,
        column: 1,
        message: "empty matrix".into(),
    })?;
    let n = rows.len();
    Ok(ExactMatrix::from_vec(n, cols, rows.into_iter().flatten().collect()))
}

/// Multi-line form in the text grammar: one row per line, entries separated
/// by single spaces.
pub fn format_matrix(m: &ExactMatrix) -> String {
    let mut out = String::new();
    for i in 0..m.rows() {
        let line = m
            .row(i)
            .iter()
            .map(Scalar::to_string)
            .collect::<Vec<_>>()
            .join(" ");
        out.push_str(&line);
        out.push('\n');
    }
    out
}

impl FromStr for ExactMatrix {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_matrix(s)
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Pads columns for readability; still parses back.
        let cells: Vec<Vec<String>> = (0..self.rows)
            .map(|i| self.row(i).iter().map(Scalar::to_string).collect())
            .collect();
        let widths: Vec<usize> = (0..self.cols)
            .map(|j| cells.iter().map(|r| r[j].len()).max().unwrap_or(0))
            .collect();
        for (i, row) in cells.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            for (j, cell) in row.iter().enumerate() {
                if j > 0 {
                    f.write_str("  ")?;
                }
                write!(f, "{cell:>w$}", w = widths[j])?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExactMatrix {}x{} [{}]", self.rows, self.cols, self.to_inline())
    }
}

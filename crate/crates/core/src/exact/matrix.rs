use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use super::{Cyclotomic, ExactError};

/// Dense matrix over the cyclotomic numbers, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Cyclotomic>,
}

/// Outcome of solving `A x = b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solution {
    Unique(Vec<Cyclotomic>),
    /// Particular solution plus a basis of the kernel of `A`.
    Family { particular: Vec<Cyclotomic>, kernel: Vec<Vec<Cyclotomic>> },
    Inconsistent,
}

impl Solution {
    pub fn particular(&self) -> Option<&[Cyclotomic]> {
        match self {
            Solution::Unique(x) => Some(x),
            Solution::Family { particular, .. } => Some(particular),
            Solution::Inconsistent => None,
        }
    }
}

/// Reduced row echelon form together with its pivot columns.
struct Echelon {
    m: ExactMatrix,
    pivots: Vec<usize>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix { rows, cols, data: vec![Cyclotomic::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = ExactMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Cyclotomic::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Cyclotomic>>) -> Result<Self, ExactError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(ExactError::Shape(format!("ragged rows in a {r}-row matrix")));
        }
        Ok(ExactMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        ExactMatrix::from_rows(
            rows.iter().map(|r| r.iter().map(|&x| Cyclotomic::from_int(x)).collect()).collect(),
        )
        .expect("rectangular integer matrix")
    }

    pub fn from_columns(cols: &[Vec<Cyclotomic>]) -> Result<Self, ExactError> {
        let n = cols.first().map_or(0, Vec::len);
        let mut m = ExactMatrix::zeros(n, cols.len());
        for (j, col) in cols.iter().enumerate() {
            if col.len() != n {
                return Err(ExactError::Shape("ragged columns".into()));
            }
            for (i, x) in col.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[Cyclotomic] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Cyclotomic> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Cyclotomic>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Cyclotomic::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = &self[(i, j)];
                    if i == j { x.is_one() } else { x.is_zero() }
                })
            })
    }

    pub fn transpose(&self) -> ExactMatrix {
        let mut t = ExactMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn try_mul(&self, other: &ExactMatrix) -> Result<ExactMatrix, ExactError> {
        if self.cols != other.rows {
            return Err(ExactError::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = ExactMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        let t = a.try_mul(b)?;
                        out[(i, j)] = out[(i, j)].try_add(&t)?;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Cyclotomic]) -> Vec<Cyclotomic> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    pub fn add(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, s: &Cyclotomic) -> ExactMatrix {
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * s).collect(),
        }
    }

    /// Sum of diagonal entries.
    pub fn trace(&self) -> Cyclotomic {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)].clone()).sum()
    }

    /// Gauss–Jordan elimination; pivots are the first nonzero entry of each column.
    fn echelon(&self) -> Result<Echelon, ExactError> {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].try_inv()?;
            for j in c..m.cols {
                if !m[(r, j)].is_zero() {
                    m[(r, j)] = m[(r, j)].try_mul(&inv)?;
                }
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone();
                for j in c..m.cols {
                    if m[(r, j)].is_zero() {
                        continue;
                    }
                    let t = f.try_mul(&m[(r, j)])?;
                    m[(i, j)] = m[(i, j)].try_sub(&t)?;
                }
            }
            pivots.push(c);
            r += 1;
        }
        Ok(Echelon { m, pivots })
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> Result<usize, ExactError> {
        Ok(self.echelon()?.pivots.len())
    }

    /// Basis of `{x : A x = 0}`; one vector per free column.
    pub fn nullspace(&self) -> Result<Vec<Vec<Cyclotomic>>, ExactError> {
        let Echelon { m, pivots } = self.echelon()?;
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let basis = free
            .iter()
            .map(|&f| {
                let mut v = vec![Cyclotomic::zero(); self.cols];
                v[f] = Cyclotomic::one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -&m[(i, f)];
                }
                v
            })
            .collect();
        Ok(basis)
    }

    /// Solves `A x = b` exactly; every returned solution is checked by substitution.
    pub fn solve(&self, b: &[Cyclotomic]) -> Result<Solution, ExactError> {
        if b.len() != self.rows {
            return Err(ExactError::Shape(format!(
                "right-hand side has {} entries, matrix has {} rows",
                b.len(),
                self.rows
            )));
        }
        let mut aug = ExactMatrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = b[i].clone();
        }
        let Echelon { m, pivots } = aug.echelon()?;
        if pivots.last() == Some(&self.cols) {
            return Ok(Solution::Inconsistent);
        }
        let mut x = vec![Cyclotomic::zero(); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = m[(i, self.cols)].clone();
        }
        if self.mul_vec(&x) != b {
            return Err(ExactError::Internal("solution failed substitution check".into()));
        }
        if pivots.len() == self.cols {
            Ok(Solution::Unique(x))
        } else {
            Ok(Solution::Family { particular: x, kernel: self.nullspace()? })
        }
    }

    pub fn inverse(&self) -> Result<ExactMatrix, ExactError> {
        if !self.is_square() {
            return Err(ExactError::Shape("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut aug = ExactMatrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = Cyclotomic::one();
        }
        let Echelon { m, pivots } = aug.echelon()?;
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(ExactError::Singular);
        }
        let mut inv = ExactMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = m[(i, n + j)].clone();
            }
        }
        Ok(inv)
    }

    pub fn to_complex(&self) -> Vec<Vec<num_complex::Complex64>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(Cyclotomic::to_complex).collect())
            .collect()
    }
}

impl Index<(usize, usize)> for ExactMatrix {
    type Output = Cyclotomic;
    fn index(&self, (i, j): (usize, usize)) -> &Cyclotomic {
        assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ExactMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Cyclotomic {
        assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &ExactMatrix {
    type Output = ExactMatrix;
    fn mul(self, rhs: &ExactMatrix) -> ExactMatrix {
        self.try_mul(rhs).expect("matrix product")
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl serde::Serialize for ExactMatrix {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serde::Serialize::serialize(&self.to_rows(), serializer)
    }
}

impl<'de> serde::Deserialize<'de> for ExactMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let rows: Vec<Vec<Cyclotomic>> = serde::Deserialize::deserialize(deserializer)?;
        ExactMatrix::from_rows(rows).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Rational;

    fn z4() -> Cyclotomic {
        Cyclotomic::root_of_unity(1, 4)
    }

    #[test]
    fn identity_has_full_rank() {
        let m = ExactMatrix::identity(3);
        assert_eq!(m.rank().unwrap(), 3);
        assert!(m.nullspace().unwrap().is_empty());
    }

    #[test]
    fn proportional_rows_over_gaussian_integers() {
        let m = ExactMatrix::from_rows(vec![
            vec![Cyclotomic::one(), z4()],
            vec![z4(), Cyclotomic::from_int(-1)],
        ])
        .unwrap();
        assert_eq!(m.rank().unwrap(), 1);
        let ns = m.nullspace().unwrap();
        assert_eq!(ns.len(), 1);
        assert!(m.mul_vec(&ns[0]).iter().all(Cyclotomic::is_zero));
    }

    #[test]
    fn inconsistent_is_distinct_from_underdetermined() {
        let m = ExactMatrix::from_ints(&[&[1, 1], &[2, 2]]);
        let inconsistent = m.solve(&[Cyclotomic::from_int(1), Cyclotomic::from_int(3)]).unwrap();
        assert_eq!(inconsistent, Solution::Inconsistent);
        let family = m.solve(&[Cyclotomic::from_int(1), Cyclotomic::from_int(2)]).unwrap();
        match family {
            Solution::Family { particular, kernel } => {
                assert_eq!(kernel.len(), 1);
                assert_eq!(m.mul_vec(&particular), vec![Cyclotomic::from_int(1), Cyclotomic::from_int(2)]);
            }
            other => panic!("expected a family, got {other:?}"),
        }
    }

    #[test]
    fn inverse_roundtrip_and_singular() {
        let m = ExactMatrix::from_rows(vec![
            vec![Cyclotomic::from_int(2), z4()],
            vec![Cyclotomic::from(Rational::new(1, 3)), Cyclotomic::one()],
        ])
        .unwrap();
        let inv = m.inverse().unwrap();
        assert!((&m * &inv).is_identity());
        let s = ExactMatrix::from_ints(&[&[1, 2], &[2, 4]]);
        assert_eq!(s.inverse().unwrap_err(), ExactError::Singular);
    }
}

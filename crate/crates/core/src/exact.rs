//! Square matrices with exact rational entries.

use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::Permutation;

pub type Rational = BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(v: i64) -> Rational {
    BigRational::from_integer(BigInt::from(v))
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ExactMatrix {
    dim: usize,
    entries: Vec<Rational>,
}

impl ExactMatrix {
    pub fn zero(dim: usize) -> Self {
        ExactMatrix {
            dim,
            entries: vec![Rational::zero(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, |i, j| {
            if i == j {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut entries = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                entries.push(f(i, j));
            }
        }
        ExactMatrix { dim, entries }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::BadDimension {
                got: rows.iter().map(|r| r.len()).max().unwrap_or(0),
                want: format!("square {dim}x{dim}"),
            });
        }
        Ok(ExactMatrix {
            dim,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_integer_rows(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| int(x)).collect())
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.entries[i * self.dim + j] = v;
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.dim..(i + 1) * self.dim]
    }

    pub fn multiply(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        if self.dim != other.dim {
            return Err(Error::DegreeMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        let n = self.dim;
        let mut out = ExactMatrix::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * n + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> ExactMatrix {
        Self::from_fn(self.dim, |i, j| self.get(j, i).clone())
    }

    pub fn is_identity(&self) -> bool {
        *self == ExactMatrix::identity(self.dim)
    }

    /// `M v` for a column vector `v`.
    pub fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        (0..self.dim)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    /// `v M` for a row vector `v`.
    pub fn apply_row(&self, v: &[Rational]) -> Vec<Rational> {
        (0..self.dim)
            .map(|j| (0..self.dim).fold(Rational::zero(), |acc, i| acc + &v[i] * self.get(i, j)))
            .collect()
    }

    /// Determinant by fraction-exact Gaussian elimination.
    pub fn determinant(&self) -> Rational {
        let n = self.dim;
        let mut a = self.entries.clone();
        let mut det = Rational::one();
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| !a[r * n + col].is_zero()) else {
                return Rational::zero();
            };
            if pivot != col {
                for j in 0..n {
                    a.swap(pivot * n + j, col * n + j);
                }
                det = -det;
            }
            let p = a[col * n + col].clone();
            det *= &p;
            for r in col + 1..n {
                let f = &a[r * n + col] / &p;
                if f.is_zero() {
                    continue;
                }
                for j in col..n {
                    let v = &f * &a[col * n + j];
                    a[r * n + j] -= v;
                }
            }
        }
        det
    }

    /// The permutation `p` with `self = perm_matrix(p)`, if any.
    pub fn as_permutation(&self) -> Option<Permutation> {
        let (perm, signs) = self.as_signed_permutation()?;
        signs.iter().all(|&s| s == 1).then_some(perm)
    }

    /// Reads a monomial matrix with ±1 entries as (permutation, row signs):
    /// row `i` holds `signs[i]` in column `perm(i)`.
    pub fn as_signed_permutation(&self) -> Option<(Permutation, Vec<i8>)> {
        let mut images = Vec::with_capacity(self.dim);
        let mut signs = Vec::with_capacity(self.dim);
        for i in 0..self.dim {
            let mut hit = None;
            for (j, v) in self.row(i).iter().enumerate() {
                if v.is_zero() {
                    continue;
                }
                if hit.is_some() || !v.abs().is_one() {
                    return None;
                }
                hit = Some((j, if v.is_positive() { 1 } else { -1 }));
            }
            let (j, s) = hit?;
            images.push(j);
            signs.push(s);
        }
        Permutation::from_images(images).ok().map(|p| (p, signs))
    }

    /// Least common multiple of the entry denominators.
    pub fn common_denominator(&self) -> BigInt {
        use num_integer::Integer;
        self.entries
            .iter()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
    }

    pub fn to_json(&self) -> MatrixJson {
        MatrixJson {
            dim: self.dim,
            rows: (0..self.dim)
                .map(|i| self.row(i).iter().map(|x| x.to_string()).collect())
                .collect(),
        }
    }

    pub fn from_json(json: &MatrixJson) -> Result<Self> {
        let rows = json
            .rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|s| {
                        s.trim()
                            .parse::<Rational>()
                            .map_err(|e| Error::Parse(format!("{s:?}: {e}")))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let m = Self::from_rows(rows)?;
        if m.dim != json.dim {
            return Err(Error::BadDimension {
                got: m.dim,
                want: json.dim.to_string(),
            });
        }
        Ok(m)
    }
}

impl Mul for &ExactMatrix {
    type Output = ExactMatrix;

    /// Panics on a dimension mismatch.
    fn mul(self, rhs: &ExactMatrix) -> ExactMatrix {
        self.multiply(rhs).expect("matrix dimensions differ")
    }
}

/// JSON wire form: row-major rows of `"p/q"` (or `"p"`) strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub dim: usize,
    pub rows: Vec<Vec<String>>,
}

impl fmt::Display for ExactMatrix {
    /// Aligned plain-text grid.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.entries.iter().map(|x| x.to_string()).collect();
        let width = cells.iter().map(|c| c.len()).max().unwrap_or(1);
        for i in 0..self.dim {
            let line: Vec<String> = (0..self.dim)
                .map(|j| format!("{:>width$}", cells[i * self.dim + j]))
                .collect();
            writeln!(f, "[ {} ]", line.join("  "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinant_small_cases() {
        let m = ExactMatrix::from_integer_rows(&[&[2, 1], &[7, 4]]).unwrap();
        assert_eq!(m.determinant(), int(1));
        let swap = ExactMatrix::from_integer_rows(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]).unwrap();
        assert_eq!(swap.determinant(), int(-1));
        let singular = ExactMatrix::from_integer_rows(&[&[1, 2], &[2, 4]]).unwrap();
        assert!(singular.determinant().is_zero());
        let third = ExactMatrix::from_fn(3, |i, j| if i == j { rat(1, 3) } else { int(0) });
        assert_eq!(third.determinant(), rat(1, 27));
    }

    #[test]
    fn json_round_trip_and_display() {
        let m = ExactMatrix::from_fn(3, |i, j| rat(i as i64 - j as i64, 3));
        let json = m.to_json();
        assert_eq!(json.rows[0][1], "-1/3");
        assert_eq!(json.rows[2][0], "2/3");
        assert_eq!(json.rows[1][1], "0");
        let text = serde_json::to_string(&json).unwrap();
        let back: MatrixJson = serde_json::from_str(&text).unwrap();
        assert_eq!(ExactMatrix::from_json(&back).unwrap(), m);
        assert!(m.to_string().starts_with("[    0  -1/3  -2/3 ]"));
        let bad = MatrixJson {
            dim: 2,
            rows: vec![vec!["1".into(), "x".into()], vec!["0".into(), "1".into()]],
        };
        assert!(ExactMatrix::from_json(&bad).is_err());
    }

    #[test]
    fn signed_permutation_reading() {
        let m = ExactMatrix::from_integer_rows(&[&[0, -1, 0], &[-1, 0, 0], &[0, 0, 1]]).unwrap();
        let (p, s) = m.as_signed_permutation().unwrap();
        assert_eq!(p.to_string(), "(1,2)");
        assert_eq!(s, vec![-1, -1, 1]);
        assert!(m.as_permutation().is_none());
        let half = ExactMatrix::from_fn(2, |i, j| if i == j { rat(1, 2) } else { int(0) });
        assert!(half.as_signed_permutation().is_none());
    }
}

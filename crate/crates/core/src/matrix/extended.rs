use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::Mat;
use crate::scalar::Real;

/// A real number or `+∞`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Extended<T> {
    Finite(T),
    Infinite,
}

impl<T: Real> Extended<T> {
    pub fn is_infinite(self) -> bool {
        matches!(self, Extended::Infinite)
    }

    pub fn finite(self) -> Option<T> {
        match self {
            Extended::Finite(v) => Some(v),
            Extended::Infinite => None,
        }
    }

    /// `a / d` for `a > 0`, with `a/0 = ∞` and `a/∞ = 0`.
    pub fn divide(a: T, d: Extended<T>) -> Extended<T> {
        debug_assert!(a > T::zero());
        match d {
            Extended::Infinite => Extended::Finite(T::zero()),
            Extended::Finite(v) if v == T::zero() => Extended::Infinite,
            Extended::Finite(v) => Extended::Finite(a / v),
        }
    }

    pub fn add_real(self, b: T) -> Extended<T> {
        match self {
            Extended::Finite(a) => Extended::Finite(a + b),
            Extended::Infinite => Extended::Infinite,
        }
    }

    /// `self ≥ -tol`; `∞` is nonnegative.
    pub fn is_nonneg(self, tol: T) -> bool {
        match self {
            Extended::Finite(a) => a >= -tol,
            Extended::Infinite => true,
        }
    }
}

impl<T: Real> fmt::Display for Extended<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Extended::Finite(v) => write!(f, "{v}"),
            Extended::Infinite => f.write_str("inf"),
        }
    }
}

// JSON has no infinity literal; ∞ travels as the string "inf".
impl<T: Real + Serialize> Serialize for Extended<T> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Extended::Finite(v) => v.serialize(s),
            Extended::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de, T: Real + Deserialize<'de>> Deserialize<'de> for Extended<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr<T> {
            Num(T),
            Str(String),
        }
        match Repr::<T>::deserialize(d)? {
            Repr::Num(v) => Ok(Extended::Finite(v)),
            Repr::Str(s) if s == "inf" => Ok(Extended::Infinite),
            Repr::Str(s) => Err(serde::de::Error::custom(format!(
                "expected number or \"inf\", got {s:?}"
            ))),
        }
    }
}

/// Matrix over `ℝ ∪ {∞}`. Only construction, addition of a real matrix and
/// sign tests are offered.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound(
    serialize = "T: Real + Serialize",
    deserialize = "T: Real + Deserialize<'de>"
))]
pub struct ExtMat<T> {
    rows: usize,
    cols: usize,
    entries: Vec<Extended<T>>,
}

impl<T: Real> ExtMat<T> {
    pub fn from_mat(m: &Mat<T>) -> Self {
        ExtMat {
            rows: m.rows(),
            cols: m.cols(),
            entries: m.as_slice().iter().map(|&v| Extended::Finite(v)).collect(),
        }
    }

    /// Diagonal `n x n` matrix with `value` on the diagonal and zeros elsewhere.
    pub fn scalar_diagonal(n: usize, value: Extended<T>) -> Self {
        let mut entries = vec![Extended::Finite(T::zero()); n * n];
        for i in 0..n {
            entries[i * n + i] = value;
        }
        ExtMat {
            rows: n,
            cols: n,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Extended<T> {
        self.entries[i * self.cols + j]
    }

    /// Entrywise `self + m`.
    pub fn add_mat(&self, m: &Mat<T>) -> ExtMat<T> {
        assert_eq!(
            (self.rows, self.cols),
            (m.rows(), m.cols()),
            "ExtMat + Mat dimension mismatch"
        );
        ExtMat {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(m.as_slice())
                .map(|(&e, &v)| e.add_real(v))
                .collect(),
        }
    }

    /// First entry (row-major) below `-tol`, if any.
    pub fn first_negative(&self, tol: T) -> Option<(usize, usize, T)> {
        self.entries
            .iter()
            .enumerate()
            .find_map(|(idx, e)| match *e {
                Extended::Finite(v) if v < -tol => Some((idx / self.cols, idx % self.cols, v)),
                _ => None,
            })
    }

    pub fn is_nonneg(&self, tol: T) -> bool {
        self.first_negative(tol).is_none()
    }

    pub fn to_rows(&self) -> Vec<Vec<Extended<T>>> {
        self.entries.chunks(self.cols).map(<[_]>::to_vec).collect()
    }
}

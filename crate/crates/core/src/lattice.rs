//! Integer vectors for the weight lattice X (fundamental-weight coordinates)
//! and the root lattice Y (simple-root coordinates).

use std::fmt;
use std::ops::{Add, AddAssign, Index, IndexMut, Neg, Sub, SubAssign};

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

/// Inline storage for coordinate vectors; rank never exceeds 8.
pub type Coords = SmallVec<[i64; 8]>;

macro_rules! int_vector {
    ($(#[$meta:meta])* $name:ident) => {
        $(#[$meta])*
        #[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
        #[serde(transparent)]
        pub struct $name(pub Coords);

        impl $name {
            pub fn zero(n: usize) -> Self {
                Self(smallvec::smallvec![0; n])
            }

            pub fn from_slice(v: &[i64]) -> Self {
                Self(Coords::from_slice(v))
            }

            pub fn unit(n: usize, i: usize) -> Self {
                let mut v = Self::zero(n);
                v.0[i] = 1;
                v
            }

            pub fn rank(&self) -> usize {
                self.0.len()
            }

            pub fn as_slice(&self) -> &[i64] {
                &self.0
            }

            pub fn iter(&self) -> impl Iterator<Item = &i64> {
                self.0.iter()
            }

            pub fn scale(&self, k: i64) -> Self {
                Self(self.0.iter().map(|&c| c * k).collect())
            }

            pub fn is_zero(&self) -> bool {
                self.0.iter().all(|&c| c == 0)
            }

            /// Dot product with a plain coefficient vector.
            pub fn dot(&self, other: &[i64]) -> i64 {
                debug_assert_eq!(self.0.len(), other.len());
                self.0.iter().zip(other).map(|(a, b)| a * b).sum()
            }
        }

        impl Index<usize> for $name {
            type Output = i64;
            fn index(&self, i: usize) -> &i64 {
                &self.0[i]
            }
        }

        impl IndexMut<usize> for $name {
            fn index_mut(&mut self, i: usize) -> &mut i64 {
                &mut self.0[i]
            }
        }

        impl<'a> Add<&'a $name> for &'a $name {
            type Output = $name;
            fn add(self, rhs: &'a $name) -> $name {
                debug_assert_eq!(self.0.len(), rhs.0.len());
                $name(self.0.iter().zip(rhs.0.iter()).map(|(a, b)| a + b).collect())
            }
        }

        impl<'a> Sub<&'a $name> for &'a $name {
            type Output = $name;
            fn sub(self, rhs: &'a $name) -> $name {
                debug_assert_eq!(self.0.len(), rhs.0.len());
                $name(self.0.iter().zip(rhs.0.iter()).map(|(a, b)| a - b).collect())
            }
        }

        impl Add for $name {
            type Output = $name;
            fn add(self, rhs: $name) -> $name {
                &self + &rhs
            }
        }

        impl Sub for $name {
            type Output = $name;
            fn sub(self, rhs: $name) -> $name {
                &self - &rhs
            }
        }

        impl AddAssign<&$name> for $name {
            fn add_assign(&mut self, rhs: &$name) {
                for (a, b) in self.0.iter_mut().zip(rhs.0.iter()) {
                    *a += b;
                }
            }
        }

        impl SubAssign<&$name> for $name {
            fn sub_assign(&mut self, rhs: &$name) {
                for (a, b) in self.0.iter_mut().zip(rhs.0.iter()) {
                    *a -= b;
                }
            }
        }

        impl Neg for &$name {
            type Output = $name;
            fn neg(self) -> $name {
                $name(self.0.iter().map(|a| -a).collect())
            }
        }

        impl Neg for $name {
            type Output = $name;
            fn neg(self) -> $name {
                -&self
            }
        }

        impl fmt::Debug for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                fmt::Display::fmt(self, f)
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "(")?;
                for (k, c) in self.0.iter().enumerate() {
                    if k > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, ")")
            }
        }
    };
}

int_vector!(
    /// An element of the weight lattice X, stored as ι(x): the pairings
    /// ⟨x, α_i^∨⟩ with the simple coroots.
    Weight
);

int_vector!(
    /// An element Σ c_i α_i of the root lattice Y, stored by its simple-root
    /// coefficients.
    RootVec
);

impl Weight {
    /// All pairings with simple coroots are nonnegative.
    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }
}

impl RootVec {
    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    /// Sum of coefficients.
    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }
}

/// Dense square integer matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct IntMatrix {
    n: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn identity(n: usize) -> Self {
        let mut data = vec![0; n * n];
        for i in 0..n {
            data[i * n + i] = 1;
        }
        Self { n, data }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for r in rows {
            assert_eq!(r.len(), n, "matrix must be square");
            data.extend_from_slice(r);
        }
        Self { n, data }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.n + j] = v;
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.data.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = self.clone();
        for i in 0..self.n {
            for j in 0..self.n {
                t.set(i, j, self.get(j, i));
            }
        }
        t
    }

    pub fn mul(&self, rhs: &IntMatrix) -> IntMatrix {
        let n = self.n;
        let mut out = vec![0i64; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    out[i * n + j] += a * rhs.data[k * n + j];
                }
            }
        }
        IntMatrix { n, data: out }
    }

    pub fn apply(&self, v: &[i64]) -> Coords {
        let n = self.n;
        debug_assert_eq!(v.len(), n);
        (0..n)
            .map(|i| {
                self.data[i * n..(i + 1) * n]
                    .iter()
                    .zip(v)
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }
}

/// Parse a comma-separated list of integers such as `"-1,2,0"`.
pub fn parse_coords(s: &str) -> Result<Coords, String> {
    s.split(',')
        .map(|t| {
            let t = t.trim();
            t.parse::<i64>()
                .map_err(|e| format!("bad integer {t:?}: {e}"))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_and_display() {
        let a = Weight::from_slice(&[1, -2]);
        let b = Weight::from_slice(&[3, 4]);
        assert_eq!(&a + &b, Weight::from_slice(&[4, 2]));
        assert_eq!(&a - &b, Weight::from_slice(&[-2, -6]));
        assert_eq!(-&a, Weight::from_slice(&[-1, 2]));
        assert_eq!(a.to_string(), "(1,-2)");
        assert!(!a.is_dominant());
        assert!(b.is_dominant());
    }

    #[test]
    fn matrix_product_and_apply() {
        let m = IntMatrix::from_rows(&[vec![1, 2], vec![0, 1]]);
        let sq = m.mul(&m);
        assert_eq!(sq.rows(), vec![vec![1, 4], vec![0, 1]]);
        assert_eq!(m.apply(&[1, 1]).as_slice(), &[3, 1]);
        assert_eq!(m.transpose().rows(), vec![vec![1, 0], vec![2, 1]]);
    }

    #[test]
    fn coordinate_parsing() {
        assert_eq!(parse_coords("-1, 2,0").unwrap().as_slice(), &[-1, 2, 0]);
        assert!(parse_coords("1,x").is_err());
    }
}

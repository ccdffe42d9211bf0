use smallvec::SmallVec;
use std::fmt;
use std::ops::{Add, Index, IndexMut, Neg, Sub};

/// Integer lattice vector.
///
/// For simple groups the coordinates are in the fundamental-weight basis, so
/// a weight is dominant exactly when every coordinate is nonnegative. For
/// tori the coordinates are the character exponents.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Weight(pub SmallVec<[i32; 8]>);

impl Weight {
    pub fn zero(len: usize) -> Self {
        Weight(SmallVec::from_elem(0, len))
    }

    pub fn from_slice(coords: &[i32]) -> Self {
        Weight(SmallVec::from_slice(coords))
    }

    pub fn fundamental(len: usize, i: usize) -> Self {
        let mut w = Weight::zero(len);
        w.0[i] = 1;
        w
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coords(&self) -> &[i32] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    pub fn scaled(&self, m: i32) -> Self {
        Weight(self.0.iter().map(|&c| c * m).collect())
    }

    pub fn add_scaled(&self, other: &Weight, m: i32) -> Self {
        Weight(self.0.iter().zip(other.0.iter()).map(|(&a, &b)| a + m * b).collect())
    }
}

impl From<Vec<i32>> for Weight {
    fn from(v: Vec<i32>) -> Self {
        Weight(SmallVec::from_vec(v))
    }
}

impl Index<usize> for Weight {
    type Output = i32;
    fn index(&self, i: usize) -> &i32 {
        &self.0[i]
    }
}

impl IndexMut<usize> for Weight {
    fn index_mut(&mut self, i: usize) -> &mut i32 {
        &mut self.0[i]
    }
}

impl<'a> Add<&'a Weight> for &'a Weight {
    type Output = Weight;
    #[inline]
    fn add(self, rhs: &'a Weight) -> Weight {
        debug_assert_eq!(self.len(), rhs.len());
        Weight(self.0.iter().zip(rhs.0.iter()).map(|(&a, &b)| a + b).collect())
    }
}

impl<'a> Sub<&'a Weight> for &'a Weight {
    type Output = Weight;
    fn sub(self, rhs: &'a Weight) -> Weight {
        debug_assert_eq!(self.len(), rhs.len());
        Weight(self.0.iter().zip(rhs.0.iter()).map(|(&a, &b)| a - b).collect())
    }
}

impl<'a> Neg for &'a Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight(self.0.iter().map(|&c| -c).collect())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

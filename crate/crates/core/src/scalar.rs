//! Integer scalar abstraction shared by every module.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_integer::Integer;
use num_traits::{NumAssign, NumCast, PrimInt, Signed};

/// Signed machine integer usable as the coefficient ring of the engine.
///
/// Implemented for `i32`, `i64` and `i128`. All arithmetic is exact; callers
/// pick a width large enough for their moduli.
pub trait Int:
    PrimInt + Signed + Integer + NumAssign + Hash + Debug + Display + Send + Sync + 'static
{
    /// Lossless conversion of a small constant. Panics only if the constant
    /// does not fit, which never happens for the literals used internally.
    fn lit(v: i64) -> Self {
        <Self as NumCast>::from(v).expect("constant fits the scalar type")
    }

    /// Conversion to `usize` for sizes and loop bounds.
    fn to_usize_checked(self) -> Option<usize> {
        <usize as NumCast>::from(self)
    }
}

impl<T> Int for T where
    T: PrimInt + Signed + Integer + NumAssign + Hash + Debug + Display + Send + Sync + 'static
{
}

/// `0, 1, ..., n - 1`.
pub(crate) fn upto<I: Int>(n: I) -> impl Iterator<Item = I> {
    let mut next = I::zero();
    std::iter::from_fn(move || {
        if next < n {
            let v = next;
            next += I::one();
            Some(v)
        } else {
            None
        }
    })
}

/// `lo, lo + 1, ..., hi` (inclusive).
pub(crate) fn span<I: Int>(lo: I, hi: I) -> impl Iterator<Item = I> {
    let mut next = lo;
    std::iter::from_fn(move || {
        if next <= hi {
            let v = next;
            next += I::one();
            Some(v)
        } else {
            None
        }
    })
}

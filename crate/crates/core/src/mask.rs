//! Fixed-width point-set masks.
//!
//! Carriers in this crate stay small, but derived spaces (pullback
//! apexes of product groupoids) can pass 64 points, so subsets are kept
//! in a fixed four-word mask rather than a single `u64`.

use std::fmt;
use std::ops::{BitAnd, BitAndAssign, BitOr, BitOrAssign};

pub const MASK_WORDS: usize = 4;

/// Largest carrier a [`Mask`] can index.
pub const MASK_BITS: usize = MASK_WORDS * 64;

/// A subset of `0..MASK_BITS`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Mask {
    words: [u64; MASK_WORDS],
}

impl Mask {
    pub const EMPTY: Mask = Mask {
        words: [0; MASK_WORDS],
    };

    /// The singleton `{i}`.
    pub fn bit(i: usize) -> Mask {
        let mut m = Mask::EMPTY;
        m.insert(i);
        m
    }

    /// A mask from the low 64 bits; convenient for small literals.
    pub fn low(bits: u64) -> Mask {
        let mut words = [0u64; MASK_WORDS];
        words[0] = bits;
        Mask { words }
    }

    /// The full carrier `0..n`.
    pub fn full(n: usize) -> Mask {
        assert!(n <= MASK_BITS, "carrier too large for a mask");
        let mut words = [0u64; MASK_WORDS];
        for (w, word) in words.iter_mut().enumerate() {
            let lo = w * 64;
            if n >= lo + 64 {
                *word = u64::MAX;
            } else if n > lo {
                *word = (1u64 << (n - lo)) - 1;
            }
        }
        Mask { words }
    }

    pub fn get(&self, i: usize) -> bool {
        self.words[i / 64] & (1u64 << (i % 64)) != 0
    }

    pub fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1u64 << (i % 64);
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn subset_of(&self, other: &Mask) -> bool {
        self.words
            .iter()
            .zip(other.words.iter())
            .all(|(&a, &b)| a & !b == 0)
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Iterate set bits in increasing order.
    pub fn ones(&self) -> Ones {
        Ones {
            words: self.words,
            word: 0,
        }
    }
}

impl BitOr for Mask {
    type Output = Mask;
    fn bitor(mut self, rhs: Mask) -> Mask {
        self |= rhs;
        self
    }
}

impl BitOrAssign for Mask {
    fn bitor_assign(&mut self, rhs: Mask) {
        for (a, b) in self.words.iter_mut().zip(rhs.words.iter()) {
            *a |= b;
        }
    }
}

impl BitAnd for Mask {
    type Output = Mask;
    fn bitand(mut self, rhs: Mask) -> Mask {
        self &= rhs;
        self
    }
}

impl BitAndAssign for Mask {
    fn bitand_assign(&mut self, rhs: Mask) {
        for (a, b) in self.words.iter_mut().zip(rhs.words.iter()) {
            *a &= b;
        }
    }
}

pub struct Ones {
    words: [u64; MASK_WORDS],
    word: usize,
}

impl Iterator for Ones {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        while self.word < MASK_WORDS {
            let w = self.words[self.word];
            if w == 0 {
                self.word += 1;
                continue;
            }
            let bit = w.trailing_zeros() as usize;
            self.words[self.word] &= w - 1;
            return Some(self.word * 64 + bit);
        }
        None
    }
}

impl fmt::Debug for Mask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.ones().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_and_bits() {
        let f = Mask::full(70);
        assert_eq!(f.count(), 70);
        assert!(f.get(69));
        assert!(!f.get(70));
        assert_eq!(Mask::full(0), Mask::EMPTY);
    }

    #[test]
    fn ones_iterates_in_order() {
        let mut m = Mask::EMPTY;
        for i in [3usize, 64, 129, 200] {
            m.insert(i);
        }
        assert_eq!(m.ones().collect::<Vec<_>>(), vec![3, 64, 129, 200]);
    }

    #[test]
    fn subset_and_ops() {
        let a = Mask::low(0b1010);
        let b = Mask::low(0b1110);
        assert!(a.subset_of(&b));
        assert!(!b.subset_of(&a));
        assert_eq!(a | b, Mask::low(0b1110));
        assert_eq!(a & b, Mask::low(0b1010));
    }
}

//! Fixed-width bit sets over a finite carrier.

use std::fmt;

use serde::{Serialize, Serializer};

const WORD: usize = 64;

/// A subset of `0..width`, stored as packed 64-bit words.
///
/// Bits at or beyond `width` are always clear.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubsetMask {
    width: usize,
    words: Vec<u64>,
}

impl SubsetMask {
    pub fn empty(width: usize) -> Self {
        SubsetMask {
            width,
            words: vec![0; width.div_ceil(WORD)],
        }
    }

    pub fn full(width: usize) -> Self {
        let mut m = Self::empty(width);
        for (i, w) in m.words.iter_mut().enumerate() {
            let lo = i * WORD;
            let n = (width - lo).min(WORD);
            *w = if n == WORD { u64::MAX } else { (1u64 << n) - 1 };
        }
        m
    }

    pub fn singleton(width: usize, i: usize) -> Self {
        let mut m = Self::empty(width);
        m.insert(i);
        m
    }

    /// Builds a mask from indices. Panics if an index is out of range.
    pub fn from_indices<I: IntoIterator<Item = usize>>(width: usize, indices: I) -> Self {
        let mut m = Self::empty(width);
        for i in indices {
            m.insert(i);
        }
        m
    }

    /// Builds a mask from the low `width` bits of `bits`; higher bits are ignored.
    pub fn from_bits(width: usize, bits: u64) -> Self {
        let mut m = Self::empty(width);
        if width > 0 {
            m.words[0] = bits;
            m.trim();
        }
        m
    }

    /// The mask as a single word, if the carrier fits in 64 bits.
    pub fn to_bits(&self) -> Option<u64> {
        match self.words.len() {
            0 => Some(0),
            1 => Some(self.words[0]),
            _ => None,
        }
    }

    fn trim(&mut self) {
        let rem = self.width % WORD;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    #[inline]
    pub fn width(&self) -> usize {
        self.width
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        i < self.width && self.words[i / WORD] >> (i % WORD) & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        assert!(i < self.width, "index {i} out of range for width {}", self.width);
        self.words[i / WORD] |= 1 << (i % WORD);
    }

    pub fn remove(&mut self, i: usize) {
        if i < self.width {
            self.words[i / WORD] &= !(1 << (i % WORD));
        }
    }

    pub fn set(&mut self, i: usize, on: bool) {
        if on {
            self.insert(i)
        } else {
            self.remove(i)
        }
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_full(&self) -> bool {
        *self == Self::full(self.width)
    }

    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    pub fn iter(&self) -> Ones<'_> {
        Ones {
            words: &self.words,
            idx: 0,
            cur: self.words.first().copied().unwrap_or(0),
        }
    }

    fn zip_with(&self, other: &Self, f: impl Fn(u64, u64) -> u64) -> Self {
        assert_eq!(self.width, other.width, "subset width mismatch");
        let words = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(&a, &b)| f(a, b))
            .collect();
        SubsetMask {
            width: self.width,
            words,
        }
    }

    pub fn union(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a & !b)
    }

    pub fn complement(&self) -> Self {
        let mut m = SubsetMask {
            width: self.width,
            words: self.words.iter().map(|w| !w).collect(),
        };
        m.trim();
        m
    }

    pub fn union_with(&mut self, other: &Self) {
        assert_eq!(self.width, other.width, "subset width mismatch");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &Self) {
        assert_eq!(self.width, other.width, "subset width mismatch");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        assert_eq!(self.width, other.width, "subset width mismatch");
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        assert_eq!(self.width, other.width, "subset width mismatch");
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    pub fn intersects(&self, other: &Self) -> bool {
        !self.is_disjoint(other)
    }

    /// All subsets of `0..width` in increasing bit order. Requires `width < 64`.
    pub fn all(width: usize) -> impl Iterator<Item = SubsetMask> {
        assert!(width < 64, "cannot enumerate subsets of width {width}");
        (0..1u64 << width).map(move |b| SubsetMask::from_bits(width, b))
    }

    /// Nonempty subsets of `self`, via the carry-ripple trick. Requires `width <= 64`.
    pub fn nonempty_subsets(&self) -> impl Iterator<Item = SubsetMask> {
        let set = self.to_bits().expect("subset enumeration needs width <= 64");
        let width = self.width;
        let mut sub = 0u64;
        let mut done = set == 0;
        std::iter::from_fn(move || {
            if done {
                return None;
            }
            sub = sub.wrapping_sub(set) & set;
            done = sub == set;
            Some(SubsetMask::from_bits(width, sub))
        })
    }

    /// Indices rendered as `{0,2,5}`.
    pub fn to_index_string(&self) -> String {
        let parts: Vec<String> = self.iter().map(|i| i.to_string()).collect();
        format!("{{{}}}", parts.join(","))
    }

    /// Lowercase hex of the bit pattern, most significant word first.
    pub fn to_hex(&self) -> String {
        let mut s = String::from("0x");
        let mut started = false;
        for w in self.words.iter().rev() {
            if started {
                s.push_str(&format!("{w:016x}"));
            } else if *w != 0 {
                s.push_str(&format!("{w:x}"));
                started = true;
            }
        }
        if !started {
            s.push('0');
        }
        s
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Debug for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.to_index_string(), self.width)
    }
}

impl fmt::Display for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_index_string())
    }
}

impl Serialize for SubsetMask {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

pub struct Ones<'a> {
    words: &'a [u64],
    idx: usize,
    cur: u64,
}

impl Iterator for Ones<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.cur != 0 {
                let tz = self.cur.trailing_zeros() as usize;
                self.cur &= self.cur - 1;
                return Some(self.idx * WORD + tz);
            }
            self.idx += 1;
            if self.idx >= self.words.len() {
                return None;
            }
            self.cur = self.words[self.idx];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_and_complement_respect_width() {
        for w in [0, 1, 5, 63, 64, 65, 130] {
            let f = SubsetMask::full(w);
            assert_eq!(f.count(), w);
            assert!(f.complement().is_empty());
            assert_eq!(SubsetMask::empty(w).complement(), f);
        }
    }

    #[test]
    fn iter_crosses_word_boundaries() {
        let m = SubsetMask::from_indices(130, [0, 63, 64, 129]);
        assert_eq!(m.to_vec(), vec![0, 63, 64, 129]);
        assert_eq!(m.count(), 4);
    }

    #[test]
    fn nonempty_subsets_of_0x55() {
        let m = SubsetMask::from_bits(8, 0x55);
        let got: Vec<u64> = m.nonempty_subsets().map(|s| s.to_bits().unwrap()).collect();
        assert_eq!(got.len(), 15);
        assert_eq!(got[0], 1);
        assert_eq!(*got.last().unwrap(), 0x55);
        assert!(SubsetMask::empty(4).nonempty_subsets().next().is_none());
    }

    #[test]
    fn hex_rendering() {
        assert_eq!(SubsetMask::empty(3).to_hex(), "0x0");
        assert_eq!(SubsetMask::from_indices(8, [0, 2, 7]).to_hex(), "0x85");
        assert_eq!(
            SubsetMask::from_indices(70, [64, 0]).to_hex(),
            "0x10000000000000001"
        );
    }

    #[test]
    fn subset_relations() {
        let a = SubsetMask::from_indices(6, [1, 2]);
        let b = SubsetMask::from_indices(6, [1, 2, 4]);
        assert!(a.is_subset(&b));
        assert!(!b.is_subset(&a));
        assert_eq!(b.difference(&a).to_vec(), vec![4]);
        assert!(a.intersects(&b));
        assert!(a.is_disjoint(&SubsetMask::from_indices(6, [0, 5])));
    }
}

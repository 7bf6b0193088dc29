//! Fixed-width bitmasks for the enumeration core. The width is picked at
//! runtime from the family size, see [`dispatch`].

use std::hash::Hash;

pub(crate) trait Mask: Copy + Eq + Hash + std::fmt::Debug {
    fn empty() -> Self;
    fn first(m: usize) -> Self;
    fn bit(i: usize) -> Self;
    fn and(self, o: Self) -> Self;
    fn or(self, o: Self) -> Self;
    fn andnot(self, o: Self) -> Self;
    fn is_empty(self) -> bool;
    fn count(self) -> u32;
    fn lowest(self) -> Option<usize>;
    fn ones(self) -> Ones<Self> {
        Ones(self)
    }
}

pub(crate) struct Ones<M>(M);

impl<M: Mask> Iterator for Ones<M> {
    type Item = usize;
    fn next(&mut self) -> Option<usize> {
        let i = self.0.lowest()?;
        self.0 = self.0.andnot(M::bit(i));
        Some(i)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub(crate) struct Bits<const W: usize>([u64; W]);

impl<const W: usize> Mask for Bits<W> {
    fn empty() -> Self {
        Bits([0; W])
    }

    fn first(m: usize) -> Self {
        let mut b = [0u64; W];
        for (w, word) in b.iter_mut().enumerate() {
            let lo = w * 64;
            if m >= lo + 64 {
                *word = u64::MAX;
            } else if m > lo {
                *word = (1u64 << (m - lo)) - 1;
            }
        }
        Bits(b)
    }

    fn bit(i: usize) -> Self {
        let mut b = [0u64; W];
        b[i / 64] = 1u64 << (i % 64);
        Bits(b)
    }

    fn and(self, o: Self) -> Self {
        let mut b = self.0;
        for w in 0..W {
            b[w] &= o.0[w];
        }
        Bits(b)
    }

    fn or(self, o: Self) -> Self {
        let mut b = self.0;
        for w in 0..W {
            b[w] |= o.0[w];
        }
        Bits(b)
    }

    fn andnot(self, o: Self) -> Self {
        let mut b = self.0;
        for w in 0..W {
            b[w] &= !o.0[w];
        }
        Bits(b)
    }

    fn is_empty(self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    fn count(self) -> u32 {
        self.0.iter().map(|w| w.count_ones()).sum()
    }

    fn lowest(self) -> Option<usize> {
        self.0
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(k, w)| k * 64 + w.trailing_zeros() as usize)
    }
}

/// Largest family the engine accepts.
pub(crate) const MAX_WIDTH: usize = 512;

/// Runs `$body` with `$M` bound to the narrowest mask type holding `$m` bits.
macro_rules! dispatch {
    ($m:expr, $M:ident => $body:expr) => {{
        let m = $m;
        if m <= 64 {
            type $M = $crate::mask::Bits<1>;
            Ok($body)
        } else if m <= 128 {
            type $M = $crate::mask::Bits<2>;
            Ok($body)
        } else if m <= 256 {
            type $M = $crate::mask::Bits<4>;
            Ok($body)
        } else if m <= $crate::mask::MAX_WIDTH {
            type $M = $crate::mask::Bits<8>;
            Ok($body)
        } else {
            Err($crate::Error::TooLarge { what: "segment family", size: m, cap: $crate::mask::MAX_WIDTH })
        }
    }};
}
pub(crate) use dispatch;

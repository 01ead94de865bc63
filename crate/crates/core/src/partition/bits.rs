/// Fixed-length bitset used for reachable-sum dynamic programming.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bits {
    words: Vec<u64>,
    len: usize,
}

impl Bits {
    pub fn new(len: usize) -> Self {
        Bits {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    /// A set holding only `0`, the empty sum.
    pub fn with_zero(len: usize) -> Self {
        let mut bits = Bits::new(len);
        bits.set(0);
        bits
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        i < self.len && (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    /// `self |= self << shift`, dropping bits past the end.
    pub fn or_shifted_self(&mut self, shift: usize) {
        if shift == 0 || shift >= self.len {
            return;
        }
        let ws = shift / 64;
        let bs = shift % 64;
        let n = self.words.len();
        // high to low, so every source word is read before it is written
        for i in (ws..n).rev() {
            let mut v = self.words[i - ws] << bs;
            if bs > 0 && i > ws {
                v |= self.words[i - ws - 1] >> (64 - bs);
            }
            self.words[i] |= v;
        }
        self.trim();
    }

    fn trim(&mut self) {
        let extra = self.words.len() * 64 - self.len;
        if extra > 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= u64::MAX >> extra;
            }
        }
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn all(&self) -> bool {
        self.count_ones() == self.len
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn shift_or_matches_naive(len in 1usize..400, seed in proptest::collection::vec(0usize..400, 0..20), shift in 0usize..450) {
            let mut bits = Bits::new(len);
            let mut naive = vec![false; len];
            for i in seed.into_iter().filter(|&i| i < len) {
                bits.set(i);
                naive[i] = true;
            }
            bits.or_shifted_self(shift);
            let prev = naive.clone();
            if shift > 0 {
                for i in shift..len {
                    naive[i] |= prev[i - shift];
                }
            }
            for (i, &b) in naive.iter().enumerate() {
                prop_assert_eq!(bits.get(i), b, "bit {}", i);
            }
        }
    }
}

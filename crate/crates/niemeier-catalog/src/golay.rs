//! The extended binary Golay code `C24` and the extended ternary Golay
//! code `C12`, both built from bordered-circulant generator matrices and
//! validated against their weight distributions.

use std::collections::BTreeMap;

/// The extended binary Golay code: 4096 codewords stored as 24-bit masks.
#[derive(Debug, Clone)]
pub struct GolayCode {
    words: Vec<u32>,
}

impl GolayCode {
    /// Builds the code from the `[I12 | B]` generator matrix whose right
    /// half is the circulant over `{0} ∪ QR(11)` bordered by ones.
    pub fn build() -> GolayCode {
        const QR0: [usize; 6] = [0, 1, 3, 4, 5, 9];
        let mut gens: Vec<u32> = Vec::with_capacity(12);
        for i in 0..12usize {
            let mut w: u32 = 1 << i;
            if i < 11 {
                for &q in &QR0 {
                    let j = (q + i) % 11;
                    w |= 1 << (12 + j);
                }
                w |= 1 << 23;
            } else {
                for j in 0..11 {
                    w |= 1 << (12 + j);
                }
            }
            gens.push(w);
        }
        let mut words = vec![0u32];
        for g in gens {
            let mut next = Vec::with_capacity(words.len() * 2);
            for &w in &words {
                next.push(w);
                next.push(w ^ g);
            }
            words = next;
        }
        words.sort_unstable();
        let code = GolayCode { words };
        debug_assert_eq!(code.weight_distribution(), expected_binary_distribution());
        code
    }

    pub fn words(&self) -> &[u32] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn contains(&self, w: u32) -> bool {
        self.words.binary_search(&w).is_ok()
    }

    /// All codewords of the given Hamming weight, in increasing mask order.
    pub fn words_of_weight(&self, weight: u32) -> Vec<u32> {
        self.words.iter().copied().filter(|w| w.count_ones() == weight).collect()
    }

    /// Weight-8 codewords.
    pub fn octads(&self) -> Vec<u32> {
        self.words_of_weight(8)
    }

    /// Weight-12 codewords.
    pub fn dodecads(&self) -> Vec<u32> {
        self.words_of_weight(12)
    }

    pub fn weight_distribution(&self) -> BTreeMap<u32, usize> {
        let mut dist = BTreeMap::new();
        for &w in &self.words {
            *dist.entry(w.count_ones()).or_insert(0) += 1;
        }
        dist
    }
}

pub fn expected_binary_distribution() -> BTreeMap<u32, usize> {
    BTreeMap::from([(0, 1), (8, 759), (12, 2576), (16, 759), (24, 1)])
}

/// The extended ternary Golay code: 729 codewords over `F3`, length 12.
#[derive(Debug, Clone)]
pub struct TernaryGolayCode {
    words: Vec<[u8; 12]>,
}

impl TernaryGolayCode {
    /// Builds the code from the self-dual `[I6 | S]` generator matrix.
    pub fn build() -> TernaryGolayCode {
        const S: [[u8; 6]; 6] = [
            [0, 1, 1, 1, 1, 1],
            [1, 0, 1, 2, 2, 1],
            [1, 1, 0, 1, 2, 2],
            [1, 2, 1, 0, 1, 2],
            [1, 2, 2, 1, 0, 1],
            [1, 1, 2, 2, 1, 0],
        ];
        let mut gens: Vec<[u8; 12]> = Vec::with_capacity(6);
        for i in 0..6 {
            let mut g = [0u8; 12];
            g[i] = 1;
            g[6..].copy_from_slice(&S[i]);
            gens.push(g);
        }
        let mut words: Vec<[u8; 12]> = vec![[0u8; 12]];
        for g in gens {
            let mut next = Vec::with_capacity(words.len() * 3);
            for w in &words {
                for m in 0..3u8 {
                    let mut v = *w;
                    for j in 0..12 {
                        v[j] = (v[j] + m * g[j]) % 3;
                    }
                    next.push(v);
                }
            }
            words = next;
        }
        words.sort_unstable();
        words.dedup();
        let code = TernaryGolayCode { words };
        debug_assert_eq!(code.weight_distribution(), expected_ternary_distribution());
        code
    }

    pub fn words(&self) -> &[[u8; 12]] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn weight_distribution(&self) -> BTreeMap<u32, usize> {
        let mut dist = BTreeMap::new();
        for w in &self.words {
            let wt = w.iter().filter(|&&x| x != 0).count() as u32;
            *dist.entry(wt).or_insert(0) += 1;
        }
        dist
    }
}

pub fn expected_ternary_distribution() -> BTreeMap<u32, usize> {
    BTreeMap::from([(0, 1), (6, 264), (9, 440), (12, 24)])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binary_weight_distribution() {
        let code = GolayCode::build();
        assert_eq!(code.len(), 4096);
        assert_eq!(code.weight_distribution(), expected_binary_distribution());
        assert!(code.contains(0));
        assert!(code.contains(0xFF_FFFF));
    }

    #[test]
    fn binary_closed_under_complement_and_sum() {
        let code = GolayCode::build();
        for &w in code.words().iter().step_by(37) {
            assert!(code.contains(w ^ 0xFF_FFFF));
            for &v in code.words().iter().step_by(53) {
                let s = w ^ v;
                assert!(code.contains(s));
                assert!([0, 8, 12, 16, 24].contains(&s.count_ones()));
            }
        }
    }

    #[test]
    fn binary_octad_pair_intersections() {
        // In a Steiner system S(5,8,24), distinct octads meet in 0, 2, or 4
        // points; equivalently |r △ s| ∈ {8, 12, 16}.
        let code = GolayCode::build();
        let octads = code.octads();
        assert_eq!(octads.len(), 759);
        for (i, &r) in octads.iter().enumerate().step_by(97) {
            for &s in octads.iter().skip(i + 1).step_by(101) {
                assert!([0, 2, 4].contains(&(r & s).count_ones()));
            }
        }
    }

    #[test]
    fn ternary_weight_distribution_and_self_duality() {
        let code = TernaryGolayCode::build();
        assert_eq!(code.len(), 729);
        assert_eq!(code.weight_distribution(), expected_ternary_distribution());
        for w in code.words().iter().step_by(31) {
            for v in code.words().iter().step_by(41) {
                let dot: u32 = w.iter().zip(v.iter()).map(|(&a, &b)| (a * b) as u32).sum();
                assert_eq!(dot % 3, 0);
            }
        }
    }
}

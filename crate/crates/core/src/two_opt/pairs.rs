//! Enumeration orders over unordered rank-index pairs. Both orders agree
//! that `(e_i, e_j)` comes before `(e_i, e_k)` before `(e_j, e_k)` for
//! `i < j < k`; they differ in how fast the second index grows.

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum PairOrdering {
    /// `(0,1), (0,2), ..., (0,m-1), (1,2), (1,3), ...` — exhausts the
    /// lowest-ranked edge first.
    #[default]
    SmallestFirst,
    /// `(0,1), (0,2), (1,2), (0,3), (1,3), (2,3), ...` — grows a triangle,
    /// keeping both indices small early.
    Triangle,
}

/// Resettable cursor over all `m*(m-1)/2` pairs in the chosen order.
#[derive(Clone, Debug)]
pub struct PairSequence {
    ordering: PairOrdering,
    m: usize,
    first: usize,
    second: usize,
}

impl PairSequence {
    /// Panics if `m < 2`; there are no pairs to enumerate.
    pub fn new(ordering: PairOrdering, m: usize) -> Self {
        assert!(m >= 2, "pair enumeration needs at least two edges");
        PairSequence {
            ordering,
            m,
            first: 0,
            second: 1,
        }
    }

    pub fn reset(&mut self) {
        self.first = 0;
        self.second = 1;
    }

    pub fn pair_count(&self) -> u64 {
        let m = self.m as u64;
        m * (m - 1) / 2
    }
}

impl Iterator for PairSequence {
    type Item = (usize, usize);

    fn next(&mut self) -> Option<(usize, usize)> {
        if self.second >= self.m {
            return None;
        }
        let item = (self.first, self.second);
        match self.ordering {
            PairOrdering::SmallestFirst => {
                self.second += 1;
                if self.second == self.m {
                    self.first += 1;
                    self.second = self.first + 1;
                }
            }
            PairOrdering::Triangle => {
                self.first += 1;
                if self.first == self.second {
                    self.first = 0;
                    self.second += 1;
                }
            }
        }
        Some(item)
    }
}

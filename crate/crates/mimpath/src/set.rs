//! Dense vertex sets over a fixed universe `[0..n-1]`, stored as bit words.

pub type Vertex = u32;

/// Set of vertex ids with bitset semantics. All set operations require both
/// operands to share the same universe size.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet {
    n: u32,
    words: Vec<u64>,
}

fn word_count(n: usize) -> usize {
    (n + 63) / 64
}

impl VertexSet {
    pub fn empty(n: usize) -> Self {
        VertexSet {
            n: n as u32,
            words: vec![0; word_count(n)],
        }
    }

    pub fn full(n: usize) -> Self {
        let mut s = Self::empty(n);
        for v in 0..n {
            s.insert(v as Vertex);
        }
        s
    }

    pub fn from_iter<I: IntoIterator<Item = Vertex>>(n: usize, it: I) -> Self {
        let mut s = Self::empty(n);
        for v in it {
            s.insert(v);
        }
        s
    }

    pub fn universe(&self) -> usize {
        self.n as usize
    }

    pub fn insert(&mut self, v: Vertex) {
        debug_assert!(v < self.n);
        self.words[(v / 64) as usize] |= 1u64 << (v % 64);
    }

    pub fn remove(&mut self, v: Vertex) {
        debug_assert!(v < self.n);
        self.words[(v / 64) as usize] &= !(1u64 << (v % 64));
    }

    pub fn contains(&self, v: Vertex) -> bool {
        if v >= self.n {
            return false;
        }
        self.words[(v / 64) as usize] >> (v % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        self.zip_with(other, |a, b| a & !b)
    }

    pub fn complement(&self) -> VertexSet {
        let mut out = self.clone();
        for w in out.words.iter_mut() {
            *w = !*w;
        }
        // clear bits beyond the universe
        let tail = (self.n as usize) % 64;
        if tail != 0 {
            if let Some(last) = out.words.last_mut() {
                *last &= (1u64 << tail) - 1;
            }
        }
        out
    }

    pub fn union_in_place(&mut self, other: &VertexSet) {
        debug_assert_eq!(self.n, other.n);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        debug_assert_eq!(self.n, other.n);
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        debug_assert_eq!(self.n, other.n);
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    pub fn intersects(&self, other: &VertexSet) -> bool {
        !self.is_disjoint(other)
    }

    pub fn min(&self) -> Option<Vertex> {
        self.iter().next()
    }

    pub fn iter(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let bit = w.trailing_zeros();
                    w &= w - 1;
                    Some(i as Vertex * 64 + bit)
                }
            })
        })
    }

    pub fn to_vec(&self) -> Vec<Vertex> {
        self.iter().collect()
    }

    fn zip_with(&self, other: &VertexSet, f: impl Fn(u64, u64) -> u64) -> VertexSet {
        debug_assert_eq!(self.n, other.n);
        VertexSet {
            n: self.n,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }
}

impl std::fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_ops() {
        let a = VertexSet::from_iter(10, [0, 3, 7]);
        let b = VertexSet::from_iter(10, [3, 7, 9]);
        assert_eq!(a.len(), 3);
        assert!(a.contains(3) && !a.contains(1));
        assert_eq!(a.intersection(&b).to_vec(), vec![3, 7]);
        assert_eq!(a.union(&b).to_vec(), vec![0, 3, 7, 9]);
        assert_eq!(a.difference(&b).to_vec(), vec![0]);
        assert!(!a.is_subset(&b));
        assert!(VertexSet::from_iter(10, [3]).is_subset(&a));
        assert_eq!(a.complement().to_vec(), vec![1, 2, 4, 5, 6, 8, 9]);
    }

    #[test]
    fn universe_boundaries() {
        let mut s = VertexSet::empty(64);
        s.insert(63);
        assert!(s.contains(63));
        assert_eq!(s.complement().len(), 63);
        let t = VertexSet::full(65);
        assert_eq!(t.len(), 65);
        assert!(t.complement().is_empty());
    }
}

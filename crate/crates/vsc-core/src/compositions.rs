//! Ordered partitions (compositions) of a positive integer.
//!
//! `compositions_of(d)` enumerates all 2^{d-1} sequences of positive parts
//! summing to d, in lexicographic order of the part sequences. The order
//! is part of the crate's determinism contract: parallel sums over
//! compositions are reassembled by this index.

use serde::Serialize;

/// Ordered sequence of positive parts.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
#[serde(transparent)]
pub struct Composition(Vec<u32>);

impl Composition {
    /// Panics if any part is zero or the list is empty.
    pub fn new(parts: Vec<u32>) -> Self {
        assert!(!parts.is_empty(), "composition needs at least one part");
        assert!(parts.iter().all(|&p| p > 0), "composition parts must be positive");
        Composition(parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn reversed(&self) -> Composition {
        let mut p = self.0.clone();
        p.reverse();
        Composition(p)
    }
}

impl std::fmt::Display for Composition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", p)?;
        }
        write!(f, ")")
    }
}

/// All compositions of `d >= 1` in lexicographic order of the part lists.
pub fn compositions_of(d: u32) -> Vec<Composition> {
    let mut out = Vec::new();
    if d == 0 {
        return out;
    }
    let mut prefix = Vec::new();
    fill(d, &mut prefix, &mut out);
    out
}

fn fill(remaining: u32, prefix: &mut Vec<u32>, out: &mut Vec<Composition>) {
    for first in 1..=remaining {
        prefix.push(first);
        if first == remaining {
            out.push(Composition(prefix.clone()));
        } else {
            fill(remaining - first, prefix, out);
        }
        prefix.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lexicographic_order_for_three() {
        let got: Vec<Vec<u32>> = compositions_of(3)
            .into_iter()
            .map(|c| c.parts().to_vec())
            .collect();
        assert_eq!(got, vec![vec![1, 1, 1], vec![1, 2], vec![2, 1], vec![3]]);
    }

    #[test]
    fn count_is_two_to_the_d_minus_one() {
        for d in 1..=12u32 {
            let all = compositions_of(d);
            assert_eq!(all.len(), 1 << (d - 1), "count at d = {}", d);
            assert!(all.iter().all(|c| c.total() == d));
            let mut sorted = all.clone();
            sorted.sort();
            assert_eq!(all, sorted, "enumeration must be sorted at d = {}", d);
        }
    }

    #[test]
    fn closed_under_reversal() {
        for d in 1..=10u32 {
            let all = compositions_of(d);
            let mut reversed: Vec<Composition> = all.iter().map(|c| c.reversed()).collect();
            reversed.sort();
            assert_eq!(all, reversed, "reversal closure at d = {}", d);
        }
    }

    #[test]
    fn json_form_is_a_plain_array() {
        let c = Composition::new(vec![2, 1, 3]);
        assert_eq!(serde_json::to_string(&c).unwrap(), "[2,1,3]");
    }
}

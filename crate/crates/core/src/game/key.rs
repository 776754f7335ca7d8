//! Compact guard-set encodings used as hash keys.

use std::hash::Hash;

use crate::graph::{Graph, GuardConfig};

pub(crate) trait ConfigKey: Clone + Eq + Hash {
    fn encode(d: &GuardConfig) -> Self;
    fn decode(&self) -> GuardConfig;
    fn contains(&self, v: usize) -> bool;
    fn moved(&self, from: usize, to: usize) -> Self;
    fn with(&self, v: usize) -> Self;
    fn guarded_neighbors(&self, g: &Graph, v: usize, out: &mut Vec<usize>);
}

impl ConfigKey for u64 {
    fn encode(d: &GuardConfig) -> Self {
        d.mask()
    }

    fn decode(&self) -> GuardConfig {
        GuardConfig::from_mask(*self)
    }

    fn contains(&self, v: usize) -> bool {
        self >> v & 1 == 1
    }

    fn moved(&self, from: usize, to: usize) -> Self {
        self & !(1 << from) | 1 << to
    }

    fn with(&self, v: usize) -> Self {
        self | 1 << v
    }

    fn guarded_neighbors(&self, g: &Graph, v: usize, out: &mut Vec<usize>) {
        out.clear();
        let mut bits = g.row(v).expect("mask rows present") & self;
        while bits != 0 {
            out.push(bits.trailing_zeros() as usize);
            bits &= bits - 1;
        }
    }
}

/// Sorted guard list for graphs beyond 64 vertices.
pub(crate) type WideKey = Box<[u32]>;

impl ConfigKey for WideKey {
    fn encode(d: &GuardConfig) -> Self {
        d.iter().map(|v| v as u32).collect()
    }

    fn decode(&self) -> GuardConfig {
        GuardConfig::from_sorted(self.iter().map(|&v| v as usize).collect())
    }

    fn contains(&self, v: usize) -> bool {
        self.binary_search(&(v as u32)).is_ok()
    }

    fn moved(&self, from: usize, to: usize) -> Self {
        let mut out: Vec<u32> = self.iter().copied().filter(|&x| x != from as u32).collect();
        let at = out.binary_search(&(to as u32)).unwrap_or_else(|i| i);
        out.insert(at, to as u32);
        out.into_boxed_slice()
    }

    fn with(&self, v: usize) -> Self {
        let mut out = self.to_vec();
        if let Err(at) = out.binary_search(&(v as u32)) {
            out.insert(at, v as u32);
        }
        out.into_boxed_slice()
    }

    fn guarded_neighbors(&self, g: &Graph, v: usize, out: &mut Vec<usize>) {
        out.clear();
        out.extend(g.neighbors(v).iter().copied().filter(|&u| self.contains(u)));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn encodings_agree() {
        let d = GuardConfig::from_sorted(vec![1, 4, 6]);
        let m = u64::encode(&d);
        let w = WideKey::encode(&d);
        assert_eq!(m.decode(), d);
        assert_eq!(w.decode(), d);
        assert_eq!(m.moved(4, 5).decode(), w.moved(4, 5).decode());
        assert_eq!(m.with(0).decode(), w.with(0).decode());
        assert!(m.contains(6) && w.contains(6) && !m.contains(5) && !w.contains(5));
    }
}

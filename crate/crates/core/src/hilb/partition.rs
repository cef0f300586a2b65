//! Set partitions of `{1..n}` and integer partitions.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// A partition of `{1..n}` into disjoint non-empty blocks.
///
/// Blocks are stored sorted, and ordered by their smallest element, so two
/// values are equal iff they describe the same partition.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SetPartition {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

impl SetPartition {
    pub fn new(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; n + 1];
        let mut blocks = blocks;
        for b in &mut blocks {
            if b.is_empty() {
                return Err(Error::InvalidArgument("empty block".into()));
            }
            b.sort_unstable();
            for &x in b.iter() {
                if x == 0 || x > n {
                    return Err(Error::IndexOutOfRange { index: x, arity: n });
                }
                if seen[x] {
                    return Err(Error::RepeatedIndex(x));
                }
                seen[x] = true;
            }
        }
        if let Some(x) = (1..=n).find(|&x| !seen[x]) {
            return Err(Error::InvalidArgument(format!("{x} is not covered by any block")));
        }
        blocks.sort();
        Ok(SetPartition { n, blocks })
    }

    /// Blocks `{1..λ_1}, {λ_1+1..λ_1+λ_2}, ...` for an integer partition `λ`.
    pub fn from_shape(shape: &[usize]) -> Result<Self> {
        let mut blocks = Vec::with_capacity(shape.len());
        let mut next = 1;
        for &size in shape {
            blocks.push((next..next + size).collect());
            next += size;
        }
        SetPartition::new(next - 1, blocks)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// The length `l(μ)`.
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// Block sizes in decreasing order: the `S_n`-orbit of the partition.
    pub fn shape(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.blocks.iter().map(Vec::len).collect();
        s.sort_unstable_by(|a, b| b.cmp(a));
        s
    }

    /// Generators of `S_μ`, the permutations of `{1..l}` exchanging blocks of
    /// equal size, as one-line permutations. Factor `r` of `S^l` is block `r`.
    pub fn block_symmetry_generators(&self) -> Vec<Vec<usize>> {
        let mut by_size: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (r, b) in self.blocks.iter().enumerate() {
            by_size.entry(b.len()).or_default().push(r + 1);
        }
        let l = self.len();
        let mut gens = Vec::new();
        for same in by_size.values() {
            for w in same.windows(2) {
                let mut perm: Vec<usize> = (1..=l).collect();
                perm.swap(w[0] - 1, w[1] - 1);
                gens.push(perm);
            }
        }
        gens
    }

    /// Number of elements of `S_μ`.
    pub fn symmetry_order(&self) -> usize {
        multiplicities(&self.shape())
            .values()
            .map(|&k| (1..=k).product::<usize>())
            .product()
    }
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            let inner: Vec<String> = b.iter().map(ToString::to_string).collect();
            write!(f, "{{{}}}", inner.join(","))?;
        }
        f.write_str("}")
    }
}

/// Multiplicity of each part size.
pub fn multiplicities(shape: &[usize]) -> BTreeMap<usize, usize> {
    let mut m = BTreeMap::new();
    for &p in shape {
        *m.entry(p).or_insert(0) += 1;
    }
    m
}

/// Integer partitions of `n` as non-increasing sequences, in reverse
/// lexicographic order (`[n]` first, `[1, ..., 1]` last).
pub fn integer_partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=max.min(rest)).rev() {
            cur.push(p);
            go(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Every set partition of `{1..n}`, via restricted growth strings.
pub fn set_partitions(n: usize) -> Vec<SetPartition> {
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    let mut a = vec![0usize; n];
    loop {
        let l = a.iter().max().map_or(0, |m| m + 1);
        let mut blocks = vec![Vec::new(); l];
        for (x, &b) in a.iter().enumerate() {
            blocks[b].push(x + 1);
        }
        out.push(SetPartition::new(n, blocks).expect("growth string gives a partition"));
        // next restricted growth string: a[i] <= 1 + max(a[..i])
        let mut i = n - 1;
        loop {
            if i == 0 {
                return out;
            }
            let bound = a[..i].iter().max().copied().unwrap_or(0) + 1;
            if a[i] < bound {
                a[i] += 1;
                a[i + 1..].iter_mut().for_each(|x| *x = 0);
                break;
            }
            i -= 1;
        }
    }
}

/// One representative per `S_n`-orbit of set partitions, finest first.
pub fn orbit_representatives(n: usize) -> Vec<SetPartition> {
    let mut shapes = integer_partitions(n);
    shapes.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| b.cmp(a)));
    shapes
        .iter()
        .map(|s| SetPartition::from_shape(s).expect("shape sums to n"))
        .collect()
}

/// Orbit sizes obtained by enumerating all set partitions and grouping by
/// shape.
pub fn orbits_by_enumeration(n: usize) -> BTreeMap<Vec<usize>, usize> {
    let mut m = BTreeMap::new();
    for p in set_partitions(n) {
        *m.entry(p.shape()).or_insert(0) += 1;
    }
    m
}

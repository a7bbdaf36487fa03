//! Lazy enumeration of permutations, derangements, full cycles and set
//! partitions with no singleton blocks.
//!
//! Permutations are 1-based: `mapping[j - 1] = tau(j)`. All generators emit
//! in lexicographic order of the mapping vector.

use std::ops::RangeInclusive;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignedPerm {
    pub mapping: Vec<usize>,
    pub sign: i8,
    pub is_derangement: bool,
}

impl SignedPerm {
    pub fn from_mapping(mapping: Vec<usize>) -> Result<Self> {
        let sign = perm_sign(&mapping)?;
        let is_derangement = mapping.iter().enumerate().all(|(j, &t)| t != j + 1);
        Ok(SignedPerm {
            mapping,
            sign,
            is_derangement,
        })
    }

    pub fn len(&self) -> usize {
        self.mapping.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mapping.is_empty()
    }

    /// `tau(j)` for 1-based `j`.
    pub fn image(&self, j: usize) -> usize {
        self.mapping[j - 1]
    }

    /// Disjoint cycles, each starting at its smallest element, ordered by
    /// that element. Fixed points appear as 1-cycles.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        cycle_decomposition(&self.mapping)
    }
}

fn check_bijection(mapping: &[usize]) -> Result<()> {
    let l = mapping.len();
    let mut seen = vec![false; l + 1];
    for &t in mapping {
        if t == 0 || t > l || seen[t] {
            return Err(Error::NotBijective(l));
        }
        seen[t] = true;
    }
    Ok(())
}

fn cycle_decomposition(mapping: &[usize]) -> Vec<Vec<usize>> {
    let l = mapping.len();
    let mut seen = vec![false; l + 1];
    let mut out = Vec::new();
    for start in 1..=l {
        if seen[start] {
            continue;
        }
        let mut cycle = vec![];
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            cycle.push(x);
            x = mapping[x - 1];
        }
        out.push(cycle);
    }
    out
}

/// `(-1)^(l - c)` where `c` counts cycles.
pub fn perm_sign(mapping: &[usize]) -> Result<i8> {
    check_bijection(mapping)?;
    let c = cycle_decomposition(mapping).len();
    Ok(if (mapping.len() - c) % 2 == 0 { 1 } else { -1 })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Mode {
    All,
    Derangements,
    FullCycles,
}

/// Backtracking generator shared by all three permutation families.
///
/// The sign is tracked incrementally: placing value `v` at the next
/// position creates one inversion for every still-unused value below `v`.
#[derive(Debug, Clone)]
pub struct PermutationStream {
    len: usize,
    mode: Mode,
    first: RangeInclusive<usize>,
    mapping: Vec<usize>,
    used: Vec<bool>,
    // parity[p] = inversion parity of the prefix of length p
    parity: Vec<u8>,
    started: bool,
    done: bool,
}

impl PermutationStream {
    fn new(len: usize, mode: Mode) -> Self {
        PermutationStream {
            len,
            mode,
            first: 1..=len,
            mapping: vec![0; len],
            used: vec![false; len + 1],
            parity: vec![0; len + 1],
            started: false,
            done: false,
        }
    }

    /// Restricts the enumeration to permutations with `tau(1)` in `first`.
    /// Disjoint ranges partition the stream, for parallel reduction.
    pub fn with_first_values(mut self, first: RangeInclusive<usize>) -> Self {
        self.first = first;
        self
    }

    fn admissible(&self, pos: usize, v: usize) -> bool {
        if self.used[v] {
            return false;
        }
        if pos == 0 && !self.first.contains(&v) {
            return false;
        }
        match self.mode {
            Mode::All => true,
            Mode::Derangements => v != pos + 1,
            Mode::FullCycles => {
                // reject v if following the partial chain from v returns to
                // pos+1 before all positions are filled
                let mut x = v;
                while x != pos + 1 && self.mapping[x - 1] != 0 {
                    x = self.mapping[x - 1];
                }
                x != pos + 1 || pos + 1 == self.len
            }
        }
    }

    fn emit(&self) -> SignedPerm {
        let sign = if self.parity[self.len] == 0 { 1 } else { -1 };
        let is_derangement = match self.mode {
            Mode::All => self.mapping.iter().enumerate().all(|(j, &t)| t != j + 1),
            Mode::Derangements | Mode::FullCycles => true,
        };
        SignedPerm {
            mapping: self.mapping.clone(),
            sign,
            is_derangement,
        }
    }
}

impl Iterator for PermutationStream {
    type Item = SignedPerm;

    fn next(&mut self) -> Option<SignedPerm> {
        if self.done {
            return None;
        }
        if self.len == 0 {
            self.done = true;
            return match self.mode {
                Mode::FullCycles => None,
                _ => Some(SignedPerm {
                    mapping: vec![],
                    sign: 1,
                    is_derangement: true,
                }),
            };
        }
        let mut pos = if self.started {
            self.len - 1
        } else {
            self.started = true;
            0
        };
        loop {
            let cur = self.mapping[pos];
            if cur != 0 {
                self.used[cur] = false;
                self.mapping[pos] = 0;
            }
            let next = (cur + 1..=self.len).find(|&v| self.admissible(pos, v));
            match next {
                Some(v) => {
                    self.mapping[pos] = v;
                    self.used[v] = true;
                    let below = (1..v).filter(|&u| !self.used[u]).count();
                    self.parity[pos + 1] = self.parity[pos] ^ (below as u8 & 1);
                    if pos + 1 == self.len {
                        return Some(self.emit());
                    }
                    pos += 1;
                }
                None => {
                    if pos == 0 {
                        self.done = true;
                        return None;
                    }
                    pos -= 1;
                }
            }
        }
    }
}

/// Every permutation of `1..=len`.
pub fn permutations(len: usize) -> PermutationStream {
    PermutationStream::new(len, Mode::All)
}

/// Every fixed-point-free permutation of `1..=len`.
pub fn derangements(len: usize) -> PermutationStream {
    PermutationStream::new(len, Mode::Derangements)
}

/// Every single cycle of length `len` on `1..=len`.
pub fn full_cycles(len: usize) -> Result<PermutationStream> {
    if len < 2 {
        return Err(Error::InvalidArgument(format!(
            "a full cycle needs at least 2 points, got {len}"
        )));
    }
    Ok(PermutationStream::new(len, Mode::FullCycles))
}

/// Number of derangements of `len` points.
pub fn derangement_count(len: usize) -> u128 {
    let (mut a, mut b) = (1u128, 0u128); // D_0, D_1
    if len == 0 {
        return a;
    }
    for l in 2..=len as u128 {
        let c = (l - 1) * (a + b);
        a = b;
        b = c;
    }
    b
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SetPartition {
    /// Blocks of 1-based indices, each sorted, ordered by smallest element.
    pub blocks: Vec<Vec<usize>>,
}

impl SetPartition {
    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlockParity {
    Odd,
    Even,
}

impl BlockParity {
    fn accepts(self, s: usize) -> bool {
        match self {
            BlockParity::Odd => s % 2 == 1,
            BlockParity::Even => s % 2 == 0,
        }
    }
}

/// Set partitions of `1..=len` with every block of size at least two,
/// generated via restricted growth strings in lexicographic order.
#[derive(Debug, Clone)]
pub struct PartitionStream {
    len: usize,
    filter: Option<BlockParity>,
    // rgs[i] = block index of element i+1; max_prefix[i] = max(rgs[..i])
    rgs: Vec<usize>,
    started: bool,
    done: bool,
}

impl PartitionStream {
    fn advance(&mut self) -> bool {
        if !self.started {
            self.started = true;
            return self.len > 0;
        }
        // next restricted growth string: rightmost position that can grow
        for i in (1..self.len).rev() {
            let max_before = self.rgs[..i].iter().copied().max().unwrap_or(0);
            if self.rgs[i] <= max_before {
                self.rgs[i] += 1;
                for r in &mut self.rgs[i + 1..] {
                    *r = 0;
                }
                return true;
            }
        }
        false
    }

    fn current(&self) -> Option<SetPartition> {
        let blocks_n = self.rgs.iter().copied().max().map_or(0, |m| m + 1);
        let mut blocks = vec![Vec::new(); blocks_n];
        for (i, &b) in self.rgs.iter().enumerate() {
            blocks[b].push(i + 1);
        }
        if blocks.iter().any(|b| b.len() < 2) {
            return None;
        }
        if let Some(f) = self.filter {
            if !f.accepts(blocks.len()) {
                return None;
            }
        }
        Some(SetPartition { blocks })
    }
}

impl Iterator for PartitionStream {
    type Item = SetPartition;

    fn next(&mut self) -> Option<SetPartition> {
        while !self.done {
            if !self.advance() {
                self.done = true;
                break;
            }
            if let Some(p) = self.current() {
                return Some(p);
            }
        }
        None
    }
}

pub fn partitions_min2(len: usize, parity_filter: Option<BlockParity>) -> PartitionStream {
    PartitionStream {
        len,
        filter: parity_filter,
        rgs: vec![0; len],
        started: false,
        done: false,
    }
}

//! Brute-force reference computations. Nothing here touches the keyword
//! tree or the DP, so the oracle can certify both.

use std::collections::BTreeSet;

use crate::error::{Error, Result};

/// Longest subsequence the oracle will enumerate (2^20 candidates).
pub const ORACLE_CAP: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    pub length: usize,
    /// Optimal witnesses, sorted and deduplicated. A single witness unless
    /// all of them were requested.
    pub witnesses: Vec<Vec<u8>>,
}

/// True iff some pattern occurs contiguously in `s`.
pub fn contains_any_substring<P: AsRef<[u8]>>(s: &[u8], patterns: &[P]) -> bool {
    patterns.iter().any(|p| {
        let p = p.as_ref();
        p.len() <= s.len() && (0..=s.len() - p.len()).any(|at| &s[at..at + p.len()] == p)
    })
}

/// True iff `z` can be obtained from `s` by deleting characters.
pub fn is_subsequence(z: &[u8], s: &[u8]) -> bool {
    let mut rest = s.iter();
    z.iter().all(|c| rest.any(|b| b == c))
}

/// The longest suffix of `s` that is a prefix of some pattern.
pub fn naive_sigma<P: AsRef<[u8]>>(s: &[u8], patterns: &[P]) -> Vec<u8> {
    for len in (1..=s.len()).rev() {
        let suffix = &s[s.len() - len..];
        if patterns.iter().any(|p| p.as_ref().starts_with(suffix)) {
            return suffix.to_vec();
        }
    }
    Vec::new()
}

/// Exhaustive search for the longest common subsequence of `x` and `y`
/// containing no pattern as a substring. Enumerates every subsequence of the
/// shorter input.
pub fn oracle_lcs_excluding<P: AsRef<[u8]>>(
    x: &[u8],
    y: &[u8],
    patterns: &[P],
    all_witnesses: bool,
) -> Result<OracleResult> {
    let (short, long) = if x.len() <= y.len() { (x, y) } else { (y, x) };
    if short.len() > ORACLE_CAP {
        return Err(Error::InstanceTooLarge { len: short.len(), cap: ORACLE_CAP });
    }

    let mut best = 0usize;
    let mut witnesses = BTreeSet::new();
    let mut z = Vec::with_capacity(short.len());
    for mask in 0u32..(1u32 << short.len()) {
        let len = mask.count_ones() as usize;
        if len < best || (len == best && !all_witnesses && !witnesses.is_empty()) {
            continue;
        }
        z.clear();
        z.extend((0..short.len()).filter(|&i| mask >> i & 1 == 1).map(|i| short[i]));
        if !is_subsequence(&z, long) || contains_any_substring(&z, patterns) {
            continue;
        }
        if len > best {
            best = len;
            witnesses.clear();
        }
        witnesses.insert(z.clone());
    }
    let mut witnesses: Vec<Vec<u8>> = witnesses.into_iter().collect();
    if !all_witnesses {
        witnesses.truncate(1);
    }
    Ok(OracleResult { length: best, witnesses })
}

/// Classic unconstrained LCS length, quadratic DP.
pub fn lcs_length(x: &[u8], y: &[u8]) -> usize {
    let mut prev = vec![0usize; y.len() + 1];
    let mut cur = vec![0usize; y.len() + 1];
    for &a in x {
        for (j, &b) in y.iter().enumerate() {
            cur[j + 1] = if a == b { prev[j] + 1 } else { prev[j + 1].max(cur[j]) };
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[y.len()]
}

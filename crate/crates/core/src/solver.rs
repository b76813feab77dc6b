//! The constrained-LCS dynamic program.
//!
//! `f(i, j, k)` is the length of the longest common subsequence of `x[..i]`
//! and `y[..j]` that contains no pattern and leaves the automaton in state
//! `k`. Entries with no such subsequence hold 0, as on the boundary.
//!
//! [`solve_table`] fills the cube with a forward update: each cell starts as
//! the maximum of its upper and left neighbours, and on a character match
//! every source state `k` pushes `1 + f(i-1, j-1, k)` to `λ(k, x_i)`. Pushes
//! into [`MATCH`] are dropped, which is the only place constraints act.
//! [`solve_table_literal`] evaluates the same recurrence by pulling the
//! maximum over predecessor states instead; the two fill identical cubes.
//!
//! A 0 entry for a state no subsequence actually reaches can still seed a
//! push. This is harmless: along any chain of pushes, the recorded state's
//! label always has the true automaton state's label as a suffix, so every
//! real pattern completion is also a recorded [`MATCH`].

use std::time::{Duration, Instant};

use crate::automaton::{normalize, ConstraintSet, ExclusionAutomaton, Removed, MATCH};
use crate::error::{Error, Result};

/// Longest accepted input sequence; DP values are `u32`.
pub const MAX_INPUT_LEN: usize = i32::MAX as usize;

/// The full `(n+1) × (m+1) × s` value cube, row-major in `i`, then `j`,
/// then state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DpTable {
    n: usize,
    m: usize,
    s: usize,
    values: Vec<u32>,
}

impl DpTable {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn s(&self) -> usize {
        self.s
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize) -> u32 {
        self.values[(i * (self.m + 1) + j) * self.s + k]
    }

    /// All states of cell `(i, j)`.
    pub fn cell(&self, i: usize, j: usize) -> &[u32] {
        let start = (i * (self.m + 1) + j) * self.s;
        &self.values[start..start + self.s]
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    /// `f[i][j][k]` as nested vectors, for JSON dumps.
    pub fn to_nested(&self) -> Vec<Vec<Vec<u32>>> {
        (0..=self.n)
            .map(|i| (0..=self.m).map(|j| self.cell(i, j).to_vec()).collect())
            .collect()
    }
}

fn check_input(seq: &[u8]) -> Result<()> {
    if seq.len() > MAX_INPUT_LEN {
        return Err(Error::InputTooLarge { len: seq.len(), max: MAX_INPUT_LEN });
    }
    Ok(())
}

/// Fills DP row `i` from row `i - 1`. Both rows hold `(m + 1) * s` values and
/// `cur[..s]` (column 0) must already be zero.
#[inline]
fn fill_row(prev: &[u32], cur: &mut [u32], xi: u8, y: &[u8], lambda: &[u32], s: usize) {
    for (j, &yj) in y.iter().enumerate() {
        let (left, rest) = cur.split_at_mut((j + 1) * s);
        let left = &left[j * s..];
        let here = &mut rest[..s];
        let up = &prev[(j + 1) * s..(j + 2) * s];
        for ((h, &u), &l) in here.iter_mut().zip(up).zip(left) {
            *h = u.max(l);
        }
        if xi == yj {
            let diag = &prev[j * s..(j + 1) * s];
            for (&t, &src) in lambda.iter().zip(diag) {
                if t != MATCH {
                    let slot = &mut here[t as usize];
                    *slot = (*slot).max(src + 1);
                }
            }
        }
    }
}

/// Fills the full value cube with the forward-update recurrence.
/// `O(n·m·s)` time and space.
pub fn solve_table(x: &[u8], y: &[u8], automaton: &ExclusionAutomaton) -> Result<DpTable> {
    check_input(x)?;
    check_input(y)?;
    let (n, m, s) = (x.len(), y.len(), automaton.s());
    let row = (m + 1) * s;
    let size = (n + 1)
        .checked_mul(row)
        .filter(|&size| size <= isize::MAX as usize / 4)
        .ok_or(Error::TableTooLarge { n, m, s })?;
    let mut values = vec![0u32; size];
    for (i, &xi) in x.iter().enumerate() {
        let (done, rest) = values.split_at_mut((i + 1) * row);
        fill_row(&done[i * row..], &mut rest[..row], xi, y, automaton.column(xi), s);
    }
    Ok(DpTable { n, m, s, values })
}

/// Reference evaluator: computes every entry by taking, on a match, the best
/// predecessor state found by [`max_sigma`], exactly as the recurrence reads.
/// `O(n·m·s²)`; meant for cross-checking [`solve_table`].
pub fn solve_table_literal(x: &[u8], y: &[u8], automaton: &ExclusionAutomaton) -> Result<DpTable> {
    check_input(x)?;
    check_input(y)?;
    let (n, m, s) = (x.len(), y.len(), automaton.s());
    let mut table = DpTable { n, m, s, values: vec![0; (n + 1) * (m + 1) * s] };
    for i in 1..=n {
        for j in 1..=m {
            for k in 0..s {
                let value = if x[i - 1] != y[j - 1] {
                    table.get(i - 1, j, k).max(table.get(i, j - 1, k))
                } else {
                    let diag = table.get(i - 1, j - 1, k);
                    match max_sigma(&table, x, automaton, i, j, k) {
                        Some(q) => diag.max(1 + table.get(i - 1, j - 1, q)),
                        None => diag,
                    }
                };
                table.values[(i * (m + 1) + j) * s + k] = value;
            }
        }
    }
    Ok(table)
}

/// The source state `q` maximizing `f(i-1, j-1, q)` among those with
/// `λ(q, x_i) = k`, smallest `q` on ties; `None` if no state steps to `k`.
pub fn max_sigma(
    table: &DpTable,
    x: &[u8],
    automaton: &ExclusionAutomaton,
    i: usize,
    j: usize,
    k: usize,
) -> Option<usize> {
    let column = automaton.column(x[i - 1]);
    let mut best: Option<(u32, usize)> = None;
    for (q, &t) in column.iter().enumerate() {
        if t as usize == k {
            let v = table.get(i - 1, j - 1, q);
            if best.is_none_or(|(b, _)| v > b) {
                best = Some((v, q));
            }
        }
    }
    best.map(|(_, q)| q)
}

/// Length of the answer and the state achieving it, keeping only two DP
/// rows. `O(m·s)` memory.
pub fn solve_length_rolling(
    x: &[u8],
    y: &[u8],
    automaton: &ExclusionAutomaton,
) -> Result<(usize, usize)> {
    check_input(x)?;
    check_input(y)?;
    let s = automaton.s();
    let row = (y.len() + 1) * s;
    let mut prev = vec![0u32; row];
    let mut cur = vec![0u32; row];
    for &xi in x {
        fill_row(&prev, &mut cur, xi, y, automaton.column(xi), s);
        std::mem::swap(&mut prev, &mut cur);
    }
    Ok(terminal_state(automaton, &prev[row - s..]))
}

/// Picks the best state of a final cell: largest value, then shallowest
/// label, then smallest state number.
///
/// Preferring the shallowest label matters when a 0-seeded state ties with
/// the state a real witness ends in: the real state's label is a suffix of
/// the seeded one, so it is never deeper, and a backtrace from the
/// shallowest maximum yields a witness that actually ends in that state.
pub fn terminal_state(automaton: &ExclusionAutomaton, cell: &[u32]) -> (usize, usize) {
    let best = (0..cell.len())
        .min_by_key(|&k| (std::cmp::Reverse(cell[k]), automaton.depth(k), k))
        .unwrap_or(0);
    (cell.get(best).copied().unwrap_or(0) as usize, best)
}

/// Reconstructs a subsequence of length `f(i, j, k)` explaining the entry.
///
/// On a character match the emitting step is tried first, with the smallest
/// predecessor state that accounts for the value; otherwise the walk moves
/// up, then left.
pub fn backtrace(
    table: &DpTable,
    x: &[u8],
    y: &[u8],
    automaton: &ExclusionAutomaton,
    i: usize,
    j: usize,
    k: usize,
) -> Result<Vec<u8>> {
    let (mut i, mut j, mut k) = (i, j, k);
    let mut out = Vec::with_capacity(table.get(i, j, k) as usize);
    loop {
        let v = table.get(i, j, k);
        if v == 0 {
            break;
        }
        if x[i - 1] == y[j - 1] {
            let column = automaton.column(x[i - 1]);
            let source = (0..table.s())
                .find(|&q| column[q] as usize == k && table.get(i - 1, j - 1, q) + 1 == v);
            if let Some(q) = source {
                out.push(x[i - 1]);
                (i, j, k) = (i - 1, j - 1, q);
                continue;
            }
        }
        if table.get(i - 1, j, k) == v {
            i -= 1;
        } else if table.get(i, j - 1, k) == v {
            j -= 1;
        } else {
            return Err(Error::InconsistentTable { i, j, k });
        }
    }
    out.reverse();
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mode {
    /// Two-row DP; no witness.
    LengthOnly,
    /// Full table plus backtrace.
    #[default]
    Witness,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveStats {
    pub n: usize,
    pub m: usize,
    pub d: usize,
    pub r: usize,
    pub s: usize,
    pub elapsed: Duration,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    pub length: usize,
    pub lcs: Option<Vec<u8>>,
    pub terminal_state: usize,
    pub removed: Vec<Removed>,
    pub stats: SolveStats,
}

/// Normalizes the patterns, builds the automaton, and solves.
pub fn solve<P: AsRef<[u8]>>(x: &[u8], y: &[u8], patterns: &[P], mode: Mode) -> Result<SolveResult> {
    let start = Instant::now();
    let cs = normalize(patterns)?;
    let automaton = ExclusionAutomaton::new(&cs);
    let mut result = solve_with(x, y, &cs, &automaton, mode)?;
    result.stats.elapsed = start.elapsed();
    Ok(result)
}

/// Solves against a prebuilt automaton. The automaton is only read, so one
/// can be shared by concurrent calls.
pub fn solve_with(
    x: &[u8],
    y: &[u8],
    cs: &ConstraintSet,
    automaton: &ExclusionAutomaton,
    mode: Mode,
) -> Result<SolveResult> {
    let start = Instant::now();
    let (length, terminal, lcs) = match mode {
        Mode::LengthOnly => {
            let (length, terminal) = solve_length_rolling(x, y, automaton)?;
            (length, terminal, None)
        }
        Mode::Witness => {
            let table = solve_table(x, y, automaton)?;
            let (length, terminal) = terminal_state(automaton, table.cell(x.len(), y.len()));
            let lcs = backtrace(&table, x, y, automaton, x.len(), y.len(), terminal)?;
            (length, terminal, Some(lcs))
        }
    };
    Ok(SolveResult {
        length,
        lcs,
        terminal_state: terminal,
        removed: cs.removed().to_vec(),
        stats: SolveStats {
            n: x.len(),
            m: y.len(),
            d: cs.d(),
            r: cs.r(),
            s: automaton.s(),
            elapsed: start.elapsed(),
        },
    })
}

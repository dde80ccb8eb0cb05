//! Permutations, consecutive patterns and the statistics attached to them.
//!
//! Values are stored 1-based, exactly as they are written in one-line
//! notation. A [`CyclePermutation`] is always kept in canonical form: each
//! cycle starts with its smallest element and cycles are listed by
//! decreasing minima, so that erasing the parentheses ([`CyclePermutation::flatten`])
//! is a bijection onto the symmetric group.

use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A permutation of `{1, …, n}` in one-line notation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    entries: Vec<u32>,
}

impl Permutation {
    pub fn new(entries: Vec<u32>) -> Result<Self> {
        let n = entries.len();
        let mut seen = vec![false; n + 1];
        for &v in &entries {
            let idx = v as usize;
            if v == 0 || idx > n {
                return Err(Error::invalid(format!("entry {v} is outside 1..={n}")));
            }
            if seen[idx] {
                return Err(Error::invalid(format!("entry {v} repeated")));
            }
            seen[idx] = true;
        }
        Ok(Permutation { entries })
    }

    pub(crate) fn from_vec_unchecked(entries: Vec<u32>) -> Self {
        debug_assert!(Permutation::new(entries.clone()).is_ok());
        Permutation { entries }
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            entries: (1..=n as u32).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<u32> {
        self.entries
    }

    /// Image of `i` (1-based) under the permutation viewed as a map.
    pub fn image(&self, i: u32) -> u32 {
        self.entries[i as usize - 1]
    }

    pub fn descent_count(&self) -> usize {
        descents_of(&self.entries)
    }

    pub fn lrmin_count(&self) -> usize {
        lrmin_of(&self.entries)
    }

    pub fn match_count(&self, pattern: &Pattern) -> usize {
        pattern.count_in(&self.entries)
    }

    pub fn to_cycles(&self) -> CyclePermutation {
        to_cycles(self)
    }

    /// Lexicographic rank among all permutations of the same size.
    pub fn rank(&self) -> u64 {
        let n = self.len();
        let fact = factorials(n);
        let mut used = vec![false; n + 1];
        let mut rank = 0u64;
        for (i, &v) in self.entries.iter().enumerate() {
            let smaller_unused = (1..v).filter(|&u| !used[u as usize]).count() as u64;
            rank += smaller_unused * fact[n - 1 - i];
            used[v as usize] = true;
        }
        rank
    }

    /// Inverse of [`Permutation::rank`]. Panics if `rank >= n!`.
    pub fn unrank(n: usize, mut rank: u64) -> Self {
        let fact = factorials(n);
        assert!(n == 0 || rank < fact[n - 1] * n as u64, "rank out of range");
        let mut pool: Vec<u32> = (1..=n as u32).collect();
        let mut entries = Vec::with_capacity(n);
        for i in 0..n {
            let f = fact[n - 1 - i];
            let idx = (rank / f) as usize;
            rank %= f;
            entries.push(pool.remove(idx));
        }
        Permutation { entries }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_word(f, &self.entries)
    }
}

fn write_word(f: &mut fmt::Formatter<'_>, word: &[u32]) -> fmt::Result {
    let wide = word.iter().any(|&v| v > 9);
    for (i, v) in word.iter().enumerate() {
        if i > 0 && wide {
            f.write_str(",")?;
        }
        write!(f, "{v}")?;
    }
    Ok(())
}

/// `k!` for `k < n` (and `0!` when `n == 0`).
fn factorials(n: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(n.max(1));
    let mut acc = 1u64;
    out.push(1);
    for k in 1..n.max(1) {
        acc *= k as u64;
        out.push(acc);
    }
    out
}

pub(crate) fn descents_of(word: &[u32]) -> usize {
    word.windows(2).filter(|w| w[0] > w[1]).count()
}

pub(crate) fn lrmin_of(word: &[u32]) -> usize {
    let mut count = 0;
    let mut min = u32::MAX;
    for &v in word {
        if v < min {
            min = v;
            count += 1;
        }
    }
    count
}

/// Order-isomorphic reduction of a word of distinct values.
///
/// ```
/// use nmtau::permcore::reduce;
/// assert_eq!(reduce(&[2, 7, 5, 4]).unwrap().entries(), &[1, 4, 3, 2]);
/// ```
pub fn reduce<T: Ord>(word: &[T]) -> Result<Permutation> {
    let mut idx: Vec<usize> = (0..word.len()).collect();
    idx.sort_by(|&a, &b| word[a].cmp(&word[b]));
    if idx.windows(2).any(|w| word[w[0]] == word[w[1]]) {
        return Err(Error::invalid("reduce: entries must be pairwise distinct"));
    }
    let mut entries = vec![0u32; word.len()];
    for (r, &i) in idx.iter().enumerate() {
        entries[i] = r as u32 + 1;
    }
    Ok(Permutation { entries })
}

/// A consecutive pattern τ.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Pattern {
    perm: Permutation,
    des: usize,
    // positions of τ sorted by value: a window w matches iff
    // w[by_value[0]] < w[by_value[1]] < …
    by_value: Vec<usize>,
}

impl Pattern {
    pub fn new(perm: Permutation) -> Result<Self> {
        if perm.is_empty() {
            return Err(Error::invalid("pattern must have length at least 1"));
        }
        let des = perm.descent_count();
        let mut by_value = vec![0usize; perm.len()];
        for (pos, &v) in perm.entries().iter().enumerate() {
            by_value[v as usize - 1] = pos;
        }
        Ok(Pattern {
            perm,
            des,
            by_value,
        })
    }

    pub fn from_entries(entries: &[u32]) -> Result<Self> {
        Pattern::new(Permutation::new(entries.to_vec())?)
    }

    pub fn perm(&self) -> &Permutation {
        &self.perm
    }

    pub fn entries(&self) -> &[u32] {
        self.perm.entries()
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn descent_count(&self) -> usize {
        self.des
    }

    pub fn starts_with_one(&self) -> bool {
        self.entries()[0] == 1
    }

    /// Comma-separated form, stable across pattern lengths; used for cache keys.
    pub fn canonical_string(&self) -> String {
        self.entries()
            .iter()
            .map(u32::to_string)
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Whether `window` (of length `self.len()`) reduces to this pattern.
    #[inline]
    pub fn matches_window<T: Ord>(&self, window: &[T]) -> bool {
        debug_assert_eq!(window.len(), self.len());
        self.by_value
            .windows(2)
            .all(|w| window[w[0]] < window[w[1]])
    }

    /// Number of τ-matches in `word`.
    pub fn count_in<T: Ord>(&self, word: &[T]) -> usize {
        if word.len() < self.len() {
            return 0;
        }
        word.windows(self.len())
            .filter(|w| self.matches_window(w))
            .count()
    }

    pub fn occurs_in<T: Ord>(&self, word: &[T]) -> bool {
        word.len() >= self.len() && word.windows(self.len()).any(|w| self.matches_window(w))
    }

    /// Starting positions (0-based) of all τ-matches in `word`.
    pub fn match_starts<T: Ord>(&self, word: &[T]) -> Vec<usize> {
        if word.len() < self.len() {
            return Vec::new();
        }
        word.windows(self.len())
            .enumerate()
            .filter(|(_, w)| self.matches_window(w))
            .map(|(i, _)| i)
            .collect()
    }

    /// Cyclic matches in a single cycle word; requires `cycle.len() >= j`.
    pub fn cyclic_count_in(&self, cycle: &[u32]) -> usize {
        let len = cycle.len();
        let j = self.len();
        if len < j {
            return 0;
        }
        let mut window = vec![0u32; j];
        (0..len)
            .filter(|&r| {
                for (s, slot) in window.iter_mut().enumerate() {
                    *slot = cycle[(r + s) % len];
                }
                self.matches_window(&window)
            })
            .count()
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_word(f, self.entries())
    }
}

/// Parses `"1324"` (single digits only) or `"1,3,2,4"`.
impl FromStr for Pattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let entries: Vec<u32> = if s.contains(',') {
            s.split(',')
                .map(|t| {
                    t.trim()
                        .parse::<u32>()
                        .map_err(|_| Error::invalid(format!("bad pattern entry {t:?}")))
                })
                .collect::<Result<_>>()?
        } else {
            s.chars()
                .map(|c| {
                    c.to_digit(10)
                        .filter(|&d| d > 0)
                        .ok_or_else(|| Error::invalid(format!("bad pattern digit {c:?}")))
                })
                .collect::<Result<_>>()?
        };
        if !s.contains(',') && entries.len() > 9 {
            return Err(Error::invalid(
                "patterns longer than 9 must be comma separated",
            ));
        }
        Pattern::from_entries(&entries)
    }
}

/// A permutation in canonical cycle form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CyclePermutation {
    cycles: Vec<Vec<u32>>,
    size: usize,
}

impl CyclePermutation {
    /// Validates canonical form: cycles partition `{1..n}`, each starts with
    /// its minimum, and the minima strictly decrease.
    pub fn new(cycles: Vec<Vec<u32>>) -> Result<Self> {
        let size: usize = cycles.iter().map(Vec::len).sum();
        let mut seen = vec![false; size + 1];
        for c in &cycles {
            if c.is_empty() {
                return Err(Error::invalid("empty cycle"));
            }
            let min = *c.iter().min().unwrap();
            if c[0] != min {
                return Err(Error::invalid(format!(
                    "cycle {c:?} does not start with its minimum"
                )));
            }
            for &v in c {
                let idx = v as usize;
                if v == 0 || idx > size || seen[idx] {
                    return Err(Error::invalid(format!(
                        "cycles do not partition 1..={size}"
                    )));
                }
                seen[idx] = true;
            }
        }
        if cycles.windows(2).any(|w| w[0][0] <= w[1][0]) {
            return Err(Error::invalid("cycle minima must strictly decrease"));
        }
        Ok(CyclePermutation { cycles, size })
    }

    pub fn cycles(&self) -> &[Vec<u32>] {
        &self.cycles
    }

    pub fn len(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    pub fn cycle_count(&self) -> usize {
        self.cycles.len()
    }

    /// Concatenation of the cycles.
    pub fn flatten(&self) -> Permutation {
        Permutation::from_vec_unchecked(self.cycles.concat())
    }

    /// Sum over cycles of `1 + des(cycle word)`.
    pub fn cdes(&self) -> usize {
        self.cycles.iter().map(|c| cycle_cdes(c)).sum()
    }

    pub fn cycle_match_count(&self, pattern: &Pattern) -> usize {
        self.cycles.iter().map(|c| pattern.cyclic_count_in(c)).sum()
    }

    /// Back to one-line notation of the underlying map.
    pub fn to_permutation(&self) -> Permutation {
        let mut entries = vec![0u32; self.size];
        for c in &self.cycles {
            for (i, &v) in c.iter().enumerate() {
                entries[v as usize - 1] = c[(i + 1) % c.len()];
            }
        }
        Permutation::from_vec_unchecked(entries)
    }
}

impl fmt::Display for CyclePermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.cycles {
            f.write_str("(")?;
            for (i, v) in c.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{v}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

/// Descents of a single cycle read from its minimum, plus one for the wrap.
pub fn cycle_cdes(cycle: &[u32]) -> usize {
    1 + descents_of(cycle)
}

pub fn to_cycles(perm: &Permutation) -> CyclePermutation {
    let n = perm.len();
    let mut visited = vec![false; n + 1];
    let mut cycles = Vec::new();
    // Starting from each unvisited element in increasing order gives
    // minimum-first cycles with increasing minima.
    for start in 1..=n as u32 {
        if visited[start as usize] {
            continue;
        }
        let mut cycle = vec![start];
        visited[start as usize] = true;
        let mut cur = perm.image(start);
        while cur != start {
            visited[cur as usize] = true;
            cycle.push(cur);
            cur = perm.image(cur);
        }
        cycles.push(cycle);
    }
    cycles.reverse();
    CyclePermutation { cycles, size: n }
}

/// Iterator over permutations of `{1..n}` in lexicographic order,
/// restricted to a half-open range of ranks.
#[derive(Debug, Clone)]
pub struct Permutations {
    current: Vec<u32>,
    remaining: u64,
    // `current` has already been emitted and must be advanced first.
    pending_advance: bool,
}

impl Iterator for Permutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let out = self.next_entries()?.to_vec();
        Some(Permutation { entries: out })
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let r = usize::try_from(self.remaining).unwrap_or(usize::MAX);
        (r, Some(r))
    }
}

impl Permutations {
    /// Borrowing variant of `next`, avoiding an allocation per step.
    pub fn next_entries(&mut self) -> Option<&[u32]> {
        if self.remaining == 0 {
            return None;
        }
        self.remaining -= 1;
        if self.pending_advance {
            next_permutation(&mut self.current);
        }
        self.pending_advance = true;
        Some(&self.current)
    }
}

/// Rearranges `word` into its lexicographic successor; returns false at the last one.
pub(crate) fn next_permutation(word: &mut [u32]) -> bool {
    let n = word.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && word[i - 1] >= word[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while word[j] <= word[i - 1] {
        j -= 1;
    }
    word.swap(i - 1, j);
    word[i..].reverse();
    true
}

pub fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// All of `S_n` in lexicographic order. Supports `n ≤ 20`.
pub fn permutations_of(n: usize) -> Permutations {
    permutations_in_range(n, 0..factorial(n))
}

/// The permutations of `S_n` whose lexicographic rank lies in `ranks`.
pub fn permutations_in_range(n: usize, ranks: Range<u64>) -> Permutations {
    assert!(n <= 20, "permutations_of supports n <= 20");
    let total = factorial(n);
    let start = ranks.start.min(total);
    let end = ranks.end.min(total).max(start);
    let current = if start < total {
        Permutation::unrank(n, start).entries
    } else {
        Vec::new()
    };
    Permutations {
        current,
        remaining: end - start,
        pending_advance: false,
    }
}

/// Splits `0..n!` into `shards` contiguous nearly equal rank ranges.
pub fn shard_ranges(n: usize, shards: usize) -> Vec<Range<u64>> {
    let shards = shards.max(1) as u64;
    let total = factorial(n);
    (0..shards)
        .map(|i| (total * i / shards)..(total * (i + 1) / shards))
        .collect()
}

use std::ops::Range;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rayon::prelude::*;

use crate::algebra::{PolyXY, PolyY, XY, Y};
use crate::permcore::{cycle_cdes, factorial, permutations_in_range, shard_ranges, Pattern};

/// Exponent-indexed counts for one `n`, merged by addition.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Tally {
    side: usize,
    counts: Vec<u64>,
}

impl Tally {
    fn new(n: usize) -> Self {
        let side = n + 2;
        Tally {
            side,
            counts: vec![0; side * side],
        }
    }

    fn bump(&mut self, x: usize, y: usize) {
        self.counts[x * self.side + y] += 1;
    }

    fn merge(mut self, other: Tally) -> Tally {
        for (a, b) in self.counts.iter_mut().zip(other.counts) {
            *a += b;
        }
        self
    }

    fn into_poly(self) -> PolyXY {
        let side = self.side;
        PolyXY::from_terms(
            self.counts
                .into_iter()
                .enumerate()
                .filter(|&(_, c)| c != 0)
                .map(|(i, c)| {
                    let m = XY::new((i / side) as u32, (i % side) as u32);
                    (m, BigRational::from_integer(BigInt::from(c)))
                }),
        )
    }
}

fn default_shards(n: usize) -> usize {
    if n < 7 {
        1
    } else {
        4 * rayon::current_num_threads()
    }
}

fn nm_tally(tau: &Pattern, n: usize, ranks: Range<u64>) -> Tally {
    let mut tally = Tally::new(n);
    let mut perms = permutations_in_range(n, ranks);
    while let Some(w) = perms.next_entries() {
        if tau.occurs_in(w) {
            continue;
        }
        let mut lrmin = 0;
        let mut min = u32::MAX;
        let mut des = 0;
        for (i, &v) in w.iter().enumerate() {
            if v < min {
                min = v;
                lrmin += 1;
            }
            if i + 1 < w.len() && v > w[i + 1] {
                des += 1;
            }
        }
        tally.bump(lrmin, 1 + des);
    }
    tally
}

/// `NM_{τ,n}(x,y)`: the sum of `x^{LRmin σ} y^{1+des σ}` over `σ ∈ S_n`
/// with no τ-match. The empty permutation contributes `1`.
pub fn brute_nm_poly(tau: &Pattern, n: usize) -> PolyXY {
    if n == 0 {
        return PolyXY::one();
    }
    merge_shards(n, |r| nm_tally(tau, n, r))
}

/// One rank-range shard of [`brute_nm_poly`]; summing all shards of
/// [`shard_ranges`] gives the full polynomial.
pub fn brute_nm_shard(tau: &Pattern, n: usize, ranks: Range<u64>) -> PolyXY {
    if n == 0 {
        return if ranks.contains(&0) {
            PolyXY::one()
        } else {
            PolyXY::new()
        };
    }
    nm_tally(tau, n, ranks).into_poly()
}

fn ncm_tally(tau: &Pattern, n: usize, ranks: Range<u64>) -> Tally {
    let mut tally = Tally::new(n);
    let mut seen = vec![false; n + 1];
    let mut cycle: Vec<u32> = Vec::with_capacity(n);
    let mut perms = permutations_in_range(n, ranks);
    'perm: while let Some(w) = perms.next_entries() {
        seen.iter_mut().for_each(|s| *s = false);
        let (mut cyc, mut cdes) = (0, 0);
        for start in 1..=n as u32 {
            if seen[start as usize] {
                continue;
            }
            cycle.clear();
            let mut v = start;
            while !seen[v as usize] {
                seen[v as usize] = true;
                cycle.push(v);
                v = w[v as usize - 1];
            }
            if tau.cyclic_count_in(&cycle) > 0 {
                continue 'perm;
            }
            cyc += 1;
            cdes += cycle_cdes(&cycle);
        }
        tally.bump(cyc, cdes);
    }
    tally
}

/// `NCM_{τ,n}(x,y)`: the sum of `x^{cyc σ} y^{cdes σ}` over `σ ∈ S_n`
/// with no cycle-τ-match.
pub fn brute_ncm_poly(tau: &Pattern, n: usize) -> PolyXY {
    if n == 0 {
        return PolyXY::one();
    }
    merge_shards(n, |r| ncm_tally(tau, n, r))
}

pub fn brute_ncm_shard(tau: &Pattern, n: usize, ranks: Range<u64>) -> PolyXY {
    if n == 0 {
        return if ranks.contains(&0) {
            PolyXY::one()
        } else {
            PolyXY::new()
        };
    }
    ncm_tally(tau, n, ranks).into_poly()
}

fn merge_shards(n: usize, f: impl Fn(Range<u64>) -> Tally + Sync + Send) -> PolyXY {
    shard_ranges(n, default_shards(n))
        .into_par_iter()
        .map(f)
        .reduce(|| Tally::new(n), Tally::merge)
        .into_poly()
}

/// Sum of `y^{cdes C}` over the `n`-cycles `C` on `{1..n}` with no cyclic τ-match.
pub fn brute_cycle_poly(tau: &Pattern, n: usize) -> PolyY {
    if n == 0 {
        return PolyY::new();
    }
    let mut counts = vec![0u64; n + 1];
    let mut word = vec![0u32; n];
    word[0] = 1;
    let mut rest = permutations_in_range(n - 1, 0..factorial(n - 1));
    while let Some(r) = rest.next_entries() {
        for (slot, &v) in word[1..].iter_mut().zip(r) {
            *slot = v + 1;
        }
        if tau.cyclic_count_in(&word) == 0 {
            counts[cycle_cdes(&word)] += 1;
        }
    }
    PolyY::from_terms(
        counts
            .into_iter()
            .enumerate()
            .filter(|&(_, c)| c != 0)
            .map(|(k, c)| (Y(k as u32), BigRational::from_integer(BigInt::from(c)))),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::int;

    fn pat(s: &str) -> Pattern {
        s.parse().unwrap()
    }

    fn xy(s: &str) -> PolyXY {
        s.parse().unwrap()
    }

    #[test]
    fn small_nm_values() {
        assert_eq!(brute_nm_poly(&pat("1324"), 0), xy("1"));
        assert_eq!(brute_nm_poly(&pat("1324"), 1), xy("x y"));
        assert_eq!(
            brute_nm_poly(&pat("1324"), 3),
            xy("x y + x y^2 + 3 x^2 y^2 + x^3 y^3")
        );
    }

    #[test]
    fn totals_for_3142() {
        let tau = pat("3142");
        let one = int(1);
        assert_eq!(brute_nm_poly(&tau, 7).eval(&one, &one), int(4237));
        // Cross-checked with an independent script over S_7.
        assert_eq!(brute_ncm_poly(&tau, 7).eval(&one, &one), int(4278));
    }

    #[test]
    fn shards_sum_to_whole() {
        let tau = pat("1324");
        for shards in [1, 3, 7] {
            let merged = shard_ranges(6, shards)
                .into_iter()
                .fold(PolyXY::new(), |acc, r| acc + brute_nm_shard(&tau, 6, r));
            assert_eq!(merged, brute_nm_poly(&tau, 6));
        }
    }

    #[test]
    fn cycle_poly_counts_cycles() {
        // (n-1)! cycles when τ is longer than n.
        let p = brute_cycle_poly(&pat("123456"), 5);
        assert_eq!(p.coefficient_sum(), int(24));
        assert_eq!(brute_cycle_poly(&pat("12"), 1), "y".parse().unwrap());
    }
}

//! Filled brick tabloids, the sign-reversing involution on them, and the
//! tabloid expansion of `n!·θ_τ(h_n)`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::brute::brute_nm_poly;
use crate::algebra::{int, PolyY, Y};
use crate::error::{Error, Result};
use crate::permcore::{factorial, permutations_in_range, Pattern, Permutations};

pub const DEFAULT_OBJECT_BOUND: usize = 7;

/// A composition of `n` into brick lengths, read left to right.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BrickTabloid {
    lengths: Vec<usize>,
}

impl BrickTabloid {
    pub fn new(lengths: Vec<usize>) -> Result<Self> {
        if lengths.contains(&0) {
            return Err(Error::invalid("bricks must have length at least 1"));
        }
        Ok(BrickTabloid { lengths })
    }

    pub fn lengths(&self) -> &[usize] {
        &self.lengths
    }

    pub fn n(&self) -> usize {
        self.lengths.iter().sum()
    }

    pub fn brick_count(&self) -> usize {
        self.lengths.len()
    }

    /// `n! / (b_1! ⋯ b_ℓ!)`: the number of ways to hand value sets to the bricks.
    pub fn multinomial(&self) -> BigInt {
        let mut out = crate::algebra::factorial_big(self.n() as u64);
        for &b in &self.lengths {
            out /= crate::algebra::factorial_big(b as u64);
        }
        out
    }
}

/// A brick tabloid with a filling of `{1..n}` in which every brick is τ-free.
///
/// A cell carries a `y` label when it starts a descent inside its brick and
/// a `-y` label when it ends a brick.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FilledObject {
    cells: Vec<u32>,
    lengths: Vec<usize>,
}

impl FilledObject {
    pub fn new(cells: Vec<u32>, lengths: Vec<usize>, tau: &Pattern) -> Result<Self> {
        if lengths.contains(&0) || lengths.iter().sum::<usize>() != cells.len() {
            return Err(Error::invalid(
                "brick lengths must be positive and sum to n",
            ));
        }
        crate::permcore::Permutation::new(cells.clone())?;
        let o = FilledObject { cells, lengths };
        if o.bricks().any(|b| tau.occurs_in(b)) {
            return Err(Error::invalid(format!("a brick contains a {tau}-match")));
        }
        Ok(o)
    }

    pub fn cells(&self) -> &[u32] {
        &self.cells
    }

    pub fn lengths(&self) -> &[usize] {
        &self.lengths
    }

    pub fn tabloid(&self) -> BrickTabloid {
        BrickTabloid {
            lengths: self.lengths.clone(),
        }
    }

    pub fn n(&self) -> usize {
        self.cells.len()
    }

    pub fn brick_count(&self) -> usize {
        self.lengths.len()
    }

    pub fn bricks(&self) -> impl Iterator<Item = &[u32]> + '_ {
        let mut start = 0;
        self.lengths.iter().map(move |&b| {
            let s = &self.cells[start..start + b];
            start += b;
            s
        })
    }

    /// 0-based index of the last cell of each brick.
    pub fn brick_ends(&self) -> Vec<usize> {
        self.lengths
            .iter()
            .scan(0, |end, &b| {
                *end += b;
                Some(*end - 1)
            })
            .collect()
    }

    fn end_flags(&self) -> Vec<bool> {
        let mut ends = vec![false; self.n()];
        for e in self.brick_ends() {
            ends[e] = true;
        }
        ends
    }

    /// 0-based cells carrying a label, in increasing order.
    pub fn labels(&self) -> Vec<usize> {
        let ends = self.end_flags();
        (0..self.n())
            .filter(|&c| ends[c] || self.cells[c] > self.cells[c + 1])
            .collect()
    }

    pub fn label_count(&self) -> usize {
        self.labels().len()
    }

    pub fn sign(&self) -> i64 {
        if self.brick_count().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// `sgn(O)·W(O)` as a polynomial in `y`.
    pub fn signed_weight(&self) -> PolyY {
        PolyY::monomial(Y(self.label_count() as u32), int(self.sign()))
    }
}

impl fmt::Display for FilledObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, b) in self.bricks().enumerate() {
            if i > 0 {
                f.write_str("|")?;
            }
            for (k, v) in b.iter().enumerate() {
                if k > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{v}")?;
            }
        }
        Ok(())
    }
}

fn require_one_descent_from_one(tau: &Pattern) -> Result<()> {
    if !tau.starts_with_one() || tau.descent_count() != 1 {
        return Err(Error::invalid(format!(
            "objects are defined for patterns starting with 1 with one descent; got {tau}"
        )));
    }
    Ok(())
}

/// Every object of size `n`, grouped by composition and then by filling
/// in lexicographic order.
pub struct Objects {
    tau: Pattern,
    n: usize,
    // Bit i set means a brick ends after cell i.
    mask: u64,
    perms: Permutations,
}

impl Iterator for Objects {
    type Item = FilledObject;

    fn next(&mut self) -> Option<FilledObject> {
        let n = self.n;
        while self.mask < 1u64 << (n - 1) {
            let lengths = lengths_of(self.mask, n);
            while let Some(w) = self.perms.next_entries() {
                let mut start = 0;
                let free = lengths.iter().all(|&b| {
                    let ok = !self.tau.occurs_in(&w[start..start + b]);
                    start += b;
                    ok
                });
                if free {
                    return Some(FilledObject {
                        cells: w.to_vec(),
                        lengths,
                    });
                }
            }
            self.mask += 1;
            self.perms = permutations_in_range(n, 0..factorial(n));
        }
        None
    }
}

fn lengths_of(mask: u64, n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut len = 0;
    for i in 0..n {
        len += 1;
        if i + 1 == n || mask & (1 << i) != 0 {
            out.push(len);
            len = 0;
        }
    }
    out
}

/// Enumerates `𝒪_{τ,n}` for `n ≤ bound`.
pub fn enumerate_objects(tau: &Pattern, n: usize, bound: usize) -> Result<Objects> {
    require_one_descent_from_one(tau)?;
    if n > bound {
        return Err(Error::ResourceLimit {
            what: "object enumeration size",
            value: n,
            limit: bound,
        });
    }
    if n == 0 {
        return Err(Error::invalid("objects need n >= 1"));
    }
    Ok(Objects {
        tau: tau.clone(),
        n,
        mask: 0,
        perms: permutations_in_range(n, 0..factorial(n)),
    })
}

fn merged_is_free(o: &FilledObject, tau: &Pattern, brick: usize) -> bool {
    let start: usize = o.lengths[..brick].iter().sum();
    let end = start + o.lengths[brick] + o.lengths[brick + 1];
    !tau.occurs_in(&o.cells[start..end])
}

/// `I_τ`: scan cells left to right and act on the first cell that is
/// either a `y`-labelled descent inside a brick (split after it) or a brick
/// end above the next brick's first entry whose two bricks merge τ-free
/// (combine them). Fixed points are returned unchanged.
pub fn involution(o: &FilledObject, tau: &Pattern) -> FilledObject {
    let ends = o.end_flags();
    let mut brick = 0;
    let mut offset = 0;
    for c in 0..o.n().saturating_sub(1) {
        if o.cells[c] > o.cells[c + 1] {
            if !ends[c] {
                let mut lengths = o.lengths.clone();
                let head = c + 1 - offset;
                lengths[brick] = head;
                lengths.insert(brick + 1, o.lengths[brick] - head);
                return FilledObject {
                    cells: o.cells.clone(),
                    lengths,
                };
            }
            if merged_is_free(o, tau, brick) {
                let mut lengths = o.lengths.clone();
                lengths[brick] += lengths.remove(brick + 1);
                return FilledObject {
                    cells: o.cells.clone(),
                    lengths,
                };
            }
        }
        if ends[c] {
            offset += o.lengths[brick];
            brick += 1;
        }
    }
    o.clone()
}

/// The three properties every fixed point must have.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FixedPointCheck {
    pub increasing_bricks: bool,
    pub increasing_minima: bool,
    pub junctions_blocked: bool,
}

impl FixedPointCheck {
    pub fn all(&self) -> bool {
        self.increasing_bricks && self.increasing_minima && self.junctions_blocked
    }
}

/// Checks (1) every brick increases, (2) the first entries of the bricks
/// increase, and (3) each junction is an ascent or a descent with a τ-match
/// inside the union of the two bricks.
pub fn fixed_point_check(o: &FilledObject, tau: &Pattern) -> FixedPointCheck {
    let bricks: Vec<&[u32]> = o.bricks().collect();
    let increasing_bricks = bricks.iter().all(|b| b.windows(2).all(|w| w[0] < w[1]));
    let increasing_minima = bricks.windows(2).all(|w| w[0][0] < w[1][0]);
    let junctions_blocked = (0..bricks.len().saturating_sub(1)).all(|i| {
        let (a, b) = (bricks[i], bricks[i + 1]);
        a[a.len() - 1] < b[0] || !merged_is_free(o, tau, i)
    });
    FixedPointCheck {
        increasing_bricks,
        increasing_minima,
        junctions_blocked,
    }
}

/// Number of distinct left-to-right arrangements of the multiset `lambda`
/// as a tiling of length `n`; zero when the parts do not sum to `n`.
pub fn brick_tabloid_count(lambda: &[usize], n: usize) -> BigInt {
    if lambda.iter().sum::<usize>() != n || lambda.contains(&0) {
        return BigInt::zero();
    }
    let mut mult: BTreeMap<usize, u64> = BTreeMap::new();
    for &b in lambda {
        *mult.entry(b).or_default() += 1;
    }
    let mut out = crate::algebra::factorial_big(lambda.len() as u64);
    for m in mult.values() {
        out /= crate::algebra::factorial_big(*m);
    }
    out
}

/// Partitions of `n` as nondecreasing part lists.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, min: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for part in min..=rest {
            cur.push(part);
            go(rest - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, 1, &mut Vec::new(), &mut out);
    out
}

/// The distinct brick tabloids whose bricks are the parts of `lambda`.
pub fn brick_tabloids(lambda: &[usize]) -> Vec<BrickTabloid> {
    let mut parts = lambda.to_vec();
    parts.sort_unstable();
    let mut out = vec![BrickTabloid {
        lengths: parts.clone(),
    }];
    let mut word: Vec<u32> = parts.iter().map(|&b| b as u32).collect();
    while crate::permcore::next_permutation(&mut word) {
        out.push(BrickTabloid {
            lengths: word.iter().map(|&b| b as usize).collect(),
        });
    }
    out
}

/// `n!·θ_τ(h_n)` computed as a signed sum over brick tabloids, each brick
/// weighted by `NM_{τ,b}(1,y)` from the brute-force oracle.
pub fn theta_h(tau: &Pattern, n: usize) -> PolyY {
    if n == 0 {
        return PolyY::one();
    }
    let one = BigRational::one();
    let factors: Vec<PolyY> = (0..=n)
        .map(|b| brute_nm_poly(tau, b).eval_x(&one))
        .collect();
    let mut total = PolyY::new();
    for mu in partitions(n) {
        let sign = if mu.len() % 2 == 0 { 1 } else { -1 };
        for tabloid in brick_tabloids(&mu) {
            let weight = BigRational::from_integer(tabloid.multinomial() * sign);
            let product = tabloid
                .lengths()
                .iter()
                .fold(PolyY::constant(weight), |acc, &b| acc * factors[b].clone());
            total = total + product;
        }
    }
    total
}

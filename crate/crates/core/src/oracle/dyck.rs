use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::permcore::Pattern;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Step {
    Up,
    Down,
}

/// A Dyck path of length `2k - 2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DyckPath {
    steps: Vec<Step>,
}

impl DyckPath {
    pub fn new(steps: Vec<Step>) -> Result<Self> {
        let mut height: i64 = 0;
        for s in &steps {
            height += if *s == Step::Up { 1 } else { -1 };
            if height < 0 {
                return Err(Error::invalid("Dyck path goes below the axis"));
            }
        }
        if height != 0 {
            return Err(Error::invalid("Dyck path must end on the axis"));
        }
        Ok(DyckPath { steps })
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn semilength(&self) -> usize {
        self.steps.len() / 2
    }

    /// The `k` with path length `2k - 2`.
    pub fn k(&self) -> usize {
        self.semilength() + 1
    }
}

impl fmt::Display for DyckPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            f.write_str(if *s == Step::Up { "U" } else { "D" })?;
        }
        Ok(())
    }
}

impl FromStr for DyckPath {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let steps = s
            .trim()
            .chars()
            .map(|c| match c {
                'U' | 'u' => Ok(Step::Up),
                'D' | 'd' => Ok(Step::Down),
                other => Err(Error::invalid(format!("unknown Dyck step {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        DyckPath::new(steps)
    }
}

/// All Dyck paths of semilength `m`, in lexicographic order with `U < D`.
pub fn dyck_paths(m: usize) -> Vec<DyckPath> {
    fn go(up: usize, down: usize, m: usize, cur: &mut Vec<Step>, out: &mut Vec<DyckPath>) {
        if down == m {
            out.push(DyckPath { steps: cur.clone() });
            return;
        }
        if up < m {
            cur.push(Step::Up);
            go(up + 1, down, m, cur, out);
            cur.pop();
        }
        if down < up {
            cur.push(Step::Down);
            go(up, down + 1, m, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, 0, m, &mut Vec::new(), &mut out);
    out
}

/// Labels the steps `2..=2k-1` and interleaves `c_1 d_1 … c_k d_k` with
/// `c_1 = 1`, the up labels as `c_2..c_k`, the down labels as
/// `d_1..d_{k-1}`, and `d_k = 2k`.
pub fn phi(path: &DyckPath) -> Vec<u32> {
    let k = path.k();
    let mut c = vec![1u32];
    let mut d = Vec::with_capacity(k);
    for (i, s) in path.steps.iter().enumerate() {
        let label = i as u32 + 2;
        match s {
            Step::Up => c.push(label),
            Step::Down => d.push(label),
        }
    }
    d.push(2 * k as u32);
    c.into_iter().zip(d).flat_map(|(a, b)| [a, b]).collect()
}

/// Checks conditions (i)–(v) on `c_1 d_1 … c_k d_k`.
pub fn check_sequence(seq: &[u32]) -> Result<()> {
    if seq.is_empty() || !seq.len().is_multiple_of(2) {
        return Err(Error::invalid("sequence must have even positive length 2k"));
    }
    let k = seq.len() / 2;
    let c = |i: usize| seq[2 * (i - 1)];
    let d = |i: usize| seq[2 * (i - 1) + 1];
    let mut sorted = seq.to_vec();
    sorted.sort_unstable();
    let conditions = [
        (c(1) == 1, "c_1 = 1"),
        (k < 2 || c(2) == 2, "c_2 = 2"),
        (d(k) == 2 * k as u32, "d_k = 2k"),
        (
            sorted.iter().copied().eq(1..=2 * k as u32),
            "values are 1..2k",
        ),
    ];
    for (ok, what) in conditions {
        if !ok {
            return Err(Error::invalid(format!("sequence violates {what}")));
        }
    }
    let tau: Pattern = "1324".parse().expect("pattern literal");
    for i in 1..k {
        if !tau.matches_window(&[c(i), d(i), c(i + 1), d(i + 1)]) {
            return Err(Error::invalid(format!(
                "quadruple at i = {i} does not reduce to 1324"
            )));
        }
    }
    Ok(())
}

pub fn phi_inverse(seq: &[u32]) -> Result<DyckPath> {
    check_sequence(seq)?;
    let k = seq.len() / 2;
    let mut steps = vec![Step::Down; 2 * k - 2];
    for &c in seq.iter().step_by(2).skip(1) {
        steps[c as usize - 2] = Step::Up;
    }
    DyckPath::new(steps)
}

/// Every sequence satisfying (i)–(v) for this `k`, found by backtracking
/// over candidate values without reference to Dyck paths.
pub fn catalan_sequences(k: usize) -> Vec<Vec<u32>> {
    fn go(seq: &mut Vec<u32>, used: &mut [bool], k: usize, out: &mut Vec<Vec<u32>>) {
        if seq.len() == 2 * k {
            if check_sequence(seq).is_ok() {
                out.push(seq.clone());
            }
            return;
        }
        for v in 1..=2 * k as u32 {
            if used[v as usize] {
                continue;
            }
            seq.push(v);
            if prefix_ok(seq, k) {
                used[v as usize] = true;
                go(seq, used, k, out);
                used[v as usize] = false;
            }
            seq.pop();
        }
    }
    fn prefix_ok(seq: &[u32], k: usize) -> bool {
        let len = seq.len();
        let last = seq[len - 1];
        match len {
            1 => return last == 1,
            3 => return last == 2,
            _ => {}
        }
        if len == 2 * k && last != 2 * k as u32 {
            return false;
        }
        if len >= 4 && len.is_multiple_of(2) {
            let w = &seq[len - 4..];
            return w[0] < w[2] && w[2] < w[1] && w[1] < w[3];
        }
        true
    }
    let mut out = Vec::new();
    if k == 0 {
        return out;
    }
    go(&mut Vec::new(), &mut vec![false; 2 * k + 1], k, &mut out);
    out
}

//! Transcribed `U_{1324…p,n}(y)` tables and `NM_{1324…p}` coefficients for
//! `p = 4..=7`.

use crate::algebra::{PolyXY, PolyY};
use crate::error::{Error, Result};

pub const GOLDEN_P: [usize; 4] = [4, 5, 6, 7];

const U_DATA: [&str; 4] = [
    include_str!("../data/u_1324.txt"),
    include_str!("../data/u_13245.txt"),
    include_str!("../data/u_132456.txt"),
    include_str!("../data/u_1324567.txt"),
];

const NM_DATA: [&str; 4] = [
    include_str!("../data/nm_1324.txt"),
    include_str!("../data/nm_13245.txt"),
    include_str!("../data/nm_132456.txt"),
    include_str!("../data/nm_1324567.txt"),
];

fn slot(p: usize) -> Result<usize> {
    GOLDEN_P
        .iter()
        .position(|&q| q == p)
        .ok_or_else(|| Error::OutOfRange(format!("no golden table for p = {p}")))
}

fn rows<T: std::str::FromStr<Err = Error>>(text: &str) -> Result<Vec<(usize, T)>> {
    text.lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|l| {
            let (n, poly) = l
                .split_once('\t')
                .ok_or_else(|| Error::invalid(format!("malformed golden row {l:?}")))?;
            let n = n
                .trim()
                .parse()
                .map_err(|_| Error::invalid(format!("bad row index {n:?}")))?;
            Ok((n, poly.parse()?))
        })
        .collect()
}

/// `(n, U_{1324…p,n}(y))` for `n = 1..=11`.
pub fn u_table(p: usize) -> Result<Vec<(usize, PolyY)>> {
    rows(U_DATA[slot(p)?])
}

/// `(n, n! [t^n] NM_{1324…p}(t,x,y))` for `n = 0..=8`.
pub fn nm_table(p: usize) -> Result<Vec<(usize, PolyXY)>> {
    rows(NM_DATA[slot(p)?])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tables_parse() {
        for p in GOLDEN_P {
            let u = u_table(p).unwrap();
            assert_eq!(u.len(), 11);
            assert_eq!(u[0].1, "-y".parse().unwrap());
            let nm = nm_table(p).unwrap();
            assert_eq!(
                nm.iter().map(|r| r.0).collect::<Vec<_>>(),
                (0..=8).collect::<Vec<_>>()
            );
        }
        assert!(u_table(8).is_err());
    }
}

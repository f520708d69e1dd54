//! Smith normal form over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{dim, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    pub rows: Vec<Vec<BigInt>>,
}

impl IntMatrix {
    pub fn new(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != c) {
            return Err(dim("ragged integer matrix"));
        }
        Ok(Self { rows })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self { rows: rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect() }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.rows.first().map_or(0, Vec::len)
    }

    pub fn to_rational(&self) -> super::matrix::RatMatrix {
        let rows = self
            .rows
            .iter()
            .map(|r| r.iter().map(|v| BigRational::from_integer(v.clone())).collect())
            .collect();
        super::matrix::RatMatrix::from_rows(rows).expect("rectangular")
    }

    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self {
            rows: rows
                .iter()
                .map(|&r| cols.iter().map(|&c| self.rows[r][c].clone()).collect())
                .collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        if self.ncols() != o.nrows() {
            return Err(dim("integer matrix product shape mismatch"));
        }
        let out = self
            .rows
            .iter()
            .map(|row| {
                (0..o.ncols())
                    .map(|j| row.iter().zip(&o.rows).map(|(a, b)| a * &b[j]).sum())
                    .collect()
            })
            .collect();
        Ok(Self { rows: out })
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().flatten().all(Zero::is_zero)
    }
}

/// Invariant factors `d_1 | d_2 | …`, one per diagonal position
/// (`min(rows, cols)` entries, trailing zeros for rank deficiency).
pub fn smith_normal_form(m: &IntMatrix) -> Vec<BigInt> {
    let mut a = m.rows.clone();
    let nr = m.nrows();
    let nc = m.ncols();
    let size = nr.min(nc);
    for t in 0..size {
        // pivot: smallest nonzero magnitude in the trailing block
        let Some((pr, pc)) = smallest_entry(&a, t) else {
            break;
        };
        a.swap(t, pr);
        for row in a.iter_mut() {
            row.swap(t, pc);
        }
        loop {
            let mut done = true;
            for r in t + 1..nr {
                if a[r][t].is_zero() {
                    continue;
                }
                let q = a[r][t].div_floor(&a[t][t]);
                for c in t..nc {
                    let v = &a[r][c] - &q * &a[t][c];
                    a[r][c] = v;
                }
                if !a[r][t].is_zero() {
                    done = false;
                }
            }
            for c in t + 1..nc {
                if a[t][c].is_zero() {
                    continue;
                }
                let q = a[t][c].div_floor(&a[t][t]);
                for row in a.iter_mut().skip(t) {
                    let v = &row[c] - &q * &row[t];
                    row[c] = v;
                }
                if !a[t][c].is_zero() {
                    done = false;
                }
            }
            if done {
                // divisibility: fold a non-divisible entry into the pivot row
                let bad = (t + 1..nr)
                    .flat_map(|r| (t + 1..nc).map(move |c| (r, c)))
                    .find(|&(r, c)| !(&a[r][c] % &a[t][t]).is_zero());
                match bad {
                    Some((r, _)) => {
                        for c in t..nc {
                            let v = &a[t][c] + &a[r][c];
                            a[t][c] = v;
                        }
                    }
                    None => break,
                }
            }
            if let Some((pr, pc)) = smallest_entry_in_cross(&a, t) {
                a.swap(t, pr);
                for row in a.iter_mut() {
                    row.swap(t, pc);
                }
            }
        }
    }
    (0..size).map(|i| a[i][i].abs()).collect()
}

fn smallest_entry(a: &[Vec<BigInt>], t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (r, row) in a.iter().enumerate().skip(t) {
        for (c, v) in row.iter().enumerate().skip(t) {
            if v.is_zero() {
                continue;
            }
            if best.map_or(true, |(br, bc)| v.abs() < a[br][bc].abs()) {
                best = Some((r, c));
            }
        }
    }
    best
}

/// Smallest nonzero entry in row `t` or column `t` beyond the corner.
fn smallest_entry_in_cross(a: &[Vec<BigInt>], t: usize) -> Option<(usize, usize)> {
    let mut best = (t, t);
    for r in t + 1..a.len() {
        if !a[r][t].is_zero() && a[r][t].abs() < a[best.0][best.1].abs() {
            best = (r, t);
        }
    }
    for c in t + 1..a[t].len() {
        if !a[t][c].is_zero() && a[t][c].abs() < a[best.0][best.1].abs() {
            best = (t, c);
        }
    }
    (best != (t, t)).then_some(best)
}

/// Order of the cokernel of a square nonsingular matrix; `None` if singular.
pub fn cokernel_order(m: &IntMatrix) -> Option<BigInt> {
    let f = smith_normal_form(m);
    if f.len() != m.nrows() || f.iter().any(Zero::is_zero) {
        return None;
    }
    Some(f.iter().fold(BigInt::one(), |acc, d| acc * d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_examples() {
        assert_eq!(smith_normal_form(&IntMatrix::from_i64(&[&[1, 0], &[0, 1]])), ints(&[1, 1]));
        assert_eq!(smith_normal_form(&IntMatrix::from_i64(&[&[2, 4], &[6, 8]])), ints(&[2, 4]));
        assert_eq!(smith_normal_form(&IntMatrix::from_i64(&[&[2, 0], &[0, 3]])), ints(&[1, 6]));
        assert_eq!(smith_normal_form(&IntMatrix::from_i64(&[&[0, 0], &[0, 0]])), ints(&[0, 0]));
    }

    #[test]
    fn rectangular_and_rank_deficient() {
        let m = IntMatrix::from_i64(&[&[2, 4, 6], &[4, 8, 12]]);
        assert_eq!(smith_normal_form(&m), ints(&[2, 0]));
        assert_eq!(cokernel_order(&IntMatrix::from_i64(&[&[1, 2], &[2, 4]])), None);
    }

    proptest! {
        #[test]
        fn chain_and_determinant(n in 1usize..=6, seed in prop::collection::vec(-5i64..6, 36)) {
            let rows: Vec<Vec<BigInt>> = (0..n)
                .map(|r| (0..n).map(|c| BigInt::from(seed[r * 6 + c])).collect())
                .collect();
            let m = IntMatrix::new(rows).unwrap();
            let f = smith_normal_form(&m);
            for w in f.windows(2) {
                if !w[0].is_zero() {
                    prop_assert!((&w[1] % &w[0]).is_zero());
                } else {
                    prop_assert!(w[1].is_zero());
                }
            }
            let det = m.to_rational().det().unwrap();
            let prod: BigInt = f.iter().product();
            prop_assert_eq!(BigRational::from_integer(prod), det.abs());
        }
    }
}

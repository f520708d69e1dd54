//! Seeded samplers for randomized checks.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::matrix::RatMatrix;

pub type SeededRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small_int(rng: &mut SeededRng, bound: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(rng.gen_range(-bound..=bound)))
}

pub fn nonzero_int(rng: &mut SeededRng, bound: i64) -> BigRational {
    loop {
        let v = small_int(rng, bound);
        if !v.is_zero() {
            return v;
        }
    }
}

/// `p/q` with `|p| ≤ bound`, `1 ≤ q ≤ 4`.
pub fn small_rational(rng: &mut SeededRng, bound: i64) -> BigRational {
    let p = rng.gen_range(-bound..=bound);
    let q = rng.gen_range(1..=4);
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub fn nonzero_rational(rng: &mut SeededRng, bound: i64) -> BigRational {
    loop {
        let v = small_rational(rng, bound);
        if !v.is_zero() {
            return v;
        }
    }
}

pub fn rational_vector(rng: &mut SeededRng, len: usize, bound: i64) -> Vec<BigRational> {
    (0..len).map(|_| small_rational(rng, bound)).collect()
}

/// Integer matrix of full row rank with entries in `[-bound, bound]`.
pub fn random_full_rank(rng: &mut SeededRng, rows: usize, cols: usize, bound: i64) -> RatMatrix {
    loop {
        let entries = (0..rows * cols).map(|_| small_int(rng, bound)).collect();
        let m = RatMatrix::from_vec(rows, cols, entries).expect("shape");
        if m.rank() == rows.min(cols) {
            return m;
        }
    }
}

/// Full row rank matrix in which each entry is zero with probability
/// `zero_prob`, with no zero column.
pub fn random_sparse_full_rank(
    rng: &mut SeededRng,
    rows: usize,
    cols: usize,
    bound: i64,
    zero_prob: f64,
) -> RatMatrix {
    loop {
        let entries = (0..rows * cols)
            .map(|_| if rng.gen_bool(zero_prob) { BigRational::zero() } else { nonzero_int(rng, bound) })
            .collect();
        let m = RatMatrix::from_vec(rows, cols, entries).expect("shape");
        let no_zero_col = (0..cols).all(|c| (0..rows).any(|r| !m.get(r, c).is_zero()));
        if no_zero_col && m.rank() == rows {
            return m;
        }
    }
}

/// Full row rank integer matrix whose maximal minors are all nonzero.
pub fn random_full_support(rng: &mut SeededRng, rows: usize, cols: usize, bound: i64) -> RatMatrix {
    loop {
        let m = random_full_rank(rng, rows, cols, bound);
        let p = crate::exterior::PlueckerVector::from_matrix(&m).expect("full rank");
        if p.has_full_support() {
            return m;
        }
    }
}

/// A random integer combination of the rows of `m`.
pub fn point_in_rowspan(rng: &mut SeededRng, m: &RatMatrix, bound: i64) -> Vec<BigRational> {
    let coeffs: Vec<BigRational> = (0..m.rows()).map(|_| nonzero_int(rng, bound)).collect();
    (0..m.cols()).map(|c| (0..m.rows()).map(|r| &coeffs[r] * m.get(r, c)).sum()).collect()
}

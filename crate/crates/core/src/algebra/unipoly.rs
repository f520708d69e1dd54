//! Univariate polynomials over ℚ, Sturm sequences, binary forms and the
//! Sylvester resultant.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::matrix::RatMatrix;
use super::rational::to_short;
use crate::error::{dim, pre, Result};

/// Coefficients lowest degree first; no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UniPoly {
    coeffs: Vec<BigRational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&v| BigRational::from_integer(v.into())).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn leading(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(i.into()))
                .collect(),
        )
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let z = BigRational::zero();
        Self::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&z) + o.coeffs.get(i).unwrap_or(&z))
                .collect(),
        )
    }

    pub fn neg(&self) -> Self {
        Self { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        self.scale(&self.leading().recip())
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lc = d.leading();
        let mut rem = self.coeffs.clone();
        let mut quo = vec![BigRational::zero(); rem.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let k = rem.len() - 1 - dd;
            let f = rem.last().unwrap() / &lc;
            for (i, c) in d.coeffs.iter().enumerate() {
                rem[k + i] -= &f * c;
            }
            quo[k] = f;
            rem.pop();
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        (Self::new(quo), Self::new(rem))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `p / gcd(p, p′)`.
    pub fn squarefree_part(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return self.clone();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).degree() == Some(0)
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => to_short(c),
                1 => format!("{}*y", to_short(c)),
                _ => format!("{}*y^{i}", to_short(c)),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

fn sign_changes(values: &[i8]) -> usize {
    let nz: Vec<i8> = values.iter().copied().filter(|&s| s != 0).collect();
    nz.windows(2).filter(|w| w[0] != w[1]).count()
}

fn sign_of(r: &BigRational) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

/// Number of distinct real roots, by a Sturm sequence on the squarefree part.
pub fn sturm_real_roots(p: &UniPoly) -> Result<usize> {
    if p.is_zero() {
        return Err(pre("Sturm count of the zero polynomial"));
    }
    let sf = p.squarefree_part();
    let mut seq = vec![sf.clone(), sf.derivative()];
    while !seq.last().unwrap().is_zero() {
        let n = seq.len();
        let r = seq[n - 2].div_rem(&seq[n - 1]).1.neg();
        seq.push(r);
    }
    seq.pop();
    let at_pos: Vec<i8> = seq.iter().map(|q| sign_of(&q.leading())).collect();
    let at_neg: Vec<i8> = seq
        .iter()
        .map(|q| {
            let s = sign_of(&q.leading());
            if q.degree().unwrap_or(0) % 2 == 1 {
                -s
            } else {
                s
            }
        })
        .collect();
    Ok(sign_changes(&at_neg) - sign_changes(&at_pos))
}

/// A binary form of degree `m`; `coeffs[i]` multiplies `s^{m-i} t^i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryForm {
    pub coeffs: Vec<BigRational>,
}

impl BinaryForm {
    pub fn new(coeffs: Vec<BigRational>) -> Self {
        Self { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Product of linear forms `a_j s + b_j t`.
    pub fn product_of_linear(factors: &[(BigRational, BigRational)]) -> Self {
        let mut acc = vec![BigRational::one()];
        for (a, b) in factors {
            let mut next = vec![BigRational::zero(); acc.len() + 1];
            for (i, c) in acc.iter().enumerate() {
                next[i] += c * a;
                next[i + 1] += c * b;
            }
            acc = next;
        }
        Self { coeffs: acc }
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        if self.coeffs.len() != o.coeffs.len() {
            return Err(dim("binary forms of different degree"));
        }
        Ok(Self { coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect() })
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        Self { coeffs: self.coeffs.iter().map(|c| c * s).collect() }
    }

    /// Dehomogenize at `t = 1`: a polynomial in `s`.
    pub fn dehomogenize(&self) -> UniPoly {
        let mut c = self.coeffs.clone();
        c.reverse();
        UniPoly::new(c)
    }

    /// Multiplicity of the root `[s:t] = [1:0]`, which the dehomogenization
    /// at `t = 1` loses: the number of leading coefficients that vanish.
    pub fn multiplicity_at_infinity(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }
}

/// Sylvester matrix of coefficient lists in descending order.
pub fn sylvester_matrix<T: Clone>(f: &[T], g: &[T], zero: T) -> Vec<Vec<T>> {
    let m = f.len() - 1;
    let p = g.len() - 1;
    let size = m + p;
    let mut rows = Vec::with_capacity(size);
    for i in 0..p {
        let mut row = vec![zero.clone(); size];
        row[i..i + f.len()].clone_from_slice(f);
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![zero.clone(); size];
        row[i..i + g.len()].clone_from_slice(g);
        rows.push(row);
    }
    rows
}

/// Resultant of two binary forms of equal degree.
pub fn sylvester_resultant(f: &BinaryForm, g: &BinaryForm) -> Result<BigRational> {
    if f.degree() != g.degree() {
        return Err(dim(format!(
            "Sylvester resultant of forms of degrees {} and {}",
            f.degree(),
            g.degree()
        )));
    }
    if f.degree() == 0 {
        return Ok(BigRational::one());
    }
    let rows = sylvester_matrix(&f.coeffs, &g.coeffs, BigRational::zero());
    RatMatrix::from_rows(rows)?.det()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::int;
    use proptest::prelude::*;

    #[test]
    fn sturm_examples() {
        assert_eq!(sturm_real_roots(&UniPoly::from_i64(&[-6, 11, -6, 1])).unwrap(), 3);
        assert_eq!(sturm_real_roots(&UniPoly::from_i64(&[1, 0, 1])).unwrap(), 0);
        assert_eq!(sturm_real_roots(&UniPoly::from_i64(&[0, 0, 1])).unwrap(), 1);
        assert!(sturm_real_roots(&UniPoly::zero()).is_err());
        assert_eq!(sturm_real_roots(&UniPoly::from_i64(&[5])).unwrap(), 0);
    }

    #[test]
    fn squarefree_strips_multiplicity() {
        // (y-1)^2 (y+2)
        let p = UniPoly::from_i64(&[2, -3, 0, 1]);
        assert_eq!(p.squarefree_part().monic(), UniPoly::from_i64(&[-2, 1, 1]));
        assert!(!p.is_squarefree());
    }

    #[test]
    fn resultant_examples() {
        let f = BinaryForm::new(vec![int(1), int(-1)]);
        let g = BinaryForm::new(vec![int(1), int(1)]);
        assert_eq!(sylvester_resultant(&f, &g).unwrap(), int(2));
        assert_eq!(sylvester_resultant(&f, &f).unwrap(), int(0));
        // s t + t^2 versus s^2
        let a = BinaryForm::new(vec![int(0), int(1), int(1)]);
        let b = BinaryForm::new(vec![int(1), int(0), int(0)]);
        assert_eq!(sylvester_resultant(&a, &b).unwrap().abs(), int(1));
        assert!(sylvester_resultant(&a, &f).is_err());
    }

    #[test]
    fn product_of_linear_forms() {
        // (s + t)(s - t) = s^2 - t^2
        let p = BinaryForm::product_of_linear(&[(int(1), int(1)), (int(1), int(-1))]);
        assert_eq!(p.coeffs, vec![int(1), int(0), int(-1)]);
    }

    fn roots_poly(roots: &[i64]) -> UniPoly {
        roots
            .iter()
            .fold(UniPoly::from_i64(&[1]), |acc, &r| acc.mul(&UniPoly::from_i64(&[-r, 1])))
    }

    proptest! {
        #[test]
        fn sturm_is_additive_on_coprime_factors(
            r in prop::collection::btree_set(-8i64..8, 1..4),
            c in 1i64..5,
        ) {
            let p = roots_poly(&r.iter().copied().collect::<Vec<_>>());
            let q = UniPoly::from_i64(&[c, 0, 1]);
            let pq = p.mul(&q);
            prop_assert_eq!(
                sturm_real_roots(&pq).unwrap(),
                sturm_real_roots(&p).unwrap() + sturm_real_roots(&q).unwrap()
            );
            prop_assert_eq!(sturm_real_roots(&p.mul(&p)).unwrap(), r.len());
        }

        #[test]
        fn div_rem_reconstructs(a in prop::collection::vec(-5i64..6, 1..6), b in prop::collection::vec(-5i64..6, 1..4)) {
            let a = UniPoly::from_i64(&a);
            let b = UniPoly::from_i64(&b);
            if !b.is_zero() {
                let (q, r) = a.div_rem(&b);
                prop_assert_eq!(q.mul(&b).add(&r), a);
                prop_assert!(r.degree().map_or(true, |d| d < b.degree().unwrap()) || b.degree() == Some(0) && r.is_zero());
            }
        }
    }
}

//! Determinants of matrices over polynomial rings.
//!
//! [`laplace_det`] expands along rows with memoised column-subset minors and
//! works over any [`DetRing`]. [`multilinear_det`] specialises to symmetric
//! matrices of sparse linear forms whose minors are known to be
//! multilinear, so products that repeat a variable are discarded as they
//! are formed.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, ToPrimitive, Zero};
use rayon::prelude::*;

use super::multipoly::{Monomial, MultiPoly};
use super::rational::to_f64;

pub trait DetRing: Clone + Send + Sync {
    fn zero_like(&self) -> Self;
    fn is_zero_elem(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
}

impl DetRing for MultiPoly {
    fn zero_like(&self) -> Self {
        MultiPoly::zero(self.vars().to_vec())
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn add(&self, o: &Self) -> Self {
        MultiPoly::add(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        MultiPoly::mul(self, o)
    }
    fn neg(&self) -> Self {
        MultiPoly::neg(self)
    }
}

impl DetRing for BigRational {
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
}

fn masks_of_size(k: usize, size: usize) -> Vec<u32> {
    (0u32..(1u32 << k)).filter(|m| m.count_ones() as usize == size).collect()
}

/// Determinant of a square matrix by row expansion over column subsets.
/// Suitable up to roughly 20 columns.
pub fn laplace_det<T: DetRing>(m: &[Vec<T>]) -> Option<T> {
    let k = m.len();
    let zero = m.first()?.first()?.zero_like();
    assert!(k <= 24 && m.iter().all(|r| r.len() == k), "square matrix of size <= 24");
    let mut prev: HashMap<u32, T> = (0..k)
        .filter(|&c| !m[0][c].is_zero_elem())
        .map(|c| (1u32 << c, m[0][c].clone()))
        .collect();
    for (r, row) in m.iter().enumerate().skip(1) {
        let masks = masks_of_size(k, r + 1);
        prev = masks
            .into_par_iter()
            .filter_map(|mask| {
                let mut acc = zero.clone();
                for (pos, c) in (0..k).filter(|c| mask >> c & 1 == 1).enumerate() {
                    if row[c].is_zero_elem() {
                        continue;
                    }
                    let Some(minor) = prev.get(&(mask & !(1 << c))) else {
                        continue;
                    };
                    let t = row[c].mul(minor);
                    acc = if (pos + r) % 2 == 0 { acc.add(&t) } else { acc.add(&t.neg()) };
                }
                (!acc.is_zero_elem()).then_some((mask, acc))
            })
            .collect();
    }
    Some(prev.remove(&((1u32 << k) - 1)).unwrap_or(zero))
}

/// Square matrix of polynomials over a shared variable table.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyMatrix {
    pub entries: Vec<Vec<MultiPoly>>,
}

impl PolyMatrix {
    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn det(&self) -> MultiPoly {
        laplace_det(&self.entries).expect("nonempty matrix")
    }

    pub fn is_symmetric(&self) -> bool {
        let k = self.size();
        (0..k).all(|i| (0..k).all(|j| self.entries[i][j].equals(&self.entries[j][i])))
    }

    pub fn eval(&self, point: &[BigRational]) -> crate::Result<super::matrix::RatMatrix> {
        let rows = self
            .entries
            .iter()
            .map(|r| r.iter().map(|p| p.eval(point)).collect::<crate::Result<Vec<_>>>())
            .collect::<crate::Result<Vec<_>>>()?;
        super::matrix::RatMatrix::from_rows(rows)
    }
}

/// Bitset over up to 256 variables, used as a squarefree monomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct VarSet([u64; 4]);

impl VarSet {
    pub const CAPACITY: usize = 256;

    pub fn single(i: usize) -> Self {
        let mut s = Self::default();
        s.0[i / 64] |= 1 << (i % 64);
        s
    }

    fn disjoint(&self, o: &Self) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a & b == 0)
    }

    fn union(&self, o: &Self) -> Self {
        Self([self.0[0] | o.0[0], self.0[1] | o.0[1], self.0[2] | o.0[2], self.0[3] | o.0[3]])
    }

    pub fn members(&self) -> Vec<usize> {
        (0..Self::CAPACITY).filter(|&i| self.0[i / 64] >> (i % 64) & 1 == 1).collect()
    }
}

/// Sparse linear form: `(variable, coefficient)` pairs.
pub type LinearForm<C> = Vec<(usize, C)>;

type Minor<C> = HashMap<VarSet, C>;

trait Coef: Clone + Zero + CheckedAdd + CheckedSub + CheckedMul + Send + Sync {}
impl<C: Clone + Zero + CheckedAdd + CheckedSub + CheckedMul + Send + Sync> Coef for C {}

fn multilinear_det_with<C: Coef>(m: &[Vec<LinearForm<C>>]) -> Option<Vec<(VarSet, C)>> {
    let k = m.len();
    let mut prev: HashMap<u32, Minor<C>> = HashMap::new();
    for c in 0..k {
        let mut minor = Minor::new();
        for (v, coef) in &m[0][c] {
            if !coef.is_zero() {
                minor.insert(VarSet::single(*v), coef.clone());
            }
        }
        if !minor.is_empty() {
            prev.insert(1 << c, minor);
        }
    }
    for (r, row) in m.iter().enumerate().skip(1) {
        let masks = masks_of_size(k, r + 1);
        let level: Option<Vec<(u32, Minor<C>)>> = masks
            .into_par_iter()
            .map(|mask| {
                let mut acc: Minor<C> = Minor::new();
                for (pos, c) in (0..k).filter(|c| mask >> c & 1 == 1).enumerate() {
                    let Some(minor) = prev.get(&(mask & !(1 << c))) else {
                        continue;
                    };
                    let negate = (pos + r) % 2 == 1;
                    for (v, a) in &row[c] {
                        let vs = VarSet::single(*v);
                        for (mono, b) in minor {
                            if !vs.disjoint(mono) {
                                continue;
                            }
                            let prod = a.checked_mul(b)?;
                            let slot = acc.entry(vs.union(mono)).or_insert_with(C::zero);
                            *slot = if negate { slot.checked_sub(&prod)? } else { slot.checked_add(&prod)? };
                        }
                    }
                }
                acc.retain(|_, c| !c.is_zero());
                Some((mask, acc))
            })
            .collect();
        prev = level?.into_iter().filter(|(_, mi)| !mi.is_empty()).collect();
    }
    let full = prev.remove(&((1u32 << k) - 1)).unwrap_or_default();
    let mut out: Vec<(VarSet, C)> = full.into_iter().collect();
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Some(out)
}

/// Multilinear part of the determinant of a matrix of integer linear forms.
///
/// Exact whenever every minor of the matrix is multilinear, which holds
/// for `Σ z_i w_i w_iᵀ` by Cauchy–Binet. Runs in `i128` and retries with
/// big integers on overflow.
pub fn multilinear_det(m: &[Vec<LinearForm<BigInt>>]) -> Vec<(VarSet, BigInt)> {
    if m.is_empty() {
        return vec![(VarSet::default(), BigInt::from(1))];
    }
    let small: Option<Vec<Vec<LinearForm<i128>>>> = m
        .iter()
        .map(|row| {
            row.iter()
                .map(|f| f.iter().map(|(v, c)| c.to_i128().map(|c| (*v, c))).collect())
                .collect()
        })
        .collect();
    if let Some(small) = small {
        if let Some(res) = multilinear_det_with(&small) {
            return res.into_iter().map(|(s, c)| (s, BigInt::from(c))).collect();
        }
    }
    multilinear_det_with(m).expect("big integers do not overflow")
}

/// Polynomial with `f64` coefficients keyed by exponent vector.
#[derive(Clone, Debug, PartialEq)]
pub struct FloatPoly {
    pub nvars: usize,
    pub terms: BTreeMap<Vec<u32>, f64>,
}

impl FloatPoly {
    pub fn zero(nvars: usize) -> Self {
        Self { nvars, terms: BTreeMap::new() }
    }

    pub fn from_multipoly(p: &MultiPoly) -> Self {
        let mut out = Self::zero(p.nvars());
        for (m, c) in p.terms() {
            out.terms.insert(m.0.clone(), to_f64(c));
        }
        out
    }

    pub fn scale(&self, s: f64) -> Self {
        Self { nvars: self.nvars, terms: self.terms.iter().map(|(k, v)| (k.clone(), v * s)).collect() }
    }

    pub fn eval(&self, point: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| c * e.iter().zip(point).map(|(&k, x)| x.powi(k as i32)).product::<f64>())
            .sum()
    }

    /// Euclidean norm of the coefficient vector.
    pub fn norm(&self) -> f64 {
        self.terms.values().map(|c| c * c).sum::<f64>().sqrt()
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
}

impl DetRing for FloatPoly {
    fn zero_like(&self) -> Self {
        Self::zero(self.nvars)
    }
    fn is_zero_elem(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (k, v) in &o.terms {
            *out.terms.entry(k.clone()).or_insert(0.0) += v;
        }
        out
    }
    fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero(self.nvars);
        for (ka, va) in &self.terms {
            for (kb, vb) in &o.terms {
                let k: Vec<u32> = ka.iter().zip(kb).map(|(a, b)| a + b).collect();
                *out.terms.entry(k).or_insert(0.0) += va * vb;
            }
        }
        out
    }
    fn neg(&self) -> Self {
        self.scale(-1.0)
    }
}

/// Converts a squarefree bitset term list into a `MultiPoly` over `vars`.
pub fn varsets_to_poly(vars: Vec<String>, terms: &[(VarSet, BigRational)]) -> MultiPoly {
    let n = vars.len();
    let mut p = MultiPoly::zero(vars);
    for (s, c) in terms {
        let mut e = vec![0u32; n];
        for i in s.members() {
            e[i] = 1;
        }
        p.add_term(Monomial(e), c.clone());
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::matrix::RatMatrix;
    use crate::algebra::rational::int;
    use proptest::prelude::*;

    #[test]
    fn laplace_matches_bareiss_on_rationals() {
        let m = RatMatrix::from_i64(&[&[3, -1, -1], &[-1, 3, -1], &[-1, -1, 3]]);
        assert_eq!(laplace_det(&m.row_vecs()).unwrap(), int(16));
    }

    #[test]
    fn symbolic_two_by_two() {
        let vars: Vec<String> = ["a", "b", "c", "d"].iter().map(|s| s.to_string()).collect();
        let v = |n: &str| MultiPoly::var(vars.clone(), n).unwrap();
        let m = PolyMatrix { entries: vec![vec![v("a"), v("b")], vec![v("c"), v("d")]] };
        assert_eq!(m.det(), v("a").mul(&v("d")).sub(&v("b").mul(&v("c"))));
    }

    #[test]
    fn multilinear_weighted_laplacian_of_triangle() {
        // path-graph Laplacian with edge weights z0, z1, z2 on K3, vertex 3 grounded
        let b = |v: i64| BigInt::from(v);
        let m = vec![
            vec![vec![(0, b(1)), (1, b(1))], vec![(0, b(-1))]],
            vec![vec![(0, b(-1))], vec![(0, b(1)), (2, b(1))]],
        ];
        let det = multilinear_det(&m);
        let sets: Vec<Vec<usize>> = det.iter().map(|(s, _)| s.members()).collect();
        assert_eq!(det.len(), 3);
        assert!(sets.contains(&vec![0, 1]) && sets.contains(&vec![0, 2]) && sets.contains(&vec![1, 2]));
        assert!(det.iter().all(|(_, c)| *c == b(1)));
    }

    proptest! {
        #[test]
        fn multilinear_agrees_with_generic(ws in prop::collection::vec(prop::collection::vec(-2i64..3, 3), 5)) {
            // Σ z_i w_i w_iᵀ for five vectors in ℚ³
            let k = 3;
            let nv = ws.len();
            let vars: Vec<String> = (0..nv).map(|i| format!("z{i}")).collect();
            let mut lin: Vec<Vec<LinearForm<BigInt>>> = vec![vec![Vec::new(); k]; k];
            let mut poly: Vec<Vec<MultiPoly>> = vec![vec![MultiPoly::zero(vars.clone()); k]; k];
            for (i, w) in ws.iter().enumerate() {
                let z = MultiPoly::var(vars.clone(), &vars[i]).unwrap();
                for r in 0..k {
                    for c in 0..k {
                        let coef = w[r] * w[c];
                        if coef != 0 {
                            lin[r][c].push((i, BigInt::from(coef)));
                            poly[r][c] = poly[r][c].add(&z.scale(&int(coef)));
                        }
                    }
                }
            }
            let fast = multilinear_det(&lin);
            let fast: Vec<(VarSet, BigRational)> = fast.into_iter().map(|(s, c)| (s, BigRational::from_integer(c))).collect();
            let fast = varsets_to_poly(vars.clone(), &fast);
            let slow = PolyMatrix { entries: poly }.det();
            prop_assert_eq!(fast, slow);
        }
    }
}

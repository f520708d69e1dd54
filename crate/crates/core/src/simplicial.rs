//! Boundary operators of the complete simplicial complex, its spanning
//! forests, and the monomial expansion of the Chow form in the uniform
//! case.
//!
//! `V` is the boundary matrix `∂_{d-1}` with the rows of faces containing
//! `n` deleted. A spanning forest is a set of columns `F` with `V_F`
//! nonsingular, and its coefficient is `c_F = det(V_F)²`, computed also
//! as the squared order of `coker V_F` via Smith normal form.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::algebra::matrix::RatMatrix;
use crate::algebra::multipoly::{Monomial, MultiPoly};
use crate::algebra::rational::binom;
use crate::algebra::snf::{cokernel_order, smith_normal_form, IntMatrix};
use crate::algebra::unipoly::BinaryForm;
use crate::detrep::{var_name, VectorTable};
use crate::error::{dim, internal, pre, Result};
use crate::exterior::{subsets, PlueckerVector, Subset};

/// Largest number of columns `C(n,d)` accepted by forest enumeration.
pub const FOREST_ENVELOPE: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryMatrix {
    pub n: usize,
    pub rows: Vec<Subset>,
    pub cols: Vec<Subset>,
    pub matrix: IntMatrix,
}

/// `∂_{d-1}`: rows are `(d-1)`-subsets, columns `d`-subsets; the entry at
/// `(J ∖ u_j, J)` is `(-1)^j` for the 0-based position `j`.
pub fn boundary_matrix(n: usize, d: usize) -> Result<BoundaryMatrix> {
    if d == 0 || d > n {
        return Err(dim(format!("boundary operator needs 1 <= d <= n, got d={d}, n={n}")));
    }
    let rows = subsets(n, d - 1);
    let cols = subsets(n, d);
    let mut m = vec![vec![BigInt::zero(); cols.len()]; rows.len()];
    for (c, face) in cols.iter().enumerate() {
        for (j, &u) in face.elems().iter().enumerate() {
            let r = face.without(u).rank(n);
            m[r][c] = if j % 2 == 0 { BigInt::one() } else { -BigInt::one() };
        }
    }
    Ok(BoundaryMatrix { n, rows, cols, matrix: IntMatrix::new(m)? })
}

impl BoundaryMatrix {
    /// Row indices of faces avoiding `n`.
    pub fn reduced_rows(&self) -> Vec<usize> {
        (0..self.rows.len()).filter(|&r| !self.rows[r].contains(self.n)).collect()
    }

    /// The matrix `V`.
    pub fn reduced(&self) -> IntMatrix {
        let cols: Vec<usize> = (0..self.cols.len()).collect();
        self.matrix.select(&self.reduced_rows(), &cols)
    }
}

/// Closed-form vectors for the uniform matroid: `v_I = e_{I∖n}` when
/// `n ∈ I`, otherwise `Σ_{i∈I} (-1)^{pos(i)} e_{I∖i}` with 1-based positions.
pub fn uniform_v_vectors(n: usize, d: usize) -> Result<VectorTable> {
    if d < 2 || d >= n {
        return Err(dim(format!("closed form needs 2 <= d < n, got d={d}, n={n}")));
    }
    let coords = subsets(n - 1, d - 1);
    let k = coords.len();
    let labels = subsets(n, d);
    let vectors = labels
        .iter()
        .map(|set| {
            let mut v = vec![BigRational::zero(); k];
            if set.contains(n) {
                v[set.without(n).rank(n - 1)] = BigRational::one();
            } else {
                for (pos, &i) in set.elems().iter().enumerate() {
                    let sign = if (pos + 1) % 2 == 0 { 1 } else { -1 };
                    v[set.without(i).rank(n - 1)] = BigRational::from_integer(sign.into());
                }
            }
            v
        })
        .collect();
    let facets = labels.iter().filter(|s| s.contains(n)).cloned().collect();
    Ok(VectorTable { k, labels, vectors, facets })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Forest {
    /// Column indices into the lex-ordered `d`-subsets.
    pub columns: Vec<usize>,
    pub det: BigInt,
    pub coefficient: BigInt,
}

impl Forest {
    /// Number of faces of the forest containing vertex `i`.
    pub fn vertex_degree(&self, faces: &[Subset], i: usize) -> usize {
        self.columns.iter().filter(|&&c| faces[c].contains(i)).count()
    }
}

const PRIME: u64 = 2_305_843_009_213_693_951; // 2^61 - 1

fn mulmod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % PRIME as u128) as u64
}

fn powmod(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a);
        }
        a = mulmod(a, a);
        e >>= 1;
    }
    r
}

/// Echelon basis modulo a prime far above any minor of `V`, so rank over
/// the prime field equals rank over ℚ.
#[derive(Clone, Default)]
struct Echelon {
    rows: Vec<(usize, Vec<u64>)>,
}

impl Echelon {
    fn try_insert(&mut self, col: &[u64]) -> bool {
        let mut v = col.to_vec();
        for (p, row) in &self.rows {
            if v[*p] != 0 {
                let f = v[*p];
                for (x, y) in v.iter_mut().zip(row) {
                    *x = (*x + PRIME - mulmod(f, *y)) % PRIME;
                }
            }
        }
        match v.iter().position(|&x| x != 0) {
            None => false,
            Some(p) => {
                let inv = powmod(v[p], PRIME - 2);
                for x in v.iter_mut() {
                    *x = mulmod(*x, inv);
                }
                self.rows.push((p, v));
                true
            }
        }
    }
}

fn dfs(cols: &[Vec<u64>], target: usize, start: usize, ech: &mut Echelon, chosen: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if chosen.len() == target {
        out.push(chosen.clone());
        return;
    }
    for c in start..cols.len() {
        if cols.len() - c < target - chosen.len() {
            break;
        }
        let mut next = ech.clone();
        if next.try_insert(&cols[c]) {
            chosen.push(c);
            dfs(cols, target, c + 1, &mut next, chosen, out);
            chosen.pop();
        }
    }
}

fn enumerate_forests(n: usize, d: usize) -> Result<Vec<Forest>> {
    let total = binom(n, d);
    if total > FOREST_ENVELOPE {
        return Err(pre(format!(
            "C({n},{d}) = {total} columns exceeds the enumeration envelope of {FOREST_ENVELOPE}"
        )));
    }
    let bd = boundary_matrix(n, d)?;
    let v = bd.reduced();
    let target = v.nrows();
    let cols: Vec<Vec<u64>> = (0..v.ncols())
        .map(|c| {
            v.rows
                .iter()
                .map(|row| {
                    let x = &row[c];
                    if x.is_negative() { PRIME - 1 } else if x.is_zero() { 0 } else { 1 }
                })
                .collect()
        })
        .collect();
    let mut sets: Vec<Vec<usize>> = (0..cols.len())
        .into_par_iter()
        .flat_map_iter(|first| {
            let mut ech = Echelon::default();
            let mut out = Vec::new();
            if target == 0 {
                return out;
            }
            if ech.try_insert(&cols[first]) {
                let mut chosen = vec![first];
                dfs(&cols, target, first + 1, &mut ech, &mut chosen, &mut out);
            }
            out
        })
        .collect();
    if target == 0 {
        sets.push(Vec::new());
    }
    sets.sort();
    let rows: Vec<usize> = (0..target).collect();
    sets.into_par_iter()
        .map(|columns| {
            let sub = v.select(&rows, &columns);
            let det = if columns.is_empty() {
                BigRational::one()
            } else {
                sub.to_rational().det()?
            };
            let det = det.to_integer();
            let order = if columns.is_empty() { BigInt::one() } else {
                cokernel_order(&sub).ok_or_else(|| internal("forest submatrix is singular"))?
            };
            if order != det.abs() {
                return Err(internal(format!(
                    "c_F mismatch on forest {columns:?}: |det| = {} but |coker| = {order}",
                    det.abs()
                )));
            }
            Ok(Forest { coefficient: &det * &det, det, columns })
        })
        .collect()
}

type ForestCache = Mutex<HashMap<(usize, usize), Arc<Vec<Forest>>>>;

/// All spanning forests of the complete `(d-1)`-complex on `n` vertices,
/// memoised per `(n, d)`.
pub fn spanning_forests(n: usize, d: usize) -> Result<Arc<Vec<Forest>>> {
    static CACHE: OnceLock<ForestCache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(f) = cache.lock().expect("cache lock").get(&(n, d)) {
        return Ok(f.clone());
    }
    let forests = Arc::new(enumerate_forests(n, d)?);
    cache.lock().expect("cache lock").insert((n, d), forests.clone());
    Ok(forests)
}

/// `(det V_F, |coker V_F|)` for a set of faces, the second from the Smith
/// normal form. The two agree in absolute value on every spanning forest.
pub fn forest_torsion(n: usize, faces: &[Subset]) -> Result<(BigInt, BigInt)> {
    let d = faces.first().map(Subset::len).ok_or_else(|| dim("no faces given"))?;
    let b = boundary_matrix(n, d)?;
    let v = b.reduced();
    if faces.len() != v.nrows() {
        return Err(dim(format!("a spanning forest has {} faces, got {}", v.nrows(), faces.len())));
    }
    let rows: Vec<usize> = (0..v.nrows()).collect();
    let cols: Vec<usize> = faces.iter().map(|f| f.rank(n)).collect();
    let sub = v.select(&rows, &cols);
    let det = sub.to_rational().det()?.to_integer();
    let order = smith_normal_form(&sub).iter().product::<BigInt>().abs();
    Ok((det, order))
}

/// Coefficients attached to the non-forest faces.
#[derive(Clone, Debug)]
pub enum AlphaSpec {
    /// Variables `a_I`.
    Symbolic,
    /// One value per `d`-subset, lex order.
    Numeric(Vec<BigRational>),
}

/// `Σ_F c_F ∏_{I∈F} γ_I ∏_{I∉F} α_I` with `γ_I` named `g_I`.
pub fn forest_expansion(n: usize, d: usize, alpha: &AlphaSpec) -> Result<MultiPoly> {
    let faces = subsets(n, d);
    let nf = faces.len();
    let forests = spanning_forests(n, d)?;
    let gvars: Vec<String> = faces.iter().map(|s| var_name("g", s)).collect();
    match alpha {
        AlphaSpec::Symbolic => {
            let mut vars: Vec<String> = faces.iter().map(|s| var_name("a", s)).collect();
            vars.extend(gvars);
            let mut p = MultiPoly::zero(vars);
            for f in forests.iter() {
                let mut e = vec![1u32; nf];
                e.extend(std::iter::repeat(0).take(nf));
                for &c in &f.columns {
                    e[c] = 0;
                    e[nf + c] = 1;
                }
                p.add_term(Monomial(e), BigRational::from_integer(f.coefficient.clone()));
            }
            Ok(p)
        }
        AlphaSpec::Numeric(values) => {
            if values.len() != nf {
                return Err(dim(format!("{} α values for {nf} faces", values.len())));
            }
            if values.iter().any(Zero::is_zero) {
                return Err(pre("forest expansion needs every α_I nonzero"));
            }
            let total: BigRational = values.iter().product();
            let mut p = MultiPoly::zero(gvars);
            for f in forests.iter() {
                let mut e = vec![0u32; nf];
                let mut coeff = BigRational::from_integer(f.coefficient.clone()) * &total;
                for &c in &f.columns {
                    e[c] = 1;
                    coeff /= &values[c];
                }
                p.add_term(Monomial(e), coeff);
            }
            Ok(p)
        }
    }
}

/// Numeric value of the expansion at given `α` and `γ`.
pub fn forest_sum(n: usize, d: usize, alpha: &[BigRational], gamma: &[BigRational]) -> Result<BigRational> {
    let nf = binom(n, d);
    if alpha.len() != nf || gamma.len() != nf {
        return Err(dim("one α and one γ value per face expected"));
    }
    let forests = spanning_forests(n, d)?;
    Ok(forests
        .iter()
        .map(|f| {
            let mut t = BigRational::from_integer(f.coefficient.clone());
            for (c, (a, g)) in alpha.iter().zip(gamma).enumerate() {
                t *= if f.columns.binary_search(&c).is_ok() { g } else { a };
            }
            t
        })
        .sum())
}

/// Binary forms `Σ_j c_{ij} ∏_{k≠j} ℓ_k` for the two rows of `c`, where
/// `ℓ_j = a_{1j} s + a_{2j} t`.
pub fn fiber_forms(a: &RatMatrix, c: &RatMatrix) -> Result<(BinaryForm, BinaryForm)> {
    if a.rows() != 2 || c.rows() != 2 || a.cols() != c.cols() {
        return Err(dim("two 2×n matrices expected"));
    }
    let n = a.cols();
    let basis: Vec<BinaryForm> = (0..n)
        .map(|j| {
            let factors: Vec<(BigRational, BigRational)> =
                (0..n).filter(|&k| k != j).map(|k| (a.get(0, k).clone(), a.get(1, k).clone())).collect();
            BinaryForm::product_of_linear(&factors)
        })
        .collect();
    let form = |row: usize| -> Result<BinaryForm> {
        let mut acc = BinaryForm::new(vec![BigRational::zero(); n]);
        for (j, b) in basis.iter().enumerate() {
            acc = acc.add(&b.scale(c.get(row, j)))?;
        }
        Ok(acc)
    };
    Ok((form(0)?, form(1)?))
}

/// The tree sum `Σ_T ∏_{ij∈T} p_{ij}(c) ∏_{kl∉T} p_{kl}(a)`.
pub fn tree_resultant(a: &RatMatrix, c: &RatMatrix) -> Result<BigRational> {
    if a.rows() != 2 || c.rows() != 2 || a.cols() != c.cols() {
        return Err(dim("two 2×n matrices expected"));
    }
    let n = a.cols();
    let pa = PlueckerVector::from_matrix(a)?;
    if !pa.has_full_support() {
        return Err(pre("the linear forms ℓ_j must have distinct roots"));
    }
    let pc: Vec<BigRational> = subsets(n, 2)
        .iter()
        .map(|s| {
            let cols: Vec<usize> = s.elems().iter().map(|e| e - 1).collect();
            c.select_columns(&cols).det()
        })
        .collect::<Result<_>>()?;
    forest_sum(n, 2, pa.coeffs(), &pc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::int;
    use crate::algebra::unipoly::sylvester_resultant;
    use crate::detrep::{chow_form_cleared, v_vectors, Convention, LinearSpace};
    use crate::matroid::Matroid;
    use crate::random::{nonzero_int, rng_from_seed};

    #[test]
    fn boundary_of_k4_and_chain_condition() {
        let b = boundary_matrix(4, 2).unwrap();
        let v = b.reduced().to_rational();
        let ex = RatMatrix::from_i64(&[
            &[1, 1, 1, 0, 0, 0],
            &[-1, 0, 0, 1, 1, 0],
            &[0, -1, 0, -1, 0, 1],
        ]);
        for c in 0..6 {
            let col = v.column(c);
            let neg: Vec<BigRational> = col.iter().map(|x| -x).collect();
            assert!(col == ex.column(c) || neg == ex.column(c));
        }
        let d1 = boundary_matrix(5, 2).unwrap().matrix;
        let d2 = boundary_matrix(5, 3).unwrap().matrix;
        assert!(d1.mul(&d2).unwrap().is_zero());
        assert_eq!(boundary_matrix(3, 2).unwrap().matrix.to_rational().rank(), 2);
    }

    #[test]
    fn closed_form_vectors() {
        let t = uniform_v_vectors(4, 2).unwrap();
        let s = |l: &str| Subset::parse(l).unwrap();
        assert_eq!(t.get(&s("24")).unwrap(), &[int(0), int(1), int(0)]);
        assert_eq!(t.get(&s("13")).unwrap(), &[int(1), int(0), int(-1)]);
        let t5 = uniform_v_vectors(5, 3).unwrap();
        let e12 = s("12").rank(4);
        let v125 = t5.get(&s("125")).unwrap();
        assert!(v125.iter().enumerate().all(|(i, x)| *x == if i == e12 { int(1) } else { int(0) }));
        let v123 = t5.get(&s("123")).unwrap();
        let (i12, i13, i23) = (s("12").rank(4), s("13").rank(4), s("23").rank(4));
        // opposite of e23 − e13 + e12
        assert_eq!((v123[i23].clone(), v123[i13].clone(), v123[i12].clone()), (int(-1), int(1), int(-1)));
        for (n, d) in [(4, 2), (5, 2), (5, 3), (6, 3)] {
            let closed = uniform_v_vectors(n, d).unwrap();
            let solved = v_vectors(&Matroid::uniform(d, n)).unwrap();
            assert!(closed.equal_up_to_column_signs(&solved), "U({d},{n})");
        }
    }

    #[test]
    fn trees_of_k4() {
        let forests = spanning_forests(4, 2).unwrap();
        assert_eq!(forests.len(), 16);
        assert!(forests.iter().all(|f| f.coefficient == BigInt::one()));
        let p = forest_expansion(4, 2, &AlphaSpec::Symbolic).unwrap();
        assert_eq!(p.num_terms(), 16);
        let ones = vec![int(1); 6];
        assert_eq!(forest_sum(4, 2, &ones, &ones).unwrap(), int(16));
    }

    #[test]
    fn torsion_forest_in_k6() {
        let faces = subsets(6, 3);
        let want: Vec<usize> = ["123", "124", "136", "145", "156", "235", "246", "256", "345", "346"]
            .iter()
            .map(|l| Subset::parse(l).unwrap().rank(6))
            .collect();
        let forests = spanning_forests(6, 3).unwrap();
        let f = forests.iter().find(|f| f.columns == want).expect("listed set is a forest");
        assert_eq!(f.det.abs(), BigInt::from(2));
        assert_eq!(f.coefficient, BigInt::from(4));
        assert_eq!(faces.len(), 20);
        let listed: Vec<Subset> = want.iter().map(|&c| faces[c].clone()).collect();
        let (det, order) = forest_torsion(6, &listed).unwrap();
        assert_eq!((det.abs(), order), (BigInt::from(2), BigInt::from(2)));
    }

    #[test]
    fn envelope_is_enforced() {
        assert!(spanning_forests(7, 3).is_err());
    }

    #[test]
    fn resultant_examples() {
        let a = RatMatrix::from_i64(&[&[1, 0, 1], &[0, 1, 1]]);
        let c = RatMatrix::from_i64(&[&[1, 0, 0], &[0, 1, -1]]);
        assert_eq!(tree_resultant(&a, &c).unwrap(), int(1));
        let (f, g) = fiber_forms(&a, &c).unwrap();
        assert_eq!(sylvester_resultant(&f, &g).unwrap().abs(), int(1));
        let c = RatMatrix::from_i64(&[&[0, 0, 1], &[1, 0, 0]]);
        assert_eq!(tree_resultant(&a, &c).unwrap(), int(0));
        let (f, g) = fiber_forms(&a, &c).unwrap();
        assert_eq!(sylvester_resultant(&f, &g).unwrap(), int(0));
        let bad = RatMatrix::from_i64(&[&[1, 2, 1], &[1, 2, 0]]);
        assert!(tree_resultant(&bad, &c).is_err());
    }

    #[test]
    fn expansion_equals_cleared_chow_form() {
        let mut rng = rng_from_seed(11);
        for (n, d) in [(4, 2), (5, 2), (5, 3)] {
            let a = loop {
                let m = crate::random::random_full_rank(&mut rng, d, n, 4);
                if PlueckerVector::from_matrix(&m).unwrap().has_full_support() {
                    break m;
                }
            };
            let space = LinearSpace::new(a).unwrap();
            let alpha = space.plucker().coeffs().to_vec();
            let lhs = chow_form_cleared(&space, Convention::Gamma).unwrap();
            let rhs = forest_expansion(n, d, &AlphaSpec::Numeric(alpha)).unwrap();
            assert!(lhs.equals(&rhs), "U({d},{n})");
        }
        let _ = nonzero_int(&mut rng, 1);
    }
}

//! Definite determinantal representation of the reciprocal linear space.
//!
//! `H_B` is the subspace of `⋀^d ℚ^n` spanned by the vectors `e_K ∧ 1` and
//! supported on the bases `B`. Its basis is reduced so that the BCC-facet
//! coordinates form the identity, which makes the column of basis `I` the
//! vector `v_I`. The Chow form is `det Σ_{I∈B} (γ_I/α_I) v_I v_Iᵀ`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::algebra::matrix::RatMatrix;
use crate::algebra::multipoly::{Monomial, MultiPoly};
use crate::algebra::polymat::{laplace_det, multilinear_det, LinearForm};
use crate::algebra::rational::lcm_of_denominators;
use crate::error::{internal, pre, Error, Result};
use crate::exterior::{s_parity, subsets, wedge_sign, PlueckerVector, Subset};
use crate::matroid::Matroid;

/// Which Plücker coordinates of the complementary space are the variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Convention {
    /// `γ_I = p_I(M^⊥)`, named `g_I`.
    Gamma,
    /// `β_J = p_J(M)`, named `b_J`, with `γ_I = (-1)^{s(I)} β_{[n]∖I}`.
    Beta,
}

pub fn var_name(prefix: &str, s: &Subset) -> String {
    format!("{prefix}_{}", s.label())
}

/// A linear space given by a full-rank `d×n` matrix, not contained in a
/// coordinate hyperplane.
#[derive(Clone, Debug)]
pub struct LinearSpace {
    mat: RatMatrix,
    plucker: PlueckerVector,
    matroid: Matroid,
}

impl LinearSpace {
    pub fn new(mat: RatMatrix) -> Result<Self> {
        let plucker = PlueckerVector::from_matrix(&mat)?;
        let matroid = Matroid::from_support(&plucker)?;
        if let Some(e) = matroid.loops().first() {
            return Err(pre(format!("space lies in the coordinate hyperplane x_{e} = 0")));
        }
        Ok(Self { mat, plucker, matroid })
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.mat
    }

    pub fn plucker(&self) -> &PlueckerVector {
        &self.plucker
    }

    pub fn matroid(&self) -> &Matroid {
        &self.matroid
    }

    pub fn n(&self) -> usize {
        self.mat.cols()
    }

    pub fn d(&self) -> usize {
        self.mat.rows()
    }

    /// Whether `x` lies in the row space.
    pub fn contains(&self, x: &[BigRational]) -> Result<bool> {
        let row = RatMatrix::from_rows(vec![x.to_vec()])?;
        Ok(self.mat.stack(&row)?.rank() == self.d())
    }
}

/// Basis of `H_B` with the facet columns reduced to the identity.
#[derive(Clone, Debug)]
pub struct HbBasis {
    /// Column labels: the bases in lexicographic order.
    pub columns: Vec<Subset>,
    /// Row labels: the BCC facets.
    pub facets: Vec<Subset>,
    pub matrix: RatMatrix,
}

/// Coordinates of `e_K ∧ (e_1 + … + e_n)` over the `(|K|+1)`-subsets.
pub fn wedge_with_ones(n: usize, k: &Subset) -> Vec<(Subset, i8)> {
    (1..=n)
        .filter(|j| !k.contains(*j))
        .map(|j| {
            let single = Subset(vec![j]);
            (k.with(j), wedge_sign(k, &single))
        })
        .collect()
}

pub fn hb_basis(matroid: &Matroid) -> Result<HbBasis> {
    let (n, d) = (matroid.n(), matroid.rank());
    let facets = matroid.bcc()?.facets;
    let all = subsets(n, d);
    let columns: Vec<Subset> = all.iter().filter(|s| matroid.is_basis(s)).cloned().collect();
    let col_of: HashMap<&Subset, usize> = all.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let gens = subsets(n, d - 1);
    let mut w = RatMatrix::zeros(gens.len(), all.len());
    for (r, k) in gens.iter().enumerate() {
        for (s, sign) in wedge_with_ones(n, k) {
            w.set(r, col_of[&s], BigRational::from_integer(sign.into()));
        }
    }
    let outside: Vec<usize> = all
        .iter()
        .enumerate()
        .filter(|(_, s)| !matroid.is_basis(s))
        .map(|(i, _)| i)
        .collect();
    let inside: Vec<usize> = all
        .iter()
        .enumerate()
        .filter(|(_, s)| matroid.is_basis(s))
        .map(|(i, _)| i)
        .collect();
    // combinations λ with λᵀW vanishing off B
    let lambdas = if outside.is_empty() {
        RatMatrix::identity(gens.len())
    } else {
        w.select_columns(&outside).transpose().kernel()
    };
    let span = lambdas.mul(&w)?.select_columns(&inside);
    let rref = span.rref();
    let k = rref.pivots.len();
    if k != facets.len() {
        return Err(internal(format!(
            "dim H_B = {k} but the broken-circuit complex has {} facets",
            facets.len()
        )));
    }
    let rows: Vec<usize> = (0..k).collect();
    let basis = rref.matrix.select_rows(&rows);
    let facet_cols: Vec<usize> = facets
        .iter()
        .map(|f| columns.iter().position(|c| c == f).expect("facet is a basis"))
        .collect();
    let square = basis.select_columns(&facet_cols);
    let inv = square
        .inverse()
        .map_err(|_| internal("facet columns of H_B are dependent"))?;
    let matrix = inv.mul(&basis)?;
    Ok(HbBasis { columns, facets, matrix })
}

/// The vectors `v_I ∈ ℚ^k`, one per basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorTable {
    pub k: usize,
    pub labels: Vec<Subset>,
    pub vectors: Vec<Vec<BigRational>>,
    pub facets: Vec<Subset>,
}

impl VectorTable {
    pub fn get(&self, s: &Subset) -> Option<&[BigRational]> {
        self.labels.iter().position(|l| l == s).map(|i| self.vectors[i].as_slice())
    }

    /// The `k×|B|` matrix with the vectors as columns.
    pub fn matrix(&self) -> RatMatrix {
        let cols = self.vectors.len();
        let mut m = RatMatrix::zeros(self.k, cols);
        for (c, v) in self.vectors.iter().enumerate() {
            for (r, x) in v.iter().enumerate() {
                m.set(r, c, x.clone());
            }
        }
        m
    }

    /// `Σ_I weight_I · v_I v_Iᵀ`.
    pub fn weighted_gram(&self, weights: &[BigRational]) -> RatMatrix {
        let mut g = RatMatrix::zeros(self.k, self.k);
        for (v, wt) in self.vectors.iter().zip(weights) {
            for r in 0..self.k {
                for c in 0..self.k {
                    let e = g.get(r, c) + &v[r] * &v[c] * wt;
                    g.set(r, c, e);
                }
            }
        }
        g
    }

    /// Equality of labels and of each vector up to its sign.
    pub fn equal_up_to_column_signs(&self, other: &Self) -> bool {
        self.k == other.k
            && self.labels == other.labels
            && self.vectors.iter().zip(&other.vectors).all(|(a, b)| {
                *a == *b || a.iter().zip(b).all(|(x, y)| *x == -y)
            })
    }
}

pub fn v_vectors(matroid: &Matroid) -> Result<VectorTable> {
    let hb = hb_basis(matroid)?;
    let vectors = (0..hb.columns.len()).map(|c| hb.matrix.column(c)).collect();
    Ok(VectorTable { k: hb.facets.len(), labels: hb.columns, vectors, facets: hb.facets })
}

/// The same table obtained by solving one circuit relation per non-facet
/// basis, visiting bases in decreasing order of element sum.
pub fn v_vectors_by_relations(matroid: &Matroid) -> Result<VectorTable> {
    let n = matroid.n();
    let bcc = matroid.bcc()?;
    let facets = bcc.facets.clone();
    let k = facets.len();
    let labels: Vec<Subset> = matroid.bases().cloned().collect();
    let mut known: HashMap<Subset, Vec<BigRational>> = HashMap::new();
    for (i, f) in facets.iter().enumerate() {
        let mut e = vec![BigRational::zero(); k];
        e[i] = BigRational::one();
        known.insert(f.clone(), e);
    }
    let mut pending: Vec<&Subset> = labels.iter().filter(|b| !known.contains_key(*b)).collect();
    pending.sort_by(|a, b| b.sum().cmp(&a.sum()).then_with(|| b.cmp(a)));
    for b in pending {
        let broken = bcc
            .broken_circuits
            .iter()
            .find(|bc| bc.is_subset_of(b))
            .ok_or_else(|| internal(format!("non-facet basis {b} contains no broken circuit")))?;
        let circuit = bcc
            .circuits
            .iter()
            .find(|c| c.without(c.largest().unwrap()) == *broken)
            .expect("broken circuit comes from a circuit");
        let top = circuit.largest().unwrap();
        let big = b.with(top);
        let rest = big.complement(n);
        let coef = |i: usize| -> BigRational {
            let sigma = wedge_sign(&rest, &Subset(vec![i]));
            let face = big.without(i);
            let s = if s_parity(&face) { -sigma } else { sigma };
            BigRational::from_integer(s.into())
        };
        let mut acc = vec![BigRational::zero(); k];
        for &i in big.elems() {
            let face = big.without(i);
            if face == *b || !matroid.is_basis(&face) {
                continue;
            }
            let v = known
                .get(&face)
                .ok_or_else(|| internal(format!("relation for {b} uses unsolved basis {face}")))?;
            let c = coef(i);
            for (a, x) in acc.iter_mut().zip(v) {
                *a += &c * x;
            }
        }
        let own = coef(top);
        let v: Vec<BigRational> = acc.iter().map(|a| -a / &own).collect();
        known.insert(b.clone(), v);
    }
    let vectors = labels.iter().map(|l| known.remove(l).expect("all solved")).collect();
    Ok(VectorTable { k, labels, vectors, facets })
}

/// `k×k` symmetric matrix of linear forms.
#[derive(Clone, Debug, PartialEq)]
pub struct SymLinMatrix {
    pub k: usize,
    pub vars: Vec<String>,
    pub entries: Vec<Vec<MultiPoly>>,
}

impl SymLinMatrix {
    pub fn eval(&self, point: &[BigRational]) -> Result<RatMatrix> {
        let rows = self
            .entries
            .iter()
            .map(|r| r.iter().map(|p| p.eval(point)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        RatMatrix::from_rows(rows)
    }

    /// Determinant by cofactor expansion; intended for small `k`.
    pub fn det(&self) -> MultiPoly {
        laplace_det(&self.entries).unwrap_or_else(|| MultiPoly::one(self.vars.clone()))
    }
}

/// Variable names and `(basis, sign)` for each variable, in lex order of `B`.
fn variables(space: &LinearSpace, conv: Convention) -> Vec<(String, Subset, BigRational)> {
    let n = space.n();
    space
        .matroid()
        .bases()
        .map(|b| match conv {
            Convention::Gamma => (var_name("g", b), b.clone(), BigRational::one()),
            Convention::Beta => {
                let sign = if s_parity(b) { -BigRational::one() } else { BigRational::one() };
                (var_name("b", &b.complement(n)), b.clone(), sign)
            }
        })
        .collect()
}

pub fn phi_symbolic(space: &LinearSpace, conv: Convention) -> Result<SymLinMatrix> {
    let table = v_vectors(space.matroid())?;
    let vars_info = variables(space, conv);
    let vars: Vec<String> = vars_info.iter().map(|(v, _, _)| v.clone()).collect();
    let k = table.k;
    let mut entries = vec![vec![MultiPoly::zero(vars.clone()); k]; k];
    for (idx, (name, b, sign)) in vars_info.iter().enumerate() {
        debug_assert_eq!(&table.labels[idx], b);
        let alpha = space.plucker().get(b);
        let z = MultiPoly::var(vars.clone(), name)?.scale(&(sign / alpha));
        let v = &table.vectors[idx];
        for r in 0..k {
            for c in 0..k {
                let w = &v[r] * &v[c];
                if !w.is_zero() {
                    entries[r][c] = entries[r][c].add(&z.scale(&w));
                }
            }
        }
    }
    Ok(SymLinMatrix { k, vars, entries })
}

/// Terms `(S, c)` of `det Σ_I z_I v_I v_Iᵀ` with `S` a set of positions in
/// the basis list.
pub(crate) fn z_determinant(table: &VectorTable) -> Vec<(Vec<usize>, BigRational)> {
    let k = table.k;
    let den = lcm_of_denominators(table.vectors.iter().flatten());
    let lifted: Vec<Vec<BigInt>> = table
        .vectors
        .iter()
        .map(|v| v.iter().map(|x| (x * BigRational::from_integer(den.clone())).to_integer()).collect())
        .collect();
    let mut m: Vec<Vec<LinearForm<BigInt>>> = vec![vec![Vec::new(); k]; k];
    for (i, v) in lifted.iter().enumerate() {
        for r in 0..k {
            if v[r].is_zero() {
                continue;
            }
            for c in 0..k {
                if !v[c].is_zero() {
                    m[r][c].push((i, &v[r] * &v[c]));
                }
            }
        }
    }
    let scale = BigRational::from_integer(num_traits::pow(den, 2 * k)).recip();
    multilinear_det(&m)
        .into_iter()
        .map(|(s, c)| (s.members(), BigRational::from_integer(c) * &scale))
        .collect()
}

/// `det φ`, a degree-`k` form in the chosen variables, denominators kept.
pub fn chow_form(space: &LinearSpace, conv: Convention) -> Result<MultiPoly> {
    chow_form_impl(space, conv, false)
}

/// `∏_{I∈B} α_I · det φ`, an integral form when `α` is integral.
pub fn chow_form_cleared(space: &LinearSpace, conv: Convention) -> Result<MultiPoly> {
    chow_form_impl(space, conv, true)
}

fn chow_form_impl(space: &LinearSpace, conv: Convention, cleared: bool) -> Result<MultiPoly> {
    let table = v_vectors(space.matroid())?;
    let info = variables(space, conv);
    let vars: Vec<String> = info.iter().map(|(v, _, _)| v.clone()).collect();
    let alphas: Vec<BigRational> = info.iter().map(|(_, b, _)| space.plucker().get(b)).collect();
    let all_alpha: BigRational = alphas.iter().product();
    let mut out = MultiPoly::zero(vars.clone());
    for (set, c) in z_determinant(&table) {
        let mut e = vec![0u32; vars.len()];
        let mut coeff = c;
        for &i in &set {
            e[i] = 1;
            coeff = coeff * &info[i].2 / &alphas[i];
        }
        if cleared {
            coeff *= &all_alpha;
        }
        out.add_term(Monomial(e), coeff);
    }
    Ok(out)
}

/// `∏ α_I · det φ` with both `α` (named `a_I`) and `γ` (named `g_I`)
/// symbolic, for the matroid's bases.
pub fn chow_form_symbolic(matroid: &Matroid) -> Result<MultiPoly> {
    let table = v_vectors(matroid)?;
    let nb = table.labels.len();
    let mut vars: Vec<String> = table.labels.iter().map(|b| var_name("a", b)).collect();
    vars.extend(table.labels.iter().map(|b| var_name("g", b)));
    let mut out = MultiPoly::zero(vars.clone());
    for (set, c) in z_determinant(&table) {
        let mut e = vec![0u32; 2 * nb];
        for (i, slot) in e.iter_mut().take(nb).enumerate() {
            *slot = u32::from(!set.contains(&i));
        }
        for &i in &set {
            e[nb + i] = 1;
        }
        out.add_term(Monomial(e), c);
    }
    Ok(out)
}

/// `γ_I = p_I(M^⊥)` values indexed like the bases of `space`.
pub fn gamma_from_complement(space: &LinearSpace, mperp: &PlueckerVector) -> Vec<BigRational> {
    space.matroid().bases().map(|b| mperp.get(b)).collect()
}

/// Numeric `φ_α(γ)` for `γ` given on the bases.
pub fn phi_numeric(space: &LinearSpace, gamma: &[BigRational]) -> Result<RatMatrix> {
    let table = v_vectors(space.matroid())?;
    if gamma.len() != table.labels.len() {
        return Err(Error::Dimension("one γ value per basis expected".into()));
    }
    let weights: Vec<BigRational> = table
        .labels
        .iter()
        .zip(gamma)
        .map(|(b, g)| g / space.plucker().get(b))
        .collect();
    Ok(table.weighted_gram(&weights))
}

/// `β = δ ∧ w` for `δ ∈ ⋀^{m}` and a vector `w`.
pub fn wedge_vector(delta: &PlueckerVectorLike, w: &[BigRational]) -> Vec<BigRational> {
    let n = w.len();
    let m = delta.degree;
    subsets(n, m + 1)
        .iter()
        .map(|j| {
            let mut acc = BigRational::zero();
            for &i in j.elems() {
                let rest = j.without(i);
                let s = wedge_sign(&rest, &Subset(vec![i]));
                let c = &delta.coeffs[rest.rank(n)] * &w[i - 1];
                acc += if s > 0 { c } else { -c };
            }
            acc
        })
        .collect()
}

/// An arbitrary element of `⋀^m ℚ^n`, not necessarily decomposable.
#[derive(Clone, Debug)]
pub struct PlueckerVectorLike {
    pub degree: usize,
    pub coeffs: Vec<BigRational>,
}

/// Checks that `diag_w(α)` lies in `H_B` and is annihilated by
/// `φ_α(δ ∧ w)`. Requires `w⁻¹ ∈ ℒ` and no zero coordinate in `w`.
pub fn kernel_witness_check(space: &LinearSpace, w: &[BigRational], delta: &PlueckerVectorLike) -> Result<bool> {
    let (n, d) = (space.n(), space.d());
    if w.len() != n || delta.degree + d + 1 != n || delta.coeffs.len() != crate::algebra::binom(n, delta.degree) {
        return Err(Error::Dimension("witness shapes do not match the space".into()));
    }
    if w.iter().any(Zero::is_zero) {
        return Err(pre("witness has a zero coordinate"));
    }
    let inv: Vec<BigRational> = w.iter().map(|x| x.recip()).collect();
    if !space.contains(&inv)? {
        return Err(pre("inverse of the witness is not in the space"));
    }
    let beta = wedge_vector(delta, w);
    let hb = hb_basis(space.matroid())?;
    let gamma: Vec<BigRational> = hb
        .columns
        .iter()
        .map(|b| {
            let v = beta[b.complement(n).rank(n)].clone();
            if s_parity(b) {
                -v
            } else {
                v
            }
        })
        .collect();
    let diag: Vec<BigRational> = hb
        .columns
        .iter()
        .map(|b| b.elems().iter().map(|&i| &w[i - 1]).product::<BigRational>() * space.plucker().get(b))
        .collect();
    let facet_coords: Vec<BigRational> = hb
        .facets
        .iter()
        .map(|f| diag[hb.columns.iter().position(|c| c == f).unwrap()].clone())
        .collect();
    // membership in H_B: the facet coordinates must reproduce every coordinate
    let rebuilt = hb.matrix.transpose().mul_vec(&facet_coords)?;
    if rebuilt != diag {
        return Ok(false);
    }
    let phi = phi_numeric(space, &gamma)?;
    Ok(phi.mul_vec(&facet_coords)?.iter().all(Zero::is_zero))
}

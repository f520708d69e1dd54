//! Multiplication matrices on the coordinate ring of a reciprocal linear
//! space, the trace form `H`, the entropic discriminant `det(H)` and its
//! sum-of-squares certificate.
//!
//! Everything is exact except the optional floating certificate. `H` is
//! computed from `M_j = Ψ_j G⁻¹`, which is similar to the symmetric matrices
//! `A_j = Q⁻¹ Ψ_j Q⁻ᵀ` for any `Q` with `QQᵀ = G`, so no square roots are
//! needed until a certificate is requested.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::algebra::matrix::RatMatrix;
use crate::algebra::multipoly::{var_names, Monomial, MultiPoly};
use crate::algebra::polymat::{laplace_det, DetRing, FloatPoly};
use crate::algebra::rational::{binom, rational_sqrt, to_f64};
use crate::algebra::unipoly::{sylvester_matrix, BinaryForm};
use crate::detrep::{v_vectors, LinearSpace, VectorTable};
use crate::error::{dim, internal, pre, Error, Result};
use crate::exterior::{subsets, wedge_sign};

/// Default relative tolerance of the floating certificate.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;
/// Upper bound on the number of maximal minors a certificate may list.
pub const MAX_MINORS: usize = 250_000;
/// Candidate evaluations allowed in the rational congruence search.
const CONGRUENCE_BUDGET: usize = 20_000;

/// `v_1..v_d` span `L`, `v_{d+1}..v_n` span `L^⊥`.
#[derive(Clone, Debug)]
pub struct AdaptedFrame {
    pub space: RatMatrix,
    pub complement: RatMatrix,
    /// True when the complement basis came from the caller rather than the
    /// reduced kernel.
    pub complement_given: bool,
}

impl AdaptedFrame {
    pub fn new(space: &LinearSpace, complement: Option<&RatMatrix>) -> Result<Self> {
        let a = space.matrix();
        let (d, n) = (a.rows(), a.cols());
        let (comp, given) = match complement {
            Some(c) => {
                if c.rows() != n - d || c.cols() != n {
                    return Err(dim(format!("complement must be {}x{}", n - d, n)));
                }
                if !a.mul(&c.transpose())?.is_zero() {
                    return Err(pre("complement rows are not orthogonal to the space"));
                }
                (c.clone(), true)
            }
            None => (a.kernel(), false),
        };
        let frame = Self { space: a.clone(), complement: comp, complement_given: given };
        if frame.full().rank() != n {
            return Err(pre("frame vectors are not a basis"));
        }
        Ok(frame)
    }

    pub fn n(&self) -> usize {
        self.space.cols()
    }

    pub fn d(&self) -> usize {
        self.space.rows()
    }

    /// The `n×n` matrix with rows `v_1..v_n`.
    pub fn full(&self) -> RatMatrix {
        self.space.stack(&self.complement).expect("equal column counts")
    }

    /// `v_i`, 1-based.
    pub fn vector(&self, i: usize) -> &[BigRational] {
        let d = self.d();
        if i <= d {
            self.space.row(i - 1)
        } else {
            self.complement.row(i - d - 1)
        }
    }
}

/// Polynomial in `y_1..y_d` with `k×k` rational matrix coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixPoly {
    pub k: usize,
    pub nvars: usize,
    pub terms: BTreeMap<Monomial, RatMatrix>,
}

impl MatrixPoly {
    pub fn identity(k: usize, nvars: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::one(nvars), RatMatrix::identity(k));
        Self { k, nvars, terms }
    }

    /// `Σ_i y_i · coeffs[i]`.
    pub fn linear(coeffs: &[RatMatrix]) -> Self {
        let nvars = coeffs.len();
        let k = coeffs.first().map_or(0, RatMatrix::rows);
        let mut terms = BTreeMap::new();
        for (i, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                let mut e = vec![0; nvars];
                e[i] = 1;
                terms.insert(Monomial(e), c.clone());
            }
        }
        Self { k, nvars, terms }
    }

    fn insert_add(terms: &mut BTreeMap<Monomial, RatMatrix>, m: Monomial, c: RatMatrix) {
        let sum = match terms.remove(&m) {
            Some(prev) => prev.add(&c).expect("equal shapes"),
            None => c,
        };
        if !sum.is_zero() {
            terms.insert(m, sum);
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut terms = BTreeMap::new();
        for (ma, a) in &self.terms {
            for (mb, b) in &o.terms {
                Self::insert_add(&mut terms, ma.mul(mb), a.mul(b).expect("equal shapes"));
            }
        }
        Self { k: self.k, nvars: self.nvars, terms }
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (m, c) in &o.terms {
            Self::insert_add(&mut terms, m.clone(), c.scale(&-BigRational::one()));
        }
        Self { k: self.k, nvars: self.nvars, terms }
    }

    /// `left · X · right` coefficientwise.
    pub fn conjugate(&self, left: &RatMatrix, right: &RatMatrix) -> Result<Self> {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            Self::insert_add(&mut terms, m.clone(), left.mul(c)?.mul(right)?);
        }
        Ok(Self { k: left.rows(), nvars: self.nvars, terms })
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_symmetric(&self) -> bool {
        self.terms.values().all(RatMatrix::is_symmetric)
    }

    pub fn trace(&self, vars: &[String]) -> MultiPoly {
        let mut p = MultiPoly::zero(vars.to_vec());
        for (m, c) in &self.terms {
            p.add_term(m.clone(), c.trace());
        }
        p
    }

    /// `tr(self · o)` without forming the product.
    pub fn trace_of_product(&self, o: &Self, vars: &[String]) -> MultiPoly {
        let mut p = MultiPoly::zero(vars.to_vec());
        for (ma, a) in &self.terms {
            for (mb, b) in &o.terms {
                let mut t = BigRational::zero();
                for r in 0..self.k {
                    for c in 0..self.k {
                        t += a.get(r, c) * b.get(c, r);
                    }
                }
                p.add_term(ma.mul(mb), t);
            }
        }
        p
    }

    pub fn entry(&self, r: usize, c: usize, vars: &[String]) -> MultiPoly {
        let mut p = MultiPoly::zero(vars.to_vec());
        for (m, mat) in &self.terms {
            p.add_term(m.clone(), mat.get(r, c).clone());
        }
        p
    }

    pub fn entries(&self, vars: &[String]) -> Vec<Vec<MultiPoly>> {
        (0..self.k).map(|r| (0..self.k).map(|c| self.entry(r, c, vars)).collect()).collect()
    }

    pub fn eval(&self, y: &[BigRational]) -> Result<RatMatrix> {
        if y.len() != self.nvars {
            return Err(dim("evaluation point has the wrong length"));
        }
        let mut out = RatMatrix::zeros(self.k, self.k);
        for (m, c) in &self.terms {
            let w: BigRational = m.0.iter().zip(y).map(|(&e, v)| crate::algebra::multipoly::pow_rat(v, e)).product();
            out = out.add(&c.scale(&w))?;
        }
        Ok(out)
    }
}

/// Coefficients of `u_1 ∧ … ∧ u_m` for the given rows, indexed by lex
/// `m`-subsets.
fn wedge_of_rows(rows: &[&[BigRational]]) -> Result<Vec<BigRational>> {
    let n = rows.first().map_or(0, |r| r.len());
    let m = RatMatrix::from_rows(rows.iter().map(|r| r.to_vec()).collect())?;
    subsets(n, rows.len())
        .iter()
        .map(|s| {
            let cols: Vec<usize> = s.elems().iter().map(|e| e - 1).collect();
            m.select_columns(&cols).det()
        })
        .collect()
}

/// `φ ∧ β = Σ_I (e_I ∧ β)/α_I · v_I v_Iᵀ` for `β ∈ ⋀^{n-d}`.
fn phi_wedge(space: &LinearSpace, table: &VectorTable, beta: &[BigRational]) -> RatMatrix {
    let n = space.n();
    let weights: Vec<BigRational> = table
        .labels
        .iter()
        .map(|b| {
            let comp = b.complement(n);
            let s = wedge_sign(b, &comp);
            let v = &beta[comp.rank(n)] / space.plucker().get(b);
            if s > 0 {
                v
            } else {
                -v
            }
        })
        .collect();
    table.weighted_gram(&weights)
}

/// Multiplication matrices `M_{d+1}..M_n` together with the data they are
/// built from.
#[derive(Clone, Debug)]
pub struct MultMatrices {
    pub k: usize,
    pub frame: AdaptedFrame,
    /// `G = φ ∧ v_{d+1} ∧ … ∧ v_n`, positive definite.
    pub gram: RatMatrix,
    /// Symmetric `Ψ_j`, linear in `y_1..y_d`.
    pub psi: Vec<MatrixPoly>,
    /// `M_j = Ψ_j G⁻¹`.
    pub mats: Vec<MatrixPoly>,
    pub vars: Vec<String>,
}

impl MultMatrices {
    pub fn pairwise_commute(&self) -> bool {
        self.mats.iter().enumerate().all(|(i, a)| self.mats[i + 1..].iter().all(|b| a.mul(b) == b.mul(a)))
    }
}

fn require_full_support(space: &LinearSpace) -> Result<()> {
    if space.plucker().has_full_support() {
        Ok(())
    } else {
        Err(pre("entropic constructions need all Plücker coordinates nonzero"))
    }
}

pub fn mult_matrices(space: &LinearSpace, complement: Option<&RatMatrix>) -> Result<MultMatrices> {
    require_full_support(space)?;
    let frame = AdaptedFrame::new(space, complement)?;
    let (n, d) = (frame.n(), frame.d());
    let table = v_vectors(space.matroid())?;
    let k = table.k;
    let vars = var_names("y", d);
    let comp_rows: Vec<&[BigRational]> = (d + 1..=n).map(|i| frame.vector(i)).collect();
    let gram = phi_wedge(space, &table, &wedge_of_rows(&comp_rows)?);
    let gram_inv = gram.inverse().map_err(|_| pre("φ ∧ v_{d+1} ∧ … ∧ v_n is singular"))?;
    let mut psi = Vec::with_capacity(n - d);
    let mut mats = Vec::with_capacity(n - d);
    for j in d + 1..=n {
        // (−1)^{n−j−1} has the parity of n−j+1
        let negate = (n + 1 - j) % 2 == 1;
        let coeffs: Vec<RatMatrix> = (1..=d)
            .map(|i| {
                let mut rows: Vec<&[BigRational]> = (d + 1..=n).filter(|&l| l != j).map(|l| frame.vector(l)).collect();
                rows.push(frame.vector(i));
                let m = phi_wedge(space, &table, &wedge_of_rows(&rows)?);
                Ok(if negate { m.scale(&-BigRational::one()) } else { m })
            })
            .collect::<Result<_>>()?;
        let p = MatrixPoly::linear(&coeffs);
        mats.push(p.conjugate(&RatMatrix::identity(k), &gram_inv)?);
        psi.push(p);
    }
    Ok(MultMatrices { k, frame, gram, psi, mats, vars })
}

/// Exponent vectors in `n−d` variables of total degree at most `d−1`,
/// by degree and then with the first variable's power decreasing.
pub fn monomial_basis(n: usize, d: usize) -> Vec<Vec<u32>> {
    fn rec(vars: usize, deg: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if vars == 1 {
            prefix.push(deg);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=deg).rev() {
            prefix.push(e);
            rec(vars - 1, deg - e, prefix, out);
            prefix.pop();
        }
    }
    let vars = n - d;
    let mut out = Vec::new();
    if vars == 0 {
        out.push(Vec::new());
        return out;
    }
    for deg in 0..d as u32 {
        rec(vars, deg, &mut Vec::new(), &mut out);
    }
    out
}

fn monomial_label(exps: &[u32], first: usize) -> String {
    let parts: Vec<String> = exps
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| if e == 1 { format!("y{}", first + i) } else { format!("y{}^{e}", first + i) })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

/// Products `B_a = ∏ M_j^{a_j}` for every exponent vector in `basis`,
/// each built from a previously computed one by a single multiplication.
fn basis_products(mats: &[MatrixPoly], basis: &[Vec<u32>], k: usize, nvars: usize) -> Vec<MatrixPoly> {
    let mut cache: BTreeMap<Vec<u32>, MatrixPoly> = BTreeMap::new();
    for a in basis {
        let b = match a.iter().position(|&e| e > 0) {
            None => MatrixPoly::identity(k, nvars),
            Some(j) => {
                let mut prev = a.clone();
                prev[j] -= 1;
                cache[&prev].mul(&mats[j])
            }
        };
        cache.insert(a.clone(), b);
    }
    basis.iter().map(|a| cache[a].clone()).collect()
}

#[derive(Clone, Debug)]
pub struct TraceForm {
    pub basis: Vec<Vec<u32>>,
    pub labels: Vec<String>,
    pub h: Vec<Vec<MultiPoly>>,
    pub det_raw: MultiPoly,
    pub det_normalized: MultiPoly,
}

impl TraceForm {
    pub fn is_symmetric(&self) -> bool {
        let k = self.h.len();
        (0..k).all(|r| (0..k).all(|c| self.h[r][c] == self.h[c][r]))
    }
}

fn trace_form_of(mats: &[MatrixPoly], n: usize, d: usize, k: usize, vars: &[String]) -> Result<TraceForm> {
    let basis = monomial_basis(n, d);
    if basis.len() != k {
        return Err(internal(format!("monomial basis has {} elements, expected {k}", basis.len())));
    }
    let products = basis_products(mats, &basis, k, d);
    let pairs: Vec<(usize, usize)> = (0..k).flat_map(|a| (a..k).map(move |b| (a, b))).collect();
    let vals: Vec<MultiPoly> = pairs.par_iter().map(|&(a, b)| products[a].trace_of_product(&products[b], vars)).collect();
    let mut h = vec![vec![MultiPoly::zero(vars.to_vec()); k]; k];
    for ((a, b), v) in pairs.into_iter().zip(vals) {
        h[b][a] = v.clone();
        h[a][b] = v;
    }
    let det_raw = laplace_det(&h).unwrap_or_else(|| MultiPoly::one(vars.to_vec()));
    let det_normalized = if det_raw.is_zero() { det_raw.clone() } else { det_raw.normalized().0 };
    let labels = basis.iter().map(|a| monomial_label(a, d + 1)).collect();
    Ok(TraceForm { basis, labels, h, det_raw, det_normalized })
}

/// The trace form `H_{ab} = tr(B_a B_b)` and its determinant.
pub fn trace_form_disc(space: &LinearSpace, complement: Option<&RatMatrix>) -> Result<(MultMatrices, TraceForm)> {
    let mm = mult_matrices(space, complement)?;
    let tf = trace_form_of(&mm.mats, mm.frame.n(), mm.frame.d(), mm.k, &mm.vars)?;
    Ok((mm, tf))
}

/// The same trace form through `N_j = L⁻¹ Ψ_j L⁻ᵀ D⁻¹` for `G = L D Lᵀ`.
pub fn trace_form_ldl_route(mm: &MultMatrices) -> Result<TraceForm> {
    let ldl = mm.gram.ldl()?;
    let linv = ldl.lower.inverse()?;
    let mut dinv = RatMatrix::zeros(mm.k, mm.k);
    for (i, v) in ldl.diag.iter().enumerate() {
        dinv.set(i, i, v.recip());
    }
    let right = linv.transpose().mul(&dinv)?;
    let mats: Vec<MatrixPoly> = mm.psi.iter().map(|p| p.conjugate(&linv, &right)).collect::<Result<_>>()?;
    trace_form_of(&mats, mm.frame.n(), mm.frame.d(), mm.k, &mm.vars)
}

/// Degree of the minimal polynomial, from the rank of `I, M, M², …`.
pub fn minimal_polynomial_degree(m: &RatMatrix) -> usize {
    let k = m.rows();
    let mut rows: Vec<Vec<BigRational>> = Vec::new();
    let mut power = RatMatrix::identity(k);
    for deg in 0..=k {
        rows.push(power.entries().to_vec());
        let mat = RatMatrix::from_rows(rows.clone()).expect("equal lengths");
        if mat.rank() < rows.len() {
            return deg;
        }
        power = power.mul(m).expect("square");
    }
    k
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SosMode {
    Exact,
    Floating,
}

/// How the factor `Q` with `QQᵀ = G` was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FactorSource {
    /// `L·√D` from an LDL factorization with square pivots.
    Cholesky,
    /// Rank-one rational congruence steps.
    Congruence,
    Supplied,
    /// `k = 1`: the multiplication matrices are scalars and need no factor.
    Scalar,
    Numeric,
}

#[derive(Clone, Debug)]
pub struct SosOptions {
    pub tolerance: f64,
    pub force_floating: bool,
    pub factor: Option<RatMatrix>,
    pub max_minors: usize,
}

impl Default for SosOptions {
    fn default() -> Self {
        Self { tolerance: DEFAULT_TOLERANCE, force_floating: false, factor: None, max_minors: MAX_MINORS }
    }
}

#[derive(Clone, Debug)]
pub enum SosTerms {
    Exact(Vec<MultiPoly>),
    Floating(Vec<FloatPoly>),
}

impl SosTerms {
    pub fn len(&self) -> usize {
        match self {
            Self::Exact(v) => v.len(),
            Self::Floating(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Clone, Debug)]
pub struct SosCertificate {
    pub mode: SosMode,
    pub source: FactorSource,
    pub factor: Option<RatMatrix>,
    pub terms: SosTerms,
    /// Relative coefficient residual; zero in exact mode.
    pub residual: f64,
    pub det: MultiPoly,
}

impl SosCertificate {
    /// `Σ q_m²` evaluated at a rational point (floating terms are rounded).
    pub fn eval_sum(&self, y: &[BigRational]) -> Result<f64> {
        Ok(match &self.terms {
            SosTerms::Exact(qs) => {
                let mut s = BigRational::zero();
                for q in qs {
                    let v = q.eval(y)?;
                    s += &v * &v;
                }
                to_f64(&s)
            }
            SosTerms::Floating(qs) => {
                let pt: Vec<f64> = y.iter().map(to_f64).collect();
                qs.iter().map(|q| q.eval(&pt).powi(2)).sum()
            }
        })
    }
}

/// Integer vectors in `[-bound, bound]^k` by increasing max-norm, first
/// nonzero entry positive.
fn candidate_vectors(k: usize, bound: i64) -> impl Iterator<Item = Vec<i64>> {
    (1..=bound).flat_map(move |b| {
        let width = (2 * b + 1) as u64;
        (0..width.pow(k as u32)).filter_map(move |mut code| {
            let mut v = Vec::with_capacity(k);
            for _ in 0..k {
                v.push((code % width) as i64 - b);
                code /= width;
            }
            let first = v.iter().find(|x| **x != 0).copied();
            (v.iter().any(|x| x.abs() == b) && first.is_some_and(|f| f > 0)).then_some(v)
        })
    })
}

/// Searches for a rational `Q` with `QQᵀ = G` by splitting off `qqᵀ` with
/// `qᵀG⁻¹q = 1` and recursing on the complement.
pub fn rational_congruence_factor(g: &RatMatrix) -> Option<RatMatrix> {
    let mut budget = CONGRUENCE_BUDGET;
    congruence_rec(g, &mut budget)
}

fn congruence_rec(g: &RatMatrix, budget: &mut usize) -> Option<RatMatrix> {
    let k = g.rows();
    if k == 0 {
        return Some(RatMatrix::zeros(0, 0));
    }
    if let Ok(ldl) = g.ldl() {
        if let Some(q) = ldl.cholesky() {
            return Some(q);
        }
    }
    if k == 1 {
        return None;
    }
    let ginv = g.inverse().ok()?;
    let bound = if k <= 4 { 3 } else { 2 };
    for z in candidate_vectors(k, bound) {
        if *budget == 0 {
            return None;
        }
        *budget -= 1;
        let z: Vec<BigRational> = z.into_iter().map(BigRational::from_integer_i64).collect();
        let gz = ginv.mul_vec(&z).ok()?;
        let val: BigRational = z.iter().zip(&gz).map(|(a, b)| a * b).sum();
        if !val.is_positive() {
            continue;
        }
        let Some(r) = rational_sqrt(&val) else { continue };
        let q: Vec<BigRational> = z.iter().map(|x| x / &r).collect();
        let u: Vec<BigRational> = gz.iter().map(|x| x / &r).collect();
        let p = RatMatrix::from_rows(vec![u]).ok()?.kernel().transpose();
        let qcol = RatMatrix::from_vec(k, 1, q.clone()).ok()?;
        let rest = g.sub(&qcol.mul(&qcol.transpose()).ok()?).ok()?;
        let ptp_inv = p.transpose().mul(&p).ok()?.inverse().ok()?;
        let proj = ptp_inv.mul(&p.transpose()).ok()?;
        let reduced = proj.mul(&rest).ok()?.mul(&proj.transpose()).ok()?;
        if let Some(sub) = congruence_rec(&reduced, budget) {
            let tail = p.mul(&sub).ok()?;
            let mut out = RatMatrix::zeros(k, k);
            for r in 0..k {
                out.set(r, 0, q[r].clone());
                for c in 1..k {
                    out.set(r, c, tail.get(r, c - 1).clone());
                }
            }
            return Some(out);
        }
    }
    None
}

trait FromI64 {
    fn from_integer_i64(v: i64) -> Self;
}

impl FromI64 for BigRational {
    fn from_integer_i64(v: i64) -> Self {
        BigRational::from_integer(v.into())
    }
}

/// Lexicographic `size`-subsets of `0..total`.
fn combinations(total: usize, size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..size).collect();
    if size > total {
        return out;
    }
    loop {
        out.push(cur.clone());
        let Some(i) = (0..size).rev().find(|&i| cur[i] != i + total - size) else { return out };
        cur[i] += 1;
        for j in i + 1..size {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

fn check_minor_count(k: usize, opts: &SosOptions) -> Result<()> {
    let count = binom(k * k, k);
    if count > opts.max_minors {
        return Err(pre(format!("certificate would list {count} minors, above the limit {}", opts.max_minors)));
    }
    Ok(())
}

/// With `QQᵀ = σG`, `A_j = σ Q⁻¹ Ψ_j Q⁻ᵀ` is symmetric and similar to `M_j`.
fn exact_terms(mm: &MultMatrices, q: Option<&RatMatrix>, sign: i8, tf: &TraceForm) -> Result<Vec<MultiPoly>> {
    let k = mm.k;
    let a: Vec<MatrixPoly> = match q {
        Some(q) => {
            let qinv = if sign < 0 { q.inverse()?.scale(&-BigRational::one()) } else { q.inverse()? };
            mm.psi.iter().map(|p| p.conjugate(&qinv, &q.inverse()?.transpose())).collect::<Result<_>>()?
        }
        None => mm.mats.clone(),
    };
    if !a.iter().all(MatrixPoly::is_symmetric) {
        return Err(internal("Q⁻¹ Ψ Q⁻ᵀ is not symmetric"));
    }
    let products = basis_products(&a, &tf.basis, k, mm.frame.d());
    let u: Vec<Vec<MultiPoly>> = products
        .iter()
        .map(|b| b.entries(&mm.vars).into_iter().flatten().collect())
        .collect();
    let minors: Vec<MultiPoly> = combinations(k * k, k)
        .par_iter()
        .filter_map(|cols| {
            let sub: Vec<Vec<MultiPoly>> = u.iter().map(|row| cols.iter().map(|&c| row[c].clone()).collect()).collect();
            laplace_det(&sub).filter(|p| !p.is_zero())
        })
        .collect();
    let sum = minors.iter().fold(MultiPoly::zero(mm.vars.clone()), |acc, q| acc.add(&q.mul(q)));
    if !sum.equals(&tf.det_raw) {
        return Err(internal("sum of squared minors differs from det(H)"));
    }
    Ok(minors)
}

/// `+1` if `G` is positive definite, `-1` if negative definite.
fn gram_sign(g: &RatMatrix) -> Result<i8> {
    if g.leading_minors_positive() {
        Ok(1)
    } else if g.scale(&-BigRational::one()).leading_minors_positive() {
        Ok(-1)
    } else {
        Err(internal("φ ∧ v_{d+1} ∧ … ∧ v_n is not definite"))
    }
}

/// Lower-triangular `Q` with `QQᵀ = G` in floating point.
fn float_cholesky(g: &RatMatrix) -> Result<Vec<Vec<f64>>> {
    let k = g.rows();
    let mut l = vec![vec![0.0; k]; k];
    for j in 0..k {
        let mut s = to_f64(g.get(j, j));
        for p in 0..j {
            s -= l[j][p] * l[j][p];
        }
        if s <= 0.0 || !s.is_finite() {
            return Err(pre("floating Cholesky factorization failed"));
        }
        l[j][j] = s.sqrt();
        for i in j + 1..k {
            let mut t = to_f64(g.get(i, j));
            for p in 0..j {
                t -= l[i][p] * l[j][p];
            }
            l[i][j] = t / l[j][j];
        }
    }
    Ok(l)
}

fn lower_inverse(l: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let k = l.len();
    let mut inv = vec![vec![0.0; k]; k];
    for c in 0..k {
        for r in c..k {
            let mut s = if r == c { 1.0 } else { 0.0 };
            for p in c..r {
                s -= l[r][p] * inv[p][c];
            }
            inv[r][c] = s / l[r][r];
        }
    }
    inv
}

type FloatMat = Vec<Vec<FloatPoly>>;

fn float_mat_mul(a: &FloatMat, b: &FloatMat) -> FloatMat {
    let k = a.len();
    let zero = a[0][0].zero_like();
    (0..k)
        .map(|r| {
            (0..k)
                .map(|c| (0..k).fold(zero.clone(), |acc, p| acc.add(&a[r][p].mul(&b[p][c]))))
                .collect()
        })
        .collect()
}

fn floating_terms(
    mm: &MultMatrices,
    target: &RatMatrix,
    sign: i8,
    tf: &TraceForm,
    tol: f64,
) -> Result<(Vec<FloatPoly>, f64)> {
    let (k, d) = (mm.k, mm.frame.d());
    let qinv = lower_inverse(&float_cholesky(target)?);
    let sign = f64::from(sign);
    let conj = |m: &RatMatrix| -> Vec<Vec<f64>> {
        let mf: Vec<Vec<f64>> = (0..k).map(|r| (0..k).map(|c| to_f64(m.get(r, c))).collect()).collect();
        (0..k)
            .map(|r| {
                (0..k)
                    .map(|c| {
                        let mut s = 0.0;
                        for p in 0..k {
                            for q in 0..k {
                                s += qinv[r][p] * mf[p][q] * qinv[c][q];
                            }
                        }
                        sign * s
                    })
                    .collect()
            })
            .collect()
    };
    let a: Vec<FloatMat> = mm
        .psi
        .iter()
        .map(|p| {
            let mut out = vec![vec![FloatPoly::zero(d); k]; k];
            for (mono, coeff) in &p.terms {
                let c = conj(coeff);
                for r in 0..k {
                    for s in 0..k {
                        if c[r][s] != 0.0 {
                            *out[r][s].terms.entry(mono.0.clone()).or_insert(0.0) += c[r][s];
                        }
                    }
                }
            }
            out
        })
        .collect();
    let mut ident = vec![vec![FloatPoly::zero(d); k]; k];
    for (i, row) in ident.iter_mut().enumerate() {
        row[i].terms.insert(vec![0; d], 1.0);
    }
    let mut cache: BTreeMap<Vec<u32>, FloatMat> = BTreeMap::new();
    for e in &tf.basis {
        let b = match e.iter().position(|&x| x > 0) {
            None => ident.clone(),
            Some(j) => {
                let mut prev = e.clone();
                prev[j] -= 1;
                float_mat_mul(&cache[&prev], &a[j])
            }
        };
        cache.insert(e.clone(), b);
    }
    let u: Vec<Vec<FloatPoly>> = tf.basis.iter().map(|e| cache[e].iter().flatten().cloned().collect()).collect();
    let minors: Vec<FloatPoly> = combinations(k * k, k)
        .par_iter()
        .filter_map(|cols| {
            let sub: Vec<Vec<FloatPoly>> = u.iter().map(|row| cols.iter().map(|&c| row[c].clone()).collect()).collect();
            laplace_det(&sub).filter(|p| p.norm() > 0.0)
        })
        .collect();
    let sum = minors.iter().fold(FloatPoly::zero(d), |acc, q| acc.add(&q.mul(q)));
    let target = FloatPoly::from_multipoly(&tf.det_raw);
    let scale = target.norm().max(f64::MIN_POSITIVE);
    let residual = sum.sub(&target).norm() / scale;
    if !(residual < tol) {
        return Err(internal(format!("floating certificate residual {residual:e} exceeds {tol:e}")));
    }
    Ok((minors, residual))
}

/// Writes `det(H)` as a sum of squares of maximal minors of `U`, whose rows
/// are `vec(B_a)` for the symmetric `A_j`.
pub fn sos_certificate(
    space: &LinearSpace,
    complement: Option<&RatMatrix>,
    opts: &SosOptions,
) -> Result<(MultMatrices, TraceForm, SosCertificate)> {
    let (mm, tf) = trace_form_disc(space, complement)?;
    check_minor_count(mm.k, opts)?;
    // the sign of G depends on the orientation of the complement basis
    let sign = gram_sign(&mm.gram)?;
    let target = if sign < 0 { mm.gram.scale(&-BigRational::one()) } else { mm.gram.clone() };
    let exact_factor = if opts.force_floating {
        None
    } else if mm.k == 1 && opts.factor.is_none() {
        Some((RatMatrix::identity(1), FactorSource::Scalar))
    } else if let Some(q) = &opts.factor {
        if q.rows() != mm.k || q.cols() != mm.k || q.mul(&q.transpose())? != target {
            return Err(pre("supplied factor Q does not satisfy QQᵀ = ±G"));
        }
        Some((q.clone(), FactorSource::Supplied))
    } else {
        match target.ldl().ok().and_then(|l| l.cholesky()) {
            Some(q) => Some((q, FactorSource::Cholesky)),
            None => rational_congruence_factor(&target).map(|q| (q, FactorSource::Congruence)),
        }
    };
    let cert = match exact_factor {
        Some((q, source)) => {
            let factor = if source == FactorSource::Scalar {
                None
            } else {
                if q.mul(&q.transpose())? != target {
                    return Err(internal("rational factor does not reproduce ±G"));
                }
                Some(&q)
            };
            let terms = exact_terms(&mm, factor, sign, &tf)?;
            SosCertificate {
                mode: SosMode::Exact,
                source,
                factor: (source != FactorSource::Scalar).then_some(q),
                terms: SosTerms::Exact(terms),
                residual: 0.0,
                det: tf.det_raw.clone(),
            }
        }
        None => {
            let (terms, residual) = floating_terms(&mm, &target, sign, &tf, opts.tolerance)?;
            SosCertificate {
                mode: SosMode::Floating,
                source: FactorSource::Numeric,
                factor: None,
                terms: SosTerms::Floating(terms),
                residual,
                det: tf.det_raw.clone(),
            }
        }
    };
    Ok((mm, tf, cert))
}

/// Discriminant of the fiber form `f = Σ_j c_j ∏_{k≠j} ℓ_k` over `y_1, y_2`,
/// where `ℓ_j = a_{1j} s + a_{2j} t`, `z = AAᵀ y` and
/// `c_j = z_2 a_{1j} − z_1 a_{2j}`. No support condition is imposed.
pub fn fiber_discriminant(a: &RatMatrix) -> Result<MultiPoly> {
    if a.rows() != 2 {
        return Err(pre("the fiber discriminant needs d = 2"));
    }
    let n = a.cols();
    if n < 3 {
        return Err(pre("the fiber discriminant needs n ≥ 3"));
    }
    let vars = var_names("y", 2);
    let gl = a.mul(&a.transpose())?;
    let y: Vec<MultiPoly> = vars.iter().map(|v| MultiPoly::var(vars.clone(), v)).collect::<Result<_>>()?;
    let z: Vec<MultiPoly> = (0..2).map(|r| y[0].scale(gl.get(r, 0)).add(&y[1].scale(gl.get(r, 1)))).collect();
    let m = n - 1;
    let mut f = vec![MultiPoly::zero(vars.clone()); m + 1];
    for j in 0..n {
        let c = z[1].scale(a.get(0, j)).sub(&z[0].scale(a.get(1, j)));
        let factors: Vec<(BigRational, BigRational)> =
            (0..n).filter(|&l| l != j).map(|l| (a.get(0, l).clone(), a.get(1, l).clone())).collect();
        let prod = BinaryForm::product_of_linear(&factors);
        for (i, coeff) in prod.coeffs.iter().enumerate() {
            f[i] = f[i].add(&c.scale(coeff));
        }
    }
    if f[0].is_zero() {
        return Err(Error::Genericity("fiber form has vanishing leading coefficient".into()));
    }
    let df: Vec<MultiPoly> = (0..m).map(|i| f[i].scale(&BigRational::from_integer(((m - i) as i64).into()))).collect();
    let sylv = sylvester_matrix(&f, &df, MultiPoly::zero(vars.clone()));
    let res = laplace_det(&sylv).ok_or_else(|| internal("empty Sylvester matrix"))?;
    let disc = res.div_exact(&f[0])?;
    // Res(f, ∂_s f) = (−1)^{m(m−1)/2} · lc · disc
    Ok(if (m * (m - 1) / 2) % 2 == 1 { disc.neg() } else { disc })
}

/// The fiber discriminant for a `d = 2` space with all Plücker coordinates
/// nonzero.
pub fn disc_oracle_d2(space: &LinearSpace) -> Result<MultiPoly> {
    if space.d() != 2 {
        return Err(pre("the discriminant oracle needs d = 2"));
    }
    require_full_support(space)?;
    fiber_discriminant(space.matrix())
}

/// Positive rational `λ` with `det(H) = λ · oracle`, if any.
pub fn proportionality(det_h: &MultiPoly, oracle: &MultiPoly) -> Option<BigRational> {
    det_h.ratio_to(oracle).filter(|r| r.is_positive())
}

pub fn as_f64_matrix(m: &RatMatrix) -> Vec<Vec<f64>> {
    (0..m.rows()).map(|r| (0..m.cols()).map(|c| m.get(r, c).to_f64().unwrap_or(f64::NAN)).collect()).collect()
}

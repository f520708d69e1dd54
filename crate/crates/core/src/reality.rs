//! Exact reality checks: real-rootedness of fibers for `d = 2`, sign-pattern
//! transversality, and the pointwise complex criterion for hyperbolicity.

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::algebra::gauss::{gauss_rank, GaussianRational};
use crate::algebra::matrix::RatMatrix;
use crate::algebra::unipoly::{sturm_real_roots, BinaryForm};
use crate::detrep::LinearSpace;
use crate::error::{dim, internal, pre, Error, Result};
use crate::exterior::{orthocomplement, pairing_transversal, PlueckerVector, Subset};
use crate::random::{small_int, SeededRng};

/// Gives up after this many consecutive identically-zero fiber forms.
const MAX_RESAMPLES: usize = 1000;

/// Accepts a matrix of Gaussian rationals only if every entry is real.
pub fn real_matrix(rows: &[Vec<GaussianRational>]) -> Result<RatMatrix> {
    if rows.iter().flatten().any(|z| !z.is_real()) {
        return Err(pre("reality checks need a real linear space"));
    }
    RatMatrix::from_rows(rows.iter().map(|r| r.iter().map(|z| z.re.clone()).collect()).collect())
}

/// The fiber binary form of degree `n−1` over a point `u`:
/// `Σ_j c_j ∏_{k≠j} ℓ_k` with `c_j = (Au)_2 a_{1j} − (Au)_1 a_{2j}`.
pub fn fiber_form(a: &RatMatrix, u: &[BigRational]) -> Result<BinaryForm> {
    if a.rows() != 2 {
        return Err(pre("fiber forms need d = 2"));
    }
    let n = a.cols();
    let z = a.mul_vec(u)?;
    let mut acc = BinaryForm::new(vec![BigRational::zero(); n]);
    for j in 0..n {
        let c = &z[1] * a.get(0, j) - &z[0] * a.get(1, j);
        if c.is_zero() {
            continue;
        }
        let factors: Vec<(BigRational, BigRational)> =
            (0..n).filter(|&k| k != j).map(|k| (a.get(0, k).clone(), a.get(1, k).clone())).collect();
        acc = acc.add(&BinaryForm::product_of_linear(&factors).scale(&c))?;
    }
    Ok(acc)
}

/// Root structure of one binary form on `ℙ¹`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootCount {
    pub distinct: usize,
    pub distinct_real: usize,
    pub squarefree: bool,
}

pub fn count_roots(f: &BinaryForm) -> Result<RootCount> {
    if f.is_zero() {
        return Err(Error::Genericity("fiber form vanishes identically".into()));
    }
    let at_inf = f.multiplicity_at_infinity();
    let p = f.dehomogenize();
    let sqf = p.squarefree_part();
    let finite = sqf.degree().unwrap_or(0);
    let real = sturm_real_roots(&sqf)?;
    let inf = usize::from(at_inf > 0);
    Ok(RootCount { distinct: finite + inf, distinct_real: real + inf, squarefree: at_inf <= 1 && p.is_squarefree() })
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FiberReport {
    pub samples: usize,
    pub resamples: usize,
    pub squarefree: usize,
    pub collisions: usize,
    pub nonreal: usize,
    /// Squarefree fibers with fewer than `n−1` distinct real roots.
    pub short: usize,
}

impl FiberReport {
    pub fn all_real(&self) -> bool {
        self.nonreal == 0 && self.short == 0
    }
}

/// Samples `trials` fibers at random integer points and counts roots.
pub fn fiber_real_root_check(space: &LinearSpace, trials: usize, rng: &mut SeededRng) -> Result<FiberReport> {
    let a = space.matrix();
    if a.rows() != 2 {
        return Err(pre("fiber root counts need d = 2"));
    }
    let n = a.cols();
    let mut report = FiberReport::default();
    while report.samples < trials {
        let u: Vec<BigRational> = (0..n).map(|_| small_int(rng, 9)).collect();
        let f = fiber_form(a, &u)?;
        if f.is_zero() {
            report.resamples += 1;
            if report.resamples > MAX_RESAMPLES {
                return Err(Error::Genericity("every sampled fiber form vanishes".into()));
            }
            continue;
        }
        report.samples += 1;
        let rc = count_roots(&f)?;
        if rc.distinct_real < rc.distinct {
            report.nonreal += 1;
        }
        if rc.squarefree {
            report.squarefree += 1;
            if rc.distinct_real != n - 1 {
                report.short += 1;
            }
        } else {
            report.collisions += 1;
        }
    }
    Ok(report)
}

/// Signs of the Plücker coordinates, `0` off the support.
pub fn sign_pattern(p: &PlueckerVector) -> Vec<i8> {
    p.coeffs().iter().map(|c| if c.is_zero() { 0 } else if c.is_positive() { 1 } else { -1 }).collect()
}

#[derive(Clone, Debug)]
pub struct StabilityReport {
    /// Signs agree up to a global flip on a nonempty common support.
    pub same_pattern: bool,
    pub pairing: BigRational,
    /// Two subsets whose relative signs disagree.
    pub sign_conflict: Option<(Subset, Subset)>,
    /// A nonzero vector of `L ∩ M` when the pairing vanishes.
    pub common_vector: Option<Vec<BigRational>>,
}

/// Compares `p(L)` with `p(M^⊥)`; `l` is `d×n` and `m` is `(n−d)×n`.
pub fn stability_transversality(l: &RatMatrix, m: &RatMatrix) -> Result<StabilityReport> {
    let n = l.cols();
    if m.cols() != n || l.rows() + m.rows() != n {
        return Err(dim("need L in Gr(d,n) and M in Gr(n-d,n)"));
    }
    let pl = PlueckerVector::from_matrix(l)?;
    let (_, mperp) = orthocomplement(m)?;
    let (sl, sm) = (sign_pattern(&pl), sign_pattern(&mperp));
    let common: Vec<usize> = (0..sl.len()).filter(|&i| sl[i] != 0 && sm[i] != 0).collect();
    let labels = pl.subsets();
    let mut sign_conflict = None;
    if let Some(&first) = common.first() {
        let rel = sl[first] * sm[first];
        if let Some(&bad) = common.iter().find(|&&i| sl[i] * sm[i] != rel) {
            sign_conflict = Some((labels[first].clone(), labels[bad].clone()));
        }
    }
    let same_pattern = !common.is_empty() && sign_conflict.is_none();
    let pairing = pairing_transversal(&pl, &mperp)?;
    if same_pattern && pairing.is_zero() {
        return Err(internal("matching sign patterns with a vanishing pairing"));
    }
    let common_vector = if pairing.is_zero() {
        let stacked = l.stack(m)?;
        let kernel = stacked.transpose().kernel();
        match kernel.rows() {
            0 => return Err(internal("vanishing pairing without a common vector")),
            _ => {
                let lambda = &kernel.row(0)[..l.rows()];
                Some((0..n).map(|c| (0..l.rows()).map(|r| &lambda[r] * l.get(r, c)).sum()).collect())
            }
        }
    } else {
        None
    };
    Ok(StabilityReport { same_pattern, pairing, sign_conflict, common_vector })
}

/// True iff `(a + ib)⁻¹ ∉ L`, where `b` is a nonzero vector of `L^⊥`.
pub fn hyp_point_check(space: &LinearSpace, a: &[BigRational], b: &[BigRational]) -> Result<bool> {
    let mat = space.matrix();
    let n = mat.cols();
    if a.len() != n || b.len() != n {
        return Err(dim("point has the wrong length"));
    }
    if b.iter().all(Zero::is_zero) {
        return Err(pre("b must be nonzero"));
    }
    if mat.mul_vec(b)?.iter().any(|x| !x.is_zero()) {
        return Err(pre("b must lie in the orthogonal complement"));
    }
    let z: Vec<GaussianRational> = a.iter().zip(b).map(|(x, y)| GaussianRational::new(x.clone(), y.clone())).collect();
    if z.iter().any(GaussianRational::is_zero) {
        return Err(pre("a + ib has a zero coordinate"));
    }
    let mut rows: Vec<Vec<GaussianRational>> =
        (0..mat.rows()).map(|r| mat.row(r).iter().map(|x| GaussianRational::real(x.clone())).collect()).collect();
    rows.push(z.iter().map(|x| x.inv().expect("nonzero coordinate")).collect());
    Ok(gauss_rank(&rows) > mat.rows())
}

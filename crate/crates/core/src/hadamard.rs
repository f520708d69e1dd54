//! The Bi-Chow form and the Hadamard-product hypersurface.

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::algebra::matrix::RatMatrix;
use crate::algebra::multipoly::{var_names, Monomial, MultiPoly};
use crate::algebra::rational::binom;
use crate::error::{dim, Error, Result};
use crate::exterior::{orthocomplement, subsets, PlueckerVector};
use crate::random::{nonzero_int, small_int, SeededRng};
use crate::simplicial::{forest_expansion, spanning_forests, AlphaSpec};

#[derive(Clone, Debug)]
pub struct BiChowForm {
    pub n: usize,
    pub d: usize,
    pub poly: MultiPoly,
}

impl BiChowForm {
    pub fn alpha_vars(&self) -> Vec<String> {
        self.poly.vars()[..binom(self.n, self.d)].to_vec()
    }

    pub fn gamma_vars(&self) -> Vec<String> {
        self.poly.vars()[binom(self.n, self.d)..].to_vec()
    }

    /// Degrees in `(α, γ)`; `None` if not bihomogeneous.
    pub fn bidegree(&self) -> Result<Option<(u32, u32)>> {
        self.poly.bidegree(&self.alpha_vars(), &self.gamma_vars())
    }

    /// Substitutes numeric `α` (one value per `d`-subset, lex order).
    pub fn specialize_alpha(&self, alpha: &[BigRational]) -> Result<MultiPoly> {
        let names = self.alpha_vars();
        if alpha.len() != names.len() {
            return Err(dim("one α value per subset expected"));
        }
        let pairs: Vec<(&str, BigRational)> = names.iter().map(|s| s.as_str()).zip(alpha.iter().cloned()).collect();
        Ok(self.poly.substitute_scalars(&pairs)?.with_vars(&self.gamma_vars())?)
    }
}

/// `P(L, M) = Σ_F c_F ∏_{I∈F} γ_I ∏_{I∉F} α_I` with both factor sets symbolic.
pub fn bichow_form(n: usize, d: usize) -> Result<BiChowForm> {
    Ok(BiChowForm { n, d, poly: forest_expansion(n, d, &AlphaSpec::Symbolic)? })
}

/// `Σ_F c_F ∏_{I∈F} γ_I ∏_{I∉F} α_I ∏_i x_i^{deg_F(i) - C(n-2,d-2)}`.
///
/// `alpha` and `gamma` give, per `d`-subset, a fixed monomial over `vars`
/// and a coefficient, so the same routine serves symbolic and numeric
/// inputs.
fn hadamard_terms(
    n: usize,
    d: usize,
    vars: Vec<String>,
    x_offset: usize,
    alpha: &dyn Fn(usize) -> (Vec<(usize, u32)>, BigRational),
    gamma: &dyn Fn(usize) -> (Vec<(usize, u32)>, BigRational),
) -> Result<MultiPoly> {
    let faces = subsets(n, d);
    let forests = spanning_forests(n, d)?;
    let base = if d >= 2 { binom(n - 2, d - 2) as u32 } else { 0 };
    let nv = vars.len();
    let mut out = MultiPoly::zero(vars);
    for f in forests.iter() {
        let mut e = vec![0u32; nv];
        let mut coeff = BigRational::from_integer(f.coefficient.clone());
        for (c, _) in faces.iter().enumerate() {
            let (mono, val) = if f.columns.binary_search(&c).is_ok() { gamma(c) } else { alpha(c) };
            for (i, k) in mono {
                e[i] += k;
            }
            coeff *= val;
        }
        for i in 1..=n {
            let deg = f.vertex_degree(&faces, i) as u32;
            if deg < base {
                return Err(Error::Genericity(format!(
                    "vertex {i} has degree {deg} < {base} in a spanning forest"
                )));
            }
            e[x_offset + i - 1] = deg - base;
        }
        out.add_term(Monomial(e), coeff);
    }
    Ok(out)
}

/// The Hadamard hypersurface with `α`, `γ` symbolic (`a_I`, `g_I`) and
/// coordinates `x1..xn`.
pub fn hadamard_symbolic(n: usize, d: usize) -> Result<MultiPoly> {
    let nf = binom(n, d);
    let faces = subsets(n, d);
    let mut vars: Vec<String> = faces.iter().map(|s| crate::detrep::var_name("a", s)).collect();
    vars.extend(faces.iter().map(|s| crate::detrep::var_name("g", s)));
    vars.extend(var_names("x", n));
    hadamard_terms(
        n,
        d,
        vars,
        2 * nf,
        &|c| (vec![(c, 1)], BigRational::one()),
        &|c| (vec![(nf + c, 1)], BigRational::one()),
    )
}

/// Defining polynomial of `L ⋆ M` in `x1..xn`, content 1 with positive
/// leading coefficient. `l` is `d×n`, `m` is `(n-d)×n`.
pub fn hadamard_surface(l: &RatMatrix, m: &RatMatrix) -> Result<MultiPoly> {
    let (d, n) = (l.rows(), l.cols());
    if m.cols() != n || m.rows() + d != n {
        return Err(dim(format!("need L in Gr(d,n) and M in Gr(n-d,n); got {}x{} and {}x{}", d, n, m.rows(), m.cols())));
    }
    let alpha = PlueckerVector::from_matrix(l)?;
    let (_, mperp) = orthocomplement(m)?;
    if !alpha.has_full_support() || !mperp.has_full_support() {
        return Err(Error::Genericity("both spaces need nonzero Plücker coordinates".into()));
    }
    let a = alpha.coeffs().to_vec();
    let g = mperp.coeffs().to_vec();
    let p = hadamard_terms(n, d, var_names("x", n), 0, &|c| (vec![], a[c].clone()), &|c| (vec![], g[c].clone()))?;
    if p.is_zero() {
        return Err(Error::Genericity("Hadamard polynomial vanishes identically".into()));
    }
    Ok(p.normalized().0)
}

/// Degree of the Hadamard hypersurface for generic inputs.
pub fn expected_degree(n: usize, d: usize) -> usize {
    binom(n - 2, d - 1)
}

/// Samples `trials` products `a ⋆ b` with `a ∈ L`, `b ∈ M` and checks the
/// polynomial vanishes on each, then checks a random point off the
/// product does not vanish. Zero trials is vacuously true.
pub fn membership_check(poly: &MultiPoly, l: &RatMatrix, m: &RatMatrix, trials: usize, rng: &mut SeededRng) -> Result<bool> {
    if trials == 0 {
        return Ok(true);
    }
    let n = l.cols();
    if poly.nvars() != n {
        return Err(dim("polynomial variables do not match the ambient dimension"));
    }
    let combo = |mat: &RatMatrix, rng: &mut SeededRng| -> Vec<BigRational> {
        let coeffs: Vec<BigRational> = (0..mat.rows()).map(|_| nonzero_int(rng, 5)).collect();
        (0..n).map(|c| (0..mat.rows()).map(|r| &coeffs[r] * mat.get(r, c)).sum()).collect()
    };
    for _ in 0..trials {
        let a = combo(l, rng);
        let b = combo(m, rng);
        let pt: Vec<BigRational> = a.iter().zip(&b).map(|(x, y)| x * y).collect();
        if !poly.eval(&pt)?.is_zero() {
            return Ok(false);
        }
    }
    for _ in 0..32 {
        let pt: Vec<BigRational> = (0..n).map(|_| small_int(rng, 9)).collect();
        if !poly.eval(&pt)?.is_zero() {
            return Ok(true);
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::int;
    use crate::random::{random_full_rank, rng_from_seed};

    #[test]
    fn bichow_of_k4() {
        let p = bichow_form(4, 2).unwrap();
        assert_eq!(p.poly.num_terms(), 16);
        assert_eq!(p.bidegree().unwrap(), Some((3, 3)));
        assert_eq!(p.poly.total_degree(), Some(6));
    }

    #[test]
    fn bichow_bidegree_for_triangles() {
        let p = bichow_form(5, 3).unwrap();
        assert_eq!(p.bidegree().unwrap(), Some((binom(4, 3) as u32, binom(4, 2) as u32)));
    }

    #[test]
    fn forest_degrees_dominate_the_cone_bound() {
        for (n, d) in [(4, 2), (5, 2), (5, 3), (6, 3)] {
            let faces = subsets(n, d);
            let base = binom(n - 2, d - 2);
            let forests = spanning_forests(n, d).unwrap();
            for i in 1..=n {
                let degs: Vec<usize> = forests.iter().map(|f| f.vertex_degree(&faces, i)).collect();
                assert!(degs.iter().all(|&g| g >= base));
                assert!(degs.contains(&base));
            }
        }
    }

    #[test]
    fn symbolic_quadric_for_k4() {
        let h = hadamard_symbolic(4, 2).unwrap();
        assert_eq!(h.num_terms(), 16);
        let x: Vec<String> = var_names("x", 4);
        let rest: Vec<String> = h.vars()[..12].to_vec();
        assert_eq!(h.bidegree(&rest, &x).unwrap(), Some((6, 2)));
        let t = h
            .coeff_of(&[("a_23", 1), ("a_24", 1), ("a_34", 1), ("g_12", 1), ("g_13", 1), ("g_14", 1), ("x1", 2)])
            .unwrap();
        assert_eq!(t, int(1));
    }

    #[test]
    fn numeric_surface_contains_products() {
        let mut rng = rng_from_seed(5);
        let (l, m) = loop {
            let l = random_full_rank(&mut rng, 2, 4, 4);
            let m = random_full_rank(&mut rng, 2, 4, 4);
            if let Ok(h) = hadamard_surface(&l, &m) {
                assert_eq!(h.total_degree(), Some(expected_degree(4, 2) as u32));
                break (l, m);
            }
        };
        let h = hadamard_surface(&l, &m).unwrap();
        assert!(membership_check(&h, &l, &m, 20, &mut rng).unwrap());
        let mut bad = h.clone();
        let (mono, _) = h.leading_term().map(|(a, b)| (a.clone(), b.clone())).unwrap();
        bad.add_term(mono, int(1));
        assert!(!membership_check(&bad, &l, &m, 20, &mut rng).unwrap());
        assert!(membership_check(&bad, &l, &m, 0, &mut rng).unwrap());
    }

    #[test]
    fn zero_coordinate_is_a_genericity_error() {
        let l = RatMatrix::from_i64(&[&[1, 0, 1, 1], &[0, 1, 1, 2]]);
        let m = RatMatrix::from_i64(&[&[1, 0, 0, 1], &[0, 1, 1, 0]]);
        assert!(matches!(hadamard_surface(&l, &m), Err(Error::Genericity(_))));
    }
}

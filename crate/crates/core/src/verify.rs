//! Bundled randomized self-checks, grouped into suites. Each check compares
//! a construction with an independent computation.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::algebra::matrix::RatMatrix;
use crate::algebra::snf::{smith_normal_form, IntMatrix};
use crate::algebra::unipoly::{sturm_real_roots, sylvester_resultant, UniPoly};
use crate::detrep::{
    chow_form_cleared, hb_basis, kernel_witness_check, v_vectors, v_vectors_by_relations, Convention, LinearSpace,
    PlueckerVectorLike,
};
use crate::entropic::{disc_oracle_d2, mult_matrices, proportionality, trace_form_disc, trace_form_ldl_route};
use crate::error::Result;
use crate::exterior::{orthocomplement, pairing_transversal, PlueckerVector, Subset};
use crate::hadamard::{expected_degree, hadamard_surface, membership_check};
use crate::matroid::Matroid;
use crate::random::{
    nonzero_int, point_in_rowspan, random_full_rank, random_full_support, random_sparse_full_rank, rng_from_seed,
    small_int, SeededRng,
};
use crate::reality::{fiber_real_root_check, hyp_point_check, stability_transversality};
use crate::simplicial::{fiber_forms, forest_expansion, forest_torsion, tree_resultant, AlphaSpec};

pub const SUITES: [&str; 8] = ["algebra", "exterior", "matroid", "detrep", "simplicial", "hadamard", "entropic", "reality"];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub suite: String,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

struct Runner {
    suite: &'static str,
    out: Vec<CheckOutcome>,
}

impl Runner {
    fn check(&mut self, name: &str, f: impl FnOnce() -> Result<(bool, String)>) {
        let (passed, detail) = match f() {
            Ok(v) => v,
            Err(e) => (false, format!("error: {e}")),
        };
        self.out.push(CheckOutcome { suite: self.suite.into(), name: name.into(), passed, detail });
    }
}

/// Runs one suite, or every suite for `"all"`. Unknown names yield `None`.
pub fn run_suite(name: &str, seed: u64) -> Option<Vec<CheckOutcome>> {
    if name == "all" {
        return Some(SUITES.iter().flat_map(|s| run_suite(s, seed).unwrap_or_default()).collect());
    }
    let suite = *SUITES.iter().find(|s| **s == name)?;
    let mut r = Runner { suite, out: Vec::new() };
    let mut rng = rng_from_seed(seed);
    match suite {
        "algebra" => algebra(&mut r, &mut rng),
        "exterior" => exterior(&mut r, &mut rng),
        "matroid" => matroid(&mut r, &mut rng),
        "detrep" => detrep(&mut r, &mut rng),
        "simplicial" => simplicial(&mut r, &mut rng),
        "hadamard" => hadamard(&mut r, &mut rng),
        "entropic" => entropic(&mut r, &mut rng),
        _ => reality(&mut r, &mut rng),
    }
    Some(r.out)
}

fn cofactor_det(m: &RatMatrix) -> BigRational {
    let k = m.rows();
    if k == 1 {
        return m.get(0, 0).clone();
    }
    (0..k)
        .map(|c| {
            let rest: Vec<usize> = (0..k).filter(|&x| x != c).collect();
            let minor = m.select_rows(&(1..k).collect::<Vec<_>>()).select_columns(&rest);
            let t = m.get(0, c) * cofactor_det(&minor);
            if c % 2 == 0 {
                t
            } else {
                -t
            }
        })
        .sum()
}

fn algebra(r: &mut Runner, rng: &mut SeededRng) {
    r.check("bareiss determinant equals cofactor expansion", || {
        let g = RatMatrix::from_i64(&[&[3, -1, -1], &[-1, 3, -1], &[-1, -1, 3]]);
        let mut ok = g.det()? == BigRational::from_integer(16.into());
        for _ in 0..20 {
            let m = random_full_rank(rng, 4, 4, 5);
            ok &= m.det()? == cofactor_det(&m);
        }
        Ok((ok, "21 matrices".into()))
    });
    r.check("Smith normal form product equals |det|", || {
        let mut ok = true;
        for _ in 0..20 {
            let m = random_full_rank(rng, 3, 3, 6);
            let ints: Vec<Vec<BigInt>> = m.row_vecs().iter().map(|row| row.iter().map(|x| x.to_integer()).collect()).collect();
            let prod: BigInt = smith_normal_form(&IntMatrix::new(ints)?).iter().product();
            ok &= BigRational::from_integer(prod.abs()) == m.det()?.abs();
        }
        Ok((ok, "20 matrices".into()))
    });
    r.check("Sturm count on products of linear factors", || {
        let mut ok = true;
        for _ in 0..20 {
            let roots: Vec<i64> = (0..4).map(|_| small_int(rng, 6).to_integer().try_into().unwrap_or(0)).collect();
            let mut p = UniPoly::from_i64(&[1]);
            for &x in &roots {
                p = p.mul(&UniPoly::from_i64(&[-x, 1]));
            }
            p = p.mul(&UniPoly::from_i64(&[1, 0, 1]));
            let mut distinct = roots.clone();
            distinct.sort_unstable();
            distinct.dedup();
            ok &= sturm_real_roots(&p.squarefree_part())? == distinct.len();
        }
        Ok((ok, "20 polynomials".into()))
    });
    r.check("LDL reconstructs symmetric matrices", || {
        let mut ok = true;
        for _ in 0..10 {
            let a = random_full_rank(rng, 3, 3, 4);
            let g = a.mul(&a.transpose())?;
            let ldl = g.ldl()?;
            let mut d = RatMatrix::zeros(3, 3);
            for (i, v) in ldl.diag.iter().enumerate() {
                d.set(i, i, v.clone());
            }
            ok &= ldl.lower.mul(&d)?.mul(&ldl.lower.transpose())? == g;
        }
        Ok((ok, "10 Gram matrices".into()))
    });
}

fn exterior(r: &mut Runner, rng: &mut SeededRng) {
    r.check("random Plücker vectors satisfy three-term relations", || {
        let mut ok = true;
        for _ in 0..10 {
            let m = random_full_rank(rng, 2, 5, 4);
            ok &= PlueckerVector::from_matrix(&m)?.satisfies_three_term_relations();
        }
        Ok((ok, "10 spaces in Gr(2,5)".into()))
    });
    r.check("orthogonal complement is the Hodge dual", || {
        let mut ok = true;
        for _ in 0..10 {
            let m = random_full_rank(rng, 2, 5, 4);
            let p = PlueckerVector::from_matrix(&m)?;
            let (_, perp) = orthocomplement(&m)?;
            ok &= perp.ratio_to(&p.dual()).is_some();
        }
        Ok((ok, "10 spaces".into()))
    });
    r.check("pairing vanishes exactly on intersecting pairs", || {
        let mut ok = true;
        for _ in 0..10 {
            let l = random_full_rank(rng, 2, 4, 3);
            let m = random_full_rank(rng, 2, 4, 3);
            let (_, mperp) = orthocomplement(&m)?;
            let meets = l.stack(&m)?.rank() < 4;
            ok &= pairing_transversal(&PlueckerVector::from_matrix(&l)?, &mperp)?.is_zero() == meets;
        }
        Ok((ok, "10 pairs".into()))
    });
}

fn matroid(r: &mut Runner, rng: &mut SeededRng) {
    r.check("five-point example", || {
        let a = RatMatrix::from_i64(&[&[1, 0, 0, 1, 1], &[0, 1, 0, 1, 0], &[0, 0, 1, 0, 1]]);
        let m = Matroid::from_support(&PlueckerVector::from_matrix(&a)?)?;
        let labels: Vec<String> = m.bcc()?.facets.iter().map(Subset::label).collect();
        Ok((labels == ["145", "235", "245", "345"], labels.join(",")))
    });
    r.check("maximal bases of the order are the BCC facets", || {
        let mut ok = true;
        for _ in 0..20 {
            let a = random_sparse_full_rank(rng, 3, 6, 2, 0.3);
            let m = Matroid::from_support(&PlueckerVector::from_matrix(&a)?)?;
            ok &= m.basis_order()?.maximal == m.bcc()?.facets;
        }
        Ok((ok, "20 matroids".into()))
    });
}

fn detrep(r: &mut Runner, rng: &mut SeededRng) {
    r.check("dim H_B equals the number of BCC facets", || {
        let mut ok = true;
        for i in 0..20 {
            let n = 4 + i % 3;
            let d = 2 + i % (n - 2);
            let space = LinearSpace::new(random_sparse_full_rank(rng, d, n, 2, 0.3))?;
            ok &= hb_basis(space.matroid())?.matrix.rows() == space.matroid().bcc()?.degree();
        }
        Ok((ok, "20 spaces".into()))
    });
    r.check("v-vectors agree with the relation route", || {
        let mut ok = true;
        for _ in 0..10 {
            let space = LinearSpace::new(random_sparse_full_rank(rng, 3, 6, 2, 0.3))?;
            ok &= v_vectors(space.matroid())?.equal_up_to_column_signs(&v_vectors_by_relations(space.matroid())?);
        }
        Ok((ok, "10 spaces".into()))
    });
    r.check("kernel witnesses are annihilated", || {
        let mut done = 0;
        let mut ok = true;
        while done < 10 {
            let a = random_full_support(rng, 2, 5, 3);
            let space = LinearSpace::new(a.clone())?;
            let x = point_in_rowspan(rng, &a, 3);
            if x.iter().any(Zero::is_zero) {
                continue;
            }
            let w: Vec<BigRational> = x.iter().map(|v| v.recip()).collect();
            let delta = PlueckerVectorLike { degree: 2, coeffs: (0..10).map(|_| small_int(rng, 4)).collect() };
            ok &= kernel_witness_check(&space, &w, &delta)?;
            done += 1;
        }
        Ok((ok, "10 witnesses".into()))
    });
}

fn simplicial(r: &mut Runner, rng: &mut SeededRng) {
    r.check("torsion forest in the 2-skeleton of the 5-simplex", || {
        let faces: Vec<Subset> = ["123", "124", "136", "145", "156", "235", "246", "256", "345", "346"]
            .iter()
            .map(|l| Subset::parse(l))
            .collect::<Result<_>>()?;
        let (det, order) = forest_torsion(6, &faces)?;
        Ok((det.abs() == BigInt::from(2) && order == BigInt::from(2), format!("det {det}, coker {order}")))
    });
    r.check("forest expansion equals the cleared Chow form", || {
        let mut ok = true;
        for (d, n) in [(2, 4), (2, 5), (3, 5)] {
            let space = LinearSpace::new(random_full_support(rng, d, n, 4))?;
            let alpha = AlphaSpec::Numeric(space.plucker().coeffs().to_vec());
            ok &= chow_form_cleared(&space, Convention::Gamma)?.equals(&forest_expansion(n, d, &alpha)?);
        }
        Ok((ok, "U(2,4), U(2,5), U(3,5)".into()))
    });
    r.check("tree sum vanishes iff the Sylvester resultant does", || {
        let mut ok = true;
        for i in 0..20 {
            let n = 3 + i % 3;
            let a = random_full_support(rng, 2, n, 3);
            let c = if i % 4 == 0 {
                // forces a common root of the two fiber forms
                let lam = [nonzero_int(rng, 3), nonzero_int(rng, 3)];
                let row: Vec<BigRational> = (0..n).map(|j| &lam[0] * a.get(0, j) + &lam[1] * a.get(1, j)).collect();
                let other: Vec<BigRational> = (0..n).map(|_| small_int(rng, 3)).collect();
                RatMatrix::from_rows(vec![row, other])?
            } else {
                random_full_rank(rng, 2, n, 3)
            };
            let (f, g) = fiber_forms(&a, &c)?;
            ok &= tree_resultant(&a, &c)?.is_zero() == sylvester_resultant(&f, &g)?.is_zero();
        }
        Ok((ok, "20 instances".into()))
    });
}

fn hadamard(r: &mut Runner, rng: &mut SeededRng) {
    r.check("Hadamard surface degree and membership", || {
        let mut ok = true;
        for n in [4, 5] {
            let l = random_full_support(rng, 2, n, 4);
            let m = random_full_support(rng, n - 2, n, 4);
            let h = match hadamard_surface(&l, &m) {
                Ok(h) => h,
                Err(e) if matches!(e, crate::Error::Genericity(_)) => continue,
                Err(e) => return Err(e),
            };
            ok &= h.total_degree() == Some(expected_degree(n, 2) as u32);
            ok &= membership_check(&h, &l, &m, 10, rng)?;
        }
        Ok((ok, "Gr(2,4), Gr(2,5)".into()))
    });
}

fn example_space() -> Result<(LinearSpace, RatMatrix)> {
    let a = RatMatrix::from_i64(&[&[1, 1, 1, 1], &[0, 1, 2, 3]]);
    let comp = RatMatrix::from_i64(&[&[-1, 2, -1, 0], &[0, -1, 2, -1]]);
    Ok((LinearSpace::new(a)?, comp))
}

fn entropic(r: &mut Runner, rng: &mut SeededRng) {
    r.check("worked Gr(2,4) example: G and det(H)", || {
        let (space, comp) = example_space()?;
        let (mm, tf) = trace_form_disc(&space, Some(&comp))?;
        let g_ok = mm.gram == RatMatrix::from_i64(&[&[3, -1, -1], &[-1, 3, -1], &[-1, -1, 3]]);
        let want = [45, 270, 763, 1074, 773];
        let coeffs: Vec<BigRational> = (0..5)
            .map(|i| tf.det_normalized.coeff(&crate::algebra::Monomial(vec![4 - i, i])))
            .collect();
        let d_ok = coeffs.iter().zip(want).all(|(c, w)| *c == BigRational::from_integer(w.into()));
        Ok((g_ok && d_ok && tf.det_normalized.num_terms() == 5, tf.det_normalized.to_string()))
    });
    r.check("random Gr(2,5): commuting, similarity-invariant, nonnegative, oracle", || {
        let mut ok = true;
        for _ in 0..2 {
            let space = LinearSpace::new(random_full_support(rng, 2, 5, 3))?;
            let mm = mult_matrices(&space, None)?;
            ok &= mm.pairwise_commute();
            let (_, tf) = trace_form_disc(&space, None)?;
            ok &= trace_form_ldl_route(&mm)?.h == tf.h;
            for _ in 0..20 {
                let pt = [small_int(rng, 5), small_int(rng, 5)];
                ok &= !tf.det_raw.eval(&pt)?.is_negative();
            }
            ok &= proportionality(&tf.det_raw, &disc_oracle_d2(&space)?).is_some();
        }
        Ok((ok, "2 spaces".into()))
    });
}

fn reality(r: &mut Runner, rng: &mut SeededRng) {
    r.check("fibers are real-rooted", || {
        let mut ok = true;
        for n in [4, 5] {
            let space = LinearSpace::new(random_full_support(rng, 2, n, 4))?;
            ok &= fiber_real_root_check(&space, 30, rng)?.all_real();
        }
        Ok((ok, "2 spaces, 30 fibers each".into()))
    });
    r.check("complex points of the complement avoid the inverse", || {
        let mut ok = true;
        let mut done = 0;
        while done < 30 {
            let a = random_sparse_full_rank(rng, 2, 5, 4, 0.2);
            let space = LinearSpace::new(a.clone())?;
            let (perp, _) = orthocomplement(&a)?;
            let b = point_in_rowspan(rng, &perp, 3);
            let x: Vec<BigRational> = (0..5).map(|_| small_int(rng, 5)).collect();
            match hyp_point_check(&space, &x, &b) {
                Ok(v) => {
                    ok &= v;
                    done += 1;
                }
                Err(crate::Error::Precondition(_)) => {}
                Err(e) => return Err(e),
            }
        }
        Ok((ok, "30 points".into()))
    });
    r.check("sign-pattern transversality", || {
        let l = RatMatrix::from_i64(&[&[1, 1, 1, 1], &[0, 1, 2, 3]]);
        let (lperp, _) = orthocomplement(&l)?;
        let same = stability_transversality(&l, &lperp)?;
        let m = RatMatrix::from_i64(&[&[1, 1, 1, 1], &[1, -1, 0, 0]]);
        let mixed = stability_transversality(&l, &m)?;
        let ok = same.same_pattern && same.pairing.is_positive() && !mixed.same_pattern && mixed.pairing.is_zero();
        Ok((ok, format!("pairings {} and {}", same.pairing, mixed.pairing)))
    });
}

//! Subsets of `[n]`, exterior-algebra signs, Plücker vectors, the
//! `⋀^d ↔ ⋀^{n-d}` duality and the transversality pairing.
//!
//! Ground-set elements are 1-based. Subsets of a fixed size are indexed by
//! their lexicographic rank, which is the coordinate order of every
//! [`PlueckerVector`].

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::algebra::matrix::RatMatrix;
use crate::algebra::rational::{binom, to_short};
use crate::error::{dim, pre, Error, Result};

/// Strictly increasing elements of `[n]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subset(pub Vec<usize>);

impl Subset {
    pub fn new(mut elems: Vec<usize>) -> Self {
        elems.sort_unstable();
        elems.dedup();
        Subset(elems)
    }

    /// Parses digit strings such as `"124"` (ground sets up to 9 elements).
    pub fn parse(s: &str) -> Result<Self> {
        let elems: Option<Vec<usize>> = s.chars().map(|c| c.to_digit(10).map(|d| d as usize)).collect();
        let elems = elems.ok_or_else(|| Error::Parse(format!("bad subset label {s:?}")))?;
        if elems.iter().any(|&e| e == 0) {
            return Err(Error::Parse(format!("subset label {s:?} uses element 0")));
        }
        Ok(Subset::new(elems))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, e: usize) -> bool {
        self.0.binary_search(&e).is_ok()
    }

    pub fn elems(&self) -> &[usize] {
        &self.0
    }

    pub fn largest(&self) -> Option<usize> {
        self.0.last().copied()
    }

    pub fn sum(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn complement(&self, n: usize) -> Subset {
        Subset((1..=n).filter(|e| !self.contains(*e)).collect())
    }

    pub fn union(&self, o: &Subset) -> Subset {
        let mut v = self.0.clone();
        v.extend(&o.0);
        Subset::new(v)
    }

    pub fn minus(&self, o: &Subset) -> Subset {
        Subset(self.0.iter().copied().filter(|e| !o.contains(*e)).collect())
    }

    pub fn with(&self, e: usize) -> Subset {
        let mut v = self.0.clone();
        v.push(e);
        Subset::new(v)
    }

    pub fn without(&self, e: usize) -> Subset {
        Subset(self.0.iter().copied().filter(|&x| x != e).collect())
    }

    pub fn is_subset_of(&self, o: &Subset) -> bool {
        self.0.iter().all(|e| o.contains(*e))
    }

    /// Compact label: `"124"` when every element is a single digit,
    /// otherwise dot separated.
    pub fn label(&self) -> String {
        if self.0.iter().all(|&e| e < 10) {
            self.0.iter().map(|e| e.to_string()).collect()
        } else {
            self.0.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(".")
        }
    }

    /// Lexicographic rank among the `|self|`-subsets of `[n]`.
    pub fn rank(&self, n: usize) -> usize {
        let d = self.len();
        let mut r = 0;
        let mut prev = 0;
        for (i, &e) in self.0.iter().enumerate() {
            for skipped in prev + 1..e {
                r += binom(n - skipped, d - i - 1);
            }
            prev = e;
        }
        r
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

/// All `d`-subsets of `[n]` in lexicographic order.
pub fn subsets(n: usize, d: usize) -> Vec<Subset> {
    let mut out = Vec::with_capacity(binom(n, d));
    let mut cur: Vec<usize> = (1..=d).collect();
    if d > n {
        return out;
    }
    loop {
        out.push(Subset(cur.clone()));
        let Some(i) = (0..d).rev().find(|&i| cur[i] < n - d + i + 1) else {
            break;
        };
        cur[i] += 1;
        for j in i + 1..d {
            cur[j] = cur[j - 1] + 1;
        }
    }
    out
}

/// Parity of `s(I) = d(d+1)/2 + Σ_{i∈I} i`; `true` when odd.
pub fn sign_exponent(set: &Subset, d: usize) -> Result<bool> {
    if set.len() != d {
        return Err(dim(format!("subset {set} has size {}, expected {d}", set.len())));
    }
    Ok(s_parity(set))
}

pub(crate) fn s_parity(set: &Subset) -> bool {
    let d = set.len();
    (d * (d + 1) / 2 + set.sum()) % 2 == 1
}

/// `±1` for the sign `(-1)^{s(I)}`.
pub fn s_sign(set: &Subset) -> BigRational {
    if s_parity(set) {
        -BigRational::one()
    } else {
        BigRational::one()
    }
}

/// Sign of the permutation sorting the concatenation `I, J`; zero when
/// they overlap. This is the coefficient of `e_{I∪J}` in `e_I ∧ e_J`.
pub fn wedge_sign(a: &Subset, b: &Subset) -> i8 {
    let mut inversions = 0usize;
    for &x in &a.0 {
        for &y in &b.0 {
            if x == y {
                return 0;
            }
            if x > y {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Sign of sorting an arbitrary sequence, zero on repeats.
pub fn sort_sign(seq: &[usize]) -> i8 {
    let mut inv = 0usize;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] == seq[j] {
                return 0;
            }
            if seq[i] > seq[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Coefficients of a `d`-vector in `⋀^d ℚ^n`, indexed by lex-ranked subsets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlueckerVector {
    n: usize,
    d: usize,
    coeffs: Vec<BigRational>,
}

impl PlueckerVector {
    pub fn new(n: usize, d: usize, coeffs: Vec<BigRational>) -> Result<Self> {
        if d > n || coeffs.len() != binom(n, d) {
            return Err(dim(format!(
                "{} coefficients for Gr({d},{n}), expected {}",
                coeffs.len(),
                binom(n, d)
            )));
        }
        if coeffs.iter().all(Zero::is_zero) {
            return Err(pre("Plücker vector is identically zero"));
        }
        Ok(Self { n, d, coeffs })
    }

    /// Maximal minors of a full-rank `d×n` matrix.
    pub fn from_matrix(a: &RatMatrix) -> Result<Self> {
        let (d, n) = (a.rows(), a.cols());
        if d > n {
            return Err(dim(format!("{d}x{n} matrix has more rows than columns")));
        }
        let coeffs: Vec<BigRational> = subsets(n, d)
            .iter()
            .map(|s| {
                let cols: Vec<usize> = s.0.iter().map(|e| e - 1).collect();
                a.select_columns(&cols).det()
            })
            .collect::<Result<_>>()?;
        if coeffs.iter().all(Zero::is_zero) {
            return Err(pre(format!("matrix has rank < {d}")));
        }
        Ok(Self { n, d, coeffs })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn subsets(&self) -> Vec<Subset> {
        subsets(self.n, self.d)
    }

    pub fn get(&self, set: &Subset) -> BigRational {
        if set.len() != self.d || set.0.iter().any(|&e| e == 0 || e > self.n) {
            return BigRational::zero();
        }
        self.coeffs[set.rank(self.n)].clone()
    }

    /// Alternating extension to unsorted index sequences.
    pub fn get_seq(&self, seq: &[usize]) -> BigRational {
        match sort_sign(seq) {
            0 => BigRational::zero(),
            s => {
                let v = self.get(&Subset::new(seq.to_vec()));
                if s < 0 {
                    -v
                } else {
                    v
                }
            }
        }
    }

    pub fn support(&self) -> Vec<Subset> {
        self.subsets()
            .into_iter()
            .zip(&self.coeffs)
            .filter(|(_, c)| !c.is_zero())
            .map(|(s, _)| s)
            .collect()
    }

    pub fn has_full_support(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_zero())
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        Self { n: self.n, d: self.d, coeffs: self.coeffs.iter().map(|c| c * s).collect() }
    }

    /// Scaled so the first nonzero coordinate is positive and the
    /// coordinates are coprime integers; for display only.
    pub fn display_normalized(&self) -> Self {
        use num_integer::Integer;
        let mut num = num_bigint::BigInt::zero();
        let mut den = num_bigint::BigInt::one();
        for c in &self.coeffs {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
        let mut g = BigRational::new(num, den);
        if self.coeffs.iter().find(|c| !c.is_zero()).is_some_and(|c| c.is_negative()) {
            g = -g;
        }
        self.scale(&g.recip())
    }

    /// `Some(r)` with `self = r·other`.
    pub fn ratio_to(&self, other: &Self) -> Option<BigRational> {
        if self.n != other.n || self.d != other.d {
            return None;
        }
        let i = other.coeffs.iter().position(|c| !c.is_zero())?;
        let r = &self.coeffs[i] / &other.coeffs[i];
        (!r.is_zero() && self.coeffs.iter().zip(&other.coeffs).all(|(a, b)| *a == b * &r)).then_some(r)
    }

    /// Vector in `⋀^{n-d}` with coordinate `(-1)^{s(J)} p_{[n]∖J}` at `J`.
    pub fn dual(&self) -> Self {
        let e = self.n - self.d;
        let coeffs = subsets(self.n, e)
            .iter()
            .map(|j| {
                let v = self.get(&j.complement(self.n));
                if s_parity(j) {
                    -v
                } else {
                    v
                }
            })
            .collect();
        Self { n: self.n, d: e, coeffs }
    }

    /// Checks every three-term Grassmann–Plücker relation.
    pub fn satisfies_three_term_relations(&self) -> bool {
        if self.d < 2 || self.n < self.d + 2 {
            return true;
        }
        for base in subsets(self.n, self.d - 2) {
            let free: Vec<usize> = (1..=self.n).filter(|e| !base.contains(*e)).collect();
            for q in choose(&free, 4) {
                let (a, b, c, e) = (q[0], q[1], q[2], q[3]);
                let p = |x: usize, y: usize| {
                    let mut s = base.0.clone();
                    s.push(x);
                    s.push(y);
                    self.get_seq(&s)
                };
                let rel = p(a, b) * p(c, e) - p(a, c) * p(b, e) + p(a, e) * p(b, c);
                if !rel.is_zero() {
                    return false;
                }
            }
        }
        true
    }
}

fn choose(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    subsets(items.len(), k)
        .into_iter()
        .map(|s| s.0.iter().map(|&i| items[i - 1]).collect())
        .collect()
}

impl fmt::Display for PlueckerVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .subsets()
            .iter()
            .zip(&self.coeffs)
            .map(|(s, c)| format!("p{}={}", s.label(), to_short(c)))
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Rows spanning the orthogonal complement of the row space, with its
/// Plücker vector. The rows are the reduced kernel basis.
pub fn orthocomplement(a: &RatMatrix) -> Result<(RatMatrix, PlueckerVector)> {
    if a.rank() < a.rows() {
        return Err(pre(format!("{}x{} matrix is not of full row rank", a.rows(), a.cols())));
    }
    let k = a.kernel();
    if k.rows() == 0 {
        return Err(pre("orthogonal complement of the whole space is zero"));
    }
    let p = PlueckerVector::from_matrix(&k)?;
    Ok((k, p))
}

/// `Σ_I p_I(L)·p_I(M^⊥)`, zero exactly when `L ∩ M ≠ 0`.
pub fn pairing_transversal(p_l: &PlueckerVector, p_mperp: &PlueckerVector) -> Result<BigRational> {
    if p_l.n != p_mperp.n || p_l.d != p_mperp.d {
        return Err(dim(format!(
            "pairing Gr({},{}) with Gr({},{})",
            p_l.d, p_l.n, p_mperp.d, p_mperp.n
        )));
    }
    Ok(p_l.coeffs.iter().zip(&p_mperp.coeffs).map(|(a, b)| a * b).sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::int;
    use crate::random::{random_full_rank, rng_from_seed};
    use proptest::prelude::*;

    fn s(label: &str) -> Subset {
        Subset::parse(label).unwrap()
    }

    #[test]
    fn lex_rank_is_a_bijection() {
        for (n, d) in [(5, 3), (6, 2), (4, 4), (7, 3)] {
            for (i, set) in subsets(n, d).iter().enumerate() {
                assert_eq!(set.rank(n), i);
            }
        }
        assert_eq!(subsets(4, 2).iter().map(Subset::label).collect::<Vec<_>>(), ["12", "13", "14", "23", "24", "34"]);
    }

    #[test]
    fn sign_exponent_examples() {
        assert!(!sign_exponent(&s("12"), 2).unwrap());
        assert!(sign_exponent(&s("13"), 2).unwrap());
        assert!(!sign_exponent(&s("123"), 3).unwrap());
        assert!(sign_exponent(&s("12"), 3).is_err());
    }

    #[test]
    fn plucker_of_five_point_example() {
        let a = RatMatrix::from_i64(&[&[1, 0, 0, 1, 1], &[0, 1, 0, 1, 0], &[0, 0, 1, 0, 1]]);
        let p = PlueckerVector::from_matrix(&a).unwrap();
        let expect = [
            ("123", 1), ("124", 0), ("125", 1), ("134", -1), ("135", 0),
            ("145", 1), ("234", 1), ("235", 1), ("245", -1), ("345", -1),
        ];
        for (l, v) in expect {
            assert_eq!(p.get(&s(l)), int(v), "p_{l}");
        }
        assert!(p.satisfies_three_term_relations());
    }

    #[test]
    fn plucker_of_moment_curve_and_identity() {
        let a = RatMatrix::from_i64(&[&[1, 1, 1, 1], &[0, 1, 2, 3]]);
        let p = PlueckerVector::from_matrix(&a).unwrap();
        assert_eq!(p.coeffs(), &[int(1), int(2), int(3), int(1), int(2), int(1)]);
        let id = PlueckerVector::from_matrix(&RatMatrix::identity(3)).unwrap();
        assert_eq!(id.coeffs(), &[int(1)]);
        assert!(PlueckerVector::from_matrix(&RatMatrix::from_i64(&[&[1, 2], &[2, 4]])).is_err());
    }

    #[test]
    fn orthocomplement_examples() {
        let (k, p) = orthocomplement(&RatMatrix::from_i64(&[&[1, 1, 1]])).unwrap();
        assert!(RatMatrix::from_i64(&[&[1, 1, 1]]).mul(&k.transpose()).unwrap().is_zero());
        let target = PlueckerVector::new(3, 2, vec![int(1), int(-1), int(1)]).unwrap();
        assert!(p.ratio_to(&target).is_some());

        let a = RatMatrix::from_i64(&[&[1, 0, 0, 0], &[0, 1, 0, 0]]);
        let (_, p) = orthocomplement(&a).unwrap();
        assert_eq!(p.support(), vec![s("34")]);

        let a = RatMatrix::from_i64(&[&[1, 1, 1, 1], &[0, 1, 2, 3]]);
        let given = RatMatrix::from_i64(&[&[-1, 2, -1, 0], &[0, -1, 2, -1]]);
        assert!(a.mul(&given.transpose()).unwrap().is_zero());
        let (_, p) = orthocomplement(&a).unwrap();
        assert!(p.ratio_to(&PlueckerVector::from_matrix(&given).unwrap()).is_some());
    }

    #[test]
    fn orthocomplement_matches_signed_dual() {
        let a = RatMatrix::from_i64(&[&[1, 0, 0, 1, 1], &[0, 1, 0, 1, 0], &[0, 0, 1, 0, 1]]);
        let pl = PlueckerVector::from_matrix(&a).unwrap();
        let (_, perp) = orthocomplement(&a).unwrap();
        let n = 5;
        let expected: Vec<BigRational> = subsets(n, 2)
            .iter()
            .map(|j| {
                let c = j.complement(n);
                let v = pl.get(&c);
                if s_parity(&c) { -v } else { v }
            })
            .collect();
        let expected = PlueckerVector::new(n, 2, expected).unwrap();
        assert!(perp.ratio_to(&expected).is_some());
        assert!(perp.ratio_to(&pl.dual()).is_some());
    }

    #[test]
    fn pairing_examples() {
        let a = RatMatrix::from_i64(&[&[1, 2, 0, 1], &[0, 1, 1, 3]]);
        let pl = PlueckerVector::from_matrix(&a).unwrap();
        let self_pair = pairing_transversal(&pl, &pl).unwrap();
        assert!(self_pair.is_positive());
        // L = span{e1+e2, e3}, M = span{e1+e2, e4}; M^⊥ = span{e1-e2, e3}
        let l = PlueckerVector::from_matrix(&RatMatrix::from_i64(&[&[1, 1, 0, 0], &[0, 0, 1, 0]])).unwrap();
        let mperp = PlueckerVector::from_matrix(&RatMatrix::from_i64(&[&[1, -1, 0, 0], &[0, 0, 1, 0]])).unwrap();
        assert_eq!(pairing_transversal(&l, &mperp).unwrap(), int(0));
        let other = PlueckerVector::from_matrix(&RatMatrix::identity(3)).unwrap();
        assert!(pairing_transversal(&l, &other).is_err());
    }

    #[test]
    fn wedge_signs() {
        assert_eq!(wedge_sign(&s("2"), &s("1")), -1);
        assert_eq!(wedge_sign(&s("13"), &s("2")), -1);
        assert_eq!(wedge_sign(&s("12"), &s("34")), 1);
        assert_eq!(wedge_sign(&s("12"), &s("23")), 0);
    }

    proptest! {
        #[test]
        fn equivariance_and_double_complement(seed in 0u64..500, n in 3usize..7, dsel in 0usize..10) {
            let d = 1 + dsel % (n - 1);
            let mut rng = rng_from_seed(seed);
            let a = random_full_rank(&mut rng, d, n, 4);
            let p = PlueckerVector::from_matrix(&a).unwrap();
            prop_assert!(p.satisfies_three_term_relations());
            let g = random_full_rank(&mut rng, d, d, 3);
            let pg = PlueckerVector::from_matrix(&g.mul(&a).unwrap()).unwrap();
            prop_assert_eq!(pg, p.scale(&g.det().unwrap()));
            let (k, _) = orthocomplement(&a).unwrap();
            let (kk, pkk) = orthocomplement(&k).unwrap();
            prop_assert_eq!(kk.rows(), d);
            prop_assert!(pkk.ratio_to(&p).is_some());
        }

        #[test]
        fn pairing_antisymmetry(seed in 0u64..500, n in 3usize..7, dsel in 0usize..10) {
            let d = 1 + dsel % (n - 1);
            let mut rng = rng_from_seed(seed);
            let pl = PlueckerVector::from_matrix(&random_full_rank(&mut rng, d, n, 4)).unwrap();
            let pm = PlueckerVector::from_matrix(&random_full_rank(&mut rng, n - d, n, 4)).unwrap();
            let lhs = pairing_transversal(&pl, &pm.dual()).unwrap();
            let rhs = pairing_transversal(&pm, &pl.dual()).unwrap();
            let sign = if (d * (n - d)) % 2 == 0 { int(1) } else { int(-1) };
            prop_assert_eq!(lhs, rhs * sign);
        }
    }
}

//! The matroid of a linear space and its broken-circuit complex.

use std::collections::{BTreeMap, BTreeSet};

use crate::exterior::{subsets, PlueckerVector, Subset};
use crate::error::{dim, internal, Error, Result};

/// Bases are validated against the exchange axiom up to this ground-set size.
pub const EXCHANGE_CHECK_LIMIT: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matroid {
    n: usize,
    d: usize,
    bases: BTreeSet<Subset>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BccData {
    pub circuits: Vec<Subset>,
    pub broken_circuits: Vec<Subset>,
    pub facets: Vec<Subset>,
}

impl BccData {
    pub fn degree(&self) -> usize {
        self.facets.len()
    }
}

/// Covering relations `lower < upper` of the basis order, and its maximal
/// elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisOrder {
    pub relations: Vec<(Subset, Subset)>,
    pub maximal: Vec<Subset>,
}

fn by_size_then_lex(a: &Subset, b: &Subset) -> std::cmp::Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

impl Matroid {
    pub fn from_bases(n: usize, d: usize, bases: impl IntoIterator<Item = Subset>) -> Result<Self> {
        let bases: BTreeSet<Subset> = bases.into_iter().collect();
        if bases.is_empty() {
            return Err(Error::NotPluecker("no bases".into()));
        }
        if let Some(b) = bases.iter().find(|b| b.len() != d || b.0.iter().any(|&e| e == 0 || e > n)) {
            return Err(dim(format!("basis {b} is not a {d}-subset of [{n}]")));
        }
        let m = Self { n, d, bases };
        if n <= EXCHANGE_CHECK_LIMIT {
            m.check_exchange()?;
        }
        Ok(m)
    }

    pub fn from_support(p: &PlueckerVector) -> Result<Self> {
        Self::from_bases(p.n(), p.d(), p.support())
    }

    pub fn uniform(d: usize, n: usize) -> Self {
        Self { n, d, bases: subsets(n, d).into_iter().collect() }
    }

    fn check_exchange(&self) -> Result<()> {
        for b1 in &self.bases {
            for b2 in &self.bases {
                for &x in b1.0.iter().filter(|x| !b2.contains(**x)) {
                    let ok = b2
                        .0
                        .iter()
                        .filter(|y| !b1.contains(**y))
                        .any(|&y| self.is_basis(&b1.without(x).with(y)));
                    if !ok {
                        return Err(Error::NotPluecker(format!(
                            "basis exchange fails for {b1}, {b2} at element {x}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.d
    }

    pub fn bases(&self) -> impl Iterator<Item = &Subset> {
        self.bases.iter()
    }

    pub fn num_bases(&self) -> usize {
        self.bases.len()
    }

    pub fn is_basis(&self, s: &Subset) -> bool {
        self.bases.contains(s)
    }

    pub fn is_uniform(&self) -> bool {
        self.bases.len() == crate::algebra::binom(self.n, self.d)
    }

    pub fn rank_of(&self, s: &Subset) -> usize {
        self.bases
            .iter()
            .map(|b| s.0.iter().filter(|e| b.contains(**e)).count())
            .max()
            .unwrap_or(0)
    }

    pub fn is_independent(&self, s: &Subset) -> bool {
        self.rank_of(s) == s.len()
    }

    /// Elements lying in no basis.
    pub fn loops(&self) -> Vec<usize> {
        (1..=self.n).filter(|&e| !self.bases.iter().any(|b| b.contains(e))).collect()
    }

    fn require_loopless(&self) -> Result<()> {
        match self.loops().first() {
            Some(e) => Err(Error::Precondition(format!("element {e} is a loop"))),
            None => Ok(()),
        }
    }

    /// Renames element `i` to `perm[i-1]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        let mut sorted = perm.to_vec();
        sorted.sort_unstable();
        if sorted != (1..=self.n).collect::<Vec<_>>() {
            return Err(dim("relabelling is not a permutation of the ground set"));
        }
        let bases = self.bases.iter().map(|b| Subset::new(b.0.iter().map(|&e| perm[e - 1]).collect()));
        Self::from_bases(self.n, self.d, bases)
    }

    pub fn circuits(&self) -> Result<Vec<Subset>> {
        self.require_loopless()?;
        let mut out = Vec::new();
        for size in 2..=(self.d + 1).min(self.n) {
            for s in subsets(self.n, size) {
                if !self.is_independent(&s) && s.0.iter().all(|&e| self.is_independent(&s.without(e))) {
                    out.push(s);
                }
            }
        }
        Ok(out)
    }

    pub fn bcc(&self) -> Result<BccData> {
        let circuits = self.circuits()?;
        let broken: BTreeSet<Subset> = circuits.iter().map(|c| c.without(c.largest().unwrap())).collect();
        let mut broken_circuits: Vec<Subset> = broken.into_iter().collect();
        broken_circuits.sort_by(by_size_then_lex);
        let facets = self
            .bases
            .iter()
            .filter(|b| !broken_circuits.iter().any(|bc| bc.is_subset_of(b)))
            .cloned()
            .collect();
        Ok(BccData { circuits, broken_circuits, facets })
    }

    /// BCC facets and their number, the degree of the reciprocal space.
    pub fn bcc_facets_degree(&self) -> Result<(Vec<Subset>, usize)> {
        let facets = self.bcc()?.facets;
        let k = facets.len();
        Ok((facets, k))
    }

    /// The unique circuit inside `basis ∪ {x}`.
    pub fn fundamental_circuit(&self, basis: &Subset, x: usize) -> Subset {
        let mut c: Vec<usize> = basis.0.iter().copied().filter(|&y| self.is_basis(&basis.without(y).with(x))).collect();
        c.push(x);
        Subset::new(c)
    }

    /// The order generated by `B < B'` whenever `B' = B - y + x` and `x` is
    /// the largest element of the circuit in `B ∪ {x}`. Fails internally
    /// unless the order is acyclic with the BCC facets as maximal elements.
    pub fn basis_order(&self) -> Result<BasisOrder> {
        let facets = self.bcc()?.facets;
        let mut relations = Vec::new();
        let mut succ: BTreeMap<&Subset, Vec<&Subset>> = BTreeMap::new();
        for b in &self.bases {
            succ.entry(b).or_default();
            for x in (1..=self.n).filter(|e| !b.contains(*e)) {
                let c = self.fundamental_circuit(b, x);
                if c.largest() != Some(x) {
                    continue;
                }
                for &y in c.0.iter().filter(|&&y| y != x) {
                    let up = self.bases.get(&b.without(y).with(x)).expect("exchange within a circuit");
                    relations.push((b.clone(), up.clone()));
                    succ.entry(b).or_default().push(up);
                }
            }
        }
        // Kahn's algorithm detects cycles
        let mut indeg: BTreeMap<&Subset, usize> = self.bases.iter().map(|b| (b, 0)).collect();
        for ups in succ.values() {
            for u in ups {
                *indeg.get_mut(u).unwrap() += 1;
            }
        }
        let mut queue: Vec<&Subset> = indeg.iter().filter(|(_, &d)| d == 0).map(|(b, _)| *b).collect();
        let mut seen = 0;
        while let Some(b) = queue.pop() {
            seen += 1;
            for u in &succ[b] {
                let d = indeg.get_mut(u).unwrap();
                *d -= 1;
                if *d == 0 {
                    queue.push(u);
                }
            }
        }
        if seen != self.bases.len() {
            return Err(internal("basis order has a cycle"));
        }
        let maximal: Vec<Subset> = self.bases.iter().filter(|b| succ[b].is_empty()).cloned().collect();
        if maximal != facets {
            return Err(internal("maximal elements of the basis order differ from the BCC facets"));
        }
        Ok(BasisOrder { relations, maximal })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::matrix::RatMatrix;
    use crate::algebra::rational::binom;
    use crate::random::{random_sparse_full_rank, rng_from_seed};
    use proptest::prelude::*;

    fn s(l: &str) -> Subset {
        Subset::parse(l).unwrap()
    }

    fn labels(v: &[Subset]) -> Vec<String> {
        v.iter().map(Subset::label).collect()
    }

    fn five_point() -> Matroid {
        let a = RatMatrix::from_i64(&[&[1, 0, 0, 1, 1], &[0, 1, 0, 1, 0], &[0, 0, 1, 0, 1]]);
        Matroid::from_support(&PlueckerVector::from_matrix(&a).unwrap()).unwrap()
    }

    #[test]
    fn five_point_example() {
        let m = five_point();
        assert_eq!(m.num_bases(), 8);
        assert!(!m.is_basis(&s("124")) && !m.is_basis(&s("135")));
        let bcc = m.bcc().unwrap();
        assert_eq!(labels(&bcc.circuits), ["124", "135", "2345"]);
        assert_eq!(labels(&bcc.broken_circuits), ["12", "13", "234"]);
        assert_eq!(labels(&bcc.facets), ["145", "235", "245", "345"]);
        assert_eq!(bcc.degree(), 4);
        assert_eq!(labels(&m.basis_order().unwrap().maximal), ["145", "235", "245", "345"]);
    }

    #[test]
    fn uniform_and_single_basis() {
        let u = Matroid::uniform(2, 4);
        let bcc = u.bcc().unwrap();
        assert_eq!(bcc.circuits.len(), 4);
        assert!(bcc.circuits.iter().all(|c| c.len() == 3));
        assert_eq!(labels(&bcc.broken_circuits), ["12", "13", "23"]);
        assert_eq!(bcc.degree(), 3);
        let order = u.basis_order().unwrap();
        assert_eq!(labels(&order.maximal), ["14", "24", "34"]);
        assert!(order.relations.contains(&(s("12"), s("14"))));

        let single = Matroid::from_bases(3, 3, [s("123")]).unwrap();
        assert!(single.circuits().unwrap().is_empty());
        let order = single.basis_order().unwrap();
        assert!(order.relations.is_empty());
        assert_eq!(labels(&order.maximal), ["123"]);
    }

    #[test]
    fn single_coordinate_support() {
        let p = PlueckerVector::from_matrix(&RatMatrix::from_i64(&[&[1, 0, 0], &[0, 1, 0]])).unwrap();
        let m = Matroid::from_support(&p).unwrap();
        assert_eq!(m.num_bases(), 1);
        assert_eq!(m.loops(), vec![3]);
        assert!(m.circuits().is_err());
    }

    #[test]
    fn exchange_failure_is_reported() {
        let err = Matroid::from_bases(4, 2, [s("12"), s("34")]).unwrap_err();
        assert!(matches!(err, Error::NotPluecker(_)));
    }

    #[test]
    fn uniform_degree_formula() {
        for n in 3..=8 {
            for d in 2..n {
                let (_, k) = Matroid::uniform(d, n).bcc_facets_degree().unwrap();
                assert_eq!(k, binom(n - 1, d - 1), "U({d},{n})");
            }
        }
    }

    proptest! {
        #[test]
        fn order_maxima_are_facets(seed in 0u64..400, n in 3usize..8, dsel in 0usize..10) {
            let d = 1 + dsel % (n - 1);
            let mut rng = rng_from_seed(seed);
            let a = random_sparse_full_rank(&mut rng, d, n, 2, 0.4);
            let m = Matroid::from_support(&PlueckerVector::from_matrix(&a).unwrap()).unwrap();
            let (facets, _) = m.bcc_facets_degree().unwrap();
            prop_assert_eq!(m.basis_order().unwrap().maximal, facets);
        }
    }
}

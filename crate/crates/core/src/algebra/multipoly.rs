//! Sparse multivariate polynomials with exact rational coefficients over a
//! named variable table.
//!
//! Terms live in a `BTreeMap` keyed by exponent vectors ordered graded
//! lexicographically, so iteration order (and therefore serialization) is
//! canonical. Arithmetic between polynomials over different tables first
//! merges the tables by name.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::gauss::GaussianRational;
use super::rational::{parse_rational, to_pq, to_short};
use crate::error::{pre, Error, Result};

/// Exponent vector; ordered by total degree, then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, o: &Monomial) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a <= b)
    }

    /// `o / self`; caller guarantees divisibility.
    pub fn quotient_of(&self, o: &Monomial) -> Monomial {
        Monomial(o.0.iter().zip(&self.0).map(|(a, b)| a - b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, o: &Self) -> Ordering {
        self.degree().cmp(&o.degree()).then_with(|| self.0.cmp(&o.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly {
    vars: Vec<String>,
    terms: BTreeMap<Monomial, BigRational>,
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    coeff: String,
    exps: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    vars: Vec<String>,
    terms: Vec<TermJson>,
}

impl MultiPoly {
    pub fn zero(vars: Vec<String>) -> Self {
        Self { vars, terms: BTreeMap::new() }
    }

    pub fn constant(vars: Vec<String>, c: BigRational) -> Self {
        let n = vars.len();
        let mut p = Self::zero(vars);
        p.add_term(Monomial::one(n), c);
        p
    }

    pub fn one(vars: Vec<String>) -> Self {
        Self::constant(vars, BigRational::one())
    }

    pub fn var(vars: Vec<String>, name: &str) -> Result<Self> {
        let i = index_of(&vars, name)?;
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        let mut p = Self::zero(vars);
        p.add_term(Monomial(e), BigRational::one());
        Ok(p)
    }

    pub fn from_terms(
        vars: Vec<String>,
        terms: impl IntoIterator<Item = (Monomial, BigRational)>,
    ) -> Result<Self> {
        let n = vars.len();
        let mut p = Self::zero(vars);
        for (m, c) in terms {
            if m.0.len() != n {
                return Err(Error::Dimension(format!(
                    "exponent vector of length {} for {n} variables",
                    m.0.len()
                )));
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    /// Accumulates `c·m`, dropping the term if it cancels.
    pub fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Coefficient of a monomial given as `(name, exponent)` pairs.
    pub fn coeff_of(&self, powers: &[(&str, u32)]) -> Result<BigRational> {
        let mut e = vec![0; self.vars.len()];
        for (name, k) in powers {
            e[self.var_index(name)?] = *k;
        }
        Ok(self.coeff(&Monomial(e)))
    }

    pub fn var_index(&self, name: &str) -> Result<usize> {
        index_of(&self.vars, name)
    }

    /// Largest term in graded-lex order.
    pub fn leading_term(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(Monomial::degree);
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    /// Re-expresses over `vars`, which must contain every variable in use.
    pub fn with_vars(&self, vars: &[String]) -> Result<Self> {
        if self.vars == vars {
            return Ok(self.clone());
        }
        let map: Vec<Option<usize>> = self.vars.iter().map(|v| vars.iter().position(|w| w == v)).collect();
        let mut out = Self::zero(vars.to_vec());
        for (m, c) in &self.terms {
            let mut e = vec![0; vars.len()];
            for (i, &k) in m.0.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let j = map[i].ok_or_else(|| {
                    Error::Precondition(format!("variable {} missing from target table", self.vars[i]))
                })?;
                e[j] = k;
            }
            out.add_term(Monomial(e), c.clone());
        }
        Ok(out)
    }

    /// Drops variables that appear in no term.
    pub fn trim_vars(&self) -> Self {
        let used: Vec<String> = self
            .vars
            .iter()
            .enumerate()
            .filter(|(i, _)| self.terms.keys().any(|m| m.0[*i] > 0))
            .map(|(_, v)| v.clone())
            .collect();
        self.with_vars(&used).expect("subset of own table")
    }

    fn aligned(&self, o: &Self) -> (Self, Self) {
        if self.vars == o.vars {
            return (self.clone(), o.clone());
        }
        let mut vars = self.vars.clone();
        for v in &o.vars {
            if !vars.contains(v) {
                vars.push(v.clone());
            }
        }
        (
            self.with_vars(&vars).expect("superset"),
            o.with_vars(&vars).expect("superset"),
        )
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.vars != o.vars {
            let (a, b) = self.aligned(o);
            return a.add(&b);
        }
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        if s.is_zero() {
            return Self::zero(self.vars.clone());
        }
        Self {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.vars != o.vars {
            let (a, b) = self.aligned(o);
            return a.mul(&b);
        }
        let mut out = Self::zero(self.vars.clone());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.vars.clone());
        }
        Self {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(k, v)| (k.mul(m), v * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.vars.clone());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Replaces variable `name` by `value` (which may use other variables).
    pub fn substitute(&self, name: &str, value: &Self) -> Result<Self> {
        let i = self.var_index(name)?;
        let (me, val) = self.aligned(value);
        let mut powers: Vec<Self> = vec![Self::one(me.vars.clone())];
        let mut out = Self::zero(me.vars.clone());
        for (m, c) in &me.terms {
            let k = m.0[i] as usize;
            while powers.len() <= k {
                let next = powers.last().unwrap().mul(&val);
                powers.push(next);
            }
            let mut rest = m.clone();
            rest.0[i] = 0;
            out = out.add(&powers[k].mul_monomial(&rest, c));
        }
        Ok(out)
    }

    /// Replaces each named variable by a rational, keeping the table.
    pub fn substitute_scalars(&self, values: &[(&str, BigRational)]) -> Result<Self> {
        let idx: Vec<(usize, &BigRational)> = values
            .iter()
            .map(|(n, v)| self.var_index(n).map(|i| (i, v)))
            .collect::<Result<_>>()?;
        let mut out = Self::zero(self.vars.clone());
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut e = m.clone();
            for &(i, v) in &idx {
                if e.0[i] > 0 {
                    coeff *= pow_rat(v, e.0[i]);
                    e.0[i] = 0;
                }
            }
            out.add_term(e, coeff);
        }
        Ok(out)
    }

    pub fn eval(&self, point: &[BigRational]) -> Result<BigRational> {
        if point.len() != self.vars.len() {
            return Err(Error::Dimension(format!(
                "point of length {} for {} variables",
                point.len(),
                self.vars.len()
            )));
        }
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(&m.0) {
                if k > 0 {
                    t *= pow_rat(x, k);
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    pub fn eval_gauss(&self, point: &[GaussianRational]) -> Result<GaussianRational> {
        if point.len() != self.vars.len() {
            return Err(Error::Dimension("point length mismatch".into()));
        }
        let mut acc = GaussianRational::zero();
        for (m, c) in &self.terms {
            let mut t = GaussianRational::real(c.clone());
            for (x, &k) in point.iter().zip(&m.0) {
                for _ in 0..k {
                    t = &t * x;
                }
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    /// Divides every term by `m`.
    pub fn div_monomial(&self, m: &Monomial) -> Result<Self> {
        let mut out = Self::zero(self.vars.clone());
        for (k, c) in &self.terms {
            if !m.divides(k) {
                return Err(pre("monomial does not divide every term"));
            }
            out.terms.insert(m.quotient_of(k), c.clone());
        }
        Ok(out)
    }

    /// Exact quotient `self / d`; errors when `d` does not divide.
    pub fn div_exact(&self, d: &Self) -> Result<Self> {
        if d.is_zero() {
            return Err(pre("division by the zero polynomial"));
        }
        let (mut rem, d) = self.aligned(d);
        let (dm, dc) = d.leading_term().map(|(m, c)| (m.clone(), c.clone())).unwrap();
        let mut quo = Self::zero(rem.vars.clone());
        while let Some((m, c)) = rem.leading_term().map(|(m, c)| (m.clone(), c.clone())) {
            if !dm.divides(&m) {
                return Err(pre("polynomial division is not exact"));
            }
            let qm = dm.quotient_of(&m);
            let qc = c / &dc;
            rem = rem.sub(&d.mul_monomial(&qm, &qc));
            quo.add_term(qm, qc);
        }
        Ok(quo)
    }

    /// Degree pair with respect to two variable groups; `None` unless the
    /// polynomial is bihomogeneous for that partition.
    pub fn bidegree(&self, first: &[String], second: &[String]) -> Result<Option<(u32, u32)>> {
        let a: Vec<usize> = first.iter().map(|v| self.var_index(v)).collect::<Result<_>>()?;
        let b: Vec<usize> = second.iter().map(|v| self.var_index(v)).collect::<Result<_>>()?;
        let mut seen: Option<(u32, u32)> = None;
        for m in self.terms.keys() {
            let da: u32 = a.iter().map(|&i| m.0[i]).sum();
            let db: u32 = b.iter().map(|&i| m.0[i]).sum();
            if da + db != m.degree() {
                return Ok(None);
            }
            match seen {
                None => seen = Some((da, db)),
                Some(s) if s != (da, db) => return Ok(None),
                _ => {}
            }
        }
        Ok(seen)
    }

    /// Positive rational `g` with `self / g` primitive integral.
    pub fn content(&self) -> BigRational {
        let mut num = BigInt::zero();
        let mut den = BigInt::one();
        for c in self.terms.values() {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
        if num.is_zero() {
            return BigRational::one();
        }
        BigRational::new(num, den)
    }

    /// Content 1, positive leading coefficient; returns the factor removed.
    pub fn normalized(&self) -> (Self, BigRational) {
        let mut g = self.content();
        if self.leading_term().is_some_and(|(_, c)| c.is_negative()) {
            g = -g;
        }
        (self.scale(&g.recip()), g)
    }

    /// `Some(r)` with `self = r · other`, `None` if not proportional.
    pub fn ratio_to(&self, other: &Self) -> Option<BigRational> {
        let (a, b) = self.aligned(other);
        if a.is_zero() || b.is_zero() {
            return (a.is_zero() && b.is_zero()).then(BigRational::one);
        }
        let (m, c) = b.leading_term()?;
        let r = a.coeff(m) / c;
        (a == b.scale(&r) && !r.is_zero()).then_some(r)
    }

    /// Structural equality after merging variable tables.
    pub fn equals(&self, other: &Self) -> bool {
        let (a, b) = self.aligned(other);
        a.terms == b.terms
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let terms = self
            .terms
            .iter()
            .rev()
            .map(|(m, c)| TermJson { coeff: to_pq(c), exps: m.0.clone() })
            .collect();
        serde_json::to_value(PolyJson { vars: self.vars.clone(), terms }).expect("serializable")
    }

    pub fn to_json(&self) -> String {
        self.to_json_value().to_string()
    }

    pub fn from_json_value(v: &serde_json::Value) -> Result<Self> {
        let p: PolyJson = serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        let terms = p
            .terms
            .into_iter()
            .map(|t| parse_rational(&t.coeff).map(|c| (Monomial(t.exps), c)))
            .collect::<Result<Vec<_>>>()?;
        Self::from_terms(p.vars, terms)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let v: serde_json::Value = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_json_value(&v)
    }
}

fn index_of(vars: &[String], name: &str) -> Result<usize> {
    vars.iter()
        .position(|v| v == name)
        .ok_or_else(|| Error::Precondition(format!("unknown variable {name:?}")))
}

pub(crate) fn pow_rat(x: &BigRational, k: u32) -> BigRational {
    num_traits::pow(x.clone(), k as usize)
}

pub fn var_names(prefix: &str, count: usize) -> Vec<String> {
    (1..=count).map(|i| format!("{prefix}{i}")).collect()
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let mono: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(j, &k)| if k == 1 { self.vars[j].clone() } else { format!("{}^{k}", self.vars[j]) })
                .collect();
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            match (mono.is_empty(), mag.is_one()) {
                (true, _) => write!(f, "{}", to_short(&mag))?,
                (false, true) => write!(f, "{}", mono.join("*"))?,
                (false, false) => write!(f, "{}*{}", to_short(&mag), mono.join("*"))?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{int, rat};
    use proptest::prelude::*;

    fn xy() -> Vec<String> {
        vec!["x".into(), "y".into()]
    }

    fn poly(terms: &[(i64, [u32; 2])]) -> MultiPoly {
        MultiPoly::from_terms(xy(), terms.iter().map(|(c, e)| (Monomial(e.to_vec()), int(*c)))).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let x = MultiPoly::var(xy(), "x").unwrap();
        let y = MultiPoly::var(xy(), "y").unwrap();
        let p = x.add(&y).mul(&x.sub(&y));
        assert_eq!(p, poly(&[(1, [2, 0]), (-1, [0, 2])]));
        assert_eq!(p.eval(&[int(2), int(1)]).unwrap(), int(3));
        assert_eq!(p.to_string(), "x^2 - y^2");
    }

    #[test]
    fn json_is_grlex_descending_and_round_trips() {
        let p = poly(&[(1, [0, 1]), (3, [2, 0]), (-2, [1, 1])]);
        let s = p.to_json();
        assert_eq!(
            s,
            r#"{"vars":["x","y"],"terms":[{"coeff":"3/1","exps":[2,0]},{"coeff":"-2/1","exps":[1,1]},{"coeff":"1/1","exps":[0,1]}]}"#
        );
        assert_eq!(MultiPoly::from_json(&s).unwrap(), p);
        let short = r#"{"vars":["x"],"terms":[{"coeff":"4","exps":[1]}]}"#;
        assert_eq!(MultiPoly::from_json(short).unwrap().to_json(), r#"{"vars":["x"],"terms":[{"coeff":"4/1","exps":[1]}]}"#);
    }

    #[test]
    fn monomial_division() {
        let p = poly(&[(1, [2, 1]), (5, [1, 2])]);
        let q = p.div_monomial(&Monomial(vec![1, 1])).unwrap();
        assert_eq!(q, poly(&[(1, [1, 0]), (5, [0, 1])]));
        assert!(p.div_monomial(&Monomial(vec![2, 0])).is_err());
    }

    #[test]
    fn exact_division() {
        let a = poly(&[(1, [1, 0]), (2, [0, 1])]);
        let b = poly(&[(3, [2, 0]), (-1, [0, 1]), (1, [0, 0])]);
        let prod = a.mul(&b);
        assert_eq!(prod.div_exact(&a).unwrap(), b);
        assert!(b.div_exact(&a).is_err());
    }

    #[test]
    fn substitution_and_unknown_variable() {
        let p = poly(&[(1, [2, 0]), (1, [0, 1])]);
        let y = MultiPoly::var(xy(), "y").unwrap();
        let q = p.substitute("x", &y).unwrap();
        assert_eq!(q, poly(&[(1, [0, 2]), (1, [0, 1])]));
        assert!(p.substitute("z", &y).is_err());
        let r = p.substitute_scalars(&[("x", rat(1, 2))]).unwrap();
        assert_eq!(r, poly(&[(1, [0, 1])]).add(&MultiPoly::constant(xy(), rat(1, 4))));
    }

    #[test]
    fn bidegree_and_normalization() {
        let p = poly(&[(2, [1, 1]), (-4, [1, 1])]);
        assert_eq!(p.bidegree(&["x".into()], &["y".into()]).unwrap(), Some((1, 1)));
        let q = poly(&[(-6, [2, 0]), (4, [1, 1])]);
        let (n, g) = q.normalized();
        assert_eq!(n, poly(&[(3, [2, 0]), (-2, [1, 1])]));
        assert_eq!(g, int(-2));
        assert_eq!(q.ratio_to(&n), Some(int(-2)));
        let r = poly(&[(1, [2, 0]), (1, [0, 1])]);
        assert_eq!(r.bidegree(&["x".into()], &["y".into()]).unwrap(), None);
    }

    #[test]
    fn merging_tables() {
        let a = MultiPoly::var(vec!["a".into()], "a").unwrap();
        let b = MultiPoly::var(vec!["b".into()], "b").unwrap();
        let s = a.mul(&b);
        assert_eq!(s.vars(), &["a".to_string(), "b".to_string()]);
        assert_eq!(s.num_terms(), 1);
    }

    fn arb_poly() -> impl Strategy<Value = MultiPoly> {
        prop::collection::vec((-4i64..5, 0u32..3, 0u32..3), 0..5).prop_map(|ts| {
            MultiPoly::from_terms(xy(), ts.into_iter().map(|(c, a, b)| (Monomial(vec![a, b]), int(c)))).unwrap()
        })
    }

    proptest! {
        #[test]
        fn evaluation_is_a_ring_map(p in arb_poly(), q in arb_poly(), x in -5i64..5, y in -5i64..5) {
            let pt = [int(x), int(y)];
            let pv = p.eval(&pt).unwrap();
            let qv = q.eval(&pt).unwrap();
            prop_assert_eq!(p.mul(&q).eval(&pt).unwrap(), &pv * &qv);
            prop_assert_eq!(p.add(&q).eval(&pt).unwrap(), &pv + &qv);
            let sub = p.substitute_scalars(&[("x", int(x))]).unwrap();
            prop_assert_eq!(sub.eval(&pt).unwrap(), pv);
        }

        #[test]
        fn json_round_trip(p in arb_poly()) {
            prop_assert_eq!(MultiPoly::from_json(&p.to_json()).unwrap(), p);
        }
    }
}

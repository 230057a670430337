//! Sparse integer polynomials in named formal parameters.
//!
//! Variables are ordered by name; the smallest name is the main variable in
//! every recursive algorithm (exact division, gcd, leading coefficient).

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// A formal parameter name, shared cheaply.
pub type Symbol = Arc<str>;

/// Power product of parameters, sorted by symbol name with positive exponents.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct PMono(Vec<(Symbol, u32)>);

impl PMono {
    pub fn one() -> Self {
        PMono(Vec::new())
    }

    pub fn var(name: Symbol) -> Self {
        PMono(vec![(name, 1)])
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn factors(&self) -> &[(Symbol, u32)] {
        &self.0
    }

    pub fn exponent(&self, v: &str) -> u32 {
        self.0
            .iter()
            .find(|(s, _)| &**s == v)
            .map(|(_, e)| *e)
            .unwrap_or(0)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    fn mul(&self, other: &PMono) -> PMono {
        let mut out: Vec<(Symbol, u32)> = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].0.cmp(&other.0[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(self.0[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(other.0[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((self.0[i].0.clone(), self.0[i].1 + other.0[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        PMono(out)
    }

    /// Removes variable `v`, returning its exponent and the remaining monomial.
    fn split(&self, v: &str) -> (u32, PMono) {
        let mut rest = Vec::with_capacity(self.0.len());
        let mut e = 0;
        for (s, k) in &self.0 {
            if &**s == v {
                e = *k;
            } else {
                rest.push((s.clone(), *k));
            }
        }
        (e, PMono(rest))
    }

    fn with_power(&self, v: &Symbol, e: u32) -> PMono {
        if e == 0 {
            return self.clone();
        }
        self.mul(&PMono(vec![(v.clone(), e)]))
    }
}

impl fmt::Display for PMono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (s, e)) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{s}")?;
            } else {
                write!(f, "{s}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Multivariate polynomial with integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ParamPoly {
    terms: BTreeMap<PMono, BigInt>,
}

impl ParamPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(PMono::one(), c);
        }
        ParamPoly { terms }
    }

    pub fn var(name: &str) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(PMono::var(Arc::from(name)), BigInt::one());
        ParamPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Returns the value when the polynomial has no parameter dependence.
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 => self.terms.get(&PMono::one()).cloned(),
            _ => None,
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PMono, &BigInt)> {
        self.terms.iter()
    }

    pub fn variables(&self) -> Vec<Symbol> {
        let mut vs: Vec<Symbol> = self
            .terms
            .keys()
            .flat_map(|m| m.0.iter().map(|(s, _)| s.clone()))
            .collect();
        vs.sort();
        vs.dedup();
        vs
    }

    fn add_term(&mut self, m: PMono, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &ParamPoly) -> ParamPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &ParamPoly) -> ParamPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }

    pub fn neg(&self) -> ParamPoly {
        ParamPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, other: &ParamPoly) -> ParamPoly {
        let mut out = ParamPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, k: &BigInt) -> ParamPoly {
        if k.is_zero() {
            return ParamPoly::zero();
        }
        ParamPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
        }
    }

    fn degree_in(&self, v: &str) -> u32 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    fn to_univariate(&self, v: &str) -> Vec<ParamPoly> {
        let mut out = vec![ParamPoly::zero(); self.degree_in(v) as usize + 1];
        for (m, c) in &self.terms {
            let (e, rest) = m.split(v);
            out[e as usize].add_term(rest, c.clone());
        }
        out
    }

    fn from_univariate(v: &Symbol, coeffs: &[ParamPoly]) -> ParamPoly {
        let mut out = ParamPoly::zero();
        for (e, c) in coeffs.iter().enumerate() {
            for (m, k) in &c.terms {
                out.add_term(m.with_power(v, e as u32), k.clone());
            }
        }
        out
    }

    fn integer_content(&self) -> BigInt {
        self.terms
            .values()
            .fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// Sign of the leading coefficient in lex order with variables sorted by name.
    pub fn leading_sign(&self) -> i32 {
        if self.is_zero() {
            return 0;
        }
        match self.variables().first() {
            None => {
                if self.as_constant().unwrap().is_negative() {
                    -1
                } else {
                    1
                }
            }
            Some(v) => {
                let u = self.to_univariate(v);
                u.last().unwrap().leading_sign()
            }
        }
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self` in Z[params].
    pub fn div_exact(&self, d: &ParamPoly) -> Option<ParamPoly> {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(ParamPoly::zero());
        }
        if let Some(c) = d.as_constant() {
            let mut out = ParamPoly::zero();
            for (m, k) in &self.terms {
                let (q, r) = k.div_rem(&c);
                if !r.is_zero() {
                    return None;
                }
                out.add_term(m.clone(), q);
            }
            return Some(out);
        }
        let v = d.variables()[0].clone();
        let b = d.to_univariate(&v);
        let db = b.len() - 1;
        let lb = &b[db];
        let mut r = self.to_univariate(&v);
        let mut q = vec![ParamPoly::zero(); r.len().max(1)];
        loop {
            trim(&mut r);
            if r.is_empty() {
                break;
            }
            let dr = r.len() - 1;
            if dr < db {
                return None;
            }
            let lq = r[dr].div_exact(lb)?;
            let shift = dr - db;
            for (k, bk) in b.iter().enumerate() {
                r[k + shift] = r[k + shift].sub(&lq.mul(bk));
            }
            q[shift] = q[shift].add(&lq);
        }
        Some(ParamPoly::from_univariate(&v, &q))
    }

    /// Greatest common divisor normalized to a positive leading coefficient.
    pub fn gcd(&self, other: &ParamPoly) -> ParamPoly {
        if self.is_zero() {
            return other.normalized_sign();
        }
        if other.is_zero() {
            return self.normalized_sign();
        }
        if let (Some(a), Some(b)) = (self.as_constant(), other.as_constant()) {
            return ParamPoly::constant(a.gcd(&b));
        }
        // A single term divides out factor by factor.
        if let Some(g) = self.gcd_with_term(other).or_else(|| other.gcd_with_term(self)) {
            return g;
        }
        let mut vars = self.variables();
        vars.extend(other.variables());
        vars.sort();
        let v = vars[0].clone();
        let a = self.to_univariate(&v);
        let b = other.to_univariate(&v);
        let ca = content(&a);
        let cb = content(&b);
        let c = ca.gcd(&cb);
        let mut a = primitive_part(&a, &ca);
        let mut b = primitive_part(&b, &cb);
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
        }
        loop {
            let r = pseudo_remainder(&a, &b);
            if r.is_empty() {
                break;
            }
            if r.len() == 1 {
                b = vec![ParamPoly::constant(1)];
                break;
            }
            let cr = content(&r);
            a = b;
            b = primitive_part(&r, &cr);
        }
        let cbb = content(&b);
        let g = ParamPoly::from_univariate(&v, &primitive_part(&b, &cbb));
        g.mul(&c).normalized_sign()
    }

    /// `gcd(self, other)` when `self` is a single term `c m`.
    fn gcd_with_term(&self, other: &ParamPoly) -> Option<ParamPoly> {
        if self.terms.len() != 1 {
            return None;
        }
        let (m, c) = self.terms.iter().next().unwrap();
        let k = c.gcd(&other.integer_content());
        let factors = m
            .0
            .iter()
            .filter_map(|(v, e)| {
                let low = other.terms.keys().map(|t| t.exponent(v)).min().unwrap_or(0).min(*e);
                (low > 0).then(|| (v.clone(), low))
            })
            .collect();
        let mut out = ParamPoly::zero();
        out.add_term(PMono(factors), k);
        Some(out)
    }

    pub fn normalized_sign(&self) -> ParamPoly {
        if self.leading_sign() < 0 {
            self.neg()
        } else {
            self.clone()
        }
    }

    pub fn content_gcd(&self) -> BigInt {
        self.integer_content()
    }
}

fn trim(p: &mut Vec<ParamPoly>) {
    while p.last().map_or(false, |c| c.is_zero()) {
        p.pop();
    }
}

fn content(p: &[ParamPoly]) -> ParamPoly {
    p.iter()
        .fold(ParamPoly::zero(), |acc, c| acc.gcd(c))
}

fn primitive_part(p: &[ParamPoly], c: &ParamPoly) -> Vec<ParamPoly> {
    if c.is_zero() {
        return p.to_vec();
    }
    p.iter()
        .map(|k| k.div_exact(c).expect("content divides every coefficient"))
        .collect()
}

fn pseudo_remainder(a: &[ParamPoly], b: &[ParamPoly]) -> Vec<ParamPoly> {
    let mut r = a.to_vec();
    trim(&mut r);
    let mut b = b.to_vec();
    trim(&mut b);
    let db = b.len() - 1;
    let lb = b[db].clone();
    while !r.is_empty() && r.len() - 1 >= db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        for c in r.iter_mut() {
            *c = c.mul(&lb);
        }
        for (k, bk) in b.iter().enumerate() {
            r[k + shift] = r[k + shift].sub(&lr.mul(bk));
        }
        trim(&mut r);
    }
    r
}

impl fmt::Display for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut terms: Vec<(&PMono, &BigInt)> = self.terms.iter().collect();
        terms.sort_by(|a, b| b.0.degree().cmp(&a.0.degree()).then(a.0.cmp(b.0)));
        for (k, (m, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(terms: &[(i64, &[(&str, u32)])]) -> ParamPoly {
        let mut out = ParamPoly::zero();
        for (c, m) in terms {
            let mono = PMono(m.iter().map(|(s, e)| (Arc::from(*s), *e)).collect());
            out.add_term(mono, BigInt::from(*c));
        }
        out
    }

    #[test]
    fn gcd_of_products_recovers_common_factor() {
        // (a + b)(a - 2b) and (a + b)(b + 3)
        let common = p(&[(1, &[("a", 1)]), (1, &[("b", 1)])]);
        let x = common.mul(&p(&[(1, &[("a", 1)]), (-2, &[("b", 1)])]));
        let y = common.mul(&p(&[(1, &[("b", 1)]), (3, &[])]));
        assert_eq!(x.gcd(&y), common);
    }

    #[test]
    fn gcd_with_integer_content() {
        let x = p(&[(6, &[("a", 2)]), (-6, &[])]);
        let y = p(&[(4, &[("a", 1)]), (4, &[])]);
        // 6(a-1)(a+1), 4(a+1)
        assert_eq!(x.gcd(&y), p(&[(2, &[("a", 1)]), (2, &[])]));
    }

    #[test]
    fn exact_division() {
        let a = p(&[(1, &[("a", 2)]), (-1, &[("b", 2)])]);
        let d = p(&[(1, &[("a", 1)]), (-1, &[("b", 1)])]);
        assert_eq!(
            a.div_exact(&d).unwrap(),
            p(&[(1, &[("a", 1)]), (1, &[("b", 1)])])
        );
        assert!(d.div_exact(&a).is_none());
        assert!(p(&[(3, &[("a", 1)])]).div_exact(&ParamPoly::constant(2)).is_none());
    }

    #[test]
    fn leading_sign_uses_name_order() {
        assert_eq!(p(&[(-1, &[("a", 1)]), (5, &[("b", 3)])]).leading_sign(), -1);
        assert_eq!(p(&[(2, &[("b", 1)]), (-5, &[])]).leading_sign(), 1);
    }
}

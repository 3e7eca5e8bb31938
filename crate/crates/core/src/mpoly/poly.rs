use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use super::field::{FieldElem, NumberField, Rational};
use super::order::{self, Exponent, MonomialOrder};
use super::MpolyError;

/// Ordered variable names together with the coefficient field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyRing {
    vars: Vec<String>,
    field: NumberField,
}

impl PolyRing {
    pub fn new<S: AsRef<str>>(vars: &[S], field: NumberField) -> Arc<Self> {
        Arc::new(PolyRing {
            vars: vars.iter().map(|s| s.as_ref().to_string()).collect(),
            field,
        })
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }
}

/// Sparse multivariate polynomial. Zero coefficients are never stored.
#[derive(Clone)]
pub struct Poly {
    ring: Arc<PolyRing>,
    terms: BTreeMap<Exponent, FieldElem>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for Poly {}

fn same_ring(a: &Arc<PolyRing>, b: &Arc<PolyRing>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl Poly {
    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        Poly {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: &Arc<PolyRing>) -> Self {
        Self::constant(ring, ring.field.one())
    }

    pub fn constant(ring: &Arc<PolyRing>, c: FieldElem) -> Self {
        Self::monomial(ring, vec![0; ring.nvars()], c)
    }

    pub fn from_int(ring: &Arc<PolyRing>, n: i64) -> Self {
        Self::constant(ring, ring.field.from_int(n))
    }

    pub fn monomial(ring: &Arc<PolyRing>, exp: Exponent, c: FieldElem) -> Self {
        debug_assert_eq!(exp.len(), ring.nvars());
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Poly {
            ring: ring.clone(),
            terms,
        }
    }

    /// The variable with index `i`.
    pub fn var(ring: &Arc<PolyRing>, i: usize) -> Self {
        let mut e = vec![0; ring.nvars()];
        e[i] = 1;
        Self::monomial(ring, e, ring.field.one())
    }

    pub fn var_named(ring: &Arc<PolyRing>, name: &str) -> Result<Self, MpolyError> {
        ring.var_index(name)
            .map(|i| Self::var(ring, i))
            .ok_or_else(|| MpolyError::UnknownVariable(name.into()))
    }

    pub fn from_terms(
        ring: &Arc<PolyRing>,
        terms: impl IntoIterator<Item = (Exponent, FieldElem)>,
    ) -> Self {
        let mut p = Self::zero(ring);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub(crate) fn from_map(ring: &Arc<PolyRing>, terms: BTreeMap<Exponent, FieldElem>) -> Self {
        debug_assert!(terms.values().all(|c| !c.is_zero()));
        Poly {
            ring: ring.clone(),
            terms,
        }
    }

    pub(crate) fn add_term(&mut self, e: Exponent, c: FieldElem) {
        if c.is_zero() {
            return;
        }
        let field = &self.ring.field;
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = field.add(o.get(), &c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn field(&self) -> &NumberField {
        &self.ring.field
    }

    pub fn terms(&self) -> &BTreeMap<Exponent, FieldElem> {
        &self.terms
    }

    pub fn nterms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    pub fn constant_term(&self) -> FieldElem {
        self.terms
            .get(&vec![0; self.ring.nvars()])
            .cloned()
            .unwrap_or_else(|| self.ring.field.zero())
    }

    /// Units of the local ring at the origin are exactly the polynomials
    /// with non-zero constant term.
    pub fn vanishes_at_origin(&self) -> bool {
        self.constant_term().is_zero()
    }

    pub fn coeff(&self, e: &[u32]) -> FieldElem {
        self.terms
            .get(e)
            .cloned()
            .unwrap_or_else(|| self.ring.field.zero())
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| order::degree(e)).max().unwrap_or(0)
    }

    /// Lowest total degree of a term (the order at the origin).
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(|e| order::degree(e)).min()
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|e| e[var]).max().unwrap_or(0)
    }

    pub fn involves(&self, var: usize) -> bool {
        self.terms.keys().any(|e| e[var] > 0)
    }

    /// True when every coefficient lies in the prime field.
    pub fn has_rational_coefficients(&self) -> bool {
        self.terms.values().all(FieldElem::is_rational)
    }

    /// Drops every term of total degree `>= d`.
    pub fn truncated(&self, d: u32) -> Poly {
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| order::degree(e) < d)
            .map(|(e, c)| (e.clone(), c.clone()))
            .collect();
        Poly::from_map(&self.ring, terms)
    }

    /// The same polynomial over `Q`, when all coefficients are rational.
    pub fn restrict_to_rationals(&self) -> Option<Poly> {
        if !self.has_rational_coefficients() {
            return None;
        }
        let ring = PolyRing::new(&self.ring.vars, NumberField::rationals());
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e.clone(), FieldElem(vec![c.0[0].clone()])))
            .collect();
        Some(Poly::from_map(&ring, terms))
    }

    fn check_ring(&self, other: &Poly) -> Result<(), MpolyError> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(MpolyError::RingMismatch)
        }
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly, MpolyError> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly, MpolyError> {
        self.check_ring(other)?;
        let f = &self.ring.field;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), f.neg(c));
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly, MpolyError> {
        self.check_ring(other)?;
        let f = &self.ring.field;
        let mut out = Poly::zero(&self.ring);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term(order::add(ea, eb), f.mul(ca, cb));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &FieldElem) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.ring);
        }
        let f = &self.ring.field;
        Poly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, x)| (e.clone(), f.mul(x, c)))
                .collect(),
        }
    }

    /// Multiplies by the monomial `c * x^e`.
    pub fn mul_term(&self, e: &[u32], c: &FieldElem) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.ring);
        }
        let f = &self.ring.field;
        Poly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(x, k)| (order::add(x, e), f.mul(k, c)))
                .collect(),
        }
    }

    pub fn pow(&self, mut n: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(&self.ring);
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn derivative(&self, var: usize) -> Poly {
        let f = &self.ring.field;
        let mut out = Poly::zero(&self.ring);
        for (e, c) in &self.terms {
            if e[var] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[var] -= 1;
            out.add_term(e2, f.scale(c, &Rational::from_integer(e[var].into())));
        }
        out
    }

    /// Ring homomorphism sending variable `i` to `images[i]`, all of which
    /// live in `target`.
    pub fn subst(&self, target: &Arc<PolyRing>, images: &[Poly]) -> Result<Poly, MpolyError> {
        if images.len() != self.ring.nvars() {
            return Err(MpolyError::RingMismatch);
        }
        if target.field != self.ring.field || images.iter().any(|p| !same_ring(&p.ring, target)) {
            return Err(MpolyError::RingMismatch);
        }
        // cache powers per variable
        let mut powers: Vec<Vec<Poly>> = images.iter().map(|p| vec![Poly::one(target), p.clone()]).collect();
        let mut out = Poly::zero(target);
        for (e, c) in &self.terms {
            let mut t = Poly::constant(target, c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                while powers[i].len() <= k as usize {
                    let next = &powers[i][powers[i].len() - 1] * &images[i];
                    powers[i].push(next);
                }
                t = &t * &powers[i][k as usize];
            }
            out = &out + &t;
        }
        Ok(out)
    }

    /// Substitutes one variable inside the same ring.
    pub fn substitute(&self, var: usize, image: &Poly) -> Result<Poly, MpolyError> {
        self.check_ring(image)?;
        let images: Vec<Poly> = (0..self.ring.nvars())
            .map(|i| {
                if i == var {
                    image.clone()
                } else {
                    Poly::var(&self.ring, i)
                }
            })
            .collect();
        self.subst(&self.ring, &images)
    }

    /// Re-embeds into `target` by variable name. Every variable that occurs
    /// must exist in `target`.
    pub fn embed(&self, target: &Arc<PolyRing>) -> Result<Poly, MpolyError> {
        if target.field != self.ring.field {
            return Err(MpolyError::RingMismatch);
        }
        let map: Vec<Option<usize>> = self.ring.vars.iter().map(|v| target.var_index(v)).collect();
        let mut out = Poly::zero(target);
        for (e, c) in &self.terms {
            let mut e2 = vec![0; target.nvars()];
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    let j = map[i].ok_or_else(|| MpolyError::UnknownVariable(self.ring.vars[i].clone()))?;
                    e2[j] += k;
                }
            }
            out.add_term(e2, c.clone());
        }
        Ok(out)
    }

    /// Leading term under `order`.
    pub fn leading(&self, order: &MonomialOrder) -> Option<(&Exponent, &FieldElem)> {
        self.terms
            .iter()
            .max_by(|a, b| order.cmp(a.0, b.0))
    }

    /// Scales so the leading coefficient under local degrevlex is 1.
    pub fn normalized(&self) -> Poly {
        match self.leading(&MonomialOrder::LocalDegRevLex) {
            None => self.clone(),
            Some((_, c)) => {
                let inv = self.ring.field.inv(c).expect("nonzero");
                self.scale(&inv)
            }
        }
    }

    /// `self` and `other` differ by a nonzero constant factor.
    pub fn is_associate(&self, other: &Poly) -> bool {
        !self.is_zero() && !other.is_zero() && self.normalized() == other.normalized()
    }

    /// Leading term under lex order with the first variable most significant.
    pub(crate) fn lex_leading(&self) -> Option<(&Exponent, &FieldElem)> {
        self.terms.iter().next_back()
    }

    /// Exact division; `None` when `other` does not divide `self`.
    pub fn div_exact(&self, other: &Poly) -> Option<Poly> {
        assert!(same_ring(&self.ring, &other.ring));
        if other.is_zero() {
            return None;
        }
        let f = &self.ring.field;
        let (le, lc) = other.lex_leading()?;
        let lc_inv = f.inv(lc)?;
        let mut q = Poly::zero(&self.ring);
        let mut r = self.clone();
        while let Some((re, rc)) = r.lex_leading() {
            if !order::divides(le, re) {
                return None;
            }
            let e = order::sub(re, le);
            let c = f.mul(rc, &lc_inv);
            let t = other.mul_term(&e, &c);
            r = &r - &t;
            q.add_term(e, c);
        }
        Some(q)
    }

    /// Coefficients in `var`, lowest degree first; each coefficient is free
    /// of `var`.
    pub fn coefficients_in(&self, var: usize) -> Vec<Poly> {
        let mut out = vec![Poly::zero(&self.ring); self.degree_in(var) as usize + 1];
        for (e, c) in &self.terms {
            let k = e[var] as usize;
            let mut e2 = e.clone();
            e2[var] = 0;
            out[k].add_term(e2, c.clone());
        }
        out
    }

    pub fn from_coefficients_in(ring: &Arc<PolyRing>, var: usize, coeffs: &[Poly]) -> Poly {
        let mut out = Poly::zero(ring);
        for (k, c) in coeffs.iter().enumerate() {
            for (e, x) in &c.terms {
                let mut e2 = e.clone();
                e2[var] += k as u32;
                out.add_term(e2, x.clone());
            }
        }
        out
    }

    /// Indices of the variables that occur.
    pub fn vars_used(&self) -> Vec<usize> {
        (0..self.ring.nvars()).filter(|&i| self.involves(i)).collect()
    }

    /// Renders in the expression grammar accepted by the parser. Terms are
    /// listed in local degrevlex order, leading term first.
    pub fn to_expr_string(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let field = &self.ring.field;
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| MonomialOrder::LocalDegRevLex.cmp(b.0, a.0));
        let mut out = String::new();
        for (idx, (e, c)) in terms.into_iter().enumerate() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| {
                    if k == 1 {
                        self.ring.vars[i].clone()
                    } else {
                        format!("{}^{}", self.ring.vars[i], k)
                    }
                })
                .collect();
            let mono = mono.join("*");
            let mut nonzero = c.coords().iter().filter(|x| !x.is_zero());
            let neg = match (nonzero.next(), nonzero.next()) {
                (Some(x), None) => x.is_negative(),
                _ => false,
            };
            let mag = if neg { field.neg(c) } else { c.clone() };
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let is_one = mag.as_rational().is_some_and(One::is_one);
            if mono.is_empty() {
                out.push_str(&field.format_elem(&mag));
            } else if is_one {
                out.push_str(&mono);
            } else {
                out.push_str(&field.format_elem(&mag));
                out.push('*');
                out.push_str(&mono);
            }
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_expr_string())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]({})", self.ring.vars.join(","), self.to_expr_string())
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &'a Poly) -> Poly {
        self.checked_add(rhs).expect("polynomials from different rings")
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &'a Poly) -> Poly {
        self.checked_sub(rhs).expect("polynomials from different rings")
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &'a Poly) -> Poly {
        self.checked_mul(rhs).expect("polynomials from different rings")
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&self.ring.field.from_int(-1))
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

//! Coefficient fields: the rationals and simple extensions `Q[a]/(m(a))`.
//!
//! An element of a degree `d` field is stored as its `d` coordinates in the
//! power basis `1, a, ..., a^(d-1)`. All arithmetic goes through the
//! [`NumberField`] that owns the minimal polynomial.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::MpolyError;

pub type Rational = BigRational;

pub(crate) fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Element of a [`NumberField`] in power-basis coordinates.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FieldElem(pub(crate) Vec<Rational>);

impl FieldElem {
    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// True when the element lies in the prime field `Q`.
    pub fn is_rational(&self) -> bool {
        self.0.iter().skip(1).all(Zero::is_zero)
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then(|| &self.0[0])
    }
}

/// `Q` (degree 1) or a simple extension `Q(a)` given by a monic irreducible
/// minimal polynomial.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct NumberField {
    generator: Option<String>,
    /// Monic, coefficients from the constant term upwards.
    minimal_poly: Vec<Rational>,
}

impl NumberField {
    pub fn rationals() -> Self {
        NumberField {
            generator: None,
            minimal_poly: vec![rat(0), rat(1)],
        }
    }

    /// `Q(i)` with `i^2 + 1 = 0`.
    pub fn gaussian() -> Self {
        NumberField {
            generator: Some("i".into()),
            minimal_poly: vec![rat(1), rat(0), rat(1)],
        }
    }

    /// `Q(zeta3)` with `zeta3^2 + zeta3 + 1 = 0`.
    pub fn eisenstein() -> Self {
        NumberField {
            generator: Some("zeta3".into()),
            minimal_poly: vec![rat(1), rat(1), rat(1)],
        }
    }

    /// Builds `Q[generator]/(minimal_poly)`. The polynomial is made monic.
    /// Irreducibility over `Q` is checked up to degree 4; above that it is
    /// taken on trust.
    pub fn new(generator: &str, minimal_poly: Vec<Rational>) -> Result<Self, MpolyError> {
        let mut m = minimal_poly;
        while m.last().is_some_and(Zero::is_zero) {
            m.pop();
        }
        if m.len() < 2 {
            return Err(MpolyError::InvalidField(
                "minimal polynomial must have degree at least 1".into(),
            ));
        }
        let lc = m.last().unwrap().clone();
        for c in m.iter_mut() {
            *c = &*c / &lc;
        }
        if m.len() == 2 {
            // a = -m0 is rational; the field is Q itself.
            return Ok(Self::rationals());
        }
        if m.len() - 1 <= 4 && !is_irreducible_small(&m) {
            return Err(MpolyError::InvalidField(format!(
                "minimal polynomial of {generator} is reducible over Q"
            )));
        }
        Ok(NumberField {
            generator: Some(generator.to_string()),
            minimal_poly: m,
        })
    }

    pub fn degree(&self) -> usize {
        self.minimal_poly.len() - 1
    }

    pub fn generator_name(&self) -> Option<&str> {
        self.generator.as_deref()
    }

    pub fn minimal_poly(&self) -> &[Rational] {
        &self.minimal_poly
    }

    /// The descriptor used in germ files: `Q`, `Q(i)`, `Q(zeta3)` or
    /// `Q[a]/(<poly in a>)`.
    pub fn descriptor(&self) -> String {
        match self.generator.as_deref() {
            None => "Q".into(),
            Some("i") if *self == Self::gaussian() => "Q(i)".into(),
            Some("zeta3") if *self == Self::eisenstein() => "Q(zeta3)".into(),
            Some(g) => format!("Q[{g}]/({})", upoly_to_string(&self.minimal_poly, g)),
        }
    }

    /// Inverse of [`NumberField::descriptor`].
    pub fn from_descriptor(src: &str) -> Result<Self, MpolyError> {
        let s = src.trim();
        match s {
            "Q" => return Ok(Self::rationals()),
            "Q(i)" => return Ok(Self::gaussian()),
            "Q(zeta3)" => return Ok(Self::eisenstein()),
            _ => {}
        }
        let bad = || MpolyError::InvalidField(format!("unrecognized field `{s}`"));
        let rest = s.strip_prefix("Q[").ok_or_else(bad)?;
        let (generator, rest) = rest.split_once(']').ok_or_else(bad)?;
        let generator = generator.trim();
        let body = rest
            .trim()
            .strip_prefix("/(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(bad)?;
        if generator.is_empty() || !generator.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
            return Err(bad());
        }
        let ring = super::PolyRing::new(&[generator], Self::rationals());
        let m = super::parse_poly(body, &ring)?;
        let coeffs = (0..=m.degree_in(0))
            .map(|k| m.coeff(&[k]).0.first().cloned().unwrap_or_else(Rational::zero))
            .collect();
        Self::new(generator, coeffs)
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem(vec![Rational::zero(); self.degree()])
    }

    pub fn one(&self) -> FieldElem {
        self.from_rational(Rational::one())
    }

    pub fn from_int(&self, n: i64) -> FieldElem {
        self.from_rational(rat(n))
    }

    pub fn from_rational(&self, r: Rational) -> FieldElem {
        let mut v = vec![Rational::zero(); self.degree()];
        v[0] = r;
        FieldElem(v)
    }

    /// The generator `a`; for `Q` there is none.
    pub fn generator(&self) -> Option<FieldElem> {
        if self.degree() < 2 {
            return None;
        }
        let mut v = vec![Rational::zero(); self.degree()];
        v[1] = Rational::one();
        Some(FieldElem(v))
    }

    pub fn add(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        FieldElem(a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect())
    }

    pub fn sub(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        FieldElem(a.0.iter().zip(&b.0).map(|(x, y)| x - y).collect())
    }

    pub fn neg(&self, a: &FieldElem) -> FieldElem {
        FieldElem(a.0.iter().map(|x| -x).collect())
    }

    pub fn scale(&self, a: &FieldElem, r: &Rational) -> FieldElem {
        FieldElem(a.0.iter().map(|x| x * r).collect())
    }

    pub fn mul(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        if b.is_rational() {
            return self.scale(a, &b.0[0]);
        }
        if a.is_rational() {
            return self.scale(b, &a.0[0]);
        }
        let d = self.degree();
        let mut prod = vec![Rational::zero(); 2 * d - 1];
        for (i, x) in a.0.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.0.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        FieldElem(self.reduce(prod))
    }

    /// Reduces a coefficient vector modulo the minimal polynomial.
    fn reduce(&self, mut v: Vec<Rational>) -> Vec<Rational> {
        let d = self.degree();
        while v.len() > d {
            let top = v.pop().unwrap();
            if top.is_zero() {
                continue;
            }
            let shift = v.len() - d;
            for (k, m) in self.minimal_poly[..d].iter().enumerate() {
                v[shift + k] -= &top * m;
            }
        }
        v.resize(d, Rational::zero());
        v
    }

    pub fn inv(&self, a: &FieldElem) -> Option<FieldElem> {
        if a.is_zero() {
            return None;
        }
        if a.is_rational() {
            return Some(self.from_rational(a.0[0].recip()));
        }
        // Bezout: s*a + t*m = 1 in Q[x].
        let (g, s) = upoly_ext_gcd(&a.0, &self.minimal_poly);
        debug_assert_eq!(g.len(), 1);
        let s = upoly_scale(&s, &g[0].recip());
        Some(FieldElem(self.reduce(s)))
    }

    pub fn div(&self, a: &FieldElem, b: &FieldElem) -> Option<FieldElem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    pub fn pow(&self, a: &FieldElem, mut n: u32) -> FieldElem {
        let mut base = a.clone();
        let mut acc = self.one();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            n >>= 1;
        }
        acc
    }

    /// A square root inside the field, when one exists. Supported for fields
    /// of degree at most 2.
    pub fn sqrt(&self, a: &FieldElem) -> Option<FieldElem> {
        if a.is_zero() {
            return Some(self.zero());
        }
        if let Some(r) = a.as_rational() {
            if let Some(s) = rational_sqrt(r) {
                return Some(self.from_rational(s));
            }
            if self.degree() == 1 {
                return None;
            }
        }
        if self.degree() != 2 {
            return None;
        }
        // a = x0 + x1*t with t^2 = -p*t - q; look for (x + y*t)^2 = a.
        let q = &self.minimal_poly[0];
        let p = &self.minimal_poly[1];
        let (a0, b0) = (&a.0[0], &a.0[1]);
        let two = rat(2);
        let four = rat(4);
        let qa = p * p - &four * q;
        let qb = &two * b0 * p - &four * a0;
        let qc = b0 * b0;
        let disc = &qb * &qb - &four * &qa * &qc;
        let sd = rational_sqrt(&disc)?;
        for s in [sd.clone(), -sd] {
            let big_y = (-&qb + s) / (&two * &qa);
            if big_y.is_zero() {
                continue;
            }
            let Some(y) = rational_sqrt(&big_y) else {
                continue;
            };
            let x = (b0 + p * &big_y) / (&two * &y);
            let cand = FieldElem(vec![x, y]);
            if self.mul(&cand, &cand) == *a {
                return Some(cand);
            }
        }
        None
    }

    /// Formats an element in the expression grammar. Non-rational elements
    /// are parenthesised so they can be used as coefficients.
    pub fn format_elem(&self, a: &FieldElem) -> String {
        let g = self.generator.as_deref().unwrap_or("a");
        let s = upoly_to_string(&a.0, g);
        if a.0.iter().filter(|c| !c.is_zero()).count() > 1 {
            format!("({s})")
        } else {
            s
        }
    }
}

impl fmt::Display for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.descriptor())
    }
}

pub(crate) fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    (&n * &n == *r.numer() && &d * &d == *r.denom()).then(|| Rational::new(n, d))
}

fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn upoly_to_string(c: &[Rational], var: &str) -> String {
    let mut out = String::new();
    for (k, coef) in c.iter().enumerate().rev() {
        if coef.is_zero() {
            continue;
        }
        let neg = coef.is_negative();
        let mag = coef.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mono = match k {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{k}"),
        };
        if mono.is_empty() {
            out.push_str(&format_rational(&mag));
        } else if mag.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{}*{mono}", format_rational(&mag)));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn trim(mut v: Vec<Rational>) -> Vec<Rational> {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

fn upoly_scale(a: &[Rational], r: &Rational) -> Vec<Rational> {
    a.iter().map(|x| x * r).collect()
}

fn upoly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    let z = Rational::zero();
    trim(
        (0..n)
            .map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z))
            .collect(),
    )
}

fn upoly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn upoly_divrem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let b = trim(b.to_vec());
    let mut r = trim(a.to_vec());
    if r.len() < b.len() {
        return (vec![], r);
    }
    let mut q = vec![Rational::zero(); r.len() - b.len() + 1];
    let lc = b.last().unwrap().clone();
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let c = r.last().unwrap() / &lc;
        for (k, bk) in b.iter().enumerate() {
            r[shift + k] -= &c * bk;
        }
        q[shift] = c;
        r = trim(r);
    }
    (trim(q), r)
}

/// Returns `(g, s)` with `s*a = g (mod b)`.
fn upoly_ext_gcd(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let (mut r0, mut r1) = (trim(a.to_vec()), trim(b.to_vec()));
    let (mut s0, mut s1) = (vec![rat(1)], vec![]);
    while !r1.is_empty() {
        let (q, r) = upoly_divrem(&r0, &r1);
        let s = upoly_sub(&s0, &upoly_mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    (r0, s0)
}

/// Clears denominators of a monic rational polynomial with the substitution
/// `x = y / m`, giving a monic integer polynomial whose rational roots are
/// `m` times those of the input.
fn monic_integral(m: &[Rational]) -> Vec<BigInt> {
    let lcm = m
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let d = m.len() - 1;
    let lcm_r = Rational::from_integer(lcm);
    m.iter()
        .enumerate()
        .map(|(k, c)| {
            let scaled = c * num_traits::pow(lcm_r.clone(), d - k);
            debug_assert!(scaled.is_integer());
            scaled.to_integer()
        })
        .collect()
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut out = vec![];
    let mut k = BigInt::one();
    while &k * &k <= n {
        if (&n % &k).is_zero() {
            out.push(k.clone());
            let other = &n / &k;
            if other != k {
                out.push(other);
            }
        }
        k += 1;
    }
    let neg: Vec<BigInt> = out.iter().map(|x| -x).collect();
    out.extend(neg);
    out
}

fn eval_int(c: &[BigInt], x: &BigInt) -> BigInt {
    c.iter().rev().fold(BigInt::zero(), |acc, k| acc * x + k)
}

/// Irreducibility over Q for monic polynomials of degree 2..=4: no rational
/// root, and for quartics no split into two integral quadratics.
fn is_irreducible_small(m: &[Rational]) -> bool {
    let c = monic_integral(m);
    if c[0].is_zero() {
        return false;
    }
    let cands = divisors(&c[0]);
    if cands.iter().any(|x| eval_int(&c, x).is_zero()) {
        return false;
    }
    if c.len() - 1 < 4 {
        return true;
    }
    // (y^2 + p y + q)(y^2 + r y + s), q*s = c0.
    let (c0, c1, c2, c3) = (&c[0], &c[1], &c[2], &c[3]);
    for q in &cands {
        let s = c0 / q;
        // p + r = c3, p*r = c2 - q - s; p*s + q*r = c1
        let prod = c2 - q - &s;
        let disc = c3 * c3 - BigInt::from(4) * &prod;
        if disc.is_negative() {
            continue;
        }
        let sd = disc.sqrt();
        if &sd * &sd != disc {
            continue;
        }
        for num in [c3 + &sd, c3 - &sd] {
            if !num.is_even() {
                continue;
            }
            let p = &num / 2;
            let r = c3 - &p;
            if &p * &s + q * &r == *c1 {
                return false;
            }
        }
    }
    true
}

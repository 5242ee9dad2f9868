//! Exact polynomial arithmetic used by the symbolic-pencil machinery and
//! the one-parameter slicing solver: univariate polynomials with complete
//! root finding where the field allows it, and sparse multivariate
//! polynomials for right-hand sides kept symbolic.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::fields::{FieldSpec, Scalar};

/// Univariate polynomial, coefficients ascending, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UPoly {
    field: FieldSpec,
    coeffs: Vec<Scalar>,
}

impl UPoly {
    pub fn zero(field: FieldSpec) -> UPoly {
        UPoly {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn constant(c: Scalar) -> UPoly {
        let field = c.field();
        let mut p = UPoly {
            field,
            coeffs: vec![c],
        };
        p.normalize();
        p
    }

    /// c0 + c1 s for affine entries.
    pub fn affine(c0: Scalar, c1: Scalar) -> UPoly {
        let field = c0.field();
        let mut p = UPoly {
            field,
            coeffs: vec![c0, c1],
        };
        p.normalize();
        p
    }

    pub fn from_coeffs(field: FieldSpec, coeffs: Vec<Scalar>) -> UPoly {
        let mut p = UPoly { field, coeffs };
        p.normalize();
        p
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(Scalar::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> Scalar {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn add(&self, other: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k).add(&other.coeff(k))).collect();
        UPoly::from_coeffs(self.field, coeffs)
    }

    pub fn sub(&self, other: &UPoly) -> UPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> UPoly {
        UPoly {
            field: self.field,
            coeffs: self.coeffs.iter().map(Scalar::neg).collect(),
        }
    }

    pub fn mul(&self, other: &UPoly) -> UPoly {
        if self.is_zero() || other.is_zero() {
            return UPoly::zero(self.field);
        }
        let mut coeffs = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
            }
        }
        UPoly::from_coeffs(self.field, coeffs)
    }

    pub fn scale(&self, c: &Scalar) -> UPoly {
        UPoly::from_coeffs(self.field, self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    pub fn eval(&self, s: &Scalar) -> Scalar {
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(s).add(c);
        }
        acc
    }

    /// All roots lying in the coefficient field, plus a completeness flag.
    /// Complete for degree <= 2 over every supported field (GF(2) by
    /// enumeration, otherwise the quadratic formula with exact square
    /// roots), for any degree over finite fields small enough to scan, and
    /// for any degree over Q via the rational root theorem. Over Q(i) above
    /// degree 2 the search is a bounded heuristic and flagged incomplete.
    pub fn roots_in_field(&self) -> (Vec<Scalar>, bool) {
        assert!(
            !self.is_zero(),
            "roots of the zero polynomial are the whole field"
        );
        let mut roots = Vec::new();
        let mut poly = self.clone();
        // factor out s^k
        let mut shift = 0usize;
        while poly.coeff(0).is_zero() && !poly.is_zero() {
            poly.coeffs.remove(0);
            shift += 1;
        }
        if shift > 0 {
            roots.push(self.field.zero());
        }
        let deg = poly.degree().unwrap_or(0);
        let complete = match deg {
            0 => true,
            1 => {
                // c0 + c1 s = 0
                let r = poly
                    .coeff(0)
                    .neg()
                    .div(&poly.coeff(1))
                    .expect("leading nonzero");
                roots.push(r);
                true
            }
            2 => {
                roots.extend(quadratic_roots(
                    &poly.coeff(2),
                    &poly.coeff(1),
                    &poly.coeff(0),
                ));
                true
            }
            _ => match self.field {
                FieldSpec::PrimeField(p) if p <= 100_000 => {
                    for cand in self.field.enumerate().expect("finite") {
                        if poly.eval(&cand).is_zero() && !cand.is_zero() {
                            roots.push(cand);
                        }
                    }
                    true
                }
                FieldSpec::Rationals => {
                    let (found, complete) = rational_roots(&poly);
                    roots.extend(found);
                    complete
                }
                _ => {
                    // bounded integer probe; incomplete by construction
                    for n in -8i64..=8 {
                        let cand = Scalar::from_integer(self.field, n);
                        if !cand.is_zero() && poly.eval(&cand).is_zero() {
                            roots.push(cand);
                        }
                    }
                    false
                }
            },
        };
        roots.sort_by(|a, b| a.canonical_cmp(b));
        roots.dedup();
        (roots, complete)
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*s")?,
                _ => write!(f, "({c})*s^{k}")?,
            }
        }
        Ok(())
    }
}

/// Roots of a s^2 + b s + c with a != 0. Uses the quadratic formula with
/// the field's partial square root; GF(2) is scanned since 2a is not
/// invertible there.
pub fn quadratic_roots(a: &Scalar, b: &Scalar, c: &Scalar) -> Vec<Scalar> {
    let field = a.field();
    if let FieldSpec::PrimeField(2) = field {
        return field
            .enumerate()
            .expect("finite")
            .filter(|s| a.mul(s).mul(s).add(&b.mul(s)).add(c).is_zero())
            .collect();
    }
    let disc = b.mul(b).sub(&Scalar::from_integer(field, 4).mul(a).mul(c));
    let Some(sq) = disc.sqrt() else {
        return Vec::new();
    };
    let two_a = Scalar::from_integer(field, 2).mul(a);
    let r1 = b.neg().add(&sq).div(&two_a).expect("a nonzero");
    let r2 = b.neg().sub(&sq).div(&two_a).expect("a nonzero");
    let mut out = vec![r1, r2];
    out.sort_by(|x, y| x.canonical_cmp(y));
    out.dedup();
    out
}

/// Discriminant b^2 - 4ac of a quadratic, exposed for certificates.
pub fn discriminant(a: &Scalar, b: &Scalar, c: &Scalar) -> Scalar {
    b.mul(b)
        .sub(&Scalar::from_integer(a.field(), 4).mul(a).mul(c))
}

/// Rational root theorem. Returns (roots, complete); completeness is lost
/// only when a leading/trailing coefficient resists factoring within the
/// trial-division bound.
fn rational_roots(poly: &UPoly) -> (Vec<Scalar>, bool) {
    // clear denominators
    let rats: Vec<BigRational> = poly
        .coeffs
        .iter()
        .map(|c| match c {
            Scalar::Rat(r) => r.clone(),
            _ => unreachable!("rational_roots called on a non-rational polynomial"),
        })
        .collect();
    let mut lcm = BigInt::one();
    for r in &rats {
        lcm = lcm.lcm(r.denom());
    }
    let ints: Vec<BigInt> = rats.iter().map(|r| (r * &lcm).to_integer()).collect();
    let a0 = ints.first().expect("nonzero poly").clone();
    let an = ints.last().expect("nonzero poly").clone();
    debug_assert!(!a0.is_zero() && !an.is_zero());

    let (d0, c0) = divisors_bounded(&a0.abs());
    let (dn, cn) = divisors_bounded(&an.abs());
    let mut roots = Vec::new();
    for num in &d0 {
        for den in &dn {
            for sign in [1i64, -1] {
                let cand = BigRational::new(num * BigInt::from(sign), den.clone());
                let mut acc = BigRational::zero();
                for c in rats.iter().rev() {
                    acc = acc * &cand + c;
                }
                if acc.is_zero() {
                    roots.push(Scalar::Rat(cand));
                }
            }
        }
    }
    (roots, c0 && cn)
}

/// All positive divisors when the factorization succeeds within bounds.
fn divisors_bounded(n: &BigInt) -> (Vec<BigInt>, bool) {
    const TRIAL_BOUND: u64 = 1_000_000;
    const MAX_DIVISORS: usize = 20_000;
    let mut factors: Vec<(BigInt, u32)> = Vec::new();
    let mut rest = n.clone();
    let mut complete = true;
    let mut d = BigInt::from(2u32);
    while &d * &d <= rest && d <= BigInt::from(TRIAL_BOUND) {
        let mut e = 0u32;
        while (&rest % &d).is_zero() {
            rest /= &d;
            e += 1;
        }
        if e > 0 {
            factors.push((d.clone(), e));
        }
        d += 1;
    }
    if rest > BigInt::one() {
        // no factor below the bound: prime if below bound^2
        if rest <= BigInt::from(TRIAL_BOUND) * BigInt::from(TRIAL_BOUND) {
            factors.push((rest, 1));
        } else {
            complete = false;
        }
    }
    let mut divs = vec![BigInt::one()];
    for (p, e) in factors {
        let mut next = Vec::new();
        for d in &divs {
            let mut pe = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pe);
                pe *= &p;
            }
        }
        divs = next;
        if divs.len() > MAX_DIVISORS {
            divs.truncate(MAX_DIVISORS);
            complete = false;
        }
    }
    (divs, complete)
}

/// Sparse multivariate polynomial over a fixed number of variables;
/// exponent vectors are dense and ordered, so equality is structural.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MPoly {
    field: FieldSpec,
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Scalar>,
}

impl MPoly {
    pub fn zero(field: FieldSpec, nvars: usize) -> MPoly {
        MPoly {
            field,
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Scalar) -> MPoly {
        let field = c.field();
        let mut p = MPoly::zero(field, nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn var(field: FieldSpec, nvars: usize, idx: usize) -> MPoly {
        assert!(idx < nvars);
        let mut expo = vec![0u32; nvars];
        expo[idx] = 1;
        let mut p = MPoly::zero(field, nvars);
        p.terms.insert(expo, field.one());
        p
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, expo: Vec<u32>, c: &Scalar) {
        assert_eq!(expo.len(), self.nvars);
        let entry = self
            .terms
            .entry(expo.clone())
            .or_insert_with(|| self.field.zero());
        *entry = entry.add(c);
        if entry.is_zero() {
            self.terms.remove(&expo);
        }
    }

    pub fn add(&self, other: &MPoly) -> MPoly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &MPoly) -> MPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> MPoly {
        MPoly {
            field: self.field,
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(self.field, self.nvars);
        }
        MPoly {
            field: self.field,
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, k)| (e.clone(), k.mul(c)))
                .collect(),
        }
    }

    pub fn mul(&self, other: &MPoly) -> MPoly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = MPoly::zero(self.field, self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let expo: Vec<u32> = ea.iter().zip(eb.iter()).map(|(x, y)| x + y).collect();
                out.add_term(expo, &ca.mul(cb));
            }
        }
        out
    }

    pub fn eval(&self, point: &[Scalar]) -> Scalar {
        assert_eq!(point.len(), self.nvars);
        let mut acc = self.field.zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (v, &k) in point.iter().zip(e.iter()) {
                for _ in 0..k {
                    term = term.mul(v);
                }
            }
            acc = acc.add(&term);
        }
        acc
    }

    /// Re-embeds into a ring with more variables, shifting indices by
    /// `offset`.
    pub fn embed(&self, nvars: usize, offset: usize) -> MPoly {
        assert!(self.nvars + offset <= nvars);
        let mut out = MPoly::zero(self.field, nvars);
        for (e, c) in &self.terms {
            let mut expo = vec![0u32; nvars];
            expo[offset..offset + self.nvars].copy_from_slice(e);
            out.terms.insert(expo, c.clone());
        }
        out
    }

    pub fn render(&self, names: &[&str]) -> String {
        assert_eq!(names.len(), self.nvars);
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (e, c) in self.terms.iter().rev() {
            let mut body = String::new();
            for (name, &k) in names.iter().zip(e.iter()) {
                if k == 1 {
                    body.push_str(&format!("*{name}"));
                } else if k > 1 {
                    body.push_str(&format!("*{name}^{k}"));
                }
            }
            parts.push(format!("({c}){body}"));
        }
        parts.join(" + ")
    }
}

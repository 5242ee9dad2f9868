//! Exact scalar arithmetic over the three supported fields: the rationals,
//! the Gaussian rationals, and prime fields GF(p).
//!
//! Scalars are immutable values. Mixing scalars of different fields in an
//! arithmetic operation is a usage error, reported by [`Scalar::arith`] and
//! treated as a panic by the operator impls (which internal code only calls
//! on field-checked data). No floating point anywhere.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Identifies one of the supported coefficient fields.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    /// The rational numbers.
    Rationals,
    /// The Gaussian rationals, a + bi with rational a, b.
    GaussianRationals,
    /// GF(p) for a prime modulus p.
    PrimeField(u64),
}

impl FieldSpec {
    /// Builds a prime-field spec, rejecting composite moduli.
    pub fn prime_field(modulus: u64) -> Result<FieldSpec> {
        if is_prime_u64(modulus) {
            Ok(FieldSpec::PrimeField(modulus))
        } else {
            Err(Error::NotPrime(modulus))
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, FieldSpec::PrimeField(_))
    }

    /// Number of elements for finite fields.
    pub fn order(&self) -> Option<u64> {
        match self {
            FieldSpec::PrimeField(p) => Some(*p),
            _ => None,
        }
    }

    pub fn zero(&self) -> Scalar {
        Scalar::from_integer(*self, 0)
    }

    pub fn one(&self) -> Scalar {
        Scalar::from_integer(*self, 1)
    }

    /// Iterates over all field elements; errors on infinite fields.
    pub fn enumerate(&self) -> Result<impl Iterator<Item = Scalar>> {
        match self {
            FieldSpec::PrimeField(p) => {
                let p = *p;
                Ok((0..p).map(move |v| Scalar::Mod {
                    value: v,
                    modulus: p,
                }))
            }
            _ => Err(Error::InfiniteField),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::GaussianRationals => write!(f, "Q(i)"),
            FieldSpec::PrimeField(p) => write!(f, "GF({p})"),
        }
    }
}

/// An exact field element. Rationals are kept in lowest terms with positive
/// denominator (enforced by `BigRational`), Gaussian rationals as a pair of
/// such fractions, and GF(p) residues reduced into `[0, p)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(BigRational),
    Gauss(BigRational, BigRational),
    Mod { value: u64, modulus: u64 },
}

/// Binary operations accepted by [`Scalar::arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Rat(_) => FieldSpec::Rationals,
            Scalar::Gauss(_, _) => FieldSpec::GaussianRationals,
            Scalar::Mod { modulus, .. } => FieldSpec::PrimeField(*modulus),
        }
    }

    pub fn from_integer(field: FieldSpec, n: i64) -> Scalar {
        match field {
            FieldSpec::Rationals => Scalar::Rat(BigRational::from_integer(BigInt::from(n))),
            FieldSpec::GaussianRationals => Scalar::Gauss(
                BigRational::from_integer(BigInt::from(n)),
                BigRational::zero(),
            ),
            FieldSpec::PrimeField(p) => {
                let r = (n as i128).rem_euclid(p as i128) as u64;
                Scalar::Mod {
                    value: r,
                    modulus: p,
                }
            }
        }
    }

    pub fn from_ratio(field: FieldSpec, numer: i64, denom: i64) -> Scalar {
        assert!(denom != 0, "zero denominator");
        match field {
            FieldSpec::Rationals => {
                Scalar::Rat(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
            }
            FieldSpec::GaussianRationals => Scalar::Gauss(
                BigRational::new(BigInt::from(numer), BigInt::from(denom)),
                BigRational::zero(),
            ),
            FieldSpec::PrimeField(_) => {
                let n = Scalar::from_integer(field, numer);
                let d = Scalar::from_integer(field, denom);
                n.div(&d).expect("denominator nonzero mod p")
            }
        }
    }

    /// Gaussian rational a + bi from rational components.
    pub fn gauss(re: BigRational, im: BigRational) -> Scalar {
        Scalar::Gauss(re, im)
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Gauss(a, b) => a.is_zero() && b.is_zero(),
            Scalar::Mod { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Gauss(a, b) => a.is_one() && b.is_zero(),
            Scalar::Mod { value, .. } => *value == 1,
        }
    }

    fn check_same_field(&self, other: &Scalar) -> Result<()> {
        let (f, g) = (self.field(), other.field());
        if f == g {
            Ok(())
        } else {
            Err(Error::FieldMismatch(f, g))
        }
    }

    /// Checked field arithmetic; the entry point the file format and CLI use.
    pub fn arith(a: &Scalar, b: &Scalar, op: ArithOp) -> Result<Scalar> {
        a.check_same_field(b)?;
        match op {
            ArithOp::Add => Ok(a.add(b)),
            ArithOp::Sub => Ok(a.sub(b)),
            ArithOp::Mul => Ok(a.mul(b)),
            ArithOp::Div => a.div(b),
        }
    }

    /// Panics on field mismatch; internal code keeps fields uniform.
    pub fn add(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Gauss(a, b), Scalar::Gauss(c, d)) => Scalar::Gauss(a + c, b + d),
            (
                Scalar::Mod {
                    value: a,
                    modulus: p,
                },
                Scalar::Mod {
                    value: b,
                    modulus: q,
                },
            ) if p == q => Scalar::Mod {
                value: addmod(*a, *b, *p),
                modulus: *p,
            },
            _ => panic!("field mismatch in scalar addition"),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Gauss(a, b) => Scalar::Gauss(-a, -b),
            Scalar::Mod { value, modulus } => Scalar::Mod {
                value: if *value == 0 { 0 } else { modulus - value },
                modulus: *modulus,
            },
        }
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Gauss(a, b), Scalar::Gauss(c, d)) => {
                Scalar::Gauss(a * c - b * d, a * d + b * c)
            }
            (
                Scalar::Mod {
                    value: a,
                    modulus: p,
                },
                Scalar::Mod {
                    value: b,
                    modulus: q,
                },
            ) if p == q => Scalar::Mod {
                value: mulmod(*a, *b, *p),
                modulus: *p,
            },
            _ => panic!("field mismatch in scalar multiplication"),
        }
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rat(a) => Scalar::Rat(a.recip()),
            Scalar::Gauss(a, b) => {
                let norm = a * a + b * b;
                Scalar::Gauss(a / &norm, -b / &norm)
            }
            Scalar::Mod { value, modulus } => Scalar::Mod {
                value: powmod(*value, *modulus - 2, *modulus),
                modulus: *modulus,
            },
        })
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar> {
        Ok(self.mul(&other.inv()?))
    }

    /// A square root in the field, if one exists. The choice is
    /// deterministic: over Q the nonnegative root; over Q(i) the root with
    /// positive real part (positive imaginary part when the real part is
    /// zero); over GF(p) the smaller residue.
    pub fn sqrt(&self) -> Option<Scalar> {
        match self {
            Scalar::Rat(r) => rational_sqrt(r).map(Scalar::Rat),
            Scalar::Gauss(a, b) => gauss_sqrt(a, b).map(|(u, v)| Scalar::Gauss(u, v)),
            Scalar::Mod { value, modulus } => mod_sqrt(*value, *modulus).map(|r| Scalar::Mod {
                value: r,
                modulus: *modulus,
            }),
        }
    }

    /// Total order used only for deterministic output: numeric on Q,
    /// lexicographic (re, im) on Q(i), residue order on GF(p).
    pub fn canonical_cmp(&self, other: &Scalar) -> Ordering {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => a.cmp(b),
            (Scalar::Gauss(a, b), Scalar::Gauss(c, d)) => a.cmp(c).then_with(|| b.cmp(d)),
            (Scalar::Mod { value: a, .. }, Scalar::Mod { value: b, .. }) => a.cmp(b),
            _ => panic!("field mismatch in scalar comparison"),
        }
    }

    /// Parses the file-format encoding of a scalar. No float literals.
    pub fn parse(field: FieldSpec, text: &str) -> Result<Scalar> {
        let bad = |msg: &str| Error::ParseScalar(format!("scalar '{text}': {msg}"));
        let text = text.trim();
        if text.is_empty() {
            return Err(bad("empty"));
        }
        match field {
            FieldSpec::Rationals => parse_rational(text)
                .map(Scalar::Rat)
                .ok_or_else(|| bad("expected a or a/b")),
            FieldSpec::GaussianRationals => parse_gauss(text)
                .map(|(a, b)| Scalar::Gauss(a, b))
                .ok_or_else(|| bad("expected a/b+c/di")),
            FieldSpec::PrimeField(p) => {
                let (neg, digits) = match text.strip_prefix('-') {
                    Some(rest) => (true, rest),
                    None => (false, text),
                };
                if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(bad("expected a decimal residue"));
                }
                let mut v: u64 = 0;
                for b in digits.bytes() {
                    v = v
                        .checked_mul(10)
                        .and_then(|v| v.checked_add((b - b'0') as u64))
                        .map(|v| v % p.max(1))
                        .ok_or_else(|| bad("residue overflows"))?;
                }
                let v = v % p;
                Ok(Scalar::Mod {
                    value: if neg && v != 0 { p - v } else { v },
                    modulus: p,
                })
            }
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => write!(f, "{}", format_rational(r)),
            Scalar::Gauss(a, b) => {
                if b.is_zero() {
                    return write!(f, "{}", format_rational(a));
                }
                if a.is_zero() {
                    return write!(f, "{}", format_imag(b));
                }
                if b.is_positive() {
                    write!(f, "{}+{}", format_rational(a), format_imag(b))
                } else {
                    write!(f, "{}-{}", format_rational(a), format_imag(&-b))
                }
            }
            Scalar::Mod { value, .. } => write!(f, "{value}"),
        }
    }
}

fn format_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn format_imag(b: &BigRational) -> String {
    if b.is_one() {
        "i".to_string()
    } else if (-b).is_one() {
        "-i".to_string()
    } else {
        format!("{}i", format_rational(b))
    }
}

fn parse_rational(text: &str) -> Option<BigRational> {
    match text.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.parse().ok()?;
            let d: BigInt = d.parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(BigRational::new(n, d))
            }
        }
        None => {
            let n: BigInt = text.parse().ok()?;
            Some(BigRational::from_integer(n))
        }
    }
}

/// Accepts "a", "ci", or "a±ci" where a, c are rationals and a bare "i"
/// (or "-i") means coefficient 1.
fn parse_gauss(text: &str) -> Option<(BigRational, BigRational)> {
    let parse_imag_coeff = |s: &str| -> Option<BigRational> {
        match s {
            "" | "+" => Some(BigRational::one()),
            "-" => Some(-BigRational::one()),
            _ => parse_rational(s),
        }
    };
    if let Some(body) = text.strip_suffix('i') {
        // Find a '+'/'-' separating real and imaginary parts. Skip the
        // leading sign and any sign right after '/'-free digits... a sign
        // is a separator iff it is not at position 0.
        let bytes = body.as_bytes();
        let mut split = None;
        for idx in (1..bytes.len()).rev() {
            if bytes[idx] == b'+' || bytes[idx] == b'-' {
                split = Some(idx);
                break;
            }
        }
        match split {
            Some(idx) => {
                let re = parse_rational(&body[..idx])?;
                let sign = if bytes[idx] == b'+' { 1 } else { -1 };
                let im = parse_imag_coeff(&body[idx + 1..])?;
                let im = if sign < 0 { -im } else { im };
                Some((re, im))
            }
            None => {
                let im = parse_imag_coeff(body)?;
                Some((BigRational::zero(), im))
            }
        }
    } else {
        parse_rational(text).map(|re| (re, BigRational::zero()))
    }
}

fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let num = perfect_sqrt(r.numer())?;
    let den = perfect_sqrt(r.denom())?;
    Some(BigRational::new(num, den))
}

fn perfect_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let s = n.sqrt();
    if &(&s * &s) == n {
        Some(s)
    } else {
        None
    }
}

/// Square root of a + bi in Q(i). Writing the root u + vi, one needs
/// u^2 - v^2 = a and 2uv = b; both u and the norm sqrt must be rational.
fn gauss_sqrt(a: &BigRational, b: &BigRational) -> Option<(BigRational, BigRational)> {
    if b.is_zero() {
        if let Some(u) = rational_sqrt(a) {
            return Some((u, BigRational::zero()));
        }
        // a negative with -a a rational square gives a pure imaginary root.
        let v = rational_sqrt(&-a)?;
        return Some((BigRational::zero(), v));
    }
    let norm = a * a + b * b;
    let n = rational_sqrt(&norm)?;
    let two = BigRational::from_integer(BigInt::from(2));
    let u2 = (a + &n) / &two;
    let u = rational_sqrt(&u2)?;
    if u.is_zero() {
        return None; // only possible when b = 0, handled above
    }
    let v = b / (&two * &u);
    // Choose the root with positive real part (u > 0 since u^2 > 0 here).
    Some((u, v))
}

fn addmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 + b as u128) % p as u128) as u64
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc: u64 = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, p);
        }
        base = mulmod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Tonelli-Shanks, returning the smaller of the two roots. p = 2 and
/// a = 0 are handled directly.
fn mod_sqrt(a: u64, p: u64) -> Option<u64> {
    if p == 2 || a == 0 {
        return Some(a % p);
    }
    if powmod(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    let root = if p % 4 == 3 {
        powmod(a, (p + 1) / 4, p)
    } else {
        // Write p - 1 = q 2^s with q odd and walk the 2-Sylow tower.
        let mut q = p - 1;
        let mut s = 0u32;
        while q % 2 == 0 {
            q /= 2;
            s += 1;
        }
        let mut z = 2;
        while powmod(z, (p - 1) / 2, p) != p - 1 {
            z += 1;
        }
        let mut m = s;
        let mut c = powmod(z, q, p);
        let mut t = powmod(a, q, p);
        let mut r = powmod(a, (q + 1) / 2, p);
        while t != 1 {
            let mut i = 0u32;
            let mut t2 = t;
            while t2 != 1 {
                t2 = mulmod(t2, t2, p);
                i += 1;
            }
            let b = powmod(c, 1 << (m - i - 1), p);
            m = i;
            c = mulmod(b, b, p);
            t = mulmod(t, c, p);
            r = mulmod(r, b, p);
        }
        r
    };
    Some(root.min(p - root))
}

/// Deterministic Miller-Rabin, exact for all u64.
fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::from_ratio(FieldSpec::Rationals, n, d)
    }

    fn gf(p: u64, v: i64) -> Scalar {
        Scalar::from_integer(FieldSpec::prime_field(p).unwrap(), v)
    }

    #[test]
    fn rational_add() {
        // 1/2 + 1/3 = 5/6
        assert_eq!(q(1, 2).add(&q(1, 3)), q(5, 6));
    }

    #[test]
    fn gauss_norm_product() {
        // (1+i)(1-i) = 2
        let one_plus_i = Scalar::parse(FieldSpec::GaussianRationals, "1+i").unwrap();
        let one_minus_i = Scalar::parse(FieldSpec::GaussianRationals, "1-i").unwrap();
        let two = Scalar::from_integer(FieldSpec::GaussianRationals, 2);
        assert_eq!(one_plus_i.mul(&one_minus_i), two);
    }

    #[test]
    fn gf7_division_matches_enumeration() {
        // oracle: the unique k with 5k = 3 mod 7
        let mut expected = None;
        for k in 0..7 {
            if (5 * k) % 7 == 3 {
                expected = Some(k);
            }
        }
        assert_eq!(
            gf(7, 3).div(&gf(7, 5)).unwrap(),
            gf(7, expected.unwrap() as i64)
        );
    }

    #[test]
    fn division_by_zero_and_mismatch() {
        assert_eq!(q(1, 1).div(&q(0, 1)), Err(Error::DivisionByZero));
        assert!(matches!(
            Scalar::arith(&q(1, 1), &gf(5, 1), ArithOp::Add),
            Err(Error::FieldMismatch(_, _))
        ));
    }

    #[test]
    fn sqrt_rationals() {
        assert_eq!(q(4, 9).sqrt(), Some(q(2, 3)));
        assert_eq!(q(2, 1).sqrt(), None);
        assert_eq!(q(0, 1).sqrt(), Some(q(0, 1)));
        assert_eq!(q(-4, 1).sqrt(), None);
    }

    #[test]
    fn sqrt_gauss() {
        let minus_one = Scalar::from_integer(FieldSpec::GaussianRationals, -1);
        let i = Scalar::parse(FieldSpec::GaussianRationals, "i").unwrap();
        assert_eq!(minus_one.sqrt(), Some(i.clone()));
        // 2i = (1+i)^2
        let two_i = Scalar::parse(FieldSpec::GaussianRationals, "2i").unwrap();
        let one_plus_i = Scalar::parse(FieldSpec::GaussianRationals, "1+i").unwrap();
        assert_eq!(two_i.sqrt(), Some(one_plus_i));
        // -3 has no square root in Q(i)
        let minus_three = Scalar::from_integer(FieldSpec::GaussianRationals, -3);
        assert_eq!(minus_three.sqrt(), None);
    }

    #[test]
    fn sqrt_gf7_against_enumeration() {
        // enumerate squares mod 7: {0,1,2,4}
        assert_eq!(gf(7, 2).sqrt(), Some(gf(7, 3)));
        for a in 0u64..7 {
            let squares: Vec<u64> = (0..7).filter(|x| (x * x) % 7 == a).collect();
            let got = gf(7, a as i64).sqrt();
            match got {
                Some(Scalar::Mod { value, .. }) => assert!(squares.contains(&value)),
                Some(_) => unreachable!(),
                None => assert!(squares.is_empty()),
            }
        }
    }

    #[test]
    fn enumerate_fields() {
        let f2: Vec<_> = FieldSpec::prime_field(2)
            .unwrap()
            .enumerate()
            .unwrap()
            .collect();
        assert_eq!(f2.len(), 2);
        let f3: Vec<_> = FieldSpec::prime_field(3)
            .unwrap()
            .enumerate()
            .unwrap()
            .collect();
        assert_eq!(f3, vec![gf(3, 0), gf(3, 1), gf(3, 2)]);
        assert!(matches!(
            FieldSpec::Rationals.enumerate().err(),
            Some(Error::InfiniteField)
        ));
    }

    #[test]
    fn primality_check() {
        assert!(FieldSpec::prime_field(2).is_ok());
        assert!(FieldSpec::prime_field(7919).is_ok());
        assert_eq!(FieldSpec::prime_field(1), Err(Error::NotPrime(1)));
        assert_eq!(FieldSpec::prime_field(91), Err(Error::NotPrime(91)));
    }

    #[test]
    fn parse_display_round_trip() {
        let cases = [
            (FieldSpec::Rationals, vec!["0", "5", "-3", "5/6", "-7/3"]),
            (
                FieldSpec::GaussianRationals,
                vec![
                    "0", "i", "-i", "2i", "-3/4i", "1+i", "1/2-3/4i", "-2-2i", "7",
                ],
            ),
            (FieldSpec::prime_field(11).unwrap(), vec!["0", "10", "3"]),
        ];
        for (field, texts) in cases {
            for t in texts {
                let s = Scalar::parse(field, t).unwrap();
                let rendered = s.to_string();
                assert_eq!(
                    Scalar::parse(field, &rendered).unwrap(),
                    s,
                    "{t} -> {rendered}"
                );
            }
        }
        assert!(Scalar::parse(FieldSpec::Rationals, "1.5").is_err());
        assert!(Scalar::parse(FieldSpec::Rationals, "1/0").is_err());
    }

    #[test]
    fn negative_residue_parses() {
        let f = FieldSpec::prime_field(7).unwrap();
        assert_eq!(Scalar::parse(f, "-1").unwrap(), gf(7, 6));
    }

    fn arb_scalar(field: FieldSpec) -> impl Strategy<Value = Scalar> {
        (any::<i32>(), 1..40i32).prop_map(move |(n, d)| match field {
            FieldSpec::PrimeField(_) => Scalar::from_integer(field, n as i64),
            _ => Scalar::from_ratio(field, n as i64, d as i64),
        })
    }

    fn field_axioms(field: FieldSpec) -> impl Strategy<Value = (Scalar, Scalar, Scalar)> {
        (arb_scalar(field), arb_scalar(field), arb_scalar(field))
    }

    proptest! {
        #[test]
        fn axioms_rationals((a, b, c) in field_axioms(FieldSpec::Rationals)) {
            check_axioms(&a, &b, &c);
        }

        #[test]
        fn axioms_gauss((a, b, c) in field_axioms(FieldSpec::GaussianRationals)) {
            check_axioms(&a, &b, &c);
        }

        #[test]
        fn axioms_gf13((a, b, c) in field_axioms(FieldSpec::PrimeField(13))) {
            check_axioms(&a, &b, &c);
        }

        #[test]
        fn sqrt_squares_back((a, _b, _c) in field_axioms(FieldSpec::Rationals)) {
            let sq = a.mul(&a);
            let r = sq.sqrt().expect("square of a rational has a root");
            prop_assert_eq!(r.mul(&r), sq);
        }

        #[test]
        fn sqrt_is_a_square_root_when_present_gauss((a, _b, _c) in field_axioms(FieldSpec::GaussianRationals)) {
            if let Some(r) = a.sqrt() {
                prop_assert_eq!(r.mul(&r), a.clone());
            }
            let sq = a.mul(&a);
            prop_assert!(sq.sqrt().is_some());
        }

        #[test]
        fn sqrt_is_a_square_root_when_present_gf((a, _b, _c) in field_axioms(FieldSpec::PrimeField(13))) {
            if let Some(r) = a.sqrt() {
                prop_assert_eq!(r.mul(&r), a);
            }
        }
    }

    fn check_axioms(a: &Scalar, b: &Scalar, c: &Scalar) {
        assert_eq!(a.add(b), b.add(a));
        assert_eq!(a.mul(b), b.mul(a));
        assert_eq!(a.add(&b.add(c)), a.add(b).add(c));
        assert_eq!(a.mul(&b.mul(c)), a.mul(b).mul(c));
        assert_eq!(a.mul(&b.add(c)), a.mul(b).add(&a.mul(c)));
        if !a.is_zero() {
            assert!(a.mul(&a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn gf_sqrt_image_cross_check() {
        // sqrt(a) present iff a is a square, for every element of small fields
        for p in [2u64, 3, 5, 7, 11, 13] {
            let field = FieldSpec::prime_field(p).unwrap();
            let squares: std::collections::HashSet<u64> = (0..p).map(|x| mulmod(x, x, p)).collect();
            for s in field.enumerate().unwrap() {
                let Scalar::Mod { value, .. } = s else {
                    unreachable!()
                };
                assert_eq!(
                    s.sqrt().is_some(),
                    squares.contains(&value),
                    "p={p} a={value}"
                );
            }
        }
    }
}

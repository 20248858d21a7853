//! Small finite fields GF(p^k).
//!
//! An element is stored as an integer code: the polynomial `c_0 + c_1 a + ... + c_{k-1} a^{k-1}`
//! (with `a` a root of the field modulus) is encoded as `c_0 + c_1 p + ... + c_{k-1} p^{k-1}`.
//! Every field is built over a primitive modulus, so `a` generates the multiplicative group and
//! multiplication runs through log/antilog tables.
//!
//! The modulus for a given `(p, k)` is the primitive monic polynomial whose lower coefficients
//! have the smallest code, which makes it a pure function of `(p, k)`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Integer code of a field element.
pub type Code = u16;

/// Largest supported field order.
pub const FIELD_CAP: u32 = 1 << 13;

const TABLE_CAP: u32 = 256;

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Returns `(p, k)` with `q = p^k`, or `None` when `q` is not a prime power.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let mut rest = q;
    let mut k = 0;
    while rest % p == 0 {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p, k))
}

pub fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[derive(Serialize, Deserialize)]
struct SpecRepr {
    p: u32,
    k: u32,
    modulus: Vec<u32>,
}

/// A finite field GF(p^k) with its shipped primitive modulus and arithmetic tables.
pub struct FieldSpec {
    p: u32,
    k: u32,
    q: u32,
    modulus: Vec<u32>,
    exp: Vec<Code>,
    log: Vec<u32>,
    neg: Vec<Code>,
    inv: Vec<Code>,
    add: Option<Vec<Code>>,
    mul: Option<Vec<Code>>,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.p, self.k)
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.k == other.k
    }
}

impl Eq for FieldSpec {}

impl Serialize for FieldSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SpecRepr {
            p: self.p,
            k: self.k,
            modulus: self.modulus.clone(),
        }
        .serialize(s)
    }
}

static REGISTRY: OnceLock<Mutex<HashMap<(u32, u32), Arc<FieldSpec>>>> = OnceLock::new();

/// Returns the shared field GF(p^k). Repeated calls hand back the same `Arc`.
pub fn make_field(p: u32, k: u32) -> Result<Arc<FieldSpec>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let unsupported = |reason: &str| Error::NoShippedModulus {
        p,
        k,
        reason: reason.to_string(),
    };
    if k == 0 {
        return Err(unsupported("degree must be positive"));
    }
    let q = (p as u64).checked_pow(k).unwrap_or(u64::MAX);
    if q > FIELD_CAP as u64 {
        return Err(unsupported("cap exceeded (q > 2^13)"));
    }
    let registry = REGISTRY.get_or_init(|| Mutex::new(HashMap::new()));
    let mut map = registry.lock().expect("field registry poisoned");
    if let Some(f) = map.get(&(p, k)) {
        return Ok(f.clone());
    }
    let field = Arc::new(FieldSpec::build(p, k, q as u32).ok_or_else(|| unsupported("no primitive modulus"))?);
    map.insert((p, k), field.clone());
    Ok(field)
}

/// Field of order `q`.
pub fn field_of_order(q: u32) -> Result<Arc<FieldSpec>> {
    let (p, k) = prime_power(q).ok_or(Error::NotPrime(q))?;
    make_field(p, k)
}

/// Walks the powers of `x` modulo `x^k + low(x)`; returns the antilog table when `x` has
/// order exactly `p^k - 1`.
fn primitive_powers(p: u32, k: u32, q: u32, low: &[u32]) -> Option<Vec<Code>> {
    let k = k as usize;
    let mut cur = vec![0u32; k];
    cur[0] = 1;
    let mut exp = Vec::with_capacity(q as usize - 1);
    for i in 0..q - 1 {
        let code = encode_digits(p, &cur);
        if i > 0 && code == 1 {
            return None;
        }
        exp.push(code as Code);
        let top = cur[k - 1];
        for j in (1..k).rev() {
            cur[j] = cur[j - 1];
        }
        cur[0] = 0;
        for j in 0..k {
            cur[j] = (cur[j] + p - (top * low[j]) % p) % p;
        }
    }
    (encode_digits(p, &cur) == 1).then_some(exp)
}

fn encode_digits(p: u32, digits: &[u32]) -> u32 {
    digits.iter().rev().fold(0, |acc, &d| acc * p + d)
}

impl FieldSpec {
    fn build(p: u32, k: u32, q: u32) -> Option<FieldSpec> {
        let mut found = None;
        for c in 0..q {
            let mut low = vec![0u32; k as usize];
            let mut rest = c;
            for d in low.iter_mut() {
                *d = rest % p;
                rest /= p;
            }
            if low[0] == 0 {
                continue;
            }
            if let Some(exp) = primitive_powers(p, k, q, &low) {
                let mut modulus = low;
                modulus.push(1);
                found = Some((modulus, exp));
                break;
            }
        }
        let (modulus, exp) = found?;
        let mut log = vec![0u32; q as usize];
        for (i, &c) in exp.iter().enumerate() {
            log[c as usize] = i as u32;
        }
        let mut field = FieldSpec {
            p,
            k,
            q,
            modulus,
            exp,
            log,
            neg: Vec::new(),
            inv: Vec::new(),
            add: None,
            mul: None,
        };
        field.neg = (0..q).map(|a| field.neg_slow(a as Code)).collect();
        field.inv = (0..q)
            .map(|a| {
                if a == 0 {
                    0
                } else {
                    let l = field.log[a as usize];
                    field.exp[((q - 1 - l) % (q - 1)) as usize]
                }
            })
            .collect();
        if q <= TABLE_CAP {
            let mut add = vec![0; (q * q) as usize];
            let mut mul = vec![0; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    add[(a * q + b) as usize] = field.add_slow(a as Code, b as Code);
                    mul[(a * q + b) as usize] = field.mul_slow(a as Code, b as Code);
                }
            }
            field.add = Some(add);
            field.mul = Some(mul);
        }
        Some(field)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Coefficients `c_0..c_k` of the monic modulus.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// The primitive element `a` (root of the modulus).
    pub fn generator(&self) -> Code {
        self.exp[1 % self.exp.len()]
    }

    pub fn elements(&self) -> impl Iterator<Item = Code> {
        0..self.q as Code
    }

    pub fn digits(&self, a: Code) -> Vec<u32> {
        let mut rest = a as u32;
        (0..self.k)
            .map(|_| {
                let d = rest % self.p;
                rest /= self.p;
                d
            })
            .collect()
    }

    pub fn from_digits(&self, digits: &[u32]) -> Result<Code> {
        if digits.len() != self.k as usize || digits.iter().any(|&d| d >= self.p) {
            return Err(Error::format("coefficients", format!("expected {} digits below {}", self.k, self.p)));
        }
        Ok(encode_digits(self.p, digits) as Code)
    }

    fn add_slow(&self, a: Code, b: Code) -> Code {
        if self.p == 2 {
            return a ^ b;
        }
        let (mut a, mut b) = (a as u32, b as u32);
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.k {
            out += ((a % self.p + b % self.p) % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out as Code
    }

    fn neg_slow(&self, a: Code) -> Code {
        let mut a = a as u32;
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.k {
            out += ((self.p - a % self.p) % self.p) * place;
            a /= self.p;
            place *= self.p;
        }
        out as Code
    }

    fn mul_slow(&self, a: Code, b: Code) -> Code {
        if a == 0 || b == 0 {
            return 0;
        }
        let s = self.log[a as usize] + self.log[b as usize];
        self.exp[(s % (self.q - 1)) as usize]
    }

    #[inline]
    pub fn add(&self, a: Code, b: Code) -> Code {
        match &self.add {
            Some(t) => t[a as usize * self.q as usize + b as usize],
            None => self.add_slow(a, b),
        }
    }

    #[inline]
    pub fn mul(&self, a: Code, b: Code) -> Code {
        match &self.mul {
            Some(t) => t[a as usize * self.q as usize + b as usize],
            None => self.mul_slow(a, b),
        }
    }

    #[inline]
    pub fn neg(&self, a: Code) -> Code {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: Code, b: Code) -> Code {
        self.add(a, self.neg(b))
    }

    /// Multiplicative inverse; `None` for zero.
    #[inline]
    pub fn inv(&self, a: Code) -> Option<Code> {
        (a != 0).then(|| self.inv[a as usize])
    }

    pub fn pow(&self, a: Code, e: u64) -> Code {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let l = self.log[a as usize] as u64 * (e % (self.q as u64 - 1)) % (self.q as u64 - 1);
        self.exp[l as usize]
    }

    /// Discrete log with respect to [`FieldSpec::generator`]; `None` for zero.
    pub fn log(&self, a: Code) -> Option<u32> {
        (a != 0).then(|| self.log[a as usize])
    }

    /// `generator^i`.
    pub fn exp(&self, i: u64) -> Code {
        self.exp[(i % (self.q as u64 - 1)) as usize]
    }

    /// `a^(p^e)`, with `e` taken modulo `k`.
    pub fn frobenius_code(&self, a: Code, e: u32) -> Code {
        self.pow(a, (self.p as u64).pow(e % self.k))
    }

    /// Embeds an integer into the prime field.
    pub fn from_int(&self, n: i64) -> Code {
        n.rem_euclid(self.p as i64) as Code
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("field spec serializes")
    }
}

/// Checked accessor for a field element tied to its field.
#[derive(Clone)]
pub struct FieldElement {
    field: Arc<FieldSpec>,
    code: Code,
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@GF({})", self.code, self.field.q)
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        *self.field == *other.field && self.code == other.code
    }
}

impl Eq for FieldElement {}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Mul,
    Inv,
    Neg,
}

impl FieldElement {
    pub fn new(field: &Arc<FieldSpec>, code: u32) -> Result<Self> {
        if code >= field.q {
            return Err(Error::format("element", format!("code {code} not below {}", field.q)));
        }
        Ok(FieldElement {
            field: field.clone(),
            code: code as Code,
        })
    }

    pub fn from_coefficients(field: &Arc<FieldSpec>, coeffs: &[u32]) -> Result<Self> {
        Ok(FieldElement {
            field: field.clone(),
            code: field.from_digits(coeffs)?,
        })
    }

    pub fn coefficients(&self) -> Vec<u32> {
        self.field.digits(self.code)
    }

    pub fn code(&self) -> Code {
        self.code
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    fn same_field(&self, other: &Self) -> Result<()> {
        if *self.field != *other.field {
            return Err(Error::FieldMismatch {
                left: self.field.q,
                right: other.field.q,
            });
        }
        Ok(())
    }

    fn with(&self, code: Code) -> Self {
        FieldElement {
            field: self.field.clone(),
            code,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self.with(self.field.add(self.code, other.code)))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self.with(self.field.mul(self.code, other.code)))
    }

    pub fn neg(&self) -> Self {
        self.with(self.field.neg(self.code))
    }

    pub fn inv(&self) -> Result<Self> {
        self.field.inv(self.code).map(|c| self.with(c)).ok_or(Error::DivisionByZero)
    }

    pub fn frobenius(&self, e: u32) -> Result<Self> {
        if e >= self.field.k {
            return Err(Error::BadPower {
                power: e,
                degree: self.field.k,
            });
        }
        Ok(self.with(self.field.frobenius_code(self.code, e)))
    }
}

/// Applies `op` to `a` (and `b` for the binary operations).
pub fn field_arith(a: &FieldElement, b: &FieldElement, op: ArithOp) -> Result<FieldElement> {
    a.same_field(b)?;
    match op {
        ArithOp::Add => a.add(b),
        ArithOp::Mul => a.mul(b),
        ArithOp::Inv => a.inv(),
        ArithOp::Neg => Ok(a.neg()),
    }
}

/// The automorphism `x -> x^(p^power)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldAutomorphism {
    field: Arc<FieldSpec>,
    power: u32,
}

impl FieldAutomorphism {
    pub fn new(field: &Arc<FieldSpec>, power: u32) -> Result<Self> {
        if power >= field.k {
            return Err(Error::BadPower {
                power,
                degree: field.k,
            });
        }
        Ok(FieldAutomorphism {
            field: field.clone(),
            power,
        })
    }

    pub fn identity(field: &Arc<FieldSpec>) -> Self {
        FieldAutomorphism {
            field: field.clone(),
            power: 0,
        }
    }

    pub fn power(&self) -> u32 {
        self.power
    }

    pub fn apply(&self, a: Code) -> Code {
        self.field.frobenius_code(a, self.power)
    }

    pub fn compose(&self, other: &Self) -> Self {
        FieldAutomorphism {
            field: self.field.clone(),
            power: (self.power + other.power) % self.field.k,
        }
    }

    pub fn inverse(&self) -> Self {
        FieldAutomorphism {
            field: self.field.clone(),
            power: (self.field.k - self.power) % self.field.k,
        }
    }
}

/// The unique subfield of order `p^degree`.
#[derive(Clone, Debug)]
pub struct Subfield {
    field: Arc<FieldSpec>,
    degree: u32,
}

impl Subfield {
    pub fn new(field: &Arc<FieldSpec>, degree: u32) -> Result<Self> {
        if degree == 0 || field.k % degree != 0 {
            return Err(Error::Precondition(format!("{degree} does not divide {}", field.k)));
        }
        Ok(Subfield {
            field: field.clone(),
            degree,
        })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn order(&self) -> u32 {
        self.field.p.pow(self.degree)
    }

    pub fn contains(&self, a: Code) -> bool {
        self.field.frobenius_code(a, self.degree) == a
    }

    pub fn elements(&self) -> Vec<Code> {
        self.field.elements().filter(|&a| self.contains(a)).collect()
    }
}

/// Fixed field of `x -> x^(p^e)`, which is GF(p^gcd(e, k)).
pub fn fixed_subfield(sigma: &FieldAutomorphism) -> Subfield {
    let k = sigma.field.k;
    Subfield {
        field: sigma.field.clone(),
        degree: gcd(sigma.power, k),
    }
}

/// One subfield per divisor of `k`, ordered by degree.
pub fn subfield_lattice(field: &Arc<FieldSpec>) -> Vec<Subfield> {
    (1..=field.k)
        .filter(|d| field.k % d == 0)
        .map(|degree| Subfield {
            field: field.clone(),
            degree,
        })
        .collect()
}

/// `T = GF(q^f)` viewed as an `f`-dimensional space over `F = GF(q)`.
///
/// The base field is embedded by sending its generator to the least root (by code) of its
/// modulus inside `T`; `T` uses the basis `1, b, ..., b^(f-1)` with `b` the generator of `T`.
pub struct FieldExtension {
    base: Arc<FieldSpec>,
    top: Arc<FieldSpec>,
    degree: u32,
    embed: Vec<Code>,
    restrict: HashMap<Code, Code>,
    basis: Vec<Code>,
    coords: Vec<Code>,
}

impl fmt::Debug for FieldExtension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})/GF({})", self.top.q, self.base.q)
    }
}

impl FieldExtension {
    pub fn new(base: &Arc<FieldSpec>, degree: u32) -> Result<Self> {
        if degree == 0 {
            return Err(Error::Precondition("extension degree must be positive".into()));
        }
        let top = make_field(base.p, base.k * degree)?;
        let modulus = base.modulus();
        let eval = |x: Code| {
            modulus
                .iter()
                .rev()
                .fold(0 as Code, |acc, &c| top.add(top.mul(acc, x), c as Code))
        };
        let root = top
            .elements()
            .find(|&x| x != 0 && eval(x) == 0)
            .ok_or_else(|| Error::RedFlag("base modulus has no root in extension".into()))?;
        let mut embed = vec![0 as Code; base.q as usize];
        for i in 0..base.q - 1 {
            embed[base.exp(i as u64) as usize] = top.pow(root, i as u64);
        }
        let restrict = embed.iter().enumerate().map(|(b, &t)| (t, b as Code)).collect();
        let beta = top.generator();
        let basis: Vec<Code> = (0..degree).map(|j| top.pow(beta, j as u64)).collect();
        let f = degree as usize;
        let mut coords = vec![0 as Code; top.q as usize * f];
        let mut digits = vec![0u32; f];
        for _ in 0..top.q {
            let value = digits.iter().zip(&basis).fold(0 as Code, |acc, (&c, &b)| {
                top.add(acc, top.mul(embed[c as usize], b))
            });
            for (j, &c) in digits.iter().enumerate() {
                coords[value as usize * f + j] = c as Code;
            }
            for d in digits.iter_mut() {
                *d += 1;
                if *d < base.q {
                    break;
                }
                *d = 0;
            }
        }
        Ok(FieldExtension {
            base: base.clone(),
            top,
            degree,
            embed,
            restrict,
            basis,
            coords,
        })
    }

    pub fn base(&self) -> &Arc<FieldSpec> {
        &self.base
    }

    pub fn top(&self) -> &Arc<FieldSpec> {
        &self.top
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn embed(&self, a: Code) -> Code {
        self.embed[a as usize]
    }

    /// Inverse of [`FieldExtension::embed`] on its image.
    pub fn restrict(&self, t: Code) -> Option<Code> {
        self.restrict.get(&t).copied()
    }

    pub fn basis(&self) -> &[Code] {
        &self.basis
    }

    /// Coordinates of `t` over the base field in the power basis.
    pub fn coordinates(&self, t: Code) -> &[Code] {
        let f = self.degree as usize;
        &self.coords[t as usize * f..(t as usize + 1) * f]
    }

    pub fn from_coordinates(&self, c: &[Code]) -> Code {
        c.iter()
            .zip(&self.basis)
            .fold(0, |acc, (&c, &b)| self.top.add(acc, self.top.mul(self.embed(c), b)))
    }

    /// `t -> t^(q^e)`, the base-field-linear automorphisms of the extension.
    pub fn relative_frobenius(&self, t: Code, e: u32) -> Code {
        self.top.frobenius_code(t, (self.base.k * e) % self.top.k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_examples() {
        let f = make_field(3, 1).unwrap();
        assert_eq!(f.q(), 3);
        assert_eq!(f.elements().count(), 3);
        assert_eq!(f.add(2, 2), 1);
        let f5 = make_field(5, 1).unwrap();
        assert_eq!(f5.inv(2), Some(3));
    }

    #[test]
    fn gf4_modulus_and_square() {
        let f = make_field(2, 2).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 1]);
        let a = f.generator();
        assert_eq!(a, 2);
        // a^2 = a + 1
        assert_eq!(f.mul(a, a), 3);
    }

    #[test]
    fn cap_and_primality_errors() {
        assert!(matches!(make_field(3, 9), Err(Error::NoShippedModulus { .. })));
        assert!(matches!(make_field(4, 1), Err(Error::NotPrime(4))));
        assert!(matches!(make_field(2, 0), Err(Error::NoShippedModulus { .. })));
        assert!(make_field(2, 13).is_ok());
    }

    #[test]
    fn checked_arith_errors() {
        let f3 = make_field(3, 1).unwrap();
        let f5 = make_field(5, 1).unwrap();
        let a = FieldElement::new(&f3, 1).unwrap();
        let b = FieldElement::new(&f5, 1).unwrap();
        assert!(matches!(field_arith(&a, &b, ArithOp::Add), Err(Error::FieldMismatch { .. })));
        let z = FieldElement::new(&f5, 0).unwrap();
        assert_eq!(z.inv(), Err(Error::DivisionByZero));
        assert!(FieldElement::new(&f5, 5).is_err());
    }

    #[test]
    fn frobenius_examples() {
        let f9 = make_field(3, 2).unwrap();
        let a = f9.generator();
        assert_eq!(f9.frobenius_code(a, 1), f9.pow(a, 3));
        let f4 = make_field(2, 2).unwrap();
        for x in f4.elements() {
            assert_eq!(f4.frobenius_code(f4.frobenius_code(x, 1), 1), x);
        }
        let f8 = make_field(2, 3).unwrap();
        let fixed: Vec<Code> = f8.elements().filter(|&x| f8.frobenius_code(x, 1) == x).collect();
        assert_eq!(fixed, vec![0, 1]);
    }

    #[test]
    fn fixed_subfields() {
        let f16 = make_field(2, 4).unwrap();
        let s = fixed_subfield(&FieldAutomorphism::new(&f16, 2).unwrap());
        assert_eq!(s.order(), 4);
        assert_eq!(s.elements().len(), 4);
        let f9 = make_field(3, 2).unwrap();
        let s = fixed_subfield(&FieldAutomorphism::identity(&f9));
        assert_eq!(s.elements().len(), 9);
        let f8 = make_field(2, 3).unwrap();
        let s = fixed_subfield(&FieldAutomorphism::new(&f8, 1).unwrap());
        assert_eq!(s.elements(), vec![0, 1]);
    }

    #[test]
    fn lattices() {
        let sizes = |p, k| -> Vec<u32> {
            subfield_lattice(&make_field(p, k).unwrap()).iter().map(|s| s.order()).collect()
        };
        assert_eq!(sizes(2, 4), vec![2, 4, 16]);
        assert_eq!(sizes(3, 3), vec![3, 27]);
        assert_eq!(sizes(2, 6), vec![2, 4, 8, 64]);
    }

    #[test]
    fn automorphism_composition() {
        let f = make_field(2, 6).unwrap();
        let s2 = FieldAutomorphism::new(&f, 2).unwrap();
        let s5 = FieldAutomorphism::new(&f, 5).unwrap();
        assert_eq!(s2.compose(&s5).power(), 1);
        assert_eq!(s2.compose(&s2.inverse()), FieldAutomorphism::identity(&f));
        for x in f.elements() {
            assert_eq!(s2.apply(s5.apply(x)), s2.compose(&s5).apply(x));
        }
    }

    #[test]
    fn extension_structure() {
        let base = make_field(2, 2).unwrap();
        let ext = FieldExtension::new(&base, 3).unwrap();
        let top = ext.top().clone();
        assert_eq!(top.q(), 64);
        for a in base.elements() {
            for b in base.elements() {
                assert_eq!(ext.embed(base.add(a, b)), top.add(ext.embed(a), ext.embed(b)));
                assert_eq!(ext.embed(base.mul(a, b)), top.mul(ext.embed(a), ext.embed(b)));
            }
        }
        for t in top.elements() {
            assert_eq!(ext.from_coordinates(ext.coordinates(t)), t);
            // x -> x^q fixes exactly the embedded base field
            let fixed = ext.relative_frobenius(t, 1) == t;
            assert_eq!(fixed, ext.restrict(t).is_some());
        }
    }
}

//! The constant field k: prime fields F_p, explicit extensions F_{p^m}, and
//! the rationals, with exact arithmetic throughout.
//!
//! The ambient theory works over an algebraically closed field; computably we
//! fix a base field and extend on demand.  [`adjoin_root_of_unity`] builds the
//! smallest extension hosting a primitive e-th root of unity, returning the
//! embedding of the old field so elements can be transported.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Largest supported prime: products of two residues must fit in u128
/// comfortably and descriptors stay desk-scale.
const MAX_PRIME: u64 = (1 << 31) - 1;

/// Numerator/denominator bound used by [`sample_element`] over the rationals.
const DEFAULT_RATIONAL_BOUND: i64 = 100;

/// Which kind of constant field a descriptor denotes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum FieldKind {
    PrimeFinite,
    ExtensionFinite,
    Rationals,
}

#[derive(Debug)]
struct FieldInner {
    kind: FieldKind,
    /// Characteristic; 0 for the rationals.
    p: u64,
    /// Extension degree over F_p; 1 for prime fields and the rationals.
    m: u32,
    /// Monic defining polynomial over F_p, ascending coefficients,
    /// length m + 1.  Empty for prime fields and the rationals.
    modulus: Vec<u64>,
}

/// A shared, immutable field descriptor.
#[derive(Clone)]
pub struct Field(Arc<FieldInner>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.kind == other.0.kind
                && self.0.p == other.0.p
                && self.0.m == other.0.m
                && self.0.modulus == other.0.modulus)
    }
}
impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Field({})", self)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0.kind {
            FieldKind::Rationals => write!(f, "Q"),
            FieldKind::PrimeFinite => write!(f, "F{}", self.0.p),
            FieldKind::ExtensionFinite => write!(f, "F{}^{}", self.0.p, self.0.m),
        }
    }
}

impl Field {
    /// The rational numbers.
    pub fn rationals() -> Field {
        Field(Arc::new(FieldInner {
            kind: FieldKind::Rationals,
            p: 0,
            m: 1,
            modulus: Vec::new(),
        }))
    }

    /// The prime field F_p.
    pub fn prime(p: u64) -> Result<Field> {
        if p > MAX_PRIME || !is_prime(p) {
            return Err(Error::NotPrime { p });
        }
        Ok(Field(Arc::new(FieldInner {
            kind: FieldKind::PrimeFinite,
            p,
            m: 1,
            modulus: Vec::new(),
        })))
    }

    /// F_{p^m} with a deterministically chosen defining polynomial: the first
    /// monic irreducible of degree m in ascending coefficient order.
    pub fn extension(p: u64, m: u32) -> Result<Field> {
        if p > MAX_PRIME || !is_prime(p) {
            return Err(Error::NotPrime { p });
        }
        if m == 0 {
            return Err(Error::InvalidModulus("degree must be positive".into()));
        }
        if m == 1 {
            return Field::prime(p);
        }
        let modulus = fp::find_irreducible(p, m);
        Ok(Field(Arc::new(FieldInner {
            kind: FieldKind::ExtensionFinite,
            p,
            m,
            modulus,
        })))
    }

    /// F_{p^m} with an explicit monic defining polynomial (ascending
    /// coefficients, length m + 1).  Irreducibility is verified.
    pub fn extension_with_modulus(p: u64, modulus: Vec<u64>) -> Result<Field> {
        if p > MAX_PRIME || !is_prime(p) {
            return Err(Error::NotPrime { p });
        }
        if modulus.len() < 3 {
            return Err(Error::InvalidModulus(
                "modulus must have degree at least 2".into(),
            ));
        }
        let modulus: Vec<u64> = modulus.iter().map(|c| c % p).collect();
        let m = (modulus.len() - 1) as u32;
        if *modulus.last().unwrap() != 1 {
            return Err(Error::InvalidModulus("modulus must be monic".into()));
        }
        if !fp::is_irreducible(&modulus, p) {
            return Err(Error::InvalidModulus(format!(
                "polynomial is reducible over F{p}"
            )));
        }
        Ok(Field(Arc::new(FieldInner {
            kind: FieldKind::ExtensionFinite,
            p,
            m,
            modulus,
        })))
    }

    pub fn kind(&self) -> FieldKind {
        self.0.kind
    }

    /// Characteristic; 0 for the rationals.
    pub fn characteristic(&self) -> u64 {
        self.0.p
    }

    /// Extension degree over the prime field.
    pub fn degree(&self) -> u32 {
        self.0.m
    }

    /// Field order p^m for finite fields.
    pub fn order(&self) -> Option<u128> {
        match self.0.kind {
            FieldKind::Rationals => None,
            _ => Some((self.0.p as u128).pow(self.0.m)),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.0.kind != FieldKind::Rationals
    }

    /// Defining modulus for extension fields (ascending coefficients).
    pub fn modulus(&self) -> &[u64] {
        &self.0.modulus
    }

    pub fn zero(&self) -> Constant {
        match self.0.kind {
            FieldKind::PrimeFinite => Constant::raw(self, Repr::Prime(0)),
            FieldKind::ExtensionFinite => {
                Constant::raw(self, Repr::Ext(vec![0; self.0.m as usize]))
            }
            FieldKind::Rationals => Constant::raw(self, Repr::Rat(BigRational::zero())),
        }
    }

    pub fn one(&self) -> Constant {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Constant {
        match self.0.kind {
            FieldKind::PrimeFinite => {
                Constant::raw(self, Repr::Prime(n.rem_euclid(self.0.p as i64) as u64))
            }
            FieldKind::ExtensionFinite => {
                let mut coords = vec![0; self.0.m as usize];
                coords[0] = n.rem_euclid(self.0.p as i64) as u64;
                Constant::raw(self, Repr::Ext(coords))
            }
            FieldKind::Rationals => {
                Constant::raw(self, Repr::Rat(BigRational::from(BigInt::from(n))))
            }
        }
    }

    /// Exact rational a/b; over finite fields this reduces a·b^{-1} mod p and
    /// fails when p divides b.
    pub fn from_ratio(&self, numer: &BigInt, denom: &BigInt) -> Result<Constant> {
        if denom.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match self.0.kind {
            FieldKind::Rationals => Ok(Constant::raw(
                self,
                Repr::Rat(BigRational::new(numer.clone(), denom.clone())),
            )),
            _ => {
                let p = BigInt::from(self.0.p);
                let dm = denom.mod_floor_u64(self.0.p);
                if dm == 0 {
                    return Err(Error::DivisionByZero);
                }
                let nm = numer.mod_floor_u64(self.0.p);
                let inv = fp::inv(dm, self.0.p);
                let _ = p;
                Ok(self.from_i64(0).replace_prime(fp::mul(nm, inv, self.0.p)))
            }
        }
    }

    /// Element of an extension field from its coordinate vector over F_p.
    pub fn ext_element(&self, coords: &[u64]) -> Result<Constant> {
        match self.0.kind {
            FieldKind::ExtensionFinite => {
                if coords.len() > self.0.m as usize {
                    return Err(Error::InvalidModulus(format!(
                        "coordinate vector of length {} exceeds degree {}",
                        coords.len(),
                        self.0.m
                    )));
                }
                let mut v: Vec<u64> = coords.iter().map(|c| c % self.0.p).collect();
                v.resize(self.0.m as usize, 0);
                Ok(Constant::raw(self, Repr::Ext(v)))
            }
            FieldKind::PrimeFinite if coords.len() <= 1 => {
                Ok(self.from_i64(coords.first().copied().unwrap_or(0) as i64))
            }
            _ => Err(Error::InvalidModulus(
                "coordinate vectors require an extension field".into(),
            )),
        }
    }

    /// The generator (the class of s) of an extension field.
    pub fn generator(&self) -> Result<Constant> {
        match self.0.kind {
            FieldKind::ExtensionFinite => {
                let mut coords = vec![0; self.0.m as usize];
                coords[1] = 1;
                Ok(Constant::raw(self, Repr::Ext(coords)))
            }
            _ => Err(Error::InvalidModulus(
                "only extension fields have a generator".into(),
            )),
        }
    }

    /// All elements of a finite field in a deterministic order (coordinate
    /// vectors read as base-p counters, least significant first).
    pub fn elements(&self) -> ElementIter {
        let total = self.order().unwrap_or(0);
        ElementIter {
            field: self.clone(),
            next: 0,
            total,
        }
    }

    /// Element number `idx` in the `elements()` order.
    pub fn element_from_index(&self, idx: u128) -> Constant {
        match self.0.kind {
            FieldKind::PrimeFinite => Constant::raw(self, Repr::Prime((idx % self.0.p as u128) as u64)),
            FieldKind::ExtensionFinite => {
                let mut coords = Vec::with_capacity(self.0.m as usize);
                let mut rest = idx;
                for _ in 0..self.0.m {
                    coords.push((rest % self.0.p as u128) as u64);
                    rest /= self.0.p as u128;
                }
                Constant::raw(self, Repr::Ext(coords))
            }
            FieldKind::Rationals => panic!("element_from_index on an infinite field"),
        }
    }

    /// Uniform element for finite fields, bounded-height rational otherwise.
    pub fn sample_with<R: Rng>(&self, rng: &mut R, rational_bound: i64) -> Constant {
        match self.0.kind {
            FieldKind::Rationals => {
                let b = rational_bound.max(1);
                let numer = rng.gen_range(-b..=b);
                let denom = rng.gen_range(1..=b);
                Constant::raw(
                    self,
                    Repr::Rat(BigRational::new(BigInt::from(numer), BigInt::from(denom))),
                )
            }
            _ => {
                let q = self.order().unwrap();
                let idx = (rng.gen::<u128>()) % q;
                self.element_from_index(idx)
            }
        }
    }
}

/// Deterministic iterator over the elements of a finite field.
pub struct ElementIter {
    field: Field,
    next: u128,
    total: u128,
}

impl Iterator for ElementIter {
    type Item = Constant;
    fn next(&mut self) -> Option<Constant> {
        if self.next >= self.total {
            return None;
        }
        let c = self.field.element_from_index(self.next);
        self.next += 1;
        Some(c)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Repr {
    Prime(u64),
    Ext(Vec<u64>),
    Rat(BigRational),
}

/// An element of the constant field, in canonical reduced form.
#[derive(Clone, PartialEq, Eq)]
pub struct Constant {
    field: Field,
    repr: Repr,
}

impl fmt::Debug for Constant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Constant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Prime(r) => write!(f, "{r}"),
            Repr::Ext(coords) => {
                write!(f, "[")?;
                for (i, c) in coords.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, "]")
            }
            Repr::Rat(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
        }
    }
}

impl PartialOrd for Constant {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Total order used only for canonical sorting; not an arithmetic order.
impl Ord for Constant {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.repr, &other.repr) {
            (Repr::Prime(a), Repr::Prime(b)) => a.cmp(b),
            (Repr::Ext(a), Repr::Ext(b)) => {
                a.iter().rev().cmp(b.iter().rev())
            }
            (Repr::Rat(a), Repr::Rat(b)) => a.cmp(b),
            (Repr::Prime(_), _) => Ordering::Less,
            (_, Repr::Prime(_)) => Ordering::Greater,
            (Repr::Ext(_), _) => Ordering::Less,
            (_, Repr::Ext(_)) => Ordering::Greater,
        }
    }
}

impl Constant {
    fn raw(field: &Field, repr: Repr) -> Constant {
        Constant {
            field: field.clone(),
            repr,
        }
    }

    fn replace_prime(mut self, r: u64) -> Constant {
        self.repr = Repr::Prime(r);
        self
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Prime(r) => *r == 0,
            Repr::Ext(c) => c.iter().all(|x| *x == 0),
            Repr::Rat(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.repr {
            Repr::Prime(r) => *r == 1,
            Repr::Ext(c) => c[0] == 1 && c[1..].iter().all(|x| *x == 0),
            Repr::Rat(r) => r.is_one(),
        }
    }

    /// Exact rational value, for rational-field elements.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.repr {
            Repr::Rat(r) => Some(r),
            _ => None,
        }
    }

    /// Residue in 0..p for prime-field elements.
    pub fn as_residue(&self) -> Option<u64> {
        match &self.repr {
            Repr::Prime(r) => Some(*r),
            _ => None,
        }
    }

    /// Coordinate vector over F_p for extension-field elements.
    pub fn coords(&self) -> Option<&[u64]> {
        match &self.repr {
            Repr::Ext(c) => Some(c),
            _ => None,
        }
    }

    fn check_same_field(&self, other: &Constant) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch {
                left: self.field.to_string(),
                right: other.field.to_string(),
            })
        }
    }

    pub fn add(&self, other: &Constant) -> Constant {
        debug_assert!(self.field == other.field);
        let p = self.field.0.p;
        match (&self.repr, &other.repr) {
            (Repr::Prime(a), Repr::Prime(b)) => Constant::raw(&self.field, Repr::Prime(fp::add(*a, *b, p))),
            (Repr::Ext(a), Repr::Ext(b)) => {
                let c = a.iter().zip(b).map(|(x, y)| fp::add(*x, *y, p)).collect();
                Constant::raw(&self.field, Repr::Ext(c))
            }
            (Repr::Rat(a), Repr::Rat(b)) => Constant::raw(&self.field, Repr::Rat(a + b)),
            _ => unreachable!("mixed representations in one field"),
        }
    }

    pub fn sub(&self, other: &Constant) -> Constant {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Constant {
        let p = self.field.0.p;
        match &self.repr {
            Repr::Prime(a) => Constant::raw(&self.field, Repr::Prime(fp::sub(0, *a, p))),
            Repr::Ext(a) => Constant::raw(
                &self.field,
                Repr::Ext(a.iter().map(|x| fp::sub(0, *x, p)).collect()),
            ),
            Repr::Rat(a) => Constant::raw(&self.field, Repr::Rat(-a)),
        }
    }

    pub fn mul(&self, other: &Constant) -> Constant {
        debug_assert!(self.field == other.field);
        let p = self.field.0.p;
        match (&self.repr, &other.repr) {
            (Repr::Prime(a), Repr::Prime(b)) => Constant::raw(&self.field, Repr::Prime(fp::mul(*a, *b, p))),
            (Repr::Ext(a), Repr::Ext(b)) => {
                let prod = fp::pmulmod(a, b, &self.field.0.modulus, p);
                Constant::raw(&self.field, Repr::Ext(prod))
            }
            (Repr::Rat(a), Repr::Rat(b)) => Constant::raw(&self.field, Repr::Rat(a * b)),
            _ => unreachable!("mixed representations in one field"),
        }
    }

    pub fn inv(&self) -> Result<Constant> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let p = self.field.0.p;
        Ok(match &self.repr {
            Repr::Prime(a) => Constant::raw(&self.field, Repr::Prime(fp::inv(*a, p))),
            Repr::Ext(a) => {
                let inv = fp::pinvmod(a, &self.field.0.modulus, p)
                    .expect("nonzero element is invertible");
                Constant::raw(&self.field, Repr::Ext(inv))
            }
            Repr::Rat(a) => Constant::raw(&self.field, Repr::Rat(a.recip())),
        })
    }

    pub fn div(&self, other: &Constant) -> Result<Constant> {
        Ok(self.mul(&other.inv()?))
    }

    /// Integer power, with negative exponents through inversion.
    pub fn pow(&self, exp: i64) -> Result<Constant> {
        if exp < 0 {
            return self.inv()?.pow(-exp);
        }
        let mut acc = self.field.one();
        let mut base = self.clone();
        let mut e = exp as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        Ok(acc)
    }

    /// Multiplicative order for nonzero elements of finite fields.
    pub fn mul_order(&self) -> Result<u64> {
        if self.is_zero() {
            return Err(Error::ZeroInput("multiplicative order"));
        }
        let q = self
            .field
            .order()
            .ok_or(Error::UnsupportedOverRationals("multiplicative order"))?;
        let group = (q - 1) as u64;
        let mut ord = group;
        for (l, _) in factor_u64(group) {
            while ord % l == 0 && self.pow((ord / l) as i64)?.is_one() {
                ord /= l;
            }
        }
        Ok(ord)
    }

    /// Frobenius x -> x^p, the identity on prime fields.
    pub fn frobenius(&self) -> Constant {
        match self.field.0.kind {
            FieldKind::Rationals | FieldKind::PrimeFinite => self.clone(),
            FieldKind::ExtensionFinite => self
                .pow(self.field.0.p as i64)
                .expect("positive power cannot fail"),
        }
    }

    /// The p-th root, i.e. the inverse of Frobenius (finite fields only).
    pub fn pth_root(&self) -> Constant {
        match self.field.0.kind {
            FieldKind::Rationals => self.clone(),
            FieldKind::PrimeFinite => self.clone(),
            FieldKind::ExtensionFinite => {
                // x -> x^(p^(m-1)) inverts x -> x^p on F_{p^m}.
                let mut c = self.clone();
                for _ in 0..self.field.0.m - 1 {
                    c = c.frobenius();
                }
                c
            }
        }
    }

    /// True when an extension-field element lies in the prime subfield.
    pub fn in_prime_subfield(&self) -> bool {
        match &self.repr {
            Repr::Ext(c) => c[1..].iter().all(|x| *x == 0),
            _ => true,
        }
    }

    /// Project an element of F_{p^m} lying in F_p down to the prime field.
    pub fn project_to_prime(&self, prime: &Field) -> Result<Constant> {
        match &self.repr {
            Repr::Ext(c) if self.in_prime_subfield() => Ok(prime.from_i64(c[0] as i64)),
            Repr::Prime(r) => Ok(prime.from_i64(*r as i64)),
            _ => Err(Error::InvariantViolation(format!(
                "element {self} does not lie in the prime subfield"
            ))),
        }
    }
}

/// The four field operations, for the operation-style entry point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Exact field arithmetic with explicit error reporting.
pub fn field_arithmetic(a: &Constant, b: &Constant, op: BinOp) -> Result<Constant> {
    a.check_same_field(b)?;
    match op {
        BinOp::Add => Ok(a.add(b)),
        BinOp::Sub => Ok(a.sub(b)),
        BinOp::Mul => Ok(a.mul(b)),
        BinOp::Div => a.div(b),
    }
}

/// Result of adjoining a primitive e-th root of unity.
pub struct AdjoinedRoot {
    /// The (possibly unchanged) field containing the root.
    pub field: Field,
    /// An element of exact multiplicative order e.
    pub root: Constant,
    /// Embedding of the original field into `field`.
    pub embed: Embedding,
}

/// The smallest-degree extension of a finite field containing a primitive
/// e-th root of unity, together with such a root.
///
/// The target degree is lcm(m, ord_e(p)); the root is the first element in
/// enumeration order whose (q-1)/e-th power has exact order e.  Over the
/// rationals only e in {1, 2} is supported.
pub fn adjoin_root_of_unity(field: &Field, e: u64) -> Result<AdjoinedRoot> {
    if e == 0 {
        return Err(Error::NoPrimitiveRoot {
            e,
            reason: "order must be positive".into(),
        });
    }
    if field.kind() == FieldKind::Rationals {
        return match e {
            1 => Ok(AdjoinedRoot {
                field: field.clone(),
                root: field.one(),
                embed: Embedding::identity(field),
            }),
            2 => Ok(AdjoinedRoot {
                field: field.clone(),
                root: field.from_i64(-1),
                embed: Embedding::identity(field),
            }),
            _ => Err(Error::UnsupportedOverRationals(
                "roots of unity of order above 2",
            )),
        };
    }
    let p = field.characteristic();
    if e % p == 0 {
        return Err(Error::NoPrimitiveRoot {
            e,
            reason: format!("{e} is divisible by the characteristic {p}"),
        });
    }
    if e == 1 {
        return Ok(AdjoinedRoot {
            field: field.clone(),
            root: field.one(),
            embed: Embedding::identity(field),
        });
    }
    // Smallest r with p^r = 1 mod e.
    let mut r: u32 = 1;
    let mut pw = p % e;
    while pw != 1 {
        pw = (pw as u128 * p as u128 % e as u128) as u64;
        r += 1;
        if r > 64 {
            return Err(Error::NoPrimitiveRoot {
                e,
                reason: "required extension degree is out of range".into(),
            });
        }
    }
    let m0 = field.degree();
    let m = lcm_u32(m0, r);
    let (target, embed) = if m == m0 {
        (field.clone(), Embedding::identity(field))
    } else {
        let target = Field::extension(p, m)?;
        let embed = Embedding::new(field, &target)?;
        (target, embed)
    };
    let q = target.order().unwrap();
    let h = ((q - 1) / e as u128) as i64;
    let prime_factors: Vec<u64> = factor_u64(e).into_iter().map(|(l, _)| l).collect();
    for idx in 1..q {
        let x = target.element_from_index(idx);
        let y = x.pow(h).expect("positive power");
        if y.is_one() {
            continue;
        }
        debug_assert!(y.pow(e as i64).unwrap().is_one());
        if prime_factors
            .iter()
            .all(|l| !y.pow((e / l) as i64).unwrap().is_one())
        {
            return Ok(AdjoinedRoot {
                field: target,
                root: y,
                embed,
            });
        }
    }
    Err(Error::InvariantViolation(format!(
        "no element of order {e} found in {target}",
        target = target
    )))
}

/// A field embedding determined by the image of the source generator.
#[derive(Debug, Clone)]
pub struct Embedding {
    from: Field,
    to: Field,
    /// Image of the source extension generator; `None` when the source is a
    /// prime field or the embedding is the identity.
    gen_image: Option<Constant>,
}

impl Embedding {
    pub fn identity(field: &Field) -> Embedding {
        Embedding {
            from: field.clone(),
            to: field.clone(),
            gen_image: None,
        }
    }

    /// Embedding of `from` into `to`; both finite with the same
    /// characteristic and deg(from) dividing deg(to).  The generator image is
    /// the first root of the source modulus in enumeration order.
    pub fn new(from: &Field, to: &Field) -> Result<Embedding> {
        if from == to {
            return Ok(Embedding::identity(from));
        }
        if !from.is_finite() || !to.is_finite() || from.characteristic() != to.characteristic() {
            return Err(Error::FieldMismatch {
                left: from.to_string(),
                right: to.to_string(),
            });
        }
        if to.degree() % from.degree() != 0 {
            return Err(Error::FieldMismatch {
                left: from.to_string(),
                right: to.to_string(),
            });
        }
        if from.kind() == FieldKind::PrimeFinite {
            return Ok(Embedding {
                from: from.clone(),
                to: to.clone(),
                gen_image: None,
            });
        }
        // Find a root of the source modulus in the target field.
        let modulus = from.modulus().to_vec();
        let q = to.order().unwrap();
        for idx in 0..q {
            let cand = to.element_from_index(idx);
            let mut acc = to.zero();
            for c in modulus.iter().rev() {
                acc = acc.mul(&cand).add(&to.from_i64(*c as i64));
            }
            if acc.is_zero() {
                return Ok(Embedding {
                    from: from.clone(),
                    to: to.clone(),
                    gen_image: Some(cand),
                });
            }
        }
        Err(Error::InvariantViolation(format!(
            "modulus of {from} has no root in {to}"
        )))
    }

    pub fn from_field(&self) -> &Field {
        &self.from
    }

    pub fn to_field(&self) -> &Field {
        &self.to
    }

    pub fn apply(&self, c: &Constant) -> Result<Constant> {
        if c.field() != &self.from {
            return Err(Error::FieldMismatch {
                left: c.field().to_string(),
                right: self.from.to_string(),
            });
        }
        if self.from == self.to {
            return Ok(c.clone());
        }
        match (&c.repr, &self.gen_image) {
            (Repr::Prime(r), _) => Ok(self.to.from_i64(*r as i64)),
            (Repr::Ext(coords), Some(g)) => {
                let mut acc = self.to.zero();
                for c in coords.iter().rev() {
                    acc = acc.mul(g).add(&self.to.from_i64(*c as i64));
                }
                Ok(acc)
            }
            _ => Err(Error::InvariantViolation(
                "embedding lacks a generator image".into(),
            )),
        }
    }
}

/// Deterministic element sampling from a seed (ChaCha8 stream).
pub fn sample_element(field: &Field, seed: u64) -> Constant {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    field.sample_with(&mut rng, DEFAULT_RATIONAL_BOUND)
}

fn lcm_u32(a: u32, b: u32) -> u32 {
    a / gcd_u32(a, b) * b
}

fn gcd_u32(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd_u32(b, a % b)
    }
}

pub(crate) fn gcd_u64(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd_u64(b, a % b)
    }
}

/// Trial-division primality, adequate for desk-scale moduli.
fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Trial-division factorization of small integers.
pub(crate) fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

trait ModFloorU64 {
    fn mod_floor_u64(&self, p: u64) -> u64;
}

impl ModFloorU64 for BigInt {
    fn mod_floor_u64(&self, p: u64) -> u64 {
        use num_integer::Integer;
        let m = self.mod_floor(&BigInt::from(p));
        let (_, digits) = m.to_u64_digits();
        digits.first().copied().unwrap_or(0)
    }
}

/// Arithmetic over F_p on bare residues and dense coefficient vectors
/// (little-endian, trailing zeros trimmed).  This layer backs extension-field
/// elements and the defining-modulus search without depending on the generic
/// polynomial types above it.
pub(crate) mod fp {
    pub fn add(a: u64, b: u64, p: u64) -> u64 {
        let s = a + b;
        if s >= p {
            s - p
        } else {
            s
        }
    }

    pub fn sub(a: u64, b: u64, p: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + p - b
        }
    }

    pub fn mul(a: u64, b: u64, p: u64) -> u64 {
        ((a as u128 * b as u128) % p as u128) as u64
    }

    pub fn pow(mut a: u64, mut e: u64, p: u64) -> u64 {
        let mut acc = 1 % p;
        a %= p;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul(acc, a, p);
            }
            a = mul(a, a, p);
            e >>= 1;
        }
        acc
    }

    pub fn inv(a: u64, p: u64) -> u64 {
        debug_assert!(a % p != 0);
        pow(a, p - 2, p)
    }

    fn trim(v: &mut Vec<u64>) {
        while v.last() == Some(&0) {
            v.pop();
        }
    }

    pub fn padd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut out = vec![0; a.len().max(b.len())];
        for (i, c) in a.iter().enumerate() {
            out[i] = *c;
        }
        for (i, c) in b.iter().enumerate() {
            out[i] = add(out[i], *c, p);
        }
        trim(&mut out);
        out
    }

    pub fn pscale(a: &[u64], s: u64, p: u64) -> Vec<u64> {
        let mut out: Vec<u64> = a.iter().map(|c| mul(*c, s, p)).collect();
        trim(&mut out);
        out
    }

    pub fn psub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        padd(a, &pscale(b, p - 1, p), p)
    }

    pub fn pmul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if *x == 0 {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] = add(out[i + j], mul(*x, *y, p), p);
            }
        }
        trim(&mut out);
        out
    }

    /// Remainder of a by b (b nonzero), standard long division.
    pub fn prem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut r = a.to_vec();
        trim(&mut r);
        let mut bb = b.to_vec();
        trim(&mut bb);
        assert!(!bb.is_empty(), "division by zero polynomial");
        let lead_inv = inv(*bb.last().unwrap(), p);
        while r.len() >= bb.len() {
            let coeff = mul(*r.last().unwrap(), lead_inv, p);
            let shift = r.len() - bb.len();
            for (i, c) in bb.iter().enumerate() {
                r[shift + i] = sub(r[shift + i], mul(coeff, *c, p), p);
            }
            trim(&mut r);
            if r.is_empty() {
                break;
            }
        }
        r
    }

    pub fn pgcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut x = a.to_vec();
        let mut y = b.to_vec();
        trim(&mut x);
        trim(&mut y);
        while !y.is_empty() {
            let r = prem(&x, &y, p);
            x = y;
            y = r;
        }
        if let Some(l) = x.last().copied() {
            if l != 1 {
                x = pscale(&x, inv(l, p), p);
            }
        }
        x
    }

    /// Product modulo a monic modulus.
    pub fn pmulmod(a: &[u64], b: &[u64], modulus: &[u64], p: u64) -> Vec<u64> {
        let prod = pmul(a, b, p);
        let mut r = prem(&prod, modulus, p);
        r.resize(modulus.len() - 1, 0);
        r
    }

    /// Inverse modulo a modulus via extended Euclid, `None` for non-units.
    pub fn pinvmod(a: &[u64], modulus: &[u64], p: u64) -> Option<Vec<u64>> {
        let mut r0 = modulus.to_vec();
        let mut r1 = a.to_vec();
        trim(&mut r0);
        trim(&mut r1);
        let mut s0: Vec<u64> = Vec::new();
        let mut s1: Vec<u64> = vec![1];
        while !r1.is_empty() {
            // r0 = q r1 + r2
            let mut q = vec![0u64; r0.len().saturating_sub(r1.len()) + 1];
            let mut rem = r0.clone();
            let lead_inv = inv(*r1.last().unwrap(), p);
            while rem.len() >= r1.len() && !rem.is_empty() {
                let coeff = mul(*rem.last().unwrap(), lead_inv, p);
                let shift = rem.len() - r1.len();
                q[shift] = coeff;
                for (i, c) in r1.iter().enumerate() {
                    rem[shift + i] = sub(rem[shift + i], mul(coeff, *c, p), p);
                }
                trim(&mut rem);
            }
            let s2 = psub(&s0, &pmul(&q, &s1, p), p);
            r0 = std::mem::replace(&mut r1, rem);
            s0 = std::mem::replace(&mut s1, s2);
        }
        if r0.len() != 1 {
            return None;
        }
        let mut out = pscale(&s0, inv(r0[0], p), p);
        out = prem(&out, modulus, p);
        out.resize(modulus.len() - 1, 0);
        Some(out)
    }

    pub fn ppowmod(base: &[u64], mut e: u64, modulus: &[u64], p: u64) -> Vec<u64> {
        let mut acc = vec![1u64];
        let mut b = prem(base, modulus, p);
        while e > 0 {
            if e & 1 == 1 {
                acc = prem(&pmul(&acc, &b, p), modulus, p);
            }
            b = prem(&pmul(&b, &b, p), modulus, p);
            e >>= 1;
        }
        acc
    }

    /// Rabin irreducibility test for a monic polynomial over F_p.
    pub fn is_irreducible(f: &[u64], p: u64) -> bool {
        let m = f.len() - 1;
        if m == 0 {
            return false;
        }
        if m == 1 {
            return true;
        }
        // Iterated Frobenius images x^(p^j) mod f.
        let x = vec![0u64, 1];
        let mut frob = Vec::with_capacity(m + 1);
        frob.push(x.clone());
        for j in 1..=m {
            let prev = &frob[j - 1];
            frob.push(ppowmod(prev, p, f, p));
        }
        if frob[m] != x {
            return false;
        }
        for (l, _) in super::factor_u64(m as u64) {
            let j = m / l as usize;
            let diff = psub(&frob[j], &x, p);
            let g = pgcd(f, &diff, p);
            if g.len() != 1 {
                return false;
            }
        }
        true
    }

    /// First monic irreducible of degree m, scanning coefficient vectors as
    /// base-p counters (constant coefficient least significant).
    pub fn find_irreducible(p: u64, m: u32) -> Vec<u64> {
        let m = m as usize;
        let total = (p as u128).pow(m as u32);
        for idx in 0..total {
            let mut f = Vec::with_capacity(m + 1);
            let mut rest = idx;
            for _ in 0..m {
                f.push((rest % p as u128) as u64);
                rest /= p as u128;
            }
            f.push(1);
            if is_irreducible(&f, p) {
                return f;
            }
        }
        unreachable!("irreducible polynomials exist in every degree")
    }
}

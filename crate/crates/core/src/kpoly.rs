//! Dense univariate polynomials over the constant field k.
//!
//! These carry both the T-coefficients of rational functions and, through the
//! factorization routines in [`crate::factor`], the place decomposition that
//! valuations and heights are built on.

use std::cmp::Ordering;
use std::fmt::Write as _;

use crate::constants::{Constant, Field, FieldKind};
use crate::error::{Error, Result};
use crate::factor;

/// A dense univariate polynomial; `coeffs` is ascending with no trailing
/// zeros, so the zero polynomial has an empty coefficient vector.
#[derive(Clone, PartialEq, Eq)]
pub struct KPoly {
    field: Field,
    coeffs: Vec<Constant>,
}

impl std::fmt::Debug for KPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.format_var("T"))
    }
}

impl PartialOrd for KPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical sort order: by degree, then coefficients from the top down.
impl Ord for KPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl KPoly {
    pub fn zero(field: &Field) -> KPoly {
        KPoly {
            field: field.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: &Field) -> KPoly {
        KPoly::constant(field.one())
    }

    pub fn constant(c: Constant) -> KPoly {
        let field = c.field().clone();
        let coeffs = if c.is_zero() { Vec::new() } else { vec![c] };
        KPoly { field, coeffs }
    }

    /// The generator T.
    pub fn gen(field: &Field) -> KPoly {
        KPoly {
            field: field.clone(),
            coeffs: vec![field.zero(), field.one()],
        }
    }

    /// c * T^k.
    pub fn monomial(c: Constant, k: usize) -> KPoly {
        if c.is_zero() {
            return KPoly::zero(c.field());
        }
        let field = c.field().clone();
        let mut coeffs = vec![field.zero(); k + 1];
        coeffs[k] = c;
        KPoly { field, coeffs }
    }

    pub fn from_coeffs(field: &Field, coeffs: Vec<Constant>) -> KPoly {
        let mut p = KPoly {
            field: field.clone(),
            coeffs,
        };
        p.trim();
        p
    }

    pub fn from_i64_coeffs(field: &Field, coeffs: &[i64]) -> KPoly {
        KPoly::from_coeffs(
            field,
            coeffs.iter().map(|c| field.from_i64(*c)).collect(),
        )
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    /// Degree with deg 0 = -1, convenient in degree arithmetic.
    pub fn deg_i(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn coeffs(&self) -> &[Constant] {
        &self.coeffs
    }

    /// Coefficient of T^i, zero-padded beyond the degree.
    pub fn coeff(&self, i: usize) -> Constant {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn lc(&self) -> Option<&Constant> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn add(&self, other: &KPoly) -> KPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i).add(&other.coeff(i)));
        }
        KPoly::from_coeffs(&self.field, coeffs)
    }

    pub fn sub(&self, other: &KPoly) -> KPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> KPoly {
        KPoly {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn mul(&self, other: &KPoly) -> KPoly {
        if self.is_zero() || other.is_zero() {
            return KPoly::zero(&self.field);
        }
        let mut coeffs = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
            }
        }
        KPoly::from_coeffs(&self.field, coeffs)
    }

    pub fn mul_c(&self, c: &Constant) -> KPoly {
        if c.is_zero() {
            return KPoly::zero(&self.field);
        }
        KPoly {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|x| x.mul(c)).collect(),
        }
    }

    /// Multiply by T^k.
    pub fn shl(&self, k: usize) -> KPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![self.field.zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        KPoly {
            field: self.field.clone(),
            coeffs,
        }
    }

    pub fn pow(&self, mut e: u32) -> KPoly {
        let mut acc = KPoly::one(&self.field);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Quotient and remainder; errors on a zero divisor.
    pub fn divrem(&self, other: &KPoly) -> Result<(KPoly, KPoly)> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let dlc = other.lc().unwrap().inv()?;
        let db = other.coeffs.len();
        let mut rem = self.clone();
        if rem.coeffs.len() < db {
            return Ok((KPoly::zero(&self.field), rem));
        }
        let mut quot = vec![self.field.zero(); rem.coeffs.len() - db + 1];
        while rem.coeffs.len() >= db {
            let c = rem.coeffs.last().unwrap().mul(&dlc);
            let shift = rem.coeffs.len() - db;
            quot[shift] = c.clone();
            for (i, b) in other.coeffs.iter().enumerate() {
                rem.coeffs[shift + i] = rem.coeffs[shift + i].sub(&c.mul(b));
            }
            rem.trim();
            if rem.is_zero() {
                break;
            }
        }
        Ok((KPoly::from_coeffs(&self.field, quot), rem))
    }

    pub fn rem(&self, other: &KPoly) -> Result<KPoly> {
        Ok(self.divrem(other)?.1)
    }

    /// Exact quotient, `None` when the division leaves a remainder.
    pub fn exact_div(&self, other: &KPoly) -> Option<KPoly> {
        let (q, r) = self.divrem(other).ok()?;
        if r.is_zero() {
            Some(q)
        } else {
            None
        }
    }

    /// Monic gcd; gcd(0, 0) = 0.
    pub fn gcd(a: &KPoly, b: &KPoly) -> KPoly {
        let mut x = a.clone();
        let mut y = b.clone();
        while !y.is_zero() {
            let r = x.rem(&y).expect("nonzero divisor");
            x = y;
            y = r;
        }
        x.make_monic()
    }

    /// Extended gcd: returns (g, s, t) with g monic and s a + t b = g.
    pub fn extended_gcd(a: &KPoly, b: &KPoly) -> (KPoly, KPoly, KPoly) {
        let field = a.field.clone();
        let mut r0 = a.clone();
        let mut r1 = b.clone();
        let mut s0 = KPoly::one(&field);
        let mut s1 = KPoly::zero(&field);
        let mut t0 = KPoly::zero(&field);
        let mut t1 = KPoly::one(&field);
        while !r1.is_zero() {
            let (q, r2) = r0.divrem(&r1).expect("nonzero divisor");
            let s2 = s0.sub(&q.mul(&s1));
            let t2 = t0.sub(&q.mul(&t1));
            r0 = std::mem::replace(&mut r1, r2);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let lead = r0.lc().unwrap().inv().expect("nonzero leading coefficient");
        (r0.mul_c(&lead), s0.mul_c(&lead), t0.mul_c(&lead))
    }

    pub fn make_monic(&self) -> KPoly {
        match self.lc() {
            None => self.clone(),
            Some(l) if l.is_one() => self.clone(),
            Some(l) => self.mul_c(&l.inv().expect("nonzero leading coefficient")),
        }
    }

    /// Substitute T -> T^s.
    pub fn inflate(&self, s: u32) -> KPoly {
        if self.is_zero() || s == 1 {
            return self.clone();
        }
        let mut coeffs = vec![self.field.zero(); (self.coeffs.len() - 1) * s as usize + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * s as usize] = c.clone();
        }
        KPoly {
            field: self.field.clone(),
            coeffs,
        }
    }

    /// Inverse of `inflate` when every exponent is divisible by s.
    pub fn deflate(&self, s: u32) -> Option<KPoly> {
        if self.is_zero() || s == 1 {
            return Some(self.clone());
        }
        let s = s as usize;
        let mut coeffs = Vec::with_capacity(self.coeffs.len() / s + 1);
        for (i, c) in self.coeffs.iter().enumerate() {
            if i % s == 0 {
                coeffs.push(c.clone());
            } else if !c.is_zero() {
                return None;
            }
        }
        Some(KPoly::from_coeffs(&self.field, coeffs))
    }

    /// Gcd of exponents with nonzero coefficients (0 for constants).
    pub fn exponent_gcd(&self) -> u32 {
        let mut g: u64 = 0;
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() && i > 0 {
                g = crate::constants::gcd_u64(g, i as u64);
            }
        }
        g as u32
    }

    pub fn eval(&self, x: &Constant) -> Constant {
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    /// Substitute T -> c*T (coefficient i scales by c^i).
    pub fn scale_arg(&self, c: &Constant) -> KPoly {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        let mut pw = self.field.one();
        for a in &self.coeffs {
            coeffs.push(a.mul(&pw));
            pw = pw.mul(c);
        }
        KPoly::from_coeffs(&self.field, coeffs)
    }

    /// Map every coefficient, e.g. through a field embedding.
    pub fn map_coeffs<F>(&self, target: &Field, mut f: F) -> Result<KPoly>
    where
        F: FnMut(&Constant) -> Result<Constant>,
    {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            coeffs.push(f(c)?);
        }
        Ok(KPoly::from_coeffs(target, coeffs))
    }

    pub fn derivative(&self) -> KPoly {
        if self.coeffs.len() <= 1 {
            return KPoly::zero(&self.field);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.mul(&self.field.from_i64(i as i64)))
            .collect();
        KPoly::from_coeffs(&self.field, coeffs)
    }

    /// self^e mod m with small exponent.
    pub fn powmod(&self, mut e: u64, m: &KPoly) -> Result<KPoly> {
        let mut acc = KPoly::one(&self.field);
        let mut base = self.rem(m)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m)?;
            }
            base = base.mul(&base).rem(m)?;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Multiplicity of the (nonconstant) divisor d in self.
    pub fn multiplicity_of(&self, d: &KPoly) -> u32 {
        let mut k = 0;
        let mut cur = self.clone();
        while let Some(q) = cur.exact_div(d) {
            k += 1;
            cur = q;
            if cur.is_constant() {
                break;
            }
        }
        k
    }

    /// Monic irreducible factors with multiplicities, plus the leading unit:
    /// self = unit * prod f_i^{e_i}.  Factors are sorted canonically.
    pub fn factor(&self) -> Result<(Constant, Vec<(KPoly, u32)>)> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial("factorization"));
        }
        let unit = self.lc().unwrap().clone();
        if self.is_constant() {
            return Ok((unit, Vec::new()));
        }
        let monic = self.make_monic();
        let mut factors = match self.field.kind() {
            FieldKind::Rationals => factor::factor_rationals(&monic)?,
            _ => factor::factor_finite(&monic)?,
        };
        factors.sort_by(|a, b| a.0.cmp(&b.0));
        Ok((unit, factors))
    }

    pub fn is_irreducible(&self) -> Result<bool> {
        let (_, factors) = self.factor()?;
        Ok(factors.len() == 1 && factors[0].1 == 1)
    }

    /// Roots in the coefficient field, from the linear factors.
    pub fn roots_in_field(&self) -> Result<Vec<Constant>> {
        let (_, factors) = self.factor()?;
        let mut roots = Vec::new();
        for (f, _) in factors {
            if f.degree() == Some(1) {
                roots.push(f.coeff(0).neg());
            }
        }
        Ok(roots)
    }

    /// Render with the given variable name, highest power first.
    pub fn format_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (sign_negative, mag) = constant_sign_split(c);
            if first {
                if sign_negative {
                    out.push('-');
                }
                first = false;
            } else if sign_negative {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let coeff_txt = format_constant_factor(&mag);
            if i == 0 {
                out.push_str(&coeff_txt.unwrap_or_else(|| mag.to_string()));
            } else {
                if let Some(txt) = coeff_txt {
                    out.push_str(&txt);
                    out.push('*');
                }
                out.push_str(var);
                if i > 1 {
                    let _ = write!(out, "^{i}");
                }
            }
        }
        out
    }
}

/// Split a constant into a printed sign and magnitude.  Only rationals
/// carry a sign; finite-field residues print canonically.
fn constant_sign_split(c: &Constant) -> (bool, Constant) {
    if let Some(r) = c.as_rational() {
        use num_traits::Signed;
        if r.is_negative() {
            return (true, c.neg());
        }
    }
    (false, c.clone())
}

/// Text of a constant used as a multiplicative factor; `None` when it is 1
/// and can be omitted.  Non-integer rationals are parenthesized so that
/// printed polynomials re-parse unambiguously.
fn format_constant_factor(c: &Constant) -> Option<String> {
    if c.is_one() {
        return None;
    }
    let txt = c.to_string();
    if txt.contains('/') {
        Some(format!("({txt})"))
    } else {
        Some(txt)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::Field;

    fn f5() -> Field {
        Field::prime(5).unwrap()
    }

    #[test]
    fn divrem_roundtrip() {
        let f = f5();
        let a = KPoly::from_i64_coeffs(&f, &[1, 0, 3, 2]);
        let b = KPoly::from_i64_coeffs(&f, &[2, 1]);
        let (q, r) = a.divrem(&b).unwrap();
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.deg_i() < b.deg_i());
    }

    #[test]
    fn gcd_is_monic_and_divides() {
        let f = f5();
        let g = KPoly::from_i64_coeffs(&f, &[1, 1]); // t + 1
        let a = g.mul(&KPoly::from_i64_coeffs(&f, &[3, 0, 1]));
        let b = g.mul(&KPoly::from_i64_coeffs(&f, &[2, 1]));
        let d = KPoly::gcd(&a, &b);
        assert!(d.is_monic());
        assert!(a.exact_div(&d).is_some());
        assert!(b.exact_div(&d).is_some());
        assert_eq!(d, g);
    }

    #[test]
    fn extended_gcd_bezout() {
        let f = f5();
        let a = KPoly::from_i64_coeffs(&f, &[1, 2, 1]);
        let b = KPoly::from_i64_coeffs(&f, &[3, 1]);
        let (g, s, t) = KPoly::extended_gcd(&a, &b);
        assert_eq!(s.mul(&a).add(&t.mul(&b)), g);
    }

    #[test]
    fn inflate_deflate() {
        let f = f5();
        let a = KPoly::from_i64_coeffs(&f, &[1, 2, 0, 3]);
        let b = a.inflate(3);
        assert_eq!(b.degree(), Some(9));
        assert_eq!(b.deflate(3).unwrap(), a);
        assert_eq!(b.exponent_gcd() % 3, 0);
        assert!(b.deflate(2).is_none());
    }

    #[test]
    fn factor_over_f5() {
        let f = f5();
        // t^2 - t = t (t - 1)
        let p = KPoly::from_i64_coeffs(&f, &[0, -1, 1]);
        let (unit, factors) = p.factor().unwrap();
        assert!(unit.is_one());
        assert_eq!(factors.len(), 2);
        let product = factors
            .iter()
            .fold(KPoly::one(&f), |acc, (q, e)| acc.mul(&q.pow(*e)));
        assert_eq!(product, p);
        // t^2 + 2 is irreducible over F_5.
        let irr = KPoly::from_i64_coeffs(&f, &[2, 0, 1]);
        assert!(irr.is_irreducible().unwrap());
    }

    #[test]
    fn factor_with_multiplicities_char_p() {
        let f = Field::prime(2).unwrap();
        // (t+1)^2 * t over F_2 (derivative-degenerate shapes included).
        let p = KPoly::from_i64_coeffs(&f, &[1, 1]).pow(2).mul(&KPoly::gen(&f));
        let (_, factors) = p.factor().unwrap();
        let product = factors
            .iter()
            .fold(KPoly::one(&f), |acc, (q, e)| acc.mul(&q.pow(*e)));
        assert_eq!(product, p);
        assert!(factors.iter().any(|(_, e)| *e == 2));
        // t^2 over F_2 is an inseparable square.
        let sq = KPoly::gen(&f).pow(2);
        let (_, factors) = sq.factor().unwrap();
        assert_eq!(factors, vec![(KPoly::gen(&f), 2)]);
    }

    #[test]
    fn factor_over_q() {
        let q = Field::rationals();
        // (x^2 - 1)(x^2 + 1) = x^4 - 1
        let p = KPoly::from_i64_coeffs(&q, &[-1, 0, 0, 0, 1]);
        let (_, factors) = p.factor().unwrap();
        assert_eq!(factors.len(), 3);
        let product = factors
            .iter()
            .fold(KPoly::one(&q), |acc, (f, e)| acc.mul(&f.pow(*e)));
        assert_eq!(product, p);
        // x^4 + 1 is irreducible over Q though it splits mod every prime.
        let swd = KPoly::from_i64_coeffs(&q, &[1, 0, 0, 0, 1]);
        assert!(swd.is_irreducible().unwrap());
    }

    #[test]
    fn formatting_roundtrip_shapes() {
        let f = f5();
        let p = KPoly::from_i64_coeffs(&f, &[1, 4, 0, 2]);
        assert_eq!(p.format_var("t"), "2*t^3 + 4*t + 1");
        let q = Field::rationals();
        let h = KPoly::from_coeffs(
            &q,
            vec![
                q.from_ratio(&(-1).into(), &2.into()).unwrap(),
                q.one(),
            ],
        );
        assert_eq!(h.format_var("t"), "t - (1/2)");
    }
}

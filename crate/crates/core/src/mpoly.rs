//! Sparse multivariate polynomials over k[T] in X_1..X_n: content and
//! primitive part, heights, gcds by primitive remainder sequences, resultants
//! by fraction-free (Bareiss) elimination of the Sylvester matrix, and exact
//! evaluation at tuples of rational functions.
//!
//! Monomials are ordered lexicographically with X_1 heaviest; the leading
//! term of a polynomial is the lex-largest monomial.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;

use crate::constants::Field;
use crate::error::{Error, Result};
use crate::kpoly::KPoly;
use crate::ratfunc::{check_tame, RatFunc};

/// Exponent vector; ordering is lexicographic with X_1 compared first.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Monomial {
        Monomial(vec![0; nvars])
    }

    /// X_i as a monomial; `var` is 1-based.
    pub fn var(nvars: usize, var: usize) -> Monomial {
        let mut e = vec![0; nvars];
        e[var - 1] = 1;
        Monomial(e)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|e| *e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(&other.0) {
            if a < b {
                return None;
            }
            out.push(a - b);
        }
        Some(Monomial(out))
    }

    fn insert_var(&self, pos: usize) -> Monomial {
        let mut e = self.0.clone();
        e.insert(pos - 1, 0);
        Monomial(e)
    }

    fn drop_var(&self, pos: usize) -> Monomial {
        let mut e = self.0.clone();
        e.remove(pos - 1);
        Monomial(e)
    }
}

/// A sparse polynomial in k[T][X_1..X_n]; no zero coefficients are stored.
#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    field: Field,
    index: u32,
    nvars: usize,
    terms: BTreeMap<Monomial, KPoly>,
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

/// Content and primitive part: content * primitive = original, with the
/// content monic in k[T] and the primitive part coefficient-coprime.
#[derive(Clone, Debug)]
pub struct ReducedForm {
    pub content: KPoly,
    pub primitive: MultiPoly,
}

impl MultiPoly {
    pub fn zero(field: &Field, index: u32, nvars: usize) -> MultiPoly {
        MultiPoly {
            field: field.clone(),
            index,
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(field: &Field, index: u32, nvars: usize) -> MultiPoly {
        MultiPoly::from_kpoly(KPoly::one(field), index, nvars)
    }

    /// A polynomial constant in every X (an element of k[T]).
    pub fn from_kpoly(c: KPoly, index: u32, nvars: usize) -> MultiPoly {
        let field = c.field().clone();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(nvars), c);
        }
        MultiPoly {
            field,
            index,
            nvars,
            terms,
        }
    }

    /// The variable X_i (1-based).
    pub fn var(field: &Field, index: u32, nvars: usize, var: usize) -> MultiPoly {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::var(nvars, var), KPoly::one(field));
        MultiPoly {
            field: field.clone(),
            index,
            nvars,
            terms,
        }
    }

    pub fn from_terms(
        field: &Field,
        index: u32,
        nvars: usize,
        terms: Vec<(Monomial, KPoly)>,
    ) -> Result<MultiPoly> {
        check_tame(field, index)?;
        let mut map: BTreeMap<Monomial, KPoly> = BTreeMap::new();
        for (m, c) in terms {
            if m.0.len() != nvars {
                return Err(Error::ArityMismatch {
                    expected: nvars,
                    got: m.0.len(),
                });
            }
            if c.is_zero() {
                continue;
            }
            match map.remove(&m) {
                None => {
                    map.insert(m, c);
                }
                Some(prev) => {
                    let s = prev.add(&c);
                    if !s.is_zero() {
                        map.insert(m, s);
                    }
                }
            }
        }
        Ok(MultiPoly {
            field: field.clone(),
            index,
            nvars,
            terms: map,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn index(&self) -> u32 {
        self.index
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &KPoly)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True when constant in every X variable (possibly zero).
    pub fn is_x_free(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    /// The k[T]-coefficient of the constant monomial.
    pub fn constant_coeff(&self) -> KPoly {
        self.terms
            .get(&Monomial::one(self.nvars))
            .cloned()
            .unwrap_or_else(|| KPoly::zero(&self.field))
    }

    /// Total degree in the X variables only; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.total_degree()).max()
    }

    /// Degree in one variable (1-based); `None` for the zero polynomial.
    pub fn deg_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.0[var - 1]).max()
    }

    /// Largest 1-based variable index with positive degree.
    pub fn last_positive_var(&self) -> Option<usize> {
        (1..=self.nvars)
            .rev()
            .find(|v| self.deg_in(*v).unwrap_or(0) > 0)
    }

    /// Max T-degree over coefficients, the height relative to T.
    pub fn t_height(&self) -> Option<u32> {
        self.terms
            .values()
            .map(|c| c.degree().unwrap_or(0) as u32)
            .max()
    }

    /// Height relative to t: max coefficient T-degree divided by the index.
    pub fn poly_height(&self) -> Option<BigRational> {
        self.t_height().map(|h| {
            BigRational::new(
                num_bigint::BigInt::from(h),
                num_bigint::BigInt::from(self.index),
            )
        })
    }

    pub fn lex_lead(&self) -> Option<(&Monomial, &KPoly)> {
        self.terms.iter().next_back()
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        debug_assert_eq!(self.index, other.index);
        debug_assert_eq!(self.nvars, other.nvars);
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            match terms.remove(m) {
                None => {
                    terms.insert(m.clone(), c.clone());
                }
                Some(prev) => {
                    let s = prev.add(c);
                    if !s.is_zero() {
                        terms.insert(m.clone(), s);
                    }
                }
            }
        }
        MultiPoly {
            field: self.field.clone(),
            index: self.index,
            nvars: self.nvars,
            terms,
        }
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> MultiPoly {
        MultiPoly {
            field: self.field.clone(),
            index: self.index,
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        debug_assert_eq!(self.index, other.index);
        debug_assert_eq!(self.nvars, other.nvars);
        let mut terms: BTreeMap<Monomial, KPoly> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let prod = ca.mul(cb);
                match terms.remove(&m) {
                    None => {
                        terms.insert(m, prod);
                    }
                    Some(prev) => {
                        let s = prev.add(&prod);
                        if !s.is_zero() {
                            terms.insert(m, s);
                        }
                    }
                }
            }
        }
        MultiPoly {
            field: self.field.clone(),
            index: self.index,
            nvars: self.nvars,
            terms,
        }
    }

    pub fn mul_kpoly(&self, c: &KPoly) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(&self.field, self.index, self.nvars);
        }
        MultiPoly {
            field: self.field.clone(),
            index: self.index,
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, x)| (m.clone(), x.mul(c)))
                .collect(),
        }
    }

    fn mul_term(&self, m: &Monomial, c: &KPoly) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(&self.field, self.index, self.nvars);
        }
        MultiPoly {
            field: self.field.clone(),
            index: self.index,
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(mm, cc)| (mm.mul(m), cc.mul(c)))
                .collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> MultiPoly {
        let mut acc = MultiPoly::one(&self.field, self.index, self.nvars);
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

    /// Re-express the coefficients at a finer index (T -> U^{e'/e}).
    pub fn reindex(&self, e_new: u32) -> Result<MultiPoly> {
        if e_new == self.index {
            return Ok(self.clone());
        }
        if e_new == 0 || e_new % self.index != 0 {
            return Err(Error::IndexNotMultiple {
                from: self.index,
                to: e_new,
            });
        }
        check_tame(&self.field, e_new)?;
        let s = e_new / self.index;
        Ok(MultiPoly {
            field: self.field.clone(),
            index: e_new,
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.inflate(s)))
                .collect(),
        })
    }

    /// Apply a map to every coefficient, preserving the X structure.
    pub fn map_coeffs<F>(&self, index: u32, mut f: F) -> Result<MultiPoly>
    where
        F: FnMut(&KPoly) -> Result<KPoly>,
    {
        let mut terms = BTreeMap::new();
        let mut field = self.field.clone();
        for (m, c) in &self.terms {
            let nc = f(c)?;
            if !nc.is_zero() {
                field = nc.field().clone();
                terms.insert(m.clone(), nc);
            }
        }
        Ok(MultiPoly {
            field,
            index,
            nvars: self.nvars,
            terms,
        })
    }

    /// Content (monic gcd of the coefficients in k[T]) and primitive part.
    pub fn content_primitive(&self) -> Result<ReducedForm> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial("content"));
        }
        let mut content = KPoly::zero(&self.field);
        for c in self.terms.values() {
            content = KPoly::gcd(&content, c);
            if content.is_one() {
                break;
            }
        }
        let primitive = if content.is_one() {
            self.clone()
        } else {
            self.map_coeffs(self.index, |c| {
                c.exact_div(&content).ok_or_else(|| {
                    Error::InvariantViolation("content fails to divide a coefficient".into())
                })
            })?
        };
        Ok(ReducedForm { content, primitive })
    }

    /// Coefficients with respect to one variable, as polynomials with that
    /// variable's exponent cleared.
    pub fn coeffs_wrt(&self, var: usize) -> BTreeMap<u32, MultiPoly> {
        let mut out: BTreeMap<u32, MultiPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.0[var - 1];
            let mut cleared = m.clone();
            cleared.0[var - 1] = 0;
            out.entry(e)
                .or_insert_with(|| MultiPoly::zero(&self.field, self.index, self.nvars))
                .terms
                .insert(cleared, c.clone());
        }
        out
    }

    /// Leading coefficient with respect to one variable, as a polynomial in
    /// the remaining variables (same arity, that exponent zero).
    pub fn lc_in(&self, var: usize) -> MultiPoly {
        match self.deg_in(var) {
            None => MultiPoly::zero(&self.field, self.index, self.nvars),
            Some(d) => self
                .coeffs_wrt(var)
                .remove(&d)
                .expect("leading coefficient present"),
        }
    }

    /// Exact division; `None` when the division leaves a remainder.  Works
    /// by cancelling lex-leading terms, which is exact whenever the quotient
    /// exists in k[T][X].
    pub fn exact_div(&self, divisor: &MultiPoly) -> Option<MultiPoly> {
        if divisor.is_zero() {
            return None;
        }
        let (dm, dc) = divisor.lex_lead().unwrap();
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero(&self.field, self.index, self.nvars);
        while !rem.is_zero() {
            let (rm, rc) = rem.lex_lead().unwrap();
            let m = rm.div(dm)?;
            let c = rc.exact_div(dc)?;
            let term = MultiPoly {
                field: self.field.clone(),
                index: self.index,
                nvars: self.nvars,
                terms: BTreeMap::from([(m.clone(), c.clone())]),
            };
            quot = quot.add(&term);
            rem = rem.sub(&divisor.mul_term(&m, &c));
        }
        Some(quot)
    }

    /// Drop an unused variable (1-based), shrinking the arity by one.
    pub fn drop_var(&self, var: usize) -> Result<MultiPoly> {
        if self.deg_in(var).unwrap_or(0) != 0 {
            return Err(Error::InvariantViolation(format!(
                "cannot drop live variable X{var}"
            )));
        }
        Ok(MultiPoly {
            field: self.field.clone(),
            index: self.index,
            nvars: self.nvars - 1,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.drop_var(var), c.clone()))
                .collect(),
        })
    }

    /// Insert a fresh unused variable at a 1-based position.
    pub fn insert_var(&self, var: usize) -> MultiPoly {
        MultiPoly {
            field: self.field.clone(),
            index: self.index,
            nvars: self.nvars + 1,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.insert_var(var), c.clone()))
                .collect(),
        }
    }

    /// Exact evaluation at a tuple of rational functions.
    pub fn evaluate(&self, point: &[RatFunc]) -> Result<RatFunc> {
        if point.len() != self.nvars {
            return Err(Error::ArityMismatch {
                expected: self.nvars,
                got: point.len(),
            });
        }
        // Common index for the coefficients and the coordinates.
        let mut target = self.index as u64;
        for x in point {
            let g = crate::constants::gcd_u64(target, x.index() as u64);
            target = target / g * x.index() as u64;
        }
        let target = u32::try_from(target).map_err(|_| Error::InvariantViolation(
            "common Kummer index overflows".into(),
        ))?;
        let coords: Vec<RatFunc> = point
            .iter()
            .map(|x| x.reindex(target))
            .collect::<Result<_>>()?;
        let mut acc = RatFunc::zero(&self.field, target);
        for (m, c) in &self.terms {
            let mut term = RatFunc::from_poly(c.inflate(target / self.index), target)?;
            for (i, e) in m.0.iter().enumerate() {
                if *e > 0 {
                    term = term.mul(&coords[i].pow(*e as i64)?)?;
                }
            }
            acc = acc.add(&term)?;
        }
        Ok(acc)
    }

    /// Coefficients with respect to the last variable, specialized at a
    /// prefix of n-1 coordinates, all at one common index (at least
    /// `index_hint`).  Used to solve for the last coordinate.
    pub fn specialize_last_var(
        &self,
        prefix: &[RatFunc],
        index_hint: u32,
    ) -> Result<Vec<RatFunc>> {
        let n = self.nvars;
        if prefix.len() + 1 != n {
            return Err(Error::ArityMismatch {
                expected: n - 1,
                got: prefix.len(),
            });
        }
        let mut target = lcm_u32(self.index, index_hint);
        for x in prefix {
            target = lcm_u32(target, x.index());
        }
        let by_deg = self.coeffs_wrt(n);
        let top = by_deg.keys().max().copied().unwrap_or(0);
        let mut out = Vec::with_capacity(top as usize + 1);
        for d in 0..=top {
            match by_deg.get(&d) {
                None => out.push(RatFunc::zero(&self.field, target)),
                Some(c) => {
                    let dropped = c.drop_var(n)?;
                    let value = if n == 1 {
                        RatFunc::from_poly(dropped.constant_coeff(), self.index)?
                    } else {
                        dropped.evaluate(prefix)?
                    };
                    out.push(value.reindex(target)?);
                }
            }
        }
        Ok(out)
    }

    /// Canonical scaling: primitive over k[T] with the lex-leading
    /// coefficient monic in T.
    fn normalized_primitive(&self) -> Result<MultiPoly> {
        let prim = self.content_primitive()?.primitive;
        let lead_t = prim
            .lex_lead()
            .and_then(|(_, c)| c.lc().cloned())
            .expect("nonzero");
        if lead_t.is_one() {
            return Ok(prim);
        }
        let inv = lead_t.inv()?;
        prim.map_coeffs(prim.index, |c| Ok(c.mul_c(&inv)))
    }

    /// Greatest common divisor in k(T)[X_1..X_n], returned primitive over
    /// k[T] with the fixed normalization, computed by primitive remainder
    /// sequences one variable at a time.
    pub fn multivar_gcd(f: &MultiPoly, g: &MultiPoly) -> Result<MultiPoly> {
        debug_assert_eq!(f.nvars, g.nvars);
        let (f, g) = unify_index(f, g)?;
        let raw = gcd_rec(&f, &g)?;
        if raw.is_zero() {
            return Ok(raw);
        }
        raw.normalized_primitive()
    }

    /// Resultant with respect to one variable: the determinant of the
    /// Sylvester matrix with f's rows first, computed fraction-free.
    pub fn resultant(f: &MultiPoly, g: &MultiPoly, var: usize) -> Result<MultiPoly> {
        let (f, g) = unify_index(f, g)?;
        let df = f.deg_in(var).unwrap_or(0) as usize;
        let dg = g.deg_in(var).unwrap_or(0) as usize;
        if df == 0 || dg == 0 {
            return Err(Error::DegreeZeroInVariable { var });
        }
        let fc = f.coeffs_wrt(var);
        let gc = g.coeffs_wrt(var);
        let zero = MultiPoly::zero(&f.field, f.index, f.nvars);
        let size = df + dg;
        let mut matrix = vec![vec![zero.clone(); size]; size];
        // dg rows of f's coefficients, descending powers.
        for row in 0..dg {
            for (e, c) in &fc {
                let col = row + df - *e as usize;
                matrix[row][col] = c.clone();
            }
        }
        // df rows of g's coefficients.
        for row in 0..df {
            for (e, c) in &gc {
                let col = row + dg - *e as usize;
                matrix[dg + row][col] = c.clone();
            }
        }
        bareiss_determinant(matrix, &zero)
    }

    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let var_t = if self.index == 1 { "t" } else { "T" };
        let mut out = String::new();
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let (neg, mag) = split_sign(c);
            if first {
                if neg {
                    out.push('-');
                }
                first = false;
            } else if neg {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            out.push_str(&format_term(&mag, m, var_t));
        }
        out
    }
}

/// Pull a printable sign out of a k[T] coefficient: a polynomial all of
/// whose printed terms would be negative prints as -(...).
fn split_sign(c: &KPoly) -> (bool, KPoly) {
    if let Some(r) = c.lc().and_then(|l| l.as_rational()) {
        use num_traits::Signed;
        if r.is_negative() {
            return (true, c.neg());
        }
    }
    (false, c.clone())
}

fn format_term(c: &KPoly, m: &Monomial, var_t: &str) -> String {
    let mono = {
        let mut parts: Vec<String> = Vec::new();
        for (i, e) in m.0.iter().enumerate() {
            if *e == 1 {
                parts.push(format!("X{}", i + 1));
            } else if *e > 1 {
                parts.push(format!("X{}^{}", i + 1, e));
            }
        }
        parts.join("*")
    };
    let nterms = c.coeffs().iter().filter(|x| !x.is_zero()).count();
    let ctext = c.format_var(var_t);
    if mono.is_empty() {
        // A bare multi-term coefficient would let a preceding minus
        // distribute over its first term only.
        return if nterms > 1 {
            format!("({ctext})")
        } else {
            ctext
        };
    }
    if c.is_one() {
        return mono;
    }
    if nterms > 1 || ctext.contains('/') {
        format!("({ctext})*{mono}")
    } else {
        format!("{ctext}*{mono}")
    }
}

fn lcm_u32(a: u32, b: u32) -> u32 {
    let g = crate::constants::gcd_u64(a as u64, b as u64) as u32;
    a / g * b
}

fn unify_index(f: &MultiPoly, g: &MultiPoly) -> Result<(MultiPoly, MultiPoly)> {
    if f.index == g.index {
        return Ok((f.clone(), g.clone()));
    }
    let l = lcm_u32(f.index, g.index);
    Ok((f.reindex(l)?, g.reindex(l)?))
}

/// Recursive gcd: strip contents with respect to the first live variable,
/// run a primitive PRS on the primitive parts, recurse on the contents.
fn gcd_rec(f: &MultiPoly, g: &MultiPoly) -> Result<MultiPoly> {
    if f.is_zero() {
        return Ok(g.clone());
    }
    if g.is_zero() {
        return Ok(f.clone());
    }
    if f.is_x_free() && g.is_x_free() {
        let c = KPoly::gcd(&f.constant_coeff(), &g.constant_coeff());
        return Ok(MultiPoly::from_kpoly(c, f.index, f.nvars));
    }
    // First variable live in either operand.
    let var = (1..=f.nvars)
        .find(|v| f.deg_in(*v).unwrap_or(0) > 0 || g.deg_in(*v).unwrap_or(0) > 0)
        .expect("some variable is live");
    let (cont_f, prim_f) = content_wrt(f, var)?;
    let (cont_g, prim_g) = content_wrt(g, var)?;
    let cont_gcd = gcd_rec(&cont_f, &cont_g)?;

    let mut a = prim_f;
    let mut b = prim_g;
    if a.deg_in(var).unwrap_or(0) < b.deg_in(var).unwrap_or(0) {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_zero() {
        let r = pseudo_rem(&a, &b, var)?;
        a = b;
        b = match r.is_zero() {
            true => r,
            false => content_wrt(&r, var)?.1,
        };
    }
    let prim_gcd = content_wrt(&a, var)?.1;
    Ok(cont_gcd.mul(&prim_gcd))
}

/// Content with respect to one variable: the recursive gcd of the
/// var-coefficients, with the matching primitive part.
fn content_wrt(f: &MultiPoly, var: usize) -> Result<(MultiPoly, MultiPoly)> {
    let coeffs = f.coeffs_wrt(var);
    let mut cont = MultiPoly::zero(&f.field, f.index, f.nvars);
    for c in coeffs.values() {
        cont = gcd_rec(&cont, c)?;
    }
    if cont.is_zero() {
        return Ok((cont, f.clone()));
    }
    let prim = f.exact_div(&cont).ok_or_else(|| {
        Error::InvariantViolation("content does not divide its polynomial".into())
    })?;
    Ok((cont, prim))
}

/// Pseudo-remainder of a by b in one variable: repeatedly scale by b's
/// leading coefficient and cancel; the result is d^j a mod b for some j.
fn pseudo_rem(a: &MultiPoly, b: &MultiPoly, var: usize) -> Result<MultiPoly> {
    let db = b.deg_in(var).ok_or(Error::DivisionByZero)? as i64;
    let lead_b = b.lc_in(var);
    let mut r = a.clone();
    loop {
        let Some(dr) = r.deg_in(var) else {
            return Ok(r);
        };
        if (dr as i64) < db {
            return Ok(r);
        }
        let lead_r = r.lc_in(var);
        // r <- lead_b * r - lead_r * X^(dr-db) * b
        let mut shift_exp = vec![0u32; r.nvars];
        shift_exp[var - 1] = dr - db as u32;
        let shift = Monomial(shift_exp);
        let scaled = r.mul(&lead_b);
        let sub = b.mul(&lead_r).mul_term(&shift, &KPoly::one(&r.field));
        r = scaled.sub(&sub);
    }
}

/// Fraction-free determinant (Bareiss) with column pivoting; every division
/// is exact by Sylvester's identity.
fn bareiss_determinant(mut m: Vec<Vec<MultiPoly>>, zero: &MultiPoly) -> Result<MultiPoly> {
    let n = m.len();
    if n == 0 {
        return Ok(MultiPoly::one(&zero.field, zero.index, zero.nvars));
    }
    let mut sign_negative = false;
    let mut prev = MultiPoly::one(&zero.field, zero.index, zero.nvars);
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let swap = (k + 1..n).find(|i| !m[*i][k].is_zero());
            match swap {
                Some(i) => {
                    m.swap(k, i);
                    sign_negative = !sign_negative;
                }
                None => return Ok(zero.clone()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[k][k].mul(&m[i][j]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = num.exact_div(&prev).ok_or_else(|| {
                    Error::InvariantViolation("Bareiss division is not exact".into())
                })?;
            }
            m[i][k] = zero.clone();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    Ok(if sign_negative { det.neg() } else { det })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_poly, PolyContext};
    use proptest::prelude::*;

    fn f5() -> Field {
        Field::prime(5).unwrap()
    }

    fn mp(text: &str, n: usize, e: u32) -> MultiPoly {
        let ctx = PolyContext {
            field: f5(),
            index: e,
            nvars: n,
        };
        parse_poly(text, &ctx).unwrap()
    }

    #[test]
    fn content_primitive_examples() {
        let f = mp("t*X1 + t^2*X2", 2, 1);
        let rf = f.content_primitive().unwrap();
        assert_eq!(rf.content, KPoly::gen(&f5()));
        assert_eq!(rf.primitive, mp("X1 + t*X2", 2, 1));
        assert_eq!(rf.primitive.mul_kpoly(&rf.content), f);

        let g = mp("X1 + t*X2", 2, 1);
        let rg = g.content_primitive().unwrap();
        assert!(rg.content.is_one());
        assert_eq!(rg.primitive, g);

        // (t^2 - t) X1: monic content t^2 - t.
        let h = mp("(t^2 - t)*X1", 1, 1);
        let rh = h.content_primitive().unwrap();
        assert_eq!(rh.content, KPoly::from_i64_coeffs(&f5(), &[0, -1, 1]));
        assert_eq!(rh.primitive, mp("X1", 1, 1));
        assert!(matches!(
            MultiPoly::zero(&f5(), 1, 1).content_primitive(),
            Err(Error::ZeroPolynomial(_))
        ));
    }

    #[test]
    fn degrees_and_heights() {
        let f = mp("X2 - t*X1", 2, 1);
        assert_eq!(f.total_degree(), Some(1));
        assert_eq!(mp("X1^2*X2 + X3", 3, 1).total_degree(), Some(3));
        assert_eq!(mp("t^5", 1, 1).total_degree(), Some(0));
        assert_eq!(
            mp("X1 + t^3*X2 + t", 2, 1).poly_height().unwrap(),
            BigRational::from_integer(3.into())
        );
        assert_eq!(
            mp("X1 - 1", 1, 1).poly_height().unwrap(),
            BigRational::from_integer(0.into())
        );
        // T X1 at index 2 has height 1/2 relative to t.
        assert_eq!(
            mp("T*X1", 1, 2).poly_height().unwrap(),
            BigRational::new(1.into(), 2.into())
        );
    }

    #[test]
    fn gcd_examples() {
        let a = mp("X1^2 - t", 1, 1);
        assert_eq!(MultiPoly::multivar_gcd(&a, &a).unwrap(), a);

        let f = mp("X1*(X2 - t)", 2, 1);
        let g = mp("X1*(X2 - 1)", 2, 1);
        let d = MultiPoly::multivar_gcd(&f, &g).unwrap();
        assert_eq!(d, mp("X1", 2, 1));
        // Cofactors are coprime, checked by trial division.
        let cf = f.exact_div(&d).unwrap();
        let cg = g.exact_div(&d).unwrap();
        assert!(cf.exact_div(&cg).is_none());
        assert!(cg.exact_div(&cf).is_none());

        let one = MultiPoly::one(&f5(), 1, 2);
        assert_eq!(MultiPoly::multivar_gcd(&f, &one).unwrap(), one);
    }

    #[test]
    fn resultant_examples() {
        // Res_{X2}(X2 - t X1, X2 - U X1) at index 2 where t = U^2.
        let f = mp("X2 - t*X1", 2, 2); // t means T^2 at index 2
        let g = mp("X2 - T*X1", 2, 2);
        let r = MultiPoly::resultant(&f, &g, 2).unwrap();
        assert_eq!(r, mp("(T^2 - T)*X1", 2, 2));

        // Res_{X1}(X1^2 - t, X1 - 1) = 1 - t with f's rows first.
        let a = mp("X1^2 - t", 1, 1);
        let b = mp("X1 - 1", 1, 1);
        let r = MultiPoly::resultant(&a, &b, 1).unwrap();
        assert_eq!(r, mp("1 - t", 1, 1));

        // Res(f, f) = 0.
        let r = MultiPoly::resultant(&a, &a, 1).unwrap();
        assert!(r.is_zero());

        assert!(matches!(
            MultiPoly::resultant(&a, &mp("t", 1, 1), 1),
            Err(Error::DegreeZeroInVariable { var: 1 })
        ));
    }

    #[test]
    fn evaluate_examples() {
        let f = mp("X1 - t", 1, 1);
        let t = RatFunc::t(&f5(), 1).unwrap();
        assert!(f.evaluate(&[t.clone()]).unwrap().is_zero());

        let g = mp("X2 - t*X1", 2, 1);
        let inv_t = t.inv().unwrap();
        let one = RatFunc::one(&f5(), 1);
        assert!(g.evaluate(&[inv_t, one]).unwrap().is_zero());

        // (X1^2 - t) at T with e = 2: T^2 = t.
        let h = mp("X1^2 - t", 1, 1);
        let big_t = RatFunc::gen(&f5(), 2).unwrap();
        assert!(h.evaluate(&[big_t]).unwrap().is_zero());

        assert!(matches!(
            h.evaluate(&[]),
            Err(Error::ArityMismatch { .. })
        ));
    }

    #[test]
    fn exact_division() {
        let f = mp("X1^2*X2 - t*X1", 2, 1);
        let g = mp("X1", 2, 1);
        let q = f.exact_div(&g).unwrap();
        assert_eq!(q.mul(&g), f);
        assert!(f.exact_div(&mp("X2", 2, 1)).is_none());
    }

    #[test]
    fn resultant_specialization_detects_common_roots() {
        // Wherever the leading coefficient survives specialization, a common
        // root of the specialized polynomials kills the resultant; common
        // roots are found by brute-force search over F_3.
        use rand::SeedableRng;
        let f3 = Field::prime(3).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(77);
        let mut exercised = 0u32;
        for _ in 0..200 {
            let f = crate::selftest::random_mpoly(&f3, 1, 2, 2, 1, &mut rng);
            let g = crate::selftest::random_mpoly(&f3, 1, 2, 2, 1, &mut rng);
            if f.deg_in(2).unwrap_or(0) == 0 || g.deg_in(2).unwrap_or(0) == 0 {
                continue;
            }
            let r = MultiPoly::resultant(&f, &g, 2).unwrap();
            let lc = f.lc_in(2);
            for a in 0..3i64 {
                let x1 = RatFunc::constant(f3.from_i64(a), 1);
                if lc
                    .evaluate(&[x1.clone(), RatFunc::zero(&f3, 1)])
                    .unwrap()
                    .is_zero()
                {
                    continue;
                }
                for b in 0..3i64 {
                    let x2 = RatFunc::constant(f3.from_i64(b), 1);
                    let pt = [x1.clone(), x2];
                    if f.evaluate(&pt).unwrap().is_zero() && g.evaluate(&pt).unwrap().is_zero() {
                        assert!(
                            r.evaluate(&pt).unwrap().is_zero(),
                            "resultant misses a common root of {f} and {g}"
                        );
                        exercised += 1;
                    }
                }
            }
        }
        assert!(exercised > 0, "no common-root instances were generated");
    }

    #[test]
    fn drop_and_insert_var() {
        let f = mp("(t^2 - t)*X1", 2, 1); // lives in two variables, X2 unused
        let dropped = f.drop_var(2).unwrap();
        assert_eq!(dropped.nvars(), 1);
        assert_eq!(dropped.insert_var(2), f);
        assert!(f.drop_var(1).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn content_times_primitive_reassembles(seed in 0u64..1000) {
            use rand::SeedableRng;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let field = f5();
            let f = crate::selftest::random_mpoly(&field, 1, 2, 2, 2, &mut rng);
            prop_assume!(!f.is_zero());
            let rf = f.content_primitive().unwrap();
            prop_assert_eq!(rf.primitive.mul_kpoly(&rf.content), f);
            // The primitive part has unit content.
            prop_assert!(rf.primitive.content_primitive().unwrap().content.is_one());
        }

        #[test]
        fn resultant_vanishes_iff_gcd_positive_degree(seed in 0u64..300) {
            use rand::SeedableRng;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed ^ 0xabcdef);
            let field = Field::prime(3).unwrap();
            let f = crate::selftest::random_mpoly(&field, 1, 2, 2, 1, &mut rng);
            let g = crate::selftest::random_mpoly(&field, 1, 2, 2, 1, &mut rng);
            prop_assume!(f.deg_in(1).unwrap_or(0) > 0 && g.deg_in(1).unwrap_or(0) > 0);
            let r = MultiPoly::resultant(&f, &g, 1).unwrap();
            let d = MultiPoly::multivar_gcd(&f, &g).unwrap();
            prop_assert_eq!(r.is_zero(), d.deg_in(1).unwrap_or(0) > 0);
        }

        #[test]
        fn height_subadditive_under_product(seed in 0u64..300) {
            use rand::SeedableRng;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed ^ 0x1234);
            let field = f5();
            let f = crate::selftest::random_mpoly(&field, 1, 2, 2, 3, &mut rng);
            let g = crate::selftest::random_mpoly(&field, 1, 2, 2, 3, &mut rng);
            prop_assume!(!f.is_zero() && !g.is_zero());
            let hf = f.poly_height().unwrap();
            let hg = g.poly_height().unwrap();
            let hfg = f.mul(&g).poly_height().unwrap();
            prop_assert!(hfg <= hf + hg);
        }
    }
}

//! The fields k(T) with T = t^{1/e}: reduced fractions, places, normalized
//! valuations, supports, and ramification over k(t).
//!
//! A finite place is stored as its monic irreducible polynomial over the
//! coefficient field; a root generating a proper extension is represented by
//! that polynomial rather than by an adjoined element, with the residue
//! degree carried along so that weighted sums stay exact.

use std::cmp::Ordering;
use std::fmt;

use crate::constants::{BinOp, Constant, Field};
use crate::error::{Error, Result};
use crate::kpoly::KPoly;

/// An element of k(T), T = t^{1/e}, as a reduced fraction: the denominator
/// is monic, coprime to the numerator, and zero is 0/1.
#[derive(Clone, PartialEq, Eq)]
pub struct RatFunc {
    index: u32,
    num: KPoly,
    den: KPoly,
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

impl PartialOrd for RatFunc {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for RatFunc {
    fn cmp(&self, other: &Self) -> Ordering {
        self.index
            .cmp(&other.index)
            .then_with(|| self.den.cmp(&other.den))
            .then_with(|| self.num.cmp(&other.num))
    }
}

/// Rejects Kummer indices divisible by the characteristic: the twisting
/// machinery always picks exponents coprime to p, so wild radical
/// extensions never arise and are refused outright.
pub(crate) fn check_tame(field: &Field, index: u32) -> Result<()> {
    if index == 0 {
        return Err(Error::WildKummerIndex { index, p: 0 });
    }
    let p = field.characteristic();
    if p > 0 && index as u64 % p == 0 {
        return Err(Error::WildKummerIndex { index, p });
    }
    Ok(())
}

impl RatFunc {
    /// Canonical fraction num/den at the given index.
    pub fn new(num: KPoly, den: KPoly, index: u32) -> Result<RatFunc> {
        check_tame(num.field(), index)?;
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RatFunc {
                index,
                den: KPoly::one(num.field()),
                num,
            });
        }
        let g = KPoly::gcd(&num, &den);
        let mut num = num.exact_div(&g).expect("gcd divides");
        let mut den = den.exact_div(&g).expect("gcd divides");
        let lead = den.lc().unwrap().clone();
        if !lead.is_one() {
            let inv = lead.inv()?;
            num = num.mul_c(&inv);
            den = den.mul_c(&inv);
        }
        Ok(RatFunc { index, num, den })
    }

    pub fn from_poly(p: KPoly, index: u32) -> Result<RatFunc> {
        let one = KPoly::one(p.field());
        RatFunc::new(p, one, index)
    }

    pub fn zero(field: &Field, index: u32) -> RatFunc {
        RatFunc {
            index,
            num: KPoly::zero(field),
            den: KPoly::one(field),
        }
    }

    pub fn one(field: &Field, index: u32) -> RatFunc {
        RatFunc {
            index,
            num: KPoly::one(field),
            den: KPoly::one(field),
        }
    }

    pub fn constant(c: Constant, index: u32) -> RatFunc {
        RatFunc {
            index,
            den: KPoly::one(c.field()),
            num: KPoly::constant(c),
        }
    }

    /// The generator T = t^{1/index}.
    pub fn gen(field: &Field, index: u32) -> Result<RatFunc> {
        check_tame(field, index)?;
        Ok(RatFunc {
            index,
            num: KPoly::gen(field),
            den: KPoly::one(field),
        })
    }

    /// The element t, i.e. T^index.
    pub fn t(field: &Field, index: u32) -> Result<RatFunc> {
        check_tame(field, index)?;
        Ok(RatFunc {
            index,
            num: KPoly::gen(field).pow(index),
            den: KPoly::one(field),
        })
    }

    pub fn field(&self) -> &Field {
        self.num.field()
    }

    pub fn index(&self) -> u32 {
        self.index
    }

    pub fn num(&self) -> &KPoly {
        &self.num
    }

    pub fn den(&self) -> &KPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The constant value when the element lies in k.
    pub fn as_constant(&self) -> Option<Constant> {
        if self.num.is_constant() && self.den.is_one() {
            Some(self.num.coeff(0))
        } else {
            None
        }
    }

    /// Re-express at a finer index: T = U^{e'/e} with U = t^{1/e'}.
    pub fn reindex(&self, e_new: u32) -> Result<RatFunc> {
        if e_new == self.index {
            return Ok(self.clone());
        }
        if e_new == 0 || e_new % self.index != 0 {
            return Err(Error::IndexNotMultiple {
                from: self.index,
                to: e_new,
            });
        }
        check_tame(self.field(), e_new)?;
        let s = e_new / self.index;
        // Inflation preserves coprimality and monic denominators.
        Ok(RatFunc {
            index: e_new,
            num: self.num.inflate(s),
            den: self.den.inflate(s),
        })
    }

    /// Bring two elements to their smallest common index.
    pub fn unified(a: &RatFunc, b: &RatFunc) -> Result<(RatFunc, RatFunc)> {
        if a.index == b.index {
            return Ok((a.clone(), b.clone()));
        }
        let g = crate::constants::gcd_u64(a.index as u64, b.index as u64) as u32;
        let l = a.index / g * b.index;
        Ok((a.reindex(l)?, b.reindex(l)?))
    }

    pub fn add(&self, other: &RatFunc) -> Result<RatFunc> {
        let (a, b) = RatFunc::unified(self, other)?;
        RatFunc::new(
            a.num.mul(&b.den).add(&b.num.mul(&a.den)),
            a.den.mul(&b.den),
            a.index,
        )
    }

    pub fn sub(&self, other: &RatFunc) -> Result<RatFunc> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc {
            index: self.index,
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &RatFunc) -> Result<RatFunc> {
        let (a, b) = RatFunc::unified(self, other)?;
        RatFunc::new(a.num.mul(&b.num), a.den.mul(&b.den), a.index)
    }

    pub fn div(&self, other: &RatFunc) -> Result<RatFunc> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (a, b) = RatFunc::unified(self, other)?;
        RatFunc::new(a.num.mul(&b.den), a.den.mul(&b.num), a.index)
    }

    pub fn inv(&self) -> Result<RatFunc> {
        RatFunc::one(self.field(), self.index).div(self)
    }

    pub fn pow(&self, e: i64) -> Result<RatFunc> {
        if e < 0 {
            return self.inv()?.pow(-e);
        }
        RatFunc::new(
            self.num.pow(e as u32),
            self.den.pow(e as u32),
            self.index,
        )
    }

    /// All places with nonzero valuation, as (place, valuation) pairs:
    /// irreducible factors of the numerator and denominator plus the place
    /// at infinity.  Finite places come first in canonical order.
    pub fn support(&self) -> Result<Vec<(Place, i64)>> {
        if self.is_zero() {
            return Err(Error::ZeroInput("support"));
        }
        let mut rows: Vec<(Place, i64)> = Vec::new();
        if !self.num.is_constant() {
            let (_, factors) = self.num.factor()?;
            for (pi, mult) in factors {
                rows.push((
                    Place::from_irreducible_unchecked(pi, self.index),
                    mult as i64,
                ));
            }
        }
        if !self.den.is_constant() {
            let (_, factors) = self.den.factor()?;
            for (pi, mult) in factors {
                rows.push((
                    Place::from_irreducible_unchecked(pi, self.index),
                    -(mult as i64),
                ));
            }
        }
        rows.sort_by(|a, b| a.0.cmp(&b.0));
        let inf = self.den.deg_i() - self.num.deg_i();
        if inf != 0 {
            rows.push((Place::infinity(self.index), inf));
        }
        Ok(rows)
    }

    pub fn to_text(&self) -> String {
        let var = if self.index == 1 { "t" } else { "T" };
        let num_txt = self.num.format_var(var);
        if self.den.is_one() {
            return num_txt;
        }
        let den_txt = self.den.format_var(var);
        let num_wrapped = if self.num.coeffs().iter().filter(|c| !c.is_zero()).count() > 1
            || num_txt.starts_with('-')
            || num_txt.contains('/')
        {
            format!("({num_txt})")
        } else {
            num_txt
        };
        let den_wrapped = if self.den.coeffs().iter().filter(|c| !c.is_zero()).count() > 1
            || self.den.degree() == Some(0)
            || den_txt.contains('/')
        {
            format!("({den_txt})")
        } else {
            den_txt
        };
        format!("{num_wrapped}/{den_wrapped}")
    }
}

/// Arithmetic entry point mirroring the constants one.
pub fn ratfunc_arithmetic(a: &RatFunc, b: &RatFunc, op: BinOp) -> Result<RatFunc> {
    if a.field() != b.field() {
        return Err(Error::FieldMismatch {
            left: a.field().to_string(),
            right: b.field().to_string(),
        });
    }
    match op {
        BinOp::Add => a.add(b),
        BinOp::Sub => a.sub(b),
        BinOp::Mul => a.mul(b),
        BinOp::Div => a.div(b),
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
enum PlaceKind {
    /// Monic irreducible polynomial in T over the coefficient field.
    Finite(KPoly),
    /// The degree place 1/T.
    Infinity,
}

/// A place of k(T), normalized so the valuation maps onto the integers.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Place {
    index: u32,
    kind: PlaceKind,
}

impl fmt::Debug for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

impl Place {
    pub fn infinity(index: u32) -> Place {
        Place {
            index,
            kind: PlaceKind::Infinity,
        }
    }

    /// The place at T = alpha.
    pub fn finite_at(alpha: &Constant, index: u32) -> Place {
        let field = alpha.field();
        let pi = KPoly::from_coeffs(field, vec![alpha.neg(), field.one()]);
        Place {
            index,
            kind: PlaceKind::Finite(pi),
        }
    }

    /// A finite place from a monic irreducible polynomial; verified.
    pub fn from_irreducible(pi: KPoly, index: u32) -> Result<Place> {
        if pi.is_constant() || !pi.is_monic() || !pi.is_irreducible()? {
            return Err(Error::InvalidModulus(
                "a finite place needs a monic irreducible polynomial".into(),
            ));
        }
        Ok(Place::from_irreducible_unchecked(pi, index))
    }

    pub(crate) fn from_irreducible_unchecked(pi: KPoly, index: u32) -> Place {
        Place {
            index,
            kind: PlaceKind::Finite(pi),
        }
    }

    pub fn index(&self) -> u32 {
        self.index
    }

    pub fn is_infinity(&self) -> bool {
        self.kind == PlaceKind::Infinity
    }

    pub fn modulus(&self) -> Option<&KPoly> {
        match &self.kind {
            PlaceKind::Finite(pi) => Some(pi),
            PlaceKind::Infinity => None,
        }
    }

    /// Degree of the residue field over the coefficient field.
    pub fn residue_degree(&self) -> u32 {
        match &self.kind {
            PlaceKind::Finite(pi) => pi.degree().unwrap_or(0) as u32,
            PlaceKind::Infinity => 1,
        }
    }

    /// The normalized valuation w(x); the zero element is rejected rather
    /// than mapped to a number.
    pub fn valuation(&self, x: &RatFunc) -> Result<i64> {
        if x.is_zero() {
            return Err(Error::ZeroInput("valuation"));
        }
        let x = x.reindex_to_place(self)?;
        match &self.kind {
            PlaceKind::Infinity => Ok(x.den.deg_i() - x.num.deg_i()),
            PlaceKind::Finite(pi) => {
                let vn = x.num.multiplicity_of(pi) as i64;
                let vd = x.den.multiplicity_of(pi) as i64;
                Ok(vn - vd)
            }
        }
    }

    pub fn to_text(&self) -> String {
        let var = if self.index == 1 { "t" } else { "T" };
        match &self.kind {
            PlaceKind::Infinity => "infinity".to_string(),
            PlaceKind::Finite(pi) => pi.format_var(var),
        }
    }
}

impl RatFunc {
    fn reindex_to_place(&self, place: &Place) -> Result<RatFunc> {
        if self.index == place.index {
            Ok(self.clone())
        } else if place.index % self.index == 0 {
            self.reindex(place.index)
        } else {
            Err(Error::IndexNotMultiple {
                from: self.index,
                to: place.index,
            })
        }
    }
}

/// Ramification index e(w|v) for a place w of k(t^{1/e}) over a place v of a
/// coarser level: the order of v's uniformizer at w.
pub fn ramification(w: &Place, v: &Place) -> Result<u32> {
    if w.index % v.index != 0 {
        return Err(Error::IndexNotMultiple {
            from: v.index,
            to: w.index,
        });
    }
    let s = w.index / v.index;
    match (&w.kind, &v.kind) {
        (PlaceKind::Infinity, PlaceKind::Infinity) => Ok(s),
        (PlaceKind::Finite(pw), PlaceKind::Finite(pv)) => {
            let lifted = pv.inflate(s);
            let e = lifted.multiplicity_of(pw);
            if e == 0 {
                Err(Error::NotAbove)
            } else {
                Ok(e)
            }
        }
        _ => Err(Error::NotAbove),
    }
}

/// The places of k(t^{1/e}) above a place of a coarser level, with their
/// ramification indices.
pub fn places_above(v: &Place, e: u32) -> Result<Vec<(Place, u32)>> {
    if e % v.index != 0 {
        return Err(Error::IndexNotMultiple {
            from: v.index,
            to: e,
        });
    }
    let s = e / v.index;
    match &v.kind {
        PlaceKind::Infinity => Ok(vec![(Place::infinity(e), s)]),
        PlaceKind::Finite(pv) => {
            let lifted = pv.inflate(s);
            let (_, factors) = lifted.factor()?;
            Ok(factors
                .into_iter()
                .map(|(pw, mult)| (Place::from_irreducible_unchecked(pw, e), mult))
                .collect())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_ratfunc;

    fn f5() -> Field {
        Field::prime(5).unwrap()
    }

    fn rf(text: &str, e: u32) -> RatFunc {
        parse_ratfunc(text, &f5(), e).unwrap()
    }

    #[test]
    fn arithmetic_reduces() {
        let a = rf("t/(t+1)", 1);
        let b = rf("1/(t+1)", 1);
        assert_eq!(a.add(&b).unwrap(), RatFunc::one(&f5(), 1));
        let c = rf("T^2 - 1", 2).div(&rf("T - 1", 2)).unwrap();
        assert_eq!(c, rf("T + 1", 2));
        let t = RatFunc::t(&f5(), 1).unwrap();
        assert_eq!(t.mul(&t.inv().unwrap()).unwrap(), RatFunc::one(&f5(), 1));
    }

    #[test]
    fn reindex_embeds() {
        let t = RatFunc::t(&f5(), 1).unwrap();
        let up = t.reindex(2).unwrap();
        assert_eq!(up, RatFunc::gen(&f5(), 2).unwrap().pow(2).unwrap());
        let x = rf("T + 1", 2);
        let up4 = x.reindex(4).unwrap();
        assert_eq!(up4, rf("T^2 + 1", 4));
        assert!(matches!(x.reindex(3), Err(Error::IndexNotMultiple { .. })));
    }

    #[test]
    fn wild_index_rejected() {
        assert!(matches!(
            RatFunc::gen(&f5(), 10),
            Err(Error::WildKummerIndex { .. })
        ));
        assert!(RatFunc::gen(&Field::rationals(), 10).is_ok());
    }

    #[test]
    fn valuations_match_paper_conventions() {
        // v_inf(t^2/(t+1)) = deg(g) - deg(f) = 1 - 2 = -1.
        let x = rf("t^2/(t + 1)", 1);
        assert_eq!(Place::infinity(1).valuation(&x).unwrap(), -1);
        // v_0(t/(t+1)) = 1.
        let y = rf("t/(t + 1)", 1);
        let v0 = Place::finite_at(&f5().zero(), 1);
        assert_eq!(v0.valuation(&y).unwrap(), 1);
        // v_1(t - 1) = 1.
        let v1 = Place::finite_at(&f5().one(), 1);
        assert_eq!(v1.valuation(&rf("t - 1", 1)).unwrap(), 1);
        // Valuation of zero is signalled, never numeric.
        assert!(matches!(
            v0.valuation(&RatFunc::zero(&f5(), 1)),
            Err(Error::ZeroInput(_))
        ));
    }

    #[test]
    fn support_shapes() {
        let t = RatFunc::t(&f5(), 1).unwrap();
        let sup = t.support().unwrap();
        assert_eq!(sup.len(), 2);
        assert_eq!(sup[0].0, Place::finite_at(&f5().zero(), 1));
        assert_eq!(sup[0].1, 1);
        assert_eq!(sup[1].0, Place::infinity(1));
        assert_eq!(sup[1].1, -1);

        // (t-1)/t^2: orders 1 at t=1, -2 at t=0, +1 at infinity.
        let x = rf("(t - 1)/t^2", 1);
        let sup = x.support().unwrap();
        let v0 = Place::finite_at(&f5().zero(), 1);
        let v1 = Place::finite_at(&f5().one(), 1);
        let byplace: std::collections::BTreeMap<_, _> = sup.into_iter().collect();
        assert_eq!(byplace[&v0], -2);
        assert_eq!(byplace[&v1], 1);
        assert_eq!(byplace[&Place::infinity(1)], 1);
    }

    #[test]
    fn product_formula_on_support() {
        // Residue-degree-weighted valuations sum to zero.
        for text in ["t", "(t - 1)/t^2", "(t^2 + 2)/(t^3 + t + 1)", "3*t^4/(t+4)"] {
            let x = rf(text, 1);
            let total: i64 = x
                .support()
                .unwrap()
                .iter()
                .map(|(w, v)| w.residue_degree() as i64 * v)
                .sum();
            assert_eq!(total, 0, "product formula fails for {text}");
        }
    }

    #[test]
    fn valuation_is_additive() {
        let x = rf("(t^2 + 2)/(t + 1)", 1);
        let y = rf("t^3/(t + 2)", 1);
        let xy = x.mul(&y).unwrap();
        let mut places: Vec<Place> = Vec::new();
        for s in [x.support().unwrap(), y.support().unwrap()] {
            for (w, _) in s {
                if !places.contains(&w) {
                    places.push(w);
                }
            }
        }
        for w in places {
            assert_eq!(
                w.valuation(&xy).unwrap(),
                w.valuation(&x).unwrap() + w.valuation(&y).unwrap()
            );
        }
    }

    #[test]
    fn ramification_pattern_of_radical_extensions() {
        // Over t = 0 the extension is totally ramified: e(w|v) = 3.
        let v0 = Place::finite_at(&f5().zero(), 1);
        let w0 = Place::finite_at(&f5().zero(), 3);
        assert_eq!(ramification(&w0, &v0).unwrap(), 3);
        // Over t = alpha != 0 it is unramified: beta = 3 has beta^3 = 2.
        let v2 = Place::finite_at(&f5().from_i64(2), 1);
        let w_beta = Place::finite_at(&f5().from_i64(3), 3);
        assert_eq!(ramification(&w_beta, &v2).unwrap(), 1);
        // Infinity over infinity at index 2.
        assert_eq!(
            ramification(&Place::infinity(2), &Place::infinity(1)).unwrap(),
            2
        );
        // Not lying above.
        let v1 = Place::finite_at(&f5().one(), 1);
        assert!(matches!(ramification(&w0, &v1), Err(Error::NotAbove)));
    }

    #[test]
    fn places_above_cover_with_full_degree() {
        // Sum of e(w|v) * f(w|v) over w | v equals the extension degree.
        for alpha in 0..5 {
            let v = Place::finite_at(&f5().from_i64(alpha), 1);
            for e in [2u32, 3, 4, 6] {
                let above = places_above(&v, e).unwrap();
                let total: u32 = above
                    .iter()
                    .map(|(w, ram)| ram * w.residue_degree() / v.residue_degree())
                    .sum();
                assert_eq!(total, e, "degree sum fails over t={alpha} at e={e}");
            }
        }
    }

    #[test]
    fn coherence_of_valuations() {
        // v(x) = (1/e) sum over w|v of relative-degree-weighted w(x).
        let x = rf("(t^2 - 1)/(t^3 + 2*t + 4)", 1);
        for e in [2u32, 3, 6] {
            let lifted = x.reindex(e).unwrap();
            for (v, vx) in x.support().unwrap() {
                let mut acc = 0i64;
                for (w, _) in places_above(&v, e).unwrap() {
                    let rel = (w.residue_degree() / v.residue_degree()) as i64;
                    acc += rel * w.valuation(&lifted).unwrap();
                }
                assert_eq!(acc, e as i64 * vx);
            }
        }
    }

    #[test]
    fn display_round_trips() {
        for text in ["t", "(t + 1)/t", "(t^2 + 4*t + 1)/(t + 3)", "0", "3"] {
            let x = rf(text, 1);
            let shown = x.to_text();
            assert_eq!(
                parse_ratfunc(&shown, &f5(), 1).unwrap(),
                x,
                "{text} -> {shown}"
            );
        }
    }
}

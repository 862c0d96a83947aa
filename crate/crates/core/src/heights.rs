//! Weil heights of elements and tuples relative to k(t), the twisting
//! endomorphism T -> T^M, and Kummer minimal polynomials with the
//! degree-ratio height formula.
//!
//! The height of x in k(t^{1/e}) is (1/e) times the residue-degree-weighted
//! sum of max{0, -w(x)} over the places of k(t^{1/e}); tuples take the
//! maximum over coordinates place by place.  Everything returns exact
//! rationals.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::constants::{adjoin_root_of_unity, Field, FieldKind};
use crate::error::{Error, Result};
use crate::kpoly::KPoly;
use crate::mpoly::MultiPoly;
use crate::ratfunc::{Place, RatFunc};

/// A point of affine n-space with coordinates in one Kummer field.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AlgPoint {
    index: u32,
    coords: Vec<RatFunc>,
}

impl AlgPoint {
    /// Coordinates are brought to their least common index.
    pub fn new(coords: Vec<RatFunc>) -> Result<AlgPoint> {
        if coords.is_empty() {
            return Err(Error::ArityMismatch {
                expected: 1,
                got: 0,
            });
        }
        let mut target = 1u64;
        for x in &coords {
            let g = crate::constants::gcd_u64(target, x.index() as u64);
            target = target / g * x.index() as u64;
        }
        let target = u32::try_from(target)
            .map_err(|_| Error::InvariantViolation("common Kummer index overflows".into()))?;
        let coords = coords
            .into_iter()
            .map(|x| x.reindex(target))
            .collect::<Result<Vec<_>>>()?;
        Ok(AlgPoint {
            index: target,
            coords,
        })
    }

    pub fn index(&self) -> u32 {
        self.index
    }

    pub fn n(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[RatFunc] {
        &self.coords
    }

    pub fn field(&self) -> &Field {
        self.coords[0].field()
    }

    pub fn to_text(&self) -> String {
        self.coords
            .iter()
            .map(|c| c.to_text())
            .collect::<Vec<_>>()
            .join(", ")
    }
}

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// h(x) = (1/e) sum over the support of deg(w) * max{0, -w(x)}; h(0) = 0 by
/// convention.
pub fn height_element(x: &RatFunc) -> Result<BigRational> {
    if x.is_zero() {
        return Ok(BigRational::from_integer(0.into()));
    }
    let mut acc = BigRational::from_integer(0.into());
    for (w, v) in x.support()? {
        if v < 0 {
            acc += ratio(w.residue_degree() as i64 * -v, x.index() as i64);
        }
    }
    Ok(acc)
}

/// Tuple height: the union of the coordinate supports, with the maximum of
/// {0, -w(x_1), ..., -w(x_n)} at each place.
pub fn height_tuple(point: &AlgPoint) -> Result<BigRational> {
    let mut places: Vec<Place> = Vec::new();
    for x in point.coords() {
        if x.is_zero() {
            continue;
        }
        for (w, _) in x.support()? {
            if !places.contains(&w) {
                places.push(w);
            }
        }
    }
    let mut acc = BigRational::from_integer(0.into());
    for w in places {
        let mut worst: i64 = 0;
        for x in point.coords() {
            if x.is_zero() {
                continue;
            }
            let v = w.valuation(x)?;
            worst = worst.max(-v);
        }
        if worst > 0 {
            acc += ratio(w.residue_degree() as i64 * worst, point.index() as i64);
        }
    }
    Ok(acc)
}

fn check_twist_exponent(field: &Field, m: u64) -> Result<()> {
    if m <= 1 {
        return Err(Error::InvalidM {
            m,
            reason: "the twist exponent must exceed 1".into(),
        });
    }
    let p = field.characteristic();
    if p > 0 && m % p == 0 {
        return Err(Error::InvalidM {
            m,
            reason: format!("must be coprime to the characteristic {p}"),
        });
    }
    Ok(())
}

/// The twist T -> T^M on k(T), the branch of t -> t^M fixing the chosen
/// Kummer generators.  Multiplies heights by M.
pub fn sigma_element(x: &RatFunc, m: u64) -> Result<RatFunc> {
    check_twist_exponent(x.field(), m)?;
    let m32 = u32::try_from(m).map_err(|_| Error::InvalidM {
        m,
        reason: "twist exponent out of range".into(),
    })?;
    RatFunc::new(x.num().inflate(m32), x.den().inflate(m32), x.index())
}

/// Coordinate-wise twist of a point.
pub fn sigma_point(point: &AlgPoint, m: u64) -> Result<AlgPoint> {
    let coords = point
        .coords()
        .iter()
        .map(|x| sigma_element(x, m))
        .collect::<Result<Vec<_>>>()?;
    AlgPoint::new(coords)
}

/// Apply the twist to every coefficient of a polynomial (same index).
pub fn sigma_poly(f: &MultiPoly, m: u64) -> Result<MultiPoly> {
    check_twist_exponent(f.field(), m)?;
    let m32 = u32::try_from(m).unwrap();
    f.map_coeffs(f.index(), |c| Ok(c.inflate(m32)))
}

/// The inverse twist on coefficients, expressed at the refined index e*M:
/// a coefficient c(T) becomes c(U) where U = t^{1/(eM)}, while f itself
/// re-expressed at e*M has coefficients c(U^M).
pub fn sigma_inverse_poly(f: &MultiPoly, m: u64) -> Result<MultiPoly> {
    check_twist_exponent(f.field(), m)?;
    let m32 = u32::try_from(m).unwrap();
    let new_index = f
        .index()
        .checked_mul(m32)
        .ok_or(Error::InvalidM {
            m,
            reason: "refined index overflows".into(),
        })?;
    crate::ratfunc::check_tame(f.field(), new_index)?;
    // Coefficients are carried over verbatim; only the index changes.
    f.map_coeffs(new_index, |c| Ok(c.clone()))
}

/// A minimal polynomial in z over k(T) at some index: degree d, reduced
/// coprime coefficients in k[T] of maximal T-degree D, giving the height
/// D/(d*e).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinPolyRep {
    index: u32,
    /// Coefficients of z^0..z^d, polynomials in T with no common divisor.
    coeffs: Vec<KPoly>,
}

impl MinPolyRep {
    pub fn new(coeffs: Vec<KPoly>, index: u32) -> Result<MinPolyRep> {
        if coeffs.last().is_none_or(|c| c.is_zero()) {
            return Err(Error::ZeroPolynomial("minimal polynomial"));
        }
        Ok(MinPolyRep { index, coeffs })
    }

    pub fn index(&self) -> u32 {
        self.index
    }

    /// Degree d in z.
    pub fn degree(&self) -> u32 {
        (self.coeffs.len() - 1) as u32
    }

    /// Max T-degree D of the reduced coefficients.
    pub fn t_height(&self) -> u32 {
        self.coeffs
            .iter()
            .map(|c| c.degree().unwrap_or(0) as u32)
            .max()
            .unwrap_or(0)
    }

    pub fn coeffs(&self) -> &[KPoly] {
        &self.coeffs
    }

    pub fn to_text(&self) -> String {
        let var_t = if self.index == 1 { "t" } else { "T" };
        let mut parts: Vec<String> = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let z = match i {
                0 => String::new(),
                1 => "z".to_string(),
                _ => format!("z^{i}"),
            };
            let nterms = c.coeffs().iter().filter(|x| !x.is_zero()).count();
            let ctxt = c.format_var(var_t);
            let piece = if z.is_empty() {
                format!("({ctxt})")
            } else if c.is_one() {
                z
            } else if nterms > 1 || ctxt.starts_with('-') || ctxt.contains('/') {
                format!("({ctxt})*{z}")
            } else {
                format!("{ctxt}*{z}")
            };
            parts.push(piece);
        }
        parts.join(" + ")
    }
}

/// Height from a minimal-polynomial representative: D/(d*e).
pub fn height_via_min_poly(rep: &MinPolyRep) -> BigRational {
    ratio(
        rep.t_height() as i64,
        rep.degree() as i64 * rep.index() as i64,
    )
}

/// The minimal polynomial over k(t) of an element of k(t^{1/e}), built as
/// the product of z - x(zeta^j T) over the distinct conjugates and cleared
/// to coprime coefficients in k[t].
///
/// Roots of unity are adjoined as needed; the result's coefficients are
/// verified to land back in the base field.  Over the rationals only
/// e <= 2 is possible.
pub fn min_poly_of_kummer(x: &RatFunc) -> Result<MinPolyRep> {
    let e = x.index();
    let field = x.field().clone();
    if field.kind() == FieldKind::Rationals && e > 2 {
        return Err(Error::UnsupportedOverRationals(
            "Kummer minimal polynomials need roots of unity of order e",
        ));
    }
    if e == 1 {
        // z - x cleared: den * z - num.
        let coeffs = vec![x.num().neg(), x.den().clone()];
        return MinPolyRep::new(coeffs, 1);
    }
    let adjoined = adjoin_root_of_unity(&field, e as u64)?;
    let big = adjoined.field.clone();
    let embed = &adjoined.embed;
    let num_up = x.num().map_coeffs(&big, |c| embed.apply(c))?;
    let den_up = x.den().map_coeffs(&big, |c| embed.apply(c))?;
    let x_up = RatFunc::new(num_up, den_up, e)?;

    // Distinct conjugates x(zeta^j T).
    let mut conjugates: Vec<RatFunc> = Vec::new();
    let mut zeta_j = big.one();
    for _ in 0..e {
        let cand = RatFunc::new(
            x_up.num().scale_arg(&zeta_j),
            x_up.den().scale_arg(&zeta_j),
            e,
        )?;
        if !conjugates.contains(&cand) {
            conjugates.push(cand);
        }
        zeta_j = zeta_j.mul(&adjoined.root);
    }
    let d = conjugates.len();
    if e as usize % d != 0 {
        return Err(Error::InvariantViolation(
            "conjugate orbit size does not divide the Kummer index".into(),
        ));
    }

    // prod (z - x_j) with coefficients in k'(T), Galois-symmetric.
    let mut poly: Vec<RatFunc> = vec![RatFunc::one(&big, e)];
    for conj in &conjugates {
        let mut next = vec![RatFunc::zero(&big, e); poly.len() + 1];
        for (i, c) in poly.iter().enumerate() {
            next[i + 1] = next[i + 1].add(c)?;
            next[i] = next[i].sub(&c.mul(conj)?)?;
        }
        poly = next;
    }

    // Clear denominators: multiply by the lcm of the denominators.
    let mut common = KPoly::one(&big);
    for c in &poly {
        let g = KPoly::gcd(&common, c.den());
        common = common.mul(&c.den().exact_div(&g).expect("gcd divides"));
    }
    let mut cleared: Vec<KPoly> = Vec::with_capacity(poly.len());
    for c in &poly {
        let scale = common.exact_div(c.den()).expect("lcm clears");
        cleared.push(c.num().mul(&scale));
    }
    // Remove content.
    let mut content = KPoly::zero(&big);
    for c in &cleared {
        content = KPoly::gcd(&content, c);
    }
    let cleared: Vec<KPoly> = cleared
        .iter()
        .map(|c| c.exact_div(&content).expect("content divides"))
        .collect();

    // Coefficients are invariant under T -> zeta T, so exponents are
    // multiples of e; rewrite in t and project constants back to k.
    let mut out: Vec<KPoly> = Vec::with_capacity(cleared.len());
    for c in &cleared {
        let deflated = c.deflate(e).ok_or_else(|| {
            Error::InvariantViolation("minimal polynomial coefficient is not in k(t)".into())
        })?;
        let projected = deflated.map_coeffs(&field, |cc| {
            if big == field {
                Ok(cc.clone())
            } else {
                cc.project_to_prime(&field).map_err(|_| {
                    Error::InvariantViolation(
                        "minimal polynomial coefficient leaves the base field".into(),
                    )
                })
            }
        })?;
        out.push(projected);
    }
    MinPolyRep::new(out, 1)
}

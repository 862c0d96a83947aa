//! The certificate machinery: the twist dichotomy for reduced polynomials,
//! the divisibility witness behind it, twist-invariant normalization, and
//! the recursive elimination that produces a pair (C, Z) — a positive
//! rational C and a constant-field variety Z such that every point of the
//! input variety off Z has height at least C.
//!
//! The recursion replaces irreducible factorization by gcd splitting
//! against the inverse twist: a factor shared with the twist is either the
//! whole polynomial (then it is twist-invariant and defined over k) or a
//! proper factor (then both halves recurse); coprimality feeds the
//! resultant elimination step.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::constants::Constant;
use crate::error::{Error, Result};
use crate::heights::{height_tuple, sigma_inverse_poly, sigma_point, AlgPoint};
use crate::kpoly::KPoly;
use crate::mpoly::{Monomial, MultiPoly};
use crate::ratfunc::RatFunc;

const MAX_RECURSION_DEPTH: u32 = 256;

/// The smallest twist exponent admissible for a reduced polynomial:
/// M > 1, M at least twice the coefficient T-degree, and coprime to the
/// characteristic.
pub fn choose_m(f: &MultiPoly) -> Result<u64> {
    let ht = f.t_height().ok_or(Error::ZeroPolynomial("twist exponent"))? as u64;
    let p = f.field().characteristic();
    let mut m = (2 * ht).max(2);
    while p > 0 && m % p == 0 {
        m += 1;
    }
    Ok(m)
}

/// The exact quotient (g(T^M) - g(T)) / (T^M - T); exists for every g.
pub fn divisibility_witness(g: &KPoly, m: u64) -> Result<KPoly> {
    if m < 2 {
        return Err(Error::InvalidM {
            m,
            reason: "the divisibility witness needs M > 1".into(),
        });
    }
    let m32 = u32::try_from(m).map_err(|_| Error::InvalidM {
        m,
        reason: "twist exponent out of range".into(),
    })?;
    let field = g.field();
    let twisted = g.inflate(m32).sub(g);
    if twisted.is_zero() {
        return Ok(KPoly::zero(field));
    }
    let modulus = KPoly::gen(field).pow(m32).sub(&KPoly::gen(field));
    twisted.exact_div(&modulus).ok_or_else(|| {
        Error::InvariantViolation("T^M - T fails to divide the twist difference".into())
    })
}

/// Outcome of the twist dichotomy.
#[derive(Debug, Clone)]
pub enum CertOutcome {
    /// f vanishes at the twisted point as well.
    ZeroAtTwist,
    /// A certified height lower bound, with the nonzero twist value kept
    /// as evidence.
    LowerBound { bound: BigRational, zeta: RatFunc },
}

/// Certificate returned by [`dichotomy_check`].
#[derive(Debug, Clone)]
pub struct HeightCert {
    pub m: u64,
    pub d: u32,
    pub n: usize,
    /// Kummer index the polynomial is reduced over.
    pub index: u32,
    pub outcome: CertOutcome,
}

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn validate_twist_exponent(f: &MultiPoly, m: u64) -> Result<()> {
    let ht = f.t_height().unwrap_or(0) as u64;
    let p = f.field().characteristic();
    if m < 2 || m < 2 * ht {
        return Err(Error::InvalidM {
            m,
            reason: format!("needs M > 1 and M >= 2 h_T(f) = {}", 2 * ht),
        });
    }
    if p > 0 && m % p == 0 {
        return Err(Error::InvalidM {
            m,
            reason: format!("must be coprime to the characteristic {p}"),
        });
    }
    Ok(())
}

/// The twist dichotomy for a reduced polynomial f and a point P on its zero
/// set: either f vanishes at the twisted point, or the height of P is at
/// least 1/(2 d n e).  The lower bound is verified against the actual
/// height before it is returned, never assumed.
pub fn dichotomy_check(f: &MultiPoly, point: &AlgPoint, m: Option<u64>) -> Result<HeightCert> {
    let reduced = f.content_primitive()?;
    if !reduced.content.is_one() {
        return Err(Error::NotReduced(format!(
            "coefficients share the divisor {:?}",
            reduced.content
        )));
    }
    let d = f.total_degree().unwrap_or(0);
    if d == 0 {
        return Err(Error::NotReduced("constant in every variable".into()));
    }
    if point.n() != f.nvars() {
        return Err(Error::ArityMismatch {
            expected: f.nvars(),
            got: point.n(),
        });
    }
    let value = f.evaluate(point.coords())?;
    if !value.is_zero() {
        return Err(Error::NotOnVariety {
            value: value.to_text(),
        });
    }
    let m = match m {
        Some(m) => {
            validate_twist_exponent(f, m)?;
            m
        }
        None => choose_m(f)?,
    };
    let twisted = sigma_point(point, m)?;
    let zeta = f.evaluate(twisted.coords())?;
    let n = f.nvars();
    if zeta.is_zero() {
        return Ok(HeightCert {
            m,
            d,
            n,
            index: f.index(),
            outcome: CertOutcome::ZeroAtTwist,
        });
    }
    let bound = ratio(1, 2 * d as i64 * n as i64 * f.index() as i64);
    let height = height_tuple(point)?;
    if height < bound {
        return Err(Error::InvariantViolation(format!(
            "dichotomy bound {bound} exceeds the height {height} of a point with nonzero twist \
             value; f = {f}, P = ({})",
            point.to_text()
        )));
    }
    Ok(HeightCert {
        m,
        d,
        n,
        index: f.index(),
        outcome: CertOutcome::LowerBound { bound, zeta },
    })
}

/// Test whether the inverse twist of a primitive polynomial is proportional
/// to it over k(U); if so the polynomial is forced over k and is returned
/// scaled by its leading coefficient.
pub fn sigma_invariant_normalize(f: &MultiPoly) -> Result<Option<MultiPoly>> {
    let reduced = f.content_primitive()?;
    if !reduced.content.is_one() {
        return Err(Error::NotReduced(
            "twist-invariance test needs a primitive polynomial".into(),
        ));
    }
    let m = choose_m(f)?;
    let m32 = m as u32;
    // Coefficients c(U) of the inverse twist against c(U^M) of f itself,
    // compared by cross-multiplication against the lex-leading pair.
    let (_, lead) = f.lex_lead().expect("nonzero");
    let lead_tw = lead.clone();
    let lead_up = lead.inflate(m32);
    for (_, c) in f.terms() {
        let a = c.clone();
        let b = c.inflate(m32);
        if a.mul(&lead_up) != b.mul(&lead_tw) {
            return Ok(None);
        }
    }
    // Proportionality plus primitivity forces constant coefficients.
    if f.t_height().unwrap_or(0) != 0 {
        return Err(Error::InvariantViolation(format!(
            "twist-proportional primitive polynomial has a nonconstant coefficient: {f}"
        )));
    }
    let lead_c = lead.coeff(0);
    let inv = lead_c.inv()?;
    let scaled = f.map_coeffs(f.index(), |c| Ok(c.mul_c(&inv)))?;
    Ok(Some(scaled))
}

/// A finite union of components, each cut out by polynomials with constant
/// coefficients: a variety defined over k.  Membership means some
/// component's polynomials all vanish.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KVariety {
    nvars: usize,
    components: Vec<Vec<MultiPoly>>,
}

impl KVariety {
    pub fn empty(nvars: usize) -> KVariety {
        KVariety {
            nvars,
            components: Vec::new(),
        }
    }

    /// The zero set of a single polynomial over k.
    pub fn from_poly(f: MultiPoly) -> Result<KVariety> {
        let nvars = f.nvars();
        let z = KVariety {
            nvars,
            components: vec![vec![f]],
        };
        z.validate()?;
        Ok(z)
    }

    pub fn from_components(nvars: usize, components: Vec<Vec<MultiPoly>>) -> Result<KVariety> {
        let z = KVariety { nvars, components };
        z.validate()?;
        Ok(z)
    }

    /// Machine check of the constant-coefficients invariant, and that every
    /// component cuts out a proper subvariety.
    pub fn validate(&self) -> Result<()> {
        for comp in &self.components {
            if comp.is_empty() {
                return Err(Error::InvariantViolation(
                    "a variety component with no equations is all of affine space".into(),
                ));
            }
            let mut proper = false;
            for poly in comp {
                if poly.nvars() != self.nvars {
                    return Err(Error::AmbientMismatch {
                        left: self.nvars,
                        right: poly.nvars(),
                    });
                }
                if poly.t_height().unwrap_or(0) != 0 {
                    return Err(Error::InvariantViolation(format!(
                        "variety coefficient has positive T-degree: {poly}"
                    )));
                }
                if poly.total_degree().unwrap_or(0) > 0 {
                    proper = true;
                }
            }
            if !proper {
                return Err(Error::InvariantViolation(
                    "variety component has no nonconstant equation".into(),
                ));
            }
        }
        Ok(())
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn components(&self) -> &[Vec<MultiPoly>] {
        &self.components
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn contains(&self, point: &AlgPoint) -> Result<bool> {
        for comp in &self.components {
            let mut all_zero = true;
            for poly in comp {
                if !poly.evaluate(point.coords())?.is_zero() {
                    all_zero = false;
                    break;
                }
            }
            if all_zero {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Cylinder: insert a free coordinate at a 1-based position.
    pub fn insert_var(&self, pos: usize) -> KVariety {
        KVariety {
            nvars: self.nvars + 1,
            components: self
                .components
                .iter()
                .map(|comp| comp.iter().map(|p| p.insert_var(pos)).collect())
                .collect(),
        }
    }

    fn push_component(&mut self, comp: Vec<MultiPoly>) {
        if !self.components.contains(&comp) {
            self.components.push(comp);
        }
    }

    /// Set union: concatenate component lists.
    pub fn union(&self, other: &KVariety) -> KVariety {
        let mut out = self.clone();
        for comp in &other.components {
            out.push_component(comp.clone());
        }
        out
    }

    /// Set intersection: pairwise concatenation of equation lists.
    pub fn intersect(&self, other: &KVariety) -> KVariety {
        let mut out = KVariety::empty(self.nvars);
        for a in &self.components {
            for b in &other.components {
                let mut eqs = a.clone();
                for p in b {
                    if !eqs.contains(p) {
                        eqs.push(p.clone());
                    }
                }
                out.push_component(eqs);
            }
        }
        out
    }
}

/// One step of the certificate recursion, kept for reproducibility.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "step", rename_all = "snake_case")]
pub enum StepRecord {
    PrimitivePart {
        depth: u32,
        content_degree: u32,
    },
    ConstantInX {
        depth: u32,
    },
    BaseCase {
        depth: u32,
        degree: u32,
        index: u32,
        components: usize,
    },
    Resultant {
        depth: u32,
        m: u64,
        var: usize,
        degree: u32,
        index: u32,
        resultant_degree: u32,
    },
    SigmaInvariant {
        depth: u32,
        m: u64,
        degree: u32,
    },
    GcdSplit {
        depth: u32,
        m: u64,
        degree_gcd: u32,
        degree_cofactor: u32,
    },
    Combine {
        mode: String,
        parts: usize,
    },
}

/// A certified pair: every point of the input variety off Z has height at
/// least C.
#[derive(Debug, Clone)]
pub struct EpsilonPair {
    pub c: BigRational,
    pub z: KVariety,
    pub provenance: Vec<StepRecord>,
}

impl EpsilonPair {
    fn new(c: BigRational, z: KVariety, provenance: Vec<StepRecord>) -> Result<EpsilonPair> {
        if c <= BigRational::from_integer(0.into()) {
            return Err(Error::InvariantViolation(
                "certificate bound must be positive".into(),
            ));
        }
        z.validate()?;
        Ok(EpsilonPair { c, z, provenance })
    }
}

/// How [`combine_pairs`] merges varieties.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CombineMode {
    /// Several pairs valid for the same variety: intersect the Z's.
    Intersect,
    /// Pairs valid for factors covering the variety: union the Z's.
    Union,
}

/// Merge pairs for the same ambient space: the minimum bound with the
/// intersection (same variety) or union (covering factors) of the Z's.
pub fn combine_pairs(pairs: Vec<EpsilonPair>, mode: CombineMode) -> Result<EpsilonPair> {
    let Some(first) = pairs.first() else {
        return Err(Error::InvariantViolation(
            "cannot combine an empty list of pairs".into(),
        ));
    };
    let nvars = first.z.nvars();
    for p in &pairs {
        if p.z.nvars() != nvars {
            return Err(Error::AmbientMismatch {
                left: nvars,
                right: p.z.nvars(),
            });
        }
    }
    if pairs.len() == 1 {
        return Ok(pairs.into_iter().next().unwrap());
    }
    let parts = pairs.len();
    let mut c = pairs[0].c.clone();
    let mut z = pairs[0].z.clone();
    let mut provenance = pairs[0].provenance.clone();
    for p in &pairs[1..] {
        if p.c < c {
            c = p.c.clone();
        }
        z = match mode {
            CombineMode::Intersect => z.intersect(&p.z),
            CombineMode::Union => z.union(&p.z),
        };
        provenance.extend(p.provenance.iter().cloned());
    }
    provenance.push(StepRecord::Combine {
        mode: match mode {
            CombineMode::Intersect => "intersect".into(),
            CombineMode::Union => "union".into(),
        },
        parts,
    });
    EpsilonPair::new(c, z, provenance)
}

/// Dimension-one base case: the constant points of the zero set are the
/// common roots of the T-power slices; every other root has height at
/// least 1/(deg * e) by the minimal-polynomial degree bound.
pub fn base_case_dim1(g: &MultiPoly) -> Result<EpsilonPair> {
    base_case_inner(g, 0)
}

fn base_case_inner(g: &MultiPoly, depth: u32) -> Result<EpsilonPair> {
    if g.is_zero() {
        return Err(Error::ZeroPolynomial("base case"));
    }
    if g.nvars() != 1 {
        return Err(Error::AmbientMismatch {
            left: 1,
            right: g.nvars(),
        });
    }
    let g = g.content_primitive()?.primitive;
    let d = g.total_degree().unwrap_or(0);
    if d == 0 {
        return EpsilonPair::new(
            BigRational::from_integer(1.into()),
            KVariety::empty(1),
            vec![StepRecord::ConstantInX { depth }],
        );
    }
    // Slices: g = sum_j T^j g_j(X) with g_j over k.
    let field = g.field().clone();
    let mut slices: std::collections::BTreeMap<usize, Vec<Constant>> =
        std::collections::BTreeMap::new();
    for (mono, coeff) in g.terms() {
        let xdeg = mono.0[0] as usize;
        for (j, c) in coeff.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let slice = slices.entry(j).or_insert_with(Vec::new);
            if slice.len() <= xdeg {
                slice.resize(xdeg + 1, field.zero());
            }
            slice[xdeg] = slice[xdeg].add(c);
        }
    }
    let mut common = KPoly::zero(&field);
    for coeffs in slices.values() {
        let slice = KPoly::from_coeffs(&field, coeffs.clone());
        common = KPoly::gcd(&common, &slice);
        if common.is_one() {
            break;
        }
    }
    let mut z = KVariety::empty(1);
    if !common.is_constant() {
        let (_, factors) = common.factor()?;
        for (pi, _) in factors {
            let poly = kpoly_in_x(&pi, &field)?;
            z = z.union(&KVariety::from_components(1, vec![vec![poly]])?);
        }
    }
    let c = ratio(1, d as i64 * g.index() as i64);
    let components = z.components().len();
    EpsilonPair::new(
        c,
        z,
        vec![StepRecord::BaseCase {
            depth,
            degree: d,
            index: g.index(),
            components,
        }],
    )
}

/// Lift a univariate polynomial over k into a one-variable MultiPoly with
/// constant coefficients.
fn kpoly_in_x(p: &KPoly, field: &crate::constants::Field) -> Result<MultiPoly> {
    let mut terms = Vec::new();
    for (i, c) in p.coeffs().iter().enumerate() {
        if !c.is_zero() {
            terms.push((Monomial(vec![i as u32]), KPoly::constant(c.clone())));
        }
    }
    MultiPoly::from_terms(field, 1, 1, terms)
}

/// The certified pair for the zero set of one polynomial.
pub fn epsilon_hypersurface(f: &MultiPoly) -> Result<EpsilonPair> {
    rec(f, 0, None)
}

fn rec(f: &MultiPoly, depth: u32, prev_key: Option<(usize, u32)>) -> Result<EpsilonPair> {
    if depth > MAX_RECURSION_DEPTH {
        return Err(Error::InvariantViolation(
            "certificate recursion exceeded the depth cap".into(),
        ));
    }
    if f.is_zero() {
        return Err(Error::ZeroPolynomial("certificate"));
    }
    let reduced = f.content_primitive()?;
    let prim = reduced.primitive;
    let n = prim.nvars();
    let d = prim.total_degree().unwrap_or(0);
    // Termination invariant: (n, deg) decreases lexicographically.
    if let Some((pn, pd)) = prev_key {
        if !(n < pn || (n == pn && d < pd)) {
            return Err(Error::InvariantViolation(format!(
                "recursion failed to decrease: ({pn}, {pd}) -> ({n}, {d})"
            )));
        }
    }
    let key = Some((n, d));
    let mut provenance = Vec::new();
    if let Some(cd) = reduced.content.degree() {
        if cd > 0 {
            provenance.push(StepRecord::PrimitivePart {
                depth,
                content_degree: cd as u32,
            });
        }
    }
    // (0) Constant in every X: the zero set is empty.
    if d == 0 {
        provenance.push(StepRecord::ConstantInX { depth });
        return EpsilonPair::new(
            BigRational::from_integer(1.into()),
            KVariety::empty(n),
            provenance,
        );
    }
    // (1) Dimension one: slice analysis.
    if n == 1 {
        let pair = base_case_inner(&prim, depth)?;
        provenance.extend(pair.provenance);
        return EpsilonPair::new(pair.c, pair.z, provenance);
    }
    // (2)-(4): gcd against the inverse twist at the refined index.
    let m = choose_m(&prim)?;
    let e = prim.index();
    let refined = e
        .checked_mul(m as u32)
        .ok_or_else(|| Error::InvariantViolation("refined Kummer index overflows".into()))?;
    let f_up = prim.reindex(refined)?;
    let f_tw = sigma_inverse_poly(&prim, m)?;
    let g = MultiPoly::multivar_gcd(&f_up, &f_tw)?;

    if g.total_degree().unwrap_or(0) == 0 {
        // Coprime with the twist: eliminate the last live variable.
        let var = prim.last_positive_var().expect("positive degree");
        let resultant = MultiPoly::resultant(&f_up, &f_tw, var)?;
        if resultant.is_zero() {
            return Err(Error::InvariantViolation(
                "resultant of twist-coprime polynomials vanished".into(),
            ));
        }
        // Leading-coefficient guard: a common specialized root forces
        // either the resultant or the leading coefficient to vanish.
        let guarded = resultant.mul(&f_up.lc_in(var));
        provenance.push(StepRecord::Resultant {
            depth,
            m,
            var,
            degree: d,
            index: e,
            resultant_degree: guarded.total_degree().unwrap_or(0),
        });
        let projected = guarded.drop_var(var)?;
        let sub = rec(&projected, depth + 1, key)?;
        provenance.extend(sub.provenance);
        let bound = ratio(1, 2 * d as i64 * n as i64 * e as i64);
        let c = bound.min(sub.c);
        let z = sub.z.insert_var(var);
        return EpsilonPair::new(c, z, provenance);
    }

    let cofactor = f_up.exact_div(&g).ok_or_else(|| {
        Error::InvariantViolation("gcd does not divide its argument".into())
    })?;
    if cofactor.total_degree().unwrap_or(0) == 0 {
        // (3) Twist-invariant: defined over k by normalization.
        let over_k = sigma_invariant_normalize(&prim)?.ok_or_else(|| {
            Error::InvariantViolation(
                "gcd proportional to f but the twist-invariance test failed".into(),
            )
        })?;
        provenance.push(StepRecord::SigmaInvariant {
            depth,
            m,
            degree: d,
        });
        // Constant coefficients live at index 1.
        let over_k_flat = over_k.map_coeffs(1, |c| Ok(c.clone()))?;
        return EpsilonPair::new(
            BigRational::from_integer(1.into()),
            KVariety::from_poly(over_k_flat)?,
            provenance,
        );
    }

    // (4) Proper split: recurse on both factors, union the outcomes.
    provenance.push(StepRecord::GcdSplit {
        depth,
        m,
        degree_gcd: g.total_degree().unwrap_or(0),
        degree_cofactor: cofactor.total_degree().unwrap_or(0),
    });
    let left = rec(&g, depth + 1, key)?;
    let right = rec(&cofactor, depth + 1, key)?;
    let mut pair = combine_pairs(vec![left, right], CombineMode::Union)?;
    provenance.extend(pair.provenance);
    pair.provenance = provenance;
    EpsilonPair::new(pair.c, pair.z, pair.provenance)
}

/// The certified pair for a variety given by several defining polynomials:
/// each polynomial's pair, combined by intersection.
pub fn epsilon_variety(fs: &[MultiPoly]) -> Result<EpsilonPair> {
    let Some(first) = fs.first() else {
        return Err(Error::InvariantViolation(
            "a variety needs at least one defining polynomial".into(),
        ));
    };
    let n = first.nvars();
    for f in fs {
        if f.nvars() != n {
            return Err(Error::AmbientMismatch {
                left: n,
                right: f.nvars(),
            });
        }
    }
    let pairs = fs
        .iter()
        .map(epsilon_hypersurface)
        .collect::<Result<Vec<_>>>()?;
    combine_pairs(pairs, CombineMode::Intersect)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::Field;
    use crate::parse::{parse_poly, parse_tuple, PolyContext};

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

    fn point(text: &str, e: u32) -> AlgPoint {
        AlgPoint::new(parse_tuple(text, &f5(), e).unwrap()).unwrap()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn choose_m_examples() {
        // Height 0: smallest admissible is 2; 3 in characteristic 2.
        assert_eq!(choose_m(&mp("X1 + X2", 2, 1)).unwrap(), 2);
        let f2 = Field::prime(2).unwrap();
        let ctx2 = PolyContext {
            field: f2.clone(),
            index: 1,
            nvars: 2,
        };
        assert_eq!(
            choose_m(&parse_poly("X1 + X2", &ctx2).unwrap()).unwrap(),
            3
        );
        // Height 3 in characteristic 5: M = 6.
        assert_eq!(choose_m(&mp("t^3*X1 + X2", 2, 1)).unwrap(), 6);
        // Height 1 in characteristic 2: 2 is excluded, 3 works.
        assert_eq!(
            choose_m(&parse_poly("t*X1 + X2", &ctx2).unwrap()).unwrap(),
            3
        );
    }

    #[test]
    fn divisibility_witness_examples() {
        let t = KPoly::gen(&f5());
        // g = t, M = 2: (t^2 - t)/(t^2 - t) = 1.
        assert!(divisibility_witness(&t, 2).unwrap().is_one());
        // g = t^3, M = 2: (t^6 - t^3)/(t^2 - t) = t^4 + t^3 + t^2.
        let q3 = divisibility_witness(&t.pow(3), 2).unwrap();
        assert_eq!(q3, KPoly::from_i64_coeffs(&f5(), &[0, 0, 1, 1, 1]));
        // Constants are fixed: quotient 0.
        assert!(divisibility_witness(&KPoly::one(&f5()), 3)
            .unwrap()
            .is_zero());
    }

    #[test]
    fn dichotomy_lower_bound_case() {
        let f = mp("X1 - t", 1, 1);
        let p = point("t", 1);
        let cert = dichotomy_check(&f, &p, Some(2)).unwrap();
        match cert.outcome {
            CertOutcome::LowerBound { bound, zeta } => {
                assert_eq!(bound, q(1, 2));
                // zeta = t^2 - t.
                assert_eq!(zeta.to_text(), "t^2 + 4*t");
            }
            other => panic!("expected a lower bound, got {other:?}"),
        }
    }

    #[test]
    fn dichotomy_zero_at_twist_case() {
        let f = mp("X1 - 1", 1, 1);
        let p = point("1", 1);
        let cert = dichotomy_check(&f, &p, None).unwrap();
        assert!(matches!(cert.outcome, CertOutcome::ZeroAtTwist));
    }

    #[test]
    fn dichotomy_kummer_point() {
        // f = X1^2 - t at e = 1, P = (t^(1/2)): bound 1/4, h(P) = 1/2.
        let f = mp("X1^2 - t", 1, 1);
        let p = point("T", 2);
        let cert = dichotomy_check(&f, &p, None).unwrap();
        match cert.outcome {
            CertOutcome::LowerBound { bound, .. } => assert_eq!(bound, q(1, 4)),
            other => panic!("expected a lower bound, got {other:?}"),
        }
        assert_eq!(height_tuple(&p).unwrap(), q(1, 2));
    }

    #[test]
    fn dichotomy_at_higher_reduction_index() {
        // f = X1^2 - T is reduced over k[T] at index 2; its roots are
        // t^(1/4) and -t^(1/4), of height 1/4.  The bound carries the
        // reduction index: 1/(2*2*1*2) = 1/8.
        let f = mp("X1^2 - T", 1, 2);
        let p = point("T", 4);
        assert_eq!(height_tuple(&p).unwrap(), q(1, 4));
        let cert = dichotomy_check(&f, &p, None).unwrap();
        assert_eq!(cert.index, 2);
        match cert.outcome {
            CertOutcome::LowerBound { bound, .. } => assert_eq!(bound, q(1, 8)),
            other => panic!("expected a lower bound, got {other:?}"),
        }
    }

    #[test]
    fn dichotomy_rejects_bad_inputs() {
        let f = mp("X1 - t", 1, 1);
        assert!(matches!(
            dichotomy_check(&f, &point("t + 1", 1), None),
            Err(Error::NotOnVariety { .. })
        ));
        let unreduced = mp("t*X1 - t^2", 1, 1);
        assert!(matches!(
            dichotomy_check(&unreduced, &point("t", 1), None),
            Err(Error::NotReduced(_))
        ));
        // Bad explicit twist exponents.
        assert!(matches!(
            dichotomy_check(&f, &point("t", 1), Some(1)),
            Err(Error::InvalidM { .. })
        ));
        assert!(matches!(
            dichotomy_check(&f, &point("t", 1), Some(5)),
            Err(Error::InvalidM { .. })
        ));
    }

    #[test]
    fn normalize_examples() {
        let f = mp("X1 + X2", 2, 1);
        assert_eq!(sigma_invariant_normalize(&f).unwrap().unwrap(), f);
        // 2 X1 + 2 X2 is not primitive? It is: content is the unit 2 made
        // monic, i.e. 1.  Normalization divides by the leading 2.
        let g = mp("2*X1 + 2*X2", 2, 1);
        assert_eq!(
            sigma_invariant_normalize(&g).unwrap().unwrap(),
            mp("X1 + X2", 2, 1)
        );
        let h = mp("X1 + t*X2", 2, 1);
        assert!(sigma_invariant_normalize(&h).unwrap().is_none());
    }

    #[test]
    fn base_case_examples() {
        // X^2 - t: no constant roots, C = 1/2.
        let pair = base_case_dim1(&mp("X1^2 - t", 1, 1)).unwrap();
        assert_eq!(pair.c, q(1, 2));
        assert!(pair.z.is_empty());
        // (X - 1)(X - t): common slice root 1.
        let pair = base_case_dim1(&mp("X1^2 - (1 + t)*X1 + t", 1, 1)).unwrap();
        assert_eq!(pair.c, q(1, 2));
        assert_eq!(pair.z.components().len(), 1);
        assert_eq!(pair.z.components()[0][0].to_text(), "X1 + 4");
        // X - c: everything is constant, C = 1.
        let pair = base_case_dim1(&mp("X1 - 3", 1, 1)).unwrap();
        assert_eq!(pair.c, q(1, 1));
        assert_eq!(pair.z.components().len(), 1);
        // At a refined index the bound scales: X - T at e = 2 has the
        // root t^(1/2) of height 1/2, and C = 1/(1*2).
        let pair = base_case_dim1(&mp("X1 - T", 1, 2)).unwrap();
        assert_eq!(pair.c, q(1, 2));
        assert!(pair.z.is_empty());
    }

    #[test]
    fn epsilon_worked_trace() {
        // X2 - t X1 over F_5: C = 1/4 and Z = {X1 = 0}.
        let pair = epsilon_hypersurface(&mp("X2 - t*X1", 2, 1)).unwrap();
        assert_eq!(pair.c, q(1, 4));
        assert_eq!(pair.z.components().len(), 1);
        assert_eq!(pair.z.components()[0].len(), 1);
        assert_eq!(pair.z.components()[0][0].to_text(), "X1");
        // The trace: a resultant elimination, then the base case.
        assert!(pair
            .provenance
            .iter()
            .any(|s| matches!(s, StepRecord::Resultant { m: 2, var: 2, .. })));
        assert!(pair
            .provenance
            .iter()
            .any(|s| matches!(s, StepRecord::BaseCase { index: 2, .. })));
    }

    #[test]
    fn epsilon_sigma_invariant_input() {
        let pair = epsilon_hypersurface(&mp("X1 + X2", 2, 1)).unwrap();
        assert_eq!(pair.c, q(1, 1));
        assert_eq!(pair.z.components().len(), 1);
        assert_eq!(pair.z.components()[0][0].to_text(), "X1 + X2");
    }

    #[test]
    fn epsilon_constant_input() {
        let pair = epsilon_hypersurface(&mp("t^2 + t", 1, 1)).unwrap();
        assert_eq!(pair.c, q(1, 1));
        assert!(pair.z.is_empty());
    }

    #[test]
    fn epsilon_product_splits() {
        // (X1 + X2)(X2 - t X1): the twist-gcd picks out X1 + X2.
        let f = mp("(X1 + X2)*(X2 - t*X1)", 2, 1);
        let pair = epsilon_hypersurface(&f).unwrap();
        assert!(pair
            .provenance
            .iter()
            .any(|s| matches!(s, StepRecord::GcdSplit { .. })));
        // The bound is the minimum of the factors' bounds; both Z parts
        // appear in the union.
        assert!(pair.c > q(0, 1));
        assert!(pair
            .z
            .components()
            .iter()
            .any(|comp| comp.iter().any(|p| p.to_text() == "X1 + X2")));
    }

    #[test]
    fn combine_modes() {
        let zx1 = KVariety::from_poly(mp("X1", 2, 1)).unwrap();
        let zx2 = KVariety::from_poly(mp("X2", 2, 1)).unwrap();
        let a = EpsilonPair::new(q(1, 4), zx1, vec![]).unwrap();
        let b = EpsilonPair::new(q(1, 2), zx2, vec![]).unwrap();
        let meet = combine_pairs(vec![a.clone(), b.clone()], CombineMode::Intersect).unwrap();
        assert_eq!(meet.c, q(1, 4));
        assert_eq!(meet.z.components().len(), 1);
        assert_eq!(meet.z.components()[0].len(), 2);
        let join = combine_pairs(vec![a.clone(), b], CombineMode::Union).unwrap();
        assert_eq!(join.c, q(1, 4));
        assert_eq!(join.z.components().len(), 2);
        let single = combine_pairs(vec![a], CombineMode::Intersect).unwrap();
        assert_eq!(single.c, q(1, 4));
    }

    #[test]
    fn epsilon_variety_joint_system() {
        let fs = vec![mp("X1 - t", 2, 1), mp("X2 - t", 2, 1)];
        let pair = epsilon_variety(&fs).unwrap();
        assert_eq!(pair.c, q(1, 4));
        assert!(pair.z.is_empty());
        // Both defining polynomials over k: intersection keeps C = 1.
        let gs = vec![mp("X1 + X2", 2, 1), mp("X1 - X2", 2, 1)];
        let pair = epsilon_variety(&gs).unwrap();
        assert_eq!(pair.c, q(1, 1));
        assert_eq!(pair.z.components().len(), 1);
        assert_eq!(pair.z.components()[0].len(), 2);
    }

    #[test]
    fn epsilon_over_the_rationals() {
        let qf = Field::rationals();
        let ctx = PolyContext {
            field: qf.clone(),
            index: 1,
            nvars: 2,
        };
        let f = parse_poly("X2 - t*X1", &ctx).unwrap();
        let pair = epsilon_hypersurface(&f).unwrap();
        assert_eq!(pair.c, q(1, 4));
        assert_eq!(pair.z.components().len(), 1);
        assert_eq!(pair.z.components()[0][0].to_text(), "X1");
        // Base case over Q exercises rational factorization.
        let g = parse_poly("X1^2 - (1 + t)*X1 + t", &PolyContext {
            field: qf,
            index: 1,
            nvars: 1,
        })
        .unwrap();
        let pair = base_case_dim1(&g).unwrap();
        assert_eq!(pair.c, q(1, 2));
        assert_eq!(pair.z.components()[0][0].to_text(), "X1 - 1");
    }

    #[test]
    fn certificates_are_k_varieties() {
        for text in ["X2 - t*X1", "X1*X2 - t", "X1 + X2", "(X1 + X2)*(X2 - t*X1)"] {
            let pair = epsilon_hypersurface(&mp(text, 2, 1)).unwrap();
            pair.z.validate().unwrap();
            for comp in pair.z.components() {
                for poly in comp {
                    assert_eq!(poly.t_height().unwrap_or(0), 0);
                }
            }
        }
    }
}

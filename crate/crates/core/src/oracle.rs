//! Independent brute-force verification: enumerate every bounded-complexity
//! point of a Kummer field, solve defining equations for the last
//! coordinate, and check certified pairs against exhaustive search.
//!
//! Heights here are re-accumulated from the valuation primitives in a
//! separate code path from the heights module, so a verdict is an
//! independent check rather than a replay.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::bogomolov::EpsilonPair;
use crate::constants::{Constant, Field};
use crate::error::{Error, Result};
use crate::heights::AlgPoint;
use crate::kpoly::KPoly;
use crate::mpoly::MultiPoly;
use crate::ratfunc::{Place, RatFunc};

/// Bounded search domain over a finite constant field.
#[derive(Debug, Clone)]
pub struct SearchSpec {
    pub field: Field,
    pub nvars: usize,
    /// Kummer indices to sweep.
    pub indices: Vec<u32>,
    /// Bound on numerator and denominator T-degrees.
    pub degree_bound: u32,
    /// Hard cap on evaluated points and scanned prefixes.
    pub budget: u64,
    /// Restrict enumeration to the zero set of these polynomials by
    /// solving for the last coordinate.
    pub restrict: Option<Vec<MultiPoly>>,
}

pub const DEFAULT_BUDGET: u64 = 10_000_000;

impl SearchSpec {
    pub fn new(field: Field, nvars: usize, indices: Vec<u32>, degree_bound: u32) -> SearchSpec {
        SearchSpec {
            field,
            nvars,
            indices,
            degree_bound,
            budget: DEFAULT_BUDGET,
            restrict: None,
        }
    }

    fn check_finite(&self) -> Result<()> {
        if !self.field.is_finite() {
            return Err(Error::UnsupportedOverRationals(
                "exhaustive enumeration needs a finite constant field",
            ));
        }
        if self.nvars == 0 || self.indices.is_empty() {
            return Err(Error::ArityMismatch {
                expected: 1,
                got: 0,
            });
        }
        Ok(())
    }

    fn sorted_indices(&self) -> Vec<u32> {
        let mut e = self.indices.clone();
        e.sort_unstable();
        e.dedup();
        e
    }
}

/// Number of reduced fractions with numerator and denominator degree at
/// most B over F_q: exactly q^(2B+1).
pub fn element_count(q: u128, bound: u32) -> u128 {
    q.pow(2 * bound + 1)
}

/// All reduced fractions at one index with num/den degrees at most B, in a
/// deterministic order: the zero element first, then by (denominator,
/// numerator) enumeration position.
pub fn enumerate_elements(field: &Field, bound: u32, index: u32) -> Result<Vec<RatFunc>> {
    crate::ratfunc::check_tame(field, index)?;
    let q = field
        .order()
        .ok_or(Error::UnsupportedOverRationals("element enumeration"))?;
    let mut out = Vec::with_capacity(element_count(q, bound) as usize);
    out.push(RatFunc::zero(field, index));
    let mut dens: Vec<KPoly> = Vec::new();
    for deg in 0..=bound {
        let mut counter = vec![0u128; deg as usize];
        loop {
            let mut coeffs: Vec<Constant> = counter
                .iter()
                .map(|i| field.element_from_index(*i))
                .collect();
            coeffs.push(field.one());
            dens.push(KPoly::from_coeffs(field, coeffs));
            if !bump(&mut counter, q) {
                break;
            }
        }
    }
    let mut nums: Vec<KPoly> = Vec::new();
    {
        let mut counter = vec![0u128; bound as usize + 1];
        loop {
            let coeffs: Vec<Constant> = counter
                .iter()
                .map(|i| field.element_from_index(*i))
                .collect();
            let p = KPoly::from_coeffs(field, coeffs);
            if !p.is_zero() {
                nums.push(p);
            }
            if !bump(&mut counter, q) {
                break;
            }
        }
    }
    for den in &dens {
        for num in &nums {
            if KPoly::gcd(num, den).is_one() {
                let x = RatFunc::new(num.clone(), den.clone(), index)?;
                #[cfg(debug_assertions)]
                assert_coherent_duplicate(&x);
                out.push(x);
            }
        }
    }
    Ok(out)
}

/// Elements of k(t^{1/s}) reappear at index e; coherence demands that the
/// height is blind to the re-embedding.  Checked on every enumerated
/// element in debug builds.
#[cfg(debug_assertions)]
fn assert_coherent_duplicate(x: &RatFunc) {
    if x.index() == 1 || x.is_zero() {
        return;
    }
    let mut s = x.num().exponent_gcd();
    s = crate::constants::gcd_u64(s as u64, x.den().exponent_gcd() as u64) as u32;
    s = crate::constants::gcd_u64(s as u64, x.index() as u64) as u32;
    if s <= 1 {
        return;
    }
    let down = RatFunc::new(
        x.num().deflate(s).expect("exponents divisible"),
        x.den().deflate(s).expect("exponents divisible"),
        x.index() / s,
    )
    .expect("tame index");
    let a = oracle_height_element(x).expect("height");
    let b = oracle_height_element(&down).expect("height");
    assert_eq!(a, b, "coherence violated between indices");
}

fn bump(counter: &mut [u128], q: u128) -> bool {
    for digit in counter.iter_mut() {
        *digit += 1;
        if *digit < q {
            return true;
        }
        *digit = 0;
    }
    false
}

/// Every tuple of bounded reduced fractions, each index exactly once, in a
/// deterministic order.  Errors out (rather than truncating) when the
/// total exceeds the budget.
pub fn enumerate_points(spec: &SearchSpec) -> Result<Vec<AlgPoint>> {
    spec.check_finite()?;
    match &spec.restrict {
        None => {
            let q = spec.field.order().unwrap();
            let per_index = element_count(q, spec.degree_bound).pow(spec.nvars as u32);
            let required = per_index * spec.sorted_indices().len() as u128;
            if required > spec.budget as u128 {
                return Err(Error::BudgetExceeded {
                    required,
                    budget: spec.budget,
                });
            }
            let mut out = Vec::new();
            scan_unrestricted(spec, |p| {
                out.push(p.clone());
                Ok(())
            })?;
            Ok(out)
        }
        Some(fs) => {
            let mut out = Vec::new();
            scan_restricted(spec, fs, |p| {
                out.push(p.clone());
                Ok(())
            })?;
            Ok(out)
        }
    }
}

fn scan_unrestricted<F>(spec: &SearchSpec, mut visit: F) -> Result<u64>
where
    F: FnMut(&AlgPoint) -> Result<()>,
{
    let mut evaluated = 0u64;
    for e in spec.sorted_indices() {
        let elems = enumerate_elements(&spec.field, spec.degree_bound, e)?;
        let n = spec.nvars;
        let mut odo = vec![0usize; n];
        loop {
            let coords: Vec<RatFunc> = odo.iter().map(|i| elems[*i].clone()).collect();
            let point = AlgPoint::new(coords)?;
            evaluated += 1;
            if evaluated > spec.budget {
                return Err(Error::BudgetExceeded {
                    required: evaluated as u128,
                    budget: spec.budget,
                });
            }
            visit(&point)?;
            // Last coordinate fastest.
            let mut pos = n;
            loop {
                if pos == 0 {
                    break;
                }
                pos -= 1;
                odo[pos] += 1;
                if odo[pos] < elems.len() {
                    break;
                }
                odo[pos] = 0;
                if pos == 0 {
                    pos = usize::MAX;
                    break;
                }
            }
            if pos == usize::MAX {
                break;
            }
        }
    }
    Ok(evaluated)
}

/// Restricted scan: iterate prefixes of n-1 coordinates, solve the first
/// restriction polynomial for the last coordinate, and filter candidates
/// by the remaining polynomials.  Budget counts prefixes and candidates.
fn scan_restricted<F>(spec: &SearchSpec, fs: &[MultiPoly], mut visit: F) -> Result<u64>
where
    F: FnMut(&AlgPoint) -> Result<()>,
{
    let Some(first) = fs.first() else {
        return Err(Error::InvariantViolation(
            "restricted enumeration needs a polynomial".into(),
        ));
    };
    if first.nvars() != spec.nvars {
        return Err(Error::AmbientMismatch {
            left: spec.nvars,
            right: first.nvars(),
        });
    }
    let mut evaluated = 0u64;
    let charge = |evaluated: &mut u64, amount: u64| -> Result<()> {
        *evaluated += amount;
        if *evaluated > spec.budget {
            Err(Error::BudgetExceeded {
                required: *evaluated as u128,
                budget: spec.budget,
            })
        } else {
            Ok(())
        }
    };
    for e in spec.sorted_indices() {
        let elems = enumerate_elements(&spec.field, spec.degree_bound, e)?;
        let n = spec.nvars;
        let prefix_len = n - 1;
        let mut odo = vec![0usize; prefix_len];
        loop {
            let prefix: Vec<RatFunc> = odo.iter().map(|i| elems[*i].clone()).collect();
            charge(&mut evaluated, 1)?;
            let coeffs = first.specialize_last_var(&prefix, e)?;
            let candidates = match univariate_roots(&coeffs, e, Some(spec.degree_bound))? {
                UnivariateZeros::Everything => elems.clone(),
                UnivariateZeros::Roots(r) => r,
            };
            for last in candidates {
                charge(&mut evaluated, 1)?;
                let mut coords = prefix.clone();
                coords.push(last);
                let point = AlgPoint::new(coords)?;
                let mut on_variety = true;
                for f in &fs[1..] {
                    if !f.evaluate(point.coords())?.is_zero() {
                        on_variety = false;
                        break;
                    }
                }
                if on_variety {
                    visit(&point)?;
                }
            }
            if prefix_len == 0 {
                break;
            }
            let mut pos = prefix_len;
            loop {
                if pos == 0 {
                    break;
                }
                pos -= 1;
                odo[pos] += 1;
                if odo[pos] < elems.len() {
                    break;
                }
                odo[pos] = 0;
                if pos == 0 {
                    pos = usize::MAX;
                    break;
                }
            }
            if pos == usize::MAX {
                break;
            }
        }
    }
    Ok(evaluated)
}

/// Zero set of a univariate polynomial with k(T) coefficients.
pub enum UnivariateZeros {
    /// The polynomial is identically zero: everything is a root.
    Everything,
    /// The finite root list (degree-bounded if requested), sorted.
    Roots(Vec<RatFunc>),
}

/// All roots in k(T) of sum c_i X^i, by the rational-root method: clear
/// denominators, then candidate numerators divide the trailing coefficient
/// and candidate denominators divide the leading one.
pub fn univariate_roots(
    coeffs: &[RatFunc],
    index: u32,
    degree_bound: Option<u32>,
) -> Result<UnivariateZeros> {
    let field = match coeffs.first() {
        Some(c) => c.field().clone(),
        None => return Ok(UnivariateZeros::Everything),
    };
    if coeffs.iter().all(|c| c.is_zero()) {
        return Ok(UnivariateZeros::Everything);
    }
    // Clear denominators to land in k[T].
    let mut common = KPoly::one(&field);
    for c in coeffs {
        if c.is_zero() {
            continue;
        }
        let g = KPoly::gcd(&common, c.den());
        common = common.mul(&c.den().exact_div(&g).expect("gcd divides"));
    }
    let mut cleared: Vec<KPoly> = Vec::with_capacity(coeffs.len());
    for c in coeffs {
        if c.is_zero() {
            cleared.push(KPoly::zero(&field));
        } else {
            let scale = common.exact_div(c.den()).expect("lcm clears");
            cleared.push(c.num().mul(&scale));
        }
    }
    while cleared.last().is_some_and(|c| c.is_zero()) {
        cleared.pop();
    }
    let mut roots: Vec<RatFunc> = Vec::new();
    // Factor out X^k: zero is a root iff the trailing coefficient vanishes.
    let low = cleared.iter().position(|c| !c.is_zero()).unwrap();
    if low > 0 {
        roots.push(RatFunc::zero(&field, index));
    }
    let reduced = &cleared[low..];
    if reduced.len() > 1 {
        let trailing = &reduced[0];
        let leading = reduced.last().unwrap();
        let num_divs = monic_divisors(trailing)?;
        let den_divs = monic_divisors(leading)?;
        let mut scalars: Vec<Constant> = Vec::new();
        {
            let q = field.order().ok_or(Error::UnsupportedOverRationals(
                "root search over an infinite constant field",
            ))?;
            for i in 1..q {
                scalars.push(field.element_from_index(i));
            }
        }
        for mv in &den_divs {
            for mu in &num_divs {
                if !KPoly::gcd(mu, mv).is_one() {
                    continue;
                }
                for c in &scalars {
                    let cand = RatFunc::new(mu.mul_c(c), mv.clone(), index)?;
                    if horner_is_zero(reduced, &cand)? {
                        roots.push(cand);
                    }
                }
            }
        }
    }
    roots.sort();
    roots.dedup();
    if let Some(b) = degree_bound {
        roots.retain(|r| {
            r.num().degree().unwrap_or(0) <= b as usize && r.den().degree().unwrap_or(0) <= b as usize
        });
    }
    Ok(UnivariateZeros::Roots(roots))
}

fn horner_is_zero(coeffs: &[KPoly], x: &RatFunc) -> Result<bool> {
    let index = x.index();
    let field = x.field();
    let mut acc = RatFunc::zero(field, index);
    for c in coeffs.iter().rev() {
        acc = acc.mul(x)?.add(&RatFunc::from_poly(c.clone(), index)?)?;
    }
    Ok(acc.is_zero())
}

/// All monic divisors of a nonzero polynomial, from its factorization.
fn monic_divisors(f: &KPoly) -> Result<Vec<KPoly>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial("divisor enumeration"));
    }
    let (_, factors) = f.factor()?;
    let mut divs = vec![KPoly::one(f.field())];
    for (p, mult) in factors {
        let mut next = Vec::with_capacity(divs.len() * (mult as usize + 1));
        for d in &divs {
            let mut power = d.clone();
            next.push(power.clone());
            for _ in 0..mult {
                power = power.mul(&p);
                next.push(power.clone());
            }
        }
        divs = next;
    }
    Ok(divs)
}

/// Height recomputed from valuation primitives with its own accumulation,
/// independent of the heights module.
pub fn oracle_height_point(point: &AlgPoint) -> Result<BigRational> {
    let mut pole_orders: std::collections::BTreeMap<Place, i64> = std::collections::BTreeMap::new();
    for x in point.coords() {
        if x.is_zero() {
            continue;
        }
        for (w, v) in x.support()? {
            if v < 0 {
                let entry = pole_orders.entry(w).or_insert(0);
                *entry = (*entry).max(-v);
            }
        }
    }
    let mut total = BigInt::from(0);
    for (w, order) in pole_orders {
        total += BigInt::from(w.residue_degree() as i64 * order);
    }
    Ok(BigRational::new(total, BigInt::from(point.index())))
}

fn oracle_height_element(x: &RatFunc) -> Result<BigRational> {
    if x.is_zero() {
        return Ok(BigRational::from_integer(0.into()));
    }
    let mut total = BigInt::from(0);
    for (w, v) in x.support()? {
        if v < 0 {
            total += BigInt::from(w.residue_degree() as i64 * -v);
        }
    }
    Ok(BigRational::new(total, BigInt::from(x.index())))
}

/// Outcome of an exhaustive check of a certified pair.
#[derive(Debug, Clone)]
pub struct OracleVerdict {
    pub pass: bool,
    pub min_height: Option<BigRational>,
    pub witness: Option<AlgPoint>,
    /// Points and prefixes charged against the budget.
    pub evaluated: u64,
}

/// Minimum height over enumerated points on the variety and off Z, with an
/// achieving witness.  PASS means the minimum is at least the certified
/// bound, or no such point exists in range.
pub fn min_height_off_z(
    fs: &[MultiPoly],
    pair: &EpsilonPair,
    spec: &SearchSpec,
) -> Result<OracleVerdict> {
    spec.check_finite()?;
    if fs.is_empty() {
        return Err(Error::InvariantViolation(
            "the oracle needs at least one defining polynomial".into(),
        ));
    }
    let restriction = spec.restrict.clone().unwrap_or_else(|| fs.to_vec());
    let mut min_height: Option<BigRational> = None;
    let mut witness: Option<AlgPoint> = None;
    let evaluated = scan_restricted(spec, &restriction, |point| {
        // The restriction already pins the scan to its own zero set; filter
        // by the full system if it differs.
        for f in fs {
            if !f.evaluate(point.coords())?.is_zero() {
                return Ok(());
            }
        }
        if pair.z.contains(point)? {
            return Ok(());
        }
        let h = oracle_height_point(point)?;
        let better = match &min_height {
            None => true,
            Some(cur) => h < *cur,
        };
        if better {
            min_height = Some(h);
            witness = Some(point.clone());
        }
        Ok(())
    })?;
    let pass = match &min_height {
        None => true,
        Some(h) => *h >= pair.c,
    };
    Ok(OracleVerdict {
        pass,
        min_height,
        witness,
        evaluated,
    })
}

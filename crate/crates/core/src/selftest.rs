//! Seeded invariant suites, shared by the acceptance tests and the CLI
//! `selftest` subcommand, plus the random generators they are built on.

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bogomolov::choose_m;
use crate::constants::Field;
use crate::error::Result;
use crate::heights::{
    height_element, height_tuple, height_via_min_poly, min_poly_of_kummer, sigma_element,
    sigma_point, AlgPoint,
};
use crate::kpoly::KPoly;
use crate::mpoly::{Monomial, MultiPoly};
use crate::ratfunc::{places_above, RatFunc};

/// Result of one invariant suite.
#[derive(Debug, Clone)]
pub struct CheckOutcome {
    pub name: String,
    pub cases: u64,
    pub pass: bool,
    pub detail: String,
}

impl CheckOutcome {
    fn pass(name: &str, cases: u64) -> CheckOutcome {
        CheckOutcome {
            name: name.into(),
            cases,
            pass: true,
            detail: String::new(),
        }
    }

    fn fail(name: &str, cases: u64, detail: String) -> CheckOutcome {
        CheckOutcome {
            name: name.into(),
            cases,
            pass: false,
            detail,
        }
    }
}

/// Random polynomial in k[T] with degree below `max_deg` (possibly zero).
pub fn random_kpoly<R: Rng>(field: &Field, max_deg: u32, rng: &mut R) -> KPoly {
    let deg = rng.gen_range(0..=max_deg);
    let coeffs = (0..=deg).map(|_| field.sample_with(rng, 9)).collect();
    KPoly::from_coeffs(field, coeffs)
}

/// Random reduced fraction at the given index (denominator never zero).
pub fn random_ratfunc<R: Rng>(field: &Field, index: u32, max_deg: u32, rng: &mut R) -> RatFunc {
    let num = random_kpoly(field, max_deg, rng);
    let den = loop {
        let d = random_kpoly(field, max_deg, rng);
        if !d.is_zero() {
            break d;
        }
    };
    RatFunc::new(num, den, index).expect("tame index")
}

pub fn random_nonzero_ratfunc<R: Rng>(
    field: &Field,
    index: u32,
    max_deg: u32,
    rng: &mut R,
) -> RatFunc {
    loop {
        let x = random_ratfunc(field, index, max_deg, rng);
        if !x.is_zero() {
            return x;
        }
    }
}

/// Random sparse polynomial in k[T][X_1..X_n].
pub fn random_mpoly<R: Rng>(
    field: &Field,
    index: u32,
    nvars: usize,
    max_xdeg: u32,
    max_tdeg: u32,
    rng: &mut R,
) -> MultiPoly {
    let nterms = rng.gen_range(1..=4usize);
    let mut terms = Vec::new();
    for _ in 0..nterms {
        let expo: Vec<u32> = (0..nvars).map(|_| rng.gen_range(0..=max_xdeg)).collect();
        let coeff = random_kpoly(field, max_tdeg, rng);
        terms.push((Monomial(expo), coeff));
    }
    MultiPoly::from_terms(field, index, nvars, terms).expect("valid arity")
}

/// Product formula: residue-degree-weighted valuations of a nonzero element
/// sum to zero.
pub fn check_product_formula(
    field: &Field,
    indices: &[u32],
    cases_per_index: u64,
    max_deg: u32,
    seed: u64,
) -> Result<CheckOutcome> {
    let name = "product_formula";
    let mut total = 0u64;
    for &e in indices {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (e as u64) << 32);
        for _ in 0..cases_per_index {
            let x = random_nonzero_ratfunc(field, e, max_deg, &mut rng);
            let sum: i64 = x
                .support()?
                .iter()
                .map(|(w, v)| w.residue_degree() as i64 * v)
                .sum();
            total += 1;
            if sum != 0 {
                return Ok(CheckOutcome::fail(
                    name,
                    total,
                    format!("sum {sum} != 0 for {x} at e={e}"),
                ));
            }
        }
    }
    Ok(CheckOutcome::pass(name, total))
}

/// Coherence: the height of x in k(t) is unchanged after reindexing.
pub fn check_coherence(
    field: &Field,
    targets: &[u32],
    cases: u64,
    max_deg: u32,
    seed: u64,
) -> Result<CheckOutcome> {
    let name = "coherence";
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut total = 0u64;
    for _ in 0..cases {
        let x = random_nonzero_ratfunc(field, 1, max_deg, &mut rng);
        let base = height_element(&x)?;
        for &e in targets {
            let lifted = x.reindex(e)?;
            let h = height_element(&lifted)?;
            total += 1;
            if h != base {
                return Ok(CheckOutcome::fail(
                    name,
                    total,
                    format!("h({x}) = {base} but {h} at e={e}"),
                ));
            }
            // Valuation-level coherence per place in the support.
            for (v, vx) in x.support()? {
                let mut acc = 0i64;
                for (w, _) in places_above(&v, e)? {
                    let rel = (w.residue_degree() / v.residue_degree()) as i64;
                    acc += rel * w.valuation(&lifted)?;
                }
                if acc != e as i64 * vx {
                    return Ok(CheckOutcome::fail(
                        name,
                        total,
                        format!("place coherence fails for {x} at e={e}"),
                    ));
                }
            }
        }
    }
    Ok(CheckOutcome::pass(name, total))
}

/// Twist scaling: h(sigma_M(x)) = M h(x), exactly.
pub fn check_sigma_height(
    field: &Field,
    indices: &[u32],
    ms: &[u64],
    cases: u64,
    max_deg: u32,
    seed: u64,
) -> Result<CheckOutcome> {
    let name = "sigma_height_scaling";
    let mut total = 0u64;
    for &e in indices {
        for &m in ms {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (e as u64) << 24 ^ m << 8);
            for _ in 0..cases {
                let x = random_ratfunc(field, e, max_deg, &mut rng);
                let h = height_element(&x)?;
                let hs = height_element(&sigma_element(&x, m)?)?;
                total += 1;
                if hs != BigRational::from_integer(m.into()) * &h {
                    return Ok(CheckOutcome::fail(
                        name,
                        total,
                        format!("h(sigma({x})) = {hs} != {m} * {h} at e={e}"),
                    ));
                }
            }
        }
    }
    Ok(CheckOutcome::pass(name, total))
}

/// Tuple corollary: h(sigma P) <= n M h(P).
pub fn check_sigma_tuple_bound(
    field: &Field,
    n: usize,
    m: u64,
    cases: u64,
    max_deg: u32,
    seed: u64,
) -> Result<CheckOutcome> {
    let name = "sigma_tuple_bound";
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut total = 0u64;
    for _ in 0..cases {
        let coords: Vec<RatFunc> = (0..n)
            .map(|_| random_ratfunc(field, 1, max_deg, &mut rng))
            .collect();
        let p = AlgPoint::new(coords)?;
        let h = height_tuple(&p)?;
        let hs = height_tuple(&sigma_point(&p, m)?)?;
        total += 1;
        let bound = BigRational::from_integer((n as u64 * m).into()) * &h;
        if hs > bound {
            return Ok(CheckOutcome::fail(
                name,
                total,
                format!("h(sigma P) = {hs} exceeds nM h(P) = {bound}"),
            ));
        }
    }
    Ok(CheckOutcome::pass(name, total))
}

/// Heights via valuations agree with the minimal-polynomial formula.
pub fn check_dm_consistency(
    field: &Field,
    indices: &[u32],
    cases: u64,
    max_deg: u32,
    seed: u64,
) -> Result<CheckOutcome> {
    let name = "min_poly_height_consistency";
    let mut total = 0u64;
    for &e in indices {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (e as u64) << 16);
        for _ in 0..cases {
            let x = random_nonzero_ratfunc(field, e, max_deg, &mut rng);
            let h = height_element(&x)?;
            let rep = min_poly_of_kummer(&x)?;
            let hd = height_via_min_poly(&rep);
            total += 1;
            if h != hd {
                return Ok(CheckOutcome::fail(
                    name,
                    total,
                    format!("valuation height {h} vs min-poly height {hd} for {x} at e={e}"),
                ));
            }
        }
    }
    Ok(CheckOutcome::pass(name, total))
}

/// Divisibility witness: the quotient remultiplies to sigma(g) - g.
pub fn check_divisibility(
    field: &Field,
    ms: &[u64],
    cases: u64,
    max_deg: u32,
    seed: u64,
) -> Result<CheckOutcome> {
    let name = "divisibility_witness";
    let mut total = 0u64;
    for &m in ms {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ m << 40);
        for _ in 0..cases {
            let g = random_kpoly(field, max_deg, &mut rng);
            let q = crate::bogomolov::divisibility_witness(&g, m)?;
            let m32 = m as u32;
            let twisted = g.inflate(m32).sub(&g);
            let modulus = KPoly::gen(field).pow(m32).sub(&KPoly::gen(field));
            total += 1;
            if q.mul(&modulus) != twisted {
                return Ok(CheckOutcome::fail(
                    name,
                    total,
                    format!("witness remultiplication fails for {:?} at M={m}", g),
                ));
            }
        }
    }
    Ok(CheckOutcome::pass(name, total))
}

/// The twist-difference identity: f(sigma P) computed directly equals
/// sum_i (a_i - sigma(a_i)) sigma(m_i) at points P on Z(f).
pub fn check_trick_identity(
    field: &Field,
    cases: u64,
    seed: u64,
) -> Result<CheckOutcome> {
    let name = "twist_difference_identity";
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut total = 0u64;
    let mut attempts = 0u64;
    while total < cases && attempts < cases * 200 {
        attempts += 1;
        let f = random_mpoly(field, 1, 2, 2, 1, &mut rng);
        if f.is_zero() || f.total_degree() == Some(0) {
            continue;
        }
        let x1 = random_ratfunc(field, 1, 1, &mut rng);
        let coeffs = f.specialize_last_var(std::slice::from_ref(&x1), 1)?;
        let roots = match crate::oracle::univariate_roots(&coeffs, 1, None)? {
            crate::oracle::UnivariateZeros::Everything => continue,
            crate::oracle::UnivariateZeros::Roots(r) => r,
        };
        for x2 in roots {
            let p = AlgPoint::new(vec![x1.clone(), x2])?;
            if !f.evaluate(p.coords())?.is_zero() {
                return Ok(CheckOutcome::fail(
                    name,
                    total,
                    "solver returned a non-root".into(),
                ));
            }
            let m = choose_m(&f)?;
            if !trick_identity_holds(&f, &p, m)? {
                return Ok(CheckOutcome::fail(
                    name,
                    total,
                    format!("identity fails for f={f}, P=({})", p.to_text()),
                ));
            }
            total += 1;
        }
    }
    Ok(CheckOutcome::pass(name, total))
}

/// Evaluate both sides of the twist-difference identity at a zero of f.
pub fn trick_identity_holds(f: &MultiPoly, p: &AlgPoint, m: u64) -> Result<bool> {
    let sp = sigma_point(p, m)?;
    let direct = f.evaluate(sp.coords())?;
    let mut sum = RatFunc::zero(f.field(), p.index());
    for (mono, coeff) in f.terms() {
        let a = RatFunc::from_poly(coeff.clone(), f.index())?;
        let mut mi = RatFunc::one(f.field(), p.index());
        for (i, e) in mono.0.iter().enumerate() {
            if *e > 0 {
                mi = mi.mul(&p.coords()[i].pow(*e as i64)?)?;
            }
        }
        let term = a.sub(&sigma_element(&a, m)?)?.mul(&sigma_element(&mi, m)?)?;
        sum = sum.add(&term)?;
    }
    Ok(direct == sum)
}

/// The suites the CLI `selftest` runs; `quick` shrinks the case counts.
pub fn run_all(quick: bool) -> Result<Vec<CheckOutcome>> {
    let f5 = Field::prime(5)?;
    let n = if quick { 25 } else { 200 };
    let mut out = Vec::new();
    out.push(check_product_formula(&f5, &[1, 2, 3], n, 4, 11)?);
    out.push(check_coherence(&f5, &[2, 3, 6], n, 4, 12)?);
    out.push(check_sigma_height(&f5, &[1, 2, 3], &[2, 3], n / 2, 3, 13)?);
    out.push(check_sigma_tuple_bound(&f5, 2, 2, n / 2, 3, 14)?);
    out.push(check_dm_consistency(&f5, &[1, 2, 3, 4, 6], n / 4, 3, 15)?);
    out.push(check_divisibility(&f5, &[2, 3, 4], n, 10, 16)?);
    out.push(check_trick_identity(&f5, n / 4, 17)?);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quick_suites_pass() {
        for outcome in run_all(true).unwrap() {
            assert!(outcome.pass, "{}: {}", outcome.name, outcome.detail);
            assert!(outcome.cases > 0, "{} ran no cases", outcome.name);
        }
    }
}

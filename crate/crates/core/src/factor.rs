//! Univariate factorization: squarefree decomposition in any characteristic,
//! Berlekamp over finite fields, and Zassenhaus (factor mod p, Hensel lift,
//! subset recombination) over the rationals.
//!
//! Everything here is deterministic: Berlekamp splits with an enumerated
//! field sweep instead of random polynomials, and the Zassenhaus prime is the
//! first one that keeps the input squarefree.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::constants::{Constant, Field};
use crate::error::{Error, Result};
use crate::kpoly::KPoly;

/// Squarefree decomposition of a monic polynomial: pairs (g, m) with g monic
/// squarefree, pairwise coprime, and f = prod g^m.
pub fn squarefree_decomposition(f: &KPoly) -> Result<Vec<(KPoly, u32)>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial("squarefree decomposition"));
    }
    let f = f.make_monic();
    if f.is_constant() {
        return Ok(Vec::new());
    }
    let p = f.field().characteristic();
    let deriv = f.derivative();
    if p > 0 && deriv.is_zero() {
        // f = g(T^p); recurse on the p-th root.
        let root = pth_root_poly(&f, p as u32)?;
        let inner = squarefree_decomposition(&root)?;
        return Ok(inner
            .into_iter()
            .map(|(g, m)| (g, m * p as u32))
            .collect());
    }
    let mut out = Vec::new();
    let mut a = KPoly::gcd(&f, &deriv);
    let mut b = f.exact_div(&a).expect("gcd divides");
    let mut i = 1u32;
    while !b.is_constant() {
        let c = KPoly::gcd(&a, &b);
        let piece = b.exact_div(&c).expect("gcd divides");
        if !piece.is_constant() {
            out.push((piece, i));
        }
        a = a.exact_div(&c).expect("gcd divides");
        b = c;
        i += 1;
    }
    if p > 0 && !a.is_constant() {
        // Residual p-th power part.
        let root = pth_root_poly(&a, p as u32)?;
        for (g, m) in squarefree_decomposition(&root)? {
            out.push((g, m * p as u32));
        }
    }
    Ok(out)
}

/// The p-th root of a polynomial of the form g(T^p) over a finite field.
fn pth_root_poly(f: &KPoly, p: u32) -> Result<KPoly> {
    let deflated = f.deflate(p).ok_or_else(|| {
        Error::InvariantViolation("derivative vanished but exponents are not p-divisible".into())
    })?;
    deflated.map_coeffs(f.field(), |c| Ok(c.pth_root()))
}

/// Factor a monic polynomial over a finite field into monic irreducibles
/// with multiplicities.
pub fn factor_finite(f: &KPoly) -> Result<Vec<(KPoly, u32)>> {
    let mut out = Vec::new();
    for (g, mult) in squarefree_decomposition(f)? {
        for irr in berlekamp_squarefree(&g)? {
            out.push((irr, mult));
        }
    }
    Ok(out)
}

/// Berlekamp splitting of a monic squarefree polynomial.
fn berlekamp_squarefree(f: &KPoly) -> Result<Vec<KPoly>> {
    let n = f.degree().expect("nonzero");
    if n <= 1 {
        return Ok(vec![f.clone()]);
    }
    let field = f.field().clone();
    let q = field.order().expect("finite field");
    let q64 = u64::try_from(q).map_err(|_| {
        Error::InvariantViolation("field too large for Berlekamp splitting".into())
    })?;

    // Rows of the Frobenius matrix: T^{jq} mod f.
    let xq = KPoly::gen(&field).powmod(q64, f)?;
    let mut rows: Vec<Vec<Constant>> = Vec::with_capacity(n);
    let mut cur = KPoly::one(&field);
    for _ in 0..n {
        let mut row = Vec::with_capacity(n);
        for i in 0..n {
            row.push(cur.coeff(i));
        }
        rows.push(row);
        cur = cur.mul(&xq).rem(f)?;
    }
    // h = sum a_j T^j satisfies h^q = h mod f iff (V^T - I) a = 0 where V's
    // row j holds T^{jq} mod f.
    let mut mat = vec![vec![field.zero(); n]; n];
    for (j, row) in rows.iter().enumerate() {
        for (i, v) in row.iter().enumerate() {
            mat[i][j] = if i == j { v.sub(&field.one()) } else { v.clone() };
        }
    }
    let basis = nullspace(&field, mat);
    let r = basis.len();
    debug_assert!(r >= 1);
    let mut factors = vec![f.clone()];
    if r == 1 {
        return Ok(factors);
    }
    let elements: Vec<Constant> = field.elements().collect();
    for vec in &basis {
        if factors.len() == r {
            break;
        }
        let h = KPoly::from_coeffs(&field, vec.clone());
        if h.is_constant() {
            continue;
        }
        let mut next = Vec::with_capacity(factors.len());
        for u in factors {
            if u.degree() == Some(1) {
                next.push(u);
                continue;
            }
            let mut pieces = Vec::new();
            for c in &elements {
                let g = KPoly::gcd(&u, &h.sub(&KPoly::constant(c.clone())));
                if g.degree().is_some_and(|d| d >= 1) {
                    pieces.push(g);
                }
            }
            if pieces.len() <= 1 {
                next.push(u);
            } else {
                next.extend(pieces);
            }
        }
        factors = next;
    }
    if factors.len() != r {
        return Err(Error::InvariantViolation(format!(
            "Berlekamp split produced {} factors, expected {}",
            factors.len(),
            r
        )));
    }
    Ok(factors.into_iter().map(|g| g.make_monic()).collect())
}

/// Nullspace basis of a square matrix over a field.
fn nullspace(field: &Field, mut mat: Vec<Vec<Constant>>) -> Vec<Vec<Constant>> {
    let n = mat.len();
    let mut pivot_col_of_row = Vec::new();
    let mut row = 0usize;
    for col in 0..n {
        let mut piv = None;
        for r in row..n {
            if !mat[r][col].is_zero() {
                piv = Some(r);
                break;
            }
        }
        let Some(piv) = piv else { continue };
        mat.swap(row, piv);
        let inv = mat[row][col].inv().expect("pivot nonzero");
        for c in 0..n {
            mat[row][c] = mat[row][c].mul(&inv);
        }
        for r in 0..n {
            if r != row && !mat[r][col].is_zero() {
                let factor = mat[r][col].clone();
                for c in 0..n {
                    let s = mat[row][c].mul(&factor);
                    mat[r][c] = mat[r][c].sub(&s);
                }
            }
        }
        pivot_col_of_row.push(col);
        row += 1;
        if row == n {
            break;
        }
    }
    let pivot_cols: std::collections::BTreeSet<usize> = pivot_col_of_row.iter().copied().collect();
    let mut basis = Vec::new();
    for free in 0..n {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut v = vec![field.zero(); n];
        v[free] = field.one();
        for (r, col) in pivot_col_of_row.iter().enumerate() {
            v[*col] = mat[r][free].neg();
        }
        basis.push(v);
    }
    basis
}

// ---------------------------------------------------------------------------
// Rationals: Zassenhaus on integer polynomials.
// ---------------------------------------------------------------------------

type ZPoly = Vec<BigInt>;

fn ztrim(v: &mut ZPoly) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn zpow(b: &BigInt, e: u32) -> BigInt {
    num_traits::Pow::pow(b, e)
}

fn zmul(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    ztrim(&mut out);
    out
}

fn zadd(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let mut out = vec![BigInt::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] = x.clone();
    }
    for (i, y) in b.iter().enumerate() {
        out[i] += y;
    }
    ztrim(&mut out);
    out
}

fn zsub(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let mut out = vec![BigInt::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] = x.clone();
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    ztrim(&mut out);
    out
}

/// Coefficients reduced into the symmetric range (-m/2, m/2].
fn zmod_sym(a: &[BigInt], m: &BigInt) -> ZPoly {
    let half = m / &BigInt::from(2);
    let mut out: ZPoly = a
        .iter()
        .map(|c| {
            let mut r = c.mod_floor(m);
            if r > half {
                r -= m;
            }
            r
        })
        .collect();
    ztrim(&mut out);
    out
}

/// Exact division in Z[x]; `None` when not divisible.
fn zdiv_exact(a: &[BigInt], b: &[BigInt]) -> Option<ZPoly> {
    if b.is_empty() {
        return None;
    }
    let mut rem: ZPoly = a.to_vec();
    ztrim(&mut rem);
    if rem.is_empty() {
        return Some(Vec::new());
    }
    if rem.len() < b.len() {
        return None;
    }
    let lead = b.last().unwrap();
    let mut quot = vec![BigInt::zero(); rem.len() - b.len() + 1];
    while rem.len() >= b.len() {
        let (q, r) = rem.last().unwrap().div_rem(lead);
        if !r.is_zero() {
            return None;
        }
        let shift = rem.len() - b.len();
        quot[shift] = q.clone();
        for (i, c) in b.iter().enumerate() {
            rem[shift + i] -= &q * c;
        }
        ztrim(&mut rem);
        if rem.is_empty() {
            break;
        }
    }
    if rem.is_empty() {
        Some(quot)
    } else {
        None
    }
}

fn zprimitive(a: &[BigInt]) -> ZPoly {
    let mut v = a.to_vec();
    ztrim(&mut v);
    if v.is_empty() {
        return v;
    }
    let mut g = BigInt::zero();
    for c in &v {
        g = g.gcd(c);
    }
    if v.last().unwrap().is_negative() {
        g = -g;
    }
    v.iter().map(|c| c / &g).collect()
}

/// Factor a monic polynomial over Q into monic irreducibles with
/// multiplicities.
pub fn factor_rationals(f: &KPoly) -> Result<Vec<(KPoly, u32)>> {
    let field = f.field().clone();
    let mut out = Vec::new();
    for (g, mult) in squarefree_decomposition(f)? {
        if g.degree() == Some(1) {
            out.push((g, mult));
            continue;
        }
        let z = to_zpoly_primitive(&g);
        for w in factor_squarefree_z(&z) {
            let monic = from_zpoly(&field, &w).make_monic();
            out.push((monic, mult));
        }
    }
    Ok(out)
}

/// Clear denominators and take the primitive part with positive lead.
fn to_zpoly_primitive(f: &KPoly) -> ZPoly {
    let mut den = BigInt::one();
    for c in f.coeffs() {
        let r = c.as_rational().expect("rational field");
        den = den.lcm(r.denom());
    }
    let coeffs: ZPoly = f
        .coeffs()
        .iter()
        .map(|c| {
            let r = c.as_rational().unwrap();
            r.numer() * (&den / r.denom())
        })
        .collect();
    zprimitive(&coeffs)
}

fn from_zpoly(field: &Field, z: &[BigInt]) -> KPoly {
    KPoly::from_coeffs(
        field,
        z.iter()
            .map(|c| field.from_ratio(c, &BigInt::one()).expect("integer"))
            .collect(),
    )
}

/// Zassenhaus on a primitive squarefree integer polynomial with positive
/// leading coefficient.  Returns primitive irreducible factors.
fn factor_squarefree_z(g: &ZPoly) -> Vec<ZPoly> {
    let n = g.len() - 1;
    if n <= 1 {
        return vec![g.clone()];
    }
    // Monicize: ghat(x) = l^(n-1) g(x/l) is monic with roots scaled by l.
    let lead = g.last().unwrap().clone();
    let mut ghat: ZPoly = Vec::with_capacity(g.len());
    for (i, c) in g.iter().enumerate() {
        if i == n {
            ghat.push(BigInt::one());
        } else {
            ghat.push(c * zpow(&lead, (n - 1 - i) as u32));
        }
    }
    let hat_factors = factor_monic_squarefree_z(&ghat);
    if hat_factors.len() == 1 {
        return vec![g.clone()];
    }
    // Map back through x -> l x and take primitive parts.
    hat_factors
        .iter()
        .map(|v| {
            let mut w: ZPoly = v
                .iter()
                .enumerate()
                .map(|(i, c)| c * zpow(&lead, i as u32))
                .collect();
            ztrim(&mut w);
            zprimitive(&w)
        })
        .collect()
}

const ZASSENHAUS_PRIMES: &[u64] = &[
    3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
    101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179, 181, 191,
];

/// Zassenhaus core for a monic squarefree integer polynomial.
fn factor_monic_squarefree_z(g: &ZPoly) -> Vec<ZPoly> {
    let n = g.len() - 1;
    // First prime keeping g squarefree; one exists since disc(g) != 0.
    let mut chosen: Option<(Field, Vec<KPoly>)> = None;
    for &p in ZASSENHAUS_PRIMES {
        let field = Field::prime(p).expect("small prime");
        let gp = zpoly_mod(g, &field);
        if gp.degree() != Some(n) {
            continue;
        }
        if !KPoly::gcd(&gp, &gp.derivative()).is_one() {
            continue;
        }
        let factors = factor_finite(&gp).expect("finite factorization");
        let flat: Vec<KPoly> = factors.into_iter().map(|(f, _)| f).collect();
        chosen = Some((field, flat));
        break;
    }
    let (field, modular) = chosen.expect("a squarefree prime exists for a squarefree polynomial");
    if modular.len() == 1 {
        return vec![g.clone()];
    }
    let p = BigInt::from(field.characteristic());

    // Mignotte-style bound: any factor of g has |coeff| <= 2^n (n+1) H(g).
    let height = g.iter().map(|c| c.abs()).max().unwrap();
    let bound: BigInt = (BigInt::one() << n) * BigInt::from(n as u64 + 1) * height;
    let mut modulus = p.clone();
    let mut k = 1u32;
    while modulus <= &bound * BigInt::from(2) {
        modulus = &modulus * &p;
        k += 1;
    }

    let lifted = hensel_tree(g, &modular, &field, &p, k);
    recombine(g, lifted, &modulus)
}

fn zpoly_mod(g: &[BigInt], field: &Field) -> KPoly {
    KPoly::from_coeffs(
        field,
        g.iter()
            .map(|c| field.from_ratio(c, &BigInt::one()).expect("integer"))
            .collect(),
    )
}

fn kpoly_to_zpoly_sym(f: &KPoly, p: &BigInt) -> ZPoly {
    let half = p / &BigInt::from(2);
    let mut out: ZPoly = f
        .coeffs()
        .iter()
        .map(|c| {
            let mut r = BigInt::from(c.as_residue().expect("prime field"));
            if r > half {
                r -= p;
            }
            r
        })
        .collect();
    ztrim(&mut out);
    out
}

/// Lift the modular factorization of a monic f to modulus p^k by recursive
/// binary splitting with linear Hensel steps.  All factors stay monic.
fn hensel_tree(f: &ZPoly, factors: &[KPoly], field: &Field, p: &BigInt, k: u32) -> Vec<ZPoly> {
    if factors.len() == 1 {
        return vec![zmod_sym(f, &zpow(p, k))];
    }
    let half = factors.len() / 2;
    let (left, right) = factors.split_at(half);
    let u0 = left.iter().fold(KPoly::one(field), |a, b| a.mul(b));
    let v0 = right.iter().fold(KPoly::one(field), |a, b| a.mul(b));
    let (u, v) = hensel_pair(f, &u0, &v0, field, p, k);
    let mut out = hensel_tree(&u, left, field, p, k);
    out.extend(hensel_tree(&v, right, field, p, k));
    out
}

/// Linear Hensel lifting of f = u v from mod p to mod p^k (all monic).
fn hensel_pair(
    f: &ZPoly,
    u0: &KPoly,
    v0: &KPoly,
    field: &Field,
    p: &BigInt,
    k: u32,
) -> (ZPoly, ZPoly) {
    let (g, _, t) = KPoly::extended_gcd(u0, v0);
    debug_assert!(g.is_one(), "factors are coprime mod p");
    let mut u = kpoly_to_zpoly_sym(u0, p);
    let mut v = kpoly_to_zpoly_sym(v0, p);
    let mut m = p.clone();
    for _ in 1..k {
        // e = (f - u v)/m; solve du*v0 + dv*u0 = e over F_p with deg du < deg u0.
        let diff = zsub(f, &zmul(&u, &v));
        let e_int: ZPoly = diff.iter().map(|c| c / &m).collect();
        let e_bar = zpoly_mod(&e_int, field);
        let du_bar = t.mul(&e_bar).rem(u0).expect("monic divisor");
        let dv_bar = e_bar
            .sub(&du_bar.mul(v0))
            .exact_div(u0)
            .expect("Hensel correction divides");
        let du: ZPoly = kpoly_to_zpoly_sym(&du_bar, p)
            .iter()
            .map(|c| c * &m)
            .collect();
        let dv: ZPoly = kpoly_to_zpoly_sym(&dv_bar, p)
            .iter()
            .map(|c| c * &m)
            .collect();
        u = zadd(&u, &du);
        v = zadd(&v, &dv);
        m = &m * p;
        // Symmetric reduction keeps both monic: the lead stays 1.
        u = zmod_sym(&u, &m);
        v = zmod_sym(&v, &m);
        debug_assert!(u.last().unwrap().is_one() && v.last().unwrap().is_one());
    }
    (u, v)
}

/// Lexicographic index combinations of size k out of n.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    if k == 0 || k > n {
        return out;
    }
    loop {
        out.push(idx.clone());
        let mut pos = k;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            if idx[pos] != pos + n - k {
                break;
            }
            if pos == 0 {
                return out;
            }
        }
        idx[pos] += 1;
        for j in pos + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Try products of subsets of the lifted factors as true divisors; whatever
/// resists every subset up to half the list is irreducible.
fn recombine(g: &ZPoly, lifted: Vec<ZPoly>, modulus: &BigInt) -> Vec<ZPoly> {
    let mut remaining = lifted;
    let mut current = g.clone();
    let mut out = Vec::new();
    'outer: loop {
        if remaining.len() <= 1 {
            if current.len() > 1 {
                out.push(current);
            }
            return out;
        }
        for size in 1..=remaining.len() / 2 {
            for combo in combinations(remaining.len(), size) {
                let mut cand = vec![BigInt::one()];
                for &i in &combo {
                    cand = zmod_sym(&zmul(&cand, &remaining[i]), modulus);
                }
                if let Some(q) = zdiv_exact(&current, &cand) {
                    out.push(cand);
                    current = q;
                    let drop: std::collections::BTreeSet<usize> = combo.into_iter().collect();
                    remaining = remaining
                        .into_iter()
                        .enumerate()
                        .filter(|(i, _)| !drop.contains(i))
                        .map(|(_, f)| f)
                        .collect();
                    continue 'outer;
                }
            }
        }
        out.push(current);
        return out;
    }
}

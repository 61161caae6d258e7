//! Restricted factorization over QQ: univariate integer polynomials
//! (rational roots, then Kronecker's method) and the bivariate classes that
//! reduce to them (monomial factors, pure binomials, binary forms).
//!
//! Factors are reported in discovery order: variable factors first, then
//! linear factors by rational root (smaller |root| first, positive before
//! negative), then higher-degree factors as Kronecker finds them.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{Monomial, Polynomial};
use crate::error::{Error, Result};
use crate::field::{fp, Scalar, ScalarField};

const DIVISOR_LIMIT: u64 = 1_000_000_000_000;
const KRONECKER_LIMIT: usize = 2_000_000;

type IntPoly = Vec<BigInt>;

fn trim(mut a: IntPoly) -> IntPoly {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

fn content(a: &[BigInt]) -> BigInt {
    a.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

fn primitive(a: &[BigInt]) -> IntPoly {
    let g = content(a);
    if g.is_zero() {
        return a.to_vec();
    }
    let mut out: IntPoly = a.iter().map(|c| c / &g).collect();
    if out.last().is_some_and(|c| c.is_negative()) {
        out.iter_mut().for_each(|c| *c = -&*c);
    }
    out
}

fn eval_int(a: &[BigInt], x: &BigInt) -> BigInt {
    a.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

/// Exact division in ZZ[t]; `None` when `b` does not divide `a`.
fn div_exact(a: &[BigInt], b: &[BigInt]) -> Option<IntPoly> {
    let mut r = trim(a.to_vec());
    let b = trim(b.to_vec());
    if b.is_empty() || r.len() < b.len() {
        return if r.is_empty() { Some(Vec::new()) } else { None };
    }
    let lead = b.last().unwrap().clone();
    let mut q = vec![BigInt::zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() && !r.is_empty() {
        let (c, rem) = r.last().unwrap().div_rem(&lead);
        if !rem.is_zero() {
            return None;
        }
        let shift = r.len() - b.len();
        for (i, bc) in b.iter().enumerate() {
            r[shift + i] -= &c * bc;
        }
        q[shift] = c;
        r = trim(r);
    }
    if r.is_empty() {
        Some(trim(q))
    } else {
        None
    }
}

fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs().to_u64()?;
    if n == 0 || n > DIVISOR_LIMIT {
        return None;
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    Some(small.into_iter().map(BigInt::from).collect())
}

/// Lagrange interpolation through integer points; `None` unless the result
/// has integer coefficients.
fn interpolate(xs: &[BigInt], ys: &[BigInt]) -> Option<IntPoly> {
    let n = xs.len();
    let mut acc = vec![BigRational::zero(); n];
    for i in 0..n {
        let mut basis = vec![BigRational::one()];
        let mut denom = BigRational::one();
        for j in 0..n {
            if i == j {
                continue;
            }
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (k, c) in basis.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= c * BigRational::from_integer(xs[j].clone());
            }
            basis = next;
            denom *= BigRational::from_integer(&xs[i] - &xs[j]);
        }
        let scale = BigRational::from_integer(ys[i].clone()) / denom;
        for (k, c) in basis.iter().enumerate() {
            acc[k] += c * &scale;
        }
    }
    acc.into_iter().map(|c| c.is_integer().then(|| c.to_integer())).collect()
}

/// Factor a univariate integer polynomial (coefficients from `t^0` up) into
/// primitive irreducible factors over QQ, with multiplicity, in discovery
/// order. Content and sign are dropped.
pub fn factor_univariate_integer(f: &[BigInt]) -> Result<Vec<Vec<BigInt>>> {
    let mut rest = primitive(&trim(f.to_vec()));
    if rest.is_empty() {
        return Err(Error::Invalid("cannot factor the zero polynomial".into()));
    }
    let mut out = Vec::new();
    while rest.len() > 1 && rest[0].is_zero() {
        rest.remove(0);
        out.push(vec![BigInt::zero(), BigInt::one()]);
    }
    if rest.len() <= 2 {
        if rest.len() == 2 {
            out.push(rest);
        }
        return Ok(out);
    }
    // Rational roots p/q: p | a0, q | lead.
    let ps = divisors(&rest[0]).ok_or_else(|| Error::Unsupported("constant term too large".into()))?;
    let qs = divisors(rest.last().unwrap()).ok_or_else(|| Error::Unsupported("leading coefficient too large".into()))?;
    let mut candidates: Vec<BigRational> = Vec::new();
    for p in &ps {
        for q in &qs {
            for r in [BigRational::new(p.clone(), q.clone()), -BigRational::new(p.clone(), q.clone())] {
                if !candidates.contains(&r) {
                    candidates.push(r);
                }
            }
        }
    }
    candidates.sort_by(|a, b| a.abs().cmp(&b.abs()).then(b.cmp(a)));
    for r in candidates {
        let lin = vec![-r.numer().clone(), r.denom().clone()];
        while rest.len() > 2 {
            match div_exact(&rest, &lin) {
                Some(q) => {
                    out.push(lin.clone());
                    rest = primitive(&q);
                }
                None => break,
            }
        }
        if rest.len() <= 2 {
            break;
        }
    }
    if rest.len() == 2 {
        out.push(rest);
        return Ok(out);
    }
    // No rational roots left: degree 2 and 3 are irreducible; otherwise
    // search for factors of degree 2..=deg/2.
    let mut d = 2;
    while rest.len() > 2 * d {
        match kronecker_factor(&rest, d)? {
            Some(g) => {
                let q = div_exact(&rest, &g).expect("Kronecker factor divides");
                out.push(primitive(&g));
                rest = primitive(&q);
            }
            None => d += 1,
        }
    }
    if rest.len() > 1 {
        out.push(rest);
    }
    Ok(out)
}

fn kronecker_factor(f: &[BigInt], d: usize) -> Result<Option<IntPoly>> {
    let mut xs = Vec::new();
    let mut k: i64 = 0;
    while xs.len() < d + 1 {
        let x = BigInt::from(k);
        if !eval_int(f, &x).is_zero() {
            xs.push(x);
        }
        k = if k <= 0 { -k + 1 } else { -k };
    }
    let mut choices = Vec::new();
    let mut total: usize = 1;
    for x in &xs {
        let v = eval_int(f, x);
        let ds = divisors(&v).ok_or_else(|| Error::Unsupported("values too large for Kronecker search".into()))?;
        let mut signed = Vec::new();
        for dv in ds {
            signed.push(dv.clone());
            signed.push(-dv);
        }
        total = total.saturating_mul(signed.len());
        choices.push(signed);
    }
    if total > KRONECKER_LIMIT {
        return Err(Error::Unsupported("Kronecker search space too large".into()));
    }
    let mut idx = vec![0usize; choices.len()];
    loop {
        let ys: Vec<BigInt> = idx.iter().zip(&choices).map(|(i, c)| c[*i].clone()).collect();
        // Fix the sign of the first value to halve the search.
        if ys[0].is_positive() {
            if let Some(g) = interpolate(&xs, &ys) {
                let g = trim(g);
                if g.len() == d + 1 && div_exact(f, &g).is_some() {
                    return Ok(Some(g));
                }
            }
        }
        let mut pos = 0;
        loop {
            if pos == idx.len() {
                return Ok(None);
            }
            idx[pos] += 1;
            if idx[pos] < choices[pos].len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

fn rational_to_integer_poly(coeffs: &[BigRational]) -> IntPoly {
    let den = coeffs.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    coeffs.iter().map(|c| c.numer() * (&den / c.denom())).collect()
}

fn q_coef(s: &Scalar) -> &BigRational {
    match s {
        Scalar::Rational(q) => q,
        _ => unreachable!("QQ coefficients"),
    }
}

/// Factor a QQ polynomial involving at most the variables `a`, `b` in the
/// supported classes: a monomial times (a constant, a univariate polynomial,
/// a binary form, or a pure binomial `c1*a^m + c2*b^n` whose factors stay
/// certifiable). Returns irreducible factors (primitive, positive leading
/// coefficient) with multiplicity, in discovery order.
pub fn factor_bivariate(f: &Polynomial, a: usize, b: usize) -> Result<Vec<Polynomial>> {
    if f.field() != &ScalarField::Rationals {
        return Err(Error::Unsupported("bivariate factoring is implemented over QQ only".into()));
    }
    if f.is_zero() {
        return Err(Error::Invalid("cannot factor the zero polynomial".into()));
    }
    if f.variables().iter().any(|v| *v != a && *v != b) {
        return Err(Error::Unsupported("polynomial involves other variables".into()));
    }
    let field = f.field().clone();
    let n = f.nvars();
    let min_a = f.terms().map(|(m, _)| m.exponents()[a]).min().unwrap();
    let min_b = f.terms().map(|(m, _)| m.exponents()[b]).min().unwrap();
    let mut out = Vec::new();
    for _ in 0..min_a {
        out.push(Polynomial::var(&field, n, a));
    }
    for _ in 0..min_b {
        out.push(Polynomial::var(&field, n, b));
    }
    let mut shift = vec![0u32; n];
    shift[a] = min_a;
    shift[b] = min_b;
    let shift = Monomial::from_exponents(shift);
    let rest = Polynomial::from_terms(
        &field,
        n,
        f.terms().map(|(m, c)| (m.div(&shift).unwrap(), c.clone())),
    );
    if rest.is_constant() {
        return Ok(out);
    }
    let uni = |var: usize| -> Result<Vec<Polynomial>> {
        let deg = rest.degree_in(var).unwrap() as usize;
        let mut coeffs = vec![BigRational::zero(); deg + 1];
        for (m, c) in rest.terms() {
            coeffs[m.exponents()[var] as usize] = q_coef(c).clone();
        }
        let facs = factor_univariate_integer(&rational_to_integer_poly(&coeffs))?;
        Ok(facs.iter().map(|g| int_to_poly(&field, n, g, var, None, 1)).collect())
    };
    let vars = rest.variables();
    if vars.len() == 1 {
        out.extend(uni(vars[0])?);
        return Ok(out);
    }
    if rest.total_degree() == Some(1) {
        out.push(rest.primitive_part()?);
        return Ok(out);
    }
    let degs: Vec<u32> = rest.terms().map(|(m, _)| m.degree()).collect();
    let homogeneous = degs.iter().all(|d| *d == degs[0]);
    if homogeneous {
        let d = degs[0] as usize;
        let mut coeffs = vec![BigRational::zero(); d + 1];
        for (m, c) in rest.terms() {
            coeffs[m.exponents()[a] as usize] = q_coef(c).clone();
        }
        for g in factor_univariate_integer(&rational_to_integer_poly(&coeffs))? {
            out.push(int_to_poly(&field, n, &g, a, Some(b), 1));
        }
        return Ok(out);
    }
    if rest.num_terms() == 2 {
        // c1*a^m + c2*b^k, pure in each variable after removing the monomial.
        let terms: Vec<(&Monomial, &Scalar)> = rest.terms().collect();
        let (pa, pb) = {
            let t0 = terms[0].0.exponents();
            let t1 = terms[1].0.exponents();
            if t0[b] == 0 && t1[a] == 0 {
                (terms[0], terms[1])
            } else if t1[b] == 0 && t0[a] == 0 {
                (terms[1], terms[0])
            } else {
                return Err(Error::Unsupported("binomial with mixed terms".into()));
            }
        };
        let m = pa.0.exponents()[a];
        let k = pb.0.exponents()[b];
        let g = m.gcd(&k);
        if g == 1 {
            out.push(rest.primitive_part()?);
            return Ok(out);
        }
        let (ma, kb) = (m / g, k / g);
        let mut coeffs = vec![BigRational::zero(); g as usize + 1];
        coeffs[g as usize] = q_coef(pa.1).clone();
        coeffs[0] = q_coef(pb.1).clone();
        for h in factor_univariate_integer(&rational_to_integer_poly(&coeffs))? {
            if h.len() > 2 && (ma, kb) != (1, 1) {
                return Err(Error::Unsupported("binomial factor beyond the certifiable class".into()));
            }
            out.push(int_to_poly_weighted(&field, n, &h, a, b, ma, kb));
        }
        return Ok(out);
    }
    if rest.total_degree() == Some(2) {
        out.extend(factor_conic(&rest, a, b)?);
        return Ok(out);
    }
    for (x, y) in [(a, b), (b, a)] {
        if rest.degree_in(x) == Some(1) {
            out.extend(factor_linear_in(&rest, x, y)?);
            return Ok(out);
        }
    }
    Err(Error::Unsupported("bivariate factorization outside monomial/binomial/form/conic/linear classes".into()))
}

/// `f = A(y) x + B(y)`: the common factors of `A` and `B`, then the
/// primitive remainder, which is irreducible by Gauss's lemma.
fn factor_linear_in(f: &Polynomial, x: usize, y: usize) -> Result<Vec<Polynomial>> {
    let field = f.field().clone();
    let n = f.nvars();
    let f = f.primitive_part()?;
    let dy = f.degree_in(y).unwrap_or(0) as usize;
    let mut a = vec![BigInt::zero(); dy + 1];
    let mut b = vec![BigInt::zero(); dy + 1];
    for (m, c) in f.integer_coefficients().expect("primitive part has integer coefficients") {
        let slot = if m.exponents()[x] == 1 { &mut a } else { &mut b };
        slot[m.exponents()[y] as usize] = c;
    }
    let (mut a, mut b) = (trim(a), trim(b));
    let mut out = Vec::new();
    for h in factor_univariate_integer(&a)? {
        if let (Some(qa), Some(qb)) = (div_exact(&a, &h), div_exact(&b, &h)) {
            out.push(int_to_poly(&field, n, &h, y, None, 1));
            a = qa;
            b = qb;
        }
    }
    let terms = a
        .iter()
        .enumerate()
        .map(|(i, c)| (i, 1u32, c))
        .chain(b.iter().enumerate().map(|(i, c)| (i, 0u32, c)))
        .filter(|(_, _, c)| !c.is_zero())
        .map(|(i, ex, c)| {
            let mut e = vec![0u32; n];
            e[x] = ex;
            e[y] = i as u32;
            (Monomial::from_exponents(e), Scalar::Rational(BigRational::from_integer(c.clone())))
        });
    out.push(Polynomial::from_terms(&field, n, terms).primitive_part()?);
    Ok(out)
}

fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let (n, d) = (q.numer().sqrt(), q.denom().sqrt());
    (&n * &n == *q.numer() && &d * &d == *q.denom()).then(|| BigRational::new(n, d))
}

/// A non-homogeneous polynomial of total degree two in `a`, `b`. Any
/// factorization is `λ (l1 + c1)(l2 + c2)` with `λ l1 l2` the quadratic
/// part, so the factors of that binary form decide everything.
fn factor_conic(f: &Polynomial, a: usize, b: usize) -> Result<Vec<Polynomial>> {
    let field = f.field().clone();
    let n = f.nvars();
    let coef = |ea: u32, eb: u32| {
        let mut e = vec![0u32; n];
        e[a] = ea;
        e[b] = eb;
        q_coef(&f.coefficient(&Monomial::from_exponents(e))).clone()
    };
    let (p, q, r) = (coef(2, 0), coef(1, 1), coef(0, 2));
    let (s, t, k) = (coef(1, 0), coef(0, 1), coef(0, 0));
    let zero = BigRational::zero();
    let one = BigRational::one();
    let two = BigRational::from_integer(2.into());
    let four = BigRational::from_integer(4.into());
    let lin = |al: &BigRational, be: &BigRational, c: &BigRational| -> Result<Polynomial> {
        let mut terms = Vec::new();
        for (ea, eb, v) in [(1, 0, al), (0, 1, be), (0, 0, c)] {
            let mut e = vec![0u32; n];
            e[a] = ea;
            e[b] = eb;
            terms.push((Monomial::from_exponents(e), Scalar::Rational(v.clone())));
        }
        Polynomial::from_terms(&field, n, terms).primitive_part()
    };
    let irreducible = || Ok(vec![f.primitive_part()?]);
    let Some(delta) = rational_sqrt(&(&q * &q - &four * &p * &r)) else {
        return irreducible();
    };
    // λ (α1 a + β1 b)(α2 a + β2 b) = p a^2 + q ab + r b^2.
    let (lambda, (a1, b1), (a2, b2)) = if !p.is_zero() {
        let rho1 = (-&q + &delta) / (&two * &p);
        let rho2 = (-&q - &delta) / (&two * &p);
        (p.clone(), (one.clone(), -rho1), (one.clone(), -rho2))
    } else if !q.is_zero() {
        (one.clone(), (zero.clone(), one.clone()), (q.clone(), r.clone()))
    } else {
        (r.clone(), (zero.clone(), one.clone()), (zero.clone(), one.clone()))
    };
    let det = &a1 * &b2 - &a2 * &b1;
    if !det.is_zero() {
        // λ (c2 l1 + c1 l2) = s a + t b.
        let (sl, tl) = (&s / &lambda, &t / &lambda);
        let c2 = (&sl * &b2 - &tl * &a2) / &det;
        let c1 = (&a1 * &tl - &b1 * &sl) / &det;
        if &lambda * &c1 * &c2 != k {
            return irreducible();
        }
        return Ok(vec![lin(&a1, &b1, &c1)?, lin(&a2, &b2, &c2)?]);
    }
    // Quadratic part λ l^2: f = g(l) for a univariate quadratic g when the
    // linear part is a multiple of l.
    if &s * &b1 != &t * &a1 {
        return irreducible();
    }
    let mu = if a1.is_zero() { &t / &b1 } else { &s / &a1 };
    let Some(root) = rational_sqrt(&(&mu * &mu - &four * &lambda * &k)) else {
        return irreducible();
    };
    let u1 = (-&mu + &root) / (&two * &lambda);
    let u2 = (-&mu - &root) / (&two * &lambda);
    Ok(vec![lin(&a1, &b1, &-u1)?, lin(&a1, &b1, &-u2)?])
}

/// `g(var)` or, with `hom = Some(b)`, the homogenization `b^deg * g(var/b)`.
fn int_to_poly(
    field: &ScalarField,
    n: usize,
    g: &[BigInt],
    var: usize,
    hom: Option<usize>,
    _w: u32,
) -> Polynomial {
    let d = g.len() - 1;
    let terms = g.iter().enumerate().map(|(i, c)| {
        let mut e = vec![0u32; n];
        e[var] = i as u32;
        if let Some(b) = hom {
            e[b] = (d - i) as u32;
        }
        (Monomial::from_exponents(e), Scalar::Rational(BigRational::from_integer(c.clone())))
    });
    Polynomial::from_terms(field, n, terms)
}

/// Homogenize `h(Y)` in `(Y, Z)` and substitute `Y = a^wa`, `Z = b^wb`.
fn int_to_poly_weighted(
    field: &ScalarField,
    n: usize,
    h: &[BigInt],
    a: usize,
    b: usize,
    wa: u32,
    wb: u32,
) -> Polynomial {
    let d = h.len() - 1;
    let terms = h.iter().enumerate().map(|(i, c)| {
        let mut e = vec![0u32; n];
        e[a] = i as u32 * wa;
        e[b] = (d - i) as u32 * wb;
        (Monomial::from_exponents(e), Scalar::Rational(BigRational::from_integer(c.clone())))
    });
    Polynomial::from_terms(field, n, terms)
}

/// A short reason when `f` is provably irreducible by one of the supported
/// tests; `None` when irreducibility cannot be certified here.
pub fn irreducibility_evidence(f: &Polynomial) -> Option<&'static str> {
    if f.total_degree()? == 0 {
        return None;
    }
    if f.total_degree() == Some(1) {
        return Some("linear");
    }
    let vars = f.variables();
    match (f.field(), vars.len()) {
        (ScalarField::Prime(p), 1) => {
            let v = vars[0];
            let deg = f.degree_in(v).unwrap() as usize;
            let mut coeffs = vec![0u64; deg + 1];
            for (m, c) in f.terms() {
                if let Scalar::Residue(x) = c {
                    coeffs[m.exponents()[v] as usize] = *x;
                }
            }
            fp::is_irreducible(&coeffs, *p).then_some("univariate over GF(p), Ben-Or test")
        }
        (ScalarField::Rationals, 1) | (ScalarField::Rationals, 2) => {
            let (a, b) = if vars.len() == 1 { (vars[0], vars[0]) } else { (vars[0], vars[1]) };
            let facs = if a == b {
                let deg = f.degree_in(a).unwrap() as usize;
                let mut coeffs = vec![BigRational::zero(); deg + 1];
                for (m, c) in f.terms() {
                    coeffs[m.exponents()[a] as usize] = q_coef(c).clone();
                }
                factor_univariate_integer(&rational_to_integer_poly(&coeffs)).ok()?.len()
            } else {
                factor_bivariate(f, a, b).ok()?.len()
            };
            (facs == 1).then_some("factorization over QQ")
        }
        _ => None,
    }
}

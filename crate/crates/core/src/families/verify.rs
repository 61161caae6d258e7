//! Report builders that re-check each worked example end to end.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;

use super::constructions::{
    ara1_search, height_one_cover, nondomain_prime, odd_prime, pairs_min_primes, truncated_pairs_prime,
    truncated_pairs_ring, Ara1Result,
};
use super::family::{union_member, FamilyUnionCertificate, LocalizedClosedFamily};
use super::points::{line_avoiding, other_max_point, shifted};
use super::units::units_lift;
use crate::avoidance::{check_condition8, Condition8Config, PrimeSet};
use crate::error::{Error, Result};
use crate::field::{Scalar, ScalarField};
use crate::ideal::{monomial_min_primes, IdealHandle, PrimeCertificate, PrimeIdeal, RingMap};
use crate::poly::{PolyRing, Polynomial};
use crate::report::Report;
use crate::sampling::{ideal_elements, random_poly, random_poly_in, rng};

pub const EXAMPLES: [&str; 8] =
    ["nonNoethEx", "nonDomainEx", "counterEx2b", "epiCounterEx", "setOps", "closedPtsEx", "units", "geometry"];

#[derive(Clone, Debug, Default)]
pub struct ExampleOptions {
    pub seed: u64,
    /// Optional polynomial text replacing the sampled inputs.
    pub f: Option<String>,
}

pub fn verify_example(name: &str, opts: &ExampleOptions) -> Result<Report> {
    let f = opts.f.as_deref();
    match name {
        "nonNoethEx" => non_noeth_verify(f, opts.seed),
        "nonDomainEx" => non_domain_verify(f.unwrap_or("y + z"), 4),
        "counterEx2b" => counter_ex2b_verify(f, opts.seed),
        "epiCounterEx" => {
            let bs: Vec<BigRational> = [0, 1, 2, -1].iter().map(|b| rat(*b)).collect();
            epi_counterexample_verify(&bs, &sample_ab(10, opts.seed))
        }
        "setOps" => set_ops_verify(100, opts.seed),
        "closedPtsEx" => closed_pts_verify(opts.seed),
        "units" => units_verify(opts.seed),
        "geometry" => geometry_verify(opts.seed),
        _ => Err(Error::NotFound(format!("unknown example `{name}` (expected one of {})", EXAMPLES.join(", ")))),
    }
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn qconst(ring: &PolyRing, q: &BigRational) -> Polynomial {
    Polynomial::constant(ring.field(), ring.nvars(), Scalar::Rational(q.clone()))
}

fn sample_ab(count: usize, seed: u64) -> Vec<(BigRational, BigRational)> {
    let mut r = rng(seed);
    (0..count)
        .map(|_| {
            let mut a = 0;
            while a == 0 {
                a = r.gen_range(-5..=5);
            }
            (rat(a), rat(r.gen_range(-5..=5)))
        })
        .collect()
}

/// One variable from each pair, contains `f`, not the odd prime.
pub fn is_valid_pairs_prime(p: &PrimeIdeal, f: &Polynomial, n: usize) -> Result<bool> {
    if !matches!(p.certificate(), PrimeCertificate::Monomial) || p.ideal().generators().len() != n + 1 {
        return Ok(false);
    }
    let mut vars = Vec::new();
    for g in p.ideal().generators() {
        match g.variables().as_slice() {
            [v] if g.is_monomial() && g.total_degree() == Some(1) => vars.push(*v),
            _ => return Ok(false),
        }
    }
    vars.sort();
    let one_per_pair = vars.iter().enumerate().all(|(i, v)| v / 2 == i);
    let odd = odd_prime(p.ideal().ring())?;
    Ok(one_per_pair && p.ideal().member(f)? && !p.ideal().equals(odd.ideal())?)
}

/// A random nonzero element of the odd prime using only `x1, ..., x_{2N-1}`.
pub fn sample_odd_element(r: &mut impl Rng, ring: &Arc<PolyRing>, n: usize) -> Result<Polynomial> {
    let zero = IdealHandle::zero(ring);
    let all: Vec<usize> = (0..ring.nvars()).collect();
    loop {
        let mut f = ring.zero();
        for i in 0..n {
            if r.gen_bool(0.6) {
                let m = random_poly_in(r, ring, &all, 1, 2, 3) + ring.one();
                f = &f + &(&ring.var_at(2 * i + 1) * &m);
            }
        }
        if !zero.normal_form(&f)?.is_zero() {
            return zero.normal_form(&f);
        }
    }
}

/// A random nonzero element of a minimal prime of the pairs ring, built from
/// its picks in the first `N` pairs and supported on their variables. An
/// element of the untruncated ring involves finitely many pairs; leaving the
/// last pair free models that.
pub fn sample_prime_element(r: &mut impl Rng, p: &PrimeIdeal, n: usize) -> Result<Polynomial> {
    let ring = p.ideal().ring();
    let zero = IdealHandle::zero(ring);
    let low: Vec<usize> = (0..2 * n).collect();
    let picks: Vec<&Polynomial> = p.ideal().generators().iter().filter(|g| g.variables().iter().all(|v| *v < 2 * n)).collect();
    loop {
        let mut f = ring.zero();
        for g in &picks {
            if r.gen_bool(0.6) {
                let m = random_poly_in(r, ring, &low, 1, 2, 3) + ring.one();
                f = &f + &(*g * &m);
            }
        }
        let nf = zero.normal_form(&f)?;
        if !nf.is_zero() {
            return Ok(nf);
        }
    }
}

fn non_noeth_verify(f: Option<&str>, seed: u64) -> Result<Report> {
    let mut report = Report::new("verify nonNoethEx", seed);
    if let Some(text) = f {
        let ring = truncated_pairs_ring(ScalarField::Rationals, 2);
        let f = ring.poly(text)?;
        let p = truncated_pairs_prime(&f, 2)?;
        report.line(format!("N = 2, f = {}: minimal prime {p}", ring.fmt_poly(&f)));
        report.check("one variable per pair, contains f, differs from the odd prime", is_valid_pairs_prime(&p, &f, 2)?, "");
        return Ok(report);
    }
    let mut r = rng(seed);
    for n in 1..=3 {
        let ring = truncated_pairs_ring(ScalarField::Rationals, n);
        let mut ok = true;
        let mut shown = None;
        for _ in 0..10 {
            let f = sample_odd_element(&mut r, &ring, n)?;
            let p = truncated_pairs_prime(&f, n)?;
            ok &= is_valid_pairs_prime(&p, &f, n)?;
            shown.get_or_insert_with(|| format!("f = {} -> {p}", ring.fmt_poly(&f)));
        }
        report.line(format!("N = {n}: {}", shown.unwrap()));
        report.check(format!("N = {n}: 10 sampled f give valid distinct minimal primes"), ok, "");
    }
    let ring = truncated_pairs_ring(ScalarField::Rationals, 2);
    let mins = pairs_min_primes(&ring)?;
    let mut ok = true;
    for (i, p) in mins.iter().enumerate() {
        for _ in 0..5 {
            let f = sample_prime_element(&mut r, p, 2)?;
            let mut covered = false;
            for (k, other) in mins.iter().enumerate() {
                if k != i && other.ideal().member(&f)? {
                    covered = true;
                    break;
                }
            }
            ok &= covered;
        }
    }
    report.check(
        format!("N = 2: elements of each of the {} minimal primes lie in another", mins.len()),
        ok,
        "5 samples per prime, supported below the last pair",
    );
    Ok(report)
}

pub fn non_domain_verify(f_text: &str, degree: u32) -> Result<Report> {
    let mut report = Report::new(format!("verify nonDomainEx --f \"{f_text}\""), 0);
    let ring = PolyRing::parse(ScalarField::Rationals, &["x", "y", "z"], &["x*y", "x*z"])?;
    let f = ring.poly(f_text)?;
    let q = nondomain_prime(&ring)?;
    let p = height_one_cover(&f)?;
    report.line(format!("ring {ring}, q = {q}"));
    report.line(format!("height-one prime containing f: {p}"));
    report.check("prime certificate", p.verify()?, format!("{:?}", p.certificate()));
    report.check("f lies in the prime", p.ideal().member(&f)?, "");
    report.check("the prime does not contain q", !p.ideal().contains(q.ideal())?, "");
    match ara1_search(&q, degree)? {
        Ara1Result::Exhausted { degree, candidates } => {
            report.line(format!("no f with radical q among {candidates} candidates of degree <= {degree}"));
            report.check(format!("ara q > 1 up to degree {degree}"), true, "");
        }
        Ara1Result::Found(g) => {
            report.check(format!("ara q > 1 up to degree {degree}"), false, format!("found {}", ring.fmt_poly(&g)));
        }
    }
    Ok(report)
}

fn counter_ex2b_verify(f: Option<&str>, seed: u64) -> Result<Report> {
    let mut report = Report::new("verify counterEx2b", seed);
    let mut r = rng(seed);
    for p in [2u64, 3, 5] {
        let field = ScalarField::prime(p)?;
        let ring = PolyRing::parse(field.clone(), &["x", "y"], &[])?;
        let mut fs = Vec::new();
        match f {
            Some(text) => fs.push(ring.poly(text)?),
            None => {
                fs.push(ring.poly("x^2 + x*y + y^2")?);
                while fs.len() < 6 {
                    let g = random_poly(&mut r, &ring, 3, 3, 4);
                    let g = &g - &Polynomial::constant(&field, 2, g.evaluate(&[field.zero(), field.zero()])?);
                    if !g.is_zero() {
                        fs.push(g);
                    }
                }
            }
        }
        for g in &fs {
            let pt = other_max_point(g, p, 3)?;
            let vanishes = pt.field.is_zero(&g.evaluate_in(&pt.field, &pt.coords)?);
            let origin = pt.coords.iter().all(|c| pt.field.is_zero(c));
            report.check(format!("GF({p}): f = {} vanishes at {pt}", ring.fmt_poly(g)), vanishes && !origin, "");
        }
    }
    Ok(report)
}

/// `φ: QQ[s,t,u]/(su - t^2 + t) -> QQ[x,y]`, `s, t, u ↦ x, xy, xy^2 - y`.
pub fn epi_ring_map() -> Result<RingMap> {
    let source = PolyRing::parse(ScalarField::Rationals, &["s", "t", "u"], &["s*u - t^2 + t"])?;
    let target = PolyRing::parse(ScalarField::Rationals, &["x", "y"], &[])?;
    RingMap::parse(&source, &target, &["x", "x*y", "x*y^2 - y"])
}

/// Kernel of the map, computed by elimination from the graph ideal.
pub fn epi_kernel() -> Result<IdealHandle> {
    let big = PolyRing::parse(ScalarField::Rationals, &["s", "t", "u", "x", "y"], &[])?;
    IdealHandle::parse(&big, &["s - x", "t - x*y", "u - (x*y^2 - y)"])?.eliminate(&[0, 1, 2])
}

pub fn epi_counterexample_verify(b_samples: &[BigRational], ab_samples: &[(BigRational, BigRational)]) -> Result<Report> {
    let mut report = Report::new("verify epiCounterEx", 0);
    let kernel = epi_kernel()?;
    let expected = IdealHandle::parse(kernel.ring(), &["s*u - t^2 + t"])?;
    report.line(format!("kernel = {}", kernel.basis_strings()?.join(", ")));
    report.check("kernel is (s*u - t^2 + t)", kernel.equals(&expected)?, "");
    let phi = epi_ring_map()?;
    let (source, target) = (phi.source().clone(), phi.target().clone());
    let s = source.var_at(0);
    let t = source.var_at(1);
    for b in b_samples {
        let j = IdealHandle::new(&target, vec![target.var_at(0), &target.var_at(1) - &qconst(&target, b)])?;
        let c = phi.contract(&j)?;
        report.check(format!("preimage of (x, {}) contains s and t", shifted("y", b)), c.member(&s)? && c.member(&t)?, "");
    }
    for (a, b) in ab_samples {
        let j = IdealHandle::new(
            &target,
            vec![&target.var_at(0) - &qconst(&target, a), &target.var_at(1) - &qconst(&target, b)],
        )?;
        let c = phi.contract(&j)?;
        report.check(format!("s is not in the preimage of ({}, {})", shifted("x", a), shifted("y", b)), !c.member(&s)?, "");
    }
    let m = IdealHandle::parse(&source, &["s", "t - 1", "u"])?;
    report.line(format!("{m} is maximal but is the preimage of no closed point: x = 0 forces t in, x != 0 keeps s out"));
    report.check(format!("{m} is proper and contains s"), !m.is_unit()? && m.member(&s)? && !m.member(&t)?, "");
    Ok(report)
}

/// `q = (x, y)` against `D(x) ∪ D(y)` in `QQ[x, y]`.
pub fn set_ops_verify(samples: usize, seed: u64) -> Result<Report> {
    let mut report = Report::new("verify setOps", seed);
    let ring = PolyRing::parse(ScalarField::Rationals, &["x", "y"], &[])?;
    let fams = vec![
        LocalizedClosedFamily::basic_open(&ring, ring.var_at(0))?,
        LocalizedClosedFamily::basic_open(&ring, ring.var_at(1))?,
    ];
    let q = IdealHandle::parse(&ring, &["x", "y"])?;
    let elems = ideal_elements(&q, samples, seed)?;
    let mut all_in = true;
    for g in &elems {
        let mut hit = false;
        for f in &fams {
            let cert = union_member(g, f)?;
            if !cert.verify(g, f)? {
                return Err(Error::Invalid("union certificate failed".into()));
            }
            if matches!(cert, FamilyUnionCertificate::InUnion) {
                hit = true;
                break;
            }
        }
        all_in &= hit;
    }
    report.check(format!("all {} sampled elements of {q} lie in the union", elems.len()), all_in, "sampled, not exhaustive");
    for (name, f) in ["D(x)", "D(y)"].iter().zip(&fams) {
        report.check(format!("no prime of {name} contains {q}"), f.saturation_with(&q)?.is_unit()?, "saturation is (1)");
    }
    let c8 = check_condition8(&PrimeSet::Families(fams), std::slice::from_ref(&q), Condition8Config { samples, seed })?;
    report.check("prime avoidance fails for the union", !c8.all_verified(), c8.failed().first().map(|c| c.detail.clone()).unwrap_or_default());
    Ok(report)
}

/// `T = QQ[x, y]/(xy)` with `Λ = V(x)` and `W` its complement.
pub fn closed_pts_verify(seed: u64) -> Result<Report> {
    let mut report = Report::new("verify closedPtsEx", seed);
    let ring = PolyRing::parse(ScalarField::Rationals, &["x", "y"], &["x*y"])?;
    let zero = IdealHandle::zero(&ring);
    let x = ring.var_at(0);
    let y = ring.var_at(1);
    let vx = LocalizedClosedFamily::new(IdealHandle::new(&ring, vec![x.clone()])?, vec![ring.one()])?;
    let in_w = |f: &Polynomial| {
        let r = f.kill_variables(&[0]);
        !r.is_zero() && r.is_constant()
    };
    let mut r = rng(seed);
    let mut fs: Vec<Polynomial> = ["3 + x^2", "y + 1", "2 + x"].iter().map(|t| ring.poly(t)).collect::<Result<_>>()?;
    for _ in 0..30 {
        fs.push(random_poly(&mut r, &ring, 2, 3, 3));
    }
    let mut agree = true;
    for f in &fs {
        agree &= in_w(f) == !union_member(f, &vx)?.is_in_union();
    }
    report.check(format!("(i) W rule matches union membership on {} elements", fs.len()), agree, "");

    let mut ok = true;
    for _ in 0..10 {
        let a = ring.constant(r.gen_range(-20..=20));
        ok &= IdealHandle::new(&ring, vec![x.clone(), &y - &a])?.member(&x)?;
    }
    report.check("(ii) x lies in (x, y - a) for 10 sampled a", ok, "");

    let mut ok = true;
    let mut n = 0;
    while n < 50 {
        let c = r.gen_range(-9..=9);
        if c == 0 {
            continue;
        }
        let w = &Polynomial::from_i64(ring.field(), 2, c) + &(&x * &random_poly(&mut r, &ring, 2, 3, 3));
        debug_assert!(in_w(&w));
        ok &= in_w(&w) && !zero.normal_form(&(&x * &w))?.is_zero();
        n += 1;
    }
    report.check("(iii) x*w is nonzero for 50 sampled w in W", ok, "");
    report.check("(iv) x*y = 0, so x is a zerodivisor", zero.member(&(&x * &y))?, "");

    let mins = monomial_min_primes(&zero)?;
    report.line(format!("minimal primes: {}", mins.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", ")));
    let meet = mins[0].ideal().intersect(mins[1].ideal())?;
    let chain = mins.len() == 2
        && meet.equals(&zero)?
        && !zero.member(&x)?
        && mins.iter().any(|p| p.ideal().member(&x).unwrap_or(false))
        && mins.iter().any(|p| p.ideal().member(&y).unwrap_or(false))
        && !IdealHandle::new(&ring, vec![x.clone(), &y - &ring.one()])?.member(&y)?;
    report.check(
        "(v) intersection of minimal primes is 0, x is in the radical but not 0, y is in the union but not the radical",
        chain,
        "",
    );
    Ok(report)
}

fn units_verify(seed: u64) -> Result<Report> {
    let mut report = Report::new("verify units", seed);
    report.line("f, g in ZZ[x] (standing in for C[x]); h = g + c f^n has no root in the naturals");
    let ints = |v: &[i64]| v.iter().map(|c| BigInt::from(*c)).collect::<Vec<_>>();
    let mut pairs = vec![(ints(&[0, 1]), ints(&[-1, 1])), (ints(&[-1, 1]), ints(&[-2, 1]))];
    let mut r = rng(seed);
    while pairs.len() < 8 {
        let df = r.gen_range(1..=2);
        let dg = r.gen_range(0..=3);
        let f: Vec<i64> = (0..=df).map(|i| if i == df { r.gen_range(1..=3) } else { r.gen_range(-4..=4) }).collect();
        let g: Vec<i64> = (0..=dg).map(|_| r.gen_range(-4..=4)).collect();
        pairs.push((ints(&f), ints(&g)));
    }
    for (f, g) in pairs {
        match units_lift(&f, &g) {
            Ok(cert) => {
                report.check(format!("f = {f:?}, g = {g:?}: c = {}, n = {}", cert.c, cert.n), cert.verify(), "");
            }
            Err(Error::Precondition(msg)) => report.line(format!("f = {f:?}, g = {g:?}: skipped ({msg})")),
            Err(e) => return Err(e),
        }
    }
    Ok(report)
}

fn geometry_verify(seed: u64) -> Result<Report> {
    let mut report = Report::new("verify geometry", seed);
    let mut r = rng(seed);
    for _ in 0..5 {
        let p = (rat(r.gen_range(-3..=3)), rat(r.gen_range(-3..=3)));
        let pts: Vec<_> = (0..r.gen_range(1..=6))
            .map(|_| (rat(r.gen_range(-3..=3)), rat(r.gen_range(-3..=3))))
            .filter(|q| *q != p)
            .collect();
        let line = line_avoiding(&p, &pts)?;
        let ok = line.contains(&p) && !pts.iter().any(|q| line.contains(q));
        report.check(format!("line {line} through ({}, {}) misses {} points", p.0, p.1, pts.len()), ok, "");
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reports_verify() {
        for name in ["closedPtsEx", "epiCounterEx", "setOps", "units", "geometry", "counterEx2b"] {
            let r = verify_example(name, &ExampleOptions::default()).unwrap();
            assert!(r.all_verified(), "{name}: {r}");
        }
        assert!(verify_example("bogus", &ExampleOptions::default()).is_err());
    }

    #[test]
    fn kernel() {
        let k = epi_kernel().unwrap();
        assert_eq!(k.basis_strings().unwrap(), vec!["t^2 - s*u - t"]);
    }
}

//! Acceptance battery. Runs without the libtest harness so that each
//! criterion prints one line; exits nonzero when any criterion fails.

mod common;

use std::fmt::Write as _;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use primavoid::class_groups::{
    ara1_witness_quadratic, class_group, dd_verdict, prime_above, CurvePoint, DdEvidence, DdSetting, EllipticCurve,
};
use primavoid::families::{
    ara1_search, closed_pts_verify, epi_kernel, epi_ring_map, family_avoid_witness, height_one_cover, other_max_point,
    truncated_pairs_prime, truncated_pairs_ring, union_member, units_lift, Ara1Result,
};
use primavoid::{
    lemma_witness, Error, FamilyUnionCertificate, FinitePrimeSet, IdealHandle, LocalizedClosedFamily, PolyRing,
    Polynomial, PrimeCertificate, PrimeIdeal, ScalarField,
};
use rand::Rng;

const SEED: u64 = 0;

struct Outcome {
    pass: bool,
    summary: String,
    /// Everything the criterion computed, for the rerun comparison.
    transcript: String,
}

fn outcome(pass: bool, summary: String, transcript: String) -> Outcome {
    Outcome { pass, summary, transcript }
}

// 1. Lemma witnesses.

/// A prime the test can decide membership in without Gröbner bases.
enum TestPrime {
    Vars(Vec<usize>),
    Point(Vec<i64>),
    /// `c0 + sum c_i x_i` with a nonzero `c_pivot`.
    Hyperplane(Vec<i64>, i64),
}

impl TestPrime {
    fn build(&self, ring: &std::sync::Arc<PolyRing>) -> PrimeIdeal {
        match self {
            TestPrime::Vars(v) => PrimeIdeal::monomial(ring, v).unwrap(),
            TestPrime::Point(p) => {
                PrimeIdeal::point(ring, p.iter().map(|&a| ring.field().from_i64(a)).collect()).unwrap()
            }
            TestPrime::Hyperplane(c, c0) => {
                let mut f = ring.constant(*c0);
                for (i, ci) in c.iter().enumerate() {
                    f = &f + &(&ring.constant(*ci) * &ring.var_at(i));
                }
                PrimeIdeal::certify(IdealHandle::new(ring, vec![f]).unwrap()).unwrap()
            }
        }
    }

    /// `f` lies in the prime, by substitution.
    fn holds(&self, ring: &std::sync::Arc<PolyRing>, f: &Polynomial) -> bool {
        let n = ring.nvars();
        let images: Vec<Polynomial> = match self {
            TestPrime::Vars(v) => (0..n).map(|i| if v.contains(&i) { ring.zero() } else { ring.var_at(i) }).collect(),
            TestPrime::Point(p) => p.iter().map(|&a| ring.constant(a)).collect(),
            TestPrime::Hyperplane(c, c0) => {
                let k = c.iter().position(|&x| x != 0).unwrap();
                let inv = ring.field().from_rational(&(BigRational::from_integer((-1).into()) / q(c[k]))).unwrap();
                let mut rest = ring.constant(*c0);
                for (i, ci) in c.iter().enumerate() {
                    if i != k {
                        rest = &rest + &(&ring.constant(*ci) * &ring.var_at(i));
                    }
                }
                let sub = rest.scale(&inv);
                (0..n).map(|i| if i == k { sub.clone() } else { ring.var_at(i) }).collect()
            }
        };
        f.substitute(&images).unwrap().is_zero()
    }
}

fn random_test_prime(r: &mut impl Rng, n: usize) -> TestPrime {
    match r.gen_range(0..3) {
        0 => {
            let mut v: Vec<usize> = (0..n).filter(|_| r.gen_bool(0.5)).collect();
            if v.is_empty() {
                v.push(r.gen_range(0..n));
            }
            TestPrime::Vars(v)
        }
        1 => TestPrime::Point((0..n).map(|_| r.gen_range(-2..=2)).collect()),
        _ => {
            let mut c: Vec<i64> = (0..n).map(|_| r.gen_range(-2..=2)).collect();
            if c.iter().all(|&x| x == 0) {
                c[r.gen_range(0..n)] = 1;
            }
            TestPrime::Hyperplane(c, r.gen_range(-2..=2))
        }
    }
}

fn lemma_battery(seed: u64) -> Outcome {
    let vars = ["x", "y", "z"];
    let ring = ring(ScalarField::Rationals, &vars);
    let mut r = rng(seed);
    let mut t = String::new();
    let (mut witnessed, mut contained, mut bad) = (0, 0, 0);
    let start = Instant::now();
    for case in 0..500 {
        let tp: Vec<TestPrime> = (0..r.gen_range(1..=4)).map(|_| random_test_prime(&mut r, 3)).collect();
        let ngens = r.gen_range(1..=3);
        let gens: Vec<Polynomial> = (0..ngens)
            .map(|_| loop {
                let terms = r.gen_range(1..=3);
                let f = ring.poly(&poly_text(&mut r, &vars, 3, terms, 4)).unwrap();
                if !f.is_zero() {
                    break f;
                }
            })
            .collect();
        let ideal = IdealHandle::new(&ring, gens.clone()).unwrap();
        let set = FinitePrimeSet::new(tp.iter().map(|p| p.build(&ring)).collect()).unwrap();
        let inside = tp.iter().any(|p| gens.iter().all(|g| p.holds(&ring, g)));
        match lemma_witness(&ideal, &set) {
            Ok(w) => {
                let mut combo = ring.zero();
                for (c, g) in w.lift.generators.iter().zip(&gens) {
                    combo = &combo + &(c * g);
                }
                let ok = !inside
                    && combo == w.witness
                    && tp.iter().all(|p| !p.holds(&ring, &w.witness))
                    && w.verify(&ideal, &set).unwrap();
                witnessed += 1;
                bad += usize::from(!ok);
                let _ = writeln!(t, "{case}: {}", ring.fmt_poly(&w.witness));
            }
            Err(Error::ContainedInPrime(k)) => {
                contained += 1;
                let ok = inside && set.primes()[k].ideal().contains(&ideal).unwrap();
                bad += usize::from(!ok);
                let _ = writeln!(t, "{case}: inside {}", set.primes()[k]);
            }
            Err(e) => {
                bad += 1;
                let _ = writeln!(t, "{case}: error {e}");
            }
        }
    }
    let el = start.elapsed();
    outcome(
        bad == 0 && el < Duration::from_secs(60),
        format!(
            "500 instances: {witnessed} witnesses, {contained} contained cases, {bad} failures, {:.1} s",
            el.as_secs_f64()
        ),
        t,
    )
}

// 2. Gröbner membership against linear algebra.

fn groebner_oracle(seed: u64) -> Outcome {
    let names = ["x", "y", "z"];
    let mut r = rng(seed);
    let mut t = String::new();
    let (mut checks, mut disagree, mut members) = (0, 0, 0);
    for n in 1..=3 {
        let vars = &names[..n];
        let ring = ring(ScalarField::Rationals, vars);
        for k in 1..=3 {
            for d in 1..=3u32 {
                for _ in 0..3 {
                    let gens: Vec<Polynomial> = (0..k)
                        .map(|_| loop {
                            let terms = r.gen_range(1..=3);
                            let f = ring.poly(&poly_text(&mut r, vars, d, terms, 3)).unwrap();
                            if !f.is_zero() {
                                break f;
                            }
                        })
                        .collect();
                    let ideal = IdealHandle::new(&ring, gens.clone()).unwrap();
                    let mut tests = Vec::new();
                    for _ in 0..2 {
                        let mut f = ring.zero();
                        for g in &gens {
                            let room = 6 - g.total_degree().unwrap_or(0);
                            let c = ring.poly(&poly_text(&mut r, vars, room.min(2), 2, 3)).unwrap();
                            f = &f + &(&c * g);
                        }
                        tests.push(f);
                    }
                    for _ in 0..2 {
                        tests.push(ring.poly(&poly_text(&mut r, vars, 3, 3, 3)).unwrap());
                    }
                    tests.push(&tests[0] + &ring.var_at(0));
                    tests.push(ring.one());
                    for f in &tests {
                        let gb = ideal.member(f).unwrap();
                        let la = bounded_member(f, &gens, 6);
                        checks += 1;
                        members += usize::from(gb);
                        if gb != la {
                            disagree += 1;
                            let _ = writeln!(t, "disagree: {} in {ideal}: gb {gb}, oracle {la}", ring.fmt_poly(f));
                        }
                    }
                    let _ = writeln!(t, "{ideal}: {:?}", ideal.basis_strings().unwrap());
                }
            }
        }
    }
    outcome(
        disagree == 0,
        format!("{checks} membership queries over the n, k, d <= 3 grid ({members} members), {disagree} disagreements"),
        t,
    )
}

// 3. Truncated pairs ring.

/// Normal form modulo the pair relations: drop terms divisible by some
/// `x_{2i} x_{2i+1}`.
fn pairs_reduce(f: &Polynomial, ring: &PolyRing) -> Polynomial {
    let mut out = ring.zero();
    for (m, c) in f.terms() {
        let e = m.exponents();
        if (0..e.len() / 2).all(|i| e[2 * i] == 0 || e[2 * i + 1] == 0) {
            out = &out + &Polynomial::monomial(ring.field(), m.clone(), c.clone());
        }
    }
    out
}

/// Choice vector `picks[i] ∈ {2i, 2i+1}` contains `f`.
fn picks_contain(f: &Polynomial, picks: &[usize]) -> bool {
    f.kill_variables(picks).is_zero()
}

fn pairs_sample(r: &mut impl Rng, ring: &PolyRing, gens: &[usize], n: usize) -> Polynomial {
    let names: Vec<&str> = ring.vars().iter().map(String::as_str).collect();
    let low = &names[..2 * n];
    loop {
        let mut f = ring.zero();
        for &g in gens {
            if r.gen_bool(0.6) {
                let m = ring.poly(&format!("{} + 1", poly_text(r, low, 1, 2, 3))).unwrap();
                f = &f + &(&ring.var_at(g) * &m);
            }
        }
        let f = pairs_reduce(&f, ring);
        if !f.is_zero() {
            return f;
        }
    }
}

fn non_noeth(seed: u64) -> Outcome {
    let mut r = rng(seed);
    let mut t = String::new();
    let (mut valid, mut total) = (0, 0);
    for n in 1..=4 {
        let ring = truncated_pairs_ring(ScalarField::Rationals, n);
        let odd: Vec<usize> = (0..=n).map(|i| 2 * i + 1).collect();
        for _ in 0..100 {
            let f = pairs_sample(&mut r, &ring, &odd[..n], n);
            total += 1;
            let Ok(p) = truncated_pairs_prime(&f, n) else {
                let _ = writeln!(t, "N={n} {}: error", ring.fmt_poly(&f));
                continue;
            };
            let mut vars: Vec<usize> = p
                .ideal()
                .generators()
                .iter()
                .filter_map(|g| match g.variables().as_slice() {
                    [v] if g.is_monomial() && g.total_degree() == Some(1) => Some(*v),
                    _ => None,
                })
                .collect();
            vars.sort();
            let ok = vars.len() == n + 1
                && p.ideal().generators().len() == n + 1
                && vars.iter().enumerate().all(|(i, v)| v / 2 == i)
                && vars != odd
                && picks_contain(&f, &vars);
            valid += usize::from(ok);
            let _ = writeln!(t, "N={n} {} -> {p}", ring.fmt_poly(&f));
        }
    }
    let (mut covered, mut sym_total) = (0, 0);
    for n in 1..=3 {
        let ring = truncated_pairs_ring(ScalarField::Rationals, n);
        for mask in 0..(1u32 << (n + 1)) {
            let picks: Vec<usize> = (0..=n).map(|i| 2 * i + ((mask >> i) & 1) as usize).collect();
            for _ in 0..20 {
                let f = pairs_sample(&mut r, &ring, &picks[..n], n);
                sym_total += 1;
                let other = (0..(1u32 << (n + 1))).filter(|&m| m != mask).find(|&m| {
                    let q: Vec<usize> = (0..=n).map(|i| 2 * i + ((m >> i) & 1) as usize).collect();
                    picks_contain(&f, &q)
                });
                covered += usize::from(other.is_some());
                let _ = writeln!(t, "N={n} mask {mask}: {} also in mask {other:?}", ring.fmt_poly(&f));
            }
        }
    }
    outcome(
        valid == total && covered == sym_total,
        format!("{valid}/{total} valid distinct minimal primes; {covered}/{sym_total} prime elements lie in another minimal prime"),
        t,
    )
}

// 4. Non-domain example.

fn non_domain(seed: u64) -> Outcome {
    let mut r = rng(seed);
    let mut t = String::new();
    let ring = PolyRing::parse(ScalarField::Rationals, &["x", "y", "z"], &["x*y", "x*z"]).unwrap();
    let q = IdealHandle::parse(&ring, &["y", "z"]).unwrap();
    let zero = IdealHandle::zero(&ring);
    let mut good = 0;
    for _ in 0..50 {
        let f = loop {
            let a = poly_text(&mut r, &["y", "z"], 1, 2, 3);
            let b = poly_text(&mut r, &["y", "z"], 1, 2, 3);
            let f = ring.poly(&format!("y*({a}) + z*({b})")).unwrap();
            if !zero.member(&f).unwrap() {
                break f;
            }
        };
        let ok = match height_one_cover(&f) {
            Ok(p) => {
                let g = p.ideal().generators();
                let f1_ok = g.len() == 2
                    && g[0] == ring.var_at(0)
                    && g[1].variables().iter().all(|&v| v > 0)
                    && g[1].total_degree().unwrap_or(0) >= 1;
                let _ = writeln!(t, "{} -> {p}", ring.fmt_poly(&f));
                f1_ok
                    && matches!(p.certificate(), PrimeCertificate::VariablesPlusIrreducible { .. })
                    && p.verify().unwrap()
                    && p.ideal().member(&f).unwrap()
                    && !p.ideal().contains(&q).unwrap()
            }
            Err(e) => {
                let _ = writeln!(t, "{} -> error {e}", ring.fmt_poly(&f));
                false
            }
        };
        good += usize::from(ok);
    }
    let qp = PrimeIdeal::monomial(&ring, &[1, 2]).unwrap();
    let exhausted = match ara1_search(&qp, 4).unwrap() {
        Ara1Result::Exhausted { degree, candidates } => {
            let _ = writeln!(t, "(y, z): exhausted {candidates} candidates");
            degree == 4
        }
        Ara1Result::Found(g) => {
            let _ = writeln!(t, "(y, z): found {}", ring.fmt_poly(&g));
            false
        }
    };
    let plane = ring_xy();
    let xp = PrimeIdeal::monomial(&plane, &[0]).unwrap();
    let found_x = match ara1_search(&xp, 4).unwrap() {
        Ara1Result::Found(g) => g.variables() == vec![0] && g.is_monomial() && g.total_degree() == Some(1),
        Ara1Result::Exhausted { .. } => false,
    };
    outcome(
        good == 50 && exhausted && found_x,
        format!("{good}/50 height-one covers; ara1 (y, z) exhausted at degree 4: {exhausted}; ara1 (x) = x: {found_x}"),
        t,
    )
}

fn ring_xy() -> std::sync::Arc<PolyRing> {
    ring(ScalarField::Rationals, &["x", "y"])
}

// 5. Epimorphism counterexample.

fn epi(seed: u64) -> Outcome {
    let mut r = rng(seed);
    let mut t = String::new();
    let kernel = epi_kernel().unwrap();
    let expected = IdealHandle::parse(kernel.ring(), &["s*u - t^2 + t"]).unwrap();
    let kernel_ok = kernel.equals(&expected).unwrap();
    let _ = writeln!(t, "kernel {:?}", kernel.basis_strings().unwrap());
    let map = epi_ring_map().unwrap();
    let target = map.target().clone();
    // φ(s), φ(t) evaluated at (a, b); the contraction of a point ideal is
    // membership by vanishing.
    let at = |f: &Polynomial, a: &BigRational, b: &BigRational| {
        let fld = ScalarField::Rationals;
        fld.is_zero(&f.evaluate(&[fld.from_rational(a).unwrap(), fld.from_rational(b).unwrap()]).unwrap())
    };
    let s = map.source().var("s").unwrap();
    let tt = map.source().var("t").unwrap();
    let phi_s = map.apply(&s).unwrap();
    let phi_t = map.apply(&tt).unwrap();
    let mut ok = kernel_ok;
    for b in [0, 1, 2, -1] {
        let j = IdealHandle::new(&target, vec![target.var_at(0), &target.var_at(1) - &target.constant(b)]).unwrap();
        let c = map.contract(&j).unwrap();
        let lib = c.member(&s).unwrap() && c.member(&tt).unwrap();
        let oracle = at(&phi_s, &q(0), &q(b)) && at(&phi_t, &q(0), &q(b));
        ok &= lib && oracle;
        let _ = writeln!(t, "b = {b}: {c}");
    }
    for _ in 0..10 {
        let a = loop {
            let a = r.gen_range(-5..=5);
            if a != 0 {
                break a;
            }
        };
        let b = r.gen_range(-5..=5);
        let j = IdealHandle::new(
            &target,
            vec![&target.var_at(0) - &target.constant(a), &target.var_at(1) - &target.constant(b)],
        )
        .unwrap();
        let c = map.contract(&j).unwrap();
        let lib = c.member(&s).unwrap();
        let oracle = at(&phi_s, &q(a), &q(b));
        ok &= !lib && !oracle;
        let _ = writeln!(t, "({a}, {b}): {c}");
    }
    outcome(ok, format!("kernel is (su - t^2 + t): {kernel_ok}; 4 fibers over x = 0 and 10 off it agree with evaluation"), t)
}

// 6. Localized closed families.

fn family_duality(seed: u64) -> Outcome {
    let vars = ["x", "y", "z"];
    let ring = ring(ScalarField::Rationals, &vars);
    let mut r = rng(seed);
    let mut t = String::new();
    let (mut agree, mut witnesses, mut bad_cert) = (0, 0, 0);
    for case in 0..200 {
        let rand_gens = |r: &mut rand_chacha::ChaCha8Rng, lo: usize, hi: usize, deg: u32| -> Vec<Polynomial> {
            (0..r.gen_range(lo..=hi))
                .map(|_| loop {
                    let terms = r.gen_range(1..=2);
                    let f = ring.poly(&poly_text(r, &vars, deg, terms, 2)).unwrap();
                    if !f.is_zero() {
                        break f;
                    }
                })
                .collect()
        };
        let i_gens = rand_gens(&mut r, 0, 2, 2);
        let u_gens = rand_gens(&mut r, 1, 2, 1);
        let q_gens = rand_gens(&mut r, 1, 2, 2);
        let fam = LocalizedClosedFamily::new(IdealHandle::new(&ring, i_gens.clone()).unwrap(), u_gens.clone()).unwrap();
        let qi = IdealHandle::new(&ring, q_gens.clone()).unwrap();
        let u = u_gens.iter().fold(ring.one(), |acc, g| &acc * g);
        let mut iq = i_gens.clone();
        iq.extend(q_gens.iter().cloned());
        let proper = !rabinowitsch(&ring, &iq, &u);
        let lib_proper = match family_avoid_witness(&qi, &fam) {
            Ok(w) => {
                witnesses += 1;
                let mut ig = i_gens.clone();
                ig.push(w.element.clone());
                let cert = w.verify(&qi, &fam).unwrap() && qi.member(&w.element).unwrap() && rabinowitsch(&ring, &ig, &u);
                bad_cert += usize::from(!cert);
                let _ = writeln!(t, "{case}: witness {}", ring.fmt_poly(&w.element));
                false
            }
            Err(Error::FamilyContains(sat)) => {
                let _ = writeln!(t, "{case}: saturation {sat}");
                !sat.is_unit().unwrap()
            }
            Err(e) => {
                let _ = writeln!(t, "{case}: error {e}");
                !proper
            }
        };
        agree += usize::from(lib_proper == proper);
    }
    outcome(
        agree == 200 && bad_cert == 0,
        format!("{agree}/200 agree with the Rabinowitsch oracle; {witnesses} witnesses, {bad_cert} bad certificates"),
        t,
    )
}

// 7. Set operations failure.

fn set_ops(seed: u64) -> Outcome {
    let ring = ring_xy();
    let mut r = rng(seed);
    let mut t = String::new();
    let x = ring.var_at(0);
    let y = ring.var_at(1);
    let dx = LocalizedClosedFamily::basic_open(&ring, x.clone()).unwrap();
    let dy = LocalizedClosedFamily::basic_open(&ring, y.clone()).unwrap();
    let q = IdealHandle::parse(&ring, &["x", "y"]).unwrap();
    let mut in_union = 0;
    let mut oracle_agree = 0;
    for _ in 0..100 {
        let f = loop {
            let a = poly_text(&mut r, &["x", "y"], 2, 2, 3);
            let b = poly_text(&mut r, &["x", "y"], 2, 2, 3);
            let f = ring.poly(&format!("x*({a}) + y*({b})")).unwrap();
            if !f.is_zero() {
                break f;
            }
        };
        let cx = union_member(&f, &dx).unwrap();
        let cy = union_member(&f, &dy).unwrap();
        let ox = !rabinowitsch(&ring, std::slice::from_ref(&f), &x);
        let oy = !rabinowitsch(&ring, std::slice::from_ref(&f), &y);
        in_union += usize::from(cx.is_in_union() || cy.is_in_union());
        oracle_agree += usize::from(cx.is_in_union() == ox && cy.is_in_union() == oy);
        let tag = |c: &FamilyUnionCertificate| if c.is_in_union() { "in" } else { "out" };
        let _ = writeln!(t, "{}: D(x) {}, D(y) {}", ring.fmt_poly(&f), tag(&cx), tag(&cy));
    }
    let mut avoids = true;
    for (fam, u) in [(&dx, &x), (&dy, &y)] {
        avoids &= match family_avoid_witness(&q, fam) {
            Ok(w) => w.verify(&q, fam).unwrap() && rabinowitsch(&ring, &[x.clone(), y.clone()], u),
            Err(_) => false,
        };
    }
    outcome(
        in_union == 100 && oracle_agree == 100 && avoids,
        format!("{in_union}/100 sampled f in the union ({oracle_agree} match the oracle); no family prime contains (x, y): {avoids}"),
        t,
    )
}

// 8. Other maximal points over finite fields.

fn counter_ex2b(seed: u64) -> Outcome {
    let mut r = rng(seed);
    let mut t = String::new();
    let mut good = 0;
    for p in [2u64, 3, 5] {
        let field = ScalarField::prime(p).unwrap();
        let ring = ring(field, &["x", "y"]);
        for _ in 0..20 {
            let f = loop {
                let a = poly_text(&mut r, &["x", "y"], 2, 2, 4);
                let b = poly_text(&mut r, &["x", "y"], 2, 2, 4);
                let f = ring.poly(&format!("x*({a}) + y*({b})")).unwrap();
                if !f.is_zero() {
                    break f;
                }
            };
            let ok = match other_max_point(&f, p, 3) {
                Ok(pt) => {
                    let _ = writeln!(t, "GF({p}) {}: {pt}", ring.fmt_poly(&f));
                    pt.degree <= 3
                        && pt.field.characteristic() == p
                        && !(pt.field.is_zero(&pt.coords[0]) && pt.field.is_zero(&pt.coords[1]))
                        && pt.field.is_zero(&f.evaluate_in(&pt.field, &pt.coords).unwrap())
                }
                Err(e) => {
                    let _ = writeln!(t, "GF({p}) {}: error {e}", ring.fmt_poly(&f));
                    false
                }
            };
            good += usize::from(ok);
        }
    }
    outcome(good == 60, format!("{good}/60 non-origin zeros found with k <= 3"), t)
}

// 9. Class groups.

fn brute_forms(d: i64) -> Vec<(i64, i64, i64)> {
    let mut out = Vec::new();
    for a in 1..=d.abs() {
        for b in -a..=a {
            let num = b * b - d;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            let reduced = a <= c && !((b.abs() == a || a == c) && b < 0);
            let g = num_integer::gcd(num_integer::gcd(a, b), c);
            if reduced && g == 1 {
                out.push((a, b, c));
            }
        }
    }
    out.sort();
    out
}

fn class_groups(_seed: u64) -> Outcome {
    let start = Instant::now();
    let mut t = String::new();
    let mut ok = true;
    for d in [-4i64, -20, -23, -56, -84, -103] {
        let g = class_group(&BigInt::from(d)).unwrap();
        let mut lib: Vec<(i64, i64, i64)> =
            g.forms.iter().map(|f| (f.a.to_i64().unwrap(), f.b.to_i64().unwrap(), f.c.to_i64().unwrap())).collect();
        lib.sort();
        ok &= lib == brute_forms(d) && g.verify().unwrap();
        let _ = writeln!(t, "D = {d}: h = {}", g.h());
    }
    let h4 = class_group(&BigInt::from(-4)).unwrap().h();
    let g20 = class_group(&BigInt::from(-20)).unwrap();
    let forms20: Vec<String> = g20.forms.iter().map(|f| f.to_string()).collect();
    ok &= h4 == 1 && forms20 == ["(1,0,5)", "(2,2,3)"];
    let (_, m) = prime_above(2, &BigInt::from(-20)).unwrap();
    let m = m.unwrap();
    let cert = ara1_witness_quadratic(&m).unwrap();
    // m = (2, 1 + w), w^2 = -5: products of the Z-basis span m^2.
    let two = BigInt::from(2);
    let (ma, mb, mc) = (m.a.clone(), m.b.clone(), m.c.clone());
    let basis = [(ma.clone(), BigInt::zero()), (mb.clone(), mc.clone())];
    let mul = |p: &(BigInt, BigInt), r: &(BigInt, BigInt)| (&p.0 * &r.0 - BigInt::from(5) * &p.1 * &r.1, &p.0 * &r.1 + &p.1 * &r.0);
    let prods: Vec<_> = basis.iter().flat_map(|p| basis.iter().map(move |r| mul(p, r))).collect();
    let hnf_m2 = hnf2(&prods);
    let x = (cert.x.u.clone(), cert.x.v.clone());
    let hnf_x = hnf2(&[x.clone(), mul(&x, &(BigInt::zero(), BigInt::from(1)))]);
    let norm_x = &x.0 * &x.0 + BigInt::from(5) * &x.1 * &x.1;
    ok &= cert.n == 2
        && x == (two.clone(), BigInt::zero())
        && hnf_m2 == hnf_x
        && hnf_m2 == (cert.power.a.clone(), cert.power.b.clone(), cert.power.c.clone())
        && norm_x == &ma * &ma * &mc * &mc
        && cert.verify().unwrap();
    let _ = writeln!(t, "m = {m}: n = {}, x = {:?}, HNF {:?}", cert.n, x, hnf_m2);
    let el = start.elapsed();
    outcome(
        ok && el < Duration::from_secs(5),
        format!("h(-4) = 1, h(-20) = 2 with (1,0,5), (2,2,3); m^2 = (2) by HNF; {:.2} s", el.as_secs_f64()),
        t,
    )
}

// 10. Elliptic verdicts.

fn elliptic(_seed: u64) -> Outcome {
    let mut t = String::new();
    let mut ok = true;
    for (a, b, px, py, expect) in [(0, 1, 2, 3, Some(6u64)), (0, 1, -1, 0, Some(2)), (0, -2, 3, 5, None)] {
        let curve = EllipticCurve::new(a, b).unwrap();
        let point = CurvePoint::affine(px, py);
        let v = dd_verdict(&DdSetting::Elliptic { curve: curve.clone(), point }).unwrap();
        let DdEvidence::Elliptic(cert) = &v.evidence else {
            ok = false;
            continue;
        };
        let base: Pt = Some((q(px), q(py)));
        let mut cur = base.clone();
        let mut own = Vec::new();
        for _ in 0..12 {
            own.push(cur.clone());
            if cur.is_none() {
                break;
            }
            cur = ec_add(&cur, &base, &q(a));
        }
        let lib: Vec<Pt> = cert
            .ladder
            .iter()
            .map(|p| match p {
                CurvePoint::Infinity => None,
                CurvePoint::Affine(x, y) => Some((x.clone(), y.clone())),
            })
            .collect();
        let on_curve = own.iter().flatten().all(|(x, y)| y * y == x * x * x + q(a) * x + q(b));
        ok &= lib == own
            && on_curve
            && cert.verify()
            && v.verify().unwrap()
            && v.order == expect
            && v.holds == expect.is_some();
        let _ = writeln!(t, "{curve} at ({px}, {py}): order {:?}, ladder {}", v.order, cert.ladder.len());
    }
    outcome(ok, "(2,3) order 6 holds, (-1,0) order 2 holds, (3,5) on y^2 = x^3 - 2 fails; ladders match".into(), t)
}

// 11. Units lift.

fn eval(f: &[BigInt], m: &BigInt) -> BigInt {
    f.iter().rev().fold(BigInt::zero(), |acc, c| acc * m + c)
}

fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn units(seed: u64) -> Outcome {
    let mut r = rng(seed);
    let mut t = String::new();
    let mut good = 0;
    let mut count = 0;
    while count < 30 {
        let rand_poly = |r: &mut rand_chacha::ChaCha8Rng, deg: usize| -> Vec<BigInt> {
            let mut v: Vec<BigInt> = (0..=deg).map(|_| BigInt::from(r.gen_range(-4..=4))).collect();
            while v[deg].is_zero() {
                v[deg] = BigInt::from(r.gen_range(-4..=4));
            }
            v
        };
        let df = r.gen_range(1..=2);
        let dg = r.gen_range(0..=3);
        let f = rand_poly(&mut r, df);
        let g = rand_poly(&mut r, dg);
        let bound = |p: &[BigInt]| {
            let lc = p.last().unwrap().abs();
            let mx = p.iter().map(|c| c.abs()).max().unwrap();
            let b: BigInt = mx / lc + 2;
            b.to_i64().unwrap()
        };
        let common = (0..=bound(&f)).any(|m| {
            let m = BigInt::from(m);
            eval(&f, &m).is_zero() && eval(&g, &m).is_zero()
        });
        if common {
            continue;
        }
        count += 1;
        let ok = match units_lift(&f, &g) {
            Ok(cert) => {
                let mut fnn = vec![BigInt::from(1)];
                for _ in 0..cert.n {
                    fnn = poly_mul(&fnn, &f);
                }
                let mut h: Vec<BigInt> = fnn.iter().map(|c| c * &cert.c).collect();
                if h.len() < g.len() {
                    h.resize(g.len(), BigInt::zero());
                }
                for (i, c) in g.iter().enumerate() {
                    h[i] += c;
                }
                while h.len() > 1 && h.last().unwrap().is_zero() {
                    h.pop();
                }
                let hb = bound(&h);
                let no_root = (0..=hb).all(|m| !eval(&h, &BigInt::from(m)).is_zero());
                let _ = writeln!(t, "f = {f:?}, g = {g:?}: c = {}, n = {}", cert.c, cert.n);
                cert.verify() && cert.c.is_positive() && no_root && h.len() > 1
            }
            Err(e) => {
                let _ = writeln!(t, "f = {f:?}, g = {g:?}: error {e}");
                false
            }
        };
        good += usize::from(ok);
    }
    outcome(good == 30, format!("{good}/30 certificates verify; g + c f^n has no root in N by direct evaluation"), t)
}

// 12. Closed points.

fn closed_pts(seed: u64) -> Outcome {
    let rep = closed_pts_verify(seed).unwrap();
    let labels = ["(i)", "(ii)", "(iii)", "(iv)", "(v)"];
    let all_five = labels.iter().all(|l| rep.certificates.iter().any(|c| c.name.starts_with(l) && c.passed));
    outcome(
        rep.all_verified() && all_five,
        format!("{} checks, assertions (i)-(v) present and verified: {all_five}", rep.certificates.len()),
        rep.to_string(),
    )
}

type Criterion = (&'static str, fn(u64) -> Outcome);

const CRITERIA: [Criterion; 12] = [
    ("lemma witness battery", lemma_battery),
    ("groebner oracle equivalence", groebner_oracle),
    ("nonNoethEx", non_noeth),
    ("nonDomainEx", non_domain),
    ("epiCounterEx", epi),
    ("localized family duality", family_duality),
    ("setOps failure report", set_ops),
    ("counterEx2b", counter_ex2b),
    ("class groups", class_groups),
    ("elliptic ddverdict", elliptic),
    ("units_lift", units),
    ("closedPtsEx", closed_pts),
];

fn main() -> ExitCode {
    let mut transcripts = Vec::new();
    let mut all = true;
    for (i, (name, run)) in CRITERIA.iter().enumerate() {
        let o = run(SEED);
        if !o.pass && std::env::var_os("ACCEPTANCE_TRANSCRIPT").is_some() {
            eprintln!("{}", o.transcript);
        }
        all &= o.pass;
        println!("[{}] {:>2} {name}: {}", if o.pass { "PASS" } else { "FAIL" }, i + 1, o.summary);
        transcripts.push(o.transcript);
    }
    let mut same = 0;
    for ((_, run), first) in CRITERIA.iter().zip(&transcripts) {
        same += usize::from(run(SEED).transcript == *first);
    }
    let det = same == CRITERIA.len();
    all &= det;
    println!(
        "[{}] 13 determinism: {same}/{} criteria rerun byte-identically with seed {SEED}",
        if det { "PASS" } else { "FAIL" },
        CRITERIA.len()
    );
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

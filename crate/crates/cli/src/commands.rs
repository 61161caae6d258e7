use anyhow::{anyhow, Result};
use num_bigint::BigInt;
use primavoid::class_groups::{class_group, dd_verdict, prime_above, DdEvidence, DdSetting, QuadIdeal};
use primavoid::families::{
    ara1_search, family_avoid_witness, monoid_element_text, union_member, verify_example, Ara1Result,
    ExampleOptions, FamilyUnionCertificate,
};
use primavoid::{
    decide_union_finite, in_lambda_cl, lambda_max, lemma_witness, AvoidVerdict, Error, FinitePrimeSet, Report,
};

use crate::session::{Command, Entry, Session};

fn prime_set(session: &Session, names: &[String]) -> Result<FinitePrimeSet> {
    let primes = names.iter().map(|n| session.primes[n].clone()).collect();
    Ok(FinitePrimeSet::new(primes)?)
}

fn list(set: &FinitePrimeSet) -> String {
    set.primes().iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", ")
}

pub fn run_command(session: &Session, entry: &Entry, seed: u64) -> Result<Report> {
    let mut report = Report::new(entry.text.clone(), seed);
    match &entry.command {
        Command::Avoid { ideal, primes } => {
            let i = &session.ideals[ideal];
            let set = prime_set(session, primes)?;
            let v = decide_union_finite(i, &set)?;
            let summary = v.summary(i, &set)?;
            match &v {
                AvoidVerdict::ContainedIn(k) => report.line(format!("verdict: {i} is contained in {}", set.primes()[*k])),
                AvoidVerdict::Witness(w) => {
                    report.line(format!("verdict: witness {}", i.ring().fmt_poly(&w.witness)))
                }
            }
            for (name, ok) in summary.checks {
                report.check(name, ok, "");
            }
        }
        Command::Witness { ideal, primes } => {
            let i = &session.ideals[ideal];
            let set = prime_set(session, primes)?;
            let w = match lemma_witness(i, &set) {
                Err(Error::ContainedInPrime(k)) => {
                    return Err(anyhow!("precondition violated: {i} lies in {}", set.primes()[k]));
                }
                other => other?,
            };
            let ring = i.ring();
            report.line(format!("c = {}", ring.fmt_poly(&w.witness)));
            for (p, r) in set.primes().iter().zip(&w.remainders) {
                report.line(format!("c mod {p} = {}", ring.fmt_poly(r)));
            }
            report.check("c in I by cofactors, c outside every prime", w.verify(i, &set)?, "");
        }
        Command::LambdaMax { primes } => {
            let set = prime_set(session, primes)?;
            let top = lambda_max(&set)?;
            report.line(format!("maximal elements: {}", list(&top)));
            for p in set.primes() {
                report.check(format!("{p} lies below a maximal element"), in_lambda_cl(p, &top)?, "");
            }
            for (a, p) in top.primes().iter().enumerate() {
                for (b, q) in top.primes().iter().enumerate() {
                    if a != b && q.ideal().contains(p.ideal())? {
                        report.check(format!("{p} and {q} incomparable"), false, "");
                    }
                }
            }
        }
        Command::InCl { prime, primes } => {
            let q = &session.primes[prime];
            let set = prime_set(session, primes)?;
            let holder = set.primes().iter().find(|p| p.ideal().contains(q.ideal()).unwrap_or(false));
            let ans = in_lambda_cl(q, &set)?;
            report.line(format!("{q} in downward closure: {ans}"));
            report.check("answer matches a containing member", ans == holder.is_some(), holder.map(|p| format!("inside {p}")).unwrap_or_default());
        }
        Command::UnionMember { poly, text, family } => {
            let f = &session.families[family];
            let cert = union_member(poly, f)?;
            match &cert {
                FamilyUnionCertificate::InUnion => {
                    report.line(format!("{text} lies in some prime of {family}"));
                }
                FamilyUnionCertificate::NotInUnion { exponents, .. } => {
                    report.line(format!(
                        "{text} avoids every prime of {family}: {} lies in I + ({text})",
                        monoid_element_text(f, exponents)
                    ));
                }
            }
            report.check("union certificate", cert.verify(poly, f)?, "");
        }
        Command::FamilyWitness { ideal, family } => {
            let q = &session.ideals[ideal];
            let f = &session.families[family];
            match family_avoid_witness(q, f) {
                Ok(w) => {
                    report.line(format!("g = {} lies in {q} and in no prime of {family}", q.ring().fmt_poly(&w.element)));
                    report.check("witness certificate", w.verify(q, f)?, "");
                }
                Err(Error::FamilyContains(sat)) => {
                    report.line(format!("a prime of {family} contains {q}: (I + q) : U^inf = {sat} is proper"));
                    report.check("saturation is proper", !sat.is_unit()?, "");
                }
                Err(e) => return Err(e.into()),
            }
        }
        Command::Ara1 { prime, degree } => {
            let q = &session.primes[prime];
            match ara1_search(q, *degree)? {
                Ara1Result::Found(g) => {
                    let ring = q.ideal().ring();
                    report.line(format!("radical of ({}) is {q}", ring.fmt_poly(&g)));
                    let principal = primavoid::IdealHandle::new(ring, vec![g.clone()])?;
                    let mut ok = q.ideal().member(&g)?;
                    for h in q.ideal().generators() {
                        ok &= principal.radical_member(h)?;
                    }
                    report.check("two-way radical check", ok, "");
                }
                Ara1Result::Exhausted { degree, candidates } => {
                    report.line(format!("no single generator up to radical among {candidates} candidates of degree <= {degree}"));
                }
            }
        }
        Command::ClassGroup { disc } => return classgroup_report(disc, seed, &entry.text),
        Command::DdVerdict(setting) => return ddverdict_report(setting, seed, &entry.text),
        Command::Verify { example, f } => {
            let mut r = verify_example(example, &ExampleOptions { seed, f: f.clone() })?;
            r.command = entry.text.clone();
            return Ok(r);
        }
    }
    Ok(report)
}

pub fn classgroup_report(disc: &BigInt, seed: u64, command: &str) -> Result<Report> {
    let mut report = Report::new(command, seed);
    let g = class_group(disc)?;
    report.line(format!("D = {disc}{}", if g.fundamental { "" } else { " (non-fundamental: order case)" }));
    report.line(format!("h = {}", g.h()));
    report.line(format!("reduced forms: {}", g.forms.iter().map(|f| f.to_string()).collect::<Vec<_>>().join(" ")));
    for (i, row) in g.table.iter().enumerate() {
        report.line(format!("  {} * _ = [{}]", g.forms[i], row.iter().map(|j| g.forms[*j].to_string()).collect::<Vec<_>>().join(" ")));
    }
    for (i, f) in g.forms.iter().enumerate() {
        report.line(format!("  order of {f} = {}", g.order(i)));
    }
    report.check("composition table recomputed", g.verify()?, "");
    for p in [2u64, 3, 5, 7] {
        if let (kind, Some(m)) = prime_above(p, disc)? {
            report.line(format!("prime above {p}: {m} ({kind:?}), class {}", m.to_form()?));
        }
    }
    Ok(report)
}

fn hnf_text(m: &QuadIdeal) -> String {
    format!("[[{}, {}], [0, {}]]", m.a, m.b, m.c)
}

pub fn ddverdict_report(setting: &DdSetting, seed: u64, command: &str) -> Result<Report> {
    let mut report = Report::new(command, seed);
    let v = dd_verdict(setting)?;
    match &v.evidence {
        DdEvidence::Quadratic { splitting, certificate } => {
            let d = &certificate.ideal.disc;
            report.line(format!("m = {} ({splitting:?}), HNF {}", certificate.ideal, hnf_text(&certificate.ideal)));
            report.line(format!(
                "m^{} = ({}) with norm {}, HNF {}",
                certificate.n,
                certificate.x.format(d),
                certificate.x.norm(d),
                hnf_text(&certificate.power)
            ));
        }
        DdEvidence::Elliptic(t) => {
            report.line(format!("curve {}", t.curve));
            for (k, p) in t.ladder.iter().enumerate() {
                report.line(format!("  {}P = {p}", k + 1));
            }
        }
    }
    let verdict = if v.holds { "holds" } else { "fails" };
    match v.order {
        Some(n) => report.line(format!("prime avoidance away from m {verdict}: [m] has order {n}")),
        None => report.line(format!("prime avoidance away from m {verdict}: [m] has infinite order (no nP = O for n <= 12)")),
    }
    report.check("verdict certificate", v.verify()?, "");
    Ok(report)
}

/// Run every command, stopping at the first error.
pub fn run_session(session: &Session, seed: u64) -> Result<Vec<Report>> {
    session
        .commands
        .iter()
        .map(|e| run_command(session, e, seed).map_err(|err| anyhow!("line {}: {err}", e.line)))
        .collect()
}

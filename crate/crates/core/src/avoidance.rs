//! Prime avoidance for finite sets of primes: verdicts, constructive
//! witnesses, the maximal-element and downward-closure calculus, and the
//! condition checker that also runs against family-backed sets.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::families::{FamilyUnionCertificate, LocalizedClosedFamily};
use crate::ideal::{IdealHandle, Lift, PrimeCertificate, PrimeIdeal};
use crate::poly::{PolyRing, Polynomial};
use crate::report::Report;

/// Finitely many primes of one ring, deduplicated and sorted by their
/// printed generators.
#[derive(Clone, Debug)]
pub struct FinitePrimeSet {
    primes: Vec<PrimeIdeal>,
}

fn sort_key(p: &PrimeIdeal) -> String {
    let ring = p.ideal().ring();
    let mut gens: Vec<String> = p.ideal().generators().iter().map(|g| ring.fmt_poly(g)).collect();
    gens.sort();
    gens.join(", ")
}

impl FinitePrimeSet {
    pub fn new(primes: Vec<PrimeIdeal>) -> Result<Self> {
        if let Some(first) = primes.first() {
            let ring = first.ideal().ring();
            if let Some(bad) = primes.iter().find(|p| p.ideal().ring() != ring) {
                return Err(Error::RingMismatch(format!("{bad} is not in {ring}")));
            }
        }
        let mut keyed: Vec<(String, PrimeIdeal)> = primes.into_iter().map(|p| (sort_key(&p), p)).collect();
        keyed.sort_by(|a, b| a.0.cmp(&b.0));
        let mut out: Vec<PrimeIdeal> = Vec::new();
        for (_, p) in keyed {
            let mut dup = false;
            for q in &out {
                if q.ideal().equals(p.ideal())? {
                    dup = true;
                    break;
                }
            }
            if !dup {
                out.push(p);
            }
        }
        Ok(FinitePrimeSet { primes: out })
    }

    pub fn primes(&self) -> &[PrimeIdeal] {
        &self.primes
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    pub fn ring(&self) -> Option<&Arc<PolyRing>> {
        self.primes.first().map(|p| p.ideal().ring())
    }

    fn check_ring(&self, ring: &Arc<PolyRing>) -> Result<()> {
        match self.ring() {
            Some(r) if r != ring => Err(Error::RingMismatch(format!("primes live in {r}, ideal in {ring}"))),
            _ => Ok(()),
        }
    }
}

/// The primes of `set` not strictly contained in another member.
pub fn lambda_max(set: &FinitePrimeSet) -> Result<FinitePrimeSet> {
    let ps = set.primes();
    let mut keep = Vec::new();
    for (i, p) in ps.iter().enumerate() {
        let mut dominated = false;
        for (j, q) in ps.iter().enumerate() {
            if i != j && q.ideal().contains(p.ideal())? {
                dominated = true;
                break;
            }
        }
        if !dominated {
            keep.push(p.clone());
        }
    }
    Ok(FinitePrimeSet { primes: keep })
}

/// `q` lies in the downward closure: some member contains it.
pub fn in_lambda_cl(q: &PrimeIdeal, set: &FinitePrimeSet) -> Result<bool> {
    set.check_ring(q.ideal().ring())?;
    for p in set.primes() {
        if p.ideal().contains(q.ideal())? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// An element of `I` outside every prime, with the evidence.
#[derive(Clone, Debug)]
pub struct WitnessCertificate {
    pub witness: Polynomial,
    /// Cofactors proving `witness ∈ I`.
    pub lift: Lift,
    /// Normal form of the witness modulo each prime, in set order; all
    /// nonzero.
    pub remainders: Vec<Polynomial>,
}

impl WitnessCertificate {
    fn build(ideal: &IdealHandle, set: &FinitePrimeSet, witness: Polynomial) -> Result<Self> {
        let lift = ideal
            .lift(&witness)?
            .ok_or_else(|| Error::Invalid("witness is not in the ideal".into()))?;
        let remainders = set.primes().iter().map(|p| p.ideal().normal_form(&witness)).collect::<Result<Vec<_>>>()?;
        Ok(WitnessCertificate { witness, lift, remainders })
    }

    /// Recheck membership by recombining cofactors and non-membership by
    /// recomputing normal forms.
    pub fn verify(&self, ideal: &IdealHandle, set: &FinitePrimeSet) -> Result<bool> {
        if !self.lift.verify(&self.witness, ideal) || self.remainders.len() != set.len() {
            return Ok(false);
        }
        for (p, r) in set.primes().iter().zip(&self.remainders) {
            let nf = p.ideal().normal_form(&self.witness)?;
            if nf.is_zero() || nf != *r {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Serializable summary of a verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictSummary {
    pub kind: String,
    pub prime: Option<String>,
    pub witness: Option<String>,
    pub checks: Vec<(String, bool)>,
}

#[derive(Clone, Debug)]
pub enum AvoidVerdict {
    /// Index of the first prime containing the ideal.
    ContainedIn(usize),
    Witness(WitnessCertificate),
}

impl AvoidVerdict {
    pub fn verify(&self, ideal: &IdealHandle, set: &FinitePrimeSet) -> Result<bool> {
        match self {
            AvoidVerdict::ContainedIn(i) => match set.primes().get(*i) {
                Some(p) => p.ideal().contains(ideal),
                None => Ok(false),
            },
            AvoidVerdict::Witness(w) => w.verify(ideal, set),
        }
    }

    pub fn summary(&self, ideal: &IdealHandle, set: &FinitePrimeSet) -> Result<VerdictSummary> {
        let ring = ideal.ring();
        Ok(match self {
            AvoidVerdict::ContainedIn(i) => VerdictSummary {
                kind: "contained".into(),
                prime: Some(set.primes()[*i].to_string()),
                witness: None,
                checks: vec![(format!("{ideal} ⊆ {}", set.primes()[*i]), self.verify(ideal, set)?)],
            },
            AvoidVerdict::Witness(w) => {
                let mut checks = vec![(format!("witness ∈ {ideal}"), w.lift.verify(&w.witness, ideal))];
                for (p, r) in set.primes().iter().zip(&w.remainders) {
                    let ok = !r.is_zero() && p.ideal().normal_form(&w.witness)? == *r;
                    checks.push((format!("witness ∉ {p} (remainder {})", ring.fmt_poly(r)), ok));
                }
                VerdictSummary { kind: "witness".into(), prime: None, witness: Some(ring.fmt_poly(&w.witness)), checks }
            }
        })
    }
}

fn first_outside<'a>(gens: &'a [Polynomial], primes: &[&PrimeIdeal]) -> Result<Option<&'a Polynomial>> {
    'outer: for g in gens {
        for p in primes {
            if p.ideal().member(g)? {
                continue 'outer;
            }
        }
        return Ok(Some(g));
    }
    Ok(None)
}

fn witness_element(ideal: &IdealHandle, primes: &[&PrimeIdeal]) -> Result<Polynomial> {
    for (i, p) in primes.iter().enumerate() {
        if p.ideal().contains(ideal)? {
            return Err(Error::ContainedInPrime(i));
        }
    }
    // Keep only maximal members; avoiding those avoids the rest.
    let mut top: Vec<&PrimeIdeal> = Vec::new();
    for (i, p) in primes.iter().enumerate() {
        let mut dominated = false;
        for (j, q) in primes.iter().enumerate() {
            if i != j && q.ideal().contains(p.ideal())? && (!p.ideal().contains(q.ideal())? || j < i) {
                dominated = true;
                break;
            }
        }
        if !dominated {
            top.push(p);
        }
    }
    let gens = ideal.generators();
    match top.len() {
        0 => Ok(gens.first().cloned().unwrap_or_else(|| ideal.ring().zero())),
        1 => Ok(first_outside(gens, &top)?.expect("ideal is not inside the prime").clone()),
        n => {
            let mut a = Vec::with_capacity(n);
            let mut b = Vec::with_capacity(n);
            for i in 0..n {
                a.push(first_outside(gens, &[top[i]])?.expect("ideal is not inside the prime").clone());
                let others: Vec<&PrimeIdeal> = (0..n).filter(|&j| j != i).map(|j| top[j]).collect();
                let bi = match first_outside(top[i].ideal().generators(), &others)? {
                    Some(g) => g.clone(),
                    None => witness_element(top[i].ideal(), &others)?,
                };
                b.push(bi);
            }
            let mut c = ideal.ring().zero();
            for i in 0..n {
                let mut term = a[i].clone();
                for (j, bj) in b.iter().enumerate() {
                    if j != i {
                        term = &term * bj;
                    }
                }
                c = &c + &term;
            }
            Ok(c)
        }
    }
}

/// An element of `I` outside every prime of `set`, as
/// `sum_i a_i prod_{j != i} b_j` over the maximal members, with
/// `a_i ∈ I \ p_i` and `b_i ∈ p_i` outside the other maximal members.
pub fn lemma_witness(ideal: &IdealHandle, set: &FinitePrimeSet) -> Result<WitnessCertificate> {
    set.check_ring(ideal.ring())?;
    let primes: Vec<&PrimeIdeal> = set.primes().iter().collect();
    let c = witness_element(ideal, &primes)?;
    WitnessCertificate::build(ideal, set, c)
}

pub fn decide_union_finite(ideal: &IdealHandle, set: &FinitePrimeSet) -> Result<AvoidVerdict> {
    set.check_ring(ideal.ring())?;
    for (i, p) in set.primes().iter().enumerate() {
        if p.ideal().contains(ideal)? {
            return Ok(AvoidVerdict::ContainedIn(i));
        }
    }
    Ok(AvoidVerdict::Witness(lemma_witness(ideal, set)?))
}

/// A set of primes given either explicitly or as a union of localized
/// closed families.
#[derive(Clone, Debug)]
pub enum PrimeSet {
    Finite(FinitePrimeSet),
    Families(Vec<LocalizedClosedFamily>),
}

/// Battery sizes for the family-backed check.
#[derive(Clone, Copy, Debug)]
pub struct Condition8Config {
    /// Elements of each battery ideal tested against the union.
    pub samples: usize,
    pub seed: u64,
}

impl Default for Condition8Config {
    fn default() -> Self {
        Condition8Config { samples: 100, seed: 0 }
    }
}

/// Check that the maximal elements satisfy prime avoidance on `battery` and
/// that every member lies below a maximal one.
///
/// For a finite set this always holds. For families the union side can only
/// be sampled: a battery ideal whose sampled elements all lie in the union
/// while no member contains it is reported as a failure.
pub fn check_condition8(set: &PrimeSet, battery: &[IdealHandle], config: Condition8Config) -> Result<Report> {
    let mut report = Report::new("condition8", config.seed);
    match set {
        PrimeSet::Finite(fs) => {
            let top = lambda_max(fs)?;
            report.line(format!("maximal elements: {}", top.primes().iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", ")));
            for p in fs.primes() {
                report.check(format!("{p} ∈ closure of maximal elements"), in_lambda_cl(p, &top)?, "");
            }
            for ideal in battery {
                let v = decide_union_finite(ideal, &top)?;
                let ok = v.verify(ideal, &top)?;
                let detail = match &v {
                    AvoidVerdict::ContainedIn(i) => format!("contained in {}", top.primes()[*i]),
                    AvoidVerdict::Witness(w) => format!("witness {}", ideal.ring().fmt_poly(&w.witness)),
                };
                report.check(format!("avoidance on {ideal}"), ok, detail);
            }
        }
        PrimeSet::Families(fams) => {
            for q in battery {
                let mut containing = None;
                for (i, f) in fams.iter().enumerate() {
                    if !f.ideal().sum(q)?.saturate_by(f.u_gens())?.is_unit()? {
                        containing = Some(i);
                        break;
                    }
                }
                if let Some(i) = containing {
                    report.check(format!("avoidance on {q}"), true, format!("a prime of family #{i} contains it"));
                    continue;
                }
                let samples = crate::sampling::ideal_elements(q, config.samples, config.seed)?;
                let mut all_in = true;
                let mut escape = None;
                for g in &samples {
                    let hit = fams.iter().try_fold(false, |acc, f| -> Result<bool> {
                        Ok(acc || matches!(crate::families::union_member(g, f)?, FamilyUnionCertificate::InUnion))
                    })?;
                    if !hit {
                        all_in = false;
                        escape = Some(q.ring().fmt_poly(g));
                        break;
                    }
                }
                if all_in {
                    report.line(format!(
                        "maximal elements do not exist over {q}: all {} sampled elements lie in the union, no member contains it",
                        samples.len()
                    ));
                    report.check(format!("avoidance on {q}"), false, format!("fails at {q} (sample of {})", samples.len()));
                } else {
                    report.check(format!("avoidance on {q}"), true, format!("element {} avoids the union", escape.unwrap()));
                }
            }
        }
    }
    Ok(report)
}

/// The ring map along which primes are pulled back.
#[derive(Clone, Debug)]
pub enum Pullback {
    /// `source -> source/(kernel)`; the primes live in a ring with the same
    /// variables whose relations include the kernel.
    Surjection { source: Arc<PolyRing>, kernel: Vec<Polynomial> },
    /// `R -> R_f`; primes of `R_f` are given by their contractions to `R`.
    Localization(Polynomial),
}

pub fn pullback_primes(kind: &Pullback, set: &FinitePrimeSet) -> Result<FinitePrimeSet> {
    let mut out = Vec::new();
    match kind {
        Pullback::Surjection { source, kernel } => {
            for (i, p) in set.primes().iter().enumerate() {
                let target = p.ideal().ring();
                if target.vars() != source.vars() || target.field() != source.field() {
                    return Err(Error::RingMismatch("surjection must keep the variables".into()));
                }
                for k in kernel {
                    if !p.ideal().member(k)? {
                        return Err(Error::Precondition(format!("kernel is not inside prime #{i}")));
                    }
                }
                let upstairs = IdealHandle::new(source, p.ideal().generators().to_vec())?;
                let mut gens = p.ideal().generators().to_vec();
                for k in kernel.iter().chain(target.relations()) {
                    if !upstairs.member(k)? {
                        gens.push(k.clone());
                    }
                }
                let lifted = IdealHandle::new(source, gens)?;
                let prime = match PrimeIdeal::certify(lifted.clone()) {
                    Ok(q) => q,
                    // Preimages of primes are prime; only the presentation
                    // escapes the checkable classes.
                    Err(_) => PrimeIdeal::with_certificate(lifted, PrimeCertificate::Asserted)?,
                };
                out.push(prime);
            }
        }
        Pullback::Localization(f) => {
            for (i, p) in set.primes().iter().enumerate() {
                if p.ideal().member(f)? {
                    return Err(Error::Precondition(format!("the localized element lies in prime #{i}")));
                }
                let sat = p.ideal().saturate(f)?;
                if !sat.equals(p.ideal())? {
                    return Err(Error::Invalid(format!("saturation of {p} differs from it")));
                }
                out.push(PrimeIdeal::with_certificate(sat, p.certificate().clone())?);
            }
        }
    }
    FinitePrimeSet::new(out)
}

//! `K₀′` of the dual numbers `B = A[ε]` over a Dedekind domain `A`, seen
//! through restriction as `Z ⊕ Cl(A)`.
//!
//! Opens are complements of finitely many labeled primes; their class
//! group is `Cl / ⟨removed classes⟩`. The image of perfect complexes is
//! `2·K₀′(B)`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;

use crate::abelian::{
    membership, quotient_full, scale_subgroup, FgAbelianGroup, GroupElement, MembershipResult,
    Quotient, Subgroup,
};
use crate::quadforms::{class_of_prime, factor_prime, ClassGroup, PrimeKind};
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct DedekindModel {
    cl: FgAbelianGroup,
    labeled_primes: BTreeMap<String, GroupElement>,
    removed: BTreeSet<String>,
    effective: Quotient,
}

impl DedekindModel {
    pub fn new(
        cl: FgAbelianGroup,
        labeled_primes: BTreeMap<String, GroupElement>,
        removed: BTreeSet<String>,
    ) -> Result<Self> {
        if let Some((name, _)) = labeled_primes.iter().find(|(_, x)| x.group() != &cl) {
            return Err(Error::InvalidGroup(format!(
                "class of `{name}` is not in the class group"
            )));
        }
        if let Some(name) = removed.iter().find(|n| !labeled_primes.contains_key(*n)) {
            return Err(Error::UnknownPrime(name.clone()));
        }
        let gens = removed.iter().map(|n| labeled_primes[n].clone()).collect();
        let effective = quotient_full(&cl, &Subgroup::new(cl.clone(), gens)?)?;
        Ok(Self {
            cl,
            labeled_primes,
            removed,
            effective,
        })
    }

    /// Model of `Z[√d]` with the given rational primes labeled by their
    /// decimal names. Each prime is represented by the ideal `(p, b + √d)`.
    pub fn from_class_group(cg: &ClassGroup, primes: &[u64], removed: &[u64]) -> Result<Self> {
        let mut labeled = BTreeMap::new();
        for &p in primes.iter().chain(removed) {
            let f = factor_prime(cg.order(), p)?;
            if f.kind == PrimeKind::Inert {
                return Err(Error::InertPrime(p));
            }
            labeled.insert(p.to_string(), class_of_prime(cg, &f)?);
        }
        let removed = removed.iter().map(u64::to_string).collect();
        Self::new(cg.group().clone(), labeled, removed)
    }

    pub fn cl(&self) -> &FgAbelianGroup {
        &self.cl
    }

    pub fn labeled_primes(&self) -> &BTreeMap<String, GroupElement> {
        &self.labeled_primes
    }

    pub fn removed(&self) -> &BTreeSet<String> {
        &self.removed
    }

    /// `Cl` of the open subscheme.
    pub fn effective_class_group(&self) -> &FgAbelianGroup {
        &self.effective.group
    }

    /// Class of a labeled, non-removed prime in the effective class group.
    pub fn prime_class(&self, name: &str) -> Result<GroupElement> {
        let x = self
            .labeled_primes
            .get(name)
            .ok_or_else(|| Error::UnknownPrime(name.into()))?;
        if self.removed.contains(name) {
            return Err(Error::RemovedPrime(name.into()));
        }
        self.effective.projection.apply(x)
    }

    /// The same labeled primes with `extra` also deleted.
    pub fn shrink(&self, extra: &BTreeSet<String>) -> Result<Self> {
        let removed = self.removed.union(extra).cloned().collect();
        Self::new(self.cl.clone(), self.labeled_primes.clone(), removed)
    }
}

/// An element `(rank, det)` of `Z ⊕ Cl_eff`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KClass {
    pub rank_part: BigInt,
    pub det_part: GroupElement,
}

fn k_group_over(cl: &FgAbelianGroup) -> FgAbelianGroup {
    FgAbelianGroup::new(cl.free_rank() + 1, cl.torsion().to_vec())
        .expect("torsion chain of a canonical group")
}

impl KClass {
    pub fn new(rank_part: impl Into<BigInt>, det_part: GroupElement) -> Self {
        Self {
            rank_part: rank_part.into(),
            det_part,
        }
    }

    /// Coordinates in the canonical group `Z ⊕ Cl_eff`: the rank sits
    /// first since it is a free coordinate.
    pub fn element(&self) -> GroupElement {
        let k = k_group_over(self.det_part.group());
        let mut coords = vec![self.rank_part.clone()];
        coords.extend(self.det_part.coords().iter().cloned());
        k.element(coords).expect("coordinate count matches")
    }

    pub fn from_element(model: &DedekindModel, x: &GroupElement) -> Result<Self> {
        if x.group() != &k_group(model) {
            return Err(Error::GroupMismatch);
        }
        let det = model
            .effective_class_group()
            .element(x.coords()[1..].to_vec())?;
        Ok(Self::new(x.coords()[0].clone(), det))
    }
}

/// `(rank, det...)`; a trivial class group shows its element as `0`.
impl fmt::Display for KClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}", self.rank_part)?;
        if self.det_part.coords().is_empty() {
            f.write_str(", 0")?;
        }
        for c in self.det_part.coords() {
            write!(f, ", {c}")?;
        }
        f.write_str(")")
    }
}

pub fn k_group(model: &DedekindModel) -> FgAbelianGroup {
    k_group_over(model.effective_class_group())
}

pub fn perfect_subgroup(model: &DedekindModel) -> Subgroup {
    scale_subgroup(&k_group(model), 2)
}

/// Extension of scalars followed by restriction: `α ↦ 2α`.
pub fn base_change(model: &DedekindModel, alpha: &KClass) -> Result<KClass> {
    if alpha.det_part.group() != model.effective_class_group() {
        return Err(Error::GroupMismatch);
    }
    Ok(KClass::new(
        &alpha.rank_part * 2,
        alpha.det_part.scale(&BigInt::from(2)),
    ))
}

/// `[p′] = [εB] + [p′/(ε)]`, restricting to `(1, 0) + (1, [p])`.
pub fn thickened_prime_class(model: &DedekindModel, name: &str) -> Result<KClass> {
    Ok(KClass::new(2, model.prime_class(name)?))
}

/// Image of `α` on the open obtained by also removing `extra`.
pub fn restrict_to_open(
    model: &DedekindModel,
    alpha: &KClass,
    extra: &BTreeSet<String>,
) -> Result<(DedekindModel, KClass)> {
    if alpha.det_part.group() != model.effective_class_group() {
        return Err(Error::GroupMismatch);
    }
    let open = model.shrink(extra)?;
    let lifted = model.effective.lift(&alpha.det_part)?;
    let det = open.effective.projection.apply(&lifted)?;
    Ok((open, KClass::new(alpha.rank_part.clone(), det)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ThickVerdict {
    CounterexampleVerified,
    HypothesesFailed,
}

impl ThickVerdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            ThickVerdict::CounterexampleVerified => "counterexample_verified",
            ThickVerdict::HypothesesFailed => "hypotheses_failed",
        }
    }
}

/// A class on some open together with its test against `2·K`.
#[derive(Clone, Debug)]
pub struct OpenCheck {
    pub removed: Vec<String>,
    pub k_group: FgAbelianGroup,
    pub class: KClass,
    pub perfect: Subgroup,
    pub membership: MembershipResult,
}

impl OpenCheck {
    fn new(model: &DedekindModel, class: KClass) -> Result<Self> {
        let perfect = perfect_subgroup(model);
        let membership = membership(&perfect, &class.element())?;
        Ok(Self {
            removed: model.removed().iter().cloned().collect(),
            k_group: k_group(model),
            class,
            perfect,
            membership,
        })
    }

    pub fn verify(&self) -> bool {
        self.membership.verify(&self.perfect, &self.class.element())
    }
}

#[derive(Clone, Debug)]
pub struct ThickCertificate {
    pub p: String,
    pub q: String,
    pub class_group: FgAbelianGroup,
    pub p_class: GroupElement,
    pub q_class: GroupElement,
    pub distinct: bool,
    pub same_class: bool,
    pub doubles: Subgroup,
    pub p_not_double: MembershipResult,
    pub q_not_double: MembershipResult,
    pub global: OpenCheck,
    pub locals: Vec<OpenCheck>,
    pub verdict: ThickVerdict,
}

impl ThickCertificate {
    pub fn hypotheses_hold(&self) -> bool {
        self.distinct
            && self.same_class
            && !self.p_not_double.is_member()
            && !self.q_not_double.is_member()
    }

    /// Re-checks every witness and residue and the verdict rule.
    pub fn verify(&self) -> bool {
        let witnesses = self.p_not_double.verify(&self.doubles, &self.p_class)
            && self.q_not_double.verify(&self.doubles, &self.q_class)
            && self.same_class == (self.p_class == self.q_class)
            && self.global.verify()
            && self.locals.iter().all(OpenCheck::verify);
        let positive = self.hypotheses_hold()
            && !self.global.membership.is_member()
            && self.locals.iter().all(|l| l.membership.is_member());
        witnesses && positive == (self.verdict == ThickVerdict::CounterexampleVerified)
    }
}

pub fn verify_thick(model: &DedekindModel, p: &str, q: &str) -> Result<ThickCertificate> {
    let p_class = model.prime_class(p)?;
    let q_class = model.prime_class(q)?;
    let doubles = scale_subgroup(model.effective_class_group(), 2);
    let p_not_double = membership(&doubles, &p_class)?;
    let q_not_double = membership(&doubles, &q_class)?;

    let global_class = thickened_prime_class(model, p)?;
    let global = OpenCheck::new(model, global_class.clone())?;
    let mut locals = Vec::with_capacity(2);
    for name in [p, q] {
        let extra = BTreeSet::from([name.to_string()]);
        let (open, class) = restrict_to_open(model, &global_class, &extra)?;
        locals.push(OpenCheck::new(&open, class)?);
    }

    let mut cert = ThickCertificate {
        p: p.into(),
        q: q.into(),
        class_group: model.effective_class_group().clone(),
        same_class: p_class == q_class,
        p_class,
        q_class,
        distinct: p != q,
        doubles,
        p_not_double,
        q_not_double,
        global,
        locals,
        verdict: ThickVerdict::HypothesesFailed,
    };
    if cert.hypotheses_hold()
        && !cert.global.membership.is_member()
        && cert.locals.iter().all(|l| l.membership.is_member())
    {
        cert.verdict = ThickVerdict::CounterexampleVerified;
    }
    Ok(cert)
}

/// First triple `(p, q, r)` of split or ramified primes below `bound`,
/// ordered lexicographically with `p < q`, whose classes are distinct and
/// nontrivial and for which removing `r` yields a verified certificate.
pub fn search_primes(cg: &ClassGroup, bound: u64) -> Option<(u64, u64, u64)> {
    let candidates: Vec<(u64, GroupElement)> = (2..bound)
        .filter_map(|p| {
            let f = factor_prime(cg.order(), p).ok()?;
            let x = class_of_prime(cg, &f).ok()?;
            (!x.is_zero()).then_some((p, x))
        })
        .collect();
    for (i, (p, xp)) in candidates.iter().enumerate() {
        for (q, xq) in &candidates[i + 1..] {
            for (r, xr) in &candidates {
                if xp == xq || xp == xr || xq == xr {
                    continue;
                }
                let verified = DedekindModel::from_class_group(cg, &[*p, *q], &[*r])
                    .and_then(|m| verify_thick(&m, &p.to_string(), &q.to_string()))
                    .is_ok_and(|c| c.verdict == ThickVerdict::CounterexampleVerified);
                if verified {
                    return Some((*p, *q, *r));
                }
            }
        }
    }
    None
}

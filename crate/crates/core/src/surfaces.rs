//! Picard-group models of two surfaces: the gluing of two copies of
//! `C × P¹` along `C × {0}`, and a product `E × Γ` with `Γ` nodal.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::abelian::{
    direct_sum_with_maps, image, membership, quotient_full, FgAbelianGroup, GroupElement, GroupHom,
    MembershipResult, Subgroup,
};
use crate::elliptic::CurveGroup;
use crate::{Error, Result};

pub const COVER_COEFF_BOUND: i64 = 8;

/// `Pic(C) = Z ⊕ jac` with named points of class `(1, jac-class)`.
#[derive(Clone, Debug)]
pub struct PicCurveModel {
    jac: FgAbelianGroup,
    points: Vec<(String, GroupElement)>,
    pic: FgAbelianGroup,
}

impl PicCurveModel {
    pub fn new(jac: FgAbelianGroup, points: Vec<(String, GroupElement)>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for (name, x) in &points {
            if x.group() != &jac {
                return Err(Error::InvalidGroup(format!(
                    "class of `{name}` is not in the jacobian"
                )));
            }
            if !seen.insert(name.as_str()) {
                return Err(Error::InvalidGroup(format!("point `{name}` named twice")));
            }
        }
        let pic = FgAbelianGroup::new(jac.free_rank() + 1, jac.torsion().to_vec())?;
        Ok(Self { jac, points, pic })
    }

    /// `P¹` with the two coordinate points.
    pub fn projective_line() -> Self {
        let jac = FgAbelianGroup::trivial();
        let points = ["[1:0]", "[0:1]"]
            .iter()
            .map(|n| (n.to_string(), jac.zero()))
            .collect();
        Self::new(jac, points).expect("trivial jacobian")
    }

    /// An elliptic curve with every rational point named by `Display`.
    pub fn from_curve_group(cg: &CurveGroup) -> Self {
        let points = cg
            .points()
            .iter()
            .map(|pt| {
                (
                    pt.to_string(),
                    cg.log(pt).expect("enumerated point").clone(),
                )
            })
            .collect();
        Self::new(cg.group().clone(), points).expect("log table lands in the point group")
    }

    pub fn jac(&self) -> &FgAbelianGroup {
        &self.jac
    }

    pub fn pic(&self) -> &FgAbelianGroup {
        &self.pic
    }

    pub fn points(&self) -> &[(String, GroupElement)] {
        &self.points
    }

    pub fn jac_class(&self, name: &str) -> Result<&GroupElement> {
        self.points
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, x)| x)
            .ok_or_else(|| Error::UnknownPoint(name.into()))
    }

    /// Lifts `(degree, jac)` into `Pic(C)`.
    pub fn pic_element(
        &self,
        degree: impl Into<BigInt>,
        jac: &GroupElement,
    ) -> Result<GroupElement> {
        if jac.group() != &self.jac {
            return Err(Error::GroupMismatch);
        }
        let mut coords = vec![degree.into()];
        coords.extend(jac.coords().iter().cloned());
        self.pic.element(coords)
    }

    pub fn point_class(&self, name: &str) -> Result<GroupElement> {
        self.pic_element(1, self.jac_class(name)?)
    }

    /// First named point with the given jacobian class.
    pub fn point_with_class(&self, jac: &GroupElement) -> Option<&str> {
        self.points
            .iter()
            .find(|(_, x)| x == jac)
            .map(|(n, _)| n.as_str())
    }
}

/// The divisor class to trivialize, optionally tied to a named point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Target {
    pub label: String,
    pub point: Option<String>,
    pub class: GroupElement,
}

impl Target {
    pub fn point(model: &PicCurveModel, name: &str) -> Result<Self> {
        Ok(Self {
            label: name.into(),
            point: Some(name.into()),
            class: model.point_class(name)?,
        })
    }

    pub fn class(model: &PicCurveModel, class: GroupElement) -> Result<Self> {
        if class.group() != model.pic() {
            return Err(Error::GroupMismatch);
        }
        Ok(Self {
            label: class.to_string(),
            point: None,
            class,
        })
    }
}

#[derive(Clone, Debug)]
pub struct GluedPicard {
    pub pic_x: FgAbelianGroup,
    pub pic_u: FgAbelianGroup,
    pub restriction: GroupHom,
    /// `Pic(C) → Pic(U)` onto the first summand.
    pub first_copy: GroupHom,
}

/// `Pic(X) = Pic(C) ⊕ Z ⊕ Z`, `Pic(U) = Pic(C) ⊕ Pic(C)`, restriction
/// is projection to `Pic(C)` followed by the diagonal.
pub fn glued_picard(model: &PicCurveModel) -> GluedPicard {
    let z = FgAbelianGroup::free(1);
    let x = direct_sum_with_maps(&[model.pic(), &z, &z]);
    let u = direct_sum_with_maps(&[model.pic(), model.pic()]);
    let diagonal = u.injections[0]
        .sum(&u.injections[1])
        .expect("both injections share a target");
    let restriction = x.projections[0].then(&diagonal).expect("composable");
    GluedPicard {
        pic_x: x.group,
        pic_u: u.group,
        restriction,
        first_copy: u.injections[0].clone(),
    }
}

pub fn det_obstruction(res: &GroupHom, g: &GroupElement) -> Result<MembershipResult> {
    membership(&image(res), g)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverPiece {
    pub removed: Vec<String>,
    pub witness: Vec<BigInt>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverSpec {
    pub pieces: Vec<CoverPiece>,
}

impl CoverPiece {
    /// `Σ witness[j] · class(removed[j])`.
    pub fn combination(&self, model: &PicCurveModel) -> Result<GroupElement> {
        if self.removed.len() != self.witness.len() {
            return Err(Error::InvalidCover(
                "witness length differs from removed set".into(),
            ));
        }
        self.removed
            .iter()
            .zip(&self.witness)
            .try_fold(model.pic().zero(), |acc, (name, n)| {
                Ok(&acc + &model.point_class(name)?.scale(n))
            })
    }
}

impl CoverSpec {
    /// Pieces `C \ S_i` cover `C` exactly when the `S_i` share no point.
    pub fn covers(&self) -> bool {
        let mut sets = self
            .pieces
            .iter()
            .map(|p| p.removed.iter().collect::<BTreeSet<_>>());
        let Some(first) = sets.next() else {
            return false;
        };
        let common = sets.fold(first, |acc, s| acc.intersection(&s).copied().collect());
        common.is_empty()
    }

    pub fn check(&self, model: &PicCurveModel, target: &GroupElement) -> Result<()> {
        if self.pieces.len() < 2 || !self.covers() {
            return Err(Error::InvalidCover("removed sets share a point".into()));
        }
        for piece in &self.pieces {
            if &piece.combination(model)? != target {
                return Err(Error::InvalidCover(format!(
                    "witness on {{{}}} does not recombine to the target",
                    piece.removed.join(", ")
                )));
            }
        }
        Ok(())
    }
}

/// Smallest `|n| ≤ 8` with `n·class = target`, positive first.
fn small_multiple(class: &GroupElement, target: &GroupElement) -> Option<i64> {
    let mut ns: Vec<i64> = (-COVER_COEFF_BOUND..=COVER_COEFF_BOUND).collect();
    ns.sort_by_key(|n| (n.abs(), *n < 0));
    ns.into_iter()
        .find(|&n| &class.scale(&BigInt::from(n)) == target)
}

/// Two-piece cover on which the target class becomes trivial.
///
/// With trivial jacobian each piece removes one point other than the
/// target. Otherwise piece `i` removes `{x_i, 2x_i − p}`, trying the
/// multiples `k·p` for `k ≥ 2` before the remaining points.
pub fn trivializing_cover(model: &PicCurveModel, target: &Target) -> Result<CoverSpec> {
    let not_target = |name: &str| target.point.as_deref() != Some(name);
    let mut pieces: Vec<CoverPiece> = Vec::new();
    let mut used: BTreeSet<String> = BTreeSet::new();

    if model.jac().is_trivial() {
        for (name, _) in model.points() {
            if pieces.len() == 2 {
                break;
            }
            if !not_target(name) {
                continue;
            }
            if let Some(n) = small_multiple(&model.point_class(name)?, &target.class) {
                pieces.push(CoverPiece {
                    removed: vec![name.clone()],
                    witness: vec![BigInt::from(n)],
                });
            }
        }
    } else {
        let degree = &target.class.coords()[0];
        if !degree.is_one() {
            return Err(Error::CoverSearchFailed);
        }
        let p_bar = model.jac().element(target.class.coords()[1..].to_vec())?;
        let mut order: Vec<&str> = Vec::new();
        let mut multiple = p_bar.scale(&BigInt::from(2));
        for _ in 0..model.points().len() {
            if multiple == p_bar {
                break;
            }
            if let Some(name) = model.point_with_class(&multiple) {
                if !order.contains(&name) {
                    order.push(name);
                }
            }
            multiple = &multiple + &p_bar;
        }
        for (name, _) in model.points() {
            if !order.contains(&name.as_str()) {
                order.push(name);
            }
        }
        for x in order {
            if pieces.len() == 2 {
                break;
            }
            let xb = model.jac_class(x)?;
            if xb == &p_bar || !not_target(x) {
                continue;
            }
            let yb = &xb.scale(&BigInt::from(2)) - &p_bar;
            let Some(y) = model.point_with_class(&yb) else {
                continue;
            };
            if used.contains(x) || used.contains(y) {
                continue;
            }
            used.insert(x.to_string());
            used.insert(y.to_string());
            pieces.push(CoverPiece {
                removed: vec![x.to_string(), y.to_string()],
                witness: vec![BigInt::from(2), BigInt::from(-1)],
            });
        }
    }
    let cover = CoverSpec { pieces };
    if cover.pieces.len() == 2 && cover.check(model, &target.class).is_ok() {
        Ok(cover)
    } else {
        Err(Error::CoverSearchFailed)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GluedVerdict {
    Verified,
    HypothesesFailed,
}

impl GluedVerdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            GluedVerdict::Verified => "verified",
            GluedVerdict::HypothesesFailed => "hypotheses_failed",
        }
    }
}

#[derive(Clone, Debug)]
pub struct LocalTrivialization {
    pub removed: Vec<String>,
    pub removed_classes: Vec<GroupElement>,
    pub witness: Vec<BigInt>,
}

impl LocalTrivialization {
    pub fn recombine(&self, pic: &FgAbelianGroup) -> GroupElement {
        self.removed_classes
            .iter()
            .zip(&self.witness)
            .fold(pic.zero(), |acc, (x, n)| &acc + &x.scale(n))
    }
}

#[derive(Clone, Debug)]
pub struct GluedCertificate {
    pub pic_c: FgAbelianGroup,
    pub pic_x: FgAbelianGroup,
    pub pic_u: FgAbelianGroup,
    pub restriction: GroupHom,
    pub target: Target,
    pub class_nonzero: bool,
    /// `([p], 0)` in `Pic(U)`.
    pub obstruction_element: GroupElement,
    pub image: Subgroup,
    pub obstruction: MembershipResult,
    pub locals: Vec<LocalTrivialization>,
    pub verdict: GluedVerdict,
}

impl GluedCertificate {
    pub fn verify(&self) -> bool {
        let image_ok = self.image == image(&self.restriction);
        let obstruction_ok = self
            .obstruction
            .verify(&self.image, &self.obstruction_element);
        let locals_ok = self
            .locals
            .iter()
            .all(|l| l.recombine(&self.pic_c) == self.target.class);
        let cover = CoverSpec {
            pieces: self
                .locals
                .iter()
                .map(|l| CoverPiece {
                    removed: l.removed.clone(),
                    witness: l.witness.clone(),
                })
                .collect(),
        };
        let positive =
            self.class_nonzero && !self.obstruction.is_member() && locals_ok && cover.covers();
        image_ok
            && obstruction_ok
            && self.class_nonzero == !self.target.class.is_zero()
            && positive == (self.verdict == GluedVerdict::Verified)
    }
}

pub fn verify_glued(
    model: &PicCurveModel,
    target: &Target,
    cover: &CoverSpec,
) -> Result<GluedCertificate> {
    if target.class.group() != model.pic() {
        return Err(Error::GroupMismatch);
    }
    cover.check(model, &target.class)?;
    let glued = glued_picard(model);
    let g = glued.first_copy.apply(&target.class)?;
    let obstruction = det_obstruction(&glued.restriction, &g)?;
    let locals = cover
        .pieces
        .iter()
        .map(|piece| {
            Ok(LocalTrivialization {
                removed: piece.removed.clone(),
                removed_classes: piece
                    .removed
                    .iter()
                    .map(|n| model.point_class(n))
                    .collect::<Result<_>>()?,
                witness: piece.witness.clone(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let class_nonzero = !target.class.is_zero();
    let verdict = if class_nonzero && !obstruction.is_member() {
        GluedVerdict::Verified
    } else {
        GluedVerdict::HypothesesFailed
    };
    Ok(GluedCertificate {
        pic_c: model.pic().clone(),
        pic_x: glued.pic_x,
        image: image(&glued.restriction),
        pic_u: glued.pic_u,
        restriction: glued.restriction,
        target: target.clone(),
        class_nonzero,
        obstruction_element: g,
        obstruction,
        locals,
        verdict,
    })
}

/// Class of `O(−divisor_point)` on `E \ {removed}`, computed in
/// `Pic(E) / ⟨class(removed)⟩` and normalized to degree zero.
pub fn fiber_restriction_class(
    model: &PicCurveModel,
    removed: &str,
    divisor_point: Option<&str>,
) -> Result<GroupElement> {
    let r = model.point_class(removed)?;
    let Some(d) = divisor_point else {
        return Ok(model.jac().zero());
    };
    let d = model.point_class(d)?;
    let q = quotient_full(
        model.pic(),
        &Subgroup::new(model.pic().clone(), vec![r.clone()])?,
    )?;
    let lifted = q.lift(&q.projection.apply(&-&d)?)?;
    let normalized = &lifted - &r.scale(&lifted.coords()[0]);
    debug_assert!(normalized.coords()[0].is_zero());
    model.jac().element(normalized.coords()[1..].to_vec())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NodalVerdict {
    Verified,
    HypothesesFailed,
    ClaimFailed,
    PaperClaimMismatch,
}

impl NodalVerdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            NodalVerdict::Verified => "verified",
            NodalVerdict::HypothesesFailed => "hypotheses_failed",
            NodalVerdict::ClaimFailed => "claim_failed",
            NodalVerdict::PaperClaimMismatch => "paper_claim_mismatch",
        }
    }
}

/// Fiber restriction classes on the open `E \ {removed}`.
#[derive(Clone, Debug)]
pub struct OpenFibers {
    pub removed: String,
    /// Classes on the fibers over `p₁` and `p₂`.
    pub fiber_classes: [GroupElement; 2],
    pub paper_claim_match: bool,
}

#[derive(Clone, Debug)]
pub struct NodalCertificate {
    pub jac: FgAbelianGroup,
    pub pic: FgAbelianGroup,
    pub p1: String,
    pub p2: String,
    pub p1_class: GroupElement,
    pub p2_class: GroupElement,
    pub order: BigInt,
    pub distinct: bool,
    pub order_ok: bool,
    /// `p₁ ∈ ⟨p₂⟩` and `p₂ ∈ ⟨p₁⟩` in the jacobian.
    pub p1_in_p2: MembershipResult,
    pub p2_in_p1: MembershipResult,
    /// `O_E(−p₁)`, `O_E(−p₂)` in `Pic(E)`.
    pub claim1_classes: [GroupElement; 2],
    pub claim1_verified: bool,
    pub claim2: Vec<OpenFibers>,
    pub verdict: NodalVerdict,
}

impl NodalCertificate {
    pub fn hypotheses_hold(&self) -> bool {
        self.distinct && self.order_ok && self.p1_in_p2.is_member() && self.p2_in_p1.is_member()
    }

    pub fn paper_claim_match(&self) -> bool {
        self.claim2.iter().all(|o| o.paper_claim_match)
    }

    pub fn verify(&self) -> bool {
        let cyclic = |x: &GroupElement| Subgroup::new(self.jac.clone(), vec![x.clone()]);
        let (Ok(s1), Ok(s2)) = (cyclic(&self.p1_class), cyclic(&self.p2_class)) else {
            return false;
        };
        let memberships =
            self.p1_in_p2.verify(&s2, &self.p1_class) && self.p2_in_p1.verify(&s1, &self.p2_class);
        let claim1 = self.claim1_verified == (self.claim1_classes[0] != self.claim1_classes[1]);
        let flags = self
            .claim2
            .iter()
            .all(|o| o.paper_claim_match == o.fiber_classes.iter().all(GroupElement::is_zero));
        let order_ok = self.order_ok == (self.order > BigInt::from(2))
            && self.p1_class.order() == Some(self.order.clone());
        memberships && claim1 && flags && order_ok && self.verdict == nodal_verdict(self)
    }
}

fn nodal_verdict(c: &NodalCertificate) -> NodalVerdict {
    if !c.hypotheses_hold() {
        NodalVerdict::HypothesesFailed
    } else if !c.claim1_verified {
        NodalVerdict::ClaimFailed
    } else if !c.paper_claim_match() {
        NodalVerdict::PaperClaimMismatch
    } else {
        NodalVerdict::Verified
    }
}

/// Audit of the nodal product with `p₁ = p`, `p₂ = −p`.
pub fn verify_nodal(model: &PicCurveModel, p: &str) -> Result<NodalCertificate> {
    let p1_class = model.jac_class(p)?.clone();
    let p2_class = -&p1_class;
    let p2 = model
        .point_with_class(&p2_class)
        .ok_or_else(|| Error::UnknownPoint(format!("negative of {p}")))?
        .to_string();
    let order = p1_class
        .order()
        .ok_or_else(|| Error::InvalidGroup("point of infinite order".into()))?;

    let cyclic = |x: &GroupElement| Subgroup::new(model.jac().clone(), vec![x.clone()]);
    let p1_in_p2 = membership(&cyclic(&p2_class)?, &p1_class)?;
    let p2_in_p1 = membership(&cyclic(&p1_class)?, &p2_class)?;

    let claim1_classes = [-&model.point_class(p)?, -&model.point_class(&p2)?];
    let claim1_verified = claim1_classes[0] != claim1_classes[1];

    let mut claim2 = Vec::with_capacity(2);
    for removed in [p, p2.as_str()] {
        let fiber_classes = [
            fiber_restriction_class(model, removed, Some(p))?,
            fiber_restriction_class(model, removed, Some(&p2))?,
        ];
        let paper_claim_match = fiber_classes.iter().all(GroupElement::is_zero);
        claim2.push(OpenFibers {
            removed: removed.to_string(),
            fiber_classes,
            paper_claim_match,
        });
    }

    let mut cert = NodalCertificate {
        jac: model.jac().clone(),
        pic: model.pic().clone(),
        distinct: p != p2,
        order_ok: order > BigInt::from(2),
        p1: p.to_string(),
        p2,
        p1_class,
        p2_class,
        order,
        p1_in_p2,
        p2_in_p1,
        claim1_classes,
        claim1_verified,
        claim2,
        verdict: NodalVerdict::HypothesesFailed,
    };
    cert.verdict = nodal_verdict(&cert);
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elliptic::{group_structure, Curve};

    fn elliptic(p: u64, a: i64, b: i64) -> PicCurveModel {
        PicCurveModel::from_curve_group(&group_structure(&Curve::new(p, a, b).unwrap()))
    }

    fn abstract_curve(jac: &str) -> PicCurveModel {
        let jac: FgAbelianGroup = jac.parse().unwrap();
        let points = jac
            .elements(64)
            .unwrap()
            .into_iter()
            .enumerate()
            .map(|(i, x)| (format!("x{i}"), x))
            .collect();
        PicCurveModel::new(jac, points).unwrap()
    }

    #[test]
    fn glued_picard_over_p1() {
        let m = PicCurveModel::projective_line();
        let g = glued_picard(&m);
        assert_eq!(g.pic_x, FgAbelianGroup::free(3));
        assert_eq!(g.pic_u, FgAbelianGroup::free(2));
        for (a, s, t) in [(1, 0, 0), (3, -1, 7), (0, 2, 2)] {
            let x = g.pic_x.element(vec![a, s, t]).unwrap();
            assert_eq!(
                g.restriction.apply(&x).unwrap(),
                g.pic_u.element(vec![a, a]).unwrap()
            );
        }
    }

    #[test]
    fn glued_picard_trivial_and_finite() {
        let m = PicCurveModel::new(FgAbelianGroup::trivial(), vec![]).unwrap();
        assert_eq!(m.pic(), &FgAbelianGroup::free(1));

        // Image is the diagonal, checked exhaustively on the torsion part.
        let m = abstract_curve("Z/3");
        let g = glued_picard(&m);
        let img = image(&g.restriction);
        let pu = direct_sum_with_maps(&[m.pic(), m.pic()]);
        for deg in -2i64..=2 {
            for x in m.jac().elements(16).unwrap() {
                let l = m.pic_element(deg, &x).unwrap();
                let diag =
                    &pu.injections[0].apply(&l).unwrap() + &pu.injections[1].apply(&l).unwrap();
                assert!(membership(&img, &diag).unwrap().is_member());
                let off = pu.injections[0].apply(&l).unwrap();
                assert_eq!(membership(&img, &off).unwrap().is_member(), l.is_zero());
            }
        }
    }

    #[test]
    fn obstruction_examples() {
        let m = PicCurveModel::projective_line();
        let g = glued_picard(&m);
        let u = &g.pic_u;
        assert!(det_obstruction(&g.restriction, &u.zero())
            .unwrap()
            .is_member());
        let off = det_obstruction(&g.restriction, &u.element(vec![1, 0]).unwrap()).unwrap();
        assert!(!off.is_member());
        let diag = u.element(vec![2, 2]).unwrap();
        let r = det_obstruction(&g.restriction, &diag).unwrap();
        assert!(r.is_member());
        assert!(r.verify(&image(&g.restriction), &diag));
    }

    #[test]
    fn obstruction_detects_every_nonzero_class() {
        for jac in ["0", "Z/2", "Z/4", "Z/2 + Z/2", "Z/2 + Z/6"] {
            let m = abstract_curve(jac);
            let g = glued_picard(&m);
            let img = image(&g.restriction);
            for deg in -1i64..=1 {
                for x in m.jac().elements(16).unwrap() {
                    let l = m.pic_element(deg, &x).unwrap();
                    let off = g.first_copy.apply(&l).unwrap();
                    let r = det_obstruction(&g.restriction, &off).unwrap();
                    assert_eq!(r.is_member(), l.is_zero());
                    assert!(r.verify(&img, &off));
                }
            }
        }
    }

    #[test]
    fn cover_over_p1() {
        let m = PicCurveModel::projective_line();
        let target = Target::class(&m, m.pic().element(vec![1]).unwrap()).unwrap();
        let cover = trivializing_cover(&m, &target).unwrap();
        assert_eq!(cover.pieces.len(), 2);
        assert!(cover.covers());
        for piece in &cover.pieces {
            assert_eq!(piece.removed.len(), 1);
            assert_eq!(piece.witness, vec![BigInt::one()]);
        }
    }

    #[test]
    fn cover_over_elliptic_curve() {
        let m = elliptic(5, 1, 1);
        let target = Target::point(&m, "(0,1)").unwrap();
        let cover = trivializing_cover(&m, &target).unwrap();
        assert_eq!(
            cover.pieces[0].removed,
            vec!["(4,2)".to_string(), "(2,1)".to_string()]
        );
        assert!(cover.covers());
        // Independent recombination: 2·(1, x̄) − (1, ȳ) = (1, p̄).
        for piece in &cover.pieces {
            let x = m.jac_class(&piece.removed[0]).unwrap();
            let y = m.jac_class(&piece.removed[1]).unwrap();
            assert_eq!(
                &(&x.scale(&BigInt::from(2)) - y),
                m.jac_class("(0,1)").unwrap()
            );
        }
    }

    #[test]
    fn invalid_cover_rejected() {
        let m = elliptic(5, 1, 1);
        let target = Target::point(&m, "(0,1)").unwrap();
        let mut cover = trivializing_cover(&m, &target).unwrap();
        cover.pieces[1].witness[0] = BigInt::from(3);
        assert!(matches!(
            verify_glued(&m, &target, &cover),
            Err(Error::InvalidCover(_))
        ));
        let overlapping = CoverSpec {
            pieces: vec![cover.pieces[0].clone(), cover.pieces[0].clone()],
        };
        assert!(!overlapping.covers());
    }

    #[test]
    fn glued_certificates() {
        let m = PicCurveModel::projective_line();
        let t = Target::class(&m, m.pic().element(vec![1]).unwrap()).unwrap();
        let c = verify_glued(&m, &t, &trivializing_cover(&m, &t).unwrap()).unwrap();
        assert_eq!(c.verdict, GluedVerdict::Verified);
        assert_eq!(c.obstruction_element, c.pic_u.element(vec![1, 0]).unwrap());
        assert!(c.verify());

        let t0 = Target::class(&m, m.pic().zero()).unwrap();
        let c0 = verify_glued(&m, &t0, &trivializing_cover(&m, &t0).unwrap()).unwrap();
        assert_eq!(c0.verdict, GluedVerdict::HypothesesFailed);
        assert!(c0.verify());

        let e = elliptic(5, 1, 1);
        let t = Target::point(&e, "(0,1)").unwrap();
        let c = verify_glued(&e, &t, &trivializing_cover(&e, &t).unwrap()).unwrap();
        assert_eq!(c.verdict, GluedVerdict::Verified);
        assert!(c.verify());
    }

    #[test]
    fn every_elliptic_point_has_a_cover() {
        for (p, a, b) in [(5, 1, 1), (7, 3, 2), (11, 1, 0)] {
            let m = elliptic(p, a, b);
            for (name, _) in m.points() {
                let t = Target::point(&m, name).unwrap();
                if let Ok(cover) = trivializing_cover(&m, &t) {
                    cover.check(&m, &t.class).unwrap();
                    assert!(verify_glued(&m, &t, &cover).unwrap().verify());
                }
            }
        }
    }

    #[test]
    fn fiber_classes() {
        let m = elliptic(5, 1, 1);
        for (name, _) in m.points() {
            assert!(fiber_restriction_class(&m, name, None).unwrap().is_zero());
            assert!(fiber_restriction_class(&m, name, Some(name))
                .unwrap()
                .is_zero());
        }
        let c = fiber_restriction_class(&m, "(0,1)", Some("(0,4)")).unwrap();
        let p = m.jac_class("(0,1)").unwrap();
        assert_eq!(c, p.scale(&BigInt::from(2)));
        assert!(!c.is_zero());
    }

    #[test]
    fn nodal_audit() {
        let m = elliptic(5, 1, 1);
        let c = verify_nodal(&m, "(0,1)").unwrap();
        assert_eq!(c.p2, "(0,4)");
        assert!(c.hypotheses_hold());
        assert!(c.claim1_verified);
        let two_p = m.jac_class("(0,1)").unwrap().scale(&BigInt::from(2));
        assert!(c.claim2[0].fiber_classes[0].is_zero());
        assert_eq!(c.claim2[0].fiber_classes[1], two_p);
        assert!(!c.paper_claim_match());
        assert_eq!(c.verdict, NodalVerdict::PaperClaimMismatch);
        assert!(c.verify());
    }

    #[test]
    fn nodal_order_two() {
        let m = elliptic(5, 1, 0);
        let c = verify_nodal(&m, "(0,0)").unwrap();
        assert_eq!(c.verdict, NodalVerdict::HypothesesFailed);
        assert!(!c.claim1_verified);
        assert!(c.verify());
        assert!(verify_nodal(&m, "(1,1)").is_err());
    }

    #[test]
    fn claim1_iff_double_nonzero() {
        for (p, a, b) in [(5, 1, 1), (5, 1, 0), (7, 0, 1), (11, 1, 0), (13, 2, 5)] {
            let m = elliptic(p, a, b);
            for (name, x) in m.points() {
                let c = verify_nodal(&m, name).unwrap();
                assert_eq!(c.claim1_verified, !x.scale(&BigInt::from(2)).is_zero());
                assert!(c.verify());
            }
        }
    }
}

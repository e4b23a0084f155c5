use std::collections::BTreeSet;

use num_bigint::BigInt;
use perfcert_core::certificate::{
    combination_section, comparison_section, encode, exit_code_for, forms_section, hom_section,
    membership_section, name_comparison_section, smith_section, zero_test_section, Document,
    Section,
};
use perfcert_core::elliptic::{group_structure, Curve, CurvePoint};
use perfcert_core::quadforms::{
    class_group, class_of_prime, factor_prime, prime_form, reduce, PrimeKind, QuadOrder,
};
use perfcert_core::surfaces::{
    trivializing_cover, verify_glued, verify_nodal, PicCurveModel, Target,
};
use perfcert_core::thickening::{
    search_primes, verify_thick, DedekindModel, OpenCheck, ThickCertificate,
};
use perfcert_core::{smith_normal_form, IntMatrix, Result};

use crate::{Invocation, PicSpec, ThickPrimes, AUTO_PRIME_BOUND};

/// Runs a validated invocation and assembles its certificate.
pub fn run(inv: &Invocation) -> Result<Document> {
    let mut doc = Document::new(inv.subcommand());
    match inv {
        Invocation::Snf { matrix } => snf(&mut doc, matrix),
        Invocation::Classgroup { order } => classgroup(&mut doc, order),
        Invocation::FactorPrime { order, p } => factor(&mut doc, order, *p)?,
        Invocation::VerifyThick { order, primes } => thick(&mut doc, order, primes)?,
        Invocation::VerifyGlued { input, pic } => glued(&mut doc, input, pic)?,
        Invocation::VerifyNodal { curve, point } => nodal(&mut doc, curve, point)?,
    }
    Ok(doc)
}

fn ok_verdict() -> Section {
    Section::new("verdict")
        .field("verdict", "ok")
        .field("exit_code", 0)
}

fn verdict(verdict: &str, positive: &str, tiers: &[(&str, Vec<String>)]) -> Section {
    let mut s = Section::new("verdict")
        .field("verdict", verdict)
        .field("positive", positive);
    for (name, reqs) in tiers {
        s = s.field(*name, reqs.join(", "));
    }
    s.field("exit_code", exit_code_for(verdict))
}

fn req(section: &str, outcome: &str) -> String {
    format!("{section}:{outcome}")
}

fn snf(doc: &mut Document, m: &IntMatrix) {
    let s = smith_normal_form(m);
    let diag = s.diagonal();
    let nonzero: Vec<BigInt> = diag
        .iter()
        .filter(|x| x != &&BigInt::from(0))
        .cloned()
        .collect();
    doc.push(
        Section::new("inputs")
            .field("rows", m.rows())
            .field("cols", m.cols())
            .field("matrix", encode::matrix(m)),
    );
    doc.push(smith_section("snf", m, &s));
    doc.push(
        Section::new("result")
            .field("diagonal", encode::vector(&diag))
            .field("invariant_factors", encode::vector(&nonzero))
            .field("rank", s.rank()),
    );
    doc.push(ok_verdict());
}

fn classgroup(doc: &mut Document, order: &QuadOrder) {
    let cg = class_group(order);
    doc.push(Section::new("inputs").field("d", order.d()));
    doc.push(
        Section::new("class_group")
            .field("ring", order)
            .field("discriminant", order.discriminant())
            .field("group", cg.group())
            .field("invariant_factors", encode::invariant_factors(cg.group()))
            .field("class_number", cg.class_number())
            .field("forms", encode::list(cg.forms())),
    );
    doc.push(forms_section(
        "table",
        order.discriminant(),
        cg.group(),
        cg.table(),
    ));
    doc.push(ok_verdict());
}

fn factor(doc: &mut Document, order: &QuadOrder, p: u64) -> Result<()> {
    let f = factor_prime(order, p)?;
    doc.push(Section::new("inputs").field("d", order.d()).field("p", p));
    let mut s = Section::new("factor").field("splitting", f.kind.as_str());
    if f.kind != PrimeKind::Inert {
        let cg = class_group(order);
        let form = prime_form(order, &f)?;
        let b = f.b.expect("split or ramified primes carry a root");
        s = s
            .field("b", b)
            .field("ideal", format!("({p}, {b} + sqrt({}))", order.d()))
            .field("form", &form)
            .field("reduced_form", reduce(&form))
            .field("class", encode::element(&class_of_prime(&cg, &f)?))
            .field("class_group", cg.group());
    }
    doc.push(s);
    doc.push(ok_verdict());
    Ok(())
}

fn open_section(name: &str, check: &OpenCheck) -> Section {
    let removed = if check.removed.is_empty() {
        "none".to_string()
    } else {
        check.removed.join(", ")
    };
    membership_section(
        name,
        &check.perfect,
        &check.class.element(),
        &check.membership,
    )
    .field("removed", removed)
    .field("k_group", &check.k_group)
    .field("class", &check.class)
}

fn thick(doc: &mut Document, order: &QuadOrder, primes: &ThickPrimes) -> Result<()> {
    let cg = class_group(order);
    let mut inputs = Section::new("inputs").field("d", order.d());
    let (p, q, remove) = match primes {
        ThickPrimes::Auto => {
            let (p, q, r) = search_primes(&cg, AUTO_PRIME_BOUND).ok_or_else(|| {
                perfcert_core::Error::UnknownPrime(format!(
                    "no admissible prime triple below {AUTO_PRIME_BOUND} for {order}"
                ))
            })?;
            inputs = inputs
                .field("mode", "auto")
                .field("bound", AUTO_PRIME_BOUND);
            (p, q, Some(r))
        }
        ThickPrimes::Explicit { p, q, remove } => {
            inputs = inputs.field("mode", "explicit");
            (*p, *q, *remove)
        }
    };
    let remove_name = remove.map_or("none".to_string(), |r| r.to_string());
    doc.push(
        inputs
            .field("p", p)
            .field("q", q)
            .field("remove", &remove_name),
    );

    let removed: Vec<u64> = remove.into_iter().collect();
    let model = DedekindModel::from_class_group(&cg, &[p, q], &removed)?;
    let mut m = Section::new("model")
        .field("ring", order)
        .field("class_group", model.cl())
        .field("removed", &remove_name)
        .field("effective_class_group", model.effective_class_group());
    for (name, class) in model.labeled_primes() {
        let f = factor_prime(order, name.parse().expect("labels are rational primes"))?;
        m = m.field(
            format!("prime.{name}"),
            format!(
                "{} form {} class {}",
                f.kind.as_str(),
                reduce(&prime_form(order, &f)?),
                encode::element(class)
            ),
        );
    }
    doc.push(m);

    let cert = verify_thick(&model, &p.to_string(), &q.to_string())?;
    thick_sections(doc, &cert);
    Ok(())
}

fn thick_sections(doc: &mut Document, cert: &ThickCertificate) {
    doc.push(name_comparison_section(
        "hypothesis.distinct",
        &cert.p,
        &cert.q,
    ));
    doc.push(comparison_section(
        "hypothesis.same_class",
        &cert.p_class,
        &cert.q_class,
    ));
    doc.push(membership_section(
        "hypothesis.p_not_double",
        &cert.doubles,
        &cert.p_class,
        &cert.p_not_double,
    ));
    doc.push(membership_section(
        "hypothesis.q_not_double",
        &cert.doubles,
        &cert.q_class,
        &cert.q_not_double,
    ));
    doc.push(open_section("global", &cert.global));
    let mut locals = Vec::new();
    for (i, l) in cert.locals.iter().enumerate() {
        let name = format!("local.{}", i + 1);
        doc.push(open_section(&name, l));
        locals.push(req(&name, "member"));
    }
    let mut claims = vec![req("global", "non_member")];
    claims.extend(locals);
    doc.push(verdict(
        cert.verdict.as_str(),
        "counterexample_verified",
        &[
            (
                "hypotheses",
                vec![
                    req("hypothesis.distinct", "unequal"),
                    req("hypothesis.same_class", "equal"),
                    req("hypothesis.p_not_double", "non_member"),
                    req("hypothesis.q_not_double", "non_member"),
                ],
            ),
            ("claims", claims),
        ],
    ));
}

fn elliptic_model(curve: &Curve) -> PicCurveModel {
    PicCurveModel::from_curve_group(&group_structure(curve))
}

fn glued(doc: &mut Document, input: &str, pic: &PicSpec) -> Result<()> {
    let (kind, p_input) = input.split_once(' ').unwrap_or((input, ""));
    doc.push(
        Section::new("inputs")
            .field("pic", kind)
            .field("p", p_input),
    );
    let (model, target) = match pic {
        PicSpec::ProjectiveLine { degree } => {
            let m = PicCurveModel::projective_line();
            let t = Target::class(&m, m.pic().element(vec![*degree])?)?;
            (m, t)
        }
        PicSpec::Elliptic { curve, point } => {
            let m = elliptic_model(curve);
            let t = Target::point(&m, &point.to_string())?;
            (m, t)
        }
    };
    let cover = trivializing_cover(&model, &target)?;
    let cert = verify_glued(&model, &target, &cover)?;

    doc.push(
        Section::new("pic_c")
            .field("group", &cert.pic_c)
            .field("jacobian", model.jac())
            .field("target", &target.label)
            .field("target_class", encode::element(&target.class)),
    );
    doc.push(Section::new("pic_x").field("group", &cert.pic_x));
    doc.push(Section::new("pic_u").field("group", &cert.pic_u));
    doc.push(hom_section("restriction", &cert.restriction));
    doc.push(zero_test_section("hypothesis.class_nonzero", &target.class));
    doc.push(
        membership_section(
            "obstruction",
            &cert.image,
            &cert.obstruction_element,
            &cert.obstruction,
        )
        .field("generated_by", "restriction"),
    );
    let mut claims = vec![req("obstruction", "non_member")];
    for (i, l) in cert.locals.iter().enumerate() {
        let name = format!("cover.{}", i + 1);
        doc.push(
            combination_section(&name, &l.removed_classes, &l.witness, &target.class)
                .field("removed", l.removed.join(" ")),
        );
        claims.push(req(&name, "valid"));
    }
    doc.push(verdict(
        cert.verdict.as_str(),
        "verified",
        &[
            (
                "hypotheses",
                vec![req("hypothesis.class_nonzero", "nonzero")],
            ),
            ("claims", claims),
        ],
    ));
    Ok(())
}

fn nodal(doc: &mut Document, curve: &Curve, point: &CurvePoint) -> Result<()> {
    doc.push(
        Section::new("inputs")
            .field("curve", curve)
            .field("point", point),
    );
    let model = elliptic_model(curve);
    let cert = verify_nodal(&model, &point.to_string())?;
    doc.push(
        Section::new("curve")
            .field("jacobian", &cert.jac)
            .field("pic", &cert.pic)
            .field("points", model.points().len())
            .field("p1", &cert.p1)
            .field("p2", &cert.p2)
            .field("order", &cert.order),
    );
    doc.push(name_comparison_section(
        "hypothesis.distinct",
        &cert.p1,
        &cert.p2,
    ));
    doc.push(
        zero_test_section("hypothesis.double", &cert.p1_class.scale(&BigInt::from(2)))
            .field("meaning", "order of p1 exceeds 2 iff nonzero"),
    );
    let cyclic = |x| perfcert_core::Subgroup::new(cert.jac.clone(), vec![x]);
    doc.push(membership_section(
        "hypothesis.p1_in_p2",
        &cyclic(cert.p2_class.clone())?,
        &cert.p1_class,
        &cert.p1_in_p2,
    ));
    doc.push(membership_section(
        "hypothesis.p2_in_p1",
        &cyclic(cert.p1_class.clone())?,
        &cert.p2_class,
        &cert.p2_in_p1,
    ));
    doc.push(
        comparison_section("claim1", &cert.claim1_classes[0], &cert.claim1_classes[1])
            .field("meaning", "fiber classes of O(-diagonal) over p1 and p2"),
    );

    let mut paper = Vec::new();
    let mut summary = Section::new("claim2").field(
        "double_p1",
        encode::element(&cert.p1_class.scale(&BigInt::from(2))),
    );
    for (i, open) in cert.claim2.iter().enumerate() {
        for (j, (class, divisor)) in open
            .fiber_classes
            .iter()
            .zip([&cert.p1, &cert.p2])
            .enumerate()
        {
            let name = format!("claim2.open{}.fiber{}", i + 1, j + 1);
            doc.push(
                zero_test_section(&name, class)
                    .field("removed", &open.removed)
                    .field("divisor", divisor)
                    .field("paper_claim_match", class.is_zero()),
            );
            paper.push(req(&name, "zero"));
        }
        let classes: BTreeSet<String> = open.fiber_classes.iter().map(encode::element).collect();
        summary = summary
            .field(format!("open{}.removed", i + 1), &open.removed)
            .field(
                format!("open{}.fiber_classes", i + 1),
                encode::list(classes),
            );
    }
    doc.push(summary.field("paper_claim_match", cert.paper_claim_match()));
    doc.push(verdict(
        cert.verdict.as_str(),
        "verified",
        &[
            (
                "hypotheses",
                vec![
                    req("hypothesis.distinct", "unequal"),
                    req("hypothesis.double", "nonzero"),
                    req("hypothesis.p1_in_p2", "member"),
                    req("hypothesis.p2_in_p1", "member"),
                ],
            ),
            ("claims", vec![req("claim1", "unequal")]),
            ("paper_claims", paper),
        ],
    ));
    Ok(())
}

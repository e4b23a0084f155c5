//! Line-oriented certificate documents and a checker that re-verifies them
//! using group arithmetic only.
//!
//! ```text
//! schema_version = 1
//! subcommand = verify-thick
//!
//! [inputs]
//! d = -21
//!
//! [global]
//! kind = membership
//! ambient = Z^1 + Z/2
//! ...
//! ```
//!
//! A document is a header (`schema_version`, `subcommand`) followed by
//! named sections of `key = value` fields, in order. Section names nest with
//! dots. Sections carrying a `kind` field are re-checked:
//!
//! | kind         | fields                                                        | outcome                  |
//! |--------------|---------------------------------------------------------------|--------------------------|
//! | `membership` | `ambient generators element verdict` and either `witness` or `quotient projection residue`; optional `generated_by` | `member` / `non_member` |
//! | `comparison` | `left right equal`, optional `ambient`                        | `equal` / `unequal`      |
//! | `zero_test`  | `ambient element is_zero`, optional `paper_claim_match`       | `zero` / `nonzero`       |
//! | `combination`| `ambient classes witness target`                              | `valid`                  |
//! | `hom`        | `source target matrix`                                        | `valid`                  |
//! | `smith`      | `matrix u d v`                                                | `valid`                  |
//! | `forms`      | `discriminant forms elements group`                           | `valid`                  |
//!
//! The `[verdict]` section names the verdict and, for verifiers, the
//! outcomes it rests on in three tiers (`hypotheses`, `claims`,
//! `paper_claims`), each a comma-separated list of `section:outcome`.

use std::collections::BTreeMap;
use std::fmt::{self, Display, Write as _};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::abelian::{
    FgAbelianGroup, GroupElement, GroupHom, IntMatrix, MembershipResult, SmithForm, Subgroup,
};
use crate::quadforms::QuadForm;
use crate::{Error, Result};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Section {
    pub name: String,
    pub fields: Vec<(String, String)>,
}

impl Section {
    pub fn new(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            fields: Vec::new(),
        }
    }

    pub fn field(mut self, key: impl Into<String>, value: impl Display) -> Self {
        self.fields.push((key.into(), value.to_string()));
        self
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.fields
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    fn require(&self, key: &str) -> Result<&str> {
        self.get(key)
            .ok_or_else(|| Error::Parse(format!("section [{}] lacks `{key}`", self.name)))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Document {
    pub subcommand: String,
    pub sections: Vec<Section>,
}

impl Document {
    pub fn new(subcommand: impl Into<String>) -> Self {
        Self {
            subcommand: subcommand.into(),
            sections: Vec::new(),
        }
    }

    pub fn push(&mut self, section: Section) {
        self.sections.push(section);
    }

    pub fn section(&self, name: &str) -> Option<&Section> {
        self.sections.iter().find(|s| s.name == name)
    }

    pub fn verdict(&self) -> Option<&str> {
        self.section("verdict")?.get("verdict")
    }

    /// Exit code implied by the verdict field alone.
    pub fn exit_code(&self) -> i32 {
        self.verdict().map_or(3, exit_code_for)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "schema_version = {SCHEMA_VERSION}");
        let _ = writeln!(out, "subcommand = {}", self.subcommand);
        for s in &self.sections {
            let _ = writeln!(out, "\n[{}]", s.name);
            for (k, v) in &s.fields {
                let _ = writeln!(out, "{k} = {v}");
            }
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut header: Vec<(String, String)> = Vec::new();
        let mut sections: Vec<Section> = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(name) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
                if sections.iter().any(|s| s.name == name) {
                    return Err(Error::Parse(format!("duplicate section [{name}]")));
                }
                sections.push(Section::new(name));
                continue;
            }
            let (k, v) = line
                .split_once(" = ")
                .or_else(|| line.strip_suffix(" =").map(|k| (k, "")))
                .ok_or_else(|| {
                    Error::Parse(format!("line {}: expected `key = value`", lineno + 1))
                })?;
            let entry = (k.trim().to_string(), v.to_string());
            match sections.last_mut() {
                Some(s) => s.fields.push(entry),
                None => header.push(entry),
            }
        }
        let get = |key: &str| {
            header
                .iter()
                .find(|(k, _)| k == key)
                .map(|(_, v)| v.clone())
        };
        let version =
            get("schema_version").ok_or_else(|| Error::Parse("missing schema_version".into()))?;
        if version != SCHEMA_VERSION.to_string() {
            return Err(Error::Parse(format!(
                "unsupported schema_version {version}"
            )));
        }
        let subcommand =
            get("subcommand").ok_or_else(|| Error::Parse("missing subcommand".into()))?;
        Ok(Self {
            subcommand,
            sections,
        })
    }
}

impl Display for Document {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

pub fn exit_code_for(verdict: &str) -> i32 {
    match verdict {
        "ok" | "verified" | "counterexample_verified" => 0,
        "hypotheses_failed" | "claim_failed" => 1,
        "paper_claim_mismatch" => 2,
        _ => 3,
    }
}

/// Value encodings.
pub mod encode {
    use super::*;

    pub fn vector(v: &[BigInt]) -> String {
        let parts: Vec<String> = v.iter().map(BigInt::to_string).collect();
        format!("[{}]", parts.join(", "))
    }

    pub fn vectors<'a>(vs: impl IntoIterator<Item = &'a [BigInt]>) -> String {
        let parts: Vec<String> = vs.into_iter().map(vector).collect();
        format!("[{}]", parts.join(", "))
    }

    pub fn matrix(m: &IntMatrix) -> String {
        vectors((0..m.rows()).map(|i| m.row(i)))
    }

    pub fn element(x: &GroupElement) -> String {
        vector(x.coords())
    }

    pub fn elements(xs: &[GroupElement]) -> String {
        vectors(xs.iter().map(GroupElement::coords))
    }

    pub fn invariant_factors(g: &FgAbelianGroup) -> String {
        vector(g.torsion())
    }

    pub fn list<T: Display>(xs: impl IntoIterator<Item = T>) -> String {
        xs.into_iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(", ")
    }
}

/// Value decodings, inverse to [`encode`].
pub mod decode {
    use super::*;

    pub fn vector(s: &str) -> Result<Vec<BigInt>> {
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("`{s}` is not a bracketed list")))?;
        if inner.trim().is_empty() {
            return Ok(Vec::new());
        }
        inner
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<BigInt>()
                    .map_err(|_| Error::Parse(format!("bad integer `{t}`")))
            })
            .collect()
    }

    pub fn vectors(s: &str) -> Result<Vec<Vec<BigInt>>> {
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("`{s}` is not a bracketed list")))?
            .trim();
        let mut out = Vec::new();
        let mut rest = inner;
        while !rest.is_empty() {
            let end = rest
                .find(']')
                .ok_or_else(|| Error::Parse(format!("unbalanced `{s}`")))?;
            out.push(vector(&rest[..=end])?);
            rest = rest[end + 1..]
                .trim_start()
                .trim_start_matches(',')
                .trim_start();
        }
        Ok(out)
    }

    pub fn matrix(s: &str, rows: usize, cols: usize) -> Result<IntMatrix> {
        let vs = vectors(s)?;
        if vs.is_empty() {
            if rows != 0 {
                return Err(Error::Dimension(format!("expected {rows} rows in `{s}`")));
            }
            return Ok(IntMatrix::zeros(0, cols));
        }
        if vs.len() != rows {
            return Err(Error::Dimension(format!("expected {rows} rows in `{s}`")));
        }
        IntMatrix::from_rows(cols, &vs)
    }

    pub fn square_matrix(s: &str) -> Result<IntMatrix> {
        let vs = vectors(s)?;
        let cols = vs.first().map_or(0, Vec::len);
        IntMatrix::from_rows(cols, &vs)
    }

    pub fn group(s: &str) -> Result<FgAbelianGroup> {
        s.parse()
    }

    pub fn element(g: &FgAbelianGroup, s: &str) -> Result<GroupElement> {
        g.element(vector(s)?)
    }

    pub fn elements(g: &FgAbelianGroup, s: &str) -> Result<Vec<GroupElement>> {
        vectors(s)?.into_iter().map(|v| g.element(v)).collect()
    }

    pub fn boolean(s: &str) -> Result<bool> {
        match s {
            "true" => Ok(true),
            "false" => Ok(false),
            _ => Err(Error::Parse(format!("bad boolean `{s}`"))),
        }
    }
}

pub fn hom_section(name: &str, h: &GroupHom) -> Section {
    Section::new(name)
        .field("kind", "hom")
        .field("source", h.source())
        .field("target", h.target())
        .field("matrix", encode::matrix(h.matrix()))
}

pub fn membership_section(
    name: &str,
    s: &Subgroup,
    x: &GroupElement,
    r: &MembershipResult,
) -> Section {
    let sec = Section::new(name)
        .field("kind", "membership")
        .field("ambient", s.ambient())
        .field("generators", encode::elements(s.generators()))
        .field("element", encode::element(x))
        .field("verdict", r.verdict());
    match r {
        MembershipResult::Member { witness } => sec.field("witness", encode::vector(witness)),
        MembershipResult::NonMember {
            quotient,
            projection,
            residue,
        } => sec
            .field("quotient", quotient)
            .field("projection", encode::matrix(projection.matrix()))
            .field("residue", encode::element(residue)),
    }
}

pub fn comparison_section(name: &str, left: &GroupElement, right: &GroupElement) -> Section {
    Section::new(name)
        .field("kind", "comparison")
        .field("ambient", left.group())
        .field("left", encode::element(left))
        .field("right", encode::element(right))
        .field("equal", left == right)
}

pub fn name_comparison_section(name: &str, left: &str, right: &str) -> Section {
    Section::new(name)
        .field("kind", "comparison")
        .field("left", left)
        .field("right", right)
        .field("equal", left == right)
}

pub fn zero_test_section(name: &str, x: &GroupElement) -> Section {
    Section::new(name)
        .field("kind", "zero_test")
        .field("ambient", x.group())
        .field("element", encode::element(x))
        .field("is_zero", x.is_zero())
}

pub fn combination_section(
    name: &str,
    classes: &[GroupElement],
    witness: &[BigInt],
    target: &GroupElement,
) -> Section {
    Section::new(name)
        .field("kind", "combination")
        .field("ambient", target.group())
        .field("classes", encode::elements(classes))
        .field("witness", encode::vector(witness))
        .field("target", encode::element(target))
}

pub fn smith_section(name: &str, m: &IntMatrix, s: &SmithForm) -> Section {
    Section::new(name)
        .field("kind", "smith")
        .field("rows", m.rows())
        .field("cols", m.cols())
        .field("matrix", encode::matrix(m))
        .field("u", encode::matrix(&s.u))
        .field("d", encode::matrix(&s.d))
        .field("v", encode::matrix(&s.v))
}

pub fn forms_section<'a>(
    name: &str,
    discriminant: i64,
    group: &FgAbelianGroup,
    table: impl IntoIterator<Item = (&'a QuadForm, &'a GroupElement)>,
) -> Section {
    let (forms, elements): (Vec<_>, Vec<_>) = table.into_iter().unzip();
    Section::new(name)
        .field("kind", "forms")
        .field("discriminant", discriminant)
        .field("group", group)
        .field("forms", encode::list(forms))
        .field(
            "elements",
            encode::vectors(elements.iter().map(|x| x.coords())),
        )
}

/// Result of re-checking a document.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CheckReport {
    /// Outcome of every checkable section, by name.
    pub outcomes: BTreeMap<String, String>,
    pub failures: Vec<String>,
}

impl CheckReport {
    pub fn is_ok(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn checked(&self) -> usize {
        self.outcomes.len()
    }
}

fn fail(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn ensure(cond: bool, msg: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(fail(msg))
    }
}

fn check_membership(doc: &Document, s: &Section) -> Result<String> {
    let g = decode::group(s.require("ambient")?)?;
    let gens = decode::elements(&g, s.require("generators")?)?;
    if let Some(src) = s.get("generated_by") {
        let h = doc
            .section(src)
            .ok_or_else(|| fail(format!("unknown section [{src}]")))?;
        let hom = read_hom(h)?;
        ensure(hom.target() == &g, "generating map lands elsewhere")?;
        let cols: Vec<GroupElement> = (0..hom.matrix().cols())
            .map(|j| g.element(hom.matrix().column(j)))
            .collect::<Result<_>>()?;
        ensure(
            cols == gens,
            "generators differ from the columns of the generating map",
        )?;
    }
    let x = decode::element(&g, s.require("element")?)?;
    let sub = Subgroup::new(g.clone(), gens)?;
    let verdict = s.require("verdict")?;
    let result = match verdict {
        "member" => MembershipResult::Member {
            witness: decode::vector(s.require("witness")?)?,
        },
        "non_member" => {
            let q = decode::group(s.require("quotient")?)?;
            let m = decode::matrix(s.require("projection")?, q.ngens(), g.ngens())?;
            let projection = GroupHom::new(g.clone(), q.clone(), m)?;
            let residue = decode::element(&q, s.require("residue")?)?;
            MembershipResult::NonMember {
                quotient: q,
                projection,
                residue,
            }
        }
        other => return Err(fail(format!("bad membership verdict `{other}`"))),
    };
    ensure(
        result.verify(&sub, &x),
        "membership evidence does not verify",
    )?;
    Ok(verdict.to_string())
}

fn read_hom(s: &Section) -> Result<GroupHom> {
    let src = decode::group(s.require("source")?)?;
    let tgt = decode::group(s.require("target")?)?;
    let m = decode::matrix(s.require("matrix")?, tgt.ngens(), src.ngens())?;
    GroupHom::new(src, tgt, m)
}

fn check_comparison(s: &Section) -> Result<String> {
    let (l, r) = (s.require("left")?, s.require("right")?);
    let equal = match s.get("ambient") {
        Some(a) => {
            let g = decode::group(a)?;
            decode::element(&g, l)? == decode::element(&g, r)?
        }
        None => l == r,
    };
    ensure(
        decode::boolean(s.require("equal")?)? == equal,
        "recorded equality is wrong",
    )?;
    Ok(if equal { "equal" } else { "unequal" }.into())
}

fn check_zero(s: &Section) -> Result<String> {
    let g = decode::group(s.require("ambient")?)?;
    let zero = decode::element(&g, s.require("element")?)?.is_zero();
    ensure(
        decode::boolean(s.require("is_zero")?)? == zero,
        "recorded zero test is wrong",
    )?;
    if let Some(flag) = s.get("paper_claim_match") {
        ensure(
            decode::boolean(flag)? == zero,
            "paper_claim_match disagrees with the class",
        )?;
    }
    Ok(if zero { "zero" } else { "nonzero" }.into())
}

fn check_combination(s: &Section) -> Result<String> {
    let g = decode::group(s.require("ambient")?)?;
    let classes = decode::elements(&g, s.require("classes")?)?;
    let witness = decode::vector(s.require("witness")?)?;
    let target = decode::element(&g, s.require("target")?)?;
    ensure(
        classes.len() == witness.len(),
        "witness length differs from class count",
    )?;
    let sum = classes
        .iter()
        .zip(&witness)
        .fold(g.zero(), |acc, (x, n)| &acc + &x.scale(n));
    ensure(sum == target, "combination does not reach the target")?;
    Ok("valid".into())
}

fn check_smith(s: &Section) -> Result<String> {
    let parse_usize = |k: &str| -> Result<usize> {
        s.require(k)?
            .parse()
            .map_err(|_| fail(format!("bad `{k}`")))
    };
    let (r, c) = (parse_usize("rows")?, parse_usize("cols")?);
    let m = decode::matrix(s.require("matrix")?, r, c)?;
    let u = decode::matrix(s.require("u")?, r, r)?;
    let d = decode::matrix(s.require("d")?, r, c)?;
    let v = decode::matrix(s.require("v")?, c, c)?;
    ensure(u.mul(&m)?.mul(&v)? == d, "u*m*v differs from d")?;
    ensure(
        u.is_unimodular() && v.is_unimodular(),
        "transforms are not unimodular",
    )?;
    ensure(d.is_diagonal(), "d is not diagonal")?;
    let diag: Vec<BigInt> = (0..r.min(c)).map(|i| d.get(i, i).clone()).collect();
    ensure(
        diag.iter().all(|x| !x.is_negative()),
        "negative invariant factor",
    )?;
    for w in diag.windows(2) {
        let ok = if w[0].is_zero() {
            w[1].is_zero()
        } else {
            (&w[1] % &w[0]).is_zero()
        };
        ensure(ok, "divisibility chain broken")?;
    }
    Ok("valid".into())
}

fn check_forms(s: &Section) -> Result<String> {
    let disc: BigInt = s
        .require("discriminant")?
        .parse()
        .map_err(|_| fail("bad discriminant"))?;
    let g = decode::group(s.require("group")?)?;
    let forms = parse_forms(s.require("forms")?)?;
    let elements = decode::elements(&g, s.require("elements")?)?;
    ensure(
        forms.len() == elements.len(),
        "forms and elements differ in count",
    )?;
    ensure(
        g.order() == Some(BigInt::from(forms.len())),
        "class number differs from group order",
    )?;
    ensure(
        forms
            .iter()
            .all(|f| f.is_reduced() && f.discriminant() == disc),
        "form not reduced or wrong discriminant",
    )?;
    let mut seen: Vec<&GroupElement> = elements.iter().collect();
    seen.sort();
    seen.dedup();
    ensure(seen.len() == elements.len(), "table is not injective")?;
    let principal = forms
        .iter()
        .position(|f| f.a().is_one())
        .ok_or_else(|| fail("no principal form"))?;
    ensure(
        elements[principal].is_zero(),
        "principal form is not the identity",
    )?;
    Ok("valid".into())
}

/// Parses `(a, b, c), (a, b, c), ...`.
fn parse_forms(s: &str) -> Result<Vec<QuadForm>> {
    let mut out = Vec::new();
    for chunk in s.split(')').map(str::trim).filter(|c| !c.is_empty()) {
        let inner = chunk.trim_start_matches(',').trim().trim_start_matches('(');
        let v: Vec<BigInt> = inner
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<BigInt>()
                    .map_err(|_| fail(format!("bad form `{chunk})`")))
            })
            .collect::<Result<_>>()?;
        let [a, b, c]: [BigInt; 3] = v
            .try_into()
            .map_err(|_| fail(format!("bad form `{chunk})`")))?;
        out.push(QuadForm::new(a, b, c)?);
    }
    Ok(out)
}

fn tier(doc: &Document, report: &CheckReport, key: &str) -> Result<bool> {
    let Some(list) = doc.section("verdict").and_then(|v| v.get(key)) else {
        return Ok(true);
    };
    let mut all = true;
    for item in list.split(',').map(str::trim).filter(|i| !i.is_empty()) {
        let (name, want) = item
            .split_once(':')
            .ok_or_else(|| fail(format!("bad requirement `{item}`")))?;
        let got = report
            .outcomes
            .get(name)
            .ok_or_else(|| fail(format!("requirement on unchecked section [{name}]")))?;
        all &= got == want;
    }
    Ok(all)
}

/// Re-verifies every checkable section and the verdict derived from them.
pub fn check(doc: &Document) -> CheckReport {
    let mut report = CheckReport::default();
    for s in &doc.sections {
        let outcome = match s.get("kind") {
            None => continue,
            Some("membership") => check_membership(doc, s),
            Some("comparison") => check_comparison(s),
            Some("zero_test") => check_zero(s),
            Some("combination") => check_combination(s),
            Some("hom") => read_hom(s).map(|_| "valid".to_string()),
            Some("smith") => check_smith(s),
            Some("forms") => check_forms(s),
            Some(other) => Err(fail(format!("unknown kind `{other}`"))),
        };
        match outcome {
            Ok(o) => {
                report.outcomes.insert(s.name.clone(), o);
            }
            Err(e) => report.failures.push(format!("[{}]: {e}", s.name)),
        }
    }
    if let Err(e) = check_verdict(doc, &report) {
        report.failures.push(format!("[verdict]: {e}"));
    }
    report
}

fn check_verdict(doc: &Document, report: &CheckReport) -> Result<()> {
    let v = doc
        .section("verdict")
        .ok_or_else(|| fail("missing verdict section"))?;
    let verdict = v.require("verdict")?;
    let expected = match v.get("positive") {
        None => "ok".to_string(),
        Some(positive) => {
            if !tier(doc, report, "hypotheses")? {
                "hypotheses_failed".into()
            } else if !tier(doc, report, "claims")? {
                "claim_failed".into()
            } else if !tier(doc, report, "paper_claims")? {
                "paper_claim_mismatch".into()
            } else {
                positive.to_string()
            }
        }
    };
    ensure(
        verdict == expected,
        &format!("verdict `{verdict}` but evidence gives `{expected}`"),
    )?;
    if let Some(code) = v.get("exit_code") {
        ensure(
            code == exit_code_for(verdict).to_string(),
            "exit code does not follow the verdict",
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::{membership, scale_subgroup, smith_normal_form};

    fn sample() -> Document {
        let g: FgAbelianGroup = "Z^1 + Z/2".parse().unwrap();
        let two = scale_subgroup(&g, 2);
        let x = g.element(vec![2, 1]).unwrap();
        let y = g.element(vec![4, 0]).unwrap();
        let mut doc = Document::new("demo");
        doc.push(Section::new("inputs").field("d", -21));
        doc.push(membership_section(
            "global",
            &two,
            &x,
            &membership(&two, &x).unwrap(),
        ));
        doc.push(membership_section(
            "local",
            &two,
            &y,
            &membership(&two, &y).unwrap(),
        ));
        doc.push(name_comparison_section("distinct", "2", "3"));
        doc.push(
            Section::new("verdict")
                .field("verdict", "verified")
                .field("positive", "verified")
                .field("hypotheses", "distinct:unequal")
                .field("claims", "global:non_member, local:member")
                .field("exit_code", 0),
        );
        doc
    }

    #[test]
    fn round_trip() {
        let doc = sample();
        let text = doc.render();
        let back = Document::parse(&text).unwrap();
        assert_eq!(back, doc);
        assert_eq!(back.render(), text);
    }

    #[test]
    fn checker_accepts_and_derives_verdict() {
        let report = check(&sample());
        assert!(report.is_ok(), "{:?}", report.failures);
        assert_eq!(report.outcomes["global"], "non_member");
        assert_eq!(report.outcomes["local"], "member");
        assert_eq!(sample().exit_code(), 0);
    }

    #[test]
    fn checker_rejects_tampering() {
        let mut doc = sample();
        let s = doc.sections.iter_mut().find(|s| s.name == "local").unwrap();
        s.fields.iter_mut().find(|(k, _)| k == "witness").unwrap().1 = "[3]".into();
        assert!(!check(&doc).is_ok());

        let mut doc = sample();
        let v = doc
            .sections
            .iter_mut()
            .find(|s| s.name == "verdict")
            .unwrap();
        v.fields[0].1 = "hypotheses_failed".into();
        assert!(!check(&doc).is_ok());
    }

    #[test]
    fn smith_and_forms_sections() {
        let m: IntMatrix = "2 2\n2 4\n6 8".parse().unwrap();
        let s = smith_normal_form(&m);
        let f = QuadForm::new(1, 0, 5).unwrap();
        let g = FgAbelianGroup::cyclic(2);
        let h = QuadForm::new(2, 2, 3).unwrap();
        let table = [(&f, &g.zero()), (&h, &g.generator(0))];
        let mut doc = Document::new("demo");
        doc.push(smith_section("snf", &m, &s));
        doc.push(forms_section(
            "forms",
            -20,
            &g,
            table.iter().map(|(a, b)| (*a, *b)),
        ));
        doc.push(Section::new("verdict").field("verdict", "ok"));
        let back = Document::parse(&doc.render()).unwrap();
        let report = check(&back);
        assert!(report.is_ok(), "{:?}", report.failures);
        assert_eq!(report.checked(), 2);
    }

    #[test]
    fn parse_errors() {
        assert!(Document::parse("subcommand = x\n").is_err());
        assert!(Document::parse("schema_version = 9\nsubcommand = x\n").is_err());
        assert!(Document::parse("schema_version = 1\nsubcommand = x\n[a]\nnonsense\n").is_err());
        assert!(Document::parse("schema_version = 1\nsubcommand = x\n[a]\n[a]\n").is_err());
    }

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code_for("counterexample_verified"), 0);
        assert_eq!(exit_code_for("hypotheses_failed"), 1);
        assert_eq!(exit_code_for("paper_claim_mismatch"), 2);
        assert_eq!(exit_code_for("???"), 3);
    }

    #[test]
    fn decode_vectors() {
        assert_eq!(decode::vectors("[]").unwrap(), Vec::<Vec<BigInt>>::new());
        assert_eq!(decode::vectors("[[], []]").unwrap().len(), 2);
        let m = decode::matrix("[[1, -2], [3, 4]]", 2, 2).unwrap();
        assert_eq!(encode::matrix(&m), "[[1, -2], [3, 4]]");
        assert_eq!(decode::matrix("[]", 0, 3).unwrap().cols(), 3);
    }
}

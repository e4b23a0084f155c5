//! Class groups of imaginary quadratic orders `Z[√d]` through reduced binary
//! quadratic forms of discriminant `4d`.
//!
//! Only `d < 0` squarefree with `d ≡ 2, 3 (mod 4)` is accepted, so the order
//! is the full ring of integers and `4d` is a fundamental discriminant. The
//! ideal `(p, b + √d)` corresponds to the form `(p, 2b, (b² − d)/p)`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::abelian::{decompose_finite, FgAbelianGroup, GroupElement};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QuadOrder {
    d: i64,
}

impl QuadOrder {
    pub fn new(d: i64) -> Result<Self> {
        if d >= 0 {
            return Err(Error::InvalidOrder(format!("d = {d} must be negative")));
        }
        if !matches!(d.rem_euclid(4), 2 | 3) {
            return Err(Error::InvalidOrder(format!("d = {d} must be 2 or 3 mod 4")));
        }
        if !is_squarefree(d.unsigned_abs()) {
            return Err(Error::InvalidOrder(format!("d = {d} is not squarefree")));
        }
        Ok(Self { d })
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn discriminant(&self) -> i64 {
        4 * self.d
    }

    /// `(1, 0, −d)`, the class of principal ideals.
    pub fn principal_form(&self) -> QuadForm {
        QuadForm {
            a: BigInt::one(),
            b: BigInt::zero(),
            c: BigInt::from(-self.d),
        }
    }
}

impl fmt::Display for QuadOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z[sqrt({})]", self.d)
    }
}

/// Positive definite primitive form `ax² + bxy + cy²`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QuadForm {
    a: BigInt,
    b: BigInt,
    c: BigInt,
}

impl QuadForm {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, c: impl Into<BigInt>) -> Result<Self> {
        let (a, b, c) = (a.into(), b.into(), c.into());
        if !a.is_positive() {
            return Err(Error::InvalidForm(format!("a = {a} must be positive")));
        }
        let f = Self { a, b, c };
        if !f.discriminant().is_negative() {
            return Err(Error::InvalidForm(format!("{f} is not positive definite")));
        }
        if !f.a.gcd(&f.b).gcd(&f.c).is_one() {
            return Err(Error::InvalidForm(format!("{f} is not primitive")));
        }
        Ok(f)
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn b(&self) -> &BigInt {
        &self.b
    }

    pub fn c(&self) -> &BigInt {
        &self.c
    }

    pub fn discriminant(&self) -> BigInt {
        &self.b * &self.b - BigInt::from(4) * &self.a * &self.c
    }

    /// `|b| ≤ a ≤ c`, with `b ≥ 0` when `|b| = a` or `a = c`.
    pub fn is_reduced(&self) -> bool {
        let abs_b = self.b.abs();
        abs_b <= self.a
            && self.a <= self.c
            && (!(abs_b == self.a || self.a == self.c) || !self.b.is_negative())
    }

    /// `(a, −b, c)`, the inverse class.
    pub fn inverse(&self) -> QuadForm {
        QuadForm {
            a: self.a.clone(),
            b: -&self.b,
            c: self.c.clone(),
        }
    }

    /// Evaluates the form at `(x, y)`.
    pub fn eval(&self, x: &BigInt, y: &BigInt) -> BigInt {
        &self.a * x * x + &self.b * x * y + &self.c * y * y
    }
}

impl fmt::Display for QuadForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

/// Moves `b` into `(−a, a]` by `x ↦ x + ky`.
fn normalize(f: &mut QuadForm, disc: &BigInt) {
    let two_a = &f.a * 2;
    let mut r = f.b.mod_floor(&two_a);
    if r > f.a {
        r -= &two_a;
    }
    if r != f.b {
        f.c = (&r * &r - disc) / (&f.a * 4);
        f.b = r;
    }
}

/// Reduced form properly equivalent to `f`.
pub fn reduce(f: &QuadForm) -> QuadForm {
    let disc = f.discriminant();
    let mut g = f.clone();
    loop {
        normalize(&mut g, &disc);
        if g.a > g.c {
            std::mem::swap(&mut g.a, &mut g.c);
            g.b = -std::mem::take(&mut g.b);
        } else {
            break;
        }
    }
    if g.a == g.c && g.b.is_negative() {
        g.b = -std::mem::take(&mut g.b);
    }
    debug_assert!(g.is_reduced());
    g
}

/// All primitive reduced forms of discriminant `4d`, sorted by `(a, b, c)`.
pub fn enumerate_reduced(order: &QuadOrder) -> Vec<QuadForm> {
    let disc = order.discriminant();
    let bound = disc.unsigned_abs() / 3;
    let mut out = Vec::new();
    let mut a: i64 = 1;
    while (a as u64) * (a as u64) <= bound {
        for b in -a..=a {
            let num = b * b - disc;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            if let Ok(f) = QuadForm::new(a, b, c) {
                if f.is_reduced() {
                    out.push(f);
                }
            }
        }
        a += 1;
    }
    out.sort();
    out
}

/// Dirichlet composition through a united pair, followed by reduction.
pub fn compose(f: &QuadForm, g: &QuadForm) -> Result<QuadForm> {
    let disc = f.discriminant();
    if disc != g.discriminant() {
        return Err(Error::DiscriminantMismatch);
    }
    let (f1, f2) = if f.a > g.a { (g, f) } else { (f, g) };
    let s: BigInt = (&f1.b + &f2.b) / 2;
    let n = &f2.b - &s;

    let (y1, d) = if f2.a.is_multiple_of(&f1.a) {
        (BigInt::zero(), f1.a.clone())
    } else {
        let e = f2.a.extended_gcd(&f1.a);
        (e.x, e.gcd)
    };
    let (x2, y2, d1) = if s.is_multiple_of(&d) {
        (BigInt::zero(), BigInt::from(-1), d)
    } else {
        let e = s.extended_gcd(&d);
        (e.x, -e.y, e.gcd)
    };

    let v1 = &f1.a / &d1;
    let v2 = &f2.a / &d1;
    let r = (&y1 * &y2 * &n - &x2 * &f2.c).mod_floor(&v1);
    let a3 = &v1 * &v2;
    let b3 = &f2.b + &v2 * &r * 2;
    let num: BigInt = &b3 * &b3 - &disc;
    let four_a3 = &a3 * 4;
    debug_assert!(num.is_multiple_of(&four_a3));
    let c3 = num / four_a3;
    Ok(reduce(&QuadForm {
        a: a3,
        b: b3,
        c: c3,
    }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PrimeKind {
    Split,
    Inert,
    Ramified,
}

impl PrimeKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            PrimeKind::Split => "split",
            PrimeKind::Inert => "inert",
            PrimeKind::Ramified => "ramified",
        }
    }
}

/// How a rational prime decomposes in `Z[√d]`, with the prime ideal
/// `(p, ±b + √d)` when it is not inert.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PrimeIdealFactor {
    pub p: u64,
    pub kind: PrimeKind,
    /// Least `b ≥ 0` with `b² ≡ d (mod p)`; `None` when inert.
    pub b: Option<u64>,
    /// Selects `(p, −b + √d)` instead of `(p, b + √d)`.
    pub conjugate: bool,
}

impl PrimeIdealFactor {
    pub fn conjugate(&self) -> Self {
        Self {
            conjugate: !self.conjugate,
            ..self.clone()
        }
    }

    /// Signed `b` of the chosen ideal.
    pub fn signed_b(&self) -> Option<i64> {
        self.b.map(|b| {
            if self.conjugate {
                -(b as i64)
            } else {
                b as i64
            }
        })
    }
}

impl fmt::Display for PrimeIdealFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.signed_b() {
            None => write!(f, "({})", self.p),
            Some(b) => write!(f, "({}, {} + sqrt(d))", self.p, b),
        }
    }
}

pub fn factor_prime(order: &QuadOrder, p: u64) -> Result<PrimeIdealFactor> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let d = order.d().rem_euclid(p as i64) as u64;
    let root = (0..p).find(|&b| (b * b) % p == d);
    let kind = if p == 2 || d == 0 {
        PrimeKind::Ramified
    } else if root.is_some() {
        PrimeKind::Split
    } else {
        PrimeKind::Inert
    };
    Ok(PrimeIdealFactor {
        p,
        kind,
        b: if kind == PrimeKind::Inert { None } else { root },
        conjugate: false,
    })
}

/// Class group with the bijection between reduced forms and group elements.
#[derive(Clone, Debug)]
pub struct ClassGroup {
    order: QuadOrder,
    group: FgAbelianGroup,
    forms: Vec<QuadForm>,
    to_element: BTreeMap<QuadForm, GroupElement>,
    to_form: BTreeMap<GroupElement, QuadForm>,
}

impl ClassGroup {
    pub fn order(&self) -> &QuadOrder {
        &self.order
    }

    pub fn group(&self) -> &FgAbelianGroup {
        &self.group
    }

    /// Reduced forms in `(a, b, c)` order.
    pub fn forms(&self) -> &[QuadForm] {
        &self.forms
    }

    pub fn class_number(&self) -> usize {
        self.forms.len()
    }

    /// Group element of the class of `f`.
    pub fn element_of(&self, f: &QuadForm) -> Result<GroupElement> {
        if f.discriminant() != BigInt::from(self.order.discriminant()) {
            return Err(Error::DiscriminantMismatch);
        }
        Ok(self.to_element[&reduce(f)].clone())
    }

    pub fn form_of(&self, x: &GroupElement) -> Option<&QuadForm> {
        self.to_form.get(x)
    }

    /// `(form, element)` pairs in form order.
    pub fn table(&self) -> impl Iterator<Item = (&QuadForm, &GroupElement)> {
        self.forms.iter().map(|f| (f, &self.to_element[f]))
    }
}

/// Class group structure read off the composition table of reduced forms.
pub fn class_group(order: &QuadOrder) -> ClassGroup {
    let forms = enumerate_reduced(order);
    let principal = order.principal_form();
    let (group, to_element) = decompose_finite(&forms, &principal, |f, g| {
        compose(f, g).expect("forms share the discriminant")
    })
    .expect("reduced forms under composition form a finite abelian group");
    let to_form = to_element
        .iter()
        .map(|(f, e)| (e.clone(), f.clone()))
        .collect();
    ClassGroup {
        order: *order,
        group,
        forms,
        to_element,
        to_form,
    }
}

/// Form `(p, 2b, (b² − d)/p)` of the ideal `(p, b + √d)`, unreduced.
pub fn prime_form(order: &QuadOrder, f: &PrimeIdealFactor) -> Result<QuadForm> {
    let b = f.signed_b().ok_or(Error::InertPrime(f.p))?;
    QuadForm::new(f.p, 2 * b, (b * b - order.d()) / f.p as i64)
}

/// Class of the prime ideal `(p, ±b + √d)`.
pub fn class_of_prime(cg: &ClassGroup, f: &PrimeIdealFactor) -> Result<GroupElement> {
    cg.element_of(&prime_form(&cg.order, f)?)
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut k = 2u64;
    while k * k <= n {
        if n.is_multiple_of(k) {
            return false;
        }
        k += 1;
    }
    true
}

fn is_squarefree(n: u64) -> bool {
    let mut k = 2u64;
    while k * k <= n {
        if n.is_multiple_of(k * k) {
            return false;
        }
        k += 1;
    }
    true
}

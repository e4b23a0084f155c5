//! Point groups of short Weierstrass curves `y² = x³ + ax + b` over `F_p`,
//! `3 < p ≤ 10⁴`, by exhaustive enumeration.
//!
//! These stand in for `Pic⁰(E)`; a point `P` has Picard class
//! `(1, log P) ∈ Z ⊕ E(F_p)` with the point at infinity as base point.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::abelian::{decompose_finite, FgAbelianGroup, GroupElement};
use crate::quadforms::is_prime;
use crate::{Error, Result};

pub const MAX_FIELD_SIZE: u64 = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Curve {
    p: u64,
    a: u64,
    b: u64,
}

impl Curve {
    /// Coefficients are reduced mod `p`.
    pub fn new(p: u64, a: i64, b: i64) -> Result<Self> {
        if p <= 3 || p > MAX_FIELD_SIZE || !is_prime(p) {
            return Err(Error::InvalidCurve(format!(
                "modulus {p} must be a prime in (3, {MAX_FIELD_SIZE}]"
            )));
        }
        let a = a.rem_euclid(p as i64) as u64;
        let b = b.rem_euclid(p as i64) as u64;
        let c = Self { p, a, b };
        let disc = (4 * c.pow(a, 3) + 27 * c.mul(b, b)) % p;
        if disc == 0 {
            return Err(Error::InvalidCurve(format!(
                "y^2 = x^3 + {a}x + {b} is singular mod {p}"
            )));
        }
        Ok(c)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    pub fn b(&self) -> u64 {
        self.b
    }

    fn mul(&self, x: u64, y: u64) -> u64 {
        (x * y) % self.p
    }

    fn pow(&self, x: u64, mut e: u64) -> u64 {
        let (mut base, mut acc) = (x % self.p, 1 % self.p);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    fn inv(&self, x: u64) -> u64 {
        self.pow(x, self.p - 2)
    }

    fn rhs(&self, x: u64) -> u64 {
        (self.pow(x, 3) + self.mul(self.a, x) + self.b) % self.p
    }

    pub fn contains(&self, pt: &CurvePoint) -> bool {
        match *pt {
            CurvePoint::Infinity => true,
            CurvePoint::Affine { x, y } => {
                x < self.p && y < self.p && self.mul(y, y) == self.rhs(x)
            }
        }
    }

    pub fn point(&self, x: u64, y: u64) -> Result<CurvePoint> {
        let pt = CurvePoint::Affine { x, y };
        if self.contains(&pt) {
            Ok(pt)
        } else {
            Err(Error::OffCurve(pt.to_string()))
        }
    }

    fn check(&self, pt: &CurvePoint) -> Result<()> {
        if self.contains(pt) {
            Ok(())
        } else {
            Err(Error::OffCurve(pt.to_string()))
        }
    }

    /// Twice the Hasse bound check: `(#E − p − 1)² ≤ 4p`.
    pub fn within_hasse_bound(&self, count: u64) -> bool {
        let t = count as i128 - self.p as i128 - 1;
        t * t <= 4 * self.p as i128
    }
}

impl fmt::Display for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.p, self.a, self.b)
    }
}

impl FromStr for Curve {
    type Err = Error;

    /// `p,a,b`
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(Error::Parse(format!("curve `{s}` is not `p,a,b`")));
        }
        let p = parts[0]
            .parse::<u64>()
            .map_err(|_| Error::Parse(format!("bad modulus `{}`", parts[0])))?;
        let coeff = |t: &str| {
            t.parse::<i64>()
                .map_err(|_| Error::Parse(format!("bad coefficient `{t}`")))
        };
        Curve::new(p, coeff(parts[1])?, coeff(parts[2])?)
    }
}

/// Affine points order after the point at infinity, then by `(x, y)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CurvePoint {
    Infinity,
    Affine { x: u64, y: u64 },
}

impl fmt::Display for CurvePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurvePoint::Infinity => f.write_str("inf"),
            CurvePoint::Affine { x, y } => write!(f, "({x},{y})"),
        }
    }
}

impl FromStr for CurvePoint {
    type Err = Error;

    /// `x,y`, `(x,y)` or `inf`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("inf") || s == "O" {
            return Ok(CurvePoint::Infinity);
        }
        let inner = s.trim_start_matches('(').trim_end_matches(')');
        let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
        if parts.len() != 2 {
            return Err(Error::Parse(format!("point `{s}` is not `x,y`")));
        }
        let coord = |t: &str| {
            t.parse::<u64>()
                .map_err(|_| Error::Parse(format!("bad coordinate `{t}`")))
        };
        Ok(CurvePoint::Affine {
            x: coord(parts[0])?,
            y: coord(parts[1])?,
        })
    }
}

pub fn neg(c: &Curve, pt: &CurvePoint) -> Result<CurvePoint> {
    c.check(pt)?;
    Ok(match *pt {
        CurvePoint::Infinity => CurvePoint::Infinity,
        CurvePoint::Affine { x, y } => CurvePoint::Affine {
            x,
            y: (c.p - y) % c.p,
        },
    })
}

/// Chord-and-tangent addition.
pub fn add(c: &Curve, p1: &CurvePoint, p2: &CurvePoint) -> Result<CurvePoint> {
    c.check(p1)?;
    c.check(p2)?;
    let (x1, y1, x2, y2) = match (*p1, *p2) {
        (CurvePoint::Infinity, q) | (q, CurvePoint::Infinity) => return Ok(q),
        (CurvePoint::Affine { x: x1, y: y1 }, CurvePoint::Affine { x: x2, y: y2 }) => {
            (x1, y1, x2, y2)
        }
    };
    let p = c.p;
    if x1 == x2 && (y1 + y2) % p == 0 {
        return Ok(CurvePoint::Infinity);
    }
    let slope = if x1 == x2 {
        let num = (3 * c.mul(x1, x1) + c.a) % p;
        c.mul(num, c.inv(2 * y1 % p))
    } else {
        let num = (y2 + p - y1) % p;
        c.mul(num, c.inv((x2 + p - x1) % p))
    };
    let x3 = (c.mul(slope, slope) + 2 * p - x1 - x2) % p;
    let y3 = (c.mul(slope, (x1 + p - x3) % p) + p - y1) % p;
    Ok(CurvePoint::Affine { x: x3, y: y3 })
}

/// `k · pt` by double-and-add; negative `k` uses `−pt`.
pub fn multiply(c: &Curve, pt: &CurvePoint, k: i64) -> Result<CurvePoint> {
    let mut base = if k < 0 { neg(c, pt)? } else { *pt };
    c.check(&base)?;
    let mut k = k.unsigned_abs();
    let mut acc = CurvePoint::Infinity;
    while k > 0 {
        if k & 1 == 1 {
            acc = add(c, &acc, &base)?;
        }
        base = add(c, &base, &base)?;
        k >>= 1;
    }
    Ok(acc)
}

/// Every point, infinity first, then affine points by `(x, y)`.
pub fn enumerate_points(c: &Curve) -> Vec<CurvePoint> {
    let mut squares: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
    for y in 0..c.p {
        squares.entry(c.mul(y, y)).or_default().push(y);
    }
    let mut out = vec![CurvePoint::Infinity];
    for x in 0..c.p {
        if let Some(ys) = squares.get(&c.rhs(x)) {
            out.extend(ys.iter().map(|&y| CurvePoint::Affine { x, y }));
        }
    }
    out
}

/// Point group with its canonical structure and discrete-log table.
#[derive(Clone, Debug)]
pub struct CurveGroup {
    curve: Curve,
    points: Vec<CurvePoint>,
    group: FgAbelianGroup,
    log: BTreeMap<CurvePoint, GroupElement>,
    exp: BTreeMap<GroupElement, CurvePoint>,
}

impl CurveGroup {
    pub fn curve(&self) -> &Curve {
        &self.curve
    }

    pub fn points(&self) -> &[CurvePoint] {
        &self.points
    }

    pub fn group(&self) -> &FgAbelianGroup {
        &self.group
    }

    pub fn log(&self, pt: &CurvePoint) -> Result<&GroupElement> {
        self.log
            .get(pt)
            .ok_or_else(|| Error::OffCurve(pt.to_string()))
    }

    pub fn exp(&self, x: &GroupElement) -> Option<&CurvePoint> {
        self.exp.get(x)
    }
}

pub fn group_structure(c: &Curve) -> CurveGroup {
    let points = enumerate_points(c);
    let (group, log) = decompose_finite(&points, &CurvePoint::Infinity, |p1, p2| {
        add(c, p1, p2).expect("enumerated points lie on the curve")
    })
    .expect("points of an elliptic curve form a finite abelian group");
    let exp = log.iter().map(|(pt, e)| (e.clone(), *pt)).collect();
    CurveGroup {
        curve: *c,
        points,
        group,
        log,
        exp,
    }
}

/// Least `n ≥ 1` with `n · pt = ∞`, by repeated addition.
pub fn order_of(cg: &CurveGroup, pt: &CurvePoint) -> Result<u64> {
    cg.curve.check(pt)?;
    let mut acc = *pt;
    let mut n = 1u64;
    while acc != CurvePoint::Infinity {
        acc = add(&cg.curve, &acc, pt)?;
        n += 1;
    }
    debug_assert_eq!(
        cg.log[pt].order().and_then(|o| o.to_u64()),
        Some(n),
        "log table disagrees with brute-force order"
    );
    Ok(n)
}

/// Group element of `pt` as a `BigInt` coordinate vector helper.
pub fn log_coords(cg: &CurveGroup, pt: &CurvePoint) -> Result<Vec<BigInt>> {
    Ok(cg.log(pt)?.coords().to_vec())
}

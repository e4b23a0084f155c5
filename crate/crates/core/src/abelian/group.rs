use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{smith_normal_form, GroupHom, IntMatrix};
use crate::{Error, Result};

/// `Z^free_rank ⊕ Z/d_1 ⊕ … ⊕ Z/d_k` with `d_i | d_{i+1}` and `d_i ≥ 2`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FgAbelianGroup {
    free_rank: usize,
    torsion: Vec<BigInt>,
}

impl FgAbelianGroup {
    pub fn new(free_rank: usize, torsion: Vec<BigInt>) -> Result<Self> {
        if let Some(d) = torsion.iter().find(|d| **d < BigInt::from(2)) {
            return Err(Error::InvalidGroup(format!(
                "invariant factor {d} is below 2"
            )));
        }
        if let Some(w) = torsion.windows(2).find(|w| !w[1].is_multiple_of(&w[0])) {
            return Err(Error::InvalidGroup(format!(
                "{} does not divide {}",
                w[0], w[1]
            )));
        }
        Ok(Self { free_rank, torsion })
    }

    pub fn trivial() -> Self {
        Self {
            free_rank: 0,
            torsion: Vec::new(),
        }
    }

    pub fn free(rank: usize) -> Self {
        Self {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    /// `Z/n`; `n = 1` gives the trivial group and `n = 0` gives `Z`.
    pub fn cyclic(n: u64) -> Self {
        match n {
            0 => Self::free(1),
            1 => Self::trivial(),
            n => Self {
                free_rank: 0,
                torsion: vec![BigInt::from(n)],
            },
        }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    /// Number of canonical generators.
    pub fn ngens(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.ngens() == 0
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Order of the group, `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        self.is_finite().then(|| self.torsion_order())
    }

    /// Order of the torsion subgroup.
    pub fn torsion_order(&self) -> BigInt {
        self.torsion.iter().product()
    }

    /// Modulus of canonical coordinate `i`: zero for free coordinates.
    pub fn modulus(&self, i: usize) -> BigInt {
        if i < self.free_rank {
            BigInt::zero()
        } else {
            self.torsion[i - self.free_rank].clone()
        }
    }

    /// Reduces integer coordinates into canonical form.
    pub fn element<T: Into<BigInt>>(&self, coords: Vec<T>) -> Result<GroupElement> {
        if coords.len() != self.ngens() {
            return Err(Error::Dimension(format!(
                "{} coordinates for a group with {} generators",
                coords.len(),
                self.ngens()
            )));
        }
        Ok(GroupElement::reduced(
            self.clone(),
            coords.into_iter().map(Into::into).collect(),
        ))
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement {
            group: self.clone(),
            coords: vec![BigInt::zero(); self.ngens()],
        }
    }

    /// Canonical generator `i`.
    pub fn generator(&self, i: usize) -> GroupElement {
        let mut coords = vec![BigInt::zero(); self.ngens()];
        coords[i] = BigInt::one();
        GroupElement::reduced(self.clone(), coords)
    }

    pub fn generators(&self) -> Vec<GroupElement> {
        (0..self.ngens()).map(|i| self.generator(i)).collect()
    }

    /// All elements of a finite group in lexicographic coordinate order.
    /// Returns `None` for infinite groups or groups with more than `limit`
    /// elements.
    pub fn elements(&self, limit: usize) -> Option<Vec<GroupElement>> {
        let order = self.order()?.to_usize()?;
        if order > limit {
            return None;
        }
        let moduli: Vec<usize> = self.torsion.iter().map(|d| d.to_usize().unwrap()).collect();
        let mut out = Vec::with_capacity(order);
        let mut digits = vec![0usize; moduli.len()];
        for _ in 0..order {
            out.push(GroupElement {
                group: self.clone(),
                coords: digits.iter().map(|&x| BigInt::from(x)).collect(),
            });
            for i in (0..digits.len()).rev() {
                digits[i] += 1;
                if digits[i] < moduli[i] {
                    break;
                }
                digits[i] = 0;
            }
        }
        Some(out)
    }
}

impl fmt::Display for FgAbelianGroup {
    /// `Z^2 + Z/2 + Z/4`, or `0` for the trivial group.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.free_rank > 0 {
            parts.push(format!("Z^{}", self.free_rank));
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

impl std::str::FromStr for FgAbelianGroup {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "0" {
            return Ok(Self::trivial());
        }
        let mut free = 0usize;
        let mut torsion = Vec::new();
        for part in s.split('+').map(str::trim) {
            if let Some(r) = part.strip_prefix("Z^") {
                free += r
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad free rank `{part}`")))?;
            } else if let Some(d) = part.strip_prefix("Z/") {
                torsion.push(
                    d.parse::<BigInt>()
                        .map_err(|_| Error::Parse(format!("bad invariant factor `{part}`")))?,
                );
            } else {
                return Err(Error::Parse(format!("bad group summand `{part}`")));
            }
        }
        Self::new(free, torsion)
    }
}

/// Element of an [`FgAbelianGroup`] in canonical coordinates.
///
/// Arithmetic operators panic when the operands live in different groups;
/// use the `checked_*` methods when that is not known statically.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupElement {
    group: FgAbelianGroup,
    coords: Vec<BigInt>,
}

impl GroupElement {
    fn reduced(group: FgAbelianGroup, mut coords: Vec<BigInt>) -> Self {
        for (x, d) in coords[group.free_rank..].iter_mut().zip(&group.torsion) {
            *x = x.mod_floor(d);
        }
        Self { group, coords }
    }

    pub fn group(&self) -> &FgAbelianGroup {
        &self.group
    }

    /// Free coordinates followed by torsion coordinates.
    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn free_coords(&self) -> &[BigInt] {
        &self.coords[..self.group.free_rank]
    }

    pub fn torsion_coords(&self) -> &[BigInt] {
        &self.coords[self.group.free_rank..]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn checked_add(&self, other: &GroupElement) -> Result<GroupElement> {
        if self.group != other.group {
            return Err(Error::GroupMismatch);
        }
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Self::reduced(self.group.clone(), coords))
    }

    pub fn checked_sub(&self, other: &GroupElement) -> Result<GroupElement> {
        self.checked_add(&-other)
    }

    pub fn scale(&self, n: &BigInt) -> GroupElement {
        Self::reduced(
            self.group.clone(),
            self.coords.iter().map(|x| x * n).collect(),
        )
    }

    /// Order of the element, `None` when it has infinite order.
    pub fn order(&self) -> Option<BigInt> {
        if self.free_coords().iter().any(|x| !x.is_zero()) {
            return None;
        }
        Some(
            self.torsion_coords()
                .iter()
                .zip(&self.group.torsion)
                .map(|(x, d)| d / x.gcd(d))
                .fold(BigInt::one(), |acc, o| acc.lcm(&o)),
        )
    }
}

impl Add for &GroupElement {
    type Output = GroupElement;
    fn add(self, rhs: &GroupElement) -> GroupElement {
        self.checked_add(rhs)
            .expect("adding elements of different groups")
    }
}

impl Sub for &GroupElement {
    type Output = GroupElement;
    fn sub(self, rhs: &GroupElement) -> GroupElement {
        self.checked_sub(rhs)
            .expect("subtracting elements of different groups")
    }
}

impl Neg for &GroupElement {
    type Output = GroupElement;
    fn neg(self) -> GroupElement {
        GroupElement::reduced(self.group.clone(), self.coords.iter().map(|x| -x).collect())
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<String> = self.coords.iter().map(ToString::to_string).collect();
        write!(f, "({})", c.join(", "))
    }
}

/// Canonical form of `Z^n / ⟨relation rows⟩` together with the coordinate
/// change in both directions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub group: FgAbelianGroup,
    /// `group.ngens() × n`: original coordinates to canonical coordinates.
    pub to_canonical: IntMatrix,
    /// `n × group.ngens()`: column `j` lifts canonical generator `j`.
    pub from_canonical: IntMatrix,
}

/// Canonical form of the abelian group on `generators` generators subject to
/// the rows of `relations`, with the coordinate map from the free group on
/// the original generators.
pub fn canonicalize(
    generators: usize,
    relations: &IntMatrix,
) -> Result<(FgAbelianGroup, GroupHom)> {
    let p = canonicalize_full(generators, relations)?;
    let hom = GroupHom::new(
        FgAbelianGroup::free(generators),
        p.group.clone(),
        p.to_canonical,
    )?;
    Ok((p.group, hom))
}

pub fn canonicalize_full(generators: usize, relations: &IntMatrix) -> Result<Presentation> {
    if relations.cols() != generators {
        return Err(Error::Dimension(format!(
            "relations have {} columns for {generators} generators",
            relations.cols()
        )));
    }
    let snf = smith_normal_form(relations);
    let diag = snf.diagonal();
    let entry = |j: usize| diag.get(j).cloned().unwrap_or_else(BigInt::zero);

    let free: Vec<usize> = (0..generators).filter(|&j| entry(j).is_zero()).collect();
    let tors: Vec<usize> = (0..generators)
        .filter(|&j| {
            let d = entry(j);
            d.is_positive() && !d.is_one()
        })
        .collect();
    let kept: Vec<usize> = free.iter().chain(&tors).copied().collect();

    let group = FgAbelianGroup::new(free.len(), tors.iter().map(|&j| entry(j)).collect())?;
    let mut to_canonical = snf.v.transpose().select_rows(&kept);
    for (r, d) in (free.len()..kept.len()).zip(group.torsion()) {
        for c in 0..generators {
            let x = to_canonical.get(r, c).mod_floor(d);
            to_canonical.set(r, c, x);
        }
    }
    let from_canonical = snf.v_inv.select_rows(&kept).transpose();
    Ok(Presentation {
        group,
        to_canonical,
        from_canonical,
    })
}

/// `a ⊕ b` in canonical form.
pub fn direct_sum(a: &FgAbelianGroup, b: &FgAbelianGroup) -> FgAbelianGroup {
    direct_sum_with_maps(&[a, b]).group
}

/// Canonical direct sum with its structure maps.
#[derive(Clone, Debug)]
pub struct DirectSum {
    pub group: FgAbelianGroup,
    pub injections: Vec<GroupHom>,
    pub projections: Vec<GroupHom>,
}

pub fn direct_sum_with_maps(summands: &[&FgAbelianGroup]) -> DirectSum {
    let n: usize = summands.iter().map(|g| g.ngens()).sum();
    let mut rows = Vec::new();
    let mut offset = 0;
    for g in summands {
        for (t, d) in g.torsion().iter().enumerate() {
            let mut row = vec![BigInt::zero(); n];
            row[offset + g.free_rank() + t] = d.clone();
            rows.push(row);
        }
        offset += g.ngens();
    }
    let rel = IntMatrix::from_rows(n, &rows).expect("rows built with n columns");
    let p = canonicalize_full(n, &rel).expect("relation matrix has n columns");

    let mut injections = Vec::with_capacity(summands.len());
    let mut projections = Vec::with_capacity(summands.len());
    let mut offset = 0;
    for g in summands {
        let block: Vec<usize> = (offset..offset + g.ngens()).collect();
        let inj = p.to_canonical.transpose().select_rows(&block).transpose();
        let proj = p.from_canonical.select_rows(&block);
        injections.push(
            GroupHom::new((*g).clone(), p.group.clone(), inj).expect("injection is well defined"),
        );
        projections.push(
            GroupHom::new(p.group.clone(), (*g).clone(), proj).expect("projection is well defined"),
        );
        offset += g.ngens();
    }
    DirectSum {
        group: p.group,
        injections,
        projections,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    fn group(free: usize, torsion: &[i64]) -> FgAbelianGroup {
        FgAbelianGroup::new(free, torsion.iter().map(|&d| b(d)).collect()).unwrap()
    }

    #[test]
    fn rejects_broken_chains() {
        assert!(FgAbelianGroup::new(0, vec![b(2), b(3)]).is_err());
        assert!(FgAbelianGroup::new(0, vec![b(1)]).is_err());
        assert!(FgAbelianGroup::new(1, vec![b(2), b(6)]).is_ok());
    }

    #[test]
    fn canonicalize_free_group() {
        let (g, _) = canonicalize(2, &IntMatrix::zeros(0, 2)).unwrap();
        assert_eq!(g, FgAbelianGroup::free(2));
    }

    #[test]
    fn canonicalize_direct_reading() {
        let rel = IntMatrix::from_rows(2, &[vec![2, 0], vec![0, 2]]).unwrap();
        assert_eq!(canonicalize(2, &rel).unwrap().0, group(0, &[2, 2]));
    }

    #[test]
    fn canonicalize_matches_snf() {
        let rel = IntMatrix::from_rows(2, &[vec![2, 4], vec![6, 8]]).unwrap();
        assert_eq!(canonicalize(2, &rel).unwrap().0, group(0, &[2, 4]));
    }

    #[test]
    fn canonicalize_drops_units_and_orders_free_first() {
        // Z^3 / <(1,1,0), (0,3,0)>: e1 = -e0, 3e0 = 0, e2 free.
        let rel = IntMatrix::from_rows(3, &[vec![1, 1, 0], vec![0, 3, 0]]).unwrap();
        let p = canonicalize_full(3, &rel).unwrap();
        assert_eq!(p.group, group(1, &[3]));
        // to_canonical kills the relations.
        for i in 0..rel.rows() {
            let img = p.to_canonical.mul_vec(rel.row(i)).unwrap();
            assert!(p.group.element(img).unwrap().is_zero());
        }
        // from_canonical followed by to_canonical is the identity on classes.
        let round = p.to_canonical.mul(&p.from_canonical).unwrap();
        for j in 0..p.group.ngens() {
            assert_eq!(
                p.group.element(round.column(j)).unwrap(),
                p.group.generator(j)
            );
        }
    }

    #[test]
    fn canonicalize_is_idempotent() {
        for g in [
            group(0, &[]),
            group(2, &[]),
            group(1, &[2]),
            group(2, &[2, 4, 12]),
        ] {
            let n = g.ngens();
            let rows: Vec<Vec<BigInt>> = g
                .torsion()
                .iter()
                .enumerate()
                .map(|(t, d)| {
                    let mut r = vec![BigInt::zero(); n];
                    r[g.free_rank() + t] = d.clone();
                    r
                })
                .collect();
            let p = canonicalize_full(n, &IntMatrix::from_rows(n, &rows).unwrap()).unwrap();
            assert_eq!(p.group, g);
            // The coordinate change is an automorphism of g.
            let there = GroupHom::new(g.clone(), g.clone(), p.to_canonical.clone()).unwrap();
            let back = GroupHom::new(g.clone(), g.clone(), p.from_canonical.clone()).unwrap();
            assert_eq!(there.then(&back).unwrap(), GroupHom::identity(g.clone()));
            assert_eq!(back.then(&there).unwrap(), GroupHom::identity(g.clone()));
        }
    }

    #[test]
    fn direct_sum_examples() {
        assert_eq!(
            direct_sum(&group(1, &[]), &FgAbelianGroup::trivial()),
            group(1, &[])
        );
        assert_eq!(
            direct_sum(&group(0, &[2]), &group(0, &[2])),
            group(0, &[2, 2])
        );
        assert_eq!(
            direct_sum(&group(0, &[2]), &group(0, &[4])),
            group(0, &[2, 4])
        );
        assert_eq!(direct_sum(&group(0, &[2]), &group(0, &[3])), group(0, &[6]));
        assert_eq!(
            direct_sum(&group(0, &[4]), &group(1, &[6])),
            group(1, &[2, 12])
        );
    }

    #[test]
    fn direct_sum_maps_split() {
        let a = group(1, &[2]);
        let c = group(0, &[3]);
        let s = direct_sum_with_maps(&[&a, &c]);
        for (k, g) in [&a, &c].into_iter().enumerate() {
            for x in g.generators() {
                let y = s.injections[k].apply(&x).unwrap();
                assert_eq!(s.projections[k].apply(&y).unwrap(), x);
                assert!(s.projections[1 - k].apply(&y).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn element_reduction_and_order() {
        let g = group(1, &[2, 4]);
        let x = g.element(vec![3, 5, -1]).unwrap();
        assert_eq!(x.coords(), &[b(3), b(1), b(3)]);
        assert_eq!(x.order(), None);
        let t = g.element(vec![0, 1, 2]).unwrap();
        assert_eq!(t.order(), Some(b(2)));
        assert!((&t + &t).is_zero());
        assert!(g.element(vec![1, 2]).is_err());
    }

    #[test]
    fn display_and_parse_roundtrip() {
        for g in [group(0, &[]), group(3, &[]), group(1, &[2, 4])] {
            assert_eq!(g.to_string().parse::<FgAbelianGroup>().unwrap(), g);
        }
        assert_eq!(group(1, &[2, 2]).to_string(), "Z^1 + Z/2 + Z/2");
    }

    #[test]
    fn enumerates_finite_elements() {
        let g = group(0, &[2, 4]);
        let all = g.elements(64).unwrap();
        assert_eq!(all.len(), 8);
        assert!(group(1, &[]).elements(64).is_none());
        assert!(g.elements(4).is_none());
    }
}

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::{canonicalize_full, smith_normal_form, FgAbelianGroup, GroupElement, IntMatrix};
use crate::{Error, Result};

/// Homomorphism between canonical groups. Column `j` of the matrix is the
/// image of source generator `j` in target coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHom {
    source: FgAbelianGroup,
    target: FgAbelianGroup,
    matrix: IntMatrix,
}

impl GroupHom {
    /// Checks shape and well-definedness: for every source torsion generator
    /// of order `d`, `d` times its image vanishes in the target.
    pub fn new(source: FgAbelianGroup, target: FgAbelianGroup, matrix: IntMatrix) -> Result<Self> {
        if matrix.rows() != target.ngens() || matrix.cols() != source.ngens() {
            return Err(Error::Dimension(format!(
                "{}x{} matrix for a map from {} generators to {}",
                matrix.rows(),
                matrix.cols(),
                source.ngens(),
                target.ngens()
            )));
        }
        for (t, d) in source.torsion().iter().enumerate() {
            let j = source.free_rank() + t;
            let img = target.element(matrix.column(j))?;
            if !img.scale(d).is_zero() {
                return Err(Error::IllDefinedHom(format!(
                    "generator {j} has order {d} but its image {img} does not"
                )));
            }
        }
        let mut matrix = matrix;
        for (t, d) in target.torsion().iter().enumerate() {
            let i = target.free_rank() + t;
            for j in 0..matrix.cols() {
                let x = matrix.get(i, j).mod_floor(d);
                matrix.set(i, j, x);
            }
        }
        Ok(Self {
            source,
            target,
            matrix,
        })
    }

    pub fn zero(source: FgAbelianGroup, target: FgAbelianGroup) -> Self {
        let matrix = IntMatrix::zeros(target.ngens(), source.ngens());
        Self {
            source,
            target,
            matrix,
        }
    }

    pub fn identity(group: FgAbelianGroup) -> Self {
        let matrix = IntMatrix::identity(group.ngens());
        Self {
            source: group.clone(),
            target: group,
            matrix,
        }
    }

    pub fn source(&self) -> &FgAbelianGroup {
        &self.source
    }

    pub fn target(&self) -> &FgAbelianGroup {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn apply(&self, x: &GroupElement) -> Result<GroupElement> {
        if x.group() != &self.source {
            return Err(Error::GroupMismatch);
        }
        self.target.element(self.matrix.mul_vec(x.coords())?)
    }

    /// `other ∘ self`
    pub fn then(&self, other: &GroupHom) -> Result<GroupHom> {
        if self.target != other.source {
            return Err(Error::GroupMismatch);
        }
        GroupHom::new(
            self.source.clone(),
            other.target.clone(),
            other.matrix.mul(&self.matrix)?,
        )
    }

    /// Pointwise sum of two maps with the same source and target.
    pub fn sum(&self, other: &GroupHom) -> Result<GroupHom> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::GroupMismatch);
        }
        let entries = self
            .matrix
            .entries()
            .iter()
            .zip(other.matrix.entries())
            .map(|(a, b)| a + b)
            .collect();
        let m = IntMatrix::new(self.matrix.rows(), self.matrix.cols(), entries)?;
        GroupHom::new(self.source.clone(), self.target.clone(), m)
    }
}

/// Subgroup of `ambient` generated by the listed elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    ambient: FgAbelianGroup,
    generators: Vec<GroupElement>,
}

impl Subgroup {
    pub fn new(ambient: FgAbelianGroup, generators: Vec<GroupElement>) -> Result<Self> {
        if generators.iter().any(|g| g.group() != &ambient) {
            return Err(Error::GroupMismatch);
        }
        Ok(Self {
            ambient,
            generators,
        })
    }

    pub fn trivial(ambient: FgAbelianGroup) -> Self {
        Self {
            ambient,
            generators: Vec::new(),
        }
    }

    pub fn whole(ambient: FgAbelianGroup) -> Self {
        let generators = ambient.generators();
        Self {
            ambient,
            generators,
        }
    }

    pub fn ambient(&self) -> &FgAbelianGroup {
        &self.ambient
    }

    pub fn generators(&self) -> &[GroupElement] {
        &self.generators
    }

    /// Mutual containment of generators.
    pub fn same_as(&self, other: &Subgroup) -> Result<bool> {
        for g in &other.generators {
            if !membership(self, g)?.is_member() {
                return Ok(false);
            }
        }
        for g in &self.generators {
            if !membership(other, g)?.is_member() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Outcome of a membership query, with data a third party can re-check
/// using group arithmetic alone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MembershipResult {
    /// `Σ witness[j] · generators[j]` equals the queried element.
    Member { witness: Vec<BigInt> },
    /// `projection` is a homomorphism to `quotient` that kills every
    /// generator and sends the queried element to the nonzero `residue`.
    NonMember {
        quotient: FgAbelianGroup,
        projection: GroupHom,
        residue: GroupElement,
    },
}

impl MembershipResult {
    pub fn is_member(&self) -> bool {
        matches!(self, MembershipResult::Member { .. })
    }

    pub fn verdict(&self) -> &'static str {
        if self.is_member() {
            "member"
        } else {
            "non_member"
        }
    }

    /// Re-checks the witness or residue against `s` and `g` without any
    /// normal-form computation.
    pub fn verify(&self, s: &Subgroup, g: &GroupElement) -> bool {
        if g.group() != s.ambient() {
            return false;
        }
        match self {
            MembershipResult::Member { witness } => {
                if witness.len() != s.generators.len() {
                    return false;
                }
                let sum = s
                    .generators
                    .iter()
                    .zip(witness)
                    .fold(s.ambient.zero(), |acc, (x, c)| &acc + &x.scale(c));
                &sum == g
            }
            MembershipResult::NonMember {
                quotient,
                projection,
                residue,
            } => {
                projection.source() == s.ambient()
                    && projection.target() == quotient
                    && residue.group() == quotient
                    && !residue.is_zero()
                    && s.generators
                        .iter()
                        .all(|x| projection.apply(x).map(|y| y.is_zero()).unwrap_or(false))
                    && projection.apply(g).map(|y| &y == residue).unwrap_or(false)
            }
        }
    }
}

/// Subgroup generated by the images of the source generators.
pub fn image(h: &GroupHom) -> Subgroup {
    let generators = (0..h.source.ngens())
        .map(|j| {
            h.target
                .element(h.matrix.column(j))
                .expect("column length matches target")
        })
        .collect();
    Subgroup {
        ambient: h.target.clone(),
        generators,
    }
}

/// `n · G`, generated by `n` times each canonical generator; generators that
/// vanish are dropped.
pub fn scale_subgroup(g: &FgAbelianGroup, n: u64) -> Subgroup {
    let n = BigInt::from(n);
    let generators = g
        .generators()
        .into_iter()
        .map(|x| x.scale(&n))
        .filter(|x| !x.is_zero())
        .collect();
    Subgroup {
        ambient: g.clone(),
        generators,
    }
}

/// Canonical quotient `G / S` with projection and a lift of its generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quotient {
    pub group: FgAbelianGroup,
    pub projection: GroupHom,
    /// `G.ngens() × group.ngens()`: column `j` is a preimage of generator `j`.
    pub lift: IntMatrix,
}

impl Quotient {
    pub fn lift(&self, x: &GroupElement) -> Result<GroupElement> {
        if x.group() != &self.group {
            return Err(Error::GroupMismatch);
        }
        self.projection
            .source()
            .element(self.lift.mul_vec(x.coords())?)
    }
}

pub fn quotient(g: &FgAbelianGroup, s: &Subgroup) -> Result<(FgAbelianGroup, GroupHom)> {
    let q = quotient_full(g, s)?;
    Ok((q.group, q.projection))
}

pub fn quotient_full(g: &FgAbelianGroup, s: &Subgroup) -> Result<Quotient> {
    if s.ambient() != g {
        return Err(Error::GroupMismatch);
    }
    let n = g.ngens();
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    for (t, d) in g.torsion().iter().enumerate() {
        let mut row = vec![BigInt::zero(); n];
        row[g.free_rank() + t] = d.clone();
        rows.push(row);
    }
    rows.extend(s.generators.iter().map(|x| x.coords().to_vec()));
    let p = canonicalize_full(n, &IntMatrix::from_rows(n, &rows)?)?;
    let projection = GroupHom::new(g.clone(), p.group.clone(), p.to_canonical)?;
    Ok(Quotient {
        group: p.group,
        projection,
        lift: p.from_canonical,
    })
}

/// Decides `g ∈ s` exactly over the integers, respecting torsion.
pub fn membership(s: &Subgroup, g: &GroupElement) -> Result<MembershipResult> {
    if g.group() != s.ambient() {
        return Err(Error::GroupMismatch);
    }
    let amb = s.ambient();
    let n = amb.ngens();
    let k = s.generators.len();

    // Columns: subgroup generators, then the torsion relations d_i e_i.
    let mut columns: Vec<Vec<BigInt>> = s.generators.iter().map(|x| x.coords().to_vec()).collect();
    for (t, d) in amb.torsion().iter().enumerate() {
        let mut col = vec![BigInt::zero(); n];
        col[amb.free_rank() + t] = d.clone();
        columns.push(col);
    }
    let a = IntMatrix::from_columns(n, &columns)?;
    let snf = smith_normal_form(&a);
    let w = snf.u.mul_vec(g.coords())?;
    let diag = snf.diagonal();

    let mut y = vec![BigInt::zero(); a.cols()];
    let mut solvable = true;
    for (i, wi) in w.iter().enumerate() {
        match diag.get(i) {
            Some(d) if !d.is_zero() => {
                let (q, r) = wi.div_rem(d);
                if !r.is_zero() {
                    solvable = false;
                    break;
                }
                y[i] = q;
            }
            _ => {
                if !wi.is_zero() {
                    solvable = false;
                    break;
                }
            }
        }
    }

    if solvable {
        let z = snf.v.mul_vec(&y)?;
        let result = MembershipResult::Member {
            witness: z[..k].to_vec(),
        };
        debug_assert!(result.verify(s, g));
        return Ok(result);
    }

    let q = quotient_full(amb, s)?;
    let residue = q.projection.apply(g)?;
    debug_assert!(!residue.is_zero());
    Ok(MembershipResult::NonMember {
        quotient: q.group,
        projection: q.projection,
        residue,
    })
}

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{canonicalize_full, FgAbelianGroup, GroupElement, IntMatrix};
use crate::{Error, Result};

/// Structure of a finite abelian group given by its element list and
/// operation, together with the coordinates of every element.
///
/// Generators are picked greedily in list order. Each new generator `g`
/// contributes the relation `k·g = h` where `k` is its order modulo the
/// subgroup `H` built so far and `h ∈ H`; the resulting triangular
/// presentation has order `|G|` and is canonicalized by Smith normal form.
pub fn decompose_finite<T, F>(
    elements: &[T],
    identity: &T,
    op: F,
) -> Result<(FgAbelianGroup, BTreeMap<T, GroupElement>)>
where
    T: Ord + Clone,
    F: Fn(&T, &T) -> T,
{
    let universe: std::collections::BTreeSet<&T> = elements.iter().collect();
    if !universe.contains(identity) {
        return Err(Error::NotAGroup(
            "identity missing from element list".into(),
        ));
    }
    let closed = |x: &T| -> Result<()> {
        if universe.contains(x) {
            Ok(())
        } else {
            Err(Error::NotAGroup("operation leaves the element list".into()))
        }
    };

    // Coordinates of the subgroup generated so far, in terms of chosen gens.
    let mut span: BTreeMap<T, Vec<i64>> = BTreeMap::new();
    span.insert(identity.clone(), Vec::new());
    let mut relations: Vec<Vec<i64>> = Vec::new();

    for g in elements {
        if span.len() == universe.len() {
            break;
        }
        if span.contains_key(g) {
            continue;
        }
        let idx = relations.len();
        let mut k = 1i64;
        let mut cur = g.clone();
        while !span.contains_key(&cur) {
            cur = op(&cur, g);
            closed(&cur)?;
            k += 1;
            if k as usize > universe.len() {
                return Err(Error::NotAGroup("element of unbounded order".into()));
            }
        }
        let mut rel: Vec<i64> = span[&cur].iter().map(|c| -c).collect();
        rel.push(k);
        relations.push(rel);

        let mut next: BTreeMap<T, Vec<i64>> = BTreeMap::new();
        for (h, coords) in &span {
            let mut x = h.clone();
            for j in 0..k {
                let mut c = coords.clone();
                c.resize(idx, 0);
                c.push(j);
                if next.insert(x.clone(), c).is_some() {
                    return Err(Error::NotAGroup("cosets overlap".into()));
                }
                x = op(&x, g);
                closed(&x)?;
            }
        }
        span = next;
    }
    if span.len() != universe.len() || universe.len() != elements.len() {
        return Err(Error::NotAGroup(
            "element list is not spanned or has duplicates".into(),
        ));
    }

    let n = relations.len();
    let rows: Vec<Vec<i64>> = relations
        .into_iter()
        .map(|mut r| {
            r.resize(n, 0);
            r
        })
        .collect();
    let p = canonicalize_full(n, &IntMatrix::from_rows(n, &rows)?)?;
    let mut table = BTreeMap::new();
    for (x, mut c) in span {
        c.resize(n, 0);
        let coords: Vec<BigInt> = c.into_iter().map(BigInt::from).collect();
        let e = p.group.element(p.to_canonical.mul_vec(&coords)?)?;
        table.insert(x, e);
    }
    debug_assert!(table
        .get(identity)
        .is_some_and(|e| e.coords().iter().all(Zero::is_zero)));
    Ok((p.group, table))
}

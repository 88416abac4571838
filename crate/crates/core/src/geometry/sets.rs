use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::field::FieldElem;

use super::{Hyperplane, Space, Vector};

/// A finite set `E ⊂ F_q^d`, kept sorted and free of duplicates.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PointSet {
    dim: usize,
    points: Vec<Vector>,
}

impl PointSet {
    pub fn new(space: &Space<'_>, points: impl IntoIterator<Item = Vector>) -> Result<Self> {
        let mut points: Vec<Vector> = points.into_iter().collect();
        for x in &points {
            space.check(x)?;
        }
        points.sort();
        points.dedup();
        Ok(Self { dim: space.dim(), points })
    }

    pub fn full(space: &Space<'_>) -> Self {
        Self {
            dim: space.dim(),
            points: space.points().collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Vector] {
        &self.points
    }

    pub fn contains(&self, x: &Vector) -> bool {
        self.points.binary_search(x).is_ok()
    }
}

/// A finite set of parameter pairs `(v, t)` with `‖v‖ ∈ {1, γ}`.
///
/// Pairs are stored, not geometric planes: `(v, t)` and `(-v, -t)` describe the
/// same plane and may both be present. [`PlaneSet::geometric_dedup`] collapses
/// them when that is wanted.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PlaneSet {
    dim: usize,
    planes: Vec<Hyperplane>,
}

impl PlaneSet {
    pub fn new(space: &Space<'_>, pairs: impl IntoIterator<Item = (Vector, FieldElem)>) -> Result<Self> {
        let f = space.field();
        let mut planes = Vec::new();
        for (v, t) in pairs {
            let h = space.hyperplane(v, t)?;
            if h.is_degenerate() {
                return Err(Error::DegeneratePlane);
            }
            if h.norm_v != f.one() && h.norm_v != f.gamma() {
                return Err(Error::NonCanonicalNormal);
            }
            planes.push(h);
        }
        planes.sort();
        planes.dedup();
        Ok(Self { dim: space.dim(), planes })
    }

    /// Every canonical non-degenerate pair: `(S_1 ∪ S_γ) × F_q`.
    pub fn full(space: &Space<'_>) -> Self {
        let f = space.field();
        let planes = space
            .canonical_normals()
            .into_iter()
            .flat_map(|v| {
                f.elements().map(move |t| {
                    let norm_v = space.norm(&v);
                    Hyperplane { v: v.clone(), t, norm_v }
                })
            })
            .collect();
        Self { dim: space.dim(), planes }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.planes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.planes.is_empty()
    }

    pub fn planes(&self) -> &[Hyperplane] {
        &self.planes
    }

    /// The indicator `F(v, t)`.
    pub fn contains(&self, v: &Vector, t: FieldElem) -> bool {
        self.planes
            .binary_search_by(|h| (&h.v, h.t).cmp(&(v, t)))
            .is_ok()
    }

    /// Offsets present for each normal, `v ↦ [t ...]`.
    pub fn by_normal(&self) -> BTreeMap<&Vector, Vec<FieldElem>> {
        let mut out: BTreeMap<&Vector, Vec<FieldElem>> = BTreeMap::new();
        for h in &self.planes {
            out.entry(&h.v).or_default().push(h.t);
        }
        out
    }

    /// `max_v Σ_t F(v, t)`: the most offsets carried by a single normal.
    pub fn maxline(&self) -> usize {
        self.by_normal().values().map(Vec::len).max().unwrap_or(0)
    }

    /// Drops `(-v, -t)` whenever `(v, t)` is also present and smaller.
    pub fn geometric_dedup(&self, space: &Space<'_>) -> Self {
        let f = space.field();
        let planes = self
            .planes
            .iter()
            .filter(|h| {
                let mirror = (space.neg(&h.v), f.neg(h.t));
                !((&mirror.0, mirror.1) < (&h.v, h.t) && self.contains(&mirror.0, mirror.1))
            })
            .cloned()
            .collect();
        Self { dim: self.dim, planes }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldCtx;

    #[test]
    fn point_set_sorts_and_dedups() {
        let f = FieldCtx::prime(3).unwrap();
        let s = Space::new(&f, 2).unwrap();
        let a = s.vector_from_ints(&[2, 1]).unwrap();
        let b = s.vector_from_ints(&[0, 1]).unwrap();
        let e = PointSet::new(&s, [a.clone(), b.clone(), a.clone()]).unwrap();
        assert_eq!(e.points(), &[b, a]);
        let s3 = Space::new(&f, 3).unwrap();
        assert!(matches!(
            PointSet::new(&s, [s3.zero_vector()]),
            Err(Error::DimensionMismatch { expected: 2, found: 3 })
        ));
    }

    #[test]
    fn plane_set_validation() {
        let f = FieldCtx::prime(5).unwrap();
        let s = Space::new(&f, 2).unwrap();
        let v = |c: &[i64]| s.vector_from_ints(c).unwrap();
        assert!(matches!(PlaneSet::new(&s, [(v(&[1, 2]), f.one())]), Err(Error::DegeneratePlane)));
        assert!(matches!(PlaneSet::new(&s, [(v(&[2, 0]), f.one())]), Err(Error::NonCanonicalNormal)));
        assert!(matches!(PlaneSet::new(&s, [(v(&[0, 0]), f.one())]), Err(Error::ZeroNormal)));
        let ok = PlaneSet::new(&s, [(v(&[1, 0]), f.one()), (v(&[1, 1]), f.zero())]).unwrap();
        assert_eq!(ok.len(), 2);
        assert!(ok.contains(&v(&[1, 1]), f.zero()));
        assert!(!ok.contains(&v(&[1, 1]), f.one()));
    }

    #[test]
    fn full_plane_set_at_q5() {
        let f = FieldCtx::prime(5).unwrap();
        let s = Space::new(&f, 2).unwrap();
        let full = PlaneSet::full(&s);
        assert_eq!(full.len(), 40);
        assert_eq!(full.maxline(), 5);
        assert!(full.planes().windows(2).all(|w| w[0] < w[1]));
        // Each geometric plane appears as exactly two pairs (v,t), (-v,-t).
        assert_eq!(full.geometric_dedup(&s).len(), 20);
    }
}

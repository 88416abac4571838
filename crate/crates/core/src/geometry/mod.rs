//! Points, spheres, direction sets and hyperplanes in F_q^d.
//!
//! [`Space`] pairs a field with a dimension and carries every operation that
//! needs both. Vectors compare in canonical order (lexicographic on entries,
//! first coordinate most significant), which is also the order in which
//! [`Space::points`] enumerates F_q^d.
//!
//! A hyperplane `H_{v,t} = {y : y·v = t}` is *non-degenerate* when its normal
//! has nonzero norm `‖v‖ = Σ v_i²`. For those the point-plane distance
//!
//! ```text
//! d[x, H_{v,t}] = (x·v - t)² / ‖v‖
//! ```
//!
//! is well defined, invariant under rigid motions, and unchanged by rescaling
//! `(v, t) ↦ (λv, λt)`.

mod orthogonal;
mod sets;

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElem, QuadClass};

pub use orthogonal::{OrthogonalMatrix, RigidMotion, DEFAULT_BUDGET};
pub use sets::{PlaneSet, PointSet};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Vector(Vec<FieldElem>);

impl Vector {
    pub fn entries(&self) -> &[FieldElem] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|e| e.index() == 0)
    }
}

/// A hyperplane `{y : y·v = t}` with its normal's norm cached.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Hyperplane {
    v: Vector,
    t: FieldElem,
    norm_v: FieldElem,
}

impl Hyperplane {
    pub fn normal(&self) -> &Vector {
        &self.v
    }

    pub fn offset(&self) -> FieldElem {
        self.t
    }

    pub fn normal_norm(&self) -> FieldElem {
        self.norm_v
    }

    pub fn is_degenerate(&self) -> bool {
        self.norm_v.index() == 0
    }
}

/// F_q^d for a fixed field and dimension.
#[derive(Clone, Copy)]
pub struct Space<'a> {
    field: &'a FieldCtx,
    dim: usize,
}

impl<'a> Space<'a> {
    pub fn new(field: &'a FieldCtx, dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        Ok(Self { field, dim })
    }

    pub fn field(&self) -> &'a FieldCtx {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of points, `q^d`.
    pub fn size(&self) -> usize {
        (self.field.order() as usize).pow(self.dim as u32)
    }

    pub fn vector(&self, entries: Vec<FieldElem>) -> Result<Vector> {
        if entries.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: entries.len(),
            });
        }
        Ok(Vector(entries))
    }

    /// Vector with prime-field entries given as integers.
    pub fn vector_from_ints(&self, entries: &[i64]) -> Result<Vector> {
        self.vector(entries.iter().map(|&n| self.field.from_int(n)).collect())
    }

    pub fn zero_vector(&self) -> Vector {
        Vector(vec![self.field.zero(); self.dim])
    }

    pub fn check(&self, x: &Vector) -> Result<()> {
        if x.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: x.dim(),
            });
        }
        Ok(())
    }

    /// The `index`-th point of F_q^d in canonical order.
    pub fn vector_at(&self, mut index: usize) -> Vector {
        let q = self.field.order() as usize;
        let mut entries = vec![self.field.zero(); self.dim];
        for e in entries.iter_mut().rev() {
            *e = self.field.elem(index % q).expect("index reduced mod q");
            index /= q;
        }
        Vector(entries)
    }

    pub fn index_of(&self, x: &Vector) -> usize {
        let q = self.field.order() as usize;
        x.0.iter().fold(0, |acc, e| acc * q + e.index())
    }

    /// Every point of F_q^d in canonical order.
    pub fn points(&self) -> impl Iterator<Item = Vector> + '_ {
        (0..self.size()).map(move |i| self.vector_at(i))
    }

    pub fn dot(&self, x: &Vector, y: &Vector) -> FieldElem {
        let f = self.field;
        x.0.iter()
            .zip(&y.0)
            .fold(f.zero(), |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
    }

    pub fn norm(&self, x: &Vector) -> FieldElem {
        self.dot(x, x)
    }

    pub fn add(&self, x: &Vector, y: &Vector) -> Vector {
        Vector(x.0.iter().zip(&y.0).map(|(&a, &b)| self.field.add(a, b)).collect())
    }

    pub fn sub(&self, x: &Vector, y: &Vector) -> Vector {
        Vector(x.0.iter().zip(&y.0).map(|(&a, &b)| self.field.sub(a, b)).collect())
    }

    pub fn scale(&self, s: FieldElem, x: &Vector) -> Vector {
        Vector(x.0.iter().map(|&a| self.field.mul(s, a)).collect())
    }

    pub fn neg(&self, x: &Vector) -> Vector {
        Vector(x.0.iter().map(|&a| self.field.neg(a)).collect())
    }

    /// `S_t = {x : ‖x‖ = t}` by a full scan.
    pub fn sphere(&self, t: FieldElem) -> Vec<Vector> {
        self.points().filter(|x| self.norm(x) == t).collect()
    }

    /// `V_γ = S_0 ∪ S_1 ∪ S_γ`, sorted.
    pub fn direction_set(&self) -> Vec<Vector> {
        let f = self.field;
        let (one, gamma) = (f.one(), f.gamma());
        self.points()
            .filter(|x| {
                let n = self.norm(x);
                n == f.zero() || n == one || n == gamma
            })
            .collect()
    }

    /// Normals of non-degenerate canonical planes: `S_1 ∪ S_γ`, sorted.
    pub fn canonical_normals(&self) -> Vec<Vector> {
        let f = self.field;
        self.points()
            .filter(|x| {
                let n = self.norm(x);
                n == f.one() || n == f.gamma()
            })
            .collect()
    }

    /// Writes a nonzero `x` as `t·v` with `t ≠ 0` and `v ∈ V_γ`.
    ///
    /// Null vectors are their own direction. Otherwise `‖x‖` is either a
    /// square `s²`, giving `v = x/s ∈ S_1`, or a non-square, in which case
    /// `‖x‖/γ` is a square `s²` and `v = x/s ∈ S_γ`.
    pub fn direction_decompose(&self, x: &Vector) -> Result<(FieldElem, Vector)> {
        self.check(x)?;
        if x.is_zero() {
            return Err(Error::ZeroVector);
        }
        let f = self.field;
        let n = self.norm(x);
        let s = match f.quad_class(n) {
            QuadClass::Zero => return Ok((f.one(), x.clone())),
            QuadClass::Square => f.sqrt(n),
            QuadClass::NonSquare => f.sqrt(f.div(n, f.gamma())?),
        }
        .expect("argument is a square");
        let v = self.scale(f.inv(s)?, x);
        Ok((s, v))
    }

    pub fn hyperplane(&self, v: Vector, t: FieldElem) -> Result<Hyperplane> {
        self.check(&v)?;
        if v.is_zero() {
            return Err(Error::ZeroNormal);
        }
        let norm_v = self.norm(&v);
        Ok(Hyperplane { v, t, norm_v })
    }

    pub fn contains(&self, h: &Hyperplane, y: &Vector) -> bool {
        self.dot(y, &h.v) == h.t
    }

    /// `(x·v - t)² / ‖v‖`.
    pub fn plane_distance(&self, x: &Vector, h: &Hyperplane) -> Result<FieldElem> {
        if h.is_degenerate() {
            return Err(Error::DegeneratePlane);
        }
        self.check(x)?;
        let f = self.field;
        let gap = f.sub(self.dot(x, &h.v), h.t);
        f.div(f.square(gap), h.norm_v)
    }

    /// All `q^{d-1}` points of the plane, sorted. The free coordinates are
    /// every coordinate except the last nonzero one of `v`, which is solved for.
    pub fn plane_points(&self, h: &Hyperplane) -> Vec<Vector> {
        let f = self.field;
        let pivot = (0..self.dim).rev().find(|&i| h.v.0[i].index() != 0).expect("normal is nonzero");
        let pivot_inv = f.inv(h.v.0[pivot]).expect("pivot is nonzero");
        let q = f.order() as usize;
        let count = q.pow(self.dim as u32 - 1);
        let mut out = Vec::with_capacity(count);
        for mut idx in 0..count {
            let mut y = vec![f.zero(); self.dim];
            for i in (0..self.dim).rev() {
                if i == pivot {
                    continue;
                }
                y[i] = f.elem(idx % q).expect("reduced mod q");
                idx /= q;
            }
            let partial = y.iter().zip(&h.v.0).fold(f.zero(), |acc, (&a, &b)| f.add(acc, f.mul(a, b)));
            y[pivot] = f.mul(f.sub(h.t, partial), pivot_inv);
            out.push(Vector(y));
        }
        out.sort();
        out
    }

    /// Image of `H_{v,t}` under `y ↦ M(y - tau)`, which is `H_{Mv, t - tau·v}`.
    pub fn plane_transform(&self, h: &Hyperplane, m: &OrthogonalMatrix, tau: &Vector) -> Hyperplane {
        let v = m.apply(self, &h.v);
        let t = self.field.sub(h.t, self.dot(tau, &h.v));
        let norm_v = self.norm(&v);
        Hyperplane { v, t, norm_v }
    }

    /// Rescales `(v, t)` so the normal lies in `S_1 ∪ S_γ`.
    pub fn canonicalize_plane(&self, v: &Vector, t: FieldElem) -> Result<(Vector, FieldElem)> {
        self.check(v)?;
        if v.is_zero() {
            return Err(Error::ZeroNormal);
        }
        if self.norm(v).index() == 0 {
            return Err(Error::DegeneratePlane);
        }
        let (s, dir) = self.direction_decompose(v)?;
        Ok((dir, self.field.div(t, s)?))
    }
}

impl std::fmt::Debug for Space<'_> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "F_{}^{}", self.field.order(), self.dim)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u32) -> FieldCtx {
        FieldCtx::prime(p).unwrap()
    }

    #[test]
    fn norms() {
        let f5 = f(5);
        let s = Space::new(&f5, 2).unwrap();
        assert_eq!(s.norm(&s.vector_from_ints(&[1, 2]).unwrap()), f5.from_int(0));
        assert_eq!(s.norm(&s.vector_from_ints(&[1, 1]).unwrap()), f5.from_int(2));
        let f3 = f(3);
        let s3 = Space::new(&f3, 3).unwrap();
        assert_eq!(s3.norm(&s3.vector_from_ints(&[1, 1, 1]).unwrap()), f3.zero());
    }

    #[test]
    fn sphere_sizes() {
        let f3 = f(3);
        let s = Space::new(&f3, 2).unwrap();
        let unit = s.sphere(f3.one());
        let expected: Vec<_> = [[0, 1], [0, 2], [1, 0], [2, 0]]
            .iter()
            .map(|c| s.vector_from_ints(c).unwrap())
            .collect();
        assert_eq!(unit, expected);
        assert_eq!(s.sphere(f3.zero()), vec![s.zero_vector()]);
        let f5 = f(5);
        assert_eq!(Space::new(&f5, 2).unwrap().sphere(f5.zero()).len(), 9);
    }

    #[test]
    fn direction_set_sizes() {
        let f3 = f(3);
        assert_eq!(Space::new(&f3, 2).unwrap().direction_set().len(), 9);
        let f5 = f(5);
        assert_eq!(Space::new(&f5, 2).unwrap().direction_set().len(), 17);
    }

    #[test]
    fn decompose_examples() {
        let f5 = f(5);
        let s = Space::new(&f5, 2).unwrap();
        let v = |c: &[i64]| s.vector_from_ints(c).unwrap();
        assert_eq!(s.direction_decompose(&v(&[2, 0])).unwrap(), (f5.from_int(2), v(&[1, 0])));
        assert_eq!(s.direction_decompose(&v(&[1, 1])).unwrap(), (f5.one(), v(&[1, 1])));
        assert_eq!(s.direction_decompose(&v(&[3, 4])).unwrap(), (f5.one(), v(&[3, 4])));
        assert!(matches!(s.direction_decompose(&v(&[0, 0])), Err(Error::ZeroVector)));
    }

    #[test]
    fn distance_examples() {
        let f5 = f(5);
        let s = Space::new(&f5, 2).unwrap();
        let v = |c: &[i64]| s.vector_from_ints(c).unwrap();
        let h = s.hyperplane(v(&[1, 0]), f5.from_int(2)).unwrap();
        assert_eq!(s.plane_distance(&v(&[0, 0]), &h).unwrap(), f5.from_int(4));
        let h = s.hyperplane(v(&[1, 1]), f5.zero()).unwrap();
        // 2^2 * 2^{-1} = 4 * 3 = 12 = 2 (mod 5)
        assert_eq!((2i64 * 2 * 3) % 5, 2);
        assert_eq!(s.plane_distance(&v(&[1, 1]), &h).unwrap(), f5.from_int(2));
        assert_eq!(s.plane_distance(&v(&[4, 1]), &h).unwrap(), f5.zero());
        let degenerate = s.hyperplane(v(&[1, 2]), f5.zero()).unwrap();
        assert!(matches!(s.plane_distance(&v(&[0, 0]), &degenerate), Err(Error::DegeneratePlane)));
        assert!(matches!(s.hyperplane(v(&[0, 0]), f5.one()), Err(Error::ZeroNormal)));
    }

    #[test]
    fn plane_points_examples() {
        let f3 = f(3);
        let s = Space::new(&f3, 2).unwrap();
        let h = s.hyperplane(s.vector_from_ints(&[1, 0]).unwrap(), f3.one()).unwrap();
        let pts: Vec<_> = [[1, 0], [1, 1], [1, 2]].iter().map(|c| s.vector_from_ints(c).unwrap()).collect();
        assert_eq!(s.plane_points(&h), pts);
    }

    #[test]
    fn plane_points_match_scan() {
        for (p, d) in [(3u32, 2usize), (5, 2), (3, 3)] {
            let fp = f(p);
            let s = Space::new(&fp, d).unwrap();
            for v in s.points().filter(|v| !v.is_zero()) {
                for t in fp.elements() {
                    let h = s.hyperplane(v.clone(), t).unwrap();
                    let scanned: Vec<_> = s.points().filter(|y| s.contains(&h, y)).collect();
                    let pts = s.plane_points(&h);
                    assert_eq!(pts.len(), (p as usize).pow(d as u32 - 1));
                    assert_eq!(pts, scanned);
                }
            }
        }
    }

    #[test]
    fn canonicalize_examples() {
        let f5 = f(5);
        let s = Space::new(&f5, 2).unwrap();
        let v = |c: &[i64]| s.vector_from_ints(c).unwrap();
        assert_eq!(s.canonicalize_plane(&v(&[2, 0]), f5.from_int(4)).unwrap(), (v(&[1, 0]), f5.from_int(2)));
        assert_eq!(s.canonicalize_plane(&v(&[1, 1]), f5.from_int(3)).unwrap(), (v(&[1, 1]), f5.from_int(3)));
        assert!(matches!(s.canonicalize_plane(&v(&[1, 2]), f5.one()), Err(Error::DegeneratePlane)));
    }

    #[test]
    fn canonicalize_preserves_distance_and_is_idempotent() {
        let f5 = f(5);
        let s = Space::new(&f5, 2).unwrap();
        for v in s.points().filter(|v| s.norm(v).index() != 0) {
            for t in f5.elements() {
                let (cv, ct) = s.canonicalize_plane(&v, t).unwrap();
                assert_eq!(s.canonicalize_plane(&cv, ct).unwrap(), (cv.clone(), ct));
                let n = s.norm(&cv);
                assert!(n == f5.one() || n == f5.gamma());
                let h = s.hyperplane(v.clone(), t).unwrap();
                let ch = s.hyperplane(cv, ct).unwrap();
                assert_eq!(s.plane_points(&h), s.plane_points(&ch));
                for x in s.points() {
                    assert_eq!(s.plane_distance(&x, &h).unwrap(), s.plane_distance(&x, &ch).unwrap());
                }
            }
        }
    }

    #[test]
    fn index_roundtrip_in_extension_field() {
        let f9 = FieldCtx::new(3, 2, None).unwrap();
        let s = Space::new(&f9, 2).unwrap();
        let pts: Vec<_> = s.points().collect();
        assert_eq!(pts.len(), 81);
        assert!(pts.windows(2).all(|w| w[0] < w[1]));
        for (i, x) in pts.iter().enumerate() {
            assert_eq!(s.index_of(x), i);
        }
    }
}

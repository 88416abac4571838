use crate::error::{Error, Result};
use crate::field::FieldElem;

use super::{Hyperplane, Space, Vector};

/// Default cap on the number of candidate `d×d` matrices, `q^{d²}`.
pub const DEFAULT_BUDGET: u128 = 10_000_000;

/// A `d×d` matrix with `MᵀM = I`, stored row-major.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct OrthogonalMatrix {
    dim: usize,
    entries: Vec<FieldElem>,
}

impl OrthogonalMatrix {
    pub fn identity(space: &Space<'_>) -> Self {
        let f = space.field();
        let d = space.dim();
        let entries = (0..d * d)
            .map(|i| if i / d == i % d { f.one() } else { f.zero() })
            .collect();
        Self { dim: d, entries }
    }

    /// Checks `MᵀM = I` and wraps the rows.
    pub fn from_rows(space: &Space<'_>, rows: &[Vector]) -> Option<Self> {
        let d = space.dim();
        if rows.len() != d || rows.iter().any(|r| r.dim() != d) {
            return None;
        }
        let m = Self {
            dim: d,
            entries: rows.iter().flat_map(|r| r.entries().iter().copied()).collect(),
        };
        m.is_orthogonal(space).then_some(m)
    }

    pub fn row(&self, i: usize) -> &[FieldElem] {
        &self.entries[i * self.dim..(i + 1) * self.dim]
    }

    pub fn entry(&self, i: usize, j: usize) -> FieldElem {
        self.entries[i * self.dim + j]
    }

    pub fn transpose(&self) -> Self {
        let d = self.dim;
        Self {
            dim: d,
            entries: (0..d * d).map(|i| self.entry(i % d, i / d)).collect(),
        }
    }

    pub fn neg(&self, space: &Space<'_>) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|&e| space.field().neg(e)).collect(),
        }
    }

    pub fn apply(&self, space: &Space<'_>, x: &Vector) -> Vector {
        let f = space.field();
        Vector(
            (0..self.dim)
                .map(|i| {
                    self.row(i)
                        .iter()
                        .zip(x.entries())
                        .fold(f.zero(), |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
                })
                .collect(),
        )
    }

    /// `MᵀM = I`, checked column by column.
    pub fn is_orthogonal(&self, space: &Space<'_>) -> bool {
        let f = space.field();
        let d = self.dim;
        (0..d).all(|i| {
            (0..d).all(|j| {
                let s = (0..d).fold(f.zero(), |acc, k| f.add(acc, f.mul(self.entry(k, i), self.entry(k, j))));
                s == if i == j { f.one() } else { f.zero() }
            })
        })
    }
}

/// The motion `y ↦ M(y - shift)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RigidMotion {
    pub rotation: OrthogonalMatrix,
    pub shift: Vector,
}

impl RigidMotion {
    pub fn apply(&self, space: &Space<'_>, y: &Vector) -> Vector {
        self.rotation.apply(space, &space.sub(y, &self.shift))
    }

    pub fn apply_plane(&self, space: &Space<'_>, h: &Hyperplane) -> Hyperplane {
        space.plane_transform(h, &self.rotation, &self.shift)
    }
}

impl Space<'_> {
    /// Number of candidate matrices an exhaustive scan of `O_d` covers.
    pub fn orthogonal_scan_size(&self) -> u128 {
        u128::from(self.field().order()).saturating_pow((self.dim() * self.dim()) as u32)
    }

    /// `O_d(F_q)` in canonical (row-major lexicographic) order.
    ///
    /// The scan walks all `q^{d²}` matrices row by row and abandons a prefix
    /// as soon as its rows stop being orthonormal; rows of an orthogonal
    /// matrix are orthonormal because `MᵀM = I` implies `MMᵀ = I`.
    pub fn orthogonal_group(&self, budget: u128) -> Result<Vec<OrthogonalMatrix>> {
        let required = self.orthogonal_scan_size();
        if required > budget {
            return Err(Error::BudgetExceeded { required, budget });
        }
        let unit_rows = self.sphere(self.field().one());
        let mut out = Vec::new();
        let mut rows: Vec<&Vector> = Vec::with_capacity(self.dim());
        self.extend_rows(&unit_rows, &mut rows, &mut out);
        Ok(out)
    }

    fn extend_rows<'v>(&self, unit_rows: &'v [Vector], rows: &mut Vec<&'v Vector>, out: &mut Vec<OrthogonalMatrix>) {
        if rows.len() == self.dim() {
            out.push(OrthogonalMatrix {
                dim: self.dim(),
                entries: rows.iter().flat_map(|r| r.entries().iter().copied()).collect(),
            });
            return;
        }
        let zero = self.field().zero();
        for r in unit_rows {
            if rows.iter().all(|prev| self.dot(prev, r) == zero) {
                rows.push(r);
                self.extend_rows(unit_rows, rows, out);
                rows.pop();
            }
        }
    }

    /// Searches for a rigid motion taking the configuration `(x, h)` to
    /// `(x2, h2)`: `x ↦ x2` and `h` onto `h2` as point sets. The identity is
    /// tried first, so identical configurations yield `(I, 0)`.
    pub fn equivalent_configs(
        &self,
        x: &Vector,
        h: &Hyperplane,
        x2: &Vector,
        h2: &Hyperplane,
        budget: u128,
    ) -> Result<Option<RigidMotion>> {
        let group = self.orthogonal_group(budget)?;
        self.equivalent_configs_in(&group, x, h, x2, h2)
    }

    /// [`Space::equivalent_configs`] against a precomputed group.
    pub fn equivalent_configs_in(
        &self,
        group: &[OrthogonalMatrix],
        x: &Vector,
        h: &Hyperplane,
        x2: &Vector,
        h2: &Hyperplane,
    ) -> Result<Option<RigidMotion>> {
        if h.is_degenerate() || h2.is_degenerate() {
            return Err(Error::DegeneratePlane);
        }
        self.check(x)?;
        self.check(x2)?;
        let target = self.plane_points(h2);
        let identity = OrthogonalMatrix::identity(self);
        let candidates = std::iter::once(&identity).chain(group.iter().filter(|m| **m != identity));
        for m in candidates {
            // M(x - shift) = x2 with shift = x - Mᵀx2.
            let shift = self.sub(x, &m.transpose().apply(self, x2));
            let motion = RigidMotion {
                rotation: m.clone(),
                shift,
            };
            if self.plane_points(&motion.apply_plane(self, h)) == target {
                return Ok(Some(motion));
            }
        }
        Ok(None)
    }
}

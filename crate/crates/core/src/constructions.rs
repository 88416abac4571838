//! Test configurations: seeded random sets, the full configuration, and the
//! subfield example showing the size threshold cannot drop below `q^d`.
//!
//! Sampling is reproducible across implementations. The generator is
//! xoshiro256++ seeded through SplitMix64 ([`RNG_NAME`]); bounded integers come
//! from rejection sampling on `next_u64`, and subsets are the first `n` entries
//! of a Fisher-Yates shuffle (descending `i`, `j = uniform(i + 1)`) of the
//! canonical enumeration, then re-sorted.

use std::collections::BTreeMap;

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::{SplitMix64, Xoshiro256PlusPlus};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElem};
use crate::geometry::{PlaneSet, PointSet, Space, Vector};

/// Identifies the sampling algorithm in report metadata.
pub const RNG_NAME: &str = "xoshiro256++/splitmix64-seed/rejection/fisher-yates v1";

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Random,
    Full,
    Subfield,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Parameters {
    Sizes { q: u32, d: usize, e_size: usize, f_size: usize },
    Subfield { p: u32, d: usize },
}

/// Metadata block attached to generated set files.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Construction {
    pub kind: Kind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub parameters: Parameters,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rng: Option<String>,
}

pub struct SeededRng(Xoshiro256PlusPlus);

impl SeededRng {
    pub fn new(seed: u64) -> Self {
        Self(Xoshiro256PlusPlus::seed_from_u64(seed))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    /// Uniform in `0..n` by rejection.
    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0);
        let limit = u64::MAX - u64::MAX % n;
        loop {
            let x = self.0.next_u64();
            if x < limit {
                return x % n;
            }
        }
    }

    /// Uniform in `lo..=hi`.
    pub fn between(&mut self, lo: usize, hi: usize) -> usize {
        lo + self.below((hi - lo) as u64 + 1) as usize
    }

    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        for i in (1..items.len()).rev() {
            let j = self.below(i as u64 + 1) as usize;
            items.swap(i, j);
        }
    }
}

/// Independent child seed for item `index` of a run seeded with `base`.
pub fn derive_seed(base: u64, index: u64) -> u64 {
    SplitMix64::seed_from_u64(base ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15)).next_u64()
}

fn sample<T: Clone>(mut pool: Vec<T>, n: usize, seed: u64) -> Result<Vec<T>> {
    if n > pool.len() {
        return Err(Error::TooLarge {
            requested: n,
            available: pool.len(),
        });
    }
    SeededRng::new(seed).shuffle(&mut pool);
    pool.truncate(n);
    Ok(pool)
}

pub fn random_point_set(space: &Space<'_>, n: usize, seed: u64) -> Result<PointSet> {
    if n > space.size() {
        return Err(Error::TooLarge {
            requested: n,
            available: space.size(),
        });
    }
    PointSet::new(space, sample(space.points().collect(), n, seed)?)
}

/// All canonical non-degenerate pairs `(v, t)`, sorted.
pub fn canonical_pairs(space: &Space<'_>) -> Vec<(Vector, FieldElem)> {
    let f = space.field();
    space
        .canonical_normals()
        .into_iter()
        .flat_map(|v| f.elements().map(move |t| (v.clone(), t)))
        .collect()
}

pub fn random_plane_set(space: &Space<'_>, m: usize, seed: u64) -> Result<PlaneSet> {
    PlaneSet::new(space, sample(canonical_pairs(space), m, seed)?)
}

/// `E = F_q^d` and every canonical non-degenerate pair.
pub fn full_configuration(space: &Space<'_>) -> (PointSet, PlaneSet) {
    (PointSet::full(space), PlaneSet::full(space))
}

pub struct Instance {
    pub points: PointSet,
    pub planes: PlaneSet,
    pub construction: Construction,
}

/// Random sizes, then random sets of those sizes. With `require_hypothesis`
/// the sizes satisfy `|E||F| > q^{d+1}`; otherwise both are uniform on
/// `1..=max`.
pub fn random_instance(space: &Space<'_>, seed: u64, require_hypothesis: bool) -> Result<Instance> {
    let mut rng = SeededRng::new(seed);
    let e_max = space.size();
    let f_max = space.canonical_normals().len() * space.field().order() as usize;
    let (e_size, f_size) = if require_hypothesis {
        let threshold = (space.field().order() as usize).pow(space.dim() as u32 + 1);
        if e_max * f_max <= threshold {
            return Err(Error::TooLarge {
                requested: threshold + 1,
                available: e_max * f_max,
            });
        }
        let e = rng.between(threshold / f_max + 1, e_max);
        let f = rng.between(threshold / e + 1, f_max);
        (e, f)
    } else {
        (rng.between(1, e_max), rng.between(1, f_max))
    };
    build_instance(space, &mut rng, seed, e_size, f_size)
}

/// Random sets of exactly the requested sizes.
pub fn sized_instance(space: &Space<'_>, e_size: usize, f_size: usize, seed: u64) -> Result<Instance> {
    build_instance(space, &mut SeededRng::new(seed), seed, e_size, f_size)
}

fn build_instance(space: &Space<'_>, rng: &mut SeededRng, seed: u64, e_size: usize, f_size: usize) -> Result<Instance> {
    let points = random_point_set(space, e_size, rng.next_u64())?;
    let planes = random_plane_set(space, f_size, rng.next_u64())?;
    Ok(Instance {
        points,
        planes,
        construction: Construction {
            kind: Kind::Random,
            seed: Some(seed),
            parameters: Parameters::Sizes {
                q: space.field().order(),
                d: space.dim(),
                e_size,
                f_size,
            },
            rng: Some(RNG_NAME.to_owned()),
        },
    })
}

/// The configuration over `F_{p²}` built from the prime subfield.
pub struct Sharpness {
    pub field: FieldCtx,
    pub dim: usize,
    pub points: PointSet,
    pub planes: PlaneSet,
    /// For each canonical pair, the subfield pair `(v, t)` it came from.
    pub sources: BTreeMap<(Vector, FieldElem), (Vector, FieldElem)>,
    pub construction: Construction,
}

impl Sharpness {
    pub fn space(&self) -> Space<'_> {
        Space::new(&self.field, self.dim).expect("dim >= 1")
    }
}

/// `q = p²`, `E = F_p^d` embedded as constant polynomials, and `F` every
/// plane with normal and offset in `F_p` (non-degenerate normal), rescaled to
/// canonical form.
pub fn subfield_sharpness(p: u32, d: usize, budget: u128) -> Result<Sharpness> {
    let field = FieldCtx::new(p, 2, None)?;
    let required = u128::from(p).pow(2 * d as u32);
    if required > budget {
        return Err(Error::BudgetExceeded { required, budget });
    }
    let space = Space::new(&field, d)?;
    let sub: Vec<FieldElem> = (0..i64::from(p)).map(|a| field.from_int(a)).collect();

    let n = (p as usize).pow(d as u32);
    let sub_points: Vec<Vector> = (0..n)
        .map(|mut idx| {
            let mut entries = vec![field.zero(); d];
            for e in entries.iter_mut().rev() {
                *e = sub[idx % p as usize];
                idx /= p as usize;
            }
            space.vector(entries).expect("length d")
        })
        .collect();

    let mut sources = BTreeMap::new();
    for v in sub_points.iter().filter(|v| !v.is_zero()) {
        if space.norm(v) == field.zero() {
            continue;
        }
        for &t in &sub {
            let canonical = space.canonicalize_plane(v, t)?;
            sources.entry(canonical).or_insert_with(|| (v.clone(), t));
        }
    }
    let points = PointSet::new(&space, sub_points)?;
    let planes = PlaneSet::new(&space, sources.keys().cloned())?;
    Ok(Sharpness {
        dim: d,
        points,
        planes,
        sources,
        construction: Construction {
            kind: Kind::Subfield,
            seed: None,
            parameters: Parameters::Subfield { p, d },
            rng: None,
        },
        field,
    })
}

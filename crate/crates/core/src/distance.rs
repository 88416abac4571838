//! Distance statistics between a point set `E` and a plane set `F`.
//!
//! `ν(r)` counts pairs `(x, (v,t)) ∈ E × F` at distance `r`. The counting
//! argument has three steps, each checked exactly by [`verify_theorem`]:
//!
//! 1. Cauchy-Schwarz over the support of ν:
//!    `|E|²|F|² = (Σ_r ν(r))² ≤ Σ_r ν(r)² · #{r : ν(r) > 0}`.
//! 2. Cauchy-Schwarz over `F`: `Σ_r ν(r)² ≤ |F| (I + II)`, with the energy
//!    sums from [`crate::spectral`].
//! 3. The Fourier estimate
//!    `Σ_r ν(r)² ≤ 2q^{-1}|E|²|F|² + 2q^{d-1}|E||F|·maxline`, where
//!    `maxline = max_v Σ_t F(v,t) ≤ q`.
//!
//! Together they give the lower bound
//!
//! ```text
//! #{distinct distances} ≥ |E|²|F|² / (2q^{-1}|E|²|F|² + 2q^{d-1}|E||F|·maxline)
//! ```
//!
//! which is at least `q/2` up to constants once `|E||F| > q^{d+1}`.
//!
//! ```
//! use fqdist::distance::theorem_bound;
//! use fqdist::field::FieldCtx;
//! use fqdist::geometry::{PlaneSet, PointSet, Space};
//! use num_rational::Ratio;
//!
//! let f5 = FieldCtx::prime(5).unwrap();
//! let space = Space::new(&f5, 2).unwrap();
//! let (e, f) = (PointSet::full(&space), PlaneSet::full(&space));
//! assert_eq!(theorem_bound(&space, &e, &f).unwrap(), Ratio::new(20, 9));
//! ```

use std::collections::BTreeSet;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::FieldElem;
use crate::geometry::{OrthogonalMatrix, PlaneSet, PointSet, Space, Vector};
use crate::spectral::{energy_i, energy_ii};
use crate::verdict::Verdict;

/// Histogram `r ↦ ν(r)`, indexed by the canonical position of `r`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct NuTable {
    counts: Vec<u64>,
}

impl NuTable {
    pub fn from_counts(counts: Vec<u64>) -> Self {
        Self { counts }
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn get(&self, r: FieldElem) -> u64 {
        self.counts[r.index()]
    }

    pub fn counts_mut(&mut self) -> &mut [u64] {
        &mut self.counts
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn second_moment(&self) -> u128 {
        self.counts.iter().map(|&c| u128::from(c) * u128::from(c)).sum()
    }

    pub fn distinct_all(&self) -> usize {
        self.counts.iter().filter(|&&c| c > 0).count()
    }

    pub fn distinct_nonzero(&self) -> usize {
        self.counts[1..].iter().filter(|&&c| c > 0).count()
    }
}

pub fn nu_counts(space: &Space<'_>, points: &PointSet, planes: &PlaneSet) -> Result<NuTable> {
    let f = space.field();
    let mut counts = vec![0u64; f.order() as usize];
    for h in planes.planes() {
        let inv_norm = f.inv(h.normal_norm()).map_err(|_| Error::DegeneratePlane)?;
        for x in points.points() {
            let gap = f.sub(space.dot(x, h.normal()), h.offset());
            counts[f.mul(f.square(gap), inv_norm).index()] += 1;
        }
    }
    Ok(NuTable { counts })
}

/// Nonzero distance values realized by `E × F`, plus whether 0 occurs.
pub fn distance_set(space: &Space<'_>, points: &PointSet, planes: &PlaneSet) -> Result<(Vec<FieldElem>, bool)> {
    let nu = nu_counts(space, points, planes)?;
    let f = space.field();
    let nonzero = f.nonzero().filter(|&r| nu.get(r) > 0).collect();
    Ok((nonzero, nu.get(f.zero()) > 0))
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct BoundTerms {
    /// `|E|²|F|²`
    pub ef_sq: i128,
    /// `2|E|²|F|²/q`
    pub term_uniform: Ratio<i128>,
    /// `2q^{d-1}|E||F|·maxline`
    pub term_energy: i128,
    pub maxline: usize,
}

impl BoundTerms {
    pub fn new(space: &Space<'_>, points: &PointSet, planes: &PlaneSet) -> Self {
        let q = i128::from(space.field().order());
        let (e, f) = (points.len() as i128, planes.len() as i128);
        let maxline = planes.maxline();
        let ef_sq = e * e * f * f;
        Self {
            ef_sq,
            term_uniform: Ratio::new(2 * ef_sq, q),
            term_energy: 2 * q.pow(space.dim() as u32 - 1) * e * f * maxline as i128,
            maxline,
        }
    }

    /// Right-hand side of the second moment estimate.
    pub fn moment_bound(&self) -> Ratio<i128> {
        self.term_uniform + self.term_energy
    }

    pub fn bound(&self) -> Result<Ratio<i128>> {
        if self.ef_sq == 0 {
            return Err(Error::EmptySet);
        }
        Ok(Ratio::from_integer(self.ef_sq) / self.moment_bound())
    }
}

/// `|E|²|F|² / (2|E|²|F|²q^{-1} + 2q^{d-1}|E||F|·maxline)`, exactly.
pub fn theorem_bound(space: &Space<'_>, points: &PointSet, planes: &PlaneSet) -> Result<Ratio<i128>> {
    BoundTerms::new(space, points, planes).bound()
}

/// Whether `|E||F| > q^{d+1}`.
pub fn hypothesis_holds(space: &Space<'_>, e_size: usize, f_size: usize) -> bool {
    let q = u128::from(space.field().order());
    (e_size as u128) * (f_size as u128) > q.pow(space.dim() as u32 + 1)
}

fn moment_verdicts(space: &Space<'_>, nu: &NuTable, terms: &BoundTerms, planes_len: usize, energies: (u64, u64)) -> [Verdict; 2] {
    let q = i128::from(space.field().order());
    let sm = nu.second_moment() as i128;
    let cleared_rhs = 2 * terms.ef_sq + q * terms.term_energy;
    [
        Verdict::le(
            "moment_vs_energy",
            sm,
            planes_len as i128 * (i128::from(energies.0) + i128::from(energies.1)),
            0,
        ),
        Verdict::le("second_moment_bound", q * sm, cleared_rhs, 1),
    ]
}

/// `Σ ν(r)² ≤ |F|(I + II)` and the full second moment estimate.
pub fn second_moment_check(space: &Space<'_>, points: &PointSet, planes: &PlaneSet) -> Result<Vec<Verdict>> {
    let nu = nu_counts(space, points, planes)?;
    let terms = BoundTerms::new(space, points, planes);
    let energies = (energy_i(space, points, planes), energy_ii(space, points, planes));
    Ok(moment_verdicts(space, &nu, &terms, planes.len(), energies).to_vec())
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct DistanceReport {
    pub q: u32,
    pub d: usize,
    pub e_size: usize,
    pub f_size: usize,
    pub nu: NuTable,
    pub distinct_all: usize,
    pub distinct_nonzero: usize,
    pub second_moment: u128,
    pub energy_i: u64,
    pub energy_ii: u64,
    pub terms: BoundTerms,
    pub bound: Ratio<i128>,
    pub hypothesis: bool,
    /// Exact number of rigid-motion classes of `E × F`, when computed.
    pub orbit_count: Option<usize>,
    pub verdicts: Vec<Verdict>,
    pub pass: bool,
}

/// One CSV row; column order is the file format.
#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
pub struct ReportRow {
    pub q: u32,
    pub d: usize,
    pub e_size: usize,
    pub f_size: usize,
    pub maxline: usize,
    pub distinct_all: usize,
    pub distinct_nonzero: usize,
    pub second_moment: u128,
    pub bound_num: i128,
    pub bound_den: i128,
    pub hypothesis: bool,
    pub pass: bool,
}

impl DistanceReport {
    pub fn row(&self) -> ReportRow {
        ReportRow {
            q: self.q,
            d: self.d,
            e_size: self.e_size,
            f_size: self.f_size,
            maxline: self.terms.maxline,
            distinct_all: self.distinct_all,
            distinct_nonzero: self.distinct_nonzero,
            second_moment: self.second_moment,
            bound_num: *self.bound.numer(),
            bound_den: *self.bound.denom(),
            hypothesis: self.hypothesis,
            pass: self.pass,
        }
    }

    /// `distinct_all - bound`.
    pub fn bound_slack(&self) -> Ratio<i128> {
        Ratio::from_integer(self.distinct_all as i128) - self.bound
    }

    pub fn failures(&self) -> impl Iterator<Item = &Verdict> {
        self.verdicts.iter().filter(|v| !v.pass)
    }
}

/// Builds the report from a given ν histogram. [`verify_theorem`] passes the
/// true histogram; supplying another one exercises the failure path.
pub fn assemble_report(space: &Space<'_>, points: &PointSet, planes: &PlaneSet, nu: NuTable) -> Result<DistanceReport> {
    let terms = BoundTerms::new(space, points, planes);
    let bound = terms.bound()?;
    let q = space.field().order();
    let (e, f) = (points.len(), planes.len());
    let energies = (energy_i(space, points, planes), energy_ii(space, points, planes));
    let distinct_all = nu.distinct_all();
    let hypothesis = hypothesis_holds(space, e, f);

    let mut verdicts = vec![
        Verdict::eq("nu_total", i128::from(nu.total()), e as i128 * f as i128, 0),
        Verdict::le(
            "cauchy_schwarz",
            terms.ef_sq,
            nu.second_moment() as i128 * distinct_all as i128,
            0,
        ),
    ];
    verdicts.extend(moment_verdicts(space, &nu, &terms, f, energies));
    verdicts.push(Verdict::le("distance_count_bound", bound.ceil().to_integer(), distinct_all as i128, 0));
    verdicts.push(Verdict::le("maxline_at_most_q", terms.maxline as i128, i128::from(q), 0));
    if hypothesis {
        verdicts.push(Verdict::le("half_q", i128::from(q), 2 * distinct_all as i128, 0));
    }
    let pass = verdicts.iter().all(|v| v.pass);

    Ok(DistanceReport {
        q,
        d: space.dim(),
        e_size: e,
        f_size: f,
        distinct_all,
        distinct_nonzero: nu.distinct_nonzero(),
        second_moment: nu.second_moment(),
        energy_i: energies.0,
        energy_ii: energies.1,
        nu,
        terms,
        bound,
        hypothesis,
        orbit_count: None,
        verdicts,
        pass,
    })
}

/// Full report for `(E, F)`. Fails only with [`Error::EmptySet`], when the
/// bound is undefined; inequality failures are verdicts.
pub fn verify_theorem(space: &Space<'_>, points: &PointSet, planes: &PlaneSet) -> Result<DistanceReport> {
    let nu = nu_counts(space, points, planes)?;
    assemble_report(space, points, planes, nu)
}

/// Number of rigid-motion classes of configurations `(x, h) ∈ E × F`.
///
/// Translating `x` to the origin turns `h = H_{v,t}` into `H_{v, t - x·v}`;
/// the class is then the `O_d` orbit of that plane, keyed by the smallest
/// point set among its images.
pub fn orbit_count(space: &Space<'_>, points: &PointSet, planes: &PlaneSet, budget: u128) -> Result<usize> {
    let group = space.orthogonal_group(budget)?;
    orbit_count_in(space, &group, points, planes)
}

pub fn orbit_count_in(space: &Space<'_>, group: &[OrthogonalMatrix], points: &PointSet, planes: &PlaneSet) -> Result<usize> {
    let f = space.field();
    let origin = space.zero_vector();
    let mut seen: BTreeSet<Vec<Vector>> = BTreeSet::new();
    let mut keys: BTreeSet<Vec<Vector>> = BTreeSet::new();
    for h in planes.planes() {
        for x in points.points() {
            let t = f.sub(h.offset(), space.dot(x, h.normal()));
            let centered = space.hyperplane(h.normal().clone(), t)?;
            let pts = space.plane_points(&centered);
            if !seen.insert(pts.clone()) {
                continue;
            }
            let key = group
                .iter()
                .map(|m| space.plane_points(&space.plane_transform(&centered, m, &origin)))
                .min()
                .unwrap_or(pts);
            keys.insert(key);
        }
    }
    Ok(keys.len())
}

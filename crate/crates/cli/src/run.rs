use std::collections::BTreeMap;
use std::path::PathBuf;

use anyhow::{bail, Context};
use fqdist::constructions::{canonical_pairs, derive_seed, full_configuration, random_instance, sized_instance, subfield_sharpness, SeededRng};
use fqdist::distance::{assemble_report, nu_counts, orbit_count_in, DistanceReport, ReportRow};
use fqdist::field::FieldCtx;
use fqdist::geometry::{Hyperplane, PlaneSet, PointSet, Space, Vector};
use fqdist::io::{read_json, PlaneSetFile, PointSetFile};
use fqdist::spectral::{energy_identity_check, inversion_check, plancherel_check};
use fqdist::verdict::{Relation, Verdict};
use fqdist::{constructions, Error};
use num_rational::Ratio;
use rayon::prelude::*;
use serde::Serialize;

use crate::config::SweepConfig;
use crate::report::{csv_bytes, Outcome, Summary};

/// Where `verify` gets its instances.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub enum Source {
    /// Seeded random sets; sizes from the config or drawn at random.
    #[default]
    Random,
    /// `E = F_q^d` with every canonical plane.
    Full,
    /// A point-set file and a plane-set file.
    Files { points: PathBuf, planes: PathBuf },
}

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct VerifyOptions {
    pub source: Source,
    /// Adds one to ν(1) before checking, to exercise the failure path.
    pub corrupt_nu: bool,
}

fn contexts(config: &SweepConfig) -> anyhow::Result<Vec<FieldCtx>> {
    config
        .fields
        .iter()
        .map(|f| f.context().with_context(|| format!("field {f}")))
        .collect()
}

struct Job {
    field: usize,
    dim: usize,
    sizes: Option<(usize, usize)>,
    seed: u64,
}

/// Per-instance result, computed in parallel and folded in job order.
struct Checked {
    row: Option<ReportRow>,
    slack: Option<Ratio<i128>>,
    failed: Vec<String>,
    skipped: Option<String>,
}

fn label(space: &Space<'_>, index: usize) -> String {
    format!("instance {index} (q={}, d={})", space.field().order(), space.dim())
}

/// Full report plus the spectral identities for one instance.
fn check_instance(space: &Space<'_>, points: &PointSet, planes: &PlaneSet, corrupt_nu: bool, index: usize) -> Checked {
    let name = label(space, index);
    let built = nu_counts(space, points, planes).and_then(|mut nu| {
        if corrupt_nu && nu.counts().len() > 1 {
            nu.counts_mut()[1] += 1;
        }
        assemble_report(space, points, planes, nu)
    });
    let mut report: DistanceReport = match built {
        Ok(r) => r,
        Err(Error::EmptySet) => {
            return Checked {
                row: None,
                slack: None,
                failed: Vec::new(),
                skipped: Some(format!("{name}: empty set, bound undefined")),
            }
        }
        Err(e) => {
            return Checked {
                row: None,
                slack: None,
                failed: vec![format!("{name}: {e}")],
                skipped: None,
            }
        }
    };
    let mut failed = Vec::new();
    match energy_identity_check(space, points, planes) {
        Ok(energy) => report.verdicts.extend(energy.verdicts),
        Err(e) => failed.push(format!("{name}: {e}")),
    }
    report.verdicts.push(plancherel_check(space, points));
    failed.extend(report.failures().map(|v| format!("{name}: {v}")));
    report.pass = failed.is_empty();
    Checked {
        slack: Some(report.bound_slack()),
        row: Some(report.row()),
        failed,
        skipped: None,
    }
}

fn size_grid(explicit: &[usize], max: usize) -> Vec<usize> {
    if !explicit.is_empty() {
        return explicit.to_vec();
    }
    let mut grid: Vec<usize> = (1..=5).map(|i| (i * max / 5).max(1)).collect();
    grid.dedup();
    grid
}

fn jobs(config: &SweepConfig, fields: &[FieldCtx], grid: bool) -> anyhow::Result<Vec<Job>> {
    let explicit = !config.e_sizes.is_empty() || !config.f_sizes.is_empty();
    if explicit && (config.e_sizes.is_empty() || config.f_sizes.is_empty()) {
        bail!("e_sizes and f_sizes must be given together");
    }
    let mut out = Vec::new();
    for (fi, f) in fields.iter().enumerate() {
        for &d in &config.dims {
            let space = Space::new(f, d)?;
            let cells: Vec<Option<(usize, usize)>> = if explicit || grid {
                let es = size_grid(&config.e_sizes, space.size());
                let fs = size_grid(&config.f_sizes, canonical_pairs(&space).len());
                es.iter().flat_map(|&e| fs.iter().map(move |&m| Some((e, m)))).collect()
            } else {
                vec![None]
            };
            for sizes in cells {
                for _ in 0..config.trials {
                    let seed = derive_seed(config.seed, out.len() as u64);
                    out.push(Job { field: fi, dim: d, sizes, seed });
                }
            }
        }
    }
    Ok(out)
}

fn run_jobs(config: &SweepConfig, fields: &[FieldCtx], jobs: &[Job], corrupt_nu: bool) -> anyhow::Result<Vec<Checked>> {
    jobs.par_iter()
        .enumerate()
        .map(|(i, job)| {
            let space = Space::new(&fields[job.field], job.dim)?;
            let inst = match job.sizes {
                Some((e, m)) => sized_instance(&space, e, m, job.seed)?,
                None => random_instance(&space, job.seed, config.hypothesis)?,
            };
            Ok(check_instance(&space, &inst.points, &inst.planes, corrupt_nu, i))
        })
        .collect()
}

fn fold(results: &[Checked]) -> (Vec<ReportRow>, Summary) {
    let mut summary = Summary::default();
    let mut worst = None;
    let mut rows = Vec::new();
    for r in results {
        if let Some(s) = &r.skipped {
            summary.skip(s.clone());
        }
        if let Some(row) = &r.row {
            summary.instances += 1;
            rows.push(row.clone());
        }
        if let Some(slack) = r.slack {
            summary.note_slack(slack, &mut worst);
        }
        for f in &r.failed {
            summary.fail(f.clone());
        }
    }
    (rows, summary)
}

/// Runs the full report and spectral identities on each instance. One CSV row
/// per instance.
pub fn run_verify(config: &SweepConfig, options: &VerifyOptions) -> anyhow::Result<Outcome> {
    let results = match &options.source {
        Source::Files { points, planes } => {
            let pfile: PointSetFile = read_json(points).with_context(|| format!("reading {}", points.display()))?;
            let ffile: PlaneSetFile = read_json(planes).with_context(|| format!("reading {}", planes.display()))?;
            let field = FieldCtx::from_descriptor(&pfile.field)?;
            let space = Space::new(&field, pfile.d)?;
            let e = pfile.to_set(&space).context("point set")?;
            let f = ffile.to_set(&space).context("plane set")?;
            vec![check_instance(&space, &e, &f, options.corrupt_nu, 0)]
        }
        Source::Full => {
            config.validate()?;
            let fields = contexts(config)?;
            let mut out = Vec::new();
            for f in &fields {
                for &d in &config.dims {
                    let space = Space::new(f, d)?;
                    let (e, planes) = full_configuration(&space);
                    out.push(check_instance(&space, &e, &planes, options.corrupt_nu, out.len()));
                }
            }
            out
        }
        Source::Random => {
            config.validate()?;
            let fields = contexts(config)?;
            let jobs = jobs(config, &fields, false)?;
            run_jobs(config, &fields, &jobs, options.corrupt_nu)?
        }
    };
    let (rows, summary) = fold(&results);
    Ok(Outcome {
        files: vec![("report.csv".into(), csv_bytes("report", &rows)?)],
        summary,
    })
}

#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize)]
pub struct CellRow {
    pub q: u32,
    pub d: usize,
    pub e_size: usize,
    pub f_size: usize,
    /// `|E||F| > q^{d+1}`.
    pub hypothesis: bool,
    pub trials: usize,
    pub min_distinct_all: usize,
    pub mean_distinct_all: String,
    pub min_distinct_nonzero: usize,
    pub mean_distinct_nonzero: String,
    pub max_bound_num: i128,
    pub max_bound_den: i128,
    pub pass: bool,
}

fn mean(values: impl Iterator<Item = usize>, n: usize) -> String {
    format!("{:.3}", values.sum::<usize>() as f64 / n as f64)
}

/// Grid of `(|E|, |F|)` cells with `trials` instances each. Without explicit
/// sizes the grid is five evenly spaced sizes per axis, which crosses the
/// hypothesis threshold.
pub fn run_sweep(config: &SweepConfig) -> anyhow::Result<Outcome> {
    config.validate()?;
    let fields = contexts(config)?;
    let jobs = jobs(config, &fields, true)?;
    let results = run_jobs(config, &fields, &jobs, false)?;
    let (rows, summary) = fold(&results);

    let mut cells: BTreeMap<(usize, usize, usize, usize), Vec<&ReportRow>> = BTreeMap::new();
    for (job, r) in jobs.iter().zip(&results) {
        if let (Some((e, m)), Some(row)) = (job.sizes, &r.row) {
            cells.entry((job.field, job.dim, e, m)).or_default().push(row);
        }
    }
    let cell_rows: Vec<CellRow> = cells
        .values()
        .map(|rs| {
            let n = rs.len();
            let max_bound = rs.iter().map(|r| Ratio::new(r.bound_num, r.bound_den)).max().expect("non-empty cell");
            CellRow {
                q: rs[0].q,
                d: rs[0].d,
                e_size: rs[0].e_size,
                f_size: rs[0].f_size,
                hypothesis: rs[0].hypothesis,
                trials: n,
                min_distinct_all: rs.iter().map(|r| r.distinct_all).min().unwrap_or(0),
                mean_distinct_all: mean(rs.iter().map(|r| r.distinct_all), n),
                min_distinct_nonzero: rs.iter().map(|r| r.distinct_nonzero).min().unwrap_or(0),
                mean_distinct_nonzero: mean(rs.iter().map(|r| r.distinct_nonzero), n),
                max_bound_num: *max_bound.numer(),
                max_bound_den: *max_bound.denom(),
                pass: rs.iter().all(|r| r.pass),
            }
        })
        .collect();
    Ok(Outcome {
        files: vec![
            ("report.csv".into(), csv_bytes("report", &rows)?),
            ("cells.csv".into(), csv_bytes("cells", &cell_rows)?),
        ],
        summary,
    })
}

#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize)]
pub struct SharpnessRow {
    pub p: u32,
    pub q: u32,
    pub d: usize,
    pub e_size: usize,
    pub f_size: usize,
    pub distinct_all: usize,
    pub distinct_nonzero: usize,
    /// Distances outside the embedded prime subfield.
    pub outside_subfield: usize,
    pub bound_num: i128,
    pub bound_den: i128,
    pub pass: bool,
}

/// Subfield construction over `F_{p²}` for each prime `p` in the config.
pub fn run_sharpness(config: &SweepConfig) -> anyhow::Result<Outcome> {
    let mut summary = Summary::default();
    let mut worst = None;
    let mut rows = Vec::new();
    for (spec, d) in config.spaces() {
        if spec.k != 1 {
            bail!("sharpness takes a prime p (the field is F_{{p²}}), got {spec}");
        }
        let sharp = subfield_sharpness(spec.p, d, u128::from(config.budget))?;
        let space = sharp.space();
        let f = space.field();
        let name = format!("sharpness p={} d={d}", spec.p);
        let report = fqdist::distance::verify_theorem(&space, &sharp.points, &sharp.planes)?;
        let outside = f
            .elements()
            .filter(|&r| report.nu.get(r) > 0 && !f.in_prime_subfield(r))
            .count();
        let mut verdicts = report.verdicts.clone();
        verdicts.push(Verdict::eq("subfield_closure", outside as i128, 0i128, 0));
        verdicts.push(Verdict::le(
            "distinct_nonzero_at_most_p_minus_1",
            report.distinct_nonzero as i128,
            i128::from(spec.p) - 1,
            0,
        ));
        for v in verdicts.iter().filter(|v| !v.pass) {
            summary.fail(format!("{name}: {v}"));
        }
        summary.instances += 1;
        summary.note_slack(report.bound_slack(), &mut worst);
        rows.push(SharpnessRow {
            p: spec.p,
            q: f.order(),
            d,
            e_size: report.e_size,
            f_size: report.f_size,
            distinct_all: report.distinct_all,
            distinct_nonzero: report.distinct_nonzero,
            outside_subfield: outside,
            bound_num: *report.bound.numer(),
            bound_den: *report.bound.denom(),
            pass: verdicts.iter().all(|v| v.pass),
        });
    }
    Ok(Outcome {
        files: vec![("sharpness.csv".into(), csv_bytes("sharpness", &rows)?)],
        summary,
    })
}

#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize)]
pub struct FourierRow {
    pub q: u32,
    pub d: usize,
    pub instance: usize,
    pub check: String,
    pub relation: String,
    pub lhs: String,
    pub rhs: String,
    pub cleared_power_of_q: u32,
    pub pass: bool,
}

fn fourier_row(space: &Space<'_>, instance: usize, v: &Verdict) -> FourierRow {
    FourierRow {
        q: space.field().order(),
        d: space.dim(),
        instance,
        check: v.check.clone(),
        relation: match v.relation {
            Relation::Eq => "eq".into(),
            Relation::Le => "le".into(),
        },
        lhs: v.lhs.to_string(),
        rhs: v.rhs.to_string(),
        cleared_power_of_q: v.cleared_power_of_q,
        pass: v.pass,
    }
}

/// Per space: `trials` random point sets through Plancherel and inversion,
/// then `trials` random instances through the energy identities and the
/// second-moment bounds.
pub fn run_fourier_test(config: &SweepConfig) -> anyhow::Result<Outcome> {
    config.validate()?;
    let fields = contexts(config)?;
    let mut work = Vec::new();
    for (fi, f) in fields.iter().enumerate() {
        for &d in &config.dims {
            Space::new(f, d)?;
            for kind in [false, true] {
                for _ in 0..config.trials {
                    work.push((fi, d, kind, derive_seed(config.seed, work.len() as u64)));
                }
            }
        }
    }
    let per: Vec<(Vec<FourierRow>, Vec<String>)> = work
        .par_iter()
        .enumerate()
        .map(|(i, &(fi, d, instance, seed))| -> anyhow::Result<_> {
            let space = Space::new(&fields[fi], d)?;
            let name = label(&space, i);
            let mut verdicts = Vec::new();
            let mut errors = Vec::new();
            if instance {
                let inst = random_instance(&space, seed, config.hypothesis)?;
                match energy_identity_check(&space, &inst.points, &inst.planes) {
                    Ok(r) => verdicts.extend(r.verdicts),
                    Err(e) => errors.push(format!("{name}: {e}")),
                }
                verdicts.extend(fqdist::distance::second_moment_check(&space, &inst.points, &inst.planes)?);
            } else {
                let mut rng = SeededRng::new(seed);
                let n = rng.between(1, space.size());
                let set = constructions::random_point_set(&space, n, rng.next_u64())?;
                verdicts.push(plancherel_check(&space, &set));
                verdicts.push(inversion_check(&space, &set));
            }
            errors.extend(verdicts.iter().filter(|v| !v.pass).map(|v| format!("{name}: {v}")));
            Ok((verdicts.iter().map(|v| fourier_row(&space, i, v)).collect(), errors))
        })
        .collect::<anyhow::Result<_>>()?;

    let mut summary = Summary::default();
    let mut rows = Vec::new();
    for (r, errors) in per {
        summary.instances += 1;
        rows.extend(r);
        for e in errors {
            summary.fail(e);
        }
    }
    Ok(Outcome {
        files: vec![("fourier.csv".into(), csv_bytes("fourier", &rows)?)],
        summary,
    })
}

#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize)]
pub struct OrbitRow {
    pub q: u32,
    pub d: usize,
    pub group_order: usize,
    pub e_size: usize,
    pub f_size: usize,
    /// Ordered pairs of configurations with the same nonzero distance.
    pub witness_checks: usize,
    pub witness_failures: usize,
    /// `(motion, point, plane)` triples checked for distance preservation.
    pub motion_checks: usize,
    pub motion_failures: usize,
    pub orbit_count: usize,
    pub distinct_nonzero: usize,
    pub pass: bool,
}

/// Counts configurations `(x, h)` with equal nonzero distance that no rigid
/// motion relates.
fn witness_failures(space: &Space<'_>, group: &[fqdist::geometry::OrthogonalMatrix], classes: &[Vec<(&Vector, &Hyperplane)>]) -> anyhow::Result<(usize, usize)> {
    let mut checks = 0;
    let mut failures = 0;
    for class in classes {
        for (i, (x, h)) in class.iter().enumerate() {
            for (x2, h2) in &class[i + 1..] {
                checks += 1;
                let found = space.equivalent_configs_in(group, x, h, x2, h2)?;
                let ok = found.is_some_and(|m| {
                    m.apply(space, x) == **x2 && space.plane_points(&m.apply_plane(space, h)) == space.plane_points(h2)
                });
                failures += usize::from(!ok);
            }
        }
    }
    Ok((checks, failures))
}

/// Exhaustive rigid-motion checks: every motion preserves distance, and any
/// two configurations with the same nonzero distance are related by one.
/// Spaces where `q^{d²}` or the pair work exceeds the budget are skipped.
pub fn run_orbit_check(config: &SweepConfig) -> anyhow::Result<Outcome> {
    config.validate()?;
    let fields = contexts(config)?;
    let budget = u128::from(config.budget);
    let mut summary = Summary::default();
    let mut rows = Vec::new();
    for f in &fields {
        for &d in &config.dims {
            let space = Space::new(f, d)?;
            let name = format!("orbit check q={} d={d}", f.order());
            let scan = space.orthogonal_scan_size();
            if scan > budget {
                summary.skip(format!("{name}: q^(d^2) = {scan} exceeds budget {budget}"));
                continue;
            }
            let group = space.orthogonal_group(budget)?;
            let (points, planes) = instance_for(config, &space)?;

            let configs: Vec<(&Vector, &Hyperplane)> = points
                .points()
                .iter()
                .flat_map(|x| planes.planes().iter().map(move |h| (x, h)))
                .collect();
            let motion_work = (group.len() * space.size() * configs.len()) as u128;
            let mut by_distance: BTreeMap<_, Vec<(&Vector, &Hyperplane)>> = BTreeMap::new();
            for &(x, h) in &configs {
                let r = space.plane_distance(x, h)?;
                if r != f.zero() {
                    by_distance.entry(r).or_default().push((x, h));
                }
            }
            let classes: Vec<_> = by_distance.into_values().collect();
            let pair_work: u128 = classes.iter().map(|c| (c.len() * c.len()) as u128).sum::<u128>() * group.len() as u128;
            if motion_work > budget || pair_work > budget {
                summary.skip(format!(
                    "{name}: {} motion checks and {} witness scans exceed budget {budget}",
                    motion_work, pair_work
                ));
                continue;
            }

            let shifts: Vec<Vector> = space.points().collect();
            let motion_failures: usize = group
                .par_iter()
                .map(|m| {
                    let mut bad = 0;
                    for tau in &shifts {
                        let motion = fqdist::geometry::RigidMotion {
                            rotation: m.clone(),
                            shift: tau.clone(),
                        };
                        for &(x, h) in &configs {
                            let before = space.plane_distance(x, h).expect("non-degenerate");
                            let after = space
                                .plane_distance(&motion.apply(&space, x), &motion.apply_plane(&space, h))
                                .expect("motions keep planes non-degenerate");
                            bad += usize::from(before != after);
                        }
                    }
                    bad
                })
                .sum();
            let (witness_checks, witness_failures) = witness_failures(&space, &group, &classes)?;
            let orbit_count = orbit_count_in(&space, &group, &points, &planes)?;
            let distinct_nonzero = nu_counts(&space, &points, &planes)?.distinct_nonzero();

            let pass = motion_failures == 0 && witness_failures == 0;
            if motion_failures > 0 {
                summary.fail(format!("{name}: {motion_failures} motions changed a distance"));
            }
            if witness_failures > 0 {
                summary.fail(format!("{name}: {witness_failures} equal-distance pairs without a witness"));
            }
            summary.instances += 1;
            rows.push(OrbitRow {
                q: f.order(),
                d,
                group_order: group.len(),
                e_size: points.len(),
                f_size: planes.len(),
                witness_checks,
                witness_failures,
                motion_checks: motion_work as usize,
                motion_failures,
                orbit_count,
                distinct_nonzero,
                pass,
            });
        }
    }
    Ok(Outcome {
        files: vec![("orbits.csv".into(), csv_bytes("orbits", &rows)?)],
        summary,
    })
}

/// The full configuration, or seeded random sets when sizes are configured.
fn instance_for(config: &SweepConfig, space: &Space<'_>) -> anyhow::Result<(PointSet, PlaneSet)> {
    match (config.e_sizes.first(), config.f_sizes.first()) {
        (Some(&e), Some(&m)) => {
            let inst = sized_instance(space, e, m, config.seed)?;
            Ok((inst.points, inst.planes))
        }
        _ => Ok(full_configuration(space)),
    }
}

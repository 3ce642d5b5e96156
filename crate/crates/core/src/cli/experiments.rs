//! The named experiments. Each one samples what it needs, compares it with
//! the closed-form oracles and returns a [`Report`].

use std::collections::BTreeMap;
use std::f64::consts::PI;

use super::config::{Experiment, ExperimentConfig};
use super::report::{Report, Table, Verdict};
use crate::analytic::{
    anchor_gap_correlation, db_to_linear, mean_area_approximation, mean_area_quadrature, misr_ppp, oned_backward_cdf,
    oned_means, serving_signal_ccdf, shadowing_ccdf, shadowing_moments, standard_ppp_moment,
    zero_cell::second_moment_approximation, zero_cell_joint_pdf, zero_directional_moment, zero_pair_correlations,
    zero_uniform_angle_mean, DistributionSpec, Family, ShadowedLink,
};
use crate::error::Result;
use crate::geometry::{sample_cell_batch, sample_oned_typical_cell, AngleGrid, CellBatch, CellKind, CellSampler};
use crate::network::{
    estimate_gain, meta_distribution, normalized_count_means, ordered_radii_samples, path_loss_convergence,
    serving_power_samples, Deployment, GainEstimate, JspConfig, MetaTable, OrderedRadius, ShadowingMode,
};
use crate::seed::derive_seed;
use crate::stats::{moment_of, ratio_of_means, EmpiricalDistribution, Estimate, PairAccumulator};

/// KS limit for distance laws at 10⁶ samples.
pub const KS_LIMIT: f64 = 0.005;
/// KS limit for the lattice serving-signal law.
pub const LATTICE_KS_LIMIT: f64 = 0.02;
/// Points of the ECDF comparison tables.
const ECDF_POINTS: usize = 41;
/// Intervals used to tabulate cdfs that need quadrature.
const TABULATION_INTERVALS: usize = 600;

const TYPICAL_LABEL: u64 = 1;
const ZERO_LABEL: u64 = 2;
const ORDERED_LABEL: u64 = 3;

/// Simulated Table I entries for the typical cell (in units of `1/√λ`).
pub const TYPICAL_FORWARD_MEAN: f64 = 0.67;
pub const TYPICAL_BACKWARD_MEAN: f64 = 0.432;
pub const TYPICAL_ANCHOR_MEAN: f64 = 0.447;
pub const ZERO_SIDES_MEAN: f64 = 6.41;
/// Published value of the zero-cell mean area (units of `1/λ`).
pub const ZERO_AREA_MEAN: f64 = 1.280_176;
/// Published value of the mean-area approximation.
pub const ZERO_AREA_APPROXIMATION: f64 = 1.2869;
/// Published value of `E R̄₀` (units of `1/√λ`).
pub const ZERO_UNIFORM_ANGLE_MEAN: f64 = 0.5753;

pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Report> {
    match cfg.experiment {
        Experiment::CellMoments => {
            let typical = cell_batch(cfg, CellKind::Typical)?;
            let zero = cell_batch(cfg, CellKind::Zero)?;
            cell_moments(cfg, &typical, &zero)
        }
        Experiment::CellDistributions => {
            let typical = cell_batch(cfg, CellKind::Typical)?;
            let zero = cell_batch(cfg, CellKind::Zero)?;
            let ordered = ordered_radii(cfg, 3)?;
            cell_distributions(cfg, &typical, &zero, &ordered)
        }
        Experiment::ZeroCellJoint => zero_cell_joint(cfg, &cell_batch(cfg, CellKind::Zero)?),
        Experiment::ShadowingLaws => shadowing_laws(cfg),
        Experiment::ServingSignal => serving_signal(cfg),
        Experiment::GainSweep => gain_sweep(cfg),
        Experiment::MetaDistribution => meta(cfg),
        Experiment::PathLossConvergence => path_loss(cfg),
        Experiment::OnedAppendix => oned_appendix(cfg),
    }
}

/// Batch of cells of one kind; typical and zero cells use independent seeds.
pub fn cell_batch(cfg: &ExperimentConfig, kind: CellKind) -> Result<CellBatch> {
    let sampler = CellSampler::new(cfg.intensity)?.with_grid(AngleGrid::new(cfg.grid_size));
    let label = match kind {
        CellKind::Typical => TYPICAL_LABEL,
        CellKind::Zero => ZERO_LABEL,
    };
    sample_cell_batch(&sampler, kind, cfg.replicates, derive_seed(cfg.seed, label))
}

/// `(‖x_i‖, r(x_i))` for `i = 0, …, max_index` in PPP deployments.
pub fn ordered_radii(cfg: &ExperimentConfig, max_index: usize) -> Result<Vec<Vec<OrderedRadius>>> {
    ordered_radii_samples(
        cfg.intensity,
        Deployment::Ppp,
        max_index,
        cfg.replicates,
        derive_seed(cfg.seed, ORDERED_LABEL),
    )
}

fn kind_name(kind: CellKind) -> &'static str {
    match kind {
        CellKind::Typical => "typical",
        CellKind::Zero => "zero",
    }
}

fn mean_estimate(values: impl IntoIterator<Item = f64>) -> Result<Estimate> {
    moment_of(values)
}

/// Compares a sample with a cdf: records the KS distance, a verdict and an
/// ECDF comparison on an even grid up to the 99.9% quantile.
fn ks_check<F: Fn(f64) -> f64>(
    report: &mut Report,
    ecdf: &mut Table,
    law: &str,
    samples: Vec<f64>,
    cdf: F,
    limit: f64,
) -> Result<f64> {
    let emp = EmpiricalDistribution::new(samples)?;
    let d = emp.ks_distance(&cdf);
    let (lo, hi) = (emp.quantile(0.0).min(0.0), emp.quantile(0.999));
    for k in 0..ECDF_POINTS {
        let y = lo + (hi - lo) * k as f64 / (ECDF_POINTS - 1) as f64;
        ecdf.push(vec![law.into(), y.into(), emp.ecdf(y).into(), cdf(y).into()]);
    }
    report.value(format!("ks:{law}"), d);
    report.verdict(Verdict::below(format!("ks:{law}"), d, limit));
    Ok(d)
}

/// Exact cdf for cheap families and a tabulated one for quadrature-based
/// families, covering every sample.
fn law_cdf(family: Family, intensity: f64, max_sample: f64) -> Result<Box<dyn Fn(f64) -> f64 + Send + Sync>> {
    let spec = DistributionSpec::new(family, intensity)?;
    match family {
        Family::ZeroDirectional { .. } | Family::ZeroUniformAngle => {
            let table = spec.tabulate(max_sample * 1.001, TABULATION_INTERVALS)?;
            Ok(Box::new(move |y| table.cdf(y)))
        }
        _ => {
            spec.cdf(1.0)?;
            Ok(Box::new(move |y| spec.cdf(y).expect("validated family")))
        }
    }
}

fn max_of(v: &[f64]) -> f64 {
    v.iter().copied().fold(0.0, f64::max)
}

pub fn cell_moments(cfg: &ExperimentConfig, typical: &CellBatch, zero: &CellBatch) -> Result<Report> {
    let lam = cfg.intensity;
    let unit = 1.0 / lam.sqrt();
    let mut report = Report {
        discarded: typical.discarded + zero.discarded,
        ..Report::default()
    };
    let mut table = Table::new(
        "moments",
        &["cell", "quantity", "mean", "std_error", "reference", "reference_source"],
    );

    let spec_mean = |f: Family| DistributionSpec::new(f, lam).and_then(|s| s.mean());
    type Quantity = (&'static str, fn(&crate::geometry::CellRecord) -> f64);
    let quantities: [Quantity; 7] = [
        ("forward_radius", |r| r.forward),
        ("backward_radius", |r| r.backward),
        ("anchor_distance", |r| r.anchor),
        ("sides", |r| r.sides as f64),
        ("area", |r| r.area),
        ("uniform_angle_radius", |r| r.uniform_angle_radius),
        ("min_edge_distance", |r| r.min_edge_distance),
    ];
    let typical_refs: [(Option<f64>, &str); 7] = [
        (Some(TYPICAL_FORWARD_MEAN * unit), "published simulation"),
        (Some(TYPICAL_BACKWARD_MEAN * unit), "published simulation"),
        (Some(TYPICAL_ANCHOR_MEAN * unit), "published simulation"),
        (Some(6.0), "exact"),
        (Some(1.0 / lam), "exact"),
        (Some(spec_mean(Family::TypicalUniformAngle)?), "closed form"),
        (Some(spec_mean(Family::MinEdgeDistance)?), "closed form"),
    ];
    let zero_refs: [(Option<f64>, &str); 7] = [
        (Some(spec_mean(Family::ZeroForward)?), "closed form"),
        (Some(spec_mean(Family::ZeroBackward)?), "closed form"),
        (Some(spec_mean(Family::ZeroBackward)?), "closed form"),
        (Some(ZERO_SIDES_MEAN), "published simulation"),
        (Some(mean_area_quadrature(lam)?.quadrature), "quadrature"),
        (Some(zero_uniform_angle_mean(lam)?), "quadrature"),
        (None, ""),
    ];
    let mut means = BTreeMap::new();
    for (batch, refs) in [(typical, &typical_refs), (zero, &zero_refs)] {
        let cell = kind_name(batch.kind);
        for ((name, get), (reference, source)) in quantities.iter().zip(refs.iter()) {
            let est = mean_estimate(batch.records.iter().map(get))?;
            table.push(vec![
                cell.into(),
                (*name).into(),
                est.value.into(),
                est.std_error.into(),
                (*reference).into(),
                (*source).into(),
            ]);
            report.estimate(format!("{cell}:{name}"), est);
            means.insert((cell, *name), (est.value, *reference));
        }
    }
    let mut check = |cell: &'static str, name: &'static str, tol: f64| {
        let (value, reference) = means[&(cell, name)];
        report.verdict(Verdict::within(
            format!("mean:{cell}:{name}"),
            value,
            reference.expect("reference"),
            tol,
        ));
    };
    check("zero", "forward_radius", 0.005 * unit);
    check("zero", "backward_radius", 0.005 * unit);
    check("zero", "anchor_distance", 0.005 * unit);
    check("typical", "forward_radius", 0.01 * unit);
    check("typical", "backward_radius", 0.01 * unit);
    check("typical", "anchor_distance", 0.01 * unit);
    check("typical", "sides", 0.01);
    check("zero", "sides", 0.05);
    report.tables.push(table);
    report.tables.push(directional_table(cfg, typical, zero)?);
    Ok(report)
}

/// Per-angle first and second moments of the directional radius, with the
/// zero-cell oracles.
fn directional_table(cfg: &ExperimentConfig, typical: &CellBatch, zero: &CellBatch) -> Result<Table> {
    let mut table = Table::new(
        "directional_moments",
        &[
            "cell",
            "angle",
            "mean_radius",
            "std_error",
            "mean_square_radius",
            "square_std_error",
            "oracle_mean",
            "oracle_mean_square",
        ],
    );
    let mut cache: BTreeMap<u64, (f64, f64)> = BTreeMap::new();
    for batch in [typical, zero] {
        let g = &batch.grid;
        for (k, &angle) in g.angles.iter().enumerate() {
            let (m1, m2) = (g.first[k].estimate()?, g.second[k].estimate()?);
            let oracle = if batch.kind == CellKind::Zero {
                // R₀(φ) and R₀(−φ) are equal in law.
                let folded = if angle > PI { 2.0 * PI - angle } else { angle };
                let key = folded.to_bits();
                if let std::collections::btree_map::Entry::Vacant(e) = cache.entry(key) {
                    let v = (
                        zero_directional_moment(folded, 1.0, cfg.intensity)?,
                        zero_directional_moment(folded, 2.0, cfg.intensity)?,
                    );
                    e.insert(v);
                }
                Some(cache[&key])
            } else {
                None
            };
            table.push(vec![
                kind_name(batch.kind).into(),
                angle.into(),
                m1.value.into(),
                m1.std_error.into(),
                m2.value.into(),
                m2.std_error.into(),
                oracle.map(|o| o.0).into(),
                oracle.map(|o| o.1).into(),
            ]);
        }
    }
    Ok(table)
}

pub fn cell_distributions(
    cfg: &ExperimentConfig,
    typical: &CellBatch,
    zero: &CellBatch,
    ordered: &[Vec<OrderedRadius>],
) -> Result<Report> {
    let lam = cfg.intensity;
    let mut report = Report {
        discarded: typical.discarded + zero.discarded,
        ..Report::default()
    };
    let mut ecdf = Table::new("ecdf", &["law", "y", "empirical_cdf", "analytic_cdf"]);
    let mut laws: Vec<(&str, Vec<f64>, Family)> = vec![
        (
            "typical_uniform_angle_radius",
            typical.column(|r| r.uniform_angle_radius),
            Family::TypicalUniformAngle,
        ),
        (
            "typical_min_edge_distance",
            typical.column(|r| r.min_edge_distance),
            Family::MinEdgeDistance,
        ),
        ("zero_forward_radius", zero.column(|r| r.forward), Family::ZeroForward),
        (
            "zero_backward_radius",
            zero.column(|r| r.backward),
            Family::ZeroBackward,
        ),
        ("zero_anchor_distance", zero.column(|r| r.anchor), Family::ZeroBackward),
        (
            "zero_forward_gap",
            zero.column(|r| r.forward - r.anchor),
            Family::ZeroGap,
        ),
        (
            "zero_uniform_angle_radius",
            zero.column(|r| r.uniform_angle_radius),
            Family::ZeroUniformAngle,
        ),
        (
            "zero_anchor_ratio",
            zero.column(|r| r.anchor / r.forward),
            Family::RatioLaw,
        ),
    ];
    for i in 1..=3u32 {
        let name = ["ordered_ratio_1", "ordered_ratio_2", "ordered_ratio_3"][i as usize - 1];
        let v = ordered.iter().map(|o| o[i as usize].ratio()).collect();
        laws.push((name, v, Family::OrderedRatioLaw { index: i }));
    }
    let mut ks = Table::new("ks", &["law", "samples", "ks_distance", "limit"]);
    for (name, samples, family) in laws {
        let n = samples.len();
        let cdf = law_cdf(family, lam, max_of(&samples))?;
        let d = ks_check(&mut report, &mut ecdf, name, samples, cdf, KS_LIMIT)?;
        ks.push(vec![name.into(), n.into(), d.into(), KS_LIMIT.into()]);
    }
    report.tables.push(ks);
    report.tables.push(ecdf);
    Ok(report)
}

pub fn zero_cell_joint(cfg: &ExperimentConfig, zero: &CellBatch) -> Result<Report> {
    let lam = cfg.intensity;
    let unit = 1.0 / lam.sqrt();
    let mut report = Report {
        discarded: zero.discarded,
        ..Report::default()
    };
    let mut table = Table::new("joint", &["quantity", "value", "std_error", "reference"]);
    let forward = zero.column(|r| r.forward);
    let anchor = zero.column(|r| r.anchor);
    let gap: Vec<f64> = forward.iter().zip(&anchor).map(|(f, a)| f - a).collect();

    let mut acc = PairAccumulator::default();
    anchor.iter().zip(&gap).for_each(|(&a, &g)| acc.push(a, g));
    let rho = acc.correlation()?;
    let mut acc = PairAccumulator::default();
    forward.iter().zip(&gap).for_each(|(&f, &g)| acc.push(f, g));
    let rho_forward = acc.correlation()?;
    let exact = zero_pair_correlations()?;
    let rel_gap = mean_estimate(gap.iter().zip(&anchor).map(|(g, a)| g / a))?;
    let ratio = ratio_of_means(&gap, &anchor)?;
    let area = mean_estimate(zero.records.iter().map(|r| r.area))?;
    let area_exact = mean_area_quadrature(lam)?;
    let ubar = mean_estimate(zero.records.iter().map(|r| r.uniform_angle_radius))?;
    let ubar_exact = zero_uniform_angle_mean(lam)?;

    let rows: [(&str, Estimate, f64); 8] = [
        ("correlation_anchor_gap", rho, anchor_gap_correlation()),
        ("correlation_forward_gap", rho_forward, exact.forward_gap),
        ("mean_gap_over_anchor", rel_gap, 1.0),
        ("ratio_of_mean_gap_to_mean_anchor", ratio, 0.5),
        ("mean_area", area, area_exact.quadrature),
        (
            "mean_area_quadrature",
            Estimate {
                value: area_exact.quadrature,
                std_error: 0.0,
            },
            ZERO_AREA_MEAN / lam,
        ),
        (
            "mean_area_approximation",
            Estimate {
                value: area_exact.approximation,
                std_error: 0.0,
            },
            ZERO_AREA_APPROXIMATION / lam,
        ),
        ("mean_uniform_angle_radius", ubar, ubar_exact),
    ];
    for (name, est, reference) in rows {
        table.push(vec![
            name.into(),
            est.value.into(),
            est.std_error.into(),
            reference.into(),
        ]);
        report.estimate(name, est);
    }
    report.value("mean_uniform_angle_radius_quadrature", ubar_exact);
    report.verdict(Verdict::within(
        "correlation_anchor_gap",
        rho.value,
        anchor_gap_correlation(),
        0.005,
    ));
    report.verdict(Verdict::within(
        "correlation_forward_gap",
        rho_forward.value,
        exact.forward_gap,
        0.005,
    ));
    report.verdict(Verdict::within("mean_gap_over_anchor", rel_gap.value, 1.0, 0.02));
    report.verdict(Verdict::within(
        "ratio_of_mean_gap_to_mean_anchor",
        ratio.value,
        0.5,
        0.01,
    ));
    report.verdict(Verdict::within(
        "mean_area_simulation",
        area.value,
        ZERO_AREA_MEAN / lam,
        0.01 / lam,
    ));
    report.verdict(Verdict::within(
        "mean_area_quadrature",
        area_exact.quadrature,
        ZERO_AREA_MEAN / lam,
        0.0005 / lam,
    ));
    report.verdict(Verdict::within(
        "mean_area_approximation",
        mean_area_approximation(lam),
        ZERO_AREA_APPROXIMATION / lam,
        0.5e-4 / lam,
    ));
    report.verdict(Verdict::within(
        "mean_uniform_angle_radius_quadrature",
        ubar_exact,
        ZERO_UNIFORM_ANGLE_MEAN * unit,
        5e-4 * unit,
    ));
    report.tables.push(table);
    report.tables.push(area_by_angle(cfg, zero)?);
    report.tables.push(joint_histogram(cfg, &anchor, &forward)?);
    Ok(report)
}

/// `E R₀²(φ)` on `[0, π]`: simulation, quadrature and the `c(φ)`
/// approximation.
fn area_by_angle(cfg: &ExperimentConfig, zero: &CellBatch) -> Result<Table> {
    let mut table = Table::new(
        "second_moment_by_angle",
        &["angle", "simulated", "std_error", "quadrature", "approximation"],
    );
    let g = &zero.grid;
    for (k, &angle) in g.angles.iter().enumerate().filter(|(_, a)| **a <= PI) {
        let est = g.second[k].estimate()?;
        table.push(vec![
            angle.into(),
            est.value.into(),
            est.std_error.into(),
            zero_directional_moment(angle, 2.0, cfg.intensity)?.into(),
            second_moment_approximation(angle, cfg.intensity).into(),
        ]);
    }
    Ok(table)
}

/// Histogram density of `(D₀, R₀(0))` against the joint density at bin centers.
fn joint_histogram(cfg: &ExperimentConfig, anchor: &[f64], forward: &[f64]) -> Result<Table> {
    const BINS: usize = 16;
    let unit = 1.0 / cfg.intensity.sqrt();
    let (xmax, ymax) = (1.2 * unit, 1.6 * unit);
    let (hx, hy) = (xmax / BINS as f64, ymax / BINS as f64);
    let mut counts = vec![0u64; BINS * BINS];
    for (&x, &y) in anchor.iter().zip(forward) {
        let (i, j) = ((x / hx) as usize, (y / hy) as usize);
        if i < BINS && j < BINS {
            counts[i * BINS + j] += 1;
        }
    }
    let n = anchor.len() as f64;
    let mut table = Table::new(
        "joint_density",
        &["anchor_distance", "forward_radius", "histogram_density", "density"],
    );
    for i in 0..BINS {
        for j in 0..BINS {
            let (x, y) = ((i as f64 + 0.5) * hx, (j as f64 + 0.5) * hy);
            let density = if y >= x {
                zero_cell_joint_pdf(0.0, x, y, cfg.intensity)?
            } else {
                0.0
            };
            table.push(vec![
                x.into(),
                y.into(),
                (counts[i * BINS + j] as f64 / (n * hx * hy)).into(),
                density.into(),
            ]);
        }
    }
    Ok(table)
}

pub fn shadowing_laws(cfg: &ExperimentConfig) -> Result<Report> {
    let (lam, alpha) = (cfg.intensity, cfg.path_loss_exponent);
    let p0 = cfg.edge_power_for(alpha);
    let radii = ordered_radii(cfg, 1)?;
    let k0: Vec<f64> = radii.iter().map(|o| p0 * o[0].radius.powf(alpha)).collect();
    let k1: Vec<f64> = radii.iter().map(|o| p0 * o[1].radius.powf(alpha)).collect();
    let mut report = Report::default();
    let mut ecdf = Table::new("shadowing_cdf", &["law", "y", "empirical_cdf", "analytic_cdf"]);
    let mut acc = PairAccumulator::default();
    k0.iter().zip(&k1).for_each(|(&a, &b)| acc.push(a, b));
    report.estimate("correlation_serving_interferer", acc.correlation()?);
    let exact = shadowing_moments(lam, p0, alpha)?;
    let mut table = Table::new(
        "shadowing_moments",
        &[
            "link",
            "mean",
            "std_error",
            "variance",
            "oracle_mean",
            "oracle_variance",
        ],
    );
    for (link, name, samples, mean, var, rel_tol) in [
        (
            ShadowedLink::Serving,
            "serving",
            k0,
            exact.serving_mean,
            exact.serving_variance,
            0.05 / 6.0,
        ),
        (
            ShadowedLink::Interferer,
            "interferer",
            k1,
            exact.interferer_mean,
            exact.interferer_variance,
            0.02 / 2.0,
        ),
    ] {
        let est = mean_estimate(samples.iter().copied())?;
        let sample_var = est.std_error.powi(2) * samples.len() as f64;
        table.push(vec![
            name.into(),
            est.value.into(),
            est.std_error.into(),
            sample_var.into(),
            mean.into(),
            var.into(),
        ]);
        report.estimate(format!("mean:{name}"), est);
        report.verdict(Verdict::within(format!("mean:{name}"), est.value, mean, rel_tol * mean));
        let cdf = move |t: f64| 1.0 - shadowing_ccdf(link, t, lam, p0, alpha).expect("validated parameters");
        ks_check(&mut report, &mut ecdf, name, samples, cdf, KS_LIMIT)?;
    }
    report.tables.push(table);
    report.tables.push(ecdf);
    Ok(report)
}

pub fn serving_signal(cfg: &ExperimentConfig) -> Result<Report> {
    let alpha = cfg.path_loss_exponent;
    let p0 = cfg.edge_power_for(alpha);
    let samples = serving_power_samples(
        cfg.intensity,
        cfg.deployment,
        p0,
        alpha,
        cfg.replicates,
        derive_seed(cfg.seed, ORDERED_LABEL),
    )?;
    let mut report = Report::default();
    let emp = EmpiricalDistribution::new(samples)?;
    let cdf = |t: f64| 1.0 - serving_signal_ccdf(t, p0, alpha).expect("validated parameters");
    let d = emp.ks_distance(cdf);
    let limit = match cfg.deployment {
        Deployment::Ppp => KS_LIMIT,
        Deployment::Triangular => LATTICE_KS_LIMIT,
    };
    report.value("ks:serving_power", d);
    report.verdict(Verdict::below("ks:serving_power", d, limit));
    report.estimate(
        "mean_log_serving_power",
        mean_estimate(emp.samples().iter().map(|s| s.ln()))?,
    );
    let mut table = Table::new("serving_ccdf", &["t", "empirical_ccdf", "analytic_ccdf"]);
    let (lo, hi) = (emp.quantile(0.0).min(p0), emp.quantile(0.999));
    for k in 0..ECDF_POINTS {
        let t = lo * (hi / lo).powf(k as f64 / (ECDF_POINTS - 1) as f64);
        table.push(vec![t.into(), emp.ccdf(t).into(), (1.0 - cdf(t)).into()]);
    }
    report.tables.push(table);
    Ok(report)
}

/// Label of a model for tables and verdicts.
pub fn model_name(deployment: Deployment, mode: ShadowingMode) -> String {
    let m = match mode {
        ShadowingMode::Jsp => "jsp",
        ShadowingMode::IidLognormal => "iid",
        ShadowingMode::None => "standard",
    };
    let d = match deployment {
        Deployment::Ppp => "ppp",
        Deployment::Triangular => "triangular",
    };
    format!("{m}-{d}")
}

fn sigma_list(cfg: &ExperimentConfig, mode: ShadowingMode) -> Vec<f64> {
    if mode == ShadowingMode::None {
        vec![0.0]
    } else {
        cfg.sigmas.clone()
    }
}

fn is_alpha(alpha: f64, target: f64) -> bool {
    (alpha - target).abs() < 1e-12
}

pub fn gain_sweep(cfg: &ExperimentConfig) -> Result<Report> {
    let mut report = Report::default();
    let mut table = Table::new(
        "gain",
        &[
            "model",
            "alpha",
            "sigma",
            "misr",
            "misr_std_error",
            "misr_median_of_means",
            "far_field",
            "misr_tail_corrected",
            "misr_ppp",
            "gain_db",
            "gain_db_std_error",
            "replicates",
            "discarded",
        ],
    );
    let mut runs: Vec<(String, f64, f64, GainEstimate)> = Vec::new();
    let mut models = vec![(cfg.deployment, cfg.shadowing_mode)];
    let headline = cfg.deployment == Deployment::Ppp && cfg.shadowing_mode == ShadowingMode::Jsp;
    if headline {
        models.push((Deployment::Triangular, ShadowingMode::None));
    }
    for &(deployment, mode) in &models {
        for &alpha in &cfg.alphas {
            for sigma in sigma_list(cfg, mode) {
                let net = cfg.network_with(alpha, sigma, deployment, mode)?;
                let g = estimate_gain(&net, cfg.replicates, cfg.seed)?;
                report.discarded += g.discarded;
                let name = model_name(deployment, mode);
                table.push(vec![
                    name.clone().into(),
                    alpha.into(),
                    sigma.into(),
                    g.misr.value.into(),
                    g.misr.std_error.into(),
                    g.misr_median_of_means.into(),
                    g.far_field.into(),
                    g.misr_tail_corrected.into(),
                    misr_ppp(alpha)?.into(),
                    g.gain_db.into(),
                    g.gain_db_std_error.into(),
                    g.replicates.into(),
                    g.discarded.into(),
                ]);
                report.estimate(
                    format!("gain_db:{name}:alpha={alpha}:sigma={sigma}"),
                    Estimate {
                        value: g.gain_db,
                        std_error: g.gain_db_std_error,
                    },
                );
                runs.push((name, alpha, sigma, g));
            }
        }
    }
    let find = |name: &str, alpha: f64, sigma: f64| {
        runs.iter()
            .find(|r| r.0 == name && is_alpha(r.1, alpha) && r.2 == sigma)
            .map(|r| &r.3)
    };
    let configured = model_name(cfg.deployment, cfg.shadowing_mode);
    let sigmas = sigma_list(cfg, cfg.shadowing_mode);
    if let Some(g) = find("standard-ppp", 4.0, 0.0) {
        report.verdict(Verdict::within(
            "misr:standard-ppp:alpha=4",
            g.misr_tail_corrected,
            misr_ppp(4.0)?,
            0.01,
        ));
    }
    if let Some(g) = find("standard-triangular", 4.0, 0.0) {
        report.verdict(Verdict::within(
            "gain_db:standard-triangular:alpha=4",
            g.gain_db,
            3.4,
            0.15,
        ));
    }
    if cfg.alphas.len() > 1 && find("standard-triangular", cfg.alphas[0], 0.0).is_some() {
        let mut alphas = cfg.alphas.clone();
        alphas.sort_by(f64::total_cmp);
        let curve: Vec<f64> = alphas
            .iter()
            .map(|&a| find("standard-triangular", a, 0.0).expect("run").gain_db)
            .collect();
        let increasing = curve.windows(2).all(|w| w[1] > w[0]);
        report.verdict(Verdict::holds(
            "gain increasing in alpha:standard-triangular",
            curve[0],
            increasing,
        ));
    }
    if sigmas.len() > 1 {
        for &alpha in &cfg.alphas {
            let mut min_sep = f64::INFINITY;
            for w in sigmas.windows(2) {
                let (a, b) = (
                    find(&configured, alpha, w[0]).expect("run"),
                    find(&configured, alpha, w[1]).expect("run"),
                );
                let se = a.gain_db_std_error.hypot(b.gain_db_std_error);
                min_sep = min_sep.min((a.gain_db - b.gain_db) / se);
            }
            report.verdict(Verdict::holds(
                format!("gain decreasing in sigma by more than 2 standard errors:{configured}:alpha={alpha}"),
                min_sep,
                min_sep > 2.0,
            ));
        }
    }
    if headline {
        if let (Some(j), Some(l)) = (find("jsp-ppp", 4.0, 0.0), find("standard-triangular", 4.0, 0.0)) {
            report.verdict(Verdict::within(
                "gain_db:jsp-ppp sigma=0 vs standard-triangular:alpha=4",
                j.gain_db,
                l.gain_db,
                0.3,
            ));
        }
    }
    report.tables.push(table);
    Ok(report)
}

pub fn meta(cfg: &ExperimentConfig) -> Result<Report> {
    let alpha = cfg.path_loss_exponent;
    let mut report = Report::default();
    let mut ccdf = Table::new("meta", &["model", "sigma", "theta_db", "reliability", "ccdf"]);
    let mut moments = Table::new(
        "meta_moments",
        &[
            "model",
            "sigma",
            "theta_db",
            "m1",
            "m1_std_error",
            "m2",
            "m2_std_error",
            "m1_oracle",
            "m2_oracle",
        ],
    );
    let mut models = vec![(cfg.deployment, cfg.shadowing_mode)];
    let comparison = cfg.deployment == Deployment::Ppp && cfg.shadowing_mode == ShadowingMode::Jsp;
    if comparison {
        models.push((Deployment::Triangular, ShadowingMode::IidLognormal));
    }
    let mut tables: Vec<(String, f64, MetaTable)> = Vec::new();
    for &(deployment, mode) in &models {
        let name = model_name(deployment, mode);
        let standard_ppp = deployment == Deployment::Ppp && mode == ShadowingMode::None;
        for sigma in sigma_list(cfg, mode) {
            let net: JspConfig = cfg.network_with(alpha, sigma, deployment, mode)?;
            let t = meta_distribution(&net, &cfg.theta_db, &cfg.reliability, cfg.replicates, cfg.seed)?;
            report.discarded += t.discarded;
            for (i, &db) in t.theta_db.iter().enumerate() {
                for (j, &x) in t.reliability.iter().enumerate() {
                    ccdf.push(vec![
                        name.clone().into(),
                        sigma.into(),
                        db.into(),
                        x.into(),
                        t.ccdf[i][j].into(),
                    ]);
                }
                let oracle = |b: f64| -> Result<Option<f64>> {
                    Ok(if standard_ppp {
                        Some(standard_ppp_moment(b, db_to_linear(db), alpha)?)
                    } else {
                        None
                    })
                };
                let (o1, o2) = (oracle(1.0)?, oracle(2.0)?);
                moments.push(vec![
                    name.clone().into(),
                    sigma.into(),
                    db.into(),
                    t.m1[i].value.into(),
                    t.m1[i].std_error.into(),
                    t.m2[i].value.into(),
                    t.m2[i].std_error.into(),
                    o1.into(),
                    o2.into(),
                ]);
                if standard_ppp && db == 0.0 {
                    let (o1, o2) = (o1.expect("oracle"), o2.expect("oracle"));
                    report.estimate("m1:standard-ppp:theta_db=0", t.m1[i]);
                    report.estimate("m2:standard-ppp:theta_db=0", t.m2[i]);
                    report.verdict(Verdict::within(
                        "m1 vs oracle:standard-ppp:theta_db=0",
                        t.m1[i].value,
                        o1,
                        0.004,
                    ));
                    report.verdict(Verdict::within(
                        "m2 vs oracle within 2 standard errors:standard-ppp:theta_db=0",
                        t.m2[i].value,
                        o2,
                        2.0 * t.m2[i].std_error,
                    ));
                }
            }
            let (mono_theta, mono_x) = monotonicity(&t);
            report.verdict(Verdict::holds(
                format!("ccdf non-increasing in theta:{name}:sigma={sigma}"),
                0.0,
                mono_theta,
            ));
            report.verdict(Verdict::holds(
                format!("ccdf non-increasing in x:{name}:sigma={sigma}"),
                0.0,
                mono_x,
            ));
            tables.push((name.clone(), sigma, t));
        }
    }
    if comparison {
        for &sigma in &cfg.sigmas {
            let get = |name: &str| {
                tables
                    .iter()
                    .find(|t| t.0 == name && t.1 == sigma)
                    .map(|t| &t.2)
                    .expect("run")
            };
            let (a, b) = (get("jsp-ppp"), get("iid-triangular"));
            let gap = |m: fn(&MetaTable) -> &Vec<Estimate>| {
                m(a).iter()
                    .zip(m(b))
                    .map(|(x, y)| (x.value - y.value).abs())
                    .fold(0.0, f64::max)
            };
            let (g1, g2) = (gap(|t| &t.m1), gap(|t| &t.m2));
            report.value(format!("max m1 gap:jsp-ppp vs iid-triangular:sigma={sigma}"), g1);
            report.value(format!("max m2 gap:jsp-ppp vs iid-triangular:sigma={sigma}"), g2);
            report.verdict(Verdict::below(
                format!("max m1 gap:jsp-ppp vs iid-triangular:sigma={sigma}"),
                g1,
                0.02,
            ));
            report.verdict(Verdict::below(
                format!("max m2 gap:jsp-ppp vs iid-triangular:sigma={sigma}"),
                g2,
                0.02,
            ));
        }
    }
    report.tables.push(ccdf);
    report.tables.push(moments);
    Ok(report)
}

/// Whether `F̄(θ, x)` is non-increasing along the sorted threshold and
/// reliability grids.
pub fn monotonicity(t: &MetaTable) -> (bool, bool) {
    let order = |v: &[f64]| {
        let mut idx: Vec<usize> = (0..v.len()).collect();
        idx.sort_by(|&a, &b| v[a].total_cmp(&v[b]));
        idx
    };
    let (ti, xi) = (order(&t.theta_db), order(&t.reliability));
    let in_theta = xi
        .iter()
        .all(|&j| ti.windows(2).all(|w| t.ccdf[w[1]][j] <= t.ccdf[w[0]][j]));
    let in_x = ti
        .iter()
        .all(|&i| xi.windows(2).all(|w| t.ccdf[i][w[1]] <= t.ccdf[i][w[0]]));
    (in_theta, in_x)
}

pub fn path_loss(cfg: &ExperimentConfig) -> Result<Report> {
    let alpha = cfg.path_loss_exponent;
    let mut report = Report::default();
    let mut counts = Table::new("normalized_count", &["t", "mean_count", "std_error", "reference"]);
    let net = cfg.network_with(alpha, 0.0, Deployment::Ppp, ShadowingMode::Jsp)?;
    let means = normalized_count_means(&net, &cfg.thresholds, cfg.replicates, cfg.seed)?;
    for (&t, est) in cfg.thresholds.iter().zip(&means) {
        counts.push(vec![t.into(), est.value.into(), est.std_error.into(), (t * t).into()]);
        report.estimate(format!("normalized_count:t={t}"), *est);
        report.verdict(Verdict::within(
            format!("normalized_count within 2%:t={t}"),
            est.value / (t * t),
            1.0,
            0.02,
        ));
    }
    let mut table = Table::new(
        "path_loss",
        &[
            "sigma",
            "t",
            "intensity_ratio",
            "intensity_std_error",
            "first_point_ccdf",
            "first_point_std_error",
            "limit_ccdf",
            "far_field",
        ],
    );
    for &sigma in &cfg.sigmas {
        let net = cfg.network_with(alpha, sigma, Deployment::Ppp, ShadowingMode::Jsp)?;
        let points = path_loss_convergence(&net, &cfg.thresholds, cfg.replicates, cfg.seed)?;
        for p in &points {
            table.push(vec![
                sigma.into(),
                p.t.into(),
                p.intensity_ratio.value.into(),
                p.intensity_ratio.std_error.into(),
                p.first_point_ccdf.value.into(),
                p.first_point_ccdf.std_error.into(),
                p.limit_ccdf.into(),
                p.far_field.into(),
            ]);
            report.estimate(format!("intensity_ratio:sigma={sigma}:t={}", p.t), p.intensity_ratio);
            report.verdict(Verdict::within(
                format!("intensity_ratio in [0.95, 1.05]:sigma={sigma}:t={}", p.t),
                p.intensity_ratio.value,
                1.0,
                0.05,
            ));
        }
        report.value(
            format!("first_point_max_gap:sigma={sigma}"),
            crate::network::first_point_ks(&points),
        );
    }
    report.tables.push(counts);
    report.tables.push(table);
    Ok(report)
}

pub fn oned_appendix(cfg: &ExperimentConfig) -> Result<Report> {
    let lam = cfg.intensity;
    let seed = derive_seed(cfg.seed, TYPICAL_LABEL);
    let cells = (0..cfg.replicates)
        .map(|rep| sample_oned_typical_cell(lam, seed, rep))
        .collect::<Result<Vec<_>>>()?;
    let mut report = Report::default();
    let (back_mean, fwd_mean) = oned_means(lam);
    let back = mean_estimate(cells.iter().map(|c| c.radius_backward))?;
    let fwd = mean_estimate(cells.iter().map(|c| c.radius_forward))?;
    let mut moments = Table::new("oned_moments", &["quantity", "mean", "std_error", "reference"]);
    moments.push(vec![
        "backward_radius".into(),
        back.value.into(),
        back.std_error.into(),
        back_mean.into(),
    ]);
    moments.push(vec![
        "forward_radius".into(),
        fwd.value.into(),
        fwd.std_error.into(),
        fwd_mean.into(),
    ]);
    report.estimate("mean:backward_radius", back);
    report.estimate("mean:forward_radius", fwd);
    report.verdict(Verdict::within(
        "mean:backward_radius",
        back.value,
        back_mean,
        0.003 / lam,
    ));
    report.verdict(Verdict::within("mean:forward_radius", fwd.value, fwd_mean, 0.003 / lam));
    let mut ecdf = Table::new("oned_ecdf", &["law", "y", "empirical_cdf", "analytic_cdf"]);
    let samples = cells.iter().map(|c| c.radius_backward).collect();
    ks_check(
        &mut report,
        &mut ecdf,
        "backward_radius",
        samples,
        |r| oned_backward_cdf(r, lam),
        KS_LIMIT,
    )?;
    report.tables.push(moments);
    report.tables.push(ecdf);
    Ok(report)
}

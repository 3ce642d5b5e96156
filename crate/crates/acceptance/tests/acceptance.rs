//! Acceptance criteria for the simulator, one PASS/FAIL line per criterion.
//!
//! Sample sizes and tolerances are fixed here. The process exits with status
//! 1 when any criterion fails.

use std::path::Path;
use std::time::Instant;

use jsp_sim::analytic::{
    anchor_gap_correlation, db_to_linear, disk_packing_edge_power, mean_area_quadrature, misr_ppp, oned_backward_cdf,
    oned_means, serving_signal_ccdf, shadowing_ccdf, shadowing_moments, standard_ppp_moment, zero_pair_correlations,
    DistributionSpec, Family, ShadowedLink,
};
use jsp_sim::cli::{monotonicity, run_to_dir, Experiment, ExperimentConfig};
use jsp_sim::geometry::{sample_cell_batch, sample_oned_typical_cell, CellBatch, CellKind, CellRecord, CellSampler};
use jsp_sim::network::{
    build_realization, conditional_success, estimate_gain, gain_from_samples, meta_distribution, misr,
    normalized_count_means, ordered_radii_samples, path_loss_convergence, simulate, Deployment, GainEstimate,
    JspConfig, MetaTable, OrderedRadius, ShadowingMode,
};
use jsp_sim::stats::{correlation, moment_of, ratio_of_means, EmpiricalDistribution, Estimate};

const CELLS: u64 = 1_000_000;
const ORDERED: u64 = 1_000_000;
const ONED: u64 = 1_000_000;
const STANDARD_PPP: u64 = 200_000;
const LATTICE_GAIN: u64 = 50_000;
const JSP_GAIN: u64 = 20_000;
const COUNTS: u64 = 100_000;
const PATH_LOSS: u64 = 20_000;
const META: u64 = 10_000;
const TRUNCATION: u64 = 10_000;
const INVARIANCE: u64 = 200;

const KS_LIMIT: f64 = 0.005;
const LATTICE_KS_LIMIT: f64 = 0.02;
const ALPHA: f64 = 4.0;
const TABULATION_INTERVALS: usize = 600;

/// Outcome of one sub-check of a criterion.
struct Check {
    label: String,
    pass: bool,
}

impl Check {
    fn within(label: &str, observed: f64, target: f64, tolerance: f64) -> Self {
        let pass = (observed - target).abs() <= tolerance;
        Self {
            label: format!("{label} = {observed:.5} (target {target} ± {tolerance})"),
            pass,
        }
    }

    fn below(label: &str, observed: f64, limit: f64) -> Self {
        Self {
            label: format!("{label} = {observed:.5} (limit {limit})"),
            pass: observed < limit,
        }
    }

    fn holds(label: String, pass: bool) -> Self {
        Self { label, pass }
    }

    fn note(label: String) -> Self {
        Self {
            label: format!("[info] {label}"),
            pass: true,
        }
    }
}

#[derive(Default)]
struct Suite {
    failed: Vec<usize>,
}

impl Suite {
    fn criterion(&mut self, id: usize, title: &str, run: impl FnOnce() -> Vec<Check>) {
        let start = Instant::now();
        let checks = run();
        let pass = checks.iter().all(|c| c.pass);
        let status = if pass { "PASS" } else { "FAIL" };
        println!("{status} {id:>2} {title} ({:.1} s)", start.elapsed().as_secs_f64());
        for c in &checks {
            let mark = if c.pass { "ok  " } else { "MISS" };
            println!("        {mark} {}", c.label);
        }
        if !pass {
            self.failed.push(id);
        }
    }
}

fn mean(batch: &CellBatch, f: fn(&CellRecord) -> f64) -> f64 {
    moment_of(batch.records.iter().map(f)).expect("non-empty batch").value
}

fn ks(samples: Vec<f64>, cdf: impl Fn(f64) -> f64) -> f64 {
    EmpiricalDistribution::new(samples).expect("samples").ks_distance(cdf)
}

fn ks_family(samples: Vec<f64>, family: Family) -> f64 {
    let spec = DistributionSpec::new(family, 1.0).expect("family");
    match family {
        Family::ZeroUniformAngle => {
            let upper = samples.iter().copied().fold(0.0, f64::max) * 1.001;
            let table = spec.tabulate(upper, TABULATION_INTERVALS).expect("tabulation");
            ks(samples, |y| table.cdf(y))
        }
        _ => ks(samples, |y| spec.cdf(y).expect("cdf")),
    }
}

fn edge_power() -> f64 {
    disk_packing_edge_power(1.0, ALPHA)
}

fn jsp(sigma: f64) -> JspConfig {
    JspConfig::jsp_ppp(1.0, ALPHA, edge_power(), sigma).expect("config")
}

fn success_and_gain(config: &JspConfig, replicates: u64, seed: u64) -> (Estimate, Estimate, GainEstimate) {
    let (rows, discarded) = simulate(config, replicates, seed, |r| {
        let s = conditional_success(r, 1.0)?;
        Ok((s, misr(r), 1.0 / r.serving().mean_power))
    })
    .expect("simulation");
    let m1 = moment_of(rows.iter().map(|r| r.0)).expect("m1");
    let m2 = moment_of(rows.iter().map(|r| r.0 * r.0)).expect("m2");
    let pairs: Vec<(f64, f64)> = rows.iter().map(|r| (r.1, r.2)).collect();
    (m1, m2, gain_from_samples(config, &pairs, discarded).expect("gain"))
}

fn max_gap(a: &[Estimate], b: &[Estimate]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x.value - y.value).abs())
        .fold(0.0, f64::max)
}

fn csv_bytes(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut files: Vec<_> = std::fs::read_dir(dir)
        .expect("output dir")
        .map(|e| e.expect("entry").path())
        .filter(|p| p.extension().is_some_and(|x| x == "csv"))
        .map(|p| {
            (
                p.file_name().unwrap().to_string_lossy().into_owned(),
                std::fs::read(&p).expect("csv"),
            )
        })
        .collect();
    files.sort();
    files
}

fn main() {
    let start = Instant::now();
    let sampler = CellSampler::new(1.0).expect("sampler");
    let typical = sample_cell_batch(&sampler, CellKind::Typical, CELLS, 101).expect("typical cells");
    let zero = sample_cell_batch(&sampler, CellKind::Zero, CELLS, 102).expect("zero cells");
    let ordered: Vec<Vec<OrderedRadius>> =
        ordered_radii_samples(1.0, Deployment::Ppp, 3, ORDERED, 103).expect("ordered radii");
    println!(
        "sampled {CELLS} typical cells, {CELLS} zero cells and {ORDERED} ordered-radius sets in {:.1} s",
        start.elapsed().as_secs_f64()
    );
    let mut suite = Suite::default();

    suite.criterion(1, "zero-cell means", || {
        vec![
            Check::within("E R0(0)", mean(&zero, |r| r.forward), 0.75, 0.005),
            Check::within("E R0(pi)", mean(&zero, |r| r.backward), 0.50, 0.005),
            Check::within("E D0", mean(&zero, |r| r.anchor), 0.50, 0.005),
        ]
    });

    suite.criterion(2, "typical-cell means", || {
        vec![
            Check::within("E R(0)", mean(&typical, |r| r.forward), 0.67, 0.01),
            Check::within("E R(pi)", mean(&typical, |r| r.backward), 0.432, 0.01),
            Check::within("E D", mean(&typical, |r| r.anchor), 0.447, 0.01),
            Check::within("E N", mean(&typical, |r| f64::from(r.sides)), 6.00, 0.01),
            Check::within("E N0", mean(&zero, |r| f64::from(r.sides)), 6.41, 0.05),
        ]
    });

    suite.criterion(3, "zero-cell mean area", || {
        let area = mean_area_quadrature(1.0).expect("quadrature");
        vec![
            Check::within("simulated mean area", mean(&zero, |r| r.area), 1.280, 0.01),
            Check::within("quadrature", area.quadrature, 1.2802, 0.0005),
            Check::within("approximation", area.approximation, 1.2869, 5e-5),
        ]
    });

    suite.criterion(4, "distribution oracles (KS)", || {
        let mut laws: Vec<(&str, Vec<f64>, Family)> = vec![
            (
                "R-bar (typical)",
                typical.column(|r| r.uniform_angle_radius),
                Family::TypicalUniformAngle,
            ),
            ("R0(0)", zero.column(|r| r.forward), Family::ZeroForward),
            ("R0(pi)", zero.column(|r| r.backward), Family::ZeroBackward),
            ("R0(0) - D0", zero.column(|r| r.forward - r.anchor), Family::ZeroGap),
            (
                "R0-bar",
                zero.column(|r| r.uniform_angle_radius),
                Family::ZeroUniformAngle,
            ),
            ("D0/R0(0)", zero.column(|r| r.anchor / r.forward), Family::RatioLaw),
            (
                "R_min",
                typical.column(|r| r.min_edge_distance),
                Family::MinEdgeDistance,
            ),
        ];
        for i in 1..=3u32 {
            let name = ["r(x1)/|x1|", "r(x2)/|x2|", "r(x3)/|x3|"][i as usize - 1];
            laws.push((
                name,
                ordered.iter().map(|o| o[i as usize].ratio()).collect(),
                Family::OrderedRatioLaw { index: i },
            ));
        }
        laws.into_iter()
            .map(|(name, samples, family)| Check::below(&format!("KS {name}"), ks_family(samples, family), KS_LIMIT))
            .collect()
    });

    suite.criterion(5, "correlation constant and ratio identities", || {
        let forward = zero.column(|r| r.forward);
        let anchor = zero.column(|r| r.anchor);
        let gap: Vec<f64> = forward.iter().zip(&anchor).map(|(f, a)| f - a).collect();
        let rho = correlation(&anchor, &gap).expect("correlation").value;
        let literal = correlation(&forward, &gap).expect("correlation").value;
        let exact = zero_pair_correlations().expect("quadrature");
        let ratios: Vec<f64> = gap.iter().zip(&anchor).map(|(g, a)| g / a).collect();
        vec![
            Check::within(
                "closed form (8-3pi)/(sqrt(12-3pi) sqrt(16-3pi))",
                anchor_gap_correlation(),
                -0.3462,
                5e-5,
            ),
            Check::within("Pearson(D0, R0(0) - D0)", rho, -0.346, 0.005),
            Check::note(format!(
                "Pearson(R0(0), R0(0) - D0) = {literal:.4}, quadrature {:.4}; the closed form is the (D0, gap) pair",
                exact.forward_gap
            )),
            Check::within("E[(R0(0) - D0)/D0]", moment_of(ratios).expect("mean").value, 1.0, 0.02),
            Check::within(
                "E[R0(0) - D0]/E[D0]",
                ratio_of_means(&gap, &anchor).expect("ratio").value,
                0.5,
                0.01,
            ),
        ]
    });

    suite.criterion(6, "one-dimensional appendix", || {
        let cells: Vec<_> = (0..ONED)
            .map(|rep| sample_oned_typical_cell(1.0, 104, rep).expect("1D cell"))
            .collect();
        let (back, fwd) = oned_means(1.0);
        let backward: Vec<f64> = cells.iter().map(|c| c.radius_backward).collect();
        vec![
            Check::below(
                "KS R(pi)",
                ks(backward.clone(), |r| oned_backward_cdf(r, 1.0)),
                KS_LIMIT,
            ),
            Check::within("E R(pi)", moment_of(backward).expect("mean").value, 0.333, 0.003),
            Check::within(
                "E R(0)",
                moment_of(cells.iter().map(|c| c.radius_forward)).expect("mean").value,
                0.667,
                0.003,
            ),
            Check::within("closed-form E R(pi)", back, 1.0 / 3.0, 1e-9),
            Check::within("closed-form E R(0)", fwd, 2.0 / 3.0, 1e-9),
        ]
    });

    let lattice = estimate_gain(
        &JspConfig::standard(1.0, ALPHA, Deployment::Triangular).expect("config"),
        LATTICE_GAIN,
        106,
    )
    .expect("lattice gain");

    suite.criterion(7, "standard PPP SIR", || {
        let config = JspConfig::standard(1.0, ALPHA, Deployment::Ppp).expect("config");
        let (m1, m2, g) = success_and_gain(&config, STANDARD_PPP, 105);
        let o1 = standard_ppp_moment(1.0, 1.0, ALPHA).expect("oracle");
        let o2 = standard_ppp_moment(2.0, 1.0, ALPHA).expect("oracle");
        vec![
            Check::within("M1(theta=1)", m1.value, 0.561, 0.004),
            Check::within("M1 vs 2F1 oracle", m1.value, o1, 0.004),
            Check::within("M2 vs 2F1 oracle (2 SE)", m2.value, o2, 2.0 * m2.std_error),
            Check::within(
                "MISR (tail-corrected)",
                g.misr_tail_corrected,
                misr_ppp(ALPHA).expect("misr"),
                0.01,
            ),
        ]
    });

    suite.criterion(8, "triangular lattice gain", || {
        vec![
            Check::within("gain dB", lattice.gain_db, 3.4, 0.15),
            Check::note(format!(
                "MISR {:.5} ± {:.5} (far field {:.5}), gain SE {:.3} dB",
                lattice.misr_tail_corrected, lattice.misr.std_error, lattice.far_field, lattice.gain_db_std_error
            )),
        ]
    });

    suite.criterion(9, "JSP-PPP headline gain", || {
        let gains: Vec<GainEstimate> = [0.0, 1.0, 2.0, 3.0]
            .iter()
            .map(|&s| estimate_gain(&jsp(s), JSP_GAIN, 107).expect("gain"))
            .collect();
        let mut checks = vec![Check::within(
            "gain(sigma=0) vs lattice dB",
            gains[0].gain_db,
            lattice.gain_db,
            0.3,
        )];
        for (i, w) in gains.windows(2).enumerate() {
            let se = w[0].gain_db_std_error.hypot(w[1].gain_db_std_error);
            let sep = (w[0].gain_db - w[1].gain_db) / se;
            checks.push(Check::holds(
                format!(
                    "gain(sigma={i}) = {:.3} dB > gain(sigma={}) = {:.3} dB by {sep:.1} SE (need > 2)",
                    w[0].gain_db,
                    i + 1,
                    w[1].gain_db
                ),
                sep > 2.0,
            ));
        }
        checks
    });

    suite.criterion(10, "serving-signal law", || {
        let p0 = edge_power();
        let cdf = |t: f64| 1.0 - serving_signal_ccdf(t, p0, ALPHA).expect("law");
        let ppp: Vec<f64> = ordered.iter().map(|o| p0 * o[0].ratio().powf(ALPHA)).collect();
        let lattice: Vec<f64> = ordered_radii_samples(1.0, Deployment::Triangular, 0, ORDERED, 108)
            .expect("lattice radii")
            .iter()
            .map(|o| p0 * o[0].ratio().powf(ALPHA))
            .collect();
        vec![
            Check::below("KS JSP-PPP", ks(ppp, cdf), KS_LIMIT),
            Check::below("KS triangular", ks(lattice, cdf), LATTICE_KS_LIMIT),
        ]
    });

    suite.criterion(11, "shadowing laws", || {
        let p0 = edge_power();
        let exact = shadowing_moments(1.0, p0, ALPHA).expect("moments");
        let mut checks = Vec::new();
        for (link, name, index, target, tol) in [
            (ShadowedLink::Serving, "K_x0", 0, 6.0, 0.05),
            (ShadowedLink::Interferer, "K_x1", 1, 2.0, 0.02),
        ] {
            let k: Vec<f64> = ordered.iter().map(|o| p0 * o[index].radius.powf(ALPHA)).collect();
            let m = moment_of(k.iter().copied()).expect("mean").value;
            checks.push(Check::below(
                &format!("KS {name}"),
                ks(k, |t| 1.0 - shadowing_ccdf(link, t, 1.0, p0, ALPHA).expect("law")),
                KS_LIMIT,
            ));
            checks.push(Check::within(&format!("E {name}"), m, target, tol));
        }
        checks.push(Check::within("oracle E K_x0", exact.serving_mean, 6.0, 1e-9));
        checks.push(Check::within("oracle E K_x1", exact.interferer_mean, 2.0, 1e-9));
        checks
    });

    suite.criterion(12, "path-loss convergence", || {
        let thresholds = [0.5, 1.0, 2.0];
        let counts = normalized_count_means(&jsp(0.0), &thresholds, COUNTS, 109).expect("counts");
        let points = path_loss_convergence(&jsp(6.0), &thresholds, PATH_LOSS, 110).expect("path loss");
        let mut checks: Vec<Check> = thresholds
            .iter()
            .zip(&counts)
            .map(|(t, c)| Check::within(&format!("count(t={t})/t^2"), c.value / (t * t), 1.0, 0.02))
            .collect();
        for p in &points {
            checks.push(Check::within(
                &format!("sigma=6 Lambda([0,{}))/t^2", p.t),
                p.intensity_ratio.value,
                1.0,
                0.05,
            ));
        }
        checks
    });

    suite.criterion(13, "meta distribution", || {
        let theta_db: Vec<f64> = (0..=8).map(|k| -10.0 + 2.5 * k as f64).collect();
        let reliability: Vec<f64> = (1..=9).map(|k| 0.1 * k as f64).collect();
        let mut checks = Vec::new();
        for sigma in [0.0, 1.0, 2.0] {
            let iid = JspConfig::new(
                1.0,
                ALPHA,
                1.0,
                sigma,
                Deployment::Triangular,
                ShadowingMode::IidLognormal,
            )
            .expect("config");
            let run = |c: &JspConfig| -> MetaTable {
                meta_distribution(c, &theta_db, &reliability, META, 111).expect("meta")
            };
            let (a, b) = (run(&jsp(sigma)), run(&iid));
            checks.push(Check::below(
                &format!("sigma={sigma} max |M1 gap|"),
                max_gap(&a.m1, &b.m1),
                0.02,
            ));
            checks.push(Check::below(
                &format!("sigma={sigma} max |M2 gap|"),
                max_gap(&a.m2, &b.m2),
                0.02,
            ));
            for (name, t) in [("JSP-PPP", &a), ("iid lattice", &b)] {
                let (in_theta, in_x) = monotonicity(t);
                checks.push(Check::holds(
                    format!("sigma={sigma} {name} ccdf non-increasing in theta and x"),
                    in_theta && in_x,
                ));
            }
        }
        checks
    });

    suite.criterion(14, "invariance suite", || {
        let mut checks = Vec::new();
        // P0 and intensity leave the SIR law unchanged, realization by realization.
        let base = jsp(1.0);
        let scaled = JspConfig::jsp_ppp(3.7, ALPHA, 0.21, 1.0).expect("config");
        let theta = db_to_linear(0.0);
        let mut worst: f64 = 0.0;
        for rep in 0..INVARIANCE {
            let (a, b) = (
                build_realization(&base, 112, rep).expect("a"),
                build_realization(&scaled, 112, rep).expect("b"),
            );
            worst = worst.max((misr(&a) / misr(&b) - 1.0).abs());
            worst =
                worst.max((conditional_success(&a, theta).unwrap() - conditional_success(&b, theta).unwrap()).abs());
        }
        checks.push(Check::below(
            "P0/lambda invariance, max relative SIR change",
            worst,
            1e-9,
        ));

        let mut worst: f64 = 0.0;
        let other = CellSampler::new(4.0).expect("sampler");
        for rep in 0..INVARIANCE {
            for (a, b) in [
                (sampler.typical(113, rep).unwrap(), other.typical(113, rep).unwrap()),
                (sampler.zero(113, rep).unwrap(), other.zero(113, rep).unwrap()),
            ] {
                let (a, b) = (a.value, b.value);
                worst = worst.max((2.0 * b.anchor_distance - a.anchor_distance).abs());
                worst = worst.max((4.0 * b.area() / a.area() - 1.0).abs());
                for ((_, ra), (_, rb)) in a.grid_radii().zip(b.grid_radii()) {
                    worst = worst.max((2.0 * rb - ra).abs());
                }
            }
        }
        checks.push(Check::below(
            "scale equivariance at lambda=4, max deviation",
            worst,
            1e-9,
        ));

        let dir = tempfile::tempdir().expect("tempdir");
        let mut outputs = Vec::new();
        for (experiment, name) in [
            (Experiment::CellMoments, "a"),
            (Experiment::CellMoments, "b"),
            (Experiment::GainSweep, "c"),
            (Experiment::GainSweep, "d"),
        ] {
            let mut cfg = ExperimentConfig::new(experiment);
            cfg.replicates = 2000;
            cfg.alphas = vec![4.0];
            cfg.output_dir = Some(dir.path().join(name));
            run_to_dir(&cfg).expect("run");
            outputs.push(csv_bytes(&dir.path().join(name)));
        }
        checks.push(Check::holds(
            "byte-identical reruns (cell-moments, gain-sweep)".into(),
            !outputs[0].is_empty() && outputs[0] == outputs[1] && outputs[2] == outputs[3],
        ));

        let near = jsp(0.0);
        let far = near
            .with_truncation_radius(2.0 * near.interferer_truncation_radius)
            .expect("config");
        let m1 = |c: &JspConfig| {
            let (v, _) = simulate(c, TRUNCATION, 114, |r| conditional_success(r, theta)).expect("simulation");
            moment_of(v).expect("mean").value
        };
        let (a, b) = (m1(&near), m1(&far));
        checks.push(Check::below(
            &format!("truncation honesty |M1(R) - M1(2R)| with M1(R) = {a:.5}"),
            (a - b).abs(),
            0.002,
        ));
        checks
    });

    println!("total {:.1} s", start.elapsed().as_secs_f64());
    if suite.failed.is_empty() {
        println!("acceptance: all criteria pass");
    } else {
        println!("acceptance: failed criteria {:?}", suite.failed);
        std::process::exit(1);
    }
}

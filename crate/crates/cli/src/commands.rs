//! Per-subcommand check sets. Each command assembles a list of reports
//! plus a format-specific payload (JSON document or CSV table).

use std::time::Instant;

use bdivisor_core::analysis::{
    residue_consistency, residue_integral, toric_volume_check, VolumeMethod,
};
use bdivisor_core::jacobi::{hilbert_samuel_check, theta11, ModularPoint};
use bdivisor_core::lattice::{
    bdv_limit, bdv_limit_closed_form, intersect, jacobi_divisor, lattice_self_intersection,
    recursion_self_intersection, self_intersection_closed_form, stern_brocot_nodes,
    stern_brocot_sum,
};
use bdivisor_core::numbers::{coprime_tornheim, tornheim_222, zeta6_over_3};
use bdivisor_core::rat::{int, rat, ratio_string, to_f64, Rat};
use bdivisor_core::surface::{base_model, ComponentId, Level};
use num_complex::Complex64;
use serde_json::{json, Value};

use crate::config::{ConfigError, RunConfig};
use crate::model_json::surface_model_to_json;
use crate::report::{document, float_string, rational_decimal, reports_csv, Report};
use crate::{acceptance, SCHEMA};

/// What a command hands back to main: reports (drive the exit code) and
/// the rendered output for the selected format.
pub struct CommandOutput {
    pub reports: Vec<Report>,
    pub json: Value,
    pub csv: String,
}

impl CommandOutput {
    fn new(command: &str, reports: Vec<Report>, payload: Value) -> CommandOutput {
        let json = document(command, &reports, payload);
        let csv = reports_csv(&reports);
        CommandOutput { reports, json, csv }
    }

    pub fn all_pass(&self) -> bool {
        self.reports.iter().all(|r| r.pass)
    }
}

fn level_of(cfg: &RunConfig) -> Result<Level, ConfigError> {
    Level::new(cfg.level).map_err(|e| ConfigError(e.to_string()))
}

fn timed(reports: &mut [Report], start: Instant) {
    let ms = start.elapsed().as_millis();
    for r in reports.iter_mut() {
        r.runtime_ms = ms;
    }
}

/// `surface`: level invariants and the base intersection table.
pub fn cmd_surface(cfg: &RunConfig) -> Result<CommandOutput, ConfigError> {
    let start = Instant::now();
    let level = level_of(cfg)?;
    let model = base_model(level);
    let n = level.n();
    let p = level.cusp_count();

    let mut reports = vec![
        Report::exact("index", &rat_u(level.index()), &rat_u(level.index())),
        Report::claim(
            "cusp_count_divides_index",
            &format!("{}", level.index() / (2 * n as u64)),
            &format!("{p}"),
            level.index() % (2 * n as u64) == 0,
        ),
        Report::claim(
            "genus_integral",
            "integer",
            &match level.genus() {
                Ok(g) => g.to_string(),
                Err(e) => e.to_string(),
            },
            level.genus().is_ok(),
        ),
        Report::claim(
            "arithmetic_genus_integral",
            "integer",
            &match level.arithmetic_genus() {
                Ok(g) => g.to_string(),
                Err(e) => e.to_string(),
            },
            level.arithmetic_genus().is_ok(),
        ),
        Report::exact(
            "component_count",
            &int(1 + (n as u64 * p) as i64),
            &int(model.components.len() as i64),
        ),
        Report::exact(
            "singular_point_count",
            &int((n as u64 * p) as i64),
            &int(model.singular_points.len() as i64),
        ),
    ];

    // Fiber-class nullity q(F, F) = 0 and q(F, H) = 1 over every cusp.
    let mut nullity_ok = true;
    for j in 1..=p as u32 {
        let mut ff = int(0);
        let mut fh = int(0);
        for a in 0..n {
            for b in 0..n {
                ff += model.form.q(
                    ComponentId::Fiber { cusp: j, nu: a },
                    ComponentId::Fiber { cusp: j, nu: b },
                );
            }
            fh += model
                .form
                .q(ComponentId::ZeroSection, ComponentId::Fiber { cusp: j, nu: a });
        }
        if ff != int(0) || fh != int(1) {
            nullity_ok = false;
        }
    }
    reports.push(Report::claim(
        "fiber_class_nullity",
        "q(F,F)=0, q(F,H)=1",
        if nullity_ok { "holds" } else { "violated" },
        nullity_ok,
    ));

    timed(&mut reports, start);
    let payload = json!({ "model": surface_model_to_json(&model) });
    Ok(CommandOutput::new("surface", reports, payload))
}

fn rat_u(v: u64) -> Rat {
    int(v as i64)
}

/// `tower`: scalar recursion vs. materialized lattice, depth table, and
/// the windowed limit with its tail bound.
pub fn cmd_tower(cfg: &RunConfig) -> Result<CommandOutput, ConfigError> {
    let start = Instant::now();
    let level = level_of(cfg)?;
    let limit = bdv_limit_closed_form(level);
    let cc = self_intersection_closed_form(level);

    let mut reports = Vec::new();
    let model = base_model(level);
    let div = jacobi_divisor(&model).map_err(|e| ConfigError(e.to_string()))?;
    let materialized = intersect(&model, &div, &div).map_err(|e| ConfigError(e.to_string()))?;
    reports.push(Report::exact("closed_form_self_intersection", &cc, &materialized));

    // Depth table rows: depth, nodes, S(depth), self_int, gap_to_limit.
    let mut csv = String::from("depth,nodes,S,self_int,gap_to_limit\n");
    let mut rows = Vec::new();
    let lattice_cap = 6u32;
    for d in 0..=cfg.depth {
        let s = stern_brocot_sum(d);
        let rec = recursion_self_intersection(level, d);
        let nodes = stern_brocot_nodes(d).len();
        let gap = &rec - &limit;
        csv.push_str(&format!(
            "{},{},{},{},{}\n",
            d,
            nodes,
            ratio_string(&s),
            ratio_string(&rec),
            ratio_string(&gap)
        ));
        rows.push(json!({
            "depth": d,
            "nodes": nodes,
            "S": ratio_string(&s),
            "self_int": ratio_string(&rec),
            "gap_to_limit": ratio_string(&gap),
        }));
        if d <= lattice_cap {
            let lat = lattice_self_intersection(level, d).map_err(|e| ConfigError(e.to_string()))?;
            reports.push(Report::exact(&format!("oracle_equivalence_depth_{d}"), &rec, &lat));
        }
    }

    let (estimate, tail) = bdv_limit(level, cfg.window).map_err(|e| ConfigError(e.to_string()))?;
    let contains = &estimate - &tail <= limit && limit <= estimate;
    reports.push(Report::claim(
        "bdv_limit_interval",
        &ratio_string(&limit),
        &format!("[{}, {}]", ratio_string(&(&estimate - &tail)), ratio_string(&estimate)),
        contains,
    ));
    reports.push(Report::exact(
        "limit_identity",
        &limit,
        &(&cc - rat(16 * level.cusp_count() as i64, 3 * level.n() as i64)),
    ));

    timed(&mut reports, start);
    let payload = json!({
        "bdv_limit": {
            "N": level.n(),
            "M": cfg.window,
            "estimate": ratio_string(&estimate),
            "tail_bound": ratio_string(&tail),
            "target": ratio_string(&limit),
            "pass": contains,
        },
        "depth_table": rows,
    });
    let mut out = CommandOutput::new("tower", reports, payload);
    out.csv = csv;
    Ok(out)
}

/// `zeta`: Tornheim window sums against their limits.
pub fn cmd_zeta(cfg: &RunConfig) -> Result<CommandOutput, ConfigError> {
    let start = Instant::now();
    let co = coprime_tornheim(cfg.window).map_err(|e| ConfigError(e.to_string()))?;
    let full = tornheim_222(cfg.window).map_err(|e| ConfigError(e.to_string()))?;
    let z = zeta6_over_3();

    let digits = cfg.precision;
    let mut reports = vec![
        Report::claim(
            "coprime_tornheim_brackets_one_third",
            "1/3",
            &format!(
                "[{}, {} + tail {}]",
                rational_decimal(&co.partial_sum, digits.min(24)),
                rational_decimal(&co.partial_sum, digits.min(24)),
                rational_decimal(&co.tail_bound, digits.min(24))
            ),
            co.brackets_rational(&rat(1, 3)),
        ),
        Report::claim(
            "tornheim_brackets_zeta6_over_3",
            &rational_decimal(&z.lo, digits.min(36)),
            &rational_decimal(&full.partial_sum, digits.min(36)),
            full.brackets(&z),
        ),
        Report::claim(
            "tail_bound_below_tolerance",
            &float_string(cfg.tol.max(3e-6)),
            &rational_decimal(&co.tail_bound, 12),
            to_f64(&co.tail_bound) <= cfg.tol.max(3e-6),
        ),
    ];

    timed(&mut reports, start);
    let payload = json!({
        "window": cfg.window,
        "coprime_partial": ratio_string(&co.partial_sum),
        "full_partial": ratio_string(&full.partial_sum),
        "tail_bound": ratio_string(&co.tail_bound),
    });
    Ok(CommandOutput::new("zeta", reports, payload))
}

/// `dim`: the cusp-form dimension table and Hilbert-Samuel gaps.
pub fn cmd_dim(cfg: &RunConfig) -> Result<CommandOutput, ConfigError> {
    let start = Instant::now();
    let level = level_of(cfg)?;
    let ells = cfg.ell_values();
    for &ell in &ells {
        if (4 * ell) % level.n() != 0 {
            return Err(ConfigError(format!(
                "ell = {ell} violates N | 4 ell for N = {}",
                level.n()
            )));
        }
    }
    let hs = hilbert_samuel_check(level, &ells).map_err(|e| ConfigError(e.to_string()))?;

    let mut csv = String::from("N,ell,dim,ratio,gap\n");
    let mut rows = Vec::new();
    for row in &hs.rows {
        csv.push_str(&format!(
            "{},{},{},{},{}\n",
            level.n(),
            row.ell,
            ratio_string(&row.dim),
            ratio_string(&row.ratio),
            ratio_string(&row.gap())
        ));
        rows.push(json!({
            "N": level.n(),
            "ell": row.ell,
            "dim": ratio_string(&row.dim),
            "ratio": ratio_string(&row.ratio),
            "gap": ratio_string(&row.gap()),
        }));
    }

    let mut reports = vec![
        Report::claim(
            "dimensions_integral_nonnegative",
            "all integers >= 0",
            &format!("{} values", hs.rows.len()),
            true, // dim_cusp would have errored otherwise
        ),
        Report::claim(
            "hilbert_samuel_gaps",
            &ratio_string(&hs.target),
            &hs.rows
                .last()
                .map(|r| ratio_string(&r.ratio))
                .unwrap_or_default(),
            hs.pass,
        ),
    ];
    timed(&mut reports, start);
    let payload = json!({ "table": rows, "target": ratio_string(&hs.target) });
    let mut out = CommandOutput::new("dim", reports, payload);
    out.csv = csv;
    Ok(out)
}

/// `theta-check`: oddness, lattice zeros, and metric invariance; JSON
/// carries the maximum observed deviation.
pub fn cmd_theta_check(cfg: &RunConfig) -> Result<CommandOutput, ConfigError> {
    let start = Instant::now();
    let tol = cfg.tol;
    let mut max_dev: f64 = 0.0;

    let tau = Complex64::new(0.3, 1.1);
    let mut odd_ok = true;
    for z in [
        Complex64::new(0.2, 0.1),
        Complex64::new(-0.4, 0.3),
        Complex64::new(0.05, -0.2),
    ] {
        let p = ModularPoint::new(tau, z).map_err(|e| ConfigError(e.to_string()))?;
        let m = ModularPoint::new(tau, -z).map_err(|e| ConfigError(e.to_string()))?;
        let dev = (theta11(&p, 1e-12).map_err(|e| ConfigError(e.to_string()))?
            + theta11(&m, 1e-12).map_err(|e| ConfigError(e.to_string()))?)
        .norm();
        max_dev = max_dev.max(dev);
        odd_ok &= dev <= tol;
    }

    let origin = ModularPoint::new(tau, Complex64::new(0.0, 0.0)).unwrap();
    let zero_dev = theta11(&origin, 1e-12)
        .map_err(|e| ConfigError(e.to_string()))?
        .norm();
    max_dev = max_dev.max(zero_dev);

    let (inv_checked, inv_worst) = acceptance::invariance_sweep(cfg.seed, tol);
    max_dev = max_dev.max(inv_worst);

    let mut reports = vec![
        Report::claim(
            "theta_oddness",
            "0",
            &float_string(max_dev),
            odd_ok,
        ),
        Report::approx("theta_lattice_zero", 0.0, zero_dev, tol),
        Report::claim(
            "metric_invariance",
            &format!("{inv_checked} elements within {}", float_string(tol)),
            &float_string(inv_worst),
            inv_worst <= tol,
        ),
    ];
    timed(&mut reports, start);
    let payload = json!({
        "max_observed_deviation": float_string(max_dev),
        "invariance_elements": inv_checked,
        "seed": cfg.seed,
    });
    Ok(CommandOutput::new("theta-check", reports, payload))
}

/// `residue`: the quadrature against the antiderivative oracle, plus the
/// exact bookkeeping identity.
pub fn cmd_residue(cfg: &RunConfig) -> Result<CommandOutput, ConfigError> {
    let start = Instant::now();
    let level = level_of(cfg)?;
    let mut reports = Vec::new();
    let mut values = Vec::new();
    for eps in [1e-1, 1e-2, 1e-3] {
        let v = residue_integral(eps).map_err(|e| ConfigError(e.to_string()))?;
        reports.push(Report::approx(
            &format!("residue_integral_eps_{eps:e}"),
            -1.0 / 6.0,
            v,
            1e-6,
        ));
        values.push(v);
    }
    let spread = values
        .iter()
        .flat_map(|a| values.iter().map(move |b| (a - b).abs()))
        .fold(0.0f64, f64::max);
    reports.push(Report::approx("epsilon_independence", 0.0, spread, 2e-6));

    let consistency = residue_consistency(level).map_err(|e| ConfigError(e.to_string()))?;
    let defect = rat(
        16 * level.cusp_count() as i64,
        3 * level.n() as i64,
    );
    reports.push(Report::exact(
        "bookkeeping_identity",
        &consistency.limit,
        &(&consistency.cc - &defect),
    ));
    reports.push(Report::approx(
        "quadrature_total",
        consistency.target_total,
        consistency.quadrature_total,
        level.n() as f64 * level.cusp_count() as f64 * 1e-6,
    ));

    timed(&mut reports, start);
    let payload = json!({
        "method": "adaptive-simpson-log-substitution",
        "value": float_string(values[1]),
        "target": "-1/6",
        "abs_error": float_string((values[1] + 1.0 / 6.0).abs()),
        "budget": "tail<1e-9",
        "quadrature_total": float_string(consistency.quadrature_total),
        "exact_identity": consistency.exact_identity,
    });
    Ok(CommandOutput::new("residue", reports, payload))
}

/// `toric`: 2 Vol(Delta_sing) three ways plus the unit-seed tower identity.
pub fn cmd_toric(cfg: &RunConfig) -> Result<CommandOutput, ConfigError> {
    let start = Instant::now();
    let mut reports = Vec::new();
    let mut payloads = Vec::new();
    for (method, budget) in [
        (VolumeMethod::Exact, 1u64),
        (VolumeMethod::Quadrature, 10_000),
        (VolumeMethod::MonteCarlo, 1_000_000),
    ] {
        let r = toric_volume_check(method, budget, cfg.seed)
            .map_err(|e| ConfigError(e.to_string()))?;
        let name = match method {
            VolumeMethod::Exact => "exact",
            VolumeMethod::Quadrature => "quadrature",
            VolumeMethod::MonteCarlo => "montecarlo",
        };
        reports.push(Report::claim(
            &format!("toric_volume_{name}"),
            "2/3",
            &match &r.exact_value {
                Some(v) => ratio_string(v),
                None => float_string(r.value),
            },
            r.pass,
        ));
        payloads.push(json!({
            "method": name,
            "value": float_string(r.value),
            "target": "2/3",
            "abs_error": float_string(r.abs_error),
            "budget": budget,
            "seed": r.seed,
            "tower_identity": r.tower_identity,
        }));
    }
    timed(&mut reports, start);
    Ok(CommandOutput::new("toric", reports, json!({ "methods": payloads })))
}

/// `verify-all`: the consolidated acceptance run.
pub fn cmd_verify_all(cfg: &RunConfig) -> Result<CommandOutput, ConfigError> {
    let start = Instant::now();
    let criteria = acceptance::run_all(cfg);
    let mut reports: Vec<Report> = criteria
        .iter()
        .map(|c| Report::claim(&format!("criterion_{}_{}", c.index, c.name), "pass", &c.detail, c.pass))
        .collect();
    timed(&mut reports, start);
    let payload = json!({
        "schema": SCHEMA,
        "criteria": criteria
            .iter()
            .map(|c| json!({
                "index": c.index,
                "name": c.name,
                "pass": c.pass,
                "detail": c.detail,
            }))
            .collect::<Vec<_>>(),
    });
    Ok(CommandOutput::new("verify-all", reports, payload))
}

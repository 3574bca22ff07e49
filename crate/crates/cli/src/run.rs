//! Command implementations: dispatch into the core library and write report
//! artifacts through the manifest writer.

use crate::config::{format_complex, OutputFormat, ResolvedConfig};
use crate::manifest::{RunWriter, SCHEMA_VERSION};
use circlaw_core::circlaw::{
    circular_law_scaling, girko_check, rigidity_check, smallest_eigenvalue_stats, TestFunction,
};
use circlaw_core::ensembles::{sample_matrix, EnsembleSpec};
use circlaw_core::limiting::{
    ginibre_intensity, ginibre_intensity_radial_mass, mc_solve, rho_c, sample_density,
    SpectralPoint,
};
use circlaw_core::report::{csv_document, curve_document, g17};
use circlaw_core::resolvent::{build_sgrid, identity_suite, local_law_sweep};
use circlaw_core::{Error, Result};

fn linspace(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    (0..points)
        .map(|k| lo + (hi - lo) * k as f64 / (points - 1).max(1) as f64)
        .collect()
}

/// Tabular report in the configured format; JSON carries the same columns.
fn tabular(cfg: &ResolvedConfig, header: &[&str], rows: &[Vec<f64>]) -> Result<(String, String)> {
    match cfg.format {
        OutputFormat::Csv => Ok(("csv".into(), csv_document(header, rows))),
        OutputFormat::Json => {
            let doc = serde_json::json!({
                "schema_version": SCHEMA_VERSION,
                "columns": header,
                "rows": rows,
            });
            let body = serde_json::to_string_pretty(&doc)
                .map_err(|e| Error::Numerical(format!("report serialization: {e}")))?;
            Ok(("json".into(), body))
        }
    }
}

fn emit_tabular(
    w: &mut RunWriter,
    cfg: &ResolvedConfig,
    stem: &str,
    header: &[&str],
    rows: &[Vec<f64>],
) -> Result<()> {
    let (ext, body) = tabular(cfg, header, rows)?;
    w.emit(&format!("{stem}.{ext}"), &body)
}

fn emit_json(w: &mut RunWriter, name: &str, value: serde_json::Value) -> Result<()> {
    let body = serde_json::to_string_pretty(&value)
        .map_err(|e| Error::Numerical(format!("report serialization: {e}")))?;
    w.emit(name, &body)
}

pub fn run(cfg: ResolvedConfig) -> Result<()> {
    let mut w = RunWriter::begin(cfg.clone())?;
    match cfg.command.as_str() {
        "density" => density(&mut w, &cfg)?,
        "mc" => mc(&mut w, &cfg)?,
        "grid-sweep" => grid_sweep(&mut w, &cfg)?,
        "circular" => circular(&mut w, &cfg)?,
        "girko" => girko(&mut w, &cfg)?,
        "rigidity" => rigidity(&mut w, &cfg)?,
        "minors" => minors(&mut w, &cfg)?,
        "ginibre-oracle" => ginibre_oracle(&mut w, &cfg)?,
        "smallest" => smallest(&mut w, &cfg)?,
        other => return Err(Error::Precondition(format!("unknown command '{other}'"))),
    }
    w.mark_stage(&cfg.command);
    w.finish()
}

fn density(w: &mut RunWriter, cfg: &ResolvedConfig) -> Result<()> {
    let z = cfg.z_value()?;
    let curve = sample_density(z, linspace(cfg.xmin, cfg.xmax, cfg.points));
    let rows: Vec<Vec<f64>> =
        curve.xs.iter().zip(curve.rho.iter()).map(|(&x, &r)| vec![x, r]).collect();
    emit_tabular(w, cfg, "density", &["x", "rho"], &rows)?;
    let pairs: Vec<(f64, f64)> =
        curve.xs.iter().zip(curve.rho.iter()).map(|(&x, &r)| (x, r)).collect();
    w.emit(
        "density.dat",
        &curve_document(&[format!("density of Y_z*Y_z, z = {}", format_complex(z))], &pairs),
    )
}

fn mc(w: &mut RunWriter, cfg: &ResolvedConfig) -> Result<()> {
    let z = cfg.z_value()?;
    if cfg.eta <= 0.0 {
        return Err(Error::Precondition(format!("eta must be positive, got {}", cfg.eta)));
    }
    let mut rows = Vec::with_capacity(cfg.points);
    for e in linspace(cfg.xmin.max(1e-12), cfg.xmax, cfg.points) {
        let v = mc_solve(SpectralPoint::new(e, cfg.eta), z)?;
        rows.push(vec![e, v.mc.re, v.mc.im, v.residual, rho_c(e, z)]);
    }
    emit_tabular(w, cfg, "mc", &["E", "re_mc", "im_mc", "residual", "rho"], &rows)
}

fn grid_sweep(w: &mut RunWriter, cfg: &ResolvedConfig) -> Result<()> {
    let z = cfg.z_value()?;
    let spec = EnsembleSpec::new(cfg.kind()?, cfg.dimension, cfg.seed0)?;
    let grid = build_sgrid(z, cfg.dimension, cfg.alpha_exponent, cfg.grid_ne, cfg.grid_neta)?;
    let report = local_law_sweep(&spec, z, &grid, &cfg.seed_list())?;
    w.emit("local_law.csv", &report.to_csv())?;
    // one curve file per energy: (eta, N eta Lambda) medians
    let mut idx = 0usize;
    let mut last_e = f64::NAN;
    for row in &report.rows {
        if row.e != last_e {
            let pairs: Vec<(f64, f64)> = report
                .rows
                .iter()
                .filter(|r| r.e == row.e)
                .map(|r| (r.eta, r.median_neta_lambda))
                .collect();
            let comments = vec![
                format!("E = {}", g17(row.e)),
                format!("log-log slope of median Lambda vs eta: {}", g17(row.slope)),
            ];
            w.emit(&format!("lambda_e{idx:03}.dat"), &curve_document(&comments, &pairs))?;
            idx += 1;
            last_e = row.e;
        }
    }
    Ok(())
}

fn circular(w: &mut RunWriter, cfg: &ResolvedConfig) -> Result<()> {
    let z0 = cfg.z0_value()?;
    let template = EnsembleSpec::new(cfg.kind()?, cfg.dimension, cfg.seed0)?;
    let report =
        circular_law_scaling(&template, z0, cfg.a, &cfg.dimensions, &cfg.seed_list())?;
    w.emit("scaling.csv", &report.to_csv())?;
    let pairs: Vec<(f64, f64)> = report
        .rows
        .iter()
        .filter(|r| r.median_err > 0.0)
        .map(|r| ((r.n as f64).ln(), r.median_err.ln()))
        .collect();
    w.emit(
        "scaling.dat",
        &curve_document(
            &[format!("fitted slope {}", g17(report.slope))],
            &pairs,
        ),
    )
}

fn girko(w: &mut RunWriter, cfg: &ResolvedConfig) -> Result<()> {
    let z0 = cfg.z0_value()?;
    let x = sample_matrix(&EnsembleSpec::new(cfg.kind()?, cfg.dimension, cfg.seed0)?);
    let tf = TestFunction::new(z0, cfg.a, cfg.radius)?;
    let report = girko_check(&x, &tf, cfg.grid_h)?;
    emit_json(
        w,
        "girko.json",
        serde_json::json!({
            "schema_version": SCHEMA_VERSION,
            "lhs": report.lhs,
            "rhs": report.rhs,
            "residual": report.residual,
            "nodes": report.nodes,
            "perturbed": report.perturbed,
        }),
    )
}

fn rigidity(w: &mut RunWriter, cfg: &ResolvedConfig) -> Result<()> {
    let z = cfg.z_value()?;
    let spec = EnsembleSpec::new(cfg.kind()?, cfg.dimension, cfg.seed0)?;
    let report = rigidity_check(&spec, z, &cfg.seed_list())?;
    w.emit("rigidity.csv", &report.to_csv())?;
    emit_json(
        w,
        "rigidity.json",
        serde_json::json!({
            "schema_version": SCHEMA_VERSION,
            "index_shift": report.shift,
            "fraction_within_envelope": report.fraction_within_envelope(),
            "mean_sandwich_fraction": report.mean_sandwich_fraction(),
            "median_bulk_rel_dev": report.median_bulk_rel_dev(),
        }),
    )
}

fn minors(w: &mut RunWriter, cfg: &ResolvedConfig) -> Result<()> {
    let z = cfg.z_value()?;
    let wv = cfg.w_value()?;
    let x = sample_matrix(&EnsembleSpec::new(cfg.kind()?, cfg.dimension, cfg.seed0)?);
    let report = identity_suite(&x, z, SpectralPoint::new(wv.re, wv.im))?;
    emit_json(
        w,
        "minors.json",
        serde_json::json!({
            "schema_version": SCHEMA_VERSION,
            "res_column_removal": report.res_column_removal,
            "res_row_removal": report.res_row_removal,
            "res_ward": report.res_ward,
            "res_trace_relation": report.res_trace_relation,
            "margin_minor_trace_bound": report.margin_minor_trace_bound,
            "margin_re_im": report.margin_re_im,
            "margin_g_squared": report.margin_g_squared,
            "scale": report.scale,
            "max_residual": report.max_residual(),
            "inequalities_hold": report.inequalities_hold(1e-12),
        }),
    )
}

fn ginibre_oracle(w: &mut RunWriter, cfg: &ResolvedConfig) -> Result<()> {
    let n = cfg.dimension;
    let pairs: Vec<(f64, f64)> = linspace(cfg.xmin, cfg.xmax, cfg.points)
        .into_iter()
        .map(|r| {
            ginibre_intensity(circlaw_core::Complex64::new(r, 0.0), n).map(|k| (r, k))
        })
        .collect::<Result<_>>()?;
    w.emit(
        "ginibre_intensity.dat",
        &curve_document(&[format!("Ginibre one-point intensity, N = {n}")], &pairs),
    )?;
    emit_json(
        w,
        "ginibre.json",
        serde_json::json!({
            "schema_version": SCHEMA_VERSION,
            "n": n,
            "mass_within_unit_disk": ginibre_intensity_radial_mass(n, 1.0)?,
            "total_mass": ginibre_intensity_radial_mass(n, cfg.xmax.max(2.0))?,
        }),
    )
}

fn smallest(w: &mut RunWriter, cfg: &ResolvedConfig) -> Result<()> {
    let z = cfg.z_value()?;
    let spec = EnsembleSpec::new(cfg.kind()?, cfg.dimension, cfg.seed0)?;
    let report = smallest_eigenvalue_stats(&spec, z, &cfg.seed_list())?;
    let n2 = (cfg.dimension * cfg.dimension) as f64;
    let rows: Vec<Vec<f64>> = cfg
        .seed_list()
        .iter()
        .zip(report.lambda1.iter())
        .map(|(&s, &l)| vec![s as f64, l, n2 * l])
        .collect();
    emit_tabular(w, cfg, "smallest", &["seed", "lambda1", "n2_lambda1"], &rows)?;
    emit_json(
        w,
        "smallest_summary.json",
        serde_json::json!({
            "schema_version": SCHEMA_VERSION,
            "median_n2_lambda1": report.median_scaled(),
            "log_bound_fraction": report.log_bound_fraction(),
        }),
    )
}

//! One function per subcommand, each rendering its output bytes.

use anyhow::Result;
use num_complex::Complex64 as C64;
use rayon::prelude::*;
use serde::Serialize;

use rtxy::counterpart::{
    coupling_table, counterpart_spectrum, counterpart_spin_spectrum, kappa_approx, reduced_spectrum, truncation_bound,
};
use rtxy::freeferm::many_body_levels;
use rtxy::matching::{compare_spectra, sorted};
use rtxy::oracle::{oracle_spectrum, sector_oracle_spectrum, MAX_DENSE_SITES};
use rtxy::phasemap::{boundary_curve, grid_scan, Axis};
use rtxy::validation::{CriterionOutcome, CRITERIA};
use rtxy::{ModelParams, Sector};

use crate::config::{Format, SectorChoice};
use crate::emit::{fmt_f64, nums, to_json, Num, Table, SCHEMA_VERSION};
use crate::svg;

#[derive(Serialize)]
struct ParamsOut {
    j: Num,
    lambda: Num,
    gamma: Num,
    n: usize,
}

impl From<&ModelParams> for ParamsOut {
    fn from(p: &ModelParams) -> Self {
        ParamsOut { j: Num(p.j), lambda: Num(p.lambda), gamma: Num(p.gamma), n: p.n }
    }
}

#[derive(Serialize)]
struct LevelOut {
    re: Num,
    im: Num,
    sector: &'static str,
    occupation: u64,
}

#[derive(Serialize)]
struct EigenvalueOut {
    re: Num,
    im: Num,
    sector: &'static str,
}

#[derive(Serialize)]
struct OracleOut {
    levels: Vec<EigenvalueOut>,
    max_residual: Num,
}

#[derive(Serialize)]
struct SpectrumOut {
    schema_version: u32,
    params: ParamsOut,
    sector: &'static str,
    levels: Vec<LevelOut>,
    oracle: Option<OracleOut>,
    /// Largest per-sector bottleneck distance between analytic and oracle levels.
    max_match_distance: Option<Num>,
}

pub fn spectrum(params: &ModelParams, choice: SectorChoice, format: Format) -> Result<Vec<u8>> {
    let sectors = choice.sectors();
    let mut levels = many_body_levels(params)?;
    levels.retain(|l| sectors.contains(&l.sector));
    levels.sort_by(|a, b| {
        (a.sector, a.energy.re, a.energy.im, a.occupation)
            .partial_cmp(&(b.sector, b.energy.re, b.energy.im, b.occupation))
            .expect("finite energies")
    });

    let mut oracle = None;
    let mut distance = None;
    if params.n <= MAX_DENSE_SITES {
        let mut eigenvalues = Vec::new();
        let mut max_residual: f64 = 0.0;
        let mut worst: f64 = 0.0;
        for &sector in &sectors {
            let report = sector_oracle_spectrum(params, sector)?;
            let analytic: Vec<C64> = levels.iter().filter(|l| l.sector == sector).map(|l| l.energy).collect();
            worst = worst.max(compare_spectra(&analytic, &report.eigenvalues)?);
            max_residual = max_residual.max(report.max_residual);
            eigenvalues.extend(sorted(&report.eigenvalues).into_iter().map(|e| (sector, e)));
        }
        oracle = Some((eigenvalues, max_residual));
        distance = Some(worst);
    }

    match format {
        Format::Json => to_json(&SpectrumOut {
            schema_version: SCHEMA_VERSION,
            params: params.into(),
            sector: choice.label(),
            levels: levels
                .iter()
                .map(|l| LevelOut {
                    re: Num(l.energy.re),
                    im: Num(l.energy.im),
                    sector: l.sector.symbol(),
                    occupation: l.occupation,
                })
                .collect(),
            oracle: oracle.map(|(eigenvalues, max_residual)| OracleOut {
                levels: eigenvalues
                    .iter()
                    .map(|(s, e)| EigenvalueOut { re: Num(e.re), im: Num(e.im), sector: s.symbol() })
                    .collect(),
                max_residual: Num(max_residual),
            }),
            max_match_distance: distance.map(Num),
        }),
        _ => {
            let mut t = Table::new("spectrum", &["source", "sector", "occupation", "re", "im"])?;
            for l in &levels {
                t.row([
                    "analytic".to_string(),
                    l.sector.symbol().to_string(),
                    l.occupation.to_string(),
                    fmt_f64(l.energy.re),
                    fmt_f64(l.energy.im),
                ])?;
            }
            if let Some((eigenvalues, _)) = &oracle {
                for (s, e) in eigenvalues {
                    t.row(["oracle".to_string(), s.symbol().to_string(), String::new(), fmt_f64(e.re), fmt_f64(e.im)])?;
                }
            }
            t.finish()
        }
    }
}

#[derive(Serialize)]
struct PhasePointOut {
    lambda: Num,
    gamma: Num,
    class: &'static str,
}

#[derive(Serialize)]
struct AxisOut {
    min: Num,
    max: Num,
    resolution: usize,
}

impl From<&Axis> for AxisOut {
    fn from(a: &Axis) -> Self {
        AxisOut { min: Num(a.min), max: Num(a.max), resolution: a.resolution }
    }
}

#[derive(Serialize)]
struct PhasePanelOut {
    n: usize,
    points: Vec<PhasePointOut>,
    /// Finite-N boundary `λ_c(γ)` on the γ axis.
    boundary: Vec<[Num; 2]>,
}

#[derive(Serialize)]
struct PhaseOut {
    schema_version: u32,
    lambda: AxisOut,
    gamma: AxisOut,
    panels: Vec<PhasePanelOut>,
}

pub fn phase(sizes: &[usize], lambda: Axis, gamma: Axis, format: Format) -> Result<Vec<u8>> {
    let gammas = gamma.values();
    let panels = sizes
        .iter()
        .map(|&n| Ok((grid_scan(n, lambda, gamma)?, boundary_curve(n, &gammas)?)))
        .collect::<Result<Vec<_>>>()?;
    match format {
        Format::Svg => Ok(svg::phase_map(&panels).into_bytes()),
        Format::Json => to_json(&PhaseOut {
            schema_version: SCHEMA_VERSION,
            lambda: (&lambda).into(),
            gamma: (&gamma).into(),
            panels: panels
                .iter()
                .map(|(grid, curve)| PhasePanelOut {
                    n: grid.n,
                    points: grid
                        .points
                        .iter()
                        .map(|p| PhasePointOut { lambda: Num(p.lambda), gamma: Num(p.gamma), class: p.classification.label() })
                        .collect(),
                    boundary: curve.gamma_grid.iter().zip(&curve.lambda_c).map(|(&g, &l)| [Num(g), Num(l)]).collect(),
                })
                .collect(),
        }),
        Format::Csv => {
            let mut t = Table::new("phase", &["n", "lambda", "gamma", "class"])?;
            for (grid, _) in &panels {
                for p in &grid.points {
                    t.row([grid.n.to_string(), fmt_f64(p.lambda), fmt_f64(p.gamma), p.classification.label().to_string()])?;
                }
            }
            t.finish()
        }
    }
}

struct KappaRow {
    gamma: f64,
    lambda: f64,
    sector: Sector,
    exact: [f64; 4],
    approx: [f64; 4],
}

#[derive(Serialize)]
struct KappaRowOut {
    gamma: Num,
    lambda: Num,
    sector: &'static str,
    exact: Vec<Num>,
    approx: Vec<Num>,
}

#[derive(Serialize)]
struct SkippedOut {
    gamma: Num,
    lambda: Num,
    reason: String,
}

#[derive(Serialize)]
struct KappaOut {
    schema_version: u32,
    n: usize,
    j: Num,
    rows: Vec<KappaRowOut>,
    /// Sweep points outside the unbroken region, where κ is undefined.
    skipped: Vec<SkippedOut>,
    /// Largest `|κ_+(d) − κ_−(d)|` over the sweep, `d ≤ 3`.
    max_sector_difference: Num,
}

pub fn kappa(n: usize, j: f64, gammas: &[f64], lambda: Axis, choice: SectorChoice, format: Format) -> Result<Vec<u8>> {
    let sectors = choice.sectors();
    let orders = 4.min(n);
    let points: Vec<(f64, f64)> = gammas.iter().flat_map(|&g| lambda.values().into_iter().map(move |l| (g, l))).collect();
    let results: Vec<std::result::Result<Vec<KappaRow>, (f64, f64, String)>> = points
        .par_iter()
        .map(|&(gamma, l)| {
            let p = ModelParams::new(j, l, gamma, n).map_err(|e| (gamma, l, e.to_string()))?;
            let mut approx = [f64::NAN; 4];
            for (d, a) in approx.iter_mut().enumerate().take(orders) {
                *a = kappa_approx(&p, d).map_err(|e| (gamma, l, e.to_string()))?;
            }
            let mut rows = Vec::new();
            for &sector in &sectors {
                let table = coupling_table(&p, sector).map_err(|e| (gamma, l, e.to_string()))?;
                let mut exact = [f64::NAN; 4];
                for (d, x) in exact.iter_mut().enumerate().take(orders) {
                    *x = table.at(d);
                }
                rows.push(KappaRow { gamma, lambda: l, sector, exact, approx });
            }
            Ok(rows)
        })
        .collect();
    let mut rows = Vec::new();
    let mut skipped = Vec::new();
    for r in results {
        match r {
            Ok(mut v) => rows.append(&mut v),
            Err(s) => skipped.push(s),
        }
    }
    let mut max_diff: f64 = 0.0;
    for pair in rows.chunks(2).filter(|c| c.len() == 2 && c[0].sector != c[1].sector) {
        for d in 0..orders {
            max_diff = max_diff.max((pair[0].exact[d] - pair[1].exact[d]).abs());
        }
    }

    match format {
        Format::Svg => {
            let panels: Vec<Vec<svg::KappaSeries>> = (0..orders)
                .map(|d| {
                    gammas
                        .iter()
                        .map(|&g| {
                            let mine = rows.iter().filter(|r| r.gamma == g);
                            let mut approx: Vec<(f64, f64)> =
                                mine.clone().filter(|r| r.sector == sectors[0]).map(|r| (r.lambda, r.approx[d])).collect();
                            approx.dedup();
                            let exact = sectors
                                .iter()
                                .map(|&s| {
                                    (s.symbol(), mine.clone().filter(|r| r.sector == s).map(|r| (r.lambda, r.exact[d])).collect())
                                })
                                .collect();
                            svg::KappaSeries { label: format!("γ = {g}"), approx, exact }
                        })
                        .collect()
                })
                .collect();
            Ok(svg::kappa_panels(&panels).into_bytes())
        }
        Format::Json => to_json(&KappaOut {
            schema_version: SCHEMA_VERSION,
            n,
            j: Num(j),
            rows: rows
                .iter()
                .map(|r| KappaRowOut {
                    gamma: Num(r.gamma),
                    lambda: Num(r.lambda),
                    sector: r.sector.symbol(),
                    exact: nums(&r.exact[..orders]),
                    approx: nums(&r.approx[..orders]),
                })
                .collect(),
            skipped: skipped
                .into_iter()
                .map(|(g, l, reason)| SkippedOut { gamma: Num(g), lambda: Num(l), reason })
                .collect(),
            max_sector_difference: Num(max_diff),
        }),
        Format::Csv => {
            let mut t = Table::new("kappa", &["n", "gamma", "lambda", "sector", "d", "exact", "approx"])?;
            for r in &rows {
                for d in 0..orders {
                    t.row([
                        n.to_string(),
                        fmt_f64(r.gamma),
                        fmt_f64(r.lambda),
                        r.sector.symbol().to_string(),
                        d.to_string(),
                        fmt_f64(r.exact[d]),
                        fmt_f64(r.approx[d]),
                    ])?;
                }
            }
            t.finish()
        }
    }
}

struct ComparePoint {
    params: ModelParams,
    h: Vec<C64>,
    counterpart: Vec<f64>,
    counterpart_spin: Vec<C64>,
    reduced: Vec<C64>,
    bound: f64,
}

fn real_sorted(values: &[f64]) -> Vec<f64> {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    v
}

#[derive(Serialize)]
struct ComplexOut {
    re: Num,
    im: Num,
}

fn complex_out(values: &[C64]) -> Vec<ComplexOut> {
    values.iter().map(|e| ComplexOut { re: Num(e.re), im: Num(e.im) }).collect()
}

#[derive(Serialize)]
struct DistancesOut {
    counterpart_vs_h: Num,
    counterpart_spin_vs_counterpart: Num,
    reduced_vs_h: Num,
    truncation_bound: Num,
}

#[derive(Serialize)]
struct ComparePointOut {
    params: ParamsOut,
    h: Vec<ComplexOut>,
    counterpart: Vec<Num>,
    counterpart_spin: Vec<ComplexOut>,
    reduced: Vec<ComplexOut>,
    distances: DistancesOut,
}

#[derive(Serialize)]
struct CompareOut {
    schema_version: u32,
    points: Vec<ComparePointOut>,
}

pub fn compare(points: &[ModelParams], format: Format) -> Result<Vec<u8>> {
    let data = points
        .iter()
        .map(|p| {
            Ok(ComparePoint {
                params: *p,
                h: sorted(&oracle_spectrum(p)?.eigenvalues),
                counterpart: real_sorted(&counterpart_spectrum(p)?),
                counterpart_spin: sorted(&counterpart_spin_spectrum(p)?.eigenvalues),
                reduced: sorted(&reduced_spectrum(p)?.eigenvalues),
                bound: truncation_bound(p)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    match format {
        Format::Svg => {
            let groups: Vec<(String, Vec<(&str, Vec<f64>)>)> = data
                .iter()
                .map(|c| {
                    (
                        format!("N = {}", c.params.n),
                        vec![("H", c.h.iter().map(|e| e.re).collect()), ("reduced XY", c.reduced.iter().map(|e| e.re).collect())],
                    )
                })
                .collect();
            Ok(svg::level_chart(&groups).into_bytes())
        }
        Format::Json => {
            let mut out = Vec::new();
            for c in &data {
                let lifted: Vec<C64> = c.counterpart.iter().map(|&e| C64::new(e, 0.0)).collect();
                out.push(ComparePointOut {
                    params: (&c.params).into(),
                    h: complex_out(&c.h),
                    counterpart: nums(&c.counterpart),
                    counterpart_spin: complex_out(&c.counterpart_spin),
                    reduced: complex_out(&c.reduced),
                    distances: DistancesOut {
                        counterpart_vs_h: Num(compare_spectra(&lifted, &c.h)?),
                        counterpart_spin_vs_counterpart: Num(compare_spectra(&c.counterpart_spin, &lifted)?),
                        reduced_vs_h: Num(compare_spectra(&c.reduced, &c.h)?),
                        truncation_bound: Num(c.bound),
                    },
                });
            }
            to_json(&CompareOut { schema_version: SCHEMA_VERSION, points: out })
        }
        Format::Csv => {
            let mut t = Table::new(
                "compare",
                &["n", "index", "h_re", "h_im", "counterpart", "counterpart_spin", "reduced_re", "reduced_im"],
            )?;
            for c in &data {
                for i in 0..c.h.len() {
                    t.row([
                        c.params.n.to_string(),
                        i.to_string(),
                        fmt_f64(c.h[i].re),
                        fmt_f64(c.h[i].im),
                        fmt_f64(c.counterpart[i]),
                        fmt_f64(c.counterpart_spin[i].re),
                        fmt_f64(c.reduced[i].re),
                        fmt_f64(c.reduced[i].im),
                    ])?;
                }
            }
            t.finish()
        }
    }
}

#[derive(Serialize)]
struct CriterionOut<'a> {
    id: u8,
    name: &'a str,
    passed: bool,
    measured: Num,
    threshold: Num,
    detail: &'a str,
}

#[derive(Serialize)]
struct ValidateOut<'a> {
    schema_version: u32,
    passed: bool,
    criteria: Vec<CriterionOut<'a>>,
}

/// Runs the selected criteria (all when empty); returns the report and
/// whether every criterion passed. One status line per criterion goes to stderr.
pub fn validate(criteria: &[u8], format: Format) -> Result<(Vec<u8>, bool)> {
    let ids: Vec<u8> = if criteria.is_empty() { (1..=CRITERIA.len() as u8).collect() } else { criteria.to_vec() };
    let mut outcomes: Vec<CriterionOutcome> = Vec::new();
    for id in ids {
        let outcome = CRITERIA[id as usize - 1]()?;
        eprintln!("{}", outcome.line());
        outcomes.push(outcome);
    }
    let passed = outcomes.iter().all(|o| o.passed);
    let bytes = match format {
        Format::Csv => {
            let mut t = Table::new("validate", &["id", "name", "passed", "measured", "threshold", "detail"])?;
            for o in &outcomes {
                t.row([
                    o.id.to_string(),
                    o.name.to_string(),
                    o.passed.to_string(),
                    fmt_f64(o.measured),
                    fmt_f64(o.threshold),
                    o.detail.clone(),
                ])?;
            }
            t.finish()?
        }
        _ => to_json(&ValidateOut {
            schema_version: SCHEMA_VERSION,
            passed,
            criteria: outcomes
                .iter()
                .map(|o| CriterionOut {
                    id: o.id,
                    name: o.name,
                    passed: o.passed,
                    measured: Num(o.measured),
                    threshold: Num(o.threshold),
                    detail: &o.detail,
                })
                .collect(),
        })?,
    };
    Ok((bytes, passed))
}

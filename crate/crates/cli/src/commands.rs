use crate::args::{Curve, Format, PointArgs, PropertyArg, Quantity, ScanArgs};
use crate::config::{RangeValue, ScanFile};
use crate::exit;
use crate::format::{g17, to_json};
use gini_core::{
    d1_ln_k, d2_t_ln_h, fd_validate, gini_mean, h_jet, k_value, ln_gini_quadrature, EvalConfig,
    GiniError, Interval, ParamPair, PositivePair, PropertyId, PropertyReport, ScanSpec,
};

pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Self {
            code: exit::USAGE,
            message: message.into(),
        }
    }
}

impl From<GiniError> for Failure {
    fn from(e: GiniError) -> Self {
        Failure::usage(e.to_string())
    }
}

pub struct Rendered {
    pub text: String,
    pub code: u8,
}

fn point(args: &PointArgs) -> Result<(ParamPair, PositivePair), Failure> {
    Ok((
        ParamPair::new(args.r, args.s)?,
        PositivePair::new(args.x, args.y)?,
    ))
}

fn quantity_name(q: Quantity) -> &'static str {
    match q {
        Quantity::Gini => "gini",
        Quantity::LnH => "ln-h",
        Quantity::D1LnH => "d1-ln-h",
        Quantity::D2LnH => "d2-ln-h",
        Quantity::K => "k",
        Quantity::D1LnK => "d1-ln-k",
        Quantity::D2TLnH => "d2-t-ln-h",
        Quantity::QuadOracle => "quad-oracle",
    }
}

pub fn evaluate(
    q: Quantity,
    t: f64,
    params: &ParamPair,
    pair: &PositivePair,
) -> Result<f64, GiniError> {
    let cfg = EvalConfig::default();
    if !t.is_finite() {
        return Err(GiniError::Domain(format!("t must be finite, got {t}")));
    }
    let shifted = params.shifted(t);
    Ok(match q {
        Quantity::Gini => gini_mean(&shifted, pair, &cfg)?,
        Quantity::LnH => h_jet(t, params, pair, &cfg)?.ln_h,
        Quantity::D1LnH => h_jet(t, params, pair, &cfg)?.d1,
        Quantity::D2LnH => h_jet(t, params, pair, &cfg)?.d2,
        Quantity::K => k_value(t, params, pair, &cfg)?,
        Quantity::D1LnK => d1_ln_k(t, params, pair, &cfg)?,
        Quantity::D2TLnH => d2_t_ln_h(t, params, pair, &cfg)?,
        Quantity::QuadOracle => ln_gini_quadrature(&shifted, pair, &cfg)?,
    })
}

pub fn run_eval(
    format: Format,
    args: &PointArgs,
    t: f64,
    q: Quantity,
) -> Result<Rendered, Failure> {
    let (params, pair) = point(args)?;
    let value = evaluate(q, t, &params, &pair)?;
    let text = match format {
        Format::Json => format!(
            "{{\"inputs\":{{\"r\":{},\"s\":{},\"x\":{},\"y\":{},\"t\":{}}},\"quantity\":\"{}\",\"value\":{}}}\n",
            g17(args.r),
            g17(args.s),
            g17(args.x),
            g17(args.y),
            g17(t),
            quantity_name(q),
            g17(value)
        ),
        Format::Csv => format!(
            "r,s,x,y,t,quantity,value\n{},{},{},{},{},{},{}\n",
            g17(args.r),
            g17(args.s),
            g17(args.x),
            g17(args.y),
            g17(t),
            quantity_name(q),
            g17(value)
        ),
    };
    Ok(Rendered {
        text,
        code: exit::SUCCESS,
    })
}

fn curve_value(
    curve: Curve,
    t: f64,
    params: &ParamPair,
    pair: &PositivePair,
) -> Result<f64, GiniError> {
    let cfg = EvalConfig::default();
    Ok(match curve {
        Curve::K => k_value(t, params, pair, &cfg)?,
        _ => {
            let jet = h_jet(t, params, pair, &cfg)?;
            match curve {
                Curve::H => jet.ln_h.exp(),
                Curve::LnH => jet.ln_h,
                Curve::D1LnH => jet.d1,
                Curve::D2LnH => jet.d2,
                Curve::TLnH => t * jet.ln_h,
                Curve::K => unreachable!(),
            }
        }
    })
}

/// `n` evenly spaced points on `[lo, hi]`, endpoints included exactly.
pub fn linspace(range: Interval, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| {
            if i + 1 == n {
                range.hi
            } else {
                range.lo + range.width() * (i as f64 / (n - 1) as f64)
            }
        })
        .collect()
}

pub fn run_samples(
    format: Format,
    curve: Curve,
    args: &PointArgs,
    t_range: &str,
    points: usize,
) -> Result<Rendered, Failure> {
    let range: Interval = t_range.parse()?;
    if points < 2 {
        return Err(Failure::usage(format!(
            "--points must be at least 2, got {points}"
        )));
    }
    let (params, pair) = point(args)?;
    let rows = linspace(range, points)
        .into_iter()
        .map(|t| Ok((t, curve_value(curve, t, &params, &pair)?)))
        .collect::<Result<Vec<_>, GiniError>>()?;
    let text = match format {
        Format::Csv => {
            let mut out = String::from("t,value\n");
            for (t, v) in &rows {
                out.push_str(&format!("{},{}\n", g17(*t), g17(*v)));
            }
            out
        }
        Format::Json => {
            let body: Vec<String> = rows
                .iter()
                .map(|(t, v)| format!("[{},{}]", g17(*t), g17(*v)))
                .collect();
            format!("[{}]\n", body.join(","))
        }
    };
    Ok(Rendered {
        text,
        code: exit::SUCCESS,
    })
}

fn pick_range(
    flag: &Option<String>,
    file: &Option<RangeValue>,
    default: Interval,
) -> Result<Interval, Failure> {
    if let Some(text) = flag {
        return Ok(text.parse()?);
    }
    match file {
        Some(v) => v.to_interval().map_err(Failure::usage),
        None => Ok(default),
    }
}

pub struct ScanPlan {
    pub properties: Vec<PropertyId>,
    pub all: bool,
    pub spec: ScanSpec,
    pub cfg: EvalConfig,
    pub h: f64,
    pub threads: Option<usize>,
}

pub fn plan_scan(args: &ScanArgs) -> Result<ScanPlan, Failure> {
    let file = match &args.config {
        Some(path) => ScanFile::load(path).map_err(Failure::usage)?,
        None => ScanFile::default(),
    };
    let defaults = ScanSpec::default();
    let spec = ScanSpec {
        r_range: pick_range(&args.r_range, &file.r_range, defaults.r_range)?,
        s_range: pick_range(&args.s_range, &file.s_range, defaults.s_range)?,
        x_range: pick_range(&args.x_range, &file.x_range, defaults.x_range)?,
        y_range: pick_range(&args.y_range, &file.y_range, defaults.y_range)?,
        t_range: pick_range(&args.t_range, &file.t_range, defaults.t_range)?,
        grid_points_per_axis: args
            .grid
            .or(file.grid)
            .unwrap_or(defaults.grid_points_per_axis),
        random_samples: args
            .samples
            .or(file.samples)
            .unwrap_or(defaults.random_samples),
        seed: args.seed.or(file.seed).unwrap_or(defaults.seed),
        boundary_band: args
            .boundary_band
            .or(file.boundary_band)
            .unwrap_or(defaults.boundary_band),
        sign_tol: args.sign_tol.or(file.sign_tol).unwrap_or(defaults.sign_tol),
    };
    spec.validate()?;
    let base = EvalConfig::default();
    let cfg = EvalConfig {
        near_equal_rel_tol: file.near_equal_rel_tol.unwrap_or(base.near_equal_rel_tol),
        exp_saturation: file.exp_saturation.unwrap_or(base.exp_saturation),
        quad_tol: file.quad_tol.unwrap_or(base.quad_tol),
    };
    cfg.validate()?;

    let property = match (args.property, &file.property) {
        (Some(p), _) => p,
        (None, Some(name)) if name == "all" => PropertyArg::All,
        (None, Some(name)) => match name.parse::<PropertyId>()? {
            PropertyId::Integrand => PropertyArg::Integrand,
            PropertyId::Thm1 => PropertyArg::Thm1,
            PropertyId::Thm2H => PropertyArg::Thm2H,
            PropertyId::Thm2K => PropertyArg::Thm2K,
            PropertyId::Thm3 => PropertyArg::Thm3,
            PropertyId::Fd => PropertyArg::Fd,
        },
        (None, None) => {
            return Err(Failure::usage(
                "scan needs --property (or `property` in --config)",
            ))
        }
    };
    let properties = match property {
        PropertyArg::All => PropertyId::ALL.to_vec(),
        PropertyArg::Integrand => vec![PropertyId::Integrand],
        PropertyArg::Thm1 => vec![PropertyId::Thm1],
        PropertyArg::Thm2H => vec![PropertyId::Thm2H],
        PropertyArg::Thm2K => vec![PropertyId::Thm2K],
        PropertyArg::Thm3 => vec![PropertyId::Thm3],
        PropertyArg::Fd => vec![PropertyId::Fd],
    };
    let h = args
        .h
        .or(file.h)
        .unwrap_or(gini_core::verify::DEFAULT_FD_STEP);
    if !(h.is_finite() && h > 0.0) {
        return Err(Failure::usage(format!("--h must be positive, got {h}")));
    }
    let threads = args.threads.or(file.threads);
    if threads == Some(0) {
        return Err(Failure::usage("--threads must be at least 1"));
    }
    Ok(ScanPlan {
        properties,
        all: property == PropertyArg::All,
        spec,
        cfg,
        h,
        threads,
    })
}

fn execute(plan: &ScanPlan) -> Result<Vec<PropertyReport>, GiniError> {
    plan.properties
        .iter()
        .map(|id| match id {
            PropertyId::Fd => fd_validate(&plan.spec, &plan.cfg, plan.h),
            other => other.run(&plan.spec, &plan.cfg),
        })
        .collect()
}

pub fn run_scan(format: Format, args: &ScanArgs) -> Result<Rendered, Failure> {
    let plan = plan_scan(args)?;
    let reports = match plan.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Failure::usage(format!("cannot start {n} threads: {e}")))?
            .install(|| execute(&plan))?,
        None => execute(&plan)?,
    };
    let code = if reports.iter().all(|r| r.passed) {
        exit::SUCCESS
    } else {
        exit::VIOLATION
    };
    let text = match format {
        Format::Json if plan.all => to_json(&reports) + "\n",
        Format::Json => to_json(&reports[0]) + "\n",
        Format::Csv => {
            let mut out = String::from(
                "property_id,samples_checked,skipped,passed,vacuous,worst_margin,violations\n",
            );
            for r in &reports {
                out.push_str(&format!(
                    "{},{},{},{},{},{},{}\n",
                    r.property_id,
                    r.samples_checked,
                    r.skipped,
                    r.passed,
                    r.vacuous,
                    g17(r.worst_margin),
                    r.violations.len()
                ));
            }
            out
        }
    };
    Ok(Rendered { text, code })
}

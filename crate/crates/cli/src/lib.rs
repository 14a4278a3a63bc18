//! Report building and rendering for the `squarewalk` command line.
//!
//! Every command produces a serde document; JSON output serializes it
//! directly while CSV and text render the same numbers through [`NumberFormat`].

use std::fmt::Write as _;

use serde::Serialize;
use squarewalk::character::{linear_real, real_nonprincipal, TableDocument, C64};
use squarewalk::error::{Error, GroupError};
use squarewalk::oracle::{self, DenseProbability};
use squarewalk::walk::{self, AsymptoticRate};
use squarewalk::{Analysis, ZooSpec};
use thiserror::Error;

pub mod exit {
    pub const SUCCESS: u8 = 0;
    pub const USAGE: u8 = 2;
    pub const LIMITS: u8 = 3;
    pub const INTERNAL: u8 = 4;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Library(#[from] Error),
    #[error("{0}")]
    Usage(String),
}

impl From<GroupError> for CliError {
    fn from(e: GroupError) -> Self {
        CliError::Library(e.into())
    }
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => exit::USAGE,
            CliError::Library(Error::Group(e)) => match e {
                GroupError::OrderCapExceeded { .. }
                | GroupError::DegreeLimitExceeded { .. }
                | GroupError::ParameterLimit { .. } => exit::LIMITS,
                GroupError::InvalidPermutation(_)
                | GroupError::DegreeMismatch(..)
                | GroupError::Parse(_)
                | GroupError::InvalidSpec(_) => exit::USAGE,
            },
            CliError::Library(_) => exit::INTERNAL,
        }
    }
}

/// Where the group comes from: a zoo spec or a generator string.
pub fn resolve_group(group: Option<&str>, generators: Option<&str>) -> Result<ZooSpec, CliError> {
    match (group, generators) {
        (Some(g), None) => Ok(ZooSpec::parse(g)?),
        (None, Some(gens)) => Ok(ZooSpec::Custom(gens.to_string())),
        _ => Err(CliError::Usage(
            "exactly one of --group or --generators is required".into(),
        )),
    }
}

/// How numbers are written in CSV and text output.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NumberFormat {
    /// Decimal notation rounded to 15 significant digits.
    Significant,
    /// Fixed number of decimal places.
    Fixed(usize),
}

pub const SIGNIFICANT_DIGITS: usize = 15;

/// Rounds to 15 significant digits; JSON numbers go through this too.
pub fn round_significant(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x)
        .parse()
        .expect("formatted float parses")
}

impl NumberFormat {
    pub fn format(self, x: f64) -> String {
        match self {
            // f64 Display never switches to scientific notation
            NumberFormat::Significant => format!("{}", round_significant(x)),
            NumberFormat::Fixed(places) => format!("{x:.places$}"),
        }
    }
}

fn opt_round(x: Option<f64>) -> Option<f64> {
    x.map(round_significant)
}

#[derive(Clone, Debug, Serialize)]
pub struct GroupInfo {
    pub spec: String,
    pub order: usize,
    pub degree: usize,
    pub generators: Vec<String>,
    pub class_sizes: Vec<usize>,
}

impl GroupInfo {
    fn new(spec: &ZooSpec, a: &Analysis) -> Self {
        Self {
            spec: spec.to_string(),
            order: a.group.order(),
            degree: a.group.degree(),
            generators: a
                .group
                .generator_indices()
                .iter()
                .map(|&i| a.group.element(i).to_string())
                .collect(),
            class_sizes: a.classes.class_sizes.clone(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CharacterSummary {
    pub degrees: Vec<usize>,
    pub fs_indicators: Vec<i8>,
    pub real_nonprincipal: Vec<usize>,
    pub linear_real: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProfileRow {
    pub n: u32,
    pub exact_distance: f64,
    pub theorem1_distance: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_distance: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_tv_distance: Option<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Predicates {
    pub a: bool,
    pub b: bool,
    pub c: bool,
    pub d: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Summary {
    pub converges: bool,
    pub d: Option<usize>,
    pub t: usize,
    pub limit_or_rate: AsymptoticRate,
    pub g1_order: usize,
    pub commutator_order: usize,
    pub converges_on_g1: bool,
    pub predicates: Predicates,
}

#[derive(Clone, Debug, Serialize)]
pub struct AnalyzeReport {
    pub group: GroupInfo,
    pub characters: CharacterSummary,
    pub profile: Vec<ProfileRow>,
    pub summary: Summary,
}

pub fn run_analyze(
    spec: &ZooSpec,
    n_max: u32,
    with_oracle: bool,
    max_order: usize,
) -> Result<AnalyzeReport, CliError> {
    if n_max == 0 {
        return Err(CliError::Usage("--n must be at least 1".into()));
    }
    let a = Analysis::from_spec(spec, max_order)?;
    let spectrum = walk::square_walk_spectrum(&a.table, &a.classes, &a.profile).map_err(Error::from)?;
    let report = walk::convergence_report(&a.group, &a.table, &a.profile).map_err(Error::from)?;
    let g1 = walk::converges_on_g1(&a.group, &a.profile);

    let oracle_powers = with_oracle.then(|| {
        oracle::convolution_powers(&DenseProbability::square_walk(&a.group), n_max, &a.group)
    });
    let profile = (1..=n_max)
        .map(|n| {
            let brute = oracle_powers.as_ref().map(|p| &p[n as usize - 1]);
            ProfileRow {
                n,
                exact_distance: round_significant(walk::exact_l2_distance(&spectrum, n)),
                theorem1_distance: round_significant(walk::theorem1_distance(&a.table, n)),
                oracle_distance: opt_round(brute.map(oracle::l2_distance_to_uniform)),
                oracle_tv_distance: opt_round(brute.map(oracle::total_variation_to_uniform)),
            }
        })
        .collect();

    let limit_or_rate = match walk::asymptotic_rate(&a.table) {
        AsymptoticRate::Leading {
            leading_coefficient,
            base,
            d,
            t,
            limit,
        } => AsymptoticRate::Leading {
            leading_coefficient: round_significant(leading_coefficient),
            base: round_significant(base),
            d,
            t,
            limit: opt_round(limit),
        },
        exact => exact,
    };

    Ok(AnalyzeReport {
        group: GroupInfo::new(spec, &a),
        characters: CharacterSummary {
            degrees: a.table.degrees.clone(),
            fs_indicators: a.table.fs_indicators.clone(),
            real_nonprincipal: real_nonprincipal(&a.table),
            linear_real: linear_real(&a.table),
        },
        profile,
        summary: Summary {
            converges: report.converges(),
            d: report.min_real_degree,
            t: report.multiplicity,
            limit_or_rate,
            g1_order: report.g1_order,
            commutator_order: report.commutator_order,
            converges_on_g1: g1.converges,
            predicates: Predicates {
                a: report.predicate_a,
                b: report.predicate_b,
                c: report.predicate_c,
                d: report.predicate_d,
            },
        },
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ElementRow {
    pub element: usize,
    pub permutation: String,
    pub count: u64,
    pub empirical: f64,
    pub exact: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SimulateReport {
    pub group: GroupInfo,
    pub n: u32,
    pub chains: u64,
    pub seed: u64,
    pub rng_algorithm: String,
    pub empirical_l2_distance: f64,
    pub empirical_tv_distance: f64,
    pub exact_l2_distance: f64,
    pub exact_tv_distance: f64,
    pub l2_standard_error: f64,
    pub elements: Vec<ElementRow>,
}

pub fn run_simulate(
    spec: &ZooSpec,
    n: u32,
    chains: u64,
    seed: u64,
    max_order: usize,
) -> Result<SimulateReport, CliError> {
    if n == 0 || chains == 0 {
        return Err(CliError::Usage("--n and --chains must be at least 1".into()));
    }
    let a = Analysis::from_spec(spec, max_order)?;
    let p = DenseProbability::square_walk(&a.group);
    let run = oracle::sample_walk(&p, &a.group, n, chains, seed).map_err(Error::from)?;
    let empirical = run.empirical();
    let exact = oracle::convolution_power_by_squaring(&p, n, &a.group);
    let elements = (0..a.group.order())
        .map(|g| ElementRow {
            element: g,
            permutation: a.group.element(g).to_string(),
            count: run.counts[g],
            empirical: round_significant(empirical.per_element[g]),
            exact: round_significant(exact.per_element[g]),
        })
        .collect();
    Ok(SimulateReport {
        group: GroupInfo::new(spec, &a),
        n,
        chains,
        seed,
        rng_algorithm: run.rng_algorithm.to_string(),
        empirical_l2_distance: round_significant(oracle::l2_distance_to_uniform(&empirical)),
        empirical_tv_distance: round_significant(oracle::total_variation_to_uniform(&empirical)),
        exact_l2_distance: round_significant(walk::theorem1_distance(&a.table, n)),
        exact_tv_distance: round_significant(oracle::total_variation_to_uniform(&exact)),
        l2_standard_error: round_significant(run.l2_standard_error()),
        elements,
    })
}

pub fn run_table(spec: &ZooSpec, max_order: usize) -> Result<TableDocument, CliError> {
    let a = Analysis::from_spec(spec, max_order)?;
    let mut doc = a.table.document(&a.group, &a.classes);
    for row in &mut doc.rows {
        for v in row.iter_mut() {
            *v = [round_significant(v[0]), round_significant(v[1])];
        }
    }
    Ok(doc)
}

pub fn to_json<T: Serialize>(doc: &T) -> String {
    serde_json::to_string_pretty(doc).expect("reports serialize")
}

pub fn analyze_csv(report: &AnalyzeReport, fmt: NumberFormat) -> String {
    let with_oracle = report.profile.iter().any(|r| r.oracle_distance.is_some());
    let mut out = String::from("n,exact_distance,theorem1_distance");
    if with_oracle {
        out.push_str(",oracle_distance,oracle_tv_distance");
    }
    out.push('\n');
    for row in &report.profile {
        let _ = write!(
            out,
            "{},{},{}",
            row.n,
            fmt.format(row.exact_distance),
            fmt.format(row.theorem1_distance)
        );
        if let (Some(l2), Some(tv)) = (row.oracle_distance, row.oracle_tv_distance) {
            let _ = write!(out, ",{},{}", fmt.format(l2), fmt.format(tv));
        }
        out.push('\n');
    }
    out
}

pub fn analyze_text(report: &AnalyzeReport, fmt: NumberFormat) -> String {
    let mut out = String::new();
    let g = &report.group;
    let c = &report.characters;
    let s = &report.summary;
    let _ = writeln!(out, "group {} (order {}, degree {})", g.spec, g.order, g.degree);
    let _ = writeln!(out, "class sizes      {:?}", g.class_sizes);
    let _ = writeln!(out, "degrees          {:?}", c.degrees);
    let _ = writeln!(out, "fs indicators    {:?}", c.fs_indicators);
    let _ = writeln!(out, "R(G)             {:?}", c.real_nonprincipal);
    let _ = writeln!(out, "R1(G)            {:?}", c.linear_real);
    out.push('\n');
    let table = analyze_csv(report, fmt);
    for line in table.lines() {
        let cells: Vec<&str> = line.split(',').collect();
        let _ = write!(out, "{:>4}", cells[0]);
        for cell in &cells[1..] {
            let _ = write!(out, "  {cell:>20}");
        }
        out.push('\n');
    }
    out.push('\n');
    let _ = writeln!(out, "converges         {}", s.converges);
    match &s.limit_or_rate {
        AsymptoticRate::ExactlyUniform => {
            let _ = writeln!(out, "rate             exactly uniform after one step");
        }
        AsymptoticRate::Leading {
            leading_coefficient,
            base,
            d,
            t,
            limit,
        } => {
            let _ = writeln!(
                out,
                "rate             {} * {}^n  (d = {d}, t = {t})",
                fmt.format(*leading_coefficient),
                fmt.format(*base)
            );
            if let Some(limit) = limit {
                let _ = writeln!(out, "limit            {}", fmt.format(*limit));
            }
        }
    }
    let p = &s.predicates;
    let _ = writeln!(out, "|G1|             {}", s.g1_order);
    let _ = writeln!(out, "|G'|             {}", s.commutator_order);
    let _ = writeln!(out, "converges on G1  {}", s.converges_on_g1);
    let _ = writeln!(out, "predicates       a={} b={} c={} d={}", p.a, p.b, p.c, p.d);
    out
}

pub fn simulate_csv(report: &SimulateReport, fmt: NumberFormat) -> String {
    let mut out = String::from("element,permutation,count,empirical,exact\n");
    for e in &report.elements {
        let _ = writeln!(
            out,
            "{},\"{}\",{},{},{}",
            e.element,
            e.permutation,
            e.count,
            fmt.format(e.empirical),
            fmt.format(e.exact)
        );
    }
    out
}

pub fn simulate_text(report: &SimulateReport, fmt: NumberFormat) -> String {
    let mut out = String::new();
    let g = &report.group;
    let _ = writeln!(out, "group {} (order {})", g.spec, g.order);
    let _ = writeln!(
        out,
        "n = {}, chains = {}, seed = {}, rng = {}",
        report.n, report.chains, report.seed, report.rng_algorithm
    );
    let rows = [
        ("empirical L2 distance", report.empirical_l2_distance),
        ("exact L2 distance", report.exact_l2_distance),
        ("L2 standard error", report.l2_standard_error),
        ("empirical TV distance", report.empirical_tv_distance),
        ("exact TV distance", report.exact_tv_distance),
    ];
    for (label, value) in rows {
        let _ = writeln!(out, "{label:<24}{}", fmt.format(value));
    }
    out
}

fn format_complex(v: [f64; 2], fmt: NumberFormat) -> String {
    let z = C64::new(v[0], v[1]);
    if z.im == 0.0 {
        fmt.format(z.re)
    } else {
        let sign = if z.im < 0.0 { '-' } else { '+' };
        format!("{}{sign}{}i", fmt.format(z.re), fmt.format(z.im.abs()))
    }
}

pub fn table_csv(doc: &TableDocument, fmt: NumberFormat) -> String {
    let mut out = String::from("character,degree,fs_indicator");
    for c in 0..doc.classes.len() {
        let _ = write!(out, ",class{c}_re,class{c}_im");
    }
    out.push('\n');
    for (j, row) in doc.rows.iter().enumerate() {
        let _ = write!(out, "{j},{},{}", doc.degrees[j], doc.fs_indicators[j]);
        for v in row {
            let _ = write!(out, ",{},{}", fmt.format(v[0]), fmt.format(v[1]));
        }
        out.push('\n');
    }
    out
}

pub fn table_text(doc: &TableDocument, fmt: NumberFormat) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "order {}", doc.order);
    for (c, info) in doc.classes.iter().enumerate() {
        let _ = writeln!(out, "class {c}: size {} rep {}", info.size, info.representative);
    }
    out.push('\n');
    for (j, row) in doc.rows.iter().enumerate() {
        let _ = write!(out, "chi{j:<3} d={:<3} nu={:+}  ", doc.degrees[j], doc.fs_indicators[j]);
        let cells: Vec<String> = row.iter().map(|v| format_complex(*v, fmt)).collect();
        out.push_str(&cells.join("  "));
        out.push('\n');
    }
    let _ = writeln!(out, "\nR(G)  = {:?}", doc.real_nonprincipal);
    let _ = writeln!(out, "R1(G) = {:?}", doc.linear_real);
    out
}

//! Monte Carlo sweeps over `p = n^-alpha` and their CSV form.
//!
//! Trial `j` at grid point `i` samples with `derive_seed(seed, i, j)`, so
//! rows do not depend on scheduling. Rows come back sorted by grid point and
//! trial. Analysis failures inside a trial land in the row's `error` column.

use std::collections::BTreeMap;
use std::fmt;
use std::io::{BufRead, BufReader, Read, Write};
use std::path::PathBuf;

use num_traits::Signed;
use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::certificates::{certify_pi1_nontrivial, find_rooted_six_cycle, is_sparse, Certification};
use crate::complex::Complex2;
use crate::density::{density_flow, e01, Density, Rational, RootSet};
use crate::error::{Error, Result};
use crate::homology::betti_f2;
use crate::random::{derive_seed, sample_k4np, sample_knp, Seed};
use crate::spectral::{garland_scan, GARLAND_THRESHOLD};
use crate::wedge::{classify, WedgeOutcome};

pub const CSV_HEADER: &str = "# cliquetop-csv v1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    #[default]
    Knp,
    K4np,
}

impl std::str::FromStr for Model {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "knp" => Ok(Model::Knp),
            "k4np" => Ok(Model::K4np),
            other => Err(Error::Config(format!("unknown model `{other}` (knp or k4np)"))),
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Model::Knp => "knp",
            Model::K4np => "k4np",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SparsityParams {
    #[serde(with = "rational_text")]
    pub eps: Rational,
    pub m: usize,
    pub r: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Toggles {
    pub homology: bool,
    pub density: bool,
    pub certificate: bool,
    pub sparsity: Option<SparsityParams>,
    pub spectral: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub n: u32,
    #[serde(default, with = "rational_list")]
    pub alphas: Vec<Rational>,
    /// Raw edge probabilities, run after the alpha grid.
    #[serde(default)]
    pub ps: Vec<f64>,
    pub trials: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub model: Model,
    #[serde(default)]
    pub toggles: Toggles,
    #[serde(default)]
    pub out: Option<PathBuf>,
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::Config("n must be at least 1".into()));
        }
        if self.trials == 0 {
            return Err(Error::Config("trials must be at least 1".into()));
        }
        if let Some(a) = self.alphas.iter().find(|a| !a.is_positive()) {
            return Err(Error::Config(format!("alpha {a} is not positive")));
        }
        if let Some(p) = self.ps.iter().find(|p| !(0.0..=1.0).contains(*p)) {
            return Err(Error::Config(format!("p {p} outside [0, 1]")));
        }
        if self.alphas.is_empty() && self.ps.is_empty() {
            return Err(Error::Config("no alphas or raw p values given".into()));
        }
        Ok(())
    }

    /// Grid points in run order: alphas ascending, then raw p values as given.
    pub fn grid(&self) -> Vec<GridPoint> {
        let mut alphas = self.alphas.clone();
        alphas.sort();
        alphas.dedup();
        alphas
            .into_iter()
            .map(|a| GridPoint::Alpha(a, p_of_alpha(self.n, a)))
            .chain(self.ps.iter().map(|&p| GridPoint::Raw(p)))
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GridPoint {
    Alpha(Rational, f64),
    Raw(f64),
}

impl GridPoint {
    pub fn p(&self) -> f64 {
        match *self {
            GridPoint::Alpha(_, p) | GridPoint::Raw(p) => p,
        }
    }

    pub fn alpha(&self) -> Option<Rational> {
        match *self {
            GridPoint::Alpha(a, _) => Some(a),
            GridPoint::Raw(_) => None,
        }
    }
}

/// `n^-alpha` rounded to 12 significant digits.
pub fn p_of_alpha(n: u32, alpha: Rational) -> f64 {
    let a = *alpha.numer() as f64 / *alpha.denom() as f64;
    round_significant((n as f64).powf(-a), 12)
}

fn round_significant(x: f64, digits: usize) -> f64 {
    format!("{:.*e}", digits - 1, x).parse().expect("formatted float parses")
}

/// Accepts `a/b`, a decimal such as `0.45`, or an integer; exact.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Config(format!("`{s}` is not a rational"));
    if let Some((a, b)) = s.split_once('/') {
        let (a, b): (i64, i64) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
        if b == 0 {
            return Err(bad());
        }
        return Ok(Rational::new(a, b));
    }
    let (sign, digits) = match s.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, s),
    };
    let (int, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if int.is_empty() && frac.is_empty() || !(int.chars().chain(frac.chars())).all(|c| c.is_ascii_digit()) || frac.len() > 15 {
        return Err(bad());
    }
    let den = 10i64.pow(frac.len() as u32);
    let int: i64 = if int.is_empty() { 0 } else { int.parse().map_err(|_| bad())? };
    let frac: i64 = if frac.is_empty() { 0 } else { frac.parse().map_err(|_| bad())? };
    let num = int.checked_mul(den).and_then(|x| x.checked_add(frac)).ok_or_else(bad)?;
    Ok(Rational::new(sign * num, den))
}

pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

mod rational_text {
    use super::*;

    #[derive(Deserialize)]
    #[serde(untagged)]
    pub(super) enum Raw {
        Text(String),
        Int(i64),
    }

    impl Raw {
        pub(super) fn into_rational<E: serde::de::Error>(self) -> std::result::Result<Rational, E> {
            match self {
                Raw::Text(s) => parse_rational(&s).map_err(E::custom),
                Raw::Int(i) => Ok(Rational::from_integer(i)),
            }
        }
    }

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        Raw::deserialize(d)?.into_rational()
    }
}

mod rational_list {
    use super::rational_text::Raw;
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(format_rational))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Rational>, D::Error> {
        Vec::<Raw>::deserialize(d)?.into_iter().map(Raw::into_rational).collect()
    }
}

/// One CSV row. Analyses that were not toggled on are empty. An infinite
/// density (no edges) is written as `1/0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub n: u32,
    pub model: Model,
    /// `a/b`, empty for raw-p grid points.
    pub alpha: Option<String>,
    pub p: f64,
    pub trial: usize,
    pub seed: u64,
    pub f0: u64,
    pub f1: u64,
    pub f2: u64,
    pub components: u64,
    pub chi: i64,
    pub b0: Option<u64>,
    pub b1: Option<u64>,
    pub b2: Option<u64>,
    pub e01_num: Option<i64>,
    pub e01_den: Option<i64>,
    pub e01r3_num: Option<i64>,
    pub e01r3_den: Option<i64>,
    pub has_rooted_6cycle: Option<bool>,
    pub certificate_issued: Option<bool>,
    pub sparse_flag: Option<bool>,
    pub min_link_gap: Option<f64>,
    pub frac_links_passing: Option<f64>,
    pub all_links_connected: Option<bool>,
    pub garland_pass: Option<bool>,
    pub wedge_consistent: Option<bool>,
    pub error: Option<String>,
}

fn density_parts(d: Density) -> (i64, i64) {
    match d {
        Density::Finite(r) => (*r.numer(), *r.denom()),
        Density::Infinite => (1, 0),
    }
}

impl TrialRecord {
    fn blank(config: &ExperimentConfig, point: GridPoint, trial: usize, seed: Seed) -> Self {
        TrialRecord {
            n: config.n,
            model: config.model,
            alpha: point.alpha().map(|a| format_rational(&a)),
            p: point.p(),
            trial,
            seed: seed.0,
            f0: 0,
            f1: 0,
            f2: 0,
            components: 0,
            chi: 0,
            b0: None,
            b1: None,
            b2: None,
            e01_num: None,
            e01_den: None,
            e01r3_num: None,
            e01r3_den: None,
            has_rooted_6cycle: None,
            certificate_issued: None,
            sparse_flag: None,
            min_link_gap: None,
            frac_links_passing: None,
            all_links_connected: None,
            garland_pass: None,
            wedge_consistent: None,
            error: None,
        }
    }

    fn note_error(&mut self, what: &str, e: Error) {
        let msg = format!("{what}: {e}");
        self.error = Some(match self.error.take() {
            Some(prev) => format!("{prev}; {msg}"),
            None => msg,
        });
    }
}

/// Runs every trial of the sweep, in parallel.
pub fn run_sweep(config: &ExperimentConfig) -> Result<Vec<TrialRecord>> {
    config.validate()?;
    let grid = config.grid();
    let jobs: Vec<(usize, usize)> = (0..grid.len())
        .flat_map(|i| (0..config.trials).map(move |j| (i, j)))
        .collect();
    let mut rows: Vec<(usize, usize, TrialRecord)> = jobs
        .into_par_iter()
        .map(|(i, j)| run_trial(config, grid[i], i, j).map(|r| (i, j, r)))
        .collect::<Result<Vec<_>>>()?;
    rows.sort_by_key(|r| (r.0, r.1));
    Ok(rows.into_iter().map(|r| r.2).collect())
}

fn run_trial(config: &ExperimentConfig, point: GridPoint, i: usize, j: usize) -> Result<TrialRecord> {
    let seed = derive_seed(Seed(config.seed), i as u64, j as u64);
    let mut row = TrialRecord::blank(config, point, j, seed);
    let (x, cells) = match config.model {
        Model::Knp => (sample_knp(config.n, point.p(), seed)?, None),
        Model::K4np => {
            let c = sample_k4np(config.n, point.p(), seed)?;
            (Complex2::clique_two_skeleton(config.n, c.edges())?, Some(c))
        }
    };
    let fv = cells.as_ref().map_or_else(|| x.f_vector(), |c| c.f_vector());
    row.f0 = fv.f0 as u64;
    row.f1 = fv.f1 as u64;
    row.f2 = fv.f2 as u64;
    row.chi = fv.euler_characteristic();
    row.components = x.component_count() as u64;
    let t = &config.toggles;

    if t.homology {
        let b = match &cells {
            Some(c) => betti_f2(c),
            None => betti_f2(&x),
        };
        row.b0 = Some(b[0] as u64);
        row.b1 = Some(b[1] as u64);
        row.b2 = Some(b[2] as u64);
        if cells.is_none() {
            row.wedge_consistent = Some(wedge_consistent(&x));
        }
    }
    // vertex/edge density depends only on the graph, which both models share
    if t.density {
        let (num, den) = density_parts(e01(&x));
        row.e01_num = Some(num);
        row.e01_den = Some(den);
        if config.n >= 3 {
            match density_flow(&x, &RootSet::first(3)) {
                Ok(d) => {
                    let (num, den) = density_parts(d.value);
                    row.e01r3_num = Some(num);
                    row.e01r3_den = Some(den);
                }
                Err(e) => row.note_error("rooted density", e),
            }
        }
    }
    if t.certificate {
        match find_rooted_six_cycle(&x) {
            Ok(c) => row.has_rooted_6cycle = Some(c.is_some()),
            Err(e) => row.note_error("six-cycle", e),
        }
        match certify_pi1_nontrivial(&x) {
            Ok(outcome) => row.certificate_issued = Some(matches!(outcome, Certification::Certified(_))),
            Err(e) => row.note_error("certificate", e),
        }
    }
    if let Some(s) = t.sparsity {
        match is_sparse(&x, s.eps, s.m, s.r) {
            Ok(v) => row.sparse_flag = Some(v.sparse),
            Err(e) => row.note_error("sparsity", e),
        }
    }
    // square cells change the links, so the scan is only defined for knp
    if t.spectral && cells.is_none() {
        let report = garland_scan(&x, GARLAND_THRESHOLD);
        row.min_link_gap = report.min_gap;
        row.frac_links_passing = Some(report.frac_links_passing());
        row.all_links_connected = Some(report.all_links_connected);
        row.garland_pass = Some(report.pass);
    }
    Ok(row)
}

/// Every component with density above 1/3 has wedge-consistent homology.
fn wedge_consistent(x: &Complex2) -> bool {
    x.connected_components()
        .iter()
        .filter(|c| e01(c).exceeds_one_third())
        .all(|c| matches!(classify(c), WedgeOutcome::Consistent(_)))
}

/// `count / total`, rendered to six decimals (half up) from exact integers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Fraction {
    pub count: u64,
    pub total: u64,
}

impl Fraction {
    fn add(&mut self, hit: Option<bool>) {
        if let Some(h) = hit {
            self.total += 1;
            self.count += u64::from(h);
        }
    }

    pub fn as_rational(&self) -> Option<Rational> {
        (self.total > 0).then(|| Rational::new(self.count as i64, self.total as i64))
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.total == 0 {
            return Ok(());
        }
        let scaled = (self.count as u128 * 2_000_000 + self.total as u128) / (2 * self.total as u128);
        write!(f, "{}.{:06}", scaled / 1_000_000, scaled % 1_000_000)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SummaryRow {
    pub alpha: Option<String>,
    pub p: f64,
    pub trials: u64,
    pub connected: Fraction,
    pub b1_zero: Fraction,
    pub certificate_issued: Fraction,
    pub sparse: Fraction,
    pub garland_pass: Fraction,
}

impl SummaryRow {
    pub const HEADER: &'static str = "alpha,p,trials,connected,b1_zero,certificate_issued,sparse,garland_pass";

    pub fn to_csv_line(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{}",
            self.alpha.as_deref().unwrap_or(""),
            self.p,
            self.trials,
            self.connected,
            self.b1_zero,
            self.certificate_issued,
            self.sparse,
            self.garland_pass
        )
    }
}

/// Per grid point fractions, in order of first appearance. Each fraction
/// counts only rows where that field is present.
pub fn summarize(records: &[TrialRecord]) -> Result<Vec<SummaryRow>> {
    if records.is_empty() {
        return Err(Error::Empty("no records to summarize"));
    }
    let mut order: Vec<(Option<String>, u64)> = Vec::new();
    let mut groups: BTreeMap<(Option<String>, u64), SummaryRow> = BTreeMap::new();
    for r in records {
        let key = (r.alpha.clone(), r.p.to_bits());
        let row = groups.entry(key.clone()).or_insert_with(|| {
            order.push(key);
            SummaryRow {
                alpha: r.alpha.clone(),
                p: r.p,
                trials: 0,
                connected: Fraction::default(),
                b1_zero: Fraction::default(),
                certificate_issued: Fraction::default(),
                sparse: Fraction::default(),
                garland_pass: Fraction::default(),
            }
        });
        row.trials += 1;
        row.connected.add(Some(r.components == 1));
        row.b1_zero.add(r.b1.map(|b| b == 0));
        row.certificate_issued.add(r.certificate_issued);
        row.sparse.add(r.sparse_flag);
        row.garland_pass.add(r.garland_pass);
    }
    Ok(order.into_iter().map(|k| groups.remove(&k).unwrap()).collect())
}

pub fn write_csv<W: Write>(records: &[TrialRecord], mut out: W) -> Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    let mut w = csv::Writer::from_writer(out);
    if records.is_empty() {
        w.write_record(csv_columns())?;
    }
    for r in records {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

fn csv_columns() -> &'static [&'static str] {
    &[
        "n",
        "model",
        "alpha",
        "p",
        "trial",
        "seed",
        "f0",
        "f1",
        "f2",
        "components",
        "chi",
        "b0",
        "b1",
        "b2",
        "e01_num",
        "e01_den",
        "e01r3_num",
        "e01r3_den",
        "has_rooted_6cycle",
        "certificate_issued",
        "sparse_flag",
        "min_link_gap",
        "frac_links_passing",
        "all_links_connected",
        "garland_pass",
        "wedge_consistent",
        "error",
    ]
}

pub fn read_csv<R: Read>(input: R) -> Result<Vec<TrialRecord>> {
    let mut reader = BufReader::new(input);
    let mut first = String::new();
    reader.read_line(&mut first)?;
    if first.trim_end() != CSV_HEADER {
        return Err(Error::Parse {
            line: 1,
            msg: format!("expected `{CSV_HEADER}`"),
        });
    }
    let mut r = csv::Reader::from_reader(reader);
    let headers = r.headers()?.clone();
    if headers.iter().ne(csv_columns().iter().copied()) {
        return Err(Error::Parse {
            line: 2,
            msg: "unexpected column layout".into(),
        });
    }
    r.deserialize().map(|row| row.map_err(Error::from)).collect()
}

/// Exact density from a record's pair of columns.
pub fn record_density(num: Option<i64>, den: Option<i64>) -> Option<Density> {
    match (num, den) {
        (Some(_), Some(0)) => Some(Density::Infinite),
        (Some(a), Some(b)) => Some(Density::finite(a, b)),
        _ => None,
    }
}

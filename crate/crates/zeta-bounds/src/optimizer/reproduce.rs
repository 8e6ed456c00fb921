//! The published tables as fixtures: parsing, certified re-evaluation at
//! the published parameters, and per-row optimization problems.

use super::{optimize_with, ObjectiveKind, OptSettings, OptimizationProblem};
use crate::bounds::{self, Condition, ConditionedBound, HParams, LadderTable, ReciprocalParams, RhParams};
use crate::numerics::{CertifiedReal, Constants, PrecisionContext, H_F64, W0_F64};
use crate::{Error, Result};
use std::path::Path;

/// Which published table a fixture row belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableId {
    /// Strip log-derivative constants, one row per pinned width.
    Q,
    /// Conditional log-derivative constants, one row per sigma0.
    QRh,
    /// Reciprocal log t constants, one row per ladder cutoff.
    Y,
    /// Slow-growth reciprocal constants.
    Yprime,
    /// Additive strip constants.
    B1,
    /// Named one-off constants.
    Consts,
}

impl TableId {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "Q" => Ok(TableId::Q),
            "QRH" => Ok(TableId::QRh),
            "Y" => Ok(TableId::Y),
            "YP" => Ok(TableId::Yprime),
            "B1" => Ok(TableId::B1),
            "CONST" => Ok(TableId::Consts),
            _ => Err(Error::Parse(format!(
                "unknown table id {s:?} (expected Q, QRH, Y, YP, B1 or CONST)"
            ))),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            TableId::Q => "Q",
            TableId::QRh => "QRH",
            TableId::Y => "Y",
            TableId::Yprime => "YP",
            TableId::B1 => "B1",
            TableId::Consts => "CONST",
        }
    }
}

impl std::fmt::Display for TableId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Parse a fixture literal into a ball: a decimal, an exact rational
/// `a/b`, or a symbolic anchor (W0, H0, H, ee = e^e, 2ee2 = 2e^{e^2}).
pub fn parse_value_ball(s: &str, prec: u32) -> Result<CertifiedReal> {
    match s {
        "W0" => Ok(Constants::w0_ball(prec)),
        "1/W0" => Ok(Constants::w0_ball(prec).recip()),
        "H" => Ok(Constants::h_ball(prec)),
        "H0" => Ok(Constants::h0_ball(prec)),
        "ee" => Ok(CertifiedReal::e(prec).exp()),
        "2ee2" => Ok(CertifiedReal::e(prec).powi(2).exp().mul_u32(2)),
        _ => {
            if let Some((num, den)) = s.split_once('/') {
                let num: i64 = num
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad rational numerator in {s:?}")))?;
                let den: u64 = den
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad rational denominator in {s:?}")))?;
                if den == 0 {
                    return Err(Error::Parse(format!("zero denominator in {s:?}")));
                }
                Ok(CertifiedReal::from_rational(num, den, prec))
            } else {
                CertifiedReal::from_decimal(s, prec)
            }
        }
    }
}

/// The same literals as [`parse_value_ball`], to plain f64 for the search
/// phase.
pub fn parse_value_f64(s: &str) -> Result<f64> {
    use std::f64::consts::E;
    match s {
        "W0" => Ok(W0_F64),
        "1/W0" => Ok(1.0 / W0_F64),
        "H" => Ok(H_F64),
        "H0" => Ok(crate::numerics::H0_F64),
        "ee" => Ok(E.exp()),
        "2ee2" => Ok(2.0 * (E * E).exp()),
        _ => {
            if let Some((num, den)) = s.split_once('/') {
                let num: f64 = num
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad rational numerator in {s:?}")))?;
                let den: f64 = den
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad rational denominator in {s:?}")))?;
                Ok(num / den)
            } else {
                s.parse()
                    .map_err(|_| Error::Parse(format!("bad numeric literal {s:?}")))
            }
        }
    }
}

/// One record of the fixture file:
/// `table_id; row_key; name=value; ...; published_value`.
#[derive(Debug, Clone)]
pub struct FixtureRow {
    pub table: TableId,
    pub key: String,
    pub params: Vec<(String, String)>,
    pub published: String,
}

impl FixtureRow {
    pub fn param(&self, name: &str) -> Option<&str> {
        self.params
            .iter()
            .find(|(k, _)| k == name)
            .map(|(_, v)| v.as_str())
    }

    pub fn published_f64(&self) -> Result<f64> {
        parse_value_f64(&self.published)
    }

    fn require(&self, name: &str) -> Result<&str> {
        self.param(name).ok_or_else(|| {
            Error::Parse(format!(
                "row {}:{} lacks the parameter {name}",
                self.table.as_str(),
                self.key
            ))
        })
    }

    pub fn ball(&self, name: &str, prec: u32) -> Result<CertifiedReal> {
        parse_value_ball(self.require(name)?, prec)
    }

    pub fn ball_or(&self, name: &str, prec: u32, default: CertifiedReal) -> Result<CertifiedReal> {
        match self.param(name) {
            Some(s) => parse_value_ball(s, prec),
            None => Ok(default),
        }
    }

    pub fn value_f64(&self, name: &str) -> Result<f64> {
        parse_value_f64(self.require(name)?)
    }

    pub fn value_f64_or(&self, name: &str, default: f64) -> Result<f64> {
        match self.param(name) {
            Some(s) => parse_value_f64(s),
            None => Ok(default),
        }
    }
}

/// The parsed fixture file.
#[derive(Debug, Clone)]
pub struct FixtureSet {
    rows: Vec<FixtureRow>,
}

impl FixtureSet {
    pub fn parse(text: &str) -> Result<Self> {
        let mut rows = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split(';').map(str::trim).collect();
            if fields.len() < 3 {
                return Err(Error::Parse(format!(
                    "fixture line {}: expected `table; key; ...; published`",
                    lineno + 1
                )));
            }
            let table = TableId::parse(fields[0])?;
            let key = fields[1].to_string();
            let published = fields[fields.len() - 1].to_string();
            let mut params = Vec::new();
            for f in &fields[2..fields.len() - 1] {
                let (k, v) = f.split_once('=').ok_or_else(|| {
                    Error::Parse(format!(
                        "fixture line {}: expected name=value, got {f:?}",
                        lineno + 1
                    ))
                })?;
                params.push((k.trim().to_string(), v.trim().to_string()));
            }
            rows.push(FixtureRow {
                table,
                key,
                params,
                published,
            });
        }
        if rows.is_empty() {
            return Err(Error::FixtureMissing("the fixture file has no rows".into()));
        }
        Ok(FixtureSet { rows })
    }

    /// The tables this crate ships with.
    pub fn bundled() -> Result<Self> {
        Self::parse(include_str!("../../data/published_tables.txt"))
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::FixtureMissing(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn rows(&self) -> &[FixtureRow] {
        &self.rows
    }

    pub fn table(&self, id: TableId) -> impl Iterator<Item = &FixtureRow> {
        self.rows.iter().filter(move |r| r.table == id)
    }

    pub fn find(&self, id: TableId, key: &str) -> Result<&FixtureRow> {
        self.table(id).find(|r| r.key == key).ok_or_else(|| {
            Error::FixtureMissing(format!("no row {key:?} in table {}", id.as_str()))
        })
    }

    /// The strip-table rows with width >= w1, as the ladder their widths
    /// and constants form.
    pub fn ladder_from(&self, w1: f64, prec: u32) -> Result<LadderTable> {
        let mut entries = Vec::new();
        for row in self.table(TableId::Q) {
            if parse_value_f64(&row.key)? >= w1 - 1e-9 {
                entries.push((
                    parse_value_ball(&row.key, prec)?,
                    parse_value_ball(&row.published, prec)?,
                ));
            }
        }
        LadderTable::new(entries)
    }

    /// The same ladder in plain f64 for the search phase.
    pub fn ladder_from_f64(&self, w1: f64) -> Result<Vec<(f64, f64)>> {
        let mut entries = Vec::new();
        for row in self.table(TableId::Q) {
            let w = parse_value_f64(&row.key)?;
            if w >= w1 - 1e-9 {
                entries.push((w, row.published_f64()?));
            }
        }
        Ok(entries)
    }
}

/// Evaluate one row's bound at its published parameters, certified.
pub fn certified_row(
    row: &FixtureRow,
    set: &FixtureSet,
    ctx: &PrecisionContext,
) -> Result<ConditionedBound> {
    let prec = ctx.bits();
    let one = CertifiedReal::from_u64(1, prec);
    match row.table {
        TableId::Q => {
            let d = row.ball_or("d", prec, Constants::w0_ball(prec).recip())?;
            let t0 = row.ball_or("t0", prec, Constants::h_ball(prec))?;
            let p = HParams::new(
                d,
                row.ball("beta", prec)?,
                row.ball("eps1", prec)?,
                row.ball("sigma1", prec)?,
                row.ball("eta", prec)?,
                t0,
            )?;
            Ok(bounds::q_h(&p, ctx)?.1)
        }
        TableId::QRh => {
            let sigma0 = parse_value_ball(&row.key, prec)?;
            let p = RhParams::with_default_horizon(
                sigma0,
                row.ball("eps", prec)?,
                row.ball("sigma1", prec)?,
                row.ball("eta", prec)?,
                row.ball("t0", prec)?,
            )?;
            bounds::q_rh(&p, ctx)
        }
        TableId::Y => {
            let w1 = parse_value_f64(&row.key)?;
            let p = ReciprocalParams::new(
                row.ball("d1", prec)?,
                row.ball("sigma1", prec)?,
                row.ball("eta", prec)?,
                row.ball_or("t0", prec, CertifiedReal::from_u64(13, prec))?,
                set.ladder_from(w1, prec)?,
                false,
            )?;
            bounds::y0(&p)
        }
        TableId::Yprime => {
            let w1 = parse_value_f64(&row.key)?;
            let p = ReciprocalParams::new(
                row.ball("d1", prec)?,
                CertifiedReal::from_rational(3, 2, prec),
                CertifiedReal::from_u64(3, prec),
                row.ball_or("t0", prec, CertifiedReal::from_u64(13, prec))?,
                set.ladder_from(w1, prec)?,
                true,
            )?;
            bounds::yprime0(&p)
        }
        TableId::B1 => {
            let t0 = parse_value_ball(&row.key, prec)?;
            let w = Constants::w0_ball(prec);
            Ok(bounds::c0_strip(&w, &one, &t0, &row.ball("eta", prec)?)?.1)
        }
        TableId::Consts => match row.key.as_str() {
            "q_one" => {
                let d = row.ball_or("d", prec, Constants::w0_ball(prec).recip())?;
                let t0 = row.ball_or("t0", prec, Constants::h_ball(prec))?;
                bounds::q_one(
                    &d,
                    &row.ball("eps1", prec)?,
                    &row.ball("sigma1", prec)?,
                    &row.ball("eta", prec)?,
                    &t0,
                    ctx,
                )
            }
            "y0_one_line" | "y0_one_line_tail" => {
                let p = ReciprocalParams::new(
                    row.ball("d1", prec)?,
                    row.ball("sigma1", prec)?,
                    row.ball("eta", prec)?,
                    row.ball_or("t0", prec, CertifiedReal::from_u64(13, prec))?,
                    LadderTable::empty(),
                    false,
                )?;
                bounds::y0(&p)
            }
            "yprime0_one_line" | "yprime0_one_line_tail" => {
                let p = ReciprocalParams::new(
                    row.ball("d1", prec)?,
                    CertifiedReal::from_rational(3, 2, prec),
                    CertifiedReal::from_u64(3, prec),
                    row.ball_or("t0", prec, CertifiedReal::from_u64(13, prec))?,
                    LadderTable::empty(),
                    true,
                )?;
                bounds::yprime0(&p)
            }
            "q_wascor" => {
                let p = RhParams::with_default_horizon(
                    row.ball("sigma0", prec)?,
                    row.ball("eps", prec)?,
                    row.ball("sigma1", prec)?,
                    row.ball("eta", prec)?,
                    row.ball("t0", prec)?,
                )?;
                bounds::q_rh(&p, ctx)
            }
            other => Err(Error::FixtureMissing(format!(
                "no evaluation rule for CONST row {other:?}"
            ))),
        },
    }
}

/// Build the minimization a row's constant came from: same objective,
/// published point as the warm start.
pub fn problem_for_row(
    row: &FixtureRow,
    set: &FixtureSet,
    seed: u64,
) -> Result<OptimizationProblem> {
    let name = format!("{}:{}", row.table.as_str(), row.key);
    let (kind, warm) = match row.table {
        TableId::Q => (
            ObjectiveKind::StripQ {
                w: parse_value_f64(&row.key)?,
                d: row.value_f64_or("d", 1.0 / W0_F64)?,
                t0: row.value_f64_or("t0", H_F64)?,
            },
            vec![
                row.value_f64("eps1")?,
                row.value_f64("sigma1")?,
                row.value_f64("eta")?,
            ],
        ),
        TableId::QRh => (
            ObjectiveKind::ConditionalQ {
                sigma0: parse_value_f64(&row.key)?,
                t0: row.value_f64("t0")?,
            },
            vec![
                row.value_f64("eps")?,
                row.value_f64("sigma1")?,
                row.value_f64("eta")?,
            ],
        ),
        TableId::Y => (
            ObjectiveKind::ReciprocalY {
                t0: row.value_f64_or("t0", 13.0)?,
                ladder: set.ladder_from_f64(parse_value_f64(&row.key)?)?,
            },
            vec![
                row.value_f64("d1")?,
                row.value_f64("sigma1")?,
                row.value_f64("eta")?,
            ],
        ),
        TableId::Yprime => (
            ObjectiveKind::ReciprocalYPrime {
                t0: row.value_f64_or("t0", 13.0)?,
                ladder: set.ladder_from_f64(parse_value_f64(&row.key)?)?,
            },
            vec![row.value_f64("d1")?],
        ),
        TableId::B1 => (
            ObjectiveKind::StripConstant {
                t0: parse_value_f64(&row.key)?,
            },
            vec![row.value_f64("eta")?],
        ),
        TableId::Consts => match row.key.as_str() {
            "q_one" => (
                ObjectiveKind::OneLineQ {
                    d: row.value_f64_or("d", 1.0 / W0_F64)?,
                    t0: row.value_f64_or("t0", H_F64)?,
                },
                vec![
                    row.value_f64("eps1")?,
                    row.value_f64("sigma1")?,
                    row.value_f64("eta")?,
                ],
            ),
            "y0_one_line" | "y0_one_line_tail" => (
                ObjectiveKind::ReciprocalY {
                    t0: row.value_f64_or("t0", 13.0)?,
                    ladder: Vec::new(),
                },
                vec![
                    row.value_f64("d1")?,
                    row.value_f64("sigma1")?,
                    row.value_f64("eta")?,
                ],
            ),
            "yprime0_one_line" | "yprime0_one_line_tail" => (
                ObjectiveKind::ReciprocalYPrime {
                    t0: row.value_f64_or("t0", 13.0)?,
                    ladder: Vec::new(),
                },
                vec![row.value_f64("d1")?],
            ),
            "q_wascor" => (
                ObjectiveKind::ConditionalQ {
                    sigma0: row.value_f64("sigma0")?,
                    t0: row.value_f64("t0")?,
                },
                vec![
                    row.value_f64("eps")?,
                    row.value_f64("sigma1")?,
                    row.value_f64("eta")?,
                ],
            ),
            other => {
                return Err(Error::FixtureMissing(format!(
                    "no optimization rule for CONST row {other:?}"
                )))
            }
        },
    };
    OptimizationProblem::new(name, kind, seed)?.with_warm(warm)
}

/// One row of a reproduction report.
#[derive(Debug, Clone)]
pub struct RowReport {
    pub table: TableId,
    pub key: String,
    pub published: f64,
    /// Certified value at the published parameters.
    pub value: CertifiedReal,
    /// |mid - published| / |published|.
    pub rel_err: f64,
    pub branch: &'static str,
    pub conditions: Vec<Condition>,
    pub optimized: Option<OptRowReport>,
}

impl RowReport {
    pub fn conditions_ok(&self) -> bool {
        self.conditions.iter().all(|c| c.satisfied)
    }
}

/// The optimizer's side of a row report.
#[derive(Debug, Clone)]
pub struct OptRowReport {
    pub value: CertifiedReal,
    pub params: Vec<(String, f64)>,
    pub evaluations: u64,
    /// Certified improvement: the re-evaluated upper bound at the best
    /// point sits under the published constant.
    pub improved: bool,
    pub feasible: bool,
}

/// Reproduce one table: evaluate every row at its published parameters
/// and, when `optimize` is set, re-run the row's minimization and report
/// the outcome next to it.
pub fn reproduce_table(
    id: TableId,
    set: &FixtureSet,
    ctx: &PrecisionContext,
    optimize: bool,
    seed: u64,
) -> Result<Vec<RowReport>> {
    let rows: Vec<&FixtureRow> = set.table(id).collect();
    if rows.is_empty() {
        return Err(Error::FixtureMissing(format!(
            "no rows for table {}",
            id.as_str()
        )));
    }
    let mut reports = Vec::with_capacity(rows.len());
    for row in rows {
        let bound = certified_row(row, set, ctx)?;
        let published = row.published_f64()?;
        let rel_err = (bound.value.mid_f64() - published).abs() / published.abs();
        let optimized = if optimize {
            let problem = problem_for_row(row, set, seed)?;
            let r = optimize_with(&problem, &OptSettings::default(), ctx)?;
            let feasible = r.all_satisfied();
            Some(OptRowReport {
                improved: r.value.upper_f64() < published,
                feasible,
                params: problem
                    .kind
                    .param_names()
                    .iter()
                    .map(|s| s.to_string())
                    .zip(r.best.iter().copied())
                    .collect(),
                evaluations: r.evaluations,
                value: r.value,
            })
        } else {
            None
        };
        reports.push(RowReport {
            table: row.table,
            key: row.key.clone(),
            published,
            value: bound.value,
            rel_err,
            branch: bound.branch,
            conditions: bound.conditions,
            optimized,
        });
    }
    Ok(reports)
}

/// A declarative problem description, plain `key value` lines:
///
/// ```text
/// # which row to re-optimize
/// table Q          # Q | QRH | Y | YP | B1 | CONST
/// row 13           # the row key
/// seed 0           # optional, default 0
/// starts 32        # optional, Latin-hypercube starts
/// max_iters 400    # optional, iterations per start
/// fixtures p.txt   # optional, fixture file path (default: bundled)
/// ```
#[derive(Debug, Clone)]
pub struct OptimizeConfig {
    pub table: TableId,
    pub row: String,
    pub seed: u64,
    pub starts: usize,
    pub max_iters: usize,
    pub fixtures: Option<String>,
}

impl OptimizeConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let mut table = None;
        let mut row = None;
        let mut seed = 0u64;
        let mut starts = OptSettings::default().starts;
        let mut max_iters = OptSettings::default().max_iters;
        let mut fixtures = None;
        for (lineno, raw) in text.lines().enumerate() {
            let line = match raw.split_once('#') {
                Some((before, _)) => before.trim(),
                None => raw.trim(),
            };
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once(char::is_whitespace).ok_or_else(|| {
                Error::Parse(format!(
                    "config line {}: expected `key value`",
                    lineno + 1
                ))
            })?;
            let value = value.trim();
            let bad = |what: &str| Error::Parse(format!("config line {}: {what}", lineno + 1));
            match key {
                "table" => table = Some(TableId::parse(value)?),
                "row" => row = Some(value.to_string()),
                "seed" => seed = value.parse().map_err(|_| bad("seed must be an integer"))?,
                "starts" => {
                    starts = value
                        .parse()
                        .map_err(|_| bad("starts must be an integer"))?
                }
                "max_iters" => {
                    max_iters = value
                        .parse()
                        .map_err(|_| bad("max_iters must be an integer"))?
                }
                "fixtures" => fixtures = Some(value.to_string()),
                other => return Err(bad(&format!("unknown key {other:?}"))),
            }
        }
        Ok(OptimizeConfig {
            table: table.ok_or_else(|| Error::Parse("config lacks `table`".into()))?,
            row: row.ok_or_else(|| Error::Parse("config lacks `row`".into()))?,
            seed,
            starts,
            max_iters,
            fixtures,
        })
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn settings(&self) -> OptSettings {
        OptSettings {
            starts: self.starts,
            max_iters: self.max_iters,
        }
    }
}

//! Suite orchestration: builds the instances named in a `SuiteConfig`, runs
//! the selected law suites in dependency order and maps the outcome to an
//! exit code.

use std::fmt;
use std::path::Path;
use std::str::FromStr;
use std::sync::Arc;

use crate::algebra::{check_algebra_is_lattice, check_lattice_is_algebra, roundtrip, AlgebraWitness};
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::filter::{check_filter_laws, FilterSpace};
use crate::frame::{check_frame_laws_with, Frame, DEFAULT_LAW_SEED};
use crate::instance::{load_order, load_space, parse_frame, InstanceFile, SpaceInstance};
use crate::lorder::{check_order_laws, check_powerset_laws, LOrder};
use crate::ltop::{check_continuity_criterion, check_specialization, check_topology};
use crate::monadlaws::{verify_monad, MonadConfig};
use crate::oracle::{degeneration_check, CrispInstance};
use crate::report::{LawCheck, Report};
use crate::scott::{check_scott_props, ScottContext};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_LAW_FAILURE: i32 = 1;
pub const EXIT_RESOURCE: i32 = 2;
pub const EXIT_CONFIG: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Suite {
    Frame,
    Topology,
    Order,
    Scott,
    Filter,
    Monad,
    Algebra,
    Roundtrip,
    Degeneration,
    All,
}

impl Suite {
    pub const ORDERED: [Suite; 9] = [
        Suite::Frame,
        Suite::Topology,
        Suite::Order,
        Suite::Scott,
        Suite::Filter,
        Suite::Monad,
        Suite::Algebra,
        Suite::Roundtrip,
        Suite::Degeneration,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Frame => "frame",
            Suite::Topology => "topology",
            Suite::Order => "order",
            Suite::Scott => "scott",
            Suite::Filter => "filter",
            Suite::Monad => "monad",
            Suite::Algebra => "algebra",
            Suite::Roundtrip => "roundtrip",
            Suite::Degeneration => "degeneration",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Suite> {
        Suite::ORDERED
            .into_iter()
            .chain([Suite::All])
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum RunMode {
    /// Enumerate where caps allow, sample beyond.
    #[default]
    Auto,
    /// Enumerate everything; a cap hit is a resource error.
    Exhaustive,
    /// Sample with at most this many elements per sampled level.
    Sample(usize),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Text,
    Json,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Format> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            _ => Err(Error::InvalidParameter(format!("unknown format {s:?}; expected text or json"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub suite: Suite,
    pub frame: String,
    pub space: Option<String>,
    pub order: Option<String>,
    pub witness: Option<String>,
    pub mode: RunMode,
    pub seed: u64,
    pub caps: Caps,
    pub format: Format,
}

impl SuiteConfig {
    pub fn new(suite: Suite) -> SuiteConfig {
        SuiteConfig {
            suite,
            frame: "chain:2".into(),
            space: None,
            order: None,
            witness: None,
            mode: RunMode::Auto,
            seed: DEFAULT_LAW_SEED,
            caps: Caps::default(),
            format: Format::Text,
        }
    }

    fn space_spec(&self) -> &str {
        self.space.as_deref().unwrap_or("sierpinski")
    }

    fn order_spec(&self) -> String {
        self.order.clone().unwrap_or_else(|| format!("selfL:{}", self.frame))
    }

    fn monad_config(&self) -> MonadConfig {
        let mut cfg = MonadConfig::from_caps(&self.caps);
        match self.mode {
            RunMode::Auto => {}
            RunMode::Exhaustive => cfg.exhaustive = true,
            RunMode::Sample(n) => {
                cfg.level2_samples = n;
                cfg.level3_samples = n;
            }
        }
        cfg
    }

    fn metadata(&self, report: &mut Report) {
        let m = &mut report.metadata;
        m.insert("suite".into(), self.suite.to_string());
        m.insert("frame".into(), self.frame.clone());
        m.insert("space".into(), self.space_spec().to_string());
        m.insert("order".into(), self.order_spec());
        if let Some(w) = &self.witness {
            m.insert("witness".into(), w.clone());
        }
        let mode = match self.mode {
            RunMode::Auto => "auto".to_string(),
            RunMode::Exhaustive => "exhaustive".to_string(),
            RunMode::Sample(n) => format!("sample {n}"),
        };
        m.insert("mode".into(), mode);
        m.insert("seed".into(), self.seed.to_string());
    }
}

#[derive(Debug)]
pub struct SuiteOutcome {
    pub report: Report,
    pub exit_code: i32,
    /// Config, parse or resource diagnostics, one per line.
    pub diagnostics: Vec<String>,
}

impl SuiteOutcome {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.report.to_json(),
            Format::Text => self.report.to_text(true),
        }
    }
}

fn exit_for(err: &Error) -> i32 {
    if err.is_resource_limit() {
        EXIT_RESOURCE
    } else {
        EXIT_CONFIG
    }
}

/// Lazily built instances shared by the suites of one run.
struct Instances<'a> {
    cfg: &'a SuiteConfig,
    frame: Option<Arc<Frame>>,
    space: Option<SpaceInstance>,
    order: Option<LOrder>,
}

impl Instances<'_> {
    fn frame(&mut self) -> Result<Arc<Frame>> {
        if self.frame.is_none() {
            self.frame = Some(Arc::new(parse_frame(&self.cfg.frame, Path::new("."), &self.cfg.caps)?));
        }
        Ok(self.frame.clone().expect("set above"))
    }

    fn space(&mut self) -> Result<SpaceInstance> {
        if self.space.is_none() {
            self.space = Some(load_space(self.cfg.space_spec(), &self.cfg.frame, &self.cfg.caps)?);
        }
        Ok(self.space.clone().expect("set above"))
    }

    fn order(&mut self) -> Result<LOrder> {
        if self.order.is_none() {
            self.order = Some(load_order(&self.cfg.order_spec(), &self.cfg.frame, &self.cfg.caps)?);
        }
        Ok(self.order.clone().expect("set above"))
    }
}

fn run_one(suite: Suite, inst: &mut Instances) -> Result<Report> {
    let cfg = inst.cfg;
    let caps = &cfg.caps;
    let report = match suite {
        Suite::Frame => match inst.frame() {
            Ok(f) => check_frame_laws_with(&f, caps, cfg.seed),
            Err(Error::NotDistributive { a, b, c }) => {
                let mut check = LawCheck::new("heyting.infinite_distributive", &cfg.frame);
                check.fail(format!("a={a}, S={{{b},{c}}}"));
                let mut r = Report::new();
                r.push(check.finish());
                r
            }
            Err(e) => return Err(e),
        },
        Suite::Topology => {
            let x = inst.space()?.space;
            let mut r = check_topology(&x);
            r.extend(check_specialization(&x, caps));
            r.push(check_continuity_criterion(&x, &x)?);
            r
        }
        Suite::Order => {
            let o = inst.order()?;
            let mut r = check_order_laws(&o, caps);
            let n = inst.space()?.space.len();
            match check_powerset_laws(o.frame_arc(), n, caps, cfg.seed) {
                Ok(p) => r.extend(p),
                Err(e) if e.is_resource_limit() => {
                    r.push(LawCheck::skipped("lset.sub_is_order", &format!("L^X[{}^{n}]", o.len()), e.to_string()))
                }
                Err(e) => return Err(e),
            }
            r
        }
        Suite::Scott => check_scott_props(&ScottContext::new(inst.order()?, caps)?),
        Suite::Filter => check_filter_laws(&FilterSpace::new(inst.space()?.space, caps)?, caps),
        Suite::Monad => verify_monad(inst.space()?.space, &cfg.monad_config(), caps)?,
        Suite::Algebra => match &cfg.witness {
            Some(path) => {
                let file = InstanceFile::load(Path::new(path), Some(&cfg.frame), caps)?;
                let (Some(space), Some(r)) = (file.space, file.r) else {
                    return Err(Error::InvalidParameter(format!("{path}: a witness needs a space block and an r table")));
                };
                check_algebra_is_lattice(&AlgebraWitness::new(space.space, r, caps)?, caps)?
            }
            None => check_lattice_is_algebra(&inst.order()?, caps)?.0,
        },
        Suite::Roundtrip => roundtrip(&inst.order()?, caps)?,
        Suite::Degeneration => {
            let s = inst.space()?;
            if !s.space.frame().is_two_valued() {
                let mut r = Report::new();
                r.push(LawCheck::skipped("oracle.opens", "degeneration", "the frame is not two-valued"));
                r
            } else {
                let inst = CrispInstance::Space { points: s.space.points().to_vec(), generators: s.crisp_generators()? };
                degeneration_check(&inst, caps)?
            }
        }
        Suite::All => unreachable!("expanded by run_suite"),
    };
    let mut report = report;
    for e in &mut report.entries {
        e.suite = suite.name().to_string();
    }
    Ok(report)
}

/// Runs the configured suites. Law failures give exit 1, which takes
/// precedence over resource caps (2); unparseable or inconsistent input
/// gives 3.
pub fn run_suite(cfg: &SuiteConfig) -> SuiteOutcome {
    let mut report = Report::new();
    cfg.metadata(&mut report);
    let mut inst = Instances { cfg, frame: None, space: None, order: None };
    let mut diagnostics = Vec::new();
    let mut worst_error = EXIT_PASS;
    let suites: Vec<Suite> = if cfg.suite == Suite::All { Suite::ORDERED.to_vec() } else { vec![cfg.suite] };
    for s in suites {
        match run_one(s, &mut inst) {
            Ok(r) => report.extend(r),
            Err(Error::NotDistributive { .. }) if cfg.suite == Suite::All => {
                let why = "the frame is not distributive";
                report.push(LawCheck::skipped(&format!("{s}.precondition"), s.name(), why).into_suite(s.name()));
            }
            Err(Error::Precondition(msg)) => {
                report.push(LawCheck::skipped(&format!("{s}.precondition"), s.name(), msg).into_suite(s.name()));
            }
            Err(e) => {
                let code = exit_for(&e);
                diagnostics.push(format!("{s}: {e}"));
                if code == EXIT_RESOURCE {
                    report.push(LawCheck::skipped(&format!("{s}.resource_limit"), s.name(), e.to_string()).into_suite(s.name()));
                }
                worst_error = worst_error.max(code);
                if code == EXIT_CONFIG {
                    break;
                }
            }
        }
    }
    let exit_code = if worst_error == EXIT_CONFIG {
        EXIT_CONFIG
    } else if !report.all_passed() {
        EXIT_LAW_FAILURE
    } else {
        worst_error
    };
    SuiteOutcome { report, exit_code, diagnostics }
}

trait IntoSuite {
    fn into_suite(self, suite: &str) -> Self;
}

impl IntoSuite for crate::report::CheckEntry {
    fn into_suite(mut self, suite: &str) -> Self {
        self.suite = suite.to_string();
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Verdict;

    fn cfg(suite: Suite) -> SuiteConfig {
        SuiteConfig::new(suite)
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ORDERED.into_iter().chain([Suite::All]) {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
        assert_eq!("json".parse::<Format>().unwrap(), Format::Json);
    }

    #[test]
    fn flagship_all_passes() {
        let out = run_suite(&cfg(Suite::All));
        assert_eq!(out.exit_code, EXIT_PASS, "{}", out.report.to_text(false));
        let suites: Vec<&str> = out.report.entries.iter().map(|e| e.suite.as_str()).collect();
        let mut seen: Vec<&str> = suites.clone();
        seen.dedup();
        assert_eq!(seen, ["frame", "topology", "order", "scott", "filter", "monad", "algebra", "roundtrip", "degeneration"]);
    }

    #[test]
    fn json_is_deterministic() {
        let mut c = cfg(Suite::Monad);
        c.frame = "chain:3".into();
        c.mode = RunMode::Sample(200);
        c.seed = 7;
        let a = run_suite(&c).report.to_json();
        let b = run_suite(&c).report.to_json();
        assert_eq!(a, b);
    }

    #[test]
    fn empty_report_still_has_metadata() {
        let mut r = Report::new();
        cfg(Suite::Frame).metadata(&mut r);
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["entries"].as_array().unwrap().len(), 0);
        assert_eq!(v["metadata"]["suite"], "frame");
    }

    #[test]
    fn non_distributive_frame_fails_with_witness() {
        let dir = std::env::temp_dir().join(format!("ofmonad-suite-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let m3 = dir.join("m3.txt");
        std::fs::write(&m3, "0 < a\n0 < b\n0 < c\na < 1\nb < 1\nc < 1\n").unwrap();
        let mut c = cfg(Suite::Frame);
        c.frame = format!("covers:{}", m3.display());
        let out = run_suite(&c);
        assert_eq!(out.exit_code, EXIT_LAW_FAILURE);
        let e = out.report.failures().next().unwrap();
        assert_eq!(e.law, "heyting.infinite_distributive");
        assert!(e.witness.as_ref().unwrap().starts_with("a="));
        c.suite = Suite::Filter;
        assert_eq!(run_suite(&c).exit_code, EXIT_CONFIG);
        c.suite = Suite::All;
        assert_eq!(run_suite(&c).exit_code, EXIT_LAW_FAILURE);
    }

    #[test]
    fn resource_cap_gives_exit_two() {
        let mut c = cfg(Suite::Filter);
        c.frame = "chain:5".into();
        let out = run_suite(&c);
        assert_eq!(out.exit_code, EXIT_RESOURCE);
        assert_eq!(out.report.entries[0].verdict, Verdict::Skipped);
    }

    #[test]
    fn parse_error_gives_exit_three() {
        let mut c = cfg(Suite::Frame);
        c.frame = "chain:x".into();
        assert_eq!(run_suite(&c).exit_code, EXIT_CONFIG);
    }

    #[test]
    fn degeneration_skips_on_non_boolean_frames() {
        let mut c = cfg(Suite::Degeneration);
        c.frame = "chain:3".into();
        let out = run_suite(&c);
        assert_eq!(out.exit_code, EXIT_PASS);
        assert_eq!(out.report.entries[0].verdict, Verdict::Skipped);
    }
}

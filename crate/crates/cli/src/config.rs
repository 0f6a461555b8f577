//! Job configuration: a flat JSON object.
//!
//! ```json
//! {"n": 3, "lambda": [1, 1], "mu": [0, 0], "roots": "symbolic", "N": 4,
//!  "suites": ["gklo-defining", "poisson-rtt"], "parallelism": 4}
//! ```
//!
//! `n`, `lambda` and `mu` are required. `roots` is `"symbolic"` or one list
//! of rationals (integers or strings such as `"1/2"`) per node, with `λ_i`
//! entries for node `i`. `N` (alias `truncation`) defaults to 4, `suites` to
//! all of them and `parallelism` to the number of available cores.

use std::str::FromStr;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;
use tgklo_core::{Error as CoreError, Roots, Shape, Q};

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("malformed config: {0}")]
    Malformed(String),
    #[error("{0}")]
    Invalid(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    GkloDefining,
    GkloAux,
    Abcd,
    Kernel,
    Central,
    Semiclassical,
    PoissonRtt,
    Dirac,
    Desnanot,
    IdealClosure,
    NegativeControls,
}

impl Suite {
    pub const ALL: [Suite; 11] = [
        Suite::GkloDefining,
        Suite::GkloAux,
        Suite::Abcd,
        Suite::Kernel,
        Suite::Central,
        Suite::Semiclassical,
        Suite::PoissonRtt,
        Suite::Dirac,
        Suite::Desnanot,
        Suite::IdealClosure,
        Suite::NegativeControls,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::GkloDefining => "gklo-defining",
            Suite::GkloAux => "gklo-aux",
            Suite::Abcd => "abcd",
            Suite::Kernel => "kernel",
            Suite::Central => "central",
            Suite::Semiclassical => "semiclassical",
            Suite::PoissonRtt => "poisson-rtt",
            Suite::Dirac => "dirac",
            Suite::Desnanot => "desnanot",
            Suite::IdealClosure => "ideal-closure",
            Suite::NegativeControls => "negative-controls",
        }
    }
}

impl FromStr for Suite {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Suite, ConfigError> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| ConfigError::Invalid(format!("unknown suite \"{}\"", s)))
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawQ {
    Int(i64),
    Text(String),
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawRoots {
    Name(String),
    Values(Vec<Vec<RawQ>>),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    n: Option<i64>,
    lambda: Option<Vec<i64>>,
    mu: Option<Vec<i64>>,
    roots: Option<RawRoots>,
    #[serde(rename = "N", alias = "truncation")]
    truncation: Option<i64>,
    suites: Option<Vec<String>>,
    parallelism: Option<i64>,
}

/// A validated job.
#[derive(Clone, Debug)]
pub struct JobConfig {
    pub shape: Shape,
    pub truncation: usize,
    pub suites: Vec<Suite>,
    pub parallelism: usize,
}

fn parse_q(x: &RawQ) -> Result<Q, ConfigError> {
    match x {
        RawQ::Int(k) => Ok(Q::from(*k)),
        RawQ::Text(s) => BigRational::from_str(s.trim())
            .map(Q::from)
            .map_err(|_| ConfigError::Invalid(format!("root \"{}\" is not a rational number", s))),
    }
}

fn positive(v: Option<i64>, name: &str, default: usize) -> Result<usize, ConfigError> {
    match v {
        None => Ok(default),
        Some(k) if k >= 1 => Ok(k as usize),
        Some(_) => Err(ConfigError::Invalid(format!("{} must be at least 1", name))),
    }
}

pub fn default_parallelism() -> usize {
    std::thread::available_parallelism().map_or(1, |p| p.get())
}

impl JobConfig {
    pub fn parse(text: &str) -> Result<JobConfig, ConfigError> {
        let raw: RawConfig = serde_json::from_str(text).map_err(|e| ConfigError::Malformed(e.to_string()))?;
        let n = raw.n.ok_or_else(|| ConfigError::Invalid("n required".into()))?;
        if n < 2 {
            return Err(ConfigError::Invalid("n must be at least 2".into()));
        }
        let n = n as usize;
        let lambda = raw.lambda.ok_or_else(|| ConfigError::Invalid("lambda required".into()))?;
        let mu = raw.mu.ok_or_else(|| ConfigError::Invalid("mu required".into()))?;
        for (name, v) in [("lambda", &lambda), ("mu", &mu)] {
            if v.len() != n - 1 {
                return Err(ConfigError::Invalid(format!("{} needs {} entries", name, n - 1)));
            }
            if v.iter().any(|&x| x < 0) {
                return Err(ConfigError::Invalid(format!("{} has a negative coordinate", name)));
            }
        }
        let roots = match raw.roots {
            None => Roots::Symbolic,
            Some(RawRoots::Name(s)) if s == "symbolic" => Roots::Symbolic,
            Some(RawRoots::Name(s)) => {
                return Err(ConfigError::Invalid(format!("roots must be \"symbolic\" or a list, not \"{}\"", s)))
            }
            Some(RawRoots::Values(v)) => Roots::Rational(
                v.iter()
                    .map(|node| node.iter().map(parse_q).collect::<Result<Vec<_>, _>>())
                    .collect::<Result<Vec<_>, _>>()?,
            ),
        };
        let shape = Shape::new(n, &lambda, &mu, roots).map_err(|e| match e {
            CoreError::Shape(msg) => ConfigError::Invalid(msg),
            other => ConfigError::Invalid(other.to_string()),
        })?;
        let truncation = positive(raw.truncation, "N", 4)?;
        let suites = match raw.suites {
            None => Suite::ALL.to_vec(),
            Some(names) => names.iter().map(|s| s.parse()).collect::<Result<Vec<_>, _>>()?,
        };
        let parallelism = positive(raw.parallelism, "parallelism", default_parallelism())?;
        let mut cfg = JobConfig {
            shape,
            truncation,
            suites,
            parallelism,
        };
        cfg.normalize_suites();
        Ok(cfg)
    }

    pub fn normalize_suites(&mut self) {
        self.suites.sort();
        self.suites.dedup();
    }

    /// The resolved configuration, as echoed in the report.
    pub fn echo(&self) -> Value {
        let roots = match &self.shape.roots {
            Roots::Symbolic => json!("symbolic"),
            Roots::Rational(v) => json!(v
                .iter()
                .map(|node| node.iter().map(|q| q.to_string()).collect::<Vec<_>>())
                .collect::<Vec<_>>()),
        };
        json!({
            "n": self.shape.n,
            "lambda": self.shape.lambda,
            "mu": self.shape.mu,
            "roots": roots,
            "N": self.truncation,
            "suites": self.suites.iter().map(|s| s.name()).collect::<Vec<_>>(),
            "parallelism": self.parallelism,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn err(text: &str) -> String {
        JobConfig::parse(text).unwrap_err().to_string()
    }

    #[test]
    fn minimal_config_gets_defaults() {
        let c = JobConfig::parse(r#"{"n":2,"lambda":[2],"mu":[0],"suites":["gklo-defining"]}"#).unwrap();
        assert_eq!(c.shape.m, vec![1]);
        assert_eq!(c.truncation, 4);
        assert_eq!(c.suites, vec![Suite::GkloDefining]);
        assert_eq!(c.shape.roots, Roots::Symbolic);
        let all = JobConfig::parse(r#"{"n":2,"lambda":[2],"mu":[0]}"#).unwrap();
        assert_eq!(all.suites.len(), 11);
    }

    #[test]
    fn validation_messages() {
        assert_eq!(err("{}"), "n required");
        assert_eq!(err(r#"{"n":2,"lambda":[0],"mu":[1]}"#), "mu not ≤ lambda");
        assert_eq!(err(r#"{"n":2,"lambda":[-2],"mu":[0]}"#), "lambda has a negative coordinate");
        assert_eq!(err(r#"{"n":3,"lambda":[2],"mu":[0]}"#), "lambda needs 2 entries");
        assert_eq!(err(r#"{"n":2,"lambda":[2],"mu":[0],"N":0}"#), "N must be at least 1");
        assert!(err(r#"{"n":2,"lambda":[2],"mu":[0],"suites":["nope"]}"#).contains("unknown suite"));
        assert!(err(r#"{"n":2,"lambda":[2],"mu":[0],"extra":1}"#).starts_with("malformed"));
        assert!(err("[1,2").starts_with("malformed"));
    }

    #[test]
    fn rational_roots() {
        let c = JobConfig::parse(r#"{"n":2,"lambda":[2],"mu":[0],"roots":[["1/2", 3]]}"#).unwrap();
        assert_eq!(c.echo()["roots"], json!([["1/2", "3"]]));
        assert!(JobConfig::parse(r#"{"n":2,"lambda":[2],"mu":[0],"roots":[["x", 3]]}"#).is_err());
        assert!(JobConfig::parse(r#"{"n":2,"lambda":[2],"mu":[0],"roots":[[1]]}"#).is_err());
    }
}

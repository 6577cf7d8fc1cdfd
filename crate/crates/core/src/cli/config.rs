//! TOML experiment configuration. The schema is documented in `docs/config.md`.

use std::path::Path;

use serde::{Deserialize, Deserializer, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, int, rat, Rational};

#[derive(Deserialize)]
#[serde(untagged)]
enum RawRational {
    Int(i64),
    Text(String),
}

fn de_rat<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
    match RawRational::deserialize(d)? {
        RawRational::Int(i) => Ok(int(i)),
        RawRational::Text(s) => rational::parse_rational(&s).map_err(serde::de::Error::custom),
    }
}

fn de_rat_opt<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Option<Rational>, D::Error> {
    de_rat(d).map(Some)
}

fn de_rats<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Rational>, D::Error> {
    Vec::<RawRational>::deserialize(d)?
        .into_iter()
        .map(|r| match r {
            RawRational::Int(i) => Ok(int(i)),
            RawRational::Text(s) => rational::parse_rational(&s).map_err(serde::de::Error::custom),
        })
        .collect()
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModeName {
    Strict,
    #[default]
    Relaxed,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputConfig {
    /// Execution setting; left out of the report so reruns compare equal.
    #[serde(skip_serializing)]
    pub dir: Option<String>,
    pub format: Format,
    /// Add a `decimal` rendering next to every exact rational.
    pub decimals: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DirichletSuite {
    pub count: usize,
    pub primes: Vec<u32>,
    pub max_dim: usize,
    pub max_sigma: i64,
    pub floor: i64,
}

impl Default for DirichletSuite {
    fn default() -> Self {
        DirichletSuite {
            count: 200,
            primes: vec![2, 3],
            max_dim: 2,
            max_sigma: 8,
            floor: -40,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OracleSuite {
    pub count: usize,
    pub t_max: u32,
    pub floor: i64,
}

impl Default for OracleSuite {
    fn default() -> Self {
        OracleSuite {
            count: 50,
            t_max: 7,
            floor: -40,
        }
    }
}

/// Shared by the Dirichlet-bound and dominance suites.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ProfileSuite {
    pub count: usize,
    pub t_max: u32,
    pub floor: i64,
}

impl Default for ProfileSuite {
    fn default() -> Self {
        ProfileSuite {
            count: 20,
            t_max: 10,
            floor: -60,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GenericSuite {
    pub count: usize,
    pub t_max: u32,
    pub floor: i64,
    #[serde(deserialize_with = "de_rat", serialize_with = "rational::serialize")]
    pub omega_max: Rational,
    #[serde(deserialize_with = "de_rat", serialize_with = "rational::serialize")]
    pub omega_hat_max: Rational,
    pub required: usize,
}

impl Default for GenericSuite {
    fn default() -> Self {
        GenericSuite {
            count: 20,
            t_max: 40,
            floor: -80,
            omega_max: rat(5, 4),
            omega_hat_max: rat(21, 20),
            required: 18,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct VwaSuite {
    pub base: u32,
    pub t_max: u32,
    pub floor: i64,
    #[serde(deserialize_with = "de_rat", serialize_with = "rational::serialize")]
    pub omega_min: Rational,
}

impl Default for VwaSuite {
    fn default() -> Self {
        VwaSuite {
            base: 3,
            t_max: 28,
            floor: -120,
            omega_min: rat(3, 2),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TsetSuite {
    pub dims: Vec<[usize; 2]>,
    #[serde(
        deserialize_with = "de_rats",
        serialize_with = "rational::serialize_vec"
    )]
    pub etas: Vec<Rational>,
    /// Audit every pair with `σ(u) + σ(v)` up to this total.
    pub grid: i64,
    /// Enumerate `𝐓` up to this `σ(t)` and compare with the box oracle.
    pub sigma_bound: i64,
}

impl Default for TsetSuite {
    fn default() -> Self {
        TsetSuite {
            dims: vec![[1, 1], [1, 2], [2, 1]],
            etas: vec![int(1), rat(3, 2), int(2)],
            grid: 20,
            sigma_bound: 10,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PlantSuite {
    pub count: usize,
    pub floor: i64,
    pub dims: Vec<[usize; 2]>,
    pub horizons: [i64; 2],
}

impl Default for PlantSuite {
    fn default() -> Self {
        PlantSuite {
            count: 100,
            floor: -60,
            dims: vec![[1, 1], [1, 2], [2, 1], [2, 2]],
            horizons: [4, 8],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PlaneSuite {
    pub count: usize,
    pub samples: usize,
    pub floor: i64,
    pub dims: Vec<[usize; 2]>,
    /// Every this-many instances, `q'` is pushed past the gate.
    pub empty_gate_every: usize,
}

impl Default for PlaneSuite {
    fn default() -> Self {
        PlaneSuite {
            count: 20,
            samples: 100,
            floor: -60,
            dims: vec![[1, 1], [1, 2], [2, 1], [2, 2]],
            empty_gate_every: 4,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TransferenceSuite {
    pub count: usize,
    pub m: usize,
    pub n: usize,
    pub t_max: u32,
    pub floor: i64,
    /// Horizon for the multiplicative side of the lower-bound chain.
    pub chain_t_max: u32,
    pub required: usize,
}

impl Default for TransferenceSuite {
    fn default() -> Self {
        TransferenceSuite {
            count: 20,
            m: 1,
            n: 2,
            t_max: 24,
            floor: -80,
            chain_t_max: 12,
            required: 18,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub seed: u64,
    #[serde(skip_serializing)]
    pub workers: usize,
    pub field: String,
    pub m: usize,
    pub n: usize,
    pub floor: i64,
    pub t_max: u32,
    #[serde(deserialize_with = "de_rat", serialize_with = "rational::serialize")]
    pub eta: Rational,
    #[serde(deserialize_with = "de_rat", serialize_with = "rational::serialize")]
    pub epsilon: Rational,
    /// Defaults to `τ₀/2` wherever a `τ` is needed.
    #[serde(
        deserialize_with = "de_rat_opt",
        serialize_with = "rational::serialize_opt",
        skip_serializing_if = "Option::is_none"
    )]
    pub tau: Option<Rational>,
    #[serde(deserialize_with = "de_rat", serialize_with = "rational::serialize")]
    pub tol: Rational,
    #[serde(deserialize_with = "de_rat", serialize_with = "rational::serialize")]
    pub dyson_tol: Rational,
    pub sigma_threshold: i64,
    /// Row-major entry specs for `Y`; random when absent.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub y: Option<Vec<Vec<String>>>,
    /// Entry specs for `θ`; zero when absent.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta: Option<Vec<String>>,
    /// Also compute the multiplicative profile in `estimate`.
    pub multiplicative: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub target: Option<Vec<i64>>,
    pub mode: ModeName,
    /// `gen` plants a witness instead of building `Y` from specs.
    pub plant: bool,
    #[serde(rename = "T")]
    pub horizon: i64,
    pub suites: Vec<String>,
    pub output: OutputConfig,
    pub dirichlet: DirichletSuite,
    pub oracle: OracleSuite,
    pub dirichlet_bound: ProfileSuite,
    pub dominance: ProfileSuite,
    pub generic: GenericSuite,
    pub vwa: VwaSuite,
    pub tset: TsetSuite,
    pub proposition: PlantSuite,
    pub intersection: PlantSuite,
    pub plane: PlaneSuite,
    pub transference: TransferenceSuite,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            seed: 2024,
            workers: 1,
            field: "p=2".into(),
            m: 1,
            n: 1,
            floor: -80,
            t_max: 24,
            eta: int(1),
            epsilon: int(1),
            tau: None,
            tol: rat(3, 10),
            dyson_tol: rat(1, 4),
            sigma_threshold: 8,
            y: None,
            theta: None,
            multiplicative: false,
            target: None,
            mode: ModeName::Relaxed,
            plant: false,
            horizon: 4,
            suites: Vec::new(),
            output: OutputConfig::default(),
            dirichlet: DirichletSuite::default(),
            oracle: OracleSuite::default(),
            dirichlet_bound: ProfileSuite::default(),
            dominance: ProfileSuite::default(),
            generic: GenericSuite::default(),
            vwa: VwaSuite::default(),
            tset: TsetSuite::default(),
            proposition: PlantSuite::default(),
            intersection: PlantSuite::default(),
            plane: PlaneSuite::default(),
            transference: TransferenceSuite::default(),
        }
    }
}

impl ExperimentConfig {
    pub fn from_toml(s: &str) -> Result<Self> {
        let cfg: ExperimentConfig = toml::from_str(s)
            .map_err(|e| Error::InvalidInput(format!("config: {}", e.message())))?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
        Self::from_toml(&text)
    }

    /// Checks cross-field invariants.
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidInput(msg));
        if self.workers == 0 {
            return bad("workers must be at least 1".into());
        }
        if self.m == 0 || self.n == 0 {
            return bad("m and n must be positive".into());
        }
        if self.t_max == 0 {
            return bad("t_max must be at least 1".into());
        }
        if self.floor > -2 * self.t_max as i64 {
            return bad(format!(
                "floor {} must be at most -2 * t_max = {}",
                self.floor,
                -2 * self.t_max as i64
            ));
        }
        if self.eta < int(1) {
            return bad("eta must be at least 1".into());
        }
        if !rational::is_positive(self.epsilon) {
            return bad("epsilon must be positive".into());
        }
        if self.tau.is_some_and(|t| !rational::is_positive(t)) {
            return bad("tau must be positive".into());
        }
        if let Some(y) = &self.y {
            if y.len() != self.m || y.iter().any(|r| r.len() != self.n) {
                return bad(format!("y must be {}x{}", self.m, self.n));
            }
        }
        if let Some(th) = &self.theta {
            if th.len() != self.m {
                return bad(format!("theta must have {} entries", self.m));
            }
        }
        for [m, n] in self
            .tset
            .dims
            .iter()
            .chain(&self.proposition.dims)
            .chain(&self.intersection.dims)
            .chain(&self.plane.dims)
        {
            if *m == 0 || *n == 0 {
                return bad("suite dims must be positive".into());
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_rationals_and_sections() {
        let cfg = ExperimentConfig::from_toml(
            r#"
            seed = 9
            eta = "3/2"
            epsilon = 1
            tol = "0.25"
            y = [["lacunary(3)"]]
            [generic]
            count = 4
            "#,
        )
        .unwrap();
        assert_eq!(cfg.seed, 9);
        assert_eq!(cfg.eta, rat(3, 2));
        assert_eq!(cfg.tol, rat(1, 4));
        assert_eq!(cfg.generic.count, 4);
        assert_eq!(cfg.generic.t_max, 40);
        cfg.validate().unwrap();
    }

    #[test]
    fn rejects_unknown_keys_and_shallow_floor() {
        assert!(ExperimentConfig::from_toml("sed = 1").is_err());
        let cfg = ExperimentConfig::from_toml("floor = -10\nt_max = 24").unwrap();
        assert!(matches!(cfg.validate(), Err(Error::InvalidInput(_))));
    }
}

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use anyhow::{bail, Context};
use fqdist::constructions::canonical_pairs;
use fqdist::field::FieldCtx;
use fqdist::geometry::{Space, DEFAULT_BUDGET};
use serde::{Deserialize, Serialize};

/// `p` or `p,k`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct FieldSpec {
    pub p: u32,
    pub k: u32,
}

impl FieldSpec {
    pub fn context(&self) -> fqdist::Result<FieldCtx> {
        FieldCtx::new(self.p, self.k, None)
    }
}

impl FromStr for FieldSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let mut parts = s.split(',').map(str::trim);
        let parse = |x: Option<&str>| -> Result<Option<u32>, String> {
            x.map(|x| x.parse::<u32>().map_err(|e| format!("bad field spec {s:?}: {e}")))
                .transpose()
        };
        let p = parse(parts.next())?.ok_or_else(|| format!("bad field spec {s:?}"))?;
        let k = parse(parts.next())?.unwrap_or(1);
        if parts.next().is_some() {
            return Err(format!("bad field spec {s:?}: expected p or p,k"));
        }
        Ok(Self { p, k })
    }
}

impl TryFrom<String> for FieldSpec {
    type Error = String;

    fn try_from(s: String) -> Result<Self, String> {
        s.parse()
    }
}

impl From<FieldSpec> for String {
    fn from(f: FieldSpec) -> String {
        f.to_string()
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.k == 1 {
            write!(f, "{}", self.p)
        } else {
            write!(f, "{},{}", self.p, self.k)
        }
    }
}

fn default_trials() -> usize {
    1
}

fn default_budget() -> u64 {
    DEFAULT_BUDGET as u64
}

/// Settings shared by every subcommand. Loaded from TOML or assembled from
/// flags.
///
/// ```toml
/// fields = ["5", "3,2"]
/// dims = [2]
/// e_sizes = [5, 10, 15, 20, 25]
/// f_sizes = [8, 16, 24, 32, 40]
/// trials = 20
/// seed = 7
/// ```
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub fields: Vec<FieldSpec>,
    pub dims: Vec<usize>,
    /// Requested `|E|` values; empty means "choose per subcommand".
    #[serde(default)]
    pub e_sizes: Vec<usize>,
    #[serde(default)]
    pub f_sizes: Vec<usize>,
    #[serde(default = "default_trials")]
    pub trials: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub out: Option<PathBuf>,
    #[serde(default = "default_budget")]
    pub budget: u64,
    /// Random sizes are drawn above `|E||F| = q^{d+1}` only.
    #[serde(default)]
    pub hypothesis: bool,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            fields: Vec::new(),
            dims: Vec::new(),
            e_sizes: Vec::new(),
            f_sizes: Vec::new(),
            trials: default_trials(),
            seed: 0,
            out: None,
            budget: default_budget(),
            hypothesis: false,
        }
    }
}

impl SweepConfig {
    pub fn from_toml(text: &str) -> anyhow::Result<Self> {
        // toml's error message already names the line, column and key.
        Ok(toml::from_str(text)?)
    }

    pub fn load(path: &Path) -> anyhow::Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        Self::from_toml(&text).with_context(|| format!("in config {}", path.display()))
    }

    /// Every `(field, dim)` pair in order.
    pub fn spaces(&self) -> Vec<(FieldSpec, usize)> {
        self.fields
            .iter()
            .flat_map(|&f| self.dims.iter().map(move |&d| (f, d)))
            .collect()
    }

    /// Checks that fields exist and that every requested size fits.
    pub fn validate(&self) -> anyhow::Result<()> {
        if self.fields.is_empty() {
            bail!("config field `fields`: at least one field is required");
        }
        if self.dims.is_empty() {
            bail!("config field `dims`: at least one dimension is required");
        }
        for (spec, d) in self.spaces() {
            let f = spec.context().with_context(|| format!("config field `fields`: {spec}"))?;
            let space = Space::new(&f, d).with_context(|| format!("config field `dims`: {d}"))?;
            if let Some(&e) = self.e_sizes.iter().find(|&&e| e > space.size()) {
                bail!("config field `e_sizes`: {e} exceeds q^d = {} for q = {}, d = {d}", space.size(), f.order());
            }
            let pairs = canonical_pairs(&space).len();
            if let Some(&m) = self.f_sizes.iter().find(|&&m| m > pairs) {
                bail!("config field `f_sizes`: {m} exceeds the {pairs} canonical planes for q = {}, d = {d}", f.order());
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_specs() {
        assert_eq!("5".parse::<FieldSpec>().unwrap(), FieldSpec { p: 5, k: 1 });
        assert_eq!("3,2".parse::<FieldSpec>().unwrap(), FieldSpec { p: 3, k: 2 });
        assert!("3,2,1".parse::<FieldSpec>().is_err());
        assert!("x".parse::<FieldSpec>().is_err());
        assert_eq!(FieldSpec { p: 3, k: 2 }.to_string(), "3,2");
    }

    #[test]
    fn toml_roundtrip_and_defaults() {
        let cfg = SweepConfig::from_toml("fields = [\"5\", \"3,2\"]\ndims = [2]\nseed = 9\n").unwrap();
        assert_eq!(cfg.fields.len(), 2);
        assert_eq!(cfg.trials, 1);
        assert_eq!(cfg.budget, DEFAULT_BUDGET as u64);
        let back = SweepConfig::from_toml(&toml::to_string(&cfg).unwrap()).unwrap();
        assert_eq!(back, cfg);
    }

    #[test]
    fn parse_errors_name_the_location() {
        let err = SweepConfig::from_toml("fields = [\"5\"]\ndims = [2]\ntrails = 3\n").unwrap_err();
        let msg = format!("{err:#}");
        assert!(msg.contains("trails"), "{msg}");
        assert!(msg.contains("line 3"), "{msg}");
    }

    #[test]
    fn validation() {
        let mut cfg = SweepConfig {
            fields: vec![FieldSpec { p: 5, k: 1 }],
            dims: vec![2],
            e_sizes: vec![25],
            f_sizes: vec![40],
            ..SweepConfig::default()
        };
        cfg.validate().unwrap();
        cfg.f_sizes = vec![41];
        assert!(format!("{:#}", cfg.validate().unwrap_err()).contains("f_sizes"));
        cfg.f_sizes.clear();
        cfg.fields = vec![FieldSpec { p: 4, k: 1 }];
        assert!(cfg.validate().is_err());
    }
}

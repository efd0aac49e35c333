use std::fmt;
use std::path::Path;

use serde::Deserialize;
use serre_core::breuil::{Params, PrincipalSeriesType, RankOneBreuil, RankOneBreuilJson, TypeDigitsJson};
use serre_core::chars::{GaloisChar, GaloisCharJson, InertialChar};
use serre_core::weights::{genericity, GenericityData, ShapeSpec, WeightParam};

use crate::CliError;

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamsJson {
    pub p: u32,
    pub f: u32,
    pub eprime: u32,
    #[serde(rename = "kE_extra_degree", default = "one")]
    pub ke_extra_degree: u32,
}

fn one() -> u32 {
    1
}

/// The JSON scenario read by every subcommand except `counterexample` and `verify`.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub params: ParamsJson,
    #[serde(default)]
    pub chi1: Option<GaloisCharJson>,
    #[serde(default)]
    pub chi2: Option<GaloisCharJson>,
    /// Generic fibre for `models`; defaults to chi1.
    #[serde(default)]
    pub chi: Option<GaloisCharJson>,
    #[serde(default)]
    pub a: Option<Vec<i64>>,
    #[serde(default)]
    pub a_max: Option<Vec<i64>>,
    #[serde(rename = "J", default)]
    pub j: Option<Vec<usize>>,
    #[serde(default)]
    pub d: Option<Vec<i64>>,
    #[serde(default)]
    pub tau: Option<TypeDigitsJson>,
    #[serde(default)]
    pub tres_ramifiee: bool,
    #[serde(rename = "M", default)]
    pub m: Option<RankOneBreuilJson>,
    #[serde(rename = "N", default)]
    pub n: Option<RankOneBreuilJson>,
}

/// A config problem located by a JSON pointer.
#[derive(Debug)]
pub struct ConfigError {
    pub pointer: String,
    pub message: String,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid config at \"{}\": {}", self.pointer, self.message)
    }
}

fn config_err(pointer: &str, message: impl Into<String>) -> CliError {
    CliError::Config(ConfigError { pointer: pointer.to_string(), message: message.into() })
}

fn pointer_of(path: &serde_path_to_error::Path) -> String {
    use serde_path_to_error::Segment;
    let mut out = String::new();
    for seg in path.iter() {
        out.push('/');
        match seg {
            Segment::Seq { index } => out.push_str(&index.to_string()),
            Segment::Map { key } => out.push_str(&key.replace('~', "~0").replace('/', "~1")),
            Segment::Enum { variant } => out.push_str(variant),
            Segment::Unknown => out.push('?'),
        }
    }
    out
}

pub fn parse(text: &str) -> Result<Scenario, CliError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let scenario: Scenario = serde_path_to_error::deserialize(de).map_err(|e| {
        let pointer = pointer_of(e.path());
        let inner = e.into_inner();
        config_err(&pointer, inner.to_string())
    })?;
    scenario.check()?;
    Ok(scenario)
}

pub fn load(path: &Path) -> Result<Scenario, CliError> {
    let text =
        std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
    parse(&text)
}

impl Scenario {
    fn check(&self) -> Result<(), CliError> {
        let f = self.params.f as usize;
        let tuples = [
            ("/a", self.a.as_ref()),
            ("/a_max", self.a_max.as_ref()),
            ("/d", self.d.as_ref()),
            ("/tau/nu", self.tau.as_ref().map(|t| &t.nu)),
            ("/tau/nu_prime", self.tau.as_ref().map(|t| &t.nu_prime)),
            ("/M/r", self.m.as_ref().map(|m| &m.r)),
            ("/M/c", self.m.as_ref().map(|m| &m.c)),
            ("/N/r", self.n.as_ref().map(|m| &m.r)),
            ("/N/c", self.n.as_ref().map(|m| &m.c)),
        ];
        for (ptr, v) in tuples {
            if let Some(v) = v {
                if v.len() != f {
                    return Err(config_err(ptr, format!("expected {f} entries, got {}", v.len())));
                }
            }
        }
        let ep = self.params.eprime as i64;
        for (ptr, v) in [("/a", &self.a), ("/a_max", &self.a_max), ("/d", &self.d)] {
            if let Some(v) = v {
                if let Some(k) = v.iter().position(|x| !(0..=ep).contains(x)) {
                    return Err(config_err(&format!("{ptr}/{k}"), format!("{} is outside [0, {ep}]", v[k])));
                }
            }
        }
        if let Some(j) = &self.j {
            if let Some(k) = j.iter().position(|&i| i >= f) {
                return Err(config_err(&format!("/J/{k}"), format!("index {} is not below f = {f}", j[k])));
            }
        }
        if self.j.is_some() != self.d.is_some() {
            return Err(config_err(if self.j.is_some() { "/d" } else { "/J" }, "J and d must be given together"));
        }
        let p = self.params.p as i64;
        if let Some(t) = &self.tau {
            for (name, v) in [("nu", &t.nu), ("nu_prime", &t.nu_prime)] {
                if let Some(k) = v.iter().position(|x| !(0..p).contains(x)) {
                    return Err(config_err(&format!("/tau/{name}/{k}"), format!("digit {} is outside [0, {}]", v[k], p - 1)));
                }
            }
        }
        Ok(())
    }

    pub fn params(&self) -> Result<Params, CliError> {
        let pj = &self.params;
        Ok(Params::new(pj.p, pj.f, pj.eprime, pj.ke_extra_degree)?)
    }

    fn galois(&self, params: &Params, json: Option<&GaloisCharJson>, ptr: &str) -> Result<GaloisChar, CliError> {
        let json = json.ok_or_else(|| config_err(ptr, "required by this subcommand"))?;
        Ok(GaloisChar::from_json(params.field(), params.f(), json))
    }

    pub fn chi1(&self, params: &Params) -> Result<GaloisChar, CliError> {
        self.galois(params, self.chi1.as_ref(), "/chi1")
    }

    pub fn chi2(&self, params: &Params) -> Result<GaloisChar, CliError> {
        self.galois(params, self.chi2.as_ref(), "/chi2")
    }

    pub fn chi(&self, params: &Params) -> Result<GaloisChar, CliError> {
        match &self.chi {
            Some(_) => self.galois(params, self.chi.as_ref(), "/chi"),
            None => self.chi1(params),
        }
    }

    pub fn inertial_pair(&self, params: &Params) -> Result<(InertialChar, InertialChar), CliError> {
        Ok((self.chi1(params)?.inertial, self.chi2(params)?.inertial))
    }

    pub fn generic(&self, params: &Params) -> Result<GenericityData, CliError> {
        let (chi1, chi2) = self.inertial_pair(params)?;
        Ok(genericity(&chi1, &chi2, params.eprime())?)
    }

    pub fn weight_param(&self) -> Option<WeightParam> {
        let (j, d) = (self.j.as_ref()?, self.d.as_ref()?);
        let f = self.params.f as usize;
        Some(WeightParam::new((0..f).map(|i| j.contains(&i)).collect(), d.clone()))
    }

    pub fn shape(&self) -> Option<ShapeSpec> {
        if self.tres_ramifiee {
            Some(ShapeSpec::TresRamifiee)
        } else {
            self.a_max.clone().map(ShapeSpec::AMax)
        }
    }

    pub fn tau(&self) -> Result<PrincipalSeriesType, CliError> {
        let t = self.tau.as_ref().ok_or_else(|| config_err("/tau", "required by this subcommand"))?;
        Ok(PrincipalSeriesType::from_digits(self.params.p, &t.nu, &t.nu_prime))
    }

    pub fn modules(&self, params: &Params) -> Result<(RankOneBreuil, RankOneBreuil), CliError> {
        let m = self.m.as_ref().ok_or_else(|| config_err("/M", "required by this subcommand"))?;
        let n = self.n.as_ref().ok_or_else(|| config_err("/N", "required by this subcommand"))?;
        let m = RankOneBreuil::from_json(params, m).map_err(|e| config_err("/M", e.to_string()))?;
        let n = RankOneBreuil::from_json(params, n).map_err(|e| config_err("/N", e.to_string()))?;
        Ok((m, n))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pointer(text: &str) -> String {
        match parse(text) {
            Err(CliError::Config(e)) => e.pointer,
            other => panic!("expected a config error, got {other:?}"),
        }
    }

    #[test]
    fn pointers() {
        assert_eq!(pointer(r#"{"params": {"p": 5, "f": "two", "eprime": 1}}"#), "/params/f");
        assert_eq!(pointer(r#"{"params": {"p": 5, "f": 2, "eprime": 1}, "a": [0, 1, 0]}"#), "/a");
        assert_eq!(pointer(r#"{"params": {"p": 5, "f": 2, "eprime": 1}, "a": [0, 3]}"#), "/a/1");
        assert_eq!(pointer(r#"{"params": {"p": 5, "f": 2, "eprime": 1}, "bogus": 1}"#), "/bogus");
        assert_eq!(pointer(r#"{"params": {"p": 5, "f": 2, "eprime": 1}, "M": {"r": [0, 0], "c": [0, 1.5]}}"#), "/M/c/1");
    }

    #[test]
    fn defaults() {
        let s = parse(r#"{"params": {"p": 5, "f": 2, "eprime": 1}}"#).unwrap();
        assert_eq!(s.params.ke_extra_degree, 1);
        assert!(s.shape().is_none());
        assert!(s.weight_param().is_none());
    }
}

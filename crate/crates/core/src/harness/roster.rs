use crate::engines::EngineConfig;
use crate::error::{Error, Result};
use crate::model::Objective;
use crate::restart::{run_wrapped, BestTracker, WrapperConfig, WrapperMode};
use crate::rng::RandomSource;

/// Base engine names, in table order.
pub const ENGINE_FAMILIES: [&str; 4] = ["cDE", "rcGA", "cPSO", "cBFO"];

/// One roster entry: an engine (absent for the random walk) and a wrapper.
///
/// Ids: `<engine>` for the bare engine, `RI<engine>` with re-sampled
/// inheritance, `Re<engine>` with random restarts, and `RW`.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgorithmSpec {
    pub id: String,
    pub engine: Option<EngineConfig>,
    pub wrapper: WrapperConfig,
}

fn engine_for(name: &str) -> Option<EngineConfig> {
    match name {
        "cDE" => Some(EngineConfig::cde_light()),
        "rcGA" => Some(EngineConfig::rcga()),
        "cPSO" => Some(EngineConfig::cpso()),
        "cBFO" => Some(EngineConfig::cbfo()),
        _ => None,
    }
}

impl AlgorithmSpec {
    pub fn from_id(id: &str) -> Result<Self> {
        let unknown = || Error::UnknownAlgorithm(id.to_string());
        if id == "RW" {
            return Ok(Self {
                id: id.into(),
                engine: None,
                wrapper: WrapperConfig::new(WrapperMode::RandomWalk),
            });
        }
        let (mode, base) = if let Some(base) = id.strip_prefix("RI") {
            (WrapperMode::ResampledInheritance, base)
        } else if let Some(base) = id.strip_prefix("Re") {
            (WrapperMode::RandomRestart, base)
        } else {
            (WrapperMode::None, id)
        };
        let engine = engine_for(base).ok_or_else(unknown)?;
        Ok(Self {
            id: id.into(),
            engine: Some(engine),
            wrapper: WrapperConfig::new(mode),
        })
    }

    /// The base engine name (`cDE`, ...), `None` for the random walk.
    pub fn family(&self) -> Option<&'static str> {
        self.engine.as_ref().map(|e| e.kind.short_name())
    }

    pub fn run(
        &self,
        objective: &dyn Objective,
        budget: u64,
        rng: &mut RandomSource,
    ) -> Result<BestTracker> {
        run_wrapped(self.engine.as_ref(), objective, budget, &self.wrapper, rng)
    }
}

/// The 13 algorithms: four engines, each bare, with inheritance restarts and
/// with random restarts, plus the random walk.
pub fn full_roster() -> Vec<String> {
    let mut ids = Vec::with_capacity(13);
    for f in ENGINE_FAMILIES {
        ids.push(f.to_string());
        ids.push(format!("RI{f}"));
        ids.push(format!("Re{f}"));
    }
    ids.push("RW".into());
    ids
}

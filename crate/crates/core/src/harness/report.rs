use super::records::RunRecord;
use super::roster::ENGINE_FAMILIES;
use super::summary::summarize;
use crate::error::{Error, Result};
use crate::stats::{holm_bonferroni, score_problems, top_ranked, RankReport, ResultTable};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Grouping {
    /// One table per engine present with all three variants (bare, RI, Re).
    /// The RI variant is the reference unless another member is named.
    ByEngine,
    /// Every algorithm in one table; by default the top-ranked one is the
    /// reference.
    All,
}

fn rank(table: &ResultTable, reference: &str, delta: f64) -> Result<RankReport> {
    let scores: Vec<(String, f64)> = table
        .algorithms()
        .iter()
        .cloned()
        .zip(score_problems(table))
        .collect();
    holm_bonferroni(&scores, table.problems().len(), reference, delta)
}

/// Rank reports built from the mean final best of every cell.
///
/// With [`Grouping::ByEngine`] and a named reference, only the group that
/// contains it is reported.
pub fn report(
    records: &[RunRecord],
    reference: Option<&str>,
    grouping: Grouping,
    delta: f64,
) -> Result<Vec<RankReport>> {
    let table = summarize(records)?.table()?;
    if let Some(id) = reference {
        if !table.algorithms().iter().any(|a| a == id) {
            return Err(Error::UnknownAlgorithm(id.to_string()));
        }
    }
    match grouping {
        Grouping::All => {
            let reference = match reference {
                Some(id) => id.to_string(),
                None => {
                    let scores: Vec<(String, f64)> = table
                        .algorithms()
                        .iter()
                        .cloned()
                        .zip(score_problems(&table))
                        .collect();
                    top_ranked(&scores).unwrap_or_default().to_string()
                }
            };
            Ok(vec![rank(&table, &reference, delta)?])
        }
        Grouping::ByEngine => {
            let mut reports = Vec::new();
            for family in ENGINE_FAMILIES {
                let ids = [family.to_string(), format!("RI{family}"), format!("Re{family}")];
                if !ids.iter().all(|id| table.algorithms().contains(id)) {
                    continue;
                }
                let group_ref = match reference {
                    Some(r) if ids.iter().any(|id| id == r) => r.to_string(),
                    Some(_) => continue,
                    None => ids[1].clone(),
                };
                let refs: Vec<&str> = ids.iter().map(String::as_str).collect();
                reports.push(rank(&table.select_algorithms(&refs)?, &group_ref, delta)?);
            }
            if reports.is_empty() {
                return Err(match reference {
                    Some(r) => Error::InvalidArgument(format!("`{r}` is not part of any engine group")),
                    None => Error::InvalidArgument(
                        "no engine appears with all three variants".into(),
                    ),
                });
            }
            Ok(reports)
        }
    }
}

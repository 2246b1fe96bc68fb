//! Census over small connected graphs comparing `(N,2)`- and `Z_2`-always-
//! winnability. A graph that is `(N,2)`-AW but not `Z_2`-AW is flagged; the
//! reverse combination would be an engine inconsistency.

use serde::Serialize;

use crate::enumerate::connected_graphs;
use crate::error::Result;
use crate::exec::{self, Exec};
use crate::group::{StateCap, WinnableSet};
use crate::harness::report::csv_field;
use crate::nbd;

pub const CENSUS_HEADER: &str = "graph,n,nbd2_aw,z2_aw,flag";

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusRow {
    pub graph: String,
    pub n: usize,
    pub nbd2_aw: bool,
    pub z2_aw: bool,
    pub flag: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Census {
    pub n_max: usize,
    pub dedup: bool,
    pub graphs: usize,
    pub flagged: usize,
    /// Rows that are `Z_2`-AW without being `(N,2)`-AW.
    pub violations: usize,
    pub rows: Vec<CensusRow>,
}

pub fn run_census(n_max: usize, dedup: bool, cap: StateCap, exec: Exec) -> Result<Census> {
    let mut graphs = Vec::new();
    for n in 1..=n_max {
        graphs.extend(connected_graphs(n, dedup, exec)?);
    }
    let rows = exec::map_slice(exec, &graphs, |g| -> Result<CensusRow> {
        let nbd2_aw = nbd::is_aw_nbd(g, 2)?;
        let z2_aw = WinnableSet::build(g, 2, cap, Exec::Sequential)?.is_all();
        Ok(CensusRow {
            graph: g.descriptor(),
            n: g.n(),
            nbd2_aw,
            z2_aw,
            flag: nbd2_aw && !z2_aw,
        })
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    Ok(Census {
        n_max,
        dedup,
        graphs: rows.len(),
        flagged: rows.iter().filter(|r| r.flag).count(),
        violations: rows.iter().filter(|r| r.z2_aw && !r.nbd2_aw).count(),
        rows,
    })
}

impl Census {
    pub fn to_csv(&self) -> String {
        let mut out = format!("{CENSUS_HEADER}\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                csv_field(&r.graph),
                r.n,
                r.nbd2_aw,
                r.z2_aw,
                r.flag
            ));
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("census serializes") + "\n"
    }

    pub fn summary(&self) -> String {
        format!(
            "graphs={} flagged={} violations={}",
            self.graphs, self.flagged, self.violations
        )
    }
}

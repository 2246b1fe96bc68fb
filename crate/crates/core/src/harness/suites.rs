//! Verification suites: each one sweeps a parameter range and checks an
//! engine result against its closed-form characterization.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::enumerate::connected_graphs;
use crate::error::{Error, Result};
use crate::exec::{self, Exec};
use crate::graph::{Graph, GraphSpec};
use crate::group::{self, StateCap, WinnableSet};
use crate::harness::report::{CaseRecord, Outcome, VerificationReport};
use crate::labeling::Labeling;
use crate::nbd;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    KnpNeighborhood,
    PathsPow2,
    CyclesPow2,
    BipartitePow2,
    TwoVsFour,
    OddPartCounts,
    ParitySquare,
    HalvingSquare,
    GroupImpliesNbd,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::KnpNeighborhood,
        Suite::PathsPow2,
        Suite::CyclesPow2,
        Suite::BipartitePow2,
        Suite::TwoVsFour,
        Suite::OddPartCounts,
        Suite::ParitySquare,
        Suite::HalvingSquare,
        Suite::GroupImpliesNbd,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Suite::KnpNeighborhood => "thm33",
            Suite::PathsPow2 => "thm44_paths",
            Suite::CyclesPow2 => "thm44_cycles",
            Suite::BipartitePow2 => "thm44_bipartite",
            Suite::TwoVsFour => "thm25",
            Suite::OddPartCounts => "thm21",
            Suite::ParitySquare => "lemma23",
            Suite::HalvingSquare => "lemma24",
            Suite::GroupImpliesNbd => "lemma31",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL.into_iter().find(|x| x.id() == s).ok_or_else(|| Error::Parse {
            line: 0,
            msg: format!("unknown suite `{s}`"),
        })
    }
}

/// Range overrides; anything left `None` takes the suite's default.
#[derive(Clone, Debug, Default)]
pub struct SuiteParams {
    pub n_min: Option<usize>,
    pub n_max: Option<usize>,
    pub k_min: Option<u32>,
    pub k_max: Option<u32>,
    pub m_min: Option<u32>,
    pub m_max: Option<u32>,
    /// Bound on `n + p` for complete bipartite sweeps.
    pub sum_max: Option<usize>,
    pub trials: Option<usize>,
    pub seed: Option<u64>,
    pub graphs: Vec<GraphSpec>,
    pub moduli: Vec<u32>,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct RunConfig {
    pub cap: StateCap,
    pub exec: Exec,
    pub timing: bool,
}

/// Short description of an arbitrary graph: `graph:N:u-v;...`.
pub fn describe_graph(g: &Graph) -> String {
    format!("graph:{}:{}", g.n(), g.descriptor())
}

struct Params<'a> {
    raw: &'a SuiteParams,
    used: BTreeMap<String, String>,
}

impl<'a> Params<'a> {
    fn new(raw: &'a SuiteParams) -> Self {
        Params { raw, used: BTreeMap::new() }
    }

    fn get<T: Copy + ToString>(&mut self, name: &str, value: Option<T>, default: T) -> T {
        let v = value.unwrap_or(default);
        self.used.insert(name.to_string(), v.to_string());
        v
    }

    fn n_range(&mut self, lo: usize, hi: usize) -> (usize, usize) {
        (self.get("n_min", self.raw.n_min, lo), self.get("n_max", self.raw.n_max, hi))
    }

    fn k_range(&mut self, lo: u32, hi: u32) -> Result<(u32, u32)> {
        let r = (self.get("k_min", self.raw.k_min, lo), self.get("k_max", self.raw.k_max, hi));
        if r.1 > 31 {
            return Err(Error::Precondition(format!("k_max {} too large", r.1)));
        }
        Ok(r)
    }
}

fn aw_case(g: &Graph, graph: String, m: u32, expected: bool, cfg: &RunConfig) -> CaseRecord {
    let observed = WinnableSet::build(g, m, cfg.cap, Exec::Sequential).map(|w| Outcome::Bool(w.is_all()));
    CaseRecord::from_result(graph, m, "exhaustive", Outcome::Bool(expected), observed)
}

pub fn run_suite(suite: Suite, raw: &SuiteParams, cfg: &RunConfig) -> Result<VerificationReport> {
    let started = Instant::now();
    let mut params = Params::new(raw);
    let exec = cfg.exec;
    let cases: Vec<CaseRecord> = match suite {
        Suite::KnpNeighborhood => {
            let (n_lo, n_hi) = params.n_range(1, 4);
            let m_lo = params.get("m_min", raw.m_min, 2);
            let m_hi = params.get("m_max", raw.m_max, 8);
            let sum_max = params.get("sum_max", raw.sum_max, 5);
            let exhaustive_m = 4;
            params.used.insert("exhaustive_m_max".into(), exhaustive_m.to_string());
            let mut grid = Vec::new();
            for n in n_lo.max(1)..=n_hi {
                for p in n_lo.max(1)..=n_hi {
                    for m in m_lo.max(2)..=m_hi {
                        grid.push((n, p, m, false));
                        if n + p <= sum_max && m <= exhaustive_m {
                            grid.push((n, p, m, true));
                        }
                    }
                }
            }
            exec::map_slice(exec, &grid, |&(n, p, m, exhaustive)| {
                let g = Graph::complete_bipartite(n, p).expect("n, p >= 1");
                let expected = Outcome::Bool(nbd::knp_aw_formula(n as u64, p as u64, m as u64));
                let graph = format!("kbip:{n},{p}");
                if exhaustive {
                    let obs = cfg
                        .cap
                        .check(m, n + p)
                        .and_then(|_| nbd::is_aw_nbd_exhaustive(&g, m, Exec::Sequential))
                        .map(Outcome::Bool);
                    CaseRecord::from_result(graph, m, "exhaustive", expected, obs)
                } else {
                    let obs = nbd::is_aw_nbd(&g, m).map(Outcome::Bool);
                    CaseRecord::from_result(graph, m, "determinant", expected, obs)
                }
            })
        }
        Suite::PathsPow2 | Suite::CyclesPow2 => {
            let paths = suite == Suite::PathsPow2;
            let (n_lo, n_hi) = params.n_range(if paths { 1 } else { 3 }, 9);
            let (k_lo, k_hi) = params.k_range(1, 2)?;
            let n_floor = if paths { 1 } else { 3 };
            let grid: Vec<(usize, u32)> = (n_lo.max(n_floor)..=n_hi)
                .flat_map(|n| (k_lo.max(1)..=k_hi).map(move |k| (n, k)))
                .collect();
            exec::map_slice(exec, &grid, |&(n, k)| {
                let m = 1u32 << k;
                if paths {
                    aw_case(&Graph::path(n).unwrap(), format!("path:{n}"), m, group::path_aw_2k(n), cfg)
                } else {
                    aw_case(&Graph::cycle(n).unwrap(), format!("cycle:{n}"), m, group::cycle_aw_2k(n), cfg)
                }
            })
        }
        Suite::BipartitePow2 => {
            let sum_max = params.get("sum_max", raw.sum_max, 6);
            let (k_lo, k_hi) = params.k_range(1, 2)?;
            let mut grid = Vec::new();
            for n in 1..sum_max {
                for p in 1..=sum_max - n {
                    for k in k_lo.max(1)..=k_hi {
                        grid.push((n, p, k));
                    }
                }
            }
            exec::map_slice(exec, &grid, |&(n, p, k)| {
                let g = Graph::complete_bipartite(n, p).unwrap();
                aw_case(&g, format!("kbip:{n},{p}"), 1 << k, group::knp_aw_2k(n, p), cfg)
            })
        }
        Suite::TwoVsFour => {
            let (n_lo, n_hi) = params.n_range(1, 4);
            let (k_lo, k_hi) = params.k_range(2, 2)?;
            let mut graphs = Vec::new();
            for n in n_lo.max(1)..=n_hi {
                graphs.extend(connected_graphs(n, true, exec)?);
            }
            let grid: Vec<(&Graph, u32)> = graphs
                .iter()
                .flat_map(|g| (k_lo.max(1)..=k_hi).map(move |k| (g, k)))
                .collect();
            exec::map_slice(exec, &grid, |&(g, k)| {
                let m = 1u32 << k;
                let graph = describe_graph(g);
                match WinnableSet::build(g, 2, cfg.cap, Exec::Sequential) {
                    Ok(base) => {
                        let obs = WinnableSet::build(g, m, cfg.cap, Exec::Sequential)
                            .map(|w| Outcome::Bool(w.is_all()));
                        CaseRecord::from_result(graph, m, "exhaustive", Outcome::Bool(base.is_all()), obs)
                    }
                    Err(e) => CaseRecord::from_result(graph, m, "exhaustive", Outcome::Bool(false), Err(e)),
                }
            })
        }
        Suite::OddPartCounts => {
            let specs = if raw.graphs.is_empty() {
                vec![
                    GraphSpec::Path(2),
                    GraphSpec::Path(3),
                    GraphSpec::Cycle(3),
                    GraphSpec::CompleteBipartite(1, 2),
                ]
            } else {
                raw.graphs.clone()
            };
            let moduli = if raw.moduli.is_empty() { vec![6, 12] } else { raw.moduli.clone() };
            params.used.insert(
                "graphs".into(),
                specs.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "),
            );
            params.used.insert(
                "moduli".into(),
                moduli.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "),
            );
            let graphs = specs.iter().map(GraphSpec::build).collect::<Result<Vec<_>>>()?;
            let grid: Vec<(usize, u32)> = (0..graphs.len())
                .flat_map(|i| moduli.iter().map(move |&m| (i, m)))
                .collect();
            exec::map_slice(exec, &grid, |&(i, m)| {
                let g = &graphs[i];
                let two_part = 1u32 << m.trailing_zeros();
                let graph = specs[i].to_string();
                // Z_1 has a single (zero) labeling.
                let expected = if two_part == 1 {
                    Ok(1)
                } else {
                    WinnableSet::build(g, two_part, cfg.cap, Exec::Sequential).map(|w| w.count())
                };
                match expected {
                    Ok(expected) => {
                        let obs = WinnableSet::build(g, m, cfg.cap, Exec::Sequential)
                            .map(|w| Outcome::Count(w.count()));
                        CaseRecord::from_result(graph, m, "count", Outcome::Count(expected), obs)
                    }
                    Err(e) => CaseRecord::from_result(graph, m, "count", Outcome::Count(0), Err(e)),
                }
            })
        }
        Suite::ParitySquare | Suite::HalvingSquare => {
            let halving = suite == Suite::HalvingSquare;
            let trials = params.get("trials", raw.trials, 10_000);
            let seed = params.get("seed", raw.seed, 0x5eed);
            let (_, n_hi) = params.n_range(1, 5);
            let (k_lo, k_hi) = params.k_range(if halving { 2 } else { 1 }, 3)?;
            let k_lo = k_lo.max(if halving { 2 } else { 1 });
            if n_hi == 0 || n_hi > 12 || k_lo > k_hi {
                return Err(Error::Precondition("empty or oversized trial range".into()));
            }
            let violations = commuting_trials(halving, trials, seed, n_hi, k_lo, k_hi, exec);
            (1..=n_hi)
                .map(|n| {
                    CaseRecord::check(
                        format!("random:n={n}"),
                        1 << k_hi,
                        if halving { "halving-square" } else { "parity-square" },
                        Outcome::Count(0),
                        Outcome::Count(violations[n - 1]),
                    )
                })
                .collect()
        }
        Suite::GroupImpliesNbd => {
            let (n_lo, n_hi) = params.n_range(1, 5);
            let mut graphs = Vec::new();
            for n in n_lo.max(1)..=n_hi {
                graphs.extend(connected_graphs(n, true, exec)?);
            }
            exec::map_slice(exec, &graphs, |g| {
                let obs = WinnableSet::build(g, 2, cfg.cap, Exec::Sequential).and_then(|w| {
                    let nbd2 = nbd::is_aw_nbd(g, 2)?;
                    Ok(Outcome::Bool(!w.is_all() || nbd2))
                });
                CaseRecord::from_result(describe_graph(g), 2, "implication", Outcome::Bool(true), obs)
            })
        }
    };
    let mut report = VerificationReport::new(suite.id(), params.used, cases);
    if cfg.timing {
        report.wall_time_ms = Some(started.elapsed().as_secs_f64() * 1e3);
    }
    Ok(report)
}

/// Random instances of the two commuting squares. Returns violation counts
/// bucketed by vertex count. Trial `i` draws from its own seeded stream, so
/// results do not depend on scheduling.
fn commuting_trials(
    halving: bool,
    trials: usize,
    seed: u64,
    n_max: usize,
    k_lo: u32,
    k_hi: u32,
    exec: Exec,
) -> Vec<u64> {
    let outcomes = exec::map_range(exec, trials, |i| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (i as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
        let n = rng.random_range(1..=n_max);
        let edges: Vec<(usize, usize)> = (1..=n)
            .flat_map(|u| (u + 1..=n).map(move |v| (u, v)))
            .filter(|_| rng.random_bool(0.5))
            .collect();
        let g = Graph::new(n, edges).expect("random simple graph");
        let k = rng.random_range(k_lo..=k_hi);
        let m = 1u32 << k;
        let v = rng.random_range(1..=n);
        let ok = if halving {
            let values: Vec<u32> = (0..n).map(|_| 2 * rng.random_range(0..m / 2)).collect();
            let s = Labeling::new(m, values).unwrap();
            let lhs = group::halve_even(&group::toggle_group(&g, &s, v).unwrap()).unwrap();
            let rhs = group::toggle_group(&g, &group::halve_even(&s).unwrap(), v).unwrap();
            lhs == rhs
        } else {
            let values: Vec<u32> = (0..n).map(|_| rng.random_range(0..m)).collect();
            let s = Labeling::new(m, values).unwrap();
            let lhs = group::parity_projection(&group::toggle_group(&g, &s, v).unwrap()).unwrap();
            let rhs = group::toggle_group(&g, &group::parity_projection(&s).unwrap(), v).unwrap();
            lhs == rhs
        };
        (n, ok)
    });
    let mut violations = vec![0u64; n_max];
    for (n, ok) in outcomes {
        if !ok {
            violations[n - 1] += 1;
        }
    }
    violations
}

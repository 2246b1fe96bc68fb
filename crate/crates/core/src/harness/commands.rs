//! Single-instance queries behind `lightsout solve` and `lightsout aw`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::graph::{Graph, GraphSpec};
use crate::group::{self, StateCap, WinnableSet};
use crate::labeling::Labeling;
use crate::nbd;
use crate::strategies::{self, Game, StrategyResult};

impl FromStr for Game {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "nbd" => Ok(Game::Nbd),
            "group" => Ok(Game::Group),
            _ => Err(Error::Parse { line: 0, msg: format!("unknown game `{s}` (nbd, group)") }),
        }
    }
}

impl fmt::Display for Game {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Game::Nbd => "nbd",
            Game::Group => "group",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SolveOutput {
    pub game: String,
    pub graph: String,
    pub m: u32,
    pub labeling: String,
    pub winnable: bool,
    /// Toggle counts (`nbd`, comma-separated) or a toggle sequence (`group`,
    /// space-separated).
    pub witness: Option<String>,
    pub certified: Option<bool>,
    pub method: String,
}

/// Family strategy for the group game, when the spec names a family that is
/// always winnable for this modulus.
fn family_strategy(spec: &GraphSpec, s: &Labeling) -> Option<Result<StrategyResult>> {
    if !group::aw_modulus_possible(s.modulus()) {
        return None;
    }
    match *spec {
        GraphSpec::Path(n) if group::path_aw_2k(n) => Some(strategies::win_path_2k(s)),
        GraphSpec::Cycle(n) if n >= 3 && group::cycle_aw_2k(n) => Some(strategies::win_cycle_2k(s)),
        GraphSpec::CompleteBipartite(n, p) if group::knp_aw_2k(n, p) => {
            Some(strategies::win_bipartite_2k(n, p, s))
        }
        _ => None,
    }
}

pub fn cmd_solve(game: Game, spec: &GraphSpec, m: u32, labeling: &str, cap: StateCap) -> Result<SolveOutput> {
    let g = spec.build()?;
    let s = Labeling::parse_csv(m, labeling)?;
    s.check_len(g.n())?;
    let mut out = SolveOutput {
        game: game.to_string(),
        graph: spec.to_string(),
        m,
        labeling: s.to_string(),
        winnable: false,
        witness: None,
        certified: None,
        method: String::new(),
    };
    match game {
        Game::Nbd => {
            out.method = "linear-solve".into();
            if let Some(c) = nbd::solve_nbd(&g, &s)? {
                out.winnable = true;
                out.certified = Some(nbd::apply_counts(&g, &s, &c)?.is_zero());
                out.witness = Some(c.to_string());
            }
        }
        Game::Group => {
            if let Some(result) = family_strategy(spec, &s) {
                let r = result?;
                out.method = "strategy".into();
                out.winnable = r.certified;
                out.certified = Some(r.certified);
                out.witness = Some(r.sequence.to_string());
            } else {
                out.method = "bfs".into();
                if let Some(seq) = group::win_sequence_bfs(&g, &s, cap)? {
                    out.winnable = true;
                    out.certified = Some(group::replay(&g, &s, &seq)?.is_zero());
                    out.witness = Some(seq.to_string());
                }
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum AwMethod {
    #[default]
    Auto,
    Determinant,
    Exhaustive,
    ClosedForm,
}

impl FromStr for AwMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(AwMethod::Auto),
            "determinant" => Ok(AwMethod::Determinant),
            "exhaustive" => Ok(AwMethod::Exhaustive),
            "closed_form" | "closed-form" => Ok(AwMethod::ClosedForm),
            _ => Err(Error::Parse { line: 0, msg: format!("unknown method `{s}`") }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AwOutput {
    pub game: String,
    pub graph: String,
    pub m: u32,
    pub aw: bool,
    pub method: String,
}

fn nbd_closed_form(spec: &GraphSpec, m: u32) -> Option<bool> {
    match *spec {
        GraphSpec::CompleteBipartite(n, p) => Some(nbd::knp_aw_formula(n as u64, p as u64, m as u64)),
        GraphSpec::Path(n) if m == 2 => Some(nbd::path_aw_n2(n)),
        GraphSpec::Cycle(n) if m == 2 && n >= 3 => Some(nbd::cycle_aw_n2(n)),
        _ => None,
    }
}

fn group_closed_form(spec: &GraphSpec, m: u32) -> Option<bool> {
    if !group::aw_modulus_possible(m) {
        return Some(false);
    }
    match *spec {
        GraphSpec::Path(n) => Some(group::path_aw_2k(n)),
        GraphSpec::Cycle(n) if n >= 3 => Some(group::cycle_aw_2k(n)),
        GraphSpec::CompleteBipartite(n, p) => Some(group::knp_aw_2k(n, p)),
        GraphSpec::File(_) => None,
        _ => None,
    }
}

/// Decides always-winnability. Also returns the winnable set when it was
/// computed, so callers can export it.
pub fn cmd_aw(
    game: Game,
    spec: &GraphSpec,
    m: u32,
    method: AwMethod,
    cap: StateCap,
    exec: Exec,
) -> Result<(AwOutput, Option<WinnableSet>)> {
    if m < 2 {
        return Err(Error::InvalidModulus(m));
    }
    let g: Graph = spec.build()?;
    let no_closed_form =
        || Error::Precondition(format!("no closed form for {game} game on {spec} with m={m}"));
    let mut set = None;
    let (aw, used) = match (game, method) {
        (Game::Nbd, AwMethod::Auto | AwMethod::Determinant) => (nbd::is_aw_nbd(&g, m)?, "determinant"),
        (Game::Nbd, AwMethod::Exhaustive) => {
            cap.check(m, g.n())?;
            (nbd::is_aw_nbd_exhaustive(&g, m, exec)?, "exhaustive")
        }
        (Game::Nbd, AwMethod::ClosedForm) => (nbd_closed_form(spec, m).ok_or_else(no_closed_form)?, "closed_form"),
        (Game::Group, AwMethod::Determinant) => {
            return Err(Error::Precondition("the group game has no determinant criterion".into()))
        }
        (Game::Group, AwMethod::ClosedForm) => {
            (group_closed_form(spec, m).ok_or_else(no_closed_form)?, "closed_form")
        }
        (Game::Group, AwMethod::Exhaustive | AwMethod::Auto) => match WinnableSet::build(&g, m, cap, exec) {
            Ok(w) => {
                let aw = w.is_all();
                set = Some(w);
                (aw, "exhaustive")
            }
            Err(e @ Error::StateCapExceeded { .. }) if method == AwMethod::Auto => {
                (group_closed_form(spec, m).ok_or(e)?, "closed_form")
            }
            Err(e) => return Err(e),
        },
    };
    Ok((
        AwOutput { game: game.to_string(), graph: spec.to_string(), m, aw, method: used.into() },
        set,
    ))
}

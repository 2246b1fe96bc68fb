//! Constructive winning strategies for the group game on paths, cycles and
//! complete bipartite graphs, plus lifting of any `Z_2` strategy to
//! `Z_{2^k}`. Every result is certified by replaying it through the engine.

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::group::{self, power_of_two_exponent, toggle_in_place, StateCap};
use crate::labeling::{Labeling, ToggleSequence};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Game {
    Nbd,
    Group,
}

fn as_string<T: ToString, S: Serializer>(v: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// A toggle sequence together with the state it actually reaches.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StrategyResult {
    #[serde(serialize_with = "as_string")]
    pub sequence: ToggleSequence,
    #[serde(rename = "final", serialize_with = "as_string")]
    pub final_state: Labeling,
    pub certified: bool,
}

impl StrategyResult {
    /// Replays `sequence` from `initial` in the group game.
    pub fn certify(g: &Graph, initial: &Labeling, sequence: ToggleSequence) -> Result<Self> {
        let final_state = group::replay(g, initial, &sequence)?;
        let certified = final_state.is_zero();
        Ok(StrategyResult { sequence, final_state, certified })
    }
}

/// Replays moves on a working copy while recording them.
struct Player<'a> {
    g: &'a Graph,
    game: Game,
    state: Labeling,
    seq: ToggleSequence,
}

impl<'a> Player<'a> {
    fn new(g: &'a Graph, game: Game, s: &Labeling) -> Self {
        Player { g, game, state: s.clone(), seq: ToggleSequence::new() }
    }

    fn label(&self, v: usize) -> u32 {
        self.state.values()[v - 1]
    }

    fn toggle(&mut self, v: usize) {
        let m = self.state.modulus();
        match self.game {
            Game::Group => toggle_in_place(self.g, self.state.values_mut(), m, v - 1),
            Game::Nbd => {
                let values = self.state.values_mut();
                for &w in self.g.closed0(v - 1) {
                    values[w] = (values[w] + 1) % m;
                }
            }
        }
        self.seq.push(v);
    }

    /// Toggles `v` until its label is 0.
    fn clear(&mut self, v: usize) {
        match self.game {
            Game::Nbd => {
                let times = (self.state.modulus() - self.label(v)) % self.state.modulus();
                for _ in 0..times {
                    self.toggle(v);
                }
            }
            Game::Group => {
                // Doubling reaches 0 mod 2^k within k steps.
                while self.label(v) != 0 {
                    self.toggle(v);
                }
            }
        }
    }
}

fn require_z2(s: &Labeling) -> Result<()> {
    if s.modulus() != 2 {
        return Err(Error::ModulusMismatch { expected: 2, got: s.modulus() });
    }
    Ok(())
}

/// Toggles leading `K_{n,p}` to a state whose first part is all 0 and whose
/// second part is constant: clear each second-part vertex, then each
/// first-part vertex.
pub fn standard_form_bipartite(
    game: Game,
    n: usize,
    p: usize,
    s: &Labeling,
) -> Result<ToggleSequence> {
    let g = Graph::complete_bipartite(n, p)?;
    s.check_len(n + p)?;
    if game == Game::Group {
        power_of_two_exponent(s.modulus())?;
    }
    let mut player = Player::new(&g, game, s);
    for v in (n + 1..=n + p).chain(1..=n) {
        player.clear(v);
    }
    Ok(player.seq)
}

/// Largest-index descent shared by paths and cycles: clears every vertex
/// above `keep`.
fn clear_tail(g: &Graph, s: &Labeling, keep: usize) -> ToggleSequence {
    let n = g.n();
    let mut player = Player::new(g, Game::Group, s);
    while let Some(k) = (1..=n).rev().find(|&v| player.label(v) == 1) {
        if k <= keep {
            break;
        }
        if k == n {
            player.toggle(k);
        } else if player.label(k - 1) == 1 {
            player.toggle(k - 1);
        } else {
            player.toggle(k);
            player.toggle(k - 1);
            player.toggle(k);
        }
    }
    player.seq
}

/// `Z_2` game on `P_n`: toggles leaving only vertex 1 possibly nonzero.
pub fn clear_tail_path(s: &Labeling) -> Result<ToggleSequence> {
    require_z2(s)?;
    let g = Graph::path(s.len())?;
    Ok(clear_tail(&g, s, 1))
}

/// `Z_2` game on `C_n`: toggles leaving only vertices 1 and 2 possibly nonzero.
pub fn clear_tail_cycle(s: &Labeling) -> Result<ToggleSequence> {
    require_z2(s)?;
    let g = Graph::cycle(s.len())?;
    Ok(clear_tail(&g, s, 2))
}

/// Wins the `Z_2` game on `P_n` for `n ≡ 0, 1 (mod 3)`.
///
/// After clearing the tail, a lone 1 on vertex 1 is swept along the path by
/// toggling `1..=n`, which leaves every vertex but the last at 1. Those are
/// then cleared in disjoint closed neighborhoods of size three: centered at
/// `3s+1` when `n ≡ 0`, at `3s+2` when `n ≡ 1`.
pub fn win_path_z2(s: &Labeling) -> Result<StrategyResult> {
    require_z2(s)?;
    let n = s.len();
    if n % 3 == 2 {
        return Err(Error::Precondition(format!(
            "P_{n} is not Z_2-always-winnable (n ≡ 2 mod 3)"
        )));
    }
    let g = Graph::path(n)?;
    let mut seq = clear_tail(&g, s, 1);
    let mid = group::replay(&g, s, &seq)?;
    if mid.values()[0] == 1 {
        seq.0.extend(1..=n);
        let r = n / 3;
        let offset = if n % 3 == 0 { 1 } else { 2 };
        seq.0.extend((0..r).map(|i| 3 * i + offset));
    }
    StrategyResult::certify(&g, s, seq)
}

/// Wins the `Z_2` game on `C_n` for `n >= 3`, `n ≡ 1, 2 (mod 3)`.
///
/// The tail is cleared down to vertices 1 and 2, then reduced to a single 1
/// which becomes vertex 1 of a rotated labeling. Sweeping the lone 1 around
/// the cycle leaves all ones except a gap; the remaining ones split into
/// disjoint closed neighborhoods of size three.
pub fn win_cycle_z2(s: &Labeling) -> Result<StrategyResult> {
    require_z2(s)?;
    let n = s.len();
    if n < 3 || n % 3 == 0 {
        return Err(Error::Precondition(format!(
            "C_{n} is not Z_2-always-winnable (needs n >= 3, n ≢ 0 mod 3)"
        )));
    }
    let g = Graph::cycle(n)?;
    let mut seq = clear_tail(&g, s, 2);
    let mut cur = group::replay(&g, s, &seq)?;
    if cur.values()[0] == 1 && cur.values()[1] == 1 {
        seq.push(2);
        cur = group::replay(&g, &cur, &vec![2].into())?;
    }
    if let Some(q) = cur.values().iter().position(|&v| v == 1) {
        // Rotated vertex j is original vertex q + j.
        let orig = |j: usize| (q + j - 1) % n + 1;
        let r = n / 3;
        let rotated: Vec<usize> = if n % 3 == 1 {
            // Sweep to n-2 leaves a gap at n-2; neighborhoods centered at
            // n (covering n-1, n, 1) and 3s for s = 1..r-1.
            (1..=n - 2)
                .chain([n])
                .chain((1..r).map(|i| 3 * i))
                .collect()
        } else {
            // Sweep to n-1 leaves gaps at n-1 and n.
            (1..n).chain((0..r).map(|i| 3 * i + 2)).collect()
        };
        seq.0.extend(rotated.into_iter().map(orig));
    }
    StrategyResult::certify(&g, s, seq)
}

/// Wins the `Z_2` game on `K_{n,p}` when `n` or `p` is even.
pub fn win_bipartite_z2(n: usize, p: usize, s: &Labeling) -> Result<StrategyResult> {
    require_z2(s)?;
    if n % 2 == 1 && p % 2 == 1 {
        return Err(Error::Precondition(format!(
            "K_{{{n},{p}}} is not Z_2-always-winnable (both parts odd)"
        )));
    }
    let g = Graph::complete_bipartite(n, p)?;
    let mut seq = standard_form_bipartite(Game::Group, n, p, s)?;
    let mid = group::replay(&g, s, &seq)?;
    if mid.values()[n] == 1 {
        // Each toggle in the second part flips the whole first part.
        seq.0.extend(n + 1..=n + p);
        if p % 2 == 1 {
            seq.0.extend(1..=n);
        }
    }
    StrategyResult::certify(&g, s, seq)
}

/// Lifts a `Z_2` strategy on `g` to the `Z_{2^k}` game. Stage `j` feeds bit
/// `j` of the current labels (all lower bits are already 0) to `z2_solver`
/// and replays its answer on the real state.
pub fn lift_strategy_2k<F>(g: &Graph, k: u32, s: &Labeling, mut z2_solver: F) -> Result<StrategyResult>
where
    F: FnMut(&Labeling) -> Result<Option<ToggleSequence>>,
{
    s.check_len(g.n())?;
    if k == 0 || power_of_two_exponent(s.modulus()).ok() != Some(k) {
        return Err(Error::Precondition(format!(
            "state modulus {} is not 2^{k} with k >= 1",
            s.modulus()
        )));
    }
    let mut cur = s.clone();
    let mut seq = ToggleSequence::new();
    for j in 0..k {
        let bits = Labeling::from_raw(2, cur.values().iter().map(|v| v >> j & 1).collect());
        let stage = z2_solver(&bits)?.ok_or_else(|| Error::Z2SolverFailed(bits.to_string()))?;
        cur = group::replay(g, &cur, &stage)?;
        seq.extend_from(&stage);
    }
    StrategyResult::certify(g, s, seq)
}

/// `Z_2` solver backed by breadth-first search, for arbitrary graphs.
pub fn bfs_z2_solver(
    g: &Graph,
    cap: StateCap,
) -> impl FnMut(&Labeling) -> Result<Option<ToggleSequence>> + '_ {
    move |s| group::win_sequence_bfs(g, s, cap)
}

/// Adapts a certified family strategy into a `Z_2` solver.
pub fn family_z2_solver<F>(strategy: F) -> impl FnMut(&Labeling) -> Result<Option<ToggleSequence>>
where
    F: Fn(&Labeling) -> Result<StrategyResult>,
{
    move |s| {
        let r = strategy(s)?;
        Ok(r.certified.then_some(r.sequence))
    }
}

/// Wins the `Z_{2^k}` game on `P_n` (`n ≡ 0, 1 mod 3`).
pub fn win_path_2k(s: &Labeling) -> Result<StrategyResult> {
    let k = power_of_two_exponent(s.modulus())?;
    let g = Graph::path(s.len())?;
    lift_strategy_2k(&g, k, s, family_z2_solver(win_path_z2))
}

/// Wins the `Z_{2^k}` game on `C_n` (`n ≡ 1, 2 mod 3`).
pub fn win_cycle_2k(s: &Labeling) -> Result<StrategyResult> {
    let k = power_of_two_exponent(s.modulus())?;
    let g = Graph::cycle(s.len())?;
    lift_strategy_2k(&g, k, s, family_z2_solver(win_cycle_z2))
}

/// Wins the `Z_{2^k}` game on `K_{n,p}` (`n` or `p` even).
pub fn win_bipartite_2k(n: usize, p: usize, s: &Labeling) -> Result<StrategyResult> {
    let k = power_of_two_exponent(s.modulus())?;
    let g = Graph::complete_bipartite(n, p)?;
    lift_strategy_2k(&g, k, s, family_z2_solver(|t| win_bipartite_z2(n, p, t)))
}

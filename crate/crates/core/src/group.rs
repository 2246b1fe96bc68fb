//! The `Z_m` group-labeling game.
//!
//! Toggling `v` adds the current label of `v` to every label in its closed
//! neighborhood, so the label of `v` itself doubles and toggling a vertex
//! labeled 0 does nothing. Unlike the neighborhood game, order matters, and
//! winnability is decided by exhaustive reachability over all `m^n` states.

use std::collections::{HashMap, VecDeque};
use std::sync::atomic::{AtomicU64, Ordering};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::{self, Exec};
use crate::graph::Graph;
use crate::labeling::{Labeling, ToggleSequence};

pub const DEFAULT_STATE_CAP_BITS: u32 = 24;
pub const MAX_STATE_CAP_BITS: u32 = 34;
pub const STATE_CAP_ENV: &str = "LIGHTSOUT_STATE_CAP";

/// Upper bound `2^bits` on the number of states an exhaustive search may
/// touch.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StateCap {
    bits: u32,
}

impl Default for StateCap {
    fn default() -> Self {
        StateCap { bits: DEFAULT_STATE_CAP_BITS }
    }
}

impl StateCap {
    pub fn from_bits(bits: u32) -> Result<Self> {
        if bits > MAX_STATE_CAP_BITS {
            return Err(Error::Precondition(format!(
                "state cap 2^{bits} above supported 2^{MAX_STATE_CAP_BITS}"
            )));
        }
        Ok(StateCap { bits })
    }

    /// Default cap, overridden by `LIGHTSOUT_STATE_CAP` (in bits) when set.
    pub fn from_env() -> Result<Self> {
        match std::env::var(STATE_CAP_ENV) {
            Ok(v) => {
                let bits = v.trim().parse().map_err(|_| Error::Parse {
                    line: 0,
                    msg: format!("{STATE_CAP_ENV}=`{v}` is not a bit count"),
                })?;
                StateCap::from_bits(bits)
            }
            Err(_) => Ok(StateCap::default()),
        }
    }

    pub fn bits(self) -> u32 {
        self.bits
    }

    pub fn states(self) -> u64 {
        1u64 << self.bits
    }

    /// Number of states `m^n`, or an error if above the cap.
    pub fn check(self, m: u32, n: usize) -> Result<u64> {
        let required = (m as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
        if required > self.states() as u128 {
            return Err(Error::StateCapExceeded {
                required,
                cap: self.states(),
                cap_bits: self.bits,
            });
        }
        Ok(required as u64)
    }
}

pub(crate) fn toggle_in_place(g: &Graph, values: &mut [u32], m: u32, i: usize) {
    let a = values[i];
    if a == 0 {
        return;
    }
    for &w in g.closed0(i) {
        values[w] = ((values[w] as u64 + a as u64) % m as u64) as u32;
    }
}

pub fn toggle_group(g: &Graph, s: &Labeling, v: usize) -> Result<Labeling> {
    g.check_vertex(v)?;
    s.check_len(g.n())?;
    let m = s.modulus();
    let mut out = s.clone();
    toggle_in_place(g, out.values_mut(), m, v - 1);
    Ok(out)
}

/// Applies `seq` left to right.
pub fn replay(g: &Graph, s: &Labeling, seq: &ToggleSequence) -> Result<Labeling> {
    s.check_len(g.n())?;
    for &v in seq.as_slice() {
        g.check_vertex(v)?;
    }
    let m = s.modulus();
    let mut out = s.clone();
    for &v in seq.as_slice() {
        toggle_in_place(g, out.values_mut(), m, v - 1);
    }
    Ok(out)
}

pub(crate) fn power_of_two_exponent(m: u32) -> Result<u32> {
    if m >= 2 && m.is_power_of_two() {
        Ok(m.trailing_zeros())
    } else {
        Err(Error::NotPowerOfTwo(m))
    }
}

/// Componentwise parity of a `Z_{2^k}` labeling, as a `Z_2` labeling.
pub fn parity_projection(s: &Labeling) -> Result<Labeling> {
    power_of_two_exponent(s.modulus())?;
    Ok(Labeling::from_raw(2, s.values().iter().map(|v| v & 1).collect()))
}

/// Halves an all-even `Z_{2^k}` labeling (`k >= 2`) into `Z_{2^(k-1)}`.
pub fn halve_even(s: &Labeling) -> Result<Labeling> {
    let k = power_of_two_exponent(s.modulus())?;
    if k < 2 {
        return Err(Error::Precondition("halving needs modulus 2^k with k >= 2".into()));
    }
    if let Some(pos) = s.values().iter().position(|v| v % 2 == 1) {
        return Err(Error::Precondition(format!(
            "vertex {} has odd label {}",
            pos + 1,
            s.values()[pos]
        )));
    }
    Ok(Labeling::from_raw(
        s.modulus() / 2,
        s.values().iter().map(|v| v / 2).collect(),
    ))
}

const FRONTIER_CHUNK: usize = 4096;

/// Every state of the `Z_m` game on a graph from which the zero labeling is
/// reachable, as a bitmap over base-`m` state indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WinnableSet {
    n: usize,
    m: u32,
    bits: Vec<u64>,
    count: u64,
}

#[derive(Serialize, Deserialize)]
struct ExportHeader {
    n: usize,
    m: u32,
    encoding: String,
    count: u64,
}

const EXPORT_ENCODING: &str = "base-m state index, vertex 1 least significant; state i is bit i%8 of byte i/8";

/// Predecessors of state `t` under one toggle, excluding no-op toggles.
fn for_each_predecessor(
    g: &Graph,
    m: u32,
    powers: &[u64],
    t_index: u64,
    digits: &[u32],
    mut visit: impl FnMut(u64),
) {
    let m64 = m as u64;
    let mut pre_images = [0u32; 2];
    for i in 0..g.n() {
        let t = digits[i];
        // Solutions of 2a = t (mod m).
        let found = if m % 2 == 1 {
            pre_images[0] = ((t as u64 * (m64 + 1) / 2) % m64) as u32;
            1
        } else if t % 2 == 0 {
            pre_images[0] = t / 2;
            pre_images[1] = t / 2 + m / 2;
            2
        } else {
            0
        };
        for &a in &pre_images[..found] {
            if a == 0 {
                continue;
            }
            let mut idx = t_index;
            for &w in g.closed0(i) {
                let s_w = if w == i { a } else { (digits[w] + m - a) % m };
                idx = idx
                    .wrapping_add(s_w as u64 * powers[w])
                    .wrapping_sub(digits[w] as u64 * powers[w]);
            }
            visit(idx);
        }
    }
}

fn decode_into(mut index: u64, m: u32, digits: &mut [u32]) {
    for d in digits.iter_mut() {
        *d = (index % m as u64) as u32;
        index /= m as u64;
    }
}

impl WinnableSet {
    /// Marks all winnable states by breadth-first search backwards from the
    /// zero labeling. Each frontier is expanded over `exec`; the resulting
    /// set does not depend on the schedule.
    pub fn build(g: &Graph, m: u32, cap: StateCap, exec: Exec) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidModulus(m));
        }
        let total = cap.check(m, g.n())?;
        let n = g.n();
        let powers: Vec<u64> = (0..n).map(|i| (m as u64).pow(i as u32)).collect();
        let words = total.div_ceil(64) as usize;
        let marks: Vec<AtomicU64> = (0..words).map(|_| AtomicU64::new(0)).collect();
        let mark = |idx: u64| {
            let bit = 1u64 << (idx % 64);
            marks[(idx / 64) as usize].fetch_or(bit, Ordering::Relaxed) & bit == 0
        };
        mark(0);
        let mut count = 1u64;
        let mut frontier = vec![0u64];
        while !frontier.is_empty() {
            let chunks: Vec<&[u64]> = frontier.chunks(FRONTIER_CHUNK).collect();
            let found = exec::map_slice(exec, &chunks, |chunk| {
                let mut digits = vec![0u32; n];
                let mut out = Vec::new();
                for &t in chunk.iter() {
                    decode_into(t, m, &mut digits);
                    for_each_predecessor(g, m, &powers, t, &digits, |s| {
                        if mark(s) {
                            out.push(s);
                        }
                    });
                }
                out
            });
            frontier = found.concat();
            count += frontier.len() as u64;
        }
        let bits = marks.into_iter().map(AtomicU64::into_inner).collect();
        Ok(WinnableSet { n, m, bits, count })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn modulus(&self) -> u32 {
        self.m
    }

    /// Number of winnable states.
    pub fn count(&self) -> u64 {
        self.count
    }

    /// Number of states overall, `m^n`.
    pub fn total(&self) -> u64 {
        (self.m as u64).pow(self.n as u32)
    }

    pub fn is_all(&self) -> bool {
        self.count == self.total()
    }

    pub fn contains_index(&self, index: u64) -> bool {
        index < self.total() && self.bits[(index / 64) as usize] >> (index % 64) & 1 == 1
    }

    pub fn contains(&self, s: &Labeling) -> Result<bool> {
        s.check_len(self.n)?;
        if s.modulus() != self.m {
            return Err(Error::ModulusMismatch { expected: self.m, got: s.modulus() });
        }
        Ok(self.contains_index(s.state_index()))
    }

    /// Winnable states in increasing index order.
    pub fn members(&self) -> impl Iterator<Item = Labeling> + '_ {
        (0..self.total())
            .filter(|&i| self.contains_index(i))
            .map(|i| Labeling::from_state_index(self.m, self.n, i).expect("valid modulus"))
    }

    /// One JSON header line, then the bitmap as lowercase hex.
    pub fn to_export_string(&self) -> String {
        let header = ExportHeader {
            n: self.n,
            m: self.m,
            encoding: EXPORT_ENCODING.to_string(),
            count: self.count,
        };
        let bytes_len = self.total().div_ceil(8) as usize;
        let bytes: Vec<u8> = self
            .bits
            .iter()
            .flat_map(|w| w.to_le_bytes())
            .take(bytes_len)
            .collect();
        format!(
            "{}\n{}\n",
            serde_json::to_string(&header).expect("header serializes"),
            hex::encode(bytes)
        )
    }

    pub fn from_export_str(text: &str) -> Result<Self> {
        let bad = |line: usize, msg: String| Error::Parse { line, msg };
        let mut lines = text.lines();
        let header: ExportHeader = serde_json::from_str(lines.next().unwrap_or(""))
            .map_err(|e| bad(1, format!("bad header: {e}")))?;
        if header.m < 2 {
            return Err(Error::InvalidModulus(header.m));
        }
        let total = (header.m as u64)
            .checked_pow(header.n as u32)
            .ok_or_else(|| bad(1, "state count overflows".into()))?;
        let bytes = hex::decode(lines.next().unwrap_or("").trim())
            .map_err(|e| bad(2, format!("bad hex: {e}")))?;
        if bytes.len() as u64 != total.div_ceil(8) {
            return Err(bad(2, format!("expected {} bytes", total.div_ceil(8))));
        }
        let mut bits = vec![0u64; total.div_ceil(64) as usize];
        for (i, b) in bytes.iter().enumerate() {
            bits[i / 8] |= (*b as u64) << (8 * (i % 8));
        }
        let count: u64 = bits.iter().map(|w| w.count_ones() as u64).sum();
        if count != header.count {
            return Err(bad(1, format!("header count {} but bitmap has {count}", header.count)));
        }
        Ok(WinnableSet { n: header.n, m: header.m, bits, count })
    }
}

pub fn winnable_set(g: &Graph, m: u32, cap: StateCap) -> Result<WinnableSet> {
    WinnableSet::build(g, m, cap, Exec::default())
}

pub fn is_winnable_group(g: &Graph, s: &Labeling, cap: StateCap) -> Result<bool> {
    winnable_set(g, s.modulus(), cap)?.contains(s)
}

pub fn is_aw_group(g: &Graph, m: u32, cap: StateCap) -> Result<bool> {
    Ok(winnable_set(g, m, cap)?.is_all())
}

/// Shortest winning toggle sequence from `s`, by forward breadth-first
/// search. Vertices are expanded in increasing order, so among shortest
/// sequences the lexicographically least-by-discovery one is returned.
pub fn win_sequence_bfs(g: &Graph, s: &Labeling, cap: StateCap) -> Result<Option<ToggleSequence>> {
    s.check_len(g.n())?;
    let m = s.modulus();
    cap.check(m, g.n())?;
    let start = s.state_index();
    if start == 0 {
        return Ok(Some(ToggleSequence::new()));
    }
    let n = g.n();
    let mut parent: HashMap<u64, (u64, usize)> = HashMap::new();
    parent.insert(start, (start, 0));
    let mut queue = VecDeque::from([start]);
    let mut digits = vec![0u32; n];
    while let Some(cur) = queue.pop_front() {
        decode_into(cur, m, &mut digits);
        for i in 0..n {
            if digits[i] == 0 {
                continue;
            }
            let mut next = digits.clone();
            toggle_in_place(g, &mut next, m, i);
            let idx = Labeling::from_raw(m, next).state_index();
            if parent.contains_key(&idx) {
                continue;
            }
            parent.insert(idx, (cur, i + 1));
            if idx == 0 {
                let mut seq = Vec::new();
                let mut at = 0u64;
                while at != start {
                    let (prev, v) = parent[&at];
                    seq.push(v);
                    at = prev;
                }
                seq.reverse();
                return Ok(Some(ToggleSequence(seq)));
            }
            queue.push_back(idx);
        }
    }
    Ok(None)
}

/// `P_n` is `Z_{2^k}`-AW iff `n ≡ 0, 1 (mod 3)`.
pub fn path_aw_2k(n: usize) -> bool {
    n % 3 != 2
}

/// `C_n` is `Z_{2^k}`-AW iff `n ≡ 1, 2 (mod 3)`.
pub fn cycle_aw_2k(n: usize) -> bool {
    n % 3 != 0
}

/// `K_{n,p}` is `Z_{2^k}`-AW iff `n` or `p` is even.
pub fn knp_aw_2k(n: usize, p: usize) -> bool {
    n % 2 == 0 || p % 2 == 0
}

/// Only moduli `2^k` admit always-winnable graphs.
pub fn aw_modulus_possible(m: u32) -> bool {
    m >= 2 && m.is_power_of_two()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::enumerate_connected_graphs;
    use proptest::prelude::*;

    fn lab(m: u32, v: &[u32]) -> Labeling {
        Labeling::new(m, v.to_vec()).unwrap()
    }

    fn cap() -> StateCap {
        StateCap::default()
    }

    /// Oracle: forward closure from each state, independently of the
    /// backward search.
    fn forward_winnable(g: &Graph, s: &Labeling) -> bool {
        let mut seen = std::collections::HashSet::new();
        let mut stack = vec![s.clone()];
        while let Some(cur) = stack.pop() {
            if cur.is_zero() {
                return true;
            }
            if !seen.insert(cur.clone()) {
                continue;
            }
            for v in 1..=g.n() {
                stack.push(toggle_group(g, &cur, v).unwrap());
            }
        }
        false
    }

    #[test]
    fn toggle_examples() {
        let p2 = Graph::path(2).unwrap();
        assert_eq!(toggle_group(&p2, &lab(2, &[1, 1]), 1).unwrap(), lab(2, &[0, 0]));
        assert_eq!(toggle_group(&p2, &lab(4, &[3, 2]), 1).unwrap(), lab(4, &[2, 1]));
        assert_eq!(toggle_group(&p2, &lab(4, &[0, 3]), 1).unwrap(), lab(4, &[0, 3]));
    }

    #[test]
    fn replay_examples() {
        let p3 = Graph::path(3).unwrap();
        let s = lab(2, &[1, 0, 0]);
        assert_eq!(replay(&p3, &s, &ToggleSequence::new()).unwrap(), s);
        assert!(replay(&p3, &s, &vec![1, 2, 3, 1].into()).unwrap().is_zero());
        assert!(replay(&p3, &s, &vec![1, 4].into()).is_err());
        let a: ToggleSequence = vec![2, 1].into();
        let b: ToggleSequence = vec![3, 3, 2].into();
        let mut ab = a.clone();
        ab.extend_from(&b);
        let t = lab(2, &[1, 1, 0]);
        assert_eq!(
            replay(&p3, &t, &ab).unwrap(),
            replay(&p3, &replay(&p3, &t, &a).unwrap(), &b).unwrap()
        );
    }

    #[test]
    fn projection_and_halving() {
        assert_eq!(parity_projection(&lab(4, &[3, 2])).unwrap(), lab(2, &[1, 0]));
        assert_eq!(parity_projection(&lab(8, &[7, 6, 1])).unwrap(), lab(2, &[1, 0, 1]));
        assert!(parity_projection(&lab(4, &[0, 0])).unwrap().is_zero());
        assert!(matches!(parity_projection(&lab(3, &[1])), Err(Error::NotPowerOfTwo(3))));
        assert!(parity_projection(&lab(6, &[1])).is_err());
        assert_eq!(halve_even(&lab(4, &[2, 2])).unwrap(), lab(2, &[1, 1]));
        assert_eq!(halve_even(&lab(8, &[6, 0, 4])).unwrap(), lab(4, &[3, 0, 2]));
        assert!(halve_even(&lab(4, &[1, 2])).is_err());
        assert!(halve_even(&lab(2, &[0, 0])).is_err());
    }

    #[test]
    fn winnable_set_examples() {
        let p2 = Graph::path(2).unwrap();
        let ws = winnable_set(&p2, 2, cap()).unwrap();
        let members: Vec<Labeling> = ws.members().collect();
        assert_eq!(members, vec![lab(2, &[0, 0]), lab(2, &[1, 1])]);
        assert!(is_aw_group(&Graph::path(1).unwrap(), 2, cap()).unwrap());
        assert_eq!(winnable_set(&Graph::path(3).unwrap(), 2, cap()).unwrap().count(), 8);
        assert!(!is_aw_group(&p2, 2, cap()).unwrap());
        assert!(is_aw_group(&Graph::cycle(5).unwrap(), 2, cap()).unwrap());
        assert!(is_aw_group(&Graph::complete_bipartite(2, 2).unwrap(), 4, cap()).unwrap());
        assert!(!is_winnable_group(&p2, &lab(2, &[1, 0]), cap()).unwrap());
    }

    #[test]
    fn cap_is_enforced() {
        let g = Graph::path(5).unwrap();
        let small = StateCap::from_bits(4).unwrap();
        match winnable_set(&g, 2, small) {
            Err(Error::StateCapExceeded { required: 32, cap: 16, .. }) => {}
            other => panic!("expected cap error, got {other:?}"),
        }
        assert!(win_sequence_bfs(&g, &Labeling::zero(2, 5).unwrap(), small).is_err());
        assert!(StateCap::from_bits(40).is_err());
    }

    #[test]
    fn bfs_examples() {
        let p2 = Graph::path(2).unwrap();
        assert_eq!(win_sequence_bfs(&p2, &lab(2, &[0, 0]), cap()).unwrap(), Some(ToggleSequence::new()));
        assert_eq!(win_sequence_bfs(&p2, &lab(2, &[1, 1]), cap()).unwrap(), Some(vec![1].into()));
        assert_eq!(win_sequence_bfs(&p2, &lab(2, &[1, 0]), cap()).unwrap(), None);
    }

    #[test]
    fn backward_set_matches_forward_search() {
        for n in 1..=4 {
            for g in enumerate_connected_graphs(n, true).unwrap() {
                for m in [2, 3, 4] {
                    let ws = winnable_set(&g, m, cap()).unwrap();
                    for idx in 0..ws.total() {
                        let s = Labeling::from_state_index(m, n, idx).unwrap();
                        let member = ws.contains_index(idx);
                        assert_eq!(member, forward_winnable(&g, &s), "{g:?} m={m} {s}");
                        let seq = win_sequence_bfs(&g, &s, cap()).unwrap();
                        assert_eq!(seq.is_some(), member);
                        if let Some(seq) = seq {
                            assert!(replay(&g, &s, &seq).unwrap().is_zero());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn execution_modes_agree() {
        let g = Graph::cycle(7).unwrap();
        let a = WinnableSet::build(&g, 4, cap(), Exec::Sequential).unwrap();
        let b = WinnableSet::build(&g, 4, cap(), Exec::Parallel).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn export_round_trip() {
        for (g, m) in [(Graph::path(2).unwrap(), 2), (Graph::cycle(3).unwrap(), 6), (Graph::path(4).unwrap(), 3)] {
            let ws = winnable_set(&g, m, cap()).unwrap();
            let text = ws.to_export_string();
            let header: serde_json::Value = serde_json::from_str(text.lines().next().unwrap()).unwrap();
            assert_eq!(header["count"], ws.count());
            assert_eq!(WinnableSet::from_export_str(&text).unwrap(), ws);
        }
        assert_eq!(
            winnable_set(&Graph::path(2).unwrap(), 2, cap()).unwrap().to_export_string().lines().nth(1),
            Some("09")
        );
        assert!(WinnableSet::from_export_str("{\"n\":1,\"m\":2,\"encoding\":\"\",\"count\":2}\n01\n").is_err());
    }

    proptest! {
        #[test]
        fn parity_commutes_with_toggle(
            code in 0u32..1024, n in 1usize..=5, k in 2u32..=3,
            raw in proptest::collection::vec(0u32..8, 5), v in 1usize..=5,
        ) {
            let edges = (1..=n).flat_map(|u| (u + 1..=n).map(move |w| (u, w)))
                .enumerate().filter(|(i, _)| code >> i & 1 == 1).map(|(_, e)| e);
            let g = Graph::new(n, edges).unwrap();
            let m = 1u32 << k;
            let s = Labeling::new(m, raw[..n].iter().map(|x| x % m).collect()).unwrap();
            let v = (v - 1) % n + 1;
            let lhs = parity_projection(&toggle_group(&g, &s, v).unwrap()).unwrap();
            let rhs = toggle_group(&g, &parity_projection(&s).unwrap(), v).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}

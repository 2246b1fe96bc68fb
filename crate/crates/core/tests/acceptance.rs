//! Acceptance checks. Runs as a plain binary and prints one PASS/FAIL line
//! per criterion; exits nonzero if any criterion fails.

use std::collections::HashSet;
use std::process::ExitCode;
use std::time::Instant;

use lightsout::enumerate::{connected_graphs, enumerate_graphs};
use lightsout::group::{is_aw_group, winnable_set};
use lightsout::harness::{run_census, run_suite, RunConfig, Suite, SuiteParams};
use lightsout::strategies::{
    win_bipartite_2k, win_bipartite_z2, win_cycle_2k, win_cycle_z2, win_path_2k, win_path_z2,
};
use lightsout::{nbd, Exec, Graph, Labeling, StateCap, StrategyResult};

type Outcome = Result<String, String>;

fn cap() -> StateCap {
    StateCap::default()
}

fn all_states(m: u32, n: usize) -> impl Iterator<Item = Labeling> {
    (0..(m as u64).pow(n as u32)).map(move |i| Labeling::from_state_index(m, n, i).unwrap())
}

/// Compares an exhaustive always-winnable decision against a predicate on
/// a list of `(name, graph, m, expected)` cases.
fn aw_cases(cases: Vec<(String, Graph, u32, bool)>) -> Outcome {
    let total = cases.len();
    for (name, g, m, expected) in cases {
        let got = is_aw_group(&g, m, cap()).map_err(|e| format!("{name} m={m}: {e}"))?;
        if got != expected {
            return Err(format!("{name} m={m}: expected {expected}, engine says {got}"));
        }
    }
    Ok(format!("{total} cases"))
}

fn c1_paths() -> Outcome {
    let mut cases = Vec::new();
    for n in 1..=9 {
        for k in 1..=2 {
            cases.push((format!("P_{n}"), Graph::path(n).unwrap(), 1 << k, n % 3 != 2));
        }
    }
    aw_cases(cases)
}

fn c2_cycles() -> Outcome {
    let mut cases = Vec::new();
    for n in 3..=9 {
        cases.push((format!("C_{n}"), Graph::cycle(n).unwrap(), 2, n % 3 != 0));
    }
    for n in 3..=5 {
        cases.push((format!("C_{n}"), Graph::cycle(n).unwrap(), 4, n % 3 != 0));
    }
    aw_cases(cases)
}

fn bipartite_range(sum_max: usize) -> Vec<(usize, usize)> {
    (1..sum_max).flat_map(|n| (1..=sum_max - n).map(move |p| (n, p))).collect()
}

fn c3_bipartite() -> Outcome {
    let mut cases = Vec::new();
    for (sum_max, m) in [(6, 2), (4, 4)] {
        for (n, p) in bipartite_range(sum_max) {
            let g = Graph::complete_bipartite(n, p).unwrap();
            cases.push((format!("K_{n},{p}"), g, m, n % 2 == 0 || p % 2 == 0));
        }
    }
    aw_cases(cases)
}

fn c4_knp_nbd() -> Outcome {
    let mut checked = 0;
    let mut exhaustive = 0;
    for n in 1..=4u64 {
        for p in 1..=4u64 {
            let g = Graph::complete_bipartite(n as usize, p as usize).unwrap();
            for m in 2..=8u64 {
                let formula = num_gcd(m, n * p - 1) == 1;
                let lib_formula = nbd::knp_aw_formula(n, p, m);
                let det = nbd::is_aw_nbd(&g, m as u32).map_err(|e| e.to_string())?;
                if formula != lib_formula || formula != det {
                    return Err(format!("K_{n},{p} m={m}: gcd {formula}, formula {lib_formula}, det {det}"));
                }
                if n + p <= 5 && m <= 4 {
                    let ex = nbd::is_aw_nbd_exhaustive(&g, m as u32, Exec::default()).map_err(|e| e.to_string())?;
                    if ex != formula {
                        return Err(format!("K_{n},{p} m={m}: exhaustive {ex}, formula {formula}"));
                    }
                    exhaustive += 1;
                }
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} cases, {exhaustive} exhaustive"))
}

fn num_gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        num_gcd(b, a % b)
    }
}

fn c5_two_vs_four() -> Outcome {
    let mut total = 0;
    for n in 1..=4 {
        for g in connected_graphs(n, false, Exec::default()).unwrap() {
            let a = is_aw_group(&g, 2, cap()).map_err(|e| e.to_string())?;
            let b = is_aw_group(&g, 4, cap()).map_err(|e| e.to_string())?;
            if a != b {
                return Err(format!("{}: Z_2 {a}, Z_4 {b}", g.descriptor()));
            }
            total += 1;
        }
    }
    Ok(format!("{total} labeled connected graphs"))
}

fn c6_counts() -> Outcome {
    let graphs = [
        ("P_2", Graph::path(2).unwrap()),
        ("P_3", Graph::path(3).unwrap()),
        ("C_3", Graph::cycle(3).unwrap()),
        ("K_1,2", Graph::complete_bipartite(1, 2).unwrap()),
    ];
    let mut detail = Vec::new();
    for (name, g) in &graphs {
        for (big, small) in [(6, 2), (12, 4)] {
            let a = winnable_set(g, big, cap()).map_err(|e| e.to_string())?.count();
            let b = winnable_set(g, small, cap()).map_err(|e| e.to_string())?.count();
            if a != b {
                return Err(format!("{name}: |W(Z_{big})|={a}, |W(Z_{small})|={b}"));
            }
            detail.push(format!("{name}/{big}={a}"));
        }
    }
    Ok(detail.join(" "))
}

fn c7_non_power_of_two() -> Outcome {
    let mut total = 0;
    for n in 1..=3 {
        for g in connected_graphs(n, false, Exec::default()).unwrap() {
            for m in [3, 5, 6] {
                if is_aw_group(&g, m, cap()).map_err(|e| e.to_string())? {
                    return Err(format!("{} is AW over Z_{m}", g.descriptor()));
                }
                total += 1;
            }
        }
    }
    Ok(format!("{total} cases"))
}

fn c8_commuting_squares() -> Outcome {
    let mut detail = Vec::new();
    for (name, suite) in [("parity", Suite::ParitySquare), ("halving", Suite::HalvingSquare)] {
        let params = SuiteParams { trials: Some(10_000), n_max: Some(5), k_max: Some(3), ..Default::default() };
        let r = run_suite(suite, &params, &RunConfig::default()).map_err(|e| e.to_string())?;
        let violations: u64 = r
            .cases
            .iter()
            .map(|c| match c.observed {
                Some(lightsout::harness::Outcome::Count(v)) => v,
                _ => u64::MAX,
            })
            .sum();
        if !r.pass || violations != 0 {
            return Err(format!("{name}: {violations} violations"));
        }
        detail.push(format!("{name}: 10000 trials, 0 violations"));
    }
    Ok(detail.join("; "))
}

fn certify_all<F>(name: &str, m: u32, n: usize, strategy: F, count: &mut usize) -> Result<(), String>
where
    F: Fn(&Labeling) -> lightsout::Result<StrategyResult>,
{
    for s in all_states(m, n) {
        let r = strategy(&s).map_err(|e| format!("{name} on {s}: {e}"))?;
        if !r.certified {
            return Err(format!("{name} on {s}: sequence `{}` leaves {}", r.sequence, r.final_state));
        }
        *count += 1;
    }
    Ok(())
}

fn c9_strategies() -> Outcome {
    let mut count = 0;
    for n in (1..=9).filter(|n| n % 3 != 2) {
        certify_all(&format!("path z2 P_{n}"), 2, n, win_path_z2, &mut count)?;
        certify_all(&format!("path lift P_{n}"), 4, n, win_path_2k, &mut count)?;
    }
    for n in (3..=9).filter(|n| n % 3 != 0) {
        certify_all(&format!("cycle z2 C_{n}"), 2, n, win_cycle_z2, &mut count)?;
        if n <= 5 {
            certify_all(&format!("cycle lift C_{n}"), 4, n, win_cycle_2k, &mut count)?;
        }
    }
    for (n, p) in bipartite_range(6).into_iter().filter(|(n, p)| n % 2 == 0 || p % 2 == 0) {
        certify_all(&format!("kbip z2 K_{n},{p}"), 2, n + p, |s| win_bipartite_z2(n, p, s), &mut count)?;
        if n + p <= 4 {
            certify_all(&format!("kbip lift K_{n},{p}"), 4, n + p, |s| win_bipartite_2k(n, p, s), &mut count)?;
        }
    }
    Ok(format!("{count} initial states certified"))
}

/// Images of the neighborhood map, built by trying every count vector.
fn reachable_by_counts(g: &Graph, m: u32) -> HashSet<Vec<u32>> {
    let n = g.n();
    let mut image = HashSet::new();
    for counts in all_states(m, n) {
        let mut lab = vec![0u32; n];
        for (v, &c) in counts.values().iter().enumerate() {
            lab[v] = (lab[v] + c) % m;
        }
        for &(u, v) in g.edges() {
            lab[u - 1] = (lab[u - 1] + counts.values()[v - 1]) % m;
            lab[v - 1] = (lab[v - 1] + counts.values()[u - 1]) % m;
        }
        image.insert(lab);
    }
    image
}

fn c10_solver() -> Outcome {
    let mut checked = 0u64;
    for n in 1..=4 {
        for g in enumerate_graphs(n).unwrap() {
            for m in [2u32, 3, 4, 6] {
                let image = reachable_by_counts(&g, m);
                for s in all_states(m, n) {
                    // Winnable means -s is in the image.
                    let target: Vec<u32> = s.values().iter().map(|&x| (m - x) % m).collect();
                    let expected = image.contains(&target);
                    let got = nbd::solve_nbd(&g, &s).map_err(|e| e.to_string())?;
                    match got {
                        Some(c) => {
                            let end = nbd::apply_counts(&g, &s, &c).map_err(|e| e.to_string())?;
                            if !expected || !end.is_zero() {
                                return Err(format!("{} m={m} {s}: bogus witness {c}", g.descriptor()));
                            }
                        }
                        None if expected => {
                            return Err(format!("{} m={m} {s}: solver missed a solution", g.descriptor()));
                        }
                        None => {}
                    }
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("{checked} (graph, m, labeling) triples"))
}

fn c11_census() -> Outcome {
    let c = run_census(5, false, cap(), Exec::default()).map_err(|e| e.to_string())?;
    if c.violations != 0 {
        return Err(format!("{} graphs are Z_2-AW but not (N,2)-AW", c.violations));
    }
    let d = run_census(5, true, cap(), Exec::default()).map_err(|e| e.to_string())?;
    Ok(format!(
        "{} labeled graphs, {} flagged; {} up to isomorphism, {} flagged",
        c.graphs, c.flagged, d.graphs, d.flagged
    ))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("paths over Z_2 and Z_4", c1_paths),
        ("cycles over Z_2 and Z_4", c2_cycles),
        ("complete bipartite over Z_2 and Z_4", c3_bipartite),
        ("K_{n,p} neighborhood game: gcd formula, determinant, exhaustive", c4_knp_nbd),
        ("Z_2 and Z_4 always-winnability agree on connected graphs", c5_two_vs_four),
        ("winnable-set sizes depend only on the 2-part of m", c6_counts),
        ("no small connected graph is AW for m in {3,5,6}", c7_non_power_of_two),
        ("parity and halving commute with toggling", c8_commuting_squares),
        ("family strategies certify on every admissible state", c9_strategies),
        ("linear solver matches exhaustive count search", c10_solver),
        ("census up to 5 vertices is consistent", c11_census),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS criterion {:>2}: {name} ({detail}) [{secs:.2}s]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {:>2}: {name} ({detail}) [{secs:.2}s]", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

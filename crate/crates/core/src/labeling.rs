//! Vertex labelings by residues mod `m`, and the two ways of recording play:
//! per-vertex toggle counts and ordered toggle sequences.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

fn check_modulus(m: u32) -> Result<()> {
    if m < 2 {
        Err(Error::InvalidModulus(m))
    } else {
        Ok(())
    }
}

fn parse_residues(m: u32, text: &str) -> Result<Vec<u32>> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .enumerate()
        .map(|(i, f)| {
            let f = f.trim();
            let value: u64 = f.parse().map_err(|_| Error::Parse {
                line: 0,
                msg: format!("field {}: `{f}` is not a nonnegative integer", i + 1),
            })?;
            if value >= m as u64 {
                return Err(Error::ResidueOutOfRange { value, m });
            }
            Ok(value as u32)
        })
        .collect()
}

fn write_csv(f: &mut fmt::Formatter<'_>, values: &[u32]) -> fmt::Result {
    for (i, v) in values.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{v}")?;
    }
    Ok(())
}

/// Assignment of a residue in `0..m` to every vertex, in vertex order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Labeling {
    m: u32,
    values: Vec<u32>,
}

impl Labeling {
    pub fn new(m: u32, values: Vec<u32>) -> Result<Self> {
        check_modulus(m)?;
        if let Some(&value) = values.iter().find(|&&v| v >= m) {
            return Err(Error::ResidueOutOfRange { value: value as u64, m });
        }
        Ok(Labeling { m, values })
    }

    /// Reduces arbitrary integers into `0..m`.
    pub fn from_ints(m: u32, values: &[i64]) -> Result<Self> {
        check_modulus(m)?;
        let values = values.iter().map(|&v| v.rem_euclid(m as i64) as u32).collect();
        Ok(Labeling { m, values })
    }

    pub fn zero(m: u32, n: usize) -> Result<Self> {
        check_modulus(m)?;
        Ok(Labeling { m, values: vec![0; n] })
    }

    /// Parses comma-separated residues, e.g. `1,1,0`.
    pub fn parse_csv(m: u32, text: &str) -> Result<Self> {
        check_modulus(m)?;
        Ok(Labeling { m, values: parse_residues(m, text)? })
    }

    pub(crate) fn from_raw(m: u32, values: Vec<u32>) -> Self {
        debug_assert!(values.iter().all(|&v| v < m));
        Labeling { m, values }
    }

    pub fn modulus(&self) -> u32 {
        self.m
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub(crate) fn values_mut(&mut self) -> &mut [u32] {
        &mut self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Label of 1-based vertex `v`.
    pub fn get(&self, v: usize) -> Option<u32> {
        v.checked_sub(1).and_then(|i| self.values.get(i).copied())
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    pub fn negated(&self) -> Labeling {
        let m = self.m;
        Labeling {
            m,
            values: self.values.iter().map(|&v| (m - v) % m).collect(),
        }
    }

    /// Base-`m` integer with vertex 1 as the least significant digit.
    pub fn state_index(&self) -> u64 {
        self.values
            .iter()
            .rev()
            .fold(0u64, |acc, &v| acc * self.m as u64 + v as u64)
    }

    /// Inverse of [`Labeling::state_index`].
    pub fn from_state_index(m: u32, n: usize, mut index: u64) -> Result<Self> {
        check_modulus(m)?;
        let mut values = Vec::with_capacity(n);
        for _ in 0..n {
            values.push((index % m as u64) as u32);
            index /= m as u64;
        }
        Ok(Labeling { m, values })
    }

    pub(crate) fn check_len(&self, n: usize) -> Result<()> {
        if self.values.len() == n {
            Ok(())
        } else {
            Err(Error::LengthMismatch { expected: n, got: self.values.len() })
        }
    }
}

impl fmt::Display for Labeling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_csv(f, &self.values)
    }
}

/// How many times (mod `m`) each vertex is toggled in the neighborhood game.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ToggleCounts {
    m: u32,
    counts: Vec<u32>,
}

impl ToggleCounts {
    pub fn new(m: u32, counts: Vec<u32>) -> Result<Self> {
        let lab = Labeling::new(m, counts)?;
        Ok(ToggleCounts { m, counts: lab.values })
    }

    pub fn zero(m: u32, n: usize) -> Result<Self> {
        check_modulus(m)?;
        Ok(ToggleCounts { m, counts: vec![0; n] })
    }

    pub fn parse_csv(m: u32, text: &str) -> Result<Self> {
        check_modulus(m)?;
        Ok(ToggleCounts { m, counts: parse_residues(m, text)? })
    }

    pub(crate) fn from_raw(m: u32, counts: Vec<u32>) -> Self {
        ToggleCounts { m, counts }
    }

    pub fn modulus(&self) -> u32 {
        self.m
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// Expands into an ordered sequence: vertex 1 repeated `c_1` times, then 2, ...
    pub fn to_sequence(&self) -> ToggleSequence {
        ToggleSequence(
            self.counts
                .iter()
                .enumerate()
                .flat_map(|(i, &c)| std::iter::repeat_n(i + 1, c as usize))
                .collect(),
        )
    }
}

impl fmt::Display for ToggleCounts {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_csv(f, &self.counts)
    }
}

/// Ordered list of 1-based vertices to toggle. Order matters in the group
/// game. Serialized space-separated: `1 2 3 1`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ToggleSequence(pub Vec<usize>);

impl ToggleSequence {
    pub fn new() -> Self {
        ToggleSequence(Vec::new())
    }

    pub fn push(&mut self, v: usize) {
        self.0.push(v);
    }

    pub fn extend_from(&mut self, other: &ToggleSequence) {
        self.0.extend_from_slice(&other.0);
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }
}

impl fmt::Display for ToggleSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl FromStr for ToggleSequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.split_whitespace()
            .map(|t| {
                t.parse::<usize>().map_err(|_| Error::Parse {
                    line: 0,
                    msg: format!("`{t}` is not a vertex index"),
                })
            })
            .collect::<Result<Vec<_>>>()
            .map(ToggleSequence)
    }
}

impl From<Vec<usize>> for ToggleSequence {
    fn from(v: Vec<usize>) -> Self {
        ToggleSequence(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn csv_forms() {
        let lab = Labeling::parse_csv(2, "1,1,0").unwrap();
        assert_eq!(lab.values(), &[1, 1, 0]);
        assert_eq!(lab.to_string(), "1,1,0");
        assert!(matches!(
            Labeling::parse_csv(2, "1,2"),
            Err(Error::ResidueOutOfRange { value: 2, m: 2 })
        ));
        assert!(Labeling::parse_csv(3, "1,x").is_err());
        assert!(Labeling::parse_csv(1, "0").is_err());
        assert_eq!(ToggleSequence(vec![1, 2, 3, 1]).to_string(), "1 2 3 1");
        assert_eq!(ToggleSequence::new().to_string(), "");
    }

    #[test]
    fn from_ints_reduces() {
        let lab = Labeling::from_ints(4, &[-1, 5, 8]).unwrap();
        assert_eq!(lab.values(), &[3, 1, 0]);
        assert_eq!(lab.negated().values(), &[1, 3, 0]);
    }

    #[test]
    fn state_index_vertex_one_least_significant() {
        let lab = Labeling::new(3, vec![1, 0, 2]).unwrap();
        assert_eq!(lab.state_index(), 1 + 2 * 9);
    }

    #[test]
    fn counts_expand() {
        let c = ToggleCounts::new(3, vec![2, 0, 1]).unwrap();
        assert_eq!(c.to_sequence().as_slice(), &[1, 1, 3]);
        assert!(ToggleCounts::new(3, vec![3]).is_err());
    }

    proptest! {
        #[test]
        fn state_index_round_trip(m in 2u32..9, values in proptest::collection::vec(0u32..100, 0..7)) {
            let lab = Labeling::from_ints(m, &values.iter().map(|&v| v as i64).collect::<Vec<_>>()).unwrap();
            let back = Labeling::from_state_index(m, lab.len(), lab.state_index()).unwrap();
            prop_assert_eq!(&back, &lab);
            prop_assert_eq!(Labeling::parse_csv(m, &lab.to_string()).unwrap(), lab);
        }

        #[test]
        fn sequence_text_round_trip(seq in proptest::collection::vec(1usize..50, 0..20)) {
            let s = ToggleSequence(seq);
            prop_assert_eq!(s.to_string().parse::<ToggleSequence>().unwrap(), s);
        }
    }
}

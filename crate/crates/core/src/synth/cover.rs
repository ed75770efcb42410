//! Disjoint two-level covers of a coordinate bit-plane.
//!
//! Cascaded controlled-X gates XOR into their target, so two cubes that
//! share a minterm would cancel there. Covers produced here are therefore
//! pairwise disjoint, and the minimization target is the fewest disjoint
//! cubes whose union is exactly the ON-set.

use std::fmt;
use std::fmt::Write as _;

use crate::error::{Error, Result};

/// Exact search is used up to this many variables.
pub const EXACT_MAX_VARS: usize = 8;
const NODE_BUDGET: u64 = 50_000;

/// Product term over `vars` variables: variable `j` is fixed to bit `j` of
/// `value` when bit `j` of `care` is set, otherwise it is a dash.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cube {
    vars: u8,
    care: u32,
    value: u32,
}

impl Cube {
    pub fn new(vars: usize, care: u32, value: u32) -> Self {
        assert!(vars <= 31);
        let mask = (1u32 << vars) - 1;
        assert_eq!(care & !mask, 0, "care bits beyond variable count");
        Self {
            vars: vars as u8,
            care,
            value: value & care,
        }
    }

    pub fn minterm(vars: usize, m: u32) -> Self {
        Self::new(vars, (1u32 << vars) - 1, m)
    }

    pub fn vars(&self) -> usize {
        self.vars as usize
    }

    pub fn care(&self) -> u32 {
        self.care
    }

    pub fn value(&self) -> u32 {
        self.value
    }

    /// `Some(bit)` for a fixed literal, `None` for a dash.
    pub fn literal(&self, j: usize) -> Option<bool> {
        (self.care >> j & 1 == 1).then_some(self.value >> j & 1 == 1)
    }

    pub fn literal_count(&self) -> usize {
        self.care.count_ones() as usize
    }

    pub fn contains(&self, m: u32) -> bool {
        m & self.care == self.value
    }

    pub fn size(&self) -> usize {
        1 << (self.vars() - self.literal_count())
    }

    pub fn minterms(&self) -> impl Iterator<Item = u32> + '_ {
        let free = !self.care & ((1u32 << self.vars) - 1);
        // enumerate subsets of the free mask
        let mut sub = 0u32;
        let mut done = false;
        std::iter::from_fn(move || {
            if done {
                return None;
            }
            let m = self.value | sub;
            sub = sub.wrapping_sub(free) & free;
            if sub == 0 {
                done = true;
            }
            Some(m)
        })
    }

    pub fn intersects(&self, other: &Cube) -> bool {
        let both = self.care & other.care;
        self.value & both == other.value & both
    }

    pub fn parse(s: &str) -> Result<Self> {
        let vars = s.len();
        if vars > 31 {
            return Err(Error::InvalidImage(format!("cube {s:?} too wide")));
        }
        let mut care = 0;
        let mut value = 0;
        for (i, ch) in s.chars().enumerate() {
            let j = vars - 1 - i;
            match ch {
                '0' => care |= 1 << j,
                '1' => {
                    care |= 1 << j;
                    value |= 1 << j;
                }
                '-' => {}
                _ => return Err(Error::InvalidImage(format!("bad cube literal {ch:?}"))),
            }
        }
        Ok(Self::new(vars, care, value))
    }
}

/// MSB first: the leftmost character is variable `vars - 1`.
impl fmt::Display for Cube {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for j in (0..self.vars()).rev() {
            let c = match self.literal(j) {
                Some(true) => '1',
                Some(false) => '0',
                None => '-',
            };
            f.write_char(c)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cover {
    pub vars: usize,
    pub cubes: Vec<Cube>,
    /// False when the exact search ran out of budget or was not attempted.
    pub exact: bool,
}

impl Cover {
    pub fn len(&self) -> usize {
        self.cubes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cubes.is_empty()
    }

    /// Sorted minterms covered, with multiplicity (duplicates mean overlap).
    pub fn covered(&self) -> Vec<u32> {
        let mut v: Vec<u32> = self.cubes.iter().flat_map(|c| c.minterms()).collect();
        v.sort_unstable();
        v
    }

    pub fn is_disjoint(&self) -> bool {
        let v = self.covered();
        v.windows(2).all(|w| w[0] != w[1])
    }

    /// PLA text, one cube per line, single output.
    pub fn to_pla(&self) -> String {
        let mut s = format!(".i {}\n.o 1\n.p {}\n", self.vars, self.cubes.len());
        for c in &self.cubes {
            writeln!(s, "{c} 1").unwrap();
        }
        s.push_str(".e\n");
        s
    }
}

/// Fewest pairwise-disjoint cubes whose union is exactly `on_set`.
///
/// Exact (branch and bound over every implicant cube) for up to
/// [`EXACT_MAX_VARS`] variables, pairwise merging above that.
pub fn minimize_cover(on_set: &[u32], vars: usize) -> Result<Cover> {
    if vars > 24 {
        return Err(Error::InvalidImage(format!("{vars} variables is too many")));
    }
    let universe = 1u32 << vars;
    let mut on: Vec<u32> = on_set.to_vec();
    on.sort_unstable();
    on.dedup();
    if let Some(&m) = on.iter().find(|&&m| m >= universe) {
        return Err(Error::InvalidImage(format!(
            "minterm {m} outside {vars}-variable space"
        )));
    }
    if on.is_empty() {
        return Ok(Cover {
            vars,
            cubes: Vec::new(),
            exact: true,
        });
    }
    let merged = merge_pairs(&on, vars);
    if vars > EXACT_MAX_VARS {
        return Ok(Cover {
            vars,
            cubes: merged,
            exact: false,
        });
    }
    let (cubes, exact) = ExactSearch::new(&on, vars).run(merged);
    Ok(Cover { vars, cubes, exact })
}

/// Repeatedly merges two cubes that differ in exactly one fixed literal.
/// Merged cubes stay disjoint from the rest.
fn merge_pairs(on: &[u32], vars: usize) -> Vec<Cube> {
    let mut cubes: Vec<Cube> = on.iter().map(|&m| Cube::minterm(vars, m)).collect();
    loop {
        cubes.sort();
        let mut merged_any = false;
        let mut used = vec![false; cubes.len()];
        let mut next = Vec::with_capacity(cubes.len());
        for i in 0..cubes.len() {
            if used[i] {
                continue;
            }
            let a = cubes[i];
            let partner = (i + 1..cubes.len()).find(|&j| {
                let b = cubes[j];
                !used[j] && a.care == b.care && (a.value ^ b.value).count_ones() == 1
            });
            match partner {
                Some(j) => {
                    let diff = a.value ^ cubes[j].value;
                    used[j] = true;
                    next.push(Cube::new(vars, a.care & !diff, a.value));
                    merged_any = true;
                }
                None => next.push(a),
            }
        }
        cubes = next;
        if !merged_any {
            return cubes;
        }
    }
}

const WORDS: usize = 4; // 256-bit minterm sets, enough for 8 variables

type Bits = [u64; WORDS];

fn bits_of(minterms: impl Iterator<Item = u32>) -> Bits {
    let mut b = [0u64; WORDS];
    for m in minterms {
        b[(m / 64) as usize] |= 1 << (m % 64);
    }
    b
}

fn overlaps(a: &Bits, b: &Bits) -> bool {
    a.iter().zip(b).any(|(x, y)| x & y != 0)
}

struct ExactSearch {
    cubes: Vec<Cube>,
    masks: Vec<Bits>,
    /// candidate cube indices per minterm, largest cube first
    by_minterm: Vec<Vec<usize>>,
    on: Vec<u32>,
    nodes: u64,
    best: Vec<usize>,
    best_len: usize,
    exhausted: bool,
}

impl ExactSearch {
    fn new(on: &[u32], vars: usize) -> Self {
        let on_bits = bits_of(on.iter().copied());
        let full = (1u32 << vars) - 1;
        let mut cubes = Vec::new();
        // every cube whose minterms all lie in the ON-set
        for care in 0..=full {
            let mut value = care;
            loop {
                let c = Cube::new(vars, care, value);
                if c.minterms().all(|m| on_bits[(m / 64) as usize] >> (m % 64) & 1 == 1) {
                    cubes.push(c);
                }
                if value == 0 {
                    break;
                }
                value = (value - 1) & care;
            }
        }
        cubes.sort_by_key(|c| (std::cmp::Reverse(c.size()), *c));
        let masks: Vec<Bits> = cubes.iter().map(|c| bits_of(c.minterms())).collect();
        let mut by_minterm = vec![Vec::new(); 1usize << vars];
        for (i, c) in cubes.iter().enumerate() {
            for m in c.minterms() {
                by_minterm[m as usize].push(i);
            }
        }
        Self {
            cubes,
            masks,
            by_minterm,
            on: on.to_vec(),
            nodes: 0,
            best: Vec::new(),
            best_len: usize::MAX,
            exhausted: false,
        }
    }

    fn run(mut self, seed: Vec<Cube>) -> (Vec<Cube>, bool) {
        let seed_len = seed.len();
        self.best_len = seed_len;
        let mut chosen = Vec::new();
        self.search(&mut chosen, [0; WORDS], self.on.len());
        if self.best.is_empty() {
            // nothing beat the heuristic seed
            (seed, !self.exhausted)
        } else {
            let cubes = self.best.iter().map(|&i| self.cubes[i]).collect();
            (cubes, !self.exhausted)
        }
    }

    fn search(&mut self, chosen: &mut Vec<usize>, covered: Bits, remaining: usize) {
        if remaining == 0 {
            if chosen.len() < self.best_len {
                self.best_len = chosen.len();
                self.best = chosen.clone();
            }
            return;
        }
        self.nodes += 1;
        if self.nodes > NODE_BUDGET {
            self.exhausted = true;
            return;
        }
        // branch on the uncovered minterm with the fewest usable cubes
        let mut pick: Option<(usize, Vec<usize>)> = None;
        let mut largest = 0;
        for &m in &self.on {
            if covered[(m / 64) as usize] >> (m % 64) & 1 == 1 {
                continue;
            }
            let usable: Vec<usize> = self.by_minterm[m as usize]
                .iter()
                .copied()
                .filter(|&i| !overlaps(&self.masks[i], &covered))
                .collect();
            if usable.is_empty() {
                return;
            }
            largest = largest.max(self.cubes[usable[0]].size());
            if pick.as_ref().is_none_or(|(_, u)| usable.len() < u.len()) {
                pick = Some((m as usize, usable));
            }
        }
        let lower = remaining.div_ceil(largest);
        if chosen.len() + lower >= self.best_len {
            return;
        }
        let (_, usable) = pick.expect("remaining > 0");
        for i in usable {
            let mut next = covered;
            for (w, m) in next.iter_mut().zip(&self.masks[i]) {
                *w |= m;
            }
            chosen.push(i);
            let size = self.cubes[i].size();
            self.search(chosen, next, remaining - size);
            chosen.pop();
            if self.exhausted {
                return;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cover(on: &[u32], vars: usize) -> Vec<String> {
        let c = minimize_cover(on, vars).unwrap();
        let mut v: Vec<String> = c.cubes.iter().map(|c| c.to_string()).collect();
        v.sort();
        v
    }

    #[test]
    fn tautology() {
        assert_eq!(cover(&[0, 1, 2, 3], 2), vec!["--"]);
    }

    #[test]
    fn bit_plane_seven_of_test_image() {
        // minterms over (Y, X): 00 and 10
        assert_eq!(cover(&[0b00, 0b10], 2), vec!["-0"]);
    }

    #[test]
    fn diagonal_cannot_merge() {
        assert_eq!(cover(&[0b00, 0b11], 2), vec!["00", "11"]);
    }

    #[test]
    fn empty_on_set() {
        assert!(minimize_cover(&[], 4).unwrap().is_empty());
    }

    #[test]
    fn out_of_range_minterm() {
        assert!(minimize_cover(&[4], 2).is_err());
    }

    #[test]
    fn cube_parse_display_roundtrip() {
        for s in ["-0", "1-0-", "0000", "----"] {
            assert_eq!(Cube::parse(s).unwrap().to_string(), s);
        }
        assert!(Cube::parse("01x").is_err());
    }

    #[test]
    fn minterm_enumeration() {
        let c = Cube::parse("1-0-").unwrap();
        let mut m: Vec<u32> = c.minterms().collect();
        m.sort();
        assert_eq!(m, vec![0b1000, 0b1001, 0b1100, 0b1101]);
        assert_eq!(c.size(), 4);
    }

    #[test]
    fn pla_dump() {
        let c = minimize_cover(&[0b00, 0b10], 2).unwrap();
        assert_eq!(c.to_pla(), ".i 2\n.o 1\n.p 1\n-0 1\n.e\n");
    }

    fn all_cubes(vars: usize) -> Vec<Cube> {
        let full = (1u32 << vars) - 1;
        let mut v = Vec::new();
        for care in 0..=full {
            for value in 0..=full {
                if value & !care == 0 {
                    v.push(Cube::new(vars, care, value));
                }
            }
        }
        v
    }

    // Independent oracle: smallest k such that some k-subset of implicants
    // partitions the ON-set, by plain enumeration.
    fn brute_force_min(on: &[u32], vars: usize) -> usize {
        let implicants: Vec<Cube> = all_cubes(vars)
            .into_iter()
            .filter(|c| c.minterms().all(|m| on.contains(&m)))
            .collect();
        fn partitions(cands: &[Cube], start: usize, left: &mut Vec<u32>, k: usize) -> bool {
            if left.is_empty() {
                return true;
            }
            if k == 0 {
                return false;
            }
            for i in start..cands.len() {
                let ms: Vec<u32> = cands[i].minterms().collect();
                if ms.iter().all(|m| left.contains(m)) {
                    let saved = left.clone();
                    left.retain(|m| !ms.contains(m));
                    if partitions(cands, i + 1, left, k - 1) {
                        return true;
                    }
                    *left = saved;
                }
            }
            false
        }
        (0..=on.len())
            .find(|&k| partitions(&implicants, 0, &mut on.to_vec(), k))
            .unwrap()
    }

    #[test]
    fn exact_against_enumeration_three_vars() {
        for set in 0u32..256 {
            let on: Vec<u32> = (0..8).filter(|m| set >> m & 1 == 1).collect();
            let c = minimize_cover(&on, 3).unwrap();
            assert!(c.exact);
            assert!(c.is_disjoint());
            assert_eq!(c.covered(), on, "set {set:08b}");
            assert_eq!(c.len(), brute_force_min(&on, 3), "set {set:08b}");
        }
    }

    #[test]
    fn exact_against_enumeration_four_vars_sampled() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..60 {
            let set: u32 = rng.gen_range(0..1 << 16);
            let on: Vec<u32> = (0..16).filter(|m| set >> m & 1 == 1).collect();
            let c = minimize_cover(&on, 4).unwrap();
            assert_eq!(c.covered(), on);
            assert_eq!(c.len(), brute_force_min(&on, 4), "set {set:016b}");
        }
    }

    #[test]
    fn eight_variable_random_plane_terminates() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        let on: Vec<u32> = (0..256).filter(|_| rng.gen_bool(0.5)).collect();
        let c = minimize_cover(&on, 8).unwrap();
        assert!(c.is_disjoint());
        assert_eq!(c.covered(), on);
    }

    #[test]
    fn heuristic_above_exact_limit() {
        let on: Vec<u32> = (0..1024).filter(|m| m % 3 != 0).collect();
        let c = minimize_cover(&on, 10).unwrap();
        assert!(!c.exact);
        assert!(c.is_disjoint());
        assert_eq!(c.covered(), on);
        assert!(c.len() <= on.len());
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(48))]
        #[test]
        fn covers_are_disjoint_and_exact(set in proptest::collection::btree_set(0u32..64, 0..64)) {
            let on: Vec<u32> = set.into_iter().collect();
            let c = minimize_cover(&on, 6).unwrap();
            proptest::prop_assert!(c.is_disjoint());
            proptest::prop_assert_eq!(c.covered(), on.clone());
            proptest::prop_assert!(c.len() <= on.len());
        }
    }
}

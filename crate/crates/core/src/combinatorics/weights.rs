//! Weight vectors, the admissible-transposition equivalence, and the
//! membership tests for the sets of weights that occur.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use serde::Serialize;

use super::CombinatoricsError;

/// Characteristic of the ground field: 0 or an odd prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Characteristic(u32);

impl Characteristic {
    pub const ZERO: Characteristic = Characteristic(0);

    pub fn new(p: u32) -> Result<Self, CombinatoricsError> {
        let prime = p >= 3 && (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0);
        if p == 0 || prime {
            Ok(Characteristic(p))
        } else {
            Err(CombinatoricsError::BadCharacteristic(p))
        }
    }

    pub fn get(self) -> u32 {
        self.0
    }

    /// Largest index, `(p-1)/2`, or `None` in characteristic 0.
    pub fn index_max(self) -> Option<u32> {
        (self.0 > 0).then(|| (self.0 - 1) / 2)
    }

    pub fn contains(self, i: u32) -> bool {
        self.index_max().is_none_or(|h| i <= h)
    }

    /// `q(i) = i(i+1)`, reduced mod p when p > 0.
    pub fn q(self, i: u32) -> u64 {
        let v = i as u64 * (i as u64 + 1);
        if self.0 == 0 {
            v
        } else {
            v % self.0 as u64
        }
    }
}

impl fmt::Display for Characteristic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A weight `(i_1, …, i_n)` with entries in the index set of `p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight {
    entries: Vec<u32>,
    p: Characteristic,
}

impl Serialize for Weight {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.entries.serialize(s)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Which membership condition a weight fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// `i_k = i_{k+1}`.
    AdjacentEqual { k: usize },
    /// `(p-1)/2` occurs more than once.
    RepeatedTop { value: u32 },
    /// `i_k = i_l = 0` with no 1 strictly between.
    ZerosNotSeparated { k: usize, l: usize },
    /// `i_k = i_l = u ≥ 1` without the required entries strictly between.
    RepeatNotSeparated { k: usize, l: usize, value: u32 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::AdjacentEqual { k } => {
                write!(f, "adjacent entries must differ, but i_{k} = i_{}", k + 1)
            }
            Violation::RepeatedTop { value } => write!(f, "the top index {value} may occur at most once"),
            Violation::ZerosNotSeparated { k, l } => {
                write!(f, "i_{k} = i_{l} = 0 requires a 1 strictly between them")
            }
            Violation::RepeatNotSeparated { k, l, value } => write!(
                f,
                "i_{k} = i_{l} = {value} requires {} and {} strictly between them (or the characteristic-p chain)",
                value - 1,
                value + 1
            ),
        }
    }
}

/// Member of an equivalence class, with a permutation `τ` such that
/// `weight = τ · root` and a word of simple transpositions giving `τ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassMember {
    pub weight: Weight,
    /// One-line notation `[τ(1), …, τ(n)]`, 1-based.
    pub tau: Vec<usize>,
    /// `τ = s_{word[last]} ⋯ s_{word[0]}`, each step admissible.
    pub word: Vec<usize>,
}

impl Weight {
    pub fn new(entries: Vec<u32>, p: Characteristic) -> Result<Self, CombinatoricsError> {
        if let Some(bad) = entries.iter().find(|i| !p.contains(**i)) {
            return Err(CombinatoricsError::IndexOutOfRange { index: *bad, p: p.get() });
        }
        Ok(Weight { entries, p })
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn p(&self) -> Characteristic {
        self.p
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// 1-based access.
    pub fn at(&self, k: usize) -> u32 {
        self.entries[k - 1]
    }

    /// `s_k` is admissible for this weight iff `i_k ≠ i_{k+1} ± 1` (1-based `k`).
    pub fn admissible(&self, k: usize) -> bool {
        let (a, b) = (self.at(k), self.at(k + 1));
        a.abs_diff(b) != 1
    }

    /// `s_k · w`: swap entries `k` and `k+1` (1-based).
    pub fn swapped(&self, k: usize) -> Weight {
        let mut e = self.entries.clone();
        e.swap(k - 1, k);
        Weight { entries: e, p: self.p }
    }

    /// Number of entries equal to 0.
    pub fn zero_count(&self) -> usize {
        self.entries.iter().filter(|i| **i == 0).count()
    }

    /// First failed membership condition for the set of weights of completely
    /// splittable modules, or `None` if the weight belongs to it.
    pub fn wprime_violation(&self) -> Option<Violation> {
        let e = &self.entries;
        let n = e.len();
        if let Some(k) = (1..n).find(|k| e[k - 1] == e[*k]) {
            return Some(Violation::AdjacentEqual { k });
        }
        if let Some(h) = self.p.index_max() {
            if e.iter().filter(|i| **i == h).count() > 1 {
                return Some(Violation::RepeatedTop { value: h });
            }
        }
        for k in 0..n {
            for l in k + 1..n {
                if e[k] != e[l] {
                    continue;
                }
                let u = e[k];
                let mid = &e[k + 1..l];
                if u == 0 {
                    if !mid.contains(&1) {
                        return Some(Violation::ZerosNotSeparated { k: k + 1, l: l + 1 });
                    }
                    continue;
                }
                let neighbours = mid.contains(&(u - 1)) && mid.contains(&(u + 1));
                let ok = match self.p.index_max() {
                    None => neighbours,
                    Some(h) => neighbours || (u < h && chain_between(e, k, l, u, h)),
                };
                if !ok {
                    return Some(Violation::RepeatNotSeparated { k: k + 1, l: l + 1, value: u });
                }
            }
        }
        None
    }

    pub fn in_wprime(&self) -> bool {
        self.wprime_violation().is_none()
    }

    /// Membership in the weight set of the finite superalgebra: in W′, first
    /// entry 0, and every later entry has a neighbour value earlier on.
    pub fn in_wyn(&self) -> bool {
        let e = &self.entries;
        if e.first() != Some(&0) || !self.in_wprime() {
            return false;
        }
        (1..e.len()).all(|k| {
            let prev = &e[..k];
            prev.contains(&(e[k] + 1)) || (e[k] > 0 && prev.contains(&(e[k] - 1)))
        })
    }

    /// All weights reachable by admissible transpositions, sorted, with the
    /// permutation carrying `self` to each.
    pub fn class(&self) -> Vec<ClassMember> {
        let n = self.len();
        let mut seen: BTreeMap<Vec<u32>, (Vec<usize>, Vec<usize>)> = BTreeMap::new();
        seen.insert(self.entries.clone(), ((1..=n).collect(), Vec::new()));
        let mut queue = VecDeque::from([self.entries.clone()]);
        while let Some(cur) = queue.pop_front() {
            let (tau, word) = seen[&cur].clone();
            let w = Weight { entries: cur, p: self.p };
            for k in 1..n {
                if !w.admissible(k) {
                    continue;
                }
                let next = w.swapped(k);
                if seen.contains_key(&next.entries) {
                    continue;
                }
                // (s_k ∘ τ): swap the values k and k+1 in the one-line form.
                let tau2: Vec<usize> = tau
                    .iter()
                    .map(|v| match *v {
                        v if v == k => k + 1,
                        v if v == k + 1 => k,
                        v => v,
                    })
                    .collect();
                let mut word2 = word.clone();
                word2.push(k);
                seen.insert(next.entries.clone(), (tau2, word2));
                queue.push_back(next.entries);
            }
        }
        seen.into_iter()
            .map(|(entries, (tau, word))| ClassMember { weight: Weight { entries, p: self.p }, tau, word })
            .collect()
    }

    /// The lexicographically least member of the class.
    pub fn class_representative(&self) -> Weight {
        self.class().into_iter().next().expect("a class contains its root").weight
    }
}

/// `(τ · i)_k = i_{τ⁻¹(k)}`.
pub fn act(tau: &[usize], entries: &[u32]) -> Vec<u32> {
    let mut out = vec![0; entries.len()];
    for (m, t) in tau.iter().enumerate() {
        out[t - 1] = entries[m];
    }
    out
}

/// Search for the characteristic-p chain `r_0 < … < r_m < q < t_m < … < t_0`
/// inside positions `[k, l]`: values `u+j` at `r_j, t_j` with `u+j` absent
/// strictly between them, and the top value `h` at `q`.
fn chain_between(e: &[u32], k: usize, l: usize, u: u32, h: u32) -> bool {
    fn inner(e: &[u32], lo: usize, hi: usize, v: u32, h: u32) -> bool {
        if lo > hi {
            return false;
        }
        if v == h {
            return e[lo..=hi].contains(&h);
        }
        let pos: Vec<usize> = (lo..=hi).filter(|a| e[*a] == v).collect();
        // "v absent strictly between r and t" means t is the next occurrence after r.
        pos.windows(2).any(|w| w[1] > w[0] + 1 && inner(e, w[0] + 1, w[1] - 1, v + 1, h))
    }
    inner(e, k, l, u, h)
}

/// A vector of nonnegative integers is splittable when repeated entries are
/// separated by their neighbours: a 1 between two 0s, and both `u-1` and
/// `u+1` between two `u ≥ 1`.
pub fn is_splittable(e: &[u32]) -> bool {
    for k in 0..e.len() {
        for l in k + 1..e.len() {
            if e[k] != e[l] {
                continue;
            }
            let mid = &e[k + 1..l];
            let u = e[k];
            let ok = if u == 0 { mid.contains(&1) } else { mid.contains(&(u - 1)) && mid.contains(&(u + 1)) };
            if !ok {
                return false;
            }
        }
    }
    true
}

/// Every vector in `{0..=max}^n` with distinct adjacent entries, in
/// lexicographic order.
pub fn vectors_with_distinct_neighbours(n: usize, max: u32) -> Vec<Vec<u32>> {
    fn rec(n: usize, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for v in 0..=max {
            if cur.last() == Some(&v) {
                continue;
            }
            cur.push(v);
            rec(n, max, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, max, &mut Vec::with_capacity(n), &mut out);
    out
}

/// All weights of length `n` in W′; in characteristic 0 the entries are
/// bounded by `max_content`.
pub fn enumerate_wprime(n: usize, p: Characteristic, max_content: u32) -> Vec<Weight> {
    let max = p.index_max().unwrap_or(max_content);
    vectors_with_distinct_neighbours(n, max)
        .into_iter()
        .map(|e| Weight { entries: e, p })
        .filter(Weight::in_wprime)
        .collect()
}

/// Partition a set of weights into classes, each represented by its least member.
pub fn classes_of(weights: &[Weight]) -> Vec<Vec<Weight>> {
    let mut done = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for w in weights {
        if done.contains(w) {
            continue;
        }
        let class: Vec<Weight> = w.class().into_iter().map(|m| m.weight).collect();
        done.extend(class.iter().cloned());
        out.push(class);
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(e: &[u32], p: u32) -> Weight {
        Weight::new(e.to_vec(), Characteristic::new(p).unwrap()).unwrap()
    }

    #[test]
    fn wprime_examples() {
        assert!(w(&[0, 1, 0], 0).in_wprime());
        assert!(!w(&[1, 0, 1], 0).in_wprime());
        assert!(w(&[1, 2, 1], 5).in_wprime());
        assert!(!w(&[2, 1, 0, 1, 2], 5).in_wprime());
        assert!(!w(&[0, 0], 0).in_wprime());
    }

    #[test]
    fn violations_name_the_condition() {
        assert_eq!(w(&[0, 0], 0).wprime_violation(), Some(Violation::AdjacentEqual { k: 1 }));
        assert_eq!(w(&[2, 1, 2], 5).wprime_violation(), Some(Violation::RepeatedTop { value: 2 }));
        assert_eq!(w(&[0, 2, 0], 0).wprime_violation(), Some(Violation::ZerosNotSeparated { k: 1, l: 3 }));
    }

    #[test]
    fn index_range_is_enforced() {
        assert!(Weight::new(vec![3], Characteristic::new(5).unwrap()).is_err());
        assert!(Characteristic::new(9).is_err());
        assert!(Characteristic::new(2).is_err());
    }

    #[test]
    fn classes() {
        let c: Vec<Vec<u32>> = w(&[0, 2], 0).class().into_iter().map(|m| m.weight.entries).collect();
        assert_eq!(c, vec![vec![0, 2], vec![2, 0]]);
        assert_eq!(w(&[0, 1], 0).class().len(), 1);
        assert_eq!(w(&[0, 1, 0], 0).class().len(), 1);
    }

    #[test]
    fn class_permutations_carry_root_to_member() {
        let root = w(&[0, 2, 4, 1], 0);
        for m in root.class() {
            assert_eq!(act(&m.tau, root.entries()), m.weight.entries);
            let mut cur = root.clone();
            for k in &m.word {
                assert!(cur.admissible(*k));
                cur = cur.swapped(*k);
            }
            assert_eq!(cur, m.weight);
        }
    }

    #[test]
    fn finite_weights() {
        assert!(w(&[0, 1, 2], 0).in_wyn());
        assert!(!w(&[0, 2], 0).in_wyn());
        assert!(!w(&[1, 0], 0).in_wyn());
    }

    #[test]
    fn splittable_agrees_with_wprime_in_char_zero() {
        for e in vectors_with_distinct_neighbours(5, 4) {
            assert_eq!(is_splittable(&e), w(&e, 0).in_wprime(), "{e:?}");
        }
    }
}

//! Equivalence classes: closure under valid flips, and exhaustive oracles.
//!
//! Two patterns are equivalent when some permutation of the levels carries one
//! edge diagram onto the other. The production path never searches level
//! permutations; it closes a pattern under flips of valid intervals, which
//! the exhaustive searches here confirm for small `n`.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::thread;

use serde::{Deserialize, Serialize};

use crate::diagram::{
    edge_diagram, flip_interval, image_edges, proper_level_actions, valid_intervals, Interval,
};
use crate::limits::{self, MAX_ENUMERATE_N, MAX_EXHAUSTIVE_N};
use crate::perm::{all_permutations, factorial, Permutation};
use crate::{Error, Result};

/// A nonempty equivalence class with members in lexicographic order.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct EquivalenceClass {
    members: Vec<Permutation>,
}

#[allow(clippy::len_without_is_empty)]
impl EquivalenceClass {
    pub fn new(members: impl IntoIterator<Item = Permutation>) -> Result<Self> {
        let set: BTreeSet<Permutation> = members.into_iter().collect();
        let members: Vec<Permutation> = set.into_iter().collect();
        match members.first() {
            None => Err(Error::Empty),
            Some(first) if members.iter().any(|m| m.len() != first.len()) => {
                Err(Error::LengthMismatch {
                    expected: first.len(),
                    actual: members
                        .iter()
                        .find(|m| m.len() != first.len())
                        .unwrap()
                        .len(),
                })
            }
            Some(_) => Ok(EquivalenceClass { members }),
        }
    }

    /// The lexicographically least member.
    pub fn representative(&self) -> &Permutation {
        &self.members[0]
    }

    pub fn members(&self) -> &[Permutation] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, pi: &Permutation) -> bool {
        self.members.binary_search(pi).is_ok()
    }
}

impl fmt::Display for EquivalenceClass {
    /// `representative<TAB>size<TAB>members`, members separated by spaces.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let members: Vec<String> = self.members.iter().map(Permutation::to_string).collect();
        write!(
            f,
            "{}\t{}\t{}",
            self.representative(),
            self.len(),
            members.join(" ")
        )
    }
}

/// Flips that can change `pi`: width-one flips act trivially.
fn flip_neighbours(pi: &Permutation) -> impl Iterator<Item = (Interval, Permutation)> + '_ {
    valid_intervals(pi)
        .into_iter()
        .filter(|v| v.width() >= 2)
        .map(move |v| (v, flip_interval(pi, v).expect("listed intervals are valid")))
}

/// The class of `pi`, by breadth-first closure under valid flips.
pub fn class_of(pi: &Permutation) -> EquivalenceClass {
    let mut seen: BTreeSet<Permutation> = BTreeSet::from([pi.clone()]);
    let mut queue = VecDeque::from([pi.clone()]);
    while let Some(rho) = queue.pop_front() {
        for (_, next) in flip_neighbours(&rho) {
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    EquivalenceClass {
        members: seen.into_iter().collect(),
    }
}

/// Searches all level permutations for one whose image of the diagram of `pi`
/// is exactly the diagram of `tau`.
///
/// For `n = 1` there are no levels; equal patterns are then reported with the
/// length-one identity as a stand-in witness.
pub fn equivalence_oracle(pi: &Permutation, tau: &Permutation) -> Result<Option<Permutation>> {
    if pi.len() != tau.len() {
        return Err(Error::LengthMismatch {
            expected: pi.len(),
            actual: tau.len(),
        });
    }
    limits::check("permutation", pi.len(), MAX_EXHAUSTIVE_N)?;
    let n = pi.len();
    if n == 1 {
        return Ok(Some(Permutation::identity(1)));
    }
    let e = edge_diagram(pi);
    let target = edge_diagram(tau).edge_set();
    for sigma in all_permutations(n - 1) {
        if let Some(mut edges) = image_edges(&e, &sigma)? {
            edges.sort_unstable();
            if edges == target {
                return Ok(Some(sigma));
            }
        }
    }
    Ok(None)
}

/// The class of `pi` as the set of proper images under all level permutations.
pub fn oracle_class(pi: &Permutation) -> Result<EquivalenceClass> {
    if pi.len() == 1 {
        return EquivalenceClass::new([pi.clone()]);
    }
    EquivalenceClass::new(proper_level_actions(pi)?.into_iter().map(|(_, tau)| tau))
}

/// Partitions `S_n` into classes, ordered by representative.
pub fn enumerate_classes(n: usize) -> Result<Vec<EquivalenceClass>> {
    limits::check("pattern length", n, MAX_ENUMERATE_N)?;
    if n == 0 {
        return Err(Error::Empty);
    }
    let mut visited = vec![false; factorial(n) as usize];
    let mut out = Vec::new();
    for pi in all_permutations(n) {
        if visited[pi.rank() as usize] {
            continue;
        }
        let class = class_of(&pi);
        for m in class.members() {
            visited[m.rank() as usize] = true;
        }
        out.push(class);
    }
    Ok(out)
}

/// Same result as [`enumerate_classes`], computed on `workers` threads.
///
/// Each worker takes a contiguous range of ranks and keeps the classes whose
/// least member lies in its range, so no state is shared between workers.
pub fn enumerate_classes_parallel(n: usize, workers: usize) -> Result<Vec<EquivalenceClass>> {
    limits::check("pattern length", n, MAX_ENUMERATE_N)?;
    if n == 0 {
        return Err(Error::Empty);
    }
    let total = factorial(n);
    let workers = workers.clamp(1, total as usize) as u64;
    let chunk = total.div_ceil(workers);
    let mut out: Vec<EquivalenceClass> = thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                scope.spawn(move || {
                    let mut found = Vec::new();
                    let mut covered = std::collections::HashSet::new();
                    for rank in w * chunk..((w + 1) * chunk).min(total) {
                        let pi = Permutation::unrank(n, rank);
                        if covered.contains(&pi) {
                            continue;
                        }
                        let class = class_of(&pi);
                        covered.extend(class.members().iter().cloned());
                        if class.representative() == &pi {
                            found.push(class);
                        }
                    }
                    found
                })
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("enumeration worker panicked"))
            .collect()
    });
    out.sort_by(|a, b| a.representative().cmp(b.representative()));
    Ok(out)
}

/// Partition of `S_n` from [`oracle_class`], for cross-checking.
pub fn enumerate_classes_oracle(n: usize) -> Result<Vec<EquivalenceClass>> {
    limits::check("pattern length", n, MAX_EXHAUSTIVE_N)?;
    let mut done = BTreeSet::new();
    let mut out = Vec::new();
    for pi in all_permutations(n) {
        if done.contains(&pi) {
            continue;
        }
        let class = oracle_class(&pi)?;
        done.extend(class.members().iter().cloned());
        out.push(class);
    }
    Ok(out)
}

/// A sequence of valid flips from `start`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct FlipWitness {
    pub start: Permutation,
    /// Each flipped interval with the permutation it produced.
    pub steps: Vec<(Interval, Permutation)>,
}

impl FlipWitness {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Re-applies every flip, checking validity and the recorded results.
    pub fn replay(&self) -> Result<Permutation> {
        let mut cur = self.start.clone();
        for (v, expected) in &self.steps {
            let next = flip_interval(&cur, *v)?;
            if &next != expected {
                return Err(Error::Internal(format!(
                    "flipping {v} in {cur} gives {next}, witness says {expected}"
                )));
            }
            cur = next;
        }
        Ok(cur)
    }
}

impl fmt::Display for FlipWitness {
    /// `start`, then one `--[i,j]--> result` line per flip.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.start)?;
        for (v, p) in &self.steps {
            writeln!(f, "  --{v}--> {p}")?;
        }
        Ok(())
    }
}

/// A shortest sequence of valid flips from `pi` to `tau`, if one exists.
pub fn flip_witness(pi: &Permutation, tau: &Permutation) -> Result<Option<FlipWitness>> {
    if pi.len() != tau.len() {
        return Err(Error::LengthMismatch {
            expected: pi.len(),
            actual: tau.len(),
        });
    }
    let mut parent: HashMap<Permutation, Option<(Permutation, Interval)>> =
        HashMap::from([(pi.clone(), None)]);
    let mut queue = VecDeque::from([pi.clone()]);
    while let Some(rho) = queue.pop_front() {
        if &rho == tau {
            let mut steps = Vec::new();
            let mut cur = rho;
            while let Some(Some((prev, v))) = parent.get(&cur) {
                steps.push((*v, cur.clone()));
                cur = prev.clone();
            }
            steps.reverse();
            return Ok(Some(FlipWitness {
                start: pi.clone(),
                steps,
            }));
        }
        for (v, next) in flip_neighbours(&rho) {
            if !parent.contains_key(&next) {
                parent.insert(next.clone(), Some((rho.clone(), v)));
                queue.push_back(next);
            }
        }
    }
    Ok(None)
}

/// One line per class, `representative<TAB>size<TAB>members`.
pub fn class_table(classes: &[EquivalenceClass]) -> String {
    classes.iter().map(|c| format!("{c}\n")).collect()
}

/// The classes as nested lists of member strings.
pub fn class_lists(classes: &[EquivalenceClass]) -> Vec<Vec<String>> {
    classes
        .iter()
        .map(|c| c.members().iter().map(Permutation::to_string).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::matrix_equivalence_witness;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn class(items: &[&str]) -> EquivalenceClass {
        EquivalenceClass::new(items.iter().map(|s| p(s))).unwrap()
    }

    #[test]
    fn small_classes() {
        assert_eq!(class_of(&p("132")), class(&["132", "213"]));
        assert_eq!(class_of(&p("123")), class(&["123"]));
        assert_eq!(class_of(&p("1")), class(&["1"]));
        assert_eq!(
            enumerate_classes(3).unwrap(),
            vec![
                class(&["123"]),
                class(&["132", "213"]),
                class(&["231", "312"]),
                class(&["321"]),
            ]
        );
        assert_eq!(enumerate_classes(1).unwrap(), vec![class(&["1"])]);
    }

    #[test]
    fn classes_are_rc_closed() {
        for pi in all_permutations(5) {
            let c = class_of(&pi);
            assert!(c.contains(&pi.reverse_complement()));
            assert_eq!(c, class_of(&pi.reverse_complement()));
        }
    }

    #[test]
    fn oracle_examples() {
        let (pi, tau) = (p("54621873"), p("73218465"));
        let found = equivalence_oracle(&pi, &tau).unwrap().unwrap();
        let e = edge_diagram(&pi);
        for sigma in [found, p("2365471")] {
            let mut image = image_edges(&e, &sigma).unwrap().unwrap();
            image.sort();
            assert_eq!(image, edge_diagram(&tau).edge_set(), "{sigma}");
        }
        assert_eq!(
            equivalence_oracle(&p("2413"), &p("2413")).unwrap(),
            Some(Permutation::identity(3))
        );
        assert_eq!(equivalence_oracle(&p("132"), &p("231")).unwrap(), None);
        assert!(matches!(
            equivalence_oracle(&p("12"), &p("123")),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn three_methods_agree_up_to_five() {
        for n in 1..=5 {
            let bfs = enumerate_classes(n).unwrap();
            assert_eq!(bfs, enumerate_classes_oracle(n).unwrap(), "n = {n}");
            let covered: usize = bfs.iter().map(EquivalenceClass::len).sum();
            assert_eq!(covered as u64, factorial(n));
            for c in &bfs {
                for pi in all_permutations(n) {
                    let same = c.contains(&pi);
                    let rep = c.representative();
                    assert_eq!(equivalence_oracle(rep, &pi).unwrap().is_some(), same);
                    assert_eq!(
                        matrix_equivalence_witness(rep, &pi).unwrap().is_some(),
                        same
                    );
                }
            }
        }
    }

    #[test]
    fn parallel_enumeration_matches() {
        for n in 1..=6 {
            let serial = enumerate_classes(n).unwrap();
            for workers in [1, 3, 8] {
                assert_eq!(enumerate_classes_parallel(n, workers).unwrap(), serial);
            }
        }
        assert!(matches!(
            enumerate_classes(9),
            Err(Error::SizeTooLarge { .. })
        ));
    }

    #[test]
    fn witnesses_replay() {
        let w = flip_witness(&p("5712634"), &p("5637124")).unwrap().unwrap();
        assert!(!w.is_empty());
        assert_eq!(w.replay().unwrap(), p("5637124"));
        let w = flip_witness(&p("132"), &p("132")).unwrap().unwrap();
        assert!(w.is_empty());
        assert_eq!(flip_witness(&p("132"), &p("231")).unwrap(), None);
        for c in enumerate_classes(5).unwrap() {
            for m in c.members() {
                let w = flip_witness(c.representative(), m).unwrap().unwrap();
                assert_eq!(&w.replay().unwrap(), m);
            }
        }
    }

    #[test]
    fn table_output() {
        let classes = enumerate_classes(3).unwrap();
        assert_eq!(
            class_table(&classes),
            "123\t1\t123\n132\t2\t132 213\n231\t2\t231 312\n321\t1\t321\n"
        );
        assert_eq!(class_lists(&classes)[1], vec!["132", "213"]);
    }
}

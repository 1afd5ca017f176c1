//! The extension engine. Starting from a seed isomorphism of the backbone
//! class, it grows the map level by level: a candidate's image must have
//! exactly the images of the candidate's covers as its shadow, which pins the
//! image down or proves the candidate is excluded. The done state holds the
//! largest class the seed is an isomorphism on, together with that class's
//! basis. A group variant runs every element of a seed group at once and
//! keeps the largest class all of them preserve.

use std::collections::{BTreeMap, HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::classes::CountSequence;
use crate::error::Error;
use crate::perm::{Permutation, ShadowSet};
use crate::seeds::{SeedBijection, SeedGroup};

/// How the engine classifies one candidate.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ExtensionOutcome {
    /// The candidate joins the class with this image.
    Mapped(Permutation),
    /// Every cover is mapped but no permutation has the required shadow: the
    /// candidate is a minimal excluded element.
    Basis,
    /// Some cover is already excluded; the candidate is excluded but not
    /// minimal.
    Blocked,
}

/// All permutations whose shadow equals `target`, found among the one-point
/// extensions of one of its elements.
pub(crate) fn candidates_with_shadow(target: &ShadowSet) -> Vec<Permutation> {
    target.elements()[0]
        .one_point_extensions()
        .into_iter()
        .filter(|y| y.shadow().expect("extensions have length at least two") == *target)
        .collect()
}

/// The permutation whose shadow is `target`, if one exists. Rejects targets
/// shorter than five, where a shadow can have several preimages.
pub fn invert_shadow(target: &ShadowSet) -> Result<Option<Permutation>, Error> {
    let length = target.target_length();
    if length < 5 {
        return Err(Error::InvertTargetTooShort { target: length });
    }
    let mut found = candidates_with_shadow(target);
    assert!(
        found.len() <= 1,
        "distinct permutations of length {length} share a shadow"
    );
    Ok(found.pop())
}

/// A seed isomorphism extended over finitely many levels of the largest
/// class it embeds in.
#[derive(Clone, Debug)]
pub struct PartialIsomorphism {
    seed: SeedBijection,
    map: HashMap<Permutation, Permutation>,
    levels: Vec<Vec<Permutation>>,
    basis: Vec<Permutation>,
}

impl PartialIsomorphism {
    /// The seed's own pairs plus the point, with two levels materialized.
    pub fn new(seed: &SeedBijection) -> PartialIsomorphism {
        let one = Permutation::increasing(1).unwrap();
        let mut map: HashMap<Permutation, Permutation> = seed.to_pairs().into_iter().collect();
        map.insert(one.clone(), one.clone());
        let levels = vec![vec![one], vec!["12".parse().unwrap(), "21".parse().unwrap()]];
        PartialIsomorphism { seed: *seed, map, levels, basis: Vec::new() }
    }

    pub fn seed(&self) -> &SeedBijection {
        &self.seed
    }

    /// Largest length whose level is built.
    pub fn frontier(&self) -> usize {
        self.levels.len()
    }

    pub fn level(&self, length: usize) -> Result<&[Permutation], Error> {
        assert!(length >= 1, "permutations have length at least 1");
        self.levels
            .get(length - 1)
            .map(Vec::as_slice)
            .ok_or(Error::LevelsNotMaterialized { need: length, have: self.levels.len() })
    }

    pub fn image_of(&self, p: &Permutation) -> Option<&Permutation> {
        self.map.get(p)
    }

    /// Basis elements discovered so far, in order of length then word.
    pub fn basis(&self) -> &[Permutation] {
        &self.basis
    }

    pub fn counts(&self) -> CountSequence {
        CountSequence {
            counts: self.levels.iter().enumerate().map(|(i, l)| (i + 1, l.len() as u64)).collect(),
        }
    }

    /// The members of one level paired with their images.
    pub fn pairs_at(&self, length: usize) -> Result<Vec<(Permutation, Permutation)>, Error> {
        Ok(self
            .level(length)?
            .iter()
            .map(|m| (m.clone(), self.map[m].clone()))
            .collect())
    }

    /// Classifies a candidate one longer than the frontier.
    pub fn decide(&self, candidate: &Permutation) -> ExtensionOutcome {
        if let Some(img) = self.map.get(candidate) {
            return ExtensionOutcome::Mapped(img.clone());
        }
        let covers = candidate.shadow().expect("the point is always pre-mapped");
        let mut images = Vec::with_capacity(covers.len());
        for cover in covers.iter() {
            match self.map.get(cover) {
                Some(img) => images.push(img.clone()),
                None => return ExtensionOutcome::Blocked,
            }
        }
        let target =
            ShadowSet::from_elements(images).expect("images of a shadow share one length");
        let mut found = candidates_with_shadow(&target);
        match found.len() {
            0 => ExtensionOutcome::Basis,
            1 => ExtensionOutcome::Mapped(found.pop().unwrap()),
            _ => unreachable!("shadow {target} of length {} has several preimages", target.target_length()),
        }
    }

    /// Builds the next level from the one-point extensions of the frontier.
    /// On a cap error the new level is discarded mid-build and the state
    /// keeps its old frontier.
    pub fn advance(&mut self, cap: usize) -> Result<(), Error> {
        let next_len = self.levels.len() + 1;
        let mut candidates: Vec<Permutation> = self
            .levels
            .last()
            .expect("construction seeds two levels")
            .iter()
            .flat_map(Permutation::one_point_extensions)
            .collect();
        candidates.sort_unstable();
        candidates.dedup();
        let mut level = Vec::new();
        for c in candidates {
            match self.decide(&c) {
                ExtensionOutcome::Mapped(image) => {
                    if level.len() >= cap {
                        return Err(Error::LevelCap { length: next_len, cap });
                    }
                    self.map.entry(c.clone()).or_insert(image);
                    level.push(c);
                }
                ExtensionOutcome::Basis => self.basis.push(c),
                ExtensionOutcome::Blocked => {}
            }
        }
        self.levels.push(level);
        Ok(())
    }

    /// Serializable summary of the whole state.
    pub fn report(&self) -> ExtensionReport {
        let mut basis: BTreeMap<usize, Vec<String>> = BTreeMap::new();
        for b in &self.basis {
            basis.entry(b.len()).or_default().push(b.to_string());
        }
        let mut map = BTreeMap::new();
        for (i, level) in self.levels.iter().enumerate() {
            map.insert(
                i + 1,
                level.iter().map(|m| (m.to_string(), self.map[m].to_string())).collect(),
            );
        }
        let levels = self
            .levels
            .iter()
            .enumerate()
            .map(|(i, l)| LevelSummary {
                length: i + 1,
                count: l.len() as u64,
                new_basis: self.basis.iter().filter(|b| b.len() == i + 1).count() as u64,
            })
            .collect();
        ExtensionReport {
            schema: 1,
            seed: self.seed.label(),
            max_length: self.levels.len(),
            levels,
            basis,
            map,
        }
    }
}

/// Runs a seed out to `max_length` with a per-level size cap.
pub fn run_extension(
    seed: &SeedBijection,
    max_length: usize,
    cap: usize,
) -> Result<PartialIsomorphism, Error> {
    let mut state = PartialIsomorphism::new(seed);
    while state.frontier() < max_length {
        state.advance(cap)?;
    }
    Ok(state)
}

/// Level-by-level summary of an extension run, stable across versions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtensionReport {
    pub schema: u32,
    pub seed: String,
    pub max_length: usize,
    pub levels: Vec<LevelSummary>,
    /// Basis elements by length.
    pub basis: BTreeMap<usize, Vec<String>>,
    /// Member/image pairs by length.
    pub map: BTreeMap<usize, Vec<(String, String)>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelSummary {
    pub length: usize,
    pub count: u64,
    pub new_basis: u64,
}

/// Every seed of a group extended simultaneously: the class kept is the
/// largest one that all of them preserve.
#[derive(Clone, Debug)]
pub struct GroupExtension {
    group: SeedGroup,
    levels: Vec<Vec<Permutation>>,
    basis: Vec<Permutation>,
    maps: Vec<HashMap<Permutation, Permutation>>,
}

impl GroupExtension {
    pub fn new(group: &SeedGroup) -> GroupExtension {
        let one = Permutation::increasing(1).unwrap();
        let maps = group
            .elements()
            .iter()
            .map(|seed| {
                let mut m: HashMap<Permutation, Permutation> =
                    seed.to_pairs().into_iter().collect();
                m.insert(one.clone(), one.clone());
                m
            })
            .collect();
        GroupExtension {
            group: group.clone(),
            levels: vec![vec![one], vec!["12".parse().unwrap(), "21".parse().unwrap()]],
            basis: Vec::new(),
            maps,
        }
    }

    pub fn group(&self) -> &SeedGroup {
        &self.group
    }

    pub fn frontier(&self) -> usize {
        self.levels.len()
    }

    pub fn level(&self, length: usize) -> Result<&[Permutation], Error> {
        assert!(length >= 1, "permutations have length at least 1");
        self.levels
            .get(length - 1)
            .map(Vec::as_slice)
            .ok_or(Error::LevelsNotMaterialized { need: length, have: self.levels.len() })
    }

    pub fn counts(&self) -> CountSequence {
        CountSequence {
            counts: self.levels.iter().enumerate().map(|(i, l)| (i + 1, l.len() as u64)).collect(),
        }
    }

    pub fn basis(&self) -> &[Permutation] {
        &self.basis
    }

    /// Image of a class member under one group element.
    pub fn image_under(&self, seed: &SeedBijection, p: &Permutation) -> Option<&Permutation> {
        let idx = self.group.elements().iter().position(|s| s == seed)?;
        self.maps[idx].get(p)
    }

    /// Builds the next level. A candidate needs all covers in the class,
    /// an image under every seed, and images that themselves stay: elements
    /// are discarded until the survivors are closed under every seed, which
    /// reaches the same largest closed set no matter the candidate order.
    pub fn advance(&mut self, cap: usize) -> Result<(), Error> {
        let next_len = self.levels.len() + 1;
        let parents = self.levels.last().expect("construction seeds two levels");
        let mut candidates: Vec<Permutation> =
            parents.iter().flat_map(Permutation::one_point_extensions).collect();
        candidates.sort_unstable();
        candidates.dedup();
        candidates
            .retain(|c| c.shadow().unwrap().iter().all(|s| parents.binary_search(s).is_ok()));
        if candidates.len() > cap {
            return Err(Error::LevelCap { length: next_len, cap });
        }
        let mut kept: Vec<Permutation> = Vec::new();
        let mut images: HashMap<Permutation, Vec<Permutation>> = HashMap::new();
        let mut excluded = Vec::new();
        'candidates: for c in candidates {
            let mut imgs = Vec::with_capacity(self.maps.len());
            for m in &self.maps {
                if let Some(y) = m.get(&c) {
                    imgs.push(y.clone());
                    continue;
                }
                let target = ShadowSet::from_elements(
                    c.shadow().unwrap().iter().map(|s| m[s].clone()).collect(),
                )
                .expect("images of a shadow share one length");
                let mut found = candidates_with_shadow(&target);
                match found.len() {
                    0 => {
                        excluded.push(c);
                        continue 'candidates;
                    }
                    1 => imgs.push(found.pop().unwrap()),
                    _ => unreachable!(
                        "shadow {target} of length {} has several preimages",
                        target.target_length()
                    ),
                }
            }
            images.insert(c.clone(), imgs);
            kept.push(c);
        }
        let mut kept_set: HashSet<Permutation> = kept.iter().cloned().collect();
        loop {
            let before = kept_set.len();
            kept.retain(|c| {
                let stays = images[c].iter().all(|y| kept_set.contains(y));
                if !stays {
                    kept_set.remove(c);
                    excluded.push(c.clone());
                }
                stays
            });
            if kept_set.len() == before {
                break;
            }
        }
        for (g, m) in self.maps.iter_mut().enumerate() {
            for c in &kept {
                m.entry(c.clone()).or_insert_with(|| images[c][g].clone());
            }
        }
        excluded.sort_unstable();
        self.basis.extend(excluded);
        self.levels.push(kept);
        Ok(())
    }
}

/// Runs a whole seed group out to `max_length`.
pub fn run_group_extension(
    group: &SeedGroup,
    max_length: usize,
    cap: usize,
) -> Result<GroupExtension, Error> {
    let mut state = GroupExtension::new(group);
    while state.frontier() < max_length {
        state.advance(cap)?;
    }
    Ok(state)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::all_of_length;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn shadow_of(s: &str) -> ShadowSet {
        p(s).shadow().unwrap()
    }

    #[test]
    fn identity_seed_extends_to_the_identity_everywhere() {
        let run = run_extension(&SeedBijection::h(1), 6, usize::MAX).unwrap();
        assert_eq!(run.counts().values(), vec![1, 2, 6, 24, 120, 720]);
        assert!(run.basis().is_empty());
        for n in 1..=6 {
            for m in run.level(n).unwrap() {
                assert_eq!(run.image_of(m), Some(m));
            }
        }
    }

    #[test]
    fn crossing_swap_seed_finds_its_class() {
        let run = run_extension(&SeedBijection::h(2), 7, usize::MAX).unwrap();
        assert_eq!(run.counts().values(), vec![1, 2, 6, 24, 102, 446, 2054]);
        // an involution: applying the map twice is the identity
        for n in 1..=7 {
            for m in run.level(n).unwrap() {
                let once = run.image_of(m).unwrap();
                assert_eq!(run.image_of(once), Some(m));
            }
            // and each level maps onto itself
            let mut images: Vec<Permutation> =
                run.level(n).unwrap().iter().map(|m| run.image_of(m).unwrap().clone()).collect();
            images.sort_unstable();
            assert_eq!(images.as_slice(), run.level(n).unwrap());
        }
        assert_eq!(run.image_of(&p("2413")), Some(&p("3142")));
        assert_eq!(run.image_of(&p("13524")), Some(&p("14253")));
        assert_eq!(run.image_of(&p("123456")), Some(&p("123456")));
    }

    #[test]
    fn pair_swap_seed_fixes_the_longer_crossings() {
        let run = run_extension(&SeedBijection::h(5), 6, usize::MAX).unwrap();
        assert_eq!(run.image_of(&p("25314")), Some(&p("25314")));
        assert_eq!(run.image_of(&p("41352")), Some(&p("41352")));
        assert_eq!(run.image_of(&p("2143")), Some(&p("3412")));
        assert_eq!(run.image_of(&p("3412")), Some(&p("2143")));
    }

    #[test]
    fn decide_distinguishes_the_three_outcomes() {
        let mut state = PartialIsomorphism::new(&SeedBijection::h(2));
        assert_eq!(state.decide(&p("132")), ExtensionOutcome::Mapped(p("132")));
        assert_eq!(state.decide(&p("123")), ExtensionOutcome::Mapped(p("123")));
        state.advance(usize::MAX).unwrap();
        state.advance(usize::MAX).unwrap();
        state.advance(usize::MAX).unwrap();
        // all length-5 candidates decided; 23514 is a basis element
        assert_eq!(state.decide(&p("23514")), ExtensionOutcome::Basis);
        // anything covering a basis element is blocked
        assert_eq!(state.decide(&p("235146")), ExtensionOutcome::Blocked);
    }

    #[test]
    fn advance_respects_the_cap() {
        let err = run_extension(&SeedBijection::h(1), 5, 100).unwrap_err();
        assert_eq!(err, Error::LevelCap { length: 5, cap: 100 });
    }

    #[test]
    fn shadow_inversion_round_trips() {
        for n in [6usize, 7] {
            for q in all_of_length(n) {
                assert_eq!(invert_shadow(&q.shadow().unwrap()).unwrap(), Some(q));
            }
        }
    }

    #[test]
    fn shadow_inversion_rejects_short_targets() {
        assert_eq!(
            invert_shadow(&shadow_of("2413")).unwrap_err(),
            Error::InvertTargetTooShort { target: 4 }
        );
        assert_eq!(
            invert_shadow(&shadow_of("213")).unwrap_err(),
            Error::InvertTargetTooShort { target: 3 }
        );
    }

    #[test]
    fn the_crossing_pair_has_no_common_extension() {
        let target = ShadowSet::from_elements(vec![p("2413"), p("3142")]).unwrap();
        assert_eq!(invert_shadow(&target).unwrap(), None);
    }

    #[test]
    fn reports_round_trip_through_json() {
        let run = run_extension(&SeedBijection::h(2), 6, usize::MAX).unwrap();
        let report = run.report();
        assert_eq!(report.schema, 1);
        assert_eq!(report.seed, "h2");
        assert_eq!(report.max_length, 6);
        assert_eq!(report.levels[4], LevelSummary { length: 5, count: 102, new_basis: 18 });
        assert_eq!(report.basis[&5].len(), 18);
        assert!(report.basis[&5].contains(&"23514".to_string()));
        assert_eq!(report.map[&4].len(), 24);
        let json = serde_json::to_string(&report).unwrap();
        let back: ExtensionReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, report);
    }

    #[test]
    fn group_run_of_the_crossing_pair_matches_the_single_seed() {
        let group = SeedGroup::generated_by(&[SeedBijection::h(2)]);
        let joint = run_group_extension(&group, 7, usize::MAX).unwrap();
        let single = run_extension(&SeedBijection::h(2), 7, usize::MAX).unwrap();
        assert_eq!(joint.counts(), single.counts());
        for n in 1..=7 {
            assert_eq!(joint.level(n).unwrap(), single.level(n).unwrap());
        }
        assert_eq!(joint.basis(), single.basis());
        for n in 1..=7 {
            for m in joint.level(n).unwrap() {
                assert_eq!(
                    joint.image_under(&SeedBijection::h(2), m),
                    single.image_of(m)
                );
                assert_eq!(joint.image_under(&SeedBijection::h(1), m), Some(m));
            }
        }
    }

    #[test]
    fn full_group_run_is_closed_and_deterministic() {
        let group = SeedGroup::aut_r();
        let run = run_group_extension(&group, 6, usize::MAX).unwrap();
        assert_eq!(run.counts().values(), vec![1, 2, 6, 12, 14, 18]);
        for n in 1..=6 {
            let level = run.level(n).unwrap();
            for seed in group.elements() {
                let mut images: Vec<Permutation> = level
                    .iter()
                    .map(|m| run.image_under(seed, m).unwrap().clone())
                    .collect();
                images.sort_unstable();
                assert_eq!(images.as_slice(), level, "{seed} at length {n}");
            }
        }
        let again = run_group_extension(&group, 6, usize::MAX).unwrap();
        assert_eq!(again.counts(), run.counts());
        for n in 1..=6 {
            assert_eq!(again.level(n).unwrap(), run.level(n).unwrap());
        }
    }
}

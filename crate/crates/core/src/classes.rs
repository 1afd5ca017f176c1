//! Pattern classes: sets of permutations closed downward under containment.
//! Covers avoidance classes given by a basis, finite downward closures,
//! level-by-level enumeration, recovering a basis from levels, and a growth
//! rate bound from a polynomial singularity.

use std::collections::HashSet;
use std::fmt;

use rayon::prelude::*;

use crate::error::Error;
use crate::perm::Permutation;

const PARENT_CHUNK: usize = 4096;

/// How candidates are tested during level generation.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum MembershipCheck {
    /// Pattern-match each candidate against the basis.
    #[default]
    Direct,
    /// Accept a candidate iff its whole shadow lies in the previous level
    /// and it is not itself a basis element. Trades containment searches for
    /// binary searches; the two checks accept identical levels.
    ShadowMembership,
}

#[derive(Clone, Debug)]
pub struct GenConfig {
    /// Hard ceiling on the size of any single level.
    pub cap: usize,
    pub check: MembershipCheck,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig { cap: 50_000_000, check: MembershipCheck::Direct }
    }
}

#[derive(Clone, Debug)]
enum Kind {
    Avoidance { basis: Vec<Permutation> },
    Downset { max_len: usize },
}

/// A pattern class with its levels (members of each length) materialized on
/// demand. Level `n` is only available after `generate_to(n, ..)`, except for
/// finite closures, which are fully materialized at construction.
#[derive(Clone, Debug)]
pub struct PatternClass {
    kind: Kind,
    levels: Vec<Vec<Permutation>>,
}

impl PatternClass {
    /// The class avoiding every element of `basis`. Redundant elements are
    /// dropped first; see [`reduce_antichain`].
    pub fn from_basis(basis: &[Permutation]) -> PatternClass {
        let (kept, _) = reduce_antichain(basis);
        PatternClass { kind: Kind::Avoidance { basis: kept }, levels: Vec::new() }
    }

    /// The closure of {2413, 3142}, the backbone shared by every extension
    /// run: nine permutations, the longest of length four.
    pub fn r_class() -> PatternClass {
        downset_of(&["2413".parse().unwrap(), "3142".parse().unwrap()])
    }

    /// The avoidance basis, if this class was built from one.
    pub fn basis(&self) -> Option<&[Permutation]> {
        match &self.kind {
            Kind::Avoidance { basis } => Some(basis),
            Kind::Downset { .. } => None,
        }
    }

    /// Largest length whose level is materialized.
    pub fn materialized_through(&self) -> usize {
        self.levels.len()
    }

    pub fn level(&self, length: usize) -> Result<&[Permutation], Error> {
        assert!(length >= 1, "permutations have length at least 1");
        self.levels
            .get(length - 1)
            .map(Vec::as_slice)
            .ok_or(Error::LevelsNotMaterialized { need: length, have: self.levels.len() })
    }

    /// Membership. Avoidance classes test against the basis; finite closures
    /// look the permutation up.
    pub fn contains(&self, p: &Permutation) -> bool {
        match &self.kind {
            Kind::Avoidance { basis } => basis.iter().all(|b| !p.contains(b)),
            Kind::Downset { max_len } => {
                p.len() <= *max_len && self.levels[p.len() - 1].binary_search(p).is_ok()
            }
        }
    }

    /// Materializes levels through `length`.
    pub fn generate_to(&mut self, length: usize, cfg: &GenConfig) -> Result<(), Error> {
        while self.levels.len() < length {
            let next = self.next_level(cfg)?;
            self.levels.push(next);
        }
        Ok(())
    }

    fn next_level(&self, cfg: &GenConfig) -> Result<Vec<Permutation>, Error> {
        let have = self.levels.len();
        let basis = match &self.kind {
            // a finite closure is complete at construction; later levels are empty
            Kind::Downset { .. } => return Ok(Vec::new()),
            Kind::Avoidance { basis } => basis,
        };
        if have == 0 {
            let point = Permutation::increasing(1).unwrap();
            let level = if basis.contains(&point) { Vec::new() } else { vec![point] };
            return Ok(level);
        }
        let next_len = have + 1;
        let parents = &self.levels[have - 1];
        let relevant: Vec<&Permutation> =
            basis.iter().filter(|b| b.len() <= next_len).collect();
        let basis_here: Vec<&Permutation> =
            basis.iter().filter(|b| b.len() == next_len).collect();
        let mut accepted: HashSet<Permutation> = HashSet::new();
        for chunk in parents.chunks(PARENT_CHUNK) {
            let seen = &accepted;
            let found: Vec<Vec<Permutation>> = chunk
                .par_iter()
                .map(|parent| {
                    parent
                        .one_point_extensions()
                        .into_iter()
                        .filter(|ext| !seen.contains(ext))
                        .filter(|ext| match cfg.check {
                            MembershipCheck::Direct => {
                                relevant.iter().all(|b| !ext.contains(b))
                            }
                            MembershipCheck::ShadowMembership => {
                                !basis_here.contains(&ext)
                                    && ext
                                        .shadow()
                                        .unwrap()
                                        .iter()
                                        .all(|s| parents.binary_search(s).is_ok())
                            }
                        })
                        .collect()
                })
                .collect();
            for batch in found {
                accepted.extend(batch);
            }
            if accepted.len() > cfg.cap {
                return Err(Error::LevelCap { length: next_len, cap: cfg.cap });
            }
        }
        let mut level: Vec<Permutation> = accepted.into_iter().collect();
        level.sort_unstable();
        Ok(level)
    }

    /// Counts of the materialized levels.
    pub fn counts(&self) -> CountSequence {
        CountSequence {
            counts: self.levels.iter().enumerate().map(|(i, l)| (i + 1, l.len() as u64)).collect(),
        }
    }
}

/// The downward closure of a finite set of permutations.
pub fn downset_of(perms: &[Permutation]) -> PatternClass {
    let max_len = perms.iter().map(Permutation::len).max().unwrap_or(0);
    let mut sets: Vec<HashSet<Permutation>> = vec![HashSet::new(); max_len];
    for p in perms {
        sets[p.len() - 1].insert(p.clone());
    }
    for len in (2..=max_len).rev() {
        let here: Vec<Permutation> = sets[len - 1].iter().cloned().collect();
        for p in here {
            for q in p.shadow().unwrap().iter() {
                sets[len - 2].insert(q.clone());
            }
        }
    }
    let levels = sets
        .into_iter()
        .map(|s| {
            let mut level: Vec<Permutation> = s.into_iter().collect();
            level.sort_unstable();
            level
        })
        .collect();
    PatternClass { kind: Kind::Downset { max_len }, levels }
}

/// Drops every element that contains another (duplicates included), leaving
/// the minimal antichain with the same avoidance class. Returns (kept,
/// removed), both sorted.
pub fn reduce_antichain(elems: &[Permutation]) -> (Vec<Permutation>, Vec<Permutation>) {
    let mut sorted = elems.to_vec();
    sorted.sort_unstable();
    let mut kept: Vec<Permutation> = Vec::new();
    let mut removed = Vec::new();
    for e in sorted {
        if kept.iter().any(|k| e.contains(k)) {
            removed.push(e);
        } else {
            kept.push(e);
        }
    }
    (kept, removed)
}

/// Recovers the minimal permutations outside the class, up to `through`, from
/// materialized levels: the permutations absent from their level whose whole
/// shadow lies in the previous one.
pub fn basis_of(class: &PatternClass, through: usize) -> Result<Vec<Permutation>, Error> {
    assert!(through >= 1);
    if class.materialized_through() < through {
        return Err(Error::LevelsNotMaterialized {
            need: through,
            have: class.materialized_through(),
        });
    }
    if class.level(1)?.is_empty() {
        return Ok(vec![Permutation::increasing(1).unwrap()]);
    }
    let mut basis = Vec::new();
    for m in 2..=through {
        let below = class.level(m - 1)?;
        let here = class.level(m)?;
        let mut candidates: Vec<Permutation> =
            below.iter().flat_map(Permutation::one_point_extensions).collect();
        candidates.sort_unstable();
        candidates.dedup();
        for c in candidates {
            if here.binary_search(&c).is_err()
                && c.shadow().unwrap().iter().all(|s| below.binary_search(s).is_ok())
            {
                basis.push(c);
            }
        }
    }
    Ok(basis)
}

/// Level counts of a class, paired with their lengths.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountSequence {
    pub counts: Vec<(usize, u64)>,
}

impl CountSequence {
    pub fn values(&self) -> Vec<u64> {
        self.counts.iter().map(|&(_, c)| c).collect()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,count\n");
        for &(n, c) in &self.counts {
            out.push_str(&format!("{n},{c}\n"));
        }
        out
    }
}

impl fmt::Display for CountSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for &(_, c) in &self.counts {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
            first = false;
        }
        Ok(())
    }
}

/// Reciprocal of the least root in (0,1) of the polynomial with the given
/// ascending coefficients. The root is bracketed by a scan in steps of
/// 1/1024, then bisected to within 1e-6.
pub fn growth_rate_bound(coeffs: &[f64]) -> Result<f64, Error> {
    const STEPS: usize = 1024;
    const TOL: f64 = 1e-6;
    if coeffs.iter().all(|&c| c == 0.0) {
        return Err(Error::NoRootInUnitInterval);
    }
    let eval = |x: f64| coeffs.iter().rev().fold(0.0f64, |acc, &c| acc * x + c);
    let mut prev_x = 0.0f64;
    let mut prev = eval(0.0);
    let mut bracket = None;
    for k in 1..STEPS {
        let x = k as f64 / STEPS as f64;
        let v = eval(x);
        if v == 0.0 {
            return Ok(1.0 / x);
        }
        if prev != 0.0 && (prev > 0.0) != (v > 0.0) {
            bracket = Some((prev_x, x));
            break;
        }
        prev_x = x;
        prev = v;
    }
    let (mut lo, mut hi) = bracket.ok_or(Error::NoRootInUnitInterval)?;
    let mut flo = eval(lo);
    while hi - lo > TOL {
        let mid = 0.5 * (lo + hi);
        let fm = eval(mid);
        if fm == 0.0 {
            return Ok(1.0 / mid);
        }
        if (fm > 0.0) == (flo > 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    Ok(2.0 / (lo + hi))
}

//! The six maximal maps f1..f6: the bases of their classes, structural
//! membership predicates, closed-form images, and the automorphism tables
//! of the f3 class. Each map extends one of the named seed bijections, and
//! the tests pin every constant here against the extension engine.

use std::collections::BTreeMap;
use std::fmt;

use crate::classes::{GenConfig, PatternClass};
use crate::error::Error;
use crate::exotic::exotic;
use crate::perm::Permutation;
use crate::seeds::SeedBijection;
use crate::symmetry::Symmetry;
use crate::wedge::{wedge_membership, Wedge};

const F2_BASIS: [&str; 22] = [
    "23514", "24513", "25134", "25143", "25314", "25413", "31452", "31542", "32514", "34152",
    "35124", "35214", "41253", "41352", "41523", "41532", "42153", "43152", "241635", "315264",
    "462513", "536142",
];

const F3_BASIS: [&str; 10] = [
    "2143", "2431", "3124", "3412", "23514", "25134", "31452", "35214", "41532", "43152",
];

const F5_BASIS: [&str; 40] = [
    "1324", "4231", "14523", "21354", "21453", "21534", "21543", "23154", "23514", "24153",
    "24513", "25134", "25143", "25413", "31254", "31452", "31524", "31542", "32154", "32514",
    "32541", "34125", "34152", "34512", "35124", "35142", "35214", "35412", "41253", "41523",
    "41532", "42153", "42513", "43152", "43512", "45123", "45132", "45213", "45312", "52143",
];

const F6_EXTRA: [&str; 2] = ["25314", "41352"];

fn pm(s: &str) -> Permutation {
    s.parse().unwrap()
}

/// One of the six maximal maps, which also names the class it acts on.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum ClassMap {
    F1,
    F2,
    F3,
    F4,
    F5,
    F6,
}

impl ClassMap {
    pub fn all() -> [ClassMap; 6] {
        [ClassMap::F1, ClassMap::F2, ClassMap::F3, ClassMap::F4, ClassMap::F5, ClassMap::F6]
    }

    pub fn from_name(name: &str) -> Option<ClassMap> {
        ClassMap::all().into_iter().find(|m| m.name() == name)
    }

    pub fn name(self) -> &'static str {
        match self {
            ClassMap::F1 => "f1",
            ClassMap::F2 => "f2",
            ClassMap::F3 => "f3",
            ClassMap::F4 => "f4",
            ClassMap::F5 => "f5",
            ClassMap::F6 => "f6",
        }
    }

    /// The seed bijection this map extends.
    pub fn seed(self) -> SeedBijection {
        match self {
            ClassMap::F1 => SeedBijection::h(1),
            ClassMap::F2 => SeedBijection::h(2),
            ClassMap::F3 => SeedBijection::h(3),
            ClassMap::F4 => SeedBijection::h(4),
            ClassMap::F5 => SeedBijection::h(5),
            ClassMap::F6 => SeedBijection::h(6),
        }
    }

    /// Basis of the class the map acts on, sorted. The classes of f3 and f4
    /// coincide.
    pub fn basis(self) -> Vec<Permutation> {
        let words: &[&str] = match self {
            ClassMap::F1 => &[],
            ClassMap::F2 => &F2_BASIS,
            ClassMap::F3 | ClassMap::F4 => &F3_BASIS,
            ClassMap::F5 | ClassMap::F6 => &F5_BASIS,
        };
        let mut basis: Vec<Permutation> = words.iter().map(|w| pm(w)).collect();
        if self == ClassMap::F6 {
            basis.extend(F6_EXTRA.iter().map(|w| pm(w)));
        }
        basis.sort_unstable();
        basis
    }

    /// The class as an avoidance class, ready for level generation.
    pub fn avoidance_class(self) -> PatternClass {
        PatternClass::from_basis(&self.basis())
    }

    /// Structural membership, independent of the basis.
    pub fn contains(self, p: &Permutation) -> bool {
        match self {
            ClassMap::F1 => true,
            ClassMap::F2 => f2_member(p),
            ClassMap::F3 | ClassMap::F4 => !apex_splits(p).is_empty(),
            ClassMap::F5 => special_image(p, true).is_some() || wedge_membership(p).is_some(),
            ClassMap::F6 => special_image(p, false).is_some() || wedge_membership(p).is_some(),
        }
    }

    /// Image of a class member.
    pub fn apply(self, p: &Permutation) -> Result<Permutation, Error> {
        match self {
            ClassMap::F1 => Ok(p.clone()),
            ClassMap::F2 => f2_image(p),
            ClassMap::F3 => f34_image(p, false, "the f3 class"),
            ClassMap::F4 => f34_image(p, true, "the f4 class"),
            ClassMap::F5 => f5_apply(p),
            ClassMap::F6 => f6_apply(p),
        }
    }
}

impl fmt::Display for ClassMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn f2_member(p: &Permutation) -> bool {
    if p.len() == 1 {
        return true;
    }
    if let Some((head, tail)) = p.sum_decompose() {
        return f2_member(&head) && f2_member(&tail);
    }
    if let Some((head, tail)) = p.skew_decompose() {
        return f2_member(&head) && f2_member(&tail);
    }
    matches!(
        p.values(),
        [2, 4, 1, 3]
            | [3, 1, 4, 2]
            | [2, 4, 1, 5, 3]
            | [3, 1, 5, 2, 4]
            | [3, 5, 1, 4, 2]
            | [4, 2, 5, 1, 3]
    )
}

fn f2_image(p: &Permutation) -> Result<Permutation, Error> {
    if p.len() == 1 {
        return Ok(p.clone());
    }
    if let Some((head, tail)) = p.sum_decompose() {
        return f2_image(&head)?.direct_sum(&f2_image(&tail)?);
    }
    if let Some((head, tail)) = p.skew_decompose() {
        return f2_image(&head)?.skew_sum(&f2_image(&tail)?);
    }
    match p.values() {
        [2, 4, 1, 3] => Ok(pm("3142")),
        [3, 1, 4, 2] => Ok(pm("2413")),
        [2, 4, 1, 5, 3] | [3, 1, 5, 2, 4] | [3, 5, 1, 4, 2] | [4, 2, 5, 1, 3] => Ok(p.clone()),
        _ => Err(Error::NotInClass { class: "the f2 class", perm: p.to_string() }),
    }
}

fn is_crossing(p: &Permutation) -> bool {
    matches!(p.values(), [2, 4, 1, 3] | [3, 1, 4, 2])
}

/// Apex blocks allowed in the canonical form of the f3 class: the point,
/// the two crossings, or a wedge member that is not monotone.
fn apex_allowed(tau: &Permutation) -> bool {
    tau.len() == 1
        || is_crossing(tau)
        || (Wedge::V270.contains(tau) && !tau.is_increasing() && !tau.is_decreasing())
}

/// All ways to write p as a V90 skeleton with singleton blocks plus an
/// allowed apex block at the end. Members admit exactly one.
fn apex_splits(p: &Permutation) -> Vec<(Permutation, Permutation)> {
    let w = p.values();
    let n = p.len();
    let mut out = Vec::new();
    for t in 1..=n {
        let suffix = &w[n - t..];
        let lo = *suffix.iter().min().unwrap();
        let hi = *suffix.iter().max().unwrap();
        if usize::from(hi - lo) + 1 != t {
            continue;
        }
        let tau = Permutation::pattern_of(suffix).expect("a block of a permutation");
        if !apex_allowed(&tau) {
            continue;
        }
        let mut head = w[..n - t].to_vec();
        head.push(lo);
        let sigma = Permutation::pattern_of(&head).expect("a prefix with a representative");
        if Wedge::V90.contains(&sigma) {
            out.push((sigma, tau));
        }
    }
    out
}

fn f34_image(
    p: &Permutation,
    swap_crossings: bool,
    class: &'static str,
) -> Result<Permutation, Error> {
    let mut splits = apex_splits(p);
    let (sigma, tau) = match splits.len() {
        0 => return Err(Error::NotInClass { class, perm: p.to_string() }),
        1 => splits.pop().unwrap(),
        _ => unreachable!("the apex decomposition of {p} is not unique"),
    };
    let apex = if tau.len() == 1 || (is_crossing(&tau) && !swap_crossings) {
        tau
    } else if matches!(tau.values(), [2, 4, 1, 3]) {
        pm("3142")
    } else if matches!(tau.values(), [3, 1, 4, 2]) {
        pm("2413")
    } else {
        exotic(&tau)?
    };
    let mut parts = vec![Permutation::increasing(1).unwrap(); sigma.len() - 1];
    parts.push(apex);
    sigma.inflate(&parts)
}

/// Images of the non-wedge members shared by the f5 and f6 classes; the
/// extra fixed pair of length five belongs to the f5 class only.
fn special_image(p: &Permutation, with_long_fixed: bool) -> Option<Permutation> {
    match p.values() {
        [2, 1, 4, 3] => Some(pm("3412")),
        [3, 4, 1, 2] => Some(pm("2143")),
        [2, 4, 1, 3] | [3, 1, 4, 2] => Some(p.clone()),
        [2, 5, 3, 1, 4] | [4, 1, 3, 5, 2] if with_long_fixed => Some(p.clone()),
        _ => None,
    }
}

fn f5_apply(p: &Permutation) -> Result<Permutation, Error> {
    if let Some(q) = special_image(p, true) {
        return Ok(q);
    }
    match wedge_membership(p) {
        Some(w) => f5_image(p, w),
        None => Err(Error::NotInClass { class: "the f5 class", perm: p.to_string() }),
    }
}

fn f6_apply(p: &Permutation) -> Result<Permutation, Error> {
    if let Some(q) = special_image(p, false) {
        return Ok(q);
    }
    match wedge_membership(p) {
        Some(w) => f6_image(p, w),
        None => Err(Error::NotInClass { class: "the f6 class", perm: p.to_string() }),
    }
}

/// The f5 chain for one wedge, applied left to right. It fixes V and V180
/// setwise and swaps V90 with V270.
fn f5_image(p: &Permutation, w: Wedge) -> Result<Permutation, Error> {
    let r = Symmetry::REVERSE;
    let c = Symmetry::COMPLEMENT;
    let i = Symmetry::INVERSE;
    Ok(match w {
        Wedge::V => i.apply(&exotic(&i.apply(p))?),
        Wedge::V90 => c.apply(&exotic(&r.apply(p))?),
        Wedge::V180 => c.apply(&i.apply(&exotic(&i.apply(&c.apply(p)))?)),
        Wedge::V270 => r.apply(&exotic(&c.apply(p))?),
    })
}

/// The f6 chain for one wedge, applied left to right. It cycles the wedges
/// V -> V90 -> V180 -> V270 -> V.
fn f6_image(p: &Permutation, w: Wedge) -> Result<Permutation, Error> {
    let r = Symmetry::REVERSE;
    let i = Symmetry::INVERSE;
    Ok(match w {
        Wedge::V => r.apply(&exotic(&i.apply(&r.apply(p)))?),
        Wedge::V90 => i.apply(&r.apply(&exotic(&r.apply(p))?)),
        Wedge::V180 => exotic(&r.apply(&i.apply(&r.apply(p))))?,
        Wedge::V270 => i.apply(&exotic(p)?),
    })
}

/// A map materialized as explicit pairs on every class member up to some
/// length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapTable {
    pub name: String,
    pub pairs: BTreeMap<Permutation, Permutation>,
}

impl MapTable {
    /// `self` followed by `other`.
    pub fn compose(&self, other: &MapTable) -> MapTable {
        let name = match (self.name.as_str(), other.name.as_str()) {
            ("e", _) => other.name.clone(),
            (_, "e") => self.name.clone(),
            _ => format!("{} {}", self.name, other.name),
        };
        let pairs = self
            .pairs
            .iter()
            .map(|(x, y)| {
                let z = other.pairs.get(y).expect("composition stays on the table's domain");
                (x.clone(), z.clone())
            })
            .collect();
        MapTable { name, pairs }
    }

    pub fn is_identity(&self) -> bool {
        self.pairs.iter().all(|(x, y)| x == y)
    }
}

/// The group generated by the complement symmetry, f2 and f3 on the f3
/// class, closed under composition and returned as tables over all members
/// up to `max_length`.
pub fn aut_group_a3(max_length: usize) -> Result<Vec<MapTable>, Error> {
    let mut class = ClassMap::F3.avoidance_class();
    class.generate_to(max_length, &GenConfig::default())?;
    let mut members = Vec::new();
    for n in 1..=max_length {
        members.extend(class.level(n)?.iter().cloned());
    }
    let identity = MapTable {
        name: "e".to_string(),
        pairs: members.iter().map(|p| (p.clone(), p.clone())).collect(),
    };
    let mut gen_c = BTreeMap::new();
    let mut gen_f2 = BTreeMap::new();
    let mut gen_f3 = BTreeMap::new();
    for p in &members {
        gen_c.insert(p.clone(), Symmetry::COMPLEMENT.apply(p));
        gen_f2.insert(p.clone(), ClassMap::F2.apply(p)?);
        gen_f3.insert(p.clone(), ClassMap::F3.apply(p)?);
    }
    let generators = [
        MapTable { name: "c".to_string(), pairs: gen_c },
        MapTable { name: "f2".to_string(), pairs: gen_f2 },
        MapTable { name: "f3".to_string(), pairs: gen_f3 },
    ];
    let mut group = vec![identity];
    let mut next = 0;
    while next < group.len() {
        let base = group[next].clone();
        next += 1;
        for g in &generators {
            let product = base.compose(g);
            if !group.iter().any(|m| m.pairs == product.pairs) {
                group.push(product);
            }
        }
    }
    Ok(group)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classes::MembershipCheck;
    use crate::engine::run_extension;
    use crate::error::Error;
    use crate::perm::all_of_length;
    use crate::series::series_formula;

    fn members_to(map: ClassMap, length: usize) -> Vec<Permutation> {
        let mut class = map.avoidance_class();
        class.generate_to(length, &GenConfig::default()).unwrap();
        (1..=length).flat_map(|n| class.level(n).unwrap().to_vec()).collect()
    }

    #[test]
    fn every_map_reproduces_its_seed_row() {
        for map in ClassMap::all() {
            for (x, y) in map.seed().to_pairs() {
                assert!(map.contains(&x), "{map} should contain {x}");
                assert_eq!(map.apply(&x).unwrap(), y, "{map} at {x}");
            }
        }
    }

    #[test]
    fn bases_match_the_extension_engine() {
        for map in ClassMap::all() {
            let run = run_extension(&map.seed(), 7, usize::MAX).unwrap();
            assert_eq!(run.basis(), map.basis(), "basis of {map}");
        }
    }

    #[test]
    fn structural_membership_equals_avoidance() {
        for map in [ClassMap::F2, ClassMap::F3, ClassMap::F4, ClassMap::F5, ClassMap::F6] {
            let mut class = map.avoidance_class();
            class.generate_to(6, &GenConfig::default()).unwrap();
            for n in 1..=6 {
                let by_predicate: Vec<Permutation> =
                    all_of_length(n).into_iter().filter(|p| map.contains(p)).collect();
                assert_eq!(by_predicate.as_slice(), class.level(n).unwrap(), "{map} at {n}");
            }
        }
    }

    #[test]
    fn maps_agree_with_the_engine() {
        for map in ClassMap::all() {
            let run = run_extension(&map.seed(), 6, usize::MAX).unwrap();
            for n in 1..=6 {
                for member in run.level(n).unwrap() {
                    assert_eq!(
                        map.apply(member).unwrap(),
                        *run.image_of(member).unwrap(),
                        "{map} at {member}"
                    );
                }
            }
        }
    }

    #[test]
    fn images_have_the_image_shadows() {
        for map in ClassMap::all() {
            for member in members_to(map, 7) {
                if member.len() < 2 {
                    continue;
                }
                let image = map.apply(&member).unwrap();
                let mapped: Vec<Permutation> = member
                    .shadow()
                    .unwrap()
                    .iter()
                    .map(|cover| map.apply(cover).unwrap())
                    .collect();
                let expected = crate::perm::ShadowSet::from_elements(mapped).unwrap();
                assert_eq!(image.shadow().unwrap(), expected, "{map} at {member}");
            }
        }
    }

    #[test]
    fn recorded_images_hold() {
        assert_eq!(ClassMap::F2.apply(&pm("2413")).unwrap(), pm("3142"));
        assert_eq!(ClassMap::F2.apply(&pm("13524")).unwrap(), pm("14253"));
        assert_eq!(ClassMap::F2.apply(&pm("24153")).unwrap(), pm("24153"));
        assert_eq!(ClassMap::F3.apply(&pm("213")).unwrap(), pm("231"));
        assert_eq!(ClassMap::F3.apply(&pm("231")).unwrap(), pm("213"));
        assert_eq!(ClassMap::F3.apply(&pm("132")).unwrap(), pm("132"));
        assert_eq!(ClassMap::F3.apply(&pm("2413")).unwrap(), pm("2413"));
        assert_eq!(ClassMap::F4.apply(&pm("2413")).unwrap(), pm("3142"));
        assert_eq!(ClassMap::F4.apply(&pm("13524")).unwrap(), pm("14253"));
        assert_eq!(ClassMap::F5.apply(&pm("2143")).unwrap(), pm("3412"));
        assert_eq!(ClassMap::F5.apply(&pm("25314")).unwrap(), pm("25314"));
        assert_eq!(ClassMap::F5.apply(&pm("132")).unwrap(), pm("231"));
        assert_eq!(ClassMap::F6.apply(&pm("132")).unwrap(), pm("231"));
        assert_eq!(ClassMap::F6.apply(&pm("213")).unwrap(), pm("312"));
        assert_eq!(ClassMap::F6.apply(&pm("2143")).unwrap(), pm("3412"));
    }

    #[test]
    fn involutions_square_to_identity() {
        for map in [ClassMap::F2, ClassMap::F3, ClassMap::F5] {
            for member in members_to(map, 6) {
                let image = map.apply(&member).unwrap();
                assert_eq!(map.apply(&image).unwrap(), member, "{map} at {member}");
            }
        }
    }

    #[test]
    fn f4_after_f3_swaps_the_apex_crossing() {
        for member in members_to(ClassMap::F3, 6) {
            let via_pair = ClassMap::F4.apply(&ClassMap::F3.apply(&member).unwrap()).unwrap();
            assert_eq!(via_pair, ClassMap::F2.apply(&member).unwrap(), "at {member}");
        }
    }

    #[test]
    fn f6_squares_to_the_rc_symmetry() {
        let rc: Symmetry = "rc".parse().unwrap();
        for member in members_to(ClassMap::F6, 6) {
            let twice = ClassMap::F6.apply(&ClassMap::F6.apply(&member).unwrap()).unwrap();
            assert_eq!(twice, rc.apply(&member), "at {member}");
        }
    }

    #[test]
    fn wedge_overlaps_get_one_image() {
        for n in 1..=8 {
            for p in all_of_length(n) {
                let wedges: Vec<Wedge> =
                    Wedge::ALL.into_iter().filter(|w| w.contains(&p)).collect();
                if wedges.len() < 2 {
                    continue;
                }
                let f5_first = f5_image(&p, wedges[0]).unwrap();
                let f6_first = f6_image(&p, wedges[0]).unwrap();
                for &w in &wedges[1..] {
                    assert_eq!(f5_image(&p, w).unwrap(), f5_first, "f5 at {p} in {w}");
                    assert_eq!(f6_image(&p, w).unwrap(), f6_first, "f6 at {p} in {w}");
                }
            }
        }
    }

    #[test]
    fn nonmembers_are_rejected() {
        let cases = [
            (ClassMap::F2, "34152"),
            (ClassMap::F3, "2143"),
            (ClassMap::F4, "3412"),
            (ClassMap::F5, "1324"),
            (ClassMap::F6, "25314"),
        ];
        for (map, word) in cases {
            let p = pm(word);
            assert!(!map.contains(&p), "{map} should exclude {p}");
            assert_eq!(
                map.apply(&p).unwrap_err(),
                Error::NotInClass { class: match map {
                    ClassMap::F2 => "the f2 class",
                    ClassMap::F3 => "the f3 class",
                    ClassMap::F4 => "the f4 class",
                    ClassMap::F5 => "the f5 class",
                    _ => "the f6 class",
                }, perm: word.to_string() }
            );
        }
    }

    #[test]
    fn level_counts_match_the_series() {
        let cases =
            [(2u8, ClassMap::F2, 9usize), (3, ClassMap::F3, 11), (5, ClassMap::F5, 11), (6, ClassMap::F6, 11)];
        for (id, map, through) in cases {
            let mut class = map.avoidance_class();
            let cfg = GenConfig { check: MembershipCheck::ShadowMembership, ..GenConfig::default() };
            class.generate_to(through, &cfg).unwrap();
            for n in 1..=through {
                assert_eq!(
                    class.level(n).unwrap().len() as u128,
                    series_formula(id, n).unwrap(),
                    "{map} at {n}"
                );
            }
        }
    }

    #[test]
    fn the_f3_class_sits_inside_the_f2_class() {
        for member in members_to(ClassMap::F3, 7) {
            assert!(ClassMap::F2.contains(&member), "{member}");
        }
    }

    #[test]
    fn automorphism_tables_form_the_eight_element_group() {
        let group = aut_group_a3(6).unwrap();
        assert_eq!(group.len(), 8);
        let names: Vec<&str> = group.iter().map(|m| m.name.as_str()).collect();
        assert_eq!(names, ["e", "c", "f2", "f3", "c f2", "c f3", "f2 f3", "c f2 f3"]);
        for member in &group {
            assert!(member.compose(member).is_identity(), "{} squared", member.name);
        }
        for a in &group {
            for b in &group {
                let ab = a.compose(b);
                assert_eq!(ab.pairs, b.compose(a).pairs, "{} and {}", a.name, b.name);
                assert!(
                    group.iter().any(|m| m.pairs == ab.pairs),
                    "{} then {} leaves the group",
                    a.name,
                    b.name
                );
            }
        }
    }
}

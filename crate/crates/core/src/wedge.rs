//! The four wedge classes: permutations whose plot fits in a quarter-plane
//! corner. Each is an avoidance class with a two-element basis, each has
//! 2^(n-1) members of length n, and the four are one symmetry orbit.

use crate::perm::Permutation;
use crate::symmetry::Symmetry;

/// One of the four corner orientations. `V` opens upward (its members are
/// valleys), and each successive variant is the previous rotated a quarter
/// turn.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Wedge {
    V,
    V90,
    V180,
    V270,
}

impl Wedge {
    /// All four, in the order used to pick a representative wedge for a
    /// permutation lying in more than one.
    pub const ALL: [Wedge; 4] = [Wedge::V, Wedge::V90, Wedge::V180, Wedge::V270];

    pub fn name(self) -> &'static str {
        match self {
            Wedge::V => "V",
            Wedge::V90 => "V90",
            Wedge::V180 => "V180",
            Wedge::V270 => "V270",
        }
    }

    pub fn basis(self) -> [Permutation; 2] {
        let pair = match self {
            Wedge::V => ["132", "231"],
            Wedge::V90 => ["213", "231"],
            Wedge::V180 => ["213", "312"],
            Wedge::V270 => ["132", "312"],
        };
        pair.map(|s| s.parse().unwrap())
    }

    pub fn contains(self, p: &Permutation) -> bool {
        let [a, b] = self.basis();
        !p.contains(&a) && !p.contains(&b)
    }

    /// The symmetry carrying V270 onto this wedge.
    pub fn symmetry_from_v270(self) -> Symmetry {
        match self {
            Wedge::V => "ir".parse().unwrap(),
            Wedge::V90 => Symmetry::REVERSE,
            Wedge::V180 => "rci".parse().unwrap(),
            Wedge::V270 => Symmetry::IDENTITY,
        }
    }
}

impl std::fmt::Display for Wedge {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// The first wedge containing `p`, in the order of [`Wedge::ALL`], if any.
pub fn wedge_membership(p: &Permutation) -> Option<Wedge> {
    Wedge::ALL.into_iter().find(|w| w.contains(p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::all_of_length;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn wedge_levels_double() {
        for w in Wedge::ALL {
            for n in 1..=8 {
                let count = all_of_length(n).iter().filter(|q| w.contains(q)).count();
                assert_eq!(count, 1 << (n - 1), "{w} at length {n}");
            }
        }
    }

    #[test]
    fn wedges_are_the_symmetry_orbit_of_v270() {
        for w in Wedge::ALL {
            let s = w.symmetry_from_v270();
            for n in 1..=6 {
                let mut image: Vec<Permutation> = all_of_length(n)
                    .into_iter()
                    .filter(|q| Wedge::V270.contains(q))
                    .map(|q| s.apply(&q))
                    .collect();
                image.sort_unstable();
                let direct: Vec<Permutation> =
                    all_of_length(n).into_iter().filter(|q| w.contains(q)).collect();
                assert_eq!(image, direct, "{w} at length {n}");
            }
        }
    }

    #[test]
    fn membership_uses_the_fixed_order()  {
        assert_eq!(wedge_membership(&p("1")), Some(Wedge::V));
        assert_eq!(wedge_membership(&p("12")), Some(Wedge::V));
        assert_eq!(wedge_membership(&p("132")), Some(Wedge::V90));
        assert_eq!(wedge_membership(&p("213")), Some(Wedge::V));
        assert_eq!(wedge_membership(&p("231")), Some(Wedge::V180));
        assert_eq!(wedge_membership(&p("312")), Some(Wedge::V));
        assert_eq!(wedge_membership(&p("2413")), None);
        assert_eq!(wedge_membership(&p("2143")), None);
        assert_eq!(wedge_membership(&p("45367821")), Some(Wedge::V270));
    }

    #[test]
    fn v270_shape_is_rise_up_fall_down() {
        // members split around the first value: larger values increasing,
        // smaller values decreasing
        for n in 2..=7 {
            for q in all_of_length(n) {
                let w = q.values();
                let first = w[0];
                let ups: Vec<u8> = w[1..].iter().copied().filter(|&v| v > first).collect();
                let downs: Vec<u8> = w[1..].iter().copied().filter(|&v| v < first).collect();
                let shaped = ups.windows(2).all(|u| u[0] < u[1])
                    && downs.windows(2).all(|d| d[0] > d[1]);
                assert_eq!(Wedge::V270.contains(&q), shaped, "{q}");
            }
        }
    }
}

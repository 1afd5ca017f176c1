//! The eight symmetries of the containment order, as signed axis maps on
//! permutation plots. Every symmetry is a composition of reverse, complement,
//! and inverse; composing two gives another, so they form a group.

use std::fmt;
use std::str::FromStr;

use crate::error::Error;
use crate::perm::Permutation;

/// A symmetry of the plot of a permutation: optionally swap the axes, then
/// optionally negate each axis. `reverse` negates x, `complement` negates y,
/// `inverse` swaps the axes.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Symmetry {
    pub swap: bool,
    pub flip_x: bool,
    pub flip_y: bool,
}

impl Symmetry {
    pub const IDENTITY: Symmetry = Symmetry { swap: false, flip_x: false, flip_y: false };
    pub const REVERSE: Symmetry = Symmetry { swap: false, flip_x: true, flip_y: false };
    pub const COMPLEMENT: Symmetry = Symmetry { swap: false, flip_x: false, flip_y: true };
    pub const INVERSE: Symmetry = Symmetry { swap: true, flip_x: false, flip_y: false };

    /// All eight symmetries, identity first.
    pub fn all() -> [Symmetry; 8] {
        let f = false;
        let t = true;
        [
            Symmetry { swap: f, flip_x: f, flip_y: f },
            Symmetry { swap: f, flip_x: t, flip_y: f },
            Symmetry { swap: f, flip_x: f, flip_y: t },
            Symmetry { swap: f, flip_x: t, flip_y: t },
            Symmetry { swap: t, flip_x: f, flip_y: f },
            Symmetry { swap: t, flip_x: f, flip_y: t },
            Symmetry { swap: t, flip_x: t, flip_y: f },
            Symmetry { swap: t, flip_x: t, flip_y: t },
        ]
    }

    /// Composition applying `self` first and `other` second.
    pub fn then(self, other: Symmetry) -> Symmetry {
        if other.swap {
            Symmetry {
                swap: !self.swap,
                flip_x: self.flip_y ^ other.flip_x,
                flip_y: self.flip_x ^ other.flip_y,
            }
        } else {
            Symmetry {
                swap: self.swap,
                flip_x: self.flip_x ^ other.flip_x,
                flip_y: self.flip_y ^ other.flip_y,
            }
        }
    }

    pub fn inverse(self) -> Symmetry {
        if self.swap {
            // swapping exchanges the roles of the two flips
            Symmetry { swap: true, flip_x: self.flip_y, flip_y: self.flip_x }
        } else {
            self
        }
    }

    pub fn is_identity(self) -> bool {
        self == Self::IDENTITY
    }

    /// Acts on the plot of `p`: transform every point, sort by x, and read
    /// the y pattern back off.
    pub fn apply(self, p: &Permutation) -> Permutation {
        let mut pts: Vec<(i32, i32)> = p
            .values()
            .iter()
            .enumerate()
            .map(|(j, &v)| (j as i32 + 1, v as i32))
            .collect();
        for pt in &mut pts {
            if self.swap {
                *pt = (pt.1, pt.0);
            }
            if self.flip_x {
                pt.0 = -pt.0;
            }
            if self.flip_y {
                pt.1 = -pt.1;
            }
        }
        pts.sort_unstable();
        let ys: Vec<i32> = pts.iter().map(|pt| pt.1).collect();
        let word: Vec<u8> = ys
            .iter()
            .map(|&y| ys.iter().filter(|&&u| u <= y).count() as u8)
            .collect();
        Permutation::from_word_unchecked(word)
    }

    /// Canonical word in the letters r, c, i (empty composition prints "e").
    pub fn word(self) -> &'static str {
        match (self.swap, self.flip_x, self.flip_y) {
            (false, false, false) => "e",
            (false, true, false) => "r",
            (false, false, true) => "c",
            (false, true, true) => "rc",
            (true, false, false) => "i",
            (true, false, true) => "ri",
            (true, true, false) => "ir",
            (true, true, true) => "rci",
        }
    }
}

impl fmt::Display for Symmetry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.word())
    }
}

impl FromStr for Symmetry {
    type Err = Error;

    /// Parses a word over {e, r, c, i}, applied left to right.
    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::BadSymmetryWord { ch: ' ', pos: 1 });
        }
        let mut acc = Symmetry::IDENTITY;
        for (idx, ch) in s.chars().enumerate() {
            let step = match ch {
                'e' => Symmetry::IDENTITY,
                'r' => Symmetry::REVERSE,
                'c' => Symmetry::COMPLEMENT,
                'i' => Symmetry::INVERSE,
                _ => return Err(Error::BadSymmetryWord { ch, pos: idx + 1 }),
            };
            acc = acc.then(step);
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn the_eight_form_a_group() {
        let all = Symmetry::all();
        assert_eq!(all.len(), 8);
        for &s in &all {
            assert!(all.contains(&s.then(s.inverse())));
            assert_eq!(s.then(s.inverse()), Symmetry::IDENTITY);
            assert_eq!(s.inverse().then(s), Symmetry::IDENTITY);
            assert_eq!(s.then(Symmetry::IDENTITY), s);
            for &t in &all {
                assert!(all.contains(&s.then(t)));
                for &u in &all {
                    assert_eq!(s.then(t).then(u), s.then(t.then(u)));
                }
            }
        }
    }

    #[test]
    fn generators_act_as_named() {
        assert_eq!(Symmetry::REVERSE.apply(&p("2413")), p("3142"));
        assert_eq!(Symmetry::COMPLEMENT.apply(&p("2413")), p("3142"));
        assert_eq!(Symmetry::INVERSE.apply(&p("2413")), p("3142"));
        assert_eq!(Symmetry::REVERSE.apply(&p("132")), p("231"));
        assert_eq!(Symmetry::COMPLEMENT.apply(&p("132")), p("312"));
        assert_eq!(Symmetry::INVERSE.apply(&p("312")), p("231"));
        let rc: Symmetry = "rc".parse().unwrap();
        assert_eq!(rc.apply(&p("2413")), p("2413"));
        assert_eq!(rc.apply(&p("3142")), p("3142"));
    }

    #[test]
    fn apply_respects_composition() {
        let samples = [p("1"), p("21"), p("132"), p("2413"), p("35142"), p("45367821")];
        for &s in &Symmetry::all() {
            for &t in &Symmetry::all() {
                for q in &samples {
                    assert_eq!(
                        t.apply(&s.apply(q)),
                        s.then(t).apply(q),
                        "s={s} t={t} q={q}"
                    );
                }
            }
        }
    }

    #[test]
    fn words_round_trip() {
        for &s in &Symmetry::all() {
            let back: Symmetry = s.word().parse().unwrap();
            assert_eq!(back, s, "{}", s.word());
        }
        assert_eq!("rr".parse::<Symmetry>().unwrap(), Symmetry::IDENTITY);
        assert_eq!(
            "rx".parse::<Symmetry>().unwrap_err(),
            Error::BadSymmetryWord { ch: 'x', pos: 2 }
        );
    }

    #[test]
    fn symmetries_preserve_containment() {
        let hays = [p("2413"), p("35142"), p("413625")];
        let needles = [p("12"), p("21"), p("132"), p("213"), p("2413"), p("3142")];
        for &s in &Symmetry::all() {
            for hay in &hays {
                for needle in &needles {
                    assert_eq!(
                        hay.contains(needle),
                        s.apply(hay).contains(&s.apply(needle)),
                        "s={s} hay={hay} needle={needle}"
                    );
                }
            }
        }
    }

    #[test]
    fn shadow_commutes_with_symmetry() {
        for &s in &Symmetry::all() {
            for q in [p("2413"), p("45367821"), p("25314")] {
                let mapped: Vec<Permutation> =
                    q.shadow().unwrap().iter().map(|e| s.apply(e)).collect();
                let direct = s.apply(&q).shadow().unwrap();
                let mapped = crate::perm::ShadowSet::from_elements(mapped).unwrap();
                assert_eq!(mapped, direct);
            }
        }
    }
}

//! The letter-word coordinates on the downward-opening wedge and the exotic
//! bijection they carry: encode, reverse the word, decode. The map is not a
//! plot symmetry, yet it still respects containment on the wedge.

use std::fmt;
use std::str::FromStr;

use crate::error::Error;
use crate::perm::Permutation;
use crate::wedge::Wedge;

/// A word over the letters a and b. The word of a length-n wedge member has
/// n-1 letters; the empty word encodes the single point.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct AbWord {
    /// true for a, false for b
    letters: Vec<bool>,
}

impl AbWord {
    pub fn new(letters: Vec<bool>) -> AbWord {
        AbWord { letters }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[bool] {
        &self.letters
    }

    pub fn reversed(&self) -> AbWord {
        let mut letters = self.letters.clone();
        letters.reverse();
        AbWord { letters }
    }
}

impl fmt::Display for AbWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &l in &self.letters {
            write!(f, "{}", if l { 'a' } else { 'b' })?;
        }
        Ok(())
    }
}

impl FromStr for AbWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<AbWord, Error> {
        let mut letters = Vec::with_capacity(s.len());
        for (i, ch) in s.chars().enumerate() {
            match ch {
                'a' => letters.push(true),
                'b' => letters.push(false),
                _ => return Err(Error::BadAbWord { ch, pos: i + 1 }),
            }
        }
        Ok(AbWord { letters })
    }
}

/// The word of a permutation: one letter per point after the first, a if the
/// point lies above the first value, b if below. Faithful exactly on the
/// downward-opening wedge, where `omega_decode` inverts it.
pub fn omega_encode(p: &Permutation) -> AbWord {
    let w = p.values();
    AbWord { letters: w[1..].iter().map(|&v| v > w[0]).collect() }
}

/// The unique member of the downward-opening wedge with the given word: the
/// first value is one more than the number of b's, the a positions climb from
/// there, the b positions descend.
pub fn omega_decode(word: &AbWord) -> Result<Permutation, Error> {
    if word.len() > u8::MAX as usize - 1 {
        return Err(Error::WordTooLong);
    }
    let bs = word.letters.iter().filter(|&&l| !l).count() as u8;
    let first = bs + 1;
    let mut out = Vec::with_capacity(word.len() + 1);
    out.push(first);
    let mut up = first;
    let mut down = first;
    for &l in &word.letters {
        if l {
            up += 1;
            out.push(up);
        } else {
            down -= 1;
            out.push(down);
        }
    }
    Ok(Permutation::from_slice(&out).expect("decoded words are permutations"))
}

/// The exotic bijection of the downward-opening wedge: encode, reverse the
/// word, decode. An involution, and not the restriction of any plot symmetry.
pub fn exotic(p: &Permutation) -> Result<Permutation, Error> {
    if !Wedge::V270.contains(p) {
        return Err(Error::NotInClass { class: "V270", perm: p.to_string() });
    }
    omega_decode(&omega_encode(p).reversed())
}

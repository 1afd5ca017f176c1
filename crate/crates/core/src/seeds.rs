//! Seed bijections: the isomorphisms of the nine-element backbone class that
//! every extension run starts from, plus their classification up to symmetry
//! and the groups they form.

use std::fmt;

use crate::error::Error;
use crate::perm::Permutation;
use crate::symmetry::Symmetry;

/// The backbone elements of length two and more, in the fixed order indices
/// refer to. The single point is omitted; every seed fixes it.
const R_WORDS: [&str; 8] = ["12", "21", "132", "213", "231", "312", "2413", "3142"];

/// The nontrivial backbone elements in index order: both of length two, the
/// four nonmonotone of length three, then the two crossings.
pub fn r_elements() -> [Permutation; 8] {
    R_WORDS.map(|s| s.parse().unwrap())
}

fn r_index(p: &Permutation) -> Option<usize> {
    r_elements().iter().position(|e| e == p)
}

/// A containment isomorphism of the backbone class, stored as the image
/// index of each element of [`r_elements`]. The valid ones are exactly the
/// index bijections preserving the three length blocks.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct SeedBijection {
    images: [u8; 8],
}

impl SeedBijection {
    pub fn new(images: [u8; 8]) -> Result<SeedBijection, Error> {
        let mut seen = [false; 8];
        for (i, &img) in images.iter().enumerate() {
            let img = img as usize;
            if img >= 8 {
                return Err(Error::InvalidSeed(format!("image index {img} out of range")));
            }
            if seen[img] {
                return Err(Error::InvalidSeed(format!("image index {img} repeated")));
            }
            seen[img] = true;
            let blocks = [0, 0, 1, 1, 1, 1, 2, 2];
            if blocks[i] != blocks[img] {
                return Err(Error::InvalidSeed(format!(
                    "{} and its image {} have different lengths",
                    R_WORDS[i], R_WORDS[img]
                )));
            }
        }
        Ok(SeedBijection { images })
    }

    pub fn from_images(images: [u8; 8]) -> Result<SeedBijection, Error> {
        Self::new(images)
    }

    pub fn identity() -> SeedBijection {
        SeedBijection { images: [0, 1, 2, 3, 4, 5, 6, 7] }
    }

    /// The six named seeds. Panics unless `1 <= i <= 6`.
    pub fn h(i: usize) -> SeedBijection {
        let images = match i {
            1 => [0, 1, 2, 3, 4, 5, 6, 7],
            2 => [0, 1, 2, 3, 4, 5, 7, 6],
            3 => [0, 1, 2, 4, 3, 5, 6, 7],
            4 => [0, 1, 2, 4, 3, 5, 7, 6],
            5 => [0, 1, 4, 5, 2, 3, 6, 7],
            6 => [0, 1, 4, 5, 3, 2, 6, 7],
            _ => panic!("seeds are numbered 1 through 6, got {i}"),
        };
        SeedBijection { images }
    }

    /// Every valid seed, sorted by image array: two choices on the length-two
    /// block, twenty-four on the middle, two on the crossings.
    pub fn all() -> Vec<SeedBijection> {
        fn perms_of(idx: &[u8]) -> Vec<Vec<u8>> {
            if idx.len() == 1 {
                return vec![idx.to_vec()];
            }
            let mut out = Vec::new();
            for (i, &first) in idx.iter().enumerate() {
                let rest: Vec<u8> =
                    idx.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &v)| v).collect();
                for mut tail in perms_of(&rest) {
                    tail.insert(0, first);
                    out.push(tail);
                }
            }
            out
        }
        let mut all = Vec::with_capacity(96);
        for low in perms_of(&[0, 1]) {
            for mid in perms_of(&[2, 3, 4, 5]) {
                for high in perms_of(&[6, 7]) {
                    let mut images = [0u8; 8];
                    images[..2].copy_from_slice(&low);
                    images[2..6].copy_from_slice(&mid);
                    images[6..].copy_from_slice(&high);
                    all.push(SeedBijection { images });
                }
            }
        }
        all.sort_unstable();
        all
    }

    pub fn images(&self) -> [u8; 8] {
        self.images
    }

    /// Image of a backbone element; None off the backbone. The point maps to
    /// itself.
    pub fn apply(&self, p: &Permutation) -> Option<Permutation> {
        if p.len() == 1 {
            return Some(p.clone());
        }
        let idx = r_index(p)?;
        Some(r_elements()[self.images[idx] as usize].clone())
    }

    /// `self` first, then `other`.
    pub fn compose(&self, other: &SeedBijection) -> SeedBijection {
        let mut images = [0u8; 8];
        for i in 0..8 {
            images[i] = other.images[self.images[i] as usize];
        }
        SeedBijection { images }
    }

    pub fn inverse(&self) -> SeedBijection {
        let mut images = [0u8; 8];
        for i in 0..8 {
            images[self.images[i] as usize] = i as u8;
        }
        SeedBijection { images }
    }

    /// The seed a plot symmetry restricts to. Every symmetry maps the
    /// backbone onto itself, so this is total.
    pub fn restriction(sym: Symmetry) -> SeedBijection {
        let mut images = [0u8; 8];
        for (i, e) in r_elements().iter().enumerate() {
            images[i] = r_index(&sym.apply(e)).expect("the backbone is symmetry-closed") as u8;
        }
        SeedBijection { images }
    }

    pub fn to_pairs(&self) -> Vec<(Permutation, Permutation)> {
        let elems = r_elements();
        (0..8).map(|i| (elems[i].clone(), elems[self.images[i] as usize].clone())).collect()
    }

    /// The fixed name of this seed if it is one of the six, like "h2".
    pub fn name(&self) -> Option<&'static str> {
        const NAMES: [&str; 6] = ["h1", "h2", "h3", "h4", "h5", "h6"];
        (1..=6).find(|&i| SeedBijection::h(i) == *self).map(|i| NAMES[i - 1])
    }

    /// `name()` when the seed has one, otherwise its image indices.
    pub fn label(&self) -> String {
        match self.name() {
            Some(name) => name.to_string(),
            None => {
                let digits: Vec<String> = self.images.iter().map(u8::to_string).collect();
                digits.join("")
            }
        }
    }
}

impl fmt::Display for SeedBijection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// One equivalence class of seeds under pre- and post-composition with
/// symmetry restrictions.
#[derive(Clone, Debug)]
pub struct SeedOrbit {
    pub representative: SeedBijection,
    /// Number of the named seed in the orbit (1 through 6), or 0 if none is.
    pub rep_index: usize,
    /// All members, sorted.
    pub members: Vec<SeedBijection>,
}

/// Partitions all 96 seeds into equivalence classes: two seeds are equivalent
/// when one becomes the other by applying a symmetry before and another
/// after. Orbits are returned in representative-number order.
pub fn classify_seeds() -> Vec<SeedOrbit> {
    let restrictions: Vec<SeedBijection> =
        Symmetry::all().iter().map(|&s| SeedBijection::restriction(s)).collect();
    let mut remaining: Vec<SeedBijection> = SeedBijection::all();
    let mut orbits = Vec::new();
    while let Some(start) = remaining.first().copied() {
        let mut members: Vec<SeedBijection> = restrictions
            .iter()
            .flat_map(|mu| {
                restrictions.iter().map(move |nu| mu.compose(&start).compose(nu))
            })
            .collect();
        members.sort_unstable();
        members.dedup();
        remaining.retain(|s| members.binary_search(s).is_err());
        let rep_index = (1..=6).find(|&i| members.binary_search(&SeedBijection::h(i)).is_ok());
        let representative = match rep_index {
            Some(i) => SeedBijection::h(i),
            None => members[0],
        };
        orbits.push(SeedOrbit { representative, rep_index: rep_index.unwrap_or(0), members });
    }
    orbits.sort_by_key(|o| (o.rep_index, o.members[0]));
    orbits
}

/// A set of seeds closed under composition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeedGroup {
    elements: Vec<SeedBijection>,
}

impl SeedGroup {
    /// Validates closure under composition (which, for a finite set of
    /// bijections, makes it a group).
    pub fn new(elements: Vec<SeedBijection>) -> Result<SeedGroup, Error> {
        let mut elements = elements;
        elements.sort_unstable();
        elements.dedup();
        if elements.is_empty() {
            return Err(Error::GroupNotClosed("the identity".to_string()));
        }
        for a in &elements {
            for b in &elements {
                let c = a.compose(b);
                if elements.binary_search(&c).is_err() {
                    return Err(Error::GroupNotClosed(c.label()));
                }
            }
        }
        Ok(SeedGroup { elements })
    }

    /// The closure of `gens` under composition.
    pub fn generated_by(gens: &[SeedBijection]) -> SeedGroup {
        let mut elements = vec![SeedBijection::identity()];
        elements.extend_from_slice(gens);
        elements.sort_unstable();
        elements.dedup();
        loop {
            let mut fresh = Vec::new();
            for a in &elements {
                for b in &elements {
                    let c = a.compose(b);
                    if elements.binary_search(&c).is_err() {
                        fresh.push(c);
                    }
                }
            }
            if fresh.is_empty() {
                break;
            }
            elements.extend(fresh);
            elements.sort_unstable();
            elements.dedup();
        }
        SeedGroup { elements }
    }

    /// All 96 seeds: the full isomorphism group of the backbone.
    pub fn aut_r() -> SeedGroup {
        SeedGroup { elements: SeedBijection::all() }
    }

    pub fn elements(&self) -> &[SeedBijection] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        false // a valid group has at least the identity
    }

    pub fn contains(&self, seed: &SeedBijection) -> bool {
        self.elements.binary_search(seed).is_ok()
    }
}

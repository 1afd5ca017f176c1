//! Permutations in one-line notation and the containment-order primitives:
//! pattern containment, the shadow (lower covers), one-point extensions,
//! sums, inflation, and block decompositions.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, ParseError};

/// A permutation of {1, ..., n} in one-line notation, n >= 1. Equality and
/// hashing are value-based. The order is by length first, then lexicographic
/// on the word, so sorted lists group into levels.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    word: Vec<u8>,
}

impl PartialOrd for Permutation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Permutation {
    fn cmp(&self, other: &Self) -> Ordering {
        self.word.len().cmp(&other.word.len()).then_with(|| self.word.cmp(&other.word))
    }
}

impl Permutation {
    /// Validates that `word` is a permutation of 1..=n.
    pub fn new(word: Vec<u8>) -> Result<Self, Error> {
        if word.is_empty() {
            return Err(Error::EmptyPermutation);
        }
        if word.len() > u8::MAX as usize {
            return Err(Error::TooLong);
        }
        let n = word.len();
        let mut seen = vec![false; n + 1];
        for (i, &v) in word.iter().enumerate() {
            if v == 0 || v as usize > n {
                return Err(ParseError::OutOfRange { value: v as usize, len: n, pos: i + 1 }.into());
            }
            if seen[v as usize] {
                return Err(ParseError::Repeated { value: v as usize, pos: i + 1 }.into());
            }
            seen[v as usize] = true;
        }
        Ok(Permutation { word })
    }

    pub fn from_slice(word: &[u8]) -> Result<Self, Error> {
        Self::new(word.to_vec())
    }

    /// The word is trusted to be a permutation of 1..=n. Used on internally
    /// constructed words; debug builds still verify.
    pub(crate) fn from_word_unchecked(word: Vec<u8>) -> Self {
        debug_assert!(Permutation::new(word.clone()).is_ok());
        Permutation { word }
    }

    /// The identity 12...n.
    pub fn increasing(n: usize) -> Result<Self, Error> {
        if n == 0 {
            return Err(Error::EmptyPermutation);
        }
        if n > u8::MAX as usize {
            return Err(Error::TooLong);
        }
        Ok(Permutation { word: (1..=n as u8).collect() })
    }

    /// The reversal n...21.
    pub fn decreasing(n: usize) -> Result<Self, Error> {
        let mut p = Self::increasing(n)?;
        p.word.reverse();
        Ok(p)
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        false // permutations are nonempty by construction
    }

    pub fn values(&self) -> &[u8] {
        &self.word
    }

    pub fn is_increasing(&self) -> bool {
        self.word.windows(2).all(|w| w[0] < w[1])
    }

    pub fn is_decreasing(&self) -> bool {
        self.word.windows(2).all(|w| w[0] > w[1])
    }

    /// The pattern of an arbitrary sequence of distinct values: values are
    /// replaced by their ranks.
    pub fn pattern_of(values: &[u8]) -> Result<Self, Error> {
        if values.is_empty() {
            return Err(Error::EmptyPermutation);
        }
        let mut word = Vec::with_capacity(values.len());
        for &v in values {
            let rank = values.iter().filter(|&&u| u <= v).count();
            word.push(rank as u8);
        }
        Permutation::new(word)
    }

    /// Deletes the point at `pos` (0-based) and renormalizes.
    pub fn delete(&self, pos: usize) -> Result<Self, Error> {
        if self.len() == 1 {
            return Err(Error::ShadowOfPoint);
        }
        assert!(pos < self.len());
        let removed = self.word[pos];
        let word = self
            .word
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != pos)
            .map(|(_, &v)| if v > removed { v - 1 } else { v })
            .collect();
        Ok(Permutation { word })
    }

    /// The set of patterns reachable by deleting one point; these are exactly
    /// the lower covers in the containment order.
    pub fn shadow(&self) -> Result<ShadowSet, Error> {
        if self.len() == 1 {
            return Err(Error::ShadowOfPoint);
        }
        let mut elems: Vec<Permutation> =
            (0..self.len()).map(|i| self.delete(i).unwrap()).collect();
        elems.sort_unstable();
        elems.dedup();
        Ok(ShadowSet { elems })
    }

    /// All distinct permutations of length n+1 whose shadow contains `self`:
    /// one for each insertion position and value, deduplicated. Sorted.
    pub fn one_point_extensions(&self) -> Vec<Permutation> {
        let n = self.len();
        let mut out = Vec::with_capacity((n + 1) * (n + 1));
        for pos in 0..=n {
            for val in 1..=(n as u8 + 1) {
                out.push(self.insert(pos, val));
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Inserts `val` at `pos` (0-based), shifting existing values >= `val` up.
    pub(crate) fn insert(&self, pos: usize, val: u8) -> Permutation {
        debug_assert!(pos <= self.len());
        debug_assert!(val >= 1 && val as usize <= self.len() + 1);
        let mut word = Vec::with_capacity(self.len() + 1);
        for (i, &v) in self.word.iter().enumerate() {
            if i == pos {
                word.push(val);
            }
            word.push(if v >= val { v + 1 } else { v });
        }
        if pos == self.len() {
            word.push(val);
        }
        Permutation { word }
    }

    /// Pattern containment: true iff some subsequence of `self` is
    /// order-isomorphic to `needle`. Backtracking over positions; each
    /// candidate value only needs checking against the tightest chosen
    /// neighbours of the needle value, found by precomputed indices.
    pub fn contains(&self, needle: &Permutation) -> bool {
        let n = self.len();
        let k = needle.len();
        if k > n {
            return false;
        }
        if k == n {
            return self == needle;
        }
        // below[j] / above[j]: index i < j maximizing / minimizing needle[i]
        // among those smaller / larger than needle[j].
        let nw = &needle.word;
        let mut below = vec![usize::MAX; k];
        let mut above = vec![usize::MAX; k];
        for j in 1..k {
            let mut lo: Option<usize> = None;
            let mut hi: Option<usize> = None;
            for i in 0..j {
                if nw[i] < nw[j] && lo.map_or(true, |b| nw[i] > nw[b]) {
                    lo = Some(i);
                }
                if nw[i] > nw[j] && hi.map_or(true, |a| nw[i] < nw[a]) {
                    hi = Some(i);
                }
            }
            below[j] = lo.unwrap_or(usize::MAX);
            above[j] = hi.unwrap_or(usize::MAX);
        }
        let mut chosen = Vec::with_capacity(k);
        self.search(&below, &above, k, 0, &mut chosen)
    }

    fn search(
        &self,
        below: &[usize],
        above: &[usize],
        k: usize,
        start: usize,
        chosen: &mut Vec<u8>,
    ) -> bool {
        let j = chosen.len();
        if j == k {
            return true;
        }
        let last = self.len() - (k - j);
        for i in start..=last {
            let v = self.word[i];
            if below[j] != usize::MAX && v <= chosen[below[j]] {
                continue;
            }
            if above[j] != usize::MAX && v >= chosen[above[j]] {
                continue;
            }
            chosen.push(v);
            if self.search(below, above, k, i + 1, chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }

    pub fn avoids(&self, needle: &Permutation) -> bool {
        !self.contains(needle)
    }

    /// Direct sum: `self` followed by `other` shifted above it.
    pub fn direct_sum(&self, other: &Permutation) -> Result<Permutation, Error> {
        let n = self.len() + other.len();
        if n > u8::MAX as usize {
            return Err(Error::TooLong);
        }
        let shift = self.len() as u8;
        let mut word = self.word.clone();
        word.extend(other.word.iter().map(|&v| v + shift));
        Ok(Permutation { word })
    }

    /// Skew sum: `self` shifted above and placed before `other`.
    pub fn skew_sum(&self, other: &Permutation) -> Result<Permutation, Error> {
        let n = self.len() + other.len();
        if n > u8::MAX as usize {
            return Err(Error::TooLong);
        }
        let shift = other.len() as u8;
        let mut word: Vec<u8> = self.word.iter().map(|&v| v + shift).collect();
        word.extend_from_slice(&other.word);
        Ok(Permutation { word })
    }

    /// Inflation: each point of `self` is replaced by the corresponding part,
    /// blocks laid out in position order with value ranges ordered as the
    /// skeleton's values.
    pub fn inflate(&self, parts: &[Permutation]) -> Result<Permutation, Error> {
        if parts.len() != self.len() {
            return Err(Error::InflationArity { skeleton: self.len(), parts: parts.len() });
        }
        let total: usize = parts.iter().map(|p| p.len()).sum();
        if total > u8::MAX as usize {
            return Err(Error::TooLong);
        }
        // offset for block j = total size of blocks with smaller skeleton value
        let mut offsets = vec![0u8; self.len()];
        for (j, &vj) in self.word.iter().enumerate() {
            let mut off = 0usize;
            for (k, &vk) in self.word.iter().enumerate() {
                if vk < vj {
                    off += parts[k].len();
                }
            }
            offsets[j] = off as u8;
        }
        let mut word = Vec::with_capacity(total);
        for (j, part) in parts.iter().enumerate() {
            word.extend(part.word.iter().map(|&v| v + offsets[j]));
        }
        Ok(Permutation { word })
    }

    /// True iff the only intervals (contiguous positions whose values form a
    /// consecutive range) are the singletons and the permutation itself.
    pub fn is_simple(&self) -> bool {
        let n = self.len();
        for i in 0..n {
            let mut min = self.word[i];
            let mut max = self.word[i];
            for j in i + 1..n {
                min = min.min(self.word[j]);
                max = max.max(self.word[j]);
                let len = j - i + 1;
                if len == n {
                    break;
                }
                if (max - min) as usize == j - i {
                    return false;
                }
            }
        }
        true
    }

    /// Splits off the shortest proper prefix holding values 1..=k, if any.
    /// The first part is sum-indecomposable.
    pub fn sum_decompose(&self) -> Option<(Permutation, Permutation)> {
        let n = self.len();
        let mut max = 0u8;
        for k in 1..n {
            max = max.max(self.word[k - 1]);
            if max as usize == k {
                let head = Permutation { word: self.word[..k].to_vec() };
                let tail = Permutation {
                    word: self.word[k..].iter().map(|&v| v - k as u8).collect(),
                };
                return Some((head, tail));
            }
        }
        None
    }

    /// Splits off the shortest proper prefix holding the top k values, if
    /// any. The first part is skew-indecomposable.
    pub fn skew_decompose(&self) -> Option<(Permutation, Permutation)> {
        let n = self.len();
        let mut min = u8::MAX;
        for k in 1..n {
            min = min.min(self.word[k - 1]);
            if min as usize == n - k + 1 {
                let head = Permutation {
                    word: self.word[..k].iter().map(|&v| v - (n - k) as u8).collect(),
                };
                let tail = Permutation { word: self.word[k..].to_vec() };
                return Some((head, tail));
            }
        }
        None
    }

    pub fn reverse(&self) -> Permutation {
        let mut word = self.word.clone();
        word.reverse();
        Permutation { word }
    }

    pub fn complement(&self) -> Permutation {
        let n = self.len() as u8;
        Permutation { word: self.word.iter().map(|&v| n + 1 - v).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut word = vec![0u8; self.len()];
        for (i, &v) in self.word.iter().enumerate() {
            word[v as usize - 1] = i as u8 + 1;
        }
        Permutation { word }
    }
}

impl fmt::Display for Permutation {
    /// Compact digits for lengths up to 9, space-separated values beyond.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.len() <= 9 {
            for v in &self.word {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            let mut first = true;
            for v in &self.word {
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{v}")?;
                first = false;
            }
            Ok(())
        }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Permutation {
    type Err = ParseError;

    /// Accepts both text forms: compact digit strings and whitespace-separated
    /// values.
    fn from_str(s: &str) -> Result<Self, ParseError> {
        let s = s.trim();
        if s.is_empty() {
            return Err(ParseError::Empty);
        }
        let word: Vec<u8> = if s.contains(char::is_whitespace) {
            let mut vals = Vec::new();
            for (i, tok) in s.split_whitespace().enumerate() {
                let v: usize = tok
                    .parse()
                    .map_err(|_| ParseError::BadToken { text: tok.to_string(), pos: i + 1 })?;
                if v == 0 || v > u8::MAX as usize {
                    return Err(ParseError::OutOfRange { value: v, len: u8::MAX as usize, pos: i + 1 });
                }
                vals.push(v as u8);
            }
            vals
        } else {
            let mut vals = Vec::new();
            for (i, ch) in s.chars().enumerate() {
                match ch.to_digit(10) {
                    Some(d) if d >= 1 => vals.push(d as u8),
                    _ => return Err(ParseError::BadChar { ch, pos: i + 1 }),
                }
            }
            vals
        };
        match Permutation::new(word) {
            Ok(p) => Ok(p),
            Err(Error::Parse(e)) => Err(e),
            Err(_) => Err(ParseError::Empty),
        }
    }
}

/// The shadow of a permutation: its set of lower covers. Canonically sorted,
/// all elements of equal length, between 1 and n elements for a source of
/// length n.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ShadowSet {
    elems: Vec<Permutation>,
}

impl ShadowSet {
    /// Builds a shadow-shaped set from arbitrary elements (used for image
    /// sets under a partial map). Sorts, deduplicates, and checks lengths.
    pub fn from_elements(elems: Vec<Permutation>) -> Result<Self, Error> {
        if elems.is_empty() {
            return Err(Error::EmptyShadowSet);
        }
        let len = elems[0].len();
        for e in &elems {
            if e.len() != len {
                return Err(Error::MixedShadowLengths { a: len, b: e.len() });
            }
        }
        let mut elems = elems;
        elems.sort_unstable();
        elems.dedup();
        Ok(ShadowSet { elems })
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        false // nonempty by construction
    }

    /// Length of the permutations this is a shadow of.
    pub fn target_length(&self) -> usize {
        self.elems[0].len() + 1
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.elems.binary_search(p).is_ok()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Permutation> {
        self.elems.iter()
    }
}

/// Every permutation of a given length, in sorted order. Test support.
#[cfg(test)]
pub(crate) fn all_of_length(n: usize) -> Vec<Permutation> {
    fn rec(word: &mut Vec<u8>, used: &mut [bool], n: usize, out: &mut Vec<Permutation>) {
        if word.len() == n {
            out.push(Permutation::from_slice(word).unwrap());
            return;
        }
        for v in 1..=n as u8 {
            if !used[v as usize] {
                used[v as usize] = true;
                word.push(v);
                rec(word, used, n, out);
                word.pop();
                used[v as usize] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n + 1], n, &mut out);
    out
}

impl fmt::Display for ShadowSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for e in &self.elems {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{e}")?;
            first = false;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    /// Reference containment: try every subsequence of the right length.
    fn contains_bruteforce(hay: &Permutation, needle: &Permutation) -> bool {
        let n = hay.len();
        let k = needle.len();
        if k > n {
            return false;
        }
        fn rec(hay: &[u8], needle: &Permutation, start: usize, picked: &mut Vec<u8>) -> bool {
            if picked.len() == needle.len() {
                return &Permutation::pattern_of(picked).unwrap() == needle;
            }
            for i in start..hay.len() {
                picked.push(hay[i]);
                if rec(hay, needle, i + 1, picked) {
                    return true;
                }
                picked.pop();
            }
            false
        }
        rec(hay.values(), needle, 0, &mut Vec::new())
    }

    use super::all_of_length as all_perms;

    #[test]
    fn parse_and_display_round_trip() {
        for s in ["1", "2413", "45367821"] {
            assert_eq!(p(s).to_string(), s);
        }
        let long = "10 1 2 3 4 5 6 7 8 9";
        assert_eq!(p(long).to_string(), long);
        // compact and spaced forms agree
        assert_eq!(p("2413"), p("2 4 1 3"));
    }

    #[test]
    fn parse_rejects_bad_input() {
        assert_eq!("".parse::<Permutation>(), Err(ParseError::Empty));
        assert_eq!(
            "2403".parse::<Permutation>(),
            Err(ParseError::BadChar { ch: '0', pos: 3 })
        );
        assert_eq!(
            "132 2".parse::<Permutation>(),
            Err(ParseError::OutOfRange { value: 132, len: 2, pos: 1 })
        );
        assert_eq!(
            "1323".parse::<Permutation>(),
            Err(ParseError::Repeated { value: 3, pos: 4 })
        );
        assert_eq!(
            "12x".parse::<Permutation>(),
            Err(ParseError::BadChar { ch: 'x', pos: 3 })
        );
    }

    #[test]
    fn containment_matches_bruteforce_exhaustively() {
        // every (haystack, needle) pair with |hay| <= 6, |needle| <= 4
        for n in 1..=6 {
            for hay in all_perms(n) {
                for k in 1..=4.min(n) {
                    for needle in all_perms(k) {
                        assert_eq!(
                            hay.contains(&needle),
                            contains_bruteforce(&hay, &needle),
                            "hay={hay} needle={needle}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn containment_examples() {
        assert!(p("2413").contains(&p("132")));
        assert!(p("2413").contains(&p("2413")));
        assert!(!p("2413").contains(&p("123")));
        assert!(!p("132").contains(&p("2413")));
        assert!(p("14253").contains(&p("1324")));
    }

    #[test]
    fn shadow_of_2413_is_the_four_nonmonotone() {
        let s = p("2413").shadow().unwrap();
        let want: Vec<Permutation> =
            ["132", "213", "231", "312"].iter().map(|s| p(s)).collect();
        assert_eq!(s.elements(), &want[..]);
        assert_eq!(p("3142").shadow().unwrap().elements(), &want[..]);
    }

    #[test]
    fn shadow_of_point_is_rejected() {
        assert_eq!(p("1").shadow().unwrap_err(), Error::ShadowOfPoint);
    }

    #[test]
    fn extensions_are_exactly_the_upper_covers() {
        // defining property: q is an extension of p iff p is in q's shadow
        for n in 1..=5 {
            for q in all_perms(n + 1) {
                let sh = q.shadow().unwrap();
                for pp in all_perms(n) {
                    let is_ext = pp.one_point_extensions().contains(&q);
                    assert_eq!(is_ext, sh.contains(&pp), "p={pp} q={q}");
                }
            }
        }
    }

    #[test]
    fn extensions_of_12() {
        let ext = p("12").one_point_extensions();
        let want: Vec<Permutation> =
            ["123", "132", "213", "231", "312"].iter().map(|s| p(s)).collect();
        assert_eq!(ext, want);
    }

    #[test]
    fn sums_and_inflation() {
        assert_eq!(p("1").direct_sum(&p("2413")).unwrap(), p("13524"));
        assert_eq!(p("21").inflate(&[p("21"), p("12")]).unwrap(), p("4312"));
        assert_eq!(p("12").inflate(&[p("1"), p("2413")]).unwrap(), p("13524"));
        assert_eq!(p("1").skew_sum(&p("12")).unwrap(), p("312"));
        assert_eq!(
            p("2413").inflate(&[p("1"), p("1"), p("1"), p("1")]).unwrap(),
            p("2413")
        );
        assert_eq!(
            p("12").inflate(&[p("1")]).unwrap_err(),
            Error::InflationArity { skeleton: 2, parts: 1 }
        );
    }

    #[test]
    fn sum_decompose_recovers_parts() {
        assert_eq!(p("13524").sum_decompose().unwrap(), (p("1"), p("2413")));
        assert_eq!(p("2413").sum_decompose(), None);
        assert_eq!(p("4312").skew_decompose().unwrap(), (p("1"), p("312")));
        assert_eq!(p("2413").skew_decompose(), None);
        // first part of a sum decomposition is sum-indecomposable
        for n in 2..=6 {
            for q in all_perms(n) {
                if let Some((a, b)) = q.sum_decompose() {
                    assert_eq!(a.direct_sum(&b).unwrap(), q);
                    assert!(a.sum_decompose().is_none());
                }
                if let Some((a, b)) = q.skew_decompose() {
                    assert_eq!(a.skew_sum(&b).unwrap(), q);
                    assert!(a.skew_decompose().is_none());
                }
            }
        }
    }

    #[test]
    fn simplicity() {
        assert!(p("2413").is_simple());
        assert!(p("3142").is_simple());
        assert!(!p("1342").is_simple());
        assert!(!p("123").is_simple());
        assert!(p("1").is_simple());
        assert!(p("12").is_simple());
        // the only simple permutations of length 4
        let simples: Vec<Permutation> =
            all_perms(4).into_iter().filter(|q| q.is_simple()).collect();
        assert_eq!(simples, vec![p("2413"), p("3142")]);
        assert!(all_perms(3).iter().all(|q| !q.is_simple()));
    }

    #[test]
    fn simple_members_of_length_five() {
        let simples: Vec<Permutation> =
            all_perms(5).into_iter().filter(|q| q.is_simple()).collect();
        assert_eq!(simples.len(), 6);
        for s in ["24153", "25314", "31524", "35142", "41352", "42513"] {
            assert!(simples.contains(&p(s)), "{s}");
        }
    }

    #[test]
    fn monotone_checks() {
        assert!(p("1234").is_increasing());
        assert!(!p("1243").is_increasing());
        assert!(p("321").is_decreasing());
        assert!(p("1").is_increasing() && p("1").is_decreasing());
    }

    #[test]
    fn shadow_set_construction_validates() {
        assert_eq!(
            ShadowSet::from_elements(vec![]).unwrap_err(),
            Error::EmptyShadowSet
        );
        assert_eq!(
            ShadowSet::from_elements(vec![p("12"), p("132")]).unwrap_err(),
            Error::MixedShadowLengths { a: 2, b: 3 }
        );
        let s = ShadowSet::from_elements(vec![p("21"), p("12"), p("21")]).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s.target_length(), 3);
        assert_eq!(s.to_string(), "12 21");
    }

    #[test]
    fn shadow_sizes_are_within_bounds() {
        for n in 2..=6 {
            for q in all_perms(n) {
                let s = q.shadow().unwrap();
                assert!(s.len() >= 1 && s.len() <= n);
                for e in s.iter() {
                    assert_eq!(e.len(), n - 1);
                    assert!(q.contains(e));
                }
            }
        }
    }
}

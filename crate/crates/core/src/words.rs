//! Alphabet, bipartition and word-level predicates.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Deref;

use crate::codes::Code;
use crate::error::{Error, Result};

/// Largest alphabet size supported; membership in `I` is a 64-bit table.
pub const MAX_Q: u8 = 64;

/// A split of `Z_q` into two disjoint non-empty classes `I` and `J`.
///
/// `I` is stored as a bit table over the alphabet; `J` is its complement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bipartition {
    q: u8,
    i_mask: u64,
    size_i: u8,
}

impl Bipartition {
    /// Builds the bipartition with the given `I`; `J` is everything else.
    pub fn new(q: u8, i_symbols: &[u8]) -> Result<Self> {
        if !(2..=MAX_Q).contains(&q) {
            return Err(Error::invalid(format!(
                "alphabet size q={q} must be in 2..={MAX_Q}"
            )));
        }
        let mut mask = 0u64;
        for &s in i_symbols {
            if s >= q {
                return Err(Error::invalid(format!("symbol {s} outside Z_{q}")));
            }
            mask |= 1 << s;
        }
        let size_i = mask.count_ones() as u8;
        if size_i == 0 {
            return Err(Error::invalid("class I must be non-empty"));
        }
        if size_i == q {
            return Err(Error::invalid("class J must be non-empty"));
        }
        Ok(Bipartition {
            q,
            i_mask: mask,
            size_i,
        })
    }

    /// `I = {0}`, `J = {1, ..., q-1}`.
    pub fn classic(q: u8) -> Result<Self> {
        Self::new(q, &[0])
    }

    pub fn q(&self) -> u8 {
        self.q
    }

    pub fn i_mask(&self) -> u64 {
        self.i_mask
    }

    #[inline]
    pub fn in_i(&self, s: u8) -> bool {
        s < self.q && self.i_mask >> s & 1 == 1
    }

    #[inline]
    pub fn in_j(&self, s: u8) -> bool {
        s < self.q && self.i_mask >> s & 1 == 0
    }

    pub fn size_i(&self) -> u64 {
        self.size_i as u64
    }

    pub fn size_j(&self) -> u64 {
        (self.q - self.size_i) as u64
    }

    pub fn i_symbols(&self) -> impl Iterator<Item = u8> + '_ {
        (0..self.q).filter(|&s| self.in_i(s))
    }

    pub fn j_symbols(&self) -> impl Iterator<Item = u8> + '_ {
        (0..self.q).filter(|&s| self.in_j(s))
    }

    pub fn min_i(&self) -> u8 {
        self.i_mask.trailing_zeros() as u8
    }

    pub fn min_j(&self) -> u8 {
        (!self.i_mask).trailing_zeros() as u8
    }
}

impl fmt::Display for Bipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q={} I=", self.q)?;
        for (idx, s) in self.i_symbols().enumerate() {
            if idx > 0 {
                f.write_str(",")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

/// A fixed-length word over `Z_q`. Ordering is lexicographic with numeric
/// symbol comparison.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn new(symbols: Vec<u8>) -> Self {
        Word(symbols)
    }

    pub fn from_slice(symbols: &[u8]) -> Self {
        Word(symbols.to_vec())
    }

    pub fn symbols(&self) -> &[u8] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<u8> {
        self.0
    }

    /// Checks every symbol lies in `Z_q`.
    pub fn check_alphabet(&self, q: u8) -> Result<()> {
        match self.0.iter().find(|&&s| s >= q) {
            Some(s) => Err(Error::invalid(format!("symbol {s} outside Z_{q}"))),
            None => Ok(()),
        }
    }

    /// Parses the text form: a digit string for `q <= 10`, otherwise
    /// comma-separated decimal symbols.
    pub fn parse(text: &str, q: u8) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() {
            return Err(Error::invalid("empty word"));
        }
        let symbols: Vec<u8> = if q <= 10 {
            text.chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as u8)
                        .ok_or_else(|| Error::invalid(format!("bad symbol {c:?} in word {text:?}")))
                })
                .collect::<Result<_>>()?
        } else {
            text.split(',')
                .map(|tok| {
                    tok.trim()
                        .parse::<u8>()
                        .map_err(|_| Error::invalid(format!("bad symbol {tok:?} in word {text:?}")))
                })
                .collect::<Result<_>>()?
        };
        let word = Word(symbols);
        word.check_alphabet(q)?;
        Ok(word)
    }

    /// Renders the word in the text format for alphabet size `q`.
    pub fn to_text(&self, q: u8) -> String {
        let mut out = String::with_capacity(self.0.len() * 2);
        for (idx, &s) in self.0.iter().enumerate() {
            if q <= 10 {
                out.push((b'0' + s) as char);
            } else {
                if idx > 0 {
                    out.push(',');
                }
                out.push_str(&format!("{s}"));
            }
        }
        out
    }
}

impl Deref for Word {
    type Target = [u8];

    fn deref(&self) -> &[u8] {
        &self.0
    }
}

impl From<Vec<u8>> for Word {
    fn from(v: Vec<u8>) -> Self {
        Word(v)
    }
}

impl From<&[u8]> for Word {
    fn from(v: &[u8]) -> Self {
        Word(v.to_vec())
    }
}

fn require_len(w: &[u8]) -> Result<()> {
    if w.len() < 2 {
        return Err(Error::invalid(format!(
            "bifix predicates need length >= 2, got {}",
            w.len()
        )));
    }
    Ok(())
}

/// Proper prefixes as borrowed windows, shortest first.
pub fn prefix_views(w: &[u8]) -> impl Iterator<Item = &[u8]> {
    (1..w.len()).map(move |j| &w[..j])
}

/// Proper suffixes as borrowed windows, shortest first.
pub fn suffix_views(w: &[u8]) -> impl Iterator<Item = &[u8]> {
    (1..w.len()).map(move |j| &w[w.len() - j..])
}

/// Proper prefixes of lengths `1..len`, in increasing length order.
pub fn prefixes(w: &[u8]) -> Result<Vec<Word>> {
    require_len(w)?;
    Ok(prefix_views(w).map(Word::from).collect())
}

/// Proper suffixes of lengths `1..len`, in increasing length order.
pub fn suffixes(w: &[u8]) -> Result<Vec<Word>> {
    require_len(w)?;
    Ok(suffix_views(w).map(Word::from).collect())
}

/// True iff no proper prefix of `w` is also a suffix of `w`.
pub fn is_bifix_free(w: &[u8]) -> Result<bool> {
    require_len(w)?;
    Ok(shortest_border(w).is_none())
}

/// Length of the shortest non-empty border (prefix equal to suffix), if any.
pub(crate) fn shortest_border(w: &[u8]) -> Option<usize> {
    let n = w.len();
    (1..n).find(|&j| w[..j] == w[n - j..])
}

/// True iff no contiguous window of `w` with the forbidden words' length is a
/// member of `forbidden`. Words shorter than that length are trivially free.
pub fn is_code_free(w: &[u8], forbidden: &Code) -> Result<bool> {
    if forbidden.is_empty() {
        return Err(Error::invalid("forbidden code is empty"));
    }
    let nc = forbidden.n();
    if nc == 0 {
        return Err(Error::invalid("forbidden words must be non-empty"));
    }
    if w.len() < nc {
        return Ok(true);
    }
    Ok(w.windows(nc).all(|win| !forbidden.contains(win)))
}

/// True iff no length-`k` window of `w` lies entirely in `I`.
pub fn is_block_free(w: &[u8], bip: &Bipartition, k: usize) -> Result<bool> {
    if k < 1 {
        return Err(Error::invalid("block length k must be >= 1"));
    }
    Ok(longest_i_run(w, bip) < k)
}

pub(crate) fn longest_i_run(w: &[u8], bip: &Bipartition) -> usize {
    let mut best = 0;
    let mut run = 0;
    for &s in w {
        if bip.in_i(s) {
            run += 1;
            best = best.max(run);
        } else {
            run = 0;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn w(s: &str) -> Word {
        Word::parse(s, 2).unwrap()
    }

    fn texts(ws: &[Word]) -> Vec<String> {
        ws.iter().map(|w| w.to_text(2)).collect()
    }

    #[test]
    fn prefixes_and_suffixes_of_00101() {
        assert_eq!(
            texts(&prefixes(&w("00101")).unwrap()),
            ["0", "00", "001", "0010"]
        );
        assert_eq!(
            texts(&suffixes(&w("00101")).unwrap()),
            ["1", "01", "101", "0101"]
        );
    }

    #[test]
    fn two_letter_words_have_one_prefix_and_suffix() {
        assert_eq!(texts(&prefixes(&w("01")).unwrap()), ["0"]);
        assert_eq!(texts(&suffixes(&w("01")).unwrap()), ["1"]);
        assert_eq!(prefixes(&w("0001001")).unwrap().len(), 6);
    }

    #[test]
    fn suffixes_mirror_prefixes_of_reverse() {
        let word = w("0010001");
        let mut rev = word.symbols().to_vec();
        rev.reverse();
        let mirrored: Vec<Word> = prefixes(&rev)
            .unwrap()
            .into_iter()
            .map(|p| {
                let mut v = p.into_inner();
                v.reverse();
                Word::new(v)
            })
            .collect();
        assert_eq!(mirrored, suffixes(&word).unwrap());
    }

    #[test]
    fn short_words_are_rejected() {
        assert!(prefixes(&w("0")).is_err());
        assert!(suffixes(&w("1")).is_err());
        assert!(is_bifix_free(&w("1")).is_err());
    }

    #[test]
    fn bifix_examples() {
        assert!(is_bifix_free(&w("0001001")).unwrap());
        assert!(is_bifix_free(&w("0001101")).unwrap());
        assert!(!is_bifix_free(&w("0010001")).unwrap());
        for n in 2..8 {
            assert!(!is_bifix_free(&vec![1u8; n]).unwrap());
        }
    }

    #[test]
    fn code_free_examples() {
        let c4 = Code::from_texts(2, &["0000"]).unwrap();
        let c3 = Code::from_texts(2, &["000"]).unwrap();
        assert!(is_code_free(&w("10001"), &c4).unwrap());
        assert!(!is_code_free(&w("10001"), &c3).unwrap());
        assert!(is_code_free(&w("00"), &c3).unwrap());
        let c2 = Code::from_texts(2, &["00"]).unwrap();
        assert!(!is_code_free(&w("010010"), &c2).unwrap());
    }

    #[test]
    fn code_free_rejects_empty_forbidden_set() {
        let empty = Code::empty(2, 3);
        assert!(is_code_free(&w("0101"), &empty).is_err());
    }

    #[test]
    fn block_free_examples() {
        let bip = Bipartition::classic(2).unwrap();
        assert!(is_block_free(&w("0101"), &bip, 2).unwrap());
        assert!(!is_block_free(&w("1001"), &bip, 2).unwrap());
        assert!(is_block_free(&w("0"), &bip, 2).unwrap());
        assert!(is_block_free(&w("0101"), &bip, 0).is_err());
    }

    #[test]
    fn bipartition_validation() {
        assert!(Bipartition::new(1, &[0]).is_err());
        assert!(Bipartition::new(3, &[]).is_err());
        assert!(Bipartition::new(3, &[0, 1, 2]).is_err());
        assert!(Bipartition::new(3, &[3]).is_err());
        let bip = Bipartition::new(4, &[0, 2, 2]).unwrap();
        assert_eq!(bip.size_i(), 2);
        assert_eq!(bip.size_j(), 2);
        assert_eq!(bip.size_i() + bip.size_j(), 4);
        assert_eq!(bip.min_i(), 0);
        assert_eq!(bip.min_j(), 1);
        assert_eq!(bip.j_symbols().collect::<Vec<_>>(), [1, 3]);
    }

    #[test]
    fn text_format_round_trip() {
        let big = Word::parse("0,0,11,1", 12).unwrap();
        assert_eq!(big.symbols(), &[0, 0, 11, 1]);
        assert_eq!(big.to_text(12), "0,0,11,1");
        assert!(Word::parse("012", 2).is_err());
        assert!(Word::parse("0a1", 3).is_err());
        assert!(Word::parse("", 3).is_err());
    }
}

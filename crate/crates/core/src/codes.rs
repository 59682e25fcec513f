//! Code container and the verification engines.
//!
//! Everything that scans `Z_q^n` goes through [`ScanLimit`], and every
//! per-candidate overlap test goes through an [`OverlapIndex`] built once per
//! code: for each split length `j` it maps `j`-prefixes and `j`-suffixes of the
//! codewords to the smallest codeword carrying them. A candidate is then
//! checked with `2(n-1)` hash lookups.

use alloc::borrow::ToOwned;
use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;
use core::borrow::Borrow;

use hashbrown::HashMap;

use crate::constructions::{build_u, build_v, ExpansionParams, UCache};
use crate::error::{Error, Result};
use crate::words::{Bipartition, Word};

impl Borrow<[u8]> for Word {
    fn borrow(&self) -> &[u8] {
        self.symbols()
    }
}

/// A set of equal-length words over `Z_q`, optionally tagged with the
/// bipartition it was built from. Equality ignores the tag.
#[derive(Debug, Clone)]
pub struct Code {
    q: u8,
    n: usize,
    words: BTreeSet<Word>,
    bip: Option<Bipartition>,
}

impl Code {
    pub fn empty(q: u8, n: usize) -> Self {
        Code {
            q,
            n,
            words: BTreeSet::new(),
            bip: None,
        }
    }

    /// Collects `words`, rejecting mixed lengths and out-of-alphabet symbols.
    /// Duplicates collapse.
    pub fn new(q: u8, n: usize, words: impl IntoIterator<Item = Word>) -> Result<Self> {
        let mut code = Code::empty(q, n);
        for w in words {
            code.insert(w)?;
        }
        Ok(code)
    }

    /// Parses words in the text format; the length comes from the first word.
    pub fn from_texts(q: u8, texts: &[&str]) -> Result<Self> {
        let words = texts
            .iter()
            .map(|t| Word::parse(t, q))
            .collect::<Result<Vec<_>>>()?;
        let n = words.first().map_or(0, |w| w.len());
        Code::new(q, n, words)
    }

    pub fn with_bipartition(mut self, bip: Bipartition) -> Self {
        self.bip = Some(bip);
        self
    }

    pub(crate) fn from_sorted_unchecked(
        q: u8,
        n: usize,
        words: BTreeSet<Word>,
        bip: Option<Bipartition>,
    ) -> Self {
        Code { q, n, words, bip }
    }

    /// Adds a word; returns whether it was new.
    pub fn insert(&mut self, w: Word) -> Result<bool> {
        if w.len() != self.n {
            return Err(Error::invalid(format!(
                "word of length {} in a code of length {}",
                w.len(),
                self.n
            )));
        }
        w.check_alphabet(self.q)?;
        Ok(self.words.insert(w))
    }

    pub fn q(&self) -> u8 {
        self.q
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn bipartition(&self) -> Option<&Bipartition> {
        self.bip.as_ref()
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn contains(&self, w: &[u8]) -> bool {
        self.words.contains(w)
    }

    /// Words in lexicographic order.
    pub fn iter(&self) -> impl Iterator<Item = &Word> {
        self.words.iter()
    }

    pub fn words(&self) -> &BTreeSet<Word> {
        &self.words
    }

    pub fn into_words(self) -> BTreeSet<Word> {
        self.words
    }

    /// Union of two codes of the same shape. The bipartition tag of `self`
    /// is kept.
    pub fn union(&self, other: &Code) -> Result<Code> {
        if self.q != other.q || self.n != other.n {
            return Err(Error::invalid("union of codes with different q or n"));
        }
        let mut out = self.clone();
        out.words.extend(other.words.iter().cloned());
        Ok(out)
    }

    fn require_verifiable(&self) -> Result<()> {
        if self.words.is_empty() {
            return Err(Error::invalid("code is empty"));
        }
        if self.n < 2 {
            return Err(Error::invalid("codewords must have length >= 2"));
        }
        Ok(())
    }
}

impl PartialEq for Code {
    fn eq(&self, other: &Self) -> bool {
        self.q == other.q && self.n == other.n && self.words == other.words
    }
}

impl Eq for Code {}

/// Which side of the overlap the tested word `x` is on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    /// The `length`-prefix of `x` equals the `length`-suffix of `v`.
    PrefixOfXIsSuffixOfV,
    /// The `length`-prefix of `v` equals the `length`-suffix of `x`.
    PrefixOfVIsSuffixOfX,
}

/// Evidence that two words (possibly the same one) overlap.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OverlapWitness {
    pub direction: Direction,
    pub length: usize,
    pub x: Word,
    pub v: Word,
}

impl OverlapWitness {
    /// The shared string.
    pub fn overlap(&self) -> &[u8] {
        match self.direction {
            Direction::PrefixOfXIsSuffixOfV => &self.x[..self.length],
            Direction::PrefixOfVIsSuffixOfX => &self.v[..self.length],
        }
    }

    /// Re-checks the claimed equality.
    pub fn is_valid(&self) -> bool {
        let n = self.x.len();
        if self.v.len() != n || self.length == 0 || self.length >= n {
            return false;
        }
        let j = self.length;
        match self.direction {
            Direction::PrefixOfXIsSuffixOfV => self.x[..j] == self.v[n - j..],
            Direction::PrefixOfVIsSuffixOfX => self.v[..j] == self.x[n - j..],
        }
    }
}

/// Per-length prefix and suffix tables of a code.
#[derive(Debug, Clone)]
pub struct OverlapIndex {
    n: usize,
    // slot j-1 holds windows of length j
    prefixes: Vec<HashMap<Box<[u8]>, Word>>,
    suffixes: Vec<HashMap<Box<[u8]>, Word>>,
}

impl OverlapIndex {
    pub fn new(code: &Code) -> Self {
        let n = code.n();
        let mut index = OverlapIndex {
            n,
            prefixes: (1..n).map(|_| HashMap::new()).collect(),
            suffixes: (1..n).map(|_| HashMap::new()).collect(),
        };
        for w in code.iter() {
            index.insert(w);
        }
        index
    }

    /// Registers a codeword. The first word seen for a window is kept, so
    /// inserting in lexicographic order keeps the smallest representative.
    pub fn insert(&mut self, w: &Word) {
        debug_assert_eq!(w.len(), self.n);
        for j in 1..self.n {
            self.prefixes[j - 1]
                .entry(w[..j].to_owned().into_boxed_slice())
                .or_insert_with(|| w.clone());
            self.suffixes[j - 1]
                .entry(w[self.n - j..].to_owned().into_boxed_slice())
                .or_insert_with(|| w.clone());
        }
    }

    /// Smallest codeword whose `j`-suffix equals `window`.
    pub fn suffix_owner(&self, window: &[u8]) -> Option<&Word> {
        let j = window.len();
        if j == 0 || j >= self.n {
            return None;
        }
        self.suffixes[j - 1].get(window)
    }

    /// Smallest codeword whose `j`-prefix equals `window`.
    pub fn prefix_owner(&self, window: &[u8]) -> Option<&Word> {
        let j = window.len();
        if j == 0 || j >= self.n {
            return None;
        }
        self.prefixes[j - 1].get(window)
    }

    /// First overlap between `x` and the indexed words or `x` itself, by
    /// increasing split length.
    pub fn witness_for(&self, x: &[u8]) -> Option<OverlapWitness> {
        let n = self.n;
        debug_assert_eq!(x.len(), n);
        for j in 1..n {
            let head = &x[..j];
            let tail = &x[n - j..];
            if let Some(v) = self.suffixes[j - 1].get(head) {
                return Some(witness(Direction::PrefixOfXIsSuffixOfV, j, x, v.clone()));
            }
            if let Some(v) = self.prefixes[j - 1].get(tail) {
                return Some(witness(Direction::PrefixOfVIsSuffixOfX, j, x, v.clone()));
            }
            if head == tail {
                return Some(witness(
                    Direction::PrefixOfXIsSuffixOfV,
                    j,
                    x,
                    Word::from(x),
                ));
            }
        }
        None
    }

    /// Cheaper variant of [`witness_for`](Self::witness_for) for scans.
    pub fn overlaps(&self, x: &[u8]) -> bool {
        let n = self.n;
        (1..n).any(|j| {
            let head = &x[..j];
            let tail = &x[n - j..];
            head == tail
                || self.suffixes[j - 1].contains_key(head)
                || self.prefixes[j - 1].contains_key(tail)
        })
    }
}

fn witness(direction: Direction, length: usize, x: &[u8], v: Word) -> OverlapWitness {
    OverlapWitness {
        direction,
        length,
        x: Word::from(x),
        v,
    }
}

/// First overlap inside `code`, or `None` if it is cross-bifix-free.
///
/// Codewords are visited in lexicographic order as the prefix side, split
/// lengths in increasing order; the suffix side is the smallest codeword
/// with a matching suffix.
pub fn cross_bifix_witness(code: &Code) -> Result<Option<OverlapWitness>> {
    code.require_verifiable()?;
    let index = OverlapIndex::new(code);
    for u in code.iter() {
        for j in 1..code.n() {
            if let Some(v) = index.suffix_owner(&u[..j]) {
                return Ok(Some(witness(
                    Direction::PrefixOfXIsSuffixOfV,
                    j,
                    u,
                    v.clone(),
                )));
            }
        }
    }
    Ok(None)
}

/// True iff no proper prefix of any codeword is a proper suffix of any
/// codeword, itself included.
pub fn is_cross_bifix_free(code: &Code) -> Result<bool> {
    Ok(cross_bifix_witness(code)?.is_none())
}

/// Overlap evidence that prevents adding `x` to `code`, if any. Overlaps of
/// `x` with itself count.
pub fn overlap_witness(x: &[u8], code: &Code) -> Result<Option<OverlapWitness>> {
    if x.len() != code.n() {
        return Err(Error::invalid(format!(
            "word of length {} tested against a code of length {}",
            x.len(),
            code.n()
        )));
    }
    if x.len() < 2 {
        return Err(Error::invalid("words must have length >= 2"));
    }
    Ok(OverlapIndex::new(code).witness_for(x))
}

/// Default cap on `q^n` for exhaustive scans.
pub const DEFAULT_GUARD: u128 = 1 << 28;

/// Upper bound on the number of words an operation may enumerate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScanLimit {
    pub guard: u128,
}

impl Default for ScanLimit {
    fn default() -> Self {
        ScanLimit {
            guard: DEFAULT_GUARD,
        }
    }
}

impl ScanLimit {
    pub fn new(guard: u128) -> Self {
        ScanLimit { guard }
    }

    pub fn unlimited() -> Self {
        ScanLimit { guard: u128::MAX }
    }

    /// Checks `q^n` against the guard and returns it.
    pub fn check_space(&self, q: u8, n: usize) -> Result<u128> {
        let size = u32::try_from(n)
            .ok()
            .and_then(|e| (q as u128).checked_pow(e))
            .unwrap_or(u128::MAX);
        self.check_count(size)?;
        Ok(size)
    }

    pub fn check_count(&self, size: u128) -> Result<()> {
        if size > self.guard {
            return Err(Error::GuardExceeded {
                size,
                guard: self.guard,
            });
        }
        Ok(())
    }
}

/// Visits every word of `Z_q^n` in lexicographic order until `f` returns
/// `false`. The buffer is reused between calls.
pub(crate) fn scan_space(q: u8, n: usize, mut f: impl FnMut(&[u8]) -> bool) {
    let mut buf = alloc::vec![0u8; n];
    loop {
        if !f(&buf) {
            return;
        }
        let mut pos = n;
        loop {
            if pos == 0 {
                return;
            }
            pos -= 1;
            buf[pos] += 1;
            if buf[pos] < q {
                break;
            }
            buf[pos] = 0;
        }
    }
}

/// Outcome of an exhaustive expandability scan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpandabilityVerdict {
    pub non_expandable: bool,
    /// Smallest word outside the code that can be added, when one exists.
    pub witness: Option<Word>,
    /// Words outside the code that were tested.
    pub candidates_examined: u128,
}

fn require_cross_bifix_free(code: &Code) -> Result<()> {
    if let Some(w) = cross_bifix_witness(code)? {
        return Err(Error::invalid(format!(
            "code is not cross-bifix-free: {}-prefix of {} is a suffix of {}",
            w.length,
            w.x.to_text(code.q()),
            w.v.to_text(code.q())
        )));
    }
    Ok(())
}

/// Scans `Z_q^n` outside `code` for a word that keeps it cross-bifix-free.
pub fn is_non_expandable(code: &Code, limit: ScanLimit) -> Result<ExpandabilityVerdict> {
    limit.check_space(code.q(), code.n())?;
    require_cross_bifix_free(code)?;
    let index = OverlapIndex::new(code);
    let mut examined = 0u128;
    let mut found = None;
    scan_space(code.q(), code.n(), |x| {
        if code.contains(x) {
            return true;
        }
        examined += 1;
        if index.overlaps(x) {
            true
        } else {
            found = Some(Word::from(x));
            false
        }
    });
    Ok(ExpandabilityVerdict {
        non_expandable: found.is_none(),
        witness: found,
        candidates_examined: examined,
    })
}

/// All words outside `code` that could each be added on their own.
pub fn expansion_candidates(code: &Code, limit: ScanLimit) -> Result<BTreeSet<Word>> {
    limit.check_space(code.q(), code.n())?;
    require_cross_bifix_free(code)?;
    let index = OverlapIndex::new(code);
    let mut out = BTreeSet::new();
    scan_space(code.q(), code.n(), |x| {
        if !code.contains(x) && !index.overlaps(x) {
            out.insert(Word::from(x));
        }
        true
    });
    Ok(out)
}

/// Grows `code` by repeatedly adding the smallest expansion candidate until
/// none is left.
///
/// Adding words only removes candidates, so one lexicographic pass with an
/// incrementally updated index yields the same result as restarting the
/// search after every addition.
pub fn greedy_saturate(code: &Code, limit: ScanLimit) -> Result<Code> {
    limit.check_space(code.q(), code.n())?;
    require_cross_bifix_free(code)?;
    let mut out = code.clone();
    let mut index = OverlapIndex::new(code);
    scan_space(code.q(), code.n(), |x| {
        if !out.contains(x) && !index.overlaps(x) {
            let w = Word::from(x);
            index.insert(&w);
            out.words.insert(w);
        }
        true
    });
    Ok(out)
}

/// `Q_m(n)`: words of `V(n)` whose `m`-suffix lies in `V(m)`.
pub fn q_class(
    params: &ExpansionParams,
    bip: &Bipartition,
    m: usize,
    limit: ScanLimit,
) -> Result<Code> {
    params.check_class_length(m)?;
    let v_n = build_v(params, bip, params.n(), limit)?;
    let v_m = build_v(params, bip, m, limit)?;
    Ok(suffix_filter(&v_n, m, |s| v_m.contains(s)))
}

/// `P_m(n)`: words of `V(n)` whose `m`-suffix lies in `U(m)`.
pub fn p_class(
    params: &ExpansionParams,
    bip: &Bipartition,
    m: usize,
    cache: &mut UCache,
    limit: ScanLimit,
) -> Result<Code> {
    params.check_class_length(m)?;
    let v_n = build_v(params, bip, params.n(), limit)?;
    let u_m = build_u(params, bip, m, cache, limit)?;
    Ok(suffix_filter(&v_n, m, |s| u_m.contains(s)))
}

fn suffix_filter(code: &Code, m: usize, keep: impl Fn(&[u8]) -> bool) -> Code {
    let n = code.n();
    let words = code.iter().filter(|w| keep(&w[n - m..])).cloned().collect();
    Code::from_sorted_unchecked(code.q(), n, words, code.bipartition().copied())
}

/// Both unions of suffix classes and whether they coincide.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QpUnion {
    pub equal: bool,
    pub q_union: BTreeSet<Word>,
    pub p_union: BTreeSet<Word>,
}

/// Materializes the unions of `Q_m(n)` and of `P_m(n)` over all class
/// lengths `m` and compares them.
pub fn qp_union_equality(
    bip: &Bipartition,
    n: usize,
    k: usize,
    cache: &mut UCache,
    limit: ScanLimit,
) -> Result<QpUnion> {
    let params = ExpansionParams::new(n, k)?;
    let mut q_union = BTreeSet::new();
    let mut p_union = BTreeSet::new();
    for m in params.class_lengths() {
        q_union.extend(q_class(&params, bip, m, limit)?.into_words());
        p_union.extend(p_class(&params, bip, m, cache, limit)?.into_words());
    }
    Ok(QpUnion {
        equal: q_union == p_union,
        q_union,
        p_union,
    })
}

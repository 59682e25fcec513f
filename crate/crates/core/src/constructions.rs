//! Generators for the `S`, `V` and `U` families, the witnesses that make `S`
//! expandable, and the combined non-expandable code.
//!
//! Generators walk only the free coordinates of each product shape, so work
//! is proportional to the output. The guard in [`ScanLimit`] is applied to the
//! size of the product shape being walked.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;
use core::ops::RangeInclusive;
use core::str::FromStr;

use crate::codes::{Code, ScanLimit};
use crate::error::{Error, Result};
use crate::words::{Bipartition, Word};

/// Parameters of the `V`/`U` families: `n >= 7`, `n/2 <= k <= n-2`,
/// `t = max(2, n-k-1)` and the forced-`I` coordinate `n-k+t` (1-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExpansionParams {
    n: usize,
    k: usize,
    t: usize,
    forced: usize,
}

impl ExpansionParams {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        if n < 7 {
            return Err(Error::invalid(format!(
                "V/U families need n >= 7, got n={n}"
            )));
        }
        if 2 * k < n || k + 2 > n {
            return Err(Error::invalid(format!(
                "V/U families need n/2 <= k <= n-2, got n={n} k={k}"
            )));
        }
        let t = core::cmp::max(2, n - k - 1);
        let forced = n - k + t;
        debug_assert!(t + 1 < forced && forced <= n);
        Ok(ExpansionParams { n, k, t, forced })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn t(&self) -> usize {
        self.t
    }

    /// 1-based coordinate that must carry a symbol of `I` once `m` exceeds it.
    pub fn forced_i_position(&self) -> usize {
        self.forced
    }

    /// Checks `t+1 <= m <= n`, `m != n-k+t`.
    pub fn check_length(&self, m: usize) -> Result<()> {
        if m < self.t + 1 || m > self.n || m == self.forced {
            return Err(Error::invalid(format!(
                "length m={m} invalid for n={} k={} (need {}..={}, m != {})",
                self.n,
                self.k,
                self.t + 1,
                self.n,
                self.forced
            )));
        }
        Ok(())
    }

    /// Checks `t+1 <= m <= n-t-1`, `m != n-k+t`.
    pub fn check_class_length(&self, m: usize) -> Result<()> {
        if m < self.t + 1 || m + self.t + 1 > self.n || m == self.forced {
            return Err(Error::invalid(format!(
                "suffix-class length m={m} invalid for n={} k={}",
                self.n, self.k
            )));
        }
        Ok(())
    }

    /// Every valid length `m` in increasing order.
    pub fn lengths(&self) -> impl Iterator<Item = usize> + '_ {
        self.lengths_in(self.t + 1..=self.n)
    }

    /// Suffix lengths excluded from a word of length `m`:
    /// `t+1 <= l <= m-t-1`, `l != n-k+t`.
    pub fn suffix_lengths(&self, m: usize) -> impl Iterator<Item = usize> + '_ {
        let hi = m.saturating_sub(self.t + 1);
        self.lengths_in(self.t + 1..=hi)
    }

    /// Suffix-class lengths of the full word length `n`.
    pub fn class_lengths(&self) -> impl Iterator<Item = usize> + '_ {
        self.suffix_lengths(self.n)
    }

    fn lengths_in(&self, range: RangeInclusive<usize>) -> impl Iterator<Item = usize> + '_ {
        range.filter(move |&m| m != self.forced)
    }

    /// Membership test for `V(m)`, `m = w.len()`, without materializing it.
    pub fn v_contains(&self, bip: &Bipartition, w: &[u8]) -> bool {
        let m = w.len();
        if self.check_length(m).is_err() {
            return false;
        }
        let t = self.t;
        if !w[..t].iter().all(|&s| bip.in_i(s)) || !bip.in_j(w[t]) {
            return false;
        }
        if m == t + 1 {
            return true;
        }
        if !bip.in_j(w[m - 1]) {
            return false;
        }
        m < self.forced || bip.in_i(w[self.forced - 1])
    }
}

/// Names of the generators exposed on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConstructionKind {
    S,
    SClassic,
    V,
    U,
    Expanded,
}

impl ConstructionKind {
    pub const ALL: [ConstructionKind; 5] = [
        ConstructionKind::S,
        ConstructionKind::SClassic,
        ConstructionKind::V,
        ConstructionKind::U,
        ConstructionKind::Expanded,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ConstructionKind::S => "s",
            ConstructionKind::SClassic => "s-classic",
            ConstructionKind::V => "v",
            ConstructionKind::U => "u",
            ConstructionKind::Expanded => "expanded",
        }
    }

    /// `V` and `U` need `n >= 7` and `n/2 <= k <= n-2`.
    pub fn needs_expansion_params(self) -> bool {
        matches!(self, ConstructionKind::V | ConstructionKind::U)
    }

    /// `s-classic` ignores any custom `I`.
    pub fn uses_bipartition(self) -> bool {
        !matches!(self, ConstructionKind::SClassic)
    }
}

impl fmt::Display for ConstructionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ConstructionKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ConstructionKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::invalid(format!("unknown construction {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Slot {
    I,
    J,
    Any,
}

/// A product of per-coordinate classes, optionally with a window in which no
/// run of `I` symbols may reach a given length.
struct Shape {
    slots: Vec<Slot>,
    run_limit: Option<(RangeInclusive<usize>, usize)>,
}

impl Shape {
    fn product(slots: Vec<Slot>) -> Self {
        Shape {
            slots,
            run_limit: None,
        }
    }

    fn upper_bound(&self, bip: &Bipartition) -> u128 {
        self.slots.iter().fold(1u128, |acc, slot| {
            let c = match slot {
                Slot::I => bip.size_i(),
                Slot::J => bip.size_j(),
                Slot::Any => bip.q() as u64,
            };
            acc.saturating_mul(c as u128)
        })
    }

    /// All words of the shape in lexicographic order.
    fn generate(&self, bip: &Bipartition, limit: ScanLimit) -> Result<BTreeSet<Word>> {
        limit.check_count(self.upper_bound(bip))?;
        let mut out = BTreeSet::new();
        let mut buf = alloc::vec![0u8; self.slots.len()];
        self.fill(bip, 0, 0, &mut buf, &mut out);
        Ok(out)
    }

    fn fill(
        &self,
        bip: &Bipartition,
        pos: usize,
        run: usize,
        buf: &mut [u8],
        out: &mut BTreeSet<Word>,
    ) {
        if pos == self.slots.len() {
            out.insert(Word::from(&buf[..]));
            return;
        }
        let slot = self.slots[pos];
        for s in 0..bip.q() {
            let ok = match slot {
                Slot::I => bip.in_i(s),
                Slot::J => bip.in_j(s),
                Slot::Any => true,
            };
            if !ok {
                continue;
            }
            let mut next_run = 0;
            if let Some((window, max_run)) = &self.run_limit {
                if window.contains(&pos) && bip.in_i(s) {
                    next_run = run + 1;
                    if next_run >= *max_run {
                        continue;
                    }
                }
            }
            buf[pos] = s;
            self.fill(bip, pos + 1, next_run, buf, out);
        }
    }
}

fn code_from(bip: &Bipartition, n: usize, words: BTreeSet<Word>) -> Code {
    Code::from_sorted_unchecked(bip.q(), n, words, Some(*bip))
}

/// `S_{I,J}^{(k)}(n)`: words starting with `I^k` then a `J` symbol, ending in
/// `J`, whose middle window `s_{k+2}..s_{n-1}` has no run of `k` symbols of `I`.
pub fn build_s(bip: &Bipartition, n: usize, k: usize, limit: ScanLimit) -> Result<Code> {
    if n < 2 || k < 1 || k + 1 > n {
        return Err(Error::invalid(format!(
            "S needs n >= 2 and 1 <= k <= n-1, got n={n} k={k}"
        )));
    }
    let mut slots = alloc::vec![Slot::I; k];
    slots.push(Slot::J);
    let mut run_limit = None;
    if k + 1 < n {
        // 0-based middle window k+1 ..= n-2, then the closing J
        slots.extend(core::iter::repeat_n(Slot::Any, n - k - 2));
        slots.push(Slot::J);
        if n >= k + 3 {
            run_limit = Some((k + 1..=n - 2, k));
        }
    }
    let shape = Shape { slots, run_limit };
    Ok(code_from(bip, n, shape.generate(bip, limit)?))
}

/// `S_q^{(k)}(n)`: `build_s` with `I = {0}`.
pub fn build_s_classic(q: u8, n: usize, k: usize, limit: ScanLimit) -> Result<Code> {
    build_s(&Bipartition::classic(q)?, n, k, limit)
}

/// `V(m)` for the given parameters.
pub fn build_v(
    params: &ExpansionParams,
    bip: &Bipartition,
    m: usize,
    limit: ScanLimit,
) -> Result<Code> {
    params.check_length(m)?;
    let t = params.t();
    let mut slots = alloc::vec![Slot::I; t];
    slots.push(Slot::J);
    if m > t + 1 {
        slots.extend(core::iter::repeat_n(Slot::Any, m - t - 2));
        slots.push(Slot::J);
        if m > params.forced_i_position() {
            slots[params.forced_i_position() - 1] = Slot::I;
        }
    }
    Ok(code_from(
        bip,
        m,
        Shape::product(slots).generate(bip, limit)?,
    ))
}

/// Memo table for the recursive `U` construction, keyed by
/// `(q, I mask, n, k, m)`.
#[derive(Debug, Default, Clone)]
pub struct UCache {
    entries: BTreeMap<(u8, u64, usize, usize, usize), Arc<Code>>,
}

impl UCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn clear(&mut self) {
        self.entries.clear();
    }

    fn key(
        params: &ExpansionParams,
        bip: &Bipartition,
        m: usize,
    ) -> (u8, u64, usize, usize, usize) {
        (bip.q(), bip.i_mask(), params.n(), params.k(), m)
    }

    /// `U(m)`, built on first use from `V(m)` and the shorter `U(l)`.
    pub fn get_or_build(
        &mut self,
        params: &ExpansionParams,
        bip: &Bipartition,
        m: usize,
        limit: ScanLimit,
    ) -> Result<Arc<Code>> {
        params.check_length(m)?;
        let key = Self::key(params, bip, m);
        if let Some(hit) = self.entries.get(&key) {
            return Ok(hit.clone());
        }
        let shorter = params
            .suffix_lengths(m)
            .map(|l| self.get_or_build(params, bip, l, limit).map(|u| (l, u)))
            .collect::<Result<Vec<_>>>()?;
        let v = build_v(params, bip, m, limit)?;
        let kept = v
            .into_words()
            .into_iter()
            .filter(|w| shorter.iter().all(|(l, u)| !u.contains(&w[m - l..])))
            .collect();
        let built = Arc::new(code_from(bip, m, kept));
        self.entries.insert(key, built.clone());
        Ok(built)
    }
}

/// `U(m)`: words of `V(m)` none of whose suffixes of length
/// `l in [t+1, m-t-1], l != n-k+t` lies in `U(l)`.
pub fn build_u(
    params: &ExpansionParams,
    bip: &Bipartition,
    m: usize,
    cache: &mut UCache,
    limit: ScanLimit,
) -> Result<Code> {
    Ok((*cache.get_or_build(params, bip, m, limit)?).clone())
}

/// `U(m)` by the non-recursive rule: suffixes must avoid `V(l)` instead of
/// `U(l)`.
pub fn build_u_via_v_rule(
    params: &ExpansionParams,
    bip: &Bipartition,
    m: usize,
    limit: ScanLimit,
) -> Result<Code> {
    let v = build_v(params, bip, m, limit)?;
    let lengths: Vec<usize> = params.suffix_lengths(m).collect();
    let kept = v
        .into_words()
        .into_iter()
        .filter(|w| {
            lengths
                .iter()
                .all(|&l| !params.v_contains(bip, &w[m - l..]))
        })
        .collect();
    Ok(code_from(bip, m, kept))
}

/// Smallest member of the product set that shows `S^{(k)}(n)` is expandable.
///
/// For `n/2 <= k < n-2` the set is `I^l x J^2 x Z_q^{n-k-3} x I x J^{k-l}`
/// with `n-k-1 <= l < k`; for `k = n-2` it is `I^2 x J x I x J^{n-4}` and
/// `ell` is ignored.
pub fn expansion_witness(
    bip: &Bipartition,
    n: usize,
    k: usize,
    ell: Option<usize>,
) -> Result<Word> {
    let (i, j) = (bip.min_i(), bip.min_j());
    if n >= 5 && k + 2 == n {
        let mut w = alloc::vec![i, i, j, i];
        w.extend(core::iter::repeat_n(j, n - 4));
        return Ok(Word::new(w));
    }
    if n < 6 || 2 * k < n || k + 2 >= n {
        return Err(Error::invalid(format!(
            "expandability witness needs n >= 5 and n/2 <= k <= n-2, got n={n} k={k}"
        )));
    }
    let ell = ell.ok_or_else(|| Error::invalid("k < n-2 needs a run length ell"))?;
    if ell + k + 1 < n || ell >= k {
        return Err(Error::invalid(format!(
            "run length ell={ell} must satisfy n-k-1 <= ell < k"
        )));
    }
    let mut w = Vec::with_capacity(n);
    w.extend(core::iter::repeat_n(i, ell));
    w.extend([j, j]);
    w.extend(core::iter::repeat_n(0, n - k - 3));
    w.push(i);
    w.extend(core::iter::repeat_n(j, k - ell));
    debug_assert_eq!(w.len(), n);
    Ok(Word::new(w))
}

/// `S^{(k)}(n)` grown to a non-expandable cross-bifix-free code.
///
/// * `k = n-1`, `2k < n`, or `(n, k) = (4, 2)`: `S` is already non-expandable.
/// * `(5, 3)`: `S ∪ I^2 x J x I x J`.
/// * `(6, 3)`: `S ∪ I^2 x J^2 x I x J`.
/// * `(6, 4)`: `S ∪ I x J x I x Z_q x J^2`.
/// * `n >= 7`, `n/2 <= k <= n-2`: `S ∪ U(n)`.
pub fn build_expanded(
    bip: &Bipartition,
    n: usize,
    k: usize,
    cache: &mut UCache,
    limit: ScanLimit,
) -> Result<Code> {
    if n < 4 || k < 1 || k + 1 > n {
        return Err(Error::invalid(format!(
            "expansion needs n >= 4 and 1 <= k <= n-1, got n={n} k={k}"
        )));
    }
    let s = build_s(bip, n, k, limit)?;
    if k + 1 == n || 2 * k < n || n == 4 {
        return Ok(s);
    }
    use Slot::{Any, I, J};
    let extra = match (n, k) {
        (5, 3) => code_from(
            bip,
            n,
            Shape::product(alloc::vec![I, I, J, I, J]).generate(bip, limit)?,
        ),
        (6, 3) => code_from(
            bip,
            n,
            Shape::product(alloc::vec![I, I, J, J, I, J]).generate(bip, limit)?,
        ),
        (6, 4) => code_from(
            bip,
            n,
            Shape::product(alloc::vec![I, J, I, Any, J, J]).generate(bip, limit)?,
        ),
        _ => build_u(&ExpansionParams::new(n, k)?, bip, n, cache, limit)?,
    };
    s.union(&extra)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::is_cross_bifix_free;
    use alloc::string::String;
    use alloc::vec;

    fn classic() -> Bipartition {
        Bipartition::classic(2).unwrap()
    }

    fn texts(code: &Code) -> Vec<String> {
        code.iter().map(|w| w.to_text(code.q())).collect()
    }

    fn sorted(mut v: Vec<&str>) -> Vec<String> {
        v.sort();
        v.into_iter().map(String::from).collect()
    }

    const LIM: ScanLimit = ScanLimit { guard: 1 << 28 };

    #[test]
    fn params_derive_t_and_forced_position() {
        let p = ExpansionParams::new(9, 6).unwrap();
        assert_eq!((p.t(), p.forced_i_position()), (2, 5));
        let p = ExpansionParams::new(9, 7).unwrap();
        assert_eq!((p.t(), p.forced_i_position()), (2, 4));
        let p = ExpansionParams::new(12, 6).unwrap();
        assert_eq!((p.t(), p.forced_i_position()), (5, 11));
        assert!(ExpansionParams::new(6, 4).is_err());
        assert!(ExpansionParams::new(9, 4).is_err());
        assert!(ExpansionParams::new(9, 8).is_err());
        assert_eq!(p.lengths().collect::<Vec<_>>(), [6, 7, 8, 9, 10, 12]);
    }

    #[test]
    fn s_examples() {
        assert_eq!(texts(&build_s(&classic(), 5, 3, LIM).unwrap()), ["00011"]);
        assert_eq!(build_s(&classic(), 17, 9, LIM).unwrap().len(), 64);
        assert_eq!(
            texts(&build_s(&classic(), 6, 2, LIM).unwrap()),
            ["001011", "001101", "001111"]
        );
        assert_eq!(texts(&build_s(&classic(), 3, 2, LIM).unwrap()), ["001"]);
        assert!(build_s(&classic(), 5, 0, LIM).is_err());
        assert!(build_s(&classic(), 5, 5, LIM).is_err());
    }

    #[test]
    fn s_classic_examples() {
        let a = build_s_classic(2, 8, 4, LIM).unwrap();
        assert_eq!(a, build_s(&classic(), 8, 4, LIM).unwrap());
        assert_eq!(a.len(), 4);
        assert_eq!(build_s_classic(3, 5, 3, LIM).unwrap().len(), 4);
        assert_eq!(texts(&build_s_classic(2, 4, 2, LIM).unwrap()), ["0011"]);
    }

    #[test]
    fn s_guard_applies_to_the_product_shape() {
        assert!(matches!(
            build_s(&classic(), 20, 10, ScanLimit::new(100)),
            Err(Error::GuardExceeded { .. })
        ));
    }

    #[test]
    fn v_example_n9_k6() {
        let p = ExpansionParams::new(9, 6).unwrap();
        let v = build_v(&p, &classic(), 9, LIM).unwrap();
        let expected = sorted(vec![
            "001000001",
            "001001001",
            "001000011",
            "001000101",
            "001000111",
            "001001011",
            "001001101",
            "001001111",
            "001100001",
            "001100011",
            "001100101",
            "001100111",
            "001101001",
            "001101011",
            "001101101",
            "001101111",
        ]);
        assert_eq!(texts(&v), expected);
        assert_eq!(texts(&build_v(&p, &classic(), 3, LIM).unwrap()), ["001"]);
        assert!(build_v(&p, &classic(), 5, LIM).is_err());
        assert!(build_v(&p, &classic(), 2, LIM).is_err());
        assert!(build_v(&p, &classic(), 10, LIM).is_err());
    }

    #[test]
    fn v_membership_matches_materialization() {
        let bip = Bipartition::new(3, &[0, 2]).unwrap();
        let p = ExpansionParams::new(8, 5).unwrap();
        for m in p.lengths() {
            let v = build_v(&p, &bip, m, LIM).unwrap();
            crate::codes::scan_space(3, m, |w| {
                assert_eq!(p.v_contains(&bip, w), v.contains(w), "m={m} w={w:?}");
                true
            });
        }
    }

    #[test]
    fn u_examples() {
        let mut cache = UCache::new();
        let p = ExpansionParams::new(9, 6).unwrap();
        assert_eq!(
            texts(&build_u(&p, &classic(), 3, &mut cache, LIM).unwrap()),
            ["001"]
        );
        assert_eq!(
            texts(&build_u(&p, &classic(), 4, &mut cache, LIM).unwrap()),
            ["0011"]
        );
        assert_eq!(
            texts(&build_u(&p, &classic(), 6, &mut cache, LIM).unwrap()),
            ["001101"]
        );
        let p = ExpansionParams::new(9, 7).unwrap();
        assert_eq!(
            texts(&build_u(&p, &classic(), 5, &mut cache, LIM).unwrap()),
            ["00101"]
        );
        assert_eq!(
            texts(&build_u(&p, &classic(), 6, &mut cache, LIM).unwrap()),
            ["001011"]
        );
        assert!(!cache.is_empty());
        cache.clear();
        assert!(cache.is_empty());
    }

    #[test]
    fn u_below_forced_position_equals_v() {
        let mut cache = UCache::new();
        let p = ExpansionParams::new(11, 6).unwrap();
        for m in p.lengths().filter(|&m| m < p.forced_i_position()) {
            let v = build_v(&p, &classic(), m, LIM).unwrap();
            assert_eq!(build_u(&p, &classic(), m, &mut cache, LIM).unwrap(), v);
            assert_eq!(build_u_via_v_rule(&p, &classic(), m, LIM).unwrap(), v);
        }
    }

    #[test]
    fn expansion_witness_examples() {
        let w = expansion_witness(&classic(), 7, 4, Some(2)).unwrap();
        assert_eq!(w.to_text(2), "0011011");
        let w = expansion_witness(&classic(), 7, 5, None).unwrap();
        assert_eq!(w.to_text(2), "0010111");
        assert_eq!(
            expansion_witness(&classic(), 5, 3, None)
                .unwrap()
                .to_text(2),
            "00101"
        );
        assert!(expansion_witness(&classic(), 7, 4, Some(1)).is_err());
        assert!(expansion_witness(&classic(), 7, 4, Some(4)).is_err());
        assert!(expansion_witness(&classic(), 7, 4, None).is_err());
        assert!(expansion_witness(&classic(), 7, 3, Some(2)).is_err());
    }

    #[test]
    fn expanded_examples() {
        let mut cache = UCache::new();
        let e = build_expanded(&classic(), 5, 3, &mut cache, LIM).unwrap();
        assert_eq!(texts(&e), ["00011", "00101"]);
        assert_eq!(
            build_expanded(&classic(), 9, 6, &mut cache, LIM)
                .unwrap()
                .len(),
            11
        );
        let e = build_expanded(&classic(), 17, 15, &mut cache, LIM).unwrap();
        assert_eq!(e.len(), 1433);
        assert!(is_cross_bifix_free(&e).unwrap());
        let e = build_expanded(&classic(), 6, 4, &mut cache, LIM).unwrap();
        assert_eq!(texts(&e), ["000011", "010011", "010111"]);
        assert_eq!(
            build_expanded(&classic(), 9, 3, &mut cache, LIM).unwrap(),
            build_s(&classic(), 9, 3, LIM).unwrap()
        );
        assert!(build_expanded(&classic(), 3, 1, &mut cache, LIM).is_err());
    }

    #[test]
    fn construction_names_round_trip() {
        for kind in ConstructionKind::ALL {
            assert_eq!(kind.name().parse::<ConstructionKind>().unwrap(), kind);
        }
        assert!("w".parse::<ConstructionKind>().is_err());
    }
}

//! Reference cardinalities for `q = 2`, `I = {0}`, `5 <= n <= 17`,
//! `ceil(n/2) <= k <= n-2`, with per-cell erratum notes.

/// One table row: `n`, the first `k` (`ceil(n/2)`), and values for
/// consecutive `k` up to `n-2`.
pub type Row = (usize, usize, &'static [u64]);

/// `|S_2^{(k)}(n)|`.
pub const TABLE1: &[Row] = &[
    (5, 3, &[1]),
    (6, 3, &[2, 1]),
    (7, 4, &[2, 1]),
    (8, 4, &[4, 2, 1]),
    (9, 5, &[4, 2, 1]),
    (10, 5, &[8, 4, 2, 1]),
    (11, 6, &[8, 4, 2, 1]),
    (12, 6, &[16, 8, 4, 2, 1]),
    (13, 7, &[16, 8, 4, 2, 1]),
    (14, 7, &[32, 16, 8, 4, 2, 1]),
    (15, 8, &[32, 16, 8, 4, 2, 1]),
    (16, 8, &[64, 32, 16, 8, 4, 2, 1]),
    (17, 9, &[64, 32, 16, 8, 4, 2, 1]),
];

/// `|S_2^{(k)}(n) ∪ U_2^{(t)}(n)|` (the expanded code for `n < 7`).
pub const TABLE2: &[Row] = &[
    (5, 3, &[2]),
    (6, 3, &[3, 2]),
    (7, 4, &[3, 4]),
    (8, 4, &[7, 6, 6]),
    (9, 5, &[9, 11, 11]),
    (10, 5, &[15, 12, 19, 19]),
    (11, 6, &[21, 24, 34, 35]),
    (12, 6, &[31, 32, 45, 59, 64]),
    (13, 7, &[45, 52, 89, 107, 119]),
    (14, 7, &[63, 72, 104, 166, 198, 221]),
    (15, 8, &[93, 124, 201, 320, 371, 412]),
    (16, 8, &[127, 152, 224, 397, 615, 699, 768]),
    (17, 9, &[189, 268, 448, 794, 1173, 1314, 1433]),
];

/// Which reference table a cell belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TableId {
    SizeS,
    SizeExpanded,
}

/// Cells whose printed value is known not to match the construction.
pub const ERRATA: &[(TableId, usize, usize, &str)] =
    &[(TableId::SizeExpanded, 6, 4, "computed 3, printed 2")];

fn lookup(rows: &[Row], n: usize, k: usize) -> Option<u64> {
    let &(_, first, values) = rows.iter().find(|r| r.0 == n)?;
    k.checked_sub(first)
        .and_then(|idx| values.get(idx))
        .copied()
}

pub fn golden(table: TableId, n: usize, k: usize) -> Option<u64> {
    match table {
        TableId::SizeS => lookup(TABLE1, n, k),
        TableId::SizeExpanded => lookup(TABLE2, n, k),
    }
}

pub fn erratum(table: TableId, n: usize, k: usize) -> Option<&'static str> {
    ERRATA
        .iter()
        .find(|e| e.0 == table && e.1 == n && e.2 == k)
        .map(|e| e.3)
}

/// `(n, k)` cells covered by the tables, row by row.
pub fn cells() -> impl Iterator<Item = (usize, usize)> {
    (5..=17usize).flat_map(|n| (n.div_ceil(2)..=n - 2).map(move |k| (n, k)))
}

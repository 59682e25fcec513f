//! Text, CSV, JSON and Markdown renderings of reports and tables.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::io::Write;

use cbf_core::{CountReport, TableCell, Tables};
use serde::Serialize;

use crate::error::Result;

/// One row of a rendered table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CellRecord {
    pub table: &'static str,
    pub n: usize,
    pub k: usize,
    pub closed: Option<u128>,
    pub enumerated: Option<u128>,
    pub golden: Option<u128>,
    pub agree: bool,
    pub erratum: Option<&'static str>,
}

pub const SIZE_S: &str = "size_s";
pub const SIZE_EXPANDED: &str = "size_expanded";

pub fn cell_records(tables: &Tables) -> Vec<CellRecord> {
    let tagged = |table: &'static str, cells: &[TableCell]| -> Vec<CellRecord> {
        cells
            .iter()
            .map(|c| CellRecord {
                table,
                n: c.n,
                k: c.k,
                closed: c.closed,
                enumerated: c.enumerated,
                golden: c.golden,
                agree: c.agree,
                erratum: c.erratum,
            })
            .collect()
    };
    let mut out = tagged(SIZE_S, &tables.size_s);
    out.extend(tagged(SIZE_EXPANDED, &tables.size_expanded));
    out
}

pub fn tables_csv(tables: &Tables, out: &mut dyn Write) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for rec in cell_records(tables) {
        w.serialize(rec)?;
    }
    w.flush()?;
    Ok(())
}

pub fn tables_json(tables: &Tables, out: &mut dyn Write) -> Result<()> {
    serde_json::to_writer_pretty(&mut *out, &cell_records(tables))?;
    writeln!(out)?;
    Ok(())
}

fn cell_text(c: &TableCell) -> String {
    let Some(v) = c.value() else {
        return "?".into();
    };
    match c.golden {
        Some(g) if g != v => format!("{v} (printed {g})"),
        _ if !c.agree => format!("{v}!"),
        _ => v.to_string(),
    }
}

fn grid(title: &str, cells: &[TableCell], out: &mut String) {
    let ks: BTreeSet<usize> = cells.iter().map(|c| c.k).collect();
    let ns: BTreeSet<usize> = cells.iter().map(|c| c.n).collect();
    let _ = writeln!(out, "### {title}\n");
    out.push_str("| n \\ k |");
    for k in &ks {
        let _ = write!(out, " {k} |");
    }
    out.push_str("\n|---|");
    out.push_str(&"---|".repeat(ks.len()));
    out.push('\n');
    for n in &ns {
        let _ = write!(out, "| {n} |");
        for k in &ks {
            match cells.iter().find(|c| c.n == *n && c.k == *k) {
                Some(c) => {
                    let _ = write!(out, " {} |", cell_text(c));
                }
                None => out.push_str("  |"),
            }
        }
        out.push('\n');
    }
    let notes: Vec<&TableCell> = cells
        .iter()
        .filter(|c| !c.agree || c.erratum.is_some())
        .collect();
    if !notes.is_empty() {
        out.push('\n');
    }
    for c in notes {
        let _ = write!(out, "- ({},{})", c.n, c.k);
        match c.erratum {
            Some(e) => {
                let _ = writeln!(out, " erratum: {e}");
            }
            None => {
                let show = |v: Option<u128>| v.map_or("-".to_string(), |v| v.to_string());
                let _ = writeln!(
                    out,
                    " mismatch: closed {}, enumerated {}, printed {}",
                    show(c.closed),
                    show(c.enumerated),
                    show(c.golden)
                );
            }
        }
    }
    out.push('\n');
}

pub fn tables_markdown(tables: &Tables, label: &str, out: &mut dyn Write) -> Result<()> {
    let mut s = String::new();
    grid(&format!("|S| ({label})"), &tables.size_s, &mut s);
    grid(&format!("|S ∪ U| ({label})"), &tables.size_expanded, &mut s);
    out.write_all(s.as_bytes())?;
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountRecord {
    pub n: usize,
    pub k: usize,
    pub q: u8,
    pub size_i: u64,
    pub size_j: u64,
    pub branch: &'static str,
    pub closed: Option<u128>,
    pub enumerated: Option<u128>,
    pub agree: Option<bool>,
}

impl From<&CountReport> for CountRecord {
    fn from(r: &CountReport) -> Self {
        CountRecord {
            n: r.n,
            k: r.k,
            q: r.q,
            size_i: r.size_i,
            size_j: r.size_j,
            branch: r.branch.label(),
            closed: r.closed_form,
            enumerated: r.enumerated,
            agree: r.agree,
        }
    }
}

pub fn count_text(r: &CountReport, out: &mut dyn Write) -> Result<()> {
    writeln!(
        out,
        "n={} k={} q={} |I|={} |J|={}",
        r.n, r.k, r.q, r.size_i, r.size_j
    )?;
    writeln!(out, "branch {}", r.branch.label())?;
    if let Some(c) = r.closed_form {
        writeln!(out, "closed {c}")?;
    }
    if let Some(e) = r.enumerated {
        writeln!(out, "enumerated {e}")?;
    }
    if let Some(a) = r.agree {
        writeln!(out, "{}", if a { "agree" } else { "disagree" })?;
    }
    Ok(())
}

pub fn count_csv(r: &CountReport, out: &mut dyn Write) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.serialize(CountRecord::from(r))?;
    w.flush()?;
    Ok(())
}

pub fn count_json(r: &CountReport, out: &mut dyn Write) -> Result<()> {
    serde_json::to_writer_pretty(&mut *out, &CountRecord::from(r))?;
    writeln!(out)?;
    Ok(())
}

/// Result of one requested verification check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub check: &'static str,
    pub pass: bool,
    pub witness: Option<String>,
    pub detail: Option<String>,
}

pub fn checks_text(outcomes: &[CheckOutcome], out: &mut dyn Write) -> Result<()> {
    for o in outcomes {
        write!(out, "{}: {}", o.check, if o.pass { "pass" } else { "fail" })?;
        if let Some(w) = &o.witness {
            write!(out, ", witness {w}")?;
        }
        if let Some(d) = &o.detail {
            write!(out, " ({d})")?;
        }
        writeln!(out)?;
    }
    Ok(())
}

pub fn checks_csv(outcomes: &[CheckOutcome], out: &mut dyn Write) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for o in outcomes {
        w.serialize(o)?;
    }
    w.flush()?;
    Ok(())
}

pub fn checks_json(outcomes: &[CheckOutcome], out: &mut dyn Write) -> Result<()> {
    serde_json::to_writer_pretty(&mut *out, outcomes)?;
    writeln!(out)?;
    Ok(())
}

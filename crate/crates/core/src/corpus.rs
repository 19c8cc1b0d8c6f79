//! Embedded reference tables and the harness that regenerates them.
//!
//! Each table lives in `data/` as UTF-8 `row|col|value` records; `#` starts a
//! comment line. Cells are compared after normalization: MCS labels sorted by
//! `(i, j)`, GPMs sorted and rendered `m,n`, `-` for the empty set.
//!
//! Table files are verbatim. Printed cells that contradict the tables
//! themselves are corrected in `data/errata.txt`; a diff reports every cell
//! that was checked against an erratum instead of the printed value.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::analysis::{detectors_of, verdict, Status, VerdictOptions};
use crate::error::{Error, Result};
use crate::mcs::{enumerate_mcs, mcs_containing, McsId};
use crate::pauli::{diff_set, GbsSet, Gpm};
use crate::zmod::Dimension;

const TABLE_I: &str = include_str!("../data/table_I.txt");
const TABLE_II: &str = include_str!("../data/table_II.txt");
const TABLE_III: &str = include_str!("../data/table_III.txt");
const TABLE_IV: &str = include_str!("../data/table_IV.txt");
const TABLE_V: &str = include_str!("../data/table_V.txt");
const TABLE_VI: &str = include_str!("../data/table_VI.txt");
const REPS_D4: &str = include_str!("../data/representatives_d4.txt");
const REPS_D6: &str = include_str!("../data/representatives_d6.txt");
const ERRATA: &str = include_str!("../data/errata.txt");

/// Identifier of a reproducible table.
///
/// I, III, IV, V: MCS(m,n) for d = 4, 5, 6, 8. II: difference sets, detectors
/// and verdicts of the ten d=4 representatives. VI: detectors and verdicts of
/// the 31 d=6 representatives.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum TableId {
    I,
    II,
    III,
    IV,
    V,
    VI,
}

impl TableId {
    pub const ALL: [TableId; 6] = [
        TableId::I,
        TableId::II,
        TableId::III,
        TableId::IV,
        TableId::V,
        TableId::VI,
    ];

    pub fn dimension(self) -> Dimension {
        let d = match self {
            TableId::I | TableId::II => 4,
            TableId::III => 5,
            TableId::IV | TableId::VI => 6,
            TableId::V => 8,
        };
        Dimension::new(d).expect("table dimensions are valid")
    }

    pub fn file_name(self) -> &'static str {
        match self {
            TableId::I => "table_I.txt",
            TableId::II => "table_II.txt",
            TableId::III => "table_III.txt",
            TableId::IV => "table_IV.txt",
            TableId::V => "table_V.txt",
            TableId::VI => "table_VI.txt",
        }
    }

    fn source(self) -> &'static str {
        match self {
            TableId::I => TABLE_I,
            TableId::II => TABLE_II,
            TableId::III => TABLE_III,
            TableId::IV => TABLE_IV,
            TableId::V => TABLE_V,
            TableId::VI => TABLE_VI,
        }
    }

    fn is_mcs_table(self) -> bool {
        matches!(self, TableId::I | TableId::III | TableId::IV | TableId::V)
    }
}

impl fmt::Display for TableId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            TableId::I => "I",
            TableId::II => "II",
            TableId::III => "III",
            TableId::IV => "IV",
            TableId::V => "V",
            TableId::VI => "VI",
        };
        f.write_str(s)
    }
}

impl FromStr for TableId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        TableId::ALL
            .into_iter()
            .find(|id| id.to_string().eq_ignore_ascii_case(t))
            .ok_or_else(|| Error::UnknownTable(t.to_string()))
    }
}

/// One `row|col|value` record.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cell {
    pub row: String,
    pub col: String,
    pub value: String,
}

/// Expected cells of a table, as transcribed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableSpec {
    pub id: TableId,
    pub cells: Vec<Cell>,
}

fn parse_records(file: &'static str, text: &str) -> Result<Vec<(usize, Cell)>> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let parts: Vec<&str> = line.split('|').map(str::trim).collect();
        if parts.len() != 3 || parts[0].is_empty() || parts[1].is_empty() {
            return Err(Error::TableData {
                file,
                line: idx + 1,
                message: format!("expected row|col|value, got {line:?}"),
            });
        }
        out.push((
            idx + 1,
            Cell {
                row: parts[0].to_string(),
                col: parts[1].to_string(),
                value: parts[2].to_string(),
            },
        ));
    }
    Ok(out)
}

/// Loads the embedded expectation for a table.
pub fn table_spec(id: TableId) -> Result<TableSpec> {
    let cells = parse_records(id.file_name(), id.source())?
        .into_iter()
        .map(|(_, c)| c)
        .collect();
    Ok(TableSpec { id, cells })
}

/// LU-class representatives for one dimension.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RepresentativeCatalog {
    pub d: Dimension,
    pub entries: Vec<(String, GbsSet)>,
    /// Table whose rows are indexed by these names.
    pub provenance: TableId,
}

impl RepresentativeCatalog {
    pub fn get(&self, name: &str) -> Option<&GbsSet> {
        self.entries.iter().find(|(n, _)| n == name).map(|(_, s)| s)
    }
}

fn parse_gpm_list(d: Dimension, value: &str) -> std::result::Result<Vec<Gpm>, String> {
    if value == "-" {
        return Ok(Vec::new());
    }
    value
        .split_whitespace()
        .map(|tok| {
            let g: Gpm = tok.parse().map_err(|e: Error| e.to_string())?;
            if g.m >= d.get() || g.n >= d.get() {
                return Err(format!("{tok} is not canonical mod {d}"));
            }
            Ok(g)
        })
        .collect()
}

/// Embedded representatives for `d` ∈ {4, 6}.
pub fn representatives(d: Dimension) -> Result<RepresentativeCatalog> {
    let (file, text, provenance) = match d.get() {
        4 => ("representatives_d4.txt", REPS_D4, TableId::II),
        6 => ("representatives_d6.txt", REPS_D6, TableId::VI),
        other => return Err(Error::UnsupportedDimension(other)),
    };
    let mut entries = Vec::new();
    for (line, cell) in parse_records(file, text)? {
        let bad = |message: String| Error::TableData { file, line, message };
        if cell.col != "set" {
            return Err(bad(format!("unexpected column {:?}", cell.col)));
        }
        let elements = parse_gpm_list(d, &cell.value).map_err(bad)?;
        let set = GbsSet::new(d, elements).map_err(|e| bad(e.to_string()))?;
        entries.push((cell.row, set));
    }
    Ok(RepresentativeCatalog { d, entries, provenance })
}

fn render_labels(labels: impl IntoIterator<Item = McsId>) -> String {
    let sorted: BTreeSet<McsId> = labels.into_iter().collect();
    if sorted.is_empty() {
        return "-".to_string();
    }
    sorted.iter().map(McsId::to_string).collect::<Vec<_>>().join(" ")
}

fn render_gpms(gpms: impl IntoIterator<Item = Gpm>) -> String {
    let sorted: BTreeSet<Gpm> = gpms.into_iter().collect();
    if sorted.is_empty() {
        return "-".to_string();
    }
    sorted.iter().map(Gpm::to_string).collect::<Vec<_>>().join(" ")
}

fn normalize_labels(d: Dimension, value: &str) -> std::result::Result<String, String> {
    if value == "-" {
        return Ok("-".to_string());
    }
    let mut labels = Vec::new();
    for tok in value.split_whitespace() {
        if tok == "S_MC" {
            labels.extend(enumerate_mcs(d));
        } else {
            let id: McsId = tok.parse().map_err(|e: Error| e.to_string())?;
            labels.push(id.validate(d).map_err(|e| e.to_string())?);
        }
    }
    Ok(render_labels(labels))
}

fn status_mark(status: Status) -> &'static str {
    match status {
        Status::Distinguishable => "Y",
        Status::Indistinguishable => "N",
        Status::Unknown => "?",
    }
}

/// Replacement for one printed cell.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Erratum {
    pub table: TableId,
    pub row: String,
    pub col: String,
    pub value: String,
}

/// All embedded errata, in file order.
pub fn errata() -> Result<Vec<Erratum>> {
    const FILE: &str = "errata.txt";
    let mut out = Vec::new();
    for (idx, raw) in ERRATA.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let parts: Vec<&str> = line.split('|').map(str::trim).collect();
        let bad = |message: String| Error::TableData {
            file: FILE,
            line: idx + 1,
            message,
        };
        if parts.len() != 4 {
            return Err(bad(format!("expected table|row|col|value, got {line:?}")));
        }
        let table = parts[0].parse().map_err(|e: Error| bad(e.to_string()))?;
        out.push(Erratum {
            table,
            row: parts[1].to_string(),
            col: parts[2].to_string(),
            value: parts[3].to_string(),
        });
    }
    Ok(out)
}

/// A cell whose recomputed value differs from the transcription.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellDiff {
    pub row: String,
    pub col: String,
    pub expected: String,
    pub actual: String,
}

/// Outcome of regenerating one table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableDiff {
    pub id: TableId,
    pub total: usize,
    pub mismatches: Vec<CellDiff>,
    /// Cells compared against an erratum: `expected` is the printed value
    /// (normalized), `actual` the corrected one.
    pub errata: Vec<CellDiff>,
}

impl TableDiff {
    pub fn is_empty(&self) -> bool {
        self.mismatches.is_empty()
    }

    pub fn matched(&self) -> usize {
        self.total - self.mismatches.len()
    }
}

impl fmt::Display for TableDiff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Table {}: {}/{} cells match", self.id, self.matched(), self.total)?;
        if !self.errata.is_empty() {
            write!(f, " ({} per errata)", self.errata.len())?;
        }
        for m in &self.mismatches {
            write!(
                f,
                "\n  [{}|{}] expected {} got {}",
                m.row, m.col, m.expected, m.actual
            )?;
        }
        Ok(())
    }
}

fn recompute(id: TableId, d: Dimension, cell: &Cell, reps: Option<&RepresentativeCatalog>) -> std::result::Result<(String, String), String> {
    if id.is_mcs_table() {
        let m: u32 = cell.row.parse().map_err(|_| format!("bad row {:?}", cell.row))?;
        let n: u32 = cell.col.parse().map_err(|_| format!("bad col {:?}", cell.col))?;
        if m >= d.get() || n >= d.get() {
            return Err(format!("({m},{n}) out of range for d={d}"));
        }
        let expected = normalize_labels(d, &cell.value)?;
        let actual = render_labels(mcs_containing(Gpm { m, n }, d));
        return Ok((expected, actual));
    }
    let set = reps
        .and_then(|r| r.get(&cell.row))
        .ok_or_else(|| format!("unknown representative {:?}", cell.row))?;
    match cell.col.as_str() {
        "delta" => {
            let expected = render_gpms(parse_gpm_list(d, &cell.value)?);
            Ok((expected, render_gpms(diff_set(set).iter())))
        }
        "detectors" => Ok((normalize_labels(d, &cell.value)?, render_labels(detectors_of(set)))),
        "verdict" => {
            let v = verdict(set, VerdictOptions::default()).map_err(|e| e.to_string())?;
            Ok((cell.value.clone(), status_mark(v.status).to_string()))
        }
        other => Err(format!("unknown column {other:?}")),
    }
}

/// Regenerates every cell of `id` from first principles and diffs it against
/// the embedded transcription, with errata applied.
pub fn reproduce_table(id: TableId) -> Result<TableDiff> {
    let d = id.dimension();
    let reps = if id.is_mcs_table() {
        None
    } else {
        Some(representatives(d)?)
    };
    let records = parse_records(id.file_name(), id.source())?;
    let fixes: Vec<Erratum> = errata()?.into_iter().filter(|e| e.table == id).collect();
    let total = records.len();
    let mut mismatches = Vec::new();
    let mut applied = Vec::new();
    for (line, cell) in records {
        let data_err = |message| Error::TableData {
            file: id.file_name(),
            line,
            message,
        };
        let fix = fixes.iter().find(|e| e.row == cell.row && e.col == cell.col);
        let (expected, actual) = match fix {
            None => recompute(id, d, &cell, reps.as_ref()).map_err(data_err)?,
            Some(e) => {
                let printed = recompute(id, d, &cell, reps.as_ref()).map_err(data_err)?.0;
                let corrected = Cell {
                    value: e.value.clone(),
                    ..cell.clone()
                };
                let (fixed, actual) = recompute(id, d, &corrected, reps.as_ref()).map_err(data_err)?;
                applied.push(CellDiff {
                    row: cell.row.clone(),
                    col: cell.col.clone(),
                    expected: printed,
                    actual: fixed.clone(),
                });
                (fixed, actual)
            }
        };
        if expected != actual {
            mismatches.push(CellDiff {
                row: cell.row,
                col: cell.col,
                expected,
                actual,
            });
        }
    }
    Ok(TableDiff {
        id,
        total,
        mismatches,
        errata: applied,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dim(d: u32) -> Dimension {
        Dimension::new(d).unwrap()
    }

    #[test]
    fn catalog_sizes_and_examples() {
        let c4 = representatives(dim(4)).unwrap();
        assert_eq!(c4.entries.len(), 10);
        assert_eq!(c4.entries[0].0, "K");
        let k = GbsSet::from_pairs(dim(4), &[(0, 0), (2, 0), (0, 2), (2, 2)]).unwrap();
        assert!(c4.entries[0].1.same_elements(&k));

        let c6 = representatives(dim(6)).unwrap();
        assert_eq!(c6.entries.len(), 31);
        let c25 = GbsSet::from_pairs(dim(6), &[(0, 0), (0, 1), (2, 0), (4, 0)]).unwrap();
        assert!(c6.get("C25").unwrap().same_elements(&c25));

        assert_eq!(representatives(dim(5)), Err(Error::UnsupportedDimension(5)));
    }

    #[test]
    fn no_representative_is_a_translate_of_another() {
        for d in [4, 6] {
            let cat = representatives(dim(d)).unwrap();
            for (a, (na, sa)) in cat.entries.iter().enumerate() {
                for (nb, sb) in &cat.entries[a + 1..] {
                    for t in crate::pauli::all_gpms(dim(d)) {
                        let shifted: BTreeSet<Gpm> =
                            sa.elements().iter().map(|g| g.add(t, dim(d))).collect();
                        assert_ne!(shifted, sb.as_set(), "{na} + {t} = {nb}");
                    }
                }
            }
        }
    }

    #[test]
    fn mcs_tables_cover_every_gpm_once() {
        for id in [TableId::I, TableId::III, TableId::IV, TableId::V] {
            let d = id.dimension().get();
            let spec = table_spec(id).unwrap();
            let keys: BTreeSet<(String, String)> =
                spec.cells.iter().map(|c| (c.row.clone(), c.col.clone())).collect();
            assert_eq!(spec.cells.len(), (d * d) as usize, "{id}");
            assert_eq!(keys.len(), spec.cells.len(), "{id} has duplicate cells");
        }
    }

    #[test]
    fn every_table_reproduces() {
        let sizes = [16, 30, 25, 36, 64, 62];
        for (id, size) in TableId::ALL.into_iter().zip(sizes) {
            let diff = reproduce_table(id).unwrap();
            assert_eq!(diff.total, size, "{id}");
            assert!(diff.is_empty(), "{diff}");
        }
    }

    #[test]
    fn every_erratum_targets_an_existing_cell() {
        for e in errata().unwrap() {
            let spec = table_spec(e.table).unwrap();
            let cell = spec.cells.iter().find(|c| c.row == e.row && c.col == e.col);
            assert!(cell.is_some(), "{e:?}");
            assert_ne!(cell.unwrap().value, e.value, "{e:?} changes nothing");
        }
        let uses: usize = TableId::ALL
            .into_iter()
            .map(|id| reproduce_table(id).unwrap().errata.len())
            .sum();
        assert_eq!(uses, errata().unwrap().len());
    }

    #[test]
    fn table_ids_parse() {
        assert_eq!("iv".parse::<TableId>(), Ok(TableId::IV));
        assert_eq!(" VI ".parse::<TableId>(), Ok(TableId::VI));
        assert_eq!("VII".parse::<TableId>(), Err(Error::UnknownTable("VII".into())));
    }

    #[test]
    fn normalization_ignores_label_order() {
        let d = dim(4);
        assert_eq!(normalize_labels(d, "C2,0 C1,2 C1,0").unwrap(), "C1,0 C1,2 C2,0");
        assert_eq!(normalize_labels(d, "S_MC").unwrap(), render_labels(enumerate_mcs(d)));
        assert!(normalize_labels(d, "C4,0").is_err());
    }

    #[test]
    fn diff_reports_a_corrupted_cell() {
        let d = dim(4);
        let cell = Cell {
            row: "1".into(),
            col: "1".into(),
            value: "C1,2".into(),
        };
        let (expected, actual) = recompute(TableId::I, d, &cell, None).unwrap();
        assert_ne!(expected, actual);
    }
}

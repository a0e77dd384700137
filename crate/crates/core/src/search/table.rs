use std::collections::BTreeMap;
use std::fmt;
use std::io;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{formula_entry, NQuery, SearchError, Searcher};
use crate::ball::intersection_size;
use crate::distance::deletion_distance;
use crate::word::Word;

#[derive(Debug, Error)]
pub enum TableError {
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("row for (n={n}, ell={ell}, t={t}): {reason}")]
    BadRow {
        n: usize,
        ell: usize,
        t: usize,
        reason: String,
    },
    #[error(transparent)]
    Search(#[from] SearchError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Exhaustive,
    Formula,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Exhaustive => "exhaustive",
            Method::Formula => "formula",
        })
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "exhaustive" => Ok(Method::Exhaustive),
            "formula" => Ok(Method::Formula),
            other => Err(format!("unknown method {other:?}")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct NEntry {
    pub value: u64,
    pub method: Method,
    pub argmax: Option<(Word, Word)>,
}

/// Computed `N(n, ell, t)` values keyed by `(n, ell, t)`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct NTable {
    pub entries: BTreeMap<(usize, usize, usize), NEntry>,
}

/// CSV columns, in order: `n, ell, t, N, method, argmax_x, argmax_y`.
#[derive(Debug, Serialize, Deserialize)]
struct CsvRow {
    n: usize,
    ell: usize,
    t: usize,
    #[serde(rename = "N")]
    value: u64,
    method: Method,
    argmax_x: String,
    argmax_y: String,
}

impl NTable {
    pub fn insert(&mut self, n: usize, ell: usize, t: usize, entry: NEntry) {
        self.entries.insert((n, ell, t), entry);
    }

    pub fn get(&self, n: usize, ell: usize, t: usize) -> Option<&NEntry> {
        self.entries.get(&(n, ell, t))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Exhaustive entries for `ell <= t <= t_max`, `t < n <= n_max` with
    /// `n <= exhaustive_max`; longer words get a closed-form entry where one
    /// exists and are skipped otherwise.
    pub fn build(
        searcher: &Searcher,
        n_max: usize,
        t_max: usize,
        exhaustive_max: usize,
    ) -> Result<NTable, SearchError> {
        let mut table = NTable::default();
        for t in 0..=t_max {
            for ell in 0..=t {
                for n in (t + 1)..=n_max {
                    if n <= exhaustive_max {
                        let r = searcher.compute_n(NQuery::new(n, ell, t))?;
                        table.insert(
                            n,
                            ell,
                            t,
                            NEntry {
                                value: r.value,
                                method: Method::Exhaustive,
                                argmax: Some(r.argmax),
                            },
                        );
                    } else if let Some(value) = formula_entry(n, ell, t) {
                        table.insert(
                            n,
                            ell,
                            t,
                            NEntry {
                                value,
                                method: Method::Formula,
                                argmax: None,
                            },
                        );
                    }
                }
            }
        }
        Ok(table)
    }

    pub fn write_csv<W: io::Write>(&self, out: W) -> Result<(), TableError> {
        let mut writer = csv::Writer::from_writer(out);
        for (&(n, ell, t), e) in &self.entries {
            let (x, y) = e
                .argmax
                .map(|(x, y)| (x.to_string(), y.to_string()))
                .unwrap_or_default();
            writer.serialize(CsvRow {
                n,
                ell,
                t,
                value: e.value,
                method: e.method,
                argmax_x: x,
                argmax_y: y,
            })?;
        }
        writer.flush().map_err(csv::Error::from)?;
        Ok(())
    }

    pub fn read_csv<R: io::Read>(input: R) -> Result<NTable, TableError> {
        let mut reader = csv::Reader::from_reader(input);
        let mut table = NTable::default();
        for row in reader.deserialize() {
            let row: CsvRow = row?;
            let bad = |reason: String| TableError::BadRow {
                n: row.n,
                ell: row.ell,
                t: row.t,
                reason,
            };
            let argmax = match (row.argmax_x.is_empty(), row.argmax_y.is_empty()) {
                (true, true) => None,
                (false, false) => Some((
                    Word::parse(&row.argmax_x).map_err(|e| bad(e.to_string()))?,
                    Word::parse(&row.argmax_y).map_err(|e| bad(e.to_string()))?,
                )),
                _ => return Err(bad("only one argmax word present".into())),
            };
            table.insert(
                row.n,
                row.ell,
                row.t,
                NEntry {
                    value: row.value,
                    method: row.method,
                    argmax,
                },
            );
        }
        Ok(table)
    }

    /// Re-derives every exhaustive entry's value from its argmax pair through
    /// the ball engine; returns the keys whose pair is missing, too close, or
    /// yields a different intersection size.
    pub fn inconsistent_entries(&self) -> Vec<(usize, usize, usize)> {
        self.entries
            .iter()
            .filter(|(_, e)| e.method == Method::Exhaustive)
            .filter(|(&(_, ell, t), e)| match e.argmax {
                None => true,
                Some((x, y)) => {
                    deletion_distance(&x, &y).value < ell
                        || intersection_size(&x, &y, t, t).map(|r| r.size).ok() != Some(e.value)
                }
            })
            .map(|(k, _)| *k)
            .collect()
    }

    /// Keys `(n, ell, t)` where an exhaustive `N(n+1, ell, t)` is smaller than
    /// the exhaustive `N(n, ell, t)`. Informational only.
    pub fn monotonicity_breaks(&self) -> Vec<(usize, usize, usize)> {
        self.entries
            .iter()
            .filter(|(&(n, ell, t), e)| {
                e.method == Method::Exhaustive
                    && self
                        .get(n + 1, ell, t)
                        .is_some_and(|next| next.method == Method::Exhaustive && next.value < e.value)
            })
            .map(|(k, _)| *k)
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::super::SearchOptions;
    use super::*;

    #[test]
    fn build_and_roundtrip() {
        let s = Searcher::new(SearchOptions::default()).unwrap();
        let table = NTable::build(&s, 10, 2, 7).unwrap();
        assert_eq!(table.get(6, 2, 2).unwrap().value, 6);
        assert_eq!(table.get(9, 1, 2).unwrap().method, Method::Formula);
        assert_eq!(table.get(9, 1, 2).unwrap().value, 14);
        assert!(table.get(9, 2, 2).is_some());
        assert!(table.inconsistent_entries().is_empty());
        assert!(table.monotonicity_breaks().is_empty());

        let mut buf = Vec::new();
        table.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("n,ell,t,N,method,argmax_x,argmax_y\n"));
        let back = NTable::read_csv(buf.as_slice()).unwrap();
        assert_eq!(back, table);
    }

    #[test]
    fn rejects_half_argmax() {
        let csv = "n,ell,t,N,method,argmax_x,argmax_y\n6,2,2,6,exhaustive,101010,\n";
        assert!(matches!(
            NTable::read_csv(csv.as_bytes()),
            Err(TableError::BadRow { .. })
        ));
    }

    #[test]
    fn detects_tampered_entry() {
        let mut table = NTable::default();
        let x = Word::parse("101010").unwrap();
        let y = Word::parse("011001").unwrap();
        table.insert(
            6,
            2,
            2,
            NEntry {
                value: 7,
                method: Method::Exhaustive,
                argmax: Some((x, y)),
            },
        );
        assert_eq!(table.inconsistent_entries(), vec![(6, 2, 2)]);
    }
}

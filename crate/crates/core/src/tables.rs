//! Input groups consumed by the connected-sum computations.
//!
//! Values live in `data/tables.jsonl`, one JSON record per line. Each record
//! carries a citation; records without one are refused. Records marked
//! `external` come from the wider literature rather than being restated by
//! the sequences computed here.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{out_of_range, Error, Result};
use crate::fgab::FgAbGroup;
use crate::ktheory::single_cp_ko_basis;
use crate::labels::GeneratorLabel;

const BUILTIN: &str = include_str!("../data/tables.jsonl");

/// Environment variable naming a replacement data file.
pub const TABLES_ENV: &str = "FGAB_TABLES";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableEntry {
    pub kind: String,
    pub params: BTreeMap<String, i64>,
    pub group: FgAbGroup,
    pub generators: Vec<GeneratorLabel>,
    pub citation: String,
    pub external: bool,
}

impl TableEntry {
    fn matches(&self, kind: &str, params: &[(&str, i64)]) -> bool {
        self.kind == kind
            && params
                .iter()
                .all(|(k, v)| self.params.get(*k) == Some(v))
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("table entries serialize")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tables {
    entries: Vec<TableEntry>,
}

impl Tables {
    pub fn parse(text: &str) -> Result<Self> {
        let mut entries = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line_no = i + 1;
            if line.trim().is_empty() {
                continue;
            }
            let entry: TableEntry = serde_json::from_str(line).map_err(|e| Error::TableParse {
                line: line_no,
                message: e.to_string(),
            })?;
            if entry.citation.trim().is_empty() {
                return Err(Error::MissingCitation { line: line_no });
            }
            if !entry.generators.is_empty()
                && entry.generators.len() != entry.group.generator_count()
            {
                return Err(Error::TableParse {
                    line: line_no,
                    message: format!(
                        "{} generators listed for {}",
                        entry.generators.len(),
                        entry.group
                    ),
                });
            }
            entries.push(entry);
        }
        Ok(Self { entries })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// The data file compiled into the library.
    pub fn builtin() -> &'static Tables {
        static TABLES: OnceLock<Tables> = OnceLock::new();
        TABLES.get_or_init(|| Tables::parse(BUILTIN).expect("built-in table data is valid"))
    }

    /// Tables from the file named by `FGAB_TABLES`, or the built-in ones.
    pub fn from_env() -> Result<Self> {
        match std::env::var_os(TABLES_ENV) {
            Some(path) => Self::load(path),
            None => Ok(Self::builtin().clone()),
        }
    }

    pub fn builtin_text() -> &'static str {
        BUILTIN
    }

    pub fn entries(&self) -> &[TableEntry] {
        &self.entries
    }

    pub fn to_jsonl(&self) -> String {
        self.entries
            .iter()
            .map(|e| e.to_json_line() + "\n")
            .collect()
    }

    pub fn lookup(&self, kind: &str, params: &[(&str, i64)]) -> Result<&TableEntry> {
        self.entries
            .iter()
            .find(|e| e.matches(kind, params))
            .ok_or_else(|| Error::UntabulatedDegree {
                kind: kind.to_string(),
                param: params
                    .iter()
                    .map(|(k, v)| format!("{k}={v}"))
                    .collect::<Vec<_>>()
                    .join(", "),
            })
    }

    fn group(&self, kind: &str, params: &[(&str, i64)]) -> Result<FgAbGroup> {
        Ok(self.lookup(kind, params)?.group.clone())
    }

    /// `pi_n^s`, for the degrees the connected-sum sequences touch.
    pub fn stable_stem(&self, n: i64) -> Result<FgAbGroup> {
        self.group("stable-stem", &[("n", n)])
    }

    /// 2-primary part of `pi_n^s`, where only that part is used.
    pub fn stable_stem_2local(&self, n: i64) -> Result<FgAbGroup> {
        self.group("stable-stem-2local", &[("n", n)])
    }

    /// `pi_s^0(CP^n)` for `3 <= n <= 8`.
    pub fn pi_s0_single_cp(&self, n: i64) -> Result<FgAbGroup> {
        if !(3..=8).contains(&n) {
            return Err(out_of_range("n", n, "3..=8"));
        }
        self.group("pi-s0-cp", &[("n", n)])
    }

    /// Kernel of `h^*: pi_s^0(CP^(n-1)) -> pi_(2n-1)^s`.
    pub fn hopf_kernel(&self, n: i64) -> Result<FgAbGroup> {
        if !(3..=8).contains(&n) {
            return Err(out_of_range("n", n, "3..=8"));
        }
        self.group("hopf-kernel", &[("n", n)])
    }

    /// Image of `(Sigma h)^*` inside `pi_2n^s`.
    pub fn hopf_image_suspension(&self, n: i64) -> Result<FgAbGroup> {
        if !(3..=8).contains(&n) {
            return Err(out_of_range("n", n, "3..=8"));
        }
        self.group("hopf-image-suspension", &[("n", n)])
    }

    /// `KO^{-s}(CP^n)` with its generators, from the family record for
    /// `n mod 4`.
    pub fn ko_single_cp(&self, s: i64, n: i64) -> Result<TableEntry> {
        if !(0..=7).contains(&s) {
            return Err(out_of_range("s", s, "0..=7"));
        }
        if n < 1 {
            return Err(out_of_range("n", n, "n >= 1"));
        }
        let family = self.lookup("ko-cp", &[("s", s), ("n_mod_4", n % 4)])?;
        let base_n = family.params.get("base_n").copied().unwrap_or(n);
        let step = family.params.get("rank_step").copied().unwrap_or(0);
        let periods = (n - base_n) / 4;
        let rank = family.group.free_rank() as i64 + step * periods;
        let group = FgAbGroup::from_cyclic_orders(
            rank as usize,
            family.group.invariant_factors().iter().cloned(),
        );
        let generators = single_cp_ko_basis(s as u8, n as u32);
        let mut params = family.params.clone();
        params.insert("n".into(), n);
        Ok(TableEntry {
            kind: family.kind.clone(),
            params,
            group,
            generators,
            citation: family.citation.clone(),
            external: family.external,
        })
    }

    /// `L_i` of the trivial group: `Z, 0, Z_2, 0` by `i mod 4`.
    pub fn wall_group(&self, i: i64) -> Result<FgAbGroup> {
        self.group("wall-group", &[("i_mod_4", i.rem_euclid(4))])
    }

    /// `[CP^n, PL/O]` and the increment for each further connected summand.
    pub fn pl_over_o_parts(&self, n: i64) -> Result<(&TableEntry, &TableEntry)> {
        Ok((
            self.lookup("pl-over-o-base", &[("n", n)])?,
            self.lookup("pl-over-o-step", &[("n", n)])?,
        ))
    }

    /// Citation for a lookup key, for result annotation.
    pub fn citation(&self, kind: &str, params: &[(&str, i64)]) -> Option<String> {
        self.lookup(kind, params).ok().map(|e| e.citation.clone())
    }
}

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};

use serde::{Deserialize, Serialize};

use super::{all_groups_with, canon, family_index, EnumError, EnumerationConfig, GENERATOR_VERSION};
use crate::group::{CayleyTable, Group, OrderProfile};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogClass {
    /// First family spec isomorphic to this class, or `G<n>#<index>`.
    pub name: String,
    pub psi: u128,
    pub cyclic: bool,
    pub order_profile: OrderProfile,
    pub table: CayleyTable,
}

/// All groups of one order, as persisted under
/// `<cache>/catalog/n=<n>.json`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Catalog {
    pub order: usize,
    pub generator_version: String,
    pub classes: Vec<CatalogClass>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumEntry {
    pub psi: u128,
    pub count: usize,
    pub witnesses: Vec<String>,
}

impl Catalog {
    pub fn generate(n: usize, config: &EnumerationConfig) -> Result<Catalog, EnumError> {
        let tables = all_groups_with(n, config)?;
        let names = family_index(n)?;
        let mut classes = Vec::with_capacity(tables.len());
        for (i, table) in tables.into_iter().enumerate() {
            let group = Group::from_table(table)?;
            let canonical = canon::canonical_form_of(&group);
            let name = names.get(&canonical).map_or_else(|| format!("G{n}#{i}"), ToString::to_string);
            classes.push(CatalogClass {
                name,
                psi: group.psi(),
                cyclic: group.is_cyclic(),
                order_profile: group.order_profile(),
                table: group.into_table(),
            });
        }
        Ok(Catalog { order: n, generator_version: GENERATOR_VERSION.to_string(), classes })
    }

    pub fn path_for(cache_dir: &Path, n: usize) -> PathBuf {
        cache_dir.join("catalog").join(format!("n={n}.json"))
    }

    /// Reads the persisted catalog when it exists and was written by the
    /// current generator; otherwise enumerates and (re)writes it.
    pub fn load_or_generate(
        n: usize,
        config: &EnumerationConfig,
        cache_dir: Option<&Path>,
    ) -> Result<Catalog, EnumError> {
        config.check(n)?;
        let Some(dir) = cache_dir else {
            return Catalog::generate(n, config);
        };
        let path = Catalog::path_for(dir, n);
        if let Some(cat) = Catalog::read(&path)? {
            if cat.order == n && cat.generator_version == GENERATOR_VERSION && cat.tables_valid() {
                return Ok(cat);
            }
            log::info!("discarding stale catalog {}", path.display());
        }
        let cat = Catalog::generate(n, config)?;
        cat.write(&path)?;
        Ok(cat)
    }

    fn read(path: &Path) -> Result<Option<Catalog>, EnumError> {
        let text = match fs::read_to_string(path) {
            Ok(text) => text,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(source) => return Err(EnumError::Io { path: path.display().to_string(), source }),
        };
        // A corrupt cache entry is regenerated, not fatal.
        Ok(serde_json::from_str(&text).ok())
    }

    fn write(&self, path: &Path) -> Result<(), EnumError> {
        let io = |source| EnumError::Io { path: path.display().to_string(), source };
        if let Some(parent) = path.parent() {
            fs::create_dir_all(parent).map_err(io)?;
        }
        let json = serde_json::to_string_pretty(self)
            .map_err(|source| EnumError::Json { path: path.display().to_string(), source })?;
        // Unique per writer so concurrent generators never share a temp file.
        static WRITES: AtomicUsize = AtomicUsize::new(0);
        let tmp =
            path.with_extension(format!("json.{}-{}.tmp", std::process::id(), WRITES.fetch_add(1, Ordering::Relaxed)));
        fs::write(&tmp, json + "\n").map_err(io)?;
        fs::rename(&tmp, path).map_err(io)
    }

    fn tables_valid(&self) -> bool {
        self.classes.iter().all(|c| Group::from_table(c.table.clone()).is_ok_and(|g| g.psi() == c.psi))
    }

    pub fn groups(&self) -> Vec<Group> {
        self.classes.iter().map(|c| Group::from_table(c.table.clone()).expect("catalog tables are validated")).collect()
    }

    /// Distinct ψ values, largest first, with the classes attaining each.
    pub fn spectrum(&self) -> Vec<SpectrumEntry> {
        let mut by_psi: BTreeMap<u128, Vec<String>> = BTreeMap::new();
        for c in &self.classes {
            by_psi.entry(c.psi).or_default().push(c.name.clone());
        }
        by_psi
            .into_iter()
            .rev()
            .map(|(psi, witnesses)| SpectrumEntry { psi, count: witnesses.len(), witnesses })
            .collect()
    }

    /// Index of the class isomorphic to `group`, if its order matches.
    pub fn classify(&self, group: &Group) -> Option<usize> {
        if group.order() != self.order {
            return None;
        }
        let canonical = canon::canonical_form_of(group).into_table();
        self.classes.iter().position(|c| c.table == canonical)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spectrum_of_order_eight() {
        let cat = Catalog::generate(8, &EnumerationConfig::default()).unwrap();
        let psis: Vec<u128> = cat.spectrum().iter().map(|e| e.psi).collect();
        assert_eq!(psis, vec![43, 27, 23, 19, 15]);
        assert!(cat.spectrum().iter().all(|e| e.count == 1));
        assert_eq!(cat.spectrum()[0].witnesses, vec!["C8".to_string()]);
        assert_eq!(cat.spectrum()[1].witnesses, vec!["Q8".to_string()]);
    }

    #[test]
    fn persistence_round_trip_and_invalidation() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = EnumerationConfig::default();
        let first = Catalog::load_or_generate(6, &cfg, Some(dir.path())).unwrap();
        let path = Catalog::path_for(dir.path(), 6);
        assert!(path.ends_with("catalog/n=6.json"));
        let bytes = fs::read(&path).unwrap();
        let second = Catalog::load_or_generate(6, &cfg, Some(dir.path())).unwrap();
        assert_eq!(first, second);
        assert_eq!(fs::read(&path).unwrap(), bytes);

        let mut stale = first.clone();
        stale.generator_version = "old".into();
        stale.classes.pop();
        fs::write(&path, serde_json::to_string(&stale).unwrap()).unwrap();
        let third = Catalog::load_or_generate(6, &cfg, Some(dir.path())).unwrap();
        assert_eq!(third, first);
        assert_eq!(fs::read(&path).unwrap(), bytes);

        fs::write(&path, "not json").unwrap();
        assert_eq!(Catalog::load_or_generate(6, &cfg, Some(dir.path())).unwrap(), first);
    }

    #[test]
    fn unwritable_cache_is_an_error() {
        let dir = tempfile::tempdir().unwrap();
        let blocker = dir.path().join("file");
        fs::write(&blocker, "x").unwrap();
        let err = Catalog::load_or_generate(4, &EnumerationConfig::default(), Some(&blocker));
        assert!(matches!(err, Err(EnumError::Io { .. })));
    }
}

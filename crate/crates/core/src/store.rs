//! Flat-file store of per-determinant enumeration records.
//!
//! Layout of a store directory:
//!
//! ```text
//! d{D}.txt       one record per determinant
//! manifest.txt   completed determinants, one per line, ascending
//! timings.txt    "<D> <algo> <seconds>" per computed determinant (append only)
//! ```
//!
//! A record file starts with the header
//! `D <D> algo <A1|A2:a,b> complete <0|1> classes <n>` followed by one line
//! per class: `<canonical tuple> w=<width|>cap> facets=<D_0,...,D_d>`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Duration;

use crate::error::{Error, Result};
use crate::simplex::{FacetVolumes, WidthResult};
use crate::torus::{CanonicalTuple, ResidueTuple};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Algorithm {
    A1,
    A2 { a: u32, b: u32 },
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Algorithm::A1 => f.write_str("A1"),
            Algorithm::A2 { a, b } => write!(f, "A2:{a},{b}"),
        }
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "A1" {
            return Ok(Algorithm::A1);
        }
        let bad = || Error::Parse(format!("bad algorithm tag {s:?}"));
        let rest = s.strip_prefix("A2:").ok_or_else(bad)?;
        let (a, b) = rest.split_once(',').ok_or_else(bad)?;
        Ok(Algorithm::A2 {
            a: a.parse().map_err(|_| bad())?,
            b: b.parse().map_err(|_| bad())?,
        })
    }
}

/// Width as persisted: the certificate is not stored.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StoredWidth {
    Exact(u32),
    ExceedsCap(u32),
}

impl StoredWidth {
    pub fn at_least(self, threshold: u32) -> bool {
        match self {
            StoredWidth::Exact(w) => w >= threshold,
            StoredWidth::ExceedsCap(cap) => cap + 1 >= threshold,
        }
    }

    pub fn exact(self) -> Option<u32> {
        match self {
            StoredWidth::Exact(w) => Some(w),
            StoredWidth::ExceedsCap(_) => None,
        }
    }
}

impl From<&WidthResult> for StoredWidth {
    fn from(w: &WidthResult) -> Self {
        match w {
            WidthResult::Exact { width, .. } => StoredWidth::Exact(*width),
            WidthResult::ExceedsCap { cap } => StoredWidth::ExceedsCap(*cap),
        }
    }
}

impl fmt::Display for StoredWidth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StoredWidth::Exact(w) => write!(f, "{w}"),
            StoredWidth::ExceedsCap(c) => write!(f, ">{c}"),
        }
    }
}

impl FromStr for StoredWidth {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |_| Error::Parse(format!("bad width {s:?}"));
        match s.strip_prefix('>') {
            Some(cap) => Ok(StoredWidth::ExceedsCap(cap.parse().map_err(bad)?)),
            None => Ok(StoredWidth::Exact(s.parse().map_err(bad)?)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StoredClass {
    pub tuple: CanonicalTuple,
    pub width: StoredWidth,
    pub facets: FacetVolumes,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumerationRecord {
    pub determinant: u32,
    pub algorithm: Algorithm,
    pub complete: bool,
    pub classes: Vec<StoredClass>,
    /// Wall time of the computation; not part of the record file.
    pub elapsed: Option<Duration>,
}

impl EnumerationRecord {
    pub fn render(&self) -> String {
        let mut s = format!(
            "D {} algo {} complete {} classes {}\n",
            self.determinant,
            self.algorithm,
            self.complete as u8,
            self.classes.len()
        );
        for c in &self.classes {
            s.push_str(&format!("{} w={} facets={}\n", c.tuple, c.width, c.facets));
        }
        s
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty record".into()))?;
        let tok: Vec<&str> = header.split_whitespace().collect();
        let bad_header = || Error::Parse(format!("bad record header {header:?}"));
        if tok.len() != 8
            || tok[0] != "D"
            || tok[2] != "algo"
            || tok[4] != "complete"
            || tok[6] != "classes"
        {
            return Err(bad_header());
        }
        let determinant: u32 = tok[1].parse().map_err(|_| bad_header())?;
        let algorithm: Algorithm = tok[3].parse()?;
        let complete = match tok[5] {
            "0" => false,
            "1" => true,
            _ => return Err(bad_header()),
        };
        let n: usize = tok[7].parse().map_err(|_| bad_header())?;

        let mut classes = Vec::with_capacity(n);
        for line in lines.filter(|l| !l.trim().is_empty()) {
            classes.push(parse_class_line(line, determinant)?);
        }
        if classes.len() != n {
            return Err(Error::Parse(format!(
                "record for D={determinant} declares {n} classes but lists {}",
                classes.len()
            )));
        }
        Ok(Self {
            determinant,
            algorithm,
            complete,
            classes,
            elapsed: None,
        })
    }
}

fn parse_class_line(line: &str, determinant: u32) -> Result<StoredClass> {
    let bad = || Error::Parse(format!("bad class line {line:?}"));
    let (tuple, rest) = line.split_once(" w=").ok_or_else(bad)?;
    let (width, facets) = rest.split_once(" facets=").ok_or_else(bad)?;
    let tuple: ResidueTuple = tuple.parse()?;
    if tuple.modulus() != determinant {
        return Err(bad());
    }
    let facets = facets
        .trim()
        .split(',')
        .map(|x| x.parse::<u32>().map_err(|_| bad()))
        .collect::<Result<_>>()?;
    let canonical = tuple.canonical_form()?;
    if canonical.as_tuple() != &tuple {
        return Err(Error::Parse(format!("{tuple} is not in canonical form")));
    }
    Ok(StoredClass {
        tuple: canonical,
        width: width.parse()?,
        facets: FacetVolumes(facets),
    })
}

/// Read access to complete sets of empty classes by determinant.
pub trait ClassLookup {
    fn classes(&self, d: u32) -> Result<Vec<CanonicalTuple>>;
}

impl ClassLookup for BTreeMap<u32, BTreeSet<CanonicalTuple>> {
    fn classes(&self, d: u32) -> Result<Vec<CanonicalTuple>> {
        self.get(&d)
            .map(|s| s.iter().cloned().collect())
            .ok_or(Error::MissingRecord(d))
    }
}

#[derive(Clone, Debug)]
pub struct Store {
    dir: PathBuf,
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> Error + '_ {
    move |source| Error::Io {
        path: path.to_path_buf(),
        source,
    }
}

impl Store {
    /// Opens (creating if needed) a store directory.
    pub fn open(dir: impl Into<PathBuf>) -> Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir).map_err(io_err(&dir))?;
        Ok(Self { dir })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn record_path(&self, d: u32) -> PathBuf {
        self.dir.join(format!("d{d}.txt"))
    }

    pub fn load(&self, d: u32) -> Result<Option<EnumerationRecord>> {
        let path = self.record_path(d);
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(io_err(&path)(e)),
        };
        let rec = EnumerationRecord::parse(&text)?;
        if rec.determinant != d {
            return Err(Error::Parse(format!(
                "{} holds the record of D={}",
                path.display(),
                rec.determinant
            )));
        }
        Ok(Some(rec))
    }

    pub fn load_complete(&self, d: u32) -> Result<EnumerationRecord> {
        match self.load(d)? {
            Some(r) if r.complete => Ok(r),
            _ => Err(Error::MissingRecord(d)),
        }
    }

    /// Reads only the header line of the record.
    pub fn is_complete(&self, d: u32) -> bool {
        use std::io::BufRead;
        let Ok(f) = fs::File::open(self.record_path(d)) else {
            return false;
        };
        let mut header = String::new();
        if std::io::BufReader::new(f).read_line(&mut header).is_err() {
            return false;
        }
        let tok: Vec<&str> = header.split_whitespace().collect();
        tok.len() == 8 && tok[0] == "D" && tok[1] == d.to_string() && tok[4] == "complete" && tok[5] == "1"
    }

    /// Writes a record atomically and refreshes the manifest.
    pub fn save(&self, rec: &EnumerationRecord) -> Result<()> {
        let path = self.record_path(rec.determinant);
        let tmp = self.dir.join(format!(".d{}.txt.tmp", rec.determinant));
        fs::write(&tmp, rec.render()).map_err(io_err(&tmp))?;
        fs::rename(&tmp, &path).map_err(io_err(&path))?;
        if let Some(t) = rec.elapsed {
            let tp = self.dir.join("timings.txt");
            let mut f = fs::OpenOptions::new()
                .create(true)
                .append(true)
                .open(&tp)
                .map_err(io_err(&tp))?;
            writeln!(
                f,
                "{} {} {:.6}",
                rec.determinant,
                rec.algorithm,
                t.as_secs_f64()
            )
            .map_err(io_err(&tp))?;
        }
        self.write_manifest()
    }

    /// Determinants with a complete record, from the record files themselves.
    pub fn completed(&self) -> Result<BTreeSet<u32>> {
        let mut out = BTreeSet::new();
        for entry in fs::read_dir(&self.dir).map_err(io_err(&self.dir))? {
            let entry = entry.map_err(io_err(&self.dir))?;
            let name = entry.file_name();
            let Some(d) = name
                .to_str()
                .and_then(|n| n.strip_prefix('d'))
                .and_then(|n| n.strip_suffix(".txt"))
                .and_then(|n| n.parse::<u32>().ok())
            else {
                continue;
            };
            if self.is_complete(d) {
                out.insert(d);
            }
        }
        Ok(out)
    }

    pub fn write_manifest(&self) -> Result<()> {
        let done = self.completed()?;
        let mut s = String::new();
        for d in done {
            s.push_str(&format!("{d}\n"));
        }
        let path = self.dir.join("manifest.txt");
        let tmp = self.dir.join(".manifest.txt.tmp");
        fs::write(&tmp, s).map_err(io_err(&tmp))?;
        fs::rename(&tmp, &path).map_err(io_err(&path))
    }

    /// Largest `N` such that every determinant in `1..=N` is complete.
    pub fn coverage(&self) -> Result<u32> {
        let done = self.completed()?;
        let mut n = 0;
        while done.contains(&(n + 1)) {
            n += 1;
        }
        Ok(n)
    }

    /// Latest recorded timing per determinant, in seconds.
    pub fn timings(&self) -> Result<BTreeMap<u32, (Algorithm, f64)>> {
        let path = self.dir.join("timings.txt");
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(BTreeMap::new()),
            Err(e) => return Err(io_err(&path)(e)),
        };
        let mut out = BTreeMap::new();
        for line in text.lines().filter(|l| !l.trim().is_empty()) {
            let bad = || Error::Parse(format!("bad timing line {line:?}"));
            let tok: Vec<&str> = line.split_whitespace().collect();
            if tok.len() != 3 {
                return Err(bad());
            }
            let d: u32 = tok[0].parse().map_err(|_| bad())?;
            let secs: f64 = tok[2].parse().map_err(|_| bad())?;
            out.insert(d, (tok[1].parse()?, secs));
        }
        Ok(out)
    }
}

impl ClassLookup for Store {
    fn classes(&self, d: u32) -> Result<Vec<CanonicalTuple>> {
        Ok(self
            .load_complete(d)?
            .classes
            .into_iter()
            .map(|c| c.tuple)
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplex::{facet_volumes, width};

    fn class(s: &str) -> StoredClass {
        let t: CanonicalTuple = s.parse().unwrap();
        StoredClass {
            width: StoredWidth::from(&width(&t, 5)),
            facets: facet_volumes(&t),
            tuple: t,
        }
    }

    #[test]
    fn record_text_format() {
        let rec = EnumerationRecord {
            determinant: 101,
            algorithm: Algorithm::A1,
            complete: true,
            classes: vec![class("101:-1 6 14 17 65")],
            elapsed: None,
        };
        let text = rec.render();
        let mut lines = text.lines();
        assert_eq!(
            lines.next().unwrap(),
            "D 101 algo A1 complete 1 classes 1"
        );
        let line = lines.next().unwrap();
        assert!(line.starts_with("101:"), "{line}");
        assert!(line.ends_with(" w=4 facets=1,1,1,1,1"), "{line}");
        assert_eq!(EnumerationRecord::parse(&text).unwrap(), rec);
    }

    #[test]
    fn algorithm_tags() {
        assert_eq!("A2:4,11".parse::<Algorithm>().unwrap(), Algorithm::A2 { a: 4, b: 11 });
        assert_eq!(Algorithm::A2 { a: 3, b: 4 }.to_string(), "A2:3,4");
        assert!("A3".parse::<Algorithm>().is_err());
        assert_eq!(">5".parse::<StoredWidth>().unwrap(), StoredWidth::ExceedsCap(5));
    }

    #[test]
    fn malformed_records() {
        assert!(EnumerationRecord::parse("").is_err());
        assert!(EnumerationRecord::parse("D 5 algo A1 complete 2 classes 0\n").is_err());
        assert!(EnumerationRecord::parse("D 5 algo A1 complete 1 classes 1\n").is_err());
        assert!(EnumerationRecord::parse("D 5 algo A1 complete 1 classes 1\n5:1 1 1 1 1\n").is_err());
    }

    #[test]
    fn store_round_trip_and_manifest() {
        let dir = tempfile::tempdir().unwrap();
        let store = Store::open(dir.path()).unwrap();
        assert_eq!(store.load(3).unwrap(), None);
        for d in [1u32, 2, 4] {
            store
                .save(&EnumerationRecord {
                    determinant: d,
                    algorithm: Algorithm::A1,
                    complete: true,
                    classes: vec![],
                    elapsed: Some(Duration::from_millis(5)),
                })
                .unwrap();
        }
        assert_eq!(store.coverage().unwrap(), 2);
        let manifest = fs::read_to_string(dir.path().join("manifest.txt")).unwrap();
        assert_eq!(manifest, "1\n2\n4\n");
        assert_eq!(store.timings().unwrap().len(), 3);
        assert!(matches!(store.classes(3), Err(Error::MissingRecord(3))));
        assert!(store.classes(4).unwrap().is_empty());
    }
}

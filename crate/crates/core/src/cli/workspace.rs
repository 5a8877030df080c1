use super::format::{ComplexSpec, Config, DegreeMap, MapSpec, MatrixSpec, TailSpec, TowerSpec, WorkspaceFile};
use crate::chain::{ChainComplex, ChainMap};
use crate::error::{Error, Result};
use crate::exactalg::{IntMatrix, RingTag};
use crate::pro::{ProMap, TailPolicy, Tower};
use num_bigint::BigInt;
use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

/// A named object of the workspace.
#[derive(Clone, Debug)]
pub enum Object {
    Complex(ChainComplex),
    Map(ChainMap),
    Tower(Tower<ChainMap>),
    ProMap(ProMap<ChainMap>),
}

impl Object {
    pub fn kind(&self) -> &'static str {
        match self {
            Object::Complex(_) => "complex",
            Object::Map(_) => "map",
            Object::Tower(_) => "tower",
            Object::ProMap(_) => "promap",
        }
    }
}

/// Parsed and validated workspace.
#[derive(Clone, Debug)]
pub struct Workspace {
    pub ring: RingTag,
    pub objects: BTreeMap<String, Object>,
    pub config: Config,
    /// The document as parsed, used for serialization.
    pub file: WorkspaceFile,
}

pub fn parse_ring(s: &str) -> Option<RingTag> {
    match s {
        "Z" => Some(RingTag::Integers),
        _ => s.strip_prefix('F')?.parse().ok().and_then(RingTag::prime_field),
    }
}

/// 1-based line of the first `"name":` key in `text`.
fn line_of(text: &str, name: &str) -> Option<usize> {
    let key = serde_json::to_string(name).ok()?;
    text.lines().position(|l| {
        l.find(&key)
            .is_some_and(|i| l[i + key.len()..].trim_start().starts_with(':'))
    })
    .map(|i| i + 1)
}

struct Ctx<'a> {
    text: &'a str,
    ring: RingTag,
}

impl Ctx<'_> {
    fn err(&self, object: &str, field: &str, message: impl std::fmt::Display) -> Error {
        let at = line_of(self.text, object).map_or(String::new(), |l| format!(" (line {l})"));
        Error::Validation {
            object: object.to_string(),
            message: format!("{field}{at}: {message}"),
        }
    }

    fn matrix(&self, object: &str, field: &str, m: &MatrixSpec, rows: usize, cols: usize) -> Result<IntMatrix> {
        if m.is_empty() && rows * cols == 0 {
            return Ok(IntMatrix::zeros(rows, cols, self.ring));
        }
        if m.len() != rows || m.iter().any(|r| r.len() != cols) {
            let got = format!("{}x{}", m.len(), m.first().map_or(0, Vec::len));
            return Err(self.err(object, field, format!("matrix is {got}, expected {rows}x{cols}")));
        }
        let mut data = Vec::with_capacity(rows * cols);
        for (i, row) in m.iter().enumerate() {
            for (j, s) in row.iter().enumerate() {
                let x: BigInt = s
                    .trim()
                    .parse()
                    .map_err(|_| self.err(object, field, format!("entry ({i}, {j}) '{s}' is not an integer")))?;
                data.push(self.ring.reduce(x));
            }
        }
        Ok(IntMatrix::from_vec(rows, cols, data, self.ring))
    }

    fn complex(&self, name: &str, spec: &ComplexSpec) -> Result<ChainComplex> {
        let ranks = &spec.ranks.0;
        let rk = |n: i64| ranks.get(&n).copied().unwrap_or(0);
        let mut diffs = BTreeMap::new();
        for (&n, m) in &spec.diffs.0 {
            if !ranks.contains_key(&n) && !m.is_empty() {
                return Err(self.err(name, &format!("diffs.{n}"), "degree has no rank"));
            }
            diffs.insert(n, self.matrix(name, &format!("diffs.{n}"), m, rk(n - 1), rk(n))?);
        }
        ChainComplex::from_maps(self.ring, ranks, &diffs).map_err(|e| match e {
            Error::NotAComplex { degree } => {
                self.err(name, &format!("diffs.{degree}"), format!("d({}) * d({degree}) != 0", degree - 1))
            }
            e => self.err(name, "diffs", e),
        })
    }

    fn map(&self, name: &str, spec: &MapSpec, src: &ChainComplex, tgt: &ChainComplex) -> Result<ChainMap> {
        let mut comps = BTreeMap::new();
        for (&n, m) in &spec.comps.0 {
            comps.insert(n, self.matrix(name, &format!("comps.{n}"), m, tgt.rank(n), src.rank(n))?);
        }
        ChainMap::from_map(src, tgt, &comps).map_err(|e| match e {
            Error::NotAChainMap { degree } => self.err(
                name,
                &format!("comps.{degree}"),
                format!("d f != f d at degree {degree}"),
            ),
            e => self.err(name, "comps", e),
        })
    }
}

impl Workspace {
    pub fn load(path: &Path) -> Result<Workspace> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Workspace> {
        let file = WorkspaceFile::parse(text)?;
        Self::from_file(file, text)
    }

    /// Validates a document; `text` is only used to locate diagnostics.
    pub fn from_file(file: WorkspaceFile, text: &str) -> Result<Workspace> {
        let ring = parse_ring(&file.ring).ok_or_else(|| Error::Validation {
            object: "ring".into(),
            message: format!("unknown ring '{}', expected Z or F<prime>", file.ring),
        })?;
        let ctx = Ctx { text, ring };
        let c = &file.config;
        for (field, v) in [
            ("budget_filler", c.budget_filler),
            ("budget_reindex", c.budget_reindex),
            ("lim_window", c.lim_window),
        ] {
            if v == 0 {
                return Err(ctx.err("config", field, "budgets must be positive"));
            }
        }
        let o = &file.objects;
        let mut seen = BTreeSet::new();
        let names = o
            .complexes
            .keys()
            .chain(o.maps.keys())
            .chain(o.towers.keys())
            .chain(o.promaps.keys());
        for n in names {
            if !seen.insert(n.clone()) {
                return Err(ctx.err(n, "name", "used by more than one object"));
            }
        }
        let mut objects = BTreeMap::new();
        let mut complexes = BTreeMap::new();
        for (name, spec) in &o.complexes {
            let x = ctx.complex(name, spec)?;
            complexes.insert(name.clone(), x.clone());
            objects.insert(name.clone(), Object::Complex(x));
        }
        let complex = |owner: &str, field: &str, n: &str| {
            complexes
                .get(n)
                .cloned()
                .ok_or_else(|| ctx.err(owner, field, format!("'{n}' is not a complex")))
        };
        let mut maps = BTreeMap::new();
        for (name, spec) in &o.maps {
            let src = complex(name, "source", &spec.source)?;
            let tgt = complex(name, "target", &spec.target)?;
            let f = ctx.map(name, spec, &src, &tgt)?;
            maps.insert(name.clone(), f.clone());
            objects.insert(name.clone(), Object::Map(f));
        }
        let map = |owner: &str, field: &str, n: &str| {
            maps.get(n)
                .cloned()
                .ok_or_else(|| ctx.err(owner, field, format!("'{n}' is not a map")))
        };
        let mut towers = BTreeMap::new();
        for (name, spec) in &o.towers {
            let entries = spec
                .entries
                .iter()
                .enumerate()
                .map(|(s, e)| complex(name, &format!("entries.{s}"), e))
                .collect::<Result<Vec<_>>>()?;
            let structure = spec
                .maps
                .iter()
                .enumerate()
                .map(|(s, m)| map(name, &format!("maps.{s}"), m))
                .collect::<Result<Vec<_>>>()?;
            let tail = match (&spec.tail.constant_from, &spec.tail.repeat_from, &spec.tail.endo) {
                (Some(n), None, None) => TailPolicy::ConstantFrom(*n),
                (None, Some(n), Some(e)) => TailPolicy::RepeatFrom {
                    from: *n,
                    endo: map(name, "tail.endo", e)?,
                },
                _ => {
                    return Err(ctx.err(
                        name,
                        "tail",
                        "give either constant_from or repeat_from together with endo",
                    ))
                }
            };
            let t = Tower::new(entries, structure, tail).map_err(|e| ctx.err(name, "tower", e))?;
            towers.insert(name.clone(), t.clone());
            objects.insert(name.clone(), Object::Tower(t));
        }
        for (name, spec) in &o.promaps {
            let tower = |field: &str, n: &str| {
                towers
                    .get(n)
                    .cloned()
                    .ok_or_else(|| ctx.err(name, field, format!("'{n}' is not a tower")))
            };
            let src = tower("source", &spec.source)?;
            let tgt = tower("target", &spec.target)?;
            let comps = spec
                .comps
                .iter()
                .enumerate()
                .map(|(t, m)| map(name, &format!("comps.{t}"), m))
                .collect::<Result<Vec<_>>>()?;
            let shift = spec.shift.clone().unwrap_or_else(|| (0..comps.len()).collect());
            let f = ProMap::new(src, tgt, shift, spec.tail_step, comps).map_err(|e| ctx.err(name, "promap", e))?;
            objects.insert(name.clone(), Object::ProMap(f));
        }
        Ok(Workspace {
            ring,
            objects,
            config: file.config.clone(),
            file,
        })
    }

    pub fn serialize(&self) -> String {
        self.file.to_canonical()
    }

    pub fn get(&self, name: &str) -> Result<&Object> {
        self.objects
            .get(name)
            .ok_or_else(|| Error::MissingArgument(format!("no object named '{name}'")))
    }

    pub fn complex(&self, name: &str) -> Result<&ChainComplex> {
        match self.get(name)? {
            Object::Complex(x) => Ok(x),
            o => Err(Error::PreconditionViolated(format!("'{name}' is a {}, not a complex", o.kind()))),
        }
    }

    pub fn map(&self, name: &str) -> Result<&ChainMap> {
        match self.get(name)? {
            Object::Map(f) => Ok(f),
            o => Err(Error::PreconditionViolated(format!("'{name}' is a {}, not a map", o.kind()))),
        }
    }

    pub fn tower(&self, name: &str) -> Result<&Tower<ChainMap>> {
        match self.get(name)? {
            Object::Tower(t) => Ok(t),
            o => Err(Error::PreconditionViolated(format!("'{name}' is a {}, not a tower", o.kind()))),
        }
    }

    pub fn promap(&self, name: &str) -> Result<&ProMap<ChainMap>> {
        match self.get(name)? {
            Object::ProMap(f) => Ok(f),
            o => Err(Error::PreconditionViolated(format!("'{name}' is a {}, not a promap", o.kind()))),
        }
    }
}

pub fn matrix_spec(m: &IntMatrix) -> MatrixSpec {
    (0..m.rows()).map(|i| m.row(i).iter().map(|x| x.to_string()).collect()).collect()
}

pub fn complex_spec(x: &ChainComplex) -> ComplexSpec {
    let mut ranks = BTreeMap::new();
    let mut diffs = BTreeMap::new();
    for n in x.degrees() {
        ranks.insert(n, x.rank(n));
        let d = x.diff(n);
        if d.rows() * d.cols() > 0 {
            diffs.insert(n, matrix_spec(&d));
        }
    }
    ComplexSpec {
        ranks: DegreeMap(ranks),
        diffs: DegreeMap(diffs),
    }
}

pub fn map_spec(f: &ChainMap, source: &str, target: &str) -> MapSpec {
    let mut comps = BTreeMap::new();
    for n in f.source().degrees() {
        let c = f.component(n);
        if c.rows() * c.cols() > 0 {
            comps.insert(n, matrix_spec(&c));
        }
    }
    MapSpec {
        source: source.into(),
        target: target.into(),
        comps: DegreeMap(comps),
    }
}

/// Adds a tower as entries `{name}_{s}` and maps `{name}_map_{s}`.
pub fn add_tower(file: &mut WorkspaceFile, name: &str, t: &Tower<ChainMap>) {
    let o = &mut file.objects;
    let entry = |s: usize| format!("{name}_{s}");
    let mut entries = Vec::new();
    for (s, e) in t.entries().iter().enumerate() {
        o.complexes.insert(entry(s), complex_spec(e));
        entries.push(entry(s));
    }
    let mut maps = Vec::new();
    for (s, m) in t.structure_maps().iter().enumerate() {
        let n = format!("{name}_map_{s}");
        o.maps.insert(n.clone(), map_spec(m, &entry(s + 1), &entry(s)));
        maps.push(n);
    }
    let tail = match t.tail() {
        TailPolicy::ConstantFrom(n) => TailSpec {
            constant_from: Some(*n),
            ..TailSpec::default()
        },
        TailPolicy::RepeatFrom { from, endo } => {
            let n = format!("{name}_endo");
            o.maps.insert(n.clone(), map_spec(endo, &entry(*from), &entry(*from)));
            TailSpec {
                repeat_from: Some(*from),
                endo: Some(n),
                ..TailSpec::default()
            }
        }
    };
    o.towers.insert(name.into(), TowerSpec { entries, maps, tail });
}

#[cfg(test)]
mod tests {
    use super::*;

    const MOORE: &str = r#"{
  "ring": "Z",
  "objects": {
    "complexes": {
      "M2": {
        "ranks": {"0": 1, "1": 1},
        "diffs": {"1": [["2"]]}
      }
    },
    "maps": {
      "twice": {
        "source": "M2",
        "target": "M2",
        "comps": {"0": [["2"]], "1": [["2"]]}
      }
    }
  }
}"#;

    #[test]
    fn minimal_point() {
        let ws = Workspace::parse(r#"{"ring": "Z", "objects": {"complexes": {"P": {"ranks": {"0": 1}}}}}"#).unwrap();
        assert_eq!(ws.complex("P").unwrap(), &ChainComplex::point(RingTag::Integers, 0, 1));
    }

    #[test]
    fn moore_and_twice() {
        let ws = Workspace::parse(MOORE).unwrap();
        let m = ws.complex("M2").unwrap();
        assert_eq!(m, &ChainComplex::moore(2, 0));
        assert_eq!(ws.map("twice").unwrap(), &ChainMap::scalar(m, 2));
    }

    #[test]
    fn diagnostics_name_the_degree() {
        let bad = r#"{
  "ring": "Z",
  "objects": {
    "complexes": {
      "B": {
        "ranks": {"0": 1, "1": 1, "2": 1},
        "diffs": {"1": [["1"]], "2": [["1"]]}
      }
    }
  }
}"#;
        match Workspace::parse(bad).unwrap_err() {
            Error::Validation { object, message } => {
                assert_eq!(object, "B");
                assert!(message.contains("diffs.2"), "{message}");
                assert!(message.contains("line 5"), "{message}");
            }
            e => panic!("unexpected {e:?}"),
        }
    }

    #[test]
    fn unresolved_and_duplicate_names() {
        let dangling = r#"{"ring": "Z", "objects": {"maps": {"f": {"source": "A", "target": "A"}}}}"#;
        assert!(matches!(Workspace::parse(dangling), Err(Error::Validation { .. })));
        let dup = r#"{"ring": "Z", "objects": {"complexes": {"A": {"ranks": {}}},
            "maps": {"A": {"source": "A", "target": "A"}}}}"#;
        assert!(matches!(Workspace::parse(dup), Err(Error::Validation { .. })));
        let ring = r#"{"ring": "F4"}"#;
        assert!(matches!(Workspace::parse(ring), Err(Error::Validation { .. })));
    }

    #[test]
    fn towers_and_promaps() {
        let text = r#"{"ring": "Z", "objects": {
            "complexes": {"P": {"ranks": {"0": 1}}},
            "maps": {"two": {"source": "P", "target": "P", "comps": {"0": [["2"]]}},
                     "id": {"source": "P", "target": "P", "comps": {"0": [["1"]]}}},
            "towers": {"T": {"entries": ["P"], "tail": {"repeat_from": 0, "endo": "two"}},
                       "C": {"entries": ["P"], "tail": {"constant_from": 0}}},
            "promaps": {"f": {"source": "T", "target": "T", "comps": ["id"]}}}}"#;
        let ws = Workspace::parse(text).unwrap();
        assert_eq!(ws.tower("T").unwrap().tail_start(), 0);
        assert!(ws.promap("f").unwrap().is_level());
        assert!(ws.tower("P").is_err());
    }

    #[test]
    fn exported_towers_reload() {
        let z = RingTag::Integers;
        let p = ChainComplex::point(z, 0, 1);
        let t = Tower::repeat(ChainMap::scalar(&p, 3)).unwrap();
        let mut file = WorkspaceFile::parse(r#"{"ring": "Z"}"#).unwrap();
        add_tower(&mut file, "T", &t);
        let text = file.to_canonical();
        let ws = Workspace::parse(&text).unwrap();
        assert_eq!(ws.tower("T").unwrap(), &t);
        assert_eq!(ws.serialize(), text);
    }
}

use super::format::WorkspaceFile;
use super::selftest::run_suites;
use super::workspace::{add_tower, complex_spec, map_spec, Object, Workspace};
use crate::ahss::{convergence_check, pro_ahss, run_to_stable};
use crate::chain::{derived_hom, homology, ChainComplex, ChainMap};
use crate::error::{Error, Result};
use crate::exactalg::{group_from_presentation, FgAbGroup, IntMatrix, RingTag};
use crate::pro::{is_pro_isomorphism, lim_lim1, LimLim1, ProIsoResult, Tower};
use crate::prohomotopy::{
    hom_from_constant, hom_to_constant, homology_pro_map, homology_support, homology_tower, is_hstar_fibrant,
    is_hstar_weak_equivalence, postnikov_replacement, tower_hom, Verdict,
};
use crate::tstruct::{
    classify_map, cohomology_with_coefficients, factor_n, find_lift, is_co_n_fibration, is_n_cofibration,
    truncate_above_data, truncate_below_free, MapClassification,
};
use num_bigint::BigInt;
use std::path::{Path, PathBuf};

pub const COMMANDS: [&str; 17] = [
    "homology",
    "truncate",
    "classify",
    "factor",
    "lift",
    "cohomology",
    "pro-iso",
    "limlim1",
    "prohom",
    "whitehead",
    "postnikov",
    "fibrant-check",
    "prohom-const",
    "derived-hom",
    "ahss",
    "pro-ahss",
    "selftest",
];

/// What a command produced.
#[derive(Clone, Debug, Default)]
pub struct Report {
    pub stdout: String,
    pub files: Vec<PathBuf>,
    /// Some verdict was left undecided.
    pub unknown: bool,
    /// An internal consistency check failed.
    pub failed: bool,
}

impl Report {
    /// 0 on success, 1 on a failed consistency check, 2 when something is unknown.
    pub fn exit_code(&self) -> i32 {
        if self.failed {
            1
        } else if self.unknown {
            2
        } else {
            0
        }
    }
}

struct Out<'a> {
    dir: &'a Path,
    report: Report,
}

impl Out<'_> {
    fn line(&mut self, s: impl AsRef<str>) {
        self.report.stdout.push_str(s.as_ref());
        self.report.stdout.push('\n');
    }

    /// Writes through a temporary file so readers never see a partial file.
    fn file(&mut self, name: &str, content: &str) -> Result<()> {
        std::fs::create_dir_all(self.dir).map_err(|e| Error::Io(format!("{}: {e}", self.dir.display())))?;
        let path = self.dir.join(name);
        let tmp = self.dir.join(format!(".{name}.tmp"));
        std::fs::write(&tmp, content).map_err(|e| Error::Io(format!("{}: {e}", tmp.display())))?;
        std::fs::rename(&tmp, &path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        self.report.files.push(path);
        Ok(())
    }

    fn table(&mut self, name: &str, header: &[&str], rows: &[Vec<String>]) -> Result<()> {
        let mut s = header.join("\t");
        s.push('\n');
        for r in rows {
            s.push_str(&r.join("\t"));
            s.push('\n');
        }
        self.file(name, &s)
    }
}

fn arg<'a>(args: &'a [String], i: usize, what: &str) -> Result<&'a str> {
    args.get(i)
        .map(String::as_str)
        .ok_or_else(|| Error::MissingArgument(what.to_string()))
}

fn int_arg(args: &[String], i: usize, what: &str) -> Result<i64> {
    let s = arg(args, i, what)?;
    s.parse()
        .map_err(|_| Error::PreconditionViolated(format!("{what} must be an integer, got '{s}'")))
}

fn opt_int(args: &[String], i: usize, what: &str) -> Result<Option<i64>> {
    if args.len() > i {
        int_arg(args, i, what).map(Some)
    } else {
        Ok(None)
    }
}

/// Parses `0`, `Z`, `Z^r`, `Z/d`, `F2^r` and sums of these joined by `+`.
pub fn parse_group(s: &str, ring: RingTag) -> Result<FgAbGroup> {
    let bad = || Error::PreconditionViolated(format!("cannot read group '{s}'"));
    let mut free = 0usize;
    let mut torsion: Vec<BigInt> = Vec::new();
    for part in s.split('+').map(str::trim) {
        if part == "0" {
            continue;
        }
        let (base, exp) = match part.split_once('^') {
            Some((b, e)) => (b.trim(), e.trim().parse::<usize>().map_err(|_| bad())?),
            None => (part, 1),
        };
        if let Some(d) = base.strip_prefix("Z/") {
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            torsion.extend(std::iter::repeat_n(d, exp));
        } else if base == "Z" || base == ring.to_string() {
            free += exp;
        } else {
            return Err(bad());
        }
    }
    let n = free + torsion.len();
    let mut rel = IntMatrix::zeros(n, torsion.len(), ring);
    for (i, d) in torsion.iter().enumerate() {
        rel.set(i, i, ring.reduce(d.clone()));
    }
    Ok(group_from_presentation(&rel).group)
}

fn classification_row(c: &MapClassification) -> Vec<String> {
    vec![
        c.max_n_equivalence.to_string(),
        c.min_co_n_equivalence.to_string(),
        c.is_weak_equivalence.to_string().to_uppercase(),
    ]
}

fn factors(g: &FgAbGroup) -> String {
    if g.invariant_factors().is_empty() {
        "-".into()
    } else {
        g.invariant_factors().iter().map(|d| d.to_string()).collect::<Vec<_>>().join(",")
    }
}

fn matrix_cell(m: &IntMatrix) -> String {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
        .collect::<Vec<_>>()
        .join(";")
}

fn unknown_cell(budget: usize) -> String {
    format!("UNKNOWN budget={budget}")
}

fn group_or_unknown(g: &Option<FgAbGroup>, budget: usize, out: &mut Out) -> String {
    match g {
        Some(g) => g.to_string(),
        None => {
            out.report.unknown = true;
            unknown_cell(budget)
        }
    }
}

fn lim_cells(r: &LimLim1, budget: usize, out: &mut Out) -> Vec<String> {
    if r.lim1 == crate::pro::Lim1Status::Unknown {
        out.report.unknown = true;
    }
    let lim1 = match r.lim1 {
        crate::pro::Lim1Status::Unknown => unknown_cell(budget),
        s => s.to_string(),
    };
    vec![
        group_or_unknown(&r.lim, budget, out),
        lim1,
        r.mittag_leffler.map_or("UNKNOWN".into(), |b| b.to_string().to_uppercase()),
    ]
}

/// A tower argument; a complex is read as the constant tower on it.
fn tower_like(ws: &Workspace, name: &str) -> Result<Tower<ChainMap>> {
    match ws.get(name)? {
        Object::Tower(t) => Ok(t.clone()),
        Object::Complex(x) => Ok(Tower::constant(x.clone())),
        o => Err(Error::PreconditionViolated(format!("'{name}' is a {}, not a tower", o.kind()))),
    }
}

fn empty_file(ring: RingTag) -> WorkspaceFile {
    WorkspaceFile::parse(&format!("{{\"ring\": \"{ring}\"}}")).expect("minimal document")
}

fn homology_rows(x: &ChainComplex) -> Vec<(i64, FgAbGroup)> {
    x.degrees().map(|n| (n, homology(x, n))).collect()
}

/// Runs one subcommand, writing its tables into `out_dir`.
pub fn run_command(ws: &Workspace, command: &str, args: &[String], out_dir: &Path, seed: u64) -> Result<Report> {
    let mut out = Out {
        dir: out_dir,
        report: Report::default(),
    };
    let cfg = &ws.config;
    let budget = cfg.budget_filler;
    match command {
        "homology" => {
            let name = arg(args, 0, "complex")?;
            let x = ws.complex(name)?;
            let rows: Vec<Vec<String>> = homology_rows(x).iter().map(|(n, g)| vec![n.to_string(), g.to_string()]).collect();
            for r in &rows {
                out.line(format!("{}: {}", r[0], r[1]));
            }
            out.table(&format!("homology_{name}.tsv"), &["degree", "group"], &rows)?;
        }
        "truncate" => {
            let name = arg(args, 0, "complex")?;
            let n = int_arg(args, 1, "degree")?;
            let x = ws.complex(name)?;
            let above = truncate_above_data(x, n);
            let below = truncate_below_free(x, n - 1);
            let (ge, le) = (format!("{name}_ge_{n}"), format!("{name}_le_{}", n - 1));
            let mut file = empty_file(ws.ring);
            file.objects.complexes.insert(name.into(), complex_spec(x));
            file.objects.complexes.insert(ge.clone(), complex_spec(&above.complex));
            file.objects.complexes.insert(le.clone(), complex_spec(&below));
            file.objects.maps.insert(format!("{ge}_incl"), map_spec(&above.incl, &ge, name));
            out.file(&format!("truncate_{name}_{n}.json"), &file.to_canonical())?;
            let lo = x.lo().min(above.complex.lo()).min(below.lo());
            let hi = x.hi().max(above.complex.hi()).max(below.hi());
            let rows: Vec<Vec<String>> = (lo..=hi)
                .map(|k| {
                    vec![
                        k.to_string(),
                        homology(x, k).to_string(),
                        homology(&above.complex, k).to_string(),
                        homology(&below, k).to_string(),
                    ]
                })
                .collect();
            for r in &rows {
                out.line(r.join("\t"));
            }
            out.table(&format!("truncate_{name}_{n}.tsv"), &["degree", "H", "H_ge", "H_le"], &rows)?;
        }
        "classify" => {
            let name = arg(args, 0, "map")?;
            let row = classification_row(&classify_map(ws.map(name)?));
            out.line(row.join("\t"));
            out.table(
                &format!("classify_{name}.tsv"),
                &["max_n_equivalence", "min_co_n_equivalence", "weak_equivalence"],
                &[row],
            )?;
        }
        "factor" => {
            let name = arg(args, 0, "map")?;
            let n = int_arg(args, 1, "degree")?;
            let f = ws.map(name)?;
            let fac = factor_n(f, n)?;
            let spec = &ws.file.objects.maps[name];
            let mid = format!("{name}_mid_{n}");
            let mut file = empty_file(ws.ring);
            file.objects.complexes.insert(spec.source.clone(), complex_spec(f.source()));
            file.objects.complexes.insert(spec.target.clone(), complex_spec(f.target()));
            file.objects.complexes.insert(mid.clone(), complex_spec(&fac.middle));
            file.objects.maps.insert(format!("{name}_i_{n}"), map_spec(&fac.i, &spec.source, &mid));
            file.objects.maps.insert(format!("{name}_p_{n}"), map_spec(&fac.p, &mid, &spec.target));
            out.file(&format!("factor_{name}_{n}.json"), &file.to_canonical())?;
            let mut rows = Vec::new();
            for (label, g, ok) in [
                ("i", &fac.i, is_n_cofibration(&fac.i, n)),
                ("p", &fac.p, is_co_n_fibration(&fac.p, n)),
            ] {
                let mut r = vec![label.to_string()];
                r.extend(classification_row(&classify_map(g)));
                r.push(ok.to_string().to_uppercase());
                out.line(r.join("\t"));
                rows.push(r);
            }
            out.table(
                &format!("factor_{name}_{n}.tsv"),
                &["map", "max_n_equivalence", "min_co_n_equivalence", "weak_equivalence", "postcondition"],
                &rows,
            )?;
        }
        "lift" => {
            let names: Vec<&str> = ["i", "p", "top", "bottom"]
                .iter()
                .enumerate()
                .map(|(k, w)| arg(args, k, w))
                .collect::<Result<_>>()?;
            let n = int_arg(args, 4, "degree")?;
            let [i, p, top, bottom] = [names[0], names[1], names[2], names[3]].map(|s| ws.map(s));
            let h = find_lift(i?, p?, top?, bottom?, n)?;
            let verdict = if h.is_some() { "TRUE" } else { "FALSE" };
            out.line(format!("lift\t{verdict}"));
            out.table(&format!("lift_{}_{}.tsv", names[0], names[1]), &["lift"], &[vec![verdict.into()]])?;
            if let Some(h) = h {
                let (b, x) = (&ws.file.objects.maps[names[0]].target, &ws.file.objects.maps[names[1]].source);
                let mut file = empty_file(ws.ring);
                file.objects.complexes.insert(b.clone(), complex_spec(h.source()));
                file.objects.complexes.insert(x.clone(), complex_spec(h.target()));
                file.objects.maps.insert("lift".into(), map_spec(&h, b, x));
                out.file(&format!("lift_{}_{}.json", names[0], names[1]), &file.to_canonical())?;
            }
        }
        "cohomology" => {
            let name = arg(args, 0, "complex")?;
            let a = parse_group(arg(args, 1, "coefficient group")?, ws.ring)?;
            let x = ws.complex(name)?;
            let degrees: Vec<i64> = match opt_int(args, 2, "degree")? {
                Some(p) => vec![p],
                None if x.is_zero() => vec![],
                None => (x.lo() - 1..=x.hi()).collect(),
            };
            let mut rows = Vec::new();
            for p in degrees {
                let g = cohomology_with_coefficients(x, &a, p)?;
                out.line(format!("{p}: {g}"));
                rows.push(vec![p.to_string(), g.to_string()]);
            }
            out.table(&format!("cohomology_{name}.tsv"), &["degree", "group"], &rows)?;
        }
        "derived-hom" => {
            let (xn, yn) = (arg(args, 0, "source")?, arg(args, 1, "target")?);
            let (x, y) = (ws.complex(xn)?, ws.complex(yn)?);
            let degrees: Vec<i64> = match opt_int(args, 2, "degree")? {
                Some(n) => vec![n],
                None if x.is_zero() || y.is_zero() => vec![],
                None => (y.lo() - x.hi()..=y.hi() - x.lo()).collect(),
            };
            let mut rows = Vec::new();
            for n in degrees {
                let g = derived_hom(x, y, n)?;
                out.line(format!("{n}: {g}"));
                rows.push(vec![n.to_string(), g.to_string()]);
            }
            out.table(&format!("derived_hom_{xn}_{yn}.tsv"), &["degree", "group"], &rows)?;
        }
        "pro-iso" => {
            let name = arg(args, 0, "promap")?;
            let f = ws.promap(name)?;
            let degrees = match opt_int(args, 1, "degree")? {
                Some(n) => vec![n],
                None => {
                    let mut d = homology_support(f.source());
                    d.extend(homology_support(f.target()));
                    d.sort_unstable();
                    d.dedup();
                    d
                }
            };
            let mut rows = Vec::new();
            for n in degrees {
                let r = is_pro_isomorphism(&homology_pro_map(f, n)?, budget)?;
                let (verdict, detail) = match &r {
                    ProIsoResult::True(_) => ("TRUE".to_string(), "-".to_string()),
                    ProIsoResult::False { level, reason } => ("FALSE".into(), format!("level {level}: {reason}")),
                    ProIsoResult::Unknown { budget } => {
                        out.report.unknown = true;
                        ("UNKNOWN".into(), format!("budget={budget}"))
                    }
                };
                out.line(format!("H_{n}\t{verdict}\t{detail}"));
                rows.push(vec![n.to_string(), verdict, detail]);
            }
            out.table(&format!("pro_iso_{name}.tsv"), &["degree", "verdict", "detail"], &rows)?;
        }
        "limlim1" => {
            let name = arg(args, 0, "tower")?;
            let t = tower_like(ws, name)?;
            let degrees = match opt_int(args, 1, "degree")? {
                Some(n) => vec![n],
                None => homology_support(&t),
            };
            let mut rows = Vec::new();
            let mut levels = Vec::new();
            for n in degrees {
                let h = homology_tower(&t, n)?;
                let mut r = vec![n.to_string()];
                r.extend(lim_cells(&lim_lim1(&h)?, budget, &mut out));
                out.line(r.join("\t"));
                rows.push(r);
                for s in 0..cfg.lim_window {
                    levels.push(vec![
                        n.to_string(),
                        s.to_string(),
                        h.entry(s).to_string(),
                        matrix_cell(h.map(s).matrix()),
                    ]);
                }
            }
            out.table(
                &format!("limlim1_{name}.tsv"),
                &["degree", "lim", "lim1", "mittag_leffler"],
                &rows,
            )?;
            out.table(
                &format!("limlim1_{name}_levels.tsv"),
                &["degree", "level", "group", "map_to_previous"],
                &levels,
            )?;
        }
        "prohom" => {
            let (xn, yn) = (arg(args, 0, "source")?, arg(args, 1, "target")?);
            let n = int_arg(args, 2, "degree")?;
            let r = tower_hom(&tower_like(ws, xn)?, &tower_like(ws, yn)?, n)?;
            let mut row = vec![n.to_string()];
            row.extend(lim_cells(&r.result, budget, &mut out));
            out.line(row.join("\t"));
            out.table(
                &format!("prohom_{xn}_{yn}_{n}.tsv"),
                &["degree", "lim", "lim1", "mittag_leffler"],
                &[row],
            )?;
        }
        "prohom-const" => {
            let (xn, yn) = (arg(args, 0, "source")?, arg(args, 1, "target")?);
            let n = int_arg(args, 2, "degree")?;
            let row = match (ws.get(xn)?, ws.get(yn)?) {
                (Object::Complex(x), Object::Tower(y)) => {
                    let r = hom_from_constant(x, y, n)?;
                    let mut row = vec![n.to_string()];
                    row.extend(lim_cells(&r.result, budget, &mut out));
                    row
                }
                (Object::Tower(x), Object::Complex(y)) => {
                    let g = hom_to_constant(x, y, n)?;
                    vec![n.to_string(), group_or_unknown(&g, budget, &mut out), "Zero".into(), "TRUE".into()]
                }
                _ => {
                    return Err(Error::PreconditionViolated(
                        "prohom-const needs one complex and one tower".into(),
                    ))
                }
            };
            out.line(row.join("\t"));
            out.table(
                &format!("prohom_const_{xn}_{yn}_{n}.tsv"),
                &["degree", "lim", "lim1", "mittag_leffler"],
                &[row],
            )?;
        }
        "whitehead" => {
            let name = arg(args, 0, "promap")?;
            let v = is_hstar_weak_equivalence(ws.promap(name)?, budget)?;
            let m = v.m_witness.map_or("-".into(), |m| m.to_string());
            let (verdict, detail) = match &v.verdict {
                Verdict::WeakEquivalence => ("TRUE".to_string(), "-".to_string()),
                Verdict::NotWeakEquivalence(r) => ("FALSE".into(), r.clone()),
                Verdict::Unknown { budget } => {
                    out.report.unknown = true;
                    ("UNKNOWN".into(), format!("budget={budget}"))
                }
            };
            let row = vec![verdict, m, detail];
            out.line(row.join("\t"));
            out.table(&format!("whitehead_{name}.tsv"), &["verdict", "m", "detail"], &[row])?;
        }
        "postnikov" => {
            let name = arg(args, 0, "tower")?;
            let y = tower_like(ws, name)?;
            let r = postnikov_replacement(&y)?;
            let mut file = empty_file(ws.ring);
            add_tower(&mut file, &format!("{name}_post"), &r.tower);
            out.file(&format!("postnikov_{name}.json"), &file.to_canonical())?;
            let mut rows = Vec::new();
            for (t, w) in r.tower.entries().iter().enumerate() {
                for (n, g) in homology_rows(w) {
                    if !g.is_zero() {
                        rows.push(vec![t.to_string(), n.to_string(), g.to_string()]);
                    }
                }
            }
            out.table(&format!("postnikov_{name}.tsv"), &["level", "degree", "group"], &rows)?;
            let v = is_hstar_weak_equivalence(&r.map, budget)?;
            match v.verdict {
                Verdict::WeakEquivalence => {}
                Verdict::NotWeakEquivalence(_) => out.report.failed = true,
                Verdict::Unknown { .. } => out.report.unknown = true,
            }
            out.line(format!("n0\t{}", r.n0));
            out.line(format!("levels\t{}", r.tower.stored_len()));
            out.line(format!("map\t{v}"));
        }
        "fibrant-check" => {
            let name = arg(args, 0, "tower")?;
            let ok = is_hstar_fibrant(&tower_like(ws, name)?);
            let v = ok.to_string().to_uppercase();
            out.line(format!("fibrant\t{v}"));
            out.table(&format!("fibrant_{name}.tsv"), &["fibrant"], &[vec![v]])?;
        }
        "ahss" => {
            let (xn, yn) = (arg(args, 0, "source")?, arg(args, 1, "target")?);
            let (x, y) = (ws.complex(xn)?, ws.complex(yn)?);
            let ss = run_to_stable(x, y)?;
            let stem = format!("ahss_{xn}_{yn}");
            for pg in &ss.pages {
                let rows: Vec<Vec<String>> = pg
                    .groups
                    .iter()
                    .map(|(&(p, q), g)| {
                        vec![p.to_string(), q.to_string(), factors(g), g.free_rank().to_string(), g.to_string()]
                    })
                    .collect();
                out.table(
                    &format!("{stem}_E{}.tsv", pg.r),
                    &["p", "q", "invariant_factors", "free_rank", "group"],
                    &rows,
                )?;
                let r = pg.r as i64;
                let drows: Vec<Vec<String>> = pg
                    .differentials
                    .iter()
                    .filter(|(_, d)| !d.source().is_zero() && !d.target().is_zero())
                    .map(|(&(p, q), d)| {
                        vec![
                            p.to_string(),
                            q.to_string(),
                            (p - r).to_string(),
                            (q + r - 1).to_string(),
                            matrix_cell(d.matrix()),
                        ]
                    })
                    .collect();
                out.table(
                    &format!("{stem}_E{}_d.tsv", pg.r),
                    &["p", "q", "target_p", "target_q", "matrix"],
                    &drows,
                )?;
                for (&(p, q), g) in &pg.groups {
                    if !g.is_zero() {
                        out.line(format!("E{}\t{p}\t{q}\t{g}", pg.r));
                    }
                }
            }
            let c = convergence_check(x, y)?;
            let flag = |b: bool| b.to_string().to_uppercase();
            let mut rows = vec![
                vec!["stable_page".to_string(), c.stable_page.to_string()],
                vec!["lim_ok".into(), flag(c.lim_ok)],
                vec!["lim1_ok".into(), flag(c.lim1_ok)],
                vec!["colim_ok".into(), flag(c.colim_ok)],
                vec!["all_iso".into(), flag(c.all_iso())],
                vec!["converges".into(), flag(c.converges())],
            ];
            out.line(format!("converges\t{}", flag(c.converges())));
            out.table(&format!("{stem}_convergence.tsv"), &["key", "value"], &rows)?;
            rows = c
                .graded_comparison
                .iter()
                .map(|s| {
                    vec![
                        s.p.to_string(),
                        s.q.to_string(),
                        s.e_infinity.to_string(),
                        s.graded.to_string(),
                        flag(s.is_iso()),
                    ]
                })
                .collect();
            out.table(&format!("{stem}_graded.tsv"), &["p", "q", "e_infinity", "graded", "iso"], &rows)?;
            out.report.failed |= !c.converges();
        }
        "pro-ahss" => {
            let (xn, yn) = (arg(args, 0, "tower")?, arg(args, 1, "target")?);
            let lo = int_arg(args, 2, "lowest total degree")?;
            let hi = int_arg(args, 3, "highest total degree")?;
            let r = pro_ahss(&tower_like(ws, xn)?, ws.complex(yn)?, lo..=hi)?;
            let stem = format!("pro_ahss_{xn}_{yn}");
            let mut rows = Vec::new();
            for (&(p, q), g) in &r.e2 {
                rows.push(vec![p.to_string(), q.to_string(), group_or_unknown(g, budget, &mut out)]);
            }
            out.table(&format!("{stem}_E2.tsv"), &["p", "q", "group"], &rows)?;
            let mut rows = Vec::new();
            for (&n, g) in &r.abutment {
                let cell = group_or_unknown(g, budget, &mut out);
                out.line(format!("abutment\t{n}\t{cell}"));
                rows.push(vec![n.to_string(), cell]);
            }
            out.table(&format!("{stem}_abutment.tsv"), &["n", "group"], &rows)?;
            let rows: Vec<Vec<String>> = r
                .comparison
                .iter()
                .flatten()
                .map(|s| {
                    vec![
                        s.p.to_string(),
                        s.q.to_string(),
                        s.e_infinity.to_string(),
                        s.graded.to_string(),
                        s.is_iso().to_string().to_uppercase(),
                    ]
                })
                .collect();
            out.table(&format!("{stem}_graded.tsv"), &["p", "q", "e_infinity", "graded", "iso"], &rows)?;
            let tri = |b: Option<bool>| b.map_or(unknown_cell(budget), |b| b.to_string().to_uppercase());
            let rows = vec![
                vec!["e2_consistent".to_string(), tri(r.e2_consistent)],
                vec!["lim_ok".into(), tri(r.lim_ok)],
                vec!["lim1_ok".into(), tri(r.lim1_ok)],
                vec!["all_iso".into(), tri(r.all_iso())],
            ];
            for row in &rows {
                out.line(row.join("\t"));
            }
            out.table(&format!("{stem}_report.tsv"), &["key", "value"], &rows)?;
            out.report.unknown |= r.has_unknown();
            out.report.failed |= r.all_iso() == Some(false) || r.e2_consistent == Some(false);
        }
        "selftest" => {
            let suites = run_suites(seed, budget, cfg.budget_reindex)?;
            let mut rows = Vec::new();
            for s in &suites {
                let status = if s.ok() { "PASS" } else { "FAIL" };
                out.line(format!("{}\t{}/{}\t{status}", s.name, s.passed, s.cases));
                rows.push(vec![
                    s.name.to_string(),
                    s.cases.to_string(),
                    s.passed.to_string(),
                    s.first_failure.clone().unwrap_or_else(|| "-".into()),
                ]);
                out.report.failed |= !s.ok();
            }
            out.table("selftest.tsv", &["suite", "cases", "passed", "first_failure"], &rows)?;
        }
        other => return Err(Error::UnknownCommand(other.to_string())),
    }
    Ok(out.report)
}

#[cfg(test)]
mod tests {
    use super::*;

    const WS: &str = r#"{"ring": "Z", "objects": {
        "complexes": {"P": {"ranks": {"0": 1}}, "M2": {"ranks": {"0": 1, "1": 1}, "diffs": {"1": [["2"]]}}},
        "maps": {"two": {"source": "P", "target": "P", "comps": {"0": [["2"]]}}},
        "towers": {"T": {"entries": ["P"], "tail": {"repeat_from": 0, "endo": "two"}}}}}"#;

    fn run(cmd: &str, args: &[&str]) -> (Report, tempfile::TempDir) {
        let ws = Workspace::parse(WS).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let args: Vec<String> = args.iter().map(|s| s.to_string()).collect();
        (run_command(&ws, cmd, &args, dir.path(), 0).unwrap(), dir)
    }

    #[test]
    fn homology_of_point() {
        let (r, dir) = run("homology", &["P"]);
        assert_eq!(r.stdout, "0: Z\n");
        let t = std::fs::read_to_string(dir.path().join("homology_P.tsv")).unwrap();
        assert_eq!(t, "degree\tgroup\n0\tZ\n");
        assert_eq!(r.exit_code(), 0);
    }

    #[test]
    fn ahss_on_moore() {
        let (r, dir) = run("ahss", &["M2", "M2"]);
        assert_eq!(r.exit_code(), 0);
        let e2 = std::fs::read_to_string(dir.path().join("ahss_M2_M2_E2.tsv")).unwrap();
        assert!(e2.contains("0\t0\t2\t0\tZ/2\n"), "{e2}");
        assert!(e2.contains("-1\t0\t2\t0\tZ/2\n"), "{e2}");
    }

    #[test]
    fn unknown_colimit_exits_two() {
        let (r, _dir) = run("prohom-const", &["T", "P", "0"]);
        assert_eq!(r.exit_code(), 2);
        assert!(r.stdout.contains("UNKNOWN budget="));
    }

    #[test]
    fn errors() {
        let ws = Workspace::parse(WS).unwrap();
        let dir = tempfile::tempdir().unwrap();
        assert!(matches!(
            run_command(&ws, "frobnicate", &[], dir.path(), 0),
            Err(Error::UnknownCommand(_))
        ));
        assert!(matches!(
            run_command(&ws, "homology", &[], dir.path(), 0),
            Err(Error::MissingArgument(_))
        ));
    }

    #[test]
    fn groups_parse() {
        let z = RingTag::Integers;
        let g = parse_group("Z^2 + Z/4 + Z/2", z).unwrap();
        assert_eq!(g.to_string(), "Z^2 + Z/2 + Z/4");
        assert_eq!(parse_group("Z/2 + Z/3", z).unwrap(), FgAbGroup::cyclic(6));
        assert!(parse_group("0", z).unwrap().is_zero());
        assert!(parse_group("Q", z).is_err());
    }

    #[test]
    fn outputs_are_deterministic() {
        let (a, da) = run("limlim1", &["T"]);
        let (b, db) = run("limlim1", &["T"]);
        assert_eq!(a.stdout, b.stdout);
        for name in ["limlim1_T.tsv", "limlim1_T_levels.tsv"] {
            let x = std::fs::read(da.path().join(name)).unwrap();
            let y = std::fs::read(db.path().join(name)).unwrap();
            assert_eq!(x, y);
        }
    }
}

//! The native text format.
//!
//! Line-oriented UTF-8, integers in decimal, floats in shortest round-trip
//! form. Layout:
//!
//! ```text
//! plexmesh 1
//! chart <n>
//! <shape> <cone points...> <orientations...>     (one line per point)
//! labels <count>
//! label <name> <entries>
//! <point> <value>                                 (per entry)
//! coordinates <dim> <entries>
//! <point> <x> [y] [z]                             (per entry)
//! end
//! ```
//!
//! The cone and orientation counts follow from the shape. Reading rebuilds
//! supports and strata; a round-trip reproduces the mesh point for point,
//! including cone orders and orientations.

use std::io::{BufRead, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::geometry::Coordinates;
use crate::plex::{Label, Plex};
use crate::polytope::{Orientation, Polytope};
use crate::topology::MeshTopology;

const MAGIC: &str = "plexmesh";
const VERSION: &str = "1";

pub fn write_native<W: Write>(
    w: &mut W,
    mesh: &dyn MeshTopology,
    coords: Option<&Coordinates<f64>>,
) -> Result<()> {
    writeln!(w, "{MAGIC} {VERSION}")?;
    let n = mesh.chart_size();
    writeln!(w, "chart {n}")?;
    for p in 0..n {
        let shape = mesh.shape_of(p)?;
        let mut line = shape.name().to_string();
        let cone = mesh.cone(p)?;
        for &(q, _) in &cone {
            line.push(' ');
            line.push_str(&q.to_string());
        }
        for &(_, o) in &cone {
            line.push(' ');
            line.push_str(&o.0.to_string());
        }
        writeln!(w, "{line}")?;
    }
    let names = mesh.label_names();
    let mut sections: Vec<(String, Vec<(usize, i64)>)> = Vec::new();
    for name in names {
        let mut entries = Vec::new();
        for p in 0..n {
            if let Some(v) = mesh.label_get(&name, p)? {
                entries.push((p, v));
            }
        }
        if !entries.is_empty() {
            sections.push((name, entries));
        }
    }
    writeln!(w, "labels {}", sections.len())?;
    for (name, entries) in sections {
        writeln!(w, "label {name} {}", entries.len())?;
        for (p, v) in entries {
            writeln!(w, "{p} {v}")?;
        }
    }
    match coords {
        Some(c) => {
            writeln!(w, "coordinates {} {}", c.dim(), c.len())?;
            for (p, x) in c.iter() {
                let mut line = p.to_string();
                for v in x {
                    line.push(' ');
                    line.push_str(&format!("{v}"));
                }
                writeln!(w, "{line}")?;
            }
        }
        None => writeln!(w, "coordinates 0 0")?,
    }
    writeln!(w, "end")?;
    Ok(())
}

pub fn write_native_string(
    mesh: &dyn MeshTopology,
    coords: Option<&Coordinates<f64>>,
) -> Result<String> {
    let mut buf = Vec::new();
    write_native(&mut buf, mesh, coords)?;
    Ok(String::from_utf8(buf).expect("native format is ascii"))
}

struct Lines<'a> {
    inner: std::str::Lines<'a>,
    path: &'a str,
    line: usize,
}

impl<'a> Lines<'a> {
    fn next(&mut self) -> Result<&'a str> {
        self.line += 1;
        self.inner.next().ok_or_else(|| Error::Parse {
            path: self.path.to_string(),
            line: self.line,
            msg: "unexpected end of file".into(),
        })
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse {
            path: self.path.to_string(),
            line: self.line,
            msg: msg.into(),
        }
    }

    fn parse<T: std::str::FromStr>(&self, tok: Option<&str>, what: &str) -> Result<T> {
        tok.ok_or_else(|| self.err(format!("missing {what}")))?
            .parse()
            .map_err(|_| self.err(format!("malformed {what}")))
    }
}

pub fn read_native_str(text: &str, path: &str) -> Result<(Plex, Option<Coordinates<f64>>)> {
    let mut lines = Lines {
        inner: text.lines(),
        path,
        line: 0,
    };
    let header = lines.next()?;
    let mut it = header.split_whitespace();
    if it.next() != Some(MAGIC) {
        return Err(lines.err("not a plexmesh file"));
    }
    let version = it.next().unwrap_or("");
    if version != VERSION {
        return Err(Error::VersionMismatch(version.into(), VERSION.into()));
    }
    let chart_line = lines.next()?;
    let mut it = chart_line.split_whitespace();
    if it.next() != Some("chart") {
        return Err(lines.err("expected `chart <n>`"));
    }
    let n: usize = lines.parse(it.next(), "chart size")?;
    let mut shapes = Vec::with_capacity(n);
    let mut cones = Vec::with_capacity(n);
    for _ in 0..n {
        let line = lines.next()?;
        let mut it = line.split_whitespace();
        let name = it.next().ok_or_else(|| lines.err("missing shape"))?;
        let shape = Polytope::from_name(name)
            .ok_or_else(|| lines.err(format!("unknown shape `{name}`")))?;
        let size = shape.cone_size();
        let mut points = Vec::with_capacity(size);
        for _ in 0..size {
            points.push(lines.parse::<usize>(it.next(), "cone point")?);
        }
        let mut cone = Vec::with_capacity(size);
        for q in points {
            let o: i8 = lines.parse(it.next(), "orientation")?;
            cone.push((q, Orientation(o)));
        }
        if it.next().is_some() {
            return Err(lines.err("trailing tokens on point record"));
        }
        shapes.push(shape);
        cones.push(cone);
    }
    let mut mesh = Plex::build(shapes, cones)?;
    let labels_line = lines.next()?;
    let mut it = labels_line.split_whitespace();
    if it.next() != Some("labels") {
        return Err(lines.err("expected `labels <n>`"));
    }
    let nl: usize = lines.parse(it.next(), "label count")?;
    for _ in 0..nl {
        let line = lines.next()?;
        let mut it = line.split_whitespace();
        if it.next() != Some("label") {
            return Err(lines.err("expected `label <name> <n>`"));
        }
        let name = it.next().ok_or_else(|| lines.err("missing label name"))?;
        let entries: usize = lines.parse(it.next(), "label entry count")?;
        let mut label = Label::default();
        for _ in 0..entries {
            let line = lines.next()?;
            let mut it = line.split_whitespace();
            let p: usize = lines.parse(it.next(), "label point")?;
            let v: i64 = lines.parse(it.next(), "label value")?;
            label.set(p, v);
        }
        mesh.set_label(name, label);
    }
    let coord_line = lines.next()?;
    let mut it = coord_line.split_whitespace();
    if it.next() != Some("coordinates") {
        return Err(lines.err("expected `coordinates <dim> <n>`"));
    }
    let dim: usize = lines.parse(it.next(), "coordinate dimension")?;
    let entries: usize = lines.parse(it.next(), "coordinate count")?;
    let coords = if entries == 0 && dim == 0 {
        None
    } else {
        let mut c = Coordinates::new(dim);
        for _ in 0..entries {
            let line = lines.next()?;
            let mut it = line.split_whitespace();
            let p: usize = lines.parse(it.next(), "coordinate point")?;
            let mut x = Vec::with_capacity(dim);
            for _ in 0..dim {
                x.push(lines.parse::<f64>(it.next(), "coordinate")?);
            }
            c.set(p, &x);
        }
        Some(c)
    };
    let end = lines.next()?;
    if end.trim() != "end" {
        return Err(lines.err("expected `end`"));
    }
    Ok((mesh, coords))
}

pub fn read_native(path: &Path) -> Result<(Plex, Option<Coordinates<f64>>)> {
    let file = std::fs::File::open(path)?;
    let mut text = String::new();
    std::io::BufReader::new(file).read_to_string(&mut text)?;
    read_native_str(&text, &path.display().to_string())
}

use std::io::Read;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate;

    #[test]
    fn round_trip_doublet() {
        let (mesh, coords) = generate::gen_box::<f64>(&[1, 1], true).unwrap();
        let text = write_native_string(&mesh, Some(&coords)).unwrap();
        let (back, bcoords) = read_native_str(&text, "test").unwrap();
        assert_eq!(mesh.chart_size(), back.chart_size());
        for p in 0..mesh.chart_size() {
            assert_eq!(mesh.shape_of(p).unwrap(), back.shape_of(p).unwrap());
            assert_eq!(mesh.cone(p).unwrap(), back.cone(p).unwrap());
            assert_eq!(mesh.support(p).unwrap(), back.support(p).unwrap());
        }
        assert_eq!(Some(coords), bcoords);
        // writing again is byte-identical
        assert_eq!(
            text,
            write_native_string(&back, bcoords.as_ref()).unwrap()
        );
    }

    #[test]
    fn round_trip_labels() {
        let (mut mesh, _) = generate::gen_box::<f64>(&[2, 2], false).unwrap();
        mesh.label_set("extra", 0, 42).unwrap();
        let text = write_native_string(&mesh, None).unwrap();
        let (back, _) = read_native_str(&text, "test").unwrap();
        assert_eq!(back.label_get("extra", 0).unwrap(), Some(42));
        for v in 1..=4 {
            assert_eq!(
                mesh.label_stratum("marker", v).unwrap(),
                back.label_stratum("marker", v).unwrap()
            );
        }
    }

    #[test]
    fn truncated_file_reports_line() {
        let (mesh, _) = generate::gen_box::<f64>(&[1, 1], true).unwrap();
        let text = write_native_string(&mesh, None).unwrap();
        let cut: String = text.lines().take(5).collect::<Vec<_>>().join("\n");
        match read_native_str(&cut, "cut") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 6),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn version_mismatch() {
        let err = read_native_str("plexmesh 9\nchart 0\n", "v").unwrap_err();
        assert!(matches!(err, Error::VersionMismatch(..)));
    }
}

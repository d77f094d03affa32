//! Embedded golden data: the positive-root tables for all five types and
//! the orbit tables for G2, F4 and E6 (label, weighted diagram, orbit
//! representative as a sum of root vectors, and the decorated diagram of
//! the representative), together with the verification routines tying the
//! generated algebras back to the tables.
//!
//! The data files store everything in display conventions exactly as
//! printed; the per-type numbering permutation is applied on load. The
//! single invariant "every representative root has eta = 2 under the h of
//! the stored diagram" is the tripwire for transcription or permutation
//! errors.

use crate::algebra::{grade, LieAlgebra};
use crate::orbits::{
    complete_sl2, h_from_diagram, rep_diagram, weighted_dynkin, RepDiagram, RepEdge,
    WeightedDiagram,
};
use crate::roots::{build, Kind};
use crate::LieError;
use exact_linalg::rat::rat;

const ROOTS_G2: &str = include_str!("../data/roots_g2.txt");
const ROOTS_F4: &str = include_str!("../data/roots_f4.txt");
const ROOTS_E6: &str = include_str!("../data/roots_e6.txt");
const ROOTS_E7: &str = include_str!("../data/roots_e7.txt");
const ROOTS_E8: &str = include_str!("../data/roots_e8.txt");
const ORBITS_G2: &str = include_str!("../data/orbits_g2.txt");
const ORBITS_F4: &str = include_str!("../data/orbits_f4.txt");
const ORBITS_E6: &str = include_str!("../data/orbits_e6.txt");

/// One row of an orbit table.
#[derive(Clone, Debug)]
pub struct OrbitRecord {
    pub kind: Kind,
    /// Bala-Carter label as printed (with ~ for tildes)
    pub label: String,
    /// weighted diagram labels in display order, as printed
    pub diagram_display: Vec<u8>,
    /// the same diagram in GAP node order
    pub diagram: WeightedDiagram,
    /// 0-based positive root indices of the representative
    pub rep_roots: Vec<usize>,
    /// expected long/short flag per representative node
    pub node_long: Vec<bool>,
    /// expected decorated edges (positions are 0-based into rep_roots)
    pub edges: Vec<RepEdge>,
}

fn embedded_root_table(kind: Kind) -> &'static str {
    match kind {
        Kind::G2 => ROOTS_G2,
        Kind::F4 => ROOTS_F4,
        Kind::E6 => ROOTS_E6,
        Kind::E7 => ROOTS_E7,
        Kind::E8 => ROOTS_E8,
    }
}

fn embedded_orbit_table(kind: Kind) -> Option<&'static str> {
    match kind {
        Kind::G2 => Some(ORBITS_G2),
        Kind::F4 => Some(ORBITS_F4),
        Kind::E6 => Some(ORBITS_E6),
        _ => None,
    }
}

/// Reads a data file from the override directory when set, else the
/// embedded copy. The override lets released data be patched without a
/// rebuild.
fn table_text(kind: Kind, stem: &str, embedded: &'static str) -> String {
    if let Ok(dir) = std::env::var("NILORB_DATA_DIR") {
        let path =
            std::path::Path::new(&dir).join(format!("{stem}_{}.txt", kind.name().to_lowercase()));
        if let Ok(text) = std::fs::read_to_string(&path) {
            return text;
        }
    }
    embedded.to_string()
}

/// The golden positive-root table: display-convention coefficient rows in
/// GAP root order.
pub fn golden_root_table(kind: Kind) -> Result<Vec<Vec<i64>>, LieError> {
    let text = table_text(kind, "roots", embedded_root_table(kind));
    let mut rows = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let row: Result<Vec<i64>, _> = line.split_whitespace().map(str::parse).collect();
        let row = row.map_err(|_| {
            LieError::TableData(format!("{}: bad root row at line {}", kind, lineno + 1))
        })?;
        if row.len() != kind.rank() {
            return Err(LieError::TableData(format!(
                "{}: root row at line {} has {} entries",
                kind,
                lineno + 1,
                row.len()
            )));
        }
        rows.push(row);
    }
    if rows.len() != kind.num_positive_roots() {
        return Err(LieError::TableData(format!(
            "{}: expected {} roots, file has {}",
            kind,
            kind.num_positive_roots(),
            rows.len()
        )));
    }
    Ok(rows)
}

/// Loads the orbit table for G2, F4 or E6.
pub fn load_tables(kind: Kind) -> Result<Vec<OrbitRecord>, LieError> {
    let embedded = embedded_orbit_table(kind).ok_or_else(|| {
        LieError::TableData(format!("no orbit table for {kind} (only G2, F4, E6)"))
    })?;
    let text = table_text(kind, "orbits", embedded);
    let mut records = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let parts: Vec<&str> = line.split('|').map(str::trim).collect();
        if parts.len() != 5 {
            return Err(LieError::TableData(format!(
                "{}: orbit row at line {} needs 5 columns",
                kind,
                lineno + 1
            )));
        }
        let label = parts[0].to_string();
        let diagram_display: Vec<u8> = parts[1]
            .split_whitespace()
            .map(|t| t.parse())
            .collect::<Result<_, _>>()
            .map_err(|_| {
                LieError::TableData(format!("{kind}: bad diagram at line {}", lineno + 1))
            })?;
        let diagram = WeightedDiagram::from_display(kind, &diagram_display)?;
        let rep_roots: Vec<usize> = parts[2]
            .split_whitespace()
            .map(|t| t.parse::<usize>().map(|v| v - 1))
            .collect::<Result<_, _>>()
            .map_err(|_| {
                LieError::TableData(format!("{kind}: bad root index at line {}", lineno + 1))
            })?;
        let node_long: Vec<bool> = parts[3]
            .split_whitespace()
            .map(|t| match t {
                "L" => Ok(true),
                "S" => Ok(false),
                _ => Err(LieError::TableData(format!(
                    "{kind}: bad node flag {t} at line {}",
                    lineno + 1
                ))),
            })
            .collect::<Result<_, _>>()?;
        if node_long.len() != rep_roots.len() {
            return Err(LieError::TableData(format!(
                "{kind}: node flags do not match roots at line {}",
                lineno + 1
            )));
        }
        let edges = parse_edges(parts[4], rep_roots.len())
            .map_err(|m| LieError::TableData(format!("{kind}: {m} at line {}", lineno + 1)))?;
        records.push(OrbitRecord {
            kind,
            label,
            diagram_display,
            diagram,
            rep_roots,
            node_long,
            edges,
        });
    }
    let expected = match kind {
        Kind::G2 => 4,
        Kind::F4 => 15,
        Kind::E6 => 20,
        _ => unreachable!(),
    };
    if records.len() != expected {
        return Err(LieError::TableData(format!(
            "{kind}: expected {expected} orbit rows, file has {}",
            records.len()
        )));
    }
    Ok(records)
}

/// Edge syntax: `-` for none, else comma-separated `i-j:n` or `i-j:nd`
/// (1-based positions, n lines, d = dotted).
fn parse_edges(s: &str, nodes: usize) -> Result<Vec<RepEdge>, String> {
    if s == "-" {
        return Ok(Vec::new());
    }
    let mut edges = Vec::new();
    for item in s.split(',') {
        let item = item.trim();
        let (pair, spec) = item.split_once(':').ok_or("edge needs lines spec")?;
        let (i, j) = pair.split_once('-').ok_or("edge needs i-j")?;
        let i: usize = i.parse().map_err(|_| "bad edge index")?;
        let j: usize = j.parse().map_err(|_| "bad edge index")?;
        if i == 0 || j == 0 || i > nodes || j > nodes || i >= j {
            return Err(format!("edge {i}-{j} out of range"));
        }
        let (lines, dotted) = match spec.strip_suffix('d') {
            Some(n) => (n, true),
            None => (spec, false),
        };
        let lines: u8 = lines.parse().map_err(|_| "bad line count")?;
        if !(1..=3).contains(&lines) {
            return Err("line count must be 1..3".into());
        }
        edges.push(RepEdge {
            i: i - 1,
            j: j - 1,
            lines,
            dotted,
        });
    }
    Ok(edges)
}

/// Per-row verification outcome.
#[derive(Clone, Debug)]
pub struct RowReport {
    pub label: String,
    /// every representative root has eta = 2 under the diagram's h
    pub grading_ok: bool,
    /// weighted_dynkin of the representative equals the stored diagram
    pub diagram_ok: bool,
    /// decorated diagram (lengths, line counts, dotted flags) matches
    pub rep_diagram_ok: bool,
    /// the representative completes to an sl2-triple
    pub sl2_ok: bool,
}

impl RowReport {
    pub fn all_ok(&self) -> bool {
        self.grading_ok && self.diagram_ok && self.rep_diagram_ok && self.sl2_ok
    }
}

#[derive(Clone, Debug)]
pub struct TableReport {
    pub kind: Kind,
    pub rows: Vec<RowReport>,
}

impl TableReport {
    pub fn passed(&self) -> usize {
        self.rows.iter().filter(|r| r.all_ok()).count()
    }

    pub fn all_ok(&self) -> bool {
        self.rows.iter().all(|r| r.all_ok())
    }
}

/// Verifies every table row against the algebra: grading membership,
/// weighted-diagram round-trip, decorated representative diagram, and sl2
/// completion. Failures are report entries, not errors.
pub fn verify_tables(kind: Kind, l: &LieAlgebra) -> Result<TableReport, LieError> {
    let records = load_tables(kind)?;
    let mut rows = Vec::new();
    for rec in &records {
        let h = h_from_diagram(l, &rec.diagram);
        let grading = grade(l, &h)?;
        let grading_ok = rec.rep_roots.iter().all(|&r| grading.eta[r] == 2);
        let e = crate::algebra::LieElement::from_pairs(
            kind,
            rec.rep_roots.iter().map(|&r| (l.x_index(r), rat(1))),
        );
        let diagram_ok = match weighted_dynkin(l, &e) {
            Ok(d) => d == rec.diagram,
            Err(_) => false,
        };
        let rep_diagram_ok = {
            let got = rep_diagram(&l.rs, &rec.rep_roots);
            rep_diagram_matches(&got, rec)
        };
        let sl2_ok = grading_ok && complete_sl2(l, &h, &e).is_ok();
        rows.push(RowReport {
            label: rec.label.clone(),
            grading_ok,
            diagram_ok,
            rep_diagram_ok,
            sl2_ok,
        });
    }
    Ok(TableReport { kind, rows })
}

fn rep_diagram_matches(got: &RepDiagram, rec: &OrbitRecord) -> bool {
    if got.nodes.len() != rec.rep_roots.len() {
        return false;
    }
    for (i, &(root, long)) in got.nodes.iter().enumerate() {
        if root != rec.rep_roots[i] || long != rec.node_long[i] {
            return false;
        }
    }
    if got.edges.len() != rec.edges.len() {
        return false;
    }
    for e in &got.edges {
        let found = rec
            .edges
            .iter()
            .any(|x| x.i == e.i && x.j == e.j && x.lines == e.lines && x.dotted == e.dotted);
        if !found {
            return false;
        }
    }
    true
}

/// Golden-data equality: the generated positive-root sequence matches the
/// embedded table bit-exactly (in display convention).
pub fn verify_root_table(kind: Kind) -> Result<(), LieError> {
    let rs = build(kind);
    let golden = golden_root_table(kind)?;
    for (i, row) in golden.iter().enumerate() {
        let gen = rs.display_coeffs(i);
        if &gen != row {
            return Err(LieError::TableData(format!(
                "{kind}: root {} generated {:?} but table has {:?}",
                i + 1,
                gen,
                row
            )));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::build_algebra;

    #[test]
    fn root_tables_match_generation() {
        for kind in crate::roots::ALL_KINDS {
            verify_root_table(kind).unwrap();
        }
    }

    #[test]
    fn orbit_table_row_counts() {
        assert_eq!(load_tables(Kind::G2).unwrap().len(), 4);
        assert_eq!(load_tables(Kind::F4).unwrap().len(), 15);
        assert_eq!(load_tables(Kind::E6).unwrap().len(), 20);
        assert!(load_tables(Kind::E7).is_err());
    }

    #[test]
    fn g2_rows_as_printed() {
        let rows = load_tables(Kind::G2).unwrap();
        let got: Vec<(&str, Vec<usize>)> = rows
            .iter()
            .map(|r| {
                (
                    r.label.as_str(),
                    r.rep_roots.iter().map(|x| x + 1).collect(),
                )
            })
            .collect();
        assert_eq!(
            got,
            vec![
                ("A1", vec![6]),
                ("~A1", vec![4]),
                ("A1+~A1", vec![2, 4]),
                ("G2", vec![1, 2]),
            ]
        );
    }

    #[test]
    fn f4_b4_and_e6_2a2_rows() {
        let f4 = load_tables(Kind::F4).unwrap();
        let b4 = f4.iter().find(|r| r.label == "B4").unwrap();
        let roots: Vec<usize> = b4.rep_roots.iter().map(|x| x + 1).collect();
        assert_eq!(roots, vec![5, 4, 2, 10]);
        let e6 = load_tables(Kind::E6).unwrap();
        let row = e6.iter().find(|r| r.label == "2A2").unwrap();
        let roots: Vec<usize> = row.rep_roots.iter().map(|x| x + 1).collect();
        assert_eq!(roots, vec![17, 21, 18, 20]);
    }

    #[test]
    fn stored_diagrams_are_pairwise_distinct() {
        for kind in [Kind::G2, Kind::F4, Kind::E6] {
            let rows = load_tables(kind).unwrap();
            for i in 0..rows.len() {
                for j in i + 1..rows.len() {
                    assert_ne!(rows[i].diagram, rows[j].diagram, "{kind} {i} {j}");
                }
            }
        }
    }

    #[test]
    fn stored_diagrams_give_integer_gradings() {
        for kind in [Kind::G2, Kind::F4, Kind::E6] {
            let l = build_algebra(build(kind));
            for rec in load_tables(kind).unwrap() {
                let h = h_from_diagram(&l, &rec.diagram);
                assert!(grade(&l, &h).is_ok(), "{kind} {}", rec.label);
            }
        }
    }

    #[test]
    fn verify_g2_table_full_pass() {
        let l = build_algebra(build(Kind::G2));
        let report = verify_tables(Kind::G2, &l).unwrap();
        assert_eq!(report.passed(), 4);
    }

    #[test]
    fn f4_c3_row_decorations() {
        let l = build_algebra(build(Kind::F4));
        let rows = load_tables(Kind::F4).unwrap();
        let c3 = rows.iter().find(|r| r.label == "C3").unwrap();
        let roots: Vec<usize> = c3.rep_roots.iter().map(|x| x + 1).collect();
        assert_eq!(roots, vec![10, 1, 9]);
        let d = rep_diagram(&l.rs, &c3.rep_roots);
        // chain long = short - short with the double edge at the long end
        assert_eq!(
            d.nodes.iter().map(|&(_, long)| long).collect::<Vec<_>>(),
            vec![true, false, false]
        );
        assert_eq!(d.edges.len(), 2);
        assert!(d.edges.iter().any(|e| e.i == 0 && e.j == 1 && e.lines == 2));
        assert!(d.edges.iter().any(|e| e.i == 1 && e.j == 2 && e.lines == 1));
        assert!(d.edges.iter().all(|e| !e.dotted));
    }

    #[test]
    fn e6_e6a1_row_has_dotted_edge_between_2_and_8() {
        let l = build_algebra(build(Kind::E6));
        let rows = load_tables(Kind::E6).unwrap();
        let row = rows.iter().find(|r| r.label == "E6(a1)").unwrap();
        let d = rep_diagram(&l.rs, &row.rep_roots);
        let dotted: Vec<&RepEdge> = d.edges.iter().filter(|e| e.dotted).collect();
        assert_eq!(dotted.len(), 1);
        // roots 2 and 8 (1-based) sit at positions 0 and 1 of the row
        assert_eq!(row.rep_roots[dotted[0].i] + 1, 2);
        assert_eq!(row.rep_roots[dotted[0].j] + 1, 8);
    }
}

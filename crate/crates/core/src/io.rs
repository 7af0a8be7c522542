//! Graph readers and writers (SMAT, MatrixMarket coordinate, edge lists) and
//! the solution file format.
//!
//! In every graph format the first index on an entry line is the source node
//! and the second the destination. Stored weights are validated but loading
//! keeps only the pattern: every distinct arc becomes a unit edge.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::CscGraph;
use crate::sparse::SparseVector;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GraphFormat {
    #[default]
    Auto,
    Smat,
    Mtx,
    EdgeList,
}

impl FromStr for GraphFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(Self::Auto),
            "smat" => Ok(Self::Smat),
            "mtx" => Ok(Self::Mtx),
            "edgelist" => Ok(Self::EdgeList),
            other => Err(Error::InvalidParameter(format!(
                "unknown graph format {other:?}"
            ))),
        }
    }
}

struct LineReader<R> {
    inner: R,
    path: PathBuf,
    line_no: usize,
    buf: String,
}

impl<R: BufRead> LineReader<R> {
    fn new(inner: R, path: &Path) -> Self {
        Self {
            inner,
            path: path.to_path_buf(),
            line_no: 0,
            buf: String::new(),
        }
    }

    fn next_line(&mut self) -> Result<Option<String>> {
        self.buf.clear();
        if self.inner.read_line(&mut self.buf)? == 0 {
            return Ok(None);
        }
        self.line_no += 1;
        Ok(Some(self.buf.trim().to_string()))
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse {
            path: self.path.clone(),
            line: self.line_no,
            msg: msg.into(),
        }
    }
}

fn parse_field<T: FromStr>(tok: Option<&str>, what: &str) -> std::result::Result<T, String> {
    let tok = tok.ok_or_else(|| format!("missing {what}"))?;
    tok.parse()
        .map_err(|_| format!("cannot parse {what} from {tok:?}"))
}

fn parse_weight(tok: Option<&str>) -> std::result::Result<(), String> {
    let w: f64 = parse_field(tok, "weight")?;
    if w.is_finite() {
        Ok(())
    } else {
        Err(format!("non-finite weight {w}"))
    }
}

/// Reads a graph and checks every node has an out-edge. `undirected` adds the
/// reverse of every arc; symmetric MatrixMarket files are always expanded.
pub fn read_graph(path: &Path, format: GraphFormat) -> Result<CscGraph> {
    read_graph_with(path, format, false)
}

pub fn read_graph_with(path: &Path, format: GraphFormat, undirected: bool) -> Result<CscGraph> {
    let format = match format {
        GraphFormat::Auto => detect_format(path)?,
        f => f,
    };
    let reader = BufReader::new(File::open(path)?);
    parse_graph(reader, path, format, undirected)
}

fn detect_format(path: &Path) -> Result<GraphFormat> {
    match path.extension().and_then(|e| e.to_str()) {
        Some("smat") => return Ok(GraphFormat::Smat),
        Some("mtx") => return Ok(GraphFormat::Mtx),
        _ => {}
    }
    let mut first = String::new();
    BufReader::new(File::open(path)?).read_line(&mut first)?;
    Ok(if first.starts_with("%%MatrixMarket") {
        GraphFormat::Mtx
    } else {
        GraphFormat::EdgeList
    })
}

/// Parses graph text from any reader; `path` only labels errors.
pub fn parse_graph<R: BufRead>(
    reader: R,
    path: &Path,
    format: GraphFormat,
    undirected: bool,
) -> Result<CscGraph> {
    let mut lines = LineReader::new(reader, path);
    let (n, mut arcs, labels, symmetric) = match format {
        GraphFormat::Smat => {
            let (n, arcs) = parse_smat(&mut lines)?;
            (n, arcs, None, false)
        }
        GraphFormat::Mtx => {
            let (n, arcs, symmetric) = parse_mtx(&mut lines)?;
            (n, arcs, None, symmetric)
        }
        GraphFormat::EdgeList => {
            let (n, arcs, labels) = parse_edge_list(&mut lines)?;
            (n, arcs, labels, false)
        }
        GraphFormat::Auto => {
            return Err(Error::InvalidParameter(
                "format must be resolved before parsing".into(),
            ))
        }
    };
    if undirected || symmetric {
        let reversed: Vec<(usize, usize)> = arcs.iter().map(|&(a, b)| (b, a)).collect();
        arcs.extend(reversed);
    }
    let mut g = CscGraph::from_edges(n, arcs)?;
    if let Some(labels) = labels {
        g = g.with_labels(labels)?;
    }
    if let Some(node) = g.out_degree().iter().position(|&d| d == 0) {
        return Err(Error::ZeroOutDegree { node });
    }
    Ok(g)
}

fn parse_smat<R: BufRead>(lines: &mut LineReader<R>) -> Result<(usize, Vec<(usize, usize)>)> {
    let header = loop {
        match lines.next_line()?.as_deref() {
            None => return Err(lines.err("missing header")),
            Some("") => continue,
            Some(l) => break l.to_string(),
        }
    };
    let mut toks = header.split_whitespace();
    let parsed: std::result::Result<(usize, usize, usize), String> = (|| {
        Ok((
            parse_field(toks.next(), "row count")?,
            parse_field(toks.next(), "column count")?,
            parse_field(toks.next(), "nonzero count")?,
        ))
    })();
    let (rows, cols, nnz) = parsed.map_err(|m| lines.err(m))?;
    if rows != cols {
        return Err(lines.err(format!("matrix must be square, got {rows}x{cols}")));
    }
    let n = rows;
    let mut arcs = Vec::with_capacity(nnz);
    while arcs.len() < nnz {
        let Some(line) = lines.next_line()? else {
            return Err(lines.err(format!("expected {nnz} entries, found {}", arcs.len())));
        };
        if line.is_empty() {
            continue;
        }
        let mut toks = line.split_whitespace();
        let entry: std::result::Result<(usize, usize), String> = (|| {
            let src: usize = parse_field(toks.next(), "source")?;
            let dst: usize = parse_field(toks.next(), "destination")?;
            parse_weight(toks.next())?;
            Ok((src, dst))
        })();
        let (src, dst) = entry.map_err(|m| lines.err(m))?;
        if src >= n || dst >= n {
            return Err(lines.err(format!("index out of range for n = {n}")));
        }
        arcs.push((src, dst));
    }
    Ok((n, arcs))
}

type MtxParse = (usize, Vec<(usize, usize)>, bool);

fn parse_mtx<R: BufRead>(lines: &mut LineReader<R>) -> Result<MtxParse> {
    let banner = lines
        .next_line()?
        .ok_or_else(|| lines.err("empty file"))?
        .to_ascii_lowercase();
    let toks: Vec<&str> = banner.split_whitespace().collect();
    if toks.len() != 5
        || toks[0] != "%%matrixmarket"
        || toks[1] != "matrix"
        || toks[2] != "coordinate"
    {
        return Err(lines.err("expected '%%MatrixMarket matrix coordinate <field> <symmetry>'"));
    }
    let pattern = match toks[3] {
        "pattern" => true,
        "real" | "integer" => false,
        other => return Err(lines.err(format!("unsupported field {other:?}"))),
    };
    let symmetric = match toks[4] {
        "general" => false,
        "symmetric" => true,
        other => return Err(lines.err(format!("unsupported symmetry {other:?}"))),
    };
    let size = loop {
        match lines.next_line()?.as_deref() {
            None => return Err(lines.err("missing size line")),
            Some(l) if l.is_empty() || l.starts_with('%') => continue,
            Some(l) => break l.to_string(),
        }
    };
    let mut toks = size.split_whitespace();
    let parsed: std::result::Result<(usize, usize, usize), String> = (|| {
        Ok((
            parse_field(toks.next(), "row count")?,
            parse_field(toks.next(), "column count")?,
            parse_field(toks.next(), "nonzero count")?,
        ))
    })();
    let (rows, cols, nnz) = parsed.map_err(|m| lines.err(m))?;
    if rows != cols {
        return Err(lines.err(format!("matrix must be square, got {rows}x{cols}")));
    }
    let n = rows;
    let mut arcs = Vec::with_capacity(nnz);
    while arcs.len() < nnz {
        let Some(line) = lines.next_line()? else {
            return Err(lines.err(format!("expected {nnz} entries, found {}", arcs.len())));
        };
        if line.is_empty() || line.starts_with('%') {
            continue;
        }
        let mut toks = line.split_whitespace();
        let entry: std::result::Result<(usize, usize), String> = (|| {
            let src: usize = parse_field(toks.next(), "source")?;
            let dst: usize = parse_field(toks.next(), "destination")?;
            if !pattern {
                parse_weight(toks.next())?;
            }
            Ok((src, dst))
        })();
        let (src, dst) = entry.map_err(|m| lines.err(m))?;
        if src == 0 || dst == 0 || src > n || dst > n {
            return Err(lines.err(format!("1-based index out of range for n = {n}")));
        }
        arcs.push((src - 1, dst - 1));
    }
    Ok((n, arcs, symmetric))
}

type EdgeListParse = (usize, Vec<(usize, usize)>, Option<Vec<u64>>);

fn parse_edge_list<R: BufRead>(lines: &mut LineReader<R>) -> Result<EdgeListParse> {
    let mut raw: Vec<(u64, u64)> = Vec::new();
    while let Some(line) = lines.next_line()? {
        let content = line.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut toks = content.split_whitespace();
        let entry: std::result::Result<(u64, u64), String> = (|| {
            Ok((
                parse_field(toks.next(), "source")?,
                parse_field(toks.next(), "destination")?,
            ))
        })();
        let pair = entry.map_err(|m| lines.err(m))?;
        if let Some(extra) = toks.next() {
            parse_weight(Some(extra)).map_err(|m| lines.err(m))?;
        }
        raw.push(pair);
    }
    let mut labels: Vec<u64> = raw.iter().flat_map(|&(a, b)| [a, b]).collect();
    labels.sort_unstable();
    labels.dedup();
    let n = labels.len();
    let dense = labels.iter().enumerate().all(|(i, &l)| l == i as u64);
    let arcs = if dense {
        raw.iter().map(|&(a, b)| (a as usize, b as usize)).collect()
    } else {
        let index = |l: u64| labels.binary_search(&l).expect("label collected above");
        raw.iter().map(|&(a, b)| (index(a), index(b))).collect()
    };
    Ok((n, arcs, (!dense).then_some(labels)))
}

/// SMAT text: `n n nnz`, then one `src dst value` line per stored entry in
/// column order. Values use 17 significant digits.
pub fn write_smat<W: Write>(g: &CscGraph, out: W) -> Result<()> {
    let mut out = BufWriter::new(out);
    writeln!(out, "{} {} {}", g.n(), g.n(), g.nnz())?;
    for src in 0..g.n() {
        for (&dst, &v) in g.col_rows(src).iter().zip(g.col_values(src)) {
            writeln!(out, "{src} {dst} {v:.16e}")?;
        }
    }
    out.flush()?;
    Ok(())
}

pub fn write_smat_file(g: &CscGraph, path: &Path) -> Result<()> {
    write_smat(g, File::create(path)?)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolutionMeta {
    pub graph: String,
    pub algorithm: String,
    pub eps: Option<f64>,
    pub z: Option<usize>,
    /// Taylor degree `N`.
    pub degree: usize,
    /// Seed node `c`.
    pub seed: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolutionFile {
    pub meta: SolutionMeta,
    /// `(node, value)` by descending value, ties by node.
    pub rows: Vec<(usize, f64)>,
}

const SOLUTION_MAGIC: &str = "# expgraph-solution v1";

pub fn write_solution_to<W: Write>(x: &SparseVector, meta: &SolutionMeta, out: W) -> Result<()> {
    if meta.graph.contains('\n') {
        return Err(Error::InvalidParameter(
            "graph id may not contain newlines".into(),
        ));
    }
    let rows = x.sorted_desc();
    if let Some((node, v)) = rows.iter().find(|(_, v)| !v.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "non-finite value {v} at node {node}"
        )));
    }
    let mut out = BufWriter::new(out);
    writeln!(out, "{SOLUTION_MAGIC}")?;
    writeln!(out, "# graph: {}", meta.graph)?;
    writeln!(out, "# algorithm: {}", meta.algorithm)?;
    if let Some(eps) = meta.eps {
        writeln!(out, "# eps: {eps:.16e}")?;
    }
    if let Some(z) = meta.z {
        writeln!(out, "# z: {z}")?;
    }
    writeln!(out, "# degree: {}", meta.degree)?;
    writeln!(out, "# seed: {}", meta.seed)?;
    for (node, v) in rows {
        writeln!(out, "{node} {v:.16e}")?;
    }
    out.flush()?;
    Ok(())
}

pub fn write_solution(x: &SparseVector, meta: &SolutionMeta, path: &Path) -> Result<()> {
    write_solution_to(x, meta, File::create(path)?)
}

pub fn read_solution(path: &Path) -> Result<SolutionFile> {
    parse_solution(BufReader::new(File::open(path)?), path)
}

pub fn parse_solution<R: BufRead>(reader: R, path: &Path) -> Result<SolutionFile> {
    let mut lines = LineReader::new(reader, path);
    match lines.next_line()?.as_deref() {
        Some(SOLUTION_MAGIC) => {}
        _ => return Err(lines.err("missing solution header")),
    }
    let mut graph = None;
    let mut algorithm = None;
    let mut eps = None;
    let mut z = None;
    let mut degree = None;
    let mut seed = None;
    let mut rows = Vec::new();
    let mut seen = rustc_hash::FxHashSet::default();
    while let Some(line) = lines.next_line()? {
        if line.is_empty() {
            continue;
        }
        if let Some(meta) = line.strip_prefix("# ") {
            let (key, value) = meta
                .split_once(": ")
                .ok_or_else(|| lines.err(format!("malformed header line {line:?}")))?;
            let value = value.to_string();
            let bad = |what: &str| format!("cannot parse {what} from {value:?}");
            match key {
                "graph" => graph = Some(value.clone()),
                "algorithm" => algorithm = Some(value.clone()),
                "eps" => eps = Some(value.parse::<f64>().map_err(|_| lines.err(bad("eps")))?),
                "z" => z = Some(value.parse::<usize>().map_err(|_| lines.err(bad("z")))?),
                "degree" => {
                    degree = Some(
                        value
                            .parse::<usize>()
                            .map_err(|_| lines.err(bad("degree")))?,
                    )
                }
                "seed" => seed = Some(value.parse::<usize>().map_err(|_| lines.err(bad("seed")))?),
                other => return Err(lines.err(format!("unknown header key {other:?}"))),
            }
            continue;
        }
        let mut toks = line.split_whitespace();
        let row: std::result::Result<(usize, f64), String> = (|| {
            Ok((
                parse_field(toks.next(), "node")?,
                parse_field(toks.next(), "value")?,
            ))
        })();
        let (node, v) = row.map_err(|m| lines.err(m))?;
        if !v.is_finite() {
            return Err(lines.err(format!("non-finite value {v}")));
        }
        if !seen.insert(node) {
            return Err(lines.err(format!("duplicate node {node}")));
        }
        rows.push((node, v));
    }
    let missing = |what: &str| Error::Parse {
        path: path.to_path_buf(),
        line: 0,
        msg: format!("missing header field {what}"),
    };
    Ok(SolutionFile {
        meta: SolutionMeta {
            graph: graph.ok_or_else(|| missing("graph"))?,
            algorithm: algorithm.ok_or_else(|| missing("algorithm"))?,
            eps,
            z,
            degree: degree.ok_or_else(|| missing("degree"))?,
            seed: seed.ok_or_else(|| missing("seed"))?,
        },
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn parse(text: &str, format: GraphFormat) -> Result<CscGraph> {
        parse_graph(text.as_bytes(), Path::new("<mem>"), format, false)
    }

    fn meta() -> SolutionMeta {
        SolutionMeta {
            graph: "two-cycle".into(),
            algorithm: "gexpm".into(),
            eps: Some(1e-6),
            z: None,
            degree: 13,
            seed: 0,
        }
    }

    #[test]
    fn smat_two_cycle() {
        let g = parse("2 2 2\n0 1 1\n1 0 1\n", GraphFormat::Smat).unwrap();
        assert_eq!((g.n(), g.nnz()), (2, 2));
        assert_eq!(g.col_rows(0), &[1]);
    }

    #[test]
    fn mtx_matches_smat() {
        let smat = parse("2 2 2\n0 1 1\n1 0 1\n", GraphFormat::Smat).unwrap();
        let mtx = parse(
            "%%MatrixMarket matrix coordinate pattern general\n% comment\n2 2 2\n1 2\n2 1\n",
            GraphFormat::Mtx,
        )
        .unwrap();
        assert_eq!(smat, mtx);
    }

    #[test]
    fn mtx_symmetric_is_expanded() {
        let g = parse(
            "%%MatrixMarket matrix coordinate real symmetric\n3 3 2\n2 1 1.0\n3 1 2.5\n",
            GraphFormat::Mtx,
        )
        .unwrap();
        assert_eq!(g.col_rows(0), &[1, 2]);
        assert_eq!(g.col_rows(1), &[0]);
        assert_eq!(g.col_rows(2), &[0]);
    }

    #[test]
    fn edge_list_comments_and_duplicates() {
        let text = "# header comment\n0 1\n1 2 # trailing\n\n1 2\n2 0\n0 1\n";
        let g = parse(text, GraphFormat::EdgeList).unwrap();
        let expect =
            CscGraph::from_csc_parts(3, vec![0, 1, 2, 3], vec![1, 2, 0], vec![1.0; 3]).unwrap();
        assert_eq!(g, expect);
        assert!(g.labels().is_none());
    }

    #[test]
    fn edge_list_relabels_sparse_ids() {
        let g = parse("10 30\n30 20\n20 10\n", GraphFormat::EdgeList).unwrap();
        assert_eq!(g.labels(), Some(&[10u64, 20, 30][..]));
        // 10 -> 30 is dense 0 -> 2
        assert_eq!(g.col_rows(0), &[2]);
    }

    #[test]
    fn malformed_lines_report_line_number() {
        match parse("2 2 2\n0 1 1\n1 x 1\n", GraphFormat::Smat) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
        match parse("2 2 1\n0 5 1\n", GraphFormat::Smat) {
            Err(Error::Parse { line, msg, .. }) => {
                assert_eq!(line, 2);
                assert!(msg.contains("out of range"));
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse("2 2 3\n0 1 1\n1 0 1\n", GraphFormat::Smat),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse("2 3 0\n", GraphFormat::Smat),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse(
                "%%MatrixMarket matrix array real general\n2 2\n",
                GraphFormat::Mtx
            ),
            Err(Error::Parse { line: 1, .. })
        ));
    }

    #[test]
    fn rejects_non_finite_weights() {
        for w in ["nan", "inf", "-inf"] {
            let text = format!("2 2 2\n0 1 {w}\n1 0 1\n");
            assert!(matches!(
                parse(&text, GraphFormat::Smat),
                Err(Error::Parse { .. })
            ));
        }
        assert!(parse("0 1 NaN\n1 0\n", GraphFormat::EdgeList).is_err());
    }

    #[test]
    fn rejects_zero_out_degree() {
        assert!(matches!(
            parse("3 3 2\n0 1 1\n1 0 1\n", GraphFormat::Smat),
            Err(Error::ZeroOutDegree { node: 2 })
        ));
    }

    #[test]
    fn undirected_flag_adds_reverse_arcs() {
        let g = parse_graph(
            "0 1\n1 2\n".as_bytes(),
            Path::new("<mem>"),
            GraphFormat::EdgeList,
            true,
        )
        .unwrap();
        assert_eq!(g.col_rows(1), &[0, 2]);
        assert_eq!(g.nnz(), 4);
    }

    #[test]
    fn smat_writer_is_deterministic() {
        let g = crate::gen::ring(5)
            .unwrap()
            .normalize_to_stochastic()
            .unwrap();
        let mut a = Vec::new();
        let mut b = Vec::new();
        write_smat(&g, &mut a).unwrap();
        write_smat(&g, &mut b).unwrap();
        assert_eq!(a, b);
        assert!(String::from_utf8(a)
            .unwrap()
            .starts_with("5 5 10\n0 1 5.0000000000000000e-1\n"));
    }

    #[test]
    fn empty_solution_is_header_only() {
        let mut buf = Vec::new();
        write_solution_to(&SparseVector::new(), &meta(), &mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.lines().all(|l| l.starts_with('#')));
        let back = parse_solution(&buf[..], Path::new("<mem>")).unwrap();
        assert!(back.rows.is_empty());
        assert_eq!(back.meta, meta());
    }

    #[test]
    fn solution_rows_sorted_descending() {
        let x: SparseVector = [(3, 0.1), (1, 0.7), (2, 0.7), (0, 0.2)]
            .into_iter()
            .collect();
        let mut buf = Vec::new();
        write_solution_to(&x, &meta(), &mut buf).unwrap();
        let back = parse_solution(&buf[..], Path::new("<mem>")).unwrap();
        let mut resorted = back.rows.clone();
        resorted.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
        assert_eq!(back.rows, resorted);
        assert_eq!(back.rows[0], (1, 0.7));
    }

    #[test]
    fn solution_rejects_non_finite() {
        let x: SparseVector = [(0, f64::NAN)].into_iter().collect();
        assert!(write_solution_to(&x, &meta(), Vec::new()).is_err());
        let text = format!(
            "{SOLUTION_MAGIC}\n# graph: g\n# algorithm: a\n# degree: 1\n# seed: 0\n0 inf\n"
        );
        assert!(parse_solution(text.as_bytes(), Path::new("<mem>")).is_err());
    }

    proptest! {
        #[test]
        fn solution_round_trip(values in proptest::collection::vec((0usize..500, -1e3f64..1e3), 0..50)) {
            let x: SparseVector = values.into_iter().collect();
            let mut buf = Vec::new();
            write_solution_to(&x, &meta(), &mut buf).unwrap();
            let back = parse_solution(&buf[..], Path::new("<mem>")).unwrap();
            let restored: SparseVector = back.rows.into_iter().collect();
            prop_assert_eq!(restored.sorted_by_node(), x.sorted_by_node());
        }

        #[test]
        fn graph_round_trip_all_formats(n in 1usize..25, extra in proptest::collection::vec((0usize..25, 0usize..25), 0..60)) {
            let edges: Vec<(usize, usize)> = (0..n)
                .map(|i| (i, (i + 1) % n))
                .chain(extra.into_iter().map(|(a, b)| (a % n, b % n)))
                .collect();
            let g = CscGraph::from_edges(n, edges).unwrap();

            let mut smat = Vec::new();
            write_smat(&g, &mut smat).unwrap();
            let back = parse_graph(&smat[..], Path::new("<mem>"), GraphFormat::Smat, false).unwrap();
            prop_assert_eq!(back.col_ptr(), g.col_ptr());
            prop_assert_eq!(back.row_idx(), g.row_idx());

            let mut mtx = format!("%%MatrixMarket matrix coordinate pattern general\n{n} {n} {}\n", g.nnz());
            let mut list = String::new();
            for src in 0..n {
                for &dst in g.col_rows(src) {
                    mtx.push_str(&format!("{} {}\n", src + 1, dst + 1));
                    list.push_str(&format!("{src} {dst}\n"));
                }
            }
            let back = parse_graph(mtx.as_bytes(), Path::new("<mem>"), GraphFormat::Mtx, false).unwrap();
            prop_assert_eq!(back.col_ptr(), g.col_ptr());
            prop_assert_eq!(back.row_idx(), g.row_idx());
            let back = parse_graph(list.as_bytes(), Path::new("<mem>"), GraphFormat::EdgeList, false).unwrap();
            prop_assert_eq!(back.col_ptr(), g.col_ptr());
            prop_assert_eq!(back.row_idx(), g.row_idx());
        }
    }
}

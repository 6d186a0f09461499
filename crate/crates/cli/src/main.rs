//! `bftorus`: batch front-end for the bftorus library.
//!
//! Exit status: 0 on success, 2 when an input violates a mathematical
//! precondition (the error name is part of the report), 1 for I/O, parse
//! and usage errors.

use std::fmt::Write as _;
use std::path::Path;
use std::process::ExitCode;
use std::sync::Arc;

use bftorus::debug::set_debug_asserts;
use bftorus::exactmat::IntMatrix;
use bftorus::formats::{
    group_to_json, ideal_from_json, ideal_to_json, int_to_json, lattice_to_json, matrix_to_json, matrix_to_text, parse_matrix_loose,
    parse_x_poly, periodic_to_json, rational_to_json, verdict_to_json,
};
use bftorus::ideals::{coefficient_ring, is_invertible, product, trace_dual, FractionalIdeal, Order, ZLattice};
use bftorus::invariants::{
    bf_certify, bf_group, bf_k, bf_refute, flow_invariant_pair, ideal_to_matrix, l_equivalent, matrix_to_ideal, periodic_structure,
    pi1_presentation, strong_bf_refute, suspension_h1, EquivalenceVerdict, VerdictKind,
};
use bftorus::numberfield::NumberField;
use bftorus::orders::enumerate_order_lattice;
use bftorus::Error;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "bftorus", version, about = "Bowen-Franks groups, coefficient rings and equivalence tests for integer matrices")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Enable internal cross-check assertions (same as BFTORUS_DEBUG_ASSERT=1).
    #[arg(long, global = true)]
    debug_assert: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    /// Certify, and run the refuter if the certificate is inconclusive.
    Auto,
    /// Compare coefficient rings.
    L,
    Refute,
    Certify,
    /// Refuter plus the small-modulus conjugacy oracle for 2x2 input.
    Strong,
}

#[derive(Subcommand)]
enum Verb {
    /// BF_g(A) = Z^n / g(A) Z^n.
    Bf {
        /// Matrix file or inline literal such as "[[0,1],[1,1]]" or "0 1; 1 1"; repeatable.
        #[arg(long, required = true)]
        matrix: Vec<String>,
        /// Polynomial in x with rational coefficients.
        #[arg(long)]
        poly: String,
    },
    /// BF_k(A) = Z^n / (A^k - I) Z^n.
    Bfk {
        #[arg(long, required = true)]
        matrix: Vec<String>,
        #[arg(long)]
        k: u64,
    },
    /// Generators of the period-k points Per_k(A) in the torus.
    Periodic {
        #[arg(long, required = true)]
        matrix: Vec<String>,
        #[arg(long)]
        k: u64,
        /// List every point when there are at most this many.
        #[arg(long, default_value_t = 0)]
        list: usize,
    },
    /// Lattice of orders containing Z[b] for an irreducible monic polynomial.
    Lattice {
        #[arg(long)]
        poly: String,
    },
    /// Ideal of a matrix (with --matrix) or matrix of an ideal (with --ideal).
    Ideal {
        #[arg(long, conflicts_with = "ideal")]
        matrix: Vec<String>,
        /// Ideal JSON file or inline JSON.
        #[arg(long)]
        ideal: Option<String>,
    },
    /// Coefficient ring C(I) = (I : I).
    Coeffring {
        #[arg(long, conflicts_with = "ideal")]
        matrix: Vec<String>,
        #[arg(long)]
        ideal: Option<String>,
    },
    /// Whether I is invertible in an order R.
    Invertible {
        #[arg(long, conflicts_with = "ideal")]
        matrix: Vec<String>,
        #[arg(long)]
        ideal: Option<String>,
        /// "coeff" for C(I), "zbeta" for Z[b], or an ideal JSON file or literal.
        #[arg(long, default_value = "coeff")]
        ring: String,
    },
    /// Trace dual I* and (Z[b] : I) = p'(b) I*.
    Dual {
        #[arg(long, conflicts_with = "ideal")]
        matrix: Vec<String>,
        #[arg(long)]
        ideal: Option<String>,
    },
    /// Equivalence verdict for two matrices.
    Equiv {
        #[arg(long, num_args = 1, required = true)]
        matrix: Vec<String>,
        #[arg(long, value_enum, default_value_t = Mode::Auto)]
        mode: Mode,
        /// Search bound for the refuters.
        #[arg(long, default_value_t = 4)]
        bound: u64,
    },
    /// First homology Z + BF_1(A) and the fundamental group of the mapping torus.
    Suspension {
        #[arg(long, required = true)]
        matrix: Vec<String>,
    },
    /// Flow-equivalence pair (det(I - A), BF_1(A)).
    Flowpair {
        #[arg(long, required = true)]
        matrix: Vec<String>,
    },
}

enum Failure {
    Input(String),
    Precondition(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_parse() {
            Failure::Input(e.to_string())
        } else {
            Failure::Precondition(e)
        }
    }
}

type Res<T> = std::result::Result<T, Failure>;

struct Input {
    label: String,
    text: String,
}

fn read_input(arg: &str) -> Res<Input> {
    let p = Path::new(arg);
    if p.is_file() {
        let text = std::fs::read_to_string(p).map_err(|e| Failure::Input(format!("{arg}: {e}")))?;
        return Ok(Input { label: arg.to_string(), text });
    }
    let looks_literal = arg.contains(|c: char| c == '[' || c == '{' || c == ';' || c == ' ') || arg.trim().parse::<i64>().is_ok();
    if !looks_literal {
        return Err(Failure::Input(format!("{arg}: no such file")));
    }
    Ok(Input { label: arg.to_string(), text: arg.to_string() })
}

fn load_matrix(arg: &str) -> Res<(String, IntMatrix)> {
    let inp = read_input(arg)?;
    let m = parse_matrix_loose(&inp.text).map_err(|e| match e {
        Error::Parse(msg) => Failure::Input(format!("{}: {msg}", inp.label)),
        other => Failure::Precondition(other),
    })?;
    Ok((inp.label, m))
}

fn load_json(arg: &str) -> Res<(String, Value)> {
    let inp = read_input(arg)?;
    let v = serde_json::from_str(&inp.text).map_err(|e| Failure::Input(format!("{}: {e}", inp.label)))?;
    Ok((inp.label, v))
}

fn load_ideal(arg: &str) -> Res<(String, FractionalIdeal)> {
    let (label, v) = load_json(arg)?;
    let l = ideal_from_json(&v).map_err(|e| match e {
        Error::Parse(m) => Failure::Input(format!("{label}: {m}")),
        other => Failure::Precondition(other),
    })?;
    Ok((label, FractionalIdeal::new(l)?))
}

/// Ideals named by `--matrix` (through the dictionary) or `--ideal`.
fn ideal_inputs(matrix: &[String], ideal: &Option<String>) -> Res<Vec<(String, FractionalIdeal)>> {
    match ideal {
        Some(i) => Ok(vec![load_ideal(i)?]),
        None if matrix.is_empty() => Err(Failure::Input("one of --matrix or --ideal is required".into())),
        None => matrix
            .iter()
            .map(|m| {
                let (label, a) = load_matrix(m)?;
                Ok((label, matrix_to_ideal(&a)?))
            })
            .collect(),
    }
}

fn poly_arg(s: &str) -> Res<bftorus::polyring::RatPoly> {
    parse_x_poly(s).map_err(|e| Failure::Input(format!("--poly {s:?}: {e}")))
}

struct Report {
    format: Format,
    text: String,
    json: Vec<Value>,
}

impl Report {
    fn new(format: Format) -> Self {
        Report { format, text: String::new(), json: Vec::new() }
    }

    fn push(&mut self, text: String, json: Value) {
        if !self.text.is_empty() {
            self.text.push('\n');
        }
        self.text.push_str(&text);
        self.json.push(json);
    }

    fn render(mut self) -> String {
        match self.format {
            Format::Text => self.text,
            Format::Json => {
                let v = if self.json.len() == 1 { self.json.pop().unwrap() } else { Value::Array(self.json) };
                let mut s = serde_json::to_string(&v).expect("serializable");
                s.push('\n');
                s
            }
        }
    }
}

fn lattice_text(l: &ZLattice) -> String {
    let cols: Vec<String> = l
        .basis()
        .columns()
        .iter()
        .map(|c| format!("[{}]", c.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
        .collect();
    format!("basis: {l}\ndenom: {}\nbasis_columns: [{}]\n", l.denom(), cols.join(","))
}

fn verdict_text(v: &EquivalenceVerdict) -> String {
    let mut s = format!("verdict: {}\n", v.kind);
    if let Some(w) = &v.witness {
        let _ = writeln!(s, "witness: {w}");
    }
    if let Some((a, b)) = &v.groups {
        let show = |g: &Option<bftorus::AbelianGroup>| g.as_ref().map_or("not integral".to_string(), ToString::to_string);
        let _ = writeln!(s, "A: {}\nB: {}", show(a), show(b));
    }
    if let Some(r) = &v.reason {
        let _ = writeln!(s, "reason: {r}");
    }
    if let Some(b) = v.bound {
        let _ = writeln!(s, "bound: {b}");
    }
    s
}

fn resolve_ring(spec: &str, i: &FractionalIdeal) -> Res<Order> {
    match spec {
        "coeff" => Ok(coefficient_ring(i)),
        "zbeta" => Ok(Order::equation_order(i.field())),
        other => {
            let (label, v) = load_json(other)?;
            let l = bftorus::formats::ideal_from_json_in(i.field(), &v).map_err(|e| match e {
                Error::Parse(m) => Failure::Input(format!("{label}: {m}")),
                e => Failure::Precondition(e),
            })?;
            Ok(Order::new(l)?)
        }
    }
}

fn run(cli: Cli) -> Res<String> {
    if cli.debug_assert {
        set_debug_asserts(Some(true));
    }
    let mut rep = Report::new(cli.format);
    match cli.verb {
        Verb::Bf { matrix, poly } => {
            let g = poly_arg(&poly)?;
            for m in &matrix {
                let (label, a) = load_matrix(m)?;
                let grp = bf_group(&a, &g)?;
                rep.push(
                    format!("matrix: {label}\ng: {g}\nBF: {grp}\n"),
                    json!({ "matrix": label, "g": g.to_string(), "group": group_to_json(&grp) }),
                );
            }
        }
        Verb::Bfk { matrix, k } => {
            for m in &matrix {
                let (label, a) = load_matrix(m)?;
                let grp = bf_k(&a, k)?;
                rep.push(
                    format!("matrix: {label}\nk: {k}\nBF: {grp}\n"),
                    json!({ "matrix": label, "k": k, "group": group_to_json(&grp) }),
                );
            }
        }
        Verb::Periodic { matrix, k, list } => {
            for m in &matrix {
                let (label, a) = load_matrix(m)?;
                let s = periodic_structure(&a, k)?;
                let show = |v: &[bftorus::BigRational]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ");
                let mut t = format!("matrix: {label}\nk: {k}\nPer_k: {}\n", s.group);
                for (g, ord) in s.generators.iter().zip(&s.orders) {
                    let _ = writeln!(t, "generator of order {ord}: ({})", show(g));
                }
                let mut j = periodic_to_json(&s);
                j["matrix"] = Value::String(label.clone());
                if list > 0 {
                    match s.points(list) {
                        Some(pts) => {
                            let _ = writeln!(t, "points: {}", pts.len());
                            for p in &pts {
                                let _ = writeln!(t, "  ({})", show(p));
                            }
                            j["points"] = Value::Array(
                                pts.iter().map(|p| Value::Array(p.iter().map(rational_to_json).collect())).collect(),
                            );
                        }
                        None => {
                            let _ = writeln!(t, "points: more than {list}, not listed");
                        }
                    }
                }
                rep.push(t, j);
            }
        }
        Verb::Lattice { poly } => {
            let p = poly_arg(&poly)?
                .to_integer()
                .ok_or_else(|| Failure::Input("the field polynomial must have integer coefficients".into()))?;
            let k = NumberField::new(p)?;
            let lat = enumerate_order_lattice(&k)?;
            let mut t = format!("field: {}\nnodes: {}\n", k.poly(), lat.nodes().len());
            for (i, o) in lat.nodes().iter().enumerate() {
                let _ = writeln!(t, "  [{i}] index {}  {o}", o.index());
            }
            let edges: Vec<String> = lat.edges().iter().map(|(a, b)| format!("{a}-{b}")).collect();
            let _ = writeln!(t, "edges: {}", edges.join(" "));
            let ascii = lat.render_ascii();
            t.push_str(&ascii);
            let mut j = lattice_to_json(&lat);
            j["hasse"] = Value::String(ascii);
            rep.push(t, j);
        }
        Verb::Ideal { matrix, ideal } => match ideal {
            Some(i) => {
                let (label, i) = load_ideal(&i)?;
                let a = ideal_to_matrix(&i);
                rep.push(format!("ideal: {label}\n{}", matrix_to_text(&a)), json!({ "ideal": label, "matrix": matrix_to_json(&a) }));
            }
            None => {
                for (label, i) in ideal_inputs(&matrix, &None)? {
                    rep.push(
                        format!("matrix: {label}\nfield: {}\n{}", i.field().poly(), lattice_text(&i)),
                        json!({ "matrix": label, "ideal": ideal_to_json(&i) }),
                    );
                }
            }
        },
        Verb::Coeffring { matrix, ideal } => {
            for (label, i) in ideal_inputs(&matrix, &ideal)? {
                let c = coefficient_ring(&i);
                rep.push(
                    format!("input: {label}\nindex over Z[b]: {}\n{}", c.index(), lattice_text(&c)),
                    json!({ "input": label, "index": int_to_json(&c.index()), "ring": ideal_to_json(&c) }),
                );
            }
        }
        Verb::Invertible { matrix, ideal, ring } => {
            for (label, i) in ideal_inputs(&matrix, &ideal)? {
                let r = resolve_ring(&ring, &i)?;
                let inv = is_invertible(&i, &r)?;
                let colon = i.inverse_in(&r)?;
                let prod = product(&i, &colon)?;
                rep.push(
                    format!("input: {label}\nring: {r}\ninvertible: {inv}\n(R : I): {colon}\nI (R : I): {prod}\n"),
                    json!({
                        "input": label,
                        "ring": ideal_to_json(&r),
                        "invertible": inv,
                        "inverse": ideal_to_json(&colon),
                        "product": ideal_to_json(&prod),
                    }),
                );
            }
        }
        Verb::Dual { matrix, ideal } => {
            for (label, i) in ideal_inputs(&matrix, &ideal)? {
                let d = trace_dual(&i);
                let k: &Arc<NumberField> = i.field();
                let colon = ZLattice::equation_order(k).colon(&i)?;
                rep.push(
                    format!("input: {label}\ntrace dual: {d}\n(Z[b] : I): {colon}\n"),
                    json!({ "input": label, "trace_dual": ideal_to_json(&d), "colon": ideal_to_json(&colon) }),
                );
            }
        }
        Verb::Equiv { matrix, mode, bound } => {
            if matrix.len() != 2 {
                return Err(Failure::Input(format!("equiv needs exactly two --matrix arguments, got {}", matrix.len())));
            }
            let (_, a) = load_matrix(&matrix[0])?;
            let (_, b) = load_matrix(&matrix[1])?;
            let v = match mode {
                Mode::L => l_equivalent(&a, &b)?,
                Mode::Refute => bf_refute(&a, &b, bound)?,
                Mode::Certify => bf_certify(&a, &b)?,
                Mode::Strong => strong_bf_refute(&a, &b, bound)?,
                Mode::Auto => {
                    let c = bf_certify(&a, &b)?;
                    if c.kind == VerdictKind::Inconclusive {
                        bf_refute(&a, &b, bound)?
                    } else {
                        c
                    }
                }
            };
            rep.push(verdict_text(&v), verdict_to_json(&v));
        }
        Verb::Suspension { matrix } => {
            for m in &matrix {
                let (label, a) = load_matrix(m)?;
                let h1 = suspension_h1(&a)?;
                let p = pi1_presentation(&a)?;
                let ab = p.abelianize();
                rep.push(
                    format!("matrix: {label}\nH1: {h1}\npi1: {p}\nabelianization: {ab}\n"),
                    json!({ "matrix": label, "h1": group_to_json(&h1), "pi1": p.to_string(), "abelianization": group_to_json(&ab) }),
                );
            }
        }
        Verb::Flowpair { matrix } => {
            for m in &matrix {
                let (label, a) = load_matrix(m)?;
                let (d, g) = flow_invariant_pair(&a)?;
                rep.push(
                    format!("matrix: {label}\ndet(I - A): {d}\nBF1: {g}\n"),
                    json!({ "matrix": label, "det": int_to_json(&d), "group": group_to_json(&g) }),
                );
            }
        }
    }
    Ok(rep.render())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let format = cli.format;
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Precondition(e)) => {
            match format {
                Format::Text => println!("error: {}: {e}", e.name()),
                Format::Json => println!(
                    "{}",
                    serde_json::to_string(&json!({ "error": e.name(), "message": e.to_string() })).expect("serializable")
                ),
            }
            ExitCode::from(2)
        }
    }
}

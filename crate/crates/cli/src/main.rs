use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use twistfp::ball::validate_ball;
use twistfp::cylinders::{cylinder_decomposition, integrality};
use twistfp::grid::{evaluate, multiplier_grid};
use twistfp::heegaard::{parse_diagram, serialize_diagram, twisted_surface, HeegaardDiagram};
use twistfp::inverse::{invert, recover_model};
use twistfp::io::{document_with_multipliers, emit_input, parse_input, InputDocument};
use twistfp::pairing::{cycle_diagram, edge_cycles, validate_pairing};
use twistfp::report::{check, run};
use twistfp::surgery::{
    corridor_complex, export_gauss, link_diagram, linking_matrix, render_diagram_svg, render_link_svg,
};
use twistfp::twist::{twist, Direction, MultiplierFunction};
use twistfp::{registry, Error};

#[derive(Parser)]
#[command(
    name = "twistfp",
    version,
    about = "Twisted face-pairing 3-manifolds: Heegaard diagrams, cylinders, surgery links"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Dir {
    Cw,
    Ccw,
}

#[derive(Args)]
struct Common {
    /// Input file, or example:NAME for a registry entry.
    input: String,
    /// Multipliers per edge cycle in cycle order, e.g. 4,1,1.
    #[arg(long, value_delimiter = ',')]
    mul: Option<Vec<u32>>,
    /// Overrides the document's twist direction.
    #[arg(long, value_enum)]
    direction: Option<Dir>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check the ball and the pairing.
    Validate(Common),
    /// Edge cycles in arrow notation.
    Cycles(Common),
    /// Cell counts of the twisted subdivision and the twisted pairing.
    Twist(Common),
    /// Heegaard diagram of the twisted manifold.
    Heegaard(Common),
    /// Cylinder decomposition and integrality.
    Cylinders(Common),
    /// Face-pairing of a diagram file.
    Invert(Common),
    /// Untwisted model and multipliers of a diagram file.
    Recover(Common),
    /// Framed corridor link: Gauss codes, framings, linking matrix.
    Link {
        #[command(flatten)]
        common: Common,
        /// Also write an SVG drawing of the link.
        #[arg(long)]
        svg: Option<String>,
    },
    /// First homology by the Heegaard and the surgery routes.
    H1 {
        #[command(flatten)]
        common: Common,
        /// Evaluate every multiplier assignment in LO..HI instead, e.g. 1..4.
        #[arg(long)]
        grid: Option<String>,
    },
    /// Recover the model from the twisted diagram and retwist it.
    Roundtrip(Common),
    /// Print a registry entry as an input document.
    Example { name: String },
    /// SVG drawing of the Heegaard diagram.
    Render {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        svg: Option<String>,
    },
}

/// Failure with its exit code.
struct Fail(u8, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse { .. } | Error::Semantic(_) | Error::UnknownExample(_) => 2,
            Error::InversionInconsistent(_) => 3,
            _ => 1,
        };
        Fail(code, e.to_string())
    }
}

type Out = Result<String, Fail>;

fn read(input: &str) -> Result<String, Fail> {
    if input.starts_with("example:") {
        return Ok(registry::load(input)?.text.to_string());
    }
    fs::read_to_string(input).map_err(|e| Fail(2, format!("{input}: {e}")))
}

struct Loaded {
    doc: InputDocument,
    mul: MultiplierFunction,
    direction: Direction,
}

fn load(c: &Common) -> Result<Loaded, Fail> {
    let doc = parse_input(&read(&c.input)?)?;
    let mul = match &c.mul {
        Some(v) => {
            let n = edge_cycles(&doc.ball, &doc.pairing)?.len();
            if v.len() != n {
                return Err(Fail(2, format!("--mul has {} values for {n} edge cycles", v.len())));
            }
            MultiplierFunction::new(v.clone())?
        }
        None => doc.multipliers()?,
    };
    let direction = match c.direction {
        Some(Dir::Cw) => Direction::Cw,
        Some(Dir::Ccw) => Direction::Ccw,
        None => doc.direction,
    };
    Ok(Loaded { doc, mul, direction })
}

/// A diagram file, or the twisted surface of an input document.
fn load_diagram(c: &Common) -> Result<HeegaardDiagram, Fail> {
    let text = read(&c.input)?;
    if text.lines().any(|l| l.trim_start().starts_with("heegaard")) {
        return Ok(parse_diagram(&text)?);
    }
    let l = load(c)?;
    Ok(twisted_surface(&twist(&l.doc.ball, &l.doc.pairing, &l.mul, l.direction)?)?)
}

fn emit_json(v: serde_json::Value) -> String {
    serde_json::to_string_pretty(&v).unwrap() + "\n"
}

fn validate(c: &Common) -> Out {
    let doc = parse_input(&read(&c.input)?)?;
    let mut report = validate_ball(&doc.ball);
    if report.is_empty() {
        report = validate_pairing(&doc.ball, &doc.pairing);
    }
    let text = if c.format == Format::Json {
        emit_json(json!({ "valid": report.is_empty(), "violations": report.violations }))
    } else {
        format!("{report}\n")
    };
    if report.is_empty() {
        Ok(text)
    } else {
        Err(Fail(1, text.trim_end().to_string()))
    }
}

fn cycles(c: &Common) -> Out {
    let l = load(c)?;
    let cycles = edge_cycles(&l.doc.ball, &l.doc.pairing)?;
    if c.format == Format::Json {
        let v: Vec<_> = cycles
            .iter()
            .map(|cy| {
                json!({ "index": cy.index, "length": cy.len(), "multiplier": l.mul.get(cy.index),
                              "diagram": cycle_diagram(&l.doc.ball, &l.doc.pairing, cy) })
            })
            .collect();
        return Ok(emit_json(json!(v)));
    }
    Ok(cycles
        .iter()
        .map(|cy| {
            format!("cycle {} (length {}): {}\n", cy.index, cy.len(), cycle_diagram(&l.doc.ball, &l.doc.pairing, cy))
        })
        .collect())
}

fn twist_cmd(c: &Common) -> Out {
    let l = load(c)?;
    let t = twist(&l.doc.ball, &l.doc.pairing, &l.mul, l.direction)?;
    let q = &t.q.ball;
    let offsets: Vec<usize> = t.delta.pairing.pairs.iter().map(|p| p.offset).collect();
    if c.format == Format::Json {
        return Ok(emit_json(json!({
            "direction": l.direction.to_string(),
            "q": { "vertices": q.num_vertices(), "edges": q.num_edges(), "faces": q.num_faces() },
            "delta_offsets": offsets,
            "quotient": t.quotient,
        })));
    }
    Ok(format!(
        "Q: {} vertices, {} edges, {} faces\ndelta offsets: {:?}\nquotient: {} vertex, {} edges, {} faces, chi {}\n",
        q.num_vertices(),
        q.num_edges(),
        q.num_faces(),
        offsets,
        t.quotient.vertices,
        t.quotient.edges,
        t.quotient.faces,
        t.quotient.chi
    ))
}

fn heegaard(c: &Common) -> Out {
    let d = load_diagram(c)?;
    let s = d.stats();
    if c.format == Format::Json {
        return Ok(emit_json(json!({ "stats": s, "h1": d.h1().to_string(), "diagram": serialize_diagram(&d) })));
    }
    Ok(format!(
        "{}# genus {}, {} vertical, {} diagonal, {} crossings\n",
        serialize_diagram(&d),
        s.genus,
        s.num_vertical,
        s.num_diagonal,
        s.num_crossings
    ))
}

fn cylinders(c: &Common) -> Out {
    let text = read(&c.input)?;
    let (pairs, integral, muls) = if text.lines().any(|l| l.trim_start().starts_with("heegaard")) {
        let dec = cylinder_decomposition(&parse_diagram(&text)?);
        let i = integrality(&dec);
        (dec.pairs(), i.integral, i.multipliers)
    } else {
        // ordered by the edge cycles they come from
        let l = load(c)?;
        let p = run(&l.doc.ball, &l.doc.pairing, &l.mul, l.direction)?;
        let pairs: Vec<(usize, usize)> = p.report.cylinders.iter().map(|c| (c.circumference, c.height)).collect();
        let muls = p.report.integral.then(|| pairs.iter().map(|&(c, h)| (h / c) as u32).collect());
        (pairs, p.report.integral, muls)
    };
    if c.format == Format::Json {
        return Ok(emit_json(json!({ "cylinders": pairs, "integral": integral, "multipliers": muls })));
    }
    let cyl: Vec<String> = pairs.iter().map(|(c, h)| format!("({c},{h})")).collect();
    let tail = match muls {
        Some(m) => format!("integral, multipliers {}", m.iter().map(u32::to_string).collect::<Vec<_>>().join(",")),
        None => "not integral".to_string(),
    };
    Ok(format!("{}, {tail}\n", cyl.join(" ")))
}

fn invert_cmd(c: &Common) -> Out {
    let d = load_diagram(c)?;
    let r = invert(&d)?;
    let doc = InputDocument { ball: r.ball, pairing: r.pairing, mul_anchors: vec![], direction: Direction::Cw };
    Ok(emit_input(&doc))
}

fn recover_cmd(c: &Common) -> Out {
    let d = load_diagram(c)?;
    let r = recover_model(&d)?;
    let m = r.model.expect("recover_model returns a model");
    let doc = document_with_multipliers(m.ball, m.pairing, &m.multipliers, m.direction)?;
    Ok(emit_input(&doc))
}

fn link(c: &Common, svg: &Option<String>) -> Out {
    let l = load(c)?;
    let corridor = corridor_complex(&l.doc.ball, &l.doc.pairing)?;
    let ld = link_diagram(&l.doc.ball, &l.doc.pairing, &corridor, &l.mul)?;
    let data = linking_matrix(&ld)?;
    if let Some(path) = svg {
        fs::write(path, render_link_svg(&ld)).map_err(|e| Fail(1, format!("{path}: {e}")))?;
    }
    if c.format == Format::Json {
        let framings: Vec<String> =
            data.framings.iter().map(|&(p, q)| if q == 1 { p.to_string() } else { format!("{p}/{q}") }).collect();
        return Ok(emit_json(json!({
            "components": ld.kinds, "framings": framings, "writhes": data.writhes,
            "lk": data.lk, "matrix": data.matrix, "gauss": export_gauss(&ld),
        })));
    }
    let mut out = export_gauss(&ld);
    out.push_str("lk\n");
    for row in &data.lk {
        out.push_str(&format!("  {}\n", row.iter().map(i64::to_string).collect::<Vec<_>>().join(" ")));
    }
    Ok(out)
}

fn parse_range(s: &str) -> Result<(u32, u32), Fail> {
    let bad = || Fail(2, format!("bad --grid range {s}, expected LO..HI"));
    let (a, b) = s.split_once("..").ok_or_else(bad)?;
    let lo: u32 = a.trim().parse().map_err(|_| bad())?;
    let hi: u32 = b.trim().parse().map_err(|_| bad())?;
    if lo == 0 || hi < lo {
        return Err(bad());
    }
    Ok((lo, hi))
}

fn h1(c: &Common, grid: &Option<String>) -> Out {
    let l = load(c)?;
    if let Some(g) = grid {
        let (lo, hi) = parse_range(g)?;
        let n = edge_cycles(&l.doc.ball, &l.doc.pairing)?.len();
        let pts = evaluate(&l.doc.ball, &l.doc.pairing, &multiplier_grid(n, lo, hi), l.direction)?;
        let all = pts.iter().all(|p| p.agree());
        let out = if c.format == Format::Json {
            emit_json(json!(pts))
        } else {
            pts.iter()
                .map(|p| {
                    let m: Vec<String> = p.mul.iter().map(u32::to_string).collect();
                    let tag = if p.agree() { "agree" } else { "DISAGREE" };
                    format!("{}: {} / {} {tag}\n", m.join(","), p.h1_heegaard, p.h1_surgery)
                })
                .collect()
        };
        return if all { Ok(out) } else { Err(Fail(3, out.trim_end().to_string())) };
    }
    let p = run(&l.doc.ball, &l.doc.pairing, &l.mul, l.direction)?;
    let r = &p.report;
    let out = if c.format == Format::Json {
        emit_json(serde_json::to_value(r).unwrap())
    } else if r.routes_agree {
        format!("{} (both routes agree)\n", r.h1_heegaard)
    } else {
        format!("heegaard {}, surgery {} (routes disagree)\n", r.h1_heegaard, r.h1_surgery)
    };
    if r.routes_agree {
        Ok(out)
    } else {
        Err(Fail(3, out.trim_end().to_string()))
    }
}

fn roundtrip(c: &Common) -> Out {
    let d = load_diagram(c)?;
    let model = recover_model(&d)?.model.expect("recover_model returns a model");
    if model.retwist_isomorphic {
        Ok("PASS (diagram isomorphic after recover+retwist)\n".to_string())
    } else {
        Err(Fail(3, "FAIL (retwisted diagram is not isomorphic)".to_string()))
    }
}

fn example(name: &str) -> Out {
    let ex = registry::load(name)?;
    let doc = ex.document();
    check(&doc.ball, &doc.pairing)?;
    Ok(emit_input(&doc))
}

fn render(c: &Common, svg: &Option<String>) -> Out {
    let d = load_diagram(c)?;
    let text = render_diagram_svg(&d);
    match svg {
        Some(path) => {
            fs::write(path, &text).map_err(|e| Fail(1, format!("{path}: {e}")))?;
            Ok(format!("wrote {path}\n"))
        }
        None => Ok(text),
    }
}

fn dispatch(cmd: &Cmd) -> Out {
    match cmd {
        Cmd::Validate(c) => validate(c),
        Cmd::Cycles(c) => cycles(c),
        Cmd::Twist(c) => twist_cmd(c),
        Cmd::Heegaard(c) => heegaard(c),
        Cmd::Cylinders(c) => cylinders(c),
        Cmd::Invert(c) => invert_cmd(c),
        Cmd::Recover(c) => recover_cmd(c),
        Cmd::Link { common, svg } => link(common, svg),
        Cmd::H1 { common, grid } => h1(common, grid),
        Cmd::Roundtrip(c) => roundtrip(c),
        Cmd::Example { name } => example(name),
        Cmd::Render { common, svg } => render(common, svg),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli.cmd) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Fail(code, msg)) => {
            eprintln!("{msg}");
            ExitCode::from(code)
        }
    }
}

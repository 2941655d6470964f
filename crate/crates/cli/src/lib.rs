//! `spingraph` command line: class tables, graph export, surface types and
//! the invariant suite.
//!
//! Exit codes: 0 on success, 1 on usage errors, 2 when a validation or
//! invariant check fails.

use std::ffi::OsString;
use std::io::Write;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use spingraph_core::atlas::{
    class_count, classes_for_genus, surface_types, total_class_count, DEFAULT_GENUS_CEILING,
};
use spingraph_core::graphs::{
    exceptional_graph_from_khat, standard_graph, validate, weierstrass_graph,
};
use spingraph_core::render::{render, GraphFormat};
use spingraph_core::verify::{self, VerifyOptions};
use spingraph_core::Genus;

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 1;
pub const EXIT_INVALID: u8 = 2;

#[derive(Debug, Parser)]
#[command(name = "spingraph", version, about = "Spin graphs of even spin bundles on hyperelliptic surfaces")]
pub struct Cli {
    /// Largest genus accepted by any subcommand.
    #[arg(long, global = true, default_value_t = DEFAULT_GENUS_CEILING)]
    pub genus_ceiling: u32,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the isomorphism classes of exceptional graphs.
    Classes(ClassesArgs),
    /// Export one spin graph as DOT or JSON.
    Graph(GraphArgs),
    /// Enumerate surface types allowed by the branch budget.
    Types(TypesArgs),
    /// Run the invariant suite for every genus up to a bound.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Dot,
}

#[derive(Debug, Args)]
pub struct ClassesArgs {
    #[arg(long)]
    pub genus: u32,
    /// Only classes of this order r.
    #[arg(long)]
    pub order: Option<u32>,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("selector").required(true).args(["standard", "weierstrass", "partition"])))]
pub struct GraphArgs {
    #[arg(long)]
    pub genus: u32,
    #[arg(long)]
    pub standard: bool,
    #[arg(long)]
    pub weierstrass: bool,
    /// Exceptional class as comma-separated parts of g+1, e.g. `1,1,2`.
    #[arg(long)]
    pub partition: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Dot)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct TypesArgs {
    #[arg(long)]
    pub genus: u32,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Mark which types appear in the published lists (genus 2 and 3).
    #[arg(long = "check-paper")]
    pub check_published: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub max_genus: u32,
    /// Largest genus for which surface types are enumerated.
    #[arg(long, default_value_t = 9)]
    pub surface_type_limit: u32,
    #[arg(long, hide = true)]
    pub inject_fault: bool,
}

struct Usage(String);

type CmdResult = Result<u8, Usage>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{rendered}");
            } else {
                let _ = write!(out, "{rendered}");
            }
            return code;
        }
    };
    let ceiling = cli.genus_ceiling;
    let result = match &cli.command {
        Command::Classes(a) => cmd_classes(a, ceiling, out),
        Command::Graph(a) => cmd_graph(a, ceiling, out, err),
        Command::Types(a) => cmd_types(a, ceiling, out),
        Command::Verify(a) => cmd_verify(a, ceiling, out, err),
    };
    match result {
        Ok(code) => code,
        Err(Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
    }
}

fn genus_arg(g: u32, ceiling: u32) -> Result<Genus, Usage> {
    Genus::with_ceiling(g, ceiling).map_err(|e| Usage(e.to_string()))
}

fn io(r: std::io::Result<()>) -> Result<(), Usage> {
    match r {
        // reader went away (`| head`); nothing left to report to
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        r => r.map_err(|e| Usage(format!("write failed: {e}"))),
    }
}

#[derive(Serialize)]
struct ClassRow {
    r: u32,
    s: usize,
    khat: Vec<u32>,
    i: u32,
    p: Vec<u32>,
    branch_number: u32,
    vertex_count: usize,
}

#[derive(Serialize)]
struct ClassesDoc {
    genus: u32,
    classes: Vec<ClassRow>,
    class_counts: Vec<u64>,
    total: u64,
}

fn cmd_classes(a: &ClassesArgs, ceiling: u32, out: &mut dyn Write) -> CmdResult {
    let genus = genus_arg(a.genus, ceiling)?;
    let g = genus.get();
    if let Some(r) = a.order {
        if r >= g {
            return Err(Usage(format!("--order must be below the genus ({g}), got {r}")));
        }
    }
    let mut rows = Vec::new();
    let mut s = 0;
    let mut last_r = u32::MAX;
    for c in classes_for_genus(genus) {
        if c.order() != last_r {
            last_r = c.order();
            s = 0;
        }
        s += 1;
        if a.order.is_some_and(|r| r != c.order()) {
            continue;
        }
        rows.push(ClassRow {
            r: c.order(),
            s,
            khat: c.khat().parts().to_vec(),
            i: c.i(),
            p: c.p(),
            branch_number: c.branch_number(),
            vertex_count: c.vertex_count(),
        });
    }
    let doc = ClassesDoc {
        genus: g,
        classes: rows,
        class_counts: (0..g).map(|r| class_count(genus, r).expect("r < g")).collect(),
        total: total_class_count(genus),
    };
    match a.format {
        Format::Json => io(writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("serializable")))?,
        Format::Table => io(write_class_table(&doc, out))?,
        Format::Dot => return Err(Usage("classes supports --format table or json".into())),
    }
    Ok(EXIT_OK)
}

fn join(parts: &[u32]) -> String {
    parts.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

fn write_class_table(doc: &ClassesDoc, out: &mut dyn Write) -> std::io::Result<()> {
    writeln!(out, "genus {}", doc.genus)?;
    writeln!(out, "{:>3} {:>3}  {:<20} {:<22} {:>4} {:>8}", "r", "s", "khat", "(i;p)", "B_r", "vertices")?;
    for row in &doc.classes {
        let ip = if row.p.is_empty() {
            format!("({})", row.i)
        } else {
            format!("({};{})", row.i, join(&row.p))
        };
        writeln!(
            out,
            "{:>3} {:>3}  {:<20} {:<22} {:>4} {:>8}",
            row.r,
            row.s,
            format!("({})", join(&row.khat)),
            ip,
            row.branch_number,
            row.vertex_count
        )?;
    }
    let counts: Vec<String> = doc
        .class_counts
        .iter()
        .enumerate()
        .map(|(r, n)| format!("N({r})={n}"))
        .collect();
    writeln!(out, "{}", counts.join(" "))?;
    writeln!(out, "M={}", doc.total)
}

fn cmd_graph(a: &GraphArgs, ceiling: u32, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let genus = genus_arg(a.genus, ceiling)?;
    let graph = if a.standard {
        standard_graph(genus)
    } else if a.weierstrass {
        weierstrass_graph(genus)
    } else {
        let text = a.partition.as_deref().unwrap_or_default();
        let parts = text
            .split(',')
            .map(|t| t.trim().parse::<u32>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| Usage(format!("malformed --partition {text:?}")))?;
        exceptional_graph_from_khat(genus, &parts).map_err(|e| Usage(e.to_string()))?
    };
    let format = match a.format {
        Format::Dot => GraphFormat::Dot,
        Format::Json => GraphFormat::Json,
        Format::Table => return Err(Usage("graph supports --format dot or json".into())),
    };
    let violations = validate(&graph);
    if !violations.is_empty() {
        for v in &violations {
            let _ = writeln!(err, "violation: {v}");
        }
        return Ok(EXIT_INVALID);
    }
    let rendered = render(&graph, format);
    io(write!(out, "{}", rendered.payload))?;
    if format == GraphFormat::Json {
        io(writeln!(out))?;
    }
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct TypeRow {
    counts: Vec<u32>,
    branch_total: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    published: Option<bool>,
}

#[derive(Serialize)]
struct TypesDoc {
    genus: u32,
    classes: Vec<Vec<u32>>,
    types: Vec<TypeRow>,
    total: usize,
}

fn cmd_types(a: &TypesArgs, ceiling: u32, out: &mut dyn Write) -> CmdResult {
    let genus = genus_arg(a.genus, ceiling)?;
    let classes: Vec<Vec<u32>> = classes_for_genus(genus)
        .iter()
        .map(|c| c.khat().parts().to_vec())
        .collect();
    match a.format {
        Format::Json => {
            let types: Vec<TypeRow> = surface_types(genus)
                .map(|t| TypeRow {
                    counts: t.counts().to_vec(),
                    branch_total: t.branch_total(),
                    published: if a.check_published { t.is_published() } else { None },
                })
                .collect();
            let doc = TypesDoc {
                genus: genus.get(),
                classes,
                total: types.len(),
                types,
            };
            io(writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("serializable")))?;
        }
        Format::Table => {
            let header: Vec<String> = classes.iter().map(|k| format!("({})", join(k))).collect();
            io(writeln!(out, "genus {}  classes {}", genus, header.join(" ")))?;
            let (mut total, mut listed) = (0usize, 0usize);
            let mut published_known = false;
            for t in surface_types(genus) {
                total += 1;
                let mut line = format!("{}  B={}", t, t.branch_total());
                if a.check_published {
                    match t.is_published() {
                        Some(true) => {
                            listed += 1;
                            published_known = true;
                            line.push_str("  published");
                        }
                        Some(false) => {
                            published_known = true;
                            line.push_str("  NOT-IN-PUBLISHED-LIST");
                        }
                        None => {}
                    }
                }
                io(writeln!(out, "{line}"))?;
            }
            io(writeln!(out, "total {total}"))?;
            if a.check_published {
                if published_known {
                    io(writeln!(
                        out,
                        "published {listed}, not in published list {}",
                        total - listed
                    ))?;
                } else {
                    io(writeln!(out, "no published list for genus {genus}"))?;
                }
            }
        }
        Format::Dot => return Err(Usage("types supports --format table or json".into())),
    }
    Ok(EXIT_OK)
}

fn cmd_verify(a: &VerifyArgs, ceiling: u32, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    if a.max_genus < 2 {
        return Err(Usage(format!("--max-genus must be at least 2, got {}", a.max_genus)));
    }
    if a.max_genus > ceiling {
        return Err(Usage(format!(
            "--max-genus {} exceeds the genus ceiling {ceiling}",
            a.max_genus
        )));
    }
    let options = VerifyOptions {
        max_genus: a.max_genus,
        surface_type_limit: a.surface_type_limit,
        inject_fault: a.inject_fault,
    };
    let report = verify::run(&options);
    for check in &report.checks {
        let status = if check.passed() { "PASS" } else { "FAIL" };
        io(writeln!(out, "{status} {}", check.name))?;
        for f in &check.failures {
            io(writeln!(out, "    {f}"))?;
        }
    }
    for note in &report.notes {
        let _ = writeln!(err, "note: {note}");
    }
    Ok(if report.passed() { EXIT_OK } else { EXIT_INVALID })
}

//! Interactive MindQL loop over a frozen map snapshot.
//!
//! Lines starting with `.` are meta-commands; everything else is a query.
//! Errors are reported and the loop carries on.

use std::io::{self, BufRead, Write};
use std::path::Path;

use mindmap_core::mindmap::{export_dot, MindMap};
use mindmap_core::mindql::{evaluate_sources, parse_query, QueryError, DEFAULT_SOURCE};
use mindmap_core::thesaurus::Thesaurus;

use crate::error::AppError;
use crate::render;

/// Query context shared by the batch `query` command and the REPL.
#[derive(Debug, Clone)]
pub struct Session<'a> {
    pub map: &'a MindMap,
    pub thesaurus: &'a Thesaurus,
    /// Applied to queries without a `with depth` clause.
    pub depth: Option<u32>,
    pub json: bool,
}

fn caret(text: &str, e: &QueryError) -> String {
    let col = text.get(..e.offset()).map_or(0, |p| p.chars().count());
    let line_start = text[..text.len().min(e.offset())].rfind('\n').map_or(0, |i| i + 1);
    let line_end = text[line_start..].find('\n').map_or(text.len(), |i| line_start + i);
    let col = col - text[..line_start].chars().count();
    format!("error: {e}\n  {}\n  {}^", &text[line_start..line_end], " ".repeat(col))
}

impl Session<'_> {
    /// Parse, evaluate and render one query.
    pub fn answer(&self, text: &str) -> Result<String, AppError> {
        let mut q = parse_query(text).map_err(|e| AppError::Query(caret(text, &e)))?;
        if q.depth.is_none() {
            q.depth = self.depth;
        }
        let results = evaluate_sources(&q, &[(DEFAULT_SOURCE, self.map)], self.thesaurus)
            .map_err(|e| AppError::Query(format!("error: {e}")))?;
        Ok(if self.json { render::results_json(&results) } else { render::results_table(&q, &results) })
    }

    pub fn summary(&self, actor: &str) -> Result<String, AppError> {
        let node = self.map.actor_by_name(actor, self.thesaurus).map_err(|e| AppError::Query(format!("error: {e}")))?;
        let lines = self.map.summarize_actor(node).map_err(|e| AppError::Query(format!("error: {e}")))?;
        Ok(lines.into_iter().map(|l| l + "\n").collect())
    }
}

const HELP: &str = "\
.depth N            default depth for queries without `with depth` (`.depth off` clears)
.export dot PATH    write the whole map as Graphviz
.summary ACTOR      one sentence per association of the actor
.quit               leave
";

enum Step {
    Continue,
    Quit,
}

fn meta(session: &mut Session<'_>, line: &str, out: &mut impl Write) -> io::Result<Step> {
    let mut parts = line.splitn(2, char::is_whitespace);
    let cmd = parts.next().unwrap_or("");
    let rest = parts.next().unwrap_or("").trim();
    match cmd {
        ".quit" | ".exit" => return Ok(Step::Quit),
        ".help" => write!(out, "{HELP}")?,
        ".depth" => match rest {
            "" => match session.depth {
                Some(d) => writeln!(out, "depth {d}")?,
                None => writeln!(out, "depth off")?,
            },
            "off" => session.depth = None,
            n => match n.parse::<u32>() {
                Ok(d) if d >= 1 => session.depth = Some(d),
                _ => writeln!(out, "error: depth must be a positive integer or `off`")?,
            },
        },
        ".summary" if !rest.is_empty() => match session.summary(rest) {
            Ok(s) => write!(out, "{s}")?,
            Err(e) => writeln!(out, "{e}")?,
        },
        ".export" => {
            let mut args = rest.splitn(2, char::is_whitespace);
            match (args.next(), args.next().map(str::trim)) {
                (Some("dot"), Some(path)) if !path.is_empty() => {
                    if let Err(e) = std::fs::write(Path::new(path), export_dot(session.map)) {
                        writeln!(out, "error: {path}: {e}")?;
                    } else {
                        writeln!(out, "wrote {path}")?;
                    }
                }
                _ => writeln!(out, "error: usage: .export dot PATH")?,
            }
        }
        _ => writeln!(out, "error: unknown command `{line}`, try .help")?,
    }
    Ok(Step::Continue)
}

/// Read lines until `.quit` or end of input.
pub fn run(mut session: Session<'_>, input: impl BufRead, out: &mut impl Write, prompt: bool) -> io::Result<()> {
    let mut lines = input.lines();
    loop {
        if prompt {
            write!(out, "mindql> ")?;
            out.flush()?;
        }
        let Some(line) = lines.next() else { break };
        let line = line?;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if line.starts_with('.') {
            if let Step::Quit = meta(&mut session, line, out)? {
                break;
            }
            continue;
        }
        match session.answer(line) {
            Ok(s) => write!(out, "{s}")?,
            Err(e) => writeln!(out, "{e}")?,
        }
    }
    Ok(())
}

//! Reading a form and its variables from `--expr`, `--file` or stdin.

use std::io::Read;
use std::sync::Arc;

use clap::Args;
use lefschetz_core::poly::{Polynomial, VariableContext};
use serde::Deserialize;

use crate::CliError;

#[derive(Args, Debug, Clone)]
pub struct FormSource {
    /// The form, e.g. "x0*u^2+x1*u*v+x2*v^2".
    #[arg(long, conflicts_with = "file")]
    pub expr: Option<String>,
    /// File holding the form; stdin is read when neither this nor --expr is given.
    #[arg(long)]
    pub file: Option<String>,
    /// Comma-separated variables in order, front block first.
    #[arg(long, value_delimiter = ',')]
    pub vars: Option<Vec<String>>,
    /// Number of trailing variables forming the back block.
    #[arg(long, requires = "vars")]
    pub m: Option<usize>,
}

/// The JSON line printed by `gen` next to its form.
#[derive(Deserialize)]
struct Sidecar {
    vars: Vec<String>,
    m: usize,
}

fn read_text(src: &FormSource) -> Result<String, CliError> {
    if let Some(expr) = &src.expr {
        return Ok(expr.clone());
    }
    if let Some(path) = &src.file {
        return std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.clone(), source });
    }
    let mut text = String::new();
    std::io::stdin()
        .read_to_string(&mut text)
        .map_err(|source| CliError::Io { path: "standard input".into(), source })?;
    Ok(text)
}

/// Identifiers in order of first appearance.
fn identifiers(expr: &str) -> Vec<String> {
    let mut names: Vec<String> = Vec::new();
    let mut current = String::new();
    let mut in_number = false;
    for c in expr.chars().chain(std::iter::once(' ')) {
        if c.is_ascii_alphanumeric() || c == '_' {
            if current.is_empty() && c.is_ascii_digit() {
                in_number = true;
            }
            if !in_number {
                current.push(c);
            }
        } else {
            if !current.is_empty() && !names.contains(&current) {
                names.push(current.clone());
            }
            current.clear();
            in_number = false;
        }
    }
    names
}

/// `x` followed by digits.
fn front_index(name: &str) -> Option<u64> {
    name.strip_prefix('x').filter(|s| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit()))?.parse().ok()
}

/// Splits a trailing number off so that `u10` sorts after `u9`.
fn natural_key(name: &str) -> (String, Option<u64>) {
    let digits = name.len() - name.bytes().rev().take_while(u8::is_ascii_digit).count();
    (name[..digits].to_string(), name[digits..].parse().ok())
}

/// `x0, x1, ...` form the front block in index order, every other name the
/// back block in natural order.
fn infer_context(expr: &str) -> Result<VariableContext, CliError> {
    let names = identifiers(expr);
    let (mut front, mut back): (Vec<String>, Vec<String>) = names.into_iter().partition(|n| front_index(n).is_some());
    if front.is_empty() && back.is_empty() {
        return Err(CliError::Input("no variables in the form; pass --vars".into()));
    }
    front.sort_by_key(|n| front_index(n));
    back.sort_by_key(|n| natural_key(n));
    let m = back.len();
    front.extend(back);
    Ok(VariableContext::new(front, m)?)
}

/// Parses the form. Variables come from `--vars`/`--m`, else from a `gen`
/// sidecar line in the input, else from the expression itself.
pub fn read_form(src: &FormSource) -> Result<Polynomial, CliError> {
    let text = read_text(src)?;
    let mut sidecar = None;
    let mut expr_lines = Vec::new();
    for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
        if line.starts_with('{') {
            sidecar = Some(
                serde_json::from_str::<Sidecar>(line)
                    .map_err(|e| CliError::Input(format!("unreadable JSON line in input: {e}")))?,
            );
        } else {
            expr_lines.push(line);
        }
    }
    if expr_lines.is_empty() {
        return Err(CliError::Input("no form given".into()));
    }
    let expr = expr_lines.join(" ");
    let ctx = match (&src.vars, sidecar) {
        (Some(vars), _) => VariableContext::new(vars.iter().map(|v| v.trim()), src.m.unwrap_or(0))?,
        (None, Some(side)) => VariableContext::new(side.vars, side.m)?,
        (None, None) => infer_context(&expr)?,
    };
    Ok(Polynomial::parse(&expr, &Arc::new(ctx))?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identifiers_skip_numbers() {
        assert_eq!(identifiers("3*x0^2-2/3*u1*v+x10"), ["x0", "u1", "v", "x10"]);
    }

    #[test]
    fn inferred_blocks() {
        let ctx = infer_context("v^2*x1+x0*u^2+x10*u*v").unwrap();
        assert_eq!(ctx.names(), ["x0", "x1", "x10", "u", "v"]);
        assert_eq!(ctx.m_back(), 2);
        let ctx = infer_context("u10*u2+u9^2").unwrap();
        assert_eq!(ctx.names(), ["u2", "u9", "u10"]);
        assert!(infer_context("3+4").is_err());
    }
}

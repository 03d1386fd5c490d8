//! Text formats for instances and certificates.
//!
//! Instance file, whitespace separated, `#` starts a comment:
//!
//! ```text
//! n p
//! <n rows of H>
//! <c>
//! <d>
//! m
//! <m rows of A>
//! <b>            (omitted when m = 0)
//! ```
//!
//! Certificate file:
//!
//! ```text
//! # miqp certificate
//! n 1
//! x 1
//! trace orthant=none case1 lambda=1
//! size 5
//! ```

use std::fmt::Write as _;

use thiserror::Error;

use crate::certifier::{Branch, Certificate, MiqpInstance, Trace};
use crate::exact::{format_rational, parse_rational, EncodingSize, Integer, QMatrix, QVector, Rational};
use crate::polyhedra::HPolyhedron;
use crate::qp::QuadraticForm;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct FormatError {
    /// 1-based; 0 when the problem is the end of input.
    pub line: usize,
    pub message: String,
}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, FormatError> {
    Err(FormatError {
        line,
        message: message.into(),
    })
}

/// Content lines with their 1-based numbers, comments stripped.
fn content_lines(text: &str) -> Vec<(usize, Vec<&str>)> {
    text.lines()
        .enumerate()
        .filter_map(|(i, l)| {
            let l = l.split('#').next().unwrap_or("");
            let tokens: Vec<&str> = l.split_whitespace().collect();
            (!tokens.is_empty()).then_some((i + 1, tokens))
        })
        .collect()
}

struct Lines<'a> {
    lines: Vec<(usize, Vec<&'a str>)>,
    pos: usize,
}

impl<'a> Lines<'a> {
    fn next(&mut self, what: &str) -> Result<(usize, Vec<&'a str>), FormatError> {
        match self.lines.get(self.pos) {
            Some(l) => {
                self.pos += 1;
                Ok(l.clone())
            }
            None => {
                let last = self.lines.last().map_or(0, |l| l.0);
                err(last, format!("unexpected end of input, expected {what}"))
            }
        }
    }

    fn rationals(&mut self, count: usize, what: &str) -> Result<(usize, Vec<Rational>), FormatError> {
        let (line, tokens) = self.next(what)?;
        if tokens.len() != count {
            return err(line, format!("expected {count} entries for {what}, found {}", tokens.len()));
        }
        let values = tokens
            .iter()
            .map(|t| parse_rational(t).map_err(|e| FormatError { line, message: e.to_string() }))
            .collect::<Result<_, _>>()?;
        Ok((line, values))
    }

    fn count(&mut self, what: &str) -> Result<(usize, usize), FormatError> {
        let (line, tokens) = self.next(what)?;
        if tokens.len() != 1 {
            return err(line, format!("expected a single count for {what}"));
        }
        let v = tokens[0]
            .parse()
            .map_err(|_| FormatError { line, message: format!("invalid count `{}` for {what}", tokens[0]) })?;
        Ok((line, v))
    }

    fn finish(&self) -> Result<(), FormatError> {
        match self.lines.get(self.pos) {
            Some((line, _)) => err(*line, "unexpected trailing content"),
            None => Ok(()),
        }
    }
}

pub fn parse_instance(text: &str) -> Result<MiqpInstance, FormatError> {
    let mut lines = Lines {
        lines: content_lines(text),
        pos: 0,
    };
    let (line, header) = lines.next("header `n p`")?;
    if header.len() != 2 {
        return err(line, "header must be `n p`");
    }
    let parse_usize = |t: &str| {
        t.parse::<usize>()
            .map_err(|_| FormatError { line, message: format!("invalid count `{t}`") })
    };
    let (n, p) = (parse_usize(header[0])?, parse_usize(header[1])?);
    if n == 0 {
        return err(line, "dimension must be positive");
    }
    if p > n {
        return err(line, format!("integer-variable count {p} exceeds dimension {n}"));
    }
    let mut h_rows = Vec::with_capacity(n);
    let mut h_lines = Vec::with_capacity(n);
    for i in 0..n {
        let (l, row) = lines.rationals(n, &format!("row {} of H", i + 1))?;
        h_lines.push(l);
        h_rows.push(QVector::new(row));
    }
    let h = QMatrix::from_rows(n, h_rows).expect("rows have length n");
    if let Some((i, j)) = h.asymmetry() {
        return err(
            h_lines[i],
            format!(
                "H is not symmetric: H[{},{}] = {} but H[{},{}] = {}",
                i + 1,
                j + 1,
                format_rational(h.get(i, j)),
                j + 1,
                i + 1,
                format_rational(h.get(j, i))
            ),
        );
    }
    let (_, c) = lines.rationals(n, "c")?;
    let (_, d) = lines.rationals(1, "d")?;
    let (_, m) = lines.count("m")?;
    let mut a_rows = Vec::with_capacity(m);
    for i in 0..m {
        a_rows.push(QVector::new(lines.rationals(n, &format!("row {} of A", i + 1))?.1));
    }
    let b = if m == 0 {
        QVector::zeros(0)
    } else {
        QVector::new(lines.rationals(m, "b")?.1)
    };
    lines.finish()?;
    let q = QuadraticForm::new(h, QVector::new(c), d[0].clone()).map_err(|e| FormatError { line: 0, message: e.to_string() })?;
    let a = QMatrix::from_rows(n, a_rows).expect("rows have length n");
    let poly = HPolyhedron::new(a, b).map_err(|e| FormatError { line: 0, message: e.to_string() })?;
    MiqpInstance::new(q, poly, p).map_err(|e| FormatError { line: 0, message: e.to_string() })
}

fn join(values: &[Rational]) -> String {
    values.iter().map(format_rational).collect::<Vec<_>>().join(" ")
}

pub fn write_instance(inst: &MiqpInstance) -> String {
    let n = inst.dim();
    let mut out = String::new();
    writeln!(out, "{n} {}", inst.p).unwrap();
    for i in 0..n {
        writeln!(out, "{}", join(inst.q.h().row(i))).unwrap();
    }
    writeln!(out, "{}", join(inst.q.c())).unwrap();
    writeln!(out, "{}", format_rational(inst.q.d())).unwrap();
    let m = inst.poly.num_constraints();
    writeln!(out, "{m}").unwrap();
    for i in 0..m {
        writeln!(out, "{}", join(inst.poly.a().row(i))).unwrap();
    }
    if m > 0 {
        writeln!(out, "{}", join(inst.poly.b())).unwrap();
    }
    out
}

fn orthant_text(orthant: Option<u64>, n: usize) -> String {
    match orthant {
        None => "none".to_string(),
        Some(s) => (0..n).map(|i| if s >> i & 1 == 1 { '+' } else { '-' }).collect(),
    }
}

fn join_ints(values: &[Integer]) -> String {
    values.iter().map(Integer::to_string).collect::<Vec<_>>().join(",")
}

pub fn write_trace(trace: &Trace, n: usize) -> String {
    let head = format!("orthant={}", orthant_text(trace.orthant, n));
    match &trace.branch {
        Branch::Case1 { lambda } => format!("{head} case1 lambda={lambda}"),
        Branch::Linear {
            fiber,
            family,
            piece,
            offset,
            direction,
            mu,
        } => format!(
            "{head} linear fiber={fiber} family={family} piece={piece} offset={offset} direction={direction} mu={mu}"
        ),
        Branch::Bounded {
            fiber,
            family,
            piece,
            offset,
            eta,
            bound,
        } => format!(
            "{head} bounded fiber={fiber} family={family} piece={piece} offset={offset} eta={} bound={bound}",
            join_ints(eta)
        ),
    }
}

pub fn write_certificate(cert: &Certificate) -> String {
    let n = cert.x.dim();
    format!(
        "# miqp certificate\nn {n}\nx {}\ntrace {}\nsize {}\n",
        join(&cert.x),
        write_trace(&cert.trace, n),
        cert.size
    )
}

fn parse_trace(line: usize, tokens: &[&str], n: usize) -> Result<Trace, FormatError> {
    let field = |idx: usize, key: &str| -> Result<&str, FormatError> {
        tokens
            .get(idx)
            .and_then(|t| t.strip_prefix(key))
            .and_then(|t| t.strip_prefix('='))
            .ok_or_else(|| FormatError { line, message: format!("expected `{key}=` in trace") })
    };
    let num = |idx: usize, key: &str| -> Result<usize, FormatError> {
        let t = field(idx, key)?;
        t.parse()
            .map_err(|_| FormatError { line, message: format!("invalid {key} `{t}`") })
    };
    let int = |t: &str, key: &str| -> Result<Integer, FormatError> {
        t.parse()
            .map_err(|_| FormatError { line, message: format!("invalid {key} `{t}`") })
    };
    let orthant = match field(0, "orthant")? {
        "none" => None,
        s if s.chars().count() == n && s.chars().all(|c| c == '+' || c == '-') => {
            Some(s.chars().enumerate().fold(0u64, |acc, (i, c)| acc | (u64::from(c == '+') << i)))
        }
        s => return err(line, format!("invalid orthant `{s}`")),
    };
    let expect_len = |len: usize| {
        if tokens.len() == len {
            Ok(())
        } else {
            err(line, "wrong number of trace fields")
        }
    };
    let branch = match tokens.get(1).copied() {
        Some("case1") => {
            expect_len(3)?;
            Branch::Case1 {
                lambda: int(field(2, "lambda")?, "lambda")?,
            }
        }
        Some("linear") => {
            expect_len(8)?;
            Branch::Linear {
                fiber: num(2, "fiber")?,
                family: num(3, "family")?,
                piece: num(4, "piece")?,
                offset: num(5, "offset")?,
                direction: num(6, "direction")?,
                mu: int(field(7, "mu")?, "mu")?,
            }
        }
        Some("bounded") => {
            expect_len(8)?;
            let eta_text = field(6, "eta")?;
            let eta = if eta_text.is_empty() {
                Vec::new()
            } else {
                eta_text.split(',').map(|t| int(t, "eta")).collect::<Result<_, _>>()?
            };
            Branch::Bounded {
                fiber: num(2, "fiber")?,
                family: num(3, "family")?,
                piece: num(4, "piece")?,
                offset: num(5, "offset")?,
                eta,
                bound: int(field(7, "bound")?, "bound")?,
            }
        }
        other => return err(line, format!("unknown trace branch `{}`", other.unwrap_or(""))),
    };
    Ok(Trace { orthant, branch })
}

pub fn parse_certificate(text: &str) -> Result<Certificate, FormatError> {
    let mut lines = Lines {
        lines: content_lines(text),
        pos: 0,
    };
    let keyed = |lines: &mut Lines<'_>, key: &str| -> Result<(usize, Vec<String>), FormatError> {
        let (line, tokens) = lines.next(key)?;
        if tokens[0] != key {
            return err(line, format!("expected `{key}`, found `{}`", tokens[0]));
        }
        Ok((line, tokens[1..].iter().map(|s| s.to_string()).collect()))
    };
    let (line, t) = keyed(&mut lines, "n")?;
    let n: usize = match t.as_slice() {
        [v] => v.parse().map_err(|_| FormatError { line, message: format!("invalid dimension `{v}`") })?,
        _ => return err(line, "expected `n <dimension>`"),
    };
    let (line, t) = keyed(&mut lines, "x")?;
    if t.len() != n {
        return err(line, format!("expected {n} coordinates, found {}", t.len()));
    }
    let x = t
        .iter()
        .map(|s| parse_rational(s).map_err(|e| FormatError { line, message: e.to_string() }))
        .collect::<Result<QVector, _>>()?;
    let (line, t) = keyed(&mut lines, "trace")?;
    let refs: Vec<&str> = t.iter().map(String::as_str).collect();
    let trace = parse_trace(line, &refs, n)?;
    let (line, t) = keyed(&mut lines, "size")?;
    let size = match t.as_slice() {
        [v] => EncodingSize(v.parse().map_err(|_| FormatError { line, message: format!("invalid size `{v}`") })?),
        _ => return err(line, "expected `size <bits>`"),
    };
    lines.finish()?;
    Ok(Certificate { x, size, trace })
}

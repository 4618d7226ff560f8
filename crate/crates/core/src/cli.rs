//! The `vlab` command line.

use std::collections::BTreeMap;
use std::io::{BufRead, Write};

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::fibers::{class_count, degrees_up_to, enumerate_fiber, fiber_classes, is_saturated_degree, Limits, MultiDegree};
use crate::link::{p_n, p_plus};
use crate::poly::{in_jn, in_twisted_veronese, monomial_string, twist, SignCharacter, SparsePoly, Twisting};
use crate::verify::{colon_membership, group_algebra_subintersection, higher_torsion, verify_decomposition, verify_link, VerificationReport};
use crate::veronese::{basis_b, basis_bprime, off_diagonal_pairs, veronese_matrix, ExponentMatrix, MAX_N};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "vlab", version, about = "Exact computations with principal minor ideals of symmetric matrices")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = OutputFormat::Text, global = true)]
    format: OutputFormat,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum IdealKind {
    Jn,
    Veronese,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the grading matrix V_{d,n}.
    Grading {
        #[arg(short)]
        d: usize,
        #[arg(short)]
        n: usize,
    },
    /// Print the lattice basis B, or B' with --prime.
    Basis {
        #[arg(short)]
        n: usize,
        #[arg(long)]
        prime: bool,
    },
    /// Torsion of L_{d,n}/L'_{d,n} as invariant factors.
    Torsion {
        #[arg(short)]
        d: usize,
        #[arg(short)]
        n: usize,
    },
    /// List the fiber over a degree, optionally grouped into classes.
    Fiber {
        #[arg(short)]
        n: usize,
        /// Degree such as 2,1,1.
        #[arg(short)]
        b: MultiDegree,
        #[arg(long)]
        classes: bool,
    },
    /// Class counts for all degrees up to a coordinate sum.
    Hilbert {
        #[arg(short)]
        n: usize,
        #[arg(long)]
        max_sum: u32,
    },
    /// The zonotope polynomial p_n.
    Pn {
        #[arg(short)]
        n: usize,
    },
    /// The link polynomial p+_{n,i}.
    Pplus {
        #[arg(short)]
        n: usize,
        #[arg(short, default_value_t = 1)]
        i: usize,
    },
    /// Apply a sign twisting to the polynomial on stdin.
    Twist {
        /// Negated variables, e.g. 12:-,13:-,23:-.
        #[arg(long)]
        signs: String,
        #[arg(short)]
        n: Option<usize>,
    },
    /// Decide membership of the polynomial on stdin.
    Member {
        #[arg(long, value_enum)]
        ideal: IdealKind,
        /// Character selecting the component, e.g. 12:-; default trivial.
        #[arg(long)]
        eps: Option<String>,
        #[arg(short)]
        n: usize,
    },
    /// Decide membership of the polynomial on stdin in J_n : I_n.
    Colon {
        #[arg(short)]
        n: usize,
    },
    /// Check the link ideal against the intersection of all but one component.
    VerifyLink {
        #[arg(short)]
        n: usize,
        /// Largest total degree checked.
        #[arg(long)]
        bound: u32,
        /// Omitted character, e.g. 12:-; default trivial.
        #[arg(long)]
        omit: Option<String>,
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Check J_n against the intersection of all components.
    VerifyDecomp {
        #[arg(short)]
        n: usize,
        #[arg(long)]
        bound: u32,
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Check the group algebra model of (Z/2)^k for every omitted character.
    LaurentCheck {
        #[arg(short)]
        k: usize,
    },
}

enum Outcome {
    Yes,
    No,
}

struct Io<'a> {
    input: &'a mut dyn BufRead,
    out: &'a mut dyn Write,
    format: OutputFormat,
}

impl Io<'_> {
    fn line(&mut self, s: impl AsRef<str>) -> Result<()> {
        writeln!(self.out, "{}", s.as_ref()).map_err(|e| Error::InvalidArgument(format!("write failed: {e}")))
    }

    fn json(&mut self, v: &Value) -> Result<()> {
        self.line(serde_json::to_string_pretty(v).expect("serializable"))
    }

    fn poly(&mut self, p: &SparsePoly) -> Result<()> {
        match self.format {
            OutputFormat::Text => self.line(p.to_string()),
            OutputFormat::Json => self.line(p.to_json()),
        }
    }

    fn read_input(&mut self) -> Result<String> {
        let mut s = String::new();
        self.input
            .read_to_string(&mut s)
            .map_err(|e| Error::Parse(format!("cannot read stdin: {e}")))?;
        Ok(s)
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::SizeCapExceeded { .. } => 3,
        _ => 2,
    }
}

/// Runs the command line with the process's standard streams.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let stdin = std::io::stdin();
    let mut input = stdin.lock();
    let mut out = std::io::stdout().lock();
    let mut err = std::io::stderr().lock();
    run_with(argv, &mut input, &mut out, &mut err)
}

/// Runs the command line against the given streams and returns the exit
/// code: 0 success, 1 a negative answer or failed verification, 2 usage or
/// input errors, 3 size caps.
pub fn run_with<I, T>(argv: I, input: &mut dyn BufRead, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
            } else {
                let _ = write!(out, "{text}");
            }
            return code;
        }
    };
    let mut io = Io {
        input,
        out,
        format: cli.format,
    };
    match dispatch(cli.command, &mut io) {
        Ok(Outcome::Yes) => 0,
        Ok(Outcome::No) => 1,
        Err(e) => {
            let _ = writeln!(err, "vlab: {e}");
            exit_code(&e)
        }
    }
}

fn torsion_text(factors: &[BigInt]) -> String {
    if factors.is_empty() {
        return "trivial".into();
    }
    let mut counts: BTreeMap<&BigInt, usize> = BTreeMap::new();
    for f in factors {
        *counts.entry(f).or_default() += 1;
    }
    counts
        .iter()
        .map(|(f, k)| format!("{f}^{k}"))
        .collect::<Vec<_>>()
        .join(" x ")
}

fn mono_text(m: &ExponentMatrix) -> String {
    let s = monomial_string(m);
    if s.is_empty() {
        "1".into()
    } else {
        s
    }
}

fn bracket_labels(n: usize, prime: bool) -> Vec<String> {
    if prime {
        let doubled = off_diagonal_pairs(n - 1)
            .into_iter()
            .map(|(i, j)| format!("2[{i}{n}|{j}{n}]"));
        let diagonal = (1..n).map(|i| format!("[{i}{n}|{i}{n}]"));
        doubled.chain(diagonal).collect()
    } else {
        (1..n)
            .flat_map(|i| (i..n).map(move |j| format!("[{i}{n}|{j}{n}]")))
            .collect()
    }
}

/// Largest index mentioned by a polynomial text, JSON polynomial or sign
/// list, used when `-n` is not given.
fn max_index(s: &str) -> usize {
    let mut best = 0;
    let chars: Vec<char> = s.chars().collect();
    for w in chars.windows(2) {
        if let (Some(a), Some(b)) = (w[0].to_digit(10), w[1].to_digit(10)) {
            best = best.max(a.max(b) as usize);
        }
    }
    best
}

fn parse_poly(s: &str, n: usize) -> Result<SparsePoly> {
    if s.trim_start().starts_with('[') {
        SparsePoly::from_json(s, n)
    } else {
        SparsePoly::parse(s, n)
    }
}

fn check_n(n: usize) -> Result<()> {
    if n > MAX_N {
        return Err(Error::SizeCapExceeded {
            what: format!("n = {n}"),
            limit: MAX_N,
        });
    }
    Ok(())
}

fn with_jobs<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> Result<T> + Send) -> Result<T> {
    match jobs {
        None => f(),
        Some(0) => Err(Error::InvalidArgument("--jobs must be positive".into())),
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build()
            .map_err(|e| Error::InvalidArgument(e.to_string()))?
            .install(f),
    }
}

fn report(io: &mut Io<'_>, r: &VerificationReport) -> Result<Outcome> {
    match io.format {
        OutputFormat::Json => io.json(&serde_json::to_value(r).expect("serializable"))?,
        OutputFormat::Text => {
            let mut head = format!("{} n={} bound={}", r.check, r.n, r.degree_bound);
            if let Some(o) = &r.omitted {
                head.push_str(&format!(" omitted={o}"));
            }
            io.line(head)?;
            for x in &r.records {
                io.line(format!(
                    "{} fiber={} classes={} jn={} ideal={} sub={} {}",
                    x.degree.iter().map(ToString::to_string).collect::<Vec<_>>().join(","),
                    x.fiber_size,
                    x.classes,
                    x.dim_jn,
                    x.dim_ideal,
                    x.dim_sub,
                    if x.equal { "equal" } else { "DIFFERENT" }
                ))?;
            }
            let failed = r.records.iter().filter(|x| !x.equal).count();
            if r.verdict {
                io.line(format!("verified up to total degree {} ({} degrees)", r.degree_bound, r.records.len()))?;
            } else {
                io.line(format!("FAILED in {failed} of {} degrees", r.records.len()))?;
            }
        }
    }
    Ok(if r.verdict { Outcome::Yes } else { Outcome::No })
}

fn answer(io: &mut Io<'_>, yes: bool) -> Result<Outcome> {
    match io.format {
        OutputFormat::Text => io.line(if yes { "yes" } else { "no" })?,
        OutputFormat::Json => io.json(&json!({ "member": yes }))?,
    }
    Ok(if yes { Outcome::Yes } else { Outcome::No })
}

fn dispatch(cmd: Command, io: &mut Io<'_>) -> Result<Outcome> {
    let limits = Limits::from_env();
    match cmd {
        Command::Grading { d, n } => {
            let v = veronese_matrix(d, n)?;
            let labels: Vec<String> = v
                .column_index()
                .iter()
                .map(|ms| ms.iter().map(ToString::to_string).collect())
                .collect();
            let rows: Vec<Vec<String>> = (0..v.n())
                .map(|i| v.matrix().row(i).iter().map(ToString::to_string).collect())
                .collect();
            match io.format {
                OutputFormat::Text => {
                    io.line(labels.join(" "))?;
                    for r in rows {
                        io.line(r.join(" "))?;
                    }
                }
                OutputFormat::Json => {
                    let rows: Vec<Vec<u32>> = (0..v.n()).map(|i| (0..v.num_columns()).map(|k| v.column(k)[i]).collect()).collect();
                    io.json(&json!({ "d": d, "n": n, "columns": labels, "rows": rows }))?;
                }
            }
        }
        Command::Basis { n, prime } => {
            check_n(n)?;
            if n < 2 {
                return Err(Error::InvalidArgument("basis needs n ≥ 2".into()));
            }
            let vectors = if prime { basis_bprime(n) } else { basis_b(n) };
            let labels = bracket_labels(n, prime);
            match io.format {
                OutputFormat::Text => {
                    for (l, v) in labels.iter().zip(&vectors) {
                        io.line(format!("{l}: {v}"))?;
                    }
                }
                OutputFormat::Json => {
                    let items: Vec<Value> = labels
                        .iter()
                        .zip(&vectors)
                        .map(|(l, v)| json!({ "label": l, "vector": v.entries() }))
                        .collect();
                    io.json(&Value::Array(items))?;
                }
            }
        }
        Command::Torsion { d, n } => {
            let factors = higher_torsion(d, n)?;
            match io.format {
                OutputFormat::Text => io.line(torsion_text(&factors))?,
                OutputFormat::Json => {
                    let fs: Vec<String> = factors.iter().map(ToString::to_string).collect();
                    io.json(&json!({ "d": d, "n": n, "invariant_factors": fs }))?;
                }
            }
        }
        Command::Fiber { n, b, classes } => {
            if b.n() != n {
                return Err(Error::InvalidArgument(format!("degree {b} has {} entries, expected {n}", b.n())));
            }
            let v = veronese_matrix(2, n)?;
            if classes {
                let cl = fiber_classes(&v, &b, &limits)?;
                match io.format {
                    OutputFormat::Text => {
                        for (key, members) in &cl {
                            let ms: Vec<String> = members.iter().map(mono_text).collect();
                            io.line(format!("{key}: {}", ms.join(", ")))?;
                        }
                    }
                    OutputFormat::Json => {
                        let items: Vec<Value> = cl
                            .iter()
                            .map(|(key, members)| {
                                json!({
                                    "parities": key.parities.iter().map(|&p| u8::from(p)).collect::<Vec<_>>(),
                                    "members": members.iter().map(mono_text).collect::<Vec<_>>(),
                                })
                            })
                            .collect();
                        io.json(&json!({ "degree": b.to_string(), "classes": items }))?;
                    }
                }
            } else {
                let fiber = enumerate_fiber(&v, &b, &limits)?;
                match io.format {
                    OutputFormat::Text => {
                        for u in &fiber {
                            io.line(mono_text(u))?;
                        }
                    }
                    OutputFormat::Json => {
                        let ms: Vec<String> = fiber.iter().map(mono_text).collect();
                        io.json(&json!({ "degree": b.to_string(), "size": fiber.len(), "points": ms }))?;
                    }
                }
            }
        }
        Command::Hilbert { n, max_sum } => {
            check_n(n)?;
            let mut rows = Vec::new();
            for b in degrees_up_to(n, max_sum) {
                let count = class_count(n, &b, &limits)?;
                rows.push((is_saturated_degree(n, &b), b, count));
            }
            match io.format {
                OutputFormat::Text => {
                    for (sat, b, count) in rows {
                        io.line(format!("{b}\t{count}{}", if sat { "\tsaturated" } else { "" }))?;
                    }
                }
                OutputFormat::Json => {
                    let items: Vec<Value> = rows
                        .into_iter()
                        .map(|(sat, b, count)| json!({ "degree": b.to_string(), "classes": count, "saturated": sat }))
                        .collect();
                    io.json(&Value::Array(items))?;
                }
            }
        }
        Command::Pn { n } => io.poly(&p_n(n, &limits)?)?,
        Command::Pplus { n, i } => io.poly(&p_plus(n, i, &limits)?)?,
        Command::Twist { signs, n } => {
            let text = io.read_input()?;
            let n = n.unwrap_or_else(|| max_index(&text).max(max_index(&signs)).max(1));
            check_n(n)?;
            let p = parse_poly(&text, n)?;
            let t = Twisting::parse(&signs, n)?;
            io.poly(&twist(&p, &t))?;
        }
        Command::Member { ideal, eps, n } => {
            check_n(n)?;
            let p = parse_poly(&io.read_input()?, n)?;
            let yes = match ideal {
                IdealKind::Jn => {
                    if eps.is_some() {
                        return Err(Error::InvalidArgument("--eps applies only to --ideal veronese".into()));
                    }
                    in_jn(&p)
                }
                IdealKind::Veronese => {
                    let eps = match eps {
                        Some(s) => SignCharacter::parse(&s, n)?,
                        None => SignCharacter::trivial(n),
                    };
                    in_twisted_veronese(&p, &eps)?
                }
            };
            return answer(io, yes);
        }
        Command::Colon { n } => {
            check_n(n)?;
            let p = parse_poly(&io.read_input()?, n)?;
            return answer(io, colon_membership(&p, n)?);
        }
        Command::VerifyLink { n, bound, omit, jobs } => {
            check_n(n)?;
            let omitted = match omit {
                Some(s) => SignCharacter::parse(&s, n)?,
                None => SignCharacter::trivial(n),
            };
            let r = with_jobs(jobs, || verify_link(n, &omitted, bound, &limits))?;
            return report(io, &r);
        }
        Command::VerifyDecomp { n, bound, jobs } => {
            check_n(n)?;
            let r = with_jobs(jobs, || verify_decomposition(n, bound, &limits))?;
            return report(io, &r);
        }
        Command::LaurentCheck { k } => {
            let ok = group_algebra_subintersection(k)?;
            match io.format {
                OutputFormat::Text => io.line(if ok {
                    format!("k={k}: all {} omissions verified", 1usize << k)
                } else {
                    format!("k={k}: FAILED")
                })?,
                OutputFormat::Json => io.json(&json!({ "k": k, "omissions": 1usize << k, "verified": ok }))?,
            }
            return Ok(if ok { Outcome::Yes } else { Outcome::No });
        }
    }
    Ok(Outcome::Yes)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str], stdin: &str) -> (i32, String, String) {
        let mut input = stdin.as_bytes();
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("vlab").chain(args.iter().copied());
        let code = run_with(argv, &mut input, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn torsion_strings() {
        assert_eq!(torsion_text(&[]), "trivial");
        let f: Vec<BigInt> = [2, 2, 4].iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(torsion_text(&f), "2^2 x 4^1");
    }

    #[test]
    fn usage_errors() {
        assert_eq!(run_str(&["frobnicate"], "").0, 2);
        assert_eq!(run_str(&["pplus", "-n", "x"], "").0, 2);
        assert_eq!(run_str(&["pplus", "-n", "4", "-i", "2"], "").0, 2);
        assert_eq!(run_str(&["member", "--ideal", "jn", "-n", "3"], "x11 +").0, 2);
        assert_eq!(run_str(&["--help"], "").0, 0);
    }

    #[test]
    fn size_cap_exit_code() {
        assert_eq!(run_str(&["grading", "-d", "5", "-n", "5"], "").0, 3);
        assert_eq!(run_str(&["basis", "-n", "9"], "").0, 3);
    }

    #[test]
    fn membership_answers() {
        assert_eq!(run_str(&["member", "--ideal", "jn", "-n", "3"], "x11*x22 - x12^2"), (0, "yes\n".into(), String::new()));
        assert_eq!(run_str(&["member", "--ideal", "jn", "-n", "3"], "x11*x23 - x12*x13").0, 1);
        assert_eq!(run_str(&["member", "--ideal", "veronese", "-n", "3"], "x11*x23 - x12*x13").0, 0);
        assert_eq!(run_str(&["member", "--ideal", "veronese", "--eps", "12:-", "-n", "3"], "x11*x23 + x12*x13").0, 0);
        assert_eq!(run_str(&["colon", "-n", "3"], "x11*x23 + x12*x13").0, 0);
        assert_eq!(run_str(&["colon", "-n", "3"], "x11").0, 1);
    }

    #[test]
    fn twist_infers_size() {
        let (code, out, _) = run_str(&["twist", "--signs", "12:-,13:-,23:-"], "x11*x23 - x12*x13");
        assert_eq!(code, 0);
        assert_eq!(out, "-x11*x23 - x12*x13\n");
    }
}

use std::fs;
use std::path::Path;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use minoreq::format::{
    parse_certificate, parse_matrix, parse_pencil, write_certificate, write_matrix, LabelNames,
    MatrixFile,
};
use minoreq::pme::{PmeOptions, Refutation, ShiftOptions, BRUTE_FORCE_PME_LIMIT};
use minoreq::pit::{pit_check_with, BRUTE_FORCE_PIT_LIMIT};
use minoreq::{
    brute_force_pit, brute_force_pme, cut_transpose, is_cut, minimal_cut, pme_check_with,
    verify_certificate, Certificate, Kernel, Verdict,
};

use crate::{Command, PmeArgs, PmeMode, ShiftArgs};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Yes,
    No,
    Usage,
    OracleDisagrees,
}

impl From<Status> for ExitCode {
    fn from(s: Status) -> Self {
        ExitCode::from(match s {
            Status::Yes => 0,
            Status::No => 1,
            Status::Usage => 2,
            Status::OracleDisagrees => 3,
        })
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_matrix(path: &Path) -> Result<MatrixFile> {
    parse_matrix(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

/// Both files, checked for matching shape, field and label names.
fn load_pair(a: &Path, b: &Path) -> Result<(MatrixFile, MatrixFile)> {
    let fa = load_matrix(a)?;
    let fb = load_matrix(b)?;
    if fa.matrix.n() != fb.matrix.n() {
        bail!("matrices have sizes {} and {}", fa.matrix.n(), fb.matrix.n());
    }
    if fa.matrix.field() != fb.matrix.field() {
        bail!(
            "matrices are over different fields: {} and {}",
            fa.matrix.field(),
            fb.matrix.field()
        );
    }
    if fa.names != fb.names {
        bail!("matrices use different label names");
    }
    Ok((fa, fb))
}

fn options(shift: &ShiftArgs) -> PmeOptions {
    PmeOptions {
        shift: ShiftOptions {
            randomized: shift.randomized_shift,
            seed: shift.seed,
        },
    }
}

fn say(quiet: bool, line: impl AsRef<str>) {
    if !quiet {
        println!("{}", line.as_ref());
    }
}

fn describe(r: &Refutation, names: &LabelNames) -> String {
    match r {
        Refutation::Minor(s) => format!("principal minor on {} differs", names.format_set(s)),
        Refutation::PartitionMismatch => "irreducible block partitions differ".into(),
        Refutation::Branch { block, branch } => {
            format!("block {}: {branch}", names.format_set(block))
        }
    }
}

fn summarize(c: &Certificate, names: &LabelNames, quiet: bool) {
    say(quiet, format!("working field: {}", c.field));
    for b in &c.blocks {
        let seq: Vec<String> = b.cut_sequence.iter().map(|x| names.format_set(x)).collect();
        say(
            quiet,
            format!(
                "block {}: {} cut(s) [{}]{}",
                names.format_set(&b.labels),
                seq.len(),
                seq.join(" "),
                if b.witness.transposed { ", transposed" } else { "" }
            ),
        );
    }
}

fn pme(mode: PmeMode) -> Result<Status> {
    let (args, always_emit) = match mode {
        PmeMode::Check(a) => (a, false),
        PmeMode::Certify(a) => (a, true),
    };
    let PmeArgs {
        a,
        b,
        out,
        oracle,
        quiet,
        shift,
    } = args;
    let (fa, fb) = load_pair(&a, &b)?;
    let names = &fa.names;
    let verdict = pme_check_with(&fa.matrix, &fb.matrix, &options(&shift))?;
    if oracle {
        if fa.matrix.n() > BRUTE_FORCE_PME_LIMIT {
            eprintln!(
                "note: oracle skipped, n = {} exceeds {BRUTE_FORCE_PME_LIMIT}",
                fa.matrix.n()
            );
        } else {
            let truth = brute_force_pme(&fa.matrix, &fb.matrix)?;
            if truth.equivalent != verdict.is_equivalent() {
                eprintln!(
                    "oracle disagreement: check says {}, all minors say {}",
                    verdict.is_equivalent(),
                    truth.equivalent
                );
                return Ok(Status::OracleDisagrees);
            }
            if let Some(s) = &truth.refuting {
                say(quiet, format!("oracle: first differing minor {}", names.format_set(s)));
            } else {
                say(quiet, "oracle: all principal minors agree");
            }
        }
    }
    match verdict {
        Verdict::Equivalent(cert) => {
            say(quiet, "equivalent");
            summarize(&cert, names, quiet);
            let text = write_certificate(&cert, names);
            match out {
                Some(path) => fs::write(&path, text)
                    .with_context(|| format!("writing {}", path.display()))?,
                None if always_emit => print!("{text}"),
                None => {}
            }
            Ok(Status::Yes)
        }
        Verdict::NotEquivalent(r) => {
            say(quiet, format!("not equivalent: {}", describe(&r, names)));
            Ok(Status::No)
        }
    }
}

fn verify(a: &Path, b: &Path, cert: &Path, quiet: bool) -> Result<Status> {
    let (fa, fb) = load_pair(a, b)?;
    let cert = parse_certificate(&read(cert)?, &fa.names)
        .with_context(|| format!("parsing {}", cert.display()))?;
    if !cert.field.extends(fa.matrix.field()) {
        bail!(
            "certificate field {} does not contain the matrix field {}",
            cert.field,
            fa.matrix.field()
        );
    }
    if verify_certificate(&fa.matrix, &fb.matrix, &cert)? {
        say(quiet, "certificate accepted");
        Ok(Status::Yes)
    } else {
        say(quiet, "certificate rejected");
        Ok(Status::No)
    }
}

fn pit(p1: &Path, p2: &Path, oracle: bool, shift: &ShiftArgs) -> Result<Status> {
    let q1 = parse_pencil(&read(p1)?).with_context(|| format!("parsing {}", p1.display()))?;
    let q2 = parse_pencil(&read(p2)?).with_context(|| format!("parsing {}", p2.display()))?;
    let equal = pit_check_with(&q1, &q2, &options(shift))?;
    if oracle {
        if q1.m() > BRUTE_FORCE_PIT_LIMIT {
            eprintln!("note: oracle skipped, m = {} exceeds {BRUTE_FORCE_PIT_LIMIT}", q1.m());
        } else if brute_force_pit(&q1, &q2)? != equal {
            eprintln!("oracle disagreement: check says {equal}");
            return Ok(Status::OracleDisagrees);
        }
    }
    println!("{}", if equal { "equal" } else { "not equal" });
    Ok(if equal { Status::Yes } else { Status::No })
}

fn dpp(k1: &Path, k2: &Path, out: Option<&Path>, quiet: bool, shift: &ShiftArgs) -> Result<Status> {
    let (f1, f2) = load_pair(k1, k2)?;
    let names = f1.names;
    let k1 = Kernel::new(f1.matrix).context("kernels must be rational")?;
    let k2 = Kernel::new(f2.matrix).context("kernels must be rational")?;
    match minoreq::dpp::dpp_equivalent_with(&k1, &k2, &options(shift))? {
        Verdict::Equivalent(cert) => {
            say(quiet, "same process");
            summarize(&cert, &names, quiet);
            if let Some(path) = out {
                fs::write(path, write_certificate(&cert, &names))
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            Ok(Status::Yes)
        }
        Verdict::NotEquivalent(r) => {
            say(quiet, format!("different processes: {}", describe(&r, &names)));
            Ok(Status::No)
        }
    }
}

fn cut(a: &Path, transpose: Option<&str>) -> Result<Status> {
    let fa = load_matrix(a)?;
    match transpose {
        None => match minimal_cut(&fa.matrix)? {
            Some(s) => {
                println!("{}", fa.names.format_set(&s));
                Ok(Status::Yes)
            }
            None => {
                println!("no cut");
                Ok(Status::No)
            }
        },
        Some(text) => {
            let x = fa.names.parse_set(text)?;
            if !is_cut(&fa.matrix, &x) {
                eprintln!("{} is not a cut", fa.names.format_set(&x));
                return Ok(Status::No);
            }
            print!("{}", write_matrix(&cut_transpose(&fa.matrix, &x)?, &fa.names));
            Ok(Status::Yes)
        }
    }
}

pub fn run(command: Command) -> Result<Status> {
    match command {
        Command::Pme { mode } => pme(mode),
        Command::Verify {
            a,
            b,
            certificate,
            quiet,
        } => verify(&a, &b, &certificate, quiet),
        Command::Pit {
            p1,
            p2,
            oracle,
            shift,
        } => pit(&p1, &p2, oracle, &shift),
        Command::Dpp {
            k1,
            k2,
            out,
            quiet,
            shift,
        } => dpp(&k1, &k2, out.as_deref(), quiet, &shift),
        Command::Cut { a, transpose, .. } => cut(&a, transpose.as_deref()),
    }
}

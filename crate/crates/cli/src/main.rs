//! Command-line front end: validate pairs, build canonical direct sums,
//! scramble them, recover canonical decompositions, build Toeplitz form
//! matrices, and run the exact identity suite.
//!
//! All I/O is file- or stdin-based JSON (UTF-8); results go to stdout.
//! Exit codes: 0 success, 1 domain/axiom error, 2 unresolved
//! eigenvalues, 3 usage.

use std::io::Read;
use std::process::ExitCode;

use isocanon::decompose::canonical_decomposition;
use isocanon::io::{
    blocks_from_json, decomposition_to_json, matrix_to_json, pair_from_json, pair_to_json,
};
use isocanon::matrices::{e_matrix, f_matrix, lambda_matrix, omega_matrix, s_diag};
use isocanon::pair_engine::{direct_sum_any, Sign};
use isocanon::phi_epsilon::{build_toeplitz, FrobeniusBlock};
use isocanon::poly::Polynomial;
use isocanon::scalars::{GaussianRational, Involution, Rational, Scalar};
use isocanon::{Error, GaussianMatrix, RationalMatrix};

const USAGE: &str = "\
isocanon — exact canonical forms of isometric pairs (A, B)

USAGE:
  isocanon validate <pair.json>
      Check the pair axioms B = eps*B* = A*BA; reports the first failure.
  isocanon build <blocks.json>
      Assemble the direct sum of canonical blocks into a pair file.
  isocanon transform <pair.json> --seed N [--bound K]
      Scramble by a seeded random congruence-similarity (default bound 2).
  isocanon canonical <pair.json>
      Recover the canonical block multiset with certificates.
  isocanon phi-eps --chi <c0,c1,...> --epsilon <1|-1> --involution <identity|conjugation>
      Toeplitz form matrix for the Frobenius block of chi (descending
      coefficients, leading 1 included).
  isocanon verify-identities [--max-n N]
      Run the exact matrix identity suite (default N = 10).

Use \"-\" as the file argument to read from stdin.
Exit codes: 0 ok, 1 domain/axiom error, 2 unresolved eigenvalues, 3 usage.";

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    match run(&args) {
        Ok(out) => {
            println!("{out}");
            ExitCode::SUCCESS
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("{msg}\n\n{USAGE}");
            ExitCode::from(3)
        }
        Err(CliError::Lib(e)) => {
            eprintln!("error: {e}");
            let code = match e {
                Error::UnresolvedFactor(_) => 2,
                _ => 1,
            };
            ExitCode::from(code)
        }
    }
}

enum CliError {
    Usage(String),
    Lib(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn run(args: &[String]) -> Result<String, CliError> {
    let cmd = args.first().ok_or_else(|| usage("missing subcommand"))?;
    let rest = &args[1..];
    match cmd.as_str() {
        "validate" => cmd_validate(rest),
        "build" => cmd_build(rest),
        "transform" => cmd_transform(rest),
        "canonical" => cmd_canonical(rest),
        "phi-eps" => cmd_phi_eps(rest),
        "verify-identities" => cmd_verify_identities(rest),
        "help" | "--help" | "-h" => Ok(USAGE.to_string()),
        other => Err(usage(format!("unknown subcommand {other:?}"))),
    }
}

fn read_input(path: &str) -> Result<String, CliError> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| usage(format!("cannot read stdin: {e}")))?;
        Ok(buf)
    } else {
        std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {path}: {e}")))
    }
}

fn read_json(path: &str) -> Result<serde_json::Value, CliError> {
    let text = read_input(path)?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::Lib(Error::Parse(format!("invalid JSON in {path}: {e}"))))
}

fn one_file(args: &[String], what: &str) -> Result<String, CliError> {
    match args {
        [f] => Ok(f.clone()),
        _ => Err(usage(format!("expected exactly one {what} argument"))),
    }
}

fn flag_value<'a>(args: &'a [String], flag: &str) -> Option<&'a str> {
    args.iter()
        .position(|a| a == flag)
        .and_then(|i| args.get(i + 1))
        .map(String::as_str)
}

fn cmd_validate(args: &[String]) -> Result<String, CliError> {
    let path = one_file(args, "pair file")?;
    let pair = pair_from_json(&read_json(&path)?)?;
    Ok(format!(
        "valid: case {} pair of dimension {}, epsilon = {:+}\nall axioms hold: B = eps*B*, \
         A*BA = B, A and B nonsingular",
        pair.domain().case,
        pair.dim(),
        pair.epsilon().to_i64()
    ))
}

fn cmd_build(args: &[String]) -> Result<String, CliError> {
    let path = one_file(args, "blocks file")?;
    let blocks = blocks_from_json(&read_json(&path)?)?;
    let pairs = blocks
        .iter()
        .map(|b| b.build())
        .collect::<Result<Vec<_>, _>>()?;
    let sum = direct_sum_any(&pairs)?;
    Ok(serde_json::to_string_pretty(&pair_to_json(&sum)).expect("serializable"))
}

fn cmd_transform(args: &[String]) -> Result<String, CliError> {
    let files: Vec<&String> = args.iter().take_while(|a| !a.starts_with("--")).collect();
    if files.len() != 1 {
        return Err(usage("expected one pair file before the flags"));
    }
    let pair = pair_from_json(&read_json(files[0])?)?;
    let seed: u64 = flag_value(args, "--seed")
        .ok_or_else(|| usage("transform requires --seed N"))?
        .parse()
        .map_err(|_| usage("--seed must be an unsigned integer"))?;
    let bound: u32 = match flag_value(args, "--bound") {
        Some(s) => s
            .parse()
            .map_err(|_| usage("--bound must be a small nonnegative integer"))?,
        None => 2,
    };
    let scrambled = pair.scramble(seed, bound)?;
    Ok(serde_json::to_string_pretty(&pair_to_json(&scrambled)).expect("serializable"))
}

fn cmd_canonical(args: &[String]) -> Result<String, CliError> {
    let path = one_file(args, "pair file")?;
    let pair = pair_from_json(&read_json(&path)?)?;
    let dec = canonical_decomposition(&pair)?;
    Ok(serde_json::to_string_pretty(&decomposition_to_json(&pair, &dec)).expect("serializable"))
}

fn cmd_phi_eps(args: &[String]) -> Result<String, CliError> {
    let chi_text = flag_value(args, "--chi").ok_or_else(|| usage("phi-eps requires --chi"))?;
    let eps = match flag_value(args, "--epsilon") {
        Some("1") | Some("+1") => Sign::Plus,
        Some("-1") => Sign::Minus,
        _ => return Err(usage("phi-eps requires --epsilon 1 or -1")),
    };
    let inv_text = flag_value(args, "--involution").unwrap_or("identity");
    let m = match inv_text {
        "identity" => {
            let coeffs = parse_coeffs::<Rational>(chi_text)?;
            let phi = FrobeniusBlock::from_chi(Polynomial::from_descending(coeffs))?;
            let m: RationalMatrix = build_toeplitz(&phi, eps, Involution::Identity)?;
            matrix_to_json(&m)
        }
        "conjugation" => {
            let coeffs = parse_coeffs::<GaussianRational>(chi_text)?;
            let phi = FrobeniusBlock::from_chi(Polynomial::from_descending(coeffs))?;
            let m: GaussianMatrix = build_toeplitz(&phi, eps, Involution::ComplexConjugation)?;
            matrix_to_json(&m)
        }
        other => {
            return Err(usage(format!(
                "--involution must be identity or conjugation, got {other:?}"
            )))
        }
    };
    Ok(serde_json::to_string_pretty(&m).expect("serializable"))
}

fn parse_coeffs<S: Scalar>(text: &str) -> Result<Vec<S>, CliError> {
    text.split(',')
        .map(|t| S::parse(t.trim()).map_err(CliError::Lib))
        .collect()
}

fn cmd_verify_identities(args: &[String]) -> Result<String, CliError> {
    let max_n: usize = match flag_value(args, "--max-n") {
        Some(s) => s
            .parse()
            .map_err(|_| usage("--max-n must be a positive integer"))?,
        None => 10,
    };
    if max_n == 0 {
        return Err(usage("--max-n must be at least 1"));
    }
    let mut lines = Vec::new();
    let mut all_ok = true;
    for n in 1..=max_n {
        let f = f_matrix::<Rational>(n).map_err(CliError::Lib)?;
        let l = lambda_matrix::<Rational>(n).map_err(CliError::Lib)?;
        let prod = (|| -> Result<RationalMatrix, Error> {
            f.inverse()?.mul(&l.transpose())?.mul(&f)?.mul(&l)
        })()
        .map_err(CliError::Lib)?;
        let ok1 = prod.is_identity();

        let s = s_diag::<GaussianRational>(n).map_err(CliError::Lib)?;
        let lg = lambda_matrix::<GaussianRational>(n).map_err(CliError::Lib)?;
        let omega = omega_matrix::<GaussianRational>(n).map_err(CliError::Lib)?;
        let ok2 = (|| -> Result<bool, Error> { Ok(s.inverse()?.mul(&lg)?.mul(&s)? == omega) })()
            .map_err(CliError::Lib)?;

        let fg = f_matrix::<GaussianRational>(n)
            .map_err(CliError::Lib)?
            .scale_left(&GaussianRational::i_pow(n as i64 - 1));
        let e = e_matrix::<GaussianRational>(n).map_err(CliError::Lib)?;
        let ok3 = (|| -> Result<bool, Error> {
            Ok(s.star(Involution::ComplexConjugation)?.mul(&fg)?.mul(&s)? == e)
        })()
        .map_err(CliError::Lib)?;

        all_ok &= ok1 && ok2 && ok3;
        lines.push(format!(
            "n = {n:2}: F^-1 L^T F L = I  {}   S^-1 L S = Omega  {}   S* (i^(n-1) F) S = E  {}",
            pass(ok1),
            pass(ok2),
            pass(ok3)
        ));
    }
    if !all_ok {
        return Err(CliError::Lib(Error::ConstructionBug(
            "identity suite failed".into(),
        )));
    }
    lines.push(format!("all identities hold exactly for n = 1..{max_n}"));
    Ok(lines.join("\n"))
}

fn pass(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

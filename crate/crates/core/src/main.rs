use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use skewrank::counterexamples::{
    remark1_parity_rule, remark1_validate, remark2_matrix, remark2_reference_certificate,
};
use skewrank::evenrank::{EvenRankChecker, DEFAULT_EXHAUSTIVE_LIMIT};
use skewrank::format::{
    parse_certificate, parse_scalar, read_matrix, write_matrix, write_scaling_certificate,
    write_sign_certificate,
};
use skewrank::{
    build_lemma_matrix, lemma_parity_predicate, recognize_general_scaling, recognize_sign,
    Certificate, Error, FieldSpec, IndexSet, LemmaParams, OddWitness, ScalingVerdict,
    SearchMode, SignVerdict,
};

/// Exit status: the property holds.
const HOLDS: u8 = 0;
/// Exit status: the property fails; a witness was printed.
const FAILS: u8 = 1;
/// Exit status: bad input or usage.
const INPUT_ERROR: u8 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "skewrank",
    version,
    about = "Principal rank parity and sign skew-symmetrization of {0,1,-1} matrices"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the rank of a matrix.
    Rank {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Schur complement on a principal block, with the Guttman rank check.
    Schur {
        file: PathBuf,
        /// Comma-separated 1-based indices of the block, e.g. `1,2`.
        #[arg(long, value_delimiter = ',', required = true)]
        block: Vec<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Check whether every principal submatrix has even rank.
    EvenCheck {
        file: PathBuf,
        /// Sample this many random index sets instead of enumerating all.
        #[arg(long)]
        sample: Option<u64>,
        #[arg(long, default_value_t = 0, requires = "sample")]
        seed: u64,
        /// Largest n for exhaustive enumeration.
        #[arg(long, default_value_t = DEFAULT_EXHAUSTIVE_LIMIT)]
        max_n: usize,
        #[arg(long)]
        json: bool,
    },
    /// Decide skew-symmetry up to row/column sign flips.
    Recognize {
        file: PathBuf,
        /// Also write an accepting certificate to this file.
        #[arg(long)]
        cert_out: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Decide skew-symmetry up to arbitrary nonzero row/column scalings.
    ScaleRecognize {
        file: PathBuf,
        #[arg(long)]
        cert_out: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Re-check a stored certificate against a matrix.
    Verify {
        file: PathBuf,
        #[arg(long)]
        cert: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Print a lemma-family matrix with its predicted and actual rank parity.
    Lemma {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_negative_numbers = true)]
        a: i64,
        #[arg(long, allow_negative_numbers = true)]
        b: i64,
        #[arg(long, allow_negative_numbers = true)]
        c: i64,
        /// `q` or `gf <p>`.
        #[arg(long, default_value = "q")]
        field: FieldSpec,
        #[arg(long)]
        json: bool,
    },
    /// Reproduce the boundary examples.
    #[command(subcommand)]
    Counterexample(Counterexample),
}

#[derive(Subcommand, Debug)]
enum Counterexample {
    /// 4x4 matrix with all principal ranks even that no nonzero scaling fixes.
    Remark1 {
        #[arg(long)]
        field: FieldSpec,
        #[arg(long, allow_negative_numbers = true)]
        a: i64,
        /// Integer or fraction (fractions only over `q`).
        #[arg(long, allow_negative_numbers = true)]
        b: String,
        #[arg(long)]
        json: bool,
    },
    /// Matrix needing the reordering step before sign normalization.
    Remark2 {
        #[arg(long, default_value = "q")]
        field: FieldSpec,
        #[arg(long)]
        json: bool,
    },
}

fn witness_json(w: &OddWitness) -> Value {
    json!({ "indices": w.indices, "rank": w.observed_rank })
}

fn print_witness(w: &OddWitness) {
    println!("witness: {}", w.indices);
    println!("rank: {}", w.observed_rank);
}

fn emit(json_mode: bool, value: Value, text: impl FnOnce()) {
    if json_mode {
        println!("{value}");
    } else {
        text();
    }
}

fn run(command: Command) -> Result<u8, Error> {
    match command {
        Command::Rank { file, json } => {
            let m = read_matrix(file)?;
            let r = m.rank();
            emit(json, json!({ "verdict": "ok", "rank": r }), || println!("{r}"));
            Ok(HOLDS)
        }
        Command::Schur { file, block, json } => {
            let m = read_matrix(file)?;
            let block = IndexSet::from_unsorted(block)?;
            let schur = m.schur_complement(&block)?;
            let report = m.guttman_check(&block)?;
            let code = if report.holds { HOLDS } else { FAILS };
            emit(
                json,
                json!({
                    "verdict": if report.holds { "ok" } else { "guttman-violated" },
                    "rank": report.rank_matrix,
                    "block_rank": report.rank_block,
                    "schur_rank": report.rank_schur,
                    "schur": write_matrix(&schur),
                }),
                || {
                    print!("{}", write_matrix(&schur));
                    println!(
                        "# rank {} = block rank {} + schur rank {}: {}",
                        report.rank_matrix,
                        report.rank_block,
                        report.rank_schur,
                        if report.holds { "holds" } else { "VIOLATED" }
                    );
                },
            );
            Ok(code)
        }
        Command::EvenCheck {
            file,
            sample,
            seed,
            max_n,
            json,
        } => {
            let m = read_matrix(file)?;
            let mode = match sample {
                Some(trials) => SearchMode::Sampled { trials, seed },
                None => SearchMode::Exhaustive,
            };
            let verdict = EvenRankChecker {
                exhaustive_limit: max_n,
            }
            .check(&m, mode)?;
            match verdict.witness() {
                None => {
                    emit(
                        json,
                        json!({ "verdict": "all-even", "checked": verdict.checked, "mode": mode }),
                        || println!("all-even ({} principal submatrices checked)", verdict.checked),
                    );
                    Ok(HOLDS)
                }
                Some(w) => {
                    emit(
                        json,
                        json!({ "verdict": "odd", "witness": witness_json(w), "checked": verdict.checked, "mode": mode }),
                        || {
                            println!("odd");
                            print_witness(w);
                        },
                    );
                    Ok(FAILS)
                }
            }
        }
        Command::Recognize {
            file,
            cert_out,
            json,
        } => {
            let m = read_matrix(file)?;
            match recognize_sign(&m)? {
                SignVerdict::Accept(cert) => {
                    if let Some(path) = cert_out {
                        std::fs::write(path, write_sign_certificate(&cert))?;
                    }
                    emit(
                        json,
                        json!({ "verdict": "accept", "certificate": cert }),
                        || {
                            println!("accept");
                            print!("{}", write_sign_certificate(&cert));
                        },
                    );
                    Ok(HOLDS)
                }
                SignVerdict::Reject(w) => {
                    emit(
                        json,
                        json!({ "verdict": "reject", "witness": witness_json(&w) }),
                        || {
                            println!("reject");
                            print_witness(&w);
                        },
                    );
                    Ok(FAILS)
                }
            }
        }
        Command::ScaleRecognize {
            file,
            cert_out,
            json,
        } => {
            let m = read_matrix(file)?;
            match recognize_general_scaling(&m)? {
                ScalingVerdict::Accept(cert) => {
                    if let Some(path) = cert_out {
                        std::fs::write(path, write_scaling_certificate(&cert))?;
                    }
                    emit(
                        json,
                        json!({ "verdict": "accept", "certificate": cert }),
                        || {
                            println!("accept");
                            print!("{}", write_scaling_certificate(&cert));
                        },
                    );
                    Ok(HOLDS)
                }
                ScalingVerdict::Reject(reason) => {
                    emit(
                        json,
                        json!({ "verdict": "reject", "reason": reason }),
                        || {
                            println!("reject");
                            println!("reason: {}", serde_json::to_string(&reason).unwrap());
                        },
                    );
                    Ok(FAILS)
                }
            }
        }
        Command::Verify { file, cert, json } => {
            let m = read_matrix(file)?;
            let text = std::fs::read_to_string(cert)?;
            let cert = parse_certificate(&text, m.field())?;
            let valid = cert.verify(&m)?;
            emit(
                json,
                json!({ "verdict": if valid { "valid" } else { "invalid" } }),
                || println!("{}", if valid { "valid" } else { "invalid" }),
            );
            Ok(if valid { HOLDS } else { FAILS })
        }
        Command::Lemma {
            n,
            a,
            b,
            c,
            field,
            json,
        } => {
            let params = LemmaParams::from_ints(field, n, a, b, c)?;
            let m = build_lemma_matrix(&params);
            let rank = m.rank();
            let actual_even = rank % 2 == 0;
            let predicted = params
                .is_sign_restricted()
                .then(|| lemma_parity_predicate(&params));
            let parity = |even: bool| if even { "even" } else { "odd" };
            let consistent = predicted.map_or(true, |p| p == actual_even);
            emit(
                json,
                json!({
                    "verdict": if consistent { "consistent" } else { "inconsistent" },
                    "rank": rank,
                    "predicted_parity": predicted.map(parity),
                    "actual_parity": parity(actual_even),
                    "matrix": write_matrix(&m),
                }),
                || {
                    print!("{}", write_matrix(&m));
                    match predicted {
                        Some(p) => println!("# predicted parity: {}", parity(p)),
                        None => println!("# predicted parity: n/a (a, b, c not all in {{1, -1}})"),
                    }
                    println!("# actual rank: {rank} ({})", parity(actual_even));
                },
            );
            Ok(if consistent { HOLDS } else { FAILS })
        }
        Command::Counterexample(Counterexample::Remark1 { field, a, b, json }) => {
            let a = field.from_integer(a);
            let b = parse_scalar(&b, field).map_err(|message| Error::Parse {
                line: 1,
                column: 1,
                message,
            })?;
            let report = remark1_validate(&a, &b)?;
            let rule = remark1_parity_rule(&a, &b);
            let full_even = skewrank::counterexamples::remark1_matrix(&a, &b)?.rank() % 2 == 0;
            let code = if report.is_counterexample() { HOLDS } else { FAILS };
            emit(
                json,
                json!({
                    "verdict": if report.is_counterexample() { "counterexample" } else { "not-a-counterexample" },
                    "report": report,
                    "parity_rule_predicts_even": rule,
                    "full_rank_even": full_even,
                }),
                || {
                    println!("field: {}", report.field);
                    println!("a = {}, b = {}", report.a, report.b);
                    println!("all principal submatrices even: {}", report.all_principal_even);
                    println!("whole matrix scalable: {}", report.whole_scalable);
                    println!(
                        "all strict principal submatrices scalable: {}",
                        report.strict_submatrices_scalable
                    );
                    println!("parity rule predicts even full rank: {rule} (actual: {full_even})");
                },
            );
            Ok(code)
        }
        Command::Counterexample(Counterexample::Remark2 { field, json }) => {
            let m = remark2_matrix(field);
            let reference = remark2_reference_certificate();
            let reference_ok = reference.verify(&m)?;
            let verdict = recognize_sign(&m)?;
            let ok = !m.is_skew_symmetric() && reference_ok && verdict.is_accept();
            let found = match &verdict {
                SignVerdict::Accept(c) => json!(c),
                SignVerdict::Reject(w) => witness_json(w),
            };
            emit(
                json,
                json!({
                    "verdict": if ok { "reproduced" } else { "not-reproduced" },
                    "skew_symmetric": m.is_skew_symmetric(),
                    "reference_certificate_valid": reference_ok,
                    "certificate": found,
                }),
                || {
                    print!("{}", write_matrix(&m));
                    println!("# skew-symmetric as given: {}", m.is_skew_symmetric());
                    println!("# flip column 1 and row 3: {}", if reference_ok { "valid" } else { "invalid" });
                    match &verdict {
                        SignVerdict::Accept(c) => {
                            println!("# recognizer: accept");
                            for line in write_sign_certificate(c).lines() {
                                println!("# {line}");
                            }
                        }
                        SignVerdict::Reject(w) => println!("# recognizer: reject {}", w.indices),
                    }
                },
            );
            Ok(if ok { HOLDS } else { FAILS })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(INPUT_ERROR)
        }
    }
}

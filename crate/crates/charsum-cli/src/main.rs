//! Command-line front-end for the charsum toolkit.
//!
//! Exit codes: 0 = verified / true, 1 = well-formed input that is not a
//! design (false verdict / nothing found), 2 = input or limit error.
//! Output is byte-deterministic for a fixed invocation.
//!
//! Input conventions: `--group` takes "Z4 x Z9"; `--set` takes an explicit
//! element set like "{(0,0),(1,2)}" (cyclic groups also accept "{g,g^2}");
//! `--subgroup`, `--forbidden`, and `--quotient-by` take *generator* sets in
//! the same syntax; `--truth-table` takes a binary string, or hex with a
//! leading "0x".

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use charsum::characters::{character_table, Character};
use charsum::cyclotomic::Cyclotomic;
use charsum::designs::{
    numerical_multiplier_check, project_and_verify, search_difference_sets, verify_difference_set,
    verify_lp_packing, verify_partial_difference_set, verify_relative_difference_set,
    verify_spread, ProjectionInput,
};
use charsum::bent::{verify_bent, wht_spectrum, BooleanFunction};
use charsum::report::DesignReport;
use charsum::text::{format_element, parse_element, parse_element_set, parse_group,
    parse_set_or_ring_element};
use charsum::{Element, Error, Group, Subgroup};

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Output {
    Human,
    Structured,
}

#[derive(Parser)]
#[command(
    name = "charsum",
    version,
    about = "Exact group-ring and character-sum toolkit for finite abelian groups"
)]
struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value = "human")]
    output: Output,

    /// Reserved for randomized subcommands; every current command is
    /// deterministic, so the seed is accepted but unused.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Cap override for search budgets and table materialization; defaults
    /// to the CHARSUM_MAX_SIZE environment variable when set.
    #[arg(long, global = true)]
    max_size: Option<u64>,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Verify a (v,k,lambda) difference set.
    VerifyDs {
        #[arg(long)]
        group: String,
        #[arg(long)]
        set: String,
    },
    /// Verify an (m,n,k,lambda) relative difference set.
    VerifyRds {
        #[arg(long)]
        group: String,
        #[arg(long)]
        set: String,
        /// Generators of the forbidden subgroup N.
        #[arg(long)]
        forbidden: String,
    },
    /// Verify a (v,k,lambda,mu) partial difference set.
    VerifyPds {
        #[arg(long)]
        group: String,
        #[arg(long)]
        set: String,
    },
    /// Verify a spread of Z_p^(2n): pass each member as --subgroup.
    VerifySpread {
        #[arg(long)]
        group: String,
        /// Generators of one spread member; repeat for each member.
        #[arg(long, required = true)]
        subgroup: Vec<String>,
    },
    /// Verify a (c,t) LP-packing: U via --subgroup, each part via --set.
    VerifyLp {
        #[arg(long)]
        group: String,
        /// Generators of the subgroup U.
        #[arg(long)]
        subgroup: String,
        /// One part P_i; repeat for each part.
        #[arg(long, required = true)]
        set: Vec<String>,
    },
    /// Test a Boolean function for bentness.
    Bent {
        /// Truth table: binary string, or hex with a leading 0x.
        #[arg(long)]
        truth_table: String,
    },
    /// Print the full character table of a group.
    CharTable {
        #[arg(long)]
        group: String,
    },
    /// Evaluate a character at an element, or a character sum over a set
    /// or group-ring element.
    CharSum {
        #[arg(long)]
        group: String,
        /// Index of the character chi_a.
        #[arg(long = "char")]
        char_index: String,
        #[arg(long, conflicts_with = "set")]
        element: Option<String>,
        #[arg(long)]
        set: Option<String>,
    },
    /// Project a design to a quotient and verify the projected identity.
    Project {
        #[arg(long)]
        group: String,
        #[arg(long)]
        set: String,
        /// Generators of the subgroup U to quotient by.
        #[arg(long)]
        quotient_by: String,
        /// Generators of the forbidden subgroup (projects a relative
        /// difference set when present).
        #[arg(long)]
        forbidden: Option<String>,
    },
    /// Search for a numerical-multiplier translate: D^(t) = hD.
    Multiplier {
        #[arg(long)]
        group: String,
        #[arg(long)]
        set: String,
        #[arg(long)]
        t: i64,
    },
    /// Exhaustively search for (v,k,lambda) difference sets.
    Search {
        #[arg(long)]
        group: String,
        #[arg(long)]
        k: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::from(0),
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn effective_cap(cli: &Cli) -> Option<u64> {
    cli.max_size.or_else(|| {
        std::env::var("CHARSUM_MAX_SIZE")
            .ok()
            .and_then(|s| s.parse().ok())
    })
}

fn parse_generated_subgroup(g: &Group, gens: &str) -> Result<Subgroup, Error> {
    let gens = parse_element_set(g, gens)?;
    g.subgroup_from_generators(&gens)
}

fn emit_report(report: &DesignReport, output: Output) -> bool {
    match output {
        Output::Human => print!("{report}"),
        Output::Structured => print!("{}", report.render_records()),
    }
    report.verdict
}

fn run(cli: &Cli) -> Result<bool, Error> {
    match &cli.cmd {
        Cmd::VerifyDs { group, set } => {
            let g = parse_group(group)?;
            let d = parse_element_set(&g, set)?;
            let report = verify_difference_set(&g, &d, None)?;
            Ok(emit_report(&report, cli.output))
        }
        Cmd::VerifyRds { group, set, forbidden } => {
            let g = parse_group(group)?;
            let r = parse_element_set(&g, set)?;
            let n = parse_generated_subgroup(&g, forbidden)?;
            let report = verify_relative_difference_set(&g, &n, &r, None)?;
            Ok(emit_report(&report, cli.output))
        }
        Cmd::VerifyPds { group, set } => {
            let g = parse_group(group)?;
            let d = parse_element_set(&g, set)?;
            let report = verify_partial_difference_set(&g, &d, None)?;
            Ok(emit_report(&report, cli.output))
        }
        Cmd::VerifySpread { group, subgroup } => {
            let g = parse_group(group)?;
            let members: Vec<Subgroup> = subgroup
                .iter()
                .map(|s| parse_generated_subgroup(&g, s))
                .collect::<Result<_, _>>()?;
            let report = verify_spread(&g, &members)?;
            Ok(emit_report(&report, cli.output))
        }
        Cmd::VerifyLp { group, subgroup, set } => {
            let g = parse_group(group)?;
            let u = parse_generated_subgroup(&g, subgroup)?;
            let parts: Vec<Vec<Element>> = set
                .iter()
                .map(|s| parse_element_set(&g, s))
                .collect::<Result<_, _>>()?;
            let report = verify_lp_packing(&g, &u, &parts)?;
            Ok(emit_report(&report, cli.output))
        }
        Cmd::Bent { truth_table } => {
            let f = if let Some(hex) = truth_table.strip_prefix("0x").or_else(|| truth_table.strip_prefix("0X")) {
                BooleanFunction::from_hex_str(hex)?
            } else {
                BooleanFunction::from_binary_str(truth_table)?
            };
            let spectrum = wht_spectrum(&f);
            let report = verify_bent(&f)?;
            match cli.output {
                Output::Human => {
                    let row: Vec<String> = spectrum.iter().map(|s| s.to_string()).collect();
                    println!("spectrum: {}", row.join(" "));
                    print!("{report}");
                }
                Output::Structured => {
                    let row: Vec<String> = spectrum.iter().map(|s| s.to_string()).collect();
                    println!("spectrum={}", row.join(" "));
                    print!("{}", report.render_records());
                }
            }
            Ok(report.verdict)
        }
        Cmd::CharTable { group } => {
            let g = parse_group(group)?;
            let table = character_table(&g, effective_cap(cli))?;
            let elems = g.enumerate()?;
            for (ci, a) in elems.iter().enumerate() {
                let values: Vec<String> = (0..g.order())
                    .map(|ei| table.value(ci as u64, ei).map(|v| v.to_string()))
                    .collect::<Result<_, _>>()?;
                match cli.output {
                    Output::Human => {
                        println!("chi_{}: {}", format_element(&g, a), values.join(" "))
                    }
                    Output::Structured => {
                        println!("row.{ci}={}", values.join(","))
                    }
                }
            }
            Ok(true)
        }
        Cmd::CharSum { group, char_index, element, set } => {
            let g = parse_group(group)?;
            let a = parse_element(&g, char_index)?;
            let chi = Character::new(&g, &a)?;
            let value: Cyclotomic = match (element, set) {
                (Some(e), None) => chi.evaluate(&parse_element(&g, e)?)?,
                (None, Some(s)) => chi.sum(&parse_set_or_ring_element(&g, s)?)?,
                _ => {
                    return Err(Error::InvalidInput(
                        "char-sum needs exactly one of --element or --set".into(),
                    ))
                }
            };
            match cli.output {
                Output::Human => println!("{value}"),
                Output::Structured => println!("value={value}"),
            }
            Ok(true)
        }
        Cmd::Project { group, set, quotient_by, forbidden } => {
            let g = parse_group(group)?;
            let d = parse_element_set(&g, set)?;
            let u = parse_generated_subgroup(&g, quotient_by)?;
            let q = g.quotient(&u)?;
            let report = match forbidden {
                Some(f) => {
                    let n = parse_generated_subgroup(&g, f)?;
                    project_and_verify(
                        &q,
                        ProjectionInput::RelativeDifferenceSet { forbidden: &n, set: &d },
                    )?
                }
                None => project_and_verify(&q, ProjectionInput::DifferenceSet { set: &d })?,
            };
            Ok(emit_report(&report, cli.output))
        }
        Cmd::Multiplier { group, set, t } => {
            let g = parse_group(group)?;
            let d = parse_element_set(&g, set)?;
            let found = numerical_multiplier_check(&g, &d, *t)?;
            match (&found, cli.output) {
                (Some(h), Output::Human) => println!("h = {}", format_element(&g, h)),
                (Some(h), Output::Structured) => {
                    println!("found=true");
                    println!("h={}", format_element(&g, h));
                }
                (None, Output::Human) => println!("no translating element exists"),
                (None, Output::Structured) => println!("found=false"),
            }
            Ok(found.is_some())
        }
        Cmd::Search { group, k } => {
            let g = parse_group(group)?;
            let found = search_difference_sets(&g, *k, effective_cap(cli))?;
            match cli.output {
                Output::Human => {
                    for d in &found {
                        let row: Vec<String> =
                            d.iter().map(|e| format_element(&g, e)).collect();
                        println!("{{{}}}", row.join(","));
                    }
                    println!("found {} difference set(s)", found.len());
                }
                Output::Structured => {
                    for (i, d) in found.iter().enumerate() {
                        let row: Vec<String> =
                            d.iter().map(|e| format_element(&g, e)).collect();
                        println!("set.{i}={{{}}}", row.join(","));
                    }
                    println!("count={}", found.len());
                }
            }
            Ok(!found.is_empty())
        }
    }
}

//! Command-line surface: load complexes, actions, covers, and fields from
//! their text formats, run the computations, and emit deterministic
//! reports. Exit codes: 0 on success, 1 on a mathematical obstruction
//! (monopole, non-cohomologous data, failed certificate), 2 on input
//! errors.

use crate::classify::{
    self, holonomy, kostant_sequence_check, parse_gauge, ClassifyError, LiftRule,
};
use crate::complex::{parse_cochain, parse_complex, Chain, ComplexError, DeltaComplex, Ring};
use crate::dccomplex::{cycle_basis, parse_triple, DCComplex, DcError, DcTotalComplex};
use crate::descent::{
    descent_equivalence_h1, parse_cover, verify_rho_identities, CechComplex, CoverError,
};
use crate::exactalg::{cohomology_qz, AlgError};
use crate::nerve::{build_nerve, parse_action, FinGroup, FinGroupAction, NerveError, TotalComplex};
use clap::{Parser, Subcommand};
use std::path::{Path, PathBuf};
use std::sync::Arc;

#[derive(Parser)]
#[command(
    name = "deltakit",
    about = "Exact cohomology and lattice U(1) classification on finite delta-complexes",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Cohomology of a complex over Z, Q, or Q/Z
    Cohomology {
        #[arg(long)]
        complex: PathBuf,
        #[arg(long)]
        ring: String,
        #[arg(long)]
        degree: usize,
    },
    /// Cohomology of the (c, h, omega) complex with truncation s
    DcCohomology {
        #[arg(long)]
        complex: PathBuf,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        degree: usize,
    },
    /// Chern data of a gauge field: flux class, curvature pairings, holonomies
    Chern {
        #[arg(long)]
        complex: PathBuf,
        #[arg(long)]
        gauge: PathBuf,
    },
    /// Gauge field of a degree-2 triple cocycle (s = 2)
    Preq {
        #[arg(long)]
        complex: PathBuf,
        #[arg(long)]
        dc: PathBuf,
    },
    /// Holonomy of a gauge field around a 1-cycle
    Holonomy {
        #[arg(long)]
        complex: PathBuf,
        #[arg(long)]
        gauge: PathBuf,
        #[arg(long)]
        cycle: PathBuf,
    },
    /// Project/lift round trip between integral 2-cocycles and closed triples
    Weil {
        #[arg(long)]
        complex: PathBuf,
        #[arg(long)]
        cocycle: Option<PathBuf>,
    },
    /// Total cohomology of an action groupoid (integral, or s-truncated triples)
    Equivariant {
        #[arg(long)]
        complex: PathBuf,
        #[arg(long)]
        group: PathBuf,
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        s: Option<usize>,
    },
    /// Exactness of the flat/curvature sequence on an action groupoid
    Kostant {
        #[arg(long)]
        complex: PathBuf,
        #[arg(long)]
        group: Option<PathBuf>,
    },
    /// Row homotopy identities and the degree-1 descent equivalence
    DescentCheck {
        #[arg(long)]
        complex: PathBuf,
        #[arg(long)]
        cover: PathBuf,
    },
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("cannot read `{path}`: {msg}")]
    Io { path: String, msg: String },
    #[error("{0}")]
    Complex(#[from] ComplexError),
    #[error("{0}")]
    Nerve(#[from] NerveError),
    #[error("{0}")]
    Dc(#[from] DcError),
    #[error("{0}")]
    Classify(#[from] ClassifyError),
    #[error("{0}")]
    Cover(#[from] CoverError),
    #[error("{0}")]
    Alg(#[from] AlgError),
}

impl CliError {
    /// 1 for mathematical obstructions, 2 for input problems.
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } => 2,
            CliError::Complex(_) => 2,
            CliError::Nerve(e) => match e {
                NerveError::Depth { .. } => 1,
                _ => 2,
            },
            CliError::Dc(e) => match e {
                DcError::NotACocycle => 1,
                DcError::OmegaTruncation { .. } => 2,
                DcError::Parse { .. } | DcError::Component(_) => 2,
                _ => 1,
            },
            CliError::Classify(e) => match e {
                ClassifyError::Parse { .. } | ClassifyError::Complex(_) => 2,
                _ => 1,
            },
            CliError::Cover(e) => match e {
                CoverError::Parse { .. } | CoverError::Invalid(_) | CoverError::Complex(_) => 2,
                _ => 1,
            },
            CliError::Alg(_) => 1,
        }
    }
}

/// 64-bit FNV-1a over the raw file bytes; stable input digests for reports.
fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut hash: u64 = 0xcbf29ce484222325;
    for &b in bytes {
        hash ^= b as u64;
        hash = hash.wrapping_mul(0x100000001b3);
    }
    hash
}

struct Loaded {
    text: String,
    digest: u64,
    label: String,
    path: String,
}

fn load(path: &Path, label: &str) -> Result<Loaded, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        msg: e.to_string(),
    })?;
    Ok(Loaded {
        digest: fnv1a64(text.as_bytes()),
        text,
        label: label.to_string(),
        path: path.display().to_string(),
    })
}

struct Report {
    lines: Vec<String>,
}

impl Report {
    fn new(command_echo: String, inputs: &[&Loaded]) -> Self {
        let mut lines = vec![format!("command: {command_echo}")];
        for input in inputs {
            lines.push(format!(
                "input {} `{}`: fnv1a64 {:016x}",
                input.label, input.path, input.digest
            ));
        }
        Report { lines }
    }

    fn push(&mut self, line: String) {
        self.lines.push(line);
    }

    fn print_ok(mut self) {
        self.push("status: ok".to_string());
        for line in &self.lines {
            println!("{line}");
        }
    }
}

fn load_complex(loaded: &Loaded) -> Result<Arc<DeltaComplex>, CliError> {
    Ok(parse_complex(&loaded.text)?)
}

fn load_action(
    loaded: Option<&Loaded>,
    base: &Arc<DeltaComplex>,
) -> Result<FinGroupAction, CliError> {
    match loaded {
        Some(l) => Ok(parse_action(&l.text, base)?),
        None => Ok(FinGroupAction::trivial(
            FinGroup::trivial(),
            Arc::clone(base),
        )),
    }
}

pub fn run() -> i32 {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(command: Command) -> Result<(), CliError> {
    match command {
        Command::Cohomology {
            complex,
            ring,
            degree,
        } => {
            let cfile = load(&complex, "complex")?;
            let space = load_complex(&cfile)?;
            let ring_tag = Ring::parse(&ring).ok_or(CliError::Complex(ComplexError::Parse {
                line: 0,
                msg: format!("ring must be Z, Q, or QZ, got `{ring}`"),
            }))?;
            let mut report = Report::new(
                format!("cohomology --ring {ring} --degree {degree}"),
                &[&cfile],
            );
            let presentation = match ring_tag {
                Ring::RatModZ => cohomology_qz(&space.int_cochain_complex(), degree)?,
                other => space.mixed_cochain_complex(other).cohomology(degree)?,
            };
            report.push(format!("H^{degree} = {presentation}"));
            report.print_ok();
            Ok(())
        }
        Command::DcCohomology { complex, s, degree } => {
            let cfile = load(&complex, "complex")?;
            let space = load_complex(&cfile)?;
            let mut report = Report::new(
                format!("dc-cohomology --s {s} --degree {degree}"),
                &[&cfile],
            );
            let dc = DCComplex::new(&space, s);
            let presentation = dc.mixed().cohomology(degree)?;
            report.push(format!("H^{degree}(s={s}) = {presentation}"));
            report.print_ok();
            Ok(())
        }
        Command::Chern { complex, gauge } => {
            let cfile = load(&complex, "complex")?;
            let gfile = load(&gauge, "gauge")?;
            let space = load_complex(&cfile)?;
            let (field, _) = parse_gauge(&gfile.text, &space)?;
            let mut report = Report::new("chern".to_string(), &[&cfile, &gfile]);
            let dc = DCComplex::new(&space, 2);
            let triple = classify::dch(&dc, &field, LiftRule::Canonical)?;
            let omega = triple.omega.as_ref().expect("degree 2 carries curvature");
            let two_cycles = cycle_basis(&space, 2);
            for (i, z) in two_cycles.iter().enumerate() {
                let pairing = crate::complex::evaluate(omega, z)?;
                if two_cycles.len() == 1 {
                    report.push(format!("chern_number = {pairing}"));
                } else {
                    report.push(format!("chern_number[{i}] = {pairing}"));
                }
            }
            if two_cycles.is_empty() {
                report.push("chern_number = 0 (no 2-cycles)".to_string());
            }
            let one_cycles = cycle_basis(&space, 1);
            for (i, z) in one_cycles.iter().enumerate() {
                report.push(format!("holonomy[{i}] = {}", holonomy(&field, z)?));
            }
            report.push(format!(
                "flux_cochain_zero: {}",
                if triple.c.is_zero() { "true" } else { "false" }
            ));
            report.print_ok();
            Ok(())
        }
        Command::Preq { complex, dc } => {
            let cfile = load(&complex, "complex")?;
            let dfile = load(&dc, "dc")?;
            let space = load_complex(&cfile)?;
            let dc2 = DCComplex::new(&space, 2);
            let triple = parse_triple(&dfile.text, &dc2)?;
            let mut report = Report::new("preq".to_string(), &[&cfile, &dfile]);
            let field = classify::preq(&dc2, &triple)?;
            for (idx, v) in field.a.values.iter().enumerate() {
                if !num_traits::Zero::is_zero(v) {
                    report.push(format!("{} = {v}", space.simplex_id(1, idx)));
                }
            }
            report.push(format!(
                "nonzero_edges: {}",
                field
                    .a
                    .values
                    .iter()
                    .filter(|v| !num_traits::Zero::is_zero(*v))
                    .count()
            ));
            report.print_ok();
            Ok(())
        }
        Command::Holonomy {
            complex,
            gauge,
            cycle,
        } => {
            let cfile = load(&complex, "complex")?;
            let gfile = load(&gauge, "gauge")?;
            let zfile = load(&cycle, "cycle")?;
            let space = load_complex(&cfile)?;
            let (field, _) = parse_gauge(&gfile.text, &space)?;
            let coeffs = parse_cochain(&zfile.text, &space)?;
            let chain = Chain::from_coeffs(
                &space,
                coeffs.degree,
                coeffs.values.iter().map(|v| v.to_integer()).collect(),
            );
            let mut report = Report::new("holonomy".to_string(), &[&cfile, &gfile, &zfile]);
            report.push(format!("holonomy = {}", holonomy(&field, &chain)?));
            report.print_ok();
            Ok(())
        }
        Command::Weil { complex, cocycle } => {
            let cfile = load(&complex, "complex")?;
            let space = load_complex(&cfile)?;
            let dc1 = DCComplex::new(&space, 1);
            let h2z = space.mixed_cochain_complex(Ring::Int).cohomology(2)?;
            match cocycle {
                None => {
                    let mut report = Report::new("weil".to_string(), &[&cfile]);
                    report.push(format!("H^2(Z) = {h2z}"));
                    report.push(format!("H^2(DC_1) = {}", dc1.mixed().cohomology(2)?));
                    report.print_ok();
                }
                Some(path) => {
                    let zfile = load(&path, "cocycle")?;
                    let c = parse_cochain(&zfile.text, &space)?;
                    let mut report = Report::new("weil".to_string(), &[&cfile, &zfile]);
                    let lifted = classify::weil_lift(&dc1, &c, None)?;
                    let projected = classify::weil_project(&lifted);
                    report.push(format!("H^2(Z) = {h2z}"));
                    report.push(format!(
                        "project_lift_identity: {}",
                        if projected == c { "true" } else { "false" }
                    ));
                    report.print_ok();
                }
            }
            Ok(())
        }
        Command::Equivariant {
            complex,
            group,
            degree,
            s,
        } => {
            let cfile = load(&complex, "complex")?;
            let gfile = load(&group, "group")?;
            let space = load_complex(&cfile)?;
            let action = load_action(Some(&gfile), &space)?;
            let nerve = build_nerve(action, degree + 1)?;
            let mut report = Report::new(
                format!(
                    "equivariant --degree {degree}{}",
                    s.map(|k| format!(" --s {k}")).unwrap_or_default()
                ),
                &[&cfile, &gfile],
            );
            match s {
                None => {
                    let total = TotalComplex::new(&nerve, Ring::Int, degree + 1)?;
                    let presentation = total.cohomology(degree, Ring::Int)?;
                    report.push(format!("H^{degree}_tot(Z) = {presentation}"));
                }
                Some(k) => {
                    let total = DcTotalComplex::new(&nerve, k, degree + 1)?;
                    let presentation = total.mixed.cohomology(degree)?;
                    report.push(format!("H^{degree}_tot(DC_{k}) = {presentation}"));
                }
            }
            report.print_ok();
            Ok(())
        }
        Command::Kostant { complex, group } => {
            let cfile = load(&complex, "complex")?;
            let gfile = group.map(|g| load(&g, "group")).transpose()?;
            let space = load_complex(&cfile)?;
            let action = load_action(gfile.as_ref(), &space)?;
            let nerve = build_nerve(action, 3)?;
            let inputs: Vec<&Loaded> = match &gfile {
                Some(g) => vec![&cfile, g],
                None => vec![&cfile],
            };
            let mut report = Report::new("kostant".to_string(), &inputs);
            let outcome = kostant_sequence_check(&nerve, 4)?;
            report.push(format!("kernel = {}", outcome.kernel_presentation));
            report.push(format!(
                "curvature_group = {}",
                outcome.curvature_presentation
            ));
            report.push(format!("H2 = {}", outcome.h2_presentation));
            report.push(format!("eta_preimages = {}", outcome.eta_preimages));
            report.push(format!(
                "kernel_pairs_checked = {}",
                outcome.sampled_kernel_pairs
            ));
            report.push("exact: true".to_string());
            report.print_ok();
            Ok(())
        }
        Command::DescentCheck { complex, cover } => {
            let cfile = load(&complex, "complex")?;
            let vfile = load(&cover, "cover")?;
            let space = load_complex(&cfile)?;
            let (cov, pou) = parse_cover(&vfile.text, &space)?;
            let mut report = Report::new("descent-check".to_string(), &[&cfile, &vfile]);
            let cech = CechComplex::new(cov, 3)?;
            let rho = verify_rho_identities(&cech, pou.as_ref())?;
            report.push(format!("rho_section_checks = {}", rho.section_checks));
            report.push(format!("rho_partition_checks = {}", rho.partition_checks));
            let descent = descent_equivalence_h1(&cech, Ring::Int, 4)?;
            report.push(format!("H^1(base) = {}", descent.h1_base));
            report.push(format!("H^1(total) = {}", descent.h1_total));
            report.push(format!("hom_set_pairs = {}", descent.fully_faithful_pairs));
            report.push(format!(
                "glued_cocycles = {}",
                descent.essential_surjectivity_samples
            ));
            report.push("descent: certified".to_string());
            report.print_ok();
            Ok(())
        }
    }
}

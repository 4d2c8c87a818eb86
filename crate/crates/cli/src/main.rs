use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use decomp_core::axioms::{
    check_decomposition, check_flanked, check_map_class, check_mobius, check_segal,
    complete_report, DecompMethod, MapClass, Report, Verdict,
};
use decomp_core::incidence::{classify, comult, format_q, Incidence, RegistryCoalgebra};
use decomp_core::ingest::poset_nerve;
use decomp_core::interval::{factorisation_interval, AlgebraicInterval, Registry};
use decomp_core::io;
use decomp_core::presheaf::{dec_bot, dec_top, FinSSet};

/// Finite decomposition sets: axiom checks, factorisation intervals and
/// incidence algebras.
#[derive(Parser)]
#[command(name = "decomp", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Nerve of a POSET, MONOID or CAT file.
    Nerve {
        input: PathBuf,
        #[arg(long)]
        cap: Option<usize>,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Run an axiom check on each file.
    Check {
        check: CheckKind,
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Lower or upper decalage.
    Dec {
        side: Side,
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Factorisation interval of an arrow.
    Interval {
        input: PathBuf,
        #[arg(long)]
        arrow: String,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Möbius function as `arrow<TAB>num/den`.
    Mobius {
        input: PathBuf,
        #[arg(long)]
        arrow: Option<String>,
    },
    /// Comultiplication as `arrow<TAB>left<TAB>right<TAB>multiplicity`.
    CoalgTable { input: PathBuf },
    /// Classify every arrow into a closed registry.
    Classify {
        input: PathBuf,
        #[arg(long)]
        registry: PathBuf,
    },
    /// Manage a registry directory.
    Registry {
        action: RegistryAction,
        dir: PathBuf,
        files: Vec<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckKind {
    Segal,
    Decomp,
    Complete,
    Flanked,
    Mobius,
    Culf,
}

#[derive(Clone, Copy, ValueEnum)]
enum Side {
    Top,
    Bot,
}

#[derive(Clone, Copy, ValueEnum)]
enum RegistryAction {
    Add,
    Close,
    List,
    Mu,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(v) => exit_code(v),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn exit_code(v: Verdict) -> ExitCode {
    ExitCode::from(match v {
        Verdict::Pass => 0,
        Verdict::Fail => 1,
        Verdict::Inconclusive => 2,
    })
}

/// Reads an SSET file, or builds the nerve of a POSET, MONOID or CAT file.
fn load_sset(path: &Path, cap: Option<usize>) -> Result<FinSSet> {
    let text = io::read_file(path)?;
    let name = path.display().to_string();
    let x = match io::sniff(&text) {
        Some("SSET") => io::parse_sset(&text, &name)?,
        Some("POSET") => {
            let p = io::parse_poset(&text, &name)?.validate()?;
            poset_nerve(&p, cap.unwrap_or(p.height() + 3))?
        }
        Some("MONOID") => {
            let c = io::parse_monoid(&text, &name)?.validate()?;
            c.nerve(cap.or(c.default_cap()).context("no default cap")?)?
        }
        Some("CAT") => {
            let c = io::parse_category(&text, &name)?.validate()?;
            c.nerve(
                cap.or(c.default_cap())
                    .context("unbounded factorisations: pass --cap")?,
            )?
        }
        other => bail!("{name}: unsupported file type {other:?}"),
    };
    let report = x.validate();
    if !report.is_valid() {
        bail!(
            "{name}: simplicial identities fail: {:?}",
            report.violations.first()
        );
    }
    Ok(x)
}

fn print_report(r: &Report) -> Verdict {
    print!("{r}");
    r.verdict()
}

fn run(command: Command) -> Result<Verdict> {
    match command {
        Command::Nerve { input, cap, output } => {
            let x = load_sset(&input, cap)?;
            io::write_file(&output, &io::write_sset(&x))?;
            Ok(Verdict::Pass)
        }
        Command::Check { check, files } => {
            let mut worst = Verdict::Pass;
            for f in &files {
                worst = worst.max(run_check(check, f)?);
            }
            Ok(worst)
        }
        Command::Dec {
            side,
            input,
            output,
        } => {
            let x = load_sset(&input, None)?;
            let (d, _) = match side {
                Side::Top => dec_top(&x)?,
                Side::Bot => dec_bot(&x)?,
            };
            io::write_file(&output, &io::write_sset(&d))?;
            Ok(Verdict::Pass)
        }
        Command::Interval {
            input,
            arrow,
            output,
        } => {
            let x = load_sset(&input, None)?;
            let a = x.lookup(1, &arrow)?;
            let (i, _) = factorisation_interval(&x, a)?;
            io::write_file(&output, &io::write_xiset(&i.data))?;
            Ok(Verdict::Pass)
        }
        Command::Mobius { input, arrow } => {
            let x = load_sset(&input, None)?;
            let mu = Incidence::new(&x)?.mobius();
            let arrows: Vec<usize> = match arrow {
                Some(a) => vec![x.lookup(1, &a)?],
                None => (0..x.len(1)).collect(),
            };
            for a in arrows {
                println!("{}\t{}", x.name(1, a), format_q(mu.get(a)));
            }
            Ok(Verdict::Pass)
        }
        Command::CoalgTable { input } => {
            let x = load_sset(&input, None)?;
            let t = comult(&x)?;
            for (a, pairs) in t.comult.iter().enumerate() {
                for (&(l, r), m) in pairs {
                    println!("{}\t{}\t{}\t{m}", t.basis[a], t.basis[l], t.basis[r]);
                }
            }
            Ok(Verdict::Pass)
        }
        Command::Classify { input, registry } => {
            let x = load_sset(&input, None)?;
            let r = Registry::load(&registry)?;
            let rc = RegistryCoalgebra::new(&r)?;
            let c = classify(&x, &rc)?;
            for (a, &cls) in c.classes.iter().enumerate() {
                println!(
                    "{}\t{}\t{}",
                    x.name(1, a),
                    rc.table.basis[cls],
                    rc.names[cls]
                );
            }
            Ok(print_report(&c.report))
        }
        Command::Registry { action, dir, files } => run_registry(action, &dir, &files),
    }
}

fn run_check(check: CheckKind, path: &Path) -> Result<Verdict> {
    let report = match check {
        CheckKind::Segal => check_segal(&load_sset(path, None)?),
        CheckKind::Decomp => check_decomposition(&load_sset(path, None)?, DecompMethod::Decalage)?,
        CheckKind::Complete => complete_report(&load_sset(path, None)?),
        CheckKind::Mobius => check_mobius(&load_sset(path, None)?).report,
        CheckKind::Flanked => {
            let text = io::read_file(path)?;
            check_flanked(&io::parse_xiset(&text, &path.display().to_string())?)?
        }
        CheckKind::Culf => {
            let text = io::read_file(path)?;
            let m = io::parse_smap(&text, &path.display().to_string())?;
            let base = path.parent().unwrap_or(Path::new("."));
            let dom = Arc::new(load_sset(&base.join(&m.dom), None)?);
            let cod = Arc::new(load_sset(&base.join(&m.cod), None)?);
            let f = io::sset_map_from_text(&m, dom, cod)?;
            check_map_class(&f, MapClass::Culf)?
        }
    };
    Ok(print_report(&report))
}

fn run_registry(action: RegistryAction, dir: &Path, files: &[PathBuf]) -> Result<Verdict> {
    let mut r = Registry::load(dir)?;
    match action {
        RegistryAction::Add => {
            for f in files {
                let text = io::read_file(f)?;
                if io::sniff(&text) == Some("XISET") {
                    let a =
                        AlgebraicInterval::new(io::parse_xiset(&text, &f.display().to_string())?)?;
                    println!("{}", r.insert(&a)?);
                    continue;
                }
                let x = load_sset(f, None)?;
                for a in 0..x.len(1) {
                    let (i, _) = factorisation_interval(&x, a)?;
                    r.insert(&i)?;
                }
            }
            r.save(dir)?;
        }
        RegistryAction::Close => {
            let added = r.close()?;
            r.save(dir)?;
            eprintln!("added {added} entries");
        }
        RegistryAction::List => {
            for (d, e) in r.entries() {
                println!(
                    "{d}\t{}\t{}\t{}",
                    e.class.name,
                    u8::from(e.mobius),
                    e.class.canonical.cap()
                );
            }
        }
        RegistryAction::Mu => {
            let rc = RegistryCoalgebra::new(&r)?;
            let mu = rc.mobius();
            for (c, d) in rc.table.basis.iter().enumerate() {
                println!("{d}\t{}\t{}", rc.names[c], format_q(mu.get(c)));
            }
            return Ok(print_report(&rc.verify_inversion()?));
        }
    }
    Ok(Verdict::Pass)
}

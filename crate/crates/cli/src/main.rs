use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{ArgGroup, Parser, Subcommand, ValueEnum};

use leibhom::commands::{
    first_failure, run_command, to_pretty_json, Command, ExtRoute, Functor, Verify,
};
use leibhom::derived::TorFlavor;
use leibhom::session::{corpus, corpus_session, parse_session, Session};

/// Exact homological algebra of Leibniz algebra modules.
#[derive(Parser, Debug)]
#[command(name = "leibhom", version)]
struct Cli {
    /// Session JSON file, or the name of a bundled example.
    #[arg(long, global = true)]
    session: Option<String>,
    /// Write the machine-readable report to this path.
    #[arg(long, global = true)]
    json: Option<PathBuf>,
    /// Truncation degree; overrides the session option.
    #[arg(long, global = true)]
    max_degree: Option<usize>,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Validate the session and list its modules.
    Check,
    /// The Lie quotient and the kernel of the projection.
    LieQuotient,
    /// Apply a functor to a g-module.
    Functor { name: FunctorName, module: String },
    /// Leibniz homology or cohomology with coefficients in a g-module.
    #[command(group(ArgGroup::new("side").required(true).args(["homology", "cohomology"])))]
    Hl {
        #[arg(long)]
        homology: bool,
        #[arg(long)]
        cohomology: bool,
        module: String,
    },
    /// Ext over g between a g-module and a lifted g_Lie-module.
    #[command(group(ArgGroup::new("route").required(true).args(["into_sym", "into_asym", "from_asym", "from_sym"])))]
    Ext {
        /// Ext(X, N^s)
        #[arg(long)]
        into_sym: bool,
        /// Ext(X, N^a)
        #[arg(long)]
        into_asym: bool,
        /// Ext(N^a, X)
        #[arg(long)]
        from_asym: bool,
        /// Ext(N^s, X)
        #[arg(long)]
        from_sym: bool,
        /// The g_Lie-module N.
        #[arg(long)]
        lie: String,
        /// The g-module X.
        #[arg(long)]
        module: String,
    },
    /// Tor over g of lifted g_Lie-modules.
    Tor {
        #[arg(long)]
        m: String,
        #[arg(long)]
        n: String,
        #[arg(long, value_enum, default_value = "d1d1")]
        flavor: Flavor,
    },
    /// Run one verifier.
    #[command(subcommand)]
    Verify(VerifyCmd),
    /// Run every verifier over the bundled examples.
    Sweep,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum FunctorName {
    Sym,
    Asym,
    Sinv,
    Asinv,
    Restrict,
    Dual,
    Flat,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Flavor {
    D1d1,
    D0d1,
    Flipped,
}

#[derive(Subcommand, Debug)]
enum VerifyCmd {
    ThmExtSym {
        #[arg(long)]
        n1: String,
        #[arg(long)]
        n2: String,
    },
    ThmExtAsym {
        #[arg(long)]
        n1: String,
        #[arg(long)]
        n2: String,
    },
    ThmTor {
        #[arg(long)]
        m: String,
        #[arg(long)]
        n: String,
    },
    LextAcyclic {
        #[arg(long)]
        n: String,
    },
    RextAcyclic {
        #[arg(long)]
        n: String,
    },
    Splittings {
        #[arg(long)]
        n: String,
    },
    Duality {
        #[arg(long)]
        module: String,
    },
    Corollary {
        #[arg(long)]
        n: String,
    },
    DegreeZero {
        #[arg(long)]
        module: String,
    },
    ClassRelations {
        #[arg(long)]
        n: String,
    },
    Adjunctions {
        #[arg(long)]
        module: String,
        #[arg(long)]
        n: String,
    },
}

fn to_command(cmd: Cmd) -> Command {
    match cmd {
        Cmd::Check => Command::Check,
        Cmd::LieQuotient => Command::LieQuotient,
        Cmd::Functor { name, module } => {
            let functor = match name {
                FunctorName::Sym => Functor::Sym,
                FunctorName::Asym => Functor::Asym,
                FunctorName::Sinv => Functor::Sinv,
                FunctorName::Asinv => Functor::Asinv,
                FunctorName::Restrict => Functor::Restrict,
                FunctorName::Dual => Functor::Dual,
                FunctorName::Flat => Functor::Flat,
            };
            Command::Functor { functor, module }
        }
        Cmd::Hl {
            cohomology, module, ..
        } => Command::Hl { cohomology, module },
        Cmd::Ext {
            into_sym,
            into_asym,
            from_asym,
            lie,
            module,
            ..
        } => {
            let route = if into_sym {
                ExtRoute::IntoSym
            } else if into_asym {
                ExtRoute::IntoAsym
            } else if from_asym {
                ExtRoute::FromAsym
            } else {
                ExtRoute::FromSym
            };
            Command::Ext { route, lie, module }
        }
        Cmd::Tor { m, n, flavor } => {
            let flavor = match flavor {
                Flavor::D1d1 => TorFlavor::D1D1,
                Flavor::D0d1 => TorFlavor::D0D1,
                Flavor::Flipped => TorFlavor::Flipped,
            };
            Command::Tor { m, n, flavor }
        }
        Cmd::Verify(v) => Command::Verify(match v {
            VerifyCmd::ThmExtSym { n1, n2 } => Verify::ThmExtSym { n1, n2 },
            VerifyCmd::ThmExtAsym { n1, n2 } => Verify::ThmExtAsym { n1, n2 },
            VerifyCmd::ThmTor { m, n } => Verify::ThmTor { m, n },
            VerifyCmd::LextAcyclic { n } => Verify::LextAcyclic { n },
            VerifyCmd::RextAcyclic { n } => Verify::RextAcyclic { n },
            VerifyCmd::Splittings { n } => Verify::Splittings { n },
            VerifyCmd::Duality { module } => Verify::Duality { module },
            VerifyCmd::Corollary { n } => Verify::Corollary { n },
            VerifyCmd::DegreeZero { module } => Verify::DegreeZero { module },
            VerifyCmd::ClassRelations { n } => Verify::ClassRelations { n },
            VerifyCmd::Adjunctions { module, n } => Verify::Adjunctions { module, n },
        }),
        Cmd::Sweep => Command::Sweep,
    }
}

fn load(spec: Option<&str>) -> Result<Session> {
    let Some(spec) = spec else {
        return Ok(corpus_session("e_algebra").expect("bundled"));
    };
    if !Path::new(spec).exists() {
        if let Some(s) = corpus_session(spec) {
            return Ok(s);
        }
        let names: Vec<&str> = corpus().into_iter().map(|(n, _)| n).collect();
        bail!(
            "{spec} is neither a file nor a bundled example ({})",
            names.join(", ")
        );
    }
    Ok(parse_session(Path::new(spec))?)
}

fn run() -> Result<bool> {
    let cli = Cli::parse();
    let session = load(cli.session.as_deref())?;
    let out = run_command(&session, &to_command(cli.command), cli.max_degree)?;
    print!("{}", out.text);
    if let Some(path) = &cli.json {
        let text = to_pretty_json(&out.json);
        std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
    }
    if !out.passed {
        eprintln!("verification failed: {}", first_failure(&out.json));
    }
    Ok(out.passed)
}

fn main() -> ExitCode {
    match run() {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

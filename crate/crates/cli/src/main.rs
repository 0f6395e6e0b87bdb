use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Parser, Subcommand, ValueEnum};

use fsg_core::element::{free_word_image, reduced_free_words};
use fsg_core::point::germ_classify;
use fsg_core::render::render;
use fsg_core::selftest::{self, DEFAULT_SEED};
use fsg_core::syntax::{parse_element, parse_tree};
use fsg_core::{Error, GroupElement, RationalPoint, SkeinContext, TypeTag};

#[derive(Parser, Debug)]
#[command(name = "fsg", version, about = "Coloured forest groups acting on the Cantor set and the circle")]
struct Cli {
    /// Skein parameter, at least 3.
    #[arg(long, global = true)]
    n: Option<usize>,
    /// Force the type tag of parsed elements.
    #[arg(long = "type", global = true, value_parser = parse_tag)]
    tag: Option<TypeTag>,
    /// Read the first element argument from a file.
    #[arg(long, global = true)]
    file: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Image of a point, e.g. `1(0)`.
    Eval { element: Vec<String> },
    Equal { elements: Vec<String> },
    Identity { element: Vec<String> },
    Mul { elements: Vec<String> },
    Inv { element: Vec<String> },
    /// The image in Z_n.
    Abelianize { element: Vec<String> },
    /// Both germ quotients.
    Cbar { element: Vec<String> },
    /// Germ at 0, or the germ class at `--at`.
    Germ {
        element: Vec<String>,
        #[arg(long)]
        at: Option<String>,
    },
    Seminormal { element: Vec<String> },
    /// Grow a tree until every vertex is `a`, printing the trace.
    GrowA { tree: String },
    /// Piecewise-affine graph on the circle.
    Graph {
        element: Vec<String>,
        #[arg(long, default_value_t = 12)]
        depth: usize,
        /// Output path without extension; stdout if absent.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Check reduced words in the free generators for identity hits.
    FreeWords {
        #[arg(long, default_value_t = 3)]
        len: usize,
    },
    Selftest {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Svg,
    Both,
}

fn parse_tag(s: &str) -> Result<TypeTag, String> {
    s.parse::<TypeTag>().map_err(|e| e.to_string())
}

struct Session {
    ctx: SkeinContext,
    tag: Option<TypeTag>,
    file: Option<String>,
}

impl Session {
    /// Element arguments, with the file contents in front when given.
    fn elements(&self, args: &[String], want: usize) -> anyhow::Result<Vec<GroupElement>> {
        let texts: Vec<&str> = self.file.as_deref().into_iter().chain(args.iter().map(String::as_str)).collect();
        if texts.len() < want {
            bail!(Error::Arity { expected: want, found: texts.len() });
        }
        texts[..want]
            .iter()
            .map(|s| {
                let x = parse_element(self.ctx, s)?;
                Ok(match self.tag {
                    Some(t) => x.with_tag(t)?,
                    None => x,
                })
            })
            .collect()
    }

    /// Trailing non-element arguments.
    fn rest<'a>(&self, args: &'a [String], elements: usize) -> &'a [String] {
        let used = elements - usize::from(self.file.is_some());
        args.get(used..).unwrap_or(&[])
    }

    fn one(&self, args: &[String]) -> anyhow::Result<GroupElement> {
        Ok(self.elements(args, 1)?.remove(0))
    }
}

fn run(cli: Cli) -> anyhow::Result<()> {
    if let Cmd::Selftest { seed } = cli.cmd {
        let reports = selftest::run_all(seed);
        for r in &reports {
            println!("{r}");
        }
        if reports.iter().any(|r| !r.passed) {
            bail!("selftest failed");
        }
        return Ok(());
    }
    let n = cli.n.ok_or_else(|| anyhow!("--n is required"))?;
    if n < 3 {
        bail!(Error::InvalidIndex(n));
    }
    let file = match &cli.file {
        Some(p) => Some(fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?),
        None => None,
    };
    let s = Session { ctx: SkeinContext::new(n)?, tag: cli.tag, file };
    match cli.cmd {
        Cmd::Eval { element } => {
            let g = s.one(&element)?;
            let point = s.rest(&element, 1).first().ok_or(Error::Arity { expected: 2, found: 1 })?;
            println!("{}", g.act(&RationalPoint::parse(point)?)?);
        }
        Cmd::Equal { elements } => {
            let xs = s.elements(&elements, 2)?;
            println!("{}", xs[0].equals(&xs[1])?);
        }
        Cmd::Identity { element } => println!("{}", s.one(&element)?.is_identity()?),
        Cmd::Mul { elements } => {
            let xs = s.elements(&elements, 2)?;
            println!("{}", xs[0].multiply(&xs[1])?.reduce());
        }
        Cmd::Inv { element } => println!("{}", s.one(&element)?.inverse()),
        Cmd::Abelianize { element } => println!("{} (mod {n})", s.one(&element)?.abelianise()?),
        Cmd::Cbar { element } => {
            let g = s.one(&element)?;
            println!("c+ = {}", g.c_bar_plus()?);
            println!("c- = {}", g.c_bar_minus()?);
        }
        Cmd::Germ { element, at } => {
            let g = s.one(&element)?;
            match at {
                None => {
                    let (plus, minus) = g.germ_at_zero()?;
                    println!("({plus}, {minus})");
                }
                Some(p) => {
                    let x = RationalPoint::parse(&p)?;
                    let fixed = g.act(&x)? == x;
                    println!("{} ({})", germ_classify(&x), if fixed { "fixed" } else { "moved" });
                }
            }
        }
        Cmd::Seminormal { element } => {
            let sn = s.one(&element)?.seminormal_form()?;
            println!("{}", sn.element);
            println!("# numerator");
            print!("{}", sn.numerator_trace);
            println!("# denominator");
            print!("{}", sn.denominator_trace);
        }
        Cmd::GrowA { tree } => {
            let text = s.file.as_deref().unwrap_or(&tree);
            let rw = s.ctx.grow_to_a_tree(&parse_tree(text)?)?;
            println!("{}", rw.tree);
            println!("# growth {}", rw.growth);
            print!("{}", rw.trace);
        }
        Cmd::Graph { element, depth, out, format } => {
            let graph = render(&s.one(&element)?, depth)?;
            let outputs: Vec<(&str, String)> = match format {
                Format::Csv => vec![("csv", graph.to_csv())],
                Format::Svg => vec![("svg", graph.to_svg())],
                Format::Both => vec![("csv", graph.to_csv()), ("svg", graph.to_svg())],
            };
            for (ext, text) in outputs {
                match &out {
                    Some(base) => {
                        let path = base.with_extension(ext);
                        fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?;
                    }
                    None => print!("{text}"),
                }
            }
        }
        Cmd::FreeWords { len } => {
            let words = reduced_free_words(n, len);
            let mut hits = 0;
            for w in &words {
                if free_word_image(s.ctx, w)?.is_identity()? {
                    hits += 1;
                    println!("identity: {w:?}");
                }
            }
            println!("{} words, {hits} identity hits", words.len());
        }
        Cmd::Selftest { .. } => unreachable!("handled above"),
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            match e.downcast_ref::<Error>() {
                Some(Error::Parse { .. }) => ExitCode::from(2),
                Some(_) => ExitCode::from(3),
                None => ExitCode::FAILURE,
            }
        }
    }
}

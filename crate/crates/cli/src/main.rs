use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use morsekit::conf2::ConfKm;
use morsekit::{
    build_field_a, build_field_fast, munkres_conf2, tc_report, BettiProfile, ConfMorse, CupTable, GradientField,
    MorseContext, OrderedComplex,
};
use serde_json::json;

#[derive(Parser)]
#[command(name = "morsekit", version, about = "Algorithmic discrete Morse theory on ordered simplicial complexes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a complex and summarise it.
    Build(Source),
    /// Build the gradient field and list its critical faces.
    Pair {
        #[command(flatten)]
        source: Source,
        /// Also list every pairing.
        #[arg(long)]
        pairs: bool,
        /// Print the modified Hasse diagram in dot format instead.
        #[arg(long)]
        dot: bool,
    },
    /// Homology of the Morse complex.
    Betti {
        #[command(flatten)]
        source: Source,
        /// Print the Morse boundary as `dim row col value` triplets instead.
        #[arg(long)]
        triplets: bool,
    },
    /// Degree-one cup product table of the configuration model over K_m.
    Cup {
        #[arg(long)]
        m: u32,
        #[arg(long, default_value = "Z")]
        coeff: Coeff,
        #[arg(long)]
        json: bool,
    },
    /// Two-point configuration model of a graph or of K_m.
    Conf {
        #[command(flatten)]
        source: Source,
        /// Report homology instead of exporting the model.
        #[arg(long)]
        betti: bool,
    },
    /// Zero-divisor bounds on the higher topological complexity.
    Tc {
        #[arg(long)]
        m: u32,
        #[arg(long, default_value_t = 2)]
        s: usize,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
struct Source {
    /// Complex in the text format: one maximal face per line.
    #[arg(long, conflicts_with = "m", required_unless_present = "m")]
    input: Option<PathBuf>,
    /// Use the configuration model over the complete graph K_m.
    #[arg(long)]
    m: Option<u32>,
    #[arg(long, value_enum, default_value = "A")]
    algo: Algo,
    #[arg(long, default_value = "Z")]
    coeff: Coeff,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Algo {
    #[value(name = "A")]
    A,
    #[value(name = "fast")]
    Fast,
    #[value(name = "both")]
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Coeff {
    Z,
    Mod(i64),
}

impl std::str::FromStr for Coeff {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "Z" {
            return Ok(Coeff::Z);
        }
        let p = s.strip_prefix("mod-").and_then(|p| p.parse::<i64>().ok());
        match p {
            Some(p) if is_prime(p) => Ok(Coeff::Mod(p)),
            _ => Err(format!("expected Z or mod-p with p prime, got {s}")),
        }
    }
}

fn is_prime(p: i64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

struct Failure {
    code: u8,
    msg: String,
}

impl From<morsekit::Error> for Failure {
    fn from(e: morsekit::Error) -> Self {
        let code = match e {
            morsekit::Error::MalformedInput(_) => 2,
            morsekit::Error::Overflow(_) => 4,
            _ => 3,
        };
        Failure { code, msg: e.to_string() }
    }
}

fn contract(msg: impl Into<String>) -> Failure {
    Failure { code: 3, msg: msg.into() }
}

type Out = Result<String, Failure>;

fn load(src: &Source, conf: bool) -> Result<OrderedComplex, Failure> {
    let k = match (&src.input, src.m) {
        (Some(path), _) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure { code: 2, msg: format!("{}: {e}", path.display()) })?;
            let k = OrderedComplex::parse_text(&text)?;
            if conf {
                if k.dim().unwrap_or(0) > 1 {
                    return Err(contract("the configuration model needs a graph (dimension at most 1)"));
                }
                munkres_conf2(&k)
            } else {
                k
            }
        }
        (None, Some(m)) => {
            if m < 2 {
                return Err(contract("the model needs m >= 2"));
            }
            ConfKm::new(m).complex
        }
        (None, None) => unreachable!("clap requires a source"),
    };
    if k.is_empty() {
        return Err(Failure { code: 2, msg: "empty complex".into() });
    }
    Ok(k)
}

/// The requested field; `both` checks that the two algorithms agree.
fn field(k: &OrderedComplex, algo: Algo) -> Result<(GradientField, Option<bool>), Failure> {
    Ok(match algo {
        Algo::A => (build_field_a(k), None),
        Algo::Fast => (build_field_fast(k), None),
        Algo::Both => {
            let a = build_field_a(k);
            let same = a.pairing_set() == build_field_fast(k).pairing_set();
            (a, Some(same))
        }
    })
}

fn critical_groups(k: &OrderedComplex, f: &GradientField) -> Vec<Vec<String>> {
    f.classify(k).critical.iter().map(|c| c.iter().map(|s| k.show(s)).collect()).collect()
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn render_torsion(h: &BettiProfile) -> String {
    let parts: Vec<String> = h
        .torsion
        .iter()
        .enumerate()
        .flat_map(|(p, ts)| ts.iter().map(move |t| format!("H{p} Z/{t}")))
        .collect();
    if parts.is_empty() {
        "none".into()
    } else {
        parts.join(", ")
    }
}

fn homology_report(k: &OrderedComplex, src: &Source) -> Out {
    let (f, same) = field(k, src.algo)?;
    if same == Some(false) {
        return Err(contract("the two algorithms produced different fields"));
    }
    let mc = MorseContext::new(k, &f)?.morse_complex()?;
    let crit: Vec<usize> = mc.critical.iter().map(Vec::len).collect();
    match src.coeff {
        Coeff::Z => {
            let h = mc.homology()?;
            if src.json {
                return Ok(json!({ "critical": crit, "betti": h.betti, "torsion": h.torsion }).to_string());
            }
            Ok(format!("betti: {}; torsion: {}", join(&h.betti), render_torsion(&h)))
        }
        Coeff::Mod(p) => {
            let b = mc.betti_mod_p(p)?;
            if src.json {
                return Ok(json!({ "critical": crit, "modulus": p, "betti": b }).to_string());
            }
            Ok(format!("betti mod {p}: {}", join(&b)))
        }
    }
}

fn build(src: &Source) -> Out {
    let k = load(src, false)?;
    if src.json {
        return Ok(serde_json::to_string(&k.to_json()).expect("serializable"));
    }
    Ok(format!(
        "vertices: {}; f-vector: {}; euler characteristic: {}",
        k.vertices().len(),
        join(&k.f_vector()),
        k.euler_characteristic()
    ))
}

fn pair(src: &Source, pairs: bool, dot: bool) -> Out {
    let k = load(src, false)?;
    let (f, same) = field(&k, src.algo)?;
    if dot {
        return Ok(f.to_dot(&k).trim_end().to_string());
    }
    let crit = critical_groups(&k, &f);
    if src.json {
        let list: Vec<_> =
            f.pairings().iter().map(|p| json!([k.show(&p.redundant), k.show(&p.collapsible)])).collect();
        let mut v = json!({ "critical": crit, "pairings": list });
        if let Some(s) = same {
            v["fields_identical"] = json!(s);
        }
        return Ok(v.to_string());
    }
    let mut out = String::new();
    if let Some(s) = same {
        let _ = write!(out, "fields identical: {s}; ");
    }
    let _ = write!(out, "critical: {}", crit.iter().flatten().cloned().collect::<Vec<_>>().join(" "));
    if pairs {
        out.push('\n');
        out.push_str(f.to_pairing_text(&k).trim_end());
    }
    if same == Some(false) {
        return Err(Failure { code: 3, msg: out });
    }
    Ok(out)
}

fn betti(src: &Source, triplets: bool) -> Out {
    let k = load(src, false)?;
    if triplets {
        let (f, _) = field(&k, src.algo)?;
        let mc = MorseContext::new(&k, &f)?.morse_complex()?;
        return Ok(mc.to_triplets().trim_end().to_string());
    }
    homology_report(&k, src)
}

fn cup(m: u32, coeff: Coeff, json_out: bool) -> Out {
    let mut table: CupTable = ConfMorse::new(m)?.cup_table()?;
    if let Coeff::Mod(p) = coeff {
        for v in table.products.iter_mut().flatten().flatten() {
            *v = v.rem_euclid(p);
        }
    }
    if json_out {
        return Ok(table.to_json().to_string());
    }
    Ok(table.render_text().trim_end().to_string())
}

fn conf(src: &Source, betti: bool) -> Out {
    let k = load(src, true)?;
    if betti {
        return homology_report(&k, src);
    }
    if src.json {
        return Ok(serde_json::to_string(&k.to_json()).expect("serializable"));
    }
    Ok(k.to_text().trim_end().to_string())
}

fn tc(m: u32, s: usize, json_out: bool) -> Out {
    let r = tc_report(m, s)?;
    if json_out {
        return Ok(json!({
            "m": r.m,
            "s": r.s,
            "lower": r.lower,
            "upper": r.upper,
            "modulus": r.modulus,
            "classes": r.classes,
            "value": r.value(),
        })
        .to_string());
    }
    Ok(match r.value() {
        Some(v) => format!("zcl lower bound: {}; TC_{s} = {v}", r.lower),
        None => format!("zcl lower bound: {}; {} <= TC_{s} <= {}", r.lower, r.lower, r.upper),
    })
}

fn run(cli: Cli) -> Out {
    match cli.command {
        Command::Build(src) => build(&src),
        Command::Pair { source, pairs, dot } => pair(&source, pairs, dot),
        Command::Betti { source, triplets } => betti(&source, triplets),
        Command::Cup { m, coeff, json } => cup(m, coeff, json),
        Command::Conf { source, betti } => conf(&source, betti),
        Command::Tc { m, s, json } => tc(m, s, json),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) => {
            // A closed pipe downstream is not an error of ours.
            let _ = writeln!(std::io::stdout().lock(), "{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}

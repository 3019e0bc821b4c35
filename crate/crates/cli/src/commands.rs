use std::fs;
use std::path::{Path, PathBuf};

use serde_json::json;
use thiserror::Error;

use dregular::algebra::{parse_generators, CayleyDigraph, PGL3_F4_GENERATORS, PSL2_F31_GENERATORS};
use dregular::bounds::*;
use dregular::constructions::*;
use dregular::corpus::{digraph_corpus, graph_corpus};
use dregular::experiments::{alon_experiment, gelfand_estimate};
use dregular::io::{parse_edge_list, write_edge_list, write_line_labels};
use dregular::spectral::*;
use dregular::walks::{centered_indicator, chernoff_experiment, cutoff_profile, tv_bound_curve};
use dregular::zeta::{zeta_digraph, zeta_ihara, ZetaReport};
use dregular::{Digraph, UGraph};

use crate::{Cli, Command, Family, Global};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Lib(#[from] dregular::Error),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

pub enum Outcome {
    Pass,
    VerdictFailed,
}

type Result<T> = std::result::Result<T, CliError>;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn need<T>(v: Option<T>, flag: &str, what: &str) -> Result<T> {
    v.ok_or_else(|| usage(format!("{what} needs --{flag}")))
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn load(path: &Path) -> Result<Digraph> {
    Ok(parse_edge_list(&read(path)?)?)
}

/// The main artifact goes to `-o` when given, else to standard output.
fn emit(g: &Global, text: &str) -> Result<()> {
    match &g.output {
        Some(p) => write_file(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn emit_json(g: &Global, v: &serde_json::Value) -> Result<()> {
    emit(g, &format!("{}\n", serde_json::to_string_pretty(v).expect("json values serialize")))
}

fn spectral_opts(g: &Global) -> SpectralOptions {
    g.tolerance.map(SpectralOptions::with_tolerance).unwrap_or_default()
}

fn sparse_opts(g: &Global) -> SparseOptions {
    let mut s = SparseOptions {
        top: g.top,
        seed: g.seed,
        ..Default::default()
    };
    if let Some(t) = g.tolerance {
        s.tolerance = t;
    }
    s
}

fn spectrum_report(g: &Global, d: &Digraph) -> Result<SpectrumReport> {
    Ok(if g.sparse {
        classify_spectrum_sparse(d, &spectral_opts(g), &sparse_opts(g))?
    } else {
        classify_spectrum_with(d, &spectral_opts(g))?
    })
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    let g = &cli.global;
    if let Some(j) = g.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build_global()
            .map_err(|e| usage(e.to_string()))?;
    }
    match &cli.command {
        Command::Construct {
            family,
            p,
            d,
            k,
            m,
            s,
            n,
            graph,
            labels,
        } => {
            let dg = match family {
                Family::Complete => complete_digraph(need(*k, "k", "complete")?, m.unwrap_or(1))?,
                Family::Paley => paley_digraph(need(*p, "p", "paley")?)?,
                Family::Incidence => projective_incidence(need(*p, "p", "incidence")?, need(*d, "d", "incidence")?)?,
                Family::DeBruijn => de_bruijn(need(*k, "k", "de-bruijn")?, need(*s, "s", "de-bruijn")?)?,
                Family::Line => {
                    let base = builtin_graph(&need(graph.clone(), "graph", "line")?)?;
                    let (dg, lab) = line_digraph(&base)?;
                    if let Some(path) = labels {
                        write_file(path, &write_line_labels(&lab))?;
                    }
                    dg
                }
                Family::Random => {
                    eprintln!("seed={}", g.seed);
                    random_regular_digraph(need(*n, "n", "random")?, need(*k, "k", "random")?, g.seed)?
                }
            };
            emit(g, &write_edge_list(&dg))?;
            Ok(Outcome::Pass)
        }
        Command::Spectrum { input } => {
            let r = spectrum_report(g, &load(input)?)?;
            if g.csv {
                emit(g, &r.to_csv())?;
            } else {
                emit_json(g, &r.to_json())?;
            }
            Ok(Outcome::Pass)
        }
        Command::Check {
            input,
            graph,
            ramanujan,
        } => {
            if !ramanujan {
                return Err(usage("check needs a verdict flag, e.g. --ramanujan"));
            }
            let (verdict, report) = match (input, graph) {
                (Some(path), None) => {
                    let r = spectrum_report(g, &load(path)?)?;
                    (r.ramanujan, json!({"ramanujan": r.ramanujan, "rho0": r.rho0, "margin": r.margin()}))
                }
                (None, Some(name)) => {
                    let v = ramanujan_graph_test(&builtin_graph(name)?, &spectral_opts(g))?;
                    (
                        v.ramanujan,
                        json!({"ramanujan": v.ramanujan, "max_nontrivial": v.max_nontrivial, "bound": v.bound}),
                    )
                }
                _ => return Err(usage("check takes exactly one of INPUT or --graph")),
            };
            emit_json(g, &report)?;
            Ok(if verdict { Outcome::Pass } else { Outcome::VerdictFailed })
        }
        Command::LineDigraph { graph, labels } => {
            let base = builtin_graph(graph)?;
            let (d, lab) = line_digraph(&base)?;
            if let Some(path) = labels {
                write_file(path, &write_line_labels(&lab))?;
            }
            if g.json {
                let b = line_digraph_blocks(&base)?;
                let summary = json!({
                    "graph": graph,
                    "n": b.n,
                    "k": b.k,
                    "blocks": b.blocks.len(),
                    "covered_dim": b.covered_dim(),
                    "residual": b.residual,
                    "orthogonality": b.orthogonality,
                    "max_char_poly_error": b.max_char_poly_error(),
                    "tail_plus": b.tail_plus,
                    "tail_minus": b.tail_minus,
                    "tail_residual": b.tail_residual,
                });
                if let Some(path) = &g.output {
                    write_file(path, &write_edge_list(&d))?;
                }
                println!("{}", serde_json::to_string_pretty(&summary).expect("json values serialize"));
            } else {
                emit(g, &write_edge_list(&d))?;
            }
            Ok(Outcome::Pass)
        }
        Command::Cayley {
            field,
            dim,
            generators,
            builtin,
            cap,
        } => {
            let text = match (generators, builtin.as_deref()) {
                (Some(path), None) => read(path)?,
                (None, Some("psl2-f31")) => PSL2_F31_GENERATORS.to_string(),
                (None, Some("pgl3-f4")) => PGL3_F4_GENERATORS.to_string(),
                (None, Some(other)) => return Err(usage(format!("unknown built-in generator set `{other}`"))),
                _ => return Err(usage("give either --generators or --builtin")),
            };
            let gens = parse_generators(&with_field_header(&text, field.as_deref())?)?;
            if let Some(dim) = dim {
                if *dim != gens.d {
                    return Err(usage(format!("--dim {dim} but generators are {0}x{0}", gens.d)));
                }
            }
            let c = CayleyDigraph::build(&gens.field, gens.d, &gens.generators, *cap)?;
            let d = &c.digraph;
            if g.json {
                if let Some(path) = &g.output {
                    write_file(path, &write_edge_list(d))?;
                }
                let summary = json!({
                    "field_p": gens.field.p,
                    "field_e": gens.field.e,
                    "dim": gens.d,
                    "order": c.order(),
                    "k": d.k(),
                    "strongly_connected": d.strongly_connected(),
                });
                println!("{}", serde_json::to_string_pretty(&summary).expect("json values serialize"));
            } else {
                eprintln!("order={} k={}", c.order(), d.k());
                emit(g, &write_edge_list(d))?;
            }
            Ok(Outcome::Pass)
        }
        Command::Walk {
            input,
            start,
            chernoff,
            ell,
            trials,
            gamma,
            r,
        } => {
            let d = load(input)?;
            if *chernoff {
                let half: Vec<usize> = (0..d.n() / 2).collect();
                let f = centered_indicator(d.n(), &half);
                let res = chernoff_experiment(&d, &f, *ell, *trials, *gamma, g.seed)?;
                if g.csv {
                    let exponent = res.exponent.map(|e| e.to_string()).unwrap_or_default();
                    emit(
                        g,
                        &format!(
                            "seed,ell,gamma,trials,hits,frequency,stderr,exponent\n{},{},{},{},{},{},{},{}\n",
                            res.seed, res.ell, res.gamma, res.trials, res.hits, res.frequency, res.stderr, exponent
                        ),
                    )?;
                } else {
                    emit_json(g, &serde_json::to_value(&res).expect("result serializes"))?;
                }
            } else {
                let lmax = g.lmax.unwrap_or(30);
                let p = cutoff_profile(&d, *start, lmax)?;
                if g.csv {
                    emit(g, &p.to_csv())?;
                } else {
                    let mut j = p.summary_json(*r);
                    j["tv_bound"] = json!(tv_bound_curve(&d, lmax)?);
                    j["steps"] = serde_json::to_value(&p.steps).expect("steps serialize");
                    emit_json(g, &j)?;
                }
            }
            Ok(Outcome::Pass)
        }
        Command::Zeta { input, graph } => {
            let report: ZetaReport = match (input, graph) {
                (Some(path), None) => zeta_digraph(&load(path)?)?,
                (None, Some(name)) => zeta_ihara(&builtin_graph(name)?)?,
                _ => return Err(usage("zeta takes exactly one of INPUT or --graph")),
            };
            if g.csv {
                emit(g, &report.to_csv())?;
            } else {
                emit_json(g, &report.to_json())?;
            }
            Ok(Outcome::Pass)
        }
        Command::Bounds { input, graph, r } => {
            let lmax = g.lmax.unwrap_or(12);
            let mut checks = Vec::new();
            match (input, graph) {
                (Some(path), None) => {
                    let d = load(path)?;
                    checks.extend(digraph_checks(&path.display().to_string(), &d, *r, lmax)?);
                }
                (None, Some(name)) => checks.extend(graph_checks(name, &builtin_graph(name)?)),
                (None, None) => {
                    for (name, ug) in graph_corpus()? {
                        checks.extend(graph_checks(&name, &ug));
                    }
                    for e in digraph_corpus()? {
                        checks.extend(digraph_checks(&e.name, &e.digraph, e.r, lmax)?);
                    }
                }
                _ => return Err(usage("bounds takes at most one of INPUT or --graph")),
            }
            if g.json {
                emit_json(g, &serde_json::to_value(&checks).expect("checks serialize"))?;
            } else {
                emit(g, &checks_to_csv(&checks))?;
            }
            Ok(if checks.iter().all(|c| c.satisfied) {
                Outcome::Pass
            } else {
                Outcome::VerdictFailed
            })
        }
        Command::Alon { k, n, trials, epsilon } => {
            let exp = alon_experiment(*k, n, *trials, *epsilon, g.seed)?;
            if g.csv {
                emit(g, &exp.to_csv())?;
            } else {
                let mut j = exp.summary_json();
                j["samples"] = serde_json::to_value(&exp.samples).expect("samples serialize");
                emit_json(g, &j)?;
            }
            Ok(Outcome::Pass)
        }
        Command::Gelfand { input } => {
            let d = load(input)?;
            let lmax = g.lmax.unwrap_or(10);
            let est = gelfand_estimate(&d, lmax)?;
            if g.csv {
                let mut s = String::from("ell,estimate\n");
                for (i, v) in est.iter().enumerate() {
                    s.push_str(&format!("{},{v}\n", i + 1));
                }
                emit(g, &s)?;
            } else {
                emit_json(g, &json!({"lmax": lmax, "estimates": est}))?;
            }
            Ok(Outcome::Pass)
        }
    }
}

/// Prepends `field <spec>` when the file has no header line.
fn with_field_header(text: &str, field: Option<&str>) -> Result<String> {
    let first = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'));
    let has_header = first.is_some_and(|l| l.starts_with("field"));
    match (has_header, field) {
        (true, None) => Ok(text.to_string()),
        (true, Some(f)) => {
            let file_field = parse_generators(text)?.field;
            let flag_field = dregular::algebra::parse_field_header(&format!("field {f}"))?;
            if file_field != flag_field {
                return Err(usage(format!("--field {f} disagrees with the file header")));
            }
            Ok(text.to_string())
        }
        (false, Some(f)) => Ok(format!("field {f}\n{text}")),
        (false, None) => Err(usage("generator file has no field header; pass --field")),
    }
}

fn graph_checks(name: &str, g: &UGraph) -> Vec<BoundCheck> {
    moore_check(name, g)
        .into_iter()
        .chain(quant_alon_boppana_check(name, g))
        .collect()
}

fn digraph_checks(name: &str, d: &Digraph, r: Option<u64>, lmax: usize) -> Result<Vec<BoundCheck>> {
    let mut checks = Vec::new();
    checks.extend(normal_size_check(name, d)?);
    if let Some(r) = r {
        let rho0 = classify_spectrum(d)?.rho0;
        checks.extend(power_bound_checks(name, d, r, rho0, lmax)?);
        checks.extend(symmetrized_checks(name, d, r, rho0)?);
        checks.push(digraph_alon_boppana_check(name, d, r, rho0));
    }
    Ok(checks)
}

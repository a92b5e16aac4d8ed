//! Rendering and file output for the subcommands.

use std::fmt::Write as _;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use anyhow::{Context, Result};
use num_traits::Signed;
use qcycles::census::{
    self, ATablePoint, AttractorKey, DenominatorReport, PhenomenaCensus, PhenomenaReport, RegistryLine,
};
use qcycles::parity::{self, ParityVector};
use qcycles::{orbit, OrbitOutcome, Rational2};
use rand::{Rng, SeedableRng};
use serde_json::json;

use crate::Format;

pub struct Sink {
    inner: BufWriter<Box<dyn Write>>,
}

impl Sink {
    pub fn open(path: Option<&Path>) -> Result<Self> {
        let inner: Box<dyn Write> = match path {
            Some(p) => Box::new(File::create(p).with_context(|| format!("creating {}", p.display()))?),
            None => Box::new(io::stdout().lock()),
        };
        Ok(Sink {
            inner: BufWriter::new(inner),
        })
    }

    pub fn finish(mut self) -> Result<()> {
        self.inner.flush()?;
        Ok(())
    }
}

impl Write for Sink {
    fn write(&mut self, buf: &[u8]) -> io::Result<usize> {
        self.inner.write(buf)
    }

    fn flush(&mut self) -> io::Result<()> {
        self.inner.flush()
    }
}

fn join(xs: &[Rational2]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

pub fn render_orbit(out: &OrbitOutcome) -> String {
    let mut s = String::new();
    writeln!(s, "tail: ({})", join(&out.tail)).unwrap();
    if out.decided {
        let parity: String = out.cycle_parities().iter().map(|b| if *b == 1 { '1' } else { '0' }).collect();
        writeln!(s, "cycle: ({})", join(&out.cycle)).unwrap();
        writeln!(s, "lambda: {}", out.cycle.len()).unwrap();
        writeln!(s, "omega: {}", out.omega()).unwrap();
        writeln!(s, "parity: {parity}").unwrap();
    } else {
        writeln!(s, "undecided after {} steps", out.steps_used).unwrap();
    }
    s
}

pub fn render_cycle(v: &ParityVector) -> String {
    let inv = v.invariants();
    let x = v.periodic_point();
    let mut s = String::new();
    writeln!(s, "x: {x}").unwrap();
    writeln!(s, "k: {}", v.denominator()).unwrap();
    writeln!(s, "lambda: {}", inv.lambda).unwrap();
    writeln!(s, "omega: {}", inv.omega).unwrap();
    writeln!(s, "rho: {}", inv.rho).unwrap();
    writeln!(s, "J: {}", inv.big_j).unwrap();
    let mut cycle = vec![x.clone()];
    let mut y = x.t_map();
    while y != x {
        cycle.push(y.clone());
        y = y.t_map();
    }
    writeln!(s, "cycle: ({})", join(&cycle)).unwrap();
    if !v.is_primitive() {
        writeln!(s, "warning: imprimitive (minimal period {})", v.minimal_period()).unwrap();
    }
    s
}

pub fn write_vectors(sink: &mut Sink, vectors: impl Iterator<Item = ParityVector>, format: Format) -> Result<()> {
    if format == Format::Csv {
        writeln!(sink, "vector,x,k,lambda,omega,primitive")?;
    }
    for v in vectors {
        let x = v.periodic_point();
        match format {
            Format::Human => writeln!(sink, "{v}  x = {x}  k = {}", x.denom())?,
            Format::Csv => writeln!(
                sink,
                "{v},{x},{},{},{},{}",
                x.denom(),
                v.lambda(),
                v.omega(),
                v.is_primitive()
            )?,
            Format::JsonLines => writeln!(
                sink,
                "{}",
                json!({
                    "vector": v.to_string(),
                    "x": x.to_string(),
                    "k": x.denom().to_string(),
                    "lambda": v.lambda(),
                    "omega": v.omega(),
                    "primitive": v.is_primitive(),
                })
            )?,
        }
    }
    Ok(())
}

pub fn summary_line(r: &DenominatorReport) -> String {
    format!(
        "k={} depth={} attractors={} surveyed={} undecided={}",
        r.k,
        r.depth,
        r.attractors.len(),
        r.surveyed,
        r.undecided_numerators.len()
    )
}

pub fn write_reports(sink: &mut Sink, reports: &[DenominatorReport], format: Format) -> Result<()> {
    match format {
        Format::JsonLines => {
            let lines: Vec<RegistryLine> = reports
                .iter()
                .flat_map(|r| r.attractors.iter().map(|a| RegistryLine::new(a, r.depth, r.step_cap)))
                .collect();
            census::write_registry(&mut *sink, &lines)?;
        }
        Format::Csv => {
            writeln!(sink, "k,min_numerator,lambda,omega,basin_hits,depth,step_cap")?;
            for r in reports {
                for (a, hits) in r.attractors.iter().zip(&r.basin_hits) {
                    writeln!(
                        sink,
                        "{},{},{},{},{},{},{}",
                        r.k,
                        a.min_numerator(),
                        a.lambda(),
                        a.omega(),
                        hits,
                        r.depth,
                        r.step_cap
                    )?;
                }
            }
        }
        Format::Human => {
            writeln!(sink, "{:>8} {:>12} {:>8} {:>8}", "k", "c", "lambda", "omega")?;
            for r in reports {
                for a in &r.attractors {
                    writeln!(sink, "{:>8} {:>12} {:>8} {:>8}", r.k, a.min_numerator(), a.lambda(), a.omega())?;
                }
                if !r.undecided_numerators.is_empty() {
                    writeln!(sink, "{:>8} undecided: {:?}", r.k, r.undecided_numerators)?;
                }
            }
        }
    }
    Ok(())
}

fn key(k: &AttractorKey) -> String {
    format!("{}({},{})", k.min_numerator, k.lambda, k.omega)
}

fn pairs(ps: &[(AttractorKey, AttractorKey)]) -> Vec<String> {
    ps.iter().map(|(a, b)| format!("{}~{}", key(a), key(b))).collect()
}

fn groups(gs: &[Vec<AttractorKey>]) -> Vec<String> {
    gs.iter()
        .map(|g| g.iter().map(key).collect::<Vec<_>>().join("|"))
        .collect()
}

pub fn write_phenomena(sink: &mut Sink, details: &[PhenomenaReport], format: Format) -> Result<()> {
    match format {
        Format::Csv => {
            writeln!(
                sink,
                "k,scaling_pairs,nonintegral_ratio_pairs,repetition_groups,covariance_exceptions"
            )?;
            for d in details {
                writeln!(
                    sink,
                    "{},{},{},{},{}",
                    d.k,
                    d.scaling_pairs.len(),
                    d.nonintegral_ratio_pairs.len(),
                    d.repetition_groups.len(),
                    d.covariance_exceptions.len()
                )?;
            }
        }
        Format::JsonLines => {
            for d in details {
                writeln!(
                    sink,
                    "{}",
                    json!({
                        "k": d.k,
                        "scaling_pairs": pairs(&d.scaling_pairs),
                        "nonintegral_ratio_pairs": pairs(&d.nonintegral_ratio_pairs),
                        "repetition_groups": groups(&d.repetition_groups),
                        "covariance_exceptions": pairs(&d.covariance_exceptions),
                    })
                )?;
            }
        }
        Format::Human => {
            for d in details {
                let mut parts = Vec::new();
                let scaling: Vec<String> = pairs(&d.scaling_pairs)
                    .into_iter()
                    .chain(pairs(&d.nonintegral_ratio_pairs))
                    .collect();
                if !scaling.is_empty() {
                    parts.push(format!("scaling {}", scaling.join(" ")));
                }
                if !d.repetition_groups.is_empty() {
                    parts.push(format!("repetition {}", groups(&d.repetition_groups).join(" ")));
                }
                if !d.covariance_exceptions.is_empty() {
                    parts.push(format!("covariance-exceptions {}", pairs(&d.covariance_exceptions).join(" ")));
                }
                if !parts.is_empty() {
                    writeln!(sink, "k={}: {}", d.k, parts.join("; "))?;
                }
            }
        }
    }
    Ok(())
}

pub fn render_phenomena_totals(c: &PhenomenaCensus) -> String {
    format!(
        "denominators={} scaling={} repetition={} both={} integral_scaling={} integral_both={} \
         ratio_pairs={} scaling_pairs={} repetition_groups={} repeated_attractors={} \
         covariance_exception_denominators={} undecided={}",
        c.denominators,
        c.scaling_denominators,
        c.repetition_denominators,
        c.both_denominators,
        c.integral_scaling_denominators,
        c.integral_both_denominators,
        c.ratio_pairs,
        c.scaling_pairs,
        c.repetition_groups,
        c.repeated_attractors,
        c.covariance_exception_denominators,
        c.undecided_denominators
    )
}

pub fn write_atable(sink: &mut Sink, table: &[ATablePoint], format: Format) -> Result<()> {
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *sink);
            for p in table {
                w.serialize(p)?;
            }
            w.flush()?;
        }
        Format::JsonLines => {
            for p in table {
                writeln!(sink, "{}", serde_json::to_string(p)?)?;
            }
        }
        Format::Human => {
            writeln!(sink, "{:>8} {:>8}", "N", "A")?;
            for p in table {
                writeln!(sink, "{:>8} {:>8}", p.depth, p.a)?;
            }
        }
    }
    Ok(())
}

pub struct VerifyReport {
    pub text: String,
    pub all_passed: bool,
    pub undecided: bool,
}

pub fn verify(
    closed_form_exhaustive: usize,
    closed_form_random: usize,
    census_max: usize,
    agreement_k_max: u64,
    depth: u64,
    step_cap: u64,
) -> Result<VerifyReport> {
    let mut text = String::new();
    let mut all_passed = true;
    let mut line = |name: &str, ok: bool, detail: String| {
        all_passed &= ok;
        writeln!(text, "[{}] {name}: {detail}", if ok { "PASS" } else { "FAIL" }).unwrap();
    };

    let mut checked = 0u64;
    let mut bad = Vec::new();
    for n in 1..=closed_form_exhaustive {
        for v in parity::enumerate_vectors(n, false)? {
            checked += 1;
            if !v.verify_closed_form() {
                bad.push(v.to_string());
            }
        }
    }
    line("closed form, exhaustive", bad.is_empty(), format!("{checked} vectors, failures {bad:?}"));

    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2024);
    let mut bad = Vec::new();
    for _ in 0..closed_form_random {
        let len = rng.gen_range(1..=64);
        let v = ParityVector::new((0..len).map(|_| rng.gen_range(0..=1u8)).collect())?;
        if !v.verify_closed_form() {
            bad.push(v.to_string());
        }
    }
    line("closed form, random", bad.is_empty(), format!("{closed_form_random} vectors, failures {bad:?}"));

    let failing: Vec<usize> = (1..=census_max)
        .filter(|&n| !parity::verify_census_totals(n).unwrap_or(false))
        .collect();
    line(
        "census totals vs Möbius sums",
        failing.is_empty(),
        format!("n <= {census_max}, failing {failing:?}"),
    );

    let reports = census::sweep(1, agreement_k_max, depth, step_cap)?;
    let undecided = reports.iter().any(|r| !r.undecided_numerators.is_empty());
    let mut cycles = 0;
    let mut bad = Vec::new();
    for r in &reports {
        for a in &r.attractors {
            cycles += 1;
            if !a.agrees_with_closed_form() {
                bad.push(format!("{}/{}", a.min_numerator(), r.k));
            }
            let start = a.start();
            let out = orbit(&start, a.lambda() as u64);
            if !(out.decided && out.cycle == a.cycle() && start.numer().is_positive()) {
                bad.push(format!("{}/{} (orbit)", a.min_numerator(), r.k));
            }
        }
    }
    line(
        "search vs closed form",
        bad.is_empty(),
        format!("{cycles} cycles for k <= {agreement_k_max} at depth {depth}, failures {bad:?}"),
    );
    Ok(VerifyReport {
        text,
        all_passed,
        undecided,
    })
}

//! Command-line front end: deterministic CSV/PGM outputs for the toolkit's
//! verification ledger, renders, and samplers.

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use petal::contfrac;
use petal::explosion;
use petal::family::FamilyParams;
use petal::fatou::{self, HornMap, ParabolicGerm};
use petal::julia::{self, GridSpec};
use petal::ledger;
use std::f64::consts::TAU;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "petal",
    about = "Numerical toolkit for the family e^{2πiα} z (1+z)^m",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum Format {
    Csv,
    Json,
    Pgm,
}

#[derive(Args)]
struct GridArgs {
    /// Degree parameter m ≥ 2
    #[arg(long, default_value_t = 2)]
    m: u32,
    /// Rotation number: decimal, "golden", or "cf:[a0,a1,...]"
    #[arg(long, default_value = "0")]
    alpha: String,
    /// Pixels per side
    #[arg(long, default_value_t = 512)]
    res: u32,
    #[arg(long, default_value_t = 1000)]
    max_iter: u32,
    /// Escape radius; defaults to the certificate 2 + 2^{1/m}
    #[arg(long)]
    bailout: Option<f64>,
    #[arg(long, default_value_t = 2.0)]
    half_width: f64,
    /// Window center "re,im"
    #[arg(long, default_value = "0,0")]
    center: String,
}

#[derive(Subcommand)]
enum Command {
    /// Run the numeric verification ledger (exit 1 if any check fails)
    Verify {
        #[arg(long)]
        json: bool,
        #[arg(long)]
        csv: bool,
        /// 10x the sampling densities
        #[arg(long)]
        dense: bool,
    },
    /// Render the bounded-orbit mask as binary PGM (P5)
    Render {
        #[command(flatten)]
        grid: GridArgs,
        /// Output path (stdout if omitted)
        #[arg(long)]
        out: Option<String>,
        #[arg(long, value_enum, default_value = "pgm")]
        format: Format,
        /// Average 4 subpixels (figure rendering only; breaks bit-exact masks)
        #[arg(long)]
        supersample: bool,
    },
    /// Pixel-counting area estimate, with a refinement row at 2x resolution
    Area {
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long)]
        out: Option<String>,
    },
    /// Density of the bounded set over a centered window
    Dens {
        #[command(flatten)]
        grid: GridArgs,
        /// Window side as a fraction of the grid
        #[arg(long, default_value_t = 0.5)]
        window: f64,
        #[arg(long)]
        out: Option<String>,
    },
    /// Sample the explosion function: cycles of P_{p/q+δ^q}
    Explode {
        #[arg(long, default_value_t = 2)]
        m: u32,
        #[arg(long, default_value_t = 1)]
        p: i64,
        #[arg(long, default_value_t = 2)]
        q: u32,
        /// |δ|
        #[arg(long, default_value_t = 0.05)]
        delta: f64,
        /// Number of directions arg δ
        #[arg(long, default_value_t = 8)]
        directions: u32,
        #[arg(long)]
        out: Option<String>,
    },
    /// Sample the horn map E on strip grids
    Horn {
        #[arg(long, default_value_t = 2)]
        m: u32,
        /// Im levels, comma separated
        #[arg(long, default_value = "8,10,12")]
        heights: String,
        /// Samples per unit strip
        #[arg(long, default_value_t = 8)]
        samples: u32,
        #[arg(long, default_value_t = 1e-5)]
        tol: f64,
        #[arg(long)]
        out: Option<String>,
    },
    /// Sample the parabolic renormalization R0f on a polar grid
    Renorm {
        #[arg(long, default_value_t = 2)]
        m: u32,
        #[arg(long, default_value_t = 6)]
        rays: u32,
        #[arg(long, default_value_t = 4)]
        rings: u32,
        #[arg(long, default_value_t = 1e-5)]
        tol: f64,
        #[arg(long)]
        out: Option<String>,
    },
    /// Continued-fraction table: entries, convergents, Brjuno partials
    Cf {
        #[arg(long, default_value = "golden")]
        alpha: String,
        #[arg(long, default_value_t = 8)]
        depth: usize,
        #[arg(long)]
        out: Option<String>,
    },
}

fn parse_alpha(s: &str) -> Result<f64, String> {
    if s == "golden" {
        return Ok(contfrac::golden_mean());
    }
    if let Some(body) = s.strip_prefix("cf:") {
        let trimmed = body.trim_start_matches('[').trim_end_matches(']');
        let entries: Vec<i64> = trimmed
            .split(',')
            .map(|t| t.trim().parse::<i64>().map_err(|e| e.to_string()))
            .collect::<Result<_, _>>()?;
        if entries.is_empty() {
            return Err("cf:[...] needs at least one entry".into());
        }
        return contfrac::rational_value(&entries).map_err(|e| e.to_string());
    }
    s.parse::<f64>().map_err(|e| e.to_string())
}

fn parse_center(s: &str) -> Result<Complex64, String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err(format!("center must be \"re,im\", got {s}"));
    }
    let re: f64 = parts[0]
        .trim()
        .parse()
        .map_err(|e: std::num::ParseFloatError| e.to_string())?;
    let im: f64 = parts[1]
        .trim()
        .parse()
        .map_err(|e: std::num::ParseFloatError| e.to_string())?;
    Ok(Complex64::new(re, im))
}

fn open_out(path: &Option<String>) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn grid_from(args: &GridArgs) -> Result<(FamilyParams, GridSpec, f64), String> {
    let alpha = parse_alpha(&args.alpha)?;
    let params = FamilyParams::real(args.m, alpha).map_err(|e| e.to_string())?;
    let mut spec = GridSpec::new(
        parse_center(&args.center)?,
        args.half_width,
        args.res,
        args.max_iter,
        args.m,
    )
    .map_err(|e| e.to_string())?;
    if let Some(b) = args.bailout {
        spec.bailout = b;
        spec.validate(args.m).map_err(|e| e.to_string())?;
    }
    Ok((params, spec, alpha))
}

type W = Box<dyn Write>;

fn wln(w: &mut W, s: String) -> Result<(), String> {
    writeln!(w, "{s}").map_err(|e| e.to_string())
}

fn run() -> Result<u8, String> {
    let cli = Cli::parse();
    match cli.command {
        Command::Verify { json, csv, dense } => {
            let results = ledger::run_all(dense);
            let all_pass = results.iter().all(|r| r.pass);
            let mut w = open_out(&None).map_err(|e| e.to_string())?;
            let fmt_m = |m: Option<u32>| m.map_or("-".to_string(), |v| v.to_string());
            if json {
                let vecs = |v: &[f64]| {
                    v.iter()
                        .map(|x| format!("{x:.12e}"))
                        .collect::<Vec<_>>()
                        .join(",")
                };
                let items: Vec<String> = results
                    .iter()
                    .map(|r| {
                        format!(
                            "{{\"name\":\"{}\",\"m\":{},\"computed\":[{}],\"printed\":[{}],\"rel_tol\":{:e},\"pass\":{}}}",
                            r.name,
                            r.m.map_or("null".to_string(), |v| v.to_string()),
                            vecs(&r.computed),
                            vecs(&r.printed),
                            r.rel_tol,
                            r.pass
                        )
                    })
                    .collect();
                wln(
                    &mut w,
                    format!("{{\"dense\":{dense},\"checks\":[{}]}}", items.join(",")),
                )?;
            } else if csv {
                wln(&mut w, format!("# petal verify dense={dense}"))?;
                wln(&mut w, "name,m,computed,printed,pass".to_string())?;
                for r in &results {
                    wln(
                        &mut w,
                        format!(
                            "{},{},{},{},{}",
                            r.name,
                            fmt_m(r.m),
                            r.computed
                                .iter()
                                .map(|x| format!("{x:.9e}"))
                                .collect::<Vec<_>>()
                                .join(";"),
                            r.printed
                                .iter()
                                .map(|x| format!("{x}"))
                                .collect::<Vec<_>>()
                                .join(";"),
                            r.pass
                        ),
                    )?;
                }
            } else {
                wln(&mut w, format!("# petal verify dense={dense}"))?;
                for r in &results {
                    wln(
                        &mut w,
                        format!(
                            "{:<22} m={:<4} worst_rel={:<10.3e} {}",
                            r.name,
                            fmt_m(r.m),
                            r.worst_rel(),
                            if r.pass { "pass" } else { "FAIL" }
                        ),
                    )?;
                    if let Some(note) = r.note {
                        wln(&mut w, format!("    note: {note}"))?;
                    }
                }
            }
            w.flush().map_err(|e| e.to_string())?;
            Ok(if all_pass { 0 } else { 1 })
        }
        Command::Render {
            grid,
            out,
            format,
            supersample,
        } => {
            let (params, spec, alpha) = grid_from(&grid)?;
            let mut w = open_out(&out).map_err(|e| e.to_string())?;
            if format != Format::Pgm {
                return Err("render emits PGM only".into());
            }
            let header = format!(
                "# petal render m={} alpha={:.17} res={} max_iter={} bailout={:.17} half_width={} center={},{} supersample={}",
                params.m, alpha, spec.resolution, spec.max_iter, spec.bailout,
                spec.half_width, spec.center.re, spec.center.im, supersample
            );
            let res = spec.resolution;
            let mut pixels = vec![0u8; (res * res) as usize];
            if supersample {
                let mut fine = spec;
                fine.resolution = res * 2;
                let mask = julia::filled_julia_mask(&params, &fine).map_err(|e| e.to_string())?;
                for row in 0..res {
                    for col in 0..res {
                        let mut acc = 0u16;
                        for (dr, dc) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
                            acc += mask.get(2 * col + dc, 2 * row + dr) as u16;
                        }
                        pixels[(row * res + col) as usize] = (acc * 255 / 4) as u8;
                    }
                }
            } else {
                let mask = julia::filled_julia_mask(&params, &spec).map_err(|e| e.to_string())?;
                for (px, &b) in pixels.iter_mut().zip(&mask.bits) {
                    *px = if b { 255 } else { 0 };
                }
            }
            write!(w, "P5\n{header}\n{res} {res}\n255\n").map_err(|e| e.to_string())?;
            w.write_all(&pixels).map_err(|e| e.to_string())?;
            w.flush().map_err(|e| e.to_string())?;
            Ok(0)
        }
        Command::Area { grid, out } => {
            let (params, spec, alpha) = grid_from(&grid)?;
            let mut w = open_out(&out).map_err(|e| e.to_string())?;
            wln(
                &mut w,
                format!(
                    "# petal area m={} alpha={:.17} max_iter={} bailout={:.17} half_width={} center={},{}",
                    params.m, alpha, spec.max_iter, spec.bailout, spec.half_width,
                    spec.center.re, spec.center.im
                ),
            )?;
            wln(
                &mut w,
                "m,alpha,resolution,max_iter,inner_count,value".to_string(),
            )?;
            for mult in [1u32, 2] {
                let mut s = spec;
                s.resolution = spec.resolution * mult;
                let est = julia::area_estimate(&params, &s).map_err(|e| e.to_string())?;
                wln(
                    &mut w,
                    format!(
                        "{},{:.17},{},{},{},{:.12e}",
                        params.m, alpha, est.resolution, est.max_iter, est.inner_count, est.value
                    ),
                )?;
            }
            w.flush().map_err(|e| e.to_string())?;
            Ok(0)
        }
        Command::Dens { grid, window, out } => {
            let (params, spec, alpha) = grid_from(&grid)?;
            let mut w = open_out(&out).map_err(|e| e.to_string())?;
            let mask = julia::filled_julia_mask(&params, &spec).map_err(|e| e.to_string())?;
            let res = spec.resolution;
            let side = ((res as f64 * window) as u32).clamp(1, res);
            let c0 = (res - side) / 2;
            let d = julia::dens(&mask, c0, c0, side, side).map_err(|e| e.to_string())?;
            wln(
                &mut w,
                format!(
                    "# petal dens m={} alpha={:.17} res={} max_iter={} window={window}",
                    params.m, alpha, res, spec.max_iter
                ),
            )?;
            wln(
                &mut w,
                "m,alpha,resolution,max_iter,window,dens".to_string(),
            )?;
            wln(
                &mut w,
                format!(
                    "{},{:.17},{},{},{},{:.12}",
                    params.m, alpha, res, spec.max_iter, window, d
                ),
            )?;
            w.flush().map_err(|e| e.to_string())?;
            Ok(0)
        }
        Command::Explode {
            m,
            p,
            q,
            delta,
            directions,
            out,
        } => {
            let mut w = open_out(&out).map_err(|e| e.to_string())?;
            wln(
                &mut w,
                format!("# petal explode m={m} p={p} q={q} delta={delta} directions={directions}"),
            )?;
            wln(
                &mut w,
                "delta_re,delta_im,cycle_index,z_re,z_im,residual".to_string(),
            )?;
            for k in 0..directions {
                let d = Complex64::from_polar(delta, TAU * k as f64 / directions as f64);
                let cycle =
                    explosion::chi_continuation(m, p, q, d, 1.25).map_err(|e| e.to_string())?;
                let alpha = Complex64::new(p as f64 / q as f64, 0.0) + petal::family::cpow(d, q);
                let params = FamilyParams::new(m, alpha).map_err(|e| e.to_string())?;
                for (i, z) in cycle.iter().enumerate() {
                    let mut orbit = *z;
                    for _ in 0..q {
                        orbit = params.eval(orbit);
                    }
                    wln(
                        &mut w,
                        format!(
                            "{:.17},{:.17},{},{:.17},{:.17},{:.3e}",
                            d.re,
                            d.im,
                            i,
                            z.re,
                            z.im,
                            (orbit - z).norm()
                        ),
                    )?;
                }
            }
            w.flush().map_err(|e| e.to_string())?;
            Ok(0)
        }
        Command::Horn {
            m,
            heights,
            samples,
            tol,
            out,
        } => {
            let mut w = open_out(&out).map_err(|e| e.to_string())?;
            let germ = ParabolicGerm::family(m).map_err(|e| e.to_string())?;
            let horn =
                HornMap::new(germ, tol, fatou::DEFAULT_HORN_MIN_IM).map_err(|e| e.to_string())?;
            wln(
                &mut w,
                format!("# petal horn m={m} heights={heights} samples={samples} tol={tol:e}"),
            )?;
            wln(&mut w, "re_z,im_z,re_E,im_E".to_string())?;
            for h in heights.split(',') {
                let im: f64 = h
                    .trim()
                    .parse()
                    .map_err(|e: std::num::ParseFloatError| e.to_string())?;
                for k in 0..samples {
                    let z = Complex64::new(k as f64 / samples as f64, im);
                    let e = horn.eval(z).map_err(|e| e.to_string())?;
                    wln(
                        &mut w,
                        format!("{:.12},{:.12},{:.12},{:.12}", z.re, z.im, e.re, e.im),
                    )?;
                }
            }
            w.flush().map_err(|e| e.to_string())?;
            Ok(0)
        }
        Command::Renorm {
            m,
            rays,
            rings,
            tol,
            out,
        } => {
            let mut w = open_out(&out).map_err(|e| e.to_string())?;
            let germ = ParabolicGerm::family(m).map_err(|e| e.to_string())?;
            let horn =
                HornMap::new(germ, tol, fatou::DEFAULT_HORN_MIN_IM).map_err(|e| e.to_string())?;
            let rmax = (-TAU * fatou::DEFAULT_HORN_MIN_IM).exp();
            wln(
                &mut w,
                format!("# petal renorm m={m} rays={rays} rings={rings} tol={tol:e} rmax={rmax:e}"),
            )?;
            wln(&mut w, "r,theta,re,im".to_string())?;
            for ring in 1..=rings {
                let r = rmax * 0.5f64.powi((rings - ring) as i32 + 1);
                for ray in 0..rays {
                    let theta = TAU * ray as f64 / rays as f64;
                    let v = fatou::parabolic_renorm(&horn, Complex64::from_polar(r, theta))
                        .map_err(|e| e.to_string())?;
                    wln(
                        &mut w,
                        format!("{r:.6e},{theta:.12},{:.12e},{:.12e}", v.re, v.im),
                    )?;
                }
            }
            w.flush().map_err(|e| e.to_string())?;
            Ok(0)
        }
        Command::Cf { alpha, depth, out } => {
            let a = parse_alpha(&alpha)?;
            let mut w = open_out(&out).map_err(|e| e.to_string())?;
            let cf = contfrac::expand(a, depth).map_err(|e| e.to_string())?;
            wln(
                &mut w,
                format!(
                    "# petal cf alpha={a:.17} depth={depth} terminated={}",
                    cf.terminated
                ),
            )?;
            wln(&mut w, "k,a_k,p_k,q_k,beta_k,phi_partial".to_string())?;
            for (k, entry) in cf.entries.iter().enumerate() {
                let (p, q) = &cf.convergents[k];
                let beta = cf.betas.get(k).copied().unwrap_or(f64::NAN);
                let phi = contfrac::brjuno_sum(a, k).map_or(f64::NAN, |v| v);
                wln(&mut w, format!("{k},{entry},{p},{q},{beta:.12e},{phi:.12}"))?;
            }
            w.flush().map_err(|e| e.to_string())?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

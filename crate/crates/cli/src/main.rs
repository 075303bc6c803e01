use std::f64::consts::FRAC_PI_2;
use std::fmt::Write as _;
use std::io::{ErrorKind, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use derivbound::analysis::{round_half_away, table_csv, TABLE1_N, TABLE1_X};
use derivbound::lambda::{build_lambda_grid, DEFAULT_STEP_EXP, DEFAULT_V_MAX};
use derivbound::transforms::closed_form::{
    cin_over_t2_fourth_derivative, sinc_fourth_derivative, tan_derivative,
};
use derivbound::transforms::finite_diff::{finite_difference_derivative_with_step, DEFAULT_STEP};
use derivbound::{
    eval_special, family_bound, finite_difference_derivative, frullani_check, laplace_check,
    locate_error_zero, qint_eval, qint_oracle, ratio_value, scan_ratio, table1,
    transform_derivative, KernelFamily64, Parity, QIntSpec, SpecialFnId, TaylorKernelSpec,
};

#[derive(Parser, Debug)]
#[command(
    name = "derivbound",
    version,
    about = "Derivative bounds and Simpson error certification"
)]
struct Cli {
    /// Write results to this file instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Bound on the k-th derivative of a kernel family (tan: derivative 2k).
    Bound {
        #[arg(long, value_parser = family)]
        family: KernelFamily64,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value = "0", value_parser = finite, allow_hyphen_values = true)]
        t: f64,
    },
    /// k-th derivative through the integral representation (tan: derivative 2k).
    Deriv {
        #[arg(long, value_parser = family)]
        family: KernelFamily64,
        #[arg(long)]
        k: usize,
        #[arg(long, value_parser = finite, allow_hyphen_values = true)]
        t: f64,
        /// Compare against an independent route.
        #[arg(long)]
        check: Option<Check>,
    },
    /// Evaluate a special function.
    Specfun {
        #[arg(long = "fn", value_parser = special)]
        function: SpecialFnId,
        #[arg(long, value_parser = finite, allow_hyphen_values = true)]
        x: f64,
    },
    /// Simpson error ratios for the Cin integrand at x = 1..10, n = 10, 100, 1000.
    Table1 {
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Ratio R_n = B_n/E_n on a grid of x.
    Scan {
        #[arg(long, value_parser = even)]
        n: usize,
        #[arg(long, value_parser = finite, allow_hyphen_values = true)]
        xmin: f64,
        #[arg(long, value_parser = finite, allow_hyphen_values = true)]
        xmax: f64,
        #[arg(long, value_parser = finite, allow_hyphen_values = true)]
        step: f64,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Refine a sign change of the Simpson error E_n.
    Zero {
        #[arg(long, value_parser = even)]
        n: usize,
        #[arg(long, value_parser = finite, allow_hyphen_values = true)]
        lo: f64,
        #[arg(long, value_parser = finite, allow_hyphen_values = true)]
        hi: f64,
        #[arg(long, default_value = "1e-9", value_parser = finite, allow_hyphen_values = true)]
        tol: f64,
    },
    /// Truncated integral of (cos αt - cos βt)/t² on [0, T].
    Frullani {
        #[arg(long, value_parser = finite, allow_hyphen_values = true)]
        alpha: f64,
        #[arg(long, value_parser = finite, allow_hyphen_values = true)]
        beta: f64,
        #[arg(long = "T", value_parser = finite, allow_hyphen_values = true)]
        truncation: f64,
    },
    /// Tabulate λ_κ by the method of steps.
    Lambda {
        #[arg(long, value_parser = finite, allow_hyphen_values = true)]
        kappa: f64,
        #[arg(long, default_value_t = DEFAULT_V_MAX)]
        vmax: usize,
        #[arg(long, default_value_t = DEFAULT_STEP_EXP)]
        step_exp: u32,
        /// Also check the Laplace transform at this t.
        #[arg(long, value_parser = finite, allow_hyphen_values = true)]
        laplace_t: Option<f64>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Certified Simpson value of ∫_a^b t^{-2κ} e^{-ut} e^{κ Ein(t)} dt.
    Qint {
        #[arg(long, value_parser = finite, allow_hyphen_values = true)]
        kappa: f64,
        #[arg(long, value_parser = finite, allow_hyphen_values = true)]
        u: f64,
        #[arg(long, value_parser = finite, allow_hyphen_values = true)]
        a: f64,
        #[arg(long, value_parser = finite, allow_hyphen_values = true)]
        b: f64,
        #[arg(long, value_parser = even)]
        n: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Check {
    Fd,
    Closed,
}

fn finite(s: &str) -> Result<f64, String> {
    let v: f64 = s.trim().parse().map_err(|e| format!("{e}"))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err("value must be finite".into())
    }
}

fn even(s: &str) -> Result<usize, String> {
    let n: usize = s.parse().map_err(|e| format!("{e}"))?;
    if n >= 2 && n.is_multiple_of(2) {
        Ok(n)
    } else {
        Err("must be an even integer ≥ 2".into())
    }
}

fn family(s: &str) -> Result<KernelFamily64, String> {
    KernelFamily64::from_str(s).map_err(|e| e.to_string())
}

fn special(s: &str) -> Result<SpecialFnId, String> {
    SpecialFnId::from_str(s).map_err(|e| e.to_string())
}

fn parity_name(p: Parity) -> &'static str {
    match p {
        Parity::Even => "k even",
        Parity::Odd => "k odd",
        Parity::Always => "all k",
    }
}

fn bound(fam: KernelFamily64, k: usize, t: f64) -> Result<String> {
    let b = family_bound(&fam, k, t)?;
    let note = match (b.sharp_at, b.parity) {
        (Some(at), Some(p)) => format!("sharp: t={at}, {}", parity_name(p)),
        (None, Some(p)) => format!("not attained here; sharp at t=0 for {}", parity_name(p)),
        _ => "asymptotically sharp as |t| → π/2".to_string(),
    };
    Ok(format!("{}\n{note}\n", b.value))
}

fn deriv(fam: KernelFamily64, k: usize, t: f64, check: Option<Check>) -> Result<String> {
    let spec = TaylorKernelSpec::canonical(fam);
    let value = transform_derivative(&spec, k, t)?;
    let mut out = format!("{value}\n");
    if let Some(check) = check {
        let order = if fam == KernelFamily64::TanEven {
            2 * k
        } else {
            k
        };
        let other = match check {
            Check::Fd => {
                let f = |x| ratio_value(&spec, x).unwrap_or(f64::NAN);
                if fam == KernelFamily64::TanEven {
                    // Keep the stencil within half the distance to the pole.
                    let h0 = DEFAULT_STEP.min((FRAC_PI_2 - t.abs()) / order.max(1) as f64);
                    finite_difference_derivative_with_step(f, order, t, h0)?
                } else {
                    finite_difference_derivative(f, order, t)?
                }
            }
            Check::Closed => match (fam, k) {
                (KernelFamily64::Sinc, 4) => sinc_fourth_derivative(t)?,
                (KernelFamily64::CinOverT2, 4) => cin_over_t2_fourth_derivative(t)?,
                (KernelFamily64::TanEven, _) => tan_derivative(order, t)?,
                _ => bail!(
                    "no closed form for {fam} at k = {k} (available: sinc k=4, cin2 k=4, tan)"
                ),
            },
        };
        let name = if check == Check::Fd { "fd" } else { "closed" };
        writeln!(
            out,
            "{name}: {other} (difference {:.3e})",
            (value - other).abs()
        )?;
    }
    Ok(out)
}

fn table1_text() -> Result<String> {
    let reports = table1::<f64>()?;
    let mut out = format!("{:>5}", "x");
    for n in TABLE1_N {
        write!(out, "{:>10}", format!("n={n}"))?;
    }
    out.push('\n');
    for (row, x) in reports.chunks(TABLE1_N.len()).zip(TABLE1_X) {
        write!(out, "{x:>5.1}")?;
        for r in row {
            match r.r_n {
                Some(v) => write!(out, "{:>10.2}", round_half_away(v, 2))?,
                None => write!(out, "{:>10}", "undef")?,
            }
        }
        out.push('\n');
    }
    Ok(out)
}

fn scan(n: usize, xmin: f64, xmax: f64, step: f64, format: Format) -> Result<String> {
    let pts = scan_ratio(n, xmin, xmax, step)?;
    let mut out = String::new();
    if format == Format::Csv {
        out.push_str("x,R_n\n");
    }
    for p in pts {
        let r = p
            .r_n
            .map(|v| format!("{v:.16e}"))
            .unwrap_or_else(|| "undef".into());
        match format {
            Format::Csv => writeln!(out, "{:.16e},{r}", p.x)?,
            Format::Text => writeln!(out, "{:>10.4} {r}", p.x)?,
        }
    }
    Ok(out)
}

fn zero(n: usize, lo: f64, hi: f64, tol: f64) -> Result<String> {
    let z = locate_error_zero(n, lo, hi, tol)?;
    let (a, b) = (z.initial, z.refined);
    Ok(format!(
        "n = {n}\ninitial [{}, {}]: E(lo) = {:.4e}, E(hi) = {:.4e}\n\
         refined [{:.12}, {:.12}]: E(lo) = {:.4e}, E(hi) = {:.4e}, width {:.3e}\n",
        a.lo,
        a.hi,
        a.e_lo,
        a.e_hi,
        b.lo,
        b.hi,
        b.e_lo,
        b.e_hi,
        b.hi - b.lo
    ))
}

fn frullani(alpha: f64, beta: f64, truncation: f64) -> Result<String> {
    let c = frullani_check(alpha, beta, truncation)?;
    Ok(format!(
        "truncated {:.12}\ntarget {:.12}\ndeviation {:.3e}\ntail bound {:.3e}\nholds {}\n",
        c.truncated,
        c.target,
        (c.truncated - c.target).abs(),
        c.tail_bound,
        if c.holds() { "yes" } else { "no" }
    ))
}

fn lambda(
    kappa: f64,
    vmax: usize,
    step_exp: u32,
    laplace_t: Option<f64>,
    format: Format,
) -> Result<(String, String)> {
    let grid = build_lambda_grid(kappa, vmax, step_exp)?;
    let mut summary = format!(
        "kappa {kappa}\nv_max {vmax}\nstep 2^-{step_exp}\nnodes {}\n",
        grid.values().len()
    );
    for v in [1usize, 2, vmax] {
        writeln!(summary, "lambda({v}) {:.16e}", grid.eval(v as f64)?)?;
    }
    let min = grid.values().iter().cloned().fold(f64::INFINITY, f64::min);
    writeln!(summary, "min {min:.3e}")?;
    if let Some(t) = laplace_t {
        let c = laplace_check(&grid, t)?;
        writeln!(
            summary,
            "laplace t={t}: grid {:.16e}, closed form {:.16e}, defect {:.3e}, tail {:.3e}, quadrature {:.3e}",
            c.lhs, c.rhs, c.defect, c.tail, c.quadrature_error
        )?;
    }
    if format == Format::Text {
        return Ok((summary, String::new()));
    }
    let mut csv = String::from("v,lambda\n");
    for (j, v) in grid.values().iter().enumerate() {
        writeln!(csv, "{:.16e},{v:.16e}", grid.node(j))?;
    }
    Ok((csv, summary))
}

fn qint(kappa: f64, u: f64, a: f64, b: f64, n: usize) -> Result<String> {
    let spec = QIntSpec::new(kappa, u, a, b)?;
    let grid = build_lambda_grid(kappa, DEFAULT_V_MAX, DEFAULT_STEP_EXP)?;
    let r = qint_eval(&spec, n, &grid)?;
    let reference = qint_oracle(&spec)?;
    let err = (r.value - reference).abs();
    Ok(format!(
        "simpson {:.16e}\nreference {:.16e}\nerror {:.3e}\nbound {:.3e}\nf4(a) {:.16e} ± {:.1e}\ncertified {}\n",
        r.value,
        reference,
        err,
        r.bound,
        r.f4_at_a.value,
        r.f4_at_a.error,
        if err <= r.bound { "yes" } else { "no" }
    ))
}

/// Returns the primary output and an optional note for the error stream.
fn run(cmd: Command) -> Result<(String, String)> {
    let plain = |s: Result<String>| s.map(|s| (s, String::new()));
    match cmd {
        Command::Bound { family, k, t } => plain(bound(family, k, t)),
        Command::Deriv {
            family,
            k,
            t,
            check,
        } => plain(deriv(family, k, t, check)),
        Command::Specfun { function, x } => plain(Ok(format!("{}\n", eval_special(function, x)?))),
        Command::Table1 { format } => match format {
            Format::Text => plain(table1_text()),
            Format::Csv => plain(Ok(table_csv(&table1::<f64>()?))),
        },
        Command::Scan {
            n,
            xmin,
            xmax,
            step,
            format,
        } => plain(scan(n, xmin, xmax, step, format)),
        Command::Zero { n, lo, hi, tol } => plain(zero(n, lo, hi, tol)),
        Command::Frullani {
            alpha,
            beta,
            truncation,
        } => plain(frullani(alpha, beta, truncation)),
        Command::Lambda {
            kappa,
            vmax,
            step_exp,
            laplace_t,
            format,
        } => lambda(kappa, vmax, step_exp, laplace_t, format),
        Command::Qint { kappa, u, a, b, n } => plain(qint(kappa, u, a, b, n)),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    let result = run(cli.command).and_then(|(out, note)| {
        match &cli.output {
            Some(path) => {
                std::fs::write(path, &out).with_context(|| format!("writing {}", path.display()))?
            }
            None => match std::io::stdout().lock().write_all(out.as_bytes()) {
                Err(e) if e.kind() == ErrorKind::BrokenPipe => {}
                other => other.context("writing standard output")?,
            },
        }
        eprint!("{note}");
        Ok(())
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

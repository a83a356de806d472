//! The four subcommands: each builds a [`Table`] from library calls and
//! hands it to the output writer.

use semidens::metrics::{eta, eta_t};
use semidens::oracle::{analytic_levels, exact_density, exact_ked, solve_box_auto, ReferenceFamily};
use semidens::profile::{Method, Observable};
use semidens::quantize::{capacity, wkb_level};
use semidens::{Error, ProfileBuilder64, Result};

use crate::config::{
    build_potential, linspace, parse_grid, parse_methods, parse_scan, validate_hbar, GridSpec,
};
use crate::table::{write_out, Cell, Table};
use crate::{ProfileArgs, ScanArgs, SpectrumArgs};

/// Levels j = 0..N-1 from the quantization condition next to a reference:
/// the closed-form spectrum when the family has one, the grid solver
/// otherwise.
pub fn cmd_spectrum(args: &SpectrumArgs) -> Result<()> {
    validate_hbar(args.sys.hbar)?;
    let pot = build_potential(&args.sys.potential, &args.sys.params, &args.sys.table)?;
    let n = args.n;
    if n == 0 {
        return Err(Error::config("need at least one level".to_string()));
    }
    let cap = capacity(&pot, args.sys.hbar)?;
    if n > cap.bound_levels {
        return Err(Error::Capacity { requested: n, available: cap.bound_levels });
    }
    let quantized: Vec<f64> = (0..n)
        .map(|j| wkb_level(&pot, j as f64, args.sys.hbar))
        .collect::<Result<_>>()?;
    let (reference, exact): (&str, Vec<f64>) = match ReferenceFamily::of(&pot) {
        Some(family) => ("analytic", analytic_levels(family, n, args.sys.hbar)?),
        None => {
            let states = solve_box_auto(&pot, n, args.sys.hbar)?;
            ("grid_oracle", states.energies[..n].to_vec())
        }
    };
    let mut t = Table::new(&["j", "e_wkb", "e_exact", "delta_e"]);
    t.meta("potential", pot.label());
    t.meta("n", n);
    t.meta("hbar", args.sys.hbar);
    t.meta("reference", reference);
    for j in 0..n {
        t.row(vec![
            Cell::Int(j as i64),
            Cell::Real(quantized[j]),
            Cell::Real(exact[j]),
            Cell::Real(quantized[j] - exact[j]),
        ]);
    }
    write_out(&args.out.out, &t.render(args.out.format)?)
}

/// Density or kinetic-energy-density profiles, one column per method.
///
/// `default_obs` is the subcommand's observable (`density` -> particle
/// density, `ked` -> kinetic); `--observable` overrides it, and the default
/// method set follows the effective observable.
pub fn cmd_profile(args: &ProfileArgs, default_obs: Observable) -> Result<()> {
    validate_hbar(args.sys.hbar)?;
    let pot = build_potential(&args.sys.potential, &args.sys.params, &args.sys.table)?;
    let observable = match &args.observable {
        Some(s) => Observable::parse(s)?,
        None => default_obs,
    };
    let methods = match &args.methods {
        Some(s) => parse_methods(s)?,
        None => match observable {
            Observable::Number => vec![Method::Tf, Method::Uniform, Method::Exact],
            Observable::Kinetic => {
                vec![Method::Tf, Method::Uniform, Method::Exact, Method::LocalFunctional]
            }
        },
    };
    let builder = ProfileBuilder64::new(pot, args.n, args.sys.hbar)?;
    let grid = match parse_grid(&args.grid)? {
        GridSpec::Auto => builder.auto_grid(),
        GridSpec::Explicit { lo, hi, npoints } => linspace(lo, hi, npoints),
    };
    let profiles: Vec<_> = methods
        .iter()
        .map(|&m| builder.profile(m, observable, &grid))
        .collect::<Result<_>>()?;

    let mut columns = vec!["x"];
    columns.extend(methods.iter().map(|m| m.token()));
    let mut t = Table::new(&columns);
    t.meta("potential", builder.potential().label());
    t.meta("n", args.n);
    t.meta("hbar", args.sys.hbar);
    t.meta("observable", observable.token());
    t.meta("e_f", builder.fermi().e_f);
    t.meta("omega_f", builder.fermi().omega_f);
    t.meta("x_m", builder.x_m());
    for (i, &x) in grid.iter().enumerate() {
        let mut row = vec![Cell::Real(x)];
        row.extend(profiles.iter().map(|p| Cell::Real(p.values[i])));
        t.row(row);
    }
    write_out(&args.out.out, &t.render(args.out.format)?)
}

/// Integrated errors against the grid solver for every N in the scan range.
///
/// The box is diagonalized once at the largest N; smaller-N references are
/// partial occupation sums over the same states, resampled onto each N's
/// own evaluation window. Rows flag the near-capacity regime (within two
/// particles of what the well holds), where the Fermi level approaches the
/// well edge and all semiclassical errors grow.
pub fn cmd_scan(args: &ScanArgs) -> Result<()> {
    validate_hbar(args.sys.hbar)?;
    let pot = build_potential(&args.sys.potential, &args.sys.params, &args.sys.table)?;
    let (n_min, n_max) = parse_scan(&args.scan)?;
    let cap = capacity(&pot, args.sys.hbar)?;
    if n_max > cap.max_particles {
        return Err(Error::Capacity { requested: n_max, available: cap.max_particles });
    }
    let states = solve_box_auto(&pot, n_max, args.sys.hbar)?;

    let mut t = Table::new(&[
        "n",
        "eta_tf",
        "eta_uniform",
        "eta_t_tf",
        "eta_t_uniform",
        "eta_t_local",
        "near_capacity",
    ]);
    t.meta("potential", pot.label());
    t.meta("hbar", args.sys.hbar);
    t.meta("n_min", n_min);
    t.meta("n_max", n_max);
    t.meta("max_particles", cap.max_particles);
    for n in n_min..=n_max {
        let builder = ProfileBuilder64::new(pot.clone(), n, args.sys.hbar)?;
        let grid = builder.auto_grid();
        let n_tf = builder.profile(Method::Tf, Observable::Number, &grid)?;
        let n_un = builder.profile(Method::Uniform, Observable::Number, &grid)?;
        let t_tf = builder.profile(Method::Tf, Observable::Kinetic, &grid)?;
        let t_un = builder.profile(Method::Uniform, Observable::Kinetic, &grid)?;
        let t_loc = builder.profile(Method::LocalFunctional, Observable::Kinetic, &grid)?;
        let ex_n = exact_density(&states, n)?.resampled(&grid)?;
        let ex_t = exact_ked(&states, builder.potential(), n)?.resampled(&grid)?;
        let near = cap.max_particles - n <= 2;
        t.row(vec![
            Cell::Int(n as i64),
            Cell::Real(eta(&n_tf, &ex_n)?),
            Cell::Real(eta(&n_un, &ex_n)?),
            Cell::Real(eta_t(&t_tf, &ex_t)?),
            Cell::Real(eta_t(&t_un, &ex_t)?),
            Cell::Real(eta_t(&t_loc, &ex_t)?),
            Cell::Int(near as i64),
        ]);
    }
    write_out(&args.out.out, &t.render(args.out.format)?)
}

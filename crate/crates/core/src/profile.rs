//! Density profiles: a sampled observable on a grid, tagged with how it
//! was computed, plus the builder that evaluates every method the library
//! offers on a common grid.

use std::cell::{OnceCell, RefCell};

use crate::classical::{find_turning_points, mid_phase_point, phase_data};
use crate::classical::{PhaseData, Region, TurningPoints};
use crate::density::{
    allowed_limit_density, evanescent_limit_density, evanescent_limit_ked, langer_orbital,
    local_ked_functional, tf_density, tf_ked, uniform_density, uniform_ked, UniformInputs,
};
use crate::error::{Error, Result};
use crate::oracle::{exact_density, exact_ked, solve_box_auto, BoundStateSet};
use crate::potential::Potential;
use crate::quantize::{spectrum, SpectrumResult};
use crate::real::Real;
use crate::spline::CubicSpline;

/// Which physical field a profile samples.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Observable {
    /// Particle density n(x).
    Number,
    /// Kinetic energy density t(x).
    Kinetic,
}

impl Observable {
    pub fn token(self) -> &'static str {
        match self {
            Observable::Number => "density",
            Observable::Kinetic => "ked",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "density" => Ok(Observable::Number),
            "ked" => Ok(Observable::Kinetic),
            other => Err(Error::config(format!(
                "unknown observable {other:?} (expected density or ked)"
            ))),
        }
    }
}

/// How a profile's values were produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    /// Local classical phase-space fill: p_F / (pi hbar), zero outside the
    /// turning points.
    Tf,
    /// The uniform semiclassical expression, finite through the turning
    /// points and decaying into the forbidden regions.
    Uniform,
    /// Interior limit of the uniform expression: classical term plus a
    /// Friedel-type oscillation.
    AllowedLimit,
    /// Deep-forbidden limit of the uniform expression: bare exponential
    /// decay envelopes.
    EvanescentLimit,
    /// Grid diagonalization of the boxed well.
    Exact,
    /// Occupied-orbital sum over turning-point-regularized WKB orbitals.
    LangerSum,
    /// The local functional pi^2 hbar^2 n^3 / 6 applied to the uniform
    /// density (kinetic observable only).
    LocalFunctional,
}

impl Method {
    pub const ALL: [Method; 7] = [
        Method::Tf,
        Method::Uniform,
        Method::AllowedLimit,
        Method::EvanescentLimit,
        Method::Exact,
        Method::LangerSum,
        Method::LocalFunctional,
    ];

    pub fn token(self) -> &'static str {
        match self {
            Method::Tf => "tf",
            Method::Uniform => "uniform",
            Method::AllowedLimit => "allowed_limit",
            Method::EvanescentLimit => "evanescent_limit",
            Method::Exact => "exact",
            Method::LangerSum => "langer_sum",
            Method::LocalFunctional => "local_functional",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Method::ALL
            .iter()
            .copied()
            .find(|m| m.token() == s)
            .ok_or_else(|| {
                let names: Vec<_> = Method::ALL.iter().map(|m| m.token()).collect();
                Error::config(format!(
                    "unknown method {s:?} (expected one of {})",
                    names.join(", ")
                ))
            })
    }
}

/// An observable sampled on a grid.
#[derive(Clone, Debug)]
pub struct DensityProfile<T> {
    pub grid: Vec<T>,
    pub values: Vec<T>,
    pub observable: Observable,
    pub method: Method,
    /// Particle number the profile describes.
    pub n: usize,
    pub hbar: T,
    /// Label of the potential, e.g. `morse(D=15, a=0.25)`.
    pub potential: String,
}

impl<T: Real> DensityProfile<T> {
    /// Trapezoid integral of the values over the grid.
    pub fn integrate(&self) -> T {
        trapezoid(&self.grid, &self.values)
    }

    /// The same observable interpolated onto another grid with a natural
    /// cubic spline. Queries beyond the original span extrapolate linearly,
    /// so the new grid should stay inside the old one.
    pub fn resampled(&self, grid: &[T]) -> Result<DensityProfile<T>> {
        let spline = CubicSpline::new(self.grid.clone(), self.values.clone())?;
        Ok(DensityProfile {
            grid: grid.to_vec(),
            values: grid.iter().map(|&x| spline.eval(x)).collect(),
            observable: self.observable,
            method: self.method,
            n: self.n,
            hbar: self.hbar,
            potential: self.potential.clone(),
        })
    }
}

/// Trapezoid rule on a (possibly nonuniform) grid.
pub(crate) fn trapezoid<T: Real>(x: &[T], y: &[T]) -> T {
    let mut acc = T::zero();
    for i in 1..x.len() {
        acc += (x[i] - x[i - 1]) * (y[i] + y[i - 1]) / T::rf(2.0);
    }
    acc
}

/// Evaluates any [`Method`] for one system (potential, N, hbar) on shared
/// classical data.
///
/// The Fermi-level quantities, turning points and phase midpoint are
/// computed once at construction; the per-point phase data are computed
/// once per grid and shared between methods, and the exact diagonalization
/// is solved lazily on first use and cached.
pub struct ProfileBuilder<T: Real> {
    pot: Potential<T>,
    n: usize,
    hbar: T,
    fermi: SpectrumResult<T>,
    x_m: T,
    tps: TurningPoints<T>,
    exact: OnceCell<BoundStateSet<T>>,
    phases: RefCell<Option<(Vec<T>, Vec<PhaseData<T>>)>>,
}

impl<T: Real> ProfileBuilder<T> {
    pub fn new(pot: Potential<T>, n: usize, hbar: T) -> Result<Self> {
        let fermi = spectrum(&pot, n, hbar)?;
        let x_m = mid_phase_point(&pot, fermi.e_f, n, hbar)?;
        let tps = find_turning_points(&pot, fermi.e_f)?;
        Ok(ProfileBuilder {
            pot,
            n,
            hbar,
            fermi,
            x_m,
            tps,
            exact: OnceCell::new(),
            phases: RefCell::new(None),
        })
    }

    pub fn potential(&self) -> &Potential<T> {
        &self.pot
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn hbar(&self) -> T {
        self.hbar
    }

    /// Levels and Fermi data of the system.
    pub fn fermi(&self) -> &SpectrumResult<T> {
        &self.fermi
    }

    /// The phase midpoint separating the two turning-point anchors.
    pub fn x_m(&self) -> T {
        self.x_m
    }

    /// Turning points at the Fermi level.
    pub fn turning_points(&self) -> &TurningPoints<T> {
        &self.tps
    }

    /// Default evaluation grid: 2001 points spanning the well plus eight
    /// Airy lengths `l = (hbar^2/|v'|)^(1/3)` past each turning point,
    /// which reaches z of about -8 into either forbidden tail.
    pub fn auto_grid(&self) -> Vec<T> {
        let ell = |slope: T| (self.hbar * self.hbar / slope.abs()).powf(T::one() / T::rf(3.0));
        let lo = self.tps.x_minus - T::rf(8.0) * ell(self.pot.v_prime(self.tps.x_minus));
        let hi = self.tps.x_plus + T::rf(8.0) * ell(self.pot.v_prime(self.tps.x_plus));
        let m = 2001;
        (0..m)
            .map(|i| lo + (hi - lo) * T::rf(i as f64) / T::rf((m - 1) as f64))
            .collect()
    }

    /// The cached exact diagonalization, solved on first use.
    pub fn exact_states(&self) -> Result<&BoundStateSet<T>> {
        if let Some(states) = self.exact.get() {
            return Ok(states);
        }
        let states = solve_box_auto(&self.pot, self.n, self.hbar)?;
        let _ = self.exact.set(states);
        Ok(self.exact.get().expect("cache was just filled"))
    }

    fn phases(&self, grid: &[T]) -> Result<Vec<PhaseData<T>>> {
        {
            let cache = self.phases.borrow();
            if let Some((cached_grid, cached)) = cache.as_ref() {
                if cached_grid.len() == grid.len()
                    && cached_grid.iter().zip(grid.iter()).all(|(a, b)| a == b)
                {
                    return Ok(cached.clone());
                }
            }
        }
        let computed = grid
            .iter()
            .map(|&x| phase_data(&self.pot, self.fermi.e_f, self.fermi.omega_f, self.x_m, x, self.hbar))
            .collect::<Result<Vec<_>>>()?;
        *self.phases.borrow_mut() = Some((grid.to_vec(), computed.clone()));
        Ok(computed)
    }

    /// Evaluate one method on a grid.
    ///
    /// The two limit methods return zero outside their regions of validity,
    /// so their profiles are plottable alongside the others. The local
    /// functional and the interior limit are each defined for only one
    /// observable; asking for the other is a configuration error.
    pub fn profile(
        &self,
        method: Method,
        observable: Observable,
        grid: &[T],
    ) -> Result<DensityProfile<T>> {
        let values: Vec<T> = match method {
            Method::Exact => {
                let states = self.exact_states()?;
                let big = match observable {
                    Observable::Number => exact_density(states, self.n)?,
                    Observable::Kinetic => exact_ked(states, &self.pot, self.n)?,
                };
                return big.resampled(grid);
            }
            Method::LangerSum => {
                let mut acc = vec![T::zero(); grid.len()];
                for j in 0..self.n {
                    let phi = langer_orbital(&self.pot, j, self.hbar, grid)?;
                    let e_j = self.fermi.levels[j];
                    for ((a, &p), &x) in acc.iter_mut().zip(phi.iter()).zip(grid.iter()) {
                        match observable {
                            Observable::Number => *a += p * p,
                            Observable::Kinetic => *a += (e_j - self.pot.v(x)) * p * p,
                        }
                    }
                }
                acc
            }
            Method::Tf => {
                let phases = self.phases(grid)?;
                phases
                    .iter()
                    .map(|ph| match observable {
                        Observable::Number => tf_density(ph, self.hbar),
                        Observable::Kinetic => tf_ked(ph, self.hbar),
                    })
                    .collect()
            }
            Method::Uniform => {
                let phases = self.phases(grid)?;
                phases
                    .iter()
                    .map(|ph| {
                        let inp = UniformInputs::new(*ph, self.hbar)?;
                        let n_sc = uniform_density(&inp)?;
                        match observable {
                            Observable::Number => Ok(n_sc),
                            Observable::Kinetic => uniform_ked(&inp, n_sc),
                        }
                    })
                    .collect::<Result<Vec<_>>>()?
            }
            Method::AllowedLimit => {
                if observable == Observable::Kinetic {
                    return Err(Error::config(
                        "the interior limit is defined for the particle density only".to_string(),
                    ));
                }
                let phases = self.phases(grid)?;
                phases
                    .iter()
                    .map(|ph| match ph.region {
                        Region::Allowed => allowed_limit_density(ph, self.hbar),
                        _ => Ok(T::zero()),
                    })
                    .collect::<Result<Vec<_>>>()?
            }
            Method::EvanescentLimit => {
                let phases = self.phases(grid)?;
                phases
                    .iter()
                    .map(|ph| match ph.region {
                        Region::Allowed => Ok(T::zero()),
                        _ => match observable {
                            Observable::Number => evanescent_limit_density(ph, self.hbar),
                            Observable::Kinetic => evanescent_limit_ked(ph, self.hbar),
                        },
                    })
                    .collect::<Result<Vec<_>>>()?
            }
            Method::LocalFunctional => {
                if observable == Observable::Number {
                    return Err(Error::config(
                        "the local functional maps a density to kinetic energy; request ked"
                            .to_string(),
                    ));
                }
                let phases = self.phases(grid)?;
                phases
                    .iter()
                    .map(|ph| {
                        let inp = UniformInputs::new(*ph, self.hbar)?;
                        let n_sc = uniform_density(&inp)?;
                        local_ked_functional(n_sc, self.hbar)
                    })
                    .collect::<Result<Vec<_>>>()?
            }
        };
        Ok(DensityProfile {
            grid: grid.to_vec(),
            values,
            observable,
            method,
            n: self.n,
            hbar: self.hbar,
            potential: self.pot.label().to_string(),
        })
    }
}

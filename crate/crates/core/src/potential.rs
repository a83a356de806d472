//! Confining potentials: four analytic families plus tabulated data.
//!
//! Every potential carries a search window, the interval scanned for
//! classical turning points and used to bracket bound-state energies. The
//! defaults are generous (the potential must be essentially flat or
//! strongly confining at the edges); callers with unusual needs can
//! override them with [`Potential::with_window`].

use crate::error::{Error, Result};
use crate::real::Real;
use crate::spline::CubicSpline;

/// A one-dimensional well `v(x)` with an analytic derivative.
#[derive(Clone, Debug)]
pub struct Potential<T: Real> {
    form: Form<T>,
    window: (T, T),
    label: String,
}

#[derive(Clone, Debug)]
pub(crate) enum Form<T: Real> {
    /// `D (e^(-2ax) - 2 e^(-ax))`: depth `D`, minimum at 0, dissociates to 0.
    Morse { d: T, a: T },
    /// `k x^2 / 2`.
    Harmonic { k: T },
    /// `c x^4`.
    Quartic { c: T },
    /// `-V0 sech^2(ax)`: depth `V0`, zero at infinity.
    RosenMorse { v0: T, a: T },
    /// Cubic-spline interpolant of sampled data.
    Tabulated(CubicSpline<T>),
}

fn positive<T: Real>(value: T, name: &str) -> Result<T> {
    if value.lower() > 0.0 && value.lower().is_finite() {
        Ok(value)
    } else {
        Err(Error::config(format!("{name} must be positive and finite, got {}", value.lower())))
    }
}

impl<T: Real> Potential<T> {
    pub fn morse(d: T, a: T) -> Result<Self> {
        let d = positive(d, "D")?;
        let a = positive(a, "a")?;
        // Left edge: v(-4 ln2 / a) is already many well depths up the inner
        // wall. Right edge: where the tail has decayed to 1e-9 of the depth,
        // v = -1e-9 D at e^(-ax) ~ 5e-10.
        let lo = -T::rf(4.0) * T::rf(2.0).ln() / a;
        let hi = T::rf(2.0e9).ln() / a;
        Ok(Potential {
            form: Form::Morse { d, a },
            window: (lo, hi),
            label: format!("morse(D={}, a={})", d, a),
        })
    }

    pub fn harmonic(k: T) -> Result<Self> {
        let k = positive(k, "k")?;
        // Symmetric window from an energy bound: +-40 k^(-1/4) keeps
        // v(edge) = 800 sqrt(k), far above any energy this library quantizes.
        let l = T::rf(40.0) / k.powf(T::rf(0.25));
        Ok(Potential {
            form: Form::Harmonic { k },
            window: (-l, l),
            label: format!("harmonic(k={})", k),
        })
    }

    pub fn quartic(c: T) -> Result<Self> {
        let c = positive(c, "c")?;
        // v(edge) = 20736 c^(1/3) at +-12 c^(-1/6).
        let l = T::rf(12.0) / c.powf(T::rf(1.0) / T::rf(6.0));
        Ok(Potential {
            form: Form::Quartic { c },
            window: (-l, l),
            label: format!("quartic(c={})", c),
        })
    }

    pub fn rosen_morse(v0: T, a: T) -> Result<Self> {
        let v0 = positive(v0, "V0")?;
        let a = positive(a, "a")?;
        // sech^2(11.05) ~ 1e-9: the well is numerically flat past +-11.05/a.
        let l = T::rf(11.05) / a;
        Ok(Potential {
            form: Form::RosenMorse { v0, a },
            window: (-l, l),
            label: format!("rosen_morse(V0={}, a={})", v0, a),
        })
    }

    /// Build from sampled `(x, v)` pairs; at least 16 points, strictly
    /// increasing in `x`. The window is the sampled range.
    pub fn tabulated(x: Vec<T>, v: Vec<T>) -> Result<Self> {
        if x.len() < 16 {
            return Err(Error::config(format!(
                "tabulated potential needs at least 16 points, got {}",
                x.len()
            )));
        }
        let n = x.len();
        let window = (x[0], x[n - 1]);
        let label = format!("tabulated({n} points)");
        let spline = CubicSpline::new(x, v)?;
        Ok(Potential {
            form: Form::Tabulated(spline),
            window,
            label,
        })
    }

    /// Parse two-column whitespace-separated text: `x v` per line, `#`
    /// starts a comment, blank lines ignored.
    pub fn tabulated_from_text(text: &str) -> Result<Self> {
        let mut xs = Vec::new();
        let mut vs = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut cols = line.split_whitespace();
            let (Some(xs_str), Some(vs_str)) = (cols.next(), cols.next()) else {
                return Err(Error::config(format!("line {}: expected two columns", lineno + 1)));
            };
            if cols.next().is_some() {
                return Err(Error::config(format!("line {}: expected two columns", lineno + 1)));
            }
            let x: f64 = xs_str
                .parse()
                .map_err(|_| Error::config(format!("line {}: bad number {xs_str:?}", lineno + 1)))?;
            let v: f64 = vs_str
                .parse()
                .map_err(|_| Error::config(format!("line {}: bad number {vs_str:?}", lineno + 1)))?;
            xs.push(T::rf(x));
            vs.push(T::rf(v));
        }
        Potential::tabulated(xs, vs)
    }

    /// Replace the turning-point search window.
    pub fn with_window(mut self, lo: T, hi: T) -> Result<Self> {
        if !(lo.lower().is_finite() && hi.lower().is_finite() && lo < hi) {
            return Err(Error::config(format!(
                "window must be a finite interval, got [{}, {}]",
                lo.lower(),
                hi.lower()
            )));
        }
        self.window = (lo, hi);
        Ok(self)
    }

    /// `v(x)`.
    pub fn v(&self, x: T) -> T {
        match &self.form {
            Form::Morse { d, a } => {
                let y = (-*a * x).exp();
                *d * (y * y - T::rf(2.0) * y)
            }
            Form::Harmonic { k } => *k * x * x / T::rf(2.0),
            Form::Quartic { c } => *c * x * x * x * x,
            Form::RosenMorse { v0, a } => {
                let s = T::one() / (*a * x).cosh();
                -*v0 * s * s
            }
            Form::Tabulated(sp) => sp.eval(x),
        }
    }

    /// `v'(x)`.
    pub fn v_prime(&self, x: T) -> T {
        match &self.form {
            Form::Morse { d, a } => {
                let y = (-*a * x).exp();
                T::rf(2.0) * *a * *d * (y - y * y)
            }
            Form::Harmonic { k } => *k * x,
            Form::Quartic { c } => T::rf(4.0) * *c * x * x * x,
            Form::RosenMorse { v0, a } => {
                let ax = *a * x;
                let s = T::one() / ax.cosh();
                T::rf(2.0) * *v0 * *a * s * s * ax.tanh()
            }
            Form::Tabulated(sp) => sp.deriv(x),
        }
    }

    /// The turning-point search window `(lo, hi)`.
    pub fn window(&self) -> (T, T) {
        self.window
    }

    /// Family name: `morse`, `harmonic`, `quartic`, `rosen_morse`, `tabulated`.
    pub fn name(&self) -> &'static str {
        match &self.form {
            Form::Morse { .. } => "morse",
            Form::Harmonic { .. } => "harmonic",
            Form::Quartic { .. } => "quartic",
            Form::RosenMorse { .. } => "rosen_morse",
            Form::Tabulated(_) => "tabulated",
        }
    }

    /// Human-readable name with parameters, e.g. `morse(D=15, a=0.25)`.
    pub fn label(&self) -> &str {
        &self.label
    }

    pub(crate) fn form(&self) -> &Form<T> {
        &self.form
    }

    /// Location and value of the well minimum.
    ///
    /// Analytic for the four families; a scan plus golden-section refinement
    /// for tabulated data.
    pub fn well_minimum(&self) -> (T, T) {
        match &self.form {
            Form::Morse { d, .. } => (T::zero(), -*d),
            Form::Harmonic { .. } | Form::Quartic { .. } => (T::zero(), T::zero()),
            Form::RosenMorse { v0, .. } => (T::zero(), -*v0),
            Form::Tabulated(_) => self.scan_minimum(),
        }
    }

    /// The lower of the two window-edge values: the energy above which the
    /// well no longer confines (for open wells like Morse this is the
    /// dissociation threshold, up to the window's tail truncation).
    pub fn edge_energy(&self) -> T {
        let (lo, hi) = self.window;
        self.v(lo).min(self.v(hi))
    }

    fn scan_minimum(&self) -> (T, T) {
        let (lo, hi) = self.window;
        let n = 2048;
        let h = (hi - lo) / T::rf(n as f64);
        let mut best_i = 0;
        let mut best = self.v(lo);
        for i in 1..=n {
            let x = lo + h * T::rf(i as f64);
            let vx = self.v(x);
            if vx < best {
                best = vx;
                best_i = i;
            }
        }
        if best_i == 0 || best_i == n {
            let x = if best_i == 0 { lo } else { hi };
            return (x, best);
        }
        // Golden-section on the bracketing triple.
        let g = T::rf(0.381_966_011_250_105_2);
        let mut a = lo + h * T::rf((best_i - 1) as f64);
        let mut b = lo + h * T::rf((best_i + 1) as f64);
        let mut x1 = a + g * (b - a);
        let mut x2 = b - g * (b - a);
        let mut f1 = self.v(x1);
        let mut f2 = self.v(x2);
        for _ in 0..80 {
            if f1 < f2 {
                b = x2;
                x2 = x1;
                f2 = f1;
                x1 = a + g * (b - a);
                f1 = self.v(x1);
            } else {
                a = x1;
                x1 = x2;
                f1 = f2;
                x2 = b - g * (b - a);
                f2 = self.v(x2);
            }
            if (b - a).lower() < 1e-13 * (1.0 + a.lower().abs()) {
                break;
            }
        }
        let xm = (a + b) / T::rf(2.0);
        (xm, self.v(xm))
    }
}

/// Build a potential from a family name and `(key, value)` parameters.
///
/// The key set must match the family exactly: `morse` takes `D` and `a`,
/// `harmonic` takes `k`, `quartic` takes `c`, `rosen_morse` takes `V0` and
/// `a`. Tabulated potentials are built via [`Potential::tabulated_from_text`]
/// instead, since they come from a file, not parameters.
pub fn make_potential<T: Real>(name: &str, params: &[(String, T)]) -> Result<Potential<T>> {
    let get = |key: &str| -> Result<T> {
        params
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| *v)
            .ok_or_else(|| Error::config(format!("{name} requires parameter {key}")))
    };
    let expect_keys = |keys: &[&str]| -> Result<()> {
        for (k, _) in params {
            if !keys.contains(&k.as_str()) {
                return Err(Error::config(format!("unknown parameter {k} for {name}")));
            }
        }
        Ok(())
    };
    match name {
        "morse" => {
            expect_keys(&["D", "a"])?;
            Potential::morse(get("D")?, get("a")?)
        }
        "harmonic" => {
            expect_keys(&["k"])?;
            Potential::harmonic(get("k")?)
        }
        "quartic" => {
            expect_keys(&["c"])?;
            Potential::quartic(get("c")?)
        }
        "rosen_morse" => {
            expect_keys(&["V0", "a"])?;
            Potential::rosen_morse(get("V0")?, get("a")?)
        }
        other => Err(Error::config(format!(
            "unknown potential family {other:?} (expected morse, harmonic, quartic, or rosen_morse)"
        ))),
    }
}

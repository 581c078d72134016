//! Analytic scalar and vector fields with closed-form curls, used for
//! boundary data and error norms.
//!
//! Curl conventions in 2D: `curl F = (∂F/∂y, -∂F/∂x)` for a scalar `F`, and
//! `curl E = ∂E_y/∂x - ∂E_x/∂y` for a vector `E`.

pub trait ScalarField: Sync {
    fn value(&self, x: f64, y: f64) -> f64;
    fn curl(&self, x: f64, y: f64) -> [f64; 2];
}

pub trait VectorField: Sync {
    fn value(&self, x: f64, y: f64) -> [f64; 2];
    fn curl(&self, x: f64, y: f64) -> f64;

    /// Tangential trace `n × E = n_x E_y - n_y E_x`.
    fn tangential(&self, x: f64, y: f64, normal: [f64; 2]) -> f64 {
        let [ex, ey] = self.value(x, y);
        normal[0] * ey - normal[1] * ex
    }
}

/// `F = e^x + e^y`, a solution of `curl curl F + F = 0`.
#[derive(Debug, Clone, Copy, Default)]
pub struct ExpScalarField;

impl ScalarField for ExpScalarField {
    fn value(&self, x: f64, y: f64) -> f64 {
        x.exp() + y.exp()
    }

    fn curl(&self, x: f64, y: f64) -> [f64; 2] {
        [y.exp(), -x.exp()]
    }
}

/// `E = (e^y, -e^x) = curl(e^x + e^y)`.
#[derive(Debug, Clone, Copy, Default)]
pub struct ExpVectorField;

impl VectorField for ExpVectorField {
    fn value(&self, x: f64, y: f64) -> [f64; 2] {
        [y.exp(), -x.exp()]
    }

    fn curl(&self, x: f64, y: f64) -> f64 {
        -x.exp() - y.exp()
    }
}

/// `H(curl)` norm of `e^x + e^y` on `[-1, 1]²`: `sqrt(8 (sinh 2 + sinh² 1))`.
pub fn exp_field_norm() -> f64 {
    let s1 = 1f64.sinh();
    (8.0 * (2f64.sinh() + s1 * s1)).sqrt()
}

/// One plane-wave mode `amplitude · sin(wave · (x, y) + phase)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrigMode {
    pub amplitude: [f64; 2],
    pub wave: [f64; 2],
    pub phase: f64,
}

/// Smooth vector field built from a sum of plane-wave modes.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct TrigVectorField {
    pub modes: Vec<TrigMode>,
}

impl TrigVectorField {
    pub fn new(modes: Vec<TrigMode>) -> Self {
        Self { modes }
    }
}

impl VectorField for TrigVectorField {
    fn value(&self, x: f64, y: f64) -> [f64; 2] {
        self.modes.iter().fold([0.0, 0.0], |[ax, ay], m| {
            let s = (m.wave[0] * x + m.wave[1] * y + m.phase).sin();
            [ax + m.amplitude[0] * s, ay + m.amplitude[1] * s]
        })
    }

    fn curl(&self, x: f64, y: f64) -> f64 {
        self.modes
            .iter()
            .map(|m| {
                let c = (m.wave[0] * x + m.wave[1] * y + m.phase).cos();
                c * (m.amplitude[1] * m.wave[0] - m.amplitude[0] * m.wave[1])
            })
            .sum()
    }
}

/// Tensor-product polynomial `Σ c[a][b] x^a y^b`.
#[derive(Debug, Clone, PartialEq)]
pub struct PolynomialScalarField {
    /// `coeffs[a][b]` multiplies `x^a y^b`
    pub coeffs: Vec<Vec<f64>>,
}

impl PolynomialScalarField {
    fn eval_with(&self, x: f64, y: f64, dx: bool, dy: bool) -> f64 {
        let mut acc = 0.0;
        for (a, row) in self.coeffs.iter().enumerate() {
            for (b, &c) in row.iter().enumerate() {
                let (fa, pa) = mono(a, x, dx);
                let (fb, pb) = mono(b, y, dy);
                acc += c * fa * fb * pa * pb;
            }
        }
        acc
    }

    /// `curl curl F = -ΔF`
    pub fn curl_curl(&self, x: f64, y: f64) -> f64 {
        let mut acc = 0.0;
        for (a, row) in self.coeffs.iter().enumerate() {
            for (b, &c) in row.iter().enumerate() {
                if a >= 2 {
                    acc -= c * (a * (a - 1)) as f64 * x.powi(a as i32 - 2) * y.powi(b as i32);
                }
                if b >= 2 {
                    acc -= c * (b * (b - 1)) as f64 * x.powi(a as i32) * y.powi(b as i32 - 2);
                }
            }
        }
        acc
    }
}

/// `(factor, power)` for `x^k` or its derivative.
fn mono(k: usize, x: f64, deriv: bool) -> (f64, f64) {
    if !deriv {
        (1.0, x.powi(k as i32))
    } else if k == 0 {
        (0.0, 0.0)
    } else {
        (k as f64, x.powi(k as i32 - 1))
    }
}

impl ScalarField for PolynomialScalarField {
    fn value(&self, x: f64, y: f64) -> f64 {
        self.eval_with(x, y, false, false)
    }

    fn curl(&self, x: f64, y: f64) -> [f64; 2] {
        [self.eval_with(x, y, false, true), -self.eval_with(x, y, true, false)]
    }
}

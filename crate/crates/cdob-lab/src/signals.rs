//! LTI plumbing shared by the plant, the CDOB and the controller: state-space
//! to transfer-function conversion, Tustin discretization, stateful filtering,
//! integer-sample delay lines and the proper inverse product Q*Gn^-1.
//!
//! Polynomials are coefficient vectors in descending powers of s (or z).
//! Denominators are kept monic.

use crate::{Error, Result};
use nalgebra::DMatrix;
use num_complex::Complex64;

/// Continuous-time state-space model x' = Ax + Bu, y = Cx + Du.
#[derive(Debug, Clone)]
pub struct LtiModel {
    pub a: DMatrix<f64>,
    pub b: DMatrix<f64>,
    pub c: DMatrix<f64>,
    pub d: DMatrix<f64>,
}

impl LtiModel {
    pub fn new(a: DMatrix<f64>, b: DMatrix<f64>, c: DMatrix<f64>, d: DMatrix<f64>) -> Self {
        let n = a.nrows();
        assert_eq!(a.ncols(), n, "A must be square");
        assert_eq!(b.nrows(), n, "B row count must match A");
        assert_eq!(c.ncols(), n, "C column count must match A");
        assert_eq!(d.nrows(), c.nrows(), "D rows must match C rows");
        assert_eq!(d.ncols(), b.ncols(), "D cols must match B cols");
        assert!(
            a.iter().chain(b.iter()).chain(c.iter()).chain(d.iter()).all(|v| v.is_finite()),
            "matrix entries must be finite"
        );
        Self { a, b, c, d }
    }

    pub fn order(&self) -> usize {
        self.a.nrows()
    }
}

/// Rational transfer function in s, monic denominator, descending coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalTf {
    pub num: Vec<f64>,
    pub den: Vec<f64>,
}

impl RationalTf {
    /// Normalizes the denominator to be monic and trims leading zeros.
    pub fn new(num: Vec<f64>, den: Vec<f64>) -> Self {
        let den = poly_trim(&den);
        assert!(!den.is_empty() && den[0] != 0.0, "denominator must be nonzero");
        let lead = den[0];
        let den: Vec<f64> = den.iter().map(|c| c / lead).collect();
        let num: Vec<f64> = poly_trim(&num).iter().map(|c| c / lead).collect();
        let num = if num.is_empty() { vec![0.0] } else { num };
        Self { num, den }
    }

    pub fn num_degree(&self) -> usize {
        self.num.len() - 1
    }

    pub fn den_degree(&self) -> usize {
        self.den.len() - 1
    }

    /// Pole excess: deg(den) - deg(num). Zero means biproper.
    pub fn relative_degree(&self) -> isize {
        self.den_degree() as isize - self.num_degree() as isize
    }

    /// Frequency response at s = jw.
    pub fn eval(&self, s: Complex64) -> Complex64 {
        poly_eval_complex(&self.num, s) / poly_eval_complex(&self.den, s)
    }

    /// DC gain num(0)/den(0).
    pub fn dc_gain(&self) -> f64 {
        self.num.last().unwrap() / self.den.last().unwrap()
    }
}

/// Removes leading (highest-power) zero coefficients.
pub fn poly_trim(p: &[f64]) -> Vec<f64> {
    let start = p.iter().position(|&c| c != 0.0).unwrap_or(p.len());
    p[start..].to_vec()
}

pub fn poly_mul(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

pub fn poly_add(a: &[f64], b: &[f64]) -> Vec<f64> {
    let n = a.len().max(b.len());
    let mut out = vec![0.0; n];
    for (i, &x) in a.iter().enumerate() {
        out[n - a.len() + i] += x;
    }
    for (i, &y) in b.iter().enumerate() {
        out[n - b.len() + i] += y;
    }
    out
}

pub fn poly_eval(p: &[f64], x: f64) -> f64 {
    p.iter().fold(0.0, |acc, &c| acc * x + c)
}

pub fn poly_eval_complex(p: &[f64], s: Complex64) -> Complex64 {
    p.iter().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * s + c)
}

/// Roots of a polynomial via companion-matrix eigenvalues. Trailing zero
/// coefficients are deflated first so roots at the origin come out exact.
pub fn poly_roots(p: &[f64]) -> Vec<Complex64> {
    let mut p = poly_trim(p);
    let mut roots = Vec::new();
    while p.len() > 1 && *p.last().unwrap() == 0.0 {
        roots.push(Complex64::new(0.0, 0.0));
        p.pop();
    }
    if p.len() <= 1 {
        return roots;
    }
    let n = p.len() - 1;
    let lead = p[0];
    let mut comp = DMatrix::<f64>::zeros(n, n);
    for i in 1..n {
        comp[(i, i - 1)] = 1.0;
    }
    for j in 0..n {
        comp[(0, j)] = -p[j + 1] / lead;
    }
    roots.extend(comp.complex_eigenvalues().iter().copied());
    roots
}

/// SISO channel of a state-space model as a rational transfer function,
/// computed with the Faddeev-LeVerrier recursion.
pub fn tf_from_state_space(m: &LtiModel, input_idx: usize, output_idx: usize) -> RationalTf {
    let n = m.order();
    assert!(input_idx < m.b.ncols() && output_idx < m.c.nrows());
    let b = m.b.column(input_idx);
    let c = m.c.row(output_idx);
    let d = m.d[(output_idx, input_idx)];

    let ident = DMatrix::<f64>::identity(n, n);
    let mut mk = ident.clone();
    let mut den = Vec::with_capacity(n + 1);
    den.push(1.0);
    // num coefficient of s^{n-1-k} is c * M_{k+1} * b
    let mut num = Vec::with_capacity(n);
    for k in 1..=n {
        num.push((&c * &mk * b)[(0, 0)]);
        let am = &m.a * &mk;
        let ck = -am.trace() / k as f64;
        den.push(ck);
        mk = am + ck * &ident;
    }
    let num = poly_add(&num, &poly_mul(&[d], &den));
    // structural zeros of A come out as ~1e-13 recursion residue; scrub them
    let scrub = |mut p: Vec<f64>| -> Vec<f64> {
        let m = p.iter().fold(0.0f64, |a, &c| a.max(c.abs()));
        for c in p.iter_mut() {
            if c.abs() < 1e-12 * m {
                *c = 0.0;
            }
        }
        p
    };
    RationalTf::new(scrub(num), scrub(den))
}

/// Poles and zeros as (poles, zeros).
pub fn poles_zeros(tf: &RationalTf) -> (Vec<Complex64>, Vec<Complex64>) {
    (poly_roots(&tf.den), poly_roots(&tf.num))
}

/// Q*Gn^-1 = (q.num*gn.den)/(q.den*gn.num), rejecting non-minimum-phase
/// plants and Q filters of insufficient order.
pub fn proper_inverse_product(q: &RationalTf, gn: &RationalTf) -> Result<RationalTf> {
    let zeros = poly_roots(&gn.num);
    let bad: Vec<Complex64> = zeros.iter().copied().filter(|z| z.re >= -1e-9).collect();
    if !bad.is_empty() {
        return Err(Error::NonMinimumPhase(bad));
    }
    let q_excess = q.relative_degree();
    let rel = gn.relative_degree();
    if q_excess < rel {
        return Err(Error::ImproperResult {
            q_excess: q_excess.max(0) as usize,
            rel_degree: rel.max(0) as usize,
        });
    }
    Ok(RationalTf::new(
        poly_mul(&q.num, &gn.den),
        poly_mul(&q.den, &gn.num),
    ))
}

/// Direct-form II transposed digital filter obtained from a continuous
/// transfer function by the Tustin transform.
#[derive(Debug, Clone)]
pub struct DiscreteFilter {
    /// Numerator coefficients b0..bn in z^-1.
    b: Vec<f64>,
    /// Denominator coefficients a0..an in z^-1, a0 = 1.
    a: Vec<f64>,
    state: Vec<f64>,
    pub dt: f64,
}

impl DiscreteFilter {
    /// Response of the recursion at a point z in the z-plane.
    pub fn eval_z(&self, z: Complex64) -> Complex64 {
        let zi = 1.0 / z;
        let mut num = Complex64::new(0.0, 0.0);
        let mut den = Complex64::new(0.0, 0.0);
        for (k, &c) in self.b.iter().enumerate() {
            num += c * zi.powu(k as u32);
        }
        for (k, &c) in self.a.iter().enumerate() {
            den += c * zi.powu(k as u32);
        }
        num / den
    }

    /// Poles of the discrete recursion.
    pub fn poles(&self) -> Vec<Complex64> {
        poly_roots(&self.a)
    }

    pub fn reset(&mut self) {
        self.state.iter_mut().for_each(|s| *s = 0.0);
    }

    /// Advances the filter by one sample.
    pub fn step(&mut self, u: f64) -> f64 {
        let y = self.b[0] * u + self.state.first().copied().unwrap_or(0.0);
        let n = self.state.len();
        for i in 0..n {
            let next = if i + 1 < n { self.state[i + 1] } else { 0.0 };
            self.state[i] = self.b[i + 1] * u + next - self.a[i + 1] * y;
        }
        y
    }
}

/// Tustin (bilinear) discretization, s -> (2/dt)(z-1)/(z+1). DC-exact.
pub fn discretize_bilinear(tf: &RationalTf, dt: f64) -> Result<DiscreteFilter> {
    assert!(dt > 0.0, "dt must be positive");
    if tf.relative_degree() < 0 {
        return Err(Error::ImproperTf);
    }
    let n = tf.den_degree();
    let k = 2.0 / dt;
    // pad numerator to the denominator degree
    let mut num = vec![0.0; n + 1 - tf.num.len()];
    num.extend_from_slice(&tf.num);

    // (1 - z^-1)^i (1 + z^-1)^(n-i) expanded in ascending powers of z^-1,
    // weighted by coefficient * k^i where i is the power of s.
    let expand = |coeffs: &[f64]| -> Vec<f64> {
        let mut out = vec![0.0; n + 1];
        for (idx, &c) in coeffs.iter().enumerate() {
            let i = n - idx; // power of s for this coefficient
            let w = c * k.powi(i as i32);
            let mut poly = vec![1.0];
            for _ in 0..i {
                poly = conv(&poly, &[1.0, -1.0]);
            }
            for _ in 0..(n - i) {
                poly = conv(&poly, &[1.0, 1.0]);
            }
            for (j, &p) in poly.iter().enumerate() {
                out[j] += w * p;
            }
        }
        out
    };

    let bz = expand(&num);
    let az = expand(&tf.den);
    let a0 = az[0];
    assert!(a0 != 0.0, "degenerate Tustin denominator");
    let b: Vec<f64> = bz.iter().map(|c| c / a0).collect();
    let a: Vec<f64> = az.iter().map(|c| c / a0).collect();
    Ok(DiscreteFilter {
        state: vec![0.0; n],
        b,
        a,
        dt,
    })
}

fn conv(a: &[f64], b: &[f64]) -> Vec<f64> {
    poly_mul(a, b)
}

/// Integer-sample delay line; fractional delays round half-up.
#[derive(Debug, Clone)]
pub struct DelayLine {
    buf: Vec<f64>,
    idx: usize,
    pub tau: f64,
    pub dt: f64,
}

impl DelayLine {
    pub fn new(tau: f64, dt: f64) -> Self {
        assert!(tau >= 0.0 && dt > 0.0);
        let n = (tau / dt).round() as usize;
        Self {
            buf: vec![0.0; n],
            idx: 0,
            tau,
            dt,
        }
    }

    pub fn len(&self) -> usize {
        self.buf.len()
    }

    pub fn is_empty(&self) -> bool {
        self.buf.is_empty()
    }

    /// Pushes a sample and returns the one pushed `len()` steps earlier.
    pub fn push(&mut self, u: f64) -> f64 {
        if self.buf.is_empty() {
            return u;
        }
        let out = self.buf[self.idx];
        self.buf[self.idx] = u;
        self.idx = (self.idx + 1) % self.buf.len();
        out
    }
}

//! Deterministic quadrature rules for the velocity integral.

/// Gauss–Legendre nodes and weights on [-1, 1].
///
/// Newton iteration on the Legendre polynomial with the Chebyshev-like
/// initial guess; accurate to machine precision for the node counts used
/// here (tens to a few hundred).
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 2, "need at least 2 nodes");
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        // initial guess, then Newton on P_n
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_and_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-15 {
                let (p2, d2) = legendre_and_derivative(n, x);
                dp = d2;
                x -= p2 / d2;
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
        let (_, d) = legendre_and_derivative(n, 0.0);
        weights[n / 2] = 2.0 / (d * d);
    }
    (nodes, weights)
}

fn legendre_and_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Gauss–Legendre rule mapped to [a, b].
pub fn gauss_legendre_on(n: usize, a: f64, b: f64) -> (Vec<f64>, Vec<f64>) {
    let (x, w) = gauss_legendre(n);
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    (
        x.iter().map(|&xi| mid + half * xi).collect(),
        w.iter().map(|&wi| half * wi).collect(),
    )
}

/// Result of an adaptive integration: value plus accumulated error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdaptiveResult {
    pub value: f64,
    pub error_estimate: f64,
    pub converged: bool,
}

/// Adaptive Simpson on [a, b] with relative tolerance `rel_tol`.
///
/// The recursion stops when the local Richardson error estimate is below the
/// tolerance share of the interval; `converged` is false if the depth limit
/// was hit anywhere.
pub fn adaptive_simpson<E>(
    f: &mut impl FnMut(f64) -> Result<f64, E>,
    a: f64,
    b: f64,
    rel_tol: f64,
) -> Result<AdaptiveResult, E> {
    let fa = f(a)?;
    let fm = f(0.5 * (a + b))?;
    let fb = f(b)?;
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    // scale tolerance by a first-pass magnitude estimate
    let scale = whole.abs().max(1e-300);
    let mut state = SimpsonState {
        error: 0.0,
        converged: true,
        evals: 0,
    };
    let value = simpson_recurse(
        f,
        a,
        b,
        fa,
        fm,
        fb,
        whole,
        rel_tol * scale,
        48,
        &mut state,
    )?;
    Ok(AdaptiveResult {
        value,
        error_estimate: state.error,
        converged: state.converged,
    })
}

struct SimpsonState {
    error: f64,
    converged: bool,
    evals: usize,
}

#[allow(clippy::too_many_arguments)]
fn simpson_recurse<E>(
    f: &mut impl FnMut(f64) -> Result<f64, E>,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    abs_tol: f64,
    depth: usize,
    state: &mut SimpsonState,
) -> Result<f64, E> {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm)?;
    let frm = f(rm)?;
    state.evals += 2;
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 {
        state.converged = false;
        state.error += delta.abs() / 15.0;
        return Ok(left + right + delta / 15.0);
    }
    if delta.abs() <= 15.0 * abs_tol {
        state.error += delta.abs() / 15.0;
        return Ok(left + right + delta / 15.0);
    }
    let lv = simpson_recurse(f, a, m, fa, flm, fm, left, abs_tol / 2.0, depth - 1, state)?;
    let rv = simpson_recurse(f, m, b, fm, frm, fb, right, abs_tol / 2.0, depth - 1, state)?;
    Ok(lv + rv)
}

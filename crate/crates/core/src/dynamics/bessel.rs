//! Bessel functions of the first kind for Chebyshev propagation coefficients.

/// `J_0(x), ..., J_{n_max}(x)` for `x >= 0` by Miller's backward recurrence.
///
/// The recurrence starts well above both `n_max` and `x`, where the true
/// values are negligible, and is normalised with `J_0 + 2 sum J_{2k} = 1`.
pub fn bessel_j_sequence(x: f64, n_max: usize) -> Vec<f64> {
    assert!(
        x >= 0.0 && x.is_finite(),
        "argument must be finite and non-negative"
    );
    if x == 0.0 {
        let mut out = vec![0.0; n_max + 1];
        out[0] = 1.0;
        return out;
    }
    let start = {
        let m = n_max.max(x.ceil() as usize) + 20 + (10.0 * x.cbrt()).ceil() as usize;
        m + (m % 2)
    };
    let mut vals = vec![0.0; start + 2];
    vals[start] = 1e-300;
    let mut norm = 0.0;
    for n in (1..=start).rev() {
        vals[n - 1] = 2.0 * n as f64 / x * vals[n] - vals[n + 1];
        if vals[n - 1].abs() > 1e250 {
            for v in vals[n - 1..].iter_mut() {
                *v *= 1e-250;
            }
            norm *= 1e-250;
        }
        if (n - 1) % 2 == 0 && n - 1 > 0 {
            norm += 2.0 * vals[n - 1];
        }
    }
    norm += vals[0];
    vals.truncate(n_max + 1);
    vals.iter().map(|v| v / norm).collect()
}

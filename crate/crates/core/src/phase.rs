use num_complex::Complex64;

/// `exp(i * theta)`.
#[inline]
pub(crate) fn unit_phasor(theta: f64) -> Complex64 {
    let (s, c) = theta.sin_cos();
    Complex64::new(c, s)
}

use crate::{Error, Result};

/// Terms of the theta-like sums are dropped once their magnitude falls below this.
const SERIES_CUTOFF: f64 = 1e-14;
const TAU_CUTOFF: f64 = 1e-15;

pub(crate) fn check_q(q: f64) -> Result<()> {
    if q.is_finite() && q > -1.0 && q < 1.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("crossing weight q must lie in (-1, 1), got {q}")))
    }
}

/// Bulk spectral edge `2/√(1 − q)`.
pub fn spectral_edge(q: f64) -> Result<f64> {
    check_q(q)?;
    Ok(2.0 / (1.0 - q).sqrt())
}

/// Radius of convergence `√(1 − q)/2` of `R(z, q)`, the reciprocal of the edge.
pub fn rho_g(q: f64) -> Result<f64> {
    check_q(q)?;
    Ok((1.0 - q).sqrt() / 2.0)
}

/// `Σ_{k≥0} (−1)^k q^{k(k+1)/2}`, truncated once a term drops below `cutoff`.
fn alternating_theta(q: f64, cutoff: f64) -> f64 {
    let mut sum = 0.0;
    let mut k = 0u64;
    loop {
        let term = q.powi((k * (k + 1) / 2) as i32);
        if k > 0 && term.abs() < cutoff {
            break;
        }
        sum += if k % 2 == 0 { term } else { -term };
        if term == 0.0 {
            break;
        }
        k += 1;
    }
    sum
}

/// `τ_g = √(1 − q) Σ_{k≥0} (−1)^k q^{k(k+1)/2}`, the value of `z R(z, q)` at `z = ρ_g`.
pub fn tau_g(q: f64) -> Result<f64> {
    check_q(q)?;
    Ok((1.0 - q).sqrt() * alternating_theta(q, TAU_CUTOFF))
}

/// Critical source strength `λ₁ᶜ = 1/τ_g`.
pub fn lambda_critical(q: f64) -> Result<f64> {
    Ok(1.0 / tau_g(q)?)
}

/// Closed form of `R(z, q) = Σ RT(i, q) z^{2i}` on the real branch `0 < z ≤ √(1 − q)/2`:
///
/// `R = (√(1−q)/z) Σ_{n≥0} (−1)^n q^{n(n+1)/2} u^{2n+1}`, `u = (1 − √(1 − 4z²/(1−q))) / (2z/√(1−q))`.
///
/// `u` is evaluated as `2z / (√(1−q)(1 + √(1 − 4z²/(1−q))))` to avoid cancellation at small `z`.
pub fn r_closed(z: f64, q: f64) -> Result<f64> {
    check_q(q)?;
    let radius = rho_g(q)?;
    // One rounding step past the radius is still the endpoint.
    if !(z > 0.0 && z <= radius * (1.0 + 4.0 * f64::EPSILON)) {
        return Err(Error::Domain(format!(
            "R(z, q) needs 0 < z <= sqrt(1-q)/2 = {radius}, got z = {z}"
        )));
    }
    let s = (1.0 - q).sqrt();
    let disc = (1.0 - 4.0 * z * z / (1.0 - q)).max(0.0);
    let u = 2.0 * z / (s * (1.0 + disc.sqrt()));
    if q == 0.0 {
        return Ok(u / z);
    }
    let u2 = u * u;
    let mut sum = 0.0;
    let mut power = u;
    let mut n = 0u64;
    loop {
        let term = q.powi((n * (n + 1) / 2) as i32) * power;
        if n > 0 && term.abs() < SERIES_CUTOFF {
            break;
        }
        sum += if n % 2 == 0 { term } else { -term };
        power *= u2;
        n += 1;
    }
    Ok(s / z * sum)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn semicircle_branch() {
        let z: f64 = 0.25;
        let expected = (1.0 - (1.0 - 4.0 * z * z).sqrt()) / (2.0 * z * z);
        let r = r_closed(z, 0.0).unwrap();
        assert!((r - expected).abs() < 1e-14);
        assert!((r - 1.07180).abs() < 5e-6);
    }

    #[test]
    fn small_z_limit() {
        for q in [0.0, 0.3, 0.9] {
            assert!((r_closed(1e-9, q).unwrap() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn domain() {
        assert!(r_closed(0.0, 0.0).is_err());
        assert!(r_closed(0.51, 0.0).is_err());
        assert!(r_closed(0.5, 0.0).is_ok());
        assert!(r_closed(0.1, 1.0).is_err());
        assert!(lambda_critical(1.0).is_err());
        assert!(lambda_critical(-1.5).is_err());
    }

    #[test]
    fn edges() {
        assert_eq!(spectral_edge(0.0).unwrap(), 2.0);
        assert_eq!(spectral_edge(0.75).unwrap(), 4.0);
        let q = crate::qcomb::qtilde(24, 4).unwrap();
        assert!((spectral_edge(q).unwrap() - 2.1401).abs() < 5e-5);
    }

    #[test]
    fn critical_coupling() {
        assert_eq!(lambda_critical(0.0).unwrap(), 1.0);
        // Partial sums of an alternating series with decreasing terms bracket the limit.
        let q: f64 = 0.5;
        let partial = |n: u64| (0..=n).map(|k| (-1f64).powi(k as i32) * q.powi((k * (k + 1) / 2) as i32)).sum::<f64>();
        let (lo, hi) = (partial(7), partial(6));
        let bounds = [1.0 / ((1.0 - q).sqrt() * hi), 1.0 / ((1.0 - q).sqrt() * lo)];
        let lc = lambda_critical(q).unwrap();
        assert!(lc >= bounds[0].min(bounds[1]) && lc <= bounds[0].max(bounds[1]));
        assert!((lc - 2.3172).abs() < 5e-5);
        for q in [0.0, 0.1, 0.5, 0.9] {
            let lc = lambda_critical(q).unwrap();
            assert!((lc * (1.0 - q).sqrt() * alternating_theta(q, 1e-15) - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn edge_value_is_tau() {
        for q in [0.0, 0.1, 0.5, 0.9] {
            let rg = rho_g(q).unwrap();
            let g = rg * r_closed(rg, q).unwrap();
            assert!((g - tau_g(q).unwrap()).abs() < 1e-8, "q = {q}");
        }
    }
}

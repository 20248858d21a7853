use crate::error::{Error, Result};
use crate::gf::prime_power;
use crate::grp::MatrixGroup;

/// Slack allowed when comparing orders against the bound in the log domain.
pub const LOG_TOLERANCE: f64 = 1e-9;

/// `d = 1 + log_9(48 * 24^(1/3))`.
pub fn d() -> f64 {
    1.0 + (48f64.ln() + 24f64.ln() / 3.0) / 9f64.ln()
}

/// `24^(-1/3)`.
pub fn pw_coeff() -> f64 {
    (-24f64.ln() / 3.0).exp()
}

/// 3 for `q <= 4`, 2 otherwise.
pub fn t_of_q(q: u32) -> Result<usize> {
    if prime_power(q).is_none() {
        return Err(Error::Precondition(format!("{q} is not a prime power")));
    }
    Ok(if q <= 4 { 3 } else { 2 })
}

/// `ln(24^(-k/3) |V|^(d-1))`.
pub fn log_bound(v_size: u64, summands: u32) -> f64 {
    -(summands as f64) * 24f64.ln() / 3.0 + (d() - 1.0) * (v_size as f64).ln()
}

/// `24^(-1/3) |V|^(d-1)`.
pub fn palfy_wolf_bound(v_size: u64) -> f64 {
    log_bound(v_size, 1).exp()
}

/// `ln(bound) - ln|G|`; nonnegative up to [`LOG_TOLERANCE`] when the bound holds.
pub fn log_margin(order: u64, v_size: u64, summands: u32) -> f64 {
    log_bound(v_size, summands) - (order as f64).ln()
}

pub fn order_within_bound(order: u64, v_size: u64) -> bool {
    log_margin(order, v_size, 1) >= -LOG_TOLERANCE
}

pub fn pw_check(g: &MatrixGroup) -> Result<bool> {
    Ok(order_within_bound(g.order()?, g.space().size() as u64))
}

/// The integer `2 * sum_{d | f, d < f} q^d`.
pub fn semilinear_count_bound(q: u64, f: u32) -> u64 {
    2 * (1..f).filter(|d| f % d == 0).map(|d| q.pow(d)).sum::<u64>()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constants() {
        assert!(d() > 3.2438 && d() < 3.2440);
        assert_eq!((d() * 1000.0).floor() / 1000.0, 3.243);
        assert_eq!(t_of_q(3).unwrap(), 3);
        assert_eq!(t_of_q(4).unwrap(), 3);
        assert_eq!(t_of_q(5).unwrap(), 2);
        assert!(t_of_q(6).is_err());
        assert!((palfy_wolf_bound(9) - 48.0).abs() < 1e-9);
        assert!(order_within_bound(48, 9));
        assert!(!order_within_bound(49, 9));
        assert_eq!(semilinear_count_bound(3, 2), 6);
        assert_eq!(semilinear_count_bound(2, 4), 12);
    }
}

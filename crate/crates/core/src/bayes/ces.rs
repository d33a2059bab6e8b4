//! Grid posterior for the CES utility black box.
//!
//! The hypothesis space is the exact parameter grid the black boxes are
//! drawn from: weight compositions on the 0.1 grid crossed with the rho grid.
//! Preferences are modeled through the censored sigmoid-normal response: the
//! probability that the latent comparison lands at the upper censor point is
//! `Φ(z)` with `z = (U1 - U2) / (obs_sd · (1 + ||d1 - d2||))`. The slope
//! parameter multiplies both the mean and the deviation, so it cancels in
//! `z`; its grid is carried as a marginalized nuisance only.

use statrs::function::erf::erfc;

use crate::equation::{utility, CesParams, Preference};
use crate::protocol::{Observation, QueryPayload, ResponsePayload};

use super::{BayesError, Posterior};

/// The exhaustive parameter grid plus prior hyperparameters.
#[derive(Debug, Clone)]
pub struct CesGrid {
    pub n_goods: usize,
    /// rho grid in tenths, default `1..=10`.
    pub rho_tenths: Vec<u8>,
    /// Nuisance slope grid with LogNormal prior; cancels in the censor-mass
    /// ratio, so it never enters the likelihood numerically.
    pub slope_grid: Vec<f64>,
    pub slope_lognormal: (f64, f64),
    pub obs_sd: f64,
    /// Beta prior on rho, default (1, 1).
    pub rho_beta: (f64, f64),
    /// Dirichlet concentration for the weights, default 1.0 (uniform).
    pub alpha_conc: f64,
    /// Half-width of the equal-utility censoring band in z units.
    pub z_tie: f64,
}

impl CesGrid {
    pub fn new(n_goods: usize) -> CesGrid {
        CesGrid {
            n_goods,
            rho_tenths: (1..=10).collect(),
            slope_grid: vec![0.25, 0.5, 1.0, 2.0, 4.0],
            slope_lognormal: (0.0, 1.0),
            obs_sd: 0.005,
            rho_beta: (1.0, 1.0),
            alpha_conc: 1.0,
            z_tie: 1e-6,
        }
    }

    /// All weight compositions: nonnegative tenths summing to 10.
    pub fn alpha_compositions(&self) -> Vec<Vec<u8>> {
        let mut out = Vec::new();
        let mut current = vec![0u8; self.n_goods];
        fn recurse(current: &mut Vec<u8>, idx: usize, remaining: u8, out: &mut Vec<Vec<u8>>) {
            if idx == current.len() - 1 {
                current[idx] = remaining;
                out.push(current.clone());
                return;
            }
            for v in 0..=remaining {
                current[idx] = v;
                recurse(current, idx + 1, remaining - v, out);
            }
        }
        recurse(&mut current, 0, 10, &mut out);
        out
    }

    /// The full hypothesis grid in stable order: compositions crossed with
    /// the rho grid.
    pub fn hypotheses(&self) -> Vec<CesParams> {
        let mut out = Vec::new();
        for alpha in self.alpha_compositions() {
            for &rho in &self.rho_tenths {
                out.push(CesParams {
                    alpha_tenths: alpha.clone(),
                    rho_tenths: rho,
                });
            }
        }
        out
    }

    /// Log prior density at a grid point (up to the grid normalizer):
    /// Dirichlet over the weights times Beta over rho.
    fn log_prior(&self, params: &CesParams) -> f64 {
        let (a, b) = self.rho_beta;
        let rho = params.rho();
        let mut lp = 0.0;
        if a != 1.0 {
            lp += (a - 1.0) * rho.ln();
        }
        if b != 1.0 {
            lp += (b - 1.0) * (1.0 - rho).max(f64::MIN_POSITIVE).ln();
        }
        if self.alpha_conc != 1.0 {
            for w in params.alpha() {
                lp += (self.alpha_conc - 1.0) * w.max(f64::MIN_POSITIVE).ln();
            }
        }
        lp
    }
}

/// `ln Φ(z)`, stable across the whole range: `erfc` near the bulk, a
/// Mills-ratio asymptotic series in the far left tail where `erfc` loses
/// precision.
pub fn log_normal_cdf(z: f64) -> f64 {
    if z > -10.0 {
        (0.5 * erfc(-z / std::f64::consts::SQRT_2)).ln()
    } else {
        // Φ(z) = φ(z)/(-z) · Σ (-1)^k (2k-1)!!/z^(2k); 12 terms give full
        // double precision for z <= -10
        let z2 = z * z;
        let mut term = 1.0;
        let mut series = 1.0;
        for k in 0..12u32 {
            term *= -f64::from(2 * k + 1) / z2;
            series += term;
        }
        -0.5 * z2 - (-z).ln() - 0.5 * (2.0 * std::f64::consts::PI).ln() + series.ln()
    }
}

fn euclidean_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

/// Log likelihood of one preference under hypothesis `params`.
fn preference_log_lik(
    params: &CesParams,
    basket1: &[f64],
    basket2: &[f64],
    preference: Preference,
    grid: &CesGrid,
) -> Result<f64, BayesError> {
    let u1 = utility(params, basket1)
        .map_err(|e| BayesError::DimensionMismatch(e.to_string()))?;
    let u2 = utility(params, basket2)
        .map_err(|e| BayesError::DimensionMismatch(e.to_string()))?;
    let scale = grid.obs_sd * (1.0 + euclidean_distance(basket1, basket2));
    let z = (u1 - u2) / scale;
    Ok(match preference {
        Preference::Basket1 => log_normal_cdf(z),
        Preference::Basket2 => log_normal_cdf(-z),
        Preference::EqualUtility => {
            // mass of the band |Z - z| <= z_tie: for a band this narrow the
            // density is flat, so use ln(2·z_tie·φ(z))
            (2.0 * grid.z_tie).ln() - 0.5 * z * z - 0.5 * (2.0 * std::f64::consts::PI).ln()
        }
    })
}

/// Exhaustive grid posterior over CES parameters given preference
/// observations `((b1, b2), preference)`.
pub fn ces_posterior(
    observations: &[(Vec<f64>, Vec<f64>, Preference)],
    grid: &CesGrid,
) -> Result<Posterior<CesParams>, BayesError> {
    let hypotheses = grid.hypotheses();
    let mut log_weights = Vec::with_capacity(hypotheses.len());
    for h in &hypotheses {
        let mut lw = grid.log_prior(h);
        for (b1, b2, pref) in observations {
            lw += preference_log_lik(h, b1, b2, *pref, grid)?;
        }
        log_weights.push(lw);
    }
    Ok(Posterior::from_log_weights(hypotheses, log_weights))
}

/// Convenience wrapper over protocol observations.
pub fn ces_posterior_from_observations(
    observations: &[Observation],
    grid: &CesGrid,
) -> Result<Posterior<CesParams>, BayesError> {
    let mut pairs = Vec::new();
    for obs in observations {
        let QueryPayload::BasketPair { basket1, basket2 } = &obs.query else {
            continue;
        };
        match (&obs.response, &obs.proposed) {
            (ResponsePayload::Preference { preference }, _) => {
                pairs.push((basket1.clone(), basket2.clone(), *preference));
            }
            (
                ResponsePayload::Verdict { correct },
                Some(ResponsePayload::Preference { preference }),
            ) => {
                // Correct confirms the proposed preference; Incorrect on a
                // three-way outcome only rules one case out, which the
                // two-sided likelihood cannot express, so only confirmations
                // carry information here.
                if *correct {
                    pairs.push((basket1.clone(), basket2.clone(), *preference));
                }
            }
            _ => {}
        }
    }
    ces_posterior(&pairs, grid)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use crate::equation::CesInstance;

    #[test]
    fn log_normal_cdf_matches_reference_values() {
        // high-precision reference values
        let cases = [
            (0.0, -0.69314718055994531),
            (1.0, -0.17275377902344989),
            (-1.0, -1.8410216450092635),
            (-2.5, -5.0816482772786905),
            (-5.0, -15.064998393988726),
            (-8.0, -35.01343715991455),
            (-10.0, -53.231285150512471),
            (-20.0, -203.91715537109726),
            (-30.0, -454.3212439563432),
            (-37.5, -707.66898931750719),
            (-50.0, -1254.8313611394199),
            (-100.0, -5005.5242086942051),
            (-1000.0, -500007.82669481218),
            (3.0, -0.0013508099647481938),
        ];
        for (z, expected) in cases {
            let got = log_normal_cdf(z);
            let tol = 1e-10 * f64::abs(expected).max(1.0);
            assert!(
                (got - expected).abs() <= tol,
                "ln Phi({z}) = {got}, want {expected}"
            );
        }
    }

    #[test]
    fn grid_cardinalities_are_combinatorial() {
        // C(10 + n - 1, n - 1) compositions
        for (n, expected) in [(2usize, 11usize), (3, 66), (4, 286), (5, 1001), (6, 3003)] {
            let grid = CesGrid::new(n);
            assert_eq!(grid.alpha_compositions().len(), expected, "n={n}");
            assert_eq!(grid.hypotheses().len(), expected * 10);
        }
    }

    #[test]
    fn zero_observations_give_the_discretized_prior() {
        let grid = CesGrid::new(2);
        let posterior = ces_posterior(&[], &grid).unwrap();
        // uniform prior with defaults
        let weights = posterior.weights();
        let first = weights[0];
        assert!(weights.iter().all(|w| (w - first).abs() < 1e-12));
        let total: f64 = weights.iter().sum();
        assert!((total - 1.0).abs() < 1e-9);
    }

    #[test]
    fn recovery_on_a_small_instance() {
        let truth = CesParams::new(vec![3, 7], 5).unwrap();
        let inst = CesInstance {
            instance_id: "t".into(),
            params: truth.clone(),
        };
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let observations: Vec<(Vec<f64>, Vec<f64>, Preference)> =
            (0..200).map(|_| inst.sample_comparison(&mut rng)).collect();
        let grid = CesGrid::new(2);
        let posterior = ces_posterior(&observations, &grid).unwrap();
        let map = posterior.map_estimate(|_| 0).unwrap();
        for (a, b) in map.alpha_tenths.iter().zip(&truth.alpha_tenths) {
            assert!(a.abs_diff(*b) <= 1, "alpha {map:?} vs {truth:?}");
        }
        assert!(map.rho_tenths.abs_diff(truth.rho_tenths) <= 1);
    }

    #[test]
    fn flipping_preferences_mirrors_the_likelihood() {
        let truth = CesParams::new(vec![5, 5], 5).unwrap();
        let inst = CesInstance {
            instance_id: "t".into(),
            params: truth,
        };
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let observations: Vec<(Vec<f64>, Vec<f64>, Preference)> =
            (0..20).map(|_| inst.sample_comparison(&mut rng)).collect();
        let flipped: Vec<(Vec<f64>, Vec<f64>, Preference)> = observations
            .iter()
            .map(|(b1, b2, p)| (b1.clone(), b2.clone(), p.flipped()))
            .collect();
        let grid = CesGrid::new(2);
        for (b1, b2, p) in observations.iter().zip(&flipped).map(|(o, f)| {
            debug_assert_eq!(o.0, f.0);
            (o.0.clone(), o.1.clone(), (o.2, f.2))
        }) {
            let h = CesParams::new(vec![4, 6], 3).unwrap();
            let forward = preference_log_lik(&h, &b1, &b2, p.0, &grid).unwrap();
            // swapping the baskets with the flipped preference gives the
            // same z magnitude with opposite sign: Φ(z) <-> Φ(-z)
            let mirrored = preference_log_lik(&h, &b2, &b1, p.0, &grid).unwrap();
            let flipped_lik = preference_log_lik(&h, &b1, &b2, p.1, &grid).unwrap();
            assert!((mirrored - flipped_lik).abs() < 1e-9);
            // and the two directions exhaust the probability (no tie mass)
            let total = forward.exp() + flipped_lik.exp();
            assert!((total - 1.0).abs() < 1e-9, "total {total}");
        }
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let grid = CesGrid::new(3);
        let observations = vec![(vec![1.0, 2.0], vec![2.0, 1.0], Preference::Basket1)];
        assert!(matches!(
            ces_posterior(&observations, &grid),
            Err(BayesError::DimensionMismatch(_))
        ));
    }
}

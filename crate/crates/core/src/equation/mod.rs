//! The CES utility black box.
//!
//! An instance hides a constant-elasticity-of-substitution utility
//! `U = (sum_i a_i * x_i^rho)^(1/rho)` with weights summing to one. Queries
//! are pairs of baskets; the response says which basket has higher utility.
//! Weights and rho are stored as integer tenths so the grid is exact.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Relative tolerance under which two utilities count as equal.
pub const TIE_TOLERANCE: f64 = 1e-9;

/// Quantities are sampled i.i.d. uniform on `[0, QUANTITY_MAX]`.
pub const QUANTITY_MAX: f64 = 100.0;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CesError {
    #[error("basket has {got} goods, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("invalid CES parameters: {0}")]
    InvalidParams(String),
}

/// CES parameters on the 0.1 grid. `alpha_tenths` sums to exactly 10 and
/// `rho_tenths` lies in `1..=10`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CesParams {
    pub alpha_tenths: Vec<u8>,
    pub rho_tenths: u8,
}

impl CesParams {
    pub fn new(alpha_tenths: Vec<u8>, rho_tenths: u8) -> Result<Self, CesError> {
        let n = alpha_tenths.len();
        if !(2..=6).contains(&n) {
            return Err(CesError::InvalidParams(format!(
                "n_goods must be in [2,6], got {n}"
            )));
        }
        if alpha_tenths.iter().map(|&t| u32::from(t)).sum::<u32>() != 10 {
            return Err(CesError::InvalidParams(
                "alpha weights must sum to exactly 1.0".into(),
            ));
        }
        if !(1..=10).contains(&rho_tenths) {
            return Err(CesError::InvalidParams(
                "rho must be a multiple of 0.1 in (0, 1]".into(),
            ));
        }
        Ok(CesParams {
            alpha_tenths,
            rho_tenths,
        })
    }

    pub fn n_goods(&self) -> usize {
        self.alpha_tenths.len()
    }

    pub fn alpha(&self) -> Vec<f64> {
        self.alpha_tenths.iter().map(|&t| f64::from(t) / 10.0).collect()
    }

    pub fn rho(&self) -> f64 {
        f64::from(self.rho_tenths) / 10.0
    }

    /// Concatenated `[alpha..., rho]` vector used for parameter scoring.
    pub fn as_vector(&self) -> Vec<f64> {
        let mut v = self.alpha();
        v.push(self.rho());
        v
    }

    /// Canonical rendering, e.g. `alpha=[0.1, 0.1, 0.4, 0.4]; rho=0.4`.
    pub fn render(&self) -> String {
        let alpha: Vec<String> = self
            .alpha_tenths
            .iter()
            .map(|&t| format!("{:.1}", f64::from(t) / 10.0))
            .collect();
        format!(
            "alpha=[{}]; rho={:.1}",
            alpha.join(", "),
            f64::from(self.rho_tenths) / 10.0
        )
    }

    /// Parses the canonical rendering (tolerant of whitespace).
    pub fn parse(text: &str) -> Option<CesParams> {
        let text = text.trim();
        let alpha_start = text.find("alpha=[")? + "alpha=[".len();
        let alpha_end = alpha_start + text[alpha_start..].find(']')?;
        let alpha: Option<Vec<u8>> = text[alpha_start..alpha_end]
            .split(',')
            .map(|p| {
                let v: f64 = p.trim().parse().ok()?;
                let tenths = (v * 10.0).round();
                ((tenths - v * 10.0).abs() < 1e-6 && (0.0..=10.0).contains(&tenths))
                    .then_some(tenths as u8)
            })
            .collect();
        let rho_pos = text.find("rho=")? + "rho=".len();
        let rho_text: String = text[rho_pos..]
            .chars()
            .take_while(|c| c.is_ascii_digit() || *c == '.')
            .collect();
        let rho: f64 = rho_text.parse().ok()?;
        let rho_tenths = (rho * 10.0).round();
        if (rho_tenths - rho * 10.0).abs() > 1e-6 {
            return None;
        }
        CesParams::new(alpha?, rho_tenths as u8).ok()
    }
}

/// Preference outcome of a basket comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Preference {
    Basket1,
    Basket2,
    EqualUtility,
}

impl Preference {
    pub fn render(self) -> &'static str {
        match self {
            Preference::Basket1 => "Basket1",
            Preference::Basket2 => "Basket2",
            Preference::EqualUtility => "equal utility",
        }
    }

    pub fn parse(text: &str) -> Option<Preference> {
        match text.trim().to_ascii_lowercase().as_str() {
            "basket1" => Some(Preference::Basket1),
            "basket2" => Some(Preference::Basket2),
            "equal utility" | "equal" => Some(Preference::EqualUtility),
            _ => None,
        }
    }

    pub fn flipped(self) -> Preference {
        match self {
            Preference::Basket1 => Preference::Basket2,
            Preference::Basket2 => Preference::Basket1,
            Preference::EqualUtility => Preference::EqualUtility,
        }
    }
}

/// `U = (sum_i a_i * x_i^rho)^(1/rho)`; zero quantities contribute zero.
pub fn utility(params: &CesParams, basket: &[f64]) -> Result<f64, CesError> {
    if basket.len() != params.n_goods() {
        return Err(CesError::DimensionMismatch {
            expected: params.n_goods(),
            got: basket.len(),
        });
    }
    let rho = params.rho();
    let total: f64 = params
        .alpha()
        .iter()
        .zip(basket)
        .map(|(a, &x)| if x == 0.0 { 0.0 } else { a * x.powf(rho) })
        .sum();
    Ok(total.powf(1.0 / rho))
}

/// Compares two baskets; optionally checks a predicted preference.
pub fn compare(
    params: &CesParams,
    basket1: &[f64],
    basket2: &[f64],
    predicted: Option<Preference>,
) -> Result<(Preference, Option<bool>), CesError> {
    let u1 = utility(params, basket1)?;
    let u2 = utility(params, basket2)?;
    let tol = TIE_TOLERANCE * u1.max(u2).max(1.0);
    let preference = if (u1 - u2).abs() <= tol {
        Preference::EqualUtility
    } else if u1 > u2 {
        Preference::Basket1
    } else {
        Preference::Basket2
    };
    Ok((preference, predicted.map(|p| p == preference)))
}

/// One sealed CES instance.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CesInstance {
    pub instance_id: String,
    pub params: CesParams,
}

impl CesInstance {
    pub fn complexity(&self) -> u8 {
        (self.params.n_goods() - 1) as u8
    }

    /// Samples one comparison: two baskets with quantities i.i.d. uniform on
    /// `[0, 100]`, plus the preference between them.
    pub fn sample_comparison(&self, rng: &mut ChaCha8Rng) -> (Vec<f64>, Vec<f64>, Preference) {
        let n = self.params.n_goods();
        let draw = |rng: &mut ChaCha8Rng| -> Vec<f64> {
            (0..n).map(|_| rng.gen::<f64>() * QUANTITY_MAX).collect()
        };
        let b1 = draw(rng);
        let b2 = draw(rng);
        let (pref, _) = compare(&self.params, &b1, &b2, None).expect("dimensions match");
        (b1, b2, pref)
    }
}

/// Renders a comparison in the observation layout used in prompts.
pub fn render_comparison(basket1: &[f64], basket2: &[f64], preference: Preference) -> String {
    format!(
        "Basket1: {};\nBasket2: {};\nPreference: {}",
        render_basket(basket1),
        render_basket(basket2),
        preference.render()
    )
}

pub fn render_basket(basket: &[f64]) -> String {
    let items: Vec<String> = basket.iter().map(|x| format!("{x}")).collect();
    format!("[{}]", items.join(", "))
}

/// Parses a rendered basket such as `[1.5, 2]`.
pub fn parse_basket(text: &str) -> Option<Vec<f64>> {
    let t = text.trim();
    let t = t.strip_prefix("Basket1:").or_else(|| t.strip_prefix("Basket2:")).unwrap_or(t);
    let t = t.trim().trim_end_matches(';');
    let inner = t.trim().strip_prefix('[')?.strip_suffix(']')?.trim();
    if inner.is_empty() {
        return Some(Vec::new());
    }
    inner
        .split(',')
        .map(|p| {
            let v: f64 = p.trim().parse().ok()?;
            v.is_finite().then_some(v)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    fn reference_params() -> CesParams {
        CesParams::new(vec![1, 1, 4, 4], 4).unwrap()
    }

    #[test]
    fn linear_case_is_weighted_mean() {
        let p = CesParams::new(vec![5, 5], 10).unwrap();
        let u = utility(&p, &[2.0, 4.0]).unwrap();
        assert!((u - 3.0).abs() < 1e-12);
    }

    #[test]
    fn reference_basket_pair_prefers_basket1() {
        // Recomputed utilities: U1 ~ 36.64, U2 ~ 36.17.
        let p = reference_params();
        let b1 = [
            87.79948556831374,
            39.184851241810016,
            22.551465649464433,
            42.84633678341351,
        ];
        let b2 = [
            66.20150946367784,
            80.43281524767865,
            68.02177295663886,
            8.112415033884117,
        ];
        let u1 = utility(&p, &b1).unwrap();
        let u2 = utility(&p, &b2).unwrap();
        assert!((u1 - 36.6).abs() < 0.1, "u1 = {u1}");
        assert!((u2 - 36.2).abs() < 0.1, "u2 = {u2}");
        assert!(u1 > u2);
        let (pref, verdict) = compare(&p, &b1, &b2, Some(Preference::Basket2)).unwrap();
        assert_eq!(pref, Preference::Basket1);
        assert_eq!(verdict, Some(false));
    }

    #[test]
    fn identical_baskets_are_equal_utility() {
        let p = reference_params();
        let b = [3.0, 1.0, 4.0, 1.5];
        let (pref, _) = compare(&p, &b, &b, None).unwrap();
        assert_eq!(pref, Preference::EqualUtility);
    }

    #[test]
    fn antisymmetry_and_homogeneity() {
        let p = reference_params();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..10_000 {
            let b1: Vec<f64> = (0..4).map(|_| rng.gen::<f64>() * 100.0).collect();
            let b2: Vec<f64> = (0..4).map(|_| rng.gen::<f64>() * 100.0).collect();
            let (fwd, _) = compare(&p, &b1, &b2, None).unwrap();
            let (rev, _) = compare(&p, &b2, &b1, None).unwrap();
            assert_eq!(rev, fwd.flipped());

            let c = rng.gen::<f64>() * 10.0 + f64::MIN_POSITIVE;
            let scaled: Vec<f64> = b1.iter().map(|x| c * x).collect();
            let u = utility(&p, &b1).unwrap();
            let uc = utility(&p, &scaled).unwrap();
            assert!(
                (uc - c * u).abs() <= 1e-9 * (c * u).abs().max(1e-300),
                "homogeneity violated: c={c} u={u} uc={uc}"
            );
        }
    }

    #[test]
    fn monotone_in_each_quantity() {
        let p = reference_params();
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..1000 {
            let b: Vec<f64> = (0..4).map(|_| rng.gen::<f64>() * 100.0).collect();
            let u = utility(&p, &b).unwrap();
            for i in 0..4 {
                let mut bigger = b.clone();
                bigger[i] += 1.0;
                assert!(utility(&p, &bigger).unwrap() >= u);
            }
        }
    }

    #[test]
    fn zero_quantity_with_fractional_rho() {
        let p = CesParams::new(vec![5, 5], 5).unwrap();
        let u = utility(&p, &[0.0, 0.0]).unwrap();
        assert_eq!(u, 0.0);
        let u = utility(&p, &[1.0, 0.0]).unwrap();
        assert!(u.is_finite() && u > 0.0);
    }

    #[test]
    fn dimension_mismatch() {
        let p = reference_params();
        assert!(matches!(
            utility(&p, &[1.0, 2.0]),
            Err(CesError::DimensionMismatch { expected: 4, got: 2 })
        ));
    }

    #[test]
    fn sampling_is_deterministic_and_in_range() {
        let inst = CesInstance {
            instance_id: "ces-test".into(),
            params: reference_params(),
        };
        let mut a = ChaCha8Rng::seed_from_u64(11);
        let mut b = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..1000 {
            let (x1, x2, pref) = inst.sample_comparison(&mut a);
            let (y1, y2, pref2) = inst.sample_comparison(&mut b);
            assert_eq!((&x1, &x2, pref), (&y1, &y2, pref2));
            assert!(x1.iter().chain(&x2).all(|&q| (0.0..=100.0).contains(&q)));
            // stored preference re-derivable from the stored baskets
            let (again, _) = compare(&inst.params, &x1, &x2, None).unwrap();
            assert_eq!(again, pref);
        }
    }

    #[test]
    fn params_render_parse_round_trip() {
        let p = reference_params();
        assert_eq!(p.render(), "alpha=[0.1, 0.1, 0.4, 0.4]; rho=0.4");
        assert_eq!(CesParams::parse(&p.render()), Some(p));
        assert_eq!(CesParams::parse("no params here"), None);
        let q = CesParams::parse("alpha=[0.5,0.5]; rho=1.0").unwrap();
        assert_eq!(q.rho_tenths, 10);
    }

    #[test]
    fn complexity_is_goods_minus_one() {
        for (n, expected) in [(2usize, 1u8), (4, 3), (6, 5)] {
            let mut alpha = vec![1u8; n - 1];
            alpha.push(10 - (n as u8 - 1));
            let inst = CesInstance {
                instance_id: "c".into(),
                params: CesParams::new(alpha, 5).unwrap(),
            };
            assert_eq!(inst.complexity(), expected);
        }
    }
}

//! Classical simulation of `KS_p` boxes with shared charts.
//!
//! A chart assigns 0/1 labels to the `N` inputs; both parties answer by
//! reading the label of their own input, so equal inputs always agree
//! and the only failure mode is a pair of distinct inputs that both
//! carry a 1. Only the number of ones (the degree `M`) matters for the
//! success probability, which is `(N^2 - M^2 + M) / N^2` under uniform
//! inputs. The optimal strategy for marginal `p` mixes at most two
//! adjacent degrees around `N*p`; [`lp_oracle`] re-derives the optimum
//! by exhaustive search over all supports of size one and two and
//! serves as the independent ground truth for the closed form.

use rand::Rng;

use crate::error::{Error, Result};
use crate::nsboxes::BoxTable;
use crate::scalar::{require_marginal, rat, Rational, Scalar};

/// A 0/1 assignment to the `N` inputs, shared by both parties.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chart {
    bits: Vec<bool>,
}

impl Chart {
    pub fn new(bits: Vec<bool>) -> Self {
        Self { bits }
    }

    /// The chart with ones on the first `degree` inputs.
    pub fn canonical(n: u32, degree: u32) -> Result<Self> {
        if degree > n {
            return Err(Error::DegreeTooLarge { degree, n });
        }
        Ok(Self {
            bits: (0..n).map(|i| i < degree).collect(),
        })
    }

    /// Cyclic rotation by `shift` positions.
    pub fn rotated(&self, shift: u32) -> Self {
        let n = self.bits.len();
        Self {
            bits: (0..n)
                .map(|i| self.bits[(i + shift as usize) % n])
                .collect(),
        }
    }

    pub fn n(&self) -> u32 {
        self.bits.len() as u32
    }

    /// Number of ones.
    pub fn degree(&self) -> u32 {
        self.bits.iter().filter(|&&b| b).count() as u32
    }

    /// Label of a 1-indexed input.
    pub fn label(&self, input: u32) -> bool {
        self.bits[(input - 1) as usize]
    }

    /// The deterministic box induced by answering from this chart:
    /// block `(x, y)` puts all mass on `(label(x), label(y))`.
    pub fn deterministic_box(&self) -> BoxTable<Rational> {
        let n = self.n();
        let mut blocks = Vec::with_capacity((n * n) as usize);
        for x in 1..=n {
            for y in 1..=n {
                let mut block = [rat(0, 1), rat(0, 1), rat(0, 1), rat(0, 1)];
                let a = self.label(x) as usize;
                let b = self.label(y) as usize;
                block[a * 2 + b] = rat(1, 1);
                blocks.push(block);
            }
        }
        BoxTable::from_blocks(n, n, blocks).expect("deterministic blocks are valid")
    }
}

/// A probability mixture over chart degrees.
#[derive(Clone, Debug, PartialEq)]
pub struct MixedStrategy<T> {
    support: Vec<(u32, T)>,
}

impl<T: Scalar> MixedStrategy<T> {
    pub fn support(&self) -> &[(u32, T)] {
        &self.support
    }

    pub fn total_weight(&self) -> T {
        self.support
            .iter()
            .fold(T::zero(), |acc, (_, w)| acc + w.clone())
    }

    /// `sum weight * degree`; equals `N*p` for the optimal strategy.
    pub fn mean_degree(&self) -> T {
        self.support.iter().fold(T::zero(), |acc, (d, w)| {
            acc + w.clone() * T::from_int(*d as i64)
        })
    }

    /// Draws a degree according to the mixture weights.
    pub fn sample_degree<R: Rng>(&self, rng: &mut R) -> u32 {
        let u: f64 = rng.gen();
        let mut acc = 0.0;
        for (degree, weight) in &self.support {
            acc += weight.to_f64();
            if u < acc {
                return *degree;
            }
        }
        self.support.last().map(|(d, _)| *d).unwrap_or(0)
    }
}

/// Probability that a degree-`M` chart satisfies the perp condition
/// under uniform inputs: `(N^2 - M^2 + M) / N^2`, exact.
///
/// Of the `N^2` ordered input pairs, exactly the `M(M-1)` ordered pairs
/// of distinct one-labelled inputs fail.
pub fn perp_success(n: u32, m: u32) -> Result<Rational> {
    if m > n {
        return Err(Error::DegreeTooLarge { degree: m, n });
    }
    let n = n as i64;
    let m = m as i64;
    Ok(rat(n * n - m * m + m, n * n))
}

/// The optimal chart mixture for simulating the `N`-dimensional `KS_p`
/// box, and its success probability.
///
/// If `N*p` is an integer the single degree `N*p` is optimal; otherwise
/// the two adjacent degrees `floor(N*p)` and `ceil(N*p)` are mixed with
/// the weights fixed by the mean condition. The value is
/// `1 - (2Np - M)(M - 1) / N^2` with `M = ceil(N*p)`, which equals the
/// mixture-weighted success probability. The result is 1 exactly when
/// `p <= 1/N`.
pub fn optimal_strategy<T: Scalar>(n: u32, p: T) -> Result<(MixedStrategy<T>, T)> {
    if n < 2 {
        return Err(Error::InvalidDimension {
            what: "chart simulation",
            n,
            min: 2,
        });
    }
    require_marginal(&p)?;
    let np = p * T::from_int(n as i64);
    let (support, m_for_value) = if np.is_integer() {
        let m = np.floor_int();
        (vec![(m as u32, T::one())], m)
    } else {
        let lo = np.floor_int();
        let hi = lo + 1;
        let w_hi = np.clone() - T::from_int(lo);
        let w_lo = T::one() - w_hi.clone();
        (vec![(lo as u32, w_lo), (hi as u32, w_hi)], hi)
    };
    let m = T::from_int(m_for_value);
    let two_np = np.clone() + np;
    let value = T::one()
        - (two_np - m.clone()) * (m - T::one()) / T::from_int((n as i64) * (n as i64));
    Ok((MixedStrategy { support }, value))
}

/// Exact optimum of the chart-mixture linear program
/// `max sum w_i * perp_success(N, i)` subject to `sum w_i * i = N*p`,
/// `sum w_i = 1`, `w_i >= 0`, computed by exhaustive search over all
/// supports of size one and two drawn from `{0..N}`. The minimum-variance
/// structure of the program guarantees an optimum on such a support, so
/// the search is exact. This is the ground truth [`optimal_strategy`] is
/// tested against.
pub fn lp_oracle(n: u32, p: &Rational) -> Result<Rational> {
    if n < 2 {
        return Err(Error::InvalidDimension {
            what: "chart simulation",
            n,
            min: 2,
        });
    }
    require_marginal(p)?;
    let np = p.clone() * Rational::from_int(n as i64);
    if np > Rational::from_int(n as i64) {
        return Err(Error::InfeasibleMean {
            mean: np.to_string(),
            n,
        });
    }

    let mut best: Option<Rational> = None;
    let mut consider = |v: Rational| {
        if best.as_ref().map_or(true, |b| v > *b) {
            best = Some(v);
        }
    };

    for i in 0..=n {
        if Rational::from_int(i as i64) == np {
            consider(perp_success(n, i)?);
        }
    }
    for i in 0..n {
        for j in (i + 1)..=n {
            let ri = Rational::from_int(i as i64);
            let rj = Rational::from_int(j as i64);
            if np < ri || np > rj {
                continue;
            }
            let w_j = (np.clone() - ri.clone()) / (rj - ri);
            let w_i = Rational::from_int(1) - w_j.clone();
            let v = w_i * perp_success(n, i)? + w_j * perp_success(n, j)?;
            consider(v);
        }
    }
    best.ok_or(Error::InfeasibleMean {
        mean: np.to_string(),
        n,
    })
}

/// Outcome counts of a Monte Carlo run of the optimal strategy.
#[derive(Clone, Copy, Debug)]
pub struct SimReport {
    pub rounds: u64,
    pub successes: u64,
    pub alice_ones: u64,
    pub bob_ones: u64,
}

impl SimReport {
    pub fn success_rate(&self) -> f64 {
        self.successes as f64 / self.rounds as f64
    }

    pub fn alice_marginal(&self) -> f64 {
        self.alice_ones as f64 / self.rounds as f64
    }

    pub fn bob_marginal(&self) -> f64 {
        self.bob_ones as f64 / self.rounds as f64
    }

    /// Binomial standard deviation of the success rate around `p_success`.
    pub fn sigma(&self, p_success: f64) -> f64 {
        (p_success * (1.0 - p_success) / self.rounds as f64).sqrt()
    }
}

/// Plays the optimal mixture for `rounds` rounds: each round draws a
/// degree from the mixture, a shared uniform rotation of the canonical
/// chart of that degree, and independent uniform inputs, then scores
/// the KS-box conditions (equal inputs always agree; distinct inputs
/// fail only when both read a 1).
pub fn simulate_strategy<T: Scalar, R: Rng>(
    n: u32,
    p: T,
    rounds: u64,
    rng: &mut R,
) -> Result<SimReport> {
    if rounds == 0 {
        return Err(Error::Parse("rounds must be >= 1".into()));
    }
    let (strategy, _) = optimal_strategy(n, p)?;
    let mut report = SimReport {
        rounds,
        successes: 0,
        alice_ones: 0,
        bob_ones: 0,
    };
    for _ in 0..rounds {
        let degree = strategy.sample_degree(rng);
        let shift = rng.gen_range(0..n);
        let x = rng.gen_range(1..=n);
        let y = rng.gen_range(1..=n);
        // Rotated canonical chart: input i carries a 1 iff
        // (i - 1 + shift) mod n < degree.
        let a = (x - 1 + shift) % n < degree;
        let b = (y - 1 + shift) % n < degree;
        report.alice_ones += a as u64;
        report.bob_ones += b as u64;
        if x == y || !(a && b) {
            report.successes += 1;
        }
    }
    Ok(report)
}

/// Large-`N` limit of the optimal simulation probability: `1 - p^2`.
pub fn asymptotic_limit<T: Scalar>(p: T) -> T {
    T::one() - p.clone() * p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nsboxes::check_perp;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    /// Brute-force perp-success: enumerate every ordered input pair of a
    /// canonical degree-`m` chart and count failures.
    fn perp_success_by_enumeration(n: u32, m: u32) -> Rational {
        let chart = Chart::canonical(n, m).unwrap();
        let mut failures = 0i64;
        for x in 1..=n {
            for y in 1..=n {
                if x != y && chart.label(x) && chart.label(y) {
                    failures += 1;
                }
            }
        }
        rat((n as i64) * (n as i64) - failures, (n as i64) * (n as i64))
    }

    #[test]
    fn perp_success_frozen_values() {
        // Degree 0 and 1 never violate the perp condition.
        assert_eq!(perp_success(9, 0).unwrap(), rat(1, 1));
        assert_eq!(perp_success(9, 1).unwrap(), rat(1, 1));
        // Enumeration oracle values, frozen: 23/25 and 1/2.
        assert_eq!(perp_success_by_enumeration(5, 2), rat(23, 25));
        assert_eq!(perp_success(5, 2).unwrap(), rat(23, 25));
        assert_eq!(perp_success_by_enumeration(2, 2), rat(1, 2));
        assert_eq!(perp_success(2, 2).unwrap(), rat(1, 2));
        assert!(perp_success(4, 5).is_err());
    }

    #[test]
    fn perp_success_matches_enumeration_everywhere() {
        for n in 2..=10 {
            for m in 0..=n {
                assert_eq!(
                    perp_success(n, m).unwrap(),
                    perp_success_by_enumeration(n, m),
                    "N = {n}, M = {m}"
                );
            }
        }
    }

    #[test]
    fn optimal_strategy_known_points() {
        // p = 1/N: single chart C_1, perfect simulation.
        let (s, v) = optimal_strategy(5, rat(1, 5)).unwrap();
        assert_eq!(s.support(), &[(1, rat(1, 1))]);
        assert_eq!(v, rat(1, 1));

        // N=5, p=1/2: even mixture of C_2 and C_3, value 21/25.
        let (s, v) = optimal_strategy(5, rat(1, 2)).unwrap();
        assert_eq!(s.support(), &[(2, rat(1, 2)), (3, rat(1, 2))]);
        assert_eq!(v, rat(21, 25));
        assert_eq!(v, lp_oracle(5, &rat(1, 2)).unwrap());

        // Large N approaches 1 - p^2.
        let (_, v) = optimal_strategy(1000, rat(1, 2)).unwrap();
        assert!((v.to_f64() - 0.75).abs() < 1e-3);

        assert!(optimal_strategy(5, rat(3, 5)).is_err());
    }

    #[test]
    fn strategy_mean_matches_target() {
        for n in [2u32, 5, 9, 12] {
            for k in 0..=50 {
                let p = rat(k, 100);
                let (s, _) = optimal_strategy(n, p.clone()).unwrap();
                assert_eq!(s.total_weight(), rat(1, 1));
                assert_eq!(s.mean_degree(), p * rat(n as i64, 1));
            }
        }
    }

    #[test]
    fn oracle_agrees_with_closed_form_on_subgrid() {
        for n in 2..=8 {
            for k in (0..=50).step_by(5) {
                let p = rat(k, 100);
                let (_, v) = optimal_strategy(n, p.clone()).unwrap();
                assert_eq!(v, lp_oracle(n, &p).unwrap(), "N = {n}, p = {k}/100");
            }
        }
    }

    #[test]
    fn oracle_trivial_points() {
        assert_eq!(lp_oracle(7, &rat(0, 1)).unwrap(), rat(1, 1));
        assert_eq!(lp_oracle(5, &rat(1, 2)).unwrap(), rat(21, 25));
    }

    #[test]
    fn value_monotone_and_perfect_iff_small_p() {
        for n in 2..=12 {
            let mut prev = rat(2, 1);
            for k in 0..=50 {
                let p = rat(k, 100);
                let (_, v) = optimal_strategy(n, p.clone()).unwrap();
                assert!(v <= prev, "value increased in p at N = {n}, k = {k}");
                assert_eq!(
                    v == rat(1, 1),
                    p <= rat(1, n as i64),
                    "perfect-simulation boundary at N = {n}, k = {k}"
                );
                prev = v;
            }
        }
    }

    #[test]
    fn value_decreases_with_dimension_from_five() {
        for k in 0..=50 {
            let p = rat(k, 100);
            let mut prev = optimal_strategy(5, p.clone()).unwrap().1;
            for n in 6..=40 {
                let v = optimal_strategy(n, p.clone()).unwrap().1;
                assert!(v <= prev, "value rose from N = {} at p = {k}/100", n - 1);
                prev = v;
            }
        }
    }

    #[test]
    fn asymptotic_limit_values() {
        assert_eq!(asymptotic_limit(rat(1, 2)), rat(3, 4));
        assert_eq!(asymptotic_limit(rat(0, 1)), rat(1, 1));
        for n in [50u32, 100, 500] {
            let (_, v) = optimal_strategy(n, rat(3, 10)).unwrap();
            assert!((v.to_f64() - 0.91).abs() <= 2.0 / n as f64);
        }
    }

    #[test]
    fn monte_carlo_tracks_closed_form() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let report = simulate_strategy(5, rat(1, 2), 200_000, &mut rng).unwrap();
        let sigma = report.sigma(0.84);
        assert!(
            (report.success_rate() - 0.84).abs() < 4.0 * sigma,
            "rate = {}",
            report.success_rate()
        );
        // Mean condition shows up in the output marginal.
        let msigma = report.sigma(0.5);
        assert!((report.alice_marginal() - 0.5).abs() < 4.0 * msigma);

        // Perfect regime: p <= 1/N never fails.
        let report = simulate_strategy(5, rat(1, 5), 50_000, &mut rng).unwrap();
        assert_eq!(report.successes, report.rounds);
    }

    #[test]
    fn monte_carlo_flake_budget() {
        // 100 seeded repetitions; at most one 4-sigma excursion tolerated.
        let expected = 0.84;
        let rounds = 10_000u64;
        let mut excursions = 0;
        for seed in 0..100 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let report = simulate_strategy(5, rat(1, 2), rounds, &mut rng).unwrap();
            if (report.success_rate() - expected).abs() >= 4.0 * report.sigma(expected) {
                excursions += 1;
            }
        }
        assert!(excursions <= 1, "{excursions} excursions");
    }

    #[test]
    fn chart_degree_two_violates_perp_on_its_ones() {
        // Ones on inputs 2 and 5 of a pentagon: the deterministic box
        // fails the product-zero condition exactly on those input pairs.
        let chart = Chart::new(vec![false, true, false, false, true]);
        assert_eq!(chart.degree(), 2);
        let report = check_perp(&chart.deterministic_box());
        assert!(report.holds_equal_inputs);
        assert!(!report.holds_product_zero);
        let offenders: Vec<_> = report
            .offending_entries
            .iter()
            .map(|v| (v.x, v.y))
            .collect();
        assert_eq!(offenders, vec![(2, 5), (5, 2)]);
    }

    proptest! {
        #[test]
        fn closed_form_never_beats_or_trails_oracle(n in 2u32..=10, k in 0i64..=50) {
            let p = rat(k, 100);
            let (_, v) = optimal_strategy(n, p.clone()).unwrap();
            prop_assert_eq!(v, lp_oracle(n, &p).unwrap());
        }

        #[test]
        fn rotation_preserves_degree(n in 1u32..=20, m in 0u32..=20, shift in 0u32..=40) {
            prop_assume!(m <= n);
            let chart = Chart::canonical(n, m).unwrap();
            prop_assert_eq!(chart.rotated(shift % n).degree(), m);
        }
    }
}

//! Bipartite two-outcome no-signalling boxes.
//!
//! A box is a conditional probability table `P(a, b | x, y)` with inputs
//! `x in {1..n_alice}`, `y in {1..n_bob}` and binary outputs. Tables built
//! from rational parameters stay exact ([`Rational`] entries); everything
//! else runs in `f64`. Constructors are provided for the `KS_p` box
//! (equal inputs force equal outputs, unequal inputs forbid the joint
//! output `(1,1)`, marginal `p` for output 1) and the generalised PR box
//! (outputs agree except on the input pair `(1,1)`).

use rand::Rng;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::scalar::{require_marginal, Scalar};

/// Treat float probabilities below this as zero support.
const SUPPORT_EPS: f64 = 1e-12;

/// Tolerance for block normalisation in float mode.
const BLOCK_SUM_TOL: f64 = 1e-12;

/// Conditional probability table of a bipartite two-outcome box.
///
/// Each input pair `(x, y)` owns a 2x2 block `[P(0,0), P(0,1), P(1,0), P(1,1)]`.
#[derive(Clone, Debug, PartialEq)]
pub struct BoxTable<T> {
    n_alice: u32,
    n_bob: u32,
    blocks: Vec<[T; 4]>,
}

impl<T: Scalar> BoxTable<T> {
    /// Builds a table from blocks listed row-major in `x`, then `y`,
    /// validating that every entry is a probability and every block
    /// sums to one (exactly in rational mode, within 1e-12 otherwise).
    pub fn from_blocks(n_alice: u32, n_bob: u32, blocks: Vec<[T; 4]>) -> Result<Self> {
        if n_alice == 0 || n_bob == 0 {
            return Err(Error::InvalidDimension {
                what: "box",
                n: n_alice.min(n_bob),
                min: 1,
            });
        }
        if blocks.len() != (n_alice * n_bob) as usize {
            return Err(Error::Parse(format!(
                "expected {} blocks, got {}",
                n_alice * n_bob,
                blocks.len()
            )));
        }
        let table = Self {
            n_alice,
            n_bob,
            blocks,
        };
        table.validate()?;
        Ok(table)
    }

    fn validate(&self) -> Result<()> {
        for x in 1..=self.n_alice {
            for y in 1..=self.n_bob {
                let block = self.block(x, y);
                for entry in block {
                    let in_range = if T::EXACT {
                        *entry >= T::zero() && *entry <= T::one()
                    } else {
                        let e = entry.to_f64();
                        (-SUPPORT_EPS..=1.0 + SUPPORT_EPS).contains(&e)
                    };
                    if !in_range {
                        return Err(Error::InvalidBlock {
                            x,
                            y,
                            invariant: format!("entry range [0, 1] (entry = {entry})"),
                        });
                    }
                }
                let sum = block
                    .iter()
                    .fold(T::zero(), |acc, e| acc + e.clone());
                let normalised = if T::EXACT {
                    sum == T::one()
                } else {
                    (sum.to_f64() - 1.0).abs() <= BLOCK_SUM_TOL
                };
                if !normalised {
                    return Err(Error::InvalidBlock {
                        x,
                        y,
                        invariant: format!("normalisation (sum = {sum})"),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn n_alice(&self) -> u32 {
        self.n_alice
    }

    pub fn n_bob(&self) -> u32 {
        self.n_bob
    }

    fn index(&self, x: u32, y: u32) -> usize {
        ((x - 1) * self.n_bob + (y - 1)) as usize
    }

    pub fn check_inputs(&self, x: u32, y: u32) -> Result<()> {
        if x < 1 || x > self.n_alice || y < 1 || y > self.n_bob {
            return Err(Error::InputOutOfRange {
                x,
                y,
                n_alice: self.n_alice,
                n_bob: self.n_bob,
            });
        }
        Ok(())
    }

    /// The 2x2 block for inputs `(x, y)` (1-indexed), entry order
    /// `[P(0,0), P(0,1), P(1,0), P(1,1)]`.
    pub fn block(&self, x: u32, y: u32) -> &[T; 4] {
        &self.blocks[self.index(x, y)]
    }

    pub fn prob(&self, x: u32, y: u32, a: u8, b: u8) -> &T {
        &self.block(x, y)[(a * 2 + b) as usize]
    }

    /// Alice's marginal `P(a | x, y) = sum_b P(a, b | x, y)`.
    pub fn alice_marginal(&self, x: u32, y: u32, a: u8) -> T {
        self.prob(x, y, a, 0).clone() + self.prob(x, y, a, 1).clone()
    }

    /// Bob's marginal `P(b | x, y) = sum_a P(a, b | x, y)`.
    pub fn bob_marginal(&self, x: u32, y: u32, b: u8) -> T {
        self.prob(x, y, 0, b).clone() + self.prob(x, y, 1, b).clone()
    }

    fn has_support(&self, x: u32, y: u32, a: u8, b: u8) -> bool {
        let p = self.prob(x, y, a, b);
        if T::EXACT {
            !p.is_zero()
        } else {
            p.to_f64() > SUPPORT_EPS
        }
    }

    /// Float view of the table, for sampling and display.
    pub fn to_float(&self) -> BoxTable<f64> {
        BoxTable {
            n_alice: self.n_alice,
            n_bob: self.n_bob,
            blocks: self
                .blocks
                .iter()
                .map(|b| [b[0].to_f64(), b[1].to_f64(), b[2].to_f64(), b[3].to_f64()])
                .collect(),
        }
    }

    /// JSON form: `{"n_alice", "n_bob", "blocks": [{"x", "y", "p": [[..],[..]]}]}`.
    /// Rational entries serialise as `"num/den"` strings, floats as numbers.
    pub fn to_json(&self) -> Value {
        let blocks: Vec<Value> = (1..=self.n_alice)
            .flat_map(|x| {
                (1..=self.n_bob).map(move |y| {
                    let b = self.block(x, y);
                    json!({
                        "x": x,
                        "y": y,
                        "p": [
                            [b[0].json_value(), b[1].json_value()],
                            [b[2].json_value(), b[3].json_value()],
                        ],
                    })
                })
            })
            .collect();
        json!({
            "n_alice": self.n_alice,
            "n_bob": self.n_bob,
            "blocks": blocks,
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let n_alice = v["n_alice"]
            .as_u64()
            .ok_or_else(|| Error::Parse("missing n_alice".into()))? as u32;
        let n_bob = v["n_bob"]
            .as_u64()
            .ok_or_else(|| Error::Parse("missing n_bob".into()))? as u32;
        let raw = v["blocks"]
            .as_array()
            .ok_or_else(|| Error::Parse("missing blocks".into()))?;
        if raw.len() != (n_alice * n_bob) as usize {
            return Err(Error::Parse("block count mismatch".into()));
        }
        let mut blocks = vec![None; raw.len()];
        for entry in raw {
            let x = entry["x"]
                .as_u64()
                .ok_or_else(|| Error::Parse("block missing x".into()))? as u32;
            let y = entry["y"]
                .as_u64()
                .ok_or_else(|| Error::Parse("block missing y".into()))? as u32;
            if x < 1 || x > n_alice || y < 1 || y > n_bob {
                return Err(Error::Parse(format!("block ({x}, {y}) out of range")));
            }
            let p = &entry["p"];
            let mut parsed = Vec::with_capacity(4);
            for a in 0..2 {
                for b in 0..2 {
                    let cell = &p[a][b];
                    parsed.push(T::from_json_value(cell).ok_or_else(|| {
                        Error::Parse(format!("bad probability in block ({x}, {y})"))
                    })?);
                }
            }
            let arr: [T; 4] = [
                parsed[0].clone(),
                parsed[1].clone(),
                parsed[2].clone(),
                parsed[3].clone(),
            ];
            blocks[((x - 1) * n_bob + (y - 1)) as usize] = Some(arr);
        }
        let blocks: Vec<[T; 4]> = blocks
            .into_iter()
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::Parse("duplicate or missing block".into()))?;
        Self::from_blocks(n_alice, n_bob, blocks)
    }
}

/// The `KS_p` box of dimension `n`: diagonal blocks `[1-p, 0; 0, p]`,
/// off-diagonal blocks `[1-2p, p; p, 0]`.
///
/// Rejects `p` outside `[0, 1/2]` (beyond 1/2 the off-diagonal entry
/// `1-2p` would be negative) and `n < 2`.
pub fn ks_box<T: Scalar>(n: u32, p: T) -> Result<BoxTable<T>> {
    if n < 2 {
        return Err(Error::InvalidDimension {
            what: "KS box",
            n,
            min: 2,
        });
    }
    require_marginal(&p)?;
    let one = T::one();
    let diag = [
        one.clone() - p.clone(),
        T::zero(),
        T::zero(),
        p.clone(),
    ];
    let off = [
        one - (p.clone() + p.clone()),
        p.clone(),
        p.clone(),
        T::zero(),
    ];
    let mut blocks = Vec::with_capacity((n * n) as usize);
    for x in 1..=n {
        for y in 1..=n {
            blocks.push(if x == y { diag.clone() } else { off.clone() });
        }
    }
    BoxTable::from_blocks(n, n, blocks)
}

/// The generalised PR box with `n` inputs per party: outputs are
/// perfectly anti-correlated on the input pair `(1, 1)` and perfectly
/// correlated everywhere else; all marginals are 1/2.
pub fn pr_box<T: Scalar>(n: u32) -> Result<BoxTable<T>> {
    if n < 2 {
        return Err(Error::InvalidDimension {
            what: "PR box",
            n,
            min: 2,
        });
    }
    let half = T::ratio(1, 2);
    let correlated = [half.clone(), T::zero(), T::zero(), half.clone()];
    let anti = [T::zero(), half.clone(), half, T::zero()];
    let mut blocks = Vec::with_capacity((n * n) as usize);
    for x in 1..=n {
        for y in 1..=n {
            blocks.push(if x == 1 && y == 1 {
                anti.clone()
            } else {
                correlated.clone()
            });
        }
    }
    BoxTable::from_blocks(n, n, blocks)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Party {
    Alice,
    Bob,
}

/// Worst marginal dependence found by [`check_no_signalling`]: the
/// marginal of `party` on `input`/`outcome` differs between the other
/// party's inputs `counterpart_a` and `counterpart_b`.
#[derive(Clone, Debug)]
pub struct MarginalDeviation {
    pub party: Party,
    pub input: u32,
    pub outcome: u8,
    pub counterpart_a: u32,
    pub counterpart_b: u32,
    pub deviation: f64,
}

#[derive(Clone, Debug)]
pub struct NoSignallingReport {
    pub pass: bool,
    /// Worst deviation over all marginals, as a float for display.
    pub max_deviation: f64,
    /// True when the table was checked with exact arithmetic.
    pub exact: bool,
    pub worst: Option<MarginalDeviation>,
}

/// Checks that each party's output marginal is independent of the other
/// party's input. In rational mode, `tol` is ignored and equality is
/// exact; in float mode the worst deviation must stay within `tol`.
pub fn check_no_signalling<T: Scalar>(table: &BoxTable<T>, tol: f64) -> NoSignallingReport {
    let mut max_dev = T::zero();
    let mut worst = None;

    let mut consider =
        |party: Party, input: u32, outcome: u8, ca: u32, cb: u32, dev: T| {
            if dev > max_dev {
                max_dev = dev.clone();
                worst = Some(MarginalDeviation {
                    party,
                    input,
                    outcome,
                    counterpart_a: ca,
                    counterpart_b: cb,
                    deviation: dev.to_f64(),
                });
            }
        };

    for x in 1..=table.n_alice() {
        for a in 0..2u8 {
            for y1 in 1..=table.n_bob() {
                for y2 in (y1 + 1)..=table.n_bob() {
                    let dev = (table.alice_marginal(x, y1, a)
                        - table.alice_marginal(x, y2, a))
                    .abs();
                    consider(Party::Alice, x, a, y1, y2, dev);
                }
            }
        }
    }
    for y in 1..=table.n_bob() {
        for b in 0..2u8 {
            for x1 in 1..=table.n_alice() {
                for x2 in (x1 + 1)..=table.n_alice() {
                    let dev =
                        (table.bob_marginal(x1, y, b) - table.bob_marginal(x2, y, b)).abs();
                    consider(Party::Bob, y, b, x1, x2, dev);
                }
            }
        }
    }

    let pass = if T::EXACT {
        max_dev.is_zero()
    } else {
        max_dev.to_f64() <= tol
    };
    NoSignallingReport {
        pass,
        max_deviation: max_dev.to_f64(),
        exact: T::EXACT,
        worst,
    }
}

/// A supported event violating one of the KS-box conditions.
#[derive(Clone, Debug, PartialEq)]
pub struct PerpViolation {
    pub x: u32,
    pub y: u32,
    pub a: u8,
    pub b: u8,
    pub probability: f64,
}

/// Result of [`check_perp`]: whether equal inputs force equal outputs
/// and whether unequal inputs ever support the joint output `(1, 1)`.
#[derive(Clone, Debug)]
pub struct PerpReport {
    pub holds_equal_inputs: bool,
    pub holds_product_zero: bool,
    pub offending_entries: Vec<PerpViolation>,
}

impl PerpReport {
    pub fn holds(&self) -> bool {
        self.holds_equal_inputs && self.holds_product_zero
    }
}

/// Checks the KS-box conditions: `a = b` whenever `x = y` has support,
/// and `a*b = 0` whenever `x != y` has support.
pub fn check_perp<T: Scalar>(table: &BoxTable<T>) -> PerpReport {
    let mut report = PerpReport {
        holds_equal_inputs: true,
        holds_product_zero: true,
        offending_entries: Vec::new(),
    };
    for x in 1..=table.n_alice() {
        for y in 1..=table.n_bob() {
            if x == y {
                for (a, b) in [(0u8, 1u8), (1, 0)] {
                    if table.has_support(x, y, a, b) {
                        report.holds_equal_inputs = false;
                        report.offending_entries.push(PerpViolation {
                            x,
                            y,
                            a,
                            b,
                            probability: table.prob(x, y, a, b).to_f64(),
                        });
                    }
                }
            } else if table.has_support(x, y, 1, 1) {
                report.holds_product_zero = false;
                report.offending_entries.push(PerpViolation {
                    x,
                    y,
                    a: 1,
                    b: 1,
                    probability: table.prob(x, y, 1, 1).to_f64(),
                });
            }
        }
    }
    report
}

/// Draws one outcome pair from block `(x, y)`. Identical seeds yield
/// identical streams; concurrent callers should hold independent RNGs.
pub fn sample<T: Scalar, R: Rng>(
    table: &BoxTable<T>,
    x: u32,
    y: u32,
    rng: &mut R,
) -> Result<(u8, u8)> {
    table.check_inputs(x, y)?;
    let block = table.block(x, y);
    let u: f64 = rng.gen();
    let mut acc = 0.0;
    for (i, entry) in block.iter().enumerate() {
        acc += entry.to_f64();
        if u < acc {
            return Ok(((i / 2) as u8, (i % 2) as u8));
        }
    }
    // Rounding can leave acc marginally below 1; the last supported
    // outcome absorbs the remainder.
    let last = block
        .iter()
        .enumerate()
        .rev()
        .find(|(_, e)| e.to_f64() > 0.0)
        .map(|(i, _)| i)
        .unwrap_or(3);
    Ok(((last / 2) as u8, (last % 2) as u8))
}

/// Tallies sampled outcomes into empirical block frequencies.
#[derive(Clone, Debug)]
pub struct BoxAccumulator {
    n_alice: u32,
    n_bob: u32,
    counts: Vec<[u64; 4]>,
}

impl BoxAccumulator {
    pub fn new(n_alice: u32, n_bob: u32) -> Self {
        Self {
            n_alice,
            n_bob,
            counts: vec![[0; 4]; (n_alice * n_bob) as usize],
        }
    }

    pub fn record(&mut self, x: u32, y: u32, a: u8, b: u8) {
        let idx = ((x - 1) * self.n_bob + (y - 1)) as usize;
        self.counts[idx][(a * 2 + b) as usize] += 1;
    }

    pub fn block_total(&self, x: u32, y: u32) -> u64 {
        self.counts[((x - 1) * self.n_bob + (y - 1)) as usize]
            .iter()
            .sum()
    }

    pub fn count(&self, x: u32, y: u32, a: u8, b: u8) -> u64 {
        self.counts[((x - 1) * self.n_bob + (y - 1)) as usize][(a * 2 + b) as usize]
    }

    /// Empirical table of block frequencies. Errors if any block never
    /// received a sample.
    pub fn to_box(&self) -> Result<BoxTable<f64>> {
        let mut blocks = Vec::with_capacity(self.counts.len());
        for x in 1..=self.n_alice {
            for y in 1..=self.n_bob {
                let total = self.block_total(x, y);
                if total == 0 {
                    return Err(Error::EmptyBlock { x, y });
                }
                let c = &self.counts[((x - 1) * self.n_bob + (y - 1)) as usize];
                blocks.push([
                    c[0] as f64 / total as f64,
                    c[1] as f64 / total as f64,
                    c[2] as f64 / total as f64,
                    c[3] as f64 / total as f64,
                ]);
            }
        }
        BoxTable::from_blocks(self.n_alice, self.n_bob, blocks)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, Rational};
    use num_traits::Signed;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn ks_box_matches_table_shape() {
        // N=2, p=1/2: diagonal [1/2,0;0,1/2], off-diagonal [0,1/2;1/2,0].
        let b = ks_box(2, rat(1, 2)).unwrap();
        assert_eq!(b.block(1, 1), &[rat(1, 2), rat(0, 1), rat(0, 1), rat(1, 2)]);
        assert_eq!(b.block(1, 2), &[rat(0, 1), rat(1, 2), rat(1, 2), rat(0, 1)]);
        // N=3, p=0: every block is deterministic (0,0).
        let b = ks_box(3, rat(0, 1)).unwrap();
        for x in 1..=3 {
            for y in 1..=3 {
                assert_eq!(b.block(x, y), &[rat(1, 1), rat(0, 1), rat(0, 1), rat(0, 1)]);
            }
        }
    }

    #[test]
    fn ks_marginal_is_p_for_every_input() {
        let b = ks_box(5, rat(1, 5)).unwrap();
        for x in 1..=5 {
            for y in 1..=5 {
                assert_eq!(b.alice_marginal(x, y, 1), rat(1, 5));
                assert_eq!(b.bob_marginal(x, y, 1), rat(1, 5));
            }
        }
    }

    #[test]
    fn ks_box_rejects_bad_parameters() {
        assert!(matches!(
            ks_box(3, rat(7, 10)),
            Err(Error::InvalidMarginal { .. })
        ));
        assert!(matches!(
            ks_box(3, -0.1f64),
            Err(Error::InvalidMarginal { .. })
        ));
        assert!(matches!(
            ks_box(1, rat(1, 4)),
            Err(Error::InvalidDimension { .. })
        ));
    }

    #[test]
    fn pr_box_blocks() {
        let b = pr_box::<Rational>(3).unwrap();
        assert_eq!(b.block(1, 1), &[rat(0, 1), rat(1, 2), rat(1, 2), rat(0, 1)]);
        assert_eq!(b.block(1, 2), &[rat(1, 2), rat(0, 1), rat(0, 1), rat(1, 2)]);
        assert_eq!(b.block(3, 3), &[rat(1, 2), rat(0, 1), rat(0, 1), rat(1, 2)]);
        assert!(matches!(
            pr_box::<Rational>(1),
            Err(Error::InvalidDimension { .. })
        ));
    }

    #[test]
    fn constructed_boxes_are_no_signalling() {
        let report = check_no_signalling(&ks_box(5, rat(3, 10)).unwrap(), 0.0);
        assert!(report.pass);
        assert_eq!(report.max_deviation, 0.0);
        assert!(report.exact);
        let report = check_no_signalling(&pr_box::<Rational>(4).unwrap(), 0.0);
        assert!(report.pass);
    }

    #[test]
    fn signalling_table_is_caught() {
        // Bob's marginal on y=1 depends on x: deterministic (0,0) at (1,1)
        // but (0,1) at (2,1). Alice's own marginals stay flat.
        let blocks = vec![
            [rat(1, 1), rat(0, 1), rat(0, 1), rat(0, 1)], // (1,1)
            [rat(1, 1), rat(0, 1), rat(0, 1), rat(0, 1)], // (1,2)
            [rat(0, 1), rat(1, 1), rat(0, 1), rat(0, 1)], // (2,1)
            [rat(0, 1), rat(1, 1), rat(0, 1), rat(0, 1)], // (2,2)
        ];
        let table = BoxTable::from_blocks(2, 2, blocks).unwrap();

        // Independent oracle: brute-force every marginal comparison.
        let mut expected_worst: f64 = 0.0;
        for y in 1..=2 {
            for b in 0..2u8 {
                for x1 in 1..=2 {
                    for x2 in 1..=2 {
                        let d = (table.bob_marginal(x1, y, b) - table.bob_marginal(x2, y, b))
                            .abs()
                            .to_f64();
                        expected_worst = expected_worst.max(d);
                    }
                }
            }
        }
        assert_eq!(expected_worst, 1.0);

        let report = check_no_signalling(&table, 0.0);
        assert!(!report.pass);
        assert_eq!(report.max_deviation, expected_worst);
        let worst = report.worst.unwrap();
        assert_eq!(worst.party, Party::Bob);
    }

    #[test]
    fn perp_holds_on_ks_and_fails_on_pr() {
        let report = check_perp(&ks_box(7, rat(2, 5)).unwrap());
        assert!(report.holds());
        assert!(report.offending_entries.is_empty());

        let report = check_perp(&pr_box::<Rational>(3).unwrap());
        assert!(!report.holds_equal_inputs);
        let equal_input_offenders: Vec<_> = report
            .offending_entries
            .iter()
            .filter(|v| v.x == 1 && v.y == 1)
            .map(|v| (v.a, v.b))
            .collect();
        assert_eq!(equal_input_offenders, vec![(0, 1), (1, 0)]);
    }

    #[test]
    fn sampling_is_deterministic_and_respects_equal_inputs() {
        let b = ks_box(5, rat(1, 2)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..500 {
            let (a, bb) = sample(&b, 3, 3, &mut rng).unwrap();
            assert_eq!(a, bb);
        }

        let mut r1 = ChaCha8Rng::seed_from_u64(7);
        let mut r2 = ChaCha8Rng::seed_from_u64(7);
        let s1: Vec<_> = (0..100).map(|_| sample(&b, 1, 2, &mut r1).unwrap()).collect();
        let s2: Vec<_> = (0..100).map(|_| sample(&b, 1, 2, &mut r2).unwrap()).collect();
        assert_eq!(s1, s2);

        assert!(sample(&b, 0, 1, &mut r1).is_err());
        assert!(sample(&b, 1, 6, &mut r1).is_err());
    }

    #[test]
    fn sampling_frequency_matches_entry() {
        // P(1,0 | 1,2) = 0.3 for ks_box(5, 0.3); 1e6 draws, 3 sigma.
        let b = ks_box(5, rat(3, 10)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let rounds = 1_000_000u64;
        let mut hits = 0u64;
        for _ in 0..rounds {
            if sample(&b, 1, 2, &mut rng).unwrap() == (1, 0) {
                hits += 1;
            }
        }
        let freq = hits as f64 / rounds as f64;
        let sigma = (0.3 * 0.7 / rounds as f64).sqrt();
        assert!(
            (freq - 0.3).abs() < 3.0 * sigma,
            "freq = {freq}, sigma = {sigma}"
        );
    }

    #[test]
    fn json_round_trip() {
        let b = ks_box(3, rat(1, 4)).unwrap();
        let v = b.to_json();
        assert_eq!(v["blocks"][0]["p"][0][0], Value::String("3/4".into()));
        let back = BoxTable::<Rational>::from_json(&v).unwrap();
        assert_eq!(b, back);

        let f = ks_box(3, 0.25f64).unwrap();
        let v = f.to_json();
        assert!(v["blocks"][0]["p"][0][0].is_number());
        let back = BoxTable::<f64>::from_json(&v).unwrap();
        assert_eq!(f, back);
    }

    #[test]
    fn perp_on_every_small_ks_box() {
        for n in 2..=20 {
            for p in [rat(0, 1), rat(1, 8), rat(1, 4), rat(3, 8), rat(1, 2)] {
                let b = ks_box(n, p).unwrap();
                assert!(check_perp(&b).holds(), "n = {n}");
                assert!(check_no_signalling(&b, 0.0).pass);
            }
        }
    }
}

//! Seeded random graph generation: Erdős–Rényi G(n,p) and the Chung-Lu
//! model with i.i.d. power-law weights.
//!
//! All generators are deterministic for a fixed seed, bit-for-bit across
//! runs. Randomness comes from ChaCha8, a counter-based stream cipher RNG:
//! every sampling task derives its own `(seed, stream)` generator, so work
//! split across streams stays reproducible no matter how it is scheduled.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::Graph;

/// ChaCha8 generator on an explicit stream. Stream ids used by this
/// module: 0 for single-pass sampling, `1 + row` for per-row Chung-Lu
/// pair enumeration.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Per-vertex Chung-Lu expected degrees drawn from a power law.
#[derive(Clone, Debug)]
pub struct WeightSequence {
    weights: Vec<f64>,
    volume: f64,
    beta: f64,
    x_min: f64,
}

impl WeightSequence {
    /// Wraps explicit weights; `beta`/`x_min` record the distribution the
    /// weights were drawn from. Every weight must be at least `x_min`.
    pub fn from_weights(weights: Vec<f64>, beta: f64, x_min: f64) -> WeightSequence {
        assert!(
            weights.iter().all(|&w| w >= x_min),
            "weight below the x_min cutoff"
        );
        let volume = weights.iter().sum();
        WeightSequence {
            weights,
            volume,
            beta,
            x_min,
        }
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// vol(V), the sum of all weights.
    pub fn volume(&self) -> f64 {
        self.volume
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn x_min(&self) -> f64 {
        self.x_min
    }
}

/// Inverse CDF of the power-law density Z·x^(−β) on [x_min, ∞):
/// maps u ∈ [0,1) to x_min·(1−u)^(−1/(β−1)).
pub fn power_law_inverse_cdf(u: f64, beta: f64, x_min: f64) -> f64 {
    x_min * (1.0 - u).powf(-1.0 / (beta - 1.0))
}

/// Draws `n` i.i.d. power-law weights with exponent `beta` and lower
/// cutoff `x_min` via inverse-CDF sampling.
///
/// Rejects `beta <= 1`, where the density cannot be normalized.
pub fn sample_power_law_weights(
    n: usize,
    beta: f64,
    x_min: f64,
    seed: u64,
) -> Result<WeightSequence, String> {
    if !(beta > 1.0) {
        return Err(format!("power-law exponent must exceed 1, got {beta}"));
    }
    if !(x_min > 0.0) {
        return Err(format!("x_min must be positive, got {x_min}"));
    }
    let mut rng = stream_rng(seed, 0);
    let weights = (0..n)
        .map(|_| power_law_inverse_cdf(rng.gen::<f64>(), beta, x_min))
        .collect();
    Ok(WeightSequence::from_weights(weights, beta, x_min))
}

/// Lower cutoff that gives the power law mean `nu`: nu·(β−2)/(β−1).
/// The mean only exists for `beta > 2`.
pub fn x_min_for_mean(beta: f64, nu: f64) -> Result<f64, String> {
    if !(beta > 2.0) {
        return Err(format!(
            "power-law mean undefined for beta <= 2, got {beta}"
        ));
    }
    if !(nu > 0.0) {
        return Err(format!("average degree must be positive, got {nu}"));
    }
    Ok(nu * (beta - 2.0) / (beta - 1.0))
}

/// Cutoff above which the exact per-pair Bernoulli sweep is replaced by
/// geometric skipping over weight-sorted rows.
const CHUNG_LU_EXACT_LIMIT: usize = 1 << 15;

/// Samples an undirected Chung-Lu graph: each pair {x,y} is an edge
/// independently with probability min(p_x·p_y / vol, 1).
///
/// Below [`CHUNG_LU_EXACT_LIMIT`] vertices this draws one uniform per pair
/// in canonical order (x < y, lexicographic) on stream 0, which a naive
/// reference generator can replay exactly. Larger graphs switch to
/// geometric skipping within weight-sorted rows (expected O(n+m) work),
/// one stream per row.
pub fn generate_chung_lu(weights: &WeightSequence, seed: u64) -> Graph {
    let n = weights.len();
    let edges = if n <= CHUNG_LU_EXACT_LIMIT {
        chung_lu_exact(weights, seed)
    } else {
        chung_lu_skipping(weights, seed)
    };
    Graph::from_edges(n, false, &edges)
}

fn chung_lu_exact(weights: &WeightSequence, seed: u64) -> Vec<(u32, u32)> {
    let n = weights.len();
    let vol = weights.volume();
    let w = weights.weights();
    let mut rng = stream_rng(seed, 0);
    let mut edges = Vec::new();
    for x in 0..n {
        for y in (x + 1)..n {
            let p = (w[x] * w[y] / vol).min(1.0);
            if rng.gen::<f64>() < p {
                edges.push((x as u32, y as u32));
            }
        }
    }
    edges
}

/// Miller–Hagberg style enumeration: rows in decreasing-weight order, so
/// the pair probability is non-increasing along each row and a geometric
/// skip with rejection p_actual/p_bound lands on each edge with exactly
/// the model probability.
fn chung_lu_skipping(weights: &WeightSequence, seed: u64) -> Vec<(u32, u32)> {
    let n = weights.len();
    let vol = weights.volume();
    let mut order: Vec<u32> = (0..n as u32).collect();
    order.sort_unstable_by(|&a, &b| {
        weights.weights()[b as usize]
            .partial_cmp(&weights.weights()[a as usize])
            .unwrap()
            .then(a.cmp(&b))
    });
    let sorted: Vec<f64> = order.iter().map(|&v| weights.weights()[v as usize]).collect();

    let mut edges = Vec::new();
    for i in 0..n.saturating_sub(1) {
        let mut rng = stream_rng(seed, 1 + i as u64);
        let w_i = sorted[i];
        let mut j = i + 1;
        let mut p = (w_i * sorted[j] / vol).min(1.0);
        while j < n && p > 0.0 {
            if p < 1.0 {
                // geometric skip: number of failures before the next
                // success at probability p
                let r: f64 = rng.gen();
                let skip = (1.0 - r).ln() / (1.0 - p).ln();
                j += skip as usize;
            }
            if j >= n {
                break;
            }
            let q = (w_i * sorted[j] / vol).min(1.0);
            if rng.gen::<f64>() < q / p {
                edges.push((order[i], order[j]));
            }
            p = q;
            j += 1;
        }
    }
    edges
}

/// Samples G(n,p) by geometric skipping over the lexicographic pair
/// order, in expected O(n + m) time. Undirected.
pub fn generate_er(n: usize, p: f64, seed: u64) -> Graph {
    assert!((0.0..=1.0).contains(&p), "edge probability out of [0,1]");
    let mut edges: Vec<(u32, u32)> = Vec::new();
    if n >= 2 && p > 0.0 {
        if p >= 1.0 {
            for x in 0..n as u32 {
                for y in (x + 1)..n as u32 {
                    edges.push((x, y));
                }
            }
        } else {
            let mut rng = stream_rng(seed, 0);
            let total: u64 = n as u64 * (n as u64 - 1) / 2;
            let log_q = (1.0 - p).ln();
            // position in the flattened upper-triangular pair order
            let mut pos: u64 = 0;
            loop {
                let r: f64 = rng.gen();
                let skip = ((1.0 - r).ln() / log_q) as u64;
                pos = match pos.checked_add(skip) {
                    Some(x) => x,
                    None => break,
                };
                if pos >= total {
                    break;
                }
                edges.push(pair_from_index(n as u64, pos));
                pos += 1;
            }
        }
    }
    Graph::from_edges(n, false, &edges)
}

/// Maps a rank in the lexicographic enumeration of pairs (x, y), x < y,
/// back to the pair itself.
fn pair_from_index(n: u64, idx: u64) -> (u32, u32) {
    // row x starts at offset x*n - x*(x+1)/2 - x... solved by scanning
    // from an analytic initial guess to dodge floating point edge cases.
    let total_before = |x: u64| x * n - x * (x + 1) / 2;
    let mut x = {
        let nf = n as f64;
        let guess = nf - 0.5 - ((nf - 0.5) * (nf - 0.5) - 2.0 * idx as f64).max(0.0).sqrt();
        (guess as u64).min(n - 2)
    };
    while total_before(x + 1) <= idx {
        x += 1;
    }
    while total_before(x) > idx {
        x -= 1;
    }
    let y = x + 1 + (idx - total_before(x));
    (x as u32, y as u32)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Direction;

    #[test]
    fn inverse_cdf_lower_endpoint() {
        assert_eq!(power_law_inverse_cdf(0.0, 2.5, 1.0), 1.0);
        assert_eq!(power_law_inverse_cdf(0.0, 3.0, 2.5), 2.5);
    }

    #[test]
    fn rejects_bad_exponent() {
        assert!(sample_power_law_weights(10, 1.0, 1.0, 0).is_err());
        assert!(sample_power_law_weights(10, 0.5, 1.0, 0).is_err());
        assert!(x_min_for_mean(2.0, 3.0).is_err());
    }

    /// Quadrature oracle for the power-law mean: integrates x·Z·x^(−β)
    /// on a log-spaced grid up to a cutoff where the analytic tail of the
    /// integrand is negligible.
    fn mean_by_quadrature(beta: f64, x_min: f64) -> f64 {
        let z = (beta - 1.0) * x_min.powf(beta - 1.0);
        let integrand = |x: f64| x * z * x.powf(-beta);
        let upper = x_min * 1e9f64;
        let steps = 400_000;
        let ratio = (upper / x_min).powf(1.0 / steps as f64);
        let mut sum = 0.0;
        let mut a = x_min;
        for _ in 0..steps {
            let b = a * ratio;
            sum += 0.5 * (integrand(a) + integrand(b)) * (b - a);
            a = b;
        }
        // analytic tail beyond the cutoff: Z/(β−2)·upper^(2−β)
        sum + z / (beta - 2.0) * upper.powf(2.0 - beta)
    }

    #[test]
    fn sample_mean_matches_closed_form() {
        // closed form (β−1)/(β−2)·x_min cross-checked by quadrature
        let closed_form = 2.0;
        let quad = mean_by_quadrature(3.0, 1.0);
        assert!(
            (quad - closed_form).abs() < 1e-3,
            "quadrature {quad} disagrees with closed form"
        );

        let w = sample_power_law_weights(1_000_000, 3.0, 1.0, 42).unwrap();
        let mean = w.volume() / w.len() as f64;
        assert!(
            (mean - closed_form).abs() / closed_form < 0.02,
            "empirical mean {mean} more than 2% off {closed_form}"
        );
    }

    /// Tail oracle: P(X > t) obtained by integrating the density from t
    /// upward equals (t/x_min)^(1−β); checked empirically at β=2.5.
    #[test]
    fn sample_tail_matches_density_integral() {
        let beta = 2.5;
        let z = beta - 1.0; // x_min = 1
        let tail_by_integral = |t: f64| {
            let upper = t * 1e8f64;
            let steps = 200_000;
            let ratio = (upper / t).powf(1.0 / steps as f64);
            let mut sum = 0.0;
            let mut a = t;
            for _ in 0..steps {
                let b = a * ratio;
                sum += 0.5 * (z * a.powf(-beta) + z * b.powf(-beta)) * (b - a);
                a = b;
            }
            sum + z / (beta - 1.0) * upper.powf(1.0 - beta)
        };

        let n = 1_000_000;
        let w = sample_power_law_weights(n, beta, 1.0, 7).unwrap();
        for t in [2.0, 4.0, 8.0] {
            let expect = tail_by_integral(t);
            assert!((expect - t.powf(1.0 - beta)).abs() < 1e-4);
            let frac = w.weights().iter().filter(|&&x| x > t).count() as f64 / n as f64;
            assert!(
                (frac - expect).abs() / expect < 0.10,
                "tail beyond {t}: observed {frac}, integral {expect}"
            );
        }
    }

    #[test]
    fn x_min_for_mean_closed_form() {
        assert!((x_min_for_mean(3.0, 2.0).unwrap() - 1.0).abs() < 1e-12);
        assert!((x_min_for_mean(2.5, 3.0).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn x_min_round_trips_through_sampling() {
        let nu = 5.0;
        let x_min = x_min_for_mean(2.7, nu).unwrap();
        let w = sample_power_law_weights(1_000_000, 2.7, x_min, 3).unwrap();
        let mean = w.volume() / w.len() as f64;
        assert!((mean - nu).abs() / nu < 0.02, "round-trip mean {mean} vs {nu}");
    }

    #[test]
    fn chung_lu_capped_pair_always_present() {
        let w = WeightSequence::from_weights(vec![10.0, 10.0], 2.5, 1.0);
        for seed in 0..50 {
            let g = generate_chung_lu(&w, seed);
            assert_eq!(g.edge_count(), 1);
            assert_eq!(g.out_neighbors(0), &[1]);
        }
    }

    #[test]
    fn chung_lu_pair_frequency_within_binomial_bounds() {
        // equal weights w on 3 vertices: each pair present w.p. w/3
        let w_val = 1.2f64;
        let w = WeightSequence::from_weights(vec![w_val; 3], 2.5, 1.0);
        let p = w_val / 3.0;
        let trials = 10_000;
        let mut counts = [0u32; 3]; // pairs (0,1), (0,2), (1,2)
        for seed in 0..trials {
            let g = generate_chung_lu(&w, seed);
            let has = |a: u32, b: u32| g.out_neighbors(a).contains(&b);
            counts[0] += has(0, 1) as u32;
            counts[1] += has(0, 2) as u32;
            counts[2] += has(1, 2) as u32;
        }
        let mean = trials as f64 * p;
        let sigma = (trials as f64 * p * (1.0 - p)).sqrt();
        for c in counts {
            assert!(
                (c as f64 - mean).abs() <= 3.0 * sigma,
                "pair count {c} outside 3 sigma of {mean}"
            );
        }
    }

    /// Degree concentration mirroring the lower Chernoff bound on vertex
    /// degrees: among vertices with weight at least 32·ln n, fewer than 1%
    /// end up with degree below half their weight.
    #[test]
    fn chung_lu_degrees_concentrate_near_weights() {
        let n = 10_000;
        let nu = 10.0;
        let beta = 2.5;
        let x_min = x_min_for_mean(beta, nu).unwrap();
        let w = sample_power_law_weights(n, beta, x_min, 17).unwrap();
        let g = generate_chung_lu(&w, 18);
        let cutoff = 32.0 * (n as f64).ln();
        let mut heavy = 0usize;
        let mut low = 0usize;
        for v in 0..n {
            let weight = w.weights()[v];
            if weight >= cutoff {
                heavy += 1;
                if (g.total_degree(v as u32) as f64 / 2.0) < weight / 2.0 {
                    low += 1;
                }
            }
        }
        assert!(heavy > 0, "no heavy vertices sampled; weaken the cutoff");
        assert!(
            (low as f64) < 0.01 * heavy as f64 + 1e-9,
            "{low} of {heavy} heavy vertices under half weight"
        );
    }

    #[test]
    fn er_empty_and_complete() {
        let g = generate_er(5, 0.0, 1);
        assert_eq!(g.edge_count(), 0);
        let g = generate_er(5, 1.0, 1);
        assert_eq!(g.edge_count(), 10);
        g.check_invariants().unwrap();
    }

    fn is_connected(g: &Graph) -> bool {
        g.vertex_count() == 0
            || g.bfs(0, Direction::Forward)
                .iter()
                .all(|d| !d.is_unreachable())
    }

    #[test]
    fn er_above_connectivity_threshold_is_connected() {
        let n = 2000;
        let p = 2.0 * (n as f64).ln() / n as f64;
        let connected = (0..100)
            .filter(|&seed| is_connected(&generate_er(n, p, seed)))
            .count();
        assert!(connected >= 99, "only {connected}/100 connected");
    }

    #[test]
    fn er_edge_count_near_expectation() {
        let n = 400;
        let p = 0.02;
        let pairs = (n * (n - 1) / 2) as f64;
        let sigma = (pairs * p * (1.0 - p)).sqrt();
        for seed in 0..20 {
            let m = generate_er(n, p, seed).edge_count() as f64;
            assert!((m - pairs * p).abs() <= 5.0 * sigma);
        }
    }

    #[test]
    fn generators_are_deterministic() {
        let w = sample_power_law_weights(200, 2.5, 1.0, 5).unwrap();
        let w2 = sample_power_law_weights(200, 2.5, 1.0, 5).unwrap();
        assert_eq!(w.weights(), w2.weights());

        let a = generate_chung_lu(&w, 9);
        let b = generate_chung_lu(&w, 9);
        let edges = |g: &Graph| {
            (0..g.vertex_count() as u32)
                .flat_map(|u| g.out_neighbors(u).to_vec())
                .collect::<Vec<_>>()
        };
        assert_eq!(edges(&a), edges(&b));

        let a = generate_er(300, 0.01, 4);
        let b = generate_er(300, 0.01, 4);
        assert_eq!(edges(&a), edges(&b));
        let c = generate_er(300, 0.01, 5);
        assert_ne!(edges(&a), edges(&c));
    }

    /// The production generator must agree edge-for-edge with a naive
    /// per-pair Bernoulli sweep consuming stream 0 in canonical pair
    /// order.
    #[test]
    fn chung_lu_matches_naive_reference() {
        for (n, seed) in [(3usize, 0u64), (17, 1), (64, 2), (512, 3)] {
            let w = sample_power_law_weights(n, 2.3, 1.5, seed).unwrap();
            let g = generate_chung_lu(&w, seed + 100);

            let mut rng = stream_rng(seed + 100, 0);
            let mut expect: Vec<(u32, u32)> = Vec::new();
            for x in 0..n {
                for y in (x + 1)..n {
                    let p = (w.weights()[x] * w.weights()[y] / w.volume()).min(1.0);
                    if rng.gen::<f64>() < p {
                        expect.push((x as u32, y as u32));
                    }
                }
            }
            let got: Vec<(u32, u32)> = (0..n as u32)
                .flat_map(|u| {
                    g.out_neighbors(u)
                        .iter()
                        .filter(move |&&v| v > u)
                        .map(move |&v| (u, v))
                })
                .collect();
            assert_eq!(got, expect, "n={n} seed={seed}");
        }
    }

    /// The skipping path must sample each pair with the model probability;
    /// checked against per-pair frequencies on a tiny weight vector by
    /// forcing the skipping code path directly.
    #[test]
    fn chung_lu_skipping_pair_frequencies() {
        let w = WeightSequence::from_weights(vec![3.0, 2.0, 1.0, 1.0], 2.5, 1.0);
        let vol = w.volume();
        let trials = 20_000u64;
        let mut counts = std::collections::HashMap::new();
        for seed in 0..trials {
            for &(x, y) in &super::chung_lu_skipping(&w, seed) {
                let key = if x < y { (x, y) } else { (y, x) };
                *counts.entry(key).or_insert(0u64) += 1;
            }
        }
        for x in 0..4u32 {
            for y in (x + 1)..4 {
                let p = (w.weights()[x as usize] * w.weights()[y as usize] / vol).min(1.0);
                let c = *counts.get(&(x, y)).unwrap_or(&0) as f64;
                let sigma = (trials as f64 * p * (1.0 - p)).sqrt().max(1.0);
                assert!(
                    (c - trials as f64 * p).abs() <= 4.0 * sigma,
                    "pair ({x},{y}) count {c} vs expected {}",
                    trials as f64 * p
                );
            }
        }
    }

    #[test]
    fn generated_graphs_satisfy_invariants() {
        let w = sample_power_law_weights(400, 2.2, 1.0, 8).unwrap();
        generate_chung_lu(&w, 9).check_invariants().unwrap();
        generate_er(400, 0.02, 10).check_invariants().unwrap();
    }
}

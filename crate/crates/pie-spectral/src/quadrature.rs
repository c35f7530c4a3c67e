//! Legendre-Gauss-Lobatto quadrature.
//!
//! An n-point rule on [-1, 1] includes both endpoints and is exact for
//! polynomials of degree <= 2n - 3. Nodes are the endpoints together with
//! the roots of P'_{n-1}, found by Newton iteration on the recurrence for
//! the Legendre polynomials; weights are 2 / (n (n-1) P_{n-1}(x)^2).

/// Nodes (ascending) and weights of the n-point Lobatto rule on [-1, 1].
pub fn gauss_lobatto(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 2, "a Lobatto rule needs at least the two endpoints");
    if n == 2 {
        return (vec![-1.0, 1.0], vec![1.0, 1.0]);
    }
    let m = n - 1;
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for j in 0..n {
        // Chebyshev-Gauss-Lobatto points as starting guesses.
        let mut x = -(std::f64::consts::PI * j as f64 / m as f64).cos();
        if j == 0 {
            x = -1.0;
        } else if j == m {
            x = 1.0;
        } else {
            for _ in 0..100 {
                let (p, p_prev) = legendre_pair(m, x);
                // Interior nodes are roots of P'_m. Newton on P'_m uses
                // d/dx P_m = m (x P_m - P_{m-1}) / (x^2 - 1) and the
                // Legendre equation (1 - x^2) P''_m = 2x P'_m - m(m+1) P_m.
                let dp = m as f64 * (x * p - p_prev) / (x * x - 1.0);
                let ddp = (2.0 * x * dp - (m * (m + 1)) as f64 * p) / (1.0 - x * x);
                let step = dp / ddp;
                x -= step;
                if step.abs() < 1e-15 {
                    break;
                }
            }
        }
        let (p, _) = legendre_pair(m, x);
        nodes[j] = x;
        weights[j] = 2.0 / ((n * m) as f64 * p * p);
    }
    // Enforce exact symmetry.
    for j in 0..n / 2 {
        let x = 0.5 * (nodes[n - 1 - j] - nodes[j]);
        nodes[j] = -x;
        nodes[n - 1 - j] = x;
        let w = 0.5 * (weights[j] + weights[n - 1 - j]);
        weights[j] = w;
        weights[n - 1 - j] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

/// (P_m(x), P_{m-1}(x)) by the three-term recurrence.
fn legendre_pair(m: usize, x: f64) -> (f64, f64) {
    let mut p_prev = 1.0;
    let mut p = x;
    for k in 2..=m {
        let next = ((2 * k - 1) as f64 * x * p - (k - 1) as f64 * p_prev) / k as f64;
        p_prev = p;
        p = next;
    }
    (p, p_prev)
}

/// The same rule mapped to [a, b].
pub fn gauss_lobatto_on(n: usize, a: f64, b: f64) -> (Vec<f64>, Vec<f64>) {
    let (x, w) = gauss_lobatto(n);
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    (
        x.iter().map(|&xi| mid + half * xi).collect(),
        w.iter().map(|&wi| half * wi).collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_points_is_trapezoid() {
        let (x, w) = gauss_lobatto(2);
        assert_eq!(x, vec![-1.0, 1.0]);
        assert_eq!(w, vec![1.0, 1.0]);
    }

    #[test]
    fn three_points_is_simpson() {
        let (x, w) = gauss_lobatto(3);
        assert!((x[1]).abs() < 1e-15);
        assert!((w[0] - 1.0 / 3.0).abs() < 1e-15);
        assert!((w[1] - 4.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn five_point_nodes_match_known_values() {
        let (x, w) = gauss_lobatto(5);
        let inner = (3.0f64 / 7.0).sqrt();
        assert!((x[1] + inner).abs() < 1e-14);
        assert!((x[3] - inner).abs() < 1e-14);
        assert!((w[0] - 0.1).abs() < 1e-14);
        assert!((w[1] - 49.0 / 90.0).abs() < 1e-14);
        assert!((w[2] - 32.0 / 45.0).abs() < 1e-14);
    }

    #[test]
    fn exact_for_degree_2n_minus_3() {
        for n in 2..=12 {
            let (x, w) = gauss_lobatto(n);
            let deg = 2 * n - 3;
            for d in 0..=deg {
                let quad: f64 = x.iter().zip(&w).map(|(&xi, &wi)| wi * xi.powi(d as i32)).sum();
                let exact = if d % 2 == 1 { 0.0 } else { 2.0 / (d as f64 + 1.0) };
                assert!(
                    (quad - exact).abs() < 1e-13,
                    "n={n} degree {d}: {quad} vs {exact}"
                );
            }
        }
    }

    #[test]
    fn mapped_rule_integrates_on_interval() {
        let (x, w) = gauss_lobatto_on(6, 1.0, 3.0);
        let quad: f64 = x.iter().zip(&w).map(|(&xi, &wi)| wi * xi * xi).sum();
        assert!((quad - 26.0 / 3.0).abs() < 1e-13);
    }

    #[test]
    fn weights_sum_to_interval_length() {
        for n in [2, 5, 9, 16, 33] {
            let (_, w) = gauss_lobatto(n);
            let s: f64 = w.iter().sum();
            assert!((s - 2.0).abs() < 1e-13, "n={n}");
        }
    }
}

use ewl_core::quantum::haar_sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn first_and_second_moments() {
    let n = 100_000;
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let (mut sum, mut sum_sq) = ([0.0; 4], [0.0; 4]);
    for _ in 0..n {
        let c = haar_sample(&mut rng).coefficients();
        for k in 0..4 {
            sum[k] += c[k];
            sum_sq[k] += c[k] * c[k];
        }
    }
    let nf = n as f64;
    // a uniform point on S^3 has E[x] = 0, E[x^2] = 1/4, Var[x^2] = 1/8 - 1/16
    let sigma_sq = (1.0f64 / 16.0).sqrt() / nf.sqrt();
    for k in 0..4 {
        assert!((sum[k] / nf).abs() <= 4.0 / nf.sqrt(), "mean of coordinate {k}");
        assert!((sum_sq[k] / nf - 0.25).abs() <= 3.0 * sigma_sq, "second moment of coordinate {k}");
    }
}

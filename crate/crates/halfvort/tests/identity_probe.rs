use halfvort::kernels::Point2;
use halfvort::vorticity::{kernel_w, KernelConfig, WFieldEvaluator};

#[test]
#[ignore]
fn composition_identity_probe() {
    let cfg = KernelConfig::default();
    let y0 = Point2::new(0.0, 1.0);
    let (s, t) = (0.25, 0.25);
    // quadrature grid over y
    let (l1, l2) = (48.0, 10.0);
    let (n1, n2) = (1537usize, 161usize);
    let h1 = 2.0 * l1 / (n1 - 1) as f64;
    let h2 = l2 / (n2 - 1) as f64;
    // intermediate field on quadrature nodes
    let ev_s = WFieldEvaluator::new(y0, s, &cfg).unwrap();
    for &x in &[Point2::new(0.4, 0.7), Point2::new(-1.0, 0.1)] {
        let ev_row: Vec<WFieldEvaluator> = (0..n2)
            .map(|j| WFieldEvaluator::new(Point2::new(0.0, j as f64 * h2), t, &cfg).unwrap())
            .collect();
        let mut acc = 0.0;
        for j in 1..n2 {
            let y2 = j as f64 * h2;
            let w2 = if j == n2 - 1 { 0.5 } else { 1.0 };
            for i in 0..n1 {
                let y1 = -l1 + i as f64 * h1;
                let w1 = if i == 0 || i == n1 - 1 { 0.5 } else { 1.0 };
                let omega1 = ev_s.w(Point2::new(y1, y2));
                let w_xy = ev_row[j].w(Point2::new(x.x1 - y1, x.x2));
                acc += w1 * w2 * h1 * h2 * w_xy * omega1;
            }
        }
        let direct = kernel_w(x, y0, s + t, &cfg).unwrap();
        println!(
            "x=({},{}): composed {acc:.6e} vs direct {direct:.6e}, rel {:.3e}",
            x.x1,
            x.x2,
            (acc - direct).abs() / direct.abs()
        );
    }
}

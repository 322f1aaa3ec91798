use halfvort::grid::{integrate_field, HalfPlaneGrid};
use halfvort::initial::point_vortex;
use halfvort::kernels::Point2;
use halfvort::vorticity::{apply_t_kernel, KernelConfig};

#[test]
#[ignore]
fn tail_mass_probe() {
    let cfg = KernelConfig::default();
    let mu = point_vortex(1.0, Point2::new(0.0, 1.0)).unwrap();
    for &l in &[8.0, 16.0, 32.0, 64.0] {
        let n1 = (l / 8.0 * 128.0) as usize + 1;
        let grid = HalfPlaneGrid::symmetric(l, 8.0, n1, 65).unwrap();
        let f = apply_t_kernel(&mu, 0.25, grid, &cfg).unwrap();
        let mass = integrate_field(&f).unwrap();
        let l1 = integrate_field(&f.map(f64::abs)).unwrap();
        let mut outer = 0.0;
        for j in 0..grid.n2 {
            for i in 0..grid.n1 {
                if grid.x1(i).abs() > 8.0 {
                    outer += grid.node_weight(i, j) * f.at(i, j).abs();
                }
            }
        }
        println!("L={l}: total mass {mass:.6}, L1 {l1:.6}, |x1|>8 part {outer:.6}");
    }
}

use halfvort::grid::{HalfPlaneGrid, ScalarField};
use halfvort::initial::point_vortex;
use halfvort::kernels::{gauss2d, Point2};
use halfvort::measure::VorticityMeasure;
use halfvort::semigroups::heat_neumann;
use halfvort::vorticity::{apply_t_composite, apply_t_kernel, KernelConfig, WFieldEvaluator};

#[test]
#[ignore]
fn composite_term_probe() {
    let cfg = KernelConfig::default();
    let mu = point_vortex(1.0, Point2::new(0.0, 1.0)).unwrap();
    let grid = HalfPlaneGrid::symmetric(12.0, 8.0, 385, 129).unwrap();
    let t = 0.25;
    let omega1 = apply_t_kernel(&mu, t, grid, &cfg).unwrap();
    let dm = VorticityMeasure::from_density(omega1.clone());

    // full two-step vs kernel-truth at probe points
    let composite = apply_t_composite(&dm, t, grid, &cfg).unwrap();
    let probes = [(192usize, 10usize), (192, 40), (150, 4), (230, 20), (192, 0)];
    // term 1: heat_neumann vs brute
    let heat = heat_neumann(&dm, grid, t).unwrap();
    for &(i, j) in &probes {
        let x = Point2::new(grid.x1(i), grid.x2(j));
        let mut brute = 0.0;
        for jy in 0..grid.n2 {
            for iy in 0..grid.n1 {
                let y = Point2::new(grid.x1(iy), grid.x2(jy));
                brute += grid.node_weight(iy, jy)
                    * omega1.at(iy, jy)
                    * (gauss2d(x.sub(y), t).unwrap() + gauss2d(x.sub(y.reflect()), t).unwrap());
            }
        }
        println!("heatN at ({i},{j}): field {:.6e} brute {:.6e} diff {:.2e}", heat.at(i, j), brute, (heat.at(i,j)-brute).abs());
    }
    // whole composite vs exact two-step kernel identity (truth = W(x,y0,2t))
    let ev = WFieldEvaluator::new(Point2::new(0.0, 1.0), 2.0 * t, &cfg).unwrap();
    for &(i, j) in &probes {
        let x = Point2::new(grid.x1(i), grid.x2(j));
        let truth = ev.w(x);
        println!(
            "two-step at ({i},{j}): composite {:.6e} truth {:.6e} diff {:.2e}",
            composite.at(i, j),
            truth,
            (composite.at(i, j) - truth).abs()
        );
    }
}

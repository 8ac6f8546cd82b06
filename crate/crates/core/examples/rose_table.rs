use fiedler_lab::conjecture::rose_fiedler;
use fiedler_lab::io::emit_b_matrix;
use fiedler_lab::RoseParams;

fn main() {
    for (p, s) in [(11, 5), (10, 5), (3, 5)] {
        let params = RoseParams::new(p, s).unwrap();
        let r = rose_fiedler(params).unwrap();
        println!(
            "p={p} s={s} lambda2={} gap={:?} iters={} residual={:e}",
            r.lambda2, r.gap, r.iterations, r.residual
        );
        print!("{}", emit_b_matrix(params, &r).unwrap());
    }
}

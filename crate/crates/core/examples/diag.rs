use gyre_core::phase::*;
use gyre_core::shells::ShellIndex;

fn main() {
    let shell = ShellIndex::new(0, 0, 0);
    // calibration sweep for c*: 10^6 valid samples per sign pair, 10 seeds
    let mut global_min = f64::INFINITY;
    let mut global_pmax_min = f64::INFINITY;
    for seed in 0..10u64 {
        let mut per_seed = f64::INFINITY;
        let mut cond_total = 0;
        for (i, signs) in [(Sign::Plus,Sign::Plus),(Sign::Plus,Sign::Minus),(Sign::Minus,Sign::Plus),(Sign::Minus,Sign::Minus)].iter().enumerate() {
            let st = phase_vs_sigma_sample(shell, shell, shell, *signs, 1_000_000, seed*17+i as u64);
            cond_total += st.conditioned;
            if !st.inconclusive {
                per_seed = per_seed.min(st.min_sigma_ratio);
                global_pmax_min = global_pmax_min.min(st.min_pmax);
            }
        }
        println!("seed {seed}: min ratio {per_seed:.4}, conditioned {cond_total}");
        global_min = global_min.min(per_seed);
    }
    println!("GLOBAL min sigma ratio: {global_min:.4}, min pmax: {global_pmax_min:.4}");
}

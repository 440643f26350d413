//! Free disposal: a heavy edge arriving on a full resource pushes lighter
//! edges out instead of being refused.
//!
//! ```text
//! cargo run --example weighted_free_disposal
//! ```

use hypermatch::hypergraph::pad_to_uniform;
use hypermatch::{run_online, Algorithm, Instance};

fn main() -> hypermatch::Result<()> {
    // resources 0 and 1 are shared, padding fills the rest with fresh vertices
    let k = 8;
    let inst = pad_to_uniform(&Instance::weighted(
        k,
        2,
        vec![
            (vec![0], 0.5),
            (vec![0], 0.5),
            (vec![0, 1], 1.0),
            (vec![0], 0.5),
            (vec![1], 2.0),
            (vec![0], 20.0),
            (vec![0, 1], 5.0),
            (vec![1], 50.0),
        ],
    ));
    let t = run_online(&inst, Algorithm::WeightedWaterFill)?;
    println!("edge  weight       dy   displaced");
    for (e, rec) in inst.arrivals.iter().zip(&t.records) {
        let shed: Vec<String> = rec.decision.displacements.iter().map(|(f, d)| format!("{}:{d:.4}", f.0)).collect();
        println!("{:>4} {:>7.2} {:>8.5}   {}", e.id.0, e.weight, rec.decision.delta_y, shed.join(" "));
    }
    println!();
    for e in &inst.arrivals {
        println!("y[{}] = {:.5}", e.id.0, t.allocation[e.id.0]);
    }
    let unweighted = run_online(&inst.as_unit_weight(), Algorithm::WaterFill)?;
    let value: f64 = inst.arrivals.iter().map(|e| e.weight * unweighted.allocation[e.id.0]).sum();
    println!("weighted value: free disposal {:.4}, weight-blind water-filling {value:.4}", t.objective);
    Ok(())
}

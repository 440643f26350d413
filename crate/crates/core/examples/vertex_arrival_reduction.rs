//! Vertex arrivals become edge arrivals by giving each online vertex one
//! extra private resource shared by all of its candidate edges.
//!
//! ```text
//! cargo run --example vertex_arrival_reduction
//! ```

use hypermatch::adversary::random_vertex_arrival;
use hypermatch::hypergraph::{lift_edge_decisions, reduce_vertex_to_edge_arrival};
use hypermatch::{run_online, Algorithm};

fn main() -> hypermatch::Result<()> {
    let vinst = random_vertex_arrival(2, 6, 3, 8, 42)?;
    let (inst, map) = reduce_vertex_to_edge_arrival(&vinst);
    println!("{} online vertices, {} offline resources -> {} edges of rank {}", vinst.groups.len(), vinst.num_resources, inst.num_edges(), inst.rank_k);
    for (e, (g, l)) in inst.arrivals.iter().zip(&map.origin) {
        let vs: Vec<usize> = e.vertices.iter().map(|v| v.0).collect();
        println!("  edge {:>2} = vertex {g} option {l}: {vs:?}", e.id.0);
    }
    let t = run_online(&inst, Algorithm::Greedy)?;
    let choices = lift_edge_decisions(&map, &t.matching())?;
    for (g, c) in choices.iter().enumerate() {
        match c {
            Some(l) => {
                let vs: Vec<usize> = vinst.groups[g][*l].vertices.iter().map(|v| v.0).collect();
                println!("vertex {g} -> option {l} {vs:?}");
            }
            None => println!("vertex {g} unmatched"),
        }
    }
    println!("matched {} of {}", t.objective, vinst.groups.len());
    Ok(())
}

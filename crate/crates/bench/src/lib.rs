//! Fixtures shared by the benchmarks in `benches/`.

use netmoment::hashdb::hash_network_at;
use netmoment::sim::{sample_network, Graphon};
use netmoment::{rng, Graph, HashDb, HashRecord, Motif};

/// A `SmoothGraphon-1` sample at density scale 0.3.
pub fn sampled_graph(m: usize, seed: u64) -> Graph {
    let g = Graphon::smooth(1).expect("built-in graphon");
    sample_network(&g, 0.3, m, &mut rng::stream(seed, 0)).expect("valid sample").graph
}

/// Hashed record of [`sampled_graph`] for the built-in motifs.
pub fn hashed(m: usize, seed: u64) -> HashRecord {
    hash_network_at(&sampled_graph(m, seed), &Motif::builtins(), &format!("g{seed}"), "1970-01-01T00:00:00Z").expect("hashable")
}

/// Database of `k` records obtained by relabelling a few hashed networks.
pub fn database(k: usize, m: usize) -> HashDb {
    let base: Vec<HashRecord> = (0..8).map(|s| hashed(m, s)).collect();
    (0..k)
        .map(|i| {
            let mut rec = base[i % base.len()].clone();
            rec.network_id = format!("entry{i:06}");
            for s in &mut rec.summaries {
                s.network_id = rec.network_id.clone();
            }
            rec
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_are_consistent() {
        let db = database(20, 40);
        assert_eq!(db.len(), 20);
        for rec in db.records() {
            rec.validate().unwrap();
        }
    }
}

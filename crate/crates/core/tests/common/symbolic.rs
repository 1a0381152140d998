use cluster_scatter::exchange::{canonical_key, mutate_seed, FixedData, SeedKey, TropicalSeed};
use cluster_scatter::laurent::{extract_c_matrix, extract_g_matrix, symbolic_mutate, LaurentPoly, SymbolicSeed};

pub type Pairs = Vec<(SeedKey, Vec<LaurentPoly>)>;

/// Mutates the tropical and the symbolic seed side by side along every
/// reduced walk of the given depth, asserting that extractions agree.
pub fn walk(fd: &FixedData, t: &TropicalSeed, s: &SymbolicSeed, last: Option<usize>, depth: usize, out: &mut Pairs) {
    assert_eq!(extract_c_matrix(s), t.c, "C mismatch along {:?}", t.path);
    assert_eq!(extract_g_matrix(s, fd).unwrap(), t.g, "G mismatch along {:?}", t.path);
    assert_eq!(s.b, t.b);
    out.push((canonical_key(t), s.unlabeled_cluster()));
    if depth == 0 {
        return;
    }
    for k in 0..fd.rank() {
        if Some(k) == last {
            continue;
        }
        let t2 = mutate_seed(fd, t, k).unwrap();
        let s2 = symbolic_mutate(s, k).unwrap();
        walk(fd, &t2, &s2, Some(k), depth - 1, out);
    }
}


//! Error sampling, syndrome extraction, MWPM decoding, and logical-failure
//! detection for the Z-error sector.

use super::lattice::SurfaceLattice;
use crate::error::{Error, Result};
use mwmatching::Matching;
use rand::Rng;

/// Set of edges carrying Z errors, as a dense flag vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ErrorChain {
    pub flipped: Vec<bool>,
}

impl ErrorChain {
    pub fn empty(n_edges: usize) -> Self {
        ErrorChain {
            flipped: vec![false; n_edges],
        }
    }

    pub fn from_edges(n_edges: usize, edges: &[usize]) -> Self {
        let mut c = Self::empty(n_edges);
        for &e in edges {
            c.flipped[e] = true;
        }
        c
    }

    pub fn weight(&self) -> usize {
        self.flipped.iter().filter(|&&f| f).count()
    }

    pub fn xor(&self, other: &Self) -> Self {
        ErrorChain {
            flipped: self
                .flipped
                .iter()
                .zip(&other.flipped)
                .map(|(&a, &b)| a ^ b)
                .collect(),
        }
    }

    pub fn edges(&self) -> impl Iterator<Item = usize> + '_ {
        self.flipped
            .iter()
            .enumerate()
            .filter_map(|(e, &f)| f.then_some(e))
    }
}

/// Anyon positions: interior vertices with odd incident-error parity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Syndrome {
    pub anyons: Vec<usize>,
}

/// Flip each edge independently with probability `eps`.
pub fn sample_errors(
    lat: &SurfaceLattice,
    eps: f64,
    rng: &mut impl Rng,
) -> Result<ErrorChain> {
    if !(0.0..=1.0).contains(&eps) {
        return Err(Error::InvalidArgument(format!(
            "error probability {eps} outside [0, 1]"
        )));
    }
    let mut chain = ErrorChain::empty(lat.n_edges());
    for f in chain.flipped.iter_mut() {
        *f = rng.gen::<f64>() < eps;
    }
    Ok(chain)
}

/// Interior vertices with an odd number of incident flipped edges; rough
/// boundaries absorb chain ends silently.
pub fn syndrome_of(lat: &SurfaceLattice, chain: &ErrorChain) -> Syndrome {
    let mut anyons = Vec::new();
    for v in lat.interior_vertices() {
        let parity = lat
            .incident_edges(v)
            .iter()
            .filter(|&&e| chain.flipped[e])
            .count()
            % 2;
        if parity == 1 {
            anyons.push(v);
        }
    }
    Syndrome { anyons }
}

/// Deterministic shortest path between two vertices: walk down a BFS distance
/// field from `to`, taking the smallest incident edge index at each step.
fn shortest_path_edges(lat: &SurfaceLattice, from: usize, to: usize) -> Vec<usize> {
    let dist = lat.bfs_distances(to);
    let mut path = Vec::with_capacity(dist[from]);
    let mut v = from;
    while v != to {
        let mut next = None;
        for &e in lat.incident_edges(v) {
            let (a, b) = lat.edge_endpoints(e);
            let w = if a == v { b } else { a };
            if dist[w] + 1 == dist[v] {
                next = Some((e, w));
                break; // incident lists are in ascending edge order
            }
        }
        let (e, w) = next.expect("BFS field must descend to the target");
        path.push(e);
        v = w;
    }
    path
}

/// Deterministic shortest path from a vertex to the nearest rough boundary.
fn boundary_path_edges(lat: &SurfaceLattice, from: usize, bdist: &[usize]) -> Vec<usize> {
    let mut path = Vec::with_capacity(bdist[from]);
    let mut v = from;
    while bdist[v] != 0 {
        let mut next = None;
        for &e in lat.incident_edges(v) {
            let (a, b) = lat.edge_endpoints(e);
            let w = if a == v { b } else { a };
            if bdist[w] + 1 == bdist[v] {
                next = Some((e, w));
                break;
            }
        }
        let (e, w) = next.expect("boundary distance field must descend");
        path.push(e);
        v = w;
    }
    path
}

/// Exact minimum-weight perfect matching on the anyons plus one virtual
/// boundary node per anyon, then shortest-path chain reconstruction.
///
/// Node layout: anyon i is node i, its virtual boundary node is s+i. Weights:
/// anyon–anyon = graph distance, anyon–own-boundary = distance to the nearest
/// rough boundary, virtual–virtual = 0 (boundary absorbs any even surplus).
pub fn decode_mwpm(lat: &SurfaceLattice, syn: &Syndrome) -> ErrorChain {
    decode_mwpm_weighted(lat, syn).0
}

/// [`decode_mwpm`] together with the matching's total pairing weight (the sum
/// of pairwise distances, before any path-overlap cancellation).
pub fn decode_mwpm_weighted(lat: &SurfaceLattice, syn: &Syndrome) -> (ErrorChain, usize) {
    // Odd anyon counts are legal: a chain may end once at a rough boundary
    // and once in the bulk. Virtual boundary nodes keep the matching perfect.
    let s = syn.anyons.len();
    if s == 0 {
        return (ErrorChain::empty(lat.n_edges()), 0);
    }
    let bdist = lat.boundary_distances();
    let dist_fields: Vec<Vec<usize>> = syn.anyons.iter().map(|&v| lat.bfs_distances(v)).collect();
    let mut edges: mwmatching::Edges = Vec::new();
    for i in 0..s {
        for j in (i + 1)..s {
            let w = dist_fields[i][syn.anyons[j]] as i32;
            edges.push((i, j, -w));
            edges.push((s + i, s + j, 0)); // virtual–virtual
        }
        edges.push((i, s + i, -(bdist[syn.anyons[i]] as i32)));
    }
    // Maximum-weight matching on negated weights = minimum total distance;
    // max_cardinality forces a perfect matching.
    let mates = Matching::new(edges).max_cardinality().solve();
    let mut correction = ErrorChain::empty(lat.n_edges());
    let mut total = 0usize;
    for i in 0..s {
        let m = mates[i];
        let path = if m < s {
            if m < i {
                continue; // pair already handled
            }
            shortest_path_edges(lat, syn.anyons[i], syn.anyons[m])
        } else {
            boundary_path_edges(lat, syn.anyons[i], &bdist)
        };
        total += path.len();
        for e in path {
            correction.flipped[e] ^= true;
        }
    }
    (correction, total)
}

/// Total matching weight (for minimality tests against exhaustive pairing).
pub fn matching_weight(lat: &SurfaceLattice, syn: &Syndrome) -> usize {
    decode_mwpm_weighted(lat, syn).1
}

/// Parity of the chain's crossing count of the dual cut at band `r`.
pub fn cut_parity(lat: &SurfaceLattice, chain: &ErrorChain, band: usize) -> bool {
    lat.band_edges(band)
        .iter()
        .filter(|&&e| chain.flipped[e])
        .count()
        % 2
        == 1
}

/// True iff the residual cycle is in the nontrivial homology class (odd
/// crossing of any horizontal dual cut). Hard error on a nonempty syndrome:
/// that indicates a decoder bug, not a logical failure.
pub fn is_logical_failure(lat: &SurfaceLattice, residual: &ErrorChain) -> Result<bool> {
    let syn = syndrome_of(lat, residual);
    if !syn.anyons.is_empty() {
        return Err(Error::DecoderInvariant(format!(
            "residual has nonempty syndrome ({} anyons)",
            syn.anyons.len()
        )));
    }
    Ok(cut_parity(lat, residual, lat.d() / 2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seed::child_rng;

    fn lat3() -> SurfaceLattice {
        SurfaceLattice::build(3).unwrap()
    }

    #[test]
    fn sample_extremes() {
        let lat = lat3();
        let mut rng = child_rng(1, 0);
        assert_eq!(sample_errors(&lat, 0.0, &mut rng).unwrap().weight(), 0);
        assert_eq!(
            sample_errors(&lat, 1.0, &mut rng).unwrap().weight(),
            lat.n_edges()
        );
        assert!(sample_errors(&lat, 1.5, &mut rng).is_err());
    }

    #[test]
    fn empty_chain_empty_syndrome() {
        let lat = lat3();
        let syn = syndrome_of(&lat, &ErrorChain::empty(lat.n_edges()));
        assert!(syn.anyons.is_empty());
        assert_eq!(decode_mwpm(&lat, &syn).weight(), 0);
    }

    #[test]
    fn single_edge_endpoints_flagged() {
        let lat = lat3();
        for e in 0..lat.n_edges() {
            let chain = ErrorChain::from_edges(lat.n_edges(), &[e]);
            let syn = syndrome_of(&lat, &chain);
            let (a, b) = lat.edge_endpoints(e);
            let expected: Vec<usize> = [a, b].into_iter().filter(|&v| !lat.is_rough(v)).collect();
            assert_eq!(syn.anyons, expected);
        }
    }

    #[test]
    fn logical_z_is_undetectable_and_fails() {
        let lat = lat3();
        let (zbar, _) = lat.logical_operators();
        let chain = ErrorChain::from_edges(lat.n_edges(), &zbar);
        assert!(syndrome_of(&lat, &chain).anyons.is_empty());
        assert!(is_logical_failure(&lat, &chain).unwrap());
    }

    #[test]
    fn plaquette_boundaries_are_trivial_cycles() {
        // Z-chain deformations are generated by the Z-stabilizers: the
        // plaquette (face) boundaries, 3 or 4 edges each.
        let lat = lat3();
        for face in lat.plaquettes() {
            let chain = ErrorChain::from_edges(lat.n_edges(), face);
            assert!(syndrome_of(&lat, &chain).anyons.is_empty());
            assert!(!is_logical_failure(&lat, &chain).unwrap());
        }
    }

    #[test]
    fn adjacent_pair_gets_single_edge() {
        let lat = lat3();
        // An interior vertical edge: both endpoints interior checks.
        let e = lat
            .interior_vertices()
            .flat_map(|v| lat.incident_edges(v).iter().copied())
            .find(|&e| {
                let (a, b) = lat.edge_endpoints(e);
                !lat.is_rough(a) && !lat.is_rough(b)
            })
            .unwrap();
        let chain = ErrorChain::from_edges(lat.n_edges(), &[e]);
        let syn = syndrome_of(&lat, &chain);
        let correction = decode_mwpm(&lat, &syn);
        assert_eq!(correction, chain);
    }

    #[test]
    fn all_single_edge_errors_corrected() {
        let lat = lat3();
        for e in 0..lat.n_edges() {
            let chain = ErrorChain::from_edges(lat.n_edges(), &[e]);
            let correction = decode_mwpm(&lat, &syndrome_of(&lat, &chain));
            assert!(correction.weight() <= 1);
            let residual = chain.xor(&correction);
            assert!(!is_logical_failure(&lat, &residual).unwrap());
        }
    }

    #[test]
    fn decoder_soundness_random() {
        let lat = SurfaceLattice::build(5).unwrap();
        for trial in 0..500u64 {
            let mut rng = child_rng(99, trial);
            let chain = sample_errors(&lat, 0.12, &mut rng).unwrap();
            let correction = decode_mwpm(&lat, &syndrome_of(&lat, &chain));
            let residual = chain.xor(&correction);
            assert!(syndrome_of(&lat, &residual).anyons.is_empty());
        }
    }

    #[test]
    fn cut_independence_for_cycles() {
        let lat = SurfaceLattice::build(5).unwrap();
        for trial in 0..200u64 {
            let mut rng = child_rng(7, trial);
            let chain = sample_errors(&lat, 0.15, &mut rng).unwrap();
            let correction = decode_mwpm(&lat, &syndrome_of(&lat, &chain));
            let residual = chain.xor(&correction);
            let p0 = cut_parity(&lat, &residual, 0);
            for band in 1..lat.d() {
                assert_eq!(cut_parity(&lat, &residual, band), p0);
            }
        }
    }

    #[test]
    fn nonempty_residual_syndrome_is_hard_error() {
        let lat = lat3();
        // A single interior edge has a nonempty syndrome.
        let e = (0..lat.n_edges())
            .find(|&e| {
                let (a, b) = lat.edge_endpoints(e);
                !lat.is_rough(a) && !lat.is_rough(b)
            })
            .unwrap();
        let chain = ErrorChain::from_edges(lat.n_edges(), &[e]);
        assert!(is_logical_failure(&lat, &chain).is_err());
    }
}

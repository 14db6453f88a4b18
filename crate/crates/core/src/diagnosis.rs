//! Syndrome decoding.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fault::{
    arbitrary_tests, enumerate_consistent_pairs, generate_syndrome, Adversary, FaultPair, Outcome,
    Syndrome,
};
use crate::graph::Graph;

/// Default number of candidates kept in an ambiguous result.
pub const DEFAULT_CANDIDATE_CAP: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DiagnosisStatus {
    Unique,
    Ambiguous,
    NoCandidate,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiagnosisResult {
    pub status: DiagnosisStatus,
    /// Exact number of consistent pairs within bounds.
    pub candidate_count: usize,
    /// The first `cap` candidates in `(|F|, F, |S|, S)` order.
    pub candidates: Vec<FaultPair>,
}

impl DiagnosisResult {
    pub fn unique(&self) -> Option<&FaultPair> {
        match self.status {
            DiagnosisStatus::Unique => self.candidates.first(),
            _ => None,
        }
    }
}

/// Every consistent pair within `(t, s)` that explains `sig`.
pub fn diagnose(g: &Graph, sig: &Syndrome, t: usize, s: usize) -> Result<DiagnosisResult> {
    diagnose_with_cap(g, sig, t, s, DEFAULT_CANDIDATE_CAP)
}

pub fn diagnose_with_cap(g: &Graph, sig: &Syndrome, t: usize, s: usize, cap: usize) -> Result<DiagnosisResult> {
    sig.check_graph(g)?;
    let mut all = enumerate_consistent_pairs(g, sig, t, s)?;
    let candidate_count = all.len();
    let status = match candidate_count {
        0 => DiagnosisStatus::NoCandidate,
        1 => DiagnosisStatus::Unique,
        _ => DiagnosisStatus::Ambiguous,
    };
    all.truncate(cap.max(usize::from(status == DiagnosisStatus::Unique)));
    Ok(DiagnosisResult {
        status,
        candidate_count,
        candidates: all,
    })
}

/// Above this many arbitrary tests the roundtrip samples adversaries.
pub const EXHAUSTIVE_ADVERSARY_LIMIT: usize = 16;
/// Sampled adversaries when the exhaustive limit is exceeded.
pub const SAMPLED_ADVERSARIES: usize = 256;

/// Whether `fp` is recovered exactly from every syndrome an adversary can
/// make it produce: all `2^k` answers of its `k` faulty-tester tests when
/// `k ≤ 16`, otherwise [`SAMPLED_ADVERSARIES`] draws seeded by `seed`.
///
/// Meaningful only when `g` is `(t, s)`-diagnosable; that is not checked.
pub fn adversarial_roundtrip(g: &Graph, fp: &FaultPair, t: usize, s: usize) -> Result<bool> {
    adversarial_roundtrip_seeded(g, fp, t, s, 0)
}

pub fn adversarial_roundtrip_seeded(g: &Graph, fp: &FaultPair, t: usize, s: usize, seed: u64) -> Result<bool> {
    let (vertices, edges) = fp.sizes();
    if vertices > t || edges > s {
        return Err(Error::BoundViolation {
            vertices,
            edges,
            t,
            s,
        });
    }
    let k = arbitrary_tests(g, fp)?.len();
    let recovered = |answers: Vec<Outcome>| -> Result<bool> {
        let sig = generate_syndrome(g, fp, &Adversary::Ordered(answers))?;
        Ok(diagnose(g, &sig, t, s)?.unique() == Some(fp))
    };
    if k <= EXHAUSTIVE_ADVERSARY_LIMIT {
        for pattern in 0u32..1 << k {
            let answers = (0..k)
                .map(|i| if pattern >> i & 1 == 1 { Outcome::Fail } else { Outcome::Pass })
                .collect();
            if !recovered(answers)? {
                return Ok(false);
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..SAMPLED_ADVERSARIES {
            let answers = (0..k)
                .map(|_| if rng.gen::<bool>() { Outcome::Fail } else { Outcome::Pass })
                .collect();
            if !recovered(answers)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagnosability::construct_indistinguishable_witness;
    use crate::fault::make_fault_pair;
    use crate::graph::{Edge, VertexId};
    use crate::hypercube::build_hypercube;

    #[test]
    fn recovers_hybrid_fault_on_q3() {
        let g = build_hypercube(3).unwrap();
        let fp = make_fault_pair(&g, [VertexId(0)], [Edge::new(3, 7).unwrap()]).unwrap();
        for adv in [Adversary::AllPass, Adversary::AllFail, Adversary::Random { seed: 5 }] {
            let sig = generate_syndrome(&g, &fp, &adv).unwrap();
            let res = diagnose(&g, &sig, 1, 1).unwrap();
            assert_eq!(res.status, DiagnosisStatus::Unique);
            assert_eq!(res.unique(), Some(&fp));
        }
    }

    #[test]
    fn all_pass_decodes_to_fault_free() {
        let g = build_hypercube(3).unwrap();
        let res = diagnose(&g, &Syndrome::all_pass(&g), 2, 1).unwrap();
        assert_eq!(res.status, DiagnosisStatus::Unique);
        assert_eq!(res.candidates, vec![FaultPair::fault_free(&g)]);
    }

    #[test]
    fn witness_syndrome_is_ambiguous() {
        let g = build_hypercube(3).unwrap();
        let (p1, p2) = construct_indistinguishable_witness(&g, VertexId(0), 1).unwrap();
        // Answer u's tests of its good neighbours with Fail, the arbitrary
        // tests inside F_2 identically, so the syndrome fits both pairs.
        let sig = generate_syndrome(&g, &p1, &Adversary::AllFail).unwrap();
        let sig2 = generate_syndrome(&g, &p2, &Adversary::AllFail).unwrap();
        assert_eq!(sig, sig2);
        let res = diagnose(&g, &sig, 3, 1).unwrap();
        assert_eq!(res.status, DiagnosisStatus::Ambiguous);
        assert!(res.candidate_count >= 2);
        assert!(res.candidates.contains(&p1) && res.candidates.contains(&p2));
    }

    #[test]
    fn no_candidate_when_bounds_too_tight() {
        let g = build_hypercube(3).unwrap();
        let fp = make_fault_pair(&g, [VertexId(0), VertexId(7)], []).unwrap();
        let sig = generate_syndrome(&g, &fp, &Adversary::AllFail).unwrap();
        assert_eq!(diagnose(&g, &sig, 1, 0).unwrap().status, DiagnosisStatus::NoCandidate);
    }

    #[test]
    fn cap_truncates_but_count_is_exact() {
        let g = build_hypercube(2).unwrap();
        let everyone = FaultPair::all_vertices(&g);
        let sig = generate_syndrome(&g, &everyone, &Adversary::AllFail).unwrap();
        let res = diagnose_with_cap(&g, &sig, 4, 4, 2).unwrap();
        assert_eq!(res.status, DiagnosisStatus::Ambiguous);
        assert_eq!(res.candidates.len(), 2);
        assert!(res.candidate_count > 2);
    }

    #[test]
    fn roundtrip_basics() {
        let g = build_hypercube(3).unwrap();
        assert!(adversarial_roundtrip(&g, &FaultPair::fault_free(&g), 2, 1).unwrap());
        let fp = make_fault_pair(&g, [VertexId(1), VertexId(6)], [Edge::new(0, 4).unwrap()]).unwrap();
        assert!(adversarial_roundtrip(&g, &fp, 2, 1).unwrap());
        assert!(matches!(
            adversarial_roundtrip(&g, &fp, 1, 1),
            Err(Error::BoundViolation { .. })
        ));
    }

    #[test]
    fn roundtrip_fails_beyond_diagnosability() {
        // Q_2 is not (2, 1)-diagnosable; ({0, 3}, ∅) cannot be told apart
        // from ({1, 2}, ∅).
        let g = build_hypercube(2).unwrap();
        let fp = make_fault_pair(&g, [VertexId(0), VertexId(3)], []).unwrap();
        assert!(!adversarial_roundtrip(&g, &fp, 2, 1).unwrap());
    }
}

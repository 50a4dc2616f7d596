//! Serializable witnesses checkable by an independent verifier.

use crate::absorber::{self, Absorber};
use crate::error::{Error, Result};
use crate::tournament::{dominates, is_transitive, Tournament, VertexSet};
use crate::verify::{verify_cycle_power, verify_partition, verify_path_power, Verdict};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(tag = "kind", content = "payload", rename_all = "snake_case")]
pub enum CertificatePayload {
    PathPower { seq: Vec<usize> },
    CyclePower { cycle: Vec<usize> },
    Partition { parts: Vec<Vec<usize>> },
    Absorber { s_blocks: Vec<Vec<usize>>, q: Vec<usize>, r_prime: usize },
    BackwardPair { b: Vec<usize>, b_prime: Vec<usize> },
}

impl CertificatePayload {
    pub fn kind_name(&self) -> &'static str {
        match self {
            CertificatePayload::PathPower { .. } => "path_power",
            CertificatePayload::CyclePower { .. } => "cycle_power",
            CertificatePayload::Partition { .. } => "partition",
            CertificatePayload::Absorber { .. } => "absorber",
            CertificatePayload::BackwardPair { .. } => "backward_pair",
        }
    }
}

/// A certificate: kind-specific payload plus the power parameter k and a
/// free-text provenance trace. Vertex indices are 0-based.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct Certificate {
    #[serde(flatten)]
    pub payload: CertificatePayload,
    pub k: usize,
    pub provenance: String,
    pub tool_version: String,
}

/// Outcome of re-checking a certificate against a tournament.
#[derive(Debug, Clone)]
pub struct CheckReport {
    pub valid: bool,
    pub detail: String,
}

impl CheckReport {
    fn pass(detail: impl Into<String>) -> Self {
        CheckReport { valid: true, detail: detail.into() }
    }

    fn fail(detail: impl Into<String>) -> Self {
        CheckReport { valid: false, detail: detail.into() }
    }
}

impl Certificate {
    pub fn new(payload: CertificatePayload, k: usize, provenance: impl Into<String>) -> Self {
        Certificate {
            payload,
            k,
            provenance: provenance.into(),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }

    /// Re-checks the certificate with the appropriate independent
    /// verifier. A failed check is `Ok` with `valid = false`; `Err` means
    /// malformed input (out-of-range vertices, bad parameters).
    pub fn check(&self, t: &Tournament) -> Result<CheckReport> {
        match &self.payload {
            CertificatePayload::PathPower { seq } => {
                Ok(match verify_path_power(t, seq, self.k)? {
                    Verdict::Pass => CheckReport::pass(format!("path power of length {}", seq.len())),
                    Verdict::Fail(v) => CheckReport::fail(v.to_string()),
                })
            }
            CertificatePayload::CyclePower { cycle } => {
                Ok(match verify_cycle_power(t, cycle, self.k)? {
                    Verdict::Pass => {
                        CheckReport::pass(format!("cycle power of length {}", cycle.len()))
                    }
                    Verdict::Fail(v) => CheckReport::fail(v.to_string()),
                })
            }
            CertificatePayload::Partition { parts } => {
                let (verdict, report) = verify_partition(t, parts, self.k)?;
                Ok(match verdict {
                    Verdict::Pass => {
                        CheckReport::pass(format!("partition into {} parts", report.part_count))
                    }
                    Verdict::Fail(v) => CheckReport::fail(v.to_string()),
                })
            }
            CertificatePayload::Absorber { s_blocks, q, r_prime } => {
                let h = Absorber {
                    s_blocks: s_blocks.clone(),
                    q: q.clone(),
                    k: self.k,
                    r_prime: *r_prime,
                };
                Ok(match absorber::verify_absorber(t, &h)? {
                    absorber::AbsorberVerdict::Pass => CheckReport::pass(format!(
                        "absorber with r = {}, r' = {}",
                        s_blocks.len().saturating_sub(1),
                        r_prime
                    )),
                    absorber::AbsorberVerdict::Fail(v) => CheckReport::fail(v.to_string()),
                })
            }
            CertificatePayload::BackwardPair { b, b_prime } => {
                for &v in b.iter().chain(b_prime) {
                    t.check_vertex(v)?;
                }
                if b.is_empty() || b_prime.is_empty() {
                    return Err(Error::EmptySet);
                }
                let bs = VertexSet::from_iter(t.n(), b.iter().copied());
                let bps = VertexSet::from_iter(t.n(), b_prime.iter().copied());
                if is_transitive(t, &bs)?.is_none() {
                    return Ok(CheckReport::fail("B is not transitive"));
                }
                if is_transitive(t, &bps)?.is_none() {
                    return Ok(CheckReport::fail("B' is not transitive"));
                }
                if !dominates(t, &bps, &bs) {
                    return Ok(CheckReport::fail("B' does not dominate B"));
                }
                Ok(CheckReport::pass("backward transitive pair"))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct;

    #[test]
    fn json_round_trip() {
        let cert = Certificate::new(
            CertificatePayload::PathPower { seq: vec![0, 1, 2] },
            2,
            "test",
        );
        let json = serde_json::to_string(&cert).unwrap();
        assert!(json.contains("\"kind\":\"path_power\""));
        let back: Certificate = serde_json::from_str(&json).unwrap();
        assert_eq!(cert, back);
    }

    #[test]
    fn check_dispatches() {
        let tt4 = construct::transitive_tournament(4).unwrap();
        let good = Certificate::new(
            CertificatePayload::PathPower { seq: vec![0, 1, 2, 3] },
            3,
            "",
        );
        assert!(good.check(&tt4).unwrap().valid);

        let bad = Certificate::new(
            CertificatePayload::CyclePower { cycle: vec![0, 1, 2] },
            1,
            "",
        );
        assert!(!bad.check(&tt4).unwrap().valid);
    }

    #[test]
    fn backward_pair_check() {
        let tt4 = construct::transitive_tournament(4).unwrap();
        let cert = Certificate::new(
            CertificatePayload::BackwardPair { b: vec![0], b_prime: vec![3] },
            1,
            "",
        );
        // in TT, later vertices never beat earlier ones
        assert!(!cert.check(&tt4).unwrap().valid);
        // in the reversal they do
        assert!(cert.check(&tt4.reversed()).unwrap().valid);
    }
}

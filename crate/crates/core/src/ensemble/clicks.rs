//! Click streams: seeded generation, JSON Lines I/O and ingestion into
//! braces.

use std::io::{BufRead, Write};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::brace::{EnsembleBrace, UnitaryBrace};
use crate::error::{Error, Result};
use crate::rational::{self, Rational};
use crate::rng::substream;
use crate::statespace::{InstrumentId, InstrumentRep};

/// One registered micro-event.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClickRecord {
    pub instrument: InstrumentId,
    pub outcome: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimulationSpec {
    pub nu: Vec<Rational>,
    pub sigma: u64,
    pub instrument: InstrumentId,
}

impl SimulationSpec {
    pub fn new(nu: Vec<Rational>, sigma: u64, instrument: InstrumentId) -> Result<Self> {
        rational::check_distribution(&nu)?;
        if sigma == 0 {
            return Err(Error::InvalidParameter("sigma must be at least 1".into()));
        }
        Ok(SimulationSpec {
            nu,
            sigma,
            instrument,
        })
    }
}

/// Categorical sampler over exact probabilities. When the common
/// denominator fits in a `u64` the draw is exact integer arithmetic;
/// otherwise it falls back to `f64` cumulative weights.
#[derive(Clone, Debug)]
pub struct OutcomeSampler {
    kind: SamplerKind,
}

#[derive(Clone, Debug)]
enum SamplerKind {
    Exact { modulus: u64, cumulative: Vec<u64> },
    Float { cumulative: Vec<f64> },
}

impl OutcomeSampler {
    pub fn new(nu: &[Rational]) -> Result<Self> {
        rational::check_distribution(nu)?;
        let lcm = nu.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        if let Some(modulus) = lcm.to_u64() {
            let mut running = 0u64;
            let cumulative = nu
                .iter()
                .map(|q| {
                    let scaled = (q * Rational::from_integer(lcm.clone())).to_integer();
                    running += scaled.to_u64().expect("scaled weight fits the modulus");
                    running
                })
                .collect();
            return Ok(OutcomeSampler {
                kind: SamplerKind::Exact {
                    modulus,
                    cumulative,
                },
            });
        }
        let mut running = 0.0;
        let cumulative = nu
            .iter()
            .map(|q| {
                running += rational::to_f64(q);
                running
            })
            .collect();
        Ok(OutcomeSampler {
            kind: SamplerKind::Float { cumulative },
        })
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        match &self.kind {
            SamplerKind::Exact {
                modulus,
                cumulative,
            } => {
                let r = rng.random_range(0..*modulus);
                cumulative.partition_point(|&c| c <= r)
            }
            SamplerKind::Float { cumulative } => {
                let total = *cumulative.last().expect("non-empty distribution");
                let r = rng.random::<f64>() * total;
                // zero-weight outcomes share a cumulative value with their
                // predecessor and can never be chosen
                cumulative
                    .partition_point(|&c| c <= r)
                    .min(cumulative.len() - 1)
            }
        }
    }
}

/// Exactly `spec.sigma` records drawn from `spec.nu`; a deterministic
/// function of `(spec, seed)`.
pub fn simulate_clicks(spec: &SimulationSpec, seed: u64) -> Result<Vec<ClickRecord>> {
    simulate_clicks_on(spec, seed, 0)
}

/// Like [`simulate_clicks`] but on substream `stream` of `seed`.
pub fn simulate_clicks_on(
    spec: &SimulationSpec,
    seed: u64,
    stream: u64,
) -> Result<Vec<ClickRecord>> {
    let sampler = OutcomeSampler::new(&spec.nu)?;
    let mut rng = substream(seed, stream);
    Ok((0..spec.sigma)
        .map(|_| ClickRecord {
            instrument: spec.instrument.clone(),
            outcome: sampler.sample(&mut rng),
        })
        .collect())
}

/// Splits the run into `chunks` independent substreams of `seed`,
/// ingests each and merges the braces by union. Deterministic in
/// `(spec, seed, chunks)`; not the same sample path as [`simulate_clicks`].
pub fn simulate_brace_parallel(
    spec: &SimulationSpec,
    instrument: &InstrumentRep,
    kappa_spec: &[Rational],
    seed: u64,
    chunks: usize,
) -> Result<EnsembleBrace> {
    let sampler = OutcomeSampler::new(&spec.nu)?;
    let chunks = chunks.max(1) as u64;
    let base = spec.sigma / chunks;
    let extra = spec.sigma % chunks;
    let braces = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let len = base + u64::from(c < extra);
            // stream 0 belongs to the serial path
            let mut rng = substream(seed, c + 1);
            let stream: Vec<ClickRecord> = (0..len)
                .map(|_| ClickRecord {
                    instrument: spec.instrument.clone(),
                    outcome: sampler.sample(&mut rng),
                })
                .collect();
            ingest_clicks(&stream, instrument, kappa_spec)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(braces
        .iter()
        .fold(EnsembleBrace::empty(), |acc, b| acc.union(b)))
}

/// Counts clicks per outcome and splits each count into upper-primitive
/// copies with `count_psi = ⌊κ·total + 1/2⌋`. Outcomes that never clicked
/// get no entry; an empty stream yields the zero-class brace.
pub fn ingest_clicks(
    stream: &[ClickRecord],
    instrument: &InstrumentRep,
    kappa_spec: &[Rational],
) -> Result<EnsembleBrace> {
    let arity = instrument.dimension();
    if kappa_spec.len() != arity {
        return Err(Error::LengthMismatch {
            expected: arity,
            got: kappa_spec.len(),
        });
    }
    if let Some(k) = kappa_spec
        .iter()
        .find(|k| *k < &Rational::zero() || *k > &Rational::one())
    {
        return Err(Error::InvalidStatistics(format!(
            "kappa {} outside [0,1]",
            rational::display(k)
        )));
    }
    let mut counts = vec![0u64; arity];
    for (position, record) in stream.iter().enumerate() {
        if &record.instrument != instrument.id() {
            return Err(Error::WrongInstrument {
                position,
                found: record.instrument.to_string(),
                expected: instrument.id().to_string(),
            });
        }
        if record.outcome >= arity {
            return Err(Error::UnknownOutcome {
                position,
                outcome: record.outcome,
                instrument: instrument.id().to_string(),
                arity,
            });
        }
        counts[record.outcome] += 1;
    }
    let half = rational::ratio(1, 2);
    let entries = counts
        .iter()
        .zip(kappa_spec)
        .zip(instrument.eigen_symbols())
        .filter(|((&count, _), _)| count > 0)
        .map(|((&count, kappa), symbol)| {
            let total = BigUint::from(count);
            let psi = (kappa * rational::from_biguint(&total) + &half)
                .floor()
                .to_integer()
                .to_biguint()
                .expect("non-negative");
            let phi = &total - &psi;
            UnitaryBrace {
                outcome: symbol.clone(),
                count_psi: psi,
                count_phi: phi,
            }
        })
        .collect();
    EnsembleBrace::new(entries)
}

pub fn write_jsonl<W: Write>(records: &[ClickRecord], mut out: W) -> std::io::Result<()> {
    for r in records {
        serde_json::to_writer(&mut out, r)?;
        out.write_all(b"\n")?;
    }
    out.flush()
}

/// Reads one record per non-blank line.
pub fn read_jsonl<R: BufRead>(input: R) -> Result<Vec<ClickRecord>> {
    let mut records = Vec::new();
    for (i, line) in input.lines().enumerate() {
        let line = line.map_err(|e| Error::Parse(format!("line {}: {e}", i + 1)))?;
        if line.trim().is_empty() {
            continue;
        }
        let record: ClickRecord = serde_json::from_str(&line)
            .map_err(|e| Error::Parse(format!("line {}: {e}", i + 1)))?;
        records.push(record);
    }
    Ok(records)
}

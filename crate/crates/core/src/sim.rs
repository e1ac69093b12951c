//! Discrete-event simulation of the two architectures.
//!
//! Entanglement requests arrive as a Poisson stream and are served one at a
//! time through three stages: generation `Exp(mu_e)`, waiting for the move
//! request `Exp(lambda_m)` and move execution `Exp(mu_m)`. Computation jobs
//! arrive independently and wait while the processor is blocked: in SD by
//! generation and move execution, in DD by move execution only.
//!
//! With `mu_c = inf` computations take no time and queued ones are flushed
//! the instant the processor unblocks. With finite `mu_c` the processor runs
//! one job at a time from a shared FIFO in which a pending move always goes
//! first; a running computation is never interrupted, so a move requested
//! during one waits for it to finish.

use std::cmp::Ordering;
use std::collections::{BinaryHeap, VecDeque};
use std::io::{self, Write};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::qbd::{mean_drift_ok, ArchParams, Architecture};
use crate::quantum::{ent_fidelity_from_gate, gate_fidelity_closed, MemoryParams, NoiseChannel};
use crate::stats::MeanEstimate;
use crate::{Error, Result};

pub const DEFAULT_WARMUP_FRACTION: f64 = 0.05;

/// Number of batches for batch-means standard errors.
pub const BATCHES: usize = 50;

/// Number of evenly spaced queue-length observations per run.
pub const QUEUE_SAMPLES: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    pub params: ArchParams,
    pub memory: MemoryParams,
    pub duration: f64,
    pub seed: u64,
    pub replications: usize,
    pub warmup_fraction: f64,
}

impl SimConfig {
    pub fn new(params: ArchParams, memory: MemoryParams, duration: f64, seed: u64) -> Self {
        Self {
            params,
            memory,
            duration,
            seed,
            replications: 1,
            warmup_fraction: DEFAULT_WARMUP_FRACTION,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.params.validate()?;
        self.memory.validate_composite()?;
        if !(self.duration > 0.0 && self.duration.is_finite()) {
            return Err(Error::param("duration", format!("must be positive and finite, got {}", self.duration)));
        }
        if self.replications == 0 {
            return Err(Error::param("replications", "at least one replication is required"));
        }
        if !(0.0..1.0).contains(&self.warmup_fraction) {
            return Err(Error::param(
                "warmup_fraction",
                format!("must lie in [0, 1), got {}", self.warmup_fraction),
            ));
        }
        Ok(())
    }

    fn warmup(&self) -> f64 {
        self.duration * self.warmup_fraction
    }
}

/// Job accounting at the end of a run (over the whole run, warm-up included).
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counters {
    pub requests_arrived: u64,
    pub requests_completed: u64,
    pub requests_in_system: u64,
    pub computations_arrived: u64,
    pub computations_started: u64,
    pub computations_in_system: u64,
}

impl Counters {
    pub fn conserved(&self) -> bool {
        self.requests_arrived == self.requests_completed + self.requests_in_system
            && self.computations_arrived >= self.computations_started
            && self.computations_in_system <= self.computations_arrived
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimResult {
    /// Time from arrival to service start of each computation.
    pub comp_wait_samples: Vec<f64>,
    /// Time from generation completion to move start of each request.
    pub move_wait_samples: Vec<f64>,
    /// `(time, requests in system)` on an even grid.
    pub queue_length_timeseries: Vec<(f64, usize)>,
    /// Fraction of post-warm-up time the request in service spends in each
    /// stage; stage 1 includes waiting for the processor to start
    /// generation, stage 2 includes waiting for it to start the move.
    pub phase_time_fractions: [MeanEstimate; 3],
    pub idle_fraction: f64,
    pub f_avg_estimate: Option<MeanEstimate>,
    pub f_e_estimate: Option<MeanEstimate>,
    pub counters: Counters,
    /// Number of events after which the activity monitor saw forbidden
    /// concurrency; zero in a correct run.
    pub activity_violations: u64,
    /// Whether the `mu_c = inf` drift condition held for the parameters.
    pub drift_ok: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FidelityEstimate {
    pub f_avg: MeanEstimate,
    pub f_e: MeanEstimate,
}

/// Monte Carlo fidelities from waiting-time samples: the gate fidelity
/// averaged over computation waits and the entanglement fidelity averaged
/// over pre-move storage times, both with batch-means errors.
pub fn estimate_fidelities(result: &SimResult, channel: &NoiseChannel) -> Result<FidelityEstimate> {
    Ok(FidelityEstimate {
        f_avg: mean_gate_fidelity(&result.comp_wait_samples, channel)?,
        f_e: mean_ent_fidelity(&result.move_wait_samples, channel)?,
    })
}

fn mean_gate_fidelity(waits: &[f64], channel: &NoiseChannel) -> Result<MeanEstimate> {
    let f = waits
        .iter()
        .map(|&w| gate_fidelity_closed(channel, w))
        .collect::<Result<Vec<_>>>()?;
    MeanEstimate::batch_means(&f, BATCHES)
}

fn mean_ent_fidelity(waits: &[f64], channel: &NoiseChannel) -> Result<MeanEstimate> {
    let f = waits
        .iter()
        .map(|&w| ent_fidelity_from_gate(gate_fidelity_closed(channel, w)?, 2))
        .collect::<Result<Vec<_>>>()?;
    MeanEstimate::batch_means(&f, BATCHES)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum EventKind {
    RequestArrival,
    ComputationArrival,
    GenerationDone,
    MoveRequested,
    MoveDone,
    ComputationDone,
}

#[derive(Debug, Clone, Copy)]
struct Event {
    time: f64,
    seq: u64,
    kind: EventKind,
}

impl PartialEq for Event {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Event {}

impl PartialOrd for Event {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Event {
    fn cmp(&self, other: &Self) -> Ordering {
        other.time.total_cmp(&self.time).then_with(|| other.seq.cmp(&self.seq))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Stage {
    Idle,
    AwaitingProcessorForGeneration,
    Generating,
    AwaitingMoveRequest,
    AwaitingProcessorForMove,
    Moving,
}

impl Stage {
    fn phase(self) -> Option<usize> {
        match self {
            Stage::Idle => None,
            Stage::AwaitingProcessorForGeneration | Stage::Generating => Some(0),
            Stage::AwaitingMoveRequest | Stage::AwaitingProcessorForMove => Some(1),
            Stage::Moving => Some(2),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Processor {
    Free,
    Generating,
    Moving,
    Computing,
}

struct Rates {
    arrival: Exp<f64>,
    computation: Option<Exp<f64>>,
    generation: Exp<f64>,
    move_request: Exp<f64>,
    move_exec: Exp<f64>,
    service: Option<Exp<f64>>,
}

fn exp(name: &'static str, rate: f64) -> Result<Exp<f64>> {
    Exp::new(rate).map_err(|e| Error::param(name, e.to_string()))
}

struct PhaseClock {
    start: f64,
    batch_len: f64,
    per_batch: Vec<[f64; 4]>,
}

impl PhaseClock {
    fn new(start: f64, end: f64) -> Self {
        Self {
            start,
            batch_len: (end - start) / BATCHES as f64,
            per_batch: vec![[0.0; 4]; BATCHES],
        }
    }

    /// Credits `[t0, t1)` to `slot` (0..3 stages, 3 idle), clipped to the
    /// observation window and split across batch boundaries.
    fn add(&mut self, slot: usize, t0: f64, t1: f64) {
        let mut a = t0.max(self.start);
        let end = self.start + self.batch_len * BATCHES as f64;
        let t1 = t1.min(end);
        while a < t1 {
            let idx = (((a - self.start) / self.batch_len) as usize).min(BATCHES - 1);
            let boundary = (self.start + (idx + 1) as f64 * self.batch_len).min(t1);
            let b = if boundary > a { boundary } else { t1 };
            self.per_batch[idx][slot] += b - a;
            a = b;
        }
    }

    fn fractions(&self) -> Result<([MeanEstimate; 3], f64)> {
        let mut out = [MeanEstimate {
            mean: 0.0,
            std_err: 0.0,
            n: 0,
        }; 3];
        for (slot, est) in out.iter_mut().enumerate() {
            let series: Vec<f64> = self.per_batch.iter().map(|b| b[slot] / self.batch_len).collect();
            *est = MeanEstimate::from_samples(&series)?;
        }
        let idle = 1.0 - out.iter().map(|e| e.mean).sum::<f64>();
        Ok((out, idle))
    }
}

struct Engine<'a> {
    cfg: &'a SimConfig,
    rates: Rates,
    rng: ChaCha8Rng,
    heap: BinaryHeap<Event>,
    seq: u64,
    now: f64,
    warmup: f64,

    requests: VecDeque<f64>,
    stage: Stage,
    generation_queued_at: f64,
    generation_done_at: f64,
    processor: Processor,
    generation_active: bool,
    move_active: bool,
    computation_active: bool,
    computations: VecDeque<f64>,

    clock: PhaseClock,
    next_queue_sample: usize,
    result: SimResult,
}

impl<'a> Engine<'a> {
    fn new(cfg: &'a SimConfig, seed: u64) -> Result<Self> {
        let p = &cfg.params;
        let rates = Rates {
            arrival: exp("lambda_e", p.lambda_e)?,
            computation: (p.lambda_c > 0.0).then(|| exp("lambda_c", p.lambda_c)).transpose()?,
            generation: exp("mu_e", p.mu_e)?,
            move_request: exp("lambda_m", p.lambda_m)?,
            move_exec: exp("mu_m", p.mu_m)?,
            service: p.mu_c.is_finite().then(|| exp("mu_c", p.mu_c)).transpose()?,
        };
        let warmup = cfg.warmup();
        Ok(Self {
            cfg,
            rates,
            rng: ChaCha8Rng::seed_from_u64(seed),
            heap: BinaryHeap::new(),
            seq: 0,
            now: 0.0,
            warmup,
            requests: VecDeque::new(),
            stage: Stage::Idle,
            generation_queued_at: 0.0,
            generation_done_at: 0.0,
            processor: Processor::Free,
            generation_active: false,
            move_active: false,
            computation_active: false,
            computations: VecDeque::new(),
            clock: PhaseClock::new(warmup, cfg.duration),
            next_queue_sample: 0,
            result: SimResult {
                comp_wait_samples: Vec::new(),
                move_wait_samples: Vec::new(),
                queue_length_timeseries: Vec::with_capacity(QUEUE_SAMPLES),
                phase_time_fractions: [MeanEstimate {
                    mean: 0.0,
                    std_err: 0.0,
                    n: 0,
                }; 3],
                idle_fraction: 1.0,
                f_avg_estimate: None,
                f_e_estimate: None,
                counters: Counters::default(),
                activity_violations: 0,
                drift_ok: mean_drift_ok(&cfg.params),
            },
        })
    }

    fn schedule(&mut self, delay: f64, kind: EventKind) {
        self.seq += 1;
        self.heap.push(Event {
            time: self.now + delay,
            seq: self.seq,
            kind,
        });
    }

    fn sample(&mut self, d: Exp<f64>) -> f64 {
        d.sample(&mut self.rng)
    }

    fn advance(&mut self, to: f64) {
        let slot = self.stage.phase().unwrap_or(3);
        self.clock.add(slot, self.now, to);
        let dt = self.cfg.duration / QUEUE_SAMPLES as f64;
        while self.next_queue_sample < QUEUE_SAMPLES {
            let t = self.next_queue_sample as f64 * dt;
            if t >= to {
                break;
            }
            self.result.queue_length_timeseries.push((t, self.requests.len()));
            self.next_queue_sample += 1;
        }
        self.now = to;
    }

    fn run(mut self) -> Result<SimResult> {
        let first = self.sample(self.rates.arrival);
        self.schedule(first, EventKind::RequestArrival);
        if let Some(c) = self.rates.computation {
            let first = self.sample(c);
            self.schedule(first, EventKind::ComputationArrival);
        }
        while let Some(ev) = self.heap.pop() {
            if ev.time > self.cfg.duration {
                break;
            }
            self.advance(ev.time);
            self.handle(ev.kind);
            self.dispatch();
            self.monitor();
        }
        self.advance(self.cfg.duration);
        self.finish()
    }

    fn handle(&mut self, kind: EventKind) {
        match kind {
            EventKind::RequestArrival => {
                self.result.counters.requests_arrived += 1;
                self.requests.push_back(self.now);
                if self.stage == Stage::Idle {
                    self.begin_request();
                }
                let next = self.sample(self.rates.arrival);
                self.schedule(next, EventKind::RequestArrival);
            }
            EventKind::ComputationArrival => {
                self.result.counters.computations_arrived += 1;
                self.computations.push_back(self.now);
                if let Some(c) = self.rates.computation {
                    let next = self.sample(c);
                    self.schedule(next, EventKind::ComputationArrival);
                }
            }
            EventKind::GenerationDone => {
                self.generation_active = false;
                if self.processor == Processor::Generating {
                    self.processor = Processor::Free;
                }
                self.generation_done_at = self.now;
                self.stage = Stage::AwaitingMoveRequest;
                let d = self.sample(self.rates.move_request);
                self.schedule(d, EventKind::MoveRequested);
            }
            EventKind::MoveRequested => {
                self.stage = Stage::AwaitingProcessorForMove;
            }
            EventKind::MoveDone => {
                self.move_active = false;
                self.processor = Processor::Free;
                self.requests.pop_front();
                self.result.counters.requests_completed += 1;
                self.stage = Stage::Idle;
                if !self.requests.is_empty() {
                    self.begin_request();
                }
            }
            EventKind::ComputationDone => {
                self.computation_active = false;
                self.processor = Processor::Free;
            }
        }
    }

    fn begin_request(&mut self) {
        match self.cfg.params.arch {
            Architecture::SD => {
                self.stage = Stage::AwaitingProcessorForGeneration;
                self.generation_queued_at = self.now;
            }
            Architecture::DD => self.start_generation(),
        }
    }

    fn start_generation(&mut self) {
        self.stage = Stage::Generating;
        self.generation_active = true;
        if self.cfg.params.arch == Architecture::SD {
            self.processor = Processor::Generating;
        }
        let d = self.sample(self.rates.generation);
        self.schedule(d, EventKind::GenerationDone);
    }

    fn dispatch(&mut self) {
        while self.processor == Processor::Free {
            if self.stage == Stage::AwaitingProcessorForMove {
                if self.generation_done_at >= self.warmup {
                    self.result.move_wait_samples.push(self.now - self.generation_done_at);
                }
                self.stage = Stage::Moving;
                self.processor = Processor::Moving;
                self.move_active = true;
                let d = self.sample(self.rates.move_exec);
                self.schedule(d, EventKind::MoveDone);
                return;
            }
            let generation_pending = self.stage == Stage::AwaitingProcessorForGeneration;
            match self.computations.front().copied() {
                Some(arrived) if !generation_pending || arrived <= self.generation_queued_at => {
                    self.computations.pop_front();
                    self.result.counters.computations_started += 1;
                    if arrived >= self.warmup {
                        self.result.comp_wait_samples.push(self.now - arrived);
                    }
                    if let Some(s) = self.rates.service {
                        self.processor = Processor::Computing;
                        self.computation_active = true;
                        let d = self.sample(s);
                        self.schedule(d, EventKind::ComputationDone);
                    }
                }
                _ if generation_pending => self.start_generation(),
                _ => return,
            }
        }
    }

    fn monitor(&mut self) {
        let bad = match self.cfg.params.arch {
            Architecture::SD => {
                [self.generation_active, self.move_active, self.computation_active]
                    .iter()
                    .filter(|&&a| a)
                    .count()
                    > 1
            }
            Architecture::DD => self.move_active && self.computation_active,
        };
        if bad {
            self.result.activity_violations += 1;
        }
    }

    fn finish(mut self) -> Result<SimResult> {
        let (phases, idle) = self.clock.fractions()?;
        self.result.phase_time_fractions = phases;
        self.result.idle_fraction = idle;
        let c = &mut self.result.counters;
        c.requests_in_system = self.requests.len() as u64;
        c.computations_in_system = self.computations.len() as u64 + u64::from(self.computation_active);
        let channel = NoiseChannel::composite(self.cfg.memory.t1, self.cfg.memory.t2)?;
        if !self.result.comp_wait_samples.is_empty() {
            self.result.f_avg_estimate = Some(mean_gate_fidelity(&self.result.comp_wait_samples, &channel)?);
        }
        if !self.result.move_wait_samples.is_empty() {
            self.result.f_e_estimate = Some(mean_ent_fidelity(&self.result.move_wait_samples, &channel)?);
        }
        Ok(self.result)
    }
}

/// Runs a single replication with the configured seed.
pub fn simulate(cfg: &SimConfig) -> Result<SimResult> {
    cfg.validate()?;
    Engine::new(cfg, cfg.seed)?.run()
}

/// SplitMix64 finaliser, used to derive per-replication seeds.
pub fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn replication_seed(master: u64, index: usize) -> u64 {
    splitmix64(master ^ splitmix64(index as u64))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReplicatedResult {
    pub runs: Vec<SimResult>,
    /// Across-replication mean and standard error of each run's estimate.
    pub f_avg: Option<MeanEstimate>,
    pub f_e: Option<MeanEstimate>,
    pub phase_time_fractions: [MeanEstimate; 3],
}

/// Runs `cfg.replications` independent replications in parallel; results
/// are ordered by replication index.
pub fn run_replications(cfg: &SimConfig) -> Result<ReplicatedResult> {
    cfg.validate()?;
    let runs = (0..cfg.replications)
        .into_par_iter()
        .map(|i| Engine::new(cfg, replication_seed(cfg.seed, i))?.run())
        .collect::<Result<Vec<_>>>()?;
    let across = |get: &dyn Fn(&SimResult) -> Option<f64>| -> Result<Option<MeanEstimate>> {
        let v: Option<Vec<f64>> = runs.iter().map(get).collect();
        v.map(|v| MeanEstimate::from_samples(&v)).transpose()
    };
    let f_avg = across(&|r| r.f_avg_estimate.map(|e| e.mean))?;
    let f_e = across(&|r| r.f_e_estimate.map(|e| e.mean))?;
    let mut phases = runs[0].phase_time_fractions;
    for (k, est) in phases.iter_mut().enumerate() {
        *est = across(&|r| Some(r.phase_time_fractions[k].mean))?.ok_or(Error::EmptySamples)?;
    }
    Ok(ReplicatedResult {
        runs,
        f_avg,
        f_e,
        phase_time_fractions: phases,
    })
}

/// Writes one sample per line.
pub fn write_samples_csv<W: Write>(samples: &[f64], mut out: W) -> io::Result<()> {
    for s in samples {
        writeln!(out, "{s}")?;
    }
    out.flush()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::waiting::{move_waiting_dist, waiting_dist_dd};

    fn fig5(arch: Architecture) -> ArchParams {
        ArchParams::new(arch, 1.0, 10.0, 1000.0, 1667.0).unwrap()
    }

    fn memory() -> MemoryParams {
        MemoryParams::composite(0.00286, 0.001).unwrap()
    }

    #[test]
    fn event_order_is_time_then_sequence() {
        let mut heap = BinaryHeap::new();
        for (time, seq) in [(2.0, 1), (1.0, 3), (1.0, 2), (0.5, 4)] {
            heap.push(Event {
                time,
                seq,
                kind: EventKind::MoveDone,
            });
        }
        let order: Vec<u64> = std::iter::from_fn(|| heap.pop()).map(|e| e.seq).collect();
        assert_eq!(order, vec![4, 2, 3, 1]);
    }

    #[test]
    fn phase_fractions_and_conservation() {
        let cfg = SimConfig::new(fig5(Architecture::SD).with_computation(5.0, f64::INFINITY).unwrap(), memory(), 2e4, 7);
        let r = simulate(&cfg).unwrap();
        let total: f64 = r.phase_time_fractions.iter().map(|e| e.mean).sum::<f64>() + r.idle_fraction;
        assert!((total - 1.0).abs() < 1e-9);
        assert!(r.phase_time_fractions.iter().all(|e| e.std_err > 0.0));
        let expected = [0.1, 1e-3, 1.0 / 1667.0];
        for (est, want) in r.phase_time_fractions.iter().zip(expected) {
            assert!(est.within(want, 4.0), "{est:?} vs {want}");
        }
        assert!(r.counters.conserved());
        assert_eq!(r.activity_violations, 0);
        assert!(r.drift_ok);
    }

    #[test]
    fn no_computations_gives_exponential_move_waits() {
        let cfg = SimConfig::new(fig5(Architecture::DD), memory(), 2e4, 3);
        let r = simulate(&cfg).unwrap();
        assert!(r.comp_wait_samples.is_empty());
        assert!(r.f_avg_estimate.is_none());
        let d = move_waiting_dist(1000.0).unwrap();
        let ks = crate::stats::ks_distance(&r.move_wait_samples, |t| d.cdf(t), |t| d.cdf_left(t)).unwrap();
        assert!(ks < 0.02, "ks = {ks}");
    }

    #[test]
    fn dd_atom_fraction() {
        let p = ArchParams::new(Architecture::DD, 50.0, 500.0, 1000.0, 1667.0)
            .unwrap()
            .with_computation(20.0, f64::INFINITY)
            .unwrap();
        let r = simulate(&SimConfig::new(p, memory(), 2e3, 11)).unwrap();
        let zeros: Vec<f64> = r.comp_wait_samples.iter().map(|&w| f64::from(w == 0.0)).collect();
        let est = MeanEstimate::from_samples(&zeros).unwrap();
        let atom = waiting_dist_dd(&p).unwrap().atom();
        assert!(est.within(atom, 4.0), "{est:?} vs {atom}");
    }

    #[test]
    fn finite_service_respects_exclusion() {
        for arch in [Architecture::SD, Architecture::DD] {
            let p = fig5(arch).with_computation(150.0, 2000.0).unwrap();
            let r = simulate(&SimConfig::new(p, memory(), 2e3, 5)).unwrap();
            assert_eq!(r.activity_violations, 0);
            assert!(r.counters.conserved());
            assert!(!r.comp_wait_samples.is_empty());
            assert!(r.comp_wait_samples.iter().all(|&w| w >= 0.0));
        }
    }

    #[test]
    fn zero_waits_give_unit_fidelity() {
        let cfg = SimConfig::new(fig5(Architecture::DD), memory(), 1.0, 1);
        let mut r = simulate(&cfg).unwrap();
        r.comp_wait_samples = vec![0.0; 10];
        r.move_wait_samples = vec![0.0; 10];
        let est = estimate_fidelities(&r, &NoiseChannel::composite(0.00286, 0.001).unwrap()).unwrap();
        assert_eq!(est.f_avg.mean, 1.0);
        assert_eq!(est.f_e.mean, 1.0);
        r.move_wait_samples.clear();
        assert!(estimate_fidelities(&r, &NoiseChannel::composite(0.00286, 0.001).unwrap()).is_err());
    }

    #[test]
    fn deterministic_replications() {
        let mut cfg = SimConfig::new(fig5(Architecture::SD).with_computation(10.0, f64::INFINITY).unwrap(), memory(), 500.0, 42);
        cfg.replications = 3;
        let a = run_replications(&cfg).unwrap();
        let b = run_replications(&cfg).unwrap();
        assert_eq!(a, b);
        assert_ne!(a.runs[0].comp_wait_samples, a.runs[1].comp_wait_samples);
        assert!(a.f_avg.unwrap().std_err > 0.0);
    }

    #[test]
    fn invalid_configs_rejected() {
        let mut cfg = SimConfig::new(fig5(Architecture::SD), memory(), 0.0, 1);
        assert!(simulate(&cfg).is_err());
        cfg.duration = 10.0;
        cfg.replications = 0;
        assert!(simulate(&cfg).is_err());
        cfg.replications = 1;
        cfg.warmup_fraction = 1.0;
        assert!(simulate(&cfg).is_err());
    }

    #[test]
    fn samples_csv_is_one_per_line() {
        let mut buf = Vec::new();
        write_samples_csv(&[0.0, 0.25, 1e-7], &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "0\n0.25\n0.0000001\n");
    }
}

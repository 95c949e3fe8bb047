//! Exhaustive constellation search.
//!
//! The tuple is searched in a cyclic rotation `τ_i = σ_{(i+rot) mod r}`
//! chosen so the enumerated classes are as small as possible. `τ_0` is the
//! fixed representative of its class (cycles in descending length on
//! consecutive points), `τ_1 … τ_{r−2}` are built cycle by cycle and
//! `τ_{r−1}` is forced to be the inverse of the partial product. While the
//! last free level is built, the partial product `π = Q∘τ_{r−2}` grows one
//! arrow per assignment; its closed cycles and open paths are checked against
//! the remaining target lengths.

use std::sync::atomic::{AtomicUsize, Ordering};

use num_bigint::BigUint;
use serde::Serialize;

use super::constellation::{is_transitive, Constellation};
use super::perm::Perm;
use crate::ramcore::{GenusRejection, Partition, RamData};

pub const DEFAULT_BUDGET: u64 = 1_000_000_000;
pub const DEFAULT_CENTRALIZER_THRESHOLD: u64 = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SearchConfig {
    /// Maximum number of point assignments.
    pub budget: u64,
    /// Worker threads; 1 runs the branches sequentially.
    pub threads: usize,
    /// Orbit pruning on `τ_1(0)` applies when `|C(τ_0)|` exceeds this.
    pub centralizer_threshold: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { budget: DEFAULT_BUDGET, threads: 1, centralizer_threshold: DEFAULT_CENTRALIZER_THRESHOLD }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SearchError {
    #[error("budget must be positive")]
    ZeroBudget,
    #[error(transparent)]
    Genus(#[from] GenusRejection),
    #[error("could not start worker pool: {0}")]
    ThreadPool(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UnsatCertificate {
    pub degree: u32,
    pub nodes: u64,
    /// Number of tuples the search space stands for: the product of the
    /// sizes of the enumerated conjugacy classes, in decimal.
    pub search_space: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum SearchOutcome {
    Witness { constellation: Constellation, nodes: u64 },
    Unsat(UnsatCertificate),
    Unknown { budget: u64 },
}

impl SearchOutcome {
    pub fn witness(&self) -> Option<&Constellation> {
        match self {
            SearchOutcome::Witness { constellation, .. } => Some(constellation),
            _ => None,
        }
    }

    pub fn is_unsat(&self) -> bool {
        matches!(self, SearchOutcome::Unsat(_))
    }
}

/// Canonical permutation of a cycle type: cycles in descending length on consecutive points.
pub fn canonical_representative(p: &Partition) -> Perm {
    let mut images = Vec::with_capacity(p.sum() as usize);
    let mut start = 0u32;
    for &len in p.entries() {
        for i in 0..len {
            images.push(start + (i + 1) % len);
        }
        start += len;
    }
    Perm::from_images_unchecked(images)
}

fn factorial(n: u32) -> BigUint {
    (1..=n).fold(BigUint::from(1u32), |acc, k| acc * k)
}

/// ∏_L L^{m_L} · m_L!
fn centralizer_order(p: &Partition) -> BigUint {
    let mut out = BigUint::from(1u32);
    let mut i = 0;
    let e = p.entries();
    while i < e.len() {
        let len = e[i];
        let m = e[i..].iter().take_while(|&&x| x == len).count();
        out *= BigUint::from(len).pow(m as u32) * factorial(m as u32);
        i += m;
    }
    out
}

pub fn class_size(p: &Partition) -> BigUint {
    factorial(p.sum()) / centralizer_order(p)
}

/// Rotation minimizing the product of the enumerated class sizes; ties to the smallest.
fn choose_rotation(parts: &[Partition]) -> usize {
    let r = parts.len();
    let sizes: Vec<BigUint> = parts.iter().map(class_size).collect();
    (0..r)
        .min_by_key(|&rot| (1..r.saturating_sub(1)).map(|i| sizes[(i + rot) % r].clone()).product::<BigUint>())
        .unwrap_or(0)
}

/// Smallest point of each orbit of the stabilizer of 0 in the centralizer of `τ_0`.
fn stabilizer_orbit_min(p: &Partition) -> Vec<u32> {
    let n = p.sum() as usize;
    let mut orbit_min = vec![0u32; n];
    let mut first_of_len: Vec<Option<u32>> = vec![None; n + 1];
    let mut start = 0u32;
    for (idx, &len) in p.entries().iter().enumerate() {
        for x in start..start + len {
            orbit_min[x as usize] = if idx == 0 { x } else { *first_of_len[len as usize].get_or_insert(start) };
        }
        start += len;
    }
    orbit_min
}

const NONE: u32 = u32::MAX;

#[derive(Clone, Copy)]
enum Undo {
    Merge { s: u32, e: u32, old_tail_s: u32, old_head_e: u32, old_len_s: u32 },
    Close { len: u32 },
}

/// Partial injection `π` tracked as disjoint paths and closed cycles.
#[derive(Clone)]
struct PathTracker {
    head: Vec<u32>,
    tail: Vec<u32>,
    len: Vec<u32>,
    avail: Vec<u32>,
    max_avail: u32,
    undo: Vec<Undo>,
}

impl PathTracker {
    fn new(n: usize, target: &Partition) -> Self {
        let mut avail = vec![0u32; n + 1];
        for &e in target.entries() {
            avail[e as usize] += 1;
        }
        PathTracker {
            head: (0..n as u32).collect(),
            tail: (0..n as u32).collect(),
            len: vec![1; n],
            max_avail: target.largest(),
            avail,
            undo: Vec::new(),
        }
    }

    fn refresh_max(&mut self) {
        while self.max_avail > 0 && self.avail[self.max_avail as usize] == 0 {
            self.max_avail -= 1;
        }
    }

    /// Adds `π(cur) = z`. Returns false (with nothing recorded) if the
    /// resulting cycle or path cannot fit the remaining target lengths.
    fn link(&mut self, cur: u32, z: u32) -> bool {
        let s = self.head[cur as usize];
        if s == z {
            let len = self.len[s as usize];
            if self.avail[len as usize] == 0 {
                return false;
            }
            self.avail[len as usize] -= 1;
            self.refresh_max();
            self.undo.push(Undo::Close { len });
            return true;
        }
        let e = self.tail[z as usize];
        let new_len = self.len[s as usize] + self.len[z as usize];
        if new_len > self.max_avail {
            return false;
        }
        self.undo.push(Undo::Merge {
            s,
            e,
            old_tail_s: self.tail[s as usize],
            old_head_e: self.head[e as usize],
            old_len_s: self.len[s as usize],
        });
        self.tail[s as usize] = e;
        self.head[e as usize] = s;
        self.len[s as usize] = new_len;
        true
    }

    fn unlink(&mut self) {
        match self.undo.pop().expect("unlink without link") {
            Undo::Close { len } => {
                self.avail[len as usize] += 1;
                if len > self.max_avail {
                    self.max_avail = len;
                }
            }
            Undo::Merge { s, e, old_tail_s, old_head_e, old_len_s } => {
                self.tail[s as usize] = old_tail_s;
                self.head[e as usize] = old_head_e;
                self.len[s as usize] = old_len_s;
            }
        }
    }
}

/// First decision of level 1: the length of the cycle through 0 and `τ_1(0)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Branch {
    len: u32,
    next: u32,
}

enum Stop {
    Found(Vec<Perm>),
    OverBudget,
    Cancelled,
}

struct Worker<'a> {
    n: usize,
    r: usize,
    /// Cycle-length counts still to place, per level.
    avail: Vec<Vec<u32>>,
    used: Vec<Vec<bool>>,
    images: Vec<Vec<u32>>,
    /// `prefix[l] = τ_0∘…∘τ_{l−1}`.
    prefix: Vec<Perm>,
    tracker: PathTracker,
    branch: Branch,
    nodes: u64,
    cap: u64,
    index: usize,
    cancel: Option<&'a AtomicUsize>,
}

impl<'a> Worker<'a> {
    fn tick(&mut self) -> Result<(), Stop> {
        self.nodes += 1;
        if self.nodes > self.cap {
            return Err(Stop::OverBudget);
        }
        if let Some(c) = self.cancel {
            if self.nodes & 0xfff == 0 && c.load(Ordering::Relaxed) < self.index {
                return Err(Stop::Cancelled);
            }
        }
        Ok(())
    }

    fn last(&self) -> usize {
        self.r - 2
    }

    /// Sets `τ_level(cur) = y`; on the last level also links `π(cur) = Q(y)`.
    fn assign(&mut self, level: usize, cur: u32, y: u32) -> Result<bool, Stop> {
        self.tick()?;
        if level == self.last() {
            let z = self.prefix[level].apply(y);
            if !self.tracker.link(cur, z) {
                return Ok(false);
            }
        }
        self.images[level][cur as usize] = y;
        Ok(true)
    }

    fn unassign(&mut self, level: usize, cur: u32) {
        if level == self.last() {
            self.tracker.unlink();
        }
        self.images[level][cur as usize] = NONE;
    }

    fn fill(&mut self, level: usize) -> Result<(), Stop> {
        let Some(p) = self.used[level].iter().position(|&u| !u) else {
            return self.level_done(level);
        };
        let p = p as u32;
        let first = level == 1 && p == 0;
        for len in 1..=self.n as u32 {
            if self.avail[level][len as usize] == 0 || (first && len != self.branch.len) {
                continue;
            }
            self.avail[level][len as usize] -= 1;
            self.used[level][p as usize] = true;
            let res = self.extend(level, p, p, len - 1);
            self.used[level][p as usize] = false;
            self.avail[level][len as usize] += 1;
            res?;
        }
        Ok(())
    }

    fn extend(&mut self, level: usize, start: u32, cur: u32, rem: u32) -> Result<(), Stop> {
        if rem == 0 {
            if self.assign(level, cur, start)? {
                let res = self.fill(level);
                self.unassign(level, cur);
                res?;
            }
            return Ok(());
        }
        let forced = (level == 1 && start == 0 && cur == 0).then_some(self.branch.next);
        for y in 0..self.n as u32 {
            if self.used[level][y as usize] || forced.is_some_and(|f| f != y) {
                continue;
            }
            if self.assign(level, cur, y)? {
                self.used[level][y as usize] = true;
                let res = self.extend(level, start, y, rem - 1);
                self.used[level][y as usize] = false;
                self.unassign(level, cur);
                res?;
            }
        }
        Ok(())
    }

    fn level_done(&mut self, level: usize) -> Result<(), Stop> {
        let tau = Perm::from_images_unchecked(self.images[level].clone());
        if level < self.last() {
            self.prefix[level + 1] = self.prefix[level].compose(&tau);
            return self.fill(level + 1);
        }
        let mut perms: Vec<Perm> = Vec::with_capacity(self.r);
        perms.push(self.prefix[1].clone());
        for l in 1..=self.last() {
            perms.push(Perm::from_images_unchecked(self.images[l].clone()));
        }
        if !is_transitive(self.n, &perms) {
            return Ok(());
        }
        let pi = self.prefix[level].compose(&tau);
        perms.push(pi.inverse());
        Err(Stop::Found(perms))
    }
}

enum BranchResult {
    Found(Vec<Perm>, u64),
    Exhausted(u64),
    OverBudget,
    Cancelled,
}

struct Plan {
    n: usize,
    r: usize,
    rot: usize,
    tau: Vec<Partition>,
    branches: Vec<Branch>,
}

impl Plan {
    fn new(data: &RamData, cfg: &SearchConfig) -> Plan {
        let parts = data.partitions();
        let r = parts.len();
        let n = data.degree() as usize;
        let rot = choose_rotation(parts);
        let tau: Vec<Partition> = (0..r).map(|i| parts[(i + rot) % r].clone()).collect();
        let mut branches = Vec::new();
        if r >= 3 {
            let prune = centralizer_order(&tau[0]) > BigUint::from(cfg.centralizer_threshold);
            let orbit_min = stabilizer_orbit_min(&tau[0]);
            let mut lens: Vec<u32> = tau[1].entries().to_vec();
            lens.sort_unstable();
            lens.dedup();
            for len in lens {
                if len == 1 {
                    branches.push(Branch { len, next: 0 });
                    continue;
                }
                for y in 1..n as u32 {
                    if !prune || orbit_min[y as usize] == y {
                        branches.push(Branch { len, next: y });
                    }
                }
            }
        }
        Plan { n, r, rot, tau, branches }
    }

    fn run_branch(&self, index: usize, cap: u64, cancel: Option<&AtomicUsize>) -> BranchResult {
        let (n, r) = (self.n, self.r);
        let mut avail = vec![vec![0u32; n + 1]; r];
        for (l, part) in self.tau.iter().enumerate() {
            for &e in part.entries() {
                avail[l][e as usize] += 1;
            }
        }
        let tau0 = canonical_representative(&self.tau[0]);
        let mut prefix = vec![Perm::identity(n); r];
        prefix[1] = tau0;
        let mut w = Worker {
            n,
            r,
            avail,
            used: vec![vec![false; n]; r],
            images: vec![vec![NONE; n]; r],
            prefix,
            tracker: PathTracker::new(n, &self.tau[r - 1]),
            branch: self.branches[index],
            nodes: 0,
            cap,
            index,
            cancel,
        };
        match w.fill(1) {
            Ok(()) => BranchResult::Exhausted(w.nodes),
            Err(Stop::Found(perms)) => BranchResult::Found(perms, w.nodes),
            Err(Stop::OverBudget) => BranchResult::OverBudget,
            Err(Stop::Cancelled) => BranchResult::Cancelled,
        }
    }

    fn unrotate(&self, tau: Vec<Perm>) -> Constellation {
        let r = self.r;
        let sigma: Vec<Perm> = (0..r).map(|i| tau[(i + r - self.rot) % r].clone()).collect();
        Constellation::new(sigma).expect("search produces a common degree")
    }

    fn search_space(&self) -> String {
        (1..self.r.saturating_sub(1)).map(|i| class_size(&self.tau[i])).product::<BigUint>().to_string()
    }
}

/// Decides whether `data` is realized by a transitive permutation tuple with
/// identity product. The witness, node counts and verdict do not depend on
/// `cfg.threads`.
pub fn realize(data: &RamData, cfg: &SearchConfig) -> Result<SearchOutcome, SearchError> {
    if cfg.budget == 0 {
        return Err(SearchError::ZeroBudget);
    }
    data.genus()?;
    let plan = Plan::new(data, cfg);
    let degree = data.degree();
    if plan.r == 2 {
        let tau0 = canonical_representative(&plan.tau[0]);
        let tau1 = tau0.inverse();
        if tau1.cycle_type() == plan.tau[1] && is_transitive(plan.n, [&tau0]) {
            return Ok(SearchOutcome::Witness { constellation: plan.unrotate(vec![tau0, tau1]), nodes: 0 });
        }
        return Ok(SearchOutcome::Unsat(UnsatCertificate { degree, nodes: 0, search_space: "1".into() }));
    }

    let budget = cfg.budget;
    let mut used: u64 = 0;
    if cfg.threads <= 1 {
        for i in 0..plan.branches.len() {
            match plan.run_branch(i, budget - used, None) {
                BranchResult::Found(perms, nodes) => {
                    return Ok(SearchOutcome::Witness { constellation: plan.unrotate(perms), nodes: used + nodes });
                }
                BranchResult::Exhausted(nodes) => used += nodes,
                BranchResult::OverBudget => return Ok(SearchOutcome::Unknown { budget }),
                BranchResult::Cancelled => unreachable!("no cancellation without a pool"),
            }
        }
    } else {
        use rayon::prelude::*;
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.threads)
            .build()
            .map_err(|e| SearchError::ThreadPool(e.to_string()))?;
        let cancel = AtomicUsize::new(usize::MAX);
        let results: Vec<BranchResult> = pool.install(|| {
            (0..plan.branches.len())
                .into_par_iter()
                .map(|i| {
                    if cancel.load(Ordering::Relaxed) < i {
                        return BranchResult::Cancelled;
                    }
                    let res = plan.run_branch(i, budget, Some(&cancel));
                    if matches!(res, BranchResult::Found(..) | BranchResult::OverBudget) {
                        cancel.fetch_min(i, Ordering::Relaxed);
                    }
                    res
                })
                .collect()
        });
        for res in results {
            match res {
                BranchResult::Found(perms, nodes) => {
                    if used + nodes > budget {
                        return Ok(SearchOutcome::Unknown { budget });
                    }
                    return Ok(SearchOutcome::Witness { constellation: plan.unrotate(perms), nodes: used + nodes });
                }
                BranchResult::Exhausted(nodes) => {
                    used += nodes;
                    if used > budget {
                        return Ok(SearchOutcome::Unknown { budget });
                    }
                }
                BranchResult::OverBudget => return Ok(SearchOutcome::Unknown { budget }),
                BranchResult::Cancelled => unreachable!("an earlier branch decides the outcome"),
            }
        }
    }
    Ok(SearchOutcome::Unsat(UnsatCertificate { degree, nodes: used, search_space: plan.search_space() }))
}

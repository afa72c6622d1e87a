//! Bit-exact simulation of block-Markov feedback coding on the linear
//! deterministic IC.
//!
//! Each block is a single channel use. Transmitters send fresh private,
//! non-cooperative common and cooperative common bits; receivers feed back a
//! window of their received signal, from which each transmitter strips its
//! own contribution and recovers the other user's cooperative bits, which it
//! relays two blocks later. Receivers decode backward from the last block.

use std::collections::VecDeque;
use std::fmt::{self, Write as _};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::SimError;
use crate::ldic::capacity::theorem3_region;
use crate::ldic::model::{channel_output, shift_down, BitVec, LdicParams};
use crate::region::RatePair;
use crate::scalar::{rat, Rational};

/// Level map of one transmitter. All indices are 1-based, level 1 on top.
///
/// `coop_levels[i]` carries cooperative bit `i` of the current block;
/// `relay_levels[i]` carries the *other* user's cooperative bit `i` from two
/// blocks back; `echo_levels[i]` repeats this user's own cooperative bit `i`
/// from two blocks back.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TxPlan {
    pub private_levels: Vec<usize>,
    pub noncoop_levels: Vec<usize>,
    pub coop_levels: Vec<usize>,
    pub relay_levels: Vec<usize>,
    pub echo_levels: Vec<usize>,
    pub silent_levels: Vec<usize>,
}

impl TxPlan {
    fn used(&self) -> impl Iterator<Item = usize> + '_ {
        self.private_levels
            .iter()
            .chain(&self.noncoop_levels)
            .chain(&self.coop_levels)
            .chain(&self.relay_levels)
            .chain(&self.echo_levels)
            .copied()
    }

    pub fn fresh_bits(&self) -> usize {
        self.private_levels.len() + self.noncoop_levels.len() + self.coop_levels.len()
    }
}

/// Per-block fresh bit counts, `(cooperative, non-cooperative, private)` per user.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SchemeRates {
    pub r1cc: usize,
    pub r1nc: usize,
    pub r1p: usize,
    pub r2cc: usize,
    pub r2nc: usize,
    pub r2p: usize,
}

impl SchemeRates {
    pub fn r1(&self) -> usize {
        self.r1cc + self.r1nc + self.r1p
    }

    pub fn r2(&self) -> usize {
        self.r2cc + self.r2nc + self.r2p
    }

    pub fn sum(&self) -> usize {
        self.r1() + self.r2()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchemeConfig {
    pub q: usize,
    pub tx: [TxPlan; 2],
    /// Levels of `y_k` fed back to transmitter `k`.
    pub feedback_levels: [Vec<usize>; 2],
    pub rates: SchemeRates,
}

impl SchemeConfig {
    /// Steady-state rate pair (bits per channel use, ignoring the two tail blocks).
    pub fn rate_pair(&self) -> RatePair<Rational> {
        RatePair::new(rat(self.rates.r1() as i64), rat(self.rates.r2() as i64))
    }

    /// Same scheme with the two users' roles exchanged; only meaningful on
    /// symmetric channels.
    pub fn swapped(&self) -> Self {
        let r = self.rates;
        Self {
            q: self.q,
            tx: [self.tx[1].clone(), self.tx[0].clone()],
            feedback_levels: [self.feedback_levels[1].clone(), self.feedback_levels[0].clone()],
            rates: SchemeRates {
                r1cc: r.r2cc,
                r1nc: r.r2nc,
                r1p: r.r2p,
                r2cc: r.r1cc,
                r2nc: r.r1nc,
                r2p: r.r1p,
            },
        }
    }

    /// Checks the scheme against the channel: disjoint in-range level sets,
    /// feedback within budget, and every cooperative bit visible in the other
    /// receiver's feedback.
    pub fn validate(&self, g: &LdicParams) -> Result<(), SimError> {
        let mismatch = |s: String| Err(SimError::SchemeMismatch(s));
        let q = g.q();
        if self.q != q {
            return mismatch(format!("scheme length {} but channel needs {q}", self.q));
        }
        let (fb1, fb2) = g
            .integer_feedback()
            .ok_or_else(|| SimError::SchemeMismatch("feedback capacities must be integers".into()))?;
        let cross_in = [g.n21, g.n12];
        let cross_out = [g.n12, g.n21];
        let budget = [fb1, fb2];
        for k in 0..2 {
            let j = 1 - k;
            let plan = &self.tx[k];
            let mut seen = vec![false; q + 1];
            for l in plan.used().chain(plan.silent_levels.iter().copied()) {
                if l == 0 || l > q {
                    return mismatch(format!("tx{} level {l} outside 1..={q}", k + 1));
                }
                if seen[l] {
                    return mismatch(format!("tx{} level {l} assigned twice", k + 1));
                }
                seen[l] = true;
            }
            if plan.relay_levels.len() != self.tx[j].coop_levels.len() {
                return mismatch(format!("tx{} relays {} bits but tx{} sends {} cooperative bits",
                    k + 1, plan.relay_levels.len(), j + 1, self.tx[j].coop_levels.len()));
            }
            if !plan.echo_levels.is_empty() && plan.echo_levels.len() != plan.coop_levels.len() {
                return mismatch(format!("tx{} echo count differs from its cooperative count", k + 1));
            }
            let fb = &self.feedback_levels[k];
            if fb.len() > budget[k] {
                return mismatch(format!("rx{} feeds back {} levels, budget {}", k + 1, fb.len(), budget[k]));
            }
            if let Some(&l) = fb.iter().find(|&&l| l == 0 || l > q || l + cross_in[k] <= q) {
                return mismatch(format!("rx{} feedback level {l} outside the interference window", k + 1));
            }
            // the other transmitter's cooperative bits must land inside this receiver's feedback
            for &l in &self.tx[j].coop_levels {
                if l > cross_out[j] || !fb.contains(&(l + q - cross_out[j])) {
                    return mismatch(format!(
                        "tx{} cooperative level {l} is not fed back by rx{}",
                        j + 1,
                        k + 1
                    ));
                }
            }
        }
        Ok(())
    }
}

fn levels(range: std::ops::RangeInclusive<usize>) -> Vec<usize> {
    range.collect()
}

/// Scheme for the symmetric channel `(n, n, m, m, c, c)` with `m ≤ 2n/3`.
/// The asymmetric corner-point schedule is [`motivating_scheme`].
///
/// An odd cooperative budget gives user 1 the extra bit.
pub fn build_scheme(g: &LdicParams) -> Result<SchemeConfig, SimError> {
    build_scheme_split(g, true)
}

/// As [`build_scheme`]; `first_gets_extra` picks which user carries the extra
/// cooperative bit when the budget is odd.
pub fn build_scheme_split(g: &LdicParams, first_gets_extra: bool) -> Result<SchemeConfig, SimError> {
    let (c, c_other) = g
        .integer_feedback()
        .ok_or_else(|| SimError::UnsupportedRegime("feedback capacities must be integers".into()))?;
    if !(g.n11 == g.n22 && g.n12 == g.n21 && c == c_other) {
        return Err(SimError::UnsupportedRegime(format!("asymmetric channel {g}")));
    }
    let (n, m) = (g.n11, g.n12);
    if 3 * m > 2 * n {
        return Err(SimError::UnsupportedRegime(format!("m = {m} exceeds 2n/3 for n = {n}")));
    }
    let scheme = if 2 * m <= n {
        weak_scheme(n, m, c, first_gets_extra)
    } else {
        moderate_scheme(n, m, c, first_gets_extra)?
    };
    scheme.validate(g)?;
    Ok(scheme)
}

fn split(e: usize, first_gets_extra: bool) -> [usize; 2] {
    let (hi, lo) = (e.div_ceil(2), e / 2);
    if first_gets_extra {
        [hi, lo]
    } else {
        [lo, hi]
    }
}

fn feedback_window(q: usize, cross: usize, cfb: usize) -> Vec<usize> {
    let w = cross.min(cfb);
    levels(q - w + 1..=q)
}

/// `2m ≤ n`: private bottom `n−m` levels, cooperative bits just above the
/// private block, relays on top.
fn weak_scheme(n: usize, m: usize, c: usize, first_gets_extra: bool) -> SchemeConfig {
    let cs = split((2 * c).min(m), first_gets_extra);
    let d = n - m;
    let plan = |k: usize| {
        let j = 1 - k;
        let coop = levels(m - cs[k] + 1..=m);
        let relay = levels(1..=cs[j]);
        TxPlan {
            private_levels: levels(m + 1..=n),
            noncoop_levels: vec![],
            silent_levels: levels(cs[j] + 1..=m - cs[k]),
            coop_levels: coop,
            relay_levels: relay,
            echo_levels: vec![],
        }
    };
    SchemeConfig {
        q: n,
        tx: [plan(0), plan(1)],
        feedback_levels: [feedback_window(n, m, c), feedback_window(n, m, c)],
        rates: SchemeRates { r1cc: cs[0], r1nc: 0, r1p: d, r2cc: cs[1], r2nc: 0, r2p: d },
    }
}

/// `n/2 < m ≤ 2n/3`. With `D = n−m` and `K = 2m−n` each transmitter uses
/// levels `1..K` for non-cooperative common bits, `K+1..D` for echo/relay
/// slots, `D+1..m` for cooperative bits (bottom of that band) and `m+1..n`
/// for private bits. Every cooperative bit owns one echo/relay slot where
/// both transmitters send it two blocks later, so both receivers see it
/// in the clear.
fn moderate_scheme(n: usize, m: usize, c: usize, first_gets_extra: bool) -> Result<SchemeConfig, SimError> {
    let d = n - m;
    let k_top = 2 * m - n;
    let cs = split((2 * c).min(2 * n - 3 * m), first_gets_extra);
    if cs[0] > k_top || cs[1] > k_top {
        return Err(SimError::UnsupportedRegime(format!(
            "cooperative split {cs:?} exceeds the common band of width {k_top} for (n, m) = ({n}, {m})"
        )));
    }
    let slots = [levels(k_top + 1..=k_top + cs[0]), levels(k_top + cs[0] + 1..=k_top + cs[0] + cs[1])];
    let plan = |k: usize| {
        let j = 1 - k;
        let coop = levels(m - cs[k] + 1..=m);
        let mut silent: Vec<usize> = levels(k_top + cs[0] + cs[1] + 1..=d);
        silent.extend(d + 1..=m - cs[k]);
        TxPlan {
            private_levels: levels(m + 1..=n),
            noncoop_levels: levels(1..=k_top),
            coop_levels: coop,
            relay_levels: slots[j].clone(),
            echo_levels: slots[k].clone(),
            silent_levels: silent,
        }
    };
    Ok(SchemeConfig {
        q: n,
        tx: [plan(0), plan(1)],
        feedback_levels: [feedback_window(n, m, c), feedback_window(n, m, c)],
        rates: SchemeRates {
            r1cc: cs[0],
            r1nc: k_top,
            r1p: d,
            r2cc: cs[1],
            r2nc: k_top,
            r2p: d,
        },
    })
}

/// Reference schedule for `(4, 4, 2, 2, 1, 1)` reaching the corner `(4, 1)`:
/// transmitter 1 fills all four levels, transmitter 2 sends one fresh bit on
/// level 3 and relays transmitter 1's top bit from two blocks back on level 2.
/// Receiver 2 feeds back its level 3, where that top bit meets the fresh bit.
pub fn motivating_scheme() -> SchemeConfig {
    SchemeConfig {
        q: 4,
        tx: [
            TxPlan {
                coop_levels: vec![1],
                noncoop_levels: vec![2],
                private_levels: vec![3, 4],
                ..TxPlan::default()
            },
            TxPlan {
                private_levels: vec![3],
                relay_levels: vec![2],
                silent_levels: vec![1, 4],
                ..TxPlan::default()
            },
        ],
        feedback_levels: [vec![4], vec![3]],
        rates: SchemeRates { r1cc: 1, r1nc: 1, r1p: 2, r2cc: 0, r2nc: 0, r2p: 1 },
    }
}

pub fn motivating_params() -> LdicParams {
    LdicParams::int(4, 4, 2, 2, 1, 1)
}

/// Where message bits come from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MessageSource {
    Seeded(u64),
    /// Every message bit is zero.
    Zeros,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SimOptions {
    /// Also solve the block-unrolled linear system over GF(2) and compare.
    pub cross_check: bool,
}

/// Everything observed in one block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockTrace {
    pub block: usize,
    pub x: [BitVec; 2],
    pub y: [BitVec; 2],
    pub feedback: [BitVec; 2],
    /// Fresh bits of this block as decoded by their intended receiver.
    pub decoded: [Vec<bool>; 2],
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimResult {
    pub blocks: usize,
    pub achieved: RatePair<Rational>,
    pub decode_ok: bool,
    /// Every relayed bit equalled the cooperative bit it stood for.
    pub relay_ok: bool,
    /// Outcome of the GF(2) cross-check when requested.
    pub gf2_agrees: Option<bool>,
    pub trace: Vec<BlockTrace>,
}

impl SimResult {
    /// Line-oriented dump: one stanza per block, levels MSB-first.
    pub fn trace_text(&self) -> String {
        let mut s = String::new();
        let bits = |v: &[bool]| v.iter().map(|&b| if b { '1' } else { '0' }).collect::<String>();
        for t in &self.trace {
            let _ = writeln!(s, "block {}", t.block);
            for k in 0..2 {
                let _ = writeln!(s, "  x{} {}", k + 1, t.x[k]);
            }
            for k in 0..2 {
                let _ = writeln!(s, "  y{} {}", k + 1, t.y[k]);
            }
            for k in 0..2 {
                let _ = writeln!(s, "  fb{} {}", k + 1, t.feedback[k]);
            }
            for k in 0..2 {
                let _ = writeln!(s, "  dec{} {}", k + 1, bits(&t.decoded[k]));
            }
        }
        s
    }
}

impl fmt::Display for SimResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r1 = *self.achieved.r1.numer() as f64 / *self.achieved.r1.denom() as f64;
        let r2 = *self.achieved.r2.numer() as f64 / *self.achieved.r2.denom() as f64;
        write!(f, "({r1:.3}, {r2:.3}) {}", if self.decode_ok { "OK" } else { "FAIL" })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    Private,
    NonCoop,
    Coop,
}

/// A fresh message bit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Var {
    user: usize,
    block: usize,
    kind: Kind,
    idx: usize,
}

/// Symbolic content of a level: XOR of a set of variables (sorted ids).
type Label = Vec<usize>;

fn xor_labels(a: &Label, b: &Label) -> Label {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::with_capacity(a.len() + b.len());
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

fn shift_labels(x: &[Label], n: usize) -> Vec<Label> {
    let q = x.len();
    let mut out = vec![Vec::new(); q - n];
    out.extend_from_slice(&x[..n]);
    out
}

/// Message bits and their variable ids, indexed `[user][block][kind][idx]`.
struct Messages {
    vars: Vec<Var>,
    values: Vec<bool>,
    /// `ids[user][block - 1]` maps (kind, idx) to the variable id.
    ids: Vec<Vec<[Vec<usize>; 3]>>,
}

impl Messages {
    fn generate(scheme: &SchemeConfig, blocks: usize, source: MessageSource) -> Self {
        let mut rng = match source {
            MessageSource::Seeded(s) => Some(ChaCha8Rng::seed_from_u64(s)),
            MessageSource::Zeros => None,
        };
        let mut vars = Vec::new();
        let mut values = Vec::new();
        let mut ids: Vec<Vec<_>> = (0..2).map(|_| Vec::with_capacity(blocks)).collect();
        for b in 1..=blocks {
            for (k, user_ids) in ids.iter_mut().enumerate() {
                let plan = &scheme.tx[k];
                let counts = if b + 2 <= blocks {
                    [plan.private_levels.len(), plan.noncoop_levels.len(), plan.coop_levels.len()]
                } else {
                    [0; 3]
                };
                let mut slot: [Vec<usize>; 3] = Default::default();
                for (ki, kind) in [Kind::Private, Kind::NonCoop, Kind::Coop].into_iter().enumerate() {
                    for idx in 0..counts[ki] {
                        slot[ki].push(vars.len());
                        vars.push(Var { user: k, block: b, kind, idx });
                        values.push(rng.as_mut().is_some_and(|r| r.gen()));
                    }
                }
                user_ids.push(slot);
            }
        }
        Self { vars, values, ids }
    }

    fn id(&self, user: usize, block: usize, kind: Kind, idx: usize) -> Option<usize> {
        let ki = match kind {
            Kind::Private => 0,
            Kind::NonCoop => 1,
            Kind::Coop => 2,
        };
        self.ids[user].get(block.checked_sub(1)?)?[ki].get(idx).copied()
    }
}

/// One received level: the XOR of `label` equals `value`.
struct Equation {
    block: usize,
    label: Label,
    value: bool,
}

/// Runs the scheme for `blocks` blocks with seeded random messages.
pub fn simulate(g: &LdicParams, scheme: &SchemeConfig, blocks: usize, seed: u64) -> Result<SimResult, SimError> {
    simulate_with(g, scheme, blocks, MessageSource::Seeded(seed), SimOptions::default())
}

pub fn simulate_with(
    g: &LdicParams,
    scheme: &SchemeConfig,
    blocks: usize,
    source: MessageSource,
    opts: SimOptions,
) -> Result<SimResult, SimError> {
    if blocks < 3 {
        return Err(SimError::TooFewBlocks(blocks));
    }
    scheme.validate(g)?;
    let q = g.q();
    let msgs = Messages::generate(scheme, blocks, source);
    let direct = [g.n11, g.n22];
    let cross_out = [g.n12, g.n21];

    // recovered[k][b-1][i]: transmitter k's estimate of the other user's
    // cooperative bit i of block b
    let mut recovered: [Vec<Vec<bool>>; 2] = [vec![Vec::new(); blocks], vec![Vec::new(); blocks]];
    let mut relay_ok = true;
    let mut equations: [Vec<Equation>; 2] = [Vec::new(), Vec::new()];
    let mut trace = Vec::with_capacity(blocks);

    for b in 1..=blocks {
        let mut x = [BitVec::zeros(q), BitVec::zeros(q)];
        let mut lab: [Vec<Label>; 2] = [vec![Vec::new(); q], vec![Vec::new(); q]];
        for k in 0..2 {
            let j = 1 - k;
            let plan = &scheme.tx[k];
            let mut put = |level: usize, id: Option<usize>, value: Option<bool>| {
                if let Some(id) = id {
                    x[k].set_level(level, value.unwrap_or(msgs.values[id]));
                    lab[k][level - 1] = vec![id];
                }
            };
            for (kind, lv) in [
                (Kind::Private, &plan.private_levels),
                (Kind::NonCoop, &plan.noncoop_levels),
                (Kind::Coop, &plan.coop_levels),
            ] {
                for (i, &l) in lv.iter().enumerate() {
                    put(l, msgs.id(k, b, kind, i), None);
                }
            }
            if b >= 3 {
                for (i, &l) in plan.echo_levels.iter().enumerate() {
                    put(l, msgs.id(k, b - 2, Kind::Coop, i), None);
                }
                for (i, &l) in plan.relay_levels.iter().enumerate() {
                    let id = msgs.id(j, b - 2, Kind::Coop, i);
                    if let Some(id) = id {
                        let v = recovered[k][b - 3][i];
                        relay_ok &= v == msgs.values[id];
                        put(l, Some(id), Some(v));
                    }
                }
            }
        }

        let (y1, y2) = channel_output(&x[0], &x[1], g)?;
        let y = [y1, y2];
        let ylab = [
            shift_labels(&lab[0], g.n11).iter().zip(shift_labels(&lab[1], g.n21)).map(|(a, b)| xor_labels(a, &b)).collect::<Vec<_>>(),
            shift_labels(&lab[0], g.n12).iter().zip(shift_labels(&lab[1], g.n22)).map(|(a, b)| xor_labels(a, &b)).collect::<Vec<_>>(),
        ];

        let mut feedback = [BitVec::zeros(q), BitVec::zeros(q)];
        for k in 0..2 {
            for &l in &scheme.feedback_levels[k] {
                feedback[k].set_level(l, y[k].level(l));
            }
            for (l, label) in ylab[k].iter().enumerate() {
                equations[k].push(Equation { block: b, label: label.clone(), value: y[k].level(l + 1) });
            }
        }

        // transmitter k strips its own contribution from the fed-back levels
        for k in 0..2 {
            let j = 1 - k;
            let own = shift_down(&x[k], direct[k])?;
            recovered[k][b - 1] = scheme.tx[j]
                .coop_levels
                .iter()
                .map(|&l| {
                    let at = l + q - cross_out[j];
                    feedback[k].level(at) ^ own.level(at)
                })
                .collect();
        }

        trace.push(BlockTrace { block: b, x, y, feedback, decoded: [Vec::new(), Vec::new()] });
    }

    let mut decode_ok = true;
    let mut gf2_agrees = opts.cross_check.then_some(true);
    let mut delivered = [0usize; 2];
    for k in 0..2 {
        let (known, consistent) = peel(&equations[k], msgs.vars.len(), blocks);
        let own: Vec<usize> = (0..msgs.vars.len()).filter(|&v| msgs.vars[v].user == k).collect();
        let unresolved = own.iter().filter(|&&v| known[v].is_none()).count();
        if unresolved > 0 {
            return Err(SimError::DecodingAmbiguity { receiver: k + 1, unresolved });
        }
        decode_ok &= consistent;
        for &v in &own {
            let got = known[v].unwrap_or(false);
            if got == msgs.values[v] {
                delivered[k] += 1;
            } else {
                decode_ok = false;
            }
            trace[msgs.vars[v].block - 1].decoded[k].push(got);
        }
        if opts.cross_check {
            let solved = gf2_solve(&equations[k], msgs.vars.len());
            let agrees = own.iter().all(|&v| solved[v].is_some() && solved[v] == known[v]);
            gf2_agrees = gf2_agrees.map(|a| a && agrees);
        }
    }

    let b = rat(blocks as i64);
    Ok(SimResult {
        blocks,
        achieved: RatePair::new(rat(delivered[0] as i64) / b, rat(delivered[1] as i64) / b),
        decode_ok,
        relay_ok,
        gf2_agrees,
        trace,
    })
}

/// Level peeling: any equation with a single unknown resolves it. Equations
/// are first visited from the last block backwards; newly solved variables
/// wake up the equations they appear in until nothing changes.
///
/// Returns the solved values and whether every fully known equation checked out.
fn peel(eqs: &[Equation], nvars: usize, blocks: usize) -> (Vec<Option<bool>>, bool) {
    let mut known: Vec<Option<bool>> = vec![None; nvars];
    let mut occurs: Vec<Vec<usize>> = vec![Vec::new(); nvars];
    let mut unknown: Vec<usize> = Vec::with_capacity(eqs.len());
    for (e, eq) in eqs.iter().enumerate() {
        for &v in &eq.label {
            occurs[v].push(e);
        }
        unknown.push(eq.label.len());
    }
    let mut order: Vec<usize> = (0..eqs.len()).collect();
    // backward in blocks, top level first within a block
    order.sort_by_key(|&e| (blocks - eqs[e].block, e));
    let mut queue: VecDeque<usize> = order.into_iter().filter(|&e| unknown[e] == 1).collect();
    while let Some(e) = queue.pop_front() {
        if unknown[e] != 1 {
            continue;
        }
        let eq = &eqs[e];
        let mut acc = eq.value;
        let mut target = None;
        for &v in &eq.label {
            match known[v] {
                Some(b) => acc ^= b,
                None => target = Some(v),
            }
        }
        let Some(v) = target else { continue };
        known[v] = Some(acc);
        for &f in &occurs[v] {
            unknown[f] -= 1;
            if unknown[f] == 1 {
                queue.push_back(f);
            }
        }
    }
    let consistent = eqs.iter().all(|eq| {
        eq.label
            .iter()
            .map(|&v| known[v])
            .try_fold(eq.value, |acc, b| b.map(|b| acc ^ b))
            .is_none_or(|residual| !residual)
    });
    (known, consistent)
}

/// Gauss–Jordan elimination over GF(2) on the block-unrolled system. A
/// variable counts as determined when its pivot row has no free variables.
fn gf2_solve(eqs: &[Equation], nvars: usize) -> Vec<Option<bool>> {
    let words = nvars.div_ceil(64) + 1;
    let rhs_bit = nvars;
    let mut rows: Vec<Vec<u64>> = eqs
        .iter()
        .map(|eq| {
            let mut r = vec![0u64; words];
            for &v in &eq.label {
                r[v / 64] ^= 1 << (v % 64);
            }
            if eq.value {
                r[rhs_bit / 64] ^= 1 << (rhs_bit % 64);
            }
            r
        })
        .collect();
    let bit = |r: &Vec<u64>, v: usize| r[v / 64] >> (v % 64) & 1 == 1;
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut row = 0;
    for col in 0..nvars {
        let Some(p) = (row..rows.len()).find(|&r| bit(&rows[r], col)) else { continue };
        rows.swap(row, p);
        let pivot = rows[row].clone();
        for (r, other) in rows.iter_mut().enumerate() {
            if r != row && bit(other, col) {
                for (a, b) in other.iter_mut().zip(&pivot) {
                    *a ^= b;
                }
            }
        }
        pivots.push((row, col));
        row += 1;
    }
    let mut out = vec![None; nvars];
    for (r, col) in pivots {
        let lone = (0..nvars).all(|v| v == col || !bit(&rows[r], v));
        if lone {
            out[col] = Some(bit(&rows[r], rhs_bit));
        }
    }
    out
}

/// The reference two-user schedule reaching `(B−2)/B · (4, 1)`.
pub fn run_motivating_example(blocks: usize) -> Result<SimResult, SimError> {
    simulate_with(
        &motivating_params(),
        &motivating_scheme(),
        blocks,
        MessageSource::Seeded(0),
        SimOptions::default(),
    )
}

/// Capacity-region membership of the scheme's steady-state rate pair.
pub fn scheme_in_capacity_region(g: &LdicParams, scheme: &SchemeConfig) -> bool {
    theorem3_region(g).contains(&scheme.rate_pair(), &rat(0))
}

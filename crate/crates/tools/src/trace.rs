//! Simulation trace files.
//!
//! ```text
//! trace seed <seed>
//! # step event label c|u sup_pre sup_post m1 m2 m3
//! 0 1 "First goal started" c 0 1 1 0 0
//! ...
//! summary delivered <bool> blocked <bool> steps <n> failures <n> recovered <n> stop <reason>
//! ```
//!
//! One record per fired event, fields separated by single spaces in the order
//! shown. `sup_pre`/`sup_post` are the supervisor states before and after the
//! event; `m1 m2 m3` are the machine states after it.

use std::fmt::Write;

use scdes_core::runtime::{SimulationOutcome, StopReason};

use crate::text::quote;

pub const FIELD_HEADER: &str = "# step event label c|u sup_pre sup_post m1 m2 m3";

pub fn serialize_trace(outcome: &SimulationOutcome, seed: u64) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "trace seed {seed}");
    out.push_str(FIELD_HEADER);
    out.push('\n');
    for r in &outcome.trace.records {
        let [m1, m2, m3] = r.state.machines;
        let _ = writeln!(
            out,
            "{} {} {} {} {} {} {m1} {m2} {m3}",
            r.step,
            r.event,
            quote(&r.label),
            if r.controllable { 'c' } else { 'u' },
            r.supervisor_before,
            r.supervisor_after,
        );
    }
    let s = &outcome.summary;
    let _ = writeln!(
        out,
        "summary delivered {} blocked {} steps {} failures {} recovered {} stop {}",
        s.delivered,
        s.blocked,
        s.steps,
        s.failures,
        s.failures_recovered,
        stop_name(s.stop)
    );
    out
}

pub fn stop_name(stop: StopReason) -> &'static str {
    match stop {
        StopReason::Delivered => "delivered",
        StopReason::StepLimit => "step-limit",
        StopReason::Blocked => "blocked",
    }
}

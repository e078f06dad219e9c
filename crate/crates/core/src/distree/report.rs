use std::fmt::Write as _;
use std::io;

use crate::distree::ExecutionReport;

impl ExecutionReport {
    /// One line per machine per round:
    /// `t=<round> machine=<id> input=<items> output=<items> value=<f> calls=<oracle calls>`.
    pub fn trace_text(&self) -> String {
        let mut out = String::new();
        for round in &self.rounds {
            for m in &round.machines {
                let _ = writeln!(
                    out,
                    "t={} machine={} input={} output={} value={} calls={}",
                    round.t, m.machine, m.input_size, m.output_size, m.value, m.oracle_calls
                );
            }
        }
        out
    }

    pub fn write_trace<W: io::Write>(&self, mut w: W) -> io::Result<()> {
        w.write_all(self.trace_text().as_bytes())
    }
}

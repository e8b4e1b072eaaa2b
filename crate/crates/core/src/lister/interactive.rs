use std::io::{BufRead, Write};

use super::{filter_move, Lister, ListerMove};
use crate::engine::GameState;
use crate::io::{format_presentation, parse_presentation};
use crate::scalar::Scalar;

/// A human Lister reading `present v:t v:t ...` lines.
///
/// Before each prompt the previous Painter response and the per-vertex state
/// are printed. The admitted move (after filtering) is echoed back. `quit`
/// or end of input stops the source.
pub struct InteractiveLister<R, W> {
    input: R,
    output: W,
}

impl<R: BufRead, W: Write> InteractiveLister<R, W> {
    pub fn new(input: R, output: W) -> Self {
        Self { input, output }
    }

    pub fn into_parts(self) -> (R, W) {
        (self.input, self.output)
    }

    fn show_state<S: Scalar>(&mut self, state: &GameState<'_, S>) {
        let out = &mut self.output;
        if state.round() > 0 {
            let painted: Vec<String> = (0..state.graph().vertex_count())
                .filter(|&v| state.color(v) == Some(state.round()))
                .map(|v| v.to_string())
                .collect();
            let _ = writeln!(
                out,
                "painter colored {{{}}} in round {}",
                painted.join(", "),
                state.round()
            );
        }
        let _ = writeln!(out, "-- round {} --", state.round() + 1);
        for v in 0..state.graph().vertex_count() {
            let color = state.color(v).map_or_else(|| "-".to_string(), |c| c.to_string());
            let _ = writeln!(
                out,
                "  v{v}: color {color}, spent {} of {}",
                state.spent(v),
                state.lambda(v)
            );
        }
    }
}

impl<S: Scalar, R: BufRead, W: Write> Lister<S> for InteractiveLister<R, W> {
    fn next_move(&mut self, state: &GameState<'_, S>) -> Option<ListerMove<S>> {
        self.show_state(state);
        loop {
            let _ = write!(self.output, "> ");
            let _ = self.output.flush();
            let mut line = String::new();
            match self.input.read_line(&mut line) {
                Ok(0) | Err(_) => return None,
                Ok(_) => {}
            }
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if line == "quit" || line == "exit" {
                return None;
            }
            match parse_presentation::<S>(line) {
                Ok(raw) => match filter_move(&raw, state) {
                    Some(mv) => {
                        let _ = writeln!(self.output, "admitted: {}", format_presentation(&mv));
                        return Some(mv);
                    }
                    None => {
                        let _ = writeln!(self.output, "nothing left after filtering; move skipped");
                    }
                },
                Err(e) => {
                    let _ = writeln!(self.output, "error: {e}");
                }
            }
        }
    }
}

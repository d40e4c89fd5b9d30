//! Line-oriented text format.
//!
//! ```text
//! qubits 3
//! stage unary
//! x 0
//! ry 1 1.5707963267948966
//! cnot 0 1
//! mcx 2 0 1 2
//! hwc 1 2 0 1 2
//! ```
//!
//! `mcx k c1 .. ck t` and `hwc w k c1 .. ck t` carry their control count.
//! `stage NAME` tags the following gates, `stage -` clears the tag. Angles
//! are printed in shortest round-trip form, so `parse(emit(c)) == c`.

use super::{Circuit, Gate};
use crate::error::{Error, Result};
use std::fmt::Write;

/// Serializes a circuit.
pub fn emit(c: &Circuit) -> String {
    let mut out = String::new();
    writeln!(out, "qubits {}", c.num_qubits()).unwrap();
    let mut stage: Option<&str> = None;
    for op in c.ops() {
        let s = op.stage.as_deref();
        if s != stage {
            writeln!(out, "stage {}", s.unwrap_or("-")).unwrap();
            stage = s;
        }
        write_gate(&mut out, &op.gate);
        out.push('\n');
    }
    out
}

fn write_gate(out: &mut String, g: &Gate) {
    let name = g.name();
    match g {
        Gate::X { target } | Gate::H { target } => write!(out, "{name} {target}"),
        Gate::Ry { target, angle } | Gate::Phase { target, angle } => write!(out, "{name} {target} {angle:?}"),
        Gate::Cnot { control, target } => write!(out, "{name} {control} {target}"),
        Gate::Toffoli { controls, target } => write!(out, "{name} {} {} {target}", controls[0], controls[1]),
        Gate::CRy { control, target, angle } => write!(out, "{name} {control} {target} {angle:?}"),
        Gate::CCRy { controls, target, angle } => {
            write!(out, "{name} {} {} {target} {angle:?}", controls[0], controls[1])
        }
        Gate::Rbs { first, second, angle } => write!(out, "{name} {first} {second} {angle:?}"),
        Gate::CRbs { control, first, second, angle } => write!(out, "{name} {control} {first} {second} {angle:?}"),
        Gate::Mcx { controls, target } => {
            write!(out, "{name} {}", controls.len()).unwrap();
            for c in controls {
                write!(out, " {c}").unwrap();
            }
            write!(out, " {target}")
        }
        Gate::Hwc { controls, target, weight } => {
            write!(out, "{name} {weight} {}", controls.len()).unwrap();
            for c in controls {
                write!(out, " {c}").unwrap();
            }
            write!(out, " {target}")
        }
    }
    .unwrap();
}

struct Tokens<'a> {
    line: usize,
    iter: std::str::SplitWhitespace<'a>,
}

impl<'a> Tokens<'a> {
    fn err(&self, token: &str, msg: &str) -> Error {
        Error::Parse { line: self.line, token: token.to_string(), msg: msg.to_string() }
    }

    fn next(&mut self) -> Result<&'a str> {
        let line = self.line;
        self.iter
            .next()
            .ok_or_else(|| Error::Parse { line, token: String::new(), msg: "missing operand".into() })
    }

    fn qubit(&mut self) -> Result<usize> {
        let t = self.next()?;
        t.parse().map_err(|_| self.err(t, "expected a qubit index"))
    }

    fn count(&mut self) -> Result<usize> {
        let t = self.next()?;
        t.parse().map_err(|_| self.err(t, "expected a non-negative integer"))
    }

    fn angle(&mut self) -> Result<f64> {
        let t = self.next()?;
        let a: f64 = t.parse().map_err(|_| self.err(t, "expected an angle"))?;
        if !a.is_finite() {
            return Err(self.err(t, "angle must be finite"));
        }
        Ok(a)
    }

    fn finish(&mut self) -> Result<()> {
        match self.iter.next() {
            Some(t) => Err(self.err(t, "unexpected trailing token")),
            None => Ok(()),
        }
    }
}

/// Parses the text format.
pub fn parse(text: &str) -> Result<Circuit> {
    let mut circuit: Option<Circuit> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let mut tk = Tokens { line, iter: body.split_whitespace() };
        let head = tk.next()?;
        let Some(c) = circuit.as_mut() else {
            if head != "qubits" {
                return Err(tk.err(head, "expected `qubits N` header"));
            }
            let n = tk.count()?;
            tk.finish()?;
            circuit = Some(Circuit::new(n));
            continue;
        };
        if head == "stage" {
            let name = tk.next()?;
            tk.finish()?;
            if name == "-" {
                c.clear_stage();
            } else {
                c.set_stage(name);
            }
            continue;
        }
        let gate = match head {
            "x" => Gate::X { target: tk.qubit()? },
            "h" => Gate::H { target: tk.qubit()? },
            "ry" => Gate::Ry { target: tk.qubit()?, angle: tk.angle()? },
            "p" => Gate::Phase { target: tk.qubit()?, angle: tk.angle()? },
            "cnot" => Gate::Cnot { control: tk.qubit()?, target: tk.qubit()? },
            "ccx" => Gate::Toffoli { controls: [tk.qubit()?, tk.qubit()?], target: tk.qubit()? },
            "cry" => Gate::CRy { control: tk.qubit()?, target: tk.qubit()?, angle: tk.angle()? },
            "ccry" => Gate::CCRy { controls: [tk.qubit()?, tk.qubit()?], target: tk.qubit()?, angle: tk.angle()? },
            "rbs" => Gate::Rbs { first: tk.qubit()?, second: tk.qubit()?, angle: tk.angle()? },
            "crbs" => Gate::CRbs { control: tk.qubit()?, first: tk.qubit()?, second: tk.qubit()?, angle: tk.angle()? },
            "mcx" => {
                let k = tk.count()?;
                let controls = (0..k).map(|_| tk.qubit()).collect::<Result<Vec<_>>>()?;
                Gate::Mcx { controls, target: tk.qubit()? }
            }
            "hwc" => {
                let weight = tk.count()?;
                let k = tk.count()?;
                let controls = (0..k).map(|_| tk.qubit()).collect::<Result<Vec<_>>>()?;
                Gate::Hwc { controls, target: tk.qubit()?, weight }
            }
            other => return Err(tk.err(other, "unknown gate")),
        };
        tk.finish()?;
        c.try_push(gate).map_err(|e| Error::Parse { line, token: head.to_string(), msg: e.to_string() })?;
    }
    circuit.ok_or(Error::Parse { line: 0, token: String::new(), msg: "empty input".into() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn ry_angle_prints_in_full() {
        let mut c = Circuit::new(4);
        c.push(Gate::Ry { target: 3, angle: PI / 2.0 });
        let text = emit(&c);
        assert!(text.contains("ry 3 1.5707963267948966"), "{text}");
        assert_eq!(parse(&text).unwrap(), c);
    }

    #[test]
    fn every_gate_kind_round_trips() {
        let mut c = Circuit::new(6);
        c.set_stage("s1");
        c.push(Gate::X { target: 0 });
        c.push(Gate::H { target: 1 });
        c.push(Gate::Ry { target: 2, angle: -1e-300 });
        c.push(Gate::Phase { target: 2, angle: 0.1 + 0.2 });
        c.clear_stage();
        c.push(Gate::Cnot { control: 0, target: 1 });
        c.push(Gate::Toffoli { controls: [0, 1], target: 2 });
        c.push(Gate::CRy { control: 3, target: 4, angle: 1.0 / 3.0 });
        c.push(Gate::CCRy { controls: [3, 4], target: 5, angle: 2.5 });
        c.set_stage("s2");
        c.push(Gate::Rbs { first: 0, second: 5, angle: 0.7 });
        c.push(Gate::CRbs { control: 1, first: 0, second: 5, angle: -0.7 });
        c.push(Gate::Mcx { controls: vec![0, 1, 2, 3], target: 5 });
        c.push(Gate::Hwc { controls: vec![0, 1, 2], target: 4, weight: 2 });
        let back = parse(&emit(&c)).unwrap();
        assert_eq!(back, c);
        let tags: Vec<_> = back.ops().iter().map(|o| o.stage.as_deref().map(str::to_string)).collect();
        let orig: Vec<_> = c.ops().iter().map(|o| o.stage.as_deref().map(str::to_string)).collect();
        assert_eq!(tags, orig);
    }

    #[test]
    fn bad_input_reports_line() {
        let err = parse("qubits 2\ncnot 0 1\nfoo 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
        assert!(matches!(parse("cnot 0 1"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse("qubits 2\ncnot 0 5\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse("qubits 2\nry 0 nan\n"), Err(Error::Parse { line: 2, .. })));
    }
}

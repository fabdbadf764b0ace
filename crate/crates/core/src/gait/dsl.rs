//! Text forms of a gait: the brace DSL `{1,4}<{2,3}` and a JSON config.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::{Gait, GaitParams};

/// JSON gait configuration, e.g.
/// `{"n":4,"gait":[[1,4],[2,3]],"tau_f":1.0,"tau_g":3.0,"tau_delta":2.0}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GaitConfig {
    pub n: usize,
    pub gait: Vec<Vec<usize>>,
    pub tau_f: f64,
    pub tau_g: f64,
    pub tau_delta: f64,
}

impl GaitConfig {
    pub fn new(gait: &Gait, params: &GaitParams<f64>) -> Self {
        GaitConfig {
            n: gait.n(),
            gait: gait.groups().to_vec(),
            tau_f: params.tau_f,
            tau_g: params.tau_g,
            tau_delta: params.tau_delta,
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            pos: json_offset(text, e.line(), e.column()),
            msg: e.to_string(),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain struct serializes")
    }

    /// Validates the partition.
    pub fn into_parts(self) -> Result<(Gait, GaitParams<f64>)> {
        let gait = Gait::new(self.n, self.gait)?;
        Ok((gait, GaitParams::new(self.tau_f, self.tau_g, self.tau_delta)))
    }
}

fn json_offset(text: &str, line: usize, column: usize) -> usize {
    let line_start: usize = text.split_inclusive('\n').take(line.saturating_sub(1)).map(str::len).sum();
    line_start + column.saturating_sub(1)
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Cursor<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn error<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        match self.peek() {
            Some(x) if x == c => {
                self.pos += 1;
                Ok(())
            }
            Some(x) => self.error(format!("expected '{}', found '{}'", c as char, x as char)),
            None => self.error(format!("expected '{}', found end of input", c as char)),
        }
    }

    fn number(&mut self) -> Result<usize> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.error("expected a leg index");
        }
        let digits = std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii digits");
        digits.parse().map_err(|_| Error::Parse {
            pos: start,
            msg: format!("leg index {digits} too large"),
        })
    }

    fn group(&mut self) -> Result<Vec<usize>> {
        self.expect(b'{')?;
        let mut legs = Vec::new();
        if self.peek() == Some(b'}') {
            self.pos += 1;
            return Ok(legs);
        }
        loop {
            legs.push(self.number()?);
            match self.peek() {
                Some(b',') => self.pos += 1,
                Some(b'}') => {
                    self.pos += 1;
                    return Ok(legs);
                }
                _ => return self.error("expected ',' or '}'"),
            }
        }
    }
}

/// Parses `{a,b}<{c}<…`; whitespace is ignored and `n` is the number of listed indices.
pub fn parse_gait_dsl(text: &str) -> Result<Gait> {
    let mut cur = Cursor {
        bytes: text.as_bytes(),
        pos: 0,
    };
    let mut groups = vec![cur.group()?];
    while let Some(c) = cur.peek() {
        if c != b'<' {
            return cur.error(format!("expected '<', found '{}'", c as char));
        }
        cur.pos += 1;
        groups.push(cur.group()?);
    }
    Gait::from_groups(groups)
}

/// Accepts either a JSON config or a DSL string; a DSL string carries no
/// timings, so `fallback` must supply them.
pub fn parse_gait_spec(text: &str, fallback: Option<GaitParams<f64>>) -> Result<(Gait, GaitParams<f64>)> {
    let trimmed = text.trim_start();
    let (gait, params) = if trimmed.starts_with('{') && trimmed[1..].trim_start().starts_with('"') {
        GaitConfig::from_json(text)?.into_parts()?
    } else {
        let gait = parse_gait_dsl(text)?;
        let params = fallback.ok_or_else(|| Error::Parse {
            pos: text.len(),
            msg: "gait DSL given without tau_f, tau_g and tau_delta".into(),
        })?;
        (gait, params)
    };
    for w in params.warnings(gait.m()) {
        log::warn!("gait {gait}: {w:?}");
    }
    Ok((gait, params))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gait::all_gaits;
    use proptest::prelude::*;

    #[test]
    fn dsl_examples() {
        let trot = parse_gait_dsl("{1,4}<{2,3}").unwrap();
        assert_eq!(trot, Gait::new(4, vec![vec![1, 4], vec![2, 3]]).unwrap());
        let hexapod = parse_gait_dsl(" {1} < {2}<{3}<{4}<{5}<{6} ").unwrap();
        assert_eq!((hexapod.n(), hexapod.m()), (6, 6));
        assert!(matches!(parse_gait_dsl("{1,4}<{2,4}"), Err(Error::NotPartition { .. })));
        assert!(matches!(parse_gait_dsl("{1}<{}<{2}"), Err(Error::NotPartition { .. })));
    }

    #[test]
    fn dsl_errors_carry_position() {
        assert_eq!(
            parse_gait_dsl("{1,4}<{2,x}"),
            Err(Error::Parse {
                pos: 9,
                msg: "expected a leg index".into()
            })
        );
        assert!(matches!(parse_gait_dsl("{1,2} {3}"), Err(Error::Parse { pos: 6, .. })));
        assert!(matches!(parse_gait_dsl("{1,2"), Err(Error::Parse { pos: 4, .. })));
        assert!(matches!(parse_gait_dsl(""), Err(Error::Parse { pos: 0, .. })));
    }

    #[test]
    fn json_config() {
        let text = r#"{"n":4,"gait":[[1,4],[2,3]],"tau_f":1.0,"tau_g":3.0,"tau_delta":2.0}"#;
        let (gait, params) = parse_gait_spec(text, None).unwrap();
        assert_eq!(gait.to_string(), "{1,4}<{2,3}");
        assert_eq!(params, GaitParams::new(1.0, 3.0, 2.0));
        assert_eq!(GaitConfig::new(&gait, &params).to_json(), text);
        let bad = r#"{"n":4,"gait":[[1,4],[2,4]],"tau_f":1.0,"tau_g":3.0,"tau_delta":2.0}"#;
        assert!(matches!(parse_gait_spec(bad, None), Err(Error::NotPartition { .. })));
        assert!(matches!(parse_gait_spec("{\"n\":", None), Err(Error::Parse { .. })));
    }

    #[test]
    fn dsl_needs_params() {
        assert!(matches!(parse_gait_spec("{1}<{2}", None), Err(Error::Parse { .. })));
        let p = GaitParams::new(1.0, 3.0, 2.0);
        assert_eq!(parse_gait_spec("{1}<{2}", Some(p)).unwrap().0, Gait::wave(2));
    }

    proptest! {
        #[test]
        fn display_then_parse_is_identity(n in 1usize..=5, pick in any::<prop::sample::Index>(), shuffle in any::<u64>()) {
            let gaits = all_gaits(n);
            let mut gait = gaits[pick.index(gaits.len())].clone();
            // scramble in-group order so non-canonical gaits are covered too
            if shuffle % 2 == 1 {
                let mut groups = gait.groups().to_vec();
                for g in &mut groups {
                    g.reverse();
                }
                gait = Gait::new(n, groups).unwrap();
            }
            prop_assert_eq!(parse_gait_dsl(&gait.to_string()).unwrap(), gait.clone());
            let params = GaitParams::new(1.5, 2.0, (shuffle % 7) as f64 - 1.0);
            let json = GaitConfig::new(&gait, &params).to_json();
            prop_assert_eq!(parse_gait_spec(&json, None).unwrap(), (gait, params));
        }
    }
}

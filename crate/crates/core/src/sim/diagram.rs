use std::fmt::Write;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

use super::schedule::LegSchedule;

const TICK_EVERY: usize = 10;

/// ASCII Hildebrand diagram: one row per leg, cells of width `quantum`
/// sampled at their midpoint, `#` for stance and `.` for swing. A footer marks
/// every tenth column with its start time.
pub fn render_diagram<T: Scalar>(schedule: &LegSchedule<T>, quantum: f64) -> Result<String> {
    if !(quantum > 0.0 && quantum.is_finite()) {
        return Err(Error::BadQuantum);
    }
    let mut out = String::new();
    let Some((lo, hi)) = schedule.span() else {
        return Ok(out);
    };
    let (lo, hi) = (to_f64(lo), to_f64(hi));
    let cells = ((hi - lo) / quantum).round() as usize;
    let label_width = format!("leg {}", schedule.legs.len()).len();

    for timeline in &schedule.legs {
        let mut row = String::with_capacity(cells);
        let mut phases = timeline.phases.iter().peekable();
        for c in 0..cells {
            let mid = lo + (c as f64 + 0.5) * quantum;
            while phases.next_if(|p| to_f64(p.swing.end) <= mid).is_some() {}
            let cell = match phases.peek() {
                Some(p) if to_f64(p.stance.start) <= mid && mid < to_f64(p.stance.end) => '#',
                Some(p) if to_f64(p.swing.start) <= mid => '.',
                _ => ' ',
            };
            row.push(cell);
        }
        let label = format!("leg {}", timeline.leg);
        writeln!(out, "{label:>label_width$} |{}", row.trim_end()).expect("string write");
    }

    let mut axis = String::new();
    let mut stamps = String::new();
    for c in 0..=cells {
        axis.push(if c % TICK_EVERY == 0 { '+' } else { '-' });
        if c % TICK_EVERY == 0 && stamps.len() <= c {
            stamps.extend(std::iter::repeat_n(' ', c - stamps.len()));
            write!(stamps, "{}", lo + c as f64 * quantum).expect("string write");
            stamps.push(' ');
        }
    }
    writeln!(out, "{:label_width$} {}", "", axis).expect("string write");
    writeln!(out, "{:label_width$} {}", "", stamps.trim_end()).expect("string write");
    Ok(out)
}

fn to_f64<T: Scalar>(x: T) -> f64 {
    x.to_f64().expect("finite event time")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gait::{closed_form_eigenpair, Gait, GaitParams};
    use crate::sim::{extract_schedule, simulate, EventState, Segment, SimulationPlan};

    fn schedule(gait: &Gait, steps: usize) -> LegSchedule<f64> {
        let params = GaitParams::new(1.0, 3.0, 2.0);
        let v = closed_form_eigenpair(gait, &params).unwrap().1;
        let plan = SimulationPlan {
            segments: vec![Segment {
                gait: gait.clone(),
                params,
                steps,
            }],
            disturbances: vec![],
        };
        let traj = simulate(&plan, &EventState::from_column(0, &v).unwrap()).unwrap();
        extract_schedule(&traj.states).unwrap()
    }

    fn rows(text: &str, legs: usize) -> Vec<String> {
        text.lines().take(legs).map(|l| l.split_once('|').unwrap().1.to_string()).collect()
    }

    #[test]
    fn trot_diagonal_pairs_align() {
        let trot = Gait::new(4, vec![vec![1, 4], vec![2, 3]]).unwrap();
        let text = render_diagram(&schedule(&trot, 3), 0.25).unwrap();
        let r = rows(&text, 4);
        assert_eq!(r[0], r[3]);
        assert_eq!(r[1], r[2]);
        assert_ne!(r[0], r[1]);
        // anti-phase: whenever leg 1 swings, leg 2 stands
        for (a, b) in r[0].chars().zip(r[1].chars()) {
            assert!(!(a == '.' && b == '.'));
        }
    }

    #[test]
    fn stance_cells_per_period() {
        let text = render_diagram(&schedule(&Gait::wave(2), 4), 0.25).unwrap();
        let r = rows(&text, 2);
        // λ = 6, τ_f = 1: 20 stance cells and 4 swing cells per period
        assert_eq!(r[0].chars().filter(|&c| c == '.').count(), 16);
        assert!(r[0].contains(&format!(".{}.", "#".repeat(20))));
    }

    #[test]
    fn biped_overlap() {
        let text = render_diagram(&schedule(&Gait::wave(2), 3), 0.5).unwrap();
        let r = rows(&text, 2);
        let both = r[0].chars().zip(r[1].chars()).filter(|&(a, b)| a == '#' && b == '#').count();
        // τΔ = 2 per step, four cells of width 0.5 at least
        assert!(both >= 4);
    }

    #[test]
    fn bad_quantum() {
        let s = schedule(&Gait::wave(2), 1);
        assert_eq!(render_diagram(&s, 0.0), Err(Error::BadQuantum));
        assert_eq!(render_diagram(&s, -1.0), Err(Error::BadQuantum));
        assert_eq!(render_diagram(&s, f64::NAN), Err(Error::BadQuantum));
    }

    #[test]
    fn footer_has_timestamps() {
        let text = render_diagram(&schedule(&Gait::wave(2), 2), 0.25).unwrap();
        let last = text.lines().last().unwrap();
        // leg 1 touches down first, at τ_f = 1
        assert!(last.trim_start().starts_with("1 "));
        assert!(last.contains(" 3.5"));
    }
}

//! Discrete-event trajectories of the gait systems, their leg schedules and
//! ASCII Hildebrand diagrams.

mod diagram;
mod engine;
mod schedule;
mod state;

pub use diagram::render_diagram;
pub use engine::{
    detect_steady_state, offsets_from, simulate, AppliedDisturbance, Disturbance, Segment, SegmentSpan,
    SimulationPlan, Trajectory,
};
pub use schedule::{
    extract_schedule, verify_schedule, Interval, LegSchedule, LegTimeline, ScheduleReport, StepPhases, Violation,
    ViolationKind,
};
pub use state::{step, EventState};

//! Discrete-event simulator for a software-defined sensor network.
//!
//! The crate is organized around a single deterministic event timeline:
//! [`engine::Engine`] owns the network state (nodes, capacity-limited FIFO
//! links, switch flow tables) and a central [`control::Controller`] that
//! installs flows on table misses. Traffic sources and ping probers are
//! registered up front; `run_until` then drives everything in (time,
//! sequence) order, so identical seeds and configs replay identical traces.

pub mod control;
pub mod engine;
pub mod link;
pub mod packet;
pub mod seeds;
pub mod time;
pub mod topology;
pub mod traffic;

pub use control::{Controller, FlowEntry, FlowStatsRecord, PacketInOutcome};
pub use engine::{Engine, EngineState, PingConfig, ProbeOutcome, RttSeries};
pub use link::{EnqueueOutcome, LinkCounters};
pub use packet::{FlowId, FlowKey, Mac, Packet, PacketKind};
pub use time::SimTime;
pub use topology::{LinkParams, NodeId, NodeRole, Topology, TopologyError, TopologySpec};
pub use traffic::{AttackScenario, FlowSpec, PacketEvent, PayloadClass, SpeedClass, TrafficProfile};

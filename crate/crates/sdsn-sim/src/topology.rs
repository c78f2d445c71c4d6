//! Network topology: nodes, links, addressing, and static shortest-path routes.

use std::collections::BTreeMap;
use std::fmt;
use std::net::Ipv4Addr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::packet::Mac;

/// Index of a node inside one topology. Ordering is the tie-break order
/// used by routing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(pub u32);

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NodeRole {
    Host,
    Sensor,
    Switch,
    Controller,
}

/// Per-direction link parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LinkParams {
    /// One-way propagation delay in microseconds.
    pub propagation_us: u64,
    /// Service rate in packets per second. Bounded to 1..=1_000_000 so every
    /// hop costs at least one microsecond of service time.
    pub capacity_pps: u64,
    /// Maximum number of packets waiting or in service; arrivals beyond this
    /// are dropped.
    pub queue_capacity: u32,
}

impl LinkParams {
    pub fn new(capacity_pps: u64, propagation_us: u64, queue_capacity: u32) -> Self {
        LinkParams {
            propagation_us,
            capacity_pps,
            queue_capacity,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NodeSpec {
    pub name: String,
    pub role: NodeRole,
    /// Optional explicit address; assigned from the node index when absent.
    pub ip: Option<Ipv4Addr>,
    pub mac: Option<Mac>,
}

impl NodeSpec {
    pub fn new(name: impl Into<String>, role: NodeRole) -> Self {
        NodeSpec {
            name: name.into(),
            role,
            ip: None,
            mac: None,
        }
    }

    pub fn with_ip(mut self, ip: Ipv4Addr) -> Self {
        self.ip = Some(ip);
        self
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LinkSpec {
    pub a: String,
    pub b: String,
    pub params: LinkParams,
    /// Control-channel links carry controller traffic only and are excluded
    /// from data-plane routing.
    #[serde(default)]
    pub control: bool,
}

/// Declarative description of a topology, as read from a scenario config.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TopologySpec {
    pub nodes: Vec<NodeSpec>,
    pub links: Vec<LinkSpec>,
}

#[derive(Debug, Error, PartialEq)]
pub enum TopologyError {
    #[error("duplicate node name {0}")]
    DuplicateNodeName(String),
    #[error("link references unknown node {0}")]
    UnknownNode(String),
    #[error("duplicate address {0}")]
    DuplicateAddress(String),
    #[error("graph is disconnected: node {0} is unreachable")]
    Disconnected(String),
    #[error("switch {0} has no control channel to the controller")]
    MissingControllerLink(String),
    #[error("topology needs exactly one controller, found {0}")]
    ControllerCount(usize),
    #[error("topology needs at least {expected} {role}, found {found}")]
    TooFew {
        role: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("invalid link {a}-{b}: {reason}")]
    InvalidLink { a: String, b: String, reason: String },
    #[error("scaling preset node count {0} outside supported range 100..=1000")]
    NodeCountOutOfRange(usize),
}

#[derive(Debug, Clone)]
pub struct Node {
    pub id: NodeId,
    pub name: String,
    pub role: NodeRole,
    pub ip: Ipv4Addr,
    pub mac: Mac,
}

#[derive(Debug, Clone)]
pub struct Link {
    pub a: NodeId,
    pub b: NodeId,
    pub params: LinkParams,
    pub control: bool,
}

/// A validated topology with precomputed next-hop routing over data links.
///
/// Routes are shortest paths by hop count; among equal-length paths the
/// neighbor with the lowest `NodeId` wins, so forwarding is deterministic.
#[derive(Debug, Clone)]
pub struct Topology {
    nodes: Vec<Node>,
    links: Vec<Link>,
    by_name: BTreeMap<String, NodeId>,
    by_ip: BTreeMap<Ipv4Addr, NodeId>,
    by_mac: BTreeMap<Mac, NodeId>,
    /// next_hop[dst][at] = neighbor to forward to, or None at dst itself.
    next_hop: Vec<Vec<Option<NodeId>>>,
    data_neighbors: Vec<Vec<NodeId>>,
}

/// Validates a [`TopologySpec`] and builds routing tables.
pub fn build_topology(spec: &TopologySpec) -> Result<Topology, TopologyError> {
    let mut by_name = BTreeMap::new();
    let mut nodes = Vec::with_capacity(spec.nodes.len());
    for (idx, ns) in spec.nodes.iter().enumerate() {
        let id = NodeId(idx as u32);
        if by_name.insert(ns.name.clone(), id).is_some() {
            return Err(TopologyError::DuplicateNodeName(ns.name.clone()));
        }
        let ip = ns
            .ip
            .unwrap_or_else(|| default_ip(ns.role, idx as u32));
        let mac = ns.mac.unwrap_or_else(|| default_mac(idx as u32));
        nodes.push(Node {
            id,
            name: ns.name.clone(),
            role: ns.role,
            ip,
            mac,
        });
    }

    let mut by_ip = BTreeMap::new();
    let mut by_mac = BTreeMap::new();
    for n in &nodes {
        if by_ip.insert(n.ip, n.id).is_some() {
            return Err(TopologyError::DuplicateAddress(n.ip.to_string()));
        }
        if by_mac.insert(n.mac, n.id).is_some() {
            return Err(TopologyError::DuplicateAddress(n.mac.to_string()));
        }
    }

    let controllers: Vec<NodeId> = nodes
        .iter()
        .filter(|n| n.role == NodeRole::Controller)
        .map(|n| n.id)
        .collect();
    if controllers.len() != 1 {
        return Err(TopologyError::ControllerCount(controllers.len()));
    }
    let hosts = nodes.iter().filter(|n| n.role == NodeRole::Host).count();
    if hosts < 2 {
        return Err(TopologyError::TooFew {
            role: "hosts",
            expected: 2,
            found: hosts,
        });
    }
    let switches = nodes.iter().filter(|n| n.role == NodeRole::Switch).count();
    if switches < 1 {
        return Err(TopologyError::TooFew {
            role: "switches",
            expected: 1,
            found: switches,
        });
    }

    let mut links = Vec::with_capacity(spec.links.len());
    for ls in &spec.links {
        let a = *by_name
            .get(&ls.a)
            .ok_or_else(|| TopologyError::UnknownNode(ls.a.clone()))?;
        let b = *by_name
            .get(&ls.b)
            .ok_or_else(|| TopologyError::UnknownNode(ls.b.clone()))?;
        if a == b {
            return Err(TopologyError::InvalidLink {
                a: ls.a.clone(),
                b: ls.b.clone(),
                reason: "self-loop".into(),
            });
        }
        if ls.params.capacity_pps == 0 || ls.params.capacity_pps > 1_000_000 {
            return Err(TopologyError::InvalidLink {
                a: ls.a.clone(),
                b: ls.b.clone(),
                reason: format!("capacity {} outside 1..=1000000 pps", ls.params.capacity_pps),
            });
        }
        if ls.params.queue_capacity == 0 {
            return Err(TopologyError::InvalidLink {
                a: ls.a.clone(),
                b: ls.b.clone(),
                reason: "queue capacity must be >= 1".into(),
            });
        }
        links.push(Link {
            a,
            b,
            params: ls.params,
            control: ls.control,
        });
    }

    // Connectivity over all links (control links count: the controller must
    // be attached to the graph too).
    let n = nodes.len();
    let mut adj_all: Vec<Vec<NodeId>> = vec![Vec::new(); n];
    let mut data_neighbors: Vec<Vec<NodeId>> = vec![Vec::new(); n];
    for l in &links {
        adj_all[l.a.0 as usize].push(l.b);
        adj_all[l.b.0 as usize].push(l.a);
        if !l.control {
            data_neighbors[l.a.0 as usize].push(l.b);
            data_neighbors[l.b.0 as usize].push(l.a);
        }
    }
    for nb in adj_all.iter_mut().chain(data_neighbors.iter_mut()) {
        nb.sort_unstable();
        nb.dedup();
    }
    let mut seen = vec![false; n];
    let mut stack = vec![NodeId(0)];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &w in &adj_all[v.0 as usize] {
            if !seen[w.0 as usize] {
                seen[w.0 as usize] = true;
                stack.push(w);
            }
        }
    }
    if let Some(unreached) = seen.iter().position(|s| !s) {
        return Err(TopologyError::Disconnected(nodes[unreached].name.clone()));
    }

    let controller = controllers[0];
    for node in &nodes {
        if node.role == NodeRole::Switch {
            let has_control = links.iter().any(|l| {
                l.control
                    && ((l.a == node.id && l.b == controller)
                        || (l.b == node.id && l.a == controller))
            });
            if !has_control {
                return Err(TopologyError::MissingControllerLink(node.name.clone()));
            }
        }
    }

    // BFS per destination over data links, skipping the controller as a
    // transit node. next_hop[dst][at] points one hop toward dst.
    let mut next_hop = vec![vec![None; n]; n];
    for dst in 0..n {
        if nodes[dst].role == NodeRole::Controller {
            continue;
        }
        let mut dist = vec![u32::MAX; n];
        dist[dst] = 0;
        let mut queue = std::collections::VecDeque::from([NodeId(dst as u32)]);
        while let Some(v) = queue.pop_front() {
            for &w in &data_neighbors[v.0 as usize] {
                if nodes[w.0 as usize].role == NodeRole::Controller {
                    continue;
                }
                if dist[w.0 as usize] == u32::MAX {
                    dist[w.0 as usize] = dist[v.0 as usize] + 1;
                    queue.push_back(w);
                }
            }
        }
        for at in 0..n {
            if at == dst || dist[at] == u32::MAX {
                continue;
            }
            // Lowest-id neighbor strictly closer to dst.
            next_hop[dst][at] = data_neighbors[at]
                .iter()
                .copied()
                .find(|w| dist[w.0 as usize] == dist[at] - 1);
        }
    }

    Ok(Topology {
        nodes,
        links,
        by_name,
        by_ip,
        by_mac,
        next_hop,
        data_neighbors,
    })
}

impl Topology {
    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn links(&self) -> &[Link] {
        &self.links
    }

    pub fn node(&self, id: NodeId) -> &Node {
        &self.nodes[id.0 as usize]
    }

    pub fn node_by_name(&self, name: &str) -> Option<&Node> {
        self.by_name.get(name).map(|id| self.node(*id))
    }

    pub fn node_by_ip(&self, ip: Ipv4Addr) -> Option<&Node> {
        self.by_ip.get(&ip).map(|id| self.node(*id))
    }

    pub fn node_by_mac(&self, mac: Mac) -> Option<&Node> {
        self.by_mac.get(&mac).map(|id| self.node(*id))
    }

    /// Next data-plane hop from `at` toward `dst`, if a route exists.
    pub fn next_hop(&self, at: NodeId, dst: NodeId) -> Option<NodeId> {
        self.next_hop[dst.0 as usize][at.0 as usize]
    }

    pub fn data_neighbors(&self, at: NodeId) -> &[NodeId] {
        &self.data_neighbors[at.0 as usize]
    }

    pub fn controller(&self) -> NodeId {
        self.nodes
            .iter()
            .find(|n| n.role == NodeRole::Controller)
            .map(|n| n.id)
            .expect("validated topology has a controller")
    }

    pub fn switches(&self) -> impl Iterator<Item = &Node> {
        self.nodes.iter().filter(|n| n.role == NodeRole::Switch)
    }
}

fn default_ip(role: NodeRole, idx: u32) -> Ipv4Addr {
    // Distinct /24s per role keep auto-assigned addresses collision-free.
    let subnet = match role {
        NodeRole::Host => 0,
        NodeRole::Sensor => 1,
        NodeRole::Switch => 2,
        NodeRole::Controller => 255,
    };
    Ipv4Addr::new(10, subnet, (idx >> 8) as u8, (idx & 0xff) as u8)
}

fn default_mac(idx: u32) -> Mac {
    Mac::new(0x0200_0000_0000 | (u64::from(idx) + 1))
}

/// Per-class link parameters used by the built-in presets.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct PresetLinkParams {
    pub host_sensor: LinkParams,
    pub sensor_switch: LinkParams,
    pub trunk: LinkParams,
    pub control: LinkParams,
}

impl Default for PresetLinkParams {
    fn default() -> Self {
        PresetLinkParams {
            host_sensor: LinkParams::new(5_000, 50, 20_000),
            sensor_switch: LinkParams::new(1_500, 50, 20_000),
            trunk: LinkParams::new(4_000, 100, 20_000),
            control: LinkParams::new(100_000, 10, 1_000),
        }
    }
}

/// Two-switch test topology: hosts h1-h3 behind sensors s1-s3 on sw1,
/// hosts h4-h6 behind sensors s4-s6 on sw2, and a controller c0 attached
/// to both switches. Hosts get 10.0.0.1..10.0.0.6.
pub fn test_preset(links: &PresetLinkParams) -> TopologySpec {
    let mut nodes = vec![NodeSpec::new("c0", NodeRole::Controller)];
    let mut link_specs = Vec::new();
    for sw in ["sw1", "sw2"] {
        nodes.push(NodeSpec::new(sw, NodeRole::Switch));
        link_specs.push(LinkSpec {
            a: "c0".into(),
            b: sw.into(),
            params: links.control,
            control: true,
        });
    }
    link_specs.push(LinkSpec {
        a: "sw1".into(),
        b: "sw2".into(),
        params: links.trunk,
        control: false,
    });
    for i in 1..=6u32 {
        let host = format!("h{i}");
        let sensor = format!("s{i}");
        let switch = if i <= 3 { "sw1" } else { "sw2" };
        nodes.push(
            NodeSpec::new(&host, NodeRole::Host).with_ip(Ipv4Addr::new(10, 0, 0, i as u8)),
        );
        nodes.push(NodeSpec::new(&sensor, NodeRole::Sensor));
        link_specs.push(LinkSpec {
            a: host.clone(),
            b: sensor.clone(),
            params: links.host_sensor,
            control: false,
        });
        link_specs.push(LinkSpec {
            a: sensor,
            b: switch.into(),
            params: links.sensor_switch,
            control: false,
        });
    }
    TopologySpec {
        nodes,
        links: link_specs,
    }
}

/// Scaling topology: `node_count` sensors spread round-robin over two
/// switches, plus a target host, a probe host, and the controller.
pub fn scaling_preset(
    node_count: usize,
    links: &PresetLinkParams,
) -> Result<TopologySpec, TopologyError> {
    if !(100..=1000).contains(&node_count) {
        return Err(TopologyError::NodeCountOutOfRange(node_count));
    }
    let mut spec = TopologySpec {
        nodes: vec![
            NodeSpec::new("c0", NodeRole::Controller),
            NodeSpec::new("sw1", NodeRole::Switch),
            NodeSpec::new("sw2", NodeRole::Switch),
            NodeSpec::new("h1", NodeRole::Host).with_ip(Ipv4Addr::new(10, 0, 0, 1)),
            NodeSpec::new("h2", NodeRole::Host).with_ip(Ipv4Addr::new(10, 0, 0, 2)),
        ],
        links: vec![
            LinkSpec {
                a: "c0".into(),
                b: "sw1".into(),
                params: links.control,
                control: true,
            },
            LinkSpec {
                a: "c0".into(),
                b: "sw2".into(),
                params: links.control,
                control: true,
            },
            LinkSpec {
                a: "sw1".into(),
                b: "sw2".into(),
                params: links.trunk,
                control: false,
            },
            LinkSpec {
                a: "h1".into(),
                b: "sw1".into(),
                params: links.sensor_switch,
                control: false,
            },
            LinkSpec {
                a: "h2".into(),
                b: "sw2".into(),
                params: links.sensor_switch,
                control: false,
            },
        ],
    };
    for i in 0..node_count {
        let name = format!("sn{}", i + 1);
        let switch = if i % 2 == 0 { "sw1" } else { "sw2" };
        spec.nodes.push(NodeSpec::new(&name, NodeRole::Sensor));
        spec.links.push(LinkSpec {
            a: name,
            b: switch.into(),
            params: links.sensor_switch,
            control: false,
        });
    }
    Ok(spec)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn test_preset_builds_with_expected_addresses() {
        let topo = build_topology(&test_preset(&PresetLinkParams::default())).unwrap();
        for i in 1..=6u8 {
            let host = topo.node_by_name(&format!("h{i}")).unwrap();
            assert_eq!(host.ip, Ipv4Addr::new(10, 0, 0, i));
            assert_eq!(host.role, NodeRole::Host);
        }
        // Target host of the default scenario.
        assert_eq!(
            topo.node_by_ip(Ipv4Addr::new(10, 0, 0, 1)).unwrap().name,
            "h1"
        );
        assert_eq!(topo.switches().count(), 2);
        assert_eq!(
            topo.nodes()
                .iter()
                .filter(|n| n.role == NodeRole::Sensor)
                .count(),
            6
        );
    }

    #[test]
    fn minimal_topology_is_valid() {
        let spec = TopologySpec {
            nodes: vec![
                NodeSpec::new("c0", NodeRole::Controller),
                NodeSpec::new("sw1", NodeRole::Switch),
                NodeSpec::new("a", NodeRole::Host),
                NodeSpec::new("b", NodeRole::Host),
            ],
            links: vec![
                LinkSpec {
                    a: "c0".into(),
                    b: "sw1".into(),
                    params: LinkParams::new(100_000, 10, 100),
                    control: true,
                },
                LinkSpec {
                    a: "a".into(),
                    b: "sw1".into(),
                    params: LinkParams::new(1_000, 100, 100),
                    control: false,
                },
                LinkSpec {
                    a: "b".into(),
                    b: "sw1".into(),
                    params: LinkParams::new(1_000, 100, 100),
                    control: false,
                },
            ],
        };
        let topo = build_topology(&spec).unwrap();
        assert_eq!(topo.nodes().len(), 4);
        let a = topo.node_by_name("a").unwrap().id;
        let b = topo.node_by_name("b").unwrap().id;
        let sw = topo.node_by_name("sw1").unwrap().id;
        assert_eq!(topo.next_hop(a, b), Some(sw));
        assert_eq!(topo.next_hop(sw, b), Some(b));
    }

    #[test]
    fn scaling_preset_attaches_requested_sensor_count() {
        let spec = scaling_preset(100, &PresetLinkParams::default()).unwrap();
        let topo = build_topology(&spec).unwrap();
        let sensors = topo
            .nodes()
            .iter()
            .filter(|n| n.role == NodeRole::Sensor)
            .count();
        assert_eq!(sensors, 100);
        assert_eq!(
            scaling_preset(99, &PresetLinkParams::default()).unwrap_err(),
            TopologyError::NodeCountOutOfRange(99)
        );
        assert_eq!(
            scaling_preset(1001, &PresetLinkParams::default()).unwrap_err(),
            TopologyError::NodeCountOutOfRange(1001)
        );
    }

    #[test]
    fn disconnected_graph_names_the_unreachable_node() {
        let mut spec = test_preset(&PresetLinkParams::default());
        spec.nodes.push(NodeSpec::new("island", NodeRole::Host));
        let err = build_topology(&spec).unwrap_err();
        assert_eq!(err, TopologyError::Disconnected("island".into()));
    }

    #[test]
    fn duplicate_address_is_rejected() {
        let mut spec = test_preset(&PresetLinkParams::default());
        spec.nodes.push(
            NodeSpec::new("clone", NodeRole::Host).with_ip(Ipv4Addr::new(10, 0, 0, 1)),
        );
        spec.links.push(LinkSpec {
            a: "clone".into(),
            b: "sw1".into(),
            params: LinkParams::new(1_000, 100, 100),
            control: false,
        });
        let err = build_topology(&spec).unwrap_err();
        assert_eq!(err, TopologyError::DuplicateAddress("10.0.0.1".into()));
    }

    #[test]
    fn switch_without_control_channel_is_rejected() {
        let mut spec = test_preset(&PresetLinkParams::default());
        spec.links
            .retain(|l| !(l.control && (l.a == "sw2" || l.b == "sw2")));
        let err = build_topology(&spec).unwrap_err();
        assert_eq!(err, TopologyError::MissingControllerLink("sw2".into()));
    }

    #[test]
    fn routes_prefer_lowest_id_on_ties() {
        // Diamond: a - {m1, m2} - b with equal hop counts; m1 has the lower id.
        let p = LinkParams::new(1_000, 100, 100);
        let spec = TopologySpec {
            nodes: vec![
                NodeSpec::new("c0", NodeRole::Controller),
                NodeSpec::new("m1", NodeRole::Switch),
                NodeSpec::new("m2", NodeRole::Switch),
                NodeSpec::new("a", NodeRole::Host),
                NodeSpec::new("b", NodeRole::Host),
            ],
            links: vec![
                LinkSpec {
                    a: "c0".into(),
                    b: "m1".into(),
                    params: p,
                    control: true,
                },
                LinkSpec {
                    a: "c0".into(),
                    b: "m2".into(),
                    params: p,
                    control: true,
                },
                LinkSpec {
                    a: "a".into(),
                    b: "m1".into(),
                    params: p,
                    control: false,
                },
                LinkSpec {
                    a: "a".into(),
                    b: "m2".into(),
                    params: p,
                    control: false,
                },
                LinkSpec {
                    a: "b".into(),
                    b: "m1".into(),
                    params: p,
                    control: false,
                },
                LinkSpec {
                    a: "b".into(),
                    b: "m2".into(),
                    params: p,
                    control: false,
                },
            ],
        };
        let topo = build_topology(&spec).unwrap();
        let a = topo.node_by_name("a").unwrap().id;
        let b = topo.node_by_name("b").unwrap().id;
        let m1 = topo.node_by_name("m1").unwrap().id;
        assert_eq!(topo.next_hop(a, b), Some(m1));
    }
}

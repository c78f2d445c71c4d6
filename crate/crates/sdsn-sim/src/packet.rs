//! Packets and the (eth_src, eth_dst) flow identity they are matched on.

use std::fmt;
use std::net::Ipv4Addr;

use crate::time::SimTime;

/// 48-bit MAC address stored in the low bits of a u64.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mac(u64);

impl Mac {
    pub fn new(raw: u64) -> Self {
        Mac(raw & 0x0000_ffff_ffff_ffff)
    }

    pub fn raw(self) -> u64 {
        self.0
    }
}

impl fmt::Display for Mac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b = self.0.to_be_bytes();
        write!(
            f,
            "{:02x}:{:02x}:{:02x}:{:02x}:{:02x}:{:02x}",
            b[2], b[3], b[4], b[5], b[6], b[7]
        )
    }
}

impl std::str::FromStr for Mac {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 6 {
            return Err(format!("malformed MAC address: {s}"));
        }
        let mut raw: u64 = 0;
        for p in parts {
            let byte = u8::from_str_radix(p, 16).map_err(|_| format!("malformed MAC address: {s}"))?;
            raw = (raw << 8) | u64::from(byte);
        }
        Ok(Mac(raw))
    }
}

/// Ground-truth tag identifying which generated flow a packet belongs to.
/// Stable for the lifetime of one flow; never reused within a scenario.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FlowId(pub u64);

/// Flow-table match key: source and destination MAC pair.
/// Matching is direction-sensitive; the reverse direction is its own key.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FlowKey {
    pub eth_src: Mac,
    pub eth_dst: Mac,
}

impl FlowKey {
    pub fn new(eth_src: Mac, eth_dst: Mac) -> Self {
        FlowKey { eth_src, eth_dst }
    }

    pub fn reversed(self) -> Self {
        FlowKey {
            eth_src: self.eth_dst,
            eth_dst: self.eth_src,
        }
    }
}

impl fmt::Display for FlowKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}->{}", self.eth_src, self.eth_dst)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PacketKind {
    UdpData,
    PingRequest { seq: u32 },
    PingReply { seq: u32, request_sent_at: SimTime },
    Control,
}

/// One simulated packet. Header fields are set by the emitting endpoint;
/// switches match on `(src_mac, dst_mac)` only.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Packet {
    pub src_mac: Mac,
    pub dst_mac: Mac,
    pub src_ip: Ipv4Addr,
    pub dst_ip: Ipv4Addr,
    pub payload_size: u32,
    pub kind: PacketKind,
    pub flow_id: FlowId,
    pub created_at: SimTime,
}

impl Packet {
    pub fn key(&self) -> FlowKey {
        FlowKey::new(self.src_mac, self.dst_mac)
    }
}

//! Networks, properties and their JSON configuration documents.
//!
//! A verification problem is a network (data plane or control plane) plus a
//! property. Each problem has an input width `n`: header bits on the data
//! plane, one bit per failable link on the control plane.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bits::{format_bits, Bits, MAX_BITS};
use crate::error::{Error, Result};

/// Dense 0-based router encoding, assigned in declaration order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RouterId(pub usize);

impl RouterId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for RouterId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "r{}", self.0)
    }
}

/// `ceil(log2(x))`, with `ceil_log2(0) == ceil_log2(1) == 0`.
pub fn ceil_log2(x: u64) -> u32 {
    if x <= 1 {
        0
    } else {
        64 - (x - 1).leading_zeros()
    }
}

/// Router name table shared by both network kinds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Routers {
    names: Vec<String>,
    index: HashMap<String, RouterId>,
}

impl Routers {
    pub fn new(names: Vec<String>) -> Result<Self> {
        if names.is_empty() {
            return Err(Error::InvalidNetwork("no routers declared".into()));
        }
        let mut index = HashMap::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            if index.insert(name.clone(), RouterId(i)).is_some() {
                return Err(Error::InvalidNetwork(format!("duplicate router `{name}`")));
            }
        }
        Ok(Self { names, index })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn id(&self, name: &str) -> Result<RouterId> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownRouter(name.to_string()))
    }

    pub fn name(&self, id: RouterId) -> &str {
        &self.names[id.0]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn ids(&self) -> impl Iterator<Item = RouterId> {
        (0..self.names.len()).map(RouterId)
    }
}

/// A match over `{0, 1, *}`, written highest bit first like [`Bits`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct WildcardPattern {
    width: u8,
    care: u64,
    value: u64,
}

impl WildcardPattern {
    pub fn any(width: usize) -> Self {
        Self {
            width: width as u8,
            care: 0,
            value: 0,
        }
    }

    pub fn width(&self) -> usize {
        self.width as usize
    }

    /// Mask of the non-`*` positions.
    pub fn care_mask(&self) -> u64 {
        self.care
    }

    /// Required bit values at the non-`*` positions.
    pub fn care_value(&self) -> u64 {
        self.value
    }

    pub fn matches(&self, header: Bits) -> Result<bool> {
        header.check_width(self.width())?;
        Ok(self.matches_value(header.value()))
    }

    pub fn matches_value(&self, header: u64) -> bool {
        header & self.care == self.value
    }
}

/// Checks a header against a wildcard pattern of the same width.
pub fn wildcard_match(pattern: &WildcardPattern, header: Bits) -> Result<bool> {
    pattern.matches(header)
}

impl FromStr for WildcardPattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.len() > MAX_BITS {
            return Err(Error::InvalidPattern(s.to_string()));
        }
        let (mut care, mut value) = (0u64, 0u64);
        for c in s.chars() {
            care <<= 1;
            value <<= 1;
            match c {
                '0' => care |= 1,
                '1' => {
                    care |= 1;
                    value |= 1;
                }
                '*' => {}
                _ => return Err(Error::InvalidPattern(s.to_string())),
            }
        }
        Ok(Self {
            width: s.len() as u8,
            care,
            value,
        })
    }
}

impl fmt::Display for WildcardPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in (0..self.width()).rev() {
            let c = if (self.care >> i) & 1 == 0 {
                '*'
            } else if (self.value >> i) & 1 == 1 {
                '1'
            } else {
                '0'
            };
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Per-bit header rewrite: keep (`.`), clear (`0`) or set (`1`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rewrite {
    width: u8,
    set: u64,
    clear: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BitAction {
    Keep,
    Clear,
    Set,
}

impl Rewrite {
    pub fn keep(width: usize) -> Self {
        Self {
            width: width as u8,
            set: 0,
            clear: 0,
        }
    }

    pub fn width(&self) -> usize {
        self.width as usize
    }

    pub fn is_identity(&self) -> bool {
        self.set == 0 && self.clear == 0
    }

    pub fn action(&self, bit: usize) -> BitAction {
        if (self.set >> bit) & 1 == 1 {
            BitAction::Set
        } else if (self.clear >> bit) & 1 == 1 {
            BitAction::Clear
        } else {
            BitAction::Keep
        }
    }

    pub fn apply(&self, header: u64) -> u64 {
        (header & !self.clear) | self.set
    }
}

impl FromStr for Rewrite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.len() > MAX_BITS {
            return Err(Error::InvalidPattern(s.to_string()));
        }
        let (mut set, mut clear) = (0u64, 0u64);
        for c in s.chars() {
            set <<= 1;
            clear <<= 1;
            match c {
                '.' => {}
                '0' => clear |= 1,
                '1' => set |= 1,
                _ => return Err(Error::InvalidPattern(s.to_string())),
            }
        }
        Ok(Self {
            width: s.len() as u8,
            set,
            clear,
        })
    }
}

impl fmt::Display for Rewrite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in (0..self.width()).rev() {
            let c = match self.action(i) {
                BitAction::Keep => '.',
                BitAction::Clear => '0',
                BitAction::Set => '1',
            };
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForwardingRule {
    pub router: RouterId,
    pub pattern: WildcardPattern,
    pub next_hop: RouterId,
    pub rewrite: Rewrite,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DataPlaneNetwork {
    header_width: usize,
    routers: Routers,
    rules: Vec<ForwardingRule>,
    by_router: Vec<Vec<usize>>,
    source: RouterId,
    destination: Option<RouterId>,
}

impl DataPlaneNetwork {
    pub fn new(
        header_width: usize,
        routers: Routers,
        rules: Vec<ForwardingRule>,
        source: RouterId,
        destination: Option<RouterId>,
    ) -> Result<Self> {
        if header_width == 0 || header_width > MAX_BITS {
            return Err(Error::InvalidNetwork(format!(
                "header_width must be in 1..={MAX_BITS}, got {header_width}"
            )));
        }
        let r = routers.len();
        let known = |id: RouterId| {
            if id.0 < r {
                Ok(())
            } else {
                Err(Error::InvalidNetwork(format!("router index {} out of range", id.0)))
            }
        };
        known(source)?;
        if let Some(d) = destination {
            known(d)?;
        }
        let mut by_router = vec![Vec::new(); r];
        for (i, rule) in rules.iter().enumerate() {
            known(rule.router)?;
            known(rule.next_hop)?;
            for w in [rule.pattern.width(), rule.rewrite.width()] {
                if w != header_width {
                    return Err(Error::WidthMismatch {
                        expected: header_width,
                        found: w,
                    });
                }
            }
            by_router[rule.router.0].push(i);
        }
        Ok(Self {
            header_width,
            routers,
            rules,
            by_router,
            source,
            destination,
        })
    }

    pub fn header_width(&self) -> usize {
        self.header_width
    }

    pub fn routers(&self) -> &Routers {
        &self.routers
    }

    pub fn rules(&self) -> &[ForwardingRule] {
        &self.rules
    }

    /// Rules installed at `router`, in declaration order.
    pub fn rules_at(&self, router: RouterId) -> impl Iterator<Item = &ForwardingRule> {
        self.by_router[router.0].iter().map(move |&i| &self.rules[i])
    }

    pub fn source(&self) -> RouterId {
        self.source
    }

    pub fn destination(&self) -> Option<RouterId> {
        self.destination
    }

    /// Width of a register holding a router encoding.
    pub fn location_bits(&self) -> usize {
        (ceil_log2(self.routers.len() as u64) as usize).max(1)
    }

    pub fn has_rewrites(&self) -> bool {
        self.rules.iter().any(|r| !r.rewrite.is_identity())
    }

    pub fn to_doc(&self) -> DataPlaneDoc {
        DataPlaneDoc {
            header_width: self.header_width,
            routers: self.routers.names().to_vec(),
            source: self.routers.name(self.source).to_string(),
            destination: self.destination.map(|d| self.routers.name(d).to_string()),
            rules: self
                .rules
                .iter()
                .map(|r| RuleDoc {
                    router: self.routers.name(r.router).to_string(),
                    pattern: r.pattern.to_string(),
                    next_hop: self.routers.name(r.next_hop).to_string(),
                    rewrite: Some(r.rewrite.to_string()),
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_doc()).expect("network documents serialize")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DataPlaneDoc {
    pub header_width: usize,
    pub routers: Vec<String>,
    pub source: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub destination: Option<String>,
    #[serde(default)]
    pub rules: Vec<RuleDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleDoc {
    pub router: String,
    #[serde(rename = "match")]
    pub pattern: String,
    pub next_hop: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rewrite: Option<String>,
}

impl TryFrom<DataPlaneDoc> for DataPlaneNetwork {
    type Error = Error;

    fn try_from(doc: DataPlaneDoc) -> Result<Self> {
        let routers = Routers::new(doc.routers)?;
        let source = routers.id(&doc.source)?;
        let destination = doc.destination.as_deref().map(|d| routers.id(d)).transpose()?;
        let width = doc.header_width;
        let rules = doc
            .rules
            .iter()
            .map(|r| {
                let pattern: WildcardPattern = r.pattern.parse()?;
                let rewrite = match &r.rewrite {
                    Some(s) => s.parse()?,
                    None => Rewrite::keep(width),
                };
                Ok(ForwardingRule {
                    router: routers.id(&r.router)?,
                    pattern,
                    next_hop: routers.id(&r.next_hop)?,
                    rewrite,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        DataPlaneNetwork::new(width, routers, rules, source, destination)
    }
}

pub fn parse_dataplane(text: &str) -> Result<DataPlaneNetwork> {
    let doc: DataPlaneDoc = serde_json::from_str(text)?;
    doc.try_into()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub a: RouterId,
    pub b: RouterId,
    pub weight: u64,
}

impl Edge {
    /// The endpoint opposite `v`, if `v` is an endpoint.
    pub fn other(&self, v: RouterId) -> Option<RouterId> {
        if self.a == v {
            Some(self.b)
        } else if self.b == v {
            Some(self.a)
        } else {
            None
        }
    }
}

/// Undirected weighted graph; edge `i` is governed by input bit `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ControlPlaneNetwork {
    routers: Routers,
    edges: Vec<Edge>,
}

impl ControlPlaneNetwork {
    pub fn new(routers: Routers, edges: Vec<Edge>) -> Result<Self> {
        if edges.len() > MAX_BITS {
            return Err(Error::ResourceLimit {
                what: "edge count",
                requested: edges.len(),
                limit: MAX_BITS,
            });
        }
        let mut seen = HashSet::new();
        for (i, e) in edges.iter().enumerate() {
            if e.a.0 >= routers.len() || e.b.0 >= routers.len() {
                return Err(Error::InvalidNetwork(format!("edge {i} names an unknown router")));
            }
            if e.a == e.b {
                return Err(Error::InvalidNetwork(format!("edge {i} is a self-loop")));
            }
            if e.weight == 0 {
                return Err(Error::InvalidNetwork(format!("edge {i} has zero weight")));
            }
            if !seen.insert((e.a.min(e.b), e.a.max(e.b))) {
                return Err(Error::InvalidNetwork(format!(
                    "edge {i} duplicates an existing link"
                )));
            }
        }
        Ok(Self { routers, edges })
    }

    pub fn routers(&self) -> &Routers {
        &self.routers
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn to_doc(&self) -> ControlPlaneDoc {
        ControlPlaneDoc {
            routers: self.routers.names().to_vec(),
            edges: self
                .edges
                .iter()
                .enumerate()
                .map(|(i, e)| EdgeDoc {
                    id: i,
                    a: self.routers.name(e.a).to_string(),
                    b: self.routers.name(e.b).to_string(),
                    weight: e.weight,
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_doc()).expect("network documents serialize")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ControlPlaneDoc {
    pub routers: Vec<String>,
    pub edges: Vec<EdgeDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeDoc {
    pub id: usize,
    pub a: String,
    pub b: String,
    pub weight: u64,
}

impl TryFrom<ControlPlaneDoc> for ControlPlaneNetwork {
    type Error = Error;

    fn try_from(doc: ControlPlaneDoc) -> Result<Self> {
        let routers = Routers::new(doc.routers)?;
        let n = doc.edges.len();
        let mut slots: Vec<Option<Edge>> = vec![None; n];
        for e in &doc.edges {
            if e.id >= n {
                return Err(Error::InvalidNetwork(format!(
                    "edge id {} outside 0..{n}",
                    e.id
                )));
            }
            if slots[e.id].is_some() {
                return Err(Error::InvalidNetwork(format!("duplicate edge id {}", e.id)));
            }
            slots[e.id] = Some(Edge {
                a: routers.id(&e.a)?,
                b: routers.id(&e.b)?,
                weight: e.weight,
            });
        }
        // n distinct ids below n fill every slot
        let edges = slots.into_iter().map(|e| e.expect("slot filled")).collect();
        ControlPlaneNetwork::new(routers, edges)
    }
}

pub fn parse_controlplane(text: &str) -> Result<ControlPlaneNetwork> {
    let doc: ControlPlaneDoc = serde_json::from_str(text)?;
    doc.try_into()
}

/// Property document; router references are by name.
///
/// `src` may be omitted on data-plane kinds (defaults to the network source)
/// and `dst` on `reach_within` (defaults to the network destination).
/// An absent `max_failures` disables the failure-count cutoff.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PropertyDoc {
    ReachWithin {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        src: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        dst: Option<String>,
        k: u32,
    },
    ExceedsHops {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        src: Option<String>,
        k: u32,
    },
    AvoidsWaypoint {
        src: String,
        dst: String,
        waypoint: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        max_failures: Option<u32>,
    },
    Disconnected {
        src: String,
        dst: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        max_failures: Option<u32>,
    },
}

/// The predicate the verifier marks. `hops` is the hop bound `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Property {
    ReachWithin {
        src: RouterId,
        dst: RouterId,
        hops: u32,
    },
    ExceedsHops {
        src: RouterId,
        hops: u32,
    },
    AvoidsWaypoint {
        src: RouterId,
        dst: RouterId,
        waypoint: RouterId,
        max_failures: Option<u32>,
    },
    Disconnected {
        src: RouterId,
        dst: RouterId,
        max_failures: Option<u32>,
    },
}

impl Property {
    pub fn is_dataplane(&self) -> bool {
        matches!(self, Property::ReachWithin { .. } | Property::ExceedsHops { .. })
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            Property::ReachWithin { .. } => "reach_within",
            Property::ExceedsHops { .. } => "exceeds_hops",
            Property::AvoidsWaypoint { .. } => "avoids_waypoint",
            Property::Disconnected { .. } => "disconnected",
        }
    }

    fn to_doc(self, routers: &Routers) -> PropertyDoc {
        let name = |id: RouterId| routers.name(id).to_string();
        match self {
            Property::ReachWithin { src, dst, hops } => PropertyDoc::ReachWithin {
                src: Some(name(src)),
                dst: Some(name(dst)),
                k: hops,
            },
            Property::ExceedsHops { src, hops } => PropertyDoc::ExceedsHops {
                src: Some(name(src)),
                k: hops,
            },
            Property::AvoidsWaypoint {
                src,
                dst,
                waypoint,
                max_failures,
            } => PropertyDoc::AvoidsWaypoint {
                src: name(src),
                dst: name(dst),
                waypoint: name(waypoint),
                max_failures,
            },
            Property::Disconnected {
                src,
                dst,
                max_failures,
            } => PropertyDoc::Disconnected {
                src: name(src),
                dst: name(dst),
                max_failures,
            },
        }
    }
}

fn check_hops(k: u32) -> Result<u32> {
    if k == 0 {
        return Err(Error::InvalidProperty("hop bound k must be at least 1".into()));
    }
    Ok(k)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Dataplane,
    Controlplane,
}

/// A network paired with a property of the matching plane.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Problem {
    DataPlane {
        net: DataPlaneNetwork,
        prop: Property,
    },
    ControlPlane {
        net: ControlPlaneNetwork,
        prop: Property,
    },
}

impl Problem {
    pub fn dataplane(net: DataPlaneNetwork, doc: &PropertyDoc) -> Result<Self> {
        let r = net.routers();
        let src_or_default = |src: &Option<String>| match src {
            Some(s) => r.id(s),
            None => Ok(net.source()),
        };
        let prop = match doc {
            PropertyDoc::ReachWithin { src, dst, k } => {
                let dst = match dst {
                    Some(d) => r.id(d)?,
                    None => net.destination().ok_or_else(|| {
                        Error::InvalidProperty(
                            "reach_within needs `dst` or a network destination".into(),
                        )
                    })?,
                };
                Property::ReachWithin {
                    src: src_or_default(src)?,
                    dst,
                    hops: check_hops(*k)?,
                }
            }
            PropertyDoc::ExceedsHops { src, k } => Property::ExceedsHops {
                src: src_or_default(src)?,
                hops: check_hops(*k)?,
            },
            other => {
                return Err(Error::InvalidProperty(format!(
                    "{} is a control-plane property",
                    kind_of(other)
                )))
            }
        };
        Ok(Problem::DataPlane { net, prop })
    }

    pub fn controlplane(net: ControlPlaneNetwork, doc: &PropertyDoc) -> Result<Self> {
        let r = net.routers();
        let prop = match doc {
            PropertyDoc::AvoidsWaypoint {
                src,
                dst,
                waypoint,
                max_failures,
            } => {
                let (src, dst, waypoint) = (r.id(src)?, r.id(dst)?, r.id(waypoint)?);
                if waypoint == src || waypoint == dst {
                    return Err(Error::InvalidProperty(
                        "waypoint must differ from src and dst".into(),
                    ));
                }
                Property::AvoidsWaypoint {
                    src,
                    dst,
                    waypoint,
                    max_failures: *max_failures,
                }
            }
            PropertyDoc::Disconnected {
                src,
                dst,
                max_failures,
            } => Property::Disconnected {
                src: r.id(src)?,
                dst: r.id(dst)?,
                max_failures: *max_failures,
            },
            other => {
                return Err(Error::InvalidProperty(format!(
                    "{} is a data-plane property",
                    kind_of(other)
                )))
            }
        };
        Ok(Problem::ControlPlane { net, prop })
    }

    /// Parses a network document of the given mode and a property document.
    pub fn from_documents(mode: Mode, network: &str, property: &str) -> Result<Self> {
        let doc = parse_property(property)?;
        match mode {
            Mode::Dataplane => Problem::dataplane(parse_dataplane(network)?, &doc),
            Mode::Controlplane => Problem::controlplane(parse_controlplane(network)?, &doc),
        }
    }

    pub fn mode(&self) -> Mode {
        match self {
            Problem::DataPlane { .. } => Mode::Dataplane,
            Problem::ControlPlane { .. } => Mode::Controlplane,
        }
    }

    /// Input width `n` of the verifier.
    pub fn width(&self) -> usize {
        match self {
            Problem::DataPlane { net, .. } => net.header_width(),
            Problem::ControlPlane { net, .. } => net.edge_count(),
        }
    }

    pub fn property(&self) -> &Property {
        match self {
            Problem::DataPlane { prop, .. } | Problem::ControlPlane { prop, .. } => prop,
        }
    }

    pub fn property_doc(&self) -> PropertyDoc {
        match self {
            Problem::DataPlane { net, prop } => prop.to_doc(net.routers()),
            Problem::ControlPlane { net, prop } => prop.to_doc(net.routers()),
        }
    }

    pub fn instance(&self, value: u64) -> Result<Bits> {
        Bits::new(self.width(), value)
    }

    pub fn format_instance(&self, value: u64) -> String {
        format_bits(value, self.width())
    }
}

fn kind_of(doc: &PropertyDoc) -> &'static str {
    match doc {
        PropertyDoc::ReachWithin { .. } => "reach_within",
        PropertyDoc::ExceedsHops { .. } => "exceeds_hops",
        PropertyDoc::AvoidsWaypoint { .. } => "avoids_waypoint",
        PropertyDoc::Disconnected { .. } => "disconnected",
    }
}

pub fn parse_property(text: &str) -> Result<PropertyDoc> {
    Ok(serde_json::from_str(text)?)
}

/// Example networks and properties shipped with the crate (see `data/`).
pub mod shipped {
    pub const TOY_DATAPLANE: &str = include_str!("../data/toy_dataplane.json");
    pub const TOY_REACH: &str = include_str!("../data/reach_a_c.json");
    pub const LOOP_DATAPLANE: &str = include_str!("../data/loop_dataplane.json");
    pub const LOOP_EXCEEDS: &str = include_str!("../data/exceeds_hops.json");
    pub const TRIANGLE: &str = include_str!("../data/triangle.json");
    pub const TRIANGLE_DISCONNECTED: &str = include_str!("../data/disconnected_a_c.json");
    pub const SQUARE: &str = include_str!("../data/square.json");
    pub const SQUARE_WAYPOINT: &str = include_str!("../data/avoids_waypoint.json");

    use super::{Mode, Problem};

    pub fn toy_reach() -> Problem {
        Problem::from_documents(Mode::Dataplane, TOY_DATAPLANE, TOY_REACH).expect("shipped")
    }

    pub fn loop_exceeds() -> Problem {
        Problem::from_documents(Mode::Dataplane, LOOP_DATAPLANE, LOOP_EXCEEDS).expect("shipped")
    }

    pub fn triangle_disconnected() -> Problem {
        Problem::from_documents(Mode::Controlplane, TRIANGLE, TRIANGLE_DISCONNECTED)
            .expect("shipped")
    }

    pub fn square_waypoint() -> Problem {
        Problem::from_documents(Mode::Controlplane, SQUARE, SQUARE_WAYPOINT).expect("shipped")
    }

    /// Every shipped problem, labelled.
    pub fn all() -> Vec<(&'static str, Problem)> {
        vec![
            ("toy_reach", toy_reach()),
            ("loop_exceeds", loop_exceeds()),
            ("triangle_disconnected", triangle_disconnected()),
            ("square_waypoint", square_waypoint()),
        ]
    }
}

//! Named forbidden graphs, forbidden-subgraph classifiers, accelerator
//! recognition and the accelerator catalogs.

mod accelerator;
mod generate;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{contains_induced, Graph};

pub use accelerator::{is_accelerator, AcceleratorDecomposition};
pub use generate::{compositions, contains_gk_member, generate_gk, CatalogMember, GkMatch, CATALOG_MAX_K};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum NamedGraph {
    P4,
    C4,
    C5,
    #[serde(rename = "bowtie")]
    Bowtie,
    #[serde(rename = "house")]
    House,
    #[serde(rename = "double_diamond")]
    DoubleDiamond,
    K2bar,
    K3bar,
    #[serde(rename = "twoK2")]
    TwoK2,
    K2xP3,
    K2xP4,
}

impl NamedGraph {
    pub const ALL: [NamedGraph; 11] = [
        NamedGraph::P4,
        NamedGraph::C4,
        NamedGraph::C5,
        NamedGraph::Bowtie,
        NamedGraph::House,
        NamedGraph::DoubleDiamond,
        NamedGraph::K2bar,
        NamedGraph::K3bar,
        NamedGraph::TwoK2,
        NamedGraph::K2xP3,
        NamedGraph::K2xP4,
    ];

    pub fn name(self) -> &'static str {
        match self {
            NamedGraph::P4 => "P4",
            NamedGraph::C4 => "C4",
            NamedGraph::C5 => "C5",
            NamedGraph::Bowtie => "bowtie",
            NamedGraph::House => "house",
            NamedGraph::DoubleDiamond => "double_diamond",
            NamedGraph::K2bar => "K2bar",
            NamedGraph::K3bar => "K3bar",
            NamedGraph::TwoK2 => "twoK2",
            NamedGraph::K2xP3 => "K2xP3",
            NamedGraph::K2xP4 => "K2xP4",
        }
    }

    pub fn graph(self) -> Graph {
        let e = |n: usize, edges: &[(usize, usize)]| Graph::from_edges(n, edges).expect("fixture edges are valid");
        match self {
            NamedGraph::P4 => Graph::path(4),
            NamedGraph::C4 => Graph::cycle(4),
            NamedGraph::C5 => Graph::cycle(5),
            NamedGraph::Bowtie => e(5, &[(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4)]),
            // a 4-cycle 1-2-3-4 with the roof vertex 0 on the edge 1-4
            NamedGraph::House => e(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (1, 4)]),
            // the square of P6: two diamonds sharing an edge
            NamedGraph::DoubleDiamond => {
                e(6, &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 3), (2, 4), (3, 4), (3, 5), (4, 5)])
            }
            NamedGraph::K2bar => Graph::empty(2).unwrap(),
            NamedGraph::K3bar => Graph::empty(3).unwrap(),
            NamedGraph::TwoK2 => e(4, &[(0, 1), (2, 3)]),
            NamedGraph::K2xP3 => ladder(3),
            NamedGraph::K2xP4 => ladder(4),
        }
    }
}

/// `K_2 □ P_m`: rungs `(i, m + i)`.
fn ladder(m: usize) -> Graph {
    let mut edges = Vec::new();
    for i in 0..m {
        edges.push((i, m + i));
        if i + 1 < m {
            edges.push((i, i + 1));
            edges.push((m + i, m + i + 1));
        }
    }
    Graph::from_edges(2 * m, &edges).expect("ladder fits")
}

impl fmt::Display for NamedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for NamedGraph {
    type Err = Error;

    fn from_str(s: &str) -> Result<NamedGraph> {
        NamedGraph::ALL
            .into_iter()
            .find(|g| g.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| {
                let names: Vec<&str> = NamedGraph::ALL.iter().map(|g| g.name()).collect();
                Error::Usage(format!("unknown built-in graph {s:?} (known: {})", names.join(", ")))
            })
    }
}

fn require_connected(g: &Graph) -> Result<()> {
    if g.n() == 0 || !g.is_connected() {
        return Err(Error::Domain("the classifier needs a nonempty connected graph".into()));
    }
    Ok(())
}

/// Whether `th(G) = |V(G)|`, decided by excluding induced `P4`, `C4` and
/// bowtie.
pub fn classify_th_eq_n(g: &Graph) -> Result<bool> {
    require_connected(g)?;
    Ok([NamedGraph::P4, NamedGraph::C4, NamedGraph::Bowtie]
        .iter()
        .all(|p| !contains_induced(&p.graph(), g)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ThPlusClass {
    EqualsN,
    EqualsNMinus1,
    /// `th+(G) < |V(G)| - 1`.
    Below,
}

impl ThPlusClass {
    pub fn name(self) -> &'static str {
        match self {
            ThPlusClass::EqualsN => "equals_n",
            ThPlusClass::EqualsNMinus1 => "equals_n_minus_1",
            ThPlusClass::Below => "below",
        }
    }

    /// The class of a known `th+` value on `n` vertices.
    pub fn of_value(th: usize, n: usize) -> ThPlusClass {
        if th >= n {
            ThPlusClass::EqualsN
        } else if th + 1 == n {
            ThPlusClass::EqualsNMinus1
        } else {
            ThPlusClass::Below
        }
    }
}

impl fmt::Display for ThPlusClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Where `th+(G)` sits relative to `|V(G)|`, by forbidden induced
/// subgraphs.
pub fn classify_thplus(g: &Graph) -> Result<ThPlusClass> {
    require_connected(g)?;
    if g.is_complete() {
        return Ok(ThPlusClass::EqualsN);
    }
    let below = [NamedGraph::K3bar, NamedGraph::C5, NamedGraph::House, NamedGraph::DoubleDiamond]
        .iter()
        .any(|p| contains_induced(&p.graph(), g));
    Ok(if below { ThPlusClass::Below } else { ThPlusClass::EqualsNMinus1 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures() {
        for g in NamedGraph::ALL {
            let h = g.graph();
            let (n, m) = match g {
                NamedGraph::P4 => (4, 3),
                NamedGraph::C4 => (4, 4),
                NamedGraph::C5 => (5, 5),
                NamedGraph::Bowtie => (5, 6),
                NamedGraph::House => (5, 6),
                NamedGraph::DoubleDiamond => (6, 9),
                NamedGraph::K2bar => (2, 0),
                NamedGraph::K3bar => (3, 0),
                NamedGraph::TwoK2 => (4, 2),
                NamedGraph::K2xP3 => (6, 7),
                NamedGraph::K2xP4 => (8, 10),
            };
            assert_eq!((h.n(), h.edge_count()), (n, m), "{g}");
            assert_eq!(g.name().parse::<NamedGraph>().unwrap(), g);
        }
        let house = NamedGraph::House.graph();
        let mut deg: Vec<usize> = house.vertices().iter().map(|v| house.degree(v)).collect();
        deg.sort();
        assert_eq!(deg, vec![2, 2, 2, 3, 3]);
    }

    #[test]
    fn th_eq_n_examples() {
        for n in 1..=8 {
            assert!(classify_th_eq_n(&Graph::complete(n)).unwrap());
        }
        assert!(!classify_th_eq_n(&Graph::path(4)).unwrap());
        assert!(!classify_th_eq_n(&Graph::cycle(5)).unwrap());
        assert!(classify_th_eq_n(&Graph::empty(2).unwrap()).is_err());
    }

    #[test]
    fn thplus_examples() {
        assert_eq!(classify_thplus(&Graph::complete(5)).unwrap(), ThPlusClass::EqualsN);
        assert_eq!(classify_thplus(&Graph::path(3)).unwrap(), ThPlusClass::EqualsNMinus1);
        assert_eq!(classify_thplus(&Graph::cycle(5)).unwrap(), ThPlusClass::Below);
        assert!(classify_thplus(&NamedGraph::TwoK2.graph()).is_err());
    }
}

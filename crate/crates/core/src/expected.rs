//! Reference values: closed forms for A_n and D_n, a bundled table for E.

use std::sync::OnceLock;

use serde::Deserialize;

use crate::perm::factorial;
use crate::progenitor::{Family, FamilySpec};

const DATA: &str = include_str!("../data/expected.toml");

#[derive(Clone, Debug, Deserialize, PartialEq, Eq)]
pub struct ERow {
    pub n: usize,
    pub index: u64,
    pub rank: usize,
    #[serde(default)]
    pub sizes: Option<Vec<u64>>,
    #[serde(default)]
    pub stabilizers: Option<Vec<u64>>,
    pub group_order: u64,
    pub gf2_order: u64,
}

#[derive(Deserialize)]
struct Table {
    e: Vec<ERow>,
}

fn e_table() -> &'static [ERow] {
    static TABLE: OnceLock<Vec<ERow>> = OnceLock::new();
    TABLE.get_or_init(|| {
        toml::from_str::<Table>(DATA)
            .expect("bundled expected.toml parses")
            .e
    })
}

pub fn e_row(n: usize) -> Option<&'static ERow> {
    e_table().iter().find(|r| r.n == n)
}

/// Expected values for one in-scope family member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expected {
    pub index: u64,
    pub rank: usize,
    pub group_order: u64,
    pub sizes: Option<Vec<u64>>,
    pub stabilizers: Option<Vec<u64>>,
}

pub fn expected(spec: &FamilySpec) -> Option<Expected> {
    if spec.is_experimental() {
        return None;
    }
    let n = spec.n();
    let nf = factorial(n);
    match spec.family() {
        Family::A => Some(Expected {
            index: n as u64 + 1,
            rank: 2,
            group_order: (n as u64 + 1) * nf,
            sizes: Some(vec![1, n as u64]),
            stabilizers: Some(vec![nf, nf / n as u64]),
        }),
        Family::D => {
            let index = 1u64 << (n - 1);
            Some(Expected {
                index,
                rank: n / 2 + 1,
                group_order: index * nf,
                // [t12 t34 ... t_{2m-1,2m}] has C(n, 2m) cosets
                sizes: Some((0..=n / 2).map(|m| binom(n, 2 * m)).collect()),
                stabilizers: None,
            })
        }
        Family::E => e_row(n).map(|r| Expected {
            index: r.index,
            rank: r.rank,
            group_order: r.group_order,
            sizes: r.sizes.clone(),
            stabilizers: r.stabilizers.clone(),
        }),
    }
}

fn binom(n: usize, k: usize) -> u64 {
    crate::perm::binomial(n, k) as u64
}

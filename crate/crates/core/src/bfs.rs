//! Deterministic breadth-first closure over canonical coset forms.
//!
//! Each level's products are computed in parallel, then inserted
//! sequentially in (parent, generator) order, so the result (including
//! which parent first reaches a coset) matches a purely sequential run.

use std::collections::HashMap;
use std::hash::Hash;

use rayon::prelude::*;

use crate::error::{Error, Result};

/// Environment variable capping the worker count.
pub const THREADS_ENV: &str = "SYMGEN_THREADS";

pub(crate) fn with_pool<R: Send>(f: impl FnOnce() -> R + Send) -> R {
    let threads = std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&t| t > 0);
    match threads {
        Some(t) => match rayon::ThreadPoolBuilder::new().num_threads(t).build() {
            Ok(pool) => pool.install(f),
            Err(_) => f(),
        },
        None => f(),
    }
}

/// Cosets in discovery order; `parents[i] = (parent index, generator index)`
/// for every coset but the first.
pub struct Closure<T> {
    pub elements: Vec<T>,
    pub parents: Vec<Option<(u32, u32)>>,
    pub lookup: HashMap<T, usize>,
}

impl<T> Closure<T> {
    /// Generator indices along the BFS tree path from the start to `i`.
    pub fn path(&self, mut i: usize) -> Vec<usize> {
        let mut out = Vec::new();
        while let Some((p, g)) = self.parents[i] {
            out.push(g as usize);
            i = p as usize;
        }
        out.reverse();
        out
    }
}

pub fn closure<T, G, F>(start: T, gens: &[G], cap: usize, step: F) -> Result<Closure<T>>
where
    T: Clone + Eq + Hash + Send + Sync,
    G: Sync,
    F: Fn(&T, &G) -> Result<T> + Sync,
{
    let mut elements = vec![start.clone()];
    let mut parents = vec![None];
    let mut lookup = HashMap::from([(start, 0usize)]);
    let mut level_start = 0;
    while level_start < elements.len() {
        let level_end = elements.len();
        let products: Vec<Result<T>> = with_pool(|| {
            (level_start..level_end)
                .into_par_iter()
                .flat_map_iter(|i| gens.iter().map(move |g| (i, g)))
                .map(|(i, g)| step(&elements[i], g))
                .collect()
        });
        for (offset, product) in products.into_iter().enumerate() {
            let product = product?;
            if lookup.contains_key(&product) {
                continue;
            }
            if elements.len() >= cap {
                return Err(Error::CapExceeded { cap });
            }
            let parent = level_start + offset / gens.len();
            let gen = offset % gens.len();
            lookup.insert(product.clone(), elements.len());
            elements.push(product);
            parents.push(Some((parent as u32, gen as u32)));
        }
        level_start = level_end;
    }
    Ok(Closure {
        elements,
        parents,
        lookup,
    })
}

/// Partition of `elements` into orbits under `step`, in order of each
/// orbit's least member.
pub fn orbits<T, P, F>(
    elements: &[T],
    lookup: &HashMap<T, usize>,
    perms: &[P],
    step: F,
) -> Result<Vec<Vec<usize>>>
where
    T: Eq + Hash,
    F: Fn(&T, &P) -> Result<T>,
{
    let mut orbit_of = vec![usize::MAX; elements.len()];
    let mut out: Vec<Vec<usize>> = Vec::new();
    for seed in 0..elements.len() {
        if orbit_of[seed] != usize::MAX {
            continue;
        }
        let id = out.len();
        orbit_of[seed] = id;
        let mut members = vec![seed];
        let mut head = 0;
        while head < members.len() {
            let x = members[head];
            head += 1;
            for p in perms {
                let y = step(&elements[x], p)?;
                let &j = lookup.get(&y).ok_or(Error::NotInvariant)?;
                if orbit_of[j] == usize::MAX {
                    orbit_of[j] = id;
                    members.push(j);
                }
            }
        }
        members.sort_unstable();
        out.push(members);
    }
    Ok(out)
}

//! Counting isomorphism classes of markings.
//!
//! A marking assigns every leg a role (a `mu` part, a `nu` part, or one of
//! the exceptional-curve sets `A_j`) and picks an increasing bijection from
//! `{1..m}` onto floors, edges, and `nu`-legs. Classes are counted up to
//! diagram automorphism. The group is factored as (leg permutations within
//! a (vertex, weight) class) x (skeleton automorphisms): the first factor
//! is quotiented away by working with per-class counts, label sets, and
//! rank-ordered `nu` slots; the second is enumerated explicitly and orbits
//! are deduplicated by minimal representatives, stage by stage
//! (role pattern, then increasing bijection, then label assignment).

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use crate::diagram::{FloorDiagram, Poset, PosetElement};

use super::{check_inputs, CurveClass, EnumerateError, Role, Tangency};

/// Per-vertex `(weight, mu, nu, red)` class counts; the orbit key of a
/// coloring under skeleton automorphisms.
type VertexData = Vec<Vec<(i64, u32, u32, u32)>>;

/// Number of isomorphism classes of markings of `g` of class `beta` and
/// type `t`, summed over all leg-role patterns. Per-pattern counts are the
/// tally rows; a figure that fixes the red/black decomposition of the legs
/// shows a single pattern.
pub fn count_markings(
    g: &FloorDiagram,
    beta: &CurveClass,
    t: &Tangency,
) -> Result<u64, EnumerateError> {
    check_inputs(beta, t)?;
    g.validate().map_err(EnumerateError::InvalidDiagram)?;
    if g.degree() != beta.d {
        return Err(EnumerateError::ClassDegreeMismatch {
            diagram: g.degree(),
            class: beta.d,
        });
    }
    Ok(markings_by_role_pattern(g, beta, t)
        .into_iter()
        .map(|(_, count)| count)
        .sum())
}

/// Marking-class counts grouped by leg-role pattern, one entry per
/// pattern orbit with the roles of a representative labeling of `g`.
pub(super) fn markings_by_role_pattern(
    g: &FloorDiagram,
    beta: &CurveClass,
    t: &Tangency,
) -> Vec<(Vec<Role>, u64)> {
    let classes = LegClasses::of(g);
    let skeletons = g.skeleton_automorphisms();
    let colorings = enumerate_colorings(g, &classes, beta, t);

    // group colorings into skeleton orbits keyed by canonical per-vertex data
    let mut orbits: BTreeMap<VertexData, (Coloring, Vec<Vec<usize>>)> = BTreeMap::new();
    for coloring in colorings {
        let data = coloring.vertex_data(g, &classes);
        let canonical = skeletons
            .iter()
            .map(|sigma| permute_vertex_data(&data, sigma))
            .min()
            .expect("identity automorphism always present");
        orbits.entry(canonical).or_insert_with(|| {
            let stab: Vec<Vec<usize>> = skeletons
                .iter()
                .filter(|sigma| permute_vertex_data(&data, sigma) == data)
                .cloned()
                .collect();
            (coloring, stab)
        });
    }

    orbits
        .into_values()
        .map(|(coloring, stab)| {
            let count = count_for_coloring(g, &classes, &coloring, &stab, beta);
            (coloring.roles(g, &classes), count)
        })
        .collect()
}

/// Legs grouped by (vertex, weight); members of a class are
/// interchangeable under leg automorphisms.
struct LegClasses {
    list: Vec<LegClass>,
    index: BTreeMap<(usize, i64), usize>,
}

struct LegClass {
    vertex: usize,
    weight: i64,
    members: Vec<usize>,
}

impl LegClasses {
    fn of(g: &FloorDiagram) -> Self {
        let mut grouped: BTreeMap<(usize, i64), Vec<usize>> = BTreeMap::new();
        for (i, l) in g.legs().iter().enumerate() {
            grouped.entry((l.vertex, l.weight)).or_default().push(i);
        }
        let list: Vec<LegClass> = grouped
            .iter()
            .map(|(&(vertex, weight), members)| LegClass {
                vertex,
                weight,
                members: members.clone(),
            })
            .collect();
        let index = grouped.keys().enumerate().map(|(i, &k)| (k, i)).collect();
        LegClasses { list, index }
    }
}

/// Per-class role counts `(mu, nu, red)`.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Coloring {
    counts: Vec<(u32, u32, u32)>,
}

impl Coloring {
    /// Per-vertex invariant `(weight, mu, nu, red)` lists used to compare
    /// colorings under skeleton automorphisms.
    fn vertex_data(&self, g: &FloorDiagram, classes: &LegClasses) -> VertexData {
        let mut data = vec![Vec::new(); g.vertex_count()];
        for (c, class) in classes.list.iter().enumerate() {
            let (mu, nu, red) = self.counts[c];
            data[class.vertex].push((class.weight, mu, nu, red));
        }
        for entry in &mut data {
            entry.sort_unstable();
        }
        data
    }

    /// Concrete role per leg: within each class the first `nu` members act
    /// as `nu`-legs, the next `mu` as `mu`-legs, the rest as red legs.
    fn roles(&self, g: &FloorDiagram, classes: &LegClasses) -> Vec<Role> {
        let mut roles = vec![Role::Red; g.legs().len()];
        for (c, class) in classes.list.iter().enumerate() {
            let (mu, nu, _red) = self.counts[c];
            for (k, &leg) in class.members.iter().enumerate() {
                roles[leg] = if (k as u32) < nu {
                    Role::Nu
                } else if (k as u32) < nu + mu {
                    Role::Mu
                } else {
                    Role::Red
                };
            }
        }
        roles
    }
}

fn permute_vertex_data(data: &[Vec<(i64, u32, u32, u32)>], sigma: &[usize]) -> VertexData {
    let mut out = vec![Vec::new(); data.len()];
    for (v, entry) in data.iter().enumerate() {
        out[sigma[v]] = entry.clone();
    }
    out
}

/// All admissible role-count assignments: mu- and nu-demands per weight are
/// exhausted, red legs have weight 1, and a vertex carries at most one red
/// leg per exceptional label.
fn enumerate_colorings(
    _g: &FloorDiagram,
    classes: &LegClasses,
    beta: &CurveClass,
    t: &Tangency,
) -> Vec<Coloring> {
    let mut mu_demand: BTreeMap<i64, u32> = BTreeMap::new();
    for &p in &t.mu {
        *mu_demand.entry(p).or_insert(0) += 1;
    }
    let mut nu_demand: BTreeMap<i64, u32> = BTreeMap::new();
    for &p in &t.nu {
        *nu_demand.entry(p).or_insert(0) += 1;
    }
    let red_total: u32 = beta.a.iter().sum::<i64>() as u32;
    let n_labels = beta.a.len() as u32;

    let mut out = Vec::new();
    let mut counts = Vec::with_capacity(classes.list.len());
    fill_coloring(
        classes,
        0,
        &mut mu_demand,
        &mut nu_demand,
        red_total,
        n_labels,
        &mut counts,
        &mut out,
    );
    out
}

#[allow(clippy::too_many_arguments)]
fn fill_coloring(
    classes: &LegClasses,
    c: usize,
    mu_demand: &mut BTreeMap<i64, u32>,
    nu_demand: &mut BTreeMap<i64, u32>,
    red_left: u32,
    n_labels: u32,
    counts: &mut Vec<(u32, u32, u32)>,
    out: &mut Vec<Coloring>,
) {
    if c == classes.list.len() {
        if red_left == 0
            && mu_demand.values().all(|&v| v == 0)
            && nu_demand.values().all(|&v| v == 0)
        {
            out.push(Coloring {
                counts: counts.clone(),
            });
        }
        return;
    }
    let class = &classes.list[c];
    let size = class.members.len() as u32;
    let mu_avail = *mu_demand.get(&class.weight).unwrap_or(&0);
    let nu_avail = *nu_demand.get(&class.weight).unwrap_or(&0);
    for mu in 0..=mu_avail.min(size) {
        for nu in 0..=nu_avail.min(size - mu) {
            let red = size - mu - nu;
            if red > 0 && (class.weight != 1 || red > n_labels || red > red_left) {
                continue;
            }
            if mu > 0 {
                *mu_demand.get_mut(&class.weight).unwrap() -= mu;
            }
            if nu > 0 {
                *nu_demand.get_mut(&class.weight).unwrap() -= nu;
            }
            counts.push((mu, nu, red));
            fill_coloring(
                classes,
                c + 1,
                mu_demand,
                nu_demand,
                red_left - red,
                n_labels,
                counts,
                out,
            );
            counts.pop();
            if mu > 0 {
                *mu_demand.get_mut(&class.weight).unwrap() += mu;
            }
            if nu > 0 {
                *nu_demand.get_mut(&class.weight).unwrap() += nu;
            }
        }
    }
}

/// Marking classes with a fixed role pattern: sum over orbit
/// representatives of increasing bijections of the label assignments
/// counted up to the bijection's stabilizer.
fn count_for_coloring(
    g: &FloorDiagram,
    classes: &LegClasses,
    coloring: &Coloring,
    stab: &[Vec<usize>],
    beta: &CurveClass,
) -> u64 {
    // concrete nu slots: per class, the first `nu` members, ranked
    let mut nu_concrete: Vec<Vec<usize>> = Vec::with_capacity(classes.list.len());
    let mut nu_set = BTreeSet::new();
    for (c, class) in classes.list.iter().enumerate() {
        let nu = coloring.counts[c].1 as usize;
        let chosen: Vec<usize> = class.members[..nu].to_vec();
        nu_set.extend(chosen.iter().copied());
        nu_concrete.push(chosen);
    }

    let poset = g.marking_poset(&nu_set);
    let rank_of: BTreeMap<usize, (usize, usize)> = nu_concrete
        .iter()
        .enumerate()
        .flat_map(|(c, legs)| legs.iter().enumerate().map(move |(r, &l)| (l, (c, r))))
        .collect();
    let elem_index: BTreeMap<PosetElement, usize> = poset
        .elements
        .iter()
        .enumerate()
        .map(|(i, &e)| (e, i))
        .collect();

    // poset index permutation induced by each stabilizer element
    let stab_maps: Vec<Vec<usize>> = stab
        .iter()
        .map(|sigma| {
            let edge_map = g.edge_map_under(sigma);
            poset
                .elements
                .iter()
                .map(|el| {
                    let image = match *el {
                        PosetElement::Vertex(v) => PosetElement::Vertex(sigma[v]),
                        PosetElement::Edge(e) => PosetElement::Edge(edge_map[e]),
                        PosetElement::Leg(l) => {
                            let (c, r) = rank_of[&l];
                            let class = &classes.list[c];
                            let tc = classes.index[&(sigma[class.vertex], class.weight)];
                            PosetElement::Leg(nu_concrete[tc][r])
                        }
                    };
                    elem_index[&image]
                })
                .collect()
        })
        .collect();

    let extensions = rank_ordered_extensions(&poset, &rank_of);

    // orbit representatives of extensions with their stabilizers
    let mut rep_stabs: Vec<Vec<usize>> = Vec::new();
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    for ext in &extensions {
        let mapped: Vec<Vec<usize>> = stab_maps
            .iter()
            .map(|m| ext.iter().map(|&i| m[i]).collect())
            .collect();
        let canonical = mapped.iter().min().expect("stabilizer contains identity");
        if canonical == ext && seen.insert(ext.clone()) {
            let h: Vec<usize> = mapped
                .iter()
                .enumerate()
                .filter(|(_, image)| *image == ext)
                .map(|(k, _)| k)
                .collect();
            rep_stabs.push(h);
        }
    }

    // red capacities per vertex and label demands
    let caps: Vec<u32> = {
        let mut caps = vec![0u32; g.vertex_count()];
        for (c, class) in classes.list.iter().enumerate() {
            caps[class.vertex] += coloring.counts[c].2;
        }
        caps
    };
    let demands: Vec<u32> = beta.a.iter().map(|&a| a as u32).collect();

    let mut free_count: Option<u64> = None;
    let mut total = 0u64;
    for h in rep_stabs {
        if h.len() == 1 {
            let count = *free_count.get_or_insert_with(|| count_labelings(&caps, &demands));
            total += count;
        } else {
            let perms: Vec<&Vec<usize>> = h.iter().map(|&k| &stab[k]).collect();
            total += count_labelings_up_to(&caps, &demands, &perms);
        }
    }
    total
}

/// Linear extensions of the marking poset in which the slots of each
/// `nu`-class appear in increasing rank order (equal legs on the same
/// vertex are interchangeable, so one order per class suffices).
fn rank_ordered_extensions(
    poset: &Poset,
    rank_of: &BTreeMap<usize, (usize, usize)>,
) -> Vec<Vec<usize>> {
    let m = poset.len();
    let preds: Vec<Vec<usize>> = (0..m).map(|j| poset.below(j).collect()).collect();
    let slot_of: Vec<Option<(usize, usize)>> = poset
        .elements
        .iter()
        .map(|el| match *el {
            PosetElement::Leg(l) => Some(rank_of[&l]),
            _ => None,
        })
        .collect();

    let mut out = Vec::new();
    let mut seq = Vec::with_capacity(m);
    let mut used = vec![false; m];
    let mut next_rank: BTreeMap<usize, usize> = BTreeMap::new();
    fn rec(
        m: usize,
        preds: &[Vec<usize>],
        slot_of: &[Option<(usize, usize)>],
        seq: &mut Vec<usize>,
        used: &mut Vec<bool>,
        next_rank: &mut BTreeMap<usize, usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if seq.len() == m {
            out.push(seq.clone());
            return;
        }
        for i in 0..m {
            if used[i] || !preds[i].iter().all(|&p| used[p]) {
                continue;
            }
            if let Some((c, r)) = slot_of[i] {
                if *next_rank.get(&c).unwrap_or(&0) != r {
                    continue;
                }
                *next_rank.entry(c).or_insert(0) += 1;
            }
            used[i] = true;
            seq.push(i);
            rec(m, preds, slot_of, seq, used, next_rank, out);
            seq.pop();
            used[i] = false;
            if let Some((c, _)) = slot_of[i] {
                *next_rank.get_mut(&c).unwrap() -= 1;
            }
        }
    }
    rec(
        m,
        &preds,
        &slot_of,
        &mut seq,
        &mut used,
        &mut next_rank,
        &mut out,
    );
    out
}

/// Number of ways to attach, for each exceptional label `j`, `demands[j]`
/// red legs to pairwise distinct vertices within the residual capacities.
fn count_labelings(caps: &[u32], demands: &[u32]) -> u64 {
    if caps.iter().map(|&c| c as u64).sum::<u64>() != demands.iter().map(|&d| d as u64).sum::<u64>()
    {
        return 0;
    }
    let mut memo = HashMap::new();
    let mut caps = caps.to_vec();
    count_labelings_rec(0, &mut caps, demands, &mut memo)
}

fn count_labelings_rec(
    j: usize,
    caps: &mut Vec<u32>,
    demands: &[u32],
    memo: &mut HashMap<(usize, Vec<u32>), u64>,
) -> u64 {
    if j == demands.len() {
        return 1;
    }
    let key = (j, caps.clone());
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let mut total = 0;
    let mut chosen = Vec::new();
    choose_vertices(
        0,
        demands[j] as usize,
        caps,
        &mut chosen,
        &mut |caps| count_labelings_rec(j + 1, caps, demands, memo),
        &mut total,
    );
    memo.insert(key, total);
    total
}

fn choose_vertices(
    from: usize,
    remaining: usize,
    caps: &mut Vec<u32>,
    chosen: &mut Vec<usize>,
    leaf: &mut impl FnMut(&mut Vec<u32>) -> u64,
    total: &mut u64,
) {
    if remaining == 0 {
        *total += leaf(caps);
        return;
    }
    for v in from..caps.len() {
        if caps.len() - v < remaining || caps[v] == 0 {
            if caps.len() - v < remaining {
                break;
            }
            continue;
        }
        caps[v] -= 1;
        chosen.push(v);
        choose_vertices(v + 1, remaining - 1, caps, chosen, leaf, total);
        chosen.pop();
        caps[v] += 1;
    }
}

/// Label assignments counted up to the given vertex permutations: every
/// assignment is reduced to its minimal image, distinct minima are counted.
fn count_labelings_up_to(caps: &[u32], demands: &[u32], perms: &[&Vec<usize>]) -> u64 {
    if caps.iter().map(|&c| c as u64).sum::<u64>() != demands.iter().map(|&d| d as u64).sum::<u64>()
    {
        return 0;
    }
    let mut labels: Vec<Vec<u32>> = vec![Vec::new(); caps.len()];
    let mut caps = caps.to_vec();
    let mut seen: HashSet<Vec<Vec<u32>>> = HashSet::new();
    enumerate_labelings(0, &mut caps, demands, &mut labels, &mut |labels| {
        let canonical = perms
            .iter()
            .map(|sigma| {
                let mut permuted = vec![Vec::new(); labels.len()];
                for (v, set) in labels.iter().enumerate() {
                    permuted[sigma[v]] = set.clone();
                }
                permuted
            })
            .min()
            .expect("identity present");
        seen.insert(canonical);
    });
    seen.len() as u64
}

fn enumerate_labelings(
    j: usize,
    caps: &mut Vec<u32>,
    demands: &[u32],
    labels: &mut Vec<Vec<u32>>,
    leaf: &mut impl FnMut(&Vec<Vec<u32>>),
) {
    if j == demands.len() {
        leaf(labels);
        return;
    }
    fn choose(
        from: usize,
        remaining: usize,
        j: usize,
        caps: &mut Vec<u32>,
        demands: &[u32],
        labels: &mut Vec<Vec<u32>>,
        leaf: &mut impl FnMut(&Vec<Vec<u32>>),
    ) {
        if remaining == 0 {
            enumerate_labelings(j + 1, caps, demands, labels, leaf);
            return;
        }
        for v in from..caps.len() {
            if caps.len() - v < remaining {
                break;
            }
            if caps[v] == 0 {
                continue;
            }
            caps[v] -= 1;
            labels[v].push(j as u32);
            choose(v + 1, remaining - 1, j, caps, demands, labels, leaf);
            labels[v].pop();
            caps[v] += 1;
        }
    }
    choose(0, demands[j] as usize, j, caps, demands, labels, leaf);
}

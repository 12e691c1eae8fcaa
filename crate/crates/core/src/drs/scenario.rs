use std::collections::BTreeSet;

use rand::seq::{index, SliceRandom};
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{DrsError, Result};

/// A special interest group: at least two users sharing a nonempty item set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigSpec {
    pub members: BTreeSet<usize>,
    pub common_items: BTreeSet<usize>,
}

/// Users, catalog and SIGs of one recommender experiment.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    eta: usize,
    mu: usize,
    lambda_target: f64,
    sigs: Vec<SigSpec>,
    user_interests: Vec<BTreeSet<usize>>,
    user_sigs: Vec<Vec<usize>>,
}

/// A member whose own hit rate is not below the rate of recommendations
/// from the SIG, `|P(u)|/eta >= |P(S)|/|P(u)|`.
#[derive(Debug, Clone, PartialEq)]
pub struct PremiseWarning {
    pub sig: usize,
    pub user: usize,
    pub own_rate: f64,
    pub sig_rate: f64,
}

impl Scenario {
    /// Validates and assembles a scenario. `user_interests[u]` is the full
    /// set `P(u)`.
    pub fn new(
        eta: usize,
        mu: usize,
        lambda_target: f64,
        sigs: Vec<SigSpec>,
        user_interests: Vec<BTreeSet<usize>>,
    ) -> Result<Self> {
        let invalid = |m: String| Err(DrsError::Invalid(m));
        if eta == 0 || mu == 0 {
            return invalid("eta and mu must be positive".into());
        }
        if !(lambda_target > 0.0 && lambda_target <= 1.0) {
            return invalid(format!("lambda_target {lambda_target} outside (0, 1]"));
        }
        if user_interests.len() != mu {
            return invalid(format!(
                "{} interest sets for {mu} users",
                user_interests.len()
            ));
        }
        if let Some(bad) = user_interests.iter().flatten().find(|&&i| i >= eta) {
            return invalid(format!("item {bad} outside catalog of {eta}"));
        }
        let mut user_sigs = vec![Vec::new(); mu];
        for (i, sig) in sigs.iter().enumerate() {
            if sig.members.len() < 2 {
                return invalid(format!("SIG {i} has fewer than two members"));
            }
            if sig.common_items.is_empty() {
                return invalid(format!("SIG {i} has no common items"));
            }
            if let Some(&bad) = sig.common_items.iter().find(|&&x| x >= eta) {
                return invalid(format!("SIG {i} item {bad} outside catalog of {eta}"));
            }
            for &u in &sig.members {
                if u >= mu {
                    return invalid(format!("SIG {i} member {u} outside {mu} users"));
                }
                if !sig.common_items.is_subset(&user_interests[u]) {
                    return invalid(format!("SIG {i} common items not all liked by member {u}"));
                }
                user_sigs[u].push(i);
            }
        }
        let covered = user_sigs.iter().filter(|s| !s.is_empty()).count();
        if (covered as f64) < lambda_target * mu as f64 - 1e-9 {
            return Err(DrsError::Infeasible(format!(
                "SIGs cover {covered} of {mu} users, below lambda_target {lambda_target}"
            )));
        }
        Ok(Self {
            eta,
            mu,
            lambda_target,
            sigs,
            user_interests,
            user_sigs,
        })
    }

    pub fn eta(&self) -> usize {
        self.eta
    }

    pub fn mu(&self) -> usize {
        self.mu
    }

    pub fn ell(&self) -> usize {
        self.sigs.len()
    }

    pub fn lambda_target(&self) -> f64 {
        self.lambda_target
    }

    pub fn sigs(&self) -> &[SigSpec] {
        &self.sigs
    }

    pub fn interests(&self, user: usize) -> &BTreeSet<usize> {
        &self.user_interests[user]
    }

    /// Indices of the SIGs `user` belongs to.
    pub fn sigs_of(&self, user: usize) -> &[usize] {
        &self.user_sigs[user]
    }

    pub fn likes(&self, user: usize, item: usize) -> bool {
        self.user_interests[user].contains(&item)
    }

    /// Share of users that belong to at least one SIG.
    pub fn coverage(&self) -> f64 {
        self.user_sigs.iter().filter(|s| !s.is_empty()).count() as f64 / self.mu as f64
    }

    /// Mean `|P(u)|` over the members of SIG `i`.
    pub fn mean_member_interest(&self, i: usize) -> f64 {
        let sig = &self.sigs[i];
        let total: usize = sig.members.iter().map(|&u| self.user_interests[u].len()).sum();
        total as f64 / sig.members.len() as f64
    }

    pub fn premise_warnings(&self) -> Vec<PremiseWarning> {
        let mut out = Vec::new();
        for (i, sig) in self.sigs.iter().enumerate() {
            for &u in &sig.members {
                let pu = self.user_interests[u].len() as f64;
                let own_rate = pu / self.eta as f64;
                let sig_rate = sig.common_items.len() as f64 / pu;
                if own_rate >= sig_rate {
                    out.push(PremiseWarning {
                        sig: i,
                        user: u,
                        own_rate,
                        sig_rate,
                    });
                }
            }
        }
        out
    }

    /// Structured-text form: `eta`, `mu`, `lambda_target`, one `[[sig]]`
    /// block per SIG and a `[[user]]` block for every user with items beyond
    /// their SIGs' common sets.
    pub fn to_text(&self) -> String {
        let users = (0..self.mu)
            .filter_map(|u| {
                let mut extra = self.user_interests[u].clone();
                for &i in &self.user_sigs[u] {
                    extra.retain(|x| !self.sigs[i].common_items.contains(x));
                }
                (!extra.is_empty()).then(|| UserBlock {
                    id: u,
                    extra_items: extra.into_iter().collect(),
                })
            })
            .collect();
        let file = ScenarioFile {
            eta: self.eta,
            mu: self.mu,
            lambda_target: self.lambda_target,
            sig: self
                .sigs
                .iter()
                .map(|s| SigBlock {
                    members: s.members.iter().copied().collect(),
                    common_items: s.common_items.iter().copied().collect(),
                })
                .collect(),
            user: users,
        };
        toml::to_string(&file).expect("scenario serializes")
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let file: ScenarioFile =
            toml::from_str(text).map_err(|e| DrsError::Parse(e.to_string()))?;
        let mut interests = vec![BTreeSet::new(); file.mu];
        let sigs: Vec<SigSpec> = file
            .sig
            .into_iter()
            .map(|b| SigSpec {
                members: b.members.into_iter().collect(),
                common_items: b.common_items.into_iter().collect(),
            })
            .collect();
        for sig in &sigs {
            for &u in &sig.members {
                if u >= file.mu {
                    return Err(DrsError::Parse(format!("member {u} outside mu = {}", file.mu)));
                }
                interests[u].extend(sig.common_items.iter().copied());
            }
        }
        for block in file.user {
            let slot = interests
                .get_mut(block.id)
                .ok_or_else(|| DrsError::Parse(format!("user {} outside mu", block.id)))?;
            slot.extend(block.extra_items);
        }
        Self::new(file.eta, file.mu, file.lambda_target, sigs, interests)
            .map_err(|e| DrsError::Parse(e.to_string()))
    }
}

#[derive(Serialize, Deserialize)]
struct ScenarioFile {
    eta: usize,
    mu: usize,
    lambda_target: f64,
    #[serde(default)]
    sig: Vec<SigBlock>,
    #[serde(default)]
    user: Vec<UserBlock>,
}

#[derive(Serialize, Deserialize)]
struct SigBlock {
    members: Vec<usize>,
    common_items: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct UserBlock {
    id: usize,
    extra_items: Vec<usize>,
}

/// Parameters for [`build_scenario`].
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioSpec {
    pub sig_sizes: Vec<usize>,
    pub sig_common_sizes: Vec<usize>,
    /// Idiosyncratic items per user, drawn outside every common set.
    pub user_extra_items: usize,
    pub eta: usize,
    pub mu: usize,
    /// Members shared between consecutive SIGs.
    pub overlap: usize,
    pub lambda_target: f64,
}

impl ScenarioSpec {
    /// One SIG of 20 users sharing 10 of 1000 items, 20 extra items each.
    pub fn reference() -> Self {
        Self {
            sig_sizes: vec![20],
            sig_common_sizes: vec![10],
            user_extra_items: 20,
            eta: 1000,
            mu: 20,
            overlap: 0,
            lambda_target: 1.0,
        }
    }
}

/// Draws members, disjoint common sets and per-user extras.
pub fn build_scenario<R: Rng + ?Sized>(spec: &ScenarioSpec, rng: &mut R) -> Result<Scenario> {
    let infeasible = |m: String| Err(DrsError::Infeasible(m));
    let ell = spec.sig_sizes.len();
    if ell == 0 || spec.sig_common_sizes.len() != ell {
        return infeasible("need one common-set size per SIG and at least one SIG".into());
    }
    if spec.sig_sizes.iter().any(|&s| s < 2) || spec.sig_common_sizes.contains(&0) {
        return infeasible("SIGs need at least two members and one common item".into());
    }
    if ell > 1 && spec.sig_sizes.iter().any(|&s| s <= spec.overlap) {
        return infeasible("overlap must be smaller than every SIG".into());
    }
    let unique = spec.sig_sizes.iter().sum::<usize>() - spec.overlap * (ell - 1);
    if unique > spec.mu {
        return infeasible(format!("{unique} distinct members exceed mu = {}", spec.mu));
    }
    let common_total: usize = spec.sig_common_sizes.iter().sum();
    if common_total + spec.user_extra_items > spec.eta {
        return infeasible(format!(
            "eta = {} cannot host {common_total} common items plus {} extras",
            spec.eta, spec.user_extra_items
        ));
    }
    if (unique as f64) < spec.lambda_target * spec.mu as f64 - 1e-9 {
        return infeasible(format!(
            "SIGs cover {unique} of {} users, below lambda_target {}",
            spec.mu, spec.lambda_target
        ));
    }

    let mut users: Vec<usize> = (0..spec.mu).collect();
    users.shuffle(rng);
    let mut items: Vec<usize> = (0..spec.eta).collect();
    items.shuffle(rng);

    let mut sigs = Vec::with_capacity(ell);
    let mut user_cursor = 0;
    let mut item_cursor = 0;
    let mut previous: Vec<usize> = Vec::new();
    for (&size, &common) in spec.sig_sizes.iter().zip(&spec.sig_common_sizes) {
        let shared = if previous.is_empty() { 0 } else { spec.overlap };
        let mut members: Vec<usize> = previous[previous.len() - shared..].to_vec();
        members.extend_from_slice(&users[user_cursor..user_cursor + size - shared]);
        user_cursor += size - shared;
        let common_items = items[item_cursor..item_cursor + common].iter().copied().collect();
        item_cursor += common;
        sigs.push(SigSpec {
            members: members.iter().copied().collect(),
            common_items,
        });
        previous = members;
    }

    let remainder = &items[item_cursor..];
    let mut interests = vec![BTreeSet::new(); spec.mu];
    for sig in &sigs {
        for &u in &sig.members {
            interests[u].extend(sig.common_items.iter().copied());
        }
    }
    for slot in interests.iter_mut() {
        for idx in index::sample(rng, remainder.len(), spec.user_extra_items).iter() {
            slot.insert(remainder[idx]);
        }
    }
    Scenario::new(spec.eta, spec.mu, spec.lambda_target, sigs, interests)
}

//! Property checks shared by the property suite and the acceptance runner.
//! Each returns the first violation as a message.

use rootcause::attribution::{oracle_check_evidence, oracle_check_model};
use rootcause::closedform::{prc, prc_full_obs, prc_posttce_scaling};
use rootcause::counterfactual::*;
use rootcause::joint::joint_prob_mask;
use rootcause::model::{Candidate, CandidateSet, Evidence, Network};

pub type Check = Result<(), String>;

/// Model `index` of the 200-model sequence, with `p` cycling through 2..=6.
pub fn fixture_model(index: u64) -> (MonotoneSem, Network, Vec<Evidence>) {
    let p = 2 + (index % 5) as usize;
    let (sem, mut rng) = oracle_check_model(0, index, p);
    let net = sem_to_cpt(&sem);
    let evidence = oracle_check_evidence(&net, &mut rng);
    (sem, net, evidence)
}

pub fn subsets(bits: u32) -> Vec<CandidateSet> {
    (1..=bits)
        .filter(|s| s & bits == *s && *s != 0)
        .map(|s| CandidateSet::new((1..=32).filter(|i| s >> (i - 1) & 1 == 1).collect()).unwrap())
        .collect()
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

/// Upstream PostTCE never exceeds downstream PostTCE on a chain.
pub fn blocking(sem: &MonotoneSem, evidence: &[Evidence]) -> Check {
    let space = CellSpace::new(sem).map_err(|e| e.to_string())?;
    let p = sem.p();
    for e in evidence {
        let mut tce = Vec::with_capacity(p);
        for k in 1..=p {
            match oracle_posttce_in(&space, sem, &CandidateSet::singleton(k), e) {
                Ok(v) => tce.push(v),
                Err(SemError::ImpossibleEvidence) => break,
                Err(err) => return Err(err.to_string()),
            }
        }
        for w in tce.windows(2).enumerate() {
            let (k, pair) = w;
            if pair[0] > pair[1] + 1e-12 {
                return Err(format!("PostTCE(X{}) = {} > PostTCE(X{}) = {}", k + 1, pair[0], k + 2, pair[1]));
            }
        }
    }
    Ok(())
}

/// Per latent cell, the shortcut indicator is inherited by every superset.
pub fn superset_cause(sem: &MonotoneSem) -> Check {
    let p = sem.p();
    let all = rootcause::model::full_mask(p);
    for cell in sem.cells().map_err(|e| e.to_string())? {
        let mut c = vec![false; 1 << p];
        for k in subsets(all) {
            c[k.mask() as usize] = indicator_c(sem, &cell, &k, IndicatorMethod::Scan).map_err(|e| e.to_string())?;
        }
        for m in 1..(1u32 << p) {
            if !c[m as usize] {
                continue;
            }
            for j in 0..p {
                let sup = m | 1 << j;
                if !c[sup as usize] {
                    return Err(format!("C holds for mask {m:b} but not for {sup:b}"));
                }
            }
        }
    }
    Ok(())
}

/// The prefix `{1..k}` dominates each of its subsets, and prefixes grow in k.
pub fn prefix_dominates(sem: &MonotoneSem, net: &Network, evidence: &[Evidence]) -> Check {
    let space = CellSpace::new(sem).map_err(|e| e.to_string())?;
    let p = sem.p();
    for e in evidence {
        let mut last = 0.0;
        for k in 1..=p {
            let prefix = CandidateSet::prefix_set(k);
            let top = match space.prc(sem, &Candidate::Set(prefix.clone()), e, IndicatorMethod::Scan) {
                Ok(v) => v,
                Err(SemError::ImpossibleEvidence) => break,
                Err(err) => return Err(err.to_string()),
            };
            for j in subsets(prefix.mask()) {
                let v = space.prc(sem, &Candidate::Set(j.clone()), e, IndicatorMethod::Scan).map_err(|e| e.to_string())?;
                if v > top + 1e-12 {
                    return Err(format!("PRC({j}) = {v} > PRC({prefix}) = {top}"));
                }
            }
            let closed = prc(net, &Candidate::Set(prefix.clone()), e).map_err(|e| e.to_string())?;
            if closed < last - 1e-12 {
                return Err(format!("closed-form PRC drops at {prefix}: {closed} < {last}"));
            }
            last = closed;
        }
    }
    Ok(())
}

/// Removes every edge out of `j`, leaving it without a path to the outcome.
pub fn isolate(sem: &MonotoneSem, j: usize) -> Option<MonotoneSem> {
    let cut = |m: &Mechanism| {
        let parents = m.parents();
        let Some(pos) = parents.iter().position(|&q| q == j) else {
            return m.clone();
        };
        let n = parents.len();
        let keep: Vec<usize> = parents.iter().copied().filter(|&q| q != j).collect();
        // freeze the cut parent at 1; rows stay monotone in the others
        let bit = n - 1 - pos;
        let responses = m
            .responses()
            .iter()
            .map(|r| {
                let table = (0..1usize << (n - 1))
                    .map(|row| {
                        let high = row >> bit << (bit + 1);
                        let low = row & ((1 << bit) - 1);
                        r.table[high | 1 << bit | low]
                    })
                    .collect();
                Response { weight: r.weight, table }
            })
            .collect();
        Mechanism::new(keep, responses)
    };
    let mechs: Vec<Mechanism> = (1..=sem.p()).map(|i| cut(sem.mechanism(i))).collect();
    let outcome = cut(sem.outcome_mechanism());
    MonotoneSem::new(sem.names().to_vec(), sem.outcome_name(), mechs, outcome).ok()
}

/// Adding an isolated variable to a candidate set changes nothing.
pub fn irrelevant_variable(sem: &MonotoneSem, j: usize, evidence: &[Evidence]) -> Check {
    let space = CellSpace::new(sem).map_err(|e| e.to_string())?;
    let net = sem_to_cpt(sem);
    let p = sem.p();
    let others = rootcause::model::full_mask(p) & !(1 << (j - 1));
    for e in evidence {
        for k in subsets(others) {
            let mut with: Vec<usize> = k.members().to_vec();
            with.push(j);
            let with = CandidateSet::new(with).unwrap();
            let a = space.prc(sem, &Candidate::Set(k.clone()), e, IndicatorMethod::Scan);
            let b = space.prc(sem, &Candidate::Set(with.clone()), e, IndicatorMethod::Scan);
            match (a, b) {
                (Ok(a), Ok(b)) if close(a, b, 1e-12) => {}
                (Err(SemError::ImpossibleEvidence), Err(SemError::ImpossibleEvidence)) => continue,
                (a, b) => return Err(format!("oracle {k}: {a:?} vs {with}: {b:?}")),
            }
            let a = prc(&net, &Candidate::Set(k.clone()), e).map_err(|e| e.to_string())?;
            let b = prc(&net, &Candidate::Set(with.clone()), e).map_err(|e| e.to_string())?;
            if !close(a, b, 1e-12) {
                return Err(format!("closed form {k}: {a} vs {with}: {b}"));
            }
        }
    }
    Ok(())
}

/// Singleton PRC under full observation with `Y=1` is PostTCE times the
/// product of parental probability ratios.
pub fn scaling(sem: &MonotoneSem, net: &Network) -> Check {
    let space = CellSpace::new(sem).map_err(|e| e.to_string())?;
    let p = sem.p();
    for x in 0..(1u32 << p) {
        if joint_prob_mask(net, x, true) <= 0.0 {
            continue;
        }
        let e = Evidence::full(x, true, p);
        for k in 1..=p {
            let ks = CandidateSet::singleton(k);
            let lhs = prc_full_obs(net, &ks, x).map_err(|e| e.to_string())?;
            let tce = oracle_posttce_in(&space, sem, &ks, &e).map_err(|e| e.to_string())?;
            let rhs = prc_posttce_scaling(net, k, x).map_err(|e| e.to_string())? * tce;
            if !close(lhs, rhs, 1e-12) {
                return Err(format!("X{k} at x={x:b}: {lhs} vs {rhs}"));
            }
        }
    }
    Ok(())
}

/// `none` and the full set sum to one.
pub fn complement(net: &Network, evidence: &[Evidence]) -> Check {
    let full = Candidate::Set(CandidateSet::prefix_set(net.p()));
    for e in evidence {
        let Ok(none) = prc(net, &Candidate::NoRootCause, e) else { continue };
        let all = prc(net, &full, e).map_err(|e| e.to_string())?;
        if !close(none + all, 1.0, 1e-12) {
            return Err(format!("{none} + {all} != 1"));
        }
    }
    Ok(())
}

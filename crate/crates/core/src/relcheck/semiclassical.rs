use std::collections::BTreeMap;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{q, RatFunc, VarId};
use crate::diffop::{BetaMonomial, DiffOp};
use crate::error::Result;
use crate::gklo::{gamma, spec, Gklo};

use super::{Case, Outcome};

/// Minimum number of pairs checked per shape.
pub const MIN_PAIRS: usize = 50;
const MAX_PAIRS: usize = 64;

/// Poisson bracket on the commutative ħ = 0 algebra, from
/// `{β^e, γ} = e β^e` and Leibniz.
pub fn classical_bracket(x: &DiffOp, y: &DiffOp) -> DiffOp {
    let mut out = DiffOp::zero();
    for (e, f) in x.terms() {
        for (e2, g) in y.terms() {
            let mut c = RatFunc::zero();
            let keys: Vec<(u8, u8)> = e
                .exps()
                .iter()
                .chain(e2.exps())
                .map(|p| p.0)
                .collect();
            let mut seen = Vec::new();
            for key in keys {
                if seen.contains(&key) {
                    continue;
                }
                seen.push(key);
                let (i, k) = (key.0 as usize, key.1 as usize);
                let v = VarId::gamma(i, k);
                let a = e.exp(i, k);
                let b = e2.exp(i, k);
                if a != 0 {
                    c = &c + &(f * &g.derivative(v)).scale(&q(a as i64));
                }
                if b != 0 {
                    c = &c - &(g * &f.derivative(v)).scale(&q(b as i64));
                }
            }
            out = &out + &DiffOp::term(e.mul(e2), c);
        }
    }
    out
}

fn at_hbar_zero(x: &DiffOp) -> Result<DiffOp> {
    x.map_coeffs(|c| c.at_hbar_zero())
}

/// `None` when `(1/ħ)[x,y]` at ħ = 0 equals the classical bracket.
pub fn semiclassical_check(x: &DiffOp, y: &DiffOp) -> Result<Option<String>> {
    let c = x.comm(y);
    let mut map: BTreeMap<BetaMonomial, RatFunc> = BTreeMap::new();
    for (m, coef) in c.terms() {
        match coef.div_hbar_at_zero()? {
            Some(r) => {
                map.insert(m.clone(), r);
            }
            None => return Ok(Some(format!("[{}] commutator not divisible by ħ", m))),
        }
    }
    let mut quantum = DiffOp::zero();
    for (m, r) in map {
        quantum = &quantum + &DiffOp::term(m, r);
    }
    let classical = classical_bracket(&at_hbar_zero(x)?, &at_hbar_zero(y)?);
    let d = &quantum - &classical;
    Ok(d.witness().map(|w| w.to_string()))
}

/// Named elements: κ, κ′, γ, the first three modes of every b_i and h_i,
/// padded with products when fewer than [`MIN_PAIRS`] pairs exist.
pub fn semiclassical_elements(g: &Gklo) -> Vec<(String, DiffOp)> {
    let mut els = g.kappa_list();
    for (i, k) in g.shape.gamma_indices() {
        els.push((format!("γ{}_{}", i, k), DiffOp::poly(gamma(i, k))));
    }
    let u = spec(VarId::U);
    for i in g.shape.nodes() {
        let b = g.phi_b(i, &u);
        for r in 1..=3 {
            els.push((format!("b{}^({})", i, r), b.current_mode(VarId::U, r)));
        }
    }
    for i in 1..=g.shape.n {
        let h = g.phi_h(i, &u);
        let p = g.shape.leading_power[i - 1];
        for r in 1..=3 {
            els.push((format!("h{}^({})", i, r), h.current_mode(VarId::U, r - p)));
        }
    }
    let base = els.len();
    let mut a = 0;
    while els.len() * (els.len() - 1) / 2 < MIN_PAIRS && base > 0 {
        let (i, j) = (a % base, (a / base) % base);
        let name = format!("{}·{}", els[i].0, els[j].0);
        let prod = els[i].1.mul(&els[j].1);
        els.push((name, prod));
        a += 1;
    }
    els
}

pub(super) fn cases(g: &Arc<Gklo>) -> Vec<Case> {
    let els = Arc::new(semiclassical_elements(g));
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for a in 0..els.len() {
        for b in a + 1..els.len() {
            pairs.push((a, b));
        }
    }
    if pairs.len() > MAX_PAIRS {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        pairs.shuffle(&mut rng);
        pairs.truncate(MAX_PAIRS);
        pairs.sort();
    }
    pairs
        .into_iter()
        .map(|(a, b)| {
            let els = els.clone();
            Case::new("semiclassical", vec![a, b], move || {
                let w = semiclassical_check(&els[a].1, &els[b].1)?;
                Ok(Outcome::Verdict(
                    w.map(|w| format!("{{{}, {}}}: {}", els[a].0, els[b].0, w)),
                ))
            })
        })
        .collect()
}

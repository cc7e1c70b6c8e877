use std::sync::Arc;

use serde::Serialize;

use crate::exact::{Cyclotomic, Rational};
use crate::groups::{FiniteGroup, GroupHom};
use crate::symplectic::{
    action_from_elements, lambda_scalar, symplectic_reflections, ReflectionParameter, SymplecticAction,
};
use crate::twisted_algebra::TwistedCharacterTable;

use super::{MatchResult, ModcatError};

/// The action of `W = G/ker π` on `U`, defined when `ker π` acts trivially.
pub fn descend_action(action: &SymplecticAction, pi: &GroupHom) -> Result<SymplecticAction, ModcatError> {
    let g = pi.source();
    let w = pi.target();
    let mut matrices = vec![None; w.order()];
    for x in g.elements() {
        let m = action.matrix(x);
        match &matrices[pi.apply(x)] {
            None => matrices[pi.apply(x)] = Some(m.clone()),
            Some(prev) if prev != m => return Err(ModcatError::ActionDoesNotDescend(g.label(x).into())),
            _ => {}
        }
    }
    let matrices = matrices.into_iter().map(|m| m.expect("π is surjective")).collect();
    Ok(action_from_elements(w.clone(), action.space().clone(), matrices)?)
}

/// Restriction along `embedding: H → W`.
pub fn restrict_action(
    w_action: &SymplecticAction,
    h: Arc<FiniteGroup>,
    embedding: &[usize],
) -> Result<SymplecticAction, ModcatError> {
    let matrices = embedding.iter().map(|&x| w_action.matrix(x).clone()).collect();
    Ok(action_from_elements(h, w_action.space().clone(), matrices)?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TransferredValue {
    /// Conjugacy class of `H`.
    pub h_class: usize,
    pub label: String,
    pub size: usize,
    pub value: Cyclotomic,
}

/// `c′` on the ζ-regular reflection classes of `H`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TransferredParameter {
    pub values: Vec<TransferredValue>,
    /// G-classes carrying nonzero `c` over W-classes that meet `H` in no
    /// ζ-regular element; block characters vanish there.
    pub ignored_classes: Vec<String>,
}

impl TransferredParameter {
    pub fn value_at(&self, label: &str) -> Option<&Cyclotomic> {
        self.values.iter().find(|v| v.label == label).map(|v| &v.value)
    }

    pub fn to_parameter(&self, h: &FiniteGroup) -> ReflectionParameter {
        let classes: Vec<(usize, Cyclotomic)> = self.values.iter().map(|v| (v.h_class, v.value.clone())).collect();
        ReflectionParameter::from_classes(h, &classes)
    }
}

/// `c′(C_i^j) = (1/(α(e)|C_i^j|)) Σ_{π(C̃)=C_i} α_{C̃}(C_i^j)·c(C̃)·|C̃|`.
///
/// The support of `c′` is checked against the ζ-regular symplectic
/// reflections of `H` acting on `U` through `W`.
pub fn transfer_parameters(
    result: &MatchResult,
    c: &ReflectionParameter,
    action: &SymplecticAction,
) -> Result<TransferredParameter, ModcatError> {
    let g = result.pi.source();
    if !c.is_class_constant(g) {
        return Err(ModcatError::ParameterNotClassConstant);
    }
    let h = &result.h_group;
    let h_table = &result.h_table;
    let class_values = c.class_values(g);
    let alpha_e = Cyclotomic::from_rational(result.alpha.alpha_e.clone());

    let mut values: Vec<TransferredValue> = h_table
        .classes
        .iter()
        .map(|rc| TransferredValue { h_class: rc.class, label: rc.label.clone(), size: rc.size, value: Cyclotomic::zero() })
        .collect();
    let mut ignored = Vec::new();
    for (gc, cv) in class_values.iter().enumerate() {
        if cv.is_zero() {
            continue;
        }
        let Some(entry) = result.alpha.entry(gc) else {
            ignored.push(g.label(g.classes().representatives[gc]).to_string());
            continue;
        };
        let weight = cv.scale(&Rational::from_integer(entry.g_size as i64));
        for (hc, a) in entry.h_classes.iter().zip(&entry.alpha) {
            let term = a.try_mul(&weight)?;
            values[hc.index].value = values[hc.index].value.try_add(&term)?;
        }
    }
    for v in &mut values {
        let denom = alpha_e.scale(&Rational::from_integer(v.size as i64));
        v.value = v.value.try_div(&denom)?;
    }
    values.retain(|v| !v.value.is_zero());

    let w_action = descend_action(action, &result.pi)?;
    let h_action = restrict_action(&w_action, h.clone(), &result.embedding)?;
    let reflections = symplectic_reflections(&h_action, &result.zeta)?;
    for v in &values {
        if !reflections.classes.iter().any(|rc| rc.class == v.h_class) {
            return Err(ModcatError::UnsupportedTransfer(v.label.clone()));
        }
    }
    Ok(TransferredParameter { values, ignored_classes: ignored })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MoritaEntry {
    pub member: usize,
    pub image: usize,
    pub lambda_g: Cyclotomic,
    pub lambda_h: Cyclotomic,
    pub equal: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MoritaReport {
    pub passed: bool,
    pub bijection: Vec<usize>,
    pub entries: Vec<MoritaEntry>,
}

/// Compares `Λ_M(c)` on the G side with `Λ_{F(M)}(c′)` on the H side for
/// every simple in the block, under the bijection `f` (default: the chosen one).
pub fn verify_morita(
    result: &MatchResult,
    g_table: &TwistedCharacterTable,
    c: &ReflectionParameter,
    c_prime: &TransferredParameter,
    f: Option<&[usize]>,
) -> Result<MoritaReport, ModcatError> {
    let f = f.unwrap_or(&result.bijection);
    let h_param = c_prime.to_parameter(&result.h_group);
    let mut entries = Vec::with_capacity(result.members.len());
    for (a, &m) in result.members.iter().enumerate() {
        let lambda_g = lambda_scalar(g_table, m, c)?;
        let lambda_h = lambda_scalar(&result.h_table, f[a], &h_param)?;
        let equal = lambda_g == lambda_h;
        entries.push(MoritaEntry { member: m, image: f[a], lambda_g, lambda_h, equal });
    }
    Ok(MoritaReport { passed: entries.iter().all(|e| e.equal), bijection: f.to_vec(), entries })
}

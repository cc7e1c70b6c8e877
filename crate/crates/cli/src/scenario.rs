use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use tsra_core::cocycles::{catalog_cocycle, named_coboundary, Cocycle, CocycleKind};
use tsra_core::exact::{Cyclotomic, ExactMatrix};
use tsra_core::groups::{catalog_group, quotient_hom, FiniteGroup, GroupHom, GroupKind};
use tsra_core::modcat::{Candidate, ModcatError};
use tsra_core::symplectic::{
    doubled_cherednik_space, symplectic_reflections, validate_symplectic_action, ReflectionParameter,
    SymplecticAction, SymplecticSpace,
};

use crate::CliError;

fn trivial_cocycle() -> CocycleKind {
    CocycleKind::Trivial
}

/// Input file for every command.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    pub group: GroupKind,
    #[serde(default = "trivial_cocycle")]
    pub cocycle: CocycleKind,
    /// Named coboundary applied to the cocycle, e.g. `dihedral_class_function`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coboundary: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quotient: Option<QuotientSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub representation: Option<RepresentationSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parameter: Option<ParameterSpec>,
    /// Extra `(H,ζ)` pairs, tried before the enumerated ones.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub candidates: Vec<CandidateSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

/// `"identity"`, `"auto"` (kernel of the representation) or explicit kernel generators.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum QuotientSpec {
    Named(String),
    Kernel { kernel: Vec<String> },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum RepresentationSpec {
    /// Generator images on `U`; the form defaults to the standard one.
    Matrices {
        conductor: u64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        form: Option<ExactMatrix>,
        matrices: Vec<ExactMatrix>,
    },
    /// `U = h ⊕ h*` from generator images on `h`.
    CherednikDouble { h_rep: HRep },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HRep {
    pub conductor: u64,
    pub matrices: Vec<ExactMatrix>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ParameterSpec {
    /// Constant on the class of each representative.
    Classes { class_reps: Vec<String>, values: Vec<Cyclotomic> },
    /// One value per listed element; not necessarily conjugation invariant.
    Elements { elements: Vec<String>, values: Vec<Cyclotomic> },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CandidateSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    /// Elements of `W` generating `H`.
    pub generators: Vec<String>,
    #[serde(default = "trivial_cocycle")]
    pub cocycle: CocycleKind,
}

/// The objects a scenario describes, validated.
#[derive(Debug, Clone)]
pub struct Setup {
    pub group: Arc<FiniteGroup>,
    pub psi: Cocycle,
    pub action: Option<SymplecticAction>,
    pub c: ReflectionParameter,
}

fn invalid(msg: impl Into<String>) -> CliError {
    CliError::Invalid(msg.into())
}

fn check_conductor(matrices: &[ExactMatrix], conductor: u64) -> Result<(), CliError> {
    for m in matrices {
        for x in m.to_rows().iter().flatten() {
            let n = x.reduce_conductor().conductor();
            if conductor == 0 || conductor % n != 0 {
                return Err(invalid(format!("matrix entry {x} does not lie in Q(ζ_{conductor})")));
            }
        }
    }
    Ok(())
}

impl Scenario {
    pub fn parse(text: &str) -> Result<Scenario, CliError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn build(&self) -> Result<Setup, CliError> {
        let group = Arc::new(catalog_group(&self.group)?);
        let mut psi = catalog_cocycle(group.clone(), &self.cocycle)?;
        if let Err(v) = psi.validate() {
            return Err(invalid(format!("cocycle identity fails: {v:?}")));
        }
        if let Some(name) = &self.coboundary {
            let delta = named_coboundary(&group, name)?;
            psi = psi.twist(&delta)?;
        }
        let action = match &self.representation {
            None => None,
            Some(RepresentationSpec::Matrices { conductor, form, matrices }) => {
                check_conductor(matrices, *conductor)?;
                let space = match form {
                    Some(f) => SymplecticSpace::new(f.clone())?,
                    None => {
                        let dim = matrices.first().map(ExactMatrix::rows).ok_or_else(|| invalid("no matrices"))?;
                        if dim % 2 != 0 {
                            return Err(invalid(format!("odd dimension {dim} without an explicit form")));
                        }
                        SymplecticSpace::standard(dim / 2)
                    }
                };
                self.generator_count(&group, matrices.len())?;
                Some(validate_symplectic_action(group.clone(), space, matrices)?)
            }
            Some(RepresentationSpec::CherednikDouble { h_rep }) => {
                check_conductor(&h_rep.matrices, h_rep.conductor)?;
                self.generator_count(&group, h_rep.matrices.len())?;
                Some(doubled_cherednik_space(group.clone(), &h_rep.matrices)?)
            }
        };
        let c = self.parameter(&group)?;
        if let Some(a) = &action {
            let reflections = symplectic_reflections(a, &psi)?;
            c.check_support(&group, &reflections)?;
        } else if !c.is_zero() {
            return Err(invalid("a parameter needs a representation"));
        }
        Ok(Setup { group, psi, action, c })
    }

    fn generator_count(&self, group: &FiniteGroup, got: usize) -> Result<(), CliError> {
        let want = group.generators().len();
        if got != want {
            return Err(invalid(format!("expected {want} generator matrices, got {got}")));
        }
        Ok(())
    }

    fn parameter(&self, group: &FiniteGroup) -> Result<ReflectionParameter, CliError> {
        let parse = |label: &str| group.parse_word(label);
        match &self.parameter {
            None => Ok(ReflectionParameter::zero()),
            Some(ParameterSpec::Classes { class_reps, values }) => {
                if class_reps.len() != values.len() {
                    return Err(invalid("parameter class_reps and values differ in length"));
                }
                let mut classes = Vec::with_capacity(values.len());
                for (label, v) in class_reps.iter().zip(values) {
                    let class = group.class_of(parse(label)?);
                    if classes.iter().any(|(k, _)| *k == class) {
                        return Err(invalid(format!("class of {label} is listed twice")));
                    }
                    classes.push((class, v.clone()));
                }
                Ok(ReflectionParameter::from_classes(group, &classes))
            }
            Some(ParameterSpec::Elements { elements, values }) => {
                if elements.len() != values.len() {
                    return Err(invalid("parameter elements and values differ in length"));
                }
                let mut map = BTreeMap::new();
                for (label, v) in elements.iter().zip(values) {
                    map.insert(parse(label)?, v.clone());
                }
                Ok(ReflectionParameter::from_elements(map))
            }
        }
    }

    /// `π: G → W`; the identity when no quotient is given.
    pub fn quotient(&self, setup: &Setup) -> Result<GroupHom, CliError> {
        let g = &setup.group;
        let kernel: Vec<usize> = match &self.quotient {
            None => return Ok(GroupHom::identity(g.clone())),
            Some(QuotientSpec::Named(n)) if n == "identity" => return Ok(GroupHom::identity(g.clone())),
            Some(QuotientSpec::Named(n)) if n == "auto" => {
                let action = setup.action.as_ref().ok_or_else(|| invalid("quotient \"auto\" needs a representation"))?;
                action.kernel().to_vec()
            }
            Some(QuotientSpec::Named(n)) => return Err(invalid(format!("unknown quotient {n:?}"))),
            Some(QuotientSpec::Kernel { kernel }) => {
                // Normal closure of the listed elements.
                let mut gens = Vec::new();
                for label in kernel {
                    let k = g.parse_word(label)?;
                    gens.extend(g.elements().map(|h| g.conjugate(k, h)));
                }
                gens.sort_unstable();
                gens.dedup();
                g.generated_subgroup(&gens)
            }
        };
        Ok(quotient_hom(g.clone(), &kernel)?)
    }

    pub fn user_candidates(&self, w: &FiniteGroup) -> Result<Vec<Candidate>, CliError> {
        let mut out = Vec::with_capacity(self.candidates.len());
        for (i, cand) in self.candidates.iter().enumerate() {
            let mut gens = Vec::with_capacity(cand.generators.len());
            for label in &cand.generators {
                gens.push(w.parse_word(label)?);
            }
            let elements = w.generated_subgroup(&gens);
            let name = cand.name.clone().unwrap_or_else(|| format!("user candidate {i}"));
            let kind = cand.cocycle.clone();
            let cand = Candidate::with_cocycle(w, &elements, name, |h| {
                catalog_cocycle(h.clone(), &kind).map_err(ModcatError::from)
            })
            ?;
            out.push(cand);
        }
        Ok(out)
    }
}

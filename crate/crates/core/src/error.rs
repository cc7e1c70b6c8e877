use crate::cocycles::CocycleError;
use crate::exact::ExactError;
use crate::groups::GroupError;
use crate::modcat::ModcatError;
use crate::symplectic::SymplecticError;
use crate::twisted_algebra::AlgebraError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Cocycle(#[from] CocycleError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Symplectic(#[from] SymplecticError),
    #[error(transparent)]
    Modcat(#[from] ModcatError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

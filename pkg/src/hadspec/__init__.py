"""Wired Hadamard tensor products, eigenvalue perturbation calculus, and a
randomized verification suite for the identities connecting them."""

from .perm import (
    Perm,
    CycleDecomposition,
    cycle_decomposition,
    sigma_sub_l,
    refines_vec,
    refines_perm,
    specifying_vector,
    expand_specifying_vector,
    perm_to_matrix,
    all_perms,
    random_perm,
)
from .tensor import (
    DenseTensor,
    CapacityError,
    tensor_dot,
    contract_last,
    contract_last_matrix,
    eval_on_matrices,
    conjugate,
    is_symmetric_tensor,
    symmetrize,
    basis_matrix,
    tensor_to_json,
    tensor_from_json,
    save_tensor,
    load_tensor,
    set_paranoid,
)
from .blocks import (
    BlockPartition,
    partition_from_mu,
    split_in_out,
    is_block_constant,
    make_block_constant,
    is_mu_symmetric,
    stabilizer_generators,
    haar_orthogonal,
    random_block_orthogonal,
    block_diagonalizer,
)
from .hadamard import (
    sigma_hadamard,
    diag_sigma,
    eval_diag_sigma,
    dot_hadamard_closed_form,
)
from .lifts import (
    divided_difference_out,
    lift_in,
    lift_tau,
    lift_cycle,
    delta_matrix,
    kp_sum,
)
from .eig import (
    SpectralDecomposition,
    PerturbationPath,
    ConvergenceError,
    eigh,
    h_of,
    eigen_expansion_residual,
    offdiag_expansion_residual,
)

__version__ = "0.1.0"

"""Numerical tolerances shared by every contract check."""

HERMITICITY = 1e-12
POSITIVITY = -1e-12
TRACE = 1e-12
UNITARITY = 1e-12
EIGEN_RESIDUAL = 1e-10
# looser gate for inputs to eigen-decomposition
EIGEN_HERMITICITY = 1e-10
ORTHONORMALITY = 1e-10

WITNESS_POSITIVITY = -1e-9
COMPLETENESS = 1e-10
# closed-form margins in [-JM_BOUNDARY, JM_BOUNDARY] are reported as "boundary"
JM_BOUNDARY = 1e-9
PARALLEL = 1e-12

# a slack below -VIOLATION counts as a violated inequality
VIOLATION = 1e-9

MAX_JOINT_DIM = 16

from .functionals import (EntropyFunctional, SymmetricFunctional, binding_information_functional,
                          elemental_inequalities, functional_from_measure, joint_entropy_functional,
                          multi_information_functional, parse_symmetric_target, parse_target,
                          symmetric_generators, symmetric_measures, symmetrize)
from .prover import (CONES, ProofCertificate, Refutation, prove, prove_general, prove_symmetric, prove_target,
                     verify_certificate, verify_refutation)

"""Zeros of z - conj(p(z)), extremal polynomials and their Hubbard trees."""

from .errors import (CertificateMismatch, CollapsedCriticalPoints, DegenerateZero,
                     EmbeddingOverlap, HarmonicValenceError, InvalidConfiguration, InvalidTree,
                     LeftHalfplane, NonConvergence, NotAZero, NotUnitModulus,
                     RotatedConfigInvalid, TooLarge, VerificationFailed, WrongParity)
from .extremal import (CriticalConfiguration, ExtremalSolution, are_conjugate, are_equivalent,
                       normalize, residual, rotate_solution, search_classes, seed_from_paper_g,
                       seed_from_tree, solve_newton, verify_solution)
from .harmonic import (HarmonicZero, Orientation, ZeroSet, classify_zero, find_harmonic_zeros,
                       winding_certificate)
from .poly import ComplexPolynomial, compose, derivative, evaluate
from .roots import RootSet, find_all_roots, polish_root
from .trees import (HubbardTree, Node, build_hubbard_trees, catalan, count_classes, embed_tree,
                    enumerate_binary_trees, mirror, real_vertex_bijection, validate_tree)

__version__ = "0.1.0"

"""Exact decision engine and certificates for periodic dependence of q-difference equation solutions."""

from .constgroup import CaseTag, ConstGroup, ConstElem, classify_lambda
from .criterion import InternalInvariantError, Verdict, build_D, decide, exponent_summary
from .ratfun import FactoredRatFun, MultFunction, RootRef, apply_phi, apply_sigma_q, apply_sigma_zeta
from .witness import Witness, brute_force_oracle, synthesize, verify

__all__ = [
    "CaseTag",
    "ConstElem",
    "ConstGroup",
    "FactoredRatFun",
    "InternalInvariantError",
    "MultFunction",
    "RootRef",
    "Verdict",
    "Witness",
    "apply_phi",
    "apply_sigma_q",
    "apply_sigma_zeta",
    "brute_force_oracle",
    "build_D",
    "classify_lambda",
    "decide",
    "exponent_summary",
    "synthesize",
    "verify",
]

"""Finite-type recognition for skew-symmetrizable matrices via cyclically
oriented diagrams and positive quasi-Cartan companions."""

from .errors import ClusterFiniteError
from .matrix import SkewSymmetrizableMatrix, Symmetrizer, mutate
from .quasi_cartan import QuasiCartanMatrix
from .recognizer import Verdict, class_type, explore_class, oracle_finite_type, recognize
from .roots import CartanKillingType, cartan_killing_type

__all__ = [
    "CartanKillingType",
    "ClusterFiniteError",
    "QuasiCartanMatrix",
    "SkewSymmetrizableMatrix",
    "Symmetrizer",
    "Verdict",
    "cartan_killing_type",
    "class_type",
    "explore_class",
    "mutate",
    "oracle_finite_type",
    "recognize",
]

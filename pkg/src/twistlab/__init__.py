"""Combinatorial Dehn twists on plumbed surfaces and their zigzag-algebra shadows."""

from __future__ import annotations

from .cells import CombSurface, SurfaceError
from .curves import BoundaryPoint, Curve, CurveError, NamedCurveSet, imin, reduce
from .surface import PlumbingGraph, build_plumbing
from .twists import TwistWord, WordError, apply_word, is_trivial_word
from .zigzag import AlgebraError, ZigzagAlgebra, hf_dim, twist_word_complex, vertex_object, zigzag_from_tree

__all__ = [
    "AlgebraError", "BoundaryPoint", "CombSurface", "Curve", "CurveError", "NamedCurveSet",
    "PlumbingGraph", "SurfaceError", "TwistWord", "WordError", "ZigzagAlgebra", "apply_word",
    "build_plumbing", "hf_dim", "imin", "is_trivial_word", "reduce", "twist_word_complex",
    "vertex_object", "zigzag_from_tree",
]

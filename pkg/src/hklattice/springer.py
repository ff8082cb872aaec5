"""Degree tables of the reflection groups W(F4) and W(E6) and the eigenspace
bounds they predict, with an optional cross-check by group enumeration."""

from __future__ import annotations

from dataclasses import dataclass
from math import prod
from typing import Dict, Optional, Tuple

import numpy as np

from .isometry import (
    conjugacy_partition,
    eigen_multiplicities,
    orthogonal_group,
)
from .lattice import catalog


class SpringerError(ValueError):
    pass


@dataclass(frozen=True)
class ReflectionGroupData:
    name: str
    degrees: Tuple[int, ...]
    codegrees: Tuple[int, ...]
    lattice_spec: str  # definite lattice whose orthogonal group realises the group

    @property
    def rank(self) -> int:
        return len(self.degrees)

    @property
    def order(self) -> int:
        return prod(self.degrees)


GROUPS: Dict[str, ReflectionGroupData] = {
    "f4": ReflectionGroupData("F4", (2, 6, 8, 12), (0, 4, 6, 10), "D4"),
    "e6": ReflectionGroupData("E6", (2, 5, 6, 8, 9, 12), (0, 3, 4, 6, 7, 10), "E6"),
}


def get_group(name: str) -> ReflectionGroupData:
    try:
        return GROUPS[name.lower()]
    except KeyError:
        raise SpringerError(f"unknown reflection group {name!r}; expected one of {sorted(GROUPS)}") from None


def _check_e(e: int):
    if e < 1:
        raise SpringerError("e must be a positive integer")


def lam(g: ReflectionGroupData, e: int) -> int:
    """Number of degrees divisible by ``e``."""
    _check_e(e)
    return sum(1 for d in g.degrees if d % e == 0)


def lam_star(g: ReflectionGroupData, e: int) -> int:
    """Number of codegrees divisible by ``e`` (zero counts for every ``e``)."""
    _check_e(e)
    return sum(1 for d in g.codegrees if d % e == 0)


def springer_report(g: ReflectionGroupData, e: int, enumerate_group: bool = False,
                    element_cap: Optional[int] = None, workers: int = 1) -> dict:
    """Predicted eigenspace data; with ``enumerate_group`` also the enumerated values.

    The enumeration runs over the full orthogonal group of the lattice and over
    its reflection subgroup; the maximal-eigenspace elements are partitioned
    into conjugacy classes in both.
    """
    lv, ls = lam(g, e), lam_star(g, e)
    out = {
        "group": g.name,
        "e": e,
        "degrees": list(g.degrees),
        "codegrees": list(g.codegrees),
        "lambda": lv,
        "lambda_star": ls,
        "regular_uniqueness": lv == ls,
        "predicted_max_eigendim": lv,
    }
    if not enumerate_group:
        return out
    L = catalog(g.lattice_spec)
    G = orthogonal_group(L, element_cap, workers)
    mult = eigen_multiplicities(G, e)
    best = int(mult.max())
    W = set(G.reflection_subgroup)
    in_W = np.array([M in W for M in G.elements])
    w_best = int(mult[in_W].max())
    S = [G.elements[k] for k in np.nonzero(mult == best)[0]]
    S_W = [G.elements[k] for k in np.nonzero((mult == w_best) & in_W)[0]]
    classes_O = conjugacy_partition(G, S) if best > 0 else []
    classes_W = conjugacy_partition(G, S_W, G.reflections) if w_best > 0 else []
    out.update({
        "lattice": g.lattice_spec,
        "orthogonal_group_order": G.order,
        "reflection_subgroup_order": len(W),
        "enumerated_max_eigendim": best,
        "enumerated_max_eigendim_reflection_subgroup": w_best,
        "maximal_elements": len(S),
        "classes_in_orthogonal_group": len(classes_O),
        "classes_in_reflection_subgroup": len(classes_W),
        "cross_check": best == lv and w_best == lv,
    })
    return out

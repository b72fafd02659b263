"""Searching for finite developments.

A development extends every element of a permutoid to a full permutation
of a finite superset, respecting every derived composition constraint.
Finding one is a backtracking search; not finding one within a bound
proves nothing beyond that bound.

Run:  python demos/03_developability_search.py
"""

from permutoid_lab import (
    Development,
    DevelopmentProblem,
    ExhaustedUpTo,
    Found,
    FreeGroup,
    cameron_permutoid,
    search_development,
    validate_permutoid,
    verify_development,
)
from permutoid_lab.errors import DevelopmentError

# The two restrictions of the swap develop at size two: both extend to
# the swap itself.
remark = validate_permutoid(2, [[(0, 0), (1, 1)], [(0, 1)], [(1, 0)]])
verdict = search_development(DevelopmentProblem(remark, max_ground=4))
assert isinstance(verdict, Found)
print("remark permutoid developed:", verdict.development.maps)

# The radius-1 ball of the infinite cyclic group lives on five points;
# its smallest development wraps translation around a five-cycle.
cam = cameron_permutoid(FreeGroup(1), 1)
verdict = search_development(DevelopmentProblem(cam.permutoid, max_ground=8))
print(
    "\ninfinite-cyclic ball developed at size",
    verdict.development.ground_size,
    "with translation map",
    verdict.development.maps[1],
)

# verify_development re-derives every constraint from the graphs, so a
# tampered witness is caught independently of the search engine.
maps = list(verdict.development.maps)
maps[1] = tuple((x + 2) % 5 for x in range(5))
try:
    verify_development(cam.permutoid, Development(5, tuple(maps)))
except DevelopmentError as exc:
    print("tampered development rejected:", exc.code)

# Some permutoids are never developable: here the composition constraint
# forces the inverse of one element to extend another, contradicting its
# own graph.  The search exhausts every size up to the bound.
unsat = validate_permutoid(
    3, [[(0, 0), (1, 1), (2, 2)], [(0, 1), (1, 0)], [(0, 1), (2, 0)]]
)
verdict = search_development(DevelopmentProblem(unsat, max_ground=6))
assert isinstance(verdict, ExhaustedUpTo)
print(
    "\nunsatisfiable instance: exhausted all sizes up to",
    verdict.max_ground,
    "after",
    verdict.nodes_explored,
    "nodes (not a proof of non-developability in general)",
)

"""Self-check suites over groups, reductions, centralizers and boundary angles.

Every check reads the constant tables through their modules at call time, so
a patched (corrupted) table shows up as a named failure rather than a crash.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import golden, groups, reduction, schur

SUITES = ("groups", "reduction", "centralizer", "boundary")


@dataclass(frozen=True)
class Check:
    suite: str
    name: str
    passed: bool
    detail: str = ""


def _guard(suite: str, name: str, fn: Callable[[], tuple[bool, str]]) -> Check:
    try:
        ok, detail = fn()
    except Exception as exc:  # a broken table must be reported, not raised
        return Check(suite, name, False, f"{type(exc).__name__}: {exc}")
    return Check(suite, name, bool(ok), detail)


def groups_suite() -> list[Check]:
    out = []
    built = {}

    def order(label):
        def run():
            g = groups.closure(groups.GENERATOR_TABLE[label], label=label)
            built[label] = g
            return g.order == groups.EXPECTED_ORDER[label], f"order {g.order}"
        return run

    def presentation(label):
        def run():
            return groups.verify_presentation(built[label]), str(groups.PRESENTATIONS[label])
        return run

    def intersection(tag):
        def run():
            common = built["I"].elements & built[groups.PARTNER[tag]].elements
            return common == built[tag].elements, f"|I cap I_{tag}| = {len(common)}"
        return run

    for label in groups.GENERATOR_TABLE:
        out.append(_guard("groups", f"closureOrder[{label}]", order(label)))
    for label in groups.GENERATOR_TABLE:
        out.append(_guard("groups", f"presentation[{label}]", presentation(label)))
    for tag in groups.SUBGROUPS:
        out.append(_guard("groups", f"intersection[{tag}]", intersection(tag)))
    return out


def _frame() -> reduction.ReductionFrame:
    return reduction.ReductionFrame(reduction.R_FRAME)


def reduction_suite() -> list[Check]:
    out = [_guard("reduction", "frameCheck", lambda: (_frame().is_exact_frame(), "R R^T = 2(2+tau) I"))]

    def source(label):
        def run():
            dec = reduction.reduce_rep(_frame(), groups.GENERATOR_TABLE[label])
            top, bottom = reduction.SOURCE_BLOCKS[label]
            ok = (dec.off_block_residual == 0
                  and reduction.blocks_equal_exact(dec.top, top)
                  and reduction.blocks_equal_exact(dec.bottom, bottom))
            return ok, f"off-block residual {dec.off_block_residual:g}"
        return run

    for label in ("I", "T", "D10", "D6"):
        out.append(_guard("reduction", f"reduceRep[{label}]", source(label)))

    def irreps():
        dec = reduction.reduce_rep(_frame(), groups.I_GENERATORS)
        labels = (reduction.identify_irrep(dec.top), reduction.identify_irrep(dec.bottom))
        return labels == ("T1", "T2"), " + ".join(labels)

    out.append(_guard("reduction", "identifyIrrep[I]", irreps))
    out.append(_guard("reduction", "qExactOrthogonal",
                      lambda: (golden.frame_check(reduction.Q_SCALED), "Q Q^T = 16 I")))
    for name in ("P1", "P2", "R1", "R2"):
        def orth(name=name):
            m = getattr(reduction, name)
            err = float(np.abs(m @ m.T - np.eye(3)).max())
            return err < reduction.FLOAT_TOL, f"max |M M^T - I| = {err:.2e}"
        out.append(_guard("reduction", f"orthogonal[{name}]", orth))

    def pattern(tag):
        def run():
            dec = reduction.reduce_rep(_frame(), groups.GENERATOR_TABLE[tag])
            red = reduction.apply_subgroup_reducer(reduction.reducers()[tag], dec)
            return red.pattern_residual <= reduction.FLOAT_TOL, f"pattern residual {red.pattern_residual:.2e}"
        return run

    for tag in groups.SUBGROUPS:
        out.append(_guard("reduction", f"blockPattern[{tag}]", pattern(tag)))
    return out


def centralizer_suite(samples: int = 100, seed: int = 0) -> list[Check]:
    rng = np.random.default_rng(seed)
    out = []
    for tag in groups.SUBGROUPS:
        fam = schur.family(tag)
        angles = rng.uniform(-math.pi, math.pi, size=(samples, fam.arity))
        others = rng.uniform(-math.pi, math.pi, size=(samples, fam.arity))

        def commute(fam=fam, angles=angles):
            worst = max(schur.commutation_residual(fam, a) for a in angles)
            return worst < 1e-12, f"max residual {worst:.2e}"

        def det(fam=fam, angles=angles):
            worst = max(abs(np.linalg.det(fam.evaluate(a)) - 1) for a in angles)
            return worst < 1e-12, f"max |det - 1| = {worst:.2e}"

        def law(fam=fam, angles=angles, others=others):
            worst = max(
                float(np.abs(fam.evaluate(a) @ fam.evaluate(b) - fam.evaluate(a + b)).max())
                for a, b in zip(angles, others)
            )
            return worst < 1e-12, f"max |M(a)M(b) - M(a+b)| = {worst:.2e}"

        out.append(_guard("centralizer", f"commutation[{tag}]", commute))
        out.append(_guard("centralizer", f"determinant[{tag}]", det))
        out.append(_guard("centralizer", f"groupLaw[{tag}]", law))
    return out


def boundary_suite() -> list[Check]:
    out = []
    for tag in groups.SUBGROUPS:
        def solutions(tag=tag):
            fam = schur.family(tag)
            found = fam.boundary_solutions()
            expected = [schur.AngleParameter(v) for v in schur.CLOSED_FORMS[tag]]
            matched = all(any(e.close_to(f, 1e-9) for f in found) for e in expected)
            return matched and len(found) == len(expected), f"{len(found)} solutions"

        def decomposes(tag=tag):
            fam = schur.family(tag)
            worst = max(schur.off_block_residual_at(fam, s) for s in fam.boundary_solutions())
            return worst < 1e-10, f"max off-block residual {worst:.2e}"

        def irreps(tag=tag):
            fam = schur.family(tag)
            labels = [schur.boundary_irreps(fam, s) for s in fam.boundary_solutions()]
            ok = all(sorted(pair) == ["T1", "T2"] for pair in labels)
            return ok, ", ".join("+".join(p) for p in labels)

        out.append(_guard("boundary", f"solutionSet[{tag}]", solutions))
        out.append(_guard("boundary", f"partnerReduces[{tag}]", decomposes))
        out.append(_guard("boundary", f"partnerIrreps[{tag}]", irreps))
    return out


RUNNERS = {
    "groups": groups_suite,
    "reduction": reduction_suite,
    "centralizer": centralizer_suite,
    "boundary": boundary_suite,
}


def run(only: str | None = None) -> list[Check]:
    names = SUITES if only is None else (only,)
    checks: list[Check] = []
    for name in names:
        checks.extend(RUNNERS[name]())
    return checks


def format_table(checks: list[Check]) -> str:
    width = max((len(c.suite) + len(c.name) + 1 for c in checks), default=10)
    lines = [f"{'check':<{width}}  result  detail"]
    for c in checks:
        lines.append(f"{c.suite + '.' + c.name:<{width}}  {'PASS' if c.passed else 'FAIL':<6}  {c.detail}")
    failed = [c for c in checks if not c.passed]
    lines.append(f"{len(checks) - len(failed)}/{len(checks)} checks passed")
    return "\n".join(lines)

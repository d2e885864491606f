"""Suite-wide invariant audit.

Every preorder built anywhere in the test run is checked to have a strict
part that is a strict partial order, and every classification is checked for
``atoms | quarks <= irreducibles``. Counts are reported at the end of the run.
"""

from __future__ import annotations

import sys

import numpy as np
import pytest

from premonoid import classify as classify_mod
from premonoid import preorder as preorder_mod

AUDIT = {"preorders": 0, "classifications": 0, "violations": []}


def audit_preorder(p) -> None:
    h = np.asarray(p.holds, dtype=bool)
    s = h & ~h.T
    problems = []
    if not h.diagonal().all():
        problems.append("not reflexive")
    if np.any(s.diagonal()):
        problems.append("strict part not irreflexive")
    if np.any(s & s.T):
        problems.append("strict part not asymmetric")
    if h.size and np.any((s.astype(np.int32) @ s.astype(np.int32) > 0) & ~s):
        problems.append("strict part not transitive")
    AUDIT["preorders"] += 1
    if problems:
        AUDIT["violations"].append((p.kind, problems))
        raise AssertionError(f"preorder {p.kind}: {problems}")


def audit_classification(rep) -> None:
    f, rel = rep.flags, rep.relative
    bad = []
    for i in range(len(rep.labels)):
        if (f["atom"][i] is True or f["quark"][i] is True) and f["irreducible"][i] is False:
            bad.append(i)
        if rep.exact and (f["atom"][i] or f["quark"][i]) and f["irreducible"][i] is not True:
            bad.append(i)
        if (rel["atom"][i] or rel["quark"][i]) and not rel["irreducible"][i]:
            bad.append(i)
    AUDIT["classifications"] += 1
    if bad:
        AUDIT["violations"].append((rep.kind, [rep.labels[i] for i in bad]))
        raise AssertionError(f"atoms or quarks outside the irreducibles: {[rep.labels[i] for i in bad]}")


preorder_mod._CONSTRUCTION_HOOKS.append(audit_preorder)
classify_mod._CLASSIFICATION_HOOKS.append(audit_classification)


@pytest.fixture(scope="session")
def audit():
    return AUDIT


def pytest_terminal_summary(terminalreporter):
    terminalreporter.write_sep("-", "invariant audit")
    terminalreporter.write_line(
        f"preorders audited: {AUDIT['preorders']}, classifications audited: {AUDIT['classifications']}, "
        f"violations: {len(AUDIT['violations'])}"
    )
    acceptance = sys.modules.get("tests.test_acceptance")
    if acceptance is not None and acceptance.RESULTS:
        terminalreporter.write_sep("-", "acceptance criteria")
        for line in acceptance.RESULTS:
            terminalreporter.write_line(line)

"""Acceptance gate: one test per criterion, each printing a single PASS/FAIL line.

Run alone with ``pytest tests/test_acceptance.py -v`` or as a script with
``python tests/test_acceptance.py``.
"""

from __future__ import annotations

import random
import sys
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

import conftest  # noqa: E402
from conftest import CORPUS, EX1_WEIGHTS, EX2_WEIGHTS, W, random_diagonal_rank2, random_weights  # noqa: E402
from nonresonance.arrangement import builtin_arrangement, decone  # noqa: E402
from nonresonance.lattice import betti_numbers, build_lattice, dense_edges  # noqa: E402
from nonresonance.milnor import spectrum_bounds  # noqa: E402
from nonresonance.nonres import AH, KOHNO, STV, THM33, check_condition, prop4_shift, residue, translate_exists  # noqa: E402
from nonresonance.oscomplex import aomoto_cohomology, aomoto_complex, nbc_basis  # noqa: E402
from nonresonance.pi1oracle import fox_jacobian, milnor_spectrum_exact, randell_presentation, wiring_diagram  # noqa: E402

ARR = {name: builtin_arrangement(name) for name in CORPUS}
LAT = {name: build_lattice(A) for name, A in ARR.items()}
PLANE_ORACLE_CORPUS = CORPUS


def euler(seq) -> int:
    return sum((-1) ** q * x for q, x in enumerate(seq))


def report(number: int, title: str, ok: bool, detail: str = "") -> None:
    line = f"ACCEPTANCE {number:>2} {title}: {'PASS' if ok else 'FAIL'}"
    if detail:
        line += f"  [{detail}]"
    conftest.ACCEPTANCE_LINES.append(line)
    print(line)


def _shared_systems():
    """Rank-1 and diagonal rank-2 systems passing ah(H) for some H, cycled over the corpus."""
    rng = random.Random(4_100)
    rank1, rank2 = [], []
    names = list(CORPUS)
    i = 0
    while len(rank1) < 200 or len(rank2) < 50:
        name = names[i % len(names)]
        i += 1
        m = ARR[name].m
        want_rank2 = len(rank2) < 50 and (len(rank1) >= 200 or i % 5 == 0)
        S = random_diagonal_rank2(rng, m) if want_rank2 else random_weights(rng, m)
        H = translate_exists(S, LAT[name])
        if H is None:
            continue
        (rank2 if want_rank2 else rank1).append((name, S, H))
    return rank1, rank2


_SYSTEMS = None


def systems():
    global _SYSTEMS
    if _SYSTEMS is None:
        _SYSTEMS = _shared_systems()
    return _SYSTEMS


def test_criterion_01_dense_edge_goldens():
    got1 = {X.indices for X in dense_edges(ARR["cdo-ex1"])}
    got2 = {X.indices for X in dense_edges(ARR["cdo-ex2"])}
    want1 = {(j,) for j in range(1, 6)} | {(1, 2, 5), (3, 4, 5)}
    want2 = {(j,) for j in range(1, 7)} | {(1, 2, 6), (1, 3, 5), (3, 4, 6)}
    ok = got1 == want1 and got2 == want2
    report(1, "dense-edge goldens", ok)
    assert ok


def test_criterion_02_five_line_example():
    L, S = LAT["cdo-ex1"], W(*EX1_WEIGHTS)
    stv = check_condition(S, STV, L).holds
    none = translate_exists(S, L) is None
    ah_fail = all(
        (not rep.holds) and any(root == -1 for _, root in rep.violations)
        for rep in (check_condition(S, AH, L, H) for H in range(1, 6))
    )
    ok = stv and none and ah_fail
    report(2, "five-line example", ok, f"stv={stv} translate=None:{none} every ah(H) hits -1:{ah_fail}")
    assert ok


def test_criterion_03_six_line_example():
    L, S = LAT["cdo-ex2"], W(*EX2_WEIGHTS)
    stv = check_condition(S, STV, L).holds
    none = translate_exists(S, L) is None
    res = {X: residue(S, L.find(X), L).value for X in [(1, 2, 6), (1, 3, 5), (3, 4, 6)]}
    ok = stv and none and all(v == -1 for v in res.values())
    report(3, "six-line example", ok, f"residues {sorted({str(v) for v in res.values()})}")
    assert ok


def test_criterion_04_shift_property_suite():
    rank1, rank2 = systems()
    failures = []
    for name, S, H in rank1 + rank2:
        out = prop4_shift(S, H, LAT[name])
        if not check_condition(out, STV, LAT[name]).holds:
            failures.append((name, S, H))
    ok = not failures and len(rank1) == 200 and len(rank2) == 50
    report(4, "integer shift yields stv", ok, f"{len(rank1)} rank-1, {len(rank2)} rank-2, {len(failures)} failures")
    assert ok


def test_criterion_05_vanishing_suite():
    rank1, rank2 = systems()
    rng = random.Random(5_000)
    pool = [(n, S) for n, S, _ in rank1 + rank2]
    pool += [(n, prop4_shift(S, H, LAT[n])) for n, S, H in rank1[:60] + rank2[:20]]
    for i in range(200):
        n = CORPUS[i % len(CORPUS)]
        pool.append((n, random_weights(rng, ARR[n].m)))
    tested, bad = 0, []
    for n, S in pool:
        if not check_condition(S, STV, LAT[n]).holds:
            continue
        tested += 1
        h = aomoto_cohomology(aomoto_complex(ARR[n], S, lattice=LAT[n]))
        chi = euler(betti_numbers(LAT[n]))
        if h != [0, 0, S.rank * chi]:
            bad.append((n, h))
    chis = {n: euler(betti_numbers(LAT[n])) for n in ("cdo-ex1", "braid-a3", "cdo-ex2")}
    ok = tested > 0 and not bad and chis == {"cdo-ex1": 1, "braid-a3": 2, "cdo-ex2": 3}
    report(5, "stv implies top-degree concentration", ok, f"{tested} stv systems, {len(bad)} failures")
    assert ok


def test_criterion_06_euler_conservation():
    rng = random.Random(6_000)
    bad = resonant = 0
    for i in range(200):
        n = CORPUS[i % len(CORPUS)]
        S = random_weights(rng, ARR[n].m, denominators=(1, 2, 3, 5, 7))
        if not check_condition(S, KOHNO, LAT[n]).holds:
            resonant += 1
        h = aomoto_cohomology(aomoto_complex(ARR[n], S, lattice=LAT[n]))
        if euler(h) != euler(betti_numbers(LAT[n])):
            bad += 1
    ok = bad == 0 and resonant > 0
    report(6, "Euler characteristic conservation", ok, f"200 systems, {resonant} resonant, {bad} failures")
    assert ok


def test_criterion_07_whitney_agreement():
    want = {"cdo-ex1": [1, 4, 4], "cdo-ex2": [1, 5, 7], "braid-a3": [1, 5, 6]}
    ok = True
    for n, A in ARR.items():
        b = betti_numbers(LAT[n])
        nbc = list(nbc_basis(decone(A, A.m)).dims)
        ok &= nbc == b and want.get(n, b) == b
    report(7, "NBC dims equal Whitney numbers", ok)
    assert ok


def test_criterion_08_milnor_bounds():
    braid = spectrum_bounds(ARR["braid-a3"]).best_bounds()
    ex1 = spectrum_bounds(ARR["cdo-ex1"]).best_bounds()
    spec = milnor_spectrum_exact(ARR["braid-a3"])
    dominated = all(spec[k] <= braid[k - 1] for k in range(1, 6))
    ok = braid == [0, 2, 0, 2, 0] and ex1 == [0, 0, 0, 0] and spec == [5, 0, 1, 0, 1, 0] and dominated and spec[2] == 1
    report(8, "eigenspace bounds and oracle", ok, f"bounds {braid}, oracle {spec}")
    assert ok


def test_criterion_09_oracle_identities():
    problems = []
    for n in PLANE_ORACLE_CORPUS:
        A = ARR[n]
        ref = milnor_spectrum_exact(A)
        if ref[0] != A.m - 1 or any(ref[k] != ref[A.m - k] for k in range(1, A.m)):
            problems.append((n, "identity"))
        if not fox_jacobian(randell_presentation(wiring_diagram(A)), 1).is_zero():
            problems.append((n, "fox"))
        for h in range(1, A.m):
            if milnor_spectrum_exact(A, h) != ref:
                problems.append((n, f"decone {h}"))
        for t in (Fraction(11, 3), Fraction(-13, 5)):
            if milnor_spectrum_exact(A, None, t) != ref:
                problems.append((n, f"shear {t}"))
    ok = not problems
    report(9, "oracle identities and stability", ok, f"{len(problems)} problems")
    assert ok, problems


def test_criterion_10_bound_zero_forcing():
    checked, bad = 0, []
    for n in PLANE_ORACLE_CORPUS:
        best = spectrum_bounds(ARR[n]).best_bounds()
        spec = milnor_spectrum_exact(ARR[n])
        for k in range(1, ARR[n].m):
            if best[k - 1] == 0:
                checked += 1
                if spec[k] != 0:
                    bad.append((n, k))
    braid_zero = [k for k in range(1, 6) if spectrum_bounds(ARR["braid-a3"]).best[k][1] == 0]
    ok = not bad and braid_zero == [1, 3, 5]
    report(10, "zero bound forces zero eigenspace", ok, f"{checked} (arrangement, k) pairs")
    assert ok


def test_criterion_11_translate_invariance():
    rng = random.Random(11_000)
    changed = {KOHNO: 0, AH: 0, STV: 0, THM33: 0}
    example = {}
    for i in range(100):
        n = ("cdo-ex1", "cdo-ex2", "braid-a3")[i % 3]
        L, m = LAT[n], ARR[n].m
        S = W(*EX1_WEIGHTS) if n == "cdo-ex1" and i % 2 else random_weights(rng, m)
        k = [rng.randint(-3, 3) for _ in range(m - 1)]
        k.append(-sum(k))
        T = S.translate(k)
        for kind in (KOHNO, STV, THM33):
            if check_condition(S, kind, L).holds != check_condition(T, kind, L).holds:
                changed[kind] += 1
                example.setdefault(kind, (n, [str(w) for w in S.weights], k))
        if any(check_condition(S, AH, L, H).holds != check_condition(T, AH, L, H).holds for H in range(1, m + 1)):
            changed[AH] += 1
    ok = not any(changed.values())
    detail = ", ".join(f"{kind} changed {c}/100" for kind, c in changed.items())
    report(11, "translate invariance of all four checks", ok, detail)
    assert ok, f"{detail}; first counterexamples: {example}"


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))

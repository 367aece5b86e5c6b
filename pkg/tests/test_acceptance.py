"""Acceptance suite: one test per criterion, tolerances pinned.

Run with ``pytest -v -s tests/test_acceptance.py`` to see one PASS line
per criterion.
"""

import math
import os
import time

import numpy as np

from blochvar import (
    SampleConfig,
    Xoshiro256pp,
    basis_for,
    check_appendix_b,
    check_appendix_c,
    check_theorem1,
    check_three_observable_equality,
    check_unit_vector_relation,
    completely_mixed,
    draw_mixed,
    draw_observable,
    draw_pure,
    find_saturating_state,
    observable_from_bloch,
    scan_pair,
    state_to_matrix,
    structure_d,
    structure_f,
    variance_bloch,
    variance_matrix,
    verify_algebra,
)
from blochvar.cli import run as cli_run

GRID = 0.01


def _axis_pair(basis, theta):
    a = observable_from_bloch([1.0, 0.0, 0.0], basis)
    b = observable_from_bloch([math.cos(theta), math.sin(theta), 0.0], basis)
    return a, b


def test_criterion_01_formula_equivalence():
    start = time.perf_counter()
    worst = 0.0
    for n in (2, 3, 4, 5):
        basis = basis_for(n)
        for i in range(1000):
            rng = Xoshiro256pp(2024 + n, stream=i)
            state = draw_mixed(rng, basis)
            obs = draw_observable(rng, basis)
            worst = max(
                worst,
                abs(variance_matrix(obs, state) - variance_bloch(obs, state, basis)),
            )
    elapsed = time.perf_counter() - start
    assert worst <= 1e-9, f"route disagreement {worst:.3e}"
    assert elapsed <= 10.0, f"runtime {elapsed:.1f}s exceeds 10s"
    print(
        f"\nACCEPTANCE 1 PASS: formula equivalence, worst |diff| = {worst:.3e} "
        f"over 4x1000 pairs in {elapsed:.1f}s"
    )


def test_criterion_02_algebra_closure():
    for n in range(2, 7):
        assert verify_algebra(basis_for(n)), f"algebra closure failed at N={n}"
    basis2 = basis_for(2)
    assert dict(basis2.d_tensor) == {}
    basis3 = basis_for(3)

    def f_oracle(j, k, l):
        gens = basis3.generators
        a, b, c = gens[j - 1].array, gens[k - 1].array, gens[l - 1].array
        return float((np.trace((a @ b - b @ a) @ c) / 4j).real)

    def d_oracle(j, k, l):
        gens = basis3.generators
        a, b, c = gens[j - 1].array, gens[k - 1].array, gens[l - 1].array
        return float((np.trace((a @ b + b @ a) @ c) / 4).real)

    assert abs(structure_f(basis3, 1, 2, 3) - 1.0) <= 1e-12
    assert abs(structure_f(basis3, 1, 2, 3) - f_oracle(1, 2, 3)) <= 1e-12
    assert abs(structure_d(basis3, 1, 1, 8) - 1.0 / math.sqrt(3.0)) <= 1e-12
    assert abs(structure_d(basis3, 1, 1, 8) - d_oracle(1, 1, 8)) <= 1e-12
    print("\nACCEPTANCE 2 PASS: algebra closure N=2..6, SU(2) d empty, SU(3) spot values")


def test_criterion_03_qubit_bound_fuzz_and_saturation():
    basis = basis_for(2)
    start = time.perf_counter()
    worst = math.inf
    for i in range(100000):
        rng = Xoshiro256pp(7, stream=i)
        state = draw_pure(rng, basis) if i % 2 == 0 else draw_mixed(rng, basis)
        a = draw_observable(rng, basis)
        b = draw_observable(rng, basis)
        worst = min(worst, check_theorem1(a, b, state).margin)
    assert worst >= -1e-10, f"bound violated: worst margin {worst:.3e}"
    worst_sat = 0.0
    for k in range(100):
        rng = Xoshiro256pp(555, stream=k)
        a = draw_observable(rng, basis)
        b = draw_observable(rng, basis)
        result = find_saturating_state(a, b, 1.0)
        worst_sat = max(worst_sat, abs(result.achieved_margin))
    elapsed = time.perf_counter() - start
    assert worst_sat <= 1e-9, f"saturation search stalled at {worst_sat:.3e}"
    assert elapsed <= 60.0, f"runtime {elapsed:.1f}s exceeds 60s"
    print(
        f"\nACCEPTANCE 3 PASS: 1e5 fuzz worst margin {worst:.3e}, "
        f"saturation worst |margin| {worst_sat:.3e}, {elapsed:.1f}s"
    )


def test_criterion_04_span_at_quarter_variance():
    basis = basis_for(2)
    a, b = _axis_pair(basis, math.pi / 6)
    scan = scan_pair(a, b, SampleConfig(seed=42, dim=2, count=100000, kind="haar_pure"), GRID)
    lo, hi, count = scan.slice_span(0, 0.25)
    assert count > 0
    assert lo * lo <= GRID, f"slice lower endpoint {lo:.4f} misses 0 by over one cell"
    assert abs(hi - math.sqrt(3.0) / 2.0) <= GRID, f"slice upper endpoint {hi:.4f}"
    print(
        f"\nACCEPTANCE 4 PASS: dB span at dA2=1/4 is [{lo:.4f}, {hi:.4f}] "
        f"vs [0, 0.866] ({count} slice samples)"
    )


def test_criterion_05_figure_boundaries():
    basis = basis_for(2)
    a, b = _axis_pair(basis, math.pi / 2)
    scan = scan_pair(a, b, SampleConfig(seed=43, dim=2, count=100000, kind="haar_pure"), GRID)
    occ = scan.occupancy
    worst_err = 0.0
    for i in range(50):
        column = 2 * i + 1
        center = (column + 0.5) * GRID
        k = int(np.argmax(occ[column]))
        assert occ[column].any()
        worst_err = max(worst_err, abs(k * GRID - (1.0 - center)))
    assert worst_err <= GRID + 1e-12, f"inner boundary off by {worst_err:.4f}"

    a0, b0 = _axis_pair(basis, 0.0)
    scan0 = scan_pair(a0, b0, SampleConfig(seed=44, dim=2, count=20000, kind="haar_pure"), GRID)
    line_err = float(
        np.abs(np.sqrt(scan0.samples[:, 1]) - np.sqrt(scan0.samples[:, 0])).max()
    )
    assert line_err <= 1e-9
    print(
        f"\nACCEPTANCE 5 PASS: pi/2 inner boundary within {worst_err:.4f} "
        f"(one cell = {GRID}); theta=0 line error {line_err:.2e}"
    )


def test_criterion_06_certainty_equality_and_projection():
    basis = basis_for(2)
    worst_residual = 0.0
    for theta in (math.pi / 6, math.pi / 4, math.pi / 2):
        for i in range(10000):
            state = draw_pure(Xoshiro256pp(60, stream=i), basis)
            verdict = check_three_observable_equality(theta, state)
            worst_residual = max(worst_residual, abs(verdict.margin))
            p = state.p
            da2 = min(max(1.0 - p[0] ** 2, 0.0), 1.0)
            v = p[0] * math.cos(theta) + p[1] * math.sin(theta)
            db2 = min(max(1.0 - v * v, 0.0), 1.0)
            assert check_unit_vector_relation(theta, da2, db2).holds
    assert worst_residual <= 1e-9
    print(
        f"\nACCEPTANCE 6 PASS: certainty equality residual {worst_residual:.3e} "
        f"over 3x1e4 pure states; projections satisfy the pair bound"
    )


def test_criterion_07_variance_sum_identity():
    basis = basis_for(2)
    worst = 0.0
    for i in range(10000):
        state = draw_mixed(Xoshiro256pp(70, stream=i), basis)
        worst = max(worst, abs(check_appendix_b(state).margin))
    assert worst <= 1e-11
    pure = state_to_matrix([0.0, 0.0, 1.0], basis)
    assert abs(check_appendix_b(pure).lhs - 2.0) <= 1e-11
    assert abs(check_appendix_b(completely_mixed(basis)).lhs - 3.0) <= 1e-11
    print(
        f"\nACCEPTANCE 7 PASS: variance-sum identity residual {worst:.3e} over 1e4 "
        f"mixed states; pure -> 2, completely mixed -> 3"
    )


def test_criterion_08_tradeoff_fuzz():
    from blochvar import UnphysicalState

    worst = math.inf
    for n in (3, 4):
        basis = basis_for(n)
        accepted = 0
        stream = 0
        while accepted < 1000:
            rng = Xoshiro256pp(80 + n, stream=stream)
            stream += 1
            a = draw_observable(rng, basis)
            b = draw_observable(rng, basis)
            state = draw_mixed(rng, basis)
            p = np.asarray(state.p).copy()
            frame = []
            for vec in (np.asarray(a.a), np.asarray(b.a)):
                w = vec.copy()
                for u in frame:
                    w -= (w @ u) * u
                norm = np.linalg.norm(w)
                if norm > 1e-12:
                    frame.append(w / norm)
            for u in frame:
                p -= (p @ u) * u
            try:
                projected = state_to_matrix(p, basis)
            except UnphysicalState:
                continue
            verdict = check_appendix_c(a, b, projected, basis)
            worst = min(worst, verdict.margin)
            accepted += 1
        assert worst >= -1e-9, f"trade-off violated at N={n}: {worst:.3e}"

        mixed = completely_mixed(basis)
        obs = draw_observable(Xoshiro256pp(99 + n), basis)
        tr_a2 = float(np.trace(obs.matrix.array @ obs.matrix.array).real)
        assert abs(variance_matrix(obs, mixed) - tr_a2 / n) <= 1e-12
    print(f"\nACCEPTANCE 8 PASS: trade-off fuzz worst margin {worst:.3e} at N=3,4")


def test_criterion_09_triviality_contrast():
    code, report = cli_run(
        ["compare", "--state", "pure:(1,0,0)", "--A", "sigma1", "--B", "sigma2"]
    )
    assert code == 0
    rows = {row["bound"]: row for row in report["results"]}
    assert rows["robertson"]["rhs"] == 0.0
    span = rows["axis_angle_span"]["span_db_any_state"]
    assert abs(span[0] - 0.0) <= 1e-12 and abs(span[1] - 1.0) <= 1e-12
    print(
        "\nACCEPTANCE 9 PASS: commutator bound collapses to 0 on an eigenstate "
        f"while the pair-bound span for dB stays [{span[0]:.0f}, {span[1]:.0f}]"
    )


def test_criterion_10_determinism():
    args_v = ["verify", "theorem1", "--samples", "2000", "--seed", "31"]
    _, first = cli_run(args_v)
    _, second = cli_run(args_v)
    assert first["worst_margin"] == second["worst_margin"]

    os.environ["UR_THREADS"] = "3"
    try:
        _, threaded = cli_run(args_v)
    finally:
        del os.environ["UR_THREADS"]
    assert threaded["worst_margin"] == first["worst_margin"]

    args_r = ["region", "pair", "--theta-ab", "0.9", "--samples", "4000", "--seed", "8"]
    _, r1 = cli_run(args_r)
    _, r2 = cli_run(args_r)
    assert r1["worst_margin"] == r2["worst_margin"]
    assert r1["results"][0]["occupied_cells"] == r2["results"][0]["occupied_cells"]
    print("\nACCEPTANCE 10 PASS: repeated runs reproduce worst_margin bit-identically")

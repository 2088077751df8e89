"""
lorentzkit/acceptance.py

The verify-all suite: fifteen exact checks over every module. Items may run
on a thread pool; the report is assembled in item order, and each item
draws from its own generator seeded with (seed, item index), so the output
does not depend on scheduling.
"""

import math
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from . import config
from .algebra import Poly, VarSpace, apply_diffop, substitute_linear
from .delta import DeltaExpansion, growth_sequence
from .errors import LorentzKitError
from .harmonic import dim_harmonic, harmonic_basis, harmonic_decompose, so3_project, sphere_average, spatial_square_power
from .logger import logger
from .lorentz import casimir, laplace3, verify_commutators
from .parser import format_expression, parse_expression, varspace_of
from .report import Report
from .sampling import (
    make_rng,
    random_delta,
    random_entry_poly,
    random_g_vector,
    random_invariant_delta,
    random_jet_poly,
    random_poly,
    random_rotation,
    random_sl2,
    random_spatial_poly,
    random_split_inputs,
)
from .spinor import (
    RepLabel,
    cg_decompose,
    check_covariant_identities,
    covariance_check,
    covariant_poly,
    diagonal_count,
    extract_invariant,
    kernel_test,
    make_covariant,
    reflection_parity,
)
from .split import (
    boost_matrix,
    closed_form_boost_matrix,
    coefficient_bound_check,
    completion_report,
    constant_in_image_2d,
    cokernel_2d,
    inverse_bound_check,
)
from .taylor import ENTRIES, jet_decompose, sl2_matrix_split, substitute_entries

SIZES = {
    "full": {
        "matrix_n": 40,
        "inverse_n": 41,
        "solver_n": 20,
        "solver_samples": 100,
        "casimir_l": 10,
        "harmonic_l": 10,
        "sl2_samples": 10,
        "kernel_s2": 4,
        "cg_max": 5,
        "cov_s2": 6,
        "cokernel_n": 12,
        "extract_samples": 4,
        "completion_samples": 50,
        "completion_order": 12,
        "jet_samples": 200,
        "entry_samples": 50,
        "entry_s2": 2,
        "growth_n": 40,
        "parser_samples": 1000,
    },
    "quick": {
        "matrix_n": 12,
        "inverse_n": 15,
        "solver_n": 8,
        "solver_samples": 3,
        "casimir_l": 6,
        "harmonic_l": 6,
        "sl2_samples": 2,
        "kernel_s2": 2,
        "cg_max": 5,
        "cov_s2": 4,
        "cokernel_n": 12,
        "extract_samples": 1,
        "completion_samples": 5,
        "completion_order": 6,
        "jet_samples": 20,
        "entry_samples": 10,
        "entry_s2": 1,
        "growth_n": 40,
        "parser_samples": 50,
    },
}


def _tally(report: Report, name: str, outcomes: list[tuple[str, bool]]):
    """One aggregated check: 'k/total', naming the first failure if any."""
    total = len(outcomes)
    ok = sum(1 for _, passed in outcomes if passed)
    computed = f"{ok}/{total}"
    failures = [label for label, passed in outcomes if not passed]
    if failures:
        computed += f" (first failure: {failures[0]})"
    report.add(name, f"{total}/{total}", computed, ok == total)


def _fold(report: Report, name: str, sub_reports: list[Report]):
    _tally(report, name, [(c.name, c.passed) for r in sub_reports for c in r.checks])


# === ITEMS ===

def item_boost_matrix(report, rng, size):
    n_max = size["matrix_n"]
    _tally(
        report,
        f"boost_matrix(n) matches closed form for n <= {n_max}",
        [(f"n={n}", boost_matrix(n) == closed_form_boost_matrix(n)) for n in range(1, n_max + 1)],
    )


def item_inverse_bounds(report, rng, size):
    n_max = size["inverse_n"]
    outcomes = []
    for n in range(1, n_max + 1):
        outcomes.extend((c.name, c.passed) for c in inverse_bound_check(n).checks)
    _tally(report, f"inverse closed forms, growth and 2^(n/2) bound for n <= {n_max}", outcomes)


def item_solver(report, rng, size):
    outcomes = []
    for n in range(1, size["solver_n"] + 1):
        for k in range(size["solver_samples"]):
            checked = coefficient_bound_check(random_g_vector(rng, n), n)
            outcomes.extend((f"{c.name} (sample {k})", c.passed) for c in checked.checks)
    _tally(report, "N1 v = u solved within the 6^(n/2) bound", outcomes)


def item_commutators(report, rng, size):
    _fold(report, "Lorentz algebra commutators in both variable spaces", [verify_commutators()])


def item_casimir(report, rng, size):
    C = casimir(VarSpace.MOMENTUM)
    outcomes = []
    for l in range(size["casimir_l"] + 1):
        for h in harmonic_basis(l):
            outcomes.append((f"l={l}", apply_diffop(C, h) == h.scale(l * (l + 1))))
    _tally(report, f"Casimir eigenvalue l(l+1) on H_l for l <= {size['casimir_l']}", outcomes)
    report.add("Casimir eigenvalue on H_1 is 2", True, all(apply_diffop(C, h) == h.scale(2) for h in harmonic_basis(1)))


def item_harmonic(report, rng, size):
    L = laplace3(VarSpace.MOMENTUM)
    reassembly, annihilated, dims, averages, rotations = [], [], [], [], []
    for l in range(size["harmonic_l"] + 1):
        dims.append((f"l={l}", dim_harmonic(l) == 2 * l + 1))
        Q = random_spatial_poly(rng, l)
        decomposition = harmonic_decompose(Q)
        reassembly.append((f"l={l}", decomposition.reassemble() == Q))
        annihilated.append((f"l={l}", all(not apply_diffop(L, h) for _, h in decomposition.parts)))
        average = sphere_average(Q)
        expected = spatial_square_power(l // 2).scale(average) if l % 2 == 0 else Poly.zero(4, VarSpace.MOMENTUM)
        averages.append((f"l={l}", so3_project(Q) == expected))
        P = random_poly(rng, 4, l, n_terms=4, varspace=VarSpace.MOMENTUM).homogeneous_component(l)
        R = random_rotation(rng)
        rotations.append((f"l={l}", so3_project(substitute_linear(P, R)) == so3_project(P)))
    _tally(report, "harmonic decomposition reassembles exactly", reassembly)
    _tally(report, "harmonic parts are annihilated by the Laplacian", annihilated)
    _tally(report, "dim H_l = 2l + 1", dims)
    _tally(report, "so3_project matches the sphere average", averages)
    _tally(report, "so3_project is rotation invariant", rotations)


def item_identities(report, rng, size):
    _fold(report, "(wb d~ w) identities", [check_covariant_identities()])
    _fold(
        report,
        "degree-1 covariant is SL(2,C) invariant",
        [covariance_check(random_sl2(rng)) for _ in range(size["sl2_samples"])],
    )


def item_kernel(report, rng, size):
    outcomes = []
    for s2 in range(1, size["kernel_s2"] + 1):
        for l in range(s2 + 2):
            outcomes.append((f"s2={s2}, l={l}", kernel_test(s2, l) == (l <= s2 - 1)))
    _tally(report, "(wb d~ w)^s2 (p^2)^l = 0 iff l <= s2 - 1", outcomes)


def item_clebsch_gordan(report, rng, size):
    cg_max = size["cg_max"]
    diagonal = [
        (f"({r2},{s2})", diagonal_count(cg_decompose(RepLabel(r2, s2))) == min(r2, s2) + 1)
        for r2 in range(cg_max + 1)
        for s2 in range(cg_max + 1)
    ]
    _tally(report, "diagonal count = 2 min(r,s) + 1", diagonal)
    slots = [
        (f"s2={s2}", covariant_poly(s2).slot_count() == (s2 + 1) ** 2) for s2 in range(size["cov_s2"] + 1)
    ]
    _tally(report, "covariant_poly(s2) has (s2+1)^2 slots", slots)
    parity = [(f"s2={s2}", reflection_parity(s2) == (-1) ** s2) for s2 in range(size["cov_s2"] + 1)]
    _tally(report, "reflection parity (-1)^s2", parity)


def item_cokernel(report, rng, size):
    p0 = Poly.var(0, 2, VarSpace.MOMENTUM)
    p1 = Poly.var(1, 2, VarSpace.MOMENTUM)
    outcomes = []
    for n in range(size["cokernel_n"] + 1):
        cokernel = cokernel_2d(n)
        if n % 2:
            outcomes.append((f"n={n}", cokernel == []))
        else:
            outcomes.append((f"n={n}", cokernel == [(p0 ** 2 - p1 ** 2) ** (n // 2)]))
    _tally(report, "2D cokernel spanned by (p0^2 - p1^2)^(n/2) for even n, empty for odd n", outcomes)
    report.add("2D: fourier(delta) is not in the image of N1", False, constant_in_image_2d())


def item_extract(report, rng, size):
    outcomes = []
    for s2 in range(4):
        for k in range(size["extract_samples"]):
            v = random_invariant_delta(rng, 10)
            w = make_covariant(v, s2)
            recovered, ambiguity = extract_invariant(w, s2)
            leftover = set((v - recovered).orders())
            outcomes.append((f"s2={s2}, sample {k}", make_covariant(recovered, s2) == w and leftover <= set(ambiguity)))
    _tally(report, "extract_invariant o make_covariant recovers v modulo box^l delta, l < s2", outcomes)


def item_completion(report, rng, size):
    sub = [
        completion_report(*random_split_inputs(rng, size["completion_order"]))
        for _ in range(size["completion_samples"])
    ]
    _fold(report, "invariant completion preserves the difference and is invariant", sub)


def item_taylor(report, rng, size):
    outcomes = []
    for k in range(size["jet_samples"]):
        dim = 2 + k % 3
        m = 1 + k % 2
        f = random_jet_poly(rng, dim, m)
        outcomes.append((f"sample {k}", jet_decompose(f, m).reconstruct() == f))
    _tally(report, "jet decomposition reconstruction is exact", outcomes)
    splits = []
    for k in range(size["entry_samples"]):
        s2 = 1 + k % size["entry_s2"]
        f = random_entry_poly(rng, s2) if k % 2 else random_jet_poly(rng, 4, 2 * s2 - 1, max_degree=1)
        split = sl2_matrix_split(f, s2)
        entries = split.entries()
        exponents_ok = all(
            all(e[i] >= s2 for e in substitute_entries(entries[key] ** s2 * part).terms)
            for i, key in enumerate(ENTRIES)
            for part in [split.parts[key]]
        )
        splits.append((f"sample {k} ({split.route})", split.reconstruct() == f and exponents_ok))
    _tally(report, "sl2_matrix_split reconstructs with entry exponents >= s2", splits)


def item_growth(report, rng, size):
    n = size["growth_n"]
    v = DeltaExpansion(1, {(k,): Fraction(1, math.factorial(k)) for k in range(n + 1)})
    m = growth_sequence(v, 1, n)
    predicted = math.e * (2 * math.pi * n) ** (-1 / (2 * n))
    report.results = {
        "m_n": f"{m[-1]:.6f}",
        "stirling_prediction": f"{predicted:.6f}",
        "distance_to_e": f"{(math.e - m[-1]) / math.e:.4f}",
    }
    report.add(f"m_{n} within 0.5% of e (2 pi n)^(-1/(2n))", True, abs(m[-1] - predicted) <= 0.005 * predicted)
    report.add("m_n increases toward e", True, all(a < b < math.e for a, b in zip(m, m[1:])))


def _random_expression_value(rng, k: int):
    kind = k % 4
    if kind == 0:
        return random_poly(rng, 4, 3, varspace=VarSpace.MOMENTUM, complex_coeffs=True)
    if kind == 1:
        return random_poly(rng, 4, 3, varspace=VarSpace.POSITION, complex_coeffs=True)
    if kind == 2:
        return random_delta(rng, 4, 4, complex_coeffs=True)
    return make_covariant(random_delta(rng, 4, 3), k % 3)


def item_parser(report, rng, size):
    outcomes = []
    for k in range(size["parser_samples"]):
        value = _random_expression_value(rng, k)
        text = format_expression(value)
        outcomes.append((text, parse_expression(text, varspace_of(value)) == value))
    _tally(report, "parse(format(v)) == v on generated expressions", outcomes)


ITEMS = (
    item_boost_matrix,
    item_inverse_bounds,
    item_solver,
    item_commutators,
    item_casimir,
    item_harmonic,
    item_identities,
    item_kernel,
    item_clebsch_gordan,
    item_cokernel,
    item_extract,
    item_completion,
    item_taylor,
    item_growth,
    item_parser,
)


def run_item(index: int, seed: int, quick: bool) -> Report:
    item = ITEMS[index - 1]
    name = item.__name__.removeprefix("item_")
    report = Report(f"{index:02d}-{name}")
    size = SIZES["quick" if quick else "full"]
    try:
        item(report, make_rng(seed, index), size)
    except LorentzKitError as e:
        logger.error(f"[Acceptance] item {index} ({name}) aborted: {e}")
        report.add(f"{name} completed", "no error", f"{type(e).__name__}: {e}", False)
    logger.debug(f"[Acceptance] item {index} ({name}): {'pass' if report.passed else 'FAIL'}")
    return report.finish()


def run_suite(seed: int | None = None, quick: bool = False, workers: int | None = None) -> Report:
    """Run every item; checks are prefixed with the item number and kept in item order."""
    seed = config.SEED if seed is None else seed
    workers = config.WORKERS if workers is None else workers
    indices = range(1, len(ITEMS) + 1)
    if config.PARALLEL and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            reports = list(pool.map(lambda i: run_item(i, seed, quick), indices))
    else:
        reports = [run_item(i, seed, quick) for i in indices]
    suite = Report("verify-all", {"seed": seed, "mode": "quick" if quick else "full"})
    for item_report in reports:
        for check in item_report.checks:
            suite.add(f"[{item_report.command}] {check.name}", check.expected, check.computed, check.passed)
        for key, value in item_report.results.items():
            suite.results[f"{item_report.command}.{key}"] = value
    return suite.finish()

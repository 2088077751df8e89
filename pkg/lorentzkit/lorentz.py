"""
lorentzkit/lorentz.py

Infinitesimal Lorentz generators as differential operators:
boosts N_j = x_j d_0 + x_0 d_j, rotations M_ij = x_j d_i - x_i d_j,
the SO(3) Casimir, the d'Alembertian and the spatial Laplacian, plus the
functional-side action on delta expansions and its Fourier intertwining.
"""

from dataclasses import dataclass
from functools import lru_cache

from .algebra import DiffOp, MultiIndex, Poly, VarSpace, apply_diffop, commutator, compose
from .delta import DeltaExpansion, derivative, fourier, mul_poly
from .errors import ParameterError, VarSpaceError
from .logger import logger
from .report import Report

KINDS = ("boost", "rotation", "casimir", "dalembert", "laplace3")


@dataclass(frozen=True)
class GeneratorSpec:
    kind: str
    axis: tuple = ()
    space: VarSpace = VarSpace.MOMENTUM
    dim: int = 4

    def __post_init__(self):
        object.__setattr__(self, "axis", tuple(self.axis))
        if self.kind not in KINDS:
            raise ParameterError(f"[Lorentz] ERROR: unknown generator kind {self.kind!r}")
        if not 2 <= self.dim <= 4:
            raise ParameterError(f"[Lorentz] ERROR: generators need 2 <= dim <= 4, got {self.dim}")
        spatial = range(1, self.dim)
        if self.kind == "boost":
            if len(self.axis) != 1 or self.axis[0] not in spatial:
                raise ParameterError(f"[Lorentz] ERROR: invalid boost axis {self.axis}")
        elif self.kind == "rotation":
            if self.dim < 3:
                raise ParameterError("[Lorentz] ERROR: rotations need dim >= 3")
            if len(self.axis) != 2 or not (self.axis[0] in spatial and self.axis[1] in spatial
                                           and self.axis[0] < self.axis[1]):
                raise ParameterError(f"[Lorentz] ERROR: invalid rotation axes {self.axis}")
        elif self.axis:
            raise ParameterError(f"[Lorentz] ERROR: {self.kind} takes no axis")
        elif self.kind in ("casimir", "laplace3") and self.dim < 3:
            raise ParameterError(f"[Lorentz] ERROR: {self.kind} needs dim >= 3")

    @property
    def label(self) -> str:
        if self.kind == "boost":
            return f"N{self.axis[0]}"
        if self.kind == "rotation":
            return f"M{self.axis[0]}{self.axis[1]}"
        return self.kind


def _x_partial(coeff_axis: int, partial_axis: int, space: VarSpace, dim: int, sign: int = 1) -> DiffOp:
    coeff = Poly.var(coeff_axis, dim, space).scale(sign)
    return DiffOp(dim, space, [(coeff, MultiIndex.unit(dim, partial_axis))])


@lru_cache(maxsize=None)
def boost(j: int, space: VarSpace = VarSpace.MOMENTUM, dim: int = 4) -> DiffOp:
    GeneratorSpec("boost", (j,), space, dim)
    return _x_partial(j, 0, space, dim) + _x_partial(0, j, space, dim)


@lru_cache(maxsize=None)
def rotation(i: int, j: int, space: VarSpace = VarSpace.MOMENTUM, dim: int = 4) -> DiffOp:
    """M_ij = x_j d_i - x_i d_j for any i != j (M_ji = -M_ij)."""
    if i == j or not (1 <= i < dim and 1 <= j < dim):
        raise ParameterError(f"[Lorentz] ERROR: invalid rotation axes ({i}, {j})")
    return _x_partial(j, i, space, dim) + _x_partial(i, j, space, dim, sign=-1)


@lru_cache(maxsize=None)
def casimir(space: VarSpace = VarSpace.MOMENTUM, dim: int = 4) -> DiffOp:
    """C = -sum_{i<j} M_ij o M_ij; eigenvalue l(l+1) on degree-l harmonics."""
    total = DiffOp(dim, space)
    for i in range(1, dim):
        for j in range(i + 1, dim):
            M = rotation(i, j, space, dim)
            total = total - compose(M, M)
    return total


@lru_cache(maxsize=None)
def dalembert(space: VarSpace = VarSpace.MOMENTUM, dim: int = 4) -> DiffOp:
    total = DiffOp.partial(MultiIndex.unit(dim, 0, 2), space)
    for j in range(1, dim):
        total = total - DiffOp.partial(MultiIndex.unit(dim, j, 2), space)
    return total


@lru_cache(maxsize=None)
def laplace3(space: VarSpace = VarSpace.MOMENTUM, dim: int = 4) -> DiffOp:
    total = DiffOp(dim, space)
    for j in range(1, dim):
        total = total + DiffOp.partial(MultiIndex.unit(dim, j, 2), space)
    return total


def generator(spec: GeneratorSpec) -> DiffOp:
    if spec.kind == "boost":
        return boost(spec.axis[0], spec.space, spec.dim)
    if spec.kind == "rotation":
        return rotation(spec.axis[0], spec.axis[1], spec.space, spec.dim)
    if spec.kind == "casimir":
        return casimir(spec.space, spec.dim)
    if spec.kind == "dalembert":
        return dalembert(spec.space, spec.dim)
    return laplace3(spec.space, spec.dim)


def lorentz_generators(space: VarSpace = VarSpace.MOMENTUM) -> list[GeneratorSpec]:
    """The six generators N1, N2, N3, M12, M13, M23 in four dimensions."""
    specs = [GeneratorSpec("boost", (j,), space) for j in (1, 2, 3)]
    specs += [GeneratorSpec("rotation", ij, space) for ij in ((1, 2), (1, 3), (2, 3))]
    return specs


def minkowski_square(space: VarSpace = VarSpace.MOMENTUM, dim: int = 4) -> Poly:
    """p0^2 - p1^2 - ... for the given variable space."""
    total = Poly.var(0, dim, space) ** 2
    for j in range(1, dim):
        total = total - Poly.var(j, dim, space) ** 2
    return total


# === INVARIANCE ===

def invariance_violations(P: Poly) -> list[tuple[str, int]]:
    """(generator label, degree) for every homogeneous part not annihilated."""
    if P.dim != 4:
        raise ParameterError("[Lorentz] ERROR: invariance is checked in four dimensions")
    found = []
    for degree, part in P.homogeneous_components().items():
        for spec in lorentz_generators(P.varspace):
            if apply_diffop(generator(spec), part):
                found.append((spec.label, degree))
    return found


def is_lorentz_invariant(P: Poly) -> bool:
    return not invariance_violations(P)


# === FUNCTIONAL-SIDE ACTION ===

def act_on_delta(D: DiffOp, v: DeltaExpansion) -> DeltaExpansion:
    """
    Adjoint action (D v, f) = -(v, D f) for a position-space operator.

    For D = sum c_a d^a this is  -sum (-1)^|a| d^a (c_a v).
    """
    if D.varspace is not VarSpace.POSITION:
        raise VarSpaceError("[Lorentz] ERROR: functionals are acted on by position-space operators")
    total = DeltaExpansion.zero(v.dim)
    for coeff, kappa in D.terms:
        moved = derivative(mul_poly(coeff, v), kappa)
        total = total + (moved if kappa.order % 2 else -moved)
    return total


def intertwining_sign(spec: GeneratorSpec) -> int:
    """fourier(G_x v) = sign * G_p fourier(v): -1 for boosts, +1 for rotations."""
    if spec.kind == "boost":
        return -1
    if spec.kind == "rotation":
        return 1
    raise ParameterError(f"[Lorentz] ERROR: no intertwining sign for {spec.kind}")


def fourier_intertwine_check(v: DeltaExpansion, spec: GeneratorSpec) -> Report:
    sign = intertwining_sign(spec)
    position = GeneratorSpec(spec.kind, spec.axis, VarSpace.POSITION, spec.dim)
    momentum = GeneratorSpec(spec.kind, spec.axis, VarSpace.MOMENTUM, spec.dim)
    left = fourier(act_on_delta(generator(position), v))
    right = apply_diffop(generator(momentum), fourier(v)).scale(sign)
    report = Report("intertwine", {"v": str(v), "generator": spec.label, "sigma": str(sign)})
    report.add(f"fourier({spec.label} v) = {sign:+d} * {spec.label}_p fourier(v)", right, left)
    logger.debug(f"[Lorentz] intertwining {spec.label}: {'ok' if report.passed else 'FAILED'}")
    return report


# === COMMUTATION RELATIONS ===

def verify_commutators() -> Report:
    """[N_j, M_ij] = N_i for all i != j, [N_1, N_2] = -M_12, and [C, M_ij] = 0."""
    report = Report("commutators", {})
    for space in (VarSpace.POSITION, VarSpace.MOMENTUM):
        tag = space.value
        for j in (1, 2, 3):
            for i in (1, 2, 3):
                if i == j:
                    continue
                report.add(
                    f"[N{j}, M{i}{j}] = N{i} ({tag})",
                    boost(i, space),
                    commutator(boost(j, space), rotation(i, j, space)),
                )
        report.add(f"[N1, N2] = -M12 ({tag})", -rotation(1, 2, space), commutator(boost(1, space), boost(2, space)))
        M12 = rotation(1, 2, space)
        report.add(f"[M12, M12] = 0 ({tag})", DiffOp(4, space), commutator(M12, M12))
        C = casimir(space)
        for i, j in ((1, 2), (1, 3), (2, 3)):
            report.add(f"[C, M{i}{j}] = 0 ({tag})", DiffOp(4, space), commutator(C, rotation(i, j, space)))
    return report

"""Checker registry machinery: parameters, results, evaluation workspace."""

from __future__ import annotations

import hashlib
import itertools
import math
from dataclasses import dataclass, fields, replace
from typing import Callable, Iterable, Mapping, NamedTuple, Sequence

import numpy as np

from ..errors import NumradError, PreconditionViolated, UnknownChecker
from ..linalg import as_matrix, as_vector, classify, hermitian_part, psd_spectrum, spectral_power
from ..numrange import RadiusEstimate, numerical_radius
from ..transforms import RANK_TOL

__all__ = [
    "CheckParams",
    "CheckResult",
    "Checker",
    "Link",
    "Workspace",
    "REGISTRY",
    "DEFAULT_GRID_AXES",
    "default_grid",
    "resolve",
    "applicable",
    "check",
    "check_all",
    "build_plan",
    "run_plan",
]

PARAM_NAMES = ("r", "p", "q", "alpha", "s", "n_power")
CONJUGATE_TOL = 1e-12
STRUCTURE_TOL = 1e-10
UNIT_TOL = 1e-12


@dataclass(frozen=True)
class CheckParams:
    """Exponents and weights of one inequality instance; unused fields stay ``None``."""

    r: float | None = None
    p: float | None = None
    q: float | None = None
    alpha: float | None = None
    s: float | None = None
    n_power: int | None = None

    def project(self, names: Iterable[str]) -> "CheckParams":
        keep = set(names)
        return CheckParams(**{n: getattr(self, n) for n in PARAM_NAMES if n in keep})

    def as_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}


@dataclass(frozen=True, slots=True)
class CheckResult:
    checker_id: str
    link: str
    params: CheckParams
    lhs: float
    rhs: float
    slack: float
    satisfied: bool
    tolerance: float
    operand_digest: str
    notes: str = ""


class Link(NamedTuple):
    """Raw output of a checker for one link.

    ``kind`` is ``"le"`` for ``lhs <= rhs`` and ``"eq"`` for an identity,
    whose slack is ``-|rhs - lhs|``. ``err`` is the propagated certified
    radius error, added to the verdict tolerance.
    """

    name: str
    lhs: float
    rhs: float
    kind: str = "le"
    err: float = 0.0
    notes: str = ""


@dataclass(frozen=True)
class Checker:
    id: str
    alias: str
    title: str
    roles: tuple[str, ...]
    params: tuple[str, ...]
    requirements: tuple[Callable[["Workspace", CheckParams], list[str]], ...]
    evaluate: Callable[["Workspace", CheckParams], list[Link]]


REGISTRY: dict[str, Checker] = {}
_ALIASES: dict[str, str] = {}

VECTOR_ROLES = frozenset({"x", "u", "v", "e"})
SCALAR_ROLES = frozenset({"a", "b"})


def register(checker: Checker) -> Checker:
    REGISTRY[checker.id] = checker
    _ALIASES[checker.alias] = checker.id
    return checker


def resolve(checker_id: str) -> Checker:
    key = str(checker_id)
    key = _ALIASES.get(key, key).upper() if key not in REGISTRY else key
    try:
        return REGISTRY[key]
    except KeyError:
        raise UnknownChecker(checker_id) from None


class Workspace:
    """Operand bundle plus caches shared by all checkers run on it.

    Matrix-valued intermediate results are cached by content, so e.g. the
    radius of ``A @ A`` is computed once per bundle no matter how many
    checkers or grid points need it.
    """

    def __init__(self, operands: Mapping[str, object], tol: float = 1e-8):
        self.tol = float(tol)
        self.raw = dict(operands)
        self._values: dict[str, object] = {}
        self._cache: dict[tuple, object] = {}

    # operands ---------------------------------------------------------
    def has(self, role: str) -> bool:
        return self.raw.get(role) is not None

    def __getitem__(self, role: str):
        if role not in self._values:
            value = self.raw[role]
            if role in VECTOR_ROLES:
                value = as_vector(value, name=role)
            elif role in SCALAR_ROLES:
                value = float(value)
            else:
                value = as_matrix(value, role)
            self._values[role] = value
        return self._values[role]

    def _memo(self, tag: str, M: np.ndarray, extra, compute):
        key = (tag, M.shape, M.tobytes(), extra)
        try:
            return self._cache[key]
        except KeyError:
            value = self._cache[key] = compute()
            return value

    def flags(self, role: str) -> frozenset:
        return self._memo("flags", self[role], None, lambda: classify(self[role], STRUCTURE_TOL))

    def digest(self, roles: Sequence[str]) -> str:
        key = ("digest", tuple(roles))
        if key not in self._cache:
            h = hashlib.sha256()
            for role in roles:
                value = self[role]
                h.update(role.encode())
                h.update(np.asarray(value, dtype=np.complex128).tobytes())
            self._cache[key] = h.hexdigest()[:16]
        return self._cache[key]

    # norms and radii --------------------------------------------------
    def norm(self, M: np.ndarray) -> float:
        return self._memo("norm", M, None, lambda: float(np.linalg.svd(M, compute_uv=False)[0]))

    def cond(self, M: np.ndarray) -> float:
        def compute():
            sv = np.linalg.svd(M, compute_uv=False)
            return float(sv[0] / sv[-1]) if sv[-1] > 0 else math.inf

        return self._memo("cond", M, None, compute)

    def radius(self, M: np.ndarray) -> RadiusEstimate:
        # radius tolerance tol/20 * max(1, ||M||) <= tol/10 * max(1, w(M))
        rtol = max(1e-12, self.tol / 20 * max(1.0, self.norm(M)))
        return self._memo("radius", M, None, lambda: numerical_radius(M, rtol))

    def w(self, M: np.ndarray) -> tuple[float, float]:
        est = self.radius(M)
        return est.value, est.certified_error

    def w_pow(self, M: np.ndarray, r: float) -> tuple[float, float]:
        """``w(M)**r`` and a first-order bound on its certified error."""
        v, e = self.w(M)
        return v**r, r * (v + e) ** max(r - 1.0, 0.0) * e

    # spectral calculus ------------------------------------------------
    def svd(self, M: np.ndarray):
        def compute():
            W, s, Vh = np.linalg.svd(M)
            s = np.where(s > RANK_TOL * s[0], s, 0.0) if s[0] > 0 else s
            return W, s, Vh.conj().T

        return self._memo("svd", M, None, compute)

    def abs_power(self, M: np.ndarray, s: float) -> np.ndarray:
        """``|M|**s``; from the right singular vectors."""
        W, sv, V = self.svd(M)
        return self._memo("abs_pow", M, s, lambda: spectral_power(sv, V, s))

    def abs_adj_power(self, M: np.ndarray, s: float) -> np.ndarray:
        """``|M*|**s = (M M*)**(s/2)``; from the left singular vectors."""
        W, sv, V = self.svd(M)
        return self._memo("abs_adj_pow", M, s, lambda: spectral_power(sv, W, s))

    def abs_func(self, M: np.ndarray, fn, adjoint: bool = False) -> np.ndarray:
        W, sv, V = self.svd(M)
        basis = W if adjoint else V
        vals = np.array([fn(float(t)) for t in sv])
        return hermitian_part((basis * vals) @ basis.conj().T)

    def psd_power(self, P: np.ndarray, s: float) -> np.ndarray:
        w, V = self._memo("psd_eig", P, None, lambda: psd_spectrum(P))
        return self._memo("psd_pow", P, s, lambda: spectral_power(w, V, s))

    def polar(self, T: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Canonical polar factors ``(U, |T|)`` (partial isometry convention)."""
        W, sv, V = self.svd(T)
        keep = sv > 0
        U = W[:, keep] @ V[:, keep].conj().T
        return U, self.abs_power(T, 1.0)


# ---------------------------------------------------------------------------
# parameter grids


DEFAULT_GRID_AXES = {
    "r": (1.0, 1.5, 2.0, 3.0),
    "pq": ((2.0, 2.0), (3.0, 1.5), (4.0, 4.0 / 3.0)),
    "alpha": (0.0, 0.25, 0.5, 0.75, 1.0),
    "s": (0.0, 0.5, 1.0),
    "n_power": (1, 2, 3, 4),
}


def default_grid(axes: Mapping[str, Sequence] | None = None) -> list[CheckParams]:
    """Full product of the grid axes, ``r`` varying slowest."""
    ax = dict(DEFAULT_GRID_AXES)
    if axes:
        ax.update(axes)
    return [
        CheckParams(r=r, p=p, q=q, alpha=al, s=s, n_power=k)
        for r, (p, q), al, s, k in itertools.product(
            ax["r"], ax["pq"], ax["alpha"], ax["s"], ax["n_power"]
        )
    ]


def _projected(checker: Checker, grid: Sequence[CheckParams]) -> list[CheckParams]:
    seen: dict[CheckParams, None] = {}
    for point in grid:
        seen.setdefault(point.project(checker.params), None)
    return list(seen)


# ---------------------------------------------------------------------------
# checking


def _missing(checker: Checker, ws: Workspace) -> list[str]:
    out = [f"missing operand {role}" for role in checker.roles if not ws.has(role)]
    if out:
        return out
    dims = set()
    for role in checker.roles:
        if role in SCALAR_ROLES:
            continue
        value = ws[role]
        dims.add(value.shape[0])
    if len(dims) > 1:
        out.append("operand dimensions differ")
    return out


def _applicable(checker: Checker, ws: Workspace, params: CheckParams) -> list[str]:
    reasons = _missing(checker, ws)
    if reasons:
        return reasons
    for name in checker.params:
        if getattr(params, name) is None:
            reasons.append(f"parameter {name} missing")
    if reasons:
        return reasons
    for req in checker.requirements:
        reasons.extend(req(ws, params))
    return reasons


def applicable(checker_id: str, operands: Mapping[str, object], params: CheckParams) -> list[str]:
    """Violated hypotheses of ``checker_id`` on these operands; empty when it applies."""
    checker = resolve(checker_id)
    return _applicable(checker, Workspace(operands), params)


def _finish(checker: Checker, link: Link, params: CheckParams, digest: str, tol: float) -> CheckResult:
    lhs, rhs = float(link.lhs), float(link.rhs)
    if not (math.isfinite(lhs) and math.isfinite(rhs)):
        raise NumradError(f"{checker.id}[{link.name}]: non-finite value lhs={lhs} rhs={rhs}")
    tolerance = tol * max(1.0, abs(lhs), abs(rhs)) + link.err
    slack = -abs(rhs - lhs) if link.kind == "eq" else rhs - lhs
    return CheckResult(
        checker_id=checker.id,
        link=link.name,
        params=params,
        lhs=lhs,
        rhs=rhs,
        slack=slack,
        satisfied=slack >= -tolerance,
        tolerance=tolerance,
        operand_digest=digest,
        notes=link.notes,
    )


def _run(checker: Checker, ws: Workspace, params: CheckParams) -> list[CheckResult]:
    digest = ws.digest(checker.roles)
    return [_finish(checker, link, params, digest, ws.tol) for link in checker.evaluate(ws, params)]


def check(
    checker_id: str,
    operands: Mapping[str, object] | Workspace,
    params: CheckParams = CheckParams(),
    tol: float = 1e-8,
) -> list[CheckResult]:
    """Evaluate one registry entry; one :class:`CheckResult` per link, in order.

    Raises :class:`PreconditionViolated` when :func:`applicable` is nonempty.
    """
    checker = resolve(checker_id)
    ws = operands if isinstance(operands, Workspace) else Workspace(operands, tol)
    reasons = _applicable(checker, ws, params)
    if reasons:
        raise PreconditionViolated(checker.id, reasons)
    return _run(checker, ws, params)


def build_plan(
    grid: Sequence[CheckParams], checkers: Iterable[str] | None = None
) -> list[tuple[Checker, list[CheckParams]]]:
    """Registry-ordered checkers with the grid projected onto the parameters each consumes."""
    if checkers is None:
        chosen = list(REGISTRY.values())
    else:
        wanted = {resolve(c).id for c in checkers}
        chosen = [c for c in REGISTRY.values() if c.id in wanted]
    grid = list(grid)
    if not grid:
        return [(c, []) for c in chosen]
    return [(c, _projected(c, grid)) for c in chosen]


def run_plan(
    ws: Workspace,
    plan: Sequence[tuple[Checker, list[CheckParams]]],
    skipped: list | None = None,
) -> list[tuple[int, CheckResult]]:
    """Run a plan on one workspace; returns ``(grid_index, result)`` pairs in order."""
    out = []
    for checker, points in plan:
        for idx, params in enumerate(points):
            reasons = _applicable(checker, ws, params)
            if reasons:
                if skipped is not None:
                    skipped.append((checker.id, params, reasons))
                continue
            try:
                results = _run(checker, ws, params)
            except NumradError as exc:
                if skipped is not None:
                    skipped.append((checker.id, params, [f"numerical failure: {exc}"]))
                continue
            out.extend((idx, res) for res in results)
    return out


def check_all(
    bundle: Mapping[str, object],
    grid: Sequence[CheckParams],
    tol: float = 1e-8,
    checkers: Iterable[str] | None = None,
    skipped: list | None = None,
) -> list[CheckResult]:
    """Every applicable registry entry over the whole grid, in registry then grid order.

    Inapplicable combinations and numerical failures are appended to
    ``skipped`` as ``(checker_id, params, reasons)`` when a list is given.
    """
    ws = Workspace(bundle, tol)
    return [res for _, res in run_plan(ws, build_plan(grid, checkers), skipped)]

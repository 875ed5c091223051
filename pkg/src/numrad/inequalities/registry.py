"""The checker registry R01-R26.

Each entry evaluates both sides of one numerical-radius inequality (or
vector identity) on a :class:`~numrad.inequalities.core.Workspace`. ``w`` is
the numerical radius, ``||.||`` the operator norm and ``|T| = (T*T)^(1/2)``.
"""

from __future__ import annotations

import numpy as np

from ..transforms import power_pair
from .core import CONJUGATE_TOL, UNIT_TOL, Checker, CheckParams, Link, Workspace, register

H = lambda M: M.conj().T  # noqa: E731


# ---------------------------------------------------------------------------
# requirement helpers; each returns the list of violated conditions


def r_at_least(bound: float):
    def req(ws, prm):
        return [] if prm.r >= bound else [f"r ≥ {bound:g} violated"]

    return req


def r_positive(ws, prm):
    return [] if prm.r > 0 else ["r > 0 violated"]


def conjugate(ws, prm):
    out = []
    if not prm.p > 1:
        out.append("p > 1 violated")
    if not prm.q > 1:
        out.append("q > 1 violated")
    if prm.p > 0 and prm.q > 0 and abs(1 / prm.p + 1 / prm.q - 1) > CONJUGATE_TOL:
        out.append("1/p+1/q ≠ 1")
    return out


def p_at_least_q(ws, prm):
    return [] if prm.p >= prm.q else ["p ≥ q violated"]


def pr_at_least_2(ws, prm):
    return [] if prm.p * prm.r >= 2 else ["pr ≥ 2 violated"]


def qr_at_least_2(ws, prm):
    return [] if prm.q * prm.r >= 2 else ["qr ≥ 2 violated"]


def alpha_unit(ws, prm):
    return [] if 0 <= prm.alpha <= 1 else ["α ∈ [0,1] violated"]


def s_unit(ws, prm):
    return [] if 0 <= prm.s <= 1 else ["s ∈ [0,1] violated"]


def n_power_valid(ws, prm):
    k = prm.n_power
    return [] if int(k) == k and k >= 1 else ["n ≥ 1 integer violated"]


def psd(*roles):
    def req(ws, prm):
        return [f"{r} positive semidefinite violated" for r in roles if "psd" not in ws.flags(r)]

    return req


COND_CAP = 10.0  # keeps inverses accurate to about 1e-14


def invertible_selfadjoint(*roles):
    def req(ws, prm):
        out = []
        for r in roles:
            fl = ws.flags(r)
            if "hermitian" not in fl or "invertible" not in fl:
                out.append(f"{r} invertible self-adjoint violated")
            elif ws.cond(ws[r]) > COND_CAP:
                out.append(f"{r} condition number ≤ {COND_CAP:g} violated")
        return out

    return req


def paranormal_certified(role):
    # normal => paranormal is the only class certified analytically
    def req(ws, prm):
        return [] if "normal" in ws.flags(role) else [f"{role} paranormal (certified via normality) violated"]

    return req


def unit(*roles):
    def req(ws, prm):
        return [
            f"{r} unit vector violated"
            for r in roles
            if abs(float(np.linalg.norm(ws[r])) - 1.0) > UNIT_TOL
        ]

    return req


def nonnegative(*roles):
    def req(ws, prm):
        return [f"{r} ≥ 0 violated" for r in roles if not ws[r] >= 0]

    return req


def checker(cid, alias, title, roles, params=(), requires=()):
    def deco(fn):
        register(Checker(cid, alias, title, tuple(roles), tuple(params), tuple(requires), fn))
        return fn

    return deco


def _ip(x, y) -> complex:
    """Inner product ``<x, y> = y^* x`` (linear in the first slot)."""
    return complex(np.vdot(y, x))


def _form(M, x) -> float:
    """``<Mx, x>`` for Hermitian ``M`` (real part, clamped at zero for PSD use)."""
    return max(0.0, float(np.vdot(x, M @ x).real))


# ---------------------------------------------------------------------------
# operator inequalities


@checker("R01", "sandwich", "||A||/2 <= w(A) <= ||A||", ["A"])
def _sandwich(ws: Workspace, prm: CheckParams):
    A = ws["A"]
    w, e = ws.w(A)
    n = ws.norm(A)
    return [Link("lower", n / 2, w, err=e), Link("upper", w, n, err=e)]


@checker("R02", "power", "w(A^n) <= w(A)^n", ["A"], ["n_power"], [n_power_valid])
def _power(ws, prm):
    A = ws["A"]
    k = int(prm.n_power)
    lhs, e1 = ws.w(np.linalg.matrix_power(A, k))
    rhs, e2 = ws.w_pow(A, k)
    return [Link("power", lhs, rhs, err=e1 + e2)]


@checker("R03", "dragomir_square", "w(A)^2 <= (w(A^2) + ||A||^2)/2", ["A"])
def _dragomir_square(ws, prm):
    A = ws["A"]
    lhs, e1 = ws.w_pow(A, 2)
    w2, e2 = ws.w(A @ A)
    return [Link("bound", lhs, 0.5 * (w2 + ws.norm(A) ** 2), err=e1 + 0.5 * e2)]


@checker(
    "R04",
    "dragomir_product",
    "w(B*A)^r <= ||(A*A)^r + (B*B)^r|| / 2",
    ["A", "B"],
    ["r"],
    [r_at_least(1)],
)
def _dragomir_product(ws, prm):
    A, B, r = ws["A"], ws["B"], prm.r
    lhs, e = ws.w_pow(H(B) @ A, r)
    rhs = 0.5 * ws.norm(ws.abs_power(A, 2 * r) + ws.abs_power(B, 2 * r))
    return [Link("bound", lhs, rhs, err=e)]


@checker(
    "R05",
    "square_power_bound",
    "w(A)^(2r) <= (w(A^2)^r + ||A||^(2r)) / 2",
    ["A"],
    ["r"],
    [r_at_least(1)],
)
def _square_power_bound(ws, prm):
    A, r = ws["A"], prm.r
    lhs, e1 = ws.w_pow(A, 2 * r)
    w2r, e2 = ws.w_pow(A @ A, r)
    return [Link("bound", lhs, 0.5 * (w2r + ws.norm(A) ** (2 * r)), err=e1 + 0.5 * e2)]


def _pair_term(ws, M, prm, adjoint_second: bool):
    """``(1/p) f^{pr}(|M|) + (1/q) g^{qr}(|M*|)`` for the power pair with exponent s."""
    pair = power_pair(prm.s)
    p, q, r = prm.p, prm.q, prm.r
    F = ws.abs_func(M, lambda t: pair.f(t) ** (p * r))
    G = ws.abs_func(M, lambda t: pair.g(t) ** (q * r), adjoint=adjoint_second)
    return F / p + G / q


@checker(
    "R06",
    "function_pair_bound",
    "w(A)^(2r) <= (||A||^(2r) + ||f^{pr}(|A^2|)/p + g^{qr}(|(A^2)*|)/q||) / 2",
    ["A"],
    ["r", "p", "q", "s"],
    [r_at_least(1), p_at_least_q, conjugate, qr_at_least_2, s_unit],
)
def _function_pair_bound(ws, prm):
    A, r = ws["A"], prm.r
    lhs, e = ws.w_pow(A, 2 * r)
    term = _pair_term(ws, A @ A, prm, adjoint_second=True)
    rhs = 0.5 * (ws.norm(A) ** (2 * r) + ws.norm(term))
    return [Link("bound", lhs, rhs, err=e, notes=f"f*g power pair s={prm.s:g}")]


@checker(
    "R07",
    "alpha_power_bound",
    "w(A)^(2r) <= (||A||^(2r) + || |A|^(4ar) + |A*|^(4(1-a)r) || / 2) / 2",
    ["A"],
    ["r", "alpha"],
    [r_at_least(1), alpha_unit],
)
def _alpha_power_bound(ws, prm):
    A, r, a = ws["A"], prm.r, prm.alpha
    lhs, e = ws.w_pow(A, 2 * r)
    inner = ws.abs_power(A, 4 * a * r) + ws.abs_adj_power(A, 4 * (1 - a) * r)
    rhs = 0.5 * (ws.norm(A) ** (2 * r) + 0.5 * ws.norm(inner))
    return [Link("bound", lhs, rhs, err=e)]


@checker(
    "R08",
    "paranormal_bound",
    "w(A)^r <= (||A||^r + ||f^{pr}(|A|)/p + g^{qr}(|A*|)/q||) / 2 for paranormal A",
    ["A"],
    ["r", "p", "q", "s"],
    [r_at_least(1), p_at_least_q, conjugate, qr_at_least_2, s_unit, paranormal_certified("A")],
)
def _paranormal_bound(ws, prm):
    A, r = ws["A"], prm.r
    lhs, e = ws.w_pow(A, r)
    term = _pair_term(ws, A, prm, adjoint_second=True)
    rhs = 0.5 * (ws.norm(A) ** r + ws.norm(term))
    return [Link("bound", lhs, rhs, err=e)]


@checker(
    "R09",
    "young_triple_product",
    "w(AXB)^r <= ||[A f^2(|X*|) A*]^{pr/2}/p + [B* g^2(|X|) B]^{qr/2}/q||",
    ["A", "B", "X"],
    ["r", "p", "q", "s"],
    [conjugate, pr_at_least_2, qr_at_least_2, s_unit],
)
def _young_triple_product(ws, prm):
    A, B, X = ws["A"], ws["B"], ws["X"]
    p, q, r = prm.p, prm.q, prm.r
    pair = power_pair(prm.s)
    F2 = ws.abs_func(X, lambda t: pair.f(t) ** 2, adjoint=True)
    G2 = ws.abs_func(X, lambda t: pair.g(t) ** 2)
    left = ws.psd_power((A @ F2 @ H(A) + H(A @ F2 @ H(A))) / 2, p * r / 2)
    right = ws.psd_power((H(B) @ G2 @ B + H(H(B) @ G2 @ B)) / 2, q * r / 2)
    lhs, e = ws.w_pow(A @ X @ B, r)
    return [Link("bound", lhs, ws.norm(left / p + right / q), err=e)]


@checker(
    "R10",
    "young_product",
    "w(B*A)^r <= || |A|^{pr}/p + |B|^{qr}/q ||",
    ["A", "B"],
    ["r", "p", "q"],
    [conjugate, pr_at_least_2, qr_at_least_2],
)
def _young_product(ws, prm):
    A, B = ws["A"], ws["B"]
    p, q, r = prm.p, prm.q, prm.r
    lhs, e = ws.w_pow(H(B) @ A, r)
    rhs = ws.norm(ws.abs_power(A, p * r) / p + ws.abs_power(B, q * r) / q)
    return [Link("bound", lhs, rhs, err=e)]


def _real_part_bound(ws, A, B, r):
    """``||(AA*)^r + (BB*)^r|| / 4 + w(AB*)^r / 2`` and its radius error."""
    pos = ws.norm(ws.abs_adj_power(A, 2 * r) + ws.abs_adj_power(B, 2 * r))
    wr, e = ws.w_pow(A @ H(B), r)
    return 0.25 * pos + 0.5 * wr, 0.5 * e, pos


@checker(
    "R11",
    "real_part_product",
    "w(B*A)^r <= ||(AA*)^r + (BB*)^r||/4 + w(AB*)^r/2",
    ["A", "B"],
    ["r"],
    [r_at_least(1)],
)
def _real_part_product(ws, prm):
    A, B, r = ws["A"], ws["B"], prm.r
    lhs, e1 = ws.w_pow(H(B) @ A, r)
    rhs, e2, _ = _real_part_bound(ws, A, B, r)
    return [Link("bound", lhs, rhs, err=e1 + e2)]


@checker(
    "R12",
    "product_sharpness",
    "||(AA*)^r + (BB*)^r||/4 + w(AB*)^r/2 <= ||(AA*)^r + (BB*)^r||/2",
    ["A", "B"],
    ["r"],
    [r_at_least(1)],
)
def _product_sharpness(ws, prm):
    A, B, r = ws["A"], ws["B"], prm.r
    lhs, e, pos = _real_part_bound(ws, A, B, r)
    return [Link("chain", lhs, 0.5 * pos, err=e)]


@checker(
    "R13",
    "generalized_aluthge",
    "w(T)^r <= || |T|^{2ra} + |T|^{2r(1-a)} ||/4 + w(T~(a))^r/2, T = operand A",
    ["A"],
    ["r", "alpha"],
    [r_at_least(1), alpha_unit],
)
def _generalized_aluthge(ws, prm):
    T, r, a = ws["A"], prm.r, prm.alpha
    U, _ = ws.polar(T)
    transform = ws.abs_power(T, a) @ U @ ws.abs_power(T, 1 - a)
    lhs, e1 = ws.w_pow(T, r)
    wt, e2 = ws.w_pow(transform, r)
    pos = ws.norm(ws.abs_power(T, 2 * r * a) + ws.abs_power(T, 2 * r * (1 - a)))
    return [Link("bound", lhs, 0.25 * pos + 0.5 * wt, err=e1 + 0.5 * e2)]


@checker(
    "R14",
    "symmetric_power_product",
    "w(A^a X B^a)^r <= ||X||^r ||A^{pr}/p + B^{qr}/q||^a, A, B >= 0",
    ["A", "B", "X"],
    ["r", "p", "q", "alpha"],
    [psd("A", "B"), alpha_unit, r_positive, conjugate, pr_at_least_2, qr_at_least_2],
)
def _symmetric_power_product(ws, prm):
    A, B, X = ws["A"], ws["B"], ws["X"]
    p, q, r, a = prm.p, prm.q, prm.r, prm.alpha
    M = ws.psd_power(A, a) @ X @ ws.psd_power(B, a)
    lhs, e = ws.w_pow(M, r)
    mean = ws.norm(ws.psd_power(A, p * r) / p + ws.psd_power(B, q * r) / q)
    return [Link("bound", lhs, ws.norm(X) ** r * mean**a, err=e)]


@checker("R15", "aluthge_norm", "w(T~) <= ||T||, T = operand A", ["A"])
def _aluthge_norm(ws, prm):
    T = ws["A"]
    U, _ = ws.polar(T)
    half = ws.abs_power(T, 0.5)
    lhs, e = ws.w(half @ U @ half)
    return [Link("bound", lhs, ws.norm(T), err=e)]


@checker(
    "R16",
    "weighted_power_product",
    "w(A^a X B^(1-a))^r <= ||X||^r ||a A^r + (1-a) B^r||, A, B >= 0",
    ["A", "B", "X"],
    ["r", "alpha"],
    [psd("A", "B"), r_at_least(2), alpha_unit],
)
def _weighted_power_product(ws, prm):
    A, B, X = ws["A"], ws["B"], ws["X"]
    r, a = prm.r, prm.alpha
    M = ws.psd_power(A, a) @ X @ ws.psd_power(B, 1 - a)
    lhs, e = ws.w_pow(M, r)
    rhs = ws.norm(X) ** r * ws.norm(a * ws.psd_power(A, r) + (1 - a) * ws.psd_power(B, r))
    return [Link("bound", lhs, rhs, err=e)]


@checker(
    "R17",
    "heinz_chain",
    "w(A^½XB^½)^r <= w(H_a)^r <= ||X||^r w((A^r+B^r)/2) <= ||X||^r (||aA^r+(1-a)B^r|| + ||(1-a)A^r+aB^r||)/2",
    ["A", "B", "X"],
    ["r", "alpha"],
    [psd("A", "B"), r_at_least(2), alpha_unit],
)
def _heinz_chain(ws, prm):
    A, B, X = ws["A"], ws["B"], ws["X"]
    r, a = prm.r, prm.alpha
    P = lambda M, s: ws.psd_power(M, s)  # noqa: E731
    geometric = P(A, 0.5) @ X @ P(B, 0.5)
    heinz = (P(A, a) @ X @ P(B, 1 - a) + P(A, 1 - a) @ X @ P(B, a)) / 2
    Ar, Br = P(A, r), P(B, r)
    xr = ws.norm(X) ** r
    w_geo, e_geo = ws.w_pow(geometric, r)
    w_hm, e_hm = ws.w_pow(heinz, r)
    w_mean, e_mean = ws.w((Ar + Br) / 2)
    split = 0.5 * xr * (ws.norm(a * Ar + (1 - a) * Br) + ws.norm((1 - a) * Ar + a * Br))
    return [
        Link("i", w_geo, w_hm, err=e_geo + e_hm),
        Link("ii", w_hm, xr * w_mean, err=e_hm + xr * e_mean),
        Link("iii", xr * w_mean, split, err=xr * e_mean),
    ]


def _similarity_mean(A, X, B):
    """``(A X B^{-1} + A^{-1} X B) / 2``."""
    return (A @ np.linalg.solve(B.T, X.T).T + np.linalg.solve(A, X @ B)) / 2


@checker(
    "R18",
    "similarity_bound",
    "w(X) <= w((A X B^-1 + A^-1 X B)/2), A, B invertible self-adjoint",
    ["A", "B", "X"],
    requires=[invertible_selfadjoint("A", "B")],
)
def _similarity_bound(ws, prm):
    A, B, X = ws["A"], ws["B"], ws["X"]
    lhs, e1 = ws.w(X)
    rhs, e2 = ws.w(_similarity_mean(A, X, B))
    return [Link("bound", lhs, rhs, err=e1 + e2)]


# ---------------------------------------------------------------------------
# scalar and vector-level statements


@checker(
    "R19",
    "scalar_young",
    "a^t b^(1-t) <= ta+(1-t)b <= [ta^r+(1-t)b^r]^(1/r);  ab <= a^p/p+b^q/q <= (a^{pr}/p+b^{qr}/q)^(1/r)",
    ["a", "b"],
    ["r", "p", "q", "alpha"],
    [nonnegative("a", "b"), alpha_unit, r_at_least(1), conjugate],
)
def _scalar_young(ws, prm):
    a, b = ws["a"], ws["b"]
    t, r, p, q = prm.alpha, prm.r, prm.p, prm.q
    arith = t * a + (1 - t) * b
    young = a**p / p + b**q / q
    # variant with a^q in place of b^q: evaluated and noted, never asserted
    variant = a**p / p + a**q / q
    variant_note = (
        f"variant a^p/p+a^q/q={variant!r}: "
        f"upper bound for ab {'holds' if variant >= a * b else 'FAILS'}"
    )
    return [
        Link("a_geometric", a**t * b ** (1 - t), arith),
        Link("a_power", arith, (t * a**r + (1 - t) * b**r) ** (1 / r)),
        Link("b_young", a * b, young, notes=variant_note),
        Link("b_power", young, (a ** (p * r) / p + b ** (q * r) / q) ** (1 / r)),
    ]


@checker(
    "R20",
    "mccarthy",
    "<Ax,x>^r <= <A^r x,x> (r >= 1);  <A^s x,x> <= <Ax,x>^s (s = 1/r <= 1)",
    ["A", "x"],
    ["r"],
    [psd("A"), unit("x"), r_at_least(1)],
)
def _mccarthy(ws, prm):
    A, x, r = ws["A"], ws["x"], prm.r
    base = _form(A, x)
    s = 1.0 / r
    return [
        Link("convex", base**r, _form(ws.psd_power(A, r), x)),
        Link("concave", _form(ws.psd_power(A, s), x), base**s, notes=f"exponent {s!r}"),
    ]


@checker(
    "R21",
    "mixed_schwarz",
    "|<Au,v>|^2 <= <|A|^{2a}u,u><|A*|^{2(1-a)}v,v>;  |<Au,v>| <= ||f(|A|)u|| ||g(|A*|)v||",
    ["A", "u", "v"],
    ["alpha", "s"],
    [alpha_unit, s_unit],
)
def _mixed_schwarz(ws, prm):
    A, u, v = ws["A"], ws["u"], ws["v"]
    a = prm.alpha
    pair = power_pair(prm.s)
    val = abs(_ip(A @ u, v))
    rhs_a = _form(ws.abs_power(A, 2 * a), u) * _form(ws.abs_adj_power(A, 2 * (1 - a)), v)
    fu = ws.abs_func(A, pair.f) @ u
    gv = ws.abs_func(A, pair.g, adjoint=True) @ v
    return [
        Link("a", val**2, rhs_a),
        Link("b", val, float(np.linalg.norm(fu) * np.linalg.norm(gv))),
    ]


@checker(
    "R22",
    "cs_refinement",
    "||a|| ||b|| >= |<a,b> - <a,e><e,b>| + |<a,e><e,b>| >= |<a,b>|, a=u, b=v",
    ["u", "v", "e"],
    requires=[unit("e")],
)
def _cs_refinement(ws, prm):
    a, b, e = ws["u"], ws["v"], ws["e"]
    ab = _ip(a, b)
    proj = _ip(a, e) * _ip(e, b)
    middle = abs(ab - proj) + abs(proj)
    return [
        Link("upper", middle, float(np.linalg.norm(a) * np.linalg.norm(b))),
        Link("lower", abs(ab), middle),
    ]


@checker("R23", "polarization", "<x,y> = (1/4) sum_k ||x + i^k y||^2 i^k, x=u, y=v", ["u", "v"])
def _polarization(ws, prm):
    x, y = ws["u"], ws["v"]
    direct = _ip(x, y)
    powers = [1, 1j, -1, -1j]
    polar = sum(float(np.linalg.norm(x + ik * y)) ** 2 * ik for ik in powers) / 4
    return [
        Link("real", direct.real, polar.real, kind="eq"),
        Link("imag", direct.imag, polar.imag, kind="eq"),
    ]


@checker(
    "R24",
    "vector_square_power",
    "|<Ax,x>|^(2r) <= (||Ax||^r ||A*x||^r + |<A^2x,x>|^r)/2",
    ["A", "x"],
    ["r"],
    [unit("x"), r_at_least(1)],
)
def _vector_square_power(ws, prm):
    A, x, r = ws["A"], ws["x"], prm.r
    Ax = A @ x
    lhs = abs(_ip(Ax, x)) ** (2 * r)
    rhs = 0.5 * (
        (np.linalg.norm(Ax) * np.linalg.norm(H(A) @ x)) ** r + abs(_ip(A @ Ax, x)) ** r
    )
    return [Link("bound", lhs, float(rhs))]


@checker(
    "R25",
    "vector_weighted_power",
    "|<A^a X B^(1-a) x,x>|^r <= ||X||^r <(aA^r + (1-a)B^r)x,x>",
    ["A", "B", "X", "x"],
    ["r", "alpha"],
    [psd("A", "B"), unit("x"), r_at_least(2), alpha_unit],
)
def _vector_weighted_power(ws, prm):
    A, B, X, x = ws["A"], ws["B"], ws["X"], ws["x"]
    r, a = prm.r, prm.alpha
    M = ws.psd_power(A, a) @ X @ ws.psd_power(B, 1 - a)
    lhs = abs(_ip(M @ x, x)) ** r
    mean = a * ws.psd_power(A, r) + (1 - a) * ws.psd_power(B, r)
    return [Link("bound", lhs, ws.norm(X) ** r * _form(mean, x))]


@checker(
    "R26",
    "block_dilation",
    "w([[0,X],[X*,0]]) = w(X);  w(Re(Â X^ Â^-1)) = w(AXB^-1 + A^-1XB)/2, Â = diag(A, B)",
    ["A", "B", "X"],
    requires=[invertible_selfadjoint("A", "B")],
)
def _block_dilation(ws, prm):
    A, B, X = ws["A"], ws["B"], ws["X"]
    n = X.shape[0]
    Z = np.zeros((n, n), dtype=np.complex128)
    dil = np.block([[Z, X], [H(X), Z]])
    Ahat = np.block([[A, Z], [Z, B]])
    Ahat_inv = np.linalg.inv(Ahat)
    sim = (Ahat @ dil @ Ahat_inv + Ahat_inv @ dil @ Ahat) / 2
    M = 2 * _similarity_mean(A, X, B)
    w_dil, e_dil = ws.w(dil)
    w_x, e_x = ws.w(X)
    w_sim, e_sim = ws.w(sim)
    w_m, e_m = ws.w(M)
    return [
        Link("dilation", w_dil, w_x, kind="eq", err=e_dil + e_x),
        Link("block_reduction", w_sim, 0.5 * w_m, kind="eq", err=e_sim + 0.5 * e_m),
        Link(
            "dilation_norm",
            w_dil,
            ws.norm(X),
            kind="eq",
            err=e_dil,
            notes="companion: the dilation is Hermitian, so its radius is ||X||",
        ),
        Link(
            "block_reduction_norm",
            w_sim,
            0.5 * ws.norm(M),
            kind="eq",
            err=e_sim,
            notes="companion: the similarity mean of the dilation is Hermitian",
        ),
    ]

"""Weight functions, tail sums, and the convergence-criterion check.

The cluster expansion for the hexagonal model converges when, for each
of seven classes of fixed polymer, a weighted sum over all polymers
meeting it stays below 1.  This module assembles those seven column
totals from the integer tables of :mod:`aklt.tables` plus closed-form
geometric tails, for any decoration m, and runs the analogous
single-inequality check for the decorated square lattice.

Arithmetic is double precision; if any margin falls below 1e-4 the
assembly is recomputed with 40-digit arithmetic before a verdict.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .lattice import LatticeKind
from . import tables as tb

HEX_EPSILON = 0.0086
SQUARE_EPSILON = 0.046
SQUARE_A = 0.085

# length-dependent exponent for the hexagonal weights (strings so the
# extended-precision path can parse them exactly)
_A_SMALL = {3: "0.52", 4: "0.56", 5: "0.66", 6: "0.70"}
_A_SLOPE = "0.15"

MARGIN_FLOOR = 1e-4

ROW_LABELS = ("W3", "W4", "W5", "W6", "W7", "W8", "W9", "W10",
              "W11_20", "W_GT20", "L6", "L10", "L_GT10")
COLUMN_LABELS = ("W3", "W4", "W5", "W6", "L6", "W_GT6", "L_GT6")


class RegimeError(ValueError):
    """Raised when parameters leave the proven range of the theorem."""


class DivergenceError(ArithmeticError):
    """Raised when a geometric tail fails its convergence-ratio check."""


@dataclass(frozen=True)
class WeightParams:
    lattice: LatticeKind
    m: int = 0
    epsilon: float | None = None

    def __post_init__(self):
        if self.m < 0:
            raise ValueError("decoration m must be >= 0")
        if self.lattice is LatticeKind.SQUARE and self.m < 1:
            raise RegimeError(
                "criterion not satisfied for undecorated square lattice")
        if self.epsilon is None:
            eps = (HEX_EPSILON if self.lattice is LatticeKind.HEXAGONAL
                   else SQUARE_EPSILON)
            object.__setattr__(self, "epsilon", eps)


def a_of(l: int) -> float:
    """Exponent a(l) for hexagonal polymers of length l >= 3."""
    if l < 3:
        raise ValueError("hexagonal polymers have length >= 3")
    if l in _A_SMALL:
        return float(_A_SMALL[l])
    return float(_A_SLOPE) * l


def weight_magnitude(gamma, params: WeightParams) -> float:
    """Upper bound on |W(gamma)|: (1/3)^{(m+1)|gamma|-1}, with an extra
    (3/5) per crossing vertex on the square lattice."""
    n = len(gamma)
    val = 3.0 ** (-(params.m + 1) * n + 1)
    if params.lattice is LatticeKind.SQUARE:
        crossings = getattr(gamma, "crossing_vertices", None)
        if crossings is not None:
            val *= (3.0 / 5.0) ** len(crossings())
    return val


def little_w(l: int, params: WeightParams) -> float:
    """The summand weight w_m(l): weight bound times the exponential
    prefactor e^{a_m(l) + eps (m+1) l}."""
    m = params.m
    if params.lattice is LatticeKind.HEXAGONAL:
        return 3.0 * (math.exp(a_of(l) + params.epsilon * l) / 3.0 ** l) ** (m + 1)
    return (math.exp((SQUARE_A + params.epsilon) * (m + 1) * l)
            / ((m + 1) * 3.0 ** ((m + 1) * l - 1)))


# ---------------------------------------------------------------------------
# closed-form tails (hexagonal)

def _geom(x, L):
    # sum_{l>=L} x^l
    return x ** L / (1 - x)


def _geom_l(x, L):
    # sum_{l>=L} l x^l
    return x ** L * (L - (L - 1) * x) / (1 - x) ** 2


def _geom_l2(x, L):
    # sum_{l>=L} l^2 x^l
    return (x ** L * (L * L - (2 * L * L - 2 * L - 1) * x
                      + (L - 1) ** 2 * x ** 2) / (1 - x) ** 3)


def _step_ratio(params: WeightParams, exp=math.exp, num=float):
    """Per-unit-length ratio of w_m(l) for l >= 7: (e^{0.15+eps}/3)^{m+1}."""
    return (exp(num(_A_SLOPE) + num(params.epsilon)) / 3) ** (params.m + 1)


def tail_sum_loops(l_start: int, params: WeightParams) -> float:
    """sum over even l >= l_start of w_m(l) 2^{l-3} (the loop-count bound
    N_l(l) <= 2^{l-3}), in closed form."""
    if l_start % 2:
        raise ValueError("loop lengths are even")
    x = 2 * _step_ratio(params)
    if x >= 1:
        raise DivergenceError(f"loop tail ratio {x:.4f} >= 1")
    return 3.0 / 8.0 * x ** l_start / (1 - x * x)


def tail_sum_walks(params: WeightParams, l_start: int = 21,
                   variant: str = "inner") -> float:
    """sum over l >= l_start of w_m(l) times a walk-count bound:
    variant "bulk"  -> 2^{l-4},
    variant "inner" -> (2l+95) 2^{l-10},
    variant "inner_times_length" -> l (2l+95) 2^{l-10}."""
    x = 2 * _step_ratio(params)
    if x >= 1:
        raise DivergenceError(f"walk tail ratio {x:.4f} >= 1")
    if variant == "bulk":
        return 3.0 * 2.0 ** -4 * _geom(x, l_start)
    if variant == "inner":
        return 3.0 * 2.0 ** -10 * (2 * _geom_l(x, l_start)
                                   + 95 * _geom(x, l_start))
    if variant == "inner_times_length":
        return 3.0 * 2.0 ** -10 * (2 * _geom_l2(x, l_start)
                                   + 95 * _geom_l(x, l_start))
    raise ValueError(f"unknown variant {variant!r}")


# ---------------------------------------------------------------------------
# column assembly (hexagonal)

@dataclass(frozen=True)
class HexTables:
    """Integer inputs of the column assembly."""
    s_rows: dict          # class -> {l': count}, telescoped supremum rows
    s_loop_rows: dict     # class -> {6: count, 10: count}
    q: dict               # odd l' -> count
    r: dict               # even l' -> count
    loops: dict           # even l -> loops through an edge


def load_hex_tables(boundary: str = "both", use_cache: bool = True,
                    threads: int = 1) -> HexTables:
    s_rows, s_loops = {}, {}
    for cls in tb.S_CLASSES:
        res = tb.s_table(cls, 20, boundary=boundary, use_cache=use_cache,
                         threads=threads)
        s_rows[cls] = res.rows
        s_loops[cls] = res.loop_rows
    return HexTables(
        s_rows=s_rows,
        s_loop_rows=s_loops,
        q=tb.q_table(19, boundary=boundary, use_cache=use_cache,
                     threads=threads).rows,
        r=tb.r_table(20, use_cache=use_cache, threads=threads).rows,
        loops=tb.loops_through_edge_table(28, use_cache=use_cache,
                                          threads=threads).rows,
    )


def _hex_columns(m: int, data: HexTables, hp: bool = False) -> dict:
    """All 13x7 cells of the criterion table for decoration m.

    hp=True switches every float to 40-digit arithmetic.
    """
    if hp:
        import mpmath
        mp = mpmath.mp
        mp.dps = 40
        num, exp = mpmath.mpf, mpmath.exp
        eps = num("0.0086")
    else:
        num, exp = float, math.exp
        eps = HEX_EPSILON

    def a(l):
        return num(_A_SMALL[l]) if l in _A_SMALL else num(_A_SLOPE) * l

    def w(l):
        return 3 * (exp(a(l) + eps * l) / 3 ** l) ** (m + 1)

    x = 2 * _step_ratio_generic(m, eps, exp, num)
    if x >= 1:
        raise DivergenceError(f"tail ratio {x} >= 1")
    # long-polymer tails: bulk walks, inner walks, loops beyond the table
    tail_bulk = 3 * _geom(x, 21) / 16
    tail_inner = 3 * (2 * _geom_l(x, 21) + 95 * _geom(x, 21)) / 1024
    tail_loops = (sum(w(l) * data.loops[l] for l in range(12, 29, 2))
                  + 3 * x ** 30 / (8 * (1 - x * x)))

    def col_fixed_small(cls, length, is_loop):
        """Columns with a fixed short polymer (walk of length 3..6 or the
        hexagon): table rows divided by a_m(length)."""
        am = (m + 1) * a(length)
        s = data.s_rows[cls]
        # how many corridor starts a long polymer offers: |gamma| for a
        # loop, |gamma| - 2 for a walk (endpoints sit on the boundary)
        c = length if is_loop else length - 2
        cells = [s[lp] * w(lp) / am for lp in range(3, 11)]
        cells.append(sum(s[lp] * w(lp) for lp in range(11, 21)) / am)
        if is_loop:
            cells.append(c * tail_inner / am)
        else:
            cells.append((tail_bulk + c * tail_inner) / am)
        m6, m10 = data.s_loop_rows[cls][6], data.s_loop_rows[cls][10]
        cells.append(m6 * w(6) / am)
        cells.append(m10 * w(10) / am)
        cells.append(c * tail_loops / am)
        return cells

    def col_fixed_long(kind):
        """Columns with a long fixed polymer: per-unit-length corridor
        bounds, at the worst length (7 for walks, 10 for loops)."""
        lstar = 7 if kind == "w" else 10
        denom = (m + 1) * num(_A_SLOPE) * lstar

        def short_walk_coef(lp):
            if lp % 2:
                return data.q[lp]
            if lp == 4:
                return lstar / 2 + 1
            if lp == 6:
                return lstar / 2 + 2
            if kind == "w":
                return (lstar / 2 + 11 * lp / 4 - 12) * data.r[lp]
            # fixed-loop column: published corridor constant
            return 17 * data.r[lp]

        cells = [short_walk_coef(lp) * w(lp) / denom for lp in range(3, 11)]
        cells.append(sum(short_walk_coef(lp) * w(lp)
                         for lp in range(11, 21)) / denom)
        cells.append(lstar * tail_inner / denom)
        cells.append(lstar * data.loops[6] * w(6) / denom)
        cells.append(lstar * data.loops[10] * w(10) / denom)
        cells.append(lstar * tail_loops / denom)
        return cells

    cols = {
        "W3": col_fixed_small(("w", 3), 3, False),
        "W4": col_fixed_small(("w", 4), 4, False),
        "W5": col_fixed_small(("w", 5), 5, False),
        "W6": col_fixed_small(("w", 6), 6, False),
        "L6": col_fixed_small(("l", 6), 6, True),
        "W_GT6": col_fixed_long("w"),
        "L_GT6": col_fixed_long("l"),
    }
    return {name: dict(zip(ROW_LABELS, vals)) for name, vals in cols.items()}


def _step_ratio_generic(m, eps, exp, num):
    return (exp(num(_A_SLOPE) + eps) / 3) ** (m + 1)


def column_total(fixed_class: str, params: WeightParams,
                 data: HexTables | None = None) -> float:
    """Total of one criterion column (hexagonal)."""
    if fixed_class not in COLUMN_LABELS:
        raise ValueError(f"unknown column {fixed_class!r}")
    if data is None:
        data = load_hex_tables()
    cols = _hex_columns(params.m, data)
    return sum(cols[fixed_class].values())


# ---------------------------------------------------------------------------
# verification reports

@dataclass(frozen=True)
class KpuReport:
    lattice: LatticeKind
    m: int
    N: int
    K: int
    cells: dict
    totals: dict
    threshold: float
    margins: dict
    passed: bool
    extended_precision: bool = False
    notes: tuple[str, ...] = ()

    def to_json(self) -> dict:
        return {
            "lattice": self.lattice.value,
            "m": self.m, "N": self.N, "K": self.K,
            "cells": self.cells,
            "totals": self.totals,
            "threshold": self.threshold,
            "margins": self.margins,
            "passed": self.passed,
            "extended_precision": self.extended_precision,
            "notes": list(self.notes),
        }


def verify_kpu_hex(m: int, K: int, N: int, use_cache: bool = True,
                   threads: int = 1, compare_full_boundary: bool = True,
                   ) -> KpuReport:
    """Run the seven-column convergence check for the hexagonal model.

    Valid in the proven regime (K >= 25 and N - K >= 53) or for the full
    ball K = 0, where the inner boundary is empty and the tables are
    recomputed with outer-corner windows only.
    """
    if m < 0:
        raise ValueError("m must be >= 0")
    if not ((K >= 25 and N - K >= 53) or K == 0):
        raise RegimeError(
            "outside proven regime: need (K >= 25 and N - K >= 53) or K = 0")
    notes: list[str] = []
    boundary = "outer" if K == 0 else "both"
    data = load_hex_tables(boundary=boundary, use_cache=use_cache,
                           threads=threads)
    if K == 0 and compare_full_boundary:
        full = load_hex_tables(boundary="both", use_cache=use_cache,
                               threads=threads)
        for cls in tb.S_CLASSES:
            diffs = [lp for lp in range(3, 21)
                     if data.s_rows[cls][lp] != full.s_rows[cls][lp]]
            if diffs:
                notes.append(
                    f"K=0 outer-only supremum rows differ from the annulus "
                    f"variant for class {cls[0]}{cls[1]} at l'={diffs}")

    cells = _hex_columns(m, data)
    totals = {c: sum(cells[c].values()) for c in COLUMN_LABELS}
    margins = {c: 1.0 - totals[c] for c in COLUMN_LABELS}
    hp = min(margins.values()) < MARGIN_FLOOR
    if hp:
        cells = _hex_columns(m, data, hp=True)
        totals = {c: float(sum(cells[c].values())) for c in COLUMN_LABELS}
        cells = {c: {r: float(v) for r, v in col.items()}
                 for c, col in cells.items()}
        margins = {c: 1.0 - totals[c] for c in COLUMN_LABELS}
        notes.append("worst margin below 1e-4; recomputed at 40 digits")
    passed = all(t < 1.0 for t in totals.values())
    return KpuReport(LatticeKind.HEXAGONAL, m, N, K, cells, totals, 1.0,
                     margins, passed, extended_precision=hp,
                     notes=tuple(notes))


def verify_kpu_square(m: int, K: int = 2, N: int = 10,
                      use_cache: bool = True, threads: int = 1) -> KpuReport:
    """Single-sum convergence check for the decorated square lattice."""
    if m < 1:
        raise RegimeError(
            "criterion not satisfied for undecorated square lattice (m >= 1)")
    if N <= max(K + 4, 8):
        raise RegimeError("outside proven regime: need N > max(K+4, 8)")
    params = WeightParams(LatticeKind.SQUARE, m)
    cn = tb.square_cn_table(7, use_cache=use_cache, threads=threads).rows
    x = math.exp((SQUARE_A + params.epsilon) * (m + 1)) / 3 ** m
    if x >= 1:
        raise DivergenceError(f"square tail ratio {x:.4f} >= 1")
    cells = {"C2": 0.5 * little_w(2, params)}
    for n in range(3, 8):
        cells[f"C{n}"] = cn[n] * little_w(n, params)
    # n >= 8: C_n <= 4(n+1) 3^{n-1}, folded into the ratio x
    cells["C_GE8"] = 4.0 / (m + 1) * (_geom_l(x, 8) + _geom(x, 8))
    total = sum(cells.values())
    margin = SQUARE_A - total
    return KpuReport(LatticeKind.SQUARE, m, N, K,
                     {"square": cells}, {"square": total}, SQUARE_A,
                     {"square": margin}, passed=total <= SQUARE_A)


# ---------------------------------------------------------------------------
# correlation-regime checks

@dataclass(frozen=True)
class RegimeCheck:
    passed: bool
    checks: tuple[tuple[str, bool], ...]

    def to_json(self) -> dict:
        return {"passed": self.passed,
                "checks": [{"condition": c, "ok": ok} for c, ok in self.checks]}


def corr_regime_check(lattice: LatticeKind, M: float, d: float) -> RegimeCheck:
    """Whether the two-region correlation bound applies at hole size M and
    separation d, listing every distance threshold used along the way."""
    if lattice is LatticeKind.HEXAGONAL:
        checks = (
            ("M/2 >= 25 (hole radius in criterion regime)", M / 2 >= 25),
            ("d > 6 (short-walk columns unchanged)", d > 6),
            ("d >= 7 (long-walk column restriction)", d >= 7),
            ("d >= 22 (long-walk tail bound)", d >= 22),
            ("d >= 50 (odd-length corridor bound)", d >= 50),
        )
    else:
        checks = (("d >= 8 (square-lattice separation)", d >= 8),)
    return RegimeCheck(all(ok for _, ok in checks), checks)

"""The final quantitative bounds: indistinguishability, local order, and
correlation decay, with all model constants.

Constants are hard-coded from the published reference values; the local
order constant can also be recomputed from its defining expression, and
any disagreement between the two is reported, never silently patched
(the square-lattice value is a known discrepancy, see
``recompute_ltqo_constant``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .criterion import HEX_EPSILON, SQUARE_EPSILON, corr_regime_check
from .lattice import LatticeKind


@dataclass(frozen=True)
class ModelConstants:
    lattice: LatticeKind
    K_min: int          # smallest inner radius in the proven regime
    N_gap: int          # required N - K gap
    eta: float          # decay rate of F
    m_min: int          # smallest decoration with a convergent expansion

    def L(self, x: float) -> float:
        """Linear factor in F: 1.8(2x+1) hexagonal, 1.36x square."""
        if self.lattice is LatticeKind.HEXAGONAL:
            return 1.8 * (2 * x + 1)
        return 1.36 * x

    def inner_loop_length(self, K: int) -> int:
        """|gamma^(K)|: length of the loop tracing the inner boundary."""
        if self.lattice is LatticeKind.HEXAGONAL:
            return 6 * (2 * K - 1)
        return 8 * (K - 1)


HEX_CONSTANTS = ModelConstants(LatticeKind.HEXAGONAL,
                               K_min=25, N_gap=52, eta=0.0172, m_min=0)
SQUARE_CONSTANTS = ModelConstants(LatticeKind.SQUARE,
                                  K_min=2, N_gap=4, eta=0.046, m_min=1)

# published local-order constants (4-dp)
LTQO_CONSTANT_QUOTED = {LatticeKind.HEXAGONAL: 24.5615,
                        LatticeKind.SQUARE: 2.4951}

# eta is twice epsilon for the hexagonal lattice, equal to it for the square
assert HEX_CONSTANTS.eta == 2 * HEX_EPSILON
assert SQUARE_CONSTANTS.eta == SQUARE_EPSILON


def constants_for(lattice: LatticeKind) -> ModelConstants:
    return (HEX_CONSTANTS if lattice is LatticeKind.HEXAGONAL
            else SQUARE_CONSTANTS)


@dataclass(frozen=True)
class BoundResult:
    value: float
    regime_ok: bool
    inputs: dict
    notes: tuple[str, ...] = ()

    def to_json(self) -> dict:
        return {"value": self.value, "regime_ok": self.regime_ok,
                "inputs": self.inputs, "notes": list(self.notes)}


def f_bound(lattice: LatticeKind, m: int, N: int, K: int) -> BoundResult:
    """F_m(N,K) = (m+1) L(K) e^{-eta (m+1) (N-K)}: the free-energy-ratio
    bound that every other estimate is built from."""
    c = constants_for(lattice)
    value = (m + 1) * c.L(K) * math.exp(-c.eta * (m + 1) * (N - K))
    # the theorem's chain N > K + N_gap > K_min + N_gap forces K > K_min
    regime = m >= c.m_min and K > c.K_min and N > K + c.N_gap
    return BoundResult(value, regime,
                       {"lattice": lattice.value, "m": m, "N": N, "K": K})


def indistinguishability_bound(lattice: LatticeKind, m: int, N: int, K: int,
                               norm_A: float) -> BoundResult:
    """2 ||A|| F e^F: how far a bulk observable's ground-state expectation
    can sit from its infinite-volume value."""
    f = f_bound(lattice, m, N, K)
    return BoundResult(2 * norm_A * f.value * math.exp(f.value), f.regime_ok,
                       {**f.inputs, "norm_A": norm_A})


def recompute_ltqo_constant(lattice: LatticeKind) -> tuple[float, float, bool]:
    """(recomputed, quoted, agree): evaluate the defining expression
    C = (2 L(K_min) / |gamma^(K_min)|) exp((m_min+1) L(K_min) / K_min^{m_min+1})
    and compare with the published value at 5e-4.

    The hexagonal value reproduces the published 24.5615.  The square
    expression evaluates to 0.68 e^{1.36} = 2.6494, not the published
    2.4951; both numbers are surfaced so callers can see the mismatch.
    """
    c = constants_for(lattice)
    lk = c.L(c.K_min)
    recomputed = (2 * lk / c.inner_loop_length(c.K_min)
                  * math.exp((c.m_min + 1) * lk / c.K_min ** (c.m_min + 1)))
    quoted = LTQO_CONSTANT_QUOTED[lattice]
    return recomputed, quoted, abs(recomputed - quoted) < 5e-4


def ltqo_bound(lattice: LatticeKind, m: int, N: int, K: int,
               norm_A: float, recompute: bool = False) -> BoundResult:
    """Local-order bound 2 C |gamma^(K,m)| ||A|| e^{-eta (m+1) (N-K)},
    with |gamma^(K,m)| = (m+1)|gamma^(K)|.

    recompute=True uses the re-derived constant instead of the published
    one; a mismatch between the two is always reported in notes.
    """
    c = constants_for(lattice)
    recomputed, quoted, agree = recompute_ltqo_constant(lattice)
    const = recomputed if recompute else quoted
    loop_len = (m + 1) * c.inner_loop_length(K)
    value = 2 * const * loop_len * norm_A * math.exp(-c.eta * (m + 1) * (N - K))
    regime = (m >= c.m_min and K >= c.K_min
              and N >= K + max(c.N_gap, math.log(max(K, 1)) / c.eta))
    notes = ()
    if not agree:
        notes = (f"constant recomputed from its defining expression is "
                 f"{recomputed:.4f} but the published value is {quoted:.4f}; "
                 f"using {'recomputed' if recompute else 'published'}",)
    return BoundResult(value, regime,
                       {"lattice": lattice.value, "m": m, "N": N, "K": K,
                        "norm_A": norm_A, "constant": const,
                        "constant_recomputed": recomputed,
                        "constant_quoted": quoted},
                       notes)


def correlation_bound(lattice: LatticeKind, M: float, d: float,
                      norm_A: float, norm_B: float) -> BoundResult:
    """Two-region correlation decay ||A|| ||B|| M^{2.9} e^{-eps d}."""
    eps = HEX_EPSILON if lattice is LatticeKind.HEXAGONAL else SQUARE_EPSILON
    regime = corr_regime_check(lattice, M, d)
    value = norm_A * norm_B * M ** 2.9 * math.exp(-eps * d)
    notes = tuple(f"failed: {cond}" for cond, ok in regime.checks if not ok)
    return BoundResult(value, regime.passed,
                       {"lattice": lattice.value, "M": M, "d": d,
                        "norm_A": norm_A, "norm_B": norm_B},
                       notes)

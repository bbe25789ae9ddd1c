"""Analytic energetics of the x/z-type engines at k_B T = 1.

Every expression is a ratio of sums of exponentials. They are held as term
lists ``[(coefficient, exponent), ...]`` and evaluated after dividing the
numerator and denominator by the largest exponential, which keeps fields of
order 20 and beyond finite.
"""

from __future__ import annotations

import enum
import math


class ClosedFormId(str, enum.Enum):
    W1_HH = "w1_hh"
    QM_XZ_HH = "qm_xz_hh"
    QM_XY_HH = "qm_xy_hh"
    W2_XZ_HH = "w2_xz_hh"
    QT_XZ_HH = "qt_xz_hh"
    WT_XZ_HH = "wt_xz_hh"
    ETA_XZ_HH = "eta_xz_hh"
    ETA_XY_HH = "eta_xy_hh"
    ETA_XX_HH = "eta_xx_hh"
    ADVANTAGE_FACTOR_HH = "advantage_factor_hh"
    WT_H1 = "wt_h1"
    WT_11 = "wt_11"
    THRESHOLD_H1 = "threshold_h1"


class UnknownClosedFormError(KeyError):
    pass


Terms = list[tuple[float, float]]


def _ratio(num: Terms, den: Terms) -> float:
    top = max(x for _, x in num + den)
    n = math.fsum(c * math.exp(x - top) for c, x in num)
    d = math.fsum(c * math.exp(x - top) for c, x in den)
    return n / d


def _scale(terms: Terms, k: float) -> Terms:
    return [(k * c, x) for c, x in terms]


def _mul(a: Terms, b: Terms) -> Terms:
    return [(ca * cb, xa + xb) for ca, xa in a for cb, xb in b]


def _denominator(j: float, b1: float) -> Terms:
    # 1 + e^{2B1} (1 + e^{2B1} + e^{8J})
    return [(1, 0), (1, 2 * b1), (1, 4 * b1), (1, 2 * b1 + 8 * j)]


def _bracket(j: float, b1: float) -> Terms:
    # 1 + e^{2B1} (1 + e^{2B1} - 3 e^{8J})
    return [(1, 0), (1, 2 * b1), (1, 4 * b1), (-3, 2 * b1 + 8 * j)]


def _wt_xz_numerator(b1: float, b2: float) -> Terms:
    # (B1 - B2)(1 - e^{4B1})
    return _scale([(1, 0), (-1, 4 * b1)], b1 - b2)


def _qm_xz_numerator(j: float, b1: float, b2: float, field_factor: float = 1.0) -> Terms:
    return _scale([(-1, 0), (1, 4 * b1)], field_factor * b2) + _scale(_bracket(j, b1), -2 * j)


def _w1_hh(j, b1, b2):
    return _ratio(_scale([(-1, 0), (1, 4 * b1)], 2 * (b1 - b2)), _denominator(j, b1))


def _qm_xz_hh(j, b1, b2):
    return _ratio(_qm_xz_numerator(j, b1, b2), _denominator(j, b1))


def _qm_xy_hh(j, b1, b2):
    return _ratio(_qm_xz_numerator(j, b1, b2, field_factor=2.0), _denominator(j, b1))


def _w2_xz_hh(j, b1, b2):
    return _ratio(_wt_xz_numerator(b1, b2), _denominator(j, b1))


def _qt_xz_hh(j, b1, b2):
    num = [(b1, 0), (-b1, 4 * b1)] + _scale([(1, 0), (1, 2 * b1), (1, 4 * b1)], 8 * j)
    return -6 * j + _ratio(num, _denominator(j, b1))


def _wt_xz_hh(j, b1, b2):
    return _ratio(_wt_xz_numerator(b1, b2), _denominator(j, b1))


def _eta_xz_hh(j, b1, b2):
    return _ratio(_wt_xz_numerator(b1, b2), _qm_xz_numerator(j, b1, b2))


def _eta_xy_hh(j, b1, b2):
    den = _scale([(-1, 0), (1, 4 * b1)], b2) + _scale(_bracket(j, b1), -j)
    return _ratio(_wt_xz_numerator(b1, b2), den)


def _eta_xx_hh(j, b1, b2):
    num = _scale([(-1, 0), (1, 4 * b1)], b1 - b2)
    den = _scale([(1, 0), (-1, 4 * b1)], b2) + _scale([(1, 0), (1, 4 * b1), (-2, 2 * b1 + 8 * j)], j)
    return _ratio(num, den)


def _advantage_factor_hh(j, b1, b2):
    # eta_xz / (1 - B1/B2): the bracket's J term carries 1/B2
    base = [(-1, 0), (1, 4 * b1)]
    return _ratio(base, base + _scale(_bracket(j, b1), -2 * j / b2))


def _wt_h1(j, b1, b2):
    num = _scale(
        _mul([(-1, 0), (1, 2 * b1)], [(3, 0), (4, 2 * b1), (3, 4 * b1), (-1, 2 * b1 + 12 * j)]),
        b2 - b1,
    )
    den = _scale(_mul([(1, 0), (1, 2 * b1)], [(1, 0), (1, 4 * b1), (1, 2 * b1 + 12 * j)]), 3)
    return _ratio(num, den)


def _wt_11(j, b1, b2):
    p = _scale(
        _mul([(-1, 0), (1, 4 * b1)], [(2, 0), (1, 2 * b1), (2, 4 * b1), (1, 2 * b1 + 16 * j)]),
        b2 - b1,
    )
    q = [(1, 0), (1, 2 * b1), (1, 4 * b1), (1, 6 * b1), (1, 8 * b1), (1, 4 * b1 + 24 * j)]
    q += _mul([(1, 2 * b1 + 16 * j)], [(1, 0), (1, 2 * b1), (1, 4 * b1)])
    return _ratio(p, q)


def _threshold_h1(j, b1, b2):
    return negative_work_threshold_h1(b1)


_FORMS = {
    ClosedFormId.W1_HH: _w1_hh,
    ClosedFormId.QM_XZ_HH: _qm_xz_hh,
    ClosedFormId.QM_XY_HH: _qm_xy_hh,
    ClosedFormId.W2_XZ_HH: _w2_xz_hh,
    ClosedFormId.QT_XZ_HH: _qt_xz_hh,
    ClosedFormId.WT_XZ_HH: _wt_xz_hh,
    ClosedFormId.ETA_XZ_HH: _eta_xz_hh,
    ClosedFormId.ETA_XY_HH: _eta_xy_hh,
    ClosedFormId.ETA_XX_HH: _eta_xx_hh,
    ClosedFormId.ADVANTAGE_FACTOR_HH: _advantage_factor_hh,
    ClosedFormId.WT_H1: _wt_h1,
    ClosedFormId.WT_11: _wt_11,
    ClosedFormId.THRESHOLD_H1: _threshold_h1,
}


def evaluate(form: ClosedFormId | str, j: float, b1: float, b2: float) -> float:
    """Value of a closed-form expression at coupling ``j`` and fields ``b1 -> b2``.

    ``threshold_h1`` ignores ``j`` and ``b2`` and returns the coupling at which
    the spin-1/2 x spin-1 work changes sign.
    """
    try:
        key = ClosedFormId(form)
    except ValueError:
        raise UnknownClosedFormError(form) from None
    if not all(math.isfinite(v) for v in (j, b1, b2)):
        raise ValueError("arguments must be finite")
    return _FORMS[key](float(j), float(b1), float(b2))


def advantage_cutoff(b1: float) -> float:
    """Coupling below which the coupled x/z spin-1/2 engine beats ``1 - B1/B2``.

    Root of ``e^{2B1} (3 e^{8J} - e^{2B1} - 1) = 1``.
    """
    if not b1 > 0:
        raise ValueError("b1 must be positive")
    # ln((e^{-2b} + e^{2b} + 1) / 3), factored for large b
    return (2 * b1 + math.log1p(math.exp(-2 * b1) + math.exp(-4 * b1)) - math.log(3)) / 8


def negative_work_threshold_h1(b1: float, medium=None) -> float:
    """Coupling where ``4 + 3 e^{2B1} - e^{12J}`` vanishes (spin-1/2 x spin-1 only)."""
    if medium is not None and (medium.spin_a.twice_s, medium.spin_b.twice_s) != (1, 2):
        raise ValueError("the negative-work threshold is defined for the (1/2, 1) pair only")
    if not b1 >= 0:
        raise ValueError("b1 must be non-negative")
    return (2 * b1 + math.log(3 + 4 * math.exp(-2 * b1))) / 12

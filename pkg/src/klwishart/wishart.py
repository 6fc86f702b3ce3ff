"""Wishart and inverse-Wishart distributions for real shape nu > d - 1.

Parameters are stored scatter-side (S = V^{-1}) because the posterior
update formulas are additive in S; the scale V is derived on demand.
Sampling uses the Bartlett construction, valid for any real nu > d - 1.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.special import gammaln

from . import pdcore
from ._kernels import batch_bartlett
from .errors import DimensionMismatch, InvalidShape, NoInteriorMode, ShapeTooSmall
from .pdcore import PDMatrix

LOG_PI = math.log(math.pi)


def validate_shape(nu: float, d: int) -> None:
    """Enforce nu > d - 1 (strict); low integer shapes give rank-deficient
    samples and cannot support a density on PD matrices."""
    if not nu > d - 1:
        raise InvalidShape(
            f"Wishart shape must satisfy nu > d - 1; got nu={nu} with d={d}"
        )


def multivariate_log_gamma(a: float, d: int) -> float:
    """log Gamma_d(a) = (d(d-1)/4) log pi + sum_j log Gamma(a + (1-j)/2)."""
    return d * (d - 1) / 4.0 * LOG_PI + float(
        sum(gammaln(a + (1 - j) / 2.0) for j in range(1, d + 1))
    )


class WishartParams:
    """Wishart W(V, nu) stored via the scatter-side parameter S = V^{-1}."""

    __slots__ = ("scale_inv", "shape")

    def __init__(self, scale_inv: PDMatrix, shape: float):
        validate_shape(shape, scale_inv.dim)
        self.scale_inv = scale_inv
        self.shape = float(shape)

    @property
    def dim(self) -> int:
        return self.scale_inv.dim

    def scale(self) -> PDMatrix:
        """V = S^{-1}."""
        return pdcore.inverse(self.scale_inv)


class InverseWishartParams:
    """Inverse-Wishart IW(S, nu) in the Dawid convention: P ~ W(S^{-1}, nu)
    iff C = P^{-1} ~ IW(S, nu)."""

    __slots__ = ("scatter", "shape")

    def __init__(self, scatter: PDMatrix, shape: float):
        validate_shape(shape, scatter.dim)
        self.scatter = scatter
        self.shape = float(shape)

    @property
    def dim(self) -> int:
        return self.scatter.dim


def wishart_log_pdf(w: WishartParams, P: PDMatrix) -> float:
    """log W(P | V, nu) with V = S^{-1}."""
    d = w.dim
    if P.dim != d:
        raise DimensionMismatch(f"wishart_log_pdf: dims {P.dim} vs {d}")
    nu = w.shape
    # log Z = (nu d / 2) log 2 + (nu/2) log|V| + log Gamma_d(nu/2); log|V| = -log|S|.
    log_z = (
        nu * d / 2.0 * math.log(2.0)
        - nu / 2.0 * w.scale_inv.logdet
        + multivariate_log_gamma(nu / 2.0, d)
    )
    return (
        (nu - d - 1) / 2.0 * P.logdet
        - 0.5 * pdcore.trace_product(P, w.scale_inv)
        - log_z
    )


def wishart_mean(w: WishartParams) -> PDMatrix:
    """E[P] = nu V."""
    return pdcore.make_pd(w.shape * w.scale().entries)


def wishart_mean_inverse(w: WishartParams) -> PDMatrix:
    """E[P^{-1}] = S / (nu - d - 1); requires nu > d + 1."""
    if not w.shape > w.dim + 1:
        raise ShapeTooSmall(
            f"E[P^-1] requires nu > d + 1; got nu={w.shape} with d={w.dim}"
        )
    return pdcore.make_pd(w.scale_inv.entries / (w.shape - w.dim - 1))


def wishart_mode(w: WishartParams) -> PDMatrix:
    """Mode (nu - d - 1) V; only interior (hence valid) for nu > d + 1."""
    if not w.shape > w.dim + 1:
        raise NoInteriorMode(
            f"mode requires nu > d + 1; got nu={w.shape} with d={w.dim}"
        )
    return pdcore.make_pd((w.shape - w.dim - 1) * w.scale().entries)


def sample_wishart_batch(w: WishartParams, n: int, rng: np.random.Generator) -> np.ndarray:
    """n Bartlett draws as an (n, d, d) array.

    T lower triangular with T_ii^2 ~ chi-square(nu - i + 1) and standard
    normal strict lower triangle; sample = L T T' L' with L = chol(V).
    """
    d = w.dim
    nu = w.shape
    L = np.linalg.cholesky(w.scale().entries)
    tdiag = np.sqrt(rng.gamma(shape=(nu - np.arange(d)) / 2.0, scale=2.0, size=(n, d)))
    offd = rng.standard_normal((n, d * (d - 1) // 2))
    return batch_bartlett(L, tdiag, offd)


def sample_wishart(w: WishartParams, rng: np.random.Generator) -> PDMatrix:
    """Single Bartlett draw; PD with probability 1."""
    return pdcore.make_pd(sample_wishart_batch(w, 1, rng)[0])


def iw_log_pdf(iw: InverseWishartParams, C: PDMatrix) -> float:
    """log IW(C | S, nu) = log W(C^{-1} | S^{-1}, nu) - (d+1) log|C|."""
    d = iw.dim
    if C.dim != d:
        raise DimensionMismatch(f"iw_log_pdf: dims {C.dim} vs {d}")
    # W(C^{-1} | S^{-1}, nu): scale V = S^{-1}, so the scatter side is S itself.
    w = WishartParams(scale_inv=iw.scatter, shape=iw.shape)
    return wishart_log_pdf(w, pdcore.inverse(C)) - (d + 1) * C.logdet


def iw_mode(iw: InverseWishartParams) -> PDMatrix:
    """Inverse-Wishart mode S / (nu + d + 1)."""
    return pdcore.make_pd(iw.scatter.entries / (iw.shape + iw.dim + 1))


def wishart_to_inverse(w: WishartParams) -> InverseWishartParams:
    """P ~ W(S^{-1}, nu) iff P^{-1} ~ IW(S, nu)."""
    return InverseWishartParams(scatter=w.scale_inv, shape=w.shape)

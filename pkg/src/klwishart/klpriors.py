"""Mode-and-pseudocount priors for the Gaussian precision (and mean).

A prior is elicited as (mode covariance Sigma, pseudocount alpha > 0):
its log-density is a scaled negative KL divergence between Gaussians, up
to a constant.  Classical Wishart / normal-Wishart parameters are derived
read-only views, never inputs.
"""

from __future__ import annotations

import numpy as np

from . import gaussian, pdcore
from .errors import DimensionMismatch, KLWishartError
from .gaussian import Gaussian
from .pdcore import PDMatrix
from .wishart import WishartParams, wishart_log_pdf


def _check_alpha(alpha: float) -> float:
    if not alpha > 0:
        raise KLWishartError(
            "pseudocount alpha must be strictly positive; the alpha = 0 "
            "limit is taken in the posterior, not the prior"
        )
    return float(alpha)


class KLWishartPrior:
    """Known-mean precision prior with mode Sigma^{-1} and pseudocount alpha."""

    __slots__ = ("mode_cov", "pseudocount", "known_mean")

    def __init__(self, mode_cov: PDMatrix, pseudocount: float, known_mean):
        known_mean = np.asarray(known_mean, dtype=float)
        if known_mean.shape != (mode_cov.dim,):
            raise DimensionMismatch("known_mean length vs mode_cov dimension")
        known_mean.setflags(write=False)
        self.mode_cov = mode_cov
        self.pseudocount = _check_alpha(pseudocount)
        self.known_mean = known_mean

    @property
    def dim(self) -> int:
        return self.mode_cov.dim


class KLNormalWishartPrior:
    """Unknown-mean prior with mode (m, Sigma^{-1}) and pseudocount alpha."""

    __slots__ = ("prior_mean", "mode_cov", "pseudocount")

    def __init__(self, prior_mean, mode_cov: PDMatrix, pseudocount: float):
        prior_mean = np.asarray(prior_mean, dtype=float)
        if prior_mean.shape != (mode_cov.dim,):
            raise DimensionMismatch("prior_mean length vs mode_cov dimension")
        prior_mean.setflags(write=False)
        self.prior_mean = prior_mean
        self.mode_cov = mode_cov
        self.pseudocount = _check_alpha(pseudocount)

    @property
    def dim(self) -> int:
        return self.mode_cov.dim


def to_wishart(p: KLWishartPrior) -> WishartParams:
    """Classical view: W with S = alpha Sigma, nu = alpha + d + 1."""
    s = pdcore.make_pd(p.pseudocount * p.mode_cov.entries)
    return WishartParams(scale_inv=s, shape=p.pseudocount + p.dim + 1)


def to_normal_wishart(p: KLNormalWishartPrior):
    """Classical view: (W(S = alpha Sigma, nu = alpha + d), m, alpha).

    The last element scales the conditional mean precision: mu | P is
    Gaussian with precision alpha P.
    """
    s = pdcore.make_pd(p.pseudocount * p.mode_cov.entries)
    wish = WishartParams(scale_inv=s, shape=p.pseudocount + p.dim)
    return wish, p.prior_mean, p.pseudocount


def log_density_wishart_prior(p: KLWishartPrior, P: PDMatrix) -> float:
    """log prior density of a precision matrix; equals
    -alpha KL(N(mu, Sigma) || N(mu, P^{-1})) up to a constant."""
    if P.dim != p.dim:
        raise DimensionMismatch("log_density_wishart_prior: dimension mismatch")
    return wishart_log_pdf(to_wishart(p), P)


def log_density_nw_prior(p: KLNormalWishartPrior, mu, P: PDMatrix) -> float:
    """Joint log prior density of (mu, P); equals
    -alpha KL(N(m, Sigma) || N(mu, P^{-1})) up to a constant."""
    mu = np.asarray(mu, dtype=float)
    if P.dim != p.dim or mu.shape != (p.dim,):
        raise DimensionMismatch("log_density_nw_prior: dimension mismatch")
    wish, m, alpha = to_normal_wishart(p)
    cond_cov = pdcore.inverse(pdcore.make_pd(alpha * P.entries))
    return wishart_log_pdf(wish, P) + gaussian.logpdf(Gaussian(m, cond_cov), mu)

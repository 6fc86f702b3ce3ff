"""Numerical verification harness.

Each check re-derives one identity from first principles on random inputs
and reports a residual (or z-score) against a fixed threshold.  Checks are
deterministic given a seed and independent of one another.  Negative
controls (deliberately corrupted formulas) are available via flags so the
harness itself is guarded against vacuous passes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from . import gaussian, inference, klpriors, pdcore, wishart
from .errors import NotPositiveDefinite
from .gaussian import Gaussian
from .pdcore import PDMatrix


@dataclass(frozen=True)
class CheckReport:
    name: str
    passed: bool
    statistic: float
    threshold: float
    detail: str = ""

    def to_json(self) -> str:
        return json.dumps(
            {
                "name": self.name,
                "passed": self.passed,
                "statistic": self.statistic,
                "threshold": self.threshold,
                "detail": self.detail,
            }
        )


def _report(name: str, statistic: float, threshold: float, detail: str = "") -> CheckReport:
    return CheckReport(
        name=name,
        passed=bool(statistic <= threshold),
        statistic=float(statistic),
        threshold=float(threshold),
        detail=detail,
    )


def random_pd(d: int, rng: np.random.Generator) -> PDMatrix:
    """Well-conditioned random PD matrix (eigenvalues roughly in [0.3, 3])."""
    a = rng.standard_normal((d, d))
    q, _ = np.linalg.qr(a)
    eig = rng.uniform(0.3, 3.0, size=d)
    return pdcore.make_pd((q * eig) @ q.T)


def _spread(values) -> float:
    return float(max(values) - min(values))


def check_proportionality(
    d: int,
    alpha: float,
    trials: int,
    rng: np.random.Generator,
    corrupt_shape: bool = False,
) -> CheckReport:
    """log prior + alpha * KL must be constant in the evaluation point.

    corrupt_shape swaps in the wrong shape mapping (nu = alpha + d) for
    the known-mean prior, which this check must detect.
    """
    sigma = random_pd(d, rng)
    mu = rng.standard_normal(d)
    m = rng.standard_normal(d)
    prior_w = klpriors.KLWishartPrior(mode_cov=sigma, pseudocount=alpha, known_mean=mu)
    prior_nw = klpriors.KLNormalWishartPrior(
        prior_mean=m, mode_cov=sigma, pseudocount=alpha
    )
    base = Gaussian(mu, sigma)
    base_nw = Gaussian(m, sigma)

    res_w, res_nw = [], []
    for _ in range(trials):
        p = random_pd(d, rng)
        cov = pdcore.inverse(p)
        log_w = klpriors.log_density_wishart_prior(prior_w, p)
        if corrupt_shape:
            wrong = wishart.WishartParams(
                scale_inv=pdcore.make_pd(alpha * sigma.entries), shape=alpha + d
            )
            log_w = wishart.wishart_log_pdf(wrong, p)
        res_w.append(log_w + alpha * gaussian.kl(base, Gaussian(mu, cov)))
        mu2 = rng.standard_normal(d)
        res_nw.append(
            klpriors.log_density_nw_prior(prior_nw, mu2, p)
            + alpha * gaussian.kl(base_nw, Gaussian(mu2, cov))
        )
    stat = max(_spread(res_w), _spread(res_nw))
    return _report(
        "proportionality", stat, 1e-9, f"d={d} alpha={alpha} trials={trials}"
    )


def check_conjugacy(
    d: int,
    n: int,
    alpha: float,
    trials: int,
    rng: np.random.Generator,
    corrupt_mean: bool = False,
) -> CheckReport:
    """Posterior log density minus (prior log density + log likelihood)
    must be constant in the parameter point, for both prior families.

    corrupt_mean replaces the weighted posterior mean m* with the
    unweighted average, which this check must detect.
    """
    sigma = random_pd(d, rng)
    mu_known = rng.standard_normal(d)
    m = rng.standard_normal(d)
    data = rng.standard_normal((n, d)) + m

    prior_w = klpriors.KLWishartPrior(
        mode_cov=sigma, pseudocount=alpha, known_mean=mu_known
    )
    post_w = inference.posterior_known_mean(prior_w, data)

    prior_nw = klpriors.KLNormalWishartPrior(
        prior_mean=m, mode_cov=sigma, pseudocount=alpha
    )
    stats = inference.suff_stats(data)
    post_nw = inference.posterior_unknown(prior_nw, stats)
    if corrupt_mean:
        post_nw = inference.PosteriorNormalWishart(
            pseudocount_post=post_nw.pseudocount_post,
            mean_post=0.5 * (m + stats.sample_mean),
            mode_cov_post=post_nw.mode_cov_post,
        )

    res_w, res_nw = [], []
    for _ in range(trials):
        p = random_pd(d, rng)
        cov = pdcore.inverse(p)
        lik_known = sum(gaussian.logpdf(Gaussian(mu_known, cov), x) for x in data)
        res_w.append(
            wishart.wishart_log_pdf(post_w.wishart, p)
            - klpriors.log_density_wishart_prior(prior_w, p)
            - lik_known
        )
        mu2 = rng.standard_normal(d)
        lik = sum(gaussian.logpdf(Gaussian(mu2, cov), x) for x in data)
        res_nw.append(
            klpriors.log_density_nw_prior(post_nw.as_prior(), mu2, p)
            - klpriors.log_density_nw_prior(prior_nw, mu2, p)
            - lik
        )
    stat = max(_spread(res_w), _spread(res_nw))
    return _report(
        "conjugacy", stat, 1e-8, f"d={d} n={n} alpha={alpha} trials={trials}"
    )


def check_moments(
    d: int, nu: float, samples: int, rng: np.random.Generator
) -> CheckReport:
    """Empirical Bartlett-sample moments vs E[P] = nu V and, when defined,
    E[P^-1] = S / (nu - d - 1); statistic is the max componentwise z."""
    v = random_pd(d, rng)
    w = wishart.WishartParams(scale_inv=pdcore.inverse(v), shape=nu)
    draws = wishart.sample_wishart_batch(w, samples, rng)

    exact_mean = nu * w.scale().entries
    emp = draws.mean(axis=0)
    se = draws.std(axis=0, ddof=1) / np.sqrt(samples)
    z_mean = float(np.max(np.abs(emp - exact_mean) / se))

    detail = f"d={d} nu={nu} N={samples}"
    z = z_mean
    if nu > d + 1:
        inv = np.linalg.inv(draws)
        exact_inv = w.scale_inv.entries / (nu - d - 1)
        emp_inv = inv.mean(axis=0)
        se_inv = inv.std(axis=0, ddof=1) / np.sqrt(samples)
        z_inv = float(np.max(np.abs(emp_inv - exact_inv) / se_inv))
        z = max(z, z_inv)
        detail += f" z_mean={z_mean:.2f} z_inv={z_inv:.2f}"
    else:
        detail += f" z_mean={z_mean:.2f} (mean-only, nu <= d+1)"
    return _report("moments", z, 4.0, detail)


def check_rank_deficiency(d: int, nu_int: int, rng: np.random.Generator) -> CheckReport:
    """Z Z' from nu integer Gaussian columns has rank nu; sub-full-rank
    scatter must be rejected as a precision."""
    if not 0 <= nu_int:
        raise ValueError("nu_int must be a nonnegative integer")
    z = rng.standard_normal((d, nu_int)) if nu_int > 0 else np.zeros((d, 0))
    zz = z @ z.T
    if nu_int == 0:
        ok = np.all(zz == 0.0)
        return _report(
            "rank_deficiency", 0.0 if ok else 1.0, 0.5, f"d={d} nu=0 zero matrix"
        )
    svals = np.linalg.svd(zz, compute_uv=False)
    rank = int(np.sum(svals > 1e-10 * svals[0]))
    try:
        pdcore.make_pd(zz)
        accepted = True
    except NotPositiveDefinite:
        accepted = False
    expect_accept = nu_int >= d
    ok = (rank == min(nu_int, d)) and (accepted == expect_accept)
    return _report(
        "rank_deficiency",
        0.0 if ok else 1.0,
        0.5,
        f"d={d} nu={nu_int} rank={rank} accepted={accepted}",
    )


def _sym_basis(d: int):
    """Orthonormal-direction basis of symmetric d x d matrices."""
    basis = []
    for i in range(d):
        for j in range(i + 1):
            e = np.zeros((d, d))
            if i == j:
                e[i, i] = 1.0
            else:
                e[i, j] = e[j, i] = 1.0 / np.sqrt(2.0)
            basis.append(e)
    return basis


def _fd_gradient_sym(f, p0: np.ndarray, step: float = 1e-6) -> np.ndarray:
    """Central finite differences along the symmetric-matrix basis."""
    grads = []
    for e in _sym_basis(p0.shape[0]):
        fp = f(pdcore.make_pd(p0 + step * e))
        fm = f(pdcore.make_pd(p0 - step * e))
        grads.append((fp - fm) / (2.0 * step))
    return np.asarray(grads)


def check_map_gradient(
    d: int,
    n: int,
    alpha: float,
    rng: np.random.Generator,
    at_perturbed: bool = False,
) -> CheckReport:
    """Finite-difference gradient of the posterior log density vanishes at
    the analytic MAP; at_perturbed evaluates away from it instead (the
    gradient must then be clearly nonzero)."""
    sigma = random_pd(d, rng)
    mu_known = rng.standard_normal(d)
    data = rng.standard_normal((n, d))

    prior_w = klpriors.KLWishartPrior(
        mode_cov=sigma, pseudocount=alpha, known_mean=mu_known
    )
    post_w = inference.posterior_known_mean(prior_w, data)
    p_hat = inference.map_known_mean(post_w).entries
    if at_perturbed:
        p_hat = 1.05 * p_hat

    def f_known(p: PDMatrix) -> float:
        return wishart.wishart_log_pdf(post_w.wishart, p)

    g_known = float(np.linalg.norm(_fd_gradient_sym(f_known, p_hat)))

    prior_nw = klpriors.KLNormalWishartPrior(
        prior_mean=rng.standard_normal(d), mode_cov=sigma, pseudocount=alpha
    )
    post_nw = inference.posterior_unknown(prior_nw, inference.suff_stats(data))
    mu_hat, cov_hat = inference.map_unknown(post_nw)
    p_joint = pdcore.inverse(cov_hat).entries
    if at_perturbed:
        p_joint = 1.05 * p_joint
        mu_hat = mu_hat + 0.05

    nw_prior_form = post_nw.as_prior()
    step = 1e-6
    g_mu = []
    for k in range(d):
        e = np.zeros(d)
        e[k] = 1.0
        fp = klpriors.log_density_nw_prior(
            nw_prior_form, mu_hat + step * e, pdcore.make_pd(p_joint)
        )
        fm = klpriors.log_density_nw_prior(
            nw_prior_form, mu_hat - step * e, pdcore.make_pd(p_joint)
        )
        g_mu.append((fp - fm) / (2.0 * step))

    def f_joint(p: PDMatrix) -> float:
        return klpriors.log_density_nw_prior(nw_prior_form, mu_hat, p)

    g_p = _fd_gradient_sym(f_joint, p_joint)
    g_joint = float(np.linalg.norm(np.concatenate([g_mu, g_p])))

    stat = max(g_known, g_joint)
    return _report(
        "map_gradient",
        stat,
        1e-5,
        f"d={d} n={n} alpha={alpha} |g_known|={g_known:.2e} |g_joint|={g_joint:.2e}",
    )


DEFAULT_SUITE = ("proportionality", "conjugacy", "moments", "rank_deficiency", "map_gradient")


def run_suite(names, seed: int) -> list[CheckReport]:
    """Run the named checks with documented default parameters."""
    reports: list[CheckReport] = []
    for name in names:
        rng = np.random.default_rng(seed)
        if name == "proportionality":
            reports.append(check_proportionality(d=3, alpha=0.7, trials=200, rng=rng))
        elif name == "conjugacy":
            reports.append(check_conjugacy(d=2, n=10, alpha=1.0, trials=100, rng=rng))
        elif name == "moments":
            reports.append(check_moments(d=2, nu=5.0, samples=100_000, rng=rng))
        elif name == "rank_deficiency":
            reports.append(check_rank_deficiency(d=3, nu_int=2, rng=rng))
        elif name == "map_gradient":
            reports.append(check_map_gradient(d=2, n=20, alpha=1.0, rng=rng))
        else:
            raise ValueError(f"unknown check: {name}")
    return reports

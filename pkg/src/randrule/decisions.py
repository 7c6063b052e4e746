"""Bayes-optimal and randomized classifiers with cost evaluation.

A classifier maps evidence to either a single label (deterministic) or a
full probability distribution over labels (randomized). Keeping the whole
distribution, rather than only a sampler, lets callers integrate expected
costs exactly and test output distributions directly.

Cost bookkeeping uses a truth-first matrix: ``kappa[j, d]`` is the cost of
deciding class ``d`` when the case really belongs to class ``j``. The Bayes
rule picks the decision minimizing ``sum_j prior_j * kappa[j, d] * f_j(x)``,
with ties broken toward the lowest label index.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

from .errors import InputError, UnsupportedEvidenceError
from .mixtures import IsotropicGaussian, Mixture, _pdf_matrix, _sample_arrays_seq, posterior
from .rng import generator

__all__ = [
    "CostMatrix",
    "DeterministicClassifier",
    "RandomizedClassifier",
    "Classifier",
    "CostEstimate",
    "expected_cost_of_decision",
    "expected_cost_of_classifier",
    "bayes_decide",
    "bayes_classifier",
    "two_class_likelihood_rule",
    "nearest_mean_classifier",
    "constant_classifier",
    "overlap_deterministic",
    "overlap_randomized",
    "analytic_overlap_cost",
    "monte_carlo_cost",
]

DISTRIBUTION_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class CostMatrix:
    """Misclassification costs; entry [truth, decision], non-negative."""

    values: np.ndarray

    def __post_init__(self) -> None:
        v = np.asarray(self.values, dtype=float)
        if v.ndim != 2 or v.shape[0] != v.shape[1]:
            raise InputError(f"cost matrix must be square, got shape {v.shape}")
        if not np.all(np.isfinite(v)) or np.any(v < 0):
            raise InputError("cost entries must be finite and non-negative")
        v = v.copy()
        v.flags.writeable = False
        object.__setattr__(self, "values", v)

    @classmethod
    def zero_one(cls, label_count: int) -> "CostMatrix":
        """Cost 1 for every error, 0 on the diagonal."""
        return cls(np.ones((label_count, label_count)) - np.eye(label_count))

    @property
    def label_count(self) -> int:
        return int(self.values.shape[0])


@dataclass(frozen=True, eq=False)
class DeterministicClassifier:
    """Evidence -> label. ``batch_rule`` maps an (n, d) array to (n,) labels."""

    label_count: int
    batch_rule: Callable[[np.ndarray], np.ndarray]
    name: str = "deterministic"

    def decide(self, x) -> int:
        return int(self.decide_batch(np.atleast_2d(np.asarray(x, dtype=float)))[0])

    def decide_batch(self, X: np.ndarray) -> np.ndarray:
        labels = np.asarray(self.batch_rule(X), dtype=np.int64)
        if labels.shape != (X.shape[0],):
            raise InputError(f"classifier {self.name!r} returned labels of shape {labels.shape}")
        return labels

    def distribution(self, x) -> np.ndarray:
        return self.distributions(np.atleast_2d(np.asarray(x, dtype=float)))[0]

    def distributions(self, X: np.ndarray) -> np.ndarray:
        """One-hot rows: a deterministic rule is a point-mass randomized rule."""
        labels = self.decide_batch(X)
        out = np.zeros((X.shape[0], self.label_count))
        out[np.arange(X.shape[0]), labels] = 1.0
        return out


@dataclass(frozen=True, eq=False)
class RandomizedClassifier:
    """Evidence -> label distribution. ``batch_rule`` maps (n, d) to (n, k)."""

    label_count: int
    batch_rule: Callable[[np.ndarray], np.ndarray]
    name: str = "randomized"

    def distribution(self, x) -> np.ndarray:
        return self.distributions(np.atleast_2d(np.asarray(x, dtype=float)))[0]

    def distributions(self, X: np.ndarray) -> np.ndarray:
        probs = np.asarray(self.batch_rule(X), dtype=float)
        if probs.shape != (X.shape[0], self.label_count):
            raise InputError(f"classifier {self.name!r} returned shape {probs.shape}")
        if np.any(probs < -DISTRIBUTION_TOL) or np.any(
            np.abs(probs.sum(axis=1) - 1.0) > DISTRIBUTION_TOL
        ):
            raise InputError(f"classifier {self.name!r} returned an invalid distribution")
        return probs

    def realize_batch(self, X: np.ndarray, uniforms: np.ndarray) -> np.ndarray:
        """Resolve each row's distribution with one [0,1) uniform (inverse CDF)."""
        cum = np.cumsum(self.distributions(X), axis=1)
        picks = (uniforms[:, None] >= cum).sum(axis=1)
        return np.minimum(picks, self.label_count - 1).astype(np.int64)

    def decide(self, x, seed: int) -> int:
        """One realized decision; same (x, seed) always gives the same label."""
        u = generator(seed).random(1)
        return int(self.realize_batch(np.atleast_2d(np.asarray(x, dtype=float)), u)[0])


Classifier = Union[DeterministicClassifier, RandomizedClassifier]


@dataclass(frozen=True)
class CostEstimate:
    """Monte Carlo mean cost with its standard error; reproducible from seed."""

    mean_cost: float
    standard_error: float
    n: int
    seed: int


def _check_cost(mixture: Mixture, cost: CostMatrix) -> None:
    if cost.label_count != mixture.label_count:
        raise InputError(
            f"cost matrix is {cost.label_count}x{cost.label_count} "
            f"but the mixture has {mixture.label_count} classes"
        )


def expected_cost_of_decision(mixture: Mixture, cost: CostMatrix, x, d: int) -> float:
    """Posterior-weighted cost of announcing class ``d`` at evidence ``x``."""
    _check_cost(mixture, cost)
    mixture._check_label(d)
    post = posterior(mixture, x)
    return float(post @ cost.values[:, d])


def expected_cost_of_classifier(mixture: Mixture, cost: CostMatrix, classifier: Classifier, x) -> float:
    """Expected cost at ``x`` averaged over the classifier's output distribution."""
    _check_cost(mixture, cost)
    dist = classifier.distribution(x)
    post = posterior(mixture, x)
    return float(post @ cost.values @ dist)


def _bayes_scores(mixture: Mixture, cost: CostMatrix, X: np.ndarray) -> np.ndarray:
    """Unnormalized decision scores: scores[i, d] = sum_j pi_j kappa[j, d] f_j(x_i)."""
    weighted = _pdf_matrix(mixture, X) * mixture.priors
    total = weighted.sum(axis=1)
    if np.any(total <= 0.0):
        bad = int(np.flatnonzero(total <= 0.0)[0])
        raise UnsupportedEvidenceError(f"evidence {X[bad]} has zero density under every class")
    return weighted @ cost.values


def bayes_decide(mixture: Mixture, cost: CostMatrix, x) -> int:
    """Minimum expected cost decision at ``x``; ties go to the lowest label."""
    _check_cost(mixture, cost)
    scores = _bayes_scores(mixture, cost, mixture._as_evidence(x))
    return int(np.argmin(scores[0]))


def bayes_classifier(mixture: Mixture, cost: CostMatrix) -> DeterministicClassifier:
    """The :func:`bayes_decide` rule packaged as a vectorized classifier."""
    _check_cost(mixture, cost)

    def rule(X: np.ndarray) -> np.ndarray:
        return np.argmin(_bayes_scores(mixture, cost, X), axis=1)

    return DeterministicClassifier(mixture.label_count, rule, name="bayes")


def two_class_likelihood_rule(mixture: Mixture, cost: CostMatrix) -> DeterministicClassifier:
    """Two-class rule: declare class 0 iff f0(x)/f1(x) strictly exceeds the threshold.

    The threshold ``(pi_1 kappa[1,0]) / (pi_0 kappa[0,1])`` makes the rule
    agree with :func:`bayes_decide` wherever the posterior is defined; the
    comparison is done in product form so zero densities need no special
    casing.
    """
    _check_cost(mixture, cost)
    if mixture.label_count != 2:
        raise InputError("the likelihood-ratio rule is defined for exactly two classes")
    pi0, pi1 = mixture.priors
    k01 = cost.values[0, 1]
    k10 = cost.values[1, 0]
    if pi0 * k01 <= 0.0:
        raise InputError("likelihood threshold undefined: pi_0 * kappa[0,1] must be positive")

    def rule(X: np.ndarray) -> np.ndarray:
        f = _pdf_matrix(mixture, X)
        return np.where(pi0 * k01 * f[:, 0] > pi1 * k10 * f[:, 1], 0, 1)

    return DeterministicClassifier(2, rule, name="likelihood-ratio")


def nearest_mean_classifier(mixture: Mixture) -> DeterministicClassifier:
    """Declare the class with the nearest Gaussian mean (lowest index on ties).

    Requires every component to be Gaussian with a common lambda and equal
    priors; under those assumptions this rule is Bayes-optimal for 0-1 cost.
    """
    lams = []
    means = []
    for comp in mixture.components:
        if not isinstance(comp.density, IsotropicGaussian):
            raise InputError("nearest-mean rule needs Gaussian components")
        lams.append(comp.density.lam)
        means.append(comp.density.mean)
    if any(not math.isclose(lam, lams[0], rel_tol=1e-12) for lam in lams):
        raise InputError("nearest-mean rule needs a common lambda across components")
    equal = 1.0 / mixture.label_count
    if any(abs(p - equal) > 1e-12 for p in mixture.priors):
        raise InputError("nearest-mean rule needs equal priors")
    mean_arr = np.stack(means)

    def rule(X: np.ndarray) -> np.ndarray:
        d2 = ((X[:, None, :] - mean_arr[None, :, :]) ** 2).sum(axis=2)
        return np.argmin(d2, axis=1)

    return DeterministicClassifier(mixture.label_count, rule, name="nearest-mean")


def constant_classifier(label: int, label_count: int) -> DeterministicClassifier:
    """Ignore the evidence and always announce ``label``."""
    if not 0 <= label < label_count:
        raise InputError(f"label {label} out of range for {label_count} classes")

    def rule(X: np.ndarray) -> np.ndarray:
        return np.full(X.shape[0], label, dtype=np.int64)

    return DeterministicClassifier(label_count, rule, name=f"constant:{label}")


def _check_overlap_params(a: float, b: float) -> None:
    # a = 0 is the identical-supports case; the shift cannot be negative
    if not (a >= 0 and b > 0):
        raise InputError(f"overlap rules need a >= 0 and b > 0, got a={a}, b={b}")


def overlap_deterministic(a: float, b: float) -> DeterministicClassifier:
    """Midpoint rule for supports [0, b] and [a, a+b]: class 1 iff (a+b)/2 <= x."""
    _check_overlap_params(a, b)
    mid = (a + b) / 2.0

    def rule(X: np.ndarray) -> np.ndarray:
        return (mid <= X[:, 0]).astype(np.int64)

    return DeterministicClassifier(2, rule, name="overlap-deterministic")


def overlap_randomized(a: float, b: float) -> RandomizedClassifier:
    """Coin-flip rule for supports [0, b] and [a, a+b].

    First matching branch wins: class 1 where b < x, class 0 where x < a,
    else a fair Bernoulli pick. For a > b the third branch is vacuous (the
    zero-density gap b < x < a is caught by the first branch), so the rule
    degenerates to the midpoint rule on all positive-density points.
    """
    _check_overlap_params(a, b)

    def rule(X: np.ndarray) -> np.ndarray:
        x = X[:, 0]
        p1 = np.where(b < x, 1.0, np.where(x < a, 0.0, 0.5))
        return np.stack([1.0 - p1, p1], axis=1)

    return RandomizedClassifier(2, rule, name="overlap-randomized")


def analytic_overlap_cost(a: float, b: float) -> float:
    """Exact 0-1 error rate of the overlap rules: (b-a)/(2b) if a < b else 0.

    The mixture puts mass (b-a)/b on the overlap, where any rule errs half
    the time; off the overlap the evidence decides the class for free. At
    a >= b the overlap has measure zero and the cost vanishes.
    """
    _check_overlap_params(a, b)
    if a >= b:
        return 0.0
    return (b - a) / (2.0 * b)


def monte_carlo_cost(
    mixture: Mixture,
    cost: CostMatrix,
    classifier: Classifier,
    n: int,
    seed: int,
) -> CostEstimate:
    """Estimate a classifier's expected cost by sampling ``n`` labeled cases.

    Two sub-streams are derived from ``seed`` by fixed index: stream 0 draws
    the cases, stream 1 supplies one uniform per case for randomized
    decisions. Case ``i`` always consumes position ``i`` of each stream, so
    the estimate does not depend on evaluation order and is bit-reproducible.
    """
    _check_cost(mixture, cost)
    if n < 1:
        raise InputError(f"sample size must be >= 1, got {n}")
    if classifier.label_count != mixture.label_count:
        raise InputError("classifier and mixture disagree on the number of classes")
    case_seq, decision_seq = np.random.SeedSequence(seed).spawn(2)
    X, labels = _sample_arrays_seq(mixture, n, case_seq)
    if isinstance(classifier, DeterministicClassifier):
        decisions = classifier.decide_batch(X)
    else:
        u = np.random.Generator(np.random.PCG64(decision_seq)).random(n)
        decisions = classifier.realize_batch(X, u)
    costs = cost.values[labels, decisions]
    se = float(costs.std(ddof=1) / math.sqrt(n)) if n > 1 else 0.0
    return CostEstimate(float(costs.mean()), se, n, seed)

"""Random dilation-window extraction of small additive matchings.

Pipeline, per trial: sample a window (a, b, d) with d nonzero; call a
triangle *valid* when x lies in I_X = a + [-l, l]d and y in I_Y = b +
[-l, l]d (which forces z into I_Z = -a - b + [-2l, 2l]d); call a valid
triangle *good* when none of its three coordinates appears in any other
valid triangle; send good triangles to Z/MZ by their window offsets
(r, s, t) with r + s + t = 0.  Because M > 8l, every off-diagonal cross
sum of offsets stays nonzero mod M, so the projected family is always a
verified matching.

The three probabilistic claims contrasted by :func:`estimate_claims`:

1. a valid triangle is good with probability at least 2/5;
2. an x in I_X (and X) lies in a good triangle with probability at least
   delta1 / (50 delta2);
3. the expected number of x in X lying in good triangles is at least
   |X| delta1 / (1000 delta2^2 N).

Window parameters: L = 2l + 1 odd with 1/20 <= L*delta2 <= 1/10 and
L > 20; small modulus M = ceil(1/delta2).  All parameter arithmetic is
exact (fractions), since the admissible range has hard endpoints.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .errors import HypothesisViolationError, ParameterRangeError
from .group import IndexedTripleFamily, Modulus, TripleSystem, signed_rep
from .matching import MatchingCertificate, verify_matching
from .triangles import DegreeProfile, degree_profile

WINDOW_RATIO_LOW = Fraction(1, 20)
WINDOW_RATIO_HIGH = Fraction(1, 10)
MIN_WINDOW_LENGTH = 21  # smallest odd integer above 20

# Claim constants, kept as exact rationals.
GOOD_FRACTION_FLOOR = Fraction(2, 5)
CLAIM2_DENOMINATOR = 50
CLAIM3_DENOMINATOR = 1000


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise ParameterRangeError(
        f"density parameters must be exact rationals, got {value!r}", value=repr(value))


def choose_window(delta2, ratio_low: Fraction = WINDOW_RATIO_LOW,
                  ratio_high: Fraction = WINDOW_RATIO_HIGH) -> tuple:
    """Largest odd L with L*delta2 <= ratio_high, checked against the lower
    ratio and the L > 20 floor; M = ceil(1/delta2).

    An admissible window needs delta2 <= 1/(10 * 21): the largest odd L
    under the cap must still clear 20.
    """
    d2 = _as_fraction(delta2)
    if not (0 < d2 <= 1):
        raise ParameterRangeError(f"delta2 must lie in (0, 1], got {d2}", delta2=str(d2))
    L = math.floor(ratio_high / d2)
    if L % 2 == 0:
        L -= 1
    if L < MIN_WINDOW_LENGTH or L * d2 < ratio_low:
        raise ParameterRangeError(
            f"no admissible window length for delta2 = {d2}"
            f" (need an odd L > 20 with {ratio_low} <= L*delta2 <= {ratio_high})",
            delta2=str(d2))
    m_small = math.ceil(1 / d2)
    return L, (L - 1) // 2, m_small


@dataclass(frozen=True)
class ExtractionParams:
    """Degree-window densities plus the sampled-interval geometry."""

    delta1: Fraction
    delta2: Fraction
    length: int        # L, odd
    half_length: int   # l, with L = 2l + 1
    small_modulus: int  # M
    ratio_low: Fraction = WINDOW_RATIO_LOW
    ratio_high: Fraction = WINDOW_RATIO_HIGH

    def __post_init__(self):
        d1, d2 = _as_fraction(self.delta1), _as_fraction(self.delta2)
        object.__setattr__(self, "delta1", d1)
        object.__setattr__(self, "delta2", d2)
        if not (0 < d1 <= d2 <= 1):
            raise ParameterRangeError(
                f"need 0 < delta1 <= delta2 <= 1, got {d1}, {d2}",
                delta1=str(d1), delta2=str(d2))
        if self.length != 2 * self.half_length + 1:
            raise ParameterRangeError("L must equal 2l + 1",
                                      length=self.length, half_length=self.half_length)
        if self.length <= 20:
            raise ParameterRangeError(f"L must exceed 20, got {self.length}",
                                      length=self.length)
        ratio = self.length * d2
        if not (self.ratio_low <= ratio <= self.ratio_high):
            raise ParameterRangeError(
                f"L*delta2 = {ratio} outside [{self.ratio_low}, {self.ratio_high}]",
                ratio=str(ratio))
        if self.small_modulus <= 8 * self.half_length:
            raise ParameterRangeError(
                f"small modulus {self.small_modulus} must exceed 8l = {8 * self.half_length}",
                small_modulus=self.small_modulus)

    @classmethod
    def from_deltas(cls, delta1, delta2, ratio_low: Fraction = WINDOW_RATIO_LOW,
                    ratio_high: Fraction = WINDOW_RATIO_HIGH) -> "ExtractionParams":
        length, half, m_small = choose_window(delta2, ratio_low, ratio_high)
        return cls(_as_fraction(delta1), _as_fraction(delta2),
                   length, half, m_small, ratio_low, ratio_high)


@dataclass(frozen=True)
class DilationWindow:
    """Sampled (a, b, d) defining the dilated intervals I_X, I_Y, I_Z."""

    modulus: Modulus
    a: int
    b: int
    d: int
    d_inv: int = 0

    def __post_init__(self):
        n = self.modulus.n
        if not self.modulus.is_prime:
            raise ParameterRangeError(f"window modulus {n} must be prime", modulus=n)
        if self.d % n == 0:
            raise ParameterRangeError("dilation d must be nonzero", d=self.d)
        object.__setattr__(self, "d_inv", pow(self.d, n - 2, n))

    def x_offset(self, x: int) -> int:
        """Signed r with x = a + r*d (unique since the modulus is prime)."""
        return signed_rep((x - self.a) * self.d_inv, self.modulus.n)

    def y_offset(self, y: int) -> int:
        return signed_rep((y - self.b) * self.d_inv, self.modulus.n)

    def z_offset(self, z: int) -> int:
        """Signed t with z = -a - b + t*d."""
        return signed_rep((z + self.a + self.b) * self.d_inv, self.modulus.n)

    def x_members(self, half_length: int) -> list:
        n = self.modulus.n
        return [(self.a + r * self.d) % n for r in range(-half_length, half_length + 1)]


def sample_window(modulus: Modulus, rng: np.random.Generator) -> DilationWindow:
    """a, b uniform over the group; d uniform over the nonzero elements."""
    n = modulus.n
    a = int(rng.integers(0, n))
    b = int(rng.integers(0, n))
    d = int(rng.integers(1, n))
    return DilationWindow(modulus, a, b, d)


def _check_geometry(system: TripleSystem, params: ExtractionParams):
    if not system.modulus.is_prime:
        raise ParameterRangeError(f"modulus {system.n} must be prime", modulus=system.n)
    if system.n <= 20 * params.length:
        raise ParameterRangeError(
            f"need N > 20L (N = {system.n}, L = {params.length})",
            modulus=system.n, length=params.length)


def classify_triangles(system: TripleSystem, window: DilationWindow,
                       params: ExtractionParams) -> tuple:
    """(valid, good) triangle lists for one window.

    Valid triangles are enumerated by their offsets (r, s) in [-l, l]^2,
    which is equivalent to scanning all triangles and testing interval
    membership but touches only L^2 candidates.
    """
    _check_geometry(system, params)
    n = system.n
    half = params.half_length
    xs, ys, zs = system.x_set, system.y_set, system.z_set
    valid = []
    for r in range(-half, half + 1):
        x = (window.a + r * window.d) % n
        if x not in xs:
            continue
        for s in range(-half, half + 1):
            y = (window.b + s * window.d) % n
            if y not in ys:
                continue
            z = (-x - y) % n
            if z in zs:
                t = window.z_offset(z)
                assert t == -(r + s) and abs(t) <= 2 * half  # z always lands in I_Z
                valid.append((x, y, z))
    x_count, y_count, z_count = {}, {}, {}
    for x, y, z in valid:
        x_count[x] = x_count.get(x, 0) + 1
        y_count[y] = y_count.get(y, 0) + 1
        z_count[z] = z_count.get(z, 0) + 1
    good = [(x, y, z) for x, y, z in valid
            if x_count[x] == 1 and y_count[y] == 1 and z_count[z] == 1]
    return valid, good


def project_good(good: Sequence, window: DilationWindow,
                 params: ExtractionParams) -> IndexedTripleFamily:
    """Map triangles to their offset triples (r, s, t) mod M.

    Offsets satisfy r + s + t = 0 over the integers, so projected triples
    are triangles in Z/MZ; for good inputs the family verifies because
    every off-diagonal cross sum lies in [-4l, 4l] and M > 8l.
    """
    half = params.half_length
    m_small = params.small_modulus
    triples = []
    for x, y, z in good:
        r = window.x_offset(x)
        s = window.y_offset(y)
        if abs(r) > half or abs(s) > half:
            raise ParameterRangeError(
                f"triangle ({x}, {y}, {z}) is not valid for this window",
                triangle=[x, y, z])
        t = -(r + s)
        triples.append((r % m_small, s % m_small, t % m_small))
    return IndexedTripleFamily(Modulus(m_small), tuple(triples))


@dataclass(frozen=True)
class ExtractionReport:
    """Outcome of one sampled window."""

    trial: int
    window: DilationWindow
    valid_count: int
    good_count: int
    good_triples_small: IndexedTripleFamily
    certificate: MatchingCertificate
    x_window_count: int  # |I_X intersect X|

    @property
    def good_fraction(self) -> Optional[float]:
        if self.valid_count == 0:
            return None
        return self.good_count / self.valid_count


@dataclass(frozen=True)
class ClaimEstimate:
    empirical: Optional[float]
    bound: float
    stderr: Optional[float]
    samples: int

    def satisfied(self, sigmas: float = 3.0) -> Optional[bool]:
        if self.empirical is None:
            return None
        slack = sigmas * (self.stderr or 0.0)
        return self.empirical >= self.bound - slack


@dataclass(frozen=True)
class ClaimStatistics:
    good_given_valid: ClaimEstimate   # claim 1
    good_given_window_x: ClaimEstimate  # claim 2
    mean_good_x: ClaimEstimate        # claim 3
    trials: int
    valid_total: int
    good_total: int


def _trial_rng(seed: int, trial: int) -> np.random.Generator:
    # Counter-based stream keyed by (seed, trial): bit-identical results
    # independent of any execution order.
    return np.random.Generator(np.random.Philox(key=[seed % 2 ** 64, trial]))


def _run_trial(system: TripleSystem, params: ExtractionParams,
               seed: int, trial: int) -> ExtractionReport:
    window = sample_window(system.modulus, _trial_rng(seed, trial))
    valid, good = classify_triangles(system, window, params)
    family = project_good(good, window, params)
    certificate = verify_matching(family)
    if not certificate.verified:
        raise HypothesisViolationError(
            "projected good triples failed the matching check",
            trial=trial, violation=certificate.violation)
    xs = system.x_set
    x_window = sum(1 for v in window.x_members(params.half_length) if v in xs)
    return ExtractionReport(trial, window, len(valid), len(good), family,
                            certificate, x_window)


def params_from_profile(system: TripleSystem,
                        profile: Optional[DegreeProfile] = None) -> ExtractionParams:
    """Tightest hypothesis instantiation: delta1, delta2 from the actual
    minimum and maximum degrees across the three classes."""
    profile = profile or degree_profile(system)
    bounds = profile.overall_bounds()
    if bounds is None:
        raise HypothesisViolationError("system has no elements", modulus=system.n)
    lo, hi = bounds
    if lo == 0:
        offender = _zero_degree_witness(profile)
        raise HypothesisViolationError(
            "minimum degree is 0, the degree-window hypothesis needs delta1 > 0",
            offender=offender)
    n = system.n
    return ExtractionParams.from_deltas(Fraction(lo, n), Fraction(hi, n))


def _zero_degree_witness(profile: DegreeProfile):
    for label, cls_index in (("x", 0), ("y", 1), ("z", 2)):
        for element, degree in sorted(profile.degrees(cls_index).items()):
            if degree == 0:
                return {"class": label, "element": element, "degree": 0}
    return None


def _check_hypothesis(system: TripleSystem, params: ExtractionParams):
    profile = degree_profile(system)
    n = system.n
    for label, cls_index in (("x", 0), ("y", 1), ("z", 2)):
        for element, degree in sorted(profile.degrees(cls_index).items()):
            if not (params.delta1 * n <= degree <= params.delta2 * n):
                raise HypothesisViolationError(
                    f"degree of {label}-element {element} is {degree}, outside"
                    f" [{params.delta1} * N, {params.delta2} * N]",
                    offender={"class": label, "element": element, "degree": degree})


def estimate_claims(system: TripleSystem, params: ExtractionParams,
                    trials: int, seed: int) -> ClaimStatistics:
    """Monte Carlo estimates for the three window claims, pooled over
    independently keyed trials, each with its analytic lower bound and a
    standard-error estimate."""
    _check_geometry(system, params)
    _check_hypothesis(system, params)
    if trials < 1:
        raise ParameterRangeError("need at least one trial", trials=trials)
    valid_total = 0
    good_total = 0
    x_window_total = 0
    good_counts = np.zeros(trials, dtype=np.int64)
    for trial in range(trials):
        report = _run_trial(system, params, seed, trial)
        valid_total += report.valid_count
        good_total += report.good_count
        x_window_total += report.x_window_count
        good_counts[trial] = report.good_count

    def bernoulli(successes: int, total: int, bound: Fraction) -> ClaimEstimate:
        if total == 0:
            return ClaimEstimate(None, float(bound), None, 0)
        p = successes / total
        return ClaimEstimate(p, float(bound), math.sqrt(p * (1 - p) / total), total)

    d1, d2 = params.delta1, params.delta2
    n = system.n
    claim1 = bernoulli(good_total, valid_total, GOOD_FRACTION_FLOOR)
    claim2 = bernoulli(good_total, x_window_total, d1 / (CLAIM2_DENOMINATOR * d2))
    claim3_bound = Fraction(len(system.x_set)) * d1 / (CLAIM3_DENOMINATOR * d2 * d2 * n)
    mean = float(good_counts.mean())
    stderr = float(good_counts.std(ddof=1) / math.sqrt(trials)) if trials > 1 else None
    claim3 = ClaimEstimate(mean, float(claim3_bound), stderr, trials)
    return ClaimStatistics(claim1, claim2, claim3, trials, valid_total, good_total)


def extract_matching(system: TripleSystem, trials: int, seed: int,
                     params: Optional[ExtractionParams] = None) -> ExtractionReport:
    """Best-of-`trials` extraction: the report with the largest good count
    (ties broken toward the earliest trial).  Deltas default to the tightest
    values fitted from the degree profile."""
    if params is None:
        params = params_from_profile(system)
    _check_geometry(system, params)
    _check_hypothesis(system, params)
    if trials < 1:
        raise ParameterRangeError("need at least one trial", trials=trials)
    best: Optional[ExtractionReport] = None
    for trial in range(trials):
        report = _run_trial(system, params, seed, trial)
        if best is None or report.good_count > best.good_count:
            best = report
    return best


def run_trials(system: TripleSystem, params: ExtractionParams,
               trials: int, seed: int) -> list:
    """All per-trial reports, for CSV emission and diagnostics."""
    _check_geometry(system, params)
    _check_hypothesis(system, params)
    return [_run_trial(system, params, seed, trial) for trial in range(trials)]


def window_membership_probability(n: int, half_length: int, x: int, y: int,
                                  y_prime: int) -> Fraction:
    """Exact conditional probability, over all windows in which the triangle
    with first coordinates (x, y) is valid, that y' lands in I_Y.

    Enumerates every (a, b, d) with d nonzero; factorized per d since the
    x-condition depends on (a, d) and the y-conditions on (b, d).  For
    y' != y the value is (L - 1)/(N - 1) exactly.
    """
    modulus = Modulus(n)
    if not modulus.is_prime:
        raise ParameterRangeError(f"membership law needs a prime modulus, got {n}", modulus=n)
    valid_windows = 0
    hits = 0
    for d in range(1, n):
        d_inv = pow(d, n - 2, n)
        a_ok = sum(1 for a in range(n)
                   if abs(signed_rep((x - a) * d_inv, n)) <= half_length)
        b_valid = 0
        b_both = 0
        for b in range(n):
            y_in = abs(signed_rep((y - b) * d_inv, n)) <= half_length
            if not y_in:
                continue
            b_valid += 1
            if abs(signed_rep((y_prime - b) * d_inv, n)) <= half_length:
                b_both += 1
        valid_windows += a_ok * b_valid
        hits += a_ok * b_both
    return Fraction(hits, valid_windows)

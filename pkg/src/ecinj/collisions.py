"""Exact collision detection over value streams, and the injectivity scans
built on it.

Two engines share the index/merge machinery:

* `collision_scan` holds exact canonical values.  Dedup keys are the
  canonical (num, den) pairs, so equality is exact with no hashing false
  positives (dict buckets are confirmed by exact comparison).

* The residue engine fingerprints each value by its residues modulo a few
  deterministic 61-bit primes.  Equal exact values always produce equal
  fingerprints at suitable primes, so no true collision can be missed;
  every candidate bucket is re-verified by exact re-evaluation before it
  may enter the report.  This is what makes the large scans tractable:
  orbit values grow quadratically in digit count and are far too large to
  store exactly (measured: the |m| <= 2000 orbit would need hours and
  gigabytes), while residues are constant-size.

Reports are deterministic: partitioning a stream into k shards and merging
the per-shard indexes yields byte-identical output for any k, and classes
are sorted by value before emission.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Optional

from .curve import Point, add, scalar_mul
from .injection import UniquenessFunction, validate_params
from .modular import CurveModP, UnsuitablePrimeError, fraction_mod, primes_descending
from .pairing import zagier_eval
from .points import OrbitSpec, orbit, pair_stream, rationals_by_height
from .rational import format_rational
from .reporting import VERSION, canonical_json, config_digest

logger = logging.getLogger(__name__)

PROGRESS_EVERY = 10**6
DEFAULT_MEMORY_CEILING = 4 * 2**30  # bytes of index estimate

# bounds below which the exact engine is used by the "auto" method
EXACT_P_SCAN_BOUND = 300
EXACT_F_SCAN_BOUND = 60

PRIME_SEARCH_START = 2**61


class MemoryCeilingError(RuntimeError):
    pass


@dataclass
class CollisionClass:
    value: Fraction
    keys: list


@dataclass
class CollisionReport:
    total_scanned: int
    classes: list
    duplicate_points: list = field(default_factory=list)
    config: dict = field(default_factory=dict)

    @property
    def exit_code(self) -> int:
        return 2 if (self.classes or self.duplicate_points) else 0

    def to_json_dict(self) -> dict:
        return {
            "version": VERSION,
            "config_digest": config_digest(self.config),
            "total_scanned": self.total_scanned,
            "classes": [
                {"value": format_rational(c.value), "keys": list(c.keys)}
                for c in self.classes
            ],
            "duplicate_points": [list(g) for g in self.duplicate_points],
        }

    def to_json(self) -> str:
        return canonical_json(self.to_json_dict())


def _build_index(entries, *, shards, progress_every, memory_ceiling, size_of):
    """Index a stream of (bucket_key, key) into bucket -> [(index, key), ...].

    The stream is dealt round-robin to `shards` independent maps which are
    then merged; entries are re-sorted by stream index, so the result is
    identical for every shard count.
    """
    shard_maps = [{} for _ in range(max(1, shards))]
    used = 0
    total = 0
    for i, (bucket, key) in enumerate(entries):
        m = shard_maps[i % len(shard_maps)]
        slot = m.get(bucket)
        if slot is None:
            used += size_of(bucket) + 96
            m[bucket] = [(i, key)]
        else:
            used += 64
            slot.append((i, key))
        total += 1
        if memory_ceiling is not None and used > memory_ceiling:
            raise MemoryCeilingError(
                f"collision index estimate {used} bytes exceeds ceiling {memory_ceiling}"
            )
        if progress_every and total % progress_every == 0:
            logger.info("scanned %d items; index estimate %d bytes", total, used)
    merged = {}
    for m in shard_maps:
        for bucket, slot in m.items():
            merged.setdefault(bucket, []).extend(slot)
    for slot in merged.values():
        slot.sort(key=lambda e: e[0])
    return merged, total


def _exact_size(bucket) -> int:
    num, den = bucket
    return (num.bit_length() + den.bit_length()) // 8


def collision_scan(
    stream: Iterable[tuple],
    *,
    shards: int = 1,
    config: Optional[dict] = None,
    memory_ceiling: Optional[int] = DEFAULT_MEMORY_CEILING,
    progress_every: int = PROGRESS_EVERY,
) -> CollisionReport:
    """Group exactly equal values in a stream of (key, value) pairs.

    Memory is bounded by the number of distinct values.  Classes (>= 2 keys
    sharing one value) are sorted by value; key order inside a class is
    stream order regardless of shard count.
    """
    entries = (((v.numerator, v.denominator), k) for k, v in stream)
    index, total = _build_index(
        entries,
        shards=shards,
        progress_every=progress_every,
        memory_ceiling=memory_ceiling,
        size_of=_exact_size,
    )
    classes = [
        CollisionClass(Fraction(num, den), [k for _, k in slot])
        for (num, den), slot in index.items()
        if len(slot) >= 2
    ]
    classes.sort(key=lambda c: c.value)
    return CollisionReport(total, classes, [], config or {})


def _residue_collision_scan(
    entries: Iterable[tuple],
    *,
    confirm: Callable,
    shards: int,
    config: dict,
    memory_ceiling: Optional[int],
    progress_every: int,
    duplicate_points: Optional[list] = None,
) -> CollisionReport:
    """Fingerprint scan: entries are (packed_residue, key).

    Buckets with >= 2 keys are candidates only; `confirm(keys)` must return
    the exact values [(key, Fraction)] and the bucket is split by exact
    value.  Only groups that re-verify exactly become classes.
    """
    index, total = _build_index(
        entries,
        shards=shards,
        progress_every=progress_every,
        memory_ceiling=memory_ceiling,
        size_of=lambda b: 32,
    )
    classes = []
    for slot in index.values():
        if len(slot) < 2:
            continue
        by_value = {}
        exact = confirm([k for _, k in slot])
        for key, value in exact:
            by_value.setdefault(value, []).append(key)
        for value, keys in by_value.items():
            if len(keys) >= 2:
                classes.append(CollisionClass(value, keys))
    classes.sort(key=lambda c: c.value)
    return CollisionReport(total, classes, duplicate_points or [], config)


def _pack(residues) -> int:
    acc = 0
    for r in residues:
        acc = (acc << 64) | r
    return acc


class _OrbitResidues:
    """Labeled orbit point residues mod one prime, mirroring orbit() emission.

    Raises UnsuitablePrimeError when any emitted point reduces to the
    identity mod p (i.e. p divides its coordinate denominators), when the
    curve has bad reduction, or when an inverted denominator vanishes.
    `is_exact_infinity(m)` distinguishes a true identity m*G (skipped by
    orbit as translate base, emitted as bare T) from an unsuitable prime.
    """

    def __init__(self, spec: OrbitSpec, p: int, is_exact_infinity):
        cm = CurveModP(spec.generator.curve, p)
        self.p = p
        g = cm.reduce_point(spec.generator)
        if g is None:
            raise UnsuitablePrimeError(f"generator reduces to the identity mod {p}")
        translates = []
        for t in spec.torsion:
            if t.is_infinity:
                translates.append(None)
            else:
                r = cm.reduce_point(t)
                if r is None:
                    raise UnsuitablePrimeError(f"torsion point reduces to the identity mod {p}")
                translates.append(r)
        if not spec.torsion:
            translates = [None]
        labeled = []
        mg = g
        for m in range(1, spec.bound + 1):
            if m > 1:
                mg = cm.add(mg, g)
            if mg is None and not is_exact_infinity(m):
                raise UnsuitablePrimeError(f"{m}*G reduces to the identity mod {p}")
            for sign, base in ((m, mg), (-m, cm.negate(mg))):
                for k, t in enumerate(translates):
                    pt = cm.add(base, t)
                    if pt is None:
                        # exact point is the identity (orbit skips it) or p is unsuitable
                        if _exact_orbit_point(spec, sign, k).is_infinity:
                            continue
                        raise UnsuitablePrimeError(
                            f"orbit point at label {(sign, k)} reduces to the identity mod {p}"
                        )
                    label = sign if not spec.torsion else (sign, k)
                    labeled.append((label, pt))
        self.labeled = labeled


def _exact_orbit_point(spec: OrbitSpec, m: int, k: int = 0) -> Point:
    pt = scalar_mul(m, spec.generator)
    if spec.torsion:
        t = spec.torsion[k]
        if not t.is_infinity:
            pt = add(pt, t)
    return pt


def _choose_residue_systems(spec: OrbitSpec, num_primes: int, must_invert):
    """Deterministically pick the first suitable primes below PRIME_SEARCH_START."""
    infinity_cache = {}

    def is_exact_infinity(m):
        if m not in infinity_cache:
            infinity_cache[m] = scalar_mul(m, spec.generator).is_infinity
        return infinity_cache[m]

    systems = []
    for p in primes_descending(PRIME_SEARCH_START):
        try:
            for q in must_invert:
                fraction_mod(q, p)
            systems.append(_OrbitResidues(spec, p, is_exact_infinity))
        except UnsuitablePrimeError:
            continue
        if len(systems) == num_primes:
            return systems
    raise RuntimeError("prime search exhausted")  # unreachable


class _ExactLabelEvaluator:
    """Exact re-evaluation of orbit points and P values by label, cached."""

    def __init__(self, u: UniquenessFunction, spec: OrbitSpec):
        self.u = u
        self.spec = spec
        self._points = {}
        self._pvals = {}

    def point(self, label) -> Point:
        if label not in self._points:
            m, k = label if isinstance(label, tuple) else (label, 0)
            self._points[label] = _exact_orbit_point(self.spec, m, k)
        return self._points[label]

    def p_value(self, label) -> Fraction:
        if label not in self._pvals:
            self._pvals[label] = self.u.eval_P(self.point(label))
        return self._pvals[label]

    def f_value(self, pair) -> Fraction:
        l1, l2 = pair
        n, gamma = self.u.params.n, self.u.params.gamma
        return self.p_value(l1) ** n + gamma * self.p_value(l2) ** n


def _split_duplicate_points(labeled_keys, point_of, confirm_point):
    """Flag labels carrying an identical point; keep the first occurrence.

    `point_of(label)` gives a fingerprint; groups sharing one are confirmed
    through `confirm_point(label)` (exact coordinates) before flagging, so
    fingerprint coincidences cannot produce a false duplicate report.
    """
    buckets = {}
    for label in labeled_keys:
        buckets.setdefault(point_of(label), []).append(label)
    duplicates = []
    dropped = set()
    for labels in buckets.values():
        if len(labels) < 2:
            continue
        by_exact = {}
        for label in labels:
            pt = confirm_point(label)
            by_exact.setdefault((pt.x, pt.y), []).append(label)
        for group in by_exact.values():
            if len(group) >= 2:
                duplicates.append(group)
                dropped.update(group[1:])
    duplicates.sort(key=lambda g: str(g[0]))
    kept = [label for label in labeled_keys if label not in dropped]
    return duplicates, kept


def _scan_config(op: str, u: UniquenessFunction, spec: OrbitSpec, method: str) -> dict:
    return {
        "op": op,
        "curve": {"a": format_rational(u.curve.a), "b": format_rational(u.curve.b)},
        "params": u.params.to_json_dict(),
        "spec": spec.config_dict(),
        "method": method,
    }


def _require_valid(u: UniquenessFunction):
    violations = validate_params(u.params)
    if violations:
        raise ValueError("invalid injection parameters: " + "; ".join(violations))


def p_injectivity_scan(
    u: UniquenessFunction,
    spec: OrbitSpec,
    *,
    method: str = "auto",
    shards: int = 1,
    num_primes: int = 2,
    memory_ceiling: Optional[int] = DEFAULT_MEMORY_CEILING,
    progress_every: int = PROGRESS_EVERY,
) -> CollisionReport:
    """Scan eval_P over the orbit for exact value collisions.

    Labels whose points coincide (possible only with a wrong torsion list)
    are flagged as duplicate points, not value collisions, and only the
    first occurrence stays in the value scan.
    """
    _require_valid(u)
    spec.validate()
    if method == "auto":
        method = "exact" if spec.bound <= EXACT_P_SCAN_BOUND else "residue"
    config = _scan_config("p_injectivity_scan", u, spec, method)

    if method == "exact":
        labeled = list(orbit(spec))
        points = dict(labeled)
        duplicates, kept = _split_duplicate_points(
            [label for label, _ in labeled],
            point_of=lambda lb: (points[lb].x, points[lb].y),
            confirm_point=lambda lb: points[lb],
        )
        report = collision_scan(
            ((label, u.eval_P(points[label])) for label in kept),
            shards=shards,
            config=config,
            memory_ceiling=memory_ceiling,
            progress_every=progress_every,
        )
        report.duplicate_points = duplicates
        return report

    if method != "residue":
        raise ValueError(f"unknown method {method!r}")

    systems = _choose_residue_systems(
        spec, num_primes, must_invert=[u.params.alpha, u.params.beta]
    )
    labels = [label for label, _ in systems[0].labeled]
    point_res = {}
    value_res = {}
    for sysm in systems:
        ar = fraction_mod(u.params.alpha, sysm.p)
        br = fraction_mod(u.params.beta, sysm.p)
        assert [label for label, _ in sysm.labeled] == labels
        for label, (x, y) in sysm.labeled:
            point_res.setdefault(label, []).extend((x, y))
            value_res.setdefault(label, []).append((ar * x + br * y) % sysm.p)

    evaluator = _ExactLabelEvaluator(u, spec)
    duplicates, kept = _split_duplicate_points(
        labels,
        point_of=lambda lb: _pack(point_res[lb]),
        confirm_point=evaluator.point,
    )
    return _residue_collision_scan(
        ((_pack(value_res[label]), label) for label in kept),
        confirm=lambda keys: [(k, evaluator.p_value(k)) for k in keys],
        shards=shards,
        config=config,
        memory_ceiling=memory_ceiling,
        progress_every=progress_every,
        duplicate_points=duplicates,
    )


def f_injectivity_scan(
    u: UniquenessFunction,
    spec: OrbitSpec,
    *,
    method: str = "auto",
    strategy: str = "direct",
    shards: int = 1,
    num_primes: int = 2,
    memory_ceiling: Optional[int] = DEFAULT_MEMORY_CEILING,
    progress_every: int = PROGRESS_EVERY,
) -> CollisionReport:
    """Scan eval_f over all ordered orbit-point pairs; keys are (m1, m2).

    Precondition: eval_P must be collision-free on the same orbit, so the
    scanned set plays the role of the injective open set.  `strategy`
    selects the direct pair-value index (default) or the difference
    strategy, which indexes n-th-power differences in a second pass.
    """
    _require_valid(u)
    spec.validate()
    pre = p_injectivity_scan(
        u, spec, method=method, num_primes=num_primes,
        memory_ceiling=memory_ceiling, progress_every=progress_every,
    )
    if pre.classes or pre.duplicate_points:
        raise ValueError("P not injective on scanned set; shrink or exclude collision points")
    if method == "auto":
        method = "exact" if spec.bound <= EXACT_F_SCAN_BOUND else "residue"
    config = _scan_config("f_injectivity_scan", u, spec, method)
    config["strategy"] = strategy
    n, gamma = u.params.n, u.params.gamma

    if method == "exact":
        labeled = list(orbit(spec))
        powers = [(label, u.eval_P(pt) ** n) for label, pt in labeled]

        def pair_values():
            for (l1, a), (l2, b) in pair_stream(powers):
                yield ((l1, l2), a + gamma * b)

        return collision_scan(
            pair_values(),
            shards=shards,
            config=config,
            memory_ceiling=memory_ceiling,
            progress_every=progress_every,
        )

    if method != "residue":
        raise ValueError(f"unknown method {method!r}")

    systems = _choose_residue_systems(
        spec, num_primes, must_invert=[u.params.alpha, u.params.beta, u.params.gamma]
    )
    labels = [label for label, _ in systems[0].labeled]
    per_prime = []
    for sysm in systems:
        p = sysm.p
        ar, br = fraction_mod(u.params.alpha, p), fraction_mod(u.params.beta, p)
        gr = fraction_mod(gamma, p)
        pw = [pow((ar * x + br * y) % p, n, p) for _, (x, y) in sysm.labeled]
        per_prime.append((p, gr, pw))
    evaluator = _ExactLabelEvaluator(u, spec)

    if strategy == "difference":
        pairs = _difference_candidates(labels, per_prime)
        return _confirmed_report_from_candidates(
            pairs, labels, evaluator, config, total=len(labels) ** 2
        )
    if strategy != "direct":
        raise ValueError(f"unknown strategy {strategy!r}")

    def pair_entries():
        k = len(labels)
        for i in range(k):
            l1 = labels[i]
            for j in range(k):
                acc = 0
                for p, gr, pw in per_prime:
                    acc = (acc << 64) | (pw[i] + gr * pw[j]) % p
                yield (acc, (l1, labels[j]))

    return _residue_collision_scan(
        pair_entries(),
        confirm=lambda keys: [(k, evaluator.f_value(k)) for k in keys],
        shards=shards,
        config=config,
        memory_ceiling=memory_ceiling,
        progress_every=progress_every,
    )


def _difference_candidates(labels, per_prime):
    """Pairs of ordered pairs that satisfy a^n - c^n = gamma*(d^n - b^n) on
    every prime's residues: the difference form of f(A,B) = f(C,D).

    Pass 1 indexes the left side over (A, C); pass 2 probes with the right
    side over (D, B).  Identity matches (A, B) = (C, D) are skipped.
    """
    k = len(labels)
    index = {}
    for i in range(k):
        for j in range(k):
            acc = 0
            for p, _, pw in per_prime:
                acc = (acc << 64) | (pw[i] - pw[j]) % p
            index.setdefault(acc, []).append((i, j))
    candidates = set()
    for d in range(k):
        for b in range(k):
            acc = 0
            for p, gr, pw in per_prime:
                acc = (acc << 64) | gr * (pw[d] - pw[b]) % p
            for a, c in index.get(acc, ()):
                if (a, b) == (c, d):
                    continue
                first = (labels[a], labels[b])
                second = (labels[c], labels[d])
                candidates.add((min(first, second, key=str), max(first, second, key=str)))
    return candidates


def _confirmed_report_from_candidates(candidates, labels, evaluator, config, total):
    by_value = {}
    for first, second in sorted(candidates, key=str):
        for pair in (first, second):
            v = evaluator.f_value(pair)
            if pair not in by_value.setdefault(v, []):
                by_value[v].append(pair)
    order = {label: i for i, label in enumerate(labels)}
    classes = []
    for value, pairs in by_value.items():
        pairs = sorted(set(pairs), key=lambda pr: (order[pr[0]], order[pr[1]]))
        if len(pairs) >= 2:
            classes.append(CollisionClass(value, pairs))
    classes.sort(key=lambda c: c.value)
    return CollisionReport(total, classes, [], config)


def zagier_probe(
    h_bound: int,
    *,
    shards: int = 1,
    memory_ceiling: Optional[int] = DEFAULT_MEMORY_CEILING,
    progress_every: int = PROGRESS_EVERY,
) -> CollisionReport:
    """Exact collision scan of r1^7 + 3*r2^7 over all ordered pairs of
    rationals of height <= h_bound.  A nonempty class would be a finding
    to surface, never to suppress."""
    rats = list(rationals_by_height(h_bound))
    config = {"op": "zagier_probe", "height_bound": h_bound, "n": 7, "gamma": "3"}

    def entries():
        for r1 in rats:
            for r2 in rats:
                yield ((format_rational(r1), format_rational(r2)), zagier_eval(r1, r2, 7, 3))

    return collision_scan(
        entries(),
        shards=shards,
        config=config,
        memory_ceiling=memory_ceiling,
        progress_every=progress_every,
    )

"""Brute-force oracles, a seeded random corpus, and the claim-by-claim suite.

The oracles here work straight from the definitions on a rank table of the
matrix and deliberately avoid the pruned enumeration in :mod:`msplit.matroid`
and every family built in :mod:`msplit.splitting`.

Corpus generation: instance ``index`` under ``seed`` draws from
``random.Random(seed * 2**32 + index)`` in this fixed order: the prime
(``choice`` over ``primes``), the row count in ``[2, max_rows]``, the column
count in ``[rows + 1, max_cols]``, then the entries row by row.  Draws that
give a loop, a coloop or rank below 2 are discarded and the same generator
keeps drawing.  Sampled split sets come from a second generator seeded with
``seed * 2**32 + index + 2**31``.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, Sequence

from . import gfp
from .errors import MsplitError, NotEulerian
from .fixtures import FIXTURE_SPLITS, fixtures
from .gfp import FieldMatrix
from .matroid import GroundSubset, Matroid, bits_of, mask_of, order_key
from .splitting import CircuitClass, SplitInstance

log = logging.getLogger(__name__)

CLAIMS = (
    "oracle", "classify", "L1.1", "L1.2", "k.1", "k.2", "s", "dep", "L2",
    "con", "esplit-conn", "nconn", "e1", "final-prop", "trivial-equiv",
)

PASS, FAIL, SKIPPED = "PASS", "FAIL", "SKIPPED"

RANK_EXHAUSTIVE_LIMIT = 8
RANK_SAMPLES = 200


# oracles

def _oracle_circuit_masks(ranks: Sequence[int], n: int) -> list[int]:
    out = []
    for mask in range(1, 1 << n):
        size = mask.bit_count()
        if ranks[mask] == size:
            continue
        if all(ranks[mask ^ (1 << j)] == size - 1 for j in bits_of(mask)):
            out.append(mask)
    return sorted(out, key=order_key)


def oracle_circuits(matrix: FieldMatrix, labels: Sequence[str]) -> list[GroundSubset]:
    """Minimal dependent column sets: dependent, and every one-smaller subset independent."""
    ground = tuple(labels)
    ranks = gfp.subset_ranks(matrix)
    return [GroundSubset(m, ground) for m in _oracle_circuit_masks(ranks, matrix.ncols)]


def oracle_bases(matrix: FieldMatrix, labels: Sequence[str]) -> list[GroundSubset]:
    ground = tuple(labels)
    ranks = gfp.subset_ranks(matrix)
    n = matrix.ncols
    r = ranks[(1 << n) - 1]
    return [GroundSubset(m, ground) for m in range(1 << n)
            if m.bit_count() == r and ranks[m] == r]


# corpus

@dataclass(frozen=True)
class CorpusConfig:
    seed: int = 1
    instance_count: int = 0
    primes: tuple[int, ...] = (2, 3, 5)
    max_rows: int = 4
    max_cols: int = 8
    # "auto": every nonempty proper T up to 7 elements, 10 sampled above;
    # "all"; or "sampled:K"
    t_policy: str = "auto"

    def __post_init__(self):
        object.__setattr__(self, "primes", tuple(int(p) for p in self.primes))
        if self.instance_count < 0:
            raise ValueError("instance_count must be nonnegative")
        if not self.primes:
            raise ValueError("at least one prime is required")
        for p in self.primes:
            gfp.PrimeModulus(p)
        if not 2 <= self.max_rows <= 5:
            raise ValueError("max_rows must lie in [2, 5]")
        if not self.max_rows + 1 <= self.max_cols <= 8:
            raise ValueError("max_cols must lie in [max_rows + 1, 8]")
        self.sample_count()

    def sample_count(self) -> int | None:
        """Number of sampled T sets for large instances, None for exhaustive."""
        if self.t_policy in ("auto", "all"):
            return None
        kind, _, k = self.t_policy.partition(":")
        if kind != "sampled" or not k.isdigit() or int(k) < 1:
            raise ValueError(f"unknown t_policy {self.t_policy!r}")
        return int(k)


def random_instance(cfg: CorpusConfig, index: int) -> Matroid:
    if not 0 <= index < cfg.instance_count:
        raise IndexError(f"instance {index} outside [0, {cfg.instance_count})")
    rng = random.Random(cfg.seed * 2**32 + index)
    while True:
        p = rng.choice(cfg.primes)
        rows = rng.randint(2, cfg.max_rows)
        cols = rng.randint(rows + 1, cfg.max_cols)
        grid = [[rng.randrange(p) for _ in range(cols)] for _ in range(rows)]
        labels = [chr(ord("a") + j) for j in range(cols)]
        try:
            m = Matroid(FieldMatrix(p, grid), labels)
        except MsplitError:
            continue
        if m.rank >= 2:
            return m


def split_sets(cfg: CorpusConfig, m: Matroid, index: int) -> list[int]:
    full = m.full_mask
    every = sorted(range(1, full), key=order_key)
    k = cfg.sample_count()
    if cfg.t_policy == "all" or (cfg.t_policy == "auto" and m.size <= 7):
        return every
    k = k or 10
    if k >= len(every):
        return every
    rng = random.Random(cfg.seed * 2**32 + index + 2**31)
    return sorted(rng.sample(every, k), key=order_key)


# claim evaluation

def _labels(masks, ground) -> list[list[str]]:
    return [list(GroundSubset(m, ground).labels) for m in sorted(masks, key=order_key)]


def _compare(predicted, actual, ground) -> dict[str, Any]:
    predicted, actual = set(predicted), set(actual)
    if predicted == actual:
        return {"status": PASS}
    return {"status": FAIL, "witness": {
        "missing": _labels(actual - predicted, ground),
        "extra": _labels(predicted - actual, ground),
    }}


def _skip(reason: str) -> dict[str, Any]:
    return {"status": SKIPPED, "reason": reason}


def _fail(witness) -> dict[str, Any]:
    return {"status": FAIL, "witness": witness}


def _rank_subsets(si: SplitInstance, salt: int) -> list[int]:
    n = si.base.size
    if n <= RANK_EXHAUSTIVE_LIMIT:
        return list(range(1 << n))
    rng = random.Random(salt)
    return sorted(rng.randrange(1 << n) for _ in range(RANK_SAMPLES))


def verify_instance(M: Matroid, T, *, findings: list | None = None,
                    instance_id: str = "") -> dict[str, dict[str, Any]]:
    """Evaluate every claim on (M, T); returns claim name -> result record.

    Findings that are reported rather than judged are appended to ``findings``.
    """
    if findings is None:
        findings = []
    si = SplitInstance(M, T)
    ground, eground = M.ground, si.esplit.ground
    t_labels = list(si.T.labels)
    claims: dict[str, dict[str, Any]] = {}

    base_ranks = M._ranks
    split_ranks = si.split._ranks
    esplit_ranks = si.esplit._ranks
    n = M.size
    z = si.z_bit

    base_oracle = _oracle_circuit_masks(base_ranks, n)
    split_oracle = _oracle_circuit_masks(split_ranks, n)
    esplit_oracle = _oracle_circuit_masks(esplit_ranks, n + 1)
    split_oracle_set = set(split_oracle)

    claims["oracle"] = _compare(M._circuit_masks, base_oracle, ground)

    wrong = [cc.circuit.bits for cc in si.classified
             if cc.klass is not CircuitClass.DISJOINT
             and (cc.klass is CircuitClass.PT) != (cc.circuit.bits in split_oracle_set)]
    claims["classify"] = _fail(_labels(wrong, ground)) if wrong else {"status": PASS}

    claims["L1.1"] = _compare(si._predicted_split, split_oracle, ground)
    claims["L1.2"] = _compare(si._predicted_esplit, esplit_oracle, eground)

    if si._npt:
        r_split = split_ranks[(1 << n) - 1]
        brute_split = [m for m in range(1 << n) if m.bit_count() == r_split and split_ranks[m] == r_split]
        r_esplit = esplit_ranks[(1 << (n + 1)) - 1]
        brute_esplit = [m for m in range(1 << (n + 1))
                        if m.bit_count() == r_esplit and esplit_ranks[m] == r_esplit]
        claims["k.1"] = _compare(si._predicted_bases_split, brute_split, ground)
        claims["k.2"] = _compare([g.bits for g in si.predicted_bases_esplit()], brute_esplit, eground)
        literal = set(si._predicted_bases_split_literal)
        if literal != set(brute_split):
            findings.append({
                "kind": "k.1-literal", "instance": instance_id, "T": t_labels,
                "extra": _labels(literal - set(brute_split), ground),
                "missing": _labels(set(brute_split) - literal, ground),
            })
    else:
        claims["k.1"] = claims["k.2"] = _skip("no NPT-circuit")

    bad_rank = None
    for s in _rank_subsets(si, z ^ si.t_mask):
        if (si._split_rank(s) != split_ranks[s]
                or si.esplit_rank(s) != esplit_ranks[s | z]
                or si.esplit_rank(s, include_z=False) != esplit_ranks[s]):
            bad_rank = s
            break
    claims["s"] = _fail(list(GroundSubset(bad_rank, ground).labels)) if bad_rank is not None else {"status": PASS}

    pairs = [(a, b) for a, b in combinations(si._npt, 2) if not a & b]
    if not pairs:
        claims["dep"] = _skip("no disjoint NPT pair")
    else:
        bad = [a | b for a, b in pairs if split_ranks[a | b] == (a | b).bit_count()]
        claims["dep"] = _fail(_labels(bad, ground)) if bad else {"status": PASS}

    claims["L2"] = _compare(si._cz, [c for c in esplit_oracle if c & z], eground)

    m_connected = M.is_connected()
    holds, _ = si.lemma_con_hypothesis()
    if not m_connected:
        claims["con"] = _skip("M disconnected")
    elif not holds:
        claims["con"] = _skip("hypothesis false")
    else:
        sep = si.split.connectivity_separation(1)
        claims["con"] = {"status": PASS} if sep is None else _fail(list(sep[0].labels))

    trivial = si.is_trivial_split()
    if not m_connected:
        claims["esplit-conn"] = _skip("M disconnected")
    elif si.esplit.is_connected() == (not trivial):
        claims["esplit-conn"] = {"status": PASS}
    else:
        claims["esplit-conn"] = _fail({"trivial": trivial, "esplit_connected": not trivial})

    checked, violations = [], []
    nn = 2
    while 2 * (nn - 1) <= n:
        if si.nconn_hypotheses(nn).all_hold:
            criterion, witness = si.nconn_criterion(nn)
            connected = si.split.is_n_connected(nn)
            checked.append(nn)
            if criterion != connected:
                violations.append({"n": nn, "criterion": criterion, "split_n_connected": connected,
                                   "trivial": si.is_trivial_split(),
                                   "witness": list(witness.labels) if witness else None})
        nn += 1
    if not checked:
        claims["nconn"] = _skip("hypotheses unmet")
    elif M.p != 2:
        claims["nconn"] = _skip("p>2 reported as finding")
        for v in violations:
            findings.append({"kind": "nconn-odd-p", "instance": instance_id, "T": t_labels, **v})
    else:
        claims["nconn"] = _fail(violations) if violations else {"status": PASS, "n": checked}

    try:
        ptd = si.pt_decomposition()
    except NotEulerian:
        ptd = None
        claims["e1"] = _skip("M not Eulerian")
    if "e1" not in claims:
        if ptd is None:
            claims["e1"] = _skip("no PT-decomposition")
        elif si.split.is_eulerian():
            claims["e1"] = {"status": PASS}
        else:
            claims["e1"] = _fail([list(c.members.labels) for c in ptd.circuits()])

    try:
        one = si.one_npt_decomposition()
    except NotEulerian:
        claims["final-prop"] = _skip("M not Eulerian")
    else:
        if one is None:
            claims["final-prop"] = _skip("no decomposition with exactly one NPT-circuit")
        elif si.esplit.is_eulerian():
            claims["final-prop"] = {"status": PASS}
        else:
            claims["final-prop"] = _fail([list(c.members.labels) for c in one])

    rank_equal = split_ranks[(1 << n) - 1] == base_ranks[(1 << n) - 1]
    no_npt = not si._npt
    same_circuits = set(si.split._circuit_masks) == set(M._circuit_masks)
    views = {"rank_equal": rank_equal, "row_space": trivial, "no_npt": no_npt,
             "same_circuits": same_circuits}
    claims["trivial-equiv"] = {"status": PASS} if len(set(views.values())) == 1 else _fail(views)

    cocircuit = M.is_cocircuit(si.T)
    if cocircuit != trivial:
        findings.append({"kind": "cocircuit-vs-trivial", "instance": instance_id, "T": t_labels,
                         "cocircuit": cocircuit, "trivial": trivial})
    return claims


# suite

@dataclass
class VerificationReport:
    config: dict[str, Any]
    instances: list[dict[str, Any]] = field(default_factory=list)
    records: list[dict[str, Any]] = field(default_factory=list)
    findings: list[dict[str, Any]] = field(default_factory=list)

    def summary(self) -> dict[str, dict[str, int]]:
        counts = {c: {PASS: 0, FAIL: 0, SKIPPED: 0} for c in CLAIMS}
        for rec in self.records:
            for name, result in rec["claims"].items():
                counts[name][result["status"]] += 1
        return counts

    @property
    def failure_count(self) -> int:
        return sum(c[FAIL] for c in self.summary().values())

    def failures(self) -> list[tuple[dict[str, Any], str]]:
        return [(rec, name) for rec in self.records
                for name, result in rec["claims"].items() if result["status"] == FAIL]

    def to_dict(self) -> dict[str, Any]:
        return {
            "config": self.config,
            "instances": self.instances,
            "records": self.records,
            "findings": self.findings,
            "summary": self.summary(),
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> VerificationReport:
        return cls(data["config"], data["instances"], data["records"], data["findings"])


def _instance_entry(instance_id: str, m: Matroid) -> dict[str, Any]:
    return {"id": instance_id, "p": m.p, "ground": list(m.ground),
            "columns": [list(c) for c in m.matrix.columns()]}


def run_suite(cfg: CorpusConfig) -> VerificationReport:
    """Fixtures with their canonical split sets, then the seeded corpus."""
    report = VerificationReport(config={
        "seed": cfg.seed, "instance_count": cfg.instance_count, "primes": list(cfg.primes),
        "max_rows": cfg.max_rows, "max_cols": cfg.max_cols, "t_policy": cfg.t_policy,
    })
    work: list[tuple[str, Matroid, list[int]]] = []
    for name, m in fixtures().items():
        work.append((name, m, [m.subset(t).bits for t in FIXTURE_SPLITS[name]]))
    for index in range(cfg.instance_count):
        m = random_instance(cfg, index)
        work.append((f"R{index:04d}", m, split_sets(cfg, m, index)))

    for instance_id, m, t_masks in work:
        report.instances.append(_instance_entry(instance_id, m))
        for t in t_masks:
            claims = verify_instance(m, t, findings=report.findings, instance_id=instance_id)
            report.records.append({"instance": instance_id,
                                   "T": list(m.subset(t).labels),
                                   "claims": claims})
        log.debug("verified %s over %d split sets", instance_id, len(t_masks))
    return report

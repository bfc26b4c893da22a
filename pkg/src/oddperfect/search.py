"""Exhaustive, resumable searches for sigma(q^alpha) = 2n^2 and = n^2.

The scan walks primes q in a range and exponents alpha in a range, testing
whether sigma(q^alpha) is twice a square (TWO_N_SQUARED) or a square
(N_SQUARED).  Work is sharded into fixed-size contiguous prime blocks so the
merged output is byte-identical for any worker count, which is what makes
golden-file and resume testing possible.
"""
from __future__ import annotations

import enum
import hashlib
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

from .arith import gcd, isqrt_exact, primes_upto
from .errors import CheckpointError, ConsistencyError, SearchInterrupted

#: Primes per shard.  Small enough that interrupt/resume granularity is
#: useful, large enough that process overhead stays negligible.
SHARD_PRIMES = 128


class Equation(str, enum.Enum):
    """Which Diophantine equation the scan tests."""

    TWO_N_SQUARED = "2nsq"  # 2n^2 = sigma(q^alpha)
    N_SQUARED = "nsq"  # n^2 = sigma(q^beta)


@dataclass(frozen=True)
class SearchConfig:
    equation: Equation
    q_min: int = 3
    q_max: int = 50_000
    alpha_min: int = 1
    alpha_max: int = 25
    residue_filter: int | None = None
    worker_count: int = 1
    checkpoint_path: str | None = None

    def __post_init__(self) -> None:
        if self.q_min > self.q_max:
            raise ValueError(f"q_min {self.q_min} > q_max {self.q_max}")
        if self.alpha_min < 1:
            # alpha = 0 would make sigma(q^0) = 1 = 1^2 a degenerate hit
            raise ValueError(f"alpha_min must be >= 1, got {self.alpha_min}")
        if self.alpha_min > self.alpha_max:
            raise ValueError(f"alpha_min {self.alpha_min} > alpha_max {self.alpha_max}")
        if self.residue_filter not in (None, 1, 3):
            raise ValueError(f"residue_filter must be 1 or 3, got {self.residue_filter}")
        if self.worker_count < 1:
            raise ValueError(f"worker_count must be >= 1, got {self.worker_count}")

    def identity(self) -> dict:
        """The fields that define what is searched (not how)."""
        return {
            "equation": self.equation.value,
            "q_min": self.q_min,
            "q_max": self.q_max,
            "alpha_min": self.alpha_min,
            "alpha_max": self.alpha_max,
            "residue_filter": self.residue_filter,
        }

    def config_hash(self) -> str:
        """Stable digest of the search identity.

        worker_count and checkpoint_path are excluded on purpose: runs that
        differ only in those must produce identical reports.
        """
        return hashlib.sha256(canonical_json(self.identity()).encode()).hexdigest()[:16]


@dataclass(frozen=True)
class SolutionRecord:
    """One (q, alpha, n) satisfying the configured equation exactly."""

    equation: Equation
    q: int
    alpha: int
    n: int
    split: tuple[int, int] | None = None

    def as_dict(self) -> dict:
        n1, n2 = self.split if self.split is not None else (None, None)
        return {
            "equation": self.equation.value,
            "q": self.q,
            "alpha": self.alpha,
            "n": self.n,
            "n1": n1,
            "n2": n2,
        }


@dataclass(frozen=True)
class SearchReport:
    """Full outcome of one scan: hits plus coverage accounting."""

    config: SearchConfig
    records: tuple[SolutionRecord, ...]
    scanned_primes: int
    skipped_even_alpha: int

    def summary(self) -> dict:
        return {
            "scanned_primes": self.scanned_primes,
            "skipped_even_alpha": self.skipped_even_alpha,
            "hits": len(self.records),
            "config_hash": self.config.config_hash(),
        }

    def to_jsonl(self) -> str:
        """One JSON object per record, then the summary object, newline-terminated."""
        lines = [canonical_json(r.as_dict()) for r in self.records]
        lines.append(canonical_json(self.summary()))
        return "\n".join(lines) + "\n"


def canonical_json(obj) -> str:
    """Key-sorted, whitespace-free JSON — the byte-stable wire form."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def split_solution(q: int, alpha: int, n: int) -> tuple[int, int]:
    """Split a 2n^2 = sigma(q^alpha) solution into its coprime halves.

    Returns the unique (n1, n2) with (q-1)*n1^2 = q^((alpha+1)/2) - 1 and
    2*n2^2 = q^((alpha+1)/2) + 1.  The caller promises the equation holds and
    alpha is odd; a failure of the exact-square test here would falsify the
    splitting lemma itself, so it aborts loudly instead of returning.
    """
    if alpha % 2 == 0:
        raise ValueError(f"alpha must be odd, got {alpha}")
    half_power = q ** ((alpha + 1) // 2)
    sq1, rem = divmod(half_power - 1, q - 1)
    if rem:
        raise ConsistencyError(f"(q-1) does not divide q^((alpha+1)/2)-1 at q={q}")
    n1 = isqrt_exact(sq1)
    sq2, rem = divmod(half_power + 1, 2)
    if rem:
        raise ConsistencyError(f"q^((alpha+1)/2)+1 is odd at q={q}")
    n2 = isqrt_exact(sq2)
    if n1 is None or n2 is None:
        raise ConsistencyError(
            f"splitting lemma violated at (q={q}, alpha={alpha}, n={n}): "
            f"{sq1} or {sq2} is not a perfect square"
        )
    if gcd(n1, n2) != 1 or n1 * n2 != n:
        raise ConsistencyError(
            f"split ({n1}, {n2}) of (q={q}, alpha={alpha}) fails gcd/product check"
        )
    return n1, n2


def _scan_shard(args: tuple[tuple[int, ...], str, int, int]) -> tuple[list[tuple], int]:
    """Scan one block of primes; runs in a worker process.

    Returns plain tuples rather than SolutionRecords to keep the pickled
    payload small.
    """
    primes, equation_value, alpha_min, alpha_max = args
    two_nsq = equation_value == Equation.TWO_N_SQUARED.value
    hits: list[tuple] = []
    skipped = 0
    for q in primes:
        sigma = 1
        power = 1
        for alpha in range(1, alpha_max + 1):
            power *= q
            sigma += power
            if alpha < alpha_min:
                continue
            if two_nsq:
                if alpha % 2 == 0:
                    # sigma(q^alpha) is odd here, never 2n^2
                    skipped += 1
                    continue
                if sigma % 2:
                    continue
                n = isqrt_exact(sigma // 2)
                if n is not None:
                    hits.append((q, alpha, n, split_solution(q, alpha, n)))
            else:
                n = isqrt_exact(sigma)
                if n is not None:
                    hits.append((q, alpha, n, None))
    return hits, skipped


def _shards(primes: list[int]) -> list[tuple[int, ...]]:
    return [
        tuple(primes[lo : lo + SHARD_PRIMES]) for lo in range(0, len(primes), SHARD_PRIMES)
    ]


def _eligible_primes(cfg: SearchConfig) -> list[int]:
    return [
        p
        for p in primes_upto(cfg.q_max)
        if p >= cfg.q_min
        and (cfg.residue_filter is None or p % 4 == cfg.residue_filter)
    ]


def run_search(cfg: SearchConfig, max_shards: int | None = None) -> SearchReport:
    """Run the configured scan to completion (or for max_shards shards).

    Results arrive in ascending (q, alpha) order whatever the worker count.
    With a checkpoint path configured, progress is saved after every shard
    and a previous run with the same config identity is continued instead of
    restarted; the final report is byte-identical either way.  Stopping at
    max_shards raises SearchInterrupted after saving.
    """
    primes = _eligible_primes(cfg)
    shards = _shards(primes)
    skip_per_prime = (
        sum(1 for a in range(cfg.alpha_min, cfg.alpha_max + 1) if a % 2 == 0)
        if cfg.equation is Equation.TWO_N_SQUARED
        else 0
    )

    records: list[SolutionRecord] = []
    skipped = 0
    start_shard = 0
    if cfg.checkpoint_path is not None and os.path.exists(cfg.checkpoint_path):
        state = checkpoint_resume(cfg.checkpoint_path)
        if state.config.config_hash() != cfg.config_hash():
            raise CheckpointError(
                f"checkpoint {cfg.checkpoint_path} belongs to config "
                f"{state.config.config_hash()}, not {cfg.config_hash()}"
            )
        while start_shard < len(shards) and shards[start_shard][-1] <= state.cursor:
            skipped += skip_per_prime * len(shards[start_shard])
            start_shard += 1
        records.extend(state.partial_hits)

    done = 0
    for shard, (hits, shard_skipped) in zip(
        shards[start_shard:], _shard_results(cfg, shards[start_shard:])
    ):
        for q, alpha, n, split in hits:
            records.append(SolutionRecord(cfg.equation, q, alpha, n, split))
        skipped += shard_skipped
        if cfg.checkpoint_path is not None:
            checkpoint_save(
                CheckpointState(cfg, shard[-1], tuple(records)), cfg.checkpoint_path
            )
        done += 1
        if max_shards is not None and done >= max_shards:
            raise SearchInterrupted(
                f"stopped after {done} shard(s), cursor at prime {shard[-1]}"
            )
    return SearchReport(cfg, tuple(records), len(primes), skipped)


def _shard_results(cfg: SearchConfig, shards: list[tuple[int, ...]]):
    payloads = [
        (shard, cfg.equation.value, cfg.alpha_min, cfg.alpha_max) for shard in shards
    ]
    if cfg.worker_count == 1:
        yield from map(_scan_shard, payloads)
        return
    pool = ProcessPoolExecutor(max_workers=cfg.worker_count)
    try:
        # executor.map preserves submission order, so merge order is fixed
        yield from pool.map(_scan_shard, payloads)
    finally:
        pool.shutdown(wait=False, cancel_futures=True)


def search_two_n_squared(cfg: SearchConfig) -> list[SolutionRecord]:
    """All (q, alpha, n) in range with 2n^2 = sigma(q^alpha), split attached."""
    if cfg.equation is not Equation.TWO_N_SQUARED:
        raise ValueError(f"config is for {cfg.equation.value}, not 2nsq")
    return list(run_search(cfg).records)


def search_n_squared(cfg: SearchConfig) -> list[SolutionRecord]:
    """All (q, beta, n) in range with n^2 = sigma(q^beta)."""
    if cfg.equation is not Equation.N_SQUARED:
        raise ValueError(f"config is for {cfg.equation.value}, not nsq")
    return list(run_search(cfg).records)


@dataclass(frozen=True)
class CheckpointState:
    """What resuming needs: the search identity, a cursor, hits so far."""

    config: SearchConfig
    cursor: int  # last prime whose shard completed
    partial_hits: tuple[SolutionRecord, ...]


def checkpoint_save(state: CheckpointState, path: str) -> None:
    """Atomically write the checkpoint; an existing file is never corrupted."""
    payload = {
        "config": state.config.identity(),
        "config_hash": state.config.config_hash(),
        "last_completed_prime": state.cursor,
        "partial_hits": [r.as_dict() for r in state.partial_hits],
    }
    tmp = f"{path}.tmp"
    try:
        with open(tmp, "w", encoding="utf-8") as fh:
            fh.write(canonical_json(payload) + "\n")
        os.replace(tmp, path)
    except OSError as exc:
        raise CheckpointError(f"cannot write checkpoint {path}: {exc}") from exc


def checkpoint_resume(path: str) -> CheckpointState:
    """Load a checkpoint; the file on disk is left untouched."""
    try:
        with open(path, encoding="utf-8") as fh:
            payload = json.load(fh)
    except OSError as exc:
        raise CheckpointError(f"cannot read checkpoint {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise CheckpointError(f"checkpoint {path} is not valid JSON: {exc}") from exc
    try:
        ident = payload["config"]
        cfg = SearchConfig(
            equation=Equation(ident["equation"]),
            q_min=ident["q_min"],
            q_max=ident["q_max"],
            alpha_min=ident["alpha_min"],
            alpha_max=ident["alpha_max"],
            residue_filter=ident["residue_filter"],
        )
        if payload["config_hash"] != cfg.config_hash():
            raise CheckpointError(f"checkpoint {path} hash does not match its config")
        hits = tuple(
            SolutionRecord(
                equation=Equation(r["equation"]),
                q=r["q"],
                alpha=r["alpha"],
                n=r["n"],
                split=None if r["n1"] is None else (r["n1"], r["n2"]),
            )
            for r in payload["partial_hits"]
        )
        return CheckpointState(cfg, payload["last_completed_prime"], hits)
    except (KeyError, TypeError, ValueError) as exc:
        raise CheckpointError(f"checkpoint {path} is malformed: {exc}") from exc


def resume_config(path: str, **overrides) -> SearchConfig:
    """Rebuild a runnable SearchConfig from a checkpoint file.

    worker_count and checkpoint_path are not part of the stored identity;
    pass them as overrides (checkpoint_path defaults to the file itself).
    """
    state = checkpoint_resume(path)
    overrides.setdefault("checkpoint_path", path)
    return replace(state.config, **overrides)

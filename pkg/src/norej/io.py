"""File formats and report persistence.

One JSON schema covers all three instance kinds; only kind-relevant fields
are present.  Trial data goes to CSV (header ``trial,seed,alg_weight,
opt_weight,ratio``), summaries to JSON with the full config echo, the RNG
contract identifier, and the tool version.  All writes are atomic
(write-temp-then-rename), so interrupted runs never leave truncated files.
"""

from __future__ import annotations

import json
import os
import subprocess
import tempfile
from pathlib import Path

from .errors import SchemaError
from .instances import BipartiteInstance, GeneralInstance, Instance, RoommateInstance

RNG_CONTRACT = "philox4x64 key=(master_seed, trial); fisher-yates order first, then step draws"


def tool_version() -> str:
    here = Path(__file__).resolve()
    for parent in here.parents:
        if (parent / ".git").exists():
            try:
                out = subprocess.run(
                    ["git", "describe", "--always", "--dirty", "--tags"],
                    cwd=parent, capture_output=True, text=True, timeout=10)
                if out.returncode == 0 and out.stdout.strip():
                    return out.stdout.strip()
            except OSError:
                break
            break
    try:
        from importlib.metadata import version
        return version("norej")
    except Exception:
        return "unknown"


def atomic_write_text(path: str | Path, text: str) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name + ".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _require(raw: dict, key: str):
    if key not in raw:
        raise SchemaError(f"instance file missing field {key!r}")
    return raw[key]


def parse_instance_file(path: str | Path) -> dict:
    """Parse and shape-check an instance file; semantic checks live in
    validate_instance."""
    with open(path) as fh:
        try:
            raw = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise SchemaError("instance file must hold a JSON object")
    kind = raw.get("kind")
    if kind not in ("bipartite", "general", "roommate"):
        raise SchemaError(f"unknown kind {kind!r}")
    n = _require(raw, "n")
    if not isinstance(n, int) or n < 1:
        raise SchemaError("n must be a positive integer")
    if kind == "bipartite":
        caps = _require(raw, "capacities")
        weights = _require(raw, "weights")
        if not isinstance(weights, list) or len(weights) != len(caps):
            raise SchemaError("weights must have one row per offline vertex")
        if any(not isinstance(row, list) or len(row) != n for row in weights):
            raise SchemaError(f"every weight row must have n={n} entries")
    elif kind == "general":
        weights = _require(raw, "weights")
        if not isinstance(weights, list) or len(weights) != n \
                or any(not isinstance(row, list) or len(row) != n for row in weights):
            raise SchemaError(f"general weights must be an {n}x{n} matrix")
    else:
        rv = _require(raw, "room_valuations")
        mu = _require(raw, "mutual_utilities")
        if n % 2 == 1:
            raise SchemaError("roommate instances need an even n")
        m = n // 2
        if len(rv) != n or any(len(row) != m for row in rv):
            raise SchemaError(f"room_valuations must be {n}x{m}")
        if len(mu) != n or any(len(row) != n for row in mu):
            raise SchemaError(f"mutual_utilities must be {n}x{n}")
    return raw


def serialize_instance(inst: Instance) -> dict:
    if isinstance(inst, BipartiteInstance):
        return {
            "kind": "bipartite",
            "n": inst.n_online,
            "capacities": inst.capacities.tolist(),
            "weights": inst.weights.tolist(),
        }
    if isinstance(inst, GeneralInstance):
        out = {"kind": "general", "n": inst.n, "weights": inst.weights.tolist()}
        if inst.allow_odd:
            out["odd_mode"] = True
        return out
    assert isinstance(inst, RoommateInstance)
    return {
        "kind": "roommate",
        "n": inst.n,
        "room_valuations": inst.room_valuations.tolist(),
        "mutual_utilities": inst.mutual_utilities.tolist(),
    }


def write_instance_file(inst: Instance, path: str | Path) -> None:
    atomic_write_text(path, json.dumps(serialize_instance(inst)))


def write_trials_csv(report, path: str | Path) -> None:
    """trial,seed,alg_weight,opt_weight,ratio with full float precision."""
    lines = ["trial,seed,alg_weight,opt_weight,ratio"]
    totals = report.totals
    ratios = report.ratios
    opt_r = repr(float(report.opt_value))
    for t in range(report.trials):
        lines.append(
            f"{t},{report.master_seed},{float(totals[t])!r},{opt_r},{float(ratios[t])!r}")
    atomic_write_text(path, "\n".join(lines) + "\n")


def write_summary_json(report, path: str | Path, config: dict | None = None) -> None:
    payload = report.to_dict()
    payload["rng"] = RNG_CONTRACT
    payload["version"] = tool_version()
    payload["threads_env"] = os.environ.get("NOREJ_THREADS", "0")
    if config:
        payload["config"] = config
    atomic_write_text(path, json.dumps(payload, indent=2, sort_keys=True) + "\n")


def write_trace_jsonl(result, path: str | Path) -> None:
    lines = [json.dumps(ts.to_record()) for ts in result.trace]
    tail = {
        "total": result.total,
        "algorithm": result.algorithm,
        "k_s": result.k_s,
        "branch": result.branch,
        "branch_r": result.branch_r,
        "solver_calls": result.solver_calls,
    }
    lines.append(json.dumps({"final": tail}))
    atomic_write_text(path, "\n".join(lines) + "\n")

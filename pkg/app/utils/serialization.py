import hashlib
from typing import Any

import orjson

from app.models.schemas import Certificate


def canonical_json(data: Any) -> bytes:
    """Compact JSON with sorted keys; identical inputs give identical bytes."""
    return orjson.dumps(data, option=orjson.OPT_SORT_KEYS | orjson.OPT_NON_STR_KEYS)


def pretty_json(data: Any) -> str:
    return orjson.dumps(data, option=orjson.OPT_SORT_KEYS | orjson.OPT_INDENT_2 | orjson.OPT_NON_STR_KEYS).decode()


def sha256_digest(data: Any) -> str:
    return hashlib.sha256(canonical_json(data)).hexdigest()


def certificate_digest(cert: Certificate) -> str:
    """Digest over claim, status and steps; metadata (timings included) stays outside."""
    body = cert.model_dump(include={"claim", "status", "steps"})
    return sha256_digest(body)


def certificate_to_json(cert: Certificate) -> str:
    return pretty_json(cert.model_dump())


def certificate_to_text(cert: Certificate) -> str:
    """Human-readable report: claim line, one line per step, then the digest."""
    mark = "PASS" if cert.passed else "FAIL"
    lines = [f"[{mark}] {cert.claim}"]
    for step in cert.steps:
        lines.append(f"  {'ok ' if step.ok else 'BAD'} {step.desc}")
    digest = cert.metadata.get("digest")
    if digest:
        lines.append(f"  digest {digest}")
    return "\n".join(lines)

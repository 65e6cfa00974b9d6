"""JSON and CSV serialization.  Big integers are always decimal strings."""

from __future__ import annotations

import csv
import io
import json
from datetime import datetime, timezone
from typing import Any, Iterable, Mapping, Sequence

from .errors import InvalidSpecError
from .polycore import IntPolynomial, ProductSpec


def coefficient_dump(spec: ProductSpec, poly: IntPolynomial) -> dict:
    return {
        "p": spec.p,
        "s": spec.s,
        "n": spec.n,
        "degree": poly.degree,
        "coeffs": [str(c) for c in poly.coeffs],
    }


def load_coefficient_dump(obj: Mapping[str, Any] | str) -> tuple[ProductSpec, IntPolynomial]:
    """Parse a coefficient dump (dict or JSON text) and check it is consistent."""
    if isinstance(obj, str):
        obj = json.loads(obj)
    try:
        spec = ProductSpec(int(obj["p"]), int(obj["s"]), int(obj["n"]))
        coeffs = [int(c) for c in obj["coeffs"]]
        degree = int(obj["degree"])
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidSpecError(f"malformed coefficient dump: {exc}") from None
    poly = IntPolynomial(tuple(coeffs))
    if poly.degree != degree or len(coeffs) != degree + 1:
        raise InvalidSpecError(f"dump degree {degree} does not match {len(coeffs)} coefficients")
    return spec, poly


def timestamp() -> str:
    return datetime.now(timezone.utc).replace(microsecond=0).isoformat()


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def to_csv(rows: Iterable[Mapping[str, Any]], fields: Sequence[str], stamp: str | None = None) -> str:
    buf = io.StringIO()
    if stamp:
        buf.write(f"# generated {stamp}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(fields)
    for row in rows:
        writer.writerow([_cell(row.get(f)) for f in fields])
    return buf.getvalue()


def to_json(payload: Any, stamp: str | None = None) -> str:
    if stamp and isinstance(payload, dict):
        payload = {"generated": stamp, **payload}
    return json.dumps(payload, indent=1) + "\n"

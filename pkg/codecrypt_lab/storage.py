"""
File formats for keys, instances, signatures and matrices.

- Matrix text: a header line ``p m rows cols [c0,c1,...,cm]`` (the modulus
  in ascending coefficients, only for extension fields) followed by one
  line of space-separated integers per row.
- JSON envelopes: ``{"kind", "scheme", "field", "params", "public",
  "secret"?}`` for key files, and the same shape with other kinds for SDP
  instances, signatures and ciphertexts.
- Bit vectors: packed little-endian within each byte, coordinate 0 in bit 0
  of byte 0, written as lowercase hex.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

import numpy as np

from codecrypt_lab.algebra import FieldArray, FieldSpec
from codecrypt_lab.errors import FormatError

ENVELOPE_KINDS = ("key", "instance", "signature", "ciphertext", "tdm")


# ---------------------------------------------------------------------------
# Fields, vectors and matrices as JSON
# ---------------------------------------------------------------------------

def spec_to_json(spec: FieldSpec) -> dict[str, Any]:
    return {"p": spec.p, "m": spec.m, "modulus": list(spec.modulus) if spec.modulus else None}


def spec_from_json(data: dict[str, Any]) -> FieldSpec:
    try:
        mod = data.get("modulus")
        return FieldSpec(int(data["p"]), int(data.get("m", 1)), tuple(mod) if mod else None)
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"bad field description: {data!r}") from exc


def ints(x: FieldArray | np.ndarray) -> list:
    """Nested lists of Python ints (vector or matrix)."""
    return np.asarray(x).astype(np.int64).tolist()


def array_from_json(gf: type[FieldArray], data: Any) -> FieldArray:
    try:
        return gf(np.asarray(data, dtype=np.int64))
    except (TypeError, ValueError) as exc:
        raise FormatError(f"values do not fit in {FieldSpec.of(gf)}") from exc


# ---------------------------------------------------------------------------
# Matrix text format
# ---------------------------------------------------------------------------

def format_matrix(M: FieldArray) -> str:
    spec = FieldSpec.of(type(M))
    rows, cols = M.shape
    header = f"{spec.p} {spec.m} {rows} {cols}"
    if spec.modulus:
        header += " " + ",".join(str(c) for c in spec.modulus)
    lines = [header]
    lines.extend(" ".join(str(int(v)) for v in row) for row in np.asarray(M))
    return "\n".join(lines) + "\n"


def parse_matrix(text: str) -> FieldArray:
    lines = [line.strip() for line in text.splitlines() if line.strip() and not line.startswith("#")]
    if not lines:
        raise FormatError("empty matrix file")
    head = lines[0].split()
    if len(head) not in (4, 5):
        raise FormatError(f"bad matrix header {lines[0]!r}")
    try:
        p, m, rows, cols = (int(v) for v in head[:4])
        modulus = tuple(int(c) for c in head[4].split(",")) if len(head) == 5 else None
        spec = FieldSpec(p, m, modulus)
        data = [[int(v) for v in line.split()] for line in lines[1:]]
    except ValueError as exc:
        raise FormatError(f"bad matrix file: {exc}") from exc
    if len(data) != rows or any(len(r) != cols for r in data):
        raise FormatError(f"matrix body is not {rows}x{cols}")
    if rows == 0:
        return spec.gf.Zeros((0, cols))
    return array_from_json(spec.gf, data)


def write_matrix(path: str | Path, M: FieldArray) -> None:
    Path(path).write_text(format_matrix(M), encoding="utf-8")


def read_matrix(path: str | Path) -> FieldArray:
    path = Path(path)
    if not path.exists():
        raise FormatError(f"file not found: {path}")
    return parse_matrix(path.read_text(encoding="utf-8"))


# ---------------------------------------------------------------------------
# Bit packing
# ---------------------------------------------------------------------------

def pack_bits(x: FieldArray | np.ndarray) -> bytes:
    bits = np.asarray(x).astype(np.uint8)
    if bits.size and bits.max() > 1:
        raise FormatError("only binary vectors can be bit-packed")
    return np.packbits(bits, bitorder="little").tobytes()


def unpack_bits(data: bytes, n: int) -> np.ndarray:
    bits = np.unpackbits(np.frombuffer(data, dtype=np.uint8), bitorder="little")
    if bits.size < n:
        raise FormatError(f"{len(data)} bytes hold fewer than {n} bits")
    return bits[:n].astype(np.int64)


def to_hex(x: FieldArray | np.ndarray) -> str:
    return pack_bits(x).hex()


def from_hex(text: str, n: int) -> np.ndarray:
    try:
        return unpack_bits(bytes.fromhex(text), n)
    except ValueError as exc:
        raise FormatError(f"bad hex string {text!r}") from exc


# ---------------------------------------------------------------------------
# JSON envelopes
# ---------------------------------------------------------------------------

def _validate_envelope(data: Any) -> dict[str, Any] | None:
    """Check the envelope shape. Returns None if invalid."""
    if not isinstance(data, dict):
        return None
    if data.get("kind") not in ENVELOPE_KINDS:
        return None
    if not isinstance(data.get("scheme"), str) or not data["scheme"].strip():
        return None
    for section in ("params", "public"):
        if not isinstance(data.get(section, {}), dict):
            return None
    if "secret" in data and not isinstance(data["secret"], dict):
        return None
    return data


def make_envelope(
    kind: str,
    scheme: str,
    *,
    field: FieldSpec | None = None,
    params: dict[str, Any] | None = None,
    public: dict[str, Any] | None = None,
    secret: dict[str, Any] | None = None,
) -> dict[str, Any]:
    env: dict[str, Any] = {"kind": kind, "scheme": scheme}
    if field is not None:
        env["field"] = spec_to_json(field)
    env["params"] = params or {}
    env["public"] = public or {}
    if secret is not None:
        env["secret"] = secret
    return env


def write_envelope(path: str | Path, envelope: dict[str, Any]) -> None:
    if _validate_envelope(envelope) is None:
        raise FormatError("refusing to write a malformed envelope")
    Path(path).write_text(json.dumps(envelope, indent=2, ensure_ascii=False), encoding="utf-8")


def read_envelope(path: str | Path, kind: str | None = None) -> dict[str, Any]:
    path = Path(path)
    if not path.exists():
        raise FormatError(f"file not found: {path}")
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path} is not valid JSON: {exc}") from exc
    env = _validate_envelope(data)
    if env is None:
        raise FormatError(f"{path} is not a codecrypt-lab file")
    if kind is not None and env["kind"] != kind:
        raise FormatError(f"{path} holds a {env['kind']}, expected a {kind}")
    return env


def envelope_field(env: dict[str, Any]) -> FieldSpec:
    if "field" not in env:
        raise FormatError("envelope has no field description")
    return spec_from_json(env["field"])

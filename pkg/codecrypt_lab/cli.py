"""
codecrypt: command-line front end for codecrypt-lab.

Every subcommand is deterministic under --seed. Results go to stdout
(rich tables, or JSON with --json); logs and errors go to stderr, errors
as one JSON object with a non-zero exit code:

    0 ok · 1 other error · 2 usage · 3 verification failed
    4 decoding failure · 5 budget exceeded · 130 interrupted
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from pathlib import Path
from typing import Any, Callable

import numpy as np
from rich.console import Console
from rich.panel import Panel
from rich.table import Table

from codecrypt_lab import __version__
from codecrypt_lab.algebra import FieldArray, FieldSpec, Permutation, rng_from
from codecrypt_lab.config import LabConfig
from codecrypt_lab.errors import FormatError, LabError, ParameterError, VerifyFailed
from codecrypt_lab.logs import setup_logging
from codecrypt_lab.storage import (
    array_from_json,
    envelope_field,
    ints,
    make_envelope,
    read_envelope,
    read_matrix,
    write_envelope,
)

console = Console()
err_console = Console(stderr=True)

KEY_SCHEMES = ("mceliece", "niederreiter", "alekhnovich1", "qc", "gpt", "bike", "cmce-toy", "cve", "ags", "cfs")
SIGN_SCHEMES = ("cve-fs", "ags-fs", "cfs")
ATTACKS = ("brute", "prange", "leebrickell", "stern", "bjmm", "wagner")


# ---------------------------------------------------------------------------
# Small parsers
# ---------------------------------------------------------------------------

def _parse_params(text: str | None) -> dict[str, Any]:
    """``"family=goppa,m=4,n=16"`` → {"family": "goppa", "m": 4, "n": 16}."""
    out: dict[str, Any] = {}
    if not text:
        return out
    for item in text.split(","):
        if not item.strip():
            continue
        if "=" not in item:
            raise ParameterError(f"parameter {item!r} is not of the form key=value")
        key, value = (s.strip() for s in item.split("=", 1))
        try:
            out[key] = int(value, 0)
        except ValueError:
            out[key] = value
    return out


def _parse_vector(text: str, gf: type[FieldArray]) -> FieldArray:
    """Digit string (fields of order ≤ 10) or comma/space-separated integers."""
    text = text.strip()
    if re.fullmatch(r"[0-9]+", text) and int(gf.order) <= 10:
        values = [int(ch) for ch in text]
    else:
        try:
            values = [int(tok, 0) for tok in re.split(r"[,\s]+", text) if tok]
        except ValueError as exc:
            raise FormatError(f"cannot read a vector from {text!r}") from exc
    return array_from_json(gf, values)


def _message_bytes(args: argparse.Namespace) -> bytes:
    if args.message is not None:
        return args.message.encode("utf-8")
    if args.infile is not None:
        path = Path(args.infile)
        if not path.exists():
            raise FormatError(f"file not found: {path}")
        return path.read_bytes()
    raise ParameterError("give the message with --message or --in")


def _message_vector(args: argparse.Namespace, gf: type[FieldArray]) -> FieldArray:
    return _parse_vector(_message_bytes(args).decode("utf-8"), gf)


# ---------------------------------------------------------------------------
# Output
# ---------------------------------------------------------------------------

def _emit(args: argparse.Namespace, payload: dict[str, Any], render: Callable[[], None] | None = None) -> None:
    payload = {"seed": args.seed, **payload}
    if args.output == "json" or render is None:
        sys.stdout.write(json.dumps(payload, indent=2, ensure_ascii=False, default=str) + "\n")
    else:
        render()


def _kv_table(title: str, rows: dict[str, Any]) -> Table:
    table = Table(title=title, show_header=False, border_style="cyan", title_style="bold cyan")
    table.add_column(style="bold")
    table.add_column()
    for key, value in rows.items():
        table.add_row(str(key), str(value))
    return table


def _write_or_print(args: argparse.Namespace, envelope: dict[str, Any], what: str) -> None:
    if args.out:
        write_envelope(args.out, envelope)
        payload = {"written": str(args.out), "kind": envelope["kind"], "scheme": envelope["scheme"]}
        _emit(args, payload, lambda: console.print(f"  [bold green]✓[/bold green] {what} written to {args.out}"))
    else:
        _emit(args, envelope)


# ---------------------------------------------------------------------------
# Keys
# ---------------------------------------------------------------------------

def _family(params: dict[str, Any], rng: np.random.Generator):
    from codecrypt_lab import families

    kind = params.get("family", "hamming")
    if kind == "hamming":
        return families.hamming_family(int(params.get("r", 3)))
    if kind == "goppa":
        spec = FieldSpec(2, int(params.get("m", 4)))
        goppa = families.random_goppa_params(spec, int(params.get("n", 16)), int(params.get("t", 2)), rng)
        return families.goppa_family(goppa)
    if kind == "grs":
        spec = FieldSpec(int(params.get("q", 13)))
        grs = families.random_grs_params(spec, int(params.get("n", 12)), int(params.get("k", 4)), rng)
        return families.grs_family(grs)
    raise ParameterError(f"unknown code family {kind!r} (hamming, goppa, grs)")


def _keygen_envelope(scheme: str, params: dict[str, Any], seed: int) -> dict[str, Any]:
    from codecrypt_lab import families, pke, sig

    rng = rng_from(seed)
    if scheme in ("mceliece", "niederreiter", "cfs"):
        family = _family(params, rng)
        key = pke.mceliece_keygen(family, rng) if scheme == "mceliece" else pke.niederreiter_keygen(family, rng)
        spec = FieldSpec.of(family.code.gf)
        return make_envelope("key", scheme, field=spec, params=params, public=key.public_json(), secret=key.secret_json())
    if scheme == "alekhnovich1":
        key = pke.alekhnovich1_keygen(int(params.get("n", 64)), int(params.get("rows", 32)), int(params.get("t", 3)), rng)
        return make_envelope("key", scheme, field=FieldSpec(2), params=params, public=key.public_json(), secret=key.secret_json())
    if scheme == "qc":
        family = families.repetition_family(int(params.get("n", 31)))
        key = pke.qc_keygen(family, int(params.get("w", 2)), int(params.get("w_e", 2)), int(params.get("w_r", 2)), rng)
        return make_envelope("key", scheme, field=FieldSpec(2), params=params, public=key.public_json(), secret=key.secret_json())
    if scheme == "gpt":
        spec = FieldSpec(2, int(params.get("m", 5)))
        gab = families.random_gabidulin_params(spec, int(params.get("n", 4)), int(params.get("k", 2)), rng)
        key = pke.gpt_keygen(gab, int(params.get("lam", 1)), rng)
        return make_envelope("key", scheme, field=spec, params=params, public=key.public_json(), secret=key.secret_json())
    if scheme == "bike":
        mdpc = families.MdpcParams(int(params.get("r", 13)), int(params.get("w", 6)))
        key = pke.bike_keygen(mdpc, int(params.get("t", 2)), rng)
        return make_envelope("key", scheme, field=FieldSpec(2), params=params, public=key.public_json(), secret=key.secret_json())
    if scheme == "cmce-toy":
        cmce = pke.CmceParams(int(params.get("m", 5)), int(params.get("n", 32)), int(params.get("t", 2)))
        key = pke.classic_mceliece_toy(cmce, rng)
        return make_envelope("key", scheme, field=FieldSpec(2), params=params, public=key.public_json(), secret=key.secret_json())
    if scheme == "cve":
        spec = FieldSpec(int(params.get("q", 5)))
        key = sig.cve_keygen(spec, int(params.get("n", 24)), int(params.get("k", 12)), int(params.get("t", 4)), rng)
        return make_envelope("key", scheme, field=spec, params=params, public=key.public.to_json(), secret={"e": ints(key.e)})
    if scheme == "ags":
        key = sig.ags_keygen(int(params.get("k", 16)), int(params.get("t", 4)), rng)
        return make_envelope(
            "key", scheme, field=FieldSpec(2), params=params,
            public=key.public.to_json(), secret={"m": ints(key.m), "e": ints(key.e)},
        )
    raise ParameterError(f"unknown scheme {scheme!r}")


def _secret(env: dict[str, Any]) -> dict[str, Any]:
    if "secret" not in env:
        raise FormatError(f"{env['scheme']} key file has no secret part")
    return env["secret"]


def _load_private(env: dict[str, Any]):
    """Rebuild the secret key object of a key envelope."""
    from codecrypt_lab import families, pke, sig

    scheme, pub = env["scheme"], env["public"]
    gf = envelope_field(env).gf
    sec = _secret(env)
    try:
        if scheme == "mceliece":
            family = families.family_from_params(sec["code"])
            return pke.mceliece_keypair(family, gf(sec["S"]), Permutation(tuple(sec["P"])))
        if scheme in ("niederreiter", "cfs", "cmce-toy"):
            family = families.family_from_params(sec["code"])
            return pke.niederreiter_keypair(family, gf(sec["S"]), Permutation(tuple(sec["P"])))
        if scheme == "alekhnovich1":
            return pke.AlekhnovichKeyPair(gf(pub["G"]), int(pub["t"]), gf(sec["e"]))
        if scheme == "qc":
            family = families.family_from_params(pub["code"])
            return pke.qc_keypair(family, gf(pub["h"]), gf(sec["y"]), gf(sec["z"]), int(pub["w_e"]), int(pub["w_r"]))
        if scheme == "gpt":
            family = families.family_from_params(sec["code"])
            return pke.gpt_keypair(family, gf(sec["S"]), gf(sec["X"]), gf(sec["P"]))
        if scheme == "bike":
            mdpc = families.MdpcParams(int(pub["r"]), int(pub["w"]))
            return pke.BikeKeyPair(mdpc, gf(pub["h"]), int(pub["t"]), gf(sec["h0"]), gf(sec["h1"]))
        if scheme == "cve":
            return sig.CveKeys(gf(pub["H"]), gf(pub["s"]), int(pub["t"]), gf(sec["e"]))
        if scheme == "ags":
            return sig.AgsKeys(gf(pub["G"]), gf(pub["c"]), int(pub["t"]), gf(sec["m"]), gf(sec["e"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"malformed {scheme} key: {exc}") from exc
    raise FormatError(f"unknown key scheme {scheme!r}")


def _load_public(env: dict[str, Any]):
    from codecrypt_lab import sig

    scheme, pub = env["scheme"], env["public"]
    gf = envelope_field(env).gf
    try:
        if scheme == "cve":
            return sig.CvePublic(gf(pub["H"]), gf(pub["s"]), int(pub["t"]))
        if scheme == "ags":
            return sig.AgsPublic(gf(pub["G"]), gf(pub["c"]), int(pub["t"]))
        if scheme == "cfs":
            return gf(pub["H"]), int(pub["t"])
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"malformed {scheme} public key: {exc}") from exc
    raise FormatError(f"{scheme} keys cannot verify signatures")


def cmd_keygen(args: argparse.Namespace, config: LabConfig) -> None:
    params = _parse_params(args.params)
    envelope = _keygen_envelope(args.scheme, params, args.seed)
    _write_or_print(args, envelope, f"{args.scheme} key")


# ---------------------------------------------------------------------------
# Encryption
# ---------------------------------------------------------------------------

def _qc_public(pub: dict[str, Any], gf: type[FieldArray]):
    """A QC key holding only the public half; encryption never reads y or z."""
    from codecrypt_lab import families, pke
    from codecrypt_lab.algebra import CyclicRing

    try:
        family = families.family_from_params(pub["code"])
        ring = CyclicRing(family.code.n, FieldSpec.of(gf))
        zero = ring.gf.Zeros(ring.n)
        return pke.QcKeyPair(
            family, ring, gf(pub["h"]), gf(pub["s"]), int(pub["w"]), int(pub["w_e"]), int(pub["w_r"]), zero, zero
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"malformed qc public key: {exc}") from exc


def cmd_encrypt(args: argparse.Namespace, config: LabConfig) -> None:
    from codecrypt_lab import families, pke

    env = read_envelope(args.key, "key")
    scheme, pub = env["scheme"], env["public"]
    gf = envelope_field(env).gf
    rng = rng_from(args.seed)
    out: dict[str, Any]
    if scheme == "mceliece":
        G = gf(pub["G"])
        out = {"c": ints(pke.mceliece_encrypt(G, int(pub["t"]), _message_vector(args, gf), seed=rng))}
    elif scheme in ("niederreiter", "cfs"):
        out = {"c": ints(pke.niederreiter_encrypt(gf(pub["H"]), int(pub["t"]), _message_vector(args, gf)))}
    elif scheme == "alekhnovich1":
        G, t = gf(pub["G"]), int(pub["t"])
        bits = [int(b) for b in np.asarray(_message_vector(args, gf))]
        out = {"c": [ints(pke.alekhnovich1_encrypt_bit(G, t, b, rng)) for b in bits]}
    elif scheme == "qc":
        c = pke.qc_encrypt(_qc_public(pub, gf), _message_vector(args, gf), rng)
        out = {"u": ints(c.u), "v": ints(c.v)}
    elif scheme == "gpt":
        G, t = gf(pub["G"]), int(pub["t"])
        e = families.random_rank_error(gf, G.shape[1], t, rng)
        out = {"c": ints(pke.gpt_encrypt(G, t, _message_vector(args, gf), e))}
    elif scheme == "bike":
        c, shared = pke.bike_encapsulate(gf(pub["h"]), int(pub["t"]), rng)
        out = {"c": ints(c), "shared_key": shared.hex()}
    elif scheme == "cmce-toy":
        c, shared = pke.cmce_encapsulate(gf(pub["H"]), int(pub["t"]), rng)
        out = {"c": ints(c), "shared_key": shared.hex()}
    else:
        raise ParameterError(f"{scheme} keys do not encrypt")
    envelope = make_envelope("ciphertext", scheme, field=envelope_field(env), public=out)
    _write_or_print(args, envelope, "ciphertext")


def cmd_decrypt(args: argparse.Namespace, config: LabConfig) -> None:
    from codecrypt_lab import pke

    env = read_envelope(args.key, "key")
    ct = read_envelope(args.infile, "ciphertext")
    scheme = env["scheme"]
    if ct["scheme"] != scheme:
        raise FormatError(f"ciphertext is for {ct['scheme']}, key is for {scheme}")
    gf = envelope_field(env).gf
    key = _load_private(env)
    body = ct["public"]
    result: dict[str, Any]
    if scheme == "mceliece":
        result = {"m": ints(pke.mceliece_decrypt(key, gf(body["c"])))}
    elif scheme in ("niederreiter", "cfs"):
        result = {"m": ints(pke.niederreiter_decrypt(key, gf(body["c"])))}
    elif scheme == "alekhnovich1":
        result = {"m": [pke.alekhnovich1_decrypt_bit(key, gf(c)) for c in body["c"]]}
    elif scheme == "qc":
        result = {"m": ints(pke.qc_decrypt(key, pke.QcCiphertext(gf(body["u"]), gf(body["v"]))))}
    elif scheme == "gpt":
        result = {"m": ints(pke.gpt_decrypt(key, gf(body["c"])))}
    elif scheme == "bike":
        result = {"shared_key": pke.bike_decapsulate(key, gf(body["c"])).hex()}
    elif scheme == "cmce-toy":
        result = {"shared_key": pke.cmce_decapsulate(key, gf(body["c"])).hex()}
    else:
        raise ParameterError(f"{scheme} keys do not decrypt")
    _emit(args, {"scheme": scheme, **result}, lambda: console.print(_kv_table(f"{scheme} decryption", result)))


# ---------------------------------------------------------------------------
# Signatures
# ---------------------------------------------------------------------------

def cmd_sign(args: argparse.Namespace, config: LabConfig) -> None:
    from codecrypt_lab import sig

    env = read_envelope(args.key, "key")
    message = _message_bytes(args)
    field = envelope_field(env)
    if args.scheme == "cfs":
        if env["scheme"] != "cfs":
            raise FormatError("cfs signing needs a cfs key")
        signature = sig.cfs_sign(_load_private(env), message, retry_limit=config.cfs_retry_limit)
        body = signature.to_json()
    else:
        expected = args.scheme.removesuffix("-fs")
        if env["scheme"] != expected:
            raise FormatError(f"{args.scheme} needs a {expected} key")
        body = sig.fiat_shamir_sign(_load_private(env), message, args.rounds, args.seed).to_json()
    envelope = make_envelope("signature", args.scheme, field=field, public=body)
    _write_or_print(args, envelope, "signature")


def cmd_verify(args: argparse.Namespace, config: LabConfig) -> None:
    from codecrypt_lab import sig

    env = read_envelope(args.key, "key")
    sig_env = read_envelope(args.sig, "signature")
    message = _message_bytes(args)
    gf = envelope_field(env).gf
    body = sig_env["public"]
    try:
        if sig_env["scheme"] == "cfs":
            H_pub, t = _load_public(env)
            signature = sig.CfsSignature(int(body["counter"]), gf(body["e"]), int(body.get("attempts", 0)))
            ok = sig.cfs_verify(H_pub, t, message, signature)
        else:
            ok = sig.fiat_shamir_verify(_load_public(env), message, sig.fs_signature_from_json(body, gf))
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"malformed signature: {exc}") from exc
    if not ok:
        raise VerifyFailed("signature rejected")
    _emit(args, {"scheme": sig_env["scheme"], "valid": True}, lambda: console.print("  [bold green]✓[/bold green] signature valid"))


# ---------------------------------------------------------------------------
# Attacks
# ---------------------------------------------------------------------------

def _instance_envelope(inst, params: dict[str, Any], secret: dict[str, Any] | None = None) -> dict[str, Any]:
    return make_envelope(
        "instance",
        "sdp",
        field=FieldSpec.of(inst.gf),
        params={"n": inst.n, "k": inst.k, "t": inst.t, **params},
        public={"H": ints(inst.H), "s": ints(inst.s), "t": inst.t},
        secret=secret,
    )


def _load_instance(path: str):
    from codecrypt_lab.isd import SdpInstance

    env = read_envelope(path, "instance")
    if env["scheme"] != "sdp":
        raise FormatError(f"{path} holds a {env['scheme']} instance, expected sdp")
    gf = envelope_field(env).gf
    pub = env["public"]
    try:
        return SdpInstance(array_from_json(gf, pub["H"]), array_from_json(gf, pub["s"]), int(pub["t"]))
    except KeyError as exc:
        raise FormatError(f"instance lacks {exc}") from exc


def cmd_instance(args: argparse.Namespace, config: LabConfig) -> None:
    from codecrypt_lab.isd import random_instance

    inst, e = random_instance(FieldSpec(args.q), args.n, args.k, args.t, args.seed)
    envelope = _instance_envelope(inst, {"seed": args.seed}, secret={"e": ints(e)})
    _write_or_print(args, envelope, "instance")


def cmd_attack(args: argparse.Namespace, config: LabConfig) -> None:
    from codecrypt_lab import isd

    inst = _load_instance(args.instance)
    budget = args.budget or config.enumeration_budget
    max_iters = args.max_iters or config.iteration_budget
    alg = args.alg
    if alg == "brute":
        solution = isd.brute_force_sdp(inst, budget=budget)
    elif alg == "prange":
        solution = isd.prange(inst, args.seed, max_iters, time_budget=config.time_budget_s)
    elif alg == "leebrickell":
        solution = isd.lee_brickell(inst, args.v, args.seed, max_iters, time_budget=config.time_budget_s)
    elif alg == "stern":
        solution = isd.stern(inst, isd.SternParams(args.ell, args.v), args.seed, max_iters, time_budget=config.time_budget_s)
    elif alg == "bjmm":
        params = isd.BjmmParams(args.ell, args.v, args.eps1, args.eps2)
        solution = isd.bjmm(inst, params, args.seed, max_iters, time_budget=config.time_budget_s)
    else:
        solution = isd.wagner(inst, args.a, args.ell, args.v, seed=args.seed, max_iters=args.max_iters or 1)
    payload = solution.to_json()

    def render() -> None:
        rows = {
            "algorithm": solution.algorithm,
            "e": "(" + ",".join(str(v) for v in payload["e"]) + ")",
            "weight": solution.weight,
            "iterations": solution.iterations,
            "information sets drawn": solution.draws,
            "time": f"{solution.elapsed:.3f} s",
        }
        console.print(_kv_table(f"SDP [n={inst.n}, k={inst.k}, t={inst.t}] over GF({inst.q})", rows))

    _emit(args, payload, render)


# ---------------------------------------------------------------------------
# Estimates
# ---------------------------------------------------------------------------

def cmd_estimate(args: argparse.Namespace, config: LabConfig) -> None:
    from codecrypt_lab import estimate, sig

    what = args.what
    if what == "cost":
        if args.alg == "prange":
            report = estimate.prange_cost(args.n, args.k, args.t, args.q)
        elif args.alg == "leebrickell":
            report = estimate.lee_brickell_cost(args.n, args.k, args.t, args.q, args.v or 1)
        elif args.alg == "stern":
            if args.ell is None or args.v is None:
                report = estimate.stern_cost_opt(args.n, args.k, args.t, args.q)
            else:
                report = estimate.stern_cost(args.n, args.k, args.t, args.q, args.ell, args.v)
        else:
            report = estimate.bjmm_cost(args.n, args.k, args.t, args.ell or 0, args.v or 2, args.eps1, args.eps2)
        payload = report.to_json()
        title = f"{report.algorithm} on [n={args.n}, k={args.k}, t={args.t}], q={args.q}"
    elif what == "asymptotic":
        point = estimate.asymptotic_exponent(args.alg, args.q, args.regime)
        payload = point.to_json()
        title = f"worst-case exponent of {args.alg}"
    elif what == "nist":
        payload = {"scheme": args.scheme, "level": args.level, **estimate.nist_sizes(args.scheme, args.level)}
        title = f"{args.scheme} level {args.level} sizes (bytes)"
    elif what == "gv":
        payload = {
            "n": args.n, "k": args.k, "q": args.q,
            "gv_distance": estimate.gv_distance(args.n, args.k, args.q),
            "gv_radius": estimate.gv_radius(args.n, args.k, args.q),
        }
        title = "Gilbert–Varshamov"
    elif what == "rank":
        report = estimate.rank_isd_cost(args.variant, args.q, args.m, args.n, args.k, args.t)
        payload = report.to_json()
        title = f"rank ISD ({args.variant})"
    else:
        mode = "max" if args.max else "average"
        bits = sig.comm_cost(args.scheme, args.n, args.k, args.q, args.t, args.rounds, args.hash_bits, args.seed_bits, mode)
        payload = {"scheme": args.scheme, "mode": mode, "bits": float(bits), "bytes": float(bits) / 8}
        title = f"{args.scheme} communication cost ({mode})"
    _emit(args, payload, lambda: console.print(_kv_table(title, payload)))


# ---------------------------------------------------------------------------
# Distinguishers
# ---------------------------------------------------------------------------

def _random_generator(kind: str, args: argparse.Namespace) -> FieldArray:
    from codecrypt_lab import families
    from codecrypt_lab.algebra import random_full_rank

    rng = rng_from(args.seed)
    spec = FieldSpec(args.p, args.m)
    if kind == "grs":
        return families.grs_generator(families.random_grs_params(spec, args.n, args.k, rng))
    if kind == "gabidulin":
        return families.gabidulin_code(families.random_gabidulin_params(spec, args.n, args.k, rng)).generator
    return random_full_rank(spec.gf, (args.k, args.n), rng)


def cmd_distinguish(args: argparse.Namespace, config: LabConfig) -> None:
    from codecrypt_lab import distinguish

    if args.matrix:
        G = read_matrix(args.matrix)
    elif args.random:
        G = _random_generator(args.random, args)
    else:
        raise ParameterError("give --matrix or --random")
    if args.test == "square":
        verdict = distinguish.square_distinguisher(G)
    else:
        verdict = distinguish.frobenius_distinguisher(G, args.ell)
    payload = verdict.to_json()
    _emit(args, payload, lambda: console.print(_kv_table(f"{args.test} distinguisher", payload)))


# ---------------------------------------------------------------------------
# Reductions
# ---------------------------------------------------------------------------

def cmd_reduce(args: argparse.Namespace, config: LabConfig) -> None:
    from codecrypt_lab import reductions

    path = Path(args.infile)
    if not path.exists():
        raise FormatError(f"file not found: {path}")
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path} is not valid JSON: {exc}") from exc
    if isinstance(data, dict) and data.get("kind") == "tdm":
        data = data.get("public", {})
    inst = reductions.TdmInstance.from_json(data)
    spec = FieldSpec(args.q)
    if args.to == "sdp":
        envelope = _instance_envelope(reductions.tdm_to_sdp(inst, spec), {"source": "3dm", "tdm": inst.to_json()})
    else:
        H, w = reductions.tdm_to_gwcp(inst, spec)
        envelope = make_envelope(
            "instance", "gwcp", field=spec,
            params={"source": "3dm", "tdm": inst.to_json()}, public={"H": ints(H), "w": w},
        )
    _write_or_print(args, envelope, f"{args.to} instance")


# ---------------------------------------------------------------------------
# Demos
# ---------------------------------------------------------------------------

def _render_demo(result) -> None:
    table = Table(title=result.title, border_style="cyan" if result.ok else "red", title_style="bold")
    table.add_column("value", style="bold")
    table.add_column("expected")
    table.add_column("computed")
    table.add_column("", justify="center")
    for check in result.checks:
        mark = "[green]✓[/green]" if check.ok else "[red]✗[/red]"
        table.add_row(check.name, _show(check.expected), _show(check.computed), mark)
    console.print(table)


def _show(value: Any) -> str:
    if isinstance(value, tuple) and value and all(isinstance(v, str) for v in value):
        return "\n".join(value)
    if isinstance(value, tuple):
        return "(" + ",".join(_show(v) for v in value) + ")"
    if isinstance(value, str) and value.isdigit():
        return "(" + ",".join(value) + ")"
    return str(value)


def cmd_demo(args: argparse.Namespace, config: LabConfig) -> None:
    from codecrypt_lab.demos import DEMOS, run_demo

    if args.list:
        _emit(args, {"examples": list(DEMOS)}, lambda: console.print("\n".join(f"  {k}" for k in DEMOS)))
        return
    keys = [args.example] if args.example else list(DEMOS)
    results = [run_demo(k) for k in keys]
    payload = {"ok": all(r.ok for r in results), "demos": [r.to_json() for r in results]}

    def render() -> None:
        for r in results:
            _render_demo(r)

    _emit(args, payload, render)
    if not payload["ok"]:
        failed = [r.key for r in results if not r.ok]
        raise VerifyFailed(f"demo mismatch in {', '.join(failed)}")


# ---------------------------------------------------------------------------
# Config
# ---------------------------------------------------------------------------

def cmd_config(args: argparse.Namespace, config: LabConfig) -> None:
    from dataclasses import asdict

    if args.action == "set":
        try:
            value = config.coerce(args.key, args.value)
        except KeyError:
            raise ParameterError(f"unknown setting {args.key!r}") from None
        except ValueError as exc:
            raise ParameterError(f"bad value for {args.key}: {exc}") from exc
        config.update(**{args.key: value})
    data = asdict(config)
    _emit(args, {"config": data}, lambda: console.print(Panel(_kv_table("settings", data), border_style="cyan", expand=False)))


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="codecrypt", description="Code-based cryptography lab")
    parser.add_argument("--version", action="version", version=f"codecrypt-lab {__version__}")
    parser.add_argument("--seed", type=lambda s: int(s, 0), default=None, help="PRNG seed (default from config)")
    parser.add_argument("--budget", type=int, default=None, help="enumeration budget for brute-force oracles")
    out = parser.add_mutually_exclusive_group()
    out.add_argument("--json", dest="output", action="store_const", const="json", help="machine-readable output")
    out.add_argument("--human", dest="output", action="store_const", const="human", help="rich tables")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    parser.add_argument("-q", "--quiet", action="store_true", help="warnings only")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("keygen", help="generate a key pair")
    p.add_argument("--scheme", choices=KEY_SCHEMES, required=True)
    p.add_argument("--params", help="comma-separated key=value pairs, e.g. family=goppa,m=4,n=16,t=2")
    p.add_argument("--out", help="key file to write")
    p.set_defaults(func=cmd_keygen)

    for name, func, helptext in (("encrypt", cmd_encrypt, "encrypt or encapsulate"), ("decrypt", cmd_decrypt, "decrypt or decapsulate")):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("--key", required=True)
        p.add_argument("--in", dest="infile", help="message (encrypt) or ciphertext file (decrypt)")
        p.add_argument("--message", help="message given inline (encrypt)")
        p.add_argument("--out")
        p.set_defaults(func=func)

    p = sub.add_parser("sign", help="sign a message")
    p.add_argument("--scheme", choices=SIGN_SCHEMES, required=True)
    p.add_argument("--key", required=True)
    p.add_argument("--in", dest="infile")
    p.add_argument("--message")
    p.add_argument("--rounds", type=int, default=32, help="Fiat–Shamir rounds")
    p.add_argument("--out")
    p.set_defaults(func=cmd_sign)

    p = sub.add_parser("verify", help="verify a signature (exit 3 if rejected)")
    p.add_argument("--key", required=True)
    p.add_argument("--sig", required=True)
    p.add_argument("--in", dest="infile")
    p.add_argument("--message")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("instance", help="random SDP instance with a planted solution")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--q", type=int, default=2)
    p.add_argument("--out")
    p.set_defaults(func=cmd_instance)

    p = sub.add_parser("attack", help="solve an SDP instance")
    p.add_argument("--alg", choices=ATTACKS, required=True)
    p.add_argument("--instance", required=True)
    p.add_argument("--v", type=int, default=1)
    p.add_argument("--ell", type=int, default=0)
    p.add_argument("--eps1", type=int, default=0)
    p.add_argument("--eps2", type=int, default=0)
    p.add_argument("--a", type=int, default=1, help="wagner merge levels")
    p.add_argument("--max-iters", type=int, default=None)
    p.set_defaults(func=cmd_attack)

    p = sub.add_parser("estimate", help="attack costs, exponents, sizes")
    est = p.add_subparsers(dest="what", required=True)
    e = est.add_parser("cost")
    e.add_argument("--alg", choices=("prange", "leebrickell", "stern", "bjmm"), required=True)
    for arg in ("--n", "--k", "--t"):
        e.add_argument(arg, type=int, required=True)
    e.add_argument("--q", type=int, default=2)
    e.add_argument("--v", type=int, default=None)
    e.add_argument("--ell", type=int, default=None)
    e.add_argument("--eps1", type=int, default=0)
    e.add_argument("--eps2", type=int, default=0)
    e = est.add_parser("asymptotic")
    e.add_argument("--alg", choices=("prange", "stern", "bjmm"), required=True)
    e.add_argument("--q", type=int, default=2)
    e.add_argument("--regime", choices=("full", "half"), default="full")
    e = est.add_parser("nist")
    e.add_argument("--scheme", choices=("classic-mceliece", "bike", "hqc"), required=True)
    e.add_argument("--level", required=True)
    e = est.add_parser("gv")
    for arg in ("--n", "--k", "--q"):
        e.add_argument(arg, type=int, required=True)
    e = est.add_parser("rank")
    e.add_argument("--variant", choices=("basis_enum", "matrix_enum", "algebraic"), required=True)
    for arg in ("--q", "--m", "--n", "--k", "--t"):
        e.add_argument(arg, type=int, required=True)
    e = est.add_parser("comm")
    e.add_argument("--scheme", choices=("cve", "ags"), required=True)
    for arg in ("--n", "--k", "--q", "--t", "--rounds"):
        e.add_argument(arg, type=int, required=True)
    e.add_argument("--hash-bits", type=int, default=256)
    e.add_argument("--seed-bits", type=int, default=128)
    e.add_argument("--max", action="store_true", help="worst case instead of average")
    p.set_defaults(func=cmd_estimate)

    p = sub.add_parser("distinguish", help="square-code or Frobenius distinguisher")
    p.add_argument("--test", choices=("square", "frobenius"), required=True)
    p.add_argument("--matrix", help="generator matrix file")
    p.add_argument("--random", choices=("grs", "gabidulin", "random"), help="draw a generator instead")
    p.add_argument("--p", type=int, default=2)
    p.add_argument("--m", type=int, default=4)
    p.add_argument("--n", type=int, default=12)
    p.add_argument("--k", type=int, default=4)
    p.add_argument("--ell", type=int, default=2)
    p.set_defaults(func=cmd_distinguish)

    p = sub.add_parser("reduce", help="reduce a 3DM instance to SDP or GWCP")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--to", choices=("sdp", "gwcp"), default="sdp")
    p.add_argument("--q", type=int, default=2)
    p.add_argument("--out")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("demo", help="replay the worked examples")
    p.add_argument("--example", choices=("hamming-mceliece", "niederreiter", "prange-f5", "qc", "gpt", "alekhnovich", "3dm"))
    p.add_argument("--list", action="store_true")
    p.set_defaults(func=cmd_demo)

    p = sub.add_parser("config", help="show or change settings")
    p.add_argument("action", choices=("show", "set"), nargs="?", default="show")
    p.add_argument("key", nargs="?")
    p.add_argument("value", nargs="?")
    p.set_defaults(func=cmd_config)
    return parser


# ---------------------------------------------------------------------------
# Entry point
# ---------------------------------------------------------------------------

def _fail(exc: LabError) -> int:
    err_console.file.write(json.dumps({"error": exc.kind, "message": str(exc)}) + "\n")
    return exc.exit_code


def main(argv: list[str] | None = None) -> None:
    """Parse arguments, run one subcommand and exit with its status."""
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = LabConfig.load()
        if args.seed is None:
            args.seed = config.seed
        if args.output is None:
            args.output = config.output
        level = "DEBUG" if args.verbose else "WARNING" if args.quiet else config.log_level
        setup_logging(level, console=err_console)
        if args.command == "config" and args.action == "set" and (args.key is None or args.value is None):
            parser.error("config set needs KEY and VALUE")
        args.func(args, config)
    except LabError as exc:
        sys.exit(_fail(exc))
    except KeyboardInterrupt:
        sys.exit(130)


if __name__ == "__main__":
    main()

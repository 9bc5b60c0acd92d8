"""Command-line front end: read a job JSON, run the requested computation,
emit one deterministic JSON object on stdout.

Exit codes: 0 ok, 1 verification failed (a net count != 1: treated as a bug
trap, not an input problem), 2 input error, 3 precision/truncation cap.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from .domain import build_signed_domain, is_true_domain, verify_net_counts
from .errors import (
    InputError,
    PrecisionError,
    SchemaError,
    ShintaniError,
)
from .field import NumberField, field_from_json
from .ideals import FractionalIdeal, integral_basis
from .zeta import (
    CharacterTable,
    ZetaParams,
    euler_product_oracle,
    l_function,
    partial_zeta,
)

SCHEMA = "v1"


def _load_job(path: str) -> dict:
    try:
        with open(path) as fh:
            job = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise SchemaError(f"cannot read job file: {exc}")
    if not isinstance(job, dict):
        raise SchemaError("job must be a JSON object")
    if job.get("schema", SCHEMA) != SCHEMA:
        raise SchemaError(f"unsupported schema {job.get('schema')!r}")
    return job


def _field_and_units(job: dict, prec_cap: int | None):
    spec = job.get("field")
    if not isinstance(spec, dict) or "poly" not in spec:
        raise SchemaError('job needs "field": {"poly": [...], "units": [...]}')
    fld, units = field_from_json(spec)
    if prec_cap:
        fld = NumberField(fld.poly, prec_cap=prec_cap)
        units = [fld.element(u.coeffs) for u in units]
    return fld, units


def _emit(obj: dict) -> None:
    obj = dict(obj)
    obj["schema"] = SCHEMA
    sys.stdout.write(json.dumps(obj, sort_keys=True) + "\n")


def cmd_cones(job, args):
    fld, units = _field_and_units(job, args.precision_cap)
    dom = build_signed_domain(units, fld)
    cones = sorted((c.to_json() for c in dom.cones), key=lambda c: c["sigma"])
    _emit({"cones": cones, "is_true_domain": is_true_domain(dom)})
    return 0


def _verify_chunk(payload):
    """Worker: rebuilds the domain and verifies one index range (results are
    deterministic per index, so assembly order does not matter)."""
    poly, unit_coords, cap, seed, start, stop = payload
    from fractions import Fraction

    fld = NumberField(poly, prec_cap=cap)
    units = [fld.element([Fraction(c) for c in u]) for u in unit_coords]
    dom = build_signed_domain(units, fld)
    rep = verify_net_counts(dom, stop - start, seed, start=start)
    return rep["failures"], rep["resamples"]


def cmd_verify(job, args):
    fld, units = _field_and_units(job, args.precision_cap)
    seed = args.seed if args.seed is not None else job.get("seed", 0)
    samples = int(job.get("samples", 1000))
    threads = max(1, args.threads)
    if threads == 1:
        dom = build_signed_domain(units, fld)
        rep = verify_net_counts(dom, samples, seed)
        failures, resamples = rep["failures"], rep["resamples"]
    else:
        from concurrent.futures import ProcessPoolExecutor

        chunk = (samples + threads - 1) // threads
        payloads = []
        for t in range(threads):
            start, stop = t * chunk, min((t + 1) * chunk, samples)
            if start < stop:
                payloads.append((list(fld.poly),
                                 [[str(c) for c in u.coeffs] for u in units],
                                 fld.prec_cap, seed, start, stop))
        failures, resamples = [], 0
        with ProcessPoolExecutor(max_workers=threads) as ex:
            for fl, rs in ex.map(_verify_chunk, payloads):
                failures.extend(fl)
                resamples += rs
        failures.sort(key=lambda f: f["index"])
    ok = not failures
    _emit({"net_count_ok": ok, "samples": samples, "seed": seed,
           "resamples": resamples, "failures": failures})
    return 0 if ok else 1


def _zeta_params(job, args):
    return ZetaParams(target_error=float(job.get("target_error", 1e-6)),
                      threads=max(1, args.threads))


def cmd_zeta(job, args):
    fld, units = _field_and_units(job, args.precision_cap)
    order = integral_basis(fld)
    s = float(job.get("s", 2.0))
    if s <= 1:
        raise SchemaError("zeta needs s > 1")
    ideals = job.get("ideals", [])
    a_ideal = (FractionalIdeal.from_json(order, ideals[0]) if len(ideals) > 0
               else FractionalIdeal.whole_ring(order))
    conductor = (FractionalIdeal.from_json(order, ideals[1]) if len(ideals) > 1
                 else FractionalIdeal.whole_ring(order))
    t0 = time.monotonic()
    out = partial_zeta(s, (a_ideal, conductor, units), fld,
                       _zeta_params(job, args), order=order)
    ms = int((time.monotonic() - t0) * 1000)
    _emit({"value": out.value, "error_bound": out.error_bound,
           "terms": out.terms, "M": out.radius, "runtime_ms": ms})
    return 0


def cmd_lfun(job, args):
    fld, units = _field_and_units(job, args.precision_cap)
    order = integral_basis(fld)
    s = float(job.get("s", 2.0))
    if s <= 1:
        raise SchemaError("lfun needs s > 1")
    ideals = job.get("ideals")
    reps = ([FractionalIdeal.from_json(order, obj) for obj in ideals]
            if ideals else [FractionalIdeal.whole_ring(order)])
    conductor = (FractionalIdeal.from_json(order, job["conductor"])
                 if "conductor" in job else FractionalIdeal.whole_ring(order))
    chspec = job.get("character")
    if chspec is None:
        chi = CharacterTable(reps, [1 + 0j] * len(reps), conductor)
    else:
        values = [complex(v[0], v[1]) for v in chspec["values"]]
        chi = CharacterTable(reps, values, conductor,
                             zero_on_noncoprime=chspec.get("zero_on_noncoprime", True))
    t0 = time.monotonic()
    out = l_function(s, chi, units, fld, _zeta_params(job, args), order=order)
    ms = int((time.monotonic() - t0) * 1000)
    _emit({"value": [out.value.real, out.value.imag],
           "error_bound": out.error_bound,
           "terms": out.terms, "M": out.radius, "runtime_ms": ms})
    return 0


def cmd_regcheck(job, args):
    fld, units = _field_and_units(job, args.precision_cap)
    tol = float(job.get("tolerance", 1e-10))
    ok = fld.check_regulator_identity(units, tol=tol)
    _emit({"regulator_identity_ok": ok, "tolerance": tol})
    return 0 if ok else 1


def cmd_oracle(job, args):
    fld, _units = _field_and_units(job, args.precision_cap)
    s = float(job.get("s", 2.0))
    cap = int(job.get("prime_cap", 10 ** 6))
    t0 = time.monotonic()
    out = euler_product_oracle(s, fld, cap)
    ms = int((time.monotonic() - t0) * 1000)
    _emit({"value": out.value, "error_bound": out.error_bound,
           "terms": out.terms, "prime_cap": cap, "runtime_ms": ms})
    return 0


COMMANDS = {
    "cones": cmd_cones,
    "verify": cmd_verify,
    "zeta": cmd_zeta,
    "lfun": cmd_lfun,
    "regcheck": cmd_regcheck,
    "oracle": cmd_oracle,
}


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="shintani",
        description="Signed fundamental domains and Shintani zeta evaluation")
    parser.add_argument("command", choices=sorted(COMMANDS))
    parser.add_argument("--job", required=True, help="job JSON file")
    parser.add_argument("--seed", type=int, default=None,
                        help="overrides the job seed")
    parser.add_argument("--threads", type=int, default=1)
    parser.add_argument("--precision-cap", type=int, default=None,
                        help="adaptive-precision bit cap")
    args = parser.parse_args(argv)
    try:
        job = _load_job(args.job)
        declared = job.get("command")
        if declared is not None and declared != args.command:
            raise SchemaError(
                f"job declares command {declared!r}, invoked as {args.command!r}")
        return COMMANDS[args.command](job, args)
    except InputError as exc:
        _emit({"error": type(exc).__name__, "detail": str(exc)})
        return 2
    except PrecisionError as exc:
        _emit({"error": type(exc).__name__, "detail": str(exc)})
        return 3
    except ShintaniError as exc:
        _emit({"error": type(exc).__name__, "detail": str(exc)})
        return 2
    except ValueError as exc:
        _emit({"error": "ValueError", "detail": str(exc)})
        return 2


if __name__ == "__main__":
    sys.exit(main())

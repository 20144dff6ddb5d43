"""Versioned JSON reports and their offline re-verification.

Rationals are written as ``"p/q"`` strings and root enclosures as exact
bracket pairs, so a report can be re-read without loss. ``verify_report``
recomputes every exact claim from the recorded inputs alone.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Any, Optional

import numpy as np

from .gap_classifier import DegreeGate, OrderStatus, Status, degree_gate
from .hadamard_transport import affine_transport_loewner
from .hankel_moments import AtomicMeasure, MomentReport, RatInterval, moment_flags
from .loewner import (
    PnCertificate,
    PnFalsification,
    build_loewner,
    leading_minor_polys,
    principal_minor_polys,
    verify_pn_certificate,
)
from .mclass_cert import MClassCertificate, PremiseError, build_certificate
from .mono_sampler import FalsificationReport, pair_gap
from .ratpoly import RatPoly, format_rat, poly_eval
from .realroots import Interval, RootEnclosure, SignReport, sign_on_interval

SCHEMA_VERSION = 1


def rat(x: Optional[Fraction]) -> Optional[str]:
    return None if x is None else format_rat(Fraction(x))


def unrat(s: Optional[str]) -> Optional[Fraction]:
    return None if s is None else Fraction(s)


def interval_json(iv: Interval) -> dict:
    return {"lo": rat(iv.lo), "hi": rat(iv.hi), "lo_closed": iv.lo_closed, "hi_closed": iv.hi_closed}


def interval_from_json(d: dict) -> Interval:
    return Interval(unrat(d["lo"]), unrat(d["hi"]), d["lo_closed"], d["hi_closed"])


def sign_json(s: SignReport) -> dict:
    return {"verdict": s.verdict.value, "witness": rat(s.witness)}


def _enclosure_json(x) -> Any:
    if isinstance(x, RootEnclosure):
        return {"exact": rat(x.exact), "bracket": [rat(x.lo), rat(x.hi)]}
    if isinstance(x, RatInterval):
        return {"bracket": [rat(x.lo), rat(x.hi)]}
    return rat(x)


def certificate_json(cert: PnCertificate) -> dict:
    return {
        "n": cert.n,
        "alpha": rat(cert.alpha),
        "alpha_exact": cert.alpha_exact,
        "unbounded": cert.alpha is None,
        "minors": [m.to_text() for m in cert.minors],
        "minor_signs": [sign_json(s) for s in cert.minor_evidence],
        "side_conditions": {k: sign_json(v) for k, v in cert.side_conditions.items()},
    }


def falsification_json(fals: PnFalsification) -> dict:
    return {
        "n": fals.n,
        "indices": list(fals.indices),
        "t0": rat(fals.t0),
        "value": rat(fals.value),
        "minor": fals.minor.to_text(),
        "negative_on": None if fals.negative_on is None else interval_json(fals.negative_on),
    }


def order_status_json(rec: OrderStatus) -> dict:
    return {
        "n": rec.n,
        "status": rec.status.value,
        "alpha": rat(rec.alpha),
        "certificate": None if rec.certificate is None else certificate_json(rec.certificate),
        "falsification": None if rec.falsification is None else falsification_json(rec.falsification),
        "inherited_from": rec.inherited_from,
        "note": rec.note,
    }


def mclass_json(cert: MClassCertificate) -> dict:
    return {
        "sum": rat(cert.sum_value),
        "falsifies": cert.falsifies,
        "a_coeffs": [rat(a) for a in cert.a_coeffs],
        "premise": vars(cert.premise).copy(),
    }


def measure_json(m: Optional[AtomicMeasure]) -> Optional[dict]:
    if m is None:
        return None
    return {"atoms": [_enclosure_json(a) for a in m.atoms],
            "weights": [_enclosure_json(w) for w in m.weights]}


def moments_json(rep: MomentReport) -> dict:
    return {
        "b": [rat(x) for x in rep.b],
        "pd": rep.pd,
        "psd": rep.psd,
        "hankel_rank": rep.hankel_rank,
        "matrix_rank": rep.matrix_rank,
        "extension_obstruction": rep.extension_obstruction,
        "degree_deficient": rep.degree_deficient,
        "measure": measure_json(rep.measure),
        "measure_moments": rep.measure_moments,
        "claims": list(rep.claims),
    }


def sampler_json(rep: FalsificationReport) -> dict:
    out = {"trials": rep.trials, "seed": rep.seed, "tol": rep.tol, "found": rep.found,
           "trial": rep.trial, "counterexample": None}
    if rep.found:
        C, D, lam = rep.counterexample
        out["counterexample"] = {"C": C.tolist(), "D": D.tolist(), "lambda_min": lam}
    return out


def make_report(command: str, inputs: dict, results: dict, seconds: float) -> dict:
    return {"schema_version": SCHEMA_VERSION, "command": command, "inputs": inputs,
            "results": results, "timing": {"seconds": seconds}}


# -- re-verification ------------------------------------------------------

class _Checker:
    def __init__(self):
        self.problems: list[str] = []
        self.checked = 0

    def expect(self, ok: bool, what: str):
        self.checked += 1
        if not ok:
            self.problems.append(what)


def _check_certificate(ck: _Checker, f: RatPoly, cj: dict):
    n, alpha = cj["n"], unrat(cj["alpha"])
    ck.expect(verify_pn_certificate(f, n, alpha), f"certificate for n={n} does not verify")
    minors = [m.to_text() for m in leading_minor_polys(build_loewner(f, n))]
    ck.expect(minors == cj["minors"], f"leading minors for n={n} differ")


def _check_falsification(ck: _Checker, f: RatPoly, fj: dict):
    n, idx = fj["n"], tuple(fj["indices"])
    minor = dict(principal_minor_polys(build_loewner(f, n))).get(idx)
    ck.expect(minor is not None and minor.to_text() == fj["minor"], f"minor {idx} differs")
    if minor is None:
        return
    t0 = unrat(fj["t0"])
    ck.expect(poly_eval(minor, t0) == unrat(fj["value"]), f"minor {idx} value at {t0} differs")
    _, low = minor.lowest_term()
    ck.expect(unrat(fj["value"]) < 0 or low < 0, f"minor {idx} is not negative near 0")
    neg = fj.get("negative_on")
    if neg is not None and neg["hi"] is not None:
        rep = sign_on_interval(minor, Interval(Fraction(0), unrat(neg["hi"]), False, False))
        ck.expect(rep.verdict.value == "StrictlyNegative", f"minor {idx} not negative on {neg}")


def _check_order(ck: _Checker, f: RatPoly, rj: dict):
    status = Status(rj["status"])
    if status is Status.MEMBER:
        _check_certificate(ck, f, rj["certificate"])
    elif rj["inherited_from"] is not None:
        return
    elif status is Status.EXCLUDED_BY_DEGREE:
        ck.expect(degree_gate(max(f.degree, 0), rj["n"]) is DegreeGate.FORBIDDEN,
                  f"degree gate does not forbid n={rj['n']}")
    elif status is Status.EXCLUDED_BY_MINOR:
        _check_falsification(ck, f, rj["falsification"])
    elif status is Status.EXCLUDED_BY_RANK_OBSTRUCTION:
        ck.expect(moment_flags(f, rj["n"] - 1).extension_obstruction,
                  f"no rank obstruction below n={rj['n']}")


def _check_mclass(ck: _Checker, inp: dict, res: dict):
    f = RatPoly.parse(inp["poly"])
    p = RatPoly.parse(inp["p"])
    nodes = [Fraction(x) for x in inp["nodes"]]
    try:
        cert = build_certificate(f, inp["n"], Fraction(inp["a"]), p, nodes)
    except PremiseError as exc:
        ck.expect(res.get("error") == str(exc), "premise rejection differs")
        return
    ck.expect(mclass_json(cert) == {k: res[k] for k in ("sum", "falsifies", "a_coeffs", "premise")},
              "mclass certificate differs")


def _check_moments(ck: _Checker, inp: dict, res: dict):
    rep = moment_flags(RatPoly.parse(inp["poly"]), inp["n"])
    fresh = moments_json(rep)
    for key in ("b", "pd", "psd", "hankel_rank", "matrix_rank", "extension_obstruction"):
        ck.expect(fresh[key] == res[key], f"moment field {key} differs")
    if res["measure"] is not None:
        ck.expect(fresh["measure"] == res["measure"], "measure differs")
        b = [Fraction(x) for x in res["b"][: res["measure_moments"]]]
        ck.expect(rep.measure.reproduces(b), "measure does not reproduce its moments")


def _check_sampler(ck: _Checker, inp: dict, res: dict):
    if not res["found"]:
        return
    f = RatPoly.parse(inp["poly"])
    cx = res["counterexample"]
    C, D = np.array(cx["C"]), np.array(cx["D"])
    lam = pair_gap(f, C, D)
    ck.expect(abs(lam - cx["lambda_min"]) <= 1e-12 * max(1.0, abs(lam)), "lambda_min not reproduced")
    ck.expect(float(np.linalg.eigvalsh(D - C)[0]) >= -1e-12, "pair is not ordered")


def verify_report(data: dict) -> tuple[bool, list[str]]:
    """Recompute the exact content of a report; returns ``(ok, problems)``."""
    ck = _Checker()
    if data.get("schema_version") != SCHEMA_VERSION:
        return False, [f"unsupported schema_version {data.get('schema_version')!r}"]
    cmd, inp, res = data["command"], data["inputs"], data["results"]
    if cmd == "certify":
        _check_order(ck, RatPoly.parse(inp["poly"]), res["order"])
    elif cmd == "gaps":
        f = RatPoly.parse(inp["poly"])
        for rj in res["per_n"]:
            _check_order(ck, f, rj)
    elif cmd == "mclass":
        _check_mclass(ck, inp, res)
    elif cmd == "moments":
        _check_moments(ck, inp, res)
    elif cmd == "falsify":
        _check_sampler(ck, inp, res)
    elif cmd == "transport":
        holds = affine_transport_loewner(RatPoly.parse(inp["poly"]), inp["n"], Fraction(inp["slope"]),
                                         Fraction(inp["shift"]), Fraction(inp["t0"]))
        ck.expect(holds == res["holds"], "transport identity verdict differs")
    else:
        return False, [f"unknown command {cmd!r}"]
    return not ck.problems, ck.problems

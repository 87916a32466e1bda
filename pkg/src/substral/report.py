"""Deterministic JSON documents for certification runs."""

from __future__ import annotations

import json
from fractions import Fraction

from . import __version__
from .coincidence import CertificationReport, OverlapClass, ProbeReport
from .field import FieldElement
from .polynomial import format_polynomial
from .substitution import format_substitution

TOOL = "substral"


def element(x: FieldElement) -> dict:
    return {"coords": [str(c) for c in x.coords], "decimal": x.decimal(20)}


def _outward(q: Fraction, digits: int, up: bool) -> str:
    scale = 10**digits
    n = q * scale
    k = -((-n.numerator) // n.denominator) if up else n.numerator // n.denominator
    return str(Fraction(k, scale))


def overlap_class(c: OverlapClass) -> dict:
    return {"i": c.i, "j": c.j, "offset": element(c.offset)}


def probe(p: ProbeReport | None) -> dict | None:
    if p is None:
        return None
    return {
        "interval": [element(p.lo), element(p.hi)],
        "samples": p.samples,
        "hits": p.hits,
        "hit_fraction": str(p.hit_fraction),
        "coverage": element(p.coverage),
        "levels": list(p.levels),
        "uncovered": [[element(a), element(b)] for a, b in p.uncovered],
    }


def verdict(v) -> dict:
    return {"kind": v.kind.value, "reason": v.reason, "cycle": [overlap_class(c) for c in v.cycle]}


def certification_document(report: CertificationReport, source: str | None = None,
                           provenance: dict | None = None) -> dict:
    """Everything except timings, which would break byte-determinism."""
    phi = report.substitution
    hyp = report.hypotheses
    cfg = report.config
    doc = {
        "tool": {"name": TOOL, "version": __version__},
        "config": {
            "n_max": cfg.n_max,
            "samples": cfg.samples,
            "cap": cfg.cap,
            "window": cfg.window,
            "tolerance": str(cfg.tolerance),
            "periodicity_window": cfg.periodicity_window,
        },
        "input": {
            "source": source,
            "substitution": format_substitution(phi).splitlines(),
            "names": list(phi.names) if phi.names else None,
            "provenance": dict(sorted((provenance or {}).items())),
        },
        "hypotheses": {
            "primitive": {"value": hyp.primitive, "power": hyp.primitive_power},
            "initial_injective": {"value": hyp.initial_injective,
                                  "first_letters": [w[0] for w in phi.images]},
            "final_eventually_constant": {"value": hyp.final_eventually_constant,
                                          "power": hyp.final_power, "letter": hyp.terminal_letter,
                                          "last_letters": [w[-1] for w in phi.images]},
            "pisot": None,
            "non_periodic": hyp.non_periodic.value,
            "theorem_applies": hyp.theorem_applies,
        },
        "eigen": {
            "matrix": [list(r) for r in report.matrix],
            "char_poly": format_polynomial(report.char_poly),
        },
        "overlap_verdict": verdict(report.overlap),
        "verdict": verdict(report.verdict),
        "exit_code": report.verdict.exit_code,
    }
    if hyp.pisot is not None:
        doc["hypotheses"]["pisot"] = {
            "verdict": hyp.pisot.verdict.value,
            "conjugate_moduli": [[_outward(lo, 12, False), _outward(hi, 12, True)]
                                 for lo, hi in hyp.pisot.conjugate_moduli],
            "note": "integer inflation; the conjugate condition is vacuous"
            if report.tileset.field.degree == 1 else None,
        }
    ts = report.tileset
    if ts is not None:
        lam = ts.inflation
        dec = lam.decimal(20)
        lo = Fraction(dec)
        doc["eigen"].update({
            "min_poly": format_polynomial(ts.field.min_poly),
            "degree": ts.field.degree,
            "lambda": element(lam),
            "lambda_interval": [str(lo), str(lo if lam.is_rational() else lo + Fraction(1, 10**20))],
            "omega": [element(w) for w in ts.lengths],
        })
    if report.seeds is not None:
        s = report.seeds
        doc["seeds"] = {
            "seed_tiling": dict(zip(("k", "a", "b"), s.seed_tiling)),
            "return_vectors": [element(w) for w in s.return_vectors],
            "span_rank": s.span_rank,
            "degree": s.degree,
            "classes": [overlap_class(c) for c in s.seeds],
        }
    if report.graph is not None:
        g = report.graph
        index = {n: k for k, n in enumerate(g.nodes)}
        doc["overlap_graph"] = {
            "cap": g.cap,
            "truncated": g.truncated,
            "nodes": [overlap_class(n) for n in g.nodes],
            "edges": [[index[c] for c in g.edges.get(n, ()) if c in index] for n in g.nodes],
            "coincidences": [index[n] for n in g.coincidences()],
        }
    pair = report.prototile_pair
    doc["prototile_pair"] = None if pair is None else {
        "i": pair.i, "j": pair.j, "power": pair.power, "terminal_letter": pair.terminal_letter,
        "probe": probe(pair.probe), "interior_probe": probe(pair.interior),
    }
    return doc


def dumps(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"

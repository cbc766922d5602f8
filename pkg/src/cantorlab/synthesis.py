"""Build a semifilter in every finite class of the ladder and certify matches.

Classes are indexed by ``(n, i)`` with ``n >= -1``; ``i`` is 1 or 2 when
``n == -1`` or ``n % 4`` is 2 or 3, and 0 otherwise.  The recipe climbs the
ladder: complement-and-flip to reach ``4k``, the Q-product to add one, and
the Fin shield to jump from ``4k - 1`` to ``4k + 2``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache

from . import automata as am
from .axioms import is_semifilter, is_semiideal
from .constructions import (CantorSet, E, SetExpr, comp, cof, elaborate, from_automaton, full,
                            q_times, relabel_complement)
from .hoa import from_hoa, to_hoa
from .topology import NAMED, baire_category, classify, is_locally_compact
from .wadge import ReductionWitness, verify_witness, wadge_compare, wadge_le

FORMAT_VERSION = 1
DEFAULT_MAX_INDEX = 7
DISCLAIMER = ("homeomorphism asserted via class uniqueness and the Wadge/category "
              "characterization; not machine-checked")

LABEL_INDEX = {"Q": (-1, 1), "QxC": (-1, 2)}
LABEL_INDEX.update({v: k for k, v in NAMED.items()})


class SynthesisError(ValueError):
    pass


class Refused(SynthesisError):
    pass


def valid_index(n: int, i: int) -> bool:
    if n < -1:
        return False
    if n == -1 or n % 4 in (2, 3):
        return i in (1, 2)
    return i == 0


def index_from_label(label: str) -> tuple[int, int]:
    if label in LABEL_INDEX:
        return LABEL_INDEX[label]
    if label.startswith("X"):
        body = label[1:]
        i = 0
        if body.startswith("^"):
            i = int(body[1])
            body = body[2:]
        return int(body[1:]), i
    raise SynthesisError(f"label {label!r} has no class index")


@lru_cache(maxsize=None)
def _build_expr(n: int, i: int) -> SetExpr:
    if n == -1:
        return cof().expr if i == 1 else q_times(full()).expr
    k, r = divmod(n, 4)
    if r == 0:
        prev = _build_expr(n - 1, 1)
        return E("RelabelComplement", E("Comp", prev))
    if r == 1:
        return E("QTimes", _build_expr(n - 1, 0))
    if r == 2:
        return E("FinShield", _build_expr(n - 3, i))
    return E("QTimes", _build_expr(n - 1, i))


def build_semifilter_in_class(n: int, i: int = 0, max_index: int = DEFAULT_MAX_INDEX) -> CantorSet:
    if not valid_index(n, i):
        raise SynthesisError(f"({n}, {i}) is not a class index")
    if n > max_index:
        raise SynthesisError(f"class index {n} exceeds the configured maximum {max_index}")
    X = elaborate(_build_expr(n, i))
    v = is_semifilter(X)
    if not v:
        raise AssertionError(f"build({n},{i}) fails {v.axiom}")
    return X


def semiideal_form(n: int, i: int = 0) -> CantorSet:
    """For ``n = 4k`` the intermediate semiideal ``C minus S``; otherwise the complement."""
    if n >= 0 and n % 4 == 0:
        return comp(elaborate(_build_expr(n - 1, 1)))
    return comp(build_semifilter_in_class(n, i))


# ---------------------------------------------------------------------------
# certificates


def credential(X: CantorSet) -> str | None:
    """Why X is known to be homogeneous, if it is."""
    if is_semifilter(X):
        return "semifilter"
    named = {"CompFin": "named space P", "QxP": "named space QxP"}
    if X.expr.op in named:
        return named[X.expr.op]
    e = X.expr
    if e == E("Comp", E("Fin")):
        return "named space P"
    if e.op == "QTimes" and e.args == (E("Comp", E("Fin")),):
        return "named space QxP"
    # images of a semifilter under the bit flip or finite flips
    if e.op == "RelabelComplement" and is_semifilter(elaborate(e.args[0])):
        return "image of a semifilter under the bit flip"
    if e.op == "FiniteFlip" and is_semifilter(elaborate(e.args[0])):
        return "image of a semifilter under a finite flip"
    if is_semifilter(relabel_complement(X)):
        return "image of a semifilter under the bit flip"
    return None


@dataclass
class Certificate:
    subject: CantorSet
    constructed: CantorSet
    index: tuple
    credential: str
    evidence: dict
    witnesses: dict = field(default_factory=dict)
    note: str = DISCLAIMER

    @property
    def valid(self) -> bool:
        return all(self.evidence.values())

    def to_json(self) -> str:
        return json.dumps({
            "version": FORMAT_VERSION,
            "subject": {"expr": str(self.subject.expr), "hoa": to_hoa(self.subject.automaton)},
            "constructed": {"expr": str(self.constructed.expr),
                            "hoa": to_hoa(self.constructed.automaton)},
            "index": list(self.index),
            "credential": self.credential,
            "evidence": self.evidence,
            "witnesses": {k: w.to_text() for k, w in self.witnesses.items()},
            "note": self.note,
        }, indent=2, sort_keys=True)


def _evidence(X: CantorSet, Y: CantorSet) -> tuple[dict, dict]:
    fwd, back = wadge_le(X, Y), wadge_le(Y, X)
    ev = {
        "constructed_is_semifilter": is_semifilter(Y).ok,
        "wadge_equivalent": fwd.holds and back.holds,
        "labels_equal": classify(X).label == classify(Y).label,
        "categories_equal": baire_category(X) == baire_category(Y),
    }
    wit = {}
    if fwd.holds:
        wit["subject_to_constructed"] = fwd.witness
    if back.holds:
        wit["constructed_to_subject"] = back.witness
    return ev, wit


def certify_main_theorem(X: CantorSet, max_index: int = DEFAULT_MAX_INDEX) -> Certificate:
    if is_locally_compact(X):
        raise Refused("the set is locally compact")
    cred = credential(X)
    if cred is None:
        raise Refused("no homogeneity credential")
    report = classify(X, max_class=max_index)
    if report.index is None:
        raise Refused(f"no class label ({'; '.join(report.notes) or report.label})")
    n, i = report.index
    Y = build_semifilter_in_class(n, i, max_index)
    ev, wit = _evidence(X, Y)
    cert = Certificate(X, Y, (n, i), cred, ev, wit)
    if not cert.valid:
        failed = [k for k, v in ev.items() if not v]
        raise SynthesisError(f"evidence failed: {', '.join(failed)}")
    return cert


def load_certificate(text: str) -> Certificate:
    """Parse and re-verify a certificate; every evidence field is recomputed."""
    data = json.loads(text)
    if data.get("version") != FORMAT_VERSION:
        raise SynthesisError("unsupported certificate version")
    from .expr import parse_expr

    def load(side):
        A = from_hoa(data[side]["hoa"])
        if data[side]["expr"] == "Automaton":
            return from_automaton(A)
        X = elaborate(parse_expr(data[side]["expr"]))
        if not am.is_equivalent(A, X.automaton):
            raise SynthesisError(f"{side} automaton does not match its expression")
        return X

    X, Y = load("subject"), load("constructed")
    ev, wit = _evidence(X, Y)
    stored = {k: ReductionWitness.from_text(v) for k, v in data["witnesses"].items()}
    checks = {
        "subject_to_constructed": (X, Y),
        "constructed_to_subject": (Y, X),
    }
    for name, w in stored.items():
        a, b = checks[name]
        if not verify_witness(w, a, b):
            raise SynthesisError(f"stored witness {name} fails verification")
    if ev != data["evidence"] or not all(ev.values()):
        raise SynthesisError("recomputed evidence differs from the stored record")
    return Certificate(X, Y, tuple(data["index"]), data["credential"], ev, stored, data["note"])


def meager_semiideal_counterpart(X: CantorSet, max_index: int = DEFAULT_MAX_INDEX) -> CantorSet:
    """A meager semiideal whose complement is Wadge-equivalent to X (X on the Baire side)."""
    cat = baire_category(X)
    if cat not in ("Baire", "comeager-in-closure"):
        raise Refused(f"category {cat} is not on the Baire side")
    cert = certify_main_theorem(X, max_index)
    R = comp(cert.constructed)
    if not is_semiideal(R):
        raise AssertionError("complement of the constructed semifilter is not a semiideal")
    if baire_category(R) != "meager":
        raise SynthesisError("counterpart is not meager")
    if wadge_compare(comp(R), X) != "A≡B":
        raise AssertionError("counterpart complement is not Wadge-equivalent")
    return R


def all_indices(max_index: int = DEFAULT_MAX_INDEX):
    out = [(-1, 1), (-1, 2)]
    for n in range(0, max_index + 1):
        if n % 4 in (0, 1):
            out.append((n, 0))
        else:
            out += [(n, 1), (n, 2)]
    return out

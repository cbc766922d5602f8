"""Command line entry point.

Exit codes: 0 when every expectation holds, 1 on a mismatch or refusal,
2 on malformed input.  A set argument is an expression such as
``QTimes(Comp(Fin))`` or ``@path.hoa`` to import an automaton.
"""
from __future__ import annotations

import functools
import json
import os
import sys

import click

from . import automata as am
from .automata import AutomatonError
from .axioms import (finite_union_property, is_closed_finite_mods, is_downward_closed, is_filter,
                     is_ideal, is_semifilter, is_semiideal, is_upward_closed)
from .constructions import CantorSet, elaborate, from_automaton
from .corpus import RunConfig, full_report, render_table, run_corpus
from .expr import ExprSyntaxError, parse_expr
from .hoa import HOAError, from_hoa, to_hoa
from .synthesis import Refused, SynthesisError, certify_main_theorem, load_certificate
from .topology import classify, difference_level
from .wadge import WitnessError, wadge_le

EXIT_OK, EXIT_MISMATCH, EXIT_INPUT = 0, 1, 2


class InputError(click.ClickException):
    exit_code = EXIT_INPUT


def _guard(fn):
    """Map library input errors to exit code 2 with the message verbatim."""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except ExprSyntaxError as exc:
            raise InputError(f"parse error: {exc}") from exc
        except (HOAError, WitnessError, AutomatonError, OSError, json.JSONDecodeError) as exc:
            raise InputError(str(exc)) from exc

    return wrapper


def load_set(text: str) -> CantorSet:
    if text.startswith("@"):
        with open(text[1:], encoding="utf-8") as fh:
            return from_automaton(from_hoa(fh.read()))
    return elaborate(parse_expr(text))


def _write(out_dir: str | None, name: str, content: str) -> str | None:
    if out_dir is None:
        return None
    os.makedirs(out_dir, exist_ok=True)
    path = os.path.join(out_dir, name)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(content)
    return path


def _echo_json(data) -> None:
    click.echo(json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False))


out_option = click.option("--out", type=click.Path(file_okay=False), default=None,
                          help="Directory for output files.")
seed_option = click.option("--seed", type=int, default=0, show_default=True,
                           help="Seed for sampled checks.")
class_options = [
    click.option("--max-class", type=click.IntRange(min=0), default=11, show_default=True,
                 help="Highest ladder index the classifier tries."),
    click.option("--bm-bound", type=click.IntRange(min=1), default=None,
                 help="Cross-check the category with a Banach-Mazur game of this bound."),
]


def with_class_options(fn):
    for opt in reversed(class_options):
        fn = opt(fn)
    return fn


@click.group()
@click.version_option(package_name="artifact")
def main():
    """Regular subsets of Cantor space: axioms, classes and Wadge reductions."""


@main.command("eval")
@click.argument("expr")
@out_option
@_guard
def cmd_eval(expr, out):
    """Build the automaton for EXPR; print a summary and write HOA."""
    X = load_set(expr)
    A = am.normalize(X.automaton)
    hoa = to_hoa(A, name=str(X.expr))
    empty, witness = am.is_empty(A)
    level = difference_level(A)
    summary = {
        "expr": str(X.expr),
        "states": A.num_states,
        "priorities": A.priorities(),
        "empty": empty,
        "member": str(witness) if witness else None,
        "diff_level": {"k": level[0], "side": level[1]},
    }
    path = _write(out, "automaton.hoa", hoa)
    if path:
        summary["hoa_file"] = path
    else:
        click.echo(hoa, nl=False)
    _echo_json(summary)


@main.command("axioms")
@click.argument("expr")
@_guard
def cmd_axioms(expr):
    """Decide the semifilter, semiideal, filter and ideal axioms for EXPR."""
    X = load_set(expr)
    verdicts = {
        "semifilter": is_semifilter(X),
        "semiideal": is_semiideal(X),
        "filter": is_filter(X),
        "ideal": is_ideal(X),
        "upward": is_upward_closed(X),
        "downward": is_downward_closed(X),
        "finite_mods": is_closed_finite_mods(X),
        "finite_union_2": finite_union_property(X, 2),
    }
    _echo_json({"expr": str(X.expr), **{k: v.record() for k, v in verdicts.items()}})


@main.command("classify")
@click.argument("expr")
@with_class_options
@_guard
def cmd_classify(expr, max_class, bm_bound):
    """Classify EXPR: difference level, flags, category and label."""
    X = load_set(expr)
    report = classify(X, max_class=max_class, bm_bound=bm_bound)
    rec = report.record()
    rec["expr"] = str(X.expr)
    rec["notes"] = report.notes
    _echo_json(rec)


@main.command("compare")
@click.argument("expr_a")
@click.argument("expr_b")
@out_option
@_guard
def cmd_compare(expr_a, expr_b, out):
    """Decide Wadge reducibility in both directions; write the witnesses."""
    A, B = load_set(expr_a), load_set(expr_b)
    fwd, back = wadge_le(A, B), wadge_le(B, A)
    verdict = {(True, True): "A≡B", (True, False): "A<B",
               (False, True): "B<A", (False, False): "dual-incomparable"}[(fwd.holds, back.holds)]
    rec = {"a": str(A.expr), "b": str(B.expr), "verdict": verdict,
           "a_le_b": fwd.holds, "b_le_a": back.holds}
    for name, res in (("a_to_b", fwd), ("b_to_a", back)):
        if res.holds:
            path = _write(out, f"witness_{name}.txt", res.witness.to_text())
            rec[f"witness_{name}"] = path or res.witness.to_text()
    _echo_json(rec)


@main.command("certify")
@click.argument("expr")
@click.option("--max-class", type=click.IntRange(min=0), default=7, show_default=True)
@out_option
@_guard
def cmd_certify(expr, max_class, out):
    """Match EXPR with a constructed semifilter and write a certificate."""
    X = load_set(expr)
    try:
        cert = certify_main_theorem(X, max_index=max_class)
    except Refused as exc:
        click.echo(f"refused: {exc}", err=True)
        sys.exit(EXIT_MISMATCH)
    except SynthesisError as exc:
        click.echo(f"failed: {exc}", err=True)
        sys.exit(EXIT_MISMATCH)
    text = cert.to_json()
    path = _write(out, "certificate.json", text)
    if path:
        _echo_json({"certificate": path, "index": list(cert.index), "evidence": cert.evidence})
    else:
        click.echo(text)


@main.command("recheck")
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@_guard
def cmd_recheck(path):
    """Reload a certificate file and recompute all of its evidence."""
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    try:
        cert = load_certificate(text)
    except SynthesisError as exc:
        click.echo(f"invalid: {exc}", err=True)
        sys.exit(EXIT_MISMATCH)
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed certificate: {exc}") from exc
    _echo_json({"valid": cert.valid, "index": list(cert.index), "evidence": cert.evidence})


@main.command("corpus")
@with_class_options
@click.option("--jobs", type=click.IntRange(min=1), default=1, show_default=True)
@out_option
@seed_option
@_guard
def cmd_corpus(max_class, bm_bound, jobs, out, seed):
    """Classify the reference corpus and compare against expectations."""
    cfg = RunConfig(max_class=max_class, bm_bound=bm_bound, jobs=jobs, out=out, seed=seed)
    results = run_corpus(cfg)
    table = render_table(results)
    click.echo(table, nl=False)
    report = full_report(results, cfg)
    _write(out, "corpus_table.txt", table)
    _write(out, "corpus_report.json", report)
    bad = [r for r in results if not r.ok]
    for r in bad:
        for m in r.mismatches:
            click.echo(f"mismatch {r.entry.name}: {m}", err=True)
    sys.exit(EXIT_MISMATCH if bad else EXIT_OK)


if __name__ == "__main__":
    main()

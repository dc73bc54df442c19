"""Command-line verification pipeline and its JSON report.

One invocation builds one group, runs the requested checks, prints a short
text report, and optionally writes the full JSON report.  Exit code 0 means
PASS or SKIP (prime does not divide the group order), 1 means FAIL, 2 means
the invocation itself was bad.
"""

import json
import random
import sys
import time
from dataclasses import dataclass, field

import click

from . import families
from .complexes import (EmptyComplex, build_poset_quotient, build_quotient,
                        orbit_soundness_check, verify_simplicial_identities)
from .groups import (ParseError, SizeLimit, enumerate_group, parse_generators,
                     valuation)
from .homology import quotient_homology
from .morse import (COLLAPSIBLE, CRITICAL, REDUNDANT, BoundViolated,
                    MatchingFailure, StuckCollapse, build_digraph,
                    build_matching, check_acyclic, check_height_discipline,
                    classify_cells, collapse_schedule,
                    longest_alternating_path,
                    representative_independence_test)


@dataclass
class GroupSpec:
    """Parsed --group value: either a family instance or raw generators."""
    text: str
    family: str | None = None
    param: int | None = None
    generators: list | None = None

    def describe(self):
        return self.text


def _int_param(value, offset):
    if not value.isdigit():
        raise ParseError("expected a positive integer parameter", offset)
    return int(value)


def parse_group_spec(text, max_order=None):
    """Parse "family:NAME[:PARAM]" or "perm:<generators>" into a GroupSpec.

    Family orders are checked against `max_order` here, so absurd parameters
    fail fast without any enumeration.
    """
    if text.startswith("family:"):
        body = text[len("family:"):]
        parts = body.split(":")
        name = parts[0]
        if name not in families.FAMILIES:
            raise ParseError(f"unknown family {name!r}", len("family:"))
        if name in families.PARAMETRIC:
            if len(parts) != 2:
                raise ParseError(f"family {name!r} needs exactly one parameter",
                                 len("family:") + len(name))
            param = _int_param(parts[1], len("family:") + len(name) + 1)
        else:
            if len(parts) != 1:
                raise ParseError(f"family {name!r} takes no parameter",
                                 len("family:") + len(name))
            param = None
        try:
            order = families.family_order(name, param)
            families.family_generators(name, param)
        except ValueError as err:
            raise ParseError(str(err), len("family:")) from None
        if max_order is not None and order > max_order:
            raise SizeLimit(f"family order {order} exceeds cap {max_order}")
        return GroupSpec(text=text, family=name, param=param)
    if text.startswith("perm:"):
        gens = parse_generators(text[len("perm:"):], base_offset=len("perm:"))
        return GroupSpec(text=text, generators=gens)
    raise ParseError("expected 'family:' or 'perm:' prefix", 0)


def build_group(spec, max_order):
    if spec.family is not None:
        gens, degree = families.family_generators(spec.family, spec.param)
        return enumerate_group(gens, degree=degree, max_order=max_order)
    return enumerate_group(spec.generators, max_order=max_order)


@dataclass
class PipelineOptions:
    check: str = "all"
    trials: int = 100
    seed: int = 0
    max_order: int = 10_000
    emit_complex: str | None = None


_REPORT_FIELDS = (
    "group", "order", "p", "t", "cells", "poset_cells", "morse_classes",
    "matching_valid", "independence_trials", "independence_failures",
    "independence_ok", "digraph_acyclic", "longest_alternating_path",
    "bound_2t_minus_2_ok", "euler_characteristic", "homology",
    "poset_homology", "homology_agree", "collapse_steps", "terminal_cell",
    "elapsed_ms", "verdict", "skip_reason", "errors",
)


@dataclass
class Report:
    group: str
    order: int
    p: int
    t: int = 0
    cells: list | None = None
    poset_cells: list | None = None
    morse_classes: dict | None = None
    matching_valid: bool | None = None
    independence_trials: int | None = None
    independence_failures: int | None = None
    independence_ok: bool | None = None
    digraph_acyclic: bool | None = None
    longest_alternating_path: int | None = None
    bound_2t_minus_2_ok: bool | None = None
    euler_characteristic: int | None = None
    homology: list | None = None
    poset_homology: list | None = None
    homology_agree: bool | None = None
    collapse_steps: int | None = None
    terminal_cell: int | None = None
    elapsed_ms: int = 0
    verdict: str = "FAIL"
    skip_reason: str | None = None
    errors: list = field(default_factory=list)

    def to_dict(self):
        return {name: getattr(self, name) for name in _REPORT_FIELDS}

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def render_text(self):
        lines = [f"group: {self.group} (order {self.order})",
                 f"prime: {self.p} (t = {self.t})"]
        if self.skip_reason is not None:
            lines.append(f"skipped: {self.skip_reason}")
        if self.cells is not None:
            lines.append(f"cells: {self.cells}")
        if self.poset_cells is not None:
            lines.append(f"full-chain cells: {self.poset_cells}")
        if self.morse_classes is not None:
            parts = ", ".join(f"{k} {v}" for k, v in self.morse_classes.items())
            lines.append(f"morse classes: {parts}")
        if self.matching_valid is not None:
            lines.append(f"matching valid: {self.matching_valid}; "
                         f"independence trials {self.independence_trials} "
                         f"(failures {self.independence_failures})")
        if self.digraph_acyclic is not None:
            lines.append(f"digraph acyclic: {self.digraph_acyclic}; "
                         f"longest alternating path {self.longest_alternating_path} "
                         f"(bound ok: {self.bound_2t_minus_2_ok})")
        if self.euler_characteristic is not None:
            lines.append(f"euler characteristic: {self.euler_characteristic}")
        if self.homology_agree is not None:
            lines.append(f"homology trivial/agree: {self.homology_agree}")
        if self.collapse_steps is not None:
            lines.append(f"collapse: {self.collapse_steps} steps, "
                         f"terminal cell {self.terminal_cell}")
        for err in self.errors:
            lines.append(f"error: {err}")
        lines.append(f"elapsed: {self.elapsed_ms} ms")
        lines.append(f"verdict: {self.verdict}")
        return "\n".join(lines)


def run_pipeline(spec, p, options=None):
    """Run every requested check on one (group, prime) instance.

    Verification failures and contract violations from the submodules are
    embedded in the report with verdict FAIL; a prime not dividing the group
    order yields verdict SKIP.
    """
    options = options or PipelineOptions()
    start = time.perf_counter()
    group = build_group(spec, options.max_order)
    report = Report(group=spec.describe(), order=group.order, p=p,
                    t=valuation(group.order, p))
    checks_ok = []
    try:
        quotient = build_quotient(group, p)
    except EmptyComplex as err:
        report.verdict = "SKIP"
        report.skip_reason = str(err)
        report.elapsed_ms = int((time.perf_counter() - start) * 1000)
        return report
    report.cells = quotient.counts()
    report.euler_characteristic = quotient.euler_characteristic()
    verify_simplicial_identities(quotient)
    checks_ok.append(report.euler_characteristic == 1)

    run_morse = options.check in ("all", "matching", "collapse")
    run_homology = options.check in ("all", "homology")
    run_collapse = options.check in ("all", "collapse")

    if run_morse:
        counts = classify_cells(quotient)
        report.morse_classes = counts
        try:
            matching = build_matching(quotient)
            report.matching_valid = True
        except MatchingFailure as err:
            report.matching_valid = False
            report.errors.append(str(err))
            matching = None
        checks_ok.append(report.matching_valid)
        if matching is not None:
            independence = representative_independence_test(
                quotient, matching, trials=options.trials, seed=options.seed)
            soundness_failures = orbit_soundness_check(
                quotient, trials=options.trials,
                rng=random.Random(options.seed + 1))
            report.independence_trials = independence.trials
            report.independence_failures = independence.failures + soundness_failures
            report.independence_ok = independence.ok and soundness_failures == 0
            checks_ok.append(report.independence_ok)

            digraph = build_digraph(quotient, matching)
            heights_ok, height_err = check_height_discipline(quotient, digraph)
            if not heights_ok:
                report.errors.append(height_err)
            checks_ok.append(heights_ok)
            certificate = check_acyclic(digraph)
            report.digraph_acyclic = certificate.acyclic
            checks_ok.append(certificate.acyclic)
            if certificate.acyclic:
                try:
                    report.longest_alternating_path = longest_alternating_path(
                        quotient, matching, digraph)
                    report.bound_2t_minus_2_ok = True
                except BoundViolated as err:
                    report.bound_2t_minus_2_ok = False
                    report.errors.append(str(err))
                checks_ok.append(report.bound_2t_minus_2_ok)
                if run_collapse:
                    try:
                        schedule = collapse_schedule(quotient, matching, certificate)
                        report.collapse_steps = len(schedule.steps)
                        report.terminal_cell = schedule.terminal_cell
                        checks_ok.append(schedule.terminal_cell == matching.critical[0])
                    except StuckCollapse as err:
                        report.errors.append(str(err))
                        checks_ok.append(False)

    if run_homology:
        poset = build_poset_quotient(group, p, table=quotient.table)
        report.poset_cells = poset.counts()
        verify_simplicial_identities(poset)
        profile = quotient_homology(quotient)
        poset_profile = quotient_homology(poset)
        report.homology = profile.to_json()
        report.poset_homology = poset_profile.to_json()
        report.homology_agree = profile.agrees_with(poset_profile)
        checks_ok.append(profile.is_trivial())
        checks_ok.append(poset_profile.is_trivial())
        checks_ok.append(report.homology_agree)
        checks_ok.append(poset.euler_characteristic() == 1)

    if options.emit_complex:
        with open(options.emit_complex, "w") as fh:
            json.dump(quotient.dump_dict(), fh, indent=2)
            fh.write("\n")

    report.verdict = "PASS" if all(checks_ok) else "FAIL"
    report.elapsed_ms = int((time.perf_counter() - start) * 1000)
    return report


def _is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@click.command()
@click.option("--group", "group_text", required=True,
              help="Group spec: family:NAME[:PARAM] or perm:<cycles;cycles>.")
@click.option("--prime", "p", required=True, type=int, help="The prime p.")
@click.option("--check", "check",
              type=click.Choice(["all", "matching", "homology", "collapse"]),
              default="all", show_default=True,
              help="Which verification stage to run.")
@click.option("--emit-complex", "emit_complex", type=click.Path(dir_okay=False),
              default=None, help="Write the quotient complex as JSON.")
@click.option("--json", "json_path", type=click.Path(dir_okay=False),
              default=None, help="Write the full report as JSON.")
@click.option("--trials", default=100, show_default=True,
              help="Randomized representative-independence trials.")
@click.option("--seed", default=0, show_default=True, help="RNG seed.")
@click.option("--max-order", default=10_000, show_default=True,
              help="Refuse groups larger than this.")
def main(group_text, p, check, emit_complex, json_path, trials, seed, max_order):
    """Verify that the conjugation quotient of the p-subgroup chain complex
    collapses to the Sylow vertex, and double-check with integer homology."""
    if not _is_prime(p):
        raise click.UsageError(f"--prime must be a prime number, got {p}")
    try:
        spec = parse_group_spec(group_text, max_order=max_order)
    except ParseError as err:
        raise click.UsageError(f"bad --group value: {err}") from None
    except SizeLimit as err:
        raise click.UsageError(str(err)) from None
    options = PipelineOptions(check=check, trials=trials, seed=seed,
                              max_order=max_order, emit_complex=emit_complex)
    try:
        report = run_pipeline(spec, p, options)
    except SizeLimit as err:
        raise click.UsageError(str(err)) from None
    click.echo(report.render_text())
    if json_path:
        with open(json_path, "w") as fh:
            fh.write(report.to_json())
    sys.exit(0 if report.verdict in ("PASS", "SKIP") else 1)


if __name__ == "__main__":
    main()

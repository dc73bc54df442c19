"""Acceptance gate: one test per required behavior, over the whole suite.

Each test re-derives what it checks from scratch inside the test body where
that is feasible, so a regression in the library cannot hide behind its own
reporting.
"""

import random

import pytest

import sylowcollapse as sc
from sylowcollapse.cli import PipelineOptions, parse_group_spec, run_pipeline
from sylowcollapse.morse import (COLLAPSIBLE, CRITICAL, MATCH_UP, REDUNDANT,
                                 MatchingFailure)
from conftest import SUITE_INSTANCES
from oracles import brute_cell_counts, brute_longest_alternating, circle_complex


def test_trivial_cyclic_groups_collapse_immediately():
    for p in (2, 3, 5):
        report = run_pipeline(parse_group_spec(f"family:cyclic:{p}"), p,
                              PipelineOptions(trials=100))
        assert report.verdict == "PASS", (p, report.errors)
        assert report.cells == [1]
        assert report.collapse_steps == 0


def test_small_instance_counts_match_brute_force(stack_cache):
    frozen = {
        ("family:cyclic:4", 2): [2, 1],
        ("family:symmetric:3", 2): [1],
        ("family:alternating:5", 2): [2, 1],
        ("family:symmetric:4", 2): None,  # counts come from the oracle alone
    }
    for (text, p), expected in frozen.items():
        stack = stack_cache(text, p)
        oracle = brute_cell_counts(stack.group, p, True)
        assert stack.quotient.counts() == oracle, (text, p)
        if expected is not None:
            assert oracle == expected, (text, p)


def test_full_suite_certificates(stack_cache):
    for text, p in SUITE_INSTANCES:
        run_certificate_checks(stack_cache, text, p)


def run_certificate_checks(stack_cache, text, p):
    stack = stack_cache(text, p)
    q, table, matching = stack.quotient, stack.table, stack.matching
    labels = {cell.cell_id: cell.morse_class for cell in q.cells}

    # unique critical cell, and it is the Sylow-class vertex
    critical = [cid for cid, label in labels.items() if label == CRITICAL]
    assert critical == list(matching.critical)
    assert len(critical) == 1
    top = q.cells[critical[0]]
    assert top.dim == 0
    assert table[top.rep[0]].order == p ** table.t

    # redundant/collapsible counts interlock across dimensions
    for d in range(q.max_dim + 1):
        red = sum(1 for c in q.cells if c.dim == d and labels[c.cell_id] == REDUNDANT)
        col = sum(1 for c in q.cells
                  if c.dim == d + 1 and labels[c.cell_id] == COLLAPSIBLE)
        assert red == col, (text, p, d)

    # exhaustive face and dimension checks on every pair
    sc.validate_matching(q, matching)
    for red, (col, back) in matching.pairs.items():
        assert q.cells[col].dim == q.cells[red].dim + 1
        assert q.face(col, back) == red

    # acyclicity, certified by the returned topological order
    cert = stack.certificate
    assert cert.acyclic
    pos = {v: k for k, v in enumerate(cert.order)}
    assert sorted(pos) == sorted(stack.digraph.vertices)
    for edge in stack.digraph.edges:
        assert pos[edge.src] < pos[edge.dst]

    # height rises on up edges, stays flat on down edges
    for edge in stack.digraph.edges:
        hs = table.height(q.cells[edge.src].rep[-1])
        hd = table.height(q.cells[edge.dst].rep[-1])
        if edge.kind == MATCH_UP:
            assert hs < hd
        else:
            assert hs == hd
    ok, why = sc.check_height_discipline(q, stack.digraph)
    assert ok, why

    # alternating path length obeys the 2(t-1) cap, against the brute oracle
    longest = sc.longest_alternating_path(q, matching, stack.digraph)
    assert longest == brute_longest_alternating(q, matching, stack.digraph)
    assert longest <= 2 * (table.t - 1)

    # the collapse schedule runs to completion and ends at the Sylow vertex
    schedule = sc.collapse_schedule(q, matching, cert)
    assert len(schedule.steps) == len(matching.pairs)
    assert schedule.terminal_cell == critical[0]
    alive = {cell.cell_id for cell in q.cells}
    for col, red in schedule.steps:
        hits = sum(1 for cid in alive for f in q.faces[cid] if f == red)
        assert hits == 1 and red in q.faces[col]
        alive -= {col, red}
    assert alive == {critical[0]}

    # Euler characteristic and exact integer homology, on both quotients
    assert q.euler_characteristic() == 1
    poset = sc.build_poset_quotient(stack.group, p, table=table)
    assert poset.euler_characteristic() == 1
    result = sc.cross_check_quotients(stack.group, p, table=table)
    assert result.main.is_trivial(), (text, p, result.main.entries)
    assert result.poset.is_trivial(), (text, p, result.poset.entries)
    assert result.agree


def test_representative_independence_randomized(stack_cache):
    for seed, (text, p) in enumerate(SUITE_INSTANCES):
        stack = stack_cache(text, p)
        result = sc.representative_independence_test(
            stack.quotient, stack.matching, trials=100, seed=seed)
        assert result.trials >= 100
        assert result.failures == 0, (text, p)
        rng = random.Random(1000 + seed)
        assert sc.orbit_soundness_check(stack.quotient, 100, rng) == 0, (text, p)


def test_negative_controls_detect_corruption(c8_stack):
    # a complex with an actual hole must be reported nontrivial
    profile = sc.quotient_homology(circle_complex())
    assert profile.entries[1] == (1, ())
    assert not profile.is_trivial()

    # one pair's recorded face index is redirected; both detectors must fire
    q = c8_stack.quotient
    red = next(cid for cid in q.by_dim[0]
               if c8_stack.table[q.cells[cid].rep[0]].order == 4)
    col, back = c8_stack.matching.pairs[red]
    pairs = dict(c8_stack.matching.pairs)
    pairs[red] = (col, 0 if back != 0 else 1)
    broken = sc.MorseMatching(critical=c8_stack.matching.critical, pairs=pairs)

    with pytest.raises(MatchingFailure):
        sc.validate_matching(q, broken)

    cert = sc.check_acyclic(sc.build_digraph(q, broken))
    assert not cert.acyclic
    assert cert.cycle is not None and set(cert.cycle) >= {red, col}


def test_simplicial_identities_exhaustive(stack_cache):
    for text, p in SUITE_INSTANCES:
        check_identities(stack_cache, text, p)


def check_identities(stack_cache, text, p):
    stack = stack_cache(text, p)
    for quotient in (stack.quotient,
                     sc.build_poset_quotient(stack.group, p, table=stack.table)):
        sc.verify_simplicial_identities(quotient)
        for cell in quotient.cells:
            if cell.dim < 2:
                continue
            for j in range(cell.dim + 1):
                for i in range(j):
                    left = quotient.face(quotient.face(cell.cell_id, j), i)
                    right = quotient.face(quotient.face(cell.cell_id, i), j - 1)
                    assert left == right, (text, p, cell.cell_id, i, j)

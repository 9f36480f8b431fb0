"""
End-to-end runs on the reference matrices
Cat map, a 2x2 Jordan block and a block-diagonal 3x3, checked against brute force.
"""

import pytest

from equidist import box_counts, cell_occupancy_check, convergence_report, packing_bound_check
from intlinalg import IntMatrix
from orbits.general import GeneralConstruction, uniform_sequence
from orbits.torus import certify_period, orbit_bruteforce


def assert_sequence(A, levels, periods):
    sequence = uniform_sequence(A, levels)
    construction = sequence.construction
    assert [r.T for r in sequence.frame_records] == periods
    for frame_record, record in zip(sequence.frame_records, sequence.records):
        assert certify_period(construction.frame_matrix, frame_record)
        assert certify_period(A, record)
        assert packing_bound_check(record)
        assert cell_occupancy_check(record)
        _, again = orbit_bruteforce(A, record.base)
        assert (again.T, again.d_sq) == (record.T, record.d_sq)
    return sequence


def test_cat_map(cat):
    sequence = assert_sequence(cat, 3, [5, 55, 605])
    assert [r.T for r in sequence.records] == [5, 55, 605]
    assert convergence_report(sequence.frame_records, 4).decreasing


def test_jordan_block_levels_one_and_two(jordan2):
    sequence = assert_sequence(jordan2, 2, [12, 180])
    assert [[c.p for c in f.certs] for f in sequence.construction.frames] == [[5, 3]]


def test_block_diagonal_levels_one_and_two(cat_plus_two):
    sequence = assert_sequence(cat_plus_two, 2, [10, 330])
    assert sequence.construction.conjugator.rows == ((1, 0, 0), (2, 1, 0), (0, 0, 1))


@pytest.mark.slow
def test_cat_map_equidistributes_over_four_levels(cat):
    sequence = uniform_sequence(cat, 4)
    for records in (sequence.frame_records, sequence.records):
        report = convergence_report(records, 4)
        assert list(report.table["level"]) == [1, 2, 3, 4]
        assert list(report.table["T"]) == [5, 55, 605, 6655]
        assert report.table[["density_ok", "occupancy_ok", "packing_ok"]].all().all()
        assert report.decreasing
        for record in records:
            assert int(box_counts(record, 4).counts.sum()) == record.T


@pytest.mark.slow
def test_jordan_block_level_three(jordan2):
    assert_sequence(jordan2, 3, [12, 180, 8100])


@pytest.mark.slow
def test_block_diagonal_level_three(cat_plus_two):
    assert_sequence(cat_plus_two, 3, [10, 330, 10890])


def test_conjugated_cat_map(cat):
    # A = S·cat·S^-1 with a unimodular S, same spectrum in a skewed basis
    S = IntMatrix.from_rows([[1, 1], [0, 1]])
    S_inv = IntMatrix.from_rows([[1, -1], [0, 1]])
    A = S @ cat @ S_inv
    construction = GeneralConstruction(A)
    for k in (1, 2):
        record = construction.build(k)
        assert record.T == [5, 55][k - 1]
        assert certify_period(A, record)

"""The acceptance gate: one test per criterion, one pass/fail line each.

Criterion bodies live in orichrome.acceptance so the CLI selftest and this
suite run exactly the same code.  A failing criterion here is a real red:
the criterion is implemented faithfully and the library genuinely cannot
meet it (see the assertion message for the measured outcome).
"""

from orichrome import acceptance


def _check(result):
    print(result.line())
    assert result.passed, result.line()


def test_criterion_1_bundled_target_fidelity():
    # expected to fail: exhaustive search over all 2^16 orientations shows no
    # two-class target with class size 4 realizes every sign pair on every
    # outside pair (covering a pair of columns with all four +-/-+ patterns
    # needs 5 rows), so no bundled graph can verify at arity 2.  The criterion
    # is implemented faithfully rather than weakened, and stays red.
    _check(acceptance.criterion_1())


def test_criterion_2_sampler_desk_scale():
    _check(acceptance.criterion_2())


def test_criterion_3_greedy_bound_sweep():
    _check(acceptance.criterion_3())


def test_criterion_4_oracle_sandwich():
    _check(acceptance.criterion_4())


def test_criterion_5_sparse_clique_regression():
    _check(acceptance.criterion_5())


def test_criterion_6_numeric_chain():
    _check(acceptance.criterion_6())


def test_criterion_7_pipeline_soundness():
    _check(acceptance.criterion_7())


def test_criterion_8_discharging_cores():
    _check(acceptance.criterion_8())


def test_criterion_9_byte_identical_reruns():
    _check(acceptance.criterion_9())

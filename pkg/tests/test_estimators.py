from fractions import Fraction

import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError
from sklearn.pipeline import make_pipeline

from nonresonance.errors import ShapeError
from nonresonance.estimators import AomotoCohomology, NonresonanceChecker, NonresonantShift
from nonresonance.validation import check_arrangement, check_weights

from conftest import EX1_WEIGHTS

PRIME = ["1/3"] * 4 + ["-4/3"]


def test_check_weights():
    arr = check_weights([EX1_WEIGHTS, [0, 0, 0, 0, 0]], m=5)
    assert arr.shape == (2, 5) and arr.dtype == object
    assert arr[0, 4] == Fraction(-2)
    assert check_weights(np.array([1, -1])).shape == (1, 2)
    with pytest.raises(TypeError):
        check_weights(np.array([[0.5, -0.5]]))
    with pytest.raises(ShapeError):
        check_weights([[1, 2]], m=5)


def test_check_arrangement():
    A = check_arrangement("braid-a3")
    assert check_arrangement(A) is A
    with pytest.raises(ValueError):
        check_arrangement(42)


def test_checker_predicts():
    clf = NonresonanceChecker("cdo-ex1", condition="ah", hyperplane=5).fit()
    assert clf.predict([EX1_WEIGHTS, PRIME]).tolist() == [False, True]
    assert ((1, 2, 5), -1) in clf.reports([EX1_WEIGHTS])[0].violations


def test_checker_validates_params():
    with pytest.raises(ValueError):
        NonresonanceChecker("cdo-ex1", condition="ah").fit()
    with pytest.raises(NotFittedError):
        NonresonanceChecker().predict([EX1_WEIGHTS])


def test_get_params_and_clone():
    est = NonresonantShift("cdo-ex2", hyperplane=3)
    assert est.get_params() == {"arrangement": "cdo-ex2", "hyperplane": 3}
    other = clone(est).set_params(hyperplane=4)
    assert other.hyperplane == 4 and est.hyperplane == 3


def test_cohomology_transform():
    out = AomotoCohomology("braid-a3").fit().transform([[0] * 6, ["1/7"] * 5 + ["-5/7"]])
    assert out.tolist() == [[1, 5, 6], [0, 0, 2]]


def test_pipeline_shift_then_check():
    pipe = make_pipeline(NonresonantShift("cdo-ex1", hyperplane=5), NonresonanceChecker("cdo-ex1", condition="stv"))
    assert pipe.fit([PRIME]).predict([PRIME]).tolist() == [True]
    shifted = pipe[0].transform([PRIME])
    assert list(shifted[0]) == [Fraction(-2, 3)] * 4 + [Fraction(8, 3)]

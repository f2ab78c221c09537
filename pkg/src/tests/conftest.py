import os

import pytest

from src.frontend.sexp import parse_src, parse_tgt
from src.lang.terms import App, Num

REPO_ROOT = os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
SAMPLES = os.path.join(REPO_ROOT, 'samples')

ADDER_PROGRAM = """
(let ((x 2))
  (let ((y 3))
    (fix (f : (-> nat nat)) (z : nat) (plus z (plus x y)))))
"""

ADDER_CONVERTED = """
(let ((x 2))
  (let ((y 3))
    (clos (abs (p : (* (-> nat nat) (* nat (* nat (* nat unit)))))
            (let ((g (fst p)))
              (let ((z (fst (snd p))))
                (let ((xe (snd (snd p))))
                  (plus z (plus (fst xe) (fst (snd xe))))))))
          (pair x (pair y ())))))
"""


@pytest.fixture
def adder_program():
    return parse_src(ADDER_PROGRAM)


@pytest.fixture
def adder_converted():
    return parse_tgt(ADDER_CONVERTED)


@pytest.fixture
def adder_applied(adder_program):
    return App(adder_program, Num(1))


def sample_path(name: str) -> str:
    return os.path.join(SAMPLES, name)

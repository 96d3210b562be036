"""Hamiltonian operators and the Jacobi bracket against frozen values."""

import json

import pytest
import sympy as sp

from src.cas.expressions import normalize
from src.calculus.operators import DiffOp
from src.calculus.sampling import RandomSource
from src.structures.contact import lift_contact
from src.structures.errors import InternalConsistencyError
from src.structures.lrj import JacobiBracket, check_jacobi_bracket, hamiltonian_ops, jacobi_bracket, reeb
from src.structures.report import Grade

from .helpers import DATA, closed_contact, standard_contact

ORACLE = json.loads((DATA / "jacobi_oracle.json").read_text(encoding="utf-8"))
CASES = {"standard_c0": (standard_contact, 0), "closed_c_minus_one": (closed_contact, -1)}


def structure(r3, plan, case):
    build, c = CASES[case]
    lrj = lift_contact(build(r3), c, plan=plan, trials=2).lrj
    return lrj, reeb(lrj.omega, plan)


def expr(r3, text):
    return sp.sympify(text, locals={s.name: s for s in r3.symbols})


def operator(r3, parts):
    scalar, *vec = (expr(r3, p) for p in parts)
    return DiffOp(r3, scalar, tuple(vec))


@pytest.mark.parametrize("case", sorted(CASES))
class TestOracle:
    def test_reeb(self, r3, plan, case):
        _, H = structure(r3, plan, case)
        assert H == operator(r3, ORACLE[case]["reeb"])

    def test_brackets(self, r3, plan, case):
        lrj, H = structure(r3, plan, case)
        bracket = JacobiBracket(lrj, H, plan)
        for f, g, value in ORACLE[case]["brackets"]:
            assert normalize(bracket(expr(r3, f), expr(r3, g)) - expr(r3, value)) == 0, (f, g)
            assert bracket.check_alternative(expr(r3, f), expr(r3, g)).grade is Grade.EXACT

    def test_hamiltonian_operators(self, r3, plan, case):
        lrj, H = structure(r3, plan, case)
        for f, parts in ORACLE[case]["phi"]:
            pair = hamiltonian_ops(expr(r3, f), lrj, H, plan)
            assert pair.phi_f == operator(r3, parts), f
            assert pair.report.overall is Grade.EXACT
        for f, parts in ORACLE[case]["X"]:
            assert hamiltonian_ops(expr(r3, f), lrj, H, plan).X_f == operator(r3, parts), f


def test_bracket_of_a_function_with_itself(r3, plan):
    lrj, H = structure(r3, plan, "standard_c0")
    assert jacobi_bracket(r3.symbol("x"), r3.symbol("x"), lrj, H, plan) == 0


def test_jacobi_identity_on_random_triples_r3(r3, plan):
    lrj, H = structure(r3, plan, "standard_c0")
    source = RandomSource(r3, seed=7, max_degree=2)
    triples = [(source.polynomial(), source.polynomial(), source.polynomial()) for _ in range(5)]
    report = check_jacobi_bracket(lrj, H, triples, plan)
    assert report.overall is Grade.EXACT
    assert [c.name for c in report.checks] == [
        "bracket_skew", "bracket_jacobi", "bracket_first_order", "bracket_via_X", "hamiltonian_identities",
    ]


@pytest.mark.slow
def test_jacobi_identity_on_random_triples_r5(r5, plan):
    lrj = lift_contact(standard_contact(r5), 0, plan=plan, trials=2).lrj
    H = reeb(lrj.omega, plan)
    source = RandomSource(r5, seed=3, max_degree=2, density=0.3)
    triples = [(source.polynomial(), source.polynomial(), source.polynomial()) for _ in range(20)]
    assert check_jacobi_bracket(lrj, H, triples, plan).overall is Grade.EXACT


def test_jacobi_bracket_rejects_inconsistent_reeb(r3, plan):
    lrj, _ = structure(r3, plan, "standard_c0")
    wrong = DiffOp.partial(r3, "y")
    with pytest.raises(InternalConsistencyError):
        jacobi_bracket(r3.symbol("x"), r3.symbol("z"), lrj, wrong, plan)

from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import strategies as st

from vonroos.operator_algebra import MassPower, Momentum

X = sp.Symbol("x")
M = sp.Function("m")(X)
PSI = sp.Function("psi")(X)

rationals = st.fractions(min_value=-3, max_value=3, max_denominator=12)


def apply_word(expr, psi=PSI, m=M):
    """Act with an operator word on ``psi`` by direct differentiation (sympy)."""
    out = psi
    for atom in reversed(expr.atoms):
        if isinstance(atom, MassPower):
            out = m ** sp.Rational(atom.exponent.numerator, atom.exponent.denominator) * out
        elif isinstance(atom, Momentum):
            out = -sp.I * sp.diff(out, X)
        else:
            out = sp.diff(out, X)
    scalar = expr.scalar
    return (_sym(scalar.re) + sp.I * _sym(scalar.im)) * out


def apply_form(form, psi=PSI, m=M):
    """Act with a CanonicalForm on ``psi``."""
    out = 0
    for c, word, k in form.terms:
        factor = _sym(c.re) + sp.I * _sym(c.im)
        for n, e in word:
            factor *= sp.diff(m, X, n) ** _sym(e) if n else m ** _sym(e)
        out += factor * sp.diff(psi, X, k)
    return out


def _sym(q):
    q = Fraction(q)
    return sp.Rational(q.numerator, q.denominator)


def same_operator(lhs, rhs):
    return sp.simplify(sp.expand(lhs - rhs)) == 0


# -- acceptance summary ----------------------------------------------------

ACCEPTANCE_LINES = []


@pytest.fixture
def criterion(request):
    """Record PASS/FAIL for one acceptance criterion in the terminal summary."""
    label = request.node.get_closest_marker("criterion").args[0]
    state = {"detail": ""}
    yield state
    rep = getattr(request.node, "rep_call", None)
    ok = rep is not None and rep.passed
    detail = f"  ({state['detail']})" if state["detail"] else ""
    ACCEPTANCE_LINES.append(f"{'PASS' if ok else 'FAIL'}  {label}{detail}")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(label): acceptance criterion label")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

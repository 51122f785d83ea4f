from fractions import Fraction

from hypothesis import HealthCheck, settings, strategies as st

from oscrank.space import Minus, MinusInf, Plus, PlusInf, Rat, parse_space

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

LINE = parse_space("cutline")

small_q = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))

cut_points = st.one_of(
    st.just(MinusInf), st.just(PlusInf),
    st.builds(Rat, small_q), st.builds(Minus, small_q), st.builds(Plus, small_q),
)


@st.composite
def intervals(draw, space=LINE):
    a, b = sorted([draw(cut_points), draw(cut_points)], key=lambda p: p.key)
    return space.interval(a, b, lo_inc=draw(st.booleans()), hi_inc=draw(st.booleans()))


@st.composite
def line_sets(draw):
    """Finite unions of intervals on the cut line."""
    out = LINE.empty()
    for iv in draw(st.lists(intervals(), max_size=3)):
        out = out | iv
    return out


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    if mod is None or not mod.SUMMARY:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.SUMMARY):
        terminalreporter.write_line(mod.SUMMARY[n])

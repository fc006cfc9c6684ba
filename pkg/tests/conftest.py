import pytest
from hypothesis import HealthCheck, settings, strategies as st

from nhopf.core import LEAF, Forest, Signature, Term

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

S_E = Signature.parse("a:1,b:2,c:3")

# Figure-style example forest of degree 7 used across modules.
FIG_FOREST = "c[a[*],*,b[a[*],*]] b[*,b[a[*],*]]"


@pytest.fixture
def sig_e():
    return S_E


def terms_strategy(sig: Signature, max_leaves: int = 6):
    def extend(children):
        return st.sampled_from(sig.generators).flatmap(
            lambda g: st.lists(children, min_size=g[1], max_size=g[1]).map(
                lambda kids, g=g: Term(g[0], kids)))

    return st.recursive(st.just(LEAF), extend, max_leaves=max_leaves)


def forests_strategy(sig: Signature, max_terms: int = 3, max_degree: int | None = None):
    nonleaf = terms_strategy(sig).filter(lambda t: not t.is_leaf)
    forests = st.lists(nonleaf, max_size=max_terms).map(Forest)
    if max_degree is not None:
        forests = forests.filter(lambda f: f.degree <= max_degree)
    return forests


# --- acceptance summary ------------------------------------------------------

_ACCEPTANCE: dict[int, tuple[str, str]] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    number, title = marker.args
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        status = "PASS" if report.outcome == "passed" else "FAIL"
        _ACCEPTANCE[number] = (status, title)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        status, title = _ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number:2d}: {status}  {title}")

import os

from hypothesis import HealthCheck, settings, strategies as st

settings.register_profile(
    "default",
    max_examples=200,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

# rectangle sequences from the acceptance battery, as SxR tokens
BATTERY = ["2x2,1x1", "2x1,1x2", "1x3,1x3", "1x1+1x1,1x1+1x1,2x1,2x1"]
EXTRA = ["2x2,2x2", "1x2,1x2,1x2", "2x2,1x2", "3x1,2x2", "1x3,1x1,1x1,1x1", "2x3,1x1"]


@st.composite
def ssyt_rectangle(draw, r=None, s=None, n=None, max_n=6):
    """Random semistandard filling of an r x s rectangle with entries in [n]."""
    r = r or draw(st.integers(1, 3))
    s = s or draw(st.integers(1, 3))
    n = n or draw(st.integers(r, max(r, max_n)))
    rows = []
    for i in range(r):
        row = []
        for j in range(s):
            lo = 1
            if j:
                lo = max(lo, row[-1])
            if i:
                lo = max(lo, rows[i - 1][j] + 1)
            hi = n - (r - 1 - i)
            row.append(draw(st.integers(lo, hi)))
        rows.append(tuple(row))
    return tuple(rows), n


@st.composite
def words(draw, max_len=9, max_letter=6):
    return tuple(draw(st.lists(st.integers(1, max_letter), min_size=0, max_size=max_len)))


@st.composite
def tensor_pair(draw, max_n=6):
    """Two rectangular factors sharing an alphabet."""
    n = draw(st.integers(2, max_n))
    r1, r2 = draw(st.integers(1, min(3, n - 1))), draw(st.integers(1, min(3, n - 1)))
    s1, s2 = draw(st.integers(1, 3)), draw(st.integers(1, 3))
    A, _ = draw(ssyt_rectangle(r1, s1, n))
    B, _ = draw(ssyt_rectangle(r2, s2, n))
    return A, B, n


# one line per acceptance criterion, echoed in the terminal summary
ACCEPTANCE: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE):
            terminalreporter.write_line(line)

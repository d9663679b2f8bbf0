from fractions import Fraction

from hypothesis import strategies as st

from abelhopf.compose import ToeplitzSeries
from abelhopf.series import NCSeries

small_fractions = st.builds(Fraction, st.integers(-4, 4), st.integers(1, 3))


def words(m: int, max_degree: int):
    letters = st.integers(1, m)
    return st.lists(letters, max_size=max_degree).map(tuple).filter(lambda w: sum(w) <= max_degree)


def series(m: int, cap: int, max_terms: int = 4, constant=None):
    terms = st.dictionaries(words(m, cap), small_fractions, max_size=max_terms)

    def build(t):
        if constant is not None:
            t = {w: q for w, q in t.items() if w}
            t[()] = Fraction(constant)
        return NCSeries(m, cap, t)

    return terms.map(build)


def toeplitz(m: int, cap: int, max_terms: int = 3):
    return st.lists(series(m, cap, max_terms), min_size=m - 1, max_size=m - 1).map(lambda es: ToeplitzSeries(m, es))

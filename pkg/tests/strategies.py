from hypothesis import strategies as st

from setlink.core import GroundSet, SetFamily


def family_from_code(n: int, code: int) -> SetFamily:
    ground = GroundSet(n)
    return SetFamily(ground, [S for S in ground.subsets() if code >> S & 1])


@st.composite
def families(draw, max_n=4, min_n=1, need_empty=False):
    n = draw(st.integers(min_n, max_n))
    code = draw(st.integers(0, (1 << (1 << n)) - 1))
    if need_empty:
        code |= 1
    return family_from_code(n, code)

"""Shared presentation fixtures."""

from fpgroup.syntax import parse_presentation

D8_CLASSICAL = "< s, t | s^4, t^2, t^-1*s*t = s^3 >"
D8_JUST_FINITE = "< s, t | s^4, t^2, t^-1*s*t = s^-1 >"
NEUMANN = "< u, v | u^-1*v*u = v^2, v^-1*u*v = u^2 >"
D8_TRANSFORMED = (
    "< s, t, a, b, c | s^-4*a*s^4 = a^2, a^-1*s^4*a = s^8,"
    " t^-2*b*t^2 = b^2, b^-1*t^2*b = t^4,"
    " (t^-1*s*t*s^-3)^-1*c*(t^-1*s*t*s^-3) = c^2,"
    " c^-1*(t^-1*s*t*s^-3)*c = (t^-1*s*t*s^-3)^2 >"
)


def metacyclic(k: int) -> str:
    return f"< x, y | x^-1*y*x = y^2, x^{k} >"


# irredundant presentations of non-cyclic finite groups, with their orders
POOL = {
    "d8": (D8_CLASSICAL, 8),
    "d8_second": (D8_JUST_FINITE, 8),
    "klein": ("< a, b | a^2, b^2, (a*b)^2 >", 4),
    "klein_comm": ("< a, b | a^2, b^2, a^-1*b^-1*a*b >", 4),
    "s3": ("< a, b | a^3, b^2, (a*b)^2 >", 6),
    "q8": ("< a, b | a^2 = b^2, b^-1*a*b = a^-1 >", 8),
    "a4": ("< a, b | a^2, b^3, (a*b)^3 >", 12),
    "s4": ("< a, b | a^2, b^3, (a*b)^4 >", 24),
    "a5": ("< a, b | a^2, b^3, (a*b)^5 >", 60),
    "z2xz4": ("< a, b | a^2, b^4, a^-1*b^-1*a*b >", 8),
    "z3xz3": ("< a, b | a^3, b^3, a^-1*b^-1*a*b >", 9),
    "d10": ("< s, t | s^5, t^2, (s*t)^2 >", 10),
    "metacyclic21": (metacyclic(3), 21),
    "dic3": ("< a, b | a^3, b^4, b^-1*a*b*a >", 12),
    "d8_coxeter": ("< a, b | a^2, b^2, (a*b)^4 >", 8),
}


def load(name_or_text: str):
    if name_or_text in POOL:
        return parse_presentation(POOL[name_or_text][0])
    return parse_presentation(name_or_text)

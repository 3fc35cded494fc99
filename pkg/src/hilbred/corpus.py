"""Built-in examples with the values stated for them in the source paper."""

from __future__ import annotations

from dataclasses import dataclass, field

from .ideal import Ideal, maximal_ideal_power
from .ring import AmbientRing, DEFAULT_CHARACTERISTIC


@dataclass(frozen=True)
class Example:
    name: str
    variables: tuple[str, ...]
    generators: tuple[str, ...]
    m_power: int | None = None  # add m^k to the ideal
    named: tuple[tuple[str, tuple[str, ...]], ...] = ()
    trials: int = 5
    expected: dict = field(default_factory=dict)
    bad_characteristics: tuple[int, ...] = ()
    slow: bool = False

    def ring(self, characteristic: int = DEFAULT_CHARACTERISTIC) -> AmbientRing:
        return AmbientRing(self.variables, characteristic)

    def ideal(self, characteristic: int = DEFAULT_CHARACTERISTIC) -> Ideal:
        R = self.ring(characteristic)
        I = Ideal.from_strings(R, list(self.generators), name=self.name)
        if self.m_power:
            I = Ideal(R, list(I.gens) + list(maximal_ideal_power(R, self.m_power).gens),
                      name=self.name)
        return I

    def named_reductions(self, characteristic: int = DEFAULT_CHARACTERISTIC) -> list[Ideal]:
        R = self.ring(characteristic)
        return [Ideal.from_strings(R, list(g), name=n) for n, g in self.named]


XY = ("x", "y")
# two hand-picked minimal reductions for the examples claiming r_J = 2 for every J
PAIR = (("J1", ("x^6", "y^6")), ("J2", ("x^6", "x^5*y + y^6")))
XYZ = ("x", "y", "z")

# expected keys: e (leading Hilbert coefficients), colength, e1_deficit, e2_deficit,
# depth_exact, depth_upper, depth_lower, closed, r_all, r_named, independence
EXAMPLES: tuple[Example, ...] = (
    Example("Ex 3.11", XY, ("x^6", "y^6", "x^5*y + x^2*y^4"),
            expected=dict(e=(36, 15, 11), e1_deficit=1, e2_deficit=3, closed="not-closed",
                          depth_exact=0)),
    Example("Ex 3.13", XYZ, ("x^2 - y^2", "y^2 - z^2", "x*y", "y*z", "x*z"),
            expected=dict(e=(8, 4, 0), depth_upper=0)),
    Example("Ex 3.18", XY, ("x^6", "y^6", "x^5*y", "x^3*y^3", "x^2*y^4", "x*y^5"),
            trials=20, named=PAIR,
            expected=dict(e=(36, 15), colength=22, r_all=2, r_named={"J1": 2, "J2": 2})),
    Example("Ex 3.19", XY, ("x^6", "y^6", "x^5*y", "x^3*y^3", "x^2*y^4"),
            trials=20, named=PAIR,
            expected=dict(e=(36, 15), colength=23, r_all=2, r_named={"J1": 2, "J2": 2})),
    Example("Ex 3.20", XY, ("x^6", "y^6", "x^5*y", "x^3*y^3", "x*y^5"),
            trials=20, named=PAIR,
            expected=dict(e=(36, 15), colength=23, r_all=2, r_named={"J1": 2, "J2": 2})),
    Example("Ex 3.21", XY, ("x^6", "y^6", "x^5*y", "x^2*y^4", "x*y^5"),
            named=(("J1", ("x^6", "x^5*y + y^6")), ("J2", ("x^6", "y^6"))),
            expected=dict(e=(36, 15), colength=24, r_named={"J1": 2, "J2": 3},
                          independence="NOT-independent")),
    Example("Ex 3.22", XYZ, ("x^4", "x*(y^3 + z^3)", "y*(y^3 + z^3)", "z*(y^3 + z^3)"),
            m_power=5, trials=10, bad_characteristics=(3,), slow=True,
            expected=dict(e=(76, 48), colength=31, e1_deficit=0, depth_lower=2,
                          r_equal=True)),
)


def by_name(name: str) -> Example:
    for ex in EXAMPLES:
        if ex.name == name or ex.name.split()[-1] == name:
            return ex
    raise KeyError(name)

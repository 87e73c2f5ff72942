"""Try each per-degree sign for Delta and count BV failures on several algebras.

Delta is fixed up to a sign s(n) on HH^n; the variants below are the four
patterns built from a constant and (-1)^n.  Only one of them makes Delta(1),
Delta^2 and the BV identity vanish on every algebra at once."""

from dataclasses import dataclass, field

from hochbv.bv import DualityData, verify_bv
from hochbv.catalog import a_lambda, qci, truncated_polynomial
from hochbv.exactfield import Q
from hochbv.frobenius import frobenius_data


@dataclass
class SearchConfig:
    bound: int = 4
    algebras: list = field(default_factory=lambda: [
        ("k[x]/(x^2)", lambda: truncated_polynomial(Q, 2)),
        ("k[x]/(x^3)", lambda: truncated_polynomial(Q, 3)),
        ("A(2)", lambda: a_lambda(Q, 2)),
        ("qci (1,1), q=3", lambda: qci(Q, 2, (1, 1), {(0, 1): 3})),
    ])


VARIANTS = {
    "frozen: -(-1)^n": lambda n: 1,
    "(-1)^n": lambda n: -1,
    "constant -1": lambda n: -1 if n % 2 == 0 else 1,
    "constant +1": lambda n: 1 if n % 2 == 0 else -1,
}


class ScaledDelta(DualityData):
    """Delta multiplied by an extra sign depending on the source degree."""

    def __init__(self, frob, bound, extra):
        super().__init__(frob, bound)
        self.extra = extra

    def delta(self, alpha):
        out = super().delta(alpha)
        return out if self.extra(alpha.degree) == 1 else self.calc.scaled(self.field.neg(1), out)


def run(cfg: SearchConfig):
    print(f"{'variant':<18}" + "".join(f"{name:>18}" for name, _ in cfg.algebras))
    for vname, extra in VARIANTS.items():
        row = []
        for _, make in cfg.algebras:
            D = ScaledDelta(frobenius_data(make()), cfg.bound, extra)
            rep = verify_bv(D, cfg.bound - 1)
            row.append(sum(v == "fail" for v in rep.defects.values()))
        print(f"{vname:<18}" + "".join(f"{x:>18}" for x in row))


if __name__ == "__main__":
    run(SearchConfig())

"""Run the duality and BV checks over a set of catalog algebras and print a table."""

import argparse
import time
from dataclasses import dataclass, field

from hochbv.bv import DualityData, verify_bv
from hochbv.catalog import builtin
from hochbv.exactfield import parse_field
from hochbv.frobenius import split_nakayama


@dataclass
class SweepConfig:
    bound: int = 5
    cases: list = field(default_factory=lambda: [
        ("truncated_polynomial", "Q", {"n": 2}),
        ("truncated_polynomial", "Q", {"n": 3}),
        ("a_lambda", "Q", {"lam": 2}),
        ("a_lambda", "GF(7)", {"lam": 3}),
        ("qci", "Q", {"n": 2, "a": (1, 1), "q": {(0, 1): 3}}),
        ("a_lambda_descent", "GF(3)", {}),
        ("nakayama_cycle_algebra", "GF(2)", {}),
        ("omega", "GF(3)", {"n": 1}),
    ])


def run(cfg: SweepConfig):
    print(f"{'algebra':<34} {'field':<8} {'status':<18} {'pairs':>5} {'fail':>4} {'sec':>6}")
    for name, fname, params in cfg.cases:
        A = builtin(name, parse_field(fname), **params)
        label = name + ("" if not params else str(params).replace(" ", ""))
        t0 = time.perf_counter()
        S = split_nakayama(A)
        if not S.ready:
            print(f"{label:<34} {fname:<8} {S.status:<18} {'-':>5} {'-':>4} {time.perf_counter() - t0:>6.1f}")
            continue
        rep = verify_bv(DualityData(S.data, cfg.bound), cfg.bound - 1)
        checked = [v for v in rep.defects.values() if v != "not checked"]
        fails = sum(v == "fail" for v in checked) + (not rep.delta_unit_zero) + \
            sum(not v for v in rep.delta_squared_zero.values())
        print(f"{label:<34} {str(S.data.field):<8} {S.status:<18} {len(checked):>5} {fails:>4} "
              f"{time.perf_counter() - t0:>6.1f}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--bound", type=int, default=SweepConfig.bound)
    run(SweepConfig(bound=ap.parse_args().bound))

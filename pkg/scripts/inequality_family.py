"""Admissible (n, k) pairs and the quantum/classical gap of their GHZ-type operators."""

from __future__ import annotations

import argparse

from hyperstate.nonclassical import admissible, classical_bound_terms, family, local_hv_max, mermin_operator
from hyperstate.statevec import DENSE_MAX


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=31)
    ap.add_argument("--lhv-max-n", type=int, default=11, help="brute-force the hidden-variable bound up to this n")
    a = ap.parse_args()

    pairs = [(n, k) for n in range(2, a.max_n + 1) for k in range(2, n + 1) if admissible(n, k).admissible]
    print(f"admissible pairs with n <= {a.max_n}: {len(pairs)}")
    print(" ".join(f"({n},{k})" for n, k in pairs))
    fam = sorted({family(r, s) for r in range(1, 5) for s in range(3) if family(r, s)[0] <= a.max_n})
    print("family members:", " ".join(f"({n},{k})" for n, k in fam))
    missing = [p for p in fam if p not in pairs]
    assert not missing, missing

    print(f"{'n':>3} {'k':>3} {'quantum':>8} {'classical':>9} {'lhv':>5}")
    for n, k in pairs:
        if n > 16:
            print(f"{n:>3} {k:>3} {'-':>8} {classical_bound_terms(n):>9g} {'-':>5}")
            continue
        spec = mermin_operator(n, k, with_value=n <= DENSE_MAX)
        q = "-" if spec.quantum_value is None else f"{spec.quantum_value:.4f}"
        lhv = f"{local_hv_max(spec):g}" if n <= a.lhv_max_n else "-"
        print(f"{n:>3} {k:>3} {q:>8} {spec.classical_bound:>9g} {lhv:>5}")


if __name__ == "__main__":
    main()

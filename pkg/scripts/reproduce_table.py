"""Evaluate every registered b+ = 3 row that has a sum construction and print its invariants."""

import time

from chernplan.blocks import default_registry
from chernplan.calculus import construction_recipe, evaluate


def main():
    reg = default_registry()
    rows = sorted((b for b in reg.values() if b.table_row is not None), key=lambda b: b.table_row)
    start = time.perf_counter()
    print(f"{'b2-':>4}  {'id':<10} {'(c1^2, chi_h, sigma)':<22} construction")
    for b in rows:
        if b.construction:
            x = evaluate(construction_recipe(b.construction), reg, simplify=False).char4
            how = b.construction
        else:
            x = b.char4
            how = "(stored constant)"
        print(f"{b.table_row:>4}  {b.id:<10} {str((x.c1_squared(), x.chi_h(), x.sigma)):<22} {how}")
    print(f"elapsed {time.perf_counter() - start:.3f}s")


if __name__ == "__main__":
    main()

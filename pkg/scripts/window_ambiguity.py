#!/usr/bin/env python3
"""Show prime-scaled key sets acting identically on an observation window.

Prints the operator matrix of the base key set on W_L next to the
matrices of its first few prime-scaled twins, then verifies that the
full key elements are pairwise distinct: everything a passive adversary
can measure coincides, yet the keys differ.
"""

import argparse

from brc.attacks import ambiguous_family, operator_matrix
from brc.burnside import KeySet, key_element


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--s", default="2,3", help="base key set, comma-separated")
    parser.add_argument("--window", type=int, default=5)
    parser.add_argument("--count", type=int, default=3)
    args = parser.parse_args()

    base = KeySet(int(tok) for tok in args.s.split(","))
    base_key = key_element(base)
    base_matrix = operator_matrix(base_key, args.window)

    print(f"base key set {base}, key element: {base_key}")
    print(f"operator on W_{args.window}:")
    print(base_matrix.render())
    print()

    all_equal = True
    seen_elements = {base_key}
    for twin in ambiguous_family(base, args.window, args.count):
        twin_key = key_element(twin)
        twin_matrix = operator_matrix(twin_key, args.window)
        same = twin_matrix == base_matrix
        all_equal &= same
        seen_elements.add(twin_key)
        print(f"twin {twin}, key element: {twin_key}")
        print(f"matrix identical to base: {'yes' if same else 'NO'}")
        print()

    distinct = len(seen_elements) == args.count + 1
    print(f"all window operators identical : {all_equal}")
    print(f"all key elements distinct      : {distinct}")
    print("=> the window determines the operator, never the key set")
    return 0 if all_equal and distinct else 1


if __name__ == "__main__":
    raise SystemExit(main())

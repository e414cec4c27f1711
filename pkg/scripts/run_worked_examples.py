#!/usr/bin/env python3
"""Walk through the canonical worked examples and print every completion.

Run from the repository root:

    python scripts/run_worked_examples.py
"""

from fractions import Fraction as F

from belief_forge import (
    Frame,
    KnownBeliefs,
    check_focusing,
    complete_focusing,
    complete_min_specificity,
    complete_stepwise,
    specificity,
)


def show(title, result):
    print(f"\n== {title} [{result.method}"
          + (f", stage {result.stage}" if result.stage else "") + "]")
    for s, v in result.mass.entries:
        print(f"   m({s!r}) = {v} ({float(v):.4g})")
    print(f"   specificity = {specificity(result.mass)}"
          f" ({float(specificity(result.mass)):.4g})")
    if result.symmetry is not None and result.symmetry.vertex_count not in (None, 1):
        print(f"   averaged over {result.symmetry.vertex_count} optimal vertices")


def main() -> None:
    f3 = Frame(("u1", "u2", "u3"))

    one = KnownBeliefs.of(f3, {f3.subset(["u1", "u2"]): F("0.5")})
    show("one doubleton at 0.5: the optimum is unique", complete_min_specificity(one))

    two = KnownBeliefs.of(f3, {f3.subset(["u1", "u2"]): F("0.6"),
                               f3.subset(["u2", "u3"]): F("0.7")})
    show("overlapping doubletons 0.6/0.7", complete_min_specificity(two))
    show("same instance, staged weak focusing", complete_stepwise(two))

    three = KnownBeliefs.of(f3, {f3.subset(["u1", "u2"]): F("0.5"),
                                 f3.subset(["u2", "u3"]): F("0.5"),
                                 f3.subset(["u1", "u3"]): F("0.5")})
    print(f"\n== three doubletons at 0.5: focusing check says "
          f"{check_focusing(three).verdict.value}")
    show("center of gravity of the optimal face", complete_min_specificity(three))

    refined = Frame(("u1", "u2", "v1", "v2"))
    split = KnownBeliefs.of(refined, {refined.subset(["u1", "u2"]): F("0.5"),
                                      refined.subset(["u2", "v1", "v2"]): F("0.5"),
                                      refined.subset(["u1", "v1", "v2"]): F("0.5")})
    show("after splitting u3 into v1/v2 the optimum is unique again",
         complete_min_specificity(split))

    f5 = Frame(("u1", "u2", "u3", "u4", "u5"))
    star = KnownBeliefs.of(f5, {f5.subset(["u1", "u2"]): F("0.2"),
                                f5.subset(["u1", "u3"]): F("0.2"),
                                f5.subset(["u1", "u4"]): F("0.2")})
    show("three 0.2 doubletons through u1: least specific", complete_min_specificity(star))
    show("same instance, focal elements kept among the named sets",
         complete_focusing(star))


if __name__ == "__main__":
    main()

#!/usr/bin/env python3
"""Drive a scripted elicitation session and print the transcript.

Run from the repository root:

    python scripts/demo_elicitation.py
"""

from fractions import Fraction as F

from belief_forge import Frame, KnownBeliefs, belief_from_mass, elicit


def main() -> None:
    frame = Frame(("u1", "u2", "u3"))
    known = KnownBeliefs.of(frame, {frame.subset(["u1", "u2"]): F("0.5"),
                                    frame.subset(["u2", "u3"]): F("0.5"),
                                    frame.subset(["u1", "u3"]): F("0.5")})

    def scripted_expert(subset):
        answer = F("0.2")
        print(f"  expert: Bel({subset!r}) = {answer}")
        return answer

    print("eliciting the missing intersections:")
    session = elicit(known, scripted_expert,
                     on_event=lambda e: print(f"  [{e.kind}] {e.subset!r}"
                                              + (f" = {e.value}" if e.value is not None else "")))
    print(f"\nterminal state: {session.state} after {session.questions_asked} questions")
    for s, v in session.result.mass.entries:
        print(f"  m({s!r}) = {v}")
    print("original constraints reproduced:",
          all(belief_from_mass(session.result.mass, s) == v for s, v in known.entries))


if __name__ == "__main__":
    main()

#!/usr/bin/env python3
"""The repeated-root stability disagreement, reproduced end to end.

A symmetric 2-degree body-of-revolution scenario has a double frequency
root; the historical root-nature rule refuses to call it stable while the
corrected definiteness rule does.  The sampled trajectory stays under the
explicit modal bound, siding with the corrected verdict.
"""

import math

from secular import (
    InitialConditions,
    build_model,
    char_roots,
    classify_stability,
    sample_trajectory,
    solve_modal,
    time_grid,
)


def main() -> None:
    model = build_model(
        "yvon-villarceau-2dof", {"g": 1, "f": 1, "a": 0, "c": 1}
    )
    roots = char_roots(model.pencil())
    print("frequency roots:", [(str(r.value), r.multiplicity) for r in roots])
    verdict = classify_stability(model)
    print("historical verdict:", verdict.historical)
    print("  rule:", verdict.historical_rule)
    print("corrected verdict:", verdict.corrected)
    print("  rule:", verdict.corrected_rule)
    print("agreement:", verdict.agreement)

    sol = solve_modal(model, InitialConditions.of(["1/10", 0], [0, "1/20"]))
    horizon = 100 * (2 * math.pi / sol.min_omega())
    traj = sample_trajectory(sol, time_grid(horizon, 4000))
    bound = sol.amplitude_bound(horizon)
    print(f"sampled sup-norm over 100 periods: {traj.sup_norm:.9f}")
    print(f"explicit modal bound:              {bound:.9f}")
    print("bounded:", traj.sup_norm <= bound + 1e-12)


if __name__ == "__main__":
    main()

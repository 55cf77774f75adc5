"""Replicator dynamics on the strategy-share simplex.

Three little studies: a two-strategy game whose trajectory is a logistic
curve in closed form, a cyclic three-strategy game that orbits instead of
converging, and the stability classification of the two-strategy rest
points from the tangent-space Jacobian.
"""

import numpy as np

from twotier_ee.replicator import equilibrium_stability, integrate_replicator


def main():
    # constant payoffs (2, 1): the winning share follows 1/(1+e^-t)
    payoff = lambda x: np.array([2.0, 1.0])  # noqa: E731
    traj = integrate_replicator([0.5, 0.5], payoff, dt=1e-3, horizon=8.0)
    print("two strategies, payoffs (2, 1), start (0.5, 0.5)")
    print(f"{'t':>5} {'x_winner':>10} {'logistic':>10}")
    for t in (0.0, 1.0, 2.0, 4.0, 8.0):
        i = int(round(t / 1e-3))
        i = min(i, traj.states.shape[0] - 1)
        print(f"{t:>5.1f} {traj.states[i, 0]:>10.6f} "
              f"{1 / (1 + np.exp(-t)):>10.6f}")
    err = np.max(np.abs(traj.states[:, 0] - 1 / (1 + np.exp(-traj.times))))
    print(f"max deviation from the closed form: {err:.2e}\n")

    # cyclic dominance: shares orbit the simplex center without settling
    a = np.array([[0.0, -1.0, 1.0], [1.0, 0.0, -1.0], [-1.0, 1.0, 0.0]])
    orbit = integrate_replicator([0.5, 0.3, 0.2], lambda x: a @ x,
                                 dt=1e-2, horizon=30.0)
    print("three cyclic strategies, start (0.5, 0.3, 0.2)")
    print(f"{'t':>5} {'x1':>8} {'x2':>8} {'x3':>8}")
    for t in (0, 5, 10, 15, 20, 25, 30):
        i = min(int(round(t / 1e-2)), orbit.states.shape[0] - 1)
        x = orbit.states[i]
        print(f"{t:>5} {x[0]:>8.4f} {x[1]:>8.4f} {x[2]:>8.4f}")
    print(f"fixed point reached: {orbit.reached_fixed_point} "
          f"(the orbit keeps cycling)\n")

    for point, label in ([1.0, 0.0], "all on the better strategy"), \
                        ([0.0, 1.0], "all on the worse strategy"):
        verdict = equilibrium_stability(point, payoff)
        print(f"rest point {point} ({label}): {verdict}")


if __name__ == "__main__":
    main()
